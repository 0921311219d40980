//! Closed-form eigenvalues and capacities for every region pair and noise
//! setting, used to cross-check the matrix pipeline.
//!
//! For each observer the reduced state depends on the mixing angle only
//! through `x = sin^2(eta)` (region I) or `x = cos^2(eta)` (region II).
//! Writing `xa`, `xb` for the two observers and `h = (1-xa)(1-xb)`, all
//! four region pairs share one eigenvalue template per noise kind. The
//! labeled values follow the conventional ordering of the closed forms,
//! which is *not* sorted everywhere in parameter space (the depolarizing
//! factor `1 - 4k/3` goes negative past `k = 3/4`, for instance), so every
//! set carries a sorted copy and an `ordering_holds` flag.

use crate::channels::ChannelKind;
use crate::linalg::EigenSpectrum;
use crate::relativistic::{Region, Scenario};

/// The four labeled closed-form eigenvalues of one scenario, with their
/// sorted companion.
#[derive(Debug, Clone)]
pub struct AnalyticEigenSet {
    /// Values in the conventional label order of the closed forms.
    pub labeled: [f64; 4],
    /// The same values sorted ascending.
    pub sorted: EigenSpectrum,
    /// True when the labeled order already is ascending.
    pub ordering_holds: bool,
    /// True when the labeled top pair (l2, l3) really holds the two largest
    /// values. This is the weaker condition under which a capacity written
    /// as `2 (l3 + l2 - l1 - l0)` over the labels equals the sorted one.
    pub partition_holds: bool,
}

impl AnalyticEigenSet {
    fn new(labeled: [f64; 4]) -> Self {
        let ordering_holds = labeled.windows(2).all(|w| w[0] <= w[1]);
        let partition_holds = labeled[2].min(labeled[3]) >= labeled[0].max(labeled[1]) - 1e-12;
        Self {
            labeled,
            sorted: EigenSpectrum::from_unsorted(labeled.to_vec()),
            ordering_holds,
            partition_holds,
        }
    }
}

/// Per-observer angle dependence: `(x, 1-x)` with `x = sin^2` outside the
/// horizon and `x = cos^2` inside. The complement is computed from the
/// other trig function directly rather than by subtraction.
fn observer_weights(outside: bool, eta: f64) -> (f64, f64) {
    let (s2, c2) = (eta.sin().powi(2), eta.cos().powi(2));
    if outside {
        (s2, c2)
    } else {
        (c2, s2)
    }
}

/// Closed-form eigenvalues for a region pair under the given noise.
/// `k` is ignored when `noise` is `None`.
pub fn analytic_eigenvalues(
    region: Region,
    noise: Option<ChannelKind>,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
) -> AnalyticEigenSet {
    let (xa, xca) = observer_weights(region.a_outside(), eta_a);
    let (xb, xcb) = observer_weights(region.b_outside(), eta_b);
    let h = xca * xcb;
    let g = xa * xb - p * h;

    let labeled = match noise {
        None => {
            let r = ((xa - xb).powi(2) + 4.0 * p * p * h).sqrt();
            [
                0.25 * (1.0 - xa - xb + xa * xb - p * h),
                0.25 * (1.0 - xa * xb + p * h - r),
                0.25 * (1.0 + xa + xb + xa * xb - p * h),
                0.25 * (1.0 - xa * xb + p * h + r),
            ]
        }
        Some(ChannelKind::PhaseFlip) => {
            // Only the transverse correlations decay, shrinking the radical.
            let f = 1.0 - 2.0 * k;
            let r = ((xa - xb).powi(2) + 4.0 * f.powi(4) * p * p * h).sqrt();
            [
                0.25 * (1.0 - xa - xb + xa * xb - p * h),
                0.25 * (1.0 - xa * xb + p * h - r),
                0.25 * (1.0 + xa + xb + xa * xb - p * h),
                0.25 * (1.0 - xa * xb + p * h + r),
            ]
        }
        Some(ChannelKind::BitFlip) => {
            let f2 = (1.0 - 2.0 * k).powi(2);
            let r02 = (f2 * (xa + xb).powi(2) + (1.0 - f2).powi(2) * p * p * h).sqrt();
            let r13 = (f2 * (xa - xb).powi(2) + (1.0 + f2).powi(2) * p * p * h).sqrt();
            [
                0.25 * (1.0 + f2 * g - r02),
                0.25 * (1.0 - f2 * g - r13),
                0.25 * (1.0 + f2 * g + r02),
                0.25 * (1.0 - f2 * g + r13),
            ]
        }
        Some(ChannelKind::Depolarizing) => {
            // q < 0 past k = 3/4; the signed forms below then come out of
            // label order, which is exactly what `ordering_holds` records.
            let q = 1.0 - 4.0 * k / 3.0;
            let r = ((xa - xb).powi(2) + 4.0 * q * q * p * p * h).sqrt();
            [
                0.25 * (1.0 - q * xa - q * xb + q * q * g),
                0.25 * (1.0 - q * q * g - q * r),
                0.25 * (1.0 + q * xa + q * xb + q * q * g),
                0.25 * (1.0 - q * q * g + q * r),
            ]
        }
    };
    AnalyticEigenSet::new(labeled)
}

/// Capacity of the sorted closed-form spectrum under the `zz` Hamiltonian.
pub fn analytic_capacity(
    region: Region,
    noise: Option<ChannelKind>,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
) -> f64 {
    let set = analytic_eigenvalues(region, noise, p, eta_a, eta_b, k);
    let l = set.sorted.values();
    2.0 * (l[3] + l[2] - l[1] - l[0])
}

/// Scenario adapter for [`analytic_eigenvalues`].
pub fn analytic_eigenvalues_for(scenario: &Scenario) -> AnalyticEigenSet {
    let (noise, k) = match &scenario.channel {
        Some(c) => (Some(c.kind()), c.k()),
        None => (None, 0.0),
    };
    analytic_eigenvalues(
        scenario.region,
        noise,
        scenario.p,
        scenario.eta_a.eta(),
        scenario.eta_b.eta(),
        k,
    )
}

/// Scenario adapter for [`analytic_capacity`].
pub fn analytic_capacity_for(scenario: &Scenario) -> f64 {
    let set = analytic_eigenvalues_for(scenario);
    let l = set.sorted.values();
    2.0 * (l[3] + l[2] - l[1] - l[0])
}

/// Capacity expressions specialized to the reference working point
/// `eta_b = pi/6`, `p = 3/10`, as commonly tabulated, together with the
/// disputed coefficient variants the verifier adjudicates.
///
/// The general closed forms above are the ground truth; these specialized
/// expressions exist so the verifier can confirm the quoted numeric
/// coefficients (27/100, 9/100, 27/400, ...) against the matrix pipeline.
/// Two of the tabulated Bloch forms and one capacity coefficient disagree
/// with the general forms; see [`tabulated::DISPUTED`].
pub mod tabulated {
    use crate::channels::ChannelKind;
    use crate::relativistic::{BlochTwoQubit, Region};
    use std::f64::consts::FRAC_PI_6;

    /// Mixing weight of the working point.
    pub const WORKING_P: f64 = 0.3;

    /// Observer B's fixed mixing angle at the working point.
    pub fn working_eta_b() -> f64 {
        FRAC_PI_6
    }

    /// Radical coefficient of the depolarizing A2B2 capacity as tabulated.
    pub const DEP_A2B2_RADICAL_TABULATED: f64 = 27.0 / 100.0;
    /// The same coefficient as implied by the general closed forms
    /// (`4 p^2 sin^2(eta_b)` with `p = 3/10`, `eta_b = pi/6`).
    pub const DEP_A2B2_RADICAL_DERIVED: f64 = 9.0 / 100.0;

    /// Human-readable list of the tabulated-vs-derived discrepancies.
    pub const DISPUTED: [&str; 3] = [
        "dep A2B2 capacity radical coefficient: 27/100 tabulated vs 9/100 derived",
        "bf A1B2 zz-correlation coefficient: 2p tabulated vs p derived",
        "dep A1B2 zz-correlation coefficient: 2p tabulated vs p derived; \
         dep A2B2 local-z factor: squared tabulated vs linear derived",
    ];

    fn region_constants(region: Region, eta: f64) -> (f64, f64, f64, f64) {
        // (u, v, w, c) with capacity lead term u + v, radical (u-v)^2 + c*w.
        let (s2, c2) = (eta.sin().powi(2), eta.cos().powi(2));
        match region {
            Region::A1B1 => (s2, 0.25, c2, 27.0 / 100.0),
            Region::A1B2 => (s2, 0.75, c2, 9.0 / 100.0),
            Region::A2B1 => (c2, 0.25, s2, 27.0 / 100.0),
            Region::A2B2 => (c2, 0.75, s2, DEP_A2B2_RADICAL_DERIVED),
        }
    }

    /// Noiseless capacity at the working point.
    pub fn capacity_noiseless(region: Region, eta: f64) -> f64 {
        let (u, v, w, c) = region_constants(region, eta);
        u + v + ((u - v).powi(2) + c * w).sqrt()
    }

    /// Phase-flip capacity at the working point.
    pub fn capacity_pf(region: Region, eta: f64, k: f64) -> f64 {
        let (u, v, w, c) = region_constants(region, eta);
        let f4 = (1.0 - 2.0 * k).powi(4);
        u + v + ((u - v).powi(2) + c * f4 * w).sqrt()
    }

    /// Bit-flip capacity at the working point. The quoted coefficients
    /// 27/400 and 9/400 are `p^2 cos^2(eta_b)` and `p^2 sin^2(eta_b)`.
    pub fn capacity_bf(region: Region, eta: f64, k: f64) -> f64 {
        let (u, v, w, c) = region_constants(region, eta);
        let c400 = c / 4.0;
        let f2 = (1.0 - 2.0 * k).powi(2);
        (f2 * (u + v).powi(2) + c400 * (1.0 - f2).powi(2) * w).sqrt()
            + (f2 * (u - v).powi(2) + c400 * (1.0 + f2).powi(2) * w).sqrt()
    }

    /// Depolarizing capacity at the working point with an explicit radical
    /// coefficient for the A2B2 dispute; other regions ignore `a2b2_radical`.
    pub fn capacity_dep_with(region: Region, eta: f64, k: f64, a2b2_radical: f64) -> f64 {
        let (u, v, w, mut c) = region_constants(region, eta);
        if region == Region::A2B2 {
            c = a2b2_radical;
        }
        let q = 1.0 - 4.0 * k / 3.0;
        q.abs() * (u + v + ((u - v).powi(2) + c * q * q * w).sqrt())
    }

    /// Depolarizing capacity using the derived A2B2 coefficient.
    pub fn capacity_dep(region: Region, eta: f64, k: f64) -> f64 {
        capacity_dep_with(region, eta, k, DEP_A2B2_RADICAL_DERIVED)
    }

    /// Capacity at the working point for any noise setting, derived
    /// coefficients throughout.
    pub fn capacity(region: Region, noise: Option<ChannelKind>, eta: f64, k: f64) -> f64 {
        match noise {
            None => capacity_noiseless(region, eta),
            Some(ChannelKind::PhaseFlip) => capacity_pf(region, eta, k),
            Some(ChannelKind::BitFlip) => capacity_bf(region, eta, k),
            Some(ChannelKind::Depolarizing) => capacity_dep(region, eta, k),
        }
    }

    /// Which of a pair of disputed forms a check should evaluate.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum BlochVariant {
        /// The coefficient set exactly as tabulated.
        Tabulated,
        /// The coefficient set implied by the general channel scalings.
        Derived,
    }

    /// Bit-flip A1B2 Bloch coefficients. The tabulated zz-correlation term
    /// carries `2p cos^2(eta_a) sin^2(eta_b)`; the derived one drops the 2.
    pub fn bloch_bf_a1b2(
        p: f64,
        eta_a: f64,
        eta_b: f64,
        k: f64,
        variant: BlochVariant,
    ) -> BlochTwoQubit {
        let f = 1.0 - 2.0 * k;
        let (sa, ca) = (eta_a.sin(), eta_a.cos());
        let (sb, cb) = (eta_b.sin(), eta_b.cos());
        let zz_weight = match variant {
            BlochVariant::Tabulated => 2.0 * p,
            BlochVariant::Derived => p,
        };
        BlochTwoQubit {
            a3: -f * sa * sa,
            b3: f * cb * cb,
            c1: p * ca * sb,
            c2: -f * f * p * ca * sb,
            c3: f * f * (zz_weight * ca * ca * sb * sb - sa * sa * cb * cb),
        }
    }

    /// Depolarizing A1B2 Bloch coefficients; same `2p` dispute as bit flip.
    pub fn bloch_dep_a1b2(
        p: f64,
        eta_a: f64,
        eta_b: f64,
        k: f64,
        variant: BlochVariant,
    ) -> BlochTwoQubit {
        let q = 1.0 - 4.0 * k / 3.0;
        let (sa, ca) = (eta_a.sin(), eta_a.cos());
        let (sb, cb) = (eta_b.sin(), eta_b.cos());
        let zz_weight = match variant {
            BlochVariant::Tabulated => 2.0 * p,
            BlochVariant::Derived => p,
        };
        BlochTwoQubit {
            a3: -q * sa * sa,
            b3: q * cb * cb,
            c1: q * q * p * ca * sb,
            c2: -q * q * p * ca * sb,
            c3: q * q * (zz_weight * ca * ca * sb * sb - sa * sa * cb * cb),
        }
    }

    /// Depolarizing A2B2 Bloch coefficients. The tabulated local-z terms
    /// carry the squared factor `(1 - 4k/3)^2`; the derived ones are linear.
    pub fn bloch_dep_a2b2(
        p: f64,
        eta_a: f64,
        eta_b: f64,
        k: f64,
        variant: BlochVariant,
    ) -> BlochTwoQubit {
        let q = 1.0 - 4.0 * k / 3.0;
        let (sa, ca) = (eta_a.sin(), eta_a.cos());
        let (sb, cb) = (eta_b.sin(), eta_b.cos());
        let local_z = match variant {
            BlochVariant::Tabulated => q * q,
            BlochVariant::Derived => q,
        };
        BlochTwoQubit {
            a3: local_z * ca * ca,
            b3: local_z * cb * cb,
            c1: q * q * p * sa * sb,
            c2: q * q * p * sa * sb,
            c3: q * q * (ca * ca * cb * cb - p * sa * sa * sb * sb),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::battery::{capacity_zz, evaluate};
    use crate::channels::ChannelSpec;
    use crate::relativistic::HawkingParam;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    const ETA_B: f64 = FRAC_PI_6;

    fn eta_grid(n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| FRAC_PI_2 * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn labeled_values_reproduce_hand_evaluation() {
        // Accessible pair, static observer A, angle pi/6 for B, p = 3/10.
        let set = analytic_eigenvalues(Region::A1B1, None, 0.3, 0.0, ETA_B, 0.0);
        let radical = 0.3325f64.sqrt();
        let want = [
            0.525 / 4.0,
            (1.225 - radical) / 4.0,
            1.025 / 4.0,
            (1.225 + radical) / 4.0,
        ];
        for (got, want) in set.labeled.iter().zip(&want) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(set.ordering_holds);
    }

    #[test]
    fn every_quadruple_sums_to_one() {
        let noises = [
            None,
            Some(ChannelKind::PhaseFlip),
            Some(ChannelKind::BitFlip),
            Some(ChannelKind::Depolarizing),
        ];
        for region in Region::ALL {
            for noise in noises {
                for &p in &[0.0, 0.3, 0.7, 1.0] {
                    for &ea in &eta_grid(9) {
                        for &k in &[0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
                            let set = analytic_eigenvalues(region, noise, p, ea, ETA_B, k);
                            let sum: f64 = set.labeled.iter().sum();
                            assert!(
                                (sum - 1.0).abs() < 1e-12,
                                "{region} {noise:?} p={p} ea={ea} k={k}: sum={sum}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sorted_values_match_the_pipeline_spot_checks() {
        let eta_b = HawkingParam::from_angle(ETA_B).unwrap();
        let noises: [Option<ChannelKind>; 4] = [
            None,
            Some(ChannelKind::PhaseFlip),
            Some(ChannelKind::BitFlip),
            Some(ChannelKind::Depolarizing),
        ];
        for region in Region::ALL {
            for noise in noises {
                for &(p, ea, k) in &[(0.3, 0.4, 0.2), (0.7, 1.2, 0.85), (1.0, 0.0, 0.6)] {
                    let channel = noise.map(|kind| ChannelSpec::new(kind, k).unwrap());
                    let s = crate::relativistic::Scenario::new(
                        region,
                        p,
                        HawkingParam::from_angle(ea).unwrap(),
                        eta_b,
                        channel,
                    )
                    .unwrap();
                    let record = evaluate(&s).unwrap();
                    let set = analytic_eigenvalues_for(&s);
                    assert!(
                        record.spectrum.max_abs_diff(&set.sorted) < 1e-12,
                        "{region} {noise:?} p={p} ea={ea} k={k}"
                    );
                    assert!(record.residual.unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn maximal_phase_flip_collapses_the_radical() {
        // At k = 1/2 the (1-2k)^4 term vanishes and only |xa - xb| remains.
        let set = analytic_eigenvalues(
            Region::A1B1,
            Some(ChannelKind::PhaseFlip),
            0.3,
            0.0,
            ETA_B,
            0.5,
        );
        let c = analytic_capacity(
            Region::A1B1,
            Some(ChannelKind::PhaseFlip),
            0.3,
            0.0,
            ETA_B,
            0.5,
        );
        assert!((c - 0.5).abs() < 1e-15);
        assert!((set.labeled[3] - set.labeled[1] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn maximal_bit_flip_capacity_is_a_pure_cosine_profile() {
        // k = 1/2 leaves capacity 2 p cos(eta_a) cos(eta_b).
        for &ea in &eta_grid(11) {
            let c = analytic_capacity(
                Region::A1B1,
                Some(ChannelKind::BitFlip),
                0.3,
                ea,
                ETA_B,
                0.5,
            );
            let want = 0.3 * 3.0f64.sqrt() * ea.cos();
            assert!((c - want).abs() < 1e-14, "eta={ea}: {c} vs {want}");
        }
    }

    #[test]
    fn depolarizing_death_point_flattens_the_spectrum() {
        for region in Region::ALL {
            let set = analytic_eigenvalues(
                region,
                Some(ChannelKind::Depolarizing),
                0.64,
                0.93,
                ETA_B,
                0.75,
            );
            for v in set.labeled {
                assert!((v - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn depolarizing_labels_break_order_past_the_death_point() {
        let set = analytic_eigenvalues(
            Region::A1B1,
            Some(ChannelKind::Depolarizing),
            0.3,
            0.4,
            ETA_B,
            0.9,
        );
        assert!(!set.ordering_holds);
        assert!(!set.partition_holds);
        // The sorted copy is still a valid spectrum.
        assert!((set.sorted.sum() - 1.0).abs() < 1e-12);
        assert!(set.sorted.min() >= 0.0);
    }

    #[test]
    fn interior_regions_relabel_without_breaking_the_partition() {
        // At p = 0, eta_a = 0 the A2B1 labels come out as (0, 0, 5/8, 3/8):
        // out of ascending order, but the top pair is still the top pair.
        let set = analytic_eigenvalues(Region::A2B1, None, 0.0, 0.0, ETA_B, 0.0);
        assert!(!set.ordering_holds);
        assert!(set.partition_holds);
        assert!((set.labeled[2] - 0.625).abs() < 1e-15);
        assert!((set.labeled[3] - 0.375).abs() < 1e-15);

        // Noiseless label partitions hold across the parameter box.
        for region in Region::ALL {
            for &p in &[0.0, 0.3, 0.7, 1.0] {
                for &ea in &eta_grid(9) {
                    let set = analytic_eigenvalues(region, None, p, ea, ETA_B, 0.0);
                    assert!(set.partition_holds, "{region} p={p} ea={ea}");
                }
            }
        }
    }

    #[test]
    fn flip_capacities_are_symmetric_about_half() {
        for kind in [ChannelKind::PhaseFlip, ChannelKind::BitFlip] {
            for &ea in &eta_grid(7) {
                for &k in &[0.0, 0.1, 0.3, 0.45] {
                    let a = analytic_capacity(Region::A2B1, Some(kind), 0.3, ea, ETA_B, k);
                    let b = analytic_capacity(Region::A2B1, Some(kind), 0.3, ea, ETA_B, 1.0 - k);
                    assert!((a - b).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn full_entanglement_keeps_the_accessible_capacity_maximal() {
        for &ea in &eta_grid(11) {
            let c = analytic_capacity(Region::A1B1, None, 1.0, ea, ETA_B, 0.0);
            assert!((c - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn specialized_forms_match_the_general_ones_at_the_working_point() {
        let noises: [Option<ChannelKind>; 4] = [
            None,
            Some(ChannelKind::PhaseFlip),
            Some(ChannelKind::BitFlip),
            Some(ChannelKind::Depolarizing),
        ];
        for region in Region::ALL {
            for noise in noises {
                for &ea in &eta_grid(13) {
                    for &k in &[0.0, 0.2, 0.5, 0.7, 1.0] {
                        let set =
                            analytic_eigenvalues(region, noise, tabulated::WORKING_P, ea, ETA_B, k);
                        if !set.partition_holds {
                            continue;
                        }
                        let general = capacity_zz(&set.sorted).unwrap();
                        let special = tabulated::capacity(region, noise, ea, k);
                        assert!(
                            (general - special).abs() < 1e-12,
                            "{region} {noise:?} ea={ea} k={k}: {general} vs {special}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disputed_dep_a2b2_coefficients_differ_away_from_the_death_point() {
        let tab = tabulated::capacity_dep_with(
            Region::A2B2,
            1.2,
            0.2,
            tabulated::DEP_A2B2_RADICAL_TABULATED,
        );
        let der = tabulated::capacity_dep_with(
            Region::A2B2,
            1.2,
            0.2,
            tabulated::DEP_A2B2_RADICAL_DERIVED,
        );
        assert!((tab - der).abs() > 1e-3);
    }

    #[test]
    fn derived_bloch_variants_match_the_channel_scalings() {
        use crate::relativistic::{bloch_coefficients, Scenario};
        let (p, ea, k) = (0.3, 0.8, 0.35);
        let eta_a = HawkingParam::from_angle(ea).unwrap();
        let eta_b = HawkingParam::from_angle(ETA_B).unwrap();

        let cases: [(Region, ChannelKind, BlochTwoQubitFn); 3] = [
            (Region::A1B2, ChannelKind::BitFlip, tabulated::bloch_bf_a1b2),
            (
                Region::A1B2,
                ChannelKind::Depolarizing,
                tabulated::bloch_dep_a1b2,
            ),
            (
                Region::A2B2,
                ChannelKind::Depolarizing,
                tabulated::bloch_dep_a2b2,
            ),
        ];
        for (region, kind, build) in cases {
            let s = Scenario::new(
                region,
                p,
                eta_a,
                eta_b,
                Some(ChannelSpec::new(kind, k).unwrap()),
            )
            .unwrap();
            let derived = build(p, ea, ETA_B, k, tabulated::BlochVariant::Derived);
            let scaled = bloch_coefficients(&s);
            let diff = derived.to_matrix().max_abs_diff(&scaled.to_matrix());
            assert!(diff < 1e-15, "{region} {kind}: {diff}");

            let tabbed = build(p, ea, ETA_B, k, tabulated::BlochVariant::Tabulated);
            assert!(tabbed.to_matrix().max_abs_diff(&scaled.to_matrix()) > 1e-4);
        }
    }

    type BlochTwoQubitFn =
        fn(f64, f64, f64, f64, tabulated::BlochVariant) -> crate::relativistic::BlochTwoQubit;
}
