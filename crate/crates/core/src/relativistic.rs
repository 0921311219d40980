//! Horizon-mode construction: the shared isotropic state, the two-mode
//! squeezing isometry seen by a near-horizon observer, the resulting
//! four-partite state, and its four region-pair reductions.
//!
//! Each observer's qubit is mapped by an isometry V with
//! `|0> -> cos(eta)|0_I 0_II> + sin(eta)|1_I 1_II>` and `|1> -> |1_I 0_II>`,
//! where region I is outside the horizon and region II inside. Reduced
//! states over a pair of regions can be built two ways: by partial-tracing
//! the 16-dimensional state (the pipeline route) or directly from closed
//! Bloch coefficients (the bloch route). Both must agree to near machine
//! precision, and the verification suite holds them to that.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use crate::channels::{self, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix};

/// Mode-mixing angle induced by Hawking radiation, in `[0, pi/2]`.
///
/// The thermal map `sin(eta) = (exp(omega/T) + 1)^(-1/2)` only reaches
/// `[0, pi/4)`; larger angles are accepted as a formal extrapolation and
/// flagged by [`HawkingParam::beyond_physical_range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HawkingParam {
    eta: f64,
    origin: Option<ThermalOrigin>,
}

/// Physical provenance of a mixing angle, in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOrigin {
    pub omega: f64,
    pub temperature: f64,
    pub mass: Option<f64>,
}

impl HawkingParam {
    /// A bare mixing angle in radians.
    pub fn from_angle(eta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&eta) {
            return Err(Error::Domain(format!(
                "mixing angle {eta} outside [0, pi/2]"
            )));
        }
        Ok(Self { eta, origin: None })
    }

    /// Mixing angle of a field mode of frequency `omega` at temperature
    /// `temperature`: `eta = asin((exp(omega/T) + 1)^(-1/2))`.
    ///
    /// Monotonically increasing in `temperature` with supremum `pi/4`.
    pub fn from_temperature(omega: f64, temperature: f64) -> Result<Self> {
        if omega.is_nan() || omega <= 0.0 {
            return Err(Error::Domain(format!(
                "frequency must be positive, got {omega}"
            )));
        }
        if temperature.is_nan() || temperature <= 0.0 {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        // exp overflow collapses cleanly to sin(eta) = 0.
        let sin_eta = ((omega / temperature).exp() + 1.0).sqrt().recip();
        Ok(Self {
            eta: sin_eta.asin(),
            origin: Some(ThermalOrigin {
                omega,
                temperature,
                mass: None,
            }),
        })
    }

    /// Mixing angle near a black hole of the given mass, whose horizon
    /// temperature is `1 / (8 pi M)` in natural units.
    pub fn from_black_hole_mass(omega: f64, mass: f64) -> Result<Self> {
        if mass.is_nan() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        let temperature = 1.0 / (8.0 * std::f64::consts::PI * mass);
        let mut param = Self::from_temperature(omega, temperature)?;
        if let Some(origin) = &mut param.origin {
            origin.mass = Some(mass);
        }
        Ok(param)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn origin(&self) -> Option<&ThermalOrigin> {
        self.origin.as_ref()
    }

    /// True for angles above `pi/4`, which no finite temperature produces.
    pub fn beyond_physical_range(&self) -> bool {
        self.eta > FRAC_PI_4
    }

    pub fn cos(&self) -> f64 {
        self.eta.cos()
    }

    pub fn sin(&self) -> f64 {
        self.eta.sin()
    }
}

/// The four region pairs one can hand to the two observers.
///
/// `A1B1` is the physically accessible pair (both modes outside the
/// horizon); the other three involve at least one interior mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    A1B1,
    A1B2,
    A2B1,
    A2B2,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::A1B1, Region::A1B2, Region::A2B1, Region::A2B2];

    /// Subsystem indices to keep in the (A_I, A_II, B_I, B_II) ordering.
    pub fn keep_indices(&self) -> [usize; 2] {
        match self {
            Region::A1B1 => [0, 2],
            Region::A1B2 => [0, 3],
            Region::A2B1 => [1, 2],
            Region::A2B2 => [1, 3],
        }
    }

    /// True when observer A's mode lies outside the horizon.
    pub fn a_outside(&self) -> bool {
        matches!(self, Region::A1B1 | Region::A1B2)
    }

    /// True when observer B's mode lies outside the horizon.
    pub fn b_outside(&self) -> bool {
        matches!(self, Region::A1B1 | Region::A2B1)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::A1B1 => "A1B1",
            Region::A1B2 => "A1B2",
            Region::A2B1 => "A2B1",
            Region::A2B2 => "A2B2",
        };
        f.write_str(s)
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1B1" => Ok(Region::A1B1),
            "A1B2" => Ok(Region::A1B2),
            "A2B1" => Ok(Region::A2B1),
            "A2B2" => Ok(Region::A2B2),
            _ => Err(Error::Domain(format!(
                "unknown region '{s}' (expected A1B1, A1B2, A2B1 or A2B2)"
            ))),
        }
    }
}

/// One fully specified evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub region: Region,
    pub p: f64,
    pub eta_a: HawkingParam,
    pub eta_b: HawkingParam,
    pub channel: Option<ChannelSpec>,
}

impl Scenario {
    pub fn new(
        region: Region,
        p: f64,
        eta_a: HawkingParam,
        eta_b: HawkingParam,
        channel: Option<ChannelSpec>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "mixing weight p = {p} outside [0, 1]"
            )));
        }
        Ok(Self {
            region,
            p,
            eta_a,
            eta_b,
            channel,
        })
    }

    /// Same point with any noise channel stripped.
    pub fn without_channel(&self) -> Self {
        Self {
            channel: None,
            ..*self
        }
    }
}

/// Bloch coefficients of the X-structured two-qubit states used throughout:
/// `rho = 1/4 (I(x)I + a3 s3(x)I + b3 I(x)s3 + c1 s1(x)s1 + c2 s2(x)s2
/// + c3 s3(x)s3)`.
///
/// Any real coefficient set reconstructs to a Hermitian unit-trace matrix;
/// positivity is a property of where the coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochTwoQubit {
    pub a3: f64,
    pub b3: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BlochTwoQubit {
    /// Evaluates the Pauli expansion. The six terms only populate the
    /// X-shaped entries, written out here directly.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let Self { a3, b3, c1, c2, c3 } = *self;
        let mut m = ComplexMatrix::zeros(4, 4);
        let set = |m: &mut ComplexMatrix, i: usize, j: usize, v: f64| {
            m[(i, j)] = num_complex::Complex64::new(0.25 * v, 0.0);
        };
        set(&mut m, 0, 0, 1.0 + a3 + b3 + c3);
        set(&mut m, 1, 1, 1.0 + a3 - b3 - c3);
        set(&mut m, 2, 2, 1.0 - a3 + b3 - c3);
        set(&mut m, 3, 3, 1.0 - a3 - b3 + c3);
        set(&mut m, 0, 3, c1 - c2);
        set(&mut m, 3, 0, c1 - c2);
        set(&mut m, 1, 2, c1 + c2);
        set(&mut m, 2, 1, c1 + c2);
        m
    }
}

/// Two-qubit isotropic state
/// `rho = 1/4 (I(x)I + p s1(x)s1 + p s2(x)s2 - p s3(x)s3)`,
/// equal to `(1-p)/4 I + p |psi+><psi+|` with `|psi+> = (|01>+|10>)/sqrt(2)`.
pub fn isotropic_state(p: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "mixing weight p = {p} outside [0, 1]"
        )));
    }
    Ok(BlochTwoQubit {
        a3: 0.0,
        b3: 0.0,
        c1: p,
        c2: p,
        c3: -p,
    }
    .to_matrix())
}

/// The 4x2 isometry taking one qubit into its (region I, region II) mode
/// pair: `|0> -> cos(eta)|00> + sin(eta)|11>`, `|1> -> |10>`.
pub fn hawking_isometry(eta: &HawkingParam) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4, 2);
    v[(0, 0)] = num_complex::Complex64::new(eta.cos(), 0.0);
    v[(3, 0)] = num_complex::Complex64::new(eta.sin(), 0.0);
    v[(2, 1)] = num_complex::Complex64::new(1.0, 0.0);
    v
}

/// The 16x16 state of the four modes (A_I, A_II, B_I, B_II):
/// `(V_a (x) V_b) rho_iso (V_a (x) V_b)^dag`.
pub fn four_partite_state(
    p: f64,
    eta_a: &HawkingParam,
    eta_b: &HawkingParam,
) -> Result<ComplexMatrix> {
    let rho = isotropic_state(p)?;
    let w = hawking_isometry(eta_a).tensor(&hawking_isometry(eta_b));
    Ok(&(&w * &rho) * &w.dagger())
}

/// Construction route for a region-pair reduced state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionPath {
    /// Isometry, then partial trace of the 16-dimensional state.
    Pipeline,
    /// Direct evaluation of the closed Bloch coefficients.
    Bloch,
}

/// Noiseless reduced state of the scenario's region pair, by either route.
///
/// Channels act after reduction, so a scenario carrying one is rejected
/// here; strip it first and apply the channel separately.
pub fn reduced_state(scenario: &Scenario, path: ReductionPath) -> Result<ComplexMatrix> {
    if scenario.channel.is_some() {
        return Err(Error::Domain(
            "reduced_state builds noiseless states; apply the channel afterwards".into(),
        ));
    }
    match path {
        ReductionPath::Pipeline => {
            let four = four_partite_state(scenario.p, &scenario.eta_a, &scenario.eta_b)?;
            partial_trace(&four, &scenario.region.keep_indices(), &[2, 2, 2, 2])
        }
        ReductionPath::Bloch => Ok(bloch_coefficients(scenario).to_matrix()),
    }
}

/// Closed Bloch coefficients of the scenario's reduced state. If the
/// scenario carries a channel, its per-Pauli scalings are folded in.
pub fn bloch_coefficients(scenario: &Scenario) -> BlochTwoQubit {
    let p = scenario.p;
    let (sa, ca) = (scenario.eta_a.sin(), scenario.eta_a.cos());
    let (sb, cb) = (scenario.eta_b.sin(), scenario.eta_b.cos());
    let (sa2, ca2) = (sa * sa, ca * ca);
    let (sb2, cb2) = (sb * sb, cb * cb);

    let coeffs = match scenario.region {
        Region::A1B1 => BlochTwoQubit {
            a3: -sa2,
            b3: -sb2,
            c1: p * ca * cb,
            c2: p * ca * cb,
            c3: sa2 * sb2 - p * ca2 * cb2,
        },
        Region::A1B2 => BlochTwoQubit {
            a3: -sa2,
            b3: cb2,
            c1: p * ca * sb,
            c2: -p * ca * sb,
            c3: p * ca2 * sb2 - sa2 * cb2,
        },
        Region::A2B1 => BlochTwoQubit {
            a3: ca2,
            b3: -sb2,
            c1: p * sa * cb,
            c2: -p * sa * cb,
            c3: p * sa2 * cb2 - ca2 * sb2,
        },
        Region::A2B2 => BlochTwoQubit {
            a3: ca2,
            b3: cb2,
            c1: p * sa * sb,
            c2: p * sa * sb,
            c3: ca2 * cb2 - p * sa2 * sb2,
        },
    };

    match &scenario.channel {
        Some(spec) => channels::bloch_action(spec, &coeffs),
        None => coeffs,
    }
}
