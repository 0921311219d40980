//! Single-qubit noise channels acting locally on the two observers.
//!
//! Each channel is available in two equivalent forms: a Kraus map on
//! density matrices and a per-Pauli scaling of Bloch coefficients. The
//! verification suite pins the two against each other.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{pauli, ComplexMatrix};
use crate::relativistic::BlochTwoQubit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    PhaseFlip,
    BitFlip,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::Depolarizing,
    ];
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitFlip => "bf",
            ChannelKind::Depolarizing => "dep",
        };
        f.write_str(s)
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pf" => Ok(ChannelKind::PhaseFlip),
            "bf" => Ok(ChannelKind::BitFlip),
            "dep" => Ok(ChannelKind::Depolarizing),
            _ => Err(Error::Domain(format!(
                "unknown channel '{s}' (expected pf, bf or dep)"
            ))),
        }
    }
}

/// A channel kind plus its decay probability `k` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    kind: ChannelKind,
    k: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::Domain(format!(
                "decay probability k = {k} outside [0, 1]"
            )));
        }
        Ok(Self { kind, k })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Which qubit(s) the channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    QubitA,
    QubitB,
    /// Both qubits with the same decay probability. The two local maps act
    /// on different factors, so composition order does not matter.
    Both,
}

/// Single-qubit Kraus operators of the channel.
///
/// pf: `{sqrt(1-k) I, sqrt(k) s3}`; bf: `{sqrt(1-k) I, sqrt(k) s1}`;
/// dep: `{sqrt(1-k) I, sqrt(k/3) s1, sqrt(k/3) s2, sqrt(k/3) s3}`.
pub fn kraus_operators(spec: &ChannelSpec) -> Vec<ComplexMatrix> {
    let k = spec.k;
    let keep = (1.0 - k).sqrt();
    match spec.kind {
        ChannelKind::PhaseFlip => vec![
            pauli::identity2().scale(keep),
            pauli::sigma_z().scale(k.sqrt()),
        ],
        ChannelKind::BitFlip => vec![
            pauli::identity2().scale(keep),
            pauli::sigma_x().scale(k.sqrt()),
        ],
        ChannelKind::Depolarizing => {
            let w = (k / 3.0).sqrt();
            vec![
                pauli::identity2().scale(keep),
                pauli::sigma_x().scale(w),
                pauli::sigma_y().scale(w),
                pauli::sigma_z().scale(w),
            ]
        }
    }
}

/// Scaling factors picked up by (s1, s2, s3) under one application of the
/// channel to a single qubit.
pub fn pauli_factors(spec: &ChannelSpec) -> [f64; 3] {
    let k = spec.k;
    match spec.kind {
        ChannelKind::PhaseFlip => [1.0 - 2.0 * k, 1.0 - 2.0 * k, 1.0],
        ChannelKind::BitFlip => [1.0, 1.0 - 2.0 * k, 1.0 - 2.0 * k],
        ChannelKind::Depolarizing => {
            let q = 1.0 - 4.0 * k / 3.0;
            [q, q, q]
        }
    }
}

/// Applies the channel to a two-qubit density matrix via its Kraus sum
/// `rho' = sum_i E_i rho E_i^dag`, with each operator lifted as `E (x) I`
/// or `I (x) E` depending on the target.
pub fn apply_channel(
    rho: &ComplexMatrix,
    spec: &ChannelSpec,
    target: Target,
) -> Result<ComplexMatrix> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::InvalidDensity(format!(
            "expected a 4x4 two-qubit state, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    rho.validate_density()?;
    Ok(match target {
        Target::QubitA => apply_on(rho, spec, true),
        Target::QubitB => apply_on(rho, spec, false),
        Target::Both => {
            let after_a = apply_on(rho, spec, true);
            apply_on(&after_a, spec, false)
        }
    })
}

fn apply_on(rho: &ComplexMatrix, spec: &ChannelSpec, on_a: bool) -> ComplexMatrix {
    let i2 = pauli::identity2();
    let mut out = ComplexMatrix::zeros(4, 4);
    for e in kraus_operators(spec) {
        let lifted = if on_a { e.tensor(&i2) } else { i2.tensor(&e) };
        out = &out + &(&(&lifted * rho) * &lifted.dagger());
    }
    out
}

/// Bloch-side action of the channel applied to both qubits: each Pauli
/// factor of a term picks up that qubit's scaling, so one-body coefficients
/// scale once and two-body coefficients scale twice.
pub fn bloch_action(spec: &ChannelSpec, coeffs: &BlochTwoQubit) -> BlochTwoQubit {
    let [f1, f2, f3] = pauli_factors(spec);
    BlochTwoQubit {
        a3: f3 * coeffs.a3,
        b3: f3 * coeffs.b3,
        c1: f1 * f1 * coeffs.c1,
        c2: f2 * f2 * coeffs.c2,
        c3: f3 * f3 * coeffs.c3,
    }
}
