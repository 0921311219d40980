//! The battery capacity functional.
//!
//! For a state with ascending eigenvalues `l_0 <= ... <= l_{d-1}` and a
//! Hamiltonian with ascending eigenenergies `e_0 <= ... <= e_{d-1}`, the
//! capacity is `sum_i e_i (l_i - l_{d-1-i})`: the gap between the most and
//! least energetic arrangements of the same spectrum. It is non-negative,
//! zero exactly when the paired eigenvalues are equal, and depends on the
//! state only through its spectrum.

use crate::analytic;
use crate::channels::{apply_channel, Target};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, EigenSpectrum, HERMITICITY_TOL};
use crate::relativistic::{reduced_state, ReductionPath, Scenario};

/// Eigenenergies of the battery Hamiltonian, ascending. The default working
/// Hamiltonian is `sigma_z (x) sigma_z` with energies `(-1, -1, 1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    energies: Vec<f64>,
}

impl HamiltonianSpec {
    /// The `sigma_z (x) sigma_z` two-qubit Hamiltonian.
    pub fn zz() -> Self {
        Self {
            energies: vec![-1.0, -1.0, 1.0, 1.0],
        }
    }

    pub fn from_energies(energies: Vec<f64>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::Domain("empty energy list".into()));
        }
        if energies.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Ordering(format!("energies {energies:?}")));
        }
        Ok(Self { energies })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Matrix form of the `zz` Hamiltonian in the computational basis.
    pub fn zz_matrix() -> crate::linalg::ComplexMatrix {
        crate::linalg::pauli::sigma_z().tensor(&crate::linalg::pauli::sigma_z())
    }
}

/// Which route produced a capacity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityPath {
    /// Isometry, partial trace, Kraus map, numerical diagonalization.
    Pipeline,
    /// Closed-form eigenvalues.
    Analytic,
}

impl std::fmt::Display for CapacityPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CapacityPath::Pipeline => "pipeline",
            CapacityPath::Analytic => "analytic",
        })
    }
}

/// Result of evaluating one scenario.
#[derive(Debug, Clone)]
pub struct CapacityRecord {
    /// Sorted eigenvalues of the (possibly noisy) reduced state.
    pub spectrum: EigenSpectrum,
    /// Capacity under the `zz` Hamiltonian.
    pub capacity: f64,
    /// Route that produced `capacity`.
    pub path: CapacityPath,
    /// `|pipeline - analytic|` when both routes cover the scenario.
    pub residual: Option<f64>,
}

/// General capacity `sum_i e_i (l_i - l_{d-1-i})`.
pub fn capacity(spectrum: &EigenSpectrum, h: &HamiltonianSpec) -> Result<f64> {
    let lams = spectrum.values();
    let energies = h.energies();
    if lams.len() != energies.len() {
        return Err(Error::Dimension(format!(
            "spectrum has {} eigenvalues, Hamiltonian has {} energies",
            lams.len(),
            energies.len()
        )));
    }
    if lams.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Ordering(format!("spectrum {lams:?}")));
    }
    let d = lams.len();
    Ok((0..d)
        .map(|i| energies[i] * (lams[i] - lams[d - 1 - i]))
        .sum())
}

/// Capacity specialization for the `zz` Hamiltonian on four eigenvalues:
/// `2 (l_3 + l_2 - l_1 - l_0)`.
pub fn capacity_zz(spectrum: &EigenSpectrum) -> Result<f64> {
    let lams = spectrum.values();
    if lams.len() != 4 {
        return Err(Error::Dimension(format!(
            "zz capacity needs 4 eigenvalues, got {}",
            lams.len()
        )));
    }
    Ok(2.0 * (lams[3] + lams[2] - lams[1] - lams[0]))
}

/// Full pipeline evaluation of one scenario: build the reduced state, apply
/// any channel to both qubits, diagonalize, and take the `zz` capacity. The
/// closed-form route is evaluated alongside to fill the residual.
pub fn evaluate(scenario: &Scenario) -> Result<CapacityRecord> {
    let noiseless = reduced_state(&scenario.without_channel(), ReductionPath::Pipeline)?;
    let rho = match &scenario.channel {
        Some(spec) => apply_channel(&noiseless, spec, Target::Both)?,
        None => noiseless,
    };
    let spectrum = hermitian_eigenvalues(&rho, HERMITICITY_TOL)?;
    let cap = capacity_zz(&spectrum)?;
    let analytic_cap = analytic::analytic_capacity_for(scenario);
    Ok(CapacityRecord {
        spectrum,
        capacity: cap,
        path: CapacityPath::Pipeline,
        residual: Some((cap - analytic_cap).abs()),
    })
}
