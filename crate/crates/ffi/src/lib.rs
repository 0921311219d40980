//! C ABI for the qbcap library.
//!
//! Scalar evaluations go through plain structs; verification reports are
//! opaque handles with getter functions and an explicit free. Every entry
//! point returns a [`QbStatus`] (or a sentinel value for getters) instead
//! of panicking across the boundary. The matching header is generated into
//! `include/qbcap.h` at build time.

use std::ffi::{c_char, CString};

use qbcap::analytic::analytic_capacity;
use qbcap::battery::evaluate;
use qbcap::channels::{ChannelKind, ChannelSpec};
use qbcap::error::Error;
use qbcap::relativistic::{HawkingParam, Region, Scenario};
use qbcap::verify::{run_verify, VerifyReport};

/// Region pair handed to the two observers.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum QbRegion {
    A1B1 = 0,
    A1B2 = 1,
    A2B1 = 2,
    A2B2 = 3,
}

impl From<QbRegion> for Region {
    fn from(region: QbRegion) -> Region {
        match region {
            QbRegion::A1B1 => Region::A1B1,
            QbRegion::A1B2 => Region::A1B2,
            QbRegion::A2B1 => Region::A2B1,
            QbRegion::A2B2 => Region::A2B2,
        }
    }
}

/// Local noise channel applied to both qubits.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum QbNoise {
    None = 0,
    PhaseFlip = 1,
    BitFlip = 2,
    Depolarizing = 3,
}

impl QbNoise {
    fn kind(self) -> Option<ChannelKind> {
        match self {
            QbNoise::None => None,
            QbNoise::PhaseFlip => Some(ChannelKind::PhaseFlip),
            QbNoise::BitFlip => Some(ChannelKind::BitFlip),
            QbNoise::Depolarizing => Some(ChannelKind::Depolarizing),
        }
    }
}

/// Call outcome.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum QbStatus {
    Ok = 0,
    /// A parameter is outside its domain.
    InvalidArgument = 1,
    /// The eigensolver failed to converge.
    NoConvergence = 2,
    /// A required pointer was null.
    NullPointer = 3,
}

fn status_of(err: &Error) -> QbStatus {
    match err {
        Error::NoConvergence { .. } => QbStatus::NoConvergence,
        _ => QbStatus::InvalidArgument,
    }
}

/// One evaluated parameter point.
#[repr(C)]
pub struct QbCapacityResult {
    /// Sorted eigenvalues of the reduced state.
    pub eigenvalues: [f64; 4],
    /// Capacity from the matrix pipeline.
    pub capacity_pipeline: f64,
    /// Capacity from the closed forms.
    pub capacity_analytic: f64,
    /// |pipeline - analytic|.
    pub residual: f64,
    /// True when either mixing angle exceeds pi/4, which no Hawking
    /// temperature produces.
    pub beyond_physical_range: bool,
}

fn build_scenario(
    region: QbRegion,
    noise: QbNoise,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
) -> Result<Scenario, Error> {
    let eta_a = HawkingParam::from_angle(eta_a)?;
    let eta_b = HawkingParam::from_angle(eta_b)?;
    let channel = match noise.kind() {
        Some(kind) => Some(ChannelSpec::new(kind, k)?),
        None => None,
    };
    Scenario::new(region.into(), p, eta_a, eta_b, channel)
}

/// Evaluates one parameter point through both routes.
///
/// # Safety
/// `out` must be null or point to writable memory for one
/// `QbCapacityResult`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_capacity_eval(
    region: QbRegion,
    noise: QbNoise,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
    out: *mut QbCapacityResult,
) -> QbStatus {
    if out.is_null() {
        return QbStatus::NullPointer;
    }
    let scenario = match build_scenario(region, noise, p, eta_a, eta_b, k) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    let record = match evaluate(&scenario) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let mut eigenvalues = [0.0; 4];
    eigenvalues.copy_from_slice(record.spectrum.values());
    out.write(QbCapacityResult {
        eigenvalues,
        capacity_pipeline: record.capacity,
        capacity_analytic: qbcap::analytic::analytic_capacity_for(&scenario),
        residual: record.residual.unwrap_or(0.0),
        beyond_physical_range: scenario.eta_a.beyond_physical_range()
            || scenario.eta_b.beyond_physical_range(),
    });
    QbStatus::Ok
}

/// Closed-form capacity only, without running the matrix pipeline.
///
/// # Safety
/// `out` must be null or point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_analytic_capacity(
    region: QbRegion,
    noise: QbNoise,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
    out: *mut f64,
) -> QbStatus {
    if out.is_null() {
        return QbStatus::NullPointer;
    }
    // Validate exactly like the pipeline route.
    if let Err(e) = build_scenario(region, noise, p, eta_a, eta_b, k) {
        return status_of(&e);
    }
    out.write(analytic_capacity(
        region.into(),
        noise.kind(),
        p,
        eta_a,
        eta_b,
        k,
    ));
    QbStatus::Ok
}

/// Opaque verification report handle.
pub struct QbVerifyReport {
    inner: VerifyReport,
    rendered: CString,
}

/// Runs the closed-form vs pipeline verification at the given grid density
/// and hands back an opaque report. Free it with `qbcap_verify_free`.
///
/// # Safety
/// `out` must be null or point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_run(
    density: usize,
    out: *mut *mut QbVerifyReport,
) -> QbStatus {
    if out.is_null() {
        return QbStatus::NullPointer;
    }
    match run_verify(density) {
        Ok(report) => {
            let rendered = CString::new(report.render_text()).expect("no interior NUL");
            let boxed = Box::new(QbVerifyReport {
                inner: report,
                rendered,
            });
            out.write(Box::into_raw(boxed));
            QbStatus::Ok
        }
        Err(e) => {
            out.write(std::ptr::null_mut());
            status_of(&e)
        }
    }
}

/// Whether every residual stayed under the acceptance threshold.
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_passed(report: *const QbVerifyReport) -> bool {
    report.as_ref().map(|r| r.inner.passed).unwrap_or(false)
}

/// Largest |analytic - pipeline| eigenvalue residual (NaN for null input).
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_max_eigenvalue_residual(
    report: *const QbVerifyReport,
) -> f64 {
    report
        .as_ref()
        .map(|r| r.inner.scan.max_eigenvalue_residual)
        .unwrap_or(f64::NAN)
}

/// Largest |analytic - pipeline| capacity residual (NaN for null input).
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_max_capacity_residual(report: *const QbVerifyReport) -> f64 {
    report
        .as_ref()
        .map(|r| r.inner.scan.max_capacity_residual)
        .unwrap_or(f64::NAN)
}

/// Largest Bloch-vs-Kraus state entry residual (NaN for null input).
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_max_state_residual(report: *const QbVerifyReport) -> f64 {
    report
        .as_ref()
        .map(|r| r.inner.scan.max_state_residual)
        .unwrap_or(f64::NAN)
}

/// Number of grid points where the labeled closed-form order is unsorted.
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_ordering_violations(report: *const QbVerifyReport) -> u64 {
    report
        .as_ref()
        .map(|r| r.inner.scan.ordering_violation_count as u64)
        .unwrap_or(0)
}

/// Number of grid points where the labeled top eigenvalue pair is wrong.
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_partition_violations(report: *const QbVerifyReport) -> u64 {
    report
        .as_ref()
        .map(|r| r.inner.scan.partition_violation_count as u64)
        .unwrap_or(0)
}

/// Borrowed pointer to the human-readable report text, valid until the
/// report is freed. Returns null for null input.
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_render_text(report: *const QbVerifyReport) -> *const c_char {
    report
        .as_ref()
        .map(|r| r.rendered.as_ptr())
        .unwrap_or(std::ptr::null())
}

/// Releases a report handle. Null is a no-op.
///
/// # Safety
/// `report` must be null or a pointer from `qbcap_verify_run`, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn qbcap_verify_free(report: *mut QbVerifyReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qbcap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
