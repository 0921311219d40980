//! Parameter sweeps with reproducible CSV output.
//!
//! Output rules, fixed so identical invocations are byte-identical:
//! 12 significant digits, `,` separators, `\n` line endings, one mandatory
//! header row. Figure emitters additionally prepend one `#` metadata line
//! recording the fixed parameters and axis ranges.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::analytic::analytic_capacity_for;
use crate::battery::evaluate;
use crate::channels::{ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::relativistic::{HawkingParam, Region, Scenario};

/// `n` evenly spaced points covering `[start, stop]` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    (0..n)
        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Formats with 12 significant digits, positional where reasonable and
/// scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", 11, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent value");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-4..12).contains(&exp) {
        let point = exp + 1; // digit count before the decimal point
        if point <= 0 {
            out.push_str("0.");
            for _ in 0..-point {
                out.push('0');
            }
            out.push_str(digits.trim_end_matches('0'));
        } else {
            let (whole, frac) = digits.split_at(point as usize);
            out.push_str(whole);
            let frac = frac.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        let trimmed = digits[1..].trim_end_matches('0');
        out.push(digits.as_bytes()[0] as char);
        if !trimmed.is_empty() {
            out.push('.');
            out.push_str(trimmed);
        }
        let _ = write!(out, "e{exp}");
    }
    out
}

/// The parameters a sweep axis may range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisParam {
    P,
    EtaA,
    K,
}

impl AxisParam {
    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::P => "p",
            AxisParam::EtaA => "eta_a",
            AxisParam::K => "k",
        }
    }

    fn domain(&self) -> (f64, f64) {
        match self {
            AxisParam::P | AxisParam::K => (0.0, 1.0),
            AxisParam::EtaA => (0.0, std::f64::consts::FRAC_PI_2),
        }
    }
}

impl FromStr for AxisParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(AxisParam::P),
            "eta-a" | "eta_a" | "eta" => Ok(AxisParam::EtaA),
            "k" => Ok(AxisParam::K),
            _ => Err(Error::Domain(format!(
                "unknown axis parameter '{s}' (expected p, eta-a or k)"
            ))),
        }
    }
}

/// One varying axis: `count` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: AxisParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Domain(format!(
                "axis {} needs at least 2 points, got {}",
                self.param.name(),
                self.count
            )));
        }
        let (lo, hi) = self.param.domain();
        if !(self.start <= self.stop && self.start >= lo && self.stop <= hi) {
            return Err(Error::Domain(format!(
                "axis {} range [{}, {}] outside [{lo}, {hi}]",
                self.param.name(),
                self.start,
                self.stop
            )));
        }
        Ok(())
    }

    fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

/// A full sweep: one or two axes, fixed values for whatever does not vary,
/// a region list and a noise setting.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    /// Fixed mixing weight when `p` is not an axis.
    pub p: f64,
    /// Fixed angle for observer A when `eta_a` is not an axis.
    pub eta_a: f64,
    /// Observer B's angle, never swept.
    pub eta_b: f64,
    /// Fixed decay probability when `k` is not an axis.
    pub k: f64,
    pub regions: Vec<Region>,
    pub noise: Option<ChannelKind>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            axes: Vec::new(),
            p: 0.3,
            eta_a: 0.0,
            eta_b: std::f64::consts::FRAC_PI_6,
            k: 0.0,
            regions: Region::ALL.to_vec(),
            noise: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Domain(format!(
                "a sweep takes 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(Error::Domain(format!(
                "axis parameter {} repeated",
                self.axes[0].param.name()
            )));
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        if self.regions.is_empty() {
            return Err(Error::Domain("no regions selected".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Domain(format!(
                "fixed p = {} outside [0, 1]",
                self.p
            )));
        }
        if !(0.0..=1.0).contains(&self.k) {
            return Err(Error::Domain(format!(
                "fixed k = {} outside [0, 1]",
                self.k
            )));
        }
        HawkingParam::from_angle(self.eta_a)?;
        HawkingParam::from_angle(self.eta_b)?;
        Ok(())
    }

    fn point(&self, axis_values: &[f64]) -> (f64, f64, f64) {
        let (mut p, mut eta_a, mut k) = (self.p, self.eta_a, self.k);
        for (axis, &v) in self.axes.iter().zip(axis_values) {
            match axis.param {
                AxisParam::P => p = v,
                AxisParam::EtaA => eta_a = v,
                AxisParam::K => k = v,
            }
        }
        (p, eta_a, k)
    }
}

fn scenario_at(
    region: Region,
    noise: Option<ChannelKind>,
    p: f64,
    eta_a: f64,
    eta_b: f64,
    k: f64,
) -> Result<Scenario> {
    let channel = match noise {
        Some(kind) => Some(ChannelSpec::new(kind, k)?),
        None => None,
    };
    Scenario::new(
        region,
        p,
        HawkingParam::from_angle(eta_a)?,
        HawkingParam::from_angle(eta_b)?,
        channel,
    )
}

/// Runs the sweep and writes CSV rows in row-major axis order: header row
/// first, then one row per grid point with the axis values followed by
/// `capacity_pipeline`, `capacity_analytic` and `residual` per region.
pub fn run_sweep<W: Write>(spec: &SweepSpec, out: &mut W) -> Result<()> {
    spec.validate()?;

    let mut header = Vec::new();
    for axis in &spec.axes {
        header.push(axis.param.name().to_string());
    }
    for region in &spec.regions {
        header.push(format!("capacity_pipeline_{region}"));
        header.push(format!("capacity_analytic_{region}"));
        header.push(format!("residual_{region}"));
    }
    writeln!(out, "{}", header.join(","))?;

    let first = spec.axes[0].values();
    let second: Vec<f64> = spec.axes.get(1).map(|a| a.values()).unwrap_or_default();

    let emit = |values: &[f64], out: &mut W| -> Result<()> {
        let (p, eta_a, k) = spec.point(values);
        let mut fields: Vec<String> = values.iter().map(|&v| fmt_sig(v)).collect();
        for &region in &spec.regions {
            let scenario = scenario_at(region, spec.noise, p, eta_a, spec.eta_b, k)?;
            let record = evaluate(&scenario)?;
            let analytic = analytic_capacity_for(&scenario);
            fields.push(fmt_sig(record.capacity));
            fields.push(fmt_sig(analytic));
            fields.push(fmt_sig((record.capacity - analytic).abs()));
        }
        writeln!(out, "{}", fields.join(","))?;
        Ok(())
    };

    for &a in &first {
        if second.is_empty() {
            emit(&[a], out)?;
        } else {
            for &b in &second {
                emit(&[a, b], out)?;
            }
        }
    }
    Ok(())
}

/// The figure-reproduction datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Eigenvalue surfaces over (p, eta_a), all four regions, noiseless.
    Fig1,
    /// Capacity surfaces over (p, eta_a), noiseless.
    Fig2,
    /// Capacity surfaces over (k, eta_a), phase flip, p = 0.3.
    Fig4,
    /// Capacity surfaces over (k, eta_a), bit flip, p = 0.3.
    Fig5,
    /// Capacity surfaces over (k, eta_a), depolarizing, p = 0.3.
    Fig6,
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            _ => Err(Error::Domain(format!(
                "unknown figure id '{s}' (expected fig1, fig2, fig4, fig5 or fig6)"
            ))),
        }
    }
}

impl std::fmt::Display for FigureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        };
        f.write_str(s)
    }
}

/// Grid side length of the figure datasets.
pub const FIGURE_GRID: usize = 101;

/// Regions shown in the capacity figures.
const CAPACITY_FIGURE_REGIONS: [Region; 3] = [Region::A1B1, Region::A2B1, Region::A2B2];

/// Writes the datasets behind one figure into `out_dir` (one CSV per
/// region) and returns the paths. Grids are 101x101 with
/// `eta_b = pi/6`; noisy figures fix `p = 0.3`.
pub fn write_figure(fig: FigureId, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let eta_b = std::f64::consts::FRAC_PI_6;
    let eta_axis = linspace(0.0, std::f64::consts::FRAC_PI_2, FIGURE_GRID);
    let unit_axis = linspace(0.0, 1.0, FIGURE_GRID);
    let mut written = Vec::new();

    let noise = match fig {
        FigureId::Fig1 | FigureId::Fig2 => None,
        FigureId::Fig4 => Some(ChannelKind::PhaseFlip),
        FigureId::Fig5 => Some(ChannelKind::BitFlip),
        FigureId::Fig6 => Some(ChannelKind::Depolarizing),
    };

    let regions: &[Region] = match fig {
        FigureId::Fig1 => &Region::ALL,
        _ => &CAPACITY_FIGURE_REGIONS,
    };

    for &region in regions {
        let path = out_dir.join(format!("{fig}_{region}.csv"));
        let file = fs::File::create(&path)?;
        let mut w = std::io::BufWriter::new(file);

        match fig {
            FigureId::Fig1 => {
                writeln!(
                    w,
                    "# {fig} region={region} noiseless eta_b=pi/6 grid={g}x{g} p in [0,1] eta_a in [0,pi/2]",
                    g = FIGURE_GRID
                )?;
                writeln!(w, "p,eta_a,lambda0,lambda1,lambda2,lambda3")?;
                for &p in &unit_axis {
                    for &eta_a in &eta_axis {
                        let s = scenario_at(region, None, p, eta_a, eta_b, 0.0)?;
                        let record = evaluate(&s)?;
                        let l = record.spectrum.values();
                        writeln!(
                            w,
                            "{},{},{},{},{},{}",
                            fmt_sig(p),
                            fmt_sig(eta_a),
                            fmt_sig(l[0]),
                            fmt_sig(l[1]),
                            fmt_sig(l[2]),
                            fmt_sig(l[3])
                        )?;
                    }
                }
            }
            FigureId::Fig2 => {
                writeln!(
                    w,
                    "# {fig} region={region} noiseless eta_b=pi/6 grid={g}x{g} p in [0,1] eta_a in [0,pi/2]",
                    g = FIGURE_GRID
                )?;
                writeln!(w, "p,eta_a,capacity_pipeline,capacity_analytic,residual")?;
                for &p in &unit_axis {
                    for &eta_a in &eta_axis {
                        let s = scenario_at(region, None, p, eta_a, eta_b, 0.0)?;
                        let record = evaluate(&s)?;
                        let analytic = analytic_capacity_for(&s);
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            fmt_sig(p),
                            fmt_sig(eta_a),
                            fmt_sig(record.capacity),
                            fmt_sig(analytic),
                            fmt_sig((record.capacity - analytic).abs())
                        )?;
                    }
                }
            }
            _ => {
                let kind = noise.expect("noisy figure");
                writeln!(
                    w,
                    "# {fig} region={region} noise={kind} p=0.3 eta_b=pi/6 grid={g}x{g} k in [0,1] eta_a in [0,pi/2]",
                    g = FIGURE_GRID
                )?;
                writeln!(w, "k,eta_a,capacity_pipeline,capacity_analytic,residual")?;
                for &k in &unit_axis {
                    for &eta_a in &eta_axis {
                        let s = scenario_at(region, noise, 0.3, eta_a, eta_b, k)?;
                        let record = evaluate(&s)?;
                        let analytic = analytic_capacity_for(&s);
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            fmt_sig(k),
                            fmt_sig(eta_a),
                            fmt_sig(record.capacity),
                            fmt_sig(analytic),
                            fmt_sig((record.capacity - analytic).abs())
                        )?;
                    }
                }
            }
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}
