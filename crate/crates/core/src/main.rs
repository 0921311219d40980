//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O
//! error. Angles are radians by default and accept a `deg` suffix.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use qbcap::analytic::analytic_capacity_for;
use qbcap::battery::evaluate;
use qbcap::channels::{ChannelKind, ChannelSpec};
use qbcap::error::Error;
use qbcap::linalg::POSITIVITY_SLACK;
use qbcap::relativistic::{HawkingParam, Region, Scenario};
use qbcap::sweep::{fmt_sig, run_sweep, write_figure, Axis, AxisParam, FigureId, SweepSpec};
use qbcap::verify::run_verify;

#[derive(Parser)]
#[command(
    name = "qbcap",
    version,
    about = "Battery capacity of two-qubit isotropic states under horizon mode mixing and local noise",
    after_help = "Angles are radians unless suffixed with 'deg' (e.g. --eta-a 30deg)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NoiseArg {
    None,
    Pf,
    Bf,
    Dep,
}

impl NoiseArg {
    fn kind(self) -> Option<ChannelKind> {
        match self {
            NoiseArg::None => None,
            NoiseArg::Pf => Some(ChannelKind::PhaseFlip),
            NoiseArg::Bf => Some(ChannelKind::BitFlip),
            NoiseArg::Dep => Some(ChannelKind::Depolarizing),
        }
    }
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (value, degrees) = match s.strip_suffix("deg") {
        Some(v) => (v.trim_end(), true),
        None => (s, false),
    };
    let x: f64 = value.parse().map_err(|_| format!("not a number: '{s}'"))?;
    Ok(if degrees { x.to_radians() } else { x })
}

fn parse_region(s: &str) -> Result<Region, String> {
    Region::from_str(s).map_err(|e| e.to_string())
}

/// Comma-separated region list, or `all`. Wrapped so clap treats the list
/// as one value.
#[derive(Clone, Debug)]
struct RegionList(Vec<Region>);

fn parse_regions(s: &str) -> Result<RegionList, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(RegionList(Region::ALL.to_vec()));
    }
    s.split(',')
        .map(|part| parse_region(part.trim()))
        .collect::<Result<_, _>>()
        .map(RegionList)
}

/// Axis syntax: `name=start:stop:count`, e.g. `eta-a=0:1.5708:51`.
fn parse_axis(s: &str) -> Result<Axis, String> {
    let (name, range) = s
        .split_once('=')
        .ok_or_else(|| format!("axis '{s}' is not of the form name=start:stop:count"))?;
    let param = AxisParam::from_str(name.trim()).map_err(|e| e.to_string())?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis range '{range}' is not start:stop:count"));
    }
    let bound = |v: &str| -> Result<f64, String> {
        if param == AxisParam::EtaA {
            parse_angle(v)
        } else {
            v.trim().parse().map_err(|_| format!("not a number: '{v}'"))
        }
    };
    Ok(Axis {
        param,
        start: bound(parts[0])?,
        stop: bound(parts[1])?,
        count: parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("not a point count: '{}'", parts[2]))?,
    })
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    FigureId::from_str(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point and print both capacity routes.
    Capacity {
        #[arg(long, default_value = "A1B1", value_parser = parse_region)]
        region: Region,
        #[arg(long, value_enum, default_value_t = NoiseArg::None)]
        noise: NoiseArg,
        /// Isotropic mixing weight in [0, 1].
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Observer A's mixing angle.
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        eta_a: f64,
        /// Observer B's mixing angle.
        #[arg(long, default_value = "0.5235987755982988", value_parser = parse_angle)]
        eta_b: f64,
        /// Channel decay probability in [0, 1]; ignored for --noise none.
        #[arg(long, default_value_t = 0.0)]
        k: f64,
    },
    /// Sweep one or two parameters and write a CSV table.
    Sweep {
        /// Varying axis as name=start:stop:count (repeat for a 2-D grid).
        #[arg(long = "axis", value_parser = parse_axis, num_args = 1, action = clap::ArgAction::Append)]
        axes: Vec<Axis>,
        /// Fixed mixing weight when p is not an axis.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Fixed angle for observer A when eta-a is not an axis.
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        eta_a: f64,
        #[arg(long, default_value = "0.5235987755982988", value_parser = parse_angle)]
        eta_b: f64,
        /// Fixed decay probability when k is not an axis.
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        /// Comma-separated region list, or 'all'.
        #[arg(long, default_value = "all", value_parser = parse_regions)]
        regions: RegionList,
        #[arg(long, value_enum, default_value_t = NoiseArg::None)]
        noise: NoiseArg,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check closed forms against the matrix pipeline on a grid.
    Verify {
        /// Points per axis of the (p, eta_a, k) cube.
        #[arg(long, default_value_t = 25)]
        density: usize,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit the CSV datasets behind the reference figures.
    Figures {
        /// One of fig1, fig2, fig4, fig5, fig6.
        #[arg(value_parser = parse_figure)]
        id: FigureId,
        /// Output directory (created if missing).
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Capacity {
            region,
            noise,
            p,
            eta_a,
            eta_b,
            k,
        } => {
            let eta_a = HawkingParam::from_angle(eta_a)?;
            let eta_b = HawkingParam::from_angle(eta_b)?;
            let channel = match noise.kind() {
                Some(kind) => Some(ChannelSpec::new(kind, k)?),
                None => None,
            };
            let scenario = Scenario::new(region, p, eta_a, eta_b, channel)?;
            let record = evaluate(&scenario)?;
            let analytic = analytic_capacity_for(&scenario);

            let range_note = |param: &HawkingParam| {
                if param.beyond_physical_range() {
                    "  [beyond physical Hawking range, extrapolated]"
                } else {
                    ""
                }
            };
            println!("region       {region}");
            match noise.kind() {
                Some(kind) => println!("noise        {kind} (k = {})", fmt_sig(k)),
                None => println!("noise        none"),
            }
            println!("p            {}", fmt_sig(p));
            println!(
                "eta_a        {}{}",
                fmt_sig(eta_a.eta()),
                range_note(&eta_a)
            );
            println!(
                "eta_b        {}{}",
                fmt_sig(eta_b.eta()),
                range_note(&eta_b)
            );
            let eigs: Vec<String> = record
                .spectrum
                .clamped(POSITIVITY_SLACK)
                .iter()
                .map(|&v| fmt_sig(v))
                .collect();
            println!("eigenvalues  {}", eigs.join(", "));
            println!(
                "capacity     {}  ({})",
                fmt_sig(record.capacity),
                record.path
            );
            println!("analytic     {}", fmt_sig(analytic));
            println!("residual     {:.3e}", record.residual.unwrap_or(0.0));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            axes,
            p,
            eta_a,
            eta_b,
            k,
            regions,
            noise,
            out,
        } => {
            let spec = SweepSpec {
                axes,
                p,
                eta_a,
                eta_b,
                k,
                regions: regions.0,
                noise: noise.kind(),
            };
            spec.validate()?;
            let rows: usize = spec.axes.iter().map(|a| a.count).product();
            let file = fs::File::create(&out)?;
            let mut writer = std::io::BufWriter::new(file);
            run_sweep(&spec, &mut writer)?;
            println!("wrote {} ({} data rows)", out.display(), rows);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { density, json } => {
            let report = run_verify(density)?;
            print!("{}", report.render_text());
            if let Some(path) = json {
                let encoded = serde_json::to_string_pretty(&report)
                    .expect("report serialization cannot fail");
                fs::write(&path, encoded)?;
                println!("wrote {}", path.display());
            }
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Figures { id, out_dir } => {
            let written = write_figure(id, &out_dir)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
