//! Command-line interface to the discrete elastic energy toolkit.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use elastica::curves::CurveSpec;
use elastica::lab::{
    emit_report, fuzz_langle, run_convergence, run_corner_divergence, ExperimentConfig,
    ExperimentReport, ReportFormat,
};
use elastica::smoothing::{generalized_rotation, p_rotation, Energy};
use elastica::{
    inscribe_equilateral_exact, inscribe_equilateral_greedy, inscribe_uniform, make_curve,
    oracles, Error, Polygonal, Scheme,
};

#[derive(Parser)]
#[command(
    name = "elastica",
    about = "Discrete elastic p-energy of polygonal curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// p-rotation (or generalized rotation) of a polygonal JSON file.
    Krot {
        /// Polygonal JSON: {"dimension": d, "closed": bool, "vertices": [[...], ...]}
        polygonal: PathBuf,
        /// Energy exponent, >= 1.
        #[arg(long)]
        p: f64,
        /// Generalized-density parameter; 0 selects the plain p-rotation.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Inscribe a polygonal in a curve described by a curve-spec JSON file.
    Inscribe {
        /// Curve spec JSON: {"kind": "...", "params": {...}}
        curve: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Segment count (uniform and equilateral_exact schemes).
        #[arg(long)]
        n: Option<usize>,
        /// Chord length (equilateral_greedy scheme).
        #[arg(long)]
        chord: Option<f64>,
        /// Write the polygonal JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the parameter sidecar JSON here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Convergence study from an experiment config JSON file.
    Converge {
        config: PathBuf,
    },
    /// Corner-divergence study from an experiment config JSON file.
    Corner {
        config: PathBuf,
    },
    /// Closed-form oracle values as JSON.
    Oracle {
        /// One of: fp, pmin1, pmin2_lambda, rhombus_kp, ngon_kp, corner_rate.
        name: String,
        /// Repeated key=value pairs, e.g. --params theta=1.0 --params p=2.
        #[arg(long = "params", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Fuzz the chord-direction angle estimate with a seeded generator.
    FuzzLangle {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum SchemeArg {
    Uniform,
    EquilateralGreedy,
    EquilateralExact,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Uniform => Scheme::Uniform,
            SchemeArg::EquilateralGreedy => Scheme::EquilateralGreedy,
            SchemeArg::EquilateralExact => Scheme::EquilateralExact,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Krot { polygonal, p, alpha } => {
            let text = std::fs::read_to_string(&polygonal)?;
            let poly = Polygonal::from_json(&text)?;
            let energy = if alpha == 0.0 {
                p_rotation(&poly, p)?
            } else {
                generalized_rotation(&poly, p, alpha)?
            };
            let value = match energy {
                Energy::Finite(v) => json!(v),
                Energy::Infinite => json!("inf"),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "p": p,
                    "alpha": alpha,
                    "k_value": value,
                }))
                .expect("json")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Inscribe {
            curve,
            scheme,
            n,
            chord,
            out,
            sidecar,
        } => {
            let text = std::fs::read_to_string(&curve)?;
            let spec: CurveSpec = serde_json::from_str(&text)?;
            let c = make_curve(&spec)?;
            let insc = match Scheme::from(scheme) {
                Scheme::Uniform => {
                    let n = n.ok_or_else(|| {
                        Error::InvalidArgument("--n is required for the uniform scheme".into())
                    })?;
                    inscribe_uniform(&c, n)?
                }
                Scheme::EquilateralExact => {
                    let n = n.ok_or_else(|| {
                        Error::InvalidArgument(
                            "--n is required for the equilateral_exact scheme".into(),
                        )
                    })?;
                    inscribe_equilateral_exact(&c, n)?
                }
                Scheme::EquilateralGreedy => {
                    let chord = chord.ok_or_else(|| {
                        Error::InvalidArgument(
                            "--chord is required for the equilateral_greedy scheme".into(),
                        )
                    })?;
                    inscribe_equilateral_greedy(&c, chord)?
                }
            };
            let poly_json = insc.polygonal.to_json();
            match out {
                Some(path) => std::fs::write(path, &poly_json)?,
                None => println!("{poly_json}"),
            }
            if let Some(path) = sidecar {
                std::fs::write(path, insc.sidecar_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge { config } => {
            let cfg = ExperimentConfig::from_json(&std::fs::read_to_string(&config)?)?;
            let report = run_convergence(&cfg)?;
            finish_report(&cfg, &report)
        }
        Command::Corner { config } => {
            let cfg = ExperimentConfig::from_json(&std::fs::read_to_string(&config)?)?;
            let report = run_corner_divergence(&cfg)?;
            finish_report(&cfg, &report)
        }
        Command::Oracle { name, params } => {
            let get = ParamMap::parse(&params)?;
            let doc = match name.as_str() {
                "fp" => {
                    let value = oracles::fp(get.req("alpha")?, get.req("p")?)?;
                    json!({"name": name, "value": value})
                }
                "pmin1" => {
                    let m = oracles::pmin1(get.req("ell")?, get.req("theta")?, get.req("p")?)?;
                    json!({
                        "name": name,
                        "energy": m.energy,
                        "radius": m.radius,
                        "length_lower": m.length_bounds.0,
                        "length_upper": m.length_bounds.1,
                    })
                }
                "pmin2_lambda" => {
                    let sol = oracles::pmin2_lambda(get.req("theta")?, get.req("p")?)?;
                    json!({
                        "name": name,
                        "lambda_star": sol.lambda_star,
                        "energy_at_lambda_star": sol.energy_at(sol.lambda_star),
                        "midpoint_energy": sol.midpoint_energy(),
                    })
                }
                "rhombus_kp" => {
                    let value = oracles::rhombus_kp(get.req("theta")?, get.req("p")?)?;
                    json!({"name": name, "value": value})
                }
                "ngon_kp" => {
                    let n = get.req("n")? as usize;
                    let value = oracles::ngon_kp(n, get.req("ell")?, get.req("p")?)?;
                    json!({"name": name, "value": value})
                }
                "corner_rate" => {
                    let value =
                        oracles::corner_rate(get.req("theta")?, get.req("p")?, get.req("eps")?)?;
                    json!({"name": name, "value": value})
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown oracle {other:?}; expected one of fp, pmin1, pmin2_lambda, rhombus_kp, ngon_kp, corner_rate"
                    )))
                }
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            Ok(ExitCode::SUCCESS)
        }
        Command::FuzzLangle { seed, trials, dim } => {
            let summary = fuzz_langle(seed, trials, dim)?;
            println!("{}", summary.to_json());
            if summary.violations > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn finish_report(cfg: &ExperimentConfig, report: &ExperimentReport) -> Result<ExitCode, Error> {
    match &cfg.output {
        Some(path) => {
            let format = match path.extension().and_then(|e| e.to_str()) {
                Some("json") => ReportFormat::Json,
                _ => ReportFormat::Csv,
            };
            emit_report(report, format, path)?;
            eprintln!(
                "wrote {} ({} rows, rate estimate {:.6})",
                path.display(),
                report.rows.len(),
                report.rate_estimate
            );
        }
        None => print!("{}", report.to_csv()),
    }
    if !report.modulus_decreasing {
        eprintln!("warning: modulus column is not strictly decreasing");
    }
    Ok(ExitCode::SUCCESS)
}

struct ParamMap(Vec<(String, f64)>);

impl ParamMap {
    fn parse(items: &[String]) -> Result<Self, Error> {
        let mut out = Vec::new();
        for item in items {
            for piece in item.split(',').filter(|s| !s.trim().is_empty()) {
                let (k, v) = piece.split_once('=').ok_or_else(|| {
                    Error::InvalidArgument(format!("expected key=value, got {piece:?}"))
                })?;
                let value: f64 = v.trim().parse().map_err(|e| {
                    Error::InvalidArgument(format!("bad numeric value {v:?}: {e}"))
                })?;
                out.push((k.trim().to_string(), value));
            }
        }
        Ok(ParamMap(out))
    }

    fn req(&self, key: &str) -> Result<f64, Error> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {key:?}")))
    }
}
