use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scherk_cli::input::Input;
use scherk_cli::report::AnalysisReport;
use scherk_cli::verify::{surface_checks, sweep_surfaces, Summary, TolProfile};
use scherk_cli::{export, CliError, Result};
use scherk_core::{mesh, ScherkSurface};

/// Scherk-type minimal graphs over Pitot quadrilaterals.
#[derive(Parser)]
#[command(name = "scherk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full JSON analysis report.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Write a triangulated surface as OBJ.
    Mesh {
        #[command(flatten)]
        common: Common,
        /// Number of rings.
        #[arg(long, default_value_t = 40)]
        nr: usize,
        /// Points per ring.
        #[arg(long, default_value_t = 128)]
        ntheta: usize,
        /// Outermost ring radius in the parameter disk.
        #[arg(long, default_value_t = 0.999)]
        rmax: f64,
        /// Height clamp in normalized units.
        #[arg(long, default_value_t = mesh::DEFAULT_H_MAX)]
        hmax: f64,
    },
    /// Run the invariant checks; without input, a seeded 20-case sweep.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Number of sweep cases when no input is given.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Radial height traces toward the boundary poles as CSV; fitted
    /// log-law slopes go to stderr.
    Asymptotics {
        #[command(flatten)]
        common: Common,
        /// Pole 1..=4 (1, e^{ip}, -1, -e^{ip}); all four when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        pole: Option<u8>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON input file, or `-` for stdin.
    input: Option<PathBuf>,
    /// Hyperbolic coordinates `m,s,t` instead of an input file.
    #[arg(long, value_name = "M,S,T", conflicts_with = "input", allow_hyphen_values = true)]
    params: Option<String>,
    /// Absolute tolerance on the Pitot condition.
    #[arg(long)]
    tol_pitot: Option<f64>,
    #[arg(long, value_enum, default_value_t = TolProfile::Default)]
    tol_profile: TolProfile,
    /// Seed for sample points and for the verify sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn input(&self) -> Result<Option<Input>> {
        match (&self.params, &self.input) {
            (Some(triple), _) => Input::from_triple(triple).map(Some),
            (None, Some(path)) => Input::from_path(path).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn required_input(&self) -> Result<Input> {
        self.input()?
            .ok_or_else(|| CliError::Input("expected an input file or --params m,s,t".into()))
    }

    fn surface(&self) -> Result<(Input, ScherkSurface)> {
        let input = self.required_input()?;
        let surface = input.surface(self.tol_pitot)?;
        Ok((input, surface))
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

enum Outcome {
    Ok,
    Failed(Vec<String>),
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze { common } => {
            let (input, sf) = common.surface()?;
            let checks = surface_checks(&sf, common.tol_profile, common.seed);
            let report = AnalysisReport::new(&input, &sf, &checks)?;
            let mut out = common.writer()?;
            out.write_all(report.to_json()?.as_bytes())?;
            out.flush()?;
            Ok(Outcome::Ok)
        }
        Command::Mesh {
            common,
            nr,
            ntheta,
            rmax,
            hmax,
        } => {
            let (_, sf) = common.surface()?;
            let m = mesh::sample_disk(&sf, nr, ntheta, rmax, hmax).map_err(|e| {
                CliError::Input(format!(
                    "{e}: need nr >= 2, ntheta >= 8, 0 < rmax <= {}, hmax > 0",
                    mesh::MAX_RADIUS
                ))
            })?;
            let mut out = common.writer()?;
            export::write_obj(&m, &mut out)?;
            out.flush()?;
            eprintln!(
                "{} vertices, {} faces, {} clamped above, {} clamped below",
                m.vertices.len(),
                m.faces.len(),
                m.metadata.clamped_above,
                m.metadata.clamped_below
            );
            Ok(Outcome::Ok)
        }
        Command::Verify { common, cases } => {
            let surfaces = match common.input()? {
                Some(input) => vec![input.surface(common.tol_pitot)?],
                None => sweep_surfaces(common.seed, cases),
            };
            let per_case: Vec<_> = surfaces
                .iter()
                .enumerate()
                .map(|(i, sf)| surface_checks(sf, common.tol_profile, common.seed.wrapping_add(i as u64)))
                .collect();
            let summary = Summary::merge(&per_case);
            let mut out = common.writer()?;
            out.write_all(summary.table().as_bytes())?;
            out.flush()?;
            let failing = summary.failing();
            Ok(if failing.is_empty() {
                Outcome::Ok
            } else {
                Outcome::Failed(failing.iter().map(|c| c.name.to_string()).collect())
            })
        }
        Command::Asymptotics { common, pole } => {
            let (_, sf) = common.surface()?;
            let poles: Vec<usize> = match pole {
                Some(k) => vec![k.into()],
                None => (1..=4).collect(),
            };
            let radii = mesh::log_radii();
            let slopes = sf.asymptotic_constants().slopes();
            let tol = match common.tol_profile {
                TolProfile::Strict => 0.01,
                TolProfile::Default => 0.1,
            };
            let mut rows = Vec::new();
            let mut failed = Vec::new();
            for k in poles {
                let trace = mesh::radial_trace(&sf, k, &radii)?;
                let fit = mesh::log_slope(&trace);
                let expect = slopes[k - 1];
                let rel = (fit / expect - 1.0).abs();
                eprintln!("pole {k}: fitted slope {fit:.6} expected {expect:.6} relative error {rel:.2e}");
                if !(rel < tol) {
                    failed.push(format!("pole {k} slope"));
                }
                rows.push((k, trace));
            }
            export::write_trace_csv(&rows, common.writer()?)?;
            Ok(if failed.is_empty() {
                Outcome::Ok
            } else {
                Outcome::Failed(failed)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(names)) => {
            eprintln!("failing checks: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
