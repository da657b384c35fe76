//! Command-line front end. `run` parses arguments, writes results and returns the exit code.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::distance::DiamondOptions;
use crate::analysis::models::xi;
use crate::error::{PbtError, Result};
use crate::experiments::{ad_sweep, figure, verify_suite, write_sweep_csv, Grid, SweepFamily, VERIFY_TOL};
use crate::format;
use crate::kraus::{choi_to_kraus, protocol_kraus, ProtocolLabel};
use crate::pbt_choi::pbt_choi;
use crate::resource::{make_family, ResourceFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

/// Slack allowed when checking `trace ≤ numeric ≤ upper` on sweep rows.
pub const SANDWICH_SLACK: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "pbt", version, about = "Port-based teleportation channel simulation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for the diamond-norm multi-start search.
    #[arg(long, global = true, default_value_t = DiamondOptions::default().seed)]
    pub seed: u64,

    /// Number of starts for the diamond-norm search.
    #[arg(long, global = true, default_value_t = DiamondOptions::default().restarts)]
    pub restarts: usize,

    /// Step tolerance of the simplex search.
    #[arg(long, global = true, default_value_t = DiamondOptions::default().step_tol)]
    pub step_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depolarising probability of N-port PBT with singlet resources.
    Xi {
        #[arg(long)]
        ports: usize,
    },
    /// Choi matrix of the simulated channel.
    Choi {
        #[arg(long)]
        ports: usize,
        /// bell, ad-choi:P, alternate:A, or a resource file path.
        #[arg(long)]
        resource: String,
    },
    /// Kraus operators of the simulated channel.
    Kraus {
        #[arg(long)]
        ports: usize,
        #[arg(long)]
        resource: String,
    },
    /// The reduced Kraus operators of the protocol map.
    ProtocolKraus {
        #[arg(long)]
        ports: usize,
        /// Print only the operator counts.
        #[arg(long)]
        summary: bool,
    },
    /// Distances to the amplitude-damping channel over a resource parameter grid.
    AdSweep {
        #[arg(long)]
        ports: usize,
        #[arg(long)]
        p0: f64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// start:stop:step.
        #[arg(long, default_value = "0:1:0.01")]
        grid: Grid,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV data behind a figure.
    Figure {
        #[arg(long)]
        id: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Cross-check the pipeline against the dense oracle and the Kraus route.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_ports: usize,
        /// Random symmetrised resources per port count (up to 4 ports).
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Choi,
    Alternate,
}

impl From<FamilyArg> for SweepFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Choi => SweepFamily::Choi,
            FamilyArg::Alternate => SweepFamily::Alternate,
        }
    }
}

impl RunConfig {
    pub fn diamond_options(&self) -> DiamondOptions {
        DiamondOptions { restarts: self.restarts, seed: self.seed, step_tol: self.step_tol }
    }
}

/// `bell`, `ad-choi:P`, `alternate:A`, `file:PATH`, or a bare path.
pub fn parse_resource(spec: &str) -> Result<ResourceFamily> {
    let num = |v: &str| -> Result<f64> {
        v.parse().map_err(|_| PbtError::Domain(format!("bad parameter `{v}` in resource `{spec}`")))
    };
    Ok(match spec.split_once(':') {
        None if spec == "bell" => ResourceFamily::Bell,
        Some(("ad-choi", v)) => ResourceFamily::AdChoi(num(v)?),
        Some(("alternate", v)) => ResourceFamily::Alternate(num(v)?),
        Some(("file", path)) => ResourceFamily::FromFile(path.into()),
        _ => ResourceFamily::FromFile(spec.into()),
    })
}

enum Outcome {
    Ok,
    Invalid(String),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            code
        }
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Invalid(msg)) => {
            let _ = writeln!(err, "validation failed: {msg}");
            EXIT_VALIDATION
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let opts = config.diamond_options();
    match &config.command {
        Command::Xi { ports } => writeln!(out, "{}", format::sig(xi(*ports)?))?,
        Command::Choi { ports, resource } => {
            let choi = pbt_choi(&make_family(&parse_resource(resource)?, *ports)?)?;
            write!(out, "{choi}")?;
        }
        Command::Kraus { ports, resource } => {
            let choi = pbt_choi(&make_family(&parse_resource(resource)?, *ports)?)?;
            for (k, op) in choi_to_kraus(&choi)?.ops().iter().enumerate() {
                writeln!(out, "K{k}")?;
                write!(out, "{}", format::matrix(op))?;
            }
        }
        Command::ProtocolKraus { ports, summary } => {
            let pk = protocol_kraus(*ports)?;
            writeln!(
                out,
                "N={} kernel={} bulk={} total={} unreduced={}",
                pk.n(),
                pk.kernel_count(),
                pk.bulk_count(),
                pk.labels().len(),
                pk.unreduced_count()
            )?;
            if !summary {
                for (label, op) in pk.labels().iter().zip(pk.kraus_set().ops()) {
                    match label {
                        ProtocolLabel::Kernel { m } => writeln!(out, "K2 m={m}")?,
                        ProtocolLabel::Bulk { s, m, alpha } => writeln!(out, "K1 s={s} m={m} alpha={alpha}")?,
                    }
                    write!(out, "{}", format::matrix(op))?;
                }
            }
        }
        Command::AdSweep { ports, p0, family, grid, out: path } => {
            let rows = ad_sweep(*ports, *p0, (*family).into(), grid, &opts)?;
            match path {
                Some(p) => write_sweep_csv(fs::File::create(p)?, &rows)?,
                None => write_sweep_csv(&mut *out, &rows)?,
            }
            if let Some(bad) = rows.iter().find(|r| !r.sandwiched(SANDWICH_SLACK)) {
                return Ok(Outcome::Invalid(format!("bounds violated at param {}", format::sig(bad.param))));
            }
        }
        Command::Figure { id, out: dir, step } => {
            let tables = figure(*id, *step, &opts)?;
            fs::create_dir_all(dir)?;
            let mut bad = None;
            for t in &tables {
                let path = dir.join(&t.file_name);
                fs::write(&path, t.to_csv()?)?;
                writeln!(out, "{}", path.display())?;
                if bad.is_none() && t.sweep_rows().iter().any(|r| !r.sandwiched(SANDWICH_SLACK)) {
                    bad = Some(t.file_name.clone());
                }
            }
            if let Some(name) = bad {
                return Ok(Outcome::Invalid(format!("bounds violated in {name}")));
            }
        }
        Command::Verify { max_ports, random } => {
            let lines = verify_suite(*max_ports, *random, config.seed)?;
            let mut worst: f64 = 0.0;
            for l in &lines {
                writeln!(out, "{l}")?;
                worst = worst.max(l.worst());
            }
            writeln!(out, "max deviation {}", format::sig_digits(worst, 3))?;
            if worst > VERIFY_TOL {
                return Ok(Outcome::Invalid(format!("max deviation {worst:e} exceeds {VERIFY_TOL:e}")));
            }
        }
    }
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_args(std::iter::once("pbt").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn xi_values() {
        assert_eq!(run_str(&["xi", "--ports", "2"]), (0, "0.711324865405\n".into(), String::new()));
        assert_eq!(run_str(&["xi", "--ports", "3"]).1, "0.5\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["xi", "--ports", "1"]).0, EXIT_USAGE);
        let (code, _, err) =
            run_str(&["ad-sweep", "--ports", "4", "--p0", "0.3", "--family", "choi", "--grid", "0:1:-1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn resource_specs() {
        assert_eq!(parse_resource("bell").unwrap(), ResourceFamily::Bell);
        assert_eq!(parse_resource("ad-choi:0.3").unwrap(), ResourceFamily::AdChoi(0.3));
        assert_eq!(parse_resource("alternate:0.9").unwrap(), ResourceFamily::Alternate(0.9));
        assert_eq!(parse_resource("file:x.txt").unwrap(), ResourceFamily::FromFile("x.txt".into()));
        assert_eq!(parse_resource("y.txt").unwrap(), ResourceFamily::FromFile("y.txt".into()));
        assert!(parse_resource("ad-choi:zz").is_err());
    }

    #[test]
    fn choi_and_kraus_print() {
        let (code, out, _) = run_str(&["choi", "--ports", "3", "--resource", "bell"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "0.375  0  0  0.25");
        let (code, out, _) = run_str(&["kraus", "--ports", "2", "--resource", "ad-choi:0.5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("K0\n"));
        let (_, out, _) = run_str(&["protocol-kraus", "--ports", "3", "--summary"]);
        assert_eq!(out.lines().count(), 1);
    }
}
