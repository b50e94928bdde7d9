//! Command-line arguments and dispatch.
//!
//! Every option can also be given through an environment variable; an
//! explicit flag wins over the environment, which wins over the default.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::parser::ValueSource;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::{ConfigError, Params, SuiteConfig};
use crate::export::{classical_json, dyn_twist_json, gauge_check_values, rmatrix_json, to_pretty, twist_json};
use crate::suites::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mirabolic", version, about = "Exact checks of Kirillov-projector twists and dynamical R-matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Rank N of gl_N (2..=4)
    #[arg(long, env = "MIRABOLIC_N")]
    pub n: Option<u8>,
    /// Spectral parameters: `sym` or a comma-separated rational list
    #[arg(long, env = "MIRABOLIC_U")]
    pub u: Option<String>,
    /// Dynamical parameters: `sym` or a comma-separated rational list
    #[arg(long, env = "MIRABOLIC_LAMBDA")]
    pub lambda: Option<String>,
    /// Keep u and lambda symbolic; overrides MIRABOLIC_U and MIRABOLIC_LAMBDA
    #[arg(long)]
    pub symbolic: bool,
    /// Degree bound of spanning sets (Borel degree, Verma depth, minor size or word length)
    #[arg(long, env = "MIRABOLIC_DEGREE")]
    pub degree: Option<usize>,
    /// Worker threads
    #[arg(long, env = "MIRABOLIC_JOBS")]
    pub jobs: Option<usize>,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for negative controls and random samples
    #[arg(long, env = "MIRABOLIC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock milliseconds per case (makes reports non-reproducible)
    #[arg(long, env = "MIRABOLIC_TIMINGS")]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the twist F_VW(u)
    Twist {
        #[command(flatten)]
        common: Common,
        /// `vector`, `dual`, `trivial`, or a pair `V,W`
        #[arg(long, default_value = "vector")]
        rep: String,
    },
    /// Export the R-matrix R_VW(u)
    Rmatrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "vector")]
        rep: String,
    },
    /// Export the classical r-matrix as a bivector
    Classical {
        #[command(flatten)]
        common: Common,
    },
    /// Export the dynamical twist J_VW(lambda)
    DynTwist {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "vector")]
        rep: String,
    },
    /// Check a gauge transformation R2 = (S⊗S) R1 (S⊗S)^{-1} with weight shifts
    GaugeCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "vector")]
        rep: String,
        /// Gauge matrix S_V (and S_W unless --s-w is given)
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        s_w: Option<PathBuf>,
        #[arg(long)]
        r1: PathBuf,
        #[arg(long)]
        r2: PathBuf,
    },
    /// Run a verification suite and print its report
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite name, or `all`
        #[arg(long, env = "MIRABOLIC_SUITE")]
        suite: String,
    },
    /// List the registered suites
    Suites,
}

/// Parses arguments; `--symbolic` conflicts with an explicit `--u` or
/// `--lambda` but silently overrides the environment.
pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let m = Cli::command().try_get_matches_from(args)?;
    if let Some((_, sub)) = m.subcommand() {
        let explicit = |id: &str| sub.try_get_raw(id).ok().flatten().is_some() && sub.value_source(id) == Some(ValueSource::CommandLine);
        if sub.try_get_one::<bool>("symbolic").ok().flatten() == Some(&true) {
            for id in ["u", "lambda"] {
                if explicit(id) {
                    return Err(Cli::command().error(ErrorKind::ArgumentConflict, format!("--symbolic cannot be used with --{id}")));
                }
            }
        }
    }
    Cli::from_arg_matches(&m)
}

impl Common {
    pub fn config(&self) -> Result<SuiteConfig, ConfigError> {
        let parse = |s: &Option<String>| s.as_deref().map(Params::parse).transpose().map(Option::unwrap_or_default);
        let cfg = SuiteConfig {
            n: self.n,
            u: if self.symbolic { Params::Symbolic } else { parse(&self.u)? },
            lambda: if self.symbolic { Params::Symbolic } else { parse(&self.lambda)? },
            degree: self.degree,
            jobs: self.jobs,
            seed: self.seed,
            timings: self.timings,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn rank(&self) -> Result<u8, ConfigError> {
        match self.n {
            Some(n) if (2..=4).contains(&n) => Ok(n),
            Some(n) => Err(ConfigError::BadRank(n)),
            None => Err(ConfigError::Parse("--n".into(), "required for exports".into())),
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut o = std::io::stdout().lock();
                o.write_all(text.as_bytes())?;
                o.flush()?;
                Ok(())
            }
        }
    }
}

fn read_json(p: &PathBuf) -> Result<Value> {
    let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", p.display()))
}

fn common(cmd: &Command) -> Option<&Common> {
    match cmd {
        Command::Twist { common, .. }
        | Command::Rmatrix { common, .. }
        | Command::Classical { common }
        | Command::DynTwist { common, .. }
        | Command::GaugeCheck { common, .. }
        | Command::Verify { common, .. } => Some(common),
        Command::Suites => None,
    }
}

fn exec(cmd: &Command) -> Result<i32> {
    let Some(c) = common(cmd) else {
        for s in SUITES {
            println!("{:<10} {}", s.name, s.about);
        }
        println!("{:<10} every suite above", "all");
        return Ok(EXIT_OK);
    };
    let cfg = c.config()?;
    if let Some(j) = cfg.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let value = match cmd {
        Command::Verify { suite, .. } => {
            let report = run_suite(suite, &cfg)?;
            c.emit(&report.to_json_string())?;
            return Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED });
        }
        Command::GaugeCheck { rep, s, s_w, r1, r2, .. } => {
            let s_w = s_w.as_ref().map(read_json).transpose()?;
            let r = gauge_check_values(c.rank()?, rep, &read_json(s)?, s_w.as_ref(), &read_json(r1)?, &read_json(r2)?)?;
            let v = json!({ "format": 1, "check": r.name, "verdict": if r.holds { "pass" } else { "fail" }, "residual": r.residual });
            c.emit(&to_pretty(&v))?;
            return Ok(if r.holds { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Twist { rep, .. } => twist_json(c.rank()?, rep, &cfg.u)?,
        Command::Rmatrix { rep, .. } => rmatrix_json(c.rank()?, rep, &cfg.u)?,
        Command::Classical { .. } => classical_json(c.rank()?, &cfg.u)?,
        Command::DynTwist { rep, .. } => dyn_twist_json(c.rank()?, rep, &cfg.lambda)?,
        Command::Suites => unreachable!(),
    };
    c.emit(&to_pretty(&value))?;
    Ok(EXIT_OK)
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match exec(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_ERROR
            }
        }
    }
}
