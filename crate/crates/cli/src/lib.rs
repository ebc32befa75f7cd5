//! Command-line workbench over the `hitprob` library.
//!
//! [`run`] parses arguments, validates them, runs one job and returns the exit
//! status with the rendered output, so the binary and the tests share one path.

mod input;
mod render;
mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hitprob::certificate::CertificateCorpus;
use hitprob::criteria::{singer_test, walker_wood_test};
use hitprob::genset::{check_compatible, CompatibleSet};
use hitprob::quotient::Engine;
use hitprob::weight::{decomposition, minimal_spike, mu};
use hitprob::{Error, WeightVector};
use serde_json::json;

pub use render::Rendered;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_ARGS: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_MAX_BYTES: u64 = 4 << 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hitprob", version, about = "Hit problem workbench over F2[x1..xk]")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Storage budget for one elimination, e.g. 4G or 500M.
    #[arg(long, value_parser = input::parse_bytes, global = true)]
    pub max_bytes: Option<u64>,

    /// Snapshot directory; defaults to $HITPROB_CACHE or ./.hitprob-cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Do not read or write snapshots.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible monomials of a degree, optionally of one weight vector.
    Basis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: u32,
        /// Comma-separated weight vector.
        #[arg(long, value_parser = input::parse_weight)]
        weight: Option<WeightVector>,
        /// Only monomials with every variable present.
        #[arg(long)]
        positive: bool,
    },
    /// Dimension of the quotient, split into zero and positive parts.
    Dim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_parser = input::parse_weight)]
        weight: Option<WeightVector>,
    },
    /// Whether a polynomial is hit. Terms are separated by `+` and written
    /// either as exponent lists `1,2,0` or as `x1^2 x3`.
    Hit {
        poly: String,
        /// Number of variables; inferred from the terms when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// The induced Kameko map from degree `degree` to `(degree - k) / 2`.
    Kameko {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: u32,
        /// List a kernel basis.
        #[arg(long)]
        kernel: bool,
    },
    /// Verify relation certificates from a file or a directory of files.
    VerifyCert {
        /// Defaults to the corpus built into the library.
        path: Option<PathBuf>,
        /// Also compare with elimination for targets up to this degree.
        #[arg(long)]
        cross_check: Option<u32>,
    },
    /// Compatibility of the admissible pair sequences with `(k-2)|^d0`.
    Compat {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d0: usize,
        /// JSON file with a set `{k, d0, pairs}`; defaults to the admissible one.
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Minimal spike of a degree.
    Spike {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// Fewest terms `2^u - 1` summing to `n`, with the decomposition.
    Mu { n: u32 },
    /// Recompute a published value and compare.
    Reproduce {
        #[arg(value_parser = reproduce::parse_id)]
        id: reproduce::Target,
    },
}

/// Outcome of one job.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: diagnostic("bad_arguments", &text) }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let engine = engine_for(cli);
    match dispatch(&cli.command, &engine) {
        Ok((failure, out)) => Outcome {
            code: if failure.is_none() { EXIT_OK } else { EXIT_VERIFY_FAILED },
            stdout: out.render(cli.format),
            stderr: failure.map(|f| diagnostic("verification_failed", &f)).unwrap_or_default(),
        },
        Err(e) => {
            let (code, kind) = match e {
                Error::BudgetExceeded { .. } => (EXIT_BUDGET, "budget_exceeded"),
                Error::Certificate { .. } => (EXIT_VERIFY_FAILED, "verification_failed"),
                _ => (EXIT_BAD_ARGS, "bad_arguments"),
            };
            Outcome { code, stdout: String::new(), stderr: diagnostic(kind, &e.to_string()) }
        }
    }
}

fn diagnostic(kind: &str, message: &str) -> String {
    format!("{}\n", json!({ "status": kind, "message": message.trim_end() }))
}

fn engine_for(cli: &Cli) -> Engine {
    let engine = Engine::new().with_budget(cli.max_bytes.unwrap_or(DEFAULT_MAX_BYTES));
    if cli.no_cache {
        return engine;
    }
    engine.with_cache(cli.cache_dir.clone().unwrap_or_else(hitprob::cache::default_dir))
}

fn check_weight(degree: u32, w: &Option<WeightVector>) -> hitprob::Result<()> {
    match w {
        Some(w) if w.degree() != degree => {
            Err(Error::InvalidArgument(format!("weight {w} has degree {}, not {degree}", w.degree())))
        }
        _ => Ok(()),
    }
}

/// Result of a job: a failure description when a verification did not pass.
type Job = (Option<String>, Rendered);

fn passed(ok: bool, failure: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(failure())
    }
}

fn dispatch(cmd: &Command, engine: &Engine) -> hitprob::Result<Job> {
    match cmd {
        Command::Basis { k, degree, weight, positive } => {
            check_weight(*degree, weight)?;
            let b = match weight {
                Some(w) => engine.weight_basis(*k, w)?,
                None => engine.admissible_basis(*k, *degree)?,
            };
            let mut export = b.export();
            if *positive {
                export.monomials = b.positive();
            }
            Ok((None, Rendered::basis(export)))
        }
        Command::Dim { k, degree, weight } => {
            check_weight(*degree, weight)?;
            let b = match weight {
                Some(w) => engine.weight_basis(*k, w)?,
                None => engine.admissible_basis(*k, *degree)?,
            };
            let v = json!({
                "k": k,
                "degree": degree,
                "omega": weight,
                "dim": b.len(),
                "zero_part": b.zero_part().len(),
                "positive": b.positive().len(),
            });
            Ok((None, Rendered::value(v)))
        }
        Command::Hit { poly, k } => {
            let f = input::parse_polynomial(poly, *k)?;
            let criteria: Vec<_> = f
                .terms()
                .map(|x| {
                    let verdict = [singer_test(x), walker_wood_test(x)].into_iter().flatten().find(|v| v.is_hit());
                    json!({ "monomial": x.to_string(), "criterion": verdict.map(|v| v.reason) })
                })
                .collect();
            let hit = engine.is_hit(&f)?;
            Ok((
                None,
                Rendered::value(json!({ "polynomial": f.to_string(), "k": f.k(), "hit": hit, "terms": criteria })),
            ))
        }
        Command::Kameko { k, degree, kernel } => {
            let m = engine.kameko_matrix(*k, *degree)?;
            let mut v = serde_json::to_value(m.report())?;
            if *kernel {
                let basis: Vec<Vec<String>> =
                    m.kernel_basis().iter().map(|p| p.iter().map(ToString::to_string).collect()).collect();
                v["kernel_basis"] = json!(basis);
            }
            Ok((None, Rendered::value(v)))
        }
        Command::VerifyCert { path, cross_check } => {
            let corpus = match path {
                Some(p) => CertificateCorpus::load(p)?,
                None => CertificateCorpus::builtin(),
            };
            let report = corpus.verify();
            let mut bad: Vec<String> = report.entries.iter().filter(|e| !e.verified).map(|e| e.name.clone()).collect();
            let mut v = serde_json::to_value(&report)?;
            if let Some(limit) = cross_check {
                let mut rows = Vec::new();
                for c in corpus.entries.iter().filter(|c| c.degree() <= *limit) {
                    let agrees = c.cross_check(engine)?;
                    if !agrees {
                        bad.push(format!("{} (cross-check)", c.name));
                    }
                    rows.push(json!({ "name": c.name, "agrees": agrees }));
                }
                v["cross_check"] = json!(rows);
            }
            Ok((passed(bad.is_empty(), || format!("not verified: {}", bad.join(", "))), Rendered::certificates(v)))
        }
        Command::Compat { k, d0, set } => {
            let set = match set {
                Some(p) => {
                    let s: CompatibleSet = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                    if s.k != *k || s.d0 != *d0 {
                        return Err(Error::InvalidArgument(format!("set file is for k = {}, d0 = {}", s.k, s.d0)));
                    }
                    CompatibleSet::new(s.k, s.d0, s.pairs)?
                }
                None => CompatibleSet::from_admissible(engine, *k, *d0)?,
            };
            let r = check_compatible(engine, &set)?;
            let failure = passed(r.compatible, || {
                format!(
                    "not compatible: {} shape violations, {} failing pairs",
                    r.shape_violations.len(),
                    r.failing.len()
                )
            });
            Ok((failure, Rendered::value(serde_json::to_value(&r)?)))
        }
        Command::Spike { n, k } => {
            let x = minimal_spike(*n, *k)?;
            Ok((None, Rendered::value(json!({ "n": n, "k": k, "spike": x.to_string(), "exponents": x.exponents() }))))
        }
        Command::Mu { n } => {
            let d = decomposition(*n)?;
            Ok((None, Rendered::value(json!({ "mu": mu(*n)?, "decomposition": d.d }))))
        }
        Command::Reproduce { id } => {
            let r = reproduce::run(*id, engine)?;
            let failure = passed(r.ok, || format!("{}: computed value differs from the expected one", r.id));
            Ok((failure, Rendered::value(serde_json::to_value(&r)?)))
        }
    }
}
