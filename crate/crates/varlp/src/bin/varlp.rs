//! Command-line front end: classify inclusions between variable-exponent
//! spaces, compute Luxemburg norms and decreasing rearrangements, construct
//! witness sequences, test sequence-space equivalence, and reproduce the
//! built-in worked-example table.
//!
//! Exit status: 0 = decisive verdict (or successfully computed value),
//! 2 = indeterminate, 1 = usage/parse error, 3 = precondition violation.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::path::PathBuf;
use varlp::criteria::{
    classify_left_infty, classify_pair, classify_right_l1, ClassificationReport, InclusionKind,
};
use varlp::error::{Error, Result};
use varlp::fixtures::{construct_witness, run_examples};
use varlp::function::PiecewiseFunction;
use varlp::modular::luxemburg_norm;
use varlp::rearrange::Rearrangement;
use varlp::report::{evidence_csv, render_text};
use varlp::specfile::{apply_env_config, load_exponent, load_function};
use varlp::witness::nakano_equivalent;
use varlp::{expr, Config, ThreeValued};

#[derive(Parser)]
#[command(
    name = "varlp",
    version,
    about = "Variable-exponent Lebesgue spaces over intervals: inclusions, norms, \
             rearrangements, witnesses",
    after_help = "Configuration defaults may be loaded from a TOML file named by the \
                  VARLP_CONFIG environment variable (keys: grid, depth, tol, witness_n, \
                  seed); command-line flags override it.\n\
                  Exit status: 0 decisive, 2 indeterminate, 1 usage/parse error, \
                  3 precondition violation."
)]
struct Cli {
    /// Write the emitted document to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Emit the machine-readable CSV form (classification evidence traces;
    /// rearrangements are always CSV)
    #[arg(long, global = true)]
    csv: bool,

    /// Grid resolution override for sampled methods
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Endpoint approach depth K: limits are sampled at distances b*2^-k, k <= K
    #[arg(long, global = true, value_name = "K")]
    depth: Option<u32>,

    /// Zero-decision threshold for endpoint limits
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Number of witness sets to construct
    #[arg(long = "witness-n", global = true, value_name = "N")]
    witness_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InclusionArg {
    /// L^{p(.)} into L^{q(.)}
    Pair,
    /// the essentially-bounded space into L^{p(.)}
    LeftInfty,
    /// L^{p(.)} into the integrable space
    RightL1,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the inclusion L^{p(.)} -> L^{q(.)} given two exponent specs
    ClassifyPair {
        /// Source exponent document (TOML)
        p_spec: PathBuf,
        /// Target exponent document (TOML)
        q_spec: PathBuf,
    },
    /// Classify the inclusion of the essentially-bounded space into L^{p(.)}
    ClassifyLeftInfty { p_spec: PathBuf },
    /// Classify the inclusion of L^{p(.)} into the integrable space
    ClassifyRightL1 { p_spec: PathBuf },
    /// Luxemburg norm of a function in L^{p(.)}
    Norm {
        /// Function document (TOML)
        f_spec: PathBuf,
        /// Exponent document (TOML)
        p_spec: PathBuf,
    },
    /// Decreasing rearrangement of a function, emitted as CSV samples
    Rearrange {
        /// Function document (TOML)
        f_spec: PathBuf,
        /// Number of sample rows
        #[arg(default_value_t = 512)]
        rows: usize,
    },
    /// Construct and validate the witness sequence planned by a classification
    Witness {
        /// Which inclusion to classify before realizing its witness plan
        inclusion: InclusionArg,
        /// (Source) exponent document (TOML)
        p_spec: PathBuf,
        /// Target exponent document; required for pair inclusions
        q_spec: Option<PathBuf>,
    },
    /// Test whether two exponent sequences span the same sequence space
    Nakano {
        /// First sequence, as a formula in t (evaluated at t = 1, 2, ...)
        p_expr: String,
        /// Second sequence, as a formula in t
        q_expr: String,
        /// Number of sequence entries examined
        #[arg(default_value_t = 1_000_000)]
        horizon: u64,
    },
    /// Run the built-in worked-example catalog and print the pass/fail table
    Examples {
        /// Only run fixtures whose id starts with this prefix
        filter: Option<String>,
    },
}

/// The verdict that decides the exit status of a classification.
fn headline(rep: &ClassificationReport) -> ThreeValued {
    match rep.kind {
        InclusionKind::Pair => rep.dss,
        InclusionKind::LeftInfty => rep.ss,
        InclusionKind::RightL1 => rep.weakly_compact,
    }
}

fn emit(out: &Option<PathBuf>, doc: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, doc)?;
            Ok(())
        }
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn classification_doc(rep: &ClassificationReport, csv: bool) -> String {
    if csv {
        evidence_csv(rep)
    } else {
        render_text(rep)
    }
}

fn verdict_exit(v: ThreeValued) -> i32 {
    if v.is_decisive() {
        0
    } else {
        2
    }
}

fn csv_unsupported_note(csv: bool) {
    if csv {
        eprintln!("note: this command has no CSV form; --csv ignored");
    }
}

fn run(cli: Cli, cfg: &Config) -> Result<i32> {
    match cli.command {
        Command::ClassifyPair { p_spec, q_spec } => {
            let p = load_exponent(&p_spec)?;
            let q = load_exponent(&q_spec)?;
            let rep = classify_pair(&p, &q, cfg)?;
            emit(&cli.out, &classification_doc(&rep, cli.csv))?;
            Ok(verdict_exit(headline(&rep)))
        }
        Command::ClassifyLeftInfty { p_spec } => {
            let p = load_exponent(&p_spec)?;
            let rep = classify_left_infty(&p, cfg)?;
            emit(&cli.out, &classification_doc(&rep, cli.csv))?;
            Ok(verdict_exit(headline(&rep)))
        }
        Command::ClassifyRightL1 { p_spec } => {
            let p = load_exponent(&p_spec)?;
            let rep = classify_right_l1(&p, cfg)?;
            emit(&cli.out, &classification_doc(&rep, cli.csv))?;
            Ok(verdict_exit(headline(&rep)))
        }
        Command::Norm { f_spec, p_spec } => {
            csv_unsupported_note(cli.csv);
            let f = load_function(&f_spec)?;
            let p = load_exponent(&p_spec)?;
            let v = luxemburg_norm(&f, &p, &cfg.quad)?;
            emit(&cli.out, &format!("{v:.10}\n"))?;
            Ok(0)
        }
        Command::Rearrange { f_spec, rows } => {
            let f = load_function(&f_spec)?;
            let rr = Rearrangement::new(&f, cfg.grid);
            emit(&cli.out, &varlp::report::rearrangement_csv(&rr, rows))?;
            Ok(0)
        }
        Command::Witness {
            inclusion,
            p_spec,
            q_spec,
        } => {
            csv_unsupported_note(cli.csv);
            let p = load_exponent(&p_spec)?;
            let q: Option<PiecewiseFunction> = match q_spec {
                Some(path) => Some(load_exponent(&path)?),
                None => None,
            };
            let rep = match inclusion {
                InclusionArg::Pair => {
                    let q = q.as_ref().ok_or_else(|| {
                        Error::Domain("a pair witness needs a target exponent spec".into())
                    })?;
                    classify_pair(&p, q, cfg)?
                }
                InclusionArg::LeftInfty => classify_left_infty(&p, cfg)?,
                InclusionArg::RightL1 => classify_right_l1(&p, cfg)?,
            };
            let w = construct_witness(&rep, &p, q.as_ref(), cfg.witness_n, cfg)?;
            let mut doc = format!("plan: {}\n", rep.witness_plan.describe());
            doc.push_str(&w.render_text());
            emit(&cli.out, &doc)?;
            Ok(0)
        }
        Command::Nakano {
            p_expr,
            q_expr,
            horizon,
        } => {
            csv_unsupported_note(cli.csv);
            let params = BTreeMap::new();
            let pe = expr::parse(&p_expr, &params)?;
            let qe = expr::parse(&q_expr, &params)?;
            let ev = nakano_equivalent(|n| pe.eval(n as f64), |n| qe.eval(n as f64), horizon)?;
            emit(&cli.out, &ev.render_text())?;
            Ok(verdict_exit(ev.verdict))
        }
        Command::Examples { filter } => {
            csv_unsupported_note(cli.csv);
            let outcome = run_examples(filter.as_deref(), cfg)?;
            emit(&cli.out, &outcome.render_table())?;
            Ok(if outcome.all_pass() { 0 } else { 2 })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful outcomes; everything else is a
            // usage error, reported with status 1 per the exit contract.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let mut cfg = Config::default();
    if let Err(err) = apply_env_config(&mut cfg) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
    if let Some(v) = cli.grid {
        cfg.grid = v;
    }
    if let Some(v) = cli.depth {
        cfg.depth = v;
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = cli.witness_n {
        cfg.witness_n = v;
    }
    match run(cli, &cfg) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
