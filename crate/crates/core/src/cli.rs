//! Command-line front end. `run` parses arguments, executes one verb and
//! returns the process exit code: 0 on success, 1 for a negative
//! mathematical answer, 2 for usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::deform::{gauge_equivalent, mc_check, moduli, verify_witt, Gauge, WittCochain};
use crate::gsiso::{verify_morphism, MAX_ISO_DEGREE};
use crate::hochschild::{hh_dims, HochschildComplex, RelativeOperad};
use crate::io;
use crate::numkit::rat_to_string;
use crate::poset::{ChainMode, Nerve, Poset};
use crate::simplicial::{simp_cohomology_dims, SimplicialOperad};
use crate::suites::{verify_axioms, Report, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "incidence",
    version,
    about = "Cohomology, operad checks and deformations of incidence algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Omit the timestamp block from JSON output.
    #[arg(long)]
    no_meta: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Operad,
    Brace,
    Hga,
    Dgla,
    Iso,
    Witt,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Operad => Suite::Operad,
            SuiteArg::Brace => Suite::Brace,
            SuiteArg::Hga => Suite::Hga,
            SuiteArg::Dgla => Suite::Dgla,
            SuiteArg::Iso => Suite::Iso,
            SuiteArg::Witt => Suite::Witt,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a poset file and summarize it.
    Validate {
        poset: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Betti numbers of the nerve.
    Cohomology {
        poset: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Use all weak chains instead of the normalized (strict) complex.
        #[arg(long)]
        unnormalized: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Cohomology dimensions of the simplicial, relative and full Hochschild
    /// complexes.
    Hochschild {
        poset: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run seeded verification suites.
    Verify {
        poset: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Highest degree sampled by the iso suite.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Highest truncation order sampled by the witt suite.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Flip one sign of the partial composition in a shadow carrier.
        #[arg(long)]
        mutate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Moduli space of formal deformations at a truncation order.
    Deform {
        poset: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check the Maurer-Cartan equation for an MC element file.
    McCheck {
        poset: PathBuf,
        element: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide gauge equivalence of two MC element files.
    GaugeEquiv {
        poset: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

struct Outcome {
    code: i32,
    doc: Value,
    table: String,
}

fn usage(msg: impl Into<String>) -> (i32, String) {
    (2, msg.into())
}

/// Runs the tool on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let (format, no_meta) = match &cli.command {
        Command::Validate { out, .. }
        | Command::Cohomology { out, .. }
        | Command::Hochschild { out, .. }
        | Command::Verify { out, .. }
        | Command::Deform { out, .. }
        | Command::McCheck { out, .. }
        | Command::GaugeEquiv { out, .. } => (out.format, out.no_meta),
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let written = match format {
                Format::Json => {
                    let mut doc = outcome.doc;
                    if !no_meta {
                        doc["meta"] = meta();
                    }
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    )
                }
                Format::Table => write!(out, "{}", outcome.table),
            };
            if written.is_err() {
                return 2;
            }
            outcome.code
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn meta() -> Value {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "tool": "incidence",
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": secs,
    })
}

fn load_poset(path: &Path) -> Result<Poset, (i32, String)> {
    io::read_poset(path).map_err(|e| usage(e.to_string()))
}

fn execute(cmd: Command) -> Result<Outcome, (i32, String)> {
    match cmd {
        Command::Validate { poset, .. } => {
            let p = load_poset(&poset)?;
            let intervals = p.intervals().len();
            let covers = p.covers().len();
            Ok(Outcome {
                code: 0,
                doc: json!({"poset": p.name(), "elements": p.len(), "intervals": intervals, "covers": covers}),
                table: format!(
                    "poset {}\nelements  {}\nintervals {}\ncovers    {}\n",
                    p.name(),
                    p.len(),
                    intervals,
                    covers
                ),
            })
        }
        Command::Cohomology {
            poset,
            max_degree,
            unnormalized,
            ..
        } => {
            let p = load_poset(&poset)?;
            let mode = if unnormalized {
                ChainMode::Weak
            } else {
                ChainMode::Strict
            };
            let name = p.name().to_string();
            let betti = simp_cohomology_dims(&Nerve::new(p), max_degree, mode);
            let mode_name = if unnormalized { "weak" } else { "strict" };
            Ok(Outcome {
                code: 0,
                doc: json!({"poset": name, "max-degree": max_degree, "mode": mode_name, "betti": betti}),
                table: format!(
                    "poset {name} ({mode_name} chains)\nbetti {}\n",
                    join(&betti)
                ),
            })
        }
        Command::Hochschild {
            poset, max_degree, ..
        } => {
            let p = load_poset(&poset)?;
            let simplicial =
                simp_cohomology_dims(&Nerve::new(p.clone()), max_degree, ChainMode::Weak);
            let relative = hh_dims(&p, max_degree, HochschildComplex::Relative)
                .expect("relative complex has no size limit");
            let full = hh_dims(&p, max_degree, HochschildComplex::Full)
                .map_err(|e| usage(e.to_string()))?;
            let agree = simplicial == relative && relative == full;
            Ok(Outcome {
                code: if agree { 0 } else { 1 },
                doc: json!({
                    "poset": p.name(), "max-degree": max_degree,
                    "simplicial": simplicial, "relative": relative, "full": full, "agree": agree,
                }),
                table: format!(
                    "poset {}\nsimplicial {}\nrelative   {}\nfull       {}\nagree      {agree}\n",
                    p.name(),
                    join(&simplicial),
                    join(&relative),
                    join(&full)
                ),
            })
        }
        Command::Verify {
            poset,
            suite,
            samples,
            seed,
            max_degree,
            order,
            mutate,
            ..
        } => {
            if max_degree > MAX_ISO_DEGREE {
                return Err(usage(format!(
                    "--max-degree {max_degree} exceeds {MAX_ISO_DEGREE}"
                )));
            }
            if order == 0 {
                return Err(usage("--order must be at least 1"));
            }
            let p = load_poset(&poset)?;
            let report = run_suite(&p, suite.into(), samples, seed, max_degree, order, mutate);
            Ok(Outcome {
                code: if report.passed() { 0 } else { 1 },
                doc: serde_json::to_value(&report).expect("serializable"),
                table: report_table(&report),
            })
        }
        Command::Deform { poset, order, .. } => {
            if order == 0 {
                return Err(usage("--order must be at least 1"));
            }
            let p = load_poset(&poset)?;
            let op = SimplicialOperad::new(p);
            let m = moduli(&op, order);
            let file = io::moduli_to_file(op.nerve(), &m);
            Ok(Outcome {
                code: 0,
                table: format!(
                    "poset {}\norder {}\ndimension {}\n",
                    file.poset, file.order, file.dimension
                ),
                doc: serde_json::to_value(&file).expect("serializable"),
            })
        }
        Command::McCheck { poset, element, .. } => {
            let op = SimplicialOperad::new(load_poset(&poset)?);
            let e = io::read_mc(op.nerve(), &element).map_err(|e| usage(e.to_string()))?;
            let name = op.poset().name().to_string();
            Ok(match mc_check(&op, &e) {
                Ok(()) => Outcome {
                    code: 0,
                    doc: json!({"poset": name, "order": e.order(), "mc": true}),
                    table: format!("poset {name}\nMaurer-Cartan: yes\n"),
                },
                Err(f) => Outcome {
                    code: 1,
                    doc: json!({"poset": name, "order": e.order(), "mc": false,
                                "failure": {"term": f.term, "witness-chain": f.chain}}),
                    table: format!(
                        "poset {name}\nMaurer-Cartan: no\nfails at λ^{} on chain {}\n",
                        f.term,
                        f.chain.join(" ≤ ")
                    ),
                },
            })
        }
        Command::GaugeEquiv {
            poset,
            first,
            second,
            ..
        } => {
            let op = SimplicialOperad::new(load_poset(&poset)?);
            let e1 = io::read_mc(op.nerve(), &first).map_err(|e| usage(e.to_string()))?;
            let e2 = io::read_mc(op.nerve(), &second).map_err(|e| usage(e.to_string()))?;
            let name = op.poset().name().to_string();
            match gauge_equivalent(&op, &e1, &e2).map_err(|e| usage(e.to_string()))? {
                Gauge::Equivalent(w) => Ok(Outcome {
                    code: 0,
                    doc: json!({"poset": name, "equivalent": true, "witness": witness_json(op.nerve(), &w)}),
                    table: format!("poset {name}\nequivalent: yes\n"),
                }),
                Gauge::NotEquivalent => Ok(Outcome {
                    code: 1,
                    doc: json!({"poset": name, "equivalent": false}),
                    table: format!("poset {name}\nequivalent: no\n"),
                }),
            }
        }
    }
}

/// A Witt 1-cochain as its non-identity values, each a list of λ-coefficients.
fn witness_json(nerve: &Nerve, w: &WittCochain) -> Value {
    let basis = nerve.weak(w.degree());
    let entries: Vec<Value> = w
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_one())
        .map(|(i, v)| {
            json!({
                "chain": nerve.poset().chain_labels(basis.chain(i)),
                "value": v.value().coeffs().iter().map(rat_to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"degree": w.degree(), "order": w.order(), "entries": entries})
}

/// Runs one suite, or every suite for `Suite::All`, on a poset.
pub fn run_suite(
    p: &Poset,
    suite: Suite,
    samples: usize,
    seed: u64,
    max_degree: usize,
    order: usize,
    mutate: bool,
) -> Report {
    let mut report = Report::new(suite.name(), p.name(), samples, seed);
    let axioms: Vec<Suite> = match suite {
        Suite::All => Suite::axiom_suites().to_vec(),
        Suite::Iso | Suite::Witt => Vec::new(),
        s => vec![s],
    };
    if !axioms.is_empty() {
        let simp = SimplicialOperad::new(p.clone());
        let rel = RelativeOperad::new(p.clone());
        if mutate {
            use crate::opcore::SignFlipped;
            verify_axioms(
                &SignFlipped::new(&simp),
                &axioms,
                samples,
                seed,
                &mut report,
                "simplicial/",
            );
            verify_axioms(
                &SignFlipped::new(&rel),
                &axioms,
                samples,
                seed,
                &mut report,
                "relative/",
            );
        } else {
            verify_axioms(&simp, &axioms, samples, seed, &mut report, "simplicial/");
            verify_axioms(&rel, &axioms, samples, seed, &mut report, "relative/");
        }
    }
    if matches!(suite, Suite::Iso | Suite::All) {
        report.absorb(verify_morphism(p, samples, seed, max_degree, mutate));
    }
    if matches!(suite, Suite::Witt | Suite::All) {
        let orders: Vec<usize> = (1..=order).collect();
        report.absorb(verify_witt(p, samples, seed, &orders, mutate));
    }
    report
}

fn report_table(r: &Report) -> String {
    let mut s = format!(
        "suite {}  poset {}  samples {}  seed {}\n",
        r.suite, r.poset, r.samples, r.seed
    );
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        s += &format!(
            "  {:<width$}  {:>7} passed  {:>5} failed\n",
            c.name, c.passed, c.failed
        );
    }
    for f in &r.failures {
        s += &format!(
            "  FAIL {} degrees {:?} at {}\n",
            f.check,
            f.degrees,
            f.witness_chain.join(" ≤ ")
        );
    }
    s += if r.passed() {
        "result: pass\n"
    } else {
        "result: FAIL\n"
    };
    s
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}
