//! `rcn`: exact crossing counts, constructions and searches for rectilinear
//! drawings.
//!
//! Output goes to stdout in plain values, CSV or `key=value` lines;
//! `--verbose` adds commentary on stderr. Exit status is 0 on success, 1 for
//! invalid input and 2 when an internal self-check fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rcn_core::closed_forms::{self, FormulaValue, QBar};
use rcn_core::crossing::{self, crossings_from_kedges};
use rcn_core::drawing::{self, library_drawing};
use rcn_core::embedder::{self, HostCrossingOracle};
use rcn_core::optimizer::{self, RecordOutcome, SearchConfig};
use rcn_core::{hill, planter, Drawing, Error, GraphSpec, Result};

#[derive(Parser)]
#[command(name = "rcn", version, about = "Rectilinear crossing numbers of multipartite and layered graphs")]
struct Cli {
    /// Human commentary on stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force crossing count of a drawing.
    Count {
        /// Drawing file or library name.
        #[arg(long)]
        drawing: String,
        /// Count with this graph instead of the stored one.
        #[arg(long)]
        graph: Option<GraphSpec>,
    },
    /// j-edge counts and prefix sums of a drawing's point set, as CSV.
    Kedges {
        #[arg(long)]
        drawing: String,
    },
    /// Lower bound on the rectilinear crossing number of K_n.
    Lowerbound {
        #[arg(long)]
        n: usize,
    },
    /// Table of H(n) and the lower bound for a range of n.
    Table1 {
        #[arg(long, default_value_t = 10)]
        from: usize,
        #[arg(long, default_value_t = 161)]
        to: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Checks the lower bound against 1/64 of C(n,4) over the table range.
    VerifyProp1,
    /// Builds Hill's cylindrical drawing of K_n and checks its count.
    Hill {
        #[arg(long)]
        n: usize,
    },
    /// Evaluates a closed-form expression.
    Formulas {
        #[arg(value_enum)]
        formula: Formula,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        /// Crossings of the seed or host drawing.
        #[arg(long)]
        cr: Option<u64>,
        #[arg(long)]
        graph: Option<GraphSpec>,
        #[arg(long, value_enum, default_value_t = QBarArg::Upper)]
        qbar: QBarArg,
    },
    /// Random embeddings of a guest graph into a host drawing of K_n.
    Embed {
        #[arg(long)]
        guest: GraphSpec,
        /// `hill:N`, a drawing file or a library name.
        #[arg(long)]
        host: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Average over all n! bijections instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        serial: bool,
    },
    /// Planted drawing from a seed drawing.
    Plant {
        /// Seed drawing file or library name.
        #[arg(long)]
        seed: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the per-signature classification.
        #[arg(long)]
        verify: bool,
    },
    /// Writes a constructed drawing as JSON.
    Generate {
        #[command(subcommand)]
        which: Generator,
    },
    /// Local search for a low-crossing drawing.
    Optimize {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop once a drawing with at most this many crossings is found.
        #[arg(long)]
        target: Option<u64>,
        /// Per-restart move cap.
        #[arg(long)]
        max_moves: Option<u64>,
        #[arg(long)]
        initial_step: Option<i64>,
        #[arg(long)]
        max_stale_moves: Option<u64>,
        #[arg(long)]
        half_width: Option<i64>,
        #[arg(long, env = "RCN_STORE", default_value = "rcn-store")]
        store: PathBuf,
        /// Do not touch the store.
        #[arg(long)]
        no_store: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        serial: bool,
    },
    /// Recounts the bundled K_24^4 drawing.
    VerifyDataset,
}

#[derive(Subcommand)]
enum Generator {
    /// Planar drawing of L_{2r}^r.
    Layered {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zarankiewicz's drawing of K_{m,n}.
    Zarankiewicz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named library drawing.
    Library {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Hill,
    Zarankiewicz,
    Harborth,
    Expected,
    Planted,
    PlantedCoefficient,
    Bounds,
    HillRatio,
}

#[derive(Clone, Copy, ValueEnum)]
enum QBarArg {
    Lower,
    Upper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_self_check_failure() { 2 } else { 1 })
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("--{flag} is required for this formula")))
}

/// A path (anything with a separator or a `.json` suffix) or a bundled drawing name.
fn open_drawing(arg: &str) -> Result<Drawing> {
    let p = Path::new(arg);
    if p.exists() || arg.contains(std::path::MAIN_SEPARATOR) || arg.ends_with(".json") {
        Drawing::load(p)
    } else {
        library_drawing(arg)
    }
}

fn emit(d: &Drawing, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            d.save(path)?;
            println!("{}", d.crossings()?);
        }
        None => print!("{}", d.to_json_string()),
    }
    Ok(())
}

fn formula_line(name: &str, v: &FormulaValue) {
    println!("{name},{},{}", v.exact_string(), v.decimal_string());
}

fn run(cli: Cli) -> Result<()> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Count { drawing, graph } => {
            let mut d = open_drawing(&drawing)?;
            if let Some(g) = graph {
                d = d.with_graph(g)?;
            }
            let c = d.crossings()?;
            if verbose {
                eprintln!("{} on {} points", d.graph(), d.vertex_count());
            }
            println!("{c}");
        }
        Command::Kedges { drawing } => {
            let d = open_drawing(&drawing)?;
            let v = d.k_edges()?;
            println!("j,e,E");
            for (j, (e, big)) in v.counts().iter().zip(v.prefix_sums()).enumerate() {
                println!("{j},{e},{big}");
            }
            if verbose {
                eprintln!("crossings of K_{} on these points: {}", v.n(), crossings_from_kedges(&v)?);
            }
        }
        Command::Lowerbound { n } => println!("{}", crossing::lower_bound_crn(n)),
        Command::Table1 { from, to, csv } => {
            if from > to {
                return Err(Error::Parse(format!("empty range {from}..={to}")));
            }
            let rows = crossing::table1(from, to);
            if csv {
                print!("{}", crossing::table1_csv(&rows));
            } else {
                for r in &rows {
                    println!("{:>4} {:>10} {:>10}", r.n, r.h, r.lower_bound);
                }
            }
        }
        Command::VerifyProp1 => {
            let r = crossing::verify_proposition1();
            println!("rows_checked={}", r.rows_checked);
            println!("violations={}", r.violations.len());
            println!("constant={}/{}", crossing::lower_bound_crn(158), 158u64 * 157 * 156 * 155);
            println!("exceeds_one_64th={}", r.exceeds_one_64th());
            println!("meets_0.015625837={}", r.meets_decimal_constant);
            if !r.ok() {
                return Err(Error::IdentityViolation(format!("lower bound check failed for n in {:?}", r.violations)));
            }
        }
        Command::Hill { n } => {
            let total = hill::hill_total(n)?;
            println!("H={total} verified");
        }
        Command::Formulas { formula, n, m, r, s, t, cr, graph, qbar } => {
            let qbar = match qbar {
                QBarArg::Lower => QBar::Lower,
                QBarArg::Upper => QBar::Upper,
            };
            match formula {
                Formula::Hill => {
                    let n = need(n, "n")?;
                    println!("{}", closed_forms::hill_number(n));
                }
                Formula::Zarankiewicz => println!("{}", closed_forms::zarankiewicz(need(m, "m")?, need(n, "n")?)),
                Formula::Harborth => formula_line("harborth", &closed_forms::harborth_upper(need(n, "n")?, need(r, "r")?)?),
                Formula::Expected => {
                    let g = need(graph, "graph")?;
                    let host_n = g.vertex_count();
                    let host_cr = cr.unwrap_or_else(|| closed_forms::hill_number(host_n as u64));
                    formula_line("expected", &closed_forms::expected_crossings_random_embedding(&g, host_cr, host_n)?);
                }
                Formula::Planted => {
                    let g = need(graph, "graph")?;
                    let terms = closed_forms::planted_terms(need(cr, "cr")?, &g.degrees(), g.edge_count(), need(s, "s")?);
                    println!("four_cluster={}", terms.four_cluster);
                    println!("three_cluster={}", terms.three_cluster);
                    println!("two_cluster={}", terms.two_cluster);
                    println!("total={}", terms.total());
                }
                Formula::PlantedCoefficient => formula_line(
                    "planted_coefficient",
                    &closed_forms::planted_coefficient(need(cr, "cr")?, need(r, "r")?, need(t, "t")?),
                ),
                Formula::Bounds => {
                    for (name, v) in closed_forms::bound_evaluators(need(n, "n")?, need(r, "r")?, qbar, cr)? {
                        formula_line(name, &v);
                    }
                }
                Formula::HillRatio => println!("{}", closed_forms::hill_ratio_bound_holds(need(n, "n")?)),
            }
        }
        Command::Embed { guest, host, samples, seed, exhaustive, serial } => {
            let oracle = match host.strip_prefix("hill:") {
                Some(k) => HostCrossingOracle::hill(k.parse().map_err(|_| Error::Parse(format!("bad host {host:?}")))?)?,
                None => HostCrossingOracle::from_drawing(&open_drawing(&host)?)?,
            };
            let stats = if exhaustive {
                embedder::embed_exhaustive(&guest, &oracle)?
            } else {
                embedder::embed_mc(&guest, &oracle, samples, seed, serial)?
            };
            let expected = closed_forms::expected_crossings_random_embedding(&guest, oracle.total(), oracle.vertex_count())?;
            let mean = FormulaValue::new(stats.mean_exact());
            println!("samples={}", stats.samples);
            println!("mean={}", if exhaustive { mean.exact_string() } else { format!("{:.6}", stats.mean()) });
            println!("variance={:.6}", stats.variance());
            println!("min={}", stats.min);
            println!("max={}", stats.max);
            println!("expected={}", expected.exact_string());
            if verbose {
                eprintln!("host crossings {}, standard error {:.6}", oracle.total(), stats.standard_error());
            }
        }
        Command::Plant { seed, s, out, verify } => {
            let seed_drawing = open_drawing(&seed)?;
            let (d, report) = planter::plant_verified(&seed_drawing, s)?;
            if let Some(path) = &out {
                d.save(path)?;
            }
            if verify {
                println!("four_cluster={}", report.found.four_cluster);
                println!("three_cluster={}", report.found.three_cluster);
                println!("two_cluster={}", report.found.two_cluster);
                println!("total={}", report.total);
                println!("expected={}", report.expected.total());
            } else {
                println!("{}", report.total);
            }
        }
        Command::Generate { which } => match which {
            Generator::Layered { r, out } => emit(&drawing::generate_layered(r)?, out.as_deref())?,
            Generator::Zarankiewicz { m, n, out } => emit(&drawing::generate_zarankiewicz(m, n)?, out.as_deref())?,
            Generator::Library { name: None, .. } => {
                for name in drawing::seed_library().keys() {
                    println!("{name}");
                }
            }
            Generator::Library { name: Some(name), out } => emit(&library_drawing(&name)?, out.as_deref())?,
        },
        Command::Optimize {
            graph,
            restarts,
            budget_secs,
            seed,
            target,
            max_moves,
            initial_step,
            max_stale_moves,
            half_width,
            store,
            no_store,
            out,
            serial,
        } => {
            let d = SearchConfig::default();
            let cfg = SearchConfig {
                restarts,
                budget_secs,
                seed,
                target,
                max_moves,
                serial,
                initial_step: initial_step.unwrap_or(d.initial_step),
                max_stale_moves: max_stale_moves.unwrap_or(d.max_stale_moves),
                half_width: half_width.unwrap_or(d.half_width),
                ..d
            };
            let progress = |r: &optimizer::RestartSummary| {
                println!("restart {}: count {} after {} moves", r.index, r.final_count, r.moves);
            };
            let result = optimizer::optimize_with_progress(&graph, &cfg, &progress)?;
            println!("best={}", result.best_count);
            if let Some(path) = &out {
                result.best.save(path)?;
            }
            if !no_store {
                match optimizer::record_best(&result, &cfg, &store)? {
                    RecordOutcome::Created => println!("stored: created"),
                    RecordOutcome::Replaced { previous } => println!("stored: replaced {previous}"),
                    RecordOutcome::KeptExisting { stored } => println!("stored: kept existing {stored}"),
                }
            }
        }
        Command::VerifyDataset => {
            let d = drawing::k24_4();
            let c = d.crossings()?;
            if c != 2033 {
                return Err(Error::CheckpointMismatch { incremental: 2033, recount: c });
            }
            println!("{c} verified");
        }
    }
    Ok(())
}
