use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use polyq_core::verify::{default_samples, VerificationReport};
use polyq_core::{
    bending_values, beta_table, dim_h0, enumerate_labelings, enumerate_trivalent, lattice_count,
    realize, verify_operad_axioms, verify_recurrence, verify_theorem, Count, Labeling,
    LengthVector, RibbonTree,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "polyq",
    version,
    about = "Lattice-point and multiplicity counts for polygon spaces"
)]
struct Cli {
    /// Emit CSV instead of JSON where the command supports it.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of R(r0) in R(r1) ⊗ … ⊗ R(r_{n-1}).
    CountKahler {
        /// Comma-separated side lengths, root length first.
        #[arg(long)]
        lengths: String,
    },
    /// Number of admissible labelings (lattice points) for a triangulation.
    CountBending {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        lengths: String,
    },
    /// Canonical forms of all trivalent trees with the given leaf count.
    EnumerateTrees {
        #[arg(long)]
        leaves: usize,
    },
    /// Admissible labelings, keyed by edge path.
    Labelings {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// A polygon whose bending values match a labeling read from FILE.
    Realize {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        lengths: String,
        #[arg(long, value_name = "FILE")]
        labeling: PathBuf,
    },
    /// Exhaustive identity checks; exit code 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
        #[arg(long, default_value_t = 4)]
        max_label: u64,
        #[arg(long, value_enum, default_value_t = Suite::Theorem)]
        suite: Suite,
        /// Largest n for the recurrence suite.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Table of beta(n, i) as CSV, one row per n.
    Recurrence {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem,
    Operad,
    Recurrence,
    All,
}

/// Exit code 2: bad input.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn count_json(x: &Count) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn parse_tree(text: &str) -> Result<RibbonTree, UsageError> {
    text.parse::<RibbonTree>()
        .map_err(|e| UsageError(format!("tree {text:?}: {e}")))
}

fn parse_lengths(text: &str) -> Result<LengthVector, UsageError> {
    Ok(text.parse::<LengthVector>()?)
}

fn emit(out: &mut impl Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::CountKahler { lengths } => {
            let lv = parse_lengths(&lengths)?;
            let k = dim_h0(&lv.sides())?;
            if cli.csv {
                writeln!(
                    out,
                    "dim_H0,smooth,nonempty\n{},{},{}",
                    k.dim, k.smooth, k.nonempty
                )?;
            } else {
                emit(
                    out,
                    &json!({"dim_H0": count_json(&k.dim), "smooth": k.smooth, "nonempty": k.nonempty}),
                )?;
            }
        }
        Command::CountBending { tree, lengths } => {
            let tree = parse_tree(&tree)?;
            let lv = parse_lengths(&lengths)?;
            let count = lattice_count(&tree, &lv.sides())?;
            let internal = tree.internal_edge_count();
            if cli.csv {
                writeln!(out, "count,internal_edges\n{count},{internal}")?;
            } else {
                emit(
                    out,
                    &json!({"count": count_json(&count), "internal_edges": internal}),
                )?;
            }
        }
        Command::EnumerateTrees { leaves } => {
            for tree in enumerate_trivalent(leaves) {
                writeln!(out, "{}", tree.canonical_form())?;
            }
        }
        Command::Labelings {
            tree,
            lengths,
            limit,
        } => {
            let tree = parse_tree(&tree)?;
            let lv = parse_lengths(&lengths)?;
            let found = enumerate_labelings(&tree, &lv)?;
            let shown = &found[..limit.unwrap_or(found.len()).min(found.len())];
            if cli.csv {
                let edges = tree.edges();
                let header: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
                writeln!(out, "{}", header.join(","))?;
                for phi in shown {
                    let row: Vec<String> = edges
                        .iter()
                        .map(|e| phi.get(e).expect("labeling covers tree").to_string())
                        .collect();
                    writeln!(out, "{}", row.join(","))?;
                }
            } else {
                emit(out, &serde_json::to_value(shown)?)?;
            }
        }
        Command::Realize {
            tree,
            lengths,
            labeling,
        } => {
            let tree = parse_tree(&tree)?;
            let lv = parse_lengths(&lengths)?;
            let text = fs::read_to_string(&labeling)
                .map_err(|e| UsageError(format!("{}: {e}", labeling.display())))?;
            let phi: Labeling = serde_json::from_str(&text)?;
            let mut u = realize(&tree, &lv, &phi)?;
            // Adding 0.0 turns -0.0 into 0.0.
            u.vectors.iter_mut().for_each(|v| v.apply(|x| *x += 0.0));
            if cli.csv {
                writeln!(out, "x,y,z")?;
                for v in &u.vectors {
                    writeln!(out, "{},{},{}", v.x, v.y, v.z)?;
                }
            } else {
                let bending: Map<String, Value> = bending_values(&tree, &u)
                    .into_iter()
                    .map(|(e, b)| (e.to_string(), json!(b)))
                    .collect();
                let vectors: Vec<[f64; 3]> = u.vectors.iter().map(|v| [v.x, v.y, v.z]).collect();
                emit(
                    out,
                    &json!({"vectors": vectors, "bending": bending, "closure_residual": u.closure_residual()}),
                )?;
            }
        }
        Command::Verify {
            max_leaves,
            max_label,
            suite,
            max_n,
            timing,
        } => {
            if max_leaves < 2 {
                return Err(UsageError("--max-leaves must be at least 2".into()));
            }
            let mut reports: Vec<VerificationReport> = Vec::new();
            let timed = |start: Instant, report: VerificationReport| {
                if timing {
                    report.with_timing(start)
                } else {
                    report
                }
            };
            if matches!(suite, Suite::Theorem | Suite::All) {
                let start = Instant::now();
                reports.push(timed(start, verify_theorem(max_leaves, max_label)));
            }
            if matches!(suite, Suite::Operad | Suite::All) {
                let start = Instant::now();
                reports.push(timed(
                    start,
                    verify_operad_axioms(&default_samples(), max_label.min(3)),
                ));
            }
            if matches!(suite, Suite::Recurrence | Suite::All) {
                let start = Instant::now();
                reports.push(timed(start, verify_recurrence(max_n)));
            }
            let pass = reports.iter().all(|r| r.pass);
            if cli.csv {
                writeln!(out, "report,check,tree,input,expected,got")?;
                for r in &reports {
                    for f in &r.failures {
                        let input: Vec<String> = f.input.iter().map(u64::to_string).collect();
                        writeln!(
                            out,
                            "{},{},\"{}\",\"{}\",{},{}",
                            r.name,
                            f.check,
                            f.tree,
                            input.join(";"),
                            f.expected,
                            f.got
                        )?;
                    }
                }
            } else if let [only] = reports.as_slice() {
                emit(out, &serde_json::to_value(only)?)?;
            } else {
                emit(out, &serde_json::to_value(&reports)?)?;
            }
            if !pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Recurrence { max_n } => {
            if max_n < 3 {
                return Err(UsageError("--max-n must be at least 3".into()));
            }
            let width = max_n as u64 + 2;
            let table = beta_table(max_n, width)?;
            let header: Vec<String> = (0..=width).map(|i| i.to_string()).collect();
            writeln!(out, "n,{}", header.join(","))?;
            for (row, n) in table.iter().zip(3..) {
                let cells: Vec<String> = row.iter().map(Count::to_string).collect();
                writeln!(out, "{n},{}", cells.join(","))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("polyq: {message}");
            ExitCode::from(2)
        }
    }
}
