use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gturan_core::oracle::{self, lookup};
use gturan_core::search::max_copies_with;
use gturan_core::{
    build, count_copies, count_copies_fast, emit_report, evaluate, graph6, render_report,
    run_preserving_independent_set, run_to_multipartite, verify_table, Error, FamilySpec, Graph,
    PatternId, ReportFormat, VerificationReport,
};

const EXIT_MISMATCH: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gturan",
    version,
    about = "Generalized Turán numbers for small patterns"
)]
struct Cli {
    /// Size of the worker pool (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count copies of a pattern in a graph.
    Count {
        #[arg(long)]
        h: PatternId,
        #[command(flatten)]
        input: GraphInput,
        /// Use the closed-form counter instead of the embedder.
        #[arg(long)]
        fast: bool,
    },
    /// Build a named construction, e.g. `construct turan 7 3`.
    Construct {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look up a table cell and evaluate it at `n`.
    Formula {
        #[arg(long)]
        h: PatternId,
        #[arg(long)]
        f: PatternId,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive isomorph-free search for `ex(n, h, f)`.
    Search {
        #[arg(long)]
        h: PatternId,
        #[arg(long)]
        f: PatternId,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        maximal_only: bool,
        /// Print every extremal graph in graph6.
        #[arg(long)]
        emit_extremal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Zykov-symmetrize a graph to complete multipartite form.
    Symmetrize {
        #[arg(long)]
        h: PatternId,
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated independent set to keep independent.
        #[arg(long, value_delimiter = ',')]
        preserve: Option<Vec<usize>>,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify the table against exhaustive search.
    Verify {
        #[command(flatten)]
        report: ReportArgs,
        /// Write the measured thresholds to this file.
        #[arg(long)]
        write_thresholds: Option<PathBuf>,
    },
    /// Render a report, from a saved JSON report or from a fresh run.
    Report {
        #[command(flatten)]
        report: ReportArgs,
        /// Saved JSON report to render instead of running verification.
        #[arg(long)]
        from: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphInput {
    /// graph6 or `n; u-v,...`. Read from stdin when absent.
    #[arg(long)]
    graph: Option<String>,
    /// File holding the graph.
    #[arg(long, conflicts_with = "graph")]
    input: Option<PathBuf>,
}

impl GraphInput {
    fn read(&self) -> anyhow::Result<Graph> {
        let text = match (&self.graph, &self.input) {
            (Some(g), _) => g.clone(),
            (None, Some(p)) => {
                fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
            }
            (None, None) => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        Ok(Graph::parse_any(text.trim())?)
    }
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Restrict to cells with this pattern counted.
    #[arg(long)]
    h: Option<PatternId>,
    /// Restrict to cells with this pattern forbidden.
    #[arg(long)]
    f: Option<PatternId>,
    #[arg(long, default_value = "markdown")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ReportArgs {
    fn cells(&self) -> Option<Vec<(PatternId, PatternId)>> {
        if self.h.is_none() && self.f.is_none() {
            return None;
        }
        let pick = |p: Option<PatternId>| p.map_or(PatternId::ALL.to_vec(), |p| vec![p]);
        let fs = pick(self.f);
        Some(
            pick(self.h)
                .into_iter()
                .flat_map(|h| fs.iter().map(move |&f| (h, f)))
                .collect(),
        )
    }

    fn run(&self) -> anyhow::Result<VerificationReport> {
        let cells = self.cells();
        Ok(verify_table(self.n, cells.as_deref())?)
    }

    fn emit(&self, report: &VerificationReport) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => emit_report(report, self.format, path)?,
            None => write_text(None, &render_report(report, self.format)?)?,
        }
        Ok(())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

fn write_text(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Count { h, input, fast } => {
            let g = input.read()?;
            let c = if fast {
                count_copies_fast(h, &g)
            } else {
                count_copies(&h.graph(), &g)?
            };
            println!("{c}");
        }
        Command::Construct {
            family,
            params,
            format,
            out,
        } => {
            let spec = FamilySpec::from_params(&family, &params)?;
            let g = build(&spec)?;
            let text = match format {
                GraphFormat::Graph6 => graph6::encode(&g),
                GraphFormat::Edges => g.to_edge_list_string(),
            };
            write_text(out.as_ref(), &(text + "\n"))?;
        }
        Command::Formula { h, f, n, json } => {
            let entry = lookup(h, f);
            let value = n.map(|n| evaluate(h, f, n));
            if json {
                let doc = serde_json::json!({ "entry": entry, "n": n, "value": value });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!(
                    "{} {:?}: {}",
                    oracle::cell_key(h, f),
                    entry.kind,
                    entry.formula()
                );
                println!("validity: {:?}", entry.validity);
                println!("source: {}", entry.citation);
                if let (Some(n), Some(v)) = (n, value) {
                    println!("n = {n}: {v}");
                }
            }
        }
        Command::Search {
            h,
            f,
            n,
            maximal_only,
            emit_extremal,
            json,
        } => {
            let r = max_copies_with(h, f, n, maximal_only)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!(
                    "ex({n}, {h}, {f}) = {} ({} extremal, {} graphs, {:.2}s)",
                    r.maximum,
                    r.extremal.len(),
                    r.graphs_visited,
                    r.elapsed.as_secs_f64()
                );
                if emit_extremal {
                    for form in &r.extremal {
                        println!("{}", form.graph6());
                    }
                }
            }
        }
        Command::Symmetrize {
            h,
            input,
            preserve,
            trace,
            json,
        } => {
            let g = input.read()?;
            let t = match &preserve {
                Some(a) => run_preserving_independent_set(&g, h, a)?,
                None => run_to_multipartite(&g, h)?,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&t)?);
            } else {
                if trace {
                    for s in &t.steps {
                        println!(
                            "{}-{} {:?}: {} -> {}",
                            s.u, s.v, s.direction, s.count_before, s.count_after
                        );
                    }
                }
                let parts = t.final_graph.multipartite_parts().unwrap_or_default();
                println!("{}", graph6::encode(&t.final_graph));
                println!("parts {parts:?}, {} steps", t.steps.len());
            }
        }
        Command::Verify {
            report,
            write_thresholds,
        } => {
            let r = report.run()?;
            report.emit(&r)?;
            if let Some(p) = write_thresholds {
                fs::write(&p, r.thresholds_json())
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            for m in &r.summary.mismatches {
                eprintln!("mismatch: {m}");
            }
            return Ok(if r.passed() { 0 } else { EXIT_MISMATCH });
        }
        Command::Report { report, from } => {
            let r = match from {
                Some(p) => {
                    let text = fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str(&text).context("parsing the saved report")?
                }
                None => report.run()?,
            };
            report.emit(&r)?;
            return Ok(if r.passed() { 0 } else { EXIT_MISMATCH });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded(_)) => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
