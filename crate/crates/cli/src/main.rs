use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pbdraw::bench::{
    format_csv, format_table, run_bench, table_profile_inputs, BenchConfig, BenchInput,
};
use pbdraw::io::{
    emit_svg, gen_random_dag, gen_random_dag_with_edges, parse_graph, parse_paths, to_edge_list,
    LayoutDocument, SvgOptions,
};
use pbdraw::{condense, prepare_dag, DecompositionChoice, Prepared, ReachIndex, Variant};

/// Path-based hierarchical drawings of directed graphs.
#[derive(Parser)]
#[command(name = "pbdraw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one variant; writes SVG and/or JSON and prints metrics.
    Draw {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 4, value_parser = parse_variant)]
        variant: u8,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a random DAG as an edge list.
    Gen {
        #[arg(long)]
        nodes: usize,
        /// Edge density in percent of n(n-1)/2.
        #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
        completeness: Option<f64>,
        /// Exact edge count.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print metrics for one or more variants.
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated variant ids; all by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_variant)]
        variants: Vec<u8>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that every variant preserves reachability; exit 2 otherwise.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_delimiter = ',', value_parser = parse_variant)]
        variants: Vec<u8>,
    },
    /// Build or query a reachability index.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Metrics table for every variant over a set of graphs.
    Bench {
        files: Vec<PathBuf>,
        /// Add five generated DAGs with the reference node and edge counts.
        #[arg(long)]
        table_profiles: bool,
        #[arg(long, value_delimiter = ',', value_parser = parse_variant)]
        variants: Vec<u8>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Decompose::Min)]
        decompose: Decompose,
        /// Also write the rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IndexCommand {
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prints `true` if U reaches V.
    Query {
        #[arg(long)]
        index: PathBuf,
        u: String,
        v: String,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list or JSON graph document.
    #[arg(long)]
    input: PathBuf,
    /// One path per line, vertex labels separated by whitespace.
    #[arg(long, conflicts_with = "decompose")]
    paths: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Decompose::Min)]
    decompose: Decompose,
}

#[derive(Clone, Copy, ValueEnum)]
enum Decompose {
    Greedy,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_variant(s: &str) -> Result<u8, String> {
    let id: u8 = s
        .parse()
        .map_err(|_| format!("{s:?} is not a variant id"))?;
    Variant::try_from(id)
        .map(u8::from)
        .map_err(|e| e.to_string())
}

fn variant_list(ids: &[u8]) -> Vec<Variant> {
    if ids.is_empty() {
        return Variant::ALL.to_vec();
    }
    ids.iter()
        .map(|&id| Variant::try_from(id).expect("validated by clap"))
        .collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(args: &GraphArgs) -> Result<Prepared> {
    let parsed = parse_graph(&read(&args.input)?).map_err(pbdraw::Error::from)?;
    let report = parsed.report;
    if report.warnings() > 0 {
        eprintln!(
            "warning: dropped {} duplicate edge(s) and {} self-loop(s)",
            report.duplicate_edges, report.self_loops
        );
    }
    let dag = condense(&parsed.graph);
    if dag.vertex_count() < parsed.graph.vertex_count() {
        eprintln!(
            "warning: collapsed cycles, {} vertices became {}",
            parsed.graph.vertex_count(),
            dag.vertex_count()
        );
    }
    let choice = match (&args.paths, args.decompose) {
        (Some(p), _) => DecompositionChoice::Given(
            parse_paths(&read(p)?, dag.graph().labels()).map_err(pbdraw::Error::from)?,
        ),
        (None, Decompose::Greedy) => DecompositionChoice::Greedy,
        (None, Decompose::Min) => DecompositionChoice::Minimum,
    };
    Ok(prepare_dag(dag, &choice)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Draw {
            graph,
            variant,
            svg,
            json,
        } => {
            let p = load(&graph)?;
            let r = p.render(Variant::try_from(variant)?)?;
            if let Some(path) = svg {
                write(
                    &path,
                    &emit_svg(&r.layout, p.labels(), &SvgOptions::default()),
                )?;
            }
            if let Some(path) = json {
                let doc = LayoutDocument::new(&r.layout, p.labels(), r.metrics.clone());
                write(&path, &doc.to_json())?;
            }
            print!("{}", r.metrics.to_text());
        }
        Command::Gen {
            nodes,
            completeness,
            edges,
            seed,
            out,
        } => {
            let g = match (completeness, edges) {
                (_, Some(m)) => gen_random_dag_with_edges(nodes, m, seed),
                (Some(c), None) => gen_random_dag(nodes, c, seed),
                (None, None) => unreachable!("clap requires one of the two"),
            }
            .map_err(pbdraw::Error::from)?;
            let text = to_edge_list(&g);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Metrics {
            graph,
            variants,
            format,
        } => {
            let p = load(&graph)?;
            let mut reports = Vec::new();
            for v in variant_list(&variants) {
                reports.push((v, p.render(v)?.metrics));
            }
            match format {
                Format::Text => {
                    for (v, m) in &reports {
                        println!("variant: {v}");
                        print!("{}", m.to_text());
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = reports
                        .iter()
                        .map(|(v, m)| serde_json::json!({ "variant": v, "metrics": m }))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                }
            }
        }
        Command::Verify { graph, variants } => {
            let p = load(&graph)?;
            let mut failed = false;
            for o in p.verify(&variant_list(&variants)) {
                match o.mismatch {
                    None => println!("variant {}: ok", o.variant),
                    Some((u, v)) => {
                        failed = true;
                        println!(
                            "variant {}: reachability differs at {} -> {}",
                            o.variant,
                            p.labels()[u],
                            p.labels()[v]
                        );
                    }
                }
            }
            if failed {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Index(IndexCommand::Build { graph, out }) => {
            let p = load(&graph)?;
            let idx = p.index();
            write(&out, &idx.to_text(p.labels()))?;
            println!(
                "{} entries ({} vertices x {} paths)",
                idx.size(),
                idx.vertex_count(),
                idx.k()
            );
        }
        Command::Index(IndexCommand::Query { index, u, v }) => {
            let (idx, labels) =
                ReachIndex::from_text(&read(&index)?).map_err(pbdraw::Error::from)?;
            let id = |label: &str| {
                labels.iter().position(|l| l == label).ok_or_else(|| {
                    pbdraw::Error::from(pbdraw::IndexError::UnknownLabel(label.into()))
                })
            };
            println!("{}", idx.query(id(&u)?, id(&v)?)?);
        }
        Command::Bench {
            files,
            table_profiles,
            variants,
            repeats,
            seed,
            decompose,
            csv,
        } => {
            let mut inputs: Vec<BenchInput> = files.into_iter().map(BenchInput::File).collect();
            if table_profiles {
                inputs.extend(table_profile_inputs(seed));
            }
            if inputs.is_empty() {
                bail!("no inputs: pass graph files or --table-profiles");
            }
            let config = BenchConfig {
                variants: variant_list(&variants),
                repeats,
                decomposition: match decompose {
                    Decompose::Greedy => DecompositionChoice::Greedy,
                    Decompose::Min => DecompositionChoice::Minimum,
                },
            };
            let rows = run_bench(&inputs, &config);
            print!("{}", format_table(&rows));
            if let Some(path) = csv {
                write(&path, &format_csv(&rows))?;
            }
            if rows.iter().any(|r| r.is_error()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let invariant = e
                .downcast_ref::<pbdraw::Error>()
                .is_some_and(|e| e.is_invariant_violation());
            ExitCode::from(if invariant { 3 } else { 1 })
        }
    }
}
