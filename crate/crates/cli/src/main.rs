use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::json;

use kroman::generators;
use kroman::io::{parse_graph, serialize_graph};
use kroman::kmn::{formula, resolve, FormulaError};
use kroman::solvers::{auto_method, export_ilp, solve_with, Budget, Method, SolveError};
use kroman::suite::check_inequality_suite;
use kroman::sweep::{render_csv, render_markdown, summarize, verify, SweepSpec};
use kroman::transforms::{build_gadget, GadgetParams};
use kroman::weights::{is_valid, Variant};
use kroman::Graph;

mod ranges;

use ranges::{parse_range, parse_variants};

const EXIT_DISCREPANCY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "kroman", version, about = "Roman k-domination numbers: exact solvers and closed forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph exactly and print the result as JSON.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "roman")]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Evaluate the closed form on K_{m,n}.
    Formula {
        m: usize,
        n: usize,
        k: u32,
        variant: Variant,
        /// Narrow two-value and interval answers with the solver.
        #[arg(long)]
        resolve: bool,
    },
    /// Compare closed forms with the solver over a grid of (m, n, k).
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "all", value_parser = parse_variants)]
        variants: VariantList,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Render the closed-form table of one variant next to solver values.
    Table {
        variant: Variant,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Write a graph in edge-list format.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file; standard output when absent.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the inequality suite on one graph for k = 1..=kmax.
    Props {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Export the integer program in CPLEX LP format.
    Ilp {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "roman")]
        variant: Variant,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Oracle,
    Bnb,
    Multiset,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Stop after this many milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_ms.map(Duration::from_millis),
        }
    }
}

type Range<T> = std::ops::RangeInclusive<T>;
type VariantList = Vec<Variant>;

#[derive(Args)]
struct GridArgs {
    /// Smaller side, e.g. `1..4` or `3`.
    #[arg(long, default_value = "1..4", value_parser = parse_range::<usize>)]
    m: Range<usize>,
    #[arg(long, default_value = "1..6", value_parser = parse_range::<usize>)]
    n: Range<usize>,
    #[arg(long, default_value = "1..6", value_parser = parse_range::<u32>)]
    k: Range<u32>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("format").args(["json", "csv", "md"])))]
struct FormatArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    md: bool,
}

#[derive(Subcommand)]
enum Family {
    /// Complete bipartite graph, side A labelled first.
    Kmn { m: usize, n: usize },
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Empty { n: usize },
    /// Join of a path on m vertices with n independent vertices.
    Fan { m: usize, n: usize },
    /// K_{m, m^ell} with three pendants on each vertex of the small side.
    Gadget { m: usize, ell: u32 },
    /// Random G(n, p).
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to standard output, ignoring a reader that went away early.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(value: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("json values serialize")));
}

fn solve(graph: &Path, k: u32, variant: Variant, method: MethodArg, budget: Budget) -> Result<u8> {
    let g = read_graph(graph)?;
    let method = match method {
        MethodArg::Auto => auto_method(&g, k),
        MethodArg::Oracle => Method::Oracle,
        MethodArg::Bnb => Method::Bnb,
        MethodArg::Multiset => Method::Multiset,
    };
    let r = solve_with(&g, k, variant, method, budget)?;
    assert!(is_valid(&g, &r.witness, variant), "solver returned an invalid witness");
    print_json(&r.to_json());
    Ok(if r.exact { 0 } else { EXIT_BUDGET })
}

fn formula_cmd(m: usize, n: usize, k: u32, variant: Variant, narrow: bool) -> Result<u8> {
    let fr = formula(m, n, k, variant)?;
    let mut out = json!({
        "m": m,
        "n": n,
        "k": k,
        "variant": variant.name(),
        "formula": fr.to_json(),
    });
    if narrow {
        match resolve(m, n, k, variant, &fr) {
            Ok(v) => out["resolved"] = json!(v),
            Err(e @ FormulaError::Contradiction { .. }) => {
                eprintln!("error: {e}");
                print_json(&out);
                return Ok(EXIT_DISCREPANCY);
            }
            Err(e) => return Err(e.into()),
        }
    }
    print_json(&out);
    Ok(0)
}

fn sweep_spec(grid: &GridArgs, variants: Vec<Variant>, budget: Budget) -> Result<SweepSpec> {
    if grid.m.is_empty() || grid.n.is_empty() || grid.k.is_empty() {
        bail!("ranges must be nonempty");
    }
    if *grid.m.start() == 0 || *grid.n.start() == 0 || *grid.k.start() == 0 {
        bail!("m, n and k start at 1");
    }
    if grid.m.end() > grid.n.end() {
        bail!("the m range must not extend past the n range");
    }
    Ok(SweepSpec {
        m: grid.m.clone(),
        n: grid.n.clone(),
        k: grid.k.clone(),
        variants,
        budget,
    })
}

fn verify_cmd(grid: &GridArgs, variants: VariantList, jobs: Option<usize>, budget: Budget, format: &FormatArgs) -> Result<u8> {
    let spec = sweep_spec(grid, variants, budget)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let cells = pool.build()?.install(|| verify(&spec));
    let summary = summarize(&cells);
    if format.csv {
        emit(&render_csv(&cells));
    } else if format.md {
        emit(&render_markdown(&cells));
    } else {
        print_json(&json!({
            "summary": summary,
            "cells": cells.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        }));
    }
    for c in cells.iter().filter(|c| c.is_discrepancy()) {
        eprintln!(
            "discrepancy: {} K_{{{},{}}} k={}: formula {} ({}), solver {}",
            c.variant, c.m, c.n, c.k, c.formula, c.formula.case_label, c.solver_value
        );
    }
    Ok(if summary.mismatches > 0 { EXIT_DISCREPANCY } else { 0 })
}

fn table_cmd(variant: Variant, grid: &GridArgs, format: &FormatArgs) -> Result<u8> {
    let spec = sweep_spec(grid, vec![variant], Budget::unlimited())?;
    let cells = verify(&spec);
    if format.csv {
        emit(&render_csv(&cells));
    } else if format.json {
        print_json(&json!(cells.iter().map(|c| c.to_json()).collect::<Vec<_>>()));
    } else {
        emit(&render_markdown(&cells));
    }
    Ok(if summarize(&cells).mismatches > 0 { EXIT_DISCREPANCY } else { 0 })
}

fn gen_cmd(family: &Family, out: Option<&Path>) -> Result<u8> {
    let g = match *family {
        Family::Kmn { m, n } => generators::complete_bipartite(m, n)?.0,
        Family::Complete { n } => generators::complete(n),
        Family::Path { n } => generators::path(n),
        Family::Cycle { n } => generators::cycle(n)?,
        Family::Empty { n } => generators::empty(n),
        Family::Fan { m, n } => generators::fan(m, n),
        Family::Gadget { m, ell } => build_gadget(GadgetParams { m, ell })?,
        Family::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("p must lie in [0, 1]");
            }
            generators::gnp(n, p, &mut rand::rngs::StdRng::seed_from_u64(seed))
        }
    };
    write_output(out, &serialize_graph(&g))?;
    Ok(0)
}

fn props_cmd(graph: &Path, kmax: u32, budget: Budget) -> Result<u8> {
    if kmax == 0 {
        bail!("--kmax must be positive");
    }
    let g = read_graph(graph)?;
    let id = graph.file_stem().map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned());
    let report = check_inequality_suite(&g, &id, kmax, budget)?;
    print_json(&json!({
        "partial": report.partial,
        "skipped": report.skipped,
        "records": report.records,
    }));
    Ok(if !report.all_hold() {
        EXIT_DISCREPANCY
    } else if report.partial {
        EXIT_BUDGET
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            graph,
            k,
            variant,
            method,
            budget,
        } => solve(&graph, k, variant, method, budget.budget()),
        Command::Formula {
            m,
            n,
            k,
            variant,
            resolve,
        } => formula_cmd(m, n, k, variant, resolve),
        Command::Verify {
            grid,
            variants,
            jobs,
            budget,
            format,
        } => verify_cmd(&grid, variants, jobs, budget.budget(), &format),
        Command::Table { variant, grid, format } => table_cmd(variant, &grid, &format),
        Command::Gen { family, out } => gen_cmd(&family, out.as_deref()),
        Command::Props { graph, kmax, budget } => props_cmd(&graph, kmax, budget.budget()),
        Command::Ilp { graph, k, variant, out } => {
            if k == 0 {
                bail!("k must be positive");
            }
            let g = read_graph(&graph)?;
            write_output(out.as_deref(), &export_ilp(&g, k, variant))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = matches!(e.downcast_ref::<SolveError>(), Some(SolveError::BudgetExceeded { .. }));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}
