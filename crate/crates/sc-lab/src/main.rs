//! `sc-lab`: build, measure and verify combined catenation/boolean
//! constructions from the command line.
//!
//! Exit codes: 0 when everything matched, 2 when a measured value missed
//! its prediction, 1 on any error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sc_lab::bounds::{bound, BoundQuery};
use sc_lab::construct::{build_tree_capped, BoolOp, OpTree};
use sc_lab::dfa::Dfa;
use sc_lab::harness::{
    report, search, sweep, verify_capped, ReportFormat, SearchSpace, DEFAULT_MAX_STATES,
};
use sc_lab::json;
use sc_lab::tableau::{
    find_rectangles, find_right_triangles, saturate_union, saturate_xor, xor_counterexample,
    Tableau,
};
use sc_lab::witness::{family, Shape, TransformRole};
use sc_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "sc-lab", version, about = "State-complexity lab for combined operations")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the three witness component DFAs of a shape.
    Witness(WitnessArgs),
    /// Build a combined DFA from an expression tree and operand files.
    Build(BuildArgs),
    /// Print the state complexity of a DFA file.
    Sc(ScArgs),
    /// Print the predicted state complexity of a combination.
    Bound(BoundArgs),
    /// Measure one witness instance against its predicted bound.
    Verify(VerifyArgs),
    /// Measure a whole (m,n,p) grid.
    Sweep(SweepArgs),
    /// Enumerate role assignments and rank them by measured size.
    Search(SearchArgs),
    /// Saturate a tableau and list its rectangles and right triangles.
    Tableau(TableauArgs),
    /// Run the symmetric-difference counterexample at (3,3,4).
    XorDemo,
}

#[derive(Args)]
struct SizeArgs {
    #[arg(short)]
    m: usize,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    p: usize,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_parser = Shape::parse)]
    shape: Shape,
    #[command(flatten)]
    sizes: SizeArgs,
    /// Write operand-0.json, operand-1.json, operand-2.json here instead
    /// of printing a JSON array.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Expression tree, e.g. "cat(0,and(1,2))"; leaves index the files.
    #[arg(long)]
    tree: String,
    /// Operand DFA files, one per tree leaf.
    #[arg(required = true)]
    operands: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScArgs {
    file: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_parser = Shape::parse)]
    shape: Shape,
    /// Comma-separated connectives, e.g. "or" or "or,xor".
    #[arg(long, value_delimiter = ',')]
    ops: Vec<String>,
    #[command(flatten)]
    sizes: SizeArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = Shape::parse)]
    shape: Shape,
    #[arg(long, value_delimiter = ',')]
    ops: Vec<String>,
    #[command(flatten)]
    sizes: SizeArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    #[arg(long, default_value = "csv", value_parser = ReportFormat::parse)]
    format: ReportFormat,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = Shape::parse)]
    shape: Shape,
    #[arg(long, value_delimiter = ',')]
    ops: Vec<String>,
    /// Inclusive size range for every axis, e.g. "3..6".
    #[arg(long)]
    range: Option<String>,
    /// Per-axis overrides of --range.
    #[arg(long)]
    m_range: Option<String>,
    #[arg(long)]
    n_range: Option<String>,
    #[arg(long)]
    p_range: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    #[arg(long, default_value = "csv", value_parser = ReportFormat::parse)]
    format: ReportFormat,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_parser = Shape::parse)]
    shape: Shape,
    #[arg(long, value_delimiter = ',')]
    ops: Vec<String>,
    #[command(flatten)]
    sizes: SizeArgs,
    /// Alphabet size, 1 to 4 (default: the shape's witness alphabet).
    #[arg(long)]
    letters: Option<usize>,
    /// Stop after this many measured assignments.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// How many ranked assignments to print.
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Args)]
struct TableauArgs {
    /// Saturation closure to apply.
    #[arg(long, value_parser = ["union", "xor"])]
    op: String,
    /// Grid size as "rows,cols".
    #[arg(long)]
    grid: String,
    /// Marked cells as "j:k,j:k,..." (default: none).
    #[arg(long, default_value = "")]
    cells: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let ok = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Witness(args) => cmd_witness(args),
        Command::Build(args) => cmd_build(args),
        Command::Sc(args) => cmd_sc(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Search(args) => cmd_search(args),
        Command::Tableau(args) => cmd_tableau(args),
        Command::XorDemo => cmd_xor_demo(),
    }
}

fn parse_ops(texts: &[String]) -> Result<Vec<BoolOp>> {
    texts.iter().map(|t| BoolOp::parse(t)).collect()
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad range \"{text}\" (expected \"lo..hi\", inclusive)"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_witness(args: WitnessArgs) -> Result<u8> {
    let fam = family(args.shape, args.sizes.m, args.sizes.n, args.sizes.p)?;
    let dfas = fam.build()?;
    match args.out {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            for (i, d) in dfas.iter().enumerate() {
                let path = dir.join(format!("operand-{i}.json"));
                json::write_file(d, &path)?;
                println!("wrote {} ({})", path.display(), fam.specs[i]);
            }
        }
        None => {
            let values: Vec<serde_json::Value> = dfas
                .iter()
                .map(|d| serde_json::from_str(&json::to_json(d)).expect("own output parses"))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&values).expect("values serialize")
            );
        }
    }
    Ok(0)
}

fn load_operands(paths: &[PathBuf]) -> Result<Vec<Dfa>> {
    paths.iter().map(|p| json::read_file(p)).collect()
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    let tree = OpTree::parse(&args.tree)?;
    let operands = load_operands(&args.operands)?;
    let refs: Vec<&Dfa> = operands.iter().collect();
    let built = build_tree_capped(&tree, &refs, args.max_states)?;
    let text = json::to_json(&built.dfa);
    match args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_sc(args: ScArgs) -> Result<u8> {
    let dfa = json::read_file(&args.file)?;
    println!("{}", dfa.state_complexity());
    Ok(0)
}

fn cmd_bound(args: BoundArgs) -> Result<u8> {
    let ops = parse_ops(&args.ops)?;
    let query = BoundQuery::new(args.shape, ops, args.sizes.m, args.sizes.n, args.sizes.p)?;
    println!("{}", bound(&query));
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let ops = parse_ops(&args.ops)?;
    let row = verify_capped(
        args.shape,
        &ops,
        args.sizes.m,
        args.sizes.n,
        args.sizes.p,
        args.max_states,
    )?;
    print!("{}", report(std::slice::from_ref(&row), args.format));
    Ok(if row.matched { 0 } else { 2 })
}

fn cmd_sweep(args: SweepArgs) -> Result<u8> {
    let ops = parse_ops(&args.ops)?;
    let axis = |over: &Option<String>| -> Result<(usize, usize)> {
        match (over, &args.range) {
            (Some(text), _) | (None, Some(text)) => parse_range(text),
            (None, None) => Err(Error::Parse(
                "no size range given (use --range or all of --m-range/--n-range/--p-range)".into(),
            )),
        }
    };
    let rows = sweep(
        args.shape,
        &ops,
        axis(&args.m_range)?,
        axis(&args.n_range)?,
        axis(&args.p_range)?,
        args.max_states,
    );
    let text = report(&rows, args.format);
    match args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    if rows.iter().any(|r| r.error.is_some()) {
        eprintln!("error: one or more grid points failed; see the report");
        return Ok(1);
    }
    Ok(if rows.iter().all(|r| r.matched) { 0 } else { 2 })
}

fn role_code(roles: &[TransformRole]) -> String {
    roles
        .iter()
        .map(|r| match r {
            TransformRole::Cycle => 'C',
            TransformRole::Transposition01 => 'T',
            TransformRole::Contraction10 => 'K',
            TransformRole::Identity => '.',
        })
        .collect()
}

fn cmd_search(args: SearchArgs) -> Result<u8> {
    let ops = parse_ops(&args.ops)?;
    let target = BoundQuery::new(args.shape, ops, args.sizes.m, args.sizes.n, args.sizes.p)?;
    let letters = args.letters.unwrap_or(args.shape.alphabet().len());
    let alphabet: Vec<String> = ["a", "b", "c", "d"]
        .iter()
        .take(letters)
        .map(|s| s.to_string())
        .collect();
    if alphabet.len() != letters {
        return Err(Error::BadQuery(format!(
            "search alphabets carry 1 to 4 letters, got {letters}"
        )));
    }
    let space = SearchSpace::exhaustive(alphabet, target)?;
    let outcome = search(&space, args.budget, args.max_states)?;

    match outcome.target_value {
        Some(v) => println!("target: {v}"),
        None => println!("target: none (no closed form)"),
    }
    println!(
        "assignments: {} raw, {} measured, {} invalid{}",
        space.assignment_count(),
        outcome.evaluated,
        outcome.skipped_invalid,
        if outcome.complete {
            ""
        } else {
            " (budget exhausted, results partial)"
        }
    );
    let attained = outcome.hits.iter().filter(|h| h.attains_target).count();
    println!("attaining the target: {attained}");
    for (rank, hit) in outcome.hits.iter().take(args.top).enumerate() {
        println!(
            "{:>3}. measured {:>6}  reachable {:>6}  roles {}/{}/{}{}",
            rank + 1,
            hit.measured,
            hit.reachable,
            role_code(&hit.roles[0]),
            role_code(&hit.roles[1]),
            role_code(&hit.roles[2]),
            if hit.attains_target { "  *" } else { "" }
        );
    }
    Ok(0)
}

fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>> {
    let bad = |part: &str| Error::Parse(format!("bad cell \"{part}\" (expected \"row:col\")"));
    text.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            let (j, k) = part.split_once(':').ok_or_else(|| bad(part))?;
            let j = j.trim().parse().map_err(|_| bad(part))?;
            let k = k.trim().parse().map_err(|_| bad(part))?;
            Ok((j, k))
        })
        .collect()
}

fn cmd_tableau(args: TableauArgs) -> Result<u8> {
    let bad_grid = || Error::Parse(format!("bad grid \"{}\" (expected \"rows,cols\")", args.grid));
    let (rows, cols) = args.grid.split_once(',').ok_or_else(bad_grid)?;
    let rows: usize = rows.trim().parse().map_err(|_| bad_grid())?;
    let cols: usize = cols.trim().parse().map_err(|_| bad_grid())?;
    if rows == 0 || cols == 0 {
        return Err(bad_grid());
    }
    let cells = parse_cells(&args.cells)?;
    for &(j, k) in &cells {
        if j >= rows || k >= cols {
            return Err(Error::Parse(format!(
                "cell ({j},{k}) outside the {rows}x{cols} grid"
            )));
        }
    }
    let t = Tableau::from_cells(rows, cols, &cells);
    let saturated = match args.op.as_str() {
        "union" => saturate_union(&t),
        _ => saturate_xor(&t),
    };

    println!("input ({} marked):", t.marked_count());
    println!("{}", t.render());
    println!("saturated under {} ({} marked):", args.op, saturated.marked_count());
    println!("{}", saturated.render());
    let rectangles = find_rectangles(&t);
    if rectangles.is_empty() {
        println!("rectangles: none");
    } else {
        println!("rectangles:");
        for r in rectangles {
            println!(
                "  rows ({},{}) x cols ({},{})",
                r.rows.0, r.rows.1, r.cols.0, r.cols.1
            );
        }
    }
    let triangles = find_right_triangles(&t);
    if triangles.is_empty() {
        println!("right triangles: none");
    } else {
        println!("right triangles:");
        for tri in triangles {
            println!(
                "  corner ({},{}) row-mate ({},{}) col-mate ({},{}) missing ({},{})",
                tri.corner.0,
                tri.corner.1,
                tri.row_mate.0,
                tri.row_mate.1,
                tri.col_mate.0,
                tri.col_mate.1,
                tri.missing.0,
                tri.missing.1
            );
        }
    }
    Ok(0)
}

fn cmd_xor_demo() -> Result<u8> {
    let r = xor_counterexample()?;
    println!("A·(B⊕C) on the three-letter family at (3,3,4)");
    println!("upper bound: {}", r.upper_bound);
    println!("reachable:   {}", r.reachable);
    println!("measured:    {} (strictly below the bound)", r.measured);
    println!();
    println!(
        "states {} and {} are distinct reachable final states in class {}:",
        r.full_state, r.six_state, r.shared_class
    );
    println!("state {} carries the full tableau:", r.full_state);
    println!("{}", r.full_tableau.render());
    println!("state {} carries the six-cell tableau:", r.six_state);
    println!("{}", r.six_tableau.render());
    println!("labels:");
    println!("  {}", r.full_label);
    println!("  {}", r.six_label);
    Ok(0)
}
