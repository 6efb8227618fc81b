//! `bubblesim`: simulate operator circuits by contraction along a
//! bubbling, measure bubble widths, build approximate-QFT circuits and run
//! the self-check suites.
//!
//! Machine-readable results go to stdout as `key=value` lines; progress and
//! human-oriented tables go to stderr. Exit codes: 0 success, 1 failure,
//! 2 invalid input, 3 width cap exceeded.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use bubblesim_core::bench::{ladder_sweep, ops_slope};
use bubblesim_core::circuit::format::{emit_circuit, parse_circuit};
use bubblesim_core::circuit::oracle::{format_bits, index_to_bits, parse_bits};
use bubblesim_core::graph::{
    circuit_graph, exact_bubble_width, exact_path_width, greedy_bubbling, layered_bubbling, Bubbling,
    CircuitGraph, EXACT_VERTEX_CAP,
};
use bubblesim_core::qft::{build_approx_qft, qft_width_report, QftParams};
use bubblesim_core::tensor::{
    amplitude_with, choose_bubbling, choose_q_prime_bubbling, prob_answer_zero_with, BubblingStrategy,
    ContractOptions, TensorCircuit, DEFAULT_WIDTH_CAP,
};
use bubblesim_core::verify::{run_suite, VerifyOptions, SUITES};
use bubblesim_core::{circuit::MiddleTensor, Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "bubblesim", version, about = "Operator-circuit simulation by bubble-width contraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Contract a circuit: answer probability, or one amplitude with --y.
    Simulate(SimulateArgs),
    /// Bubble width of a graph or of a circuit's graph.
    Width(WidthArgs),
    /// Run the oracle suites.
    Verify(VerifyArgs),
    /// Operation counts against width on the ladder family.
    Bench(BenchArgs),
    /// Build the approximate QFT circuit, or report its widths.
    Qft(QftArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// auto, greedy, layered, exact, or a file holding a vertex order of G_Q.
    #[arg(long, default_value = "auto")]
    bubbling: String,
    /// Output bit string; switches to amplitude mode.
    #[arg(long)]
    y: Option<String>,
    #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
    max_width: usize,
    /// Expected accuracy; reported back, and checked for range.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the tensor circuit being contracted to this file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct WidthArgs {
    /// Edge-list file (`p <vertices> <edges>` then one `u v` per line).
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    graph: Option<PathBuf>,
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Write the narrowest bubbling found to this file.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only this suite (repeatable).
    #[arg(long)]
    suite: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Corrupt the system under test to check that the suites notice.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    min_width: usize,
    #[arg(long, default_value_t = 18)]
    max_width: usize,
    /// Two-qubit gates per ladder.
    #[arg(long, default_value_t = 60)]
    rungs: usize,
}

#[derive(Args)]
struct QftArgs {
    #[arg(long, required_unless_present = "report")]
    n: Option<usize>,
    #[arg(long, conflicts_with = "k")]
    epsilon: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    /// Input basis state, big-endian; defaults to all zeros.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Width report for a comma-separated list of n at --epsilon (0.01).
    #[arg(long, value_delimiter = ',')]
    report: Option<Vec<usize>>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WidthCapExceeded { .. } => 3,
            Error::Io(_) | Error::CapExceeded { .. } => 1,
            _ => 2,
        };
        let mut message = e.to_string();
        if code == 3 {
            message.push_str("; try --bubbling exact/greedy/layered, or raise --max-width");
        }
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Width(a) => width(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Qft(a) => qft(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes through a temporary sibling file so a failed run never leaves a
/// partial output behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| usage(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn check_tolerance(t: f64) -> CmdResult {
    if t > 0.0 && t <= 1e-3 {
        Ok(())
    } else {
        Err(usage(format!("tolerance {t} must be in (0, 1e-3]")))
    }
}

fn strategy(spec: &str) -> Result<BubblingStrategy, Failure> {
    Ok(match spec {
        "auto" => BubblingStrategy::Auto,
        "greedy" => BubblingStrategy::Greedy,
        "layered" => BubblingStrategy::Layered,
        "exact" => BubblingStrategy::Exact,
        path => BubblingStrategy::Given(Bubbling::parse(&read(Path::new(path))?)?),
    })
}

fn simulate(a: SimulateArgs) -> CmdResult {
    check_tolerance(a.tolerance)?;
    if a.max_width == 0 {
        return Err(usage("--max-width must be positive"));
    }
    let q = parse_circuit(&read(&a.circuit)?)?;
    let strat = strategy(&a.bubbling)?;
    let opts = ContractOptions { max_width: a.max_width };
    let start = Instant::now();
    match &a.y {
        Some(y) => {
            let bits = parse_bits(y)?;
            if bits.len() != q.num_outputs() {
                return Err(Error::BitLength {
                    expected: q.num_outputs(),
                    got: bits.len(),
                }
                .into());
            }
            let b = choose_bubbling(&q, &strat)?;
            let t = TensorCircuit::from_circuit(&q, &bits)?;
            let w = b.width(t.graph())?;
            let (amp, stats) = amplitude_with(&q, &bits, &b, opts)?;
            if let Some(path) = &a.dump {
                write_atomic(path, &t.dump())?;
            }
            println!("mode=amplitude");
            println!("y={}", format_bits(&bits));
            println!("amplitude_re={:.12e}", amp.re);
            println!("amplitude_im={:.12e}", amp.im);
            println!("probability={:.12e}", amp.norm_sqr());
            println!("width={w}");
            println!("peak_frontier={}", stats.peak_width);
            println!("ops={}", stats.ops);
            println!("vertices={}", t.graph().num_vertices());
        }
        None => {
            let b = choose_q_prime_bubbling(&q, &strat)?;
            let t = TensorCircuit::for_answer_probability(&q, MiddleTensor::Projector)?;
            let w = b.width(t.graph())?;
            let p = prob_answer_zero_with(&q, &b, opts, MiddleTensor::Projector)?;
            if let Some(path) = &a.dump {
                write_atomic(path, &t.dump())?;
            }
            println!("mode=p0");
            println!("p0={:.12}", p.p0);
            println!("p0_imag={:.3e}", p.imag);
            println!("width={w}");
            println!("peak_frontier={}", p.stats.peak_width);
            println!("ops={}", p.stats.ops);
            println!("vertices={}", t.graph().num_vertices());
        }
    }
    println!("tolerance={:e}", a.tolerance);
    eprintln!("contracted in {:.3} s", start.elapsed().as_secs_f64());
    Ok(())
}

fn width(a: WidthArgs) -> CmdResult {
    let mut rows: Vec<(&str, usize, Bubbling)> = Vec::new();
    let g: CircuitGraph = match (&a.graph, &a.circuit) {
        (Some(path), _) => CircuitGraph::parse_edge_list(&read(path)?)?,
        (None, Some(path)) => {
            let q = parse_circuit(&read(path)?)?;
            let g = circuit_graph(&q);
            if let Ok(b) = layered_bubbling(&q) {
                rows.push(("layered", b.width(&g)?, b));
            }
            g
        }
        (None, None) => return Err(usage("one of --graph or --circuit is required")),
    };
    if g.num_vertices() <= EXACT_VERTEX_CAP {
        let (w, b) = exact_bubble_width(&g)?;
        rows.insert(0, ("exact", w, b));
        let (pw, _) = exact_path_width(&g)?;
        println!("pathwidth={pw}");
    }
    let greedy = greedy_bubbling(&g);
    rows.push(("greedy", greedy.width(&g)?, greedy));
    println!("vertices={}", g.num_vertices());
    println!("edges={}", g.num_edges());
    println!("max_degree={}", g.max_degree());
    for (name, w, _) in &rows {
        println!("{name}_width={w}");
    }
    let (name, w, best) = rows.iter().min_by_key(|(_, w, _)| *w).expect("greedy row");
    println!("width={w}");
    println!("method={name}");
    println!("order={best}");
    if let Some(path) = &a.emit {
        write_atomic(path, &format!("{best}\n"))?;
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> CmdResult {
    check_tolerance(a.tolerance)?;
    let names: Vec<String> = if a.suite.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        a.suite.clone()
    };
    let opts = VerifyOptions {
        seed: a.seed,
        tolerance: a.tolerance,
        inject_fault: a.inject_fault,
        cases: None,
    };
    let mut failed = 0;
    for name in &names {
        let report = run_suite(name, &opts)?;
        println!(
            "suite={} status={} cases={} max_deviation={:.3e}",
            report.name,
            if report.passed() { "pass" } else { "fail" },
            report.cases,
            report.max_deviation
        );
        for (k, v) in &report.notes {
            println!("suite={} {k}={v}", report.name);
        }
        eprintln!("{} finished in {:.2} s", report.name, report.seconds);
        for f in &report.failures {
            eprintln!("  {}: {f}", report.name);
        }
        failed += usize::from(!report.passed());
    }
    println!("suites={} failed={failed}", names.len());
    if failed > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{failed} suite(s) failed"),
        });
    }
    Ok(())
}

fn bench(a: BenchArgs) -> CmdResult {
    if a.min_width < 2 || a.max_width < a.min_width {
        return Err(usage("need 2 <= --min-width <= --max-width"));
    }
    let rails: Vec<usize> = (a.min_width..=a.max_width).collect();
    let points = ladder_sweep(&rails, a.rungs, a.seed)?;
    eprintln!("{:>6} {:>14} {:>10}", "width", "ops", "seconds");
    for p in &points {
        println!("width={} ops={}", p.width, p.ops);
        eprintln!("{:>6} {:>14} {:>10.4}", p.width, p.ops, p.seconds);
    }
    println!("slope={:.4}", ops_slope(&points));
    // same width, twice the vertices
    let mid = (a.min_width + a.max_width) / 2;
    let single = ladder_sweep(&[mid], a.rungs, a.seed)?[0].ops;
    let double = ladder_sweep(&[mid], 2 * a.rungs, a.seed)?[0].ops;
    println!("doubling_width={mid} doubling_ops_ratio={:.4}", double as f64 / single as f64);
    Ok(())
}

fn qft(a: QftArgs) -> CmdResult {
    if let Some(ns) = &a.report {
        let eps = a.epsilon.unwrap_or(0.01);
        let rows = qft_width_report(ns, eps)?;
        eprintln!("{:>5} {:>4} {:>7} {:>9} {:>8} {:>7} {:>7}", "n", "k", "gates", "vertices", "layered", "greedy", "4k^2");
        for r in &rows {
            eprintln!(
                "{:>5} {:>4} {:>7} {:>9} {:>8} {:>7} {:>7}",
                r.n,
                r.k,
                r.gates,
                r.vertices,
                r.layered_width,
                r.greedy_width,
                4 * r.k * r.k
            );
            println!(
                "n={} k={} gates={} vertices={} layered_width={} greedy_width={} width_over_k2={:.4}",
                r.n,
                r.k,
                r.gates,
                r.vertices,
                r.layered_width,
                r.greedy_width,
                r.constant()
            );
        }
        return Ok(());
    }
    let n = a.n.ok_or_else(|| usage("--n is required"))?;
    let p = match (a.epsilon, a.k) {
        (_, Some(k)) => QftParams::with_k(n, k)?,
        (Some(e), None) => QftParams::from_epsilon(n, e)?,
        (None, None) => QftParams::with_k(n, n)?,
    };
    let x = match &a.x {
        Some(s) => parse_bits(s)?,
        None => index_to_bits(0, n),
    };
    let q = build_approx_qft(&p, &x)?;
    let g = circuit_graph(&q);
    println!("n={}", p.n);
    println!("k={}", p.k);
    println!("gates={}", q.gates().len());
    println!("vertices={}", g.num_vertices());
    println!("layered_width={}", layered_bubbling(&q)?.width(&g)?);
    if let Some(path) = &a.emit {
        write_atomic(path, &emit_circuit(&q))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
