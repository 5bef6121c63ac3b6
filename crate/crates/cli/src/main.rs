//! `cosetsat`: classify, solve, and compile hardness reductions for
//! coset-meets-power problems from the command line.
//!
//! Exit codes: 0 yes or success, 1 no, 2 parse or contract error, 3 budget
//! exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cosetsat::compiler::{apply_pipeline, compile_hardness_p, compile_hardness_pi, selfcheck, SelfCheck};
use cosetsat::format;
use cosetsat::oracle::DEFAULT_BUDGET;
use cosetsat::random::{random_graph, random_group, random_instance, random_subset};
use cosetsat::reductions::Stage;
use cosetsat::selftest::run_selftest;
use cosetsat::{
    classify_p, classify_pi, is_coset, oracle_solve, solve_p_coset, solve_pi_theta, theta, verify_certificate,
    Certificate, Decision, FiniteAbelianGroup, OracleAnswer, ProblemInstance, SubsetS, Verdict,
};

/// Like `println!`, but a closed stdout (e.g. piped into `head`) is not fatal.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! say_raw {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "cosetsat", version, about = "Coset-meets-power problems over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the complexity of P (or Π with --pi) for a subset.
    Classify {
        #[arg(long)]
        group: String,
        /// A literal like "{0,1}" or a file.
        #[arg(long)]
        subset: String,
        #[arg(long)]
        pi: bool,
    },
    /// Print θ(S).
    Theta {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subset: String,
    },
    /// Decide an instance, with the polynomial solver when the subset allows it.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        subset: String,
        /// Treat the instance as a subgroup instance (x* must be zero).
        #[arg(long)]
        pi: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Decide an instance by exhaustive search.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        subset: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Apply a single pipeline step to an instance or a graph.
    Reduce {
        /// A `step: ...` line, literally or in a file.
        #[arg(long)]
        step: String,
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        instance: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Certificate for the input instance, carried through the step.
        #[arg(long, requires = "instance")]
        cert: Option<PathBuf>,
        /// 3-colouring of the input graph, carried through the step.
        #[arg(long, requires = "graph")]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Compile a reduction from 3-colourability for an NP-complete subset.
    CompileHardness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        pi: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_selfcheck: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Run a pipeline on a graph.
    Apply {
        #[arg(long)]
        pipeline: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// A proper 3-colouring; the matching certificate is emitted.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, requires = "coloring")]
        cert_out: Option<PathBuf>,
    },
    /// Check a certificate: exit 0 if it witnesses yes, 1 otherwise.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Write a random instance, subset or graph.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenKind::Instance)]
        kind: GenKind,
        /// Group to use; random of order at most --max-order if absent.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_order: u64,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 3)]
        gens: usize,
        #[arg(long)]
        pi: bool,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite at reduced sizes.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Instance,
    Subset,
    Graph,
}

/// A failure that maps onto an exit code.
#[derive(Debug)]
enum Failure {
    Contract(String),
    Budget(String),
}

impl From<cosetsat::Error> for Failure {
    fn from(e: cosetsat::Error) -> Self {
        Failure::Contract(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Contract(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Contract(format!("{}: {e}", path.display())))
}

fn contract(msg: impl Into<String>) -> Failure {
    Failure::Contract(msg.into())
}

/// `--subset` takes a braced literal or a path.
fn load_subset(arg: &str, g: &FiniteAbelianGroup) -> Result<SubsetS, Failure> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read(Path::new(arg))? };
    Ok(format::parse_subset(&text, g)?)
}

fn load_instance(path: &Path) -> Result<ProblemInstance, Failure> {
    Ok(format::parse_instance(&read(path)?)?)
}

fn report_answer(answer: OracleAnswer, budget: u64) -> Outcome {
    match answer {
        OracleAnswer::Yes(c) => {
            say_raw!("yes\n{}", format::write_certificate(&c));
            Ok(0)
        }
        OracleAnswer::No => {
            say!("no");
            Ok(1)
        }
        OracleAnswer::BudgetExceeded => Err(Failure::Budget(format!("search budget of {budget} nodes exceeded"))),
    }
}

fn report_decision(d: Decision) -> Outcome {
    report_answer(
        match d {
            Decision::Yes(c) => OracleAnswer::Yes(c),
            Decision::No => OracleAnswer::No,
        },
        0,
    )
}

fn classify(group: &str, subset: &str, pi: bool) -> Outcome {
    let g = format::parse_group(group)?;
    let s = load_subset(subset, &g)?;
    let c = if pi { classify_pi(&s)? } else { classify_p(&s)? };
    say!("{c}");
    Ok(0)
}

fn solve(instance: &Path, subset: &str, pi: bool, budget: u64) -> Outcome {
    let inst = load_instance(instance)?;
    let s = load_subset(subset, inst.group())?;
    if pi && !inst.is_pi() {
        return Err(contract("--pi given but x* is not zero"));
    }
    if s.is_empty() || is_coset(&s)?.is_some() {
        return report_decision(solve_p_coset(&inst, &s)?);
    }
    if inst.is_pi() && classify_pi(&s)?.verdict == Verdict::InP {
        return report_decision(solve_pi_theta(&inst, &s)?);
    }
    report_answer(oracle_solve(&inst, &s, budget)?, budget)
}

fn oracle(instance: &Path, subset: &str, budget: u64) -> Outcome {
    let inst = load_instance(instance)?;
    let s = load_subset(subset, inst.group())?;
    report_answer(oracle_solve(&inst, &s, budget)?, budget)
}

struct ReduceArgs<'a> {
    step: &'a str,
    instance: Option<&'a Path>,
    graph: Option<&'a Path>,
    cert: Option<&'a Path>,
    coloring: Option<&'a Path>,
    out: &'a Path,
    cert_out: Option<&'a Path>,
}

fn reduce(a: ReduceArgs<'_>) -> Outcome {
    let step_text = if a.step.trim_start().starts_with("step:") { a.step.to_string() } else { read(Path::new(a.step))? };
    let step = format::parse_step(&step_text)?;
    let stage = match (a.instance, a.graph) {
        (Some(p), _) => {
            let inst = load_instance(p)?;
            let cert = a.cert.map(|c| read(c).and_then(|t| Ok(format::parse_certificate(&t)?))).transpose()?;
            Stage::Instance { inst, cert }
        }
        (None, Some(p)) => {
            let graph = format::parse_graph(&read(p)?)?;
            let coloring = a.coloring.map(|c| read(c).and_then(|t| Ok(format::parse_coloring(&t)?))).transpose()?;
            Stage::Graph { graph, coloring }
        }
        (None, None) => return Err(contract("one of --instance or --graph is required")),
    };
    match step.apply(stage)? {
        Stage::Instance { inst, cert } => {
            write(a.out, &format::write_instance(&inst))?;
            emit_certificate(cert.as_ref(), a.cert_out)?;
        }
        Stage::Graph { graph, coloring } => {
            write(a.out, &format::write_graph(&graph))?;
            if let (Some(c), Some(path)) = (coloring, a.cert_out) {
                write(path, &format::write_coloring(&c))?;
            }
        }
    }
    Ok(0)
}

fn emit_certificate(cert: Option<&Certificate>, path: Option<&Path>) -> Result<(), Failure> {
    match (cert, path) {
        (Some(c), Some(p)) => write(p, &format::write_certificate(c)),
        (Some(c), None) => {
            say_raw!("{}", format::write_certificate(c));
            Ok(())
        }
        (None, _) => Ok(()),
    }
}

fn compile_hardness(group: &str, subset: &str, pi: bool, out: &Path, check: bool, budget: u64) -> Outcome {
    let g = format::parse_group(group)?;
    let s = load_subset(subset, &g)?;
    let c = if pi { classify_pi(&s)? } else { classify_p(&s)? };
    if c.verdict == Verdict::InP {
        return Err(contract(format!("no hardness pipeline: {c}")));
    }
    let p = if pi { compile_hardness_pi(&s)? } else { compile_hardness_p(&s)? };
    if check {
        if let SelfCheck::BudgetExceeded(graph) = selfcheck(&p, budget)? {
            return Err(Failure::Budget(format!(
                "self-check on {graph} exceeded {budget} nodes; raise --budget or pass --no-selfcheck"
            )));
        }
    }
    write(out, &format::write_pipeline(&p))?;
    say!("{} steps, {} assertions", p.steps.len(), p.trace.len());
    Ok(0)
}

fn apply(pipeline: &Path, graph: &Path, out: &Path, coloring: Option<&Path>, cert_out: Option<&Path>) -> Outcome {
    let p = format::parse_pipeline(&read(pipeline)?)?;
    let g = format::parse_graph(&read(graph)?)?;
    let colors = coloring.map(|c| read(c).and_then(|t| Ok(format::parse_coloring(&t)?))).transpose()?;
    let (inst, cert) = apply_pipeline(&p, &g, colors.as_deref())?;
    write(out, &format::write_instance(&inst))?;
    emit_certificate(cert.as_ref(), cert_out)?;
    Ok(0)
}

fn verify(instance: &Path, subset: &str, cert: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let s = load_subset(subset, inst.group())?;
    let c = format::parse_certificate(&read(cert)?)?;
    if c.0.len() != inst.hgens().len() {
        return Err(contract(format!("certificate has {} entries, instance has {} generators", c.0.len(), inst.hgens().len())));
    }
    if verify_certificate(&inst, &s, &c)? {
        say!("valid");
        Ok(0)
    } else {
        say!("invalid");
        Ok(1)
    }
}

struct GenArgs<'a> {
    seed: u64,
    kind: GenKind,
    group: Option<&'a str>,
    max_order: u64,
    t: usize,
    gens: usize,
    pi: bool,
    vertices: usize,
    edge_prob: f64,
    out: Option<&'a Path>,
}

fn gen(a: GenArgs<'_>) -> Outcome {
    if !(0.0..=1.0).contains(&a.edge_prob) {
        return Err(contract("--edge-prob must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let group = |rng: &mut ChaCha8Rng| -> Result<FiniteAbelianGroup, Failure> {
        match a.group {
            Some(m) => Ok(format::parse_group(m)?),
            None if a.max_order >= 2 => Ok(random_group(rng, a.max_order)),
            None => Err(contract("--max-order must be at least 2")),
        }
    };
    let body = match a.kind {
        GenKind::Instance => {
            let g = group(&mut rng)?;
            format::write_instance(&random_instance(&mut rng, &g, a.t, a.gens, a.pi))
        }
        GenKind::Subset => {
            let g = group(&mut rng)?;
            format!("# group: {}\n{}", format::write_group(&g), format::write_subset(&random_subset(&mut rng, &g)))
        }
        GenKind::Graph => {
            let n = if a.vertices == 0 { rng.gen_range(1..=8) } else { a.vertices };
            format::write_graph(&random_graph(&mut rng, n, a.edge_prob))
        }
    };
    let text = format!("# seed: {}\n{body}", a.seed);
    match a.out {
        Some(p) => write(p, &text)?,
        None => say_raw!("{text}"),
    }
    Ok(0)
}

fn selftest(seed: u64) -> Outcome {
    let reports = run_selftest(seed)?;
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        say!("{status} {} ({} cases)", r.name, r.cases);
        for f in &r.failures {
            say!("  {f}");
        }
        ok &= r.passed();
    }
    Ok(if ok { 0 } else { 1 })
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Classify { group, subset, pi } => classify(&group, &subset, pi),
        Command::Theta { group, subset } => {
            let g = format::parse_group(&group)?;
            say_raw!("{}", format::write_subset(&theta(&load_subset(&subset, &g)?)));
            Ok(0)
        }
        Command::Solve { instance, subset, pi, budget } => solve(&instance, &subset, pi, budget),
        Command::Oracle { instance, subset, budget } => oracle(&instance, &subset, budget),
        Command::Reduce { step, instance, graph, cert, coloring, out, cert_out } => reduce(ReduceArgs {
            step: &step,
            instance: instance.as_deref(),
            graph: graph.as_deref(),
            cert: cert.as_deref(),
            coloring: coloring.as_deref(),
            out: &out,
            cert_out: cert_out.as_deref(),
        }),
        Command::CompileHardness { group, subset, pi, out, no_selfcheck, budget } => {
            compile_hardness(&group, &subset, pi, &out, !no_selfcheck, budget)
        }
        Command::Apply { pipeline, graph, out, coloring, cert_out } => {
            apply(&pipeline, &graph, &out, coloring.as_deref(), cert_out.as_deref())
        }
        Command::Verify { instance, subset, cert } => verify(&instance, &subset, &cert),
        Command::Gen { seed, kind, group, max_order, t, gens, pi, vertices, edge_prob, out } => gen(GenArgs {
            seed,
            kind,
            group: group.as_deref(),
            max_order,
            t,
            gens,
            pi,
            vertices,
            edge_prob,
            out: out.as_deref(),
        }),
        Command::Selftest { seed } => selftest(seed),
    }
}

fn run(args: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            say_raw!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            2
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            3
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
