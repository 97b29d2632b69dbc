//! `stabmc`: load a protocol model, build its execution tree and check the
//! properties declared in it.
//!
//! Exit codes: 0 all properties true, 1 some property false, 2 usage, parse
//! or type error, 3 a limit was exceeded or some verdict is undefined (and
//! none is false).

mod replay;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stabmc_core::executor::{self, BuildError, ExecTree, Machine, DEFAULT_MAX_DEPTH, DEFAULT_MAX_NODES};
use stabmc_core::frontend::ast::Program;
use stabmc_core::frontend::{parse_source, typecheck, Diagnostic, TypedProgram};
use stabmc_core::logic::{check_property, EvalContext, Property, Verdict};
use stabmc_core::stabilizer::DEFAULT_SUPPORT_CAP;

pub use report::{FocusReport, PropertyReport, Report, Stats, Step};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "stabmc",
    version,
    about = "Model checker for quantum protocols in the stabilizer fragment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the execution tree and check the model's properties.
    Check(CheckArgs),
    /// Parse and type-check the model, then print it back normalized.
    Parse { model: PathBuf },
    /// Build the execution tree and write it as a DOT graph.
    Tree(TreeArgs),
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Longest execution path explored, in steps.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Largest execution tree built, in nodes.
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

impl LimitArgs {
    fn limits(self) -> executor::Limits {
        executor::Limits {
            max_depth: self.max_depth,
            max_nodes: self.max_nodes,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    model: PathBuf,
    #[command(flatten)]
    limits: LimitArgs,
    /// Largest k for which a support of 2^k basis states is enumerated.
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the execution tree as a DOT graph to this file.
    #[arg(long, value_name = "PATH")]
    dump_tree: Option<PathBuf>,
    /// Re-execute a trace saved from a JSON report instead of checking.
    #[arg(long, value_name = "PATH")]
    replay: Option<PathBuf>,
    /// Check only the I-th property (1-based, in declaration order).
    #[arg(long, value_name = "I")]
    property: Option<usize>,
}

#[derive(Args)]
struct TreeArgs {
    model: PathBuf,
    #[command(flatten)]
    limits: LimitArgs,
    /// Write the DOT graph here and print statistics instead.
    #[arg(long, value_name = "PATH")]
    dump_tree: Option<PathBuf>,
}

/// Run the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(&a, out, err),
        Command::Parse { model } => parse(&model, out, err),
        Command::Tree(a) => tree(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

/// An exit code with the message for the error stream.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn io_failure(what: &str, path: &Path, e: std::io::Error) -> Failure {
    usage(format!("error: cannot {what} {}: {e}", path.display()))
}

fn diagnostic_lines(path: &Path, diags: &[Diagnostic]) -> Vec<String> {
    diags
        .iter()
        .map(|d| {
            let sev = if d.is_error() { "error" } else { "warning" };
            format!("{}:{}: {sev}: {}", path.display(), d.loc, d.message)
        })
        .collect()
}

fn diagnostics(path: &Path, diags: &[Diagnostic]) -> String {
    diagnostic_lines(path, diags).join("\n")
}

struct Model {
    ast: Program,
    program: TypedProgram,
    warnings: Vec<String>,
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Model, Failure> {
    let source = std::fs::read_to_string(path).map_err(|e| io_failure("read", path, e))?;
    let ast = parse_source(&source).map_err(|d| usage(diagnostics(path, &d)))?;
    let checked = typecheck(&ast).map_err(|d| usage(diagnostics(path, &d)))?;
    let warnings = diagnostic_lines(path, &checked.warnings);
    for w in &warnings {
        let _ = writeln!(err, "{w}");
    }
    Ok(Model {
        ast,
        program: checked.program,
        warnings,
    })
}

fn parse(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let m = load(path, err)?;
    let _ = write!(out, "{}", m.ast);
    Ok(EXIT_OK)
}

fn build_failure(e: &BuildError, machine: &Machine<'_>) -> String {
    let path = e.path();
    let tail = path.len().saturating_sub(10);
    let mut msg = format!("error: {e} after {} steps; last actions:", path.len());
    for (i, a) in path.iter().enumerate().skip(tail) {
        msg.push_str(&format!("\n  {:>6}. {}", i + 1, machine.describe(a)));
    }
    msg
}

fn tree(a: &TreeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let m = load(&a.model, err)?;
    let machine = Machine::new(&m.program);
    let tree = machine
        .build_tree(a.limits.limits())
        .map_err(|e| Failure(EXIT_LIMIT, build_failure(&e, &machine)))?;
    let dot = tree.to_dot(&machine);
    match &a.dump_tree {
        Some(p) => {
            std::fs::write(p, dot).map_err(|e| io_failure("write", p, e))?;
            let _ = writeln!(out, "{}", report::stats_line(&Stats::of(&tree)));
        }
        None => {
            let _ = write!(out, "{dot}");
        }
    }
    Ok(EXIT_OK)
}

/// Exit code for a list of verdicts: false wins over undefined.
pub fn exit_code(verdicts: &[Verdict]) -> i32 {
    if verdicts.contains(&Verdict::False) {
        EXIT_FALSE
    } else if verdicts.iter().any(|v| matches!(v, Verdict::Undefined(_))) {
        EXIT_LIMIT
    } else {
        EXIT_OK
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let t_parse = Instant::now();
    let m = load(&a.model, err)?;
    let parse_ms = ms(t_parse);
    let total = m.program.properties.len();
    if let Some(i) = a.property {
        if i == 0 || i > total {
            return Err(usage(format!(
                "error: --property {i}: the model declares {total} properties"
            )));
        }
    }
    let ctx = EvalContext {
        program: &m.program,
        support_cap: a.support_cap,
    };
    let machine = Machine::new(&m.program);
    if let Some(trace) = &a.replay {
        return replay::replay(trace, a.property, &m.program, &machine, ctx, out);
    }

    let t_build = Instant::now();
    let tree = match machine.build_tree(a.limits.limits()) {
        Ok(t) => t,
        Err(e) => {
            if a.format == Format::Json {
                let _ = writeln!(out, "{}", report::limit_json(&m.program.name, &e, &machine));
            }
            return Err(Failure(EXIT_LIMIT, build_failure(&e, &machine)));
        }
    };
    let build_ms = ms(t_build);
    if let Some(p) = &a.dump_tree {
        std::fs::write(p, tree.to_dot(&machine)).map_err(|e| io_failure("write", p, e))?;
    }

    let t_check = Instant::now();
    let mut properties = Vec::new();
    let mut verdicts = Vec::new();
    for (i, p) in m.program.properties.iter().enumerate() {
        if a.property.is_some_and(|want| want != i + 1) {
            continue;
        }
        let prop = Property::from_typed(p);
        let result = check_property(&prop, &tree, ctx);
        properties.push(report::property_report(i + 1, &prop, &result, &tree, &machine));
        verdicts.push(result.verdict);
    }
    let check_ms = ms(t_check);

    let rep = Report {
        model: m.program.name.clone(),
        diagnostics: m.warnings.clone(),
        stats: Stats::of(&tree),
        properties,
    };
    match a.format {
        Format::Text => {
            let _ = write!(out, "{}", report::text(&rep));
            let _ = writeln!(
                out,
                "time: parse {parse_ms} ms, build {build_ms} ms, check {check_ms} ms"
            );
        }
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string(&rep).expect("report serializes"));
            let timings = serde_json::json!({
                "timings_ms": { "parse": parse_ms, "build": build_ms, "check": check_ms }
            });
            let _ = writeln!(out, "{timings}");
        }
    }
    Ok(exit_code(&verdicts))
}

/// Step list of a root-to-node path: the child ordinal taken at each node
/// and the action's description.
pub fn steps(tree: &ExecTree, machine: &Machine<'_>, path: &[usize]) -> Vec<Step> {
    path.iter()
        .skip(1)
        .map(|&n| {
            let node = &tree.nodes[n];
            let parent = node.parent.expect("non-root node");
            Step {
                step: n - tree.nodes[parent].first_child,
                action: machine.describe(node.action.as_ref().expect("edge label")),
            }
        })
        .collect()
}
