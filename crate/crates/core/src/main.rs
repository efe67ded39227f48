use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use causex::emit::{emit_asp, emit_dot, emit_json, Status};
use causex::model::{parse_kb_bytes, parse_scenario_bytes, Diagnostic, KnowledgeBase, Scenario};
use causex::pipeline::{Options, Pipeline};
use causex::saturation::ExplanationSet;
use causex::Error;

const USAGE: u8 = 1;
const INPUT: u8 = 2;
const CAP: u8 = 3;
const UNSAT: u8 = 4;

/// Derive causal explanations from causal, IS-A and background premises.
#[derive(Parser, Debug)]
#[command(name = "causex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug)]
struct Flags {
    /// Disable eager weak simplification during saturation.
    #[arg(long, global = true)]
    raw: bool,
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include self-explanations (x explains x).
    #[arg(long, global = true)]
    show_self: bool,
    /// Abort with status 3 once more atoms than this are derived.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_atoms: usize,
    /// Print the intermediate relations before the results.
    #[arg(long, global = true)]
    stage_dump: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every derivable explanation atom.
    Derive { kb: PathBuf },
    /// Only the weakest condition sets per (explainer, explained) pair.
    Optimize { kb: PathBuf },
    /// Split the optimized atoms into verified and suppressed.
    Verify {
        kb: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        /// Check the full derived set instead of the optimized one.
        #[arg(long)]
        derived: bool,
    },
    /// Write <stem>.gen.lp, <stem>.opt.lp and <stem>.ver.lp.
    EmitAsp {
        kb: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a DOT graph of the premises and the optimal explanations.
    Dot {
        kb: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    diagnostics: Vec<String>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            diagnostics: vec![message.into()],
        }
    }

    fn diagnostics(path: &Path, diags: &[Diagnostic]) -> Self {
        Self {
            code: INPUT,
            diagnostics: diags
                .iter()
                .map(|d| format!("{}:{d}", path.display()))
                .collect(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Diagnostics(d) => Self {
                code: INPUT,
                diagnostics: d.iter().map(|d| d.to_string()).collect(),
            },
            Error::UnsatisfiableTheory => Self::new(UNSAT, format!("error: {e}")),
            Error::AtomCap { .. } => Self::new(CAP, format!("error: {e}")),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::new(INPUT, format!("{}: error: {e}", path.display())))
}

fn warn(path: &Path, warnings: &[Diagnostic]) {
    for w in warnings {
        eprintln!("{}:{w}", path.display());
    }
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Failure> {
    let parsed = parse_kb_bytes(&read(path)?).map_err(|d| Failure::diagnostics(path, &d))?;
    warn(path, &parsed.warnings);
    Ok(parsed.value)
}

fn load_scenario(path: &Path) -> Result<Scenario, Failure> {
    let parsed = parse_scenario_bytes(&read(path)?).map_err(|d| Failure::diagnostics(path, &d))?;
    warn(path, &parsed.warnings);
    Ok(parsed.value)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(USAGE, format!("{}: error: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "kb".into())
}

fn visible(atoms: &ExplanationSet, flags: &Flags) -> ExplanationSet {
    if flags.show_self {
        atoms.clone()
    } else {
        atoms.without_self_explanations()
    }
}

fn report(atoms: &ExplanationSet, status: Status, flags: &Flags) -> String {
    let atoms = visible(atoms, flags);
    if flags.json {
        emit_json(atoms.iter().map(|a| (a, status)))
    } else {
        atoms.iter().map(|a| format!("{a}\n")).collect()
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let flags = &cli.flags;
    let options = Options {
        raw: flags.raw,
        max_atoms: flags.max_atoms,
    };
    let kb_path = match &cli.command {
        Command::Derive { kb }
        | Command::Optimize { kb }
        | Command::Verify { kb, .. }
        | Command::EmitAsp { kb, .. }
        | Command::Dot { kb, .. } => kb,
    };
    let kb = load_kb(kb_path)?;

    if let Command::EmitAsp { out, .. } = &cli.command {
        let bundle = emit_asp(&kb);
        let base = stem(kb_path);
        fs::create_dir_all(out)
            .map_err(|e| Failure::new(USAGE, format!("{}: error: {e}", out.display())))?;
        write(&out.join(format!("{base}.gen.lp")), &bundle.generation)?;
        write(&out.join(format!("{base}.opt.lp")), &bundle.optimization)?;
        write(&out.join(format!("{base}.ver.lp")), &bundle.verification)?;
        return Ok(String::new());
    }

    let pipeline = Pipeline::run(kb, &options)?;
    let mut stdout = if flags.stage_dump {
        pipeline.stage_dump()
    } else {
        String::new()
    };

    match &cli.command {
        Command::Derive { .. } => stdout.push_str(&report(pipeline.derived(), Status::Derived, flags)),
        Command::Optimize { .. } => {
            stdout.push_str(&report(&pipeline.optimized(), Status::Optimal, flags))
        }
        Command::Verify {
            scenario, derived, ..
        } => {
            let sc = load_scenario(scenario)?;
            let input = if *derived {
                pipeline.derived().clone()
            } else {
                pipeline.optimized()
            };
            let v = pipeline.verify(&visible(&input, flags), &sc)?;
            if flags.json {
                let records = v
                    .verified
                    .iter()
                    .map(|a| (a, Status::Verified))
                    .chain(v.suppressed.iter().map(|a| (a, Status::Suppressed)));
                stdout.push_str(&emit_json(records));
            } else {
                for a in &v.verified {
                    stdout.push_str(&format!("{a}\n"));
                }
                for a in &v.suppressed {
                    stdout.push_str(&format!("% suppressed: {a}\n"));
                }
            }
        }
        Command::Dot { out, .. } => {
            let atoms = visible(&pipeline.optimized(), flags);
            write(out, &emit_dot(&atoms, pipeline.kb()))?;
        }
        Command::EmitAsp { .. } => unreachable!("handled above"),
    }
    Ok(stdout)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(USAGE);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            for d in &f.diagnostics {
                eprintln!("{d}");
            }
            ExitCode::from(f.code)
        }
    }
}
