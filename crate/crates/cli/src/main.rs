use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use safe_bribery::io::{
    check_report, gen_report, is_safe_report, parse_instance, solve_report, winner_report, CommandError, Method,
    ParseError, Report,
};
use safe_bribery::reductions::{ConstructionKind, X3CInstance};
use safe_bribery::{BriberyInstance, VotingRule};

#[derive(Parser)]
#[command(name = "safe-bribery", version, about = "Safety checks and solvers for bribery under partial compliance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMethod {
    Auto,
    Oracle,
    Flow,
    Greedy,
    Xp,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Auto,
    Flow,
    Greedy,
    Xp,
    Enum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Against {
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Winner and score table of the original profile.
    Winner {
        /// Rule id; defaults to the file's `# rule:` comment.
        #[arg(long)]
        rule: Option<VotingRule>,
        file: PathBuf,
    },
    /// Decides whether a given bribery is safe.
    IsSafe {
        #[arg(long)]
        rule: Option<VotingRule>,
        #[arg(long, value_enum, default_value = "auto")]
        method: CheckMethod,
        file: PathBuf,
    },
    /// Finds a cheapest safe and successful bribery.
    Solve {
        #[arg(long)]
        rule: Option<VotingRule>,
        #[arg(long, value_enum, default_value = "auto")]
        method: SolveMethod,
        file: PathBuf,
    },
    /// Compiles an exact-cover instance into a hard safety instance.
    Gen {
        #[arg(long)]
        construction: String,
        #[arg(long)]
        x3c: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Rule for condorcet-dollar (copeland[:p/q] or maximin).
        #[arg(long)]
        rule: Option<VotingRule>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validates the fast checker against the oracle.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "oracle")]
        against: Against,
        #[arg(long)]
        rule: Option<VotingRule>,
    },
}

fn read(path: &PathBuf) -> Result<String, CommandError> {
    fs::read_to_string(path).map_err(|e| CommandError::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<BriberyInstance, CommandError> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| CommandError::Parse(ParseError { msg: format!("{}: {}", path.display(), e.msg), ..e }))
}

fn run(cmd: Command) -> Result<Report, CommandError> {
    match cmd {
        Command::Winner { rule, file } => {
            let inst = load(&file)?;
            winner_report(&inst, rule.unwrap_or(inst.rule))
        }
        Command::IsSafe { rule, method, file } => {
            let inst = load(&file)?;
            let method = match method {
                CheckMethod::Auto => Method::Auto,
                CheckMethod::Oracle => Method::Oracle,
                CheckMethod::Flow => Method::Flow,
                CheckMethod::Greedy => Method::Greedy,
                CheckMethod::Xp => Method::Xp,
            };
            is_safe_report(&inst, rule.unwrap_or(inst.rule), method)
        }
        Command::Solve { rule, method, file } => {
            let inst = load(&file)?;
            let method = match method {
                SolveMethod::Auto => Method::Auto,
                SolveMethod::Flow => Method::Flow,
                SolveMethod::Greedy => Method::Greedy,
                SolveMethod::Xp => Method::Xp,
                SolveMethod::Enum => Method::Enum,
            };
            solve_report(&inst, rule.unwrap_or(inst.rule), method)
        }
        Command::Gen { construction, x3c, k, rule, out } => {
            let kind = ConstructionKind::parse(&construction, k, rule).map_err(|e| CommandError::Usage(e.to_string()))?;
            let x = X3CInstance::parse(&read(&x3c)?).map_err(|e| CommandError::Usage(format!("{}: {e}", x3c.display())))?;
            let (text, report) = gen_report(kind, &x, &out.display().to_string())?;
            fs::write(&out, text).map_err(|e| CommandError::Usage(format!("{}: {e}", out.display())))?;
            Ok(report)
        }
        Command::Check { files, against: Against::Oracle, rule } => {
            let texts = files
                .iter()
                .map(|f| Ok((f.display().to_string(), read(f)?)))
                .collect::<Result<Vec<_>, CommandError>>()?;
            check_report(&texts, rule)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(cli.command) {
        Ok(r) => (r.text, r.code),
        Err(e) => (format!("ERROR\n  {e}\n"), e.exit_code()),
    };
    print!("{text}");
    ExitCode::from(code as u8)
}
