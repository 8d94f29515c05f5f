use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ordbubble::cli::{error_exit_code, run, Command, Verb, DEFAULT_SEED};
use ordbubble::format::InputFormat;
use ordbubble::invariants::Mutation;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerbArg {
    Analyze,
    Decompose,
    Bubble,
    Extend,
    Utility,
    Topology,
    Sweep,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    RelationJson,
    Matrix,
    BubbleJson,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MutationArg {
    Saturation,
    Transitivity,
}

/// Analyse finite relations, decompose preorders into bubbles, and build
/// utilities and interval topologies. Reports are JSON with sorted keys.
#[derive(Debug, Parser)]
#[command(name = "ordbubble", version)]
struct Args {
    verb: VerbArg,
    /// Input file (relation JSON, matrix, or bubble-system JSON).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Carrier size for `sweep`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    /// Run `sweep` on this many seeded random relations instead of exhaustively.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, value_enum, hide = true)]
    mutate: Option<MutationArg>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cmd = Command {
        verb: match args.verb {
            VerbArg::Analyze => Verb::Analyze,
            VerbArg::Decompose => Verb::Decompose,
            VerbArg::Bubble => Verb::Bubble,
            VerbArg::Extend => Verb::Extend,
            VerbArg::Utility => Verb::Utility,
            VerbArg::Topology => Verb::Topology,
            VerbArg::Sweep => Verb::Sweep,
        },
        input: args.input,
        format: match args.format {
            FormatArg::Auto => InputFormat::Auto,
            FormatArg::RelationJson => InputFormat::RelationJson,
            FormatArg::Matrix => InputFormat::Matrix,
            FormatArg::BubbleJson => InputFormat::BubbleJson,
        },
        n: args.n,
        seed: args.seed,
        random: args.random,
        mutation: args.mutate.map(|m| match m {
            MutationArg::Saturation => Mutation::Saturation,
            MutationArg::Transitivity => Mutation::Transitivity,
        }),
    };
    match run(&cmd) {
        Ok(report) => {
            let text = report.to_json();
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if report.exit_code() != 0 {
                for c in report.invariants.iter().filter(|c| !c.holds) {
                    eprintln!("invariant violated: {}", c.name);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
