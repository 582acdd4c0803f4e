use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use distcolour::cli::{
    cmd_batch, cmd_check, cmd_ds, cmd_number, cmd_recheck, cmd_reduce, CommandOutput, DsCommand,
    InputFormat, OracleFlag, RunConfig,
};
use distcolour::colouring::{Mode, Properness, Target};
use distcolour::doublestar::{Condition, GraphKind};
use distcolour::params::{Variant, DEFAULT_CUTOFF};
use distcolour::Error;

/// Distinguishing colourings: check, reduce to irreducible, compute minimal
/// parameters, and work with double stars.
#[derive(Parser)]
#[command(name = "distcol", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Graph file (graph6 or edge list), certificate file, or batch directory
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input format; by default taken from the file extension
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, global = true, value_enum)]
    mode: Option<TargetArg>,
    /// Require the colouring to be proper
    #[arg(long, global = true)]
    proper: bool,
    /// Colouring as JSON, or a path to a JSON file
    #[arg(long, global = true)]
    colours: Option<String>,
    #[arg(long, global = true, value_enum)]
    variant: Option<VariantArg>,
    /// Write JSON here and print a summary instead
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cross-check with the brute-force automorphism list (auto: n <= 7)
    #[arg(long, global = true, value_enum, default_value = "auto")]
    oracle: OracleArg,
    /// Largest vertex count for exhaustive parameter search
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a colouring is distinguishing (and proper, with --proper)
    Check,
    /// Merge colour classes down to an irreducible colouring
    Reduce,
    /// Least number of colours for --variant
    Number,
    /// Double stars and double cliques
    Ds {
        #[command(subcommand)]
        command: DsArgs,
    },
    /// Tabulate every graph in the --input directory
    Batch,
    /// Re-verify a certificate from its JSON payload
    Recheck,
}

#[derive(Subcommand)]
enum DsArgs {
    /// Emit DS(m, n) or DC(m, n)
    Build {
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value = "ds")]
        kind: KindArg,
    },
    /// Condition-a colouring from an injection of the smaller side
    Construct {
        m: usize,
        n: usize,
        /// Images of the smaller side, e.g. 0,2
        #[arg(long, value_delimiter = ',')]
        injection: Option<Vec<usize>>,
    },
    /// Convert a lemma colouring (read from --input) to another condition
    Transform {
        #[arg(long, value_enum)]
        to: ConditionArg,
    },
    /// Run the construction and all transforms
    VerifyLemma { m: usize, n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    D,
    Dc,
    Di,
    Dci,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    On,
    Off,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ds,
    Dc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    A,
    B,
    C,
    D,
}

impl GlobalArgs {
    fn config(&self) -> RunConfig {
        let properness = if self.proper {
            Properness::Proper
        } else {
            Properness::Plain
        };
        let mode = match (self.mode, self.proper) {
            (None, false) => None,
            (None, true) | (Some(TargetArg::Vertex), _) => {
                Some(Mode::new(Target::Vertex, properness))
            }
            (Some(TargetArg::Edge), _) => Some(Mode::new(Target::Edge, properness)),
        };
        RunConfig {
            input: self.input.clone(),
            format: self.format.map(|f| match f {
                FormatArg::Graph6 => InputFormat::Graph6,
                FormatArg::Edgelist => InputFormat::EdgeList,
            }),
            mode,
            colours: self.colours.clone(),
            variant: self.variant.map(|v| match v {
                VariantArg::D => Variant::D,
                VariantArg::Dc => Variant::Dc,
                VariantArg::Di => Variant::Di,
                VariantArg::Dci => Variant::Dci,
            }),
            out: self.out.clone(),
            oracle: match self.oracle {
                OracleArg::On => OracleFlag::On,
                OracleArg::Off => OracleFlag::Off,
                OracleArg::Auto => OracleFlag::Auto,
            },
            cutoff: self.cutoff,
        }
    }
}

fn ds_command(args: &DsArgs) -> DsCommand {
    match args {
        DsArgs::Build { m, n, kind } => DsCommand::Build {
            m: *m,
            n: *n,
            kind: match kind {
                KindArg::Ds => GraphKind::DoubleStar,
                KindArg::Dc => GraphKind::DoubleClique,
            },
        },
        DsArgs::Construct { m, n, injection } => DsCommand::Construct {
            m: *m,
            n: *n,
            injection: injection.clone(),
        },
        DsArgs::Transform { to } => DsCommand::Transform {
            to: match to {
                ConditionArg::A => Condition::A,
                ConditionArg::B => Condition::B,
                ConditionArg::C => Condition::C,
                ConditionArg::D => Condition::D,
            },
        },
        DsArgs::VerifyLemma { m, n } => DsCommand::VerifyLemma { m: *m, n: *n },
    }
}

fn emit(config: &RunConfig, output: CommandOutput) -> Result<ExitCode, Error> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, &output.document)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            print!("{}", output.summary);
        }
        None => print!("{}", output.document),
    }
    Ok(ExitCode::from(output.status.code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.global.config();
    let result = match &cli.command {
        Command::Check => cmd_check(&config),
        Command::Reduce => cmd_reduce(&config),
        Command::Number => cmd_number(&config),
        Command::Ds { command } => cmd_ds(&config, &ds_command(command)),
        Command::Batch => cmd_batch(&config),
        Command::Recheck => cmd_recheck(&config),
    };
    match result.and_then(|output| emit(&config, output)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
