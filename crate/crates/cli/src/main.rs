use std::path::PathBuf;
use std::process::ExitCode;

use catcross_cli::commands::{self, Analysis, DemoOptions, IdealsTask, ScanChoice, Settings};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "catcross", version, about = "Finite category crossed products")]
struct Cli {
    /// Emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans; output does not depend on it
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    /// Cap on enumerated and closed sets, overriding file metadata
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Center,
    Commutant,
    Maxcomm,
    Commutative,
    Strong,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sub {
    Theorem,
    Quotient,
    Normal,
    Converse,
    Equivalence,
}

#[derive(Subcommand)]
enum Command {
    /// Check the crossed-system axioms
    Validate {
        /// Description file or bundled system name
        file: String,
    },
    /// Center, commutant and commutativity analyses
    Analyze {
        file: String,
        #[arg(long)]
        what: What,
    },
    /// Ideal-intersection verifications and constructions
    Ideals {
        file: String,
        #[arg(long)]
        sub: Sub,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        #[arg(long, value_name = "N")]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a bundled or generated system and run the analysis suite on it
    Demo {
        /// matrix, groupalgebra, skew-swap or any bundled name
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List bundled systems
    List,
}

fn run(command: Command, settings: Settings) -> catcross_cli::report::Report {
    match command {
        Command::Validate { file } => commands::validate(&file, settings),
        Command::Analyze { file, what } => {
            let what = match what {
                What::Center => Analysis::Center,
                What::Commutant => Analysis::Commutant,
                What::Maxcomm => Analysis::MaxComm,
                What::Commutative => Analysis::Commutative,
                What::Strong => Analysis::Strong,
            };
            commands::analyze(&file, what, settings)
        }
        Command::Ideals {
            file,
            sub,
            exhaustive,
            sample,
            seed,
        } => {
            let task = match sub {
                Sub::Theorem => IdealsTask::Theorem,
                Sub::Quotient => IdealsTask::Quotient,
                Sub::Normal => IdealsTask::Normal,
                Sub::Converse => IdealsTask::Converse,
                Sub::Equivalence => IdealsTask::Equivalence,
            };
            let scan = match (exhaustive, sample) {
                (true, _) => ScanChoice::Exhaustive,
                (false, Some(n)) => ScanChoice::Sample(n),
                (false, None) => ScanChoice::Auto,
            };
            commands::ideals(&file, task, scan, seed, settings)
        }
        Command::Demo {
            name,
            n,
            ring,
            group,
            out,
        } => commands::demo(&name, &DemoOptions { n, ring, group, out }, settings),
        Command::List => commands::list(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings { cap: cli.cap };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("catcross: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let report = pool.install(|| run(cli.command, settings));
    print!("{}", report.render(cli.json));
    ExitCode::from(report.exit_code() as u8)
}
