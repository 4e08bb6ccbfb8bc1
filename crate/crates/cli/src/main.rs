//! `veronese`: command-line front end for facet enumeration, counting and
//! classification of Veronese polytopes.

mod commands;
mod failure;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::Failure;
use input::Source;

#[derive(Parser, Debug)]
#[command(name = "veronese", version, about = "Facets and combinatorial types of Veronese polytopes")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for randomized self-tests.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Cross-check the facet set with all four characterizations.
    #[arg(long, global = true)]
    pub check: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Facets of an instance, a signed decomposition or a composition.
    Facets(Source),
    /// Signed decomposition of an instance and its induced composition.
    Decompose(Source),
    /// A chart realising a signed decomposition.
    Chart(Source),
    /// Facet count of a composition by formula.
    Count {
        #[command(flatten)]
        source: Source,
        /// Also enumerate the facets and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Named-type flags of a composition.
    Classify(Source),
    /// Vertex indices of an instance or a composition.
    Vertices(Source),
    /// Whether a chart gives a d-order curve.
    ChartOrder(Source),
    /// Number of combinatorial types per dimension and vertex count.
    Enumerate(EnumerateArgs),
    /// Relabelling-invariant certificate of a facet complex.
    Certify(Source),
    /// Random instances checked across all four characterizations.
    SelfTest {
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Largest dimension drawn.
        #[arg(long, default_value_t = 6)]
        max_d: usize,
        /// Largest number of points drawn.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Dimension or inclusive range, e.g. `4` or `3..5`.
    #[arg(long)]
    pub d: String,
    /// Vertex count or inclusive range, e.g. `4..12`.
    #[arg(long)]
    pub n: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            return report(Failure::usage(e.to_string().trim_end()), None);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return report(Failure::usage("--jobs must be positive"), None);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("the global pool is configured once");
    }
    let name = command_name(&cli.command);
    let mut stdout = std::io::stdout().lock();
    match commands::run(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.render(cli.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err((partial, failure)) => {
            if let Some(out) = partial {
                let _ = stdout.write_all(out.render(cli.format).as_bytes());
            }
            let _ = stdout.flush();
            report(failure, Some(name))
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Facets(_) => "facets",
        Command::Decompose(_) => "decompose",
        Command::Chart(_) => "chart",
        Command::Count { .. } => "count",
        Command::Classify(_) => "classify",
        Command::Vertices(_) => "vertices",
        Command::ChartOrder(_) => "chart-order",
        Command::Enumerate(_) => "enumerate",
        Command::Certify(_) => "certify",
        Command::SelfTest { .. } => "self-test",
    }
}

fn report(failure: Failure, command: Option<&str>) -> ExitCode {
    let exit = failure.exit;
    let line = failure.to_json(command);
    eprintln!("{line}");
    ExitCode::from(exit)
}
