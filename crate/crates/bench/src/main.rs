use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plotdown::{detect_features, Algorithm, DType};
use plotdown_bench::{emit_table, run_bench, BenchConfig, Format};

#[derive(Parser)]
#[command(name = "bench", about = "Time the downsamplers on random series")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Print the kernel levels detected on this CPU.
    Features,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParallelArg {
    True,
    False,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_delimiter = ',', default_value = "f16,f32,f64,i8,i16,i32,i64,u8,u16,u32,u64")]
    dtypes: Vec<DType>,
    #[arg(long, value_delimiter = ',', default_value = "1000000,10000000")]
    sizes: Vec<usize>,
    /// Also run 1e8 and 1e9 elements.
    #[arg(long)]
    include_large: bool,
    #[arg(long, default_value_t = 2000)]
    n_out: usize,
    #[arg(long, value_delimiter = ',', default_value = "everynth,minmax,m4,lttb,minmaxlttb")]
    algos: Vec<Algorithm>,
    #[arg(long, value_enum, default_value = "both")]
    parallel: ParallelArg,
    #[arg(long, default_value_t = 11)]
    repeats: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> BenchConfig {
        let mut sizes = self.sizes.clone();
        if self.include_large {
            sizes.extend([100_000_000, 1_000_000_000]);
        }
        BenchConfig {
            dtypes: self.dtypes.clone(),
            sizes,
            n_out: self.n_out,
            algorithms: self.algos.clone(),
            parallel: match self.parallel {
                ParallelArg::True => vec![true],
                ParallelArg::False => vec![false],
                ParallelArg::Both => vec![false, true],
            },
            repeats: self.repeats,
            seed: self.seed,
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Markdown => Format::Markdown,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(Command::Features) = cli.command {
        println!("{}", detect_features());
        return ExitCode::SUCCESS;
    }
    let cfg = cli.run.config();
    let rows = match run_bench(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "warning: {} {} n={} failed: {}",
            r.dtype,
            r.algorithm,
            r.n,
            r.error.as_deref().unwrap_or_default()
        );
    }
    let table = emit_table(&rows, cfg.format);
    match &cli.run.out {
        Some(path) => {
            if let Err(e) = fs::write(path, table) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{table}"),
    }
    ExitCode::SUCCESS
}
