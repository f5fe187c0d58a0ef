use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spherical::catalog::Filter;
use spherical::cli::report::Report;
use spherical::cli::run;
use spherical::cli::{parse_family, parse_spec, parse_terms, SpecError};
use spherical::genericity::SampleConfig;

#[derive(Parser)]
#[command(
    name = "sph",
    version,
    about = "Machine checks for real spherical pairs"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Sampling seed (decimal); falls back to SPH_SEED
    #[arg(long, global = true, env = "SPH_SEED")]
    seed: Option<u64>,
    /// Random points drawn per check
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Coordinate height of random points
    #[arg(long, global = true)]
    height: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sphericity of a pair or of catalog tables
    #[command(subcommand)]
    Verify(Verify),
    /// Factorization and prehomogeneity checks
    #[command(subcommand)]
    Check(Check),
    /// Structure data of g, and the necessary bounds when h is given
    Info {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum Verify {
    Pair {
        #[arg(long)]
        spec: String,
    },
    Table {
        /// Table id such as T1 or T3, or `all`
        #[arg(long)]
        table: String,
        /// Largest real dimension of the ambient algebra
        #[arg(long)]
        max_dim: Option<usize>,
        /// Ambient family prefix such as su or so*
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Subcommand)]
enum Check {
    Factor {
        /// Ambient algebra
        #[arg(long, alias = "g")]
        h: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
    },
    Preh {
        /// Table 2 row, as T2.<row> or T2.<row>(<n>)
        #[arg(long)]
        rep: String,
    },
}

fn config(g: &Global) -> SampleConfig {
    let mut cfg = SampleConfig::default();
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(k) = g.samples {
        cfg.samples = k;
    }
    if let Some(h) = g.height {
        cfg.height = h;
    }
    cfg
}

fn dispatch(cmd: Cmd, cfg: &SampleConfig) -> Result<Report, SpecError> {
    Ok(match cmd {
        Cmd::Verify(Verify::Pair { spec }) => run::verify_pair(&parse_spec(&spec)?, cfg),
        Cmd::Verify(Verify::Table {
            table,
            max_dim,
            family,
        }) => run::verify_table(
            &Filter {
                table: Some(table),
                family,
                max_dim,
            },
            cfg,
        ),
        Cmd::Check(Check::Factor { h, h1, h2 }) => run::check_factor(
            parse_family(&h)?,
            &parse_terms(&h1)?,
            &parse_terms(&h2)?,
            cfg,
        ),
        Cmd::Check(Check::Preh { rep }) => run::check_preh(&rep, cfg),
        Cmd::Info { spec } => run::info(&parse_spec(&spec)?, cfg),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = config(&cli.global);
    match dispatch(cli.cmd, &cfg) {
        Ok(report) => {
            match cli.global.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => print!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
