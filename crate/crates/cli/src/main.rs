use std::path::PathBuf;

use agcb::{CliError, Format, RunConfig};
use agcb_core::CurveId;
use clap::{Parser, Subcommand};

/// Distance bounds for algebraic geometric codes with two-point support.
#[derive(Parser)]
#[command(name = "agcb", version)]
struct Cli {
    /// Curve preset: hermitian2|hermitian3|hermitian4|suzuki8|suzuki32.
    #[arg(long, global = true, default_value = "suzuki8")]
    curve: String,
    /// Kernel window override (|a|, |b| bound for dimension queries).
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Dimension-table designed-class degree cap override.
    #[arg(long, global = true)]
    deg_cap: Option<i64>,
    /// Output format.
    #[arg(long, global = true, default_value = "md", value_parser = ["md", "csv", "json"])]
    format: String,
    /// Worker threads for sweep commands (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Dimension-table cache directory (also via AGCB_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Widen the Beelen per-edge S from {edge point} to all avoided points.
    #[arg(long, global = true, hide = true)]
    beelen_full_s: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the kernel and table invariant suites.
    Selftest,
    /// Dimension-table maintenance.
    Table {
        #[command(subcommand)]
        command: TableCommand,
    },
    /// Compute bounds for the code with divisor G (written against K = (2g-2)P).
    Bounds {
        /// Divisor, e.g. 28P+2Q.
        #[arg(long = "G")]
        g: String,
        /// Comma-separated bound names, or "all".
        #[arg(long, default_value = "all")]
        bounds: String,
    },
    /// Regenerate a published table and diff it cell-by-cell.
    Reproduce {
        /// Table number, 1..6.
        #[arg(long)]
        table: u8,
        #[arg(long, hide = true)]
        stretch: bool,
    },
    /// Brute-force audit of every bound against exact minimum distances.
    Audit {
        /// Largest designed-class degree to audit.
        #[arg(long, default_value_t = 6)]
        max_degc: i64,
        /// Write the full audit CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Build the dimension table (and save it when a cache dir is set).
    Build {
        /// Also export the raw (a, b, l) triples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let curve = CurveId::parse(&cli.curve)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = RunConfig {
        curve,
        window: cli.window,
        deg_cap: cli.deg_cap,
        format: Format::parse(&cli.format)?,
        threads: cli.threads,
        cache_dir: cli.cache_dir.or_else(|| std::env::var_os(agcb::CACHE_ENV).map(PathBuf::from)),
        beelen_full_s: cli.beelen_full_s,
    };
    let report = match &cli.command {
        Command::Selftest => agcb::cmd_selftest(&cfg)?,
        Command::Table { command: TableCommand::Build { csv } } => {
            agcb::cmd_table_build(&cfg, csv.as_ref())?
        }
        Command::Bounds { g, bounds } => agcb::cmd_bounds(&cfg, g, bounds)?,
        Command::Reproduce { table, stretch } => agcb::cmd_reproduce(&cfg, *table, *stretch)?,
        Command::Audit { max_degc, out } => agcb::cmd_audit(&cfg, *max_degc, out.as_ref())?,
    };
    print!("{}", report.render(cfg.format));
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("agcb: {e}");
            match e {
                CliError::Usage(_) => 2,
                CliError::Failure(_) => 1,
            }
        }
    };
    std::process::exit(code);
}
