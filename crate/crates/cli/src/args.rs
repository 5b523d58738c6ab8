use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seshadri_core::{FilterId, Int, PipelineConfig};

#[derive(Debug, Parser)]
#[command(name = "seshadri", version, about = "Exact Pell bounds and exceptional Seshadri values for surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction of sqrt(d) and solutions of q^2 - d p^2 = 1
    Pell {
        #[arg(allow_hyphen_values = true, value_parser = parse_int)]
        d: Int,
        /// Number of solutions to list
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exceptional set for one degree, sharpened by filters
    Exc(ExcArgs),
    /// One summary row per degree in a range
    Scan(ScanArgs),
    /// Grid checks of the arithmetic behind the main theorems
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// The conjectured lower bound p0 d / q0
    Bound {
        #[arg(allow_hyphen_values = true, value_parser = parse_int)]
        d: Int,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Comma-separated filter names, applied in order
    #[arg(long, value_delimiter = ',', value_parser = parse_filter)]
    pub filters: Vec<FilterId>,
    /// Assume Picard number one
    #[arg(long)]
    pub rho1: bool,
    /// Smallest gonality the xu-moving-curve filter admits
    #[arg(long, default_value = "1", value_parser = parse_int, allow_hyphen_values = true)]
    pub gon_min: Int,
    /// Skip pairs with a = b
    #[arg(long)]
    pub strict_lower: bool,
    /// Keep integer values that are possible only on fibred surfaces
    #[arg(long)]
    pub include_conditional: bool,
}

impl FilterArgs {
    pub fn config(&self, budget: Option<u64>) -> PipelineConfig {
        let filters = if self.filters.is_empty() { vec![FilterId::Range] } else { self.filters.clone() };
        PipelineConfig {
            filters,
            rho1: self.rho1,
            gon_min: self.gon_min.clone(),
            strict_lower: self.strict_lower,
            include_conditional: self.include_conditional,
            budget,
            ..PipelineConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct ExcArgs {
    #[arg(allow_hyphen_values = true, value_parser = parse_int)]
    pub d: Int,
    /// Which Pell solution bounds the enumeration (1 is the fundamental one)
    #[arg(long, default_value_t = 1)]
    pub pell_index: u64,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Give up after this many enumeration steps
    #[arg(long)]
    pub budget: Option<u64>,
    /// List surviving pairs
    #[arg(long, conflicts_with = "values")]
    pub pairs: bool,
    /// List surviving values (the default)
    #[arg(long)]
    pub values: bool,
    /// Also list every elimination with its reason
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Degree range as dmin:dmax
    #[arg(value_parser = parse_range)]
    pub range: (u64, u64),
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Enumeration steps per degree; larger degrees get blank counts
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// No multiplicity b >= q^2 passes the area inequality
    Main {
        #[arg(allow_hyphen_values = true, value_parser = parse_int)]
        d: Int,
        #[arg(long, default_value_t = 1)]
        pell_index: u64,
        #[arg(long, default_value_t = 100)]
        window: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Degrees n^2 - 1
    #[command(name = "p0-1")]
    P0One {
        #[arg(long, default_value_t = 50)]
        n_max: u64,
        #[arg(long, default_value_t = 50)]
        k_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Degrees n^2 + n
    #[command(name = "p0-2")]
    P0Two {
        #[arg(long, default_value_t = 50)]
        n_max: u64,
        #[arg(long, default_value_t = 50)]
        l_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_int(s: &str) -> Result<Int, String> {
    s.trim().parse::<Int>().map_err(|_| format!("not an integer: {s}"))
}

fn parse_filter(s: &str) -> Result<FilterId, String> {
    s.trim().parse::<FilterId>().map_err(|_| {
        let known: Vec<&str> = FilterId::ALL.iter().map(|f| f.name()).collect();
        format!("unknown filter {s:?}; expected one of {}", known.join(", "))
    })
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let bad = || format!("expected dmin:dmax with 1 <= dmin <= dmax, got {s:?}");
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let d = s.trim().parse().map_err(|_| bad())?;
            (d, d)
        }
    };
    if lo < 1 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
