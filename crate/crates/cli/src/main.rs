use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cosmetic_core::classifier::{parse_knot_expr_with, surgered_jsj, KnotExpr, KnotTable, LeafClass};
use cosmetic_core::diagram::DEFAULT_MAX_CROSSINGS;
use cosmetic_core::error::Error;
use cosmetic_core::pipeline::{
    fit_cabling_constants, load_table, obstruction_report, scan, KnotInvariants, LoadedTable, ScanRecord, Unavailable,
};
use cosmetic_core::slope::Slope;

mod output;

use output::{ClassifyRecord, InvariantsRecord, Sink};

#[derive(Parser, Debug)]
#[command(name = "cosmetic", version, about = "Surgery classification and cosmetic-surgery obstructions for cable knots")]
struct Cli {
    /// Crossing cap for the Jones state sum.
    #[arg(long, global = true, env = "COSMETIC_MAX_CROSSINGS", default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Knot table CSV that `K(name)` resolves against.
    #[arg(long, global = true, value_name = "CSV")]
    table: Option<PathBuf>,

    /// Declare the class of a named leaf: `name=hyperbolic` or `name=satellite:N`.
    #[arg(long = "declare", global = true, value_name = "NAME=CLASS")]
    declare: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Case and manifold descriptor of S^3_r(K) for a cable K.
    Classify {
        knot: String,
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
    /// Alexander polynomial, Δ''(1), Jones polynomial and V'''(1).
    Invariants { knot: String },
    /// Obstruction report for the pair (r, s); s defaults to -r.
    Obstruct {
        knot: String,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        s: Option<String>,
        /// Ozsváth–Szabó τ, when known.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<i64>,
    },
    /// Reports for (m/n, -m/n) over a slope grid, for every table row.
    Scan {
        #[arg(value_name = "TABLE")]
        table_file: PathBuf,
        /// `MxN`: 1 <= m <= M, 1 <= n <= N.
        grid: String,
    },
    /// Fits the cabling constants for C(ε,q; K) over the knots in a table.
    Fit {
        q: i64,
        #[arg(value_name = "TABLE")]
        table_file: PathBuf,
        /// +1 or -1; both when omitted.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<i64>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_declarations(items: &[String]) -> Result<Vec<(String, LeafClass)>, Failure> {
    items
        .iter()
        .map(|d| {
            let (name, class) = d
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("--declare expects NAME=CLASS, got `{d}`")))?;
            Ok((name.trim().to_string(), class.parse::<LeafClass>()?))
        })
        .collect()
}

fn parse_slope(s: &str) -> Result<Slope, Failure> {
    Ok(s.parse::<Slope>()?)
}

fn parse_grid(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Input(format!("grid `{s}` is not MxN with positive M, N"));
    let (m, n) = match s.split_once(['x', 'X', ',']) {
        Some((m, n)) => (m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if m == 0 || n == 0 {
        return Err(bad());
    }
    Ok((m, n))
}

fn open_table(path: &Path) -> Result<LoadedTable, Failure> {
    let f = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(load_table(f)?)
}

struct Context {
    names: KnotTable,
    declarations: Vec<(String, LeafClass)>,
    cap: usize,
}

impl Context {
    fn knot(&self, text: &str) -> Result<KnotExpr, Failure> {
        let mut k = parse_knot_expr_with(text, &self.names)?;
        for (name, class) in &self.declarations {
            k.declare(name, *class);
        }
        Ok(k)
    }
}

fn run(cli: Cli, out: &mut Sink) -> Result<(), Failure> {
    // validate everything before computing anything
    let declarations = parse_declarations(&cli.declare)?;
    let names = match &cli.table {
        Some(p) => open_table(p)?.names,
        None => KnotTable::new(),
    };
    let ctx = Context { names, declarations, cap: cli.max_crossings };

    match cli.command {
        Command::Classify { knot, slope } => {
            let k = ctx.knot(&knot)?;
            let r = parse_slope(&slope)?;
            let (case, descriptor) = surgered_jsj(&k, &r)?;
            out.classify(&ClassifyRecord { knot: k, slope: r, case, descriptor })?;
        }
        Command::Invariants { knot } => {
            let k = ctx.knot(&knot)?;
            let inv = KnotInvariants::compute(&k, ctx.cap)?;
            let alexander = inv.alexander.clone()?;
            let delta2 = inv.delta2.clone()?;
            let rec = InvariantsRecord::new(&k, alexander, delta2, &inv.jones);
            out.invariants(&rec)?;
            if let Err(u @ Unavailable::CrossingCap { .. }) = &inv.jones {
                out.flush()?;
                return Err(Failure::Resource(format!("Jones polynomial of {k}: {u}")));
            }
        }
        Command::Obstruct { knot, r, s, tau } => {
            let k = ctx.knot(&knot)?;
            let r = parse_slope(&r)?;
            let s = match s {
                Some(s) => parse_slope(&s)?,
                None => r.negate(),
            };
            let report = obstruction_report(&k, &r, &s, tau, ctx.cap)?;
            out.record(&ScanRecord::Report(Box::new(report)))?;
        }
        Command::Scan { table_file, grid } => {
            let (max_m, max_n) = parse_grid(&grid)?;
            let mut table = open_table(&table_file)?;
            for row in table.rows.iter_mut().flatten() {
                for (name, class) in &ctx.declarations {
                    row.knot.declare(name, *class);
                }
            }
            for rec in scan(&table, max_m, max_n, ctx.cap) {
                out.record(&rec)?;
            }
        }
        Command::Fit { q, table_file, epsilon } => {
            let signs = match epsilon {
                None => vec![1, -1],
                Some(e) if e.abs() == 1 => vec![e],
                Some(e) => return Err(Failure::Input(format!("--epsilon must be 1 or -1, got {e}"))),
            };
            let table = open_table(&table_file)?;
            let mut sample = Vec::new();
            for row in &table.rows {
                match row {
                    Ok(r) => sample.push(r.knot.clone()),
                    Err(d) => return Err(Failure::Input(format!("table line {}: {}", d.line, d.error))),
                }
            }
            for e in signs {
                let fit = fit_cabling_constants(q, &sample, e, ctx.cap)?;
                out.fit(&fit)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout();
    let mut sink = Sink::new(cli.format, BufWriter::new(stdout.lock()));
    match run(cli, &mut sink) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = sink.flush();
            let (code, msg) = match f {
                Failure::Input(m) => (1, m),
                Failure::Resource(m) => (2, m),
            };
            eprintln!("error: {msg}");
            let _ = io::stderr().flush();
            ExitCode::from(code)
        }
    }
}
