mod claims;
mod records;
mod render;
mod tilings_cmd;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use positroid_lab::exact::ExactMatrix;
use positroid_lab::ZMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "positroid-lab", version, about = "Positroid tiles of the hypersimplex and the m=2 amplituhedron")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit every bicolored subdivision of type (k, n) as JSONL.
    Tiles {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a registered claim and print a JSON report.
    Verify(VerifyArgs),
    /// Enumerate positroid tilings as JSONL, one tiling per line.
    Tilings(TilingsArgs),
    /// Emit the cluster seed of a subdivision as JSON.
    Seed {
        /// Subdivision: `N`, `N:1,2,3;4,5,6` or `kermit:N:2,3,5`.
        object: String,
        /// Distinguished sides, one per black polygon, e.g. `2-3,8-9`.
        #[arg(long)]
        distinguished: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a subdivision with its dual tree and T-dual graph as SVG.
    Render {
        /// Subdivision: `N`, `N:1,2,3;4,5,6` or `kermit:N:2,3,5`.
        object: String,
        /// Output file (default: stdout).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Overlay the cluster quiver.
        #[arg(long)]
        quiver: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Sign1,
    Nicerep,
    Main1,
    Wcover,
    Adjacency,
    Exchange,
    PositivePart,
    TdualityTrip,
    Realize,
    DescentTiling,
    Containment,
    K1Emptiness,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    pub claim: Claim,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Samples per tile, per point set or per arc, depending on the claim.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `vandermonde` or a JSON file holding the n × (k+2) matrix.
    #[arg(long, default_value = "vandermonde")]
    pub z: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Hypersimplex,
    Amplituhedron,
}

#[derive(clap::Args)]
pub struct TilingsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Hypersimplex)]
    pub mode: Mode,
    /// `vandermonde` or a JSON file holding the n × (k+2) matrix.
    #[arg(long, default_value = "vandermonde")]
    pub z: String,
    /// Print only the number of tilings.
    #[arg(long)]
    pub count_only: bool,
    /// Allow shapes whose search takes minutes or more.
    #[arg(long)]
    pub long: bool,
    /// Amplituhedron mode: emit only tilings that leave some empty chamber uncovered.
    #[arg(long)]
    pub sporadic: bool,
    /// Samples used to detect nonempty chambers when k >= 2.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Argument-level failure, reported with exit code 2.
#[derive(Debug)]
pub struct ArgumentError(pub String);

impl std::fmt::Display for ArgumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ArgumentError {}

pub fn arg_error(msg: impl Into<String>) -> anyhow::Error {
    ArgumentError(msg.into()).into()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn check_shape(k: usize, n: usize) -> Result<()> {
    if n < 2 || k + 2 > n {
        return Err(arg_error(format!("need 0 <= k <= n - 2, got k={k}, n={n}")));
    }
    Ok(())
}

pub fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Reads `vandermonde` or a JSON matrix file; entries may be integers or `"p/q"` strings.
pub fn load_z(source: &str, k: usize, n: usize) -> Result<ZMatrix> {
    if source == "vandermonde" {
        return ZMatrix::vandermonde(n, k).map_err(|e| arg_error(e.to_string()));
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("cannot read {source}"))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| arg_error(format!("{source}: {e}")))?;
    let rows = value.as_array().ok_or_else(|| arg_error(format!("{source}: expected an array of rows")))?;
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| arg_error(format!("{source}: rows must be arrays")))?
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(v) if v.is_i64() => Ok(v.to_string()),
                    other => Err(arg_error(format!("{source}: entry {other} is not an integer or \"p/q\""))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let m: ExactMatrix = serde_json::from_value(serde_json::json!(rows)).map_err(|e| arg_error(format!("{source}: {e}")))?;
    if m.rows() != n || m.cols() != k + 2 {
        bail!(ArgumentError(format!("{source}: Z must be {n} × {}, got {} × {}", k + 2, m.rows(), m.cols())));
    }
    ZMatrix::new(m).map_err(|e| arg_error(format!("{source}: {e}")))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Tiles { k, n, out } => {
            check_shape(k, n)?;
            records::cmd_tiles(k, n, out.as_deref())?;
            Ok(true)
        }
        Command::Verify(args) => claims::cmd_verify(&args),
        Command::Tilings(args) => tilings_cmd::cmd_tilings(&args),
        Command::Seed { object, distinguished, out } => {
            records::cmd_seed(&object, distinguished.as_deref(), out.as_deref())?;
            Ok(true)
        }
        Command::Render { object, svg, quiver } => {
            render::cmd_render(&object, svg.as_deref(), quiver)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<io::Error>()) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
