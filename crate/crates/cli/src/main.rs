mod diagram;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use schubsing::bruhat::{bruhat_leq, DiffTable};
use schubsing::oracle::DEFAULT_ORACLE_BOUND;
use schubsing::Permutation;

use report::{CliError, SweepMode};

#[derive(Parser)]
#[command(name = "schubsing", version, about = "Singular loci of Schubert varieties")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit one JSON record per line
    #[arg(long, global = true)]
    json: bool,
    /// Largest n for the exponential oracles and the KL recursion
    #[arg(long, global = true, env = "SCHUBSING_ORACLE_BOUND", default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    /// Worker threads for corpus and sweep modes (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the random inputs of bench
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read inputs from FILE, one per line; '#' starts a comment
    #[arg(long, global = true, value_name = "FILE")]
    corpus: Option<PathBuf>,
    /// Write the diagram as SVG to PATH
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Pattern and tangent-space smoothness tests
    Smooth { perms: Vec<String> },
    /// Irreducible components of the singular locus
    Maxsing { perms: Vec<String> },
    /// Kazhdan-Lusztig polynomial P_{x,w}; corpus lines hold "x ; w"
    Kl { x: Option<String>, w: Option<String> },
    /// Bruhat picture of a pair x <= w
    Diagram {
        x: String,
        w: String,
        #[arg(long, value_enum, default_value_t = Style::Ascii)]
        style: Style,
        /// Also print d_{x,w}(p,q) for every cell
        #[arg(long)]
        annotate: bool,
    },
    /// Compare the fast algorithm with the oracles over all of S_n
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SweepMode::Maxsing)]
        mode: SweepMode,
    },
    /// Median maxsing time on random permutations
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [50, 100])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Useful 4231/3412 patterns against the component count
    Count { perms: Vec<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Ascii,
    Svg,
}

fn parse_perm(s: &str) -> Result<Permutation, CliError> {
    s.parse().map_err(|e| CliError::Parse(format!("{s:?}: {e}")))
}

fn corpus_lines(path: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn inputs(opts: &GlobalOpts, args: &[String]) -> Result<Vec<Permutation>, CliError> {
    let mut lines = args.to_vec();
    if let Some(path) = &opts.corpus {
        lines.extend(corpus_lines(path)?);
    }
    if lines.is_empty() {
        return Err(CliError::Parse("no permutations given".into()));
    }
    lines.iter().map(|l| parse_perm(l)).collect()
}

fn kl_inputs(
    opts: &GlobalOpts,
    x: Option<String>,
    w: Option<String>,
) -> Result<Vec<(Permutation, Permutation)>, CliError> {
    let mut pairs = Vec::new();
    match (x, w) {
        (Some(x), Some(w)) => pairs.push((parse_perm(&x)?, parse_perm(&w)?)),
        (None, None) => {}
        _ => return Err(CliError::Parse("kl takes two permutations, x and w".into())),
    }
    if let Some(path) = &opts.corpus {
        for line in corpus_lines(path)? {
            let (x, w) = line
                .split_once(';')
                .ok_or_else(|| CliError::Parse(format!("{line:?}: expected \"x ; w\"")))?;
            pairs.push((parse_perm(x.trim())?, parse_perm(w.trim())?));
        }
    }
    if pairs.is_empty() {
        return Err(CliError::Parse("no pairs given".into()));
    }
    Ok(pairs)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Precondition("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| CliError::Capability(e.to_string()))
}

fn emit<T: Serialize + std::fmt::Display>(json: bool, records: &[T]) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in records {
        let line = if json {
            serde_json::to_string(r).expect("records serialize")
        } else {
            r.to_string()
        };
        // A closed pipe is not an error worth reporting.
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = &cli.opts;
    match cli.command {
        Command::Smooth { perms } => {
            let ws = inputs(opts, &perms)?;
            let records = pool(opts.jobs)?.install(|| ws.par_iter().map(report::smooth).collect::<Vec<_>>());
            emit(opts.json, &records)
        }
        Command::Maxsing { perms } => {
            let ws = inputs(opts, &perms)?;
            let records = pool(opts.jobs)?.install(|| ws.par_iter().map(report::maxsing_record).collect::<Vec<_>>());
            emit(opts.json, &records)
        }
        Command::Count { perms } => {
            let ws = inputs(opts, &perms)?;
            let records = pool(opts.jobs)?.install(|| ws.par_iter().map(report::count).collect::<Vec<_>>());
            emit(opts.json, &records)
        }
        Command::Kl { x, w } => {
            let pairs = kl_inputs(opts, x, w)?;
            let bound = opts.oracle_bound;
            let records = pool(opts.jobs)?.install(|| {
                pairs
                    .par_iter()
                    .map(|(x, w)| report::kl(x, w, bound))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            emit(opts.json, &records)
        }
        Command::Diagram { x, w, style, annotate } => {
            let (x, w) = (parse_perm(&x)?, parse_perm(&w)?);
            let leq = bruhat_leq(&x, &w).map_err(|e| CliError::Precondition(e.to_string()))?;
            if !leq {
                return Err(CliError::Precondition(format!("{x} is not below {w} in Bruhat order")));
            }
            let table = DiffTable::new(&x, &w).map_err(|e| CliError::Parse(e.to_string()))?;
            if let Some(path) = &opts.svg {
                fs::write(path, diagram::svg(&table, annotate))
                    .map_err(|e| CliError::Capability(format!("{}: {e}", path.display())))?;
            }
            let text = match style {
                Style::Ascii => diagram::ascii(&table, annotate),
                Style::Svg => diagram::svg(&table, annotate),
            };
            if opts.json {
                let record = serde_json::json!({
                    "x": x.entries(),
                    "w": w.entries(),
                    "style": if style == Style::Svg { "svg" } else { "ascii" },
                    "diagram": text,
                });
                println!("{record}");
            } else if opts.svg.is_none() || style == Style::Ascii {
                print!("{text}");
            }
            Ok(())
        }
        Command::Sweep { n, mode } => {
            let record = pool(opts.jobs)?.install(|| report::sweep(n, mode, opts.oracle_bound))?;
            emit(opts.json, std::slice::from_ref(&record))?;
            match record.mismatch {
                Some(m) => Err(CliError::Mismatch(m)),
                None => Ok(()),
            }
        }
        Command::Bench { n, trials } => {
            let record = report::bench(&n, trials, opts.seed)?;
            emit(opts.json, std::slice::from_ref(&record))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("schubsing: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
