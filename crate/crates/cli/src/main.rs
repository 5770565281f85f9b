use clap::{Args, Parser, Subcommand as ClapSub, ValueEnum};
use pairshare::Error;
use pairshare_cli::{error_json, run, write_atomic, Format, JobConfig, ProfileConfig, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact certificates for value-sharing pairs of rational functions.
#[derive(Parser, Debug)]
#[command(name = "pairshare", version)]
struct Cli {
    /// JSON job file; flags given on the command line override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Quadratic minimal polynomial of the generator `a`, e.g. `t^2+t+1`; `Q` by default.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Shared pairs as JSON: `[{"a":"0","b":"0","cm":false}, ["inf","inf"], ...]`.
    #[arg(long, global = true)]
    pairs: Option<String>,
    /// Declared punctures as a JSON list of points.
    #[arg(long, global = true)]
    punctures: Option<String>,
    /// Comma-separated radii.
    #[arg(long = "r-grid", global = true, value_delimiter = ',')]
    r_grid: Option<Vec<f64>>,
    #[arg(long, global = true)]
    nodes: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file, written atomically.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Args, Debug, Default)]
struct PairArgs {
    /// First rational function.
    #[arg(long)]
    q: Option<String>,
    /// Second rational function.
    #[arg(long)]
    qt: Option<String>,
}

#[derive(ClapSub, Debug)]
enum Command {
    /// Sharing certificate for a pair of rational functions.
    Share(PairArgs),
    /// Implicit curve of a rational pair.
    Implicitize(PairArgs),
    /// Checks that a pair lies on a curve, with fiber and shape checks.
    CheckCurve {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        k: Option<String>,
    },
    /// Puiseux branches of a curve at a point.
    Branches {
        #[arg(long)]
        k: Option<String>,
        /// `x0,y0`.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Nevanlinna functions of Q(e^z) and the milestone table.
    Nevanlinna {
        #[command(flatten)]
        pair: PairArgs,
        /// Quadric `P` for the milestone table.
        #[arg(long)]
        p: Option<String>,
    },
    /// Exact proof-function check and the H0 cross-check.
    Proofcheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        pt: Option<String>,
    },
    /// Builds, solves and verifies the constraint system of a profile.
    Search {
        /// Profile JSON: `{"m":..,"n":..,"s":..,"t":..,"lambda":..,"kappa":..,"surviving_y":[..],"surviving_x":[..]}`.
        #[arg(long)]
        profile: Option<String>,
        #[arg(long)]
        starts: Option<usize>,
        /// `free` or `fixed` tail coefficients.
        #[arg(long)]
        tail: Option<String>,
        /// Recover a planted point instead of searching.
        #[arg(long)]
        plant: bool,
        #[arg(long = "max-den")]
        max_den: Option<u64>,
    },
    /// Resultant of H(u, y) and H(u, x) with candidate factors.
    ResultantPair {
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        eliminate: Option<String>,
        #[arg(long = "keep-diagonal")]
        keep_diagonal: bool,
    },
}

fn invalid(msg: String) -> Error {
    Error::Invalid(msg)
}

fn put(cfg: &mut JobConfig, key: &str, v: Option<String>) {
    if let Some(v) = v {
        cfg.inputs.insert(key.into(), v);
    }
}

fn build(cli: Cli) -> Result<JobConfig, Error> {
    let sub = match &cli.command {
        Command::Share(_) => Subcommand::Share,
        Command::Implicitize(_) => Subcommand::Implicitize,
        Command::CheckCurve { .. } => Subcommand::CheckCurve,
        Command::Branches { .. } => Subcommand::Branches,
        Command::Nevanlinna { .. } => Subcommand::Nevanlinna,
        Command::Proofcheck { .. } => Subcommand::Proofcheck,
        Command::Search { .. } => Subcommand::Search,
        Command::ResultantPair { .. } => Subcommand::ResultantPair,
    };
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let c = JobConfig::from_json(&text)?;
            if c.subcommand != sub {
                return Err(invalid(format!(
                    "config is for {}, not {}",
                    c.subcommand.name(),
                    sub.name()
                )));
            }
            c
        }
        None => JobConfig::new(sub),
    };
    if cli.field.is_some() {
        cfg.field = cli.field;
    }
    if let Some(p) = cli.pairs {
        cfg.pairs = Some(serde_json::from_str(&p).map_err(|e| invalid(format!("--pairs: {e}")))?);
    }
    if let Some(p) = cli.punctures {
        cfg.punctures = Some(serde_json::from_str(&p).map_err(|e| invalid(format!("--punctures: {e}")))?);
    }
    cfg.r_grid = cli.r_grid.or(cfg.r_grid);
    cfg.nodes = cli.nodes.or(cfg.nodes);
    cfg.seed = cli.seed.or(cfg.seed);
    cfg.tol = cli.tol.or(cfg.tol);
    cfg.out = cli.out.or(cfg.out);
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
        };
    }
    match cli.command {
        Command::Share(a) | Command::Implicitize(a) => {
            put(&mut cfg, "q", a.q);
            put(&mut cfg, "qt", a.qt);
        }
        Command::CheckCurve { pair, k } => {
            put(&mut cfg, "q", pair.q);
            put(&mut cfg, "qt", pair.qt);
            put(&mut cfg, "k", k);
        }
        Command::Branches { k, at, terms } => {
            put(&mut cfg, "k", k);
            put(&mut cfg, "at", at);
            cfg.terms = terms.or(cfg.terms);
        }
        Command::Nevanlinna { pair, p } => {
            put(&mut cfg, "q", pair.q);
            put(&mut cfg, "qt", pair.qt);
            put(&mut cfg, "p", p);
        }
        Command::Proofcheck { pair, p, pt } => {
            put(&mut cfg, "q", pair.q);
            put(&mut cfg, "qt", pair.qt);
            put(&mut cfg, "p", p);
            put(&mut cfg, "pt", pt);
        }
        Command::Search { profile, starts, tail, plant, max_den } => {
            if let Some(p) = profile {
                let pc: ProfileConfig =
                    serde_json::from_str(&p).map_err(|e| invalid(format!("--profile: {e}")))?;
                cfg.profile = Some(pc);
            }
            cfg.starts = starts.or(cfg.starts);
            cfg.tail = tail.or(cfg.tail);
            cfg.plant |= plant;
            cfg.max_den = max_den.or(cfg.max_den);
        }
        Command::ResultantPair { h, eliminate, keep_diagonal } => {
            put(&mut cfg, "h", h);
            put(&mut cfg, "eliminate", eliminate);
            cfg.keep_diagonal |= keep_diagonal;
        }
    }
    Ok(cfg)
}

fn emit(cfg: Option<&JobConfig>, text: &str) -> Result<(), Error> {
    match cfg.and_then(JobConfig::output_path) {
        Some(path) => write_atomic(&path, text)
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let cfg = match build(cli) {
        Ok(c) => c,
        Err(e) => {
            println!("{}", error_json(&e));
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(outcome) => {
            let text = outcome.render(cfg.format);
            if let Err(e) = emit(Some(&cfg), &text) {
                println!("{}", error_json(&e));
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            let text = format!("{}\n", error_json(&e));
            let _ = emit(Some(&cfg), &text);
            if cfg.output_path().is_some() {
                eprint!("{text}");
            }
            ExitCode::from(2)
        }
    }
}
