use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use skewtensor::verify::{run, RunConfig, ThetaSource};

#[derive(Parser, Debug)]
#[command(name = "skewtensor", version, about = "Exact checks for a general tensor in V4* (x) Lambda^2 V5*")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML file with RunConfig fields; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// ozeki, s5 or file:PATH
    #[arg(long, global = true)]
    theta: Option<ThetaSource>,
    /// comma separated, e.g. 7,11,13
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// write the JSON report here
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// worker threads; 0 uses all cores
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// check id glob, repeatable
    #[arg(long, global = true)]
    only: Vec<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// print only the summary table
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// every check
    All,
    /// point counts and the Betti fit
    Count,
    /// Schubert, Chern and intersection numbers
    Chow,
    /// characters, Bott and Koszul
    Rep,
    /// pentads, Cremona-Richmond, Petersen
    Config,
    /// explicit tensors, cubic, quartic
    Models,
    /// Grothendieck relation
    Audit,
}

impl Command {
    fn prefix(self) -> Option<&'static str> {
        match self {
            Command::All => None,
            Command::Count => Some("count"),
            Command::Chow => Some("chow"),
            Command::Rep => Some("rep"),
            Command::Config => Some("config"),
            Command::Models => Some("models"),
            Command::Audit => Some("audit"),
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&s).with_context(|| format!("parsing {}", p.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(t) = &cli.theta {
        c.theta = t.clone();
    }
    if let Some(p) = &cli.primes {
        c.primes = p.clone();
    }
    if cli.report.is_some() {
        c.report = cli.report.clone();
    }
    if let Some(n) = cli.threads {
        c.threads = n;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if !cli.only.is_empty() {
        c.only = cli.only.clone();
    }
    if let Some(prefix) = cli.command.prefix() {
        if c.only.is_empty() {
            c.only = vec![format!("{prefix}.*")];
        } else if let Some(g) = c.only.iter().find(|g| !g.starts_with(prefix)) {
            bail!("--only {g:?} lies outside the `{prefix}` checks");
        }
    }
    c.validate()?;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if !cli.quiet {
        for r in &report.checks {
            println!("{:<18} {:<52} {}", r.status.to_string(), r.id, r.computed);
        }
        println!();
    }
    print!("{}", report.summary_table());
    if let Some(path) = &config.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
