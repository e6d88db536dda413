use clap::{Parser, Subcommand, ValueEnum};
use kappalat_cli::budget::{Budget, ENV_VAR};
use kappalat_cli::dot::{self, DotKind};
use kappalat_cli::generate::{self, Family, Params};
use kappalat_cli::meta::parse_range;
use kappalat_cli::{load, read_input, report, verify, CliError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Finite lattice analysis: left modular elements, extremality, κ and
/// labelling quivers.
#[derive(Parser)]
#[command(name = "kappalat", version)]
struct Cli {
    /// Cap on enumerated chains and linear extensions.
    #[arg(long, global = true)]
    max_chains: Option<usize>,
    /// Cap on enumerated successor-closed sets.
    #[arg(long, global = true)]
    max_sets: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report structural flags, verdicts and certificates.
    Analyze {
        /// lattice-v1 file, or `-` for stdin
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a fixture lattice.
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        /// Forbidden interval `a..b` (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        /// Poset relation `a,b` meaning a < b, for `downset` (repeatable).
        #[arg(long)]
        rel: Vec<String>,
        /// Refuse algebras with more indecomposables than this.
        #[arg(long)]
        max_ind: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-check battery; exit 1 on any failure.
    Verify {
        /// lattice-v1 file, or `-` for stdin
        path: PathBuf,
    },
    /// Export a DOT graph.
    Dot {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Hasse)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hasse,
    Labelling,
    Brick,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Boolean,
    Chain,
    Downset,
    Tamari,
    #[value(name = "weak_order")]
    WeakOrder,
    #[value(name = "nakayama_tors")]
    NakayamaTors,
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let env = std::env::var(ENV_VAR).ok();
    let budget = Budget::resolve(cli.max_chains, cli.max_sets, env.as_deref())?;
    match cli.command {
        Command::Analyze { path, format } => {
            let (l, meta) = load(&read_input(&path)?)?;
            let r = report::analyze(&l, &meta, &budget)?;
            let text = match format {
                Format::Text => report::to_text(&r),
                Format::Json => report::to_json(&r),
            };
            emit(None, &text)?;
            Ok(0)
        }
        Command::Generate {
            family,
            n,
            forbid,
            rel,
            max_ind,
            out,
        } => {
            let forbid = forbid
                .iter()
                .map(|s| {
                    parse_range(s).ok_or_else(|| {
                        CliError::Input(format!("bad interval `{s}`, expected a..b"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let relations = rel
                .iter()
                .map(|s| {
                    s.split_once(',')
                        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                        .ok_or_else(|| CliError::Input(format!("bad relation `{s}`, expected a,b")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let family = match family {
                FamilyArg::Boolean => Family::Boolean,
                FamilyArg::Chain => Family::Chain,
                FamilyArg::Downset => Family::Downset,
                FamilyArg::Tamari => Family::Tamari,
                FamilyArg::WeakOrder => Family::WeakOrder,
                FamilyArg::NakayamaTors => Family::NakayamaTors,
            };
            let params = Params {
                n,
                forbid,
                relations,
                max_indecomposables: max_ind,
            };
            emit(out.as_deref(), &generate::generate(family, &params)?)?;
            Ok(0)
        }
        Command::Verify { path } => {
            let (l, _) = load(&read_input(&path)?)?;
            let checks = verify::run(&l, &budget);
            for c in &checks {
                println!("{c}");
            }
            Ok(verify::exit_code(&checks))
        }
        Command::Dot { path, kind, out } => {
            let (l, meta) = load(&read_input(&path)?)?;
            let kind = match kind {
                Kind::Hasse => DotKind::Hasse,
                Kind::Labelling => DotKind::Labelling,
                Kind::Brick => DotKind::Brick,
            };
            emit(out.as_deref(), &dot::render(&l, &meta, kind)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("kappalat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
