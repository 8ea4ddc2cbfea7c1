mod cache;
mod commands;
mod names;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::{AssignArgs, AssignKind, CheckArgs, ModuleArgs, Outcome, Property, Session};
use std::path::PathBuf;
use std::process::ExitCode;

/// Faithfully balanced modules, relative homological algebra and cotilting correspondences
/// over bound quiver algebras, computed exactly.
#[derive(Parser)]
#[command(name = "qfb", version)]
struct Cli {
    /// Human-readable listing instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Ignore and do not write the catalog cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest number of indecomposables to knit.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_modules: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Modules {
    /// The module M, referenced as `M` in other expressions.
    #[arg(long = "M")]
    m: Option<String>,
    /// Generator of the exact structure, or `auto` for Λ ⊕ M.
    #[arg(long = "G")]
    g: Option<String>,
    /// Cogenerator of the exact structure, or `auto` for DΛ ⊕ M.
    #[arg(long = "H")]
    h: Option<String>,
    /// Extra named module, NAME=EXPR; repeatable.
    #[arg(long = "let", value_name = "NAME=EXPR")]
    lets: Vec<String>,
}

impl Modules {
    fn args(self) -> ModuleArgs {
        ModuleArgs { m: self.m, lets: self.lets, g: self.g, h: self.h }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Knit the AR quiver and list the indecomposables.
    Knit {
        algebra: PathBuf,
        /// Write the AR quiver in DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// JSON list of modules seeding components without projectives.
        #[arg(long)]
        supplement: Option<PathBuf>,
    },
    /// Decide a property; exit 0 when it holds, 1 when it fails, 2 on error.
    Check {
        property: Property,
        algebra: PathBuf,
        modules: Vec<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Cap on resolution lengths.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[command(flatten)]
        modules_args: Modules,
    },
    /// Run an assignment on a tuple.
    Assign {
        kind: AssignKind,
        algebra: PathBuf,
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long = "R")]
        r: Option<String>,
        /// The cotilting module of a triangle run.
        #[arg(long = "C")]
        c: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        verify_involution: bool,
        #[command(flatten)]
        modules_args: Modules,
    },
    /// Enumerate the basic faithfully balanced modules and their poset.
    EnumerateFb {
        algebra: PathBuf,
        /// Write the Hasse diagram in DOT.
        #[arg(long)]
        hasse: Option<PathBuf>,
    },
    /// The lattice of special cotilting modules for F = F_G.
    SpecialCotilts {
        algebra: PathBuf,
        #[arg(long = "G")]
        g: String,
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long = "let", value_name = "NAME=EXPR")]
        lets: Vec<String>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let s = Session { use_cache: !cli.no_cache, max_modules: cli.max_modules };
    match cli.cmd {
        Cmd::Knit { algebra, dot, supplement } => commands::knit(&s, &algebra, dot.as_deref(), supplement.as_deref()),
        Cmd::Check { property, algebra, modules, k, cap, modules_args } => {
            commands::check(&s, &algebra, &CheckArgs { property, modules, k, cap }, &modules_args.args())
        }
        Cmd::Assign { kind, algebra, l, r, c, k, verify_involution, modules_args } => {
            commands::assign_cmd(&s, &algebra, &AssignArgs { kind, l, r, c, k, verify_involution }, &modules_args.args())
        }
        Cmd::EnumerateFb { algebra, hasse } => commands::enumerate_fb(&s, &algebra, hasse.as_deref()),
        Cmd::SpecialCotilts { algebra, g, r, dot, m, lets } => {
            let margs = ModuleArgs { m, lets, g: None, h: None };
            commands::special_cotilts_cmd(&s, &algebra, &g, r, dot.as_deref(), &margs)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli) {
        Ok(out) => {
            print!("{}", output::render(&out.report, pretty));
            match out.verdict {
                Some(false) => {
                    if let Some(o) = out.obstruction {
                        eprintln!("{o}");
                    }
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
