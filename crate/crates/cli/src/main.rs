use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modrep_cli::commands::{self, ModularArgs, TowerArgs, TowerFamily};
use modrep_cli::verify::{self, Injection};
use modrep_cli::{Cache, CliError, GroupSpec, ResultEnvelope};

/// Character tables, Brauer tables, decomposition and Cartan matrices of
/// finite matrix groups, and Cartan matrices along congruence towers.
#[derive(Parser)]
#[command(name = "modrep", version)]
struct Cli {
    /// Directory for cached results; caching is off when unset.
    #[arg(long, global = true, env = "MODREP_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Write the result envelope here instead of standard output.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Seed for the meataxe.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinary character table.
    Chartable(SpecArgs),
    /// Brauer character table over F_{p^e}.
    Brauertable(FieldArgs),
    /// Decomposition matrix D.
    Decomp(FieldArgs),
    /// Cartan matrix C = D^T D with D and the blocks.
    Cartan(FieldArgs),
    /// p-blocks.
    Blocks(FieldArgs),
    /// C_1, B and C_n = B^(n-1) C_1 along a congruence tower.
    Tower(TowerCmd),
    /// Reproduce the SL2(Z_3) example and compare with the published matrices.
    VerifyPaperExample(VerifyCmd),
}

#[derive(Args)]
struct SpecArgs {
    /// Group spec JSON file.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    p: u32,
    /// Degree e of F_{p^e}; by default the smallest splitting degree.
    #[arg(long)]
    field_degree: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sl2,
    S3,
}

#[derive(Args)]
struct TowerCmd {
    #[arg(long, value_enum, default_value = "sl2")]
    family: FamilyArg,
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// Levels to enumerate; depth 3 adds the uniformity witness.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 3)]
    n_max: u64,
}

#[derive(Args)]
struct VerifyCmd {
    /// Perturb an expected matrix: target,row,col,delta with target one of c1, b, c2, c3.
    #[arg(long, hide = true)]
    inject: Vec<Injection>,
}

fn modular(args: &FieldArgs, seed: u64) -> Result<ModularArgs, CliError> {
    Ok(ModularArgs { spec: GroupSpec::read(&args.spec.spec)?, p: args.p, field_degree: args.field_degree, seed })
}

fn emit(env: &ResultEnvelope, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(env).expect("envelopes serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| CliError::Write { path: path.into(), source }),
        None => {
            print_stdout(&(text + "\n"));
            Ok(())
        }
    }
}

/// A closed pipe on standard output is not an error worth a panic.
fn print_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cache = cli.cache_dir.as_ref().map_or_else(Cache::disabled, Cache::at);
    let out = cli.json_out.as_deref();
    let env = match &cli.command {
        Command::Chartable(a) => commands::chartable(&GroupSpec::read(&a.spec)?, &cache)?,
        Command::Brauertable(a) => commands::brauertable(&modular(a, cli.seed)?, &cache)?,
        Command::Decomp(a) => commands::decomp(&modular(a, cli.seed)?, &cache)?,
        Command::Cartan(a) => commands::cartan(&modular(a, cli.seed)?, &cache)?,
        Command::Blocks(a) => commands::blocks(&modular(a, cli.seed)?, &cache)?,
        Command::Tower(a) => {
            let family = match a.family {
                FamilyArg::Sl2 => TowerFamily::Sl2,
                FamilyArg::S3 => TowerFamily::S3,
            };
            let args = TowerArgs { family, p: a.p, depth: a.depth, n_max: a.n_max, seed: cli.seed };
            commands::tower(&args, &cache)?
        }
        Command::VerifyPaperExample(a) => {
            let (env, report) = verify::verify_paper_example(cli.seed, &cache, &a.inject)?;
            print_stdout(&report.render());
            if let Some(path) = out {
                emit(&env, Some(path))?;
            }
            if !report.passed() {
                return Err(CliError::Mismatch(report.failures()));
            }
            print_stdout("PASS\n");
            return Ok(());
        }
    };
    emit(&env, out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
