//! `brauerkit`: Brauer relations, regulator constants and permutation
//! pairings of finite groups from the command line.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, CliResult, LatticeSource, PairingChoice};
use output::{Envelope, Format, Report};

#[derive(Parser)]
#[command(name = "brauerkit", version, about = "Brauer relations and regulator constants of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Prime p.
    #[arg(short = 'p', long = "prime", global = true)]
    p: Option<u64>,
    /// Characteristic of the relation space (0 or a prime).
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Subgroup class label `order:index`.
    #[arg(long, global = true)]
    subgroup: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup classes of a group.
    Group { spec: String },
    /// Basis of the Brauer relations in characteristic --char (default 0).
    Relations { spec: String },
    /// The Artin relation, or θ_H induced from --subgroup.
    Artin { spec: String },
    /// The Conlon relation at -p.
    Conlon { spec: String },
    /// The Möbius relation θ_Σ; with -p also its Artin coordinates.
    ThetaSigma { spec: String },
    /// v_p of regulator constants on permutation modules.
    Regulator {
        spec: String,
        /// artin, sigma, conlon or basis:<i>
        #[arg(long, default_value = "artin")]
        theta: String,
    },
    /// Regulator constant pairings.
    Pairing {
        spec: String,
        #[arg(long, conflicts_with_all = ["star", "char_pairing"])]
        perm: bool,
        #[arg(long, conflicts_with = "char_pairing")]
        star: bool,
        #[arg(long = "char-pairing")]
        char_pairing: bool,
    },
    /// v_p(C_θ(𝟙)) for the Artin relation by three routes.
    Nonvanishing { spec: String },
    /// Divisor matrices: `N <n>`, `M <n> <s>` or `Q <d>`.
    GcdMatrix { kind: String, n: u64, s: Option<u64> },
    /// Species classes and the perm = triv criterion.
    Species { spec: String },
    /// Regulator constants from Gram determinants on an explicit lattice.
    Oracle {
        spec: String,
        #[arg(long, default_value = "artin")]
        theta: String,
        /// Lattice file (`d m`, then `g` and d rows per generator).
        #[arg(long, conflicts_with = "builtin")]
        lattice: Option<PathBuf>,
        /// eps, A or A' on D_2p.
        #[arg(long)]
        builtin: Option<String>,
    },
    /// H¹(⟨g⟩, M) as invariant factors.
    H1 {
        spec: String,
        #[arg(long)]
        element: usize,
        #[arg(long, conflicts_with = "builtin")]
        lattice: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Run the invariant checks over `spec prime` pairs (default: built-in catalog).
    Sweep { config: Option<PathBuf> },
}

fn source(lattice: Option<PathBuf>, builtin: Option<String>, subgroup: Option<String>) -> LatticeSource {
    match (lattice, builtin) {
        (Some(path), _) => LatticeSource::File(path),
        (None, Some(name)) => LatticeSource::Builtin(name),
        (None, None) => LatticeSource::Perm(subgroup),
    }
}

fn run(cli: Cli) -> CliResult<(String, Option<String>, Option<u64>, Report, bool)> {
    let p = cli.p;
    let sub = cli.subgroup.clone();
    let lat = commands::load_lattice;
    let ok = |name: &str, spec: &str, p: Option<u64>, r: Report| Ok((name.to_string(), Some(spec.to_string()), p, r, true));
    match cli.command {
        Command::Group { spec } => ok("group", &spec, None, commands::group(&lat(&spec)?)),
        Command::Relations { spec } => {
            let c = cli.characteristic.unwrap_or(0);
            ok("relations", &spec, p, commands::relations(&lat(&spec)?, c)?)
        }
        Command::Artin { spec } => ok("artin", &spec, None, commands::artin(&lat(&spec)?, sub.as_deref())?),
        Command::Conlon { spec } => {
            let p = commands::require_prime(p)?;
            ok("conlon", &spec, Some(p), commands::conlon(&lat(&spec)?, p)?)
        }
        Command::ThetaSigma { spec } => ok("theta-sigma", &spec, p, commands::theta_sigma_cmd(&lat(&spec)?, p)?),
        Command::Regulator { spec, theta } => {
            let p = commands::require_prime(p)?;
            ok("regulator", &spec, Some(p), commands::regulator(&lat(&spec)?, p, &theta, sub.as_deref())?)
        }
        Command::Pairing { spec, perm: _, star, char_pairing } => {
            let p = commands::require_prime(p)?;
            let choice = match (star, char_pairing) {
                (true, _) => PairingChoice::Star,
                (_, true) => PairingChoice::Char,
                _ => PairingChoice::Perm,
            };
            ok("pairing", &spec, Some(p), commands::pairing(&lat(&spec)?, p, choice)?)
        }
        Command::Nonvanishing { spec } => {
            let p = commands::require_prime(p)?;
            ok("nonvanishing", &spec, Some(p), commands::nonvanishing(&lat(&spec)?, p)?)
        }
        Command::GcdMatrix { kind, n, s } => {
            Ok(("gcd-matrix".into(), None, None, commands::gcd_matrix(&kind, n, s)?, true))
        }
        Command::Species { spec } => {
            let p = commands::require_prime(p)?;
            ok("species", &spec, Some(p), commands::species(&lat(&spec)?, p)?)
        }
        Command::Oracle { spec, theta, lattice, builtin } => {
            let p = commands::require_prime(p)?;
            let src = source(lattice, builtin, sub);
            ok("oracle", &spec, Some(p), commands::oracle(&spec, p, &theta, &src)?)
        }
        Command::H1 { spec, element, lattice, builtin } => {
            let src = source(lattice, builtin, sub);
            ok("h1", &spec, p, commands::h1(&spec, p, element, &src)?)
        }
        Command::Sweep { config } => {
            let (report, pass) = commands::sweep(config.as_deref())?;
            Ok(("sweep".into(), None, None, report, pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok((command, group, prime, report, pass)) => {
            let env = Envelope { command: &command, group: group.as_deref(), prime, format };
            match output::render(&env, &report) {
                Ok(text) => {
                    let _ = std::io::stdout().write_all(text.as_bytes());
                    if pass {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("error: {}", CliError::Failed("some checks failed".into()));
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
