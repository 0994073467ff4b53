use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spark_cli::commands::{self, CliError, Config, Report};
use spark_cli::format::parse_rat_list;
use spark_core::arith::Rat;
use spark_core::models::ModelKind;

#[derive(Parser)]
#[command(name = "sparks", version, about = "Exact spark complexes and differential characters on simplicial complexes")]
struct Cli {
    /// Barycentric subdivision depth of the working models.
    #[arg(long, global = true, default_value_t = 1)]
    depth: usize,
    /// Depth at which axiom (B) is re-certified by `verify`.
    #[arg(long, global = true, default_value_t = 2)]
    cert_depth: usize,
    /// Restrict to one model: cs, smooth-hyperspark or cochain-hyperspark.
    #[arg(long, global = true)]
    model: Option<String>,
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the spark axioms and embeddings for a complex, or check a
    /// witness file against two grundles or sparks.
    Verify {
        #[arg(required = true, num_args = 1..=3)]
        files: Vec<PathBuf>,
    },
    /// Cohomology groups of a complex.
    Cohomology {
        complex: PathBuf,
        /// z, q or z/N
        #[arg(long, default_value = "z")]
        ring: String,
    },
    /// The character diagram of a complex.
    Characters { complex: PathBuf },
    /// Holonomy of a grundle around a cycle, by every available route.
    Holonomy { grundle: PathBuf, cycle: PathBuf },
    /// Decide gauge or spark equivalence, printing a witness.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// The Hodge spark of a closed integer cochain.
    HodgeSpark { complex: PathBuf, cochain: PathBuf },
    /// Abel-Jacobi image of a cochain Γ with integral boundary.
    AbelJacobi { complex: PathBuf, cochain: PathBuf },
    /// Pull a CS spark back along a simplicial map given on vertices.
    Pullback {
        source: PathBuf,
        target: PathBuf,
        spark: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// A flat grundle with prescribed holonomy on the free homology basis.
    FlatGrundle {
        complex: PathBuf,
        /// Comma separated fractions, e.g. 1/3,1/4
        #[arg(long)]
        coords: String,
    },
    /// A flat class with prescribed free coordinates as a spark file.
    FlatSpark {
        complex: PathBuf,
        #[arg(long)]
        coords: String,
    },
    /// Print a complex in the file format.
    Show { complex: PathBuf },
    /// A homology generator as a cycle file.
    Cycles {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

fn parse_coords(s: &str) -> Result<Vec<Rat>, CliError> {
    parse_rat_list(s).ok_or_else(|| CliError::Input(format!("cannot parse `{}` as fractions", s)))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let model = match &cli.model {
        Some(m) => Some(ModelKind::parse(m).ok_or_else(|| CliError::Input(format!("unknown model `{}`", m)))?),
        None => None,
    };
    let cfg = Config { depth: cli.depth, cert_depth: cli.cert_depth, model, degree: cli.degree };
    match &cli.command {
        Command::Verify { files } => commands::verify(files, &cfg),
        Command::Cohomology { complex, ring } => commands::cohomology(complex, ring, &cfg),
        Command::Characters { complex } => commands::characters(complex, &cfg),
        Command::Holonomy { grundle, cycle } => commands::holonomy(grundle, cycle),
        Command::Equiv { left, right, witness } => commands::equiv(left, right, witness.as_deref()),
        Command::HodgeSpark { complex, cochain } => commands::hodge_spark_cmd(complex, cochain),
        Command::AbelJacobi { complex, cochain } => commands::abel_jacobi_cmd(complex, cochain),
        Command::Pullback { source, target, spark, map } => commands::pullback_cmd(source, target, spark, map),
        Command::FlatGrundle { complex, coords } => commands::flat_grundle(complex, &parse_coords(coords)?, &cfg),
        Command::FlatSpark { complex, coords } => commands::flat_spark(complex, &parse_coords(coords)?, &cfg),
        Command::Show { complex } => commands::show(complex),
        Command::Cycles { complex, index } => commands::cycles(complex, *index, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", r.text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("json")),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
