use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stringy_cli::{run, Command, EstSource, Format, JobSpec};
use stringy_core::{FieldKind, MERSENNE_31};

/// Stringy invariants of toric Calabi-Yau hypersurfaces, computed exactly.
#[derive(Parser, Debug)]
#[command(name = "stringy", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Seed for random degree-one elements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Scalars for ring and complex computations: `rational`, `prime` or `prime:<p>`.
    #[arg(long, global = true, default_value = "prime", value_parser = parse_field)]
    field: FieldKind,
    /// Optional prime, as in `--field prime --prime 2147483629`.
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    FieldKind::parse(s).ok_or_else(|| format!("expected `rational`, `prime` or `prime:<p>`, found `{s}`"))
}

#[derive(Args, Debug)]
struct Cone {
    /// Polytope file (the cone over it is used) or cone file.
    input: PathBuf,
    /// Use the dual cone.
    #[arg(long)]
    dual: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct EstArgs {
    /// Calabi-Yau hypersurface of a reflexive polytope file.
    #[arg(long, value_name = "POLYTOPE")]
    hypersurface: Option<PathBuf>,
    /// Complete toric variety of a fan file.
    #[arg(long, value_name = "FAN")]
    toric: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Polar dual of a polytope.
    Dual { polytope: PathBuf },
    /// Prints `true` or `false`.
    CheckReflexive { polytope: PathBuf },
    /// Face lattice of a cone.
    Faces(Cone),
    /// S-polynomial of a cone.
    SPoly { input: PathBuf },
    /// Tilde-S polynomial of a cone.
    TildeS { input: PathBuf },
    /// G-polynomial of the face lattice of a cone.
    GPoly(Cone),
    /// B-polynomial of the face lattice of a cone.
    BPoly(Cone),
    /// Stringy E-function.
    #[command(name = "e-st")]
    Est(EstArgs),
    /// Stringy Hodge numbers of a hypersurface (polytope file) or string table of a fan.
    Hodge { input: PathBuf },
    /// Box points of a simplicial cone.
    Box { input: PathBuf },
    /// Graded dimensions of R0 and R1 for a random element.
    RingDims {
        input: PathBuf,
        /// Heights subdividing the cone, aligned with its degree-one points.
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// Koszul complex cohomology against the face decomposition.
    Koszul {
        polytope: PathBuf,
        /// Heights subdividing the dual cone.
        #[arg(long)]
        heights: Option<PathBuf>,
        /// Total degree cap; defaults to the cone dimension.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Regular subdivision from heights, written as a fan file.
    Subdivide {
        input: PathBuf,
        #[arg(long)]
        heights: PathBuf,
    },
    /// Runs the verification suites over the shipped fixtures.
    Verify {
        /// `all` or comma-separated fixture names.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        fixtures: Vec<String>,
        /// Comma-separated suite ids; every suite by default.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
    },
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Dual { polytope } => Command::Dual { polytope },
        Cmd::CheckReflexive { polytope } => Command::CheckReflexive { polytope },
        Cmd::Faces(c) => Command::Faces { input: c.input, dual: c.dual },
        Cmd::SPoly { input } => Command::SPoly { input },
        Cmd::TildeS { input } => Command::TildeS { input },
        Cmd::GPoly(c) => Command::GPoly { input: c.input, dual: c.dual },
        Cmd::BPoly(c) => Command::BPoly { input: c.input, dual: c.dual },
        Cmd::Est(EstArgs { hypersurface: Some(p), .. }) => Command::Est(EstSource::Hypersurface(p)),
        Cmd::Est(EstArgs { toric, .. }) => Command::Est(EstSource::Toric(toric.expect("clap requires one source"))),
        Cmd::Hodge { input } => Command::Hodge { input },
        Cmd::Box { input } => Command::Box { input },
        Cmd::RingDims { input, heights } => Command::RingDims { input, heights },
        Cmd::Koszul { polytope, heights, cap } => Command::Koszul { polytope, heights, cap },
        Cmd::Subdivide { input, heights } => Command::Subdivide { input, heights },
        Cmd::Verify { fixtures, suites } => Command::Verify { fixtures, suites },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let field = match (cli.field, cli.prime) {
        (FieldKind::Prime(MERSENNE_31), Some(p)) => FieldKind::Prime(p),
        (f, None) => f,
        (_, Some(_)) => {
            eprintln!("error: ParseError: `--prime` requires `--field prime`");
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let spec = JobSpec { command: command(cli.command), seed: cli.seed, field, format };
    let outcome = run(&spec);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
