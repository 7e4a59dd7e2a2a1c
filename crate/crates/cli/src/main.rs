//! `strucalg`: build, check and analyse structure-constant algebras.

mod commands;
mod parse;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "strucalg", version, about = "Exact computations with structure-constant algebras")]
pub struct Cli {
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named algebra and print its file.
    Construct(ConstructArgs),
    /// Check ring axioms of an algebra file.
    Check(CheckArgs),
    /// Annihilators, centers, series and the triangular annihilator formula.
    Invariants(FileArgs),
    /// Kernel and image identities of the annihilator analysis maps.
    Chain(ChainArgs),
    /// Derivation space, optionally vanishing on given elements.
    Derivations(DerivationArgs),
    /// Lift a derivation or a map on m to an automorphism.
    LiftAut(LiftAutArgs),
    /// Iterate a lifted automorphism on an element modulo a subspace.
    Orbit(OrbitArgs),
    /// Orbit witnesses over characteristic 0 or p.
    Witness(WitnessArgs),
    /// Group axioms of x*y = x + y + ½[x,y].
    Bch(BchArgs),
    /// Locality, characteristic, representatives and the m = ann(m) criterion.
    Localring(LocalringArgs),
    /// Idempotent decomposition of a finite commutative ring.
    Decompose(RingArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Field,
    Heisenberg,
    TwoDimLie,
    TrivialMult,
    TruncatedPoly,
    NullQuadratic,
    MatrixAlgebra,
    MatrixLie,
    SemidirectDouble,
    SOf,
    LocalSum,
    ScalarTriangular,
    Ring2,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    /// Scalar field: Q, GF(p), GF(p^k), Q(t), GF(p)(t).
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Size parameter (Heisenberg n, dimension, matrix size, truncation degree).
    #[arg(long)]
    pub n: Option<usize>,
    /// Prime for null_quadratic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Input algebra for semidirect-double, s-of and local-sum.
    #[arg(long)]
    pub from: Option<String>,
    /// Also write the algebra file here.
    #[arg(long, short)]
    pub output: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Lie,
    Associative,
    Commutative,
    Unital,
    TwoStep,
    Nilpotent,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub file: String,
    /// Properties to assert; defaults follow the file's construction kind.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub expect: Vec<Expect>,
    /// Write the canonical serialization here.
    #[arg(long, short)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: String,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    pub file: String,
    /// Treat the file as B and analyse S(B ⋉ B⁺).
    #[arg(long)]
    pub s_case: bool,
}

#[derive(Args, Debug)]
pub struct DerivationArgs {
    pub file: String,
    /// Elements the derivations must kill.
    #[arg(long)]
    pub vanish: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct LiftArgs {
    /// δ = coordinatewise derivative from the ring part to the module part.
    #[arg(long)]
    pub hat: bool,
    /// δ(α) = ∂α·x0 for x0 in the module part.
    #[arg(long)]
    pub scalar: Option<String>,
    /// δ as {"linear": [[..]], "derivative": [[..]]} or @file.
    #[arg(long)]
    pub delta: Option<String>,
    /// g on m in m-coordinates, as [[..]] or @file.
    #[arg(long)]
    pub local_g: Option<String>,
    /// f: m/ann(m) → ann(m), as [[..]] or @file.
    #[arg(long)]
    pub local_f: Option<String>,
    /// Builder: element to fix (repeatable).
    #[arg(long)]
    pub fix: Vec<String>,
    /// Builder: `b:b'` sends b to b' (repeatable).
    #[arg(long)]
    pub pair: Vec<String>,
}

#[derive(Args, Debug)]
pub struct LiftAutArgs {
    pub file: String,
    #[command(flatten)]
    pub lift: LiftArgs,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    pub file: String,
    #[command(flatten)]
    pub lift: LiftArgs,
    /// Starting element.
    #[arg(long)]
    pub base: String,
    /// Subspace to work modulo: a tag, `annihilator`, `zero`, or spanning elements.
    #[arg(long, default_value = "annihilator")]
    pub modulo: String,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// Assert this many distinct cosets.
    #[arg(long)]
    pub expect_distinct: Option<usize>,
    /// Assert this period.
    #[arg(long)]
    pub expect_period: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKindArg {
    Vector,
    Lie,
    SRing,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub kind: WitnessKindArg,
    /// 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// Dimension of V for the vector kind.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Heisenberg parameter for the Lie and S-ring kinds.
    #[arg(long, default_value_t = 1)]
    pub heisenberg_n: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BchMode {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
pub struct BchArgs {
    pub file: String,
    #[arg(long, value_enum, default_value = "random")]
    pub check: BchMode,
    /// Random triples for the random mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    /// Algebra file over a finite field.
    #[arg(required_unless_present = "cyclic", conflicts_with = "cyclic")]
    pub file: Option<String>,
    /// Use Z/n instead of a file.
    #[arg(long)]
    pub cyclic: Option<u64>,
}

#[derive(Args, Debug)]
pub struct LocalringArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Maximal ideal: a tag or spanning elements; defaults to the maximal_ideal tag.
    #[arg(long)]
    pub maximal_ideal: Option<String>,
    /// Compute multiplicative representatives b^(p^n).
    #[arg(long)]
    pub teichmuller: Option<u32>,
    /// Check a Cohen complement spanned by these elements.
    #[arg(long)]
    pub cohen: Option<String>,
    /// Build the field on ann(m) for the truncated ring over this field.
    #[arg(long)]
    pub interp: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = commands::run(&cli);
    print!("{}", report.render(cli.json));
    if report.exit == 2 && !cli.json {
        for p in &report.properties {
            eprintln!("error: {}", p.detail);
        }
    }
    ExitCode::from(report.exit as u8)
}

/// Report for an input or precondition error.
pub fn usage_error(command: &str, err: &strucalg::Error) -> Report {
    let mut r = Report::new(command);
    r.check("input", false, err.to_string());
    r.exit = 2;
    r
}
