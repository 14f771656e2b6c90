use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "w3", version, about = "Exact computations for the W3 algebra at central charge 6/5")]
pub struct Cli {
    /// Write machine-readable output to FILE, or to stdout with `-` (the default when no value is given).
    #[arg(long, global = true, value_name = "FILE|-", num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<String>,

    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for singular vectors of the vacuum module.
    Singular(SingularArgs),
    /// Project a vector onto the Zhu algebra or the C2 quotient.
    Zhu(ZhuArgs),
    /// Groebner bases, the module spectrum and C2 consequences.
    Ideal(IdealArgs),
    /// q-expansions of irreducible characters.
    Characters(CharactersArgs),
    /// Numerical S-transformation check of Virasoro minimal-model characters.
    ModularCheck(ModularArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SingularArgs {
    /// Conformal weight to examine.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub weight: u32,

    /// Scan every weight from `--weight` up to this one.
    #[arg(long, value_name = "H2", value_parser = clap::value_parser!(u32).range(1..))]
    pub scan_to: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ZhuArgs {
    /// A vector such as `L(-4)J(-3)^2|0>`, or `builtin:NAME` with NAME one of v12, J1v12, J2v12, J1J1v12.
    #[arg(long, value_name = "EXPR")]
    pub vector: String,

    /// Project to the C2 quotient instead of the Zhu algebra.
    #[arg(long)]
    pub c2: bool,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Groebner basis and quotient dimension of the Zhu relations.
    #[arg(long)]
    pub groebner: bool,

    /// Certify the twenty-point spectrum and pair modules with maximal ideals.
    #[arg(long)]
    pub points: bool,

    /// Nilpotency consequences of the C2 relations.
    #[arg(long)]
    pub c2_consequences: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").args(["module", "all"])))]
pub struct CharactersArgs {
    /// Module name, e.g. `M(0)` or `W_T(tau^2)(1)`.
    #[arg(long)]
    pub module: Option<String>,

    /// Every irreducible module (the default).
    #[arg(long)]
    pub all: bool,

    /// Truncation in whole powers of q (defaults to W3_TRUNCATION or 24).
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..=2000))]
    pub terms: Option<i64>,

    /// Emit `exponent,coefficient` rows on stdout.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ModularArgs {
    /// Minimal-model index: 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
    pub m: i64,

    /// Point of the upper half plane, written `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,

    /// Largest acceptable deviation.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Truncation in whole powers of q.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(i64).range(1..=2000))]
    pub terms: i64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("scope").args(["all", "check"]).required(true)))]
pub struct VerifyArgs {
    /// Run every check.
    #[arg(long)]
    pub all: bool,

    /// Run only the named check; repeatable.
    #[arg(long, value_name = "ID", value_parser = clap::builder::PossibleValuesParser::new(w3_core::verify::CHECK_IDS))]
    pub check: Vec<String>,
}
