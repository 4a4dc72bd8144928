use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "nhairy",
    version,
    about = "Zeros, Laurent walks and identity checks for y'' = (az+b)y + c"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zeros on a real interval or on the three rays of the double-zero solution.
    Zeros(ZerosArgs),
    /// Walk from the origin through successive zeros by the Laurent ratio limit.
    LaurentWalk(WalkArgs),
    /// Exact ray-zero moduli against the asymptotic formula.
    TableZa(TableArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
    /// Scorer and Airy functions at a point.
    Scorer(ScorerArgs),
    /// The hypergeometric function 1F2(a1; b1, b2; x).
    Hyp1f2(HypArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Slope of the potential, `x` or `x,y` for complex values.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    /// Forcing constant.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    /// y'(0) of the solution vanishing at the origin.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub deriv: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Significant digits printed for each number.
    #[arg(long, default_value_t = 15)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("region").required(true).args(["real", "rays"])))]
pub struct ZerosArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Real interval `LO:HI` (open).
    #[arg(long, allow_hyphen_values = true)]
    pub real: Option<String>,
    /// Ray zeros of the solution with a double zero at the origin (needs b = 0).
    #[arg(long)]
    pub rays: bool,
    /// Number of zero triples along the rays.
    #[arg(long, default_value_t = 3)]
    pub max_k: u32,
    /// Use the solution with a double zero at this point instead of the
    /// one vanishing simply at the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub double_at: Option<String>,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Laurent coefficients per step.
    #[arg(long, default_value_t = 80)]
    pub terms: usize,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value_t = 20)]
    pub max_k: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Transform,
    Quasiperiod,
    Homogeneity,
    Energy,
    Scorer,
    Polya,
    Lommel,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Transform,
        Check::Quasiperiod,
        Check::Homogeneity,
        Check::Energy,
        Check::Scorer,
        Check::Polya,
        Check::Lommel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Transform => "transform",
            Check::Quasiperiod => "quasiperiod",
            Check::Homogeneity => "homogeneity",
            Check::Energy => "energy",
            Check::Scorer => "scorer",
            Check::Polya => "polya",
            Check::Lommel => "lommel",
        }
    }
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["check", "all"])))]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, value_enum)]
    pub check: Vec<Check>,
    #[arg(long)]
    pub all: bool,
    /// Scale factor for the homogeneity check.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Args, Debug)]
pub struct ScorerArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub z: String,
}

#[derive(Args, Debug)]
pub struct HypArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}
