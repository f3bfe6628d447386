use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "resint", version, about = "Residual intersections, links and monomial singularity invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal
    Gb(ProblemArgs),
    /// Krull dimension and codimension
    Dim(ProblemArgs),
    /// Colon ideal (I : J) for --ideal I --by J
    Colon(ProblemArgs),
    /// Saturation (I : J^∞) for --ideal I --by J
    Saturate(ProblemArgs),
    /// Elimination ideal keeping the variables in --keep
    Eliminate(ProblemArgs),
    /// Image closure of the map given by a generator system
    Implicitize(ProblemArgs),
    /// General t-residual intersection with stability trials
    Residual(ProblemArgs),
    /// Emptiness prediction from the dimension of k[f_1, ..., f_r]
    Predict(ProblemArgs),
    /// Generator system extended by x_i * f_1 for every variable
    Augment(ProblemArgs),
    /// General link: residual with t = codim X
    Link(ProblemArgs),
    /// Colon-ideal residual (I_M : I_X) against the saturation
    HuCompare(ProblemArgs),
    /// Jacobian singular locus of a nonempty residual
    SingCheck(ProblemArgs),
    /// Log canonical threshold of a monomial ideal
    LctMonomial(ProblemArgs),
    /// Generalized threshold for --ideal X --by Z --lambda λ
    GlctMonomial(ProblemArgs),
    /// Minimal log discrepancy at the origin of monomial ideals
    MldMonomial(ProblemArgs),
    /// Multiplier ideal of a monomial ideal at --exponent c
    MultIdeal(ProblemArgs),
    /// Dimension of the level-m jet scheme (--level m)
    Jets(ProblemArgs),
    /// Jet-scheme estimate of the log canonical threshold over levels 0..=--level
    LctJets(ProblemArgs),
    /// Run the golden corpus
    Corpus(CorpusArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Dim(_) => "dim",
            Command::Colon(_) => "colon",
            Command::Saturate(_) => "saturate",
            Command::Eliminate(_) => "eliminate",
            Command::Implicitize(_) => "implicitize",
            Command::Residual(_) => "residual",
            Command::Predict(_) => "predict",
            Command::Augment(_) => "augment",
            Command::Link(_) => "link",
            Command::HuCompare(_) => "hu-compare",
            Command::SingCheck(_) => "sing-check",
            Command::LctMonomial(_) => "lct-monomial",
            Command::GlctMonomial(_) => "glct-monomial",
            Command::MldMonomial(_) => "mld-monomial",
            Command::MultIdeal(_) => "mult-ideal",
            Command::Jets(_) => "jets",
            Command::LctJets(_) => "lct-jets",
            Command::Corpus(_) => "corpus",
        }
    }

    pub fn problem_args(&self) -> Option<&ProblemArgs> {
        match self {
            Command::Corpus(_) => None,
            Command::Gb(a)
            | Command::Dim(a)
            | Command::Colon(a)
            | Command::Saturate(a)
            | Command::Eliminate(a)
            | Command::Implicitize(a)
            | Command::Residual(a)
            | Command::Predict(a)
            | Command::Augment(a)
            | Command::Link(a)
            | Command::HuCompare(a)
            | Command::SingCheck(a)
            | Command::LctMonomial(a)
            | Command::GlctMonomial(a)
            | Command::MldMonomial(a)
            | Command::MultIdeal(a)
            | Command::Jets(a)
            | Command::LctJets(a) => Some(a),
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct ProblemArgs {
    /// Problem file in the `.ri` format
    pub input: PathBuf,
    /// Number of general sections
    #[arg(long)]
    pub t: Option<usize>,
    /// Seed for the coefficient matrix (default: the file's `seed`, else 42)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Extra stability trials on derived seeds
    #[arg(long)]
    pub trials: Option<usize>,
    /// Jet level (jets) or highest level (lct-jets)
    #[arg(long)]
    pub level: Option<usize>,
    /// Weight λ of the auxiliary ideal, e.g. 1/2
    #[arg(long)]
    pub lambda: Option<String>,
    /// Exponent c, e.g. 3/2
    #[arg(long)]
    pub exponent: Option<String>,
    /// Reduction-step budget for Gröbner computations
    #[arg(long)]
    pub budget: Option<u64>,
    /// Name of the ideal to use
    #[arg(long)]
    pub ideal: Option<String>,
    /// Name of the second ideal (divisor, saturating ideal or auxiliary ideal)
    #[arg(long)]
    pub by: Option<String>,
    /// Name of the generator system to use
    #[arg(long)]
    pub system: Option<String>,
    /// Comma-separated variables kept by eliminate
    #[arg(long)]
    pub keep: Option<String>,
    /// Monomial order for gb: grevlex or lex
    #[arg(long)]
    pub order: Option<String>,
    /// Extend the generator system by x_i * f_1 first
    #[arg(long)]
    pub augment: bool,
    /// Factors NAME^EXP of the formal product for mld-monomial, repeatable
    #[arg(long)]
    pub factor: Vec<String>,
    /// mld-monomial: minimal MJ-log discrepancy of the variety cut out by --ideal
    #[arg(long)]
    pub mj: bool,
    /// Jets over the declared field instead of F_32003
    #[arg(long)]
    pub exact: bool,
}

impl ProblemArgs {
    /// The flags in a fixed order, excluding the input path.
    pub fn canonical(&self) -> String {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push(format!("--{k} {v}"));
            }
        };
        push("t", self.t.map(|v| v.to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("trials", self.trials.map(|v| v.to_string()));
        push("level", self.level.map(|v| v.to_string()));
        push("lambda", self.lambda.clone());
        push("exponent", self.exponent.clone());
        push("budget", self.budget.map(|v| v.to_string()));
        push("ideal", self.ideal.clone());
        push("by", self.by.clone());
        push("system", self.system.clone());
        push("keep", self.keep.clone());
        push("order", self.order.clone());
        for f in &self.factor {
            push("factor", Some(f.clone()));
        }
        for (flag, on) in [("augment", self.augment), ("mj", self.mj), ("exact", self.exact)] {
            if on {
                out.push(format!("--{flag}"));
            }
        }
        out.join(" ")
    }
}

#[derive(Clone, Debug, Args)]
pub struct CorpusArgs {
    /// Corpus directory (default: the repository's corpus/)
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Rewrite the expected files from the current outputs
    #[arg(long)]
    pub bless: bool,
}
