use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with integer-valued polynomials, Witt vectors,
/// filtrations and bar/cobar homology.
///
/// Exit status: 0 on success, 2 on malformed input, 3 when a statement that
/// must hold as a theorem fails (a falsification).
#[derive(Parser, Debug)]
#[command(name = "hilbert", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for kernel enumeration and homology strands
    /// (0 picks one per core). Output order does not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The Hopf algebra Int(Z) in the binomial basis.
    #[command(subcommand)]
    Intz(IntzCommand),
    /// Truncated Witt vectors.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Filtered modules, Rees algebras and the Drinfeld deformation.
    #[command(subcommand)]
    Filt(FiltCommand),
    /// Bar and cobar homology tables.
    #[command(subcommand)]
    Homology(HomologyCommand),
    /// Print the man page (roff) to stdout, or write one page per
    /// subcommand into a directory.
    Man {
        #[arg(long)]
        out_dir: Option<std::path::PathBuf>,
    },
}

/// Elements are written `3*C(x,2)+C(x,1)-4`, as an integer-valued
/// polynomial such as `x^2-x`, or as JSON `{"coeffs":{"2":"3"}}`.
#[derive(Subcommand, Debug)]
pub enum IntzCommand {
    /// Product of two elements.
    Mul { f: String, g: String },
    /// Coproduct, with `x` primitive.
    Comul { f: String },
    /// Antipode.
    Antipode { f: String },
    /// Value at an integer; `--counit` evaluates at 0.
    Eval {
        f: String,
        #[arg(allow_negative_numbers = true, required_unless_present = "counit")]
        a: Option<String>,
        #[arg(long)]
        counit: bool,
    },
    /// Pairing against a power series in `u`, given as a polynomial
    /// (`1+3*u+u^2`), as JSON, or as `(1+u)^a` via `--group-like`.
    Pair {
        f: String,
        #[arg(required_unless_present = "group_like")]
        series: Option<String>,
        /// Truncation order (defaults to one more than the degree of f).
        #[arg(long)]
        order: Option<usize>,
        /// Pair with `(1+u)^A`.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "series")]
        group_like: Option<i64>,
    },
    /// Checks `f^p = f` modulo `p` in the binomial basis.
    Frobtest {
        f: String,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WittInput {
    /// Coefficient ring: Z, Zmod:m or Fq:p,k.
    #[arg(long, default_value = "Z")]
    pub ring: String,
    /// Divisor-closed truncation set, e.g. `1,2,3,6`.
    #[arg(long, default_value = "1")]
    pub trunc: String,
    /// Components in order of the truncation set, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// A JSON Witt vector (inline or a file path); overrides the above.
    #[arg(long)]
    pub vector: Option<String>,
    /// Print ghost components next to coefficients.
    #[arg(long)]
    pub ghost: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Model {
    /// `F_n - [t]^(n-1) * res`, landing in `W_(S/n)`.
    Truncating,
    /// `W(phi) - [t]^(p-1)` on `W_S(R)`, for `R` of characteristic `p`.
    Endomorphism,
}

#[derive(Subcommand, Debug)]
pub enum WittCommand {
    /// Witt sum with a second vector.
    Add {
        #[command(flatten)]
        input: WittInput,
        /// Components of the second vector.
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Witt product with a second vector.
    Mul {
        #[command(flatten)]
        input: WittInput,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Ghost components.
    Ghost {
        #[command(flatten)]
        input: WittInput,
    },
    /// Frobenius `F_n`, landing in `W_(S/n)`.
    Frob {
        #[command(flatten)]
        input: WittInput,
        #[arg(long)]
        n: u64,
    },
    /// Verschiebung `V_n`.
    Versch {
        #[command(flatten)]
        input: WittInput,
        #[arg(long)]
        n: u64,
        /// Target truncation set (default: divisor closure of S and nS).
        #[arg(long)]
        target: Option<String>,
    },
    /// Teichmüller representative `[r]`.
    Teich {
        #[command(flatten)]
        input: WittInput,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Twisted Frobenius `F_n - [t]^(n-1)`.
    Twisted {
        #[command(flatten)]
        input: WittInput,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value_t = Model::Truncating)]
        model: Model,
    },
    /// Kernel of the twisted Frobenius, by exhaustive search over a finite ring.
    Kernel {
        #[command(flatten)]
        input: WittInput,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value_t = Model::Truncating)]
        model: Model,
        /// Largest search space allowed.
        #[arg(long, default_value_t = hilbert_core::witt::kernel::DEFAULT_BOUND)]
        bound: u64,
    },
    /// Universal polynomials of an operation.
    Unipoly {
        /// sum, product, neg or frobenius-N.
        #[arg(long)]
        op: String,
        #[arg(long, default_value = "1")]
        trunc: String,
        /// A single component (default: all).
        #[arg(long)]
        n: Option<u64>,
    },
}

/// Filtered modules are JSON objects `{"rank":r,"n_min":n,"pieces":[...]}`
/// (inline or a file path), or presets `trivial:P[:RANK]` and `degree:N`.
#[derive(Subcommand, Debug)]
pub enum FiltCommand {
    /// Day convolution of two filtered modules.
    Tensor { x: String, y: String },
    /// Ranks of the associated graded; torsion quotients are rejected.
    Gr { x: String },
    /// Rees algebra of the degree filtration of Int(Z) through weight N.
    Rees {
        #[arg(long)]
        n: usize,
        /// Substitute an integer for t.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<i64>,
    },
    /// Structure constants of the basis x(x-t)...(x-(n-1)t)/n!, checked
    /// against the Rees algebra.
    Drinfeld {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HomologyCommand {
    /// Homology of the reduced bar construction, as a TSV table.
    Bar {
        /// Preset (trivial, exterior-deg-neg1, exterior-deg1, polynomial)
        /// or a JSON algebra (inline or a file path).
        #[arg(long)]
        algebra: String,
        /// Number of tensor factors.
        #[arg(long, default_value_t = 4)]
        stages: usize,
        /// Largest absolute weight (default: the number of stages).
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Homology of the cobar construction, as a TSV table.
    Cobar {
        /// Preset (trivial, divided-power, exterior-deg1) or a JSON coalgebra.
        #[arg(long)]
        coalgebra: String,
        /// Number of tensor factors.
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long)]
        weight: Option<usize>,
    },
}
