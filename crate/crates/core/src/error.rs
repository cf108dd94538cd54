use thiserror::Error;

/// Named mathematical rules that guard the operations of this crate.
///
/// Every precondition error carries the rule it stems from so that callers
/// (and the command-line front end) can report it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Delta-train convolution stays in `V_s` only when `s <= r`.
    DeltaTrainConvolution,
    /// FGSI convolution requires `d/2 < s <= r` and `s >= d/2 + eps`.
    FgsiConvolution,
    /// Condition (A): generators in `H^s ∩ L²_s ∩ 𝓛^∞` with closed spaces.
    ConditionA,
    /// Ellipticity condition (E) for delay-differential operators.
    ConditionE,
    /// Real-analytic right-hand side generator for delay-differential division.
    RealAnalyticGenerator,
    /// Convolutor structure: the zero set of the generator spectrum is discrete.
    ConvolutorZeroSet,
    /// Mikhlin derivative bounds for Fourier multipliers.
    MikhlinCondition,
    /// Periodic multiplier products need an integer Sobolev order.
    PeriodicProduct,
    /// Young exponent law and `r1 + r2 >= 0` for periodic symbol products.
    SymbolProduct,
    /// Wave-front product admissibility (no antipodal directions at a base point).
    WaveFrontProduct,
    /// Duality pairing between `H^{-s}` and `H^s` needs `s >= 0`.
    DualPairing,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::DeltaTrainConvolution => "delta-train convolution theorem (requires s <= r)",
            Rule::FgsiConvolution => {
                "FGSI convolution theorem (requires d/2 < s <= r and s >= d/2 + eps, eps > 0)"
            }
            Rule::ConditionA => "condition (A) (s >= 0, generators in H^s, L^2_s and L^inf-periodized, closed span)",
            Rule::ConditionE => "ellipticity condition (E) (c mu_n(t) <= |T^(t)| for all t)",
            Rule::RealAnalyticGenerator => {
                "delay-differential solvability theorem (right-hand side generator must be real analytic)"
            }
            Rule::ConvolutorZeroSet => "convolutor structure theorem (zero set of the generator spectrum must be discrete)",
            Rule::MikhlinCondition => "Mikhlin multiplier theorem (|d^a a(t)| <= C_a |t|^-a, a bounded)",
            Rule::PeriodicProduct => "periodic product theorem (requires integer order s >= 0)",
            Rule::SymbolProduct => "periodic symbol product rule (1/p1 + 1/p2 = 1/p + 1, r1 + r2 >= 0)",
            Rule::WaveFrontProduct => "wave-front product admissibility (no (x, xi) in WF f with (x, -xi) in WF g)",
            Rule::DualPairing => "H^-s / H^s duality (requires s >= 0)",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("order violation: {detail} [rule: {}]", rule.describe())]
    OrderViolation { rule: Rule, detail: String },

    #[error("condition (E) violated: {detail} [rule: {}]", Rule::ConditionE.describe())]
    ConditionEViolated { detail: String },

    #[error("symbol fit unstable: residual rms {rms:.3e} exceeds {threshold} [rule: {}]", Rule::ConditionE.describe())]
    FitUnstable { rms: f64, threshold: f64 },

    #[error("division blow-up: |psi^/T^| reached {magnitude:.3e} [rule: {}]", Rule::ConditionE.describe())]
    DivisionBlowup { magnitude: f64 },

    #[error("zero set of the generator spectrum is not discrete: {detail} [rule: {}]", Rule::ConvolutorZeroSet.describe())]
    NonDiscreteZeroSet { detail: String },

    #[error("exponent violation: {detail} [rule: {}]", Rule::SymbolProduct.describe())]
    ExponentViolation { detail: String },

    #[error("wave-front product undefined at base {base:?}: direction {direction} meets its antipode [rule: {}]", Rule::WaveFrontProduct.describe())]
    ProductUndefined { base: Vec<f64>, direction: String },

    #[error("precondition violated: {detail} [rule: {}]", rule.describe())]
    Precondition { rule: Rule, detail: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// The mathematical rule behind a precondition failure, if any.
    ///
    /// `None` means the error is a malformed-input problem rather than a
    /// violated hypothesis.
    pub fn rule(&self) -> Option<Rule> {
        match self {
            Error::OrderViolation { rule, .. } | Error::Precondition { rule, .. } => Some(*rule),
            Error::ConditionEViolated { .. }
            | Error::FitUnstable { .. }
            | Error::DivisionBlowup { .. } => Some(Rule::ConditionE),
            Error::NonDiscreteZeroSet { .. } => Some(Rule::ConvolutorZeroSet),
            Error::ExponentViolation { .. } => Some(Rule::SymbolProduct),
            Error::ProductUndefined { .. } => Some(Rule::WaveFrontProduct),
            Error::DimensionMismatch { .. } | Error::InvalidInput(_) => None,
        }
    }

    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
