/// Thresholds that decide eigenvalue multiplicity.
///
/// A spectrum is `Triple` when `λ_I − λ_III ≤ abs_triple + rel_triple·‖T‖`,
/// and `Double` when the smaller gap is at most
/// [`gap_threshold`](Tolerances::gap_threshold)` · (λ_I − λ_III)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub abs_triple: f64,
    pub rel_triple: f64,
    pub gap: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        abs_triple: 1e-12,
        rel_triple: 1e-10,
        gap: 1e-7,
    };

    /// Relative gap below which two eigenvalues are treated as equal.
    ///
    /// This is `gap`, raised to the noise floor `(ε ‖T‖ / spread)^⅓` when
    /// that is larger. Near a repeated pair the closed-form eigenvalues
    /// carry an error of order `sqrt(ε ‖T‖ / spread)` times the spread, and
    /// the distinct-branch bases and tangents lose accuracy like
    /// `ε ‖T‖ / (spread · gap²)`. The cube root balances that loss against
    /// the `O(gap)` error of switching to the repeated-pair formulas.
    pub fn gap_threshold(&self, scale: f64, spread: f64) -> f64 {
        self.gap.max((f64::EPSILON * scale / spread).cbrt())
    }

    /// Spread below which all three eigenvalues are treated as equal.
    pub fn triple_floor(&self, scale: f64) -> f64 {
        self.abs_triple + self.rel_triple * scale
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}

/// Excess of the Lode arcsin argument past ±1 above which a conditioning
/// warning is raised.
pub const LODE_CLAMP_WARNING: f64 = 1e-8;

/// `|cos 3θ|` at or below which the Lode-angle derivative is refused.
pub const LODE_COS_FLOOR: f64 = 1e-7;

/// Relative trace allowed for a tensor passed as a deviator.
pub const DEVIATORIC_TRACE_TOL: f64 = 1e-12;
