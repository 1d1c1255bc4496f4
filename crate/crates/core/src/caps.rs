//! Size guards that keep every search finite.
//!
//! All desk-scale inputs are tiny; the caps exist so that a mistyped command
//! fails fast instead of running for hours.

/// Configurable resource limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Maximum support size for the norm DP over `{A : |A| ≤ n}` families.
    pub dp_support_finite_rank: usize,
    /// Maximum support size for the norm DP over the Schreier family.
    pub dp_support_schreier: usize,
    /// Maximum support size for the norm DP over explicit and union families.
    pub dp_support_generic: usize,
    /// Maximum support size for the exhaustive norm oracle.
    pub oracle_support: usize,
    /// Maximum number of members a family truncation may enumerate.
    pub truncate_members: usize,
    /// Maximum number of functionals a dual-ball enumeration may produce.
    pub dual_ball_members: usize,
    /// Largest admitted element of the positive integers.
    pub position_window: u32,
    /// When set, every norm computation validates its own certificate:
    /// the functional must pass validation, re-evaluate to the value, and
    /// carry a valid analysis. Violations panic, since they can only come
    /// from an engine bug.
    pub self_check: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dp_support_finite_rank: 64,
            dp_support_schreier: 40,
            dp_support_generic: 24,
            oracle_support: 9,
            truncate_members: 100_000,
            dual_ball_members: 200_000,
            position_window: 1_000_000,
            self_check: false,
        }
    }
}
