//! Ordinals below `ω^ω` in Cantor normal form.
//!
//! Tree ranks of the families handled here never exceed `ω` (finite ranks for
//! `{A : |A| ≤ n}`, exactly `ω` for the Schreier family), but the type covers
//! the full `ω^ω` segment so that ranks of unions and truncations compose
//! without special cases.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// An ordinal `ω^e₁·c₁ + ω^e₂·c₂ + … + ω^0·c_k` with strictly decreasing
/// exponents and positive coefficients. The empty sum is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinalRank {
    terms: Vec<(u32, u64)>,
}

impl OrdinalRank {
    pub fn zero() -> Self {
        OrdinalRank { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalRank { terms: alloc::vec![(0, n)] }
        }
    }

    pub fn omega() -> Self {
        OrdinalRank { terms: alloc::vec![(1, 1)] }
    }

    /// `ω^exp · coeff`. Coefficient 0 gives the zero ordinal.
    pub fn omega_power(exp: u32, coeff: u64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            OrdinalRank { terms: alloc::vec![(exp, coeff)] }
        }
    }

    /// The `(exponent, coefficient)` terms, exponents strictly decreasing.
    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, n)] => Some(*n),
            _ => None,
        }
    }

    /// Ordinal successor.
    pub fn succ(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => *c += 1,
            _ => terms.push((0, 1)),
        }
        OrdinalRank { terms }
    }

    pub fn max_of(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Ord for OrdinalRank {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on the (exponent, coefficient) sequence; a missing
        // term is smaller than any present term.
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(a), Some(b)) => {
                    let c = a.cmp(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for OrdinalRank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}
