//! Finitely supported vectors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::error::Error;
use crate::family::FiniteSet;
use crate::scalar::Scalar;

/// A vector in `c₀₀`: a finite map from positive integer positions to
/// nonzero coefficients. Explicit zeros are dropped on insertion, so the key
/// set is exactly the support.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector<S: Scalar> {
    entries: BTreeMap<u32, S>,
}

impl<S: Scalar> SparseVector<S> {
    pub fn zero() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, S)>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (pos, coeff) in entries {
            if pos == 0 {
                return Err(Error::MalformedSet(String::from("positions must be >= 1")));
            }
            if !coeff.is_zero() {
                map.insert(pos, coeff);
            }
        }
        Ok(SparseVector { entries: map })
    }

    /// The unit basis vector `e_pos`.
    pub fn unit(pos: u32) -> Self {
        debug_assert!(pos >= 1);
        let mut entries = BTreeMap::new();
        entries.insert(pos, S::one());
        SparseVector { entries }
    }

    /// `e₁ + e₂ + … + e_m`.
    pub fn unit_block(m: u32) -> Self {
        Self::interval_of_units(1, m)
    }

    /// `e_lo + … + e_hi` (empty when `lo > hi`).
    pub fn interval_of_units(lo: u32, hi: u32) -> Self {
        let mut entries = BTreeMap::new();
        for pos in lo..=hi {
            entries.insert(pos, S::one());
        }
        SparseVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> FiniteSet {
        FiniteSet::new(self.entries.keys().copied().collect())
            .expect("BTreeMap keys are strictly increasing")
    }

    pub fn get(&self, pos: u32) -> S {
        self.entries.get(&pos).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, pos: u32, coeff: S) {
        debug_assert!(pos >= 1);
        if coeff.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, coeff);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &S)> + '_ {
        self.entries.iter().map(|(&p, c)| (p, c))
    }

    pub fn min_position(&self) -> Option<u32> {
        self.entries.keys().next().copied()
    }

    pub fn max_position(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// The restriction `Ex`: coordinates inside `e`, zero elsewhere.
    pub fn restrict(&self, e: &FiniteSet) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(p, _)| e.contains(**p))
            .map(|(&p, c)| (p, c.clone()))
            .collect();
        SparseVector { entries }
    }

    /// Restriction to the integer interval `[lo, hi]`.
    pub fn restrict_range(&self, lo: u32, hi: u32) -> Self {
        let entries = self
            .entries
            .range(lo..=hi)
            .map(|(&p, c)| (p, c.clone()))
            .collect();
        SparseVector { entries }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let entries = self.entries.iter().map(|(&p, v)| (p, v.mul(c))).collect();
        SparseVector { entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (&p, c) in &other.entries {
            let cur = entries.get(&p).cloned().unwrap_or_else(S::zero);
            let sum = cur.add(c);
            if sum.is_zero() {
                entries.remove(&p);
            } else {
                entries.insert(p, sum);
            }
        }
        SparseVector { entries }
    }

    /// Flips the sign of every coordinate in `positions`.
    pub fn flip_signs(&self, positions: &FiniteSet) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&p, c)| (p, if positions.contains(p) { c.neg() } else { c.clone() }))
            .collect();
        SparseVector { entries }
    }

    /// `‖x‖_∞`.
    pub fn sup_norm(&self) -> S {
        let mut best = S::zero();
        for c in self.entries.values() {
            best = best.max_of(&c.abs());
        }
        best
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseVector<T> {
        let entries = self
            .entries
            .iter()
            .map(|(&p, c)| (p, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SparseVector { entries }
    }

    pub fn to_f64(&self) -> SparseVector<f64> {
        self.map_coeffs(|c| c.to_f64())
    }
}

impl SparseVector<f64> {
    /// `‖x‖_p = (Σ |x_i|^p)^(1/p)` for `p ≥ 1`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        debug_assert!(p >= 1.0);
        let sum: f64 = self
            .entries
            .values()
            .map(|c| libm::pow(libm::fabs(*c), p))
            .sum();
        libm::pow(sum, 1.0 / p)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for SparseVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}:{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn zeros_are_dropped() {
        let v = SparseVector::from_entries(vec![(1, 1.0), (2, 0.0), (5, -2.0)]).unwrap();
        assert_eq!(v.support_size(), 2);
        assert_eq!(v.get(2), 0.0);
        assert_eq!(v.get(5), -2.0);
    }

    #[test]
    fn position_zero_rejected() {
        assert!(SparseVector::from_entries(vec![(0, 1.0)]).is_err());
    }

    #[test]
    fn restriction_and_sup_norm() {
        let v = SparseVector::from_entries(vec![(1, 1.0), (3, -4.0), (7, 2.0)]).unwrap();
        assert_eq!(v.sup_norm(), 4.0);
        let e = FiniteSet::new(vec![3, 7]).unwrap();
        let r = v.restrict(&e);
        assert_eq!(r.support_size(), 2);
        assert_eq!(r.get(1), 0.0);
        let rr = v.restrict_range(2, 6);
        assert_eq!(rr.support_size(), 1);
    }

    #[test]
    fn add_cancels() {
        let v = SparseVector::from_entries(vec![(1, 2.0), (2, 3.0)]).unwrap();
        let w = SparseVector::from_entries(vec![(1, -2.0), (3, 1.0)]).unwrap();
        let s = v.add(&w);
        assert_eq!(s.support_size(), 2);
        assert_eq!(s.get(1), 0.0);
    }

    #[test]
    fn lp_norm_matches_hand_value() {
        let v = SparseVector::from_entries(vec![(1, 3.0), (2, 4.0)]).unwrap();
        assert!((v.lp_norm(2.0) - 5.0).abs() < 1e-12);
    }
}
