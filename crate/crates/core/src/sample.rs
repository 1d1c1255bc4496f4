//! Seed-controlled sampling of vectors, block sequences, and rational
//! tuples for the verification suites.
//!
//! Coefficients are drawn from a dyadic grid (numerator over 64, with an
//! occasional heavy-tail power-of-two blowup) so that the same sample can be
//! materialized exactly as a rational vector or losslessly as `f64`.
//! Supports mix random subsets with unions of short intervals.

use alloc::vec::Vec;

use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::vector::SparseVector;
use crate::Rational;

/// One sampled coordinate: `(position, numerator, denominator)`.
pub type Entry = (u32, i64, u64);

/// Parameters for vector sampling.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub count: usize,
    pub max_support: usize,
    /// Positions are drawn from `[1, window]`.
    pub window: u32,
    pub seed: u64,
}

/// A nonempty strictly increasing support inside `[1, window]`.
pub fn sample_support(rng: &mut Rng, window: u32, max_support: usize) -> Vec<u32> {
    let max_support = max_support.max(1).min(window as usize);
    let size = rng.range_u64(1, max_support as u64) as usize;
    let mut support: Vec<u32> = Vec::with_capacity(size);
    if rng.chance(0.5) {
        // Random subset.
        while support.len() < size {
            let p = rng.range_u64(1, window as u64) as u32;
            if !support.contains(&p) {
                support.push(p);
            }
        }
        support.sort_unstable();
    } else {
        // Union of a few short intervals.
        let mut next = rng.range_u64(1, 8.min(window as u64)) as u32;
        while support.len() < size && next <= window {
            let run = rng.range_u64(1, 4) as u32;
            for p in next..(next + run).min(window + 1) {
                if support.len() < size {
                    support.push(p);
                }
            }
            next += run + rng.range_u64(1, 6) as u32;
        }
        if support.is_empty() {
            support.push(rng.range_u64(1, window as u64) as u32);
        }
    }
    support
}

/// Mixed-sign dyadic coefficient, heavy-tailed a fifth of the time.
pub fn sample_coeff(rng: &mut Rng) -> (i64, u64) {
    let mut num = rng.range_i64(-64, 64);
    if num == 0 {
        num = 1;
    }
    if rng.chance(0.2) {
        num <<= rng.range_u64(1, 6);
    }
    (num, 64)
}

/// A random vector as exact entries.
pub fn sample_entries(rng: &mut Rng, window: u32, max_support: usize) -> Vec<Entry> {
    sample_support(rng, window, max_support)
        .into_iter()
        .map(|p| {
            let (num, den) = sample_coeff(rng);
            (p, num, den)
        })
        .collect()
}

pub fn entries_to_rational(entries: &[Entry]) -> SparseVector<Rational> {
    SparseVector::from_entries(
        entries
            .iter()
            .map(|&(p, num, den)| (p, <Rational as Scalar>::from_ratio(num, den))),
    )
    .expect("sampled positions are >= 1")
}

pub fn entries_to_f64(entries: &[Entry]) -> SparseVector<f64> {
    SparseVector::from_entries(
        entries
            .iter()
            .map(|&(p, num, den)| (p, num as f64 / den as f64)),
    )
    .expect("sampled positions are >= 1")
}

/// A successive sequence of blocks with positive dyadic coordinates.
/// Returns at most `max_blocks` blocks with at most `max_total_support`
/// support points overall.
pub fn sample_positive_blocks(
    rng: &mut Rng,
    max_blocks: usize,
    max_total_support: usize,
) -> Vec<SparseVector<f64>> {
    let blocks = rng.range_u64(1, max_blocks as u64) as usize;
    let total = rng.range_u64(blocks as u64, max_total_support as u64) as usize;
    // Ascending positions with random gaps.
    let mut positions = Vec::with_capacity(total);
    let mut next = rng.range_u64(1, 6) as u32;
    for _ in 0..total {
        positions.push(next);
        next += rng.range_u64(1, 4) as u32;
    }
    // Split into `blocks` nonempty consecutive chunks.
    let mut cuts: Vec<usize> = (1..total).collect();
    for i in (1..cuts.len()).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        cuts.swap(i, j);
    }
    let mut chosen: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
    chosen.sort_unstable();
    chosen.push(total);

    let mut out = Vec::with_capacity(blocks);
    let mut start = 0;
    for end in chosen {
        let coords = positions[start..end].iter().map(|&p| {
            let num = rng.range_i64(1, 64);
            (p, num as f64 / 64.0)
        });
        out.push(SparseVector::from_entries(coords).expect("positions are >= 1"));
        start = end;
    }
    out
}

/// A random subset of `support`, possibly empty.
pub fn sample_subset(rng: &mut Rng, support: &[u32]) -> Vec<u32> {
    support.iter().copied().filter(|_| rng.chance(0.5)).collect()
}

/// Non-negative rationals with bounded denominator; at least one is
/// positive.
pub fn sample_nonnegative_rationals(
    rng: &mut Rng,
    max_terms: usize,
    max_denominator: u64,
) -> Vec<(u64, u64)> {
    let terms = rng.range_u64(1, max_terms as u64) as usize;
    let mut out: Vec<(u64, u64)> = (0..terms)
        .map(|_| {
            let den = rng.range_u64(1, max_denominator);
            let num = rng.range_u64(0, 2 * den);
            (num, den)
        })
        .collect();
    if out.iter().all(|&(num, _)| num == 0) {
        out[0].0 = 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supports_are_valid() {
        let mut rng = Rng::new(1);
        for _ in 0..500 {
            let s = sample_support(&mut rng, 50, 10);
            assert!(!s.is_empty() && s.len() <= 10);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&p| (1..=50).contains(&p)));
        }
    }

    #[test]
    fn rational_and_float_views_agree() {
        let mut rng = Rng::new(9);
        for _ in 0..100 {
            let entries = sample_entries(&mut rng, 40, 8);
            let r = entries_to_rational(&entries);
            let f = entries_to_f64(&entries);
            assert_eq!(r.to_f64(), f);
        }
    }

    #[test]
    fn blocks_are_successive_and_positive() {
        let mut rng = Rng::new(5);
        for _ in 0..200 {
            let blocks = sample_positive_blocks(&mut rng, 6, 14);
            assert!(!blocks.is_empty());
            let mut prev = 0u32;
            for b in &blocks {
                assert!(!b.is_zero());
                assert!(b.min_position().unwrap() > prev);
                prev = b.max_position().unwrap();
                for (_, &c) in b.iter() {
                    assert!(c > 0.0);
                }
            }
        }
    }

    #[test]
    fn rational_tuples_not_all_zero() {
        let mut rng = Rng::new(3);
        for _ in 0..200 {
            let rs = sample_nonnegative_rationals(&mut rng, 6, 8);
            assert!(rs.iter().any(|&(num, _)| num > 0));
            assert!(rs.iter().all(|&(_, den)| (1..=8).contains(&den)));
        }
    }
}
