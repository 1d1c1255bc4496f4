//! Independent brute-force routes for the admissibility and rank layers,
//! plus DP/oracle agreement on randomized explicit and union families.
//!
//! These deliberately re-derive the definitions from scratch (slot
//! enumeration, chain depth) so that a shared blind spot with the closed
//! forms would surface.

use proptest::prelude::*;

use tsirelson_core::caps::Caps;
use tsirelson_core::family::{FamilyExpr, FiniteSet, SuccessiveBlocks};
use tsirelson_core::norm::{norm_exact, norm_oracle};
use tsirelson_core::ordinal::OrdinalRank;
use tsirelson_core::scalar::Scalar;
use tsirelson_core::vector::SparseVector;
use tsirelson_core::Rational;

fn rat(num: i64, den: u64) -> Rational {
    <Rational as Scalar>::from_ratio(num, den)
}

/// Definition-level admissibility: try every strictly increasing choice of
/// witness elements within the slots and test plain membership.
fn brute_force_admissible(family: &FamilyExpr, blocks: &SuccessiveBlocks) -> bool {
    fn rec(
        family: &FamilyExpr,
        slots: &[(u32, u32)],
        idx: usize,
        chosen: &mut Vec<u32>,
    ) -> bool {
        if idx == slots.len() {
            let witness = FiniteSet::new(chosen.clone()).expect("choices are increasing");
            return family.contains(&witness);
        }
        let (lo, hi) = slots[idx];
        for m in (lo + 1)..=hi {
            if chosen.last().is_none_or(|&prev| m > prev) {
                chosen.push(m);
                if rec(family, slots, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(family, &blocks.slots(), 0, &mut Vec::new())
}

/// Rank as the longest end-extension chain through the member set,
/// computed without memoization or prefix scans.
fn chain_depth(members: &[FiniteSet], node: &FiniteSet) -> u64 {
    let start = node.max_element().unwrap_or(0) + 1;
    let limit = members
        .iter()
        .filter_map(FiniteSet::max_element)
        .max()
        .unwrap_or(0);
    let mut best = 0;
    for m in start..=limit {
        let mut elems: Vec<u32> = node.iter().collect();
        elems.push(m);
        let child = FiniteSet::new(elems).unwrap();
        if members.contains(&child) {
            best = best.max(1 + chain_depth(members, &child));
        }
    }
    best
}

fn arb_blocks() -> impl Strategy<Value = SuccessiveBlocks> {
    proptest::collection::vec((0u32..4, 1u32..3), 1..=4).prop_map(|shape| {
        let mut next = 1u32;
        let mut parts = Vec::new();
        for (gap, len) in shape {
            next += gap;
            parts.push(FiniteSet::new((next..next + len).collect()).unwrap());
            next += len;
        }
        SuccessiveBlocks::new(parts).unwrap()
    })
}

fn arb_member() -> impl Strategy<Value = FiniteSet> {
    proptest::collection::btree_set(1u32..=12, 0..=4)
        .prop_map(|s| FiniteSet::new(s.into_iter().collect()).unwrap())
}

fn arb_explicit() -> impl Strategy<Value = FamilyExpr> {
    proptest::collection::btree_set(arb_member(), 1..=5)
        .prop_map(|members| FamilyExpr::explicit(members.into_iter().collect()).unwrap())
}

fn arb_family() -> impl Strategy<Value = FamilyExpr> {
    prop_oneof![
        (1u32..=4).prop_map(FamilyExpr::FiniteRank),
        Just(FamilyExpr::Schreier),
        arb_explicit(),
        (arb_explicit(), 1u32..=2)
            .prop_map(|(e, n)| FamilyExpr::union(e, FamilyExpr::FiniteRank(n))),
        arb_explicit().prop_map(|e| FamilyExpr::union(FamilyExpr::Schreier, e)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The structural witness search decides exactly Definition-level
    /// admissibility, for every family shape.
    #[test]
    fn admissibility_matches_slot_enumeration(
        family in arb_family(),
        blocks in arb_blocks(),
    ) {
        let closed = family.is_admissible(&blocks).is_some();
        let brute = brute_force_admissible(&family, &blocks);
        prop_assert_eq!(closed, brute, "family {}, blocks {:?}", family, blocks);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Tree rank of explicit families equals the longest end-extension
    /// chain from the empty root.
    #[test]
    fn explicit_rank_matches_chain_depth(family in arb_explicit()) {
        let members = match &family {
            FamilyExpr::Explicit(m) => m.clone(),
            _ => unreachable!(),
        };
        let expected = chain_depth(&members, &FiniteSet::empty());
        prop_assert_eq!(family.rank(), OrdinalRank::finite(expected));
    }

    /// Truncations of the built-ins also agree with the chain oracle.
    #[test]
    fn truncated_rank_matches_chain_depth(window in 1u32..=7, n in 1u32..=3) {
        for family in [FamilyExpr::FiniteRank(n), FamilyExpr::Schreier] {
            let truncated = family.truncate(window, &Caps::default()).unwrap();
            let members = match &truncated {
                FamilyExpr::Explicit(m) => m.clone(),
                _ => unreachable!(),
            };
            let expected = chain_depth(&members, &FiniteSet::empty());
            prop_assert_eq!(truncated.rank(), OrdinalRank::finite(expected));
        }
    }

    /// DP and brute-force oracle agree on randomized explicit and union
    /// families, where the cursor machinery is at its most general.
    #[test]
    fn dp_matches_oracle_general_families(
        family in arb_family(),
        support in proptest::collection::btree_set(1u32..=14, 1..=5),
        nums in proptest::collection::vec((-32i64..=32).prop_filter("nonzero", |&v| v != 0), 5),
        theta_num in 1u32..=7,
    ) {
        let caps = Caps::default();
        let theta = rat(theta_num as i64, 8);
        let x = SparseVector::from_entries(
            support.iter().zip(&nums).map(|(&p, &num)| (p, rat(num, 16))),
        )
        .unwrap();
        let dp = norm_exact(&family, &theta, &x, &caps).unwrap();
        let oracle = norm_oracle(&family, &theta, &x, &caps).unwrap();
        prop_assert_eq!(&dp.value, &oracle, "family {}, x {}", family, x);
        // The certificate stays sound on these shapes too.
        tsirelson_core::validate_functional(&family, &dp.certificate).unwrap();
        prop_assert_eq!(dp.certificate.eval(&theta, &x), dp.value);
    }
}
