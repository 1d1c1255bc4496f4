//! Compact families of finite subsets of the positive integers.
//!
//! A family is described by a closed constructor algebra: the cardinality
//! families `{A : |A| ≤ n}`, the Schreier family `{A : |A| ≤ min A}`, finite
//! explicit lists, and unions. Every constructible family is compact in the
//! pointwise topology by construction, so no compactness decision procedure
//! is needed.
//!
//! A tuple of successive sets `E₁ < E₂ < … < E_d` is *admissible* for a
//! family `M` when some `A = {m₁ < … < m_d} ∈ M` interleaves it:
//! `m₁ ≤ E₁ < m₂ ≤ E₂ < … < m_d ≤ E_d`. Equivalently, `m_i` must lie in the
//! slot `(max Eᵢ₋₁, min Eᵢ]` for every `i` (with `max E₀ = 0`), so
//! admissibility depends only on the block endpoints.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::caps::Caps;
use crate::error::Error;
use crate::ordinal::OrdinalRank;

/// A finite subset of the positive integers, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteSet {
    elems: Vec<u32>,
}

impl FiniteSet {
    /// Builds a set from a strictly increasing sequence of positive integers.
    pub fn new(elems: Vec<u32>) -> Result<Self, Error> {
        for (i, &e) in elems.iter().enumerate() {
            if e == 0 {
                return Err(Error::MalformedSet(String::from("elements must be >= 1")));
            }
            if i > 0 && elems[i - 1] >= e {
                return Err(Error::MalformedSet(format!(
                    "elements must be strictly increasing, got {} then {}",
                    elems[i - 1],
                    e
                )));
            }
        }
        Ok(FiniteSet { elems })
    }

    pub fn empty() -> Self {
        FiniteSet { elems: Vec::new() }
    }

    pub fn singleton(e: u32) -> Self {
        debug_assert!(e >= 1);
        FiniteSet { elems: alloc::vec![e] }
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut elems: Vec<u32>) -> Result<Self, Error> {
        elems.sort_unstable();
        elems.dedup();
        Self::new(elems)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min_element(&self) -> Option<u32> {
        self.elems.first().copied()
    }

    pub fn max_element(&self) -> Option<u32> {
        self.elems.last().copied()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn iter(&self) -> core::iter::Copied<core::slice::Iter<'_, u32>> {
        self.elems.iter().copied()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered tuple `E₁ < E₂ < … < E_d` of nonempty finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessiveBlocks {
    blocks: Vec<FiniteSet>,
}

impl SuccessiveBlocks {
    pub fn new(blocks: Vec<FiniteSet>) -> Result<Self, Error> {
        if blocks.is_empty() {
            return Err(Error::MalformedBlocks(String::from("no blocks")));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::MalformedBlocks(format!("block {} is empty", i + 1)));
            }
            if i > 0 {
                let prev_max = blocks[i - 1].max_element().unwrap();
                let cur_min = b.min_element().unwrap();
                if prev_max >= cur_min {
                    return Err(Error::MalformedBlocks(format!(
                        "blocks {} and {} are not successive ({} >= {})",
                        i,
                        i + 1,
                        prev_max,
                        cur_min
                    )));
                }
            }
        }
        Ok(SuccessiveBlocks { blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn blocks(&self) -> &[FiniteSet] {
        &self.blocks
    }

    /// The witness slots `(max Eᵢ₋₁, min Eᵢ]` as `(exclusive, inclusive)`
    /// endpoint pairs, with `max E₀ = 0`.
    pub fn slots(&self) -> Vec<(u32, u32)> {
        let mut slots = Vec::with_capacity(self.blocks.len());
        let mut prev_max = 0u32;
        for b in &self.blocks {
            slots.push((prev_max, b.min_element().unwrap()));
            prev_max = b.max_element().unwrap();
        }
        slots
    }
}

/// Symbolic description of a compact family of finite sets.
///
/// Every variant contains the empty set; explicit lists contain it only when
/// listed. Build explicit families through [`FamilyExpr::explicit`] so the
/// no-duplicates invariant is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyExpr {
    /// `{A : |A| ≤ n}`; `n` must be at least 1.
    FiniteRank(u32),
    /// The Schreier family `{A : |A| ≤ min A} ∪ {∅}`.
    Schreier,
    /// Membership is exactly list membership.
    Explicit(Vec<FiniteSet>),
    /// Membership is the disjunction of the two sides.
    Union(Box<FamilyExpr>, Box<FamilyExpr>),
}

impl FamilyExpr {
    pub fn finite_rank(n: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::PreconditionViolation(String::from(
                "finite-rank parameter must be >= 1",
            )));
        }
        Ok(FamilyExpr::FiniteRank(n))
    }

    pub fn explicit(members: Vec<FiniteSet>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for m in &members {
            if !seen.insert(m.clone()) {
                return Err(Error::PreconditionViolation(format!(
                    "duplicate member {m} in explicit family"
                )));
            }
        }
        Ok(FamilyExpr::Explicit(members))
    }

    pub fn union(left: FamilyExpr, right: FamilyExpr) -> Self {
        FamilyExpr::Union(Box::new(left), Box::new(right))
    }

    /// Membership test `A ∈ M`.
    pub fn contains(&self, a: &FiniteSet) -> bool {
        match self {
            FamilyExpr::FiniteRank(n) => a.len() <= *n as usize,
            FamilyExpr::Schreier => match a.min_element() {
                None => true,
                Some(min) => a.len() <= min as usize,
            },
            FamilyExpr::Explicit(members) => members.iter().any(|m| m == a),
            FamilyExpr::Union(l, r) => l.contains(a) || r.contains(a),
        }
    }

    /// Decides `M`-admissibility of a successive block tuple, returning an
    /// interleaving witness `A ∈ M` when one exists.
    ///
    /// The returned witness satisfies `contains` and the slot inequalities;
    /// among valid witnesses the structurally first one is produced (left
    /// union side first, explicit members in list order, smallest viable
    /// elements for the built-in families).
    pub fn is_admissible(&self, blocks: &SuccessiveBlocks) -> Option<FiniteSet> {
        let slots = blocks.slots();
        self.witness_in_slots(&slots)
            .map(|elems| FiniteSet { elems })
    }

    /// Finds `A = {m₁ < … < m_d} ∈ M` with `m_i` in the half-open slot
    /// `(lo_i, hi_i]` for every `i`. Slots of successive blocks are always
    /// nonempty and ordered, which the built-in branches rely on.
    fn witness_in_slots(&self, slots: &[(u32, u32)]) -> Option<Vec<u32>> {
        let d = slots.len();
        match self {
            FamilyExpr::FiniteRank(n) => {
                if d > *n as usize {
                    return None;
                }
                Some(slots.iter().map(|&(lo, _)| lo + 1).collect())
            }
            FamilyExpr::Schreier => {
                // Need |A| = d ≤ m₁, so the first element must be at least d.
                let (lo1, hi1) = slots[0];
                let m1 = core::cmp::max(d as u32, lo1 + 1);
                if m1 > hi1 {
                    return None;
                }
                let mut witness = Vec::with_capacity(d);
                witness.push(m1);
                witness.extend(slots[1..].iter().map(|&(lo, _)| lo + 1));
                Some(witness)
            }
            FamilyExpr::Explicit(members) => members
                .iter()
                .find(|a| {
                    a.len() == d
                        && a.elements()
                            .iter()
                            .zip(slots)
                            .all(|(&m, &(lo, hi))| lo < m && m <= hi)
                })
                .map(|a| a.elements().to_vec()),
            FamilyExpr::Union(l, r) => l
                .witness_in_slots(slots)
                .or_else(|| r.witness_in_slots(slots)),
        }
    }

    /// Well-founded rank of the tree of members ordered by end-extension:
    /// the root is `∅`, the children of `A` are the members `A ∪ {m}` with
    /// `m > max A`, a childless node has rank 0 and an inner node has rank
    /// `sup(child rank + 1)`.
    ///
    /// For `{A : |A| ≤ n}` this is `n`; for the Schreier family the subtree
    /// under `{m}` has rank `m − 1`, so the root has rank `ω`.
    pub fn rank(&self) -> OrdinalRank {
        match self {
            FamilyExpr::FiniteRank(n) => OrdinalRank::finite(*n as u64),
            FamilyExpr::Schreier => OrdinalRank::omega(),
            FamilyExpr::Explicit(members) => {
                let mut memo = BTreeMap::new();
                OrdinalRank::finite(explicit_tree_rank(members, &[], &mut memo))
            }
            FamilyExpr::Union(l, r) => l.rank().max_of(r.rank()),
        }
    }

    /// Restricts the family to the window `[1, n_max]`, listing exactly the
    /// members with `max A ≤ n_max` as an explicit family in canonical order
    /// (by cardinality, then lexicographically).
    pub fn truncate(&self, n_max: u32, caps: &Caps) -> Result<FamilyExpr, Error> {
        if n_max == 0 {
            return Err(Error::PreconditionViolation(String::from(
                "truncation window must be >= 1",
            )));
        }
        let mut members = BTreeSet::new();
        self.collect_window(n_max, caps, &mut members)?;
        let mut list: Vec<FiniteSet> = members.into_iter().collect();
        list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(FamilyExpr::Explicit(list))
    }

    fn collect_window(
        &self,
        n_max: u32,
        caps: &Caps,
        out: &mut BTreeSet<FiniteSet>,
    ) -> Result<(), Error> {
        match self {
            FamilyExpr::FiniteRank(_) | FamilyExpr::Schreier => {
                // Both are hereditary, so a depth-first extension walk from ∅
                // reaches every member inside the window.
                out.insert(FiniteSet::empty());
                let mut prefix = Vec::new();
                self.extend_walk(n_max, caps, &mut prefix, out)
            }
            FamilyExpr::Explicit(members) => {
                for m in members {
                    if m.max_element().unwrap_or(0) <= n_max {
                        out.insert(m.clone());
                        if out.len() > caps.truncate_members {
                            return Err(Error::EnumerationCapExceeded {
                                cap: caps.truncate_members,
                            });
                        }
                    }
                }
                Ok(())
            }
            FamilyExpr::Union(l, r) => {
                l.collect_window(n_max, caps, out)?;
                r.collect_window(n_max, caps, out)
            }
        }
    }

    fn extend_walk(
        &self,
        n_max: u32,
        caps: &Caps,
        prefix: &mut Vec<u32>,
        out: &mut BTreeSet<FiniteSet>,
    ) -> Result<(), Error> {
        let start = prefix.last().map_or(1, |&m| m + 1);
        for next in start..=n_max {
            prefix.push(next);
            let candidate = FiniteSet { elems: prefix.clone() };
            if self.contains(&candidate) {
                out.insert(candidate);
                if out.len() > caps.truncate_members {
                    return Err(Error::EnumerationCapExceeded {
                        cap: caps.truncate_members,
                    });
                }
                self.extend_walk(n_max, caps, prefix, out)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    /// The DP support cap that applies to this family shape.
    pub fn dp_support_cap(&self, caps: &Caps) -> usize {
        match self {
            FamilyExpr::FiniteRank(_) => caps.dp_support_finite_rank,
            FamilyExpr::Schreier => caps.dp_support_schreier,
            _ => caps.dp_support_generic,
        }
    }
}

fn explicit_tree_rank(
    members: &[FiniteSet],
    prefix: &[u32],
    memo: &mut BTreeMap<Vec<u32>, u64>,
) -> u64 {
    if let Some(&r) = memo.get(prefix) {
        return r;
    }
    let mut rank = 0u64;
    for m in members {
        if m.len() == prefix.len() + 1 && m.elements()[..prefix.len()] == *prefix {
            let child = explicit_tree_rank(members, m.elements(), memo) + 1;
            rank = rank.max(child);
        }
    }
    memo.insert(prefix.to_vec(), rank);
    rank
}

/// Incremental admissibility decision used by the norm DP and the dual-ball
/// enumeration. Blocks are consumed left to right; a cursor tracks which
/// witness prefixes stay viable, so tuples never have to be re-checked from
/// scratch.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Cursor {
    /// Budget of further blocks; any slot works (cardinality families).
    Count { left: u32 },
    /// Schreier family before the first block.
    SchreierFresh,
    /// Schreier family after the first block fixed `m₁`, leaving a budget.
    SchreierRun { left: u32 },
    /// Walking one explicit member; `used` elements consumed so far.
    Member { member: u16, used: u16 },
}

#[derive(Debug)]
pub(crate) struct AdmissibilityMachine {
    members: Vec<FiniteSet>,
    starts: Vec<Cursor>,
    needs_gap: bool,
}

impl AdmissibilityMachine {
    pub fn new(family: &FamilyExpr) -> Self {
        let mut members = Vec::new();
        let mut starts = Vec::new();
        collect_cursors(family, &mut members, &mut starts);
        let needs_gap = !members.is_empty();
        AdmissibilityMachine { members, starts, needs_gap }
    }

    pub fn starts(&self) -> &[Cursor] {
        &self.starts
    }

    /// Whether `step` reads the previous block's maximum. Cardinality and
    /// Schreier cursors do not, which lets callers drop that component from
    /// memo keys.
    pub fn needs_gap(&self) -> bool {
        self.needs_gap
    }

    /// Consumes one block whose witness slot is `(gap_lo, block_min]`.
    /// `budget_clamp` bounds how many further blocks can still follow; it
    /// only shrinks stored budgets and keeps the cursor space small.
    pub fn step(
        &self,
        cursor: &Cursor,
        gap_lo: u32,
        block_min: u32,
        budget_clamp: u32,
    ) -> Option<Cursor> {
        match cursor {
            Cursor::Count { left } => {
                if *left == 0 {
                    None
                } else {
                    Some(Cursor::Count { left: (*left - 1).min(budget_clamp) })
                }
            }
            Cursor::SchreierFresh => {
                // Choosing m₁ = block_min maximizes the total budget d ≤ m₁.
                Some(Cursor::SchreierRun { left: (block_min - 1).min(budget_clamp) })
            }
            Cursor::SchreierRun { left } => {
                if *left == 0 {
                    None
                } else {
                    Some(Cursor::SchreierRun { left: (*left - 1).min(budget_clamp) })
                }
            }
            Cursor::Member { member, used } => {
                let set = &self.members[*member as usize];
                let next = *used as usize;
                if next >= set.len() {
                    return None;
                }
                let m = set.elements()[next];
                if gap_lo < m && m <= block_min {
                    Some(Cursor::Member { member: *member, used: used + 1 })
                } else {
                    None
                }
            }
        }
    }

    /// Whether a tuple may end with this cursor state. Only meaningful after
    /// at least one block was consumed.
    pub fn accepts(&self, cursor: &Cursor) -> bool {
        match cursor {
            Cursor::Count { .. } | Cursor::SchreierRun { .. } => true,
            Cursor::SchreierFresh => false,
            Cursor::Member { member, used } => {
                self.members[*member as usize].len() == *used as usize
            }
        }
    }
}

fn collect_cursors(family: &FamilyExpr, members: &mut Vec<FiniteSet>, starts: &mut Vec<Cursor>) {
    match family {
        FamilyExpr::FiniteRank(n) => starts.push(Cursor::Count { left: *n }),
        FamilyExpr::Schreier => starts.push(Cursor::SchreierFresh),
        FamilyExpr::Explicit(list) => {
            for m in list {
                if m.is_empty() {
                    // The empty member cannot interleave any block tuple.
                    continue;
                }
                starts.push(Cursor::Member { member: members.len() as u16, used: 0 });
                members.push(m.clone());
            }
        }
        FamilyExpr::Union(l, r) => {
            collect_cursors(l, members, starts);
            collect_cursors(r, members, starts);
        }
    }
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyExpr::FiniteRank(n) => write!(f, "finite-rank:{n}"),
            FamilyExpr::Schreier => write!(f, "schreier"),
            FamilyExpr::Explicit(members) => {
                write!(f, "explicit:[")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for (j, e) in m.elements().iter().enumerate() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
            FamilyExpr::Union(l, r) => write!(f, "union({l},{r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(elems: &[u32]) -> FiniteSet {
        FiniteSet::new(elems.to_vec()).unwrap()
    }

    fn blocks(parts: &[&[u32]]) -> SuccessiveBlocks {
        SuccessiveBlocks::new(parts.iter().map(|p| set(p)).collect()).unwrap()
    }

    #[test]
    fn finite_set_rejects_unsorted_and_zero() {
        assert!(FiniteSet::new(vec![2, 2]).is_err());
        assert!(FiniteSet::new(vec![3, 1]).is_err());
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert!(FiniteSet::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn successive_blocks_validation() {
        assert!(SuccessiveBlocks::new(vec![]).is_err());
        assert!(SuccessiveBlocks::new(vec![set(&[1]), set(&[])]).is_err());
        assert!(SuccessiveBlocks::new(vec![set(&[1, 5]), set(&[4])]).is_err());
        assert!(SuccessiveBlocks::new(vec![set(&[1, 3]), set(&[4])]).is_ok());
    }

    #[test]
    fn contains_examples() {
        assert!(FamilyExpr::FiniteRank(3).contains(&set(&[2, 5, 9])));
        assert!(!FamilyExpr::Schreier.contains(&set(&[2, 5, 9])));
        assert!(FamilyExpr::Schreier.contains(&set(&[3, 5, 9])));
        assert!(FamilyExpr::Schreier.contains(&FiniteSet::empty()));
        assert!(FamilyExpr::FiniteRank(1).contains(&FiniteSet::empty()));
    }

    #[test]
    fn explicit_contains_is_list_membership() {
        let fam = FamilyExpr::explicit(vec![set(&[1, 2])]).unwrap();
        assert!(fam.contains(&set(&[1, 2])));
        assert!(!fam.contains(&set(&[1])));
        assert!(!fam.contains(&FiniteSet::empty()));
        assert!(FamilyExpr::explicit(vec![set(&[1]), set(&[1])]).is_err());
    }

    #[test]
    fn schreier_admissibility_witnesses() {
        // ({2},{3}): the exhaustive choices for m₁ are 1 and 2; only m₁ = 2
        // gives a Schreier set, so the witness is {2,3}.
        let w = FamilyExpr::Schreier.is_admissible(&blocks(&[&[2], &[3]]));
        assert_eq!(w, Some(set(&[2, 3])));
        // ({1},{2}): any witness would need |A| = 2 ≤ m₁ ≤ 1.
        assert_eq!(FamilyExpr::Schreier.is_admissible(&blocks(&[&[1], &[2]])), None);
    }

    #[test]
    fn finite_rank_admissibility() {
        let fam = FamilyExpr::FiniteRank(2);
        assert!(fam.is_admissible(&blocks(&[&[7], &[11, 13]])).is_some());
        assert!(fam.is_admissible(&blocks(&[&[1], &[2], &[3]])).is_none());
    }

    #[test]
    fn witnesses_satisfy_definition() {
        let families = [
            FamilyExpr::FiniteRank(3),
            FamilyExpr::Schreier,
            FamilyExpr::union(FamilyExpr::FiniteRank(2), FamilyExpr::Schreier),
        ];
        let tuples = [
            blocks(&[&[2], &[3]]),
            blocks(&[&[3, 4], &[6], &[9, 12]]),
            blocks(&[&[5], &[7, 8], &[10]]),
        ];
        for fam in &families {
            for tup in &tuples {
                if let Some(w) = fam.is_admissible(tup) {
                    assert!(fam.contains(&w), "witness {w} not a member of {fam}");
                    assert_eq!(w.len(), tup.len());
                    for (&m, (lo, hi)) in w.elements().iter().zip(tup.slots()) {
                        assert!(lo < m && m <= hi, "witness {w} misses slot");
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_exact_size_matching() {
        // Only the 2-element member can interleave a 2-block tuple; no
        // hereditary closure is applied.
        let fam = FamilyExpr::explicit(vec![set(&[1, 2, 3]), set(&[2, 4])]).unwrap();
        assert_eq!(
            fam.is_admissible(&blocks(&[&[2, 3], &[4, 9]])),
            Some(set(&[2, 4]))
        );
        assert_eq!(fam.is_admissible(&blocks(&[&[2, 3]])), None);
    }

    #[test]
    fn rank_closed_forms() {
        assert_eq!(FamilyExpr::FiniteRank(3).rank(), OrdinalRank::finite(3));
        assert_eq!(FamilyExpr::Schreier.rank(), OrdinalRank::omega());
        let empty_only = FamilyExpr::explicit(vec![FiniteSet::empty()]).unwrap();
        assert_eq!(empty_only.rank(), OrdinalRank::zero());
        let union = FamilyExpr::union(FamilyExpr::FiniteRank(4), FamilyExpr::Schreier);
        assert_eq!(union.rank(), OrdinalRank::omega());
    }

    #[test]
    fn rank_of_unreachable_member_is_zero() {
        // {1,2} is not reachable by end-extensions through the family.
        let fam = FamilyExpr::explicit(vec![set(&[1, 2])]).unwrap();
        assert_eq!(fam.rank(), OrdinalRank::zero());
    }

    #[test]
    fn truncate_examples() {
        let caps = Caps::default();
        let t = FamilyExpr::FiniteRank(1).truncate(2, &caps).unwrap();
        assert_eq!(
            t,
            FamilyExpr::Explicit(vec![FiniteSet::empty(), set(&[1]), set(&[2])])
        );

        let t = FamilyExpr::Schreier.truncate(3, &caps).unwrap();
        assert_eq!(
            t,
            FamilyExpr::Explicit(vec![
                FiniteSet::empty(),
                set(&[1]),
                set(&[2]),
                set(&[3]),
                set(&[2, 3]),
            ])
        );

        let union = FamilyExpr::union(
            FamilyExpr::FiniteRank(1),
            FamilyExpr::explicit(vec![set(&[1, 2])]).unwrap(),
        );
        let t = union.truncate(2, &caps).unwrap();
        assert_eq!(
            t,
            FamilyExpr::Explicit(vec![
                FiniteSet::empty(),
                set(&[1]),
                set(&[2]),
                set(&[1, 2]),
            ])
        );
    }

    #[test]
    fn truncate_cap_is_enforced() {
        let caps = Caps { truncate_members: 10, ..Caps::default() };
        let err = FamilyExpr::FiniteRank(3).truncate(20, &caps);
        assert!(matches!(err, Err(Error::EnumerationCapExceeded { .. })));
    }

    #[test]
    fn truncated_schreier_rank_grows() {
        let caps = Caps::default();
        let mut prev = OrdinalRank::zero();
        for n in 1..=12 {
            let r = FamilyExpr::Schreier.truncate(n, &caps).unwrap().rank();
            assert!(r.is_finite());
            assert!(r >= prev, "rank must be monotone in the window");
            assert!(r <= OrdinalRank::omega());
            prev = r;
        }
        assert_eq!(prev, OrdinalRank::finite(6));
    }

    #[test]
    fn cursor_agrees_with_witness_search() {
        let families = [
            FamilyExpr::FiniteRank(2),
            FamilyExpr::Schreier,
            FamilyExpr::explicit(vec![set(&[1, 2, 3]), set(&[2, 4]), set(&[3])]).unwrap(),
            FamilyExpr::union(
                FamilyExpr::FiniteRank(1),
                FamilyExpr::explicit(vec![set(&[2, 3, 5])]).unwrap(),
            ),
        ];
        let mut rng = crate::rng::Rng::new(2024);
        for fam in &families {
            let machine = AdmissibilityMachine::new(fam);
            for _ in 0..500 {
                let tup = random_blocks(&mut rng);
                let direct = fam.is_admissible(&tup).is_some();
                let via_cursor = cursor_accepts(&machine, &tup);
                assert_eq!(direct, via_cursor, "family {fam}, tuple {tup:?}");
            }
        }
    }

    fn random_blocks(rng: &mut crate::rng::Rng) -> SuccessiveBlocks {
        let d = rng.range_u64(1, 4) as usize;
        let mut next = 1u32;
        let mut parts = Vec::new();
        for _ in 0..d {
            next += rng.range_u64(0, 3) as u32;
            let len = rng.range_u64(1, 3) as u32;
            let elems: Vec<u32> = (next..next + len).collect();
            next += len;
            parts.push(FiniteSet::new(elems).unwrap());
        }
        SuccessiveBlocks::new(parts).unwrap()
    }

    fn cursor_accepts(machine: &AdmissibilityMachine, tup: &SuccessiveBlocks) -> bool {
        let slots = tup.slots();
        machine.starts().iter().any(|start| {
            let mut cursors = vec![start.clone()];
            for (i, &(lo, hi)) in slots.iter().enumerate() {
                let clamp = (slots.len() - 1 - i) as u32;
                cursors = cursors
                    .iter()
                    .filter_map(|c| machine.step(c, lo, hi, clamp))
                    .collect();
                if cursors.is_empty() {
                    return false;
                }
            }
            cursors.iter().any(|c| machine.accepts(c))
        })
    }
}
