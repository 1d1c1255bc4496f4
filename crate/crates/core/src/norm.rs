//! Exact norm computation.
//!
//! The norm is the unique solution of
//! `‖x‖ = max(‖x‖_∞, θ · sup Σ ‖Eᵢ x‖)` over admissible successive tuples.
//! Two independent routes compute it:
//!
//! * [`norm_exact`] runs a memoized recursion over intervals of the support.
//!   Admissibility depends only on block endpoints, and enlarging a block to
//!   its convex hull never decreases `‖Eᵢ x‖` (coordinate suppression never
//!   increases these norms), so blocks can be restricted to runs of support
//!   points without changing the supremum for the hereditary built-in
//!   families. The recursion is well founded because the single-block
//!   self-partition is excluded; with `θ < 1` it can never attain the
//!   maximum anyway.
//! * [`norm_oracle`] exhaustively recurses over all admissible tuples of
//!   arbitrary successive subsets of the support. It is exponential and
//!   serves as ground truth for the DP on small vectors.
//!
//! For explicit families, which match witnesses by exact cardinality and
//! need not be hereditary, both routes quantify over blocks inside the
//! support; tuples padded with blocks that miss the support entirely are out
//! of scope for both, so the two routes stay comparable.
//!
//! Both routes are pure functions of their inputs with call-local memo
//! tables, so concurrent use needs no coordination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::caps::Caps;
use crate::error::Error;
use crate::family::{AdmissibilityMachine, Cursor, FamilyExpr, FiniteSet, SuccessiveBlocks};
use crate::functional::{Functional, Sign};
use crate::scalar::Scalar;
use crate::theta::ThetaSpec;
use crate::vector::SparseVector;

/// Counters describing the work a norm computation performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NormStats {
    /// Support size of the input vector.
    pub support: usize,
    /// Distinct support intervals evaluated.
    pub intervals: usize,
    /// Distinct partition-walk states memoized.
    pub walk_states: usize,
}

/// A computed norm together with an optimal functional from the dual ball.
///
/// The certificate evaluates back to `value` and passes
/// [`validate_functional`](crate::functional::validate_functional).
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult<S: Scalar> {
    pub value: S,
    pub certificate: Functional,
    pub stats: NormStats,
}

/// Norm computed under the arithmetic selected by a [`ThetaSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum NormOutcome {
    Exact(NormResult<crate::Rational>),
    Float(NormResult<f64>),
}

impl NormOutcome {
    pub fn value_f64(&self) -> f64 {
        match self {
            NormOutcome::Exact(r) => r.value.to_f64(),
            NormOutcome::Float(r) => r.value,
        }
    }

    pub fn certificate(&self) -> &Functional {
        match self {
            NormOutcome::Exact(r) => &r.certificate,
            NormOutcome::Float(r) => &r.certificate,
        }
    }

    pub fn stats(&self) -> NormStats {
        match self {
            NormOutcome::Exact(r) => r.stats,
            NormOutcome::Float(r) => r.stats,
        }
    }
}

/// Computes the norm in exact rational arithmetic when `θ` is rational and
/// in `f64` when it is an irrational root form.
pub fn norm_with_theta(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    x: &SparseVector<crate::Rational>,
    caps: &Caps,
) -> Result<NormOutcome, Error> {
    match theta.as_rational() {
        Some(t) => Ok(NormOutcome::Exact(norm_exact(family, &t, x, caps)?)),
        None => {
            let xf = x.to_f64();
            Ok(NormOutcome::Float(norm_exact(
                family,
                &theta.value_f64(),
                &xf,
                caps,
            )?))
        }
    }
}

fn check_theta<S: Scalar>(theta: &S) -> Result<(), Error> {
    if theta.cmp(&S::zero()) != Ordering::Greater || theta.cmp(&S::one()) != Ordering::Less {
        return Err(Error::InvalidTheta(format!(
            "theta must lie strictly between 0 and 1, got {theta:?}"
        )));
    }
    Ok(())
}

/// Memoized interval recursion with certificate reconstruction.
pub fn norm_exact<S: Scalar>(
    family: &FamilyExpr,
    theta: &S,
    x: &SparseVector<S>,
    caps: &Caps,
) -> Result<NormResult<S>, Error> {
    check_theta(theta)?;
    if x.is_zero() {
        // Conventional certificate: the first coordinate functional, which
        // evaluates to 0 against the zero vector.
        let result = NormResult {
            value: S::zero(),
            certificate: Functional::leaf(Sign::Plus, 1),
            stats: NormStats::default(),
        };
        if caps.self_check {
            self_check(family, theta, x, &result);
        }
        return Ok(result);
    }
    let max_pos = x.max_position().unwrap();
    if max_pos > caps.position_window {
        return Err(Error::PositionWindowExceeded {
            position: max_pos,
            window: caps.position_window,
        });
    }
    let cap = family.dp_support_cap(caps);
    if x.support_size() > cap {
        return Err(Error::SupportCapExceeded {
            support: x.support_size(),
            cap,
        });
    }

    let mut engine = Engine::new(family, theta, x);
    let n = engine.positions.len() as u16;
    engine.norm_interval(0, n - 1);
    let certificate = engine.certificate(0, n - 1);
    let value = engine.entry(0, n - 1).value.clone();
    let stats = NormStats {
        support: engine.positions.len(),
        intervals: engine.norm_memo.len(),
        walk_states: engine.walk_memo.len(),
    };
    let result = NormResult { value, certificate, stats };
    if caps.self_check {
        self_check(family, theta, x, &result);
    }
    Ok(result)
}

/// Engine invariants enforced in self-check mode: the certificate is a
/// valid dual-ball member, re-evaluates to the computed value, and admits a
/// valid analysis. A failure here is an engine bug, so it panics.
fn self_check<S: Scalar>(
    family: &FamilyExpr,
    theta: &S,
    x: &SparseVector<S>,
    result: &NormResult<S>,
) {
    crate::functional::validate_functional(family, &result.certificate)
        .expect("certificate must pass validation");
    let eval = result.certificate.eval(theta, x);
    let diff = eval.sub(&result.value).abs().to_f64();
    let scale = result.value.to_f64().abs().max(1.0);
    assert!(
        diff <= 1e-12 * scale,
        "certificate evaluates to {eval:?} instead of {:?}",
        result.value
    );
    let analysis = crate::analysis::analyze(family, &result.certificate)
        .expect("certificate must admit an analysis");
    crate::analysis::validate_analysis(family, &analysis, &result.certificate)
        .expect("analysis of the certificate must validate");
}

/// How an interval's norm was attained.
#[derive(Debug, Clone)]
enum Winner {
    /// The sup norm, at the given support index.
    Infty { idx: u16 },
    /// `θ` times the best admissible partition into the given runs of
    /// support indices (inclusive endpoint pairs).
    Split { blocks: Vec<(u16, u16)> },
}

#[derive(Debug, Clone)]
struct Entry<S> {
    value: S,
    winner: Winner,
}

/// A partition candidate: total child value, block count, and the blocks
/// themselves. Candidates are ranked by value, then fewer blocks, then
/// lexicographically earliest boundaries, which pins the certificate down
/// uniquely.
#[derive(Debug, Clone)]
struct Cand<S> {
    value: S,
    blocks: Vec<(u16, u16)>,
}

impl<S: Scalar> Cand<S> {
    fn empty() -> Self {
        Cand { value: S::zero(), blocks: Vec::new() }
    }

    fn better_than(&self, other: &Cand<S>) -> bool {
        match self.value.cmp(&other.value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match self.blocks.len().cmp(&other.blocks.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.blocks < other.blocks,
            },
        }
    }
}

type WalkKey = (u16, u16, u16, Cursor);

struct Engine<'a, S: Scalar> {
    theta: &'a S,
    positions: Vec<u32>,
    coeffs: Vec<S>,
    machine: AdmissibilityMachine,
    norm_memo: BTreeMap<(u16, u16), Rc<Entry<S>>>,
    walk_memo: BTreeMap<WalkKey, Option<Rc<Cand<S>>>>,
}

impl<'a, S: Scalar> Engine<'a, S> {
    fn new(family: &FamilyExpr, theta: &'a S, x: &SparseVector<S>) -> Self {
        let mut positions = Vec::with_capacity(x.support_size());
        let mut coeffs = Vec::with_capacity(x.support_size());
        for (p, c) in x.iter() {
            positions.push(p);
            coeffs.push(c.clone());
        }
        Engine {
            theta,
            positions,
            coeffs,
            machine: AdmissibilityMachine::new(family),
            norm_memo: BTreeMap::new(),
            walk_memo: BTreeMap::new(),
        }
    }

    fn entry(&self, i: u16, j: u16) -> &Entry<S> {
        self.norm_memo.get(&(i, j)).expect("interval must be computed")
    }

    /// `N([i..j]) = max(‖x|[i..j]‖_∞, θ · best(i, j))`, ties to the sup norm.
    fn norm_interval(&mut self, i: u16, j: u16) -> Rc<Entry<S>> {
        if let Some(e) = self.norm_memo.get(&(i, j)) {
            return e.clone();
        }
        let mut best_idx = i;
        let mut best_abs = self.coeffs[i as usize].abs();
        for k in (i + 1)..=j {
            let a = self.coeffs[k as usize].abs();
            if a.cmp(&best_abs) == Ordering::Greater {
                best_abs = a;
                best_idx = k;
            }
        }
        let mut entry = Entry { value: best_abs, winner: Winner::Infty { idx: best_idx } };
        if let Some(split) = self.best_split(i, j) {
            let split_value = self.theta.mul(&split.value);
            if split_value.cmp(&entry.value) == Ordering::Greater {
                entry = Entry { value: split_value, winner: Winner::Split { blocks: split.blocks } };
            }
        }
        let rc = Rc::new(entry);
        self.norm_memo.insert((i, j), rc.clone());
        rc
    }

    /// Best admissible tuple of runs inside `[i..j]`, excluding the
    /// single-block self-partition. `None` when no admissible tuple exists.
    fn best_split(&mut self, i: u16, j: u16) -> Option<Cand<S>> {
        let starts: Vec<Cursor> = self.machine.starts().to_vec();
        let mut best: Option<Cand<S>> = None;
        for c0 in starts {
            // Tuples that skip index i entirely.
            if let Some(t) = self.walk(j, i + 1, None, c0.clone()) {
                if !t.blocks.is_empty() {
                    consider(&mut best, t.as_ref().clone());
                }
            }
            // Tuples whose first block is the run [i..l]; l = j would be the
            // excluded self-partition, and nothing could follow it anyway.
            for l in i..j {
                let clamp = (j - l) as u32;
                let first_min = self.positions[i as usize];
                if let Some(c1) = self.machine.step(&c0, 0, first_min, clamp) {
                    if let Some(tail) = self.walk(j, l + 1, Some(l), c1) {
                        let head = self.norm_interval(i, l);
                        let mut blocks = Vec::with_capacity(tail.blocks.len() + 1);
                        blocks.push((i, l));
                        blocks.extend_from_slice(&tail.blocks);
                        let cand = Cand { value: head.value.add(&tail.value), blocks };
                        consider(&mut best, cand);
                    }
                }
            }
        }
        best
    }

    /// Best completion over runs inside `[k..j]` given the cursor state.
    /// `gap` is the index of the previous block's last support point, which
    /// only explicit-member cursors inspect.
    fn walk(&mut self, j: u16, k: u16, gap: Option<u16>, cursor: Cursor) -> Option<Rc<Cand<S>>> {
        if k > j {
            return if self.machine.accepts(&cursor) {
                Some(Rc::new(Cand::empty()))
            } else {
                None
            };
        }
        let gap_key = if self.machine.needs_gap() {
            gap.map_or(0, |g| g + 1)
        } else {
            0
        };
        let key = (j, k, gap_key, cursor.clone());
        if let Some(hit) = self.walk_memo.get(&key) {
            return hit.clone();
        }
        let mut best: Option<Cand<S>> = None;
        // Leave index k uncovered.
        if let Some(t) = self.walk(j, k + 1, gap, cursor.clone()) {
            consider(&mut best, t.as_ref().clone());
        }
        // Cover a run [k..l].
        let gap_pos = gap.map_or(0, |g| self.positions[g as usize]);
        let block_min = self.positions[k as usize];
        for l in k..=j {
            let clamp = (j - l) as u32;
            if let Some(next) = self.machine.step(&cursor, gap_pos, block_min, clamp) {
                if let Some(tail) = self.walk(j, l + 1, Some(l), next) {
                    let head = self.norm_interval(k, l);
                    let mut blocks = Vec::with_capacity(tail.blocks.len() + 1);
                    blocks.push((k, l));
                    blocks.extend_from_slice(&tail.blocks);
                    let cand = Cand { value: head.value.add(&tail.value), blocks };
                    consider(&mut best, cand);
                }
            }
        }
        let result = best.map(Rc::new);
        self.walk_memo.insert(key, result.clone());
        result
    }

    fn certificate(&self, i: u16, j: u16) -> Functional {
        match &self.entry(i, j).winner {
            Winner::Infty { idx } => Functional::leaf(
                Sign::of(&self.coeffs[*idx as usize]),
                self.positions[*idx as usize],
            ),
            Winner::Split { blocks } => {
                let children = blocks.iter().map(|&(k, l)| self.certificate(k, l)).collect();
                Functional::node(children)
            }
        }
    }
}

fn consider<S: Scalar>(best: &mut Option<Cand<S>>, cand: Cand<S>) {
    match best {
        None => *best = Some(cand),
        Some(b) => {
            if cand.better_than(b) {
                *best = Some(cand);
            }
        }
    }
}

/// Ground-truth norm by exhaustive recursion over all admissible tuples of
/// successive finite subsets of the support, not only intervals.
///
/// Exponential in the support size; guarded by `caps.oracle_support`.
pub fn norm_oracle<S: Scalar>(
    family: &FamilyExpr,
    theta: &S,
    x: &SparseVector<S>,
    caps: &Caps,
) -> Result<S, Error> {
    check_theta(theta)?;
    if x.is_zero() {
        return Ok(S::zero());
    }
    if x.support_size() > caps.oracle_support {
        return Err(Error::OracleCapExceeded {
            support: x.support_size(),
            cap: caps.oracle_support,
        });
    }
    let positions: Vec<u32> = x.support().iter().collect();
    let coeffs: Vec<S> = positions.iter().map(|&p| x.get(p)).collect();
    let mut oracle = Oracle {
        family,
        theta,
        positions,
        coeffs,
        memo: BTreeMap::new(),
    };
    let full = (1u32 << oracle.positions.len()) - 1;
    Ok(oracle.value(full))
}

struct Oracle<'a, S: Scalar> {
    family: &'a FamilyExpr,
    theta: &'a S,
    positions: Vec<u32>,
    coeffs: Vec<S>,
    memo: BTreeMap<u32, S>,
}

impl<S: Scalar> Oracle<'_, S> {
    fn value(&mut self, mask: u32) -> S {
        if mask == 0 {
            return S::zero();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let points: Vec<u16> = (0..self.positions.len() as u16)
            .filter(|&i| mask & (1 << i) != 0)
            .collect();
        let mut result = S::zero();
        for &i in &points {
            result = result.max_of(&self.coeffs[i as usize].abs());
        }
        let mut blocks: Vec<Vec<u16>> = Vec::new();
        let mut best: Option<S> = None;
        self.enumerate_tuples(&points, 0, &mut blocks, &mut best);
        if let Some(b) = best {
            result = result.max_of(&self.theta.mul(&b));
        }
        self.memo.insert(mask, result.clone());
        result
    }

    /// Every assignment of the remaining points to "skipped", "last open
    /// block", or "new block" yields one tuple of successive subsets.
    fn enumerate_tuples(
        &mut self,
        points: &[u16],
        idx: usize,
        blocks: &mut Vec<Vec<u16>>,
        best: &mut Option<S>,
    ) {
        if idx == points.len() {
            self.score_tuple(points, blocks, best);
            return;
        }
        // Skip this point.
        self.enumerate_tuples(points, idx + 1, blocks, best);
        // Extend the open block.
        if !blocks.is_empty() {
            blocks.last_mut().unwrap().push(points[idx]);
            self.enumerate_tuples(points, idx + 1, blocks, best);
            blocks.last_mut().unwrap().pop();
        }
        // Open a new block.
        blocks.push(alloc::vec![points[idx]]);
        self.enumerate_tuples(points, idx + 1, blocks, best);
        blocks.pop();
    }

    fn score_tuple(&mut self, points: &[u16], blocks: &[Vec<u16>], best: &mut Option<S>) {
        if blocks.is_empty() {
            return;
        }
        // The single-block self-partition is excluded.
        if blocks.len() == 1 && blocks[0].len() == points.len() {
            return;
        }
        let sets: Vec<FiniteSet> = blocks
            .iter()
            .map(|b| {
                FiniteSet::new(b.iter().map(|&i| self.positions[i as usize]).collect())
                    .expect("ascending point indices give ascending positions")
            })
            .collect();
        let tuple = SuccessiveBlocks::new(sets).expect("ordered blocks are successive");
        if self.family.is_admissible(&tuple).is_none() {
            return;
        }
        let mut sum = S::zero();
        for b in blocks {
            let mut sub = 0u32;
            for &i in b {
                sub |= 1 << i;
            }
            let v = self.value(sub);
            sum = sum.add(&v);
        }
        match best {
            None => *best = Some(sum),
            Some(b) => {
                if sum.cmp(b) == Ordering::Greater {
                    *best = Some(sum);
                }
            }
        }
    }
}

/// Enumerates every member of `K_depth` with support inside `[1, bound]`,
/// without structural duplicates, in a canonical order.
pub fn dual_ball_enumerate(
    family: &FamilyExpr,
    bound: u32,
    depth: usize,
    caps: &Caps,
) -> Result<Vec<Functional>, Error> {
    use alloc::collections::BTreeSet;

    if bound == 0 {
        return Err(Error::PreconditionViolation(
            alloc::string::String::from("support bound must be >= 1"),
        ));
    }
    let machine = AdmissibilityMachine::new(family);
    let mut current: BTreeSet<Functional> = BTreeSet::new();
    for k in 1..=bound {
        current.insert(Functional::leaf(Sign::Plus, k));
        current.insert(Functional::leaf(Sign::Minus, k));
    }
    check_cap(current.len(), caps)?;

    for _ in 0..depth {
        // Members of the previous level sorted by minimal support point, so
        // successive extensions scan forward.
        let mut members: Vec<(u32, u32, Functional)> = current
            .iter()
            .map(|f| (f.min_position().unwrap(), f.max_position().unwrap(), f.clone()))
            .collect();
        members.sort_by_key(|&(min, max, _)| (min, max));

        let mut added: Vec<Functional> = Vec::new();
        let mut prefix: Vec<Functional> = Vec::new();
        for start in 0..members.len() {
            grow_tuples(
                &machine,
                &members,
                start,
                bound,
                &mut prefix,
                machine.starts(),
                &mut added,
                current.len(),
                caps,
            )?;
        }
        current.extend(added);
        check_cap(current.len(), caps)?;
    }
    Ok(current.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn grow_tuples(
    machine: &AdmissibilityMachine,
    members: &[(u32, u32, Functional)],
    idx: usize,
    bound: u32,
    prefix: &mut Vec<Functional>,
    cursors: &[Cursor],
    out: &mut Vec<Functional>,
    current_len: usize,
    caps: &Caps,
) -> Result<(), Error> {
    let (min, max, f) = &members[idx];
    let gap_pos = prefix.last().map_or(0, |p| p.max_position().unwrap());
    if gap_pos >= *min {
        return Ok(());
    }
    let stepped: Vec<Cursor> = cursors
        .iter()
        .filter_map(|c| machine.step(c, gap_pos, *min, bound))
        .collect();
    if stepped.is_empty() {
        return Ok(());
    }
    prefix.push(f.clone());
    if stepped.iter().any(|c| machine.accepts(c)) {
        out.push(Functional::node(prefix.clone()));
        check_cap(current_len + out.len(), caps)?;
    }
    for next in idx + 1..members.len() {
        if members[next].0 > *max {
            grow_tuples(machine, members, next, bound, prefix, &stepped, out, current_len, caps)?;
        }
    }
    prefix.pop();
    Ok(())
}

fn check_cap(len: usize, caps: &Caps) -> Result<(), Error> {
    if len > caps.dual_ball_members {
        Err(Error::EnumerationCapExceeded { cap: caps.dual_ball_members })
    } else {
        Ok(())
    }
}
