//! Level-by-level analyses of norming functionals and the induced
//! initial/final decomposition of block vectors.
//!
//! An analysis of a functional `φ` of depth `m` is a sequence
//! `F⁰, …, Fᵐ` of lists of functionals such that
//!
//! 1. each `Fˢ` consists of successive members of `K_s` whose supports
//!    partition `supp(φ)`,
//! 2. each `f ∈ F^{s+1}` either already belongs to `Fˢ` or equals
//!    `θ·(f₁ + … + f_d)` for an admissible tuple of successive `f_i ∈ Fˢ`,
//! 3. `Fᵐ = {φ}`.
//!
//! [`analyze`] produces the canonical analysis in which `Fˢ` holds the
//! maximal subtrees of `φ` of depth at most `s`; elements persist verbatim
//! upward until their parent node's level composes them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::family::FamilyExpr;
use crate::functional::{validate_functional, Functional};
use crate::scalar::Scalar;
use crate::vector::SparseVector;

/// An analysis `F⁰, …, Fᵐ` of some functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    levels: Vec<Vec<Functional>>,
}

impl Analysis {
    /// The lists `F⁰, …, Fᵐ` in level order.
    pub fn levels(&self) -> &[Vec<Functional>] {
        &self.levels
    }

    /// The depth `m` of the analyzed functional.
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// The analyzed functional `φ`.
    pub fn phi(&self) -> &Functional {
        &self.levels.last().expect("levels are nonempty")[0]
    }
}

/// Builds the canonical analysis of `phi`, validating it first.
pub fn analyze(family: &FamilyExpr, phi: &Functional) -> Result<Analysis, Error> {
    let depth = validate_functional(family, phi)?;
    let mut levels = Vec::with_capacity(depth + 1);
    for s in 0..=depth {
        let mut level = Vec::new();
        maximal_subtrees(phi, s, &mut level);
        levels.push(level);
    }
    Ok(Analysis { levels })
}

/// Collects, left to right, the maximal subtrees of `f` of depth ≤ `s`.
fn maximal_subtrees(f: &Functional, s: usize, out: &mut Vec<Functional>) {
    if f.depth() <= s {
        out.push(f.clone());
        return;
    }
    match f {
        Functional::Leaf { .. } => unreachable!("leaf depth 0 is <= every level"),
        Functional::Node { children } => {
            for c in children {
                maximal_subtrees(c, s, out);
            }
        }
    }
}

/// Checks conditions (1)-(3) against `phi` independently of how the
/// analysis was produced, plus the support-nesting remark: members of
/// adjacent levels have nested or disjoint supports.
pub fn validate_analysis(
    family: &FamilyExpr,
    analysis: &Analysis,
    phi: &Functional,
) -> Result<(), Error> {
    let levels = analysis.levels();
    if levels.is_empty() {
        return Err(Error::PreconditionViolation(String::from(
            "analysis has no levels",
        )));
    }
    let phi_support = phi.support();
    for (s, level) in levels.iter().enumerate() {
        if level.is_empty() {
            return Err(Error::PreconditionViolation(format!("level {s} is empty")));
        }
        // Condition (1): successive members of K_s partitioning supp(phi).
        let mut covered = Vec::new();
        let mut prev_max = 0u32;
        for f in level {
            let d = validate_functional(family, f)?;
            if d > s {
                return Err(Error::PreconditionViolation(format!(
                    "level {s} member {f} has depth {d} > {s}"
                )));
            }
            let supp = f.support();
            let min = supp.min_element().expect("functional support is nonempty");
            if min <= prev_max {
                return Err(Error::PreconditionViolation(format!(
                    "level {s} members are not successive at {f}"
                )));
            }
            prev_max = supp.max_element().unwrap();
            covered.extend(supp.iter());
        }
        let covered = crate::family::FiniteSet::from_unsorted(covered)
            .expect("supports were pairwise successive");
        if covered != phi_support {
            return Err(Error::PreconditionViolation(format!(
                "level {s} supports cover {covered} instead of supp(phi) = {phi_support}"
            )));
        }
        // Condition (2): each member persists from below or composes
        // members of the previous level.
        if s > 0 {
            let below = &levels[s - 1];
            for f in level {
                if below.contains(f) {
                    continue;
                }
                let children = match f {
                    Functional::Node { children } => children,
                    Functional::Leaf { .. } => {
                        return Err(Error::PreconditionViolation(format!(
                            "level {s} leaf {f} does not appear in level {}",
                            s - 1
                        )));
                    }
                };
                for c in children {
                    if !below.contains(c) {
                        return Err(Error::PreconditionViolation(format!(
                            "level {s} member {f} composes {c} which is not in level {}",
                            s - 1
                        )));
                    }
                }
                // Admissibility of the composed tuple is already certified
                // by validate_functional on f.
            }
        }
    }
    // Condition (3).
    let top = levels.last().unwrap();
    if top.len() != 1 || &top[0] != phi {
        return Err(Error::PreconditionViolation(String::from(
            "top level must consist of exactly the analyzed functional",
        )));
    }
    // Support nesting remark.
    for s in 0..levels.len() - 1 {
        for f1 in &levels[s] {
            let s1 = f1.support();
            for f2 in &levels[s + 1] {
                let s2 = f2.support();
                let nested = s1.is_subset_of(&s2);
                let disjoint = s1.iter().all(|e| !s2.contains(e));
                if !nested && !disjoint {
                    return Err(Error::PreconditionViolation(format!(
                        "supports of {f1} (level {s}) and {f2} (level {}) neither nest nor \
                         are disjoint",
                        s + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// An initial part `x'_k` and final part `x''_k` with `x'_k + x''_k = x_k`.
pub type InitialFinal<S> = (SparseVector<S>, SparseVector<S>);

/// The initial/final decomposition of successive non-negative blocks with
/// respect to an analysis.
///
/// For each block `x_k`, `s_k` is the largest level below the top at which
/// at least two members evaluate positively against `x_k` (0 when no such
/// level exists, in particular for singleton support). Among the members of
/// level `s_k` meeting `x_k`, the first one carries the initial part
/// `x'_k = x_k | supp(f₁)` and the rest carry the final part. Each pair
/// satisfies `x'_k + x''_k = x_k`.
pub fn split_initial_final<S: Scalar>(
    theta: &S,
    analysis: &Analysis,
    xs: &[SparseVector<S>],
) -> Result<Vec<InitialFinal<S>>, Error> {
    if xs.is_empty() {
        return Err(Error::PreconditionViolation(String::from("no blocks given")));
    }
    let mut union = Vec::new();
    let mut prev_max = 0u32;
    for (k, x) in xs.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::PreconditionViolation(format!(
                "block {} is zero",
                k + 1
            )));
        }
        let min = x.min_position().unwrap();
        if min <= prev_max {
            return Err(Error::PreconditionViolation(format!(
                "blocks {} and {} are not successive",
                k,
                k + 1
            )));
        }
        prev_max = x.max_position().unwrap();
        for (p, c) in x.iter() {
            if c.cmp(&S::zero()) == core::cmp::Ordering::Less {
                return Err(Error::PreconditionViolation(format!(
                    "block {} has a negative coordinate at {p}",
                    k + 1
                )));
            }
            union.push(p);
        }
    }
    let union = crate::family::FiniteSet::from_unsorted(union).expect("positions are valid");
    let phi_support = analysis.phi().support();
    if union != phi_support {
        return Err(Error::PreconditionViolation(format!(
            "blocks cover {union} instead of supp(phi) = {phi_support}"
        )));
    }

    let m = analysis.top_level();
    let mut result = Vec::with_capacity(xs.len());
    for x in xs {
        let mut s_k = 0usize;
        for s in (0..m).rev() {
            let meeting = analysis.levels()[s]
                .iter()
                .filter(|f| f.eval(theta, x).cmp(&S::zero()) == core::cmp::Ordering::Greater)
                .count();
            if meeting >= 2 {
                s_k = s;
                break;
            }
        }
        let covering: Vec<&Functional> = analysis.levels()[s_k]
            .iter()
            .filter(|f| f.eval(theta, x).cmp(&S::zero()) == core::cmp::Ordering::Greater)
            .collect();
        let mut covered = Vec::new();
        for f in &covering {
            covered.extend(f.support().iter());
        }
        let covered = crate::family::FiniteSet::from_unsorted(covered).expect("valid positions");
        if !x.support().is_subset_of(&covered) {
            return Err(Error::PreconditionViolation(format!(
                "members meeting block at level {s_k} do not cover its support \
                 (is a coordinate cancelled by a negative leaf?)"
            )));
        }
        let initial = x.restrict(&covering[0].support());
        let mut final_part = SparseVector::zero();
        for f in covering.iter().skip(1) {
            final_part = final_part.add(&x.restrict(&f.support()));
        }
        result.push((initial, final_part));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::Sign;
    use alloc::vec;

    fn leaf(pos: u32) -> Functional {
        Functional::leaf(Sign::Plus, pos)
    }

    fn fam() -> FamilyExpr {
        FamilyExpr::FiniteRank(2)
    }

    #[test]
    fn analysis_of_leaf() {
        let a = analyze(&fam(), &leaf(3)).unwrap();
        assert_eq!(a.levels(), &[vec![leaf(3)]]);
        validate_analysis(&fam(), &a, &leaf(3)).unwrap();
    }

    #[test]
    fn analysis_of_flat_node() {
        let phi = Functional::node(vec![leaf(1), leaf(2)]);
        let a = analyze(&fam(), &phi).unwrap();
        assert_eq!(a.levels()[0], vec![leaf(1), leaf(2)]);
        assert_eq!(a.levels()[1], vec![phi.clone()]);
        validate_analysis(&fam(), &a, &phi).unwrap();
    }

    #[test]
    fn analysis_persists_shallow_members() {
        let inner = Functional::node(vec![leaf(1), leaf(2)]);
        let phi = Functional::node(vec![inner.clone(), leaf(3)]);
        let a = analyze(&fam(), &phi).unwrap();
        assert_eq!(a.levels()[0], vec![leaf(1), leaf(2), leaf(3)]);
        // leaf(3) persists from level 0 beside the composed inner node.
        assert_eq!(a.levels()[1], vec![inner, leaf(3)]);
        assert_eq!(a.levels()[2], vec![phi.clone()]);
        validate_analysis(&fam(), &a, &phi).unwrap();
    }

    #[test]
    fn validate_rejects_foreign_composition() {
        let phi = Functional::node(vec![leaf(1), leaf(2)]);
        let bogus = Analysis {
            levels: vec![vec![leaf(1), leaf(2)], vec![Functional::node(vec![leaf(1)])]],
        };
        assert!(validate_analysis(&fam(), &bogus, &phi).is_err());
    }

    #[test]
    fn split_two_block_example() {
        // phi = θ(θ(e₁*+e₂*) + θ(e₃*+e₄*)), x₁ = e₁+e₂+e₃, x₂ = e₄.
        let phi = Functional::node(vec![
            Functional::node(vec![leaf(1), leaf(2)]),
            Functional::node(vec![leaf(3), leaf(4)]),
        ]);
        let a = analyze(&fam(), &phi).unwrap();
        let theta = 0.5f64;
        let x1 = SparseVector::from_entries(vec![(1, 1.0), (2, 1.0), (3, 1.0)]).unwrap();
        let x2 = SparseVector::from_entries(vec![(4, 1.0)]).unwrap();
        let parts = split_initial_final(&theta, &a, &[x1.clone(), x2.clone()]).unwrap();

        // s₁ = 1: both level-1 members meet x₁.
        let expected_initial =
            SparseVector::from_entries(vec![(1, 1.0), (2, 1.0)]).unwrap();
        let expected_final = SparseVector::from_entries(vec![(3, 1.0)]).unwrap();
        assert_eq!(parts[0].0, expected_initial);
        assert_eq!(parts[0].1, expected_final);
        assert_eq!(parts[0].0.add(&parts[0].1), x1);

        // Singleton support: x'₂ = x₂ and x''₂ = 0.
        assert_eq!(parts[1].0, x2);
        assert!(parts[1].1.is_zero());
    }

    #[test]
    fn split_rejects_negative_blocks() {
        let phi = Functional::node(vec![leaf(1), leaf(2)]);
        let a = analyze(&fam(), &phi).unwrap();
        let x = SparseVector::from_entries(vec![(1, 1.0), (2, -1.0)]).unwrap();
        assert!(split_initial_final(&0.5f64, &a, &[x]).is_err());
    }

    #[test]
    fn split_decomposition_sums_back() {
        let phi = Functional::node(vec![
        Functional::node(vec![leaf(1), leaf(3)]),
            Functional::node(vec![leaf(5), leaf(8), leaf(9)]),
        ]);
        let fam = FamilyExpr::FiniteRank(3);
        let a = analyze(&fam, &phi).unwrap();
        let x1 = SparseVector::from_entries(vec![(1, 0.5), (3, 2.0)]).unwrap();
        let x2 = SparseVector::from_entries(vec![(5, 1.0), (8, 0.25), (9, 1.5)]).unwrap();
        let parts = split_initial_final(&0.5f64, &a, &[x1.clone(), x2.clone()]).unwrap();
        assert_eq!(parts[0].0.add(&parts[0].1), x1);
        assert_eq!(parts[1].0.add(&parts[1].1), x2);
    }
}
