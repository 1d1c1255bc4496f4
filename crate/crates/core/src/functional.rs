//! Norming functionals: tree-shaped elements of the dual-ball sets `K_s`.
//!
//! `K₀` holds the signed coordinate functionals `±e_k*`. `K_{s+1}` adds
//! `θ·(f₁ + … + f_d)` for every admissible tuple of successive `f_i ∈ K_s`.
//! A tree of depth `s` is a member of `K_s`, and the norm of `x` equals the
//! supremum of `⟨f, x⟩` over all these functionals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::family::{FamilyExpr, FiniteSet, SuccessiveBlocks};
use crate::scalar::Scalar;
use crate::vector::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<S: Scalar>(value: &S) -> Sign {
        if value.cmp(&S::zero()) == core::cmp::Ordering::Less {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn apply<S: Scalar>(self, value: &S) -> S {
        match self {
            Sign::Plus => value.clone(),
            Sign::Minus => value.neg(),
        }
    }
}

/// A member of some `K_s`, evaluable against vectors.
///
/// Leaves evaluate to `±x_k`; a node evaluates to `θ` times the sum of its
/// children. Node children must have pairwise successive supports and an
/// admissible count, which [`validate_functional`] checks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functional {
    Leaf { sign: Sign, position: u32 },
    Node { children: Vec<Functional> },
}

impl Functional {
    pub fn leaf(sign: Sign, position: u32) -> Self {
        Functional::Leaf { sign, position }
    }

    pub fn node(children: Vec<Functional>) -> Self {
        Functional::Node { children }
    }

    /// Tree depth: 0 for a leaf, `1 + max(child depth)` for a node. This is
    /// the least `s` with `f ∈ K_s`.
    pub fn depth(&self) -> usize {
        match self {
            Functional::Leaf { .. } => 0,
            Functional::Node { children } => {
                1 + children.iter().map(Functional::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn count_nodes(&self) -> usize {
        match self {
            Functional::Leaf { .. } => 1,
            Functional::Node { children } => {
                1 + children.iter().map(Functional::count_nodes).sum::<usize>()
            }
        }
    }

    pub fn min_position(&self) -> Option<u32> {
        match self {
            Functional::Leaf { position, .. } => Some(*position),
            Functional::Node { children } => children.first().and_then(Functional::min_position),
        }
    }

    pub fn max_position(&self) -> Option<u32> {
        match self {
            Functional::Leaf { position, .. } => Some(*position),
            Functional::Node { children } => children.last().and_then(Functional::max_position),
        }
    }

    /// The set of leaf positions.
    pub fn support(&self) -> FiniteSet {
        let mut positions = Vec::new();
        self.collect_positions(&mut positions);
        FiniteSet::from_unsorted(positions).expect("leaf positions are valid elements")
    }

    fn collect_positions(&self, out: &mut Vec<u32>) {
        match self {
            Functional::Leaf { position, .. } => out.push(*position),
            Functional::Node { children } => {
                for c in children {
                    c.collect_positions(out);
                }
            }
        }
    }

    /// The pairing `⟨f, x⟩`, linear in `x`.
    pub fn eval<S: Scalar>(&self, theta: &S, x: &SparseVector<S>) -> S {
        match self {
            Functional::Leaf { sign, position } => sign.apply(&x.get(*position)),
            Functional::Node { children } => {
                let mut sum = S::zero();
                for c in children {
                    sum = sum.add(&c.eval(theta, x));
                }
                theta.mul(&sum)
            }
        }
    }
}

/// Checks that every node has successive children with an admissible count
/// and returns the minimal `s` with `f ∈ K_s` (the tree depth). Errors name
/// the path of child indices from the root to the offending node.
pub fn validate_functional(family: &FamilyExpr, f: &Functional) -> Result<usize, Error> {
    let mut path = Vec::new();
    validate_at(family, f, &mut path)
}

fn validate_at(
    family: &FamilyExpr,
    f: &Functional,
    path: &mut Vec<usize>,
) -> Result<usize, Error> {
    match f {
        Functional::Leaf { position, .. } => {
            if *position == 0 {
                return Err(Error::InvalidFunctional {
                    path: path.clone(),
                    reason: String::from("leaf position must be >= 1"),
                });
            }
            Ok(0)
        }
        Functional::Node { children } => {
            if children.is_empty() {
                return Err(Error::InvalidFunctional {
                    path: path.clone(),
                    reason: String::from("node has no children"),
                });
            }
            let mut depth = 0;
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                depth = depth.max(validate_at(family, c, path)? + 1);
                path.pop();
            }
            let supports: Vec<FiniteSet> = children.iter().map(Functional::support).collect();
            let blocks = SuccessiveBlocks::new(supports).map_err(|e| Error::InvalidFunctional {
                path: path.clone(),
                reason: format!("children are not successive: {e}"),
            })?;
            if family.is_admissible(&blocks).is_none() {
                return Err(Error::InvalidFunctional {
                    path: path.clone(),
                    reason: format!("{} children are not admissible", children.len()),
                });
            }
            Ok(depth)
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Leaf { sign, position } => match sign {
                Sign::Plus => write!(f, "e{position}*"),
                Sign::Minus => write!(f, "-e{position}*"),
            },
            Functional::Node { children } => {
                write!(f, "t(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}
