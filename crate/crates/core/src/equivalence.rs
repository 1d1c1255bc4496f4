//! Quantitative `ℓ^p`-equivalence machinery for the cardinality families
//! `{A : |A| ≤ n}` with `1/n < θ < 1`.
//!
//! With `1/p = 1 − log_n(1/θ)` the norm is equivalent to `‖·‖_p`:
//! it is dominated by `‖·‖_p` outright, and bounded below by
//! `(1/2n)·‖·‖_p`. The four verifiers here machine-check the inequality
//! chain behind that statement on seeded samples: the upper bound, the
//! lower bound at unit blocks, the block-sequence domination with constant
//! `2/θ`, and the replication lower bound for rational weight tuples.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::analysis::analyze;
use crate::caps::Caps;
use crate::error::Error;
use crate::family::FamilyExpr;
use crate::norm::norm_exact;
use crate::rng::Rng;
use crate::sample;
use crate::sample::SampleSpec;
use crate::scalar::Scalar;
use crate::theta::ThetaSpec;
use crate::vector::SparseVector;

/// Conjugate exponents with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub p: f64,
    pub q: f64,
}

/// Solves `1/p = 1 − log_n(1/θ)` and returns the conjugate pair.
///
/// Root-form inputs over the same base return their `q` exactly. The
/// hypothesis `1/n < θ < 1` is enforced; at `θ ≤ 1/n` the exponent
/// degenerates.
pub fn p_exponent(n: u32, theta: &ThetaSpec) -> Result<ExponentPair, Error> {
    if n < 2 {
        return Err(Error::HypothesisViolation(String::from("need n >= 2")));
    }
    match theta {
        ThetaSpec::RootForm { n: base, q } if *base == n => {
            let q = *q;
            Ok(ExponentPair { p: q / (q - 1.0), q })
        }
        _ => {
            // θ > 1/n, checked exactly for rational θ.
            let ok = match theta {
                ThetaSpec::Rational { num, den } => (*num as u64) * (n as u64) > *den as u64,
                ThetaSpec::RootForm { .. } => theta.value_f64() > 1.0 / n as f64,
            };
            if !ok {
                return Err(Error::HypothesisViolation(format!(
                    "theta = {theta} is not greater than 1/{n}"
                )));
            }
            let theta_f = theta.value_f64();
            let inv_p = 1.0 - libm::log(1.0 / theta_f) / libm::log(n as f64);
            debug_assert!(inv_p > 0.0 && inv_p < 1.0);
            let p = 1.0 / inv_p;
            Ok(ExponentPair { p, q: p / (p - 1.0) })
        }
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    /// Which claim was checked (`step1`, `step2`, ...).
    pub claim: String,
    pub description: String,
    pub seed: u64,
    pub samples: usize,
    /// Largest observed `lhs/rhs`; every claim is normalized to
    /// `lhs ≤ rhs + tolerance`, so passing runs stay at or below 1.
    pub worst_ratio: f64,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    /// Optional diagnostic lines (the replication construction for the
    /// rational-tuple bound).
    pub trace: Vec<String>,
}

/// A failing sample, re-checkable in isolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Vector literal to reproduce the failing instance, when one vector
    /// pins it down.
    pub vector: Option<String>,
}

struct ReportBuilder {
    claim: String,
    description: String,
    seed: u64,
    samples: usize,
    worst_ratio: f64,
    tolerance: f64,
    counterexample: Option<Counterexample>,
    trace: Vec<String>,
}

impl ReportBuilder {
    fn new(claim: &str, description: String, seed: u64, tolerance: f64) -> Self {
        ReportBuilder {
            claim: claim.to_string(),
            description,
            seed,
            samples: 0,
            worst_ratio: 0.0,
            tolerance,
            counterexample: None,
            trace: Vec::new(),
        }
    }

    /// Records one `lhs ≤ rhs + tolerance` check.
    fn check(&mut self, lhs: f64, rhs: f64, detail: impl Fn() -> (String, Option<String>)) {
        if rhs.abs() > 1e-30 {
            let ratio = lhs / rhs;
            if ratio > self.worst_ratio {
                self.worst_ratio = ratio;
            }
        }
        if lhs > rhs + self.tolerance && self.counterexample.is_none() {
            let (description, vector) = detail();
            self.counterexample = Some(Counterexample { description, lhs, rhs, vector });
        }
    }

    fn finish(self) -> InequalityReport {
        InequalityReport {
            claim: self.claim,
            description: self.description,
            seed: self.seed,
            samples: self.samples,
            worst_ratio: self.worst_ratio,
            pass: self.counterexample.is_none(),
            counterexample: self.counterexample,
            trace: self.trace,
        }
    }
}

/// Norm of a sampled vector in the arithmetic selected by `theta`.
fn norm_f64_of_entries(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    entries: &[sample::Entry],
    caps: &Caps,
) -> Result<f64, Error> {
    match theta.as_rational() {
        Some(t) => Ok(norm_exact(family, &t, &sample::entries_to_rational(entries), caps)?
            .value
            .to_f64()),
        None => Ok(norm_exact(family, &theta.value_f64(), &sample::entries_to_f64(entries), caps)?.value),
    }
}

fn norm_f64_of_units(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    m: u32,
    caps: &Caps,
) -> Result<f64, Error> {
    let entries: Vec<sample::Entry> = (1..=m).map(|p| (p, 1, 1)).collect();
    norm_f64_of_entries(family, theta, &entries, caps)
}

/// Upper bound: `‖x‖ ≤ ‖x‖_p` on seeded random vectors.
pub fn verify_step1(
    n: u32,
    theta: &ThetaSpec,
    spec: &SampleSpec,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    let exponents = p_exponent(n, theta)?;
    let family = FamilyExpr::FiniteRank(n);
    let mut rng = Rng::new(spec.seed);
    let mut report = ReportBuilder::new(
        "step1",
        format!("norm <= lp norm for n={n}, theta={theta}, p={:.6}", exponents.p),
        spec.seed,
        1e-9,
    );
    for _ in 0..spec.count {
        let entries = sample::sample_entries(&mut rng, spec.window, spec.max_support);
        let norm = norm_f64_of_entries(&family, theta, &entries, caps)?;
        let lp = sample::entries_to_f64(&entries).lp_norm(exponents.p);
        report.samples += 1;
        report.check(norm, lp, || {
            let v = sample::entries_to_rational(&entries);
            (
                format!("norm {norm} exceeds lp norm {lp}"),
                Some(crate::literal::format_vector(&v)),
            )
        });
    }
    Ok(report.finish())
}

/// Lower bound at unit blocks: `n^(-1/p)·m^(1/p) ≤ ‖Σ_{i≤m} e_i‖` for all
/// `m ≤ m_max`, with equality `‖Σ_{i≤n^s} e_i‖ = n^(s/p)` at powers of `n`.
pub fn verify_step2(
    n: u32,
    theta: &ThetaSpec,
    m_max: u32,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    let exponents = p_exponent(n, theta)?;
    let family = FamilyExpr::FiniteRank(n);
    let mut report = ReportBuilder::new(
        "step2",
        format!("unit block lower bound for n={n}, theta={theta}, m<={m_max}"),
        0,
        1e-9,
    );
    for m in 1..=m_max {
        let norm = norm_f64_of_units(&family, theta, m, caps)?;
        let bound = libm::pow(n as f64, -1.0 / exponents.p) * libm::pow(m as f64, 1.0 / exponents.p);
        report.samples += 1;
        report.check(bound, norm, || {
            (
                format!("lower bound {bound} exceeds norm {norm} at m={m}"),
                Some(format!("unit block m={m}")),
            )
        });
        // Exact power points: both directions.
        if is_power_of(m, n) {
            let exact = libm::pow(m as f64, 1.0 / exponents.p);
            report.check(norm, exact, || {
                (
                    format!("norm {norm} exceeds exact value {exact} at m={m}"),
                    Some(format!("unit block m={m}")),
                )
            });
            report.check(exact, norm, || {
                (
                    format!("norm {norm} falls below exact value {exact} at m={m}"),
                    Some(format!("unit block m={m}")),
                )
            });
        }
    }
    Ok(report.finish())
}

fn is_power_of(m: u32, n: u32) -> bool {
    let mut v = 1u64;
    while v < m as u64 {
        v *= n as u64;
    }
    v == m as u64
}

/// Parameters for block-sequence sampling.
#[derive(Debug, Clone)]
pub struct BlockSampleSpec {
    pub count: usize,
    pub max_blocks: usize,
    pub max_total_support: usize,
    /// Random index subsets checked per case in the inner inductive
    /// inequality.
    pub subsets_per_case: usize,
    pub seed: u64,
}

/// Block-sequence domination: for normalized successive blocks `x_k` and
/// arbitrary coefficients, `‖Σ a_k x_k‖ ≤ (2/θ)·‖Σ a_k e_k‖`. Additionally
/// checks the inductive inequality `|f(Σ_{k∈J} a_k x_k)| ≤ (1/θ)·‖Σ_{k∈J}
/// a_k e_k‖` for every member `f` of an analysis of the optimal certificate
/// and random index subsets `J`.
pub fn verify_step3(
    n: u32,
    theta: &ThetaSpec,
    spec: &BlockSampleSpec,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    p_exponent(n, theta)?;
    let family = FamilyExpr::FiniteRank(n);
    let theta_f = theta.value_f64();
    let mut rng = Rng::new(spec.seed);
    let mut report = ReportBuilder::new(
        "step3",
        format!(
            "block domination <= (2/theta)*base norm for n={n}, theta={theta}, {} blocks max",
            spec.max_blocks
        ),
        spec.seed,
        1e-8,
    );
    for _ in 0..spec.count {
        // Normalized successive blocks with positive coordinates.
        let raw = sample::sample_positive_blocks(&mut rng, spec.max_blocks, spec.max_total_support);
        let mut blocks = Vec::with_capacity(raw.len());
        for b in raw {
            let norm = norm_exact(&family, &theta_f, &b, caps)?.value;
            blocks.push(b.scale(&(1.0 / norm)));
        }
        let coeffs: Vec<f64> = blocks
            .iter()
            .map(|_| rng.range_i64(-64, 64) as f64 / 64.0)
            .collect();

        let mut combined: SparseVector<f64> = SparseVector::zero();
        let mut base: SparseVector<f64> = SparseVector::zero();
        for (k, (x, a)) in blocks.iter().zip(&coeffs).enumerate() {
            combined = combined.add(&x.scale(a));
            base.set(k as u32 + 1, *a);
        }
        let result = norm_exact(&family, &theta_f, &combined, caps)?;
        let base_norm = norm_exact(&family, &theta_f, &base, caps)?.value;
        report.samples += 1;
        report.check(result.value, (2.0 / theta_f) * base_norm, || {
            (
                format!(
                    "block sum norm {} exceeds (2/theta)*{base_norm}",
                    result.value
                ),
                Some(format!("{combined}")),
            )
        });

        // Inner inductive inequality over the certificate's analysis.
        let analysis = analyze(&family, &result.certificate)?;
        for _ in 0..spec.subsets_per_case {
            let all: Vec<u32> = (0..blocks.len() as u32).collect();
            let subset = sample::sample_subset(&mut rng, &all);
            let mut z: SparseVector<f64> = SparseVector::zero();
            let mut base_j: SparseVector<f64> = SparseVector::zero();
            for &k in &subset {
                z = z.add(&blocks[k as usize].scale(&coeffs[k as usize]));
                base_j.set(k + 1, coeffs[k as usize]);
            }
            let rhs = norm_exact(&family, &theta_f, &base_j, caps)?.value / theta_f;
            for level in analysis.levels() {
                for f in level {
                    let lhs = libm::fabs(f.eval(&theta_f, &z));
                    report.check(lhs, rhs, || {
                        (
                            format!(
                                "inductive bound fails for {f} on subset {subset:?}: \
                                 |f(z)| = {lhs} > {rhs}"
                            ),
                            Some(format!("{z}")),
                        )
                    });
                }
            }
        }
    }
    Ok(report.finish())
}

/// Parameters for rational-tuple sampling.
#[derive(Debug, Clone)]
pub struct RationalTupleSpec {
    pub count: usize,
    pub max_terms: usize,
    pub max_denominator: u64,
    pub seed: u64,
}

/// Replication lower bound: for non-negative rationals `r_j`,
/// `‖Σ r_j^(1/p) e_j‖ ≥ (1/2n)·(Σ r_j)^(1/p)`. Requires `θ = n^(-1/q)`.
pub fn verify_step4(
    n: u32,
    theta: &ThetaSpec,
    spec: &RationalTupleSpec,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    let exponents = match theta {
        ThetaSpec::RootForm { n: base, .. } if *base == n => p_exponent(n, theta)?,
        _ => {
            return Err(Error::HypothesisViolation(format!(
                "the replication bound needs theta = {n}^(-1/q), got {theta}"
            )))
        }
    };
    let family = FamilyExpr::FiniteRank(n);
    let theta_f = theta.value_f64();
    let p = exponents.p;
    let mut rng = Rng::new(spec.seed);
    let mut report = ReportBuilder::new(
        "step4",
        format!(
            "rational tuple lower bound >= 1/(2n)*(sum r)^(1/p) for n={n}, theta={theta}"
        ),
        spec.seed,
        1e-8,
    );
    for case in 0..spec.count {
        let rs = sample::sample_nonnegative_rationals(&mut rng, spec.max_terms, spec.max_denominator);
        let x = SparseVector::from_entries(rs.iter().enumerate().filter_map(|(j, &(num, den))| {
            if num == 0 {
                None
            } else {
                Some((j as u32 + 1, libm::pow(num as f64 / den as f64, 1.0 / p)))
            }
        }))
        .expect("positions are >= 1");
        let norm = norm_exact(&family, &theta_f, &x, caps)?.value;
        let total: f64 = rs.iter().map(|&(num, den)| num as f64 / den as f64).sum();
        let bound = libm::pow(total, 1.0 / p) / (2.0 * n as f64);
        report.samples += 1;
        report.check(bound, norm, || {
            (
                format!("replication bound {bound} exceeds norm {norm} for r = {rs:?}"),
                Some(format!("{x}")),
            )
        });
        if case == 0 {
            report.trace = replication_trace(n, theta_f, p, &rs);
        }
    }
    Ok(report.finish())
}

/// The replication construction behind the lower bound, as diagnostic
/// lines: common denominator `k`, counts `k_j`, partial sums `s_j`, unit
/// blocks `u_j`, and the inequality chain evaluated on them.
fn replication_trace(n: u32, theta_f: f64, p: f64, rs: &[(u64, u64)]) -> Vec<String> {
    let mut k = 1u64;
    for &(_, den) in rs {
        k = lcm(k, den);
    }
    let counts: Vec<u64> = rs.iter().map(|&(num, den)| num * (k / den)).collect();
    let mut sums = Vec::with_capacity(counts.len());
    let mut acc = 0u64;
    for &c in &counts {
        acc += c;
        sums.push(acc);
    }
    let s_l = acc;
    let total_r = s_l as f64 / k as f64;
    let step2_bound = libm::pow(n as f64, -1.0 / p) * libm::pow(s_l as f64, 1.0 / p);
    let chain = theta_f / 2.0 * libm::pow(k as f64, -1.0 / p) * step2_bound;
    let target = libm::pow(total_r, 1.0 / p) / (2.0 * n as f64);
    alloc::vec![
        format!("r_j = {rs:?}, common denominator k = {k}"),
        format!("replication counts k_j = {counts:?}, partial sums s_j = {sums:?}"),
        format!(
            "u_j = e_(s_(j-1)+1) + ... + e_(s_j); each ||u_j|| <= k_j^(1/p) by the upper bound"
        ),
        format!(
            "||sum r_j^(1/p) e_j|| >= (theta/2) k^(-1/p) ||e_1 + ... + e_{s_l}|| \
             >= (theta/2) k^(-1/p) * {step2_bound:.12}"
        ),
        format!("chain value {chain:.12} = (1/2n)(sum r_j)^(1/p) = {target:.12}"),
    ]
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// DP against brute force: `norm_exact` must agree with `norm_oracle` on
/// every sampled small vector, exactly in rational arithmetic and within
/// `1e-12` relative in floating arithmetic.
pub fn verify_oracle_equivalence(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    spec: &SampleSpec,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    let mut rng = Rng::new(spec.seed);
    let max_support = spec.max_support.min(caps.oracle_support);
    let mut report = ReportBuilder::new(
        "oracle",
        format!("norm_exact == norm_oracle for family {family}, theta={theta}"),
        spec.seed,
        1e-12,
    );
    for _ in 0..spec.count {
        let entries = sample::sample_entries(&mut rng, spec.window, max_support);
        // Exact arithmetic compares exactly; the relative difference is
        // materialized only for reporting.
        let (dp, oracle, rel) = match theta.as_rational() {
            Some(t) => {
                let v = sample::entries_to_rational(&entries);
                let dp = norm_exact(family, &t, &v, caps)?.value;
                let oracle = crate::norm::norm_oracle(family, &t, &v, caps)?;
                let rel = if dp == oracle {
                    0.0
                } else {
                    let diff = dp.sub(&oracle).abs();
                    diff.to_f64().max(f64::MIN_POSITIVE) / oracle.to_f64().max(1e-300)
                };
                (dp.to_f64(), oracle.to_f64(), rel)
            }
            None => {
                let v = sample::entries_to_f64(&entries);
                let t = theta.value_f64();
                let dp = norm_exact(family, &t, &v, caps)?.value;
                let oracle = crate::norm::norm_oracle(family, &t, &v, caps)?;
                let rel = if oracle == 0.0 {
                    libm::fabs(dp)
                } else {
                    libm::fabs(dp - oracle) / libm::fabs(oracle)
                };
                (dp, oracle, rel)
            }
        };
        report.samples += 1;
        report.check(rel, 0.0, || {
            let v = sample::entries_to_rational(&entries);
            (
                format!("norm_exact = {dp} but norm_oracle = {oracle}"),
                Some(crate::literal::format_vector(&v)),
            )
        });
    }
    Ok(report.finish())
}

/// 1-unconditionality: flipping signs or zeroing coordinates never
/// increases the norm.
pub fn verify_unconditionality(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    spec: &SampleSpec,
    caps: &Caps,
) -> Result<InequalityReport, Error> {
    let mut rng = Rng::new(spec.seed);
    let mut report = ReportBuilder::new(
        "unconditional",
        format!("sign flips and masks never increase the norm for {family}, theta={theta}"),
        spec.seed,
        1e-12,
    );
    for _ in 0..spec.count {
        let entries = sample::sample_entries(&mut rng, spec.window, spec.max_support);
        let support: Vec<u32> = entries.iter().map(|&(p, _, _)| p).collect();
        let flips = sample::sample_subset(&mut rng, &support);
        let mask = sample::sample_subset(&mut rng, &support);
        let modified: Vec<sample::Entry> = entries
            .iter()
            .filter(|(p, _, _)| !mask.contains(p))
            .map(|&(p, num, den)| {
                if flips.contains(&p) {
                    (p, -num, den)
                } else {
                    (p, num, den)
                }
            })
            .collect();
        let base = norm_f64_of_entries(family, theta, &entries, caps)?;
        let varied = norm_f64_of_entries(family, theta, &modified, caps)?;
        report.samples += 1;
        // Relative tolerance: the two norms are computed by the same route,
        // so exceeding base by more than 1e-12 relative is a real failure.
        report.check(varied, base * (1.0 + 1e-12), || {
            let v = sample::entries_to_rational(&entries);
            (
                format!(
                    "norm grew from {base} to {varied} under flips {flips:?}, mask {mask:?}"
                ),
                Some(crate::literal::format_vector(&v)),
            )
        });
    }
    Ok(report.finish())
}

/// Empirical equivalence constants: `(min, max)` of `‖x‖ / ‖x‖_p` over the
/// sample. Under the theorem hypotheses the pair lies inside
/// `[1/(2n), 1]` up to rounding.
pub fn equivalence_constants(
    n: u32,
    theta: &ThetaSpec,
    spec: &SampleSpec,
    caps: &Caps,
) -> Result<(f64, f64), Error> {
    let exponents = p_exponent(n, theta)?;
    let family = FamilyExpr::FiniteRank(n);
    let mut rng = Rng::new(spec.seed);
    let mut c_low = f64::INFINITY;
    let mut c_high = 0.0f64;
    for _ in 0..spec.count {
        let entries = sample::sample_entries(&mut rng, spec.window, spec.max_support);
        let norm = norm_f64_of_entries(&family, theta, &entries, caps)?;
        let lp = sample::entries_to_f64(&entries).lp_norm(exponents.p);
        let ratio = norm / lp;
        c_low = c_low.min(ratio);
        c_high = c_high.max(ratio);
    }
    Ok((c_low, c_high))
}

/// Norms of the unit blocks `Σ_{i≤m} e_i` for `m = 1, …, m_max`.
///
/// The values are non-decreasing and grow by at most 1 per step; for the
/// cardinality families at `θ = n^(-1/q)` they hit `n^(s/p)` exactly at
/// `m = n^s`, while the Schreier family shows slower-than-power growth.
pub fn growth_probe(
    family: &FamilyExpr,
    theta: &ThetaSpec,
    m_max: u32,
    caps: &Caps,
) -> Result<Vec<(u32, f64)>, Error> {
    let mut table = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        table.push((m, norm_f64_of_units(family, theta, m, caps)?));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_formula() {
        let e = p_exponent(2, &ThetaSpec::root_form(2, 2.0).unwrap()).unwrap();
        assert!((e.p - 2.0).abs() < 1e-12);
        assert!((e.q - 2.0).abs() < 1e-12);

        // log_4(2) = 1/2, so p = 2.
        let e = p_exponent(4, &ThetaSpec::rational(1, 2).unwrap()).unwrap();
        assert!((e.p - 2.0).abs() < 1e-12);
        assert!((1.0 / e.p + 1.0 / e.q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exponent_rejects_hypothesis_violations() {
        // θ = 1/n is excluded.
        assert!(matches!(
            p_exponent(2, &ThetaSpec::rational(1, 2).unwrap()),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            p_exponent(3, &ThetaSpec::rational(1, 4).unwrap()),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(p_exponent(3, &ThetaSpec::rational(1, 2).unwrap()).is_ok());
    }

    #[test]
    fn step2_small_run_passes() {
        let caps = Caps::default();
        let theta = ThetaSpec::root_form(2, 2.0).unwrap();
        let report = verify_step2(2, &theta, 8, &caps).unwrap();
        assert!(report.pass, "step2 failed: {report:?}");
        assert!(report.worst_ratio <= 1.0 + 1e-9);
    }

    #[test]
    fn step1_small_run_passes() {
        let caps = Caps::default();
        let theta = ThetaSpec::root_form(2, 2.0).unwrap();
        let spec = SampleSpec { count: 50, max_support: 8, window: 30, seed: 11 };
        let report = verify_step1(2, &theta, &spec, &caps).unwrap();
        assert!(report.pass, "step1 failed: {report:?}");
    }

    #[test]
    fn broken_bound_produces_recheckable_counterexample() {
        // Tightening the upper bound to lp/2 must fail and deliver a
        // counterexample that re-fails in isolation.
        let caps = Caps::default();
        let theta = ThetaSpec::root_form(2, 2.0).unwrap();
        let spec = SampleSpec { count: 20, max_support: 6, window: 20, seed: 5 };
        let family = FamilyExpr::FiniteRank(2);
        let mut rng = Rng::new(spec.seed);
        let mut report = ReportBuilder::new("doctored", String::from("norm <= lp/2"), spec.seed, 1e-9);
        for _ in 0..spec.count {
            let entries = sample::sample_entries(&mut rng, spec.window, spec.max_support);
            let norm = norm_f64_of_entries(&family, &theta, &entries, &caps).unwrap();
            let lp = sample::entries_to_f64(&entries).lp_norm(2.0);
            report.samples += 1;
            report.check(norm, lp / 2.0, || {
                let v = sample::entries_to_rational(&entries);
                (String::from("broken"), Some(crate::literal::format_vector(&v)))
            });
        }
        let report = report.finish();
        assert!(!report.pass);
        let cex = report.counterexample.unwrap();
        let v = crate::literal::parse_vector(cex.vector.as_deref().unwrap()).unwrap();
        let norm = norm_exact(&family, &theta.value_f64(), &v.to_f64(), &caps)
            .unwrap()
            .value;
        let lp = v.to_f64().lp_norm(2.0);
        assert!(norm > lp / 2.0 + 1e-9, "counterexample must re-fail");
    }

    #[test]
    fn growth_probe_unit_start() {
        let caps = Caps::default();
        let theta = ThetaSpec::rational(1, 2).unwrap();
        let table = growth_probe(&FamilyExpr::Schreier, &theta, 6, &caps).unwrap();
        assert_eq!(table[0], (1, 1.0));
        for w in table.windows(2) {
            assert!(w[1].1 >= w[0].1 - 1e-12);
            assert!(w[1].1 <= w[0].1 + 1.0 + 1e-12);
        }
    }

    #[test]
    fn step4_requires_matching_root_form() {
        let caps = Caps::default();
        let spec = RationalTupleSpec { count: 1, max_terms: 3, max_denominator: 4, seed: 1 };
        let err = verify_step4(2, &ThetaSpec::rational(3, 4).unwrap(), &spec, &caps);
        assert!(matches!(err, Err(Error::HypothesisViolation(_))));
    }
}
