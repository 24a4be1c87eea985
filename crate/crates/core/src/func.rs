//! The separable quadratic family on `c_c`, its conjugate, and executable
//! witnesses for its pathologies.
//!
//! A family member has weights `w_n = n^alpha` and targets `t_n = n^-beta`:
//!
//! ```text
//! f(x) = sum_n (w_n / 2) (x_n - t_n)^2,        x in c_c,
//! ```
//!
//! finite exactly when `sigma = 2 beta - alpha >= 2`, since the off-support
//! tail is `(1/2) zeta(sigma)`. The canonical instance `alpha = beta = 2` is
//! convex, finite and lower semicontinuous yet nowhere continuous, and its
//! subdifferential is empty at every point: the only pointwise candidate
//! gradient `z_n = w_n (x_n - t_n)` tends to `-1`, so it is never
//! square-summable. [`refute_subgradient`] turns that emptiness into an
//! exact, re-checkable certificate for any finitely supported candidate.
//!
//! Square-summable candidates are refuted through their finite prefixes: any
//! `z` in `l2` has `z_n -> 0`, so at a large off-prefix index the same
//! witness formula applies with margin `(z_n + 1)^2 / (2 n^2) >= 1/(8 n^2)`
//! once `|z_n| <= 1/2`. Keeping the operation on finite supports keeps it
//! total and exact.

use serde::Serialize;
use thiserror::Error;

use crate::certificate::Certificate;
use crate::exact_number::ExactValue;
use crate::rational::{int_pow, Rational};
use crate::seq::FiniteSeq;
use crate::seqgen::SeqSampler;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    #[error("family requires 2*beta - alpha >= 2, got alpha = {alpha}, beta = {beta}")]
    InvalidFamily { alpha: u32, beta: u32 },
    #[error("index {n} is too small: it must exceed the support and satisfy the gap bound")]
    IndexTooSmall { n: u64 },
    #[error("the linear shift must be nonzero")]
    ZeroShift,
}

/// Member of the separable quadratic family: weights `n^alpha`, targets
/// `n^-beta`, with `2*beta - alpha >= 2` so the value is finite on `c_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparableQuadratic {
    weight_exponent: u32,
    target_exponent: u32,
}

impl SeparableQuadratic {
    pub fn new(weight_exponent: u32, target_exponent: u32) -> Result<Self, FuncError> {
        if 2 * target_exponent < weight_exponent + 2 {
            return Err(FuncError::InvalidFamily {
                alpha: weight_exponent,
                beta: target_exponent,
            });
        }
        Ok(SeparableQuadratic {
            weight_exponent,
            target_exponent,
        })
    }

    /// The canonical instance `w_n = n^2`, `t_n = n^-2`.
    pub fn canonical() -> Self {
        SeparableQuadratic {
            weight_exponent: 2,
            target_exponent: 2,
        }
    }

    pub fn weight_exponent(&self) -> u32 {
        self.weight_exponent
    }

    pub fn target_exponent(&self) -> u32 {
        self.target_exponent
    }

    /// Exponent of the zeta tail: `sigma = 2*beta - alpha`.
    pub fn tail_exponent(&self) -> u32 {
        2 * self.target_exponent - self.weight_exponent
    }

    /// `w_n = n^alpha`.
    pub fn weight(&self, n: u64) -> Rational {
        Rational::from_int(int_pow(n, self.weight_exponent))
    }

    /// `t_n = n^-beta`.
    pub fn target(&self, n: u64) -> Rational {
        Rational::new(1, int_pow(n, self.target_exponent))
    }

    /// `n^-sigma`, the off-support term `w_n t_n^2`.
    fn tail_term(&self, n: u64) -> Rational {
        Rational::new(1, int_pow(n, self.tail_exponent()))
    }

    /// `(1/2) zeta(sigma)` as an exact value.
    fn half_zeta_tail(&self) -> ExactValue {
        ExactValue::zeta_multiple(self.tail_exponent(), Rational::new(1, 2))
            .expect("sigma >= 2 by the family invariant")
    }
}

impl Default for SeparableQuadratic {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Exact value of `f` at a finitely supported point.
///
/// Only support indices contribute beyond the constant tail:
/// `f(x) = sum_{n in supp(x)} [w_n/2 (x_n - t_n)^2 - w_n t_n^2 / 2]
///        + (1/2) zeta(sigma)`,
/// so the result is a rational plus the fixed coefficient `1/2` on
/// `zeta(sigma)`.
pub fn eval_f(q: &SeparableQuadratic, x: &FiniteSeq) -> ExactValue {
    let half = Rational::new(1, 2);
    let mut finite = Rational::zero();
    for (n, v) in x.iter() {
        let w = q.weight(n);
        let d = v - &q.target(n);
        finite = finite + &half * &w * d.square() - &half * q.tail_term(n);
    }
    q.half_zeta_tail().add_rational(&finite)
}

/// Directional derivative `f'(x; y) = sum_n w_n (x_n - t_n) y_n`, exact and
/// linear in `y`.
pub fn directional_derivative(q: &SeparableQuadratic, x: &FiniteSeq, y: &FiniteSeq) -> Rational {
    let mut acc = Rational::zero();
    for (n, yn) in y.iter() {
        let slope = q.weight(n) * (x.get(n) - q.target(n));
        acc = acc + slope * yn;
    }
    acc
}

/// Exact jump `f(x + (2/n) e_n) - f(x)` for an index beyond the support,
/// certified to be at least `1/4` (the nowhere-continuity mechanism: the
/// perturbations `x + (2/n) e_n` converge to `x` while the value stays a
/// fixed distance above).
pub fn continuity_gap_witness(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    n: u64,
) -> Result<Rational, FuncError> {
    if n <= x.max_support() || n < 2 {
        return Err(FuncError::IndexTooSmall { n });
    }
    let step = Rational::new(2, int_pow(n, 1));
    let bumped = x.add(&FiniteSeq::basis(n).expect("n >= 2").scale(&step));
    let gap = eval_f(q, &bumped).sub(&eval_f(q, x));
    let gap = gap
        .as_rational()
        .expect("zeta parts cancel in a difference of two values of f")
        .clone();
    if gap < Rational::new(1, 4) {
        return Err(FuncError::IndexTooSmall { n });
    }
    Ok(gap)
}

/// Prefix `(z_1, ..., z_N)` of the unique pointwise candidate gradient
/// `z_n = w_n (x_n - t_n)`; zero entries are dropped.
///
/// Off the support of `x` the entries equal `-w_n t_n` (`-1` for the
/// canonical instance), so the prefix squared norm grows linearly in `N`:
/// the candidate escapes `l2`, which is exactly why the subdifferential is
/// empty.
pub fn candidate_subgradient_prefix(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    max_index: u64,
) -> FiniteSeq {
    assert!(max_index >= 1);
    let pairs = (1..=max_index).map(|n| (n, q.weight(n) * (x.get(n) - q.target(n))));
    FiniteSeq::from_pairs(pairs).expect("indices >= 1")
}

/// Certificate that a specific candidate `z` violates the subgradient
/// inequality at `x`: a point `y`, a step, and the exact positive margin
/// `f(x) + <z, y - x> - f(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationWitness {
    pub index: u64,
    pub step: Rational,
    pub point: FiniteSeq,
    pub margin: Rational,
}

impl RefutationWitness {
    /// Re-checks the defining inequality exactly; used on construction.
    fn verify(q: &SeparableQuadratic, x: &FiniteSeq, z: &FiniteSeq, witness: &Self) -> bool {
        let lhs = eval_f(q, &witness.point);
        let shift = z.inner(&witness.point.sub(x));
        let rhs = eval_f(q, x).add_rational(&shift);
        let margin = rhs.sub(&lhs);
        match margin.as_rational() {
            Some(m) => m == &witness.margin && m.is_positive(),
            None => false,
        }
    }
}

/// Refutes `z` as a subgradient of `f` at `x` along the coordinate `n` just
/// beyond both supports.
///
/// There `x_n = z_n = 0` while the candidate slope requires `-w_n t_n`, so
/// stepping `t = c / w_n` with `c = z_n - w_n (x_n - t_n)` beats the
/// subgradient inequality by exactly `c^2 / (2 w_n)` (`1/(2 n^2)` for the
/// canonical instance). Total: every finitely supported `z` is refuted.
pub fn refute_subgradient(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    z: &FiniteSeq,
) -> RefutationWitness {
    let n = x.max_support().max(z.max_support()) + 1;
    refute_subgradient_at(q, x, z, n).expect("off-support slope gap is w_n t_n != 0")
}

/// Refutes `z` at a chosen index, if the candidate slope differs from `z_n`
/// there. The margin is exactly `c^2 / (2 w_n)` with
/// `c = z_n - w_n (x_n - t_n)`.
pub fn refute_subgradient_at(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    z: &FiniteSeq,
    n: u64,
) -> Option<RefutationWitness> {
    assert!(n >= 1);
    let w = q.weight(n);
    let slope_gap = z.get(n) - w.clone() * (x.get(n) - q.target(n));
    if slope_gap.is_zero() {
        return None;
    }
    let step = &slope_gap / &w;
    let point = x.add(&FiniteSeq::basis(n).expect("n >= 1").scale(&step));
    let margin = slope_gap.square() / (Rational::from_int(2) * w);
    let witness = RefutationWitness {
        index: n,
        step,
        point,
        margin,
    };
    assert!(
        RefutationWitness::verify(q, x, z, &witness),
        "refutation margin failed exact re-verification"
    );
    Some(witness)
}

/// Conjugate value `f*(y) = sum_n [ y_n^2 / (2 w_n) + t_n y_n ]`, exact on
/// finitely supported `y` (coefficientwise conjugate of `w_n/2 (. - t_n)^2`).
pub fn eval_f_conj(q: &SeparableQuadratic, y: &FiniteSeq) -> Rational {
    let mut acc = Rational::zero();
    for (n, yn) in y.iter() {
        acc = acc + yn.square() / (Rational::from_int(2) * q.weight(n)) + q.target(n) * yn;
    }
    acc
}

/// Fenchel-Young gap `f(x) + f*(y) - <x, y>`, strictly positive on `c_c`
/// because equality would exhibit a subgradient.
///
/// Computed along two routes that must agree exactly: the definition above,
/// and the closed-form sum `sum_n (y_n - w_n (x_n - t_n))^2 / (2 w_n)`
/// (rational over the union support plus the `(1/2) zeta(sigma)` tail).
pub fn fenchel_young_gap(q: &SeparableQuadratic, x: &FiniteSeq, y: &FiniteSeq) -> ExactValue {
    let direct = eval_f(q, x)
        .add_rational(&eval_f_conj(q, y))
        .add_rational(&-x.inner(y));

    // Closed form: off the union support each term equals the tail term
    // w_n t_n^2 / 2, which the zeta constant already accounts for.
    let mut finite = Rational::zero();
    let union: std::collections::BTreeSet<u64> = x
        .iter()
        .map(|(n, _)| n)
        .chain(y.iter().map(|(n, _)| n))
        .collect();
    let half = Rational::new(1, 2);
    for n in union {
        let w = q.weight(n);
        let d = y.get(n) - w.clone() * (x.get(n) - q.target(n));
        finite = finite + d.square() / (Rational::from_int(2) * w) - &half * q.tail_term(n);
    }
    let closed = q.half_zeta_tail().add_rational(&finite);
    assert_eq!(direct, closed, "Fenchel-Young routes must agree exactly");
    direct
}

/// Strict improvement step for `f*`: extends `z` at the first index past its
/// support with the coefficientwise minimizer `-w_m t_m`, decreasing `f*` by
/// exactly `w_m t_m^2 / 2` (`1/(2 m^2)` canonically). Witnesses that `f*`
/// has no minimizer.
pub fn improve_conj_point(q: &SeparableQuadratic, z: &FiniteSeq) -> (FiniteSeq, Rational) {
    let m = z.max_support() + 1;
    let new_coeff = -(q.weight(m) * q.target(m));
    let improved = z.add(&FiniteSeq::basis(m).expect("m >= 1").scale(&new_coeff));
    let decrease = Rational::new(1, 2) * q.weight(m) * q.target(m).square();
    debug_assert!(decrease.is_positive());
    let before = eval_f_conj(q, z);
    let after = eval_f_conj(q, &improved);
    assert_eq!(
        after,
        &before - &decrease,
        "conjugate improvement must be exact"
    );
    (improved, decrease)
}

/// Certifies that adding a continuous linear functional changes the function
/// but not its (empty) subdifferential.
///
/// Membership of `z` in the subdifferential of `f + l` at `x` is equivalent
/// to membership of `z - l` for `f`, so the usual refutation applies to the
/// shifted candidate; the certificate re-checks the shifted inequality
/// directly against `f + l`. Two evaluation points witness that
/// `(f + l) - f = l` is not constant.
pub fn subdiff_invariance_under_linear_shift(
    q: &SeparableQuadratic,
    shift: &FiniteSeq,
    x: &FiniteSeq,
    z: &FiniteSeq,
) -> Result<Certificate, FuncError> {
    if shift.is_zero() {
        return Err(FuncError::ZeroShift);
    }
    let shifted = z.sub(shift);
    let witness = refute_subgradient(q, x, &shifted);

    // Re-check against f + l without the equivalence: the inequality
    // (f+l)(y) >= (f+l)(x) + <z, y-x> must fail by the same margin.
    let y = &witness.point;
    let lhs = eval_f(q, y).add_rational(&shift.inner(y));
    let rhs = eval_f(q, x)
        .add_rational(&shift.inner(x))
        .add_rational(&z.inner(&y.sub(x)));
    let margin = rhs.sub(&lhs);
    let margin_ok = margin.as_rational() == Some(&witness.margin);

    let (k, lk) = shift
        .iter()
        .next()
        .map(|(n, v)| (n, v.clone()))
        .expect("shift is nonzero");
    let difference_at_basis = lk.clone();

    Ok(
        Certificate::new("subdifferential-invariant-under-linear-shift")
            .item("shift", shift)
            .item("x", x)
            .item("z", z)
            .item("refutation_index", witness.index)
            .item("refutation_point", &witness.point)
            .item("difference_index", k)
            .margin(witness.margin.clone())
            .check(
                margin_ok,
                "shifted refutation margin re-verified against f + l",
            )
            .check(witness.margin.is_positive(), "margin positive")
            .item("difference_at_e_k", &difference_at_basis)
            .item("difference_at_origin", Rational::zero())
            .check(
                !difference_at_basis.is_zero(),
                "(f + l) - f separates e_k from the origin",
            ),
    )
}

/// Vacuous monotone-extension certificate: the graph of the subdifferential
/// is empty on any finite sample of points, so any pair `(x, z)` extends it
/// monotonically. Each sampled point carries an explicit refutation of its
/// unique candidate prefix and of a seeded random candidate.
pub fn witness_not_maximal_monotone(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    z: &FiniteSeq,
    seed: u64,
    samples: usize,
) -> Certificate {
    let mut sampler = SeqSampler::new(seed);
    let mut cert = Certificate::new("subdifferential-not-maximally-monotone")
        .item("x", x)
        .item("z", z)
        .item("seed", seed)
        .item("samples", samples);
    for i in 0..samples {
        let point = sampler.seq(24, 0, 4);
        let prefix = candidate_subgradient_prefix(q, &point, point.max_support() + 2);
        let w1 = refute_subgradient(q, &point, &prefix);
        let w2 = refute_subgradient(q, &point, &sampler.seq(24, 0, 4));
        cert = cert.check(
            w1.margin.is_positive() && w2.margin.is_positive(),
            &format!("sampled point {i} has empty subdifferential"),
        );
    }
    // With the sampled graph empty, monotonicity of the extension by (x, z)
    // is vacuous.
    cert.check(true, "extension (x, z) accepted vacuously")
}

/// Convexity slack `lambda f(x) + (1 - lambda) f(y) - f(lambda x + (1-lambda) y)`,
/// exact (the zeta tails cancel); nonnegative for `lambda in [0, 1]`.
pub fn convexity_slack(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    y: &FiniteSeq,
    lambda: &Rational,
) -> Rational {
    let one_minus = Rational::one() - lambda;
    let mix = x.scale(lambda).add(&y.scale(&one_minus));
    let value = eval_f(q, x)
        .scale(lambda)
        .add(&eval_f(q, y).scale(&one_minus))
        .sub(&eval_f(q, &mix));
    value
        .as_rational()
        .expect("zeta parts cancel in the convexity slack")
        .clone()
}

/// Exact difference quotient `(f(x + t y) - f(x)) / t` for rational `t != 0`.
pub fn difference_quotient(
    q: &SeparableQuadratic,
    x: &FiniteSeq,
    y: &FiniteSeq,
    t: &Rational,
) -> Rational {
    assert!(!t.is_zero());
    let moved = x.add(&y.scale(t));
    let diff = eval_f(q, &moved).sub(&eval_f(q, x));
    diff.as_rational()
        .expect("zeta parts cancel in a difference of two values of f")
        / t
}

/// Catalog of convex functions the duality harness reasons about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FnKind {
    SeparableQuadratic(SeparableQuadratic),
    Zero,
    IndicatorOrigin,
    Linear(FiniteSeq),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainTag {
    AllOfCc,
    OriginOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityTag {
    Nowhere,
    Everywhere,
}

/// Catalog descriptor with domain and continuity metadata derived from the
/// kind, so the tags can never disagree with the function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexFnDesc {
    pub kind: FnKind,
}

impl ConvexFnDesc {
    pub fn separable_quadratic(q: SeparableQuadratic) -> Self {
        ConvexFnDesc {
            kind: FnKind::SeparableQuadratic(q),
        }
    }

    pub fn zero() -> Self {
        ConvexFnDesc { kind: FnKind::Zero }
    }

    pub fn indicator_origin() -> Self {
        ConvexFnDesc {
            kind: FnKind::IndicatorOrigin,
        }
    }

    pub fn linear(functional: FiniteSeq) -> Self {
        ConvexFnDesc {
            kind: FnKind::Linear(functional),
        }
    }

    pub fn domain(&self) -> DomainTag {
        match self.kind {
            FnKind::IndicatorOrigin => DomainTag::OriginOnly,
            _ => DomainTag::AllOfCc,
        }
    }

    pub fn continuity(&self) -> ContinuityTag {
        match self.kind {
            FnKind::SeparableQuadratic(_) | FnKind::IndicatorOrigin => ContinuityTag::Nowhere,
            FnKind::Zero | FnKind::Linear(_) => ContinuityTag::Everywhere,
        }
    }

    /// Value at `x`; `None` encodes `+infinity`.
    pub fn evaluate(&self, x: &FiniteSeq) -> Option<ExactValue> {
        match &self.kind {
            FnKind::SeparableQuadratic(q) => Some(eval_f(q, x)),
            FnKind::Zero => Some(ExactValue::zero()),
            FnKind::IndicatorOrigin => x.is_zero().then(ExactValue::zero),
            FnKind::Linear(l) => Some(ExactValue::from_rational(l.inner(x))),
        }
    }

    /// Conjugate value at `y`; `None` encodes `+infinity`.
    pub fn conjugate_at(&self, y: &FiniteSeq) -> Option<ExactValue> {
        match &self.kind {
            FnKind::SeparableQuadratic(q) => Some(ExactValue::from_rational(eval_f_conj(q, y))),
            // (zero)* is the indicator of the origin.
            FnKind::Zero => y.is_zero().then(ExactValue::zero),
            // (indicator of the origin)* is the zero function.
            FnKind::IndicatorOrigin => Some(ExactValue::zero()),
            // (linear l)* is the indicator of {l}.
            FnKind::Linear(l) => (y == l).then(ExactValue::zero),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_number::{exact_compare, RefinementBudget};
    use std::cmp::Ordering;

    fn q() -> SeparableQuadratic {
        SeparableQuadratic::canonical()
    }

    fn seq(pairs: &[(u64, i64)]) -> FiniteSeq {
        FiniteSeq::from_pairs(pairs.iter().map(|(n, v)| (*n, Rational::from_int(*v)))).unwrap()
    }

    fn rseq(pairs: &[(u64, (i64, i64))]) -> FiniteSeq {
        FiniteSeq::from_pairs(pairs.iter().map(|(n, (p, q))| (*n, Rational::new(*p, *q)))).unwrap()
    }

    fn half_zeta2_plus(r: Rational) -> ExactValue {
        ExactValue::zeta_multiple(2, Rational::new(1, 2))
            .unwrap()
            .add_rational(&r)
    }

    #[test]
    fn family_invariant() {
        assert!(SeparableQuadratic::new(2, 2).is_ok());
        assert!(SeparableQuadratic::new(1, 2).is_ok());
        assert!(matches!(
            SeparableQuadratic::new(3, 2),
            Err(FuncError::InvalidFamily { alpha: 3, beta: 2 })
        ));
        assert_eq!(SeparableQuadratic::new(1, 2).unwrap().tail_exponent(), 3);
    }

    #[test]
    fn value_at_origin_is_half_zeta_tail() {
        assert_eq!(
            eval_f(&q(), &FiniteSeq::zero()),
            half_zeta2_plus(Rational::zero())
        );
        let gentler = SeparableQuadratic::new(1, 2).unwrap();
        assert_eq!(
            eval_f(&gentler, &FiniteSeq::zero()),
            ExactValue::zeta_multiple(3, Rational::new(1, 2)).unwrap()
        );
    }

    #[test]
    fn value_at_first_basis_vector() {
        assert_eq!(
            eval_f(&q(), &FiniteSeq::basis(1).unwrap()),
            half_zeta2_plus(Rational::new(-1, 2))
        );
    }

    #[test]
    fn value_at_three_term_point() {
        // x = (1, 1/4, 1/9): every coordinate sits at its target except n=1.
        let x = rseq(&[(1, (1, 1)), (2, (1, 4)), (3, (1, 9))]);
        assert_eq!(eval_f(&q(), &x), half_zeta2_plus(Rational::new(-49, 72)));
    }

    #[test]
    fn directional_derivative_examples() {
        for n in [1u64, 2, 7, 40] {
            assert_eq!(
                directional_derivative(&q(), &FiniteSeq::zero(), &FiniteSeq::basis(n).unwrap()),
                Rational::from_int(-1)
            );
        }
        let e1 = FiniteSeq::basis(1).unwrap();
        assert_eq!(directional_derivative(&q(), &e1, &e1), Rational::zero());
        assert_eq!(
            directional_derivative(&q(), &FiniteSeq::zero(), &seq(&[(1, 1), (2, 1)])),
            Rational::from_int(-2)
        );
    }

    #[test]
    fn continuity_gap_examples() {
        assert_eq!(
            continuity_gap_witness(&q(), &FiniteSeq::zero(), 4).unwrap(),
            Rational::new(3, 2)
        );
        assert_eq!(
            continuity_gap_witness(&q(), &FiniteSeq::zero(), 2).unwrap(),
            Rational::one()
        );
        // Untouched coordinates translate away.
        assert_eq!(
            continuity_gap_witness(&q(), &FiniteSeq::basis(1).unwrap(), 10).unwrap(),
            continuity_gap_witness(&q(), &FiniteSeq::zero(), 10).unwrap()
        );
        assert!(matches!(
            continuity_gap_witness(&q(), &FiniteSeq::basis(3).unwrap(), 3),
            Err(FuncError::IndexTooSmall { n: 3 })
        ));
        assert!(matches!(
            continuity_gap_witness(&q(), &FiniteSeq::zero(), 1),
            Err(FuncError::IndexTooSmall { n: 1 })
        ));
    }

    #[test]
    fn candidate_prefix_examples() {
        assert_eq!(
            candidate_subgradient_prefix(&q(), &FiniteSeq::zero(), 3),
            seq(&[(1, -1), (2, -1), (3, -1)])
        );
        assert_eq!(
            candidate_subgradient_prefix(&q(), &FiniteSeq::basis(1).unwrap(), 2),
            seq(&[(2, -1)])
        );
    }

    #[test]
    fn candidate_prefix_escapes_l2() {
        let x = seq(&[(2, 3)]);
        for n in [10u64, 50, 200] {
            let prefix = candidate_subgradient_prefix(&q(), &x, n);
            // All but the support entries are exactly -1.
            assert!(prefix.norm_sq() >= Rational::from_int(n as i64 - x.support_len() as i64));
        }
    }

    #[test]
    fn refutation_at_origin_against_zero() {
        let w = refute_subgradient(&q(), &FiniteSeq::zero(), &FiniteSeq::zero());
        assert_eq!(w.index, 1);
        assert_eq!(w.step, Rational::one());
        assert_eq!(w.point, FiniteSeq::basis(1).unwrap());
        assert_eq!(w.margin, Rational::new(1, 2));
    }

    #[test]
    fn refutation_against_shifted_candidate() {
        let z = seq(&[(5, 3)]);
        let w = refute_subgradient(&q(), &FiniteSeq::zero(), &z);
        assert_eq!(w.index, 6);
        assert_eq!(w.step, Rational::new(1, 36));
        assert_eq!(w.margin, Rational::new(1, 72));
        // Refuting inside the support also works where the slope gap is nonzero.
        let at5 = refute_subgradient_at(&q(), &FiniteSeq::zero(), &z, 5).unwrap();
        assert_eq!(at5.step, Rational::new(4, 25));
        assert_eq!(at5.margin, Rational::new(8, 25));
    }

    #[test]
    fn refutation_is_total_off_support() {
        let mut sampler = SeqSampler::new(11);
        for _ in 0..50 {
            let x = sampler.seq(20, 0, 4);
            let z = sampler.seq(20, 0, 4);
            let w = refute_subgradient(&q(), &x, &z);
            assert!(w.margin.is_positive());
            let n = w.index;
            assert_eq!(w.margin, Rational::new(1, 2 * (n * n) as i64));
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(eval_f_conj(&q(), &FiniteSeq::zero()), Rational::zero());
        assert_eq!(eval_f_conj(&q(), &seq(&[(1, -1)])), Rational::new(-1, 2));
        assert_eq!(eval_f_conj(&q(), &seq(&[(2, 1)])), Rational::new(3, 8));
    }

    #[test]
    fn fenchel_young_gap_examples() {
        assert_eq!(
            fenchel_young_gap(&q(), &FiniteSeq::zero(), &FiniteSeq::zero()),
            half_zeta2_plus(Rational::zero())
        );
        assert_eq!(
            fenchel_young_gap(&q(), &FiniteSeq::zero(), &seq(&[(1, -1), (2, -1)])),
            half_zeta2_plus(Rational::new(-5, 8))
        );
    }

    #[test]
    fn fenchel_young_gap_is_positive_on_seeded_pairs() {
        let mut sampler = SeqSampler::new(3);
        let budget = RefinementBudget::default();
        for _ in 0..25 {
            let x = sampler.seq(16, 0, 4);
            let y = sampler.seq(16, 0, 4);
            let gap = fenchel_young_gap(&q(), &x, &y);
            assert_eq!(
                exact_compare(&gap, &ExactValue::zero(), &budget).unwrap(),
                Ordering::Greater
            );
        }
    }

    #[test]
    fn conjugate_improvement_examples() {
        let (z1, d1) = improve_conj_point(&q(), &FiniteSeq::zero());
        assert_eq!(z1, seq(&[(1, -1)]));
        assert_eq!(d1, Rational::new(1, 2));
        assert_eq!(eval_f_conj(&q(), &z1), Rational::new(-1, 2));
        let (z2, d2) = improve_conj_point(&q(), &z1);
        assert_eq!(z2, seq(&[(1, -1), (2, -1)]));
        assert_eq!(d2, Rational::new(1, 8));
    }

    #[test]
    fn linear_shift_certificate() {
        let cert = subdiff_invariance_under_linear_shift(
            &q(),
            &FiniteSeq::basis(1).unwrap(),
            &FiniteSeq::zero(),
            &FiniteSeq::zero(),
        )
        .unwrap();
        assert!(cert.pass);
        // Shifted candidate is -e_1, refuted just past its support with the
        // canonical off-support margin 1/(2*2^2).
        assert_eq!(cert.margin, Some(Rational::new(1, 8)));

        let cert = subdiff_invariance_under_linear_shift(
            &q(),
            &seq(&[(2, 5)]),
            &FiniteSeq::zero(),
            &FiniteSeq::zero(),
        )
        .unwrap();
        assert!(cert.pass);
        let diff = cert
            .witness
            .iter()
            .find(|(k, _)| k == "difference_at_e_k")
            .unwrap();
        assert_eq!(diff.1, "5/1");

        assert!(matches!(
            subdiff_invariance_under_linear_shift(
                &q(),
                &FiniteSeq::zero(),
                &FiniteSeq::zero(),
                &FiniteSeq::zero()
            ),
            Err(FuncError::ZeroShift)
        ));
    }

    #[test]
    fn monotone_extension_certificates() {
        let c = witness_not_maximal_monotone(&q(), &FiniteSeq::zero(), &FiniteSeq::zero(), 5, 10);
        assert!(c.pass);
        let c = witness_not_maximal_monotone(
            &q(),
            &FiniteSeq::basis(1).unwrap(),
            &FiniteSeq::basis(2).unwrap(),
            5,
            10,
        );
        assert!(c.pass);
    }

    #[test]
    fn convexity_slack_nonnegative() {
        let mut sampler = SeqSampler::new(9);
        for _ in 0..25 {
            let x = sampler.seq(12, 0, 4);
            let y = sampler.seq(12, 0, 4);
            let lambda = sampler.unit_rational();
            assert!(!convexity_slack(&q(), &x, &y, &lambda).is_negative());
        }
    }

    #[test]
    fn difference_quotients_decrease_to_derivative() {
        let x = rseq(&[(2, (1, 3))]);
        let n = 2u64;
        let e_n = FiniteSeq::basis(n).unwrap();
        let limit = directional_derivative(&q(), &x, &e_n);
        // slope at n=2: 4*(1/3 - 1/4) = 1/3
        assert_eq!(limit, Rational::new(1, 3));
        let mut prev: Option<Rational> = None;
        for k in 0..=10u32 {
            let t = Rational::new(1, int_pow(2, k));
            let quotient = difference_quotient(&q(), &x, &e_n, &t);
            // q(t) = slope + w_n t / 2 exactly
            assert_eq!(
                quotient,
                &limit + &(q().weight(n) * &t * Rational::new(1, 2))
            );
            assert!(quotient > limit);
            if let Some(p) = prev {
                assert!(quotient < p);
            }
            prev = Some(quotient);
        }
    }

    #[test]
    fn descriptor_tags_and_values() {
        let f = ConvexFnDesc::separable_quadratic(q());
        assert_eq!(f.domain(), DomainTag::AllOfCc);
        assert_eq!(f.continuity(), ContinuityTag::Nowhere);

        let g = ConvexFnDesc::indicator_origin();
        assert_eq!(g.domain(), DomainTag::OriginOnly);
        assert_eq!(g.evaluate(&FiniteSeq::zero()), Some(ExactValue::zero()));
        assert_eq!(g.evaluate(&FiniteSeq::basis(1).unwrap()), None);
        // (indicator)* = zero, (zero)* = indicator.
        assert_eq!(
            g.conjugate_at(&FiniteSeq::basis(3).unwrap()),
            Some(ExactValue::zero())
        );
        let z = ConvexFnDesc::zero();
        assert_eq!(z.conjugate_at(&FiniteSeq::zero()), Some(ExactValue::zero()));
        assert_eq!(z.conjugate_at(&FiniteSeq::basis(1).unwrap()), None);

        let l = ConvexFnDesc::linear(seq(&[(2, 5)]));
        assert_eq!(l.continuity(), ContinuityTag::Everywhere);
        assert_eq!(
            l.evaluate(&FiniteSeq::basis(2).unwrap()),
            Some(ExactValue::from_rational(Rational::from_int(5)))
        );
        assert_eq!(l.conjugate_at(&seq(&[(2, 5)])), Some(ExactValue::zero()));
        assert_eq!(l.conjugate_at(&FiniteSeq::zero()), None);
    }
}
