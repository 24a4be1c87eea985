//! Fenchel primal/dual harness over the function catalog.
//!
//! The pair of interest composes the separable quadratic with the
//! backward-difference operator:
//!
//! ```text
//! minimize  f(A x)          over x in c_c
//! maximize  -f*(y) - g*(-A* y)   over square-summable y,
//! ```
//!
//! with `g = 0`. The primal minimum is attained at the origin with value
//! `(1/2) zeta(2)`, while injectivity of `A*` pins the dual feasible set to
//! `{0}` with objective `0`: a positive duality gap, certified here by a
//! rational enclosure. Truncated exact solvers expose the mechanism: the
//! finite-dimensional duals are constant vectors whose values
//! `(1/2) H_{N+1}^(2)` climb toward the gap while their norms diverge.
//!
//! Everything is exact: linear systems go through fraction-free (Bareiss)
//! elimination on integer rows with partial pivoting by magnitude, and no
//! certificate ever contains a float.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::certificate::{BudgetParams, Certificate};
use crate::exact_number::{
    to_decimal, zeta_partial_sum_bracket, Enclosure, ExactValue, NumericError,
};
use crate::func::{self, ContinuityTag, ConvexFnDesc, DomainTag, SeparableQuadratic};
use crate::operator::{adjoint_injectivity_check, apply_a, apply_a_adjoint, DifferenceOperator};
use crate::par;
use crate::rational::Rational;
use crate::seq::FiniteSeq;
use crate::seqgen::SeqSampler;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("normal equations reported singular; the system is positive definite, so this is an internal invariant violation")]
    SingularSystem,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A primal/dual problem pair `min f(Ax) + g(x)` / `max -f*(y) - g*(-A*y)`,
/// with `A` the difference operator or the identity when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FenchelPair {
    pub f_desc: ConvexFnDesc,
    pub g_desc: ConvexFnDesc,
    pub operator: Option<DifferenceOperator>,
}

impl FenchelPair {
    pub fn new(
        f_desc: ConvexFnDesc,
        g_desc: ConvexFnDesc,
        operator: Option<DifferenceOperator>,
    ) -> Self {
        FenchelPair {
            f_desc,
            g_desc,
            operator,
        }
    }

    fn apply_op(&self, x: &FiniteSeq) -> FiniteSeq {
        match self.operator {
            Some(_) => apply_a(x),
            None => x.clone(),
        }
    }

    fn apply_op_adjoint(&self, y: &FiniteSeq) -> FiniteSeq {
        match self.operator {
            Some(_) => apply_a_adjoint(y),
            None => y.clone(),
        }
    }

    /// Primal objective `f(Ax) + g(x)`; `None` encodes `+infinity`.
    pub fn primal_value(&self, x: &FiniteSeq) -> Option<ExactValue> {
        let fx = self.f_desc.evaluate(&self.apply_op(x))?;
        let gx = self.g_desc.evaluate(x)?;
        Some(fx.add(&gx))
    }

    /// Dual objective `-f*(y) - g*(-A*y)` for finitely supported `y`;
    /// `None` encodes `-infinity` (an infeasible dual point).
    pub fn dual_value(&self, y: &FiniteSeq) -> Option<ExactValue> {
        let fstar = self.f_desc.conjugate_at(y)?;
        let gstar = self.g_desc.conjugate_at(&self.apply_op_adjoint(y).neg())?;
        Some(fstar.add(&gstar).scale(&Rational::from_int(-1)))
    }
}

/// Gap certification output: exact primal and dual values, a certified
/// enclosure of their difference, and the truncated-dual table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub primal_value: ExactValue,
    pub dual_value: ExactValue,
    pub gap_enclosure: Enclosure,
    pub truncation_table: Vec<(u64, Rational)>,
}

/// Directional derivative of `f . A` at `x` in direction `y`:
/// `f'(Ax; Ay)`, exact. Identically zero at the origin by telescoping.
pub fn dd_f_compose_a(q: &SeparableQuadratic, x: &FiniteSeq, y: &FiniteSeq) -> Rational {
    func::directional_derivative(q, &apply_a(x), &apply_a(y))
}

/// Certifies that the origin minimizes the composed primal: a seeded
/// direction sweep with `f'(A0; Ay) = 0`, a convexity probe of `f . A`, and
/// the exact primal value with its certified decimal.
pub fn certify_primal_min_at_zero(
    q: &SeparableQuadratic,
    seed: u64,
    budget: &BudgetParams,
) -> Result<Certificate, DualityError> {
    let mut sampler = SeqSampler::new(seed);
    let zero = FiniteSeq::zero();
    let mut all_zero = true;
    for _ in 0..100 {
        let y = sampler.seq(32, 0, 6);
        all_zero &= dd_f_compose_a(q, &zero, &y).is_zero();
    }
    let mut convex_ok = true;
    for _ in 0..50 {
        let x = apply_a(&sampler.seq(16, 0, 4));
        let y = apply_a(&sampler.seq(16, 0, 4));
        let lambda = sampler.unit_rational();
        convex_ok &= !func::convexity_slack(q, &x, &y, &lambda).is_negative();
    }
    let primal = func::eval_f(q, &apply_a(&zero));
    let (decimal, enclosure) = to_decimal(&primal, budget.digits, &budget.refinement())?;
    Ok(Certificate::new("primal-minimum-at-origin")
        .item("seed", seed)
        .item("primal_value", &primal)
        .item("primal_decimal", &decimal)
        .enclosure(enclosure)
        .check(
            all_zero,
            "directional derivative vanishes on 100 seeded directions",
        )
        .check(convex_ok, "convexity slack nonnegative on 50 seeded pairs"))
}

/// Exact solution of `grad (1/2)|D^(1/2)(B x - t)|^2 = 0` over supports in
/// `[1, N]`, where `B` is the (possibly identity) operator column matrix.
fn solve_normal_equations(
    q: &SeparableQuadratic,
    with_operator: bool,
    n: u64,
) -> Result<(FiniteSeq, ExactValue), DualityError> {
    assert!(n >= 1);
    let n_usize = n as usize;
    let rows = if with_operator { n_usize + 1 } else { n_usize };

    // Columns of B: images of basis vectors, dense over row indices 1..=rows.
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n_usize);
    for j in 1..=n {
        let e_j = FiniteSeq::basis(j).expect("j >= 1");
        let image = if with_operator { apply_a(&e_j) } else { e_j };
        let mut dense = vec![Rational::zero(); rows];
        for (idx, v) in image.iter() {
            dense[(idx - 1) as usize] = v.clone();
        }
        columns.push(dense);
    }
    let weights: Vec<Rational> = (1..=rows as u64).map(|r| q.weight(r)).collect();
    let targets: Vec<Rational> = (1..=rows as u64).map(|r| q.target(r)).collect();

    // Normal equations: (B^T D B) x = B^T D t.
    let mut matrix = vec![vec![Rational::zero(); n_usize]; n_usize];
    let mut rhs = vec![Rational::zero(); n_usize];
    for i in 0..n_usize {
        for j in i..n_usize {
            let mut acc = Rational::zero();
            for r in 0..rows {
                acc = acc + &weights[r] * &columns[i][r] * &columns[j][r];
            }
            matrix[i][j] = acc.clone();
            matrix[j][i] = acc;
        }
        let mut acc = Rational::zero();
        for r in 0..rows {
            acc = acc + &weights[r] * &targets[r] * &columns[i][r];
        }
        rhs[i] = acc;
    }

    let solution = fraction_free_solve(&matrix, &rhs)?;

    // The residual of the returned minimizer is exactly zero.
    for i in 0..n_usize {
        let mut acc = Rational::zero();
        for j in 0..n_usize {
            acc = acc + &matrix[i][j] * &solution[j];
        }
        assert_eq!(acc, rhs[i], "normal-equations residual must vanish");
    }

    let x = FiniteSeq::from_pairs(
        solution
            .into_iter()
            .enumerate()
            .map(|(j, v)| (j as u64 + 1, v)),
    )
    .expect("indices >= 1");
    let value = func::eval_f(
        q,
        &if with_operator {
            apply_a(&x)
        } else {
            x.clone()
        },
    );
    Ok((x, value))
}

/// Truncated primal for the composed pair: minimizes `f(Ax)` over supports in
/// `[1, N]` by exact normal equations. Every truncation returns the global
/// minimizer `x = 0` with value `(1/2) zeta(2)`.
pub fn solve_truncated_primal(
    q: &SeparableQuadratic,
    n: u64,
) -> Result<(FiniteSeq, ExactValue), DualityError> {
    solve_normal_equations(q, true, n)
}

/// Identity-operator variant: minimizes `f` itself over supports in `[1, N]`,
/// returning the coefficientwise minimizer `x_n = t_n` with value
/// `(1/2)(zeta(sigma) - H_N^(sigma))`.
pub fn solve_truncated_primal_identity(
    q: &SeparableQuadratic,
    n: u64,
) -> Result<(FiniteSeq, ExactValue), DualityError> {
    solve_normal_equations(q, false, n)
}

/// Fraction-free (Bareiss) elimination with partial pivoting by magnitude.
///
/// Rows are cleared to integers first; intermediate entries stay integral by
/// the exact-division property, which controls coefficient growth.
fn fraction_free_solve(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
) -> Result<Vec<Rational>, DualityError> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (row, b) in matrix.iter().zip(rhs) {
        let mut lcm = BigInt::one();
        for v in row.iter().chain(std::iter::once(b)) {
            lcm = lcm.lcm(v.denom());
        }
        let scale = Rational::from_int(lcm);
        let mut int_row: Vec<BigInt> = Vec::with_capacity(n + 1);
        for v in row.iter().chain(std::iter::once(b)) {
            let scaled = v * &scale;
            debug_assert!(scaled.denom().is_one());
            int_row.push(scaled.numer().clone());
        }
        a.push(int_row);
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .max_by_key(|&r| a[r][k].abs())
            .ok_or(DualityError::SingularSystem)?;
        a.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = quot;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut solution = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        if a[i][i].is_zero() {
            return Err(DualityError::SingularSystem);
        }
        let mut acc = Rational::from_int(a[i][n].clone());
        for j in i + 1..n {
            acc = acc - Rational::from_int(a[i][j].clone()) * &solution[j];
        }
        solution[i] = acc / Rational::from_int(a[i][i].clone());
    }
    Ok(solution)
}

/// Truncated dual: over supports in `[1, N+1]` with the first `N` adjoint
/// constraints imposed, back-substitution forces a constant vector, and the
/// one-dimensional concave maximization lands at `c = -S1/S2` (`-1` for the
/// canonical instance) with value `(1/2) H_{N+1}^(2)`.
///
/// The optimizer's squared norm is `N + 1`: the truncated duals diverge in
/// `l2`, which is how the finite-dimensional strong duality masks the gap.
pub fn solve_truncated_dual(q: &SeparableQuadratic, n: u64) -> (FiniteSeq, Rational) {
    assert!(n >= 1);
    // Back-substitute A* y = 0 on coordinates 1..N: y_k = y_{k+1}, so y is a
    // constant vector c * (e_1 + ... + e_{N+1}).
    let ones =
        FiniteSeq::from_pairs((1..=n + 1).map(|k| (k, Rational::one()))).expect("indices >= 1");
    let constrained = apply_a_adjoint(&ones);
    for k in 1..=n {
        debug_assert!(constrained.get(k).is_zero(), "kernel derivation failed");
    }

    // Maximize -f*(c * ones) = -(S2/2) c^2 - S1 c.
    let mut s1 = Rational::zero();
    let mut s2 = Rational::zero();
    for k in 1..=n + 1 {
        s1 = s1 + q.target(k);
        s2 = s2 + q.weight(k).recip();
    }
    let c = -(&s1 / &s2);
    let y = ones.scale(&c);
    let value = -func::eval_f_conj(q, &y);

    // Vertex certificate: the concave objective drops at c -1 and c + 1.
    for probe in [&c + &Rational::one(), &c - &Rational::one()] {
        let probe_value = -func::eval_f_conj(q, &ones.scale(&probe));
        debug_assert!(probe_value < value);
    }
    (y, value)
}

/// Rows `(N, truncated dual value)` for `N = 1..=max_n`, computed in parallel
/// when enabled; assembly order is fixed by `N`.
pub fn gap_truncation_table(q: &SeparableQuadratic, max_n: u64) -> Vec<(u64, Rational)> {
    let ns: Vec<u64> = (1..=max_n).collect();
    par::map(&ns, |&n| (n, solve_truncated_dual(q, n).1))
}

/// Sequential variant of [`gap_truncation_table`], kept for benchmarking;
/// results are identical.
pub fn gap_truncation_table_seq(q: &SeparableQuadratic, max_n: u64) -> Vec<(u64, Rational)> {
    let ns: Vec<u64> = (1..=max_n).collect();
    par::map_seq(&ns, |&n| (n, solve_truncated_dual(q, n).1))
}

/// Certifies the positive duality gap for the composed pair.
///
/// The primal value is `(1/2) zeta(2)` (exact); the dual feasible set is
/// `{0}` because `A*` is injective on finite supports (checked on a seeded
/// sweep), so the dual value is `-f*(0) = 0` exactly. The gap enclosure is a
/// certified rational bracket of `(1/2) zeta(2)` at the budgeted partial-sum
/// length, and the truncation table shows the truncated duals increasing
/// toward it.
pub fn certify_duality_gap(
    q: &SeparableQuadratic,
    seed: u64,
    budget: &BudgetParams,
) -> Result<GapReport, DualityError> {
    let mut sampler = SeqSampler::new(seed);
    for _ in 0..50 {
        let y = sampler.nonzero_seq(32, 6);
        let cert = adjoint_injectivity_check(&y);
        assert!(
            cert.pass,
            "adjoint injectivity must hold on finite supports"
        );
    }

    let primal_value = func::eval_f(q, &FiniteSeq::zero());
    let dual_value = ExactValue::from_rational(-func::eval_f_conj(q, &FiniteSeq::zero()));
    assert!(dual_value.as_rational().is_some_and(Rational::is_zero));

    let gap = primal_value.sub(&dual_value);
    let gap_enclosure = gap.enclose(budget.zeta_n, budget.precision_bits)?;
    let truncation_table = gap_truncation_table(q, budget.truncation_max);

    // Weak duality at every truncation, exact rational comparison against a
    // gap lower bound refined past the table (a partial sum never reaches
    // the zeta bracket's lower endpoint once the bracket outruns it).
    let weak_duality_bound = gap
        .enclose(
            budget.zeta_n.max(budget.truncation_max + 2),
            budget.precision_bits,
        )?
        .lo()
        .clone();
    for (_, value) in &truncation_table {
        assert!(value < &weak_duality_bound, "weak duality violated");
    }

    Ok(GapReport {
        primal_value,
        dual_value,
        gap_enclosure,
        truncation_table,
    })
}

/// Certifies the sum-rule failure at the origin for `f + indicator({0})`:
/// every `z` belongs to the subdifferential of the sum (the inequality only
/// binds at the origin), while no `z` is a subgradient of `f` alone.
pub fn certify_sum_rule_failure(q: &SeparableQuadratic, z: &FiniteSeq) -> Certificate {
    let origin = FiniteSeq::zero();
    let g = ConvexFnDesc::indicator_origin();

    // Membership: for y != 0 the sum is +infinity; at y = 0 the inequality
    // reads f(0) >= f(0). Spot-check the off-origin blowup on basis vectors.
    let membership_structural = g.evaluate(&origin).is_some()
        && [1u64, 2, 7]
            .into_iter()
            .all(|k| g.evaluate(&FiniteSeq::basis(k).expect("k >= 1")).is_none());

    let witness = func::refute_subgradient(q, &origin, z);
    Certificate::new("sum-rule-failure")
        .item("z", z)
        .item("membership", "z in subdifferential of (f + indicator) at 0")
        .item("refutation_index", witness.index)
        .item("refutation_point", &witness.point)
        .item("refutation_step", &witness.step)
        .margin(witness.margin.clone())
        .check(membership_structural, "sum is +infinity off the origin")
        .check(
            witness.margin.is_positive(),
            "z refuted for f alone with positive margin",
        )
}

/// Certifies the chain-rule failure at the origin: `0` is a subgradient of
/// `f . A` (zero directional derivative in every direction plus convexity),
/// any nonzero `z` is refuted with margin `<z, z>`, and the right-hand side
/// `A* (subdifferential of f at 0)` is empty by refutation totality.
pub fn certify_chain_rule_failure(q: &SeparableQuadratic, z: &FiniteSeq, seed: u64) -> Certificate {
    let origin = FiniteSeq::zero();
    let mut sampler = SeqSampler::new(seed);

    let mut sweep_zero = true;
    for _ in 0..50 {
        let y = sampler.seq(32, 0, 6);
        sweep_zero &= dd_f_compose_a(q, &origin, &y).is_zero();
    }
    let mut convex_ok = true;
    for _ in 0..25 {
        let x = apply_a(&sampler.seq(16, 0, 4));
        let y = apply_a(&sampler.seq(16, 0, 4));
        let lambda = sampler.unit_rational();
        convex_ok &= !func::convexity_slack(q, &x, &y, &lambda).is_negative();
    }

    let mut cert = Certificate::new("chain-rule-failure")
        .item("z", z)
        .check(
            sweep_zero,
            "0 in subdifferential of f . A at 0: derivative sweep vanishes",
        )
        .check(convex_ok, "f . A convexity probe");

    if !z.is_zero() {
        // If z were a subgradient, <z, y> <= (f.A)'(0; y) for all y; y = z
        // fails by exactly |z|^2.
        let derivative_along_z = dd_f_compose_a(q, &origin, z);
        let margin = z.norm_sq() - &derivative_along_z;
        cert = cert
            .item("refutation_direction", z)
            .item("derivative_along_z", &derivative_along_z)
            .margin(margin.clone())
            .check(derivative_along_z.is_zero(), "(f . A)'(0; z) = 0")
            .check(
                margin.is_positive(),
                "z refuted for f . A with margin |z|^2",
            );
    } else {
        cert = cert.item(
            "refutation_direction",
            "none (z = 0 is the unique subgradient)",
        );
    }

    // Right-hand side of the chain rule is empty: subgradients of f at A0 = 0
    // are refuted, here against z itself and the zero candidate.
    let w1 = func::refute_subgradient(q, &origin, z);
    let w2 = func::refute_subgradient(q, &origin, &FiniteSeq::zero());
    cert.item("rhs_refutation_margin_z", &w1.margin)
        .item("rhs_refutation_margin_zero", &w2.margin)
        .check(
            w1.margin.is_positive() && w2.margin.is_positive(),
            "subdifferential of f at A0 refuted",
        )
}

/// Certified enclosure of `inf f* = -(1/2) zeta(sigma)` for the pair
/// `(f, indicator({0}))`, where the infimal convolution `f* (+) g*` is the
/// constant `inf f*` but the infimum is never attained.
///
/// The upper endpoint comes from the prefix minimizer `z_N` (all entries
/// `-w_n t_n`), whose conjugate value is `-(1/2) H_N^(sigma)`, bracketed
/// dyadically; the lower endpoint is `-(1/2)` times the `zeta(sigma)` upper
/// bound. The `y` argument is carried for the convolution signature; the
/// value does not depend on it because `g*` is identically zero.
pub fn infimal_convolution_enclosure(
    q: &SeparableQuadratic,
    _y: &FiniteSeq,
    n: u64,
    budget: &BudgetParams,
) -> Result<Enclosure, DualityError> {
    let sigma = q.tail_exponent();
    let half = Rational::new(1, 2);
    let (h_lo, _h_hi) = zeta_partial_sum_bracket(sigma, n, budget.precision_bits)?;
    let zeta = crate::exact_number::zeta_enclosure_with_bits(sigma, n, budget.precision_bits)?;
    let lo = -(&half * zeta.hi());
    let hi = -(&half * &h_lo);
    Ok(Enclosure::new(lo, hi))
}

/// Truncated two-route oracle for the conjugate-of-sum identity
/// `(f + indicator({0}))* = f* (+) g*`.
///
/// Both routes are brute-forced at truncation `N`: the sup side can only use
/// the origin (every other point of the indicator's domain is infeasible), so
/// it equals `-f_N(0)` by direct evaluation; the convolution side minimizes
/// the truncated conjugate coefficientwise, certifying each parabola vertex
/// by probing both neighbors. The certificate records that the two sides
/// agree exactly and that the common limit is strictly negative.
pub fn conjugate_sum_identity_check(
    q: &SeparableQuadratic,
    n: u64,
    budget: &BudgetParams,
) -> Result<Certificate, DualityError> {
    let half = Rational::new(1, 2);

    // Sup side: sup_{x in dom g} <y, x> - f_N(x) at y = 0 is -f_N(0).
    let mut f_n_at_zero = Rational::zero();
    for k in 1..=n {
        f_n_at_zero = f_n_at_zero + &half * q.weight(k) * q.target(k).square();
    }
    let sup_side = -f_n_at_zero;

    // Convolution side: inf_z sum_{k<=n} [ z_k^2/(2 w_k) + t_k z_k ],
    // coefficientwise vertex with neighbor certificates.
    let mut conv_side = Rational::zero();
    for k in 1..=n {
        let w = q.weight(k);
        let t = q.target(k);
        let vertex = -(&w * &t);
        let value_at = |c: &Rational| c.square() / (Rational::from_int(2) * &w) + &t * c;
        let v = value_at(&vertex);
        let left = value_at(&(&vertex - &Rational::one()));
        let right = value_at(&(&vertex + &Rational::one()));
        assert!(v < left && v < right, "vertex must minimize the parabola");
        conv_side = conv_side + v;
    }

    let sides_equal = sup_side == conv_side;
    let limit = ExactValue::zeta_multiple(q.tail_exponent(), -half)
        .expect("sigma >= 2 by the family invariant");
    let limit_enclosure = limit.enclose(budget.zeta_n, budget.precision_bits)?;
    let negative = limit_enclosure.hi().is_negative();

    Ok(Certificate::new("conjugate-of-sum-identity")
        .item("truncation", n)
        .item("sup_side", &sup_side)
        .item("inf_convolution_side", &conv_side)
        .item("limit", &limit)
        .item(
            "limit_sign",
            if negative { "negative" } else { "unresolved" },
        )
        .enclosure(limit_enclosure)
        .check(sides_equal, "both routes agree exactly at the truncation")
        .check(negative, "common value is strictly negative"))
}

/// Metadata-level evaluation of the two classical qualification conditions
/// over the closed catalog.
///
/// The pointwise condition asks for a point of `dom g` where `f` is
/// continuous at its image; the algebraic condition asks for
/// `0 in core(A dom g - dom f)`. For the catalog pairs built on the
/// separable quadratic the first fails (the function is continuous nowhere)
/// while the second holds (its domain is all of `c_c`), isolating
/// completeness as the missing hypothesis.
pub fn check_constraint_qualifications(pair: &FenchelPair) -> Certificate {
    let pointwise = match pair.f_desc.continuity() {
        // A point of continuity composes with any nonempty domain.
        ContinuityTag::Everywhere => true,
        ContinuityTag::Nowhere => false,
    };

    let algebraic = match (pair.f_desc.domain(), pair.g_desc.domain(), pair.operator) {
        // dom f = c_c makes A dom g - dom f all of c_c.
        (DomainTag::AllOfCc, _, _) => true,
        // Identity image of a full domain is full.
        (DomainTag::OriginOnly, DomainTag::AllOfCc, None) => true,
        // The difference operator's range is a proper subspace: empty core.
        (DomainTag::OriginOnly, DomainTag::AllOfCc, Some(_)) => false,
        (DomainTag::OriginOnly, DomainTag::OriginOnly, _) => false,
    };

    Certificate::new("constraint-qualifications")
        .item(
            "pair",
            format!("{:?} / {:?}", pair.f_desc.kind, pair.g_desc.kind),
        )
        .item(
            "operator",
            if pair.operator.is_some() {
                "difference"
            } else {
                "identity"
            },
        )
        .item(
            "pointwise_condition",
            if pointwise { "holds" } else { "fails" },
        )
        .item(
            "algebraic_condition",
            if algebraic { "holds" } else { "fails" },
        )
        .item("space_complete", "false")
        .check(true, "catalog evaluation total")
}

/// Outcome pair for qualification checks, convenient for assertions.
pub fn qualification_outcomes(pair: &FenchelPair) -> (bool, bool) {
    let cert = check_constraint_qualifications(pair);
    let find = |key: &str| {
        cert.witness
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v == "holds")
            .unwrap_or(false)
    };
    (find("pointwise_condition"), find("algebraic_condition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_number::harmonic_sum;

    fn q() -> SeparableQuadratic {
        SeparableQuadratic::canonical()
    }

    fn seq(pairs: &[(u64, i64)]) -> FiniteSeq {
        FiniteSeq::from_pairs(pairs.iter().map(|(n, v)| (*n, Rational::from_int(*v)))).unwrap()
    }

    fn half_zeta2() -> ExactValue {
        ExactValue::zeta_multiple(2, Rational::new(1, 2)).unwrap()
    }

    #[test]
    fn composed_derivative_vanishes_at_origin() {
        let zero = FiniteSeq::zero();
        assert_eq!(
            dd_f_compose_a(&q(), &zero, &FiniteSeq::basis(1).unwrap()),
            Rational::zero()
        );
        let y = FiniteSeq::from_pairs([(1, Rational::from_int(2)), (7, Rational::from_int(-3))])
            .unwrap();
        assert_eq!(dd_f_compose_a(&q(), &zero, &y), Rational::zero());
    }

    #[test]
    fn composed_derivative_away_from_origin() {
        let e1 = FiniteSeq::basis(1).unwrap();
        assert_eq!(dd_f_compose_a(&q(), &e1, &e1), Rational::from_int(5));
    }

    #[test]
    fn truncated_primal_returns_origin() {
        for n in [1u64, 5] {
            let (x, value) = solve_truncated_primal(&q(), n).unwrap();
            assert!(x.is_zero(), "N = {n}");
            assert_eq!(value, half_zeta2());
        }
    }

    #[test]
    fn truncated_primal_identity_hits_targets() {
        let (x, value) = solve_truncated_primal_identity(&q(), 4).unwrap();
        let expected =
            FiniteSeq::from_pairs((1..=4u64).map(|k| (k, Rational::new(1, (k * k) as i64))))
                .unwrap();
        assert_eq!(x, expected);
        let expected_value =
            half_zeta2().add_rational(&-(Rational::new(1, 2) * harmonic_sum(2, 4)));
        assert_eq!(value, expected_value);
    }

    #[test]
    fn fraction_free_solver_on_dense_system() {
        // 3x3 with known solution (2, 3, -1); middle row scaled by 1/2 to
        // exercise the denominator clearing.
        let m = vec![
            vec![
                Rational::from_int(2),
                Rational::from_int(1),
                Rational::from_int(-1),
            ],
            vec![
                Rational::new(-3, 2),
                Rational::new(-1, 2),
                Rational::from_int(1),
            ],
            vec![
                Rational::from_int(-2),
                Rational::from_int(1),
                Rational::from_int(2),
            ],
        ];
        let rhs = vec![
            Rational::from_int(8),
            Rational::new(-11, 2),
            Rational::from_int(-3),
        ];
        let x = fraction_free_solve(&m, &rhs).unwrap();
        assert_eq!(
            x,
            vec![
                Rational::from_int(2),
                Rational::from_int(3),
                Rational::from_int(-1)
            ]
        );
    }

    #[test]
    fn fraction_free_solver_detects_singularity() {
        let m = vec![
            vec![Rational::from_int(1), Rational::from_int(2)],
            vec![Rational::from_int(2), Rational::from_int(4)],
        ];
        let rhs = vec![Rational::from_int(1), Rational::from_int(2)];
        assert!(matches!(
            fraction_free_solve(&m, &rhs),
            Err(DualityError::SingularSystem)
        ));
    }

    #[test]
    fn truncated_dual_values() {
        let (y1, v1) = solve_truncated_dual(&q(), 1);
        assert_eq!(v1, Rational::new(5, 8));
        assert_eq!(y1, seq(&[(1, -1), (2, -1)]));
        let (_, v2) = solve_truncated_dual(&q(), 2);
        assert_eq!(v2, Rational::new(49, 72));
        for n in [1u64, 3, 10] {
            let (y, value) = solve_truncated_dual(&q(), n);
            assert_eq!(value, Rational::new(1, 2) * harmonic_sum(2, n + 1));
            assert_eq!(y.norm_sq(), Rational::from_int((n + 1) as i64));
        }
    }

    #[test]
    fn truncation_table_matches_parallel_and_sequential() {
        let a = gap_truncation_table(&q(), 12);
        let b = gap_truncation_table_seq(&q(), 12);
        assert_eq!(a, b);
        // Strictly increasing with steps (1/2)(N+2)^-2.
        for w in a.windows(2) {
            let (n, prev) = &w[0];
            let (_, next) = &w[1];
            let step = next - prev;
            let m = (n + 2) as i64;
            assert_eq!(step, Rational::new(1, 2 * m * m));
        }
    }

    #[test]
    fn gap_report_certifies_positive_gap() {
        let report = certify_duality_gap(&q(), 42, &BudgetParams::default()).unwrap();
        assert_eq!(report.primal_value, half_zeta2());
        assert_eq!(report.dual_value, ExactValue::zero());
        let e = &report.gap_enclosure;
        assert!(e.lo() >= &Rational::new(8224, 10_000));
        assert!(e.hi() <= &Rational::new(8225, 10_000));
        assert_eq!(report.truncation_table.len(), 64);
        let values: Vec<&Rational> = report.truncation_table.iter().map(|(_, v)| v).collect();
        for w in values.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(values.last().unwrap() < &e.hi());
    }

    #[test]
    fn gap_report_wire_format() {
        let budget = BudgetParams {
            truncation_max: 2,
            ..BudgetParams::default()
        };
        let report = certify_duality_gap(&q(), 1, &budget).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["dual_value"]["rat"], "0/1");
        assert_eq!(json["truncation_table"][0][1], "5/8");
        assert!(json["gap_enclosure"].as_array().unwrap().len() == 2);
    }

    #[test]
    fn sum_rule_failure_examples() {
        let c = certify_sum_rule_failure(&q(), &FiniteSeq::zero());
        assert!(c.pass);
        assert_eq!(c.margin, Some(Rational::new(1, 2)));
        let c = certify_sum_rule_failure(&q(), &seq(&[(3, 7)]));
        assert!(c.pass);
        assert_eq!(c.margin, Some(Rational::new(1, 32)));
    }

    #[test]
    fn chain_rule_failure_examples() {
        let c = certify_chain_rule_failure(&q(), &FiniteSeq::zero(), 7);
        assert!(c.pass);
        let c = certify_chain_rule_failure(&q(), &FiniteSeq::basis(2).unwrap(), 7);
        assert!(c.pass);
        assert_eq!(c.margin, Some(Rational::one()));
        let z =
            FiniteSeq::from_pairs([(1, Rational::new(1, 2)), (2, Rational::new(-1, 3))]).unwrap();
        let c = certify_chain_rule_failure(&q(), &z, 7);
        assert_eq!(c.margin, Some(Rational::new(13, 36)));
    }

    #[test]
    fn infimal_convolution_brackets_the_infimum() {
        let budget = BudgetParams::default();
        let e1 = infimal_convolution_enclosure(&q(), &FiniteSeq::zero(), 1, &budget).unwrap();
        assert_eq!(e1.hi(), &Rational::new(-1, 2));
        let e2 = infimal_convolution_enclosure(&q(), &FiniteSeq::zero(), 2, &budget).unwrap();
        assert_eq!(e2.hi(), &Rational::new(-5, 8));
        // The infimum -zeta(2)/2 lies inside.
        let inf = ExactValue::zeta_multiple(2, Rational::new(-1, 2)).unwrap();
        let tight = inf.enclose(10_000, 128).unwrap();
        assert!(e2.intersects(&tight));
        assert!(e2.lo() <= tight.lo() && tight.hi() <= e2.hi());
    }

    #[test]
    fn conjugate_sum_oracle_fixes_negative_sign() {
        let budget = BudgetParams::default();
        for n in [1u64, 5, 20] {
            let cert = conjugate_sum_identity_check(&q(), n, &budget).unwrap();
            assert!(cert.pass, "N = {n}");
            let sup = cert.witness.iter().find(|(k, _)| k == "sup_side").unwrap();
            let conv = cert
                .witness
                .iter()
                .find(|(k, _)| k == "inf_convolution_side")
                .unwrap();
            assert_eq!(sup.1, conv.1);
        }
        // At N = 1 both sides are exactly -1/2.
        let cert = conjugate_sum_identity_check(&q(), 1, &budget).unwrap();
        let sup = cert.witness.iter().find(|(k, _)| k == "sup_side").unwrap();
        assert_eq!(sup.1, "-1/2");
    }

    #[test]
    fn qualification_matrix_over_catalog() {
        let f = ConvexFnDesc::separable_quadratic(q());
        // (f, indicator, identity): pointwise fails, algebraic holds.
        let pair = FenchelPair::new(f.clone(), ConvexFnDesc::indicator_origin(), None);
        assert_eq!(qualification_outcomes(&pair), (false, true));
        // (f, zero, difference operator): same split.
        let pair = FenchelPair::new(f, ConvexFnDesc::zero(), Some(DifferenceOperator));
        assert_eq!(qualification_outcomes(&pair), (false, true));
        // (zero, zero, identity): both hold.
        let pair = FenchelPair::new(ConvexFnDesc::zero(), ConvexFnDesc::zero(), None);
        assert_eq!(qualification_outcomes(&pair), (true, true));
    }

    #[test]
    fn fenchel_pair_objectives() {
        let pair = FenchelPair::new(
            ConvexFnDesc::separable_quadratic(q()),
            ConvexFnDesc::zero(),
            Some(DifferenceOperator),
        );
        assert_eq!(pair.primal_value(&FiniteSeq::zero()), Some(half_zeta2()));
        // y = 0 is dual feasible with value 0.
        assert_eq!(
            pair.dual_value(&FiniteSeq::zero()),
            Some(ExactValue::zero())
        );
        // Any nonzero finitely supported y is dual infeasible.
        assert_eq!(pair.dual_value(&FiniteSeq::basis(2).unwrap()), None);

        let pair = FenchelPair::new(
            ConvexFnDesc::separable_quadratic(q()),
            ConvexFnDesc::indicator_origin(),
            None,
        );
        // Primal only finite at the origin.
        assert_eq!(pair.primal_value(&FiniteSeq::zero()), Some(half_zeta2()));
        assert_eq!(pair.primal_value(&FiniteSeq::basis(1).unwrap()), None);
        // Dual of the section pair: -f*(y) - 0, finite everywhere.
        let y = FiniteSeq::from_pairs([(1, Rational::from_int(-1))]).unwrap();
        assert_eq!(
            pair.dual_value(&y),
            Some(ExactValue::from_rational(Rational::new(1, 2)))
        );
    }

    #[test]
    fn numeric_errors_propagate_from_enclosure() {
        let budget = BudgetParams {
            zeta_n: 0,
            ..BudgetParams::default()
        };
        assert!(matches!(
            certify_duality_gap(&q(), 1, &budget),
            Err(DualityError::Numeric(NumericError::InvalidRefinement(0)))
        ));
    }
}
