//! The backward-difference operator on `c_c`, its adjoint, and norm
//! certificates.
//!
//! `(A x)_1 = x_1` and `(A x)_n = x_n - x_{n-1}` for `n > 1`. The adjoint on
//! finitely supported duals is `(A* y)_n = y_n - y_{n+1}`. `A` is bounded
//! with operator norm exactly 2: the upper bound comes from
//! `(a - b)^2 <= 2a^2 + 2b^2`, and alternating-sign vectors witness ratios
//! `(4k - 2)/k` approaching 4 for the squared norms.

use serde::Serialize;
use thiserror::Error;

use crate::certificate::Certificate;
use crate::rational::Rational;
use crate::seq::FiniteSeq;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("the norm ratio is undefined for the zero vector")]
    ZeroVector,
}

/// The single concrete operator of the duality-gap construction.
///
/// Stateless; linearity and boundedness are covered by property tests.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DifferenceOperator;

/// `A x`, exact. Support of the image lies in `[1, max_support(x) + 1]`.
pub fn apply_a(x: &FiniteSeq) -> FiniteSeq {
    let mut pairs: Vec<(u64, Rational)> = Vec::with_capacity(2 * x.support_len());
    for (n, v) in x.iter() {
        pairs.push((n, v.clone()));
        pairs.push((n + 1, -v));
    }
    FiniteSeq::from_pairs(pairs).expect("image indices stay >= 1")
}

/// `A* y` for finitely supported `y`, exact.
pub fn apply_a_adjoint(y: &FiniteSeq) -> FiniteSeq {
    let mut pairs: Vec<(u64, Rational)> = Vec::with_capacity(2 * y.support_len());
    for (n, v) in y.iter() {
        pairs.push((n, v.clone()));
        if n >= 2 {
            pairs.push((n - 1, -v));
        }
    }
    FiniteSeq::from_pairs(pairs).expect("image indices stay >= 1")
}

/// Certifies `norm_sq(A x) <= 4 * norm_sq(x)` with the exact ratio as witness.
pub fn norm_upper_bound_check(x: &FiniteSeq) -> Result<Certificate, OperatorError> {
    if x.is_zero() {
        return Err(OperatorError::ZeroVector);
    }
    let image = apply_a(x);
    let ratio = image.norm_sq() / x.norm_sq();
    let within = ratio <= Rational::from_int(4);
    Ok(Certificate::new("operator-norm-upper-bound")
        .item("x", x)
        .item("ratio", &ratio)
        .margin(Rational::from_int(4) - &ratio)
        .check(within, "ratio <= 4"))
}

/// Alternating-sign witness `x_n = (-1)^(n+1)` for `n <= k`; the squared-norm
/// ratio is exactly `(4k - 2)/k`, nondecreasing toward 4.
pub fn norm_lower_witness(k: u64) -> (FiniteSeq, Rational) {
    assert!(k >= 1, "witness length must be >= 1");
    let pairs = (1..=k).map(|n| {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        (n, Rational::from_int(sign))
    });
    let x = FiniteSeq::from_pairs(pairs).expect("indices >= 1");
    let ratio = apply_a(&x).norm_sq() / x.norm_sq();
    (x, ratio)
}

/// Certifies injectivity of `A*` on finitely supported vectors.
///
/// For `y != 0` the last support index `m` satisfies `(A* y)_m = y_m != 0`
/// because `y_{m+1} = 0`, so `A* y != 0`; the certificate records `m` as the
/// contradiction index a claimed kernel element would produce.
pub fn adjoint_injectivity_check(y: &FiniteSeq) -> Certificate {
    if y.is_zero() {
        return Certificate::new("adjoint-injectivity")
            .item("y", y)
            .check(true, "zero vector maps to zero");
    }
    let image = apply_a_adjoint(y);
    let m = y.max_support();
    let at_m = image.get(m);
    Certificate::new("adjoint-injectivity")
        .item("y", y)
        .item("adjoint_image", &image)
        .item("contradiction_index", m)
        .check(!image.is_zero(), "A* y != 0")
        .check(at_m == y.get(m), "(A* y)_m = y_m at the last support index")
}

/// Exact preimage data showing the range of `A` reaches `e_m` up to a
/// residual of squared norm `1/k`: returns `x` with
/// `A x = e_m - (1/k) * (e_{m+1} + ... + e_{m+k})`.
pub fn approx_preimage_of_basis(m: u64, k: u64) -> (FiniteSeq, Rational) {
    assert!(m >= 1 && k >= 1);
    let mut pairs = Vec::with_capacity(k as usize);
    for j in 0..k {
        // partial sums of the target: 1 - j/k on [m, m + k - 1]
        pairs.push((m + j, Rational::new((k - j) as i64, k as i64)));
    }
    let x = FiniteSeq::from_pairs(pairs).expect("indices >= 1");
    let e_m = FiniteSeq::basis(m).expect("m >= 1");
    let residual = apply_a(&x).sub(&e_m).norm_sq();
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pairs: &[(u64, i64)]) -> FiniteSeq {
        FiniteSeq::from_pairs(pairs.iter().map(|(n, v)| (*n, Rational::from_int(*v)))).unwrap()
    }

    #[test]
    fn apply_a_on_basis_and_telescoping() {
        let e1 = FiniteSeq::basis(1).unwrap();
        assert_eq!(apply_a(&e1), seq(&[(1, 1), (2, -1)]));
        assert_eq!(
            apply_a(&seq(&[(1, 1), (2, 1), (3, 1)])),
            seq(&[(1, 1), (4, -1)])
        );
        assert_eq!(apply_a(&FiniteSeq::zero()), FiniteSeq::zero());
    }

    #[test]
    fn adjoint_on_basis() {
        assert_eq!(
            apply_a_adjoint(&FiniteSeq::basis(1).unwrap()),
            seq(&[(1, 1)])
        );
        assert_eq!(
            apply_a_adjoint(&FiniteSeq::basis(2).unwrap()),
            seq(&[(1, -1), (2, 1)])
        );
    }

    #[test]
    fn adjoint_identity_on_basis_pair() {
        let e1 = FiniteSeq::basis(1).unwrap();
        let e2 = FiniteSeq::basis(2).unwrap();
        let lhs = apply_a(&e1).inner(&e2);
        let rhs = e1.inner(&apply_a_adjoint(&e2));
        assert_eq!(lhs, Rational::from_int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_ratio_examples() {
        let c = norm_upper_bound_check(&FiniteSeq::basis(1).unwrap()).unwrap();
        assert!(c.pass);
        assert_eq!(
            c.witness.iter().find(|(k, _)| k == "ratio").unwrap().1,
            "2/1"
        );
        let c = norm_upper_bound_check(&seq(&[(1, 1), (2, -1)])).unwrap();
        assert!(c.pass);
        assert_eq!(
            c.witness.iter().find(|(k, _)| k == "ratio").unwrap().1,
            "3/1"
        );
        assert!(matches!(
            norm_upper_bound_check(&FiniteSeq::zero()),
            Err(OperatorError::ZeroVector)
        ));
    }

    #[test]
    fn lower_witness_matches_closed_form_by_brute_force() {
        for k in 1..=10u64 {
            let (x, ratio) = norm_lower_witness(k);
            // brute force both norms from the definition
            let brute = apply_a(&x).norm_sq() / x.norm_sq();
            assert_eq!(ratio, brute);
            assert_eq!(ratio, Rational::new(4 * k as i64 - 2, k as i64));
        }
        let (_, r1) = norm_lower_witness(1);
        let (_, r2) = norm_lower_witness(2);
        let (_, r100) = norm_lower_witness(100);
        assert_eq!(r1, Rational::from_int(2));
        assert_eq!(r2, Rational::from_int(3));
        assert_eq!(r100, Rational::new(398, 100));
    }

    #[test]
    fn injectivity_certificates() {
        assert!(adjoint_injectivity_check(&FiniteSeq::zero()).pass);
        let c = adjoint_injectivity_check(&FiniteSeq::basis(3).unwrap());
        assert!(c.pass);
        assert_eq!(
            apply_a_adjoint(&FiniteSeq::basis(3).unwrap()),
            seq(&[(2, -1), (3, 1)])
        );
    }

    #[test]
    fn approx_preimage_hits_basis_up_to_small_residual() {
        for m in [1u64, 3, 50] {
            let (x, residual) = approx_preimage_of_basis(m, 16);
            assert_eq!(residual, Rational::new(1, 16));
            // A x equals the perturbed target exactly
            let mut pairs = vec![(m, Rational::one())];
            for j in 1..=16u64 {
                pairs.push((m + j, Rational::new(-1, 16)));
            }
            let target = FiniteSeq::from_pairs(pairs).unwrap();
            assert_eq!(apply_a(&x), target);
        }
    }
}
