//! Exact numbers of the form `a + sum_s b_s * zeta(s)` with certified
//! rational enclosures.
//!
//! Values of the objective functions in this crate are rationals plus a
//! rational multiple of `zeta(s)` for integer `s >= 2`. [`ExactValue`] keeps
//! that representation symbolic, so sums and differences cancel exactly.
//! Comparisons and decimal output go through [`Enclosure`], a rational
//! interval certified to contain the value.
//!
//! The `zeta(s)` brackets come from the partial sum plus the telescoping
//! integral tail bounds
//!
//! ```text
//! 1/((s-1)(N+1)^(s-1))  <=  sum_{n>N} n^(-s)  <=  1/((s-1) N^(s-1))
//! ```
//!
//! Partial sums are evaluated in outward-rounded dyadic arithmetic (integer
//! mantissas at a fixed power-of-two scale) rather than exact rationals:
//! summing `10^4` exact rational terms would produce astronomically large
//! denominators, while the dyadic slack stays below half the analytic tail
//! width and is absorbed into the bracket.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;
use crate::rational::{int_pow, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("zeta exponent must be an integer >= 2, got {0}")]
    InvalidZetaExponent(u32),
    #[error("partial-sum length must be >= 1, got {0}")]
    InvalidRefinement(u64),
    #[error("undecidable at refinement budget N = {budget}: enclosure of width {width} still straddles the target")]
    Undecidable { budget: u64, width: String },
    #[error("requested {requested} digits exceeds the policy cap of {cap}")]
    DigitsExceedCap { requested: u32, cap: u32 },
}

/// Refinement policy for enclosure-based comparisons and decimal output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementBudget {
    /// Largest partial-sum length tried before giving up.
    pub max_zeta_n: u64,
    /// Dyadic mantissa precision for partial sums.
    pub precision_bits: u32,
    /// Cap on digits served by `to_decimal`.
    pub digits_cap: u32,
}

impl Default for RefinementBudget {
    fn default() -> Self {
        RefinementBudget {
            max_zeta_n: 1_000_000,
            precision_bits: 128,
            digits_cap: 12,
        }
    }
}

/// Rational interval `[lo, hi]` certified to contain the enclosed quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    /// Certified constructor; callers assert containment by construction.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Sign of every point in the interval, if uniform.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn shift(&self, offset: &Rational) -> Enclosure {
        Enclosure {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }

    /// Scales by a rational, swapping endpoints for negative factors.
    pub fn scale(&self, factor: &Rational) -> Enclosure {
        let a = factor * &self.lo;
        let b = factor * &self.hi;
        if factor.is_negative() {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure { lo: a, hi: b }
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}

impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Enclosure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lo, hi): (Rational, Rational) = Deserialize::deserialize(deserializer)?;
        if lo > hi {
            return Err(serde::de::Error::custom("enclosure endpoints out of order"));
        }
        Ok(Enclosure { lo, hi })
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exact number `rational_part + sum_s zeta_coeffs[s] * zeta(s)`.
///
/// Zero coefficients are never stored, so values with fully cancelled zeta
/// parts compare equal to plain rationals bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    #[serde(rename = "rat")]
    rational_part: Rational,
    #[serde(rename = "zeta", skip_serializing_if = "BTreeMap::is_empty", default)]
    zeta_coeffs: BTreeMap<u32, Rational>,
}

impl ExactValue {
    pub fn from_rational(r: Rational) -> Self {
        ExactValue {
            rational_part: r,
            zeta_coeffs: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// `coeff * zeta(s)`; rejects `s < 2`.
    pub fn zeta_multiple(s: u32, coeff: Rational) -> Result<Self, NumericError> {
        if s < 2 {
            return Err(NumericError::InvalidZetaExponent(s));
        }
        let mut zeta_coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            zeta_coeffs.insert(s, coeff);
        }
        Ok(ExactValue {
            rational_part: Rational::zero(),
            zeta_coeffs,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn zeta_coeff(&self, s: u32) -> Rational {
        self.zeta_coeffs
            .get(&s)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn zeta_coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.zeta_coeffs
    }

    /// True when all zeta coefficients have cancelled.
    pub fn is_rational(&self) -> bool {
        self.zeta_coeffs.is_empty()
    }

    /// The rational value, provided the zeta part is empty.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational_part)
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        let mut out = self.clone();
        out.rational_part = &out.rational_part + &other.rational_part;
        for (s, c) in &other.zeta_coeffs {
            out.accumulate(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExactValue) -> ExactValue {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, factor: &Rational) -> ExactValue {
        if factor.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            rational_part: factor * &self.rational_part,
            zeta_coeffs: self
                .zeta_coeffs
                .iter()
                .map(|(s, c)| (*s, factor * c))
                .collect(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> ExactValue {
        let mut out = self.clone();
        out.rational_part = &out.rational_part + r;
        out
    }

    fn accumulate(&mut self, s: u32, coeff: Rational) {
        let entry = self.zeta_coeffs.entry(s).or_insert_with(Rational::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.zeta_coeffs.remove(&s);
        }
    }

    /// Encloses the value using `zeta` brackets of partial-sum length `n`.
    pub fn enclose(&self, n: u64, precision_bits: u32) -> Result<Enclosure, NumericError> {
        let mut acc = Enclosure::point(self.rational_part.clone());
        for (s, coeff) in &self.zeta_coeffs {
            let z = zeta_enclosure_with_bits(*s, n, precision_bits)?;
            acc = acc.add(&z.scale(coeff));
        }
        Ok(acc)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational_part)?;
        for (s, c) in &self.zeta_coeffs {
            write!(f, " + ({})*zeta({})", c, s)?;
        }
        Ok(())
    }
}

/// Dyadic bracket `[lo, hi]` around the partial sum `H_n^(s) = sum_{k<=n} k^(-s)`.
///
/// Endpoints are integer mantissas over `2^precision_bits`, rounded outward
/// per term, so `hi - lo <= n / 2^precision_bits`.
pub fn zeta_partial_sum_bracket(
    s: u32,
    n: u64,
    precision_bits: u32,
) -> Result<(Rational, Rational), NumericError> {
    if s < 2 {
        return Err(NumericError::InvalidZetaExponent(s));
    }
    if n < 1 {
        return Err(NumericError::InvalidRefinement(n));
    }
    let terms: Vec<u64> = (1..=n).collect();
    let mantissas = par::map(&terms, |&k| term_mantissas(s, k, precision_bits));
    Ok(combine_mantissas(mantissas, precision_bits))
}

/// Sequential variant of [`zeta_partial_sum_bracket`], kept unconditionally
/// for benchmarking against the parallel path; results are bit-identical.
pub fn zeta_partial_sum_bracket_seq(
    s: u32,
    n: u64,
    precision_bits: u32,
) -> Result<(Rational, Rational), NumericError> {
    if s < 2 {
        return Err(NumericError::InvalidZetaExponent(s));
    }
    if n < 1 {
        return Err(NumericError::InvalidRefinement(n));
    }
    let terms: Vec<u64> = (1..=n).collect();
    let mantissas = par::map_seq(&terms, |&k| term_mantissas(s, k, precision_bits));
    Ok(combine_mantissas(mantissas, precision_bits))
}

/// Floor and ceiling mantissas of `2^bits / k^s`.
fn term_mantissas(s: u32, k: u64, bits: u32) -> (BigInt, BigInt) {
    let denom = int_pow(k, s);
    let scale = BigInt::one() << bits;
    let (q, r) = scale.div_rem(&denom);
    if r.is_zero() {
        (q.clone(), q)
    } else {
        let up = &q + 1;
        (q, up)
    }
}

fn combine_mantissas(mantissas: Vec<(BigInt, BigInt)>, bits: u32) -> (Rational, Rational) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (l, h) in mantissas {
        lo += l;
        hi += h;
    }
    let scale = BigInt::one() << bits;
    (Rational::new(lo, scale.clone()), Rational::new(hi, scale))
}

/// Exact rational partial sum `H_n^(s) = sum_{k<=n} k^(-s)`.
///
/// Denominators grow like `lcm(1..n)^s`; intended for small `n` (tables and
/// oracles), with the dyadic bracket covering large `n`.
pub fn harmonic_sum(s: u32, n: u64) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=n {
        acc = acc + Rational::new(1, int_pow(k, s));
    }
    acc
}

/// Certified enclosure of `zeta(s)` from an `n`-term partial sum, default
/// precision.
pub fn zeta_enclosure(s: u32, n: u64) -> Result<Enclosure, NumericError> {
    zeta_enclosure_with_bits(s, n, RefinementBudget::default().precision_bits)
}

/// Certified enclosure of `zeta(s)` with explicit mantissa precision.
///
/// The requested precision is raised automatically until the dyadic rounding
/// slack `n / 2^bits` is below half the analytic tail width, so the bracket
/// width stays `O(n^-s)`.
pub fn zeta_enclosure_with_bits(s: u32, n: u64, bits: u32) -> Result<Enclosure, NumericError> {
    if s < 2 {
        return Err(NumericError::InvalidZetaExponent(s));
    }
    if n < 1 {
        return Err(NumericError::InvalidRefinement(n));
    }
    let tail_lo = tail_lower(s, n);
    let tail_hi = tail_upper(s, n);
    let analytic_width = &tail_hi - &tail_lo;
    let bits = bits.max(bits_for_slack(n, &analytic_width));
    let (sum_lo, sum_hi) = zeta_partial_sum_bracket(s, n, bits)?;
    Ok(Enclosure::new(sum_lo + tail_lo, sum_hi + tail_hi))
}

/// `1/((s-1)(n+1)^(s-1))`, a lower bound for the tail `sum_{k>n} k^(-s)`.
fn tail_lower(s: u32, n: u64) -> Rational {
    Rational::new(1, BigInt::from(s - 1) * int_pow(n + 1, s - 1))
}

/// `1/((s-1) n^(s-1))`, an upper bound for the same tail.
fn tail_upper(s: u32, n: u64) -> Rational {
    Rational::new(1, BigInt::from(s - 1) * int_pow(n, s - 1))
}

/// Smallest precision with `n / 2^bits < width / 2`.
fn bits_for_slack(n: u64, width: &Rational) -> u32 {
    // 2^bits > 2n / width
    let threshold: BigInt = (BigInt::from(n) * 2 * width.denom()) / width.numer();
    (threshold.bits() + 1) as u32
}

/// Three-way comparison of exact values through enclosure refinement.
///
/// Identical zeta parts reduce to an exact rational comparison. Otherwise the
/// difference is enclosed at geometrically growing partial-sum lengths until
/// its sign is certain. Exhausting the budget returns
/// [`NumericError::Undecidable`]; distinct representations are never reported
/// equal.
pub fn exact_compare(
    u: &ExactValue,
    v: &ExactValue,
    budget: &RefinementBudget,
) -> Result<Ordering, NumericError> {
    let diff = u.sub(v);
    if diff.is_rational() {
        return Ok(diff.rational_part().cmp_zero());
    }
    let mut n = 16u64.min(budget.max_zeta_n.max(1));
    loop {
        let enclosure = diff.enclose(n, budget.precision_bits)?;
        if let Some(sign) = enclosure.sign() {
            return Ok(sign);
        }
        if n >= budget.max_zeta_n {
            return Err(NumericError::Undecidable {
                budget: budget.max_zeta_n,
                width: enclosure.width().to_string(),
            });
        }
        n = (n.saturating_mul(4)).min(budget.max_zeta_n);
    }
}

/// Decimal rendering of an exact value, certified by the returned enclosure
/// of width at most `10^-digits`.
///
/// The string is the enclosure midpoint rounded to `digits` fractional
/// places; the enclosure bounds the true value.
pub fn to_decimal(
    v: &ExactValue,
    digits: u32,
    budget: &RefinementBudget,
) -> Result<(String, Enclosure), NumericError> {
    if digits > budget.digits_cap {
        return Err(NumericError::DigitsExceedCap {
            requested: digits,
            cap: budget.digits_cap,
        });
    }
    let target_width = Rational::new(1, int_pow(10, digits));
    let enclosure = if v.is_rational() {
        Enclosure::point(v.rational_part().clone())
    } else {
        let mut n = 16u64.min(budget.max_zeta_n.max(1));
        loop {
            let enclosure = v.enclose(n, budget.precision_bits)?;
            if enclosure.width() <= target_width {
                break enclosure;
            }
            if n >= budget.max_zeta_n {
                return Err(NumericError::Undecidable {
                    budget: budget.max_zeta_n,
                    width: enclosure.width().to_string(),
                });
            }
            n = (n.saturating_mul(4)).min(budget.max_zeta_n);
        }
    };
    Ok((render_decimal(&enclosure.midpoint(), digits), enclosure))
}

fn render_decimal(value: &Rational, digits: u32) -> String {
    let scale = int_pow(10, digits);
    let scaled = (value * &Rational::from_int(scale.clone())).round();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (int_part, frac_part) = abs.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part,
            width = digits as usize
        )
    }
}
