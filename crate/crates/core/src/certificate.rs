//! Structured verdicts and verification reports.
//!
//! A [`Certificate`] is the unit of evidence everywhere in this crate: a
//! stable claim id, the exact witness data that makes the claim re-checkable,
//! an optional exact margin and enclosure, and a pass/fail bit. Reports
//! aggregate certificates deterministically: same seed and budget, same
//! bytes.

use serde::Serialize;

use crate::exact_number::{Enclosure, RefinementBudget};
use crate::rational::Rational;

/// Exactly re-checkable verdict for a single claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<Enclosure>,
    /// Ordered key/value witness data, every value in exact string form.
    pub witness: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            pass: true,
            margin: None,
            enclosure: None,
            witness: Vec::new(),
        }
    }

    pub fn item(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.witness.push((key.into(), value.to_string()));
        self
    }

    pub fn margin(mut self, margin: Rational) -> Self {
        self.margin = Some(margin);
        self
    }

    pub fn enclosure(mut self, enclosure: Enclosure) -> Self {
        self.enclosure = Some(enclosure);
        self
    }

    /// Records a checked condition, failing the certificate if it is false.
    pub fn check(mut self, condition: bool, label: &str) -> Self {
        self.witness
            .push((format!("check[{label}]"), condition.to_string()));
        self.pass &= condition;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// An enclosure comparison ran out of refinement budget; no claim failed,
    /// but the suite could not decide.
    Inconclusive,
}

/// Budget knobs exposed on the command line and frozen into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetParams {
    /// Partial-sum length for zeta enclosures in gap and convolution reports.
    pub zeta_n: u64,
    /// Dyadic mantissa precision.
    pub precision_bits: u32,
    /// Largest truncation used for primal/dual tables.
    pub truncation_max: u64,
    /// Decimal digits for rendered values.
    pub digits: u32,
}

impl Default for BudgetParams {
    fn default() -> Self {
        BudgetParams {
            zeta_n: 10_000,
            precision_bits: 128,
            truncation_max: 64,
            digits: 6,
        }
    }
}

impl BudgetParams {
    /// Refinement policy used for comparisons and decimal rendering. The
    /// digit cap stays at the policy default; callers requesting more digits
    /// get a `DigitsExceedCap` error rather than a silently raised cap.
    pub fn refinement(&self) -> RefinementBudget {
        RefinementBudget {
            max_zeta_n: self.zeta_n.max(1_000_000),
            precision_bits: self.precision_bits,
            ..RefinementBudget::default()
        }
    }
}

/// Aggregated result of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub budget: BudgetParams,
    pub certificates: Vec<Certificate>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        seed: u64,
        budget: BudgetParams,
        certificates: Vec<Certificate>,
        undecided: bool,
    ) -> Self {
        let verdict = if undecided {
            Verdict::Inconclusive
        } else if certificates.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            suite: suite.into(),
            seed,
            budget,
            certificates,
            verdict,
        }
    }

    pub fn first_failure(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_pass_iff_every_certificate_passes() {
        let good = Certificate::new("a").check(true, "ok");
        let bad = Certificate::new("b").check(false, "broken");
        let r = VerificationReport::new(
            "s",
            1,
            BudgetParams::default(),
            vec![good.clone(), bad.clone()],
            false,
        );
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.first_failure().unwrap().claim, "b");
        let r = VerificationReport::new("s", 1, BudgetParams::default(), vec![good], false);
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
