//! Finitely supported sequences of exact rationals.
//!
//! `FiniteSeq` is the sparse representation of an element of `c_c` (and of
//! the finitely supported dual vectors the refutation arguments need):
//! strictly increasing 1-based indices paired with nonzero rational values.
//! Everything is pure and exact; the `l2` norm appears squared so it stays
//! rational.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("sequence indices are 1-based; index 0 is invalid")]
    ZeroIndex,
    #[error("entries must have strictly increasing indices (saw {prev} then {next})")]
    UnorderedIndices { prev: u64, next: u64 },
    #[error("entry at index {0} stores an explicit zero")]
    StoredZero(u64),
}

/// Finitely supported sequence in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FiniteSeq {
    entries: Vec<(u64, Rational)>,
}

impl FiniteSeq {
    pub fn zero() -> Self {
        FiniteSeq::default()
    }

    /// Standard basis vector `e_n`.
    pub fn basis(n: u64) -> Result<Self, SeqError> {
        if n == 0 {
            return Err(SeqError::ZeroIndex);
        }
        Ok(FiniteSeq {
            entries: vec![(n, Rational::one())],
        })
    }

    /// Builds from arbitrary (index, value) pairs, canonicalizing as it goes:
    /// duplicate indices are summed, zeros dropped, order restored.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self, SeqError> {
        let mut pairs: Vec<(u64, Rational)> = pairs.into_iter().collect();
        if pairs.iter().any(|(n, _)| *n == 0) {
            return Err(SeqError::ZeroIndex);
        }
        pairs.sort_by_key(|(n, _)| *n);
        let mut entries: Vec<(u64, Rational)> = Vec::with_capacity(pairs.len());
        for (n, v) in pairs {
            match entries.last_mut() {
                Some((last, acc)) if *last == n => *acc = &*acc + &v,
                _ => entries.push((n, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Ok(FiniteSeq { entries })
    }

    /// Validating constructor for already-canonical input (wire format).
    pub fn from_canonical_entries(entries: Vec<(u64, Rational)>) -> Result<Self, SeqError> {
        let mut prev = 0u64;
        for (n, v) in &entries {
            if *n == 0 {
                return Err(SeqError::ZeroIndex);
            }
            if *n <= prev {
                return Err(SeqError::UnorderedIndices { prev, next: *n });
            }
            if v.is_zero() {
                return Err(SeqError::StoredZero(*n));
            }
            prev = *n;
        }
        Ok(FiniteSeq { entries })
    }

    pub fn entries(&self) -> &[(u64, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Largest support index, 0 for the zero sequence.
    pub fn max_support(&self) -> u64 {
        self.entries.last().map_or(0, |(n, _)| *n)
    }

    /// Coefficient at index `n` (zero off support).
    pub fn get(&self, n: u64) -> Rational {
        match self.entries.binary_search_by_key(&n, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn add(&self, other: &FiniteSeq) -> FiniteSeq {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((na, va)), Some((nb, vb))) => {
                    if na < nb {
                        entries.push((*na, va.clone()));
                        a.next();
                    } else if nb < na {
                        entries.push((*nb, vb.clone()));
                        b.next();
                    } else {
                        let sum = va + vb;
                        if !sum.is_zero() {
                            entries.push((*na, sum));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((na, va)), None) => {
                    entries.push((*na, va.clone()));
                    a.next();
                }
                (None, Some((nb, vb))) => {
                    entries.push((*nb, vb.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        FiniteSeq { entries }
    }

    pub fn scale(&self, c: &Rational) -> FiniteSeq {
        if c.is_zero() {
            return FiniteSeq::zero();
        }
        FiniteSeq {
            entries: self.entries.iter().map(|(n, v)| (*n, c * v)).collect(),
        }
    }

    pub fn neg(&self) -> FiniteSeq {
        self.scale(&Rational::from_int(-1))
    }

    pub fn sub(&self, other: &FiniteSeq) -> FiniteSeq {
        self.add(&other.neg())
    }

    /// Euclidean pairing `sum_n x_n y_n` over the common support.
    pub fn inner(&self, other: &FiniteSeq) -> Rational {
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        let mut acc = Rational::zero();
        while let (Some((na, va)), Some((nb, vb))) = (a.peek(), b.peek()) {
            if na < nb {
                a.next();
            } else if nb < na {
                b.next();
            } else {
                acc = acc + va * vb;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Squared `l2` norm `sum_n x_n^2`, exact.
    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(|(_, v)| v.square()).sum()
    }

    /// Sum of all coefficients (the telescoping total of the difference
    /// operator's image).
    pub fn coefficient_sum(&self) -> Rational {
        self.entries.iter().map(|(_, v)| v.clone()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.entries.iter().map(|(n, v)| (*n, v))
    }
}

impl fmt::Display for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({n}, {v})")?;
        }
        write!(f, "}}")
    }
}

impl<'de> Deserialize<'de> for FiniteSeq {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            entries: Vec<(u64, Rational)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        FiniteSeq::from_canonical_entries(raw.entries).map_err(serde::de::Error::custom)
    }
}
