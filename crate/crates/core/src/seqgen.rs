//! Seeded generation of sweep inputs.
//!
//! Verification suites draw their points, directions and candidate duals
//! from a ChaCha8 stream keyed by the report seed, so every sweep is
//! reproducible byte for byte. Coefficients stay small on purpose: the
//! certificates are exact whatever the magnitudes, and small rationals keep
//! the seeded sweeps fast.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;
use crate::seq::FiniteSeq;

pub struct SeqSampler {
    rng: ChaCha8Rng,
}

impl SeqSampler {
    pub fn new(seed: u64) -> Self {
        SeqSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero rational with numerator in `[-12, 12]` and denominator in
    /// `[1, 12]`.
    pub fn rational(&mut self) -> Rational {
        let num = loop {
            let n: i64 = self.rng.gen_range(-12..=12);
            if n != 0 {
                break n;
            }
        };
        let den: i64 = self.rng.gen_range(1..=12);
        Rational::new(num, den)
    }

    /// Rational in `[0, 1]` with denominator up to 12 (for convex weights).
    pub fn unit_rational(&mut self) -> Rational {
        let den: i64 = self.rng.gen_range(1..=12);
        let num: i64 = self.rng.gen_range(0..=den);
        Rational::new(num, den)
    }

    /// Uniform index in `[lo, hi]`.
    pub fn index(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Finitely supported sequence with up to `max_terms` entries at indices
    /// in `[1, max_index]`. May be empty unless `min_terms > 0`.
    pub fn seq(&mut self, max_index: u64, min_terms: usize, max_terms: usize) -> FiniteSeq {
        assert!(max_index >= 1 && min_terms <= max_terms);
        let count = self.rng.gen_range(min_terms..=max_terms);
        let mut pairs = Vec::with_capacity(count);
        for _ in 0..count {
            let idx = self.rng.gen_range(1..=max_index);
            pairs.push((idx, self.rational()));
        }
        // Duplicate indices collapse; retry until the requested minimum
        // support survives canonicalization.
        let seq = FiniteSeq::from_pairs(pairs).expect("indices are >= 1");
        if seq.support_len() < min_terms {
            return self.seq(max_index, min_terms, max_terms);
        }
        seq
    }

    /// Nonzero sequence.
    pub fn nonzero_seq(&mut self, max_index: u64, max_terms: usize) -> FiniteSeq {
        self.seq(max_index, 1, max_terms.max(1))
    }
}
