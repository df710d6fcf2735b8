use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::json;

use super::behrend::behrend_values;
use crate::ambient::Ambient;
use crate::bits::Bits;
use crate::detect::line_has_sumset_with_max;
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;

/// Largest `n` accepted by the deletion construction.
pub const MAX_DELETION_N: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct DeletionReport {
    pub n: u64,
    pub signature: Signature,
    /// Seed of the attempt that produced these sets.
    pub seed: u64,
    pub p_used: f64,
    pub omega: f64,
    pub behrend_size: usize,
    pub sampled: GroundSet,
    pub bad: GroundSet,
    pub result: GroundSet,
    pub attempts: u32,
}

impl DeletionReport {
    /// The event `|S| ≥ |B|p/2` and `|S^bad| ≤ |B|p/4`.
    pub fn typical(&self) -> bool {
        let mean = self.behrend_size as f64 * self.p_used;
        self.sampled.len() as f64 >= mean / 2.0 && self.bad.len() as f64 <= mean / 4.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "signature": self.signature.lengths(),
            "seed": self.seed,
            "p": self.p_used,
            "omega": self.omega,
            "attempts": self.attempts,
            "sizes": {
                "B": self.behrend_size,
                "S": self.sampled.len(),
                "bad": self.bad.len(),
                "A": self.result.len(),
            },
        })
    }
}

/// `ω(n) = 1 − ln|B| / ln n` and `p(n) = ½ n^{(r−Σ−ω)/(Π−1)}`, capped at 1.
pub fn deletion_probability(n: u64, behrend_size: usize, sig: &Signature) -> (f64, f64) {
    let omega = if n >= 2 {
        1.0 - (behrend_size as f64).ln() / (n as f64).ln()
    } else {
        0.0
    };
    let e = (sig.r() as f64 - sig.sum() as f64 - omega) / (sig.product() as f64 - 1.0);
    (omega, (0.5 * (n as f64).powf(e)).min(1.0))
}

/// One run of the deletion construction in `[1, n]`.
pub fn random_deletion(n: u64, sig: &Signature, seed: u64) -> Result<DeletionReport> {
    let behrend = prepare(n, sig)?;
    Ok(attempt(n, sig, seed, &behrend, 1))
}

/// Reruns with seeds `seed, seed+1, …` until the sampled sets satisfy
/// [`DeletionReport::typical`], at most `max_attempts` times; returns the
/// last attempt either way.
pub fn random_deletion_retry(n: u64, sig: &Signature, seed: u64, max_attempts: u32) -> Result<DeletionReport> {
    let behrend = prepare(n, sig)?;
    let mut report = attempt(n, sig, seed, &behrend, 1);
    let mut k = 1;
    while !report.typical() && k < max_attempts.max(1) {
        report = attempt(n, sig, seed.wrapping_add(k as u64), &behrend, k + 1);
        k += 1;
    }
    Ok(report)
}

fn prepare(n: u64, sig: &Signature) -> Result<Vec<u64>> {
    if sig.r() < 2 {
        return Err(Error::InvalidSignature(format!("deletion needs r ≥ 2, got {sig}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if n > MAX_DELETION_N {
        return Err(Error::Resource(format!("n = {n} exceeds the deletion limit {MAX_DELETION_N}")));
    }
    Ok(behrend_values(n))
}

fn attempt(n: u64, sig: &Signature, seed: u64, behrend: &[u64], attempts: u32) -> DeletionReport {
    let (omega, p) = deletion_probability(n, behrend.len(), sig);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let len = n as usize;
    let sampled = Bits::from_indices(len, behrend.iter().filter(|_| rng.gen_bool(p)).map(|&v| v as usize));
    // the maxima of all obstructions, found by anchoring each element as a maximum
    let members: Vec<usize> = sampled.iter().collect();
    let bad_members: Vec<usize> = members
        .par_iter()
        .copied()
        .filter(|&t| line_has_sumset_with_max(&sampled, sig, t))
        .collect();
    let bad = Bits::from_indices(len, bad_members);
    let mut result = sampled.clone();
    for t in bad.iter() {
        result.remove(t);
    }
    let ambient = Ambient::interval(n).expect("n ≥ 1");
    DeletionReport {
        n,
        signature: sig.clone(),
        seed,
        p_used: p,
        omega,
        behrend_size: behrend.len(),
        sampled: GroundSet::from_bits(ambient.clone(), sampled),
        bad: GroundSet::from_bits(ambient.clone(), bad),
        result: GroundSet::from_bits(ambient, result),
        attempts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{enumerate_sumsets, is_free};

    #[test]
    fn result_is_free_and_reproducible() {
        let sig: Signature = "2,2".parse().unwrap();
        let a = random_deletion(100, &sig, 1).unwrap();
        assert!(is_free(&a.result, &sig));
        assert!(enumerate_sumsets(&a.result, &sig, 10).unwrap().is_empty());
        let b = random_deletion(100, &sig, 1).unwrap();
        assert_eq!(a.sampled, b.sampled);
        assert_eq!(a.result, b.result);
    }

    #[test]
    fn probability_formula() {
        let sig: Signature = "2,2".parse().unwrap();
        let (omega, p) = deletion_probability(10_000, 500, &sig);
        let expect = 0.5 * 10_000f64.powf((2.0 - 4.0 - omega) / 3.0);
        assert!((p - expect).abs() < 1e-15);
        assert!((omega - (1.0 - 500f64.ln() / 10_000f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn bad_set_is_sampled_minus_result() {
        let sig: Signature = "2,2".parse().unwrap();
        // small n gives p near 1, so obstructions are common
        let r = random_deletion(40, &sig, 7).unwrap();
        assert!(r.bad.is_subset(&r.sampled));
        assert_eq!(r.result.len() + r.bad.len(), r.sampled.len());
        assert!(is_free(&r.result, &sig));
    }

    #[test]
    fn rejects_trivial_signature() {
        assert!(random_deletion(10, &"3".parse().unwrap(), 0).is_err());
    }
}
