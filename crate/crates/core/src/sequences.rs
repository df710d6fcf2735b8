//! Infinite-sequence experiments: greedy free sequences, the dyadic random
//! construction, counting functions and the liminf statistic.

use std::collections::HashSet;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::ambient::Ambient;
use crate::bits::Bits;
use crate::construct::behrend_set_in;
use crate::detect::{line_has_sumset_with_max, Anchor, Engine, Raw, Space};
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;

/// Largest block index accepted by the dyadic construction.
pub const MAX_BLOCK: u32 = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicParams {
    pub epsilon: f64,
    pub m_min: u32,
    pub m_max: u32,
    pub alpha: f64,
    pub seed: u64,
}

impl DyadicParams {
    /// `α = (Σ−r)/(Π−1) + ε/2`.
    pub fn new(sig: &Signature, epsilon: f64, m_min: u32, m_max: u32, seed: u64) -> Result<Self> {
        if sig.r() < 2 {
            return Err(Error::InvalidSignature(format!("dyadic construction needs r ≥ 2, got {sig}")));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
        }
        if m_min < 1 || m_min > m_max {
            return Err(Error::InvalidInput(format!("need 1 ≤ m_min ≤ m_max, got {m_min}..{m_max}")));
        }
        if m_max > MAX_BLOCK {
            return Err(Error::Resource(format!("m_max = {m_max} exceeds {MAX_BLOCK}")));
        }
        let alpha = (sig.sum() - sig.r() as u64) as f64 / (sig.product() - 1) as f64 + epsilon / 2.0;
        Ok(DyadicParams {
            epsilon,
            m_min,
            m_max,
            alpha,
            seed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Greedy { limit: u64 },
    Dyadic(DyadicParams),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequencePrefix {
    pub terms: Vec<u64>,
    pub signature: Signature,
    pub provenance: Provenance,
}

impl SequencePrefix {
    /// The terms as a set in `[1, max(terms, limit)]`.
    pub fn to_set(&self) -> GroundSet {
        let top = self.terms.last().copied().unwrap_or(1).max(1);
        let ambient = Ambient::interval(top).expect("top ≥ 1");
        let bits = Bits::from_indices(top as usize, self.terms.iter().map(|&t| t as usize - 1));
        GroundSet::from_bits(ambient, bits)
    }
}

/// Per-block figures of a dyadic run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockStats {
    pub m: u32,
    pub start: u64,
    pub behrend: usize,
    /// `|B_m| ≥ 4^{m(1−ε/2)}`.
    pub dense: bool,
    /// `Σ_{ν∈B_m} ν^{−α}`.
    pub expected: f64,
    #[serde(rename = "S")]
    pub sampled: usize,
    /// Distinct obstructions with maximum in `S_m`.
    #[serde(rename = "N")]
    pub obstructions: u64,
    pub bad: usize,
    pub retained: usize,
}

#[derive(Clone, Debug)]
pub struct DyadicRun {
    pub prefix: SequencePrefix,
    pub blocks: Vec<BlockStats>,
    /// Signature outside the `(2,ℓ)` and `(2,…,2)` families.
    pub experimental: bool,
}

/// Appends, in increasing order from 1, every integer up to `limit` that
/// keeps the sequence free.
pub fn greedy_sequence(sig: &Signature, limit: u64) -> Result<SequencePrefix> {
    if limit == 0 {
        return Err(Error::InvalidInput("limit must be at least 1".into()));
    }
    let mut bits = Bits::new(limit as usize);
    let mut terms = Vec::new();
    for c in 0..limit as usize {
        bits.insert(c);
        if line_has_sumset_with_max(&bits, sig, c) {
            bits.remove(c);
        } else {
            terms.push(c as u64 + 1);
        }
    }
    Ok(SequencePrefix {
        terms,
        signature: sig.clone(),
        provenance: Provenance::Greedy { limit },
    })
}

/// `|A ∩ [1, x]|`.
pub fn counting_function(prefix: &SequencePrefix, x: u64) -> usize {
    prefix.terms.partition_point(|&t| t <= x)
}

/// `A(x)·(x ln x)^{1/Π'}/x` for each `x`.
pub fn liminf_statistic(prefix: &SequencePrefix, xs: &[u64]) -> Result<Vec<f64>> {
    let sig = &prefix.signature;
    if sig.r() < 2 {
        return Err(Error::InvalidSignature(format!("statistic needs r ≥ 2, got {sig}")));
    }
    let e = 1.0 / sig.prefix_product() as f64;
    xs.iter()
        .map(|&x| {
            if x <= 1 {
                return Err(Error::InvalidInput(format!("x = {x} must exceed 1")));
            }
            let xf = x as f64;
            Ok(counting_function(prefix, x) as f64 * (xf * xf.ln()).powf(e) / xf)
        })
        .collect()
}

/// JSON sidecar for a sequence, with the statistic evaluated at `xs`.
pub fn sidecar(prefix: &SequencePrefix, blocks: &[BlockStats], xs: &[u64]) -> Result<serde_json::Value> {
    let stats = if prefix.signature.r() >= 2 {
        let vals = liminf_statistic(prefix, xs)?;
        xs.iter()
            .zip(vals)
            .map(|(&x, v)| json!({"x": x, "A": counting_function(prefix, x), "liminf_stat": v}))
            .collect()
    } else {
        Vec::new()
    };
    Ok(json!({
        "signature": prefix.signature.lengths(),
        "provenance": prefix.provenance,
        "per_m": blocks,
        "statistics": stats,
    }))
}

fn block_start(m: u32) -> u64 {
    4u64.pow(m + 2)
}

/// The dyadic construction over blocks `I_m = [4^{m+2}, 4^{m+2}+4^m)`,
/// `m_min ≤ m ≤ m_max`. `budget` caps the number of obstruction
/// decompositions enumerated.
pub fn dyadic_random_sequence(sig: &Signature, params: &DyadicParams, budget: u64) -> Result<DyadicRun> {
    let expect = DyadicParams::new(sig, params.epsilon, params.m_min, params.m_max, params.seed)?;
    if (expect.alpha - params.alpha).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "alpha {} does not match (Σ−r)/(Π−1)+ε/2 = {}",
            params.alpha, expect.alpha
        )));
    }
    let top = block_start(params.m_max) + 4u64.pow(params.m_max);
    let len = top as usize;
    // blocks sampled independently, each from its own stream of the master seed
    let samples: Vec<(u32, usize, bool, f64, Vec<usize>)> = (params.m_min..=params.m_max)
        .into_par_iter()
        .map(|m| {
            let start = block_start(m);
            let width = 4u64.pow(m);
            let ambient = Ambient::interval_from(start as i64, width).expect("block fits");
            let b = behrend_set_in(ambient).expect("nonempty block");
            let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
            rng.set_stream(m as u64);
            let mut expected = 0.0;
            let mut picked = Vec::new();
            for e in b.iter() {
                let v = e.as_int().expect("integer") as u64;
                let f = (v as f64).powf(-params.alpha);
                expected += f;
                if rng.gen_bool(f.min(1.0)) {
                    picked.push(v as usize);
                }
            }
            let dense = b.len() as f64 >= 4f64.powf(m as f64 * (1.0 - params.epsilon / 2.0));
            (m, b.len(), dense, expected, picked)
        })
        .collect();
    let mut union = Bits::new(len);
    for s in &samples {
        for &v in &s.4 {
            union.insert(v);
        }
    }
    let members: Vec<usize> = union.iter().collect();
    // per element: distinct obstructions (by value set) having it as maximum
    let counts: Vec<(usize, u64, u64)> = members
        .par_iter()
        .map(|&t| obstructions_with_max(&union, sig, t, budget).map(|(n, d)| (t, n, d)))
        .collect::<Result<_>>()?;
    let decompositions: u64 = counts.iter().map(|c| c.2).sum();
    if decompositions > budget {
        return Err(Error::Resource(format!(
            "{decompositions} obstruction decompositions exceed budget {budget}"
        )));
    }
    let mut terms = Vec::new();
    let mut blocks = Vec::new();
    for (m, behrend, dense, expected, picked) in samples {
        let mut obstructions = 0;
        let mut bad = 0;
        for &v in &picked {
            let (_, n, _) = counts[members.binary_search(&v).expect("sampled")];
            obstructions += n;
            if n > 0 {
                bad += 1;
            } else {
                terms.push(v as u64);
            }
        }
        blocks.push(BlockStats {
            m,
            start: block_start(m),
            behrend,
            dense,
            expected,
            sampled: picked.len(),
            obstructions,
            bad,
            retained: picked.len() - bad,
        });
    }
    terms.sort_unstable();
    Ok(DyadicRun {
        prefix: SequencePrefix {
            terms,
            signature: sig.clone(),
            provenance: Provenance::Dyadic(params.clone()),
        },
        blocks,
        experimental: !sig.is_two_ell_or_cube(),
    })
}

/// `(distinct value sets, decompositions)` of obstructions in `bits` with
/// maximum `t`.
fn obstructions_with_max(bits: &Bits, sig: &Signature, t: usize, budget: u64) -> Result<(u64, u64)> {
    let shape = sig.lengths();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut decompositions = 0u64;
    let flow = Engine::new(Space::Line, shape).run(bits, Anchor::Max(t), &mut |raw: &Raw| {
        decompositions += 1;
        if decompositions > budget {
            return ControlFlow::Break(());
        }
        let mut values = vec![raw.offset];
        for s in &raw.summands {
            values = values.iter().flat_map(|&v| s.iter().map(move |&d| v + d)).collect();
        }
        values.sort_unstable();
        values.dedup();
        seen.insert(values);
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(Error::Resource(format!("obstructions at {t} exceed budget {budget}")));
    }
    Ok((seen.len() as u64, decompositions))
}
