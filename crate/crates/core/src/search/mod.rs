//! Exact extremal search for `F(n, 𝓛)` and `F(G, 𝓛)`, plus closed-form bound
//! evaluators.

mod bounds;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

pub use bounds::{lower_bound_exponent, overlap_check, turan_upper_bound, upper_bound_leading, Rational};

use crate::ambient::{Ambient, Radix};
use crate::bits::Bits;
use crate::detect::{group_has_sumset_through, line_has_sumset_with_max};
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest ambient cardinality searched without `allow_large`.
    pub max_order: usize,
    pub allow_large: bool,
    /// Abort with a resource error after this many search nodes.
    pub max_nodes: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_order: 64,
            allow_large: false,
            max_nodes: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub best_size: usize,
    pub witness: GroundSet,
    pub nodes_explored: u64,
    pub runtime: Duration,
    pub pruned_by: BTreeMap<String, u64>,
}

impl SearchReport {
    pub fn to_json(&self, sig: &Signature) -> serde_json::Value {
        json!({
            "ambient": self.witness.ambient().describe(),
            "signature": sig.lengths(),
            "F": self.best_size,
            "witness": self.witness.elements(),
            "nodes": self.nodes_explored,
            "ms": self.runtime.as_millis() as u64,
        })
    }
}

struct Counters {
    nodes: AtomicU64,
    bound: AtomicU64,
    sumset: AtomicU64,
    limit: Option<u64>,
    aborted: AtomicBool,
}

impl Counters {
    fn new(limit: Option<u64>) -> Self {
        Counters {
            nodes: AtomicU64::new(0),
            bound: AtomicU64::new(0),
            sumset: AtomicU64::new(0),
            limit,
            aborted: AtomicBool::new(false),
        }
    }

    /// Counts a node; false once the node budget is spent.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| n > l) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn check(&self) -> Result<()> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::Resource(format!(
                "search exceeded {} nodes",
                self.limit.unwrap_or_default()
            )));
        }
        Ok(())
    }

    fn pruned(&self) -> BTreeMap<String, u64> {
        let mut m = BTreeMap::new();
        m.insert("bound".to_string(), self.bound.load(Ordering::Relaxed));
        m.insert("sumset".to_string(), self.sumset.load(Ordering::Relaxed));
        m
    }
}

fn guard(ambient: &Ambient, options: &SearchOptions) -> Result<()> {
    let card = ambient.cardinality();
    if card > options.max_order && !options.allow_large {
        return Err(Error::Resource(format!(
            "{} has {card} elements, above the search limit {}; pass an explicit override",
            ambient.describe(),
            options.max_order
        )));
    }
    Ok(())
}

/// Exact maximum size of an 𝓛-free subset of `ambient`, with a witness.
pub fn max_free_set(ambient: &Ambient, sig: &Signature, options: &SearchOptions) -> Result<SearchReport> {
    guard(ambient, options)?;
    let started = Instant::now();
    let card = ambient.cardinality();
    let counters = Counters::new(options.max_nodes);
    let (best, indices, mut pruned) = if sig.r() == 1 {
        // any ℓ₁ elements form a sumset, any ℓ₁−1 do not
        let k = card.min(sig.largest() - 1);
        let mut pruned = BTreeMap::new();
        pruned.insert("trivial".to_string(), 1);
        (k, (0..k).collect(), pruned)
    } else {
        match ambient {
            Ambient::Interval { .. } => {
                let (profile, witness) = line_profile(card, sig, &counters)?;
                (profile[card], witness, counters.pruned())
            }
            Ambient::Product { moduli } => {
                let radix = Radix::new(moduli);
                let (best, witness, cand) = group_search(&radix, sig, &counters)?;
                let mut pruned = counters.pruned();
                pruned.insert("candidates".to_string(), cand);
                (best, witness, pruned)
            }
        }
    };
    pruned.retain(|_, v| *v > 0);
    let witness = GroundSet::from_bits(ambient.clone(), Bits::from_indices(card, indices));
    debug_assert!(crate::detect::is_free(&witness, sig));
    Ok(SearchReport {
        best_size: best,
        witness,
        nodes_explored: counters.nodes.load(Ordering::Relaxed),
        runtime: started.elapsed(),
        pruned_by: pruned,
    })
}

/// `F(m, 𝓛)` for every `m ≤ n` (entry `m` of the result).
pub fn interval_profile(n: usize, sig: &Signature, options: &SearchOptions) -> Result<Vec<usize>> {
    guard(&Ambient::interval(n as u64)?, options)?;
    if sig.r() == 1 {
        return Ok((0..=n).map(|m| m.min(sig.largest() - 1)).collect());
    }
    let counters = Counters::new(options.max_nodes);
    Ok(line_profile(n, sig, &counters)?.0)
}

/// Russian-doll scheme over prefixes: `F(m) ∈ {F(m−1), F(m−1)+1}`, and a
/// set of size `F(m−1)+1` in `[0, m)` must contain both `0` and `m−1`.
/// Remaining elements after `c` fit in an interval of length `m−1−c`, so at
/// most `F(m−1−c)` of them can be added.
fn line_profile(n: usize, sig: &Signature, counters: &Counters) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut profile = vec![0usize; n + 1];
    let mut witness = Vec::new();
    if n >= 1 {
        profile[1] = 1;
        witness = vec![0];
    }
    for m in 2..=n {
        let target = profile[m - 1] + 1;
        let mut base = Bits::new(m);
        base.insert(0);
        let found = if target == 2 {
            counters.tick();
            let mut b = base.clone();
            b.insert(m - 1);
            (!line_has_sumset_with_max(&b, sig, m - 1)).then(|| vec![0, m - 1])
        } else {
            let profile = &profile;
            (1..m - 1).into_par_iter().find_map_first(|c| {
                let mut bits = base.clone();
                line_try(&mut bits, 1, c, m, target, sig, profile, counters).then(|| bits.iter().collect())
            })
        };
        counters.check()?;
        match found {
            Some(w) => {
                profile[m] = target;
                witness = w;
            }
            None => profile[m] = profile[m - 1],
        }
    }
    Ok((profile, witness))
}

/// Tries adding `c` to `bits` (which holds `count` elements below `c`);
/// on success `bits` holds a free set of size `target` ending at `m−1`.
#[allow(clippy::too_many_arguments)]
fn line_try(
    bits: &mut Bits,
    count: usize,
    c: usize,
    m: usize,
    target: usize,
    sig: &Signature,
    profile: &[usize],
    counters: &Counters,
) -> bool {
    if !counters.tick() {
        return false;
    }
    if count + 1 + profile[m - 1 - c] < target {
        counters.bound.fetch_add(1, Ordering::Relaxed);
        return false;
    }
    bits.insert(c);
    if line_has_sumset_with_max(bits, sig, c) {
        counters.sumset.fetch_add(1, Ordering::Relaxed);
        bits.remove(c);
        return false;
    }
    if count + 1 == target {
        return true;
    }
    if count + 2 == target {
        if line_try(bits, count + 1, m - 1, m, target, sig, profile, counters) {
            return true;
        }
    } else {
        for d in c + 1..m - 1 {
            if count + 2 + profile[m - 1 - d] < target {
                counters.bound.fetch_add(1, Ordering::Relaxed);
                break;
            }
            if line_try(bits, count + 1, d, m, target, sig, profile, counters) {
                return true;
            }
        }
    }
    bits.remove(c);
    false
}

/// Depth-first search over sets containing 0, in increasing index order,
/// keeping only candidates that can still be added without creating a sumset.
fn group_search(radix: &Radix, sig: &Signature, counters: &Counters) -> Result<(usize, Vec<usize>, u64)> {
    let order = radix.order();
    let mut bits = Bits::new(order);
    bits.insert(0);
    let mut removed = 0u64;
    let mut state = GroupState {
        radix,
        sig,
        counters,
        best: 1,
        best_set: vec![0],
        removed: &mut removed,
    };
    if has_any(radix, &bits, sig) {
        // only possible for degenerate signatures in tiny groups
        state.best = 0;
        state.best_set.clear();
    } else {
        let cands = state.filter(&mut bits, (1..order).collect());
        state.dfs(&mut bits, 1, &cands);
    }
    counters.check()?;
    let (best, set) = (state.best, state.best_set);
    Ok((best, set, removed))
}

fn has_any(radix: &Radix, bits: &Bits, sig: &Signature) -> bool {
    bits.iter().any(|p| group_has_sumset_through(radix, bits, sig, p))
}

struct GroupState<'a> {
    radix: &'a Radix,
    sig: &'a Signature,
    counters: &'a Counters,
    best: usize,
    best_set: Vec<usize>,
    removed: &'a mut u64,
}

impl GroupState<'_> {
    fn filter(&mut self, bits: &mut Bits, cands: Vec<usize>) -> Vec<usize> {
        let before = cands.len();
        let kept: Vec<usize> = cands
            .into_iter()
            .filter(|&d| {
                bits.insert(d);
                let ok = !group_has_sumset_through(self.radix, bits, self.sig, d);
                bits.remove(d);
                ok
            })
            .collect();
        *self.removed += (before - kept.len()) as u64;
        kept
    }

    fn dfs(&mut self, bits: &mut Bits, count: usize, cands: &[usize]) {
        if !self.counters.tick() {
            return;
        }
        if count > self.best {
            self.best = count;
            self.best_set = bits.iter().collect();
        }
        for (i, &c) in cands.iter().enumerate() {
            if count + cands.len() - i <= self.best {
                self.counters.bound.fetch_add(1, Ordering::Relaxed);
                return;
            }
            bits.insert(c);
            let next = self.filter(bits, cands[i + 1..].to_vec());
            self.dfs(bits, count + 1, &next);
            bits.remove(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn f(n: u64, s: &str) -> SearchReport {
        max_free_set(&Ambient::interval(n).unwrap(), &sig(s), &SearchOptions::default()).unwrap()
    }

    #[test]
    fn small_interval_values() {
        assert_eq!(f(7, "2,2").best_size, 4);
        assert_eq!(f(12, "2,2").best_size, 5);
        assert_eq!(f(5, "2,3").best_size, 4);
        for n in 1..=12u64 {
            for l in 2..=6usize {
                assert_eq!(f(n, &l.to_string()).best_size, (n as usize).min(l - 1));
            }
        }
    }

    #[test]
    fn witness_is_free_and_sized() {
        let r = f(12, "2,2");
        assert_eq!(r.witness.len(), 5);
        assert!(crate::detect::is_free(&r.witness, &sig("2,2")));
        assert_eq!(r.witness.ints().unwrap()[0], 1);
    }

    #[test]
    fn guards_and_budgets() {
        let big = Ambient::interval(65).unwrap();
        assert!(matches!(
            max_free_set(&big, &sig("2,2"), &SearchOptions::default()),
            Err(Error::Resource(_))
        ));
        let opts = SearchOptions {
            max_nodes: Some(5),
            ..SearchOptions::default()
        };
        assert!(matches!(
            max_free_set(&Ambient::interval(30).unwrap(), &sig("2,2"), &opts),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn cyclic_groups() {
        let z7 = Ambient::cyclic(7).unwrap();
        let r = max_free_set(&z7, &sig("2,2"), &SearchOptions::default()).unwrap();
        // {0,1,3} is a perfect difference set mod 7
        assert_eq!(r.best_size, 3);
        assert!(crate::detect::is_free(&r.witness, &sig("2,2")));
    }

    #[test]
    fn json_shape() {
        let r = f(7, "2,2");
        let v = r.to_json(&sig("2,2"));
        assert_eq!(v["F"], 4);
        assert_eq!(v["signature"], json!([2, 2]));
        assert_eq!(v["ambient"], "interval n=7");
    }
}
