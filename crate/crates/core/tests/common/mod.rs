//! Brute-force oracles that share no code with the library's search paths.
#![allow(dead_code)]

/// All `k`-subsets of `items`, lexicographic.
pub fn subsets(items: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Every decomposition `x + L₁ + ⋯ + Lᵣ ⊆ A` with `0 = min Lᵢ`, summands in
/// signature order, as `(x, [L₁, …, Lᵣ])`. Since every `Lᵢ` contains 0 the
/// offset is itself in `A`, and each `Lᵢ ⊆ (A − x) ∪ {0}`.
pub fn decompositions(a: &[i64], lengths: &[usize]) -> Vec<(i64, Vec<Vec<i64>>)> {
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    let mut out = Vec::new();
    for &x in &a {
        let diffs: Vec<i64> = a.iter().filter(|&&v| v > x).map(|&v| v - x).collect();
        let choices: Vec<Vec<Vec<i64>>> = lengths
            .iter()
            .map(|&l| {
                subsets(&diffs, l - 1)
                    .into_iter()
                    .map(|mut s| {
                        s.insert(0, 0);
                        s
                    })
                    .collect()
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        // odometer over one choice per summand, first summand fastest
        let mut idx = vec![0usize; lengths.len()];
        'outer: loop {
            let summands: Vec<Vec<i64>> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            if sums(x, &summands).iter().all(|s| a.binary_search(s).is_ok()) {
                out.push((x, summands));
            }
            for k in 0..idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    out
}

pub fn sums(x: i64, summands: &[Vec<i64>]) -> Vec<i64> {
    let mut vals = vec![x];
    for s in summands {
        vals = vals.iter().flat_map(|&v| s.iter().map(move |&d| v + d)).collect();
    }
    vals
}

pub fn brute_free(a: &[i64], lengths: &[usize]) -> bool {
    decompositions(a, lengths).is_empty()
}

/// Bitmasks over `[0, n)` of every sumset value set, minimal ones only.
pub fn obstruction_masks(n: usize, lengths: &[usize]) -> Vec<u32> {
    let all: Vec<i64> = (0..n as i64).collect();
    let mut masks: Vec<u32> = decompositions(&all, lengths)
        .into_iter()
        .map(|(x, s)| sums(x, &s).iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&q| q & m == q) {
            minimal.push(m);
        }
    }
    minimal
}

/// `F(m)` for `m ≤ n` by checking every subset of `[0, n)`.
pub fn exhaustive_profile(n: usize, lengths: &[usize]) -> Vec<usize> {
    assert!(n <= 24);
    let obstructions = obstruction_masks(n, lengths);
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); n];
    for m in obstructions {
        by_top[31 - m.leading_zeros() as usize].push(m);
    }
    let mut free = vec![false; 1 << n];
    free[0] = true;
    let mut best = vec![0usize; n + 1];
    for mask in 1u32..(1 << n) {
        let top = 31 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        if free[rest as usize] && !by_top[top].iter().any(|&q| q & mask == q) {
            free[mask as usize] = true;
            let c = mask.count_ones() as usize;
            best[top + 1] = best[top + 1].max(c);
        }
    }
    for m in 1..=n {
        best[m] = best[m].max(best[m - 1]);
    }
    best
}

/// Cubic scan for `x < y < z` with `x + z = 2y`.
pub fn has_ap3(values: &[i64]) -> bool {
    for &x in values {
        for &y in values {
            for &z in values {
                if x < y && y < z && x + z == 2 * y {
                    return true;
                }
            }
        }
    }
    false
}

/// `ex(n, C₄)` over all graphs on `n ≤ 7` vertices.
pub fn ex_c4(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = 0;
    for g in 0u64..(1 << pairs.len()) {
        let mut adj = vec![0u32; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if g >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (adj[i] & adj[j]).count_ones() <= 1));
        if ok {
            best = best.max(g.count_ones() as usize);
        }
    }
    best
}

/// Ordered-pair differences of distinct elements are distinct modulo `n`
/// (`n = 0` for the integers).
pub fn sidon_oracle(values: &[i64], n: i64) -> bool {
    let mut seen = std::collections::HashSet::new();
    for &x in values {
        for &y in values {
            if x != y {
                let d = if n > 0 { (x - y).rem_euclid(n) } else { x - y };
                if !seen.insert(d) {
                    return false;
                }
            }
        }
    }
    true
}
