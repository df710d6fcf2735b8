use std::collections::BTreeMap;

use crate::ambient::Ambient;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::set::GroundSet;

/// No `x < y < z` in `values` with `x + z = 2y`.
pub fn is_ap3_free(values: &[i64]) -> bool {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    let present: std::collections::HashSet<i64> = v.iter().copied().collect();
    for (i, &x) in v.iter().enumerate() {
        for &z in v.get(i + 2..).unwrap_or_default() {
            if (x + z) % 2 == 0 && present.contains(&((x + z) / 2)) {
                return false;
            }
        }
    }
    true
}

/// Numbers below `n` whose base-`2d−1` digits are all `< d`, paired with
/// the sum of squared digits.
fn digit_box(n: u64, d: u64) -> Vec<(u64, u64)> {
    let base = 2 * d - 1;
    let mut weights = vec![1u64];
    while let Some(&w) = weights.last() {
        match w.checked_mul(base) {
            Some(next) if next < n => weights.push(next),
            _ => break,
        }
    }
    let mut out = Vec::new();
    fn rec(weights: &[u64], d: u64, n: u64, value: u64, norm: u64, out: &mut Vec<(u64, u64)>) {
        let Some((&w, rest)) = weights.split_last() else {
            out.push((value, norm));
            return;
        };
        for a in 0..d {
            let v = value + a * w;
            if v >= n {
                break;
            }
            rec(rest, d, n, v, norm + a * a, out);
        }
    }
    rec(&weights, d, n, 0, 0, &mut out);
    out
}

/// Values in `[0, n)`: the best of Behrend's sphere shells over digit
/// bases `2d−1` and the base-3 set with digits in `{0,1}`.
pub(crate) fn behrend_values(n: u64) -> Vec<u64> {
    if n <= 2 {
        return (0..n).collect();
    }
    let mut best: Vec<u64> = digit_box(n, 2).into_iter().map(|(v, _)| v).collect();
    let dmax = (n as f64).sqrt() as u64 + 2;
    let mut d = 3;
    while d <= dmax && 2 * d - 1 <= n {
        let mut shells: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (v, norm) in digit_box(n, d) {
            shells.entry(norm).or_default().push(v);
        }
        if let Some(shell) = shells.into_values().rev().max_by_key(|s| s.len()) {
            if shell.len() > best.len() {
                best = shell;
            }
        }
        d += 1;
    }
    best.sort_unstable();
    best
}

/// A 3-AP-free subset of `[1, n]`.
pub fn behrend_set(n: u64) -> Result<GroundSet> {
    behrend_set_in(Ambient::interval(n)?)
}

/// A 3-AP-free subset of an interval ambient.
pub fn behrend_set_in(ambient: Ambient) -> Result<GroundSet> {
    if ambient.is_group() {
        return Err(Error::InvalidInput("Behrend sets live in intervals".into()));
    }
    let n = ambient.cardinality();
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let bits = Bits::from_indices(n, behrend_values(n as u64).into_iter().map(|v| v as usize));
    Ok(GroundSet::from_bits(ambient, bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(behrend_set(1).unwrap().ints().unwrap(), vec![1]);
        let b14 = behrend_set(14).unwrap();
        assert!(b14.len() >= 8);
        assert!(is_ap3_free(&b14.ints().unwrap()));
        assert!(behrend_set(0).is_err());
    }

    #[test]
    fn ap3_oracle_agrees() {
        assert!(!is_ap3_free(&[1, 5, 3]));
        assert!(is_ap3_free(&[1, 2, 4, 5]));
        assert!(!is_ap3_free(&[2, 4, 5, 6]));
    }

    #[test]
    fn shells_beat_ternary_eventually() {
        let n = 50_000;
        let ternary = digit_box(n, 2).len();
        assert!(behrend_values(n).len() >= ternary);
    }
}
