use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::Serialize;

use super::{visit_raw, Anchor, Raw};
use crate::ambient::Ambient;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::witness::multi_indices;

/// Whether some sum `λ₁ + ⋯ + λᵣ` is hit by two different tuples.
pub fn is_degenerate(summands: &[Vec<i64>]) -> bool {
    first_collision(summands).is_some()
}

fn first_collision(summands: &[Vec<i64>]) -> Option<(Vec<i64>, Vec<i64>)> {
    let shape: Vec<usize> = summands.iter().map(Vec::len).collect();
    let mut seen: HashMap<i64, Vec<i64>> = HashMap::new();
    // lexicographic tuple order: last coordinate fastest
    let rev_shape: Vec<usize> = shape.iter().rev().copied().collect();
    for rix in multi_indices(&rev_shape) {
        let tuple: Vec<i64> = rix.iter().rev().zip(summands).map(|(&i, s)| s[i]).collect();
        let sum = tuple.iter().sum();
        if let Some(prev) = seen.get(&sum) {
            return Some((tuple, prev.clone()));
        }
        seen.insert(sum, tuple);
    }
    None
}

/// A 3-term progression `(a, a+d, a+2d)`, `d > 0`, inside a degenerate
/// sumset, taken from the first collision `x₁+⋯+xᵣ = y₁+⋯+yᵣ` and the first
/// coordinate `k` with `x_k ≠ y_k`.
pub fn ap3_of_degenerate(summands: &[Vec<i64>]) -> Result<(i64, i64, i64)> {
    let (mut x, mut y) =
        first_collision(summands).ok_or_else(|| Error::Precondition("sumset is not degenerate".into()))?;
    let k = (0..x.len()).find(|&k| x[k] != y[k]).expect("distinct tuples");
    if x[k] < y[k] {
        std::mem::swap(&mut x, &mut y);
    }
    let diff = x[k] - y[k];
    let mid: i64 = x.iter().sum();
    Ok((mid - diff, mid, mid + diff))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SumsetCount {
    pub decompositions: u64,
    pub distinct_value_sets: u64,
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Counts canonical decompositions with every sum in `[1, n]` and the
/// distinct value sets among them. `budget` caps the size of the
/// decomposition space `n·Π C(n, ℓᵢ−1)`.
pub fn count_all_sumsets(n: u64, sig: &Signature, budget: u64) -> Result<SumsetCount> {
    let space = sig
        .lengths()
        .iter()
        .fold(n as f64, |acc, &l| acc * binom(n, l as u64 - 1));
    if space > budget as f64 {
        return Err(Error::Resource(format!(
            "decomposition space {space:.3e} exceeds budget {budget}"
        )));
    }
    let ambient = Ambient::interval(n)?;
    let full = Bits::from_indices(n as usize, 0..n as usize);
    let shape = sig.lengths().to_vec();
    let mut decompositions = 0u64;
    let mut sets: HashSet<Bits> = HashSet::new();
    visit_raw(&ambient, &full, sig, Anchor::Free, &mut |raw: &Raw| {
        decompositions += 1;
        let mut vals = Bits::new(n as usize);
        for ix in multi_indices(&shape) {
            let v = raw.offset + ix.iter().zip(&raw.summands).map(|(&i, s)| s[i]).sum::<usize>();
            vals.insert(v);
        }
        sets.insert(vals);
        ControlFlow::Continue(())
    });
    Ok(SumsetCount {
        decompositions,
        distinct_value_sets: sets.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy() {
        assert!(is_degenerate(&[vec![0, 1], vec![0, 1]]));
        assert!(!is_degenerate(&[vec![0, 1], vec![0, 2]]));
        assert!(!is_degenerate(&[vec![0, 1], vec![0, 2], vec![0, 4]]));
    }

    #[test]
    fn progressions_from_collisions() {
        assert_eq!(ap3_of_degenerate(&[vec![0, 1], vec![0, 1]]).unwrap(), (0, 1, 2));
        assert_eq!(ap3_of_degenerate(&[vec![0, 2], vec![0, 2]]).unwrap(), (0, 2, 4));
        let (a, b, c) = ap3_of_degenerate(&[vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert!(b - a == c - b && b > a);
        assert!([a, b, c].iter().all(|v| (0..=3).contains(v)));
        assert!(matches!(ap3_of_degenerate(&[vec![0, 1], vec![0, 2]]), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_counts() {
        let s: Signature = "2,2".parse().unwrap();
        assert_eq!(
            count_all_sumsets(4, &s, 1 << 20).unwrap(),
            SumsetCount { decompositions: 4, distinct_value_sets: 3 }
        );
        assert_eq!(
            count_all_sumsets(2, &s, 1 << 20).unwrap(),
            SumsetCount { decompositions: 0, distinct_value_sets: 0 }
        );
        assert!(matches!(count_all_sumsets(400, &s, 1000), Err(Error::Resource(_))));
    }
}
