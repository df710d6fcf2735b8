use std::collections::HashMap;

use crate::ambient::{Ambient, Element};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::witness::multi_indices;

/// Values `x_{i₁⋯iᵣ}`, `1 ≤ iₛ ≤ ℓₛ`, stored with the first index varying
/// fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMultiset {
    ambient: Ambient,
    signature: Signature,
    values: Vec<Element>,
}

impl IndexedMultiset {
    /// Takes `(multi-index, value)` pairs with one-based indices; every index
    /// in the box must appear exactly once.
    pub fn from_entries(ambient: Ambient, signature: Signature, entries: Vec<(Vec<usize>, Element)>) -> Result<Self> {
        let shape = signature.lengths().to_vec();
        let total = signature.product() as usize;
        let mut slots: Vec<Option<Element>> = vec![None; total];
        for (ix, v) in entries {
            if ix.len() != shape.len() {
                return Err(Error::Structural(format!("multi-index {ix:?} has wrong length")));
            }
            let mut flat = 0;
            let mut stride = 1;
            for (&i, &l) in ix.iter().zip(&shape) {
                if i == 0 || i > l {
                    return Err(Error::Structural(format!("multi-index {ix:?} out of range")));
                }
                flat += (i - 1) * stride;
                stride *= l;
            }
            if slots[flat].replace(ambient.reduce(&v)?).is_some() {
                return Err(Error::Structural(format!("multi-index {ix:?} repeated")));
            }
        }
        let values = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Structural("multi-index set incomplete".into()))?;
        Ok(IndexedMultiset { ambient, signature, values })
    }

    /// Indexes the sums of a genuine sumset: `x_{i₁⋯iᵣ} = Σ λ_{s,iₛ}`.
    pub fn from_summands(ambient: Ambient, summands: &[Vec<Element>]) -> Result<Self> {
        let signature = Signature::new(summands.iter().map(Vec::len).collect())?;
        let shape: Vec<usize> = summands.iter().map(Vec::len).collect();
        if shape != signature.lengths() {
            return Err(Error::Structural("summands must be listed in nondecreasing size".into()));
        }
        let values = multi_indices(&shape)
            .map(|ix| {
                ix.iter()
                    .zip(summands)
                    .try_fold(ambient.zero(), |acc, (&i, s)| ambient.add(&acc, &s[i]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IndexedMultiset { ambient, signature, values })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Zero-based multi-index lookup.
    fn at(&self, ix: &[usize]) -> &Element {
        let mut flat = 0;
        let mut stride = 1;
        for (&i, &l) in ix.iter().zip(self.signature.lengths()) {
            flat += i * stride;
            stride *= l;
        }
        &self.values[flat]
    }

    /// One-based lookup.
    pub fn get(&self, ix: &[usize]) -> Option<&Element> {
        let shape = self.signature.lengths();
        if ix.len() != shape.len() || ix.iter().zip(shape).any(|(&i, &l)| i == 0 || i > l) {
            return None;
        }
        let zero_based: Vec<usize> = ix.iter().map(|i| i - 1).collect();
        Some(self.at(&zero_based))
    }

    /// The sum equalities `x_{1⋯1} + x_{1⋯1 iₛ iₛ₊₁⋯iᵣ} = x_{1⋯1 iₛ 1⋯1} + x_{1⋯1 iₛ₊₁⋯iᵣ}`
    /// as zero-based `(lhs₂, rhs₁, rhs₂)` multi-index triples (`lhs₁` is the
    /// all-ones corner).
    pub(crate) fn equalities(shape: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let r = shape.len();
        let mut out = Vec::new();
        for s in 0..r.saturating_sub(1) {
            let tail_shape = &shape[s + 1..];
            for tail in multi_indices(tail_shape) {
                if tail.iter().all(|&t| t == 0) {
                    continue;
                }
                for is in 1..shape[s] {
                    let mut full = vec![0; r];
                    full[s] = is;
                    full[s + 1..].copy_from_slice(&tail);
                    let mut unit = vec![0; r];
                    unit[s] = is;
                    let mut rest = vec![0; r];
                    rest[s + 1..].copy_from_slice(&tail);
                    out.push((full, unit, rest));
                }
            }
        }
        out
    }
}

fn unit_index(r: usize, s: usize, i: usize) -> Vec<usize> {
    let mut v = vec![0; r];
    v[s] = i;
    v
}

/// Checks the distinctness conditions and sum equalities characterizing a
/// sumset; on success returns `L₁ = {x_{i1⋯1}}` (not normalized) and
/// `Lₛ = {x_{1⋯iₛ⋯1}} − x_{1⋯1}` for `s ≥ 2`.
pub fn verify_multiset(x: &IndexedMultiset) -> Option<Vec<Vec<Element>>> {
    let amb = &x.ambient;
    let shape = x.signature.lengths();
    let r = shape.len();
    for (s, &l) in shape.iter().enumerate() {
        let mut seen = HashMap::new();
        for i in 0..l {
            if seen.insert(x.at(&unit_index(r, s, i)).clone(), i).is_some() {
                return None;
            }
        }
    }
    let corner = x.at(&vec![0; r]).clone();
    for (full, unit, rest) in IndexedMultiset::equalities(shape) {
        let lhs = amb.add(&corner, x.at(&full)).ok()?;
        let rhs = amb.add(x.at(&unit), x.at(&rest)).ok()?;
        if lhs != rhs {
            return None;
        }
    }
    let mut summands = Vec::with_capacity(r);
    summands.push((0..shape[0]).map(|i| x.at(&unit_index(r, 0, i)).clone()).collect());
    for (s, &l) in shape.iter().enumerate().skip(1) {
        let ls = (0..l)
            .map(|i| amb.sub(x.at(&unit_index(r, s, i)), &corner))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        summands.push(ls);
    }
    Some(summands)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries22(v: [i64; 4]) -> Vec<(Vec<usize>, Element)> {
        // x11, x21, x12, x22
        vec![
            (vec![1, 1], Element::Int(v[0])),
            (vec![2, 1], Element::Int(v[1])),
            (vec![1, 2], Element::Int(v[2])),
            (vec![2, 2], Element::Int(v[3])),
        ]
    }

    fn ms(v: [i64; 4]) -> IndexedMultiset {
        IndexedMultiset::from_entries(Ambient::interval(10).unwrap(), "2,2".parse().unwrap(), entries22(v)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Element> {
        v.iter().map(|&x| Element::Int(x)).collect()
    }

    #[test]
    fn reconstructs_two_by_two() {
        assert_eq!(verify_multiset(&ms([0, 1, 2, 3])), Some(vec![ints(&[0, 1]), ints(&[0, 2])]));
        assert_eq!(verify_multiset(&ms([0, 1, 2, 4])), None);
        assert_eq!(verify_multiset(&ms([0, 0, 2, 2])), None);
    }

    #[test]
    fn equality_count_matches_formula() {
        for shape in [vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![3, 3, 4], vec![2, 3, 3, 5]] {
            let prod: usize = shape.iter().product();
            let sum: usize = shape.iter().sum();
            let expect = prod + shape.len() - 1 - sum;
            assert_eq!(IndexedMultiset::equalities(&shape).len(), expect, "{shape:?}");
        }
    }

    #[test]
    fn malformed_index_sets() {
        let amb = Ambient::interval(10).unwrap();
        let sig: Signature = "2,2".parse().unwrap();
        let mut e = entries22([0, 1, 2, 3]);
        e.pop();
        assert!(matches!(IndexedMultiset::from_entries(amb.clone(), sig.clone(), e), Err(Error::Structural(_))));
        let mut e = entries22([0, 1, 2, 3]);
        e[3].0 = vec![3, 1];
        assert!(matches!(IndexedMultiset::from_entries(amb.clone(), sig.clone(), e), Err(Error::Structural(_))));
        let mut e = entries22([0, 1, 2, 3]);
        e[3].0 = vec![1, 1];
        assert!(matches!(IndexedMultiset::from_entries(amb, sig, e), Err(Error::Structural(_))));
    }

    #[test]
    fn from_summands_round_trip() {
        let amb = Ambient::interval(100).unwrap();
        let ls = vec![ints(&[3, 5]), ints(&[0, 7]), ints(&[0, 20, 41])];
        let x = IndexedMultiset::from_summands(amb, &ls).unwrap();
        assert_eq!(x.get(&[2, 2, 3]), Some(&Element::Int(5 + 7 + 41)));
        assert_eq!(verify_multiset(&x), Some(ls));
    }
}
