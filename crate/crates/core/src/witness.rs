use serde::Serialize;

use crate::ambient::{Ambient, Element};
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;

/// A decomposition `offset + L₁ + ⋯ + Lᵣ` certifying that a set contains a
/// sumset.
///
/// In canonical form every `Lᵢ` is sorted and has its basepoint at zero: the
/// minimum for integers; for groups, the element `λ ∈ Lᵢ` making the sorted
/// list `Lᵢ − λ` lexicographically smallest (smallest such `λ` on ties).
/// The removed translation is absorbed into `offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SumsetWitness {
    pub offset: Element,
    pub summands: Vec<Vec<Element>>,
}

/// Iterates multi-indices `(i₁, …, iᵣ)`, zero-based, first coordinate fastest.
pub(crate) fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    (0..total).map(move |mut k| {
        shape
            .iter()
            .map(|&l| {
                let i = k % l;
                k /= l;
                i
            })
            .collect()
    })
}

/// Returns `(basepoint, L − basepoint sorted)` for one summand.
pub(crate) fn canonical_summand(ambient: &Ambient, summand: &[Element]) -> Result<(Element, Vec<Element>)> {
    if summand.is_empty() {
        return Err(Error::Structural("empty summand".into()));
    }
    let reduced: Vec<Element> = summand.iter().map(|e| ambient.reduce(e)).collect::<Result<_>>()?;
    match ambient {
        Ambient::Interval { .. } => {
            let base = reduced.iter().min().expect("nonempty").clone();
            let mut out: Vec<Element> = reduced.iter().map(|e| ambient.sub(e, &base)).collect::<Result<_>>()?;
            out.sort();
            Ok((base, out))
        }
        Ambient::Product { .. } => {
            let mut best: Option<(Element, Vec<Element>)> = None;
            let mut bases = reduced.clone();
            bases.sort();
            for base in bases {
                let mut shifted: Vec<Element> = reduced.iter().map(|e| ambient.sub(e, &base)).collect::<Result<_>>()?;
                shifted.sort();
                if best.as_ref().is_none_or(|(_, b)| shifted < *b) {
                    best = Some((base, shifted));
                }
            }
            Ok(best.expect("nonempty"))
        }
    }
}

impl SumsetWitness {
    pub fn new(offset: Element, summands: Vec<Vec<Element>>) -> Self {
        SumsetWitness { offset, summands }
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.summands.iter().map(Vec::len).collect())
    }

    pub fn canonicalize(&self, ambient: &Ambient) -> Result<SumsetWitness> {
        let mut offset = ambient.reduce(&self.offset)?;
        let mut summands = Vec::with_capacity(self.summands.len());
        for s in &self.summands {
            let (base, norm) = canonical_summand(ambient, s)?;
            offset = ambient.add(&offset, &base)?;
            summands.push(norm);
        }
        Ok(SumsetWitness { offset, summands })
    }

    pub fn is_canonical(&self, ambient: &Ambient) -> bool {
        self.canonicalize(ambient).is_ok_and(|c| c == *self)
    }

    /// All `ℓ₁⋯ℓᵣ` sums `offset + λ₁ + ⋯ + λᵣ`, first summand fastest.
    pub fn values(&self, ambient: &Ambient) -> Result<Vec<Element>> {
        let shape: Vec<usize> = self.summands.iter().map(Vec::len).collect();
        multi_indices(&shape)
            .map(|ix| {
                ix.iter()
                    .zip(&self.summands)
                    .try_fold(self.offset.clone(), |acc, (&i, s)| ambient.add(&acc, &s[i]))
            })
            .collect()
    }

    /// Checks the witness invariants against `set`: distinct elements within
    /// each summand, and every sum inside the set.
    pub fn verify(&self, set: &GroundSet) -> bool {
        let ambient = set.ambient();
        let distinct = self.summands.iter().all(|s| {
            let mut v: Vec<Element> = match s.iter().map(|e| ambient.reduce(e)).collect::<Result<_>>() {
                Ok(v) => v,
                Err(_) => return false,
            };
            v.sort();
            v.dedup();
            v.len() == s.len() && s.len() >= 2
        });
        distinct
            && self
                .values(ambient)
                .is_ok_and(|vals| vals.iter().all(|v| set.contains(v)))
    }

    /// The largest sum (integers only).
    pub fn max_value(&self) -> Option<i64> {
        let mut m = self.offset.as_int()?;
        for s in &self.summands {
            m += s.iter().map(|e| e.as_int()).collect::<Option<Vec<_>>>()?.into_iter().max()?;
        }
        Some(m)
    }
}
