use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Shape `(r; ℓ₁ ≤ ⋯ ≤ ℓᵣ)` of the forbidden sumsets `L₁ + ⋯ + Lᵣ`, `|Lᵢ| = ℓᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    lengths: Vec<usize>,
}

impl Signature {
    /// Sorts the lengths ascending. Every length must be at least 2.
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if let Some(l) = lengths.iter().find(|&&l| l < 2) {
            return Err(Error::InvalidSignature(format!("summand size {l} < 2")));
        }
        lengths.sort_unstable();
        let sig = Signature { lengths };
        sig.lengths
            .iter()
            .try_fold(1u64, |acc, &l| acc.checked_mul(l as u64))
            .ok_or_else(|| Error::InvalidSignature("summand product overflows".into()))?;
        Ok(sig)
    }

    /// The Hilbert-cube signature `(2, …, 2)` of length `r`.
    pub fn cube(r: usize) -> Result<Self> {
        Self::new(vec![2; r])
    }

    pub fn r(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// `ℓ₁⋯ℓᵣ`.
    pub fn product(&self) -> u64 {
        self.lengths.iter().map(|&l| l as u64).product()
    }

    /// `ℓ₁⋯ℓ_{r−1}`; equals 1 when `r = 1`.
    pub fn prefix_product(&self) -> u64 {
        self.lengths[..self.r() - 1].iter().map(|&l| l as u64).product()
    }

    /// `ℓ₁+⋯+ℓᵣ`.
    pub fn sum(&self) -> u64 {
        self.lengths.iter().map(|&l| l as u64).sum()
    }

    pub fn largest(&self) -> usize {
        *self.lengths.last().expect("nonempty")
    }

    /// `(ℓ₂, …, ℓᵣ)`, or `None` when `r = 1`.
    pub fn tail(&self) -> Option<Signature> {
        (self.r() > 1).then(|| Signature {
            lengths: self.lengths[1..].to_vec(),
        })
    }

    /// Signatures of the form `(2, ℓ)` or `(2, …, 2)` with `r ≥ 2`.
    pub fn is_two_ell_or_cube(&self) -> bool {
        self.r() >= 2 && (self.lengths.iter().all(|&l| l == 2) || (self.r() == 2 && self.lengths[0] == 2))
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSignature(format!("not a summand size: {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(lengths)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.lengths.serialize(s)
    }
}
