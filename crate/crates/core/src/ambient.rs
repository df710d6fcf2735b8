//! Ground structures: an integer interval or a finite product of cyclic groups.
//!
//! Every ambient has a *linear index* in `[0, cardinality)`. For an interval
//! starting at `s` the index of `v` is `v - s`; for a product the index is the
//! big-endian mixed-radix number of the residue tuple, so index order is the
//! lexicographic order of tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Int(i64),
    Tuple(Vec<u64>),
}

impl Element {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Int(v) => Some(*v),
            Element::Tuple(_) => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[u64]> {
        match self {
            Element::Tuple(t) => Some(t),
            Element::Int(_) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Tuple(t) => {
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<i64> for Element {
    fn from(v: i64) -> Self {
        Element::Int(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// The integers `start, start+1, …, start+n-1`.
    Interval { start: i64, n: u64 },
    /// `Z_{n_1} × ⋯ × Z_{n_k}`.
    Product { moduli: Vec<u64> },
}

impl Ambient {
    /// The interval `{1, …, n}`.
    pub fn interval(n: u64) -> Result<Self> {
        Self::interval_from(1, n)
    }

    pub fn interval_from(start: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("interval must be nonempty".into()));
        }
        Ok(Ambient::Interval { start, n })
    }

    pub fn product(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidInput("product needs at least one modulus".into()));
        }
        if moduli.iter().any(|&m| m == 0) {
            return Err(Error::InvalidInput("moduli must be at least 1".into()));
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&c| c <= usize::MAX as u64 / 2)
            .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
        Ok(Ambient::Product { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::product(vec![n])
    }

    pub fn is_group(&self) -> bool {
        matches!(self, Ambient::Product { .. })
    }

    pub fn cardinality(&self) -> usize {
        match self {
            Ambient::Interval { n, .. } => *n as usize,
            Ambient::Product { moduli } => moduli.iter().product::<u64>() as usize,
        }
    }

    /// The additive identity; for intervals the integer 0 (which need not lie
    /// in the carrier).
    pub fn zero(&self) -> Element {
        match self {
            Ambient::Interval { .. } => Element::Int(0),
            Ambient::Product { moduli } => Element::Tuple(vec![0; moduli.len()]),
        }
    }

    fn check(&self, e: &Element) -> Result<()> {
        match (self, e) {
            (Ambient::Interval { .. }, Element::Int(_)) => Ok(()),
            (Ambient::Product { moduli }, Element::Tuple(t)) if t.len() == moduli.len() => Ok(()),
            (Ambient::Product { moduli }, Element::Tuple(t)) => Err(Error::Structural(format!(
                "tuple of arity {} in a product of {} cyclic groups",
                t.len(),
                moduli.len()
            ))),
            (Ambient::Interval { .. }, Element::Tuple(_)) => {
                Err(Error::Structural("tuple element in an integer ambient".into()))
            }
            (Ambient::Product { .. }, Element::Int(_)) => {
                Err(Error::Structural("integer element in a product ambient".into()))
            }
        }
    }

    /// Whether `e` belongs to the carrier (interval range, or reduced residues).
    pub fn contains(&self, e: &Element) -> bool {
        self.index_of(e).is_some()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        match (self, e) {
            (Ambient::Interval { start, n }, Element::Int(v)) => {
                let off = v.checked_sub(*start)?;
                (off >= 0 && (off as u64) < *n).then_some(off as usize)
            }
            (Ambient::Product { moduli }, Element::Tuple(t)) if t.len() == moduli.len() => {
                let mut idx = 0usize;
                for (&x, &m) in t.iter().zip(moduli) {
                    if x >= m {
                        return None;
                    }
                    idx = idx * m as usize + x as usize;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    pub fn element_at(&self, idx: usize) -> Element {
        match self {
            Ambient::Interval { start, .. } => Element::Int(start + idx as i64),
            Ambient::Product { moduli } => {
                let mut t = vec![0u64; moduli.len()];
                let mut rest = idx as u64;
                for (slot, &m) in t.iter_mut().zip(moduli).rev() {
                    *slot = rest % m;
                    rest /= m;
                }
                Element::Tuple(t)
            }
        }
    }

    /// Reduces residues of a tuple modulo the moduli; identity on integers.
    pub fn reduce(&self, e: &Element) -> Result<Element> {
        self.check(e)?;
        Ok(match (self, e) {
            (Ambient::Product { moduli }, Element::Tuple(t)) => {
                Element::Tuple(t.iter().zip(moduli).map(|(&x, &m)| x % m).collect())
            }
            _ => e.clone(),
        })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Ambient::Interval { .. }, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (Ambient::Product { moduli }, Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
                x.iter()
                    .zip(y)
                    .zip(moduli)
                    .map(|((&u, &v), &m)| ((u % m) + (v % m)) % m)
                    .collect(),
            ),
            _ => unreachable!("checked above"),
        })
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Ambient::Interval { .. }, Element::Int(x), Element::Int(y)) => Element::Int(x - y),
            (Ambient::Product { moduli }, Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
                x.iter()
                    .zip(y)
                    .zip(moduli)
                    .map(|((&u, &v), &m)| ((u % m) + m - (v % m)) % m)
                    .collect(),
            ),
            _ => unreachable!("checked above"),
        })
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.sub(&self.zero(), a)
    }

    /// Header line of the set file format, without the leading `#ambient `.
    pub fn describe(&self) -> String {
        match self {
            Ambient::Interval { start: 1, n } => format!("interval n={n}"),
            Ambient::Interval { start, n } => format!("interval n={n} start={start}"),
            Ambient::Product { moduli } => {
                let m: Vec<String> = moduli.iter().map(u64::to_string).collect();
                format!("product {}", m.join(","))
            }
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Index-level arithmetic for a product of cyclic groups.
#[derive(Clone, Debug)]
pub(crate) struct Radix {
    moduli: Vec<usize>,
    order: usize,
}

impl Radix {
    pub(crate) fn new(moduli: &[u64]) -> Self {
        let moduli: Vec<usize> = moduli.iter().map(|&m| m as usize).collect();
        let order = moduli.iter().product();
        Radix { moduli, order }
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, false)
    }

    #[inline]
    pub(crate) fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, true)
    }

    fn combine(&self, mut a: usize, mut b: usize, subtract: bool) -> usize {
        if let [m] = self.moduli[..] {
            return if subtract { (a + m - b) % m } else { (a + b) % m };
        }
        let mut out = 0;
        let mut stride = 1;
        for &m in self.moduli.iter().rev() {
            let (x, y) = (a % m, b % m);
            a /= m;
            b /= m;
            let z = if subtract { (x + m - y) % m } else { (x + y) % m };
            out += z * stride;
            stride *= m;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u64]) -> Element {
        Element::Tuple(v.to_vec())
    }

    #[test]
    fn interval_arithmetic() {
        let a = Ambient::interval(10).unwrap();
        assert_eq!(a.add(&3.into(), &5.into()).unwrap(), Element::Int(8));
        assert_eq!(a.sub(&8.into(), &5.into()).unwrap(), Element::Int(3));
        assert_eq!(a.index_of(&Element::Int(1)), Some(0));
        assert_eq!(a.index_of(&Element::Int(11)), None);
        assert_eq!(a.element_at(9), Element::Int(10));
    }

    #[test]
    fn product_arithmetic() {
        let g = Ambient::product(vec![4, 4]).unwrap();
        assert_eq!(g.add(&t(&[1, 3]), &t(&[3, 2])).unwrap(), t(&[0, 1]));
        assert_eq!(g.sub(&t(&[0, 1]), &t(&[3, 2])).unwrap(), t(&[1, 3]));
        let g3 = Ambient::product(vec![4, 4, 4]).unwrap();
        let x = t(&[2, 1, 3]);
        assert_eq!(g3.add(&t(&[0, 0, 0]), &x).unwrap(), x);
    }

    #[test]
    fn arity_mismatch_is_structural() {
        let g = Ambient::product(vec![4, 4]).unwrap();
        assert!(matches!(g.add(&t(&[1]), &t(&[1, 2])), Err(Error::Structural(_))));
        assert!(matches!(g.add(&Element::Int(1), &t(&[1, 2])), Err(Error::Structural(_))));
    }

    #[test]
    fn index_order_is_lexicographic() {
        let g = Ambient::product(vec![3, 5, 2]).unwrap();
        let elems: Vec<Element> = (0..g.cardinality()).map(|i| g.element_at(i)).collect();
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(g.index_of(e), Some(i));
        }
    }

    #[test]
    fn radix_matches_element_arithmetic() {
        let g = Ambient::product(vec![3, 4, 2]).unwrap();
        let r = Radix::new(&[3, 4, 2]);
        for a in 0..g.cardinality() {
            for b in 0..g.cardinality() {
                let (ea, eb) = (g.element_at(a), g.element_at(b));
                assert_eq!(g.element_at(r.add(a, b)), g.add(&ea, &eb).unwrap());
                assert_eq!(g.element_at(r.sub(a, b)), g.sub(&ea, &eb).unwrap());
            }
        }
    }
}
