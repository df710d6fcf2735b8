use std::fmt;

use crate::ambient::{Ambient, Element};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// A finite subset of an ambient with constant-time membership.
///
/// Elements are kept sorted by linear index (numeric order for intervals,
/// lexicographic order for tuples) and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    ambient: Ambient,
    elements: Vec<Element>,
    bits: Bits,
}

impl GroundSet {
    /// Builds a set, dropping duplicates. Product residues must already be
    /// reduced.
    pub fn new<I: IntoIterator<Item = Element>>(ambient: Ambient, elements: I) -> Result<Self> {
        let mut bits = Bits::new(ambient.cardinality());
        for e in elements {
            let idx = ambient
                .index_of(&e)
                .ok_or_else(|| Error::InvalidInput(format!("element {e} outside ambient {ambient}")))?;
            bits.insert(idx);
        }
        Ok(Self::from_bits(ambient, bits))
    }

    pub fn from_ints(ambient: Ambient, values: &[i64]) -> Result<Self> {
        Self::new(ambient, values.iter().map(|&v| Element::Int(v)))
    }

    pub fn from_tuples(ambient: Ambient, tuples: &[Vec<u64>]) -> Result<Self> {
        Self::new(ambient, tuples.iter().map(|t| Element::Tuple(t.clone())))
    }

    /// `bits` indexes the ambient's linear order.
    pub fn from_bits(ambient: Ambient, bits: Bits) -> Self {
        assert_eq!(bits.len(), ambient.cardinality(), "bitmap length must match the ambient");
        let elements = bits.iter().map(|i| ambient.element_at(i)).collect();
        GroundSet { ambient, elements, bits }
    }

    pub fn empty(ambient: Ambient) -> Self {
        let bits = Bits::new(ambient.cardinality());
        Self::from_bits(ambient, bits)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.ambient.index_of(e).is_some_and(|i| self.bits.contains(i))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    /// Integer values of an interval set; `None` for product sets.
    pub fn ints(&self) -> Option<Vec<i64>> {
        self.elements.iter().map(Element::as_int).collect()
    }

    /// `self + x`, keeping only the translates that stay inside the carrier
    /// (for groups, everything stays inside).
    pub fn translate(&self, x: &Element) -> Result<GroundSet> {
        let mut out = Vec::with_capacity(self.len());
        for e in &self.elements {
            let y = self.ambient.add(e, x)?;
            if self.ambient.contains(&y) {
                out.push(y);
            }
        }
        GroundSet::new(self.ambient.clone(), out)
    }

    pub fn intersection(&self, other: &GroundSet) -> Result<GroundSet> {
        if self.ambient != other.ambient {
            return Err(Error::Structural("sets live in different ambients".into()));
        }
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(GroundSet::from_bits(self.ambient.clone(), bits))
    }

    pub fn is_subset(&self, other: &GroundSet) -> bool {
        self.ambient == other.ambient && self.bits.is_subset(&other.bits)
    }

    /// The same set viewed inside a different ambient of the same kind.
    pub fn reembed(&self, ambient: Ambient) -> Result<GroundSet> {
        GroundSet::new(ambient, self.elements.iter().cloned())
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet[{}]", self.ambient)?;
        f.debug_set().entries(self.elements.iter().map(|e| e.to_string())).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_popcount_agree() {
        let a = GroundSet::from_ints(Ambient::interval(20).unwrap(), &[5, 1, 5, 20, 7]).unwrap();
        assert_eq!(a.ints().unwrap(), vec![1, 5, 7, 20]);
        assert_eq!(a.len(), a.bits().count());
        assert!(a.contains(&Element::Int(7)));
        assert!(!a.contains(&Element::Int(8)));
        assert!(!a.contains(&Element::Int(0)));
    }

    #[test]
    fn rejects_outside_carrier() {
        assert!(GroundSet::from_ints(Ambient::interval(5).unwrap(), &[6]).is_err());
        let g = Ambient::product(vec![3, 3]).unwrap();
        assert!(GroundSet::from_tuples(g, &[vec![3, 0]]).is_err());
    }

    #[test]
    fn group_translate_wraps() {
        let g = Ambient::cyclic(5).unwrap();
        let a = GroundSet::from_tuples(g, &[vec![0], vec![1]]).unwrap();
        let b = a.translate(&Element::Tuple(vec![4])).unwrap();
        assert_eq!(b.elements(), &[Element::Tuple(vec![0]), Element::Tuple(vec![4])]);
    }
}
