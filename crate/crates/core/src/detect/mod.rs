//! Detection and enumeration of sumsets `L₁ + ⋯ + Lᵣ` inside a set, plus the
//! structural checks built on them (Sidon, Hilbert cubes, indexed multisets,
//! degeneracy, sumset counting).

mod engine;
mod multiset;
mod structure;

use std::collections::HashSet;
use std::ops::ControlFlow;

pub use multiset::{verify_multiset, IndexedMultiset};
pub use structure::{ap3_of_degenerate, count_all_sumsets, is_degenerate, SumsetCount};

pub(crate) use engine::{Anchor, Engine, Raw, Space};

use crate::ambient::{Ambient, Element, Radix};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;
use crate::witness::SumsetWitness;

pub(crate) fn raw_to_witness(ambient: &Ambient, raw: &Raw) -> SumsetWitness {
    match ambient {
        Ambient::Interval { start, .. } => SumsetWitness {
            offset: Element::Int(start + raw.offset as i64),
            summands: raw
                .summands
                .iter()
                .map(|s| s.iter().map(|&x| Element::Int(x as i64)).collect())
                .collect(),
        },
        Ambient::Product { .. } => SumsetWitness {
            offset: ambient.element_at(raw.offset),
            summands: raw
                .summands
                .iter()
                .map(|s| s.iter().map(|&x| ambient.element_at(x)).collect())
                .collect(),
        },
    }
}

/// Runs the engine over `bits` (indexing `ambient`).
pub(crate) fn visit_raw<F>(ambient: &Ambient, bits: &Bits, sig: &Signature, anchor: Anchor, visit: &mut F)
where
    F: FnMut(&Raw) -> ControlFlow<()>,
{
    match ambient {
        Ambient::Interval { .. } => {
            let _ = Engine::new(Space::Line, sig.lengths()).run(bits, anchor, visit);
        }
        Ambient::Product { moduli } => {
            let radix = Radix::new(moduli);
            let _ = Engine::new(Space::Group(&radix), sig.lengths()).run(bits, anchor, visit);
        }
    }
}

/// Returns the first canonical witness in search order, or `None` when the
/// set is free of sumsets with this signature.
///
/// Search order: shifts of each summand in increasing linear order, then
/// the last summand's subsets in lexicographic order.
pub fn contains_sumset(set: &GroundSet, sig: &Signature) -> Option<SumsetWitness> {
    if set.len() < 2 {
        return None;
    }
    let mut found = None;
    visit_raw(set.ambient(), set.bits(), sig, Anchor::Free, &mut |raw: &Raw| {
        found = Some(raw_to_witness(set.ambient(), raw));
        ControlFlow::Break(())
    });
    found
}

pub fn is_free(set: &GroundSet, sig: &Signature) -> bool {
    contains_sumset(set, sig).is_none()
}

/// Calls `visit` on every canonical decomposition inside `set`, each exactly
/// once. Distinct decompositions may share a value set.
pub fn visit_sumsets<F>(set: &GroundSet, sig: &Signature, mut visit: F)
where
    F: FnMut(&SumsetWitness) -> ControlFlow<()>,
{
    visit_raw(set.ambient(), set.bits(), sig, Anchor::Free, &mut |raw: &Raw| {
        visit(&raw_to_witness(set.ambient(), raw))
    });
}

/// Collects every canonical decomposition; fails once more than `limit`
/// have been found.
pub fn enumerate_sumsets(set: &GroundSet, sig: &Signature, limit: usize) -> Result<Vec<SumsetWitness>> {
    let mut out = Vec::new();
    let mut overflow = false;
    visit_sumsets(set, sig, |w| {
        if out.len() == limit {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(w.clone());
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::Resource(format!("more than {limit} decompositions")));
    }
    Ok(out)
}

/// Integers: a witness whose largest sum is `max`.
pub fn contains_sumset_with_max(set: &GroundSet, sig: &Signature, max: i64) -> Result<Option<SumsetWitness>> {
    if set.ambient().is_group() {
        return Err(Error::InvalidInput("maximum-anchored search needs an integer ambient".into()));
    }
    let Some(t) = set.ambient().index_of(&Element::Int(max)).filter(|&t| set.bits().contains(t)) else {
        return Ok(None);
    };
    let mut found = None;
    visit_raw(set.ambient(), set.bits(), sig, Anchor::Max(t), &mut |raw: &Raw| {
        found = Some(raw_to_witness(set.ambient(), raw));
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Groups: whether `set` contains a sumset having `point` as one of its sums.
pub(crate) fn group_has_sumset_through(radix: &Radix, bits: &Bits, sig: &Signature, point: usize) -> bool {
    let mut shifted = Bits::new(bits.len());
    for x in bits.iter() {
        shifted.insert(radix.sub(x, point));
    }
    let mut hit = false;
    let _ = Engine::new(Space::Group(radix), sig.lengths()).run(&shifted, Anchor::Zero, &mut |_: &Raw| {
        hit = true;
        ControlFlow::Break(())
    });
    hit
}

/// Integers: whether `bits` contains a sumset whose largest sum is index `t`.
pub(crate) fn line_has_sumset_with_max(bits: &Bits, sig: &Signature, t: usize) -> bool {
    let mut hit = false;
    let _ = Engine::new(Space::Line, sig.lengths()).run(bits, Anchor::Max(t), &mut |_: &Raw| {
        hit = true;
        ControlFlow::Break(())
    });
    hit
}

/// All differences of ordered pairs of distinct elements are distinct.
pub fn is_sidon(set: &GroundSet) -> bool {
    let idx: Vec<usize> = set.bits().iter().collect();
    match set.ambient() {
        Ambient::Interval { .. } => {
            let span = match (idx.first(), idx.last()) {
                (Some(a), Some(b)) => b - a,
                _ => return true,
            };
            let mut seen = Bits::new(span + 1);
            for (i, &x) in idx.iter().enumerate() {
                for &y in &idx[i + 1..] {
                    if seen.contains(y - x) {
                        return false;
                    }
                    seen.insert(y - x);
                }
            }
            true
        }
        Ambient::Product { moduli } => {
            let radix = Radix::new(moduli);
            let mut seen = HashSet::new();
            for &x in &idx {
                for &y in &idx {
                    if x != y && !seen.insert(radix.sub(x, y)) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Free of Hilbert cubes `x + {0,a₁} + ⋯ + {0,aᵣ}`.
pub fn is_hilbert_cube_free(set: &GroundSet, r: usize) -> Result<bool> {
    if r < 2 {
        return Err(Error::InvalidSignature(format!("cube dimension {r} < 2")));
    }
    if r == 3 && !set.ambient().is_group() {
        return Ok(!has_cube3(set.bits()));
    }
    Ok(is_free(set, &Signature::cube(r)?))
}

/// Three-dimensional cubes over the integers via the four sum equations
/// `x₂+x₃ = x₄+x₁`, `x₂+x₅ = x₆+x₁`, `x₂+x₇ = x₈+x₁`, `x₃+x₅ = x₇+x₁`,
/// with `x₂ = x₁+a`, `x₃ = x₁+b`, `x₅ = x₁+c`, `0 < a ≤ b ≤ c`.
pub(crate) fn has_cube3(bits: &Bits) -> bool {
    let members: Vec<usize> = bits.iter().collect();
    for (i, &x1) in members.iter().enumerate() {
        let diffs: Vec<usize> = members[i + 1..].iter().map(|&y| y - x1).collect();
        for (ia, &a) in diffs.iter().enumerate() {
            for (ib, &b) in diffs.iter().enumerate().skip(ia) {
                if !bits.contains(x1 + a + b) {
                    continue;
                }
                for &c in &diffs[ib..] {
                    if bits.contains(x1 + a + c) && bits.contains(x1 + b + c) && bits.contains(x1 + a + b + c) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(n: u64, v: &[i64]) -> GroundSet {
        GroundSet::from_ints(Ambient::interval(n).unwrap(), v).unwrap()
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Element> {
        v.iter().map(|&x| Element::Int(x)).collect()
    }

    #[test]
    fn first_witness_in_one_to_four() {
        let a = iv(4, &[1, 2, 3, 4]);
        let w = contains_sumset(&a, &sig("2,2")).unwrap();
        assert!(w.verify(&a));
        assert!(w.is_canonical(a.ambient()));
        // the degenerate {0,1}+{0,1} comes first in shift order
        assert_eq!(w, SumsetWitness::new(Element::Int(1), vec![ints(&[0, 1]), ints(&[0, 1])]));
        // the non-degenerate witness {1,2}+{0,2} is among the decompositions
        let all = enumerate_sumsets(&a, &sig("2,2"), 100).unwrap();
        assert!(all.contains(&SumsetWitness::new(Element::Int(1), vec![ints(&[0, 1]), ints(&[0, 2])])));
    }

    #[test]
    fn sidon_sets_are_free() {
        let a = iv(11, &[1, 2, 5, 11]);
        assert!(contains_sumset(&a, &sig("2,2")).is_none());
        assert!(is_sidon(&a));
        assert!(!is_sidon(&iv(3, &[1, 2, 3])));
        assert!(is_sidon(&iv(3, &[])));
        assert!(is_sidon(&iv(3, &[2])));
    }

    #[test]
    fn witness_covering_one_two_three() {
        let a = iv(8, &[1, 2, 3, 5, 8]);
        let w = contains_sumset(&a, &sig("2,2")).unwrap();
        assert!(w.verify(&a));
        let vals: HashSet<Element> = w.values(a.ambient()).unwrap().into_iter().collect();
        assert_eq!(vals, ints(&[1, 2, 3]).into_iter().collect());
    }

    #[test]
    fn enumerate_small_intervals() {
        let one = enumerate_sumsets(&iv(3, &[1, 2, 3]), &sig("2,2"), 10).unwrap();
        assert_eq!(one, vec![SumsetWitness::new(Element::Int(1), vec![ints(&[0, 1]), ints(&[0, 1])])]);
        let four = enumerate_sumsets(&iv(4, &[1, 2, 3, 4]), &sig("2,2"), 10).unwrap();
        assert_eq!(four.len(), 4);
        let sets: HashSet<Vec<Element>> = four
            .iter()
            .map(|w| {
                let mut v = w.values(&Ambient::interval(4).unwrap()).unwrap();
                v.sort();
                v.dedup();
                v
            })
            .collect();
        assert_eq!(sets.len(), 3);
        assert!(matches!(enumerate_sumsets(&iv(4, &[1, 2, 3, 4]), &sig("2,2"), 3), Err(Error::Resource(_))));
    }

    #[test]
    fn empty_and_singletons_are_free() {
        for s in ["2", "2,2", "3,3", "2,2,2"] {
            assert!(is_free(&iv(5, &[]), &sig(s)));
            assert!(is_free(&iv(5, &[3]), &sig(s)));
        }
    }

    #[test]
    fn trivial_signature_counts_elements() {
        assert!(is_free(&iv(9, &[1, 4, 9]), &sig("4")));
        let w = contains_sumset(&iv(9, &[1, 4, 8, 9]), &sig("4")).unwrap();
        assert_eq!(w.offset, Element::Int(1));
        assert_eq!(w.summands, vec![ints(&[0, 3, 7, 8])]);
    }

    #[test]
    fn hilbert_cubes() {
        assert!(!is_hilbert_cube_free(&iv(8, &[1, 2, 3, 4, 5, 6, 7, 8]), 3).unwrap());
        assert!(is_hilbert_cube_free(&iv(45, &[1, 2, 4, 8, 13, 21, 31, 45]), 3).unwrap());
        assert!(is_hilbert_cube_free(&iv(2, &[1, 2]), 2).unwrap());
        assert!(matches!(is_hilbert_cube_free(&iv(2, &[1, 2]), 1), Err(Error::InvalidSignature(_))));
    }

    #[test]
    fn max_anchored_witness() {
        let a = iv(10, &[1, 2, 4, 8, 9]);
        assert!(contains_sumset_with_max(&a, &sig("2,2"), 8).unwrap().is_none());
        let w = contains_sumset_with_max(&a, &sig("2,2"), 9).unwrap().unwrap();
        assert_eq!(w.max_value(), Some(9));
        assert!(w.verify(&a));
    }

    #[test]
    fn group_detection() {
        let g = Ambient::cyclic(5).unwrap();
        let a = GroundSet::from_tuples(g.clone(), &[vec![0], vec![1]]).unwrap();
        assert!(is_free(&a, &sig("2,2")));
        assert!(is_sidon(&a));
        // in Z_4, {0,2}+{0,2} = {0,2}
        let z4 = Ambient::cyclic(4).unwrap();
        let b = GroundSet::from_tuples(z4, &[vec![0], vec![2]]).unwrap();
        let w = contains_sumset(&b, &sig("2,2")).unwrap();
        assert!(w.verify(&b));
        assert!(!is_sidon(&b));
    }
}
