//! Shift-intersection recursion over linear indices.
//!
//! `A ⊇ x + L₁ + ⋯ + Lᵣ` with `0 ∈ L₁` iff `⋂_{d∈L₁}(A − d) ⊇ x + L₂ + ⋯ + Lᵣ`,
//! so the search picks `L₁ = {0, d₂, …, d_ℓ}` from the positive differences
//! of the current set, intersects, and recurses on the tail signature. The
//! last summand is any `ℓᵣ`-subset of what is left.

use std::ops::ControlFlow;

use crate::ambient::Radix;
use crate::bits::Bits;

#[derive(Clone, Copy)]
pub(crate) enum Space<'a> {
    /// Integers; indices are offsets from the interval start.
    Line,
    Group(&'a Radix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Anchor {
    /// Canonical decompositions, each exactly once.
    Free,
    /// Integers only: decompositions whose largest sum is this index.
    Max(usize),
    /// Groups only: decompositions `0 + L₁ + ⋯ + Lᵣ` with `0 ∈ Lᵢ` for all `i`.
    /// Not canonical; used to find sumsets through a given point.
    Zero,
}

/// Offset and summands as indices (integers: nonnegative offsets; groups:
/// element indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Raw {
    pub offset: usize,
    pub summands: Vec<Vec<usize>>,
}

pub(crate) struct Engine<'a> {
    space: Space<'a>,
    sig: &'a [usize],
    stack: Vec<Vec<usize>>,
}

/// Smallest possible size of a sumset with these summand sizes.
pub(crate) fn min_sumset_size(space: Space<'_>, sig: &[usize]) -> usize {
    match space {
        Space::Line => sig.iter().sum::<usize>() + 1 - sig.len(),
        Space::Group(_) => sig.iter().copied().max().unwrap_or(0),
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order.
pub(crate) fn for_each_combination<F>(items: &[usize], k: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = items.len();
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf)?;
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

/// Canonical-basepoint test for a group summand that contains index 0.
pub(crate) fn group_summand_is_canonical(radix: &Radix, d: &[usize]) -> bool {
    let mut sorted = d.to_vec();
    sorted.sort_unstable();
    let mut shifted = Vec::with_capacity(d.len());
    for &lam in &sorted {
        if lam == 0 {
            continue;
        }
        shifted.clear();
        shifted.extend(sorted.iter().map(|&x| radix.sub(x, lam)));
        shifted.sort_unstable();
        if shifted < sorted {
            return false;
        }
    }
    true
}

/// `(basepoint, S − basepoint sorted)` using the group canonical rule.
pub(crate) fn group_canonical(radix: &Radix, s: &[usize]) -> (usize, Vec<usize>) {
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut bases = s.to_vec();
    bases.sort_unstable();
    for lam in bases {
        let mut shifted: Vec<usize> = s.iter().map(|&x| radix.sub(x, lam)).collect();
        shifted.sort_unstable();
        if best.as_ref().is_none_or(|(_, b)| shifted < *b) {
            best = Some((lam, shifted));
        }
    }
    best.expect("nonempty summand")
}

impl<'a> Engine<'a> {
    pub(crate) fn new(space: Space<'a>, sig: &'a [usize]) -> Self {
        Engine {
            space,
            sig,
            stack: Vec::with_capacity(sig.len()),
        }
    }

    pub(crate) fn run<F>(&mut self, set: &Bits, anchor: Anchor, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Raw) -> ControlFlow<()>,
    {
        self.stack.clear();
        if set.count() < min_sumset_size(self.space, self.sig) {
            return ControlFlow::Continue(());
        }
        self.level(0, set, anchor, visit)
    }

    fn level<F>(&mut self, k: usize, c: &Bits, anchor: Anchor, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Raw) -> ControlFlow<()>,
    {
        let l = self.sig[k];
        if k + 1 == self.sig.len() {
            return self.last(c, l, anchor, visit);
        }
        let lb = min_sumset_size(self.space, &self.sig[k + 1..]);
        let cands = self.shift_candidates(c, anchor);
        if cands.len() < l - 1 {
            return ControlFlow::Continue(());
        }
        let mut chosen = Vec::with_capacity(l);
        chosen.push(0);
        self.choose(k, c, c, &cands, 0, l - 1, lb, anchor, &mut chosen, visit)
    }

    fn shift_candidates(&self, c: &Bits, anchor: Anchor) -> Vec<usize> {
        match (self.space, anchor) {
            (Space::Line, _) => {
                let (Some(lo), Some(hi)) = (c.first(), c.last()) else {
                    return Vec::new();
                };
                let mut span = hi - lo;
                if let Anchor::Max(t) = anchor {
                    span = span.min(t.saturating_sub(lo));
                }
                let m = c.count();
                if m * m < 4 * span {
                    let members: Vec<usize> = c.iter().collect();
                    let mut diffs = Bits::new(span + 1);
                    for (i, &x) in members.iter().enumerate() {
                        for &y in &members[i + 1..] {
                            if y - x <= span {
                                diffs.insert(y - x);
                            }
                        }
                    }
                    diffs.iter().filter(|&d| d > 0).collect()
                } else {
                    (1..=span).collect()
                }
            }
            (Space::Group(_), Anchor::Zero) => c.iter().filter(|&x| x != 0).collect(),
            (Space::Group(radix), _) => {
                let members: Vec<usize> = c.iter().collect();
                let mut diffs = Bits::new(radix.order());
                for &x in &members {
                    for &y in &members {
                        if x != y {
                            diffs.insert(radix.sub(x, y));
                        }
                    }
                }
                diffs.iter().collect()
            }
        }
    }

    /// `running ∩ (c − d)`.
    fn intersect_shift(&self, running: &Bits, c: &Bits, d: usize) -> Bits {
        match self.space {
            Space::Line => running.and_shifted_down(c, d),
            Space::Group(radix) => {
                let mut out = Bits::new(running.len());
                for y in running.iter() {
                    if c.contains(radix.add(y, d)) {
                        out.insert(y);
                    }
                }
                out
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn choose<F>(
        &mut self,
        k: usize,
        c: &Bits,
        running: &Bits,
        cands: &[usize],
        from: usize,
        need: usize,
        lb: usize,
        anchor: Anchor,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&Raw) -> ControlFlow<()>,
    {
        if need == 0 {
            return self.descend(k, running, anchor, chosen, visit);
        }
        for i in from..=cands.len() - need {
            let d = cands[i];
            let next = self.intersect_shift(running, c, d);
            if next.count() < lb {
                continue;
            }
            chosen.push(d);
            let flow = self.choose(k, c, &next, cands, i + 1, need - 1, lb, anchor, chosen, visit);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn descend<F>(&mut self, k: usize, inner: &Bits, anchor: Anchor, chosen: &[usize], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Raw) -> ControlFlow<()>,
    {
        let next_anchor;
        let mut restricted;
        let inner = match (self.space, anchor) {
            (Space::Line, Anchor::Max(t)) => {
                let dmax = *chosen.last().expect("nonempty");
                let Some(t2) = t.checked_sub(dmax) else {
                    return ControlFlow::Continue(());
                };
                if !inner.contains(t2) {
                    return ControlFlow::Continue(());
                }
                restricted = inner.clone();
                restricted.truncate_above(t2);
                next_anchor = Anchor::Max(t2);
                &restricted
            }
            (Space::Group(radix), Anchor::Free) => {
                if !group_summand_is_canonical(radix, chosen) {
                    return ControlFlow::Continue(());
                }
                next_anchor = Anchor::Free;
                inner
            }
            (Space::Group(_), Anchor::Zero) => {
                if !inner.contains(0) {
                    return ControlFlow::Continue(());
                }
                next_anchor = Anchor::Zero;
                inner
            }
            _ => {
                next_anchor = anchor;
                inner
            }
        };
        self.stack.push(chosen.to_vec());
        let flow = self.level(k + 1, inner, next_anchor, visit);
        self.stack.pop();
        flow
    }

    fn last<F>(&mut self, c: &Bits, l: usize, anchor: Anchor, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Raw) -> ControlFlow<()>,
    {
        let space = self.space;
        let stack = &self.stack;
        let emit = |offset: usize, last: Vec<usize>, visit: &mut F| {
            let mut summands = stack.clone();
            summands.push(last);
            visit(&Raw { offset, summands })
        };
        match (space, anchor) {
            (Space::Line, Anchor::Max(t)) => {
                if !c.contains(t) {
                    return ControlFlow::Continue(());
                }
                let below: Vec<usize> = c.iter().take_while(|&x| x < t).collect();
                for_each_combination(&below, l - 1, &mut |s: &[usize]| {
                    let base = s.first().copied().unwrap_or(t);
                    let mut lst: Vec<usize> = s.iter().map(|&x| x - base).collect();
                    lst.push(t - base);
                    emit(base, lst, visit)
                })
            }
            (Space::Line, _) => {
                let members: Vec<usize> = c.iter().collect();
                for_each_combination(&members, l, &mut |s: &[usize]| {
                    let base = s[0];
                    emit(base, s.iter().map(|&x| x - base).collect(), visit)
                })
            }
            (Space::Group(_), Anchor::Zero) => {
                if !c.contains(0) {
                    return ControlFlow::Continue(());
                }
                let others: Vec<usize> = c.iter().filter(|&x| x != 0).collect();
                for_each_combination(&others, l - 1, &mut |s: &[usize]| {
                    let mut lst = Vec::with_capacity(l);
                    lst.push(0);
                    lst.extend_from_slice(s);
                    emit(0, lst, visit)
                })
            }
            (Space::Group(radix), _) => {
                let members: Vec<usize> = c.iter().collect();
                for_each_combination(&members, l, &mut |s: &[usize]| {
                    let (base, lst) = group_canonical(radix, s);
                    emit(base, lst, visit)
                })
            }
        }
    }
}
