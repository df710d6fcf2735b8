//! Dense fixed-length bitmap used for set membership and the shift-intersection
//! kernels of the detector.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut b = Bits::new(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Number of members strictly below `i`.
    pub fn rank(&self, i: usize) -> usize {
        let i = i.min(self.len);
        let full = i / WORD;
        let mut c: usize = self.words[..full].iter().map(|w| w.count_ones() as usize).sum();
        if i % WORD != 0 {
            c += (self.words[full] & ((1u64 << (i % WORD)) - 1)).count_ones() as usize;
        }
        c
    }

    /// Clears every member strictly greater than `i`.
    pub fn truncate_above(&mut self, i: usize) {
        if i + 1 >= self.len {
            return;
        }
        let w = (i + 1) / WORD;
        let b = (i + 1) % WORD;
        if b != 0 {
            self.words[w] &= (1u64 << b) - 1;
            for x in &mut self.words[w + 1..] {
                *x = 0;
            }
        } else {
            for x in &mut self.words[w..] {
                *x = 0;
            }
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Returns `self ∩ (other − d)`: bit `i` is set iff `i ∈ self` and
    /// `i + d ∈ other`.
    pub fn and_shifted_down(&self, other: &Bits, d: usize) -> Bits {
        let mut out = Bits::new(self.len);
        let ws = d / WORD;
        let bs = d % WORD;
        let n = other.words.len();
        for (i, o) in out.words.iter_mut().enumerate() {
            let src = i + ws;
            if src >= n {
                break;
            }
            let mut w = other.words[src] >> bs;
            if bs != 0 && src + 1 < n {
                w |= other.words[src + 1] << (WORD - bs);
            }
            *o = self.words[i] & w;
        }
        out
    }

    /// Returns `{ i + d : i ∈ self }` clipped to `[0, len)`.
    pub fn shifted_up(&self, d: usize) -> Bits {
        let mut out = Bits::new(self.len);
        let ws = d / WORD;
        let bs = d % WORD;
        let n = self.words.len();
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut w = self.words[src] << bs;
            if bs != 0 && src >= 1 {
                w |= self.words[src - 1] >> (WORD - bs);
            }
            out.words[i] = w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
