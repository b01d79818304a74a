//! Conjugate arrays: rotation start indices in lexicographic rotation order,
//! equal rotations ordered by start index.

use std::cmp::Ordering;

use crate::{Error, Result, Symbol};

/// Symbols that can be ranked densely for bucket sorting.
pub trait Alphabet: Copy + Ord {
    /// Number of distinct ranks.
    const SIZE: usize;
    fn rank(self) -> u32;
}

impl Alphabet for u8 {
    const SIZE: usize = 256;
    #[inline]
    fn rank(self) -> u32 {
        self as u32
    }
}

impl Alphabet for Symbol {
    const SIZE: usize = 257;
    #[inline]
    fn rank(self) -> u32 {
        Symbol::rank(self)
    }
}

/// Permutation of `0..n` listing rotation starts in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConjugateArray(Vec<usize>);

impl ConjugateArray {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Inverse permutation: row of each rotation start.
    pub fn rows(&self) -> Vec<usize> {
        let mut rows = vec![0; self.0.len()];
        for (row, &start) in self.0.iter().enumerate() {
            rows[start] = row;
        }
        rows
    }
}

impl std::ops::Deref for ConjugateArray {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// Strategy used to build a conjugate array.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CaBuilder {
    /// Comparison sort of all rotations, `O(n^2 log n)` worst case. Used as the oracle.
    Naive,
    /// Prefix doubling over cyclic shifts with bucket sorting, `O(n log n)`.
    #[default]
    PrefixDoubling,
}

impl CaBuilder {
    pub fn build<T: Alphabet>(self, text: &[T]) -> Result<ConjugateArray> {
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        let order = match self {
            CaBuilder::Naive => naive(text),
            CaBuilder::PrefixDoubling => {
                if text.len() <= u32::MAX as usize {
                    doubling::<T, u32>(text)
                } else {
                    doubling::<T, u64>(text)
                }
            }
        };
        Ok(ConjugateArray(order))
    }
}

/// Conjugate array of `w` using the default builder.
pub fn conjugate_array(w: &[u8]) -> Result<ConjugateArray> {
    CaBuilder::default().build(w)
}

/// Compares the rotations of `text` starting at `i` and `j`, content only.
pub fn compare_rotations<T: Ord>(text: &[T], i: usize, j: usize) -> Ordering {
    let a = text[i..].iter().chain(&text[..i]);
    let b = text[j..].iter().chain(&text[..j]);
    a.cmp(b)
}

fn naive<T: Ord>(text: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..text.len()).collect();
    // stable sort keeps equal rotations in index order
    order.sort_by(|&i, &j| compare_rotations(text, i, j));
    order
}

trait Index: Copy + Ord {
    fn from_usize(v: usize) -> Self;
    fn to_usize(self) -> usize;
}

impl Index for u32 {
    #[inline]
    fn from_usize(v: usize) -> Self {
        v as u32
    }
    #[inline]
    fn to_usize(self) -> usize {
        self as usize
    }
}

impl Index for u64 {
    #[inline]
    fn from_usize(v: usize) -> Self {
        v as u64
    }
    #[inline]
    fn to_usize(self) -> usize {
        self as usize
    }
}

fn doubling<T: Alphabet, I: Index>(text: &[T]) -> Vec<usize> {
    let n = text.len();
    let zero = I::from_usize(0);
    let mut order: Vec<I> = vec![zero; n];
    // Class of each start position, and the class of `order[w]` (non-decreasing in `w`).
    let mut class: Vec<I> = vec![zero; n];
    let mut rank: Vec<I> = vec![zero; n];

    // Round 0: bucket by symbol.
    let mut count = vec![0usize; T::SIZE.max(n) + 1];
    for &s in text {
        count[s.rank() as usize + 1] += 1;
    }
    for r in 1..=T::SIZE {
        count[r] += count[r - 1];
    }
    for (i, &s) in text.iter().enumerate() {
        let slot = &mut count[s.rank() as usize];
        order[*slot] = I::from_usize(i);
        *slot += 1;
    }
    let mut classes = 0usize;
    for w in 0..n {
        let cur = order[w].to_usize();
        if w == 0 || text[cur] != text[order[w - 1].to_usize()] {
            classes += 1;
        }
        class[cur] = I::from_usize(classes - 1);
        rank[w] = I::from_usize(classes - 1);
    }

    // (start shifted back by `half`, its first-half class) in second-half order.
    let mut shifted: Vec<(I, I)> = vec![(zero, zero); n];
    // (start, first-half class, second-half class) in sorted order.
    let mut sorted: Vec<(I, I, I)> = order.iter().map(|&s| (s, zero, zero)).collect();
    let mut half = 1usize;
    while half < n && classes < n {
        count[..=classes].iter_mut().for_each(|c| *c = 0);
        for (slot, entry) in shifted.iter_mut().zip(&sorted) {
            let s = entry.0.to_usize();
            let t = if s >= half { s - half } else { s + n - half };
            let c = class[t];
            *slot = (I::from_usize(t), c);
            count[c.to_usize() + 1] += 1;
        }
        for c in 1..=classes {
            count[c] += count[c - 1];
        }
        // Stable bucket sort by first half.
        for (&(t, c), &second) in shifted.iter().zip(&rank) {
            let slot = &mut count[c.to_usize()];
            sorted[*slot] = (t, c, second);
            *slot += 1;
        }
        classes = 0;
        for w in 0..n {
            let (s, k1, k2) = sorted[w];
            if w == 0 || (k1, k2) != (sorted[w - 1].1, sorted[w - 1].2) {
                classes += 1;
            }
            let c = I::from_usize(classes - 1);
            rank[w] = c;
            class[s.to_usize()] = c;
        }
        half *= 2;
    }
    drop(shifted);
    for (slot, entry) in order.iter_mut().zip(&sorted) {
        *slot = entry.0;
    }

    // Equal rotations (non-primitive input) are ordered by start index.
    if classes < n {
        let mut lo = 0;
        while lo < n {
            let mut hi = lo + 1;
            while hi < n && rank[hi] == rank[lo] {
                hi += 1;
            }
            order[lo..hi].sort_unstable();
            lo = hi;
        }
    }
    order.into_iter().map(I::to_usize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(w: &[u8]) -> Vec<usize> {
        let fast = CaBuilder::PrefixDoubling.build(w).unwrap();
        let slow = CaBuilder::Naive.build(w).unwrap();
        assert_eq!(
            fast,
            slow,
            "builders disagree on {:?}",
            String::from_utf8_lossy(w)
        );
        fast.into_vec()
    }

    #[test]
    fn catastrophic() {
        assert_eq!(
            both(b"catastrophic"),
            vec![3, 1, 0, 11, 9, 10, 7, 8, 6, 4, 2, 5]
        );
    }

    #[test]
    fn unary_word_uses_index_order() {
        assert_eq!(both(b"aaa"), vec![0, 1, 2]);
    }

    #[test]
    fn square_ties_break_by_index() {
        assert_eq!(both(b"abab"), vec![0, 2, 1, 3]);
        assert_eq!(both(b"abcabcabc"), vec![0, 3, 6, 1, 4, 7, 2, 5, 8]);
    }

    #[test]
    fn fibonacci_six_matches_figure() {
        assert_eq!(
            both(b"abaababaabaab"),
            vec![7, 2, 10, 5, 0, 8, 3, 11, 6, 1, 9, 4, 12]
        );
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(CaBuilder::Naive.build::<u8>(&[]), Err(Error::EmptyWord));
        assert_eq!(conjugate_array(b""), Err(Error::EmptyWord));
    }

    #[test]
    fn symbols_with_marker() {
        let text = [Symbol::Byte(b'a'), Symbol::Byte(b'b'), Symbol::End];
        let ca = CaBuilder::PrefixDoubling.build(&text).unwrap();
        assert_eq!(ca.as_slice(), &[2, 0, 1]);
        assert_eq!(ca.rows(), vec![1, 2, 0]);
    }

    #[test]
    fn single_symbol() {
        assert_eq!(both(b"z"), vec![0]);
    }
}
