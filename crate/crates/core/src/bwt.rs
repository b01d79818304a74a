//! Both BWT variants, run-length statistics, inversion and block extraction.
//!
//! The rotation variant sorts the `n` rotations of `w` and reads the symbol
//! cyclically preceding each one. The end-marker variant does the same on
//! `w$`; since the marker is unique and minimal, that rotation order equals
//! the suffix order of `w$`.

use std::ops::Range;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::ca::{Alphabet, CaBuilder, ConjugateArray};
use crate::{Error, Result, Symbol};

/// A maximal equal-symbol run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub symbol: Symbol,
    pub len: u64,
}

impl Serialize for Run {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuple = serializer.serialize_tuple(2)?;
        tuple.serialize_element(&self.symbol)?;
        tuple.serialize_element(&self.len)?;
        tuple.end()
    }
}

/// A BWT output with its run-length encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    symbols: Vec<Symbol>,
    runs: Vec<Run>,
}

impl Transform {
    fn new(symbols: Vec<Symbol>) -> Self {
        let runs = rle(&symbols);
        Transform { symbols, runs }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The transform as printable bytes, the end marker shown as `$`.
    pub fn to_bytes(&self) -> Vec<u8> {
        Symbol::render(&self.symbols)
    }

    /// The transform as a string, one char per byte.
    pub fn to_string_lossless(&self) -> String {
        Symbol::render_string(&self.symbols)
    }

    /// Position of the end marker, if this is the end-marker variant.
    pub fn end_marker(&self) -> Option<usize> {
        self.symbols.iter().position(|s| s.is_end())
    }

    pub fn rle(&self) -> &[Run] {
        &self.runs
    }

    pub fn run_count(&self) -> u64 {
        self.runs.len() as u64
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Sorted-rotation matrix of a word, kept implicitly as text plus conjugate
/// array. Supports repeated block queries without re-sorting.
#[derive(Debug, Clone)]
pub struct BwtMatrix {
    text: Vec<Symbol>,
    ca: ConjugateArray,
    last: Vec<Symbol>,
}

impl BwtMatrix {
    /// Matrix of the rotations of `w`.
    pub fn rotations(w: &[u8]) -> Result<Self> {
        Self::rotations_with(w, CaBuilder::default())
    }

    pub fn rotations_with(w: &[u8], builder: CaBuilder) -> Result<Self> {
        let ca = builder.build(w)?;
        Ok(Self::assemble(Symbol::lift(w), ca))
    }

    /// Matrix of the rotations of `w$`.
    pub fn with_end_marker(w: &[u8]) -> Self {
        Self::with_end_marker_using(w, CaBuilder::default())
    }

    pub fn with_end_marker_using(w: &[u8], builder: CaBuilder) -> Self {
        let mut text = Symbol::lift(w);
        text.push(Symbol::End);
        let ca = builder.build(&text).expect("w$ is never empty");
        Self::assemble(text, ca)
    }

    /// Matrix of `w$` where `w` is given as symbols; `w` must not contain the marker.
    pub fn with_end_marker_symbols(w: &[Symbol], builder: CaBuilder) -> Result<Self> {
        if let Some(pos) = w.iter().position(|s| s.is_end()) {
            return Err(Error::ReservedSymbol(pos));
        }
        let mut text = w.to_vec();
        text.push(Symbol::End);
        let ca = builder.build(&text)?;
        Ok(Self::assemble(text, ca))
    }

    fn assemble(text: Vec<Symbol>, ca: ConjugateArray) -> Self {
        let n = text.len();
        let last = ca
            .iter()
            .map(|&start| text[if start == 0 { n - 1 } else { start - 1 }])
            .collect();
        BwtMatrix { text, ca, last }
    }

    /// The transformed text (with the marker for the end-marker variant).
    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    pub fn conjugate_array(&self) -> &ConjugateArray {
        &self.ca
    }

    /// Last column of the matrix.
    pub fn last_column(&self) -> &[Symbol] {
        &self.last
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// The rotation in row `row`.
    pub fn row(&self, row: usize) -> Vec<Symbol> {
        let start = self.ca[row];
        let mut out = Vec::with_capacity(self.text.len());
        out.extend_from_slice(&self.text[start..]);
        out.extend_from_slice(&self.text[..start]);
        out
    }

    pub fn run_count(&self) -> u64 {
        count_runs(&self.last)
    }

    pub fn transform(&self) -> Transform {
        Transform::new(self.last.clone())
    }

    /// Rows whose rotation (extended cyclically) starts with `prefix`.
    pub fn block_range(&self, prefix: &[Symbol]) -> Range<usize> {
        let lo = self.partition(|rot| cmp_prefix(rot, prefix).is_lt());
        let hi = self.partition(|rot| cmp_prefix(rot, prefix).is_le());
        lo..hi.max(lo)
    }

    /// The slice of the last column covering the rotations prefixed by `prefix`.
    pub fn block(&self, prefix: &[Symbol]) -> &[Symbol] {
        &self.last[self.block_range(prefix)]
    }

    /// First row for which `pred` fails; `pred` must be monotone over rows.
    fn partition<F>(&self, pred: F) -> usize
    where
        F: Fn(&mut dyn Iterator<Item = Symbol>) -> bool,
    {
        let (mut lo, mut hi) = (0usize, self.ca.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let start = self.ca[mid];
            let mut rot = self.text[start..]
                .iter()
                .chain(self.text.iter().cycle())
                .copied();
            if pred(&mut rot) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Compares the first `prefix.len()` symbols of `rot` with `prefix`.
fn cmp_prefix(rot: &mut dyn Iterator<Item = Symbol>, prefix: &[Symbol]) -> std::cmp::Ordering {
    for &p in prefix {
        let s = rot.next().expect("cyclic iterator is infinite");
        match s.cmp(&p) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Number of maximal equal-symbol runs; zero for an empty sequence.
pub fn count_runs<T: PartialEq>(v: &[T]) -> u64 {
    if v.is_empty() {
        return 0;
    }
    1 + v.windows(2).filter(|p| p[0] != p[1]).count() as u64
}

/// Run-length encoding of a symbol sequence.
pub fn rle(v: &[Symbol]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for &s in v {
        match out.last_mut() {
            Some(run) if run.symbol == s => run.len += 1,
            _ => out.push(Run { symbol: s, len: 1 }),
        }
    }
    out
}

/// Number of equal-letter runs of a non-empty word.
pub fn runs(v: &[u8]) -> Result<u64> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(count_runs(v))
}

/// Rotation BWT of `w`.
pub fn bwt(w: &[u8]) -> Result<Transform> {
    Ok(BwtMatrix::rotations(w)?.transform())
}

/// BWT of `w$`.
pub fn bwt_dollar(w: &[u8]) -> Transform {
    BwtMatrix::with_end_marker(w).transform()
}

/// `r(w)`: runs of the rotation BWT. Undefined for the empty word.
pub fn r(w: &[u8]) -> Result<u64> {
    Ok(BwtMatrix::rotations(w)?.run_count())
}

/// `r_$(w)`: runs of the BWT of `w$`. Equals 1 for the empty word.
pub fn r_dollar(w: &[u8]) -> u64 {
    BwtMatrix::with_end_marker(w).run_count()
}

/// The slice of `bwt(w)` over the rotations prefixed by `prefix`.
pub fn bwt_block(w: &[u8], prefix: &[u8]) -> Result<Vec<u8>> {
    if prefix.is_empty() {
        return Err(Error::InvalidParameter(
            "block prefix must be non-empty".into(),
        ));
    }
    let matrix = BwtMatrix::rotations(w)?;
    let block = matrix.block(&Symbol::lift(prefix));
    Ok(Symbol::render(block))
}

/// The slice of `bwt(w$)` over the rotations of `w$` prefixed by `prefix`.
pub fn bwt_dollar_block(w: &[u8], prefix: &[Symbol]) -> Result<Vec<Symbol>> {
    if prefix.is_empty() {
        return Err(Error::InvalidParameter(
            "block prefix must be non-empty".into(),
        ));
    }
    Ok(BwtMatrix::with_end_marker(w).block(prefix).to_vec())
}

/// LF mapping: row of the rotation starting one position earlier.
fn lf_mapping<T: Alphabet>(last: &[T]) -> Vec<usize> {
    let mut count = vec![0usize; T::SIZE + 1];
    for &s in last {
        count[s.rank() as usize + 1] += 1;
    }
    for r in 1..count.len() {
        count[r] += count[r - 1];
    }
    last.iter()
        .map(|&s| {
            let slot = &mut count[s.rank() as usize];
            let row = *slot;
            *slot += 1;
            row
        })
        .collect()
}

/// Inverts a rotation BWT.
///
/// The BWT determines a word only up to rotation, so the least rotation is
/// returned; a transform of a power `u^e` yields that power.
pub fn inverse_bwt(t: &[u8]) -> Result<Vec<u8>> {
    inverse_bwt_with(t, CaBuilder::default())
}

pub fn inverse_bwt_with(t: &[u8], builder: CaBuilder) -> Result<Vec<u8>> {
    let n = t.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let lf = lf_mapping(t);
    let mut out = vec![0u8; n];
    let mut row = 0usize;
    for slot in out.iter_mut().rev() {
        *slot = t[row];
        row = lf[row];
    }
    // Reading is correct for any valid image; validity is checked forward.
    let matrix = BwtMatrix::rotations_with(&out, builder)?;
    if Symbol::render(matrix.last_column()) != t {
        return Err(Error::NotBwtImage);
    }
    Ok(out)
}

/// Inverts a BWT of `w$`, given as symbols with exactly one end marker.
pub fn inverse_bwt_dollar(t: &[Symbol]) -> Result<Vec<u8>> {
    let markers = t.iter().filter(|s| s.is_end()).count();
    if markers != 1 {
        return Err(Error::MarkerCount(markers));
    }
    let n = t.len();
    let lf = lf_mapping(t);
    // Row 0 is `$w`; its last symbol is the last symbol of `w`.
    let mut out = vec![0u8; n - 1];
    let mut row = 0usize;
    for slot in out.iter_mut().rev() {
        match t[row] {
            Symbol::Byte(b) => *slot = b,
            Symbol::End => return Err(Error::NotBwtImage),
        }
        row = lf[row];
    }
    if !t[row].is_end() {
        return Err(Error::NotBwtImage);
    }
    Ok(out)
}
