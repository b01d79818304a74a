//! Single-character edits and exhaustive scans of how they move `r` and `r_$`.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::ser::{SerializeStruct, SerializeTuple};
use serde::{Serialize, Serializer};

use crate::bwt::BwtMatrix;
use crate::ca::CaBuilder;
use crate::word::alphabet;
use crate::{Error, Result};

/// One insertion, deletion or substitution.
///
/// The derived order (kind, then position, then symbol) is the record order of
/// a [`SensitivityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EditOp {
    Insert { pos: usize, sym: u8 },
    Delete { pos: usize },
    Substitute { pos: usize, sym: u8 },
}

impl EditOp {
    pub fn kind(&self) -> &'static str {
        match self {
            EditOp::Insert { .. } => "insert",
            EditOp::Delete { .. } => "delete",
            EditOp::Substitute { .. } => "substitute",
        }
    }

    pub fn pos(&self) -> usize {
        match *self {
            EditOp::Insert { pos, .. }
            | EditOp::Delete { pos }
            | EditOp::Substitute { pos, .. } => pos,
        }
    }

    pub fn sym(&self) -> Option<u8> {
        match *self {
            EditOp::Insert { sym, .. } | EditOp::Substitute { sym, .. } => Some(sym),
            EditOp::Delete { .. } => None,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let (pos, limit) = match *self {
            EditOp::Insert { pos, .. } => (pos, n + 1),
            EditOp::Delete { pos } | EditOp::Substitute { pos, .. } => (pos, n),
        };
        if pos >= limit {
            return Err(Error::IndexOutOfRange { index: pos, len: n });
        }
        Ok(())
    }

    /// A substitution by the symbol already in place.
    pub fn is_noop(&self, w: &[u8]) -> bool {
        matches!(*self, EditOp::Substitute { pos, sym } if w.get(pos) == Some(&sym))
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sym() {
            Some(sym) => write!(f, "{} {} at {}", self.kind(), sym as char, self.pos()),
            None => write!(f, "{} at {}", self.kind(), self.pos()),
        }
    }
}

impl Serialize for EditOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EditOp", 3)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("pos", &self.pos())?;
        st.serialize_field("sym", &self.sym().map(|b| (b as char).to_string()))?;
        st.end()
    }
}

/// Applies `op` to `w`.
pub fn apply_edit(w: &[u8], op: EditOp) -> Result<Vec<u8>> {
    op.check(w.len())?;
    let mut out = w.to_vec();
    match op {
        EditOp::Insert { pos, sym } => out.insert(pos, sym),
        EditOp::Delete { pos } => {
            out.remove(pos);
        }
        EditOp::Substitute { pos, sym } => out[pos] = sym,
    }
    Ok(out)
}

/// Run counts before and after an edit. `r` is `None` for the empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EditEffect {
    pub r_before: Option<u64>,
    pub r_after: Option<u64>,
    pub r_dollar_before: u64,
    pub r_dollar_after: u64,
}

fn measures(w: &[u8], builder: CaBuilder) -> (Option<u64>, u64) {
    let r = BwtMatrix::rotations_with(w, builder)
        .ok()
        .map(|m| m.run_count());
    let r_dollar = BwtMatrix::with_end_marker_using(w, builder).run_count();
    (r, r_dollar)
}

pub fn edit_effect(w: &[u8], op: EditOp) -> Result<EditEffect> {
    edit_effect_with(w, op, CaBuilder::default())
}

pub fn edit_effect_with(w: &[u8], op: EditOp, builder: CaBuilder) -> Result<EditEffect> {
    let edited = apply_edit(w, op)?;
    let (r_before, r_dollar_before) = measures(w, builder);
    let (r_after, r_dollar_after) = measures(&edited, builder);
    Ok(EditEffect {
        r_before,
        r_after,
        r_dollar_before,
        r_dollar_after,
    })
}

/// An exact non-negative ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.num)?;
        t.serialize_element(&self.den)?;
        t.end()
    }
}

/// Symbols drawn on by a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetPolicy {
    /// Only symbols occurring in the word.
    WordAlphabet,
    /// The word's symbols plus one fresh symbol just below its least symbol
    /// and one just above its greatest, where the byte range allows.
    WordAlphabetPlusFresh,
}

impl AlphabetPolicy {
    pub fn symbols(self, w: &[u8]) -> Vec<u8> {
        let mut syms = alphabet(w);
        if self == AlphabetPolicy::WordAlphabetPlusFresh {
            if let (Some(&lo), Some(&hi)) = (syms.first(), syms.last()) {
                if let Some(below) = lo.checked_sub(1) {
                    syms.insert(0, below);
                }
                if let Some(above) = hi.checked_add(1) {
                    syms.push(above);
                }
            }
        }
        syms
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EditRecord {
    pub op: EditOp,
    pub no_op: bool,
    /// `None` when the edited word is empty.
    pub r: Option<u64>,
    pub r_dollar: u64,
}

/// Extremes of one measure over the effective edits of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureSummary {
    pub base: u64,
    pub max_additive: Option<i64>,
    pub argmax_additive: Option<EditOp>,
    pub max_multiplicative: Option<Ratio>,
    pub argmax_multiplicative: Option<EditOp>,
}

impl MeasureSummary {
    /// Ties resolve to the earliest record.
    fn from_values(base: u64, values: impl Iterator<Item = (EditOp, u64)>) -> Self {
        let mut summary = MeasureSummary {
            base,
            max_additive: None,
            argmax_additive: None,
            max_multiplicative: None,
            argmax_multiplicative: None,
        };
        for (op, value) in values {
            let add = value as i64 - base as i64;
            if summary.max_additive.is_none_or(|m| add > m) {
                summary.max_additive = Some(add);
                summary.argmax_additive = Some(op);
            }
            let mul = Ratio::new(value, base);
            if summary.max_multiplicative.is_none_or(|m| mul > m) {
                summary.max_multiplicative = Some(mul);
                summary.argmax_multiplicative = Some(op);
            }
        }
        summary
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityReport {
    pub word_len: u64,
    #[serde(serialize_with = "serialize_symbols")]
    pub symbols: Vec<u8>,
    pub records: Vec<EditRecord>,
    pub r: MeasureSummary,
    pub r_dollar: MeasureSummary,
}

fn serialize_symbols<S: Serializer>(v: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.iter().map(|&b| b as char).collect::<String>())
}

impl SensitivityReport {
    pub fn effective_edits(&self) -> usize {
        self.records.iter().filter(|r| !r.no_op).count()
    }
}

/// Every single-character edit of `w` over the policy's symbols, in record order.
pub fn enumerate_edits(w: &[u8], policy: AlphabetPolicy) -> Vec<EditOp> {
    let syms = policy.symbols(w);
    let n = w.len();
    let mut ops = Vec::with_capacity((2 * n + 1) * syms.len() + n);
    for pos in 0..=n {
        ops.extend(syms.iter().map(|&sym| EditOp::Insert { pos, sym }));
    }
    ops.extend((0..n).map(|pos| EditOp::Delete { pos }));
    for pos in 0..n {
        ops.extend(syms.iter().map(|&sym| EditOp::Substitute { pos, sym }));
    }
    ops
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Serial,
    Parallel,
}

pub fn scan_edits(w: &[u8], policy: AlphabetPolicy) -> Result<SensitivityReport> {
    scan_edits_with(w, policy, Parallelism::Serial, CaBuilder::default())
}

/// Exhaustive edit scan. The report does not depend on `parallelism`.
pub fn scan_edits_with(
    w: &[u8],
    policy: AlphabetPolicy,
    parallelism: Parallelism,
    builder: CaBuilder,
) -> Result<SensitivityReport> {
    if w.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "scan needs a word of length >= 2, got {}",
            w.len()
        )));
    }
    let ops = enumerate_edits(w, policy);
    let evaluate = |&op: &EditOp| -> EditRecord {
        let edited = apply_edit(w, op).expect("enumerated edits are in range");
        let (r, r_dollar) = measures(&edited, builder);
        EditRecord {
            op,
            no_op: op.is_noop(w),
            r,
            r_dollar,
        }
    };
    let records: Vec<EditRecord> = match parallelism {
        Parallelism::Serial => ops.iter().map(evaluate).collect(),
        Parallelism::Parallel => ops.par_iter().map(evaluate).collect(),
    };

    let (base_r, base_r_dollar) = measures(w, builder);
    let base_r = base_r.expect("word is non-empty");
    let effective = || records.iter().filter(|rec| !rec.no_op);
    let r = MeasureSummary::from_values(
        base_r,
        effective().filter_map(|rec| rec.r.map(|v| (rec.op, v))),
    );
    let r_dollar =
        MeasureSummary::from_values(base_r_dollar, effective().map(|rec| (rec.op, rec.r_dollar)));
    Ok(SensitivityReport {
        word_len: w.len() as u64,
        symbols: policy.symbols(w),
        records,
        r,
        r_dollar,
    })
}

/// Both measures of `w` side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasureComparison {
    pub r: u64,
    pub r_dollar: u64,
    pub difference: i64,
    pub ratio: Ratio,
}

pub fn compare_r_rdollar(w: &[u8]) -> Result<MeasureComparison> {
    let r = crate::r(w)?;
    let r_dollar = crate::r_dollar(w);
    Ok(MeasureComparison {
        r,
        r_dollar,
        difference: r_dollar as i64 - r as i64,
        ratio: Ratio::new(r_dollar, r),
    })
}
