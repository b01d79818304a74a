//! Executable checks of the closed forms and run counts for the extremal families.
//!
//! Every check compares an expected value built from a formula against the value
//! observed on an actual BWT matrix, with exact integer arithmetic throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::bwt::BwtMatrix;
use crate::ca::CaBuilder;
use crate::families::{
    fibonacci, fibonacci_number, lyndon_rotation, reverse_fibonacci, t_family_word, wk_word,
};
use crate::sensitivity::{apply_edit, EditOp, Ratio};
use crate::symbol::Symbol;
use crate::word::{is_lyndon, truncate_last};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Int(i64),
    Word(String),
    Range { min: Option<i64>, max: Option<i64> },
}

impl Value {
    fn word(bytes: &[u8]) -> Self {
        Value::Word(bytes.iter().map(|&b| b as char).collect())
    }

    fn between(min: i64, max: i64) -> Self {
        Value::Range {
            min: Some(min),
            max: Some(max),
        }
    }

    fn at_least(min: i64) -> Self {
        Value::Range {
            min: Some(min),
            max: None,
        }
    }

    /// Whether an observed value satisfies this expectation.
    pub fn admits(&self, observed: &Value) -> bool {
        match (self, observed) {
            (Value::Range { min, max }, Value::Int(x)) => {
                min.is_none_or(|m| *x >= m) && max.is_none_or(|m| *x <= m)
            }
            (a, b) => a == b,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(x) => write!(f, "{x}"),
            Value::Word(w) if w.is_empty() => f.write_str("ε"),
            Value::Word(w) => f.write_str(w),
            Value::Range { min, max } => {
                let show = |v: &Option<i64>| v.map_or(String::new(), |x| x.to_string());
                write!(f, "[{}, {}]", show(min), show(max))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check_id: String,
    pub claim: String,
    pub params: BTreeMap<String, u64>,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} {} [{}] {}: expected {} observed {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check_id,
            params.join(","),
            self.claim,
            self.expected,
            self.observed
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<VerifyReport>,
}

impl Summary {
    pub fn from_reports(reports: Vec<VerifyReport>) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Summary {
            passed,
            failed: reports.len() - passed,
            reports,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// The registered checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    FibAppend,
    FibNewSymbol,
    FibInsert,
    FibDelete,
    FibSubstitute,
    TFamily,
    WkBwt,
    WkInsert,
    WkDelete,
    WkSubstitute,
    DollarPrepend,
    DollarAppendMin,
    DollarLyndonB,
    DollarWk,
    DollarWkB,
    DollarWkBb,
    DollarWkA,
    DollarRatio,
    DollarDiff,
}

impl Check {
    pub const ALL: [Check; 19] = [
        Check::FibAppend,
        Check::FibNewSymbol,
        Check::FibInsert,
        Check::FibDelete,
        Check::FibSubstitute,
        Check::TFamily,
        Check::WkBwt,
        Check::WkInsert,
        Check::WkDelete,
        Check::WkSubstitute,
        Check::DollarPrepend,
        Check::DollarAppendMin,
        Check::DollarLyndonB,
        Check::DollarWk,
        Check::DollarWkB,
        Check::DollarWkBb,
        Check::DollarWkA,
        Check::DollarRatio,
        Check::DollarDiff,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::FibAppend => "fib.append",
            Check::FibNewSymbol => "fib.newsym",
            Check::FibInsert => "fib.insert",
            Check::FibDelete => "fib.delete",
            Check::FibSubstitute => "fib.subst",
            Check::TFamily => "tfam",
            Check::WkBwt => "wk.bwt",
            Check::WkInsert => "wk.ins",
            Check::WkDelete => "wk.del",
            Check::WkSubstitute => "wk.sub",
            Check::DollarPrepend => "dollar.prepend",
            Check::DollarAppendMin => "dollar.append_min",
            Check::DollarLyndonB => "dollar.lyndon_b",
            Check::DollarWk => "dollar.wk",
            Check::DollarWkB => "dollar.wk_b",
            Check::DollarWkBb => "dollar.wk_bb",
            Check::DollarWkA => "dollar.wk_a",
            Check::DollarRatio => "dollar.ratio",
            Check::DollarDiff => "dollar.diff",
        }
    }

    pub fn from_id(id: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.id() == id)
    }

    /// Smallest parameter `k` the check accepts.
    pub fn min_k(self) -> usize {
        match self {
            Check::FibAppend
            | Check::FibNewSymbol
            | Check::FibInsert
            | Check::FibDelete
            | Check::FibSubstitute => 3,
            Check::TFamily => 3,
            Check::DollarPrepend
            | Check::DollarAppendMin
            | Check::DollarLyndonB
            | Check::DollarRatio => 2,
            _ => 6,
        }
    }
}

impl Check {
    /// Largest `k` a range sweep visits. Fibonacci-based words grow as `phi^2k`,
    /// so sweeps stop at 14 (about 8.3e5 symbols); `run` still accepts any `k`.
    pub fn sweep_max_k(self) -> Option<usize> {
        match self {
            Check::FibAppend
            | Check::FibNewSymbol
            | Check::FibInsert
            | Check::FibDelete
            | Check::FibSubstitute
            | Check::DollarPrepend
            | Check::DollarAppendMin
            | Check::DollarLyndonB
            | Check::DollarRatio => Some(FIB_SWEEP_MAX_K),
            _ => None,
        }
    }

    fn in_sweep(self, k: usize) -> bool {
        k >= self.min_k() && self.sweep_max_k().is_none_or(|m| k <= m)
    }
}

pub const FIB_SWEEP_MAX_K: usize = 14;

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The rows of the edit table for `w_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WkVariant {
    Plain,
    AppendA,
    Truncated,
    TruncatedB,
    Dollar,
    DollarB,
    DollarBb,
    DollarA,
}

impl WkVariant {
    pub const ALL: [WkVariant; 8] = [
        WkVariant::Plain,
        WkVariant::AppendA,
        WkVariant::Truncated,
        WkVariant::TruncatedB,
        WkVariant::Dollar,
        WkVariant::DollarB,
        WkVariant::DollarBb,
        WkVariant::DollarA,
    ];

    pub fn label(self) -> &'static str {
        match self {
            WkVariant::Plain => "w_k",
            WkVariant::AppendA => "w_k a",
            WkVariant::Truncated => "ŵ_k",
            WkVariant::TruncatedB => "ŵ_k b",
            WkVariant::Dollar => "w_k$",
            WkVariant::DollarB => "w_k b$",
            WkVariant::DollarBb => "w_k bb$",
            WkVariant::DollarA => "w_k a$",
        }
    }

    pub fn has_end_marker(self) -> bool {
        matches!(
            self,
            WkVariant::Dollar | WkVariant::DollarB | WkVariant::DollarBb | WkVariant::DollarA
        )
    }

    /// The word before any end marker.
    pub fn word(self, k: usize) -> Result<Vec<u8>> {
        let mut w = wk_word(k)?;
        match self {
            WkVariant::Plain | WkVariant::Dollar => {}
            WkVariant::AppendA | WkVariant::DollarA => w.push(b'a'),
            WkVariant::DollarB => w.push(b'b'),
            WkVariant::DollarBb => w.extend_from_slice(b"bb"),
            WkVariant::Truncated => w = truncate_last(&w)?,
            WkVariant::TruncatedB => {
                w = truncate_last(&w)?;
                w.push(b'b');
            }
        }
        Ok(w)
    }

    pub fn expected_r(self, k: usize) -> u64 {
        let k = k as u64;
        match self {
            WkVariant::Plain => 6 * k - 12,
            WkVariant::AppendA | WkVariant::Truncated | WkVariant::TruncatedB => 8 * k - 20,
            WkVariant::Dollar | WkVariant::DollarA => 8 * k - 16,
            WkVariant::DollarB => 6 * k - 13,
            WkVariant::DollarBb => 8 * k - 17,
        }
    }

    fn matrix(self, k: usize, builder: CaBuilder) -> Result<BwtMatrix> {
        let w = self.word(k)?;
        if self.has_end_marker() {
            Ok(BwtMatrix::with_end_marker_using(&w, builder))
        } else {
            BwtMatrix::rotations_with(&w, builder)
        }
    }

    /// The closed form of the block of `col`, with `$` for the end marker.
    pub fn expected_block(self, k: usize, col: BlockColumn) -> Vec<u8> {
        use WkVariant::*;
        let rep = |c: u8, n: usize| vec![c; n];
        let cat = |parts: &[&[u8]]| parts.concat();
        match col {
            BlockColumn::Dollar => match self {
                Dollar | DollarA => b"a".to_vec(),
                DollarB | DollarBb => b"b".to_vec(),
                _ => Vec::new(),
            },
            BlockColumn::ADollar => match self {
                Dollar => b"b".to_vec(),
                DollarA => b"a".to_vec(),
                _ => Vec::new(),
            },
            BlockColumn::AaDollar => match self {
                DollarA => b"b".to_vec(),
                _ => Vec::new(),
            },
            BlockColumn::AiB(i) => cat(&[b"b", &rep(b'a', k - i - 2)]),
            BlockColumn::A3B => {
                let lead = if self == AppendA { 6 } else { 5 };
                cat(&[&rep(b'b', lead), &b"ab".repeat(k - 6), b"a"])
            }
            BlockColumn::A2B => {
                let head: &[u8] = match self {
                    Plain => b"baab",
                    AppendA => b"aaab",
                    _ => b"aab",
                };
                cat(&[head, &rep(b'a', 2 * k - 8)])
            }
            BlockColumn::AB => {
                let head = match self {
                    Plain | AppendA => cat(&[&rep(b'b', k - 2), b"aab"]),
                    Truncated | TruncatedB => cat(&[&rep(b'b', k - 1), b"ab"]),
                    Dollar | DollarA => cat(&[&rep(b'b', k - 2), b"$ab"]),
                    DollarB | DollarBb => cat(&[&rep(b'b', k - 1), b"$ab"]),
                };
                cat(&[&head, &rep(b'a', 2 * k - 6)])
            }
            BlockColumn::BDollar => match self {
                DollarB => b"a".to_vec(),
                DollarBb => b"b".to_vec(),
                _ => Vec::new(),
            },
            BlockColumn::BA => {
                let lead: &[u8] = if matches!(self, Dollar | DollarA) {
                    b"b"
                } else {
                    b""
                };
                let mid = if self == AppendA { 4 } else { 3 };
                let second = if self == Plain { k - 4 } else { k - 5 };
                let tail = if matches!(self, Truncated | TruncatedB | DollarB | DollarBb) {
                    k - 1
                } else {
                    k - 2
                };
                cat(&[
                    lead,
                    &rep(b'a', k - 5),
                    &rep(b'b', mid),
                    b"a",
                    &rep(b'b', second),
                    b"a",
                    &rep(b'b', tail),
                    b"a",
                ])
            }
            BlockColumn::BbDollar => match self {
                DollarBb => b"a".to_vec(),
                _ => Vec::new(),
            },
            BlockColumn::BjA(j) => match self {
                Plain | DollarB => cat(&[b"a", &rep(b'b', 2 * k - 2 * j - 1), b"a"]),
                AppendA | Dollar | DollarA => cat(&[b"ba", &rep(b'b', 2 * k - 2 * j - 2), b"a"]),
                Truncated | TruncatedB | DollarBb => {
                    cat(&[b"a", &rep(b'b', 2 * k - 2 * j - 2), b"ab"])
                }
            },
            BlockColumn::BkA => match self {
                TruncatedB => b"b".to_vec(),
                _ => b"a".to_vec(),
            },
            BlockColumn::Bk1A => match self {
                TruncatedB => b"a".to_vec(),
                _ => Vec::new(),
            },
        }
    }
}

impl fmt::Display for WkVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A range of rows of the matrix, named by the prefix shared by its rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockColumn {
    Dollar,
    ADollar,
    AaDollar,
    /// `a^i b` for `4 <= i <= k-2`.
    AiB(usize),
    A3B,
    A2B,
    AB,
    BDollar,
    BA,
    BbDollar,
    /// `b^j a` for `2 <= j <= k-1`.
    BjA(usize),
    BkA,
    Bk1A,
}

impl BlockColumn {
    /// All columns for parameter `k`, in matrix order.
    pub fn columns(k: usize) -> Vec<BlockColumn> {
        let mut cols = vec![
            BlockColumn::Dollar,
            BlockColumn::ADollar,
            BlockColumn::AaDollar,
        ];
        cols.extend((4..=k - 2).rev().map(BlockColumn::AiB));
        cols.extend([
            BlockColumn::A3B,
            BlockColumn::A2B,
            BlockColumn::AB,
            BlockColumn::BDollar,
            BlockColumn::BA,
            BlockColumn::BbDollar,
        ]);
        cols.extend((2..k).map(BlockColumn::BjA));
        cols.extend([BlockColumn::BkA, BlockColumn::Bk1A]);
        cols
    }

    pub fn prefix(self, k: usize) -> Vec<Symbol> {
        let a = |n: usize| vec![Symbol::Byte(b'a'); n];
        let b = |n: usize| vec![Symbol::Byte(b'b'); n];
        let end = vec![Symbol::End];
        let parts: Vec<Vec<Symbol>> = match self {
            BlockColumn::Dollar => vec![end],
            BlockColumn::ADollar => vec![a(1), end],
            BlockColumn::AaDollar => vec![a(2), end],
            BlockColumn::AiB(i) => vec![a(i), b(1)],
            BlockColumn::A3B => vec![a(3), b(1)],
            BlockColumn::A2B => vec![a(2), b(1)],
            BlockColumn::AB => vec![a(1), b(1)],
            BlockColumn::BDollar => vec![b(1), end],
            BlockColumn::BA => vec![b(1), a(1)],
            BlockColumn::BbDollar => vec![b(2), end],
            BlockColumn::BjA(j) => vec![b(j), a(1)],
            BlockColumn::BkA => vec![b(k), a(1)],
            BlockColumn::Bk1A => vec![b(k + 1), a(1)],
        };
        parts.concat()
    }

    /// The prefix with runs longer than two written as powers, e.g. `a^5b`.
    pub fn label(self, k: usize) -> String {
        let prefix = Symbol::render(&self.prefix(k));
        let mut out = String::new();
        for run in prefix.chunk_by(|x, y| x == y) {
            let c = run[0] as char;
            if run.len() > 2 {
                out.push_str(&format!("{c}^{}", run.len()));
            } else {
                out.extend(std::iter::repeat_n(c, run.len()));
            }
        }
        out
    }
}

/// One row of the block table: the observed block of every column and `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub variant: WkVariant,
    pub label: &'static str,
    pub length: u64,
    pub blocks: Vec<(String, String)>,
    pub runs: u64,
}

/// Drives the checks with a chosen conjugate-array builder.
#[derive(Debug, Clone, Copy, Default)]
pub struct Verifier {
    builder: CaBuilder,
}

struct Reports {
    check: Check,
    params: BTreeMap<String, u64>,
    out: Vec<VerifyReport>,
}

impl Reports {
    fn new(check: Check, params: &[(&str, u64)]) -> Self {
        Reports {
            check,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            out: Vec::new(),
        }
    }

    fn push(
        &mut self,
        claim: impl Into<String>,
        expected: Value,
        observed: Value,
        detail: impl Into<String>,
    ) {
        let pass = expected.admits(&observed);
        self.out.push(VerifyReport {
            check_id: self.check.id().to_string(),
            claim: claim.into(),
            params: self.params.clone(),
            expected,
            observed,
            pass,
            detail: detail.into(),
        });
    }

    fn count(&mut self, claim: impl Into<String>, expected: u64, observed: u64) {
        self.push(
            claim,
            Value::Int(expected as i64),
            Value::Int(observed as i64),
            "",
        );
    }
}

fn ensure_k(check: Check, k: usize) -> Result<()> {
    if k < check.min_k() {
        return Err(Error::InvalidParameter(format!(
            "{} needs k >= {}, got {k}",
            check.id(),
            check.min_k()
        )));
    }
    Ok(())
}

fn fib(i: usize) -> Result<usize> {
    Ok(fibonacci_number(i)? as usize)
}

impl Verifier {
    pub fn new(builder: CaBuilder) -> Self {
        Verifier { builder }
    }

    pub fn builder(&self) -> CaBuilder {
        self.builder
    }

    fn r(&self, w: &[u8]) -> Result<u64> {
        Ok(BwtMatrix::rotations_with(w, self.builder)?.run_count())
    }

    fn r_dollar(&self, w: &[u8]) -> u64 {
        BwtMatrix::with_end_marker_using(w, self.builder).run_count()
    }

    fn bwt_dollar(&self, w: &[u8]) -> Vec<u8> {
        Symbol::render(BwtMatrix::with_end_marker_using(w, self.builder).last_column())
    }

    /// Runs one check at parameter `k`.
    pub fn run(&self, check: Check, k: usize) -> Result<Vec<VerifyReport>> {
        ensure_k(check, k)?;
        match check {
            Check::FibAppend => self.fib_append(k),
            Check::FibNewSymbol => self.fib_newsym(k),
            Check::FibInsert => self.fib_insert(k),
            Check::FibDelete => self.fib_delete(k),
            Check::FibSubstitute => self.fib_subst(k),
            Check::TFamily => (1..=4)
                .map(|e| self.verify_t_family(k, e))
                .collect::<Result<Vec<_>>>()
                .map(|v| v.concat()),
            Check::WkBwt => self.wk_row(check, WkVariant::Plain, k, None),
            Check::WkInsert => self.wk_row(
                check,
                WkVariant::AppendA,
                k,
                Some((WkVariant::Plain, 2 * k as i64 - 8)),
            ),
            Check::WkDelete => self.wk_row(
                check,
                WkVariant::Truncated,
                k,
                Some((WkVariant::Plain, 2 * k as i64 - 8)),
            ),
            Check::WkSubstitute => self.wk_row(
                check,
                WkVariant::TruncatedB,
                k,
                Some((WkVariant::Plain, 2 * k as i64 - 8)),
            ),
            Check::DollarPrepend => self.dollar_prepend(k),
            Check::DollarAppendMin => self.dollar_append_min(k),
            Check::DollarLyndonB => self.dollar_lyndon_b(k),
            Check::DollarWk => self.wk_row(
                check,
                WkVariant::Dollar,
                k,
                Some((WkVariant::DollarB, 2 * k as i64 - 3)),
            ),
            Check::DollarWkB => self.wk_row(check, WkVariant::DollarB, k, None),
            Check::DollarWkBb => self.wk_row(
                check,
                WkVariant::DollarBb,
                k,
                Some((WkVariant::DollarB, 2 * k as i64 - 4)),
            ),
            Check::DollarWkA => self.wk_row(
                check,
                WkVariant::DollarA,
                k,
                Some((WkVariant::DollarB, 2 * k as i64 - 3)),
            ),
            Check::DollarRatio => self.dollar_ratio(k),
            Check::DollarDiff => self.dollar_diff(k),
        }
    }

    /// Runs `checks` for every `k` in `ks` inside each check's sweep bounds, in
    /// check-major order.
    pub fn run_checks(&self, checks: &[Check], ks: RangeInclusive<usize>) -> Result<Summary> {
        let jobs: Vec<(Check, usize)> = checks
            .iter()
            .flat_map(|&c| {
                ks.clone()
                    .filter(move |&k| c.in_sweep(k))
                    .map(move |k| (c, k))
            })
            .collect();
        let chunks = jobs
            .par_iter()
            .map(|&(c, k)| self.run(c, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Summary::from_reports(chunks.concat()))
    }

    pub fn verify_all(&self, ks: RangeInclusive<usize>) -> Result<Summary> {
        self.run_checks(&Check::ALL, ks)
    }

    pub fn verify_fibonacci_catastrophes(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let checks = [
            Check::FibAppend,
            Check::FibNewSymbol,
            Check::FibInsert,
            Check::FibDelete,
            Check::FibSubstitute,
        ];
        Ok(checks
            .iter()
            .map(|&c| self.run(c, k))
            .collect::<Result<Vec<_>>>()?
            .concat())
    }

    pub fn verify_wk(&self, k: usize) -> Result<Vec<VerifyReport>> {
        self.run(Check::WkBwt, k)
    }

    pub fn verify_wk_edits(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let checks = [Check::WkInsert, Check::WkDelete, Check::WkSubstitute];
        Ok(checks
            .iter()
            .map(|&c| self.run(c, k))
            .collect::<Result<Vec<_>>>()?
            .concat())
    }

    pub fn verify_dollar(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let checks: Vec<Check> = Check::ALL
            .into_iter()
            .filter(|c| c.id().starts_with("dollar.") && k >= c.min_k())
            .collect();
        Ok(checks
            .iter()
            .map(|&c| self.run(c, k))
            .collect::<Result<Vec<_>>>()?
            .concat())
    }

    /// `r` of the word `prod_{j=1..i} a b^(j^e)`, and for `e = 1` its whole BWT.
    pub fn verify_t_family(&self, i: usize, e: u32) -> Result<Vec<VerifyReport>> {
        if i < 3 || e < 1 {
            return Err(Error::InvalidParameter(format!(
                "tfam needs i >= 3 and e >= 1, got i={i}, e={e}"
            )));
        }
        let w = t_family_word(i, e)?;
        let m = BwtMatrix::rotations_with(&w, self.builder)?;
        let mut rep = Reports::new(Check::TFamily, &[("i", i as u64), ("e", e as u64)]);
        let expected = if e == 1 { 2 * i - 2 } else { 2 * i };
        rep.push(
            "r",
            Value::Int(expected as i64),
            Value::Int(m.run_count() as i64),
            format!("n={}", w.len()),
        );
        if e == 1 {
            let mut form = b"b".to_vec();
            for j in (2..=i).rev() {
                form.extend(std::iter::repeat_n(b'b', j));
                form.push(b'a');
            }
            form.push(b'a');
            rep.push(
                "bwt",
                Value::word(&form),
                Value::word(&Symbol::render(m.last_column())),
                "",
            );
        }
        Ok(rep.out)
    }

    fn fib_append(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::FibAppend, &[("k", k as u64)]);
        let mut even = reverse_fibonacci(2 * k);
        even.push(b'b');
        rep.count("r(rev(s_2k) b)", 2 * k as u64, self.r(&even)?);
        let mut odd = reverse_fibonacci(2 * k + 1);
        odd.push(b'a');
        rep.count("r(rev(s_2k+1) a)", 2 * k as u64, self.r(&odd)?);
        Ok(rep.out)
    }

    fn fib_newsym(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::FibNewSymbol, &[("k", k as u64)]);
        let mut even = reverse_fibonacci(2 * k);
        even.push(b'c');
        rep.count("r(rev(s_2k) c)", 2 * k as u64 + 1, self.r(&even)?);
        let mut odd = reverse_fibonacci(2 * k + 1);
        odd.push(b'a' - 1);
        let kk = k as i64;
        rep.push(
            "r(rev(s_2k+1) x), x < a",
            Value::between(2 * kk + 2, 2 * kk + 3),
            Value::Int(self.r(&odd)? as i64),
            "",
        );
        let mut av = vec![b'a'];
        av.extend_from_slice(&reverse_fibonacci(2 * k + 1));
        let mut form = vec![b'b'; fib(2 * k - 2)?];
        form.push(b'a');
        for j in (0..=2 * k - 4).rev().step_by(2) {
            form.push(b'a');
            form.extend(std::iter::repeat_n(b'b', fib(j)?));
        }
        form.extend(std::iter::repeat_n(b'a', fib(2 * k)? - k + 1));
        let observed = Symbol::render(BwtMatrix::rotations_with(&av, self.builder)?.last_column());
        rep.push(
            "bwt(a rev(s_2k+1))",
            Value::word(&form),
            Value::word(&observed),
            "",
        );
        Ok(rep.out)
    }

    fn fib_insert(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::FibInsert, &[("k", k as u64)]);
        let s = fibonacci(2 * k);
        let pos_b = fib(2 * k - 1)? - 2;
        let with_b = apply_edit(
            &s,
            EditOp::Insert {
                pos: pos_b,
                sym: b'b',
            },
        )?;
        rep.push(
            "r(s with b inserted)",
            Value::Int(2 * k as i64),
            Value::Int(self.r(&with_b)? as i64),
            format!("pos={pos_b}"),
        );
        let pos_a = fib(2 * k)? - 2;
        let with_a = apply_edit(
            &s,
            EditOp::Insert {
                pos: pos_a,
                sym: b'a',
            },
        )?;
        rep.push(
            "r(s with a inserted)",
            Value::Int(2 * k as i64 - 2),
            Value::Int(self.r(&with_a)? as i64),
            format!("pos={pos_a}"),
        );
        Ok(rep.out)
    }

    fn fib_delete(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::FibDelete, &[("k", k as u64)]);
        let s_hat = truncate_last(&fibonacci(2 * k))?;
        let m = BwtMatrix::rotations_with(&s_hat, self.builder)?;
        let mut form = vec![b'b'; k - 1];
        form.push(b'a');
        form.extend(std::iter::repeat_n(b'b', fib(2 * k - 3)? - k + 1));
        for j in (1..=2 * k - 5).rev().step_by(2) {
            form.push(b'a');
            form.extend(std::iter::repeat_n(b'b', fib(j)?));
        }
        form.extend(std::iter::repeat_n(b'a', fib(2 * k - 1)? - k + 1));
        rep.push(
            "bwt(ŝ)",
            Value::word(&form),
            Value::word(&Symbol::render(m.last_column())),
            format!("n={}", s_hat.len()),
        );
        rep.count("r(ŝ)", 2 * k as u64, m.run_count());
        Ok(rep.out)
    }

    fn fib_subst(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::FibSubstitute, &[("k", k as u64)]);
        let s = fibonacci(2 * k);
        let pos = fib(2 * k)? - 1;
        let detail = format!("pos={pos}, replaced {}", s[pos] as char);
        let edited = apply_edit(&s, EditOp::Substitute { pos, sym: b'a' })?;
        rep.push(
            "r(s with b -> a)",
            Value::Int(2 * k as i64 + 2),
            Value::Int(self.r(&edited)? as i64),
            detail,
        );
        Ok(rep.out)
    }

    fn dollar_words(&self, k: usize) -> Result<Vec<(String, Vec<u8>)>> {
        let mut words = vec![
            (format!("s_{}", 2 * k), fibonacci(2 * k)),
            (
                format!("rev(s_{})", 2 * k + 1),
                reverse_fibonacci(2 * k + 1),
            ),
        ];
        if k >= 6 {
            words.push((format!("w_{k}"), wk_word(k)?));
        }
        Ok(words)
    }

    fn dollar_prepend(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::DollarPrepend, &[("k", k as u64)]);
        for (name, v) in self.dollar_words(k)? {
            let base = self.r_dollar(&v) as i64;
            for x in *b"ab" {
                let mut xv = vec![x];
                xv.extend_from_slice(&v);
                rep.push(
                    format!("r_$({} {name})", x as char),
                    Value::between(base - 1, base + 2),
                    Value::Int(self.r_dollar(&xv) as i64),
                    format!("r_$({name})={base}"),
                );
            }
        }
        Ok(rep.out)
    }

    fn dollar_append_min(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::DollarAppendMin, &[("k", k as u64)]);
        for (name, v) in self.dollar_words(k)? {
            let x = *v.iter().min().expect("non-empty");
            let mut vx = v.clone();
            vx.push(x);
            let base = self.bwt_dollar(&v);
            let mut expected = vec![x];
            expected.extend_from_slice(&base);
            let observed = self.bwt_dollar(&vx);
            let (r_base, r_obs) = (
                crate::bwt::count_runs(&base) as i64,
                crate::bwt::count_runs(&observed) as i64,
            );
            rep.push(
                format!("bwt({name} {}$)", x as char),
                Value::word(&expected),
                Value::word(&observed),
                "",
            );
            rep.push(
                format!("r_$({name} {})", x as char),
                Value::between(r_base, r_base + 1),
                Value::Int(r_obs),
                "",
            );
        }
        Ok(rep.out)
    }

    fn lyndon_b(&self, k: usize) -> Result<(Vec<u8>, Vec<u8>)> {
        let v = lyndon_rotation(&fibonacci(2 * k))?;
        let mut vb = v.clone();
        vb.push(b'b');
        Ok((v, vb))
    }

    fn dollar_lyndon_b(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::DollarLyndonB, &[("k", k as u64)]);
        let (v, vb) = self.lyndon_b(k)?;
        let kk = k as i64;
        rep.push(
            "r_$(v)",
            Value::between(2, 4),
            Value::Int(self.r_dollar(&v) as i64),
            format!("n={}", v.len()),
        );
        rep.push(
            "v b is Lyndon",
            Value::Int(1),
            Value::Int(is_lyndon(&vb)? as i64),
            "",
        );
        let r_vb = self.r_dollar(&vb) as i64;
        if k >= 3 {
            rep.count("r(v b)", 2 * k as u64, self.r(&vb)?);
            rep.push(
                "r_$(v b)",
                Value::at_least(2 * kk - 2),
                Value::Int(r_vb),
                "",
            );
            let (_, prev) = self.lyndon_b(k - 1)?;
            let r_prev = self.r_dollar(&prev) as i64;
            rep.push(
                "r_$(v b) grows with k",
                Value::at_least(r_prev + 1),
                Value::Int(r_vb),
                format!("previous={r_prev}"),
            );
        }
        Ok(rep.out)
    }

    fn dollar_ratio(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::DollarRatio, &[("k", k as u64)]);
        let v = reverse_fibonacci(2 * k + 1);
        let r = self.r(&v)?;
        let rd = self.r_dollar(&v);
        let kk = k as i64;
        rep.count("r(rev(s_2k+1))", 2, r);
        rep.push(
            "r_$(rev(s_2k+1))",
            Value::between(2 * kk + 2, 2 * kk + 3),
            Value::Int(rd as i64),
            format!("ratio={}", Ratio::new(rd, r.max(1))),
        );
        Ok(rep.out)
    }

    fn dollar_diff(&self, k: usize) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(Check::DollarDiff, &[("k", k as u64)]);
        let w = wk_word(k)?;
        let diff = self.r_dollar(&w) as i64 - self.r(&w)? as i64;
        rep.push(
            "r_$(w_k) - r(w_k)",
            Value::Int(2 * k as i64 - 4),
            Value::Int(diff),
            format!("n={}", w.len()),
        );
        Ok(rep.out)
    }

    /// Block, concatenation and run-count claims for one row of the table, plus
    /// an optional gap `r(row) - r(base)`.
    fn wk_row(
        &self,
        check: Check,
        variant: WkVariant,
        k: usize,
        gap: Option<(WkVariant, i64)>,
    ) -> Result<Vec<VerifyReport>> {
        let mut rep = Reports::new(check, &[("k", k as u64)]);
        let m = variant.matrix(k, self.builder)?;
        let mut concat = Vec::with_capacity(m.len());
        for col in BlockColumn::columns(k) {
            let observed = Symbol::render(m.block(&col.prefix(k)));
            concat.extend_from_slice(&observed);
            rep.push(
                format!("beta_{}({})", col.label(k), variant.label()),
                Value::word(&variant.expected_block(k, col)),
                Value::word(&observed),
                "",
            );
        }
        rep.push(
            format!("blocks tile bwt({})", variant.label()),
            Value::word(&Symbol::render(m.last_column())),
            Value::word(&concat),
            "",
        );
        let mut detail = format!("n={}", m.len() - variant.has_end_marker() as usize);
        if variant == WkVariant::DollarBb {
            detail.push_str("; 8k-17 is stated under the label r(w_k b$) but belongs to w_k bb$");
        }
        rep.push(
            format!("r({})", variant.label()),
            Value::Int(variant.expected_r(k) as i64),
            Value::Int(m.run_count() as i64),
            detail,
        );
        if let Some((base, expected)) = gap {
            let base_r = base.matrix(k, self.builder)?.run_count() as i64;
            rep.push(
                format!("r({}) - r({})", variant.label(), base.label()),
                Value::Int(expected),
                Value::Int(m.run_count() as i64 - base_r),
                "",
            );
        }
        Ok(rep.out)
    }

    /// The observed block table for `w_k` and its edits.
    pub fn table(&self, k: usize) -> Result<Vec<TableRow>> {
        ensure_k(Check::WkBwt, k)?;
        WkVariant::ALL
            .iter()
            .map(|&variant| {
                let m = variant.matrix(k, self.builder)?;
                let blocks = BlockColumn::columns(k)
                    .into_iter()
                    .map(|col| (col.label(k), Symbol::render_string(m.block(&col.prefix(k)))))
                    .collect();
                Ok(TableRow {
                    variant,
                    label: variant.label(),
                    length: (m.len() - variant.has_end_marker() as usize) as u64,
                    blocks,
                    runs: m.run_count(),
                })
            })
            .collect()
    }
}

pub fn verify_fibonacci_catastrophes(k: usize) -> Result<Vec<VerifyReport>> {
    Verifier::default().verify_fibonacci_catastrophes(k)
}

pub fn verify_t_family(i: usize, e: u32) -> Result<Vec<VerifyReport>> {
    Verifier::default().verify_t_family(i, e)
}

pub fn verify_wk(k: usize) -> Result<Vec<VerifyReport>> {
    Verifier::default().verify_wk(k)
}

pub fn verify_wk_edits(k: usize) -> Result<Vec<VerifyReport>> {
    Verifier::default().verify_wk_edits(k)
}

pub fn verify_dollar(k: usize) -> Result<Vec<VerifyReport>> {
    Verifier::default().verify_dollar(k)
}

pub fn verify_all(ks: RangeInclusive<usize>) -> Result<Summary> {
    Verifier::default().verify_all(ks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(reports: &[VerifyReport]) {
        let failed: Vec<String> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.to_string())
            .collect();
        assert!(failed.is_empty(), "failures:\n{}", failed.join("\n"));
    }

    #[test]
    fn ids_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::from_id(c.id()), Some(c));
        }
        assert_eq!(Check::from_id("nope"), None);
    }

    #[test]
    fn fibonacci_checks_pass() {
        for k in 3..=8 {
            assert_all_pass(&verify_fibonacci_catastrophes(k).unwrap());
        }
    }

    #[test]
    fn fibonacci_checks_reject_small_k() {
        assert!(verify_fibonacci_catastrophes(2).is_err());
    }

    #[test]
    fn wk_rows_pass() {
        for k in 6..=12 {
            assert_all_pass(&verify_wk(k).unwrap());
            assert_all_pass(&verify_wk_edits(k).unwrap());
        }
        assert!(verify_wk(5).is_err());
    }

    #[test]
    fn dollar_checks_pass() {
        for k in 2..=10 {
            assert_all_pass(&verify_dollar(k).unwrap());
        }
    }

    #[test]
    fn t_family_passes() {
        for i in 3..=8 {
            for e in 1..=3 {
                assert_all_pass(&verify_t_family(i, e).unwrap());
            }
        }
        assert!(verify_t_family(2, 1).is_err());
    }

    #[test]
    fn verify_all_empty_and_nonempty() {
        #[allow(clippy::reversed_empty_ranges)]
        let empty = verify_all(7..=6).unwrap();
        assert!(empty.reports.is_empty() && empty.all_pass());
        let six = verify_all(6..=6).unwrap();
        assert!(six.reports.len() >= 30);
        assert!(six.all_pass());
    }

    #[test]
    fn block_labels() {
        assert_eq!(BlockColumn::AiB(5).label(9), "a^5b");
        assert_eq!(BlockColumn::A2B.label(9), "aab");
        assert_eq!(BlockColumn::Bk1A.label(6), "b^7a");
        assert_eq!(BlockColumn::Dollar.label(6), "$");
    }

    #[test]
    fn table_of_seven() {
        let rows = Verifier::default().table(7).unwrap();
        assert_eq!(rows.len(), 8);
        let runs: Vec<u64> = rows.iter().map(|r| r.runs).collect();
        assert_eq!(runs, vec![30, 36, 36, 36, 40, 29, 39, 40]);
        let ba = rows[0].blocks.iter().find(|(l, _)| l == "ba").unwrap();
        assert_eq!(ba.1, "aabbbabbbabbbbba");
    }

    #[test]
    fn oracle_builder_agrees() {
        let fast = Verifier::default().verify_all(6..=7).unwrap();
        let naive = Verifier::new(CaBuilder::Naive).verify_all(6..=7).unwrap();
        assert_eq!(fast, naive);
    }
}
