//! Generators for the word families with closed-form BWT run counts.
//!
//! All generators use the binary alphabet `a < b` and build iteratively.

use crate::word::{is_primitive, least_rotation, reverse};
use crate::{Error, Result};

/// Exponents of a standard-word construction, all at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectiveSequence(Vec<u64>);

impl DirectiveSequence {
    pub fn new(d: Vec<u64>) -> Result<Self> {
        if let Some(pos) = d.iter().position(|&x| x == 0) {
            return Err(Error::InvalidParameter(format!(
                "directive entry d_{pos} must be >= 1"
            )));
        }
        Ok(DirectiveSequence(d))
    }

    /// The all-ones sequence of length `len` (Fibonacci words).
    pub fn ones(len: usize) -> Self {
        DirectiveSequence(vec![1; len])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Standard word of the given order: `s_0 = b`, `s_1 = a`, and
/// `s_{i+1} = s_i^{d_{i-1}} s_{i-1}`.
///
/// Note the index offset: building `s_{i+1}` consumes `d_{i-1}`, so order `m`
/// needs `m - 1` directive entries.
pub fn standard_word(d: &DirectiveSequence, order: usize) -> Result<Vec<u8>> {
    match order {
        0 => return Ok(b"b".to_vec()),
        1 => return Ok(b"a".to_vec()),
        _ => {}
    }
    let needed = order - 1;
    if d.0.len() < needed {
        return Err(Error::InsufficientDirectives {
            order,
            needed,
            got: d.0.len(),
        });
    }
    let mut prev = b"b".to_vec();
    let mut cur = b"a".to_vec();
    for &exp in &d.0[..needed] {
        let mut next = Vec::with_capacity(cur.len() * exp as usize + prev.len());
        for _ in 0..exp {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Fibonacci word `s_order` (`s_0 = b`, `s_1 = a`, `s_{i+1} = s_i s_{i-1}`).
pub fn fibonacci(order: usize) -> Vec<u8> {
    standard_word(&DirectiveSequence::ones(order.saturating_sub(1)), order)
        .expect("all-ones sequence has the needed length")
}

/// `F_i` with `F_0 = F_1 = 1`.
pub fn fibonacci_number(i: usize) -> Result<u64> {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..i {
        let next = a
            .checked_add(b)
            .ok_or(Error::Overflow("Fibonacci number"))?;
        a = std::mem::replace(&mut b, next);
    }
    Ok(a)
}

/// Central word `x_order`: the Fibonacci word of that order minus its last two symbols.
pub fn central_word(order: usize) -> Result<Vec<u8>> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!(
            "central word needs order >= 2, got {order}"
        )));
    }
    let mut s = fibonacci(order);
    s.truncate(s.len() - 2);
    Ok(s)
}

pub fn reverse_fibonacci(order: usize) -> Vec<u8> {
    reverse(&fibonacci(order))
}

/// Least rotation of a primitive word, which is its Lyndon conjugate.
pub fn lyndon_rotation(w: &[u8]) -> Result<Vec<u8>> {
    if !is_primitive(w)? {
        return Err(Error::NotPrimitive(String::from_utf8_lossy(w).into_owned()));
    }
    Ok(least_rotation(w))
}

fn push_run(out: &mut Vec<u8>, symbol: u8, len: usize) {
    out.extend(std::iter::repeat_n(symbol, len));
}

/// `a b^i a a`
pub fn s_block(i: usize) -> Vec<u8> {
    let mut out = vec![b'a'];
    push_run(&mut out, b'b', i);
    out.extend_from_slice(b"aa");
    out
}

/// `a b^i a b a^(i-2)`, for `i >= 2`.
pub fn e_block(i: usize) -> Vec<u8> {
    let mut out = vec![b'a'];
    push_run(&mut out, b'b', i);
    out.extend_from_slice(b"ab");
    push_run(&mut out, b'a', i.saturating_sub(2));
    out
}

/// `a b^k a`
pub fn q_block(k: usize) -> Vec<u8> {
    let mut out = vec![b'a'];
    push_run(&mut out, b'b', k);
    out.push(b'a');
    out
}

fn check_wk(k: usize) -> Result<()> {
    if k <= 5 {
        return Err(Error::InvalidParameter(format!(
            "w_k defined only for k > 5, got {k}"
        )));
    }
    Ok(())
}

/// Expected `|w_k| = (3k^2 + 7k - 18) / 2`.
pub fn wk_len(k: usize) -> Result<u64> {
    check_wk(k)?;
    let k = k as u64;
    Ok((3 * k * k + 7 * k - 18) / 2)
}

/// `w_k = s_2 e_2 s_3 e_3 ... s_{k-1} e_{k-1} q_k`, for `k > 5`.
pub fn wk_word(k: usize) -> Result<Vec<u8>> {
    check_wk(k)?;
    let mut out = Vec::new();
    for i in 2..k {
        out.extend(s_block(i));
        out.extend(e_block(i));
    }
    out.extend(q_block(k));
    Ok(out)
}

/// The blocks of `w_k` in concatenation order.
pub fn wk_blocks(k: usize) -> Result<Vec<Vec<u8>>> {
    check_wk(k)?;
    let mut out: Vec<Vec<u8>> = (2..k).flat_map(|i| [s_block(i), e_block(i)]).collect();
    out.push(q_block(k));
    Ok(out)
}

/// `w_{i,k} = prod_{j=1..i} a b^(j^k)`.
pub fn t_family_word(i: usize, k: u32) -> Result<Vec<u8>> {
    if i < 1 || k < 1 {
        return Err(Error::InvalidParameter(format!(
            "T-family needs i >= 1 and k >= 1, got ({i}, {k})"
        )));
    }
    let mut out = Vec::new();
    for j in 1..=i {
        let len = (j as u64)
            .checked_pow(k)
            .ok_or(Error::Overflow("T-family run length"))?;
        out.push(b'a');
        push_run(&mut out, b'b', len as usize);
    }
    Ok(out)
}

/// A run-length description `sym^len ...` expanded to a word; a tiny helper
/// for writing closed forms.
pub fn expand_runs(parts: &[(u8, u64)]) -> Vec<u8> {
    let mut out = Vec::new();
    for &(sym, len) in parts {
        push_run(&mut out, sym, len as usize);
    }
    out
}
