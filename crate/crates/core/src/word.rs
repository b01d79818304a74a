//! Elementary operations on words: rotations, reversal, longest common
//! prefixes, primitivity and Lyndon tests.

use crate::{Error, Result};

/// Longest common prefix of `u` and `v`.
pub fn lcp<'a>(u: &'a [u8], v: &[u8]) -> &'a [u8] {
    let len = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    &u[..len]
}

/// The rotation `w[i..] w[..i]`.
pub fn conj(w: &[u8], i: usize) -> Result<Vec<u8>> {
    if i >= w.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: w.len(),
        });
    }
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[i..]);
    out.extend_from_slice(&w[..i]);
    Ok(out)
}

pub fn reverse(w: &[u8]) -> Vec<u8> {
    w.iter().rev().copied().collect()
}

/// `w` without its last symbol.
pub fn truncate_last(w: &[u8]) -> Result<Vec<u8>> {
    match w.split_last() {
        Some((_, head)) => Ok(head.to_vec()),
        None => Err(Error::EmptyWord),
    }
}

/// Smallest period `p` of `w` such that `w[i] = w[i + p]` (KMP border).
fn smallest_period(w: &[u8]) -> usize {
    let n = w.len();
    let mut border = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = border[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    n - border[n]
}

/// Length of the primitive root `u` with `w = u^e`.
pub fn primitive_root_len(w: &[u8]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let p = smallest_period(w);
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// True iff `w` is not a proper power.
pub fn is_primitive(w: &[u8]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(primitive_root_len(w) == w.len())
}

/// Start index of the lexicographically least rotation; the smallest such
/// index when several rotations are equal.
pub fn least_rotation_start(w: &[u8]) -> usize {
    let n = w.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = w[(i + k) % n];
        let b = w[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// The least rotation of `w`.
pub fn least_rotation(w: &[u8]) -> Vec<u8> {
    if w.is_empty() {
        return Vec::new();
    }
    let start = least_rotation_start(w);
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[start..]);
    out.extend_from_slice(&w[..start]);
    out
}

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> Result<bool> {
    Ok(is_primitive(w)? && least_rotation_start(w) == 0)
}

/// Distinct symbols of `w` in increasing order.
pub fn alphabet(w: &[u8]) -> Vec<u8> {
    let mut seen = [false; 256];
    for &b in w {
        seen[b as usize] = true;
    }
    (0..=255u8).filter(|&b| seen[b as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lcp_examples() {
        assert_eq!(lcp(b"abaab", b"abb"), b"ab");
        assert_eq!(lcp(b"ab", b"abc"), b"ab");
        assert_eq!(lcp(b"", b"abc"), b"");
    }

    #[test]
    fn lyndon_examples() {
        assert!(is_lyndon(b"aab").unwrap());
        assert!(!is_lyndon(b"aba").unwrap());
        assert!(!is_lyndon(b"abab").unwrap());
        assert!(is_lyndon(b"a").unwrap());
        assert_eq!(is_lyndon(b""), Err(Error::EmptyWord));
    }

    #[test]
    fn primitive_examples() {
        assert!(!is_primitive(b"abab").unwrap());
        assert!(is_primitive(b"aba").unwrap());
        assert!(!is_primitive(b"aaa").unwrap());
        assert_eq!(primitive_root_len(b"abcabc"), 3);
        assert_eq!(primitive_root_len(b"abcab"), 5);
    }

    #[test]
    fn conj_and_reverse() {
        assert_eq!(conj(b"abc", 1).unwrap(), b"bca");
        assert_eq!(conj(b"abc", 0).unwrap(), b"abc");
        assert_eq!(
            conj(b"abc", 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
        assert_eq!(reverse(b"abc"), b"cba");
        assert_eq!(truncate_last(b"abc").unwrap(), b"ab");
    }

    #[test]
    fn least_rotation_examples() {
        assert_eq!(least_rotation(b"abaababaabaab"), b"aabaababaabab");
        assert_eq!(least_rotation(b"ba"), b"ab");
        assert_eq!(least_rotation_start(b"baba"), 1);
    }

    proptest! {
        #[test]
        fn least_rotation_matches_brute_force(w in proptest::collection::vec(b'a'..=b'c', 1..24)) {
            let n = w.len();
            let best = (0..n)
                .min_by(|&i, &j| crate::ca::compare_rotations(&w, i, j).then(i.cmp(&j)))
                .unwrap();
            prop_assert_eq!(least_rotation_start(&w), best);
        }

        #[test]
        fn primitive_iff_distinct_conjugates(w in proptest::collection::vec(b'a'..=b'b', 1..16)) {
            let distinct: std::collections::HashSet<Vec<u8>> =
                (0..w.len()).map(|i| conj(&w, i).unwrap()).collect();
            prop_assert_eq!(is_primitive(&w).unwrap(), distinct.len() == w.len());
        }
    }
}
