use bwtcat_core::families::{standard_word, DirectiveSequence};
use bwtcat_core::sensitivity::{apply_edit, scan_edits_with, AlphabetPolicy, EditOp, Parallelism};
use bwtcat_core::word::{conj, is_lyndon, least_rotation};
use bwtcat_core::{
    bwt, bwt_dollar, inverse_bwt, inverse_bwt_dollar, r, r_dollar, CaBuilder, Symbol,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn word(alphabet: &'static [u8], max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(alphabet), 1..=max_len)
}

#[test]
fn fast_ca_matches_oracle_on_random_words() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=512);
        let sigma = rng.gen_range(1..=4u8);
        let w: Vec<u8> = (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
        let fast = CaBuilder::PrefixDoubling.build(&w).unwrap();
        let naive = CaBuilder::Naive.build(&w).unwrap();
        assert_eq!(
            fast.as_slice(),
            naive.as_slice(),
            "word {}",
            String::from_utf8_lossy(&w)
        );
    }
}

#[test]
fn fast_ca_matches_oracle_on_marked_words() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..2_000 {
        let len = rng.gen_range(0..=256);
        let mut w: Vec<Symbol> = (0..len)
            .map(|_| Symbol::Byte(rng.gen_range(0..=255)))
            .collect();
        w.push(Symbol::End);
        let fast = CaBuilder::PrefixDoubling.build(&w).unwrap();
        let naive = CaBuilder::Naive.build(&w).unwrap();
        assert_eq!(fast.as_slice(), naive.as_slice());
    }
}

proptest! {
    #[test]
    fn inverse_returns_least_rotation(w in word(b"abc", 64)) {
        let t = bwt(&w).unwrap().to_bytes();
        prop_assert_eq!(inverse_bwt(&t).unwrap(), least_rotation(&w));
    }

    #[test]
    fn dollar_inverse_round_trips(w in prop::collection::vec(any::<u8>(), 0..64)) {
        let t = bwt_dollar(&w);
        prop_assert_eq!(inverse_bwt_dollar(t.symbols()).unwrap(), w);
    }

    #[test]
    fn bwt_is_conjugacy_invariant(w in word(b"ab", 48), i in 0usize..48) {
        let i = i % w.len();
        prop_assert_eq!(bwt(&w).unwrap(), bwt(&conj(&w, i).unwrap()).unwrap());
    }

    #[test]
    fn standard_words_have_two_runs(d in prop::collection::vec(1u64..4, 1..8)) {
        let order = d.len() + 1;
        let s = standard_word(&DirectiveSequence::new(d).unwrap(), order).unwrap();
        prop_assert_eq!(r(&s).unwrap(), 2);
    }

    #[test]
    fn appended_symbol_is_a_conjugate_insertion(w in word(b"ab", 40), c in prop::sample::select(b"abc".to_vec()), i in 0usize..40) {
        let i = i % w.len();
        let (v, u) = w.split_at(i);
        let mut wc = w.clone();
        wc.push(c);
        let cw = apply_edit(&w, EditOp::Insert { pos: 0, sym: c }).unwrap();
        let ucv = [u, &[c][..], v].concat();
        let base = r(&wc).unwrap();
        prop_assert_eq!(r(&cw).unwrap(), base);
        prop_assert_eq!(r(&ucv).unwrap(), base);
    }

    #[test]
    fn prepend_and_append_min_bounds(w in word(b"ab", 24), x in prop::sample::select(b"ab".to_vec())) {
        let base = r_dollar(&w) as i64;
        let mut xw = vec![x];
        xw.extend_from_slice(&w);
        let pre = r_dollar(&xw) as i64;
        prop_assert!(base - 1 <= pre && pre <= base + 2);
        let mut wa = w.clone();
        wa.push(b'a');
        let app = r_dollar(&wa) as i64;
        prop_assert!(base <= app && app <= base + 1);
    }

    #[test]
    fn scan_ignores_parallelism(w in word(b"ab", 16)) {
        prop_assume!(w.len() >= 2);
        let a = scan_edits_with(&w, AlphabetPolicy::WordAlphabetPlusFresh, Parallelism::Serial, CaBuilder::default()).unwrap();
        let b = scan_edits_with(&w, AlphabetPolicy::WordAlphabetPlusFresh, Parallelism::Parallel, CaBuilder::Naive).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn lyndon_prepend_bound_small() {
    for len in 2..=10u32 {
        for bits in 0..(1u32 << len) {
            let v: Vec<u8> = (0..len)
                .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
                .collect();
            if !v.contains(&b'a') || !v.contains(&b'b') || !is_lyndon(&v).unwrap() {
                continue;
            }
            let base = r(&v).unwrap();
            let mut av = vec![b'a'];
            av.extend_from_slice(&v);
            let mut va = v.clone();
            va.push(b'a');
            let (x, y) = (r(&av).unwrap(), r(&va).unwrap());
            assert_eq!(x, y);
            assert!(base <= x && x <= base + 2);
        }
    }
}

#[test]
fn prefix_of_fibonacci_has_more_runs() {
    let s = bwtcat_core::families::fibonacci(6);
    assert_eq!(r(&s).unwrap(), 2);
    assert_eq!(r(&s[..12]).unwrap(), 6);
}
