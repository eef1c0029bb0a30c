//! Normal forms against a naive word rewriter that knows the sphere's
//! relations directly and applies them in random order.

use std::collections::BTreeMap;

use cotensor_core::presets::{bundled, matsumoto};
use cotensor_core::{AlgebraElement, AlgebraPresentation, LaurentScalar, Strategy};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// Letters: 0 = a, 1 = a', 2 = b, 3 = b'.
type Word = Vec<u8>;
// Coefficients: powers of L with integer weights.
type Poly = BTreeMap<i32, i64>;
type Sum = BTreeMap<Word, Poly>;

/// `x y = L^e y x` for `x > y`.
fn swap_exponent(x: u8, y: u8) -> i32 {
    match (x, y) {
        (1, 0) | (3, 2) => 0,
        (2, 0) | (3, 1) => -1,
        (2, 1) | (3, 0) => 1,
        _ => unreachable!(),
    }
}

fn add(sum: &mut Sum, w: Word, e: i32, c: i64) {
    let p = sum.entry(w.clone()).or_default();
    *p.entry(e).or_default() += c;
    if p[&e] == 0 {
        p.remove(&e);
    }
    if p.is_empty() {
        sum.remove(&w);
    }
}

fn redexes(w: &[u8]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] > w[i + 1] || (w[i], w[i + 1]) == (2, 3))
        .collect()
}

fn rewrite_randomly(word: &[u8], rng: &mut StdRng) -> Sum {
    let mut sum = Sum::new();
    add(&mut sum, word.to_vec(), 0, 1);
    loop {
        let reducible: Vec<Word> = sum.keys().filter(|w| !redexes(w).is_empty()).cloned().collect();
        if reducible.is_empty() {
            return sum;
        }
        let w = reducible[rng.gen_range(0..reducible.len())].clone();
        let spots = redexes(&w);
        let i = spots[rng.gen_range(0..spots.len())];
        let poly = sum.remove(&w).unwrap();
        let (x, y) = (w[i], w[i + 1]);
        let (pre, post) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[u8]| [pre, mid, post].concat();
        for (e, c) in poly {
            if (x, y) == (2, 3) || (x, y) == (3, 2) {
                // b b' = b' b = 1 - a a'
                add(&mut sum, splice(&[]), e, c);
                add(&mut sum, splice(&[0, 1]), e, -c);
            } else {
                add(&mut sum, splice(&[y, x]), e + swap_exponent(x, y), c);
            }
        }
    }
}

fn from_engine(x: &AlgebraElement) -> Sum {
    let mut sum = Sum::new();
    for (m, s) in x.terms() {
        let e = m.exponents();
        let w: Word = (0..4u8)
            .flat_map(|g| std::iter::repeat_n(g, e[g as usize] as usize))
            .collect();
        for (exps, c) in s.terms() {
            assert_eq!(exps[1], 0, "sphere over L has no M");
            add(&mut sum, w.clone(), exps[0], *c);
        }
    }
    sum
}

fn engine_nf(p: &AlgebraPresentation, w: &[u8]) -> AlgebraElement {
    let idx: Vec<usize> = w.iter().map(|&g| g as usize).collect();
    p.normal_form_indices(&LaurentScalar::one(), &idx)
}

#[test]
fn known_products() {
    let p = matsumoto("A", 0);
    let nf = |s: &str| {
        let w: Vec<&str> = s.split_whitespace().collect();
        p.render(&p.normal_form(LaurentScalar::one(), &w).unwrap())
    };
    assert_eq!(nf("b a"), "L^-1 a b");
    assert_eq!(nf("a b a' b'"), "L a a' - L a^2 a'^2");
    assert_eq!(nf("b' b"), "1 - a a'");
    assert_eq!(nf("a' a"), "a a'");
}

#[test]
fn every_order_reaches_the_engine_form() {
    let p = matsumoto("A", 0);
    let mut rng = StdRng::seed_from_u64(7);
    // every word of length 5
    for code in 0..4u32.pow(5) {
        let w: Word = (0..5).map(|i| ((code >> (2 * i)) & 3) as u8).collect();
        let want = from_engine(&engine_nf(&p, &w));
        for _ in 0..3 {
            assert_eq!(rewrite_randomly(&w, &mut rng), want, "word {w:?}");
        }
    }
}

#[test]
fn bundled_algebras_are_confluent_to_degree_six() {
    for (_, text) in cotensor_core::presets::BUNDLED {
        let bundle = cotensor_core::bundle::Bundle::parse(text).unwrap();
        for decl in bundle.algebras.values() {
            let r = decl.presentation.check_local_confluence_with(6, Strategy::default());
            assert!(
                r.is_confluent(),
                "{}: {:?}",
                decl.presentation.name(),
                r.divergences.first()
            );
            assert!(r.words_checked > 0);
        }
        let cot = bundle.cotensor_algebra().unwrap().unwrap();
        assert!(cot
            .ambient()
            .check_local_confluence_with(6, Strategy::default())
            .is_confluent());
    }
    assert!(bundled("matsumoto-ex1").is_some());
}

proptest! {
    #[test]
    fn random_words_agree(w in prop::collection::vec(0u8..4, 0..=8), seed in any::<u64>()) {
        let p = matsumoto("A", 0);
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert_eq!(rewrite_randomly(&w, &mut rng), from_engine(&engine_nf(&p, &w)));
    }
}
