use std::sync::Arc;

use cotensor_core::bundle::Bundle;
use cotensor_core::connection::{hfirst_holds, hsecond_holds, matsumoto_connection, verify_strong_connection};
use cotensor_core::parse::{parse_element, Space};
use cotensor_core::presets::{bundled, matsumoto};
use cotensor_core::suites::{run_suites, SuiteConfig};
use cotensor_core::{AlgebraElement, AlgebraPresentation, Grading, LaurentScalar, Strategy, TensorElement};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn scalar() -> impl proptest::strategy::Strategy<Value = LaurentScalar> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), -4i64..=4), 0..4)
        .prop_map(|ts| LaurentScalar::from_terms(ts.into_iter().map(|((l, m), c)| ([l, m], c))))
}

fn word(max: usize) -> impl proptest::strategy::Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=max)
}

fn element(p: &AlgebraPresentation, terms: &[(Vec<usize>, LaurentScalar)]) -> AlgebraElement {
    terms
        .iter()
        .fold(p.zero(), |acc, (w, c)| &acc + &p.normal_form_indices(c, w))
}

fn sphere() -> AlgebraPresentation {
    matsumoto("A", 0)
}

proptest! {
    #[test]
    fn scalar_ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &LaurentScalar::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn scalar_star_is_an_involutive_ring_map(x in scalar(), y in scalar()) {
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x * &y).star(), &x.star() * &y.star());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
    }

    #[test]
    fn normal_form_is_idempotent(w in word(8), c in scalar()) {
        let p = sphere();
        let x = p.normal_form_indices(&c, &w);
        for (m, _) in x.terms() {
            prop_assert!(p.is_normal(m));
            let again = p.normal_form_indices(&LaurentScalar::one(), &m.word());
            prop_assert_eq!(again, p.monomial(m));
        }
    }

    #[test]
    fn multiplication_is_associative(u in word(2), v in word(2), w in word(2)) {
        let p = sphere();
        let one = LaurentScalar::one();
        let (x, y, z) = (p.normal_form_indices(&one, &u), p.normal_form_indices(&one, &v), p.normal_form_indices(&one, &w));
        let left = p.mul(&p.mul(&x, &y).unwrap(), &z).unwrap();
        let right = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let whole: Vec<usize> = [u, v, w].concat();
        prop_assert_eq!(left, p.normal_form_indices(&one, &whole));
    }

    #[test]
    fn star_reverses_products(u in word(3), v in word(3), c in scalar()) {
        let p = sphere();
        let x = p.normal_form_indices(&c, &u);
        let y = p.normal_form_indices(&LaurentScalar::one(), &v);
        let lhs = p.star(&p.mul(&x, &y).unwrap()).unwrap();
        let rhs = p.mul(&p.star(&y).unwrap(), &p.star(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.star(&p.star(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn render_then_parse_round_trips(terms in prop::collection::vec((word(4), scalar()), 0..4), second in any::<bool>()) {
        let p = matsumoto(if second { "P" } else { "A" }, usize::from(second));
        let x = element(&p, &terms);
        let back = parse_element(Space::algebra(&p), &p.render(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn balance_checkers_agree(
        terms in prop::collection::vec((word(3), word(3), -3i64..=3), 1..4),
        example_two in any::<bool>(),
    ) {
        let p = sphere();
        let left = if example_two { Grading::new(vec![-1, 1, 1, -1]) } else { Grading::new(vec![-1, 1, -1, 1]) };
        let one = LaurentScalar::one();
        let mut t = TensorElement::zero(vec![cotensor_core::SlotKind::Algebra(p.id()); 2]);
        for (u, v, c) in &terms {
            let x = p.normal_form_indices(&LaurentScalar::integer(*c), u);
            let y = p.normal_form_indices(&one, v);
            t = &t + &TensorElement::pure(&[&x, &y]);
        }
        let first = hfirst_holds(&p, &left, &t).unwrap();
        let second = hsecond_holds(&p, &left, &t).unwrap();
        prop_assert_eq!(first, second);
        // oracle: every surviving term pairs opposite left degrees
        let balanced = t.terms().all(|(e, _)| {
            left.degree(e[0].monomial().unwrap()) + left.degree(e[1].monomial().unwrap()) == 0
        });
        prop_assert_eq!(first, balanced);
    }
}

#[test]
fn generator_times_star_is_central() {
    let p = sphere();
    let one = LaurentScalar::one();
    for pair in [[0usize, 1], [2, 3]] {
        let z = p.normal_form_indices(&one, &pair);
        for m in p.normal_monomials(6) {
            let x = p.monomial(&m);
            assert!(
                p.commutator(&z, &x).unwrap().is_zero(),
                "{} vs {}",
                p.render(&z),
                p.render(&x)
            );
        }
    }
}

#[test]
fn coaction_is_multiplicative() {
    let p = sphere();
    let g = Grading::new(vec![1, -1, 1, -1]);
    let monos = p.normal_monomials(3);
    for x in &monos {
        for y in &monos {
            let xy = p.mul(&p.monomial(x), &p.monomial(y)).unwrap();
            for (m, _) in xy.terms() {
                assert_eq!(g.degree(m), g.degree(x) + g.degree(y));
            }
        }
    }
}

#[test]
fn strategies_give_identical_reports() {
    let bundle = Bundle::parse(bundled("matsumoto-ex2").unwrap()).unwrap();
    let run = |strategy| {
        let cfg = SuiteConfig {
            n_bound: 3,
            degree_bound: 4,
            strategy,
            ..Default::default()
        };
        run_suites(&bundle, &cfg).unwrap().results
    };
    assert_eq!(run(Strategy::Sequential), run(Strategy::Parallel));

    let p = Arc::new(sphere());
    let form = matsumoto_connection(p.clone(), &Grading::new(vec![1, -1, 1, -1])).unwrap();
    assert_eq!(
        verify_strong_connection(&form, 5, Strategy::Sequential),
        verify_strong_connection(&form, 5, Strategy::Parallel)
    );
    let c = |s| {
        let r = p.check_local_confluence_with(6, s);
        (r.words_checked, r.divergences)
    };
    assert_eq!(c(Strategy::Sequential), c(Strategy::Parallel));
}
