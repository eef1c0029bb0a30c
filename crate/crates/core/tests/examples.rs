use std::sync::Arc;

use cotensor_core::bundle::Bundle;
use cotensor_core::connection::{
    compose_connection, inverse_canonical_representative, lifted_canonical_map, verify_strong_connection,
    ConnectionForm,
};
use cotensor_core::cotensor::CotensorAlgebra;
use cotensor_core::formulas::{
    cotensor_generators, expand_composed_sum, expand_example1_translation, expand_generator_form, Example,
};
use cotensor_core::presets::bundled;
use cotensor_core::suites::{run_suites, Suite, SuiteConfig};
use cotensor_core::{Strategy, TensorElement};

struct Setup {
    bundle: Bundle,
    cot: Arc<CotensorAlgebra>,
    composed: ConnectionForm,
}

fn setup(preset: &str) -> Setup {
    let bundle = Bundle::parse(bundled(preset).unwrap()).unwrap();
    let cot = Arc::new(bundle.cotensor_algebra().unwrap().unwrap());
    let composed = compose_connection(
        &bundle.connection("A").unwrap(),
        &bundle.connection("P").unwrap(),
        cot.clone(),
    )
    .unwrap();
    Setup { bundle, cot, composed }
}

#[test]
fn composed_connection_matches_both_closed_forms() {
    let s = setup("matsumoto-ex2");
    for n in -4..=4 {
        let l = s.composed.eval(n).unwrap();
        assert_eq!(l, expand_composed_sum(&s.cot, n).unwrap(), "binomial sum at n = {n}");
        assert_eq!(
            l,
            expand_generator_form(&s.cot, n).unwrap(),
            "generator form at n = {n}"
        );
    }
}

#[test]
fn example_one_translation_formula_is_the_composed_form() {
    let s = setup("matsumoto-ex1");
    for n in -4..=4 {
        assert_eq!(
            s.composed.eval(n).unwrap(),
            expand_example1_translation(&s.cot, n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn composed_legs_are_members() {
    for preset in ["matsumoto-ex1", "matsumoto-ex2"] {
        let s = setup(preset);
        let amb = s.cot.ambient();
        for n in -6..=6 {
            for (e, _) in s.composed.eval(n).unwrap().terms() {
                for leg in e {
                    let m = leg.monomial().unwrap();
                    assert!(s.cot.is_member(&amb.monomial(m)).unwrap(), "{preset} n = {n}");
                }
            }
        }
    }
}

#[test]
fn canonical_inverse_round_trips() {
    let s = setup("matsumoto-ex2");
    let amb = s.cot.ambient();
    let [al, be, ga, de] = cotensor_generators(&s.cot, Example::Two).unwrap();
    let xs = [
        amb.one(),
        al.clone(),
        amb.mul(&be, &amb.star(&ga).unwrap()).unwrap(),
        de,
    ];
    for x in &xs {
        for n in -3..=3 {
            let rep = inverse_canonical_representative(&s.cot, &s.composed, x, n).unwrap();
            let back = lifted_canonical_map(amb, s.cot.c_grading(), &rep).unwrap();
            let want = TensorElement::from_algebra(x).tensor(&TensorElement::grouplike(n));
            assert_eq!(back, want, "{} at n = {n}", s.cot.render(x));
        }
    }
    let outside = amb.generator("a1").unwrap();
    assert!(inverse_canonical_representative(&s.cot, &s.composed, &outside, 1).is_err());
}

#[test]
fn one_changed_coefficient_breaks_the_connection() {
    let s = setup("matsumoto-ex2");
    let form = s.bundle.connection("P").unwrap();
    for n in [-3i64, -2, -1, 1, 2, 3] {
        let value = form.eval(n).unwrap();
        for (entries, _) in value.terms() {
            let pres = form.presentation();
            let leg = |i: usize| pres.monomial(entries[i].monomial().unwrap());
            let bump = TensorElement::pure(&[&leg(0), &leg(1)]);
            let mutated = form.clone().with_override(n, &value + &bump).unwrap();
            let report = verify_strong_connection(&mutated, 3, Strategy::default());
            assert!(report.iter().any(|r| !r.passed()), "n = {n} survived a mutation");
        }
    }
}

#[test]
fn printed_square_factors_fail() {
    let s = setup("matsumoto-ex2");
    let names = s.bundle.names(&s.cot).unwrap();
    let corrected: Vec<_> = s
        .bundle
        .identities
        .iter()
        .filter(|d| d.anchor == "stcomu" && d.rhs.text.contains("^4"))
        .collect();
    assert_eq!(corrected.len(), 2);
    for d in corrected {
        let lhs = Bundle::element(&s.cot, &names, &d.lhs).unwrap();
        let right = |text: String| {
            let mut loc = d.rhs.clone();
            loc.text = text;
            Bundle::element(&s.cot, &names, &loc).unwrap()
        };
        assert_eq!(lhs, right(d.rhs.text.clone()));
        assert_ne!(lhs, right(d.rhs.text.replace("^4", "^2")), "{}", d.lhs.text);
    }
}

#[test]
fn bundled_suites_pass() {
    for preset in ["matsumoto-ex1", "matsumoto-ex2"] {
        let bundle = Bundle::parse(bundled(preset).unwrap()).unwrap();
        let cfg = SuiteConfig {
            suites: vec![Suite::Examples, Suite::Connection, Suite::Cotensor],
            n_bound: 3,
            degree_bound: 4,
            ..Default::default()
        };
        let report = run_suites(&bundle, &cfg).unwrap();
        let failures: Vec<_> = report.failures().map(|r| &r.check_id).collect();
        assert!(failures.is_empty(), "{preset}: {failures:?}");
    }
}

#[test]
fn degree_zero_coinvariants_are_the_unit() {
    let s = setup("matsumoto-ex1");
    let basis = s.cot.coinvariants_basis(0);
    assert_eq!(basis, vec![s.cot.ambient().one()]);
    let l0 = s.composed.eval(0).unwrap();
    let one = s.cot.ambient().one();
    assert_eq!(l0, TensorElement::pure(&[&one, &one]));
}
