//! End-to-end acceptance run: one line per criterion.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cotensor_core::bundle::Bundle;
use cotensor_core::connection::{
    compose_connection, hfirst_holds, hsecond_holds, lifted_canonical_map, verify_strong_connection,
    verify_translation_identities, ConnectionForm,
};
use cotensor_core::cotensor::CotensorAlgebra;
use cotensor_core::formulas::{expand_composed_sum, expand_example1_translation, expand_generator_form};
use cotensor_core::parse::{parse_tensor, Space};
use cotensor_core::presets::bundled;
use cotensor_core::suites::{equivhco_samples, matsumoto_expression, run_suites, Suite, SuiteConfig};
use cotensor_core::{CheckResult, Strategy, TensorElement};

const PRESETS: [&str; 2] = ["matsumoto-ex1", "matsumoto-ex2"];

struct Example {
    preset: &'static str,
    bundle: Bundle,
    cot: Arc<CotensorAlgebra>,
    forms: [(&'static str, ConnectionForm); 2],
    composed: ConnectionForm,
}

fn load(preset: &'static str) -> Example {
    let bundle = Bundle::parse(bundled(preset).unwrap()).unwrap();
    let cot = Arc::new(bundle.cotensor_algebra().unwrap().unwrap());
    let forms = [
        ("A", bundle.connection("A").unwrap()),
        ("P", bundle.connection("P").unwrap()),
    ];
    let composed = compose_connection(&forms[0].1, &forms[1].1, cot.clone()).unwrap();
    Example {
        preset,
        bundle,
        cot,
        forms,
        composed,
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&[Example]) -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(results: &[CheckResult]) -> Result<usize, String> {
    match results.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!("{} failed: {}", r.check_id, r.detail)),
        None => Ok(results.len()),
    }
}

fn suite(ex: &Example, s: Suite, n_bound: u32, degree_bound: u32) -> Vec<CheckResult> {
    let cfg = SuiteConfig {
        suites: vec![s],
        n_bound,
        degree_bound,
        strategy: Strategy::default(),
    };
    run_suites(&ex.bundle, &cfg).unwrap().results
}

fn strong_connections(exs: &[Example]) -> Outcome {
    let mut checks = 0;
    for ex in exs {
        for (_, form) in &ex.forms {
            let pres = form.presentation();
            for n in -6..=6 {
                let text = matsumoto_expression(pres, form, n).map_err(|e| e.to_string())?;
                let want =
                    parse_tensor(&[Space::algebra(pres), Space::algebra(pres)], &text).map_err(|e| e.to_string())?;
                ensure(form.eval(n).unwrap() == want, || {
                    format!("{} {} differs at n = {n}", ex.preset, form.name())
                })?;
            }
            checks += all_pass(&verify_strong_connection(form, 6, Strategy::default()))?;
        }
    }
    Ok(format!("closed forms at |n| <= 6 for 4 forms, {checks} axiom checks"))
}

fn composition(exs: &[Example]) -> Outcome {
    for n in -4..=4 {
        let (one, two) = (&exs[0], &exs[1]);
        let l = two.composed.eval(n).unwrap();
        ensure(l == expand_composed_sum(&two.cot, n).unwrap(), || {
            format!("binomial sum differs at n = {n}")
        })?;
        ensure(l == expand_generator_form(&two.cot, n).unwrap(), || {
            format!("generator form differs at n = {n}")
        })?;
        let t = one.composed.eval(n).unwrap();
        ensure(t == expand_example1_translation(&one.cot, n).unwrap(), || {
            format!("example one differs at n = {n}")
        })?;
    }
    Ok("binomial and generator sums at |n| <= 4; generator form uses C(n-m, t) C(n-m, s) in its second branch".into())
}

fn canonical_roundtrip(exs: &[Example]) -> Outcome {
    for ex in exs {
        let amb = ex.cot.ambient();
        for n in -6..=6 {
            let image = lifted_canonical_map(amb, ex.cot.c_grading(), &ex.composed.eval(n).unwrap()).unwrap();
            let want = TensorElement::from_algebra(&amb.one()).tensor(&TensorElement::grouplike(n));
            ensure(image == want, || {
                format!("{} n = {n}: {}", ex.preset, image.render(&[amb]))
            })?;
        }
    }
    Ok("|n| <= 6 in both examples".into())
}

fn anchored(ex: &Example, anchors: &[&str]) -> Result<usize, String> {
    let results: Vec<CheckResult> = suite(ex, Suite::Examples, 1, 2)
        .into_iter()
        .filter(|r| anchors.contains(&r.paper_anchor.as_str()))
        .collect();
    let seen: BTreeSet<&str> = results.iter().map(|r| r.paper_anchor.as_str()).collect();
    ensure(seen.len() == anchors.len(), || {
        format!("{}: only {seen:?} present", ex.preset)
    })?;
    all_pass(&results)
}

fn presentations(exs: &[Example]) -> Outcome {
    let one = anchored(&exs[0], &["matmatg"])?;
    let two = anchored(&exs[1], &["mcomu", "mrad1", "mrad2"])?;
    Ok(format!("{one} relations in example one, {two} in example two"))
}

fn coinvariant_algebra(exs: &[Example]) -> Outcome {
    let two = anchored(&exs[1], &["mindef", "stcomu", "eq1", "eq2", "eq3", "eq4"])?;
    let one = anchored(&exs[0], &["matex"])?;
    Ok(format!(
        "{two} identities in example two, {one} in example one; two stcomu factors are fourth powers of L"
    ))
}

fn coinvariant_bases(exs: &[Example]) -> Outcome {
    let mut dims = Vec::new();
    for ex in exs {
        let lhs = ex.cot.coinvariants_basis(6);
        let rhs = ex.cot.cotensor_of_coinvariants(6);
        ensure(lhs == rhs, || {
            format!("{}: bases differ ({} vs {})", ex.preset, lhs.len(), rhs.len())
        })?;
        dims.push(lhs.len());
    }
    Ok(format!("total degree <= 6, dimensions {dims:?}"))
}

fn entwining(exs: &[Example]) -> Outcome {
    let mut n = 0;
    for ex in exs {
        n += all_pass(&suite(ex, Suite::Entwining, 1, 6))?;
    }
    Ok(format!("{n} checks at degree <= 6"))
}

fn translation(exs: &[Example]) -> Outcome {
    let mut n = 0;
    for ex in exs {
        for (_, form) in &ex.forms {
            n += all_pass(&verify_translation_identities(form, 4, 4, Strategy::default()))?;
        }
    }
    Ok(format!("{n} checks, p and b up to degree 4"))
}

fn equivhco(exs: &[Example]) -> Outcome {
    let mut total = 0;
    for ex in exs {
        let p = ex.cot.p();
        let left = ex.cot.p_spec().left().unwrap();
        for t in equivhco_samples(p, left) {
            let (a, b) = (hfirst_holds(p, left, &t).unwrap(), hsecond_holds(p, left, &t).unwrap());
            ensure(a == b, || {
                format!("{}: disagree on {}", ex.preset, t.render(&[p.as_ref()]))
            })?;
            total += 1;
        }
    }
    ensure(total >= 100, || format!("only {total} samples"))?;
    Ok(format!("{total} tensors"))
}

/// `ℓ(u^n)` of the sphere with the coefficient of term `m` raised by one.
fn mutated(ex: &Example, form: usize, n: i64, m: usize) -> String {
    let form = &ex.forms[form].1;
    let text = matsumoto_expression(form.presentation(), form, n).unwrap();
    let mut terms: Vec<String> = text.split(" + ").map(str::to_string).collect();
    let (c, rest) = terms[m].split_once(' ').unwrap();
    terms[m] = format!("{} {rest}", c.parse::<i64>().unwrap() + 1);
    terms.join(" + ")
}

fn mutations(exs: &[Example]) -> Outcome {
    let ex = &exs[1];
    let cases: [(usize, i64, usize); 10] = [
        (1, 1, 0),
        (1, 1, 1),
        (1, 2, 0),
        (1, 2, 1),
        (1, 2, 2),
        (1, 3, 1),
        (1, -1, 0),
        (1, -2, 1),
        (0, 1, 1),
        (0, -3, 2),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (i, &(form, n, m)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("mutation-{i}.toml"));
        let name = ex.forms[form].0;
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(
            f,
            "[connection.{name}.values]\n\"{n}\" = \"{}\"",
            mutated(ex, form, n, m)
        )
        .unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_cotensor"))
            .args([
                "verify",
                "--preset",
                ex.preset,
                "--suite",
                "connection",
                "--n-bound",
                "3",
                "--degree-bound",
                "3",
            ])
            .arg("--connection")
            .arg(&path)
            .output()
            .unwrap();
        let fails = String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| l.starts_with("FAIL"))
            .count();
        ensure(out.status.code() == Some(1) && fails > 0, || {
            format!(
                "{name} n = {n} term {m}: exit {:?}, {fails} failures",
                out.status.code()
            )
        })?;
    }
    Ok("10 of 10 mutations rejected with exit 1".into())
}

fn confluence(exs: &[Example]) -> Outcome {
    let mut words = 0;
    for ex in exs {
        for pres in [ex.cot.a(), ex.cot.p(), ex.cot.ambient()] {
            let r = pres.check_local_confluence_with(6, Strategy::default());
            ensure(r.is_confluent(), || {
                format!("{} {}: {:?}", ex.preset, pres.name(), r.divergences[0])
            })?;
            words += r.words_checked;
        }
    }
    Ok(format!("no divergences up to degree 6, {words} overlap words"))
}

fn main() -> std::process::ExitCode {
    let exs: Vec<Example> = PRESETS.iter().map(|p| load(p)).collect();
    let criteria: [Criterion; 11] = [
        (
            "strong connections of both spheres",
            strong_connections,
            Some(Duration::from_secs(10)),
        ),
        ("composition formulas", composition, Some(Duration::from_secs(60))),
        ("canonical map round trip", canonical_roundtrip, None),
        ("example presentations", presentations, None),
        ("coinvariant algebra relations", coinvariant_algebra, None),
        ("coinvariants of the cotensor product", coinvariant_bases, None),
        ("entwining axioms", entwining, None),
        ("translation map identities", translation, None),
        ("equivalent balance conditions", equivhco, None),
        ("mutation sensitivity", mutations, None),
        ("confluence", confluence, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run(&exs);
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if took > *limit {
                outcome = Err(format!("took {took:.2?}, limit {limit:?}"));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{status} criterion {:>2} {name}: {detail} [{took:.2?}]", i + 1);
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
