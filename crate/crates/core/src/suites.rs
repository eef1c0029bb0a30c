//! Verification suites run over a [`Bundle`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, AlgebraPresentation, Monomial};
use crate::bundle::{Bundle, CotensorDecl};
use crate::comodule::{check_bicomodule, TensorElement};
use crate::connection::{
    check_h_balance, compose_connection, hfirst_holds, hsecond_holds, inverse_canonical_representative,
    lifted_canonical_map, matsumoto_roles, verify_strong_connection_in, verify_translation_identities, ConnectionForm,
};
use crate::cotensor::{check_entwined_module, check_entwining_axioms, CanonicalEntwining, CotensorAlgebra};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::formulas::{expand_composed_sum, expand_example1_translation, expand_generator_form, Example};
use crate::parse::{parse_tensor, Names, Space};
use crate::report::{CheckResult, Report};
use crate::scalar::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Algebra,
    Entwining,
    Connection,
    Cotensor,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Algebra,
        Suite::Entwining,
        Suite::Connection,
        Suite::Cotensor,
        Suite::Examples,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Entwining => "entwining",
            Suite::Connection => "connection",
            Suite::Cotensor => "cotensor",
            Suite::Examples => "examples",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    /// Bound `N` on `|n|` for connection values `ℓ(u^n)`.
    pub n_bound: u32,
    /// Bound `D` on monomial degrees.
    pub degree_bound: u32,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            n_bound: 4,
            degree_bound: 6,
            strategy: Strategy::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree_bound < 2 {
            return Err(Error::Unsupported("the degree bound must be at least 2".into()));
        }
        if self.n_bound < 1 {
            return Err(Error::Unsupported("the connection bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// Everything the suites share, built once per run.
struct Context<'b> {
    bundle: &'b Bundle,
    config: &'b SuiteConfig,
    cot: Option<(Arc<CotensorAlgebra>, &'b CotensorDecl)>,
    forms: Vec<(String, ConnectionForm)>,
}

impl Context<'_> {
    fn form(&self, name: &str) -> Option<&ConnectionForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    fn ns(&self) -> Vec<i64> {
        let b = self.config.n_bound as i64;
        (-b..=b).collect()
    }
}

pub fn run_suites(bundle: &Bundle, config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let cot = match (bundle.cotensor_algebra()?, &bundle.cotensor) {
        (Some(c), Some(d)) => Some((Arc::new(c), d)),
        _ => None,
    };
    let forms = bundle
        .connections
        .keys()
        .map(|n| Ok((n.clone(), bundle.connection(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let ctx = Context {
        bundle,
        config,
        cot,
        forms,
    };
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let mut report = Report::default();
    for s in suites {
        report.extend(match s {
            Suite::Algebra => algebra_suite(&ctx),
            Suite::Entwining => entwining_suite(&ctx),
            Suite::Connection => connection_suite(&ctx),
            Suite::Cotensor => cotensor_suite(&ctx)?,
            Suite::Examples => examples_suite(&ctx)?,
        });
    }
    Ok(report)
}

fn prefixed(name: &str, mut rs: Vec<CheckResult>) -> Vec<CheckResult> {
    for r in &mut rs {
        r.check_id = format!("{name}:{}", r.check_id);
    }
    rs
}

fn confluence(suite: &str, pres: &AlgebraPresentation, bound: u32, strategy: Strategy) -> CheckResult {
    let rep = pres.check_local_confluence_with(bound, strategy);
    let detail = match rep.divergences.first() {
        None => format!("{} words up to degree {bound}", rep.words_checked),
        Some(d) => format!(
            "{} divergences; first at `{}` via {}: {} vs {}",
            rep.divergences.len(),
            d.word,
            d.step,
            d.expected,
            d.found
        ),
    };
    CheckResult::new(
        suite,
        format!("{}:confluence", pres.name()),
        "confluence",
        rep.is_confluent(),
        detail,
    )
}

fn algebra_suite(ctx: &Context) -> Vec<CheckResult> {
    let (d, st) = (ctx.config.degree_bound, ctx.config.strategy);
    let mut out = Vec::new();
    for (name, alg) in &ctx.bundle.algebras {
        out.push(confluence("algebra", &alg.presentation, d, st));
        out.extend(prefixed(name, check_bicomodule(&alg.presentation, &alg.spec, d)));
    }
    if let Some((cot, _)) = &ctx.cot {
        out.push(confluence("algebra", cot.ambient(), d, st));
    }
    out
}

fn entwining_suite(ctx: &Context) -> Vec<CheckResult> {
    let (n, d, st) = (ctx.config.n_bound as i64, ctx.config.degree_bound, ctx.config.strategy);
    let mut out = Vec::new();
    for (name, alg) in &ctx.bundle.algebras {
        let Ok(right) = alg.spec.right() else { continue };
        let pres = &alg.presentation;
        let psi = CanonicalEntwining::new(pres, right);
        let samples = pres.normal_monomials(d);
        let left = alg.spec.left().ok();
        out.extend(prefixed(
            name,
            check_entwining_axioms("entwining", &psi, &samples, -n..=n, d, left, st),
        ));
        out.extend(prefixed(
            name,
            check_entwined_module("entwining", &psi, right, &samples, d, st),
        ));
    }
    if let Some((cot, _)) = &ctx.cot {
        let psi = cot.entwining();
        let samples = cot.member_monomials(d);
        let label = cot.ambient().name().to_string();
        out.extend(prefixed(
            &label,
            check_entwining_axioms("entwining", &psi, &samples, -n..=n, d, None, st),
        ));
        out.extend(prefixed(
            &label,
            check_entwined_module("entwining", &psi, cot.c_grading(), &samples, d, st),
        ));
    }
    out
}

/// Deterministic homogeneous tensors in `P ⊗ P`: pure tensors of
/// monomials up to degree 2 and sums of two of them with the same total
/// left degree.
pub fn equivhco_samples(pres: &AlgebraPresentation, left: &crate::comodule::Grading) -> Vec<TensorElement> {
    let monos = pres.normal_monomials(2);
    let mut pure = Vec::new();
    for x in &monos {
        for y in &monos {
            pure.push((
                left.degree(x) + left.degree(y),
                TensorElement::pure(&[&pres.monomial(x), &pres.monomial(y)]),
            ));
        }
    }
    let mut out: Vec<TensorElement> = pure.iter().map(|(_, t)| t.clone()).collect();
    for (i, (d1, t1)) in pure.iter().enumerate() {
        if let Some((_, t2)) = pure[i + 1..].iter().find(|(d2, _)| d2 == d1) {
            out.push(t1 + t2);
        }
    }
    out
}

fn connection_suite(ctx: &Context) -> Vec<CheckResult> {
    let (n, d, st) = (ctx.config.n_bound, ctx.config.degree_bound, ctx.config.strategy);
    let mut out = Vec::new();
    for (name, form) in &ctx.forms {
        out.extend(verify_strong_connection_in("connection", form, n, st));
        let alg = &ctx.bundle.algebras[name];
        if let Ok(left) = alg.spec.left() {
            out.push(check_h_balance(form, left, n, st));
            let samples = equivhco_samples(&alg.presentation, left);
            let disagree = exec::map(st, &samples, |t| {
                let f = hfirst_holds(&alg.presentation, left, t).unwrap();
                let s = hsecond_holds(&alg.presentation, left, t).unwrap();
                (f != s).then(|| form.render(t))
            });
            let first = disagree.into_iter().flatten().next();
            out.push(CheckResult::new(
                "connection",
                format!("{name}:equivhco"),
                "equivhco",
                first.is_none(),
                first.map_or_else(
                    || format!("both balance conditions agree on {} tensors", samples.len()),
                    |t| format!("conditions disagree on {t}"),
                ),
            ));
        }
        out.extend(verify_translation_identities(form, n, d, st));
    }
    out
}

/// The composed connection of the cotensor product, or a failing check
/// explaining why it could not be built.
fn composed(ctx: &Context, suite: &str) -> std::result::Result<ConnectionForm, CheckResult> {
    let fail = |detail: String| CheckResult::new(suite, "compose", "thstr", false, detail);
    let (cot, decl) = ctx.cot.as_ref().expect("caller checked");
    let (Some(fa), Some(fp)) = (ctx.form(&decl.left), ctx.form(&decl.right)) else {
        return Err(fail(format!(
            "connections for both `{}` and `{}` are needed",
            decl.left, decl.right
        )));
    };
    compose_connection(fa, fp, cot.clone()).map_err(|e| fail(e.to_string()))
}

fn cotensor_suite(ctx: &Context) -> Result<Vec<CheckResult>> {
    let Some((cot, _)) = &ctx.cot else {
        return Ok(Vec::new());
    };
    let (n, d, st) = (ctx.config.n_bound, ctx.config.degree_bound, ctx.config.strategy);
    let mut out = vec![cot.check_closure(d, st)];

    let lhs = cot.coinvariants_basis(d);
    let rhs = cot.cotensor_of_coinvariants(d);
    let same = lhs == rhs;
    out.push(CheckResult::new(
        "cotensor",
        "coinvariants",
        "pcois",
        same,
        if same {
            format!("{} basis elements up to degree {d}", lhs.len())
        } else {
            let extra = lhs
                .iter()
                .find(|x| !rhs.contains(x))
                .or_else(|| rhs.iter().find(|x| !lhs.contains(x)));
            format!(
                "{} vs {} basis elements; first difference {}",
                lhs.len(),
                rhs.len(),
                extra.map(|x| cot.render(x)).unwrap_or_default()
            )
        },
    ));

    let form = match composed(ctx, "cotensor") {
        Ok(f) => f,
        Err(r) => {
            out.push(r);
            return Ok(out);
        }
    };
    out.extend(verify_strong_connection_in("cotensor", &form, n, st));

    // can~((x ⊗ 1) ℓ(u^n)) = x ⊗ u^n for members x.
    let members = cot.member_monomials(d);
    let ns = ctx.ns();
    let cases: Vec<(i64, &Monomial)> = ns.iter().flat_map(|&k| members.iter().map(move |m| (k, m))).collect();
    let amb = cot.ambient();
    let bad = exec::map(st, &cases, |&(k, m)| -> Option<String> {
        let x = amb.monomial(m);
        let rep = match inverse_canonical_representative(cot, &form, &x, k) {
            Ok(r) => r,
            Err(e) => return Some(e.to_string()),
        };
        let img = lifted_canonical_map(amb, cot.c_grading(), &rep).ok()?;
        let want = TensorElement::from_algebra(&x).tensor(&TensorElement::grouplike(k));
        (img != want).then(|| format!("x = {}, n = {k}", cot.render(&x)))
    });
    let first = bad.into_iter().flatten().next();
    out.push(CheckResult::new(
        "cotensor",
        "caninv",
        "caninv",
        first.is_none(),
        first.unwrap_or_else(|| format!("{} cases", cases.len())),
    ));

    let names = ctx.bundle.names(cot)?;
    let outside: Vec<&String> = names
        .iter()
        .filter(|(_, x)| !cot.is_member(x).unwrap_or(false))
        .map(|(k, _)| k)
        .collect();
    out.push(CheckResult::new(
        "cotensor",
        "names-members",
        "algcot",
        outside.is_empty(),
        if outside.is_empty() {
            format!("{} named elements", names.len())
        } else {
            format!(
                "not in the cotensor product: {}",
                outside.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
            )
        },
    ));
    Ok(out)
}

/// `ℓ(u^n)` of the Matsumoto sphere written out as an expression.
pub fn matsumoto_expression(pres: &AlgebraPresentation, form: &ConnectionForm, n: i64) -> Result<String> {
    let r = matsumoto_roles(pres, form.grading())?;
    let g = |i: usize| pres.generator_names()[i].clone();
    let (x1, x2, y1, y2) = if n >= 0 {
        (g(r.b_star), g(r.a_star), g(r.a), g(r.b))
    } else {
        (g(r.b), g(r.a), g(r.a_star), g(r.b_star))
    };
    let k = n.abs();
    let terms: Vec<String> = (0..=k)
        .map(|m| {
            format!(
                "{} ({}^{m} {}^{} | {}^{} {}^{m})",
                binomial(k, m),
                x1,
                x2,
                k - m,
                y1,
                k - m,
                y2
            )
        })
        .collect();
    Ok(terms.join(" + "))
}

fn examples_suite(ctx: &Context) -> Result<Vec<CheckResult>> {
    let (st, mut out) = (ctx.config.strategy, Vec::new());
    let ns = ctx.ns();

    for (name, form) in &ctx.forms {
        if ctx.bundle.connections[name].rule.as_deref() != Some("matsumoto") {
            continue;
        }
        let pres = form.presentation();
        for (anchor, sel) in [("ms1", true), ("ms2", false)] {
            let these: Vec<i64> = ns.iter().copied().filter(|&k| (k >= 0) == sel).collect();
            let bad = exec::map(st, &these, |&k| -> Option<String> {
                let expr = match matsumoto_expression(pres, form, k) {
                    Ok(e) => e,
                    Err(e) => return Some(e.to_string()),
                };
                let spaces = [Space::algebra(pres), Space::algebra(pres)];
                let want = parse_tensor(&spaces, &expr).ok()?;
                match form.eval(k) {
                    Ok(t) if t == want => None,
                    Ok(t) => Some(format!("n = {k}: {} vs {}", form.render(&t), form.render(&want))),
                    Err(e) => Some(format!("n = {k}: {e}")),
                }
            });
            let first = bad.into_iter().flatten().next();
            out.push(CheckResult::new(
                "examples",
                format!("{name}:{anchor}"),
                anchor,
                first.is_none(),
                first.unwrap_or_else(|| match (these.first(), these.last()) {
                    (Some(lo), Some(hi)) => format!("term-for-term for n in {lo}..={hi}"),
                    _ => "no n checked".into(),
                }),
            ));
        }
    }

    let Some((cot, decl)) = &ctx.cot else { return Ok(out) };
    let names = ctx.bundle.names(cot)?;
    for id in &ctx.bundle.identities {
        let lhs = Bundle::element(cot, &names, &id.lhs)?;
        let rhs = Bundle::element(cot, &names, &id.rhs)?;
        let ok = lhs == rhs;
        let detail = if ok {
            format!("{} = {}", id.lhs.text, id.rhs.text)
        } else {
            format!(
                "{} = {} fails; difference {}",
                id.lhs.text,
                id.rhs.text,
                cot.render(&(&lhs - &rhs))
            )
        };
        out.push(CheckResult::new("examples", id.id.clone(), &id.anchor, ok, detail));
    }
    for c in &ctx.bundle.centrals {
        out.push(centrality(cot, &names, c.id.clone(), &c.anchor, &c.element, &c.among)?);
    }

    if let Some(example) = decl.closed_form {
        let form = match composed(ctx, "examples") {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                return Ok(out);
            }
        };
        let compare =
            |id: &str, anchor: &str, sel: &dyn Fn(i64) -> bool, f: &(dyn Fn(i64) -> Result<TensorElement> + Sync)| {
                let these: Vec<i64> = ns.iter().copied().filter(|&k| sel(k)).collect();
                let bad = exec::map(st, &these, |&k| -> Option<String> {
                    match (form.eval(k), f(k)) {
                        (Ok(x), Ok(y)) if x == y => None,
                        (Ok(_), Ok(_)) => Some(format!("n = {k}: composed connection differs from the closed form")),
                        (Err(e), _) | (_, Err(e)) => Some(format!("n = {k}: {e}")),
                    }
                });
                let first = bad.into_iter().flatten().next();
                CheckResult::new(
                    "examples",
                    id,
                    anchor,
                    first.is_none(),
                    first.unwrap_or_else(|| format!("exact for {} values of n", these.len())),
                )
            };
        match example {
            Example::Two => {
                out.push(compare("strmaexpl1", "strmaexpl1", &|k| k >= 0, &|k| {
                    expand_composed_sum(cot, k)
                }));
                out.push(compare("strmaexpl2", "strmaexpl2", &|k| k < 0, &|k| {
                    expand_composed_sum(cot, k)
                }));
                out.push(compare("generator-form", "mgen", &|_| true, &|k| {
                    expand_generator_form(cot, k)
                }));
            }
            Example::One => {
                out.push(compare("translation-formula", "matex", &|_| true, &|k| {
                    expand_example1_translation(cot, k)
                }));
            }
        }
    }
    Ok(out)
}

fn centrality(
    cot: &CotensorAlgebra,
    names: &Names,
    id: String,
    anchor: &str,
    element: &str,
    among: &[String],
) -> Result<CheckResult> {
    let lookup = |n: &str| -> Result<&AlgebraElement> {
        names
            .get(n)
            .ok_or_else(|| Error::Unsupported(format!("`{n}` is not a declared name")))
    };
    let z = lookup(element)?;
    let amb = cot.ambient();
    let mut bad = Vec::new();
    for g in among {
        let x = lookup(g)?;
        if amb.mul(z, x)? != amb.mul(x, z)? {
            bad.push(g.as_str());
        }
    }
    Ok(CheckResult::new(
        "examples",
        id,
        anchor,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{element} commutes with {}", among.join(", "))
        } else {
            format!("{element} does not commute with {}", bad.join(", "))
        },
    ))
}
