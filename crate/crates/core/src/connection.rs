//! Strong connection forms `ℓ: C → P ⊗ P`, the lifted canonical map and
//! the identities a strong connection and its translation map satisfy.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{AlgebraPresentation, Monomial};
use crate::comodule::{
    mul_adjacent, tensor_apply, Antipode, Grading, LeftCoaction, RightCoaction, SlotEntry, SlotKind, TensorElement,
};
use crate::cotensor::CotensorAlgebra;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::report::CheckResult;
use crate::scalar::{binomial, LaurentScalar};

pub type Rule = Arc<dyn Fn(i64) -> Result<TensorElement> + Send + Sync>;

/// `ℓ(u^n)` given by a closed-form rule, optionally overridden at
/// individual `n`. Values are memoized.
#[derive(Clone)]
pub struct ConnectionForm {
    name: String,
    pres: Arc<AlgebraPresentation>,
    grading: Grading,
    rule: Rule,
    overrides: BTreeMap<i64, TensorElement>,
    memo: Arc<Mutex<HashMap<i64, TensorElement>>>,
}

impl fmt::Debug for ConnectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConnectionForm")
            .field("name", &self.name)
            .field("presentation", &self.pres.name())
            .field("overrides", &self.overrides.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl ConnectionForm {
    /// `grading` is the right `C`-grading of `pres`.
    pub fn new(name: impl Into<String>, pres: Arc<AlgebraPresentation>, grading: Grading, rule: Rule) -> Self {
        Self {
            name: name.into(),
            pres,
            grading,
            rule,
            overrides: BTreeMap::new(),
            memo: Default::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn shape(&self) -> Vec<SlotKind> {
        vec![SlotKind::Algebra(self.pres.id()); 2]
    }

    /// Replaces `ℓ(u^n)` by `value`.
    pub fn with_override(mut self, n: i64, value: TensorElement) -> Result<Self> {
        value.expect_shape(&self.shape())?;
        self.overrides.insert(n, value);
        self.memo = Default::default();
        Ok(self)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (i64, &TensorElement)> {
        self.overrides.iter().map(|(n, t)| (*n, t))
    }

    pub fn eval(&self, n: i64) -> Result<TensorElement> {
        if let Some(t) = self.overrides.get(&n) {
            return Ok(t.clone());
        }
        if let Some(t) = self.memo.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let t = (self.rule)(n)?;
        t.expect_shape(&self.shape())?;
        self.memo.lock().unwrap().insert(n, t.clone());
        Ok(t)
    }

    pub fn render(&self, t: &TensorElement) -> String {
        t.render(&[&self.pres])
    }
}

/// Generator positions of a Matsumoto sphere presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Roles {
    pub a: usize,
    pub a_star: usize,
    pub b: usize,
    pub b_star: usize,
}

/// Finds `a, a*, b, b*` in a presentation shaped like the Matsumoto sphere:
/// four generators in two star pairs, right degrees `a, b ↦ 1`, and
/// `aa* + bb* = 1`.
pub fn matsumoto_roles(pres: &AlgebraPresentation, grading: &Grading) -> Result<Roles> {
    let fail = |why: &str| Error::Unsupported(format!("`{}` is not a Matsumoto sphere: {why}", pres.name()));
    if pres.arity() != 4 || grading.degrees().len() != 4 {
        return Err(fail("expected four generators"));
    }
    let pos: Vec<usize> = (0..4).filter(|&i| grading.degrees()[i] == 1).collect();
    if pos.len() != 2 {
        return Err(fail("expected two generators of right degree 1"));
    }
    let (a, b) = (pos[0], pos[1]);
    let (a_star, b_star) = (pres.star_index(a), pres.star_index(b));
    if grading.degrees()[a_star] != -1 || grading.degrees()[b_star] != -1 || a_star == b_star {
        return Err(fail("stars of the degree-1 generators must have degree -1"));
    }
    let one = LaurentScalar::one();
    let aa = pres.normal_form_indices(&one, &[a, a_star]);
    let bb = pres.normal_form_indices(&one, &[b, b_star]);
    if &aa + &bb != pres.one() {
        return Err(fail("the sphere relation aa* + bb* = 1 does not hold"));
    }
    Ok(Roles { a, a_star, b, b_star })
}

/// Pure tensor of two words with coefficient.
fn word_tensor(pres: &AlgebraPresentation, c: i64, x: &[usize], y: &[usize]) -> TensorElement {
    let one = LaurentScalar::one();
    let tx = pres.normal_form_indices(&one, x);
    let ty = pres.normal_form_indices(&one, y);
    TensorElement::pure(&[&tx, &ty]).scale(&LaurentScalar::integer(c))
}

fn rep(g: usize, k: i64) -> impl Iterator<Item = usize> {
    std::iter::repeat_n(g, k.max(0) as usize)
}

/// The closed-form strong connection of the Matsumoto sphere:
/// `ℓ(u^n) = Σ_m C(n,m) b*^m a*^{n-m} ⊗ a^{n-m} b^m` and
/// `ℓ(u^-n) = Σ_m C(n,m) b^m a^{n-m} ⊗ a*^{n-m} b*^m`.
pub fn matsumoto_connection(pres: Arc<AlgebraPresentation>, grading: &Grading) -> Result<ConnectionForm> {
    let r = matsumoto_roles(&pres, grading)?;
    let p = pres.clone();
    let rule: Rule = Arc::new(move |n: i64| {
        let k = n.abs();
        let (x1, x2, y1, y2) = if n >= 0 {
            (r.b_star, r.a_star, r.a, r.b)
        } else {
            (r.b, r.a, r.a_star, r.b_star)
        };
        let mut out = TensorElement::zero(vec![SlotKind::Algebra(p.id()); 2]);
        for m in 0..=k {
            let x: Vec<usize> = rep(x1, m).chain(rep(x2, k - m)).collect();
            let y: Vec<usize> = rep(y1, k - m).chain(rep(y2, m)).collect();
            out = &out + &word_tensor(&p, binomial(k, m), &x, &y);
        }
        Ok(out)
    });
    Ok(ConnectionForm::new(
        format!("matsumoto({})", pres.name()),
        pres,
        grading.clone(),
        rule,
    ))
}

/// `p ⊗ p' ↦ p p'₍₀₎ ⊗ p'₍₁₎`.
pub fn lifted_canonical_map(pres: &AlgebraPresentation, grading: &Grading, t: &TensorElement) -> Result<TensorElement> {
    t.expect_shape(&[SlotKind::Algebra(pres.id()); 2])?;
    let coacted = tensor_apply(
        t,
        1,
        &RightCoaction {
            presentation: pres.id(),
            grading,
        },
    )?;
    mul_adjacent(pres, &coacted, 0)
}

fn unit_tensor(pres: &AlgebraPresentation, n: i64) -> TensorElement {
    TensorElement::from_algebra(&pres.one()).tensor(&TensorElement::grouplike(n))
}

fn range(n_bound: u32) -> Vec<i64> {
    let b = n_bound as i64;
    (-b..=b).collect()
}

struct Sweep<'a> {
    suite: &'a str,
    strategy: Strategy,
    ns: Vec<i64>,
}

impl Sweep<'_> {
    /// Runs `f` for every `n`; the first failure (in `n` order) is reported.
    fn check(
        &self,
        id: &str,
        anchor: &str,
        note: &str,
        f: impl Fn(i64) -> Result<Option<String>> + Sync + Send,
    ) -> CheckResult {
        let outcomes = exec::map(self.strategy, &self.ns, |&n| f(n).map_err(|e| format!("n = {n}: {e}")));
        let mut first = None;
        for (n, o) in self.ns.iter().zip(outcomes) {
            match o {
                Ok(None) => {}
                Ok(Some(why)) => {
                    first = Some(format!("n = {n}: {why}"));
                    break;
                }
                Err(e) => {
                    first = Some(e);
                    break;
                }
            }
        }
        let ok_detail = match (self.ns.first(), self.ns.last()) {
            (Some(lo), Some(hi)) => format!("n in {lo}..={hi}{note}"),
            _ => format!("no n checked{note}"),
        };
        CheckResult::new(self.suite, id, anchor, first.is_none(), first.unwrap_or(ok_detail))
    }
}

/// Axioms of a strong connection for `|n| <= n_bound`: normalization,
/// `can~ ∘ ℓ = 1 ⊗ -`, right and left colinearity, and `m ∘ ℓ = ε`.
pub fn verify_strong_connection(form: &ConnectionForm, n_bound: u32, strategy: Strategy) -> Vec<CheckResult> {
    verify_strong_connection_in("connection", form, n_bound, strategy)
}

pub fn verify_strong_connection_in(
    suite: &str,
    form: &ConnectionForm,
    n_bound: u32,
    strategy: Strategy,
) -> Vec<CheckResult> {
    let pres = form.presentation().as_ref();
    let g = form.grading();
    let rho = RightCoaction {
        presentation: pres.id(),
        grading: g,
    };
    let sweep = Sweep {
        suite,
        strategy,
        ns: range(n_bound),
    };
    let show = |t: &TensorElement| t.render(&[pres]);
    let label = |id: &str| format!("{}:{id}", form.name());

    let one = TensorElement::pure(&[&pres.one(), &pres.one()]);
    let str1 = match form.eval(0) {
        Ok(t) if t == one => None,
        Ok(t) => Some(format!("ℓ(u^0) = {}", show(&t))),
        Err(e) => Some(e.to_string()),
    };
    let mut out = vec![CheckResult::new(
        suite,
        label("str1"),
        "str1",
        str1.is_none(),
        str1.unwrap_or_else(|| "ℓ(u^0) = (1 ⊗ 1)".into()),
    )];

    out.push(sweep.check(&label("str2"), "str2", "", |n| {
        let img = lifted_canonical_map(pres, g, &form.eval(n)?)?;
        Ok((img != unit_tensor(pres, n)).then(|| format!("can~(ℓ(u^{n})) = {}", show(&img))))
    }));

    out.push(sweep.check(&label("str3"), "str3", "", |n| {
        let l = form.eval(n)?;
        let lhs = tensor_apply(&l, 1, &rho)?;
        let rhs = l.tensor(&TensorElement::grouplike(n));
        Ok(first_difference(&lhs, &rhs, &[pres]).map(|d| format!("second leg not of degree {n}: {d}")))
    }));

    out.push(sweep.check(
        &label("str5"),
        "str5",
        " (str4 is equivalent in the graded case)",
        |n| {
            let l = form.eval(n)?;
            let lhs = tensor_apply(&l, 0, &rho)?;
            let rhs = l.tensor(&TensorElement::grouplike(-n)).permute(&[0, 2, 1])?;
            Ok(first_difference(&lhs, &rhs, &[pres]).map(|d| format!("first leg not of degree {}: {d}", -n)))
        },
    ));

    out.push(sweep.check(&label("mul-eps"), "trmuleps", "", |n| {
        let m = mul_adjacent(pres, &form.eval(n)?, 0)?;
        let want = TensorElement::from_algebra(&pres.one());
        Ok((m != want).then(|| format!("m(ℓ(u^{n})) = {}", show(&m))))
    }));
    out
}

/// Renders the first tuple where two same-shape tensors differ.
fn first_difference(x: &TensorElement, y: &TensorElement, algebras: &[&AlgebraPresentation]) -> Option<String> {
    if x == y {
        return None;
    }
    let d = x - y;
    let (e, c) = d.terms().next()?;
    let mut single = TensorElement::zero(d.shape().to_vec());
    single.add_term(e.clone(), c);
    Some(single.render(algebras))
}

/// `x₍₋₁₎ y₍₋₁₎ ⊗ x₍₀₎ ⊗ y₍₀₎ = 1 ⊗ x ⊗ y`: the two legs have opposite left
/// degrees, read through both coactions at once.
pub fn hfirst_holds(pres: &AlgebraPresentation, left: &Grading, t: &TensorElement) -> Result<bool> {
    t.expect_shape(&[SlotKind::Algebra(pres.id()); 2])?;
    let lc = LeftCoaction {
        presentation: pres.id(),
        grading: left,
    };
    let both = tensor_apply(&tensor_apply(t, 0, &lc)?, 2, &lc)?.permute(&[0, 2, 1, 3])?;
    let mut merged = TensorElement::zero(t.shape().iter().copied().fold(vec![SlotKind::Group], |mut v, k| {
        v.push(k);
        v
    }));
    for (e, c) in both.terms() {
        let g = e[0].group().unwrap() + e[1].group().unwrap();
        merged.add_term(vec![SlotEntry::Group(g), e[2].clone(), e[3].clone()], c);
    }
    Ok(merged == TensorElement::grouplike(0).tensor(t))
}

/// `x₍₋₁₎ ⊗ x₍₀₎ ⊗ y = S(y₍₋₁₎) ⊗ x ⊗ y₍₀₎`.
pub fn hsecond_holds(pres: &AlgebraPresentation, left: &Grading, t: &TensorElement) -> Result<bool> {
    t.expect_shape(&[SlotKind::Algebra(pres.id()); 2])?;
    let lc = LeftCoaction {
        presentation: pres.id(),
        grading: left,
    };
    let lhs = tensor_apply(t, 0, &lc)?;
    let rhs = tensor_apply(&tensor_apply(t, 1, &lc)?, 1, &Antipode)?.permute(&[1, 0, 2])?;
    Ok(lhs == rhs)
}

/// Balance of `ℓ(u^n)` with respect to the left `H`-coaction, checked in
/// both equivalent forms, which must agree.
pub fn check_h_balance(form: &ConnectionForm, left: &Grading, n_bound: u32, strategy: Strategy) -> CheckResult {
    let pres = form.presentation().as_ref();
    let sweep = Sweep {
        suite: "connection",
        strategy,
        ns: range(n_bound),
    };
    sweep.check(&format!("{}:h-balance", form.name()), "strcondh", "", |n| {
        let l = form.eval(n)?;
        let (f, s) = (hfirst_holds(pres, left, &l)?, hsecond_holds(pres, left, &l)?);
        Ok(match (f, s) {
            (true, true) => None,
            (false, false) => {
                let bad = l
                    .terms()
                    .find(|(e, _)| left.degree(e[0].monomial().unwrap()) + left.degree(e[1].monomial().unwrap()) != 0)
                    .map(|(e, _)| {
                        format!(
                            "{} ⊗ {}",
                            pres.render_monomial(e[0].monomial().unwrap()),
                            pres.render_monomial(e[1].monomial().unwrap())
                        )
                    })
                    .unwrap_or_default();
                Some(format!("unbalanced term {bad}"))
            }
            _ => Some(format!("the two balance conditions disagree (first: {f}, second: {s})")),
        })
    })
}

/// The strong connection of `A □_H P` assembled from `ℓ_A` and `ℓ_P`:
/// each term `x ⊗ y` of `ℓ_P(u^n)`, with `d` the left degree of `y`,
/// contributes `Σ (s ⊗ x) ⊗ (t ⊗ y)` over `ℓ_A(u^d) = Σ s ⊗ t`.
pub fn compose_connection(
    form_a: &ConnectionForm,
    form_p: &ConnectionForm,
    cot: Arc<CotensorAlgebra>,
) -> Result<ConnectionForm> {
    if form_a.presentation().id() != cot.a().id() {
        return Err(Error::PresentationMismatch {
            expected: cot.a().name().into(),
            found: form_a.presentation().name().into(),
        });
    }
    if form_p.presentation().id() != cot.p().id() {
        return Err(Error::PresentationMismatch {
            expected: cot.p().name().into(),
            found: form_p.presentation().name().into(),
        });
    }
    let (fa, fp, c) = (form_a.clone(), form_p.clone(), cot.clone());
    let rule: Rule = Arc::new(move |n| compose_at(&fa, &fp, &c, n));
    let form = ConnectionForm::new(
        format!("{}□{}", form_a.name(), form_p.name()),
        cot.ambient().clone(),
        cot.c_grading().clone(),
        rule,
    );
    // Surface membership or homogeneity problems now rather than mid-sweep.
    for n in [-1, 0, 1] {
        form.eval(n)?;
    }
    Ok(form)
}

fn compose_at(fa: &ConnectionForm, fp: &ConnectionForm, cot: &CotensorAlgebra, n: i64) -> Result<TensorElement> {
    let left = cot.p_spec().left()?;
    let amb = cot.ambient();
    let mut out = TensorElement::zero(vec![SlotKind::Algebra(amb.id()); 2]);
    for (e, c) in fp.eval(n)?.terms() {
        let (x, y) = (e[0].monomial().unwrap(), e[1].monomial().unwrap());
        let d = left.degree(y);
        for (f, c2) in fa.eval(d)?.terms() {
            let (s, t) = (f[0].monomial().unwrap(), f[1].monomial().unwrap());
            let (first, second) = (s.concat(x), t.concat(y));
            for leg in [&first, &second] {
                if !cot.is_member_monomial(leg) {
                    return Err(Error::NotInCotensor(amb.render_monomial(leg)));
                }
            }
            out.add_term(vec![SlotEntry::Mono(first), SlotEntry::Mono(second)], &(c * c2));
        }
    }
    Ok(out)
}

/// Monomials of `pres` with right degree 0, up to total degree `degree`.
fn coinvariant_monomials(pres: &AlgebraPresentation, g: &Grading, degree: u32) -> Vec<Monomial> {
    pres.normal_monomials(degree)
        .into_iter()
        .filter(|m| g.degree(m) == 0)
        .collect()
}

fn left_mul(pres: &AlgebraPresentation, p: &Monomial, t: &TensorElement) -> Result<TensorElement> {
    let pt = TensorElement::from_algebra(&pres.monomial(p)).tensor(t);
    mul_adjacent(pres, &pt, 0)
}

fn right_mul(pres: &AlgebraPresentation, t: &TensorElement, p: &Monomial) -> Result<TensorElement> {
    let tp = t.tensor(&TensorElement::from_algebra(&pres.monomial(p)));
    mul_adjacent(pres, &tp, 1)
}

/// Properties of the translation map `τ(c) = ℓ(c)` mod `B`, equalities in
/// `P ⊗_B P` being compared through `can~`.
pub fn verify_translation_identities(
    form: &ConnectionForm,
    n_bound: u32,
    degree_bound: u32,
    strategy: Strategy,
) -> Vec<CheckResult> {
    let pres = form.presentation().as_ref();
    let g = form.grading();
    let rho = RightCoaction {
        presentation: pres.id(),
        grading: g,
    };
    let sweep = Sweep {
        suite: "connection",
        strategy,
        ns: range(n_bound),
    };
    let via_can = " (equality modulo B via can)";
    let label = |id: &str| format!("{}:{id}", form.name());
    let can = |t: &TensorElement| lifted_canonical_map(pres, g, t);
    let show = |t: &TensorElement| t.render(&[pres]);
    let monos = pres.normal_monomials(degree_bound);
    let coinv = coinvariant_monomials(pres, g, degree_bound);
    let mut out = Vec::new();

    out.push(sweep.check(&label("transdef"), "transdef", via_can, |n| {
        let img = can(&form.eval(n)?)?;
        Ok((img != unit_tensor(pres, n)).then(|| format!("can~(τ(u^{n})) = {}", show(&img))))
    }));

    out.push(sweep.check(&label("colin"), "colin", "", |n| {
        let l = form.eval(n)?;
        let lhs = l.tensor(&TensorElement::grouplike(n));
        let rhs = tensor_apply(&l, 1, &rho)?;
        Ok(first_difference(&lhs, &rhs, &[pres]))
    }));

    out.push(sweep.check(&label("trmuleps"), "trmuleps", "", |n| {
        let m = mul_adjacent(pres, &form.eval(n)?, 0)?;
        Ok((m != TensorElement::from_algebra(&pres.one())).then(|| format!("m(τ(u^{n})) = {}", show(&m))))
    }));

    let trpp = {
        let found = exec::map(strategy, &monos, |p| -> Result<Option<String>> {
            let d = g.degree(p);
            let lhs = can(&left_mul(pres, p, &form.eval(d)?)?)?;
            let rhs = can(&TensorElement::pure(&[&pres.one(), &pres.monomial(p)]))?;
            Ok((lhs != rhs).then(|| format!("p = {}: {} vs {}", pres.render_monomial(p), show(&lhs), show(&rhs))))
        });
        let first = found.into_iter().find_map(|r| match r {
            Ok(None) => None,
            Ok(Some(s)) => Some(s),
            Err(e) => Some(e.to_string()),
        });
        CheckResult::new(
            "connection",
            label("trpp"),
            "trpp",
            first.is_none(),
            first.unwrap_or_else(|| format!("{} monomials p{via_can}", monos.len())),
        )
    };
    out.push(trpp);

    out.push(sweep.check(&label("leftc"), "leftc", "", |n| {
        let l = form.eval(n)?;
        let lhs = tensor_apply(&l, 0, &rho)?.permute(&[0, 2, 1])?;
        let rhs = l.tensor(&TensorElement::grouplike(-n));
        Ok(first_difference(&lhs, &rhs, &[pres]))
    }));

    out.push(sweep.check(&label("trcomu"), "trcomu", via_can, |n| {
        let l = form.eval(n)?;
        for b in &coinv {
            let lhs = can(&left_mul(pres, b, &l)?)?;
            let rhs = can(&right_mul(pres, &l, b)?)?;
            if lhs != rhs {
                return Ok(Some(format!("b = {}", pres.render_monomial(b))));
            }
        }
        Ok(None)
    }));

    out.push(sweep.check(&label("trmul"), "trmul", via_can, |m| {
        for n in range(n_bound) {
            let (lm, ln) = (form.eval(m)?, form.eval(n)?);
            // d^[1] c^[1] ⊗ c^[2] d^[2] for c = u^m, d = u^n
            let mut prod = TensorElement::zero(form.shape());
            for (e1, c1) in lm.terms() {
                for (e2, c2) in ln.terms() {
                    let (x, y) = (e1[0].monomial().unwrap(), e1[1].monomial().unwrap());
                    let (x2, y2) = (e2[0].monomial().unwrap(), e2[1].monomial().unwrap());
                    let first = pres.mul_unchecked(&pres.monomial(x2), &pres.monomial(x));
                    let second = pres.mul_unchecked(&pres.monomial(y), &pres.monomial(y2));
                    prod = &prod + &TensorElement::pure(&[&first, &second]).scale(&(c1 * c2));
                }
            }
            let lhs = can(&form.eval(m + n)?)?;
            let rhs = can(&prod)?;
            if lhs != rhs {
                return Ok(Some(format!("u^{m} * u^{n}")));
            }
        }
        Ok(None)
    }));
    out
}

/// The representative `(x ⊗ 1) ℓ(u^n)` of `can⁻¹(x ⊗ u^n)` for a member `x`
/// of the cotensor product.
pub fn inverse_canonical_representative(
    cot: &CotensorAlgebra,
    form: &ConnectionForm,
    x: &crate::algebra::AlgebraElement,
    n: i64,
) -> Result<TensorElement> {
    if !cot.is_member(x)? {
        return Err(Error::NotInCotensor(cot.render(x)));
    }
    let amb = cot.ambient();
    let l = form.eval(n)?;
    let xt = TensorElement::from_algebra(x).tensor(&l);
    mul_adjacent(amb, &xt, 0)
}
