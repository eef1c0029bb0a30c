//! The cotensor product `A □_H P` as the matching-degree subalgebra of
//! `A ⊗ P`, its coinvariants, and the canonical entwinings.

use std::sync::Arc;

use crate::algebra::{render_terms, AlgebraElement, AlgebraPresentation, Monomial};
use crate::comodule::{
    coinvariants_basis, mul_adjacent, tensor_apply, Comultiply, Counit, Grading, LeftCoaction, RightCoaction,
    SlotEntry, SlotKind, TensorElement,
};
use crate::comodule::{render_group, CoactionSpec};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::report::CheckResult;
use crate::scalar::LaurentScalar;

/// `A □_H P` inside the tensor product presentation `A ⊗ P`.
///
/// `A` carries a right `H`-grading, `P` a left `H`-grading and a right
/// `C`-grading; the right `C`-coaction of the cotensor product comes from
/// `P`.
#[derive(Clone, Debug)]
pub struct CotensorAlgebra {
    a: Arc<AlgebraPresentation>,
    p: Arc<AlgebraPresentation>,
    a_spec: CoactionSpec,
    p_spec: CoactionSpec,
    ambient: Arc<AlgebraPresentation>,
    a_h: Grading,
    p_h: Grading,
    c_grading: Grading,
}

/// `a'` with suffix `1` becomes `a1'`.
fn suffixed(name: &str, suffix: &str) -> String {
    let base = name.trim_end_matches('\'');
    let primes = &name[base.len()..];
    format!("{base}{suffix}{primes}")
}

impl CotensorAlgebra {
    pub fn new(
        a: Arc<AlgebraPresentation>,
        a_spec: CoactionSpec,
        p: Arc<AlgebraPresentation>,
        p_spec: CoactionSpec,
    ) -> Result<Self> {
        a_spec.validate(&a)?;
        p_spec.validate(&p)?;
        let a_h = a_spec.right()?.clone();
        let p_h = p_spec.left()?.clone();
        let p_c = p_spec.right()?.clone();
        let collide = a.generator_names().iter().any(|g| p.generator_names().contains(g));
        let ambient = if collide {
            let ar = a.renamed(a.name(), |g| suffixed(g, "1"))?;
            let pr = p.renamed(p.name(), |g| suffixed(g, "2"))?;
            ar.tensor(&pr)?
        } else {
            a.tensor(&p)?
        };
        let c_grading = p_c.prepend_zero(a.arity());
        Ok(Self {
            ambient: Arc::new(ambient),
            a_h,
            p_h,
            c_grading,
            a,
            p,
            a_spec,
            p_spec,
        })
    }

    pub fn a(&self) -> &Arc<AlgebraPresentation> {
        &self.a
    }

    pub fn p(&self) -> &Arc<AlgebraPresentation> {
        &self.p
    }

    pub fn a_spec(&self) -> &CoactionSpec {
        &self.a_spec
    }

    pub fn p_spec(&self) -> &CoactionSpec {
        &self.p_spec
    }

    pub fn ambient(&self) -> &Arc<AlgebraPresentation> {
        &self.ambient
    }

    /// Right `C`-grading of the ambient algebra.
    pub fn c_grading(&self) -> &Grading {
        &self.c_grading
    }

    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        m.split_at(self.a.arity())
    }

    pub fn join(&self, ma: &Monomial, mp: &Monomial) -> Monomial {
        ma.concat(mp)
    }

    /// `x ⊗ y` as an ambient element.
    pub fn embed(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.a.check(x)?;
        self.p.check(y)?;
        let mut terms = Vec::new();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                terms.push((m1.concat(m2), c1 * c2));
            }
        }
        Ok(self.ambient.from_terms(terms))
    }

    /// The ambient element as a tensor in `A ⊗ P`.
    pub fn split_element(&self, x: &AlgebraElement) -> Result<TensorElement> {
        self.ambient.check(x)?;
        let mut t = TensorElement::zero(vec![SlotKind::Algebra(self.a.id()), SlotKind::Algebra(self.p.id())]);
        for (m, c) in x.terms() {
            let (ma, mp) = self.split(m);
            t.add_term(vec![SlotEntry::Mono(ma), SlotEntry::Mono(mp)], c);
        }
        Ok(t)
    }

    /// Inverse of [`split_element`](Self::split_element).
    pub fn join_tensor(&self, t: &TensorElement) -> Result<AlgebraElement> {
        t.expect_shape(&[SlotKind::Algebra(self.a.id()), SlotKind::Algebra(self.p.id())])?;
        Ok(self.ambient.from_terms(t.terms().map(|(e, c)| {
            let (ma, mp) = (e[0].monomial().unwrap(), e[1].monomial().unwrap());
            (ma.concat(mp), c.clone())
        })))
    }

    pub fn is_member_monomial(&self, m: &Monomial) -> bool {
        let (ma, mp) = self.split(m);
        self.a_h.degree(&ma) == self.p_h.degree(&mp)
    }

    pub fn is_member(&self, x: &AlgebraElement) -> Result<bool> {
        self.ambient.check(x)?;
        Ok(x.terms().all(|(m, _)| self.is_member_monomial(m)))
    }

    /// Matching pairs `m_A ⊗ m_P` of normal monomials with each leg of
    /// degree at most `degree`, in ambient monomial order.
    pub fn generators_up_to(&self, degree: u32) -> Vec<AlgebraElement> {
        let pm = self.p.normal_monomials(degree);
        let mut out: Vec<Monomial> = Vec::new();
        for ma in self.a.normal_monomials(degree) {
            let d = self.a_h.degree(&ma);
            for mp in &pm {
                if self.p_h.degree(mp) == d {
                    out.push(ma.concat(mp));
                }
            }
        }
        out.sort();
        out.iter().map(|m| self.ambient.monomial(m)).collect()
    }

    /// Member monomials of total degree at most `degree`.
    pub fn member_monomials(&self, degree: u32) -> Vec<Monomial> {
        self.ambient
            .normal_monomials(degree)
            .into_iter()
            .filter(|m| self.is_member_monomial(m))
            .collect()
    }

    /// `(A □_H P)^{co C}` up to total degree `degree`, filtered from the
    /// ambient monomials.
    pub fn coinvariants_basis(&self, degree: u32) -> Vec<AlgebraElement> {
        self.member_monomials(degree)
            .into_iter()
            .filter(|m| self.c_grading.degree(m) == 0)
            .map(|m| self.ambient.monomial(&m))
            .collect()
    }

    /// `A □_H (P^{co C})` up to total degree `degree`, built from the
    /// coinvariants of `P`.
    pub fn cotensor_of_coinvariants(&self, degree: u32) -> Vec<AlgebraElement> {
        let p_c = self.p_spec.right.as_ref().expect("checked at construction");
        let coinv = coinvariants_basis(&self.p, p_c, degree);
        let mut out = Vec::new();
        for ma in self.a.normal_monomials(degree) {
            let d = self.a_h.degree(&ma);
            for y in &coinv {
                let (mp, _) = y.terms().next().expect("basis elements are monomials");
                if mp.degree() + ma.degree() <= degree && self.p_h.degree(mp) == d {
                    out.push(ma.concat(mp));
                }
            }
        }
        out.sort();
        out.iter().map(|m| self.ambient.monomial(m)).collect()
    }

    /// `ψ_□` on `C ⊗ (A □_H P)`: the canonical entwining of the `P`-leg.
    pub fn entwining(&self) -> CanonicalEntwining<'_> {
        CanonicalEntwining::new(&self.ambient, &self.c_grading)
    }

    /// Renders an ambient element leg by leg: `(a ⊗ a') + L (b ⊗ b)`.
    pub fn render(&self, x: &AlgebraElement) -> String {
        match self.split_element(x) {
            Ok(t) => t.render(&[&self.a, &self.p]),
            Err(_) => self.ambient.render(x),
        }
    }

    /// Renders a tensor whose slots are all ambient, each slot leg by leg:
    /// `2 ((a ⊗ a') ⊗ (a' ⊗ a))`.
    pub fn render_tensor(&self, t: &TensorElement) -> String {
        let leg = |e: &SlotEntry| match e.monomial() {
            Some(m) => {
                let (ma, mp) = self.split(m);
                format!("({} ⊗ {})", self.a.render_monomial(&ma), self.p.render_monomial(&mp))
            }
            None => render_group(e.group().unwrap_or_default()),
        };
        render_terms(t.terms().map(|(es, c)| {
            (
                format!("({})", es.iter().map(leg).collect::<Vec<_>>().join(" ⊗ ")),
                false,
                c,
            )
        }))
    }

    /// Closure of membership under products of members of degree at most
    /// `degree`.
    pub fn check_closure(&self, degree: u32, strategy: Strategy) -> CheckResult {
        let gens = self.member_monomials(degree);
        let bad = exec::map(strategy, &gens, |m1| {
            let x = self.ambient.monomial(m1);
            gens.iter().find_map(|m2| {
                let y = self.ambient.monomial(m2);
                let xy = self.ambient.mul_unchecked(&x, &y);
                (!self.is_member(&xy).unwrap()).then(|| format!("{} * {}", self.render(&x), self.render(&y)))
            })
        });
        let first = bad.into_iter().flatten().next();
        CheckResult::new(
            "cotensor",
            "closure",
            "algcot",
            first.is_none(),
            first.map_or_else(
                || format!("{} members squared", gens.len()),
                |f| format!("product leaves the cotensor: {f}"),
            ),
        )
    }
}

/// An entwining `ψ: C ⊗ P → P ⊗ C`, given on basis tensors.
pub trait EntwiningMap: Sync {
    fn presentation(&self) -> &AlgebraPresentation;
    /// `ψ(u^c ⊗ p)`.
    fn entwine_basis(&self, c: i64, p: &Monomial) -> Vec<(Monomial, i64, LaurentScalar)>;
    /// `ψ⁻¹(p ⊗ u^c)`.
    fn inverse_basis(&self, p: &Monomial, c: i64) -> Vec<(i64, Monomial, LaurentScalar)>;
}

/// `ψ(u^m ⊗ p) = p ⊗ u^{m + deg p}` for homogeneous `p`.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalEntwining<'a> {
    pres: &'a AlgebraPresentation,
    grading: &'a Grading,
    offset: i64,
}

impl<'a> CanonicalEntwining<'a> {
    pub fn new(pres: &'a AlgebraPresentation, grading: &'a Grading) -> Self {
        Self {
            pres,
            grading,
            offset: 0,
        }
    }

    /// Adds a constant to every shift; any nonzero offset breaks the axioms.
    pub fn with_offset(mut self, offset: i64) -> Self {
        self.offset = offset;
        self
    }
}

impl EntwiningMap for CanonicalEntwining<'_> {
    fn presentation(&self) -> &AlgebraPresentation {
        self.pres
    }

    fn entwine_basis(&self, c: i64, p: &Monomial) -> Vec<(Monomial, i64, LaurentScalar)> {
        vec![(
            p.clone(),
            c + self.grading.degree(p) + self.offset,
            LaurentScalar::one(),
        )]
    }

    fn inverse_basis(&self, p: &Monomial, c: i64) -> Vec<(i64, Monomial, LaurentScalar)> {
        vec![(
            c - self.grading.degree(p) - self.offset,
            p.clone(),
            LaurentScalar::one(),
        )]
    }
}

/// Applies `ψ` to slots `slot, slot + 1` (shape `C ⊗ P`).
pub fn entwine_at(map: &dyn EntwiningMap, t: &TensorElement, slot: usize) -> Result<TensorElement> {
    let pk = SlotKind::Algebra(map.presentation().id());
    expect_pair(t, slot, [SlotKind::Group, pk])?;
    let mut shape = t.shape().to_vec();
    shape.swap(slot, slot + 1);
    let mut out = TensorElement::zero(shape);
    for (e, c) in t.terms() {
        let (g, m) = (e[slot].group().unwrap(), e[slot + 1].monomial().unwrap());
        for (m2, g2, c2) in map.entwine_basis(g, m) {
            let mut es = e.clone();
            es[slot] = SlotEntry::Mono(m2);
            es[slot + 1] = SlotEntry::Group(g2);
            out.add_term(es, &(c * &c2));
        }
    }
    Ok(out)
}

/// Applies `ψ⁻¹` to slots `slot, slot + 1` (shape `P ⊗ C`).
pub fn entwine_inverse_at(map: &dyn EntwiningMap, t: &TensorElement, slot: usize) -> Result<TensorElement> {
    let pk = SlotKind::Algebra(map.presentation().id());
    expect_pair(t, slot, [pk, SlotKind::Group])?;
    let mut shape = t.shape().to_vec();
    shape.swap(slot, slot + 1);
    let mut out = TensorElement::zero(shape);
    for (e, c) in t.terms() {
        let (m, g) = (e[slot].monomial().unwrap(), e[slot + 1].group().unwrap());
        for (g2, m2, c2) in map.inverse_basis(m, g) {
            let mut es = e.clone();
            es[slot] = SlotEntry::Group(g2);
            es[slot + 1] = SlotEntry::Mono(m2);
            out.add_term(es, &(c * &c2));
        }
    }
    Ok(out)
}

fn expect_pair(t: &TensorElement, slot: usize, kinds: [SlotKind; 2]) -> Result<()> {
    if t.shape().get(slot) == Some(&kinds[0]) && t.shape().get(slot + 1) == Some(&kinds[1]) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: format!("{kinds:?} at slot {slot}"),
            found: format!("{:?}", t.shape()),
        })
    }
}

pub fn entwine(map: &dyn EntwiningMap, t: &TensorElement) -> Result<TensorElement> {
    entwine_at(map, t, 0)
}

pub fn entwine_inverse(map: &dyn EntwiningMap, t: &TensorElement) -> Result<TensorElement> {
    entwine_inverse_at(map, t, 0)
}

fn basis(c: i64, p: &Monomial, kind: SlotKind) -> TensorElement {
    let mut t = TensorElement::zero(vec![SlotKind::Group, kind]);
    t.add_term(
        vec![SlotEntry::Group(c), SlotEntry::Mono(p.clone())],
        &LaurentScalar::one(),
    );
    t
}

fn first_failure<T: Sync>(
    strategy: Strategy,
    items: &[T],
    f: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    exec::map(strategy, items, f).into_iter().flatten().next()
}

fn result(suite: &str, id: &str, anchor: &str, failure: Option<String>, ok_detail: String) -> CheckResult {
    CheckResult::new(suite, id, anchor, failure.is_none(), failure.unwrap_or(ok_detail))
}

/// The four right-right entwining axioms, invertibility and (when a left
/// grading is given) colinearity with the left `H`-coaction, on `u^c ⊗ p`
/// for `c` in `group_range` and `p` in `samples`. Multiplicativity uses the
/// pairs of samples whose degrees sum to at most `degree_bound`.
pub fn check_entwining_axioms(
    suite: &str,
    map: &dyn EntwiningMap,
    samples: &[Monomial],
    group_range: std::ops::RangeInclusive<i64>,
    degree_bound: u32,
    left: Option<&Grading>,
    strategy: Strategy,
) -> Vec<CheckResult> {
    let pres = map.presentation();
    let pk = SlotKind::Algebra(pres.id());
    let groups: Vec<i64> = group_range.collect();
    let cases: Vec<(i64, &Monomial)> = groups
        .iter()
        .flat_map(|&c| samples.iter().map(move |p| (c, p)))
        .collect();
    let shown = |c: i64, p: &Monomial| format!("u^{c} ⊗ {}", pres.render_monomial(p));
    let mut out = Vec::new();

    let mult = first_failure(strategy, &cases, |&(c, p)| {
        for q in samples.iter().filter(|q| q.degree() + p.degree() <= degree_bound) {
            let pq = pres.from_terms([pres.monomial_product(p, q)].map(|(f, m)| (m, f.to_scalar())));
            let lhs = entwine(
                map,
                &TensorElement::grouplike(c).tensor(&TensorElement::from_algebra(&pq)),
            )
            .unwrap();
            let t = basis(c, p, pk).tensor(&TensorElement::from_algebra(&pres.monomial(q)));
            let t = entwine_at(map, &t, 0).unwrap();
            let t = entwine_at(map, &t, 1).unwrap();
            let rhs = mul_adjacent(pres, &t, 0).unwrap();
            if lhs != rhs {
                return Some(format!("{} ⊗ {}", shown(c, p), pres.render_monomial(q)));
            }
        }
        None
    });
    out.push(result(
        suite,
        "entwining-multiplicative",
        "entcotlem",
        mult,
        format!("{} cases", cases.len()),
    ));

    let one = Monomial::one(pres.arity());
    let unit = groups.iter().find_map(|&c| {
        let lhs = entwine(map, &basis(c, &one, pk)).unwrap();
        let rhs = TensorElement::from_algebra(&pres.one()).tensor(&TensorElement::grouplike(c));
        (lhs != rhs).then(|| shown(c, &one))
    });
    out.push(result(
        suite,
        "entwining-unit",
        "entcotlem",
        unit,
        format!("{} grouplikes", groups.len()),
    ));

    let comult = first_failure(strategy, &cases, |&(c, p)| {
        let t = basis(c, p, pk);
        let lhs = tensor_apply(&entwine(map, &t).unwrap(), 1, &Comultiply).unwrap();
        let r = tensor_apply(&t, 0, &Comultiply).unwrap();
        let r = entwine_at(map, &r, 1).unwrap();
        let rhs = entwine_at(map, &r, 0).unwrap();
        (lhs != rhs).then(|| shown(c, p))
    });
    out.push(result(
        suite,
        "entwining-comultiplicative",
        "entcotlem",
        comult,
        format!("{} cases", cases.len()),
    ));

    let counit = first_failure(strategy, &cases, |&(c, p)| {
        let t = basis(c, p, pk);
        let lhs = tensor_apply(&entwine(map, &t).unwrap(), 1, &Counit).unwrap();
        let rhs = tensor_apply(&t, 0, &Counit).unwrap();
        (lhs != rhs).then(|| shown(c, p))
    });
    out.push(result(
        suite,
        "entwining-counit",
        "entcotlem",
        counit,
        format!("{} cases", cases.len()),
    ));

    let inverse = first_failure(strategy, &cases, |&(c, p)| {
        let t = basis(c, p, pk);
        let back = entwine_inverse(map, &entwine(map, &t).unwrap()).unwrap();
        let s = TensorElement::from_algebra(&pres.monomial(p)).tensor(&TensorElement::grouplike(c));
        let fwd = entwine(map, &entwine_inverse(map, &s).unwrap()).unwrap();
        (back != t || fwd != s).then(|| shown(c, p))
    });
    out.push(result(
        suite,
        "entwining-inverse",
        "entcotlem",
        inverse,
        format!("{} cases", cases.len()),
    ));

    if let Some(l) = left {
        let coact = LeftCoaction {
            presentation: pres.id(),
            grading: l,
        };
        let colin = first_failure(strategy, &cases, |&(c, p)| {
            let t = basis(c, p, pk);
            let lhs = tensor_apply(&entwine(map, &t).unwrap(), 0, &coact).unwrap();
            let r = tensor_apply(&t, 1, &coact).unwrap().permute(&[1, 0, 2]).unwrap();
            let rhs = entwine_at(map, &r, 1).unwrap();
            (lhs != rhs).then(|| shown(c, p))
        });
        out.push(result(
            suite,
            "entwining-h-colinear",
            "hcent2",
            colin,
            format!("{} cases", cases.len()),
        ));
    }
    out
}

/// `ρ(xy) = x₍₀₎ ψ(x₍₁₎ ⊗ y)` and `ρ(p) = ψ(u⁰ ⊗ p)` for the right coaction
/// given by `grading`.
pub fn check_entwined_module(
    suite: &str,
    map: &dyn EntwiningMap,
    grading: &Grading,
    samples: &[Monomial],
    degree_bound: u32,
    strategy: Strategy,
) -> Vec<CheckResult> {
    let pres = map.presentation();
    let pk = SlotKind::Algebra(pres.id());
    let rho = RightCoaction {
        presentation: pres.id(),
        grading,
    };
    let module = first_failure(strategy, samples, |x| {
        let xt = TensorElement::from_algebra(&pres.monomial(x));
        let rx = tensor_apply(&xt, 0, &rho).unwrap();
        for y in samples.iter().filter(|y| y.degree() + x.degree() <= degree_bound) {
            let ye = pres.monomial(y);
            let xy = pres.mul_unchecked(&pres.monomial(x), &ye);
            let lhs = tensor_apply(&TensorElement::from_algebra(&xy), 0, &rho).unwrap();
            let t = rx.tensor(&TensorElement::from_algebra(&ye));
            let t = entwine_at(map, &t, 1).unwrap();
            let rhs = mul_adjacent(pres, &t, 0).unwrap();
            if lhs != rhs {
                return Some(format!("{} * {}", pres.render_monomial(x), pres.render_monomial(y)));
            }
        }
        None
    });
    let copointed = first_failure(strategy, samples, |p| {
        let lhs = tensor_apply(&TensorElement::from_algebra(&pres.monomial(p)), 0, &rho).unwrap();
        let rhs = entwine(map, &basis(0, p, pk)).unwrap();
        (lhs != rhs).then(|| pres.render_monomial(p))
    });
    vec![
        result(
            suite,
            "entwined-module",
            "entcotlem",
            module,
            format!("{} samples", samples.len()),
        ),
        result(
            suite,
            "e-copointed",
            "entcotlem",
            copointed,
            format!("{} samples", samples.len()),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::matsumoto;

    fn example2() -> CotensorAlgebra {
        let a = Arc::new(matsumoto("A", 0));
        let p = Arc::new(matsumoto("P", 1));
        let r = Grading::new(vec![1, -1, 1, -1]);
        CotensorAlgebra::new(
            a,
            CoactionSpec::new(Some(r.clone()), None),
            p,
            CoactionSpec::new(Some(r), Some(Grading::new(vec![-1, 1, 1, -1]))),
        )
        .unwrap()
    }

    fn pair(cot: &CotensorAlgebra, x: &str, y: &str) -> AlgebraElement {
        let one = LaurentScalar::one();
        cot.embed(
            &cot.a().normal_form(one.clone(), &[x]).unwrap(),
            &cot.p().normal_form(one, &[y]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn suffix_goes_before_primes() {
        assert_eq!(suffixed("a'", "1"), "a1'");
        assert_eq!(suffixed("b", "2"), "b2");
    }

    #[test]
    fn membership() {
        let cot = example2();
        assert!(cot.is_member(&pair(&cot, "a", "a'")).unwrap());
        assert!(!cot.is_member(&pair(&cot, "a", "a")).unwrap());
        assert!(cot.is_member(&cot.ambient().one()).unwrap());
        assert_eq!(cot.render(&pair(&cot, "b", "b")), "(b ⊗ b)");
    }

    #[test]
    fn degree_one_generators() {
        let cot = example2();
        let gens: Vec<String> = cot.generators_up_to(1).iter().map(|x| cot.render(x)).collect();
        for want in [
            "(a ⊗ a')",
            "(b ⊗ b)",
            "(a ⊗ b)",
            "(b ⊗ a')",
            "(a' ⊗ a)",
            "(b' ⊗ b')",
            "(a' ⊗ b')",
            "(b' ⊗ a)",
        ] {
            assert!(gens.iter().any(|g| g == want), "{want} not in {gens:?}");
        }
        assert_eq!(gens.len(), 9);
        assert_eq!(cot.generators_up_to(0), vec![cot.ambient().one()]);
    }

    #[test]
    fn coinvariants_agree() {
        let cot = example2();
        assert_eq!(cot.coinvariants_basis(4), cot.cotensor_of_coinvariants(4));
        assert_eq!(cot.coinvariants_basis(0), vec![cot.ambient().one()]);
    }

    #[test]
    fn entwining_examples() {
        let p = matsumoto("P", 0);
        let g = Grading::new(vec![1, -1, 1, -1]);
        let psi = CanonicalEntwining::new(&p, &g);
        let a = p.generator("a").unwrap();
        let t = TensorElement::grouplike(1).tensor(&TensorElement::from_algebra(&a));
        assert_eq!(entwine(&psi, &t).unwrap().render(&[&p]), "(a ⊗ u^2)");
        let x = p.normal_form(LaurentScalar::one(), &["a", "b'"]).unwrap();
        let t = TensorElement::grouplike(3).tensor(&TensorElement::from_algebra(&x));
        assert_eq!(entwine_inverse(&psi, &entwine(&psi, &t).unwrap()).unwrap(), t);
        assert!(entwine(&psi, &TensorElement::from_algebra(&a)).is_err());
    }

    #[test]
    fn axioms_hold_and_offset_breaks_them() {
        let p = matsumoto("P", 0);
        let g = Grading::new(vec![1, -1, 1, -1]);
        let left = Grading::new(vec![-1, 1, 1, -1]);
        let samples = p.normal_monomials(3);
        let psi = CanonicalEntwining::new(&p, &g);
        let rep = check_entwining_axioms("t", &psi, &samples, -2..=2, 3, Some(&left), Strategy::Sequential);
        assert!(rep.iter().all(|r| r.passed()), "{rep:?}");
        let rep = check_entwined_module("t", &psi, &g, &samples, 3, Strategy::Sequential);
        assert!(rep.iter().all(|r| r.passed()), "{rep:?}");

        let bad = psi.with_offset(1);
        let rep = check_entwining_axioms("t", &bad, &samples, -1..=1, 3, None, Strategy::Sequential);
        assert!(rep.iter().any(|r| !r.passed()));
        let broken = g.clone().with_unit_degree(1);
        let rep = check_entwined_module("t", &psi, &broken, &samples, 3, Strategy::Sequential);
        assert!(rep.iter().any(|r| !r.passed()));
    }

    #[test]
    fn lifted_entwining_on_members() {
        let cot = example2();
        let samples = cot.member_monomials(3);
        let psi = cot.entwining();
        let rep = check_entwining_axioms("t", &psi, &samples, -1..=1, 3, None, Strategy::Sequential);
        assert!(rep.iter().all(|r| r.passed()), "{rep:?}");
        assert!(cot.check_closure(2, Strategy::Sequential).passed());
    }
}
