//! The circle Hopf algebra `C = K[u, u^-1]`, coactions given by gradings,
//! and tensors mixing algebra slots with grouplike slots.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::algebra::{render_terms, AlgebraElement, AlgebraPresentation, Monomial, PresentationId};
use crate::error::{Error, Result};
use crate::report::CheckResult;
use crate::scalar::LaurentScalar;

/// Finite combination of grouplikes `u^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupCoalgebraElement {
    terms: BTreeMap<i64, LaurentScalar>,
}

impl GroupCoalgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn grouplike(n: i64) -> Self {
        Self::from_terms([(n, LaurentScalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, LaurentScalar)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (n, c) in terms {
            out.add_term(n, &c);
        }
        out
    }

    fn add_term(&mut self, n: i64, c: &LaurentScalar) {
        let s = self.terms.get(&n).map(|x| x + c).unwrap_or_else(|| c.clone());
        if s.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentScalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Δ(u^n) = u^n ⊗ u^n`.
    pub fn comultiply(&self) -> TensorElement {
        let mut t = TensorElement::zero(vec![SlotKind::Group, SlotKind::Group]);
        for (n, c) in &self.terms {
            t.add_term(vec![SlotEntry::Group(*n), SlotEntry::Group(*n)], c);
        }
        t
    }

    /// `ε(u^n) = 1`.
    pub fn counit(&self) -> LaurentScalar {
        self.terms.values().fold(LaurentScalar::zero(), |acc, c| &acc + c)
    }

    /// `S(u^n) = u^-n`.
    pub fn antipode(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, c)| (-n, c.clone())))
    }

    pub fn to_tensor(&self) -> TensorElement {
        let mut t = TensorElement::zero(vec![SlotKind::Group]);
        for (n, c) in &self.terms {
            t.add_term(vec![SlotEntry::Group(*n)], c);
        }
        t
    }
}

impl Add for &GroupCoalgebraElement {
    type Output = GroupCoalgebraElement;
    fn add(self, rhs: &GroupCoalgebraElement) -> GroupCoalgebraElement {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, c);
        }
        out
    }
}

/// `δ(u^m ⊗ u^n) = u^n` if `m = n`, else `0`.
pub fn coseparability_retraction(t: &TensorElement) -> Result<GroupCoalgebraElement> {
    t.expect_shape(&[SlotKind::Group, SlotKind::Group])?;
    let mut out = GroupCoalgebraElement::zero();
    for (entries, c) in t.terms() {
        if let [SlotEntry::Group(m), SlotEntry::Group(n)] = entries.as_slice() {
            if m == n {
                out.add_term(*n, c);
            }
        }
    }
    Ok(out)
}

/// Integer degrees of the generators; a monomial's degree is the sum of its
/// letters' degrees plus `unit_degree`.
///
/// A nonzero `unit_degree` does not define a coaction; it exists so that
/// checks can be run against a broken one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    degrees: Vec<i64>,
    unit_degree: i64,
}

impl Grading {
    pub fn new(degrees: Vec<i64>) -> Self {
        Self {
            degrees,
            unit_degree: 0,
        }
    }

    pub fn with_unit_degree(mut self, d: i64) -> Self {
        self.unit_degree = d;
        self
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn unit_degree(&self) -> i64 {
        self.unit_degree
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        self.unit_degree
            + m.exponents()
                .iter()
                .zip(&self.degrees)
                .map(|(&e, &d)| e as i64 * d)
                .sum::<i64>()
    }

    /// The common degree of all terms, if there is one. Zero has none.
    pub fn element_degree(&self, x: &AlgebraElement) -> Option<i64> {
        let mut it = x.terms().map(|(m, _)| self.degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn components(&self, pres: &AlgebraPresentation, x: &AlgebraElement) -> BTreeMap<i64, AlgebraElement> {
        let mut out: BTreeMap<i64, Vec<(Monomial, LaurentScalar)>> = BTreeMap::new();
        for (m, c) in x.terms() {
            out.entry(self.degree(m)).or_default().push((m.clone(), c.clone()));
        }
        out.into_iter().map(|(d, ts)| (d, pres.from_terms(ts))).collect()
    }

    /// Grading of a tensor product presentation.
    pub fn concat(&self, other: &Grading) -> Grading {
        Grading {
            degrees: self.degrees.iter().chain(&other.degrees).copied().collect(),
            unit_degree: self.unit_degree + other.unit_degree,
        }
    }

    /// Grading that ignores the second factor of a tensor product.
    pub fn extend_zero(&self, extra: usize) -> Grading {
        let mut g = self.clone();
        g.degrees.extend(std::iter::repeat_n(0, extra));
        g
    }

    /// Grading that ignores the first factor of a tensor product.
    pub fn prepend_zero(&self, extra: usize) -> Grading {
        let mut degrees = vec![0; extra];
        degrees.extend_from_slice(&self.degrees);
        Grading {
            degrees,
            unit_degree: self.unit_degree,
        }
    }
}

/// Right `C`-coaction and left `H`-coaction of an algebra, each optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoactionSpec {
    pub right: Option<Grading>,
    pub left: Option<Grading>,
}

impl CoactionSpec {
    pub fn new(right: Option<Grading>, left: Option<Grading>) -> Self {
        Self { right, left }
    }

    pub fn right(&self) -> Result<&Grading> {
        self.right
            .as_ref()
            .ok_or_else(|| Error::InvalidCoaction("no right coaction declared".into()))
    }

    pub fn left(&self) -> Result<&Grading> {
        self.left
            .as_ref()
            .ok_or_else(|| Error::InvalidCoaction("no left coaction declared".into()))
    }

    /// Checks that each grading fits the presentation: one degree per
    /// generator, `deg(g*) = -deg(g)` and homogeneous relations.
    pub fn validate(&self, pres: &AlgebraPresentation) -> Result<()> {
        for (side, g) in [("right", &self.right), ("left", &self.left)] {
            let Some(g) = g else { continue };
            validate_grading(pres, g).map_err(|msg| Error::InvalidCoaction(format!("{side} degrees: {msg}")))?;
        }
        Ok(())
    }
}

fn validate_grading(pres: &AlgebraPresentation, g: &Grading) -> std::result::Result<(), String> {
    if g.degrees.len() != pres.arity() {
        return Err(format!("expected {} degrees, found {}", pres.arity(), g.degrees.len()));
    }
    if g.unit_degree != 0 {
        return Err("the unit must have degree 0".into());
    }
    let names = pres.generator_names();
    for i in 0..pres.arity() {
        let s = pres.star_index(i);
        if g.degrees[s] != -g.degrees[i] {
            return Err(format!(
                "deg({}) = {} but deg({}) = {}; a star must negate the degree",
                names[s], g.degrees[s], names[i], g.degrees[i]
            ));
        }
    }
    for r in pres.reductions() {
        let d = g.degree(r.lhs());
        for (_, w) in r.rhs_words() {
            let dw: i64 = w.iter().map(|&x| g.degrees[x]).sum();
            if dw != d {
                return Err(format!("relation `{}` is not homogeneous", pres.render_word(r.word())));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotKind {
    Algebra(PresentationId),
    Group,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotEntry {
    Mono(Monomial),
    Group(i64),
}

impl SlotEntry {
    pub fn kind_matches(&self, kind: &SlotKind) -> bool {
        matches!(
            (self, kind),
            (SlotEntry::Mono(_), SlotKind::Algebra(_)) | (SlotEntry::Group(_), SlotKind::Group)
        )
    }

    pub fn monomial(&self) -> Option<&Monomial> {
        match self {
            SlotEntry::Mono(m) => Some(m),
            SlotEntry::Group(_) => None,
        }
    }

    pub fn group(&self) -> Option<i64> {
        match self {
            SlotEntry::Group(n) => Some(*n),
            SlotEntry::Mono(_) => None,
        }
    }
}

/// Linear combination of pure tensors of a fixed shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    shape: Vec<SlotKind>,
    terms: BTreeMap<Vec<SlotEntry>, LaurentScalar>,
}

impl TensorElement {
    pub fn zero(shape: Vec<SlotKind>) -> Self {
        Self {
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// A scalar, as a tensor with no slots.
    pub fn scalar(c: LaurentScalar) -> Self {
        let mut t = Self::zero(vec![]);
        t.add_term(vec![], &c);
        t
    }

    pub fn from_algebra(x: &AlgebraElement) -> Self {
        let mut t = Self::zero(vec![SlotKind::Algebra(x.presentation_id())]);
        for (m, c) in x.terms() {
            t.add_term(vec![SlotEntry::Mono(m.clone())], c);
        }
        t
    }

    pub fn grouplike(n: i64) -> Self {
        GroupCoalgebraElement::grouplike(n).to_tensor()
    }

    /// Pure tensor of algebra elements.
    pub fn pure(factors: &[&AlgebraElement]) -> Self {
        factors.iter().fold(Self::scalar(LaurentScalar::one()), |acc, x| {
            acc.tensor(&Self::from_algebra(x))
        })
    }

    pub fn shape(&self) -> &[SlotKind] {
        &self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SlotEntry>, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, entries: &[SlotEntry]) -> LaurentScalar {
        self.terms.get(entries).cloned().unwrap_or_default()
    }

    /// Adds `c · entries`; the caller guarantees the entries fit the shape
    /// and algebra entries are normal monomials.
    pub(crate) fn add_term(&mut self, entries: Vec<SlotEntry>, c: &LaurentScalar) {
        debug_assert_eq!(entries.len(), self.shape.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(entries) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn expect_shape(&self, shape: &[SlotKind]) -> Result<()> {
        if self.shape == shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: format!("{shape:?}"),
                found: format!("{:?}", self.shape),
            })
        }
    }

    /// Outer tensor product.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut out = TensorElement::zero(shape);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                e.extend_from_slice(e2);
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &LaurentScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.shape.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * s));
        }
        out
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<TensorElement> {
        other.expect_shape(&self.shape)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.try_add(&other.scale(&LaurentScalar::integer(-1)))
    }

    /// Canonical text form: `L (a ⊗ a') - (b ⊗ u^2)`.
    pub fn render(&self, algebras: &[&AlgebraPresentation]) -> String {
        if self.shape.is_empty() {
            return render_terms(self.terms.values().map(|c| (String::new(), true, c)));
        }
        let find = |id: &PresentationId| algebras.iter().find(|p| p.id() == *id);
        let entry_text = |e: &SlotEntry, kind: &SlotKind| match (e, kind) {
            (SlotEntry::Group(n), _) => render_group(*n),
            (SlotEntry::Mono(m), SlotKind::Algebra(id)) => match find(id) {
                Some(p) => p.render_monomial(m),
                None => format!("{m:?}"),
            },
            (SlotEntry::Mono(m), _) => format!("{m:?}"),
        };
        let single = self.shape.len() == 1;
        render_terms(self.terms.iter().map(|(es, c)| {
            let parts: Vec<String> = es.iter().zip(&self.shape).map(|(e, k)| entry_text(e, k)).collect();
            if single {
                let unit = matches!(&es[0], SlotEntry::Mono(m) if m.is_one());
                (parts[0].clone(), unit, c)
            } else {
                (format!("({})", parts.join(" ⊗ ")), false, c)
            }
        }))
    }
}

impl TensorElement {
    /// Reorders slots: slot `i` of the result is slot `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<TensorElement> {
        let mut seen = vec![false; self.shape.len()];
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::ShapeMismatch {
                    expected: format!("a permutation of {} slots", self.shape.len()),
                    found: format!("{order:?}"),
                });
            }
        }
        if order.len() != self.shape.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("a permutation of {} slots", self.shape.len()),
                found: format!("{order:?}"),
            });
        }
        let mut out = TensorElement::zero(order.iter().map(|&i| self.shape[i]).collect());
        for (e, c) in &self.terms {
            out.add_term(order.iter().map(|&i| e[i].clone()).collect(), c);
        }
        Ok(out)
    }
}

/// Multiplies slots `slot` and `slot + 1`, both algebra slots of `pres`.
pub fn mul_adjacent(pres: &AlgebraPresentation, t: &TensorElement, slot: usize) -> Result<TensorElement> {
    let kind = SlotKind::Algebra(pres.id());
    if t.shape.get(slot) != Some(&kind) || t.shape.get(slot + 1) != Some(&kind) {
        return Err(Error::ShapeMismatch {
            expected: format!("two adjacent slots of `{}` at {slot}", pres.name()),
            found: format!("{:?}", t.shape),
        });
    }
    let mut shape = t.shape.clone();
    shape.remove(slot + 1);
    let mut out = TensorElement::zero(shape);
    for (e, c) in &t.terms {
        let (m1, m2) = (e[slot].monomial().unwrap(), e[slot + 1].monomial().unwrap());
        let (f, m) = pres.monomial_product(m1, m2);
        for (mm, c2) in pres.from_terms([(m, f.to_scalar())]).terms() {
            let mut es = e[..slot].to_vec();
            es.push(SlotEntry::Mono(mm.clone()));
            es.extend_from_slice(&e[slot + 2..]);
            out.add_term(es, &(c * c2));
        }
    }
    Ok(out)
}

pub fn render_group(n: i64) -> String {
    match n {
        1 => "u".to_string(),
        _ => format!("u^{n}"),
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("tensor shapes must agree")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_sub(rhs).expect("tensor shapes must agree")
    }
}

/// A linear map on one tensor slot, given on basis entries.
pub trait SlotMap {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>>;
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)>;
}

pub struct Identity;

impl SlotMap for Identity {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        Ok(vec![input])
    }
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        vec![(vec![entry.clone()], LaurentScalar::one())]
    }
}

fn expect_algebra(input: SlotKind, id: PresentationId) -> Result<()> {
    if input == SlotKind::Algebra(id) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: format!("{:?}", SlotKind::Algebra(id)),
            found: format!("{input:?}"),
        })
    }
}

fn expect_group(input: SlotKind) -> Result<()> {
    if input == SlotKind::Group {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: "Group".into(),
            found: format!("{input:?}"),
        })
    }
}

/// `m ↦ m ⊗ u^deg(m)`.
pub struct RightCoaction<'a> {
    pub presentation: PresentationId,
    pub grading: &'a Grading,
}

impl SlotMap for RightCoaction<'_> {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        expect_algebra(input, self.presentation)?;
        Ok(vec![input, SlotKind::Group])
    }
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        let m = entry.monomial().expect("algebra slot");
        vec![(
            vec![entry.clone(), SlotEntry::Group(self.grading.degree(m))],
            LaurentScalar::one(),
        )]
    }
}

/// `m ↦ u^deg(m) ⊗ m`.
pub struct LeftCoaction<'a> {
    pub presentation: PresentationId,
    pub grading: &'a Grading,
}

impl SlotMap for LeftCoaction<'_> {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        expect_algebra(input, self.presentation)?;
        Ok(vec![SlotKind::Group, input])
    }
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        let m = entry.monomial().expect("algebra slot");
        vec![(
            vec![SlotEntry::Group(self.grading.degree(m)), entry.clone()],
            LaurentScalar::one(),
        )]
    }
}

pub struct Counit;

impl SlotMap for Counit {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        expect_group(input)?;
        Ok(vec![])
    }
    fn apply(&self, _: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        vec![(vec![], LaurentScalar::one())]
    }
}

pub struct Comultiply;

impl SlotMap for Comultiply {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        expect_group(input)?;
        Ok(vec![SlotKind::Group, SlotKind::Group])
    }
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        vec![(vec![entry.clone(), entry.clone()], LaurentScalar::one())]
    }
}

pub struct Antipode;

impl SlotMap for Antipode {
    fn output_shape(&self, input: SlotKind) -> Result<Vec<SlotKind>> {
        expect_group(input)?;
        Ok(vec![SlotKind::Group])
    }
    fn apply(&self, entry: &SlotEntry) -> Vec<(Vec<SlotEntry>, LaurentScalar)> {
        let n = entry.group().expect("group slot");
        vec![(vec![SlotEntry::Group(-n)], LaurentScalar::one())]
    }
}

/// Applies `f` to slot `slot` of every term and re-canonicalizes.
pub fn tensor_apply(t: &TensorElement, slot: usize, f: &dyn SlotMap) -> Result<TensorElement> {
    let kind = *t.shape.get(slot).ok_or_else(|| Error::ShapeMismatch {
        expected: format!("a tensor with more than {slot} slots"),
        found: format!("{:?}", t.shape),
    })?;
    let mid = f.output_shape(kind)?;
    let mut shape = t.shape[..slot].to_vec();
    shape.extend_from_slice(&mid);
    shape.extend_from_slice(&t.shape[slot + 1..]);
    let mut out = TensorElement::zero(shape);
    for (entries, c) in &t.terms {
        for (img, c2) in f.apply(&entries[slot]) {
            let mut e = entries[..slot].to_vec();
            e.extend(img);
            e.extend_from_slice(&entries[slot + 1..]);
            out.add_term(e, &(c * &c2));
        }
    }
    Ok(out)
}

/// Slotwise product of two tensors of the same shape: algebra slots
/// multiply in their presentation, grouplike slots multiply in `C`.
pub fn tensor_mul(algebras: &[&AlgebraPresentation], x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    y.expect_shape(&x.shape)?;
    let pres: Vec<Option<&AlgebraPresentation>> = x
        .shape
        .iter()
        .map(|k| match k {
            SlotKind::Group => Ok(None),
            SlotKind::Algebra(id) => algebras
                .iter()
                .find(|p| p.id() == *id)
                .copied()
                .map(Some)
                .ok_or_else(|| Error::PresentationMismatch {
                    expected: format!("presentation {:#x}", id.0),
                    found: "no such presentation supplied".into(),
                }),
        })
        .collect::<Result<_>>()?;
    let mut out = TensorElement::zero(x.shape.clone());
    for (e1, c1) in &x.terms {
        for (e2, c2) in &y.terms {
            let mut partial: Vec<(Vec<SlotEntry>, LaurentScalar)> = vec![(Vec::new(), c1 * c2)];
            for (slot, p) in pres.iter().enumerate() {
                let pieces: Vec<(SlotEntry, LaurentScalar)> = match (p, &e1[slot], &e2[slot]) {
                    (Some(p), SlotEntry::Mono(m1), SlotEntry::Mono(m2)) => {
                        let (f, m) = p.monomial_product(m1, m2);
                        p.from_terms([(m, f.to_scalar())])
                            .terms()
                            .map(|(m, c)| (SlotEntry::Mono(m.clone()), c.clone()))
                            .collect()
                    }
                    (None, SlotEntry::Group(a), SlotEntry::Group(b)) => {
                        vec![(SlotEntry::Group(a + b), LaurentScalar::one())]
                    }
                    _ => unreachable!("entries match the shape"),
                };
                partial = partial
                    .iter()
                    .flat_map(|(es, c)| {
                        pieces.iter().map(move |(e, c2)| {
                            let mut es = es.clone();
                            es.push(e.clone());
                            (es, c * c2)
                        })
                    })
                    .collect();
            }
            for (es, c) in partial {
                out.add_term(es, &c);
            }
        }
    }
    Ok(out)
}

pub fn right_coact(pres: &AlgebraPresentation, grading: &Grading, x: &AlgebraElement) -> Result<TensorElement> {
    pres.check(x)?;
    tensor_apply(
        &TensorElement::from_algebra(x),
        0,
        &RightCoaction {
            presentation: pres.id(),
            grading,
        },
    )
}

pub fn left_coact(pres: &AlgebraPresentation, grading: &Grading, x: &AlgebraElement) -> Result<TensorElement> {
    pres.check(x)?;
    tensor_apply(
        &TensorElement::from_algebra(x),
        0,
        &LeftCoaction {
            presentation: pres.id(),
            grading,
        },
    )
}

/// Basis of the degree-0 part of `pres` up to total degree `max_degree`.
pub fn coinvariants_basis(pres: &AlgebraPresentation, grading: &Grading, max_degree: u32) -> Vec<AlgebraElement> {
    pres.normal_monomials(max_degree)
        .into_iter()
        .filter(|m| grading.degree(m) == 0)
        .map(|m| pres.monomial(&m))
        .collect()
}

/// Checks that the right grading is a comodule algebra structure (counit,
/// coassociativity, multiplicativity on monomial pairs up to `degree_bound`)
/// and, when both gradings are present, the bicomodule conditions.
pub fn check_bicomodule(pres: &AlgebraPresentation, spec: &CoactionSpec, degree_bound: u32) -> Vec<CheckResult> {
    const SUITE: &str = "algebra";
    let mut out = Vec::new();
    let monos = pres.normal_monomials(degree_bound);
    let id = pres.id();
    for (side, grading) in [("right", &spec.right), ("left", &spec.left)] {
        let Some(g) = grading else { continue };
        let coact = |x: &AlgebraElement| -> TensorElement {
            let t = TensorElement::from_algebra(x);
            if side == "right" {
                tensor_apply(
                    &t,
                    0,
                    &RightCoaction {
                        presentation: id,
                        grading: g,
                    },
                )
                .unwrap()
            } else {
                tensor_apply(
                    &t,
                    0,
                    &LeftCoaction {
                        presentation: id,
                        grading: g,
                    },
                )
                .unwrap()
            }
        };
        let cslot = if side == "right" { 1 } else { 0 };

        let mut first = None;
        for m in &monos {
            let x = pres.monomial(m);
            let rho = coact(&x);
            let counit = tensor_apply(&rho, cslot, &Counit).unwrap();
            if counit != TensorElement::from_algebra(&x) {
                first = Some(format!("counit law fails at {}", pres.render_monomial(m)));
                break;
            }
            let lhs = if side == "right" {
                tensor_apply(
                    &rho,
                    0,
                    &RightCoaction {
                        presentation: id,
                        grading: g,
                    },
                )
                .unwrap()
            } else {
                tensor_apply(
                    &rho,
                    1,
                    &LeftCoaction {
                        presentation: id,
                        grading: g,
                    },
                )
                .unwrap()
            };
            let rhs = tensor_apply(&rho, cslot, &Comultiply).unwrap();
            if lhs != rhs {
                first = Some(format!("coassociativity fails at {}", pres.render_monomial(m)));
                break;
            }
        }
        out.push(CheckResult::new(
            SUITE,
            format!("{side}-coaction-comodule"),
            "counit/coassociativity",
            first.is_none(),
            first.unwrap_or_else(|| format!("{} monomials", monos.len())),
        ));

        let unit = coact(&pres.one());
        let expected_unit = if side == "right" {
            TensorElement::from_algebra(&pres.one()).tensor(&TensorElement::grouplike(0))
        } else {
            TensorElement::grouplike(0).tensor(&TensorElement::from_algebra(&pres.one()))
        };
        out.push(CheckResult::new(
            SUITE,
            format!("{side}-coaction-unit"),
            "unitcon",
            unit == expected_unit,
            format!("coaction of 1 is {}", unit.render(&[pres])),
        ));

        let mut first = None;
        let mut pairs = 0usize;
        'outer: for m1 in &monos {
            for m2 in &monos {
                if m1.degree() + m2.degree() > degree_bound {
                    continue;
                }
                pairs += 1;
                let (x, y) = (pres.monomial(m1), pres.monomial(m2));
                let lhs = coact(&pres.mul_unchecked(&x, &y));
                let rhs = tensor_mul(&[pres], &coact(&x), &coact(&y)).unwrap();
                if lhs != rhs {
                    first = Some(format!(
                        "coaction not multiplicative on ({}) ({})",
                        pres.render_monomial(m1),
                        pres.render_monomial(m2)
                    ));
                    break 'outer;
                }
            }
        }
        out.push(CheckResult::new(
            SUITE,
            format!("{side}-coaction-multiplicative"),
            "algcot",
            first.is_none(),
            first.unwrap_or_else(|| format!("{pairs} monomial pairs")),
        ));
    }

    if let (Some(r), Some(l)) = (&spec.right, &spec.left) {
        // (H ⊗ ρ^C) ∘ ᴴρ = (ᴴρ ⊗ C) ∘ ρ^C
        let mut first = None;
        let mut samples = vec![pres.one()];
        samples.extend((0..pres.arity()).map(|i| pres.generator_at(i)));
        samples.extend(monos.iter().map(|m| pres.monomial(m)));
        for x in &samples {
            let t = TensorElement::from_algebra(x);
            let lhs = tensor_apply(
                &tensor_apply(
                    &t,
                    0,
                    &LeftCoaction {
                        presentation: id,
                        grading: l,
                    },
                )
                .unwrap(),
                1,
                &RightCoaction {
                    presentation: id,
                    grading: r,
                },
            )
            .unwrap();
            let rhs = tensor_apply(
                &tensor_apply(
                    &t,
                    0,
                    &RightCoaction {
                        presentation: id,
                        grading: r,
                    },
                )
                .unwrap(),
                0,
                &LeftCoaction {
                    presentation: id,
                    grading: l,
                },
            )
            .unwrap();
            if lhs != rhs {
                first = Some(format!("coactions do not commute on {}", pres.render(x)));
                break;
            }
        }
        out.push(CheckResult::new(
            SUITE,
            "bicomodule-commute",
            "hcent",
            first.is_none(),
            first.unwrap_or_else(|| format!("{} elements", samples.len())),
        ));
    }
    out
}
