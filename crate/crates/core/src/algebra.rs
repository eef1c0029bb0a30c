//! Presented λ-commutation *-algebras and their normal forms.
//!
//! A presentation fixes an ordered list of generators `g_0 < g_1 < ...`,
//! commutation factors `g_i g_j = q_ij g_j g_i` with `q_ij` a signed unit
//! monomial in `L, M`, a star pairing, and oriented reduction rules
//! `word -> element`. Elements are stored as linear combinations of sorted
//! monomials `g_0^{e_0} g_1^{e_1} ...` that contain no reduction left side.
//!
//! Normal forms are computed in the skew polynomial ring: a word is first
//! sorted (collecting one commutation factor per inverted pair of letters)
//! and reductions are then applied to sorted monomials. Whether the result
//! is independent of the rewriting order is certified separately, up to a
//! degree bound, by [`AlgebraPresentation::check_local_confluence`].

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::scalar::{LaurentScalar, UnitMonomial};

/// Exponent vector of a sorted monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, assuming `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// Concatenation of exponent vectors (the monomial `m ⊗ n` of a tensor
    /// product presentation).
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn split_at(&self, at: usize) -> (Monomial, Monomial) {
        (
            Monomial(SmallVec::from_slice(&self.0[..at])),
            Monomial(SmallVec::from_slice(&self.0[at..])),
        )
    }

    /// The letters of the sorted word this monomial denotes.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order in which later generators weigh more:
    /// total degree first, then exponents compared from the last generator
    /// down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Identifies a presentation; elements remember where they live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresentationId(pub u64);

type Terms = BTreeMap<Monomial, LaurentScalar>;

/// A normal-form linear combination of monomials of one presentation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pres: PresentationId,
    terms: Terms,
}

impl AlgebraElement {
    pub fn presentation_id(&self) -> PresentationId {
        self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentScalar)> {
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

    pub fn coefficient(&self, m: &Monomial) -> LaurentScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term when the element is a scalar multiple of `1`.
    pub fn as_scalar(&self) -> Option<LaurentScalar> {
        match self.terms.len() {
            0 => Some(LaurentScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, s: &LaurentScalar) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement {
                pres: self.pres,
                terms: Terms::new(),
            };
        }
        AlgebraElement {
            pres: self.pres,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &LaurentScalar) {
        add_to(&mut self.terms, m, c);
    }

    fn combine(&self, other: &AlgebraElement, sign: i64) -> AlgebraElement {
        assert_eq!(
            self.pres, other.pres,
            "cannot combine elements of different presentations"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.scale(sign));
        }
        out
    }
}

fn add_to(terms: &mut Terms, m: Monomial, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
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

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.combine(rhs, 1)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.combine(rhs, -1)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&LaurentScalar::integer(-1))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A linear combination of words.
pub type WordSum<W> = Vec<(LaurentScalar, Vec<W>)>;

type NormalFormCache = RwLock<HashMap<Monomial, Arc<Vec<(Monomial, LaurentScalar)>>>>;

/// An oriented rule `word -> rhs`.
#[derive(Clone, Debug)]
pub struct Reduction {
    word: Vec<usize>,
    rhs_words: WordSum<usize>,
    /// Sorted form of `word`: `word = lhs_factor * x^lhs`.
    lhs: Monomial,
    lhs_factor: UnitMonomial,
    /// `rhs_words` sorted in the skew polynomial ring, not yet reduced.
    rhs: Terms,
}

impl Reduction {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn rhs_words(&self) -> &[(LaurentScalar, Vec<usize>)] {
        &self.rhs_words
    }

    pub fn lhs(&self) -> &Monomial {
        &self.lhs
    }
}

/// Declarative description of a presentation, validated by [`build`].
///
/// [`build`]: PresentationBuilder::build
#[derive(Clone, Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    generators: Vec<String>,
    star_pairs: Vec<(String, String)>,
    commutations: Vec<(String, String, LaurentScalar)>,
    reductions: Vec<(Vec<String>, WordSum<String>)>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn generator(mut self, name: impl Into<String>) -> Self {
        self.generators.push(name.into());
        self
    }

    pub fn generators<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.generators.extend(names.into_iter().map(Into::into));
        self
    }

    /// Declares `x* = y` (and hence `y* = x`).
    pub fn star_pair(mut self, x: impl Into<String>, y: impl Into<String>) -> Self {
        self.star_pairs.push((x.into(), y.into()));
        self
    }

    /// Declares `x y = q y x`.
    pub fn commute(mut self, x: impl Into<String>, y: impl Into<String>, q: LaurentScalar) -> Self {
        self.commutations.push((x.into(), y.into(), q));
        self
    }

    /// Declares the rule `word -> Σ c_k w_k`.
    pub fn reduce<S: AsRef<str>>(mut self, word: &[S], rhs: WordSum<String>) -> Self {
        self.reductions
            .push((word.iter().map(|s| s.as_ref().to_string()).collect(), rhs));
        self
    }

    pub fn build(self) -> Result<AlgebraPresentation> {
        let n = self.generators.len();
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::InvalidPresentation("empty generator name".into()));
            }
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::NameCollision(g.clone()));
            }
        }
        let lookup = |g: &str| -> Result<usize> {
            index
                .get(g)
                .copied()
                .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
        };

        let mut star: Vec<Option<usize>> = vec![None; n];
        for (x, y) in &self.star_pairs {
            let (i, j) = (lookup(x)?, lookup(y)?);
            for (a, b) in [(i, j), (j, i)] {
                match star[a] {
                    Some(prev) if prev != b => {
                        return Err(Error::InvalidPresentation(format!(
                            "star pairing is not an involution at `{}`",
                            self.generators[a]
                        )))
                    }
                    _ => star[a] = Some(b),
                }
            }
        }
        // Unpaired generators are self-adjoint.
        let star: Vec<usize> = star.into_iter().enumerate().map(|(i, s)| s.unwrap_or(i)).collect();

        let mut q: Vec<Vec<Option<UnitMonomial>>> = vec![vec![None; n]; n];
        for (x, y, s) in &self.commutations {
            let (i, j) = (lookup(x)?, lookup(y)?);
            let u = s.as_unit().ok_or_else(|| {
                Error::InvalidPresentation(format!("commutation factor for `{x} {y}` is not a unit monomial: {s}"))
            })?;
            if i == j && !u.is_one() {
                return Err(Error::InvalidPresentation(format!(
                    "a generator must commute with itself (`{x} {x}` = {s})"
                )));
            }
            for (a, b, v) in [(i, j, u), (j, i, u.inverse())] {
                match q[a][b] {
                    Some(prev) if prev != v => {
                        return Err(Error::InvalidPresentation(format!(
                            "inconsistent commutation: q({}, {}) must be the inverse of q({}, {})",
                            self.generators[a], self.generators[b], self.generators[b], self.generators[a]
                        )))
                    }
                    _ => q[a][b] = Some(v),
                }
            }
        }
        let q: Vec<Vec<UnitMonomial>> = q
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or(UnitMonomial::ONE)).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                // (g_i g_j)* = g_j* g_i*, so q(j*, i*) must be conj(q(i, j)).
                if q[star[j]][star[i]] != q[i][j].star() {
                    return Err(Error::InvalidPresentation(format!(
                        "commutation table is not compatible with the star: `{} {}` has factor {} but `{} {}` has {}",
                        self.generators[i],
                        self.generators[j],
                        q[i][j],
                        self.generators[star[j]],
                        self.generators[star[i]],
                        q[star[j]][star[i]]
                    )));
                }
            }
        }

        let mut pres = AlgebraPresentation {
            name: self.name,
            generators: self.generators,
            star,
            q,
            reductions: Vec::new(),
            id: PresentationId(0),
            cache: Default::default(),
        };
        for (word, rhs) in &self.reductions {
            let word = word.iter().map(|g| lookup(g)).collect::<Result<Vec<_>>>()?;
            if word.is_empty() {
                return Err(Error::InvalidPresentation("reduction with an empty left side".into()));
            }
            let rhs_words = rhs
                .iter()
                .map(|(c, w)| Ok((c.clone(), w.iter().map(|g| lookup(g)).collect::<Result<Vec<_>>>()?)))
                .collect::<Result<Vec<_>>>()?;
            pres.push_reduction(word, rhs_words)?;
        }
        pres.id = pres.fingerprint();
        Ok(pres)
    }
}

/// A λ-commutation *-algebra given by generators and relations.
pub struct AlgebraPresentation {
    name: String,
    generators: Vec<String>,
    star: Vec<usize>,
    /// `q[i][j]` with `g_i g_j = q[i][j] g_j g_i`, full matrix.
    q: Vec<Vec<UnitMonomial>>,
    reductions: Vec<Reduction>,
    id: PresentationId,
    /// Normal forms of reducible sorted monomials.
    cache: NormalFormCache,
}

impl Clone for AlgebraPresentation {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            generators: self.generators.clone(),
            star: self.star.clone(),
            q: self.q.clone(),
            reductions: self.reductions.clone(),
            id: self.id,
            cache: Default::default(),
        }
    }
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("reductions", &self.reductions.len())
            .finish()
    }
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl AlgebraPresentation {
    /// The ground ring: no generators, no relations.
    pub fn ground(name: impl Into<String>) -> Self {
        PresentationBuilder::new(name)
            .build()
            .expect("the empty presentation is valid")
    }

    fn push_reduction(&mut self, word: Vec<usize>, rhs_words: WordSum<usize>) -> Result<()> {
        let arity = self.arity();
        let (lhs_factor, lhs) = self.sort_word(&word);
        let mut rhs = Terms::new();
        for (c, w) in &rhs_words {
            let (f, m) = self.sort_word(w);
            if m >= lhs {
                return Err(Error::InvalidPresentation(format!(
                    "reduction `{}` does not decrease: right side contains `{}`",
                    self.render_word(&word),
                    self.render_monomial(&m)
                )));
            }
            add_to(&mut rhs, m, &c.mul_unit(f));
        }
        debug_assert_eq!(lhs.arity(), arity);
        self.reductions.push(Reduction {
            word,
            rhs_words,
            lhs,
            lhs_factor,
            rhs,
        });
        Ok(())
    }

    fn fingerprint(&self) -> PresentationId {
        let mut h = DefaultHasher::new();
        self.name.hash(&mut h);
        self.generators.hash(&mut h);
        self.star.hash(&mut h);
        self.q.hash(&mut h);
        for r in &self.reductions {
            r.word.hash(&mut h);
            r.rhs_words.hash(&mut h);
        }
        PresentationId(h.finish())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn id(&self) -> PresentationId {
        self.id
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn star_index(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn reductions(&self) -> &[Reduction] {
        &self.reductions
    }

    /// `q` with `g_i g_j = q g_j g_i`.
    pub fn commutation(&self, i: usize, j: usize) -> UnitMonomial {
        self.q[i][j]
    }

    pub fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.pres == self.id {
            Ok(())
        } else {
            Err(Error::PresentationMismatch {
                expected: self.name.clone(),
                found: format!("element of presentation {:#x}", x.pres.0),
            })
        }
    }

    fn element(&self, terms: Terms) -> AlgebraElement {
        AlgebraElement { pres: self.id, terms }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.element(Terms::new())
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(LaurentScalar::one())
    }

    pub fn scalar(&self, s: LaurentScalar) -> AlgebraElement {
        let mut t = Terms::new();
        add_to(&mut t, Monomial::one(self.arity()), &s);
        self.element(t)
    }

    pub fn generator(&self, name: &str) -> Result<AlgebraElement> {
        let i = self.generator_index(name)?;
        Ok(self.generator_at(i))
    }

    pub fn generator_at(&self, i: usize) -> AlgebraElement {
        self.monomial(&Monomial::generator(self.arity(), i))
    }

    /// Normal form of a single sorted monomial.
    pub fn monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut t = Terms::new();
        self.reduce_into(&LaurentScalar::one(), m, &mut t);
        self.element(t)
    }

    /// Builds an element from raw terms, normalizing each monomial.
    pub fn from_terms<I>(&self, terms: I) -> AlgebraElement
    where
        I: IntoIterator<Item = (Monomial, LaurentScalar)>,
    {
        let mut t = Terms::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), self.arity(), "monomial arity mismatch");
            self.reduce_into(&c, &m, &mut t);
        }
        self.element(t)
    }

    /// Normal form of `coeff · w_0 w_1 ...` given by generator names.
    pub fn normal_form<S: AsRef<str>>(&self, coeff: LaurentScalar, word: &[S]) -> Result<AlgebraElement> {
        let letters = word
            .iter()
            .map(|g| self.generator_index(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normal_form_indices(&coeff, &letters))
    }

    pub fn normal_form_indices(&self, coeff: &LaurentScalar, word: &[usize]) -> AlgebraElement {
        let mut t = Terms::new();
        self.word_into(coeff, word, &mut t);
        self.element(t)
    }

    fn word_into(&self, coeff: &LaurentScalar, word: &[usize], out: &mut Terms) {
        let (f, m) = self.sort_word(word);
        self.reduce_into(&coeff.mul_unit(f), &m, out);
    }

    /// `word = factor · x^m` in the skew polynomial ring.
    pub fn sort_word(&self, word: &[usize]) -> (UnitMonomial, Monomial) {
        let mut factor = UnitMonomial::ONE;
        let mut m = Monomial::one(self.arity());
        // One commutation factor per inverted pair of letters.
        let mut counts = vec![0u32; self.arity()];
        for &g in word {
            for (h, &k) in counts.iter().enumerate().skip(g + 1) {
                if k > 0 {
                    factor = factor * self.q[h][g].pow(k as i64);
                }
            }
            counts[g] += 1;
            m.0[g] += 1;
        }
        (factor, m)
    }

    /// `x^e x^f = factor · x^{e+f}` in the skew polynomial ring.
    pub fn monomial_product(&self, e: &Monomial, f: &Monomial) -> (UnitMonomial, Monomial) {
        let mut factor = UnitMonomial::ONE;
        for (i, &ei) in e.0.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            for (j, &fj) in f.0.iter().enumerate().take(i) {
                if fj != 0 {
                    factor = factor * self.q[i][j].pow(ei as i64 * fj as i64);
                }
            }
        }
        (factor, e.mul(f))
    }

    fn find_rule(&self, m: &Monomial) -> Option<&Reduction> {
        self.reductions.iter().find(|r| r.lhs.divides(m))
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.find_rule(m).is_none()
    }

    fn reduce_into(&self, coeff: &LaurentScalar, m: &Monomial, out: &mut Terms) {
        if coeff.is_zero() {
            return;
        }
        if self.is_normal(m) {
            add_to(out, m.clone(), coeff);
            return;
        }
        for (mm, c) in self.nf_reducible(m).iter() {
            add_to(out, mm.clone(), &(coeff * c));
        }
    }

    fn nf_reducible(&self, m: &Monomial) -> Arc<Vec<(Monomial, LaurentScalar)>> {
        if let Some(hit) = self.cache.read().unwrap().get(m) {
            return hit.clone();
        }
        let rule = self.find_rule(m).expect("monomial is reducible");
        let rest = m.quotient(&rule.lhs);
        // x^m = c^{-1} x^lhs x^rest and word = f x^lhs, so x^m = (c f)^{-1} rhs x^rest.
        let (c, _) = self.monomial_product(&rule.lhs, &rest);
        let k = (c * rule.lhs_factor).inverse();
        let mut out = Terms::new();
        for (t, s) in &rule.rhs {
            let (c2, mm) = self.monomial_product(t, &rest);
            self.reduce_into(&s.mul_unit(k * c2), &mm, &mut out);
        }
        let v: Arc<Vec<_>> = Arc::new(out.into_iter().collect());
        self.cache.write().unwrap().insert(m.clone(), v.clone());
        v
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut t = Terms::new();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let (f, m) = self.monomial_product(m1, m2);
                self.reduce_into(&(c1 * c2).mul_unit(f), &m, &mut t);
            }
        }
        self.element(t)
    }

    /// Product of a list of elements, left to right.
    pub fn product<'a, I>(&self, factors: I) -> Result<AlgebraElement>
    where
        I: IntoIterator<Item = &'a AlgebraElement>,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &AlgebraElement, k: u32) -> Result<AlgebraElement> {
        self.check(x)?;
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// Conjugate-linear anti-automorphism: reverses monomials, stars letters
    /// and coefficients, then re-normalizes.
    pub fn star(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        let mut t = Terms::new();
        for (m, c) in &x.terms {
            let word: Vec<usize> = m.word().into_iter().rev().map(|g| self.star[g]).collect();
            self.word_into(&c.star(), &word, &mut t);
        }
        Ok(self.element(t))
    }

    pub fn equal(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x == y)
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// All irreducible monomials of total degree at most `max_degree`, in
    /// increasing monomial order.
    pub fn normal_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.arity()];
        self.enumerate_exponents(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate_exponents(&self, i: usize, budget: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            let m = Monomial::from_exponents(cur);
            if self.is_normal(&m) {
                out.push(m);
            }
            return;
        }
        for e in 0..=budget {
            cur[i] = e as u16;
            self.enumerate_exponents(i + 1, budget - e, cur, out);
        }
        cur[i] = 0;
    }

    /// Tensor product presentation: generators of `other` follow those of
    /// `self`, generators from different factors commute, relations are
    /// inherited.
    pub fn tensor(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation> {
        if let Some(g) = other.generators.iter().find(|g| self.generators.contains(g)) {
            return Err(Error::NameCollision(g.clone()));
        }
        if other.arity() == 0 && !self.name.is_empty() {
            return Ok(self.clone());
        }
        if self.arity() == 0 {
            return Ok(other.clone());
        }
        let off = self.arity();
        let n = off + other.arity();
        let mut q = vec![vec![UnitMonomial::ONE; n]; n];
        for (row, src) in q.iter_mut().zip(&self.q) {
            row[..off].copy_from_slice(src);
        }
        for i in 0..other.arity() {
            for j in 0..other.arity() {
                q[off + i][off + j] = other.q[i][j];
            }
        }
        let mut pres = AlgebraPresentation {
            name: format!("{}(x){}", self.name, other.name),
            generators: self.generators.iter().chain(other.generators.iter()).cloned().collect(),
            star: self
                .star
                .iter()
                .copied()
                .chain(other.star.iter().map(|s| s + off))
                .collect(),
            q,
            reductions: Vec::new(),
            id: PresentationId(0),
            cache: Default::default(),
        };
        for r in &self.reductions {
            pres.push_reduction(r.word.clone(), r.rhs_words.clone())?;
        }
        for r in &other.reductions {
            let shift = |w: &Vec<usize>| w.iter().map(|g| g + off).collect::<Vec<_>>();
            let rhs = r.rhs_words.iter().map(|(c, w)| (c.clone(), shift(w))).collect();
            pres.push_reduction(shift(&r.word), rhs)?;
        }
        pres.id = pres.fingerprint();
        Ok(pres)
    }

    /// Same presentation with renamed generators.
    pub fn renamed<F: Fn(&str) -> String>(&self, name: impl Into<String>, f: F) -> Result<AlgebraPresentation> {
        let generators: Vec<String> = self.generators.iter().map(|g| f(g)).collect();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::NameCollision(g.clone()));
            }
        }
        let mut pres = self.clone();
        pres.name = name.into();
        pres.generators = generators;
        pres.id = pres.fingerprint();
        Ok(pres)
    }

    /// Maps an element of `from` into `self` along a generator-index map.
    /// Only valid when the map is an algebra embedding (e.g. a tensor slot).
    pub fn embed_from(&self, from: &AlgebraPresentation, x: &AlgebraElement, offset: usize) -> Result<AlgebraElement> {
        from.check(x)?;
        let mut t = Terms::new();
        for (m, c) in &x.terms {
            let mut e = Monomial::one(self.arity());
            for (i, &k) in m.0.iter().enumerate() {
                e.0[offset + i] = k;
            }
            self.reduce_into(c, &e, &mut t);
        }
        Ok(self.element(t))
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&g| self.generators[g].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.generators[i].clone()
                    } else {
                        format!("{}^{}", self.generators[i], e)
                    }
                })
                .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Canonical text form, terms in increasing monomial order, e.g.
    /// `1 - a a'` or `L^-1 a b`.
    pub fn render(&self, x: &AlgebraElement) -> String {
        render_terms(x.terms.iter().map(|(m, c)| (self.render_monomial(m), m.is_one(), c)))
    }

    /// One-step rewrites of a word: every adjacent out-of-order pair and
    /// every occurrence of a reduction's left side.
    pub fn rewrite_steps(&self, word: &[usize]) -> Vec<(String, WordSum<usize>)> {
        let mut steps = Vec::new();
        for p in 0..word.len().saturating_sub(1) {
            let (x, y) = (word[p], word[p + 1]);
            if x > y {
                let mut w = word.to_vec();
                w.swap(p, p + 1);
                steps.push((format!("swap@{p}"), vec![(self.q[x][y].to_scalar(), w)]));
            }
        }
        for (ri, r) in self.reductions.iter().enumerate() {
            let k = r.word.len();
            if k > word.len() {
                continue;
            }
            for p in 0..=word.len() - k {
                if word[p..p + k] == r.word[..] {
                    let succ = r
                        .rhs_words
                        .iter()
                        .map(|(c, w)| {
                            let mut v = word[..p].to_vec();
                            v.extend_from_slice(w);
                            v.extend_from_slice(&word[p + k..]);
                            (c.clone(), v)
                        })
                        .collect();
                    steps.push((format!("rule{ri}@{p}"), succ));
                }
            }
        }
        steps
    }

    /// Certifies, for every word of length at most `degree_bound`, that each
    /// single rewrite step preserves the computed normal form. By induction
    /// on rewrite sequences this means every complete rewriting of such a
    /// word ends at the same normal form.
    pub fn check_local_confluence(&self, degree_bound: u32) -> ConfluenceReport {
        self.check_local_confluence_with(degree_bound, Strategy::default())
    }

    pub fn check_local_confluence_with(&self, degree_bound: u32, strategy: Strategy) -> ConfluenceReport {
        let n = self.arity() as u64;
        let mut words_checked = 0u64;
        let mut divergences = Vec::new();
        for len in 0..=degree_bound {
            let count = n.checked_pow(len).expect("word count overflow");
            if n == 0 && len > 0 {
                break;
            }
            words_checked += count;
            let found = exec::filter_map_range(strategy, 0..count, |idx| {
                let word = decode_word(idx, n, len);
                self.first_divergence(&word)
            });
            divergences.extend(found);
        }
        ConfluenceReport {
            degree_bound,
            words_checked,
            divergences,
        }
    }

    fn first_divergence(&self, word: &[usize]) -> Option<Divergence> {
        let expected = self.normal_form_indices(&LaurentScalar::one(), word);
        for (step, succ) in self.rewrite_steps(word) {
            let mut t = Terms::new();
            for (c, w) in &succ {
                self.word_into(c, w, &mut t);
            }
            let found = self.element(t);
            if found != expected {
                return Some(Divergence {
                    word: self.render_word(word),
                    step,
                    expected: self.render(&expected),
                    found: self.render(&found),
                });
            }
        }
        None
    }
}

fn decode_word(mut idx: u64, n: u64, len: u32) -> Vec<usize> {
    let mut w = vec![0usize; len as usize];
    for slot in w.iter_mut().rev() {
        *slot = (idx % n) as usize;
        idx /= n;
    }
    w
}

/// Joins `(monomial text, is_unit_monomial, coefficient)` triples.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, bool, &'a LaurentScalar)>,
{
    let mut out = String::new();
    for (mono, unit, c) in terms {
        let (negative, body) = match c.terms() {
            [(e, k)] => {
                let mag = LaurentScalar::monomial(k.abs(), *e);
                let body = if unit {
                    mag.to_string()
                } else if mag.is_one() {
                    mono
                } else {
                    format!("{mag} {mono}")
                };
                (*k < 0, body)
            }
            _ => (
                false,
                if unit {
                    format!("({c})")
                } else {
                    format!("({c}) {mono}")
                },
            ),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A word whose rewrite choices reached different normal forms.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Divergence {
    pub word: String,
    pub step: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ConfluenceReport {
    pub degree_bound: u32,
    pub words_checked: u64,
    pub divergences: Vec<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergences.is_empty()
    }
}
