//! Exact coefficients: integer Laurent polynomials in two unimodular symbols.
//!
//! `L` stands for the deformation parameter of the first sphere and `M` for
//! the second one. Both are treated as formal symbols with `|L| = |M| = 1`,
//! so complex conjugation acts by inverting every exponent.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

/// Exponents of `(L, M)`.
pub type Exponents = [i32; 2];

/// A sparse integer Laurent polynomial in `L` and `M`.
///
/// Terms are kept sorted by exponent vector with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: Vec<(Exponents, i64)>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(c: i64) -> Self {
        Self::monomial(c, [0, 0])
    }

    pub fn monomial(c: i64, exps: Exponents) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(exps, c)] }
        }
    }

    /// The symbol `L`.
    pub fn lambda() -> Self {
        Self::monomial(1, [1, 0])
    }

    /// The symbol `M`.
    pub fn lambda_prime() -> Self {
        Self::monomial(1, [0, 1])
    }

    /// Builds a canonical scalar from arbitrary (possibly repeated, possibly
    /// zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, i64)>>(terms: I) -> Self {
        let mut v: Vec<(Exponents, i64)> = terms.into_iter().collect();
        v.sort_by_key(|x| x.0);
        let mut out: Vec<(Exponents, i64)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Exponents, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == ([0, 0], 1)
    }

    /// Returns the value as a signed unit monomial `±L^a M^b`, if it is one.
    pub fn as_unit(&self) -> Option<UnitMonomial> {
        match self.terms.as_slice() {
            [(e, c)] if *c == 1 || *c == -1 => Some(UnitMonomial {
                negative: *c < 0,
                exps: *e,
            }),
            _ => None,
        }
    }

    /// The integer value of a constant scalar.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [([0, 0], c)] => Some(*c),
            _ => None,
        }
    }

    /// Complex conjugation: every exponent is negated.
    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| ([-e[0], -e[1]], *c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul_unit(&self, u: UnitMonomial) -> Self {
        let sign = if u.negative { -1 } else { 1 };
        // Shifting every exponent by the same vector preserves the sort order.
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + u.exps[0], e[1] + u.exps[1]], c * sign))
                .collect(),
        }
    }

    /// Integer power; negative powers are only defined for unit monomials.
    pub fn pow(&self, k: i32) -> Option<Self> {
        if k < 0 {
            return self.as_unit().map(|u| u.pow(k as i64).to_scalar());
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Some(acc)
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        // Merge of two sorted runs.
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1 + b[j].1;
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentScalar { terms: out }
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: LaurentScalar) -> LaurentScalar {
        &self + &rhs
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        *self = &*self + rhs;
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if let Some(u) = rhs.as_unit() {
            return self.mul_unit(u);
        }
        if let Some(u) = self.as_unit() {
            return rhs.mul_unit(u);
        }
        LaurentScalar::from_terms(self.terms.iter().flat_map(|(e1, c1)| {
            rhs.terms
                .iter()
                .map(move |(e2, c2)| ([e1[0] + e2[0], e1[1] + e2[1]], c1 * c2))
        }))
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::integer(c)
    }
}

impl From<UnitMonomial> for LaurentScalar {
    fn from(u: UnitMonomial) -> Self {
        u.to_scalar()
    }
}

fn write_symbol(f: &mut fmt::Formatter<'_>, sym: &str, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "{sym}")
    } else {
        write!(f, "{sym}^{e}")
    }
}

/// Writes `|c|*L^a*M^b`, omitting unit factors.
fn write_magnitude(f: &mut fmt::Formatter<'_>, exps: Exponents, c: i64) -> fmt::Result {
    let mag = c.unsigned_abs();
    let mut first = true;
    if mag != 1 || exps == [0, 0] {
        write!(f, "{mag}")?;
        first = false;
    }
    for (sym, e) in [("L", exps[0]), ("M", exps[1])] {
        if e != 0 {
            if !first {
                write!(f, "*")?;
            }
            write_symbol(f, sym, e)?;
            first = false;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentScalar {
    /// Highest exponents first, e.g. `L^2 - 1` or `2*L^-1*M^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            match (i, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_magnitude(f, *e, *c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A signed unit monomial `±L^a M^b`; the commutation factors of every
/// presentation are of this form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitMonomial {
    pub negative: bool,
    pub exps: Exponents,
}

impl UnitMonomial {
    pub const ONE: UnitMonomial = UnitMonomial {
        negative: false,
        exps: [0, 0],
    };

    pub fn new(negative: bool, exps: Exponents) -> Self {
        Self { negative, exps }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn inverse(self) -> Self {
        Self {
            negative: self.negative,
            exps: [-self.exps[0], -self.exps[1]],
        }
    }

    pub fn pow(self, k: i64) -> Self {
        Self {
            negative: self.negative && k.rem_euclid(2) == 1,
            exps: [(self.exps[0] as i64 * k) as i32, (self.exps[1] as i64 * k) as i32],
        }
    }

    pub fn star(self) -> Self {
        self.inverse()
    }

    pub fn to_scalar(self) -> LaurentScalar {
        LaurentScalar::monomial(if self.negative { -1 } else { 1 }, self.exps)
    }
}

impl Mul for UnitMonomial {
    type Output = UnitMonomial;
    fn mul(self, rhs: UnitMonomial) -> UnitMonomial {
        UnitMonomial {
            negative: self.negative ^ rhs.negative,
            exps: [self.exps[0] + rhs.exps[0], self.exps[1] + rhs.exps[1]],
        }
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> LaurentScalar {
        LaurentScalar::lambda()
    }

    #[test]
    fn additive_identity_inverse_and_scaling() {
        assert_eq!(&l() + &LaurentScalar::zero(), l());
        assert!((&l() + &(-l())).is_zero());
        assert_eq!(&l() + &l(), LaurentScalar::monomial(2, [1, 0]));
    }

    #[test]
    fn products() {
        let lm = &l() * &LaurentScalar::lambda_prime();
        assert_eq!(lm, LaurentScalar::monomial(1, [1, 1]));
        assert!((&l() * &l().star()).is_one());
        // (L + 1)(L - 1) = L^2 - 1
        let one = LaurentScalar::one();
        let p = &(&l() + &one) * &(&l() - &one);
        assert_eq!(p, LaurentScalar::from_terms([([2, 0], 1), ([0, 0], -1)]));
        assert_eq!(p.to_string(), "L^2 - 1");
    }

    #[test]
    fn star_inverts_exponents() {
        assert_eq!(l().star(), LaurentScalar::monomial(1, [-1, 0]));
        assert!(LaurentScalar::one().star().is_one());
        let x = LaurentScalar::from_terms([([2, -1], 3), ([1, 0], -1)]);
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn zero_and_one_tests() {
        assert!((&l() - &l()).is_zero());
        assert!((&l() * &l().star()).is_one());
        assert!(!l().is_one());
    }

    #[test]
    fn rendering() {
        assert_eq!(LaurentScalar::monomial(2, [-1, 3]).to_string(), "2*L^-1*M^3");
        assert_eq!(LaurentScalar::monomial(-1, [0, 1]).to_string(), "-M");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(LaurentScalar::integer(-7).to_string(), "-7");
    }

    #[test]
    fn unit_powers() {
        let q = UnitMonomial::new(true, [1, -2]);
        assert_eq!(q.pow(2), UnitMonomial::new(false, [2, -4]));
        assert_eq!(q.pow(-1), q.inverse());
        assert!((q * q.inverse()).is_one());
        assert_eq!(l().pow(-2).unwrap(), LaurentScalar::monomial(1, [-2, 0]));
        assert!((&l() + &LaurentScalar::one()).pow(-1).is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(3, -1), 0);
    }
}
