//! Expression syntax for scalars, algebra elements and tensors.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power (['*'] power)*
//! power   := atom ['^' ['-'] int] ["'"]*
//! atom    := int | ident | '(' expr ')' | '(' expr ('|' | '⊗') expr ... ')'
//! ```
//!
//! `L` and `M` are the scalar parameters. An identifier with trailing
//! primes names a generator if such a generator exists, otherwise each
//! prime applies the star. In a grouplike slot, `u` is the generator of the
//! circle group. `(x | y)` and `(x ⊗ y)` build tensors; a bare top-level
//! `x ⊗ y` is accepted too.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, AlgebraPresentation};
use crate::comodule::{tensor_mul, GroupCoalgebraElement, SlotKind, TensorElement};
use crate::cotensor::CotensorAlgebra;
use crate::error::{Error, Result};
use crate::scalar::LaurentScalar;

pub type Names = BTreeMap<String, AlgebraElement>;

/// What one tensor slot (or a plain expression) ranges over.
#[derive(Clone, Copy)]
pub enum Space<'a> {
    Algebra {
        pres: &'a AlgebraPresentation,
        names: Option<&'a Names>,
    },
    /// The ambient algebra of a cotensor product, where `(x | y)` embeds
    /// `x ⊗ y`.
    Cotensor {
        cot: &'a CotensorAlgebra,
        names: Option<&'a Names>,
    },
    Group,
}

impl<'a> Space<'a> {
    pub fn algebra(pres: &'a AlgebraPresentation) -> Self {
        Space::Algebra { pres, names: None }
    }

    fn pres(&self) -> Option<&'a AlgebraPresentation> {
        match self {
            Space::Algebra { pres, .. } => Some(pres),
            Space::Cotensor { cot, .. } => Some(cot.ambient()),
            Space::Group => None,
        }
    }

    fn names(&self) -> Option<&'a Names> {
        match self {
            Space::Algebra { names, .. } | Space::Cotensor { names, .. } => *names,
            Space::Group => None,
        }
    }

    fn kind(&self) -> SlotKind {
        match self.pres() {
            Some(p) => SlotKind::Algebra(p.id()),
            None => SlotKind::Group,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Times,
    Caret,
    Prime,
    LParen,
    RParen,
    Sep,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            col += i - start;
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            let v = s.parse().map_err(|_| Error::Parse {
                line: l0,
                column: c0,
                message: format!("integer literal `{s}` is too large"),
            })?;
            push(&mut out, Tok::Int(v));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Times,
            '^' => Tok::Caret,
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' | '⊗' => Tok::Sep,
            _ => {
                return Err(Error::Parse {
                    line: l0,
                    column: c0,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(LaurentScalar),
    Element(AlgebraElement),
    Group(GroupCoalgebraElement),
    Tensor(TensorElement),
}

struct Parser<'s, 'a> {
    toks: Vec<Token>,
    pos: usize,
    spaces: &'s [Space<'a>],
}

impl<'s, 'a> Parser<'s, 'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    /// Index of the closing parenthesis matching the one at `open`, and
    /// whether a separator occurs at its top level.
    fn scan_group(&self, open: usize) -> (usize, bool) {
        let (mut depth, mut sep) = (0usize, false);
        for (i, t) in self.toks.iter().enumerate().skip(open) {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return (i, sep);
                    }
                }
                Tok::Sep if depth == 1 => sep = true,
                Tok::End => break,
                _ => {}
            }
        }
        (self.toks.len() - 1, sep)
    }

    fn top_level_sep(&self) -> bool {
        let mut depth = 0i32;
        for t in &self.toks[self.pos..] {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => depth -= 1,
                Tok::Sep if depth == 0 => return true,
                _ => {}
            }
        }
        false
    }

    /// `slot` is the space identifiers resolve in; `None` at tensor level.
    fn expr(&mut self, slot: Option<usize>) -> Result<Value> {
        let mut neg = false;
        match self.peek() {
            Tok::Minus => {
                neg = true;
                self.pos += 1;
            }
            Tok::Plus => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term(slot)?;
        if neg {
            acc = self.scale(acc, &LaurentScalar::integer(-1));
        }
        loop {
            let sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term(slot)?;
            let rhs = self.scale(rhs, &LaurentScalar::integer(sign));
            acc = self.add(acc, rhs, slot)?;
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::LParen)
    }

    fn term(&mut self, slot: Option<usize>) -> Result<Value> {
        let mut acc = self.power(slot)?;
        loop {
            if *self.peek() == Tok::Times {
                self.pos += 1;
            } else if !self.starts_atom() {
                return Ok(acc);
            }
            let rhs = self.power(slot)?;
            acc = self.mul(acc, rhs, slot)?;
        }
    }

    fn power(&mut self, slot: Option<usize>) -> Result<Value> {
        let mut v = self.atom(slot)?;
        loop {
            match self.peek() {
                Tok::Caret => {
                    self.pos += 1;
                    let neg = if *self.peek() == Tok::Minus {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let Tok::Int(k) = *self.peek() else {
                        return self.err("expected an integer exponent");
                    };
                    self.pos += 1;
                    v = self.pow(v, if neg { -k } else { k }, slot)?;
                }
                Tok::Prime => {
                    self.pos += 1;
                    v = self.star(v, slot)?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn atom(&mut self, slot: Option<usize>) -> Result<Value> {
        match self.peek().clone() {
            Tok::Int(k) => {
                self.pos += 1;
                Ok(Value::Scalar(LaurentScalar::integer(k)))
            }
            Tok::Ident(name) => {
                let v = self.ident(&name, slot)?;
                self.pos += 1;
                Ok(v)
            }
            Tok::LParen => {
                let (close, sep) = self.scan_group(self.pos);
                self.pos += 1;
                let v = if sep { self.tuple(slot)? } else { self.expr(slot)? };
                if self.pos != close {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::End => self.err("unexpected end of expression"),
            t => self.err(format!("unexpected token {t:?}")),
        }
    }

    /// `x | y | ...` inside parentheses, stopping before `)`.
    fn tuple(&mut self, slot: Option<usize>) -> Result<Value> {
        let mut parts = Vec::new();
        match slot.map(|s| self.spaces[s]) {
            Some(Space::Cotensor { cot, .. }) => {
                let a = Space::algebra(cot.a());
                let p = Space::algebra(cot.p());
                let mut sub = Parser {
                    toks: self.toks.clone(),
                    pos: self.pos,
                    spaces: &[a, p],
                };
                let t = sub.tuple_parts(&mut parts)?;
                self.pos = sub.pos;
                let joined = cot.join_tensor(&t).map_err(|e| self.wrap(e))?;
                return Ok(Value::Element(joined));
            }
            Some(_) => return self.err("tensor syntax is not allowed inside a single algebra"),
            None => {}
        }
        let t = self.tuple_parts(&mut parts)?;
        Ok(Value::Tensor(t))
    }

    fn tuple_parts(&mut self, parts: &mut Vec<Value>) -> Result<TensorElement> {
        loop {
            let i = parts.len();
            if i >= self.spaces.len() {
                return self.err(format!("too many tensor slots (expected {})", self.spaces.len()));
            }
            parts.push(self.expr(Some(i))?);
            if *self.peek() == Tok::Sep {
                self.pos += 1;
            } else {
                break;
            }
        }
        if parts.len() != self.spaces.len() {
            return self.err(format!(
                "expected {} tensor slots, found {}",
                self.spaces.len(),
                parts.len()
            ));
        }
        let mut t = TensorElement::scalar(LaurentScalar::one());
        for (i, v) in parts.drain(..).enumerate() {
            t = t.tensor(&self.slot_tensor(v, i)?);
        }
        Ok(t)
    }

    fn slot_tensor(&self, v: Value, slot: usize) -> Result<TensorElement> {
        Ok(match (v, self.spaces[slot]) {
            (Value::Scalar(s), Space::Group) => GroupCoalgebraElement::from_terms([(0, s)]).to_tensor(),
            (Value::Scalar(s), sp) => TensorElement::from_algebra(&sp.pres().unwrap().scalar(s)),
            (Value::Element(x), _) => TensorElement::from_algebra(&x),
            (Value::Group(g), _) => g.to_tensor(),
            (Value::Tensor(_), _) => return self.err("nested tensors are not supported"),
        })
    }

    fn wrap(&self, e: Error) -> Error {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        match e {
            Error::Parse { .. } | Error::UnknownGenerator(_) => e,
            other => Error::Parse {
                line: t.line,
                column: t.column,
                message: other.to_string(),
            },
        }
    }

    fn ident(&self, name: &str, slot: Option<usize>) -> Result<Value> {
        let bare = name.trim_end_matches('\'');
        let scalar = match bare {
            "L" => Some(LaurentScalar::lambda()),
            "M" => Some(LaurentScalar::lambda_prime()),
            _ => None,
        };
        if let Some(s) = scalar {
            return self.stars(Value::Scalar(s), name.len() - bare.len(), slot);
        }
        let Some(s) = slot else {
            return self.err(format!("`{name}` must appear inside a tensor slot"));
        };
        let space = self.spaces[s];
        if let Space::Group = space {
            let base = name.trim_end_matches('\'');
            if base != "u" {
                return self.err(format!("unknown grouplike `{name}`"));
            }
            let primes = (name.len() - base.len()) as i64;
            return Ok(Value::Group(GroupCoalgebraElement::grouplike(if primes % 2 == 0 {
                1
            } else {
                -1
            })));
        }
        let pres = space.pres().unwrap();
        // Longest prefix that names something; remaining primes are stars.
        let mut base = name;
        let mut stars = 0;
        loop {
            if let Some(x) = space.names().and_then(|n| n.get(base)) {
                return self.stars(Value::Element(x.clone()), stars, slot);
            }
            if let Ok(i) = pres.generator_index(base) {
                return self.stars(Value::Element(pres.generator_at(i)), stars, slot);
            }
            match base.strip_suffix('\'') {
                Some(b) => {
                    base = b;
                    stars += 1;
                }
                None => return Err(Error::UnknownGenerator(name.trim_end_matches('\'').to_string())),
            }
        }
    }

    fn stars(&self, mut v: Value, k: usize, slot: Option<usize>) -> Result<Value> {
        for _ in 0..k {
            v = self.star(v, slot)?;
        }
        Ok(v)
    }

    fn algebras(&self) -> Vec<&'a AlgebraPresentation> {
        self.spaces.iter().filter_map(|s| s.pres()).collect()
    }

    fn scale(&self, v: Value, s: &LaurentScalar) -> Value {
        match v {
            Value::Scalar(x) => Value::Scalar(&x * s),
            Value::Element(x) => Value::Element(x.scale(s)),
            Value::Group(g) => Value::Group(GroupCoalgebraElement::from_terms(g.terms().map(|(n, c)| (n, c * s)))),
            Value::Tensor(t) => Value::Tensor(t.scale(s)),
        }
    }

    /// Promotes a scalar into the value space of `slot`.
    fn promote(&self, s: LaurentScalar, slot: Option<usize>) -> Result<Value> {
        match slot.map(|i| self.spaces[i]) {
            Some(Space::Group) => Ok(Value::Group(GroupCoalgebraElement::from_terms([(0, s)]))),
            Some(sp) => Ok(Value::Element(sp.pres().unwrap().scalar(s))),
            None => {
                let mut t = TensorElement::scalar(s);
                for sp in self.spaces {
                    t = t.tensor(&match sp {
                        Space::Group => TensorElement::grouplike(0),
                        sp => TensorElement::from_algebra(&sp.pres().unwrap().one()),
                    });
                }
                Ok(Value::Tensor(t))
            }
        }
    }

    fn add(&self, x: Value, y: Value, slot: Option<usize>) -> Result<Value> {
        Ok(match (x, y) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a + &b),
            (Value::Scalar(s), other) | (other, Value::Scalar(s)) => {
                let p = self.promote(s, slot)?;
                return self.add(p, other, slot);
            }
            (Value::Element(a), Value::Element(b)) => Value::Element(&a + &b),
            (Value::Group(a), Value::Group(b)) => Value::Group(&a + &b),
            (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(a.try_add(&b).map_err(|e| self.wrap(e))?),
            _ => return self.err("cannot add values of different kinds"),
        })
    }

    fn mul(&self, x: Value, y: Value, slot: Option<usize>) -> Result<Value> {
        Ok(match (x, y) {
            (Value::Scalar(a), v) | (v, Value::Scalar(a)) => self.scale(v, &a),
            (Value::Element(a), Value::Element(b)) => {
                let pres = self.spaces[slot.unwrap()].pres().unwrap();
                Value::Element(pres.mul(&a, &b).map_err(|e| self.wrap(e))?)
            }
            (Value::Group(a), Value::Group(b)) => Value::Group(GroupCoalgebraElement::from_terms(
                a.terms()
                    .flat_map(|(m, c)| b.terms().map(move |(n, d)| (m + n, c * d)))
                    .collect::<Vec<_>>(),
            )),
            (Value::Tensor(a), Value::Tensor(b)) => {
                Value::Tensor(tensor_mul(&self.algebras(), &a, &b).map_err(|e| self.wrap(e))?)
            }
            _ => return self.err("cannot multiply values of different kinds"),
        })
    }

    fn pow(&self, v: Value, k: i64, slot: Option<usize>) -> Result<Value> {
        if let Value::Scalar(s) = &v {
            return match s.pow(k as i32) {
                Some(p) => Ok(Value::Scalar(p)),
                None => self.err("only unit scalars have negative powers"),
            };
        }
        if let Value::Group(g) = &v {
            if let [(n, c)] = g.terms().collect::<Vec<_>>()[..] {
                if c.is_one() {
                    return Ok(Value::Group(GroupCoalgebraElement::grouplike(n * k)));
                }
            }
        }
        if k < 0 {
            return self.err("negative powers are only defined for unit scalars and grouplikes");
        }
        let mut acc = self.promote(LaurentScalar::one(), slot)?;
        for _ in 0..k {
            acc = self.mul(acc, v.clone(), slot)?;
        }
        Ok(acc)
    }

    fn star(&self, v: Value, slot: Option<usize>) -> Result<Value> {
        Ok(match v {
            Value::Scalar(s) => Value::Scalar(s.star()),
            Value::Element(x) => {
                let pres = self.spaces[slot.unwrap()].pres().unwrap();
                Value::Element(pres.star(&x).map_err(|e| self.wrap(e))?)
            }
            Value::Group(g) => Value::Group(GroupCoalgebraElement::from_terms(
                g.antipode().terms().map(|(n, c)| (n, c.star())).collect::<Vec<_>>(),
            )),
            Value::Tensor(_) => return self.err("the star of a tensor is not defined here"),
        })
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn parse_value(spaces: &[Space], slot: Option<usize>, text: &str) -> Result<Value> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, spaces };
    if toks_empty(&p.toks) {
        return p.err("empty expression");
    }
    let v = if slot.is_none() && p.top_level_sep() {
        let mut parts = Vec::new();
        Value::Tensor(p.tuple_parts(&mut parts)?)
    } else {
        p.expr(slot)?
    };
    p.finish()?;
    Ok(v)
}

fn toks_empty(toks: &[Token]) -> bool {
    toks.len() == 1
}

pub fn parse_scalar(text: &str) -> Result<LaurentScalar> {
    match parse_value(&[], None, text)? {
        Value::Scalar(s) => Ok(s),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "not a scalar".into(),
        }),
    }
}

/// Parses and normal-forms an element of a single algebra.
pub fn parse_element(space: Space, text: &str) -> Result<AlgebraElement> {
    let spaces = [space];
    match parse_value(&spaces, Some(0), text)? {
        Value::Element(x) => Ok(x),
        Value::Scalar(s) => Ok(space.pres().expect("algebra space").scalar(s)),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected an algebra element".into(),
        }),
    }
}

/// Parses a tensor whose slots range over `spaces`.
pub fn parse_tensor(spaces: &[Space], text: &str) -> Result<TensorElement> {
    let t = match parse_value(spaces, None, text)? {
        Value::Tensor(t) => t,
        Value::Scalar(s) if spaces.is_empty() => TensorElement::scalar(s),
        _ => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "expected a tensor".into(),
            })
        }
    };
    let shape: Vec<SlotKind> = spaces.iter().map(|s| s.kind()).collect();
    t.expect_shape(&shape)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::matsumoto;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("L^2 - 1").unwrap().to_string(), "L^2 - 1");
        assert_eq!(parse_scalar("2*L^-1*M^3").unwrap().to_string(), "2*L^-1*M^3");
        assert_eq!(parse_scalar("-(L + 1)(L - 1)").unwrap().to_string(), "-L^2 + 1");
        assert_eq!(parse_scalar("L'").unwrap(), LaurentScalar::lambda().star());
        assert!(parse_scalar("(L + 1)^-1").is_err());
    }

    #[test]
    fn elements() {
        let p = matsumoto("A", 0);
        let sp = Space::algebra(&p);
        assert_eq!(p.render(&parse_element(sp, "b a").unwrap()), "L^-1 a b");
        assert_eq!(p.render(&parse_element(sp, "b b'").unwrap()), "1 - a a'");
        assert_eq!(p.render(&parse_element(sp, "L^2 a'^3").unwrap()), "L^2 a'^3");
        assert_eq!(p.render(&parse_element(sp, "1").unwrap()), "1");
        assert_eq!(
            parse_element(sp, "(a b)'").unwrap(),
            p.star(&parse_element(sp, "a b").unwrap()).unwrap()
        );
        assert_eq!(parse_element(sp, "a''").unwrap(), p.generator("a").unwrap());
        assert!(matches!(parse_element(sp, "c"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_element(sp, "a +"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_element(sp, "a # b"),
            Err(Error::Parse { line: 1, column: 3, .. })
        ));
    }

    #[test]
    fn tensors_round_trip() {
        let p = matsumoto("P", 1);
        let spaces = [Space::algebra(&p), Space::algebra(&p), Space::Group];
        let t = parse_tensor(&spaces, "2 (a | b b' | u^2) - L (a' ⊗ 1 ⊗ u')").unwrap();
        let r = t.render(&[&p]);
        assert_eq!(r, "2 (a ⊗ 1 ⊗ u^2) - 2 (a ⊗ a a' ⊗ u^2) - L (a' ⊗ 1 ⊗ u^-1)");
        assert_eq!(parse_tensor(&spaces, &r).unwrap(), t);
        assert!(parse_tensor(&spaces[..2], "a ⊗ b").is_ok());
        assert!(parse_tensor(&spaces[..2], "(a | b | a)").is_err());
    }
}
