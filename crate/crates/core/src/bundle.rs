//! TOML documents describing presentations, gradings, a cotensor product,
//! connection rules and the identities to verify.
//!
//! ```toml
//! name = "example"
//!
//! [algebra.A]
//! generators = ["a", "a'", "b", "b'"]
//! star = [["a", "a'"], ["b", "b'"]]
//! reductions = ["b b' = 1 - a a'"]
//! right_degree = { a = 1, "a'" = -1, b = 1, "b'" = -1 }
//!
//! [algebra.A.commute]
//! "b a" = "L^-1"          # b a = L^-1 a b
//!
//! [cotensor]
//! left = "A"
//! right = "P"
//! names = [["alpha", "(a | a')"]]
//!
//! [connection.A]
//! rule = "matsumoto"
//! values = { "2" = "(a' | a)" }   # overrides ℓ(u^2)
//!
//! [[identity]]
//! anchor = "rel"
//! lhs = "alpha alpha'"
//! rhs = "alpha' alpha"
//! ```
//!
//! A document without `[algebra.*]` tables but with top-level
//! `generators` is a single presentation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{AlgebraElement, AlgebraPresentation, PresentationBuilder};
use crate::comodule::{CoactionSpec, Grading, TensorElement};
use crate::connection::{matsumoto_connection, ConnectionForm, Rule};
use crate::cotensor::CotensorAlgebra;
use crate::error::{Error, Result};
use crate::formulas::Example;
use crate::parse::{parse_element, parse_scalar, parse_tensor, Names, Space};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    name: Option<String>,
    #[serde(default)]
    generators: Vec<String>,
    #[serde(default)]
    star: Vec<[String; 2]>,
    #[serde(default)]
    commute: BTreeMap<String, Spanned<String>>,
    #[serde(default)]
    reductions: Vec<Spanned<String>>,
    right_degree: Option<BTreeMap<String, i64>>,
    left_degree: Option<BTreeMap<String, i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCotensor {
    left: String,
    right: String,
    closed_form: Option<String>,
    #[serde(default)]
    names: Vec<(String, Spanned<String>)>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConnection {
    rule: Option<String>,
    #[serde(default)]
    values: BTreeMap<String, Spanned<String>>,
}

fn default_identity_anchor() -> String {
    "identity".into()
}

fn default_central_anchor() -> String {
    "central".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdentity {
    id: Option<String>,
    #[serde(default = "default_identity_anchor")]
    anchor: String,
    lhs: Spanned<String>,
    rhs: Spanned<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCentral {
    id: Option<String>,
    #[serde(default = "default_central_anchor")]
    anchor: String,
    element: String,
    among: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    name: Option<String>,
    description: Option<String>,
    #[serde(default)]
    algebra: BTreeMap<String, RawPresentation>,
    cotensor: Option<RawCotensor>,
    #[serde(default)]
    connection: BTreeMap<String, RawConnection>,
    #[serde(default)]
    identity: Vec<RawIdentity>,
    #[serde(default)]
    central: Vec<RawCentral>,
    // Single-presentation documents.
    generators: Option<Vec<String>>,
    #[serde(default)]
    star: Vec<[String; 2]>,
    #[serde(default)]
    commute: BTreeMap<String, Spanned<String>>,
    #[serde(default)]
    reductions: Vec<Spanned<String>>,
    right_degree: Option<BTreeMap<String, i64>>,
    left_degree: Option<BTreeMap<String, i64>>,
}

/// Text with the source position of its first character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Located {
    /// Re-anchors a parse error inside this text to document coordinates.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse { line, column, message } => Error::Parse {
                line: self.line + line - 1,
                column: if line == 1 { self.column + column - 1 } else { column },
                message,
            },
            other => Error::Parse {
                line: self.line,
                column: self.column,
                message: other.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraDecl {
    pub presentation: Arc<AlgebraPresentation>,
    pub spec: CoactionSpec,
}

#[derive(Clone, Debug)]
pub struct CotensorDecl {
    pub left: String,
    pub right: String,
    pub closed_form: Option<Example>,
    pub names: Vec<(String, Located)>,
}

#[derive(Clone, Debug, Default)]
pub struct ConnectionDecl {
    pub rule: Option<String>,
    pub values: BTreeMap<i64, Located>,
}

#[derive(Clone, Debug)]
pub struct IdentityDecl {
    pub id: String,
    pub anchor: String,
    pub lhs: Located,
    pub rhs: Located,
}

#[derive(Clone, Debug)]
pub struct CentralDecl {
    pub id: String,
    pub anchor: String,
    pub element: String,
    pub among: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub description: Option<String>,
    pub algebras: BTreeMap<String, AlgebraDecl>,
    pub cotensor: Option<CotensorDecl>,
    pub connections: BTreeMap<String, ConnectionDecl>,
    pub identities: Vec<IdentityDecl>,
    pub centrals: Vec<CentralDecl>,
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn toml_error(text: &str, e: toml::de::Error) -> Error {
    let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
    Error::Parse {
        line,
        column,
        message: e.message().trim().to_string(),
    }
}

fn located(text: &str, s: &Spanned<String>) -> Located {
    // Skip the opening quote of a basic or literal string.
    let span = s.span();
    let skip = match text.get(span.start..) {
        Some(r) if r.starts_with("\"\"\"") || r.starts_with("'''") => 3,
        Some(r) if r.starts_with('"') || r.starts_with('\'') => 1,
        _ => 0,
    };
    let (line, column) = position(text, span.start + skip);
    Located {
        text: s.get_ref().clone(),
        line,
        column,
    }
}

/// `x y^2 z` as a list of generator names.
fn parse_word(loc: &Located, w: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for tok in w.split_whitespace() {
        let (g, k) = match tok.split_once('^') {
            Some((g, k)) => {
                let k: usize = k
                    .parse()
                    .map_err(|_| loc.relocate(Error::Unsupported(format!("bad exponent in `{tok}`"))))?;
                (g, k)
            }
            None => (tok, 1),
        };
        out.extend(std::iter::repeat_n(g.to_string(), k));
    }
    if out.is_empty() {
        return Err(loc.relocate(Error::Unsupported("a reduction needs a non-empty left side".into())));
    }
    Ok(out)
}

fn grading(
    kind: &str,
    name: &str,
    pres: &AlgebraPresentation,
    degrees: &Option<BTreeMap<String, i64>>,
) -> Result<Option<Grading>> {
    let Some(map) = degrees else { return Ok(None) };
    for g in map.keys() {
        pres.generator_index(g)
            .map_err(|_| Error::InvalidCoaction(format!("{kind} of `{name}` names unknown generator `{g}`")))?;
    }
    let d = pres
        .generator_names()
        .iter()
        .map(|g| {
            map.get(g.as_str())
                .copied()
                .ok_or_else(|| Error::InvalidCoaction(format!("{kind} of `{name}` has no degree for `{g}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Grading::new(d)))
}

fn build_presentation(text: &str, name: &str, raw: &RawPresentation) -> Result<AlgebraDecl> {
    let name = raw.name.clone().unwrap_or_else(|| name.to_string());
    for reserved in ["L", "M", "u"] {
        if raw.generators.iter().any(|g| g == reserved) {
            return Err(Error::InvalidPresentation(format!(
                "`{reserved}` is reserved and cannot name a generator"
            )));
        }
    }
    let mut b = PresentationBuilder::new(name.clone()).generators(raw.generators.iter().cloned());
    for [x, y] in &raw.star {
        b = b.star_pair(x, y);
    }
    for (key, q) in &raw.commute {
        let loc = located(text, q);
        let names: Vec<&str> = key.split_whitespace().collect();
        let [x, y] = names[..] else {
            return Err(Error::InvalidPresentation(format!(
                "commutation key `{key}` must name two generators"
            )));
        };
        let q = parse_scalar(&loc.text).map_err(|e| loc.relocate(e))?;
        b = b.commute(x, y, q);
    }
    // Right sides are read in the algebra without its reductions.
    let free = b.clone().build()?;
    for r in &raw.reductions {
        let loc = located(text, r);
        let Some((lhs, rhs)) = loc.text.split_once('=') else {
            return Err(loc.relocate(Error::Unsupported(
                "a reduction has the form `word = expression`".into(),
            )));
        };
        let word = parse_word(&loc, lhs)?;
        let rhs_loc = Located {
            text: rhs.to_string(),
            line: loc.line,
            column: loc.column + lhs.chars().count() + 1,
        };
        let value = parse_element(Space::algebra(&free), rhs).map_err(|e| rhs_loc.relocate(e))?;
        let terms = value
            .terms()
            .map(|(m, c)| {
                (
                    c.clone(),
                    m.word().iter().map(|&i| free.generator_names()[i].clone()).collect(),
                )
            })
            .collect();
        b = b.reduce(&word, terms);
    }
    let pres = b.build()?;
    let spec = CoactionSpec::new(
        grading("right_degree", &name, &pres, &raw.right_degree)?,
        grading("left_degree", &name, &pres, &raw.left_degree)?,
    );
    spec.validate(&pres)?;
    Ok(AlgebraDecl {
        presentation: Arc::new(pres),
        spec,
    })
}

fn connection_decl(text: &str, raw: &RawConnection) -> Result<ConnectionDecl> {
    let mut values = BTreeMap::new();
    for (k, v) in &raw.values {
        let loc = located(text, v);
        let n: i64 = k.trim().parse().map_err(|_| {
            loc.relocate(Error::Unsupported(format!(
                "connection value key `{k}` is not an integer"
            )))
        })?;
        values.insert(n, loc);
    }
    Ok(ConnectionDecl {
        rule: raw.rule.clone(),
        values,
    })
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Bundle> {
        let raw: RawBundle = toml::from_str(text).map_err(|e| toml_error(text, e))?;
        let mut algebras = BTreeMap::new();
        if let Some(generators) = &raw.generators {
            if !raw.algebra.is_empty() {
                return Err(Error::InvalidPresentation(
                    "a document has either top-level generators or [algebra.*] tables".into(),
                ));
            }
            let name = raw.name.clone().unwrap_or_else(|| "X".into());
            let single = RawPresentation {
                name: Some(name.clone()),
                generators: generators.clone(),
                star: raw.star.clone(),
                commute: raw.commute.clone(),
                reductions: raw.reductions.clone(),
                right_degree: raw.right_degree.clone(),
                left_degree: raw.left_degree.clone(),
            };
            algebras.insert(name.clone(), build_presentation(text, &name, &single)?);
        }
        for (name, p) in &raw.algebra {
            algebras.insert(name.clone(), build_presentation(text, name, p)?);
        }
        let cotensor = match raw.cotensor {
            None => None,
            Some(c) => {
                for side in [&c.left, &c.right] {
                    if !algebras.contains_key(side) {
                        return Err(Error::InvalidPresentation(format!(
                            "cotensor names unknown algebra `{side}`"
                        )));
                    }
                }
                let closed_form = match c.closed_form.as_deref() {
                    None => None,
                    Some("ex1") => Some(Example::One),
                    Some("ex2") => Some(Example::Two),
                    Some(other) => {
                        return Err(Error::Unsupported(format!(
                            "unknown closed form `{other}` (expected `ex1` or `ex2`)"
                        )))
                    }
                };
                Some(CotensorDecl {
                    left: c.left,
                    right: c.right,
                    closed_form,
                    names: c.names.iter().map(|(n, v)| (n.clone(), located(text, v))).collect(),
                })
            }
        };
        let mut connections = BTreeMap::new();
        for (name, c) in &raw.connection {
            if !algebras.contains_key(name) {
                return Err(Error::InvalidPresentation(format!(
                    "connection for unknown algebra `{name}`"
                )));
            }
            connections.insert(name.clone(), connection_decl(text, c)?);
        }
        let identities = raw
            .identity
            .iter()
            .enumerate()
            .map(|(i, r)| IdentityDecl {
                id: r.id.clone().unwrap_or_else(|| format!("{}-{}", r.anchor, i + 1)),
                anchor: r.anchor.clone(),
                lhs: located(text, &r.lhs),
                rhs: located(text, &r.rhs),
            })
            .collect();
        let centrals = raw
            .central
            .iter()
            .map(|r| CentralDecl {
                id: r.id.clone().unwrap_or_else(|| format!("central-{}", r.element)),
                anchor: r.anchor.clone(),
                element: r.element.clone(),
                among: r.among.clone(),
            })
            .collect();
        let bundle = Bundle {
            name: raw.name.unwrap_or_else(|| "bundle".into()),
            description: raw.description,
            algebras,
            cotensor,
            connections,
            identities,
            centrals,
        };
        if bundle.cotensor.is_none() && !(bundle.identities.is_empty() && bundle.centrals.is_empty()) {
            return Err(Error::InvalidPresentation(
                "identities need a [cotensor] section".into(),
            ));
        }
        Ok(bundle)
    }

    /// Merges a document with `[connection.*]` tables into this bundle.
    /// A given `rule` replaces the bundled one; values are added on top.
    pub fn merge_connections(&mut self, text: &str) -> Result<()> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Overrides {
            #[serde(default)]
            connection: BTreeMap<String, RawConnection>,
        }
        let raw: Overrides = toml::from_str(text).map_err(|e| toml_error(text, e))?;
        for (name, c) in &raw.connection {
            if !self.algebras.contains_key(name) {
                return Err(Error::InvalidPresentation(format!(
                    "connection for unknown algebra `{name}`"
                )));
            }
            let decl = connection_decl(text, c)?;
            let entry = self.connections.entry(name.clone()).or_default();
            if decl.rule.is_some() {
                entry.rule = decl.rule;
            }
            entry.values.extend(decl.values);
        }
        Ok(())
    }

    pub fn algebra(&self, name: &str) -> Result<&AlgebraDecl> {
        self.algebras
            .get(name)
            .ok_or_else(|| Error::InvalidPresentation(format!("no algebra named `{name}`")))
    }

    /// The only algebra, or the one named `name`.
    pub fn pick_algebra(&self, name: Option<&str>) -> Result<&AlgebraDecl> {
        match name {
            Some(n) => self.algebra(n),
            None if self.algebras.len() == 1 => Ok(self.algebras.values().next().unwrap()),
            None => Err(Error::InvalidPresentation(format!(
                "the document declares several algebras ({}); pick one",
                self.algebras.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn cotensor_algebra(&self) -> Result<Option<CotensorAlgebra>> {
        let Some(c) = &self.cotensor else { return Ok(None) };
        let (a, p) = (self.algebra(&c.left)?, self.algebra(&c.right)?);
        CotensorAlgebra::new(
            a.presentation.clone(),
            a.spec.clone(),
            p.presentation.clone(),
            p.spec.clone(),
        )
        .map(Some)
    }

    /// Evaluates the declared names in order; each may use the earlier ones.
    pub fn names(&self, cot: &CotensorAlgebra) -> Result<Names> {
        let mut names = Names::new();
        if let Some(c) = &self.cotensor {
            for (n, loc) in &c.names {
                let x = parse_element(
                    Space::Cotensor {
                        cot,
                        names: Some(&names),
                    },
                    &loc.text,
                )
                .map_err(|e| loc.relocate(e))?;
                names.insert(n.clone(), x);
            }
        }
        Ok(names)
    }

    /// Parses `text` in the cotensor algebra with the declared names.
    pub fn element(cot: &CotensorAlgebra, names: &Names, loc: &Located) -> Result<AlgebraElement> {
        parse_element(
            Space::Cotensor {
                cot,
                names: Some(names),
            },
            &loc.text,
        )
        .map_err(|e| loc.relocate(e))
    }

    /// The connection form declared for `name`.
    pub fn connection(&self, name: &str) -> Result<ConnectionForm> {
        let alg = self.algebra(name)?;
        let decl = self
            .connections
            .get(name)
            .ok_or_else(|| Error::InvalidPresentation(format!("no connection declared for `{name}`")))?;
        let pres = alg.presentation.clone();
        let mut form = match decl.rule.as_deref() {
            Some("matsumoto") => matsumoto_connection(pres.clone(), alg.spec.right()?)?,
            None => {
                let label = name.to_string();
                let rule: Rule = Arc::new(move |n| {
                    Err(Error::Unsupported(format!(
                        "connection `{label}` has no value at n = {n}"
                    )))
                });
                ConnectionForm::new(
                    format!("table({})", pres.name()),
                    pres.clone(),
                    alg.spec.right()?.clone(),
                    rule,
                )
            }
            Some(other) => return Err(Error::Unsupported(format!("unknown connection rule `{other}`"))),
        };
        for (&n, loc) in &decl.values {
            let spaces = [Space::algebra(&pres), Space::algebra(&pres)];
            let t: TensorElement = parse_tensor(&spaces, &loc.text).map_err(|e| loc.relocate(e))?;
            form = form.with_override(n, t)?;
        }
        Ok(form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{bundled, matsumoto};

    const SPHERE: &str = r#"
name = "S"
generators = ["a", "a'", "b", "b'"]
star = [["a", "a'"], ["b", "b'"]]
reductions = ["b b' = 1 - a a'", "b' b = 1 - a' a"]
right_degree = { a = 1, "a'" = -1, b = 1, "b'" = -1 }

[commute]
"b a" = "L^-1"
"b a'" = "L"
"b' a" = "L"
"b' a'" = "L^-1"
"#;

    #[test]
    fn single_presentation() {
        let b = Bundle::parse(SPHERE).unwrap();
        let alg = b.pick_algebra(None).unwrap();
        let reference = matsumoto("S", 0);
        let p = &alg.presentation;
        for w in reference.normal_monomials(4) {
            let x = reference.monomial(&w);
            let y = parse_element(Space::algebra(p), &reference.render(&x)).unwrap();
            assert_eq!(p.render(&y), reference.render(&x));
        }
        assert_eq!(p.render(&parse_element(Space::algebra(p), "b' b").unwrap()), "1 - a a'");
        assert_eq!(alg.spec.right().unwrap().degrees(), &[1, -1, 1, -1]);
    }

    #[test]
    fn anchors_default_by_kind() {
        let extra =
            "\n[[identity]]\nlhs = \"z_1\"\nrhs = \"z_1\"\n\n[[central]]\nelement = \"z_1\"\namong = [\"z_2\"]\n";
        let b = Bundle::parse(&format!("{}{extra}", bundled("matsumoto-ex1").unwrap())).unwrap();
        let (id, c) = (b.identities.last().unwrap(), b.centrals.last().unwrap());
        assert_eq!((id.anchor.as_str(), c.anchor.as_str()), ("identity", "central"));
        assert_eq!(id.id, format!("identity-{}", b.identities.len()));
        assert_eq!(c.id, "central-z_1");
    }

    #[test]
    fn ground_ring() {
        let b = Bundle::parse("name = \"k\"\ngenerators = []\n").unwrap();
        let p = &b.pick_algebra(None).unwrap().presentation;
        assert_eq!(p.arity(), 0);
        assert_eq!(p.render(&parse_element(Space::algebra(p), "2 L").unwrap()), "2*L");
    }

    #[test]
    fn inconsistent_commutation_is_rejected() {
        let text = SPHERE.replace("\"b' a'\" = \"L^-1\"", "\"b' a'\" = \"L^-1\"\n\"a' b'\" = \"L^-1\"");
        let e = Bundle::parse(&text).unwrap_err();
        assert!(
            matches!(e, Error::InvalidPresentation(ref m) if m.contains("inverse")),
            "{e}"
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = Bundle::parse("name = \"x\"\ngenerators = [\"a\"\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let text = SPHERE.replace("\"b a\" = \"L^-1\"", "\"b a\" = \"L^-1 #\"");
        let e = Bundle::parse(&text).unwrap_err();
        let line = SPHERE.lines().position(|l| l.starts_with("\"b a\"")).unwrap() + 1;
        assert!(
            matches!(e, Error::Parse { line: l, column: 15, .. } if l == line),
            "{e}"
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Bundle::parse("name = \"x\"\ngenerator = []\n").is_err());
    }

    #[test]
    fn bundled_presets_load() {
        for name in ["matsumoto-ex1", "matsumoto-ex2"] {
            let b = Bundle::parse(bundled(name).unwrap()).unwrap();
            let cot = b.cotensor_algebra().unwrap().unwrap();
            let names = b.names(&cot).unwrap();
            assert!(names.contains_key("alpha"));
            for d in &b.identities {
                Bundle::element(&cot, &names, &d.lhs).unwrap();
                Bundle::element(&cot, &names, &d.rhs).unwrap();
            }
            for c in ["A", "P"] {
                let form = b.connection(c).unwrap();
                assert_eq!(form.eval(0).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn overrides_merge() {
        let mut b = Bundle::parse(bundled("matsumoto-ex2").unwrap()).unwrap();
        b.merge_connections("[connection.P.values]\n\"1\" = \"2 (a' | a) + (b' | b)\"\n")
            .unwrap();
        let form = b.connection("P").unwrap();
        let p = form.presentation().clone();
        assert_eq!(form.render(&form.eval(1).unwrap()), "2 (a' ⊗ a) + (b' ⊗ b)");
        assert_eq!(
            form.eval(-1).unwrap(),
            matsumoto_connection(p.clone(), b.algebra("P").unwrap().spec.right().unwrap())
                .unwrap()
                .eval(-1)
                .unwrap()
        );
        let e = b
            .merge_connections("[connection.P.values]\n\"1\" = \"(a' | c)\"\n")
            .and_then(|_| b.connection("P").map(|_| ()));
        assert!(matches!(e, Err(Error::Parse { line: 2, .. })), "{e:?}");
    }
}
