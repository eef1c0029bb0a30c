//! Built-in presentations and the bundled example documents.

use crate::algebra::{AlgebraPresentation, PresentationBuilder};
use crate::scalar::LaurentScalar;

pub const MATSUMOTO_EX1: &str = include_str!("../presets/matsumoto-ex1.toml");
pub const MATSUMOTO_EX2: &str = include_str!("../presets/matsumoto-ex2.toml");

/// Names and sources of the bundled preset documents.
pub const BUNDLED: &[(&str, &str)] = &[("matsumoto-ex1", MATSUMOTO_EX1), ("matsumoto-ex2", MATSUMOTO_EX2)];

pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".toml").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The Matsumoto sphere on `a < a' < b < b'` with parameter `L`
/// (`param == 0`) or `M` (`param == 1`):
/// `ab = q ba`, `ab' = q^-1 b'a`, `aa' = a'a`, `bb' = b'b`, `aa' + bb' = 1`.
pub fn matsumoto(name: &str, param: usize) -> AlgebraPresentation {
    assert!(param < 2, "parameter index must be 0 (L) or 1 (M)");
    let mut e = [0, 0];
    e[param] = 1;
    let q = LaurentScalar::monomial(1, e);
    let qbar = q.star();
    let one = LaurentScalar::one();
    let w = |s: &[&str]| s.iter().map(|g| g.to_string()).collect::<Vec<_>>();
    PresentationBuilder::new(name)
        .generators(["a", "a'", "b", "b'"])
        .star_pair("a", "a'")
        .star_pair("b", "b'")
        .commute("a'", "a", one.clone())
        .commute("b", "a", qbar.clone())
        .commute("b", "a'", q.clone())
        .commute("b'", "a", q.clone())
        .commute("b'", "a'", qbar)
        .commute("b'", "b", one.clone())
        .reduce(&["b", "b'"], vec![(one.clone(), vec![]), (-&one, w(&["a", "a'"]))])
        .reduce(&["b'", "b"], vec![(one.clone(), vec![]), (-&one, w(&["a'", "a"]))])
        .build()
        .expect("the Matsumoto presentation is valid")
}
