//! Literal evaluation of the closed-form sums for the cotensor product of
//! two Matsumoto spheres.
//!
//! These are independent of [`compose_connection`]: they build each leg
//! from words in the ambient algebra and never consult a connection form.
//!
//! [`compose_connection`]: crate::connection::compose_connection

use crate::algebra::AlgebraElement;
use crate::comodule::{SlotKind, TensorElement};
use crate::connection::{matsumoto_roles, Roles};
use crate::cotensor::CotensorAlgebra;
use crate::error::Result;
use crate::scalar::{binomial, LaurentScalar};

/// Which left coaction of `P` the cotensor product was built with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// `a, b ↦ u^-1`.
    One,
    /// `a ↦ u^-1`, `b ↦ u`.
    Two,
}

/// `α, β, γ, δ` of the cotensor product. Both examples share
/// `α = a ⊗ a*` and `δ = b ⊗ a*`; example one has `β = b ⊗ b*`,
/// `γ = a ⊗ b*`, example two `β = b ⊗ b`, `γ = a ⊗ b`.
pub fn cotensor_generators(cot: &CotensorAlgebra, example: Example) -> Result<[AlgebraElement; 4]> {
    let (ra, rp) = roles(cot)?;
    let one = LaurentScalar::one();
    let pair = |x: usize, y: usize| cot.ambient().normal_form_indices(&one, &[x, cot.a().arity() + y]);
    let (beta_p, gamma_p) = match example {
        Example::One => (rp.b_star, rp.b_star),
        Example::Two => (rp.b, rp.b),
    };
    Ok([
        pair(ra.a, rp.a_star),
        pair(ra.b, beta_p),
        pair(ra.a, gamma_p),
        pair(ra.b, rp.a_star),
    ])
}

fn roles(cot: &CotensorAlgebra) -> Result<(Roles, Roles)> {
    Ok((
        matsumoto_roles(cot.a(), cot.a_spec().right()?)?,
        matsumoto_roles(cot.p(), cot.p_spec().right()?)?,
    ))
}

fn rep(g: usize, k: i64) -> impl Iterator<Item = usize> {
    std::iter::repeat_n(g, k.max(0) as usize)
}

fn shape(cot: &CotensorAlgebra) -> Vec<SlotKind> {
    vec![SlotKind::Algebra(cot.ambient().id()); 2]
}

/// `c · (x ⊗ y)` for ambient words.
fn leg_tensor(cot: &CotensorAlgebra, c: &LaurentScalar, x: &[usize], y: &[usize]) -> TensorElement {
    let one = LaurentScalar::one();
    let amb = cot.ambient();
    let tx = amb.normal_form_indices(&one, x);
    let ty = amb.normal_form_indices(&one, y);
    TensorElement::pure(&[&tx, &ty]).scale(c)
}

/// The composed strong connection of example two as an explicit double
/// binomial sum over words in `a, b` and their stars.
pub fn expand_composed_sum(cot: &CotensorAlgebra, n: i64) -> Result<TensorElement> {
    let (ra, rp) = roles(cot)?;
    let off = cot.a().arity();
    let big = n.abs();
    let half = big / 2;
    // (first leg A, first leg P, second leg A, second leg P) letters
    let (a_, as_, b_, bs_) = (ra.a, ra.a_star, ra.b, ra.b_star);
    let (pa, pas, pb, pbs) = (rp.a + off, rp.a_star + off, rp.b + off, rp.b_star + off);
    let mut out = TensorElement::zero(shape(cot));
    for m in 0..=big {
        let first_branch = m <= half;
        let kmax = if first_branch { big - 2 * m } else { 2 * m - big };
        for k in 0..=kmax {
            let c = LaurentScalar::integer(binomial(big, m) * binomial(kmax, k));
            let r = kmax - k;
            // A-legs: ℓ_A(u^{∓kmax}) term; P-legs: ℓ_P(u^{±big}) term.
            let (xa, ya): (Vec<usize>, Vec<usize>) = match (n >= 0, first_branch) {
                (true, true) => (
                    rep(b_, k).chain(rep(a_, r)).collect(),
                    rep(as_, r).chain(rep(bs_, k)).collect(),
                ),
                (true, false) => (
                    rep(bs_, k).chain(rep(as_, r)).collect(),
                    rep(a_, r).chain(rep(b_, k)).collect(),
                ),
                (false, true) => (
                    rep(bs_, k).chain(rep(as_, r)).collect(),
                    rep(a_, r).chain(rep(b_, k)).collect(),
                ),
                (false, false) => (
                    rep(b_, k).chain(rep(a_, r)).collect(),
                    rep(as_, r).chain(rep(bs_, k)).collect(),
                ),
            };
            let (xp, yp): (Vec<usize>, Vec<usize>) = if n >= 0 {
                (
                    rep(pbs, m).chain(rep(pas, big - m)).collect(),
                    rep(pa, big - m).chain(rep(pb, m)).collect(),
                )
            } else {
                (
                    rep(pb, m).chain(rep(pa, big - m)).collect(),
                    rep(pas, big - m).chain(rep(pbs, m)).collect(),
                )
            };
            let x: Vec<usize> = xa.into_iter().chain(xp).collect();
            let y: Vec<usize> = ya.into_iter().chain(yp).collect();
            out = &out + &leg_tensor(cot, &c, &x, &y);
        }
    }
    Ok(out)
}

/// Product of generator powers, left to right.
fn word_in(cot: &CotensorAlgebra, factors: &[(&AlgebraElement, i64)]) -> AlgebraElement {
    let amb = cot.ambient();
    let mut acc = amb.one();
    for (g, k) in factors {
        for _ in 0..*k {
            acc = amb.mul(&acc, g).expect("generators live in the ambient algebra");
        }
    }
    acc
}

/// `L^e` for a possibly negative `e`.
fn lambda_pow(e: i64) -> LaurentScalar {
    LaurentScalar::monomial(1, [e as i32, 0])
}

/// The composed strong connection of example two written in the generators
/// `α, β, γ, δ` and their stars, as a quadruple binomial sum.
///
/// In the second branch the inner sums run over `t, s ∈ 0..=n-m` with
/// weights `C(n-m, t) C(n-m, s)`; the exponent `n-m-t` of `δ` forces this
/// range.
pub fn expand_generator_form(cot: &CotensorAlgebra, n: i64) -> Result<TensorElement> {
    let [al, be, ga, de] = cotensor_generators(cot, Example::Two)?;
    let amb = cot.ambient();
    let star = |x: &AlgebraElement| amb.star(x).expect("ambient element");
    let (als, bes, gas, des) = (star(&al), star(&be), star(&ga), star(&de));
    let big = n.abs();
    let half = big / 2;
    let mut out = TensorElement::zero(shape(cot));
    let mut push = |c: LaurentScalar, x: AlgebraElement, y: AlgebraElement| {
        let t = if n >= 0 {
            TensorElement::pure(&[&x, &y])
        } else {
            TensorElement::pure(&[&y, &x])
        };
        out = &out + &t.scale(&c);
    };
    for m in 0..=half {
        for k in 0..=big - 2 * m {
            for t in 0..=m {
                for s in 0..=m {
                    let w = binomial(big, m) * binomial(big - 2 * m, k) * binomial(m, t) * binomial(m, s);
                    let c = lambda_pow((k + m) * (t - s) - t * t + s * s).scale(w);
                    let x = word_in(
                        cot,
                        &[(&bes, m - t), (&gas, t), (&de, k + m - t), (&al, big - 2 * m - k + t)],
                    );
                    let y = word_in(
                        cot,
                        &[(&als, big - 2 * m - k + s), (&des, k + m - s), (&ga, s), (&be, m - s)],
                    );
                    push(c, x, y);
                }
            }
        }
    }
    for m in half + 1..=big {
        for k in 0..=2 * m - big {
            for t in 0..=big - m {
                for s in 0..=big - m {
                    let w = binomial(big, m) * binomial(2 * m - big, k) * binomial(big - m, t) * binomial(big - m, s);
                    let c = lambda_pow(-k * (t - s)).scale(w);
                    let x = word_in(
                        cot,
                        &[
                            (&gas, 2 * m - big - k + t),
                            (&bes, big - m + k - t),
                            (&de, big - m - t),
                            (&al, t),
                        ],
                    );
                    let y = word_in(
                        cot,
                        &[
                            (&als, s),
                            (&des, big - m - s),
                            (&be, big - m - s + k),
                            (&ga, 2 * m - big - k + s),
                        ],
                    );
                    push(c, x, y);
                }
            }
        }
    }
    Ok(out)
}

/// The translation map of example one in the generators `α, β, γ, δ`.
pub fn expand_example1_translation(cot: &CotensorAlgebra, n: i64) -> Result<TensorElement> {
    let [al, be, ga, de] = cotensor_generators(cot, Example::One)?;
    let amb = cot.ambient();
    let star = |x: &AlgebraElement| amb.star(x).expect("ambient element");
    let (als, bes, gas, des) = (star(&al), star(&be), star(&ga), star(&de));
    let big = n.abs();
    // τ(u^-n) is τ(u^n) with every generator replaced by its star.
    let (al, be, ga, de, als, bes, gas, des) = if n >= 0 {
        (al, be, ga, de, als, bes, gas, des)
    } else {
        (als, bes, gas, des, al, be, ga, de)
    };
    let mut out = TensorElement::zero(shape(cot));
    for p in 0..=big {
        for m in 0..=big {
            let c = LaurentScalar::integer(binomial(big, p) * binomial(big, m));
            let (x, y) = if m < p {
                (
                    word_in(cot, &[(&al, big - p), (&de, p - m), (&be, m)]),
                    word_in(cot, &[(&bes, m), (&des, p - m), (&als, big - p)]),
                )
            } else {
                (
                    word_in(cot, &[(&al, big - m), (&ga, m - p), (&be, p)]),
                    word_in(cot, &[(&bes, p), (&gas, m - p), (&als, big - m)]),
                )
            };
            out = &out + &TensorElement::pure(&[&x, &y]).scale(&c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{CoactionSpec, Grading};
    use crate::presets::matsumoto;
    use std::sync::Arc;

    fn example2() -> CotensorAlgebra {
        let r = Grading::new(vec![1, -1, 1, -1]);
        CotensorAlgebra::new(
            Arc::new(matsumoto("A", 0)),
            CoactionSpec::new(Some(r.clone()), None),
            Arc::new(matsumoto("P", 1)),
            CoactionSpec::new(Some(r), Some(Grading::new(vec![-1, 1, 1, -1]))),
        )
        .unwrap()
    }

    #[test]
    fn degree_zero_is_unit() {
        let cot = example2();
        let amb = cot.ambient();
        let unit = TensorElement::pure(&[&amb.one(), &amb.one()]);
        assert_eq!(expand_composed_sum(&cot, 0).unwrap(), unit);
        assert_eq!(expand_generator_form(&cot, 0).unwrap(), unit);
    }

    #[test]
    fn degree_one_has_four_terms() {
        let cot = example2();
        let [al, be, ga, de] = cotensor_generators(&cot, Example::Two).unwrap();
        let amb = cot.ambient();
        let s = |x: &AlgebraElement| amb.star(x).unwrap();
        let want = [
            TensorElement::pure(&[&al, &s(&al)]),
            TensorElement::pure(&[&de, &s(&de)]),
            TensorElement::pure(&[&s(&ga), &ga]),
            TensorElement::pure(&[&s(&be), &be]),
        ]
        .iter()
        .fold(TensorElement::zero(shape(&cot)), |acc, t| &acc + t);
        assert_eq!(expand_composed_sum(&cot, 1).unwrap(), want);
        assert_eq!(expand_generator_form(&cot, 1).unwrap(), want);
    }
}
