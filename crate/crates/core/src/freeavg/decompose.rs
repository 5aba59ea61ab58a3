//! Writing an element of `ker f_X` as a sum of brackets.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use super::{bracket_free, f_free, FreePoly, Generator, Monomial};
use crate::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("input is not in the kernel of f: f(w) = {0}")]
    NotInKernel(FreePoly),
    #[error("monomials {0} and {1} share an image but no matching Y factor")]
    NoSharedFactor(Monomial, Monomial),
}

/// Returns `(p_i, q_i)` with `w = sum [p_i, q_i]`.
///
/// Monomials are grouped by their image under `f_X`; the coefficients in each
/// group sum to zero, so the group is `sum r_i (w_i - w_k)` with `w_k` the last
/// monomial of the group in display order. Each difference `w_1 - w_2` with
/// `w_j = u_j v_j` and `y[u_1] v_1 = y[u_2] v_2` is the bracket
/// `[u_1, u_2 v']` where `v_1 = y[u_2] v'`.
pub fn bracket_decompose(w: &FreePoly) -> Result<Vec<(FreePoly, FreePoly)>, DecomposeError> {
    let image = f_free(w);
    if !image.is_zero() {
        return Err(DecomposeError::NotInKernel(image));
    }
    let mut groups: BTreeMap<Monomial, Vec<(&Monomial, &Rational)>> = BTreeMap::new();
    for (m, c) in w.terms() {
        let (u, v) = m.split();
        let key = v.mul(&Monomial::generator(Generator::Y(u)));
        groups.entry(key).or_default().push((m, c));
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let (reference, _) = *members.last().expect("groups are never empty");
        for &(m, c) in &members[..members.len() - 1] {
            if c.is_zero() {
                continue;
            }
            out.push(difference_bracket(c, m, reference)?);
        }
    }
    Ok(out)
}

/// `r (w_1 - w_2)` as one bracket, for distinct monomials with equal images.
fn difference_bracket(
    r: &Rational,
    w1: &Monomial,
    w2: &Monomial,
) -> Result<(FreePoly, FreePoly), DecomposeError> {
    let (u1, v1) = w1.split();
    let (u2, v2) = w2.split();
    let y_u2 = Monomial::generator(Generator::Y(u2.clone()));
    // Equal images with u_1 = u_2 force v_1 = v_2; the monomials are distinct,
    // so y[u_2] must occur in v_1.
    let rest = y_u2
        .quotient_of(&v1)
        .ok_or_else(|| DecomposeError::NoSharedFactor(w1.clone(), w2.clone()))?;
    debug_assert_eq!(rest.mul(&Monomial::generator(Generator::Y(u1.clone()))), v2);
    let p = FreePoly::term(r.clone(), Monomial::from_x(&u1));
    let q = FreePoly::monomial(Monomial::from_x(&u2).mul(&rest));
    Ok((p, q))
}

/// `sum [p_i, q_i]`
pub fn recompose(pairs: &[(FreePoly, FreePoly)]) -> FreePoly {
    pairs.iter().fold(FreePoly::zero(), |acc, (p, q)| &acc + &bracket_free(p, q))
}
