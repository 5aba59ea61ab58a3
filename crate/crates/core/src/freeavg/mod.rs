//! The free averaging algebra `F_X = Q[X ∪ Y]` with `f_X(u v) = y[u] v`
//! (`u` the `X` part of a monomial, `v` its `Y` part), its unitary and
//! Reynolds quotients, and term evaluation in all three.
//!
//! The unitary quotient substitutes `y[1] = 1`. The Reynolds quotient is
//! generated by `y y' y[1] - y y'` for `Y` generators `y, y'`; its normal
//! form deletes a `y[1]` while the monomial has at least one `y[1]` and at
//! least three `Y` factors in total.

pub mod chain;
pub mod decompose;
pub mod on_algebra;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::terms::{IdentitySet, Term};

pub use poly::{FreePoly, Generator, Monomial, XMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Plain,
    Unitary,
    Reynolds,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Plain, Mode::Unitary, Mode::Reynolds];

    /// The free object in which a hypothesis set is decided.
    pub fn for_hypothesis(h: IdentitySet) -> Mode {
        match h {
            IdentitySet::Averaging => Mode::Plain,
            IdentitySet::UnitaryAveraging => Mode::Unitary,
            IdentitySet::ReynoldsAveraging => Mode::Reynolds,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Unitary => "unitary",
            Mode::Reynolds => "reynolds",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Mode::Plain),
            "unitary" => Ok(Mode::Unitary),
            "reynolds" => Ok(Mode::Reynolds),
            other => Err(format!("unknown mode `{other}` (expected plain, unitary or reynolds)")),
        }
    }
}

/// `f_X`, extended linearly: `u v -> y[u] v`.
pub fn f_free(p: &FreePoly) -> FreePoly {
    p.map_monomials(|m| {
        let (u, v) = m.split();
        v.mul(&Monomial::generator(Generator::Y(u)))
    })
}

/// Substitutes `y[1] = 1`.
pub fn reduce_unitary(p: &FreePoly) -> FreePoly {
    let y1 = Generator::y_one();
    p.map_monomials(|m| m.with_exponent(&y1, 0))
}

/// Exponent of `y[1]` left by the Reynolds rewrite, given `a` copies of
/// `y[1]` and `b` other `Y` factors.
pub fn reynolds_exponent(a: u32, b: u32) -> u32 {
    if a >= 1 && a + b >= 3 {
        2u32.saturating_sub(b)
    } else {
        a
    }
}

pub fn reduce_reynolds_monomial(m: &Monomial) -> Monomial {
    let y1 = Generator::y_one();
    let a = m.exponent(&y1);
    let b = m.other_y_degree();
    m.with_exponent(&y1, reynolds_exponent(a, b))
}

/// Reynolds normal form, monomial by monomial.
pub fn reduce_reynolds(p: &FreePoly) -> FreePoly {
    p.map_monomials(reduce_reynolds_monomial)
}

/// One instance of the rule `y y' y[1] -> y y'` inside a monomial, given by
/// positions in the sorted list of its `Y` factors (with repetition):
/// `keep` are the two factors playing `y, y'`, `drop` is the deleted `y[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub keep: (usize, usize),
    pub drop: usize,
}

fn y_factor_list(m: &Monomial) -> Vec<Generator> {
    m.factors()
        .iter()
        .filter(|(g, _)| g.is_y())
        .flat_map(|(g, &e)| std::iter::repeat_n(g.clone(), e as usize))
        .collect()
}

/// All rule instances applicable to `m`.
pub fn reynolds_redexes(m: &Monomial) -> Vec<Redex> {
    let ys = y_factor_list(m);
    let y1 = Generator::y_one();
    let mut out = Vec::new();
    for (k, g) in ys.iter().enumerate() {
        if *g != y1 {
            continue;
        }
        for i in 0..ys.len() {
            for j in i + 1..ys.len() {
                if i != k && j != k {
                    out.push(Redex { keep: (i, j), drop: k });
                }
            }
        }
    }
    out
}

/// Applies one rule instance, rebuilding the monomial from the factor list
/// with the dropped position removed.
pub fn apply_redex(m: &Monomial, r: Redex) -> Monomial {
    let mut ys = y_factor_list(m);
    assert_eq!(ys[r.drop], Generator::y_one(), "redex must drop a y[1]");
    ys.remove(r.drop);
    let (x, _) = m.split();
    Monomial::from_x(&x).mul(&Monomial::from_pairs(ys.into_iter().map(|g| (g, 1))))
}

/// Normalizes a polynomial into the mode's normal form.
pub fn normalize(mode: Mode, p: &FreePoly) -> FreePoly {
    match mode {
        Mode::Plain => p.clone(),
        Mode::Unitary => reduce_unitary(p),
        Mode::Reynolds => reduce_reynolds(p),
    }
}

pub fn is_normal(mode: Mode, p: &FreePoly) -> bool {
    normalize(mode, p) == *p
}

/// The operator of the mode's free object, on normal forms.
pub fn f_mode(mode: Mode, p: &FreePoly) -> FreePoly {
    normalize(mode, &f_free(p))
}

/// The product of the mode's free object, on normal forms. The unitary
/// quotient is a polynomial ring itself, so no reduction is needed there.
pub fn mul_mode(mode: Mode, p: &FreePoly, q: &FreePoly) -> FreePoly {
    let prod = p * q;
    match mode {
        Mode::Plain | Mode::Unitary => prod,
        Mode::Reynolds => reduce_reynolds(&prod),
    }
}

/// `[p, q] = p f(q) - q f(p)` with the plain operator.
pub fn bracket_free(p: &FreePoly, q: &FreePoly) -> FreePoly {
    &(p * &f_free(q)) - &(q * &f_free(p))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable v{0} has no assigned value")]
    Unassigned(u32),
}

/// Evaluates a term in the mode's free object. Assigned values are brought
/// into normal form first.
pub fn eval_term(
    t: &Term,
    mode: Mode,
    assign: &dyn Fn(u32) -> Option<FreePoly>,
) -> Result<FreePoly, EvalError> {
    let rec = |t: &Term| eval_term(t, mode, assign);
    Ok(match t {
        Term::Var(i) => normalize(mode, &assign(*i).ok_or(EvalError::Unassigned(*i))?),
        Term::One => FreePoly::one(),
        Term::Zero => FreePoly::zero(),
        Term::Add(a, b) => &rec(a)? + &rec(b)?,
        Term::Sub(a, b) => &rec(a)? - &rec(b)?,
        Term::Mul(a, b) => mul_mode(mode, &rec(a)?, &rec(b)?),
        Term::ScalarMul(r, a) => rec(a)?.scale(r),
        Term::F(a) => f_mode(mode, &rec(a)?),
    })
}

/// `v_i -> x_i`
pub fn generic_assignment(i: u32) -> Option<FreePoly> {
    Some(FreePoly::x(i))
}

/// Evaluation at the generic point `v_i -> x_i`.
pub fn eval_generic(t: &Term, mode: Mode) -> FreePoly {
    eval_term(t, mode, &generic_assignment).expect("the generic assignment covers every variable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn y(pairs: &[(u32, u32)]) -> FreePoly {
        FreePoly::y(XMonomial::from_pairs(pairs.iter().copied()))
    }

    fn y1() -> FreePoly {
        y(&[])
    }

    #[test]
    fn f_free_examples() {
        assert_eq!(f_free(&FreePoly::x(1)), y(&[(1, 1)]));
        let m = &(&FreePoly::x(1) * &FreePoly::x(2)) * &y(&[(3, 1)]);
        assert_eq!(f_free(&m), &y(&[(1, 1), (2, 1)]) * &y(&[(3, 1)]));
        assert_eq!(f_free(&y(&[(1, 1)])), &y1() * &y(&[(1, 1)]));
    }

    #[test]
    fn unitary_reduction() {
        assert_eq!(reduce_unitary(&y1()), FreePoly::one());
        let p = &(&y1() * &(&y(&[(1, 1)]) * &y(&[(2, 1)]))) - &(&y(&[(1, 1)]) * &y(&[(2, 1)]));
        assert!(reduce_unitary(&p).is_zero());
        assert_eq!(reduce_unitary(&FreePoly::x(1)), FreePoly::x(1));
    }

    #[test]
    fn reynolds_reduction() {
        let yy = &y(&[(1, 1)]) * &y(&[(2, 1)]);
        assert_eq!(reduce_reynolds(&(&y1() * &yy)), yy);
        assert_eq!(reduce_reynolds(&y1().pow(3)), y1().pow(2));
        let fixed = &(&FreePoly::x(1) * &y1()) * &y(&[(1, 1)]);
        assert_eq!(reduce_reynolds(&fixed), fixed);
    }

    #[test]
    fn closed_form_matches_stepwise_rewrite() {
        for a in 0..8 {
            for b in 0..6 {
                let mut cur = a;
                while cur >= 1 && cur + b >= 3 {
                    cur -= 1;
                }
                assert_eq!(reynolds_exponent(a, b), cur, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn mode_operators() {
        assert_eq!(f_mode(Mode::Unitary, &FreePoly::one()), FreePoly::one());
        let yy = &y(&[(1, 1)]) * &y(&[(2, 1)]);
        assert_eq!(f_mode(Mode::Reynolds, &yy), yy);
        assert!(f_mode(Mode::Plain, &FreePoly::zero()).is_zero());
    }

    #[test]
    fn generic_evaluation() {
        let t = parse_term("f(v1*f(v2)) - f(v1)*f(v2)").unwrap();
        assert!(eval_generic(&t, Mode::Plain).is_zero());
        let t = parse_term("f(f(v1)*f(v2)) - f(v1)*f(v2)").unwrap();
        assert_eq!(eval_generic(&t, Mode::Plain).to_string(), "y[1]*y[x1]*y[x2] - y[x1]*y[x2]");
        let t = parse_term("2*f(v1*f(v1)) - f(f(v1)^2) - f(v1)^2").unwrap();
        assert!(eval_generic(&t, Mode::Reynolds).is_zero());
        let t = parse_term("v2").unwrap();
        assert_eq!(eval_term(&t, Mode::Plain, &|_| None), Err(EvalError::Unassigned(2)));
    }

    #[test]
    fn brackets() {
        let (x1, x2) = (FreePoly::x(1), FreePoly::x(2));
        let b = bracket_free(&x1, &x2);
        assert_eq!(b, &(&x1 * &y(&[(2, 1)])) - &(&x2 * &y(&[(1, 1)])));
        assert!(bracket_free(&b, &b).is_zero());
        assert_eq!(bracket_free(&FreePoly::one(), &x1), &y(&[(1, 1)]) - &(&x1 * &y1()));
        assert!(f_free(&b).is_zero());
    }

    #[test]
    fn redexes_follow_the_rule() {
        let m = Monomial::from_pairs([(Generator::y_one(), 3)]);
        let rs = reynolds_redexes(&m);
        assert_eq!(rs.len(), 3);
        assert_eq!(apply_redex(&m, rs[0]), Monomial::from_pairs([(Generator::y_one(), 2)]));
        let stuck = Monomial::from_pairs([(Generator::y_one(), 1), (Generator::Y(XMonomial::var(1)), 1)]);
        assert!(reynolds_redexes(&stuck).is_empty());
    }
}
