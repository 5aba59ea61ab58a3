//! Sparse polynomials over the generators `X ∪ Y`, where each `Y` generator
//! `y[u]` is indexed by a monic monomial `u` in the `X` variables.
//!
//! Generators are created on demand from their index monomial, so the
//! infinite generating set never needs to exist up front.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{format_rational, Rational};

/// A monic monomial in the `X` variables; `x_i^e` stored as `i -> e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XMonomial(BTreeMap<u32, u32>);

impl XMonomial {
    pub fn one() -> Self {
        XMonomial(BTreeMap::new())
    }

    pub fn var(i: u32) -> Self {
        XMonomial(BTreeMap::from([(i, 1)]))
    }

    /// From `(index, exponent)` pairs; zero exponents are dropped and
    /// repeated indices accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (i, e) in pairs {
            if e > 0 {
                *m.entry(i).or_insert(0) += e;
            }
        }
        XMonomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (&i, &e) in &other.0 {
            *m.entry(i).or_insert(0) += e;
        }
        XMonomial(m)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|(i, e)| other.0.get(i).is_some_and(|f| f >= e))
    }

    fn expanded(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().flat_map(|(&i, &e)| std::iter::repeat_n(i, e as usize))
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial generator. All `X` generators sort before all `Y` ones;
/// `Y` generators sort by their index monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(u32),
    Y(XMonomial),
}

impl Generator {
    /// `y[1]`
    pub fn y_one() -> Self {
        Generator::Y(XMonomial::one())
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Generator::Y(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i) => write!(f, "x{i}"),
            Generator::Y(u) => write!(f, "y[{u}]"),
        }
    }
}

/// A monic monomial over `X ∪ Y`.
///
/// The order is the display order: higher total degree first, then the
/// sorted generator sequences compared lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(BTreeMap::from([(g, 1)]))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (g, e) in pairs {
            if e > 0 {
                *m.entry(g).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn factors(&self) -> &BTreeMap<Generator, u32> {
        &self.0
    }

    pub fn exponent(&self, g: &Generator) -> u32 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, &e) in &other.0 {
            *m.entry(g.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Sets the exponent of `g`, removing it when zero.
    pub fn with_exponent(&self, g: &Generator, e: u32) -> Self {
        let mut m = self.0.clone();
        if e == 0 {
            m.remove(g);
        } else {
            m.insert(g.clone(), e);
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|(g, e)| other.0.get(g).is_some_and(|f| f >= e))
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = other.0.clone();
        for (g, e) in &self.0 {
            let left = m[g] - e;
            if left == 0 {
                m.remove(g);
            } else {
                m.insert(g.clone(), left);
            }
        }
        Some(Monomial(m))
    }

    /// Splits into the `X` part and the `Y` part.
    pub fn split(&self) -> (XMonomial, Monomial) {
        let mut x = BTreeMap::new();
        let mut y = BTreeMap::new();
        for (g, &e) in &self.0 {
            match g {
                Generator::X(i) => {
                    x.insert(*i, e);
                }
                Generator::Y(_) => {
                    y.insert(g.clone(), e);
                }
            }
        }
        (XMonomial(x), Monomial(y))
    }

    pub fn from_x(u: &XMonomial) -> Self {
        Monomial(u.0.iter().map(|(&i, &e)| (Generator::X(i), e)).collect())
    }

    pub fn is_pure_y(&self) -> bool {
        self.0.keys().all(Generator::is_y)
    }

    /// Total degree of the `Y` generators other than `y[1]`.
    pub fn other_y_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| matches!(g, Generator::Y(u) if !u.is_one()))
            .map(|(_, e)| e)
            .sum()
    }

    fn expanded(&self) -> impl Iterator<Item = &Generator> + '_ {
        self.0.iter().flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial with rational coefficients; zero coefficients are never
/// stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreePoly(BTreeMap<Monomial, Rational>);

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(Rational::one(), Monomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = BTreeMap::new();
        if !c.is_zero() {
            p.insert(m, c);
        }
        FreePoly(p)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn x(i: u32) -> Self {
        Self::monomial(Monomial::generator(Generator::X(i)))
    }

    pub fn y(u: XMonomial) -> Self {
        Self::monomial(Monomial::generator(Generator::Y(u)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = FreePoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Terms in display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return FreePoly::zero();
        }
        FreePoly(self.0.iter().map(|(m, k)| (m.clone(), k * c)).collect())
    }

    /// Applies `f` to every monomial and sums the results with the original
    /// coefficients.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut out = FreePoly::zero();
        for (m, c) in &self.0 {
            out.add_term(f(m), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FreePoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FreePoly {
            type Output = FreePoly;
            fn $m(self, rhs: FreePoly) -> FreePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.0.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
