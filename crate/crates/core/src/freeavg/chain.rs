//! Strictly ascending chains of averaging ideals in `F_X`, `X` nonempty.

use std::fmt;

use thiserror::Error;

use super::{Generator, Monomial, XMonomial};

/// An ideal of `F_X` generated by monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(generators: Vec<Monomial>) -> Self {
        MonomialIdeal { generators }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Monomial membership is divisibility by some generator.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Ideals generated by products of `Y` generators are closed under
    /// `f_X`: each such product is `f_X` of something, so `f(a g) = f(a) g`.
    pub fn is_averaging_ideal(&self) -> bool {
        self.generators.iter().all(Monomial::is_pure_y)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("F over the empty set is noetherian; no strictly ascending chain exists")]
    EmptyX,
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("ideal {0} is not an averaging ideal")]
    NotAveraging(usize),
    #[error("inclusion of ideal {0} in its successor is not strict")]
    NotStrict(usize),
}

/// `I_i = (y[x1], y[x1^2], ..., y[x1^i])` for `i = 1..=n`, with each
/// inclusion checked to be strict.
pub fn chain_witness(x_count: u32, n: usize) -> Result<Vec<MonomialIdeal>, ChainError> {
    if x_count == 0 {
        return Err(ChainError::EmptyX);
    }
    if n == 0 {
        return Err(ChainError::EmptyChain);
    }
    let gen = |k: u32| Monomial::generator(Generator::Y(XMonomial::from_pairs([(1, k)])));
    let chain: Vec<MonomialIdeal> = (1..=n as u32)
        .map(|i| MonomialIdeal::new((1..=i).map(gen).collect()))
        .collect();
    for (i, ideal) in chain.iter().enumerate() {
        if !ideal.is_averaging_ideal() {
            return Err(ChainError::NotAveraging(i + 1));
        }
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let new_gen = pair[1].generators().last().expect("nonempty");
        if !pair[1].contains_ideal(&pair[0]) || pair[0].contains(new_gen) {
            return Err(ChainError::NotStrict(i + 1));
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains() {
        let c = chain_witness(1, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[2].to_string(), "(y[x1], y[x1^2], y[x1^3])");
        assert_eq!(chain_witness(1, 1).unwrap().len(), 1);
        assert_eq!(chain_witness(0, 2), Err(ChainError::EmptyX));
        assert_eq!(chain_witness(2, 0), Err(ChainError::EmptyChain));
    }

    #[test]
    fn membership_is_divisibility() {
        let c = chain_witness(1, 2).unwrap();
        let m = Monomial::from_pairs([
            (Generator::X(2), 1),
            (Generator::Y(XMonomial::from_pairs([(1, 2)])), 1),
        ]);
        assert!(c[1].contains(&m));
        assert!(!c[0].contains(&m));
        let not_averaging = MonomialIdeal::new(vec![Monomial::generator(Generator::X(1))]);
        assert!(!not_averaging.is_averaging_ideal());
    }
}
