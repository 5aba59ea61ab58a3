//! Deciding whether one of the three averaging identity sets implies a
//! claimed equation: evaluate `lhs - rhs` at `v_i -> x_i` in the free object
//! of the hypothesis and test the normal form for zero.

use std::fmt;

use crate::freeavg::{eval_generic, FreePoly, Mode};
use crate::par::Execution;
use crate::terms::{parse_claims, ClaimsError, Equation, IdentitySet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The nonzero normal form of `lhs - rhs` at the generic point.
    Fails(FreePoly),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&FreePoly> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("HOLDS"),
            Verdict::Fails(w) => write!(f, "FAILS: {w}"),
        }
    }
}

pub fn decide(hypothesis: IdentitySet, claim: &Equation) -> Verdict {
    let diff = eval_generic(&claim.difference(), Mode::for_hypothesis(hypothesis));
    if diff.is_zero() {
        Verdict::Holds
    } else {
        Verdict::Fails(diff)
    }
}

/// Claims are decided independently; output order follows input order.
pub fn implies(hypothesis: IdentitySet, claims: &[Equation]) -> Vec<Verdict> {
    implies_with(Execution::default(), hypothesis, claims)
}

pub fn implies_with(exec: Execution, hypothesis: IdentitySet, claims: &[Equation]) -> Vec<Verdict> {
    exec.map(claims, |c| decide(hypothesis, c))
}

/// Parses a claims file (one equation per line, `#` comments) and decides it.
pub fn implies_text(hypothesis: IdentitySet, text: &str) -> Result<Vec<Verdict>, ClaimsError> {
    Ok(implies(hypothesis, &parse_claims(text)?))
}

pub fn all_hold(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(Verdict::holds)
}
