//! Laurent polynomials in the channel variable ϖ with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{fmt_q, Q};

/// Finite Laurent polynomial `Σ c_k ϖ^k`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WPolynomial {
    terms: BTreeMap<i32, Q>,
}

impl WPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, coeff: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn add_term(&mut self, exp: i32, coeff: Q) {
        let entry = self.terms.entry(exp).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Value at ϖ = 0; `None` if a negative power is present.
    pub fn at_zero(&self) -> Option<Q> {
        match self.order() {
            Some(e) if e < 0 => None,
            _ => Some(self.coeff(0)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    /// `[[exp, "p/q"], ...]` pairs in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<(i32, String)> {
        self.terms().map(|(e, c)| (e, fmt_q(c))).collect()
    }
}

impl fmt::Display for WPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "w^{e}")?,
                _ => write!(f, "{c}*w^{e}")?,
            }
        }
        Ok(())
    }
}
