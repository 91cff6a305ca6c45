//! Truncated Laurent series in ϖ, scalar and operator valued.
//!
//! A series knows its coefficients exactly for every exponent below its
//! precision bound `prec`; nothing is assumed about higher orders. Products
//! propagate the bound the usual way,
//! `prec(a·b) = min(low(a) + prec(b), low(b) + prec(a))`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{Field, Q};
use crate::matrix::Matrix;
use crate::wpoly::WPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("series has no nonzero coefficient below the precision bound {0}")]
    NoLeadingTerm(i32),
    #[error("operator dimensions differ: {0} vs {1}")]
    Dimension(usize, usize),
}

/// Scalar Laurent series `Σ_{e<prec} c_e ϖ^e` with coefficients from `low`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<T> {
    low: i32,
    coeffs: Vec<T>,
    prec: i32,
}

impl<T: Field> LaurentSeries<T> {
    pub fn zero(prec: i32) -> Self {
        Self { low: prec, coeffs: Vec::new(), prec }
    }

    /// Coefficients `coeffs[k]` at exponent `low + k`, truncated at `prec`.
    pub fn new(low: i32, coeffs: Vec<T>, prec: i32) -> Self {
        let mut s = Self { low, coeffs, prec };
        s.truncate();
        s.normalize();
        s
    }

    fn truncate(&mut self) {
        let keep = (self.prec - self.low).max(0) as usize;
        self.coeffs.truncate(keep);
    }

    /// Drops leading zeros so that `coeffs[0]` is nonzero when present.
    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.low += k as i32;
            }
            None => {
                self.coeffs.clear();
                self.low = self.prec;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn order(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// `None` above the precision bound.
    pub fn coeff(&self, e: i32) -> Option<T> {
        if e >= self.prec {
            return None;
        }
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            Some(T::zero())
        } else {
            Some(self.coeffs[k as usize].clone())
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let low = self.low.min(other.low).min(prec);
        let coeffs = (low..prec)
            .map(|e| self.coeff(e).unwrap_or_else(T::zero).add_ref(&other.coeff(e).unwrap_or_else(T::zero)))
            .collect();
        Self::new(low, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| factor.mul_ref(c)).collect(), self.prec)
    }

    /// Multiplication by `ϖ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { low: self.low + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.low + other.prec).min(other.low + self.prec);
        let low = self.low + other.low;
        let len = (prec - low).max(0) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (a_idx, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_idx, b) in other.coeffs.iter().enumerate() {
                let k = a_idx + b_idx;
                if k >= len {
                    break;
                }
                coeffs[k].add_assign_ref(&a.mul_ref(b));
            }
        }
        Self::new(low, coeffs, prec)
    }

    /// Multiplicative inverse; the relative precision (number of known
    /// terms from the leading one) is preserved.
    pub fn inverse(&self) -> Result<Self, LaurentError> {
        let v = self.order().ok_or(LaurentError::NoLeadingTerm(self.prec))?;
        let terms = (self.prec - v) as usize;
        let lead_inv = T::one() / self.coeffs[0].clone();
        let mut out: Vec<T> = Vec::with_capacity(terms);
        out.push(lead_inv.clone());
        for k in 1..terms {
            let mut acc = T::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc.add_assign_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(-(lead_inv.mul_ref(&acc)));
        }
        Ok(Self::new(-v, out, -v + terms as i32))
    }
}

impl LaurentSeries<Q> {
    /// The exact polynomial `p`, known up to (excluding) exponent `prec`.
    pub fn from_wpoly(p: &WPolynomial, prec: i32) -> Self {
        let low = p.order().unwrap_or(prec).min(prec);
        let coeffs = (low..prec).map(|e| p.coeff(e)).collect();
        Self::new(low, coeffs, prec)
    }

    /// `1/p` for an exact Laurent polynomial, known below `prec`.
    pub fn inverse_of_poly(p: &WPolynomial, prec: i32) -> Result<Self, LaurentError> {
        let v = p.order().ok_or(LaurentError::NoLeadingTerm(prec))?;
        // 1/p has order −v; it needs prec + v terms of p beyond its leading one.
        let needed = (prec + 2 * v).max(v + 1);
        Self::from_wpoly(p, needed).inverse()
    }
}

/// Operator-valued Laurent series: exponent of ϖ ↦ square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentOperator<T> {
    dim: usize,
    terms: BTreeMap<i32, Matrix<T>>,
    prec: i32,
}

impl<T: Field> LaurentOperator<T> {
    pub fn zero(dim: usize, prec: i32) -> Self {
        Self { dim, terms: BTreeMap::new(), prec }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (i32, Matrix<T>)>, prec: i32) -> Self {
        let mut s = Self::zero(dim, prec);
        for (e, m) in terms {
            s.add_term(e, &m);
        }
        s
    }

    /// Constant-matrix operator `m·ϖ^0`.
    pub fn constant(m: Matrix<T>, prec: i32) -> Self {
        let dim = m.rows();
        Self::from_terms(dim, [(0, m)], prec)
    }

    /// `series ⊗ m`, a scalar series times a constant matrix.
    pub fn from_scalar(series: &LaurentSeries<T>, m: &Matrix<T>) -> Self {
        let mut s = Self::zero(m.rows(), series.prec());
        if let Some(lo) = series.order() {
            for e in lo..series.prec() {
                let c = series.coeff(e).expect("below precision");
                if !c.is_zero() {
                    s.add_term(e, &m.scale(&c));
                }
            }
        }
        s
    }

    fn add_term(&mut self, e: i32, m: &Matrix<T>) {
        if e >= self.prec || m.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                existing.add_assign(m);
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, m.clone());
            }
        }
    }

    /// `self += factor ⊗ m` with a scalar series factor; precision drops to
    /// the factor's bound if that is lower.
    pub fn accumulate(&mut self, factor: &LaurentSeries<T>, m: &Matrix<T>) {
        self.prec = self.prec.min(factor.prec());
        self.terms.retain(|e, _| *e < factor.prec());
        if let Some(lo) = factor.order() {
            for e in lo..self.prec {
                let c = factor.coeff(e).expect("below precision");
                if !c.is_zero() {
                    self.add_term(e, &m.scale(&c));
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    /// `None` above the precision bound; zero matrix for absent terms.
    pub fn coeff(&self, e: i32) -> Option<Matrix<T>> {
        if e >= self.prec {
            return None;
        }
        Some(self.terms.get(&e).cloned().unwrap_or_else(|| Matrix::zeros(self.dim, self.dim)))
    }

    pub fn order(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Matrix<T>)> {
        self.terms.iter().map(|(e, m)| (*e, m))
    }

    pub fn leading(&self) -> Result<(i32, &Matrix<T>), LaurentError> {
        self.terms.iter().next().map(|(e, m)| (*e, m)).ok_or(LaurentError::NoLeadingTerm(self.prec))
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, m)| (e + k, m.clone())).collect(),
            prec: self.prec + k,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.dim != other.dim {
            return Err(LaurentError::Dimension(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.prec.min(other.prec));
        for (e, m) in self.terms().chain(other.terms()) {
            out.add_term(e, m);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.dim != other.dim {
            return Err(LaurentError::Dimension(self.dim, other.dim));
        }
        let lo_a = self.order().unwrap_or(self.prec);
        let lo_b = other.order().unwrap_or(other.prec);
        let prec = (lo_a + other.prec).min(lo_b + self.prec);
        let mut out = Self::zero(self.dim, prec);
        for (ea, a) in self.terms() {
            for (eb, b) in other.terms() {
                if ea + eb < prec {
                    out.add_term(ea + eb, &a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.dim, self.prec);
        for (e, m) in self.terms() {
            out.add_term(e, &m.scale(factor));
        }
        out
    }
}
