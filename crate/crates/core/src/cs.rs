//! BC₂ hyperbolic Calogero–Sutherland Hamiltonian and its Harish-Chandra
//! series.
//!
//! ```text
//! H = −∂₁² − ∂₂² + k_m(k_m−1)/2 · [sinh⁻²((u₁+u₂)/2) + sinh⁻²((u₁−u₂)/2)]
//!     + Σ_i [k_l(k_l−1) sinh⁻²(u_i) + k_s(k_s+2k_l−1)/4 · sinh⁻²(u_i/2)]
//! ```
//!
//! Series live in the chamber `u₁ > u₂ > 0`, where
//! `sinh⁻²(x) = 4 Σ_{n≥1} n e^{−2nx}`. A term `Γ_κ e^{⟨λ−κ,u⟩}` is keyed by
//! the shift `κ = (κ₁, κ₂)`, which ranges over the cone spanned by the
//! decaying directions `(1,−1)` and `(0,1)`. Truncation is by height
//! `h(κ) = 2κ₁ + κ₂`, the number of those steps.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{q, q_to_f64, qint, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CsError {
    #[error("resonant exponent: denominator vanishes at kappa = ({0}, {1})")]
    Resonance(i64, i64),
    #[error("resonant exponent: denominator vanishes at order {0}")]
    Resonance1(usize),
    #[error("series truncated at order {have}, but order {need} was requested")]
    Truncation { have: usize, need: usize },
    #[error("three-point kernel needs pairwise distinct points")]
    CoincidentPoints,
    #[error("points must all have the same dimension")]
    DimensionMismatch,
}

/// Root multiplicities `(k_s, k_m, k_l)` for the short, middle and long roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySet {
    pub k_s: Q,
    pub k_m: Q,
    pub k_l: Q,
}

impl MultiplicitySet {
    pub fn new(k_s: Q, k_m: Q, k_l: Q) -> Self {
        Self { k_s, k_m, k_l }
    }

    /// `k_s = Δ₄ − Δ₃`, `k_m = (Δ₂ − Δ₁ − (Δ₄ − Δ₃) + 1)/2`, `k_l = (d − 2)/2`.
    ///
    /// The parameters `a, b` of the four-point problem are `2a = Δ₂ − Δ₁`
    /// and `2b = Δ₃ − Δ₄`, so `k_s = −2b` and `k_m = a + b + 1/2`.
    pub fn from_cft(weights: [Q; 4], d: i64) -> Self {
        let [d1, d2, d3, d4] = weights;
        let d43 = d4 - d3;
        let d21 = d2 - d1;
        let k_m = (d21 - d43.clone() + Q::one()) / qint(2);
        Self { k_s: d43, k_m, k_l: q(d - 2, 2) }
    }

    /// Reassigns the three values to the three root lengths: the result has
    /// `(k_s, k_m, k_l) = (v[perm[0]], v[perm[1]], v[perm[2]])` where
    /// `v = (k_s, k_m, k_l)` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let v = [&self.k_s, &self.k_m, &self.k_l];
        Self::new(v[perm[0]].clone(), v[perm[1]].clone(), v[perm[2]].clone())
    }

    /// Prefactor of each `sinh⁻²((u₁±u₂)/2)`: `k_m(k_m−1)/2`.
    pub fn middle_coupling(&self) -> Q {
        &self.k_m * (&self.k_m - Q::one()) / qint(2)
    }

    /// Prefactor of `sinh⁻²(u_i)`: `k_l(k_l−1)`.
    pub fn long_coupling(&self) -> Q {
        &self.k_l * (&self.k_l - Q::one())
    }

    /// Prefactor of `sinh⁻²(u_i/2)`: `k_s(k_s+2k_l−1)/4`.
    pub fn short_coupling(&self) -> Q {
        &self.k_s * (&self.k_s + qint(2) * &self.k_l - Q::one()) / qint(4)
    }
}

pub type Kappa = (i64, i64);

/// Height `2κ₁ + κ₂`; `None` outside the cone `κ₁ ≥ 0, κ₁ + κ₂ ≥ 0`.
pub fn height(kappa: Kappa) -> Option<usize> {
    let (k1, k2) = kappa;
    (k1 >= 0 && k1 + k2 >= 0).then(|| (2 * k1 + k2) as usize)
}

/// All cone points of height at most `order`, by increasing height.
pub fn cone_points(order: usize) -> Vec<Kappa> {
    let mut out = Vec::new();
    for h in 0..=order as i64 {
        // κ = m(1,−1) + l(0,1) with m + l = h
        for m in 0..=h {
            out.push((m, h - 2 * m));
        }
    }
    out
}

/// Formal series `Σ_κ Γ_κ e^{⟨λ−κ, u⟩}` truncated at height `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSeries {
    pub lambda: (Q, Q),
    pub order: usize,
    coeffs: BTreeMap<Kappa, Q>,
}

impl ExpSeries {
    pub fn new(lambda: (Q, Q), order: usize) -> Self {
        Self { lambda, order, coeffs: BTreeMap::new() }
    }

    /// `e^{⟨λ,u⟩}` alone.
    pub fn exponential(lambda: (Q, Q), order: usize) -> Self {
        let mut s = Self::new(lambda, order);
        s.set((0, 0), Q::one());
        s
    }

    pub fn set(&mut self, kappa: Kappa, value: Q) {
        if height(kappa).is_some_and(|h| h <= self.order) {
            if value.is_zero() {
                self.coeffs.remove(&kappa);
            } else {
                self.coeffs.insert(kappa, value);
            }
        }
    }

    pub fn coeff(&self, kappa: Kappa) -> Q {
        self.coeffs.get(&kappa).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero coefficients in increasing `κ` order.
    pub fn iter(&self) -> impl Iterator<Item = (Kappa, &Q)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// `−(λ₁² + λ₂²)`
    pub fn eigenvalue(&self) -> Q {
        -(&self.lambda.0 * &self.lambda.0 + &self.lambda.1 * &self.lambda.1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient-wise `self − c·other`; both must share λ.
    pub fn sub_scaled(&self, c: &Q, other: &Self) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.coeffs.retain(|k, _| height(*k).is_some_and(|h| h <= out.order));
        for (k, v) in other.iter() {
            let value = out.coeff(k) - c * v;
            out.set(k, value);
        }
        out
    }

    /// Same coefficients, truncated at a lower order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut out = Self::new(self.lambda.clone(), order.min(self.order));
        for (k, v) in self.iter() {
            out.set(k, v.clone());
        }
        out
    }

    /// Floating evaluation at a chamber point `u₁ > u₂ > 0`.
    pub fn evaluate(&self, u: (f64, f64)) -> f64 {
        let (l1, l2) = (q_to_f64(&self.lambda.0), q_to_f64(&self.lambda.1));
        self.iter()
            .map(|((k1, k2), v)| q_to_f64(v) * ((l1 - k1 as f64) * u.0 + (l2 - k2 as f64) * u.1).exp())
            .sum()
    }
}

/// One potential species `c · sinh⁻²(⟨β,u⟩)` with `β` given as
/// `(β₁, β₂)/2` in integer halves.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTerm {
    pub coupling: Q,
    pub half_beta: (i64, i64),
}

/// The exponential expansion of the whole potential to a given height.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialExpansion {
    pub species: Vec<PotentialTerm>,
    pub order: usize,
    /// shift `κ` ↦ coefficient of `e^{−⟨κ,u⟩}` in `V(u)`
    pub terms: BTreeMap<Kappa, Q>,
}

impl PotentialExpansion {
    pub fn new(k: &MultiplicitySet, order: usize) -> Self {
        let mid = k.middle_coupling();
        let long = k.long_coupling();
        let short = k.short_coupling();
        let species = vec![
            PotentialTerm { coupling: mid.clone(), half_beta: (1, 1) },
            PotentialTerm { coupling: mid, half_beta: (1, -1) },
            PotentialTerm { coupling: long.clone(), half_beta: (2, 0) },
            PotentialTerm { coupling: long, half_beta: (0, 2) },
            PotentialTerm { coupling: short.clone(), half_beta: (1, 0) },
            PotentialTerm { coupling: short, half_beta: (0, 1) },
        ];
        let mut terms = BTreeMap::new();
        for s in &species {
            if s.coupling.is_zero() {
                continue;
            }
            // sinh⁻²(x) = 4 Σ n e^{−2nx}, and 2n⟨β,u⟩ = n⟨half_beta,u⟩
            for n in 1.. {
                let kappa = (n * s.half_beta.0, n * s.half_beta.1);
                match height(kappa) {
                    Some(h) if h <= order => {
                        let entry: &mut Q = terms.entry(kappa).or_insert_with(Q::zero);
                        *entry += &s.coupling * qint(4 * n);
                    }
                    _ => break,
                }
            }
        }
        terms.retain(|_, v: &mut Q| !v.is_zero());
        Self { species, order, terms }
    }
}

/// `H ψ` to height `order`, with the potential multiplied in as a series
/// product. The result's `(0,0)` coefficient is the eigenvalue for a
/// normalized ψ.
pub fn apply_hamiltonian(s: &ExpSeries, k: &MultiplicitySet, order: usize) -> Result<ExpSeries, CsError> {
    if s.order < order {
        return Err(CsError::Truncation { have: s.order, need: order });
    }
    let potential = PotentialExpansion::new(k, order);
    let (l1, l2) = &s.lambda;
    let mut out = ExpSeries::new(s.lambda.clone(), order);
    let mut acc: BTreeMap<Kappa, Q> = BTreeMap::new();
    for (kappa, g) in s.iter() {
        let Some(h) = height(kappa) else { continue };
        if h > order {
            continue;
        }
        // −Δ e^{⟨μ,u⟩} = −⟨μ,μ⟩ e^{⟨μ,u⟩}
        let m1 = l1 - qint(kappa.0);
        let m2 = l2 - qint(kappa.1);
        let lap = -(&m1 * &m1 + &m2 * &m2);
        *acc.entry(kappa).or_insert_with(Q::zero) += lap * g;
        for (shift, v) in &potential.terms {
            let target = (kappa.0 + shift.0, kappa.1 + shift.1);
            if height(target).is_some_and(|ht| ht <= order) {
                *acc.entry(target).or_insert_with(Q::zero) += v * g;
            }
        }
    }
    for (kappa, v) in acc {
        out.set(kappa, v);
    }
    Ok(out)
}

/// Harish-Chandra series `ψ_λ = e^{⟨λ,u⟩}(1 + Σ_{κ≠0} Γ_κ e^{−⟨κ,u⟩})`
/// solving `H ψ = −(λ₁²+λ₂²) ψ` through height `order`.
pub fn hc_series(lambda: (Q, Q), k: &MultiplicitySet, order: usize) -> Result<ExpSeries, CsError> {
    let mid = k.middle_coupling();
    let long = k.long_coupling();
    let short = k.short_coupling();
    // recursion shifts in root coordinates (m, l): κ = (m, l − m)
    let shifts = |n: i64| -> [((i64, i64), Q); 6] {
        let four_n = qint(4 * n);
        [
            ((n, 2 * n), &mid * &four_n),    // e^{−n(u₁+u₂)}
            ((n, 0), &mid * &four_n),        // e^{−n(u₁−u₂)}
            ((2 * n, 2 * n), &long * &four_n), // e^{−2n u₁}
            ((0, 2 * n), &long * &four_n),   // e^{−2n u₂}
            ((n, n), &short * &four_n),      // e^{−n u₁}
            ((0, n), &short * &four_n),      // e^{−n u₂}
        ]
    };
    let to_kappa = |(m, l): (i64, i64)| (m, l - m);
    let mut out = ExpSeries::exponential(lambda.clone(), order);
    let (l1, l2) = (&lambda.0, &lambda.1);
    for total in 1..=order as i64 {
        for m in 0..=total {
            let root = (m, total - m);
            let kappa = to_kappa(root);
            let mut numer = Q::zero();
            for n in 1..=total {
                for ((dm, dl), c) in shifts(n) {
                    let (pm, pl) = (root.0 - dm, root.1 - dl);
                    if pm < 0 || pl < 0 || c.is_zero() {
                        continue;
                    }
                    numer += c * out.coeff(to_kappa((pm, pl)));
                }
            }
            let (k1, k2) = (qint(kappa.0), qint(kappa.1));
            let denom = &k1 * &k1 + &k2 * &k2 - qint(2) * (&k1 * l1 + &k2 * l2);
            if denom.is_zero() {
                return Err(CsError::Resonance(kappa.0, kappa.1));
            }
            out.set(kappa, numer / denom);
        }
    }
    Ok(out)
}

/// One-variable series `Σ_j γ_j e^{(λ−j)u}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bc1Series {
    pub lambda: Q,
    pub coeffs: Vec<Q>,
}

/// Solves `−ψ'' + [c_long sinh⁻²(u) + c_short sinh⁻²(u/2)] ψ = −λ² ψ`
/// with `ψ ~ e^{λu}` through order `order`.
pub fn bc1_series(lambda: &Q, c_long: &Q, c_short: &Q, order: usize) -> Result<Bc1Series, CsError> {
    let mut coeffs = vec![Q::one()];
    for j in 1..=order {
        let mut numer = Q::zero();
        for n in 1..=j {
            numer += c_short * qint(4 * n as i64) * &coeffs[j - n];
            if 2 * n <= j {
                numer += c_long * qint(4 * n as i64) * &coeffs[j - 2 * n];
            }
        }
        let jq = qint(j as i64);
        let denom = &jq * &jq - qint(2) * lambda * &jq;
        if denom.is_zero() {
            return Err(CsError::Resonance1(j));
        }
        coeffs.push(numer / denom);
    }
    Ok(Bc1Series { lambda: lambda.clone(), coeffs })
}

/// `Σ_i w_i ψ_i`, e.g. the block as a combination of Harish-Chandra
/// functions with externally supplied weights.
#[derive(Clone, Debug, Default)]
pub struct HcCombination {
    pub terms: Vec<(Q, ExpSeries)>,
}

impl HcCombination {
    pub fn push(&mut self, weight: Q, series: ExpSeries) {
        self.terms.push((weight, series));
    }

    pub fn evaluate(&self, u: (f64, f64)) -> f64 {
        self.terms.iter().map(|(w, s)| q_to_f64(w) * s.evaluate(u)).sum()
    }
}

/// `|x₁₂|^{−Δ₁₂,₃} |x₂₃|^{−Δ₂₃,₁} |x₁₃|^{−Δ₁₃,₂}` with `Δ_{ij,k} = Δ_i + Δ_j − Δ_k`.
pub fn three_point_kernel(points: [&[f64]; 3], weights: [f64; 3]) -> Result<f64, CsError> {
    let [x1, x2, x3] = points;
    if x1.len() != x2.len() || x2.len() != x3.len() {
        return Err(CsError::DimensionMismatch);
    }
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
    let (d12, d23, d13) = (dist(x1, x2), dist(x2, x3), dist(x1, x3));
    if d12 == 0.0 || d23 == 0.0 || d13 == 0.0 {
        return Err(CsError::CoincidentPoints);
    }
    let [a1, a2, a3] = weights;
    Ok(d12.powf(-(a1 + a2 - a3)) * d23.powf(-(a2 + a3 - a1)) * d13.powf(-(a1 + a3 - a2)))
}
