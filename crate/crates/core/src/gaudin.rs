//! Quadratic Gaudin Hamiltonians over tensor products of finite-dimensional
//! representations, and their OPE-channel limits.
//!
//! With Lax components `L_a(w) = Σ_i T_a^{(i)} / (w − w_i)` the quadratic
//! Hamiltonian is `H(w) = κ^{ab} L_a(w) L_b(w)`. For a channel tree the site
//! parameters become `w_i = f_i(ϖ)`, the spectral parameter becomes
//! `ϖ^{n}w + g_ρ(ϖ)` with `n = δ_ρ`, and the vertex operator is the ϖ⁰
//! coefficient of `ϖ^{2n} H`. All of this is done with exact Laurent series.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{fmt_q, Q};
use crate::laurent::{LaurentError, LaurentOperator, LaurentSeries};
use crate::lie::{LieAlgebraSpec, LieError};
use crate::matrix::Matrix;
use crate::trees::{ChannelTree, NodeRef, TreeError, VertexId};
use crate::wpoly::WPolynomial;

pub const MAX_TENSOR_DIM: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaudinError {
    #[error("spectral parameter {w} collides with site {site}")]
    PoleCollision { site: usize, w: String },
    #[error("tensor space of dimension {0} exceeds the cap {MAX_TENSOR_DIM}")]
    TooLarge(usize),
    #[error("expected {expected} site positions, got {found}")]
    SiteCount { expected: usize, found: usize },
    #[error("site positions are not channel polynomials")]
    NotChannel,
    #[error("site positions are not fixed rationals")]
    NotFixed,
    #[error("limit at vertex {vertex} diverges: leading order ϖ^{order}")]
    DivergentLimit { vertex: String, order: i32 },
    #[error("no nonzero coefficient below ϖ^{prec}; widen the truncation window")]
    WindowTooSmall { prec: i32 },
    #[error("the root vertex has no edge Casimir")]
    RootEdge,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Representation data shared by every positioning of the same sites.
#[derive(Debug)]
struct TensorSites {
    algebra: LieAlgebraSpec,
    labels: Vec<String>,
    dim: usize,
    /// `[site][generator]`, embedded in the full tensor space
    embedded: Vec<Vec<Matrix<Q>>>,
    /// `Ω_ij = κ^{ab} T_a^{(i)} T_b^{(j)}`, row-major `N × N`
    omega: Vec<Matrix<Q>>,
}

#[derive(Clone, Debug)]
pub enum SitePositions {
    Fixed(Vec<Q>),
    Channel(ChannelTree),
}

#[derive(Clone, Debug)]
pub struct SiteSystem {
    sites: Arc<TensorSites>,
    positions: SitePositions,
}

/// `I ⊗ … ⊗ op_k ⊗ … ⊗ I` with the listed factors at their sites.
fn embed(dims: &[usize], factors: &[(usize, &Matrix<Q>)]) -> Matrix<Q> {
    let mut out = Matrix::<Q>::identity(1);
    for (site, &d) in dims.iter().enumerate() {
        let factor = factors.iter().find(|(s, _)| *s == site).map(|(_, m)| (*m).clone());
        out = out.kron(&factor.unwrap_or_else(|| Matrix::identity(d)));
    }
    out
}

impl SiteSystem {
    /// Builds the tensor product of the given site representations, each
    /// checked to be a homomorphism of `algebra`.
    pub fn new(
        algebra: LieAlgebraSpec,
        labels: Vec<String>,
        reps: Vec<Vec<Matrix<Q>>>,
        positions: SitePositions,
    ) -> Result<Self, GaudinError> {
        let dims: Vec<usize> = reps.iter().map(|r| r[0].rows()).collect();
        let dim = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&x| x <= MAX_TENSOR_DIM));
        let dim = dim.ok_or_else(|| GaudinError::TooLarge(dims.iter().product()))?;
        for rep in &reps {
            algebra.check_homomorphism(rep)?;
        }
        let n = reps.len();
        let embedded: Vec<Vec<Matrix<Q>>> =
            reps.iter().enumerate().map(|(i, rep)| rep.iter().map(|t| embed(&dims, &[(i, t)])).collect()).collect();
        let mut omega = vec![Matrix::zeros(dim, dim); n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = Matrix::zeros(dim, dim);
                if i == j {
                    acc = embed(&dims, &[(i, &algebra.casimir(&reps[i]))]);
                } else {
                    for (a, b, k) in algebra.kappa_inv.entries() {
                        if !k.is_zero() {
                            acc.add_scaled(k, &embed(&dims, &[(i, &reps[i][a]), (j, &reps[j][b])]));
                        }
                    }
                }
                omega[j * n + i] = acc.clone();
                omega[i * n + j] = acc;
            }
        }
        let sites = TensorSites { algebra, labels, dim, embedded, omega };
        let system = Self { sites: Arc::new(sites), positions: SitePositions::Fixed(Vec::new()) };
        system.with_positions(positions)
    }

    /// Builds from site labels such as `"1/2"` or `"vector"`.
    pub fn from_labels(algebra: LieAlgebraSpec, labels: &[&str], positions: SitePositions) -> Result<Self, GaudinError> {
        let reps = labels.iter().map(|l| algebra.representation(l)).collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra, labels.iter().map(|s| s.to_string()).collect(), reps, positions)
    }

    /// Same sites, new positions.
    pub fn with_positions(&self, positions: SitePositions) -> Result<Self, GaudinError> {
        let expected = self.n_sites();
        let found = match &positions {
            SitePositions::Fixed(w) if w.is_empty() => expected,
            SitePositions::Fixed(w) => w.len(),
            SitePositions::Channel(t) => t.n(),
        };
        if found != expected {
            return Err(GaudinError::SiteCount { expected, found });
        }
        Ok(Self { sites: Arc::clone(&self.sites), positions })
    }

    pub fn algebra(&self) -> &LieAlgebraSpec {
        &self.sites.algebra
    }

    pub fn n_sites(&self) -> usize {
        self.sites.embedded.len()
    }

    pub fn dim(&self) -> usize {
        self.sites.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.sites.labels
    }

    pub fn positions(&self) -> &SitePositions {
        &self.positions
    }

    /// `T_a^{(i)}` acting on the full tensor space.
    pub fn site_generator(&self, site: usize, a: usize) -> &Matrix<Q> {
        &self.sites.embedded[site][a]
    }

    fn omega(&self, i: usize, j: usize) -> &Matrix<Q> {
        &self.sites.omega[i * self.n_sites() + j]
    }

    fn fixed_positions(&self) -> Result<&[Q], GaudinError> {
        match &self.positions {
            SitePositions::Fixed(w) if !w.is_empty() => Ok(w),
            _ => Err(GaudinError::NotFixed),
        }
    }

    fn channel(&self) -> Result<&ChannelTree, GaudinError> {
        match &self.positions {
            SitePositions::Channel(t) => Ok(t),
            SitePositions::Fixed(_) => Err(GaudinError::NotChannel),
        }
    }

    fn check_regular(&self, w: &Q) -> Result<&[Q], GaudinError> {
        let positions = self.fixed_positions()?;
        if let Some(site) = positions.iter().position(|wi| wi == w) {
            return Err(GaudinError::PoleCollision { site: site + 1, w: fmt_q(w) });
        }
        Ok(positions)
    }

    /// `L_a(w) = Σ_i T_a^{(i)} / (w − w_i)`.
    pub fn lax_component(&self, a: usize, w: &Q) -> Result<Matrix<Q>, GaudinError> {
        if a >= self.algebra().dim() {
            return Err(GaudinError::BadGenerator(a));
        }
        let positions = self.check_regular(w)?;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, wi) in positions.iter().enumerate() {
            out.add_scaled(&(Q::one() / (w - wi)), self.site_generator(i, a));
        }
        Ok(out)
    }

    /// `H(w) = κ^{ab} L_a(w) L_b(w)`, contracted literally.
    pub fn quadratic_hamiltonian(&self, w: &Q) -> Result<Matrix<Q>, GaudinError> {
        self.check_regular(w)?;
        let lax = (0..self.algebra().dim()).map(|a| self.lax_component(a, w)).collect::<Result<Vec<_>, _>>()?;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (a, b, k) in self.algebra().kappa_inv.entries() {
            if !k.is_zero() {
                out.add_scaled(k, &lax[a].mul(&lax[b]));
            }
        }
        Ok(out)
    }

    /// `Σ_i T_a^{(i)}`.
    pub fn diagonal_generator(&self, a: usize) -> Matrix<Q> {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for i in 0..self.n_sites() {
            out.add_assign(self.site_generator(i, a));
        }
        out
    }

    /// `κ^{ab} (Σ_{i∈I} T_a^{(i)}) (Σ_{i∈I} T_b^{(i)})` for 1-based site labels.
    pub fn partial_casimir(&self, labels: &[u32]) -> Matrix<Q> {
        let sums: Vec<Matrix<Q>> = (0..self.algebra().dim())
            .map(|a| {
                let mut s = Matrix::zeros(self.dim(), self.dim());
                for &l in labels {
                    s.add_assign(self.site_generator(l as usize - 1, a));
                }
                s
            })
            .collect();
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (a, b, k) in self.algebra().kappa_inv.entries() {
            if !k.is_zero() {
                out.add_scaled(k, &sums[a].mul(&sums[b]));
            }
        }
        out
    }

    /// `ϖ^{2n} H(ϖ^n w + g_ρ(ϖ); w_i = f_i(ϖ))` with `n = δ_ρ`, known for
    /// every exponent below `prec`.
    pub fn hamiltonian_series(&self, vertex: VertexId, w: &Q, prec: i32) -> Result<LaurentOperator<Q>, GaudinError> {
        let tree = self.channel()?;
        let n = tree.depth(NodeRef::Vertex(vertex))? as i32;
        let spectral = tree.g_poly(vertex)?.add(&WPolynomial::monomial(n, w.clone()));
        // every 1/(spectral − f_i) has order ≥ −n, so this precision suffices
        let inner_prec = prec - n;
        let factors = (1..=tree.n() as u32)
            .map(|i| {
                let denom = spectral.sub(&tree.f_poly(i)?);
                if denom.is_zero() {
                    return Err(GaudinError::PoleCollision { site: i as usize, w: fmt_q(w) });
                }
                Ok(LaurentSeries::inverse_of_poly(&denom, inner_prec)?)
            })
            .collect::<Result<Vec<_>, GaudinError>>()?;
        let sites = self.n_sites();
        let mut series = LaurentOperator::zero(self.dim(), prec - 2 * n);
        for i in 0..sites {
            for j in i..sites {
                let mut c = factors[i].mul(&factors[j]);
                if i != j {
                    c = c.scale(&Q::from_integer(2.into()));
                }
                series.accumulate(&c, self.omega(i, j));
            }
        }
        Ok(series.shift(2 * n))
    }

    /// Leading ϖ-order of the rescaled Hamiltonian at `vertex`.
    pub fn limit_order(&self, vertex: VertexId, w: &Q) -> Result<i32, GaudinError> {
        let series = self.hamiltonian_series(vertex, w, 1)?;
        series.order().ok_or(GaudinError::WindowTooSmall { prec: series.prec() })
    }

    /// `H_ρ(w) = lim_{ϖ→0} ϖ^{2n} H(…)`, the ϖ⁰ coefficient; fails on a
    /// negative leading order.
    pub fn ope_limit(&self, vertex: VertexId, w: &Q) -> Result<Matrix<Q>, GaudinError> {
        let tree = self.channel()?;
        let series = self.hamiltonian_series(vertex, w, 1)?;
        if let Some(order) = series.order().filter(|&o| o < 0) {
            return Err(GaudinError::DivergentLimit { vertex: tree.vertex_label(vertex), order });
        }
        Ok(series.coeff(0).expect("window covers ϖ^0"))
    }

    /// Pole structure of the limit at `vertex`: each site either drops out
    /// (`None`) or contributes `1/(w − x_i)` (`Some(x_i)`).
    pub fn limit_poles(&self, vertex: VertexId) -> Result<Vec<Option<Q>>, GaudinError> {
        let tree = self.channel()?;
        let n = tree.depth(NodeRef::Vertex(vertex))? as i32;
        let g = tree.g_poly(vertex)?;
        (1..=tree.n() as u32)
            .map(|i| {
                // ϖ^n / (ϖ^n w + h) with h = g − f_i
                let h = g.sub(&tree.f_poly(i)?);
                Ok(match h.order() {
                    Some(o) if o < n => None,
                    Some(o) if o == n => Some(-h.coeff(n)),
                    _ => Some(Q::zero()),
                })
            })
            .collect()
    }

    /// Coefficients of `w^{−k}`, `k = 0..=terms`, in the large-w expansion of
    /// `w² H_ρ(w)`; the `k = 0` term is the edge Casimir.
    pub fn inverse_w_expansion(&self, vertex: VertexId, terms: usize) -> Result<Vec<Matrix<Q>>, GaudinError> {
        let poles = self.limit_poles(vertex)?;
        let mut out = vec![Matrix::zeros(self.dim(), self.dim()); terms + 1];
        for (i, xi) in poles.iter().enumerate() {
            for (j, xj) in poles.iter().enumerate() {
                let (Some(xi), Some(xj)) = (xi, xj) else { continue };
                // w²/((w − x_i)(w − x_j)) = Σ_k w^{−k} Σ_{a+b=k} x_i^a x_j^b
                for (k, slot) in out.iter_mut().enumerate() {
                    let mut c = Q::zero();
                    for a in 0..=k {
                        c += pow(xi, a) * pow(xj, k - a);
                    }
                    slot.add_scaled(&c, self.omega(i, j));
                }
            }
        }
        Ok(out)
    }

    /// `C_ρ = lim_{w→∞} w² H_ρ(w)` for an internal edge.
    pub fn edge_casimir(&self, edge: VertexId) -> Result<Matrix<Q>, GaudinError> {
        if edge == self.channel()?.root() {
            return Err(GaudinError::RootEdge);
        }
        Ok(self.inverse_w_expansion(edge, 0)?.swap_remove(0))
    }

    /// `H_ρ(w)` assembled from [`Self::limit_poles`], independently of the
    /// ϖ-series route.
    pub fn limit_from_poles(&self, vertex: VertexId, w: &Q) -> Result<Matrix<Q>, GaudinError> {
        let tree = self.channel()?;
        let poles = self.limit_poles(vertex)?;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, xi) in poles.iter().enumerate() {
            for (j, xj) in poles.iter().enumerate() {
                let (Some(xi), Some(xj)) = (xi, xj) else { continue };
                if w == xi || w == xj {
                    return Err(GaudinError::DivergentLimit { vertex: tree.vertex_label(vertex), order: -1 });
                }
                out.add_scaled(&(Q::one() / ((w - xi) * (w - xj))), self.omega(i, j));
            }
        }
        Ok(out)
    }
}

fn pow(x: &Q, k: usize) -> Q {
    let mut out = Q::one();
    for _ in 0..k {
        out *= x;
    }
    out
}

/// Result of fitting `target = scale·reference + shift·I`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFit {
    pub scale: Q,
    pub shift: Q,
    pub exact: bool,
}

/// Fits one scalar and one identity shift from the entries, then checks the
/// affine relation exactly on the whole matrix.
pub fn affine_fit(target: &Matrix<Q>, reference: &Matrix<Q>) -> AffineFit {
    let n = reference.rows();
    let r0 = if n == 0 { Q::zero() } else { reference.get(0, 0).clone() };
    let t0 = if n == 0 { Q::zero() } else { target.get(0, 0).clone() };
    let pivot = reference.entries().find(|(r, c, v)| {
        let offset = if r == c { (*v).clone() - r0.clone() } else { (*v).clone() };
        !offset.is_zero()
    });
    let scale = match pivot {
        Some((r, c, v)) => {
            let (tv, rv) = if r == c {
                (target.get(r, c).clone() - t0.clone(), v.clone() - r0.clone())
            } else {
                (target.get(r, c).clone(), v.clone())
            };
            tv / rv
        }
        None => Q::one(),
    };
    let shift = t0 - &scale * r0;
    let candidate = reference.scale(&scale).add(&Matrix::scalar(n, shift.clone()));
    AffineFit { exact: candidate == *target, scale, shift }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qint};
    use crate::lie::{builtin_algebra, AlgebraName};

    fn sl2_fixed(spins: &[&str], positions: &[i64]) -> SiteSystem {
        let pos = SitePositions::Fixed(positions.iter().map(|&p| qint(p)).collect());
        SiteSystem::from_labels(builtin_algebra(AlgebraName::Sl2), spins, pos).unwrap()
    }

    fn sl2_channel(tree: &str, spin: &str) -> SiteSystem {
        let t = ChannelTree::parse(tree).unwrap();
        let spins = vec![spin; t.n()];
        SiteSystem::from_labels(builtin_algebra(AlgebraName::Sl2), &spins, SitePositions::Channel(t)).unwrap()
    }

    #[test]
    fn single_site_lax_is_the_generator() {
        let sys = sl2_fixed(&["1/2"], &[0]);
        for a in 0..3 {
            assert_eq!(sys.lax_component(a, &qint(1)).unwrap(), *sys.site_generator(0, a));
        }
    }

    #[test]
    fn two_site_lax_at_midpoint() {
        let sys = sl2_fixed(&["1/2", "1/2"], &[1, 3]);
        let w = qint(2);
        for a in 0..3 {
            let expected = sys.site_generator(0, a).sub(sys.site_generator(1, a)).scale(&(qint(2) / qint(3 - 1)));
            assert_eq!(sys.lax_component(a, &w).unwrap(), expected);
        }
    }

    #[test]
    fn pole_collision_is_reported() {
        let sys = sl2_fixed(&["1/2", "1/2"], &[0, 1]);
        assert!(matches!(sys.quadratic_hamiltonian(&qint(1)), Err(GaudinError::PoleCollision { site: 2, .. })));
        assert!(matches!(sys.lax_component(7, &qint(5)), Err(GaudinError::BadGenerator(7))));
    }

    #[test]
    fn hamiltonians_commute_exactly() {
        let sys = sl2_fixed(&["1/2", "1/2", "1/2"], &[0, 1, 2]);
        let h3 = sys.quadratic_hamiltonian(&qint(3)).unwrap();
        let h5 = sys.quadratic_hamiltonian(&qint(5)).unwrap();
        assert!(h3.commutator(&h5).is_zero());
        for a in 0..3 {
            assert!(sys.diagonal_generator(a).commutator(&h3).is_zero());
        }
    }

    #[test]
    fn omega_route_matches_literal_contraction() {
        let sys = sl2_fixed(&["1/2", "1", "1/2"], &[0, 2, 7]);
        let w = q(5, 3);
        let literal = sys.quadratic_hamiltonian(&w).unwrap();
        let positions = [qint(0), qint(2), qint(7)];
        let mut via_omega = Matrix::zeros(sys.dim(), sys.dim());
        for i in 0..3 {
            for j in 0..3 {
                via_omega.add_scaled(&(Q::one() / ((&w - &positions[i]) * (&w - &positions[j]))), sys.omega(i, j));
            }
        }
        assert_eq!(literal, via_omega);
    }

    #[test]
    fn root_limit_is_plain_expansion() {
        // at depth 0 no rescaling happens: leading order 0 and the limit
        // equals the pole-structure evaluation
        let sys = sl2_channel("((1,2),3);4", "1/2");
        let root = ChannelTree::parse("((1,2),3);4").unwrap().root();
        let w = q(7, 2);
        assert_eq!(sys.limit_order(root, &w).unwrap(), 0);
        assert_eq!(sys.ope_limit(root, &w).unwrap(), sys.limit_from_poles(root, &w).unwrap());
    }

    #[test]
    fn comb_limits_have_order_zero() {
        let tree = ChannelTree::comb(4).unwrap();
        let sys = sl2_channel("((1,2),3);4", "1/2");
        for v in tree.vertices() {
            for w in [q(5, 2), q(-3, 7), qint(4)] {
                assert_eq!(sys.limit_order(v, &w).unwrap(), 0);
                assert_eq!(sys.ope_limit(v, &w).unwrap(), sys.limit_from_poles(v, &w).unwrap());
            }
        }
    }

    #[test]
    fn limit_at_a_pole_diverges() {
        let tree = ChannelTree::comb(4).unwrap();
        let sys = sl2_channel("((1,2),3);4", "1/2");
        let deep = tree.internal_edges()[0];
        assert!(matches!(sys.ope_limit(deep, &qint(0)), Err(GaudinError::DivergentLimit { .. })));
    }

    #[test]
    fn edge_casimir_of_four_point_comb() {
        let tree = ChannelTree::comb(4).unwrap();
        let sys = sl2_channel("((1,2),3);4", "1/2");
        let edge = tree.internal_edges()[0];
        let cas = sys.edge_casimir(edge).unwrap();
        let oracle = sys.partial_casimir(&tree.leaves_below(edge).unwrap());
        let fit = affine_fit(&cas, &oracle);
        assert!(fit.exact);
        assert!(matches!(sys.edge_casimir(tree.root()), Err(GaudinError::RootEdge)));
    }

    #[test]
    fn single_site_partial_casimir_is_scalar() {
        let sys = sl2_fixed(&["1/2", "1"], &[0, 1]);
        assert_eq!(sys.partial_casimir(&[2]).scalar_value(), Some(qint(4)));
    }

    #[test]
    fn affine_fit_recovers_scale_and_shift() {
        let reference = Matrix::from_rows(2, 2, vec![qint(1), qint(2), qint(2), qint(0)]);
        let target = reference.scale(&q(3, 2)).add(&Matrix::scalar(2, qint(-5)));
        let fit = affine_fit(&target, &reference);
        assert_eq!((fit.scale, fit.shift, fit.exact), (q(3, 2), qint(-5), true));
        let bad = Matrix::from_rows(2, 2, vec![qint(1), qint(0), qint(1), qint(0)]);
        assert!(!affine_fit(&bad, &reference).exact);
    }

    #[test]
    fn tensor_cap_is_enforced() {
        let labels = vec!["3/2"; 7];
        let err = SiteSystem::from_labels(builtin_algebra(AlgebraName::Sl2), &labels, SitePositions::Fixed(vec![]));
        assert!(matches!(err, Err(GaudinError::TooLarge(16384))));
    }
}
