//! Ladder algebra of the single-variable vertex and its fourth-order
//! vertex operator.
//!
//! The algebra is generated by `N`, `A`, `A†` with
//! `[N, A†] = A†`, `[N, A] = −A`, `A†A = R_α(N)`, `AA† = R_α(N+1)`, and acts
//! on the basis `C_n` (`n = 0..=min(ν₁, ν₂)`) of Gegenbauer polynomials
//! `C_n^{(α)}(1 − 2X)`. All matrices are exact over `ℚ(i)`; a floating
//! diagonalization is only used for spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{q, qint, Field, Q, QI};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("nu_{index} = {value} is not a nonnegative integer")]
    BadNu { index: usize, value: String },
    #[error("denominator n + alpha vanishes at n = {0}")]
    DenominatorCollision(usize),
    #[error("R_alpha is singular at n = {0}")]
    Singular(String),
    #[error("(N + alpha)^2 - 1 is singular at n = {0}")]
    SingularShift(usize),
    #[error("expansion has {len} coefficients but the space has dimension {dim}")]
    LengthOverflow { len: usize, dim: usize },
}

/// Quantum numbers at a vertex: `d`, weights `Δ₁, Δ₂, Δ₃`, spins
/// `l₁, l₂, ℓ₂` and the additive constant `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexParams {
    pub d: i64,
    pub weights: [QI; 3],
    pub spins: [u32; 3],
    pub energy: QI,
}

impl VertexParams {
    /// `α = ℓ₂ + (d − 3)/2`
    pub fn alpha(&self) -> Q {
        qint(self.spins[2] as i64) + q(self.d - 3, 2)
    }

    /// `ν_k = l_k − ℓ₂`
    pub fn nu(&self) -> [i64; 2] {
        let el2 = self.spins[2] as i64;
        [self.spins[0] as i64 - el2, self.spins[1] as i64 - el2]
    }

    /// `γ_j = −i(Δ_j − d/2)`, so that `Δ_j = d/2 + iγ_j`.
    pub fn gamma(&self) -> [QI; 3] {
        let half_d = QI::real(q(self.d, 2));
        let minus_i = -QI::i();
        self.weights.clone().map(|w| minus_i.mul_ref(&(w - half_d.clone())))
    }

    pub fn algebra(&self) -> AlgebraParams {
        let [n1, n2] = self.nu();
        AlgebraParams {
            alpha: QI::real(self.alpha()),
            nu1: QI::from_int(n1),
            nu2: QI::from_int(n2),
        }
    }

    pub fn coupling(&self) -> Coupling {
        Coupling { gamma: self.gamma(), energy: self.energy.clone() }
    }
}

/// The parameters `(α, ν₁, ν₂)` the algebra depends on.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraParams {
    pub alpha: QI,
    pub nu1: QI,
    pub nu2: QI,
}

impl AlgebraParams {
    pub fn new(alpha: Q, nu1: i64, nu2: i64) -> Self {
        Self { alpha: QI::real(alpha), nu1: QI::from_int(nu1), nu2: QI::from_int(nu2) }
    }

    fn nu_int(&self) -> Result<[usize; 2], VertexError> {
        let mut out = [0; 2];
        for (k, nu) in [&self.nu1, &self.nu2].into_iter().enumerate() {
            let ok = nu.is_real() && nu.re.is_integer() && nu.re >= Q::zero();
            if !ok {
                return Err(VertexError::BadNu { index: k + 1, value: nu.to_string() });
            }
            out[k] = usize::try_from(nu.re.to_integer()).map_err(|_| VertexError::BadNu {
                index: k + 1,
                value: nu.to_string(),
            })?;
        }
        Ok(out)
    }

    /// `K = (ν₁+α)(ν₂+α)(ν₁+α+1)(ν₂+α+1)`
    pub fn k_constant(&self) -> QI {
        let a = &self.alpha;
        let one = QI::one();
        let p1 = self.nu1.add_ref(a);
        let p2 = self.nu2.add_ref(a);
        let p3 = p1.add_ref(&one);
        let p4 = p2.add_ref(&one);
        p1.mul_ref(&p2).mul_ref(&p3).mul_ref(&p4)
    }
}

/// The weight-dependent data `γ₁, γ₂, γ₃` and `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub gamma: [QI; 3],
    pub energy: QI,
}

impl Coupling {
    pub fn real(g1: Q, g2: Q, g3: Q, energy: Q) -> Self {
        Self { gamma: [QI::real(g1), QI::real(g2), QI::real(g3)], energy: QI::real(energy) }
    }
}

/// `R_α(n) = n(n+2α−1)/((n+α−1)(n+α)) · (n+ν₁+2α)(n−ν₁−1)(n+ν₂+2α)(n−ν₂−1)`
///
/// The leading factor `n` is applied first, so `R_α(0) = 0` for every `α`,
/// matching `A C₀ = 0`. Without this, `α = 1` would give `0/0` at `n = 0`.
pub fn r_alpha(n: &QI, p: &AlgebraParams) -> Result<QI, VertexError> {
    if n.is_zero() {
        return Ok(QI::zero());
    }
    let one = QI::one();
    let two_a = p.alpha.add_ref(&p.alpha);
    let denom = n.add_ref(&p.alpha).sub_ref(&one).mul_ref(&n.add_ref(&p.alpha));
    if denom.is_zero() {
        return Err(VertexError::Singular(n.to_string()));
    }
    let lead = n.mul_ref(&n.add_ref(&two_a).sub_ref(&one)) / denom;
    let f1 = n.add_ref(&p.nu1).add_ref(&two_a);
    let f2 = n.sub_ref(&p.nu1).sub_ref(&one);
    let f3 = n.add_ref(&p.nu2).add_ref(&two_a);
    let f4 = n.sub_ref(&p.nu2).sub_ref(&one);
    Ok(lead.mul_ref(&f1).mul_ref(&f2).mul_ref(&f3).mul_ref(&f4))
}

/// `N`, `A`, `A†` on `C₀..C_{n_max}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexRep {
    pub params: AlgebraParams,
    pub n_max: usize,
    pub n: Matrix<QI>,
    pub a: Matrix<QI>,
    pub a_dag: Matrix<QI>,
}

pub fn build_rep(p: &AlgebraParams) -> Result<VertexRep, VertexError> {
    let [nu1, nu2] = p.nu_int()?;
    let n_max = nu1.min(nu2);
    let dim = n_max + 1;
    let two_a = p.alpha.add_ref(&p.alpha);
    let one = QI::one();
    let mut n_mat = Matrix::zeros(dim, dim);
    let mut a = Matrix::zeros(dim, dim);
    let mut a_dag = Matrix::zeros(dim, dim);
    for n in 0..dim {
        let nq = QI::from_int(n as i64);
        n_mat.set(n, n, nq.clone());
        let shift = nq.add_ref(&p.alpha);
        if shift.is_zero() {
            return Err(VertexError::DenominatorCollision(n));
        }
        if n > 0 {
            // A C_n = (n+ν₁+2α)(n+ν₂+2α)(n+2α−1)/(n+α) C_{n−1}
            let v = nq
                .add_ref(&p.nu1)
                .add_ref(&two_a)
                .mul_ref(&nq.add_ref(&p.nu2).add_ref(&two_a))
                .mul_ref(&nq.add_ref(&two_a).sub_ref(&one))
                / shift.clone();
            a.set(n - 1, n, v);
        }
        if n + 1 < dim {
            // A† C_n = (n−ν₁)(n−ν₂)(n+1)/(n+α) C_{n+1}
            let v = nq.sub_ref(&p.nu1).mul_ref(&nq.sub_ref(&p.nu2)).mul_ref(&nq.add_ref(&one)) / shift;
            a_dag.set(n + 1, n, v);
        }
    }
    Ok(VertexRep { params: p.clone(), n_max, n: n_mat, a, a_dag })
}

/// Outcome of checking the defining relations exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub n_adag: bool,
    pub n_a: bool,
    pub adag_a: bool,
    pub a_adag: bool,
}

impl RelationCheck {
    pub fn all(&self) -> bool {
        self.n_adag && self.n_a && self.adag_a && self.a_adag
    }
}

impl VertexRep {
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// `R_α(N + shift)` as a diagonal matrix.
    pub fn r_of_n(&self, shift: i64) -> Result<Matrix<QI>, VertexError> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for n in 0..dim {
            m.set(n, n, r_alpha(&QI::from_int(n as i64 + shift), &self.params)?);
        }
        Ok(m)
    }

    pub fn check_relations(&self) -> Result<RelationCheck, VertexError> {
        Ok(RelationCheck {
            n_adag: self.n.commutator(&self.a_dag) == self.a_dag,
            n_a: self.n.commutator(&self.a) == self.a.neg(),
            adag_a: self.a_dag.mul(&self.a) == self.r_of_n(0)?,
            a_adag: self.a.mul(&self.a_dag) == self.r_of_n(1)?,
        })
    }

    /// `N + α`
    pub fn shifted_n(&self) -> Matrix<QI> {
        self.n.add(&Matrix::scalar(self.dim(), self.params.alpha.clone()))
    }

    /// `(A − A†)/2i`
    pub fn s_operator(&self) -> Matrix<QI> {
        let factor = QI::new(Q::zero(), q(-1, 2));
        self.a.sub(&self.a_dag).scale(&factor)
    }
}

/// `(B†, B)` with `B† = S − i(2γ₁γ₂ + iγ₃)(N+α)` and
/// `B = S + i(2γ₁γ₂ − iγ₃)(N+α)`, `S = (A − A†)/2i`.
pub fn b_operators(rep: &VertexRep, c: &Coupling) -> (Matrix<QI>, Matrix<QI>) {
    let [g1, g2, g3] = &c.gamma;
    let i = QI::i();
    let two_g12 = g1.mul_ref(g2).scale(&qint(2));
    let c_dag = -i.mul_ref(&two_g12.add_ref(&i.mul_ref(g3)));
    let c_b = i.mul_ref(&two_g12.sub_ref(&i.mul_ref(g3)));
    let s = rep.s_operator();
    let na = rep.shifted_n();
    (s.add(&na.scale(&c_dag)), s.add(&na.scale(&c_b)))
}

/// `Γ = (1 + 4γ₁²)(1 + 4γ₂²)/4`
pub fn gamma_constant(c: &Coupling) -> QI {
    let one = QI::one();
    let four = QI::from_int(4);
    let [g1, g2, _] = &c.gamma;
    let f1 = one.add_ref(&four.mul_ref(&g1.mul_ref(g1)));
    let f2 = one.add_ref(&four.mul_ref(&g2.mul_ref(g2)));
    f1.mul_ref(&f2).scale(&q(1, 4))
}

/// `H = B†B − Γ(N+α)² + α(α−1)K/((N+α)²−1) + E`.
///
/// When `α(α−1) = 0` the third term is dropped before inverting, so
/// `α = 1` is allowed even though `(N+α)² − 1` is singular at `n = 0`.
pub fn build_h(rep: &VertexRep, c: &Coupling) -> Result<Matrix<QI>, VertexError> {
    let dim = rep.dim();
    let (b_dag, b) = b_operators(rep, c);
    let na = rep.shifted_n();
    let na2 = na.mul(&na);
    let mut h = b_dag.mul(&b);
    h.add_scaled(&-gamma_constant(c), &na2);
    let alpha = &rep.params.alpha;
    let prefactor = alpha.mul_ref(&alpha.sub_ref(&QI::one())).mul_ref(&rep.params.k_constant());
    if !prefactor.is_zero() {
        for n in 0..dim {
            let denom = na2.get(n, n).sub_ref(&QI::one());
            if denom.is_zero() {
                return Err(VertexError::SingularShift(n));
            }
            let v = h.get(n, n).add_ref(&(prefactor.clone() / denom));
            h.set(n, n, v);
        }
    }
    h.add_scaled(&QI::one(), &Matrix::scalar(dim, c.energy.clone()));
    Ok(h)
}

/// `H` for a vertex specified by its quantum numbers.
pub fn vertex_hamiltonian(p: &VertexParams) -> Result<(VertexRep, Matrix<QI>), VertexError> {
    let rep = build_rep(&p.algebra())?;
    let h = build_h(&rep, &p.coupling())?;
    Ok((rep, h))
}

/// The conditions `ᾱ = α`, `ν̄_k = −(2α + 1 + ν_k)` under which `N* = N`,
/// `A* = A†` extends to an anti-automorphism.
pub fn star_condition(p: &AlgebraParams) -> bool {
    let a = &p.alpha;
    let target = |nu: &QI| -(a.add_ref(a).add_ref(&QI::one()).add_ref(nu));
    a.conj() == *a && p.nu1.conj() == target(&p.nu1) && p.nu2.conj() == target(&p.nu2)
}

/// Characteristic polynomial `det(x − H)`, constant term first.
pub fn char_poly(h: &Matrix<QI>) -> Vec<QI> {
    h.char_poly()
}

/// Floating eigenvalues by complex Schur decomposition, sorted by real then
/// imaginary part.
pub fn spectrum(h: &Matrix<QI>) -> Vec<Complex64> {
    let n = h.rows();
    let m = DMatrix::from_fn(n, n, |r, c| h.get(r, c).to_complex());
    let mut eig: Vec<Complex64> = m.schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default();
    eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    eig
}

/// `|Im λ| ≤ tol · max(1, |λ|)` for every eigenvalue.
pub fn spectrum_is_real(eigenvalues: &[Complex64], tol: f64) -> bool {
    eigenvalues.iter().all(|z| z.im.abs() <= tol * z.norm().max(1.0))
}

/// Gegenbauer polynomial `C_n^{(α)}(s)` by the three-term recurrence
/// `(k+1) C_{k+1} = 2(k+α) s C_k − (k+2α−1) C_{k−1}`, over any field.
pub fn gegenbauer<T: Field>(alpha: &T, n: usize, s: &T) -> T {
    let int = |k: usize| (0..k).fold(T::zero(), |acc, _| acc + T::one());
    let two = int(2);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two.mul_ref(alpha).mul_ref(s);
    for k in 1..n {
        let kk = int(k);
        let next = (two.mul_ref(&kk.add_ref(alpha)).mul_ref(s).mul_ref(&cur)
            - kk.add_ref(&two.mul_ref(alpha)).sub_ref(&T::one()).mul_ref(&prev))
            / int(k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_n^{(α)}(1 − 2X)` in floating point.
pub fn gegenbauer_eval(alpha: f64, n: usize, x: f64) -> f64 {
    gegenbauer(&alpha, n, &(1.0 - 2.0 * x))
}

/// `C_n^{(α)}(1 − 2X)` exactly.
pub fn gegenbauer_exact(alpha: &Q, n: usize, x: &Q) -> Q {
    gegenbauer(alpha, n, &(Q::one() - qint(2) * x))
}

/// `Σ_n c_n C_n^{(α)}(1 − 2X)`.
pub fn evaluate_expansion(alpha: f64, coeffs: &[Complex64], x: f64) -> Complex64 {
    coeffs.iter().enumerate().map(|(n, c)| c * gegenbauer_eval(alpha, n, x)).sum()
}

/// `H` applied to a Gegenbauer expansion; shorter inputs are zero-padded.
pub fn apply_h_to_function(h: &Matrix<QI>, coeffs: &[QI]) -> Result<Vec<QI>, VertexError> {
    let dim = h.rows();
    if coeffs.len() > dim {
        return Err(VertexError::LengthOverflow { len: coeffs.len(), dim });
    }
    let mut v = coeffs.to_vec();
    v.resize(dim, QI::zero());
    Ok(h.mul_vec(&v))
}
