//! Small Lie algebras with exact structure constants and their
//! finite-dimensional representations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{parse_q, qint, Q};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("unknown algebra `{0}` (expected sl2, so3, so4 or so5)")]
    UnknownAlgebra(String),
    #[error("unknown representation `{label}` for {algebra}")]
    UnknownRep { algebra: String, label: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("matrix is not in the span of the basis")]
    NotInSpan,
    #[error("representation is not a homomorphism: [T_{a}, T_{b}] fails")]
    NotHomomorphism { a: usize, b: usize },
    #[error("invariant form is degenerate")]
    DegenerateForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraName {
    Sl2,
    So3,
    So4,
    So5,
}

impl FromStr for AlgebraName {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sl2" => Ok(Self::Sl2),
            "so3" => Ok(Self::So3),
            "so4" => Ok(Self::So4),
            "so5" => Ok(Self::So5),
            other => Err(LieError::UnknownAlgebra(other.to_string())),
        }
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sl2 => "sl2",
            Self::So3 => "so3",
            Self::So4 => "so4",
            Self::So5 => "so5",
        })
    }
}

/// Structure constants `[T_a, T_b] = f_{ab}^c T_c`, the trace form κ of the
/// defining representation and its inverse.
#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    pub name: AlgebraName,
    pub generator_names: Vec<String>,
    structure: Vec<Q>,
    pub kappa: Matrix<Q>,
    pub kappa_inv: Matrix<Q>,
    pub defining: Vec<Matrix<Q>>,
}

/// Solves `m = Σ_k x_k basis_k` exactly.
pub fn express_in_basis(basis: &[Matrix<Q>], m: &Matrix<Q>) -> Result<Vec<Q>, LieError> {
    let unknowns = basis.len();
    let eqs = m.rows() * m.cols();
    // augmented system, one row per matrix entry
    let mut rows: Vec<Vec<Q>> = (0..eqs)
        .map(|k| {
            let (r, c) = (k / m.cols(), k % m.cols());
            let mut row: Vec<Q> = basis.iter().map(|b| b.get(r, c).clone()).collect();
            row.push(m.get(r, c).clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..eqs).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = Q::one() / rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(LieError::NotInSpan);
    }
    let mut x = vec![Q::zero(); unknowns];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[r][unknowns].clone();
    }
    Ok(x)
}

fn invert(m: &Matrix<Q>) -> Result<Matrix<Q>, LieError> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    let basis: Vec<Matrix<Q>> = (0..n).map(|c| Matrix::from_fn(n, 1, |r, _| m.get(r, c).clone())).collect();
    for k in 0..n {
        let e = Matrix::from_fn(n, 1, |r, _| if r == k { Q::one() } else { Q::zero() });
        cols.push(express_in_basis(&basis, &e).map_err(|_| LieError::DegenerateForm)?);
    }
    Ok(Matrix::from_fn(n, n, |r, c| cols[c][r].clone()))
}

impl LieAlgebraSpec {
    fn from_defining(name: AlgebraName, generator_names: Vec<String>, defining: Vec<Matrix<Q>>) -> Result<Self, LieError> {
        let dim = defining.len();
        let mut structure = vec![Q::zero(); dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let bracket = defining[a].commutator(&defining[b]);
                let coords = express_in_basis(&defining, &bracket)?;
                for (c, v) in coords.into_iter().enumerate() {
                    structure[(a * dim + b) * dim + c] = v;
                }
            }
        }
        let kappa = Matrix::from_fn(dim, dim, |a, b| defining[a].mul(&defining[b]).trace());
        let kappa_inv = invert(&kappa)?;
        Ok(Self { name, generator_names, structure, kappa, kappa_inv, defining })
    }

    pub fn dim(&self) -> usize {
        self.generator_names.len()
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> &Q {
        let d = self.dim();
        &self.structure[(a * d + b) * d + c]
    }

    /// Exact check of `f_{ab}^c = −f_{ba}^c`.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| *self.f(a, b, c) == -self.f(b, a, c).clone())))
    }

    /// Exact check of the Jacobi identity on the structure constants.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let mut sum = Q::zero();
                        for m in 0..d {
                            sum += self.f(a, b, m) * self.f(m, c, e);
                            sum += self.f(b, c, m) * self.f(m, a, e);
                            sum += self.f(c, a, m) * self.f(m, b, e);
                        }
                        if !sum.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `κ([x,y],z) + κ(y,[x,z]) = 0` on all basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let d = self.dim();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut sum = Q::zero();
                    for m in 0..d {
                        sum += self.f(x, y, m) * self.kappa.get(m, z);
                        sum += self.f(x, z, m) * self.kappa.get(y, m);
                    }
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks `[ρ(T_a), ρ(T_b)] = f_{ab}^c ρ(T_c)` exactly.
    pub fn check_homomorphism(&self, rep: &[Matrix<Q>]) -> Result<(), LieError> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let lhs = rep[a].commutator(&rep[b]);
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (c, gen) in rep.iter().enumerate() {
                    rhs.add_scaled(self.f(a, b, c), gen);
                }
                if lhs != rhs {
                    return Err(LieError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    /// `(ad T_a)_{cb} = f_{ab}^c`.
    pub fn adjoint_rep(&self) -> Vec<Matrix<Q>> {
        let d = self.dim();
        (0..d).map(|a| Matrix::from_fn(d, d, |c, b| self.f(a, b, c).clone())).collect()
    }

    /// Quadratic Casimir `κ^{ab} ρ(T_a) ρ(T_b)` of a representation.
    pub fn casimir(&self, rep: &[Matrix<Q>]) -> Matrix<Q> {
        let dim = rep[0].rows();
        let mut out = Matrix::zeros(dim, dim);
        for (a, b, k) in self.kappa_inv.entries() {
            if !k.is_zero() {
                out.add_scaled(k, &rep[a].mul(&rep[b]));
            }
        }
        out
    }

    /// Parses a site label and builds the representation matrices.
    ///
    /// sl2 takes a spin (`1/2`, `1`, `3/2`, …) or `adjoint`; the so-algebras
    /// take `vector` or `adjoint`.
    pub fn representation(&self, label: &str) -> Result<Vec<Matrix<Q>>, LieError> {
        let label = label.trim();
        let unknown = || LieError::UnknownRep { algebra: self.name.to_string(), label: label.to_string() };
        match (self.name, label) {
            (_, "adjoint") => Ok(self.adjoint_rep()),
            (AlgebraName::Sl2, _) => {
                let spin = parse_q(label).map_err(|_| unknown())?;
                let twice = spin.clone() * qint(2);
                if !twice.is_integer() || twice < qint(0) {
                    return Err(unknown());
                }
                let two_j = twice.to_integer().try_into().map_err(|_| unknown())?;
                Ok(sl2_spin_rep(two_j))
            }
            (_, "vector" | "defining") => Ok(self.defining.clone()),
            (_, "spinor") => Err(LieError::Unsupported(format!(
                "spinor representations of {} are not defined over the rationals",
                self.name
            ))),
            _ => Err(unknown()),
        }
    }
}

/// Spin-j representation of sl2 in the basis `e, h, f` with `2j = two_j`:
/// `h v_k = (2j − 2k) v_k`, `f v_k = v_{k+1}`, `e v_k = k(2j − k + 1) v_{k−1}`.
pub fn sl2_spin_rep(two_j: usize) -> Vec<Matrix<Q>> {
    let n = two_j + 1;
    let tj = two_j as i64;
    let e = Matrix::from_fn(n, n, |r, c| if c == r + 1 { qint(c as i64 * (tj - c as i64 + 1)) } else { Q::zero() });
    let h = Matrix::from_fn(n, n, |r, c| if r == c { qint(tj - 2 * r as i64) } else { Q::zero() });
    let f = Matrix::from_fn(n, n, |r, c| if r == c + 1 { Q::one() } else { Q::zero() });
    vec![e, h, f]
}

fn so_defining(n: usize) -> (Vec<String>, Vec<Matrix<Q>>) {
    let mut names = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            names.push(format!("L{}{}", i + 1, j + 1));
            gens.push(Matrix::from_fn(n, n, |r, c| {
                if r == i && c == j {
                    Q::one()
                } else if r == j && c == i {
                    -Q::one()
                } else {
                    Q::zero()
                }
            }));
        }
    }
    (names, gens)
}

/// One of the built-in algebras with exact data.
pub fn builtin_algebra(name: AlgebraName) -> LieAlgebraSpec {
    let (names, gens) = match name {
        AlgebraName::Sl2 => (vec!["e".into(), "h".into(), "f".into()], sl2_spin_rep(1)),
        AlgebraName::So3 => so_defining(3),
        AlgebraName::So4 => so_defining(4),
        AlgebraName::So5 => so_defining(5),
    };
    LieAlgebraSpec::from_defining(name, names, gens).expect("built-in algebras are semisimple")
}
