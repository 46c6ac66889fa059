//! Exact heat content through dense eigendecomposition of the symmetric
//! normalized Dirichlet operator.

use ndarray::Array2;

use super::{DirichletForm, GraphDomain};
use crate::error::{Error, Result};
use crate::real::Real;

/// Interiors beyond this size should use the walk approximation instead.
pub const MAX_DENSE_INTERIOR: usize = 512;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Eigendecomposition of the normalized Dirichlet operator of one domain:
/// ascending eigenvalues, orthonormal eigenvector columns, and the inverse
/// rows (the transposed columns, since the operator is symmetric).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    eigenvectors: Array2<T>,
    /// Per-mode product (sum of eigenvector entries) * (sum of inverse-row
    /// entries); heat content is the exponential mixture of these.
    mode_mass: Vec<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn new(domain: &GraphDomain) -> Result<Self> {
        Self::with_form(domain, DirichletForm::Escaping)
    }

    pub fn with_form(domain: &GraphDomain, form: DirichletForm) -> Result<Self> {
        let n = domain.interior_len();
        if n > MAX_DENSE_INTERIOR {
            return Err(Error::InteriorTooLarge {
                n,
                max: MAX_DENSE_INTERIOR,
            });
        }
        let op = dirichlet_operator(domain, form);
        let (eigenvalues, eigenvectors) = jacobi_eigen(op);
        let mode_mass = (0..n)
            .map(|i| {
                let col_sum: T = (0..n).map(|v| eigenvectors[(v, i)]).sum();
                // pi_i = phi_i^T for a symmetric operator.
                col_sum * col_sum
            })
            .collect();
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
            mode_mass,
        })
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, i: usize) -> Vec<T> {
        (0..self.eigenvalues.len())
            .map(|v| self.eigenvectors[(v, i)])
            .collect()
    }

    /// Row `i` of the inverse eigenvector matrix.
    pub fn inverse_row(&self, i: usize) -> Vec<T> {
        self.eigenvector(i)
    }

    /// Total heat left in the interior at diffusion time `s`.
    pub fn heat_content(&self, s: T) -> Result<T> {
        if s < T::zero() {
            return Err(Error::NegativeTime(s.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(self
            .eigenvalues
            .iter()
            .zip(&self.mode_mass)
            .map(|(&lam, &mass)| (-lam * s).exp() * mass)
            .sum())
    }

    /// Frobenius norm of `Phi Lambda Phi^{-1} - L`, for validation.
    pub fn reconstruction_error(&self, domain: &GraphDomain, form: DirichletForm) -> T {
        let n = self.eigenvalues.len();
        let op: Array2<T> = dirichlet_operator(domain, form);
        let mut err = T::zero();
        for v in 0..n {
            for w in 0..n {
                let recon: T = (0..n)
                    .map(|i| self.eigenvalues[i] * self.eigenvectors[(v, i)] * self.eigenvectors[(w, i)])
                    .sum();
                let d = recon - op[(v, w)];
                err += d * d;
            }
        }
        err.sqrt()
    }
}

/// Symmetric normalized Dirichlet operator: diagonal 1, off-diagonal
/// `-1/sqrt(d_v d_w)` on interior edges, with `d` chosen by `form`.
pub(crate) fn dirichlet_operator<T: Real>(domain: &GraphDomain, form: DirichletForm) -> Array2<T> {
    let n = domain.interior_len();
    let degrees = domain.degrees(form);
    let mut op = Array2::zeros((n, n));
    for v in 0..n {
        op[(v, v)] = T::one();
        let dv = T::of_u64(degrees[v] as u64);
        for &w in domain.interior_neighbors(v) {
            let w = w as usize;
            let dw = T::of_u64(degrees[w] as u64);
            op[(v, w)] = -(dv * dw).sqrt().recip();
        }
    }
    op
}

/// Heat content of one domain at time `s` via the spectral oracle.
pub fn exact_heat_content<T: Real>(domain: &GraphDomain, s: T) -> Result<T> {
    exact_heat_content_with(domain, s, DirichletForm::Escaping)
}

pub fn exact_heat_content_with<T: Real>(
    domain: &GraphDomain,
    s: T,
    form: DirichletForm,
) -> Result<T> {
    SpectralDecomposition::with_form(domain, form)?.heat_content(s)
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Returns
/// ascending eigenvalues and the matching orthonormal eigenvector columns.
fn jacobi_eigen<T: Real>(mut a: Array2<T>) -> (Vec<T>, Array2<T>) {
    let n = a.nrows();
    let mut v: Array2<T> = Array2::eye(n);
    if n <= 1 {
        let vals = (0..n).map(|i| a[(i, i)]).collect();
        return (vals, v);
    }

    let frob: T = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let tol = T::epsilon() * frob.max(T::one());

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: T = off_diagonal_norm(&a);
        if off <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= tol * T::of(1e-3) {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::of(2.0) * apq);
                let t = {
                    let denom = theta.abs() + (theta * theta + T::one()).sqrt();
                    let t = denom.recip();
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .partial_cmp(&a[(j, j)])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vecs = Array2::zeros((n, n));
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vecs[(row, new_col)] = v[(row, old_col)];
        }
    }
    (vals, vecs)
}

fn off_diagonal_norm<T: Real>(a: &Array2<T>) -> T {
    let n = a.nrows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}
