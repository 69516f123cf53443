//! Shared numerical kernels: Hermitian eigendecomposition, quadrature rules,
//! and a one-sided Jacobi SVD for heavily graded matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Error;

/// Relative Hermiticity defect tolerated before eigendecomposition refuses
/// the input.
pub const TOL_HERM: f64 = 1e-12;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Largest singular value of a dense complex matrix.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Hermiticity defect `norm(m - m*)`.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    operator_norm(&(m - m.adjoint()))
}

/// Eigendecomposition of a Hermitian matrix, symmetrizing as `(m + m*)/2`
/// first. Fails if the Hermiticity defect exceeds `TOL_HERM` relative to the
/// norm. Returns eigenvalues ascending with matching orthonormal columns.
pub fn hermitian_eig(m: &CMat) -> Result<(DVector<f64>, CMat), Error> {
    let scale = operator_norm(m).max(1.0);
    let defect = hermiticity_defect(m);
    if defect > TOL_HERM * scale {
        return Err(Error::InvalidArgument(format!(
            "matrix is not Hermitian: defect {defect:.3e} exceeds {:.3e}",
            TOL_HERM * scale
        )));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vecs = CMat::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    Ok((vals, vecs))
}

/// Gauss-Hermite rule: nodes and weights for `∫ exp(-u²) f(u) du`.
///
/// Golub-Welsch on the symmetric Jacobi matrix of the Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = jac.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let w = eig.eigenvectors[(0, i)].powi(2) * std::f64::consts::PI.sqrt();
            (eig.eigenvalues[i], w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Gauss-Legendre rule on `[a, b]` via Newton iteration on the Legendre
/// polynomial.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `norm(u* u - 1)`.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.ncols();
    operator_norm(&(u.adjoint() * u - CMat::identity(n, n)))
}

/// `exp(i h)` for Hermitian `h`.
pub fn phase_exp(h: &CMat) -> Result<CMat, Error> {
    let (vals, v) = hermitian_eig(h)?;
    let d = CMat::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&t| Complex64::new(0.0, t).exp()),
    ));
    Ok(&v * d * v.adjoint())
}

/// Principal Hermitian logarithm of a unitary: the Hermitian `theta` with
/// `u = exp(i theta)` and `norm(theta) < pi/2`.
///
/// Requires the Hermitian part of `u` to be positive definite, which pins the
/// branch; callers step along a path in increments small enough to satisfy
/// this.
pub fn unitary_principal_log(u: &CMat) -> Result<CMat, Error> {
    let udef = unitarity_defect(u);
    if udef > 1e-8 {
        return Err(Error::InvalidArgument(format!(
            "matrix is not unitary: defect {udef:.3e}"
        )));
    }
    let c = (u + u.adjoint()).scale(0.5);
    let s = (u - u.adjoint()) * Complex64::new(0.0, -0.5);
    let (cvals, cvecs) = hermitian_eig(&c)?;
    if cvals.min() < 0.05 {
        return Err(Error::NumericalFailure(format!(
            "principal-log branch guard: Hermitian part has eigenvalue {:.3e}; \
             step the path in smaller increments",
            cvals.min()
        )));
    }
    let cinv = &cvecs
        * CMat::from_diagonal(&DVector::from_iterator(
            cvals.len(),
            cvals.iter().map(|&x| Complex64::new(1.0 / x, 0.0)),
        ))
        * cvecs.adjoint();
    // c and s commute (u is normal), so tan(theta) = s c^{-1} and the
    // spectral arctangent recovers theta on the principal branch
    let t = s * cinv;
    let t = (&t + t.adjoint()).scale(0.5);
    let (tvals, tvecs) = hermitian_eig(&t)?;
    let theta = &tvecs
        * CMat::from_diagonal(&DVector::from_iterator(
            tvals.len(),
            tvals.iter().map(|&x| Complex64::new(x.atan(), 0.0)),
        ))
        * tvecs.adjoint();
    let back = phase_exp(&theta)?;
    let resid = operator_norm(&(back - u));
    if resid > 1e-8 {
        return Err(Error::NumericalFailure(format!(
            "principal log reconstruction residual {resid:.3e}"
        )));
    }
    Ok(theta)
}

/// One-sided Jacobi SVD returning `(sigma, u, v)` with `m = u diag(sigma) v*`,
/// sigma descending. `u` comes from the rotated columns themselves, not from
/// a fresh product `m v / sigma`, which would lose the small directions to
/// cancellation.
///
/// For matrices of the form `D1 * W * D2` with well-conditioned `W` this
/// attains high relative accuracy on every singular value, which plain
/// Golub-Kahan bidiagonalization does not. Needed wherever the constructed
/// density on the Weyl grid (dynamic range far beyond 1/eps) enters a
/// spectral function.
pub fn jacobi_svd(m: &CMat) -> (DVector<f64>, CMat, CMat) {
    let n = m.ncols();
    let mut a = m.clone();
    let mut v = CMat::identity(n, n);
    let eps = 1e-15;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let cp = a.column(p);
                let cq = a.column(q);
                let app: f64 = cp.iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = cq.iter().map(|z| z.norm_sqr()).sum();
                let apq: Complex64 = cp.iter().zip(cq.iter()).map(|(x, y)| x.conj() * y).sum();
                if apq.norm() <= eps * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                // complex Jacobi rotation zeroing the (p,q) Gram entry
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..a.nrows() {
                    let xp = a[(i, p)];
                    let xq = a[(i, q)];
                    a[(i, p)] = xp * c - xq * phase.conj() * s;
                    a[(i, q)] = xp * phase * s + xq * c;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * phase.conj() * s;
                    v[(i, q)] = vp * phase * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sig: Vec<(f64, usize)> = (0..n)
        .map(|j| {
            let s: f64 = a.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (s, j)
        })
        .collect();
    sig.sort_by(|x, y| y.0.total_cmp(&x.0));
    let sigma = DVector::from_iterator(n, sig.iter().map(|&(s, _)| s));
    let us = CMat::from_columns(
        &sig.iter()
            .map(|&(s, j)| a.column(j).into_owned().unscale(s.max(f64::MIN_POSITIVE)))
            .collect::<Vec<_>>(),
    );
    let vs = CMat::from_columns(
        &sig.iter()
            .map(|&(_, j)| v.column(j).into_owned())
            .collect::<Vec<_>>(),
    );
    (sigma, us, vs)
}
