//! GNS realization, modular operators, modular flow with entire analytic
//! continuation, KMS checks, balanced weights and Connes cocycles.
//!
//! GNS vectors are element-shaped arrays with inner product
//! `<xi, eta> = sum_k trace(eta_k^* xi_k)`; the canonical map is
//! `Lambda(a) = a h^{1/2}`, the conjugation is `J xi = xi^*` and the modular
//! operator acts as `Delta^z xi = h^z xi h^{-z}`.

use num_complex::Complex64;

use crate::algebra::{c64, AlgebraElement, BlockAlgebra, PositiveElement, Weight};
use crate::error::{Error, Result};
use crate::numerics::CMat;

/// A map on GNS vectors in factored form `xi -> left . sigma(xi) . right`
/// where `sigma` is the identity or the adjoint (antilinear case).
#[derive(Debug, Clone)]
pub struct Superoperator {
    left: AlgebraElement,
    right: AlgebraElement,
    conjugate: bool,
}

impl Superoperator {
    pub fn new(left: AlgebraElement, right: AlgebraElement, conjugate: bool) -> Self {
        Self {
            left,
            right,
            conjugate,
        }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        Self::new(algebra.identity(), algebra.identity(), false)
    }

    /// The modular conjugation `J xi = xi^*`.
    pub fn conjugation(algebra: &BlockAlgebra) -> Self {
        Self::new(algebra.identity(), algebra.identity(), true)
    }

    pub fn is_antilinear(&self) -> bool {
        self.conjugate
    }

    pub fn apply(&self, xi: &AlgebraElement) -> AlgebraElement {
        let mid = if self.conjugate {
            xi.adjoint()
        } else {
            xi.clone()
        };
        &(&self.left * &mid) * &self.right
    }

    /// Composition `self . inner` in factored form.
    pub fn compose(&self, inner: &Superoperator) -> Superoperator {
        if self.conjugate {
            Superoperator {
                left: &self.left * &inner.right.adjoint(),
                right: &inner.left.adjoint() * &self.right,
                conjugate: !inner.conjugate,
            }
        } else {
            Superoperator {
                left: &self.left * &inner.left,
                right: &inner.right * &self.right,
                conjugate: inner.conjugate,
            }
        }
    }

    /// Dense matrix on the `total_dim`-dimensional coordinate space. For an
    /// antilinear map the matrix acts on conjugated coordinates.
    pub fn densify(&self, algebra: &BlockAlgebra) -> CMat {
        let basis = algebra.basis();
        let n = basis.len();
        let mut m = CMat::zeros(n, n);
        for (j, b) in basis.iter().enumerate() {
            let out = self.apply(b);
            for (i, coord) in coordinates(&out).into_iter().enumerate() {
                m[(i, j)] = coord;
            }
        }
        m
    }

    /// Apply through the dense representation; used to cross-check the
    /// factored evaluation.
    pub fn apply_dense(&self, algebra: &BlockAlgebra, xi: &AlgebraElement) -> AlgebraElement {
        let m = self.densify(algebra);
        let coords = coordinates(xi);
        let v = nalgebra::DVector::from_vec(if self.conjugate {
            coords.iter().map(|z| z.conj()).collect()
        } else {
            coords
        });
        let out = m * v;
        from_coordinates(algebra, out.as_slice())
    }
}

fn coordinates(x: &AlgebraElement) -> Vec<Complex64> {
    let mut v = Vec::new();
    for b in x.blocks() {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                v.push(b[(i, j)]);
            }
        }
    }
    v
}

fn from_coordinates(algebra: &BlockAlgebra, coords: &[Complex64]) -> AlgebraElement {
    let mut blocks = Vec::new();
    let mut pos = 0;
    for &n in algebra.block_dims() {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = coords[pos];
                pos += 1;
            }
        }
        blocks.push(m);
    }
    AlgebraElement::from_blocks(blocks).unwrap()
}

/// GNS realization of a faithful weight.
#[derive(Debug, Clone)]
pub struct GnsRealization {
    algebra: BlockAlgebra,
    weight: Weight,
    root: AlgebraElement,
}

impl GnsRealization {
    pub fn new(algebra: &BlockAlgebra, weight: Weight) -> Result<Self> {
        if !algebra.contains(weight.density().value()) {
            return Err(Error::ShapeMismatch("weight density not in algebra".into()));
        }
        let root = weight.density().power(c64(0.5, 0.0));
        Ok(Self {
            algebra: algebra.clone(),
            weight,
            root,
        })
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `Lambda(a) = a h^{1/2}`.
    pub fn lambda_map(&self, a: &AlgebraElement) -> AlgebraElement {
        a * &self.root
    }

    pub fn inner(&self, xi: &AlgebraElement, eta: &AlgebraElement) -> Complex64 {
        (&eta.adjoint() * xi).trace()
    }

    pub fn j(&self) -> Superoperator {
        Superoperator::conjugation(&self.algebra)
    }

    /// `Delta^z xi = h^z xi h^{-z}` for any complex `z`.
    pub fn delta_power(&self, z: Complex64) -> Superoperator {
        let h = self.weight.density();
        Superoperator::new(h.power(z), h.power(-z), false)
    }

    /// `S = J Delta^{1/2}`, the sharp operation `Lambda(a) -> Lambda(a^*)`.
    pub fn s_op(&self) -> Superoperator {
        self.j().compose(&self.delta_power(c64(0.5, 0.0)))
    }
}

/// `sigma_z(x) = h^{iz} x h^{-iz}`; for real `z` a *-automorphism, entire
/// in `z` at finite dimension.
pub fn modular_flow(phi: &Weight, z: Complex64, x: &AlgebraElement) -> AlgebraElement {
    let h = phi.density();
    let iz = c64(0.0, 1.0) * z;
    &(&h.power(iz) * x) * &h.power(-iz)
}

/// `|phi(x sigma_{-i}(y)) - phi(y x)|`, the finite-dimensional KMS boundary
/// identity.
pub fn kms_residual(phi: &Weight, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    let sy = modular_flow(phi, c64(0.0, -1.0), y);
    (phi.eval(&(x * &sy)) - phi.eval(&(y * x))).norm()
}

/// The balanced weight on the 2x2 amplification, density `diag(h_phi, h_psi)`.
pub fn balanced_weight(
    algebra: &BlockAlgebra,
    phi: &Weight,
    psi: &Weight,
) -> Result<(BlockAlgebra, Weight)> {
    if !algebra.contains(phi.density().value()) || !algebra.contains(psi.density().value()) {
        return Err(Error::ShapeMismatch(
            "weights live on different algebras".into(),
        ));
    }
    let amp = algebra.amplify();
    let density = &algebra.embed_corner(phi.density().value(), 0, 0)
        + &algebra.embed_corner(psi.density().value(), 1, 1);
    Ok((amp, Weight::new(PositiveElement::new(density)?)))
}

/// Extract corner `(i, j)` of an element of the 2x2 amplification.
pub fn corner(algebra: &BlockAlgebra, x: &AlgebraElement, i: usize, j: usize) -> AlgebraElement {
    let blocks = x
        .blocks()
        .iter()
        .zip(algebra.block_dims())
        .map(|(b, &n)| b.view((i * n, j * n), (n, n)).into_owned())
        .collect();
    AlgebraElement::from_blocks(blocks).unwrap()
}

/// The Connes cocycle `[D psi : D phi]_t = h_psi^{it} h_phi^{-it}`.
pub fn connes_cocycle(psi: &Weight, phi: &Weight, t: f64) -> AlgebraElement {
    &psi.density().power(c64(0.0, t)) * &phi.density().power(c64(0.0, -t))
}

/// Independent oracle for the cocycle: the lower-left corner of the balanced
/// weight's modular flow applied to the matrix unit `E_21`. Returns the
/// deviation from `connes_cocycle`.
pub fn balanced_corner_residual(
    algebra: &BlockAlgebra,
    psi: &Weight,
    phi: &Weight,
    t: f64,
) -> Result<f64> {
    let (amp, theta) = balanced_weight(algebra, phi, psi)?;
    let e21 = algebra.embed_corner(&algebra.identity(), 1, 0);
    let flowed = modular_flow(&theta, c64(t, 0.0), &e21);
    debug_assert!(amp.contains(&flowed));
    let got = corner(algebra, &flowed, 1, 0);
    let expect = connes_cocycle(psi, phi, t);
    Ok((&got - &expect).norm())
}

/// `norm(u_{t+s} - u_t sigma_t^phi(u_s))`, the cocycle chain rule.
pub fn cocycle_chain_residual(psi: &Weight, phi: &Weight, s: f64, t: f64) -> f64 {
    let lhs = connes_cocycle(psi, phi, t + s);
    let us = connes_cocycle(psi, phi, s);
    let rhs = &connes_cocycle(psi, phi, t) * &modular_flow(phi, c64(t, 0.0), &us);
    (&lhs - &rhs).norm()
}

/// `norm(u_{-t} - sigma_{-t}^phi(u_t^*))`, the cocycle inverse rule.
pub fn cocycle_inverse_residual(psi: &Weight, phi: &Weight, t: f64) -> f64 {
    let lhs = connes_cocycle(psi, phi, -t);
    let ut = connes_cocycle(psi, phi, t);
    let rhs = modular_flow(phi, c64(-t, 0.0), &ut.adjoint());
    (&lhs - &rhs).norm()
}

/// `norm(sigma_t^psi(x) - u_t sigma_t^phi(x) u_t^*)`, the intertwining law.
pub fn intertwining_residual(psi: &Weight, phi: &Weight, t: f64, x: &AlgebraElement) -> f64 {
    let lhs = modular_flow(psi, c64(t, 0.0), x);
    let ut = connes_cocycle(psi, phi, t);
    let rhs = &(&ut * &modular_flow(phi, c64(t, 0.0), x)) * &ut.adjoint();
    (&lhs - &rhs).norm()
}
