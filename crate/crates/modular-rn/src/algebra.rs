//! Finite-dimensional von Neumann algebras as direct sums of full complex
//! matrix blocks, together with the Hermitian functional calculus every other
//! module relies on.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{self, CMat};

pub use crate::numerics::TOL_HERM;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A direct sum of full matrix algebras, described by its block dimensions.
/// The centre has one scalar per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
}

impl BlockAlgebra {
    pub fn new(block_dims: &[usize]) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidArgument(
                "block dimension list is empty".into(),
            ));
        }
        if block_dims.contains(&0) {
            return Err(Error::InvalidArgument("zero block dimension".into()));
        }
        Ok(Self {
            block_dims: block_dims.to_vec(),
        })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// Vector-space dimension of the algebra, the sum of the squared block
    /// dimensions.
    pub fn total_dim(&self) -> usize {
        self.block_dims.iter().map(|&n| n * n).sum()
    }

    pub fn centre_dim(&self) -> usize {
        self.block_dims.len()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.block_dims.iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .map(|&n| CMat::identity(n, n))
                .collect(),
        }
    }

    pub fn scalar(&self, z: Complex64) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .map(|&n| CMat::identity(n, n).scale(1.0) * z)
                .collect(),
        }
    }

    /// The minimal central projections: identity on one block, zero elsewhere.
    /// They are mutually orthogonal and sum to 1 exactly.
    pub fn centre_projectors(&self) -> Vec<AlgebraElement> {
        (0..self.num_blocks())
            .map(|k| {
                let mut e = self.zero();
                let n = self.block_dims[k];
                e.blocks[k] = CMat::identity(n, n);
                e
            })
            .collect()
    }

    /// Matrix unit `e_ij` inside block `k`.
    pub fn matrix_unit(&self, k: usize, i: usize, j: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.blocks[k][(i, j)] = c64(1.0, 0.0);
        e
    }

    /// The full matrix-unit basis, block by block in row-major order.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        let mut out = Vec::with_capacity(self.total_dim());
        for (k, &n) in self.block_dims.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push(self.matrix_unit(k, i, j));
                }
            }
        }
        out
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        x.blocks.len() == self.block_dims.len()
            && x.blocks
                .iter()
                .zip(&self.block_dims)
                .all(|(b, &n)| b.nrows() == n && b.ncols() == n)
    }

    /// The 2x2 amplification `M_2(M)`, with every block dimension doubled.
    pub fn amplify(&self) -> BlockAlgebra {
        BlockAlgebra {
            block_dims: self.block_dims.iter().map(|&n| 2 * n).collect(),
        }
    }

    /// Embed `x` into corner `(i, j)` of the 2x2 amplification.
    pub fn embed_corner(&self, x: &AlgebraElement, i: usize, j: usize) -> AlgebraElement {
        assert!(i < 2 && j < 2);
        let amp = self.amplify();
        let mut out = amp.zero();
        for (k, &n) in self.block_dims.iter().enumerate() {
            out.blocks[k]
                .view_mut((i * n, j * n), (n, n))
                .copy_from(&x.blocks[k]);
        }
        out
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .map(|&n| {
                    CMat::from_fn(n, n, |_, _| {
                        c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    })
                })
                .collect(),
        }
    }

    pub fn random_hermitian<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        let a = self.random_element(rng);
        (&a + &a.adjoint()).scale(0.5)
    }

    /// Random positive-definite element `a a* + floor`.
    pub fn random_positive<R: Rng>(&self, rng: &mut R, floor: f64) -> PositiveElement {
        let a = self.random_element(rng);
        let p = &(&a * &a.adjoint()) + &self.identity().scale(floor);
        PositiveElement::new(p).expect("a a* + floor is positive definite")
    }
}

/// An element of a [`BlockAlgebra`]: one dense complex matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    blocks: Vec<CMat>,
}

impl AlgebraElement {
    pub fn from_blocks(blocks: Vec<CMat>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("no blocks".into()));
        }
        if blocks.iter().any(|b| b.nrows() != b.ncols()) {
            return Err(Error::ShapeMismatch("blocks must be square".into()));
        }
        Ok(Self { blocks })
    }

    pub fn single(block: CMat) -> Self {
        Self {
            blocks: vec![block],
        }
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn scale_c(&self, z: Complex64) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    /// Operator norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(numerics::operator_norm)
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        self.blocks.iter().map(|b| b.diagonal().sum()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(numerics::hermiticity_defect)
            .fold(0.0, f64::max)
    }

    fn same_shape(&self, other: &AlgebraElement) -> Result<()> {
        if self.blocks.len() != other.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&other.blocks)
                .any(|(a, b)| a.nrows() != b.nrows())
        {
            return Err(Error::ShapeMismatch("block structures differ".into()));
        }
        Ok(())
    }

    /// Apply block `k` of this element to a vector; used by testbed probes.
    pub fn apply_block(&self, k: usize, v: &numerics::CVec) -> numerics::CVec {
        &self.blocks[k] * v
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.same_shape(rhs).expect("shape mismatch in +");
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.same_shape(rhs).expect("shape mismatch in -");
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.same_shape(rhs).expect("shape mismatch in *");
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// `norm(ab - ba)`; zero iff the two elements commute.
pub fn commutation_defect(a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
    a.same_shape(b)?;
    Ok((&(a * b) - &(b * a)).norm())
}

/// A positive-definite element carrying its blockwise spectral decomposition,
/// the backbone of every `h^z` in the library.
#[derive(Debug, Clone)]
pub struct PositiveElement {
    element: AlgebraElement,
    eigs: Vec<DVector<f64>>,
    vecs: Vec<CMat>,
    spectral_floor: f64,
}

impl PositiveElement {
    pub fn new(element: AlgebraElement) -> Result<Self> {
        let mut eigs = Vec::new();
        let mut vecs = Vec::new();
        let mut floor = f64::INFINITY;
        for b in &element.blocks {
            let (vals, v) = numerics::hermitian_eig(b)?;
            let min = vals.min();
            if min <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "element is not positive definite: smallest eigenvalue {min:.3e}"
                )));
            }
            floor = floor.min(min);
            eigs.push(vals);
            vecs.push(v);
        }
        Ok(Self {
            element,
            eigs,
            vecs,
            spectral_floor: floor,
        })
    }

    /// Build from externally computed spectral data `h = v diag(eigs) v*`
    /// per block. Used where the decomposition comes from a high-relative-
    /// accuracy route that plain eigendecomposition cannot match.
    pub fn from_spectral(data: Vec<(CMat, DVector<f64>)>) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut eigs = Vec::new();
        let mut vecs = Vec::new();
        let mut floor = f64::INFINITY;
        for (v, vals) in data {
            let min = vals.min();
            if min <= 0.0 {
                return Err(Error::InvalidArgument("non-positive spectral data".into()));
            }
            floor = floor.min(min);
            let d = CMat::from_diagonal(&DVector::from_iterator(
                vals.len(),
                vals.iter().map(|&x| c64(x, 0.0)),
            ));
            blocks.push(&v * d * v.adjoint());
            eigs.push(vals);
            vecs.push(v);
        }
        Ok(Self {
            element: AlgebraElement { blocks },
            eigs,
            vecs,
            spectral_floor: floor,
        })
    }

    pub fn scalar(algebra: &BlockAlgebra, value: f64) -> Result<Self> {
        if value <= 0.0 {
            return Err(Error::InvalidArgument("scalar must be positive".into()));
        }
        Self::new(algebra.identity().scale(value))
    }

    pub fn from_diagonal(algebra: &BlockAlgebra, entries: &[Vec<f64>]) -> Result<Self> {
        if entries.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch("diagonal entry count".into()));
        }
        let blocks = entries
            .iter()
            .zip(algebra.block_dims())
            .map(|(e, &n)| {
                if e.len() != n {
                    return Err(Error::ShapeMismatch("diagonal entry count".into()));
                }
                Ok(CMat::from_diagonal(&DVector::from_iterator(
                    n,
                    e.iter().map(|&x| c64(x, 0.0)),
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(AlgebraElement { blocks })
    }

    pub fn value(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn spectral_floor(&self) -> f64 {
        self.spectral_floor
    }

    /// `h^z = exp(z log h)` blockwise through the stored eigendecomposition.
    /// For purely imaginary `z` the result is unitary.
    pub fn power(&self, z: Complex64) -> AlgebraElement {
        let blocks = self
            .eigs
            .iter()
            .zip(&self.vecs)
            .map(|(vals, v)| {
                let d = CMat::from_diagonal(&DVector::from_iterator(
                    vals.len(),
                    vals.iter().map(|&mu| (z * mu.ln()).exp()),
                ));
                v * d * v.adjoint()
            })
            .collect();
        AlgebraElement { blocks }
    }

    /// Apply `h^z` to a single vector in block `k` at matrix-vector cost.
    pub fn power_apply(&self, z: Complex64, k: usize, v: &numerics::CVec) -> numerics::CVec {
        let coords = self.vecs[k].adjoint() * v;
        let scaled = numerics::CVec::from_iterator(
            coords.len(),
            coords
                .iter()
                .zip(self.eigs[k].iter())
                .map(|(c, &mu)| c * (z * mu.ln()).exp()),
        );
        &self.vecs[k] * scaled
    }

    /// Apply a scalar spectral function: `v diag(f(mu)) v*` per block.
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex64) -> AlgebraElement {
        let blocks = self
            .eigs
            .iter()
            .zip(&self.vecs)
            .map(|(vals, v)| {
                let d = CMat::from_diagonal(&DVector::from_iterator(
                    vals.len(),
                    vals.iter().map(|&mu| f(mu)),
                ));
                v * d * v.adjoint()
            })
            .collect();
        AlgebraElement { blocks }
    }

    /// Hermitian logarithm through the stored eigendecomposition.
    pub fn log(&self) -> AlgebraElement {
        let blocks = self
            .eigs
            .iter()
            .zip(&self.vecs)
            .map(|(vals, v)| {
                let d = CMat::from_diagonal(&DVector::from_iterator(
                    vals.len(),
                    vals.iter().map(|&mu| c64(mu.ln(), 0.0)),
                ));
                v * d * v.adjoint()
            })
            .collect();
        AlgebraElement { blocks }
    }

    /// `max |log eigenvalue|`, the norm of `log h`.
    pub fn log_norm(&self) -> f64 {
        self.eigs
            .iter()
            .flat_map(|v| v.iter())
            .map(|&mu| mu.ln().abs())
            .fold(0.0, f64::max)
    }
}

/// A normal faithful weight `phi(x) = sum_k trace(h_k x_k)` given by its
/// positive-definite density.
#[derive(Debug, Clone)]
pub struct Weight {
    density: PositiveElement,
}

impl Weight {
    pub fn new(density: PositiveElement) -> Self {
        Self { density }
    }

    pub fn trace(algebra: &BlockAlgebra) -> Self {
        Self::new(PositiveElement::scalar(algebra, 1.0).unwrap())
    }

    pub fn density(&self) -> &PositiveElement {
        &self.density
    }

    pub fn eval(&self, x: &AlgebraElement) -> Complex64 {
        self.density
            .value()
            .blocks
            .iter()
            .zip(&x.blocks)
            .map(|(h, b)| (h * b).diagonal().sum())
            .sum()
    }
}

/// Certification mode for an invariance pair: exact finite-dimensional
/// identities vs the discretized testbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approximate,
}

/// A pair `(delta, lambda)` of commuting positive elements with a certified
/// residual of the relative invariance relation
/// `sigma_t(delta^{is}) = lambda^{ist} delta^{is}` over a declared grid.
#[derive(Debug, Clone)]
pub struct InvariancePair {
    pub delta: PositiveElement,
    pub lambda: PositiveElement,
    pub mode: Mode,
    pub invariance_residual: f64,
}

impl InvariancePair {
    /// Certify against `phi` on the grid `s_grid x t_grid`. In exact mode the
    /// residual must be below 1e-10; in approximate mode it is recorded only.
    pub fn certify(
        phi: &Weight,
        delta: PositiveElement,
        lambda: PositiveElement,
        mode: Mode,
        s_grid: &[f64],
        t_grid: &[f64],
    ) -> Result<Self> {
        let defect = commutation_defect(delta.value(), lambda.value())?;
        let bound = 1e-12 * delta.value().norm() * lambda.value().norm();
        if defect > bound {
            return Err(Error::InvalidArgument(format!(
                "delta and lambda do not commute: defect {defect:.3e} > {bound:.3e}"
            )));
        }
        let mut pair = Self {
            delta,
            lambda,
            mode,
            invariance_residual: 0.0,
        };
        let mut max = 0.0_f64;
        for &s in s_grid {
            for &t in t_grid {
                max = max.max(relative_invariance_residual(phi, &pair, s, t));
            }
        }
        if mode == Mode::Exact && max > 1e-10 {
            return Err(Error::ModeViolation(format!(
                "exact-mode certification failed: invariance residual {max:.3e} > 1e-10"
            )));
        }
        pair.invariance_residual = max;
        Ok(pair)
    }

    /// A pair that trivially satisfies invariance: `lambda = 1` with `delta`
    /// commuting with the density is certified exactly.
    pub fn exact(phi: &Weight, delta: PositiveElement, algebra: &BlockAlgebra) -> Result<Self> {
        let lambda = PositiveElement::scalar(algebra, 1.0)?;
        let grid = [-1.0, 0.0, 0.5, 1.0, 2.0];
        Self::certify(phi, delta, lambda, Mode::Exact, &grid, &grid)
    }
}

/// `norm(h^{it} delta^{is} h^{-it} - lambda^{ist} delta^{is})` with `h` the
/// density of `phi`. The scalar-side factor multiplies on the left, valid
/// because the pair commutes.
pub fn relative_invariance_residual(phi: &Weight, pair: &InvariancePair, s: f64, t: f64) -> f64 {
    let h = phi.density();
    let u = h.power(c64(0.0, t));
    let ustar = h.power(c64(0.0, -t));
    let dis = pair.delta.power(c64(0.0, s));
    let lhs = &(&u * &dis) * &ustar;
    let rhs = &pair.lambda.power(c64(0.0, s * t)) * &dis;
    (&lhs - &rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::seeded;
    use approx::assert_relative_eq;

    #[test]
    fn build_algebra_dims() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        assert_eq!(a.total_dim(), 4);
        assert_eq!(a.centre_dim(), 1);

        let a = BlockAlgebra::new(&[2, 3, 4]).unwrap();
        assert_eq!(a.total_dim(), 29);
        assert_eq!(a.centre_dim(), 3);

        let a = BlockAlgebra::new(&[1, 1]).unwrap();
        assert_eq!(a.total_dim(), 2);
        assert_eq!(a.centre_dim(), 2);

        assert!(BlockAlgebra::new(&[]).is_err());
        assert!(BlockAlgebra::new(&[2, 0]).is_err());
    }

    #[test]
    fn centre_projectors_partition_unity() {
        for dims in [vec![2usize], vec![2, 3], vec![1, 1, 1]] {
            let a = BlockAlgebra::new(&dims).unwrap();
            let ps = a.centre_projectors();
            assert_eq!(ps.len(), dims.len());
            let mut sum = a.zero();
            for p in &ps {
                assert_relative_eq!((&(p * p) - p).norm(), 0.0);
                sum = &sum + p;
            }
            assert_eq!(sum, a.identity());
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    if i != j {
                        assert_relative_eq!((&ps[i] * &ps[j]).norm(), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn mat_power_examples() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let h = PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap();
        // zeroth power is the identity
        assert!((&h.power(c64(0.0, 0.0)) - &a.identity()).norm() < 1e-15);
        // scalar square root
        let one = BlockAlgebra::new(&[1]).unwrap();
        let four = PositiveElement::from_diagonal(&one, &[vec![4.0]]).unwrap();
        let r = four.power(c64(0.5, 0.0));
        assert_relative_eq!(r.block(0)[(0, 0)].re, 2.0, epsilon = 1e-14);
        // imaginary power via eigenvalue oracle: diag(1, e^{i ln 2})
        let u = h.power(c64(0.0, 1.0));
        assert_relative_eq!(u.block(0)[(0, 0)].re, 1.0, epsilon = 1e-14);
        let expect = c64(0.0, 2.0_f64.ln()).exp();
        assert!((u.block(0)[(1, 1)] - expect).norm() < 1e-14);
    }

    #[test]
    fn mat_power_group_law_and_unitarity() {
        let a = BlockAlgebra::new(&[3]).unwrap();
        let mut rng = seeded(7);
        let h = a.random_positive(&mut rng, 0.1);
        let bound = 1e-12 * (1.0 + h.log_norm());
        for (s, t) in [(0.3, 0.9), (-1.2, 2.0), (0.0, 5.0)] {
            let lhs = h.power(c64(0.0, s + t));
            let rhs = &h.power(c64(0.0, s)) * &h.power(c64(0.0, t));
            assert!((&lhs - &rhs).norm() <= bound * 10.0);
            let u = h.power(c64(0.0, t));
            let id = BlockAlgebra::new(&[3]).unwrap().identity();
            assert!((&(&u.adjoint() * &u) - &id).norm() <= 1e-12);
        }
    }

    #[test]
    fn commutation_defect_examples() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let d1 = PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap();
        let d2 = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]]).unwrap();
        assert_relative_eq!(commutation_defect(d1.value(), d2.value()).unwrap(), 0.0);

        let e12 = a.matrix_unit(0, 0, 1);
        let e21 = a.matrix_unit(0, 1, 0);
        assert_relative_eq!(
            commutation_defect(&e12, &e21).unwrap(),
            1.0,
            epsilon = 1e-14
        );

        let mut rng = seeded(3);
        let x = a.random_element(&mut rng);
        assert_relative_eq!(commutation_defect(&x, &a.identity()).unwrap(), 0.0);
    }

    #[test]
    fn relative_invariance_trivial_cases() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let delta = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]]).unwrap();
        let pair = InvariancePair::exact(&phi, delta, &a).unwrap();
        for (s, t) in [(0.7, -1.3), (2.0, 2.0)] {
            assert!(relative_invariance_residual(&phi, &pair, s, t) < 1e-12);
        }

        let mut rng = seeded(11);
        let phi2 = Weight::new(a.random_positive(&mut rng, 0.1));
        let pair2 =
            InvariancePair::exact(&phi2, PositiveElement::scalar(&a, 1.0).unwrap(), &a).unwrap();
        assert!(relative_invariance_residual(&phi2, &pair2, 1.0, 1.0) < 1e-12);
    }

    #[test]
    fn finite_dim_rigidity() {
        // lambda with log-norm >= 0.5 must violate invariance somewhere on
        // t in [0, 10] for any finite-dimensional (h, delta)
        let a = BlockAlgebra::new(&[2]).unwrap();
        let mut rng = seeded(5);
        for _ in 0..3 {
            let phi = Weight::new(a.random_positive(&mut rng, 0.2));
            let delta = a.random_positive(&mut rng, 0.2);
            let lam = PositiveElement::scalar(&a, (0.5_f64).exp()).unwrap();
            assert!(lam.log_norm() >= 0.5 - 1e-12);
            let pair = InvariancePair {
                delta,
                lambda: lam,
                mode: Mode::Approximate,
                invariance_residual: 0.0,
            };
            let mut worst = 0.0_f64;
            let mut t = 0.0;
            while t <= 10.0 {
                worst = worst.max(relative_invariance_residual(&phi, &pair, 1.0, t));
                t += 0.25;
            }
            assert!(worst >= 0.1, "rigidity violated: max residual {worst}");
        }
    }

    #[test]
    fn exact_certification_rejects_nontrivial_lambda() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let delta = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]]).unwrap();
        let lam = PositiveElement::scalar(&a, std::f64::consts::E).unwrap();
        let grid = [0.0, 1.0, 2.0];
        let r = InvariancePair::certify(&phi, delta, lam, Mode::Exact, &grid, &grid);
        assert!(matches!(r, Err(Error::ModeViolation(_))));
    }
}
