//! Multi-matrix algebras `⊕_k M_{n_k}(C)` with trace `τ = Σ_k w_k Tr_k`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, CVector};
use crate::error::VnError;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// `⊕_k M_{n_k}` with a faithful trace normalized by `Σ_k w_k n_k = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiMatrixAlgebra {
    dims: Vec<usize>,
    weights: Vec<f64>,
    offsets: Vec<usize>,
    rescaled: bool,
}

/// An element of a multi-matrix algebra, one square matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub blocks: Vec<CMatrix>,
}

impl MultiMatrixAlgebra {
    /// Weights not summing to one are rescaled; [`Self::was_rescaled`] records it.
    pub fn new(dims: &[usize], weights: &[f64]) -> Result<Self, VnError> {
        if dims.is_empty() || dims.len() != weights.len() {
            return Err(VnError::Validation("one weight per nonempty block is required".into()));
        }
        if dims.contains(&0) {
            return Err(VnError::Validation("block sizes must be positive".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(VnError::Validation("block weights must be positive".into()));
        }
        let total: f64 = dims.iter().zip(weights).map(|(&n, &w)| n as f64 * w).sum();
        let rescaled = libm::fabs(total - 1.0) > WEIGHT_SUM_TOLERANCE;
        let weights = if rescaled { weights.iter().map(|w| w / total).collect() } else { weights.to_vec() };
        let mut offsets = Vec::with_capacity(dims.len());
        let mut at = 0;
        for &n in dims {
            offsets.push(at);
            at += n * n;
        }
        Ok(MultiMatrixAlgebra { dims: dims.to_vec(), weights, offsets, rescaled })
    }

    /// `M_n` with the normalized trace.
    pub fn full_matrix(n: usize) -> Self {
        MultiMatrixAlgebra::new(&[n], &[1.0 / n as f64]).expect("valid")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn was_rescaled(&self) -> bool {
        self.rescaled
    }

    /// Complex dimension `Σ n_k^2`, also the dimension of `L^2`.
    pub fn dim(&self) -> usize {
        self.dims.iter().map(|n| n * n).sum()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.dims.iter().map(|&n| DMatrix::zeros(n, n)).collect() }
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.dims.iter().map(|&n| DMatrix::identity(n, n)).collect() }
    }

    /// Matrix unit `e_ij` of block `k`.
    pub fn unit(&self, k: usize, i: usize, j: usize) -> AlgebraElement {
        let mut x = self.zero();
        x.blocks[k][(i, j)] = Complex64::new(1.0, 0.0);
        x
    }

    /// All matrix units, in `L^2` coordinate order.
    pub fn units(&self) -> Vec<AlgebraElement> {
        let mut out = Vec::with_capacity(self.dim());
        for (k, &n) in self.dims.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push(self.unit(k, i, j));
                }
            }
        }
        out
    }

    pub fn from_blocks(&self, blocks: Vec<CMatrix>) -> Result<AlgebraElement, VnError> {
        if blocks.len() != self.dims.len() || blocks.iter().zip(&self.dims).any(|(b, &n)| b.shape() != (n, n)) {
            return Err(VnError::Validation("block shapes do not match the algebra".into()));
        }
        Ok(AlgebraElement { blocks })
    }

    pub fn tau(&self, x: &AlgebraElement) -> Complex64 {
        x.blocks.iter().zip(&self.weights).map(|(b, &w)| b.trace() * w).sum()
    }

    /// `<x, y> = τ(y* x)`.
    pub fn inner(&self, x: &AlgebraElement, y: &AlgebraElement) -> Complex64 {
        self.to_l2(y).dotc(&self.to_l2(x))
    }

    /// `‖x‖_2 = τ(x* x)^{1/2}`.
    pub fn norm2(&self, x: &AlgebraElement) -> f64 {
        self.to_l2(x).norm()
    }

    /// `xξ` in orthonormal coordinates `sqrt(w_k) x_ij`, row-major per block.
    pub fn to_l2(&self, x: &AlgebraElement) -> CVector {
        let mut v = DVector::zeros(self.dim());
        for (k, b) in x.blocks.iter().enumerate() {
            let n = self.dims[k];
            let s = libm::sqrt(self.weights[k]);
            for i in 0..n {
                for j in 0..n {
                    v[self.offsets[k] + i * n + j] = b[(i, j)] * s;
                }
            }
        }
        v
    }

    pub fn from_l2(&self, v: &CVector) -> AlgebraElement {
        let blocks = self
            .dims
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let s = 1.0 / libm::sqrt(self.weights[k]);
                DMatrix::from_fn(n, n, |i, j| v[self.offsets[k] + i * n + j] * s)
            })
            .collect();
        AlgebraElement { blocks }
    }

    pub(crate) fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// Entries with independent standard complex Gaussian parts.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement { blocks: self.dims.iter().map(|&n| random_matrix(rng, n, n)).collect() }
    }

    /// `⊕_{k,l} M_{n_k m_l}` with weights `w_k v_l`.
    pub fn tensor(&self, other: &MultiMatrixAlgebra) -> MultiMatrixAlgebra {
        let mut dims = Vec::new();
        let mut weights = Vec::new();
        for (&n, &w) in self.dims.iter().zip(&self.weights) {
            for (&m, &v) in other.dims.iter().zip(&other.weights) {
                dims.push(n * m);
                weights.push(w * v);
            }
        }
        MultiMatrixAlgebra::new(&dims, &weights).expect("product of valid algebras")
    }

    /// `x ⊗ y` in [`Self::tensor`].
    pub fn tensor_elements(&self, x: &AlgebraElement, other: &MultiMatrixAlgebra, y: &AlgebraElement) -> AlgebraElement {
        let mut blocks = Vec::with_capacity(self.dims.len() * other.dims.len());
        for a in &x.blocks {
            for b in &y.blocks {
                blocks.push(a.kronecker(b));
            }
        }
        AlgebraElement { blocks }
    }
}

pub(crate) fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

impl AlgebraElement {
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Complex64) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().map(|b| b * c).collect() }
    }

    /// Largest entry modulus, used for residuals.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().flat_map(|b| b.iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Applies `f` to the eigenvalues of a self-adjoint element, blockwise.
    pub fn hermitian_calculus(&self, f: impl Fn(f64) -> Complex64) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().map(|b| hermitian_function(b, &f)).collect() }
    }
}

/// `f(a)` for Hermitian `a` via the spectral decomposition.
pub(crate) fn hermitian_function(a: &CMatrix, f: &impl Fn(f64) -> Complex64) -> CMatrix {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut out = DMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        out += v * v.adjoint() * f(lambda);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn traces_are_normalized() {
        let m2 = MultiMatrixAlgebra::new(&[2], &[0.5]).unwrap();
        assert!((m2.tau(&m2.identity()).re - 1.0).abs() < 1e-15);
        let cc = MultiMatrixAlgebra::new(&[1, 1], &[0.5, 0.5]).unwrap();
        assert!((cc.tau(&cc.unit(1, 0, 0)).re - 0.5).abs() < 1e-15);
        let m = MultiMatrixAlgebra::new(&[2, 1], &[1.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!(!m.was_rescaled());
        assert!((m.tau(&m.identity()).re - 1.0).abs() < 1e-15);
        let r = MultiMatrixAlgebra::new(&[2], &[1.0]).unwrap();
        assert!(r.was_rescaled());
        assert!(MultiMatrixAlgebra::new(&[2], &[-1.0]).is_err());
    }

    #[test]
    fn l2_coordinates_are_isometric() {
        let m = MultiMatrixAlgebra::new(&[2, 3], &[0.2, 0.2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = m.random_element(&mut rng);
        let y = m.random_element(&mut rng);
        let lhs = m.inner(&x, &y);
        let rhs = m.tau(&y.adjoint().mul(&x));
        assert!((lhs - rhs).norm() < 1e-12);
        assert!((m.tau(&x.mul(&y)) - m.tau(&y.mul(&x))).norm() < 1e-12);
        assert!(m.from_l2(&m.to_l2(&x)).sub(&x).max_abs() < 1e-12);
    }

    #[test]
    fn spectral_calculus() {
        let m = MultiMatrixAlgebra::full_matrix(2);
        let x = m.unit(0, 0, 1).add(&m.unit(0, 1, 0));
        let sq = x.hermitian_calculus(|l| Complex64::new(l * l, 0.0));
        assert!(sq.sub(&m.identity()).max_abs() < 1e-12);
    }
}
