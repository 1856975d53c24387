//! The standard representation on `L^2(M, τ)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::algebra::{AlgebraElement, MultiMatrixAlgebra};
use super::{CMatrix, CVector};

/// `L^2(M)` with cyclic vector `ξ`, conjugation `J` and the two actions.
#[derive(Clone, Debug)]
pub struct L2Space {
    algebra: MultiMatrixAlgebra,
    permutation: alloc::vec::Vec<usize>,
}

impl L2Space {
    pub fn new(algebra: &MultiMatrixAlgebra) -> Self {
        let mut permutation = alloc::vec::Vec::with_capacity(algebra.dim());
        for (k, &n) in algebra.dims().iter().enumerate() {
            let at = algebra.offset(k);
            for i in 0..n {
                for j in 0..n {
                    permutation.push(at + j * n + i);
                }
            }
        }
        L2Space { algebra: algebra.clone(), permutation }
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn xi(&self) -> CVector {
        self.algebra.to_l2(&self.algebra.identity())
    }

    /// `J(xξ) = x*ξ`, conjugate-linear.
    pub fn conjugate(&self, v: &CVector) -> CVector {
        CVector::from_fn(v.len(), |r, _| v[self.permutation[r]].conj())
    }

    /// Left multiplication `λ(x)`.
    pub fn left(&self, x: &AlgebraElement) -> CMatrix {
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for (k, &n) in self.algebra.dims().iter().enumerate() {
            let block = x.blocks[k].kronecker(&DMatrix::<Complex64>::identity(n, n));
            let at = self.algebra.offset(k);
            out.view_mut((at, at), (n * n, n * n)).copy_from(&block);
        }
        out
    }

    /// Right multiplication `ρ(x)(yξ) = yxξ`, equal to `Jλ(x*)J`.
    pub fn right(&self, x: &AlgebraElement) -> CMatrix {
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for (k, &n) in self.algebra.dims().iter().enumerate() {
            let block = DMatrix::<Complex64>::identity(n, n).kronecker(&x.blocks[k].transpose());
            let at = self.algebra.offset(k);
            out.view_mut((at, at), (n * n, n * n)).copy_from(&block);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn actions_and_conjugation() {
        let m = MultiMatrixAlgebra::new(&[2, 3], &[0.1, 0.8 / 3.0]).unwrap();
        let l2 = L2Space::new(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = m.random_element(&mut rng);
        let y = m.random_element(&mut rng);
        let vy = m.to_l2(&y);
        assert!((l2.left(&x) * &vy - m.to_l2(&x.mul(&y))).norm() < 1e-10);
        assert!((l2.right(&x) * &vy - m.to_l2(&y.mul(&x))).norm() < 1e-10);
        assert!((l2.conjugate(&vy) - m.to_l2(&y.adjoint())).norm() < 1e-12);
        assert!((l2.conjugate(&l2.conjugate(&vy)) - &vy).norm() < 1e-15);
        assert!((l2.conjugate(&vy).norm() - vy.norm()).abs() < 1e-12);
        // ρ(x) = Jλ(x*)J
        let jlj = l2.conjugate(&(l2.left(&x.adjoint()) * l2.conjugate(&vy)));
        assert!((jlj - l2.right(&x) * &vy).norm() < 1e-10);
        assert!((l2.xi().dotc(&l2.xi()).re - 1.0).abs() < 1e-12);
        assert!((l2.left(&x) * l2.right(&y) - l2.right(&y) * l2.left(&x)).norm() < 1e-10);
    }
}
