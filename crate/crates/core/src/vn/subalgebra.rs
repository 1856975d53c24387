//! Unital *-subalgebras given by τ-orthonormal bases, and their trace
//! preserving conditional expectations.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::algebra::{AlgebraElement, MultiMatrixAlgebra};
use super::{CMatrix, CVector};

/// Relative size below which a vector counts as already in a span.
pub(crate) const SPAN_TOLERANCE: f64 = 1e-9;

/// An orthonormal family in `L^2`, grown by Gram–Schmidt.
#[derive(Clone, Debug, Default)]
pub(crate) struct Span {
    pub vectors: Vec<CVector>,
}

impl Span {
    pub fn residual(&self, v: &CVector) -> CVector {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.vectors {
                let c = q.dotc(&r);
                r -= q * c;
            }
        }
        r
    }

    /// Adds `v` when it is not in the span; returns whether it was added.
    pub fn push(&mut self, v: &CVector) -> bool {
        let scale = v.norm();
        if scale == 0.0 {
            return false;
        }
        let r = self.residual(v);
        let n = r.norm();
        if n <= SPAN_TOLERANCE * scale.max(1.0) {
            return false;
        }
        self.vectors.push(r / Complex64::new(n, 0.0));
        true
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn projector(&self, ambient_dim: usize) -> CMatrix {
        let mut p = DMatrix::zeros(ambient_dim, ambient_dim);
        for q in &self.vectors {
            p += q * q.adjoint();
        }
        p
    }
}

/// A unital *-subalgebra `B ⊆ M`.
#[derive(Clone, Debug)]
pub struct SubalgebraHandle {
    ambient: MultiMatrixAlgebra,
    basis: Vec<AlgebraElement>,
    span: Span,
    full: bool,
}

impl SubalgebraHandle {
    /// The smallest unital *-subalgebra containing `generators`, as the
    /// span of all words in the generators and their adjoints.
    pub fn closure(ambient: &MultiMatrixAlgebra, generators: &[AlgebraElement]) -> Self {
        let mut letters: Vec<AlgebraElement> = Vec::new();
        for g in generators {
            letters.push(g.clone());
            letters.push(g.adjoint());
        }
        let mut span = Span::default();
        let mut basis = Vec::new();
        let one = ambient.identity();
        span.push(&ambient.to_l2(&one));
        basis.push(ambient.from_l2(&span.vectors[0]));
        let mut next = 0;
        while next < basis.len() && span.dim() < ambient.dim() {
            let q = basis[next].clone();
            for g in &letters {
                if span.push(&ambient.to_l2(&q.mul(g))) {
                    basis.push(ambient.from_l2(span.vectors.last().unwrap()));
                }
            }
            next += 1;
        }
        let full = span.dim() == ambient.dim();
        SubalgebraHandle { ambient: ambient.clone(), basis, span, full }
    }

    pub fn scalars(ambient: &MultiMatrixAlgebra) -> Self {
        SubalgebraHandle::closure(ambient, &[])
    }

    pub fn whole(ambient: &MultiMatrixAlgebra) -> Self {
        SubalgebraHandle::closure(ambient, &ambient.units())
    }

    pub fn ambient(&self) -> &MultiMatrixAlgebra {
        &self.ambient
    }

    /// τ-orthonormal basis; the first element is `1`.
    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_whole(&self) -> bool {
        self.full
    }

    /// The τ-preserving conditional expectation, the orthogonal projection
    /// onto `L^2(B)`. Exactly the identity when `B = M`.
    pub fn expect(&self, x: &AlgebraElement) -> AlgebraElement {
        if self.full {
            return x.clone();
        }
        let v = self.ambient.to_l2(x);
        let mut out = CVector::zeros(v.len());
        for q in &self.span.vectors {
            out += q * q.dotc(&v);
        }
        self.ambient.from_l2(&out)
    }

    /// `e_B` as a matrix on `L^2(M)`.
    pub fn projector(&self) -> CMatrix {
        if self.full {
            return DMatrix::identity(self.ambient.dim(), self.ambient.dim());
        }
        self.span.projector(self.ambient.dim())
    }

    /// `‖x - E_B(x)‖_2`.
    pub fn distance(&self, x: &AlgebraElement) -> f64 {
        self.ambient.norm2(&x.sub(&self.expect(x)))
    }

    /// Largest distance of products and adjoints of basis elements to `B`.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.basis {
            worst = worst.max(self.distance(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.distance(&a.mul(b)));
            }
        }
        worst
    }

    /// A real basis of the self-adjoint part, orthonormal for `Re τ(x* y)`.
    pub fn self_adjoint_basis(&self) -> Vec<AlgebraElement> {
        let half = Complex64::new(0.5, 0.0);
        let mut raw = Vec::new();
        for b in &self.basis {
            raw.push(b.add(&b.adjoint()).scale(half));
            raw.push(b.sub(&b.adjoint()).scale(Complex64::new(0.0, -0.5)));
        }
        // Real Gram–Schmidt: treat L^2 vectors as real vectors of twice the length.
        let mut out: Vec<AlgebraElement> = Vec::new();
        let mut vecs: Vec<CVector> = Vec::new();
        for x in raw {
            let v = self.ambient.to_l2(&x);
            let scale = v.norm();
            if scale == 0.0 {
                continue;
            }
            let mut r = v.clone();
            for _ in 0..2 {
                for q in &vecs {
                    let c = q.dotc(&r).re;
                    r -= q * Complex64::new(c, 0.0);
                }
            }
            let n = r.norm();
            if n > SPAN_TOLERANCE * scale.max(1.0) {
                let q = r / Complex64::new(n, 0.0);
                out.push(self.ambient.from_l2(&q));
                vecs.push(q);
            }
        }
        out
    }

    /// Largest distance of a basis element of `self` to `other`.
    pub fn containment_residual(&self, other: &SubalgebraHandle) -> f64 {
        self.basis.iter().map(|b| other.distance(b)).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closures_of_matrix_units() {
        let m = MultiMatrixAlgebra::full_matrix(2);
        assert_eq!(SubalgebraHandle::closure(&m, &[m.unit(0, 0, 0)]).dim(), 2);
        assert_eq!(SubalgebraHandle::scalars(&m).dim(), 1);
        let all = SubalgebraHandle::closure(&m, &[m.unit(0, 0, 1)]);
        assert_eq!(all.dim(), 4);
        assert!(all.is_whole());
    }

    #[test]
    fn diagonal_expectation() {
        let m = MultiMatrixAlgebra::full_matrix(2);
        let b = SubalgebraHandle::closure(&m, &[m.unit(0, 0, 0)]);
        let x = m
            .from_blocks(alloc::vec![DMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(4.0, 0.5)])])
            .unwrap();
        let e = b.expect(&x);
        let want = m
            .from_blocks(alloc::vec![DMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.5)])])
            .unwrap();
        assert!(e.sub(&want).max_abs() < 1e-12);
        assert!(b.expect(&m.identity()).sub(&m.identity()).max_abs() < 1e-12);
        let s = SubalgebraHandle::scalars(&m);
        let t = m.tau(&x);
        assert!(s.expect(&x).sub(&m.identity().scale(t)).max_abs() < 1e-12);
    }

    #[test]
    fn expectation_properties() {
        let m = MultiMatrixAlgebra::new(&[3, 2], &[0.2, 0.2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = SubalgebraHandle::closure(&m, &[m.unit(0, 0, 0).add(&m.unit(1, 1, 1)), m.unit(0, 1, 2)]);
        assert!(b.closure_residual() < 1e-10);
        for _ in 0..10 {
            let x = m.random_element(&mut rng);
            let b1 = b.expect(&m.random_element(&mut rng));
            let b2 = b.expect(&m.random_element(&mut rng));
            let e = b.expect(&x);
            assert!(b.expect(&e).sub(&e).max_abs() < 1e-10);
            assert!((m.tau(&e) - m.tau(&x)).norm() < 1e-10);
            assert!(b.expect(&b1.mul(&x).mul(&b2)).sub(&b1.mul(&e).mul(&b2)).max_abs() < 1e-10);
            assert!(b.expect(&x.adjoint()).sub(&e.adjoint()).max_abs() < 1e-10);
            assert!(m.norm2(&e) <= m.norm2(&x) + 1e-12);
            let pos = b.expect(&x.adjoint().mul(&x));
            let eig = pos.blocks.iter().flat_map(|blk| blk.clone().symmetric_eigen().eigenvalues.iter().copied().collect::<Vec<_>>());
            assert!(eig.into_iter().all(|l| l > -1e-10));
        }
        let basis = b.self_adjoint_basis();
        assert_eq!(basis.len(), b.dim());
    }
}
