//! Right `B`-modules in `L^2(M)`: orthonormal bases over `B`, their
//! projections, and the module generated by `BxB`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::algebra::{AlgebraElement, MultiMatrixAlgebra};
use super::l2::L2Space;
use super::subalgebra::{Span, SubalgebraHandle};
use super::{CMatrix, CVector, Tolerances};

/// Vectors `η_i` with `E_B(η_i* η_j) = δ_ij p_i`.
#[derive(Clone, Debug)]
pub struct BimoduleBasis {
    pub vectors: Vec<AlgebraElement>,
    pub supports: Vec<AlgebraElement>,
}

impl BimoduleBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `Σ η_i E_B(η_i* η)`.
    pub fn reconstruct(&self, b: &SubalgebraHandle, eta: &AlgebraElement) -> AlgebraElement {
        let mut out = b.ambient().zero();
        for v in &self.vectors {
            out = out.add(&v.mul(&b.expect(&v.adjoint().mul(eta))));
        }
        out
    }

    /// Largest `‖E_B(η_i* η_j) - δ_ij p_i‖` and `‖η_i p_i - η_i‖`, entrywise.
    pub fn gram_residual(&self, b: &SubalgebraHandle) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in self.vectors.iter().enumerate() {
            worst = worst.max(vi.mul(&self.supports[i]).sub(vi).max_abs());
            let p = &self.supports[i];
            worst = worst.max(p.mul(p).sub(p).max_abs()).max(p.adjoint().sub(p).max_abs());
            for (j, vj) in self.vectors.iter().enumerate() {
                let g = b.expect(&vi.adjoint().mul(vj));
                let want = if i == j { p.clone() } else { b.ambient().zero() };
                worst = worst.max(g.sub(&want).max_abs());
            }
        }
        worst
    }

    /// Largest `L^2` reconstruction error over the given module vectors.
    pub fn reconstruction_residual(&self, b: &SubalgebraHandle, module: &[AlgebraElement]) -> f64 {
        let m = b.ambient();
        module.iter().map(|eta| m.norm2(&self.reconstruct(b, eta).sub(eta))).fold(0.0, f64::max)
    }

    /// Complex dimension of the module `Σ η_i B`.
    pub fn module_dim(&self, b: &SubalgebraHandle) -> usize {
        self.module_span(b).dim()
    }

    pub(crate) fn module_span(&self, b: &SubalgebraHandle) -> Span {
        let m = b.ambient();
        let mut span = Span::default();
        for v in &self.vectors {
            for bk in b.basis() {
                span.push(&m.to_l2(&v.mul(bk)));
            }
        }
        span
    }
}

fn gram_powers(g: &AlgebraElement, cutoff: f64) -> (AlgebraElement, AlgebraElement) {
    let inv_sqrt = g.hermitian_calculus(|l| if l > cutoff { Complex64::new(1.0 / libm::sqrt(l), 0.0) } else { Complex64::new(0.0, 0.0) });
    let support = g.hermitian_calculus(|l| if l > cutoff { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    (inv_sqrt, support)
}

/// Gram–Schmidt over `B` for the right module generated by `generators`.
///
/// Generators are processed in order, so a leading `1` gives `η_1 = ξ`.
/// Afterwards vectors with orthogonal supports are summed, which keeps the
/// Gram identity and shortens the basis.
pub fn orthonormal_basis(b: &SubalgebraHandle, generators: &[AlgebraElement], tol: &Tolerances) -> BimoduleBasis {
    let m = b.ambient();
    let mut vectors: Vec<AlgebraElement> = Vec::new();
    let mut supports: Vec<AlgebraElement> = Vec::new();
    for zeta in generators {
        let scale = m.norm2(zeta);
        if scale == 0.0 {
            continue;
        }
        let mut r = zeta.clone();
        for _ in 0..2 {
            for v in &vectors {
                r = r.sub(&v.mul(&b.expect(&v.adjoint().mul(&r))));
            }
        }
        if m.norm2(&r) <= tol.rank_cutoff * scale.max(1.0) {
            continue;
        }
        let g = b.expect(&r.adjoint().mul(&r));
        let top = g.blocks.iter().map(matrix_norm_bound).fold(0.0, f64::max);
        let (inv_sqrt, support) = gram_powers(&g, tol.rank_cutoff * top.max(1.0));
        let eta = r.mul(&inv_sqrt);
        if support.max_abs() == 0.0 {
            continue;
        }
        vectors.push(eta);
        supports.push(support);
    }
    merge_orthogonal_supports(m, vectors, supports, tol)
}

fn matrix_norm_bound(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).sum()
}

fn merge_orthogonal_supports(
    m: &MultiMatrixAlgebra,
    vectors: Vec<AlgebraElement>,
    supports: Vec<AlgebraElement>,
    tol: &Tolerances,
) -> BimoduleBasis {
    let xi = m.identity();
    let mut out = BimoduleBasis { vectors: Vec::new(), supports: Vec::new() };
    for (v, p) in vectors.into_iter().zip(supports) {
        let target = out.vectors.iter().enumerate().position(|(i, w)| {
            w.sub(&xi).max_abs() > tol.rank_cutoff && out.supports[i].mul(&p).max_abs() <= tol.rank_cutoff
        });
        match target {
            Some(i) if v.sub(&xi).max_abs() > tol.rank_cutoff => {
                out.vectors[i] = out.vectors[i].add(&v);
                out.supports[i] = out.supports[i].add(&p);
            }
            _ => {
                out.vectors.push(v);
                out.supports.push(p);
            }
        }
    }
    out
}

/// `p_H = Σ λ(η_i) e_B λ(η_i)*` on `L^2(M)`.
pub fn module_projection(b: &SubalgebraHandle, basis: &BimoduleBasis) -> CMatrix {
    let l2 = L2Space::new(b.ambient());
    let e = b.projector();
    let d = l2.dim();
    let mut p = CMatrix::zeros(d, d);
    for v in &basis.vectors {
        let l = l2.left(v);
        p += &l * &e * l.adjoint();
    }
    p
}

/// `y_i - E_N(y_i)`.
pub fn remove_n_component(ys: &[AlgebraElement], n: &SubalgebraHandle) -> Vec<AlgebraElement> {
    ys.iter().map(|y| y.sub(&n.expect(y))).collect()
}

/// The right `B`-module `closure(BxBξ)`, with a finite cover `x ∈ Σ η_i B`.
#[derive(Clone, Debug)]
pub struct Qn1Module {
    pub generators: Vec<AlgebraElement>,
    pub basis: BimoduleBasis,
    pub module_dim: usize,
    pub projection: CMatrix,
}

impl Qn1Module {
    /// `L^2` vectors spanning the module.
    pub fn spanning_vectors(&self, b: &SubalgebraHandle) -> Vec<CVector> {
        self.basis.module_span(b).vectors
    }
}

pub fn qn1_module_test(b: &SubalgebraHandle, x: &AlgebraElement, tol: &Tolerances) -> Qn1Module {
    let generators: Vec<AlgebraElement> = b.basis().iter().map(|bk| bk.mul(x)).collect();
    let basis = orthonormal_basis(b, &generators, tol);
    let module_dim = basis.module_dim(b);
    let projection = module_projection(b, &basis);
    Qn1Module { generators, basis, module_dim, projection }
}

/// Residuals of `p = p* = p^2` and `[p, ρ(b)] = 0` over a basis of `B`.
pub fn projection_residuals(b: &SubalgebraHandle, p: &CMatrix, bimodule: bool) -> (f64, f64) {
    let l2 = L2Space::new(b.ambient());
    let idem = (p * p - p).norm().max((p.adjoint() - p).norm());
    let mut comm: f64 = 0.0;
    for bk in b.basis() {
        let r = l2.right(bk);
        comm = comm.max((p * &r - &r * p).norm());
        if bimodule {
            let l = l2.left(bk);
            comm = comm.max((p * &l - &l * p).norm());
        }
    }
    (idem, comm)
}
