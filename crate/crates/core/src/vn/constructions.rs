//! Concrete inclusions: random multi-matrix inclusions, group algebras,
//! tensor products and corners.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::algebra::{random_matrix, AlgebraElement, MultiMatrixAlgebra};
use super::module::qn1_module_test;
use super::subalgebra::{Span, SubalgebraHandle};
use super::{CMatrix, CVector, Tolerances};
use crate::error::VnError;
use crate::group::FiniteTable;

/// `B ⊆ N ⊆ M`.
#[derive(Clone, Debug)]
pub struct Inclusion {
    pub m: MultiMatrixAlgebra,
    pub b: SubalgebraHandle,
    pub n: SubalgebraHandle,
}

/// Haar-distributed unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let qr = random_matrix(rng, n, n).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Unital embedding of `⊕_l M_{m_l}` into `⊕_k M_{n_k}`, `n_k = Σ_l a_kl m_l`,
/// placing `a_kl` diagonal copies of block `l` into block `k`.
fn embed(source: &[usize], mult: &[Vec<usize>], x: &[CMatrix]) -> Vec<CMatrix> {
    mult.iter()
        .map(|row| {
            let n: usize = row.iter().zip(source).map(|(a, m)| a * m).sum();
            let mut out = DMatrix::zeros(n, n);
            let mut at = 0;
            for (l, &a) in row.iter().enumerate() {
                for _ in 0..a {
                    out.view_mut((at, at), (source[l], source[l])).copy_from(&x[l]);
                    at += source[l];
                }
            }
            out
        })
        .collect()
}

fn random_weights<R: Rng>(rng: &mut R, dims: &[usize]) -> Vec<f64> {
    let raw: Vec<f64> = dims.iter().map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().zip(dims).map(|(w, &n)| w * n as f64).sum();
    raw.iter().map(|w| w / total).collect()
}

fn random_multiplicities<R: Rng>(rng: &mut R, source: &[usize], blocks: usize) -> Vec<Vec<usize>> {
    loop {
        let mult: Vec<Vec<usize>> = (0..blocks).map(|_| source.iter().map(|_| rng.gen_range(0..3)).collect()).collect();
        let rows_ok = mult.iter().all(|r| r.iter().any(|&a| a > 0));
        let cols_ok = (0..source.len()).all(|l| mult.iter().any(|r| r[l] > 0));
        if rows_ok && cols_ok {
            return mult;
        }
    }
}

fn target_dims(source: &[usize], mult: &[Vec<usize>]) -> Vec<usize> {
    mult.iter().map(|row| row.iter().zip(source).map(|(a, m)| a * m).sum()).collect()
}

fn units_of(dims: &[usize]) -> Vec<Vec<CMatrix>> {
    let mut out = Vec::new();
    for (k, &n) in dims.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let mut blocks: Vec<CMatrix> = dims.iter().map(|&d| DMatrix::zeros(d, d)).collect();
                blocks[k][(i, j)] = Complex64::new(1.0, 0.0);
                out.push(blocks);
            }
        }
    }
    out
}

struct Tower {
    dims: Vec<Vec<usize>>,
    mults: Vec<Vec<Vec<usize>>>,
}

impl Tower {
    fn random<R: Rng>(rng: &mut R, levels: usize, max_dim: usize) -> Tower {
        loop {
            let base_blocks = rng.gen_range(1..=3);
            let mut dims = alloc::vec![(0..base_blocks).map(|_| rng.gen_range(1..=2)).collect::<Vec<usize>>()];
            let mut mults = Vec::new();
            for _ in 1..levels {
                let source = dims.last().unwrap().clone();
                let blocks = rng.gen_range(1..=3);
                let mult = random_multiplicities(rng, &source, blocks);
                dims.push(target_dims(&source, &mult));
                mults.push(mult);
            }
            let top: usize = dims.last().unwrap().iter().map(|n| n * n).sum();
            let strictly_growing = dims.windows(2).all(|w| {
                w[0].iter().map(|n| n * n).sum::<usize>() < w[1].iter().map(|n| n * n).sum::<usize>()
            });
            if top <= max_dim && strictly_growing {
                return Tower { dims, mults };
            }
        }
    }

    /// Images in the top algebra of the matrix units of level `level`.
    fn images(&self, level: usize) -> Vec<Vec<CMatrix>> {
        units_of(&self.dims[level])
            .into_iter()
            .map(|mut x| {
                for (s, mult) in self.mults.iter().enumerate().skip(level) {
                    x = embed(&self.dims[s], mult, &x);
                }
                x
            })
            .collect()
    }
}

fn conjugated(m: &MultiMatrixAlgebra, unitaries: &[CMatrix], x: Vec<CMatrix>) -> AlgebraElement {
    let blocks = x.into_iter().zip(unitaries).map(|(b, u)| u * b * u.adjoint()).collect();
    m.from_blocks(blocks).expect("shapes agree")
}

fn realize<R: Rng>(rng: &mut R, tower: &Tower) -> (MultiMatrixAlgebra, Vec<SubalgebraHandle>) {
    let top = tower.dims.last().unwrap();
    let m = MultiMatrixAlgebra::new(top, &random_weights(rng, top)).expect("valid weights");
    let unitaries: Vec<CMatrix> = top.iter().map(|&n| random_unitary(rng, n)).collect();
    let handles = (0..tower.dims.len())
        .map(|level| {
            let gens: Vec<AlgebraElement> =
                tower.images(level).into_iter().map(|x| conjugated(&m, &unitaries, x)).collect();
            SubalgebraHandle::closure(&m, &gens)
        })
        .collect();
    (m, handles)
}

/// A random `B ⊊ M` with `dim M ≤ max_dim`, rotated by block unitaries; `N = B`.
pub fn random_inclusion<R: Rng>(rng: &mut R, max_dim: usize) -> Inclusion {
    let tower = Tower::random(rng, 2, max_dim);
    let (m, handles) = realize(rng, &tower);
    Inclusion { m, b: handles[0].clone(), n: handles[0].clone() }
}

/// A random `B ⊊ N ⊊ M` when `proper`, otherwise `B ⊊ N = M`.
pub fn random_chain<R: Rng>(rng: &mut R, max_dim: usize, proper: bool) -> Inclusion {
    if !proper {
        let i = random_inclusion(rng, max_dim);
        let whole = SubalgebraHandle::whole(&i.m);
        return Inclusion { n: whole, ..i };
    }
    let tower = Tower::random(rng, 3, max_dim);
    let (m, handles) = realize(rng, &tower);
    Inclusion { m, b: handles[0].clone(), n: handles[1].clone() }
}

/// `B_1 ⊗ B_2 ⊆ N_1 ⊗ N_2 ⊆ M_1 ⊗ M_2`.
pub fn tensor_inclusion(first: &Inclusion, second: &Inclusion) -> Inclusion {
    let m = first.m.tensor(&second.m);
    let lift = |h1: &SubalgebraHandle, h2: &SubalgebraHandle| {
        let mut gens = Vec::new();
        for x in h1.basis() {
            gens.push(first.m.tensor_elements(x, &second.m, &second.m.identity()));
        }
        for y in h2.basis() {
            gens.push(first.m.tensor_elements(&first.m.identity(), &second.m, y));
        }
        SubalgebraHandle::closure(&m, &gens)
    };
    let b = lift(&first.b, &second.b);
    let n = lift(&first.n, &second.n);
    Inclusion { m, b, n }
}

/// `C[H] ⊆ C[G]` in the left regular representation on `C^{|G|}`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraInclusion {
    /// `M_{|G|}` with weight `1/|G|`, so `τ(λ(g)) = δ_{g,e}`.
    pub ambient: MultiMatrixAlgebra,
    pub m: SubalgebraHandle,
    pub b: SubalgebraHandle,
    /// `λ(g)` for every element, in table order.
    pub elements: Vec<AlgebraElement>,
    pub in_subgroup: Vec<bool>,
    /// `C[G] ≅ ⊕ M_{d_i}` with Plancherel weights `d_i/|G|`.
    pub decomposition: MultiMatrixAlgebra,
}

impl GroupAlgebraInclusion {
    /// Largest `‖E_B(λ(g)) - [g ∈ H] λ(g)‖`.
    pub fn fourier_residual(&self) -> f64 {
        self.elements
            .iter()
            .zip(&self.in_subgroup)
            .map(|(g, &inside)| {
                let want = if inside { g.clone() } else { self.ambient.zero() };
                self.b.expect(g).sub(&want).max_abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|τ(λ(g)) - δ_{g,e}|`.
    pub fn trace_residual(&self, identity: usize) -> f64 {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let want = if i == identity { 1.0 } else { 0.0 };
                (self.ambient.tau(g) - Complex64::new(want, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn conjugacy_classes(g: &FiniteTable) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; g.order()];
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut class = Vec::new();
        for h in 0..g.order() {
            let c = g.mul(g.mul(h, x), g.inv(h));
            if !seen[c] {
                seen[c] = true;
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

pub fn group_algebra_inclusion(g: &FiniteTable, subgroup: &[usize]) -> Result<GroupAlgebraInclusion, VnError> {
    if !g.is_subgroup(subgroup) {
        return Err(VnError::Validation("the given elements do not form a subgroup".into()));
    }
    let order = g.order();
    let ambient = MultiMatrixAlgebra::full_matrix(order);
    let lambda = |x: usize| {
        let mut p = DMatrix::zeros(order, order);
        for h in 0..order {
            p[(g.mul(x, h), h)] = Complex64::new(1.0, 0.0);
        }
        AlgebraElement { blocks: alloc::vec![p] }
    };
    let elements: Vec<AlgebraElement> = (0..order).map(lambda).collect();
    let mut in_subgroup = alloc::vec![false; order];
    for &h in subgroup {
        in_subgroup[h] = true;
    }
    let m = SubalgebraHandle::closure(&ambient, &elements);
    let b_gens: Vec<AlgebraElement> = subgroup.iter().map(|&h| elements[h].clone()).collect();
    let b = SubalgebraHandle::closure(&ambient, &b_gens);

    // A generic Hermitian central element separates the minimal central
    // projections; an eigenspace of dimension d^2 is a block M_d.
    let mut z = ambient.zero();
    for (i, class) in conjugacy_classes(g).iter().enumerate() {
        let c = libm::sqrt(i as f64 + 2.0) + 1.0 / (i as f64 + 3.0);
        for &x in class {
            z = z.add(&elements[x].add(&elements[x].adjoint()).scale(Complex64::new(c, 0.0)));
        }
    }
    let mut eig: Vec<f64> = z.blocks[0].clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    let mut dims = Vec::new();
    let mut run = 1;
    for w in eig.windows(2) {
        if libm::fabs(w[1] - w[0]) < 1e-8 {
            run += 1;
        } else {
            dims.push(run);
            run = 1;
        }
    }
    dims.push(run);
    let mut block_dims = Vec::with_capacity(dims.len());
    for r in dims {
        let d = libm::round(libm::sqrt(r as f64)) as usize;
        if d * d != r {
            return Err(VnError::Construction { identity: "central eigenspaces have square dimension", residual: r as f64 });
        }
        block_dims.push(d);
    }
    block_dims.sort_unstable();
    let weights: Vec<f64> = block_dims.iter().map(|&d| d as f64 / order as f64).collect();
    let decomposition = MultiMatrixAlgebra::new(&block_dims, &weights)?;
    Ok(GroupAlgebraInclusion { ambient, m, b, elements, in_subgroup, decomposition })
}

/// The corner `eBe ⊆ eMe` with trace `τ(e · e)/τ(e)`, realized through an
/// isometry per block onto the range of `e`.
#[derive(Clone, Debug)]
pub struct Cutdown {
    pub corner: MultiMatrixAlgebra,
    pub corner_b: SubalgebraHandle,
    pub projection: AlgebraElement,
    isometries: Vec<Option<CMatrix>>,
}

pub fn cutdown(b: &SubalgebraHandle, e: &AlgebraElement, tol: &Tolerances) -> Result<Cutdown, VnError> {
    let m = b.ambient();
    if e.blocks.len() != m.dims().len() || e.blocks.iter().zip(m.dims()).any(|(x, &n)| x.shape() != (n, n)) {
        return Err(VnError::Validation("projection shape does not match the algebra".into()));
    }
    let defect = e.mul(e).sub(e).max_abs().max(e.adjoint().sub(e).max_abs());
    if defect > tol.unitary {
        return Err(VnError::Validation(alloc::format!("e is not a projection (residual {defect:e})")));
    }
    if b.distance(e) > tol.subalgebra {
        return Err(VnError::Validation("e does not belong to B".into()));
    }
    let mass = m.tau(e).re;
    if !(mass > tol.unitary) {
        return Err(VnError::Validation("e is zero".into()));
    }
    let mut isometries = Vec::new();
    let mut dims = Vec::new();
    let mut weights = Vec::new();
    for (k, block) in e.blocks.iter().enumerate() {
        let eig = block.clone().symmetric_eigen();
        let cols: Vec<usize> = (0..block.nrows()).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
        if cols.is_empty() {
            isometries.push(None);
            continue;
        }
        let v = CMatrix::from_fn(block.nrows(), cols.len(), |r, c| eig.eigenvectors[(r, cols[c])]);
        dims.push(cols.len());
        weights.push(m.weights()[k] / mass);
        isometries.push(Some(v));
    }
    let corner = MultiMatrixAlgebra::new(&dims, &weights)?;
    let mut out = Cutdown { corner, corner_b: SubalgebraHandle::scalars(&MultiMatrixAlgebra::full_matrix(1)), projection: e.clone(), isometries };
    let gens: Vec<AlgebraElement> = b.basis().iter().map(|x| out.compress(x)).collect();
    out.corner_b = SubalgebraHandle::closure(&out.corner, &gens);
    Ok(out)
}

impl Cutdown {
    /// `exe` in corner coordinates.
    pub fn compress(&self, x: &AlgebraElement) -> AlgebraElement {
        let blocks = self
            .isometries
            .iter()
            .zip(&x.blocks)
            .filter_map(|(v, b)| v.as_ref().map(|v| v.adjoint() * b * v))
            .collect();
        AlgebraElement { blocks }
    }

    /// Spanning vectors of `e K_x e` in `L^2(eMe)`, where `K_x` is the module
    /// generated by `BxB`.
    pub fn compressed_module(&self, b: &SubalgebraHandle, x: &AlgebraElement, tol: &Tolerances) -> Vec<CVector> {
        let q = qn1_module_test(b, x, tol);
        let m = b.ambient();
        q.spanning_vectors(b).iter().map(|v| self.corner.to_l2(&self.compress(&m.from_l2(v)))).collect()
    }

    /// Spanning vectors of the module generated by `(eBe)(exe)(eBe)`.
    pub fn corner_module(&self, x: &AlgebraElement, tol: &Tolerances) -> Vec<CVector> {
        let q = qn1_module_test(&self.corner_b, &self.compress(x), tol);
        q.spanning_vectors(&self.corner_b)
    }

    /// For each sample `x`, the corner module lies in `e K_x e`; over the
    /// whole sample the two families span the same space, which needs a
    /// sample spanning `M` (a single `e K_x e` is usually larger than the
    /// corner module of `exe`). Returns the largest relative distance.
    pub fn containment_residual(&self, b: &SubalgebraHandle, samples: &[AlgebraElement], tol: &Tolerances) -> f64 {
        let mut worst: f64 = 0.0;
        let mut union_compressed = Vec::new();
        let mut union_corner = Vec::new();
        for x in samples {
            let compressed = self.compressed_module(b, x, tol);
            let corner = self.corner_module(x, tol);
            worst = worst.max(span_distance(&corner, &compressed));
            union_compressed.extend(compressed);
            union_corner.extend(corner);
        }
        worst.max(span_distance(&union_corner, &union_compressed)).max(span_distance(&union_compressed, &union_corner))
    }
}

/// Largest relative distance of a vector of `vs` to the span of `basis`.
fn span_distance(vs: &[CVector], basis: &[CVector]) -> f64 {
    let mut span = Span::default();
    for v in basis {
        span.push(v);
    }
    vs.iter()
        .filter(|v| v.norm() > 0.0)
        .map(|v| span.residual(v).norm() / v.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_inclusions_are_proper_subalgebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let i = random_inclusion(&mut rng, 30);
            assert!(i.m.dim() <= 30);
            assert!(i.b.dim() < i.m.dim());
            assert!(i.b.closure_residual() < 1e-10);
            let c = random_chain(&mut rng, 30, true);
            assert!(c.b.dim() < c.n.dim() && c.n.dim() < c.m.dim());
            assert!(c.b.containment_residual(&c.n) < 1e-10);
        }
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_unitary(&mut rng, 4);
        assert!((u.adjoint() * &u - CMatrix::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn z2_group_algebra() {
        let g = FiniteTable::cyclic(2);
        let inc = group_algebra_inclusion(&g, &[g.identity()]).unwrap();
        assert_eq!(inc.decomposition.dims(), &[1, 1]);
        assert_eq!(inc.m.dim(), 2);
        assert_eq!(inc.b.dim(), 1);
        assert!(inc.fourier_residual() < 1e-12);
        assert!(inc.trace_residual(g.identity()) < 1e-12);
        assert!(group_algebra_inclusion(&g, &[1]).is_err());
    }

    #[test]
    fn s3_group_algebra() {
        // S_3 as permutations of {0,1,2}, composed right to left.
        let perms: Vec<[usize; 3]> = alloc::vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let names = (0..6).map(|i| alloc::format!("p{i}")).collect();
        let g = FiniteTable::new(names, table, Some(alloc::vec![1, 4])).unwrap();
        let inc = group_algebra_inclusion(&g, &[0, 1]).unwrap();
        assert_eq!(inc.decomposition.dims(), &[1, 1, 2]);
        assert_eq!(inc.b.dim(), 2);
        assert!(inc.fourier_residual() < 1e-12);
    }

    #[test]
    fn corner_of_diagonal() {
        let m = MultiMatrixAlgebra::full_matrix(2);
        let b = SubalgebraHandle::closure(&m, &[m.unit(0, 0, 0)]);
        let tol = Tolerances::default();
        let c = cutdown(&b, &m.unit(0, 0, 0), &tol).unwrap();
        assert_eq!(c.corner.dims(), &[1]);
        assert_eq!(c.corner_b.dim(), 1);
        assert!(c.containment_residual(&b, &m.units(), &tol) < 1e-9);
        assert!(cutdown(&b, &m.unit(0, 0, 1), &tol).is_err());
        let whole = cutdown(&b, &m.identity(), &tol).unwrap();
        assert_eq!(whole.corner, m);
    }
}
