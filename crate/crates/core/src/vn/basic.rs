//! The basic construction `<M, e_B>` with its trace and pull-down map.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use super::algebra::{AlgebraElement, MultiMatrixAlgebra};
use super::l2::L2Space;
use super::module::{orthonormal_basis, BimoduleBasis};
use super::subalgebra::SubalgebraHandle;
use super::{CMatrix, Tolerances};
use crate::error::VnError;

/// `B ⊆ N ⊆ M` acting on `L^2(M)`, with `e_B`, `e_N` and a Pimsner–Popa
/// basis of `L^2(M)` over `B` starting with `ξ`.
#[derive(Clone, Debug)]
pub struct BasicConstruction {
    l2: L2Space,
    b: SubalgebraHandle,
    n: SubalgebraHandle,
    e_b: CMatrix,
    e_n: CMatrix,
    basis: BimoduleBasis,
    left_basis: Vec<CMatrix>,
    tolerances: Tolerances,
    build_residual: f64,
}

impl BasicConstruction {
    /// Fails when `B ⊄ N` or the trace identity does not hold on matrix units.
    pub fn new(b: &SubalgebraHandle, n: Option<&SubalgebraHandle>, tolerances: &Tolerances) -> Result<Self, VnError> {
        let m = b.ambient();
        let n = n.unwrap_or(b);
        if n.ambient() != m {
            return Err(VnError::Validation("B and N live in different algebras".into()));
        }
        let contained = b.containment_residual(n);
        if contained > tolerances.subalgebra {
            return Err(VnError::Validation(alloc::format!("B is not contained in N (residual {contained:e})")));
        }
        let l2 = L2Space::new(m);
        let mut gens = alloc::vec![m.identity()];
        gens.extend(m.units());
        let basis = orthonormal_basis(b, &gens, tolerances);
        let left_basis = basis.vectors.iter().map(|v| l2.left(v)).collect();
        let mut out = BasicConstruction {
            l2,
            b: b.clone(),
            n: n.clone(),
            e_b: b.projector(),
            e_n: n.projector(),
            basis,
            left_basis,
            tolerances: tolerances.clone(),
            build_residual: 0.0,
        };
        let units = m.units();
        let residual = out.trace_identity_residual(&units, &units);
        if !(residual <= tolerances.construction) {
            return Err(VnError::Construction { identity: "Tr(x e_B y) = tau(xy)", residual });
        }
        out.build_residual = residual;
        Ok(out)
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.l2.algebra()
    }

    pub fn l2(&self) -> &L2Space {
        &self.l2
    }

    pub fn b(&self) -> &SubalgebraHandle {
        &self.b
    }

    pub fn n(&self) -> &SubalgebraHandle {
        &self.n
    }

    pub fn e_b(&self) -> &CMatrix {
        &self.e_b
    }

    pub fn e_n(&self) -> &CMatrix {
        &self.e_n
    }

    pub fn pimsner_popa_basis(&self) -> &BimoduleBasis {
        &self.basis
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    /// Residual of the trace identity measured at build time.
    pub fn build_residual(&self) -> f64 {
        self.build_residual
    }

    /// `λ(x) e_B λ(y)`.
    pub fn elementary(&self, x: &AlgebraElement, y: &AlgebraElement) -> CMatrix {
        self.l2.left(x) * &self.e_b * self.l2.left(y)
    }

    /// `Tr(t) = Σ <t η_i, η_i>` over the Pimsner–Popa basis.
    pub fn trace(&self, t: &CMatrix) -> Complex64 {
        let m = self.algebra();
        self.basis
            .vectors
            .iter()
            .map(|v| {
                let eta = m.to_l2(v);
                eta.dotc(&(t * &eta))
            })
            .sum()
    }

    /// Largest `|Tr(λ(x) e_B λ(y)) - τ(xy)|` over all pairs.
    pub fn trace_identity_residual(&self, xs: &[AlgebraElement], ys: &[AlgebraElement]) -> f64 {
        let m = self.algebra();
        let mut worst: f64 = 0.0;
        for x in xs {
            let lx = self.l2.left(x);
            for y in ys {
                let t = &lx * &self.e_b * self.l2.left(y);
                worst = worst.max((self.trace(&t) - m.tau(&x.mul(y))).norm());
            }
        }
        worst
    }

    /// `‖e_B λ(x) e_B - λ(E_B(x)) e_B‖`, entrywise maximum.
    pub fn compression_residual(&self, x: &AlgebraElement) -> f64 {
        let lhs = &self.e_b * self.l2.left(x) * &self.e_b;
        let rhs = self.l2.left(&self.b.expect(x)) * &self.e_b;
        (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `e_B(xξ) = E_B(x)ξ` residual.
    pub fn projection_residual(&self, x: &AlgebraElement) -> f64 {
        let m = self.algebra();
        (&self.e_b * m.to_l2(x) - m.to_l2(&self.b.expect(x))).norm()
    }

    /// `Ψ(Σ λ(x_k) e_B λ(y_k)) = Σ x_k y_k`, from the terms.
    pub fn pull_down_terms(&self, terms: &[(AlgebraElement, AlgebraElement)]) -> AlgebraElement {
        terms.iter().fold(self.algebra().zero(), |acc, (x, y)| acc.add(&x.mul(y)))
    }

    /// `Ψ(T) = Σ (Tη_i) η_i*`, after checking that
    /// `T = Σ λ(Tη_i) e_B λ(η_i)*`, i.e. that `T` lies in `span M e_B M`.
    pub fn pull_down(&self, t: &CMatrix) -> Result<AlgebraElement, VnError> {
        let m = self.algebra();
        let mut out = m.zero();
        let mut rebuilt = CMatrix::zeros(t.nrows(), t.ncols());
        for (v, lv) in self.basis.vectors.iter().zip(&self.left_basis) {
            let image = m.from_l2(&(t * m.to_l2(v)));
            rebuilt += self.l2.left(&image) * &self.e_b * lv.adjoint();
            out = out.add(&image.mul(&v.adjoint()));
        }
        let residual = (t - rebuilt).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let scale = t.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if residual > self.tolerances.pull_down * scale {
            return Err(VnError::Representation(residual));
        }
        Ok(out)
    }

    /// `L_η`, here `λ(η)` since every vector of `L^2(M)` is bounded.
    pub fn l_eta(&self, eta: &AlgebraElement) -> CMatrix {
        self.l2.left(eta)
    }

    /// `Σ_k λ(x_k) e_B λ(y_k)` together with its terms.
    pub fn random_operator<R: Rng>(&self, rng: &mut R, terms: usize) -> (CMatrix, Vec<(AlgebraElement, AlgebraElement)>) {
        let m = self.algebra();
        let mut t = CMatrix::zeros(self.l2.dim(), self.l2.dim());
        let mut list = Vec::with_capacity(terms);
        for _ in 0..terms {
            let x = m.random_element(rng);
            let y = m.random_element(rng);
            t += self.elementary(&x, &y);
            list.push((x, y));
        }
        (t, list)
    }

    /// `|‖w e_B‖_{2,Tr} - ‖wξ‖_2|`.
    pub fn lemma_norm_residual(&self, w: &CMatrix) -> f64 {
        let we = w * &self.e_b;
        let lhs = libm::sqrt(self.trace(&(we.adjoint() * &we)).re.max(0.0));
        let rhs = (w * self.l2.xi()).norm();
        libm::fabs(lhs - rhs)
    }

    /// `‖Ψ(w e_B w*) - L_η L_η*‖_2` with `η = wξ`.
    pub fn lemma_pull_down_residual(&self, w: &CMatrix) -> Result<f64, VnError> {
        let m = self.algebra();
        let eta = m.from_l2(&(w * self.l2.xi()));
        let lhs = self.pull_down(&(w * &self.e_b * w.adjoint()))?;
        Ok(m.norm2(&lhs.sub(&eta.mul(&eta.adjoint()))))
    }

    /// Reconstruction `y = Σ η_i E_B(η_i* y)` of the Pimsner–Popa basis.
    pub fn reconstruction_residual(&self, ys: &[AlgebraElement]) -> f64 {
        self.basis.reconstruction_residual(&self.b, ys).max(self.basis.gram_residual(&self.b))
    }

    /// `|<e_B η_i, η_i>|` for `i ≠ 1`.
    pub fn off_xi_residual(&self) -> f64 {
        let m = self.algebra();
        self.basis.vectors.iter().skip(1).map(|v| (&self.e_b * m.to_l2(v)).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag() -> (MultiMatrixAlgebra, SubalgebraHandle) {
        let m = MultiMatrixAlgebra::full_matrix(2);
        let b = SubalgebraHandle::closure(&m, &[m.unit(0, 0, 0)]);
        (m, b)
    }

    #[test]
    fn projection_rank_and_trace() {
        let (m, b) = diag();
        let bc = BasicConstruction::new(&b, None, &Tolerances::default()).unwrap();
        assert_eq!(bc.l2().dim(), 4);
        assert!((bc.e_b().trace().re - 2.0).abs() < 1e-12);
        assert!((bc.trace(bc.e_b()) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(bc.off_xi_residual() < 1e-12);
        let x = m.unit(0, 0, 1).add(&m.unit(0, 1, 1).scale(Complex64::new(0.0, 3.0)));
        assert!(bc.compression_residual(&x) < 1e-12);
        assert!(bc.projection_residual(&x) < 1e-12);
    }

    #[test]
    fn whole_algebra_gives_identity_projection() {
        let m = MultiMatrixAlgebra::new(&[2, 1], &[1.0 / 3.0, 1.0 / 3.0]).unwrap();
        let b = SubalgebraHandle::whole(&m);
        let bc = BasicConstruction::new(&b, None, &Tolerances::default()).unwrap();
        assert_eq!(bc.e_b(), &DMatrix::identity(5, 5));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = m.random_element(&mut rng);
        let t = bc.l2().left(&x);
        assert!((bc.trace(&t) - m.tau(&x)).norm() < 1e-12);
    }

    #[test]
    fn pull_down_examples() {
        let (m, b) = diag();
        let bc = BasicConstruction::new(&b, None, &Tolerances::default()).unwrap();
        let t = bc.elementary(&m.unit(0, 0, 1), &m.unit(0, 1, 0));
        assert!(bc.pull_down(&t).unwrap().sub(&m.unit(0, 0, 0)).max_abs() < 1e-12);
        let one = bc.elementary(&m.identity(), &m.identity());
        assert!(bc.pull_down(&one).unwrap().sub(&m.identity()).max_abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (t, terms) = bc.random_operator(&mut rng, 3);
        let by_terms = bc.pull_down_terms(&terms);
        assert!(bc.pull_down(&t).unwrap().sub(&by_terms).max_abs() < 1e-10);
        for _ in 0..5 {
            let (w, _) = bc.random_operator(&mut rng, 2);
            assert!(bc.lemma_norm_residual(&w) < 1e-9);
            assert!(bc.lemma_pull_down_residual(&w).unwrap() < 1e-9);
        }
    }

    #[test]
    fn scalar_subalgebra_pull_down_is_total() {
        // With B = C, span M e_B M is all of B(L^2(M)).
        let m = MultiMatrixAlgebra::full_matrix(2);
        let c = SubalgebraHandle::scalars(&m);
        let bc = BasicConstruction::new(&c, None, &Tolerances::default()).unwrap();
        let mut any = DMatrix::zeros(4, 4);
        any[(2, 1)] = Complex64::new(1.0, 0.0);
        assert!(bc.pull_down(&any).is_ok());
    }

    #[test]
    fn operators_outside_the_span_are_rejected() {
        // With B = M, span M e_B M = λ(M), so ρ(e_12) is outside it.
        let m = MultiMatrixAlgebra::full_matrix(2);
        let bc = BasicConstruction::new(&SubalgebraHandle::whole(&m), None, &Tolerances::default()).unwrap();
        let r = bc.l2().right(&m.unit(0, 0, 1));
        assert!(matches!(bc.pull_down(&r), Err(VnError::Representation(_))));
    }
}
