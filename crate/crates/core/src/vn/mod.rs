//! Finite-dimensional tracial algebras and the objects built over them.
//!
//! Everything acts on `L^2(M, τ)` in orthonormal coordinates, so operators
//! on `L^2` are plain complex matrices and the vector inner product is the
//! trace inner product `<x, y> = τ(y* x)`.

use alloc::string::String;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::VnError;

mod algebra;
mod basic;
mod constructions;
mod l2;
mod module;
mod subalgebra;
mod wahp;

pub use algebra::{AlgebraElement, MultiMatrixAlgebra};
pub use basic::BasicConstruction;
pub use constructions::{
    cutdown, group_algebra_inclusion, random_chain, random_inclusion, random_unitary, tensor_inclusion, Cutdown,
    GroupAlgebraInclusion, Inclusion,
};
pub use l2::L2Space;
pub use module::{
    module_projection, orthonormal_basis, projection_residuals, qn1_module_test, remove_n_component, BimoduleBasis, Qn1Module};
pub use subalgebra::SubalgebraHandle;
pub use wahp::{complement_witnesses, wahp_gap, wahp_objective, OptimizerConfig, WahpGapReport, WitnessPair};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Every numerical threshold used by the workbench.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Closure residual of a subalgebra under products and adjoints.
    pub subalgebra: f64,
    /// Build-time check of `Tr(x e_B y) = τ(xy)`; failures are errors.
    pub construction: f64,
    /// `Tr(x e_B y) = τ(xy)` for reporting.
    pub trace_identity: f64,
    /// `e_B x e_B = E_B(x) e_B`.
    pub compression: f64,
    /// Representation check inside the pull-down map.
    pub pull_down: f64,
    pub lemma: f64,
    /// Module reconstruction and Gram identity.
    pub reconstruction: f64,
    /// Idempotence, self-adjointness and commutation of module projections.
    pub module_projection: f64,
    /// Spectral cutoff for Gram square roots.
    pub rank_cutoff: f64,
    pub unitary: f64,
    /// `E_N(x) = 0` after removing the `N` component.
    pub n_component: f64,
    /// Allowed excess of the optimizer value over the oracle value.
    pub optimizer_slack: f64,
    pub cutdown: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            subalgebra: 1e-10,
            construction: 1e-8,
            trace_identity: 1e-10,
            compression: 1e-12,
            pull_down: 1e-10,
            lemma: 1e-9,
            reconstruction: 1e-9,
            module_projection: 1e-9,
            rank_cutoff: 1e-10,
            unitary: 1e-10,
            n_component: 1e-12,
            optimizer_slack: 1e-8,
            cutdown: 1e-9,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 13] = [
        "subalgebra",
        "construction",
        "trace_identity",
        "compression",
        "pull_down",
        "lemma",
        "reconstruction",
        "module_projection",
        "rank_cutoff",
        "unitary",
        "n_component",
        "optimizer_slack",
        "cutdown",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "subalgebra" => &mut self.subalgebra,
            "construction" => &mut self.construction,
            "trace_identity" => &mut self.trace_identity,
            "compression" => &mut self.compression,
            "pull_down" => &mut self.pull_down,
            "lemma" => &mut self.lemma,
            "reconstruction" => &mut self.reconstruction,
            "module_projection" => &mut self.module_projection,
            "rank_cutoff" => &mut self.rank_cutoff,
            "unitary" => &mut self.unitary,
            "n_component" => &mut self.n_component,
            "optimizer_slack" => &mut self.optimizer_slack,
            "cutdown" => &mut self.cutdown,
            _ => return None,
        })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.clone().slot(key).map(|v| *v)
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<(), VnError> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(VnError::Validation(alloc::format!("tolerance {key} must be positive")));
        }
        match self.slot(key) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(VnError::Validation(String::from("unknown tolerance key ") + key)),
        }
    }
}
