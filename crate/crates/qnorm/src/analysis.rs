//! The `group` and `vn` analyses behind the command line.

use std::fmt;

use num_complex::Complex64;
use qnorm_core::engine::{diagnose_inclusion, DiagnosisConfig};
use qnorm_core::vn::{
    complement_witnesses, module_projection, orthonormal_basis, projection_residuals, qn1_module_test, wahp_gap,
    AlgebraElement, BasicConstruction, OptimizerConfig, SubalgebraHandle, Tolerances, WitnessPair,
};
use qnorm_core::{EngineError, GroupError, VnError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{parse_group_file, parse_matrix_file, InputError, MatrixInclusion};
use crate::report::{self, NUMERICAL};

pub const DEFAULT_SEED: u64 = 42;

/// Why an analysis produced no report.
#[derive(Debug)]
pub enum RunError {
    Input(InputError),
    /// The engines ran out of a resource before answering.
    Resource(String),
    /// The input was well formed but the analysis rejected it.
    Analysis(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) | RunError::Analysis(_) => 2,
            RunError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(e) => write!(f, "input error: {e}"),
            RunError::Resource(m) => write!(f, "resource limit: {m}"),
            RunError::Analysis(m) => write!(f, "analysis error: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<InputError> for RunError {
    fn from(e: InputError) -> Self {
        RunError::Input(e)
    }
}

impl From<EngineError> for RunError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Group(GroupError::ResourceLimit { .. }) => RunError::Resource(e.to_string()),
            other => RunError::Analysis(other.to_string()),
        }
    }
}

impl From<VnError> for RunError {
    fn from(e: VnError) -> Self {
        RunError::Analysis(e.to_string())
    }
}

/// Command-line overrides; `None` keeps the file value or the default.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub budget: Option<usize>,
    pub radius: Option<usize>,
    pub threshold: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Vec<(String, f64)>,
}

pub fn run_group_analysis(text: &str, overrides: &Overrides) -> Result<Value, RunError> {
    let inc = parse_group_file(text)?;
    let mut config = DiagnosisConfig { probes: inc.probes.clone(), ..DiagnosisConfig::default() };
    if let Some(r) = overrides.radius.or(inc.radius) {
        config.radius = r;
    }
    if let Some(b) = overrides.budget {
        config.budget = b;
    }
    if let Some(t) = overrides.threshold {
        config.threshold = t;
    }
    if config.budget == 0 {
        return Err(RunError::Input(InputError { field: "budget".into(), line: None, message: "must be at least 1".into() }));
    }
    let r = diagnose_inclusion(&inc.group, &inc.subgroup, &config)?;
    Ok(report::group_report(&inc.group, &r, &config))
}

fn check(residual: f64, tolerance: f64) -> Value {
    json!({ "residual": residual, "tolerance": tolerance, "pass": residual < tolerance, "tier": NUMERICAL })
}

fn normalized(x: AlgebraElement) -> AlgebraElement {
    let s = x.max_abs();
    if s > 0.0 {
        x.scale(Complex64::new(1.0 / s, 0.0))
    } else {
        x
    }
}

/// Residuals of every identity of the basic construction.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResiduals {
    pub trace_identity: f64,
    pub compression: f64,
    pub projection: f64,
    pub pull_down: f64,
    pub lemma_norm: f64,
    pub lemma_pull_down: f64,
    pub reconstruction: f64,
    pub module_projection: f64,
    pub module_commutation: f64,
    pub expectation: f64,
}

/// Checks on matrix units and `samples` seeded random elements (scaled to
/// unit entries), and on two-term random operators of `span M e_B M`.
pub fn identity_residuals(bc: &BasicConstruction, seed: u64, samples: usize) -> Result<IdentityResiduals, VnError> {
    let m = bc.algebra();
    let b = bc.b();
    let tol = bc.tolerances();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = m.units();
    let mut xs = units.clone();
    xs.extend((0..samples).map(|_| normalized(m.random_element(&mut rng))));

    let mut r = IdentityResiduals {
        trace_identity: bc.trace_identity_residual(&units, &units),
        compression: 0.0,
        projection: 0.0,
        pull_down: 0.0,
        lemma_norm: 0.0,
        lemma_pull_down: 0.0,
        reconstruction: bc.reconstruction_residual(&units),
        module_projection: 0.0,
        module_commutation: 0.0,
        expectation: 0.0,
    };
    for x in &xs {
        r.compression = r.compression.max(bc.compression_residual(x));
        r.projection = r.projection.max(bc.projection_residual(x));
        for e in [b, bc.n()] {
            let ex = e.expect(x);
            let idem = e.expect(&ex).sub(&ex).max_abs();
            let trace = (m.tau(&ex) - m.tau(x)).norm();
            let mut bimodular: f64 = 0.0;
            for bk in e.basis() {
                bimodular = bimodular.max(e.expect(&bk.mul(x)).sub(&bk.mul(&ex)).max_abs());
                bimodular = bimodular.max(e.expect(&x.mul(bk)).sub(&ex.mul(bk)).max_abs());
            }
            r.expectation = r.expectation.max(idem).max(trace).max(bimodular);
        }
    }
    let xs_random = &xs[units.len()..];
    for _ in 0..samples.max(1) {
        let terms: Vec<_> =
            (0..2).map(|_| (normalized(m.random_element(&mut rng)), normalized(m.random_element(&mut rng)))).collect();
        let t = terms.iter().map(|(x, y)| bc.elementary(x, y)).reduce(|a, b| a + b).expect("two terms");
        r.pull_down = r.pull_down.max(bc.pull_down(&t)?.sub(&bc.pull_down_terms(&terms)).max_abs());
        r.lemma_norm = r.lemma_norm.max(bc.lemma_norm_residual(&t));
        r.lemma_pull_down = r.lemma_pull_down.max(bc.lemma_pull_down_residual(&t)?);
    }
    for x in xs_random.iter().chain(units.iter().take(4)) {
        let q = qn1_module_test(b, x, tol);
        let (idem, comm) = projection_residuals(b, &q.projection, false);
        r.module_projection = r.module_projection.max(idem);
        r.module_commutation = r.module_commutation.max(comm);
        r.reconstruction = r.reconstruction.max(q.basis.reconstruction_residual(b, &q.generators));
    }
    let whole = orthonormal_basis(b, &units, tol);
    let (idem, comm) = projection_residuals(b, &module_projection(b, &whole), true);
    r.module_projection = r.module_projection.max(idem);
    r.module_commutation = r.module_commutation.max(comm);
    Ok(r)
}

fn identity_report(r: &IdentityResiduals, tol: &Tolerances) -> Value {
    json!({
        "trace_identity": check(r.trace_identity, tol.trace_identity),
        "compression": check(r.compression, tol.compression),
        "projection_onto_l2b": check(r.projection, tol.trace_identity),
        "pull_down_well_defined": check(r.pull_down, tol.pull_down),
        "lemma_norm": check(r.lemma_norm, tol.lemma),
        "lemma_pull_down": check(r.lemma_pull_down, tol.lemma),
        "reconstruction": check(r.reconstruction, tol.reconstruction),
        "module_projection": check(r.module_projection, tol.module_projection),
        "module_commutation": check(r.module_commutation, tol.module_projection),
        "conditional_expectation": check(r.expectation, tol.subalgebra),
    })
}

/// Witness pairs used when the file gives none: the complement family
/// when `N ≠ M`, matrix-unit pairs otherwise.
pub fn default_witnesses(inc: &MatrixInclusion) -> (Vec<WitnessPair>, &'static str) {
    if !inc.n.is_whole() {
        return (complement_witnesses(&inc.n), "complement");
    }
    let units = inc.m.units();
    let pairs = units
        .iter()
        .flat_map(|x| units.iter().map(move |y| WitnessPair { x: x.clone(), y: y.clone() }))
        .take(16)
        .collect();
    (pairs, "matrix-units")
}

pub fn gap_report(b: &SubalgebraHandle, n: &SubalgebraHandle, pairs: &[WitnessPair], source: &str, seed: u64, tol: &Tolerances) -> Result<Value, VnError> {
    let g = wahp_gap(b, n, pairs, &OptimizerConfig::new(seed), tol)?;
    Ok(json!({
        "pairs": pairs.len(),
        "pair_source": source,
        "optimizer_value": g.optimizer_value,
        "oracle_value": g.oracle_value,
        "gap": g.gap(),
        "unitary_residual": g.unitary_residual,
        "unitary_ok": g.unitary_residual < tol.unitary,
        "iterations": g.iterations,
        "restarts": g.restarts,
        "seed": g.seed,
        "converged": g.converged,
        "tier": NUMERICAL,
    }))
}

pub fn run_vn_analysis(text: &str, overrides: &Overrides) -> Result<Value, RunError> {
    let mut inc = parse_matrix_file(text)?;
    for (key, value) in &overrides.tolerances {
        inc.tolerances.set(key, *value).map_err(|e| {
            RunError::Input(InputError { field: format!("--tolerance {key}"), line: None, message: e.to_string() })
        })?;
    }
    let seed = overrides.seed.or(inc.seed).unwrap_or(DEFAULT_SEED);
    let tol = inc.tolerances.clone();
    let bc = BasicConstruction::new(&inc.b, Some(&inc.n), &tol)?;
    let residuals = identity_residuals(&bc, seed, 4)?;
    let (pairs, source) = match &inc.witness_pairs {
        Some(p) => (p.clone(), "file"),
        None => default_witnesses(&inc),
    };
    let gap = gap_report(&inc.b, &inc.n, &pairs, source, seed, &tol)?;
    let mut warnings = Vec::new();
    if inc.m.was_rescaled() {
        warnings.push(String::from("weights rescaled so that the trace of 1 is 1"));
    }
    let modules: Vec<Value> = inc
        .m
        .units()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let q = qn1_module_test(&inc.b, x, &tol);
            json!({ "unit": i, "module_dim": q.module_dim, "basis_size": q.basis.len() })
        })
        .collect();
    let tolerances: serde_json::Map<String, Value> =
        Tolerances::KEYS.iter().map(|k| (k.to_string(), json!(tol.get(k)))).collect();
    Ok(json!({
        "kind": "matrix-inclusion",
        "algebra": {
            "blocks": inc.m.dims(),
            "weights": inc.m.weights(),
            "dimension": inc.m.dim(),
            "rescaled": inc.m.was_rescaled(),
            "tier": report::EXACT,
        },
        "warnings": warnings,
        "subalgebras": {
            "b_dimension": inc.b.dim(),
            "n_dimension": inc.n.dim(),
            "n_is_whole": inc.n.is_whole(),
            "b_closure_residual": inc.b.closure_residual(),
            "n_closure_residual": inc.n.closure_residual(),
            "tier": NUMERICAL,
        },
        "basic_construction": {
            "pimsner_popa_size": bc.pimsner_popa_basis().len(),
            "build_residual": bc.build_residual(),
            "tier": NUMERICAL,
        },
        "identities": identity_report(&residuals, &tol),
        "modules": { "entries": modules, "tier": NUMERICAL },
        "gap": gap,
        "seed": seed,
        "tolerances": tolerances,
    }))
}

/// True when every identity check in a `vn` report passed.
pub fn identities_pass(report: &Value) -> bool {
    report["identities"].as_object().is_some_and(|m| m.values().all(|c| c["pass"] == json!(true)))
}
