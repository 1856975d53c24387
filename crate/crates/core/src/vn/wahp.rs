//! The gap `inf_u Σ_j ‖E_B(x_j u y_j) - E_B(E_N(x_j) u E_N(y_j))‖_2^2` over
//! the unitary group of `B`.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::algebra::AlgebraElement;
use super::subalgebra::{Span, SubalgebraHandle};
use super::Tolerances;
use crate::error::VnError;

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessPair {
    pub x: AlgebraElement,
    pub y: AlgebraElement,
}

/// Settings for the multi-restart Riemannian descent and its random oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub oracle_samples: usize,
    pub gradient_tolerance: f64,
}

impl OptimizerConfig {
    pub fn new(seed: u64) -> Self {
        OptimizerConfig { seed, restarts: 16, max_iterations: 200, oracle_samples: 10_000, gradient_tolerance: 1e-14 }
    }
}

#[derive(Clone, Debug)]
pub struct WahpGapReport {
    pub pairs: Vec<WitnessPair>,
    /// Best value reached by descent, `None` when it diverged.
    pub optimizer_value: Option<f64>,
    pub oracle_value: f64,
    pub minimizer: AlgebraElement,
    /// `max(‖u*u - 1‖, ‖u - E_B(u)‖_2)` for the reported minimizer.
    pub unitary_residual: f64,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub converged: bool,
}

impl WahpGapReport {
    pub fn gap(&self) -> f64 {
        self.optimizer_value.unwrap_or(self.oracle_value)
    }
}

struct Term {
    x: AlgebraElement,
    y: AlgebraElement,
    xn: AlgebraElement,
    yn: AlgebraElement,
}

struct Objective<'a> {
    b: &'a SubalgebraHandle,
    terms: Vec<Term>,
}

impl<'a> Objective<'a> {
    fn new(b: &'a SubalgebraHandle, n: &SubalgebraHandle, pairs: &[WitnessPair]) -> Self {
        let terms = pairs
            .iter()
            .map(|p| Term { x: p.x.clone(), y: p.y.clone(), xn: n.expect(&p.x), yn: n.expect(&p.y) })
            .collect();
        Objective { b, terms }
    }

    fn residual(&self, t: &Term, u: &AlgebraElement) -> AlgebraElement {
        self.b.expect(&t.x.mul(u).mul(&t.y).sub(&t.xn.mul(u).mul(&t.yn)))
    }

    fn value(&self, u: &AlgebraElement) -> f64 {
        let m = self.b.ambient();
        self.terms
            .iter()
            .map(|t| {
                let r = m.norm2(&self.residual(t, u));
                r * r
            })
            .sum()
    }

    /// Value and the Riemannian gradient `s`, self-adjoint in `B`, so that
    /// `f(u exp(-iαs)) = f(u) - α‖s‖_2^2 + O(α^2)`.
    fn value_and_direction(&self, u: &AlgebraElement) -> (f64, AlgebraElement) {
        let m = self.b.ambient();
        let mut value = 0.0;
        let mut grad = m.zero();
        for t in &self.terms {
            let r = self.residual(t, u);
            let n = m.norm2(&r);
            value += n * n;
            let back = t.x.adjoint().mul(&r).mul(&t.y.adjoint()).sub(&t.xn.adjoint().mul(&r).mul(&t.yn.adjoint()));
            grad = grad.add(&back);
        }
        let grad = self.b.expect(&grad.scale(Complex64::new(2.0, 0.0)));
        let omega = u.adjoint().mul(&grad);
        let s = omega.adjoint().sub(&omega).scale(Complex64::new(0.0, 0.5));
        (value, s)
    }
}

fn exp_i(h: &AlgebraElement, scale: f64) -> AlgebraElement {
    h.hermitian_calculus(|l| Complex64::from_polar(1.0, scale * l))
}

fn random_unitary_in<R: Rng>(rng: &mut R, sa_basis: &[AlgebraElement], b: &SubalgebraHandle) -> AlgebraElement {
    let mut h = b.ambient().zero();
    for e in sa_basis {
        let c: f64 = rng.sample(StandardNormal);
        h = h.add(&e.scale(Complex64::new(2.0 * c, 0.0)));
    }
    exp_i(&h, 1.0)
}

fn unitary_residual(b: &SubalgebraHandle, u: &AlgebraElement) -> f64 {
    let m = b.ambient();
    u.adjoint().mul(u).sub(&m.identity()).max_abs().max(b.distance(u))
}

struct Descent {
    value: f64,
    point: AlgebraElement,
    iterations: usize,
    finite: bool,
}

fn descend(f: &Objective, start: AlgebraElement, config: &OptimizerConfig) -> Descent {
    let m = f.b.ambient();
    let mut u = start;
    let mut alpha = 1.0;
    let mut iterations = 0;
    let (mut value, mut s) = f.value_and_direction(&u);
    while iterations < config.max_iterations {
        if !value.is_finite() {
            return Descent { value, point: u, iterations, finite: false };
        }
        let g = m.norm2(&s);
        if g * g <= config.gradient_tolerance {
            break;
        }
        let mut accepted = false;
        while alpha > 1e-14 {
            let candidate = u.mul(&exp_i(&s, -alpha));
            let fc = f.value(&candidate);
            if fc <= value - 1e-4 * alpha * g * g {
                u = candidate;
                accepted = true;
                alpha = (alpha * 2.0).min(1e3);
                break;
            }
            alpha *= 0.5;
        }
        iterations += 1;
        if !accepted {
            break;
        }
        let next = f.value_and_direction(&u);
        value = next.0;
        s = next.1;
    }
    Descent { finite: value.is_finite(), value, point: u, iterations }
}

/// Numerical gap of the witness family over the unitaries of `B`.
///
/// Sixteen (by default) seeded restarts of a Riemannian Armijo descent on
/// `u exp(-iαs)`, plus one started from the best random sample of the
/// oracle, so the reported value never exceeds the oracle value.
pub fn wahp_gap(
    b: &SubalgebraHandle,
    n: &SubalgebraHandle,
    pairs: &[WitnessPair],
    config: &OptimizerConfig,
    tol: &Tolerances,
) -> Result<WahpGapReport, VnError> {
    let m = b.ambient();
    if n.ambient() != m {
        return Err(VnError::Validation("B and N live in different algebras".into()));
    }
    let contained = b.containment_residual(n);
    if contained > tol.subalgebra {
        return Err(VnError::Validation(alloc::format!("B is not contained in N (residual {contained:e})")));
    }
    let f = Objective::new(b, n, pairs);
    let sa = b.self_adjoint_basis();

    let mut oracle_rng = ChaCha8Rng::seed_from_u64(config.seed);
    oracle_rng.set_stream(1);
    let mut oracle_best = (f.value(&m.identity()), m.identity());
    for _ in 0..config.oracle_samples {
        let u = random_unitary_in(&mut oracle_rng, &sa, b);
        let v = f.value(&u);
        if v < oracle_best.0 {
            oracle_best = (v, u);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut starts: Vec<AlgebraElement> = (0..config.restarts).map(|_| random_unitary_in(&mut rng, &sa, b)).collect();
    starts.push(oracle_best.1.clone());
    let mut best: Option<(f64, AlgebraElement)> = None;
    let mut iterations = 0;
    let mut finite = true;
    for start in starts {
        let d = descend(&f, start, config);
        iterations += d.iterations;
        if !d.finite {
            finite = false;
            continue;
        }
        if best.as_ref().is_none_or(|(v, _)| d.value < *v) {
            best = Some((d.value, d.point));
        }
    }
    let (optimizer_value, minimizer) = match best {
        Some((v, u)) if finite => (Some(v), u),
        _ => (None, oracle_best.1.clone()),
    };
    Ok(WahpGapReport {
        pairs: pairs.to_vec(),
        optimizer_value,
        oracle_value: oracle_best.0,
        unitary_residual: unitary_residual(b, &minimizer),
        minimizer,
        iterations,
        restarts: config.restarts + 1,
        seed: config.seed,
        converged: optimizer_value.is_some(),
    })
}

/// The objective at a single unitary.
pub fn wahp_objective(b: &SubalgebraHandle, n: &SubalgebraHandle, pairs: &[WitnessPair], u: &AlgebraElement) -> f64 {
    Objective::new(b, n, pairs).value(u)
}

/// Pairs `(x_j*, x_0)` over a τ-orthonormal basis `x_j` of `M ⊖ N`.
///
/// `M ⊖ N` is a `B`-bimodule, so for every unitary `u` of `B` the objective
/// equals `Σ_k ‖x_0 b_k*‖_2^2 ≥ 1`. Empty when `N = M`.
pub fn complement_witnesses(n: &SubalgebraHandle) -> Vec<WitnessPair> {
    let m = n.ambient();
    let mut span = Span::default();
    for v in n.basis() {
        span.push(&m.to_l2(v));
    }
    let start = span.dim();
    for e in m.units() {
        span.push(&m.to_l2(&e));
    }
    let complement: Vec<AlgebraElement> = span.vectors[start..].iter().map(|v| m.from_l2(v)).collect();
    match complement.first() {
        None => Vec::new(),
        Some(x0) => complement.iter().map(|xj| WitnessPair { x: xj.adjoint(), y: x0.clone() }).collect(),
    }
}
