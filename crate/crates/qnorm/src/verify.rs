//! The acceptance suite run by `verify-paper`.
//!
//! Each criterion yields a deterministic JSON value with its measurements
//! and a `checks_pass` flag. Wall times are kept out of the JSON; a
//! criterion passes only when its checks pass and it met its time limit.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use qnorm_core::engine::{
    check_c1, compose_certificates, is_normal, orbit_bfs, product_compose, product_inclusion, qn1_membership, C1Result,
    MembershipVerdict, Normality, QnCertificate,
};
use qnorm_core::stallings::{free_qn1_decide, Qn1Decision};
use qnorm_core::vn::{
    complement_witnesses, cutdown, qn1_module_test, random_chain, random_inclusion, tensor_inclusion, wahp_gap,
    BasicConstruction, OptimizerConfig, SubalgebraHandle, Tolerances, WitnessPair,
};
use qnorm_core::{GroupDescriptor, GroupElement, Letter, SubgroupSpec, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::analysis::{gap_report, identity_residuals, run_group_analysis, run_vn_analysis, Overrides};
use crate::input::{parse_group_file, parse_matrix_file};

pub const SHIFT_EXTENSION: &str = include_str!("../data/shift_extension.toml");
pub const FREE_CYCLIC: &str = include_str!("../data/free_cyclic.toml");
pub const FREE_INDEX_TWO: &str = include_str!("../data/free_index_two.toml");
pub const INFINITE_DIHEDRAL: &str = include_str!("../data/infinite_dihedral.toml");
pub const DIAGONAL_M2: &str = include_str!("../data/diagonal_m2.toml");
pub const SCALAR_M2: &str = include_str!("../data/scalar_m2.toml");
pub const WHOLE_M2: &str = include_str!("../data/whole_m2.toml");

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Budget for the single-file group analyses.
    pub budget: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: crate::analysis::DEFAULT_SEED, budget: None }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub number: usize,
    pub title: &'static str,
    pub checks_pass: bool,
    pub measured: Value,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionOutcome {
    pub fn within_time(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed < l)
    }

    pub fn pass(&self) -> bool {
        self.checks_pass && self.within_time()
    }

    pub fn line(&self) -> String {
        let limit = self.limit.map(|l| format!(" (limit {:.0} s)", l.as_secs_f64())).unwrap_or_default();
        let note = if self.checks_pass && !self.within_time() { " over time" } else { "" };
        format!(
            "{} {:>2} {}: {} [{:.2} s{limit}]{note}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.measured["summary"].as_str().unwrap_or(""),
            self.elapsed.as_secs_f64(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "verification-suite",
            "seed": self.config.seed,
            "budget": self.config.budget,
            "criteria": self.criteria.iter().map(|c| json!({
                "number": c.number,
                "title": c.title,
                "checks_pass": c.checks_pass,
                "time_limit_seconds": c.limit.map(|l| l.as_secs()),
                "measured": c.measured,
            })).collect::<Vec<_>>(),
            "all_checks_pass": self.criteria.iter().all(|c| c.checks_pass),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.criteria.iter().map(|c| c.line() + "\n").collect();
        let passed = self.criteria.iter().filter(|c| c.pass()).count();
        out.push_str(&format!("{passed}/{} criteria passed\n", self.criteria.len()));
        out
    }
}

fn timed(
    number: usize,
    title: &'static str,
    limit: Option<u64>,
    f: impl FnOnce() -> (bool, Value),
) -> CriterionOutcome {
    let start = Instant::now();
    let (checks_pass, measured) = f();
    CriterionOutcome {
        number,
        title,
        checks_pass,
        measured,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }
}

fn failure(message: impl std::fmt::Display) -> (bool, Value) {
    (false, json!({ "summary": format!("error: {message}") }))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn overrides(config: &SuiteConfig) -> Overrides {
    Overrides { budget: config.budget, seed: Some(config.seed), ..Overrides::default() }
}

fn shift_criterion(config: &SuiteConfig) -> (bool, Value, Duration) {
    let g = GroupDescriptor::shift_extension(1);
    let Ok(k0) = SubgroupSpec::tail(&g, 0) else {
        let (p, v) = failure("no tail subgroup");
        return (p, v, Duration::ZERO);
    };
    let t = GroupElement::shift(Word::identity(), 1);
    let t_inv = GroupElement::shift(Word::identity(), -1);

    let start = Instant::now();
    let certified = match qn1_membership(&g, &k0, &t_inv, config.budget.unwrap_or(1000)) {
        Ok(MembershipVerdict::CertifiedIn(c)) => c.replay(&g, &k0).is_ok().then(|| c.cover_size()),
        _ => None,
    };
    let certify_time = start.elapsed();

    let report = run_group_analysis(SHIFT_EXTENSION, &overrides(config));
    let reported = report.as_ref().ok().and_then(|r| {
        r["probes"]["entries"].as_array()?.iter().find(|p| p["element"] == "t^-1").map(|p| p["qn1"].clone())
    });
    let reported_ok = reported
        .as_ref()
        .is_some_and(|q| q["status"] == "certified-in" && q["cover_size"] == 1 && q["tier"] == "exact");

    let mut orbits = Vec::new();
    let mut all_open = true;
    for budget in [10usize, 100, 1000, 10000] {
        match orbit_bfs(&g, &k0, &t, budget) {
            Ok(o) => {
                let ok = !o.closed && o.explored >= budget;
                all_open &= ok;
                orbits.push(json!({ "budget": budget, "closed": o.closed, "explored": o.explored, "ok": ok }));
            }
            Err(e) => {
                all_open = false;
                orbits.push(json!({ "budget": budget, "error": e.to_string() }));
            }
        }
    }
    let pass = certified == Some(1) && reported_ok && all_open;
    let summary = format!(
        "t^-1 cover size {}; report {}; orbit of t open at budgets 10..10000: {}",
        certified.map_or("-".into(), |c| c.to_string()),
        if reported_ok { "certified-in/exact" } else { "missing" },
        all_open
    );
    let measured = json!({
        "summary": summary,
        "t_inverse_cover_size": certified,
        "report_probe": reported,
        "t_orbits": orbits,
        "t_status": "unknown; the orbit exceeded every tested budget",
    });
    (pass, measured, certify_time)
}

fn criterion_1(config: &SuiteConfig) -> CriterionOutcome {
    let mut certify = Duration::ZERO;
    let mut c = timed(1, "stable letter certificates in the shift extension", Some(30), || {
        let (p, v, d) = shift_criterion(config);
        certify = d;
        (p, v)
    });
    if certify >= Duration::from_secs(1) {
        c.limit = Some(Duration::ZERO);
    }
    c
}

fn words_up_to(rank: i64, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut layer = vec![Vec::<Letter>::new()];
    let mut out = vec![Word::identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                out.push(Word::reduce(v.iter().copied()));
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

fn criterion_2(config: &SuiteConfig) -> CriterionOutcome {
    timed(2, "free group exactness for <a> in F2", Some(10), || {
        let g = GroupDescriptor::free(2);
        let a = GroupElement::Word(Word::gen(0));
        let h = match SubgroupSpec::generated(&g, &[a]) {
            Ok(h) => h,
            Err(e) => return failure(e),
        };
        let Some(graph) = h.graph() else { return failure("no folded graph") };
        let words = words_up_to(2, 4);
        let mut distinct = std::collections::BTreeSet::new();
        let mut disagreements = 0;
        let mut gamma_mismatch = 0;
        let mut in_gamma = 0;
        for w in &words {
            distinct.insert(w.clone());
            let decision = free_qn1_decide(graph, w);
            let orbit = orbit_bfs(&g, &h, &GroupElement::Word(w.clone()), 1000);
            let agree = match (&decision, &orbit) {
                (Qn1Decision::InGamma(k), Ok(o)) => o.closed && o.representatives.len() == *k,
                (Qn1Decision::NotInGamma, Ok(o)) => !o.closed,
                _ => false,
            };
            disagreements += usize::from(!agree);
            // Oracle: exactly the powers of a.
            let power_of_a = w.letters().iter().all(|l| l.gen == 0);
            let decided_in = matches!(decision, Qn1Decision::InGamma(_));
            in_gamma += usize::from(decided_in);
            gamma_mismatch += usize::from(decided_in != power_of_a);
        }
        let report = run_group_analysis(FREE_CYCLIC, &overrides(config));
        let (label, tier) = match &report {
            Ok(r) => (r["diagnosis"]["label"].clone(), r["diagnosis"]["tier"].clone()),
            Err(e) => (json!(e.to_string()), Value::Null),
        };
        let pass = disagreements == 0 && gamma_mismatch == 0 && label == "singular-masa" && tier == "exact";
        let summary = format!(
            "{} words ({} elements), {disagreements} disagreements, Γ∩ball = powers of a: {}; diagnosis {} at {}",
            words.len(),
            distinct.len(),
            gamma_mismatch == 0,
            label.as_str().unwrap_or("-"),
            tier.as_str().unwrap_or("-"),
        );
        (
            pass,
            json!({
                "summary": summary,
                "words": words.len(),
                "distinct_elements": distinct.len(),
                "disagreements": disagreements,
                "gamma_mismatches": gamma_mismatch,
                "in_gamma": in_gamma,
                "diagnosis": label,
                "diagnosis_tier": tier,
            }),
        )
    })
}

/// Orbit of `gH` under `H` in the coset space `G/H = Z/2`, where the coset
/// of a word is the parity of its a-exponent sum.
fn parity_orbit_size(w: &Word, subgroup_generators: &[Word]) -> usize {
    let coset = |x: &Word| x.exponent_sum(0).rem_euclid(2);
    let mut orbit = std::collections::BTreeSet::from([coset(w)]);
    let mut frontier = vec![coset(w)];
    while let Some(c) = frontier.pop() {
        for h in subgroup_generators {
            for s in [coset(h), coset(&h.inverse())] {
                let next = (c + s).rem_euclid(2);
                if orbit.insert(next) {
                    frontier.push(next);
                }
            }
        }
    }
    orbit.len()
}

fn criterion_3(_config: &SuiteConfig) -> CriterionOutcome {
    timed(3, "finite-index commensuration", Some(10), || {
        let text = parse_group_file(FREE_INDEX_TWO);
        let (g, h) = match text {
            Ok(i) => (i.group, i.subgroup),
            Err(e) => return failure(e),
        };
        let ball = match g.enumerate_ball(3) {
            Ok(b) => b,
            Err(e) => return failure(e),
        };
        let gens: Vec<Word> = h.generators().iter().filter_map(|x| x.as_word().cloned()).collect();
        let mut certified = 0;
        let mut max_cover = 0;
        let mut oracle_mismatch = 0;
        for x in &ball {
            let Ok(MembershipVerdict::CertifiedIn(c)) = qn1_membership(&g, &h, x, 1000) else { continue };
            if c.replay(&g, &h).is_err() {
                continue;
            }
            certified += 1;
            max_cover = max_cover.max(c.cover_size());
            let w = x.as_word().cloned().unwrap_or_default();
            oracle_mismatch += usize::from(parity_orbit_size(&w, &gens) != c.cover_size());
        }
        let pass = certified == ball.len() && max_cover <= 2 && oracle_mismatch == 0;
        (
            pass,
            json!({
                "summary": format!("{certified}/{} certified in, largest cover {max_cover}, {oracle_mismatch} oracle mismatches", ball.len()),
                "ball_size": ball.len(),
                "certified_in": certified,
                "largest_cover": max_cover,
                "oracle_mismatches": oracle_mismatch,
            }),
        )
    })
}

fn shift_gamma_element<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> GroupElement {
    let steps = rng.gen_range(0..6);
    let mut x = g.identity();
    for _ in 0..steps {
        let step = if rng.gen_bool(0.3) {
            GroupElement::shift(Word::identity(), -1)
        } else {
            let i = rng.gen_range(0..5);
            GroupElement::shift(Word::from_powers(&[(i, if rng.gen_bool(0.5) { 1 } else { -1 })]), 0)
        };
        x = g.multiply(&x, &step).expect("shift elements");
    }
    x
}

fn free_element<R: Rng>(rng: &mut R) -> GroupElement {
    let len = rng.gen_range(0..7);
    let powers: Vec<(i64, i64)> =
        (0..len).map(|_| (rng.gen_range(0..2), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    GroupElement::Word(Word::from_powers(&powers))
}

fn certificate_pool(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    elements: impl Iterator<Item = GroupElement>,
) -> Vec<QnCertificate> {
    elements
        .filter_map(|x| match qn1_membership(g, h, &x, 500) {
            Ok(MembershipVerdict::CertifiedIn(c)) => Some(c),
            _ => None,
        })
        .collect()
}

fn criterion_4(config: &SuiteConfig) -> CriterionOutcome {
    timed(4, "certificate algebra", Some(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x4);
        let s = GroupDescriptor::shift_extension(3);
        let Ok(k0) = SubgroupSpec::tail(&s, 0) else { return failure("no tail subgroup") };
        let f = match parse_group_file(FREE_INDEX_TWO) {
            Ok(i) => i,
            Err(e) => return failure(e),
        };
        let shift_pool = certificate_pool(&s, &k0, (0..32).map(|_| shift_gamma_element(&mut rng, &s)).collect::<Vec<_>>().into_iter());
        let free_pool = certificate_pool(&f.group, &f.subgroup, (0..32).map(|_| free_element(&mut rng)).collect::<Vec<_>>().into_iter());
        if shift_pool.len() < 32 || free_pool.len() < 32 {
            return failure("a sampled element was not certified");
        }
        let mut compose_failures = 0;
        for k in 0..1000 {
            let (g, h, pool) = if k % 2 == 0 { (&s, &k0, &shift_pool) } else { (&f.group, &f.subgroup, &free_pool) };
            let a = &pool[rng.gen_range(0..pool.len())];
            let b = &pool[rng.gen_range(0..pool.len())];
            let ok = compose_certificates(g, h, a, b).is_ok_and(|c| {
                c.replay(g, h).is_ok()
                    && g.multiply(&a.element, &b.element).is_ok_and(|ab| ab == c.element)
                    && c.cover_size() <= a.cover_size() * b.cover_size()
            });
            compose_failures += usize::from(!ok);
        }
        let (pg, ph) = product_inclusion(&s, &k0, &f.group, &f.subgroup);
        let mut product_failures = 0;
        for _ in 0..1000 {
            let a = &shift_pool[rng.gen_range(0..shift_pool.len())];
            let b = &free_pool[rng.gen_range(0..free_pool.len())];
            let ok = product_compose(&s, &k0, a, &f.group, &f.subgroup, b).is_ok_and(|c| {
                c.replay(&pg, &ph).is_ok() && c.cover_size() == a.cover_size() * b.cover_size()
            });
            product_failures += usize::from(!ok);
        }
        (
            compose_failures == 0 && product_failures == 0,
            json!({
                "summary": format!("1000 compositions, {compose_failures} failures; 1000 products, {product_failures} failures"),
                "compose_failures": compose_failures,
                "product_failures": product_failures,
            }),
        )
    })
}

fn criterion_5(config: &SuiteConfig) -> CriterionOutcome {
    timed(5, "normal subgroup of the infinite dihedral group", Some(5), || {
        let inc = match parse_group_file(INFINITE_DIHEDRAL) {
            Ok(i) => i,
            Err(e) => return failure(e),
        };
        let (g, h) = (&inc.group, &inc.subgroup);
        let normal = is_normal(g, h);
        let r = GroupElement::Word(Word::gen(1));
        let c1 = check_c1(g, h, &r, 100);
        let report = run_group_analysis(INFINITE_DIHEDRAL, &overrides(config));
        let (label, tier, normality_tier) = match &report {
            Ok(v) => (v["diagnosis"]["label"].clone(), v["diagnosis"]["tier"].clone(), v["normality"]["tier"].clone()),
            Err(e) => (json!(e.to_string()), Value::Null, Value::Null),
        };
        let normal_ok = normal == Ok(Normality::Normalizes) && normality_tier == "exact";
        let c1_ok = matches!(c1, Ok(C1Result::AtLeast(n)) if n >= 100);
        let cartan_ok = label == "cartan" && tier == "exact";
        (
            normal_ok && c1_ok && cartan_ok,
            json!({
                "summary": format!(
                    "normal {normal_ok}, C1 for r {}, diagnosis {} at {}",
                    match &c1 { Ok(C1Result::AtLeast(n)) => format!("at least {n}"), Ok(_) => "finite".into(), Err(e) => e.to_string() },
                    label.as_str().unwrap_or("-"),
                    tier.as_str().unwrap_or("-"),
                ),
                "normal": normal_ok,
                "c1_at_least_100": c1_ok,
                "diagnosis": label,
                "diagnosis_tier": tier,
            }),
        )
    })
}

fn criterion_6(config: &SuiteConfig) -> CriterionOutcome {
    timed(6, "basic construction identities on random inclusions", Some(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6);
        let tol = Tolerances::default();
        let mut worst = [0.0f64; 7];
        let limits = [1e-10, 1e-12, 1e-10, 1e-9, 1e-9, 1e-9, 1e-9];
        for _ in 0..20 {
            let inc = random_inclusion(&mut rng, 30);
            let bc = match BasicConstruction::new(&inc.b, None, &tol) {
                Ok(bc) => bc,
                Err(e) => return failure(e),
            };
            let r = match identity_residuals(&bc, rng.gen(), 3) {
                Ok(r) => r,
                Err(e) => return failure(e),
            };
            let values = [
                r.trace_identity,
                r.compression,
                r.pull_down,
                r.lemma_norm.max(r.lemma_pull_down),
                r.reconstruction,
                r.module_projection,
                r.module_commutation,
            ];
            for (w, v) in worst.iter_mut().zip(values) {
                *w = w.max(v);
            }
        }
        let names = ["trace", "compression", "pull_down", "lemmas", "reconstruction", "p_h_projection", "p_h_commutation"];
        let pass = worst.iter().zip(limits).all(|(w, l)| *w < l);
        let summary = names.iter().zip(worst).map(|(n, w)| format!("{n} {w:.1e}")).collect::<Vec<_>>().join(", ");
        let fields: serde_json::Map<String, Value> =
            names.iter().zip(worst.iter().zip(limits)).map(|(n, (w, l))| (n.to_string(), json!({ "worst": w, "limit": l }))).collect();
        (pass, json!({ "summary": format!("20 inclusions: {summary}"), "residuals": fields }))
    })
}

/// `|τ(xy)|^2` for 2x2 matrices under the normalized trace.
fn scalar_gap_oracle(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> f64 {
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for k in 0..2 {
            tr += x[i][k] * y[k][i];
        }
    }
    (tr / 2.0).norm_sqr()
}

/// `‖E_B(e12 u e21)‖_2^2 = |u_22|^2 τ(e11)` for diagonal unitaries `u`.
fn diagonal_gap_oracle() -> f64 {
    let tau_e11 = 0.5;
    let unimodular = 1.0;
    unimodular * tau_e11
}

fn vn_gap(text: &str, seed: u64) -> Result<(f64, f64, f64, bool), String> {
    let inc = parse_matrix_file(text).map_err(|e| e.to_string())?;
    let pairs = inc.witness_pairs.clone().unwrap_or_default();
    let g = wahp_gap(&inc.b, &inc.n, &pairs, &OptimizerConfig::new(seed), &inc.tolerances).map_err(|e| e.to_string())?;
    Ok((g.optimizer_value.unwrap_or(f64::NAN), g.oracle_value, g.gap(), g.unitary_residual < inc.tolerances.unitary))
}

fn criterion_7(config: &SuiteConfig) -> CriterionOutcome {
    timed(7, "quantitative gaps in M2", Some(30), || {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let flip = [[o, l], [l, o]];
        let diag_oracle = diagonal_gap_oracle();
        let scalar_oracle = scalar_gap_oracle(flip, flip);
        let diag = vn_gap(DIAGONAL_M2, config.seed);
        let scalar = vn_gap(SCALAR_M2, config.seed);
        let (Ok(d), Ok(s)) = (&diag, &scalar) else {
            return failure(format!("{:?} {:?}", diag.err(), scalar.err()));
        };
        let diag_ok = close(d.0, 0.5, 1e-6) && close(d.1, 0.5, 1e-6) && close(d.0, diag_oracle, 1e-6) && d.3;
        let scalar_ok = close(s.2, scalar_oracle, 1e-6) && close(s.1, scalar_oracle, 1e-6) && s.3;
        (
            diag_ok && scalar_ok,
            json!({
                "summary": format!(
                    "diagonal: optimizer {:.6}, oracle {:.6}, closed form {:.6}; scalars: gap {:.6}, closed form {:.6}",
                    d.0, d.1, diag_oracle, s.2, scalar_oracle
                ),
                "diagonal": { "optimizer": d.0, "grid_oracle": d.1, "closed_form": diag_oracle },
                "scalars": { "gap": s.2, "grid_oracle": s.1, "closed_form": scalar_oracle },
            }),
        )
    })
}

fn unit_pairs(m: &qnorm_core::vn::MultiMatrixAlgebra) -> Vec<WitnessPair> {
    let units = m.units();
    units.iter().flat_map(|x| units.iter().map(move |y| WitnessPair { x: x.clone(), y: y.clone() })).take(16).collect()
}

fn criterion_8(config: &SuiteConfig) -> CriterionOutcome {
    timed(8, "gap vanishes exactly when N = M", Some(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x8);
        let tol = Tolerances::default();
        let mut whole_gaps = Vec::new();
        let mut proper_gaps = Vec::new();
        for _ in 0..10 {
            let inc = random_chain(&mut rng, 20, false);
            match wahp_gap(&inc.b, &inc.n, &unit_pairs(&inc.m), &OptimizerConfig::new(rng.gen()), &tol) {
                Ok(g) => whole_gaps.push(g.gap()),
                Err(e) => return failure(e),
            }
        }
        for _ in 0..10 {
            let inc = random_chain(&mut rng, 20, true);
            let pairs = complement_witnesses(&inc.n);
            match wahp_gap(&inc.b, &inc.n, &pairs, &OptimizerConfig::new(rng.gen()), &tol) {
                Ok(g) => proper_gaps.push(g.gap()),
                Err(e) => return failure(e),
            }
        }
        let whole_ok = whole_gaps.iter().all(|&g| g == 0.0);
        let smallest = proper_gaps.iter().copied().fold(f64::INFINITY, f64::min);
        let largest_whole = whole_gaps.iter().copied().fold(0.0, f64::max);
        (
            whole_ok && smallest > 0.01,
            json!({
                "summary": format!("N = M: largest gap {largest_whole:e}; N ≠ M: smallest gap {smallest:.4}"),
                "whole_gaps": whole_gaps,
                "proper_gaps": proper_gaps,
            }),
        )
    })
}

fn criterion_9(config: &SuiteConfig) -> CriterionOutcome {
    timed(9, "tensor and corner modules", Some(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9);
        let tol = Tolerances::default();
        let mut tensor_failures = 0;
        for _ in 0..50 {
            let a = random_inclusion(&mut rng, 9);
            let b = random_inclusion(&mut rng, 9);
            let t = tensor_inclusion(&a, &b);
            let x = a.m.random_element(&mut rng);
            let y = b.m.random_element(&mut rng);
            let dx = qn1_module_test(&a.b, &x, &tol).module_dim;
            let dy = qn1_module_test(&b.b, &y, &tol).module_dim;
            let dxy = qn1_module_test(&t.b, &a.m.tensor_elements(&x, &b.m, &y), &tol).module_dim;
            tensor_failures += usize::from(dxy != dx * dy);
        }
        let mut worst: f64 = 0.0;
        let mut pairs = 0;
        while pairs < 20 {
            let inc = random_inclusion(&mut rng, 20);
            let e = spectral_projection(&inc.b, &mut rng);
            if inc.m.tau(&e).re < 1e-6 {
                continue;
            }
            let c = match cutdown(&inc.b, &e, &tol) {
                Ok(c) => c,
                Err(err) => return failure(err),
            };
            let samples: Vec<_> = (0..inc.m.dim()).map(|_| inc.m.random_element(&mut rng)).collect();
            worst = worst.max(c.containment_residual(&inc.b, &samples, &tol));
            pairs += 1;
        }
        (
            tensor_failures == 0 && worst < 1e-9,
            json!({
                "summary": format!("50 tensor pairs, {tensor_failures} failures; 20 corners, worst residual {worst:.1e}"),
                "tensor_failures": tensor_failures,
                "cutdown_residual": worst,
            }),
        )
    })
}

/// Positive spectral projection of a random self-adjoint element of `B`.
fn spectral_projection<R: Rng>(b: &SubalgebraHandle, rng: &mut R) -> qnorm_core::vn::AlgebraElement {
    let h = b.expect(&b.ambient().random_element(rng));
    let h = h.add(&h.adjoint());
    h.hermitian_calculus(|l| Complex64::new(if l > 0.0 { 1.0 } else { 0.0 }, 0.0))
}

fn criteria_1_to_9(config: &SuiteConfig) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(config),
        criterion_2(config),
        criterion_3(config),
        criterion_4(config),
        criterion_5(config),
        criterion_6(config),
        criterion_7(config),
        criterion_8(config),
        criterion_9(config),
    ]
}

fn measurements(criteria: &[CriterionOutcome]) -> String {
    let values: Vec<Value> =
        criteria.iter().map(|c| json!({ "number": c.number, "checks_pass": c.checks_pass, "measured": c.measured })).collect();
    serde_json::to_string(&values).expect("plain values")
}

/// Runs every criterion; the last one repeats the others and compares
/// their machine-readable output byte for byte.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut criteria = criteria_1_to_9(config);
    let first = measurements(&criteria);
    let tenth = timed(10, "deterministic output", None, || {
        let second = measurements(&criteria_1_to_9(config));
        let vn_a = run_vn_analysis(WHOLE_M2, &overrides(config)).map(|v| v.to_string()).ok();
        let vn_b = run_vn_analysis(WHOLE_M2, &overrides(config)).map(|v| v.to_string()).ok();
        let same = first == second && vn_a.is_some() && vn_a == vn_b;
        (
            same,
            json!({
                "summary": format!("second run identical: {same} ({} bytes)", first.len()),
                "bytes": first.len(),
                "identical": same,
            }),
        )
    });
    criteria.push(tenth);
    SuiteReport { config: config.clone(), criteria }
}

/// Reports for the bundled files, used by integration tests.
pub fn whole_m2_gaps(seed: u64) -> Result<Vec<f64>, String> {
    let inc = parse_matrix_file(WHOLE_M2).map_err(|e| e.to_string())?;
    let v = gap_report(&inc.b, &inc.n, &unit_pairs(&inc.m), "matrix-units", seed, &inc.tolerances).map_err(|e| e.to_string())?;
    Ok(vec![v["gap"].as_f64().unwrap_or(f64::NAN), v["oracle_value"].as_f64().unwrap_or(f64::NAN)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration_counts() {
        let words = words_up_to(2, 4);
        assert_eq!(words.len(), 341);
        let distinct: std::collections::BTreeSet<_> = words.into_iter().collect();
        assert_eq!(distinct.len(), 161);
    }

    #[test]
    fn closed_form_oracles() {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        assert_eq!(scalar_gap_oracle([[o, l], [l, o]], [[o, l], [l, o]]), 1.0);
        assert_eq!(scalar_gap_oracle([[o, l], [o, o]], [[o, o], [l, o]]), 0.25);
        assert_eq!(diagonal_gap_oracle(), 0.5);
    }
}
