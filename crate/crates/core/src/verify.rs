//! End-to-end verification of one triangle.
//!
//! Mathematical failures never surface as `Err`; they become failed checks in
//! the report. Only an invalid configuration is an error.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exec::Execution;
use crate::geometry::{construct_scene, RightTriangle};
use crate::numeric::{rel_or_abs_err, GEOMETRIC_TOLERANCE};
use crate::oracle::{mc_region_area_with, multiplicity_check_with, quadrature_region_area, OracleEstimate, MIN_SAMPLES};
use crate::region::{
    region_a_congruence_literal, region_area, region_spec, AngleLedger, RegionId, ANGLE_TOLERANCE_DEG,
};
use crate::symbolic::{boxed_ledger, decomposition_ledger, pythagoras_residual, residual_polynomial_identity, BasisTerm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: u64,
    pub seed: u64,
    /// Relative tolerance for analytic agreement checks.
    pub tol_analytic: f64,
    /// Absolute slack added to the 3-sigma Monte-Carlo band.
    pub tol_stat: f64,
    /// Boundary exclusion band for the multiplicity check, relative to `c`.
    pub epsilon: f64,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 1_000_000,
            seed: 0,
            tol_analytic: 1e-9,
            tol_stat: 1e-9,
            epsilon: 1e-9,
            exec: Execution::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return domain(format!("samples must be at least {MIN_SAMPLES} (got {})", self.samples));
        }
        for (name, v) in [
            ("tol_analytic", self.tol_analytic),
            ("tol_stat", self.tol_stat),
            ("epsilon", self.epsilon),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return domain(format!("{name} must be positive and finite (got {v})"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            // NaN residuals fail.
            pass: residual <= tolerance,
            residual,
            tolerance,
        }
    }

    fn failed(name: impl Into<String>, why: &str) -> Self {
        CheckResult {
            name: format!("{} ({why})", name.into()),
            pass: false,
            residual: f64::NAN,
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub theta_deg: f64,
    pub seed: u64,
    pub samples: u64,
    pub checks: Vec<CheckResult>,
    pub estimates: Vec<OracleEstimate>,
    pub notes: Vec<String>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify_all(tri: &RightTriangle, config: &VerifyConfig) -> Result<VerificationReport> {
    config.validate()?;
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    let mut checks = Vec::new();
    let mut estimates = Vec::new();
    let mut notes = Vec::new();

    if a > b {
        notes.push(format!("legs given with a > b ({a} > {b}); no formula depends on the ordering"));
    }

    let scene = match construct_scene(*tri) {
        Ok(scene) => scene,
        Err(e) => {
            checks.push(CheckResult::failed("scene", &e.to_string()));
            return Ok(finish(tri, config, checks, estimates, notes));
        }
    };
    if scene.g().distance(scene.d()) <= GEOMETRIC_TOLERANCE * c {
        notes.push("isosceles triangle: G coincides with D; all regions remain well defined".to_string());
    }

    // (1) scene invariants
    for r in scene.invariant_residuals() {
        checks.push(CheckResult::new(format!("scene.{}", r.name), r.residual, GEOMETRIC_TOLERANCE));
    }

    // (2) angle ledger against measured angles
    match AngleLedger::measure(&scene) {
        Ok(measured) => {
            let (_, dev) = AngleLedger::from_theta(scene.theta_deg()).max_deviation(&measured);
            checks.push(CheckResult::new("angle_ledger", dev, ANGLE_TOLERANCE_DEG));
        }
        Err(e) => checks.push(CheckResult::failed("angle_ledger", &e.to_string())),
    }

    // (3) closed form vs quadrature, (4) closed form vs Monte-Carlo
    let domain_disk = scene.circle_d();
    for id in RegionId::CHORD_REGIONS {
        let closed = region_area(id, tri);
        let spec = match region_spec(id, &scene) {
            Ok(spec) => spec,
            Err(e) => {
                checks.push(CheckResult::failed(format!("quadrature.{id}"), &e.to_string()));
                continue;
            }
        };
        match quadrature_region_area(&spec) {
            Ok(q) => checks.push(CheckResult::new(
                format!("quadrature.{id}"),
                rel_or_abs_err(closed, q),
                config.tol_analytic,
            )),
            Err(e) => checks.push(CheckResult::failed(format!("quadrature.{id}"), &e.to_string())),
        }
        match mc_region_area_with(&spec, &domain_disk, config.samples, config.seed, config.exec) {
            Ok(est) => {
                checks.push(CheckResult::new(
                    format!("monte_carlo.{id}"),
                    (est.mean - closed).abs(),
                    3.0 * est.std_error + config.tol_stat,
                ));
                estimates.push(est);
            }
            Err(e) => checks.push(CheckResult::failed(format!("monte_carlo.{id}"), &e.to_string())),
        }
    }

    // (5) pointwise signed multiplicity
    match multiplicity_check_with(&scene, config.samples, config.seed, config.epsilon * c, config.exec) {
        Ok(m) => checks.push(CheckResult::new("multiplicity", m.violations as f64, 0.0)),
        Err(e) => checks.push(CheckResult::failed("multiplicity", &e.to_string())),
    }
    notes.push(
        "partition claim checked as a signed multiplicity identity m(p) = s(p) almost everywhere; \
         the subtracted segments overlap the leg semicircles, so the regions are not set-disjoint"
            .to_string(),
    );

    // (6) exact ledger
    let ledger = decomposition_ledger();
    let surviving_theta_or_leg_terms = [
        BasisTerm::UPA,
        BasisTerm::UPB,
        BasisTerm::UPC,
        BasisTerm::PA,
        BasisTerm::PB,
    ]
    .iter()
    .filter(|t| !ledger.coeff(**t).is_zero())
    .count();
    checks.push(CheckResult::new("ledger.zero_coefficients", surviving_theta_or_leg_terms as f64, 0.0));
    checks.push(CheckResult::new(
        "ledger.boxed_coefficients",
        if ledger == boxed_ledger() { 0.0 } else { 1.0 },
        0.0,
    ));
    checks.push(CheckResult::new(
        "ledger.polynomial_factoring",
        if residual_polynomial_identity() { 0.0 } else { 1.0 },
        0.0,
    ));

    // (7) residual, normalised by the triangle area ab/2 so it is scale-free
    match pythagoras_residual(a, b, c) {
        Ok(r) => checks.push(CheckResult::new(
            "pythagoras_residual",
            (r / (0.5 * a * b)).abs(),
            config.tol_analytic,
        )),
        Err(e) => checks.push(CheckResult::failed("pythagoras_residual", &e.to_string())),
    }

    let lemma_rhs = region_a_congruence_literal(tri);
    let ra = region_area(RegionId::RA, tri);
    notes.push(format!(
        "region A congruence as literally stated gives RC + RD - [AGC] = {lemma_rhs:.6}, \
         not RA = {ra:.6}; the partition identity SC = [ABC] + RA + RB is checked instead"
    ));

    Ok(finish(tri, config, checks, estimates, notes))
}

fn finish(
    tri: &RightTriangle,
    config: &VerifyConfig,
    checks: Vec<CheckResult>,
    estimates: Vec<OracleEstimate>,
    notes: Vec<String>,
) -> VerificationReport {
    let overall_pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
    VerificationReport {
        a: tri.a(),
        b: tri.b(),
        c: tri.c(),
        theta_deg: tri.theta_deg(),
        seed: config.seed,
        samples: config.samples,
        checks,
        estimates,
        notes,
        overall_pass,
    }
}
