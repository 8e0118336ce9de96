//! Identity batteries and their reports.
//!
//! A suite is an ordered list of checks. Each check is evaluated once per
//! sampled point with its own seeded random arguments, and aggregated over
//! points in index order, so reports are reproducible bit for bit.

mod btensor;
mod catalog;

use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use btensor::{b_preset, b_tensor, b_value, b_vector, BCoefficients, BPreset};
pub use catalog::{Check, CheckKind, Ctx, Tolerance, REQUIRED_ANCHORS};

use crate::curvature::CurvatureSign;
use crate::error::{Error, Result};
use crate::field::WedgeConvention;
use crate::models::{
    calibrated_heisenberg, flat_kahler_model, sample_points, sphere_model, ModelInstance, ModelKind,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Suites that need a contact structure.
pub const CONTACT_SUITES: [&str; 8] = [
    "structure-laws",
    "sasakian-definition",
    "normality",
    "curvature-identities",
    "gh-curvature-symmetries",
    "sectional-relations",
    "ricci-identities",
    "flatness-probes",
];

pub const ENGINE_SUITE: &str = "engine-calibration";

pub fn suite_ids() -> Vec<&'static str> {
    let mut v = vec![ENGINE_SUITE];
    v.extend(CONTACT_SUITES);
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub model: ModelKind,
    pub suites: Vec<String>,
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
    pub sphere_dim: usize,
    pub sphere_radius: f64,
    /// Extra coefficient vectors for the flatness probes.
    pub extra_b: Vec<BCoefficients>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            model: ModelKind::Heisenberg,
            suites: vec!["all".into()],
            points: 64,
            seed: 42,
            tol: 1e-8,
            sphere_dim: 5,
            sphere_radius: 1.0,
            extra_b: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn new(model: ModelKind, suite: &str) -> SuiteConfig {
        SuiteConfig {
            model,
            suites: vec![suite.to_string()],
            ..SuiteConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::InvalidConfig("points must be >= 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidConfig("no suites requested".into()));
        }
        for s in &self.suites {
            if s != "all" && !suite_ids().contains(&s.as_str()) {
                return Err(Error::UnknownSuite(s.clone()));
            }
        }
        Ok(())
    }

    /// Suite ids after expanding `all` for the given model.
    pub fn expanded(&self, model: &ModelInstance) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for s in &self.suites {
            if s == "all" {
                out.push(ENGINE_SUITE.into());
                if model.bundle.is_some() {
                    out.extend(CONTACT_SUITES.iter().map(|s| s.to_string()));
                }
            } else {
                out.push(s.clone());
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|s| seen.insert(s.clone()));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub id: String,
    pub anchor: String,
    pub kind: CheckKind,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFlags {
    pub signs: [i8; 4],
    pub eta_scale: f64,
    pub wedge: WedgeConvention,
    pub curvature_sign: CurvatureSign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationMeta {
    pub lambda: f64,
    pub mu: f64,
    pub flags: CalibrationFlags,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub model: String,
    pub suites: Vec<String>,
    pub seed: u64,
    pub tol: f64,
    pub points: usize,
    /// Seconds since the Unix epoch; the only nondeterministic field.
    pub timestamp: u64,
    pub calibration: Option<CalibrationMeta>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{:<4} {}/{}  \"{}\"  max={:.3e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.suite,
                c.id,
                c.anchor,
                c.max_residual
            ));
        }
        s.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.checks.len(),
            self.failures().len(),
            if self.pass { "PASS" } else { "FAIL" }
        ));
        s
    }

    /// Copy with the timestamp zeroed, for reproducibility comparisons.
    pub fn without_timestamp(&self) -> SuiteReport {
        SuiteReport {
            timestamp: 0,
            ..self.clone()
        }
    }
}

pub fn build_model(cfg: &SuiteConfig) -> Result<ModelInstance> {
    match cfg.model {
        ModelKind::Heisenberg => calibrated_heisenberg(cfg.seed),
        ModelKind::FlatKahler => Ok(flat_kahler_model()),
        ModelKind::Sphere => sphere_model(cfg.sphere_dim, cfg.sphere_radius),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let model = build_model(cfg)?;
    run_on_model(&model, cfg)
}

fn fnv1a(parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for p in parts {
        for b in p.bytes().chain([0xff]) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Argument stream of one check at one point.
pub fn check_rng(seed: u64, point: usize, suite: &str, id: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&[suite, id]));
    rng.set_stream(point as u64);
    rng
}

fn base_notes() -> Vec<String> {
    vec![
        "curvature convention: R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], R(X,Y,Z,W) = g(R(X,Y)Z,W); global sign pinned by R(X,U)U = X for horizontal X".into(),
        "B-tensor: the final scalar-curvature term is read as a10 g(X,Y)g(Z,W)".into(),
        "flatness replay uses rho(X,U) = 4p u(X) with p = 1; the same step is sometimes written with 4n".into(),
        "witness checks certify nonvanishing at sampled points (nonvanishing witnessed), not a proof".into(),
        "spread checks report max - min over points as max_residual and the mean value as mean_residual".into(),
    ]
}

pub fn run_on_model(model: &ModelInstance, cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let ids = cfg.expanded(model);
    for id in &ids {
        if CONTACT_SUITES.contains(&id.as_str()) && model.bundle.is_none() {
            return Err(Error::NoContactBundle {
                model: model.name.clone(),
            });
        }
    }
    let checks: Vec<(String, Check)> = ids
        .iter()
        .map(|id| {
            Ok(catalog::suite_checks(id, model, cfg)?
                .into_iter()
                .map(|c| (id.clone(), c)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let needs_structure = ids.iter().any(|id| CONTACT_SUITES.contains(&id.as_str()));
    run_checks(model, cfg, ids, checks, needs_structure)
}

/// Flatness certificates for a single coefficient vector: the `B != 0`
/// witness, the `rho(X,X)` replay when its preconditions hold, and the
/// GH-B witnesses with the `G`-invariance equality.
pub fn flatness_probes(
    c: &BCoefficients,
    model: &ModelInstance,
    cfg: &SuiteConfig,
) -> Result<SuiteReport> {
    model.bundle()?;
    let suite = "flatness-probes".to_string();
    let checks = catalog::probe_checks("custom", c, model, true)?
        .into_iter()
        .map(|k| (suite.clone(), k))
        .collect();
    run_checks(model, cfg, vec![suite], checks, true)
}

fn run_checks(
    model: &ModelInstance,
    cfg: &SuiteConfig,
    ids: Vec<String>,
    checks: Vec<(String, Check)>,
    needs_structure: bool,
) -> Result<SuiteReport> {
    let points = sample_points(&model.chart, cfg.points, cfg.seed);
    let per_point: Vec<Vec<(f64, Option<String>)>> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| -> Result<Vec<(f64, Option<String>)>> {
            let geom = model.geometry(p)?;
            let s = if needs_structure {
                Some(model.bundle()?.structure_at(p, &geom)?)
            } else {
                None
            };
            let frame = geom.orthonormal_frame()?;
            let ctx = Ctx {
                model,
                point: p,
                geom: &geom,
                s: s.as_ref(),
                frame: &frame,
                tol: cfg.tol,
            };
            Ok(checks
                .iter()
                .map(|(suite, c)| {
                    let mut rng = check_rng(cfg.seed, i, suite, &c.id);
                    match (c.eval)(&ctx, &mut rng) {
                        Ok(v) => (v, None),
                        Err(e) => (f64::NAN, Some(e.to_string())),
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let records: Vec<CheckRecord> = checks
        .iter()
        .enumerate()
        .map(|(k, (suite, c))| {
            let vals: Vec<f64> = per_point.iter().map(|r| r[k].0).collect();
            let err = per_point.iter().find_map(|r| r[k].1.clone());
            aggregate(suite, c, &vals, cfg.tol, err)
        })
        .collect();
    let pass = records.iter().all(|r| r.pass);
    let calibration = model.calibration.as_ref().map(|c| CalibrationMeta {
        lambda: c.lambda,
        mu: c.mu,
        flags: CalibrationFlags {
            signs: c.config.signs,
            eta_scale: c.config.eta_scale(),
            wedge: c.config.wedge,
            curvature_sign: c.curvature_sign,
        },
    });
    let mut notes = base_notes();
    if model.kind == ModelKind::Heisenberg {
        notes.push("eta normalization: c = 1/2 selected; c = 1 with (lambda, mu) = (1/2, 1) also passes and is isometric".into());
    }
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        model: model.name.clone(),
        suites: ids,
        seed: cfg.seed,
        tol: cfg.tol,
        points: cfg.points,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        calibration,
        checks: records,
        pass,
        notes,
    })
}

fn aggregate(suite: &str, c: &Check, vals: &[f64], tol: f64, err: Option<String>) -> CheckRecord {
    let tolerance = c.tolerance.resolve(tol);
    let any_nan = vals.iter().any(|v| v.is_nan());
    let (max, mean, pass) = match c.kind {
        CheckKind::Identity => {
            let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mean = vals.iter().map(|v| v.abs()).sum::<f64>() / vals.len() as f64;
            (max, mean, max <= tolerance)
        }
        CheckKind::Witness => {
            let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mean = vals.iter().map(|v| v.abs()).sum::<f64>() / vals.len() as f64;
            (max, mean, max >= tolerance)
        }
        CheckKind::Spread => {
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            (hi - lo, mean, hi - lo <= tolerance)
        }
    };
    let max = if any_nan { f64::NAN } else { max };
    let note = match (err, &c.note) {
        (Some(e), _) => Some(format!("evaluation error: {e}")),
        (None, Some(n)) => Some(n.clone()),
        (None, None) => None,
    };
    CheckRecord {
        suite: suite.into(),
        id: c.id.clone(),
        anchor: c.anchor.clone(),
        kind: c.kind,
        max_residual: max,
        mean_residual: mean,
        tolerance,
        pass: pass && !any_nan,
        note,
    }
}
