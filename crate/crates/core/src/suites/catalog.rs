//! The check catalog. Every check is a closure from a point context and a
//! seeded argument stream to one scalar.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::btensor::{b_preset, b_value, b_vector, BCoefficients, BPreset};
use super::SuiteConfig;
use crate::contact::StructureAtPoint;
use crate::curvature::PointGeometry;
use crate::error::{Error, Result};
use crate::field::{lie_bracket, Point, ScalarField, VectorField};
use crate::linalg::{max_abs, max_abs_matrix, Matrix, Vector};
use crate::models::{
    heisenberg_frame, random_horizontal, random_unit_horizontal_with, random_vector, ModelInstance,
    ModelKind,
};
use crate::oracle::{christoffel_fd, gradient_fd, hessian_fd, relative_gap, FD_STEP};

/// Floor for nonvanishing witnesses.
pub const EPS_B: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Passes when `max |r| <= tolerance`.
    Identity,
    /// Passes when `max |r| >= tolerance`.
    Witness,
    /// Passes when the values agree across points to within the tolerance.
    Spread,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Multiple of the configured tolerance.
    Scaled(f64),
    Fixed(f64),
}

impl Tolerance {
    pub fn resolve(self, tol: f64) -> f64 {
        match self {
            Tolerance::Scaled(k) => k * tol,
            Tolerance::Fixed(t) => t,
        }
    }
}

/// Everything a check may look at for one sample point.
pub struct Ctx<'a> {
    pub model: &'a ModelInstance,
    pub point: &'a Point,
    pub geom: &'a PointGeometry,
    pub s: Option<&'a StructureAtPoint>,
    pub frame: &'a [Vector],
    pub tol: f64,
}

impl<'a> Ctx<'a> {
    pub fn structure(&self) -> Result<&'a StructureAtPoint> {
        self.s.ok_or_else(|| Error::NoContactBundle {
            model: self.model.name.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.geom.dim()
    }

    pub fn vector(&self, rng: &mut ChaCha8Rng) -> Vector {
        random_vector(self.dim(), rng)
    }

    pub fn horizontal(&self, rng: &mut ChaCha8Rng) -> Result<Vector> {
        Ok(random_horizontal(self.structure()?, rng))
    }

    pub fn unit_horizontal(&self, rng: &mut ChaCha8Rng) -> Result<Vector> {
        Ok(random_unit_horizontal_with(
            self.geom,
            self.structure()?,
            rng,
        ))
    }

    fn r(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.geom.riemann(x, y, z)
    }

    fn r4(&self, x: &Vector, y: &Vector, z: &Vector, w: &Vector) -> f64 {
        self.geom.riemann_0_4(x, y, z, w)
    }

    fn g(&self, x: &Vector, y: &Vector) -> f64 {
        self.geom.pair(x, y)
    }

    fn rho(&self, x: &Vector, y: &Vector) -> f64 {
        self.geom.ricci_in_frame(self.frame, x, y)
    }

    fn k(&self, x: &Vector, y: &Vector) -> Result<f64> {
        self.geom.sectional(x, y)
    }
}

pub type EvalFn = dyn Fn(&Ctx<'_>, &mut ChaCha8Rng) -> Result<f64> + Send + Sync;

pub struct Check {
    pub id: String,
    pub anchor: String,
    pub kind: CheckKind,
    pub tolerance: Tolerance,
    pub note: Option<String>,
    pub eval: Box<EvalFn>,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("kind", &self.kind)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

impl Check {
    fn new<F>(kind: CheckKind, id: impl Into<String>, anchor: impl Into<String>, f: F) -> Check
    where
        F: Fn(&Ctx<'_>, &mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
    {
        let tolerance = match kind {
            CheckKind::Witness => Tolerance::Fixed(EPS_B),
            _ => Tolerance::Scaled(1.0),
        };
        Check {
            id: id.into(),
            anchor: anchor.into(),
            kind,
            tolerance,
            note: None,
            eval: Box::new(f),
        }
    }

    fn scaled(mut self, k: f64) -> Check {
        self.tolerance = Tolerance::Scaled(k);
        self
    }

    fn fixed(mut self, t: f64) -> Check {
        self.tolerance = Tolerance::Fixed(t);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Check {
        self.note = Some(n.into());
        self
    }
}

fn identity<F>(id: &str, anchor: &str, f: F) -> Check
where
    F: Fn(&Ctx<'_>, &mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
{
    Check::new(CheckKind::Identity, id, anchor, f)
}

fn witness<F>(id: &str, anchor: &str, f: F) -> Check
where
    F: Fn(&Ctx<'_>, &mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
{
    Check::new(CheckKind::Witness, id, anchor, f).note("nonvanishing witnessed at sampled points")
}

fn spread<F>(id: &str, anchor: &str, f: F) -> Check
where
    F: Fn(&Ctx<'_>, &mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
{
    Check::new(CheckKind::Spread, id, anchor, f)
}

const ERRATUM: &str = "printed form; fails on the model, see the .derived companion";

/// Anchors that the Heisenberg catalog must cover.
pub const REQUIRED_ANCHORS: &[&str] = &[
    // structure
    "H = GJ",
    "V = -JU",
    "v = u o J",
    "G^2 = H^2 = -I + u(x)U + v(x)V",
    "GJ = -JG",
    "GU = 0",
    "g(X,GY) = -g(GX,Y)",
    "HG = -GH = J + u(x)V - v(x)U",
    "JH = -HJ = G",
    "GU = HU = HV = 0",
    "uG = vG = uH = vH = 0",
    "JV = U",
    "g(U,V) = 0",
    "g(HX,Y) = -g(X,HY)",
    "u(U) = v(V) = 1, u(V) = v(U) = 0",
    "X = X0 + u(X)U + v(X)V",
    // covariant derivatives and forms
    "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)",
    "dv(X,Y) = g(X,HY) - (sigma^u)(X,Y)",
    "sigma(X) = g(nabla_X U, V)",
    "nabla_X U = -GX + sigma(X)V",
    "nabla_X V = -HX - sigma(X)U",
    "nabla_U U = sigma(U)V",
    "nabla_U V = -sigma(U)U",
    "nabla_V U = sigma(V)V",
    "nabla_V V = -sigma(V)U",
    "sigma = 0",
    "nabla_X U = -GX",
    "nabla_X V = -HX",
    "(nabla_X G)Y = -2v(X)HGY - u(Y)X - v(Y)JX + g(X,Y)U + g(JX,Y)V",
    "(nabla_X H)Y = -2u(X)HGY + u(Y)JX - v(Y)X - g(JX,Y)U + g(X,Y)V",
    "(nabla_X J)Y = -2u(X)HY + 2v(X)GY",
    "(nabla_X J)Y = -2u(X)HY + 2v(X)GY + u(X)(2HY0 + (nabla_U J)Y0) + v(X)(-2GY0 + (nabla_U J)JY0)",
    // normality
    "[G,G](X,Y) = (nabla_GX G)Y - (nabla_GY G)X - G(nabla_X G)Y + G(nabla_Y G)X",
    "S(X,Y) = T(X,Y) = 0 for X, Y horizontal",
    "S(X,U) = T(X,V) = 0",
    "(nabla_X G)Y = sigma(X)HY - 2v(X)JY - u(Y)X - v(Y)JX + v(X)(2JY0 - (nabla_U J)GY0) + g(X,Y)U + g(JX,Y)V - dsigma(U,V)v(X)(u(Y)V - v(Y)U)",
    "(nabla_X H)Y = -sigma(X)GY + 2u(X)JY + u(Y)JX - v(Y)X + u(X)(-2JY0 - (nabla_U J)GY0) - g(JX,Y)U + g(X,Y)V + dsigma(U,V)u(X)(u(Y)V - v(Y)U)",
    // curvature
    "R(U,V)V = R(V,U)U = 0",
    "R(X,U)U = X + u(X)U + v(X)V",
    "R(X,V)V = X - u(X)U - v(X)V",
    "R(X,U)V = -3JX - 3u(X)V + 3v(X)U",
    "R(X,V)U = 0",
    "R(X,Y)U = v(X)JY - v(Y)JX + 2v(X)u(Y)V - 2v(Y)u(X)V + u(Y)X - u(X)Y - 2g(JX,Y)V",
    "R(X,Y)V = 3u(X)JY - 3u(Y)JX - 2u(X)v(Y)U + 2u(Y)v(X)U + v(Y)X - v(X)Y + 2g(JX,Y)U",
    "R(U,V)X = JX + u(X)V - v(X)U",
    "R(X,U)Y = -2v(Y)v(X)U + 2u(Y)v(X)V - g(Y,X)U + u(Y)X + g(JY,X)V",
    "R(X,V)Y = 3u(Y)JX + 2u(Y)u(X)V + 3g(JY,X)U - 2v(Y)u(X)U - g(Y,X)V + v(Y)X - 2u(X)JY",
    "g(R(GX,GY)GZ,GW) = g(R(X,Y)Z,W)",
    "g(R(HX,HY)HZ,HW) = g(R(X,Y)Z,W)",
    "g(R(X,GX)GX,X) + g(R(X,HX)HX,X) + g(R(X,JX)JX,X) = -6g(X,X)",
    "g(R(X,GX)Y,GY) = g(R(X,Y)X,Y) + g(R(X,GY)X,GY) - 2g(GX,Y)^2 - 4g(HX,Y)^2 - 2g(X,Y)^2 + 2g(X,X)g(Y,Y) - 4g(JX,Y)^2",
    "g(R(X,HX)Y,HY) = g(R(X,Y)X,Y) + g(R(X,HY)X,HY) - 2g(HX,Y)^2 - 4g(GX,Y)^2 - 2g(X,Y)^2 + 2g(X,X)g(Y,Y) - 4g(JX,Y)^2",
    "g(R(X,HX)JX,GX) = -g(R(X,HX)HX,X) - 4g(X,X)^2",
    "g(R(X,JX)HX,GX) = g(R(X,JX)JX,X) - 2g(X,X)^2",
    "g(R(GX,HX)HX,GX) = g(R(X,JX)JX,X)",
    "g(R(GX,JX)JX,GX) = g(R(X,HX)HX,X)",
    "g(R(JX,JY)JY,JX) = g(R(X,Y)Y,X)",
    "g(R(X,Y)JX,JY) = g(R(X,Y)Y,X) + 4g(X,GY)^2 + 4g(X,HY)^2",
    "g(R(Y,JX)JX,Y) = g(R(X,JY)JY,X)",
    "g(R(X,JY)JX,Y) = g(R(X,JY)JY,X) + 4g(X,HY)^2 + 4g(X,GY)^2",
    "g(R(X,JX)JY,Y) = -g(R(JX,JY)X,Y) - g(R(JY,X)JX,Y)",
    "g(R(X,JX)JY,Y) = g(R(X,Y)Y,X) + g(R(X,JY)JY,X) + 8(g(X,GY)^2 + g(X,HY)^2)",
    // sectional and Ricci
    "k(X,GX) + k(X,HX) + k(X,JX) = 6",
    "k(U,V) = 0",
    "k(X,U) = 1",
    "GH_ab(X) = k(X, aGX + bHX) independent of (a,b)",
    "k(X,JX) = GH(X) + 3",
    "k(X,GX) + k(X,HX) + GH(X) = 3",
    "rho(U,U) = rho(V,V) = 4p",
    "rho(U,V) = 0",
    "rho(X,U) = 4p u(X)",
    "rho(X,V) = 4p v(X)",
    "rho(X,Y) = rho(GX,GY) + 4p(u(X)u(Y) + v(X)v(Y))",
    "rho(X,Y) = rho(HX,HY) + 4p(u(X)u(Y) + v(X)v(Y))",
    // flatness
    "R(X,U,U,X) = 1 for unit horizontal X",
    "B(X,Y,Z,W) = a0 R(X,Y,Z,W) + a1 R(X,Z,Y,W) + ... + tau(a8 g(X,W)g(Y,Z) + a9 g(X,Z)g(Y,W) + a10 g(X,Y)g(Z,W))",
    "rho(X,X) = -(a0 + a1 + 4p a2 + tau a8)/a5",
    "G^2(B(GX,GY)GZ) = 0 and H^2(B(HX,HY)HZ) = 0",
    "g(B(GX,GY)GZ,GW) = B(X,Y,Z,W)",
];

fn unknown(id: &str) -> Error {
    Error::UnknownSuite(id.to_string())
}

pub fn suite_checks(id: &str, model: &ModelInstance, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    match id {
        "engine-calibration" => Ok(engine_checks(model)),
        "structure-laws" => Ok(structure_checks(model)),
        "sasakian-definition" => Ok(sasakian_checks(model)),
        "normality" => Ok(normality_checks()),
        "curvature-identities" => Ok(curvature_checks()),
        "gh-curvature-symmetries" => Ok(gh_checks()),
        "sectional-relations" => Ok(sectional_checks()),
        "ricci-identities" => Ok(ricci_checks(model)),
        "flatness-probes" => flatness_checks(model, cfg),
        other => Err(unknown(other)),
    }
}

fn m_abs(m: &Matrix) -> f64 {
    max_abs_matrix(m)
}

fn structure_checks(model: &ModelInstance) -> Vec<Check> {
    let mut v = vec![
        identity("H=GJ", "H = GJ", |c, _| {
            let s = c.structure()?;
            Ok(m_abs(&(&s.H - &s.G * &s.J)))
        }),
        identity("V=-JU", "V = -JU", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(&s.V + &s.J * &s.U)))
        }),
        identity("v=uJ", "v = u o J", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(&s.v - s.J.transpose() * &s.u)))
        }),
        identity("G^2", "G^2 = H^2 = -I + u(x)U + v(x)V", |c, _| {
            let s = c.structure()?;
            let n = s.dim();
            let rhs = -Matrix::identity(n, n) + &s.U * s.u.transpose() + &s.V * s.v.transpose();
            Ok(m_abs(&(&s.G * &s.G - &rhs)).max(m_abs(&(&s.H * &s.H - &rhs))))
        }),
        identity("GJ=-JG", "GJ = -JG", |c, _| {
            let s = c.structure()?;
            Ok(m_abs(&(&s.G * &s.J + &s.J * &s.G)))
        }),
        identity("GU=0", "GU = 0", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(&s.G * &s.U)))
        }),
        identity("G-skew", "g(X,GY) = -g(GX,Y)", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(s.pair(&x, &(&s.G * &y)) + s.pair(&(&s.G * &x), &y))
        }),
        identity("HG=-GH", "HG = -GH = J + u(x)V - v(x)U", |c, _| {
            let s = c.structure()?;
            let hg = &s.H * &s.G;
            let rhs = &s.J + &s.V * s.u.transpose() - &s.U * s.v.transpose();
            Ok(m_abs(&(&hg + &s.G * &s.H)).max(m_abs(&(hg - rhs))))
        }),
        identity("JH=-HJ=G", "JH = -HJ = G", |c, _| {
            let s = c.structure()?;
            Ok(m_abs(&(&s.J * &s.H - &s.G)).max(m_abs(&(&s.H * &s.J + &s.G))))
        }),
        identity("GU=HU=HV=0", "GU = HU = HV = 0", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(&s.G * &s.U))
                .max(max_abs(&(&s.H * &s.U)))
                .max(max_abs(&(&s.H * &s.V))))
        }),
        identity("uG=vG=uH=vH=0", "uG = vG = uH = vH = 0", |c, _| {
            let s = c.structure()?;
            let (gt, ht) = (s.G.transpose(), s.H.transpose());
            Ok([&gt * &s.u, &gt * &s.v, &ht * &s.u, &ht * &s.v]
                .iter()
                .map(max_abs)
                .fold(0.0, f64::max))
        }),
        identity("JV=U", "JV = U", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(&s.J * &s.V - &s.U)))
        }),
        identity("g(U,V)=0", "g(U,V) = 0", |c, _| {
            let s = c.structure()?;
            Ok(s.pair(&s.U, &s.V))
        }),
        identity("H-skew", "g(HX,Y) = -g(X,HY)", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(s.pair(&(&s.H * &x), &y) + s.pair(&x, &(&s.H * &y)))
        }),
        identity("duality", "u(U) = v(V) = 1, u(V) = v(U) = 0", |c, _| {
            let s = c.structure()?;
            Ok([
                s.u_of(&s.U) - 1.0,
                s.v_of(&s.V) - 1.0,
                s.u_of(&s.V),
                s.v_of(&s.U),
            ]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs())))
        }),
        identity(
            "g(GX,GY)",
            "g(GX,GY) = g(X,Y) - u(X)u(Y) - v(X)v(Y)",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(s.pair(&(&s.G * &x), &(&s.G * &y)) - s.pair(&x, &y)
                    + s.u_of(&x) * s.u_of(&y)
                    + s.v_of(&x) * s.v_of(&y))
            },
        ),
        identity("J^2=-I", "J^2 = -I", |c, _| {
            let s = c.structure()?;
            let n = s.dim();
            Ok(m_abs(&(&s.J * &s.J + Matrix::identity(n, n))))
        }),
        identity("g(U,U)=1", "g(U,U) = 1", |c, _| {
            let s = c.structure()?;
            Ok(s.pair(&s.U, &s.U) - 1.0)
        }),
        identity("split", "X = X0 + u(X)U + v(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let sp = s.split(&x);
            let recon = max_abs(&(sp.reconstruct(s) - &x));
            Ok(recon.max(s.u_of(&sp.horizontal).abs() + s.v_of(&sp.horizontal).abs()))
        }),
    ];
    if model.kind == ModelKind::Heisenberg {
        let [e1, _, e3, _] = heisenberg_frame();
        let bracket = lie_bracket(&e1, &e3).expect("frame fields share the chart");
        let b2 = bracket.clone();
        v.push(identity(
            "[e1,e3].horizontal",
            "[e1,e3] is vertical",
            move |c, _| {
                let s = c.structure()?;
                let b = Vector::from_vec(bracket.at(&c.point.coords));
                Ok(max_abs(&s.horizontal(&b)))
            },
        ));
        v.push(witness(
            "[e1,e3].vertical",
            "[e1,e3] is vertical",
            move |c, _| {
                let s = c.structure()?;
                let b = Vector::from_vec(b2.at(&c.point.coords));
                Ok(s.u_of(&b).abs() + s.v_of(&b).abs())
            },
        ));
    }
    v
}

fn affine_field(n: usize, rng: &mut ChaCha8Rng) -> VectorField {
    VectorField::new(
        (0..n)
            .map(|k| {
                let mut f = ScalarField::constant(rng.random_range(-1.0..=1.0));
                for i in 0..n {
                    f = &f + &(ScalarField::coord(i) * rng.random_range(-1.0..=1.0));
                }
                let q = rng.random_range(-1.0..=1.0);
                &f + &(&(&ScalarField::coord(k) * &ScalarField::coord((k + 1) % n)) * q)
            })
            .collect(),
    )
}

fn sasakian_checks(model: &ModelInstance) -> Vec<Check> {
    let bundle = model.bundle.clone();
    vec![
        identity(
            "nabla-G",
            "(nabla_X G)Y = -2v(X)HGY - u(Y)X - v(Y)JX + g(X,Y)U + g(JX,Y)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.sasakian_residuals(&x, &y).g_law))
            },
        ),
        identity(
            "nabla-H",
            "(nabla_X H)Y = -2u(X)HGY + u(Y)JX - v(Y)X - g(JX,Y)U + g(X,Y)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.sasakian_residuals(&x, &y).h_law))
            },
        )
        .note(ERRATUM),
        identity(
            "nabla-H.derived",
            "(nabla_X H)Y = +2u(X)HGY + u(Y)JX - v(Y)X - g(JX,Y)U + g(X,Y)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.sasakian_residuals_with(&x, &y, 2.0).h_law))
            },
        ),
        identity(
            "nabla-G.X=Y=U",
            "(nabla_X G)Y = -2v(X)HGY - u(Y)X - v(Y)JX + g(X,Y)U + g(JX,Y)V",
            |c, _| {
                let s = c.structure()?;
                Ok(max_abs(&s.sasakian_residuals(&s.U, &s.U).g_law))
            },
        ),
        identity("nabla-U", "nabla_X U = -GX + sigma(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(
                &(s.nabla_u(&x) + &s.G * &x - &s.V * s.sigma_of(&x)),
            ))
        }),
        identity("nabla-V", "nabla_X V = -HX - sigma(X)U", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(
                &(s.nabla_v(&x) + &s.H * &x + &s.U * s.sigma_of(&x)),
            ))
        }),
        identity("nabla-U.sasakian", "nabla_X U = -GX", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(&(s.nabla_u(&x) + &s.G * &x)))
        }),
        identity("nabla-V.sasakian", "nabla_X V = -HX", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(&(s.nabla_v(&x) + &s.H * &x)))
        }),
        identity("nabla_U U", "nabla_U U = sigma(U)V", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(s.nabla_u(&s.U) - &s.V * s.sigma_of(&s.U))))
        }),
        identity("nabla_U V", "nabla_U V = -sigma(U)U", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(s.nabla_v(&s.U) + &s.U * s.sigma_of(&s.U))))
        }),
        identity("nabla_V U", "nabla_V U = sigma(V)V", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(s.nabla_u(&s.V) - &s.V * s.sigma_of(&s.V))))
        }),
        identity("nabla_V V", "nabla_V V = -sigma(V)U", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&(s.nabla_v(&s.V) + &s.U * s.sigma_of(&s.V))))
        }),
        identity("nabla-J", "(nabla_X J)Y = -2u(X)HY + 2v(X)GY", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(max_abs(&s.nabla_j_residual(&x, &y)))
        }),
        identity(
            "sigma-definition",
            "sigma(X) = g(nabla_X U, V)",
            |c, rng| {
                let s = c.structure()?;
                let x = c.vector(rng);
                Ok(s.sigma_of(&x) - s.pair(&s.nabla_u(&x), &s.V))
            },
        ),
        identity("sigma-zero", "sigma = 0", |c, _| {
            Ok(max_abs(&c.structure()?.sigma))
        }),
        identity("du-law", "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(s.fundamental_form_residual(&x, &y).du_law)
        }),
        identity("dv-law", "dv(X,Y) = g(X,HY) - (sigma^u)(X,Y)", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(s.fundamental_form_residual(&x, &y).dv_law)
        }),
        identity(
            "du-dv.fields",
            "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)",
            move |c, rng| {
                let b = bundle.as_ref().ok_or_else(|| Error::NoContactBundle {
                    model: c.model.name.clone(),
                })?;
                let n = c.dim();
                let (x, y) = (affine_field(n, rng), affine_field(n, rng));
                let r = crate::contact::fundamental_2form_residual(b, &x, &y, c.point)?;
                Ok(r.du_law.abs().max(r.dv_law.abs()))
            },
        )
        .note("field-level: exterior derivative through Lie brackets of random quadratic fields"),
        identity(
            "du-dv.X=Y",
            "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)",
            |c, rng| {
                let s = c.structure()?;
                let x = c.vector(rng);
                Ok(s.du_of(&x, &x).abs() + s.dv_of(&x, &x).abs())
            },
        ),
        identity(
            "du(U,X0)",
            "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)",
            |c, rng| {
                let s = c.structure()?;
                let x = c.horizontal(rng)?;
                Ok(s.du_of(&s.U, &x))
            },
        ),
        identity(
            "sigma-wedge-v",
            "du(X,Y) = g(X,GY) + (sigma^v)(X,Y)",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(s.wedge((s.sigma_of(&x), s.sigma_of(&y)), (s.v_of(&x), s.v_of(&y))))
            },
        ),
    ]
}

fn normality_checks() -> Vec<Check> {
    vec![
        identity("S-horizontal", "S(X,Y) = T(X,Y) = 0 for X, Y horizontal", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            Ok(max_abs(&s.tensor_s(&x, &y)))
        }),
        identity("T-horizontal", "S(X,Y) = T(X,Y) = 0 for X, Y horizontal", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            Ok(max_abs(&s.tensor_t(&x, &y)))
        }),
        identity("S(X,U)", "S(X,U) = T(X,V) = 0", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(&s.tensor_s(&x, &s.U)))
        }),
        identity("T(X,V)", "S(X,U) = T(X,V) = 0", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(&s.tensor_t(&x, &s.V)))
        }),
        witness("IK-witness", "S = T = 0", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(s.tensor_s(&x, &y).norm() + s.tensor_t(&x, &y).norm())
        }),
        witness("IK-witness.S(X,V)", "S = T = 0", |c, rng| {
            let s = c.structure()?;
            let x = c.horizontal(rng)?;
            Ok(s.tensor_s(&x, &s.V).norm())
        }),
        witness("IK-witness.T(X,U)", "S = T = 0", |c, rng| {
            let s = c.structure()?;
            let x = c.horizontal(rng)?;
            Ok(s.tensor_t(&x, &s.U).norm())
        }),
        identity("[J,J]=0", "[J,J] = 0", |c, rng| {
            let s = c.structure()?;
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(max_abs(&StructureAtPoint::nijenhuis_with(&s.J, &s.nabla_J, &x, &y)))
        }),
        identity(
            "[G,G]-antisymmetry",
            "[G,G](X,Y) = (nabla_GX G)Y - (nabla_GY G)X - G(nabla_X G)Y + G(nabla_Y G)X",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let a = StructureAtPoint::nijenhuis_with(&s.G, &s.nabla_G, &x, &y);
                let b = StructureAtPoint::nijenhuis_with(&s.G, &s.nabla_G, &y, &x);
                Ok(max_abs(&(a + b)))
            },
        ),
        identity(
            "normal-G",
            "(nabla_X G)Y = sigma(X)HY - 2v(X)JY - u(Y)X - v(Y)JX + v(X)(2JY0 - (nabla_U J)GY0) + g(X,Y)U + g(JX,Y)V - dsigma(U,V)v(X)(u(Y)V - v(Y)U)",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.normality_residuals(&x, &y)?.g_law))
            },
        )
        .note("printed form; fails on the model"),
        identity(
            "normal-H",
            "(nabla_X H)Y = -sigma(X)GY + 2u(X)JY + u(Y)JX - v(Y)X + u(X)(-2JY0 - (nabla_U J)GY0) - g(JX,Y)U + g(X,Y)V + dsigma(U,V)u(X)(u(Y)V - v(Y)U)",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.normality_residuals(&x, &y)?.h_law))
            },
        )
        .note("printed form; fails on the model"),
        identity(
            "normal-G.Y=U",
            "(nabla_X G)Y = sigma(X)HY - 2v(X)JY - u(Y)X - v(Y)JX + v(X)(2JY0 - (nabla_U J)GY0) + g(X,Y)U + g(JX,Y)V - dsigma(U,V)v(X)(u(Y)V - v(Y)U)",
            |c, rng| {
                let s = c.structure()?;
                let x = c.vector(rng);
                Ok(max_abs(&s.normality_residuals(&x, &s.U)?.g_law))
            },
        )
        .note("printed form; fails on the model"),
        identity(
            "normal-vs-sasakian",
            "(nabla_X G)Y = -2v(X)HGY - u(Y)X - v(Y)JX + g(X,Y)U + g(JX,Y)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let a = s.normality_residuals(&x, &y)?;
                let b = s.sasakian_residuals_with(&x, &y, 2.0);
                Ok(max_abs(&(a.g_law - b.g_law)).max(max_abs(&(a.h_law - b.h_law))))
            },
        )
        .note("printed forms; agreement expected when sigma = 0 but not observed"),
        identity(
            "nabla-J.normal",
            "(nabla_X J)Y = -2u(X)HY + 2v(X)GY + u(X)(2HY0 + (nabla_U J)Y0) + v(X)(-2GY0 + (nabla_U J)JY0)",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(max_abs(&s.nabla_j_normal_residual(&x, &y)))
            },
        ),
    ]
}

/// Vertical parts `(u(X), v(X))` and `JX` of a vector.
fn uvj(s: &StructureAtPoint, x: &Vector) -> (f64, f64, Vector) {
    (s.u_of(x), s.v_of(x), &s.J * x)
}

fn curvature_checks() -> Vec<Check> {
    vec![
        identity("UVV", "R(U,V)V = R(V,U)U = 0", |c, _| {
            let s = c.structure()?;
            Ok(max_abs(&c.r(&s.U, &s.V, &s.V)).max(max_abs(&c.r(&s.V, &s.U, &s.U))))
        }),
        identity("XUU", "R(X,U)U = X + u(X)U + v(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, _) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.U, &s.U) - (&x + &s.U * ux + &s.V * vx)),
            ))
        })
        .note(ERRATUM),
        identity("XUU.horizontal", "R(X,U)U = X + u(X)U + v(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.horizontal(rng)?;
            Ok(max_abs(&(c.r(&x, &s.U, &s.U) - &x)))
        }),
        identity("XUU.derived", "R(X,U)U = X - u(X)U - v(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, _) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.U, &s.U) - (&x - &s.U * ux - &s.V * vx)),
            ))
        }),
        identity("XVV", "R(X,V)V = X - u(X)U - v(X)V", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, _) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.V, &s.V) - (&x - &s.U * ux - &s.V * vx)),
            ))
        }),
        identity("XUV", "R(X,U)V = -3JX - 3u(X)V + 3v(X)U", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, jx) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.U, &s.V) - (&jx * -3.0 - &s.V * (3.0 * ux) + &s.U * (3.0 * vx))),
            ))
        })
        .note(ERRATUM),
        identity("XUV.derived", "R(X,U)V = JX + u(X)V - v(X)U", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, jx) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.U, &s.V) - (jx + &s.V * ux - &s.U * vx)),
            ))
        }),
        identity("XVU", "R(X,V)U = 0", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(max_abs(&c.r(&x, &s.V, &s.U)))
        })
        .note(ERRATUM),
        identity("XVU.derived", "R(X,V)U = -JX - u(X)V + v(X)U", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, jx) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&x, &s.V, &s.U) - (-jx - &s.V * ux + &s.U * vx)),
            ))
        }),
        identity(
            "XYU",
            "R(X,Y)U = v(X)JY - v(Y)JX + 2v(X)u(Y)V - 2v(Y)u(X)V + u(Y)X - u(X)Y - 2g(JX,Y)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (ux, vx, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &jy * vx - &jx * vy + &s.V * (2.0 * vx * uy - 2.0 * vy * ux) + &x * uy
                    - &y * ux
                    - &s.V * (2.0 * c.g(&jx, &y));
                Ok(max_abs(&(c.r(&x, &y, &s.U) - rhs)))
            },
        ),
        identity(
            "XYV",
            "R(X,Y)V = 3u(X)JY - 3u(Y)JX - 2u(X)v(Y)U + 2u(Y)v(X)U + v(Y)X - v(X)Y + 2g(JX,Y)U",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (ux, vx, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &jy * (3.0 * ux) - &jx * (3.0 * uy)
                    + &s.U * (-2.0 * ux * vy + 2.0 * uy * vx)
                    + &x * vy
                    - &y * vx
                    + &s.U * (2.0 * c.g(&jx, &y));
                Ok(max_abs(&(c.r(&x, &y, &s.V) - rhs)))
            },
        )
        .note(ERRATUM),
        identity(
            "XYV.derived",
            "R(X,Y)V = -u(X)JY + u(Y)JX + 2u(X)v(Y)U - 2u(Y)v(X)U + v(Y)X - v(X)Y + 2g(JX,Y)U",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (ux, vx, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = -(&jy * ux) + &jx * uy + &s.U * (2.0 * ux * vy - 2.0 * uy * vx) + &x * vy
                    - &y * vx
                    + &s.U * (2.0 * c.g(&jx, &y));
                Ok(max_abs(&(c.r(&x, &y, &s.V) - rhs)))
            },
        ),
        identity("UVX", "R(U,V)X = JX + u(X)V - v(X)U", |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            let (ux, vx, jx) = uvj(s, &x);
            Ok(max_abs(
                &(c.r(&s.U, &s.V, &x) - (jx + &s.V * ux - &s.U * vx)),
            ))
        })
        .note(ERRATUM),
        identity(
            "UVX.derived",
            "R(U,V)X = -2JX - 2u(X)V + 2v(X)U",
            |c, rng| {
                let s = c.structure()?;
                let x = c.vector(rng);
                let (ux, vx, jx) = uvj(s, &x);
                Ok(max_abs(
                    &(c.r(&s.U, &s.V, &x) - (jx * -2.0 - &s.V * (2.0 * ux) + &s.U * (2.0 * vx))),
                ))
            },
        ),
        identity(
            "XUY",
            "R(X,U)Y = -2v(Y)v(X)U + 2u(Y)v(X)V - g(Y,X)U + u(Y)X + g(JY,X)V",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (_, vx, _) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &s.U * (-2.0 * vy * vx) + &s.V * (2.0 * uy * vx) - &s.U * c.g(&y, &x)
                    + &x * uy
                    + &s.V * c.g(&jy, &x);
                Ok(max_abs(&(c.r(&x, &s.U, &y) - rhs)))
            },
        )
        .note(ERRATUM),
        identity(
            "XUY.derived",
            "R(X,U)Y = 2v(X)JY + u(Y)X + v(Y)JX - g(X,Y)U - g(JX,Y)V + 2v(X)u(Y)V - 2v(X)v(Y)U",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (_, vx, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &jy * (2.0 * vx) + &x * uy + &jx * vy
                    - &s.U * c.g(&x, &y)
                    - &s.V * c.g(&jx, &y)
                    + &s.V * (2.0 * vx * uy)
                    - &s.U * (2.0 * vx * vy);
                Ok(max_abs(&(c.r(&x, &s.U, &y) - rhs)))
            },
        ),
        identity(
            "XVY",
            "R(X,V)Y = 3u(Y)JX + 2u(Y)u(X)V + 3g(JY,X)U - 2v(Y)u(X)U - g(Y,X)V + v(Y)X - 2u(X)JY",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (ux, _, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &jx * (3.0 * uy) + &s.V * (2.0 * uy * ux) + &s.U * (3.0 * c.g(&jy, &x))
                    - &s.U * (2.0 * vy * ux)
                    - &s.V * c.g(&y, &x)
                    + &x * vy
                    - &jy * (2.0 * ux);
                Ok(max_abs(&(c.r(&x, &s.V, &y) - rhs)))
            },
        )
        .note(ERRATUM),
        identity(
            "XVY.derived",
            "R(X,V)Y = -2u(X)JY - u(Y)JX + v(Y)X - g(X,Y)V + g(JX,Y)U - 2u(X)u(Y)V + 2u(X)v(Y)U",
            |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let (ux, _, jx) = uvj(s, &x);
                let (uy, vy, jy) = uvj(s, &y);
                let rhs = &jy * (-2.0 * ux) - &jx * uy + &x * vy - &s.V * c.g(&x, &y)
                    + &s.U * c.g(&jx, &y)
                    - &s.V * (2.0 * ux * uy)
                    + &s.U * (2.0 * ux * vy);
                Ok(max_abs(&(c.r(&x, &s.V, &y) - rhs)))
            },
        ),
    ]
}

fn gh_checks() -> Vec<Check> {
    fn hv4(c: &Ctx<'_>, rng: &mut ChaCha8Rng) -> Result<[Vector; 4]> {
        Ok([
            c.horizontal(rng)?,
            c.horizontal(rng)?,
            c.horizontal(rng)?,
            c.horizontal(rng)?,
        ])
    }
    fn gjh(c: &Ctx<'_>, x: &Vector) -> Result<(Vector, Vector, Vector)> {
        let s = c.structure()?;
        Ok((&s.G * x, &s.H * x, &s.J * x))
    }
    let checks = vec![
        identity("r-G", "g(R(GX,GY)GZ,GW) = g(R(X,Y)Z,W)", |c, rng| {
            let s = c.structure()?;
            let [x, y, z, w] = hv4(c, rng)?;
            let gm = &s.G;
            Ok(c.r4(&(gm * &x), &(gm * &y), &(gm * &z), &(gm * &w)) - c.r4(&x, &y, &z, &w))
        }),
        identity("r-H", "g(R(HX,HY)HZ,HW) = g(R(X,Y)Z,W)", |c, rng| {
            let s = c.structure()?;
            let [x, y, z, w] = hv4(c, rng)?;
            let hm = &s.H;
            Ok(c.r4(&(hm * &x), &(hm * &y), &(hm * &z), &(hm * &w)) - c.r4(&x, &y, &z, &w))
        }),
        identity(
            "b1",
            "g(R(X,GX)GX,X) + g(R(X,HX)HX,X) + g(R(X,JX)JX,X) = -6g(X,X)",
            |c, rng| {
                let x = c.unit_horizontal(rng)?;
                let (gx, hx, jx) = gjh(c, &x)?;
                Ok(c.r4(&x, &gx, &gx, &x) + c.r4(&x, &hx, &hx, &x) + c.r4(&x, &jx, &jx, &x)
                    + 6.0 * c.g(&x, &x))
            },
        )
        .note("evaluated for unit X; the two sides have different degree in X"),
        identity(
            "b2",
            "g(R(X,GX)Y,GY) = g(R(X,Y)X,Y) + g(R(X,GY)X,GY) - 2g(GX,Y)^2 - 4g(HX,Y)^2 - 2g(X,Y)^2 + 2g(X,X)g(Y,Y) - 4g(JX,Y)^2",
            |c, rng| {
                let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
                let (gx, hx, jx) = gjh(c, &x)?;
                let (gy, _, _) = gjh(c, &y)?;
                let rhs = c.r4(&x, &y, &x, &y) + c.r4(&x, &gy, &x, &gy)
                    - 2.0 * c.g(&gx, &y).powi(2)
                    - 4.0 * c.g(&hx, &y).powi(2)
                    - 2.0 * c.g(&x, &y).powi(2)
                    + 2.0 * c.g(&x, &x) * c.g(&y, &y)
                    - 4.0 * c.g(&jx, &y).powi(2);
                Ok(c.r4(&x, &gx, &y, &gy) - rhs)
            },
        ),
        identity(
            "b3",
            "g(R(X,HX)Y,HY) = g(R(X,Y)X,Y) + g(R(X,HY)X,HY) - 2g(HX,Y)^2 - 4g(GX,Y)^2 - 2g(X,Y)^2 + 2g(X,X)g(Y,Y) - 4g(JX,Y)^2",
            |c, rng| {
                let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
                let (gx, hx, jx) = gjh(c, &x)?;
                let (_, hy, _) = gjh(c, &y)?;
                let rhs = c.r4(&x, &y, &x, &y) + c.r4(&x, &hy, &x, &hy)
                    - 2.0 * c.g(&hx, &y).powi(2)
                    - 4.0 * c.g(&gx, &y).powi(2)
                    - 2.0 * c.g(&x, &y).powi(2)
                    + 2.0 * c.g(&x, &x) * c.g(&y, &y)
                    - 4.0 * c.g(&jx, &y).powi(2);
                Ok(c.r4(&x, &hx, &y, &hy) - rhs)
            },
        ),
        identity("b4", "g(R(X,HX)JX,GX) = -g(R(X,HX)HX,X) - 4g(X,X)^2", |c, rng| {
            let x = c.horizontal(rng)?;
            let (gx, hx, jx) = gjh(c, &x)?;
            Ok(c.r4(&x, &hx, &jx, &gx) + c.r4(&x, &hx, &hx, &x) + 4.0 * c.g(&x, &x).powi(2))
        }),
        identity("b5", "g(R(X,JX)HX,GX) = g(R(X,JX)JX,X) - 2g(X,X)^2", |c, rng| {
            let x = c.horizontal(rng)?;
            let (gx, hx, jx) = gjh(c, &x)?;
            Ok(c.r4(&x, &jx, &hx, &gx) - c.r4(&x, &jx, &jx, &x) + 2.0 * c.g(&x, &x).powi(2))
        }),
        identity("c1", "g(R(GX,HX)HX,GX) = g(R(X,JX)JX,X)", |c, rng| {
            let x = c.horizontal(rng)?;
            let (gx, hx, jx) = gjh(c, &x)?;
            Ok(c.r4(&gx, &hx, &hx, &gx) - c.r4(&x, &jx, &jx, &x))
        }),
        identity("c2", "g(R(GX,JX)JX,GX) = g(R(X,HX)HX,X)", |c, rng| {
            let x = c.horizontal(rng)?;
            let (gx, hx, jx) = gjh(c, &x)?;
            Ok(c.r4(&gx, &jx, &jx, &gx) - c.r4(&x, &hx, &hx, &x))
        }),
        identity("c3", "g(R(JX,JY)JY,JX) = g(R(X,Y)Y,X)", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (_, _, jy) = gjh(c, &y)?;
            Ok(c.r4(&jx, &jy, &jy, &jx) - c.r4(&x, &y, &y, &x))
        }),
        identity("c4", "g(R(X,Y)JX,JY) = g(R(X,Y)Y,X) + 4g(X,GY)^2 + 4g(X,HY)^2", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (gy, hy, jy) = gjh(c, &y)?;
            Ok(c.r4(&x, &y, &jx, &jy) - c.r4(&x, &y, &y, &x) - 4.0 * c.g(&x, &gy).powi(2)
                - 4.0 * c.g(&x, &hy).powi(2))
        })
        .note(ERRATUM),
        identity("c4.derived", "g(R(X,Y)JX,JY) = g(R(X,Y)Y,X) + 2g(X,GY)^2 + 2g(X,HY)^2", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (gy, hy, jy) = gjh(c, &y)?;
            Ok(c.r4(&x, &y, &jx, &jy) - c.r4(&x, &y, &y, &x) - 2.0 * c.g(&x, &gy).powi(2)
                - 2.0 * c.g(&x, &hy).powi(2))
        }),
        identity("c5", "g(R(Y,JX)JX,Y) = g(R(X,JY)JY,X)", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (_, _, jy) = gjh(c, &y)?;
            Ok(c.r4(&y, &jx, &jx, &y) - c.r4(&x, &jy, &jy, &x))
        }),
        identity("c6", "g(R(X,JY)JX,Y) = g(R(X,JY)JY,X) + 4g(X,HY)^2 + 4g(X,GY)^2", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (gy, hy, jy) = gjh(c, &y)?;
            Ok(c.r4(&x, &jy, &jx, &y) - c.r4(&x, &jy, &jy, &x) - 4.0 * c.g(&x, &hy).powi(2)
                - 4.0 * c.g(&x, &gy).powi(2))
        }),
        identity("c7", "g(R(X,JX)JY,Y) = -g(R(JX,JY)X,Y) - g(R(JY,X)JX,Y)", |c, rng| {
            let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
            let (_, _, jx) = gjh(c, &x)?;
            let (_, _, jy) = gjh(c, &y)?;
            Ok(c.r4(&x, &jx, &jy, &y) + c.r4(&jx, &jy, &x, &y) + c.r4(&jy, &x, &jx, &y))
        }),
        identity(
            "c8",
            "g(R(X,JX)JY,Y) = g(R(X,Y)Y,X) + g(R(X,JY)JY,X) + 8(g(X,GY)^2 + g(X,HY)^2)",
            |c, rng| {
                let (x, y) = (c.horizontal(rng)?, c.horizontal(rng)?);
                let (_, _, jx) = gjh(c, &x)?;
                let (gy, hy, jy) = gjh(c, &y)?;
                Ok(c.r4(&x, &jx, &jy, &y)
                    - c.r4(&x, &y, &y, &x)
                    - c.r4(&x, &jy, &jy, &x)
                    - 8.0 * (c.g(&x, &gy).powi(2) + c.g(&x, &hy).powi(2)))
            },
        ),
    ];
    checks.into_iter().map(|c| c.scaled(10.0)).collect()
}

fn sectional_triple(c: &Ctx<'_>, x: &Vector) -> Result<(f64, f64, f64)> {
    let s = c.structure()?;
    Ok((
        c.k(x, &(&s.G * x))?,
        c.k(x, &(&s.H * x))?,
        c.k(x, &(&s.J * x))?,
    ))
}

fn gh(c: &Ctx<'_>, x: &Vector, theta: f64) -> Result<f64> {
    c.geom
        .gh_sectional(c.structure()?, x, theta.cos(), theta.sin())
}

fn sectional_checks() -> Vec<Check> {
    vec![
        identity("k(U,V)", "k(U,V) = 0", |c, _| {
            let s = c.structure()?;
            c.k(&s.U, &s.V)
        }),
        identity("k(X,U)", "k(X,U) = 1", |c, rng| {
            let s = c.structure()?;
            let x = c.unit_horizontal(rng)?;
            Ok(c.k(&x, &s.U)? - 1.0)
        }),
        identity("sum", "k(X,GX) + k(X,HX) + k(X,JX) = 6", |c, rng| {
            let x = c.unit_horizontal(rng)?;
            let (a, b, d) = sectional_triple(c, &x)?;
            Ok(a + b + d - 6.0)
        })
        .scaled(10.0)
        .note(ERRATUM),
        identity(
            "sum.derived",
            "k(X,GX) + k(X,HX) + k(X,JX) = -6",
            |c, rng| {
                let x = c.unit_horizontal(rng)?;
                let (a, b, d) = sectional_triple(c, &x)?;
                Ok(a + b + d + 6.0)
            },
        )
        .scaled(10.0),
        identity("k(X,JX)-GH", "k(X,JX) = GH(X) + 3", |c, rng| {
            let x = c.unit_horizontal(rng)?;
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let (_, _, kj) = sectional_triple(c, &x)?;
            Ok(kj - gh(c, &x, t)? - 3.0)
        })
        .scaled(10.0),
        identity(
            "GH-ab",
            "GH_ab(X) = k(X, aGX + bHX) independent of (a,b)",
            |c, rng| {
                let x = c.unit_horizontal(rng)?;
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for _ in 0..8 {
                    let v = gh(c, &x, rng.random_range(0.0..std::f64::consts::TAU))?;
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                Ok(hi - lo)
            },
        )
        .scaled(10.0)
        .note("max - min over 8 random (a,b) per point"),
        identity("GH-sum", "k(X,GX) + k(X,HX) + GH(X) = 3", |c, rng| {
            let x = c.unit_horizontal(rng)?;
            let (a, b, _) = sectional_triple(c, &x)?;
            Ok(a + b + gh(c, &x, 0.0)? - 3.0)
        })
        .scaled(10.0)
        .note(ERRATUM),
        identity(
            "GH-sum.derived",
            "k(X,GX) + k(X,HX) + GH(X) = -9",
            |c, rng| {
                let x = c.unit_horizontal(rng)?;
                let (a, b, _) = sectional_triple(c, &x)?;
                Ok(a + b + gh(c, &x, 0.0)? + 9.0)
            },
        )
        .scaled(10.0),
    ]
}

fn ricci_checks(model: &ModelInstance) -> Vec<Check> {
    let p = model.p as f64;
    vec![
        identity("rho(U,U)", "rho(U,U) = rho(V,V) = 4p", move |c, _| {
            let s = c.structure()?;
            Ok((c.rho(&s.U, &s.U) - 4.0 * p)
                .abs()
                .max((c.rho(&s.V, &s.V) - 4.0 * p).abs()))
        }),
        identity("rho(U,V)", "rho(U,V) = 0", |c, _| {
            let s = c.structure()?;
            Ok(c.rho(&s.U, &s.V))
        }),
        identity("rho(X,U)", "rho(X,U) = 4p u(X)", move |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(c.rho(&x, &s.U) - 4.0 * p * s.u_of(&x))
        }),
        identity("rho(X,V)", "rho(X,V) = 4p v(X)", move |c, rng| {
            let s = c.structure()?;
            let x = c.vector(rng);
            Ok(c.rho(&x, &s.V) - 4.0 * p * s.v_of(&x))
        }),
        identity(
            "rho-G",
            "rho(X,Y) = rho(GX,GY) + 4p(u(X)u(Y) + v(X)v(Y))",
            move |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(c.rho(&x, &y)
                    - c.rho(&(&s.G * &x), &(&s.G * &y))
                    - 4.0 * p * (s.u_of(&x) * s.u_of(&y) + s.v_of(&x) * s.v_of(&y)))
            },
        )
        .scaled(10.0),
        identity(
            "rho-H",
            "rho(X,Y) = rho(HX,HY) + 4p(u(X)u(Y) + v(X)v(Y))",
            move |c, rng| {
                let s = c.structure()?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                Ok(c.rho(&x, &y)
                    - c.rho(&(&s.H * &x), &(&s.H * &y))
                    - 4.0 * p * (s.u_of(&x) * s.u_of(&y) + s.v_of(&x) * s.v_of(&y)))
            },
        )
        .scaled(10.0),
        spread("rho(X,X)", "rho(X,X) for unit horizontal X", |c, rng| {
            let x = c.unit_horizontal(rng)?;
            Ok(c.rho(&x, &x))
        })
        .scaled(10.0)
        .note("recorded constant, not a printed value"),
        spread("tau", "tau = sum_a rho(E_a,E_a)", |c, _| {
            Ok(c.geom.scalar_curvature_in_frame(c.frame))
        })
        .scaled(10.0)
        .note("recorded constant, not a printed value"),
    ]
}

/// Certificates for one coefficient vector.
pub fn probe_checks(
    name: &str,
    coeffs: &BCoefficients,
    model: &ModelInstance,
    strict: bool,
) -> Result<Vec<Check>> {
    let rank = model.p;
    if strict {
        coeffs.check_replay()?;
    }
    let c0 = *coeffs;
    let mut v = vec![
        witness(&format!("{name}.B-nonzero"), "B(X,Y,Z,W) = a0 R(X,Y,Z,W) + a1 R(X,Z,Y,W) + ... + tau(a8 g(X,W)g(Y,Z) + a9 g(X,Z)g(Y,W) + a10 g(X,Y)g(Z,W))", move |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(b_value(&c0, c.geom, &x, &y, &z, &w))
        }),
    ];
    if coeffs.check_replay().is_ok() {
        v.push(
            witness(
                &format!("{name}.rho-replay"),
                "rho(X,X) = -(a0 + a1 + 4p a2 + tau a8)/a5",
                move |c, rng| {
                    let x = c.unit_horizontal(rng)?;
                    let hat = c0.rho_hat(rank, c.geom.tau)?;
                    Ok(c.rho(&x, &x) - hat)
                },
            )
            .note("|rho(X,X) - rho_hat| exhibits the contradiction at sampled X"),
        );
    }
    v.push(witness(
        &format!("{name}.GH-B-G"),
        "G^2(B(GX,GY)GZ) = 0 and H^2(B(HX,HY)HZ) = 0",
        move |c, rng| {
            let s = c.structure()?;
            let (x, y, z) = (c.horizontal(rng)?, c.horizontal(rng)?, c.horizontal(rng)?);
            let gm = &s.G;
            let b = b_vector(&c0, c.geom, &(gm * &x), &(gm * &y), &(gm * &z));
            Ok((gm * gm * b).norm())
        },
    ));
    v.push(witness(
        &format!("{name}.GH-B-H"),
        "G^2(B(GX,GY)GZ) = 0 and H^2(B(HX,HY)HZ) = 0",
        move |c, rng| {
            let s = c.structure()?;
            let (x, y, z) = (c.horizontal(rng)?, c.horizontal(rng)?, c.horizontal(rng)?);
            let hm = &s.H;
            let b = b_vector(&c0, c.geom, &(hm * &x), &(hm * &y), &(hm * &z));
            Ok((hm * hm * b).norm())
        },
    ));
    v.push(
        identity(
            &format!("{name}.B-G-invariance"),
            "g(B(GX,GY)GZ,GW) = B(X,Y,Z,W)",
            move |c, rng| {
                let s = c.structure()?;
                let (x, y, z, w) = (
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                );
                let gm = &s.G;
                Ok(
                    b_value(&c0, c.geom, &(gm * &x), &(gm * &y), &(gm * &z), &(gm * &w))
                        - b_value(&c0, c.geom, &x, &y, &z, &w),
                )
            },
        )
        .scaled(10.0),
    );
    v.push(
        identity(
            &format!("{name}.B-H-invariance"),
            "g(B(GX,GY)GZ,GW) = B(X,Y,Z,W)",
            move |c, rng| {
                let s = c.structure()?;
                let (x, y, z, w) = (
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                    c.horizontal(rng)?,
                );
                let hm = &s.H;
                Ok(
                    b_value(&c0, c.geom, &(hm * &x), &(hm * &y), &(hm * &z), &(hm * &w))
                        - b_value(&c0, c.geom, &x, &y, &z, &w),
                )
            },
        )
        .scaled(10.0),
    );
    Ok(v)
}

/// Sum over an orthonormal frame of `B` with `E_a` in slots `i` and `j`.
fn contraction(c: &BCoefficients, ctx: &Ctx<'_>, i: usize, j: usize, rest: [&Vector; 2]) -> f64 {
    ctx.frame
        .iter()
        .map(|e| {
            let mut args: [&Vector; 4] = [e, e, e, e];
            let mut r = rest.iter();
            for (k, a) in args.iter_mut().enumerate() {
                if k != i && k != j {
                    *a = r.next().expect("two free slots");
                }
            }
            b_value(c, ctx.geom, args[0], args[1], args[2], args[3])
        })
        .sum()
}

fn flatness_checks(model: &ModelInstance, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n = model.dim();
    let mut v = vec![
        identity(
            "non-flat.value",
            "R(X,U,U,X) = 1 for unit horizontal X",
            |c, rng| {
                let s = c.structure()?;
                let x = c.unit_horizontal(rng)?;
                Ok(c.r4(&x, &s.U, &s.U, &x) - 1.0)
            },
        ),
        witness(
            "non-flat",
            "R(X,U,U,X) = 1 for unit horizontal X",
            |c, rng| {
                let s = c.structure()?;
                let x = c.unit_horizontal(rng)?;
                Ok(c.r4(&x, &s.U, &s.U, &x))
            },
        ),
        witness("ricci-replay", "rho(X,U) = 4p u(X)", |c, _| {
            let s = c.structure()?;
            Ok(c.rho(&s.U, &s.U))
        })
        .note("flatness would force 4p u(X) = 0; X = U gives 4p"),
    ];
    let mut vectors: Vec<(String, BCoefficients)> =
        vec![("riemann".into(), BCoefficients::riemann())];
    for preset in BPreset::standard_set() {
        vectors.push((preset.name(), b_preset(preset, n)?));
    }
    for (k, c) in cfg.extra_b.iter().enumerate() {
        vectors.push((format!("custom-{k}"), *c));
    }
    for (name, c) in &vectors {
        v.extend(probe_checks(name, c, model, false)?);
    }

    let conformal = b_preset(BPreset::Conformal, n)?;
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        v.push(
            identity(
                &format!("conformal.trace-{}{}", i + 1, j + 1),
                "conformal preset is totally trace-free",
                move |c, rng| {
                    let (x, y) = (c.vector(rng), c.vector(rng));
                    Ok(contraction(&conformal, c, i, j, [&x, &y]))
                },
            )
            .scaled(10.0),
        );
    }
    let conharmonic = b_preset(BPreset::Conharmonic, n)?;
    v.push(identity(
        "conharmonic.recombination",
        "conharmonic = conformal minus its tau part",
        move |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            let g = |a: &Vector, b: &Vector| c.g(a, b);
            let tau_part = c.geom.tau
                * (conformal.a[8] * g(&x, &w) * g(&y, &z) + conformal.a[9] * g(&x, &z) * g(&y, &w));
            Ok(b_value(&conformal, c.geom, &x, &y, &z, &w)
                - tau_part
                - b_value(&conharmonic, c.geom, &x, &y, &z, &w))
        },
    ));
    let qc = b_preset(
        BPreset::QuasiConformal {
            alpha: 1.0,
            beta: 1.0,
        },
        n,
    )?;
    v.push(
        identity(
            "B-linearity",
            "B(c1 + c2) = B(c1) + B(c2)",
            move |c, rng| {
                let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
                let sum = conformal.add(&qc);
                Ok(b_value(&sum, c.geom, &x, &y, &z, &w)
                    - b_value(&conformal, c.geom, &x, &y, &z, &w)
                    - b_value(&qc, c.geom, &x, &y, &z, &w))
            },
        )
        .fixed(1e-10),
    );
    v.push(
        identity("B-riemann", "B = R for a = (1,0,...,0)", |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(b_value(&BCoefficients::riemann(), c.geom, &x, &y, &z, &w) - c.r4(&x, &y, &z, &w))
        })
        .fixed(1e-10),
    );
    v.push(
        identity("B-zero", "B = 0 for a = 0", |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(b_value(&BCoefficients::zero(), c.geom, &x, &y, &z, &w))
        })
        .fixed(0.0),
    );
    Ok(v)
}

fn quadratic_jac(f: &VectorField, p: &Point) -> (Vector, Matrix) {
    f.value_and_jacobian(&p.coords)
}

fn engine_checks(model: &ModelInstance) -> Vec<Check> {
    let g = model.g.clone();
    let comp = model.dim().min(5) - 1;
    let g_fd = g.clone();
    let g_jet = g.clone();
    let g_pure = g.clone();
    let mut v = vec![
        identity(
            "christoffel-oracle",
            "Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)",
            move |c, _| {
                let fd = christoffel_fd(&g_fd, c.point, FD_STEP)?;
                Ok(relative_gap(&c.geom.christoffel(), &fd))
            },
        )
        .fixed(1e-5)
        .note("relative to central differences, h = 1e-4"),
        identity(
            "jet-vs-fd",
            "exact jets agree with central differences",
            move |c, _| {
                let f = &g_jet.components[comp][comp];
                let jet = f.eval_jet2(&c.model.chart, c.point)?;
                let grad = gradient_fd(f, c.point, FD_STEP);
                let hess = hessian_fd(f, c.point, FD_STEP);
                let mut worst: f64 = 0.0;
                for i in 0..grad.len() {
                    let a = jet.gradient[i];
                    worst = worst.max((a - grad[i]).abs() / 1f64.max(a.abs()));
                    for j in 0..grad.len() {
                        let a = jet.hessian[i][j];
                        worst = worst.max((a - hess[i][j]).abs() / 1f64.max(a.abs()));
                    }
                }
                Ok(worst)
            },
        )
        .fixed(1e-5),
        identity(
            "eval-purity",
            "repeated evaluation is bit-identical",
            move |c, _| {
                let a = g_pure.at(&c.point.coords);
                let b = g_pure.at(&c.point.coords);
                let same = a
                    .iter()
                    .flatten()
                    .zip(b.iter().flatten())
                    .all(|(x, y)| x.to_bits() == y.to_bits());
                Ok(if same { 0.0 } else { 1.0 })
            },
        )
        .fixed(0.0),
        identity("metric-symmetry", "g(X,Y) = g(Y,X)", |c, rng| {
            let (x, y) = (c.vector(rng), c.vector(rng));
            Ok(c.g(&x, &y) - c.g(&y, &x))
        })
        .fixed(0.0),
        identity("christoffel-symmetry", "Gamma^k_ij = Gamma^k_ji", |c, _| {
            Ok(c.geom.christoffel().symmetry_defect())
        }),
        identity(
            "compatibility",
            "d_i g_jk = Gamma^l_ij g_lk + Gamma^l_ik g_jl",
            |c, _| Ok(c.geom.compatibility_defect()),
        ),
        identity("torsion-free", "nabla_X Y - nabla_Y X = [X,Y]", |c, rng| {
            let n = c.dim();
            let (xf, yf) = (affine_field(n, rng), affine_field(n, rng));
            let (x, xj) = quadratic_jac(&xf, c.point);
            let (y, yj) = quadratic_jac(&yf, c.point);
            let br = Vector::from_vec(lie_bracket(&xf, &yf)?.at(&c.point.coords));
            Ok(max_abs(
                &(c.geom.nabla(&x, &y, &yj) - c.geom.nabla(&y, &x, &xj) - br),
            ))
        }),
        identity(
            "directional-compatibility",
            "X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z)",
            |c, rng| {
                let n = c.dim();
                let x = c.vector(rng);
                let (yf, zf) = (affine_field(n, rng), affine_field(n, rng));
                let (y, yj) = quadratic_jac(&yf, c.point);
                let (z, zj) = quadratic_jac(&zf, c.point);
                let mut lhs = 0.0;
                for i in 0..n {
                    lhs += x[i] * (y.transpose() * &c.geom.dg[i] * &z)[(0, 0)];
                }
                lhs += c.g(&(&yj * &x), &z) + c.g(&y, &(&zj * &x));
                Ok(lhs - c.g(&c.geom.nabla(&x, &y, &yj), &z) - c.g(&y, &c.geom.nabla(&x, &z, &zj)))
            },
        ),
        identity("R-antisymmetry-12", "R(X,Y,Z,W) = -R(Y,X,Z,W)", |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(c.r4(&x, &y, &z, &w) + c.r4(&y, &x, &z, &w))
        }),
        identity("R-antisymmetry-34", "R(X,Y,Z,W) = -R(X,Y,W,Z)", |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(c.r4(&x, &y, &z, &w) + c.r4(&x, &y, &w, &z))
        }),
        identity("R-pair-symmetry", "R(X,Y,Z,W) = R(Z,W,X,Y)", |c, rng| {
            let (x, y, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(c.r4(&x, &y, &z, &w) - c.r4(&z, &w, &x, &y))
        })
        .scaled(10.0),
        identity(
            "first-bianchi",
            "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0",
            |c, rng| {
                let (x, y, z) = (c.vector(rng), c.vector(rng), c.vector(rng));
                Ok(max_abs(
                    &(c.r(&x, &y, &z) + c.r(&y, &z, &x) + c.r(&z, &x, &y)),
                ))
            },
        ),
        identity("R(X,X)=0", "R(X,X,Z,W) = 0", |c, rng| {
            let (x, z, w) = (c.vector(rng), c.vector(rng), c.vector(rng));
            Ok(c.r4(&x, &x, &z, &w))
        }),
        identity(
            "ricci-frame",
            "rho(X,Y) = sum_a g(R(E_a,X)Y,E_a) in any orthonormal frame",
            |c, rng| {
                let n = c.dim();
                let seeds: Vec<Vector> = (0..n).map(|_| c.vector(rng)).collect();
                let other = c.geom.orthonormal_frame_from(&seeds)?;
                let (x, y) = (c.vector(rng), c.vector(rng));
                let a = c.geom.ricci_in_frame(c.frame, &x, &y);
                let b = c.geom.ricci_in_frame(&other, &x, &y);
                Ok((a - b).abs().max((a - c.geom.ricci(&x, &y)).abs()))
            },
        )
        .scaled(10.0),
        identity(
            "tau-frame",
            "tau = sum_a rho(E_a,E_a) in any orthonormal frame",
            |c, rng| {
                let n = c.dim();
                let seeds: Vec<Vector> = (0..n).map(|_| c.vector(rng)).collect();
                let other = c.geom.orthonormal_frame_from(&seeds)?;
                let a = c.geom.scalar_curvature_in_frame(c.frame);
                Ok((a - c.geom.scalar_curvature_in_frame(&other))
                    .abs()
                    .max((a - c.geom.tau).abs()))
            },
        )
        .scaled(10.0),
        spread(
            "tau-spread",
            "tau is constant on a homogeneous model",
            |c, _| Ok(c.geom.tau),
        )
        .scaled(10.0),
        identity(
            "sectional-basis",
            "k(X,Y) is invariant under GL(2) changes of basis",
            |c, rng| {
                let (x, y) = (c.vector(rng), c.vector(rng));
                let m: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
                let (x2, y2) = (&x * m[0] + &y * m[1], &x * m[2] + &y * m[3]);
                Ok(c.k(&x, &y)? - c.k(&x2, &y2)?)
            },
        )
        .scaled(10.0),
        identity("lie-antisymmetry", "[X,Y] = -[Y,X]", |c, rng| {
            let n = c.dim();
            let (xf, yf) = (affine_field(n, rng), affine_field(n, rng));
            let a = lie_bracket(&xf, &yf)?.at(&c.point.coords);
            let b = lie_bracket(&yf, &xf)?.at(&c.point.coords);
            Ok(a.iter()
                .zip(&b)
                .fold(0.0f64, |m, (p, q)| m.max((p + q).abs())))
        }),
        identity(
            "jacobi",
            "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0",
            |c, rng| {
                let n = c.dim();
                let (xf, yf, zf) = (
                    affine_field(n, rng),
                    affine_field(n, rng),
                    affine_field(n, rng),
                );
                let t1 = lie_bracket(&xf, &lie_bracket(&yf, &zf)?)?;
                let t2 = lie_bracket(&yf, &lie_bracket(&zf, &xf)?)?;
                let t3 = lie_bracket(&zf, &lie_bracket(&xf, &yf)?)?;
                let p = &c.point.coords;
                let (a, b, d) = (t1.at(p), t2.at(p), t3.at(p));
                Ok((0..n).fold(0.0f64, |m, k| m.max((a[k] + b[k] + d[k]).abs())))
            },
        ),
    ];
    match model.kind {
        ModelKind::FlatKahler => {
            v.push(
                identity("flat.christoffel", "Gamma = 0", |c, _| {
                    Ok(c.geom.christoffel().max_abs())
                })
                .fixed(1e-10),
            );
            v.push(
                identity("flat.riemann", "R = 0", |c, _| {
                    let n = c.dim();
                    let mut worst: f64 = 0.0;
                    for l in 0..n {
                        for i in 0..n {
                            for j in 0..n {
                                for k in 0..n {
                                    worst = worst.max(c.geom.riemann_component(l, i, j, k).abs());
                                }
                            }
                        }
                    }
                    Ok(worst)
                })
                .fixed(1e-10),
            );
            v.push(identity("flat.ricci", "rho = 0", |c, _| Ok(m_abs(&c.geom.ricci))).fixed(1e-10));
            v.push(identity("flat.tau", "tau = 0", |c, _| Ok(c.geom.tau)).fixed(1e-10));
        }
        ModelKind::Sphere => {
            let r = model.radius.unwrap_or(1.0);
            let n = model.dim() as f64;
            let dim = model.dim();
            v.push(identity(
                "sphere.sectional",
                "k = 1/r^2 on a round sphere",
                move |c, rng| {
                    let (x, y) = (c.vector(rng), c.vector(rng));
                    Ok(c.k(&x, &y)? - 1.0 / (r * r))
                },
            ));
            v.push(
                identity(
                    "sphere.tau",
                    "tau = n(n-1)/r^2 on a round sphere",
                    move |c, _| Ok(c.geom.tau - n * (n - 1.0) / (r * r)),
                )
                .fixed(1e-6),
            );
            for preset in [BPreset::Concircular, BPreset::Projective] {
                let coeffs = b_preset(preset, dim).expect("sphere dimension is at least 2");
                v.push(identity(
                    &format!("sphere.{}", preset.name()),
                    &format!("{} preset vanishes on a space form", preset.name()),
                    move |c, rng| {
                        let (x, y, z, w) =
                            (c.vector(rng), c.vector(rng), c.vector(rng), c.vector(rng));
                        Ok(b_value(&coeffs, c.geom, &x, &y, &z, &w))
                    },
                ));
            }
        }
        ModelKind::Heisenberg => {}
    }
    v
}
