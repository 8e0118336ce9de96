//! The generalized curvature tensor
//!
//! ```text
//! B(X,Y,Z,W) = a0 R(X,Y,Z,W) + a1 R(X,Z,Y,W)
//!            + a2 rho(Y,Z)g(X,W) + a3 rho(X,Z)g(Y,W) + a4 rho(X,Y)g(Z,W)
//!            + a5 rho(X,W)g(Y,Z) + a6 rho(Y,W)g(X,Z) + a7 rho(Z,W)g(X,Y)
//!            + tau (a8 g(X,W)g(Y,Z) + a9 g(X,Z)g(Y,W) + a10 g(X,Y)g(Z,W))
//! ```
//!
//! and its classical specializations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curvature::PointGeometry;
use crate::error::{Error, Result};
use crate::field::{Point, VectorField};
use crate::linalg::Vector;
use crate::models::ModelInstance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BCoefficients {
    pub a: [f64; 11],
}

impl BCoefficients {
    pub fn new(a: [f64; 11]) -> Result<BCoefficients> {
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::Coefficients("all entries must be finite".into()));
        }
        Ok(BCoefficients { a })
    }

    pub fn zero() -> BCoefficients {
        BCoefficients { a: [0.0; 11] }
    }

    /// `B = R`.
    pub fn riemann() -> BCoefficients {
        let mut a = [0.0; 11];
        a[0] = 1.0;
        BCoefficients { a }
    }

    pub fn add(&self, other: &BCoefficients) -> BCoefficients {
        let mut a = self.a;
        for (x, y) in a.iter_mut().zip(other.a) {
            *x += y;
        }
        BCoefficients { a }
    }

    /// Preconditions of the `rho(X,X)` replay, which divides by `a5` and by
    /// `a0 + a1`.
    pub fn check_replay(&self) -> Result<()> {
        if self.a[5] == 0.0 {
            return Err(Error::Coefficients(
                "a5 = 0: solving the U-slot substitution for rho(X,X) divides by a5".into(),
            ));
        }
        if self.a[0] + self.a[1] == 0.0 {
            return Err(Error::Coefficients(
                "a0 + a1 = 0: solving the horizontal substitution for R(X,Y,Y,X) divides by a0 + a1"
                    .into(),
            ));
        }
        Ok(())
    }

    /// The constant that `rho(X,X)` would have to equal for unit horizontal
    /// `X` if `B` vanished: `-(a0 + a1 + 4p a2 + tau a8) / a5`.
    pub fn rho_hat(&self, p: usize, tau: f64) -> Result<f64> {
        self.check_replay()?;
        let a = &self.a;
        Ok(-(a[0] + a[1] + 4.0 * p as f64 * a[2] + tau * a[8]) / a[5])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BPreset {
    Conformal,
    Concircular,
    Conharmonic,
    Projective,
    QuasiConformal { alpha: f64, beta: f64 },
}

impl BPreset {
    pub fn name(&self) -> String {
        match self {
            BPreset::Conformal => "conformal".into(),
            BPreset::Concircular => "concircular".into(),
            BPreset::Conharmonic => "conharmonic".into(),
            BPreset::Projective => "projective".into(),
            BPreset::QuasiConformal { alpha, beta } => format!("quasi-conformal({alpha},{beta})"),
        }
    }

    pub fn standard_set() -> Vec<BPreset> {
        vec![
            BPreset::Conformal,
            BPreset::Concircular,
            BPreset::Conharmonic,
            BPreset::Projective,
            BPreset::QuasiConformal {
                alpha: 1.0,
                beta: 1.0,
            },
        ]
    }
}

impl fmt::Display for BPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for BPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conformal" => return Ok(BPreset::Conformal),
            "concircular" => return Ok(BPreset::Concircular),
            "conharmonic" => return Ok(BPreset::Conharmonic),
            "projective" => return Ok(BPreset::Projective),
            _ => {}
        }
        let args = s
            .strip_prefix("quasi-conformal(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))?;
        let parts: Vec<f64> = args
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::UnknownPreset(s.to_string()))?;
        match parts[..] {
            [alpha, beta] => Ok(BPreset::QuasiConformal { alpha, beta }),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Coefficients of a classical tensor in real dimension `n`.
pub fn b_preset(preset: BPreset, n: usize) -> Result<BCoefficients> {
    let nf = n as f64;
    let mut a = [0.0; 11];
    a[0] = 1.0;
    match preset {
        BPreset::Concircular => {
            if n < 2 {
                return Err(Error::Coefficients(
                    "concircular tensor needs n >= 2".into(),
                ));
            }
            let t = 1.0 / (nf * (nf - 1.0));
            a[8] = -t;
            a[9] = t;
        }
        BPreset::Projective => {
            if n < 2 {
                return Err(Error::Coefficients("projective tensor needs n >= 2".into()));
            }
            let t = 1.0 / (nf - 1.0);
            a[2] = -t;
            a[3] = t;
        }
        BPreset::Conformal | BPreset::Conharmonic => {
            if n < 3 {
                return Err(Error::Coefficients("conformal tensors need n >= 3".into()));
            }
            let t = 1.0 / (nf - 2.0);
            a[2] = -t;
            a[3] = t;
            a[5] = -t;
            a[6] = t;
            if preset == BPreset::Conformal {
                let s = 1.0 / ((nf - 1.0) * (nf - 2.0));
                a[8] = s;
                a[9] = -s;
            }
        }
        BPreset::QuasiConformal { alpha, beta } => {
            if n < 2 {
                return Err(Error::Coefficients(
                    "quasi-conformal tensor needs n >= 2".into(),
                ));
            }
            a[0] = alpha;
            a[2] = beta;
            a[3] = -beta;
            a[5] = beta;
            a[6] = -beta;
            let s = -(alpha / (nf - 1.0) + 2.0 * beta) / nf;
            a[8] = s;
            a[9] = -s;
        }
    }
    BCoefficients::new(a)
}

/// `B(X,Y,Z,W)` at a point.
pub fn b_value(
    c: &BCoefficients,
    geom: &PointGeometry,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    w: &Vector,
) -> f64 {
    let a = &c.a;
    let g = |p: &Vector, q: &Vector| geom.pair(p, q);
    let rho = |p: &Vector, q: &Vector| geom.ricci(p, q);
    let mut s = 0.0;
    if a[0] != 0.0 {
        s += a[0] * geom.riemann_0_4(x, y, z, w);
    }
    if a[1] != 0.0 {
        s += a[1] * geom.riemann_0_4(x, z, y, w);
    }
    s += a[2] * rho(y, z) * g(x, w)
        + a[3] * rho(x, z) * g(y, w)
        + a[4] * rho(x, y) * g(z, w)
        + a[5] * rho(x, w) * g(y, z)
        + a[6] * rho(y, w) * g(x, z)
        + a[7] * rho(z, w) * g(x, y);
    s + geom.tau * (a[8] * g(x, w) * g(y, z) + a[9] * g(x, z) * g(y, w) + a[10] * g(x, y) * g(z, w))
}

/// `B(X,Y)Z` defined by `g(B(X,Y)Z, W) = B(X,Y,Z,W)`.
pub fn b_vector(
    c: &BCoefficients,
    geom: &PointGeometry,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    let n = geom.dim();
    let lowered = Vector::from_fn(n, |w, _| {
        let mut e = Vector::zeros(n);
        e[w] = 1.0;
        b_value(c, geom, x, y, z, &e)
    });
    &geom.g_inv * lowered
}

/// Field-level entry point.
pub fn b_tensor(
    c: &BCoefficients,
    model: &ModelInstance,
    fields: [&VectorField; 4],
    p: &Point,
) -> Result<f64> {
    let geom = model.geometry(p)?;
    let v: Vec<Vector> = fields
        .iter()
        .map(|f| Vector::from_vec(f.at(&p.coords)))
        .collect();
    Ok(b_value(c, &geom, &v[0], &v[1], &v[2], &v[3]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_parsing_round_trips() {
        for p in BPreset::standard_set() {
            assert_eq!(p.name().parse::<BPreset>().unwrap(), p);
        }
        assert!("weyl".parse::<BPreset>().is_err());
        assert!("quasi-conformal(1)".parse::<BPreset>().is_err());
    }

    #[test]
    fn conharmonic_is_conformal_without_scalar_part() {
        let c = b_preset(BPreset::Conformal, 6).unwrap();
        let h = b_preset(BPreset::Conharmonic, 6).unwrap();
        for k in 0..8 {
            assert_eq!(c.a[k], h.a[k]);
        }
        assert_eq!(h.a[8], 0.0);
        assert_eq!(h.a[9], 0.0);
    }

    #[test]
    fn replay_preconditions() {
        let r = BCoefficients::riemann();
        assert!(matches!(r.rho_hat(1, -8.0), Err(Error::Coefficients(m)) if m.contains("a5")));
        let mut a = [0.0; 11];
        a[5] = 1.0;
        let c = BCoefficients::new(a).unwrap();
        assert!(matches!(c.rho_hat(1, -8.0), Err(Error::Coefficients(m)) if m.contains("a0 + a1")));
    }

    #[test]
    fn rho_hat_moves_with_a8() {
        let c = b_preset(BPreset::Conformal, 6).unwrap();
        let mut d = c;
        d.a[8] += 0.5;
        assert!((c.rho_hat(1, -8.0).unwrap() - d.rho_hat(1, -8.0).unwrap()).abs() > 1.0);
    }

    #[test]
    fn non_finite_rejected() {
        let mut a = [0.0; 11];
        a[3] = f64::NAN;
        assert!(BCoefficients::new(a).is_err());
    }
}
