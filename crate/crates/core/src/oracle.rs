//! Central finite differences, used only to cross-check the jet engine.

use crate::curvature::ChristoffelAtPoint;
use crate::error::{Error, Result};
use crate::field::{MetricTensor, Point, ScalarField};
use crate::linalg::matrix;

pub const FD_STEP: f64 = 1e-4;

fn shifted(p: &Point, i: usize, h: f64) -> Vec<f64> {
    let mut c = p.coords.clone();
    c[i] += h;
    c
}

pub fn gradient_fd(f: &ScalarField, p: &Point, h: f64) -> Vec<f64> {
    (0..p.dim())
        .map(|i| (f.eval(&shifted(p, i, h)) - f.eval(&shifted(p, i, -h))) / (2.0 * h))
        .collect()
}

pub fn hessian_fd(f: &ScalarField, p: &Point, h: f64) -> Vec<Vec<f64>> {
    let n = p.dim();
    let at = |di: usize, si: f64, dj: usize, sj: f64| {
        let mut c = p.coords.clone();
        c[di] += si * h;
        c[dj] += sj * h;
        f.eval(&c)
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (at(i, 1.0, j, 1.0) - at(i, 1.0, j, -1.0) - at(i, -1.0, j, 1.0)
                        + at(i, -1.0, j, -1.0))
                        / (4.0 * h * h)
                })
                .collect()
        })
        .collect()
}

/// Christoffel symbols from differenced metric values.
pub fn christoffel_fd(g: &MetricTensor, p: &Point, h: f64) -> Result<ChristoffelAtPoint> {
    let n = g.dim();
    let gm = matrix(&g.at(&p.coords));
    let g_inv = gm
        .clone()
        .try_inverse()
        .ok_or(Error::DegenerateMetric { pivot: 0.0 })?;
    let dg: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|m| {
            let plus = g.at(&shifted(p, m, h));
            let minus = g.at(&shifted(p, m, -h));
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (plus[i][j] - minus[i][j]) / (2.0 * h))
                        .collect()
                })
                .collect()
        })
        .collect();
    let gamma = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|l| {
                                    0.5 * g_inv[(k, l)] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                                })
                                .sum()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ChristoffelAtPoint { gamma })
}

/// Largest `|a - b| / max(1, |a|, |b|)` over all components.
pub fn relative_gap(a: &ChristoffelAtPoint, b: &ChristoffelAtPoint) -> f64 {
    a.gamma
        .iter()
        .flatten()
        .flatten()
        .zip(b.gamma.iter().flatten().flatten())
        .map(|(x, y)| (x - y).abs() / 1f64.max(x.abs()).max(y.abs()))
        .fold(0.0, f64::max)
}
