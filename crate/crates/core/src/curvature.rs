//! Levi-Civita connection and curvature at a point.
//!
//! [`PointGeometry`] evaluates the metric once as an order-2 jet and derives
//! everything else numerically from the exact first and second derivatives:
//!
//! ```text
//! Gamma^k_ij     = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
//! d_m g^kl       = -g^ka (d_m g_ab) g^bl
//! R^l_ijk        = d_i Gamma^l_jk - d_j Gamma^l_ik
//!                  + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
//! ```
//!
//! so that `R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`
//! and `R(X, Y, Z, W) = g(R(X, Y)Z, W)`.

use serde::{Deserialize, Serialize};

use crate::contact::StructureAtPoint;
use crate::error::{Error, Result};
use crate::field::{EndField, MetricTensor, Point, VectorField};
use crate::jet::Layout;
use crate::linalg::{coordinate_basis, gram_schmidt, pair, Matrix, Vector};

/// Global sign applied to the Riemann tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureSign {
    #[default]
    Standard,
    Flipped,
}

impl CurvatureSign {
    pub fn factor(self) -> f64 {
        match self {
            CurvatureSign::Standard => 1.0,
            CurvatureSign::Flipped => -1.0,
        }
    }
}

/// `gamma[k][i][j] = Gamma^k_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelAtPoint {
    pub gamma: Vec<Vec<Vec<f64>>>,
}

impl ChristoffelAtPoint {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.gamma
            .iter()
            .flatten()
            .flatten()
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest `|Gamma^k_ij - Gamma^k_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((self.gamma[k][i][j] - self.gamma[k][j][i]).abs());
                }
            }
        }
        worst
    }
}

/// Metric, connection and curvature at one point.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    n: usize,
    pub point: Point,
    pub sign: CurvatureSign,
    pub g: Matrix,
    pub g_inv: Matrix,
    /// `dg[m][(i, j)] = d_m g_ij`.
    pub dg: Vec<Matrix>,
    gamma: Vec<f64>,
    dgamma: Vec<f64>,
    riemann: Vec<f64>,
    riemann_low: Vec<f64>,
    pub ricci: Matrix,
    pub tau: f64,
}

impl PointGeometry {
    pub fn new(metric: &MetricTensor, p: &Point, sign: CurvatureSign) -> Result<PointGeometry> {
        let n = metric.dim();
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
        let layout = Layout::get(n, 2);
        let mut g = Matrix::zeros(n, n);
        let mut dg = vec![Matrix::zeros(n, n); n];
        let mut ddg = vec![vec![Matrix::zeros(n, n); n]; n];
        for i in 0..n {
            for j in i..n {
                let jet = metric.components[i][j].jet(&p.coords, &layout);
                g[(i, j)] = jet.value();
                g[(j, i)] = g[(i, j)];
                for m in 0..n {
                    dg[m][(i, j)] = jet.derivative(m);
                    dg[m][(j, i)] = dg[m][(i, j)];
                    for q in m..n {
                        let h = jet.second_derivative(m, q);
                        ddg[m][q][(i, j)] = h;
                        ddg[m][q][(j, i)] = h;
                        ddg[q][m][(i, j)] = h;
                        ddg[q][m][(j, i)] = h;
                    }
                }
            }
        }
        let g_inv = invert_metric(&g)?;

        let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let idx4 = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;

        // first kind, and its derivative
        let mut gamma1 = vec![0.0; n * n * n];
        let mut dgamma1 = vec![0.0; n * n * n * n];
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    gamma1[idx3(l, i, j)] = 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                    for m in 0..n {
                        dgamma1[idx4(m, l, i, j)] =
                            0.5 * (ddg[m][i][(j, l)] + ddg[m][j][(i, l)] - ddg[m][l][(i, j)]);
                    }
                }
            }
        }
        let dg_inv: Vec<Matrix> = dg.iter().map(|d| -(&g_inv * d * &g_inv)).collect();

        let mut gamma = vec![0.0; n * n * n];
        let mut dgamma = vec![0.0; n * n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += g_inv[(k, l)] * gamma1[idx3(l, i, j)];
                    }
                    gamma[idx3(k, i, j)] = s;
                    gamma[idx3(k, j, i)] = s;
                    for m in 0..n {
                        let mut d = 0.0;
                        for l in 0..n {
                            d += dg_inv[m][(k, l)] * gamma1[idx3(l, i, j)]
                                + g_inv[(k, l)] * dgamma1[idx4(m, l, i, j)];
                        }
                        dgamma[idx4(m, k, i, j)] = d;
                        dgamma[idx4(m, k, j, i)] = d;
                    }
                }
            }
        }

        let sgn = sign.factor();
        let mut riemann = vec![0.0; n * n * n * n];
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut r = dgamma[idx4(i, l, j, k)] - dgamma[idx4(j, l, i, k)];
                        for m in 0..n {
                            r += gamma[idx3(l, i, m)] * gamma[idx3(m, j, k)]
                                - gamma[idx3(l, j, m)] * gamma[idx3(m, i, k)];
                        }
                        riemann[idx4(l, i, j, k)] = sgn * r;
                    }
                }
            }
        }
        // riemann_low[i][j][k][w] = g_wl R^l_ijk
        let mut riemann_low = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for w in 0..n {
                        let mut s = 0.0;
                        for l in 0..n {
                            s += g[(w, l)] * riemann[idx4(l, i, j, k)];
                        }
                        riemann_low[idx4(i, j, k, w)] = s;
                    }
                }
            }
        }
        let ricci = Matrix::from_fn(n, n, |j, k| (0..n).map(|i| riemann[idx4(i, i, j, k)]).sum());
        let tau = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| g_inv[(j, k)] * ricci[(j, k)])
            .sum();

        Ok(PointGeometry {
            n,
            point: p.clone(),
            sign,
            g,
            g_inv,
            dg,
            gamma,
            dgamma,
            riemann,
            riemann_low,
            ricci,
            tau,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    #[inline]
    fn i4(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    /// `Gamma^k_ij`.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[self.i3(k, i, j)]
    }

    /// `d_m Gamma^k_ij`.
    pub fn dgamma(&self, m: usize, k: usize, i: usize, j: usize) -> f64 {
        self.dgamma[self.i4(m, k, i, j)]
    }

    /// `R^l_ijk`, the components of `R(d_i, d_j) d_k`.
    pub fn riemann_component(&self, l: usize, i: usize, j: usize, k: usize) -> f64 {
        self.riemann[self.i4(l, i, j, k)]
    }

    pub fn christoffel(&self) -> ChristoffelAtPoint {
        let n = self.n;
        ChristoffelAtPoint {
            gamma: (0..n)
                .map(|k| {
                    (0..n)
                        .map(|i| (0..n).map(|j| self.gamma(k, i, j)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn pair(&self, x: &Vector, y: &Vector) -> f64 {
        pair(&self.g, x, y)
    }

    pub fn norm2(&self, x: &Vector) -> f64 {
        self.pair(x, x)
    }

    /// `Gamma(X, Y)^k = Gamma^k_ij X^i Y^j`.
    pub fn gamma_contract(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.n;
        Vector::from_fn(n, |k, _| {
            let mut s = 0.0;
            for i in 0..n {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    s += self.gamma(k, i, j) * x[i] * y[j];
                }
            }
            s
        })
    }

    /// `nabla_X Y` from the value of `Y` and its Jacobian `jac[(k, i)] = d_i Y^k`.
    pub fn nabla(&self, x: &Vector, y: &Vector, y_jac: &Matrix) -> Vector {
        y_jac * x + self.gamma_contract(x, y)
    }

    /// `nabla_{d_i} T` for each coordinate direction, given `T` and `d_i T`.
    pub fn nabla_end(&self, t: &Matrix, partials: &[Matrix]) -> Vec<Matrix> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let gi = Matrix::from_fn(n, n, |k, m| self.gamma(k, i, m));
                &partials[i] + &gi * t - t * &gi
            })
            .collect()
    }

    /// `R(X, Y)Z`.
    pub fn riemann(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let n = self.n;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let c = xy * z[k];
                    if c == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        out[l] += self.riemann[self.i4(l, i, j, k)] * c;
                    }
                }
            }
        }
        out
    }

    /// `R(X, Y, Z, W) = g(R(X, Y)Z, W)`.
    pub fn riemann_0_4(&self, x: &Vector, y: &Vector, z: &Vector, w: &Vector) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let a = x[i] * y[j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let b = a * z[k];
                    if b == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        s += self.riemann_low[self.i4(i, j, k, l)] * b * w[l];
                    }
                }
            }
        }
        s
    }

    /// `rho(X, Y)` from the contracted tensor `R^i_ijk`.
    pub fn ricci(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.ricci * y)[(0, 0)]
    }

    /// `rho(X, Y) = sum_a R(E_a, X, Y, E_a)` over an explicit frame.
    pub fn ricci_in_frame(&self, frame: &[Vector], x: &Vector, y: &Vector) -> f64 {
        frame.iter().map(|e| self.riemann_0_4(e, x, y, e)).sum()
    }

    pub fn scalar_curvature(&self) -> f64 {
        self.tau
    }

    pub fn scalar_curvature_in_frame(&self, frame: &[Vector]) -> f64 {
        frame.iter().map(|e| self.ricci_in_frame(frame, e, e)).sum()
    }

    /// Gram-Schmidt applied to the coordinate frame in order.
    pub fn orthonormal_frame(&self) -> Result<Vec<Vector>> {
        gram_schmidt(&self.g, &coordinate_basis(self.n))
    }

    pub fn orthonormal_frame_from(&self, seeds: &[Vector]) -> Result<Vec<Vector>> {
        gram_schmidt(&self.g, seeds)
    }

    pub fn gram(&self, x: &Vector, y: &Vector) -> f64 {
        self.norm2(x) * self.norm2(y) - self.pair(x, y).powi(2)
    }

    /// `k(X, Y) = R(X, Y, Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)`.
    pub fn sectional(&self, x: &Vector, y: &Vector) -> Result<f64> {
        let gram = self.gram(x, y);
        if !(gram > 1e-10) {
            return Err(Error::DegenerateSection { gram });
        }
        Ok(self.riemann_0_4(x, y, y, x) / gram)
    }

    /// `GH_{a,b}(X) = k(X, aGX + bHX)` for unit horizontal `X`.
    pub fn gh_sectional(&self, s: &StructureAtPoint, x: &Vector, a: f64, b: f64) -> Result<f64> {
        if !s.is_horizontal(x) {
            return Err(Error::ContractViolation(
                "GH-sectional curvature needs a horizontal vector".into(),
            ));
        }
        if (self.norm2(x) - 1.0).abs() > 1e-10 {
            return Err(Error::ContractViolation(
                "GH-sectional curvature needs a unit vector".into(),
            ));
        }
        if (a * a + b * b - 1.0).abs() > 1e-10 {
            return Err(Error::ContractViolation("a^2 + b^2 must equal 1".into()));
        }
        let y = &s.G * x * a + &s.H * x * b;
        self.sectional(x, &y)
    }

    /// Largest `|d_i g_jk - Gamma^l_ij g_lk - Gamma^l_ik g_jl|`.
    pub fn compatibility_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = self.dg[i][(j, k)];
                    for l in 0..n {
                        r -= self.gamma(l, i, j) * self.g[(l, k)]
                            + self.gamma(l, i, k) * self.g[(j, l)];
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

fn invert_metric(g: &Matrix) -> Result<Matrix> {
    let n = g.nrows();
    if !g.iter().all(|x| x.is_finite()) {
        return Err(Error::DegenerateMetric { pivot: f64::NAN });
    }
    match g.clone().cholesky() {
        Some(ch) => {
            let l = ch.l();
            let pivot = (0..n).map(|i| l[(i, i)]).fold(f64::INFINITY, f64::min);
            if pivot * pivot <= 1e-14 * g.norm().max(1.0) {
                return Err(Error::DegenerateMetric { pivot });
            }
            Ok(ch.inverse())
        }
        None => {
            let pivot = g.clone().symmetric_eigen().eigenvalues.min();
            Err(Error::DegenerateMetric { pivot })
        }
    }
}

pub fn christoffel(g: &MetricTensor, p: &Point) -> Result<ChristoffelAtPoint> {
    Ok(PointGeometry::new(g, p, CurvatureSign::Standard)?.christoffel())
}

pub fn covariant_derivative_vector(
    g: &MetricTensor,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let geom = PointGeometry::new(g, p, CurvatureSign::Standard)?;
    let xv = Vector::from_vec(x.at(&p.coords));
    let (yv, jac) = y.value_and_jacobian(&p.coords);
    Ok(geom.nabla(&xv, &yv, &jac))
}

/// `(nabla_X T)Y = nabla_X(TY) - T(nabla_X Y)`.
pub fn covariant_derivative_end(
    g: &MetricTensor,
    t: &EndField,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let ty = t.apply(y);
    let a = covariant_derivative_vector(g, x, &ty, p)?;
    let b = covariant_derivative_vector(g, x, y, p)?;
    let tv = crate::linalg::matrix(&t.at(&p.coords));
    Ok(a - tv * b)
}

fn values(p: &Point, fields: &[&VectorField]) -> Vec<Vector> {
    fields
        .iter()
        .map(|f| Vector::from_vec(f.at(&p.coords)))
        .collect()
}

pub fn riemann(
    g: &MetricTensor,
    sign: CurvatureSign,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let geom = PointGeometry::new(g, p, sign)?;
    let v = values(p, &[x, y, z]);
    Ok(geom.riemann(&v[0], &v[1], &v[2]))
}

pub fn riemann_0_4(
    g: &MetricTensor,
    sign: CurvatureSign,
    fields: [&VectorField; 4],
    p: &Point,
) -> Result<f64> {
    let geom = PointGeometry::new(g, p, sign)?;
    let v = values(p, &fields);
    Ok(geom.riemann_0_4(&v[0], &v[1], &v[2], &v[3]))
}

pub fn ricci(
    g: &MetricTensor,
    sign: CurvatureSign,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<f64> {
    let geom = PointGeometry::new(g, p, sign)?;
    let frame = geom.orthonormal_frame()?;
    let v = values(p, &[x, y]);
    Ok(geom.ricci_in_frame(&frame, &v[0], &v[1]))
}

pub fn scalar_curvature(g: &MetricTensor, sign: CurvatureSign, p: &Point) -> Result<f64> {
    let geom = PointGeometry::new(g, p, sign)?;
    let frame = geom.orthonormal_frame()?;
    Ok(geom.scalar_curvature_in_frame(&frame))
}

pub fn sectional(
    g: &MetricTensor,
    sign: CurvatureSign,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<f64> {
    let geom = PointGeometry::new(g, p, sign)?;
    let v = values(p, &[x, y]);
    geom.sectional(&v[0], &v[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;
    use crate::linalg::vector;

    fn conformally_flat(n: usize) -> MetricTensor {
        // 4 / (1 + |x|^2)^2 delta: the unit sphere in stereographic coordinates
        let r2 = (0..n).fold(ScalarField::zero(), |acc, i| {
            &acc + &(&ScalarField::coord(i) * &ScalarField::coord(i))
        });
        let f = (&r2 + &ScalarField::one()).powi(-2) * 4.0;
        MetricTensor::from_upper(n, |i, j| {
            if i == j {
                f.clone()
            } else {
                ScalarField::zero()
            }
        })
    }

    #[test]
    fn euclidean_is_flat() {
        let g = MetricTensor::euclidean(4);
        let geom = PointGeometry::new(
            &g,
            &Point::new(vec![0.1, 0.2, 0.3, 0.4]),
            CurvatureSign::Standard,
        )
        .unwrap();
        assert_eq!(geom.christoffel().max_abs(), 0.0);
        assert_eq!(geom.tau, 0.0);
    }

    #[test]
    fn unit_sphere_has_unit_sectional_curvature() {
        let g = conformally_flat(3);
        let geom = PointGeometry::new(
            &g,
            &Point::new(vec![0.3, -0.2, 0.5]),
            CurvatureSign::Standard,
        )
        .unwrap();
        let x = vector(&[1.0, 0.5, -0.2]);
        let y = vector(&[0.1, -1.0, 0.7]);
        assert!((geom.sectional(&x, &y).unwrap() - 1.0).abs() < 1e-12);
        assert!((geom.tau - 6.0).abs() < 1e-11);
    }

    #[test]
    fn flipped_sign_negates_curvature() {
        let g = conformally_flat(3);
        let p = Point::new(vec![0.3, -0.2, 0.5]);
        let a = PointGeometry::new(&g, &p, CurvatureSign::Standard).unwrap();
        let b = PointGeometry::new(&g, &p, CurvatureSign::Flipped).unwrap();
        assert!((a.tau + b.tau).abs() < 1e-12);
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let g = MetricTensor::from_upper(2, |_, _| ScalarField::one());
        let err = PointGeometry::new(&g, &Point::origin(2), CurvatureSign::Standard).unwrap_err();
        assert!(matches!(err, Error::DegenerateMetric { .. }));
    }

    #[test]
    fn degenerate_section_is_rejected() {
        let g = MetricTensor::euclidean(3);
        let geom = PointGeometry::new(&g, &Point::origin(3), CurvatureSign::Standard).unwrap();
        let x = vector(&[1.0, 2.0, 3.0]);
        let err = geom.sectional(&x, &(&x * 2.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateSection { .. }));
    }

    #[test]
    fn compatibility_and_symmetry_on_sphere() {
        let g = conformally_flat(4);
        let geom = PointGeometry::new(
            &g,
            &Point::new(vec![0.9, -0.4, 0.1, 0.6]),
            CurvatureSign::Standard,
        )
        .unwrap();
        assert!(geom.compatibility_defect() < 1e-14);
        assert_eq!(geom.christoffel().symmetry_defect(), 0.0);
    }

    #[test]
    fn identity_endomorphism_is_parallel() {
        let g = conformally_flat(3);
        let p = Point::new(vec![0.2, 0.1, -0.3]);
        let x = VectorField::constant(&[1.0, -1.0, 0.5]);
        let y = VectorField::new(vec![
            ScalarField::coord(1),
            ScalarField::one(),
            ScalarField::coord(0),
        ]);
        let r = covariant_derivative_end(&g, &EndField::identity(3), &x, &y, &p).unwrap();
        assert!(r.amax() < 1e-15);
    }
}
