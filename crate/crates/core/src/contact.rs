//! Complex almost contact metric structures `(J, G, H, U, V, u, v, g)`.
//!
//! Field-level data lives in [`ContactStructureBundle`]; point-level values
//! and covariant derivatives in [`StructureAtPoint`]. All identities are
//! evaluated on vector values at a point, since every one of them is
//! tensorial once the covariant derivatives are known.

#![allow(non_snake_case)]

use crate::curvature::{CurvatureSign, PointGeometry};
use crate::error::{Error, Result};
use crate::field::{
    exterior_d_1form, sum_fields, EndField, MetricTensor, OneForm, Point, ScalarField, VectorField,
    WedgeConvention,
};
use crate::linalg::{pair, Matrix, Vector};

/// Horizontality test threshold on `|u(X)| + |v(X)|`.
pub const HORIZONTAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct ContactStructureBundle {
    pub J: EndField,
    pub G: EndField,
    pub H: EndField,
    pub U: VectorField,
    pub V: VectorField,
    pub u: OneForm,
    pub v: OneForm,
    pub g: MetricTensor,
    pub wedge: WedgeConvention,
}

/// Values and first derivatives of the structure tensors; no metric needed.
#[derive(Debug, Clone)]
pub struct StructureJets {
    pub J: (Matrix, Vec<Matrix>),
    pub G: (Matrix, Vec<Matrix>),
    pub H: (Matrix, Vec<Matrix>),
    pub U: (Vector, Matrix),
    pub V: (Vector, Matrix),
    pub u: (Vector, Matrix),
    pub v: (Vector, Matrix),
}

impl StructureJets {
    pub fn evaluate(b: &ContactStructureBundle, p: &Point) -> StructureJets {
        let c = &p.coords;
        StructureJets {
            J: b.J.value_and_partials(c),
            G: b.G.value_and_partials(c),
            H: b.H.value_and_partials(c),
            U: b.U.value_and_jacobian(c),
            V: b.V.value_and_jacobian(c),
            u: b.u.value_and_jacobian(c),
            v: b.v.value_and_jacobian(c),
        }
    }
}

/// `X = X0 + u(X)U + v(X)V` with `X0` horizontal.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitVector {
    pub horizontal: Vector,
    pub u_coeff: f64,
    pub v_coeff: f64,
}

impl SplitVector {
    pub fn reconstruct(&self, s: &StructureAtPoint) -> Vector {
        &self.horizontal + &s.U * self.u_coeff + &s.V * self.v_coeff
    }
}

/// Left minus right sides of a pair of `G`/`H` laws.
#[derive(Debug, Clone)]
pub struct ResidualPair {
    pub g_law: Vector,
    pub h_law: Vector,
}

impl ResidualPair {
    pub fn max_abs(&self) -> f64 {
        self.g_law.amax().max(self.h_law.amax())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FormResidual {
    pub du_law: f64,
    pub dv_law: f64,
}

/// Structure tensors and their covariant derivatives at one point.
#[derive(Debug, Clone)]
pub struct StructureAtPoint {
    pub g: Matrix,
    pub J: Matrix,
    pub G: Matrix,
    pub H: Matrix,
    pub U: Vector,
    pub V: Vector,
    pub u: Vector,
    pub v: Vector,
    /// `nabla_J[i] = nabla_{d_i} J`, likewise for `G`, `H`.
    pub nabla_J: Vec<Matrix>,
    pub nabla_G: Vec<Matrix>,
    pub nabla_H: Vec<Matrix>,
    /// Column `i` is `nabla_{d_i} U`.
    pub nabla_U: Matrix,
    pub nabla_V: Matrix,
    /// `sigma_i = g(nabla_{d_i} U, V)`.
    pub sigma: Vector,
    /// `du(d_i, d_j)` under the bundle's wedge convention.
    pub du: Matrix,
    pub dv: Matrix,
    pub wedge: WedgeConvention,
    /// `d sigma(U, V)`; only filled by [`ContactStructureBundle::structure_at`].
    pub d_sigma_uv: Option<f64>,
}

fn vector_nabla(geom: &PointGeometry, (val, jac): &(Vector, Matrix)) -> Matrix {
    let n = geom.dim();
    let mut m = jac.clone();
    for i in 0..n {
        for k in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += geom.gamma(k, i, j) * val[j];
            }
            m[(k, i)] += s;
        }
    }
    m
}

fn plain_d(jac: &Matrix) -> Matrix {
    // d alpha(d_i, d_j) = d_i alpha_j - d_j alpha_i, jac[(j, i)] = d_i alpha_j
    jac.transpose() - jac
}

impl StructureAtPoint {
    pub fn assemble(jets: &StructureJets, geom: &PointGeometry, wedge: WedgeConvention) -> Self {
        let nabla_U = vector_nabla(geom, &jets.U);
        let nabla_V = vector_nabla(geom, &jets.V);
        let V = jets.V.0.clone();
        let sigma = nabla_U.transpose() * (&geom.g * &V);
        let f = wedge.factor();
        StructureAtPoint {
            g: geom.g.clone(),
            J: jets.J.0.clone(),
            G: jets.G.0.clone(),
            H: jets.H.0.clone(),
            U: jets.U.0.clone(),
            V,
            u: jets.u.0.clone(),
            v: jets.v.0.clone(),
            nabla_J: geom.nabla_end(&jets.J.0, &jets.J.1),
            nabla_G: geom.nabla_end(&jets.G.0, &jets.G.1),
            nabla_H: geom.nabla_end(&jets.H.0, &jets.H.1),
            nabla_U,
            nabla_V,
            sigma,
            du: plain_d(&jets.u.1) * f,
            dv: plain_d(&jets.v.1) * f,
            wedge,
            d_sigma_uv: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.U.len()
    }

    pub fn pair(&self, x: &Vector, y: &Vector) -> f64 {
        pair(&self.g, x, y)
    }

    pub fn u_of(&self, x: &Vector) -> f64 {
        self.u.dot(x)
    }

    pub fn v_of(&self, x: &Vector) -> f64 {
        self.v.dot(x)
    }

    pub fn sigma_of(&self, x: &Vector) -> f64 {
        self.sigma.dot(x)
    }

    pub fn is_horizontal(&self, x: &Vector) -> bool {
        self.u_of(x).abs() + self.v_of(x).abs() <= HORIZONTAL_TOL
    }

    pub fn split(&self, x: &Vector) -> SplitVector {
        let (a, b) = (self.u_of(x), self.v_of(x));
        SplitVector {
            horizontal: x - &self.U * a - &self.V * b,
            u_coeff: a,
            v_coeff: b,
        }
    }

    pub fn horizontal(&self, x: &Vector) -> Vector {
        self.split(x).horizontal
    }

    fn contract(nabla: &[Matrix], x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(y.len());
        for (i, m) in nabla.iter().enumerate() {
            if x[i] != 0.0 {
                out += m * y * x[i];
            }
        }
        out
    }

    /// `(nabla_X J)Y`.
    pub fn nabla_j(&self, x: &Vector, y: &Vector) -> Vector {
        Self::contract(&self.nabla_J, x, y)
    }

    pub fn nabla_g(&self, x: &Vector, y: &Vector) -> Vector {
        Self::contract(&self.nabla_G, x, y)
    }

    pub fn nabla_h(&self, x: &Vector, y: &Vector) -> Vector {
        Self::contract(&self.nabla_H, x, y)
    }

    pub fn nabla_u(&self, x: &Vector) -> Vector {
        &self.nabla_U * x
    }

    pub fn nabla_v(&self, x: &Vector) -> Vector {
        &self.nabla_V * x
    }

    pub fn du_of(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.du * y)[(0, 0)]
    }

    pub fn dv_of(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.dv * y)[(0, 0)]
    }

    pub fn wedge(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        // (alpha ^ beta)(X, Y) from (alpha(X), alpha(Y)) and (beta(X), beta(Y))
        self.wedge.factor() * (a.0 * b.1 - a.1 * b.0)
    }

    /// `[T,T](X,Y) = (nabla_{TX}T)Y - (nabla_{TY}T)X - T(nabla_X T)Y + T(nabla_Y T)X`.
    pub fn nijenhuis_with(t: &Matrix, nabla_t: &[Matrix], x: &Vector, y: &Vector) -> Vector {
        let c = |a: &Vector, b: &Vector| Self::contract(nabla_t, a, b);
        c(&(t * x), y) - c(&(t * y), x) - t * c(x, y) + t * c(y, x)
    }

    pub fn tensor_s(&self, x: &Vector, y: &Vector) -> Vector {
        let (G, H) = (&self.G, &self.H);
        let gh = G * H;
        let nn = Self::nijenhuis_with(G, &self.nabla_G, x, y);
        nn + &self.U * (2.0 * self.pair(x, &(G * y))) - &self.V * (2.0 * self.pair(x, &(H * y)))
            + (H * x * self.v_of(y) - H * y * self.v_of(x)) * 2.0
            + H * x * self.sigma_of(&(G * y))
            - H * y * self.sigma_of(&(G * x))
            + &gh * y * self.sigma_of(x)
            - &gh * x * self.sigma_of(y)
    }

    pub fn tensor_t(&self, x: &Vector, y: &Vector) -> Vector {
        let (G, H) = (&self.G, &self.H);
        let gh = G * H;
        let nn = Self::nijenhuis_with(H, &self.nabla_H, x, y);
        nn - &self.U * (2.0 * self.pair(x, &(G * y)))
            + &self.V * (2.0 * self.pair(x, &(H * y)))
            + (G * x * self.u_of(y) - G * y * self.u_of(x)) * 2.0
            + G * y * self.sigma_of(&(H * x))
            - G * x * self.sigma_of(&(H * y))
            + &gh * y * self.sigma_of(x)
            - &gh * x * self.sigma_of(y)
    }

    /// Covariant-derivative characterization of the Sasakian condition,
    /// left minus right:
    ///
    /// ```text
    /// (nabla_X G)Y = -2v(X)HGY - u(Y)X - v(Y)JX + g(X,Y)U + g(JX,Y)V
    /// (nabla_X H)Y = -2u(X)HGY + u(Y)JX - v(Y)X - g(JX,Y)U + g(X,Y)V
    /// ```
    pub fn sasakian_residuals(&self, x: &Vector, y: &Vector) -> ResidualPair {
        self.sasakian_residuals_with(x, y, -2.0)
    }

    /// As [`Self::sasakian_residuals`] with the `u(X)HGY` coefficient of the
    /// `H` law set to `h_coeff`.
    pub fn sasakian_residuals_with(&self, x: &Vector, y: &Vector, h_coeff: f64) -> ResidualPair {
        let (J, G, H) = (&self.J, &self.G, &self.H);
        let hgy = H * G * y;
        let jx = J * x;
        let gxy = self.pair(x, y);
        let gjxy = self.pair(&jx, y);
        let rhs_g = &hgy * (-2.0 * self.v_of(x)) - x * self.u_of(y) - &jx * self.v_of(y)
            + &self.U * gxy
            + &self.V * gjxy;
        let rhs_h = &hgy * (h_coeff * self.u_of(x)) + &jx * self.u_of(y)
            - x * self.v_of(y)
            - &self.U * gjxy
            + &self.V * gxy;
        ResidualPair {
            g_law: self.nabla_g(x, y) - rhs_g,
            h_law: self.nabla_h(x, y) - rhs_h,
        }
    }

    /// Normality characterization with all `sigma` and `d sigma(U,V)` terms.
    pub fn normality_residuals(&self, x: &Vector, y: &Vector) -> Result<ResidualPair> {
        let ds = self.d_sigma_uv.ok_or_else(|| {
            Error::ContractViolation("d sigma(U,V) was not evaluated at this point".into())
        })?;
        let (J, G, H) = (&self.J, &self.G, &self.H);
        let y0 = self.horizontal(y);
        let nuj_gy0 = self.nabla_j(&self.U, &(G * &y0));
        let jx = J * x;
        let jy = J * y;
        let (ux, vx, uy, vy) = (self.u_of(x), self.v_of(x), self.u_of(y), self.v_of(y));
        let gxy = self.pair(x, y);
        let gjxy = self.pair(&jx, y);
        let tail = &self.V * uy - &self.U * vy;
        let rhs_g = H * y * self.sigma_of(x) - &jy * (2.0 * vx) - x * uy - &jx * vy
            + (J * &y0 * 2.0 - &nuj_gy0) * vx
            + &self.U * gxy
            + &self.V * gjxy
            - &tail * (ds * vx);
        let rhs_h = -(G * y) * self.sigma_of(x) + &jy * (2.0 * ux) + &jx * uy - x * vy
            + (J * &y0 * -2.0 - &nuj_gy0) * ux
            - &self.U * gjxy
            + &self.V * gxy
            + &tail * (ds * ux);
        Ok(ResidualPair {
            g_law: self.nabla_g(x, y) - rhs_g,
            h_law: self.nabla_h(x, y) - rhs_h,
        })
    }

    /// `(nabla_X J)Y + 2u(X)HY - 2v(X)GY`.
    pub fn nabla_j_residual(&self, x: &Vector, y: &Vector) -> Vector {
        self.nabla_j(x, y) + &self.H * y * (2.0 * self.u_of(x)) - &self.G * y * (2.0 * self.v_of(x))
    }

    /// The normal-case `nabla J` formula including the `(nabla_U J)` terms.
    pub fn nabla_j_normal_residual(&self, x: &Vector, y: &Vector) -> Vector {
        let (J, G, H) = (&self.J, &self.G, &self.H);
        let y0 = self.horizontal(y);
        let (ux, vx) = (self.u_of(x), self.v_of(x));
        let rhs = H * y * (-2.0 * ux)
            + G * y * (2.0 * vx)
            + (H * &y0 * 2.0 + self.nabla_j(&self.U, &y0)) * ux
            + (G * &y0 * -2.0 + self.nabla_j(&self.U, &(J * &y0))) * vx;
        self.nabla_j(x, y) - rhs
    }

    /// `du(X,Y) - g(X,GY) - (sigma^v)(X,Y)` and
    /// `dv(X,Y) - g(X,HY) + (sigma^u)(X,Y)`.
    pub fn fundamental_form_residual(&self, x: &Vector, y: &Vector) -> FormResidual {
        let s = (self.sigma_of(x), self.sigma_of(y));
        let du = self.du_of(x, y)
            - self.pair(x, &(&self.G * y))
            - self.wedge(s, (self.v_of(x), self.v_of(y)));
        let dv = self.dv_of(x, y) - self.pair(x, &(&self.H * y))
            + self.wedge(s, (self.u_of(x), self.u_of(y)));
        FormResidual {
            du_law: du,
            dv_law: dv,
        }
    }
}

impl ContactStructureBundle {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn geometry(&self, p: &Point, sign: CurvatureSign) -> Result<PointGeometry> {
        PointGeometry::new(&self.g, p, sign)
    }

    /// Full point evaluation, including `d sigma(U, V)`.
    pub fn structure_at(&self, p: &Point, geom: &PointGeometry) -> Result<StructureAtPoint> {
        let jets = StructureJets::evaluate(self, p);
        let mut s = StructureAtPoint::assemble(&jets, geom, self.wedge);
        s.d_sigma_uv = Some(self.d_sigma(&self.U, &self.V).eval(&p.coords));
        Ok(s)
    }

    /// `sigma` as a 1-form field:
    /// `sigma_i = V^l g_kl d_i U^k + 1/2 U^m V^l (d_i g_ml + d_m g_il - d_l g_im)`.
    pub fn sigma_form(&self) -> OneForm {
        let n = self.dim();
        let g = &self.g.components;
        let (U, V) = (&self.U.components, &self.V.components);
        let comps = (0..n)
            .map(|i| {
                let mut terms = Vec::new();
                for k in 0..n {
                    let du = U[k].partial(i);
                    if du.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        if V[l].is_zero() || g[k][l].is_zero() {
                            continue;
                        }
                        terms.push(&(&V[l] * &g[k][l]) * &du);
                    }
                }
                for m in 0..n {
                    if U[m].is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        if V[l].is_zero() {
                            continue;
                        }
                        let christ = sum_fields([
                            g[m][l].partial(i),
                            g[i][l].partial(m),
                            -g[i][m].partial(l),
                        ]);
                        if christ.is_zero() {
                            continue;
                        }
                        terms.push(&(&(&U[m] * &V[l]) * &christ) * 0.5);
                    }
                }
                sum_fields(terms)
            })
            .collect();
        OneForm::new(comps)
    }

    /// `d sigma(X, Y)` as a scalar field.
    pub fn d_sigma(&self, x: &VectorField, y: &VectorField) -> ScalarField {
        exterior_d_1form(&self.sigma_form(), self.wedge)(x, y)
    }

    fn point_pair(&self, p: &Point) -> Result<(PointGeometry, StructureAtPoint)> {
        let geom = self.geometry(p, CurvatureSign::Standard)?;
        let s = self.structure_at(p, &geom)?;
        Ok((geom, s))
    }
}

fn at(x: &VectorField, p: &Point) -> Vector {
    Vector::from_vec(x.at(&p.coords))
}

pub fn horizontal_project(
    b: &ContactStructureBundle,
    x: &VectorField,
    p: &Point,
) -> Result<SplitVector> {
    let jets = StructureJets::evaluate(b, p);
    let xv = at(x, p);
    let (a, c) = (jets.u.0.dot(&xv), jets.v.0.dot(&xv));
    Ok(SplitVector {
        horizontal: &xv - &jets.U.0 * a - &jets.V.0 * c,
        u_coeff: a,
        v_coeff: c,
    })
}

/// `sigma(X) = g(nabla_X U, V)`.
pub fn sigma(b: &ContactStructureBundle, x: &VectorField, p: &Point) -> Result<f64> {
    let geom = b.geometry(p, CurvatureSign::Standard)?;
    let s = StructureAtPoint::assemble(&StructureJets::evaluate(b, p), &geom, b.wedge);
    Ok(s.sigma_of(&at(x, p)))
}

/// Nijenhuis torsion of an arbitrary (1,1)-field with the Levi-Civita
/// connection of the bundle metric.
pub fn nijenhuis(
    b: &ContactStructureBundle,
    t: &EndField,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let geom = b.geometry(p, CurvatureSign::Standard)?;
    let (tv, partials) = t.value_and_partials(&p.coords);
    let nabla = geom.nabla_end(&tv, &partials);
    Ok(StructureAtPoint::nijenhuis_with(
        &tv,
        &nabla,
        &at(x, p),
        &at(y, p),
    ))
}

pub fn tensor_S(
    b: &ContactStructureBundle,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let (_, s) = b.point_pair(p)?;
    Ok(s.tensor_s(&at(x, p), &at(y, p)))
}

pub fn tensor_T(
    b: &ContactStructureBundle,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<Vector> {
    let (_, s) = b.point_pair(p)?;
    Ok(s.tensor_t(&at(x, p), &at(y, p)))
}

pub fn sasakian_residuals(
    b: &ContactStructureBundle,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<ResidualPair> {
    let (_, s) = b.point_pair(p)?;
    Ok(s.sasakian_residuals(&at(x, p), &at(y, p)))
}

pub fn normality_residuals_theorem1(
    b: &ContactStructureBundle,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<ResidualPair> {
    let (_, s) = b.point_pair(p)?;
    s.normality_residuals(&at(x, p), &at(y, p))
}

/// du/dv laws evaluated entirely at the field level through
/// [`exterior_d_1form`] and [`crate::field::wedge_1forms`].
pub fn fundamental_2form_residual(
    b: &ContactStructureBundle,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<FormResidual> {
    let du = exterior_d_1form(&b.u, b.wedge)(x, y);
    let dv = exterior_d_1form(&b.v, b.wedge)(x, y);
    let sigma = b.sigma_form();
    let sv = crate::field::wedge_1forms(&sigma, &b.v, b.wedge)(x, y);
    let su = crate::field::wedge_1forms(&sigma, &b.u, b.wedge)(x, y);
    let gy = b.G.apply(y);
    let hy = b.H.apply(y);
    let gxgy = crate::field::metric_pair(&b.g, x, &gy);
    let gxhy = crate::field::metric_pair(&b.g, x, &hy);
    let c = &p.coords;
    Ok(FormResidual {
        du_law: du.eval(c) - gxgy.eval(c) - sv.eval(c),
        dv_law: dv.eval(c) - gxhy.eval(c) + su.eval(c),
    })
}
