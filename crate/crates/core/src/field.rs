//! Charts, points and tensor fields as pure component functions.
//!
//! Every component is a [`ScalarField`]: a pure map from a chart point to a
//! [`Jet`] of whatever order the caller asks for. Composite fields (products,
//! pairings, Lie brackets) are built by composing component closures, so a
//! single evaluation at order `k` returns exact derivatives up to order `k` of
//! the composite.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, Jet2Scalar, Layout};
use crate::linalg::{Matrix, Vector};

/// A single global coordinate chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub coordinates: Vec<String>,
    pub sample_domain: Vec<(f64, f64)>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(coordinates: &[S]) -> Chart {
        Chart::with_domain(coordinates, -1.0, 1.0)
    }

    pub fn with_domain<S: AsRef<str>>(coordinates: &[S], lo: f64, hi: f64) -> Chart {
        assert!(
            !coordinates.is_empty(),
            "chart needs at least one coordinate"
        );
        assert!(lo < hi, "sample interval must be nonempty");
        Chart {
            coordinates: coordinates.iter().map(|s| s.as_ref().to_string()).collect(),
            sample_domain: vec![(lo, hi); coordinates.len()],
        }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.coords
                .iter()
                .zip(&self.sample_domain)
                .all(|(x, (lo, hi))| x.is_finite() && *x >= *lo && *x <= *hi)
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Point {
        Point { coords }
    }

    pub fn origin(dim: usize) -> Point {
        Point {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<&[f64]> for Point {
    fn from(c: &[f64]) -> Point {
        Point { coords: c.to_vec() }
    }
}

type JetFn = dyn Fn(&[f64], &Arc<Layout>) -> Jet + Send + Sync;

/// A smooth real function on the chart.
///
/// Constants are kept symbolic so that the many zero components of sparse
/// tensors cost nothing when composed.
#[derive(Clone)]
pub enum ScalarField {
    Const(f64),
    Coord(usize),
    Fn(Arc<JetFn>),
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Const(c) => write!(f, "Const({c})"),
            ScalarField::Coord(i) => write!(f, "Coord({i})"),
            ScalarField::Fn(_) => write!(f, "Fn(..)"),
        }
    }
}

impl ScalarField {
    pub fn constant(c: f64) -> ScalarField {
        ScalarField::Const(c)
    }

    pub fn zero() -> ScalarField {
        ScalarField::Const(0.0)
    }

    pub fn one() -> ScalarField {
        ScalarField::Const(1.0)
    }

    pub fn coord(i: usize) -> ScalarField {
        ScalarField::Coord(i)
    }

    pub fn from_jet_fn<F>(f: F) -> ScalarField
    where
        F: Fn(&[f64], &Arc<Layout>) -> Jet + Send + Sync + 'static,
    {
        ScalarField::Fn(Arc::new(f))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            ScalarField::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    /// Taylor jet of the field at `p` in the given layout.
    pub fn jet(&self, p: &[f64], layout: &Arc<Layout>) -> Jet {
        match self {
            ScalarField::Const(c) => Jet::constant(layout, *c),
            ScalarField::Coord(i) => Jet::variable(layout, *i, p[*i]),
            ScalarField::Fn(f) => f(p, layout),
        }
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        match self {
            ScalarField::Const(c) => *c,
            ScalarField::Coord(i) => p[*i],
            ScalarField::Fn(f) => f(p, &Layout::get(p.len(), 0)).value(),
        }
    }

    /// Value, gradient and Hessian from one order-2 jet evaluation.
    pub fn eval_jet2(&self, chart: &Chart, p: &Point) -> Result<Jet2Scalar> {
        chart.check(p)?;
        let layout = Layout::get(p.dim(), 2);
        Ok(Jet2Scalar::from(&self.jet(&p.coords, &layout)))
    }

    /// `d/dx_i` of this field, itself a field.
    pub fn partial(&self, i: usize) -> ScalarField {
        match self {
            ScalarField::Const(_) => ScalarField::zero(),
            ScalarField::Coord(j) => ScalarField::Const(if *j == i { 1.0 } else { 0.0 }),
            ScalarField::Fn(_) => {
                let f = self.clone();
                ScalarField::from_jet_fn(move |p, layout| {
                    let up = layout.raised();
                    f.jet(p, &up).partial(i)
                })
            }
        }
    }

    pub fn map_jet<F>(&self, f: F) -> ScalarField
    where
        F: Fn(&Jet) -> Jet + Send + Sync + 'static,
    {
        let inner = self.clone();
        ScalarField::from_jet_fn(move |p, layout| f(&inner.jet(p, layout)))
    }

    pub fn sqrt(&self) -> ScalarField {
        match self {
            ScalarField::Const(c) => ScalarField::Const(c.sqrt()),
            _ => self.map_jet(Jet::sqrt),
        }
    }

    pub fn recip(&self) -> ScalarField {
        match self {
            ScalarField::Const(c) => ScalarField::Const(1.0 / c),
            _ => self.map_jet(Jet::recip),
        }
    }

    pub fn powi(&self, n: i32) -> ScalarField {
        match self {
            ScalarField::Const(c) => ScalarField::Const(c.powi(n)),
            _ => self.map_jet(move |j| j.powi(n)),
        }
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        self * s
    }
}

fn combine(a: &ScalarField, b: &ScalarField, op: fn(&Jet, &Jet) -> Jet) -> ScalarField {
    let (a, b) = (a.clone(), b.clone());
    ScalarField::from_jet_fn(move |p, layout| op(&a.jet(p, layout), &b.jet(p, layout)))
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        match (self, rhs) {
            (ScalarField::Const(a), ScalarField::Const(b)) => ScalarField::Const(a + b),
            (ScalarField::Const(z), other) | (other, ScalarField::Const(z)) if *z == 0.0 => {
                other.clone()
            }
            (ScalarField::Const(c), other) | (other, ScalarField::Const(c)) => {
                let (c, o) = (*c, other.clone());
                ScalarField::from_jet_fn(move |p, l| o.jet(p, l).add_scalar(c))
            }
            _ => combine(self, rhs, |x, y| x + y),
        }
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self + &(-rhs)
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        match (self, rhs) {
            (ScalarField::Const(a), ScalarField::Const(b)) => ScalarField::Const(a * b),
            (ScalarField::Const(c), other) | (other, ScalarField::Const(c)) => other * *c,
            _ => combine(self, rhs, |x, y| x * y),
        }
    }
}

impl Mul<f64> for &ScalarField {
    type Output = ScalarField;
    fn mul(self, s: f64) -> ScalarField {
        if s == 0.0 {
            return ScalarField::zero();
        }
        if s == 1.0 {
            return self.clone();
        }
        match self {
            ScalarField::Const(c) => ScalarField::Const(c * s),
            other => {
                let o = other.clone();
                ScalarField::from_jet_fn(move |p, l| o.jet(p, l).scale(s))
            }
        }
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        self * -1.0
    }
}

macro_rules! owned_field_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: &ScalarField) -> ScalarField {
                (&self).$m(rhs)
            }
        }
        impl $tr<ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField {
                self.$m(&rhs)
            }
        }
    };
}
owned_field_ops!(Add, add);
owned_field_ops!(Sub, sub);
owned_field_ops!(Mul, mul);

impl Mul<f64> for ScalarField {
    type Output = ScalarField;
    fn mul(self, s: f64) -> ScalarField {
        &self * s
    }
}

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

impl From<f64> for ScalarField {
    fn from(c: f64) -> Self {
        ScalarField::Const(c)
    }
}

pub fn sum_fields<I: IntoIterator<Item = ScalarField>>(terms: I) -> ScalarField {
    terms
        .into_iter()
        .fold(ScalarField::zero(), |acc, t| &acc + &t)
}

/// Contravariant components in chart coordinates.
#[derive(Debug, Clone)]
pub struct VectorField {
    pub components: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(components: Vec<ScalarField>) -> VectorField {
        VectorField { components }
    }

    pub fn zero(dim: usize) -> VectorField {
        VectorField::new(vec![ScalarField::zero(); dim])
    }

    /// The coordinate field `d/dx_i`.
    pub fn coordinate(dim: usize, i: usize) -> VectorField {
        let mut c = vec![ScalarField::zero(); dim];
        c[i] = ScalarField::one();
        VectorField::new(c)
    }

    /// Field with the same constant components everywhere.
    pub fn constant(values: &[f64]) -> VectorField {
        VectorField::new(values.iter().map(|&v| ScalarField::Const(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, p: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    pub fn jets(&self, p: &[f64], layout: &Arc<Layout>) -> Vec<Jet> {
        self.components.iter().map(|c| c.jet(p, layout)).collect()
    }

    /// Value and Jacobian, `jac[(k, i)] = d_i X^k`.
    pub fn value_and_jacobian(&self, p: &[f64]) -> (Vector, Matrix) {
        let n = self.dim();
        let layout = Layout::get(p.len(), 1);
        let jets = self.jets(p, &layout);
        let value = Vector::from_fn(n, |k, _| jets[k].value());
        let jac = Matrix::from_fn(n, p.len(), |k, i| jets[k].derivative(i));
        (value, jac)
    }

    pub fn scale_by(&self, f: &ScalarField) -> VectorField {
        VectorField::new(self.components.iter().map(|c| c * f).collect())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> VectorField {
        VectorField::new(self.components.iter().map(|c| -c).collect())
    }

    /// `X(f) = X^i d_i f`.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        sum_fields(
            self.components
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| x * &f.partial(i)),
        )
    }
}

/// Covariant components in chart coordinates.
#[derive(Debug, Clone)]
pub struct OneForm {
    pub components: Vec<ScalarField>,
}

impl OneForm {
    pub fn new(components: Vec<ScalarField>) -> OneForm {
        OneForm { components }
    }

    pub fn coordinate(dim: usize, i: usize) -> OneForm {
        let mut c = vec![ScalarField::zero(); dim];
        c[i] = ScalarField::one();
        OneForm::new(c)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, p: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    /// Value and Jacobian, `jac[(j, i)] = d_i alpha_j`.
    pub fn value_and_jacobian(&self, p: &[f64]) -> (Vector, Matrix) {
        VectorField::new(self.components.clone()).value_and_jacobian(p)
    }

    pub fn pair(&self, x: &VectorField) -> ScalarField {
        sum_fields(
            self.components
                .iter()
                .zip(&x.components)
                .map(|(a, b)| a * b),
        )
    }

    pub fn scale(&self, s: f64) -> OneForm {
        OneForm::new(self.components.iter().map(|c| c * s).collect())
    }

    /// `(alpha o T)(X) = alpha(T X)`.
    pub fn compose(&self, t: &EndField) -> OneForm {
        let n = self.dim();
        OneForm::new(
            (0..n)
                .map(|j| sum_fields((0..n).map(|i| &self.components[i] * &t.components[i][j])))
                .collect(),
        )
    }
}

/// A (1,1)-tensor; `components[i][j]` maps `d/dx_j` to its `d/dx_i` part.
#[derive(Debug, Clone)]
pub struct EndField {
    pub components: Vec<Vec<ScalarField>>,
}

impl EndField {
    pub fn new(components: Vec<Vec<ScalarField>>) -> EndField {
        EndField { components }
    }

    pub fn zero(dim: usize) -> EndField {
        EndField::new(vec![vec![ScalarField::zero(); dim]; dim])
    }

    pub fn identity(dim: usize) -> EndField {
        let mut e = EndField::zero(dim);
        for i in 0..dim {
            e.components[i][i] = ScalarField::one();
        }
        e
    }

    pub fn constant(m: &[Vec<f64>]) -> EndField {
        EndField::new(
            m.iter()
                .map(|row| row.iter().map(|&v| ScalarField::Const(v)).collect())
                .collect(),
        )
    }

    /// `X (x) alpha`, i.e. `Y -> alpha(Y) X`.
    pub fn outer(x: &VectorField, alpha: &OneForm) -> EndField {
        EndField::new(
            x.components
                .iter()
                .map(|xi| alpha.components.iter().map(|aj| xi * aj).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, p: &[f64]) -> Vec<Vec<f64>> {
        self.components
            .iter()
            .map(|row| row.iter().map(|c| c.eval(p)).collect())
            .collect()
    }

    /// Value and the coordinate partials `d_i T`.
    pub fn value_and_partials(&self, p: &[f64]) -> (Matrix, Vec<Matrix>) {
        let n = self.dim();
        let layout = Layout::get(p.len(), 1);
        let jets: Vec<Vec<Jet>> = self
            .components
            .iter()
            .map(|row| row.iter().map(|c| c.jet(p, &layout)).collect())
            .collect();
        let value = Matrix::from_fn(n, n, |a, b| jets[a][b].value());
        let partials = (0..p.len())
            .map(|i| Matrix::from_fn(n, n, |a, b| jets[a][b].derivative(i)))
            .collect();
        (value, partials)
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        VectorField::new(
            self.components
                .iter()
                .map(|row| sum_fields(row.iter().zip(&x.components).map(|(a, b)| a * b)))
                .collect(),
        )
    }

    /// `self o other`.
    pub fn compose(&self, other: &EndField) -> EndField {
        let n = self.dim();
        EndField::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            sum_fields(
                                (0..n).map(|k| &self.components[i][k] * &other.components[k][j]),
                            )
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &EndField) -> EndField {
        EndField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> EndField {
        EndField::new(
            self.components
                .iter()
                .map(|r| r.iter().map(|a| a * s).collect())
                .collect(),
        )
    }
}

/// Symmetric (0,2) field, positive definite on the sample domain.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    pub components: Vec<Vec<ScalarField>>,
}

impl MetricTensor {
    /// Builds from the upper triangle; the lower triangle is mirrored so the
    /// two entries share one closure.
    pub fn from_upper(dim: usize, mut entry: impl FnMut(usize, usize) -> ScalarField) -> Self {
        let mut components = vec![vec![ScalarField::zero(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let e = entry(i, j);
                components[i][j] = e.clone();
                components[j][i] = e;
            }
        }
        MetricTensor { components }
    }

    pub fn euclidean(dim: usize) -> Self {
        MetricTensor::from_upper(dim, |i, j| {
            ScalarField::Const(if i == j { 1.0 } else { 0.0 })
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, p: &[f64]) -> Vec<Vec<f64>> {
        self.components
            .iter()
            .map(|row| row.iter().map(|c| c.eval(p)).collect())
            .collect()
    }

    /// Lowers an index: `X -> g(X, .)`.
    pub fn flat(&self, x: &VectorField) -> OneForm {
        let n = self.dim();
        OneForm::new(
            (0..n)
                .map(|j| sum_fields((0..n).map(|i| &self.components[i][j] * &x.components[i])))
                .collect(),
        )
    }

    /// All Cholesky pivots positive at `p`.
    pub fn is_positive_definite(&self, p: &[f64]) -> bool {
        let m = self.at(p);
        let n = m.len();
        nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j])
            .cholesky()
            .is_some()
    }
}

/// `[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(VectorField::new(
        (0..x.dim())
            .map(|k| &x.apply(&y.components[k]) - &y.apply(&x.components[k]))
            .collect(),
    ))
}

pub fn metric_pair(g: &MetricTensor, x: &VectorField, y: &VectorField) -> ScalarField {
    let n = g.dim();
    let mut terms = Vec::new();
    for i in 0..n {
        if x.components[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y.components[j].is_zero() || g.components[i][j].is_zero() {
                continue;
            }
            terms.push(&(&g.components[i][j] * &x.components[i]) * &y.components[j]);
        }
    }
    sum_fields(terms)
}

/// Normalization of the wedge product and exterior derivative of 1-forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WedgeConvention {
    /// `(a^b)(X,Y) = a(X)b(Y) - a(Y)b(X)`, `da(X,Y) = X a(Y) - Y a(X) - a([X,Y])`.
    Plain,
    /// Both of the above multiplied by 1/2.
    Half,
}

impl WedgeConvention {
    pub fn factor(self) -> f64 {
        match self {
            WedgeConvention::Plain => 1.0,
            WedgeConvention::Half => 0.5,
        }
    }
}

pub fn wedge_1forms(
    alpha: &OneForm,
    beta: &OneForm,
    convention: WedgeConvention,
) -> impl Fn(&VectorField, &VectorField) -> ScalarField {
    let (a, b) = (alpha.clone(), beta.clone());
    move |x, y| {
        let t = &(&a.pair(x) * &b.pair(y)) - &(&a.pair(y) * &b.pair(x));
        t * convention.factor()
    }
}

pub fn exterior_d_1form(
    alpha: &OneForm,
    convention: WedgeConvention,
) -> impl Fn(&VectorField, &VectorField) -> ScalarField {
    let a = alpha.clone();
    move |x, y| {
        let bracket = lie_bracket(x, y).expect("vector fields share the chart");
        let t = &(&x.apply(&a.pair(y)) - &y.apply(&a.pair(x))) - &a.pair(&bracket);
        t * convention.factor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(n: usize) -> Vec<ScalarField> {
        (0..n).map(ScalarField::coord).collect()
    }

    #[test]
    fn product_field_jet() {
        let x = xs(6);
        let f = &x[0] * &x[1];
        let chart = Chart::new(&["x1", "y1", "x2", "y2", "x3", "y3"]);
        let j = f
            .eval_jet2(&chart, &Point::new(vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0]))
            .unwrap();
        assert_eq!(j.value, 2.0);
        assert_eq!(j.gradient[0], 2.0);
        assert_eq!(j.gradient[1], 1.0);
        assert_eq!(j.hessian[0][1], 1.0);
        assert_eq!(j.hessian[1][0], 1.0);
    }

    #[test]
    fn constant_field_has_no_derivatives() {
        let chart = Chart::new(&["a", "b", "c"]);
        let j = ScalarField::constant(5.0)
            .eval_jet2(&chart, &Point::new(vec![0.3, -0.1, 0.9]))
            .unwrap();
        assert_eq!(j.value, 5.0);
        assert!(j.gradient.iter().all(|&g| g == 0.0));
        assert!(j.hessian.iter().flatten().all(|&h| h == 0.0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let chart = Chart::new(&["a", "b"]);
        let err = ScalarField::coord(0)
            .eval_jet2(&chart, &Point::new(vec![0.0; 3]))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 3
            }
        ));
    }

    #[test]
    fn coordinate_fields_commute() {
        let a = VectorField::coordinate(6, 0);
        let b = VectorField::coordinate(6, 1);
        let br = lie_bracket(&a, &b).unwrap();
        assert!(br.at(&[0.2; 6]).iter().all(|&c| c == 0.0));
    }

    #[test]
    fn bracket_of_polynomial_fields() {
        let x = xs(2);
        // X = x1 d/dx0, Y = d/dx1  ->  [X, Y] = -d/dx0
        let xf = VectorField::new(vec![x[1].clone(), ScalarField::zero()]);
        let yf = VectorField::coordinate(2, 1);
        let br = lie_bracket(&xf, &yf).unwrap();
        assert_eq!(br.at(&[0.7, -0.3]), vec![-1.0, 0.0]);
    }

    #[test]
    fn exterior_derivative_of_coordinate_form_vanishes() {
        let x = xs(3);
        let d = exterior_d_1form(&OneForm::coordinate(3, 0), WedgeConvention::Plain);
        let xf = VectorField::new(vec![x[1].clone(), x[2].clone(), x[0].clone()]);
        let yf = VectorField::new(vec![&x[0] * &x[0], ScalarField::one(), x[1].clone()]);
        assert!(d(&xf, &yf).eval(&[0.4, -0.7, 0.2]).abs() < 1e-15);
    }

    #[test]
    fn exterior_derivative_matches_component_formula() {
        // alpha = x0 dx1 has d alpha = dx0 ^ dx1
        let x = xs(2);
        let alpha = OneForm::new(vec![ScalarField::zero(), x[0].clone()]);
        let d = exterior_d_1form(&alpha, WedgeConvention::Plain);
        let e0 = VectorField::coordinate(2, 0);
        let e1 = VectorField::coordinate(2, 1);
        assert_eq!(d(&e0, &e1).eval(&[0.5, 0.5]), 1.0);
        let dh = exterior_d_1form(&alpha, WedgeConvention::Half);
        assert_eq!(dh(&e0, &e1).eval(&[0.5, 0.5]), 0.5);
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let x = xs(3);
        let a = OneForm::new(vec![x[1].clone(), ScalarField::one(), x[2].clone()]);
        let w = wedge_1forms(&a, &a, WedgeConvention::Plain);
        let xf = VectorField::constant(&[0.3, 1.0, -2.0]);
        let yf = VectorField::constant(&[1.5, -0.5, 0.25]);
        assert_eq!(w(&xf, &yf).eval(&[0.1, 0.2, 0.3]), 0.0);
    }

    #[test]
    fn metric_pair_identity() {
        let g = MetricTensor::euclidean(6);
        let e = VectorField::coordinate(6, 0);
        assert_eq!(metric_pair(&g, &e, &e).eval(&[0.9; 6]), 1.0);
    }

    #[test]
    fn partial_of_composite_field() {
        let x = xs(2);
        let f = (&x[0] * &x[0]) * &x[1];
        let dfx = f.partial(0);
        let l = Layout::get(2, 1);
        let j = dfx.jet(&[2.0, 3.0], &l);
        assert_eq!(j.value(), 12.0);
        assert_eq!(j.derivative(0), 6.0);
        assert_eq!(j.derivative(1), 4.0);
    }
}
