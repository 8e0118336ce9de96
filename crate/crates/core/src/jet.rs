//! Truncated multivariate Taylor jets.
//!
//! A [`Jet`] of order `k` over `n` variables carries every Taylor coefficient
//! of total degree `<= k` of a smooth function around a base point. Arithmetic
//! on jets is exact up to rounding: the product of two order-`k` jets is the
//! order-`k` truncation of the product series, so evaluating a field on the
//! identity jet of a point yields its value, gradient and Hessian without any
//! step-size parameter.
//!
//! Order 1 jets are ordinary multivariate dual numbers; order 2 jets are what
//! nesting two layers of duals produces after identifying the symmetric mixed
//! terms, stored once.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Monomial bookkeeping shared by all jets of one `(dim, order)`.
pub struct Layout {
    dim: usize,
    order: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    // (lhs, rhs, out) triples whose degrees sum to <= order
    products: Vec<(u32, u32, u32)>,
    raised: OnceLock<Arc<Layout>>,
}

impl fmt::Debug for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Layout")
            .field("dim", &self.dim)
            .field("order", &self.order)
            .field("len", &self.monomials.len())
            .finish()
    }
}

type LayoutCache = Mutex<HashMap<(usize, usize), Arc<Layout>>>;

fn layout_cache() -> &'static LayoutCache {
    static CACHE: OnceLock<LayoutCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Layout {
    /// Shared layout for `dim` variables truncated at total degree `order`.
    pub fn get(dim: usize, order: usize) -> Arc<Layout> {
        let mut cache = layout_cache().lock().expect("layout cache poisoned");
        cache
            .entry((dim, order))
            .or_insert_with(|| Arc::new(Layout::build(dim, order)))
            .clone()
    }

    fn build(dim: usize, order: usize) -> Layout {
        // Graded ordering: all degree-d monomials precede degree d+1, and the
        // order inside one degree does not depend on `order`. Lower-order
        // layouts are therefore prefixes of higher-order ones.
        let mut monomials = vec![vec![0u8; dim]];
        let mut degree = vec![0usize];
        let mut frontier = vec![vec![0u8; dim]];
        for d in 1..=order {
            let mut next = Vec::new();
            for m in &frontier {
                let last = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for var in last..dim {
                    let mut m2 = m.clone();
                    m2[var] += 1;
                    next.push(m2);
                }
            }
            for m in &next {
                monomials.push(m.clone());
                degree.push(d);
            }
            frontier = next;
        }
        let index: HashMap<Vec<u8>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut products = Vec::new();
        for (a, ma) in monomials.iter().enumerate() {
            for (b, mb) in monomials.iter().enumerate() {
                if degree[a] + degree[b] > order {
                    continue;
                }
                let sum: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                products.push((a as u32, b as u32, index[&sum] as u32));
            }
        }
        Layout {
            dim,
            order,
            monomials,
            index,
            products,
            raised: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Layout one order higher, used when a derivative has to be taken.
    pub fn raised(&self) -> Arc<Layout> {
        self.raised
            .get_or_init(|| Layout::get(self.dim, self.order + 1))
            .clone()
    }

    fn unit_index(&self, var: usize) -> Option<usize> {
        if self.order == 0 {
            return None;
        }
        let mut m = vec![0u8; self.dim];
        m[var] = 1;
        self.index.get(&m).copied()
    }

    fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        if self.order < 2 {
            return None;
        }
        let mut m = vec![0u8; self.dim];
        m[i] += 1;
        m[j] += 1;
        self.index.get(&m).copied()
    }
}

/// Truncated Taylor expansion of a scalar function around a base point.
#[derive(Clone)]
pub struct Jet {
    layout: Arc<Layout>,
    coeffs: Vec<f64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("dim", &self.layout.dim)
            .field("order", &self.layout.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl Jet {
    pub fn constant(layout: &Arc<Layout>, value: f64) -> Jet {
        let mut coeffs = vec![0.0; layout.len()];
        coeffs[0] = value;
        Jet {
            layout: layout.clone(),
            coeffs,
        }
    }

    /// The coordinate function `x_var` expanded around `base`.
    pub fn variable(layout: &Arc<Layout>, var: usize, base: f64) -> Jet {
        let mut jet = Jet::constant(layout, base);
        if let Some(k) = layout.unit_index(var) {
            jet.coeffs[k] = 1.0;
        }
        jet
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// First partial derivative at the base point; zero for order-0 jets.
    pub fn derivative(&self, var: usize) -> f64 {
        self.layout.unit_index(var).map_or(0.0, |k| self.coeffs[k])
    }

    /// Second partial derivative at the base point; zero below order 2.
    pub fn second_derivative(&self, i: usize, j: usize) -> f64 {
        match self.layout.pair_index(i, j) {
            Some(k) if i == j => 2.0 * self.coeffs[k],
            Some(k) => self.coeffs[k],
            None => 0.0,
        }
    }

    pub fn gradient(&self) -> Vec<f64> {
        (0..self.layout.dim).map(|i| self.derivative(i)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<f64>> {
        let n = self.layout.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.second_derivative(i, j)).collect())
            .collect()
    }

    /// Jet of `d/dx_var` of the underlying function, one order lower.
    ///
    /// # Panics
    /// Panics on an order-0 jet, which carries no derivative information.
    pub fn partial(&self, var: usize) -> Jet {
        let src = &self.layout;
        assert!(src.order > 0, "cannot differentiate an order-0 jet");
        let dst = Layout::get(src.dim, src.order - 1);
        let mut coeffs = vec![0.0; dst.len()];
        let mut raised = vec![0u8; src.dim];
        for (k, m) in dst.monomials.iter().enumerate() {
            raised.copy_from_slice(m);
            raised[var] += 1;
            let from = src.index[&raised];
            coeffs[k] = self.coeffs[from] * f64::from(raised[var]);
        }
        Jet {
            layout: dst,
            coeffs,
        }
    }

    /// Drops every coefficient above `layout.order()`.
    pub fn truncate(&self, layout: &Arc<Layout>) -> Jet {
        assert!(layout.dim == self.layout.dim && layout.order <= self.layout.order);
        Jet {
            layout: layout.clone(),
            coeffs: self.coeffs[..layout.len()].to_vec(),
        }
    }

    fn check_same(&self, other: &Jet) {
        debug_assert!(
            Arc::ptr_eq(&self.layout, &other.layout)
                || (self.layout.dim == other.layout.dim && self.layout.order == other.layout.order),
            "jet layouts differ"
        );
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    /// `f(self)` for a univariate `f`, given `f(a), f'(a), ..., f^(k)(a)` at
    /// the base value `a`.
    pub fn compose(&self, derivs: &[f64]) -> Jet {
        let order = self.layout.order;
        assert!(derivs.len() > order);
        let mut nil = self.clone();
        nil.coeffs[0] = 0.0;
        let mut out = Jet::constant(&self.layout, derivs[0]);
        let mut power = Jet::constant(&self.layout, 1.0);
        let mut factorial = 1.0;
        for (k, d) in derivs.iter().enumerate().take(order + 1).skip(1) {
            power = &power * &nil;
            factorial *= k as f64;
            if *d != 0.0 {
                for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                    *o += p * d / factorial;
                }
            }
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let a = self.value();
        let mut derivs = Vec::with_capacity(self.layout.order + 1);
        // d^k/da^k (1/a) = (-1)^k k! / a^(k+1)
        let mut fact = 1.0;
        for k in 0..=self.layout.order {
            if k > 0 {
                fact *= k as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            derivs.push(sign * fact / a.powi(k as i32 + 1));
        }
        self.compose(&derivs)
    }

    pub fn sqrt(&self) -> Jet {
        let a = self.value();
        let mut derivs = Vec::with_capacity(self.layout.order + 1);
        // falling powers of 1/2
        let mut coef = 1.0;
        let mut expo = 0.5;
        for k in 0..=self.layout.order {
            derivs.push(coef * a.powf(0.5 - k as f64));
            coef *= expo;
            expo -= 1.0;
        }
        self.compose(&derivs)
    }

    pub fn powi(&self, n: i32) -> Jet {
        if n == 0 {
            return Jet::constant(&self.layout, 1.0);
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = &out * self;
        }
        out
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.check_same(rhs);
        Jet {
            layout: self.layout.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.check_same(rhs);
        Jet {
            layout: self.layout.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.check_same(rhs);
        let mut coeffs = vec![0.0; self.coeffs.len()];
        for &(a, b, o) in &self.layout.products {
            coeffs[o as usize] += self.coeffs[a as usize] * rhs.coeffs[b as usize];
        }
        Jet {
            layout: self.layout.clone(),
            coeffs,
        }
    }
}

impl<'a> Div<&'a Jet> for &'a Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Value, gradient and Hessian of a scalar field at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2Scalar {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<Vec<f64>>,
}

impl From<&Jet> for Jet2Scalar {
    fn from(jet: &Jet) -> Self {
        Jet2Scalar {
            value: jet.value(),
            gradient: jet.gradient(),
            hessian: jet.hessian(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(dim: usize, order: usize, at: &[f64]) -> Vec<Jet> {
        let layout = Layout::get(dim, order);
        (0..dim).map(|i| Jet::variable(&layout, i, at[i])).collect()
    }

    #[test]
    fn layout_sizes_are_binomial() {
        // C(n + k, k)
        assert_eq!(Layout::get(6, 0).len(), 1);
        assert_eq!(Layout::get(6, 1).len(), 7);
        assert_eq!(Layout::get(6, 2).len(), 28);
        assert_eq!(Layout::get(6, 3).len(), 84);
        assert_eq!(Layout::get(2, 4).len(), 15);
    }

    #[test]
    fn lower_orders_are_prefixes() {
        let lo = Layout::get(4, 2);
        let hi = Layout::get(4, 3);
        assert_eq!(&hi.monomials[..lo.len()], &lo.monomials[..]);
    }

    #[test]
    fn product_rule_on_polynomial() {
        let x = vars(3, 2, &[1.0, 2.0, -1.0]);
        // f = x0^2 x1 + x2
        let f = &(&(&x[0] * &x[0]) * &x[1]) + &x[2];
        assert_eq!(f.value(), 1.0);
        assert_eq!(f.gradient(), vec![4.0, 1.0, 1.0]);
        let h = f.hessian();
        assert_eq!(h[0][0], 4.0);
        assert_eq!(h[0][1], 2.0);
        assert_eq!(h[1][0], 2.0);
        assert_eq!(h[1][1], 0.0);
        assert_eq!(h[2][2], 0.0);
    }

    #[test]
    fn reciprocal_and_sqrt_derivatives() {
        let x = vars(1, 3, &[2.0]);
        let r = x[0].recip();
        assert!((r.value() - 0.5).abs() < 1e-15);
        assert!((r.derivative(0) + 0.25).abs() < 1e-15);
        assert!((r.second_derivative(0, 0) - 0.25).abs() < 1e-15);
        let s = x[0].sqrt();
        assert!((s.value() - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.derivative(0) - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        assert!((s.second_derivative(0, 0) + 0.25 * 2f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn partial_lowers_order() {
        let x = vars(2, 3, &[0.5, -1.5]);
        // f = x0^3 x1 ; d/dx0 = 3 x0^2 x1 ; d2/dx0dx1 of that = 6 x0
        let f = &(&(&x[0] * &x[0]) * &x[0]) * &x[1];
        let df = f.partial(0);
        assert_eq!(df.order(), 2);
        assert!((df.value() - 3.0 * 0.25 * -1.5).abs() < 1e-14);
        assert!((df.second_derivative(0, 1) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn division_matches_quotient_rule() {
        let x = vars(2, 2, &[1.5, 0.5]);
        let q = &x[0] / &x[1].add_scalar(1.0);
        // d/dx1 (x0 / (x1 + 1)) = -x0 / (x1+1)^2
        assert!((q.derivative(1) + 1.5 / 2.25).abs() < 1e-14);
        // d2/dx1^2 = 2 x0 / (x1+1)^3
        assert!((q.second_derivative(1, 1) - 3.0 / 3.375).abs() < 1e-14);
    }
}
