//! Small dense helpers shared by the point-level evaluators.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub const PIVOT_TOL: f64 = 1e-10;

pub fn vector(values: &[f64]) -> Vector {
    DVector::from_column_slice(values)
}

pub fn matrix(rows: &[Vec<f64>]) -> Matrix {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn max_abs(v: &Vector) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_abs_matrix(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// `g(x, y)` for a symmetric metric matrix, summed over `i <= j` so that
/// swapping `x` and `y` gives the same bits.
pub fn pair(g: &Matrix, x: &Vector, y: &Vector) -> f64 {
    let n = x.len();
    let mut s = 0.0;
    for i in 0..n {
        s += g[(i, i)] * (x[i] * y[i]);
        for j in i + 1..n {
            let gij = g[(i, j)];
            if gij != 0.0 {
                s += gij * (x[i] * y[j] + x[j] * y[i]);
            }
        }
    }
    s
}

/// Gram-Schmidt in the `g` inner product. Inputs are processed in order and
/// the process fails if any residual norm squared drops below the pivot
/// tolerance.
pub fn gram_schmidt(g: &Matrix, seeds: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::with_capacity(seeds.len());
    for s in seeds {
        let mut w = s.clone();
        for e in &out {
            let c = pair(g, &w, e);
            w -= e * c;
        }
        let n2 = pair(g, &w, &w);
        if !(n2 > PIVOT_TOL) {
            return Err(Error::DegenerateMetric { pivot: n2 });
        }
        out.push(w / n2.sqrt());
    }
    Ok(out)
}

pub fn coordinate_basis(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut e = DVector::zeros(n);
            e[i] = 1.0;
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_orthonormalizes() {
        let g = matrix(&[
            vec![2.0, 0.5, 0.0],
            vec![0.5, 1.0, 0.1],
            vec![0.0, 0.1, 3.0],
        ]);
        let f = gram_schmidt(&g, &coordinate_basis(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((pair(&g, &f[a], &f[b]) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gram_schmidt_rejects_dependent_seeds() {
        let g = Matrix::identity(2, 2);
        let seeds = [vector(&[1.0, 1.0]), vector(&[2.0, 2.0])];
        assert!(gram_schmidt(&g, &seeds).is_err());
    }
}
