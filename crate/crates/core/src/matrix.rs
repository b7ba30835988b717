use std::fmt;

use crate::exactalg::{expr_equal, DiffExpr};

/// Dense square matrix of expressions, row-major, zero-based.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprMatrix {
    dim: usize,
    data: Vec<DiffExpr>,
}

impl ExprMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExprMatrix { dim, data: vec![DiffExpr::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ExprMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, DiffExpr::one());
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> DiffExpr) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        ExprMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &DiffExpr {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: DiffExpr) {
        self.data[i * self.dim + j] = v;
    }

    pub fn transpose(&self) -> Self {
        ExprMatrix::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &ExprMatrix) -> Self {
        ExprMatrix::from_fn(self.dim, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &ExprMatrix) -> Self {
        ExprMatrix::from_fn(self.dim, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn mul(&self, o: &ExprMatrix) -> Self {
        ExprMatrix::from_fn(self.dim, |i, j| {
            let mut acc = DiffExpr::zero();
            for k in 0..self.dim {
                let (a, b) = (self.get(i, k), o.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn map(&self, f: impl Fn(&DiffExpr) -> DiffExpr) -> Self {
        ExprMatrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&DiffExpr) -> Result<DiffExpr, E>) -> Result<Self, E> {
        Ok(ExprMatrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    /// First entry (row-major) that is not semantically zero.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.dim * self.dim)
            .find(|&k| !self.data[k].is_zero())
            .map(|k| (k / self.dim, k % self.dim))
    }

    /// Determinant by fraction-based elimination.
    pub fn det(&self) -> DiffExpr {
        let n = self.dim;
        let mut m: Vec<Vec<DiffExpr>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = DiffExpr::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return DiffExpr::zero();
            };
            if p != c {
                m.swap(p, c);
                det = det.neg();
            }
            let piv = m[c][c].clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].mul(&inv);
                for k in c..n {
                    let t = m[r][k].sub(&f.mul(&m[c][k]));
                    m[r][k] = t;
                }
            }
        }
        det
    }

    pub fn equals(&self, o: &ExprMatrix) -> bool {
        self.dim == o.dim && self.data.iter().zip(&o.data).all(|(a, b)| expr_equal(a, b))
    }
}

impl fmt::Display for ExprMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                writeln!(f, "[{},{}] {}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_expr;

    #[test]
    fn product_and_transpose() {
        let a = ExprMatrix::from_fn(2, |i, j| parse_expr(&format!("t{}", 2 * i + j + 1)).unwrap());
        let at = a.transpose();
        let p = a.mul(&at);
        assert!(expr_equal(p.get(0, 1), p.get(1, 0)));
        assert!(expr_equal(p.get(0, 0), &parse_expr("t1^2 + t2^2").unwrap()));
        assert!(a.mul(&ExprMatrix::identity(2)).equals(&a));
        assert!(expr_equal(&a.det(), &parse_expr("t1*t4 - t2*t3").unwrap()));
    }
}
