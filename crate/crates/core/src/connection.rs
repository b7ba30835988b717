//! Gauss-Manin data of a Picard-Fuchs operator: the companion matrix, the
//! constant pairing `Phi`, and the intersection matrix `Omega`.

use num_traits::Zero;
use serde::Serialize;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exactalg::rational::q;
use crate::exactalg::{DiffExpr, RatFunc, Symbol, Theta, UPoly, Q};
use crate::matrix::ExprMatrix;

/// `A` with `theta Pi = A Pi` for `Pi = (w, theta w, ..., theta^n w)`.
pub fn companion_matrix(l: &DiffOp) -> ExprMatrix {
    let n = l.n();
    let mut m = ExprMatrix::zeros(n + 1);
    for i in 0..n {
        m.set(i, i + 1, DiffExpr::one());
    }
    for j in 0..=n {
        m.set(n, j, l.a(j).clone());
    }
    m
}

/// Constant pairing on the transcendental basis.
///
/// Odd `n`: `[[0, J], [-J, 0]]` with `J` the anti-identity of size `(n+1)/2`.
/// Even `n`: the anti-identity of size `n + 1`.
pub fn phi_matrix(n: usize) -> ExprMatrix {
    let k = n.div_ceil(2);
    ExprMatrix::from_fn(n + 1, |i, j| {
        if i + j != n {
            DiffExpr::zero()
        } else if n % 2 == 1 && i >= k {
            DiffExpr::int(-1)
        } else {
            DiffExpr::one()
        }
    })
}

/// The derivation for a concrete or symbolic operator, with
/// `theta(atilde) = 2/(n+1) a_n atilde`.
pub fn theta_for(l: &DiffOp) -> Theta {
    let n = l.n();
    Theta::with_rate(l.a(n).scale(&q(2, n as i64 + 1)))
}

/// Result of trying to integrate `theta(atilde) = 2/(n+1) a_n atilde` in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum AtildeForm {
    Closed(RatFunc),
    /// Non-rational: downstream keeps `atilde` as a symbol with its derivation rule.
    Symbolic(String),
}

/// `c0 * exp(2/(n+1) * int_0^z a_n(v) dv / v)` when it is a rational function.
pub fn atilde_closed_form(a_n: &RatFunc, n: usize, c0: &Q) -> AtildeForm {
    if a_n.is_zero() {
        return AtildeForm::Closed(RatFunc::constant(c0.clone()));
    }
    if a_n.at_zero().is_none_or(|v| !v.is_zero()) {
        return AtildeForm::Symbolic("a_n does not vanish at z = 0".into());
    }
    // g = 2/(n+1) * a_n / z
    let g = RatFunc::new(
        a_n.num().scale(&q(2, n as i64 + 1)),
        a_n.den().mul(&UPoly::x()),
    );
    if !g.is_proper() {
        return AtildeForm::Symbolic("integrand has a polynomial part".into());
    }
    let (p, qd) = (g.num().clone(), g.den().clone());
    if !qd.is_squarefree() {
        return AtildeForm::Symbolic("integrand has a repeated pole".into());
    }
    let dq = qd.derivative();
    let total = qd.degree().unwrap_or(0);
    let mut found = 0;
    let mut acc = RatFunc::constant(c0.clone());
    for m in -64i64..=64 {
        if m == 0 {
            continue;
        }
        let f = qd.gcd(&p.sub(&dq.scale(&Q::from_integer(m.into()))));
        let d = f.degree().unwrap_or(0);
        if d == 0 {
            continue;
        }
        found += d;
        let f0 = f.coeff(0);
        let normalized = RatFunc::new(f.clone(), UPoly::constant(f0));
        let power = if m > 0 {
            RatFunc::from_poly(normalized.num().pow(m as u32))
        } else {
            RatFunc::new(UPoly::one(), normalized.num().pow((-m) as u32))
        };
        acc = acc.mul(&power);
    }
    if found == total {
        AtildeForm::Closed(acc)
    } else {
        AtildeForm::Symbolic("residues are not integers".into())
    }
}

/// Intersection matrix, stored as cofactors of `atilde`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionMatrix {
    n: usize,
    cof: ExprMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fill {
    Full,
    Mirror,
}

fn sign_sym(n: usize) -> i64 {
    if n % 2 == 1 {
        -1
    } else {
        1
    }
}

fn build(l: &DiffOp, fill: Fill) -> Result<IntersectionMatrix> {
    let n = l.n();
    let dim = n + 1;
    let th = theta_for(l);
    let rate = th.rate().expect("rate set").clone();
    let dtheta = |c: &DiffExpr| -> Result<DiffExpr> { Ok(th.derive(c)?.add(&rate.mul(c))) };
    let mut cof = ExprMatrix::zeros(dim);
    cof.set(0, dim - 1, DiffExpr::one());
    let eps = sign_sym(n);
    for i in 0..n {
        // Row i + 1 from row i. Column `dim` stands for theta^{n+1} w.
        let get = |cof: &ExprMatrix, r: usize, c: usize| -> DiffExpr {
            if c < dim {
                return cof.get(r, c).clone();
            }
            let mut acc = DiffExpr::zero();
            for k in 0..dim {
                let e = cof.get(r, k);
                if !e.is_zero() && !l.a(k).is_zero() {
                    acc = acc.add(&l.a(k).mul(e));
                }
            }
            acc
        };
        let start = match fill {
            Fill::Full => 0,
            Fill::Mirror => {
                if n % 2 == 1 {
                    i + 2
                } else {
                    i + 1
                }
            }
        };
        for j in start..dim {
            let v = dtheta(cof.get(i, j))?.sub(&get(&cof, i, j + 1));
            cof.set(i + 1, j, v);
        }
        if fill == Fill::Mirror {
            for j in 0..start.min(dim) {
                let v = cof.get(j, i + 1).scale(&Q::from_integer(eps.into()));
                cof.set(i + 1, j, v);
            }
        }
    }
    Ok(IntersectionMatrix { n, cof })
}

/// Intersection matrix by the full row recurrence, with the parity
/// symmetry verified on every cell.
pub fn intersection_matrix(l: &DiffOp) -> Result<IntersectionMatrix> {
    let m = build(l, Fill::Full)?;
    let eps = Q::from_integer(sign_sym(m.n).into());
    for i in 0..=m.n {
        for j in i..=m.n {
            let d = m.cof.get(j, i).sub(&m.cof.get(i, j).scale(&eps));
            if !d.is_zero() {
                let kind = if m.n % 2 == 1 { "antisymmetry" } else { "symmetry" };
                return Err(Error::InconsistentIntersection {
                    row: j + 1,
                    col: i + 1,
                    detail: format!("{kind} violated, defect {d}"),
                });
            }
        }
    }
    Ok(m)
}

/// Upper triangle by the recurrence, lower triangle by the parity symmetry,
/// and a zero diagonal for odd `n`. No consistency check.
pub fn intersection_matrix_mirrored(l: &DiffOp) -> Result<IntersectionMatrix> {
    build(l, Fill::Mirror)
}

impl IntersectionMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)` (zero-based) divided by `atilde`.
    pub fn cofactor(&self, i: usize, j: usize) -> &DiffExpr {
        self.cof.get(i, j)
    }

    pub fn cofactors(&self) -> &ExprMatrix {
        &self.cof
    }

    /// Entry `(i, j)` (zero-based) with `atilde` explicit.
    pub fn entry(&self, i: usize, j: usize) -> DiffExpr {
        self.cof.get(i, j).mul(&DiffExpr::sym(Symbol::ATilde))
    }

    pub fn to_matrix(&self) -> ExprMatrix {
        let at = DiffExpr::sym(Symbol::ATilde);
        self.cof.map(|c| c.mul(&at))
    }

    /// `theta Omega - A Omega - Omega A^T`, divided by `atilde`.
    pub fn transport_defect(&self, l: &DiffOp) -> Result<ExprMatrix> {
        let th = theta_for(l);
        let rate = th.rate().expect("rate set").clone();
        let a = companion_matrix(l);
        let d = self.cof.try_map(|c| -> Result<DiffExpr> { Ok(th.derive(c)?.add(&rate.mul(c))) })?;
        Ok(d.sub(&a.mul(&self.cof)).sub(&self.cof.mul(&a.transpose())))
    }

    /// Row-major expression texts with `atilde` explicit.
    pub fn golden_lines(&self) -> Vec<String> {
        let dim = self.n + 1;
        let mut out = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                out.push(self.entry(i, j).to_string());
            }
        }
        out
    }
}

#[derive(Serialize)]
struct MatrixDoc {
    n: usize,
    entries: Vec<String>,
}

impl Serialize for IntersectionMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc { n: self.n, entries: self.golden_lines() }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::generic_self_dual;
    use num_traits::One;
    use crate::exactalg::{expr_equal, parse_expr, parse_ratfunc};

    fn p(s: &str) -> DiffExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn phi_shapes() {
        let f1 = phi_matrix(1);
        assert!(f1.equals(&ExprMatrix::from_fn(2, |i, j| DiffExpr::int([[0, 1], [-1, 0]][i][j]))));
        let f3 = phi_matrix(3);
        let rows = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]];
        assert!(f3.equals(&ExprMatrix::from_fn(4, |i, j| DiffExpr::int(rows[i][j]))));
        let f2 = phi_matrix(2);
        assert!(f2.equals(&ExprMatrix::from_fn(3, |i, j| DiffExpr::int((i + j == 2) as i64))));
        for n in 1..=6 {
            let f = phi_matrix(n);
            let sq = f.mul(&f);
            let s = if n % 2 == 1 { -1 } else { 1 };
            assert!(sq.equals(&ExprMatrix::identity(n + 1).map(|e| e.scale(&Q::from_integer(s.into())))));
        }
    }

    #[test]
    fn companion_shape() {
        let a = companion_matrix(&DiffOp::generic(3));
        assert!(a.get(1, 2).is_one());
        assert!(expr_equal(a.get(3, 2), &p("a2")));
        assert!(a.get(2, 1).is_zero());
    }

    #[test]
    fn atilde_examples() {
        let zero = RatFunc::zero();
        assert_eq!(atilde_closed_form(&zero, 3, &Q::one()), AtildeForm::Closed(RatFunc::constant(Q::one())));
        let a3 = parse_ratfunc("2*3125*z/(1 - 3125*z)").unwrap();
        let expected = parse_ratfunc("1/(1 - 3125*z)").unwrap();
        assert_eq!(atilde_closed_form(&a3, 3, &Q::one()), AtildeForm::Closed(expected.clone()));
        let a5 = parse_ratfunc("3*3125*z/(1 - 3125*z)").unwrap();
        assert_eq!(atilde_closed_form(&a5, 5, &Q::one()), AtildeForm::Closed(expected));
        let half = parse_ratfunc("z/(1 - z)").unwrap();
        assert!(matches!(atilde_closed_form(&half, 3, &Q::one()), AtildeForm::Symbolic(_)));
    }

    #[test]
    fn n3_entries() {
        let l = generic_self_dual(3).unwrap();
        let om = intersection_matrix(&l).unwrap();
        assert!(expr_equal(&om.entry(1, 3), &p("-atilde*a3/2")));
        assert!(expr_equal(&om.entry(2, 3), &p("atilde*a3^2/4 + atilde*a2 - atilde*d1a3/2")));
        for i in 0..4 {
            let s = if i % 2 == 0 { 1 } else { -1 };
            assert!(expr_equal(&om.entry(i, 3 - i), &p(&format!("{s}*atilde"))));
        }
    }

    #[test]
    fn generic_non_self_dual_is_rejected() {
        let err = intersection_matrix(&DiffOp::generic(3)).unwrap_err();
        assert!(matches!(err, Error::InconsistentIntersection { .. }));
    }

    #[test]
    fn transport_and_symmetry_for_small_orders() {
        for n in 1..=4 {
            let l = generic_self_dual(n).unwrap();
            let om = intersection_matrix(&l).unwrap();
            assert!(om.transport_defect(&l).unwrap().first_nonzero().is_none(), "n = {n}");
            let mirrored = intersection_matrix_mirrored(&l).unwrap();
            assert!(mirrored.cofactors().equals(om.cofactors()), "n = {n}");
            assert!(!om.to_matrix().det().is_zero());
        }
    }
}
