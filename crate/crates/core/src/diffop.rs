//! Linear differential operators in the logarithmic derivation `theta = z d/dz`.
//!
//! Two coefficient conventions meet here. [`Operator`] is the plain
//! `sum c_i d^i` form used for composition and duals. [`DiffOp`] stores
//! Picard-Fuchs coefficients `a_i` with `theta^{n+1} w = sum a_i theta^i w`,
//! so its monic operator form has coefficients `-a_i` below the leading one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::rational::{binom, q};
use crate::exactalg::{jet_derive, DiffExpr, RatFunc, Symbol};

/// `sum_i coeffs[i] * d^i` with `d` acting as theta.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    pub coeffs: Vec<DiffExpr>,
}

impl Operator {
    pub fn new(coeffs: Vec<DiffExpr>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Operator { coeffs }
    }

    /// Multiplication operator by `f`.
    pub fn scalar(f: DiffExpr) -> Self {
        Operator::new(vec![f])
    }

    /// `d^k`.
    pub fn d_pow(k: usize) -> Self {
        let mut c = vec![DiffExpr::zero(); k + 1];
        c[k] = DiffExpr::one();
        Operator { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> DiffExpr {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn equals(&self, o: &Operator) -> bool {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n).all(|i| crate::exactalg::expr_equal(&self.coeff(i), &o.coeff(i)))
    }
}

fn theta_jets(c: &DiffExpr, upto: usize) -> Result<Vec<DiffExpr>> {
    let mut out = vec![c.clone()];
    for m in 1..=upto {
        let next = jet_derive(&out[m - 1])?;
        out.push(next);
    }
    Ok(out)
}

/// Noncommutative product using `d f = theta(f) + f d`.
pub fn op_compose(l1: &Operator, l2: &Operator) -> Result<Operator> {
    let mut out = vec![DiffExpr::zero(); l1.order() + l2.order() + 1];
    for (j, d) in l2.coeffs.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let jets = theta_jets(d, l1.order())?;
        for (i, c) in l1.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, jet) in jets.iter().enumerate().take(i + 1) {
                if jet.is_zero() {
                    continue;
                }
                let term = c.mul(jet).scale(&binom(i, k));
                let idx = i - k + j;
                out[idx] = out[idx].add(&term);
            }
        }
    }
    Ok(Operator::new(out))
}

/// Dual operator: coefficient of `d^i` is `sum_{j>=i} (-1)^{N-j} C(j,i) theta^{j-i} c_j`
/// for an operator of order `N`. Monic operators stay monic.
pub fn op_dual(l: &Operator) -> Result<Operator> {
    let big_n = l.order();
    let mut out = vec![DiffExpr::zero(); big_n + 1];
    for (j, c) in l.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let jets = theta_jets(c, j)?;
        let sign = if (big_n - j).is_multiple_of(2) { 1 } else { -1 };
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            let t = jets[j - i].scale(&(binom(j, i) * q(sign, 1)));
            *slot = slot.add(&t);
        }
    }
    Ok(Operator::new(out))
}

/// Monic operator of order `n + 1` in Picard-Fuchs storage.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    a: Vec<DiffExpr>,
}

impl DiffOp {
    /// Coefficients `a_0..a_n`.
    pub fn new(a: Vec<DiffExpr>) -> Self {
        assert!(!a.is_empty(), "operator of order zero");
        DiffOp { a }
    }

    /// Operator whose coefficients are the symbolic jets `a_0..a_n`.
    pub fn generic(n: usize) -> Self {
        DiffOp::new((0..=n).map(|i| DiffExpr::sym(Symbol::jet(i, 0))).collect())
    }

    pub fn from_ratfuncs(a: &[RatFunc]) -> Self {
        DiffOp::new(a.iter().map(DiffExpr::from_ratfunc).collect())
    }

    /// Normalizes `sum c_i theta^i` by its leading coefficient.
    pub fn from_operator(op: &Operator) -> Result<Self> {
        let n1 = op.order();
        if n1 == 0 {
            return Err(Error::Invalid("operator of order zero".into()));
        }
        let lead = op.coeff(n1);
        let a = (0..n1)
            .map(|i| {
                op.coeff(i)
                    .div(&lead)
                    .map(|x| x.neg())
                    .ok_or_else(|| Error::DivisionByZero("leading coefficient".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffOp::new(a))
    }

    /// `n`, one less than the order.
    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self, i: usize) -> &DiffExpr {
        &self.a[i]
    }

    pub fn coeffs(&self) -> &[DiffExpr] {
        &self.a
    }

    pub fn with_coeff(&self, i: usize, v: DiffExpr) -> Self {
        let mut a = self.a.clone();
        a[i] = v;
        DiffOp { a }
    }

    /// Monic `d`-polynomial form.
    pub fn to_operator(&self) -> Operator {
        let mut c: Vec<DiffExpr> = self.a.iter().map(|x| x.neg()).collect();
        c.push(DiffExpr::one());
        Operator { coeffs: c }
    }

    pub fn dual(&self) -> Result<DiffOp> {
        DiffOp::from_operator(&op_dual(&self.to_operator())?)
    }

    pub fn equals(&self, o: &DiffOp) -> bool {
        self.a.len() == o.a.len()
            && self.a.iter().zip(&o.a).all(|(x, y)| crate::exactalg::expr_equal(x, y))
    }
}

/// `rho_k = psi^{(k)} / psi` for `k = 0..=kmax`, where `psi'/psi = -2/(n+1)` times
/// the `d^n` coefficient of the monic form. In Picard-Fuchs storage this is
/// `+2 a_n / (n+1)`.
pub fn psi_log_ratios(l: &DiffOp, kmax: usize) -> Result<Vec<DiffExpr>> {
    let n = l.n();
    let rho1 = l.a(n).scale(&q(2, n as i64 + 1));
    let mut out = vec![DiffExpr::one()];
    for k in 1..=kmax {
        let prev = &out[k - 1];
        let next = jet_derive(prev)?.add(&rho1.mul(prev));
        out.push(next);
    }
    Ok(out)
}

fn residuals_for(op: &Operator, rho: &[DiffExpr], indices: &[usize]) -> Result<Vec<DiffExpr>> {
    let big_n = op.order();
    let jets: Vec<Vec<DiffExpr>> = op
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| theta_jets(c, j))
        .collect::<Result<_>>()?;
    Ok(indices
        .iter()
        .map(|&i| {
            let mut acc = DiffExpr::zero();
            for j in i..=big_n {
                let c = &op.coeffs[j];
                let b = binom(j, i);
                if !c.is_zero() {
                    acc = acc.add(&c.mul(&rho[j - i]).scale(&b));
                }
                let jet = &jets[j][j - i];
                if !jet.is_zero() {
                    let sign = if (big_n - j).is_multiple_of(2) { q(-1, 1) } else { q(1, 1) };
                    acc = acc.add(&jet.scale(&(b * sign)));
                }
            }
            acc
        })
        .collect())
}

/// Coefficient comparisons of `L psi` and `psi dual(L)` at `d^{n-2k}`,
/// `k = 1..=floor(n/2)`, divided by `psi`.
pub fn self_duality_residuals(l: &DiffOp) -> Result<Vec<DiffExpr>> {
    let n = l.n();
    let idx: Vec<usize> = (1..=n / 2).map(|k| n - 2 * k).collect();
    let rho = psi_log_ratios(l, n + 1)?;
    residuals_for(&l.to_operator(), &rho, &idx)
}

/// All comparisons `d^0 .. d^n`, including the ones that vanish identically.
pub fn all_duality_residuals(l: &DiffOp) -> Result<Vec<DiffExpr>> {
    let n = l.n();
    let idx: Vec<usize> = (0..=n).collect();
    let rho = psi_log_ratios(l, n + 1)?;
    residuals_for(&l.to_operator(), &rho, &idx)
}

pub fn is_self_dual(l: &DiffOp) -> Result<bool> {
    Ok(all_duality_residuals(l)?.iter().all(|r| r.is_zero()))
}

/// Errors with the first nonvanishing relation, checking the `d^{n-2k}`
/// comparisons before the remaining ones.
pub fn require_self_dual(l: &DiffOp) -> Result<()> {
    let n = l.n();
    let all = all_duality_residuals(l)?;
    let mut order: Vec<usize> = (0..=n).filter(|i| (n - i).is_multiple_of(2)).collect();
    order.extend((0..=n).filter(|i| (n - i) % 2 == 1));
    for i in order {
        if !all[i].is_zero() {
            return Err(Error::NotSelfDual { index: i, residual: all[i].to_string() });
        }
    }
    Ok(())
}

/// Replaces every jet symbol `s` by `-s`.
fn negate_jets(e: &DiffExpr) -> DiffExpr {
    let subs: Vec<(Symbol, DiffExpr)> = e
        .symbols()
        .into_iter()
        .filter(|s| matches!(s, Symbol::Jet(_, _)))
        .map(|s| (s, DiffExpr::sym(s).neg()))
        .collect();
    subs.iter().fold(e.clone(), |acc, (s, v)| acc.substitute(*s, v))
}

/// Self-duality relations for the monic form `d^{n+1} + sum a_i d^i`,
/// where the jet symbols stand for the monic coefficients.
pub fn dependent_coefficient_formulas_monic(n: usize) -> Result<BTreeMap<usize, DiffExpr>> {
    if n < 2 {
        return Err(Error::Invalid(format!("relations need n >= 2, got {n}")));
    }
    let mut solved: BTreeMap<usize, DiffExpr> = BTreeMap::new();
    for k in 1..=n / 2 {
        let i = n - 2 * k;
        let mut c: Vec<DiffExpr> = (0..=n)
            .map(|j| solved.get(&j).cloned().unwrap_or_else(|| DiffExpr::sym(Symbol::jet(j, 0))))
            .collect();
        c.push(DiffExpr::one());
        let op = Operator { coeffs: c };
        let rho1 = op.coeffs[n].scale(&q(-2, n as i64 + 1));
        let mut rho = vec![DiffExpr::one()];
        for m in 1..=n + 1 {
            let next = jet_derive(&rho[m - 1])?.add(&rho1.mul(&rho[m - 1]));
            rho.push(next);
        }
        let d = residuals_for(&op, &rho, &[i])?.remove(0);
        let rest = d.sub(&DiffExpr::sym(Symbol::jet(i, 0)).scale(&q(2, 1)));
        debug_assert!(!rest.symbols().iter().any(|s| matches!(s, Symbol::Jet(x, _) if *x as usize == i)));
        solved.insert(i, rest.scale(&q(-1, 2)));
    }
    Ok(solved)
}

/// Self-duality relations in Picard-Fuchs storage: `a_{n-2k}` in terms of
/// `a_n, a_{n-1}, a_{n-3}, ...` and their theta-jets.
pub fn dependent_coefficient_formulas(n: usize) -> Result<BTreeMap<usize, DiffExpr>> {
    Ok(dependent_coefficient_formulas_monic(n)?
        .into_iter()
        .map(|(i, f)| (i, negate_jets(&f).neg()))
        .collect())
}

/// Generic self-dual operator: free jets for the independent coefficients and
/// the solved relations for `a_{n-2}, a_{n-4}, ...`.
pub fn generic_self_dual(n: usize) -> Result<DiffOp> {
    let g = DiffOp::generic(n);
    if n < 2 {
        return Ok(g);
    }
    let f = dependent_coefficient_formulas(n)?;
    Ok(DiffOp::new(
        (0..=n).map(|i| f.get(&i).cloned().unwrap_or_else(|| g.a(i).clone())).collect(),
    ))
}

/// Replaces jets of dependent coefficients by derivatives of their formulas.
pub fn substitute_dependents(e: &DiffExpr, formulas: &BTreeMap<usize, DiffExpr>) -> Result<DiffExpr> {
    let mut out = e.clone();
    for s in e.symbols() {
        if let Symbol::Jet(i, k) = s {
            if let Some(f) = formulas.get(&(i as usize)) {
                let mut v = f.clone();
                for _ in 0..k {
                    v = jet_derive(&v)?;
                }
                out = out.substitute(s, &v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{expr_equal, parse_expr};

    fn p(s: &str) -> DiffExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn compose_with_function() {
        let psi = Operator::scalar(p("a0"));
        let r = op_compose(&Operator::d_pow(1), &psi).unwrap();
        assert!(r.equals(&Operator::new(vec![p("d1a0"), p("a0")])));
        let r2 = op_compose(&Operator::d_pow(2), &psi).unwrap();
        assert!(r2.equals(&Operator::new(vec![p("d2a0"), p("2 * d1a0"), p("a0")])));
        let l = Operator::new(vec![p("a0"), p("a1"), p("1")]);
        assert!(op_compose(&l, &Operator::scalar(DiffExpr::one())).unwrap().equals(&l));
    }

    #[test]
    fn dual_order_two() {
        let l = Operator::new(vec![p("a0"), p("a1"), p("1")]);
        let d = op_dual(&l).unwrap();
        assert!(d.equals(&Operator::new(vec![p("a0 - d1a1"), p("-a1"), p("1")])));
        assert!(op_dual(&Operator::d_pow(2)).unwrap().equals(&Operator::d_pow(2)));
    }

    #[test]
    fn psi_ratios() {
        let l = DiffOp::generic(3);
        let r = psi_log_ratios(&l, 2).unwrap();
        assert!(r[0].is_one());
        assert!(expr_equal(&r[1], &p("a3/2")));
        assert!(expr_equal(&r[2], &p("a3^2/4 + d1a3/2")));
    }

    #[test]
    fn trivial_operator_is_self_dual() {
        let l = DiffOp::new(vec![DiffExpr::zero(); 4]);
        assert!(self_duality_residuals(&l).unwrap().iter().all(|r| r.is_zero()));
        assert!(self_duality_residuals(&DiffOp::generic(1)).unwrap().is_empty());
    }

    #[test]
    fn n3_relation_matches_both_conventions() {
        let m = dependent_coefficient_formulas_monic(3).unwrap();
        assert!(expr_equal(&m[&1], &p("a2*a3/2 - 3/4*a3*d1a3 - a3^3/8 + d1a2 - d2a3/2")));
        let f = dependent_coefficient_formulas(3).unwrap();
        assert!(expr_equal(&f[&1], &p("3/4*a3*d1a3 + d1a2 - d2a3/2 - a3^3/8 - a2*a3/2")));
    }

    #[test]
    fn general_k1_display() {
        for n in 2..=6i64 {
            let m = dependent_coefficient_formulas_monic(n as usize).unwrap();
            let (an, an1) = (format!("a{n}"), format!("a{}", n - 1));
            let expected = p(&format!(
                "({n}-1)/({n}+1)*{an1}*{an} - {n}*({n}-1)/(2*({n}+1))*{an}*d1{an} \
                 - {n}*({n}-1)/(3*({n}+1)^2)*{an}^3 + ({n}-1)/2*d1{an1} - {n}*({n}-1)/12*d2{an}"
            ));
            assert!(expr_equal(&m[&(n as usize - 2)], &expected), "n = {n}");
        }
    }

    #[test]
    fn relations_kill_residuals() {
        for n in 2..=6 {
            let l = generic_self_dual(n).unwrap();
            for r in all_duality_residuals(&l).unwrap() {
                assert!(r.is_zero(), "n = {n}: {r}");
            }
        }
    }

    #[test]
    fn top_residuals_vanish_for_generic() {
        for n in 1..=5 {
            let l = DiffOp::generic(n);
            let all = all_duality_residuals(&l).unwrap();
            for (i, r) in all.iter().enumerate() {
                if i + 1 >= n {
                    assert!(r.is_zero(), "n = {n}, i = {i}");
                }
            }
        }
    }
}
