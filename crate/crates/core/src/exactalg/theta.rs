use num_traits::One;

use super::expr::DiffExpr;
use super::mpoly::MPoly;
use super::rational::{q, Q};
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// The base derivation `z d/dz` acting on expressions.
///
/// Jets shift their order, `z` maps to itself, and `atilde` maps to
/// `rate * atilde` where the rate is `2/(n+1) * a_n`.
#[derive(Clone, Debug, Default)]
pub struct Theta {
    rate: Option<DiffExpr>,
}

impl Theta {
    /// Derivation for a generic operator of order `n + 1`, with `a_n` symbolic.
    pub fn symbolic(n: usize) -> Self {
        Theta::with_rate(DiffExpr::sym(Symbol::jet(n, 0)).scale(&q(2, n as i64 + 1)))
    }

    pub fn with_rate(rate: DiffExpr) -> Self {
        Theta { rate: Some(rate) }
    }

    /// Derivation that rejects `atilde`.
    pub fn plain() -> Self {
        Theta { rate: None }
    }

    pub fn rate(&self) -> Option<&DiffExpr> {
        self.rate.as_ref()
    }

    /// Theta of a polynomial, split as `poly + atilde_part * rate`.
    fn poly(&self, p: &MPoly, chart_constant: bool) -> Result<(MPoly, MPoly)> {
        let mut plain = MPoly::zero();
        let mut at = MPoly::zero();
        for s in p.symbols() {
            match s {
                Symbol::Z => plain = plain.add(&p.partial(s).mul(&MPoly::var(Symbol::Z))),
                Symbol::Jet(i, k) => {
                    plain = plain.add(&p.partial(s).mul(&MPoly::var(Symbol::Jet(i, k + 1))))
                }
                Symbol::ATilde => {
                    if self.rate.is_none() {
                        return Err(Error::MissingAtildeRate);
                    }
                    at = p.partial(s).mul(&MPoly::var(Symbol::ATilde));
                }
                Symbol::T(_) | Symbol::S(_, _) => {
                    if !chart_constant {
                        return Err(Error::ChartSymbolInDerivation(s.to_string()));
                    }
                }
            }
        }
        Ok((plain, at))
    }

    fn apply(&self, e: &DiffExpr, chart_constant: bool) -> Result<DiffExpr> {
        let (pn, qn) = self.poly(e.num(), chart_constant)?;
        if e.den().as_constant().is_some() {
            let mut out = DiffExpr::from_poly(pn);
            if !qn.is_zero() {
                out = out.add(&DiffExpr::from_poly(qn).mul(self.rate.as_ref().expect("checked")));
            }
            let c = e.den().as_constant().expect("constant denominator");
            return Ok(out.scale(&(Q::one() / c)));
        }
        let (pd, qd) = self.poly(e.den(), chart_constant)?;
        let d = e.den();
        let d2 = d.mul(d);
        let a = pn.mul(d).sub(&e.num().mul(&pd));
        let b = qn.mul(d).sub(&e.num().mul(&qd));
        let mut out = DiffExpr::new(a, d2.clone());
        if !b.is_zero() {
            out = out.add(&DiffExpr::new(b, d2).mul(self.rate.as_ref().expect("checked")));
        }
        Ok(out)
    }

    /// Total theta derivative. Fails on chart symbols.
    pub fn derive(&self, e: &DiffExpr) -> Result<DiffExpr> {
        self.apply(e, false)
    }

    /// Theta derivative treating chart symbols as constants.
    pub fn partial_theta(&self, e: &DiffExpr) -> Result<DiffExpr> {
        self.apply(e, true)
    }

    pub fn derive_n(&self, e: &DiffExpr, k: usize) -> Result<DiffExpr> {
        let mut cur = e.clone();
        for _ in 0..k {
            cur = self.derive(&cur)?;
        }
        Ok(cur)
    }
}

/// Theta derivative of an expression free of `atilde` and chart symbols.
pub fn jet_derive(e: &DiffExpr) -> Result<DiffExpr> {
    Theta::plain().derive(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::expr::expr_equal;
    use crate::exactalg::parse::parse_expr;

    fn p(s: &str) -> DiffExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn jets_shift() {
        let e = p("a3^2 * d1a2");
        let d = jet_derive(&e).unwrap();
        assert!(expr_equal(&d, &p("2 * a3 * d1a3 * d1a2 + a3^2 * d2a2")));
    }

    #[test]
    fn z_is_eigen() {
        let e = p("1 / (1 - 5 * z)");
        let d = jet_derive(&e).unwrap();
        assert!(expr_equal(&d, &p("5 * z / (1 - 10 * z + 25 * z^2)")));
    }

    #[test]
    fn chart_symbols_rejected() {
        assert!(matches!(jet_derive(&p("t3 * a1")), Err(Error::ChartSymbolInDerivation(_))));
        let th = Theta::symbolic(3);
        let d = th.partial_theta(&p("t3 * a1")).unwrap();
        assert!(expr_equal(&d, &p("t3 * d1a1")));
    }

    #[test]
    fn atilde_rate() {
        let th = Theta::symbolic(3);
        let d = th.derive(&p("atilde^2")).unwrap();
        assert!(expr_equal(&d, &p("atilde^2 * a3")));
        assert!(matches!(jet_derive(&p("atilde")), Err(Error::MissingAtildeRate)));
    }
}
