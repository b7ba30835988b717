use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mpoly::{MPoly, Mono};
use super::ratfunc::RatFunc;
use super::rational::Q;
use super::symbol::Symbol;

/// Rational function in the symbol set, kept in a reduced canonical form.
///
/// Reduction cancels monomial content, common univariate content in `z`, and
/// exact polynomial quotients, then scales the denominator to leading
/// coefficient one. Semantic equality is decided by cross-multiplication in
/// [`expr_equal`], so equality never depends on how far reduction got.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffExpr {
    num: MPoly,
    den: MPoly,
}

impl Default for DiffExpr {
    fn default() -> Self {
        DiffExpr::zero()
    }
}

fn split_common(a: &MPoly, b: &MPoly) -> (MPoly, MPoly, MPoly) {
    let m = a.monomial_content().gcd(&b.monomial_content());
    let (mut a1, mut b1) = if m.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_mono(&m), b.div_mono(&m))
    };
    let mut g = MPoly::term(m, Q::one());
    if a1.contains(Symbol::Z) && b1.contains(Symbol::Z) {
        let u = a1.univariate_content(Symbol::Z).gcd(&b1.univariate_content(Symbol::Z));
        if u.degree().unwrap_or(0) > 0 {
            a1 = a1.div_univariate(&u, Symbol::Z).expect("content divides");
            b1 = b1.div_univariate(&u, Symbol::Z).expect("content divides");
            g = g.mul(&MPoly::from_upoly(&u, Symbol::Z));
        }
    }
    if a1.as_constant().is_none() && b1.as_constant().is_none() {
        if a1.total_degree() >= b1.total_degree() {
            if let Some(k) = a1.exact_div(&b1) {
                g = g.mul(&b1);
                return (g, k, MPoly::one());
            }
        } else if let Some(k) = b1.exact_div(&a1) {
            g = g.mul(&a1);
            return (g, MPoly::one(), k);
        }
    }
    (g, a1, b1)
}

impl DiffExpr {
    /// Builds `num / den` and reduces it. Panics on a zero denominator.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "DiffExpr with zero denominator");
        if num.is_zero() {
            return DiffExpr::zero();
        }
        if let Some(c) = den.as_constant() {
            return DiffExpr { num: num.scale(&(Q::one() / c)), den: MPoly::one() };
        }
        let (_, mut n, mut d) = split_common(&num, &den);
        if let Some(c) = d.as_constant() {
            return DiffExpr { num: n.scale(&(Q::one() / c)), den: MPoly::one() };
        }
        let lc = d.lc();
        if !lc.is_one() {
            let inv = Q::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        DiffExpr { num: n, den: d }
    }

    pub fn from_poly(p: MPoly) -> Self {
        DiffExpr { num: p, den: MPoly::one() }
    }

    pub fn zero() -> Self {
        DiffExpr::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        DiffExpr::from_poly(MPoly::one())
    }

    pub fn constant(c: Q) -> Self {
        DiffExpr::from_poly(MPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        DiffExpr::constant(Q::from_integer(n.into()))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        DiffExpr::constant(super::rational::q(n, d))
    }

    pub fn sym(s: Symbol) -> Self {
        DiffExpr::from_poly(MPoly::var(s))
    }

    pub fn from_ratfunc(r: &RatFunc) -> Self {
        DiffExpr::new(
            MPoly::from_upoly(r.num(), Symbol::Z),
            MPoly::from_upoly(r.den(), Symbol::Z),
        )
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &DiffExpr) -> DiffExpr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return DiffExpr::from_poly(n);
            }
            return DiffExpr::new(n, self.den.clone());
        }
        let (g, a1, b1) = split_common(&self.den, &o.den);
        let n = self.num.mul(&b1).add(&o.num.mul(&a1));
        DiffExpr::new(n, g.mul(&a1).mul(&b1))
    }

    pub fn neg(&self) -> DiffExpr {
        DiffExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &DiffExpr) -> DiffExpr {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> DiffExpr {
        if c.is_zero() {
            return DiffExpr::zero();
        }
        DiffExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, o: &DiffExpr) -> DiffExpr {
        if self.is_zero() || o.is_zero() {
            return DiffExpr::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return DiffExpr::from_poly(self.num.mul(&o.num));
        }
        let (_, n1, d2) = if o.den.is_one() {
            (MPoly::one(), self.num.clone(), MPoly::one())
        } else {
            split_common(&self.num, &o.den)
        };
        let (_, n2, d1) = if self.den.is_one() {
            (MPoly::one(), o.num.clone(), MPoly::one())
        } else {
            split_common(&o.num, &self.den)
        };
        DiffExpr::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Option<DiffExpr> {
        (!self.is_zero()).then(|| DiffExpr::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &DiffExpr) -> Option<DiffExpr> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i32) -> Option<DiffExpr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(DiffExpr { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    /// Partial derivative with respect to one symbol, all others held fixed.
    pub fn partial(&self, s: Symbol) -> DiffExpr {
        let dn = self.num.partial(s);
        let dd = self.den.partial(s);
        if dd.is_zero() {
            return DiffExpr::new(dn, self.den.clone());
        }
        let n = dn.mul(&self.den).sub(&self.num.mul(&dd));
        DiffExpr::new(n, self.den.mul(&self.den))
    }

    /// Replaces one symbol by an expression.
    pub fn substitute(&self, s: Symbol, v: &DiffExpr) -> DiffExpr {
        if !self.contains(s) {
            return self.clone();
        }
        let homog = |p: &MPoly| -> (MPoly, u32) {
            let d = p.degree_in(s);
            let cs = p.coefficients_in(s);
            let mut acc = MPoly::zero();
            let mut dpows = vec![MPoly::one()];
            for k in 1..=d as usize {
                let next = dpows[k - 1].mul(&v.den);
                dpows.push(next);
            }
            let mut vp = MPoly::one();
            for (k, c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&c.mul(&vp).mul(&dpows[d as usize - k]));
                }
                if k + 1 < cs.len() {
                    vp = vp.mul(&v.num);
                }
            }
            (acc, d)
        };
        let (n, dn) = homog(&self.num);
        let (d, dd) = homog(&self.den);
        if dn >= dd {
            DiffExpr::new(n, d.mul(&v.den.pow(dn - dd)))
        } else {
            DiffExpr::new(n.mul(&v.den.pow(dd - dn)), d)
        }
    }

    /// Applies several substitutions in sequence.
    pub fn substitute_all(&self, subs: &[(Symbol, DiffExpr)]) -> DiffExpr {
        subs.iter().fold(self.clone(), |acc, (s, v)| acc.substitute(*s, v))
    }

    pub fn eval_f64(&self, f: &dyn Fn(Symbol) -> f64) -> f64 {
        self.num.eval_f64(f) / self.den.eval_f64(f)
    }

    /// Canonical single-line text accepted by [`crate::exactalg::parse::parse_expr`].
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    pub fn latex(&self) -> String {
        super::render::latex(self)
    }

    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn monomial(c: Q, m: Mono) -> Self {
        DiffExpr::from_poly(MPoly::term(m, c))
    }
}

/// Semantic equality by cross-multiplication.
pub fn expr_equal(a: &DiffExpr, b: &DiffExpr) -> bool {
    if a == b {
        return true;
    }
    a.num.mul(&b.den) == b.num.mul(&a.den)
}

impl DiffExpr {
    /// Numerator and denominator scaled jointly to coprime integer
    /// coefficients, for printing. Polynomials are returned unchanged.
    pub fn display_parts(&self) -> (MPoly, MPoly) {
        if self.den.is_one() {
            return (self.num.clone(), self.den.clone());
        }
        let coeffs = || self.num.terms().chain(self.den.terms()).map(|(_, c)| c);
        let l = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&l / c.denom()))));
        let k = Q::new(l, g);
        (self.num.scale(&k), self.den.scale(&k))
    }
}

impl fmt::Display for DiffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.display_parts();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({den})")
        }
    }
}

impl serde::Serialize for DiffExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for DiffExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_expr(&s).map_err(serde::de::Error::custom)
    }
}
