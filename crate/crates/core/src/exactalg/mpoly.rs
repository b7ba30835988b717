use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{q_to_f64, Q};
use super::symbol::Symbol;
use super::upoly::UPoly;

/// A monomial: symbol/exponent pairs sorted by symbol, exponents positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Symbol, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Mono(vec![(s, 1)])
    }

    pub fn pow_of(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(s, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, s: Symbol) -> u32 {
        self.0
            .binary_search_by_key(&s, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < s {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == s {
                let f = o.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - f)),
                }
            } else {
                out.push((s, e));
            }
        }
        (j == o.0.len()).then_some(Mono(out))
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = o.exp(s);
                    (f > 0).then_some((s, e.min(f)))
                })
                .collect(),
        )
    }

    pub fn without(&self, s: Symbol) -> Mono {
        Mono(self.0.iter().copied().filter(|p| p.0 != s).collect())
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

impl Ord for Mono {
    /// Graded lexicographic order with the smallest symbol as the most significant variable.
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a[i].1.cmp(&b[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    c => return c,
                },
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(s, e) in &self.0 {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(s: Symbol) -> Self {
        MPoly::term(Mono::var(s), Q::one())
    }

    pub fn term(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_upoly(p: &UPoly, s: Symbol) -> Self {
        let mut out = MPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(Mono::pow_of(s, i as u32), c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_monomial(&self) -> Option<(&Mono, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> Q {
        self.leading().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if let Some((m, c)) = o.as_monomial() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return o.mul_term(m, c);
        }
        let mut acc: std::collections::HashMap<Mono, Q> =
            std::collections::HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.symbols()).collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    pub fn partial(&self, s: Symbol) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e == 0 {
                continue;
            }
            let rest = m.div(&Mono::var(s)).expect("exponent positive");
            out.add_term(rest, c * Q::from_integer((e as i64).into()));
        }
        out
    }

    /// Coefficients with respect to `s`: `self = sum_k coeff[k] * s^k`.
    pub fn coefficients_in(&self, s: Symbol) -> Vec<MPoly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(s) as usize;
            out[e].add_term(m.without(s), c.clone());
        }
        out
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Mono::one() };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// View as a polynomial in the other symbols with univariate coefficients in `s`.
    pub fn split_univariate(&self, s: Symbol) -> BTreeMap<Mono, UPoly> {
        let mut groups: BTreeMap<Mono, Vec<Q>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(s) as usize;
            let v = groups.entry(m.without(s)).or_default();
            if v.len() <= e {
                v.resize(e + 1, Q::zero());
            }
            v[e] += c;
        }
        groups.into_iter().map(|(k, v)| (k, UPoly::new(v))).collect()
    }

    /// Monic gcd of the univariate coefficients in `s`.
    pub fn univariate_content(&self, s: Symbol) -> UPoly {
        let mut g = UPoly::zero();
        for p in self.split_univariate(s).values() {
            g = if g.is_zero() { p.monic() } else { g.gcd(p) };
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    pub fn div_univariate(&self, g: &UPoly, s: Symbol) -> Option<MPoly> {
        let mut out = MPoly::zero();
        for (m, p) in self.split_univariate(s) {
            let qq = p.exact_div(g)?;
            out = out.add(&MPoly::from_upoly(&qq, s).mul_term(&m, &Q::one()));
        }
        Some(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lcd) = d.leading()?;
        let (ld, lcd) = (ld.clone(), lcd.clone());
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Q::one() / c)));
        }
        let mut r = self.clone();
        let mut quot = MPoly::zero();
        while let Some((lr, lcr)) = r.leading() {
            let m = lr.div(&ld)?;
            let c = lcr / &lcd;
            r = r.sub(&d.mul_term(&m, &c));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Simultaneous substitution of symbols by polynomials.
    pub fn compose(&self, f: &dyn Fn(Symbol) -> Option<MPoly>) -> MPoly {
        let mut cache: BTreeMap<(Symbol, u32), MPoly> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MPoly::constant(c.clone());
            for &(s, e) in m.pairs() {
                match f(s) {
                    Some(p) => {
                        let pw = cache.entry((s, e)).or_insert_with(|| p.pow(e)).clone();
                        acc = acc.mul(&pw);
                    }
                    None => kept.push((s, e)),
                }
            }
            out = out.add(&acc.mul_term(&Mono(kept), &Q::one()));
        }
        out
    }

    pub fn eval_f64(&self, f: &dyn Fn(Symbol) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.pairs()
                    .iter()
                    .fold(q_to_f64(c), |acc, &(s, e)| acc * f(s).powi(e as i32))
            })
            .sum()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Canonical text, descending monomial order.
    pub fn write_canonical(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f)
    }
}
