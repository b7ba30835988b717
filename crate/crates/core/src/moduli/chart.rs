use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::connection::IntersectionMatrix;
use crate::error::{Error, Result};
use crate::exactalg::{DiffExpr, Symbol};
use crate::matrix::ExprMatrix;

/// Extra coordinate for even `n`: the middle diagonal entry `s_ll`, tied to
/// `atilde` by `atilde * w^2 = sign`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuxCoord {
    pub entry: (usize, usize),
    pub symbol: String,
    pub sign: i64,
}

/// Solved chart on the lower-triangular change-of-basis matrix `S`.
///
/// Indices are one-based `(row, col)`. Independent entries are numbered
/// `t1, t2, ...` row by row.
#[derive(Clone, Debug)]
pub struct ChartSpec {
    pub n: usize,
    pub independents: Vec<(usize, usize)>,
    pub dependents: BTreeMap<(usize, usize), DiffExpr>,
    pub aux: Option<AuxCoord>,
}

/// Independent entries for the given order: `i + j <= n + 2` for odd `n`
/// and `i + j <= n + 1` for even `n`.
pub fn independent_entries(n: usize) -> Vec<(usize, usize)> {
    let bound = if n % 2 == 1 { n + 2 } else { n + 1 };
    let mut out = Vec::new();
    for i in 1..=n + 1 {
        for j in 1..=i {
            if i + j <= bound {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn moduli_dimension(n: usize) -> usize {
    if n % 2 == 1 {
        (n + 1) * (n + 3) / 4 + 1
    } else {
        n * (n + 2) / 4 + 1
    }
}

impl ChartSpec {
    pub fn m(&self) -> usize {
        self.independents.len()
    }

    pub fn t_index(&self, i: usize, j: usize) -> Option<usize> {
        self.independents.iter().position(|&e| e == (i, j)).map(|k| k + 1)
    }

    pub fn aux_symbol(&self) -> Option<Symbol> {
        self.aux.as_ref().map(|_| Symbol::t(self.m() + 1))
    }

    /// `atilde -> sign / w^2`, the relation used to compare even-order expressions.
    pub fn relation(&self) -> Option<(Symbol, DiffExpr)> {
        let a = self.aux.as_ref()?;
        let w = DiffExpr::sym(self.aux_symbol()?);
        let v = DiffExpr::int(a.sign).div(&w.pow(2)?)?;
        Some((Symbol::ATilde, v))
    }

    /// Entry of `S` in chart symbols.
    pub fn entry(&self, i: usize, j: usize) -> DiffExpr {
        if j > i {
            return DiffExpr::zero();
        }
        if let Some(k) = self.t_index(i, j) {
            return DiffExpr::sym(Symbol::t(k));
        }
        if let Some(a) = &self.aux {
            if a.entry == (i, j) {
                return DiffExpr::sym(self.aux_symbol().expect("aux"));
            }
        }
        self.dependents.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn matrix(&self) -> ExprMatrix {
        ExprMatrix::from_fn(self.n + 1, |i, j| self.entry(i + 1, j + 1))
    }

    /// Rewrites raw `s_ij` symbols in chart symbols.
    pub fn to_chart(&self, e: &DiffExpr) -> DiffExpr {
        let subs: Vec<(Symbol, DiffExpr)> = e
            .symbols()
            .into_iter()
            .filter_map(|s| match s {
                Symbol::S(i, j) => Some((s, self.entry(i as usize, j as usize))),
                _ => None,
            })
            .collect();
        e.substitute_all(&subs)
    }

    /// Reduces an expression modulo the even-order relation.
    pub fn reduce(&self, e: &DiffExpr) -> DiffExpr {
        match self.relation() {
            Some((s, v)) => e.substitute(s, &v),
            None => e.clone(),
        }
    }
}

/// Solves `S Omega S^T = Phi` for the dependent entries with a worklist of
/// constraints that are linear in exactly one unknown.
pub fn solve_dependent_entries(n: usize, omega: &IntersectionMatrix, phi: &ExprMatrix) -> Result<ChartSpec> {
    let dim = n + 1;
    let independents = independent_entries(n);
    let aux = n.is_multiple_of(2).then(|| {
        let l = n / 2 + 1;
        AuxCoord {
            entry: (l, l),
            symbol: format!("t{}", independents.len() + 1),
            sign: if (l - 1).is_multiple_of(2) { 1 } else { -1 },
        }
    });
    let mut spec = ChartSpec { n, independents, dependents: BTreeMap::new(), aux };
    let mut unknowns: BTreeSet<Symbol> = BTreeSet::new();
    let s = ExprMatrix::from_fn(dim, |i, j| {
        let (r, c) = (i + 1, j + 1);
        if c > r {
            return DiffExpr::zero();
        }
        let known = spec.t_index(r, c).is_some() || spec.aux.as_ref().is_some_and(|a| a.entry == (r, c));
        if known {
            spec.entry(r, c)
        } else {
            DiffExpr::sym(Symbol::s(r, c))
        }
    });
    for r in 1..=dim {
        for c in 1..=r {
            if spec.t_index(r, c).is_none() && !spec.aux.as_ref().is_some_and(|a| a.entry == (r, c)) {
                unknowns.insert(Symbol::s(r, c));
            }
        }
    }
    let product = s.mul(&omega.to_matrix()).mul(&s.transpose()).sub(phi);
    let mut pending: Vec<((usize, usize), DiffExpr)> = Vec::new();
    for p in 0..dim {
        for q in p..dim {
            let e = product.get(p, q);
            if !e.is_zero() {
                pending.push(((p + 1, q + 1), e.clone()));
            }
        }
    }
    let mut solved: BTreeMap<Symbol, DiffExpr> = BTreeMap::new();
    while !unknowns.is_empty() {
        let mut pick: Option<(usize, Symbol, DiffExpr, bool)> = None;
        for (idx, (_, e)) in pending.iter().enumerate() {
            let present: Vec<Symbol> = e.symbols().into_iter().filter(|x| unknowns.contains(x)).collect();
            if present.len() != 1 {
                continue;
            }
            let u = present[0];
            if e.den().contains(u) || e.num().degree_in(u) != 1 {
                continue;
            }
            let cs = e.num().coefficients_in(u);
            let monomial = cs[1].len() == 1;
            if pick.as_ref().is_none_or(|p| !p.3 && monomial) {
                let sol = DiffExpr::new(cs[0].neg(), cs[1].clone());
                pick = Some((idx, u, sol, monomial));
                if monomial {
                    break;
                }
            }
        }
        let Some((idx, u, sol, _)) = pick else {
            let entries: Vec<String> = unknowns.iter().map(|u| u.to_string()).collect();
            return Err(Error::StuckSolver { remaining: unknowns.len(), entries: entries.join(", ") });
        };
        pending.remove(idx);
        unknowns.remove(&u);
        for (_, e) in pending.iter_mut() {
            if e.contains(u) {
                *e = e.substitute(u, &sol);
            }
        }
        for v in solved.values_mut() {
            if v.contains(u) {
                *v = v.substitute(u, &sol);
            }
        }
        solved.insert(u, sol);
        pending.retain(|(_, e)| !e.is_zero());
    }
    for (sym, v) in solved {
        if let Symbol::S(i, j) = sym {
            spec.dependents.insert((i as usize, j as usize), v);
        }
    }
    verify_chart(&spec, omega, phi)?;
    Ok(spec)
}

fn verify_chart(spec: &ChartSpec, omega: &IntersectionMatrix, phi: &ExprMatrix) -> Result<()> {
    let s = spec.matrix();
    let product = s.mul(&omega.to_matrix()).mul(&s.transpose()).sub(phi);
    for p in 0..=spec.n {
        for q in 0..=spec.n {
            let e = spec.reduce(product.get(p, q));
            if !e.is_zero() {
                return Err(Error::ChartMismatch { row: p + 1, col: q + 1 });
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ChartDoc<'a> {
    n: usize,
    independents: Vec<(String, String)>,
    dependents: Vec<(String, String)>,
    aux: &'a Option<AuxCoord>,
}

impl Serialize for ChartSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChartDoc {
            n: self.n,
            independents: self
                .independents
                .iter()
                .enumerate()
                .map(|(k, (i, j))| (format!("s{i}_{j}"), format!("t{}", k + 1)))
                .collect(),
            dependents: self
                .dependents
                .iter()
                .map(|((i, j), e)| (format!("s{i}_{j}"), e.to_string()))
                .collect(),
            aux: &self.aux,
        }
        .serialize(s)
    }
}
