use serde::Serialize;

use super::chart::{solve_dependent_entries, ChartSpec};
use crate::connection::{
    companion_matrix, intersection_matrix, intersection_matrix_mirrored, phi_matrix, theta_for,
    IntersectionMatrix,
};
use crate::diffop::{generic_self_dual, require_self_dual, DiffOp};
use crate::error::{Error, Result};
use crate::exactalg::{expr_equal, DiffExpr, Symbol, Theta};
use crate::matrix::ExprMatrix;

/// How the intersection matrix is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMode {
    /// Full recurrence with the symmetry of every cell verified.
    Checked,
    /// Upper triangle by recurrence, lower triangle by symmetry, unchecked.
    Mirrored,
}

/// Every intermediate object of one vector-field derivation.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub op: DiffOp,
    pub theta: Theta,
    pub omega: IntersectionMatrix,
    pub chart: ChartSpec,
    /// `zdot` in chart symbols and `z`.
    pub zdot: DiffExpr,
    pub y: Vec<DiffExpr>,
    /// `Y S - (zdot / z) S A` in chart symbols and `z`.
    pub sdot: ExprMatrix,
}

/// `zdot` and the `y_i` from the vanishing superdiagonal of `Y S - (zdot/z) S A`.
///
/// `Y` has superdiagonal `(1, y_1, ..., y_{n-2}, -1)`; for `n = 1` it is the single entry `-1`.
pub fn compute_y_zdot(n: usize, chart: &ChartSpec) -> Result<(DiffExpr, Vec<DiffExpr>)> {
    let z = DiffExpr::sym(Symbol::Z);
    let s = |i: usize| chart.entry(i, i);
    let ratio = |a: &DiffExpr, b: &DiffExpr| {
        a.div(b).ok_or_else(|| Error::DivisionByZero("diagonal chart entry".into()))
    };
    if n == 1 {
        let zd = z.mul(&ratio(&s(2), &s(1))?).neg();
        return Ok((zd, Vec::new()));
    }
    let rate = ratio(&s(2), &s(1))?;
    let zdot = z.mul(&rate);
    let other = z.mul(&ratio(&s(n + 1), &s(n))?).neg();
    if !chart.reduce(&zdot.sub(&other)).is_zero() {
        return Err(Error::ZdotMismatch(format!("{zdot} vs {other}")));
    }
    let mut y = Vec::new();
    for i in 2..n {
        y.push(rate.mul(&ratio(&s(i), &s(i + 1))?));
    }
    Ok((zdot, y))
}

pub fn y_matrix(n: usize, y: &[DiffExpr]) -> ExprMatrix {
    let mut m = ExprMatrix::zeros(n + 1);
    if n == 1 {
        m.set(0, 1, DiffExpr::int(-1));
        return m;
    }
    m.set(0, 1, DiffExpr::one());
    for (k, v) in y.iter().enumerate() {
        m.set(k + 1, k + 2, v.clone());
    }
    m.set(n - 1, n, DiffExpr::int(-1));
    m
}

impl Derivation {
    pub fn new(l: &DiffOp, mode: OmegaMode) -> Result<Self> {
        let n = l.n();
        if n == 0 {
            return Err(Error::Invalid("order must be at least 2".into()));
        }
        let omega = match mode {
            OmegaMode::Checked => intersection_matrix(l)?,
            OmegaMode::Mirrored => intersection_matrix_mirrored(l)?,
        };
        let phi = phi_matrix(n);
        let chart = solve_dependent_entries(n, &omega, &phi)?;
        let (zdot, y) = compute_y_zdot(n, &chart)?;
        let s = chart.matrix();
        let a = companion_matrix(l);
        let rate = zdot
            .div(&DiffExpr::sym(Symbol::Z))
            .expect("z is nonzero");
        let sdot = y_matrix(n, &y)
            .mul(&s)
            .sub(&s.mul(&a).map(|e| e.mul(&rate)));
        for i in 0..=n {
            for j in i + 1..=n {
                if !chart.reduce(sdot.get(i, j)).is_zero() {
                    return Err(Error::NonCompanionConnection { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(Derivation { op: l.clone(), theta: theta_for(l), omega, chart, zdot, y, sdot })
    }

    pub fn n(&self) -> usize {
        self.op.n()
    }

    /// Right-hand sides for `t1..tm` and, for even `n`, the extra coordinate.
    /// Still written in `z`.
    pub fn chart_rhs(&self) -> Vec<DiffExpr> {
        let mut out: Vec<DiffExpr> = self
            .chart
            .independents
            .iter()
            .map(|&(i, j)| self.sdot.get(i - 1, j - 1).clone())
            .collect();
        if let Some(a) = &self.chart.aux {
            out.push(self.sdot.get(a.entry.0 - 1, a.entry.1 - 1).clone());
        }
        out
    }

    pub fn system(&self, family: Option<&str>, atilde: &str) -> ODESystem {
        let t0 = DiffExpr::sym(Symbol::t(0));
        let to_t0 = |e: &DiffExpr| e.substitute(Symbol::Z, &t0);
        let mut variables = vec!["t0".to_string()];
        let mut rhs = vec![to_t0(&self.zdot)];
        for (k, e) in self.chart_rhs().into_iter().enumerate() {
            variables.push(format!("t{}", k + 1));
            rhs.push(to_t0(&e));
        }
        ODESystem {
            n: self.n(),
            family: family.map(str::to_string),
            variables,
            rhs,
            y: self.y.iter().map(to_t0).collect(),
            zdot: to_t0(&self.zdot),
            atilde: atilde.to_string(),
            coefficients: self.op.coeffs().iter().map(to_t0).collect(),
            aux_relation: self.chart.aux.as_ref().map(|a| format!("atilde * {}^2 = {}", a.symbol, a.sign)),
        }
    }
}

/// Explicit polynomial-rational vector field on the chart `t0..tm`.
#[derive(Clone, Debug, Serialize)]
pub struct ODESystem {
    pub n: usize,
    pub family: Option<String>,
    pub variables: Vec<String>,
    pub rhs: Vec<DiffExpr>,
    pub y: Vec<DiffExpr>,
    pub zdot: DiffExpr,
    pub atilde: String,
    pub coefficients: Vec<DiffExpr>,
    pub aux_relation: Option<String>,
}

impl ODESystem {
    /// One line per equation, `d/dt tk = <expr>`.
    pub fn golden_text(&self) -> String {
        let mut s = String::new();
        for (v, e) in self.variables.iter().zip(&self.rhs) {
            s.push_str(&format!("d/dt {v} = {e}\n"));
        }
        s
    }

    pub fn latex(&self) -> String {
        let mut s = String::new();
        for (v, e) in self.variables.iter().zip(&self.rhs) {
            let name = crate::exactalg::parse::parse_symbol(v).map(|x| x.latex()).unwrap_or_else(|| v.clone());
            s.push_str(&format!("\\dot{{{name}}} = {} \\\\\n", e.latex()));
        }
        s
    }

    /// Replaces the `atilde` symbol by an explicit expression.
    pub fn with_atilde(&self, v: &DiffExpr) -> ODESystem {
        let sub = |e: &DiffExpr| e.substitute(Symbol::ATilde, v);
        ODESystem {
            rhs: self.rhs.iter().map(sub).collect(),
            y: self.y.iter().map(sub).collect(),
            zdot: sub(&self.zdot),
            atilde: v.to_string(),
            ..self.clone()
        }
    }

    pub fn equals(&self, o: &ODESystem) -> bool {
        self.variables == o.variables && self.rhs.iter().zip(&o.rhs).all(|(a, b)| expr_equal(a, b))
    }
}

/// Vector field of a self-dual operator.
pub fn derive_vector_field(l: &DiffOp) -> Result<Derivation> {
    require_self_dual(l)?;
    Derivation::new(l, OmegaMode::Checked)
}

/// Which coefficient set a symbolic derivation is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolicForm {
    /// Dependent coefficients replaced by the self-duality relations.
    Reduced,
    /// All coefficients kept as free jets; matches the reference closed forms.
    Raw,
}

pub fn derive_symbolic(n: usize, form: SymbolicForm) -> Result<Derivation> {
    match form {
        SymbolicForm::Reduced => derive_vector_field(&generic_self_dual(n)?),
        SymbolicForm::Raw => Derivation::new(&DiffOp::generic(n), OmegaMode::Mirrored),
    }
}
