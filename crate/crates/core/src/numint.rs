use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Symbol};
use crate::moduli::ODESystem;
use crate::qseries::{darboux_pairwise_solved, eisenstein, ramanujan_system, PolyField3};

/// `(t, x, out, guard)`; an error names the offending denominator and its value.
type RhsFn = dyn Fn(f64, &[f64], &mut [f64], f64) -> std::result::Result<(), (String, f64)> + Send + Sync;

/// Right-hand side with all parameters bound to floating-point values.
#[derive(Clone)]
pub struct NumField {
    dim: usize,
    names: Vec<String>,
    rhs: Arc<RhsFn>,
    /// Denominators closer to zero than this abort the integration.
    pub guard: f64,
}

impl std::fmt::Debug for NumField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumField").field("dim", &self.dim).field("names", &self.names).finish()
    }
}

struct Compiled {
    num: MPoly,
    den: Option<MPoly>,
    label: String,
}

impl NumField {
    pub fn new(
        names: Vec<String>,
        f: impl Fn(f64, &[f64], &mut [f64], f64) -> std::result::Result<(), (String, f64)> + Send + Sync + 'static,
    ) -> Self {
        NumField { dim: names.len(), names, rhs: Arc::new(f), guard: 1e-12 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Autonomous field from an emitted system. Every symbol other than the
    /// chart coordinates must be bound in `params`.
    pub fn from_ode_system(sys: &ODESystem, params: &BTreeMap<Symbol, f64>) -> Result<Self> {
        let index: BTreeMap<Symbol, usize> =
            (0..sys.variables.len()).map(|k| (Symbol::t(k), k)).collect();
        let mut compiled = Vec::new();
        for (v, e) in sys.variables.iter().zip(&sys.rhs) {
            for s in e.symbols() {
                if !index.contains_key(&s) && !params.contains_key(&s) {
                    return Err(Error::Unsupported(format!("symbol {s} in d/dt {v} has no numeric value")));
                }
            }
            let den = (!e.den().is_one()).then(|| e.den().clone());
            compiled.push(Compiled { num: e.num().clone(), den, label: format!("denominator of d/dt {v}") });
        }
        let params = params.clone();
        let names = sys.variables.clone();
        Ok(NumField::new(names, move |_, x, out, guard| {
            let val = |s: Symbol| index.get(&s).map(|&k| x[k]).or_else(|| params.get(&s).copied()).unwrap_or(f64::NAN);
            for (o, c) in out.iter_mut().zip(&compiled) {
                let n = c.num.eval_f64(&val);
                *o = match &c.den {
                    None => n,
                    Some(d) => {
                        let dv = d.eval_f64(&val);
                        if dv.abs() < guard {
                            return Err((c.label.clone(), dv));
                        }
                        n / dv
                    }
                };
            }
            Ok(())
        }))
    }

    pub fn from_poly3(f: &PolyField3) -> Self {
        let rhs = f.rhs.clone();
        NumField::new(vec!["t1".into(), "t2".into(), "t3".into()], move |_, x, out, _| {
            let val = |s: Symbol| match s {
                Symbol::T(k) if (1..=3).contains(&k) => x[k as usize - 1],
                _ => f64::NAN,
            };
            for (o, p) in out.iter_mut().zip(&rhs) {
                *o = p.eval_f64(&val);
            }
            Ok(())
        })
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        (self.rhs)(t, x, &mut out, self.guard).map_err(|(what, value)| Error::SingularityProximity { t, what, value })?;
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub step: f64,
    /// Largest step-doubling difference, when requested.
    pub max_local_error: Option<f64>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory is never empty")
    }

    /// Header `t,x1,...,xd` (or the variable names), 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t");
        for n in &self.names {
            s.push(',');
            s.push_str(n);
        }
        s.push('\n');
        for (t, x) in self.times.iter().zip(&self.states) {
            let _ = write!(s, "{t:.16e}");
            for v in x {
                let _ = write!(s, ",{v:.16e}");
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Rk4Options {
    pub error_estimate: bool,
}

fn rk4_step(f: &NumField, t: f64, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let axpy = |a: &[f64], k: &[f64], c: f64| -> Vec<f64> { a.iter().zip(k).map(|(a, k)| a + c * k).collect() };
    let k1 = f.eval(t, x)?;
    let k2 = f.eval(t + h / 2.0, &axpy(x, &k1, h / 2.0))?;
    let k3 = f.eval(t + h / 2.0, &axpy(x, &k2, h / 2.0))?;
    let k4 = f.eval(t + h, &axpy(x, &k3, h))?;
    let out: Vec<f64> = (0..x.len()).map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect();
    if let Some(v) = out.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(*v));
    }
    Ok(out)
}

/// Classical fixed-step RK4 from `t0` to `t1`. The step is shrunk so that a
/// whole number of steps lands exactly on `t1`.
pub fn integrate_rk4(f: &NumField, x0: &[f64], t0: f64, t1: f64, h: f64) -> Result<Trajectory> {
    integrate_rk4_with(f, x0, t0, t1, h, Rk4Options { error_estimate: false })
}

pub fn integrate_rk4_with(f: &NumField, x0: &[f64], t0: f64, t1: f64, h: f64, opts: Rk4Options) -> Result<Trajectory> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Invalid(format!("step must be positive, got {h}")));
    }
    if x0.len() != f.dim() {
        return Err(Error::Invalid(format!("initial state has {} entries, field has {}", x0.len(), f.dim())));
    }
    let steps = ((t1 - t0).abs() / h).ceil().max(1.0) as usize;
    let dt = (t1 - t0) / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(x0.to_vec());
    let mut max_err: Option<f64> = opts.error_estimate.then_some(0.0);
    for k in 0..steps {
        let t = t0 + dt * k as f64;
        let x = states.last().expect("nonempty");
        let next = rk4_step(f, t, x, dt)?;
        if let Some(m) = max_err.as_mut() {
            let half = rk4_step(f, t, x, dt / 2.0)?;
            let two = rk4_step(f, t + dt / 2.0, &half, dt / 2.0)?;
            let e = two.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            *m = m.max(e);
        }
        times.push(if k + 1 == steps { t1 } else { t0 + dt * (k + 1) as f64 });
        states.push(next);
    }
    Ok(Trajectory { names: f.names().to_vec(), times, states, step: dt.abs(), max_local_error: max_err })
}

/// Measured orders `log2(e_h / e_{h/2})` on `x' = x`, `x(0) = 1`, at `t = 1`.
pub fn rk4_convergence_orders(h0: f64, halvings: usize) -> Result<Vec<f64>> {
    let f = NumField::new(vec!["x".into()], |_, x, out, _| {
        out[0] = x[0];
        Ok(())
    });
    let mut errs = Vec::new();
    let mut h = h0;
    for _ in 0..=halvings {
        let tr = integrate_rk4(&f, &[1.0], 0.0, 1.0, h)?;
        errs.push((tr.last()[0] - std::f64::consts::E).abs());
        h /= 2.0;
    }
    Ok(errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusReport {
    pub transform: [f64; 4],
    /// Largest pairwise residual of the transformed triple.
    pub residual: f64,
    /// Same measure on the untransformed trajectory.
    pub raw_residual: f64,
}

/// Five-point derivative on a uniform grid, interior points only.
fn five_point(values: &[f64], h: f64) -> Vec<Option<f64>> {
    let n = values.len();
    (0..n)
        .map(|k| {
            (k >= 2 && k + 2 < n).then(|| {
                (values[k - 2] - 8.0 * values[k - 1] + 8.0 * values[k + 1] - values[k + 2]) / (12.0 * h)
            })
        })
        .collect()
}

/// Largest `|s_i' + s_j' - s_i s_j|` over interior grid points, with
/// derivatives taken in the time `w(z)` by finite differences in `z`.
fn pairwise_defect(z: &[f64], s: &[[f64; 3]], dw_dz: &dyn Fn(f64) -> f64, h: f64) -> f64 {
    let ds: Vec<Vec<Option<f64>>> = (0..3).map(|i| five_point(&s.iter().map(|x| x[i]).collect::<Vec<_>>(), h)).collect();
    let mut worst: f64 = 0.0;
    for k in 0..z.len() {
        let (Some(d0), Some(d1), Some(d2)) = (ds[0][k], ds[1][k], ds[2][k]) else { continue };
        let j = dw_dz(z[k]);
        let d = [d0 / j, d1 / j, d2 / j];
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            worst = worst.max((d[a] + d[b] - s[k][a] * s[k][b]).abs());
        }
    }
    worst
}

/// Integrates the pairwise Darboux-Halphen system from `x0` over `span`,
/// applies `w = (a z + b)/(a' z + b')`, `t_i = -2a'/(a'z+b') + D/(a'z+b')^2 s_i`
/// solved for `s_i`, and measures how well the `s_i` solve the same system in `w`.
pub fn mobius_invariance_check(m: [f64; 4], x0: [f64; 3], span: (f64, f64), h: f64) -> Result<MobiusReport> {
    let [a, b, ap, bp] = m;
    let det = a * bp - b * ap;
    if det.abs() < 1e-14 {
        return Err(Error::SingularTransform(format!("a b' - b a' = {det}")));
    }
    let f = NumField::from_poly3(&darboux_pairwise_solved());
    let tr = integrate_rk4(&f, &x0, span.0, span.1, h)?;
    let mut s = Vec::with_capacity(tr.times.len());
    for (z, t) in tr.times.iter().zip(&tr.states) {
        let p = ap * z + bp;
        if p.abs() < 1e-8 {
            return Err(Error::SingularTransform(format!("a' z + b' vanishes near z = {z}")));
        }
        let k = p * p / det;
        s.push([0, 1, 2].map(|i| (t[i] + 2.0 * ap / p) * k));
    }
    let raw: Vec<[f64; 3]> = tr.states.iter().map(|x| [x[0], x[1], x[2]]).collect();
    let dw = move |z: f64| det / ((ap * z + bp) * (ap * z + bp));
    let h = tr.times[1] - tr.times[0];
    Ok(MobiusReport {
        transform: m,
        residual: pairwise_defect(&tr.times, &s, &dw, h),
        raw_residual: pairwise_defect(&tr.times, &raw, &|_| 1.0, h),
    })
}

/// Scaled Eisenstein triple `(E2/12, E4/12, E6/216)` at real `q`, which solves
/// Ramanujan's system in the time `x = ln q`.
pub fn ramanujan_state(qv: f64, order: usize) -> Result<[f64; 3]> {
    let e = |j, c: f64| -> Result<f64> { Ok(eisenstein(j, order)?.eval_f64(qv, 1.0) / c) };
    Ok([e(1, 12.0)?, e(2, 12.0)?, e(3, 216.0)?])
}

#[derive(Clone, Debug, Serialize)]
pub struct RamanujanNumeric {
    pub q_points: Vec<f64>,
    pub max_relative_error: Vec<f64>,
}

/// Starts RK4 on Ramanujan's system at `q = exp(x0)` with series data and
/// compares with the series at each of `targets` (given as `ln q`).
pub fn ramanujan_numeric_check(x0: f64, targets: &[f64], h: f64, order: usize) -> Result<RamanujanNumeric> {
    let f = NumField::from_poly3(&ramanujan_system());
    let mut x = ramanujan_state(x0.exp(), order)?;
    let mut t = x0;
    let mut errs = Vec::new();
    for &target in targets {
        let tr = integrate_rk4(&f, &x, t, target, h)?;
        let end = tr.last();
        let want = ramanujan_state(target.exp(), order)?;
        errs.push((0..3).map(|i| ((end[i] - want[i]) / want[i]).abs()).fold(0.0, f64::max));
        x = [end[0], end[1], end[2]];
        t = target;
    }
    Ok(RamanujanNumeric { q_points: targets.iter().map(|x| x.exp()).collect(), max_relative_error: errs })
}
