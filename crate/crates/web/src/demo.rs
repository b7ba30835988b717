use dhr_core::exactalg::rational::{q_to_f64, qi};
use dhr_core::families::{load_family, PRESETS};
use dhr_core::numint::{integrate_rk4, NumField};
use dhr_core::qseries::{
    darboux_pairwise_solved, eisenstein, halphen_system, ramanujan_system, theta_null, QSeries, ThetaConvention,
};
use serde::Serialize;

pub const MAX_ORDER: usize = 400;
pub const MAX_STEPS: f64 = 200_000.0;

#[derive(Serialize)]
struct PresetDoc {
    index: usize,
    slug: &'static str,
    structure: &'static str,
}

#[derive(Serialize)]
struct FieldDoc {
    variables: Vec<String>,
    text: Vec<String>,
    latex: Vec<String>,
    atilde: String,
}

#[derive(Serialize)]
struct TrajectoryDoc {
    names: Vec<String>,
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct SeriesDoc {
    /// Exponents are `k / d`.
    d: u32,
    coefficients: Vec<String>,
    approx: Vec<f64>,
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("documents serialize")
}

pub fn presets() -> String {
    let list: Vec<PresetDoc> =
        PRESETS.iter().map(|p| PresetDoc { index: p.index, slug: p.slug, structure: p.structure }).collect();
    to_json(&list)
}

pub fn derive_field(family: &str, explicit: bool) -> Result<String, String> {
    let spec = load_family(family).map_err(|e| e.to_string())?;
    let sys = if explicit { spec.explicit_system() } else { spec.system() }.map_err(|e| e.to_string())?;
    Ok(to_json(&FieldDoc {
        variables: sys.variables.clone(),
        text: sys.rhs.iter().map(|e| e.to_string()).collect(),
        latex: sys.rhs.iter().map(|e| e.latex()).collect(),
        atilde: sys.atilde.clone(),
    }))
}

pub fn trajectory(system: &str, init: &[f64], from: f64, to: f64, step: f64) -> Result<String, String> {
    let field = match system {
        "ramanujan" => NumField::from_poly3(&ramanujan_system()),
        "darboux-halphen" => NumField::from_poly3(&halphen_system([qi(0), qi(0), qi(0)], qi(1))),
        "darboux-pairwise" => NumField::from_poly3(&darboux_pairwise_solved()),
        other => return Err(format!("unknown system {other}")),
    };
    if step.is_nan() || step <= 0.0 || (to - from).abs() / step > MAX_STEPS {
        return Err(format!("step {step} is not positive or needs more than {MAX_STEPS} steps"));
    }
    let t = integrate_rk4(&field, init, from, to, step).map_err(|e| e.to_string())?;
    Ok(to_json(&TrajectoryDoc { names: t.names, times: t.times, states: t.states }))
}

/// `e2`, `e4`, `e6` in `q`, or `theta2`, `theta3`, `theta4` in `u = q^(1/8)`.
pub fn series(kind: &str, order: usize) -> Result<String, String> {
    if order == 0 || order > MAX_ORDER {
        return Err(format!("order must be in 1..={MAX_ORDER}"));
    }
    let s: QSeries = match kind {
        "e2" => eisenstein(1, order),
        "e4" => eisenstein(2, order),
        "e6" => eisenstein(3, order),
        "theta2" => theta_null(2, order, ThetaConvention::HalfExponents),
        "theta3" => theta_null(3, order, ThetaConvention::HalfExponents),
        "theta4" => theta_null(4, order, ThetaConvention::HalfExponents),
        other => return Err(format!("unknown series {other}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(to_json(&SeriesDoc {
        d: s.d(),
        coefficients: s.coeffs().iter().map(|c| c.to_string()).collect(),
        approx: s.coeffs().iter().map(q_to_f64).collect(),
    }))
}
