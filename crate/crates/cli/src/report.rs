use std::path::{Path, PathBuf};
use std::time::Instant;

use dhr_core::connection::phi_matrix;
use dhr_core::diffop::self_duality_residuals;
use dhr_core::exactalg::rational::qi;
use dhr_core::families::{Preset, PRESETS};
use dhr_core::moduli::{compatibility_of, moduli_dimension, y_matrix, Derivation, ODESystem};
use dhr_core::qseries::{verify_darboux_halphen, verify_ramanujan, ThetaConvention};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, StageExt};

pub const GOLDEN_ENV: &str = "DHR_GOLDEN_DIR";

pub fn golden_dir() -> PathBuf {
    std::env::var_os(GOLDEN_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Golden {
    Match,
    Mismatch,
    Missing,
}

impl Golden {
    pub fn check(dir: &Path, name: &str, text: &str) -> Golden {
        match std::fs::read_to_string(dir.join(name)) {
            Ok(want) if want == text => Golden::Match,
            Ok(_) => Golden::Mismatch,
            Err(_) => Golden::Missing,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Stages {
    pub self_dual: bool,
    pub omega_symmetry: bool,
    pub chart_solve: bool,
    pub y_relation: bool,
    pub compatibility: bool,
    pub golden: Golden,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub index: usize,
    pub slug: String,
    pub structure: String,
    pub dependent_entries: usize,
    pub stages: Stages,
    pub system: ODESystem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SeriesVerdicts {
    pub ramanujan_order: usize,
    pub ramanujan: bool,
    pub darboux_halphen_order: usize,
    pub darboux_halphen_field: bool,
    pub darboux_halphen_pairwise_w: bool,
    pub darboux_halphen_pairwise_z: bool,
    pub jacobi_quartic: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub golden_dir: String,
    pub families: Vec<FamilyReport>,
    pub series: SeriesVerdicts,
    pub all_passed: bool,
}

fn omega_symmetric(d: &Derivation) -> bool {
    let n = d.n();
    let om = d.omega.to_matrix();
    let sign = qi(if n % 2 == 1 { -1 } else { 1 });
    (0..=n).all(|i| (0..=n).all(|j| om.get(i, j).sub(&om.get(j, i).scale(&sign)).is_zero()))
}

fn y_relation(d: &Derivation) -> bool {
    let n = d.n();
    let y = y_matrix(n, &d.y);
    let phi = phi_matrix(n);
    let rel = y.mul(&phi).add(&phi.mul(&y.transpose()));
    (0..=n).all(|i| (0..=n).all(|j| d.chart.reduce(rel.get(i, j)).is_zero()))
}

fn family_report(p: &Preset, dir: &Path, timings: bool) -> Result<FamilyReport> {
    let start = Instant::now();
    let spec = p.spec();
    let op = spec.operator();
    let self_dual = self_duality_residuals(&op).stage("self-duality")?.iter().all(|r| r.is_zero());
    let d = spec.derive().stage("derivation")?;
    let compat = compatibility_of(&d).stage("compatibility")?;
    let system = spec.explicit_system().stage("field")?;
    let golden = Golden::check(dir, &format!("field_{:02}_{}.txt", p.index, p.slug), &system.golden_text());
    let stages = Stages {
        self_dual,
        omega_symmetry: omega_symmetric(&d),
        chart_solve: d.chart.m() + 1 == moduli_dimension(d.n()) && d.chart.dependents.len() == compat.entries.len(),
        y_relation: y_relation(&d),
        compatibility: compat.all_compatible,
        golden,
    };
    Ok(FamilyReport {
        index: p.index,
        slug: p.slug.into(),
        structure: p.structure.into(),
        dependent_entries: compat.entries.len(),
        stages,
        system,
        seconds: timings.then(|| start.elapsed().as_secs_f64()),
    })
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        let s = &self.stages;
        s.self_dual && s.omega_symmetry && s.chart_solve && s.y_relation && s.compatibility && s.golden == Golden::Match
    }
}

pub fn build(ramanujan_order: usize, dh_order: usize, timings: bool) -> Result<Report> {
    let dir = golden_dir();
    let families = PRESETS
        .par_iter()
        .map(|p| family_report(p, &dir, timings))
        .collect::<Result<Vec<_>>>()?;
    let r = verify_ramanujan(ramanujan_order).stage("ramanujan")?;
    let dh = verify_darboux_halphen(dh_order).stage("darboux-halphen")?;
    let holds = |s: &str| dh.case(ThetaConvention::HalfExponents, s).is_some_and(|c| c.holds);
    let series = SeriesVerdicts {
        ramanujan_order,
        ramanujan: r.holds,
        darboux_halphen_order: dh_order,
        darboux_halphen_field: holds("dh-field"),
        darboux_halphen_pairwise_w: holds("pairwise-w"),
        darboux_halphen_pairwise_z: holds("pairwise"),
        jacobi_quartic: dh.jacobi_quartic,
    };
    let all_passed = families.iter().all(FamilyReport::passed)
        && series.ramanujan
        && series.darboux_halphen_field
        && series.darboux_halphen_pairwise_w
        && series.jacobi_quartic;
    Ok(Report { golden_dir: dir.display().to_string(), families, series, all_passed })
}
