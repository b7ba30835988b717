mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use dhr_core::connection::phi_matrix;
use dhr_core::diffop::{
    dependent_coefficient_formulas, dependent_coefficient_formulas_monic, generic_self_dual,
    self_duality_residuals, substitute_dependents, DiffOp,
};
use dhr_core::exactalg::rational::qi;
use dhr_core::exactalg::{expr_equal, DiffExpr, Symbol};
use dhr_core::families::{load_family, specialize_jets, PRESETS};
use dhr_core::moduli::{compatibility_check, derive_symbolic, moduli_dimension, y_matrix, Derivation, SymbolicForm};
use dhr_core::numint::{mobius_invariance_check, ramanujan_numeric_check, rk4_convergence_orders};
use dhr_core::qseries::{pushforward_check, verify_darboux_halphen, verify_ramanujan, ThetaConvention};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took < l);
    let pass = out.pass && in_time;
    let budget = limit.map(|l| format!(" of {} s", l.as_secs())).unwrap_or_default();
    println!(
        "criterion {id}: {} | {} | {:.3} s{budget}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    pass
}

fn entries_match(d: &Derivation, n: usize, raw: bool) -> (usize, usize) {
    let (omega, chart, field) = match n {
        3 => (N3_OMEGA, N3_CHART, N3_FIELD),
        _ => (N5_OMEGA, N5_CHART, N5_FIELD),
    };
    let f = dependent_coefficient_formulas(n).unwrap();
    let prep = |x: DiffExpr| if raw { x } else { substitute_dependents(&x, &f).unwrap() };
    let mut ok = 0;
    let mut total = 0;
    for &(i, j, s) in omega {
        total += 1;
        ok += expr_equal(&d.omega.entry(i - 1, j - 1), &prep(e(s))) as usize;
    }
    for &(i, j, s) in chart {
        total += 1;
        ok += expr_equal(&d.chart.entry(i, j), &prep(d.chart.to_chart(&e(s)))) as usize;
    }
    let sys = d.system(None, "atilde");
    for (got, s) in sys.rhs.iter().zip(field) {
        total += 1;
        ok += expr_equal(got, &prep(e(s))) as usize;
    }
    (ok, total)
}

fn criterion_1() -> Outcome {
    let m3 = dependent_coefficient_formulas_monic(3).unwrap();
    let p3 = dependent_coefficient_formulas(3).unwrap();
    let n3 = same(&m3[&1], N3_MONIC_A1) && same(&p3[&1], N3_PF_A1);
    let m5 = dependent_coefficient_formulas_monic(5).unwrap();
    let p5 = dependent_coefficient_formulas(5).unwrap();
    let v2 = same(&m5[&3], N5_MONIC_A3) && same(&m5[&1], N5_MONIC_A1);
    let v4 = same(&p5[&3], N5_PF_A3) && same(&p5[&1], N5_PF_A1);
    let vanish = (2..=6).all(|n| {
        self_duality_residuals(&generic_self_dual(n).unwrap()).unwrap().iter().all(DiffExpr::is_zero)
    });
    Outcome {
        pass: n3 && vanish && v2 && v4,
        detail: format!(
            "n=3 a1 exact {n3}; n=5 relations kill residuals (n=2..6) {vanish}; \
             reference n=5 d-form relations match {v2}; reference n=5 PF relations match {v4} \
             (the two differ only by the sign convention b_i = -a_i)"
        ),
    }
}

fn criterion_2() -> Outcome {
    let d5 = derive_symbolic(5, SymbolicForm::Raw).unwrap();
    let n5 = N5_OMEGA.iter().filter(|(i, j, s)| expr_equal(&d5.omega.entry(i - 1, j - 1), &e(s))).count();
    let d3 = derive_symbolic(3, SymbolicForm::Raw).unwrap();
    let n3 = N3_OMEGA.iter().filter(|(i, j, s)| expr_equal(&d3.omega.entry(i - 1, j - 1), &e(s))).count();
    Outcome {
        pass: n5 == 6 && n3 == N3_OMEGA.len(),
        detail: format!("n=5 Omega entries {n5}/6; n=3 entries {n3}/{}", N3_OMEGA.len()),
    }
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [3, 5] {
        for (form, raw) in [(SymbolicForm::Raw, true), (SymbolicForm::Reduced, false)] {
            let d = derive_symbolic(n, form).unwrap();
            let (ok, total) = entries_match(&d, n, raw);
            pass &= ok == total;
            parts.push(format!("n={n} {} {ok}/{total}", if raw { "raw" } else { "reduced" }));
        }
    }
    let d3 = derive_symbolic(3, SymbolicForm::Reduced).unwrap();
    let d5 = derive_symbolic(5, SymbolicForm::Reduced).unwrap();
    let y = same(&d3.y[0], N3_Y[0]) && same(&d5.y[0], N5_Y[0]) && same(&d5.y[1], N5_Y[1]);
    pass &= y;
    Outcome { pass, detail: format!("Omega+chart+field entries: {}; y values {y}", parts.join(", ")) }
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    for n in 1..=6 {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let y = y_matrix(n, &d.y);
        let phi = phi_matrix(n);
        let rel = y.mul(&phi).add(&phi.mul(&y.transpose()));
        let om = d.omega.to_matrix();
        let sign = qi(if n % 2 == 1 { -1 } else { 1 });
        let transport = d.omega.transport_defect(&d.op).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                ok &= d.chart.reduce(rel.get(i, j)).is_zero();
                ok &= om.get(i, j).sub(&om.get(j, i).scale(&sign)).is_zero();
                ok &= transport.get(i, j).is_zero();
            }
        }
        ok &= d.chart.m() + 1 == moduli_dimension(n);
    }
    ok &= moduli_dimension(3) == 7 && moduli_dimension(5) == 13;
    Outcome {
        pass: ok,
        detail: "n=1..6: Y Phi + Phi Y^T = 0, Omega parity, theta Omega = A Omega + Omega A^T, dim(3)=7, dim(5)=13"
            .into(),
    }
}

fn criterion_5() -> Outcome {
    let mut good = 0;
    let t0 = DiffExpr::sym(Symbol::t(0));
    for p in &PRESETS {
        let f = p.spec();
        let compat = f.compatibility().unwrap().all_compatible;
        let a = f.coefficients();
        let sys = f.system().unwrap();
        let display = sys
            .rhs
            .iter()
            .zip(N3_FIELD)
            .all(|(got, s)| expr_equal(got, &specialize_jets(&e(s), &a).substitute(Symbol::Z, &t0)));
        good += (compat && display) as usize;
    }
    let l = load_family("quintic").unwrap().operator();
    let bad: DiffOp = l.with_coeff(2, l.a(2).add(&DiffExpr::sym(Symbol::Z)));
    let negative = !compatibility_check(&bad).unwrap().all_compatible;
    Outcome {
        pass: good == 14 && negative,
        detail: format!("families compatible and matching the n=3 field {good}/14; perturbed quintic flagged {negative}"),
    }
}

fn criterion_6() -> Outcome {
    let r = verify_ramanujan(50).unwrap();
    let dh = verify_darboux_halphen(40).unwrap();
    let field = dh.case(ThetaConvention::HalfExponents, "dh-field").unwrap().holds;
    let w = dh.case(ThetaConvention::HalfExponents, "pairwise-w").unwrap().holds;
    let reference_z = dh.case(ThetaConvention::HalfExponents, "pairwise").unwrap().holds;
    let full = dh.case(ThetaConvention::FullExponents, "dh-field").unwrap().holds;
    Outcome {
        pass: r.holds && field && w && full && dh.jacobi_quartic,
        detail: format!(
            "Ramanujan residuals zero to q^50 {}; theta triple solves the DH field to u^40 {field} \
             (full-exponent convention {full}); pairwise system in time w=2z {w}; \
             pairwise system in time z {reference_z} (documented factor 2); Jacobi quartic {}",
            r.holds, dh.jacobi_quartic
        ),
    }
}

fn criterion_7() -> Outcome {
    let p = pushforward_check();
    let frozen = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/pushforward.json"))
        .map(|g| g == serde_json::to_string_pretty(&p).unwrap() + "\n")
        .unwrap_or(false);
    Outcome {
        pass: p.exact_normalizations.len() == 1 && frozen,
        detail: format!(
            "reference map exact {}; exact normalization: {}; golden frozen {frozen}",
            p.reference_exact,
            p.exact_normalizations.join("; ")
        ),
    }
}

fn criterion_8() -> Outcome {
    let r = ramanujan_numeric_check(-4.0 * PI, &[-3.0 * PI, -2.5 * PI], 1e-3, 50).unwrap();
    let ram = r.max_relative_error.iter().all(|&x| x < 1e-8);
    let orders = rk4_convergence_orders(0.1, 3).unwrap();
    let ord = orders.iter().all(|&o| o >= 3.8);
    let mob: Vec<f64> = [[1.0, 1.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0], [2.0, 1.0, 1.0, 3.0]]
        .iter()
        .map(|m| mobius_invariance_check(*m, [0.3, -0.2, 0.5], (1.0, 1.5), 1e-3).unwrap().residual)
        .collect();
    let mo = mob.iter().all(|&x| x < 1e-6);
    Outcome {
        pass: ram && ord && mo,
        detail: format!(
            "Ramanujan RK4 vs series rel. err {:?} at q = e^-3pi, e^-2.5pi; RK4 orders {:?}; Mobius residuals {:?}",
            r.max_relative_error
                .iter()
                .map(|x| format!("{x:.1e}"))
                .collect::<Vec<_>>(),
            orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>(),
            mob.iter().map(|x| format!("{x:.1e}")).collect::<Vec<_>>()
        ),
    }
}

fn criterion_9() -> Outcome {
    // The pipeline consumes operator coefficients only; geometric existence is an input.
    let f = load_family("quintic").unwrap();
    let from_data = f.derive().is_ok();
    Outcome {
        pass: from_data,
        detail: "geometric claims accepted as input axioms; every check above uses only operator data and series"
            .into(),
    }
}

fn main() {
    let results = [
        run(1, Some(Duration::from_secs(10)), criterion_1),
        run(2, Some(Duration::from_secs(10)), criterion_2),
        run(3, Some(Duration::from_secs(60)), criterion_3),
        run(4, None, criterion_4),
        run(5, Some(Duration::from_secs(300)), criterion_5),
        run(6, Some(Duration::from_secs(30)), criterion_6),
        run(7, None, criterion_7),
        run(8, None, criterion_8),
        run(9, None, criterion_9),
    ];
    let failed: Vec<usize> = (1..=9).filter(|i| !results[i - 1]).collect();
    if !failed.is_empty() {
        eprintln!("acceptance failed for criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
