use std::path::PathBuf;

use dhr_core::exactalg::rational::qi;
use dhr_core::exactalg::{MPoly, Symbol};
use dhr_core::qseries::*;

fn golden(name: &str, text: &str) {
    let dir = std::env::var_os("DHR_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden"));
    let path = dir.join(name);
    if std::env::var_os("DHR_BLESS").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, want, "golden {}", path.display());
}

#[test]
fn ramanujan_to_q50() {
    let r = verify_ramanujan(50).unwrap();
    assert!(r.holds);
    let weights: Vec<i32> = r.residuals.iter().map(|x| x.kappa).collect();
    assert_eq!(weights, vec![2, 3, 4]);
}

#[test]
fn theta_solution_to_u40() {
    let r = verify_darboux_halphen(40).unwrap();
    assert!(r.jacobi_quartic);
    for conv in [ThetaConvention::HalfExponents, ThetaConvention::FullExponents] {
        assert!(r.case(conv, "dh-field").unwrap().holds);
        assert!(r.case(conv, "pairwise-w").unwrap().holds);
        let reference = r.case(conv, "pairwise").unwrap();
        assert!(!reference.holds);
        assert!(reference.residuals.iter().all(|x| x.kappa == 2));
    }
    let reference = r.case(ThetaConvention::HalfExponents, "pairwise").unwrap();
    assert_eq!(reference.residuals[0].first_term, Some(("4/8".into(), "-1/2".into())));
}

#[test]
fn constant_terms_of_residuals_vanish() {
    let r = verify_darboux_halphen(16).unwrap();
    for c in &r.cases {
        for x in &c.residuals {
            if let Some((e, _)) = &x.first_term {
                assert_ne!(e, "0/8");
            }
        }
    }
}

#[test]
fn jacobi_quartic_at_several_orders() {
    for n in [8, 33, 64] {
        assert!(jacobi_quartic_residual(n, ThetaConvention::HalfExponents).unwrap().is_zero());
    }
}

#[test]
fn pushforward_normalization() {
    let p = pushforward_check();
    assert!(!p.reference_exact);
    assert_eq!(
        p.exact_normalizations,
        vec!["phi = (T, -4 sum (T - ti)(T - tj), -4 prod (T - ti)), time forward".to_string()]
    );
    golden("pushforward.json", &(serde_json::to_string_pretty(&p).unwrap() + "\n"));
}

#[test]
fn pushforward_symmetric_locus() {
    let dh = halphen_system([qi(0), qi(0), qi(0)], qi(1));
    let res = pushforward_residuals(&dh, &pushforward_map(1, 1));
    let diagonal = |s| match s {
        Symbol::T(_) => Some(MPoly::var(Symbol::t(1))),
        _ => None,
    };
    assert!(res[2].compose(&diagonal).is_zero());
    assert!(!res[2].is_zero());
}

#[test]
fn series_goldens() {
    golden("e2_q20.txt", &eisenstein(1, 20).unwrap().golden_text());
    let t = halphen_theta_solution(40, ThetaConvention::HalfExponents).unwrap();
    golden("theta4_logderiv_u40.txt", &t[0].golden_text());
}

#[test]
fn halphen_parameters() {
    let f = halphen_system([qi(0), qi(0), qi(0)], qi(1));
    assert_eq!(f.scale(&dhr_core::exactalg::rational::q(1, 2)), darboux_pairwise_solved());
}
