use dhr_core::connection::{phi_matrix, theta_for};
use dhr_core::diffop::generic_self_dual;
use dhr_core::exactalg::{DiffExpr, Symbol};
use dhr_core::moduli::{
    compatibility_of, derive_symbolic, derive_vector_field, independent_entries, moduli_dimension, y_matrix,
    SymbolicForm,
};

#[test]
fn y_relation_for_orders_one_to_six() {
    for n in 1..=6 {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let y = y_matrix(n, &d.y);
        let phi = phi_matrix(n);
        let m = y.mul(&phi).add(&phi.mul(&y.transpose()));
        for i in 0..=n {
            for j in 0..=n {
                assert!(d.chart.reduce(m.get(i, j)).is_zero(), "n = {n}, cell ({i}, {j})");
            }
        }
    }
}

#[test]
fn y_values_pair_up_for_odd_orders() {
    for n in [3, 5] {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let k = d.y.len();
        for i in 0..k {
            if 2 * i + 1 != k {
                assert!(d.y[i].add(&d.y[k - 1 - i]).is_zero(), "n = {n}, y{}", i + 1);
            }
        }
    }
}

#[test]
fn intersection_parity_and_transport() {
    for n in 1..=6 {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let om = d.omega.to_matrix();
        let sign = if n % 2 == 1 { -1 } else { 1 };
        for i in 0..=n {
            for j in 0..=n {
                let back = om.get(j, i).scale(&dhr_core::exactalg::rational::qi(sign));
                assert!(om.get(i, j).sub(&back).is_zero(), "n = {n}, ({i}, {j})");
            }
        }
        let defect = d.omega.transport_defect(&d.op).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                assert!(defect.get(i, j).is_zero(), "n = {n}, transport cell ({i}, {j})");
            }
        }
    }
}

#[test]
fn chart_sizes() {
    assert_eq!(moduli_dimension(3), 7);
    assert_eq!(moduli_dimension(5), 13);
    for n in 1..=6 {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        assert_eq!(d.chart.m() + 1, moduli_dimension(n));
        assert_eq!(independent_entries(n).len(), d.chart.m());
        if n % 2 == 1 {
            assert_eq!(d.chart.dependents.len(), (n + 1) * (n + 1) / 4, "n = {n}");
        }
    }
}

#[test]
fn anti_diagonal_of_chart() {
    for n in [3, 5] {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        for i in 1..=n.div_ceil(2) {
            let k = n + 2 - i;
            let want = DiffExpr::int(if i % 2 == 1 { 1 } else { -1 })
                .div(&DiffExpr::sym(Symbol::ATilde).mul(&d.chart.entry(i, i)))
                .unwrap();
            assert!(d.chart.entry(k, k).sub(&want).is_zero(), "n = {n}, s{k}{k}");
        }
    }
}

#[test]
fn symbolic_fields_are_compatible() {
    for n in 1..=6 {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let r = compatibility_of(&d).unwrap();
        assert!(r.all_compatible, "n = {n}: {:?}", r.entries);
    }
}

#[test]
fn even_order_relation_is_preserved() {
    for n in [2, 4, 6] {
        let d = derive_symbolic(n, SymbolicForm::Reduced).unwrap();
        let w = d.chart.aux_symbol().unwrap();
        let rhs = d.chart_rhs();
        let wdot = rhs.last().unwrap();
        let g = DiffExpr::sym(Symbol::ATilde).mul(&DiffExpr::sym(w).pow(2).unwrap());
        let th = theta_for(&d.op);
        let rate = d.zdot.div(&DiffExpr::sym(Symbol::Z)).unwrap();
        let flow = rate.mul(&th.partial_theta(&g).unwrap()).add(&g.partial(w).mul(wdot));
        assert!(d.chart.reduce(&flow).is_zero(), "n = {n}");
    }
}

#[test]
fn raw_symbolic_form_is_not_self_dual_but_derives() {
    let d = derive_symbolic(3, SymbolicForm::Raw).unwrap();
    assert!(derive_vector_field(&d.op).is_err());
    assert!(derive_vector_field(&generic_self_dual(3).unwrap()).is_ok());
}
