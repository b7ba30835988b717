use std::fmt::Write;

use num_traits::{One, Signed};

use super::expr::DiffExpr;
use super::mpoly::MPoly;

fn poly_latex(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_coeff = m.is_one() || !a.is_one();
        if show_coeff {
            if a.is_integer() {
                let _ = write!(out, "{}", a.numer());
            } else {
                let _ = write!(out, "\\frac{{{}}}{{{}}}", a.numer(), a.denom());
            }
        }
        for &(s, e) in m.pairs() {
            let name = s.latex();
            if e == 1 {
                let _ = write!(out, " {name}");
            } else if name.contains('^') || name.contains(' ') {
                let _ = write!(out, " \\left({name}\\right)^{{{e}}}");
            } else {
                let _ = write!(out, " {name}^{{{e}}}");
            }
        }
    }
    out.trim().to_string()
}

/// LaTeX rendering for human reading. Not parsed back.
pub fn latex(e: &DiffExpr) -> String {
    let (num, den) = e.display_parts();
    if den.is_one() {
        poly_latex(&num)
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(&num), poly_latex(&den))
    }
}
