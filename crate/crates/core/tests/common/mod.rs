#![allow(dead_code)]

use dhr_core::exactalg::{expr_equal, parse_expr, DiffExpr};
use dhr_core::moduli::ChartSpec;

pub fn e(s: &str) -> DiffExpr {
    parse_expr(s).unwrap_or_else(|err| panic!("bad expression {s}: {err}"))
}

pub fn same(a: &DiffExpr, b: &str) -> bool {
    expr_equal(a, &e(b))
}

/// Same comparison after rewriting raw `s_ij` names in chart symbols.
pub fn same_in_chart(chart: &ChartSpec, a: &DiffExpr, b: &str) -> bool {
    expr_equal(a, &chart.to_chart(&e(b)))
}

/// Order three relation for the monic operator, coefficients `b_i` written as `a_i`.
pub const N3_MONIC_A1: &str = "1/2*a2*a3 - 3/4*a3*d1a3 - 1/8*a3^3 + d1a2 - 1/2*d2a3";
/// Order three relation in the Picard-Fuchs sign convention.
pub const N3_PF_A1: &str = "3/4*a3*d1a3 + d1a2 - 1/2*d2a3 - 1/8*a3^3 - 1/2*a2*a3";

/// Order five relations written for the monic operator in the derivative
/// `D = theta`, coefficients `b_i` written as `a_i`.
pub const N5_MONIC_A3: &str = "2/3*a4*a5 - 5/3*a5*d1a5 - 5/27*a5^3 + 2*d1a4 - 5/3*d2a5";
pub const N5_MONIC_A1: &str = "d1a2 - d3a4 + d4a5 - d2a4*a5 - d1a4*d1a5 + 5/3*a5*d1a5^2 + 1/3*a2*a5 \
    - 1/27*a4*a5^3 + 10/27*a5^3*d1a5 + 1/81*a5^5 - 1/3*d1a4*a5^2 - 1/3*a4*a5*d1a5 + 10/9*a5^2*d2a5 \
    + 10/3*d1a5*d2a5 - 1/3*a4*d2a5 + 5/3*a5*d3a5";

/// Order five relations in the Picard-Fuchs sign convention.
pub const N5_PF_A3: &str = "-2/3*a4*a5 + 5/3*a5*d1a5 - 5/27*a5^3 - 5/3*d2a5 + 2*d1a4";
pub const N5_PF_A1: &str = "d1a2 - d3a4 + d4a5 + d2a4*a5 + d1a4*d1a5 + 5/3*a5*d1a5^2 - 1/3*a2*a5 \
    + 1/27*a4*a5^3 - 10/27*a5^3*d1a5 + 1/81*a5^5 - 1/3*d1a4*a5^2 - 1/3*a4*a5*d1a5 + 10/9*a5^2*d2a5 \
    - 10/3*d1a5*d2a5 + 1/3*a4*d2a5 - 5/3*a5*d3a5";

pub const N3_OMEGA: &[(usize, usize, &str)] = &[
    (1, 4, "atilde"),
    (2, 3, "-atilde"),
    (2, 4, "-1/2*atilde*a3"),
    (3, 4, "1/4*atilde*a3^2 + atilde*a2 - 1/2*atilde*d1a3"),
];

pub const N5_OMEGA: &[(usize, usize, &str)] = &[
    (2, 6, "-2/3*atilde*a5"),
    (3, 5, "1/3*atilde*a5"),
    (3, 6, "atilde*a4 + 4/9*atilde*a5^2 - 2/3*atilde*d1a5"),
    (4, 5, "-atilde*a4 - 1/3*atilde*a5^2 + atilde*d1a5"),
    (
        4,
        6,
        "-atilde*a3 - atilde*a4*a5 - 8/27*atilde*a5^3 + atilde*d1a4 + 4/3*atilde*a5*d1a5 - 2/3*atilde*d2a5",
    ),
    (
        5,
        6,
        "atilde*a2 + 2/3*atilde*a3*a5 + atilde*a4^2 + atilde*a4*a5^2 + 16/81*atilde*a5^4 - atilde*d1a3 \
         - 5/3*atilde*a5*d1a4 - 16/9*atilde*a5^2*d1a5 - 2*atilde*a4*d1a5 + 4/3*atilde*d1a5^2 + atilde*d2a4 \
         + 16/9*atilde*a5*d2a5 - 2/3*atilde*d3a5",
    ),
];

pub const N3_CHART: &[(usize, usize, &str)] = &[
    (3, 3, "-1/(atilde*s2_2)"),
    (4, 2, "(4*atilde*s2_2*s3_1 - 4*atilde*s2_1*s3_2 - a3^2 - 4*a2 + 2*d1a3)/(4*atilde*s1_1)"),
    (4, 3, "(2*s2_1 - s2_2*a3)/(2*atilde*s1_1*s2_2)"),
    (4, 4, "1/(atilde*s1_1)"),
];

pub const N5_CHART: &[(usize, usize, &str)] = &[
    (4, 4, "1/(atilde*s3_3)"),
    (5, 3, "(-3*atilde*s3_2*s4_3 + 3*atilde*s3_3*s4_2 + 3*a4 + a5^2 - 3*d1a5)/(3*atilde*s2_2)"),
    (5, 4, "(-3*s3_2 + s3_3*a5)/(3*atilde*s2_2*s3_3)"),
    (5, 5, "-1/(atilde*s2_2)"),
    (
        6,
        2,
        "(-27*atilde*s2_1*s5_2 + 27*atilde*s2_2*s5_1 - 27*atilde*s3_1*s4_2 + 27*atilde*s3_2*s4_1 - 27*a2 \
         - 27*a3*a5 + 27*d1a3 - 15*a4*a5^2 + 9*a4*d1a5 + 54*a5*d1a4 - 27*d2a4 - 4*a5^4 + 42*a5^2*d1a5 \
         - 54*a5*d2a5 - 18*d1a5^2 + 18*d3a5)/(27*atilde*s1_1)",
    ),
    (
        6,
        3,
        "(27*atilde*s2_1*s3_2*s4_3 - 27*atilde*s2_1*s3_3*s4_2 - 27*atilde*s2_2*s3_1*s4_3 \
         + 27*atilde*s2_2*s3_3*s4_1 - 27*s2_1*a4 - 9*s2_1*a5^2 + 27*s2_1*d1a5 - 27*s2_2*a3 \
         - 9*s2_2*a4*a5 + 27*s2_2*d1a4 - 2*s2_2*a5^3 + 18*s2_2*a5*d1a5 - 18*s2_2*d2a5)/(27*atilde*s1_1*s2_2)",
    ),
    (
        6,
        4,
        "(9*s2_1*s3_2 - 3*s2_1*s3_3*a5 - 9*s2_2*s3_1 - 9*s2_2*s3_3*a4 - 2*s2_2*s3_3*a5^2 \
         + 6*s2_2*s3_3*d1a5)/(9*atilde*s1_1*s2_2*s3_3)",
    ),
    (6, 5, "(3*s2_1 - 2*s2_2*a5)/(3*atilde*s1_1*s2_2)"),
    (6, 6, "1/(atilde*s1_1)"),
];

pub const N3_FIELD: &[&str] = &[
    "t0*t3/t1",
    "t2",
    "-atilde*t3^3*t4/t1",
    "-(t2*t3 + atilde*t3^3*t5)/t1",
    "-t6",
    "(4*atilde*t2*t5 - 8*atilde*t3*t4 + a3^2 + 4*a2 - 2*d1a3)/(4*atilde*t1)",
    "-t3*a0/(atilde*t1^2)",
];

pub const N3_Y: &[&str] = &["-atilde*t3^3/t1"];

pub const N5_FIELD: &[&str] = &[
    "t0*t3/t1",
    "t2",
    "t3^2*t4/(t1*t6)",
    "(-t2*t3*t6 + t3^2*t5)/(t1*t6)",
    "atilde*t3*t6^2*t7/t1",
    "(-t3*t4 + atilde*t3*t6^2*t8)/t1",
    "(-t3*t5 + atilde*t3*t6^2*t9)/t1",
    "-t3^2*t10/(t1*t6)",
    "(-t3^2*t11 - t3*t6*t7)/(t1*t6)",
    "(3*atilde*t3*t5*t9 - 6*atilde*t3*t6*t8 - 3*t3*a4 - t3*a5^2 + 3*t3*d1a5)/(3*atilde*t1*t6)",
    "-t12",
    "(27*atilde*t2*t11 - 54*atilde*t3*t10 + 27*atilde*t4*t8 - 27*atilde*t5*t7 + 27*a2 + 27*a3*a5 \
     - 27*d1a3 + 15*a4*a5^2 - 9*a4*d1a5 - 54*a5*d1a4 + 27*d2a4 + 4*a5^4 - 42*a5^2*d1a5 + 54*a5*d2a5 \
     + 18*d1a5^2 - 18*d3a5)/(27*atilde*t1)",
    "-t3*a0/(atilde*t1^2)",
];

pub const N5_Y: &[&str] = &["t3^2/(t1*t6)", "atilde*t3*t6^2/t1"];
