use std::fmt;

/// Variables appearing in expressions.
///
/// The derived ordering is the canonical variable order used for monomial
/// comparison and printing, so output never depends on insertion history.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// The normalized prefactor of the first row of the intersection matrix.
    ATilde,
    /// Chart coordinate `t_k`. `t0` is the base coordinate.
    T(u16),
    /// Raw chart entry `s_ij` of the lower-triangular period matrix.
    S(u8, u8),
    /// The base variable.
    Z,
    /// `k`-fold theta derivative of the operator coefficient `a_i`.
    Jet(u8, u8),
}

impl Symbol {
    pub fn jet(i: usize, k: usize) -> Symbol {
        Symbol::Jet(i as u8, k as u8)
    }

    pub fn t(k: usize) -> Symbol {
        Symbol::T(k as u16)
    }

    pub fn s(i: usize, j: usize) -> Symbol {
        Symbol::S(i as u8, j as u8)
    }

    /// Chart symbols are constant with respect to the base derivation.
    pub fn is_chart(self) -> bool {
        matches!(self, Symbol::T(_) | Symbol::S(_, _))
    }

    pub fn latex(self) -> String {
        match self {
            Symbol::ATilde => "\\tilde{a}".to_string(),
            Symbol::T(k) => format!("t_{{{k}}}"),
            Symbol::S(i, j) => format!("s_{{{i}{j}}}"),
            Symbol::Z => "z".to_string(),
            Symbol::Jet(i, 0) => format!("a_{{{i}}}"),
            Symbol::Jet(i, 1) => format!("\\vartheta a_{{{i}}}"),
            Symbol::Jet(i, k) => format!("\\vartheta^{{{k}}} a_{{{i}}}"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::ATilde => write!(f, "atilde"),
            Symbol::T(k) => write!(f, "t{k}"),
            Symbol::S(i, j) => write!(f, "s{i}_{j}"),
            Symbol::Z => write!(f, "z"),
            Symbol::Jet(i, 0) => write!(f, "a{i}"),
            Symbol::Jet(i, k) => write!(f, "d{k}a{i}"),
        }
    }
}
