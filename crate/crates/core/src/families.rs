use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::connection::{atilde_closed_form, AtildeForm};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exactalg::rational::{q_pow, qi};
use crate::exactalg::{parse_ratfunc, DiffExpr, RatFunc, Symbol, UPoly, Q};
use crate::moduli::{compatibility_check, derive_vector_field, CompatReport, Derivation, ODESystem};

/// One row of the table of hypergeometric one-parameter families.
#[derive(Clone, Debug)]
pub struct Preset {
    pub index: usize,
    pub slug: &'static str,
    pub structure: &'static str,
    pub r1: (i64, i64),
    pub r2: (i64, i64),
    /// `c` as a product of prime powers.
    pub c: &'static [(i64, u32)],
}

pub const PRESETS: [Preset; 14] = [
    Preset { index: 1, slug: "quintic", structure: "X(5) in P^4", r1: (1, 5), r2: (2, 5), c: &[(5, 5)] },
    Preset { index: 2, slug: "sextic", structure: "X(6) in P^4(2,1,1,1,1)", r1: (1, 6), r2: (2, 6), c: &[(2, 5), (3, 6)] },
    Preset { index: 3, slug: "octic", structure: "X(8) in P^4(4,1,1,1,1)", r1: (1, 8), r2: (3, 8), c: &[(2, 18)] },
    Preset { index: 4, slug: "dectic", structure: "X(10) in P^4(5,2,1,1,1)", r1: (1, 10), r2: (3, 10), c: &[(2, 9), (5, 6)] },
    Preset { index: 5, slug: "x33", structure: "X(3,3) in P^5", r1: (1, 3), r2: (1, 3), c: &[(3, 6)] },
    Preset { index: 6, slug: "x24", structure: "X(2,4) in P^5", r1: (1, 4), r2: (2, 4), c: &[(2, 10)] },
    Preset { index: 7, slug: "x223", structure: "X(2,2,3) in P^6", r1: (1, 3), r2: (1, 2), c: &[(2, 4), (3, 3)] },
    Preset { index: 8, slug: "x2222", structure: "X(2,2,2,2) in P^7", r1: (1, 2), r2: (1, 2), c: &[(2, 8)] },
    Preset { index: 9, slug: "x44", structure: "X(4,4) in P^5(2,2,1,1,1,1)", r1: (1, 4), r2: (1, 4), c: &[(2, 12)] },
    Preset { index: 10, slug: "x66", structure: "X(6,6) in P^5(3,3,2,2,1,1)", r1: (1, 6), r2: (1, 6), c: &[(2, 8), (3, 6)] },
    Preset { index: 11, slug: "x34", structure: "X(3,4) in P^5(2,1,1,1,1,1)", r1: (1, 4), r2: (1, 3), c: &[(2, 6), (3, 3)] },
    Preset { index: 12, slug: "x26", structure: "X(2,6) in P^5(3,1,1,1,1,1)", r1: (1, 6), r2: (3, 6), c: &[(2, 8), (3, 3)] },
    Preset { index: 13, slug: "x46", structure: "X(4,6) in P^5(3,2,2,1,1,1)", r1: (1, 6), r2: (1, 4), c: &[(2, 10), (3, 3)] },
    Preset { index: 14, slug: "x2_12", structure: "X(2,12) in P^5(6,4,1,1,1,1)", r1: (1, 12), r2: (5, 12), c: &[(12, 6)] },
];

impl Preset {
    pub fn c_value(&self) -> Q {
        self.c.iter().fold(qi(1), |acc, &(p, e)| acc * q_pow(&qi(p), e))
    }

    pub fn spec(&self) -> FamilySpec {
        FamilySpec {
            name: self.slug.to_string(),
            n: 3,
            source: Source::Hypergeometric {
                r1: Q::new(self.r1.0.into(), self.r1.1.into()),
                r2: Q::new(self.r2.0.into(), self.r2.1.into()),
                c: self.c_value(),
            },
            c0: qi(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    /// `theta^4 - c z (theta + r1)(theta + r2)(theta + 1 - r2)(theta + 1 - r1)`.
    Hypergeometric { r1: Q, r2: Q, c: Q },
    /// `a_0, ..., a_n` in Picard-Fuchs storage.
    Explicit(Vec<RatFunc>),
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: String,
    pub n: usize,
    pub source: Source,
    pub c0: Q,
}

/// Looks up a preset by table index (`8`, `table1:8`), slug, or structure text.
pub fn preset(name: &str) -> Result<&'static Preset> {
    let key = name.trim();
    let idx = key.strip_prefix("table1:").unwrap_or(key);
    if let Ok(i) = idx.parse::<usize>() {
        return PRESETS.iter().find(|p| p.index == i).ok_or_else(|| Error::UnknownPreset(name.into()));
    }
    PRESETS
        .iter()
        .find(|p| p.slug.eq_ignore_ascii_case(key) || p.structure.eq_ignore_ascii_case(key))
        .ok_or_else(|| Error::UnknownPreset(name.into()))
}

#[derive(Deserialize)]
struct FamilyFile {
    name: Option<String>,
    n: Option<usize>,
    c0: Option<toml::Value>,
    hypergeometric: Option<HyperFile>,
    coefficients: Option<toml::Table>,
}

#[derive(Deserialize)]
struct HyperFile {
    r1: toml::Value,
    r2: toml::Value,
    c: toml::Value,
}

fn value_to_q(v: &toml::Value, what: &str) -> Result<Q> {
    let r = match v {
        toml::Value::Integer(i) => RatFunc::constant(qi(*i)),
        toml::Value::String(s) => parse_ratfunc(s)?,
        _ => return Err(Error::Invalid(format!("{what}: expected an integer or a string"))),
    };
    match (r.num().degree(), r.den().degree()) {
        (None, _) => Ok(qi(0)),
        (Some(0), Some(0)) => Ok(r.num().coeff(0) / r.den().coeff(0)),
        _ => Err(Error::Invalid(format!("{what}: expected a constant"))),
    }
}

/// Parses a family file in TOML syntax.
///
/// ```toml
/// name = "x33"
/// [hypergeometric]
/// r1 = "1/3"
/// r2 = "1/3"
/// c = "3^6"
/// ```
///
/// or `n = ...` with a `[coefficients]` table holding `a0 = "..."` through `an`.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let f: FamilyFile = toml::from_str(text).map_err(|e| Error::Invalid(format!("family file: {e}")))?;
    let c0 = f.c0.as_ref().map(|v| value_to_q(v, "c0")).transpose()?.unwrap_or_else(|| qi(1));
    let name = f.name.unwrap_or_else(|| "custom".into());
    match (f.hypergeometric, f.coefficients) {
        (Some(h), None) => {
            if f.n.is_some_and(|n| n != 3) {
                return Err(Error::Invalid("hypergeometric families have n = 3".into()));
            }
            let source = Source::Hypergeometric {
                r1: value_to_q(&h.r1, "r1")?,
                r2: value_to_q(&h.r2, "r2")?,
                c: value_to_q(&h.c, "c")?,
            };
            Ok(FamilySpec { name, n: 3, source, c0 })
        }
        (None, Some(t)) => {
            let n = f.n.ok_or_else(|| Error::Invalid("explicit coefficients need n".into()))?;
            let mut a = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let key = format!("a{i}");
                let v = match t.get(&key) {
                    None => RatFunc::zero(),
                    Some(toml::Value::String(s)) => parse_ratfunc(s)?,
                    Some(toml::Value::Integer(k)) => RatFunc::constant(qi(*k)),
                    Some(_) => return Err(Error::Invalid(format!("{key}: expected a string"))),
                };
                a.push(v);
            }
            if let Some(extra) = t.keys().find(|k| !(0..=n).any(|i| **k == format!("a{i}"))) {
                return Err(Error::Invalid(format!("unexpected coefficient {extra}")));
            }
            Ok(FamilySpec { name, n, source: Source::Explicit(a), c0 })
        }
        _ => Err(Error::Invalid("family file needs exactly one of [hypergeometric] or [coefficients]".into())),
    }
}

/// A preset name or a path to a family file.
pub fn load_family(source: &str) -> Result<FamilySpec> {
    if let Ok(p) = preset(source) {
        return Ok(p.spec());
    }
    let path = Path::new(source);
    if path.exists() {
        return parse_family(&std::fs::read_to_string(path)?);
    }
    Err(Error::UnknownPreset(source.into()))
}

impl FamilySpec {
    /// `a_0, ..., a_n` in Picard-Fuchs storage.
    pub fn coefficients(&self) -> Vec<RatFunc> {
        match &self.source {
            Source::Explicit(a) => a.clone(),
            Source::Hypergeometric { r1, r2, c } => {
                let one = qi(1);
                let p = r1 * (&one - r1);
                let s = r2 * (&one - r2);
                let lower = [&p * &s, &p + &s, &one + &p + &s, qi(2)];
                let den = UPoly::new(vec![one.clone(), -c.clone()]);
                lower
                    .iter()
                    .map(|k| RatFunc::new(UPoly::new(vec![qi(0), c * k]), den.clone()))
                    .collect()
            }
        }
    }

    pub fn operator(&self) -> DiffOp {
        DiffOp::from_ratfuncs(&self.coefficients())
    }

    pub fn atilde(&self) -> AtildeForm {
        let a = self.coefficients();
        atilde_closed_form(&a[self.n], self.n, &self.c0)
    }

    pub fn derive(&self) -> Result<Derivation> {
        derive_vector_field(&self.operator())
    }

    pub fn compatibility(&self) -> Result<CompatReport> {
        compatibility_check(&self.operator())
    }

    /// Field with `atilde` kept symbolic; the closed form, when there is one,
    /// is recorded in the metadata.
    pub fn system(&self) -> Result<ODESystem> {
        let d = self.derive()?;
        let at = match self.atilde() {
            AtildeForm::Closed(r) => DiffExpr::from_ratfunc(&r).substitute(Symbol::Z, &DiffExpr::sym(Symbol::t(0))).to_string(),
            AtildeForm::Symbolic(_) => "atilde".to_string(),
        };
        Ok(d.system(Some(&self.name), &at))
    }

    /// Field with the closed form of `atilde` substituted.
    pub fn explicit_system(&self) -> Result<ODESystem> {
        let sys = self.system()?;
        match self.atilde() {
            AtildeForm::Closed(r) => {
                let v = DiffExpr::from_ratfunc(&r).substitute(Symbol::Z, &DiffExpr::sym(Symbol::t(0)));
                Ok(sys.with_atilde(&v))
            }
            AtildeForm::Symbolic(why) => Err(Error::Unsupported(format!("no closed form for atilde: {why}"))),
        }
    }
}

/// Replaces every jet `theta^k a_i` by the corresponding function of `z`.
pub fn specialize_jets(e: &DiffExpr, a: &[RatFunc]) -> DiffExpr {
    let subs: Vec<(Symbol, DiffExpr)> = e
        .symbols()
        .into_iter()
        .filter_map(|s| match s {
            Symbol::Jet(i, k) => {
                let mut f = a.get(i as usize).cloned().unwrap_or_else(RatFunc::zero);
                for _ in 0..k {
                    f = f.theta();
                }
                Some((s, DiffExpr::from_ratfunc(&f)))
            }
            _ => None,
        })
        .collect();
    e.substitute_all(&subs)
}

#[derive(Serialize)]
pub struct FamilySummary {
    pub name: String,
    pub n: usize,
    pub coefficients: Vec<String>,
    pub atilde: String,
    /// `(r1, r2, c)` for hypergeometric families.
    pub hypergeometric: Option<[String; 3]>,
}

impl FamilySpec {
    pub fn summary(&self) -> FamilySummary {
        FamilySummary {
            name: self.name.clone(),
            n: self.n,
            coefficients: self.coefficients().iter().map(|a| DiffExpr::from_ratfunc(a).to_string()).collect(),
            atilde: match self.atilde() {
                AtildeForm::Closed(r) => DiffExpr::from_ratfunc(&r).to_string(),
                AtildeForm::Symbolic(_) => "atilde".into(),
            },
            hypergeometric: match &self.source {
                Source::Hypergeometric { r1, r2, c } => Some([r1.to_string(), r2.to_string(), c.to_string()]),
                Source::Explicit(_) => None,
            },
        }
    }
}
