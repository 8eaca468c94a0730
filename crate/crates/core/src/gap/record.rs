//! JSON wire format: rationals as `{"num": "…", "den": "…"}`, polynomials as
//! arrays of `{k, l, coeff}`.

use super::rg::{sigma_pair, GapRecord, RgPolynomial};
use crate::algebra::Q;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QWire {
    pub num: String,
    pub den: String,
}

impl From<&Q> for QWire {
    fn from(q: &Q) -> Self {
        QWire {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl TryFrom<&QWire> for Q {
    type Error = Error;
    fn try_from(w: &QWire) -> Result<Q> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Parse { pos: 0, msg: format!("bad integer {s:?}: {e}") })
        };
        let den = parse(&w.den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Q::new(parse(&w.num)?, den))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RWire {
    g: usize,
    value: QWire,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GapRecordWire {
    m: u64,
    n: u64,
    sigma1: QWire,
    sigma3: QWire,
    #[serde(rename = "C")]
    c: Vec<QWire>,
    #[serde(rename = "P")]
    p: Vec<QWire>,
    #[serde(rename = "R")]
    r: Vec<RWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffWire {
    pub k: u32,
    pub l: u32,
    pub coeff: QWire,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RgPolyWire {
    g: usize,
    coeffs: Vec<CoeffWire>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    }
}

fn qs(v: &[QWire]) -> Result<Vec<Q>> {
    v.iter().map(Q::try_from).collect()
}

impl GapRecord {
    pub fn to_json(&self) -> String {
        let w = GapRecordWire {
            m: self.m,
            n: self.n,
            sigma1: (&self.sigma1).into(),
            sigma3: (&self.sigma3).into(),
            c: self.c.iter().map(QWire::from).collect(),
            p: self.p.iter().map(QWire::from).collect(),
            r: self
                .r
                .iter()
                .map(|(g, v)| RWire { g: *g, value: v.into() })
                .collect(),
        };
        serde_json::to_string(&w).expect("plain data serializes")
    }

    /// Decodes and checks the σ-pair against `(m, n)`.
    pub fn from_json(s: &str) -> Result<GapRecord> {
        let w: GapRecordWire = serde_json::from_str(s).map_err(json_err)?;
        let params = crate::shift::LaxParams::new(w.m, w.n)?;
        let rec = GapRecord {
            m: params.m,
            n: params.n,
            sigma1: (&w.sigma1).try_into()?,
            sigma3: (&w.sigma3).try_into()?,
            c: qs(&w.c)?,
            p: qs(&w.p)?,
            r: w
                .r
                .iter()
                .map(|e| Ok((e.g, Q::try_from(&e.value)?)))
                .collect::<Result<_>>()?,
        };
        if (rec.sigma1.clone(), rec.sigma3.clone()) != sigma_pair(rec.m, rec.n) {
            return Err(Error::Inconsistent("σ-pair does not match (m, n)".into()));
        }
        if rec.c.first().is_some_and(|c0| !c0.is_one()) {
            return Err(Error::Inconsistent("C_0 must be 1".into()));
        }
        Ok(rec)
    }
}

impl RgPolynomial {
    pub fn to_json(&self) -> String {
        let w = RgPolyWire {
            g: self.g,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(k, l), c)| CoeffWire { k, l, coeff: c.into() })
                .collect(),
        };
        serde_json::to_string(&w).expect("plain data serializes")
    }

    /// Decodes and checks the shape against the ansatz.
    pub fn from_json(s: &str) -> Result<RgPolynomial> {
        let w: RgPolyWire = serde_json::from_str(s).map_err(json_err)?;
        let mut coeffs = BTreeMap::new();
        for c in &w.coeffs {
            let v = Q::try_from(&c.coeff)?;
            if coeffs.insert((c.k, c.l), v).is_some() {
                return Err(Error::Inconsistent(format!("duplicate (k, l) = ({}, {})", c.k, c.l)));
            }
        }
        coeffs.retain(|_, v: &mut Q| !v.is_zero());
        let p = RgPolynomial { g: w.g, coeffs };
        p.validate()?;
        Ok(p)
    }
}
