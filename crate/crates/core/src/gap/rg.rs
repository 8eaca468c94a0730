use super::ck::c_k_series;
use super::vsolve::solve_v;
use crate::algebra::{factorial, qi, solve_exact, LinearSystem, Ring, Solution, Q};
use crate::error::{Error, Result};
use crate::shift::LaxParams;
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Per-pair data feeding the interpolation.
#[derive(Clone, Debug, PartialEq)]
pub struct GapRecord {
    pub m: u64,
    pub n: u64,
    pub sigma1: Q,
    pub sigma3: Q,
    /// `C_0..=C_G`.
    pub c: Vec<Q>,
    /// `P_1..=P_G`.
    pub p: Vec<Q>,
    /// `R_g` for `2 ≤ g ≤ G`.
    pub r: BTreeMap<usize, Q>,
}

/// `(1/h − 1/m − 1/n, 2/h³ − 2/m³ − 2/n³)`.
pub fn sigma_pair(m: u64, n: u64) -> (Q, Q) {
    let inv = |a: u64, e: u32| Q::new(1.into(), BigInt::from(a).pow(e));
    let h = m + n;
    let s1 = inv(h, 1) - inv(m, 1) - inv(n, 1);
    let s3 = (inv(h, 3) - inv(m, 3) - inv(n, 3)) * qi(2);
    (s1, s3)
}

/// `R_g = (2g−3)!/(mnh)^g · (m Σ_{k=1}^g C_{g−k} P_k/(2k−1)! − C_g)`.
pub fn r_g_from(params: &LaxParams, c: &[Q], p: &[Q], g: usize) -> Result<Q> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if c.len() <= g || p.len() < g {
        return Err(Error::InvalidParams(format!("need C_k, P_k up to {g}")));
    }
    let mut s = qi(0);
    for k in 1..=g {
        s += &c[g - k] * &p[k - 1] / Q::from_integer(factorial(2 * k as u32 - 1));
    }
    let mnh = BigInt::from(params.m * params.n * params.h());
    let pre = Q::new(factorial(2 * g as u32 - 3), mnh.pow(g as u32));
    Ok(pre * (params.mq() * s - &c[g]))
}

/// Computes `C`, `P` and `R` through genus `G` for one pair.
pub fn gap_record(params: &LaxParams, genus: usize) -> Result<GapRecord> {
    let (m, n) = (params.mq(), params.nq());
    let c = c_k_series(&m, &n, genus);
    let p = solve_v(&m, &n, genus)?;
    let mut r = BTreeMap::new();
    for g in 2..=genus {
        r.insert(g, r_g_from(params, &c, &p, g)?);
    }
    let (sigma1, sigma3) = sigma_pair(params.m, params.n);
    Ok(GapRecord {
        m: params.m,
        n: params.n,
        sigma1,
        sigma3,
        c,
        p,
        r,
    })
}

pub fn r_g_value(params: &LaxParams, g: usize) -> Result<Q> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let rec = gap_record(params, g)?;
    Ok(rec.r[&g].clone())
}

/// `R_g(σ₁, σ₃) = Σ R_{g;k,l} σ₃^k σ₁^l` over the ansatz index set.
#[derive(Clone, Debug, PartialEq)]
pub struct RgPolynomial {
    pub g: usize,
    pub coeffs: BTreeMap<(u32, u32), Q>,
}

/// `(k, l)` with `0 ≤ k ≤ g−1`, `0 ≤ l ≤ 3g−3−3k`.
pub fn ansatz_indices(g: usize) -> Vec<(u32, u32)> {
    let g = g as u32;
    let mut out = Vec::new();
    for k in 0..g {
        for l in 0..=(3 * g - 3 - 3 * k) {
            out.push((k, l));
        }
    }
    out
}

fn monomial_row(idx: &[(u32, u32)], s1: &Q, s3: &Q) -> Vec<Q> {
    idx.iter().map(|&(k, l)| Ring::pow(s3, k) * Ring::pow(s1, l)).collect()
}

impl RgPolynomial {
    pub fn eval(&self, sigma1: &Q, sigma3: &Q) -> Q {
        self.coeffs
            .iter()
            .map(|(&(k, l), c)| c * Ring::pow(sigma3, k) * Ring::pow(sigma1, l))
            .sum()
    }

    /// Checks the shape against the ansatz index set.
    pub fn validate(&self) -> Result<()> {
        if self.g < 2 {
            return Err(Error::GenusTooSmall(self.g));
        }
        let idx: BTreeSet<_> = ansatz_indices(self.g).into_iter().collect();
        match self.coeffs.keys().find(|k| !idx.contains(k)) {
            Some((k, l)) => Err(Error::NotInIndexSet(format!("(k, l) = ({k}, {l})"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitDiagnostics {
    pub pairs_used: Vec<(u64, u64)>,
    pub rank: usize,
    pub unknowns: usize,
    /// Rows beyond the unknown count, all of which have zero residual.
    pub surplus_rows: usize,
}

/// Coprime `(m, n)` with `m ≤ n`, by increasing `m + n` then `m`.
pub fn coprime_pairs() -> impl Iterator<Item = (u64, u64)> {
    (2u64..).flat_map(|s| (1..=s / 2).map(move |m| (m, s - m)).filter(|&(m, n)| m.gcd(&n) == 1))
}

/// Fits `R_g` on the ansatz from exact values at enough `(m, n)` pairs.
pub fn r_g_polynomial(g: usize, pair_budget: usize) -> Result<(RgPolynomial, FitDiagnostics)> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let idx = ansatz_indices(g);
    let unknowns = idx.len();
    let target = (3 * unknowns).div_ceil(2);
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let mut source = coprime_pairs();
    loop {
        let want = if rows.len() < target { target - rows.len() } else { unknowns };
        let mut batch = Vec::new();
        while batch.len() < want && pairs.len() + batch.len() < pair_budget {
            let (m, n) = source.next().expect("infinite enumeration");
            if seen.insert(sigma_pair(m, n)) {
                batch.push((m, n));
            }
        }
        if batch.is_empty() {
            let rank = match solve_exact(&LinearSystem { matrix: rows, rhs }) {
                Solution::Report { rank, .. } => rank,
                Solution::Unique(_) => unknowns,
            };
            return Err(Error::InsufficientSeparation {
                rank,
                unknowns,
                pairs: pairs.len(),
            });
        }
        let values: Vec<Q> = batch
            .par_iter()
            .map(|&(m, n)| r_g_value(&LaxParams::new(m, n)?, g))
            .collect::<Result<_>>()?;
        for (&(m, n), v) in batch.iter().zip(values) {
            let (s1, s3) = sigma_pair(m, n);
            rows.push(monomial_row(&idx, &s1, &s3));
            rhs.push(v);
            pairs.push((m, n));
        }
        if rows.len() < target {
            continue;
        }
        let sys = LinearSystem {
            matrix: rows.clone(),
            rhs: rhs.clone(),
        };
        match solve_exact(&sys) {
            Solution::Unique(x) => {
                // independent residual check over every row
                for (row, b) in rows.iter().zip(&rhs) {
                    let lhs: Q = row.iter().zip(&x).map(|(a, c)| a * c).sum();
                    if &lhs != b {
                        return Err(Error::AnsatzMismatch);
                    }
                }
                let coeffs = idx.iter().cloned().zip(x).filter(|(_, c)| !Ring::is_zero(c)).collect();
                let diag = FitDiagnostics {
                    rank: unknowns,
                    unknowns,
                    surplus_rows: rows.len() - unknowns,
                    pairs_used: pairs,
                };
                return Ok((RgPolynomial { g, coeffs }, diag));
            }
            Solution::Report { consistent: false, .. } => return Err(Error::AnsatzMismatch),
            Solution::Report { .. } => {}
        }
    }
}
