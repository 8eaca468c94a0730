use crate::algebra::{bernoulli, factorial, EpsSeries, Field, Q};
use num_bigint::BigInt;

/// `sinh(az/2)/(az/2)` to `z^order`.
fn sinhc<S: Field>(a: &S, order: usize) -> EpsSeries<S> {
    let half = a.scale(&Q::new(1.into(), 2.into()));
    let c = (0..=order)
        .map(|k| {
            if k % 2 == 1 {
                S::zero()
            } else {
                half.pow(k as u32).scale(&Q::new(1.into(), factorial(k as u32 + 1)))
            }
        })
        .collect();
    EpsSeries::from_coeffs(c)
}

/// `C_0, …, C_K` from `nhz²/(4 sinh(nz/2) sinh(hz/2)) = Σ C_k z^{2k}`.
pub fn c_k_series<S: Field>(m: &S, n: &S, kmax: usize) -> Vec<S> {
    let order = 2 * kmax;
    let h = m.plus(n);
    let den = sinhc(n, order).times(&sinhc(&h, order));
    let inv = den.inverse_with(&S::one()).expect("unit constant term");
    (0..=kmax).map(|k| inv.coeff(2 * k).clone()).collect()
}

/// `C_k` from the double Bernoulli sum (with `B_1 = −1/2`).
pub fn c_k_closed<S: Field>(m: &S, n: &S, k: usize) -> S {
    let top = 2 * k;
    let b = bernoulli(top);
    let h = m.plus(n);
    let mut acc = S::zero();
    for k1 in 0..=top {
        for k2 in 0..=top - k1 {
            let k3 = top - k1 - k2;
            let sign = if k2 % 2 == 1 { -1 } else { 1 };
            let num = &b[k2] * &b[k3] * Q::from_integer(BigInt::from(sign));
            let den = BigInt::from(2).pow(k1 as u32) * factorial(k1 as u32) * factorial(k2 as u32) * factorial(k3 as u32);
            let c = num / Q::from_integer(den);
            if c == Q::from_integer(0.into()) {
                continue;
            }
            let t = m.pow(k1 as u32).times(&n.pow(k2 as u32)).times(&h.pow(k3 as u32));
            acc = acc.plus(&t.scale(&c));
        }
    }
    acc
}
