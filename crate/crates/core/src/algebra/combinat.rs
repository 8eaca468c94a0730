use super::{qi, Field, Q};
use num_bigint::BigInt;
use num_traits::One;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Ordinary binomial coefficient for non-negative integers.
pub fn binomial_int(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0..=B_n` for the generating function `t/(e^t - 1)`,
/// so `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    b.push(Q::one());
    for k in 1..=n {
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        let mut acc = qi(0);
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binomial_int(k as u32 + 1, j as u32)) * bj;
        }
        b.push(-acc / Q::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `a (a-1) ... (a-k+1) / k!` over any field.
pub fn gen_binomial<S: Field>(a: &S, k: u32) -> S {
    let mut acc = S::one();
    for i in 0..k {
        acc = acc.times(&a.minus(&S::from_rational(&qi(i as i64))));
    }
    acc.scale(&Q::new(BigInt::one(), factorial(k)))
}

/// Partitions of `n` into parts `≥ 1`, each non-increasing, in reverse
/// lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), vec![qi(1)]);
        assert_eq!(bernoulli(2), vec![qi(1), q(-1, 2), q(1, 6)]);
        let b = bernoulli(12);
        assert_eq!(b[3], qi(0));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[12], q(-691, 2730));
        for j in (3..=12).step_by(2) {
            assert_eq!(b[j], qi(0));
        }
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        let b = bernoulli(20);
        for k in 1..=20u32 {
            let s: Q = (0..=k)
                .map(|j| Q::from_integer(binomial_int(k + 1, j)) * &b[j as usize])
                .sum();
            assert_eq!(s, qi(0), "k = {k}");
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&q(3, 2), 1), q(3, 2));
        assert_eq!(gen_binomial(&q(7, 3), 0), qi(1));
        assert_eq!(gen_binomial(&qi(3), 2), qi(3));
        assert_eq!(gen_binomial(&qi(5), 7), qi(0));
        // (-1/2 choose 2) = (-1/2)(-3/2)/2 = 3/8
        assert_eq!(gen_binomial(&q(-1, 2), 2), q(3, 8));
    }
}
