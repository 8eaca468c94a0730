use super::{Field, Ring, Q};

/// Dense linear system `matrix · x = rhs` over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<Q>>,
    pub rhs: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<R> {
    Unique(Vec<R>),
    /// Rank below the number of unknowns, or a row reducing to `0 = b ≠ 0`.
    Report {
        rank: usize,
        unknowns: usize,
        consistent: bool,
    },
}

impl<R> Solution<R> {
    pub fn unique(self) -> Option<Vec<R>> {
        match self {
            Solution::Unique(v) => Some(v),
            Solution::Report { .. } => None,
        }
    }
}

pub fn solve_exact(sys: &LinearSystem) -> Solution<Q> {
    solve_rational_rhs(&sys.matrix, &sys.rhs)
}

/// Gauss–Jordan on a rational matrix; the right-hand side may live in any
/// ℚ-algebra, since only ℚ-linear combinations of its rows are formed.
pub fn solve_rational_rhs<R: Ring>(matrix: &[Vec<Q>], rhs: &[R]) -> Solution<R> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "row count mismatch");
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Q>> = matrix.to_vec();
    let mut b: Vec<R> = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !Ring::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Field::inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = b[r].scale(&inv);
        for i in 0..rows {
            if i == r || Ring::is_zero(&a[i][c]) {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let d = &a[r][j] * &f;
                a[i][j] = &a[i][j] - d;
            }
            b[i] = b[i].minus(&b[r].scale(&f));
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    finish(pivots, cols, b)
}

/// Gauss–Jordan over an arbitrary field.
pub fn solve_field<S: Field>(matrix: &[Vec<S>], rhs: &[S]) -> Solution<S> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "row count mismatch");
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<S>> = matrix.to_vec();
    let mut b: Vec<S> = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.times(&inv);
        }
        b[r] = b[r].times(&inv);
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let d = a[r][j].times(&f);
                a[i][j] = a[i][j].minus(&d);
            }
            b[i] = b[i].minus(&b[r].times(&f));
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    finish(pivots, cols, b)
}

fn finish<R: Ring>(pivots: Vec<usize>, cols: usize, b: Vec<R>) -> Solution<R> {
    let rank = pivots.len();
    let consistent = b[rank..].iter().all(|x| x.is_zero());
    if rank < cols || !consistent {
        return Solution::Report {
            rank,
            unknowns: cols,
            consistent,
        };
    }
    let mut x = vec![R::zero(); cols];
    for (i, c) in pivots.into_iter().enumerate() {
        x[c] = b[i].clone();
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn overdetermined_consistent() {
        let m = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)], vec![qi(2), qi(0)]];
        let sol = solve_exact(&LinearSystem { matrix: m, rhs: vec![qi(3), qi(1), qi(4)] });
        assert_eq!(sol, Solution::Unique(vec![qi(2), qi(1)]));
    }

    #[test]
    fn inconsistent_and_deficient() {
        let m = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        let sol = solve_exact(&LinearSystem { matrix: m.clone(), rhs: vec![qi(1), qi(3)] });
        assert_eq!(sol, Solution::Report { rank: 1, unknowns: 2, consistent: false });
        let sol = solve_exact(&LinearSystem { matrix: m, rhs: vec![qi(1), qi(2)] });
        assert_eq!(sol, Solution::Report { rank: 1, unknowns: 2, consistent: true });
    }

    proptest! {
        #[test]
        fn recovers_planted_solution(
            entries in prop::collection::vec(-6i64..7, 16),
            xs in prop::collection::vec((-9i64..10, 1i64..5), 4),
        ) {
            let m: Vec<Vec<Q>> = entries.chunks(4).map(|r| r.iter().map(|&v| qi(v)).collect()).collect();
            let x: Vec<Q> = xs.iter().map(|&(a, b)| q(a, b)).collect();
            let rhs: Vec<Q> = m.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
            match solve_exact(&LinearSystem { matrix: m, rhs }) {
                Solution::Unique(sol) => prop_assert_eq!(sol, x),
                Solution::Report { rank, consistent, .. } => {
                    prop_assert!(rank < 4);
                    prop_assert!(consistent);
                }
            }
        }
    }
}
