//! Smith normal form over the integers with exact big-integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

#[derive(Debug, Clone)]
pub struct Smith {
    /// Invariant factors `d_0 | d_1 | ...`, length `min(rows, cols)`; zeros
    /// trail.
    pub diag: Vec<BigInt>,
    /// Unimodular `U` (rows x rows) and `V` (cols x cols) with `U A V = S`.
    pub u: IMat,
    pub v: IMat,
}

pub fn to_big(a: &[Vec<i64>]) -> IMat {
    a.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, l| acc + &row[l] * &b[l][j]))
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_dst -= q * col_src`
fn col_axpy(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = &row[src] * q;
        row[dst] -= s;
    }
}

/// `row_dst -= q * row_src`
fn row_axpy(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(&src_row) {
        *x -= s * q;
    }
}

pub fn smith_normal_form(a: &IMat) -> Smith {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);
    let mut diag = vec![BigInt::zero(); steps];
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { diag, u, v };
            };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in (t + 1)..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = ((t + 1)..rows).find(|&i| ((t + 1)..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut m, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag[t] = m[t][t].clone();
    }
    Smith { diag, u, v }
}

/// Rank of an integer matrix.
pub fn rank(a: &IMat) -> usize {
    smith_normal_form(a).diag.iter().filter(|d| !d.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det_i64(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i64(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// gcd of all j x j minors, the product of the first j invariant factors.
    fn minor_gcd(a: &[Vec<i64>], j: usize) -> i64 {
        let rows = a.len();
        let cols = a[0].len();
        let mut g = 0i64;
        for rs in subsets(rows, j) {
            for cs in subsets(cols, j) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|r| cs.iter().map(|c| a[*r][*c]).collect()).collect();
                g = g.gcd(&det_i64(&sub));
            }
        }
        g
    }

    fn check(a: Vec<Vec<i64>>) {
        let big = to_big(&a);
        let s = smith_normal_form(&big);
        let prod = mat_mul(&mat_mul(&s.u, &big), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < s.diag.len() { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, expected, "U A V != S for {a:?}");
            }
        }
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        let mut acc = BigInt::one();
        for (j, d) in s.diag.iter().enumerate() {
            acc *= d;
            assert_eq!(acc, BigInt::from(minor_gcd(&a, j + 1)), "minor gcd mismatch for {a:?}");
        }
    }

    #[test]
    fn known_forms() {
        let s = smith_normal_form(&to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = smith_normal_form(&to_big(&[vec![2], vec![2], vec![-4]]));
        assert_eq!(s.diag, vec![BigInt::from(2)]);
        let s = smith_normal_form(&to_big(&[vec![0, 0], vec![0, 0]]));
        assert!(s.diag.iter().all(|d| d.is_zero()));
        check(vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
    }

    #[test]
    fn rank_of_dependent_columns() {
        assert_eq!(rank(&to_big(&[vec![1, 2], vec![2, 4], vec![3, 6]])), 1);
        assert_eq!(rank(&to_big(&[vec![1, 2], vec![2, 4], vec![3, 7]])), 2);
    }

    proptest! {
        #[test]
        fn matches_minor_gcds(rows in 1usize..5, cols in 1usize..4, seed in proptest::collection::vec(-6i64..7, 16)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(a);
        }
    }
}
