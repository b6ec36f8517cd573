//! Small exact matrix helpers for ranks up to eight.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<Ratio<i64>>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn mul_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Exact determinant by fraction-free elimination.
pub fn det(a: &IntMatrix) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).expect("determinant overflow")
}

/// Exact inverse over the rationals. Returns `None` for singular input.
pub fn inverse(a: &IntMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut m: RatMatrix = a
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Ratio::one() } else { Ratio::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let piv = m[col][col];
        for j in 0..n {
            m[col][j] /= piv;
            inv[col][j] /= piv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let a = m[col][j];
                    let b = inv[col][j];
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    Some(inv)
}
