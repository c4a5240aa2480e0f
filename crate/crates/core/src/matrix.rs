//! Small dense integer and rational matrix routines.

use crate::arith::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn imul(a: &IMat, b: &IMat) -> IMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..m).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

pub fn to_q(a: &IMat) -> QMat {
    a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| r.iter().zip(b).fold(Q::zero(), |s, (x, row)| s + x * &row[j]))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vq_mul(v: &[Q], a: &QMat) -> Vec<Q> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| v.iter().zip(a).fold(Q::zero(), |s, (x, row)| s + x * &row[j])).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

/// Inverse over Q; `None` if singular.
pub fn qinv(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over Q.
pub fn qrank(a: &QMat) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Smith normal form: returns (U, D, V) with U*A*V = D diagonal, U and V unimodular,
/// and each diagonal entry dividing the next.
pub fn smith(a: &IMat) -> (IMat, IMat, IMat) {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut d: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut v: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i128).collect()).collect();
    let mut t = 0;
    while t < n.min(m) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        for row in d.iter_mut() {
            row.swap(t, bj);
        }
        for row in v.iter_mut() {
            row.swap(t, bj);
        }
        let mut dirty = false;
        for i in t + 1..n {
            let f = d[i][t].div_euclid(d[t][t]);
            if f != 0 {
                for j in 0..m {
                    d[i][j] -= f * d[t][j];
                }
                for j in 0..n {
                    u[i][j] -= f * u[t][j];
                }
            }
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..m {
            let f = d[t][j].div_euclid(d[t][t]);
            if f != 0 {
                for i in 0..n {
                    d[i][j] -= f * d[i][t];
                }
                for i in 0..m {
                    v[i][j] -= f * v[i][t];
                }
            }
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // pivot must divide the rest of the block
        let p = d[t][t];
        let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| d[i][j] % p != 0));
        if let Some(i) = bad {
            for j in 0..m {
                d[t][j] += d[i][j];
            }
            for j in 0..n {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if p < 0 {
            for j in 0..m {
                d[t][j] = -d[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let cv = |x: Vec<Vec<i128>>| -> IMat { x.into_iter().map(|r| r.into_iter().map(|e| e as i64).collect()).collect() };
    (cv(u), cv(d), cv(v))
}

/// Integer row reduction: returns (U, H) with U*A = H in row echelon form and U unimodular.
pub fn row_echelon(a: &IMat) -> (IMat, IMat) {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        loop {
            let piv = (r..n).filter(|&i| h[i][c] != 0).min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                let f = h[i][c].div_euclid(h[r][c]);
                if f != 0 {
                    for j in 0..m {
                        h[i][j] -= f * h[r][j];
                    }
                    for j in 0..n {
                        u[i][j] -= f * u[r][j];
                    }
                }
                done &= h[i][c] == 0;
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    let cv = |x: Vec<Vec<i128>>| -> IMat { x.into_iter().map(|r| r.into_iter().map(|e| e as i64).collect()).collect() };
    (cv(u), cv(h))
}

pub fn is_zero_row(r: &[i64]) -> bool {
    r.iter().all(|&x| x == 0)
}

pub fn qabs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&vec![vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det(&vec![vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&vec![]), BigInt::from(1));
    }

    fn square(n: usize) -> impl Strategy<Value = IMat> {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, n), n)
    }

    proptest! {
        #[test]
        fn smith_is_a_factorisation(a in (1usize..5).prop_flat_map(square)) {
            let (u, d, v) = smith(&a);
            prop_assert_eq!(imul(&imul(&u, &a), &v), d.clone());
            prop_assert_eq!(det(&u).abs(), BigInt::from(1));
            prop_assert_eq!(det(&v).abs(), BigInt::from(1));
            let n = a.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j { prop_assert_eq!(d[i][j], 0); }
                }
                if i + 1 < n && d[i][i] != 0 { prop_assert_eq!(d[i + 1][i + 1] % d[i][i], 0); }
                prop_assert!(d[i][i] >= 0);
            }
        }

        #[test]
        fn echelon_is_unimodular(a in (1usize..5).prop_flat_map(square)) {
            let (u, h) = row_echelon(&a);
            prop_assert_eq!(imul(&u, &a), h);
            prop_assert_eq!(det(&u).abs(), BigInt::from(1));
        }
    }
}
