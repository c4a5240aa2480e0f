//! Jordan splitting over the 2-adic integers, enough to read off the rank of the
//! unimodular constituent.

use crate::arith::Q;
use crate::matrix::IMat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn val2(x: &Q) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let tz = |b: &BigInt| b.abs().trailing_zeros().unwrap_or(0) as i64;
    Some(tz(x.numer()) - tz(x.denom()))
}

/// Jordan blocks as (rank, valuation) in the order they are split off.
pub fn jordan_blocks(g: &IMat) -> Vec<(usize, i64)> {
    let mut m: Vec<Vec<Q>> = g.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let mut blocks = Vec::new();
    while !m.is_empty() {
        let n = m.len();
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..n {
            for j in 0..n {
                if let Some(v) = val2(&m[i][j]) {
                    // ties: diagonal first, then lowest row
                    let key = (v, (i != j) as usize, i, j);
                    let better = match best {
                        None => true,
                        Some((bv, bi, bj)) => key < (bv, (bi != bj) as usize, bi, bj),
                    };
                    if better {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else {
            // zero block: degenerate input, record as infinite valuation
            blocks.push((n, i64::MAX));
            break;
        };
        if i == j {
            let p = m[i][i].clone();
            let rest: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let mut next = vec![vec![Q::zero(); n - 1]; n - 1];
            for (a, &r) in rest.iter().enumerate() {
                for (b, &c) in rest.iter().enumerate() {
                    next[a][b] = &m[r][c] - &m[r][i] * &m[i][c] / &p;
                }
            }
            blocks.push((1, v));
            m = next;
        } else {
            let (a, b, c) = (m[i][i].clone(), m[i][j].clone(), m[j][j].clone());
            let d = &a * &c - &b * &b;
            // inverse of [[a,b],[b,c]]
            let inv = [[&c / &d, -&b / &d], [-&b / &d, &a / &d]];
            let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            let mut next = vec![vec![Q::zero(); n - 2]; n - 2];
            for (x, &r) in rest.iter().enumerate() {
                for (y, &s) in rest.iter().enumerate() {
                    let left = [&m[r][i], &m[r][j]];
                    let right = [&m[i][s], &m[j][s]];
                    let mut corr = Q::zero();
                    for p in 0..2 {
                        for q in 0..2 {
                            corr += left[p] * &inv[p][q] * right[q];
                        }
                    }
                    next[x][y] = &m[r][s] - corr;
                }
            }
            blocks.push((2, v));
            m = next;
        }
    }
    blocks
}

pub fn unimodular_rank(g: &IMat) -> usize {
    jordan_blocks(g).iter().filter(|b| b.1 == 0).map(|b| b.0).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(unimodular_rank(&vec![vec![1]]), 1);
        assert_eq!(unimodular_rank(&vec![vec![2]]), 0);
        assert_eq!(unimodular_rank(&vec![vec![2, 1], vec![1, 2]]), 2);
        assert_eq!(unimodular_rank(&vec![vec![3]]), 1);
        assert_eq!(jordan_blocks(&vec![vec![2, 1], vec![1, 2]]), vec![(2, 0)]);
    }
}
