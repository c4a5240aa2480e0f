//! Fincke–Pohst enumeration of a translated lattice r0 + Z^n below a norm bound.
//! Interval bounds are computed in floating point with slack; membership is decided
//! by an exact integer norm carried along the search.

use crate::arith::Q;
use crate::matrix::IMat;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub struct CosetEnum {
    gram: IMat,
    n: usize,
    /// common denominator of the shift
    pub scale: i64,
    shift_scaled: Vec<i64>,
    shift_f: Vec<f64>,
    qd: Vec<f64>,
    qo: Vec<Vec<f64>>,
}

impl CosetEnum {
    pub fn new(gram: &IMat, shift: &[Q]) -> CosetEnum {
        let n = gram.len();
        let scale = shift.iter().fold(num_bigint::BigInt::one(), |a, s| a.lcm(s.denom())).to_i64().expect("shift denominator");
        let shift_scaled = shift.iter().map(|s| (s * Q::from_integer(scale.into())).to_integer().to_i64().unwrap()).collect();
        let shift_f = shift.iter().map(|s| s.numer().to_f64().unwrap() / s.denom().to_f64().unwrap()).collect();
        // exact Cholesky-type decomposition: xGx^t = sum_i qd_i (x_i + sum_{j>i} qo_ij x_j)^2
        let mut a: Vec<Vec<Q>> = gram.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        let mut qd = vec![0.0; n];
        let mut qo = vec![vec![0.0; n]; n];
        for i in 0..n {
            let p = a[i][i].clone();
            qd[i] = p.to_f64().unwrap();
            for j in i + 1..n {
                let f = &a[i][j] / &p;
                qo[i][j] = f.to_f64().unwrap();
            }
            for j in i + 1..n {
                for k in i + 1..n {
                    let t = &a[j][i] * &a[i][k] / &p;
                    a[j][k] -= t;
                }
            }
            for j in i + 1..n {
                a[j][i] = Q::zero();
                a[i][j] = Q::zero();
            }
        }
        CosetEnum { gram: gram.clone(), n, scale, shift_scaled, shift_f, qd, qo }
    }

    /// Calls `visit(x, s)` for every integer x with (r0+x)G(r0+x)^t <= 2*bound, where
    /// s = scale^2 * (r0+x)G(r0+x)^t exactly.
    pub fn run(&self, bound: &Q, mut visit: impl FnMut(&[i64], i64)) {
        if self.n == 0 {
            if bound >= &Q::zero() {
                visit(&[], 0);
            }
            return;
        }
        let two_b = bound * Q::from_integer(2.into());
        if two_b < Q::zero() {
            return;
        }
        let sc2 = Q::from_integer((self.scale as i128 * self.scale as i128).into());
        let limit = (two_b.clone() * sc2).floor().to_integer().to_i64().unwrap();
        let tf = two_b.to_f64().unwrap();
        let t0 = tf * (1.0 + 1e-9) + 1e-9;
        let mut x = vec![0i64; self.n];
        let mut y = vec![0f64; self.n];
        let w = vec![0i64; self.n];
        self.rec(self.n - 1, t0, 0, &w, &mut x, &mut y, limit, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(&self, i: usize, t: f64, p: i64, w: &[i64], x: &mut [i64], y: &mut [f64], limit: i64, visit: &mut impl FnMut(&[i64], i64)) {
        let mut c = 0.0;
        for j in i + 1..self.n {
            c -= self.qo[i][j] * y[j];
        }
        let half = (t.max(0.0) / self.qd[i]).sqrt();
        let lo = (c - half - self.shift_f[i] - 1e-7).ceil() as i64;
        let hi = (c + half - self.shift_f[i] + 1e-7).floor() as i64;
        for xi in lo..=hi {
            let yi = xi as f64 + self.shift_f[i];
            let rem = t - self.qd[i] * (yi - c) * (yi - c);
            if rem < -1e-7 * (1.0 + t.abs()) {
                continue;
            }
            let ys = self.shift_scaled[i] + xi * self.scale;
            let np = p + self.gram[i][i] * ys * ys + 2 * ys * w[i];
            x[i] = xi;
            y[i] = yi;
            if i == 0 {
                if np <= limit {
                    visit(x, np);
                }
            } else {
                let mut w2 = w.to_vec();
                for (k, wk) in w2.iter_mut().enumerate().take(i) {
                    *wk += self.gram[k][i] * ys;
                }
                self.rec(i - 1, rem, np, &w2, x, y, limit, visit);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};

    #[test]
    fn counts_z2() {
        let e = CosetEnum::new(&vec![vec![1, 0], vec![0, 1]], &[q(0), q(0)]);
        let mut cnt = 0;
        e.run(&qr(5, 2), |_, _| cnt += 1);
        // x^2+y^2 <= 5: 21 points
        assert_eq!(cnt, 21);
    }

    #[test]
    fn shifted_coset_matches_box() {
        let g = vec![vec![2, 1], vec![1, 2]];
        let sh = [qr(1, 3), qr(1, 3)];
        let e = CosetEnum::new(&g, &sh);
        let bound = q(7);
        let mut got = vec![];
        e.run(&bound, |x, s| got.push((x.to_vec(), s)));
        got.sort();
        let mut want = vec![];
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                let (u, v) = (3 * a + 1, 3 * b + 1);
                let s = 2 * u * u + 2 * u * v + 2 * v * v;
                if s <= 2 * 7 * 9 {
                    want.push((vec![a, b], s));
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }
}
