//! Per-modulus data: the cyclotomic polynomial and reductions of x^j, cached
//! process-wide behind a read-mostly lock.

use crate::arith::euler_phi;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;
use std::sync::Arc;

pub struct Table {
    pub m: u64,
    pub phi: usize,
    /// coefficients of Phi_m, low degree first, monic
    pub poly: Vec<i64>,
    /// x^j mod Phi_m for 0 <= j < m
    pub powers: Vec<Vec<i64>>,
}

static CACHE: Lazy<RwLock<HashMap<u64, Arc<Table>>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static POLYS: Lazy<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    if let Some(p) = POLYS.read().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for all proper divisors d
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = div_exact(&p, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    POLYS.write().insert(m, p.clone());
    p
}

fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + db];
        q[k] = c;
        if c != 0 {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= c * bi;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn table(m: u64) -> Arc<Table> {
    if let Some(t) = CACHE.read().get(&m) {
        return t.clone();
    }
    let poly = cyclotomic_poly(m).as_ref().clone();
    let phi = euler_phi(m as i64) as usize;
    assert_eq!(poly.len(), phi + 1);
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let t = Arc::new(Table { m, phi, poly, powers });
    CACHE.write().entry(m).or_insert(t).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient -2
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn powers_wrap() {
        let t = table(24);
        assert_eq!(t.phi, 8);
        // x^24 = 1: the next power after the table is x^0 again
        let mut one = vec![0; 8];
        one[0] = 1;
        assert_eq!(t.powers[0], one);
        // x^12 = -1
        let minus: Vec<i64> = one.iter().map(|x| -x).collect();
        assert_eq!(t.powers[12], minus);
    }

    #[test]
    fn concurrent_access() {
        let hs: Vec<_> = (0..8).map(|i| std::thread::spawn(move || table(60 + (i % 3) * 12).phi)).collect();
        for h in hs {
            assert!(h.join().unwrap() > 0);
        }
    }
}
