//! Brute-force reference computations that share no code with the main algorithms.

use std::collections::BTreeMap;

/// q^{1/8}(zeta^{1/2} - zeta^{-1/2}) prod_{m>=1} (1-q^m)(1-q^m zeta)(1-q^m zeta^{-1}),
/// as {(a, 2u) -> coefficient of q^{a+1/8} zeta^u} for a <= n.
pub fn triple_product(n: i64) -> BTreeMap<(i64, i64), i64> {
    let mut p: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    p.insert((0, 0), 1);
    for m in 1..=n {
        for shift in [0, 1, -1] {
            let mut next = p.clone();
            for (&(a, b), &c) in &p {
                if a + m <= n {
                    *next.entry((a + m, b + shift)).or_insert(0) -= c;
                }
            }
            next.retain(|_, c| *c != 0);
            p = next;
        }
    }
    let mut out = BTreeMap::new();
    for ((a, b), c) in p {
        *out.entry((a, 2 * b + 1)).or_insert(0) += c;
        *out.entry((a, 2 * b - 1)).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Number of vectors of norm r.r = 2m, m <= n, in {x in Z^8 or (1/2+Z)^8 : sum x even}.
pub fn e8_model_counts(n: usize) -> Vec<u64> {
    let top = 8 * n;
    // integer part: state (sum of squares, sum mod 2); half part on y = 2x: (sum y^2, sum y mod 4)
    let mut ints = vec![[0u64; 2]; 2 * n + 1];
    ints[0][0] = 1;
    let mut halves = vec![[0u64; 4]; top + 1];
    halves[0][0] = 1;
    for _ in 0..8 {
        let mut ni = vec![[0u64; 2]; 2 * n + 1];
        for s in 0..=2 * n {
            for p in 0..2 {
                let c = ints[s][p];
                if c == 0 {
                    continue;
                }
                let mut x: i64 = 0;
                while (s as i64) + x * x <= 2 * n as i64 {
                    for v in if x == 0 { vec![0] } else { vec![x, -x] } {
                        let t = s + (v * v) as usize;
                        ni[t][(p as i64 + v).rem_euclid(2) as usize] += c;
                    }
                    x += 1;
                }
            }
        }
        ints = ni;
        let mut nh = vec![[0u64; 4]; top + 1];
        for s in 0..=top {
            for p in 0..4 {
                let c = halves[s][p];
                if c == 0 {
                    continue;
                }
                let mut y: i64 = 1;
                while (s as i64) + y * y <= top as i64 {
                    for v in [y, -y] {
                        let t = s + (v * v) as usize;
                        nh[t][(p as i64 + v).rem_euclid(4) as usize] += c;
                    }
                    y += 2;
                }
            }
        }
        halves = nh;
    }
    (0..=n).map(|m| ints[2 * m][0] + halves[8 * m][0]).collect()
}

/// 1 + 240 sum sigma_3(m) q^m by trial division.
pub fn e4_coefficients(n: usize) -> Vec<u64> {
    (0..=n)
        .map(|m| if m == 0 { 1 } else { 240 * (1..=m).filter(|d| m % d == 0).map(|d| (d as u64).pow(3)).sum::<u64>() })
        .collect()
}

/// dim M_w(1) by counting 4a + 6b = w.
pub fn count_e4_e6_monomials(w: i64) -> i64 {
    if w < 0 {
        return 0;
    }
    (0..=w / 4).filter(|a| (w - 4 * a) % 6 == 0).count() as i64
}

/// Number of monomials eta^l E4^a E6^b (0 <= l < 24) of weight 2k2/2 and character h.
pub fn eta_e4_e6_count(k2: i64, h: i64) -> i64 {
    let l = h.rem_euclid(24);
    let w2 = k2 - l;
    if w2 < 0 || w2 % 2 != 0 {
        return 0;
    }
    count_e4_e6_monomials(w2 / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = triple_product(2);
        assert_eq!(t.get(&(0, 1)), Some(&1));
        assert_eq!(t.get(&(0, -1)), Some(&-1));
        assert_eq!(t.get(&(1, 3)), Some(&-1));
        assert_eq!(&e8_model_counts(2), &[1, 240, 2160]);
        assert_eq!(&e4_coefficients(2), &[1, 240, 2160]);
        assert_eq!(count_e4_e6_monomials(12), 2);
        assert_eq!(count_e4_e6_monomials(2), 0);
        assert_eq!(eta_e4_e6_count(8, 0), 1);
    }
}
