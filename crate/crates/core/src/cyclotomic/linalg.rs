//! Row reduction over Q(zeta_M).

use super::CycloNum;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut [Vec<CycloNum>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].inv().unwrap();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        let t = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<CycloNum>]) -> usize {
    let mut b = a.to_vec();
    rref(&mut b).len()
}

/// Basis of {x : A x = 0}.
pub fn nullspace(a: &[Vec<CycloNum>], cols: usize, m: u64) -> Vec<Vec<CycloNum>> {
    let mut b = a.to_vec();
    let piv = rref(&mut b);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycloNum::zero(m); cols];
            v[f] = CycloNum::one(m);
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -&b[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_vandermonde_like() {
        let w = CycloNum::root(3, 1);
        let one = CycloNum::one(3);
        let a = vec![vec![one.clone(), w.clone()], vec![w.clone(), &w * &w]];
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a, 2, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((&(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1])).is_zero());
    }
}
