//! Root lattices, Z^n and rescalings.

use super::Lattice;
use crate::matrix::IMat;
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

static DATA: Lazy<BTreeMap<String, IMat>> =
    Lazy::new(|| serde_json::from_str(include_str!("../../data/lattices.json")).expect("lattice data"));

pub fn data(key: &str) -> Option<IMat> {
    DATA.get(key).cloned()
}

/// Z^n
pub fn z(n: usize) -> Lattice {
    Lattice::new(crate::matrix::identity(n)).unwrap().named(&format!("Z^{n}"))
}

/// Z(m): rank one with Gram [m]
pub fn zm(m: i64) -> Lattice {
    Lattice::new(vec![vec![m]]).unwrap().named(&format!("Z({m})"))
}

/// A_n with Gram 2 on the diagonal and 1 next to it.
pub fn a(n: usize) -> Lattice {
    let g = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { 1 } else { 0 }).collect()).collect();
    Lattice::new(g).unwrap().named(&format!("A{n}"))
}

/// D_n for n >= 3 in the basis e1-e2, ..., e_{n-1}-e_n, e_{n-1}+e_n.
pub fn d(n: usize) -> Lattice {
    assert!(n >= 3);
    let b = d_basis(n);
    let g = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| b[i][k] * b[j][k]).sum()).collect()).collect();
    Lattice::new(g).unwrap().named(&format!("D{n}"))
}

/// Rows: the D_n basis in coordinates of Z^n.
pub fn d_basis(n: usize) -> IMat {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n - 1 {
        b[i][i] = 1;
        b[i][i + 1] = -1;
    }
    b[n - 1][n - 2] = 1;
    b[n - 1][n - 1] = 1;
    b
}

pub fn e(n: usize) -> Option<Lattice> {
    let key = format!("E{n}");
    data(&key).map(|g| Lattice::new(g).unwrap().named(&key))
}

pub fn e8() -> Lattice {
    e(8).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{imul, transpose};

    #[test]
    fn table_matches_generators() {
        for n in 1..=3 {
            assert_eq!(&data(&format!("A{n}")).unwrap(), a(n).gram());
        }
        for n in 3..=5 {
            assert_eq!(&data(&format!("D{n}")).unwrap(), d(n).gram());
        }
    }

    #[test]
    fn exceptional_invariants() {
        let e6 = e(6).unwrap();
        let e7 = e(7).unwrap();
        let e8 = e8();
        assert_eq!((e6.det(), e6.level(), e6.is_even()), (3, 3, true));
        assert_eq!((e7.det(), e7.level(), e7.is_even()), (2, 4, true));
        assert_eq!((e8.det(), e8.level(), e8.n2()), (1, 1, 8));
        assert!(e(9).is_none());
    }

    #[test]
    fn e8_model_basis() {
        let b = data("E8_basis_doubled").unwrap();
        let g = imul(&b, &transpose(&b));
        let g: IMat = g.iter().map(|r| r.iter().map(|x| x / 4).collect()).collect();
        assert_eq!(&g, e8().gram());
    }
}
