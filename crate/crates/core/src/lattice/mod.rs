//! Integral positive definite lattices given by Gram matrices, with the invariants
//! the rest of the crate needs: shadow cosets, level, 2-adic rank.

pub mod enumerate;
pub mod named;
pub mod two_adic;

use crate::arith::{frac, lcm, q, Q};
use crate::error::{Error, Result};
use crate::matrix::{self, IMat, QMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowCoset {
    /// canonical representative, coordinates in [0,1)
    #[serde(with = "crate::serial::qvec")]
    pub rep: Vec<Q>,
    /// beta(rep) mod 1, in [0,1)
    #[serde(with = "crate::serial::qstr")]
    pub beta: Q,
    /// whether 2*rep lies in L
    pub order2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInfo {
    pub rank: usize,
    pub det: i64,
    pub even: bool,
    pub level: i64,
    pub n2: usize,
    pub elementary_divisors: Vec<i64>,
    pub shadow: Vec<ShadowCoset>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lattice {
    gram: IMat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip)]
    info: OnceCell<Arc<LatticeInfo>>,
}

impl PartialEq for Lattice {
    fn eq(&self, o: &Self) -> bool {
        self.gram == o.gram
    }
}
impl Eq for Lattice {}

impl Lattice {
    /// Validates a Gram matrix: square, symmetric, positive definite.
    pub fn new(gram: IMat) -> Result<Lattice> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonSymmetric);
                }
            }
        }
        for k in 1..=n {
            let minor: IMat = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = matrix::det(&minor);
            if d.is_zero() && k == n && (0..n).all(|i| gram[i][i] >= 0) {
                return Err(Error::Degenerate);
            }
            if !d.is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(Lattice { gram, name: None, info: OnceCell::new() })
    }

    pub fn from_json(s: &str) -> Result<Lattice> {
        let l: Lattice = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let name = l.name.clone();
        let mut v = Lattice::new(l.gram)?;
        v.name = name;
        Ok(v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn named(mut self, name: &str) -> Lattice {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram_q(&self) -> QMat {
        matrix::to_q(&self.gram)
    }

    pub fn gram_inv(&self) -> QMat {
        matrix::qinv(&self.gram_q()).expect("nondegenerate")
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// beta(x, y) = x G y^t
    pub fn bil(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    s += xi * yj * Q::from_integer(self.gram[i][j].into());
                }
            }
        }
        s
    }

    /// beta(x) = x G x^t / 2
    pub fn beta(&self, x: &[Q]) -> Q {
        self.bil(x, x) / q(2)
    }

    pub fn info(&self) -> &LatticeInfo {
        self.info.get_or_init(|| Arc::new(compute_info(&self.gram)))
    }

    pub fn det(&self) -> i64 {
        self.info().det
    }
    pub fn level(&self) -> i64 {
        self.info().level
    }
    pub fn n2(&self) -> usize {
        self.info().n2
    }
    pub fn shadow(&self) -> &[ShadowCoset] {
        &self.info().shadow
    }

    /// Reduces a vector modulo L to [0,1)^n.
    pub fn canonical(&self, v: &[Q]) -> Vec<Q> {
        v.iter().map(frac).collect()
    }

    /// Index of the shadow coset containing v (which must lie in the shadow).
    pub fn coset_index(&self, v: &[Q]) -> Option<usize> {
        let c = self.canonical(v);
        self.shadow().binary_search_by(|s| s.rep.cmp(&c)).ok()
    }

    /// Index of the coset of -r for the coset with index i.
    pub fn neg_index(&self, i: usize) -> usize {
        let neg: Vec<Q> = self.shadow()[i].rep.iter().map(|x| -x).collect();
        self.coset_index(&neg).expect("shadow is symmetric")
    }

    /// Smallest d with d * sh(L) inside Z^n.
    pub fn shadow_denominator(&self) -> i64 {
        let mut d = BigInt::one();
        for c in self.shadow() {
            for x in &c.rep {
                d = d.lcm(x.denom());
            }
        }
        d.to_i64().unwrap()
    }

    /// The even sublattice together with its basis (rows, in coordinates of L).
    pub fn even_sublattice(&self) -> (Lattice, IMat) {
        let b = even_basis(&self.gram);
        let g = matrix::imul(&matrix::imul(&b, &self.gram), &matrix::transpose(&b));
        (Lattice::new(g).expect("sublattice of a positive definite lattice"), b)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j];
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = other.gram[i][j];
            }
        }
        Lattice::new(g).unwrap()
    }

    /// L(m): the same module with the form scaled by m.
    pub fn rescale(&self, m: i64) -> Result<Lattice> {
        if m <= 0 {
            return Err(Error::NotPositiveDefinite);
        }
        Lattice::new(self.gram.iter().map(|r| r.iter().map(|x| x * m).collect()).collect())
    }
}

/// Quotient of a positive semi-definite Gram matrix by its radical. Returns the
/// quotient lattice and a complement basis (rows) of the radical.
pub fn radical_quotient(gram: &IMat) -> Result<(Lattice, IMat)> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NonSymmetric);
            }
        }
    }
    let (u, h) = matrix::row_echelon(gram);
    let b: IMat = (0..n).filter(|&i| !matrix::is_zero_row(&h[i])).map(|i| u[i].clone()).collect();
    let g = matrix::imul(&matrix::imul(&b, gram), &matrix::transpose(&b));
    match Lattice::new(g) {
        Ok(l) => Ok((l, b)),
        Err(_) => Err(Error::NotSemiDefinite),
    }
}

fn even_basis(g: &IMat) -> IMat {
    let n = g.len();
    let odd: Vec<usize> = (0..n).filter(|&i| g[i][i] % 2 != 0).collect();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| (i == j) as i64).collect() };
    if odd.is_empty() {
        return matrix::identity(n);
    }
    let mut rows: Vec<(usize, Vec<i64>)> = Vec::new();
    for i in 0..n {
        if g[i][i] % 2 == 0 {
            rows.push((i, unit(i)));
        }
    }
    let k = odd.len();
    if k == 1 {
        let mut v = unit(odd[0]);
        v[odd[0]] = 2;
        rows.push((odd[0], v));
    } else {
        for t in 0..k - 1 {
            let mut v = unit(odd[t]);
            v[odd[t + 1]] = -1;
            rows.push((odd[t], v));
        }
        let mut v = unit(odd[k - 2]);
        v[odd[k - 1]] = 1;
        rows.push((odd[k - 1], v));
    }
    rows.sort_by_key(|r| r.0);
    rows.into_iter().map(|r| r.1).collect()
}

fn level_of_even(g: &IMat) -> i64 {
    let inv = matrix::qinv(&matrix::to_q(g)).unwrap();
    let mut l = 1i64;
    for (i, row) in inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let b = x.denom().to_i64().unwrap();
            let need = if i == j && x.numer().is_odd() { 2 * b } else { b };
            l = lcm(l, need);
        }
    }
    l
}

fn compute_info(g: &IMat) -> LatticeInfo {
    let n = g.len();
    let det = matrix::det(g).to_i64().expect("det fits in i64");
    let even = (0..n).all(|i| g[i][i] % 2 == 0);
    let (u, d, _) = matrix::smith(g);
    let divs: Vec<i64> = (0..n).map(|i| d[i][i]).collect();
    let gq = matrix::to_q(g);
    let ginv = matrix::qinv(&gq).unwrap_or_default();
    // base shadow vector: r0 G = diag/2
    let half: Vec<Q> = (0..n).map(|i| Q::new(g[i][i].into(), 2.into())).collect();
    let r0 = matrix::vq_mul(&half, &ginv);
    // dual/L representatives: sum (a_i/d_i) U_i
    let mut reps: Vec<Vec<Q>> = vec![r0.iter().map(frac).collect()];
    for i in 0..n {
        let di = divs[i];
        if di == 1 {
            continue;
        }
        let mut next = Vec::with_capacity(reps.len() * di as usize);
        for r in &reps {
            for a in 0..di {
                let v: Vec<Q> = (0..n).map(|j| frac(&(&r[j] + Q::new((a * u[i][j]).into(), di.into())))).collect();
                next.push(v);
            }
        }
        reps = next;
    }
    reps.sort();
    reps.dedup();
    assert_eq!(reps.len() as i64, det, "shadow coset count");
    let beta = |x: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                s += &x[i] * &x[j] * Q::from_integer(g[i][j].into());
            }
        }
        s / q(2)
    };
    let two = q(2);
    let shadow = reps
        .into_iter()
        .map(|r| {
            let b = frac(&beta(&r));
            let order2 = r.iter().all(|x| (x * &two).denom().is_one());
            ShadowCoset { rep: r, beta: b, order2 }
        })
        .collect();
    let level = if n == 0 {
        1
    } else {
        level_of_even(&{
            let b = even_basis(g);
            matrix::imul(&matrix::imul(&b, g), &matrix::transpose(&b))
        })
    };
    LatticeInfo { rank: n, det, even, level, n2: two_adic::unimodular_rank(g), elementary_divisors: divs, shadow }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::qr;
    use proptest::prelude::*;

    fn lat(g: &[&[i64]]) -> Lattice {
        Lattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn basic_invariants() {
        let z = lat(&[&[1]]);
        assert_eq!((z.det(), z.is_even(), z.level(), z.n2()), (1, false, 8, 1));
        let a2 = lat(&[&[2, 1], &[1, 2]]);
        assert_eq!((a2.det(), a2.is_even(), a2.level(), a2.n2()), (3, true, 3, 2));
        let d4 = named::d(4);
        // dual vectors of D4 have norm 1 at most up to L, so the level is 2
        assert_eq!((d4.det(), d4.is_even(), d4.level(), d4.n2()), (4, true, 2, 2));
    }

    #[test]
    fn z3_rescaled_shadow() {
        let l = lat(&[&[3]]);
        let reps: Vec<Q> = l.shadow().iter().map(|c| c.rep[0].clone()).collect();
        assert_eq!(reps, vec![qr(1, 6), qr(1, 2), qr(5, 6)]);
        let betas: Vec<Q> = l.shadow().iter().map(|c| c.beta.clone()).collect();
        assert_eq!(betas, vec![qr(1, 24), qr(9, 24), qr(1, 24)]);
    }

    #[test]
    fn validation() {
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![3, 1]]).unwrap_err(), Error::NonSymmetric);
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![2, 1]]).unwrap_err(), Error::NotPositiveDefinite);
        assert_eq!(Lattice::new(vec![vec![1, 1], vec![1, 1]]).unwrap_err(), Error::Degenerate);
    }

    #[test]
    fn radical() {
        let (l, _) = radical_quotient(&vec![vec![2, 2], vec![2, 2]]).unwrap();
        assert_eq!(l.gram(), &vec![vec![2]]);
        let (l, _) = radical_quotient(&vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(l.rank(), 0);
        assert_eq!(radical_quotient(&vec![vec![1, 2], vec![2, 1]]).unwrap_err(), Error::NotSemiDefinite);
    }

    #[test]
    fn even_sublattice_of_z3_is_d3() {
        let (ev, _) = named::z(3).even_sublattice();
        assert_eq!(ev.gram(), named::d(3).gram());
        assert_eq!(ev.det(), 4);
    }

    #[test]
    fn json_roundtrip() {
        let l = named::a(2).named("A2");
        let back = Lattice::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.name(), Some("A2"));
    }

    pub fn gram_strategy() -> impl Strategy<Value = IMat> {
        (1usize..4).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, n), n).prop_map(move |b| {
                // B B^t + I is positive definite
                let mut g = matrix::imul(&b, &matrix::transpose(&b));
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] += 1;
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn shadow_properties(g in gram_strategy()) {
            let l = Lattice::new(g).unwrap();
            let n = l.rank();
            let info = l.info().clone();
            prop_assert_eq!(info.shadow.len() as i64, info.det);
            prop_assert_eq!(info.elementary_divisors.iter().product::<i64>(), info.det);
            let half: Vec<Q> = (0..n).map(|i| Q::new(l.gram()[i][i].into(), 2.into())).collect();
            for c in &info.shadow {
                // r G = diag/2 mod Z^n
                let rg = matrix::vq_mul(&c.rep, &l.gram_q());
                for i in 0..n { prop_assert!((&rg[i] - &half[i]).denom().is_one()); }
                prop_assert!(c.rep.iter().all(|x| x >= &Q::zero() && x < &q(1)));
                prop_assert_eq!(&c.beta, &frac(&l.beta(&c.rep)));
            }
            let ord2 = info.shadow.iter().filter(|c| c.order2).count();
            prop_assert_eq!(ord2, 1usize << (n - info.n2));
            for (i, c) in info.shadow.iter().enumerate() {
                if c.order2 {
                    // e(beta(2r)) = (-1)^n2
                    let two: Vec<Q> = c.rep.iter().map(|x| x * q(2)).collect();
                    let b = l.beta(&two);
                    prop_assert!(b.denom().is_one() || (&b * q(2)).denom().is_one());
                    let sgn = if b.denom().is_one() { 1 } else { -1 };
                    prop_assert_eq!(sgn, if info.n2.is_multiple_of(2) { 1 } else { -1 });
                    prop_assert_eq!(l.neg_index(i), i);
                }
            }
            let (ev, _) = l.even_sublattice();
            prop_assert!(ev.is_even());
            prop_assert_eq!(ev.det(), if l.is_even() { info.det } else { 4 * info.det });
            prop_assert_eq!(ev.level(), info.level);
            if n % 2 == 1 { prop_assert_eq!(info.level % 4, 0); }
        }
    }
}
