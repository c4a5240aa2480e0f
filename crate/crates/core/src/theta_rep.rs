//! The representation of the metaplectic group on W(L), the space of functions on the
//! shadow satisfying lambda(r + x) = e(beta(x)) lambda(r). The basis is indexed by the
//! shadow cosets in canonical order.

use crate::arith::{lcm, q, qr, Q};
use crate::cyclotomic::gauss::{chi_rootsum, field_modulus, sqrt_rootsum};
use crate::cyclotomic::{linalg, CycloNum, RootSum};
use crate::lattice::Lattice;
use num_traits::ToPrimitive;
use serde::Serialize;

pub type CMat = Vec<Vec<CycloNum>>;

#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub m: u64,
    pub t: CMat,
    pub s: CMat,
    pub z: CMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub s2_is_z: bool,
    pub st_cubed_is_z: bool,
    pub z2_is_sign: bool,
    pub z4_is_one: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.s2_is_z && self.st_cubed_is_z && self.z2_is_sign && self.z4_is_one
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Traces {
    pub t: CycloNum,
    pub s: CycloNum,
    pub z: CycloNum,
    pub r: CycloNum,
    pub zr: CycloNum,
}

fn den_of(x: &Q) -> i64 {
    x.denom().to_i64().unwrap()
}

pub fn matmul(a: &CMat, b: &CMat, m: u64) -> CMat {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut s = CycloNum::zero(m);
                    for (l, x) in a[i].iter().enumerate() {
                        if !x.is_zero() && !b[l][j].is_zero() {
                            s = &s + &(x * &b[l][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn trace(a: &CMat, m: u64) -> CycloNum {
    a.iter().enumerate().fold(CycloNum::zero(m), |s, (i, r)| &s + &r[i])
}

fn scalar_identity(n: usize, c: &CycloNum, m: u64) -> CMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { c.clone() } else { CycloNum::zero(m) }).collect()).collect()
}

pub fn rep_matrices(l: &Lattice) -> RepMatrices {
    let m = field_modulus(l);
    let sh = l.shadow();
    let d = sh.len();
    let n = l.rank() as i64;
    let t = (0..d)
        .map(|i| (0..d).map(|j| if i == j { CycloNum::e(m, &-&sh[i].beta) } else { CycloNum::zero(m) }).collect())
        .collect();
    // e(n/8) / sqrt(det) = e(n/8) sqrt(det) / det
    let pre = RootSum::e(8, &qr(n, 8)).mul(&sqrt_rootsum(d as i64)).scale(&qr(1, d as i64)).reduce_to(m);
    let s = (0..d)
        .map(|i| (0..d).map(|j| &pre * &CycloNum::e(m, &l.bil(&sh[i].rep, &sh[j].rep))).collect())
        .collect();
    let mut z = vec![vec![CycloNum::zero(m); d]; d];
    let i_n = CycloNum::e(4, &qr(n, 4)).coerce(m);
    for r in 0..d {
        let rp = l.neg_index(r);
        let sum: Vec<Q> = sh[r].rep.iter().zip(&sh[rp].rep).map(|(a, b)| a + b).collect();
        z[rp][r] = &i_n * &CycloNum::e(m, &l.beta(&sum));
    }
    RepMatrices { m, t, s, z }
}

pub fn verify_relations(rm: &RepMatrices, rank: usize) -> RelationReport {
    let m = rm.m;
    let d = rm.s.len();
    let s2 = matmul(&rm.s, &rm.s, m);
    let st = matmul(&rm.s, &rm.t, m);
    let st3 = matmul(&matmul(&st, &st, m), &st, m);
    let z2 = matmul(&rm.z, &rm.z, m);
    let z4 = matmul(&z2, &z2, m);
    let sign = CycloNum::from_q(m, &q(if rank.is_multiple_of(2) { 1 } else { -1 }));
    RelationReport {
        s2_is_z: s2 == rm.z,
        st_cubed_is_z: st3 == rm.z,
        z2_is_sign: z2 == scalar_identity(d, &sign, m),
        z4_is_one: z4 == scalar_identity(d, &CycloNum::one(m), m),
    }
}

/// Traces read off the matrices; R = S T.
pub fn traces(rm: &RepMatrices) -> Traces {
    let m = rm.m;
    let r = matmul(&rm.s, &rm.t, m);
    let zr = matmul(&rm.z, &r, m);
    Traces { t: trace(&rm.t, m), s: trace(&rm.s, m), z: trace(&rm.z, m), r: trace(&r, m), zr: trace(&zr, m) }
}

/// The same traces from the closed forms in terms of Gauss sums and n2.
pub fn closed_form_traces(l: &Lattice) -> Traces {
    let m = field_modulus(l);
    let n = l.rank() as i64;
    let n2 = l.n2() as i64;
    let mut tt = RootSum::zero(m);
    for c in l.shadow() {
        tt = tt.add(&RootSum::e(m, &-&c.beta));
    }
    let sign = if n2 % 2 == 0 { 1 } else { -1 };
    let z = RootSum::e(4, &qr(n, 4)).scale(&q(sign * (1i64 << (n - n2))));
    Traces {
        t: tt.reduce_to(m),
        s: RootSum::e(8, &qr(n, 8)).mul(&chi_rootsum(l, 2)).reduce_to(m),
        z: z.reduce_to(m),
        r: RootSum::e(4, &qr(n, 4)).reduce_to(m),
        zr: RootSum::e(8, &qr(3 * n, 8)).mul(&chi_rootsum(l, -3)).reduce_to(m),
    }
}

/// Cosets whose beta is congruent to h/24, i.e. the e(-h/24)-eigenspace of T.
pub fn t_eigen_support(l: &Lattice, h: i64) -> Vec<usize> {
    let target = crate::arith::frac(&qr(h, 24));
    l.shadow().iter().enumerate().filter(|(_, c)| c.beta == target).map(|(i, _)| i).collect()
}

/// Linear system whose kernel is the joint eigenspace, restricted to the T-support.
/// Rows are all cosets x, columns the support X:
///   sum_y e(beta(x,y)) lambda_y - e((h-n)/8) sqrt(det) [x in X] lambda_x = 0.
fn singular_system(l: &Lattice, h: i64) -> (CMat, Vec<usize>, u64) {
    let sh = l.shadow();
    let supp = t_eigen_support(l, h);
    let n = l.rank() as i64;
    let sq = sqrt_rootsum(l.det());
    let c_rs = RootSum::e(8, &qr(h - n, 8)).mul(&sq);
    let mut m = lcm(8, sq.m as i64);
    let mut bils = vec![vec![Q::from_integer(0.into()); supp.len()]; sh.len()];
    for (x, cx) in sh.iter().enumerate() {
        for (k, &y) in supp.iter().enumerate() {
            let b = l.bil(&cx.rep, &sh[y].rep);
            m = lcm(m, den_of(&b));
            bils[x][k] = b;
        }
    }
    let m = m as u64;
    let c = c_rs.reduce_to(m);
    let rows = (0..sh.len())
        .map(|x| {
            supp.iter()
                .enumerate()
                .map(|(k, &y)| {
                    let v = CycloNum::e(m, &bils[x][k]);
                    if x == y {
                        &v - &c
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    (rows, supp, m)
}

/// dim { lambda in W(L) : T lambda = e(-h/24) lambda, S lambda = e(h/8) lambda }.
pub fn singular_dimension(l: &Lattice, h: i64) -> usize {
    let (a, supp, _) = singular_system(l, h);
    if supp.is_empty() {
        return 0;
    }
    supp.len() - linalg::rank(&a)
}

/// Basis of the joint eigenspace as full coordinate vectors on W(L).
pub fn singular_basis(l: &Lattice, h: i64) -> Vec<Vec<CycloNum>> {
    let (a, supp, m) = singular_system(l, h);
    if supp.is_empty() {
        return vec![];
    }
    linalg::nullspace(&a, supp.len(), m)
        .into_iter()
        .map(|v| {
            let mut full = vec![CycloNum::zero(m); l.shadow().len()];
            for (k, &y) in supp.iter().enumerate() {
                full[y] = v[k].clone();
            }
            full
        })
        .collect()
}

/// Checks the eigen-equations directly with the full matrices.
pub fn is_singular_vector(l: &Lattice, h: i64, v: &[CycloNum]) -> bool {
    let rm = rep_matrices(l);
    let m = rm.m;
    let col: CMat = v.iter().map(|x| vec![x.coerce(lcm(m as i64, x.modulus() as i64) as u64)]).collect();
    let mm = lcm(m as i64, col.iter().map(|r| r[0].modulus() as i64).fold(1, lcm)) as u64;
    let lift = |a: &CMat| -> CMat { a.iter().map(|r| r.iter().map(|x| x.coerce(mm)).collect()).collect() };
    let col = lift(&col);
    let tv = matmul(&lift(&rm.t), &col, mm);
    let sv = matmul(&lift(&rm.s), &col, mm);
    let et = CycloNum::e(24, &qr(-h, 24)).coerce(mm);
    let es = CycloNum::e(8, &qr(h, 8)).coerce(mm);
    (0..v.len()).all(|i| tv[i][0] == &et * &col[i][0] && sv[i][0] == &es * &col[i][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named;

    #[test]
    fn z_anchor() {
        let rm = rep_matrices(&named::z(1));
        assert_eq!(rm.t[0][0], CycloNum::e(8, &qr(-1, 8)));
        assert_eq!(rm.s[0][0], CycloNum::e(8, &qr(3, 8)));
        assert!(verify_relations(&rm, 1).all());
    }

    #[test]
    fn relations_and_traces_small() {
        for l in [named::a(2), named::zm(3), named::d(4), named::z(2)] {
            let rm = rep_matrices(&l);
            assert!(verify_relations(&rm, l.rank()).all(), "{:?}", l.name());
            assert_eq!(traces(&rm), closed_form_traces(&l), "{:?}", l.name());
        }
    }

    #[test]
    fn singular_small() {
        let z = named::z(1);
        assert_eq!(singular_dimension(&z, 3), 1);
        assert_eq!(singular_dimension(&z, 11), 0);
        assert_eq!(singular_dimension(&named::a(2), 8), 1);
        let b = singular_basis(&named::a(2), 8);
        assert_eq!(b.len(), 1);
        assert!(is_singular_vector(&named::a(2), 8, &b[0]));
        assert_eq!(singular_dimension(&named::zm(3), 1), 1);
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn relations_on_random_grams(g in crate::lattice::tests::gram_strategy().prop_filter("small det", |g| crate::matrix::det(g) <= 30.into())) {
            let l = crate::Lattice::new(g).unwrap();
            let rm = rep_matrices(&l);
            prop_assert!(verify_relations(&rm, l.rank()).all());
            let (got, want) = (traces(&rm), closed_form_traces(&l));
            prop_assert_eq!((got.t, got.s, got.z), (want.t, want.s, want.z));
            prop_assert_eq!((got.r, got.zr), (want.r, want.zr));
            // invariants of any h are T-eigenvectors
            for h in 0..24 {
                for v in singular_basis(&l, h) {
                    prop_assert!(is_singular_vector(&l, h, &v));
                }
            }
        }
    }
}
