use super::catalog::*;
use super::*;
use crate::arith::{q, qr, Q};
use crate::lattice::named;
use crate::lattice::Lattice;
use crate::theta_rep::singular_basis;
use num_traits::Zero;

fn c(phi: &JacobiQExp, n: Q, u2: &[i64]) -> Q {
    phi.iter().find(|(k, _)| k.0 == n && k.1 == u2).map(|(_, v)| v.clone()).unwrap_or_else(Q::zero)
}

#[test]
fn theta_coefficients() {
    let t = theta(10).unwrap();
    assert_eq!((t.weight().clone(), t.character()), (qr(1, 2), Some(3)));
    assert_eq!(t.coeff(&qr(1, 8), &[qr(1, 2)]), q(1));
    assert_eq!(t.coeff(&qr(1, 8), &[qr(-1, 2)]), q(-1));
    assert_eq!(t.coeff(&qr(9, 8), &[qr(3, 2)]), q(-1));
    assert!(t.verify_holomorphic());
    let tt = theta_tilde(10).unwrap();
    assert_eq!(tt.character(), Some(1));
    // zeta exponents 1/2 and 5/2
    assert_eq!(c(&tt, qr(1, 24), &[1]), q(1));
    assert_eq!(c(&tt, qr(25, 24), &[5]), q(-1));
    assert_eq!(c(&tt, qr(9, 24), &[3]), q(0));
}

#[test]
fn e8_nullwert() {
    let s = theta_nullwert(&named::e8(), &[q(1)], 3).unwrap();
    assert_eq!((s.coeff(0), s.coeff(24), s.coeff(48), s.coeff(72)), (q(1), q(240), q(2160), q(6720)));
    assert_eq!(distjac_e8(2).unwrap().nullwert().unwrap(), s.with_prec(48));
}

#[test]
fn products_and_grading() {
    let t = theta(8).unwrap();
    assert!(jacobi_tensor(&t, &t).unwrap().agrees_with(&distjac_zn(2, 8).unwrap()));
    let et = jacobi_scalar_mul(&eta_power(1, 8), &qr(1, 2), &t);
    assert_eq!((et.weight().clone(), et.character()), (q(1), Some(4)));
    let d = et.theta_decompose().unwrap();
    assert_eq!(d.series.len(), 1);
    assert_eq!(d.series24(0).unwrap().with_prec(24 * 7), eta_power(1, 7));

    let sq = jacobi_mul(&t, &t).unwrap();
    assert_eq!(sq.index().gram(), &vec![vec![2]]);
    let dec = sq.theta_decompose().unwrap();
    assert_eq!(dec.series.len(), 2);
    assert!(sq.check_l_invariance());
    let diag = pullback(&distjac_zn(2, 8).unwrap(), &vec![vec![1, 1]], &named::zm(2)).unwrap();
    assert!(diag.agrees_with(&sq));
}

#[test]
fn pullbacks() {
    let i1 = iota1_z3(6).unwrap();
    assert_eq!((i1.weight().clone(), i1.character()), (qr(3, 2), Some(9)));
    assert!(!i1.is_zero() && i1.check_l_invariance());
    let i2 = iota2_z4(6).unwrap();
    assert_eq!((i2.weight().clone(), i2.character()), (q(2), Some(12)));
    assert!(!i2.is_zero() && i2.keys_well_formed());
    assert!(i2.iter().all(|(k, _)| crate::arith::frac(&k.0) == qr(1, 2)));
    assert!(matches!(pullback(&theta(4).unwrap(), &vec![vec![2]], &named::z(1)), Err(crate::Error::NotIsometric)));

    // composite Z -> Z(2) -> Z^2 style: A2 -> Z^3 via D3? use Z(2) -> Z^2 -> Z^4
    let z4 = distjac_zn(4, 6).unwrap();
    let a = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
    let b = vec![vec![1, 1]];
    let z2 = named::z(2).rescale(2).unwrap();
    let step = pullback(&pullback(&z4, &a, &z2).unwrap(), &b, &named::zm(4)).unwrap();
    let ab = crate::matrix::imul(&b, &a);
    assert!(step.agrees_with(&pullback(&z4, &ab, &named::zm(4)).unwrap()));
}

#[test]
fn a2_singular_form_is_the_theta_product() {
    let lhs = distjac_a2(8).unwrap();
    let rhs = a2_three_theta_product(8).unwrap();
    assert_eq!((lhs.weight(), lhs.character()), (rhs.weight(), rhs.character()));
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn eisenstein_a2() {
    let e2f = eis2_a2_8(6).unwrap();
    assert_eq!((e2f.weight().clone(), e2f.character()), (q(2), Some(8)));
    assert_eq!(e2f.theta_decompose().unwrap().series.len(), 3);
    assert!(e2f.check_l_invariance());
    let e4 = eis4_a2_8(6).unwrap();
    assert!(e4.agrees_with(&eis4_a2_8_explicit(6).unwrap()));
    for f in [eis4_a2_0(5).unwrap(), eis6_a2_0(5).unwrap()] {
        assert!(f.verify_holomorphic() && f.check_l_invariance() && !f.is_zero());
        assert_eq!(f.character(), Some(0));
    }
}

#[test]
fn syzygy_rows() {
    let n = 5;
    let (a, b, c3, d) = (eis2_a2_8(n).unwrap(), eis4_a2_8(n).unwrap(), eis4_a2_0(n).unwrap(), eis6_a2_0(n).unwrap());
    let eta16 = eta_power(16, n).scale(&q(1728));
    let row3 = jacobi_scalar_mul(&eta16, &q(8), &a).add(&jacobi_scalar_mul(&e6(n), &q(6), &c3)).unwrap().sub(&jacobi_scalar_mul(&e4(n), &q(4), &d)).unwrap();
    assert!(row3.is_zero());
    let e4sq = e4(n).mul(&e4(n));
    let row4 = jacobi_scalar_mul(&eta16, &q(8), &b).sub(&jacobi_scalar_mul(&e4sq, &q(8), &c3)).unwrap().add(&jacobi_scalar_mul(&e6(n), &q(6), &d)).unwrap();
    assert!(row4.is_zero());
}

#[test]
fn delta_of_singular_is_zero() {
    assert!(delta_operator(&theta(6).unwrap()).unwrap().is_zero());
}

#[test]
fn d3_forms() {
    let e = eis4_d3_0(4).unwrap();
    assert_eq!((e.weight().clone(), e.character()), (q(4), Some(0)));
    assert_eq!(e.nullwert().unwrap(), distjac_e8(4).unwrap().nullwert().unwrap());
    assert!(e.check_l_invariance());
    let e6f = eis6_d3_0(4).unwrap();
    assert!(!e6f.is_zero() && e6f.check_l_invariance() && e6f.verify_holomorphic());
    for f in [eta15_iota1(4).unwrap(), eta12_iota2(4).unwrap()] {
        assert_eq!(f.character(), Some(0));
        assert!(f.check_l_invariance());
    }
}

#[test]
fn singular_forms_match_singular_basis() {
    for (phi, h) in [(theta(6).unwrap(), 3), (distjac_a2(6).unwrap(), 8), (iota1_z3(6).unwrap(), 9), (distjac_a2a2_8(3).unwrap(), 8)] {
        let l: Lattice = phi.index().clone();
        let d = phi.theta_decompose().unwrap();
        assert!(d.is_constant());
        let lam: Vec<Q> = d.series.iter().map(|s| s.get(&Q::zero()).cloned().unwrap_or_else(Q::zero)).collect();
        let basis = singular_basis(&l, h);
        assert_eq!(basis.len(), 1);
        // lambda is proportional to the basis vector
        let b = &basis[0];
        let i = lam.iter().position(|x| !x.is_zero()).unwrap();
        let ratio = crate::cyclotomic::CycloNum::from_q(b[i].modulus(), &lam[i]) * b[i].inv().unwrap();
        for (x, y) in lam.iter().zip(b) {
            let lhs = crate::cyclotomic::CycloNum::from_q(y.modulus(), x);
            assert_eq!(lhs, &ratio * y);
        }
    }
}

#[test]
fn json_roundtrip() {
    let t = eis2_a2_8(3).unwrap();
    let v = t.to_json();
    let back = JacobiQExp::from_json(&v).unwrap();
    assert!(back.agrees_with(&t));
    assert_eq!(back.to_json(), v);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn series() -> impl Strategy<Value = QSeries24> {
        (0i64..24, -1i64..2, prop::collection::vec(-3i64..4, 1..6)).prop_map(|(g, shift, cs)| {
            let start = g + 24 * shift;
            let terms: Vec<(i64, Q)> = cs.iter().enumerate().map(|(i, &c)| (start + 24 * i as i64, q(c))).collect();
            QSeries24::from_terms(&terms, g, start + 24 * 8).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn series_ring_laws(a in series(), b in series(), c in series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if !a.is_zero() {
                let one = a.mul(&a.inv().unwrap());
                let p = one.prec();
                prop_assert_eq!(one, QSeries24::one(p));
            }
        }

        #[test]
        fn tensor_of_thetas(m in 1usize..4, n in 1i64..5) {
            let t = theta(n).unwrap();
            let mut acc = t.clone();
            for _ in 1..m {
                acc = jacobi_tensor(&acc, &t).unwrap();
            }
            let want = distjac_zn(m, n).unwrap();
            prop_assert!(acc.agrees_with(&want));
            prop_assert_eq!(acc.weight(), want.weight());
            prop_assert_eq!(acc.character(), want.character());
        }

        #[test]
        fn random_lambda_roundtrip(g in crate::lattice::tests::gram_strategy().prop_filter("small det", |g| crate::matrix::det(g) <= 30.into()), seed in prop::collection::vec(-2i64..3, 1..40)) {
            let l = Lattice::new(g).unwrap();
            let lam: Vec<Q> = (0..l.shadow().len()).map(|i| q(seed[i % seed.len()])).collect();
            let phi = theta_series(&l, &lam, &q(3)).unwrap();
            prop_assert!(phi.check_l_invariance());
            prop_assert!(phi.keys_well_formed());
            let d = phi.theta_decompose().unwrap();
            let back = JacobiQExp::reconstruct(phi.index(), phi.weight().clone(), phi.character(), phi.prec().clone(), &d);
            prop_assert!(back.agrees_with(&phi));
        }
    }
}
