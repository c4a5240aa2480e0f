//! Square roots of integers and normalised Gauss sums of the shadow.

use super::{CycloNum, RootSum};
use crate::arith::{lcm, q, qr, square_part, Q};
use crate::lattice::Lattice;
use num_traits::One;

/// sqrt(d) for d >= 1 as a combination of 4f-th roots of unity, f the squarefree part.
/// Uses sum_{a mod 4f} e(a^2/4f) = 2(1+i) sqrt(f).
pub fn sqrt_rootsum(d: i64) -> RootSum {
    assert!(d >= 1);
    let (s, f) = square_part(d);
    if f == 1 {
        return RootSum::from_q(1, q(s));
    }
    let m = 4 * f;
    let mut g = RootSum::zero(m as u64);
    for a in 0..m {
        g.add_term((a * a) % m, Q::from_integer(1.into()));
    }
    // divide by 2(1+i): multiply by (1-i)/4
    let mut w = RootSum::from_q(m as u64, qr(s, 4));
    w.add_term(f, qr(-s, 4));
    g.mul(&w)
}

pub fn sqrt_positive_integer(d: i64) -> CycloNum {
    sqrt_rootsum(d).reduce()
}

/// The conductor used for all invariants of L: lcm(24, level, 4 det).
pub fn field_modulus(l: &Lattice) -> u64 {
    lcm(lcm(24, l.level()), 4 * l.det()) as u64
}

/// sum over sh(L)/L of e(t beta(x)), unnormalised.
pub fn shadow_gauss_sum(l: &Lattice, t: i64) -> RootSum {
    let lev = l.level() as u64;
    let mut s = RootSum::zero(lev);
    for c in l.shadow() {
        let x = &c.beta * q(t);
        let a = &x * Q::from_integer((lev as i64).into());
        assert!(a.denom().is_one());
        s.add_term(a.to_integer().try_into().unwrap(), q(1));
    }
    s
}

/// chi_L(t) = det^{-1/2} sum e(t beta(x)), as a sparse root sum.
pub fn chi_rootsum(l: &Lattice, t: i64) -> RootSum {
    shadow_gauss_sum(l, t).mul(&sqrt_rootsum(l.det())).scale(&qr(1, l.det()))
}

pub fn gauss_sum_chi(l: &Lattice, t: i64) -> CycloNum {
    chi_rootsum(l, t).reduce_to(field_modulus(l))
}

/// chi_L(1) = e(n/8).
pub fn milgram_check(l: &Lattice) -> bool {
    gauss_sum_chi(l, 1) == CycloNum::e(8, &qr(l.rank() as i64, 8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named;

    #[test]
    fn square_roots() {
        for d in [1, 2, 3, 5, 12, 18, 50] {
            let s = sqrt_positive_integer(d);
            assert_eq!(&s * &s, CycloNum::from_q(1, &q(d)), "d = {d}");
            let c = s.to_complex();
            assert!((c.re - (d as f64).sqrt()).abs() < 1e-9 && c.im.abs() < 1e-9);
        }
    }

    #[test]
    fn chi_of_a2() {
        // chi(2) = (1 + 2e(2/3))/sqrt(3) = -i for A2
        assert_eq!(gauss_sum_chi(&named::a(2), 2), CycloNum::root(4, 3));
        assert!(milgram_check(&named::a(2)));
        assert!(milgram_check(&named::z(1)));
        assert!(milgram_check(&named::zm(3)));
    }
}
