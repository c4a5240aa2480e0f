//! The explicit forms: theta, theta-tilde, the singular forms of Z^n, E8 and A2,
//! the A2 and D3 Eisenstein-type generators and the D3 pullbacks.

use super::jacobi::{delta_operator, jacobi_scalar_mul, pullback, JacobiQExp};
use super::series::{e2, e4, e6, eta_power};
use super::theta::{lambda_from_fn, theta_pullback, theta_series};
use crate::arith::{kron12, legendre3, q, qr, to_i64, Q};
use crate::error::{Error, Result};
use crate::lattice::named;
use crate::lattice::Lattice;
use crate::matrix::{qinv, to_q, vq_mul, IMat};
use num_traits::Zero;

/// theta(tau,z) = sum (-4/r) q^{r^2/8} zeta^{r/2} on Z.
pub fn theta(n: i64) -> Result<JacobiQExp> {
    distjac_zn(1, n)
}

/// theta-tilde(tau,z) = sum (12/r) q^{r^2/24} zeta^{r/2} on Z(3).
pub fn theta_tilde(n: i64) -> Result<JacobiQExp> {
    let l = named::zm(3);
    let lam = lambda_from_fn(&l, |r| q(kron12(to_i64(&(&r[0] * q(6))).unwrap())));
    theta_series(&l, &lam, &q(n))
}

/// theta(w_1)...theta(w_m) on Z^m.
pub fn distjac_zn(m: usize, n: i64) -> Result<JacobiQExp> {
    let l = named::z(m);
    theta_series(&l, &[q(1)], &q(n))
}

/// Sum over the E8 lattice, in the basis of simple roots.
pub fn distjac_e8(n: i64) -> Result<JacobiQExp> {
    theta_series(&named::e8(), &[q(1)], &q(n))
}

/// lambda on A2: the Legendre symbol of the class of r in dual/A2 = Z/3, where r = (a,a) maps to -3a.
/// This identification makes distjac_A2 equal eta^{-1} times the three-theta product with the
/// coordinates of `a2_in_z3`; the other one gives its negative.
pub fn a2_lambda() -> Vec<Q> {
    let l = named::a(2);
    lambda_from_fn(&l, |r| q(legendre3(to_i64(&(&r[0] * q(-3))).unwrap())))
}

pub fn distjac_a2(n: i64) -> Result<JacobiQExp> {
    theta_series(&named::a(2), &a2_lambda(), &q(n))
}

/// Rows: an isometric map A2 -> Z^3 with coordinates alpha_1, alpha_2, alpha_1 + alpha_2.
pub fn a2_in_z3() -> IMat {
    vec![vec![1, -1, 0], vec![1, 0, 1]]
}

/// eta^{-1} theta(alpha_1 z) theta(alpha_2 z) theta(alpha_1 z + alpha_2 z)
pub fn a2_three_theta_product(n: i64) -> Result<JacobiQExp> {
    let prod = theta_pullback(&named::z(3), &[q(1)], &a2_in_z3(), &named::a(2), &q(n + 1), None)?;
    Ok(jacobi_scalar_mul(&eta_power(-1, n + 1), &qr(-1, 2), &prod).with_prec(&q(n)))
}

pub fn a2a2() -> Lattice {
    named::a(2).direct_sum(&named::a(2))
}

/// A2(s)A2^c(r) - A2^c(s)A2(r) on the cosets of A2 + A2.
pub fn a2a2_lambda() -> Vec<Q> {
    lambda_from_fn(&a2a2(), |v| {
        let s0 = v[0].is_zero() && v[1].is_zero();
        let r0 = v[2].is_zero() && v[3].is_zero();
        q(i64::from(s0 && !r0) - i64::from(!s0 && r0))
    })
}

pub fn distjac_a2a2_8(n: i64) -> Result<JacobiQExp> {
    theta_series(&a2a2(), &a2a2_lambda(), &q(n))
}

/// z -> (0, z): the pairing of the displayed double sum.
fn second_summand() -> IMat {
    vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
}

pub fn eis2_a2_8(n: i64) -> Result<JacobiQExp> {
    theta_pullback(&a2a2(), &a2a2_lambda(), &second_summand(), &named::a(2), &q(n), None)
}

/// 12 delta(Eis_2)
pub fn eis4_a2_8(n: i64) -> Result<JacobiQExp> {
    Ok(delta_operator(&eis2_a2_8(n)?)?.scale(&q(12)))
}

/// -E2 Eis_2 + 12 sum lambda(s,r) beta(s) q^{beta(s)+beta(r)} e(beta(r,z))
pub fn eis4_a2_8_explicit(n: i64) -> Result<JacobiQExp> {
    let a2 = named::a(2);
    let beta_s = |v: &[Q]| a2.beta(&v[..2]);
    let mut w = theta_pullback(&a2a2(), &a2a2_lambda(), &second_summand(), &a2, &q(n), Some(&beta_s))?;
    w.set_weight(q(4), w.character());
    let e2phi = jacobi_scalar_mul(&e2(n), &q(2), &eis2_a2_8(n)?);
    w.scale(&q(12)).sub(&e2phi)
}

fn eta8_quotient(f1: &super::series::QSeries24, k1: i64, g1: &JacobiQExp, f2: &super::series::QSeries24, k2: i64, g2: &JacobiQExp, n: i64) -> Result<JacobiQExp> {
    let num = jacobi_scalar_mul(f1, &q(k1), g1).add(&jacobi_scalar_mul(f2, &q(k2), g2))?;
    let mut out = jacobi_scalar_mul(&eta_power(-8, n + 1), &q(-4), &num);
    out.set_d_min(Q::zero());
    Ok(out.with_prec(&q(n)))
}

/// (E6 Eis_2 + E4 Eis_4)/eta^8
pub fn eis4_a2_0(n: i64) -> Result<JacobiQExp> {
    let (a, b) = (eis2_a2_8(n + 1)?, eis4_a2_8(n + 1)?);
    eta8_quotient(&e6(n + 1), 6, &a, &e4(n + 1), 4, &b, n)
}

/// (E4^2 Eis_2 + E6 Eis_4)/eta^8
pub fn eis6_a2_0(n: i64) -> Result<JacobiQExp> {
    let (a, b) = (eis2_a2_8(n + 1)?, eis4_a2_8(n + 1)?);
    let e4sq = e4(n + 1).mul(&e4(n + 1));
    eta8_quotient(&e4sq, 8, &a, &e6(n + 1), 6, &b, n)
}

/// iota_2 = (z1+z2-z3, z1-z2+z3, -z1+z2+z3, -z1-z2-z3)/2 on the D3 basis.
pub fn iota2_rows() -> IMat {
    vec![vec![0, 1, -1, 0], vec![1, -1, 0, 0], vec![0, 0, 1, -1]]
}

pub fn iota1_z3(n: i64) -> Result<JacobiQExp> {
    pullback(&distjac_zn(3, n)?, &named::d_basis(3), &named::d(3))
}

pub fn iota2_z4(n: i64) -> Result<JacobiQExp> {
    theta_pullback(&named::z(4), &[q(1)], &iota2_rows(), &named::d(3), &q(n), None)
}

pub fn eta15_iota1(n: i64) -> Result<JacobiQExp> {
    Ok(jacobi_scalar_mul(&eta_power(15, n), &qr(15, 2), &iota1_z3(n)?))
}

pub fn eta12_iota2(n: i64) -> Result<JacobiQExp> {
    Ok(jacobi_scalar_mul(&eta_power(12, n), &q(6), &iota2_z4(n)?))
}

/// Rows: (x,y,z) -> (0,0,0,0,x,y,z,0) on the D3 basis, in E8 root coordinates.
pub fn d3_in_e8() -> Result<IMat> {
    let b = named::data("E8_basis_doubled").ok_or_else(|| Error::Invalid("E8 model missing".into()))?;
    let inv = qinv(&to_q(&b)).ok_or(Error::Degenerate)?;
    let mut rows = vec![];
    for v in named::d_basis(3) {
        let mut model = vec![q(0); 8];
        for (j, x) in v.iter().enumerate() {
            // the doubled basis: v = r (2B) / 2
            model[4 + j] = q(2 * x);
        }
        let r = vq_mul(&model, &inv);
        rows.push(r.iter().map(to_i64).collect::<Option<Vec<_>>>().ok_or(Error::NotIsometric)?);
    }
    Ok(rows)
}

pub fn eis4_d3_0(n: i64) -> Result<JacobiQExp> {
    theta_pullback(&named::e8(), &[q(1)], &d3_in_e8()?, &named::d(3), &q(n), None)
}

pub fn eis6_d3_0(n: i64) -> Result<JacobiQExp> {
    delta_operator(&eis4_d3_0(n)?)
}

pub const NAMES: &[&str] = &[
    "theta",
    "theta_tilde",
    "distjac_Z1",
    "distjac_Z2",
    "distjac_Z3",
    "distjac_Z4",
    "distjac_E8",
    "distjac_A2",
    "distjac_A2A2_8",
    "eis2_A2_8",
    "eis4_A2_8",
    "eis4_A2_0",
    "eis6_A2_0",
    "iota1_Z3",
    "iota2_Z4",
    "eta15_iota1",
    "eta12_iota2",
    "eis4_D3_0",
    "eis6_D3_0",
];

/// Looks up a catalog form; `distjac_Z<m>` works for any m >= 1.
pub fn named_form(name: &str, n: i64) -> Result<JacobiQExp> {
    if let Some(m) = name.strip_prefix("distjac_Z").and_then(|s| s.parse::<usize>().ok()) {
        if m >= 1 {
            return distjac_zn(m, n);
        }
    }
    match name {
        "theta" => theta(n),
        "theta_tilde" => theta_tilde(n),
        "distjac_E8" => distjac_e8(n),
        "distjac_A2" => distjac_a2(n),
        "distjac_A2A2_8" => distjac_a2a2_8(n),
        "eis2_A2_8" => eis2_a2_8(n),
        "eis4_A2_8" => eis4_a2_8(n),
        "eis4_A2_0" => eis4_a2_0(n),
        "eis6_A2_0" => eis6_a2_0(n),
        "iota1_Z3" => iota1_z3(n),
        "iota2_Z4" => iota2_z4(n),
        "eta15_iota1" => eta15_iota1(n),
        "eta12_iota2" => eta12_iota2(n),
        "eis4_D3_0" => eis4_d3_0(n),
        "eis6_D3_0" => eis6_d3_0(n),
        _ => Err(Error::Invalid(format!("unknown form {name}"))),
    }
}
