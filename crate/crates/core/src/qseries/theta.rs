//! Theta series sum_{r in sh L} lambda(r) q^{beta(r)} e(beta(r,z)) by lattice-point enumeration.

use super::jacobi::{check_isometry, JacobiQExp};
use super::series::QSeries24;
use crate::arith::{is_int, q, to_i64, Q};
use crate::error::{Error, Result};
use crate::lattice::enumerate::CosetEnum;
use crate::lattice::Lattice;
use crate::matrix::IMat;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

/// 24 beta mod 24 when every coset in the support has the same beta modulo 1.
fn t_character(l: &Lattice, lambda: &[Q]) -> Option<i64> {
    let mut b: Option<Q> = None;
    for (c, x) in l.shadow().iter().zip(lambda) {
        if x.is_zero() {
            continue;
        }
        match &b {
            None => b = Some(c.beta.clone()),
            Some(v) if *v != c.beta => return None,
            _ => {}
        }
    }
    let b = b.unwrap_or_else(Q::zero) * q(24);
    if is_int(&b) {
        to_i64(&b)
    } else {
        None
    }
}

fn check_lambda(l: &Lattice, lambda: &[Q]) -> Result<()> {
    if lambda.len() != l.shadow().len() {
        return Err(Error::DimensionMismatch(format!("{} values for {} shadow cosets", lambda.len(), l.shadow().len())));
    }
    Ok(())
}

/// Calls visit(coset, x, s) for r = rep + x with beta(r) <= bound, s = scale^2 rGr^t.
fn for_each_vector(l: &Lattice, lambda: &[Q], bound: &Q, mut visit: impl FnMut(usize, &CosetEnum, &[i64], i64)) {
    for (i, c) in l.shadow().iter().enumerate() {
        if lambda[i].is_zero() {
            continue;
        }
        let en = CosetEnum::new(l.gram(), &c.rep);
        en.run(bound, |x, s| visit(i, &en, x, s));
    }
}

/// Weight n/2; character from the T-eigenvalue when lambda is supported on one beta class.
/// Lambda is given on the shadow coset representatives and extended by lambda(r + x) = e(beta(x)) lambda(r).
pub fn theta_series(l: &Lattice, lambda: &[Q], prec: &Q) -> Result<JacobiQExp> {
    check_lambda(l, lambda)?;
    let mut out = JacobiQExp::new(l.clone(), Q::new((l.rank() as i64).into(), 2.into()), t_character(l, lambda), prec.clone());
    let g = l.gram();
    let mut acc: HashMap<Vec<i64>, (usize, i64, i64)> = HashMap::new();
    for_each_vector(l, lambda, prec, |i, en, x, s| {
        let u2 = doubled_u(g, en, i, l, x);
        acc.entry(u2).or_insert((i, s, en.scale));
    });
    for (u2, (i, s, sc)) in acc {
        let r = out.r_of(&u2);
        let x: Vec<i64> = r.iter().zip(&l.shadow()[i].rep).map(|(a, b)| to_i64(&(a - b)).unwrap()).collect();
        out.add_coeff(Q::new(s.into(), (2 * sc * sc).into()), u2, &lambda[i] * q(parity_sign(g, &x)));
    }
    Ok(out)
}

/// theta_lambda for the indicator of one coset (the basic theta function).
pub fn basic_theta(l: &Lattice, coset: usize, prec: &Q) -> Result<JacobiQExp> {
    let mut lambda = vec![Q::zero(); l.shadow().len()];
    lambda[coset] = q(1);
    theta_series(l, &lambda, prec)
}

fn parity_sign(g: &IMat, x: &[i64]) -> i64 {
    let s: i64 = (0..x.len()).map(|i| x[i] * g[i][i]).sum();
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// 2(rep + x)G as integers.
fn doubled_u(g: &IMat, en: &CosetEnum, i: usize, l: &Lattice, x: &[i64]) -> Vec<i64> {
    let rep = &l.shadow()[i].rep;
    let sc = en.scale;
    let n = x.len();
    (0..n)
        .map(|j| {
            let num: i64 = (0..n).map(|k| (rep_scaled(&rep[k], sc) + x[k] * sc) * g[k][j]).sum();
            2 * num / sc
        })
        .collect()
}

fn rep_scaled(x: &Q, sc: i64) -> i64 {
    (x * Q::from_integer(sc.into())).to_integer().to_i64().unwrap()
}

/// alpha^* theta_{M,lambda} computed without storing the form on M.
/// Rows of `a` are the images in M of a basis of `target`. If `weight` is given, the term
/// for r in M is multiplied by weight(r).
pub fn theta_pullback(
    m: &Lattice,
    lambda: &[Q],
    a: &IMat,
    target: &Lattice,
    prec: &Q,
    weight: Option<&dyn Fn(&[Q]) -> Q>,
) -> Result<JacobiQExp> {
    check_lambda(m, lambda)?;
    check_isometry(m, a, target)?;
    let g = m.gram();
    let mut out = JacobiQExp::new(target.clone(), Q::new((m.rank() as i64).into(), 2.into()), t_character(m, lambda), prec.clone());
    let mut int_acc: HashMap<(usize, i64, i64, Vec<i64>), i64> = HashMap::new();
    let mut q_acc: HashMap<(i64, i64, Vec<i64>), Q> = HashMap::new();
    for_each_vector(m, lambda, prec, |i, en, x, s| {
        let u2 = doubled_u(g, en, i, m, x);
        let v: Vec<i64> = a.iter().map(|row| row.iter().zip(&u2).map(|(p, q)| p * q).sum()).collect();
        let sign = parity_sign(g, x);
        match weight {
            None => *int_acc.entry((i, s, en.scale, v)).or_insert(0) += sign,
            Some(w) => {
                let rep = &m.shadow()[i].rep;
                let r: Vec<Q> = rep.iter().zip(x).map(|(p, q)| p + Q::from_integer((*q).into())).collect();
                *q_acc.entry((s, en.scale, v)).or_insert_with(Q::zero) += &lambda[i] * q(sign) * w(&r);
            }
        }
    });
    for ((i, s, sc, v), c) in int_acc {
        out.add_coeff(Q::new(s.into(), (2 * sc * sc).into()), v, &lambda[i] * q(c));
    }
    for ((s, sc, v), c) in q_acc {
        out.add_coeff(Q::new(s.into(), (2 * sc * sc).into()), v, c);
    }
    Ok(out)
}

/// theta_{L,lambda}(tau, 0) by counting vectors; exponents must lie in Z/24.
pub fn theta_nullwert(l: &Lattice, lambda: &[Q], prec: i64) -> Result<QSeries24> {
    check_lambda(l, lambda)?;
    let h = t_character(l, lambda).ok_or_else(|| Error::Invalid("lambda is not a T-eigenvector".into()))?;
    let g = l.gram();
    let mut out = QSeries24::zero(h, 24 * prec);
    for (i, c) in l.shadow().iter().enumerate() {
        if lambda[i].is_zero() {
            continue;
        }
        let en = CosetEnum::new(g, &c.rep);
        let sc = en.scale;
        // counts indexed by the scaled norm s = sc^2 rGr^t <= 2 prec sc^2
        let mut counts = vec![0i64; (2 * prec * sc * sc + 1).max(1) as usize];
        en.run(&q(prec), |x, s| counts[s as usize] += parity_sign(g, x));
        for (s, n) in counts.into_iter().enumerate() {
            if n != 0 {
                let e = Q::new((24 * s as i64).into(), (2 * sc * sc).into());
                out.add_term(to_i64(&e).ok_or_else(|| Error::Invalid("exponent not in Z/24".into()))?, &lambda[i] * q(n))?;
            }
        }
    }
    Ok(out)
}

/// A lambda vector from a function of the coset representative.
pub fn lambda_from_fn(l: &Lattice, f: impl Fn(&[Q]) -> Q) -> Vec<Q> {
    l.shadow().iter().map(|c| f(&c.rep)).collect()
}
