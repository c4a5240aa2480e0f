//! Truncated one-variable q-series with exponents in g/24 + Z.

use crate::arith::{fmt_q, q, qr, sigma, Q};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// Coefficients of q^{(start + 24 i)/24}; every term with 24*exponent <= prec is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries24 {
    start: i64,
    coeffs: Vec<Q>,
    prec: i64,
}

impl QSeries24 {
    /// Series in the class g mod 24 known up to q^{prec/24}, all zero.
    pub fn zero(g: i64, prec: i64) -> Self {
        let start = g.rem_euclid(24) - 24 * 64;
        let mut s = QSeries24 { start, coeffs: vec![], prec };
        s.trim();
        s
    }

    /// From (24*exponent, coefficient) pairs, all in one class mod 24.
    pub fn from_terms(terms: &[(i64, Q)], g: i64, prec: i64) -> Result<Self> {
        let mut s = Self::zero(g, prec);
        for (e, c) in terms {
            s.add_term(*e, c.clone())?;
        }
        Ok(s)
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.start += 24 * lead as i64;
        let keep = ((self.prec - self.start).div_euclid(24) + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            // park the start just above the precision, keeping the class
            self.start = self.class() + 24 * ((self.prec - self.class()).div_euclid(24) + 1);
        }
    }

    pub fn class(&self) -> i64 {
        self.start.rem_euclid(24)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Exponent (times 24) of the first nonzero term, or prec+1 if none is known.
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec + 1
        } else {
            self.start
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e24: i64) -> Q {
        if (e24 - self.start).rem_euclid(24) != 0 || e24 < self.start {
            return Q::zero();
        }
        self.coeffs.get(((e24 - self.start) / 24) as usize).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero terms as (24*exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        let s = self.start;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (s + 24 * i as i64, c))
    }

    pub fn add_term(&mut self, e24: i64, c: Q) -> Result<()> {
        if !self.coeffs.is_empty() && (e24 - self.start).rem_euclid(24) != 0 {
            return Err(Error::Invalid(format!("exponent {e24}/24 not in class {}", self.class())));
        }
        if self.coeffs.is_empty() && (e24 - self.start).rem_euclid(24) != 0 {
            return Err(Error::Invalid(format!("exponent {e24}/24 not in class {}", self.class())));
        }
        if e24 > self.prec {
            return Ok(());
        }
        if self.coeffs.is_empty() || e24 < self.start {
            let shift = if self.coeffs.is_empty() { 0 } else { ((self.start - e24) / 24) as usize };
            let mut v = vec![Q::zero(); shift];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.start = e24;
        }
        let i = ((e24 - self.start) / 24) as usize;
        if i >= self.coeffs.len() {
            self.coeffs.resize(i + 1, Q::zero());
        }
        self.coeffs[i] += c;
        self.trim();
        Ok(())
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = prec.min(self.prec);
        s.trim();
        s
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = self.clone();
        s.coeffs.iter_mut().for_each(|x| *x *= c);
        s.trim();
        s
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.class() != o.class() && !self.is_zero() && !o.is_zero() {
            return Err(Error::Invalid("adding series of different classes".into()));
        }
        let prec = self.prec.min(o.prec);
        let mut r = if self.is_zero() { o.with_prec(prec) } else { self.with_prec(prec) };
        let other = if self.is_zero() { self } else { o };
        for (e, c) in other.terms() {
            r.add_term(e, c.clone())?;
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.prec + o.valuation()).min(o.prec + self.valuation());
        let class = (self.class() + o.class()).rem_euclid(24);
        if self.is_zero() || o.is_zero() {
            return Self::zero(class, prec);
        }
        let start = self.start + o.start;
        let len = ((prec - start).div_euclid(24) + 1).max(0) as usize;
        let mut c = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        let mut s = QSeries24 { start, coeffs: c, prec };
        s.trim();
        s
    }

    /// Multiplicative inverse; the leading term must be known.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("inverting a series with no known nonzero term".into()));
        }
        let v = self.start;
        let prec = self.prec - 2 * v;
        let len = ((prec + v).div_euclid(24) + 1).max(0) as usize;
        let a0inv = self.coeffs[0].recip();
        let mut b = vec![Q::zero(); len];
        for i in 0..len {
            let mut s = if i == 0 { Q::one() } else { Q::zero() };
            for j in 1..=i.min(self.coeffs.len() - 1) {
                s -= &self.coeffs[j] * &b[i - j];
            }
            b[i] = s * &a0inv;
        }
        let mut s = QSeries24 { start: -v, coeffs: b, prec };
        s.trim();
        Ok(s)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        if e == 0 {
            return Ok(Self::one(self.prec));
        }
        Ok(pow_int(&base, e.abs()))
    }

    pub fn one(prec: i64) -> Self {
        let mut s = Self::zero(0, prec);
        s.add_term(0, Q::one()).unwrap();
        s
    }

    /// q d/dq
    pub fn qdq(&self) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            *c *= qr(self.start + 24 * i as i64, 24);
        }
        s.trim();
        s
    }
}

impl fmt::Display for QSeries24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{}*q^({})", fmt_q(c), fmt_q(&qr(e, 24)))).collect();
        write!(f, "{} + O(q^({}))", if parts.is_empty() { "0".into() } else { parts.join(" + ") }, fmt_q(&qr(self.prec + 1, 24)))
    }
}

/// prod_{m>=1} (1 - q^m) up to q^n (integral exponents).
fn euler_product(n: i64) -> QSeries24 {
    let mut s = QSeries24::zero(0, 24 * n);
    // pentagonal numbers
    let mut k = 0i64;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if e <= n {
                any = true;
                s.add_term(24 * e, q(if kk.rem_euclid(2) == 0 { 1 } else { -1 })).unwrap();
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    s
}

/// eta^l to precision q^n (i.e. all exponents <= n are exact).
pub fn eta_power(l: i64, n: i64) -> QSeries24 {
    // need prod^(l) up to exponent n - l/24
    let m = n + (l.abs() + 23) / 24 + 1;
    let e = euler_product(m);
    let p = if l >= 0 { pow_int(&e, l) } else { pow_int(&e.inv().unwrap(), -l) };
    let mut shifted = QSeries24::zero(l, 24 * n);
    for (ex, c) in p.terms() {
        shifted.add_term(ex + l, c.clone()).unwrap();
    }
    shifted
}

fn pow_int(s: &QSeries24, e: i64) -> QSeries24 {
    let mut r = s.clone();
    let mut b = s.clone();
    let mut e = e - 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    r
}

fn eisenstein(c: i64, k: u32, n: i64) -> QSeries24 {
    let mut s = QSeries24::one(24 * n);
    for m in 1..=n {
        s.add_term(24 * m, Q::from_integer(sigma(k, m) * c)).unwrap();
    }
    s
}

pub fn e2(n: i64) -> QSeries24 {
    eisenstein(-24, 1, n)
}
pub fn e4(n: i64) -> QSeries24 {
    eisenstein(240, 3, n)
}
pub fn e6(n: i64) -> QSeries24 {
    eisenstein(-504, 5, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_coefficients() {
        let e = eta_power(1, 5);
        // q^{1/24}(1 - q - q^2 + q^5 ...)
        assert_eq!(e.coeff(1), q(1));
        assert_eq!(e.coeff(25), q(-1));
        assert_eq!(e.coeff(49), q(-1));
        assert_eq!(e.coeff(73), q(0));
        let d = eta_power(24, 3);
        // Delta = q - 24 q^2 + 252 q^3
        assert_eq!((d.coeff(24), d.coeff(48), d.coeff(72)), (q(1), q(-24), q(252)));
        let inv = eta_power(-1, 4);
        assert_eq!(inv.coeff(-1), q(1));
        assert_eq!(inv.coeff(-1 + 24 * 4), q(5)); // partition numbers
        assert_eq!(inv.mul(&eta_power(1, 4)).with_prec(24 * 3), QSeries24::one(24 * 3));
    }

    #[test]
    fn ramanujan_identity() {
        let n = 8;
        let lhs = e4(n).pow(3).unwrap().sub(&e6(n).pow(2).unwrap()).unwrap();
        let rhs = eta_power(24, n).scale(&q(1728));
        assert_eq!(lhs.with_prec(24 * n), rhs.with_prec(24 * n));
    }

    #[test]
    fn precision_tracking() {
        let a = eta_power(8, 3);
        let b = eta_power(-8, 3);
        let p = a.mul(&b);
        assert!(p.prec() >= 24 * 3 - 8);
        assert_eq!(p.coeff(0), q(1));
        assert_eq!(p.coeff(24), q(0));
        assert!(QSeries24::zero(1, 10).add_term(2, q(1)).is_err());
    }
}
