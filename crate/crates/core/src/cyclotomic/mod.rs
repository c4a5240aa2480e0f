//! Exact arithmetic in cyclotomic fields Q(zeta_M), stored on the power basis with a
//! common denominator. Operands of different conductors are coerced to the lcm.

pub mod gauss;
pub mod linalg;
pub mod table;

use crate::arith::{lcm, Q};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CycloNum {
    m: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    pub fn zero(m: u64) -> Self {
        let phi = table::table(m).phi;
        CycloNum { m, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn from_q(m: u64, x: &Q) -> Self {
        let mut z = Self::zero(m);
        z.num[0] = x.numer().clone();
        z.den = x.denom().clone();
        z
    }

    pub fn one(m: u64) -> Self {
        Self::from_q(m, &Q::one())
    }

    /// zeta_m^a
    pub fn root(m: u64, a: i64) -> Self {
        RootSum::root(m, a).reduce()
    }

    /// e(x) = exp(2 pi i x) for rational x, in Q(zeta_m); x*m must be an integer.
    pub fn e(m: u64, x: &Q) -> Self {
        RootSum::e(m, x).reduce()
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Coefficients on the power basis as rationals.
    pub fn coeffs(&self) -> Vec<Q> {
        self.num.iter().map(|c| Q::new(c.clone(), self.den.clone())).collect()
    }

    pub fn from_coeffs(m: u64, c: &[Q]) -> Self {
        let phi = table::table(m).phi;
        assert_eq!(c.len(), phi);
        let den = c.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let num = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let mut z = CycloNum { m, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| Q::new(self.num[0].clone(), self.den.clone()))
    }

    /// Image in Q(zeta_big) for m | big.
    pub fn coerce(&self, big: u64) -> Self {
        if big == self.m {
            return self.clone();
        }
        assert_eq!(big % self.m, 0, "coercion needs m | M");
        let step = big / self.m;
        let t = table::table(big);
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.powers[(j as u64 * step % big) as usize];
            for (k, &p) in row.iter().enumerate() {
                if p != 0 {
                    num[k] += c * p;
                }
            }
        }
        CycloNum { m: big, num, den: self.den.clone() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.m as i64, b.m as i64) as u64;
            (a.coerce(m), b.coerce(m))
        }
    }

    /// Galois automorphism zeta -> zeta^t, gcd(t, m) = 1.
    pub fn galois(&self, t: i64) -> Self {
        let tb = table::table(self.m);
        let m = self.m as i64;
        let mut num = vec![BigInt::zero(); tb.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &tb.powers[(j as i64 * t).rem_euclid(m) as usize];
            for (k, &p) in row.iter().enumerate() {
                if p != 0 {
                    num[k] += c * p;
                }
            }
        }
        CycloNum { m: self.m, num, den: self.den.clone() }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// (z + conj z)/2
    pub fn re(&self) -> Self {
        let mut s = self + &self.conj();
        s.den *= 2;
        s.normalize();
        s
    }

    pub fn scale(&self, x: &Q) -> Self {
        let mut z = CycloNum {
            m: self.m,
            num: self.num.iter().map(|c| c * x.numer()).collect(),
            den: &self.den * x.denom(),
        };
        z.normalize();
        z
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.den.to_f64().unwrap();
        let mut s = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let ang = 2.0 * std::f64::consts::PI * j as f64 / self.m as f64;
                s += Complex64::from_polar(c.to_f64().unwrap() / d, ang);
            }
        }
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.m);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let t = table::table(self.m);
        let a: Vec<Q> = self.coeffs();
        let f: Vec<Q> = t.poly.iter().map(|&c| Q::from_integer(c.into())).collect();
        let (g, s) = poly_ext_gcd(&a, &f);
        // g is a nonzero constant since Phi is irreducible
        debug_assert_eq!(g.len(), 1);
        let gi = g[0].recip();
        let mut c: Vec<Q> = s.into_iter().map(|x| x * &gi).collect();
        c.resize(t.phi, Q::zero());
        Some(Self::from_coeffs(self.m, &c))
    }
}

fn trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(Q::zero());
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut r: Vec<Q> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect();
    trim(&mut r);
    r
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![Q::zero()], r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    let lead = b[db].recip();
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                r[k + i] -= t;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Returns (g, s) with s*a = g mod f.
fn poly_ext_gcd(a: &[Q], f: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let (mut r0, mut r1) = (f.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Q::zero()], vec![Q::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        // keep the remainder monic-ish to tame coefficient growth
        if !(r1.len() == 1 && r1[0].is_zero()) {
            let l = r1.last().unwrap().recip();
            r1.iter_mut().for_each(|x| *x *= &l);
            s1.iter_mut().for_each(|x| *x *= &l);
        }
    }
    let (_, s) = poly_divrem(&s0, f);
    (r0, s)
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = CycloNum::common(self, o);
        a.den == b.den && a.num == b.num || (&a - &b).is_zero()
    }
}
impl Eq for CycloNum {}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, o);
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        let mut z = CycloNum { m: a.m, num, den: &a.den * &b.den };
        z.normalize();
        z
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self + &(-o)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { m: self.m, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, o);
        let t = table::table(a.m);
        let phi = t.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let row = &t.powers[k % a.m as usize];
            for (i, &p) in row.iter().enumerate() {
                if p != 0 {
                    num[i] += c * p;
                }
            }
        }
        let mut z = CycloNum { m: a.m, num, den: &a.den * &b.den };
        z.normalize();
        z
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $f(self, o: CycloNum) -> CycloNum {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = crate::arith::fmt_q(c);
            parts.push(match j {
                0 => cs,
                1 => format!("{cs}*z"),
                _ => format!("{cs}*z^{j}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} (z = zeta_{})", parts.join(" + "), self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    #[serde(rename = "M")]
    m: u64,
    #[serde(with = "crate::serial::qvec")]
    coeffs: Vec<Q>,
}

impl Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson { m: self.m, coeffs: self.coeffs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        if j.m == 0 || j.coeffs.len() != crate::arith::euler_phi(j.m as i64) as usize {
            return Err(serde::de::Error::custom("coefficient count must be phi(M)"));
        }
        Ok(CycloNum::from_coeffs(j.m, &j.coeffs))
    }
}

/// Sparse rational combination of M-th roots of unity, reduced only on demand.
/// Products of Gauss-type sums stay cheap in this form.
#[derive(Clone, Debug)]
pub struct RootSum {
    pub m: u64,
    pub terms: BTreeMap<u64, Q>,
}

impl RootSum {
    pub fn zero(m: u64) -> Self {
        RootSum { m, terms: BTreeMap::new() }
    }

    pub fn from_q(m: u64, x: Q) -> Self {
        let mut r = Self::zero(m);
        r.add_term(0, x);
        r
    }

    pub fn root(m: u64, a: i64) -> Self {
        let mut r = Self::zero(m);
        r.add_term(a, Q::one());
        r
    }

    pub fn e(m: u64, x: &Q) -> Self {
        let a = x * Q::from_integer((m as i64).into());
        assert!(a.denom().is_one(), "e({x}) is not in Q(zeta_{m})");
        Self::root(m, a.to_integer().to_i64().unwrap())
    }

    pub fn add_term(&mut self, a: i64, c: Q) {
        let k = a.rem_euclid(self.m as i64) as u64;
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn lift(&self, big: u64) -> Self {
        assert_eq!(big % self.m, 0);
        let s = big / self.m;
        RootSum { m: big, terms: self.terms.iter().map(|(k, v)| (k * s, v.clone())).collect() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.m as i64, b.m as i64) as u64;
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut a, b) = Self::common(self, o);
        for (k, v) in b.terms {
            a.add_term(k as i64, v);
        }
        a
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = Self::common(self, o);
        let mut r = Self::zero(a.m);
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                r.add_term((i + j) as i64, x * y);
            }
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Self {
        RootSum { m: self.m, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn conj(&self) -> Self {
        let mut r = Self::zero(self.m);
        for (k, v) in &self.terms {
            r.add_term(-(*k as i64), v.clone());
        }
        r
    }

    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale(&Q::new(1.into(), 2.into()))
    }

    pub fn reduce(&self) -> CycloNum {
        self.reduce_to(self.m)
    }

    pub fn reduce_to(&self, big: u64) -> CycloNum {
        let s = self.lift(big);
        let t = table::table(big);
        let den = s.terms.values().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let mut num = vec![BigInt::zero(); t.phi];
        for (k, v) in &s.terms {
            let c = v.numer() * (&den / v.denom());
            for (i, &p) in t.powers[*k as usize].iter().enumerate() {
                if p != 0 {
                    num[i] += &c * p;
                }
            }
        }
        let mut z = CycloNum { m: big, num, den };
        z.normalize();
        z
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, v)| Complex64::from_polar(v.to_f64().unwrap(), 2.0 * std::f64::consts::PI * *k as f64 / self.m as f64))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};
    use proptest::prelude::*;

    #[test]
    fn roots_and_identities() {
        let i = CycloNum::root(4, 1);
        assert_eq!(&i * &i, CycloNum::from_q(4, &q(-1)));
        // 1 + w + w^2 = 0 for a primitive cube root
        let w = CycloNum::root(3, 1);
        let s = &(&CycloNum::one(3) + &w) + &(&w * &w);
        assert!(s.is_zero());
        // coercion preserves values across moduli
        assert_eq!(CycloNum::root(4, 1), CycloNum::root(24, 6));
        assert_eq!(CycloNum::e(24, &qr(-1, 8)), CycloNum::root(8, -1));
    }

    #[test]
    fn inverse() {
        let x = &CycloNum::root(12, 1) + &CycloNum::from_q(12, &q(3));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycloNum::one(12));
        assert!(CycloNum::zero(5).inv().is_none());
    }

    #[test]
    fn json_shape() {
        let x = CycloNum::root(3, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"M":3,"coeffs":["0","1"]}"#);
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycloNum>(r#"{"M":3,"coeffs":["1"]}"#).is_err());
    }

    fn elem(m: u64) -> impl Strategy<Value = CycloNum> {
        let phi = crate::arith::euler_phi(m as i64) as usize;
        proptest::collection::vec((-5i64..6, 1i64..4), phi)
            .prop_map(move |v| CycloNum::from_coeffs(m, &v.iter().map(|&(a, b)| qr(a, b)).collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn field_axioms(a in elem(15), b in elem(15), c in elem(20)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let z = (&a * &c).to_complex();
            let w = a.to_complex() * c.to_complex();
            prop_assert!((z - w).norm() < FLOAT_TOL * (1.0 + w.norm()));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloNum::one(15));
            }
            prop_assert_eq!(a.conj().conj(), a.clone());
        }
    }
}
