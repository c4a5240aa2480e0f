//! Rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "7/2", "-3", or a decimal such as "3.5".
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        return Some(Q::new(a, b));
    }
    if let Some((a, b)) = s.split_once('.') {
        let neg = a.starts_with('-');
        let ip: BigInt = if a == "-" || a.is_empty() { BigInt::zero() } else { a.parse().ok()? };
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let fp: BigInt = b.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), b.len());
        let frac = Q::new(fp, den);
        let ip = Q::from_integer(ip.abs());
        let v = ip + frac;
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Fractional part in [0,1).
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

/// Sawtooth with value -1/2 at integers: x - floor(x) - 1/2.
pub fn sawtooth(x: &Q) -> Q {
    frac(x) - qr(1, 2)
}

pub fn is_int(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if is_int(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Kronecker symbol (12 | m).
pub fn kron12(m: i64) -> i64 {
    match m.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// Kronecker symbol (-4 | m).
pub fn kron_m4(m: i64) -> i64 {
    match m.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Legendre symbol (m | 3).
pub fn legendre3(m: i64) -> i64 {
    match m.rem_euclid(3) {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn divisors(n: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (1..=n).filter(|d| n % d == 0).collect();
    v.sort();
    v
}

pub fn is_squarefree(n: i64) -> bool {
    let mut p = 2;
    let mut m = n;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Largest square dividing n and the squarefree part: n = s^2 * f.
pub fn square_part(n: i64) -> (i64, i64) {
    let mut s = 1;
    let mut f = 1;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * m)
}

pub fn euler_phi(n: i64) -> i64 {
    let mut r = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

pub fn mobius(n: i64) -> i64 {
    let mut m = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}

pub fn sigma(k: u32, n: i64) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += num_traits::pow(BigInt::from(d), k as usize);
        }
    }
    s
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_weights() {
        assert_eq!(parse_q("7/2"), Some(qr(7, 2)));
        assert_eq!(parse_q("3.5"), Some(qr(7, 2)));
        assert_eq!(parse_q("-0.5"), Some(qr(-1, 2)));
        assert_eq!(parse_q("4"), Some(q(4)));
        assert_eq!(parse_q("x"), None);
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn sawtooth_at_integers() {
        assert_eq!(sawtooth(&q(3)), qr(-1, 2));
        assert_eq!(sawtooth(&qr(-1, 3)), qr(1, 6));
    }

    #[test]
    fn number_theory() {
        assert_eq!(kron12(13), 1);
        assert_eq!(kron12(7), -1);
        assert_eq!(kron12(9), 0);
        assert_eq!(euler_phi(600), 160);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(square_part(72), (6, 2));
        assert!(is_squarefree(30) && !is_squarefree(18));
        assert_eq!(sigma(3, 6), BigInt::from(1 + 8 + 27 + 216));
    }
}
