//! Hilbert–Poincaré series P(t) = Q(t)/((1-t^4)(1-t^6)) of the even and odd Jacobi form
//! modules, via b(k) = a(k) - a(k-4) - a(k-6) + a(k-10).

use super::{DimSolver, Method};
use crate::arith::{fmt_q, q, qr, Q};
use crate::lattice::Lattice;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPTerm {
    #[serde(with = "crate::serial::qstr")]
    pub k: Q,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPResult {
    pub parity: Parity,
    pub h: i64,
    /// nonzero numerator terms, increasing weight
    pub numerator: Vec<HPTerm>,
    /// weights whose coefficient could not be determined
    #[serde(with = "crate::serial::qvec")]
    pub unknown: Vec<Q>,
    /// dimensions a(k) used, with how each was obtained
    pub dims: Vec<(String, i64, Method)>,
    pub denominator: &'static str,
}

impl HPResult {
    pub fn value_at_one(&self) -> i64 {
        self.numerator.iter().map(|t| t.coeff).sum()
    }

    pub fn coeff(&self, k: &Q) -> i64 {
        self.numerator.iter().find(|t| &t.k == k).map_or(0, |t| t.coeff)
    }
}

fn fmt_exp(k: &Q) -> String {
    let s = fmt_q(k);
    if s.contains('/') {
        format!("t^({s})")
    } else {
        format!("t^{s}")
    }
}

impl fmt::Display for HPResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .numerator
            .iter()
            .map(|t| if t.coeff == 1 { fmt_exp(&t.k) } else { format!("{}*{}", t.coeff, fmt_exp(&t.k)) })
            .collect();
        parts.extend(self.unknown.iter().map(|k| format!("?*{}", fmt_exp(k))));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Starting weight: the k in [n/2, n/2+2) with k - h/2 - parity in 2Z.
pub fn start_weight(n: usize, h: i64, parity: Parity) -> Q {
    let base = qr(n as i64, 2);
    (0..4)
        .map(|j| &base + qr(j, 2))
        .find(|k| {
            let d = k - qr(h, 2) - q(parity.bit());
            d.denom() == &1.into() && d.numer() % 2 == 0.into()
        })
        .expect("one of four consecutive half-integers")
}

pub fn hp_polynomial(l: &Lattice, h: i64, parity: Parity, overrides: &BTreeMap<Q, i64>) -> HPResult {
    let h = h.rem_euclid(24);
    let n = l.rank();
    let s = start_weight(n, h, parity);
    let stop = qr(n as i64, 2) + q(12);
    let mut solver = DimSolver::new(l);
    let mut a: BTreeMap<Q, Option<i64>> = BTreeMap::new();
    let mut dims = Vec::new();
    let mut k = s.clone();
    while k < stop {
        let v = if let Some(&o) = overrides.get(&k) {
            dims.push((fmt_q(&k), o, Method::UserOverride));
            Some(o)
        } else {
            let r = solver.dim(&k, h);
            let v = r.exact_value();
            if let Some(x) = v {
                dims.push((fmt_q(&k), x, r.method));
            }
            v
        };
        a.insert(k.clone(), v);
        k += q(2);
    }
    let get = |k: &Q| -> Option<i64> {
        if k < &s {
            Some(0)
        } else {
            *a.get(k).unwrap()
        }
    };
    let mut numerator = Vec::new();
    let mut unknown = Vec::new();
    for k in a.keys() {
        let vals = [get(k), get(&(k - q(4))), get(&(k - q(6))), get(&(k - q(10)))];
        if vals.iter().any(|v| v.is_none()) {
            unknown.push(k.clone());
            continue;
        }
        let [x, y, z, w] = vals.map(|v| v.unwrap());
        let b = x - y - z + w;
        if b != 0 {
            numerator.push(HPTerm { k: k.clone(), coeff: b });
        }
    }
    HPResult { parity, h, numerator, unknown, dims, denominator: "(1-t^4)(1-t^6)" }
}

/// b(k) for k = n/2+12, n/2+12+2, ... (count values), computed from the formula alone.
pub fn recurrence_tail(l: &Lattice, h: i64, parity: Parity, count: usize) -> Vec<(Q, Q)> {
    let n = l.rank();
    let s = start_weight(n, h, parity);
    let mut k = s.clone();
    while k < qr(n as i64, 2) + q(12) {
        k += q(2);
    }
    let a = |k: &Q| -> Q {
        if k < &s {
            q(0)
        } else {
            super::dim_formula(l, k, h).unwrap()
        }
    };
    (0..count)
        .map(|_| {
            let b = a(&k) - a(&(&k - q(4))) - a(&(&k - q(6))) + a(&(&k - q(10)));
            let r = (k.clone(), b);
            k += q(2);
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named;

    #[test]
    fn a2_rows() {
        let e = hp_polynomial(&named::a(2), 0, Parity::Even, &BTreeMap::new());
        assert_eq!(e.to_string(), "t^4 + t^6");
        let o = hp_polynomial(&named::a(2), 0, Parity::Odd, &BTreeMap::new());
        assert_eq!(o.to_string(), "t^9");
        let d3 = hp_polynomial(&named::d(3), 0, Parity::Even, &BTreeMap::new());
        assert_eq!(d3.to_string(), "t^4 + t^6 + t^8");
    }

    #[test]
    fn start_weights() {
        assert_eq!(start_weight(2, 0, Parity::Even), q(2));
        assert_eq!(start_weight(2, 0, Parity::Odd), q(1));
        assert_eq!(start_weight(3, 1, Parity::Even), qr(5, 2));
    }
}
