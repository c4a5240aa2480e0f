//! Dimensions of spaces of Jacobi forms J_{k,L}(eps^h).

pub mod hp;

use crate::arith::{divisors, is_int, is_squarefree, kron12, lcm, q, qr, sawtooth, to_i64, Q};
use crate::cyclotomic::gauss::{chi_rootsum, field_modulus, sqrt_rootsum};
use crate::cyclotomic::RootSum;
use crate::error::{Error, Result};
use crate::lattice::{named, Lattice};
use crate::theta_rep::singular_dimension;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

pub use hp::{hp_polynomial, recurrence_tail, HPResult, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exactness {
    Exact,
    FormulaMinusSkewCusp,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Formula,
    Singular,
    ZeroPropagation,
    /// upper bound from multiplication maps meets a lower bound from known forms
    Bounds,
    UserOverride,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimResult {
    #[serde(with = "crate::serial::qstr")]
    pub value: Q,
    pub exactness: Exactness,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<i64>,
}

impl DimResult {
    pub fn exact(v: i64, method: Method) -> Self {
        DimResult { value: q(v), exactness: Exactness::Exact, method, lower: None, upper: None }
    }

    pub fn exact_value(&self) -> Option<i64> {
        (self.exactness == Exactness::Exact).then(|| to_i64(&self.value).unwrap())
    }
}

pub fn pry(k: &Q, h: i64) -> Q {
    k - qr(h, 2)
}

fn check_weight(k: &Q) -> Result<()> {
    if !is_int(&(k * q(2))) {
        return Err(Error::BadWeight(crate::arith::fmt_q(k)));
    }
    Ok(())
}

/// Right-hand side of the dimension formula: dim J_{k,L}(eps^h) minus the dimension of
/// skew-holomorphic cusp forms of weight n+2-k.
pub fn dim_formula(l: &Lattice, k: &Q, h: i64) -> Result<Q> {
    check_weight(k)?;
    let p = pry(k, h);
    let Some(p) = to_i64(&p) else { return Ok(Q::zero()) };
    let n = l.rank() as i64;
    let n2 = l.n2() as i64;
    let det = l.det();
    let sgn = if (p + n2) % 2 == 0 { 1 } else { -1 };
    let m = field_modulus(l);

    let mut rational = qr(1, 24) * (k - qr(n, 2) - q(1)) * q(det + sgn * (1i64 << (n - n2)));
    rational += qr(kron12(2 * p + 2 * n + 1), 6);
    let target = qr(h, 24);
    for c in l.shadow() {
        let s = sawtooth(&(&target - &c.beta));
        rational -= &s / q(2);
        if c.order2 {
            rational -= s * qr(sgn, 2);
        }
    }

    let t2 = RootSum::e(4, &qr(p, 4)).mul(&chi_rootsum(l, 2)).re().scale(&qr(1, 4));
    // 1/(3 sqrt 3) = sqrt 3 / 9
    let sign_p = if p % 2 == 0 { 1 } else { -1 };
    let t4 = RootSum::e(24, &qr(4 * p + n + 2, 24))
        .mul(&chi_rootsum(l, -3))
        .mul(&sqrt_rootsum(3))
        .re()
        .scale(&qr(sign_p, 9));
    let irr = t2.add(&t4).reduce_to(m);
    match irr.to_rational() {
        Some(x) => Ok(rational + x),
        None => Err(Error::IrrationalResult(format!("k={k}, h={h}: {irr}"))),
    }
}

/// A nonzero form known to lie in J_{k,L}(eps^h), used as a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownForm {
    pub gram: Vec<Vec<i64>>,
    pub k: Q,
    pub h: i64,
    pub name: &'static str,
}

/// Forms constructed in the q-series catalog (each is checked there to be a nonzero,
/// L-invariant, holomorphic expansion of the stated weight and character).
pub fn known_forms() -> Vec<KnownForm> {
    let a2 = named::a(2).gram().clone();
    let d3 = named::d(3).gram().clone();
    vec![
        KnownForm { gram: a2.clone(), k: q(2), h: 8, name: "eis2_a2_8" },
        KnownForm { gram: a2.clone(), k: q(4), h: 8, name: "eis4_a2_8" },
        KnownForm { gram: a2.clone(), k: q(4), h: 0, name: "eis4_a2_0" },
        KnownForm { gram: a2.clone(), k: q(6), h: 0, name: "eis6_a2_0" },
        KnownForm { gram: a2, k: q(1), h: 8, name: "distjac_a2" },
        KnownForm { gram: d3.clone(), k: qr(3, 2), h: 9, name: "iota1_z3" },
        KnownForm { gram: d3.clone(), k: q(2), h: 12, name: "iota2_z4" },
        KnownForm { gram: d3, k: q(4), h: 0, name: "eis4_d3_0" },
    ]
}

/// dim M_w(eps^c) for the modular forms of weight w and character eps^c on SL2(Z).
pub fn dim_modular(w: &Q, c: i64) -> i64 {
    let l = c.rem_euclid(24);
    let wp = w - qr(l, 2);
    let Some(wp) = to_i64(&wp) else { return 0 };
    if wp < 0 || wp % 2 != 0 {
        return 0;
    }
    if wp % 12 == 2 {
        wp / 12
    } else {
        wp / 12 + 1
    }
}

pub struct DimSolver<'a> {
    l: &'a Lattice,
    known: Vec<KnownForm>,
    memo: HashMap<(Q, i64), (i64, Option<i64>)>,
    singular: HashMap<i64, usize>,
}

impl<'a> DimSolver<'a> {
    pub fn new(l: &'a Lattice) -> Self {
        Self::with_known(l, known_forms())
    }

    pub fn with_known(l: &'a Lattice, known: Vec<KnownForm>) -> Self {
        let known = known.into_iter().filter(|f| &f.gram == l.gram()).collect();
        DimSolver { l, known, memo: HashMap::new(), singular: HashMap::new() }
    }

    fn sdim(&mut self, h: i64) -> usize {
        let h = h.rem_euclid(24);
        let l = self.l;
        *self.singular.entry(h).or_insert_with(|| singular_dimension(l, h))
    }

    fn half_n(&self) -> Q {
        qr(self.l.rank() as i64, 2)
    }

    /// (lower, upper) bounds; upper None means unbounded.
    fn bounds(&mut self, k: &Q, h: i64) -> (i64, Option<i64>) {
        let h = h.rem_euclid(24);
        let key = (k.clone(), h);
        if let Some(b) = self.memo.get(&key) {
            return *b;
        }
        let hn = self.half_n();
        let b = if !is_int(&pry(k, h)) || k < &hn {
            (0, Some(0))
        } else if k == &hn {
            let d = self.sdim(h) as i64;
            (d, Some(d))
        } else if k >= &(&hn + q(2)) {
            let v = to_i64(&dim_formula(self.l, k, h).expect("formula")).expect("integral dimension");
            (v, Some(v))
        } else {
            let mut upper: Option<i64> = None;
            for (dk, dh) in [(q(2), 4), (q(1), 2), (q(4), 0)] {
                let (_, u) = self.bounds(&(k + dk), h + dh);
                if let Some(u) = u {
                    upper = Some(upper.map_or(u, |x: i64| x.min(u)));
                }
            }
            // The parity module is free over C[E4,E6], so every numerator coefficient
            // b(j) = a(j) - a(j-4) - a(j-6) + a(j-10) counts generators and is >= 0.
            // Here k is the lowest possibly nonzero weight of its class, and every other
            // a(j) entering b(k+4), b(k+6), b(k+10) is given by the formula.
            let f = |s: &mut Self, d: i64| s.bounds(&(k + q(d)), h).0;
            let (a2, a4, a6, a10) = (f(self, 2), f(self, 4), f(self, 6), f(self, 10));
            let gen_upper = a4.min(a6 - a2);
            upper = Some(upper.map_or(gen_upper, |x: i64| x.min(gen_upper)));
            let mut lower = (a4 + a6 - a10).max(0);
            if upper != Some(0) {
                for f in self.known.clone() {
                    lower = lower.max(dim_modular(&(k - &f.k), h - f.h));
                }
                let w = k - &hn;
                let mut from_singular = 0;
                for hp in 0..24 {
                    let dm = dim_modular(&w, h - hp);
                    if dm > 0 {
                        from_singular += self.sdim(hp) as i64 * dm;
                    }
                }
                lower = lower.max(from_singular);
            }
            (lower, upper)
        };
        self.memo.insert(key, b);
        b
    }

    pub fn dim(&mut self, k: &Q, h: i64) -> DimResult {
        let h = h.rem_euclid(24);
        let hn = self.half_n();
        if !is_int(&pry(k, h)) || k < &hn {
            return DimResult::exact(0, Method::Formula);
        }
        if k == &hn {
            return DimResult::exact(self.sdim(h) as i64, Method::Singular);
        }
        if k >= &(&hn + q(2)) {
            let (v, _) = self.bounds(k, h);
            return DimResult::exact(v, Method::Formula);
        }
        let (lo, hi) = self.bounds(k, h);
        if hi == Some(lo) {
            let method = if lo == 0 { Method::ZeroPropagation } else { Method::Bounds };
            return DimResult { lower: Some(lo), upper: hi, ..DimResult::exact(lo, method) };
        }
        DimResult {
            value: dim_formula(self.l, k, h).expect("formula"),
            exactness: Exactness::Unknown,
            method: Method::Formula,
            lower: Some(lo),
            upper: hi,
        }
    }
}

pub fn dim_jacobi(l: &Lattice, k: &Q, h: i64) -> Result<DimResult> {
    check_weight(k)?;
    Ok(DimSolver::new(l).dim(k, h))
}

/// The raw formula value, labelled as such.
pub fn dim_formula_result(l: &Lattice, k: &Q, h: i64) -> Result<DimResult> {
    let v = dim_formula(l, k, h)?;
    let hn = qr(l.rank() as i64, 2);
    let exactness = if k >= &(hn + q(2)) || !is_int(&pry(k, h)) { Exactness::Exact } else { Exactness::FormulaMinusSkewCusp };
    Ok(DimResult { value: v, exactness, method: Method::Formula, lower: None, upper: None })
}

/// dim J^Eis_k + dim J^{skew,Eis}_{n+2-k}.
pub fn eisenstein_count(l: &Lattice, k: &Q, h: i64) -> Q {
    let Some(p) = to_i64(&pry(k, h)) else { return Q::zero() };
    let sgn = if (p + l.n2() as i64) % 2 == 0 { 1 } else { -1 };
    let target = crate::arith::frac(&qr(h, 24));
    let (mut all, mut two) = (0i64, 0i64);
    for c in l.shadow() {
        if c.beta == target {
            all += 1;
            if c.order2 {
                two += 1;
            }
        }
    }
    qr(all + sgn * two, 2)
}

/// Ranks of the even and odd Jacobi form modules over C[E4, E6].
pub fn module_ranks(l: &Lattice) -> (i64, i64) {
    let n = l.rank() as i64;
    let n2 = l.n2() as i64;
    let t = if n2 % 2 == 0 { 1i64 << (n - n2) } else { -(1i64 << (n - n2)) };
    ((l.det() + t) / 2, (l.det() - t) / 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct StableMismatch {
    #[serde(with = "crate::serial::qstr")]
    pub k: Q,
    pub h: i64,
    pub left: Option<i64>,
    pub right: Option<i64>,
}

/// Compares dim J_{k+n1/2,L1}(eps^{h+3n1}) with dim J_{k+n2/2,L2}(eps^{h+3n2}).
pub fn stable_equiv_mismatches(l1: &Lattice, l2: &Lattice, hs: &[i64], ks: &[Q]) -> Vec<StableMismatch> {
    let (n1, n2) = (l1.rank() as i64, l2.rank() as i64);
    let mut s1 = DimSolver::new(l1);
    let mut s2 = DimSolver::new(l2);
    let mut bad = Vec::new();
    for &h in hs {
        for k in ks {
            let a = s1.dim(&(k + qr(n1, 2)), h + 3 * n1).exact_value();
            let b = s2.dim(&(k + qr(n2, 2)), h + 3 * n2).exact_value();
            if a.is_none() || a != b {
                bad.push(StableMismatch { k: k.clone(), h, left: a, right: b });
            }
        }
    }
    bad
}

pub fn stable_equiv_dim_check(l1: &Lattice, l2: &Lattice, h: i64, ks: &[Q]) -> bool {
    stable_equiv_mismatches(l1, l2, &[h], ks).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalComponent {
    pub n_prime: i64,
    pub dim: usize,
}

/// Components Z(2N') + L of the critical-weight decomposition, with their singular dimensions.
pub fn critical_components(l: &Lattice, h: i64) -> Vec<CriticalComponent> {
    let h = h.rem_euclid(24);
    let big_n = lcm(l.level(), 24 / crate::arith::gcd(24, h));
    divisors(big_n)
        .into_iter()
        .filter(|d| is_squarefree(big_n / d))
        .map(|np| {
            let lat = named::zm(2 * np).direct_sum(l);
            CriticalComponent { n_prime: np, dim: singular_dimension(&lat, h) }
        })
        .collect()
}

/// Asymptotic slope (1/24)(det + (-1)^{pry+n2} 2^{n-n2}) of a(k)/k along a parity class.
pub fn asymptotic_slope(l: &Lattice, parity_of_pry: i64) -> Q {
    let n = l.rank() as i64;
    let n2 = l.n2() as i64;
    let sgn = if (parity_of_pry + n2) % 2 == 0 { 1 } else { -1 };
    qr(l.det() + sgn * (1i64 << (n - n2)), 24)
}

pub fn is_nonneg_int(x: &Q) -> bool {
    is_int(x) && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named;

    #[test]
    fn formula_examples() {
        let a2 = named::a(2);
        assert_eq!(dim_formula(&a2, &q(4), 0).unwrap(), q(1));
        assert_eq!(dim_formula(&a2, &qr(9, 2), 1).unwrap(), q(1));
        assert_eq!(dim_formula(&a2, &q(10), 0).unwrap(), q(2));
        assert_eq!(dim_formula(&a2, &qr(7, 2), 0).unwrap(), q(0));
        assert_eq!(dim_formula(&named::d(3), &q(4), 0).unwrap(), q(1));
    }

    #[test]
    fn jacobi_examples() {
        let r = dim_jacobi(&named::d(3), &q(2), 0).unwrap();
        assert_eq!((r.exact_value(), r.method), (Some(0), Method::ZeroPropagation));
        let r = dim_jacobi(&named::z(1), &qr(1, 2), 3).unwrap();
        assert_eq!((r.exact_value(), r.method), (Some(1), Method::Singular));
        let r = dim_jacobi(&named::a(2), &q(2), 8).unwrap();
        assert_eq!((r.exact_value(), r.method), (Some(1), Method::Bounds));
        assert!(dim_jacobi(&named::a(2), &qr(1, 3), 0).is_err());
    }

    #[test]
    fn counts_and_ranks() {
        assert_eq!(module_ranks(&named::a(2)), (2, 1));
        assert_eq!(module_ranks(&named::d(4)), (4, 0));
        assert_eq!(module_ranks(&named::z(1)), (0, 1));
        assert_eq!(eisenstein_count(&named::a(2), &q(4), 0), q(1));
        for n in 1..8 {
            assert_eq!(eisenstein_count(&named::z(n), &q(6), 0), q(0));
        }
        assert_eq!(eisenstein_count(&named::e8(), &q(4), 0), q(1));
        assert_eq!(eisenstein_count(&named::e8(), &q(5), 0), q(0));
    }

    #[test]
    fn modular_dims() {
        assert_eq!(dim_modular(&q(12), 0), 2);
        assert_eq!(dim_modular(&q(2), 0), 0);
        assert_eq!(dim_modular(&qr(1, 2), 1), 1);
        assert_eq!(dim_modular(&q(0), 0), 1);
        assert_eq!(dim_modular(&q(4), 8), 1);
        assert_eq!(dim_modular(&q(3), 8), 0);
    }

    #[test]
    fn critical_divisors() {
        let c = critical_components(&named::a(2), 8);
        assert_eq!(c.iter().map(|x| x.n_prime).collect::<Vec<_>>(), vec![1, 3]);
        let c = critical_components(&named::z(2), 6);
        assert_eq!(c.iter().map(|x| x.n_prime).collect::<Vec<_>>(), vec![2, 4]);
    }
}
