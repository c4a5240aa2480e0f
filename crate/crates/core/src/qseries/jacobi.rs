//! Truncated Fourier expansions sum c(n,r) q^n e(beta(r,z)) of Jacobi forms.
//!
//! A key is (n, 2u) with u = rG the exponent vector of e(u.z); u always has
//! denominator at most 2 for r in the shadow, so keys are exact and hashable.

use super::series::{e2, QSeries24};
use crate::arith::{fmt_q, is_int, q, to_i64, Q};
use crate::error::{Error, Result};
use crate::lattice::enumerate::CosetEnum;
use crate::lattice::Lattice;
use crate::matrix::{IMat, QMat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub type Key = (Q, Vec<i64>);

#[derive(Clone, Debug)]
pub struct JacobiQExp {
    index: Lattice,
    ginv: QMat,
    k: Q,
    h: Option<i64>,
    prec: Q,
    d_min: Q,
    coeffs: BTreeMap<Key, Q>,
}

/// C(D, rep) per shadow coset, for D up to the coset's own precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaDecomposition {
    pub prec: Vec<Q>,
    pub series: Vec<BTreeMap<Q, Q>>,
}

impl ThetaDecomposition {
    /// h_lambda for coset i as a q-series, when its exponents lie in Z/24.
    pub fn series24(&self, i: usize) -> Option<QSeries24> {
        let p = (&self.prec[i] * q(24)).floor().to_integer().to_i64()?;
        let g = self.series[i].keys().next().map(|d| to_i64(&(d * q(24)))).unwrap_or(Some(0))?;
        let mut s = QSeries24::zero(g, p);
        for (d, c) in &self.series[i] {
            s.add_term(to_i64(&(d * q(24)))?, c.clone()).ok()?;
        }
        Some(s)
    }

    pub fn is_constant(&self) -> bool {
        self.series.iter().all(|s| s.keys().all(|d| d.is_zero()))
    }
}

/// (-1)^{x G x^t} = e(beta(x)) for integral x.
fn twist(g: &IMat, x: &[i64]) -> i64 {
    let s: i64 = (0..x.len()).map(|i| x[i] * g[i][i]).sum();
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl JacobiQExp {
    pub fn new(index: Lattice, k: Q, h: Option<i64>, prec: Q) -> Self {
        let ginv = index.gram_inv();
        JacobiQExp { index, ginv, k, h: h.map(|x| x.rem_euclid(24)), prec, d_min: Q::zero(), coeffs: BTreeMap::new() }
    }

    pub fn index(&self) -> &Lattice {
        &self.index
    }
    pub fn weight(&self) -> &Q {
        &self.k
    }
    pub fn character(&self) -> Option<i64> {
        self.h
    }
    pub fn prec(&self) -> &Q {
        &self.prec
    }
    pub fn d_min(&self) -> &Q {
        &self.d_min
    }
    pub fn is_weak(&self) -> bool {
        self.d_min.is_negative()
    }
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.coeffs.iter()
    }

    pub fn set_weight(&mut self, k: Q, h: Option<i64>) {
        self.k = k;
        self.h = h.map(|x| x.rem_euclid(24));
    }
    pub fn set_d_min(&mut self, d: Q) {
        self.d_min = d;
    }

    pub fn add_coeff(&mut self, n: Q, u2: Vec<i64>, c: Q) {
        if n > self.prec || c.is_zero() {
            return;
        }
        let key = (n, u2);
        let e = self.coeffs.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// 2rG for r in Q tensor L.
    pub fn u2_of(&self, r: &[Q]) -> Vec<i64> {
        let g = self.index.gram();
        (0..r.len())
            .map(|j| to_i64(&((0..r.len()).map(|i| &r[i] * Q::from_integer(g[i][j].into())).sum::<Q>() * q(2))).expect("r outside the shadow"))
            .collect()
    }

    pub fn r_of(&self, u2: &[i64]) -> Vec<Q> {
        let n = u2.len();
        (0..n).map(|j| (0..n).map(|i| Q::from_integer(u2[i].into()) * &self.ginv[i][j]).sum::<Q>() / q(2)).collect()
    }

    pub fn beta_u2(&self, u2: &[i64]) -> Q {
        let n = u2.len();
        let mut s = Q::zero();
        for i in 0..n {
            if u2[i] == 0 {
                continue;
            }
            for j in 0..n {
                if u2[j] != 0 {
                    s += &self.ginv[i][j] * Q::from_integer((u2[i] * u2[j]).into());
                }
            }
        }
        s / q(8)
    }

    pub fn coeff(&self, n: &Q, r: &[Q]) -> Q {
        self.coeffs.get(&(n.clone(), self.u2_of(r))).cloned().unwrap_or_else(Q::zero)
    }

    /// Smallest stored exponent, or the precision when nothing is stored.
    pub fn valuation(&self) -> Q {
        self.coeffs.keys().next().map(|k| k.0.clone()).unwrap_or_else(|| self.prec.clone())
    }

    pub fn with_prec(&self, prec: &Q) -> Self {
        let mut s = self.clone();
        if prec < &s.prec {
            s.prec = prec.clone();
            s.coeffs.retain(|k, _| &k.0 <= prec);
        }
        s
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = self.clone();
        if c.is_zero() {
            s.coeffs.clear();
        }
        s.coeffs.values_mut().for_each(|v| *v *= c);
        s
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.index.gram() != o.index.gram() {
            return Err(Error::ModuleMismatch);
        }
        if self.k != o.k || (self.h.is_some() && o.h.is_some() && self.h != o.h) {
            return Err(Error::Invalid(format!(
                "adding forms of weight {} and {} (characters {:?}, {:?})",
                fmt_q(&self.k),
                fmt_q(&o.k),
                self.h,
                o.h
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let prec = self.prec.clone().min(o.prec.clone());
        let mut r = self.with_prec(&prec);
        r.d_min = self.d_min.clone().min(o.d_min.clone());
        if r.h != o.h {
            r.h = None;
        }
        for ((n, u), c) in &o.coeffs {
            r.add_coeff(n.clone(), u.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Q::one()))
    }

    /// Equality of all coefficients up to the smaller precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        if self.index.gram() != o.index.gram() {
            return false;
        }
        let p = self.prec.clone().min(o.prec.clone());
        let a: Vec<_> = self.coeffs.iter().filter(|(k, _)| k.0 <= p).collect();
        let b: Vec<_> = o.coeffs.iter().filter(|(k, _)| k.0 <= p).collect();
        a == b
    }

    /// n - beta(r) >= 0 for every stored key.
    pub fn verify_holomorphic(&self) -> bool {
        self.coeffs.keys().all(|(n, u)| n >= &self.beta_u2(u))
    }

    /// D >= d_min for every stored key.
    pub fn verify_floor(&self) -> bool {
        self.coeffs.keys().all(|(n, u)| n - self.beta_u2(u) >= self.d_min)
    }

    /// Every key lies over the shadow and, with a character, in h/24 + Z.
    pub fn keys_well_formed(&self) -> bool {
        let g = self.index.gram();
        self.coeffs.keys().all(|(n, u)| {
            let shadow = u.iter().enumerate().all(|(i, x)| (x - g[i][i]).rem_euclid(2) == 0);
            let class = self.h.is_none_or(|h| is_int(&(n - Q::new(h.into(), 24.into()))));
            shadow && class
        })
    }

    /// phi(tau, 0)
    pub fn nullwert(&self) -> Result<QSeries24> {
        let p = (&self.prec * q(24)).floor().to_integer().to_i64().unwrap();
        let g = self.h.unwrap_or_else(|| self.coeffs.keys().next().and_then(|k| to_i64(&(&k.0 * q(24)))).unwrap_or(0));
        let mut s = QSeries24::zero(g, p);
        for ((n, _), c) in &self.coeffs {
            let e = to_i64(&(n * q(24))).ok_or_else(|| Error::Invalid(format!("exponent {} not in Z/24", fmt_q(n))))?;
            s.add_term(e, c.clone())?;
        }
        Ok(s)
    }

    /// Groups coefficients by shadow coset: C(D, rep) = e(beta(l)) c(D + beta(r), r) with r = rep + l.
    pub fn theta_decompose(&self) -> Result<ThetaDecomposition> {
        let sh = self.index.shadow();
        let g = self.index.gram();
        let mut series = vec![BTreeMap::new(); sh.len()];
        for ((n, u), c) in &self.coeffs {
            let r = self.r_of(u);
            let i = self.index.coset_index(&r).ok_or_else(|| Error::NotLInvariant(format!("key {u:?} not over the shadow")))?;
            let l: Vec<i64> = r.iter().zip(&sh[i].rep).map(|(a, b)| to_i64(&(a - b)).unwrap()).collect();
            let d = n - self.beta_u2(u);
            let cc = c * q(twist(g, &l));
            match series[i].get(&d) {
                None => {
                    series[i].insert(d, cc);
                }
                Some(old) if *old == cc => {}
                Some(_) => return Err(Error::NotLInvariant(format!("coefficients disagree at D = {}", fmt_q(&d)))),
            }
        }
        let prec = (0..sh.len()).map(|i| &self.prec - coset_min_beta(&self.index, i)).collect();
        Ok(ThetaDecomposition { prec, series })
    }

    /// Inverse of theta_decompose: sum_lambda h_lambda theta_lambda up to precision.
    pub fn reconstruct(index: &Lattice, k: Q, h: Option<i64>, prec: Q, d: &ThetaDecomposition) -> Self {
        let mut out = JacobiQExp::new(index.clone(), k, h, prec.clone());
        let g = index.gram();
        for (i, s) in d.series.iter().enumerate() {
            let rep = index.shadow()[i].rep.clone();
            let en = CosetEnum::new(g, &rep);
            let sc = Q::from_integer(en.scale.into());
            for (dd, c) in s {
                let bound = &prec - dd;
                en.run(&bound, |x, s2| {
                    let r: Vec<Q> = rep.iter().zip(x).map(|(a, b)| a + Q::from_integer((*b).into())).collect();
                    let beta = Q::new(s2.into(), 2.into()) / (&sc * &sc);
                    let u2 = out.u2_of(&r);
                    out.add_coeff(dd + beta, u2, c * q(twist(g, x)));
                });
            }
        }
        out.d_min = d.series.iter().flat_map(|s| s.keys().next().cloned()).fold(Q::zero(), |a, b| a.min(b));
        out
    }

    /// Exhaustive translate check within precision.
    pub fn check_l_invariance(&self) -> bool {
        match self.theta_decompose() {
            Err(_) => false,
            Ok(d) => {
                let back = Self::reconstruct(&self.index, self.k.clone(), self.h, self.prec.clone(), &d);
                back.coeffs == self.coeffs
            }
        }
    }

    /// Structured dump: gram, k, h, denom d, entries [24n, d*r, num, den], N.
    pub fn to_json(&self) -> Value {
        let d = self.index.shadow_denominator();
        let dq = Q::from_integer(d.into());
        let mut entries: Vec<(Q, Vec<i64>, Q)> = self
            .coeffs
            .iter()
            .map(|((n, u), c)| (n * q(24), self.r_of(u).iter().map(|x| to_i64(&(x * &dq)).unwrap()).collect(), c.clone()))
            .collect();
        entries.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let num = |x: &Q| match to_i64(x) {
            Some(v) => json!(v),
            None => json!(fmt_q(x)),
        };
        let big = |x: &num_bigint::BigInt| match x.to_i64() {
            Some(v) => json!(v),
            None => json!(x.to_string()),
        };
        json!({
            "gram": self.index.gram(),
            "k": fmt_q(&self.k),
            "h": self.h,
            "denom": d,
            "N": fmt_q(&self.prec),
            "entries": entries.iter().map(|(n, r, c)| json!([num(n), r, big(c.numer()), big(c.denom())])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let gram: IMat = serde_json::from_value(v["gram"].clone()).map_err(|e| bad(&e.to_string()))?;
        let index = Lattice::new(gram)?;
        let rat = |x: &Value| -> Result<Q> {
            match x {
                Value::Number(n) => n.as_i64().map(q).ok_or_else(|| bad("expected an integer")),
                Value::String(s) => crate::arith::parse_q(s).ok_or_else(|| bad("expected a rational")),
                _ => Err(bad("expected a number")),
            }
        };
        let k = rat(&v["k"])?;
        let h = v["h"].as_i64();
        let prec = rat(&v["N"])?;
        let d = v["denom"].as_i64().ok_or_else(|| bad("denom"))?;
        let mut out = JacobiQExp::new(index, k, h, prec);
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            let n = rat(&e[0])? / q(24);
            let r: Vec<Q> = e[1].as_array().ok_or_else(|| bad("r"))?.iter().map(|x| x.as_i64().map(|i| Q::new(i.into(), d.into()))).collect::<Option<_>>().ok_or_else(|| bad("r"))?;
            let c = rat(&e[2])? / rat(&e[3])?;
            let u2 = out.u2_of(&r);
            out.add_coeff(n, u2, c);
        }
        Ok(out)
    }

    /// One line per coefficient: n, r, c.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "index {:?}, weight {}, character {}, precision {}\n",
            self.index.gram(),
            fmt_q(&self.k),
            self.h.map_or("-".into(), |h| h.to_string()),
            fmt_q(&self.prec)
        );
        for ((n, u), c) in &self.coeffs {
            let r: Vec<String> = self.r_of(u).iter().map(fmt_q).collect();
            s += &format!("{}\t({})\t{}\n", fmt_q(n), r.join(","), fmt_q(c));
        }
        s
    }
}

/// min beta(r) over r in the i-th shadow coset.
pub fn coset_min_beta(l: &Lattice, i: usize) -> Q {
    let rep = &l.shadow()[i].rep;
    let en = CosetEnum::new(l.gram(), rep);
    let b0 = l.beta(rep);
    let mut best: Option<i64> = None;
    en.run(&b0, |_, s| best = Some(best.map_or(s, |b| b.min(s))));
    let sc = en.scale as i128;
    Q::new(best.unwrap().into(), (2 * sc * sc).into())
}

/// phi * psi on a common module; index Grams add.
pub fn jacobi_mul(a: &JacobiQExp, b: &JacobiQExp) -> Result<JacobiQExp> {
    if a.index.rank() != b.index.rank() {
        return Err(Error::ModuleMismatch);
    }
    let n = a.index.rank();
    let g: IMat = (0..n).map(|i| (0..n).map(|j| a.index.gram()[i][j] + b.index.gram()[i][j]).collect()).collect();
    let index = Lattice::new(g)?;
    convolve(a, b, index, |x, y| x.iter().zip(y).map(|(p, q)| p + q).collect())
}

/// (phi tensor psi)(tau, z1 + z2) = phi(tau, z1) psi(tau, z2) on the direct sum.
pub fn jacobi_tensor(a: &JacobiQExp, b: &JacobiQExp) -> Result<JacobiQExp> {
    let index = a.index.direct_sum(&b.index);
    convolve(a, b, index, |x, y| x.iter().chain(y).copied().collect())
}

fn convolve(a: &JacobiQExp, b: &JacobiQExp, index: Lattice, join: impl Fn(&[i64], &[i64]) -> Vec<i64>) -> Result<JacobiQExp> {
    let prec = (&a.prec + b.valuation()).min(&b.prec + a.valuation());
    let h = a.h.zip(b.h).map(|(x, y)| x + y);
    let mut out = JacobiQExp::new(index, &a.k + &b.k, h, prec.clone());
    out.d_min = &a.d_min + &b.d_min;
    for ((n1, u1), c1) in &a.coeffs {
        for ((n2, u2), c2) in &b.coeffs {
            let n = n1 + n2;
            if n > prec {
                break;
            }
            out.add_coeff(n, join(u1, u2), c1 * c2);
        }
    }
    Ok(out)
}

/// f(tau) * phi(tau, z) for a modular form f of weight kf; the character of f is its q-offset class.
pub fn jacobi_scalar_mul(f: &QSeries24, kf: &Q, phi: &JacobiQExp) -> JacobiQExp {
    let mut out = times_series(f, phi);
    out.k = &phi.k + kf;
    out
}

fn times_series(f: &QSeries24, phi: &JacobiQExp) -> JacobiQExp {
    let fv = Q::new(f.valuation().into(), 24.into());
    let fp = Q::new(f.prec().into(), 24.into());
    let prec = (&fp + phi.valuation()).min(&phi.prec + &fv);
    let mut out = JacobiQExp::new(phi.index.clone(), phi.k.clone(), phi.h.map(|h| h + f.class()), prec.clone());
    out.d_min = &phi.d_min + fv.clone().min(Q::zero());
    for (e, c) in f.terms() {
        let s = Q::new(e.into(), 24.into());
        if s > prec {
            break;
        }
        for ((n, u), c2) in &phi.coeffs {
            let m = n + &s;
            if m > prec {
                break;
            }
            out.add_coeff(m, u.clone(), c * c2);
        }
    }
    out
}

/// Checks rows(A) G_M rows(A)^t = G_L'; rows of A are the images of a basis of L' in M.
pub fn check_isometry(m: &Lattice, a: &IMat, target: &Lattice) -> Result<()> {
    if a.len() != target.rank() || a.iter().any(|r| r.len() != m.rank()) {
        return Err(Error::NotIsometric);
    }
    let prod = crate::matrix::imul(&crate::matrix::imul(a, m.gram()), &crate::matrix::transpose(a));
    if &prod != target.gram() {
        return Err(Error::NotIsometric);
    }
    Ok(())
}

/// (alpha^* phi)(tau, z) = phi(tau, alpha z).
pub fn pullback(phi: &JacobiQExp, a: &IMat, target: &Lattice) -> Result<JacobiQExp> {
    check_isometry(&phi.index, a, target)?;
    let mut out = JacobiQExp::new(target.clone(), phi.k.clone(), phi.h, phi.prec.clone());
    out.d_min = phi.d_min.clone();
    for ((n, u), c) in &phi.coeffs {
        let v = a.iter().map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum()).collect();
        out.add_coeff(n.clone(), v, c.clone());
    }
    Ok(out)
}

/// delta(phi) = sum (q d/dq h_lambda) theta_lambda - (k - n/2)/12 E_2 phi
pub fn delta_operator(phi: &JacobiQExp) -> Result<JacobiQExp> {
    if !phi.check_l_invariance() {
        return Err(Error::NotLInvariant("delta needs a theta expansion".into()));
    }
    let top = phi.prec.ceil().to_integer().to_i64().unwrap().max(1);
    let e2phi = times_series(&e2(top), phi);
    let prec = phi.prec.clone().min(e2phi.prec.clone());
    let mut out = JacobiQExp::new(phi.index.clone(), &phi.k + q(2), phi.h, prec);
    out.d_min = phi.d_min.clone();
    for ((n, u), c) in &phi.coeffs {
        out.add_coeff(n.clone(), u.clone(), (n - phi.beta_u2(u)) * c);
    }
    let f = (&phi.k - Q::new((phi.index.rank() as i64).into(), 2.into())) / q(12);
    if !f.is_zero() {
        for ((n, u), c) in &e2phi.coeffs {
            out.add_coeff(n.clone(), u.clone(), -(&f * c));
        }
    }
    Ok(out)
}
