//! Sparse bivariate polynomials and unreduced rational functions over F_q,
//! used for function-field presentations F = F_q(s, t) (or F_q(t)) with the
//! t-adic ambient valuation.
//!
//! Fractions are kept unreduced (no multivariate gcd); equality goes through
//! cross multiplication, and p-th-power questions reduce to exponent classes
//! of N·D^{p-1}.

use crate::fq::{Fq, FqElem};
use crate::ratfn::{RatFn, RatFnField};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Polynomial in (s, t); univariate presentations just never use the s slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub field: Arc<Fq>,
    /// (s-exponent, t-exponent) → coefficient, zero coefficients absent
    pub terms: BTreeMap<(u32, u32), FqElem>,
}

impl BiPoly {
    pub fn zero(field: &Arc<Fq>) -> BiPoly {
        BiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<Fq>, c: FqElem) -> BiPoly {
        let mut p = BiPoly::zero(field);
        if !field.is_zero(&c) {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn one(field: &Arc<Fq>) -> BiPoly {
        BiPoly::constant(field, field.one())
    }

    pub fn monomial(field: &Arc<Fq>, s_exp: u32, t_exp: u32, c: FqElem) -> BiPoly {
        let mut p = BiPoly::zero(field);
        if !field.is_zero(&c) {
            p.terms.insert((s_exp, t_exp), c);
        }
        p
    }

    pub fn var_s(field: &Arc<Fq>) -> BiPoly {
        BiPoly::monomial(field, 1, 0, field.one())
    }

    pub fn var_t(field: &Arc<Fq>) -> BiPoly {
        BiPoly::monomial(field, 0, 1, field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let f = &self.field;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(|| f.zero());
            *entry = f.add(entry, c);
            if f.is_zero(entry) {
                terms.remove(k);
            }
        }
        BiPoly { field: f.clone(), terms }
    }

    pub fn neg(&self) -> BiPoly {
        let f = &self.field;
        BiPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let f = &self.field;
        let mut terms: BTreeMap<(u32, u32), FqElem> = BTreeMap::new();
        for ((s1, t1), c1) in &self.terms {
            for ((s2, t2), c2) in &other.terms {
                let key = (s1 + s2, t1 + t2);
                let prod = f.mul(c1, c2);
                let entry = terms.entry(key).or_insert_with(|| f.zero());
                *entry = f.add(entry, &prod);
                if f.is_zero(entry) {
                    terms.remove(&key);
                }
            }
        }
        BiPoly { field: f.clone(), terms }
    }

    pub fn pow(&self, mut e: u64) -> BiPoly {
        let mut acc = BiPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// t-adic order (None for the zero polynomial).
    pub fn t_order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, t)| *t).min()
    }

    /// Slice at a fixed t-exponent, as a univariate polynomial in s.
    pub fn t_slice(&self, t_exp: u32) -> Vec<FqElem> {
        let f = &self.field;
        let deg = self
            .terms
            .keys()
            .filter(|(_, t)| *t == t_exp)
            .map(|(s, _)| *s)
            .max();
        match deg {
            None => vec![f.zero()],
            Some(d) => {
                let mut out = vec![f.zero(); d as usize + 1];
                for ((s, t), c) in &self.terms {
                    if *t == t_exp {
                        out[*s as usize] = c.clone();
                    }
                }
                out
            }
        }
    }

    /// Termwise p-th root when every exponent pair is divisible by p.
    pub fn pth_root(&self) -> Option<BiPoly> {
        let f = &self.field;
        let p = f.p() as u32;
        let mut terms = BTreeMap::new();
        for ((s, t), c) in &self.terms {
            if s % p != 0 || t % p != 0 {
                return None;
            }
            terms.insert((s / p, t / p), f.pth_root(c));
        }
        Some(BiPoly { field: f.clone(), terms })
    }

    pub fn frobenius(&self) -> BiPoly {
        let f = &self.field;
        let p = f.p() as u32;
        BiPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|((s, t), c)| ((s * p, t * p), f.frobenius(c)))
                .collect(),
        }
    }

    pub fn display(&self, s_name: char, t_name: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for ((s, t), c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            let cs = f.display(c);
            if cs != "1" || (*s == 0 && *t == 0) {
                factors.push(cs);
            }
            match s {
                0 => {}
                1 => factors.push(s_name.to_string()),
                k => factors.push(format!("{s_name}^{k}")),
            }
            match t {
                0 => {}
                1 => factors.push(t_name.to_string()),
                k => factors.push(format!("{t_name}^{k}")),
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// Unreduced fraction of bivariate polynomials.
#[derive(Debug, Clone)]
pub struct BiRat {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl BiRat {
    pub fn from_poly(p: BiPoly) -> BiRat {
        let one = BiPoly::one(&p.field);
        BiRat { num: p, den: one }
    }

    pub fn zero(field: &Arc<Fq>) -> BiRat {
        BiRat::from_poly(BiPoly::zero(field))
    }

    pub fn one(field: &Arc<Fq>) -> BiRat {
        BiRat::from_poly(BiPoly::one(field))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &BiRat) -> BiRat {
        BiRat {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> BiRat {
        BiRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &BiRat) -> BiRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiRat) -> BiRat {
        BiRat { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn inv(&self) -> BiRat {
        assert!(!self.is_zero(), "inversion of zero");
        BiRat { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn pow(&self, e: u64) -> BiRat {
        BiRat { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn equals(&self, other: &BiRat) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// t-adic valuation.
    pub fn t_valuation(&self) -> Option<i64> {
        let n = self.num.t_order()?;
        let d = self.den.t_order().expect("nonzero denominator");
        Some(n as i64 - d as i64)
    }

    /// Residue in F_q(s) (requires t-valuation ≥ 0).
    pub fn residue(&self, ratfns: &RatFnField) -> Option<RatFn> {
        let v = self.t_valuation();
        match v {
            None => Some(ratfns.zero()),
            Some(v) if v > 0 => Some(ratfns.zero()),
            Some(0) => {
                let dn = self.den.t_order().unwrap();
                let num = self.num.t_slice(self.num.t_order().unwrap());
                let den = self.den.t_slice(dn);
                Some(ratfns.from_parts(num, den))
            }
            _ => None,
        }
    }

    /// Whether the element is a p-th power in F_q(s, t): reduces to the
    /// polynomial N·D^{p-1} being one.
    pub fn is_pth_power(&self) -> bool {
        self.pth_root().is_some()
    }

    pub fn pth_root(&self) -> Option<BiRat> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let p = self.num.field.p();
        let e = self.num.mul(&self.den.pow(p - 1));
        let root = e.pth_root()?;
        Some(BiRat { num: root, den: self.den.clone() })
    }

    /// Coordinates over F^p with respect to the basis
    /// {s^i t^j : 0 ≤ i, j < p} (s-slot unused for univariate presentations):
    /// self = Σ coords[(i,j)]^p · s^i · t^j.
    pub fn p_power_coordinates(&self) -> BTreeMap<(u32, u32), BiRat> {
        let f = &self.num.field;
        let p = f.p();
        let e = self.num.mul(&self.den.pow(p - 1));
        let pu = p as u32;
        let mut out: BTreeMap<(u32, u32), BiPoly> = BTreeMap::new();
        for ((s, t), c) in &e.terms {
            let class = (s % pu, t % pu);
            let entry = out.entry(class).or_insert_with(|| BiPoly::zero(f));
            let mono = BiPoly::monomial(f, (s - class.0) / pu, (t - class.1) / pu, f.pth_root(c));
            *entry = entry.add(&mono);
        }
        out.into_iter()
            .map(|(k, num)| (k, BiRat { num, den: self.den.clone() }))
            .collect()
    }
}

impl fmt::Display for BiRat {
    fn fmt(&self, fmtr: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.display('s', 't');
        if self.den == BiPoly::one(&self.den.field) {
            write!(fmtr, "{num}")
        } else {
            write!(fmtr, "({num})/({})", self.den.display('s', 't'))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<Fq> {
        Fq::prime(2)
    }

    #[test]
    fn arithmetic_and_equality() {
        let f = f2();
        let s = BiPoly::var_s(&f);
        let t = BiPoly::var_t(&f);
        let st = s.mul(&t);
        // (s + t)^2 = s^2 + t^2 in characteristic 2
        let sum = s.add(&t);
        let sq = sum.mul(&sum);
        assert_eq!(sq, s.mul(&s).add(&t.mul(&t)));
        assert!(!st.is_zero());
        // fractions: s/t · t/s = 1
        let a = BiRat { num: s.clone(), den: t.clone() };
        let b = BiRat { num: t.clone(), den: s.clone() };
        assert!(a.mul(&b).equals(&BiRat::one(&f)));
    }

    #[test]
    fn pth_power_tests() {
        let f = f2();
        let s = BiPoly::var_s(&f);
        let t = BiPoly::var_t(&f);
        let s2 = s.mul(&s);
        assert!(BiRat::from_poly(s2.clone()).is_pth_power());
        assert!(!BiRat::from_poly(s.mul(&t)).is_pth_power());
        // (s+t)^2 / s^2 is a square
        let sum_sq = s.add(&t).pow(2);
        let frac = BiRat { num: sum_sq, den: s2 };
        assert!(frac.is_pth_power());
    }

    #[test]
    fn coordinates_reconstruct() {
        let f = f2();
        let s = BiPoly::var_s(&f);
        let t = BiPoly::var_t(&f);
        // x = s·t^2 + s^3 + t
        let x = BiRat::from_poly(s.mul(&t.pow(2)).add(&s.pow(3)).add(&t));
        let coords = x.p_power_coordinates();
        // recombine: Σ c^p s^i t^j
        let mut acc = BiRat::zero(&f);
        for ((i, j), c) in &coords {
            let mono = BiPoly::monomial(&f, *i, *j, f.one());
            acc = acc.add(&c.pow(2).mul(&BiRat::from_poly(mono)));
        }
        assert!(acc.equals(&x));
    }

    #[test]
    fn valuation_and_residue() {
        let f = f2();
        let s = BiPoly::var_s(&f);
        let t = BiPoly::var_t(&f);
        let ratfns = RatFnField::new(f.clone(), 's');
        // (s + t)/(1 + t): v = 0, residue s
        let num = s.add(&t);
        let den = BiPoly::one(&f).add(&t);
        let x = BiRat { num, den };
        assert_eq!(x.t_valuation(), Some(0));
        let r = x.residue(&ratfns).unwrap();
        assert_eq!(r, ratfns.var_elem());
        // t/s has valuation 1
        let y = BiRat { num: t.clone(), den: s.clone() };
        assert_eq!(y.t_valuation(), Some(1));
    }
}
