//! Univariate rational functions F_q(s), the minimal imperfect residue field.
//!
//! Normal form: coprime numerator/denominator with monic denominator. The
//! p-basis of F_q(s) is {s}; p-th-power decisions reduce to exponent classes
//! of the numerator and denominator modulo p.

use crate::fq::{
    poly_add, poly_deg, poly_derivative, poly_divrem, poly_eval, poly_gcd, poly_is_zero,
    poly_mul, poly_neg, poly_scale, poly_trim, Fq, FqElem, FqPoly,
};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: FqPoly,
    pub den: FqPoly,
}

/// Field object for F_q(s).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFnField {
    pub base: Arc<Fq>,
    pub var: char,
}

impl RatFnField {
    pub fn new(base: Arc<Fq>, var: char) -> Self {
        RatFnField { base, var }
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    fn normalize(&self, num: FqPoly, den: FqPoly) -> RatFn {
        let f = &self.base;
        assert!(!poly_is_zero(f, &den), "zero denominator");
        if poly_is_zero(f, &num) {
            return RatFn { num: vec![f.zero()], den: vec![f.one()] };
        }
        let g = poly_gcd(f, &num, &den);
        let (num, r1) = poly_divrem(f, &num, &g);
        debug_assert!(poly_is_zero(f, &r1));
        let (den, r2) = poly_divrem(f, &den, &g);
        debug_assert!(poly_is_zero(f, &r2));
        let dd = poly_deg(f, &den);
        let lead_inv = f.inv(&den[dd]);
        RatFn {
            num: poly_scale(f, &num, &lead_inv),
            den: poly_scale(f, &den, &lead_inv),
        }
    }

    pub fn from_poly(&self, num: FqPoly) -> RatFn {
        self.normalize(num, vec![self.base.one()])
    }

    pub fn from_parts(&self, num: FqPoly, den: FqPoly) -> RatFn {
        self.normalize(num, den)
    }

    pub fn zero(&self) -> RatFn {
        self.from_poly(vec![self.base.zero()])
    }

    pub fn one(&self) -> RatFn {
        self.from_poly(vec![self.base.one()])
    }

    pub fn constant(&self, c: FqElem) -> RatFn {
        self.from_poly(vec![c])
    }

    pub fn var_elem(&self) -> RatFn {
        self.from_poly(vec![self.base.zero(), self.base.one()])
    }

    pub fn is_zero(&self, a: &RatFn) -> bool {
        poly_is_zero(&self.base, &a.num)
    }

    pub fn is_one(&self, a: &RatFn) -> bool {
        a == &self.one()
    }

    pub fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let f = &self.base;
        let num = poly_add(
            f,
            &poly_mul(f, &a.num, &b.den),
            &poly_mul(f, &b.num, &a.den),
        );
        self.normalize(num, poly_mul(f, &a.den, &b.den))
    }

    pub fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { num: poly_neg(&self.base, &a.num), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let f = &self.base;
        self.normalize(poly_mul(f, &a.num, &b.num), poly_mul(f, &a.den, &b.den))
    }

    pub fn inv(&self, a: &RatFn) -> RatFn {
        assert!(!self.is_zero(a), "inversion of zero rational function");
        self.normalize(a.den.clone(), a.num.clone())
    }

    pub fn pow(&self, a: &RatFn, mut e: u64) -> RatFn {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: &RatFn) -> RatFn {
        self.pow(a, self.p())
    }

    /// p-th root when one exists. A polynomial over a perfect field is a
    /// p-th power iff every exponent in its support is divisible by p, and
    /// then the root is extracted term by term.
    pub fn pth_root(&self, a: &RatFn) -> Option<RatFn> {
        let num = self.poly_pth_root(&a.num)?;
        let den = self.poly_pth_root(&a.den)?;
        Some(self.normalize(num, den))
    }

    fn poly_pth_root(&self, f: &FqPoly) -> Option<FqPoly> {
        let p = self.p() as usize;
        let fq = &self.base;
        if poly_is_zero(fq, f) {
            return Some(vec![fq.zero()]);
        }
        let d = poly_deg(fq, f);
        let mut root = vec![fq.zero(); d / p + 1];
        for (i, c) in f.iter().enumerate().take(d + 1) {
            if fq.is_zero(c) {
                continue;
            }
            if i % p != 0 {
                return None;
            }
            root[i / p] = fq.pth_root(c);
        }
        Some(poly_trim(fq, root))
    }

    pub fn is_pth_power(&self, a: &RatFn) -> bool {
        self.pth_root(a).is_some()
    }

    /// Coordinates of `a` in the F_q(s)^p-basis {1, s, ..., s^{p-1}}:
    /// a = Σ_j coords[j]^p · s^j. Exact.
    pub fn p_power_coordinates(&self, a: &RatFn) -> Vec<RatFn> {
        let fq = &self.base;
        let p = self.p() as usize;
        // a = N/D = N·D^{p-1} / D^p: split E = N·D^{p-1} by exponent class
        let den_pow = {
            let mut acc: FqPoly = vec![fq.one()];
            for _ in 0..(p - 1) {
                acc = poly_mul(fq, &acc, &a.den);
            }
            acc
        };
        let e_poly = poly_mul(fq, &a.num, &den_pow);
        let mut coords = Vec::with_capacity(p);
        for j in 0..p {
            // terms with exponent ≡ j (mod p): e_k s^k → (e_k^{1/p}) s^{(k-j)/p}
            let mut comp: FqPoly = vec![fq.zero()];
            for (k, c) in e_poly.iter().enumerate() {
                if fq.is_zero(c) || k % p != j {
                    continue;
                }
                let deg = (k - j) / p;
                if comp.len() <= deg {
                    comp.resize(deg + 1, fq.zero());
                }
                comp[deg] = fq.pth_root(c);
            }
            coords.push(self.from_parts(poly_trim(fq, comp), a.den.clone()));
        }
        coords
    }

    /// Sanity inverse of `p_power_coordinates`.
    pub fn from_p_power_coordinates(&self, coords: &[RatFn]) -> RatFn {
        let mut acc = self.zero();
        let s = self.var_elem();
        for (j, c) in coords.iter().enumerate() {
            let term = self.mul(&self.frobenius(c), &self.pow(&s, j as u64));
            acc = self.add(&acc, &term);
        }
        acc
    }

    pub fn derivative(&self, a: &RatFn) -> RatFn {
        let fq = &self.base;
        // (N/D)' = (N'D - ND')/D^2
        let num = poly_add(
            fq,
            &poly_mul(fq, &poly_derivative(fq, &a.num), &a.den),
            &poly_neg(fq, &poly_mul(fq, &a.num, &poly_derivative(fq, &a.den))),
        );
        self.normalize(num, poly_mul(fq, &a.den, &a.den))
    }

    pub fn eval(&self, a: &RatFn, x: &FqElem) -> Option<FqElem> {
        let fq = &self.base;
        let d = poly_eval(fq, &a.den, x);
        if fq.is_zero(&d) {
            return None;
        }
        Some(fq.mul(&poly_eval(fq, &a.num, x), &fq.inv(&d)))
    }

    pub fn display(&self, a: &RatFn) -> String {
        let num = self.display_poly(&a.num);
        if poly_deg(&self.base, &a.den) == 0 && self.base.is_one(&a.den[0]) {
            num
        } else {
            format!("({})/({})", num, self.display_poly(&a.den))
        }
    }

    pub fn display_poly(&self, f: &FqPoly) -> String {
        let fq = &self.base;
        if poly_is_zero(fq, f) {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in f.iter().enumerate().rev() {
            if fq.is_zero(c) {
                continue;
            }
            let cs = fq.display(c);
            let part = match i {
                0 => cs,
                1 if fq.is_one(c) => self.var.to_string(),
                1 => format!("{cs}*{}", self.var),
                _ if fq.is_one(c) => format!("{}^{i}", self.var),
                _ => format!("{cs}*{}^{i}", self.var),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

impl fmt::Display for RatFnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}({})", self.base.order(), self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2s() -> RatFnField {
        RatFnField::new(Fq::prime(2), 's')
    }

    #[test]
    fn normalization_cancels() {
        let k = f2s();
        let fq = &k.base;
        // (s^2 + s)/(s) = s + 1
        let num = vec![fq.zero(), fq.one(), fq.one()];
        let den = vec![fq.zero(), fq.one()];
        let a = k.from_parts(num, den);
        assert_eq!(a.num, vec![fq.one(), fq.one()]);
        assert_eq!(a.den, vec![fq.one()]);
    }

    #[test]
    fn s_is_not_a_square() {
        let k = f2s();
        assert!(!k.is_pth_power(&k.var_elem()));
        let s2 = k.mul(&k.var_elem(), &k.var_elem());
        assert_eq!(k.pth_root(&s2), Some(k.var_elem()));
    }

    #[test]
    fn p_power_coordinates_round_trip() {
        let k = f2s();
        let s = k.var_elem();
        // a = 1/(s+1) + s^3
        let one_over = k.inv(&k.add(&s, &k.one()));
        let a = k.add(&one_over, &k.pow(&s, 3));
        let coords = k.p_power_coordinates(&a);
        assert_eq!(coords.len(), 2);
        assert_eq!(k.from_p_power_coordinates(&coords), a);
    }

    #[test]
    fn field_ops() {
        let k = f2s();
        let s = k.var_elem();
        let a = k.add(&s, &k.one());
        let prod = k.mul(&a, &k.inv(&a));
        assert!(k.is_one(&prod));
    }
}
