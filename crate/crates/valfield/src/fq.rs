//! Finite fields F_q, q = p^n, with exact arithmetic.
//!
//! A field is a runtime object carrying (p, n, modulus); elements are
//! coefficient vectors over the prime field, reduced modulo the modulus.
//! All operations go through the field object. Moduli are chosen
//! deterministically (first irreducible monic polynomial in enumeration
//! order), so equal (p, n) always means the same field.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Element of F_q: coefficients c_0..c_{n-1} in [0, p) w.r.t. the power
/// basis of the generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FqElem(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u64,
    n: usize,
    /// Lower coefficients of the monic modulus: x^n = -(m_{n-1} x^{n-1} + ... + m_0).
    modulus: Vec<u64>,
}

fn mod_p(x: u64, p: u64) -> u64 {
    x % p
}

impl Fq {
    /// Prime field F_p.
    pub fn prime(p: u64) -> Arc<Fq> {
        assert!(is_prime_u64(p), "{p} is not prime");
        Arc::new(Fq { p, n: 1, modulus: vec![0] })
    }

    /// F_{p^n} with the deterministic modulus.
    pub fn extension(p: u64, n: usize) -> Arc<Fq> {
        assert!(is_prime_u64(p), "{p} is not prime");
        assert!(n >= 1);
        if n == 1 {
            return Fq::prime(p);
        }
        let fp = Fq::prime(p);
        let modulus = first_irreducible(&fp, n);
        let modulus: Vec<u64> = modulus.iter().take(n).map(|c| c.0[0]).collect();
        Arc::new(Fq { p, n, modulus })
    }

    /// F_q for a prime power q.
    pub fn with_order(q: u64) -> Result<Arc<Fq>> {
        let (p, n) = split_prime_power(q)
            .ok_or_else(|| Error::Unsupported(format!("{q} is not a prime power")))?;
        Ok(Fq::extension(p, n))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.n])
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.n];
        v[0] = mod_p(c, self.p);
        FqElem(v)
    }

    pub fn from_i64(&self, c: i64) -> FqElem {
        let p = self.p as i64;
        self.from_u64(c.rem_euclid(p) as u64)
    }

    /// The generator (class of x); only meaningful for n > 1.
    pub fn gen(&self) -> FqElem {
        if self.n == 1 {
            return self.one();
        }
        let mut v = vec![0; self.n];
        v[1] = 1;
        FqElem(v)
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| mod_p(x + y, self.p))
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| mod_p(self.p - mod_p(x, self.p), self.p)).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        // schoolbook product then reduction by the modulus
        let mut prod = vec![0u64; 2 * self.n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut prod: Vec<u64>) -> FqElem {
        for i in (self.n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            // x^i = x^{i-n} * x^n = -x^{i-n} * (m_{n-1} x^{n-1} + ... + m_0)
            for (j, &m) in self.modulus.iter().enumerate() {
                let sub = (c * m) % self.p;
                let idx = i - self.n + j;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        prod.truncate(self.n);
        FqElem(prod)
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
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

    pub fn inv(&self, a: &FqElem) -> FqElem {
        assert!(!self.is_zero(a), "inversion of zero in F_{}", self.order());
        self.pow(a, self.order() - 2)
    }

    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// Unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.order() / self.p)
    }

    /// Trace to the prime field, as an integer in [0, p).
    pub fn trace_to_prime(&self, a: &FqElem) -> u64 {
        let mut acc = self.zero();
        let mut x = a.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &x);
            x = self.frobenius(&x);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }

    /// Element with the given enumeration index (base-p digits).
    pub fn elem_from_index(&self, mut idx: u64) -> FqElem {
        let mut v = vec![0; self.n];
        for slot in v.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        FqElem(v)
    }

    pub fn all_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.elem_from_index(i))
    }

    /// Degree over F_p of the subfield generated by the given elements:
    /// the least k | n with a^(p^k) = a for all a.
    pub fn subfield_degree(&self, elems: &[FqElem]) -> usize {
        'outer: for k in 1..=self.n {
            if self.n % k != 0 {
                continue;
            }
            let qk = self.p.pow(k as u32);
            for a in elems {
                if self.pow(a, qk) != *a {
                    continue 'outer;
                }
            }
            return k;
        }
        self.n
    }

    pub fn is_perfect(&self) -> bool {
        true
    }

    pub fn display(&self, a: &FqElem) -> String {
        if self.n == 1 {
            return a.0[0].to_string();
        }
        if self.is_zero(a) {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".into(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.order())
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn split_prime_power(q: u64) -> Option<(u64, usize)> {
    for p in 2..=q {
        if q % p == 0 {
            if !is_prime_u64(p) {
                return None;
            }
            let mut m = q;
            let mut n = 0;
            while m % p == 0 {
                m /= p;
                n += 1;
            }
            return if m == 1 { Some((p, n)) } else { None };
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Polynomials over F_q: dense coefficient vectors, lowest degree first.
// ---------------------------------------------------------------------------

pub type FqPoly = Vec<FqElem>;

pub fn poly_trim(field: &Fq, mut f: FqPoly) -> FqPoly {
    while f.len() > 1 && field.is_zero(f.last().unwrap()) {
        f.pop();
    }
    f
}

pub fn poly_deg(field: &Fq, f: &FqPoly) -> usize {
    let mut d = f.len();
    while d > 1 && field.is_zero(&f[d - 1]) {
        d -= 1;
    }
    d - 1
}

pub fn poly_is_zero(field: &Fq, f: &FqPoly) -> bool {
    f.iter().all(|c| field.is_zero(c))
}

pub fn poly_add(field: &Fq, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let n = a.len().max(b.len());
    let z = field.zero();
    let f = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    poly_trim(field, f)
}

pub fn poly_neg(field: &Fq, a: &FqPoly) -> FqPoly {
    a.iter().map(|c| field.neg(c)).collect()
}

pub fn poly_sub(field: &Fq, a: &FqPoly, b: &FqPoly) -> FqPoly {
    poly_add(field, a, &poly_neg(field, b))
}

pub fn poly_mul(field: &Fq, a: &FqPoly, b: &FqPoly) -> FqPoly {
    if poly_is_zero(field, a) || poly_is_zero(field, b) {
        return vec![field.zero()];
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = field.mul(x, y);
            out[i + j] = field.add(&out[i + j], &t);
        }
    }
    poly_trim(field, out)
}

pub fn poly_scale(field: &Fq, a: &FqPoly, c: &FqElem) -> FqPoly {
    poly_trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn poly_eval(field: &Fq, f: &FqPoly, x: &FqElem) -> FqElem {
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

pub fn poly_divrem(field: &Fq, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
    let db = poly_deg(field, b);
    assert!(!poly_is_zero(field, b), "division by zero polynomial");
    let lead_inv = field.inv(&b[db]);
    let mut rem = a.clone();
    let da = poly_deg(field, &rem);
    if da < db || poly_is_zero(field, &rem) {
        return (vec![field.zero()], poly_trim(field, rem));
    }
    let mut quot = vec![field.zero(); da - db + 1];
    for i in (db..=da).rev() {
        let c = field.mul(&rem[i], &lead_inv);
        if field.is_zero(&c) {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, m) in b.iter().enumerate().take(db + 1) {
            let t = field.mul(&c, m);
            rem[i - db + j] = field.sub(&rem[i - db + j], &t);
        }
    }
    (poly_trim(field, quot), poly_trim(field, rem))
}

pub fn poly_monic(field: &Fq, f: &FqPoly) -> FqPoly {
    let d = poly_deg(field, f);
    let inv = field.inv(&f[d]);
    poly_scale(field, f, &inv)
}

pub fn poly_gcd(field: &Fq, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let mut a = poly_trim(field, a.clone());
    let mut b = poly_trim(field, b.clone());
    while !poly_is_zero(field, &b) {
        let (_, r) = poly_divrem(field, &a, &b);
        a = b;
        b = r;
    }
    if poly_is_zero(field, &a) {
        a
    } else {
        poly_monic(field, &a)
    }
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub fn poly_xgcd(field: &Fq, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
    let zero = || vec![field.zero()];
    let one = || vec![field.one()];
    let (mut r0, mut r1) = (poly_trim(field, a.clone()), poly_trim(field, b.clone()));
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while !poly_is_zero(field, &r1) {
        let (q, r) = poly_divrem(field, &r0, &r1);
        let s = poly_sub(field, &s0, &poly_mul(field, &q, &s1));
        let t = poly_sub(field, &t0, &poly_mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if poly_is_zero(field, &r0) {
        return (r0, s0, t0);
    }
    let d = poly_deg(field, &r0);
    let inv = field.inv(&r0[d]);
    (
        poly_scale(field, &r0, &inv),
        poly_scale(field, &s0, &inv),
        poly_scale(field, &t0, &inv),
    )
}

pub fn poly_derivative(field: &Fq, f: &FqPoly) -> FqPoly {
    if f.len() <= 1 {
        return vec![field.zero()];
    }
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_u64(i as u64)))
        .collect();
    poly_trim(field, out)
}

pub fn poly_powmod(field: &Fq, base: &FqPoly, mut e: u64, m: &FqPoly) -> FqPoly {
    let mut b = poly_divrem(field, base, m).1;
    let mut acc = vec![field.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_divrem(field, &poly_mul(field, &acc, &b), m).1;
        }
        b = poly_divrem(field, &poly_mul(field, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test; exact for any monic f of degree ≥ 1.
pub fn poly_is_irreducible(field: &Fq, f: &FqPoly) -> bool {
    let d = poly_deg(field, f);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = field.order();
    let x = vec![field.zero(), field.one()];
    // x^(q^d) ≡ x mod f
    let mut xq = x.clone();
    for _ in 0..d {
        xq = frobenius_power_mod(field, &xq, q, f);
    }
    if poly_trim(field, poly_sub(field, &xq, &x)) != vec![field.zero()] {
        return false;
    }
    // For each prime r | d: gcd(x^(q^(d/r)) - x, f) = 1
    for r in prime_divisors(d as u64) {
        let k = d / r as usize;
        let mut xk = x.clone();
        for _ in 0..k {
            xk = frobenius_power_mod(field, &xk, q, f);
        }
        let g = poly_gcd(field, &poly_sub(field, &xk, &x), f);
        if poly_deg(field, &g) != 0 {
            return false;
        }
    }
    true
}

fn frobenius_power_mod(field: &Fq, g: &FqPoly, q: u64, m: &FqPoly) -> FqPoly {
    poly_powmod(field, g, q, m)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All roots of f in F_q, with multiplicity, by scanning the field.
pub fn poly_roots(field: &Fq, f: &FqPoly) -> Vec<(FqElem, usize)> {
    let mut out = Vec::new();
    let mut g = poly_trim(field, f.clone());
    for a in field.all_elements() {
        let mut mult = 0;
        loop {
            if poly_deg(field, &g) == 0 {
                break;
            }
            if !field.is_zero(&poly_eval(field, &g, &a)) {
                break;
            }
            let lin = vec![field.neg(&a), field.one()];
            let (q, r) = poly_divrem(field, &g, &lin);
            debug_assert!(poly_is_zero(field, &r));
            g = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((a, mult));
        }
    }
    out
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicity (plus the leading unit). Exhaustive trial division;
/// intended for the small degrees and small fields this artifact works over.
pub fn poly_factor(field: &Fq, f: &FqPoly) -> (FqElem, Vec<(FqPoly, usize)>) {
    let mut g = poly_trim(field, f.clone());
    assert!(!poly_is_zero(field, &g), "factor of zero polynomial");
    let lead = g[poly_deg(field, &g)].clone();
    g = poly_monic(field, &g);
    let mut factors: Vec<(FqPoly, usize)> = Vec::new();

    // linear factors first
    for (root, mult) in poly_roots(field, &g) {
        let lin = vec![field.neg(&root), field.one()];
        for _ in 0..mult {
            let (q, r) = poly_divrem(field, &g, &lin);
            debug_assert!(poly_is_zero(field, &r));
            g = q;
        }
        factors.push((lin, mult));
    }

    // higher-degree irreducible factors by trial division
    let mut k = 2;
    while poly_deg(field, &g) >= 2 * k {
        for cand in monic_polys(field, k) {
            if poly_deg(field, &g) < 2 * k {
                break;
            }
            if !poly_is_irreducible(field, &cand) {
                continue;
            }
            let mut mult = 0;
            loop {
                let (q, r) = poly_divrem(field, &g, &cand);
                if poly_is_zero(field, &r) {
                    g = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                factors.push((cand, mult));
            }
        }
        k += 1;
    }
    if poly_deg(field, &g) >= 1 {
        factors.push((g, 1));
    }
    factors.sort_by_key(|(f, _)| poly_key(field, f));
    (lead, factors)
}

fn poly_key(field: &Fq, f: &FqPoly) -> (usize, Vec<Vec<u64>>) {
    let _ = field;
    (f.len(), f.iter().map(|c| c.0.clone()).collect())
}

/// Monic polynomials of exact degree d over F_q, in deterministic order.
fn monic_polys(field: &Fq, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.order();
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(field.elem_from_index(idx % q));
            idx /= q;
        }
        coeffs.push(field.one());
        coeffs
    })
}

fn first_irreducible(fp: &Fq, n: usize) -> FqPoly {
    for cand in monic_polys(fp, n) {
        if poly_is_irreducible(fp, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over finite fields")
}

// ---------------------------------------------------------------------------
// Field embeddings
// ---------------------------------------------------------------------------

/// Embedding of `small` into `big` (small.degree() must divide big.degree(),
/// same p). Deterministic: the generator maps to the first root of the small
/// modulus found in enumeration order.
pub struct FqEmbedding {
    pub small: Arc<Fq>,
    pub big: Arc<Fq>,
    gen_image: FqElem,
}

impl FqEmbedding {
    pub fn find(small: &Arc<Fq>, big: &Arc<Fq>) -> Result<FqEmbedding> {
        if small.p() != big.p() || big.degree() % small.degree() != 0 {
            return Err(Error::Unsupported(format!(
                "no embedding of F{} into F{}",
                small.order(),
                big.order()
            )));
        }
        if small.degree() == 1 {
            return Ok(FqEmbedding {
                small: small.clone(),
                big: big.clone(),
                gen_image: big.one(),
            });
        }
        // modulus of `small` as a polynomial over `big`'s prime subfield
        let mut modulus: FqPoly = small
            .modulus()
            .iter()
            .map(|&c| big.from_u64(c))
            .collect();
        modulus.push(big.one());
        for a in big.all_elements() {
            if big.is_zero(&poly_eval(big, &modulus, &a)) {
                return Ok(FqEmbedding {
                    small: small.clone(),
                    big: big.clone(),
                    gen_image: a,
                });
            }
        }
        unreachable!("splitting field contains a root")
    }

    pub fn map(&self, a: &FqElem) -> FqElem {
        let mut acc = self.big.zero();
        let mut pow = self.big.one();
        for &c in &a.0 {
            let term = self.big.mul(&pow, &self.big.from_u64(c));
            acc = self.big.add(&acc, &term);
            pow = self.big.mul(&pow, &self.gen_image);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f4 = Fq::extension(2, 2);
        // modulus should be x^2 + x + 1 (the only irreducible quadratic over F2)
        assert_eq!(f4.modulus(), &[1, 1]);
        let g = f4.gen();
        let g2 = f4.mul(&g, &g);
        // g^2 = g + 1
        assert_eq!(g2, f4.add(&g, &f4.one()));
        // g^3 = 1
        assert!(f4.is_one(&f4.pow(&g, 3)));
        assert_eq!(f4.inv(&g), g2);
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let f9 = Fq::extension(3, 2);
        assert_eq!(f9.modulus(), &[1, 0]);
        let g = f9.gen();
        // g^2 = -1 = 2
        assert_eq!(f9.mul(&g, &g), f9.from_u64(2));
    }

    #[test]
    fn frobenius_and_pth_root() {
        let f9 = Fq::extension(3, 2);
        for a in f9.all_elements() {
            let fr = f9.frobenius(&a);
            assert_eq!(f9.pth_root(&fr), a);
            assert_eq!(f9.frobenius(&f9.pth_root(&a)), a);
        }
    }

    #[test]
    fn trace_and_artin_schreier() {
        let f2 = Fq::prime(2);
        // X^2 + X + 1 irreducible over F2 <=> Tr(1) = 1
        assert_eq!(f2.trace_to_prime(&f2.one()), 1);
        let f4 = Fq::extension(2, 2);
        // Tr_{F4/F2}(g) = g + g^2 = 1
        assert_eq!(f4.trace_to_prime(&f4.gen()), 1);
    }

    #[test]
    fn factor_small() {
        let f2 = Fq::prime(2);
        // x^2 + x + 1 irreducible
        let f = vec![f2.one(), f2.one(), f2.one()];
        assert!(poly_is_irreducible(&f2, &f));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F2
        let g = vec![f2.one(), f2.zero(), f2.one(), f2.zero(), f2.one()];
        let (_, factors) = poly_factor(&f2, &g);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 2);
        assert_eq!(factors[0].0, f);
    }

    #[test]
    fn factor_with_roots_and_quadratics() {
        let f3 = Fq::prime(3);
        // (x-1)(x^2+1) over F3; x^2+1 irreducible
        let quad = vec![f3.one(), f3.zero(), f3.one()];
        let lin = vec![f3.neg(&f3.one()), f3.one()];
        let prod = poly_mul(&f3, &quad, &lin);
        let (_, factors) = poly_factor(&f3, &prod);
        assert_eq!(factors.len(), 2);
        let degs: Vec<usize> = factors.iter().map(|(f, _)| poly_deg(&f3, f)).collect();
        assert!(degs.contains(&1) && degs.contains(&2));
    }

    #[test]
    fn embedding_f2_into_f4() {
        let f2 = Fq::prime(2);
        let f4 = Fq::extension(2, 2);
        let emb = FqEmbedding::find(&f2, &f4).unwrap();
        assert!(f4.is_one(&emb.map(&f2.one())));
    }

    #[test]
    fn embedding_f4_into_f16() {
        let f4 = Fq::extension(2, 2);
        let f16 = Fq::extension(2, 4);
        let emb = FqEmbedding::find(&f4, &f16).unwrap();
        let img = emb.map(&f4.gen());
        // image must satisfy x^2 + x + 1 = 0
        let val = f16.add(&f16.add(&f16.mul(&img, &img), &img), &f16.one());
        assert!(f16.is_zero(&val));
        // homomorphism spot-check
        let a = f4.gen();
        let b = f4.add(&f4.gen(), &f4.one());
        assert_eq!(emb.map(&f4.mul(&a, &b)), f16.mul(&emb.map(&a), &emb.map(&b)));
    }

    #[test]
    fn subfield_degree_detection() {
        let f16 = Fq::extension(2, 4);
        assert_eq!(f16.subfield_degree(&[f16.one()]), 1);
        assert_eq!(f16.subfield_degree(&[f16.gen()]), 4);
    }
}
