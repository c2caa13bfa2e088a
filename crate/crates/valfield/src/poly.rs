//! Polynomials over a series field: arithmetic, Newton polygons, element
//! Hensel lifting, and the coprime two-factor lift used for slope and
//! residual splitting.
//!
//! Sign convention, fixed once: a hull edge (i1,y1)→(i2,y2) carries
//! root_valuation = (y1 − y2)/(i2 − i1), asserting exactly (i2 − i1) roots
//! of that valuation in the algebraic closure. Root valuations strictly
//! decrease left to right.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fq;
use crate::residue::{ResElem, ResidueField};
use crate::series::{Ctx, FieldCtx, Series, Valuation};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    ctx: Ctx,
    /// coeffs[i] is the coefficient of X^i; len = degree + 1
    coeffs: Vec<Series>,
}

impl Poly {
    pub fn new(ctx: &Ctx, coeffs: Vec<Series>) -> Poly {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        for c in &coeffs {
            assert!(FieldCtx::same(c.ctx(), ctx), "mixed fields in polynomial");
        }
        Poly { ctx: ctx.clone(), coeffs }
    }

    /// Drop trailing exactly-zero coefficients.
    pub fn trimmed(mut self) -> Poly {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_exactly_zero() {
            self.coeffs.pop();
        }
        self
    }

    pub fn from_roots_monic(ctx: &Ctx, roots: &[Series]) -> Result<Poly> {
        let mut f = Poly::new(ctx, vec![Series::one(ctx)]);
        for r in roots {
            let lin = Poly::new(ctx, vec![r.neg(), Series::one(ctx)]);
            f = f.mul(&lin)?;
        }
        Ok(f)
    }

    pub fn x_power(ctx: &Ctx, k: usize) -> Poly {
        let mut coeffs = vec![Series::zero(ctx); k + 1];
        coeffs[k] = Series::one(ctx);
        Poly::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Series {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Series {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        *self.leading() == Series::one(&self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exactly_zero())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Series::zero(&self.ctx);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            out.push(a.add(b)?);
        }
        Ok(Poly::new(&self.ctx, out).trimmed())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let mut out = vec![Series::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exactly_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.mul(b)?;
                out[i + j] = out[i + j].add(&t)?;
            }
        }
        Ok(Poly::new(&self.ctx, out).trimmed())
    }

    pub fn scale(&self, c: &Series) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.ctx, coeffs))
    }

    pub fn mul_x_power(&self, k: usize) -> Poly {
        let mut coeffs = vec![Series::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(&self.ctx, coeffs)
    }

    /// Divide by X^k (requires the low coefficients to be exactly zero).
    pub fn div_x_power(&self, k: usize) -> Poly {
        assert!(self.coeffs.iter().take(k).all(|c| c.is_exactly_zero()));
        Poly::new(&self.ctx, self.coeffs[k..].to_vec())
    }

    pub fn eval(&self, x: &Series) -> Result<Series> {
        let mut acc = Series::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::new(&self.ctx, vec![Series::zero(&self.ctx)]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&self.ctx.residue.from_i64(i as i64)))
            .collect();
        Poly::new(&self.ctx, coeffs).trimmed()
    }

    /// Synthetic division by a monic divisor; exact in each coefficient.
    pub fn divrem_monic(&self, div: &Poly) -> Result<(Poly, Poly)> {
        assert!(div.is_monic(), "divrem_monic needs a monic divisor");
        let dd = div.degree();
        if self.degree() < dd {
            return Ok((
                Poly::new(&self.ctx, vec![Series::zero(&self.ctx)]),
                self.clone(),
            ));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Series::zero(&self.ctx); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_exactly_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            rem[i] = Series::zero(&self.ctx);
            for (j, m) in div.coeffs.iter().enumerate().take(dd) {
                let t = c.mul(m)?;
                rem[i - dd + j] = rem[i - dd + j].sub(&t)?;
            }
        }
        rem.truncate(dd.max(1));
        Ok((
            Poly::new(&self.ctx, quot).trimmed(),
            Poly::new(&self.ctx, rem).trimmed(),
        ))
    }

    /// Taylor shift f(X + a), exact.
    pub fn shift(&self, a: &Series) -> Result<Poly> {
        let n = self.coeffs.len();
        let mut c = self.coeffs.clone();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let t = c[j + 1].mul(a)?;
                c[j] = c[j].add(&t)?;
            }
        }
        Ok(Poly::new(&self.ctx, c))
    }

    /// Substitute X = t^γ·Y and divide by the minimal value so the result is
    /// integral with unit content: returns (F, shift_value c) where
    /// F(Y) = f(t^γ Y)/t^c. γ must lie in the value group.
    pub fn rescale_root(&self, gamma: &Exponent) -> Result<(Poly, Exponent)> {
        let mut vals: Vec<Option<Exponent>> = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            match a.valuation() {
                Valuation::Known(v) => vals.push(Some(v + gamma.scale_int(i as i64))),
                Valuation::AboveBound(_) => vals.push(None),
            }
        }
        let c = vals
            .iter()
            .flatten()
            .cloned()
            .min()
            .ok_or_else(|| Error::Unsupported("rescale of zero polynomial".into()))?;
        let one = self.ctx.residue.one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.mul_monomial(&(gamma.scale_int(i as i64) - c.clone()), &one))
            .collect();
        Ok((Poly::new(&self.ctx, coeffs), c))
    }

    /// Inverse of `rescale_root`: g(X) = t^c·F(t^{-γ}X).
    pub fn unrescale_root(&self, gamma: &Exponent, c: &Exponent) -> Poly {
        let one = self.ctx.residue.one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.mul_monomial(&(c - &gamma.scale_int(i as i64)), &one))
            .collect();
        Poly::new(&self.ctx, coeffs)
    }

    /// Unrescale a monic factor from the t^γ-substituted picture, choosing
    /// the normalization that keeps it monic.
    pub fn unrescale_monic(&self, gamma: &Exponent) -> Poly {
        let c = gamma.scale_int(self.degree() as i64);
        self.unrescale_root(gamma, &c)
    }

    pub fn truncate(&self, pi: &Exponent) -> Poly {
        Poly::new(
            &self.ctx,
            self.coeffs.iter().map(|c| c.truncate(pi)).collect(),
        )
    }

    /// Truncate all coefficients except the leading one (a monic factor is
    /// exactly monic no matter how little of the rest is known).
    pub fn truncate_monic(&self, pi: &Exponent) -> Poly {
        let n = self.coeffs.len() - 1;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i == n { c.clone() } else { c.truncate(pi) })
            .collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn map_into(&self, new_ctx: &Ctx, map: &dyn Fn(&ResElem) -> ResElem) -> Poly {
        Poly::new(
            new_ctx,
            self.coeffs.iter().map(|c| c.map_into(new_ctx, map)).collect(),
        )
    }

    /// Re-tag into a context that differs only by value group.
    pub fn retag(&self, new_ctx: &Ctx) -> Poly {
        self.map_into(new_ctx, &|c| c.clone())
    }

    /// Minimum valuation over all coefficients (lower bound; None for the
    /// exact zero polynomial).
    pub fn min_coeff_valuation(&self) -> Option<Exponent> {
        self.coeffs
            .iter()
            .filter_map(|c| c.valuation().lower_bound())
            .min()
    }

    /// The residue polynomial (coefficient-wise residue map); requires all
    /// coefficients to have v ≥ 0.
    pub fn residue_poly(&self) -> Result<Vec<ResElem>> {
        self.coeffs.iter().map(|c| c.residue()).collect()
    }

    /// Formal derivative is identically zero (f ∈ K[X^p]).
    pub fn derivative_is_zero(&self) -> bool {
        self.derivative().is_zero()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exactly_zero() && !(i == 0 && first) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Newton polygon
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// Valuation of the roots this segment accounts for.
    pub root_valuation: Exponent,
    /// Number of roots (with multiplicity) of that valuation.
    pub length: usize,
    pub i_start: usize,
    pub i_end: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    /// Lower convex hull vertices (index, valuation), left to right.
    pub vertices: Vec<(usize, Exponent)>,
    /// Segments in hull order: root valuations strictly decrease.
    pub segments: Vec<Segment>,
    /// Index of the first finite vertex = multiplicity of the root 0.
    pub zero_root_multiplicity: usize,
}

impl NewtonPolygon {
    pub fn span(&self) -> Exponent {
        let ys: Vec<&Exponent> = self.vertices.iter().map(|(_, y)| y).collect();
        match (ys.iter().min(), ys.iter().max()) {
            (Some(lo), Some(hi)) => (*hi).clone() - (*lo).clone(),
            _ => Exponent::zero(),
        }
    }
}

/// Compute the Newton polygon of f.
///
/// Exactly-zero coefficients are points at infinity. Truncated coefficients
/// with no visible terms are sound only if their precision bound lies
/// strictly above the hull; otherwise the hull is not determined and the
/// computation reports `PrecisionExhausted`.
pub fn newton_polygon(f: &Poly) -> Result<NewtonPolygon> {
    enum Pt {
        Known(Exponent),
        Unknown(Exponent),
        Zero,
    }
    let pts: Vec<Pt> = f
        .coeffs()
        .iter()
        .map(|c| match c.valuation() {
            Valuation::Known(v) => Pt::Known(v),
            Valuation::AboveBound(Some(p)) => Pt::Unknown(p),
            Valuation::AboveBound(None) => Pt::Zero,
        })
        .collect();

    let n = f.degree();
    match &pts[n] {
        Pt::Known(_) => {}
        Pt::Unknown(p) => return Err(Error::PrecisionExhausted(p.clone())),
        Pt::Zero => return Err(Error::Unsupported("zero leading coefficient".into())),
    }

    let first_finite = pts
        .iter()
        .position(|p| matches!(p, Pt::Known(_)))
        .expect("leading coefficient is known");

    // every index below the first known point must be exactly zero
    for (i, p) in pts.iter().enumerate().take(first_finite) {
        if let Pt::Unknown(b) = p {
            let _ = i;
            return Err(Error::PrecisionExhausted(b.clone()));
        }
    }

    let known: Vec<(usize, Exponent)> = pts
        .iter()
        .enumerate()
        .filter_map(|(i, p)| match p {
            Pt::Known(v) => Some((i, v.clone())),
            _ => None,
        })
        .collect();

    // Andrew-style lower hull over the known points (already sorted by index)
    let mut hull: Vec<(usize, Exponent)> = Vec::new();
    for (i, y) in known {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2].clone();
            let (i2, y2) = hull[hull.len() - 1].clone();
            // remove (i2,y2) if it lies on or above the chord (i1,y1)-(i,y)
            let lhs = (y2.clone() - y1.clone()).scale_int((i - i1) as i64);
            let rhs = (y.clone() - y1.clone()).scale_int((i2 - i1) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((i, y));
    }

    // soundness of truncated points: bound must lie strictly above the hull
    for (i, p) in pts.iter().enumerate() {
        if let Pt::Unknown(bound) = p {
            if i < hull[0].0 || i > n {
                return Err(Error::PrecisionExhausted(bound.clone()));
            }
            let hull_at = hull_value_at(&hull, i);
            if *bound <= hull_at {
                return Err(Error::PrecisionExhausted(bound.clone()));
            }
        }
    }

    let segments = hull
        .windows(2)
        .map(|w| {
            let (i1, y1) = &w[0];
            let (i2, y2) = &w[1];
            Segment {
                root_valuation: (y1 - y2).div_int((*i2 - *i1) as i64),
                length: i2 - i1,
                i_start: *i1,
                i_end: *i2,
            }
        })
        .collect();

    Ok(NewtonPolygon {
        vertices: hull,
        segments,
        zero_root_multiplicity: first_finite,
    })
}

fn hull_value_at(hull: &[(usize, Exponent)], i: usize) -> Exponent {
    for w in hull.windows(2) {
        let (i1, y1) = &w[0];
        let (i2, y2) = &w[1];
        if *i1 <= i && i <= *i2 {
            // y1 + (i - i1) * (y2 - y1)/(i2 - i1)
            let slope = (y2 - y1).div_int((*i2 - *i1) as i64);
            return y1.clone() + slope.scale_int((i - *i1) as i64);
        }
    }
    hull.last().unwrap().1.clone()
}

/// The residual polynomial of a segment, over the residue field: collect the
/// lattice of edge coefficients after the substitution X = t^γ·U.
///
/// Returns the compressed residual R̃ with R(U) = R̃(U^{e'}), where e' is the
/// denominator of γ relative to the group, together with e'.
pub fn residual_polynomial(f: &Poly, seg: &Segment) -> Result<(Vec<ResElem>, u64)> {
    let ctx = f.ctx();
    let gamma = &seg.root_valuation;
    let e = ctx
        .group
        .ramification_of(gamma)
        .ok_or_else(|| Error::GroupTooSmall(gamma.clone()))?;
    let res = &ctx.residue;
    let deg = seg.length / e as usize;
    let mut out = vec![res.zero(); deg + 1];
    // c = value on the edge
    let c = f.coeff(seg.i_start).valuation().known()? + gamma.scale_int(seg.i_start as i64);
    for j in 0..=deg {
        let i = seg.i_start + j * e as usize;
        let coeff = f.coeff(i);
        // the edge exponent this index must carry
        let want = c.clone() - gamma.scale_int(i as i64);
        out[j] = coeff.coeff_at(&want);
    }
    Ok((out, e))
}

// ---------------------------------------------------------------------------
// Hensel lifting: element form
// ---------------------------------------------------------------------------

/// Newton iteration a ← a − f(a)/f′(a), guarded by the henselian
/// precondition v f(a0) > 2 v f′(a0). Returns a root approximation with
/// v f(a) ≥ target and v(a − a0) > v f′(a0).
pub fn hensel_lift(f: &Poly, a0: &Series, target: &Exponent) -> Result<Series> {
    let fp = f.derivative();
    if fp.is_zero() {
        return Err(Error::NewtonPreconditionFailed(
            "f' is identically zero".into(),
        ));
    }
    let v_f = f.eval(a0)?.valuation();
    let v_fp = fp.eval(a0)?.valuation().known().map_err(|_| {
        Error::NewtonPreconditionFailed("v f'(a0) is not determined at this precision".into())
    })?;
    let two_vfp = v_fp.scale_int(2);
    match &v_f {
        Valuation::Known(v) if *v > two_vfp => {}
        Valuation::AboveBound(Some(b)) if *b > two_vfp => {}
        Valuation::AboveBound(None) => return Ok(a0.clone()), // exact root already
        _ => {
            return Err(Error::NewtonPreconditionFailed(format!(
                "v f(a0) = {v_f} is not greater than 2 v f'(a0) = {two_vfp}"
            )))
        }
    }

    // absolute precision needed on the iterate so that v f(a) ≥ target
    let work = target.clone() - v_fp.clone() + Exponent::one();
    let mut a = a0.clone();
    for _ in 0..128 {
        let fa = f.eval(&a)?;
        if fa.valuation().at_least(target) {
            // final iterate, clipped to its guaranteed precision
            return Ok(a.truncate(&work));
        }
        let fpa = fp.eval(&a)?;
        let corr = fa.mul(&fpa.invert_to(&work)?)?;
        a = a.sub(&corr)?.truncate(&work);
    }
    Err(Error::PrecisionExhausted(target.clone()))
}

// ---------------------------------------------------------------------------
// Two-factor lift for coprime residue factorizations
// ---------------------------------------------------------------------------

fn res_to_fq(r: &ResElem) -> fq::FqElem {
    match r {
        ResElem::Fq(x) => x.clone(),
        ResElem::RatFn(_) => panic!("factor machinery runs over Fq residues only"),
    }
}

/// Given monic integral F with residue polynomial ḡ·h̄, ḡ and h̄ coprime,
/// lift to F ≡ G·H (mod t^target) with res G = ḡ, res H = h̄ and G, H monic.
pub fn pair_lift(
    f: &Poly,
    g_bar: &[ResElem],
    h_bar: &[ResElem],
    target: &Exponent,
) -> Result<(Poly, Poly)> {
    let ctx = f.ctx();
    let fq_field = match &ctx.residue {
        ResidueField::Fq(k) | ResidueField::AlgClosure(k) => k.clone(),
        ResidueField::RatFns(_) => {
            return Err(Error::Unsupported(
                "polynomial splitting over F_q(s) residues".into(),
            ))
        }
    };
    let gb: fq::FqPoly = g_bar.iter().map(res_to_fq).collect();
    let hb: fq::FqPoly = h_bar.iter().map(res_to_fq).collect();
    let (one, _s, t) = fq::poly_xgcd(&fq_field, &gb, &hb);
    assert!(
        fq::poly_deg(&fq_field, &one) == 0,
        "residue factors must be coprime"
    );

    let lift_res = |p: &fq::FqPoly| -> Poly {
        let coeffs = p
            .iter()
            .map(|c| Series::constant(ctx, ResElem::Fq(c.clone())))
            .collect();
        Poly::new(ctx, coeffs)
    };
    let mut g = lift_res(&gb);
    let t_poly = lift_res(&t);

    let max_iters = 4096;
    for _ in 0..max_iters {
        let (h, e) = f.divrem_monic(&g)?;
        let ev = e
            .min_coeff_valuation()
            .unwrap_or_else(|| target.clone() + Exponent::one());
        if e.is_zero() || ev >= *target {
            return Ok((g.truncate_monic(target), h.truncate_monic(target)));
        }
        // dg = (t·e) mod g; deg dg < deg g, so g stays monic
        let te = t_poly.mul(&e)?;
        let (_, dg) = te.divrem_monic(&g)?;
        let dg = dg.truncate(&(target.clone() + Exponent::one()));
        g = g.add(&dg)?;
    }
    Err(Error::PrecisionExhausted(target.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::laurent_ctx;

    fn t(ctx: &Ctx, e: i64) -> Series {
        Series::uniformizer_pow(ctx, Exponent::from_int(e))
    }

    fn x2_minus_t(ctx: &Ctx) -> Poly {
        Poly::new(
            ctx,
            vec![t(ctx, 1).neg(), Series::zero(ctx), Series::one(ctx)],
        )
    }

    #[test]
    fn polygon_artin_schreier() {
        // X^p − X − t^{-1} over F_p((t)): one segment (−1/p, p)
        for p in [2i64, 3, 5] {
            let ctx = laurent_ctx(p as u64).unwrap();
            let mut coeffs = vec![Series::zero(&ctx); (p + 1) as usize];
            coeffs[0] = t(&ctx, -1).neg();
            coeffs[1] = Series::one(&ctx).neg();
            coeffs[p as usize] = Series::one(&ctx);
            let f = Poly::new(&ctx, coeffs);
            let np = newton_polygon(&f).unwrap();
            assert_eq!(np.segments.len(), 1);
            assert_eq!(np.segments[0].root_valuation, Exponent::new(-1, p));
            assert_eq!(np.segments[0].length, p as usize);
        }
    }

    #[test]
    fn polygon_x2_minus_t() {
        let ctx = laurent_ctx(3).unwrap();
        let f = x2_minus_t(&ctx);
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].root_valuation, Exponent::new(1, 2));
        assert_eq!(np.segments[0].length, 2);
    }

    #[test]
    fn polygon_two_segments() {
        // X^2 − (1+t)X + t = (X − 1)(X − t): segments (1,1) and (0,1)
        let ctx = laurent_ctx(3).unwrap();
        let a1 = Series::one(&ctx).add(&t(&ctx, 1)).unwrap().neg();
        let f = Poly::new(&ctx, vec![t(&ctx, 1), a1, Series::one(&ctx)]);
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.segments.len(), 2);
        assert_eq!(np.segments[0].root_valuation, Exponent::from_int(1));
        assert_eq!(np.segments[0].length, 1);
        assert_eq!(np.segments[1].root_valuation, Exponent::from_int(0));
        assert_eq!(np.segments[1].length, 1);
    }

    #[test]
    fn polygon_precision_exhausted() {
        let ctx = laurent_ctx(3).unwrap();
        // constant coefficient known only as O(t^0): hull undetermined
        let f = Poly::new(
            &ctx,
            vec![
                Series::o_term(&ctx, Exponent::from_int(0)),
                Series::zero(&ctx),
                Series::one(&ctx),
            ],
        );
        assert!(matches!(
            newton_polygon(&f),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn residual_of_ramified_segment() {
        // X^2 − t over F_2((t)), segment (1/2, 2): compressed residual W + 1
        let ctx = laurent_ctx(2).unwrap();
        let f = x2_minus_t(&ctx);
        let np = newton_polygon(&f).unwrap();
        let (res, e) = residual_polynomial(&f, &np.segments[0]).unwrap();
        assert_eq!(e, 2);
        assert_eq!(res.len(), 2);
        assert!(ctx.residue.is_one(&res[0]));
        assert!(ctx.residue.is_one(&res[1]));
    }

    #[test]
    fn residual_of_inert_quadratic() {
        // X^2 + X + 1 over F_2((t)), segment (0,2): residual U^2 + U + 1
        let ctx = laurent_ctx(2).unwrap();
        let one = Series::one(&ctx);
        let f = Poly::new(&ctx, vec![one.clone(), one.clone(), one.clone()]);
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].root_valuation, Exponent::zero());
        let (res, e) = residual_polynomial(&f, &np.segments[0]).unwrap();
        assert_eq!(e, 1);
        assert_eq!(res.len(), 3);
        for c in &res {
            assert!(ctx.residue.is_one(c));
        }
    }

    #[test]
    fn hensel_sqrt_of_one_plus_t() {
        // f = X^2 − (1+t), a0 = 1 over F_3((t)), target 2 → 1 + 2t + O(t^2)
        let ctx = laurent_ctx(3).unwrap();
        let a0 = Series::one(&ctx);
        let c = Series::one(&ctx).add(&t(&ctx, 1)).unwrap();
        let f = Poly::new(&ctx, vec![c.neg(), Series::zero(&ctx), Series::one(&ctx)]);
        let root = hensel_lift(&f, &a0, &Exponent::from_int(2)).unwrap();
        let expect = Series::one(&ctx)
            .add(&t(&ctx, 1).scale(&ctx.residue.from_i64(2)))
            .unwrap();
        assert!(root.agrees_to(&expect, &Exponent::from_int(2)));
        // back-substitution
        assert!(f
            .eval(&root)
            .unwrap()
            .valuation()
            .at_least(&Exponent::from_int(2)));
    }

    #[test]
    fn hensel_char_2_inseparable_fails() {
        let ctx = laurent_ctx(2).unwrap();
        let c = Series::one(&ctx).add(&t(&ctx, 1)).unwrap();
        let f = Poly::new(&ctx, vec![c.neg(), Series::zero(&ctx), Series::one(&ctx)]);
        assert!(matches!(
            hensel_lift(&f, &Series::one(&ctx), &Exponent::from_int(2)),
            Err(Error::NewtonPreconditionFailed(_))
        ));
    }

    #[test]
    fn hensel_linear_exact() {
        let ctx = laurent_ctx(5).unwrap();
        let c = t(&ctx, 2);
        // f = X − c, a0 = c + t^5 (agrees beyond the threshold)
        let f = Poly::new(&ctx, vec![c.neg(), Series::one(&ctx)]);
        let a0 = c.add(&t(&ctx, 5)).unwrap();
        let root = hensel_lift(&f, &a0, &Exponent::from_int(30)).unwrap();
        assert!(root.agrees_to(&c, &Exponent::from_int(30)));
    }

    #[test]
    fn pair_lift_splits_slopes() {
        // F = X^2 − (1+t)X + t: residue split X(X−1) → factors X − t and X − 1
        let ctx = laurent_ctx(3).unwrap();
        let a1 = Series::one(&ctx).add(&t(&ctx, 1)).unwrap().neg();
        let f = Poly::new(&ctx, vec![t(&ctx, 1), a1, Series::one(&ctx)]);
        let zero = ctx.residue.zero();
        let one = ctx.residue.one();
        // ḡ = X (root-0 cluster… here the residue of X − t), h̄ = X − 1
        let g_bar = vec![zero, one.clone()];
        let h_bar = vec![ctx.residue.neg(&one), one.clone()];
        let tau = Exponent::from_int(20);
        let (g, h) = pair_lift(&f, &g_bar, &h_bar, &tau).unwrap();
        let prod = g.mul(&h).unwrap();
        for i in 0..=2 {
            assert!(prod.coeff(i).agrees_to(f.coeff(i), &tau));
        }
        // g ≡ X − t, h ≡ X − 1
        assert!(g.coeff(0).agrees_to(&t(&ctx, 1).neg(), &tau));
        assert!(h.coeff(0).agrees_to(&Series::one(&ctx).neg(), &tau));
    }
}
