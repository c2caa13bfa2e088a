//! Truncated generalized power series: the universal element representation.
//!
//! An element is a finite list of terms (exponent, coefficient) strictly
//! increasing in exponent, plus an explicit precision bound: the element is
//! known up to O(t^π). Arithmetic propagates π by min-rules; predicates that
//! would need terms at or beyond π fail with `PrecisionExhausted` rather
//! than guess.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::group::ValueGroupDesc;
use crate::residue::{ResElem, ResidueField};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    pub residue: ResidueField,
    pub group: ValueGroupDesc,
    pub uniformizer: char,
}

pub type Ctx = Arc<FieldCtx>;

impl FieldCtx {
    pub fn new(residue: ResidueField, group: ValueGroupDesc, uniformizer: char) -> Ctx {
        Arc::new(FieldCtx { residue, group, uniformizer })
    }

    pub fn p(&self) -> u64 {
        self.residue.p()
    }

    /// Same tag, possibly different Arc.
    pub fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(({})) [group {}]", self.residue, self.uniformizer, self.group)
    }
}

/// Result of asking for the valuation of a truncated element. A termless
/// element reports `AboveBound` with its precision: at finite precision the
/// model cannot distinguish zero from something very small. `None` bound
/// means the element is exactly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Known(Exponent),
    AboveBound(Option<Exponent>),
}

impl Valuation {
    pub fn known(&self) -> Result<Exponent> {
        match self {
            Valuation::Known(e) => Ok(e.clone()),
            Valuation::AboveBound(Some(p)) => Err(Error::PrecisionExhausted(p.clone())),
            Valuation::AboveBound(None) => Err(Error::Unsupported(
                "valuation of the exact zero element requested as a finite value".into(),
            )),
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, Valuation::Known(_))
    }

    /// A sound lower bound on the valuation, when one exists.
    pub fn lower_bound(&self) -> Option<Exponent> {
        match self {
            Valuation::Known(e) => Some(e.clone()),
            Valuation::AboveBound(Some(p)) => Some(p.clone()),
            Valuation::AboveBound(None) => None,
        }
    }

    /// v ≥ bound, decidable even for truncated elements.
    pub fn at_least(&self, bound: &Exponent) -> bool {
        match self {
            Valuation::Known(e) => e >= bound,
            Valuation::AboveBound(Some(p)) => p >= bound,
            Valuation::AboveBound(None) => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Known(e) => write!(f, "{e}"),
            Valuation::AboveBound(Some(p)) => write!(f, "AboveBound({p})"),
            Valuation::AboveBound(None) => write!(f, "AboveBound(inf)"),
        }
    }
}

fn min_prec(a: &Option<Exponent>, b: &Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (None, x) => x.clone(),
        (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    ctx: Ctx,
    /// strictly increasing exponents, no zero coefficients, all < precision
    terms: Vec<(Exponent, ResElem)>,
    /// None = exact (+∞)
    precision: Option<Exponent>,
}

impl Series {
    pub fn zero(ctx: &Ctx) -> Series {
        Series { ctx: ctx.clone(), terms: Vec::new(), precision: None }
    }

    pub fn one(ctx: &Ctx) -> Series {
        Series::constant(ctx, ctx.residue.one())
    }

    pub fn constant(ctx: &Ctx, c: ResElem) -> Series {
        Series::from_terms(ctx, vec![(Exponent::zero(), c)], None)
    }

    pub fn from_i64(ctx: &Ctx, c: i64) -> Series {
        Series::constant(ctx, ctx.residue.from_i64(c))
    }

    /// c · t^γ
    pub fn monomial(ctx: &Ctx, gamma: Exponent, c: ResElem) -> Series {
        Series::from_terms(ctx, vec![(gamma, c)], None)
    }

    /// t^γ
    pub fn uniformizer_pow(ctx: &Ctx, gamma: Exponent) -> Series {
        Series::monomial(ctx, gamma, ctx.residue.one())
    }

    /// The zero element known only up to O(t^π).
    pub fn o_term(ctx: &Ctx, pi: Exponent) -> Series {
        Series { ctx: ctx.clone(), terms: Vec::new(), precision: Some(pi) }
    }

    /// Canonicalizing constructor: sorts, merges equal exponents, drops
    /// zero coefficients, clips at precision, and checks group membership.
    pub fn from_terms(
        ctx: &Ctx,
        terms: Vec<(Exponent, ResElem)>,
        precision: Option<Exponent>,
    ) -> Series {
        let mut terms = terms;
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exponent, ResElem)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            assert!(
                ctx.group.contains(&e),
                "exponent {e} outside value group {}",
                ctx.group
            );
            if let Some(last) = merged.last_mut() {
                if last.0 == e {
                    last.1 = ctx.residue.add(&last.1, &c);
                    continue;
                }
            }
            merged.push((e, c));
        }
        merged.retain(|(_, c)| !ctx.residue.is_zero(c));
        if let Some(p) = &precision {
            merged.retain(|(e, _)| e < p);
        }
        Series { ctx: ctx.clone(), terms: merged, precision }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Exponent, ResElem)] {
        &self.terms
    }

    pub fn precision(&self) -> Option<&Exponent> {
        self.precision.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Exactly the zero element (no terms, infinite precision).
    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty() && self.precision.is_none()
    }

    fn check_same_field(&self, other: &Series) -> Result<()> {
        if FieldCtx::same(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Known(e.clone()),
            None => Valuation::AboveBound(self.precision.clone()),
        }
    }

    pub fn leading(&self) -> Option<(&Exponent, &ResElem)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn coeff_at(&self, e: &Exponent) -> ResElem {
        match self.terms.binary_search_by(|(x, _)| x.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ctx.residue.zero(),
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_same_field(other)?;
        let precision = min_prec(&self.precision, &other.precision);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Series::from_terms(&self.ctx, terms, precision))
    }

    pub fn neg(&self) -> Series {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ctx.residue.neg(c)))
            .collect();
        Series { ctx: self.ctx.clone(), terms, precision: self.precision.clone() }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_same_field(other)?;
        // result precision = min(π_x + v_y, π_y + v_x); exact inputs stay exact
        let bound_with = |pi: &Option<Exponent>, v: &Valuation| -> Option<Exponent> {
            match (pi, v.lower_bound()) {
                (Some(p), Some(b)) => Some(p + &b),
                (Some(p), None) => Some(p.clone()),
                (None, _) => None,
            }
        };
        let precision = min_prec(
            &bound_with(&self.precision, &other.valuation()),
            &bound_with(&other.precision, &self.valuation()),
        );
        let res = &self.ctx.residue;
        let mut terms: Vec<(Exponent, ResElem)> = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push((e1 + e2, res.mul(c1, c2)));
            }
        }
        Ok(Series::from_terms(&self.ctx, terms, precision))
    }

    pub fn mul_monomial(&self, gamma: &Exponent, c: &ResElem) -> Series {
        let res = &self.ctx.residue;
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e + gamma, res.mul(x, c)))
            .collect();
        let precision = self.precision.as_ref().map(|p| p + gamma);
        Series::from_terms(&self.ctx, terms, precision)
    }

    pub fn scale(&self, c: &ResElem) -> Series {
        self.mul_monomial(&Exponent::zero(), c)
    }

    /// Multiplicative inverse, computed to the given absolute precision.
    /// Requires a known valuation (a leading term below the precision bound).
    pub fn invert_to(&self, abs_precision: &Exponent) -> Result<Series> {
        let (v, lead) = match self.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Err(Error::PrecisionExhausted(
                    self.precision.clone().unwrap_or_else(Exponent::zero),
                ))
            }
        };
        let res = &self.ctx.residue;
        let lead_inv = res.inv(&lead);
        // x = c t^v (1 + u), v(u) > 0: 1/x = c^{-1} t^{-v} Σ (-u)^k
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Series::monomial(&self.ctx, -&v, lead_inv));
        }
        let rel_target = abs_precision + &v; // relative precision for Σ(-u)^k
        let unit = self.mul_monomial(&-&v, &lead_inv); // 1 + u
        let one = Series::one(&self.ctx);
        let u = unit.sub(&one)?.truncate(&rel_target);
        let vu = match u.valuation() {
            Valuation::Known(e) => e,
            Valuation::AboveBound(_) => {
                // unit is 1 to working precision
                let inv_mon = Series::monomial(&self.ctx, -&v, lead_inv);
                return Ok(inv_mon.truncate(abs_precision));
            }
        };
        assert!(vu > Exponent::zero());
        let mut acc = one.clone();
        let mut pow = one;
        loop {
            pow = pow.mul(&u.neg())?.truncate(&rel_target);
            match pow.valuation() {
                Valuation::Known(e) if e < rel_target => {
                    acc = acc.add(&pow)?;
                }
                _ => break,
            }
        }
        let inv = acc.mul_monomial(&-&v, &lead_inv);
        // documented rule: result precision min(π_x - 2v, requested)
        let limit = self.precision.as_ref().map(|p| (p - &v) - v.clone());
        let out = inv.truncate(abs_precision);
        Ok(match limit {
            Some(l) if &l < abs_precision => out.truncate(&l),
            _ => out,
        })
    }

    /// Residue map: the coefficient at exponent 0, defined for v ≥ 0.
    pub fn residue(&self) -> Result<ResElem> {
        match self.valuation() {
            Valuation::Known(v) if v.is_negative() => Err(Error::NegativeValue(v)),
            Valuation::Known(_) => {
                if let Some(p) = &self.precision {
                    if *p <= Exponent::zero() {
                        return Err(Error::PrecisionExhausted(p.clone()));
                    }
                }
                Ok(self.coeff_at(&Exponent::zero()))
            }
            Valuation::AboveBound(Some(p)) => {
                if p <= Exponent::zero() {
                    Err(Error::PrecisionExhausted(p))
                } else {
                    Ok(self.ctx.residue.zero())
                }
            }
            Valuation::AboveBound(None) => Ok(self.ctx.residue.zero()),
        }
    }

    /// x ↦ x^p. Exponents multiply by p, coefficients go through the residue
    /// Frobenius; cross terms vanish in characteristic p, so precision scales
    /// by p as well.
    pub fn frobenius(&self) -> Series {
        let p = self.ctx.p() as i64;
        let res = &self.ctx.residue;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.scale_int(p), res.frobenius(c)))
            .collect();
        let precision = self.precision.as_ref().map(|pi| pi.scale_int(p));
        // Frobenius may leave the value group for proper subgroups of Q only
        // when the group is not closed under multiplication by p; the groups
        // here all are.
        Series::from_terms(&self.ctx, terms, precision)
    }

    /// p-th root, when every term exponent is p-divisible inside the group
    /// and every coefficient has a p-th root in the residue field.
    pub fn pth_root(&self) -> Result<Series> {
        let p = self.ctx.p() as i64;
        let res = &self.ctx.residue;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let e_over_p = e.div_int(p);
            if !self.ctx.group.contains(&e_over_p) {
                return Err(Error::NotAPthPower(format!("exponent {e}")));
            }
            let root = res.pth_root(c)?;
            terms.push((e_over_p, root));
        }
        let precision = self.precision.as_ref().map(|pi| pi.div_int(p));
        Ok(Series::from_terms(&self.ctx, terms, precision))
    }

    pub fn pow(&self, e: u64) -> Result<Series> {
        let mut acc = Series::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Clip to precision min(current, π).
    pub fn truncate(&self, pi: &Exponent) -> Series {
        let precision = Some(match &self.precision {
            Some(p) if p < pi => p.clone(),
            _ => pi.clone(),
        });
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| Some(e) < precision.as_ref())
            .cloned()
            .collect();
        Series { ctx: self.ctx.clone(), terms, precision }
    }

    /// Keep only terms with exponent < π without recording a precision bound
    /// (used when the discarded tail is known separately).
    pub fn split_at(&self, pi: &Exponent) -> (Series, Series) {
        let below = self
            .terms
            .iter()
            .filter(|(e, _)| e < pi)
            .cloned()
            .collect();
        let above = self
            .terms
            .iter()
            .filter(|(e, _)| e >= pi)
            .cloned()
            .collect();
        (
            Series { ctx: self.ctx.clone(), terms: below, precision: self.precision.clone() },
            Series { ctx: self.ctx.clone(), terms: above, precision: self.precision.clone() },
        )
    }

    /// Re-tag into another field context (group enlargement or residue
    /// embedding). `map` transports coefficients.
    pub fn map_into(
        &self,
        new_ctx: &Ctx,
        map: &dyn Fn(&ResElem) -> ResElem,
    ) -> Series {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), map(c)))
            .collect();
        Series::from_terms(new_ctx, terms, self.precision.clone())
    }

    /// Equality up to O(t^π): both elements agree on all terms below π.
    pub fn agrees_to(&self, other: &Series, pi: &Exponent) -> bool {
        if !FieldCtx::same(&self.ctx, &other.ctx) {
            return false;
        }
        let a = self.truncate(pi);
        let b = other.truncate(pi);
        a.terms == b.terms
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res = &self.ctx.residue;
        let t = self.ctx.uniformizer;
        if self.terms.is_empty() {
            match &self.precision {
                Some(p) => return write!(f, "O({t}^({p}))"),
                None => return write!(f, "0"),
            }
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if res.needs_brackets(c) {
                format!("[{}]", res.display(c))
            } else {
                res.display(c)
            };
            if e.is_zero() {
                write!(f, "{cs}")?;
            } else if res.is_one(c) {
                write!(f, "{t}^({e})")?;
            } else {
                write!(f, "{cs}*{t}^({e})")?;
            }
        }
        if let Some(p) = &self.precision {
            write!(f, " + O({t}^({p}))")?;
        }
        Ok(())
    }
}

/// Standard contexts used throughout.
pub fn laurent_ctx(q: u64) -> Result<Ctx> {
    let fq = crate::fq::Fq::with_order(q)?;
    Ok(FieldCtx::new(
        ResidueField::Fq(fq),
        ValueGroupDesc::integers(),
        't',
    ))
}

pub fn rational_function_residue_ctx(q: u64) -> Result<Ctx> {
    let fq = crate::fq::Fq::with_order(q)?;
    Ok(FieldCtx::new(
        ResidueField::RatFns(crate::ratfn::RatFnField::new(fq, 's')),
        ValueGroupDesc::integers(),
        't',
    ))
}

pub fn perfect_hull_ctx(p: u64) -> Result<Ctx> {
    let fp = crate::fq::Fq::with_order(p)?;
    Ok(FieldCtx::new(
        ResidueField::Fq(fp),
        ValueGroupDesc::PAdicDivisible(p),
        't',
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3t() -> Ctx {
        laurent_ctx(3).unwrap()
    }

    fn t(ctx: &Ctx, e: i64) -> Series {
        Series::uniformizer_pow(ctx, Exponent::from_int(e))
    }

    #[test]
    fn cancellation() {
        let ctx = f3t();
        // (t + t^2) + (-t) = t^2
        let x = t(&ctx, 1).add(&t(&ctx, 2)).unwrap();
        let y = t(&ctx, 1).neg();
        let sum = x.add(&y).unwrap();
        assert_eq!(sum, t(&ctx, 2));
        assert_eq!(sum.valuation(), Valuation::Known(Exponent::from_int(2)));
    }

    #[test]
    fn precision_min_rule() {
        let ctx = f3t();
        // (1 + O(t^2)) + t^3 = 1 + O(t^2)
        let x = Series::one(&ctx).truncate(&Exponent::from_int(2));
        let y = t(&ctx, 3);
        let sum = x.add(&y).unwrap();
        assert_eq!(sum.precision(), Some(&Exponent::from_int(2)));
        assert_eq!(sum.terms().len(), 1);
        assert_eq!(sum, x);
    }

    #[test]
    fn add_neg_has_no_terms() {
        let ctx = f3t();
        let x = Series::from_i64(&ctx, 2)
            .add(&t(&ctx, 1))
            .unwrap()
            .add(&t(&ctx, 5).neg())
            .unwrap();
        let z = x.add(&x.neg()).unwrap();
        assert!(z.terms().is_empty());
        assert!(z.is_exactly_zero());
    }

    #[test]
    fn invert_geometric() {
        let ctx = laurent_ctx(5).unwrap();
        // 1/(1 - t) = 1 + t + t^2 + O(t^3)
        let x = Series::one(&ctx).sub(&t(&ctx, 1)).unwrap();
        let inv = x.invert_to(&Exponent::from_int(3)).unwrap();
        let expect = Series::from_terms(
            &ctx,
            vec![
                (Exponent::from_int(0), ctx.residue.one()),
                (Exponent::from_int(1), ctx.residue.one()),
                (Exponent::from_int(2), ctx.residue.one()),
            ],
            Some(Exponent::from_int(3)),
        );
        assert_eq!(inv, expect);
        // multiply back: ≡ 1 + O(t^3)
        let prod = x.mul(&inv).unwrap();
        assert!(prod.agrees_to(&Series::one(&ctx), &Exponent::from_int(3)));
    }

    #[test]
    fn invert_truncated_all_the_way_fails() {
        let ctx = f3t();
        let x = Series::o_term(&ctx, Exponent::from_int(4));
        assert_eq!(
            x.invert_to(&Exponent::from_int(3)),
            Err(Error::PrecisionExhausted(Exponent::from_int(4)))
        );
    }

    #[test]
    fn half_exponent_product() {
        let fq = crate::fq::Fq::prime(5);
        let ctx = FieldCtx::new(
            ResidueField::Fq(fq),
            ValueGroupDesc::Rationals,
            't',
        );
        let half = Series::uniformizer_pow(&ctx, Exponent::new(1, 2));
        let prod = half.mul(&half).unwrap();
        assert_eq!(prod, Series::uniformizer_pow(&ctx, Exponent::from_int(1)));
    }

    #[test]
    fn valuation_reporting() {
        let ctx = f3t();
        let x = t(&ctx, 2).add(&t(&ctx, 3)).unwrap();
        assert_eq!(x.valuation(), Valuation::Known(Exponent::from_int(2)));
        let y = Series::o_term(&ctx, Exponent::from_int(5));
        assert_eq!(
            y.valuation(),
            Valuation::AboveBound(Some(Exponent::from_int(5)))
        );
    }

    #[test]
    fn residue_examples() {
        let ctx = f3t();
        let x = Series::one(&ctx).add(&t(&ctx, 1)).unwrap();
        assert_eq!(x.residue().unwrap(), ctx.residue.one());
        let y = t(&ctx, -1);
        assert_eq!(
            y.residue(),
            Err(Error::NegativeValue(Exponent::from_int(-1)))
        );
    }

    #[test]
    fn frobenius_section() {
        let ctx = laurent_ctx(2).unwrap();
        let x = Series::one(&ctx).add(&t(&ctx, 1)).unwrap();
        let fr = x.frobenius();
        // (1 + t)^2 = 1 + t^2 over F2
        let expect = Series::one(&ctx).add(&t(&ctx, 2)).unwrap();
        assert_eq!(fr, expect);
        assert_eq!(fr.pth_root().unwrap(), x);
    }

    #[test]
    fn pth_root_needs_divisible_exponents() {
        let ctx = laurent_ctx(2).unwrap();
        let x = t(&ctx, 1);
        assert_eq!(x.pth_root(), Err(Error::NotAPthPower("exponent 1".into())));
        let hull = perfect_hull_ctx(2).unwrap();
        let y = t(&hull, 1);
        assert_eq!(
            y.pth_root().unwrap(),
            Series::uniformizer_pow(&hull, Exponent::new(1, 2))
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Series::one(&laurent_ctx(2).unwrap());
        let b = Series::one(&laurent_ctx(3).unwrap());
        assert_eq!(a.add(&b), Err(Error::MixedFields));
    }

    #[test]
    fn display_forms() {
        let ctx = f3t();
        let x = Series::one(&ctx)
            .add(&t(&ctx, 2).scale(&ctx.residue.from_i64(2)))
            .unwrap()
            .truncate(&Exponent::from_int(5));
        assert_eq!(x.to_string(), "1 + 2*t^(2) + O(t^(5))");
    }
}
