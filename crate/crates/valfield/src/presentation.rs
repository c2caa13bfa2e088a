//! Function-field presentations: F = F_q(t) or F_q(s, t) inside its ambient
//! series model, with a declared separating element.
//!
//! The t-adic valuation of F is read off the rational expressions directly;
//! the ambient embedding (t ↦ uniformizer, s ↦ residue variable) is used for
//! display and cross-checks.

use crate::bipoly::{BiPoly, BiRat};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fq::Fq;
use crate::ratfn::RatFnField;
use crate::residue::{ResElem, ResidueField};
use crate::series::{Ctx, Series};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MasterVars {
    /// F = F_q(t)
    T,
    /// F = F_q(s, t)
    ST,
}

#[derive(Debug, Clone)]
pub struct FunctionFieldPresentation {
    pub fq: Arc<Fq>,
    pub vars: MasterVars,
    /// declared element t₁ with F | K(t₁) separable
    pub separating: BiRat,
    pub separating_name: String,
    /// ambient series model
    pub ctx: Ctx,
}

impl FunctionFieldPresentation {
    pub fn univariate(q: u64) -> Result<FunctionFieldPresentation> {
        let fq = Fq::with_order(q)?;
        let ctx = crate::series::laurent_ctx(q)?;
        Ok(FunctionFieldPresentation {
            separating: BiRat::from_poly(BiPoly::var_t(&fq)),
            separating_name: "t".into(),
            fq,
            vars: MasterVars::T,
            ctx,
        })
    }

    pub fn bivariate(q: u64) -> Result<FunctionFieldPresentation> {
        let fq = Fq::with_order(q)?;
        let ctx = crate::series::rational_function_residue_ctx(q)?;
        Ok(FunctionFieldPresentation {
            separating: BiRat::from_poly(BiPoly::var_t(&fq)),
            separating_name: "t".into(),
            fq,
            vars: MasterVars::ST,
            ctx,
        })
    }

    pub fn with_separating(mut self, name: &str, elem: BiRat) -> FunctionFieldPresentation {
        self.separating = elem;
        self.separating_name = name.into();
        self
    }

    pub fn p(&self) -> u64 {
        self.fq.p()
    }

    /// Transcendence degree of F over the constants.
    pub fn trdeg(&self) -> usize {
        match self.vars {
            MasterVars::T => 1,
            MasterVars::ST => 2,
        }
    }

    pub fn var_t(&self) -> BiRat {
        BiRat::from_poly(BiPoly::var_t(&self.fq))
    }

    pub fn var_s(&self) -> Result<BiRat> {
        match self.vars {
            MasterVars::ST => Ok(BiRat::from_poly(BiPoly::var_s(&self.fq))),
            MasterVars::T => Err(Error::UnsupportedPresentation(
                "presentation has no variable s".into(),
            )),
        }
    }

    /// t-adic valuation of an element of F.
    pub fn valuation(&self, x: &BiRat) -> Option<Exponent> {
        x.t_valuation().map(Exponent::from_int)
    }

    /// Residue of an element with v ≥ 0, in the residue field of the
    /// ambient model.
    pub fn residue(&self, x: &BiRat) -> Result<ResElem> {
        let v = x
            .t_valuation()
            .map(Exponent::from_int)
            .unwrap_or_else(|| Exponent::from_int(i64::MAX / 2));
        if v.is_negative() {
            return Err(Error::NegativeValue(v));
        }
        let ratfns = RatFnField::new(self.fq.clone(), 's');
        let r = x
            .residue(&ratfns)
            .expect("valuation checked nonnegative");
        match (&self.ctx.residue, self.vars) {
            (ResidueField::RatFns(_), MasterVars::ST) => Ok(ResElem::RatFn(r)),
            (ResidueField::Fq(_), MasterVars::T) => {
                // the residue of a univariate rational function is a constant
                if r.num.len() > 1 || r.den.len() > 1 {
                    return Err(Error::UnsupportedPresentation(
                        "univariate presentation produced an s-dependent residue".into(),
                    ));
                }
                let c = self.fq.mul(&r.num[0], &self.fq.inv(&r.den[0]));
                Ok(ResElem::Fq(c))
            }
            _ => Err(Error::UnsupportedPresentation(
                "presentation and ambient model disagree".into(),
            )),
        }
    }

    /// Ambient embedding into the series model, to the given precision.
    pub fn embed(&self, x: &BiRat, precision: &Exponent) -> Result<Series> {
        let num = self.embed_poly(&x.num)?;
        let den = self.embed_poly(&x.den)?;
        num.mul(&den.invert_to(precision)?)
    }

    fn embed_poly(&self, p: &BiPoly) -> Result<Series> {
        let ctx = &self.ctx;
        let mut terms: Vec<(Exponent, ResElem)> = Vec::new();
        match self.vars {
            MasterVars::T => {
                for ((s, t), c) in &p.terms {
                    if *s != 0 {
                        return Err(Error::UnsupportedPresentation(
                            "s appears in a univariate presentation".into(),
                        ));
                    }
                    terms.push((Exponent::from_int(*t as i64), ResElem::Fq(c.clone())));
                }
            }
            MasterVars::ST => {
                let ratfns = match &ctx.residue {
                    ResidueField::RatFns(k) => k.clone(),
                    _ => unreachable!("bivariate presentations embed into F_q(s)((t))"),
                };
                for ((s, t), c) in &p.terms {
                    let mut coeffs = vec![self.fq.zero(); *s as usize + 1];
                    coeffs[*s as usize] = c.clone();
                    terms.push((
                        Exponent::from_int(*t as i64),
                        ResElem::RatFn(ratfns.from_poly(coeffs)),
                    ));
                }
            }
        }
        Ok(Series::from_terms(ctx, terms, None))
    }

    pub fn display(&self, x: &BiRat) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_valuation_and_residue() {
        let p = FunctionFieldPresentation::univariate(3).unwrap();
        let t = p.var_t();
        // v(t^2/(1+t)) = 2
        let one = BiRat::one(&p.fq);
        let x = t.pow(2).mul(&one.add(&t).inv());
        assert_eq!(p.valuation(&x), Some(Exponent::from_int(2)));
        // residue of (1+t)/(2+t) = 1/2 = 2 over F3
        let two = BiRat::from_poly(BiPoly::constant(&p.fq, p.fq.from_u64(2)));
        let y = one.add(&t).mul(&two.add(&t).inv());
        assert_eq!(p.residue(&y).unwrap(), ResElem::Fq(p.fq.from_u64(2)));
    }

    #[test]
    fn embedding_inverts_denominators() {
        let p = FunctionFieldPresentation::univariate(5).unwrap();
        let t = p.var_t();
        let one = BiRat::one(&p.fq);
        // 1/(1 − t) → 1 + t + t^2 + ...
        let x = one.sub(&t).inv();
        let s = p.embed(&x, &Exponent::from_int(3)).unwrap();
        let expect = crate::parse::parse_series(
            "1 + t + t^2 + O(t^(3))",
            &p.ctx,
            &Exponent::from_int(10),
        )
        .unwrap();
        assert_eq!(s.truncate(&Exponent::from_int(3)), expect);
    }

    #[test]
    fn bivariate_residue() {
        let p = FunctionFieldPresentation::bivariate(2).unwrap();
        let s = p.var_s().unwrap();
        let t = p.var_t();
        let x = s.add(&t);
        match p.residue(&x).unwrap() {
            ResElem::RatFn(r) => {
                let k = RatFnField::new(p.fq.clone(), 's');
                assert_eq!(r, k.var_elem());
            }
            _ => panic!("expected rational-function residue"),
        }
    }
}
