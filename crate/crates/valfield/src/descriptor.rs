//! Computable valued-field models: which field a computation runs over.
//!
//! A descriptor fixes the characteristic, residue field, value group, a
//! completeness class (which henselian-ness / maximality evidence is
//! structural), and the p-degree. The completeness class drives structural
//! verdicts; the residue/group drive arithmetic.

use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::group::ValueGroupDesc;
use crate::ratfn::RatFnField;
use crate::residue::ResidueField;
use crate::series::{Ctx, FieldCtx};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompletenessClass {
    /// Complete discretely valued, e.g. F_q((t)).
    CompleteDiscrete,
    /// Henselization of the perfect hull of F_q((t)).
    PerfectHullHenselized,
    /// Finite truncations of a Hahn series field (idealized model).
    HahnTruncated,
    /// Non-henselian function field with the t-adic valuation, e.g. F_q(t).
    FunctionField,
    /// Trivially valued field.
    TriviallyValued,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PDegree {
    Finite(u32),
    Infinite,
}

impl fmt::Display for PDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PDegree::Finite(e) => write!(f, "{e}"),
            PDegree::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDescriptor {
    pub name: String,
    pub residue: ResidueField,
    pub group: ValueGroupDesc,
    pub class: CompletenessClass,
}

impl FieldDescriptor {
    pub fn laurent(q: u64) -> Result<FieldDescriptor> {
        Ok(FieldDescriptor {
            name: format!("F{q}((t))"),
            residue: ResidueField::Fq(Fq::with_order(q)?),
            group: ValueGroupDesc::integers(),
            class: CompletenessClass::CompleteDiscrete,
        })
    }

    /// F_q(s)((t)): imperfect residue field.
    pub fn laurent_ratfn(q: u64) -> Result<FieldDescriptor> {
        Ok(FieldDescriptor {
            name: format!("F{q}(s)((t))"),
            residue: ResidueField::RatFns(RatFnField::new(Fq::with_order(q)?, 's')),
            group: ValueGroupDesc::integers(),
            class: CompletenessClass::CompleteDiscrete,
        })
    }

    /// Henselized perfect hull of F_p((t)): group Z[1/p], residue F_p.
    pub fn perfect_hull(p: u64) -> Result<FieldDescriptor> {
        Ok(FieldDescriptor {
            name: format!("perfect-hull F{p}"),
            residue: ResidueField::Fq(Fq::with_order(p)?),
            group: ValueGroupDesc::PAdicDivisible(p),
            class: CompletenessClass::PerfectHullHenselized,
        })
    }

    pub fn hahn(residue: ResidueField, group: ValueGroupDesc) -> FieldDescriptor {
        let name = format!("hahn {residue} {group}");
        FieldDescriptor {
            name,
            residue,
            group,
            class: CompletenessClass::HahnTruncated,
        }
    }

    /// F_q(t) with the t-adic valuation.
    pub fn function_field(q: u64) -> Result<FieldDescriptor> {
        Ok(FieldDescriptor {
            name: format!("F{q}(t) t-adic"),
            residue: ResidueField::Fq(Fq::with_order(q)?),
            group: ValueGroupDesc::integers(),
            class: CompletenessClass::FunctionField,
        })
    }

    pub fn trivial(q: u64) -> Result<FieldDescriptor> {
        Ok(FieldDescriptor {
            name: format!("trivial F{q}"),
            residue: ResidueField::Fq(Fq::with_order(q)?),
            group: ValueGroupDesc::Trivial,
            class: CompletenessClass::TriviallyValued,
        })
    }

    pub fn p(&self) -> u64 {
        self.residue.p()
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.group.is_trivial()
    }

    /// Arithmetic context for elements of (a dense subfield of) this model.
    pub fn ctx(&self) -> Ctx {
        FieldCtx::new(self.residue.clone(), self.group.clone(), 't')
    }

    /// Structural p-degree (the Ershov invariant [K : K^p] = p^e).
    ///
    /// F_q((t)): 1. Perfect hull: 0. F_q(s)((t)): 2. F_q(t): 1.
    /// Trivially valued F_q: 0. Hahn models: residue p-degree plus 1 when
    /// the group is not p-divisible, plus the residue contribution.
    pub fn p_degree(&self) -> PDegree {
        let res_e = self.residue.p_degree();
        match self.class {
            CompletenessClass::TriviallyValued => PDegree::Finite(res_e),
            CompletenessClass::PerfectHullHenselized => PDegree::Finite(0),
            CompletenessClass::CompleteDiscrete | CompletenessClass::FunctionField => {
                // uniformizer contributes one p-basis element unless the
                // group is p-divisible
                let t_contrib = if self.group.is_p_divisible(self.p()) { 0 } else { 1 };
                PDegree::Finite(res_e + t_contrib)
            }
            CompletenessClass::HahnTruncated => {
                let t_contrib = if self.group.is_p_divisible(self.p()) { 0 } else { 1 };
                PDegree::Finite(res_e + t_contrib)
            }
        }
    }

    /// Henselian-ness evidence per completeness class.
    pub fn is_henselian_structural(&self) -> bool {
        !matches!(self.class, CompletenessClass::FunctionField)
    }

    /// Validate the class/group consistency invariants.
    pub fn validate(&self) -> Result<()> {
        let ok = match self.class {
            CompletenessClass::CompleteDiscrete => {
                matches!(self.group, ValueGroupDesc::ScaledIntegers(_))
            }
            CompletenessClass::PerfectHullHenselized => {
                matches!(self.group, ValueGroupDesc::PAdicDivisible(p) if p == self.p())
            }
            CompletenessClass::TriviallyValued => self.group.is_trivial(),
            CompletenessClass::FunctionField => {
                matches!(self.group, ValueGroupDesc::ScaledIntegers(_))
            }
            CompletenessClass::HahnTruncated => !self.group.is_trivial(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "inconsistent descriptor: class {:?} with group {}",
                self.class, self.group
            )))
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_invariants() {
        assert!(FieldDescriptor::laurent(9).unwrap().validate().is_ok());
        assert!(FieldDescriptor::perfect_hull(3).unwrap().validate().is_ok());
        assert!(FieldDescriptor::trivial(4).unwrap().validate().is_ok());
    }

    #[test]
    fn structural_p_degrees() {
        assert_eq!(
            FieldDescriptor::laurent(2).unwrap().p_degree(),
            PDegree::Finite(1)
        );
        assert_eq!(
            FieldDescriptor::perfect_hull(3).unwrap().p_degree(),
            PDegree::Finite(0)
        );
        assert_eq!(
            FieldDescriptor::laurent_ratfn(2).unwrap().p_degree(),
            PDegree::Finite(2)
        );
        assert_eq!(
            FieldDescriptor::trivial(4).unwrap().p_degree(),
            PDegree::Finite(0)
        );
        assert_eq!(
            FieldDescriptor::function_field(3).unwrap().p_degree(),
            PDegree::Finite(1)
        );
    }
}
