//! Residue-field descriptors and their elements.
//!
//! Coefficient domains are limited to F_q (perfect), F_q(s) (imperfect,
//! p-basis {s}), and an algebraically-closed marker whose representable
//! elements live in a declared F_q subfield but whose structural predicates
//! answer for the full algebraic closure.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::ratfn::{RatFn, RatFnField};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Fq(Arc<Fq>),
    /// F_q(s): univariate rational functions over a perfect base.
    RatFns(RatFnField),
    /// Algebraic closure of F_p, with elements represented in the given
    /// finite subfield. Structural predicates answer for the closure.
    AlgClosure(Arc<Fq>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ResElem {
    Fq(FqElem),
    RatFn(RatFn),
}

impl ResidueField {
    pub fn p(&self) -> u64 {
        match self {
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => f.p(),
            ResidueField::RatFns(k) => k.p(),
        }
    }

    pub fn is_perfect(&self) -> bool {
        !matches!(self, ResidueField::RatFns(_))
    }

    /// Degree of imperfection: [k : k^p] = p^e.
    pub fn p_degree(&self) -> u32 {
        match self {
            ResidueField::Fq(_) | ResidueField::AlgClosure(_) => 0,
            ResidueField::RatFns(_) => 1,
        }
    }

    pub fn is_separably_closed(&self) -> bool {
        matches!(self, ResidueField::AlgClosure(_))
    }

    /// Whether some finite extension has degree divisible by p (the residue
    /// half of the Kaplansky condition, negated).
    pub fn admits_degree_p_extension(&self) -> bool {
        match self {
            ResidueField::AlgClosure(_) => false,
            // X^p - X - a with Tr(a) != 0 is irreducible of degree p
            ResidueField::Fq(_) | ResidueField::RatFns(_) => true,
        }
    }

    pub fn inner_fq(&self) -> Option<&Arc<Fq>> {
        match self {
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => Some(f),
            ResidueField::RatFns(_) => None,
        }
    }

    pub fn zero(&self) -> ResElem {
        match self {
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => ResElem::Fq(f.zero()),
            ResidueField::RatFns(k) => ResElem::RatFn(k.zero()),
        }
    }

    pub fn one(&self) -> ResElem {
        match self {
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => ResElem::Fq(f.one()),
            ResidueField::RatFns(k) => ResElem::RatFn(k.one()),
        }
    }

    pub fn from_i64(&self, c: i64) -> ResElem {
        match self {
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => ResElem::Fq(f.from_i64(c)),
            ResidueField::RatFns(k) => {
                ResElem::RatFn(k.constant(k.base.from_i64(c)))
            }
        }
    }

    pub fn is_zero(&self, a: &ResElem) -> bool {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => f.is_zero(x),
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => k.is_zero(x),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn is_one(&self, a: &ResElem) -> bool {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => f.is_one(x),
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => k.is_one(x),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn add(&self, a: &ResElem, b: &ResElem) -> ResElem {
        match (self, a, b) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x), ResElem::Fq(y)) => {
                ResElem::Fq(f.add(x, y))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x), ResElem::RatFn(y)) => {
                ResElem::RatFn(k.add(x, y))
            }
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &ResElem) -> ResElem {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => {
                ResElem::Fq(f.neg(x))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => ResElem::RatFn(k.neg(x)),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &ResElem, b: &ResElem) -> ResElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ResElem, b: &ResElem) -> ResElem {
        match (self, a, b) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x), ResElem::Fq(y)) => {
                ResElem::Fq(f.mul(x, y))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x), ResElem::RatFn(y)) => {
                ResElem::RatFn(k.mul(x, y))
            }
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn inv(&self, a: &ResElem) -> ResElem {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => {
                ResElem::Fq(f.inv(x))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => ResElem::RatFn(k.inv(x)),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn pow(&self, a: &ResElem, e: u64) -> ResElem {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => {
                ResElem::Fq(f.pow(x, e))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => ResElem::RatFn(k.pow(x, e)),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn frobenius(&self, a: &ResElem) -> ResElem {
        self.pow(a, self.p())
    }

    /// p-th root, with the element itself as witness on failure (only F_q(s)
    /// elements can fail; finite fields and the closure marker are perfect).
    pub fn pth_root(&self, a: &ResElem) -> Result<ResElem> {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => {
                Ok(ResElem::Fq(f.pth_root(x)))
            }
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => k
                .pth_root(x)
                .map(ResElem::RatFn)
                .ok_or_else(|| Error::NotAPthPower(format!("coefficient {}", k.display(x)))),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    pub fn display(&self, a: &ResElem) -> String {
        match (self, a) {
            (ResidueField::Fq(f) | ResidueField::AlgClosure(f), ResElem::Fq(x)) => f.display(x),
            (ResidueField::RatFns(k), ResElem::RatFn(x)) => k.display(x),
            _ => panic!("residue element does not belong to this field"),
        }
    }

    /// Whether the displayed form needs brackets inside a series literal.
    pub fn needs_brackets(&self, a: &ResElem) -> bool {
        match self {
            ResidueField::RatFns(k) => {
                if let ResElem::RatFn(x) = a {
                    !(x.den.len() == 1
                        && k.base.is_one(&x.den[0])
                        && x.num.len() == 1)
                } else {
                    false
                }
            }
            ResidueField::Fq(f) | ResidueField::AlgClosure(f) => {
                if let ResElem::Fq(x) = a {
                    self.display(a).contains('+') && f.degree() > 1 && !f.is_zero(x)
                } else {
                    false
                }
            }
        }
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::Fq(k) => write!(f, "F{}", k.order()),
            ResidueField::RatFns(k) => write!(f, "{k}"),
            ResidueField::AlgClosure(k) => write!(f, "AC{}", k.p()),
        }
    }
}
