//! Value-group descriptors.
//!
//! The groups that occur here are subgroups of Q: the trivial group, (1/N)Z,
//! Z[1/p] (the p-divisible hull of Z), and Q itself. Membership and
//! p-divisibility are decidable per tag.

use crate::exponent::Exponent;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum ValueGroupDesc {
    /// {0}
    Trivial,
    /// (1/N)·Z for a positive integer N
    ScaledIntegers(u64),
    /// Z[1/p]
    PAdicDivisible(u64),
    /// Q
    Rationals,
}

impl ValueGroupDesc {
    pub fn integers() -> Self {
        ValueGroupDesc::ScaledIntegers(1)
    }

    pub fn contains(&self, x: &Exponent) -> bool {
        match self {
            ValueGroupDesc::Trivial => x.is_zero(),
            ValueGroupDesc::ScaledIntegers(n) => {
                // x ∈ (1/N)Z iff N·x ∈ Z
                x.scale_int(*n as i64).is_integer()
            }
            ValueGroupDesc::PAdicDivisible(p) => {
                // denominator must be a power of p
                let mut d = x.denom().clone();
                let p = BigInt::from(*p);
                while d.abs() > BigInt::one() {
                    if (&d % &p).is_zero() {
                        d /= &p;
                    } else {
                        return false;
                    }
                }
                true
            }
            ValueGroupDesc::Rationals => true,
        }
    }

    /// Whether the whole group is p-divisible (γ ∈ Γ ⇒ γ/p ∈ Γ).
    pub fn is_p_divisible(&self, p: u64) -> bool {
        match self {
            ValueGroupDesc::Trivial => true,
            ValueGroupDesc::ScaledIntegers(_) => false,
            ValueGroupDesc::PAdicDivisible(q) => *q == p,
            ValueGroupDesc::Rationals => true,
        }
    }

    /// Witness for failure of p-divisibility: a group element γ with γ/p ∉ Γ.
    pub fn p_divisibility_witness(&self, p: u64) -> Option<Exponent> {
        match self {
            ValueGroupDesc::ScaledIntegers(n) => {
                let _ = p;
                Some(Exponent::new(1, *n as i64))
            }
            _ => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, ValueGroupDesc::Trivial)
    }

    /// Smallest positive element, where one exists (discrete groups only).
    pub fn granularity(&self) -> Option<Exponent> {
        match self {
            ValueGroupDesc::ScaledIntegers(n) => Some(Exponent::new(1, *n as i64)),
            _ => None,
        }
    }

    /// The least e ≥ 1 with e·γ ∈ Γ, for γ ∈ Q. None when no multiple lands
    /// in the group (only possible for the trivial group).
    pub fn ramification_of(&self, gamma: &Exponent) -> Option<u64> {
        match self {
            ValueGroupDesc::Trivial => {
                if gamma.is_zero() {
                    Some(1)
                } else {
                    None
                }
            }
            ValueGroupDesc::ScaledIntegers(n) => {
                // e minimal with e·γ·N ∈ Z: e = denom(γ·N)
                Some(gamma.scale_int(*n as i64).denom_u64())
            }
            ValueGroupDesc::PAdicDivisible(p) => {
                // strip p's from the denominator, what remains is e
                let mut d = gamma.denom_u64();
                while d % p == 0 {
                    d /= p;
                }
                Some(d)
            }
            ValueGroupDesc::Rationals => Some(1),
        }
    }

    /// Group enlarged so that γ becomes a member (Γ + Z·γ for cyclic cases).
    pub fn enlarged_by(&self, gamma: &Exponent) -> ValueGroupDesc {
        match self {
            ValueGroupDesc::Trivial => {
                if gamma.is_zero() {
                    ValueGroupDesc::Trivial
                } else {
                    // not used for trivial groups; fall back to full precision
                    ValueGroupDesc::Rationals
                }
            }
            ValueGroupDesc::ScaledIntegers(n) => {
                let e = self.ramification_of(gamma).unwrap();
                ValueGroupDesc::ScaledIntegers(n * e)
            }
            ValueGroupDesc::PAdicDivisible(p) => {
                if self.contains(gamma) {
                    ValueGroupDesc::PAdicDivisible(*p)
                } else {
                    ValueGroupDesc::Rationals
                }
            }
            ValueGroupDesc::Rationals => ValueGroupDesc::Rationals,
        }
    }

    /// Index (Γ' : Γ) of this group inside an enlargement, when finite.
    pub fn index_in(&self, larger: &ValueGroupDesc) -> Option<u64> {
        match (self, larger) {
            (ValueGroupDesc::ScaledIntegers(n), ValueGroupDesc::ScaledIntegers(m)) if m % n == 0 => {
                Some(m / n)
            }
            (a, b) if a == b => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for ValueGroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueGroupDesc::Trivial => write!(f, "{{0}}"),
            ValueGroupDesc::ScaledIntegers(1) => write!(f, "Z"),
            ValueGroupDesc::ScaledIntegers(n) => write!(f, "(1/{n})Z"),
            ValueGroupDesc::PAdicDivisible(p) => write!(f, "Z[1/{p}]"),
            ValueGroupDesc::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_per_tag() {
        let half = Exponent::new(1, 2);
        assert!(!ValueGroupDesc::integers().contains(&half));
        assert!(ValueGroupDesc::ScaledIntegers(2).contains(&half));
        assert!(ValueGroupDesc::PAdicDivisible(2).contains(&Exponent::new(-1, 8)));
        assert!(!ValueGroupDesc::PAdicDivisible(2).contains(&Exponent::new(1, 6)));
        assert!(ValueGroupDesc::Rationals.contains(&Exponent::new(355, 113)));
        assert!(ValueGroupDesc::Trivial.contains(&Exponent::zero()));
        assert!(!ValueGroupDesc::Trivial.contains(&Exponent::one()));
    }

    #[test]
    fn ramification_denominators() {
        let g = ValueGroupDesc::integers();
        assert_eq!(g.ramification_of(&Exponent::new(-1, 3)), Some(3));
        assert_eq!(g.ramification_of(&Exponent::from_int(5)), Some(1));
        let h = ValueGroupDesc::ScaledIntegers(2);
        assert_eq!(h.ramification_of(&Exponent::new(1, 2)), Some(1));
        assert_eq!(h.ramification_of(&Exponent::new(1, 6)), Some(3));
        let d = ValueGroupDesc::PAdicDivisible(2);
        assert_eq!(d.ramification_of(&Exponent::new(1, 12)), Some(3));
    }

    #[test]
    fn p_divisibility() {
        assert!(!ValueGroupDesc::integers().is_p_divisible(2));
        assert!(ValueGroupDesc::PAdicDivisible(3).is_p_divisible(3));
        assert!(!ValueGroupDesc::PAdicDivisible(3).is_p_divisible(2));
        assert!(ValueGroupDesc::Rationals.is_p_divisible(7));
        assert!(ValueGroupDesc::Trivial.is_p_divisible(5));
    }
}
