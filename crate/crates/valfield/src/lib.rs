//! Exact arithmetic in valued fields of positive characteristic.
//!
//! The element model is a truncated generalized power series over a small
//! catalog of residue fields (F_q, F_q(s), and an algebraically closed
//! marker), with an explicit precision bound. On top of that the crate
//! provides Newton polygons and slope factorization, Hensel lifting,
//! ramification/inertia/defect reports for finite extensions, p-independence
//! and p-degree computations, separating transcendence bases for small
//! function-field presentations, pseudo-Cauchy sequence classification, and
//! a bounded checker for first-order axiom schemes of valued fields.

pub mod error;
pub mod exponent;
pub mod group;

pub mod fq;
pub mod ratfn;
pub mod residue;

pub mod series;

pub mod basis;
pub mod bipoly;
pub mod descriptor;
pub mod extension;
pub mod factor;
pub mod parse;
pub mod pcseq;
pub mod pindep;
pub mod presentation;
pub mod poly;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use group::ValueGroupDesc;
pub use residue::{ResElem, ResidueField};
pub use series::{Ctx, FieldCtx, Series, Valuation};
