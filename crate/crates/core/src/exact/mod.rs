//! Exact arithmetic foundations.
//!
//! Everything downstream is computed with exact rationals ([`Rat`]) and
//! integer Laurent polynomials ([`LaurentPoly`]). The integer helpers in
//! [`int`] use mathematical floor and least nonnegative residues, so the
//! identities of the Dedekind-sum engine hold verbatim for negative
//! arguments.

pub mod group;
pub mod int;
pub mod laurent;
pub mod rat;

pub use group::AbGroup;
pub use int::{floor_div, gcd, lnr, mod_inverse};
pub use laurent::{geom_sum, LaurentPoly};
pub use rat::Rat;
