//! Exact computation of generalized Dedekind sums, lens-space and circle-bundle
//! correction terms, and genus/Euler-number obstructions for non-orientable
//! surfaces in 4-manifolds.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: rationals, Laurent polynomials, residue helpers and
//!   finitely generated abelian groups.
//! * [`dedekind`]: `g(2k, q, i)`, its maximum `G`, the recursions `N` and `I`,
//!   the polynomials `P` and `Q`, and identity verifiers.
//! * [`floer`]: closed forms for correction terms of lens spaces, of
//!   `#ⁿ S¹×S²` and of the circle bundles `Q_{h,e}`.
//! * [`obstruct`]: feasibility checks for `(h, e)` pairs.
//! * [`verify`]: per-slice verification families used by the scan driver.

pub mod dedekind;
pub mod error;
pub mod exact;
pub mod floer;
pub mod obstruct;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{AbGroup, LaurentPoly, Rat};
pub use floer::{BundleQ, LensSpace, SpincQLabel, Which};
pub use obstruct::{Condition, Context, EmbedQuery, PhiRestriction, Verdict};
