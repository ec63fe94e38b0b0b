//! Hodge polynomials, Poincaré polynomials and Chow-ring presentations of
//! wonderful blowups of arrangements of smooth subvarieties.
//!
//! An [`Arrangement`] records the strata, their containment order and their
//! pairwise intersections. [`hodge::blowup_hodge`] evaluates the chain-sum
//! formula for the Hodge polynomial of the iterated blowup, and
//! [`chow::presentation`] writes down its Chow ring.

pub mod builders;
pub mod chow;
pub mod error;
pub mod groebner;
pub mod hodge;
pub mod poly;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{BivarPolynomial, RationalMultiPoly, UnivarPolynomial};
pub use poset::{Arrangement, Stratum};
