//! Exact calculus for expected-utility decision makers represented as
//! closed convex comprehensive sets of utility acts.
//!
//! * [`geometry`]: canonical generator form, support function, facets.
//! * [`dioid`]: union ⊕, fusion ⊗ and star-difference.
//! * [`duality`]: value functions and the set/function correspondence.
//! * [`information`]: information structures, garbling, value of information.
//! * [`comparison`]: "values information more" decisions and flexibility.
//! * [`oracle`]: brute-force verifiers and seeded random instances.
//!
//! ```
//! use cuas_core::{fusion, star_difference, voi, Belief, InfoStructure, PolyCUAS, StateSpace, UtilityAct};
//! use cuas_core::comparison::values_more;
//! use cuas_core::scalar::ratio;
//!
//! let space = StateSpace::with_dimension(2);
//! let l = PolyCUAS::canonicalize(&space, [[0, 0], [4, -1], [7, -5]].iter().map(|a| UtilityAct::from_ints(a)))?;
//! let t = PolyCUAS::segment(&space, UtilityAct::from_ints(&[1, -3]))?;
//! let m = fusion(&l, &t)?;
//! assert_eq!(m.to_string(), "[(0,0),(4,-1),(7,-5),(8,-8)] + R_-");
//! assert!(values_more(&m, &l)?.holds);
//! assert_eq!(star_difference(&m, &l)?.as_set(), Some(&t));
//!
//! let q = InfoStructure::new(&space, vec![
//!     (ratio(1, 2), Belief::dirac(2, 0)),
//!     (ratio(1, 2), Belief::dirac(2, 1)),
//! ])?;
//! assert_eq!(voi(&l, &q)?, ratio(2, 1));
//! # Ok::<(), cuas_core::Error>(())
//! ```

pub mod comparison;
pub mod dioid;
pub mod duality;
pub mod error;
pub mod geometry;
pub mod information;
pub mod oracle;
pub mod scalar;

pub use dioid::{fusion, oplus, otimes, star_difference, union};
pub use duality::{negentropy, sigma, theta, ValueFunction};
pub use error::{Error, Result};
pub use geometry::{Belief, DioidElement, Facet, PolyCUAS, StateSpace, UtilityAct};
pub use information::{garble, voi, InfoStructure, Partition};
pub use scalar::{Extended, Rational, Scalar};
