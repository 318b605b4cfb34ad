//! Exact lattice combinatorics for curves on complete toric surfaces:
//! fans, Newton polygons, intersection numbers with boundary divisors, a
//! classification of curves of anti-canonical degree 2 and 3, and
//! dimension counts for maps from general curves.
//!
//! ```
//! use toric_bn::classify::classify;
//! use toric_bn::fan::{Fan, Preset};
//! use toric_bn::lattice::LatticeVector;
//! use toric_bn::newton::LaurentCurve;
//!
//! let bl3 = Fan::preset(Preset::Bl3P2).unwrap();
//! let conic = LaurentCurve::from_support([(1, 0), (0, 1), (1, 1)].map(LatticeVector::from)).unwrap();
//! assert_eq!(classify(&bl3, &conic).unwrap().tag(), "maps_to_fake_plane");
//! ```

pub mod brill_noether;
pub mod classify;
pub mod cli;
pub mod document;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod newton;
pub mod snf;
pub mod svg;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/fans.md")]
    mod fans {}
    #[doc = include_str!("../../../book/src/newton.md")]
    mod newton {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/dimensions.md")]
    mod dimensions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
