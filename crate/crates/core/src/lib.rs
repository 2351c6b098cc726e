//! Quandle and biquandle cohomology quiver representations of oriented
//! classical and virtual links, together with their edge and path
//! polynomial invariants.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod diagram;
pub mod error;
pub mod homset;
pub mod job;
pub mod linalg;
pub mod poly;
pub mod polynomials;
pub mod quiver;

pub use algebra::{Biquandle, EndoMap, Quandle};
pub use cohomology::{CoeffGroup, Cocycle};
pub use diagram::{parse_gauss, parse_pd, Crossing, LinkDiagram, Sign};
pub use error::{Error, Result};
pub use homset::{ChainVector, Coloring};
pub use poly::GroupExponentPolynomial;
pub use quiver::{DataVector, RepQuiver};
