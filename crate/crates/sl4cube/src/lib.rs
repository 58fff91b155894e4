//! Exact verification of the sl4 action on polynomials in four variables,
//! its realization on the fixed space of the hypercube tensor cube, and the
//! subconstituent algebra T of the hypercube H(N,2).

pub mod correspond;
pub mod cube;
pub mod exact;
pub mod polyspace;
pub mod report;
pub mod sl4core;
pub mod specialfn;
pub mod suites;
pub mod tensorspace;

pub use exact::Rational;
