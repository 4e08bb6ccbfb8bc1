//! Exact facet enumeration, counting and classification of Veronese
//! polytopes: convex hulls of points on the rational normal curve seen
//! through an affine chart.
//!
//! Geometry is generic over an exact [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals.

pub mod certificate;
pub mod circular;
pub mod classify;
pub mod complex;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod facets;
pub mod geometry;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use certificate::{certificate, Certificate};
pub use circular::CircularComposition;
pub use complex::FacetComplex;
pub use decomposition::SignedDecomposition;
pub use error::{Error, Result};
pub use scalar::{Scalar, Sign};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
pub type GroundSet = geometry::GroundSet<Rational>;
pub type Chart = geometry::Chart<Rational>;
pub type CurvePoint = geometry::CurvePoint<Rational>;
pub type Matrix = matrix::Matrix<Rational>;
