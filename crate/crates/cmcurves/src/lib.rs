//! Predict-then-verify toolkit for reduction types of curves with complex
//! multiplication.
//!
//! The prediction side works purely with prime splitting in an abelian CM
//! field; the verification side counts points over small finite fields,
//! recovers L-polynomials through Newton's identities, and compares Newton
//! polygons, p-ranks and Hasse–Weil maximality against the predictions.

pub mod arith;
pub mod curves;
pub mod field;
pub mod fraction;
pub mod intpoly;
pub mod lpoly;
pub mod splitting;
pub mod verify;

pub use curves::{parse_curve, Curve, PointCountSequence};
pub use fraction::Fraction;
pub use intpoly::IntPoly;
pub use lpoly::{classify, lpoly_from_counts, newton_polygon, LPolynomial, NewtonPolygon};
pub use splitting::{predict_reduction, AbelianCMFieldSpec, ReductionClass, SplittingReport};
pub use verify::{check_fact51, run_to_writer, scan_maximal, verify, RunConfig};
