//! Plane curve families, good-reduction screening and point counting.
//!
//! Every family is a strategy behind the [`Curve`] trait and is registered
//! by name in [`FamilyRegistry`]; the CLI selects one at runtime from a DSL
//! string such as `cl:5`, `chebyshev:7`, `gk-x`, `yl:3`, `fermat:4` or
//! `superelliptic:<m>:<c0,c1,...>`.
//!
//! Counting uses one fiber-count exponentiation per x instead of the naive
//! (x, y) double loop, so F_{p^k} counting is O(q log q); the naive loop
//! survives only as a test oracle.

mod registry;
mod superelliptic;
mod fermat;

pub use registry::FamilyRegistry;
pub use superelliptic::SuperellipticCurve;
pub use fermat::FermatCurve;

use serde::Serialize;
use std::sync::Arc;

use crate::field::{FieldContext, FieldError};
use crate::intpoly::IntPoly;
use crate::splitting::AbelianCMFieldSpec;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("bad reduction at p={p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("field construction failed: {0}")]
    Field(#[from] FieldError),
    #[error("budget exceeded: p^{k} with p={p} is over the field-size limit {limit}")]
    BudgetExceeded { p: u64, k: u32, limit: u128 },
    #[error("cannot parse curve DSL `{0}`: {1}")]
    Parse(String, String),
    #[error("invalid curve model: {0}")]
    InvalidModel(String),
}

/// The underlying plane equation, exposed so independent oracles (and the
/// CLI) can re-derive counts without trusting the fiber-count path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PlaneModel {
    /// unit · y^m = f(x), one point at infinity on the smooth model.
    Superelliptic {
        m: u64,
        unit: i128,
        f: Vec<i128>,
    },
    /// X^n + Y^n = Z^n projective.
    Fermat { n: u64 },
}

/// A curve family member: genus, CM data and the point-count strategy.
pub trait Curve: Send + Sync {
    fn family_tag(&self) -> &str;
    fn genus(&self) -> u64;
    fn cm_field(&self) -> Option<AbelianCMFieldSpec>;
    /// Whether the rationality hypothesis behind the superspecial charpoly
    /// statement holds for this family.
    fn rationality_ok(&self) -> bool;
    fn model(&self) -> PlaneModel;
    /// Good-reduction screen; Err carries the reason the prime is skipped.
    fn good_prime(&self, p: u64) -> Result<(), String>;
    /// Number of points on the smooth projective model over `ctx`.
    fn count_points(&self, ctx: &FieldContext) -> Result<u64, CurveError>;
}

/// N_1..N_r for one curve at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCountSequence {
    pub p: u64,
    pub counts: Vec<u64>,
}

/// Count a curve over F_p, F_{p²}, …, F_{p^r}; each extension gets its own
/// deterministic field context. Fails before any counting when p^r is over
/// the element budget.
pub fn count_sequence(
    curve: &dyn Curve,
    p: u64,
    r: u32,
    max_field_size: u128,
) -> Result<PointCountSequence, CurveError> {
    curve
        .good_prime(p)
        .map_err(|reason| CurveError::BadReduction { p, reason })?;
    if (p as u128).checked_pow(r).is_none_or(|q| q > max_field_size) {
        return Err(CurveError::BudgetExceeded {
            p,
            k: r,
            limit: max_field_size,
        });
    }
    let mut counts = Vec::with_capacity(r as usize);
    for k in 1..=r {
        let ctx = FieldContext::new(p, k, max_field_size)?;
        counts.push(curve.count_points(&ctx)?);
    }
    Ok(PointCountSequence { p, counts })
}

/// Check the Weil bound (N_k − p^k − 1)² ≤ 4g²p^k for every count.
pub fn weil_bound_ok(seq: &PointCountSequence, g: u64) -> bool {
    seq.counts.iter().enumerate().all(|(i, &n)| {
        let k = i as u32 + 1;
        let q = (seq.p as i128).pow(k);
        let dev = n as i128 - q - 1;
        dev * dev <= 4 * (g as i128) * (g as i128) * q
    })
}

/// Chebyshev polynomial U_l with U_0 = 2, U_1 = x,
/// U_{n+1} = x·U_n − U_{n−1}; monic of degree l for l ≥ 1.
pub fn chebyshev_poly(l: u32) -> IntPoly {
    let mut prev = IntPoly::constant(2);
    if l == 0 {
        return prev;
    }
    let x = IntPoly::monomial(1, 1);
    let mut cur = x.clone();
    for _ in 1..l {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Parse a curve DSL string against the built-in registry.
pub fn parse_curve(dsl: &str) -> Result<Arc<dyn Curve>, CurveError> {
    FamilyRegistry::builtin().parse(dsl)
}
