//! Fermat curves X^n + Y^n = Z^n; for n = q + 1 over F_{q²} these are the
//! Hermitian maximal curves.

use crate::curves::{Curve, CurveError, PlaneModel};
use crate::field::FieldContext;
use crate::splitting::AbelianCMFieldSpec;

#[derive(Debug, Clone)]
pub struct FermatCurve {
    tag: String,
    n: u64,
}

impl FermatCurve {
    pub fn new(n: u64) -> Result<Self, CurveError> {
        if n < 3 {
            return Err(CurveError::InvalidModel(format!(
                "Fermat degree must be ≥ 3, got {n}"
            )));
        }
        Ok(FermatCurve {
            tag: format!("fermat:{n}"),
            n,
        })
    }
}

impl Curve for FermatCurve {
    fn family_tag(&self) -> &str {
        &self.tag
    }

    fn genus(&self) -> u64 {
        (self.n - 1) * (self.n - 2) / 2
    }

    fn cm_field(&self) -> Option<AbelianCMFieldSpec> {
        None
    }

    fn rationality_ok(&self) -> bool {
        false
    }

    fn model(&self) -> PlaneModel {
        PlaneModel::Fermat { n: self.n }
    }

    fn good_prime(&self, p: u64) -> Result<(), String> {
        if !crate::arith::is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if self.n % p == 0 {
            return Err(format!("p divides n = {}", self.n));
        }
        Ok(())
    }

    fn count_points(&self, ctx: &FieldContext) -> Result<u64, CurveError> {
        let p = ctx.p();
        self.good_prime(p)
            .map_err(|reason| CurveError::BadReduction { p, reason })?;
        let one = ctx.one();
        let counter = ctx.fiber_counter(self.n);
        let mut total = 0u64;
        // Affine chart Z = 1: y^n = 1 − x^n.
        for x in ctx.enumerate() {
            let xn = ctx.pow(&x, self.n as u128)?;
            let rhs = ctx.sub(&one, &xn)?;
            total += counter.count(&rhs)?;
        }
        // Points at infinity [u : 1 : 0] with u^n = −1.
        let minus_one = ctx.from_int(-1);
        total += counter.count(&minus_one)?;
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_counts() {
        // fermat:(q+1) over F_{q²} has q³ + 1 points.
        for q in [2u64, 3, 4] {
            let curve = FermatCurve::new(q + 1).unwrap();
            let (p, k) = match q {
                2 => (2, 2),
                3 => (3, 2),
                4 => (2, 4),
                _ => unreachable!(),
            };
            let ctx = FieldContext::new(p, k, 1 << 20).unwrap();
            assert_eq!(curve.count_points(&ctx).unwrap(), q * q * q + 1);
        }
    }

    #[test]
    fn bad_char_rejected() {
        let f = FermatCurve::new(4).unwrap();
        assert!(f.good_prime(2).is_err());
        assert!(f.good_prime(3).is_ok());
    }
}
