//! Superelliptic models unit·y^m = f(x) with gcd(m, deg f) = 1.

use crate::curves::{Curve, CurveError, PlaneModel};
use crate::field::FieldContext;
use crate::intpoly::IntPoly;
use crate::splitting::AbelianCMFieldSpec;

#[derive(Debug, Clone)]
pub struct SuperellipticCurve {
    tag: String,
    m: u64,
    /// The plane model is unit · y^m = f(x); the unit is absorbed at each
    /// prime by multiplying f with unit⁻¹ mod p.
    unit: i128,
    f: IntPoly,
    genus: u64,
    cm_field: Option<AbelianCMFieldSpec>,
    rationality_ok: bool,
}

impl SuperellipticCurve {
    pub fn new(
        tag: impl Into<String>,
        m: u64,
        unit: i128,
        f: IntPoly,
        cm_field: Option<AbelianCMFieldSpec>,
        rationality_ok: bool,
    ) -> Result<Self, CurveError> {
        if m < 2 {
            return Err(CurveError::InvalidModel(format!("m must be ≥ 2, got {m}")));
        }
        if unit == 0 {
            return Err(CurveError::InvalidModel("unit constant is zero".into()));
        }
        let deg = f
            .degree()
            .ok_or_else(|| CurveError::InvalidModel("f is the zero polynomial".into()))?
            as u64;
        if deg == 0 {
            return Err(CurveError::InvalidModel("f must be non-constant".into()));
        }
        if crate::arith::gcd(m, deg) != 1 {
            return Err(CurveError::InvalidModel(format!(
                "gcd(m, deg f) must be 1, got m={m}, deg f={deg}"
            )));
        }
        // With gcd(m, deg f) = 1 and f squarefree the smooth model has
        // genus (m−1)(deg f − 1)/2 and exactly one point at infinity.
        let genus = (m - 1) * (deg - 1) / 2;
        Ok(SuperellipticCurve {
            tag: tag.into(),
            m,
            unit,
            f,
            genus,
            cm_field,
            rationality_ok,
        })
    }

    /// Coefficients of unit⁻¹·f mod p, the normalized model y^m = f̃(x).
    fn reduced_f(&self, p: u64) -> Result<Vec<u64>, String> {
        let unit = self.unit.rem_euclid(p as i128) as u64;
        if unit == 0 {
            return Err(format!("unit constant {} vanishes mod {p}", self.unit));
        }
        let unit_inv = mod_pow(unit, p - 2, p);
        Ok(self
            .f
            .coeffs()
            .iter()
            .map(|&c| c.rem_euclid(p as i128) as u64 * unit_inv % p)
            .collect())
    }
}

impl Curve for SuperellipticCurve {
    fn family_tag(&self) -> &str {
        &self.tag
    }

    fn genus(&self) -> u64 {
        self.genus
    }

    fn cm_field(&self) -> Option<AbelianCMFieldSpec> {
        self.cm_field
    }

    fn rationality_ok(&self) -> bool {
        self.rationality_ok
    }

    fn model(&self) -> PlaneModel {
        PlaneModel::Superelliptic {
            m: self.m,
            unit: self.unit,
            f: self.f.coeffs().to_vec(),
        }
    }

    fn good_prime(&self, p: u64) -> Result<(), String> {
        if !crate::arith::is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if self.m % p == 0 {
            return Err(format!("p divides m = {}", self.m));
        }
        let fp = self.reduced_f(p)?;
        let deg = self.f.degree().unwrap();
        if fp[deg] == 0 {
            return Err(format!("degree of f drops mod {p}"));
        }
        if !squarefree_mod_p(&fp, p) {
            return Err(format!("f is not squarefree mod {p}"));
        }
        Ok(())
    }

    fn count_points(&self, ctx: &FieldContext) -> Result<u64, CurveError> {
        let p = ctx.p();
        self.good_prime(p)
            .map_err(|reason| CurveError::BadReduction { p, reason })?;
        let fp: Vec<_> = self
            .reduced_f(p)
            .unwrap()
            .iter()
            .map(|&c| ctx.from_int(c as i128))
            .collect();
        let counter = ctx.fiber_counter(self.m);
        let mut total = 0u64;
        for x in ctx.enumerate() {
            let val = ctx.eval_poly(&fp, &x)?;
            total += counter.count(&val)?;
        }
        // The single rational point at infinity on the smooth model.
        Ok(total + 1)
    }
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// gcd(f, f') = 1 over F_p.
fn squarefree_mod_p(f: &[u64], p: u64) -> bool {
    let mut fv = f.to_vec();
    while fv.last() == Some(&0) {
        fv.pop();
    }
    if fv.len() <= 1 {
        return false;
    }
    let deriv: Vec<u64> = fv[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * ((i as u64 + 1) % p) % p)
        .collect();
    let mut deriv = deriv;
    while deriv.last() == Some(&0) {
        deriv.pop();
    }
    if deriv.is_empty() {
        // f' ≡ 0 (inseparable); never squarefree for non-constant f.
        return false;
    }
    poly_gcd_degree(&fv, &deriv, p) == 0
}

fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !r1.is_empty() {
        let r = poly_rem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    r0.len().saturating_sub(1)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = rem[da] * lead_inv % p;
        for j in 0..=db {
            let idx = da - db + j;
            rem[idx] = (rem[idx] + p - c * b[j] % p) % p;
        }
        while rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_detection() {
        // x(1−x) = x − x² mod 19 is squarefree.
        assert!(squarefree_mod_p(&[0, 1, 18], 19));
        // x⁴ mod 7 is not.
        assert!(!squarefree_mod_p(&[0, 0, 0, 0, 1], 7));
        // x² − 1 mod 5 is squarefree, (x−1)² = x² −2x +1 mod 5 is not.
        assert!(squarefree_mod_p(&[4, 0, 1], 5));
        assert!(!squarefree_mod_p(&[1, 3, 1], 5));
    }

    #[test]
    fn rejects_bad_models() {
        assert!(SuperellipticCurve::new("t", 2, 1, IntPoly::new(vec![0, 0, 1, 0, 1]), None, false)
            .is_err()); // gcd(2, 4) ≠ 1
        assert!(SuperellipticCurve::new("t", 1, 1, IntPoly::new(vec![0, 1]), None, false).is_err());
        assert!(SuperellipticCurve::new("t", 3, 0, IntPoly::new(vec![0, 1]), None, false).is_err());
    }
}
