//! Prime splitting in abelian CM fields and the reduction-type prediction.
//!
//! For the two supported field shapes — cyclotomic Q(ζ_N) and the composite
//! real case Q(ζ_M + ζ_M⁻¹, ζ_d) with d ∈ {3, 4} — the factorization of an
//! unramified prime p in the real subfield K₀ and in K is read off from
//! multiplicative orders in (Z/n)^×. The decision tree then predicts the
//! reduction class of an abelian variety with CM by O_K:
//!
//! * every prime of K₀ inert in K → supersingular, superspecial when p
//!   splits completely in K₀,
//! * p completely split in K → ordinary,
//! * split primes of inertia degree > 1 → undetermined (outside the
//!   classified cases; the harness measures the true slopes empirically).

use serde::Serialize;

use crate::arith::{euler_phi, gcd, is_prime};
use crate::fraction::Fraction;
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SplittingError {
    #[error("{a} is not a unit mod {n}")]
    NotAUnit { a: u64, n: u64 },
    #[error("prime {p} ramifies in the field (divides the conductor {conductor})")]
    RamifiedPrime { p: u64, conductor: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field spec: {0}")]
    InvalidField(String),
}

/// The CM field K given by conductor data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AbelianCMFieldSpec {
    /// K = Q(ζ_N).
    Cyclotomic { n: u64 },
    /// K = Q(ζ_M + ζ_M⁻¹, ζ_d) with d ∈ {3, 4}.
    CompositeReal { m: u64, d: u64 },
}

impl AbelianCMFieldSpec {
    pub fn cyclotomic(n: u64) -> Result<Self, SplittingError> {
        if n < 3 || n % 4 == 2 {
            return Err(SplittingError::InvalidField(format!(
                "cyclotomic conductor must be ≥ 3 and ≢ 2 mod 4, got {n}"
            )));
        }
        Ok(AbelianCMFieldSpec::Cyclotomic { n })
    }

    pub fn composite_real(m: u64, d: u64) -> Result<Self, SplittingError> {
        if m < 5 {
            return Err(SplittingError::InvalidField(format!(
                "composite-real M must be ≥ 5, got {m}"
            )));
        }
        if d != 3 && d != 4 {
            return Err(SplittingError::InvalidField(format!(
                "composite-real d must be 3 or 4, got {d}"
            )));
        }
        Ok(AbelianCMFieldSpec::CompositeReal { m, d })
    }

    /// g = [K₀ : Q]; the CM abelian variety has dimension g.
    pub fn genus(&self) -> u64 {
        match *self {
            AbelianCMFieldSpec::Cyclotomic { n } => euler_phi(n) / 2,
            AbelianCMFieldSpec::CompositeReal { m, .. } => euler_phi(m) / 2,
        }
    }

    fn check_unramified(&self, p: u64) -> Result<(), SplittingError> {
        if !is_prime(p) {
            return Err(SplittingError::NotPrime(p));
        }
        let conductor = match *self {
            AbelianCMFieldSpec::Cyclotomic { n } => n,
            AbelianCMFieldSpec::CompositeReal { m, d } => m * d,
        };
        if conductor % p == 0 {
            return Err(SplittingError::RamifiedPrime { p, conductor });
        }
        Ok(())
    }
}

/// Smallest k ≥ 1 with a^k ≡ 1 mod n, by direct repeated multiplication.
pub fn mult_order(a: u64, n: u64) -> Result<u64, SplittingError> {
    if n < 2 || gcd(a % n, n) != 1 {
        return Err(SplittingError::NotAUnit { a, n });
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    Ok(k)
}

/// Order of a in (Z/n)^× / {±1}: smallest k ≥ 1 with a^k ≡ ±1 mod n.
pub fn quotient_order(a: u64, n: u64) -> Result<u64, SplittingError> {
    if n < 2 || gcd(a % n, n) != 1 {
        return Err(SplittingError::NotAUnit { a, n });
    }
    let a = a % n;
    let minus_one = n - 1;
    let mut x = a;
    let mut k = 1;
    while x != 1 && x != minus_one {
        x = x * a % n;
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrimeBehavior {
    Inert,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeSplitting {
    pub behavior: PrimeBehavior,
    pub f_in_k: u64,
}

/// Factorization shape of p in K₀ and K: t primes of K₀, each of inertia
/// degree f0, each inert or split in K (identically, K/Q being abelian).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub p: u64,
    pub f0: u64,
    pub t: u64,
    pub per_prime: Vec<PrimeSplitting>,
    pub g: u64,
}

impl SplittingReport {
    pub fn all_inert(&self) -> bool {
        self.per_prime
            .iter()
            .all(|e| e.behavior == PrimeBehavior::Inert)
    }

    pub fn all_split(&self) -> bool {
        self.per_prime
            .iter()
            .all(|e| e.behavior == PrimeBehavior::Split)
    }
}

/// Factor an unramified prime p in K₀ and K.
pub fn splitting(spec: &AbelianCMFieldSpec, p: u64) -> Result<SplittingReport, SplittingError> {
    spec.check_unramified(p)?;
    let g = spec.genus();
    let (f0, inert) = match *spec {
        AbelianCMFieldSpec::Cyclotomic { n } => {
            let f = mult_order(p, n)?;
            let f0 = quotient_order(p, n)?;
            debug_assert!(f == f0 || f == 2 * f0);
            (f0, f == 2 * f0)
        }
        AbelianCMFieldSpec::CompositeReal { m, d } => {
            // Frobenius is the pair (p̄ ∈ (Z/M)^×/±1, p mod d); a prime of K₀
            // is inert in K iff the complex conjugation (1, −1) lies in the
            // cyclic group it generates, i.e. p ≡ −1 mod d and f0 is odd.
            let f0 = quotient_order(p, m)?;
            (f0, p % d == d - 1 && f0 % 2 == 1)
        }
    };
    let t = g / f0;
    debug_assert_eq!(t * f0, g);
    let f_in_k = if inert { 2 * f0 } else { f0 };
    let behavior = if inert {
        PrimeBehavior::Inert
    } else {
        PrimeBehavior::Split
    };
    Ok(SplittingReport {
        p,
        f0,
        t,
        per_prime: vec![PrimeSplitting { behavior, f_in_k }; t as usize],
        g,
    })
}

/// One block of the predicted slope multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SlopeBlock {
    Known { slope: Fraction, multiplicity: u64 },
    Unknown { height: u64 },
}

impl SlopeBlock {
    pub fn height(&self) -> u64 {
        match *self {
            SlopeBlock::Known { multiplicity, .. } => multiplicity,
            SlopeBlock::Unknown { height } => height,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum ReductionClass {
    Ordinary,
    Supersingular { superspecial: bool },
    Mixed { a_number: u64, p_rank: u64 },
    Undetermined { reason: String },
}

/// Predicted reduction data for one (field, p) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionPrediction {
    pub class: ReductionClass,
    pub slopes: Vec<SlopeBlock>,
    /// Expansion of (t²+p)^g, attached only in the superspecial case with
    /// the rationality hypothesis and p ≥ 5.
    pub charpoly: Option<IntPoly>,
    /// 1 + p² + 2gp, the Hasse–Weil upper bound over F_{p²}.
    pub maximal_count_formula: Option<u128>,
}

/// Predicted slope multiset: inert primes contribute slope 1/2 with
/// multiplicity 2f0; split primes of degree 1 contribute {0, 1}; split
/// primes of higher degree are unknown blocks. Total height is 2g.
pub fn predict_slopes(
    spec: &AbelianCMFieldSpec,
    p: u64,
) -> Result<Vec<SlopeBlock>, SplittingError> {
    Ok(slopes_from_report(&splitting(spec, p)?))
}

fn slopes_from_report(report: &SplittingReport) -> Vec<SlopeBlock> {
    let mut half = 0u64;
    let mut unit = 0u64; // multiplicity of slope 0 (and of slope 1)
    let mut unknown = 0u64;
    for entry in &report.per_prime {
        match entry.behavior {
            PrimeBehavior::Inert => half += 2 * report.f0,
            PrimeBehavior::Split if report.f0 == 1 => unit += 1,
            PrimeBehavior::Split => unknown += 2 * report.f0,
        }
    }
    let mut blocks = Vec::new();
    if unit > 0 {
        blocks.push(SlopeBlock::Known {
            slope: Fraction::zero(),
            multiplicity: unit,
        });
    }
    if half > 0 {
        blocks.push(SlopeBlock::Known {
            slope: Fraction::half(),
            multiplicity: half,
        });
    }
    if unit > 0 {
        blocks.push(SlopeBlock::Known {
            slope: Fraction::one(),
            multiplicity: unit,
        });
    }
    if unknown > 0 {
        blocks.push(SlopeBlock::Unknown { height: unknown });
    }
    debug_assert_eq!(blocks.iter().map(|b| b.height()).sum::<u64>(), 2 * report.g);
    blocks
}

/// Apply the classification decision tree to the splitting of p.
///
/// `rationality_ok` is the per-curve hypothesis that the real multiplication
/// is defined over K₀ (or the CM action over K); it gates the charpoly and
/// maximal-count attachments in the superspecial case.
pub fn predict_reduction(
    spec: &AbelianCMFieldSpec,
    p: u64,
    rationality_ok: bool,
) -> Result<ReductionPrediction, SplittingError> {
    let report = splitting(spec, p)?;
    let slopes = slopes_from_report(&report);
    let g = report.g;

    let class = if report.all_split() && report.f0 == 1 {
        ReductionClass::Ordinary
    } else if report.all_inert() {
        ReductionClass::Supersingular {
            superspecial: report.f0 == 1,
        }
    } else if report.f0 == 1 {
        // Unreachable for abelian K (all primes behave identically), kept
        // for the general decision tree.
        let a_number = report
            .per_prime
            .iter()
            .filter(|e| e.behavior == PrimeBehavior::Inert)
            .count() as u64;
        ReductionClass::Mixed {
            a_number,
            p_rank: g - a_number,
        }
    } else {
        ReductionClass::Undetermined {
            reason: format!(
                "split primes of inertia degree {} > 1 are outside the classified cases",
                report.f0
            ),
        }
    };

    let superspecial = matches!(
        class,
        ReductionClass::Supersingular { superspecial: true }
    );
    let (charpoly, maximal_count_formula) = if superspecial && rationality_ok && p >= 5 {
        // (t² + p)^g has coefficients C(g, i)·p^i; omit the polynomial when
        // the constant term would leave exact i128 range (huge conductors).
        let phi = (p as i128)
            .checked_pow(g as u32)
            .map(|_| IntPoly::new(vec![p as i128, 0, 1]).pow(g as u32));
        let formula = 1u128 + (p as u128) * (p as u128) + 2 * (g as u128) * (p as u128);
        (phi, Some(formula))
    } else {
        (None, None)
    };

    Ok(ReductionPrediction {
        class,
        slopes,
        charpoly,
        maximal_count_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(19, 5).unwrap(), 2);
        assert_eq!(mult_order(3, 7).unwrap(), 6);
        assert_eq!(
            mult_order(6, 9),
            Err(SplittingError::NotAUnit { a: 6, n: 9 })
        );
    }

    #[test]
    fn quotient_order_examples() {
        assert_eq!(quotient_order(19, 5).unwrap(), 1);
        assert_eq!(quotient_order(2, 5).unwrap(), 2);
        assert_eq!(quotient_order(5, 7).unwrap(), 3);
    }

    #[test]
    fn splitting_cyclotomic() {
        let k5 = AbelianCMFieldSpec::cyclotomic(5).unwrap();
        let r = splitting(&k5, 19).unwrap();
        assert_eq!((r.f0, r.t), (1, 2));
        assert!(r.all_inert());
        assert!(r.per_prime.iter().all(|e| e.f_in_k == 2));

        let r = splitting(&k5, 11).unwrap();
        assert_eq!((r.f0, r.t), (1, 2));
        assert!(r.all_split());
        assert!(r.per_prime.iter().all(|e| e.f_in_k == 1));
    }

    #[test]
    fn splitting_composite() {
        let k = AbelianCMFieldSpec::composite_real(7, 3).unwrap();
        let r = splitting(&k, 5).unwrap();
        assert_eq!((r.f0, r.t), (3, 1));
        assert!(r.all_inert());
        assert_eq!(r.per_prime[0].f_in_k, 6);

        let r = splitting(&k, 41).unwrap();
        assert_eq!((r.f0, r.t), (1, 3));
        assert!(r.all_inert());
        assert!(r.per_prime.iter().all(|e| e.f_in_k == 2));
    }

    #[test]
    fn ramified_rejected() {
        let k5 = AbelianCMFieldSpec::cyclotomic(5).unwrap();
        assert!(matches!(
            splitting(&k5, 5),
            Err(SplittingError::RamifiedPrime { .. })
        ));
        let k = AbelianCMFieldSpec::composite_real(7, 3).unwrap();
        assert!(matches!(
            splitting(&k, 7),
            Err(SplittingError::RamifiedPrime { .. })
        ));
        assert!(matches!(
            splitting(&k, 3),
            Err(SplittingError::RamifiedPrime { .. })
        ));
    }

    #[test]
    fn invalid_field_specs() {
        assert!(AbelianCMFieldSpec::cyclotomic(6).is_err());
        assert!(AbelianCMFieldSpec::cyclotomic(2).is_err());
        assert!(AbelianCMFieldSpec::composite_real(7, 5).is_err());
        assert!(AbelianCMFieldSpec::composite_real(4, 3).is_err());
    }

    #[test]
    fn predict_superspecial_cyclotomic() {
        let k5 = AbelianCMFieldSpec::cyclotomic(5).unwrap();
        let pred = predict_reduction(&k5, 19, true).unwrap();
        assert_eq!(
            pred.class,
            ReductionClass::Supersingular { superspecial: true }
        );
        // (t² + 19)² = t⁴ + 38t² + 361
        assert_eq!(
            pred.charpoly.as_ref().unwrap().coeffs(),
            &[361, 0, 38, 0, 1]
        );
        assert_eq!(pred.maximal_count_formula, Some(438));
    }

    #[test]
    fn predict_ordinary_composite() {
        let k = AbelianCMFieldSpec::composite_real(7, 3).unwrap();
        let pred = predict_reduction(&k, 13, true).unwrap();
        assert_eq!(pred.class, ReductionClass::Ordinary);
        assert!(pred.charpoly.is_none());
    }

    #[test]
    fn predict_supersingular_not_superspecial() {
        let k = AbelianCMFieldSpec::composite_real(7, 3).unwrap();
        let pred = predict_reduction(&k, 5, true).unwrap();
        assert_eq!(
            pred.class,
            ReductionClass::Supersingular {
                superspecial: false
            }
        );
        assert!(pred.charpoly.is_none());
        assert_eq!(
            pred.slopes,
            vec![SlopeBlock::Known {
                slope: Fraction::half(),
                multiplicity: 6
            }]
        );
    }

    #[test]
    fn predict_undetermined() {
        let k = AbelianCMFieldSpec::composite_real(5, 4).unwrap();
        let pred = predict_reduction(&k, 7, true).unwrap();
        assert!(matches!(pred.class, ReductionClass::Undetermined { .. }));
        assert_eq!(pred.slopes, vec![SlopeBlock::Unknown { height: 4 }]);
    }

    #[test]
    fn predicted_slopes_examples() {
        let k5 = AbelianCMFieldSpec::cyclotomic(5).unwrap();
        assert_eq!(
            predict_slopes(&k5, 19).unwrap(),
            vec![SlopeBlock::Known {
                slope: Fraction::half(),
                multiplicity: 4
            }]
        );
        assert_eq!(
            predict_slopes(&k5, 11).unwrap(),
            vec![
                SlopeBlock::Known {
                    slope: Fraction::zero(),
                    multiplicity: 2
                },
                SlopeBlock::Known {
                    slope: Fraction::one(),
                    multiplicity: 2
                },
            ]
        );
        let k = AbelianCMFieldSpec::composite_real(7, 3).unwrap();
        assert_eq!(
            predict_slopes(&k, 5).unwrap(),
            vec![SlopeBlock::Known {
                slope: Fraction::half(),
                multiplicity: 6
            }]
        );
    }

    #[test]
    fn no_supersingular_without_all_inert() {
        // Spot-check the literal hypothesis across small conductors.
        for n in [5u64, 7, 9, 11, 12, 13, 15, 16] {
            let spec = AbelianCMFieldSpec::cyclotomic(n).unwrap();
            for p in 2u64..200 {
                if !is_prime(p) || n % p == 0 {
                    continue;
                }
                let report = splitting(&spec, p).unwrap();
                let pred = predict_reduction(&spec, p, true).unwrap();
                if matches!(pred.class, ReductionClass::Supersingular { .. }) {
                    assert!(report.all_inert());
                }
                assert_eq!(report.t * report.f0, report.g);
                let total: u64 = pred.slopes.iter().map(|b| b.height()).sum();
                assert_eq!(total, 2 * report.g);
            }
        }
    }
}
