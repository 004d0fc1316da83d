//! L-polynomial recovery from point counts, Newton polygons, p-rank and
//! the observed reduction classification.
//!
//! The L-polynomial L(t) = Π (1 − α_i t) is recovered from N_1..N_g via
//! the power sums s_k = p^k + 1 − N_k and Newton's identities; the upper
//! half of the coefficients comes from the functional equation
//! c_{2g−i} = p^{g−i} c_i. Everything is exact i128 arithmetic: an inexact
//! Newton division or an overflow is an error, never a wrap.
//!
//! Supersingularity is decided by the Newton polygon (all slopes 1/2),
//! never by numeric root magnitudes.

use serde::Serialize;

use crate::arith::binomial;
use crate::curves::PointCountSequence;
use crate::fraction::Fraction;
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LPolyError {
    #[error("Newton identity division by {i} is inexact (corrupted counts?)")]
    InexactDivision { i: u64 },
    #[error("count N_{k} = {n} violates the Weil bound for g = {g}")]
    WeilViolation { k: u32, n: u64, g: u64 },
    #[error("need at least g = {g} counts, got {got}")]
    NotEnoughCounts { g: u64, got: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

/// Exact integer coefficients of the degree-2g Weil polynomial
/// L(t) = Σ c_i t^i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub p: u64,
    pub g: u64,
    pub coefficients: Vec<i128>,
}

impl LPolynomial {
    pub fn coeff(&self, i: usize) -> i128 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    /// True when L = (1 + p t²)^g, i.e. Φ = (t² + p)^g coefficientwise.
    pub fn is_ssg_charpoly(&self) -> bool {
        let expected = IntPoly::new(vec![1, 0, self.p as i128]).pow(self.g as u32);
        self.coefficients == expected.coeffs()
    }
}

/// Recover L from N_1..N_g by Newton's identities plus the functional
/// equation.
pub fn lpoly_from_counts(counts: &PointCountSequence, g: u64) -> Result<LPolynomial, LPolyError> {
    if (counts.counts.len() as u64) < g {
        return Err(LPolyError::NotEnoughCounts {
            g,
            got: counts.counts.len(),
        });
    }
    let p = counts.p;
    // Weil precondition on the counts we use.
    for (i, &n) in counts.counts.iter().take(g as usize).enumerate() {
        let k = i as u32 + 1;
        let q = (p as i128).checked_pow(k).ok_or(LPolyError::Overflow)?;
        let dev = n as i128 - q - 1;
        if dev * dev > 4 * (g as i128) * (g as i128) * q {
            return Err(LPolyError::WeilViolation { k, n, g });
        }
    }

    // s_k = p^k + 1 − N_k = Σ α_i^k.
    let s: Vec<i128> = (1..=g as u32)
        .map(|k| {
            let q = (p as i128).pow(k);
            q + 1 - counts.counts[k as usize - 1] as i128
        })
        .collect();

    // i·e_i = Σ_{j=1}^{i} (−1)^{j−1} e_{i−j} s_j, each division exact.
    let mut e = vec![0i128; 2 * g as usize + 1];
    e[0] = 1;
    for i in 1..=g as usize {
        let mut acc: i128 = 0;
        for j in 1..=i {
            let term = e[i - j].checked_mul(s[j - 1]).ok_or(LPolyError::Overflow)?;
            if j % 2 == 1 {
                acc = acc.checked_add(term).ok_or(LPolyError::Overflow)?;
            } else {
                acc = acc.checked_sub(term).ok_or(LPolyError::Overflow)?;
            }
        }
        if acc % (i as i128) != 0 {
            return Err(LPolyError::InexactDivision { i: i as u64 });
        }
        e[i] = acc / i as i128;
    }
    // Functional equation fills the upper half: e_{2g−i} = p^{g−i} e_i.
    for i in 0..g as usize {
        let scale = (p as i128)
            .checked_pow(g as u32 - i as u32)
            .ok_or(LPolyError::Overflow)?;
        e[2 * g as usize - i] = e[i].checked_mul(scale).ok_or(LPolyError::Overflow)?;
    }

    let coefficients: Vec<i128> = e
        .iter()
        .enumerate()
        .map(|(i, &ei)| if i % 2 == 0 { ei } else { -ei })
        .collect();
    Ok(LPolynomial {
        p,
        g,
        coefficients,
    })
}

/// Frobenius characteristic polynomial Φ(t) = t^{2g} L(1/t), monic of
/// degree 2g.
pub fn charpoly(l: &LPolynomial) -> IntPoly {
    let mut coeffs = l.coefficients.clone();
    coeffs.reverse();
    IntPoly::new(coeffs)
}

/// Newton polygon: slopes with multiplicities, nondecreasing, total 2g.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub slope: Fraction,
    pub multiplicity: u64,
}

impl NewtonPolygon {
    pub fn total_height(&self) -> u64 {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }

    /// Multiplicity of a given slope (0 when absent).
    pub fn multiplicity_of(&self, slope: Fraction) -> u64 {
        self.segments
            .iter()
            .find(|s| s.slope == slope)
            .map_or(0, |s| s.multiplicity)
    }

    /// Slopes λ and 1 − λ must occur with equal multiplicity.
    pub fn is_symmetric(&self) -> bool {
        self.segments
            .iter()
            .all(|s| self.multiplicity_of(s.slope.complement()) == s.multiplicity)
    }
}

/// Lower convex hull of {(i, v_p(c_i)) : c_i ≠ 0}.
pub fn newton_polygon(l: &LPolynomial) -> NewtonPolygon {
    let points: Vec<(i128, i128)> = l
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as i128, p_adic_valuation(c, l.p)))
        .collect();
    // Monotone-chain lower hull; collinear interior points are dropped so
    // each slope appears in exactly one segment.
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let dx = (w[1].0 - w[0].0) as u64;
            let dy = (w[1].1 - w[0].1) as u64;
            Segment {
                slope: Fraction::new(dy, dx),
                multiplicity: dx,
            }
        })
        .collect();
    NewtonPolygon { segments }
}

fn p_adic_valuation(mut c: i128, p: u64) -> i128 {
    debug_assert!(c != 0);
    let p = p as i128;
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// Multiplicity of slope 0 in the Newton polygon (= deg(L mod p)).
pub fn p_rank(l: &LPolynomial) -> u64 {
    newton_polygon(l).multiplicity_of(Fraction::zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObservedClass {
    Ordinary,
    Supersingular,
    Mixed,
}

/// What the counts actually say about the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionObservation {
    pub p_rank: u64,
    pub newton: NewtonPolygon,
    pub class: ObservedClass,
    /// N_2 = 1 + p² + 2gp; None when N_2 was not counted.
    pub maximal_over_p2: Option<bool>,
    pub charpoly_is_ssg: bool,
}

/// Classify the reduction from L; `n2` is the direct count over F_{p²}
/// when available, used for the maximality flag.
pub fn classify(l: &LPolynomial, n2: Option<u64>) -> ReductionObservation {
    let newton = newton_polygon(l);
    let g = l.g;
    let rank = newton.multiplicity_of(Fraction::zero());
    let class = if rank == g {
        ObservedClass::Ordinary
    } else if newton.multiplicity_of(Fraction::half()) == 2 * g {
        ObservedClass::Supersingular
    } else {
        ObservedClass::Mixed
    };
    let maximal_over_p2 = n2.map(|n| {
        n as u128 == 1 + (l.p as u128) * (l.p as u128) + 2 * (g as u128) * (l.p as u128)
    });
    ReductionObservation {
        p_rank: rank,
        newton,
        class,
        maximal_over_p2,
        charpoly_is_ssg: l.is_ssg_charpoly(),
    }
}

/// Forward power sums: N_k predicted by L for any k ≥ 1.
pub fn count_from_lpoly(l: &LPolynomial, k: u32) -> Result<i128, LPolyError> {
    let g2 = 2 * l.g as usize;
    let e: Vec<i128> = l
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c } else { -c })
        .collect();
    let mut s = vec![0i128; k as usize + 1];
    for n in 1..=k as usize {
        let mut acc: i128 = 0;
        let top = n.min(g2);
        for j in 1..=top {
            let term = if j < n {
                e[j].checked_mul(s[n - j]).ok_or(LPolyError::Overflow)?
            } else {
                // j == n ≤ 2g: the (−1)^{n−1} n e_n term.
                e[n].checked_mul(n as i128).ok_or(LPolyError::Overflow)?
            };
            if j % 2 == 1 {
                acc = acc.checked_add(term).ok_or(LPolyError::Overflow)?;
            } else {
                acc = acc.checked_sub(term).ok_or(LPolyError::Overflow)?;
            }
        }
        s[n] = acc;
    }
    let q = (l.p as i128)
        .checked_pow(k)
        .ok_or(LPolyError::Overflow)?;
    Ok(q + 1 - s[k as usize])
}

/// Structured validation outcome; failures are reported, never silent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub functional_equation_ok: bool,
    pub weil_coefficient_bounds_ok: bool,
    pub roundtrip_ok: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the functional equation, the Weil coefficient bounds and the
/// count round-trip N_k = p^k + 1 − s_k against every supplied count.
pub fn validate(l: &LPolynomial, counts: &PointCountSequence) -> ValidationReport {
    let mut failures = Vec::new();
    let g = l.g;
    let p = l.p as i128;

    let mut functional_equation_ok = l.coeff(0) == 1;
    if !functional_equation_ok {
        failures.push("c_0 != 1".to_string());
    }
    for i in 0..=g as usize {
        let scale = p.pow(g as u32 - i as u32);
        if l.coeff(2 * g as usize - i) != scale * l.coeff(i) {
            functional_equation_ok = false;
            failures.push(format!("functional equation fails at i={i}"));
        }
    }

    let mut weil_coefficient_bounds_ok = true;
    for i in 0..=2 * g as usize {
        // |c_i| ≤ C(2g,i) p^{i/2}, squared to stay in integers.
        let bound = binomial(2 * g as u32, i as u32);
        let lhs = l.coeff(i).checked_mul(l.coeff(i));
        let rhs = bound
            .checked_mul(bound)
            .and_then(|b| b.checked_mul(p.pow(i as u32)));
        match (lhs, rhs) {
            (Some(lhs), Some(rhs)) if lhs <= rhs => {}
            _ => {
                weil_coefficient_bounds_ok = false;
                failures.push(format!("Weil coefficient bound fails at i={i}"));
            }
        }
    }

    let mut roundtrip_ok = true;
    for (idx, &n) in counts.counts.iter().enumerate() {
        let k = idx as u32 + 1;
        match count_from_lpoly(l, k) {
            Ok(predicted) if predicted == n as i128 => {}
            Ok(predicted) => {
                roundtrip_ok = false;
                failures.push(format!(
                    "round-trip fails at k={k}: L predicts {predicted}, counted {n}"
                ));
            }
            Err(e) => {
                roundtrip_ok = false;
                failures.push(format!("round-trip overflow at k={k}: {e}"));
            }
        }
    }

    ValidationReport {
        functional_equation_ok,
        weil_coefficient_bounds_ok,
        roundtrip_ok,
        failures,
    }
}
