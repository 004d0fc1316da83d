//! Name-keyed registry of curve families.
//!
//! Each family is a builder from DSL arguments to a boxed [`Curve`]
//! strategy; the built-in table covers the families used throughout the
//! experiments plus the generic `superelliptic` escape hatch.

use std::sync::{Arc, LazyLock};

use crate::curves::{Curve, CurveError, FermatCurve, SuperellipticCurve, chebyshev_poly};
use crate::intpoly::IntPoly;
use crate::splitting::AbelianCMFieldSpec;

type Builder = fn(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError>;

struct FamilyEntry {
    name: &'static str,
    usage: &'static str,
    build: Builder,
}

pub struct FamilyRegistry {
    entries: Vec<FamilyEntry>,
}

static BUILTIN: LazyLock<FamilyRegistry> = LazyLock::new(FamilyRegistry::with_builtins);

impl FamilyRegistry {
    pub fn builtin() -> &'static FamilyRegistry {
        &BUILTIN
    }

    fn with_builtins() -> Self {
        FamilyRegistry {
            entries: vec![
                FamilyEntry {
                    name: "cl",
                    usage: "cl:<l>  (odd prime l; y^l = x(1-x), genus (l-1)/2)",
                    build: build_cl,
                },
                FamilyEntry {
                    name: "chebyshev",
                    usage: "chebyshev:<l>  (prime l >= 5; y^2 = U_l(x), genus (l-1)/2)",
                    build: build_chebyshev,
                },
                FamilyEntry {
                    name: "gk-x",
                    usage: "gk-x  (2y^3 = x^4 - 98x^2 + 392x - 343, genus 3)",
                    build: build_gk_x,
                },
                FamilyEntry {
                    name: "yl",
                    usage: "yl:<l>  (y^2 = x(x^{2l}+1), genus l)",
                    build: build_yl,
                },
                FamilyEntry {
                    name: "fermat",
                    usage: "fermat:<n>  (X^n + Y^n = Z^n, n >= 3)",
                    build: build_fermat,
                },
                FamilyEntry {
                    name: "superelliptic",
                    usage: "superelliptic:<m>:<c0,c1,...,cd>  (y^m = f(x), coefficients low-first)",
                    build: build_superelliptic,
                },
            ],
        }
    }

    pub fn usage_lines(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.usage).collect()
    }

    pub fn parse(&self, dsl: &str) -> Result<Arc<dyn Curve>, CurveError> {
        let mut parts = dsl.split(':');
        let name = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let entry = self
            .entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| {
                CurveError::Parse(
                    dsl.to_string(),
                    format!(
                        "unknown family `{name}`; known: {}",
                        self.entries
                            .iter()
                            .map(|e| e.name)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )
            })?;
        (entry.build)(dsl, &args)
    }
}

fn one_int_arg(dsl: &str, args: &[&str]) -> Result<u64, CurveError> {
    if args.len() != 1 {
        return Err(CurveError::Parse(
            dsl.to_string(),
            "expected exactly one integer parameter".into(),
        ));
    }
    args[0]
        .parse()
        .map_err(|_| CurveError::Parse(dsl.to_string(), format!("bad integer `{}`", args[0])))
}

fn build_cl(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    let l = one_int_arg(dsl, args)?;
    if l < 3 || l % 2 == 0 || !crate::arith::is_prime(l) {
        return Err(CurveError::Parse(
            dsl.to_string(),
            format!("cl requires an odd prime l, got {l}"),
        ));
    }
    // y^l = x(1−x) = x − x².
    let curve = SuperellipticCurve::new(
        format!("cl:{l}"),
        l,
        1,
        IntPoly::new(vec![0, 1, -1]),
        Some(AbelianCMFieldSpec::cyclotomic(l).expect("odd prime conductor")),
        true,
    )?;
    Ok(Arc::new(curve))
}

fn build_chebyshev(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    let l = one_int_arg(dsl, args)?;
    if l < 5 || !crate::arith::is_prime(l) {
        return Err(CurveError::Parse(
            dsl.to_string(),
            format!("chebyshev requires a prime l >= 5, got {l}"),
        ));
    }
    let curve = SuperellipticCurve::new(
        format!("chebyshev:{l}"),
        2,
        1,
        chebyshev_poly(l as u32),
        Some(AbelianCMFieldSpec::composite_real(l, 4).expect("prime >= 5")),
        true,
    )?;
    Ok(Arc::new(curve))
}

fn build_gk_x(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    if !args.is_empty() {
        return Err(CurveError::Parse(
            dsl.to_string(),
            "gk-x takes no parameters".into(),
        ));
    }
    let curve = SuperellipticCurve::new(
        "gk-x",
        3,
        2,
        IntPoly::new(vec![-343, 392, -98, 0, 1]),
        Some(AbelianCMFieldSpec::composite_real(7, 3).expect("valid")),
        true,
    )?;
    Ok(Arc::new(curve))
}

fn build_yl(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    let l = one_int_arg(dsl, args)?;
    if l < 1 {
        return Err(CurveError::Parse(
            dsl.to_string(),
            "yl requires l >= 1".into(),
        ));
    }
    // y² = x(x^{2l}+1) = x^{2l+1} + x.
    let mut coeffs = vec![0i128; 2 * l as usize + 2];
    coeffs[1] = 1;
    coeffs[2 * l as usize + 1] = 1;
    let curve = SuperellipticCurve::new(format!("yl:{l}"), 2, 1, IntPoly::new(coeffs), None, false)?;
    Ok(Arc::new(curve))
}

fn build_fermat(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    let n = one_int_arg(dsl, args)?;
    Ok(Arc::new(FermatCurve::new(n)?))
}

fn build_superelliptic(dsl: &str, args: &[&str]) -> Result<Arc<dyn Curve>, CurveError> {
    if args.len() != 2 {
        return Err(CurveError::Parse(
            dsl.to_string(),
            "expected superelliptic:<m>:<c0,c1,...,cd>".into(),
        ));
    }
    let m: u64 = args[0]
        .parse()
        .map_err(|_| CurveError::Parse(dsl.to_string(), format!("bad integer `{}`", args[0])))?;
    let coeffs: Result<Vec<i128>, _> = args[1].split(',').map(|s| s.trim().parse()).collect();
    let coeffs = coeffs
        .map_err(|_| CurveError::Parse(dsl.to_string(), "bad coefficient list".into()))?;
    let curve = SuperellipticCurve::new(dsl, m, 1, IntPoly::new(coeffs), None, false)?;
    Ok(Arc::new(curve))
}
