//! Exact arithmetic in F_p and F_{p^k} with a polynomial-basis
//! representation — the kernel under all point counts.
//!
//! A `FieldContext` fixes p, the degree k and a deterministic irreducible
//! modulus (the lexicographically first one), so identical contexts are
//! reproduced across runs. Elements are dense coefficient vectors over
//! Z/p, least-significant first. Arithmetic never wraps silently: p^k is
//! range-checked at construction and intermediate products stay inside u64
//! because p is capped below 2^31.

use serde::Serialize;

use crate::arith::is_prime;

/// Cap on p so that coefficient products fit in u64 without widening.
const MAX_P: u64 = 1 << 31;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size p^k out of range (p={p}, k={k}, limit {limit})")]
    RangeOverflow { p: u64, k: u32, limit: u128 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field context")]
    ContextMismatch,
}

/// An element of F_{p^k}: k coefficients over Z/p, least-significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Immutable description of F_{p^k}; shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    k: u32,
    /// Monic irreducible modulus of degree k, all k+1 coefficients.
    modulus: Vec<u64>,
    q: u128,
}

impl FieldContext {
    /// Construct F_{p^k} with the deterministic modulus from
    /// [`find_irreducible`]. `max_size` bounds q = p^k.
    pub fn new(p: u64, k: u32, max_size: u128) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= MAX_P || k == 0 {
            return Err(FieldError::RangeOverflow {
                p,
                k,
                limit: max_size,
            });
        }
        let q = (p as u128)
            .checked_pow(k)
            .filter(|&q| q <= max_size)
            .ok_or(FieldError::RangeOverflow {
                p,
                k,
                limit: max_size,
            })?;
        let modulus = find_irreducible(p, k);
        Ok(FieldContext { p, k, modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The constant element c mod p.
    pub fn from_int(&self, c: i128) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = c.rem_euclid(self.p as i128) as u64;
        FieldElement { coeffs }
    }

    /// Element from arbitrary integer coefficients (reduced mod p); extra
    /// high coefficients must be absent.
    pub fn from_coeffs(&self, coeffs: &[i128]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.k as usize {
            return Err(FieldError::ContextMismatch);
        }
        let mut out = vec![0u64; self.k as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i] = c.rem_euclid(self.p as i128) as u64;
        }
        Ok(FieldElement { coeffs: out })
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.coeffs.len() != self.k as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            Err(FieldError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement {
            coeffs: polymulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p),
        })
    }

    /// a^e by square-and-multiply; e ≥ 0.
    pub fn pow(&self, a: &FieldElement, mut e: u128) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut base = a.coeffs.clone();
        let mut acc = self.one().coeffs;
        while e > 0 {
            if e & 1 == 1 {
                acc = polymulmod(&acc, &base, &self.modulus, self.p);
            }
            e >>= 1;
            if e > 0 {
                base = polymulmod(&base, &base, &self.modulus, self.p);
            }
        }
        Ok(FieldElement { coeffs: acc })
    }

    /// Multiplicative inverse via a^{q−2}.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(FieldError::DivisionByZero);
        }
        self.pow(a, self.q - 2)
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// The i-th element in lexicographic coefficient order (base-p digits
    /// of i, least-significant digit = constant coefficient).
    pub fn element_at(&self, index: u128) -> FieldElement {
        debug_assert!(index < self.q);
        let mut coeffs = vec![0u64; self.k as usize];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = (rest % self.p as u128) as u64;
            rest /= self.p as u128;
        }
        FieldElement { coeffs }
    }

    /// All q elements, starting at 0, in lexicographic coefficient order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_at(i))
    }

    /// #{y ∈ F_q : y^m = c}: 1 for c = 0, otherwise gcd(m, q−1) or 0
    /// according to whether c is a d-th power, decided by one exponentiation.
    pub fn fiber_count(&self, c: &FieldElement, m: u64) -> Result<u64, FieldError> {
        self.check(c)?;
        debug_assert!(m >= 2);
        if self.is_zero(c) {
            return Ok(1);
        }
        let d = gcd_u128(m as u128, self.q - 1);
        let probe = self.pow(c, (self.q - 1) / d)?;
        if probe == self.one() {
            Ok(d as u64)
        } else {
            Ok(0)
        }
    }

    /// Evaluate an integer polynomial (lowest-first coefficients) at a
    /// field element by Horner's rule.
    pub fn eval_int_poly(&self, coeffs: &[i128], x: &FieldElement) -> Result<FieldElement, FieldError> {
        let elems: Vec<FieldElement> = coeffs.iter().map(|&c| self.from_int(c)).collect();
        self.eval_poly(&elems, x)
    }

    /// Horner evaluation with pre-converted field-element coefficients —
    /// the hot-loop variant that avoids per-call conversions.
    pub fn eval_poly(&self, coeffs: &[FieldElement], x: &FieldElement) -> Result<FieldElement, FieldError> {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, x)?;
            acc = self.add(&acc, c)?;
        }
        Ok(acc)
    }

    /// Index of an element in the [`enumerate`](Self::enumerate) order:
    /// its coefficient vector read as base-p digits.
    pub fn index_of(&self, a: &FieldElement) -> u128 {
        let mut idx = 0u128;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p as u128 + c as u128;
        }
        idx
    }

    /// Fiber counter for y^m = c over this field; precomputes a full
    /// count table when q is small enough to hold one byte per element.
    pub fn fiber_counter(&self, m: u64) -> FiberCounter<'_> {
        const TABLE_LIMIT: u128 = 1 << 25;
        let table = if self.q <= TABLE_LIMIT {
            let mut table = vec![0u8; self.q as usize];
            for y in self.enumerate() {
                let ym = self.pow(&y, m as u128).expect("own element");
                table[self.index_of(&ym) as usize] += 1;
            }
            Some(table)
        } else {
            None
        };
        FiberCounter { ctx: self, m, table }
    }
}

/// Counts solutions of y^m = c for a fixed field and exponent. Built by
/// [`FieldContext::fiber_counter`]; the table path is a whole-field
/// precomputation, the fallback is one exponentiation per query.
pub struct FiberCounter<'a> {
    ctx: &'a FieldContext,
    m: u64,
    table: Option<Vec<u8>>,
}

impl FiberCounter<'_> {
    pub fn count(&self, c: &FieldElement) -> Result<u64, FieldError> {
        match &self.table {
            Some(table) => {
                self.ctx.check(c)?;
                Ok(table[self.ctx.index_of(c) as usize] as u64)
            }
            None => self.ctx.fiber_count(c, self.m),
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Product of two coefficient vectors reduced mod the monic `modulus`.
fn polymulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    if k == 1 {
        // Prime field fast path; the modulus is x + c with c = 0.
        return vec![a[0] * b[0] % p];
    }
    let mut buf = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + x * y) % p;
        }
    }
    // Monic reduction from the top.
    for i in (k..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        for j in 0..k {
            let m = modulus[j];
            if m != 0 {
                let idx = i - k + j;
                buf[idx] = (buf[idx] + (p - m) * c % p) % p;
            }
        }
    }
    buf.truncate(k);
    buf
}

/// The lexicographically first (by the coefficient tuple
/// (c_{k−1}, …, c_0)) monic irreducible polynomial of degree k over F_p.
///
/// Irreducibility is certified by x^{p^k} ≡ x mod f together with
/// gcd(x^{p^{k/ℓ}} − x, f) = 1 for every prime ℓ | k.
pub fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    assert!(is_prime(p) && k >= 1 && p < MAX_P);
    if k == 1 {
        return vec![0, 1]; // x
    }
    let prime_divisors: Vec<u32> = {
        let mut divs = Vec::new();
        let mut n = k;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                divs.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            divs.push(n);
        }
        divs
    };
    let total = (p as u128).checked_pow(k).expect("modulus search overflow");
    'candidates: for idx in 0..total {
        // idx encodes (c_{k−1}, …, c_0) with c_{k−1} most significant.
        let mut f = vec![0u64; k as usize + 1];
        f[k as usize] = 1;
        let mut rest = idx;
        for i in 0..k as usize {
            f[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        // x^{p^j} mod f by iterated p-th powering of x.
        let x = vec![0u64, 1];
        let mut frob = x.clone();
        for j in 1..=k {
            frob = polypowmod(&frob, p as u128, &f, p);
            if prime_divisors.iter().any(|&l| k % l == 0 && j == k / l) {
                // gcd(x^{p^{k/ℓ}} − x, f) must be 1.
                let diff = polysub(&frob, &x, p);
                if polygcd_degree(&diff, &f, p) != 0 {
                    continue 'candidates;
                }
            }
        }
        if polysub(&frob, &x, p).is_empty() {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists");
}

fn polysub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Degree of gcd(a, f) over F_p (0 when coprime).
fn polygcd_degree(a: &[u64], f: &[u64], p: u64) -> usize {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    while !r1.is_empty() {
        let r = polyrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    r0.len().saturating_sub(1)
}

fn polyrem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
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

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime; a^{p−2} by square-and-multiply.
    let mut base = a % p;
    let mut e = p - 2;
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

/// a mod f over F_p raised to the e-th power.
fn polypowmod(a: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    let mut base = {
        let mut v = polyrem(a, f, p);
        v.resize(k, 0);
        v
    };
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = polymulmod(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = polymulmod(&base, &base, f, p);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, k: u32) -> FieldContext {
        FieldContext::new(p, k, 1 << 40).unwrap()
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(find_irreducible(2, 2), vec![1, 1, 1]); // x² + x + 1
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]); // x² + 1
        assert_eq!(find_irreducible(5, 2), vec![2, 0, 1]); // x² + 2
    }

    #[test]
    fn irreducible_brute_force_cross_check() {
        // The chosen modulus must have no roots and, for degree 2 and 3,
        // rootlessness is equivalent to irreducibility.
        for p in [2u64, 3, 5, 7, 11] {
            for k in [2u32, 3] {
                let f = find_irreducible(p, k);
                assert_eq!(f.len() as u32, k + 1);
                assert_eq!(*f.last().unwrap(), 1);
                for x in 0..p {
                    let mut val = 0u64;
                    for &c in f.iter().rev() {
                        val = (val * x + c) % p;
                    }
                    assert_ne!(val, 0, "root {x} of modulus over F_{p}, k={k}");
                }
            }
        }
    }

    #[test]
    fn f4_multiplication() {
        let f4 = ctx(2, 2);
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        let xx = f4.mul(&x, &x).unwrap();
        assert_eq!(xx, f4.from_coeffs(&[1, 1]).unwrap()); // x² ≡ x + 1
        assert_eq!(f4.inv(&f4.one()).unwrap(), f4.one());
    }

    #[test]
    fn f9_power() {
        let f9 = ctx(3, 2);
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.pow(&x, 2).unwrap(), f9.from_int(2)); // x² ≡ −1 ≡ 2
    }

    #[test]
    fn enumerate_order() {
        let f2 = ctx(2, 1);
        let elems: Vec<_> = f2.enumerate().collect();
        assert_eq!(elems, vec![f2.from_int(0), f2.from_int(1)]);

        let f4 = ctx(2, 2);
        let elems: Vec<_> = f4.enumerate().collect();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[0], f4.zero());
        assert_eq!(elems[1], f4.one());
        assert_eq!(elems[2], f4.from_coeffs(&[0, 1]).unwrap());
        assert_eq!(elems[3], f4.from_coeffs(&[1, 1]).unwrap());

        let f9 = ctx(3, 2);
        let elems: Vec<_> = f9.enumerate().collect();
        assert_eq!(elems.len(), 9);
        assert_eq!(&elems[..3], &[f9.from_int(0), f9.from_int(1), f9.from_int(2)]);
    }

    #[test]
    fn fiber_count_examples() {
        let f7 = ctx(7, 1);
        assert_eq!(f7.fiber_count(&f7.zero(), 3).unwrap(), 1);
        assert_eq!(f7.fiber_count(&f7.from_int(2), 2).unwrap(), 2);
        assert_eq!(f7.fiber_count(&f7.from_int(2), 3).unwrap(), 0);
        let f5 = ctx(5, 1);
        assert_eq!(f5.fiber_count(&f5.from_int(2), 3).unwrap(), 1);
    }

    #[test]
    fn fiber_counts_partition_the_field() {
        // Σ_c #{y : y^m = c} = q, and each count is in {0, 1, gcd(m, q−1)};
        // also cross-check against naive enumeration of powers.
        for p in [2u64, 3, 5, 7, 11] {
            for k in 1..=4u32 {
                let q = (p as u128).pow(k);
                if q > 121 {
                    continue;
                }
                let ctx = FieldContext::new(p, k, 1 << 20).unwrap();
                for m in 2..=7u64 {
                    let mut total = 0u64;
                    for c in ctx.enumerate() {
                        let n = ctx.fiber_count(&c, m).unwrap();
                        assert!(n == 0 || n == 1 || n as u128 == gcd_u128(m as u128, q - 1));
                        let naive = ctx
                            .enumerate()
                            .filter(|y| ctx.pow(y, m as u128).unwrap() == c)
                            .count() as u64;
                        assert_eq!(n, naive, "q={q}, m={m}");
                        total += n;
                    }
                    assert_eq!(total as u128, q);
                }
            }
        }
    }

    #[test]
    fn fiber_counter_table_matches_pointwise() {
        for (p, k) in [(2u64, 4u32), (3, 3), (7, 2), (11, 1)] {
            let ctx = FieldContext::new(p, k, 1 << 20).unwrap();
            for m in 2..=7u64 {
                let counter = ctx.fiber_counter(m);
                for c in ctx.enumerate() {
                    assert_eq!(
                        counter.count(&c).unwrap(),
                        ctx.fiber_count(&c, m).unwrap(),
                        "p={p}, k={k}, m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn index_of_inverts_element_at() {
        let ctx = FieldContext::new(5, 3, 1 << 20).unwrap();
        for i in 0..ctx.q() {
            assert_eq!(ctx.index_of(&ctx.element_at(i)), i);
        }
    }

    #[test]
    fn frobenius_fixes_field() {
        for (p, k) in [(3u64, 2u32), (5, 2), (2, 3), (7, 1)] {
            let ctx = FieldContext::new(p, k, 1 << 20).unwrap();
            for a in ctx.enumerate() {
                assert_eq!(ctx.pow(&a, ctx.q()).unwrap(), a);
            }
            // Frobenius is additive and multiplicative.
            let sample: Vec<_> = ctx.enumerate().take(9).collect();
            for a in &sample {
                for b in &sample {
                    let fr = |v: &FieldElement| ctx.pow(v, p as u128).unwrap();
                    assert_eq!(fr(&ctx.add(a, b).unwrap()), ctx.add(&fr(a), &fr(b)).unwrap());
                    assert_eq!(fr(&ctx.mul(a, b).unwrap()), ctx.mul(&fr(a), &fr(b)).unwrap());
                }
            }
        }
    }

    #[test]
    fn inverse_and_errors() {
        let f9 = ctx(3, 2);
        for a in f9.enumerate().skip(1) {
            let inv = f9.inv(&a).unwrap();
            assert_eq!(f9.mul(&a, &inv).unwrap(), f9.one());
        }
        assert_eq!(f9.inv(&f9.zero()), Err(FieldError::DivisionByZero));

        let f4 = ctx(2, 2);
        let alien = f4.one();
        let f8 = ctx(2, 3);
        assert_eq!(f8.add(&alien, &f8.one()), Err(FieldError::ContextMismatch));
    }

    #[test]
    fn range_overflow_rejected() {
        assert!(matches!(
            FieldContext::new(1009, 4, 1_000_000),
            Err(FieldError::RangeOverflow { .. })
        ));
        assert!(matches!(
            FieldContext::new(9, 1, 1 << 20),
            Err(FieldError::NotPrime(9))
        ));
    }
}
