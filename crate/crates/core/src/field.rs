//! Arithmetic in a finite field `F_{p^d}` with the `q`-power Frobenius, `q = p^m`.
//!
//! Elements are stored as their residue polynomial modulo a fixed monic
//! irreducible, packed base `p` into a `u32` (coefficient of `x^i` is the
//! `i`-th base-`p` digit). Multiplication, addition in odd characteristic,
//! powers and the Frobenius go through discrete-log tables built once at
//! construction; the tables are filled with plain polynomial arithmetic,
//! which stays available as [`FieldContext::mul_reduced`].

use std::fmt;

use thiserror::Error;

use crate::arith;

/// Upper bound on `p^d` for a table-backed context.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("base power {base_power} does not divide extension degree {degree}")]
    BasePowerMismatch { degree: u32, base_power: u32 },
    #[error("field of order {p}^{degree} exceeds the table limit of {limit} elements")]
    TooLarge { p: u64, degree: u32, limit: u64 },
    #[error("no irreducible polynomial of degree {degree} over F_{p} (internal error)")]
    NoIrreducible { p: u64, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of a field of order {order}")]
    ForeignElement { value: u64, order: u64 },
    #[error("expected at most {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coefficient {value} is not reduced modulo {p}")]
    UnreducedCoefficient { value: u32, p: u32 },
}

/// A field element; meaningful only together with the context that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed base-`p` coefficient encoding.
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Immutable arithmetic context for `F_{p^d}` viewed over `F_q`, `q = p^m`.
pub struct FieldContext {
    p: u32,
    degree: u32,
    base_power: u32,
    base_order: u64,
    order: u32,
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[i] = g^i`, doubled so sums of two logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `NO_LOG` when the sum vanishes. Odd `p` only.
    zech: Vec<u32>,
    frob: Vec<u32>,
    subfield_degree: Vec<u8>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("base_power", &self.base_power)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldContext {
    /// Builds `F_{p^d}` with base field `F_{p^m}`.
    ///
    /// The modulus is the first monic irreducible of degree `d` when monic
    /// polynomials are ordered by their packed lower coefficients
    /// `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.
    pub fn new(p: u64, degree: u32, base_power: u32) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if degree == 0 || base_power == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if degree % base_power != 0 {
            return Err(FieldError::BasePowerMismatch { degree, base_power });
        }
        let order = match arith::checked_pow(p, degree) {
            Some(o) if o <= MAX_FIELD_ORDER => o as u32,
            _ => {
                return Err(FieldError::TooLarge {
                    p,
                    degree,
                    limit: MAX_FIELD_ORDER,
                })
            }
        };
        let p32 = p as u32;
        let modulus = least_irreducible(p32, degree)
            .ok_or(FieldError::NoIrreducible { p, degree })?;
        let base_order = p.pow(base_power);

        let mut ctx = FieldContext {
            p: p32,
            degree,
            base_power,
            base_order,
            order,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            frob: Vec::new(),
            subfield_degree: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as u64;
        let primes = arith::prime_factors(n);
        let primitive = (1..self.order)
            .find(|&g| primes.iter().all(|&r| self.pow_reduced(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        self.primitive = primitive;

        let n = n as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(n) {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_packed(cur, primitive);
        }
        debug_assert_eq!(cur, 1);
        exp.copy_within(0..n, n);
        self.exp = exp;
        self.log = log;

        if self.p != 2 {
            let one_plus = |v: u32| -> u32 {
                let low = v % self.p;
                v - low + (low + 1) % self.p
            };
            self.zech = (0..n)
                .map(|k| {
                    let s = one_plus(self.exp[k]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        self.log[s as usize]
                    }
                })
                .collect();
        }

        let q = self.base_order;
        self.frob = (0..self.order)
            .map(|a| self.pow(FieldElement(a), q).0)
            .collect();

        let rel = self.relative_degree();
        let divs = arith::divisors(rel);
        let n64 = n as u64;
        self.subfield_degree = (0..self.order)
            .map(|a| {
                if a == 0 {
                    return 1u8;
                }
                let l = self.log[a as usize] as u64;
                divs.iter()
                    .copied()
                    .find(|&k| {
                        let qk = mod_pow_u64(q, k as u64, n64);
                        (l * ((qk + n64 - 1) % n64)) % n64 == 0
                    })
                    .unwrap_or(rel) as u8
            })
            .collect();
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree `d` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn base_power(&self) -> u32 {
        self.base_power
    }

    /// `q = p^m`.
    pub fn base_order(&self) -> u64 {
        self.base_order
    }

    /// Degree `d/m` of the field over its base `F_q`.
    pub fn relative_degree(&self) -> u32 {
        self.degree / self.base_power
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, lowest degree first (length `d + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.primitive)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value < self.order {
            Ok(FieldElement(value))
        } else {
            Err(FieldError::ForeignElement {
                value: value as u64,
                order: self.order as u64,
            })
        }
    }

    /// Element from coefficients `c_0, c_1, ...` of its residue polynomial.
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.degree as usize {
            return Err(FieldError::CoefficientCount {
                expected: self.degree as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::UnreducedCoefficient { value: bad, p: self.p });
        }
        Ok(FieldElement(self.pack(coeffs)))
    }

    /// Residue coefficients, lowest degree first, always of length `d`.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        self.unpack(a.0)
    }

    /// Embeds an element of the prime field.
    pub fn from_int(&self, value: i64) -> FieldElement {
        FieldElement(value.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x`.
    pub fn variable(&self) -> FieldElement {
        if self.degree == 1 {
            // x ≡ -c_0 modulo the linear modulus x + c_0
            self.from_int(-(self.modulus[0] as i64))
        } else {
            FieldElement(self.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[k as usize];
        if z == NO_LOG {
            FieldElement::ZERO
        } else {
            FieldElement(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.order - 1) / 2;
        FieldElement(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[l as usize])
    }

    /// `a^{p^d - 2}`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Product computed by polynomial multiplication and reduction, without tables.
    pub fn mul_reduced(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_packed(a.0, b.0))
    }

    /// `a^q`.
    #[inline]
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.frob[a.0 as usize])
    }

    /// `a^{q^k}`.
    pub fn frobenius_iter(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..k % self.relative_degree() {
            x = self.frobenius(x);
        }
        x
    }

    /// Least `k` with `a^{q^k} = a`; always divides [`relative_degree`](Self::relative_degree).
    #[inline]
    pub fn subfield_degree(&self, a: FieldElement) -> u32 {
        self.subfield_degree[a.0 as usize] as u32
    }

    /// All elements of the intermediate field `F_{q^k}` (`k` must divide `d/m`).
    pub fn subfield_elements(&self, k: u32) -> Vec<FieldElement> {
        assert!(
            k > 0 && self.relative_degree() % k == 0,
            "F_q^{k} is not a subfield of F_q^{}",
            self.relative_degree()
        );
        self.elements()
            .filter(|&a| k % self.subfield_degree(a) == 0)
            .collect()
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn unpack(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn mul_packed(&self, a: u32, b: u32) -> u32 {
        let prod = fp_poly::mul(&self.unpack(a), &self.unpack(b), self.p);
        let rem = fp_poly::rem_monic(&prod, &self.modulus, self.p);
        let mut digits = rem;
        digits.resize(self.degree as usize, 0);
        self.pack(&digits)
    }

    fn pow_reduced(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_packed(acc, base);
            }
            base = self.mul_packed(base, base);
            e >>= 1;
        }
        acc
    }
}

fn mod_pow_u64(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// First monic irreducible of the given degree in packed-coefficient order.
fn least_irreducible(p: u32, degree: u32) -> Option<Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).find_map(|k| {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut v = k;
        for _ in 0..degree {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        fp_poly::is_irreducible(&f, p).then_some(f)
    })
}

/// Dense polynomials over `F_p`, lowest degree first.
pub(crate) mod fp_poly {
    fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let d = f.len() - 1;
        let mut r: Vec<u32> = a.to_vec();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in f.iter().enumerate() {
                    let sub = (lead as u64 * c as u64) % p as u64;
                    r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            r.pop();
        }
        trim(r)
    }

    fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u32> = b
            .iter()
            .map(|&c| ((c as u64 * lead_inv as u64) % p as u64) as u32)
            .collect();
        rem_monic(a, &monic, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem_monic(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem_monic(&mul(&acc, &b, p), f, p);
            }
            b = rem_monic(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        acc
    }

    /// `f` monic of degree `d` is irreducible iff `gcd(f, x^{p^k} - x) = 1` for all `k <= d/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        let x = vec![0u32, 1];
        let mut h = rem_monic(&x, f, p);
        for _ in 1..=d / 2 {
            h = powmod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &trim(diff), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            f.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                == 0
        })
    }

    #[test]
    fn prime_field_f2() {
        let f = FieldContext::new(2, 1, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.elements().count(), 2);
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn f4_modulus_and_product() {
        let f = FieldContext::new(2, 2, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let alpha = f.variable();
        let alpha_plus_one = f.add(alpha, FieldElement::ONE);
        assert_eq!(f.mul(alpha, alpha), alpha_plus_one);
        assert_eq!(f.frobenius(alpha), alpha_plus_one);
    }

    #[test]
    fn f9_modulus_is_first_irreducible_quadratic() {
        // exhaust x^2 + c1 x + c0 in packed order c0 + 3 c1; quadratics are
        // irreducible exactly when rootless
        let expected = (0..9u32)
            .map(|k| vec![k % 3, k / 3, 1])
            .find(|f| !has_root(f, 3))
            .unwrap();
        let f = FieldContext::new(3, 2, 1).unwrap();
        assert_eq!(f.modulus(), expected.as_slice());
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rebuild_is_deterministic() {
        let a = FieldContext::new(3, 6, 1).unwrap();
        let b = FieldContext::new(3, 6, 1).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.primitive_element(), b.primitive_element());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldContext::new(4, 2, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(
            FieldContext::new(2, 3, 2),
            Err(FieldError::BasePowerMismatch { .. })
        ));
        assert!(matches!(FieldContext::new(2, 30, 1), Err(FieldError::TooLarge { .. })));
        let f = FieldContext::new(2, 2, 1).unwrap();
        assert!(matches!(f.element(4), Err(FieldError::ForeignElement { .. })));
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert!(f.from_coefficients(&[2]).is_err());
        assert!(f.from_coefficients(&[1, 1, 1]).is_err());
    }

    #[test]
    fn frobenius_fixes_base_and_has_order_dividing_relative_degree() {
        for &(p, d, m) in &[(2u64, 6u32, 1u32), (3, 4, 2), (2, 6, 2), (5, 2, 1)] {
            let f = FieldContext::new(p, d, m).unwrap();
            let rel = f.relative_degree();
            for a in f.elements() {
                assert_eq!(f.frobenius_iter(a, rel), a);
                if f.subfield_degree(a) == 1 {
                    assert_eq!(f.frobenius(a), a);
                }
                assert_eq!(rel % f.subfield_degree(a), 0);
            }
        }
    }

    #[test]
    fn subfield_degree_census() {
        let f = FieldContext::new(3, 2, 1).unwrap();
        assert_eq!(f.elements().filter(|&a| f.subfield_degree(a) == 1).count(), 3);
        assert_eq!(f.subfield_degree(FieldElement::ZERO), 1);

        let f = FieldContext::new(2, 6, 1).unwrap();
        let exact6 = f.elements().filter(|&a| f.subfield_degree(a) == 6).count();
        assert_eq!(exact6, 64 - 8 - 4 + 2);

        // |{a : deg(a) | k}| = q^k
        for &(p, d, m) in &[(2u64, 6u32, 1u32), (2, 6, 2), (3, 6, 1), (5, 4, 2)] {
            let f = FieldContext::new(p, d, m).unwrap();
            let q = f.base_order();
            for k in arith::divisors(f.relative_degree()) {
                assert_eq!(f.subfield_elements(k).len() as u64, q.pow(k));
            }
        }
    }

    #[test]
    fn table_product_matches_polynomial_reduction() {
        for &(p, d) in &[(2u64, 6u32), (3, 3), (5, 2), (7, 2), (2, 5)] {
            let f = FieldContext::new(p, d, 1).unwrap();
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, b), f.mul_reduced(a, b));
                }
            }
        }
    }

    #[test]
    fn addition_is_digitwise() {
        let f = FieldContext::new(5, 3, 1).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                let ca = f.coefficients(a);
                let cb = f.coefficients(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 5).collect();
                assert_eq!(f.coefficients(f.add(a, b)), sum);
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn irreducibility_test_agrees_with_root_search_for_cubics() {
        for p in [2u32, 3, 5] {
            for k in 0..p.pow(3) {
                let f = vec![k % p, (k / p) % p, k / (p * p), 1];
                assert_eq!(fp_poly::is_irreducible(&f, p), !has_root(&f, p), "{f:?} mod {p}");
            }
        }
    }

    fn contexts() -> Vec<FieldContext> {
        vec![
            FieldContext::new(2, 6, 1).unwrap(),
            FieldContext::new(3, 4, 2).unwrap(),
            FieldContext::new(5, 3, 1).unwrap(),
            FieldContext::new(7, 2, 1).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(ci in 0usize..4, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let ctxs = contexts();
            let f = &ctxs[ci];
            let n = f.order();
            let (a, b, c) = (FieldElement(a % n), FieldElement(b % n), FieldElement(c % n));
            prop_assert_eq!(f.add(a, FieldElement::ZERO), a);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.div(FieldElement::ONE, a).unwrap()), FieldElement::ONE);
            }
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        }
    }
}
