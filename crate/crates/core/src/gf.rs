//! Exact arithmetic in finite fields `F_q`, `q = p^e`, including towers of
//! extensions.
//!
//! Elements are plain `u32` codes: the code of `c_0 + c_1 x + ... + c_{e-1} x^{e-1}`
//! is `sum c_i Q^i` where `Q` is the order of the coefficient field (little-endian
//! positional encoding). Code 0 is zero and code 1 is one in every field.
//!
//! An extension is always stored over its immediate base, so `F_{q^t}` built as
//! `F_q.extension(t)` keeps its `t`-dimensional `F_q`-structure and field
//! reduction is a matter of unpacking digits.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Fields up to this order get full addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;
/// Hard cap on the field order so codes and intermediate products fit comfortably.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("base field has characteristic {base}, expected {p}")]
    CharacteristicMismatch { p: u32, base: u32 },
    #[error("field order exceeds {MAX_ORDER}")]
    TooLarge,
    #[error("code {code} is not an element of a field of order {order}")]
    InvalidElement { code: u32, order: u32 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("requested base is not a subfield in this field's tower")]
    NotASubfieldInTower,
    #[error("malformed field description: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, GfError>;

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u32,
    /// Degree over the immediate coefficient field.
    degree: usize,
    /// Monic modulus, little-endian, coefficients as codes of the coefficient field.
    modulus: Vec<u32>,
    /// Coefficient field; `None` only for the prime field itself.
    base: Option<Field>,
    order: u32,
    tower: Vec<Vec<u32>>,
    tables: Option<Tables>,
}

/// A finite field, cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.tower == other.0.tower)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.tower.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}; p={}, tower={:?})", self.0.order, self.0.p, self.0.tower)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let mut inner = Inner {
            p,
            degree: 1,
            modulus: vec![0, 1],
            base: None,
            order: p,
            tower: vec![vec![0, 1]],
            tables: None,
        };
        inner.tables = inner.build_tables();
        Ok(Field(Arc::new(inner)))
    }

    /// `F_{p^e}` over `F_p` with the default modulus.
    pub fn gf(p: u32, e: usize) -> Result<Field> {
        Field::new(p, e, None, None)
    }

    /// `F_q` for a prime power `q`.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(GfError::NotPrime(q))?;
        Field::gf(p, e as usize)
    }

    /// Builds a degree-`e` extension of `base` (or of `F_p` when `base` is absent).
    ///
    /// Without an explicit modulus the lexicographically smallest monic
    /// irreducible is used, comparing coefficient lists `[c_0, ..., c_{e-1}]`
    /// element by element from `c_0`.
    pub fn new(p: u32, e: usize, modulus: Option<&[u32]>, base: Option<&Field>) -> Result<Field> {
        let prime = Field::prime(p)?;
        if e == 0 {
            return Err(GfError::DegreeMismatch { expected: 1, found: 0 });
        }
        let coeff = match base {
            Some(b) if b.characteristic() != p => {
                return Err(GfError::CharacteristicMismatch { p, base: b.characteristic() })
            }
            Some(b) if !b.is_prime_field() => b.clone(),
            _ => prime.clone(),
        };
        let q = coeff.order();

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 {
                    return Err(GfError::DegreeMismatch { expected: e, found: m.len().saturating_sub(1) });
                }
                if m[e] != 1 {
                    return Err(GfError::NotMonic);
                }
                if let Some(&code) = m.iter().find(|&&c| c >= q) {
                    return Err(GfError::InvalidElement { code, order: q });
                }
                if !poly::is_irreducible(&coeff, m) {
                    return Err(GfError::ReducibleModulus);
                }
                // every monic linear modulus gives the same arithmetic
                if e == 1 {
                    vec![0, 1]
                } else {
                    m.to_vec()
                }
            }
            None if e == 1 => vec![0, 1],
            None => poly::smallest_irreducible(&coeff, e),
        };

        if e == 1 && coeff.is_prime_field() {
            return Ok(prime);
        }
        let order = (q as u64).checked_pow(e as u32).filter(|&o| o <= MAX_ORDER).ok_or(GfError::TooLarge)?;

        let mut tower = if coeff.is_prime_field() { Vec::new() } else { coeff.0.tower.clone() };
        tower.push(modulus.clone());
        let mut inner = Inner {
            p,
            degree: e,
            modulus,
            base: Some(coeff),
            order: order as u32,
            tower,
            tables: None,
        };
        inner.tables = inner.build_tables();
        Ok(Field(Arc::new(inner)))
    }

    /// Degree-`t` extension of this field, kept as a tower level over `self`.
    pub fn extension(&self, t: usize) -> Result<Field> {
        Field::new(self.characteristic(), t, None, Some(self))
    }

    /// Rebuilds a field from its tower description (`{"p", "tower"}`).
    pub fn from_tower(p: u32, tower: &[Vec<u32>]) -> Result<Field> {
        let mut levels = tower.iter();
        let first = levels.next().ok_or_else(|| GfError::Malformed("empty tower".into()))?;
        if first.is_empty() {
            return Err(GfError::Malformed("empty modulus".into()));
        }
        let mut field = Field::new(p, first.len() - 1, Some(first), None)?;
        for level in levels {
            if level.is_empty() {
                return Err(GfError::Malformed("empty modulus".into()));
            }
            field = Field::new(p, level.len() - 1, Some(level), Some(&field))?;
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree over the immediate coefficient field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Immediate coefficient field (`F_p` for a simple extension), `None` for `F_p`.
    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// Monic moduli of every tower level, little-endian.
    pub fn tower(&self) -> &[Vec<u32>] {
        &self.0.tower
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }

    pub fn contains(&self, code: u32) -> bool {
        code < self.0.order
    }

    pub fn element(&self, code: u32) -> Result<Element> {
        if !self.contains(code) {
            return Err(GfError::InvalidElement { code, order: self.order() });
        }
        Ok(Element { field: self.clone(), code })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.add[(a * self.0.order + b) as usize],
            None => self.0.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.neg[a as usize],
            None => self.0.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.mul[(a * self.0.order + b) as usize],
            None => self.0.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(match &self.0.tables {
            Some(t) => t.inv[a as usize],
            None => self.pow(a, self.0.order as u64 - 2),
        })
    }

    /// Degree of `self` over `base`, if `base` sits in this field's tower.
    pub fn degree_over(&self, base: &Field) -> Result<usize> {
        if self == base {
            return Ok(1);
        }
        match self.base() {
            Some(b) => Ok(self.degree() * b.degree_over(base)?),
            None => Err(GfError::NotASubfieldInTower),
        }
    }

    /// Coordinates of `a` over the subfield `base`, in the basis
    /// `(y^j x^i)` ordered with the outer level `i` most significant.
    pub fn as_base_vector(&self, a: u32, base: &Field) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(self.degree_over(base)?);
        self.push_base_digits(a, base, &mut out);
        Ok(out)
    }

    fn push_base_digits(&self, a: u32, base: &Field, out: &mut Vec<u32>) {
        if self == base {
            out.push(a);
            return;
        }
        let coeff = self.base().expect("degree_over checked the tower");
        let q = coeff.order();
        let mut rest = a;
        for _ in 0..self.degree() {
            coeff.push_base_digits(rest % q, base, out);
            rest /= q;
        }
    }

    /// Inverse of [`Field::as_base_vector`].
    pub fn from_base_vector(&self, v: &[u32], base: &Field) -> Result<u32> {
        let n = self.degree_over(base)?;
        if v.len() != n {
            return Err(GfError::DegreeMismatch { expected: n, found: v.len() });
        }
        if let Some(&code) = v.iter().find(|&&c| !base.contains(c)) {
            return Err(GfError::InvalidElement { code, order: base.order() });
        }
        Ok(self.pack_base_digits(v, base))
    }

    fn pack_base_digits(&self, v: &[u32], base: &Field) -> u32 {
        if self == base {
            return v[0];
        }
        let coeff = self.base().expect("degree_over checked the tower");
        let chunk = v.len() / self.degree();
        v.chunks(chunk)
            .rev()
            .fold(0, |acc, digits| acc * coeff.order() + coeff.pack_base_digits(digits, base))
    }
}

impl Inner {
    fn coeff(&self) -> &Field {
        self.base.as_ref().expect("prime fields always carry tables or use modular arithmetic")
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let q = self.coeff().order();
        let mut rest = a;
        (0..self.degree)
            .map(|_| {
                let d = rest % q;
                rest /= q;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        let q = self.coeff().order();
        digits.iter().rev().fold(0, |acc, &d| acc * q + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.base.is_none() {
            return (a + b) % self.p;
        }
        let cf = self.coeff();
        let s: Vec<u32> = self.digits(a).iter().zip(self.digits(b)).map(|(&x, y)| cf.add(x, y)).collect();
        self.pack(&s)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        if self.base.is_none() {
            return (self.p - a % self.p) % self.p;
        }
        let cf = self.coeff();
        let s: Vec<u32> = self.digits(a).iter().map(|&x| cf.neg(x)).collect();
        self.pack(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.base.is_none() {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly::mul_mod(self.coeff(), &self.digits(a), &self.digits(b), &self.modulus);
        self.pack(&prod)
    }

    fn build_tables(&self) -> Option<Tables> {
        let q = self.order;
        if q > TABLE_LIMIT {
            return None;
        }
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = self.add_slow(a, b);
                mul[(a * q + b) as usize] = self.mul_slow(a, b);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap()).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() })
            .collect();
        Some(Tables { add, mul, neg, inv })
    }
}

/// Polynomials over a coefficient field, as little-endian code vectors.
pub(crate) mod poly {
    use super::Field;

    fn trim(p: &mut Vec<u32>) {
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
    }

    pub fn mul_mod(f: &Field, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
        let e = modulus.len() - 1;
        let mut prod = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in modulus.iter().enumerate() {
                prod[i - e + j] = f.sub(prod[i - e + j], f.mul(c, m));
            }
        }
        prod.truncate(e);
        prod.resize(e, 0);
        prod
    }

    /// Remainder of `a` modulo a monic `m`.
    pub fn rem(f: &Field, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    r[shift + j] = f.sub(r[shift + j], f.mul(c, mj));
                }
            }
            r.pop();
        }
        trim(&mut r);
        r
    }

    /// Monic polynomial of degree `d` with low coefficients given by the digits of `idx`.
    fn monic_from_index(q: u64, d: usize, mut idx: u64) -> Vec<u32> {
        let mut g = Vec::with_capacity(d + 1);
        for _ in 0..d {
            g.push((idx % q) as u32);
            idx /= q;
        }
        g.push(1);
        g
    }

    /// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(f: &Field, m: &[u32]) -> bool {
        let e = m.len() - 1;
        if e <= 1 {
            return e == 1;
        }
        let q = f.order() as u64;
        for d in 1..=e / 2 {
            for idx in 0..q.pow(d as u32) {
                let g = monic_from_index(q, d, idx);
                if rem(f, m, &g).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn smallest_irreducible(f: &Field, e: usize) -> Vec<u32> {
        let q = f.order() as u64;
        (0..q.pow(e as u32))
            .map(|idx| {
                // c_0 is the most significant digit of the search index
                let mut m = monic_from_index(q, e, idx);
                m[..e].reverse();
                m
            })
            .find(|m| is_irreducible(f, m))
            .expect("irreducible polynomials exist in every degree")
    }
}

/// An element bundled with its field, for checked arithmetic across field boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    field: Field,
    code: u32,
}

impl Element {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(Element { field: self.field.clone(), code: self.field.add(self.code, other.code) })
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(Element { field: self.field.clone(), code: self.field.mul(self.code, other.code) })
    }

    pub fn inv(&self) -> Result<Element> {
        Ok(Element { field: self.field.clone(), code: self.field.inv(self.code)? })
    }

    pub fn pow(&self, exp: u64) -> Element {
        Element { field: self.field.clone(), code: self.field.pow(self.code, exp) }
    }

    pub fn as_base_vector(&self, base: &Field) -> Result<Vec<u32>> {
        self.field.as_base_vector(self.code, base)
    }
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u32,
    tower: Vec<Vec<u32>>,
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRepr { p: self.0.p, tower: self.0.tower.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldRepr::deserialize(d)?;
        Field::from_tower(repr.p, &repr.tower).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1]), None).unwrap()
    }

    #[test]
    fn constructs_prime_and_quadratic_fields() {
        let f2 = Field::new(2, 1, None, None).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f4().order(), 4);
        assert_eq!(Field::gf(2, 2).unwrap(), f4());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(2, 2, Some(&[1, 0, 1]), None).unwrap_err(), GfError::ReducibleModulus);
        assert_eq!(Field::new(4, 1, None, None).unwrap_err(), GfError::NotPrime(4));
        assert!(matches!(Field::new(2, 3, Some(&[1, 1, 1]), None), Err(GfError::DegreeMismatch { .. })));
        assert_eq!(Field::new(2, 2, Some(&[1, 1, 0]), None).unwrap_err(), GfError::NotMonic);
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(Field::new(2, 2, None, Some(&f3)), Err(GfError::CharacteristicMismatch { .. })));
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.add(0, 3), 3);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(1, 3), 3);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(0).unwrap_err(), GfError::ZeroInverse);
    }

    #[test]
    fn f5_inverse() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let a = f4().element(2).unwrap();
        let b = Field::prime(2).unwrap().element(1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), GfError::FieldMismatch);
        assert_eq!(a.mul(&a).unwrap().code(), 3);
        assert!(f4().element(4).is_err());
    }

    #[test]
    fn default_modulus_is_lexicographically_smallest() {
        // [1,0,1,1] = 1 + x^2 + x^3 precedes [1,1,0,1]
        assert_eq!(Field::gf(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::gf(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::gf(2, 4).unwrap().modulus(), Field::gf(2, 4).unwrap().modulus());
    }

    #[test]
    fn base_vectors_in_f4() {
        let f2 = Field::prime(2).unwrap();
        let f = f4();
        assert_eq!(f.as_base_vector(0, &f2).unwrap(), vec![0, 0]);
        assert_eq!(f.as_base_vector(3, &f2).unwrap(), vec![1, 1]);
        assert_eq!(f.as_base_vector(2, &f2).unwrap(), vec![0, 1]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f.as_base_vector(1, &f3).unwrap_err(), GfError::NotASubfieldInTower);
    }

    #[test]
    fn tower_over_f4() {
        let f = f4();
        let f16 = f.extension(2).unwrap();
        assert_eq!(f16.order(), 16);
        assert_eq!(f16.degree_over(&f).unwrap(), 2);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f16.degree_over(&f2).unwrap(), 4);
        for a in f16.elements() {
            let v = f16.as_base_vector(a, &f2).unwrap();
            assert_eq!(f16.from_base_vector(&v, &f2).unwrap(), a);
            assert_eq!(f16.pow(a, 16), a);
        }
    }

    #[test]
    fn untabled_field_agrees_with_fermat() {
        let f = Field::gf(3, 6).unwrap();
        assert_eq!(f.order(), 729);
        for a in [1u32, 2, 5, 100, 728] {
            assert_eq!(f.pow(a, 728), 1);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn json_round_trip() {
        let f16 = f4().extension(2).unwrap();
        let s = serde_json::to_string(&f16).unwrap();
        assert!(s.starts_with("{\"p\":2,\"tower\":[[1,1,1],"));
        let back: Field = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f16);
        assert_eq!(serde_json::to_string(&Field::prime(2).unwrap()).unwrap(), r#"{"p":2,"tower":[[0,1]]}"#);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
