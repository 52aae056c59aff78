//! Galois rings `GR(p^e, t) = Z_{p^e}[xi] / (h(xi))` and their additive character.
//!
//! Elements are numbered by the base-`p^e` digits of their coefficient vector
//! `(gamma_0, ..., gamma_{t-1})`, least significant digit first. Index 0 is the
//! zero element. This numbering is the wire format for elements everywhere in
//! the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycField, CyclotomicInt};
use crate::error::{Error, Result};
use crate::util::is_prime;

/// Element index within a ring.
pub type Elem = u32;

const MAX_CARDINALITY: u64 = 1 << 16;
const TABLE_CARDINALITY: u64 = 256;

/// Serialized ring description, as it appears in code files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub e: u32,
    pub t: usize,
    pub modulus: Vec<u64>,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    e: u32,
    t: usize,
    modulus: Vec<u64>,
    char_order: u64,
    cardinality: u64,
    add: Option<Vec<Elem>>,
    mul: Option<Vec<Elem>>,
}

/// A validated Galois ring. Cheap to clone.
#[derive(Debug, Clone)]
pub struct GaloisRing(Arc<Inner>);

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisRing {}

impl std::hash::Hash for GaloisRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl GaloisRing {
    /// Validates and builds `GR(p^e, t)` with the given monic modulus
    /// (coefficients listed from the constant term up).
    pub fn new(p: u64, e: u32, t: usize, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || t == 0 {
            return Err(Error::InvalidRing(format!("need e >= 1 and t >= 1, got e={e}, t={t}")));
        }
        let char_order = p
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidRing(format!("characteristic {p}^{e} overflows")))?;
        let cardinality = u32::try_from(t)
            .ok()
            .and_then(|t| char_order.checked_pow(t))
            .filter(|&c| c <= MAX_CARDINALITY)
            .ok_or_else(|| Error::InvalidRing(format!("ring of size {char_order}^{t} exceeds {MAX_CARDINALITY}")))?;
        // cardinalities fit the cyclotomic root bound as well
        CycField::new(p, e)?;
        if modulus.len() != t + 1 || modulus[t] != 1 || modulus.iter().any(|&c| c >= char_order) {
            return Err(Error::ModulusNotMonic(t));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !irreducible_mod_p(&reduced, p) {
            return Err(Error::ModulusReducible(p));
        }
        let mut inner = Inner { p, e, t, modulus, char_order, cardinality, add: None, mul: None };
        if cardinality <= TABLE_CARDINALITY {
            let n = cardinality as usize;
            let mut add = Vec::with_capacity(n * n);
            let mut mul = Vec::with_capacity(n * n);
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    add.push(inner.add_digits(a, b));
                    mul.push(inner.mul_digits(a, b));
                }
            }
            inner.add = Some(add);
            inner.mul = Some(mul);
        }
        Ok(GaloisRing(Arc::new(inner)))
    }

    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        Self::new(spec.p, spec.e, spec.t, spec.modulus.clone())
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec { p: self.0.p, e: self.0.e, t: self.0.t, modulus: self.0.modulus.clone() }
    }

    /// Built-in rings: `F2 F3 F4 F5 F7 F8 F9 Z4 Z8 Z9 GR4_2`.
    pub fn named(name: &str) -> Result<Self> {
        let (p, e, t, m): (u64, u32, usize, &[u64]) = match name.to_ascii_uppercase().as_str() {
            "F2" => (2, 1, 1, &[0, 1]),
            "F3" => (3, 1, 1, &[0, 1]),
            "F5" => (5, 1, 1, &[0, 1]),
            "F7" => (7, 1, 1, &[0, 1]),
            "F4" => (2, 1, 2, &[1, 1, 1]),
            "F8" => (2, 1, 3, &[1, 1, 0, 1]),
            "F9" => (3, 1, 2, &[1, 0, 1]),
            "Z4" => (2, 2, 1, &[0, 1]),
            "Z8" => (2, 3, 1, &[0, 1]),
            "Z9" => (3, 2, 1, &[0, 1]),
            "GR4_2" | "GR(4,2)" => (2, 2, 2, &[1, 1, 1]),
            _ => return Err(Error::Invalid(format!("unknown ring name {name:?}"))),
        };
        Self::new(p, e, t, m.to_vec())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn t(&self) -> usize {
        self.0.t
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `p^e`.
    pub fn characteristic(&self) -> u64 {
        self.0.char_order
    }

    /// `p^(e t)`.
    pub fn cardinality(&self) -> u64 {
        self.0.cardinality
    }

    /// Largest element index, `p^(e t) - 1`.
    pub fn s(&self) -> u64 {
        self.0.cardinality - 1
    }

    pub fn is_field(&self) -> bool {
        self.0.e == 1
    }

    /// The field holding this ring's character values.
    pub fn char_field(&self) -> CycField {
        CycField::new(self.0.p, self.0.e).expect("validated at construction")
    }

    pub fn element_from_index(&self, i: u64) -> Result<RingElement> {
        self.check_index(i)?;
        Ok(RingElement { ring: self.clone(), gamma: self.0.digits(i as Elem) })
    }

    pub fn element(&self, gamma: &[u64]) -> Result<RingElement> {
        if gamma.len() != self.0.t {
            return Err(Error::LengthMismatch { expected: self.0.t, found: gamma.len() });
        }
        Ok(RingElement { ring: self.clone(), gamma: gamma.iter().map(|g| g % self.0.char_order).collect() })
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.0.cardinality).map(move |i| RingElement { ring: self.clone(), gamma: self.0.digits(i as Elem) })
    }

    pub(crate) fn check_index(&self, i: u64) -> Result<()> {
        if i >= self.0.cardinality {
            return Err(Error::IndexOutOfRange { index: i, cardinality: self.0.cardinality });
        }
        Ok(())
    }

    /// Index-level addition.
    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.add {
            Some(t) => t[a as usize * self.0.cardinality as usize + b as usize],
            None => self.0.add_digits(a, b),
        }
    }

    /// Index-level multiplication.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.mul {
            Some(t) => t[a as usize * self.0.cardinality as usize + b as usize],
            None => self.0.mul_digits(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let q = self.0.char_order;
        let g: Vec<u64> = self.0.digits(a).into_iter().map(|x| (q - x) % q).collect();
        self.0.index_of(&g)
    }

    /// `gamma_0` of an element, i.e. its exponent under `chi`.
    #[inline]
    pub fn gamma0(&self, a: Elem) -> u64 {
        a as u64 % self.0.char_order
    }

    /// `chi(a) = zeta^(gamma_0)` in `Z[zeta_{p^e}]`.
    pub fn chi(&self, a: &RingElement) -> Result<CyclotomicInt> {
        self.check_same(&a.ring)?;
        Ok(CyclotomicInt::root_power(self.char_field(), a.gamma[0] as i64))
    }

    /// `chi` at an element index, expressed in the (possibly larger) field `target`.
    pub fn chi_in(&self, a: Elem, target: CycField) -> Result<CyclotomicInt> {
        let own = self.char_field();
        if !own.embeds_into(&target) {
            return Err(Error::FieldMismatch { left: own.order(), right: target.order() });
        }
        Ok(CyclotomicInt::root_power(target, self.chi_exponent(a, target) as i64))
    }

    /// Exponent `k` with `chi(a) = zeta_target^k`.
    #[inline]
    pub(crate) fn chi_exponent(&self, a: Elem, target: CycField) -> u64 {
        self.gamma0(a) * (target.order() / self.0.char_order)
    }

    pub(crate) fn check_same(&self, other: &GaloisRing) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }

    /// Multiplicative inverse, when it exists.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        (0..self.0.cardinality as Elem).find(|&b| self.mul(a, b) == 1)
    }
}

impl Inner {
    fn digits(&self, mut i: Elem) -> Vec<u64> {
        let mut g = Vec::with_capacity(self.t);
        for _ in 0..self.t {
            g.push(i as u64 % self.char_order);
            i /= self.char_order as Elem;
        }
        g
    }

    fn index_of(&self, gamma: &[u64]) -> Elem {
        gamma.iter().rev().fold(0u64, |acc, &g| acc * self.char_order + g) as Elem
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let q = self.char_order;
        let g: Vec<u64> = self.digits(a).iter().zip(self.digits(b)).map(|(x, y)| (x + y) % q).collect();
        self.index_of(&g)
    }

    fn mul_digits(&self, a: Elem, b: Elem) -> Elem {
        let q = self.char_order;
        let (x, y) = (self.digits(a), self.digits(b));
        let t = self.t;
        let mut prod = vec![0u64; 2 * t - 1];
        for i in 0..t {
            for j in 0..t {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % q;
            }
        }
        // xi^t = -(h_0 + h_1 xi + ... + h_{t-1} xi^(t-1))
        for k in (t..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..t {
                let sub = c * self.modulus[i] % q;
                prod[k - t + i] = (prod[k - t + i] + q - sub) % q;
            }
        }
        prod.truncate(t);
        self.index_of(&prod)
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.0;
        match (i.e, i.t) {
            (1, _) => write!(f, "F_{}", i.cardinality),
            (_, 1) => write!(f, "Z_{}", i.char_order),
            _ => write!(f, "GR({},{})", i.char_order, i.t),
        }
    }
}

/// A ring element with its coefficient vector `(gamma_0, ..., gamma_{t-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: GaloisRing,
    gamma: Vec<u64>,
}

/// Arithmetic selector for [`RingElement::apply`].
pub use crate::cyclotomic::ArithOp;

impl RingElement {
    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn index(&self) -> Elem {
        self.ring.0.index_of(&self.gamma)
    }

    pub fn apply(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        a.ring.check_same(&b.ring)?;
        let r = &a.ring;
        let (x, y) = (a.index(), b.index());
        let i = match op {
            ArithOp::Add => r.add(x, y),
            ArithOp::Sub => r.add(x, r.neg(y)),
            ArithOp::Mul => r.mul(x, y),
        };
        Ok(RingElement { ring: r.clone(), gamma: r.0.digits(i) })
    }

    pub fn chi(&self) -> CyclotomicInt {
        CyclotomicInt::root_power(self.ring.char_field(), self.gamma[0] as i64)
    }
}

/// Trial division of a monic polynomial over `F_p` by every monic polynomial
/// of degree `1..=deg/2`.
fn irreducible_mod_p(h: &[u64], p: u64) -> bool {
    let deg = h.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for lower in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = lower;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem_mod_p(h, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_mod_p(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k] % p;
        if c == 0 {
            continue;
        }
        for i in 0..=dg {
            r[k - dg + i] = (r[k - dg + i] + p * p - c * g[i] % p) % p;
        }
    }
    r.truncate(dg);
    r
}
