//! Exact arithmetic in the cyclotomic integers `Z[zeta]`, `zeta` a primitive
//! `p^e`-th root of unity.
//!
//! Values are stored in the power basis `1, zeta, ..., zeta^(d-1)` with
//! `d = p^(e-1) (p-1)`, fully reduced modulo the cyclotomic polynomial
//! `Phi_{p^e}(x) = sum_{k<p} x^(k p^(e-1))`. The representation is canonical, so
//! value equality is coefficient-vector equality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::util::is_prime;

/// The field `Q(zeta_{p^e})`, identified by its prime-power order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycField {
    p: u64,
    e: u32,
}

impl CycField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidRing("cyclotomic exponent must be >= 1".into()));
        }
        p.checked_pow(e)
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| Error::InvalidRing(format!("root order {p}^{e} is too large")))?;
        Ok(CycField { p, e })
    }

    /// `Z` itself, viewed as `Z[zeta_2]`.
    pub fn rational() -> Self {
        CycField { p: 2, e: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Order `p^e` of the root of unity.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Degree `p^(e-1) (p-1)` of `Phi_{p^e}`.
    pub fn degree(&self) -> usize {
        (self.p.pow(self.e - 1) * (self.p - 1)) as usize
    }

    /// Smallest field containing both, when the primes agree.
    pub fn join(self, other: CycField) -> Result<CycField> {
        if self.degree() == 1 {
            return Ok(other);
        }
        if other.degree() == 1 {
            return Ok(self);
        }
        if self.p != other.p {
            return Err(Error::NoCommonField(self.order(), other.order()));
        }
        Ok(CycField { p: self.p, e: self.e.max(other.e) })
    }

    /// Whether `self` embeds into `target`.
    pub fn embeds_into(&self, target: &CycField) -> bool {
        self.degree() == 1 || (self.p == target.p && self.e <= target.e)
    }

    /// Reduces a power-basis vector of arbitrary length modulo `Phi_{p^e}`.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        let stride = self.p.pow(self.e - 1) as usize;
        for j in (d..v.len()).rev() {
            if v[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[j]);
            // x^d = -(1 + x^stride + ... + x^((p-2) stride))
            for k in 0..(self.p as usize - 1) {
                v[j - d + k * stride] -= &c;
            }
        }
        v.truncate(d);
        v.resize(d, BigInt::zero());
        v
    }
}

impl fmt::Display for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[zeta_{}]", self.order())
    }
}

/// Arithmetic operation selector for [`CyclotomicInt::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An element of `Z[zeta_{p^e}]` in canonical power-basis form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    field: CycField,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(field: CycField) -> Self {
        CyclotomicInt { field, coeffs: vec![BigInt::zero(); field.degree()] }
    }

    pub fn one(field: CycField) -> Self {
        Self::from_integer(field, BigInt::one())
    }

    pub fn from_integer(field: CycField, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = n.into();
        z
    }

    /// Builds a value from power-basis coefficients of any length, reducing them.
    pub fn from_coeffs(field: CycField, coeffs: Vec<BigInt>) -> Self {
        CyclotomicInt { field, coeffs: field.reduce(coeffs) }
    }

    /// `zeta^k`, with `k` taken modulo `p^e`.
    pub fn root_power(field: CycField, k: i64) -> Self {
        let n = field.order() as i64;
        let k = k.rem_euclid(n) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        Self::from_coeffs(field, v)
    }

    pub fn field(&self) -> CycField {
        self.field
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value in a larger field of the same characteristic.
    pub fn embed(&self, target: CycField) -> Result<Self> {
        if self.field == target {
            return Ok(self.clone());
        }
        if let Some(n) = self.as_integer() {
            return Ok(Self::from_integer(target, n.clone()));
        }
        if !self.field.embeds_into(&target) {
            return Err(Error::FieldMismatch { left: self.field.order(), right: target.order() });
        }
        // zeta_{p^e} = zeta_{p^E}^(p^(E-e))
        let step = (target.order() / self.field.order()) as usize;
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(target, v))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        Ok(())
    }

    /// Checked `a op b`.
    pub fn apply(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        a.check_field(b)?;
        Ok(match op {
            ArithOp::Add => a.add_unchecked(b),
            ArithOp::Sub => {
                let mut r = a.clone();
                for (x, y) in r.coeffs.iter_mut().zip(&b.coeffs) {
                    *x -= y;
                }
                r
            }
            ArithOp::Mul => a.mul_unchecked(b),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Self::apply(ArithOp::Add, self, other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Self::apply(ArithOp::Sub, self, other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::apply(ArithOp::Mul, self, other)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign_ref(other);
        r
    }

    /// In-place `self += other`. Panics on field mismatch.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.field, other.field, "cyclotomic field mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree();
        if d == 1 {
            return CyclotomicInt { field: self.field, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut v = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CyclotomicInt { field: self.field, coeffs: self.field.reduce(v) }
    }

    /// Product with a rational integer.
    pub fn scale(&self, n: &BigInt) -> Self {
        CyclotomicInt { field: self.field, coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Exact division by a rational integer; fails unless every coefficient divides.
    pub fn div_exact(&self, n: &BigInt) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if n.is_zero() || !(c % n).is_zero() {
                return Err(Error::NotDivisible { coeff: self.to_string(), divisor: n.to_string() });
            }
            coeffs.push(c / n);
        }
        Ok(CyclotomicInt { field: self.field, coeffs })
    }

    /// `sum_k counts[k] zeta^k` for a histogram of root exponents.
    pub fn from_root_histogram(field: CycField, counts: &[i64]) -> Self {
        let v = counts.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_coeffs(field, v)
    }
}

impl std::ops::Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: Self) -> CyclotomicInt {
        self.checked_add(rhs).expect("cyclotomic field mismatch")
    }
}

impl std::ops::Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: Self) -> CyclotomicInt {
        self.checked_sub(rhs).expect("cyclotomic field mismatch")
    }
}

impl std::ops::Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: Self) -> CyclotomicInt {
        self.checked_mul(rhs).expect("cyclotomic field mismatch")
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("z")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Small-integer view used by tests and diagnostics.
pub fn small_coeffs(a: &CyclotomicInt) -> Option<Vec<i64>> {
    a.coeffs.iter().map(|c| c.to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: u32) -> CycField {
        CycField::new(p, e).unwrap()
    }

    fn v(field: CycField, c: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_coeffs(field, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn root_powers() {
        assert_eq!(small_coeffs(&CyclotomicInt::root_power(f(2, 1), 0)).unwrap(), vec![1]);
        assert_eq!(small_coeffs(&CyclotomicInt::root_power(f(2, 1), 1)).unwrap(), vec![-1]);
        assert_eq!(small_coeffs(&CyclotomicInt::root_power(f(2, 2), 2)).unwrap(), vec![-1, 0]);
        assert_eq!(small_coeffs(&CyclotomicInt::root_power(f(3, 1), 2)).unwrap(), vec![-1, -1]);
        assert_eq!(CyclotomicInt::root_power(f(2, 2), -1), CyclotomicInt::root_power(f(2, 2), 3));
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = f(2, 2);
        let i = v(f4, &[0, 1]);
        assert_eq!(small_coeffs(&(&i * &i)).unwrap(), vec![-1, 0]);
        let f3 = f(3, 1);
        assert_eq!(small_coeffs(&(&v(f3, &[0, 1]) + &v(f3, &[-1, -1]))).unwrap(), vec![-1, 0]);
        let f2 = f(2, 1);
        assert!((&v(f2, &[1]) - &v(f2, &[1])).is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CyclotomicInt::one(f(2, 1));
        let b = CyclotomicInt::one(f(3, 1));
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn as_integer() {
        let f4 = f(2, 2);
        assert_eq!(v(f4, &[5, 0]).as_integer(), Some(&BigInt::from(5)));
        assert_eq!(v(f4, &[0, 1]).as_integer(), None);
        let mut s = CyclotomicInt::zero(f4);
        for k in 0..4 {
            s.add_assign_ref(&CyclotomicInt::root_power(f4, k));
        }
        assert_eq!(s.as_integer(), Some(&BigInt::zero()));
    }

    #[test]
    fn full_root_sums_vanish() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let field = f(p, e);
            let mut s = CyclotomicInt::zero(field);
            for k in 0..field.order() as i64 {
                s.add_assign_ref(&CyclotomicInt::root_power(field, k));
            }
            assert!(s.is_zero(), "{field}");
        }
    }

    #[test]
    fn root_powers_multiply() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
            let field = f(p, e);
            let n = field.order() as i64;
            for j in 0..n {
                for k in 0..n {
                    let lhs = &CyclotomicInt::root_power(field, j) * &CyclotomicInt::root_power(field, k);
                    assert_eq!(lhs, CyclotomicInt::root_power(field, j + k));
                }
            }
        }
    }

    #[test]
    fn embedding_preserves_roots() {
        let small = f(2, 1);
        let big = f(2, 3);
        let z = CyclotomicInt::root_power(small, 1).embed(big).unwrap();
        assert_eq!(z, CyclotomicInt::root_power(big, 4));
        let z4 = CyclotomicInt::root_power(f(2, 2), 3).embed(big).unwrap();
        assert_eq!(z4, CyclotomicInt::root_power(big, 6));
        assert!(CyclotomicInt::root_power(f(3, 1), 1).embed(big).is_err());
    }

    #[test]
    fn display() {
        let f4 = f(2, 2);
        assert_eq!(v(f4, &[0, 0]).to_string(), "0");
        assert_eq!(v(f4, &[3, -1]).to_string(), "3 - z");
        assert_eq!(v(f(3, 2), &[0, 2, 0, 0, 0, 1]).to_string(), "2*z + z^5");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = CycField> {
            prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
                .prop_map(|(p, e)| CycField::new(p, e).unwrap())
        }

        fn triple() -> impl Strategy<Value = (CyclotomicInt, CyclotomicInt, CyclotomicInt)> {
            field().prop_flat_map(|fld| {
                let d = fld.degree();
                let el = prop::collection::vec(-20i64..20, d)
                    .prop_map(move |c| CyclotomicInt::from_coeffs(fld, c.into_iter().map(BigInt::from).collect()));
                (el.clone(), el.clone(), el)
            })
        }

        proptest! {
            #[test]
            fn ring_axioms((a, b, c) in triple()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a - &b) + &b, a);
            }
        }
    }
}
