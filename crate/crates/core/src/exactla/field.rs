use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Runtime description of a coefficient field, as read from input files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if is_prime(p) && p < (1 << 31) {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("{p} is not a supported prime")))
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Elements are plain values; the field carries any
/// runtime data (the prime) needed to combine them.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    /// Number of elements, or `None` for an infinite field.
    fn order(&self) -> Option<u64>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Roots lying in the field of a polynomial given low degree first.
    fn poly_roots(&self, p: &[Self::Elem]) -> Vec<Self::Elem> {
        match self.elements() {
            Some(es) => es
                .into_iter()
                .filter(|x| self.is_zero(&crate::poly::eval(self, p, x)))
                .collect(),
            None => Vec::new(),
        }
    }

    /// All elements in a fixed order (0, 1, ..., p-1) for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let q = self.order()?;
        Some((0..q as i64).map(|v| self.from_i64(v)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn poly_roots(&self, p: &[BigRational]) -> Vec<BigRational> {
        crate::poly::rational_roots(p)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

/// The prime field F_p with elements stored as canonical residues 0..p-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::PrimeField(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut e = self.p - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = self.parse(n)?;
            let d = self.parse(d)?;
            return self.div(&n, &d);
        }
        let v: BigInt = s.parse().ok()?;
        let r = ((v % BigInt::from(self.p)) + BigInt::from(self.p)) % BigInt::from(self.p);
        r.abs().to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_roundtrip() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn parses_fractions() {
        let q = Rationals;
        assert_eq!(
            q.parse("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("-1"), Some(4));
        assert_eq!(f.parse("1/2"), Some(3));
        assert_eq!(q.format(&q.parse("4/2").unwrap()), "2");
    }
}
