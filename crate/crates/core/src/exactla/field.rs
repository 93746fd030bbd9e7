//! Exact scalar fields: prime fields `F_p` and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{GeomError, Result};

/// A field with exact arithmetic. Elements are stored in canonical form so
/// that structural equality is field equality.
pub trait Field: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Characteristic; 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn to_json(&self) -> Value;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Whether the integer `n` is a unit of the field.
    fn integer_is_unit(&self, n: u64) -> bool {
        let c = self.characteristic();
        n != 0 && (c == 0 || n % c != 0)
    }

    /// Fails unless `1, ..., m` are all units.
    fn require_units_up_to(&self, m: u64) -> Result<()> {
        for n in 1..=m {
            if !self.integer_is_unit(n) {
                return Err(GeomError::NotInvertible { value: n, characteristic: self.characteristic() });
            }
        }
        Ok(())
    }

    /// `1/n` for a unit integer `n`.
    fn inv_integer(&self, n: i64) -> Result<Self::Elem> {
        self.inv(&self.from_i64(n)).ok_or(GeomError::NotInvertible {
            value: n.unsigned_abs(),
            characteristic: self.characteristic(),
        })
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p > 65521 || !is_prime(p) {
            return Err(GeomError::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.p as u64
    }

    /// All elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(t.rem_euclid(self.p as i64) as u32)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn to_json(&self) -> Value {
        json!({"kind": "prime", "p": self.p})
    }
    fn elem_to_json(&self, a: &u32) -> Value {
        json!(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        let n = v.as_i64().ok_or_else(|| GeomError::Json(format!("expected integer, got {v}")))?;
        Ok(self.from_i64(n))
    }
}

/// The rationals with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

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
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_json(&self) -> Value {
        json!({"kind": "rational"})
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(format_rational(a))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| GeomError::Json(format!("expected integer, got {n}"))),
            other => Err(GeomError::Json(format!("expected rational, got {other}"))),
        }
    }
}

/// Formats as `a/b` with `b > 0` (always written, including `b = 1`).
pub fn format_rational(a: &BigRational) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

/// Parses `a/b` or a bare integer `a`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || GeomError::Json(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(n, d);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

/// Parses a field descriptor: a prime `p` or `rat`.
pub fn parse_field_descriptor(s: &str) -> Result<FieldChoice> {
    match s.trim() {
        "rat" | "Q" | "rational" => Ok(FieldChoice::Rational),
        t => {
            let p: u32 = t.parse().map_err(|_| GeomError::InvalidField(format!("{t:?}")))?;
            Ok(FieldChoice::Prime(PrimeField::new(p)?))
        }
    }
}

/// Runtime choice of field, for front ends that dispatch on user input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(PrimeField),
    Rational,
}

/// Decodes `{"kind":"prime","p":5}` or `{"kind":"rational"}`.
pub fn field_from_json(v: &Value) -> Result<FieldChoice> {
    match v.get("kind").and_then(Value::as_str) {
        Some("prime") => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| GeomError::Json("prime field without p".into()))?;
            Ok(FieldChoice::Prime(PrimeField::new(p as u32)?))
        }
        Some("rational") => Ok(FieldChoice::Rational),
        _ => Err(GeomError::Json(format!("bad field {v}"))),
    }
}
