//! Exact scalars: rationals, prime fields and cyclotomic extensions of the rationals.
//!
//! A bare rational acts as a universal constant: combining it with a prime-field or
//! cyclotomic element embeds it into that field first. Combining two different
//! non-rational fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use dashu_int::IBig;
use dashu_ratio::RBig;
use serde::{Serialize, Serializer};

use super::ExactError;

/// `Q(zeta_n)`, stored as `Q[x]` modulo the n-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    /// Monic modulus, coefficients from low to high degree.
    modulus: Vec<RBig>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::InvalidField("cyclotomic order must be positive".into()));
        }
        Ok(Self { order, modulus: cyclotomic_polynomial(order) })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Extension degree, `phi(n)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut poly: Vec<RBig>) -> Vec<RBig> {
        let deg = self.degree();
        while poly.len() > deg {
            let lead = poly.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (k, m) in self.modulus[..deg].iter().enumerate() {
                if !m.is_zero() {
                    poly[shift + k] -= &lead * m;
                }
            }
        }
        poly.resize(deg, RBig::ZERO);
        poly
    }
}

fn poly_trim(p: &mut Vec<RBig>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder of polynomial division; `den` must be nonzero after trimming.
fn poly_divrem(num: &[RBig], den: &[RBig]) -> (Vec<RBig>, Vec<RBig>) {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dl = den.len();
    let lead_inv = RBig::ONE / den[dl - 1].clone();
    if rem.len() < dl {
        return (Vec::new(), rem);
    }
    let mut quot = vec![RBig::ZERO; rem.len() - dl + 1];
    while rem.len() >= dl {
        let shift = rem.len() - dl;
        let c = rem[rem.len() - 1].clone() * &lead_inv;
        for (k, d) in den.iter().enumerate() {
            rem[shift + k] -= &c * d;
        }
        quot[shift] = c;
        rem.pop();
        poly_trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[RBig], b: &[RBig]) -> Vec<RBig> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RBig::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[RBig], b: &[RBig]) -> Vec<RBig> {
    let n = a.len().max(b.len());
    let mut out: Vec<RBig> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or(RBig::ZERO);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    poly_trim(&mut out);
    out
}

fn cyclotomic_polynomial(n: u32) -> Vec<RBig> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p = vec![RBig::ZERO; n as usize + 1];
    p[0] = RBig::NEG_ONE;
    p[n as usize] = RBig::ONE;
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divrem(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// A field descriptor used to create constants.
#[derive(Clone, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
    Cyclotomic(Arc<CyclotomicField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rational, Field::Rational) => true,
            (Field::Prime(p), Field::Prime(q)) => p == q,
            (Field::Cyclotomic(a), Field::Cyclotomic(b)) => a.order == b.order,
            _ => false,
        }
    }
}

impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, ExactError> {
        // products are reduced through u128, so any u32-sized prime is safe
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(ExactError::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn cyclotomic(order: u32) -> Result<Self, ExactError> {
        Ok(Field::Cyclotomic(Arc::new(CyclotomicField::new(order)?)))
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(RBig::ZERO).expect("zero embeds in every field")
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(RBig::ONE).expect("one embeds in every field")
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(RBig::from(n)).expect("integers embed in every field")
    }

    /// Embeds a rational; fails in characteristic p when the denominator vanishes.
    pub fn from_rational(&self, q: RBig) -> Result<Scalar, ExactError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q)),
            Field::Prime(p) => rational_mod_p(&q, *p)
                .map(|value| Scalar::Prime { value, modulus: *p })
                .ok_or_else(|| ExactError::NotInvertible(format!("{q} modulo {p}"))),
            Field::Cyclotomic(f) => {
                let mut coeffs = vec![RBig::ZERO; f.degree()];
                coeffs[0] = q;
                Ok(Scalar::Cyclotomic { field: f.clone(), coeffs })
            }
        }
    }

    /// Builds a cyclotomic element from its coefficients on `1, zeta, zeta^2, ...`.
    pub fn from_coefficients(&self, coeffs: Vec<RBig>) -> Result<Scalar, ExactError> {
        match self {
            Field::Cyclotomic(f) => Ok(Scalar::Cyclotomic { field: f.clone(), coeffs: f.reduce(coeffs) }),
            _ if coeffs.len() <= 1 => self.from_rational(coeffs.into_iter().next().unwrap_or(RBig::ZERO)),
            _ => Err(ExactError::InvalidField("coefficient arrays need a cyclotomic field".into())),
        }
    }

    /// A primitive n-th root of unity.
    pub fn zeta(&self) -> Option<Scalar> {
        match self {
            Field::Cyclotomic(f) => {
                let mut c = vec![RBig::ZERO; f.degree() + 1];
                c[1] = RBig::ONE;
                Some(Scalar::Cyclotomic { field: f.clone(), coeffs: f.reduce(c) })
            }
            _ => None,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Prime { modulus, .. }) => p == modulus,
            (Field::Cyclotomic(f), Scalar::Cyclotomic { field, .. }) => f.order == field.order,
            _ => false,
        }
    }

    pub fn embed(&self, s: &Scalar) -> Result<Scalar, ExactError> {
        match s {
            Scalar::Rational(q) => self.from_rational(q.clone()),
            _ if self.contains(s) => Ok(s.clone()),
            _ => Err(ExactError::InvalidField(format!("{s} does not belong to {self}"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime {p}"),
            Field::Cyclotomic(c) => write!(f, "cyclotomic {}", c.order),
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn ibig_mod_p(n: &IBig, p: u64) -> u64 {
    let r = n % IBig::from(p);
    let r = if r < IBig::ZERO { r + IBig::from(p) } else { r };
    u64::try_from(r).expect("residue fits in u64")
}

fn rational_mod_p(q: &RBig, p: u64) -> Option<u64> {
    let num = ibig_mod_p(q.numerator(), p);
    let den = ibig_mod_p(&IBig::from(q.denominator().clone()), p);
    if den == 0 {
        return None;
    }
    Some(((num as u128 * mod_pow(den, p - 2, p) as u128) % p as u128) as u64)
}

/// An exact element of the coefficient field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(RBig),
    Prime { value: u64, modulus: u64 },
    Cyclotomic { field: Arc<CyclotomicField>, coeffs: Vec<RBig> },
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rational(RBig::from(n))
    }
}

impl From<RBig> for Scalar {
    fn from(q: RBig) -> Self {
        Scalar::Rational(q)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(RBig::ZERO)
    }

    pub fn one() -> Self {
        Scalar::Rational(RBig::ONE)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(RBig::from_parts_signed(IBig::from(num), IBig::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Cyclotomic { coeffs, .. } => {
                coeffs[0].is_one() && coeffs[1..].iter().all(|c| c.is_zero())
            }
        }
    }

    pub fn as_rational(&self) -> Option<&RBig> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The field this scalar lives in (bare rationals report `Field::Rational`).
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
            Scalar::Cyclotomic { field, .. } => Field::Cyclotomic(field.clone()),
        }
    }

    fn coerce<'a>(&'a self, other: &Scalar) -> std::borrow::Cow<'a, Scalar> {
        use std::borrow::Cow;
        match (self, other) {
            (Scalar::Rational(q), Scalar::Prime { modulus, .. }) => Cow::Owned(
                Field::Prime(*modulus)
                    .from_rational(q.clone())
                    .unwrap_or_else(|e| panic!("{e}")),
            ),
            (Scalar::Rational(q), Scalar::Cyclotomic { field, .. }) => {
                let mut coeffs = vec![RBig::ZERO; field.degree()];
                coeffs[0] = q.clone();
                Cow::Owned(Scalar::Cyclotomic { field: field.clone(), coeffs })
            }
            _ => Cow::Borrowed(self),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(RBig::ONE / q.clone()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Scalar::Cyclotomic { field, coeffs } => {
                // extended Euclid: u * a + v * m = g, g a nonzero constant
                let (mut r0, mut r1) = (field.modulus.clone(), coeffs.clone());
                poly_trim(&mut r1);
                let (mut u0, mut u1) = (Vec::<RBig>::new(), vec![RBig::ONE]);
                while r1.len() > 1 {
                    let (q, r) = poly_divrem(&r0, &r1);
                    let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
                    r0 = std::mem::replace(&mut r1, r);
                    u0 = std::mem::replace(&mut u1, u2);
                }
                let g_inv = RBig::ONE / r1[0].clone();
                let u: Vec<RBig> = u1.into_iter().map(|c| c * &g_inv).collect();
                Scalar::Cyclotomic { field: field.clone(), coeffs: field.reduce(u) }
            }
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let a = self.coerce(other);
        let b = other.coerce(self);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            (Scalar::Prime { value: x, modulus: p }, Scalar::Prime { value: y, modulus: q }) => {
                p == q && x == y
            }
            (
                Scalar::Cyclotomic { field: f, coeffs: x },
                Scalar::Cyclotomic { field: g, coeffs: y },
            ) => f.order == g.order && x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("arithmetic between different fields: {} and {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let a = self.coerce(rhs);
        let b = rhs.coerce(self);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Prime { value: x, modulus: p }, Scalar::Prime { value: y, modulus: q })
                if p == q =>
            {
                Scalar::Prime { value: ((*x as u128 + *y as u128) % *p as u128) as u64, modulus: *p }
            }
            (
                Scalar::Cyclotomic { field, coeffs: x },
                Scalar::Cyclotomic { field: g, coeffs: y },
            ) if field.order == g.order => Scalar::Cyclotomic {
                field: field.clone(),
                coeffs: x.iter().zip(y).map(|(s, t)| s + t).collect(),
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let a = self.coerce(rhs);
        let b = rhs.coerce(self);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Prime { value: x, modulus: p }, Scalar::Prime { value: y, modulus: q })
                if p == q =>
            {
                Scalar::Prime { value: ((*x as u128 * *y as u128) % *p as u128) as u64, modulus: *p }
            }
            (
                Scalar::Cyclotomic { field, coeffs: x },
                Scalar::Cyclotomic { field: g, coeffs: y },
            ) if field.order == g.order => Scalar::Cyclotomic {
                field: field.clone(),
                coeffs: field.reduce(poly_mul(x, y)),
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q.clone()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Cyclotomic { field, coeffs } => Scalar::Cyclotomic {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| -c.clone()).collect(),
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (&mut *self, rhs) {
            *x += y;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (&mut *self, rhs) {
            *x -= y;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Cyclotomic { coeffs, .. } => {
                write!(f, "[")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Cyclotomic { coeffs, .. } => {
                s.collect_seq(coeffs.iter().map(|c| c.to_string()))
            }
            _ => s.serialize_str(&self.to_string()),
        }
    }
}
