//! Exact arithmetic in Q(√d) for a square-free positive integer d.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `a + b√d`. A value with `b = 0` is rational and combines with any field.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: i64,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        QuadExt { a, b, d }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadExt { a, b: BigRational::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n, 1))
    }

    pub fn frac(n: i64, m: i64) -> Self {
        Self::rational(rat(n, m))
    }

    /// `(an/ad) + (bn/bd)√d`
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64, d: i64) -> Self {
        QuadExt { a: rat(an, ad), b: rat(bn, bd), d }
    }

    /// √d itself.
    pub fn sqrt(d: i64) -> Self {
        QuadExt { a: BigRational::zero(), b: BigRational::one(), d }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn field(&self) -> Option<i64> {
        if self.b.is_zero() || self.d == 0 {
            None
        } else {
            Some(self.d)
        }
    }

    /// Stored radicand, kept even when `b = 0` so rational constants remember their context.
    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn with_field(mut self, d: i64) -> Self {
        if self.b.is_zero() {
            self.d = d;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when both operands can live in one field.
    pub fn compatible(&self, other: &QuadExt) -> bool {
        match (self.field(), other.field()) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        }
    }

    fn joint_d(&self, other: &QuadExt) -> i64 {
        match (self.field(), other.field()) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic fields Q(√{x}) and Q(√{y})");
                x
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => self.d.max(other.d),
        }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a² − d b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn recip(&self) -> QuadExt {
        assert!(!self.is_zero(), "division by zero in Q(√d)");
        let n = self.norm();
        QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d }
    }

    /// Exact sign, decided by rational comparisons only.
    pub fn signum(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 || self.d == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² against d b²
        let lhs = &self.a * &self.a;
        let rhs = BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QuadExt {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Decimal approximation for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Is the square of this value rational?
    pub fn square_is_rational(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        let mut out = QuadExt::one().with_field(self.d);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !self.compatible(other) {
            return None;
        }
        Some((self - other).signum().cmp(&0))
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        let d = self.joint_d(o);
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        let d = self.joint_d(o);
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b, d }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let d = self.joint_d(o);
        let dd = BigRational::from_integer(BigInt::from(d));
        QuadExt {
            a: &self.a * &o.a + dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, o: &QuadExt) -> QuadExt {
        let d = self.joint_d(o);
        let r = o.clone().with_field(d).recip();
        self * &r
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &QuadExt) -> QuadExt { (&self).$m(o) }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::int(n)
    }
}

impl fmt::Display for QuadExt {
    /// Renders as `a+b√d`, dropping zero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            self.b.to_string()
        };
        if self.a.is_zero() {
            write!(f, "{b}√{}", self.d)
        } else if self.b.is_negative() {
            write!(f, "{}{b}√{}", self.a, self.d)
        } else {
            write!(f, "{}+{b}√{}", self.a, self.d)
        }
    }
}
