//! Scalar abstraction so the same formulas run in `f64` and double-double.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn of(x: f64) -> Self;
    fn f(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn rexp(self) -> Self;
    fn rln(self) -> Self;

    fn zero() -> Self {
        Self::of(0.0)
    }
    fn one() -> Self {
        Self::of(1.0)
    }
}

impl Real for f64 {
    fn of(x: f64) -> Self {
        x
    }
    fn f(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn rexp(self) -> Self {
        f64::exp(self)
    }
    fn rln(self) -> Self {
        f64::ln(self)
    }
}

/// Double-double number `hi + lo` with `|lo| ≤ ulp(hi)/2`, about 32 digits.
///
/// Arithmetic follows the usual error-free transformations (two-sum,
/// fma-based two-product).
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    /// Normalizes an unevaluated sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    fn from_quick(a: f64, b: f64) -> Self {
        let (hi, lo) = quick_two_sum(a, b);
        Dd { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl PartialEq for Dd {
    fn eq(&self, o: &Self) -> bool {
        self.hi == o.hi && self.lo == o.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&o.lo),
            c => Some(c),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::from_quick(s1, s2 + t2)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        Dd::from_quick(p1, p2 + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from(q2);
        let q3 = r.hi / b.hi;
        Dd::from_quick(q1, q2) + Dd::from(q3)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Dd {
            type Output = Dd;
            fn $m(self, b: f64) -> Dd {
                $tr::$m(self, Dd::from(b))
            }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);

impl Real for Dd {
    fn of(x: f64) -> Self {
        Dd::from(x)
    }
    fn f(self) -> f64 {
        self.hi + self.lo
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from(self.hi.sqrt());
        }
        let y = self.hi.sqrt();
        let r = self - Dd::from(y) * Dd::from(y);
        Dd::sum(y, r.hi / (2.0 * y))
    }
    fn rexp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::from(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::from(0.0);
        }
        let k = (self.hi / LN2.hi).round();
        // reduce to |r| ≤ ln2/64, sum the series, square back up
        let r = (self - LN2 * k) / 32.0;
        let mut term = Dd::from(1.0);
        let mut sum = Dd::from(1.0);
        for n in 1..20 {
            term = term * r / (n as f64);
            sum += term;
        }
        for _ in 0..5 {
            sum = sum * sum;
        }
        sum * 2f64.powi(k as i32)
    }
    fn rln(self) -> Self {
        if !(self.hi > 0.0) {
            return Dd::from(f64::NAN);
        }
        // Newton on exp(y) = x, each step doubles the correct digits
        let mut y = Dd::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).rexp() - 1.0;
        }
        y
    }
}
