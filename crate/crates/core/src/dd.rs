//! Double-double scalar arithmetic.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` of two `f64` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 106 bits of significand. Boost matrices with rapidity `ξ` have
//! entries of size `e^ξ`, and products of them cancel down to `O(1)` quantities
//! (Wigner rotations, metric contractions). In plain `f64` the cancellation
//! leaves errors of order `ε·e^{2ξ}`; in double-double it is `ε²·e^{2ξ}`.
//!
//! Only the field operations, `sqrt` and `exp` are provided. Trigonometric
//! values are evaluated in `f64` by the callers and renormalized so that
//! `cos² + sin² = 1` holds to double-double precision. Hyperbolic values come
//! from [`Dd::exp`], because a rounded `tanh η` pins down `η` only to
//! `ε·cosh²η`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest `f64`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact product of two `f64` values.
    #[inline]
    pub fn mul_f64s(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    /// Square root; negative inputs give NaN.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let q = self.hi.sqrt();
        let residual = self - Dd::mul_f64s(q, q);
        let (hi, lo) = quick_two_sum(q, residual.hi / (2.0 * q));
        Dd { hi, lo }
    }

    /// `e^x` for an `f64` argument, accurate to double-double precision.
    pub fn exp(x: f64) -> Dd {
        if x == 0.0 {
            return Dd::ONE;
        }
        if !x.is_finite() || x.abs() > 700.0 {
            return Dd::from_f64(x.exp());
        }
        // x = k ln 2 + 512 r, |r| < 7e-4
        let k = (x / LN2.hi).round();
        let r = (Dd::from_f64(x) - LN2 * k) * (1.0 / 512.0);
        // e^r − 1 by Taylor series
        let mut term = r;
        let mut sum = r;
        for n in 2..12 {
            term = term * r / n as f64;
            sum += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // e^{2r} − 1 = 2s + s²
        for _ in 0..9 {
            sum = sum * 2.0 + sum.sqr();
        }
        let e = sum + 1.0;
        let scale = 2f64.powi(k as i32);
        Dd {
            hi: e.hi * scale,
            lo: e.lo * scale,
        }
    }

    pub fn max(self, other: Dd) -> Dd {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> Self {
        x.to_f64()
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

macro_rules! mixed_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<f64> for Dd {
            type Output = Dd;
            #[inline]
            fn $f(self, rhs: f64) -> Dd {
                $tr::$f(self, Dd::from_f64(rhs))
            }
        }
        impl $tr<Dd> for f64 {
            type Output = Dd;
            #[inline]
            fn $f(self, rhs: Dd) -> Dd {
                $tr::$f(Dd::from_f64(self), rhs)
            }
        }
    )*};
}
mixed_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for Dd {
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}
