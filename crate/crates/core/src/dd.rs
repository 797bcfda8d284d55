//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi)/2`, giving roughly 32 significant digits.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::sync::OnceLock;

use num_traits::{Num, One, Zero};

use crate::real::Real;

/// Double-double scalar.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
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

const PIO2: (f64, f64, f64) = (
    std::f64::consts::FRAC_PI_2,
    6.123233995736766e-17,
    -1.4973849048591698e-33,
);

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };

    /// Builds a value from two parts, renormalising them.
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            Dd::new(hi, self.lo.floor())
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    fn trunc(self) -> Dd {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            -((-self).floor())
        }
    }

    fn sin_cos_dd(self) -> (Dd, Dd) {
        if !self.hi.is_finite() {
            return (Dd::new(f64::NAN, 0.0), Dd::new(f64::NAN, 0.0));
        }
        let k = (self.hi / PIO2.0).round();
        let (a, b) = two_prod(k, PIO2.0);
        let (c, d) = two_prod(k, PIO2.1);
        let r = self - Dd::new(a, b) - Dd::new(c, d) - Dd::from(k * PIO2.2);
        let (s, c) = taylor_sin_cos(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

fn inv_factorials() -> &'static [Dd; 40] {
    static TABLE: OnceLock<[Dd; 40]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [Dd::ONE; 40];
        for n in 1..40 {
            t[n] = t[n - 1] / Dd::from(n as f64);
        }
        t
    })
}

// |r| <= pi/4 + tiny; the remaining term r^35/35! is below 1e-43.
fn taylor_sin_cos(r: Dd) -> (Dd, Dd) {
    let f = inv_factorials();
    let r2 = r * r;
    let mut s = Dd::ZERO;
    let mut c = Dd::ZERO;
    for j in (0..=16).rev() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s = s * r2 + f[2 * j + 1].mul_f64(sign);
        c = c * r2 + f[2 * j].mul_f64(sign);
    }
    (s * r, c)
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> f64 {
        x.hi
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

/// Displays the leading `f64` part.
impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.hi, f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
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
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

impl Zero for Dd {
    fn zero() -> Dd {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Dd {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;

    /// Parses through `f64`; only radix 10 is meaningful.
    fn from_str_radix(s: &str, _radix: u32) -> Result<Dd, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dd::from)
    }
}

impl Real for Dd {
    const EPSILON: f64 = 4.930380657631324e-32;

    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd::from(x)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn from_i64(n: i64) -> Dd {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    #[inline]
    fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from(f64::NAN)
            };
        }
        let q = self.hi.sqrt();
        let (p, e) = two_prod(q, q);
        let r = (self - Dd { hi: p, lo: e }).hi * (0.5 / q);
        let (hi, lo) = quick_two_sum(q, r);
        Dd { hi, lo }
    }

    fn sin_cos(self) -> (Dd, Dd) {
        self.sin_cos_dd()
    }

    fn pi() -> Dd {
        Dd::PI
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn arithmetic_identities() {
        let third = Dd::ONE / Dd::from(3.0);
        let back = third * Dd::from(3.0);
        assert!((back - Dd::ONE).abs().to_f64() < 1e-31);
        let x = Dd::from(2.0).sqrt();
        assert!((x * x - Dd::from(2.0)).abs().to_f64() < 1e-31);
        assert_eq!(Dd::from_i64(i64::MAX).to_f64(), i64::MAX as f64);
        let big = Dd::from_i64((1i64 << 60) + 1);
        assert_eq!((big - Dd::from((1u64 << 60) as f64)).to_f64(), 1.0);
    }

    #[test]
    fn pi_identity() {
        // sin(pi/6) = 1/2, cos(pi/3) = 1/2 to double-double accuracy.
        let s = (Dd::PI / Dd::from(6.0)).sin();
        assert!(close(s, Dd::from(0.5), 1e-30));
        let c = (Dd::PI / Dd::from(3.0)).cos();
        assert!(close(c, Dd::from(0.5), 1e-30));
    }

    #[test]
    fn pythagoras_and_addition_theorem() {
        for i in -40..40 {
            let x = Dd::from(0.37 * i as f64) + Dd::new(0.0, 1e-20);
            let (s, c) = x.sin_cos();
            assert!((s * s + c * c - Dd::ONE).abs().to_f64() < 1e-30);
            let (s2, c2) = (x + x).sin_cos();
            assert!((s2 - Dd::from(2.0) * s * c).abs().to_f64() < 1e-30);
            assert!((c2 - (c * c - s * s)).abs().to_f64() < 1e-30);
            assert!((s.to_f64() - x.to_f64().sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn sin_one_matches_reference() {
        // sin(1) to 34 digits.
        let s = Dd::ONE.sin();
        let reference = Dd::new(0.8414709848078965, 1.776845092935536e-18);
        assert!((s - reference).abs().to_f64() < 1e-31, "{s:?}");
    }
}
