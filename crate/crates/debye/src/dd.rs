//! Double-word ("double-double") arithmetic.
//!
//! A value is held as an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! which roughly doubles the working precision of the base scalar. The
//! closed-form Debye representations subtract polylogarithm values that agree
//! to many digits, so the assemblies run in this type and round once at the
//! end. Only the ring operations, division, `powi`, `exp` and `ln` are
//! provided; that is all the series kernels need.
//!
//! Algorithms are the classical error-free transformations (Dekker, Knuth)
//! with the product split done through `mul_add`, which is correctly rounded
//! for both `f32` and `f64`.

// Inherent add/mul/... by value is the usual calling convention for this
// kind of two-float kernel; operator traits would force reference plumbing.
#![allow(clippy::should_implement_trait)]

use crate::real::Real;

/// Sum with rounding error: `a + b = s + e` exactly.
#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like [`two_sum`] but requires `|a| >= |b|`.
#[inline]
fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Product with rounding error via FMA: `a * b = p + e` exactly.
#[inline]
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Double-word scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> Dd<T> {
    #[inline]
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_t(x: T) -> Self {
        Dd { hi: x, lo: T::zero() }
    }

    /// Builds a constant from an `f64` head/tail pair (e.g. pi split across
    /// two doubles), renormalized into the working scalar.
    pub fn from_f64_pair(hi: f64, lo: f64) -> Self {
        let h = T::of(hi);
        let l = T::of(hi - h.as_f64() + lo);
        Dd::new(h, l)
    }

    #[inline]
    pub fn zero() -> Self {
        Dd::from_t(T::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Dd::from_t(T::one())
    }

    pub fn pi() -> Self {
        Dd::from_f64_pair(std::f64::consts::PI, 1.224_646_799_147_353_2e-16)
    }

    pub fn two_pi() -> Self {
        Dd::from_f64_pair(2.0 * std::f64::consts::PI, 2.449_293_598_294_706_4e-16)
    }

    pub fn ln_2() -> Self {
        Dd::from_f64_pair(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17)
    }

    #[inline]
    pub fn to_t(self) -> T {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < T::zero() {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn add(self, o: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_t(self, o: T) -> Self {
        let (s1, s2) = two_sum(self.hi, o);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    #[inline]
    pub fn sub_t(self, o: T) -> Self {
        self.add_t(-o)
    }

    pub fn mul(self, o: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_t(self, o: T) -> Self {
        let (p1, p2) = two_prod(self.hi, o);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * o);
        Dd { hi, lo }
    }

    /// Long division: three quotient digits then renormalize.
    pub fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_t(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_t(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e).add_t(q3)
    }

    #[inline]
    pub fn div_t(self, o: T) -> Self {
        self.div(Dd::from_t(o))
    }

    pub fn recip(self) -> Self {
        Dd::one().div(self)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dd::one();
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    /// Scales by `2^k` (exact while in range).
    pub fn ldexp(self, k: i32) -> Self {
        let f = T::of(2.0).powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// `e^x` via range reduction against ln 2 and a Taylor tail.
    pub fn exp(self) -> Self {
        let max_exp = T::of(700.0);
        if self.hi > max_exp {
            return Dd::from_t(T::infinity());
        }
        if self.hi < -max_exp {
            return Dd::zero();
        }
        let k = (self.hi / T::LN_2()).round();
        let r = self.sub(Dd::ln_2().mul_t(k));
        let mut term = Dd::one();
        let mut sum = Dd::one();
        let eps2 = T::epsilon() * T::epsilon();
        for j in 1..64usize {
            term = term.mul(r).div_t(T::of_usize(j));
            sum = sum.add(term);
            if term.hi.abs() <= eps2 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k.as_f64() as i32)
    }

    /// Natural log by one Newton step on `exp` from the base-scalar seed.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > T::zero());
        let seed = self.hi.ln();
        // y1 = y0 + x * exp(-y0) - 1
        Dd::from_t(seed)
            .add(self.mul(Dd::from_t(-seed).exp()))
            .sub_t(T::one())
    }
}

/// Complex double-word value, used where a continued-polylogarithm assembly
/// cancels too many digits for the base scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CDd<T> {
    pub re: Dd<T>,
    pub im: Dd<T>,
}

impl<T: Real> CDd<T> {
    pub fn new(re: Dd<T>, im: Dd<T>) -> Self {
        CDd { re, im }
    }

    pub fn real(re: Dd<T>) -> Self {
        CDd { re, im: Dd::zero() }
    }

    pub fn zero() -> Self {
        CDd { re: Dd::zero(), im: Dd::zero() }
    }

    pub fn add(self, o: Self) -> Self {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn sub(self, o: Self) -> Self {
        CDd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    pub fn neg(self) -> Self {
        CDd { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(self, o: Self) -> Self {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn mul_dd(self, o: Dd<T>) -> Self {
        CDd { re: self.re.mul(o), im: self.im.mul(o) }
    }

    /// Multiplies by i^k (a quarter-turn shuffle, exact).
    pub fn mul_i_pow(self, k: u32) -> Self {
        match k % 4 {
            0 => self,
            1 => CDd { re: self.im.neg(), im: self.re },
            2 => self.neg(),
            _ => CDd { re: self.im, im: self.re.neg() },
        }
    }
}
