//! Scalar abstraction over `f64` and an arbitrary-precision float, so the
//! series loops are written once and run at either precision.

use astro_float::{BigFloat, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

/// Number of mantissa bits that carry `digits` decimal digits, plus guard
/// bits.
pub(crate) fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 16
}

pub(crate) trait Scalar: Clone {
    /// Precision context (unit for `f64`, mantissa bits for [`Wide`]).
    type Ctx: Copy;

    fn lift(x: f64, ctx: Self::Ctx) -> Self;
    /// `a + k` formed without intermediate rounding of the sum where the
    /// precision allows it.
    fn shifted(a: f64, k: usize, ctx: Self::Ctx) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn approx(&self) -> f64;
    fn is_exact_zero(&self) -> bool;
    fn unit_roundoff(ctx: Self::Ctx) -> f64;
}

impl Scalar for f64 {
    type Ctx = ();

    fn lift(x: f64, _: ()) -> Self {
        x
    }
    fn shifted(a: f64, k: usize, _: ()) -> Self {
        a + k as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn approx(&self) -> f64 {
        *self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn unit_roundoff(_: ()) -> f64 {
        f64::EPSILON / 2.0
    }
}

/// Arbitrary-precision float carrying its working precision in bits.
#[derive(Clone, Debug)]
pub(crate) struct Wide {
    v: BigFloat,
    p: usize,
}

impl Wide {
    /// Binary exponent, i.e. floor(log2|x|) + 1; `None` for zero.
    pub(crate) fn exponent(&self) -> Option<i32> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent()
        }
    }
}

impl Scalar for Wide {
    type Ctx = usize;

    fn lift(x: f64, p: usize) -> Self {
        Wide {
            v: BigFloat::from_f64(x, p),
            p,
        }
    }

    fn shifted(a: f64, k: usize, p: usize) -> Self {
        let v = BigFloat::from_f64(a, p).add(&BigFloat::from_u64(k as u64, p), p, RM);
        Wide { v, p }
    }

    fn add(&self, rhs: &Self) -> Self {
        Wide {
            v: self.v.add(&rhs.v, self.p, RM),
            p: self.p,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Wide {
            v: self.v.mul(&rhs.v, self.p, RM),
            p: self.p,
        }
    }

    fn div(&self, rhs: &Self) -> Self {
        Wide {
            v: self.v.div(&rhs.v, self.p, RM),
            p: self.p,
        }
    }

    fn approx(&self) -> f64 {
        big_to_f64(&self.v)
    }

    fn is_exact_zero(&self) -> bool {
        self.v.is_zero()
    }

    fn unit_roundoff(p: usize) -> f64 {
        // clamped into the subnormal range; the estimate only needs a floor
        2f64.powi(-(p.min(1070) as i32))
    }
}

/// Rounds a big float to the nearest `f64`.
pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let mut y = x.clone();
    if y.set_precision(64, RM).is_err() {
        return f64::NAN;
    }
    match y.as_raw_parts() {
        Some((words, _, sign, exp, _)) => {
            // value = top / 2^64 * 2^exp with the top bit of `top` set
            let top = *words.last().unwrap_or(&0) as f64;
            let e = exp as i64 - 64;
            let mag = scale_by_pow2(top, e);
            match sign {
                Sign::Neg => -mag,
                Sign::Pos => mag,
            }
        }
        None => f64::NAN,
    }
}

fn scale_by_pow2(x: f64, e: i64) -> f64 {
    if e > 2100 {
        return f64::INFINITY;
    }
    if e < -2200 {
        return 0.0;
    }
    // two steps keep each factor inside the normal range
    let half = e / 2;
    x * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
}
