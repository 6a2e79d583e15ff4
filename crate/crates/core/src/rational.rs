//! Exact rational scalars. Everything in this crate that is not a plain
//! integer count is a [`Rat`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with the sign on the
/// numerator (num-rational maintains both).
pub type Rat = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Whether the reduced denominator is coprime to `p`, i.e. whether `r` lies
/// in the p-localization of the integers.
pub fn is_p_integral(r: &Rat, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// Exact division by a positive integer modulus, used by congruence checks:
/// the congruence `r ≡ 0 (mod m)` holds integrally iff `r/m` is an integer,
/// and p-locally iff `r/m` is p-integral.
pub fn div_by(r: &Rat, m: u64) -> Rat {
    r / Rat::from_integer(BigInt::from(m))
}

/// Signed numerator/denominator pair for serialization, if both fit in i64.
pub fn to_i64_pair(r: &Rat) -> Option<(i64, i64)> {
    let num = i64::try_from(r.numer()).ok()?;
    let den = i64::try_from(r.denom()).ok()?;
    Some((num, den))
}

/// `r^e` for a possibly negative exponent; `None` when `r = 0` and `e < 0`.
pub fn pow_signed(r: &Rat, e: i64) -> Option<Rat> {
    if r.is_zero() && e < 0 {
        return None;
    }
    if e == 0 {
        return Some(Rat::one());
    }
    let base = if e < 0 { r.recip() } else { r.clone() };
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Some(acc)
}

#[allow(dead_code)]
pub fn abs(r: &Rat) -> Rat {
    r.abs()
}
