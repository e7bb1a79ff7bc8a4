//! Exact scalar helpers: rationals, binomials, and logarithms of big numbers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Exact integer scalar used throughout the crate.
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn z(n: i64) -> Z {
    Z::from(n)
}

pub fn factorial(n: u64) -> Z {
    (1..=n).fold(Z::one(), |acc, k| acc * Z::from(k))
}

pub fn binomial(n: u64, k: u64) -> Z {
    if k > n {
        return Z::zero();
    }
    let k = k.min(n - k);
    let mut acc = Z::one();
    for i in 0..k {
        acc = acc * Z::from(n - i) / Z::from(i + 1);
    }
    acc
}

/// `binomial` for callers holding `usize` counts.
pub fn binom(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
        .to_u64()
        .expect("binomial coefficient exceeds u64")
}

/// Natural logarithm of a positive big integer, accurate to f64 precision
/// even when the integer does not fit in an f64.
pub fn ln_int(n: &Z) -> f64 {
    match n.sign() {
        Sign::Plus => {}
        Sign::NoSign => return f64::NEG_INFINITY,
        Sign::Minus => return f64::NAN,
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: Z = n >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural logarithm of a nonnegative rational (−∞ at zero, NaN below zero).
pub fn ln_q(x: &Q) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    if x.is_negative() {
        return f64::NAN;
    }
    ln_int(x.numer()) - ln_int(x.denom())
}

/// Converts a rational to the nearest f64, tolerating huge numerators and
/// denominators.
pub fn q_to_f64(x: &Q) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_int(&x.numer().abs()) - ln_int(x.denom())).exp()
}

/// Exact dyadic rational equal to a finite f64.
pub fn f64_to_q(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

/// Integer power of a rational.
pub fn q_pow(x: &Q, e: u64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

pub fn z_pow(x: &Z, e: u64) -> Z {
    num_traits::pow::pow(x.clone(), e as usize)
}

/// Greatest common divisor of a sequence of integers (0 for empty / all-zero).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Z>) -> Z {
    values.into_iter().fold(Z::zero(), |acc, v| acc.gcd(v))
}

/// Least common multiple of the denominators of a rational slice.
pub fn denom_lcm(values: &[Q]) -> Z {
    values.iter().fold(Z::one(), |acc, v| acc.lcm(v.denom()))
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &Z) -> Z {
    n.sqrt()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. Returns the zero vector unchanged.
pub fn primitive_part(values: &[Q]) -> Vec<Z> {
    let l = denom_lcm(values);
    let ints: Vec<Z> = values
        .iter()
        .map(|v| (v * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}
