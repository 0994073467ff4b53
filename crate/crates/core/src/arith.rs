//! Exact scalar types and small helpers shared by every module.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[inline]
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[inline]
pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// Representative of `x` modulo 1 in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Representative of `x` modulo 1 in `(-1/2, 1/2]`.
pub fn centered_frac(x: &Rat) -> Rat {
    let f = frac(x);
    if f > rat(1, 2) {
        f - Rat::one()
    } else {
        f
    }
}

pub fn is_integral(x: &Rat) -> bool {
    x.is_integer()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector by the lcm of its denominators; returns `(integer vector, scale)`.
pub fn clear_denominators(xs: &[Rat]) -> (Vec<Int>, Int) {
    let l = common_denominator(xs.iter());
    let v = xs.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    (v, l)
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_int).collect()
}

pub fn abs_int(x: &Int) -> Int {
    x.abs()
}
