use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Inv, One, Zero};

/// Exact scalars for linear algebra.
pub trait Field:
    Copy
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Inv<Output = Self>
{
    fn characteristic() -> u32;

    fn from_i64(v: i64) -> Self;

    /// Every element, for finite fields.
    fn elements() -> Option<Vec<Self>>;
}

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field with `P` elements, `P` prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const PRIME: () = assert!(is_prime(P), "Fp needs a prime modulus");

    pub fn new(v: i64) -> Self {
        let () = Self::PRIME;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let (mut b, mut acc) = (self.0 as u64, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P as u64;
            }
            b = b * b % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Inv for Fp<P> {
    type Output = Self;
    fn inv(self) -> Self {
        assert!(self.0 != 0, "division by zero in F_{P}");
        self.pow(P - 2)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn characteristic() -> u32 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
}

impl Field for Rational64 {
    fn characteristic() -> u32 {
        0
    }

    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }
}

/// `|F|^dim`, or `None` for infinite fields or on overflow.
pub fn count_vectors<F: Field>(dim: usize) -> Option<u128> {
    let q = F::characteristic() as u128;
    if q == 0 {
        return None;
    }
    (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_5() {
        let a = Fp::<5>::new(3);
        assert_eq!(a * a.inv(), Fp::one());
        assert_eq!((a + Fp::new(4)).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(Fp::<5>::new(-1).value(), 4);
        assert_eq!(Fp::<2>::elements().unwrap().len(), 2);
        assert_eq!(count_vectors::<Fp<5>>(3), Some(125));
        assert_eq!(count_vectors::<Rational64>(3), None);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for a in Fp::<7>::elements().unwrap().into_iter().filter(|a| !a.is_zero()) {
            assert_eq!(a / a, Fp::one());
        }
    }
}
