//! Scalar abstraction shared by numbers and jets.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Commutative ring elements that matrices, actions and invariants are generic over.
///
/// `lift` builds a constant in the same ambient space as `self` (same jet
/// variables and order); for `f64` it keeps only the real part.
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn lift(&self, c: C64) -> Self;
    fn scale(&self, c: C64) -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;
    fn recip(&self) -> Result<Self>;
    fn exp(&self) -> Self;
    fn sqrt(&self) -> Result<Self>;
    /// Constant term for jets, the value itself for numbers.
    fn value(&self) -> C64;

    /// Exactly zero, including every jet coefficient.
    fn is_zero(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.lift(C64::new(0.0, 0.0))
    }
    fn one_like(&self) -> Self {
        self.lift(C64::new(1.0, 0.0))
    }
}

impl Scalar for f64 {
    fn lift(&self, c: C64) -> Self {
        c.re
    }
    fn scale(&self, c: C64) -> Self {
        self * c.re
    }
    fn conj(&self) -> Self {
        *self
    }
    fn re(&self) -> Self {
        *self
    }
    fn im(&self) -> Self {
        0.0
    }
    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::ZeroConstantTerm)
        } else {
            Ok(1.0 / self)
        }
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            Err(Error::Domain("square root of a negative real".into()))
        } else {
            Ok(f64::sqrt(*self))
        }
    }
    fn value(&self) -> C64 {
        C64::new(*self, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for C64 {
    fn lift(&self, c: C64) -> Self {
        c
    }
    fn scale(&self, c: C64) -> Self {
        self * c
    }
    fn conj(&self) -> Self {
        C64::conj(self)
    }
    fn re(&self) -> Self {
        C64::new(self.re, 0.0)
    }
    fn im(&self) -> Self {
        C64::new(self.im, 0.0)
    }
    fn recip(&self) -> Result<Self> {
        if *self == C64::new(0.0, 0.0) {
            Err(Error::ZeroConstantTerm)
        } else {
            Ok(1.0 / self)
        }
    }
    fn exp(&self) -> Self {
        C64::exp(*self)
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(C64::sqrt(*self))
    }
    fn value(&self) -> C64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == C64::new(0.0, 0.0)
    }
}

impl Scalar for Jet {
    fn lift(&self, c: C64) -> Self {
        Jet::lift(self, c)
    }
    fn scale(&self, c: C64) -> Self {
        Jet::scale(self, c)
    }
    fn conj(&self) -> Self {
        Jet::conj(self)
    }
    fn re(&self) -> Self {
        Jet::re(self)
    }
    fn im(&self) -> Self {
        Jet::im(self)
    }
    fn recip(&self) -> Result<Self> {
        Jet::recip(self)
    }
    fn exp(&self) -> Self {
        Jet::exp(self)
    }
    fn sqrt(&self) -> Result<Self> {
        Jet::sqrt(self)
    }
    fn value(&self) -> C64 {
        Jet::value(self)
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| *c == C64::new(0.0, 0.0))
    }
}
