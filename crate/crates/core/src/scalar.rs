//! Scalar entry traits: real (f32/f64) and complex entries behind one interface.

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Entry of a dense matrix: a real or complex floating-point scalar.
///
/// `Real` is the associated real field used for moduli, norms and tolerances.
pub trait Entry:
    Copy
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    type Real: Float + Debug;

    const IS_COMPLEX: bool;

    /// |x|
    fn modulus(self) -> Self::Real;
    /// |x|^2 without the square root.
    fn modulus_sq(self) -> Self::Real;
    fn conjugate(self) -> Self;
    fn from_real(r: Self::Real) -> Self;
    /// Multiply by a real scalar.
    fn scale(self, r: Self::Real) -> Self;
    fn real_part(self) -> Self::Real;
    fn imag_part(self) -> Self::Real;
    fn is_finite_entry(self) -> bool;
    /// Unit-modulus phase with `phase(x).conjugate() * x = |x|`; phase(0) = 1.
    fn phase(self) -> Self;
    /// Build from real and imaginary parts; real scalars keep only `re`.
    fn from_re_im(re: Self::Real, im: Self::Real) -> Self;
}

/// Real scalar entries (the real-only algorithms bound on this).
pub trait RealEntry: Entry<Real = Self> + Float {}
impl<T: Entry<Real = T> + Float> RealEntry for T {}

macro_rules! impl_real_entry {
    ($t:ty) => {
        impl Entry for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;

            fn modulus(self) -> $t {
                self.abs()
            }
            fn modulus_sq(self) -> $t {
                self * self
            }
            fn conjugate(self) -> $t {
                self
            }
            fn from_real(r: $t) -> $t {
                r
            }
            fn scale(self, r: $t) -> $t {
                self * r
            }
            fn real_part(self) -> $t {
                self
            }
            fn imag_part(self) -> $t {
                0.0
            }
            fn is_finite_entry(self) -> bool {
                self.is_finite()
            }
            fn phase(self) -> $t {
                if self < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            fn from_re_im(re: $t, _im: $t) -> $t {
                re
            }
        }
    };
}

impl_real_entry!(f32);
impl_real_entry!(f64);

macro_rules! impl_complex_entry {
    ($t:ty) => {
        impl Entry for Complex<$t> {
            type Real = $t;
            const IS_COMPLEX: bool = true;

            fn modulus(self) -> $t {
                self.norm()
            }
            fn modulus_sq(self) -> $t {
                self.norm_sqr()
            }
            fn conjugate(self) -> Self {
                self.conj()
            }
            fn from_real(r: $t) -> Self {
                Complex::new(r, 0.0)
            }
            fn scale(self, r: $t) -> Self {
                Complex::new(self.re * r, self.im * r)
            }
            fn real_part(self) -> $t {
                self.re
            }
            fn imag_part(self) -> $t {
                self.im
            }
            fn is_finite_entry(self) -> bool {
                self.re.is_finite() && self.im.is_finite()
            }
            fn phase(self) -> Self {
                let m = self.norm();
                if m == 0.0 {
                    Complex::new(1.0, 0.0)
                } else {
                    self.unscale(m)
                }
            }
            fn from_re_im(re: $t, im: $t) -> Self {
                Complex::new(re, im)
            }
        }
    };
}

impl_complex_entry!(f32);
impl_complex_entry!(f64);
