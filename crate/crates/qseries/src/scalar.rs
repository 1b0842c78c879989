//! Scalar value types: double-precision complex ([`QComplex`]) and exact
//! rational ([`Rat`]), unified behind the [`Scalar`] trait.
//!
//! All finite q-Pochhammer arithmetic, terminating series, bibasic sums and
//! the triangular matrix pair are generic over [`Scalar`], so the same code
//! runs in float mode and in exact rational mode. Infinite products and
//! nonterminating series are float-only and take [`QComplex`] directly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Truncation tolerance for infinite products and series tails.
pub const REL_TOL: f64 = 1e-12;

/// A denominator factor below this modulus raises a pole instead of
/// returning a huge value.
pub const POLE_GUARD: f64 = 1e-14;

/// Tolerance for structural parameter matching (e.g. detecting a numerator
/// parameter of the form q^{-m}). Float inputs cannot encode such values
/// exactly.
pub const NEAR_TOL: f64 = 1e-12;

/// Default pass threshold for identity verification, relative.
pub const PASS_TOL: f64 = 1e-9;

/// Common interface over [`QComplex`] and [`Rat`].
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; a (near-)zero input is a pole.
    fn recip(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Integer power. Negative exponents of (near-)zero are poles.
    fn powi(&self, n: i64) -> Result<Self>;

    /// Approximate modulus, used for convergence decisions and stopping
    /// rules. For rationals this is a double-precision approximation.
    fn modulus(&self) -> f64;

    /// Exact zero test.
    fn is_zero(&self) -> bool;

    /// Near-pole guard: exact zero in rational mode, modulus below
    /// [`POLE_GUARD`] in float mode.
    fn near_pole(&self) -> bool;

    /// Structural equality: exact in rational mode, within [`NEAR_TOL`]
    /// (relative) in float mode. Used for classification, never for
    /// verification pass/fail decisions.
    fn is_near(&self, other: &Self) -> bool;

    fn is_one(&self) -> bool {
        self.is_near(&Self::one())
    }
}

// ---------------------------------------------------------------------------
// QComplex
// ---------------------------------------------------------------------------

/// Complex scalar in double precision, the universal float-mode value type.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct QComplex {
    pub re: f64,
    pub im: f64,
}

impl QComplex {
    pub const ZERO: QComplex = QComplex { re: 0.0, im: 0.0 };
    pub const ONE: QComplex = QComplex { re: 1.0, im: 0.0 };
    pub const I: QComplex = QComplex { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Self {
        QComplex { re, im }
    }

    pub fn real(re: f64) -> Self {
        QComplex { re, im: 0.0 }
    }

    pub fn from_polar(modulus: f64, angle: f64) -> Self {
        Complex64::from_polar(modulus, angle).into()
    }

    fn c(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(self) -> f64 {
        self.c().norm()
    }

    pub fn conj(self) -> Self {
        QComplex::new(self.re, -self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Principal square root.
    pub fn sqrt(self) -> Self {
        self.c().sqrt().into()
    }

    /// Principal natural logarithm.
    pub fn ln(self) -> Self {
        self.c().ln().into()
    }

    pub fn exp(self) -> Self {
        self.c().exp().into()
    }

    /// Principal complex power: exp(w Log self).
    pub fn powc(self, w: QComplex) -> Self {
        if self == QComplex::ZERO {
            return if w == QComplex::ZERO { QComplex::ONE } else { QComplex::ZERO };
        }
        (w.c() * self.c().ln()).exp().into()
    }

    pub fn powf(self, x: f64) -> Self {
        self.powc(QComplex::real(x))
    }

    /// Relative closeness at an explicit tolerance: |a-b| <= tol * (1 + |b|).
    pub fn approx_eq(self, other: QComplex, tol: f64) -> bool {
        (self - other).abs() <= tol * (1.0 + other.abs())
    }
}

impl From<Complex64> for QComplex {
    fn from(z: Complex64) -> Self {
        QComplex::new(z.re, z.im)
    }
}

impl From<f64> for QComplex {
    fn from(x: f64) -> Self {
        QComplex::real(x)
    }
}

impl std::fmt::Display for QComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

macro_rules! qc_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for QComplex {
            type Output = QComplex;
            fn $method(self, rhs: QComplex) -> QComplex {
                (self.c() $op rhs.c()).into()
            }
        }
        impl std::ops::$trait<f64> for QComplex {
            type Output = QComplex;
            fn $method(self, rhs: f64) -> QComplex {
                (self.c() $op Complex64::new(rhs, 0.0)).into()
            }
        }
        impl std::ops::$trait<QComplex> for f64 {
            type Output = QComplex;
            fn $method(self, rhs: QComplex) -> QComplex {
                (Complex64::new(self, 0.0) $op rhs.c()).into()
            }
        }
    };
}

qc_binop!(Add, add, +);
qc_binop!(Sub, sub, -);
qc_binop!(Mul, mul, *);
qc_binop!(Div, div, /);

impl std::ops::Neg for QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-self.re, -self.im)
    }
}

impl Scalar for QComplex {
    fn zero() -> Self {
        QComplex::ZERO
    }

    fn one() -> Self {
        QComplex::ONE
    }

    fn from_int(n: i64) -> Self {
        QComplex::real(n as f64)
    }

    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn neg(&self) -> Self {
        -*self
    }

    fn recip(&self) -> Result<Self> {
        if self.near_pole() {
            return Err(QError::Pole(format!("division by near-zero value {self}")));
        }
        Ok(QComplex::ONE / *self)
    }

    fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 && self.near_pole() {
            return Err(QError::Pole(format!("negative power of near-zero value {self}")));
        }
        let mut acc = Complex64::new(1.0, 0.0);
        let base = if n < 0 { self.c().inv() } else { self.c() };
        for _ in 0..n.unsigned_abs() {
            acc *= base;
        }
        Ok(acc.into())
    }

    fn modulus(&self) -> f64 {
        self.abs()
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn near_pole(&self) -> bool {
        self.abs() < POLE_GUARD
    }

    fn is_near(&self, other: &Self) -> bool {
        self.approx_eq(*other, NEAR_TOL)
    }
}

// ---------------------------------------------------------------------------
// Rat
// ---------------------------------------------------------------------------

/// Exact rational scalar, always reduced with positive denominator
/// (maintained by `BigRational`). Used for terminating identities where
/// every quantity is rational in the inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from(BigInt::from(n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Overflowing magnitude: approximate through the sign.
            if self.0.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat::int(1)
    }

    fn from_int(n: i64) -> Self {
        Rat::int(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(QError::Pole("division by exact zero".into()));
        }
        Ok(Rat(self.0.recip()))
    }

    fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 && self.0.is_zero() {
            return Err(QError::Pole("negative power of exact zero".into()));
        }
        let base = if n < 0 { self.0.recip() } else { self.0.clone() };
        let mut acc = BigRational::from(BigInt::from(1));
        for _ in 0..n.unsigned_abs() {
            acc *= &base;
        }
        Ok(Rat(acc))
    }

    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn near_pole(&self) -> bool {
        self.0.is_zero()
    }

    fn is_near(&self, other: &Self) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qcomplex_principal_sqrt() {
        let z = QComplex::new(-1.0, 0.0).sqrt();
        assert!((z - QComplex::I).abs() < 1e-15);
        let w = QComplex::real(4.0).sqrt();
        assert!((w - QComplex::real(2.0)).abs() < 1e-15);
    }

    #[test]
    fn qcomplex_powi_negative() {
        let z = QComplex::real(2.0).powi(-3).unwrap();
        assert!((z - QComplex::real(0.125)).abs() < 1e-15);
        assert!(QComplex::ZERO.powi(-1).is_err());
    }

    #[test]
    fn rat_reduces_and_matches_float() {
        let r = Rat::new(6, -4);
        assert_eq!(r, Rat::new(-3, 2));
        assert!((r.to_f64() + 1.5).abs() < 1e-15);
    }

    #[test]
    fn rat_exact_pole() {
        assert!(Rat::zero().recip().is_err());
        assert!(Rat::new(1, 7).recip().is_ok());
    }

    #[test]
    fn near_tolerances_differ_by_mode() {
        let a = QComplex::real(1.0);
        let b = QComplex::real(1.0 + 1e-13);
        assert!(a.is_near(&b));
        assert!(!Rat::one().is_near(&Rat::new(999_999_999_999, 1_000_000_000_000)));
    }
}
