//! q-Pochhammer arithmetic, q-binomial coefficients and the base-inversion
//! identity: the numeric kernel everything else builds on.
//!
//! Finite products are generic over [`Scalar`] (exact in rational mode);
//! infinite products require |q| < 1 and are float-only.

use crate::diag;
use crate::error::{QError, Result};
use crate::scalar::{QComplex, Scalar, REL_TOL};

/// n(n-1)/2, the exponent in the (-1)^n q^{n(n-1)/2} balancing factor.
pub fn triangle(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// q-shifted factorial (a;q)_n.
///
/// For n >= 0 this is the finite product (1-a)(1-aq)...(1-aq^{n-1}).
/// For n < 0 it is 1 / [(1-a/q)(1-a/q^2)...(1-a/q^{|n|})], which requires
/// q != 0 and no vanishing factor.
pub fn qpoch<F: Scalar>(a: &F, q: &F, n: i64) -> Result<F> {
    if n >= 0 {
        let mut acc = F::one();
        let mut aq = a.clone();
        for _ in 0..n {
            acc = acc.mul(&F::one().sub(&aq));
            aq = aq.mul(q);
        }
        Ok(acc)
    } else {
        if q.near_pole() {
            return Err(QError::Domain("(a;q)_n with n < 0 requires q != 0".into()));
        }
        let denom = qpoch_recip_neg(a, q, -n)?;
        if denom.near_pole() {
            return Err(QError::Pole(format!(
                "(a;q)_{{{n}}} has a vanishing denominator factor"
            )));
        }
        denom.recip()
    }
}

/// Product (1 - a/q)(1 - a/q^2)...(1 - a/q^m), the reciprocal of (a;q)_{-m}.
fn qpoch_recip_neg<F: Scalar>(a: &F, q: &F, m: i64) -> Result<F> {
    let qinv = q.recip()?;
    let mut acc = F::one();
    let mut aq = a.mul(&qinv);
    for _ in 0..m {
        acc = acc.mul(&F::one().sub(&aq));
        aq = aq.mul(&qinv);
    }
    Ok(acc)
}

/// 1/(a;q)_n with the convention that the reciprocal of an infinite
/// Pochhammer value is exactly zero: 1/(q^j;q)_k = 0 for j >= 1, k <= -j.
///
/// A vanishing factor in the n < 0 product is therefore a legitimate zero
/// result here, not a pole.
pub fn qpoch_recip<F: Scalar>(a: &F, q: &F, n: i64) -> Result<F> {
    if n >= 0 {
        let p = qpoch(a, q, n)?;
        if p.near_pole() {
            return Err(QError::Pole(format!("1/(a;q)_{n} with (a;q)_{n} = 0")));
        }
        p.recip()
    } else {
        if q.near_pole() {
            return Err(QError::Domain("1/(a;q)_n with n < 0 requires q != 0".into()));
        }
        let p = qpoch_recip_neg(a, q, -n)?;
        // Structural zero from a = q^j: return exact zero.
        if p.near_pole() {
            return Ok(F::zero());
        }
        Ok(p)
    }
}

/// Product of (a_i;q)_n over a parameter list.
pub fn qpoch_multi<F: Scalar>(list: &[F], q: &F, n: i64) -> Result<F> {
    let mut acc = F::one();
    for a in list {
        acc = acc.mul(&qpoch(a, q, n)?);
    }
    Ok(acc)
}

/// (a;q)_infinity, truncated once |a| |q|^K drops below `tol` (one extra
/// factor is always taken past that point).
pub fn qpoch_inf_with_tol(a: QComplex, q: QComplex, tol: f64) -> Result<QComplex> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain(format!(
            "(a;q)_infinity diverges for |q| >= 1 (|q| = {})",
            q.abs()
        )));
    }
    let mut acc = QComplex::ONE;
    let mut aq = a;
    let mut factors = 0u64;
    let cap = 1_000_000;
    loop {
        acc = acc * (QComplex::ONE - aq);
        aq = aq * q;
        factors += 1;
        if aq.abs() < tol {
            // one factor beyond the threshold
            acc = acc * (QComplex::ONE - aq);
            factors += 1;
            break;
        }
        if factors >= cap {
            diag::add_product_factors(factors);
            return Err(QError::Truncation("infinite product cap reached".into()));
        }
    }
    diag::add_product_factors(factors);
    Ok(acc)
}

/// (a;q)_infinity at the default truncation tolerance [`REL_TOL`].
pub fn qpoch_inf(a: QComplex, q: QComplex) -> Result<QComplex> {
    qpoch_inf_with_tol(a, q, REL_TOL)
}

/// Product of (a_i;q)_infinity over a parameter list.
pub fn qpoch_inf_multi(list: &[QComplex], q: QComplex) -> Result<QComplex> {
    let mut acc = QComplex::ONE;
    for &a in list {
        acc = acc * qpoch_inf(a, q)?;
    }
    Ok(acc)
}

/// Principal power q^alpha = exp(alpha Log q).
///
/// For q on the negative real axis the principal branch is used; results
/// there are branch-sensitive for non-integer alpha.
pub fn q_power(q: QComplex, alpha: QComplex) -> Result<QComplex> {
    if q.near_pole() {
        return Err(QError::Domain("q^alpha requires q != 0".into()));
    }
    Ok(q.powc(alpha))
}

/// (a;q)_alpha for complex index alpha, via (a;q)_inf / (a q^alpha;q)_inf.
/// Requires 0 < |q| < 1.
pub fn qpoch_complex_index(a: QComplex, q: QComplex, alpha: QComplex) -> Result<QComplex> {
    if q.near_pole() || q.abs() >= 1.0 {
        return Err(QError::Domain(
            "(a;q)_alpha requires 0 < |q| < 1".into(),
        ));
    }
    let numer = qpoch_inf(a, q)?;
    let denom = qpoch_inf(a * q.powc(alpha), q)?;
    if denom.near_pole() {
        return Err(QError::Pole("(a q^alpha;q)_infinity = 0".into()));
    }
    Ok(numer / denom)
}

/// q-binomial coefficient [n choose k]_q = (q;q)_n / [(q;q)_k (q;q)_{n-k}].
///
/// Returns 0 for k outside 0..=n. Exact polynomial value in rational mode.
pub fn qbinom<F: Scalar>(n: i64, k: i64, q: &F) -> Result<F> {
    if n < 0 {
        return Err(QError::Domain("qbinom requires n >= 0".into()));
    }
    if k < 0 || k > n {
        return Ok(F::zero());
    }
    let numer = qpoch(q, q, n)?;
    let d1 = qpoch(q, q, k)?;
    let d2 = qpoch(q, q, n - k)?;
    let denom = d1.mul(&d2);
    if denom.is_zero() {
        return Err(QError::Domain(
            "q is a root of unity: (q;q)_k vanishes".into(),
        ));
    }
    if denom.near_pole() {
        return Err(QError::Pole("near-vanishing (q;q)_k denominator".into()));
    }
    numer.div(&denom)
}

/// Generalized q-binomial coefficient for complex alpha, beta and |q| < 1:
///
/// [alpha choose beta]_q
///   = (q^{beta+1};q)_inf (q^{alpha-beta+1};q)_inf
///     / [(q;q)_inf (q^{alpha+1};q)_inf].
pub fn qbinom_general(alpha: QComplex, beta: QComplex, q: QComplex) -> Result<QComplex> {
    if q.near_pole() || q.abs() >= 1.0 {
        return Err(QError::Domain("generalized qbinom requires 0 < |q| < 1".into()));
    }
    let one = QComplex::ONE;
    let numer = qpoch_inf(q.powc(beta + one), q)? * qpoch_inf(q.powc(alpha - beta + one), q)?;
    let denom = qpoch_inf(q, q)? * qpoch_inf(q.powc(alpha + one), q)?;
    if denom.near_pole() {
        return Err(QError::Pole("(q^{alpha+1};q)_infinity contributes a pole".into()));
    }
    Ok(numer / denom)
}

/// The base-inversion form (a^{-1};q^{-1})_n (-a)^n q^{n(n-1)/2}, which
/// equals (a;q)_n for n >= 0. Requires a != 0 and q != 0.
pub fn invert_base_poch<F: Scalar>(a: &F, q: &F, n: i64) -> Result<F> {
    if n < 0 {
        return Err(QError::Domain("invert_base_poch requires n >= 0".into()));
    }
    if a.near_pole() || q.near_pole() {
        return Err(QError::Domain("invert_base_poch requires a != 0 and q != 0".into()));
    }
    let p = qpoch(&a.recip()?, &q.recip()?, n)?;
    let sign = a.neg().powi(n)?;
    let qpow = q.powi(triangle(n))?;
    Ok(p.mul(&sign).mul(&qpow))
}
