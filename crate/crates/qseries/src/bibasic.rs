//! Two-base (p,q) indefinite summation, its delta-function
//! specializations, and the associated triangular matrix-inverse pair.
//!
//! Everything here is a finite sum of Pochhammer ratios, so the functions
//! are generic over [`Scalar`] and default to exact rational arithmetic in
//! the tests: the sums telescope through near-cancelling factors, the
//! classic trap for floating point. Denominator factorials are always
//! routed through [`qpoch_recip`], whose negative-index convention turns
//! the reciprocal of an infinite Pochhammer value into an exact zero —
//! this is what makes the summand sequence vanish identically below the
//! lower summation limit.

use std::sync::OnceLock;

use crate::diag;
use crate::domain::{ParamDomain, ParamKind, SampleParams};
use crate::error::{QError, Result};
use crate::identities::{fin_ok, inf_many};
use crate::qcore::{qpoch, qpoch_recip, triangle};
use crate::report::{build_report, VerificationReport};
use crate::scalar::{QComplex, Scalar};

/// Parameter record for the two-base sums: four numerator parameters and
/// the two independent bases.
#[derive(Clone, Debug)]
pub struct BibasicParams<F: Scalar> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub p: F,
    pub q: F,
}

// ---------------------------------------------------------------------------
// The telescoping sequence and the indefinite sum
// ---------------------------------------------------------------------------

/// The telescoping sequence
/// `s_k = (ap, bp;p)_k (cq, aq/bc;q)_k / [(q, aq/b;q)_k (ap/c, bcp;p)_k]`.
/// Vanishes identically for k <= -1 because the reciprocal of `(q;q)_k`
/// is a structural zero there.
pub fn bibasic_sequence_term<F: Scalar>(
    a: &F,
    b: &F,
    c: &F,
    p: &F,
    q: &F,
    k: i64,
) -> Result<F> {
    let numer = qpoch(&a.mul(p), p, k)?
        .mul(&qpoch(&b.mul(p), p, k)?)
        .mul(&qpoch(&c.mul(q), q, k)?)
        .mul(&qpoch(&a.mul(q).div(&b.mul(c))?, q, k)?);
    let denom = qpoch_recip(q, q, k)?
        .mul(&qpoch_recip(&a.mul(q).div(b)?, q, k)?)
        .mul(&qpoch_recip(&a.mul(p).div(c)?, p, k)?)
        .mul(&qpoch_recip(&b.mul(c).mul(p), p, k)?);
    Ok(numer.mul(&denom))
}

/// Closed form of the difference `s_k - s_(k-1)`:
/// `[(1-ap^k q^k)(1-bp^k q^-k) / ((1-a)(1-b))]
///  (a,b;p)_k (c,a/bc;q)_k q^k / [(q, aq/b;q)_k (ap/c, bcp;p)_k]`.
pub fn indefinite_summand<F: Scalar>(
    a: &F,
    b: &F,
    c: &F,
    p: &F,
    q: &F,
    k: i64,
) -> Result<F> {
    let pk = p.powi(k)?;
    let qk = q.powi(k)?;
    let qmk = q.powi(-k)?;
    let head = F::one()
        .sub(&a.mul(&pk).mul(&qk))
        .mul(&F::one().sub(&b.mul(&pk).mul(&qmk)))
        .div(&F::one().sub(a).mul(&F::one().sub(b)))?;
    let numer = qpoch(a, p, k)?
        .mul(&qpoch(b, p, k)?)
        .mul(&qpoch(c, q, k)?)
        .mul(&qpoch(&a.div(&b.mul(c))?, q, k)?);
    let denom = qpoch_recip(q, q, k)?
        .mul(&qpoch_recip(&a.mul(q).div(b)?, q, k)?)
        .mul(&qpoch_recip(&a.mul(p).div(c)?, p, k)?)
        .mul(&qpoch_recip(&b.mul(c).mul(p), p, k)?);
    Ok(head.mul(&numer).mul(&denom).mul(&qk))
}

/// Indefinite two-base summation: returns both the finite sum of
/// [`indefinite_summand`] over k = 0..n and the closed-form quotient
/// `s_n`, for comparison.
pub fn indefinite_bibasic<F: Scalar>(
    a: &F,
    b: &F,
    c: &F,
    p: &F,
    q: &F,
    n: i64,
) -> Result<(F, F)> {
    let mut lhs = F::zero();
    for k in 0..=n {
        lhs = lhs.add(&indefinite_summand(a, b, c, p, q, k)?);
    }
    diag::add_series_terms((n + 1) as u64);
    let rhs = bibasic_sequence_term(a, b, c, p, q, n)?;
    Ok((lhs, rhs))
}

/// The b -> 0 limit of the indefinite sum:
/// `sum_k [(1-ap^k q^k)/(1-a)] (a;p)_k (c;q)_k c^-k / [(q;q)_k (ap/c;p)_k]
///  = (ap;p)_n (cq;q)_n c^-n / [(q;q)_n (ap/c;p)_n]`.
pub fn gosper_bibasic<F: Scalar>(a: &F, c: &F, p: &F, q: &F, n: i64) -> Result<(F, F)> {
    let mut lhs = F::zero();
    for k in 0..=n {
        let pk = p.powi(k)?;
        let qk = q.powi(k)?;
        let head = F::one().sub(&a.mul(&pk).mul(&qk)).div(&F::one().sub(a))?;
        let t = head
            .mul(&qpoch(a, p, k)?)
            .mul(&qpoch(c, q, k)?)
            .mul(&qpoch_recip(q, q, k)?)
            .mul(&qpoch_recip(&a.mul(p).div(c)?, p, k)?)
            .mul(&c.powi(-k)?);
        lhs = lhs.add(&t);
    }
    diag::add_series_terms((n + 1) as u64);
    let rhs = qpoch(&a.mul(p), p, n)?
        .mul(&qpoch(&c.mul(q), q, n)?)
        .mul(&qpoch_recip(q, q, n)?)
        .mul(&qpoch_recip(&a.mul(p).div(c)?, p, n)?)
        .mul(&c.powi(-n)?);
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// The extended sum with a shift parameter and a negative lower limit
// ---------------------------------------------------------------------------

/// One term of the extended two-base sum (shift parameter d, any integer
/// index k).
pub fn extended_summand<F: Scalar>(prm: &BibasicParams<F>, k: i64) -> Result<F> {
    let (a, b, c, d, p, q) = (&prm.a, &prm.b, &prm.c, &prm.d, &prm.p, &prm.q);
    let pk = p.powi(k)?;
    let qk = q.powi(k)?;
    let head = F::one()
        .sub(&a.mul(d).mul(&pk).mul(&qk))
        .mul(&F::one().sub(&b.mul(&pk).div(&d.mul(&qk))?))
        .div(&F::one().sub(&a.mul(d)).mul(&F::one().sub(&b.div(d)?)))?;
    let e = a.mul(d).mul(d).div(&b.mul(c))?;
    let numer = qpoch(a, p, k)?
        .mul(&qpoch(b, p, k)?)
        .mul(&qpoch(c, q, k)?)
        .mul(&qpoch(&e, q, k)?);
    let denom = qpoch_recip(&d.mul(q), q, k)?
        .mul(&qpoch_recip(&a.mul(d).mul(q).div(b)?, q, k)?)
        .mul(&qpoch_recip(&a.mul(d).mul(p).div(c)?, p, k)?)
        .mul(&qpoch_recip(&b.mul(c).mul(p).div(d)?, p, k)?)
        ;
    Ok(head.mul(&numer).mul(&denom).mul(&qk))
}

/// Closed form of the extended sum over k = -m..n: a prefactor times the
/// difference of the upper- and lower-boundary Pochhammer ratios.
pub fn extended_bibasic<F: Scalar>(
    prm: &BibasicParams<F>,
    n: i64,
    m: i64,
) -> Result<(F, F)> {
    if n < -m {
        return Err(QError::Domain(format!(
            "empty summation range: upper limit {n} below lower limit {}",
            -m
        )));
    }
    let mut lhs = F::zero();
    for k in -m..=n {
        lhs = lhs.add(&extended_summand(prm, k)?);
    }
    diag::add_series_terms((n + m + 1) as u64);
    let (a, b, c, d, p, q) = (&prm.a, &prm.b, &prm.c, &prm.d, &prm.p, &prm.q);
    let e = a.mul(d).mul(d).div(&b.mul(c))?;
    let prefactor = F::one()
        .sub(a)
        .mul(&F::one().sub(b))
        .mul(&F::one().sub(c))
        .mul(&F::one().sub(&e))
        .div(
            &d.mul(&F::one().sub(&a.mul(d)))
                .mul(&F::one().sub(&b.div(d)?))
                .mul(&F::one().sub(&c.div(d)?))
                .mul(&F::one().sub(&a.mul(d).div(&b.mul(c))?)),
        )?;
    let upper = qpoch(&a.mul(p), p, n)?
        .mul(&qpoch(&b.mul(p), p, n)?)
        .mul(&qpoch(&c.mul(q), q, n)?)
        .mul(&qpoch(&e.mul(q), q, n)?)
        .mul(&qpoch_recip(&d.mul(q), q, n)?)
        .mul(&qpoch_recip(&a.mul(d).mul(q).div(b)?, q, n)?)
        .mul(&qpoch_recip(&a.mul(d).mul(p).div(c)?, p, n)?)
        .mul(&qpoch_recip(&b.mul(c).mul(p).div(d)?, p, n)?);
    let lower = qpoch(&c.div(&a.mul(d))?, p, m + 1)?
        .mul(&qpoch(&d.div(&b.mul(c))?, p, m + 1)?)
        .mul(&qpoch(&d.recip()?, q, m + 1)?)
        .mul(&qpoch(&b.div(&a.mul(d))?, q, m + 1)?)
        .mul(&qpoch_recip(&c.recip()?, q, m + 1)?)
        .mul(&qpoch_recip(&b.mul(c).div(&a.mul(d).mul(d))?, q, m + 1)?)
        .mul(&qpoch_recip(&a.recip()?, p, m + 1)?)
        .mul(&qpoch_recip(&b.recip()?, p, m + 1)?);
    let rhs = prefactor.mul(&upper.sub(&lower));
    Ok((lhs, rhs))
}

/// Terminating case of the extended sum (the third numerator parameter
/// specialized to q^-n), whose closed form is a single ratio of four
/// linear factors:
/// `(1-d)(1-ad/b)(1-adq^n)(1-dq^n/b)
///  / [(1-ad)(1-d/b)(1-dq^n)(1-adq^n/b)]`.
pub fn terminating_extended_bibasic<F: Scalar>(
    a: &F,
    b: &F,
    d: &F,
    p: &F,
    q: &F,
    n: i64,
) -> Result<(F, F)> {
    let qn = q.powi(n)?;
    let mut lhs = F::zero();
    for k in 0..=n {
        let pk = p.powi(k)?;
        let qk = q.powi(k)?;
        let head = F::one()
            .sub(&a.mul(d).mul(&pk).mul(&qk))
            .mul(&F::one().sub(&b.mul(&pk).div(&d.mul(&qk))?))
            .div(&F::one().sub(&a.mul(d)).mul(&F::one().sub(&b.div(d)?)))?;
        let numer = qpoch(a, p, k)?
            .mul(&qpoch(b, p, k)?)
            .mul(&qpoch(&q.powi(-n)?, q, k)?)
            .mul(&qpoch(&a.mul(d).mul(d).mul(&qn).div(b)?, q, k)?);
        let denom = qpoch_recip(&d.mul(q), q, k)?
            .mul(&qpoch_recip(&a.mul(d).mul(q).div(b)?, q, k)?)
            .mul(&qpoch_recip(&a.mul(d).mul(p).mul(&qn), p, k)?)
            .mul(&qpoch_recip(&b.mul(p).div(&d.mul(&qn))?, p, k)?);
        lhs = lhs.add(&head.mul(&numer).mul(&denom).mul(&qk));
    }
    diag::add_series_terms((n + 1) as u64);
    let rhs = F::one()
        .sub(d)
        .mul(&F::one().sub(&a.mul(d).div(b)?))
        .mul(&F::one().sub(&a.mul(d).mul(&qn)))
        .mul(&F::one().sub(&d.mul(&qn).div(b)?))
        .div(
            &F::one()
                .sub(&a.mul(d))
                .mul(&F::one().sub(&d.div(b)?))
                .mul(&F::one().sub(&d.mul(&qn)))
                .mul(&F::one().sub(&a.mul(d).mul(&qn).div(b)?)),
        )?;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// The m -> infinity limit
// ---------------------------------------------------------------------------

/// Ratio of consecutive extended summands, `term_k / term_(k-1)`. Used to
/// walk the sum outward without forming the individually huge Pochhammer
/// values that appear at large negative k.
fn extended_term_ratio(prm: &BibasicParams<QComplex>, k: i64) -> Result<QComplex> {
    let (a, b, c, d, p, q) = (prm.a, prm.b, prm.c, prm.d, prm.p, prm.q);
    let e = a * d * d / (b * c);
    let pk = p.powi(k)?;
    let qk = q.powi(k)?;
    let pk1 = p.powi(k - 1)?;
    let qk1 = q.powi(k - 1)?;
    let head = (QComplex::ONE - a * d * pk * qk) * (QComplex::ONE - b * pk / (d * qk));
    let head_prev =
        (QComplex::ONE - a * d * pk1 * qk1) * (QComplex::ONE - b * pk1 / (d * qk1));
    let numer = (QComplex::ONE - a * pk1)
        * (QComplex::ONE - b * pk1)
        * (QComplex::ONE - c * qk1)
        * (QComplex::ONE - e * qk1);
    let denom = (QComplex::ONE - d * qk)
        * (QComplex::ONE - a * d * q / b * qk1)
        * (QComplex::ONE - a * d * p / c * pk1)
        * (QComplex::ONE - b * c * p / d * pk1)
        * head_prev;
    if denom.near_pole() {
        return Err(QError::Pole(format!(
            "vanishing factor in the term ratio at k = {k}"
        )));
    }
    Ok(head * numer * q / denom)
}

/// Evaluates both sides of the doubly infinite form of the extended sum:
/// the sum over k = -2M..n against the closed form whose lower boundary
/// ratio has become a ratio of infinite products. The partial sum at
/// depth M must already be at least as close as the one at depth 2M;
/// otherwise the outward tail is not converging and an error is raised.
pub fn bibasic_limit_both(
    prm: &BibasicParams<QComplex>,
    n: i64,
    depth_m: i64,
    tol: f64,
) -> Result<(QComplex, QComplex)> {
    let (a, b, c, d, p, q) = (prm.a, prm.b, prm.c, prm.d, prm.p, prm.q);
    if p.abs() >= 1.0 || q.abs() >= 1.0 {
        return Err(QError::Domain(
            "the doubly infinite sum requires |p| < 1 and |q| < 1".into(),
        ));
    }
    let e = a * d * d / (b * c);
    // closed form first, so truncation failures in the infinite products
    // surface before any summation work
    let prefactor = (QComplex::ONE - a)
        * (QComplex::ONE - b)
        * (QComplex::ONE - c)
        * (QComplex::ONE - e)
        / (d * (QComplex::ONE - a * d)
            * (QComplex::ONE - b / d)
            * (QComplex::ONE - c / d)
            * (QComplex::ONE - a * d / (b * c)));
    let upper = qpoch(&(a * p), &p, n)?
        * qpoch(&(b * p), &p, n)?
        * qpoch(&(c * q), &q, n)?
        * qpoch(&(e * q), &q, n)?
        * qpoch_recip(&(d * q), &q, n)?
        * qpoch_recip(&(a * d * q / b), &q, n)?
        * qpoch_recip(&(a * d * p / c), &p, n)?
        * qpoch_recip(&(b * c * p / d), &p, n)?;
    let lower = inf_many(&[c / (a * d), d / (b * c)], p)?
        * inf_many(&[QComplex::ONE / d, b / (a * d)], q)?
        / (inf_many(&[QComplex::ONE / c, b * c / (a * d * d)], q)?
            * inf_many(&[QComplex::ONE / a, QComplex::ONE / b], p)?);
    let rhs = prefactor * (upper - lower);

    // ascending part k = 0..n, then outward to k = -2M by term ratios
    let mut term = QComplex::ONE;
    let mut sum = term;
    for k in 1..=n {
        term = term * extended_term_ratio(prm, k)?;
        sum = sum + term;
    }
    let mut partial_m = QComplex::ZERO;
    term = QComplex::ONE;
    let mut tail = QComplex::ZERO;
    for j in 1..=(2 * depth_m) {
        term = term / extended_term_ratio(prm, 1 - j)?;
        tail = tail + term;
        if j == depth_m {
            partial_m = sum + tail;
        }
    }
    diag::add_series_terms((n + 2 * depth_m + 1) as u64);
    let partial_2m = sum + tail;
    let err_m = (partial_m - rhs).abs();
    let err_2m = (partial_2m - rhs).abs();
    if err_2m > err_m && err_2m > tol * (1.0 + rhs.abs()) {
        return Err(QError::Convergence(format!(
            "outward tail not decaying: depth {depth_m} error {err_m:.3e}, \
             depth {} error {err_2m:.3e}",
            2 * depth_m
        )));
    }
    Ok((partial_2m, rhs))
}

// ---------------------------------------------------------------------------
// Delta-function specializations
// ---------------------------------------------------------------------------

/// Finite sums equal to the Kronecker delta at n = 0. The id selects the
/// specialization; parameters not appearing in a given sum are ignored.
///
/// - `vwp_6phi5_delta`: terminating very-well-poised 6-series (uses a, b, q)
/// - `vwp_4phi3_delta`: its b -> 0 limit (uses a, q)
/// - `bibasic_delta`: two-base terminating sum (uses a, b, p, q)
/// - `inverse_pair_delta`: the commuted-product orthogonality sum
///   (uses a, b, p, q)
/// - `alsalam_verma_delta`: its b -> 0 limit (uses a, p, q)
pub fn delta_sum<F: Scalar>(id: &str, a: &F, b: &F, p: &F, q: &F, n: i64) -> Result<F> {
    let mut sum = F::zero();
    match id {
        "vwp_6phi5_delta" => {
            let qn = q.powi(n)?;
            for k in 0..=n {
                let head = F::one()
                    .sub(&a.mul(&q.powi(2 * k)?))
                    .div(&F::one().sub(a))?;
                let numer = qpoch(a, q, k)?
                    .mul(&qpoch(b, q, k)?)
                    .mul(&qpoch(&a.mul(&qn).div(b)?, q, k)?)
                    .mul(&qpoch(&q.powi(-n)?, q, k)?);
                let denom = qpoch_recip(q, q, k)?
                    .mul(&qpoch_recip(&a.mul(q).div(b)?, q, k)?)
                    .mul(&qpoch_recip(&b.mul(q).div(&qn)?, q, k)?)
                    .mul(&qpoch_recip(&a.mul(q).mul(&qn), q, k)?);
                sum = sum.add(&head.mul(&numer).mul(&denom).mul(&q.powi(k)?));
            }
        }
        "vwp_4phi3_delta" => {
            for k in 0..=n {
                let head = F::one()
                    .sub(&a.mul(&q.powi(2 * k)?))
                    .div(&F::one().sub(a))?;
                let numer = qpoch(a, q, k)?.mul(&qpoch(&q.powi(-n)?, q, k)?);
                let denom = qpoch_recip(q, q, k)?
                    .mul(&qpoch_recip(&a.mul(&q.powi(n + 1)?), q, k)?);
                sum = sum.add(&head.mul(&numer).mul(&denom).mul(&q.powi(n * k)?));
            }
        }
        "bibasic_delta" => {
            let qn = q.powi(n)?;
            for k in 0..=n {
                let pk = p.powi(k)?;
                let qk = q.powi(k)?;
                let head = F::one()
                    .sub(&a.mul(&pk).mul(&qk))
                    .mul(&F::one().sub(&b.mul(&pk).div(&qk)?))
                    .div(&F::one().sub(a).mul(&F::one().sub(b)))?;
                let numer = qpoch(a, p, k)?
                    .mul(&qpoch(b, p, k)?)
                    .mul(&qpoch(&q.powi(-n)?, q, k)?)
                    .mul(&qpoch(&a.mul(&qn).div(b)?, q, k)?);
                let denom = qpoch_recip(q, q, k)?
                    .mul(&qpoch_recip(&a.mul(q).div(b)?, q, k)?)
                    .mul(&qpoch_recip(&a.mul(p).mul(&qn), p, k)?)
                    .mul(&qpoch_recip(&b.mul(p).div(&qn)?, p, k)?);
                sum = sum.add(&head.mul(&numer).mul(&denom).mul(&qk));
            }
        }
        "inverse_pair_delta" => {
            for k in 0..=n {
                let qk = q.powi(k)?;
                let t = qpoch(&a.mul(&qk), p, n - 1)?
                    .mul(&qpoch(&b.div(&qk)?, p, n - 1)?)
                    .mul(&F::one().sub(&a.mul(&q.powi(2 * k)?).div(b)?))
                    .mul(&qpoch_recip(q, q, k)?)
                    .mul(&qpoch_recip(q, q, n - k)?)
                    .mul(&qpoch_recip(&a.mul(&qk).div(b)?, q, n + 1)?)
                    .mul(&F::from_int(-1).powi(k)?)
                    .mul(&q.powi(triangle(k))?);
                sum = sum.add(&t);
            }
            let scale = F::one()
                .sub(&a.div(p)?)
                .mul(&F::one().sub(&b.div(p)?));
            sum = scale.mul(&sum);
        }
        "alsalam_verma_delta" => {
            for k in 0..=n {
                let t = qpoch(&a.mul(&q.powi(k)?), p, n - 1)?
                    .mul(&qpoch_recip(q, q, k)?)
                    .mul(&qpoch_recip(q, q, n - k)?)
                    .mul(&F::from_int(-1).powi(k)?)
                    .mul(&q.powi(triangle(n - k))?);
                sum = sum.add(&t);
            }
            sum = F::one().sub(&a.div(p)?).mul(&sum);
        }
        other => return Err(QError::UnknownIdentity(other.to_string())),
    }
    diag::add_series_terms((n + 1) as u64);
    Ok(sum)
}

// ---------------------------------------------------------------------------
// The polynomial factorization behind the telescoping
// ---------------------------------------------------------------------------

/// The four-variable factorization underlying the summand difference:
/// `(1-a)(1-b)(1-c)(1-ad^2/bc) - (1-d)(1-ad/b)(1-ad/c)(1-bc/d)
///  = (1-ad)(1-b/d)(1-ad/bc)(d-c)`.
/// Returns whether both sides agree (exactly in rational mode).
pub fn factorization_check<F: Scalar>(a: &F, b: &F, c: &F, d: &F) -> bool {
    let lhs = (|| -> Result<F> {
        let first = F::one()
            .sub(a)
            .mul(&F::one().sub(b))
            .mul(&F::one().sub(c))
            .mul(&F::one().sub(&a.mul(d).mul(d).div(&b.mul(c))?));
        let second = F::one()
            .sub(d)
            .mul(&F::one().sub(&a.mul(d).div(b)?))
            .mul(&F::one().sub(&a.mul(d).div(c)?))
            .mul(&F::one().sub(&b.mul(c).div(d)?));
        Ok(first.sub(&second))
    })();
    let rhs = (|| -> Result<F> {
        Ok(F::one()
            .sub(&a.mul(d))
            .mul(&F::one().sub(&b.div(d)?))
            .mul(&F::one().sub(&a.mul(d).div(&b.mul(c))?))
            .mul(&d.sub(c)))
    })();
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.is_near(&r) || l.sub(&r).is_zero(),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Triangular matrix-inverse pair
// ---------------------------------------------------------------------------

/// A pair of lower-triangular matrices that are two-sided inverses of one
/// another; the defining orthogonality is the terminating two-base delta
/// sum re-indexed.
#[derive(Clone, Debug)]
pub struct TriangularPair<F: Scalar> {
    pub a: Vec<Vec<F>>,
    pub b: Vec<Vec<F>>,
    pub size: usize,
}

fn matrix_product<F: Scalar>(x: &[Vec<F>], y: &[Vec<F>], n: usize) -> Vec<Vec<F>> {
    let mut out = vec![vec![F::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            let mut acc = F::zero();
            for k in 0..n {
                acc = acc.add(&x[i][k].mul(&y[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

impl<F: Scalar> TriangularPair<F> {
    pub fn ab_product(&self) -> Vec<Vec<F>> {
        matrix_product(&self.a, &self.b, self.size)
    }

    pub fn ba_product(&self) -> Vec<Vec<F>> {
        matrix_product(&self.b, &self.a, self.size)
    }

    /// Largest modulus of an off-identity entry over both product orders.
    pub fn max_identity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for prod in [self.ab_product(), self.ba_product()] {
            for (i, row) in prod.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let target = if i == j { F::one() } else { F::zero() };
                    worst = worst.max(v.sub(&target).modulus());
                }
            }
        }
        worst
    }
}

/// Builds the inverse pair of order N with entries
/// `a_nj = (-1)^(n+j) (1-ap^j q^j)(1-bp^j q^-j) (apq^n, bpq^-n;p)_(n-1)
///         / [(q;q)_(n-j) (apq^n, bpq^-n;p)_j (bq^(1-2n)/a;q)_(n-j)]`
/// and
/// `b_jm = (ap^m q^m, bp^m q^-m;p)_(j-m) / [(q, aq^(1+2m)/b;q)_(j-m)]
///         (-(a/b) q^(1+2m))^(j-m) q^(2 tri(j-m))`,
/// zero above the diagonal.
pub fn build_inverse_pair<F: Scalar>(
    a: &F,
    b: &F,
    p: &F,
    q: &F,
    size: usize,
) -> Result<TriangularPair<F>> {
    let mut mat_a = vec![vec![F::zero(); size]; size];
    let mut mat_b = vec![vec![F::zero(); size]; size];
    for n in 0..size {
        for j in 0..=n {
            let (ni, ji) = (n as i64, j as i64);
            let apq = a.mul(p).mul(&q.powi(ni)?);
            let bpq = b.mul(p).mul(&q.powi(-ni)?);
            let head = F::one()
                .sub(&a.mul(&p.powi(ji)?).mul(&q.powi(ji)?))
                .mul(&F::one().sub(&b.mul(&p.powi(ji)?).mul(&q.powi(-ji)?)));
            let numer = qpoch(&apq, p, ni - 1)?.mul(&qpoch(&bpq, p, ni - 1)?);
            let denom = qpoch_recip(q, q, ni - ji)?
                .mul(&qpoch_recip(&apq, p, ji)?)
                .mul(&qpoch_recip(&bpq, p, ji)?)
                .mul(&qpoch_recip(&b.mul(&q.powi(1 - 2 * ni)?).div(a)?, q, ni - ji)?);
            mat_a[n][j] = F::from_int(-1)
                .powi(ni + ji)?
                .mul(&head)
                .mul(&numer)
                .mul(&denom);
        }
    }
    for j in 0..size {
        for m in 0..=j {
            let (ji, mi) = (j as i64, m as i64);
            let apm = a.mul(&p.powi(mi)?).mul(&q.powi(mi)?);
            let bpm = b.mul(&p.powi(mi)?).mul(&q.powi(-mi)?);
            let numer = qpoch(&apm, p, ji - mi)?.mul(&qpoch(&bpm, p, ji - mi)?);
            let denom = qpoch_recip(q, q, ji - mi)?
                .mul(&qpoch_recip(&a.mul(&q.powi(1 + 2 * mi)?).div(b)?, q, ji - mi)?);
            let geometric = a
                .div(b)?
                .mul(&q.powi(1 + 2 * mi)?)
                .neg()
                .powi(ji - mi)?
                .mul(&q.powi(2 * triangle(ji - mi))?);
            mat_b[j][m] = numer.mul(&denom).mul(&geometric);
        }
    }
    Ok(TriangularPair {
        a: mat_a,
        b: mat_b,
        size,
    })
}

// ---------------------------------------------------------------------------
// Verification registry (float mode)
// ---------------------------------------------------------------------------

/// One verifiable two-base summation, with a float sampling domain for
/// the harness; the exact rational mode of the same functions is the
/// primary test path.
pub struct BibasicCheck {
    pub id: &'static str,
    pub title: &'static str,
    pub param_names: &'static [&'static str],
    pub constraints: &'static str,
    pub domain: ParamDomain,
    pub eval: fn(&SampleParams, f64) -> Result<(QComplex, QComplex)>,
}

fn md(name: &'static str, min: f64, max: f64) -> (&'static str, ParamKind) {
    (name, ParamKind::Modulus { min, max })
}

fn int(name: &'static str, lo: i64, hi: i64) -> (&'static str, ParamKind) {
    (name, ParamKind::Integer { lo, hi })
}

fn away(x: QComplex, margin: f64) -> bool {
    (QComplex::ONE - x).abs() >= margin
}

/// Collision guard for negative-index factorials and reciprocal-argument
/// products: x must stay away from every power base^j, j = 0..=depth.
fn coll_ok(x: QComplex, base: QComplex, depth: i64, margin: f64) -> bool {
    let mut w = QComplex::ONE;
    for _ in 0..=depth {
        if (x - w).abs() < margin {
            return false;
        }
        w = w * base;
    }
    true
}

fn float_params(s: &SampleParams) -> BibasicParams<QComplex> {
    BibasicParams {
        a: s.c("a"),
        b: s.c("b"),
        c: s.c("c"),
        d: s.c("d"),
        p: s.c("p"),
        q: s.c("q"),
    }
}

fn build_bibasic_checks() -> Vec<BibasicCheck> {
    vec![
        BibasicCheck {
            id: "indefinite_bibasic",
            title: "indefinite two-base summation against its telescoped closed form",
            param_names: &["a", "b", "c", "p", "q", "n"],
            constraints: "denominator factorials kept away from zero over the \
                          summation range",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.75),
                md("b", 0.1, 0.75),
                md("c", 0.1, 0.75),
                md("p", 0.15, 0.6),
                md("q", 0.15, 0.6),
                int("n", 0, 6),
            ])
            .with_constraint(|s| {
                let (a, b, c, p, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("p"), s.c("q"));
                let n = s.int("n");
                away(a, 0.1)
                    && away(b, 0.1)
                    && fin_ok(a * q / b, q, n + 1, 0.05)
                    && fin_ok(a * p / c, p, n + 1, 0.05)
                    && fin_ok(b * c * p, p, n + 1, 0.05)
            }),
            eval: |s, _tol| {
                let (a, b, c, p, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("p"), s.c("q"));
                indefinite_bibasic(&a, &b, &c, &p, &q, s.int("n"))
            },
        },
        BibasicCheck {
            id: "gosper_bibasic",
            title: "two-base summation with the second numerator parameter removed",
            param_names: &["a", "c", "p", "q", "n"],
            constraints: "denominator factorials kept away from zero",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.75),
                md("c", 0.1, 0.75),
                md("p", 0.15, 0.6),
                md("q", 0.15, 0.6),
                int("n", 0, 6),
            ])
            .with_constraint(|s| {
                let (a, c, p) = (s.c("a"), s.c("c"), s.c("p"));
                away(a, 0.1) && fin_ok(a * p / c, p, s.int("n") + 1, 0.05)
            }),
            eval: |s, _tol| {
                let (a, c, p, q) = (s.c("a"), s.c("c"), s.c("p"), s.c("q"));
                gosper_bibasic(&a, &c, &p, &q, s.int("n"))
            },
        },
        BibasicCheck {
            id: "extended_bibasic",
            title: "shifted two-base summation over a two-sided index range",
            param_names: &["a", "b", "c", "d", "p", "q", "n", "m"],
            constraints: "shift parameter away from 1 and from the third \
                          numerator parameter; boundary factorials away from \
                          zero over -m..n",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("b", 0.1, 0.7),
                md("c", 0.1, 0.7),
                md("d", 0.2, 0.8),
                md("p", 0.2, 0.55),
                md("q", 0.2, 0.55),
                int("n", 0, 4),
                int("m", 0, 3),
            ])
            .with_constraint(|s| {
                let prm = float_params(s);
                let (a, b, c, d, p, q) = (prm.a, prm.b, prm.c, prm.d, prm.p, prm.q);
                let (n, m) = (s.int("n"), s.int("m"));
                let e = a * d * d / (b * c);
                away(d, 0.1)
                    && (d - c).abs() >= 0.08
                    && away(a * d, 0.05)
                    && away(b / d, 0.05)
                    && away(c / d, 0.05)
                    && away(a * d / (b * c), 0.05)
                    && away(e, 0.05)
                    && fin_ok(d * q, q, n + 1, 0.05)
                    && fin_ok(a * d * q / b, q, n + 1, 0.05)
                    && fin_ok(a * d * p / c, p, n + 1, 0.05)
                    && fin_ok(b * c * p / d, p, n + 1, 0.05)
                    && coll_ok(a, p, m + 1, 0.05)
                    && coll_ok(b, p, m + 1, 0.05)
                    && coll_ok(c, q, m + 1, 0.05)
                    && coll_ok(e, q, m + 1, 0.05)
            }),
            eval: |s, _tol| extended_bibasic(&float_params(s), s.int("n"), s.int("m")),
        },
        BibasicCheck {
            id: "terminating_extended_bibasic",
            title: "terminating shifted two-base summation with a four-factor closed form",
            param_names: &["a", "b", "d", "p", "q", "n"],
            constraints: "shift parameter away from 1; closed-form factors and \
                          denominator factorials away from zero",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("b", 0.1, 0.7),
                md("d", 0.2, 0.8),
                md("p", 0.2, 0.55),
                md("q", 0.2, 0.55),
                int("n", 0, 5),
            ])
            .with_constraint(|s| {
                let (a, b, d, p, q) = (s.c("a"), s.c("b"), s.c("d"), s.c("p"), s.c("q"));
                let n = s.int("n");
                let qn = q.powi(n).unwrap();
                away(a * d, 0.05)
                    && away(b / d, 0.05)
                    && away(d / b, 0.05)
                    && away(d * qn, 0.05)
                    && away(a * d * qn / b, 0.05)
                    && fin_ok(d * q, q, n + 1, 0.05)
                    && fin_ok(a * d * q / b, q, n + 1, 0.05)
                    && fin_ok(a * d * p * qn, p, n + 1, 0.05)
                    && fin_ok(b * p / (d * qn), p, n + 1, 0.05)
            }),
            eval: |s, _tol| {
                let (a, b, d, p, q) = (s.c("a"), s.c("b"), s.c("d"), s.c("p"), s.c("q"));
                terminating_extended_bibasic(&a, &b, &d, &p, &q, s.int("n"))
            },
        },
        BibasicCheck {
            id: "vwp_6phi5_delta",
            title: "terminating very-well-poised series summing to the Kronecker delta",
            param_names: &["a", "b", "q", "n"],
            constraints: "denominator factorials away from zero",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("b", 0.1, 0.7),
                md("q", 0.35, 0.7),
                int("n", 0, 4),
            ])
            .with_constraint(|s| {
                let (a, b, q) = (s.c("a"), s.c("b"), s.c("q"));
                let n = s.int("n");
                let qn = q.powi(n).unwrap();
                away(a, 0.1)
                    && fin_ok(a * q / b, q, n + 1, 0.05)
                    && fin_ok(b * q / qn, q, n + 1, 0.05)
                    && fin_ok(a * q * qn, q, n + 1, 0.05)
            }),
            eval: |s, _tol| {
                let n = s.int("n");
                let v = delta_sum("vwp_6phi5_delta", &s.c("a"), &s.c("b"), &s.c("q"), &s.c("q"), n)?;
                Ok((v, if n == 0 { QComplex::ONE } else { QComplex::ZERO }))
            },
        },
        BibasicCheck {
            id: "vwp_4phi3_delta",
            title: "limit case of the very-well-poised delta sum",
            param_names: &["a", "q", "n"],
            constraints: "denominator factorials away from zero",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("q", 0.35, 0.7),
                int("n", 0, 5),
            ])
            .with_constraint(|s| {
                let (a, q) = (s.c("a"), s.c("q"));
                away(a, 0.1) && fin_ok(a * q.powi(s.int("n") + 1).unwrap(), q, s.int("n") + 1, 0.05)
            }),
            eval: |s, _tol| {
                let n = s.int("n");
                let a = s.c("a");
                let v = delta_sum("vwp_4phi3_delta", &a, &a, &s.c("q"), &s.c("q"), n)?;
                Ok((v, if n == 0 { QComplex::ONE } else { QComplex::ZERO }))
            },
        },
        BibasicCheck {
            id: "bibasic_delta",
            title: "terminating two-base summation equal to the Kronecker delta",
            param_names: &["a", "b", "p", "q", "n"],
            constraints: "denominator factorials away from zero",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("b", 0.1, 0.7),
                md("p", 0.3, 0.6),
                md("q", 0.35, 0.7),
                int("n", 0, 4),
            ])
            .with_constraint(|s| {
                let (a, b, p, q) = (s.c("a"), s.c("b"), s.c("p"), s.c("q"));
                let n = s.int("n");
                let qn = q.powi(n).unwrap();
                away(a, 0.1)
                    && away(b, 0.1)
                    && fin_ok(a * q / b, q, n + 1, 0.05)
                    && fin_ok(a * p * qn, p, n + 1, 0.05)
                    && fin_ok(b * p / qn, p, n + 1, 0.05)
            }),
            eval: |s, _tol| {
                let n = s.int("n");
                let v = delta_sum("bibasic_delta", &s.c("a"), &s.c("b"), &s.c("p"), &s.c("q"), n)?;
                Ok((v, if n == 0 { QComplex::ONE } else { QComplex::ZERO }))
            },
        },
        BibasicCheck {
            id: "inverse_pair_delta",
            title: "orthogonality sum from commuting the inverse pair",
            param_names: &["a", "b", "p", "q", "n"],
            constraints: "the ratio a/b away from inverse powers of q over the \
                          index range",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("b", 0.1, 0.7),
                md("p", 0.3, 0.6),
                md("q", 0.35, 0.7),
                int("n", 0, 4),
            ])
            .with_constraint(|s| {
                let (a, b, p, q) = (s.c("a"), s.c("b"), s.c("p"), s.c("q"));
                let n = s.int("n");
                (a - p).abs() >= 0.05
                    && (b - p).abs() >= 0.05
                    && fin_ok(a / b, q, 2 * n + 2, 0.05)
            }),
            eval: |s, _tol| {
                let n = s.int("n");
                let v = delta_sum("inverse_pair_delta", &s.c("a"), &s.c("b"), &s.c("p"), &s.c("q"), n)?;
                Ok((v, if n == 0 { QComplex::ONE } else { QComplex::ZERO }))
            },
        },
        BibasicCheck {
            id: "alsalam_verma_delta",
            title: "limit case of the orthogonality delta sum",
            param_names: &["a", "p", "q", "n"],
            constraints: "a away from p",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.7),
                md("p", 0.3, 0.6),
                md("q", 0.35, 0.7),
                int("n", 0, 5),
            ])
            .with_constraint(|s| (s.c("a") - s.c("p")).abs() >= 0.05),
            eval: |s, _tol| {
                let n = s.int("n");
                let a = s.c("a");
                let v = delta_sum("alsalam_verma_delta", &a, &a, &s.c("p"), &s.c("q"), n)?;
                Ok((v, if n == 0 { QComplex::ONE } else { QComplex::ZERO }))
            },
        },
        BibasicCheck {
            id: "inverse_matrix_pair",
            title: "triangular matrix pair multiplying to the identity in both orders",
            param_names: &["a", "b", "p", "q", "N"],
            constraints: "entry denominators away from zero; entry magnitudes \
                          kept moderate",
            domain: ParamDomain::new(vec![
                md("a", 0.15, 0.7),
                md("b", 0.15, 0.7),
                md("p", 0.3, 0.6),
                md("q", 0.4, 0.7),
                int("N", 1, 6),
            ])
            .with_constraint(|s| {
                let (a, b, p, q) = (s.c("a"), s.c("b"), s.c("p"), s.c("q"));
                match build_inverse_pair(&a, &b, &p, &q, s.int("N") as usize) {
                    Ok(pair) => pair
                        .a
                        .iter()
                        .chain(pair.b.iter())
                        .flatten()
                        .all(|v| v.is_finite() && v.abs() <= 1e4),
                    Err(_) => false,
                }
            }),
            eval: |s, _tol| {
                let pair = build_inverse_pair(
                    &s.c("a"),
                    &s.c("b"),
                    &s.c("p"),
                    &s.c("q"),
                    s.int("N") as usize,
                )?;
                Ok((
                    QComplex::real(pair.max_identity_deviation()),
                    QComplex::ZERO,
                ))
            },
        },
        BibasicCheck {
            id: "bibasic_limit",
            title: "doubly infinite two-base summation against its product closed form",
            param_names: &["a", "b", "c", "d", "p", "q", "n"],
            constraints: "as for the two-sided sum, with the collision guard \
                          extended over the outward tail depth",
            domain: ParamDomain::new(vec![
                md("a", 0.15, 0.6),
                md("b", 0.15, 0.6),
                md("c", 0.15, 0.6),
                md("d", 0.25, 0.75),
                md("p", 0.25, 0.5),
                md("q", 0.25, 0.5),
                int("n", 0, 3),
            ])
            .with_constraint(|s| {
                let prm = float_params(s);
                let (a, b, c, d, p, q) = (prm.a, prm.b, prm.c, prm.d, prm.p, prm.q);
                let n = s.int("n");
                let e = a * d * d / (b * c);
                away(d, 0.1)
                    && (d - c).abs() >= 0.08
                    && away(a * d, 0.05)
                    && away(b / d, 0.05)
                    && away(c / d, 0.05)
                    && away(a * d / (b * c), 0.05)
                    && away(e, 0.05)
                    && fin_ok(d * q, q, n + 1, 0.05)
                    && fin_ok(a * d * q / b, q, n + 1, 0.05)
                    && fin_ok(a * d * p / c, p, n + 1, 0.05)
                    && fin_ok(b * c * p / d, p, n + 1, 0.05)
                    && coll_ok(a, p, 45, 0.04)
                    && coll_ok(b, p, 45, 0.04)
                    && coll_ok(c, q, 45, 0.04)
                    && coll_ok(e, q, 45, 0.04)
            }),
            eval: |s, tol| bibasic_limit_both(&float_params(s), s.int("n"), 20, tol),
        },
    ]
}

/// The two-base summation checks, in stable declaration order.
pub fn bibasic_checks() -> &'static [BibasicCheck] {
    static CHECKS: OnceLock<Vec<BibasicCheck>> = OnceLock::new();
    CHECKS.get_or_init(build_bibasic_checks)
}

pub fn lookup_bibasic(id: &str) -> Result<&'static BibasicCheck> {
    bibasic_checks()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Verifies one two-base summation at one parameter point. Evaluation
/// errors are recorded in the report rather than thrown.
pub fn bibasic_check(id: &str, params: &SampleParams, tol: f64) -> VerificationReport {
    diag::reset();
    let outcome = (|| {
        let check = lookup_bibasic(id)?;
        if let Some(constraint) = check.domain.constraint {
            if !constraint(params) {
                return Err(QError::Domain(format!(
                    "parameters violate the domain constraints of {id}"
                )));
            }
        }
        (check.eval)(params, tol)
    })();
    build_report(id, params, outcome, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{sample, substream};
    use crate::scalar::Rat;
    use proptest::prelude::*;

    fn qc(x: f64) -> QComplex {
        QComplex::real(x)
    }

    fn rat_point() -> (Rat, Rat, Rat, Rat, Rat) {
        (
            Rat::new(3, 10),
            Rat::new(1, 5),
            Rat::new(2, 5),
            Rat::new(3, 5),
            Rat::new(1, 2),
        )
    }

    // -- telescoping structure ---------------------------------------------

    #[test]
    fn sequence_vanishes_below_the_lower_limit() {
        let (a, b, c, p, q) = rat_point();
        for k in [-1i64, -2, -4] {
            assert!(bibasic_sequence_term(&a, &b, &c, &p, &q, k)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn summand_telescopes_the_sequence_exactly() {
        let (a, b, c, p, q) = rat_point();
        for k in 0..=8i64 {
            let delta = bibasic_sequence_term(&a, &b, &c, &p, &q, k)
                .unwrap()
                .sub(&bibasic_sequence_term(&a, &b, &c, &p, &q, k - 1).unwrap());
            assert_eq!(
                delta,
                indefinite_summand(&a, &b, &c, &p, &q, k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn indefinite_sum_matches_closed_form_exactly() {
        let (a, b, c, p, q) = rat_point();
        for n in 0..=6i64 {
            let (lhs, rhs) = indefinite_bibasic(&a, &b, &c, &p, &q, n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        // n = 0 is the single k = 0 term, equal to 1 on both sides
        let (lhs, rhs) = indefinite_bibasic(&a, &b, &c, &p, &q, 0).unwrap();
        assert_eq!(lhs, Rat::one());
        assert_eq!(rhs, Rat::one());
    }

    #[test]
    fn equal_bases_with_terminating_parameter_collapse_to_the_delta_sum() {
        // third parameter a power 1/q^n with both bases equal: the sum
        // becomes the terminating very-well-poised delta sum, term by term
        let a = Rat::new(3, 10);
        let b = Rat::new(1, 5);
        let q = Rat::new(1, 2);
        for n in [2i64, 3] {
            let c = q.powi(-n).unwrap();
            let qn = q.powi(n).unwrap();
            for k in 0..=n {
                let general = indefinite_summand(&a, &b, &c, &q, &q, k).unwrap();
                let head = Rat::one()
                    .sub(&a.mul(&q.powi(2 * k).unwrap()))
                    .div(&Rat::one().sub(&a))
                    .unwrap();
                let direct = head
                    .mul(&qpoch(&a, &q, k).unwrap())
                    .mul(&qpoch(&b, &q, k).unwrap())
                    .mul(&qpoch(&a.mul(&qn).div(&b).unwrap(), &q, k).unwrap())
                    .mul(&qpoch(&q.powi(-n).unwrap(), &q, k).unwrap())
                    .mul(&qpoch_recip(&q, &q, k).unwrap())
                    .mul(&qpoch_recip(&a.mul(&q).div(&b).unwrap(), &q, k).unwrap())
                    .mul(&qpoch_recip(&b.mul(&q).div(&qn).unwrap(), &q, k).unwrap())
                    .mul(&qpoch_recip(&a.mul(&q).mul(&qn), &q, k).unwrap())
                    .mul(&q.powi(k).unwrap());
                assert_eq!(general, direct, "n = {n}, k = {k}");
            }
            let (lhs, rhs) = indefinite_bibasic(&a, &b, &c, &q, &q, n).unwrap();
            assert!(lhs.is_zero(), "n = {n}");
            assert!(rhs.is_zero(), "n = {n}");
            assert_eq!(
                delta_sum("vwp_6phi5_delta", &a, &b, &q, &q, n).unwrap(),
                Rat::zero()
            );
        }
    }

    // -- limit and extension -----------------------------------------------

    #[test]
    fn gosper_form_is_exact_and_matches_the_vanishing_parameter_limit() {
        let a = Rat::new(3, 10);
        let c = Rat::new(2, 5);
        let p = Rat::new(3, 5);
        let q = Rat::new(1, 2);
        for n in 0..=5i64 {
            let (lhs, rhs) = gosper_bibasic(&a, &c, &p, &q, n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        // float probe: the full sum at b = 1e-8 approaches the reduced sum
        let (full, _) =
            indefinite_bibasic(&qc(0.3), &qc(1e-8), &qc(0.4), &qc(0.6), &qc(0.5), 4).unwrap();
        let (reduced, _) = gosper_bibasic(&qc(0.3), &qc(0.4), &qc(0.6), &qc(0.5), 4).unwrap();
        assert!(full.approx_eq(reduced, 1e-6), "{full} vs {reduced}");
    }

    #[test]
    fn extended_sum_is_exact_in_rational_mode() {
        let prm = BibasicParams {
            a: Rat::new(3, 10),
            b: Rat::new(1, 5),
            c: Rat::new(2, 5),
            d: Rat::new(3, 4),
            p: Rat::new(3, 5),
            q: Rat::new(1, 2),
        };
        let (lhs, rhs) = extended_bibasic(&prm, 0, 0).unwrap();
        assert_eq!(lhs, Rat::one());
        assert_eq!(lhs, rhs);
        for (n, m) in [(3i64, 2i64), (4, 1), (2, 3)] {
            let (lhs, rhs) = extended_bibasic(&prm, n, m).unwrap();
            assert_eq!(lhs, rhs, "n = {n}, m = {m}");
        }
    }

    #[test]
    fn extended_sum_is_continuous_through_the_unit_shift() {
        // the closed form has cancelling unit-shift factors, so values on
        // either side of d = 1 must agree to first order
        let mut values = Vec::new();
        for &d in &[0.999, 1.001] {
            let prm = BibasicParams {
                a: qc(0.3),
                b: qc(0.2),
                c: qc(0.4),
                d: qc(d),
                p: qc(0.6),
                q: qc(0.5),
            };
            let (lhs, rhs) = extended_bibasic(&prm, 3, 2).unwrap();
            assert!(lhs.approx_eq(rhs, 1e-10), "d = {d}: {lhs} vs {rhs}");
            values.push(lhs);
        }
        assert!((values[0] - values[1]).abs() < 0.05);
    }

    #[test]
    fn outward_limit_reproduces_the_product_closed_form() {
        let prm = BibasicParams {
            a: qc(0.3),
            b: qc(0.25),
            c: qc(0.45),
            d: qc(0.7),
            p: qc(0.4),
            q: qc(0.35),
        };
        let (lhs, rhs) = bibasic_limit_both(&prm, 2, 20, 1e-9).unwrap();
        assert!(lhs.approx_eq(rhs, 1e-9), "{lhs} vs {rhs}");
        // the n = 0 instance also holds
        let (lhs, rhs) = bibasic_limit_both(&prm, 0, 20, 1e-9).unwrap();
        assert!(lhs.approx_eq(rhs, 1e-9), "{lhs} vs {rhs}");
    }

    #[test]
    fn outward_limit_surfaces_truncation_for_bases_near_one() {
        let prm = BibasicParams {
            a: qc(0.3),
            b: qc(0.25),
            c: qc(0.45),
            d: qc(0.7),
            p: qc(0.999_999_99),
            q: qc(0.35),
        };
        assert!(matches!(
            bibasic_limit_both(&prm, 2, 20, 1e-9),
            Err(QError::Truncation(_))
        ));
    }

    // -- delta sums ---------------------------------------------------------

    #[test]
    fn delta_sums_are_exactly_kronecker_in_rational_mode() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 5);
        let p = Rat::new(1, 2);
        let q = Rat::new(1, 3);
        for id in [
            "vwp_6phi5_delta",
            "vwp_4phi3_delta",
            "bibasic_delta",
            "inverse_pair_delta",
            "alsalam_verma_delta",
        ] {
            assert_eq!(delta_sum(id, &a, &b, &p, &q, 0).unwrap(), Rat::one(), "{id}");
            for n in 1..=4i64 {
                assert_eq!(
                    delta_sum(id, &a, &b, &p, &q, n).unwrap(),
                    Rat::zero(),
                    "{id} at n = {n}"
                );
            }
        }
        // the two spec-pinned exact points
        assert_eq!(
            delta_sum("inverse_pair_delta", &a, &b, &p, &q, 4).unwrap(),
            Rat::zero()
        );
        assert_eq!(
            delta_sum(
                "alsalam_verma_delta",
                &Rat::new(1, 4),
                &Rat::new(1, 4),
                &Rat::new(2, 3),
                &Rat::new(1, 2),
                5
            )
            .unwrap(),
            Rat::zero()
        );
        assert!(matches!(
            delta_sum("missing", &a, &b, &p, &q, 1),
            Err(QError::UnknownIdentity(_))
        ));
    }

    // -- factorization -------------------------------------------------------

    #[test]
    fn factorization_holds_at_random_rational_points() {
        let mut rng = substream(11, "factorization");
        let dom = ParamDomain::new(vec![
            ("x", ParamKind::Integer { lo: -6, hi: 6 }),
            ("y", ParamKind::Integer { lo: 2, hi: 7 }),
        ]);
        let draw = |rng: &mut _| -> Rat {
            loop {
                let s = sample(&dom, rng).unwrap();
                if s.int("x") != 0 {
                    return Rat::new(s.int("x"), s.int("y"));
                }
            }
        };
        for _ in 0..20 {
            let (a, b, c, d) = (
                draw(&mut rng),
                draw(&mut rng),
                draw(&mut rng),
                draw(&mut rng),
            );
            assert!(factorization_check(&a, &b, &c, &d), "{a:?} {b:?} {c:?} {d:?}");
        }
        // degenerate slices
        assert!(factorization_check(&Rat::new(1, 3), &Rat::new(1, 5), &Rat::new(2, 5), &Rat::one()));
        assert!(factorization_check(&Rat::zero(), &Rat::new(1, 5), &Rat::new(2, 5), &Rat::new(1, 2)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn factorization_holds_over_the_complex_plane(
            ar in -1.5f64..1.5, ai in -1.0f64..1.0,
            br in 0.1f64..1.5, cr in 0.1f64..1.5, dr in 0.1f64..1.5,
        ) {
            let a = QComplex::new(ar, ai);
            prop_assert!(factorization_check(&a, &qc(br), &qc(cr), &qc(dr)));
        }
    }

    #[test]
    fn minimal_vwp_summation_case_follows_from_the_factorization() {
        // the one-term instance of the terminating very-well-poised
        // summation carries the same polynomial content as the four-factor
        // identity; both must hold simultaneously at shared rational draws
        let mut rng = substream(17, "minimal_vwp");
        let dom = ParamDomain::new(vec![
            ("x", ParamKind::Integer { lo: 1, hi: 6 }),
            ("y", ParamKind::Integer { lo: 2, hi: 7 }),
        ]);
        let draw = |rng: &mut _| -> Rat {
            let s = sample(&dom, rng).unwrap();
            Rat::new(s.int("x"), s.int("y"))
        };
        let mut checked = 0;
        while checked < 20 {
            let (a, b, c, d, q) = (
                draw(&mut rng),
                draw(&mut rng),
                draw(&mut rng),
                draw(&mut rng),
                draw(&mut rng),
            );
            // one-term summation: e closes the parameter product
            let e = match a.mul(&a).mul(&q).mul(&q).div(&b.mul(&c).mul(&d)) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let t1 = (|| -> Result<Rat> {
                // the (1-a) in the well-poised head cancels against the
                // leading numerator factorial, leaving a bare (1-aq^2)
                let head = Rat::one().sub(&a.mul(&q.powi(2)?));
                let mut term = head.mul(&q);
                for x in [&b, &c, &d, &e, &q.powi(-1)?] {
                    term = term
                        .mul(&Rat::one().sub(x))
                        .div(&Rat::one().sub(&a.mul(&q).div(x)?))?;
                }
                term.div(&Rat::one().sub(&q))
            })();
            let rhs = (|| -> Result<Rat> {
                let numer = Rat::one()
                    .sub(&a.mul(&q))
                    .mul(&Rat::one().sub(&a.mul(&q).div(&b.mul(&c))?))
                    .mul(&Rat::one().sub(&a.mul(&q).div(&b.mul(&d))?))
                    .mul(&Rat::one().sub(&a.mul(&q).div(&c.mul(&d))?));
                let denom = Rat::one()
                    .sub(&a.mul(&q).div(&b)?)
                    .mul(&Rat::one().sub(&a.mul(&q).div(&c)?))
                    .mul(&Rat::one().sub(&a.mul(&q).div(&d)?))
                    .mul(&Rat::one().sub(&a.mul(&q).div(&b.mul(&c).mul(&d))?));
                numer.div(&denom)
            })();
            let (Ok(t1), Ok(rhs)) = (t1, rhs) else { continue };
            assert_eq!(Rat::one().add(&t1), rhs, "{a:?} {b:?} {c:?} {d:?} {q:?}");
            assert!(factorization_check(&a, &b, &c, &d));
            checked += 1;
        }
    }

    // -- inverse pair --------------------------------------------------------

    #[test]
    fn inverse_pair_is_exact_in_rational_mode() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 5);
        let p = Rat::new(1, 2);
        let q = Rat::new(2, 5);
        let pair = build_inverse_pair(&a, &b, &p, &q, 5).unwrap();
        for (name, prod) in [("AB", pair.ab_product()), ("BA", pair.ba_product())] {
            for i in 0..5 {
                for j in 0..5 {
                    let expected = if i == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(prod[i][j], expected, "{name}[{i}][{j}]");
                }
            }
        }
        // the 1x1 pair is a plain reciprocal relation
        let tiny = build_inverse_pair(&a, &b, &p, &q, 1).unwrap();
        assert_eq!(tiny.a[0][0].mul(&tiny.b[0][0]), Rat::one());
    }

    #[test]
    fn terminating_extended_sum_is_exact_in_rational_mode() {
        let a = Rat::new(3, 10);
        let b = Rat::new(1, 5);
        let d = Rat::new(3, 4);
        let p = Rat::new(3, 5);
        let q = Rat::new(1, 2);
        for n in 0..=3i64 {
            let (lhs, rhs) = terminating_extended_bibasic(&a, &b, &d, &p, &q, n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        let (lhs, _) = terminating_extended_bibasic(&a, &b, &d, &p, &q, 0).unwrap();
        assert_eq!(lhs, Rat::one());
    }

    // -- float registry ------------------------------------------------------

    #[test]
    fn check_ids_are_unique_and_complete() {
        let ids: Vec<_> = bibasic_checks().iter().map(|c| c.id).collect();
        let mut dedup = ids.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len());
        assert_eq!(ids.len(), 11);
        assert!(matches!(
            lookup_bibasic("missing"),
            Err(QError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn every_check_verifies_on_sampled_points() {
        for check in bibasic_checks() {
            let tol = if check.id == "inverse_matrix_pair" {
                1e-8
            } else {
                1e-9
            };
            let mut rng = substream(4, check.id);
            for i in 0..50 {
                let s = sample(&check.domain, &mut rng).unwrap();
                let r = bibasic_check(check.id, &s, tol);
                assert!(
                    r.pass,
                    "{} draw {i} failed: {:?} rel_err {:?} at {:?} {:?}",
                    check.id, r.error, r.rel_err, r.params, r.ints
                );
            }
        }
    }
}
