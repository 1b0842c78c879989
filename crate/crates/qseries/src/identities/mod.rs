//! Registry of closed-form summation and product identities.
//!
//! Each entry pairs a left side (a series or product evaluated by the
//! engine) with an independently coded closed-form right side, over a
//! documented sampling domain. The verification harness draws parameters
//! from the domain and compares the two sides; terminating entries also
//! carry an exact rational path.
//!
//! Naming: ids are stable strings (`q_binomial`, `ramanujan_1psi1`, ...)
//! used by the CLI and the reports; titles are human-readable.

mod exact;
mod registry;

pub use exact::{sample_exact, verify_exact, ExactSample};
pub(crate) use registry::{fin_ok, inf_ok};

use std::sync::OnceLock;

use crate::diag;
use crate::domain::{ParamDomain, SampleParams};
use crate::error::{QError, Result};
use crate::qcore::{qpoch, qpoch_inf, qpoch_inf_with_tol};
use crate::report::{build_report, VerificationReport};
use crate::scalar::{QComplex, Scalar, REL_TOL};

/// One verifiable identity: independent left/right evaluators plus the
/// sampling domain on which the identity's hypotheses hold.
pub struct IdentityEntry {
    pub id: &'static str,
    pub title: &'static str,
    /// Sampled parameter names (integers included), for the catalog.
    pub param_names: &'static [&'static str],
    /// Human-readable constraint summary, for the catalog.
    pub constraints: &'static str,
    /// Terminating and checkable with exact rational arithmetic.
    pub exactable: bool,
    pub domain: ParamDomain,
    pub lhs: fn(&SampleParams, f64) -> Result<QComplex>,
    pub rhs: fn(&SampleParams, f64) -> Result<QComplex>,
    /// Exact rational evaluator returning (lhs, rhs); present exactly
    /// when `exactable`.
    pub exact: Option<fn(&ExactSample) -> Result<(crate::scalar::Rat, crate::scalar::Rat)>>,
}

/// The full identity registry, in stable declaration order.
pub fn registry() -> &'static [IdentityEntry] {
    static REGISTRY: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Evaluates both sides of an identity at a parameter point. The left and
/// right evaluators share no code beyond the q-Pochhammer kernel, so a
/// bug cannot self-certify.
///
/// Series tails are truncated three orders of magnitude below the pass
/// tolerance (never looser than the default truncation tolerance), so
/// truncation error cannot masquerade as disagreement.
pub fn evaluate_both(
    id: &str,
    params: &SampleParams,
    tol: f64,
) -> Result<(QComplex, QComplex)> {
    let entry = lookup(id)?;
    if let Some(constraint) = entry.domain.constraint {
        if !constraint(params) {
            return Err(QError::Domain(format!(
                "parameters violate the domain constraints of {id}"
            )));
        }
    }
    let eval_tol = (tol * 1e-3).min(REL_TOL);
    let lhs = (entry.lhs)(params, eval_tol)?;
    let rhs = (entry.rhs)(params, eval_tol)?;
    Ok((lhs, rhs))
}

/// Verifies one identity at one parameter point. Evaluation errors are
/// recorded in the report rather than thrown.
pub fn verify(id: &str, params: &SampleParams, tol: f64) -> VerificationReport {
    diag::reset();
    let outcome = evaluate_both(id, params, tol);
    build_report(id, params, outcome, tol)
}

/// One row of the exported identity catalog.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub id: String,
    pub title: String,
    pub params: Vec<String>,
    pub constraints: String,
    pub exactable: bool,
}

pub fn catalog() -> Vec<CatalogRow> {
    registry()
        .iter()
        .map(|e| CatalogRow {
            id: e.id.to_string(),
            title: e.title.to_string(),
            params: e.param_names.iter().map(|s| s.to_string()).collect(),
            constraints: e.constraints.to_string(),
            exactable: e.exactable,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Theta functions
// ---------------------------------------------------------------------------

fn check_theta_base(j: u8, q: QComplex) -> Result<()> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain(format!(
            "theta functions require |q| < 1 (|q| = {})",
            q.abs()
        )));
    }
    if (j == 1 || j == 2) && !(q.im == 0.0 && q.re >= 0.0) {
        return Err(QError::Domain(
            "the fourth-root prefactor of the first two theta functions requires real q >= 0"
                .into(),
        ));
    }
    Ok(())
}

/// Theta functions as trigonometric series: half-integer-square powers of
/// q for j = 1, 2 and integer-square powers for j = 3, 4. Truncated once
/// the q-power falls below the default tolerance.
pub fn theta(j: u8, x: f64, q: QComplex) -> Result<QComplex> {
    check_theta_base(j, q)?;
    let mut sum = if j <= 2 { QComplex::ZERO } else { QComplex::ONE };
    let mut terms = 0u64;
    for n in 0..10_000i64 {
        let nf = n as f64;
        let term = match j {
            1 => {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                2.0 * sign * q.powf((nf + 0.5) * (nf + 0.5)) * ((2.0 * nf + 1.0) * x).sin()
            }
            2 => 2.0 * q.powf((nf + 0.5) * (nf + 0.5)) * ((2.0 * nf + 1.0) * x).cos(),
            3 | 4 => {
                if n == 0 {
                    continue;
                }
                let sign = if j == 4 && n % 2 == 1 { -1.0 } else { 1.0 };
                2.0 * sign * q.powf(nf * nf) * (2.0 * nf * x).cos()
            }
            _ => return Err(QError::Domain(format!("theta index {j} out of 1..=4"))),
        };
        sum = sum + term;
        terms += 1;
        let scale = if j <= 2 {
            q.abs().powf((nf + 0.5) * (nf + 0.5))
        } else {
            q.abs().powf(nf * nf)
        };
        if scale < REL_TOL {
            break;
        }
    }
    diag::add_series_terms(terms);
    Ok(sum)
}

/// Theta functions as infinite products. Independent of [`theta`]: the
/// product is accumulated factor by factor and truncated once the
/// quadratic-in-q factors are within the default tolerance of 1.
pub fn theta_product(j: u8, x: f64, q: QComplex) -> Result<QComplex> {
    check_theta_base(j, q)?;
    let cos2x = (2.0 * x).cos();
    let prefactor = match j {
        1 => 2.0 * q.powf(0.25) * QComplex::real(x.sin()),
        2 => 2.0 * q.powf(0.25) * QComplex::real(x.cos()),
        3 | 4 => QComplex::ONE,
        _ => return Err(QError::Domain(format!("theta index {j} out of 1..=4"))),
    };
    let mut acc = QComplex::ONE;
    let mut factors = 0u64;
    for n in 1..10_000i64 {
        let q2n = q.powi(2 * n).map_err(|_| QError::Domain("q = 0".into()))?;
        let (qa, qb) = match j {
            // (1 - q^{2n})(1 -+ 2 q^{2n} cos 2x + q^{4n})
            1 => (q2n, q2n),
            2 => (q2n, -q2n),
            // (1 - q^{2n})(1 +- 2 q^{2n-1} cos 2x + q^{4n-2})
            3 => (q2n, -q2n / q),
            _ => (q2n, q2n / q),
        };
        acc = acc * (QComplex::ONE - qa) * (QComplex::ONE - 2.0 * qb * cos2x + qb * qb);
        factors += 1;
        if q2n.abs() / q.abs() < REL_TOL {
            break;
        }
    }
    diag::add_product_factors(factors);
    Ok(prefactor * acc)
}

// ---------------------------------------------------------------------------
// Finite expansion check
// ---------------------------------------------------------------------------

/// Product (x_1,...,x_k;q)_n of finite shifted factorials.
pub fn poch_many(list: &[QComplex], q: QComplex, n: i64) -> Result<QComplex> {
    let mut acc = QComplex::ONE;
    for &x in list {
        acc = acc * qpoch(&x, &q, n)?;
    }
    Ok(acc)
}

/// Ratio of shifted-factorial products at index n, with pole detection on
/// the denominator.
pub fn poch_ratio(
    numer: &[QComplex],
    denom: &[QComplex],
    q: QComplex,
    n: i64,
) -> Result<QComplex> {
    let top = poch_many(numer, q, n)?;
    let bottom = poch_many(denom, q, n)?;
    if bottom.near_pole() {
        return Err(QError::Pole(format!(
            "shifted-factorial denominator vanishes at index {n}"
        )));
    }
    Ok(top / bottom)
}

/// Verifies the finite rearrangement identity
///
/// ```text
///   sum_{k=0}^n (b,c,q^{-n};q)_k / [(q, aq/b, aq/c;q)_k] v_k
///     = sum_{j=0}^n (aq/bc, aq^j, q^{-n};q)_j / [(q, aq/b, aq/c;q)_j]
///         (-1)^j q^{-j(j-1)/2}
///       * sum_{i=0}^{n-j} (q^{j-n}, aq^{2j};q)_i / [(q, aq^j;q)_i]
///           q^{-ij} (bc/aq)^{i+j} v_{i+j}
/// ```
///
/// for an arbitrary coefficient sequence v, computing both sides as
/// finite double sums.
pub fn sears_expansion_check(
    v: &[QComplex],
    a: QComplex,
    b: QComplex,
    c: QComplex,
    q: QComplex,
    n: i64,
) -> Result<VerificationReport> {
    if n < 0 || (v.len() as i64) <= n {
        return Err(QError::Domain(format!(
            "need v_0..v_n: got {} coefficients for n = {n}",
            v.len()
        )));
    }
    diag::reset();
    let qn_neg = q.powi(-n)?;
    let aq_b = a * q / b;
    let aq_c = a * q / c;

    // The double sum cancels heavily (negative q-powers against
    // triangular-power factors), so the pass threshold is scaled by the
    // largest summand magnitude actually encountered.
    let mut max_mag = 0.0f64;

    let mut lhs = QComplex::ZERO;
    for k in 0..=n {
        let t = poch_ratio(&[b, c, qn_neg], &[q, aq_b, aq_c], q, k)? * v[k as usize];
        max_mag = max_mag.max(t.abs());
        lhs = lhs + t;
    }

    let bc_aq = b * c / (a * q);
    let mut rhs = QComplex::ZERO;
    for j in 0..=n {
        let outer = poch_ratio(&[a * q / (b * c), qn_neg], &[q, aq_b, aq_c], q, j)?
            * qpoch(&(a * q.powi(j)?), &q, j)?;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let outer = outer * sign * q.powi(-crate::qcore::triangle(j))?;
        let mut inner = QComplex::ZERO;
        for i in 0..=(n - j) {
            let t = poch_ratio(
                &[q.powi(j - n)?, a * q.powi(2 * j)?],
                &[q, a * q.powi(j)?],
                q,
                i,
            )? * q.powi(-i * j)?
                * bc_aq.powi(i + j)?
                * v[(i + j) as usize];
            max_mag = max_mag.max((outer * t).abs());
            inner = inner + t;
        }
        rhs = rhs + outer * inner;
    }

    let tol = 1e-10 * ((1.0 + max_mag) / (1.0 + rhs.abs())).max(1.0);
    let mut sample = SampleParams::default();
    sample.set("a", a);
    sample.set("b", b);
    sample.set("c", c);
    sample.set("q", q);
    sample.set_int("n", n);
    Ok(build_report(
        "finite_expansion",
        &sample,
        Ok((lhs, rhs)),
        tol,
    ))
}

// ---------------------------------------------------------------------------
// Shared bilateral power-series oracles (triple/quintuple products)
// ---------------------------------------------------------------------------

/// Sum over all integers k of q^{k^2} z^k.
pub fn theta_series_sum(z: QComplex, q: QComplex, tol: f64) -> Result<QComplex> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain("requires |q| < 1".into()));
    }
    if z.near_pole() {
        return Err(QError::Domain("requires z != 0".into()));
    }
    let mut sum = QComplex::ONE; // k = 0
    let mut terms = 1u64;
    for k in 1..10_000i64 {
        let qk2 = q.powi(k * k)?;
        let t = qk2 * (z.powi(k)? + z.powi(-k)?);
        sum = sum + t;
        terms += 1;
        if t.abs() <= tol * sum.abs() {
            break;
        }
    }
    diag::add_series_terms(terms);
    Ok(sum)
}

/// Sum over all integers k of (-1)^k q^{k(3k-1)/2} z^{3k} (1 + z q^k).
pub fn quintuple_series_sum(z: QComplex, q: QComplex, tol: f64) -> Result<QComplex> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain("requires |q| < 1".into()));
    }
    if z.near_pole() {
        return Err(QError::Domain("requires z != 0".into()));
    }
    let term = |k: i64| -> Result<QComplex> {
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        Ok(sign
            * q.powi(k * (3 * k - 1) / 2)?
            * z.powi(3 * k)?
            * (QComplex::ONE + z * q.powi(k)?))
    };
    let mut sum = term(0)?;
    let mut terms = 1u64;
    for k in 1..10_000i64 {
        let t = term(k)? + term(-k)?;
        sum = sum + t;
        terms += 2;
        if t.abs() <= tol * (1.0 + sum.abs()) && k > 2 {
            break;
        }
    }
    diag::add_series_terms(terms);
    Ok(sum)
}

/// Rogers-Ramanujan-type sum: sum over n >= 0 of q^{n(n+s)} / (q;q)_n for
/// shift s = 0 or 1, truncated to `tol` tails.
pub fn rr_sum(q: QComplex, shift: i64, tol: f64) -> Result<QComplex> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain("requires |q| < 1".into()));
    }
    let mut sum = QComplex::ONE;
    let mut poch = QComplex::ONE;
    let mut terms = 1u64;
    for n in 1..10_000i64 {
        poch = poch * (QComplex::ONE - q.powi(n)?);
        let t = q.powi(n * (n + shift))? / poch;
        sum = sum + t;
        terms += 1;
        if t.abs() <= tol * sum.abs() {
            break;
        }
    }
    diag::add_series_terms(terms);
    Ok(sum)
}

/// Product side of the Rogers-Ramanujan identities:
/// (q^{1+d}, q^{4-d}, q^5; q^5)_inf / (q;q)_inf with d = 1 for the first
/// identity and d = 0 for the second, at an explicit tail tolerance.
pub fn rr_product(q: QComplex, first: bool, tol: f64) -> Result<QComplex> {
    let q5 = q.powi(5)?;
    let (e1, e2) = if first { (2, 3) } else { (1, 4) };
    let num = qpoch_inf_with_tol(q.powi(e1)?, q5, tol)?
        * qpoch_inf_with_tol(q.powi(e2)?, q5, tol)?
        * qpoch_inf_with_tol(q5, q5, tol)?;
    let den = qpoch_inf_with_tol(q, q, tol)?;
    if den.near_pole() {
        return Err(QError::Pole("(q;q)_infinity vanishes".into()));
    }
    Ok(num / den)
}

/// Convenience: product of (x;q)_inf over a list at the default tolerance.
pub fn inf_many(list: &[QComplex], q: QComplex) -> Result<QComplex> {
    let mut acc = QComplex::ONE;
    for &x in list {
        acc = acc * qpoch_inf(x, q)?;
    }
    Ok(acc)
}

/// Quotient of (…;q)_inf products with pole detection.
pub fn inf_ratio(numer: &[QComplex], denom: &[QComplex], q: QComplex) -> Result<QComplex> {
    let top = inf_many(numer, q)?;
    let bottom = inf_many(denom, q)?;
    if bottom.near_pole() {
        return Err(QError::Pole(
            "infinite-product denominator vanishes".into(),
        ));
    }
    Ok(top / bottom)
}
