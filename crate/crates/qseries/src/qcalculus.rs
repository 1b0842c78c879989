//! q-gamma and q-beta functions, q-integrals on the five standard node
//! sets, and continuous quadrature for the Askey-Wilson integral.
//!
//! The q-integral is a weighted node sum over a geometric partition; all
//! five kinds ([`QIntegralKind`]) reduce to sums of the form
//! `scale (1-q) sum f(scale q^n) q^n`, truncated when five consecutive
//! node terms fall below the requested tolerance relative to the running
//! partial sum. The Askey-Wilson integral is the one genuinely continuous
//! integral in the crate: it is computed by a uniform trapezoid rule after
//! the cosine substitution (the integrand becomes smooth and periodic, so
//! the trapezoid rule converges spectrally), gated by comparing orders N
//! and 2N. A Gauss-Legendre grid ([`QuadratureGrid`]) is provided as an
//! independent quadrature oracle.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::diag;
use crate::domain::{ParamDomain, ParamKind, SampleParams};
use crate::error::{QError, Result};
use crate::identities::inf_ratio;
use crate::qcore::{qpoch, qpoch_inf};
use crate::report::{build_report, VerificationReport};
use crate::scalar::{QComplex, Scalar, REL_TOL};
use crate::series::{eval_phi, make_vwp, SeriesSpec};
use crate::transforms::vwp_denoms_ok;

/// Node cap shared by every q-integral sum.
const NODE_CAP: u64 = 1_000_000;

/// Consecutive below-threshold nodes required before a sum stops.
const SETTLE_RUN: u32 = 5;

// ---------------------------------------------------------------------------
// q-gamma and q-beta
// ---------------------------------------------------------------------------

/// q-gamma function `(q;q)_inf (1-q)^(1-z) / (q^z;q)_inf` with principal
/// powers. Requires `0 < |q| < 1`; poles at z = 0, -1, -2, ... are
/// reported as errors.
///
/// The two infinite products are accumulated as a single product of
/// factor ratios `(1 - q^(j+1)) / (1 - q^(z+j))`: each ratio stays O(1),
/// so the quotient remains computable near q = 1 where both products
/// underflow on their own.
pub fn q_gamma(z: QComplex, q: QComplex) -> Result<QComplex> {
    if q.near_pole() || q.abs() >= 1.0 {
        return Err(QError::Domain(format!(
            "q-gamma requires 0 < |q| < 1 (|q| = {})",
            q.abs()
        )));
    }
    let mut acc = QComplex::ONE;
    let mut top = q; // q^(j+1)
    let mut bottom = q.powc(z); // q^(z+j)
    let mut factors = 0u64;
    loop {
        let den = QComplex::ONE - bottom;
        if den.near_pole() {
            diag::add_product_factors(factors);
            return Err(QError::Pole(format!(
                "q-gamma pole: a factor of (q^z;q)_infinity vanishes at z = {z}"
            )));
        }
        acc = acc * (QComplex::ONE - top) / den;
        factors += 1;
        // the remaining factors deviate from 1 by a geometric tail
        if (top - bottom).abs() < REL_TOL * den.abs() * (1.0 - q.abs()) {
            break;
        }
        if factors >= NODE_CAP {
            diag::add_product_factors(factors);
            return Err(QError::Truncation("q-gamma product cap reached".into()));
        }
        top = top * q;
        bottom = bottom * q;
    }
    diag::add_product_factors(factors);
    Ok(acc * (QComplex::ONE - q).powc(QComplex::ONE - z))
}

/// q-gamma at the positive integer n+1: `(q;q)_n / (1-q)^n`, the
/// q-analogue of n!. Exact in rational mode.
pub fn q_factorial<F: Scalar>(n: u32, q: &F) -> Result<F> {
    let top = qpoch(q, q, n as i64)?;
    let bottom = F::one().sub(q).powi(n as i64)?;
    top.div(&bottom)
}

/// q-beta function `B_q(x,y) = Gamma_q(x) Gamma_q(y) / Gamma_q(x+y)`.
pub fn q_beta(x: QComplex, y: QComplex, q: QComplex) -> Result<QComplex> {
    let gx = q_gamma(x, q)?;
    let gy = q_gamma(y, q)?;
    let gxy = q_gamma(x + y, q)?;
    if gxy.near_pole() {
        return Err(QError::Pole("q-beta: Gamma_q(x+y) vanishes".into()));
    }
    Ok(gx * gy / gxy)
}

/// q-beta via its series expansion
/// `(1-q) sum_n (q^(n+1);q)_inf / (q^(n+y);q)_inf q^(nx)`,
/// an evaluation path independent of the gamma quotient. Requires the
/// decay condition `|q^x| < 1` (Re x > 0 for real q).
pub fn q_beta_series(x: QComplex, y: QComplex, q: QComplex, tol: f64) -> Result<QComplex> {
    if q.near_pole() || q.abs() >= 1.0 {
        return Err(QError::Domain("q-beta series requires 0 < |q| < 1".into()));
    }
    let qx = q.powc(x);
    if qx.abs() >= 1.0 {
        return Err(QError::Domain(format!(
            "q-beta series requires |q^x| < 1 (got {})",
            qx.abs()
        )));
    }
    let qy = q.powc(y);
    let mut partial = QComplex::ZERO;
    let mut top = q; // q^(n+1)
    let mut bottom = qy; // q^(n+y)
    let mut weight = QComplex::ONE; // q^(nx)
    let mut run = 0u32;
    let mut terms = 0u64;
    loop {
        let den = qpoch_inf(bottom, q)?;
        if den.near_pole() {
            diag::add_series_terms(terms);
            return Err(QError::Pole(
                "q-beta series: (q^(n+y);q)_infinity vanishes".into(),
            ));
        }
        let t = qpoch_inf(top, q)? / den * weight;
        partial = partial + t;
        terms += 1;
        if t.abs() <= tol * partial.abs() {
            run += 1;
            if run >= SETTLE_RUN {
                break;
            }
        } else {
            run = 0;
        }
        if terms >= NODE_CAP {
            diag::add_series_terms(terms);
            return Err(QError::Truncation(
                "q-beta series did not settle within the term cap".into(),
            ));
        }
        top = top * q;
        bottom = bottom * q;
        weight = weight * qx;
    }
    diag::add_series_terms(terms);
    Ok((QComplex::ONE - q) * partial)
}

// ---------------------------------------------------------------------------
// q-integrals
// ---------------------------------------------------------------------------

/// The five q-integral node sets.
#[derive(Clone, Copy, Debug)]
pub enum QIntegralKind {
    /// Nodes q^n on [0,1].
    ZeroToOne,
    /// Nodes a q^n on [0,a].
    ZeroTo(QComplex),
    /// Difference of the [0,b] and [0,a] sums; the node sets nest.
    Between(QComplex, QComplex),
    /// Nodes q^n for all integers n.
    ZeroToInfinity,
    /// Nodes +-q^n for all integers n.
    Bilateral,
}

/// A q-integral to evaluate: node set, base, and integrand. For real
/// 0 < q < 1 the node weights (1-q) q^n of the defining sums are positive.
pub struct QIntegralSpec<'f> {
    pub kind: QIntegralKind,
    pub base: QComplex,
    pub integrand: &'f dyn Fn(QComplex) -> Result<QComplex>,
}

/// One-sided node sum `scale (1-q) sum_{n>=0} f(scale q^n) q^n`.
fn jackson_sum(
    scale: QComplex,
    q: QComplex,
    f: &dyn Fn(QComplex) -> Result<QComplex>,
    tol: f64,
) -> Result<QComplex> {
    if scale.is_zero() {
        return Ok(QComplex::ZERO);
    }
    let mut partial = QComplex::ZERO;
    let mut w = QComplex::ONE;
    let mut run = 0u32;
    let mut nodes = 0u64;
    loop {
        let t = f(scale * w)? * w;
        partial = partial + t;
        nodes += 1;
        if t.abs() <= tol * partial.abs() {
            run += 1;
            if run >= SETTLE_RUN {
                break;
            }
        } else {
            run = 0;
        }
        if nodes >= NODE_CAP {
            diag::add_series_terms(nodes);
            return Err(QError::Truncation("q-integral node cap reached".into()));
        }
        w = w * q;
    }
    diag::add_series_terms(nodes);
    Ok(scale * (QComplex::ONE - q) * partial)
}

/// Outward sum over nodes q^n, n = -1, -2, ...; converges only when the
/// summand decays despite the growing weights.
fn outward_negative_sum(
    q: QComplex,
    g: &dyn Fn(QComplex) -> Result<QComplex>,
    tol: f64,
) -> Result<QComplex> {
    let mut partial = QComplex::ZERO;
    let mut w = QComplex::ONE;
    let mut run = 0u32;
    let mut nodes = 0u64;
    loop {
        w = w / q;
        let t = g(w)? * w;
        partial = partial + t;
        nodes += 1;
        if t.abs() <= tol * partial.abs() {
            run += 1;
            if run >= SETTLE_RUN {
                break;
            }
        } else {
            run = 0;
        }
        if nodes >= NODE_CAP {
            diag::add_series_terms(nodes);
            return Err(QError::Truncation("q-integral node cap reached".into()));
        }
    }
    diag::add_series_terms(nodes);
    Ok(partial)
}

/// Evaluates a q-integral by its defining node sum. The infinite kinds
/// sum the nonnegative-n and negative-n branches separately, outward from
/// n = 0.
pub fn q_integral(spec: &QIntegralSpec<'_>, tol: f64) -> Result<QComplex> {
    let q = spec.base;
    if q.near_pole() || q.abs() >= 1.0 {
        return Err(QError::Domain(format!(
            "q-integral requires 0 < |q| < 1 (|q| = {})",
            q.abs()
        )));
    }
    let f = spec.integrand;
    match spec.kind {
        QIntegralKind::ZeroToOne => jackson_sum(QComplex::ONE, q, f, tol),
        QIntegralKind::ZeroTo(a) => jackson_sum(a, q, f, tol),
        QIntegralKind::Between(a, b) => {
            Ok(jackson_sum(b, q, f, tol)? - jackson_sum(a, q, f, tol)?)
        }
        QIntegralKind::ZeroToInfinity => {
            let pos = jackson_sum(QComplex::ONE, q, f, tol)?;
            let neg = outward_negative_sum(q, f, tol)?;
            Ok(pos + (QComplex::ONE - q) * neg)
        }
        QIntegralKind::Bilateral => {
            let g = |t: QComplex| -> Result<QComplex> { Ok(f(t)? + f(-t)?) };
            let pos = jackson_sum(QComplex::ONE, q, &g, tol)?;
            let neg = outward_negative_sum(q, &g, tol)?;
            Ok(pos + (QComplex::ONE - q) * neg)
        }
    }
}

// ---------------------------------------------------------------------------
// q-integral representations of q-beta and 2phi1
// ---------------------------------------------------------------------------

/// Tail tolerance used inside verification checks: three orders of
/// magnitude below the pass tolerance, clamped at [`REL_TOL`].
fn eval_tol(tol: f64) -> f64 {
    (tol * 1e-3).min(REL_TOL)
}

fn q_beta_integral_both(x: QComplex, y: QComplex, q: QComplex, tol: f64) -> Result<(QComplex, QComplex)> {
    if x.re <= 0.0 {
        return Err(QError::Domain(
            "the q-beta integral representation requires Re x > 0".into(),
        ));
    }
    let et = eval_tol(tol);
    let lhs = q_beta(x, y, q)?;
    let qy = q.powc(y);
    let f = |t: QComplex| -> Result<QComplex> {
        Ok(t.powc(x - QComplex::ONE) * inf_ratio(&[t * q], &[t * qy], q)?)
    };
    let spec = QIntegralSpec {
        kind: QIntegralKind::ZeroToOne,
        base: q,
        integrand: &f,
    };
    let rhs = q_integral(&spec, et)?;
    Ok((lhs, rhs))
}

/// Compares `B_q(x,y)` against the q-integral of
/// `t^(x-1) (tq;q)_inf / (tq^y;q)_inf` over [0,1].
pub fn q_beta_integral_check(x: QComplex, y: QComplex, q: QComplex, tol: f64) -> VerificationReport {
    diag::reset();
    let mut s = SampleParams::default();
    s.set("x", x);
    s.set("y", y);
    s.set("q", q);
    let outcome = q_beta_integral_both(x, y, q, tol);
    build_report("q_beta_integral", &s, outcome, tol)
}

fn thomae_both(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    z: QComplex,
    q: QComplex,
    tol: f64,
) -> Result<(QComplex, QComplex)> {
    if b.re <= 0.0 {
        return Err(QError::Domain(
            "the q-integral representation requires Re b > 0".into(),
        ));
    }
    if z.abs() >= 1.0 {
        return Err(QError::Domain(
            "the q-integral representation requires |z| < 1".into(),
        ));
    }
    let et = eval_tol(tol);
    let spec = SeriesSpec {
        numerators: vec![q.powc(a), q.powc(b)],
        denominators: vec![q.powc(c)],
        base: q,
        argument: z,
        bilateral: false,
    };
    let lhs = eval_phi(&spec, et)?;
    let prefactor = q_gamma(c, q)? / (q_gamma(b, q)? * q_gamma(c - b, q)?);
    let qa = q.powc(a);
    let qcb = q.powc(c - b);
    let f = |t: QComplex| -> Result<QComplex> {
        Ok(t.powc(b - QComplex::ONE) * inf_ratio(&[t * z * qa, t * q], &[t * z, t * qcb], q)?)
    };
    let ispec = QIntegralSpec {
        kind: QIntegralKind::ZeroToOne,
        base: q,
        integrand: &f,
    };
    let rhs = prefactor * q_integral(&ispec, et)?;
    Ok((lhs, rhs))
}

/// Compares the series `2phi1(q^a, q^b; q^c; q, z)` against its
/// q-integral representation
/// `[Gamma_q(c) / (Gamma_q(b) Gamma_q(c-b))]
///  int_0^1 t^(b-1) (tzq^a, tq;q)_inf / (tz, tq^(c-b);q)_inf d_q t`.
pub fn thomae_integral_check(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    z: QComplex,
    q: QComplex,
    tol: f64,
) -> VerificationReport {
    diag::reset();
    let mut s = SampleParams::default();
    s.set("a", a);
    s.set("b", b);
    s.set("c", c);
    s.set("z", z);
    s.set("q", q);
    let outcome = thomae_both(a, b, c, z, q, tol);
    build_report("thomae_qint_2phi1", &s, outcome, tol)
}

// ---------------------------------------------------------------------------
// Askey-Wilson integral
// ---------------------------------------------------------------------------

/// Infinite product `prod_n (1 - 2 a x q^n + a^2 q^(2n))` for real
/// x = cos(theta); the building block of the Askey-Wilson weight.
pub fn aw_weight_factor(x: f64, a: QComplex, q: QComplex) -> Result<QComplex> {
    if q.abs() >= 1.0 {
        return Err(QError::Domain(
            "the weight product requires |q| < 1".into(),
        ));
    }
    let mut acc = QComplex::ONE;
    let mut aq = a;
    let mut factors = 0u64;
    loop {
        acc = acc * (QComplex::ONE - 2.0 * x * aq + aq * aq);
        aq = aq * q;
        factors += 1;
        if (2.0 * x.abs() + aq.abs()) * aq.abs() < REL_TOL {
            acc = acc * (QComplex::ONE - 2.0 * x * aq + aq * aq);
            factors += 1;
            break;
        }
        if factors >= NODE_CAP {
            diag::add_product_factors(factors);
            return Err(QError::Truncation("weight product cap reached".into()));
        }
    }
    diag::add_product_factors(factors);
    Ok(acc)
}

/// Product of weight factors over a parameter list.
pub fn aw_weight_multi(x: f64, list: &[QComplex], q: QComplex) -> Result<QComplex> {
    let mut acc = QComplex::ONE;
    for &a in list {
        acc = acc * aw_weight_factor(x, a, q)?;
    }
    Ok(acc)
}

fn aw_modulus_check(a: QComplex, b: QComplex, c: QComplex, d: QComplex, q: QComplex) -> Result<()> {
    let m = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(q.abs());
    if m >= 1.0 {
        return Err(QError::Domain(format!(
            "the integral requires max(|a|,|b|,|c|,|d|,|q|) < 1 (got {m})"
        )));
    }
    Ok(())
}

/// Askey-Wilson integrand after the substitution x = cos(theta), which
/// absorbs the 1/sqrt(1-x^2) weight: a smooth, even, 2 pi-periodic
/// function of theta.
fn aw_integrand(theta: f64, params: [QComplex; 4], q: QComplex) -> Result<QComplex> {
    let x = theta.cos();
    let rq = q.sqrt();
    let numer = aw_weight_multi(x, &[QComplex::ONE, -QComplex::ONE, rq, -rq], q)?;
    let denom = aw_weight_multi(x, &params, q)?;
    if denom.near_pole() {
        return Err(QError::Pole(
            "the weight denominator vanishes on the integration contour".into(),
        ));
    }
    Ok(numer / denom)
}

/// Askey-Wilson integral
/// `int_-1^1 h(x; 1, -1, sqrt(q), -sqrt(q)) / h(x; a, b, c, d)
///  (1-x^2)^(-1/2) dx`
/// by an n-panel trapezoid rule in theta over [0, pi]. The integrand is
/// smooth and periodic there, so the trapezoid rule is spectrally
/// accurate; callers gate the order by comparing n against 2n.
pub fn askey_wilson_integral(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    d: QComplex,
    q: QComplex,
    n: u32,
) -> Result<QComplex> {
    aw_modulus_check(a, b, c, d, q)?;
    let n = n.max(4) as usize;
    let h = PI / n as f64;
    let mut acc = QComplex::ZERO;
    for k in 0..=n {
        let g = aw_integrand(k as f64 * h, [a, b, c, d], q)?;
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc = acc + w * g;
    }
    Ok(acc * h)
}

/// Closed form of the Askey-Wilson integral:
/// `2 pi (abcd;q)_inf / (q, ab, ac, ad, bc, bd, cd;q)_inf`.
pub fn askey_wilson_closed_form(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    d: QComplex,
    q: QComplex,
) -> Result<QComplex> {
    aw_modulus_check(a, b, c, d, q)?;
    let value = inf_ratio(
        &[a * b * c * d],
        &[q, a * b, a * c, a * d, b * c, b * d, c * d],
        q,
    )?;
    Ok(2.0 * PI * value)
}

/// Quadrature order used by [`aw_check`]; the gate compares this order
/// against twice this order.
pub const AW_BASE_ORDER: u32 = 256;

fn aw_both(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    d: QComplex,
    q: QComplex,
    tol: f64,
) -> Result<(QComplex, QComplex)> {
    let coarse = askey_wilson_integral(a, b, c, d, q, AW_BASE_ORDER)?;
    let fine = askey_wilson_integral(a, b, c, d, q, 2 * AW_BASE_ORDER)?;
    if !coarse.approx_eq(fine, tol) {
        return Err(QError::Quadrature(format!(
            "orders {} and {} disagree beyond {tol}",
            AW_BASE_ORDER,
            2 * AW_BASE_ORDER
        )));
    }
    Ok((fine, askey_wilson_closed_form(a, b, c, d, q)?))
}

/// Verifies the Askey-Wilson integral evaluation at one parameter point,
/// with a Richardson gate between quadrature orders N and 2N.
pub fn aw_check(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    d: QComplex,
    q: QComplex,
    tol: f64,
) -> VerificationReport {
    diag::reset();
    let mut s = SampleParams::default();
    s.set("a", a);
    s.set("b", b);
    s.set("c", c);
    s.set("d", d);
    s.set("q", q);
    let outcome = aw_both(a, b, c, d, q, tol);
    let mut report = build_report("askey_wilson_integral", &s, outcome, tol);
    report.diagnostics.quadrature_order = Some(2 * AW_BASE_ORDER);
    report
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

/// Gauss-Legendre nodes and weights on [-1, 1]; the weights sum to 2.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre polynomial value and derivative at x, by the three-term
/// recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureGrid {
    /// Order-n Gauss-Legendre grid, with roots located by Newton
    /// iteration from the Chebyshev initial guesses.
    pub fn gauss_legendre(n: usize) -> QuadratureGrid {
        assert!(n >= 2, "a quadrature grid needs at least two nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        QuadratureGrid { nodes, weights }
    }

    /// Integrates g over [lo, hi] by mapping the grid affinely.
    pub fn integrate(
        &self,
        lo: f64,
        hi: f64,
        g: &dyn Fn(f64) -> Result<QComplex>,
    ) -> Result<QComplex> {
        let half = (hi - lo) / 2.0;
        let mid = (hi + lo) / 2.0;
        let mut acc = QComplex::ZERO;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + w * g(mid + half * x)?;
        }
        Ok(acc * half)
    }
}

// ---------------------------------------------------------------------------
// q-integral identity checks
// ---------------------------------------------------------------------------

/// One verifiable q-integral evaluation: a q-integral of a ratio of
/// infinite products against a closed form (or a second q-integral).
pub struct QIntegralCheck {
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

/// Same conditioning guard as the identity registry: no factor of
/// (x;q)_infinity closer than `margin` to zero.
fn inf_ok(x: QComplex, q: QComplex, margin: f64) -> bool {
    crate::identities::inf_ok(x, q, margin)
}

fn alsalam_verma_eval(s: &SampleParams, tol: f64) -> Result<(QComplex, QComplex)> {
    let (a, b, c, e, f, g, h, q) = (
        s.c("a"),
        s.c("b"),
        s.c("c"),
        s.c("e"),
        s.c("f"),
        s.c("g"),
        s.c("h"),
        s.c("q"),
    );
    let d = a * b * e * f * g * h / c;
    let et = eval_tol(tol);
    let integrand = |t: QComplex| -> Result<QComplex> {
        inf_ratio(&[q * t / a, q * t / b, c * t, d * t], &[e * t, f * t, g * t, h * t], q)
    };
    let spec = QIntegralSpec {
        kind: QIntegralKind::Between(a, b),
        base: q,
        integrand: &integrand,
    };
    let lhs = q_integral(&spec, et)?;
    let coeff = b * (QComplex::ONE - q)
        * inf_ratio(
            &[
                q,
                b * q / a,
                a / b,
                c * d / (e * h),
                c * d / (f * h),
                c * d / (g * h),
                b * c,
                b * d,
            ],
            &[a * e, a * f, a * g, b * e, b * f, b * g, b * h, b * c * d / h],
            q,
        )?;
    let alpha = b * c * d / (h * q);
    let w = eval_phi(
        &make_vwp(alpha, &[b * e, b * f, b * g, c / h, d / h], q, a * h)?,
        et,
    )?;
    Ok((lhs, coeff * w))
}

fn sears_qint_eval(s: &SampleParams, tol: f64) -> Result<(QComplex, QComplex)> {
    let (a, b, d, e, f, q) = (s.c("a"), s.c("b"), s.c("d"), s.c("e"), s.c("f"), s.c("q"));
    let c = a * b * d * e * f;
    let et = eval_tol(tol);
    let integrand = |t: QComplex| -> Result<QComplex> {
        inf_ratio(&[q * t / a, q * t / b, c * t], &[d * t, e * t, f * t], q)
    };
    let spec = QIntegralSpec {
        kind: QIntegralKind::Between(a, b),
        base: q,
        integrand: &integrand,
    };
    let lhs = q_integral(&spec, et)?;
    let rhs = b * (QComplex::ONE - q)
        * inf_ratio(
            &[q, b * q / a, a / b, c / d, c / e, c / f],
            &[a * d, a * e, a * f, b * d, b * e, b * f],
            q,
        )?;
    Ok((lhs, rhs))
}

fn bailey_qint_8phi7_eval(s: &SampleParams, tol: f64) -> Result<(QComplex, QComplex)> {
    let (a, b, c, d, e, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
    let f = q * a * a / (b * c * d * e);
    let ra = a.sqrt();
    let et = eval_tol(tol);
    let integrand = |t: QComplex| -> Result<QComplex> {
        inf_ratio(
            &[
                q * t / a,
                q * t / b,
                t / ra,
                -(t / ra),
                q * t / c,
                q * t / d,
                q * t / e,
                q * t / f,
            ],
            &[
                t,
                b * t / a,
                q * t / ra,
                -(q * t / ra),
                c * t / a,
                d * t / a,
                e * t / a,
                f * t / a,
            ],
            q,
        )
    };
    let spec = QIntegralSpec {
        kind: QIntegralKind::Between(a, b),
        base: q,
        integrand: &integrand,
    };
    let lhs = q_integral(&spec, et)?;
    let rhs = b * (QComplex::ONE - q)
        * inf_ratio(
            &[
                q,
                a / b,
                b * q / a,
                a * q / (c * d),
                a * q / (c * e),
                a * q / (c * f),
                a * q / (d * e),
                a * q / (d * f),
                a * q / (e * f),
            ],
            &[b, c, d, e, f, b * c / a, b * d / a, b * e / a, b * f / a],
            q,
        )?;
    Ok((lhs, rhs))
}

fn bailey_qint_4term_eval(s: &SampleParams, tol: f64) -> Result<(QComplex, QComplex)> {
    let (a, b, c, d, e, f, g, q) = (
        s.c("a"),
        s.c("b"),
        s.c("c"),
        s.c("d"),
        s.c("e"),
        s.c("f"),
        s.c("g"),
        s.c("q"),
    );
    let h = a * a * a * q * q / (b * c * d * e * f * g);
    let l = q * a * a / (c * d * e);
    let ra = a.sqrt();
    let rl = l.sqrt();
    let et = eval_tol(tol);
    let left = |t: QComplex| -> Result<QComplex> {
        inf_ratio(
            &[
                q * t / a,
                q * t / b,
                t / ra,
                -(t / ra),
                q * t / c,
                q * t / d,
                q * t / e,
                q * t / f,
                q * t / g,
                q * t / h,
            ],
            &[
                t,
                b * t / a,
                q * t / ra,
                -(q * t / ra),
                c * t / a,
                d * t / a,
                e * t / a,
                f * t / a,
                g * t / a,
                h * t / a,
            ],
            q,
        )
    };
    let lspec = QIntegralSpec {
        kind: QIntegralKind::Between(a, b),
        base: q,
        integrand: &left,
    };
    let lhs = q_integral(&lspec, et)?;
    let coeff = a / l
        * inf_ratio(
            &[
                b / a,
                a * q / b,
                l * c / a,
                l * d / a,
                l * e / a,
                b * f / l,
                b * g / l,
                b * h / l,
            ],
            &[b / l, l * q / b, c, d, e, b * f / a, b * g / a, b * h / a],
            q,
        )?;
    let right = |t: QComplex| -> Result<QComplex> {
        inf_ratio(
            &[
                q * t / l,
                q * t / b,
                t / rl,
                -(t / rl),
                a * q * t / (c * l),
                a * q * t / (d * l),
                a * q * t / (e * l),
                q * t / f,
                q * t / g,
                q * t / h,
            ],
            &[
                t,
                b * t / l,
                q * t / rl,
                -(q * t / rl),
                c * t / a,
                d * t / a,
                e * t / a,
                f * t / l,
                g * t / l,
                h * t / l,
            ],
            q,
        )
    };
    let rspec = QIntegralSpec {
        kind: QIntegralKind::Between(l, b),
        base: q,
        integrand: &right,
    };
    let rhs = coeff * q_integral(&rspec, et)?;
    Ok((lhs, rhs))
}

fn build_qintegral_checks() -> Vec<QIntegralCheck> {
    vec![
        QIntegralCheck {
            id: "alsalam_verma",
            title: "q-integral of a four-over-four product ratio as a very-well-poised 8W7",
            param_names: &["a", "b", "c", "e", "f", "g", "h", "q"],
            constraints: "d = abefgh/c derived; |ah| < 1; series argument and \
                          denominator chains kept away from poles",
            domain: ParamDomain::new(vec![
                md("a", 0.15, 0.4),
                md("b", 0.5, 0.85),
                md("c", 0.3, 0.8),
                md("e", 0.3, 0.7),
                md("f", 0.3, 0.7),
                md("g", 0.3, 0.7),
                md("h", 0.15, 0.5),
                md("q", 0.1, 0.4),
            ])
            .with_constraint(|s| {
                let (a, b, c, e, f, g, h, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("e"),
                    s.c("f"),
                    s.c("g"),
                    s.c("h"),
                    s.c("q"),
                );
                let d = a * b * e * f * g * h / c;
                let alpha = b * c * d / (h * q);
                d.abs() <= 0.9
                    && alpha.abs() <= 2.5
                    && (c / h).abs() <= 3.0
                    && (d / h).abs() <= 3.0
                    && (a * h).abs() <= 0.6
                    && vwp_denoms_ok(alpha, &[b * e, b * f, b * g, c / h, d / h], q, 0.04)
                    && inf_ok(b * c * d / h, q, 0.05)
            }),
            eval: alsalam_verma_eval,
        },
        QIntegralCheck {
            id: "sears_qint",
            title: "q-integral of a three-over-three product ratio in closed form",
            param_names: &["a", "b", "d", "e", "f", "q"],
            constraints: "c = abdef derived",
            domain: ParamDomain::new(vec![
                md("a", 0.1, 0.4),
                md("b", 0.5, 0.85),
                md("d", 0.2, 0.7),
                md("e", 0.2, 0.7),
                md("f", 0.2, 0.7),
                md("q", 0.1, 0.4),
            ]),
            eval: sears_qint_eval,
        },
        QIntegralCheck {
            id: "bailey_qint_8phi7",
            title: "nonterminating very-well-poised summation in q-integral form",
            param_names: &["a", "b", "c", "d", "e", "q"],
            constraints: "f = qa^2/(bcde) derived, |f| moderate; denominator \
                          chains kept away from poles",
            domain: ParamDomain::new(vec![
                md("a", 0.3, 0.7),
                md("b", 0.4, 0.8),
                md("c", 0.4, 0.8),
                md("d", 0.4, 0.8),
                md("e", 0.4, 0.8),
                md("q", 0.1, 0.35),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, q) =
                    (s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let f = q * a * a / (b * c * d * e);
                let caps = [
                    a * q / (c * d),
                    a * q / (c * e),
                    a * q / (c * f),
                    a * q / (d * e),
                    a * q / (d * f),
                    a * q / (e * f),
                ];
                let chains = [b * c / a, b * d / a, b * e / a, b * f / a, b * b / a];
                f.abs() >= 0.1
                    && f.abs() <= 0.85
                    && caps.iter().all(|x| x.abs() <= 3.0)
                    && chains.iter().all(|&x| inf_ok(x, q, 0.05))
            }),
            eval: bailey_qint_8phi7_eval,
        },
        QIntegralCheck {
            id: "bailey_qint_4term",
            title: "four-term very-well-poised transformation as a two-q-integral identity",
            param_names: &["a", "b", "c", "d", "e", "f", "g", "q"],
            constraints: "h = a^3q^2/(bcdefg) and the shifted endpoint qa^2/(cde) \
                          derived; both kept moderate; denominator chains kept \
                          away from poles",
            domain: ParamDomain::new(vec![
                md("a", 0.35, 0.65),
                md("b", 0.5, 0.85),
                md("c", 0.4, 0.8),
                md("d", 0.4, 0.8),
                md("e", 0.4, 0.8),
                md("f", 0.4, 0.8),
                md("g", 0.4, 0.8),
                md("q", 0.1, 0.3),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, g, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("g"),
                    s.c("q"),
                );
                let h = a * a * a * q * q / (b * c * d * e * f * g);
                let l = q * a * a / (c * d * e);
                let rl = l.sqrt();
                let ra = a.sqrt();
                let chains = [
                    b * b / a,
                    b * b / l,
                    b / l,
                    l * q / b,
                    b * c / a,
                    b * d / a,
                    b * e / a,
                    b * f / a,
                    b * g / a,
                    b * h / a,
                    b * f / l,
                    b * g / l,
                    b * h / l,
                    q * b / ra,
                    -(q * b / ra),
                    q * b / rl,
                    -(q * b / rl),
                ];
                h.abs() >= 0.05
                    && h.abs() <= 0.85
                    && l.abs() >= 0.05
                    && l.abs() <= 0.9
                    && chains.iter().all(|&x| inf_ok(x, q, 0.05))
            }),
            eval: bailey_qint_4term_eval,
        },
    ]
}

/// The q-integral identity checks, in stable declaration order.
pub fn qintegral_checks() -> &'static [QIntegralCheck] {
    static CHECKS: OnceLock<Vec<QIntegralCheck>> = OnceLock::new();
    CHECKS.get_or_init(build_qintegral_checks)
}

pub fn lookup_qintegral(id: &str) -> Result<&'static QIntegralCheck> {
    qintegral_checks()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Verifies one q-integral identity at one parameter point. Evaluation
/// errors are recorded in the report rather than thrown.
pub fn qintegral_identity_check(id: &str, params: &SampleParams, tol: f64) -> VerificationReport {
    diag::reset();
    let outcome = (|| {
        let check = lookup_qintegral(id)?;
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

    // -- q-gamma ------------------------------------------------------------

    #[test]
    fn q_gamma_normalization_and_small_arguments() {
        for &q in &[0.2, 0.5, 0.8] {
            let g1 = q_gamma(QComplex::ONE, qc(q)).unwrap();
            assert!(g1.approx_eq(QComplex::ONE, 1e-12), "got {g1} at q={q}");
        }
        // at the argument 3 the value collapses to 1 + q
        let g3 = q_gamma(qc(3.0), qc(0.5)).unwrap();
        assert!(g3.approx_eq(qc(1.5), 1e-12), "got {g3}");
    }

    #[test]
    fn q_gamma_approaches_the_factorial_as_q_tends_to_one() {
        let g5 = q_gamma(qc(5.0), qc(0.9999)).unwrap();
        assert!((g5 - qc(24.0)).abs() < 0.01, "got {g5}");
    }

    #[test]
    fn q_gamma_rejects_nonpositive_integer_arguments() {
        for &z in &[0.0, -1.0, -2.0] {
            assert!(
                matches!(q_gamma(qc(z), qc(0.5)), Err(QError::Pole(_))),
                "no pole reported at z = {z}"
            );
        }
        assert!(matches!(
            q_gamma(QComplex::ONE, qc(1.2)),
            Err(QError::Domain(_))
        ));
    }

    #[test]
    fn q_gamma_functional_equation_holds_on_a_grid() {
        for &q in &[0.2, 0.5, 0.8] {
            for &re in &[0.3, 0.7, 1.2, 2.5, 3.8, 4.9] {
                for &im in &[0.0, 0.4] {
                    let z = QComplex::new(re, im);
                    let lhs = q_gamma(z + QComplex::ONE, qc(q)).unwrap();
                    let rhs = (QComplex::ONE - qc(q).powc(z)) / (1.0 - q)
                        * q_gamma(z, qc(q)).unwrap();
                    assert!(
                        lhs.approx_eq(rhs, 1e-12),
                        "step relation fails at z={z}, q={q}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn q_gamma_limit_approach_is_monotone() {
        // classical gamma values at 1.5, 2.5 and 5
        let targets = [(1.5, 0.886_226_925_452_758), (2.5, 1.329_340_388_179_137), (5.0, 24.0)];
        for &(z, gamma) in &targets {
            let mut prev = f64::INFINITY;
            for &q in &[0.9, 0.99, 0.999] {
                let err = (q_gamma(qc(z), qc(q)).unwrap() - qc(gamma)).abs();
                assert!(err < prev, "no improvement at z={z}, q={q}: {err} vs {prev}");
                prev = err;
            }
        }
    }

    #[test]
    fn q_factorial_is_exact_in_rational_mode() {
        // against the product of partial geometric sums 1, 1+q, 1+q+q^2, ...
        for q in [Rat::new(1, 2), Rat::new(1, 3), Rat::new(2, 3)] {
            let mut expected = Rat::one();
            for n in 0u32..=8 {
                assert_eq!(q_factorial(n, &q).unwrap(), expected, "n = {n}");
                // multiply in the next partial sum 1 + q + ... + q^n
                let mut partial = Rat::one();
                let mut power = Rat::one();
                for _ in 0..n {
                    power = power.mul(&q);
                    partial = partial.add(&power);
                }
                expected = expected.mul(&partial);
            }
        }
    }

    // -- q-beta -------------------------------------------------------------

    #[test]
    fn q_beta_normalization_and_symmetry() {
        for &q in &[0.3, 0.6] {
            let b11 = q_beta(QComplex::ONE, QComplex::ONE, qc(q)).unwrap();
            assert!(b11.approx_eq(QComplex::ONE, 1e-12), "got {b11} at q={q}");
        }
        let x = QComplex::new(1.3, 0.2);
        let y = QComplex::new(0.7, -0.4);
        let lhs = q_beta(x, y, qc(0.5)).unwrap();
        let rhs = q_beta(y, x, qc(0.5)).unwrap();
        assert!(lhs.approx_eq(rhs, 1e-12));
    }

    #[test]
    fn q_beta_matches_its_series_expansion() {
        let direct = q_beta(qc(2.0), qc(3.0), qc(0.5)).unwrap();
        let series = q_beta_series(qc(2.0), qc(3.0), qc(0.5), 1e-15).unwrap();
        assert!(direct.approx_eq(series, 1e-12), "{direct} vs {series}");
        let direct = q_beta(qc(0.8), qc(1.4), qc(0.3)).unwrap();
        let series = q_beta_series(qc(0.8), qc(1.4), qc(0.3), 1e-15).unwrap();
        assert!(direct.approx_eq(series, 1e-12), "{direct} vs {series}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn q_beta_is_symmetric_and_gamma_steps_commute(
            x in 0.2f64..2.5,
            y in 0.2f64..2.5,
            q in 0.1f64..0.8,
        ) {
            let (x, y, q) = (qc(x), qc(y), qc(q));
            let lhs = q_beta(x, y, q).unwrap();
            let rhs = q_beta(y, x, q).unwrap();
            prop_assert!(lhs.approx_eq(rhs, 1e-12));
            let step = q_gamma(x + QComplex::ONE, q).unwrap();
            let direct = (QComplex::ONE - q.powc(x)) / (QComplex::ONE - q)
                * q_gamma(x, q).unwrap();
            prop_assert!(step.approx_eq(direct, 1e-12));
        }
    }

    // -- q-integrals --------------------------------------------------------

    #[test]
    fn unit_interval_integrals_of_monomials() {
        let one = |_t: QComplex| Ok(QComplex::ONE);
        let ident = |t: QComplex| Ok(t);
        for &q in &[0.3, 0.5, 0.8] {
            let spec = QIntegralSpec {
                kind: QIntegralKind::ZeroToOne,
                base: qc(q),
                integrand: &one,
            };
            let v = q_integral(&spec, 1e-14).unwrap();
            assert!(v.approx_eq(QComplex::ONE, 1e-12), "constant at q={q}: {v}");
            let spec = QIntegralSpec {
                kind: QIntegralKind::ZeroToOne,
                base: qc(q),
                integrand: &ident,
            };
            let v = q_integral(&spec, 1e-14).unwrap();
            let expected = qc(1.0 / (1.0 + q));
            assert!(v.approx_eq(expected, 1e-12), "linear at q={q}: {v}");
        }
        // near q = 1 the node sum approaches the classical integral of t
        let spec = QIntegralSpec {
            kind: QIntegralKind::ZeroToOne,
            base: qc(0.9999),
            integrand: &ident,
        };
        let v = q_integral(&spec, 1e-12).unwrap();
        assert!((v - qc(0.5)).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn q_integral_is_additive_over_nested_intervals() {
        let f = |t: QComplex| Ok(t * t + QComplex::ONE);
        let q = qc(0.45);
        let (a, b, c) = (qc(0.2), qc(0.55), qc(0.9));
        let part = |lo, hi| {
            let spec = QIntegralSpec {
                kind: QIntegralKind::Between(lo, hi),
                base: q,
                integrand: &f,
            };
            q_integral(&spec, 1e-14).unwrap()
        };
        let joined = part(a, b) + part(b, c);
        let whole = part(a, c);
        assert!(joined.approx_eq(whole, 1e-13), "{joined} vs {whole}");
    }

    #[test]
    fn bilateral_integral_of_even_function_doubles_the_half_line() {
        // an even integrand decaying fast enough at infinity for the
        // outward node sums to settle
        let q = qc(0.4);
        let f = move |t: QComplex| {
            let w = qpoch_inf(-(t * t), q)?;
            Ok(QComplex::ONE / w)
        };
        let half = QIntegralSpec {
            kind: QIntegralKind::ZeroToInfinity,
            base: q,
            integrand: &f,
        };
        let both = QIntegralSpec {
            kind: QIntegralKind::Bilateral,
            base: q,
            integrand: &f,
        };
        let half_v = q_integral(&half, 1e-13).unwrap();
        let both_v = q_integral(&both, 1e-13).unwrap();
        assert!(both_v.approx_eq(2.0 * half_v, 1e-11), "{both_v} vs {half_v}");
    }

    #[test]
    fn non_decaying_integrand_reports_truncation() {
        // f(t) = 1/t makes every node term equal, so the stopping rule
        // never fires and the cap must be reported
        let f = |t: QComplex| Ok(QComplex::ONE / t);
        let spec = QIntegralSpec {
            kind: QIntegralKind::ZeroToOne,
            base: qc(0.5),
            integrand: &f,
        };
        assert!(matches!(
            q_integral(&spec, 1e-9),
            Err(QError::Truncation(_))
        ));
    }

    // -- integral representations -------------------------------------------

    #[test]
    fn q_beta_integral_representation_checks() {
        let r = q_beta_integral_check(QComplex::ONE, QComplex::ONE, qc(0.5), 1e-10);
        assert!(r.pass, "{:?}", r.error);
        assert!(r.lhs.unwrap().approx_eq(QComplex::ONE, 1e-10));
        let r = q_beta_integral_check(qc(2.0), qc(3.0), qc(0.5), 1e-10);
        assert!(r.pass, "rel err {:?}", r.rel_err);
        let r = q_beta_integral_check(qc(0.5), qc(1.5), qc(0.3), 1e-10);
        assert!(r.pass, "rel err {:?}", r.rel_err);
    }

    #[test]
    fn thomae_representation_checks() {
        // zero argument: the series collapses to 1 and the integral side
        // reduces to the q-beta normalization
        let r = thomae_integral_check(qc(0.5), qc(1.2), qc(2.0), QComplex::ZERO, qc(0.5), 1e-10);
        assert!(r.pass, "{:?}", r.error);
        assert!(r.lhs.unwrap().approx_eq(QComplex::ONE, 1e-12));
        assert!(r.rhs.unwrap().approx_eq(QComplex::ONE, 1e-10));
        let r = thomae_integral_check(qc(0.5), qc(1.2), qc(2.0), qc(0.4), qc(0.5), 1e-9);
        assert!(r.pass, "rel err {:?}", r.rel_err);
        // a nonpositive real part on the integration exponent is rejected
        let r = thomae_integral_check(qc(0.5), qc(-0.2), qc(2.0), qc(0.4), qc(0.5), 1e-9);
        assert!(!r.pass);
        assert!(r.error.as_deref().unwrap().contains("Re b > 0"));
    }

    // -- Askey-Wilson -------------------------------------------------------

    #[test]
    fn askey_wilson_integral_matches_closed_form() {
        // all parameters zero: the closed form collapses to 2 pi / (q;q)_inf
        let z = QComplex::ZERO;
        let q = qc(0.5);
        let quad = askey_wilson_integral(z, z, z, z, q, 256).unwrap();
        let expected = 2.0 * PI / qpoch_inf(q, q).unwrap();
        assert!(quad.approx_eq(expected, 1e-8), "{quad} vs {expected}");

        let r = aw_check(qc(0.5), qc(-0.3), qc(0.2), qc(0.1), qc(0.5), 1e-6);
        assert!(r.pass, "rel err {:?}", r.rel_err);
        assert_eq!(r.diagnostics.quadrature_order, Some(512));
    }

    #[test]
    fn askey_wilson_rejects_modulus_one_parameters() {
        assert!(matches!(
            askey_wilson_integral(qc(1.0), qc(0.2), qc(0.1), qc(0.1), qc(0.5), 64),
            Err(QError::Domain(_))
        ));
        let r = aw_check(qc(1.0), qc(0.2), qc(0.1), qc(0.1), qc(0.5), 1e-6);
        assert!(!r.pass);
        assert!(r.error.is_some());
    }

    #[test]
    fn aw_check_passes_on_random_parameter_draws() {
        let domain = ParamDomain::new(vec![
            md("a", 0.0, 0.6),
            md("b", 0.0, 0.6),
            md("c", 0.0, 0.6),
            md("d", 0.0, 0.6),
            md("q", 0.05, 0.6),
        ]);
        let mut rng = substream(5, "askey_wilson_integral");
        for i in 0..20 {
            let s = sample(&domain, &mut rng).unwrap();
            let r = aw_check(s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("q"), 1e-6);
            assert!(r.pass, "draw {i} failed: {:?} rel_err {:?}", r.error, r.rel_err);
        }
    }

    #[test]
    fn quadrature_grid_integrates_exactly_and_normalizes() {
        for &n in &[8usize, 64] {
            let grid = QuadratureGrid::gauss_legendre(n);
            let total: f64 = grid.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "weights sum to {total} at n={n}");
        }
        let grid = QuadratureGrid::gauss_legendre(8);
        let sq = |x: f64| Ok(qc(x * x));
        let v = grid.integrate(-1.0, 1.0, &sq).unwrap();
        assert!(v.approx_eq(qc(2.0 / 3.0), 1e-13), "got {v}");
    }

    #[test]
    fn trapezoid_and_gauss_legendre_quadratures_agree() {
        let (a, b, c, d, q) = (qc(0.5), qc(-0.3), qc(0.2), qc(0.1), qc(0.5));
        let trap = askey_wilson_integral(a, b, c, d, q, 256).unwrap();
        let grid = QuadratureGrid::gauss_legendre(64);
        let g = |theta: f64| aw_integrand(theta, [a, b, c, d], q);
        let gl = grid.integrate(0.0, PI, &g).unwrap();
        assert!(trap.approx_eq(gl, 1e-9), "{trap} vs {gl}");
    }

    // -- q-integral identity checks ------------------------------------------

    #[test]
    fn qintegral_check_ids_are_unique_and_complete() {
        let ids: Vec<_> = qintegral_checks().iter().map(|c| c.id).collect();
        assert_eq!(
            ids,
            vec!["alsalam_verma", "sears_qint", "bailey_qint_8phi7", "bailey_qint_4term"]
        );
        assert!(matches!(
            lookup_qintegral("missing"),
            Err(QError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn sears_qint_at_a_fixed_point() {
        let mut s = SampleParams::default();
        s.set("a", qc(0.2));
        s.set("b", qc(0.5));
        s.set("d", qc(0.3));
        s.set("e", qc(0.25));
        s.set("f", qc(0.15));
        s.set("q", qc(0.5));
        let r = qintegral_identity_check("sears_qint", &s, 1e-8);
        assert!(r.pass, "rel err {:?}", r.rel_err);
    }

    #[test]
    fn every_qintegral_check_verifies_on_sampled_points() {
        for check in qintegral_checks() {
            let (draws, tol) = if check.id == "bailey_qint_4term" {
                (3, 1e-6)
            } else {
                (20, 1e-8)
            };
            let mut rng = substream(3, check.id);
            for i in 0..draws {
                let s = sample(&check.domain, &mut rng).unwrap();
                let r = qintegral_identity_check(check.id, &s, tol);
                assert!(
                    r.pass,
                    "{} draw {i} failed: {:?} rel_err {:?} at {:?}",
                    check.id, r.error, r.rel_err, r.params
                );
            }
        }
    }

    #[test]
    fn qintegral_check_rejects_out_of_domain_records() {
        let mut s = SampleParams::default();
        // an endpoint pair violating the conditioning constraints
        for (name, v) in [
            ("a", 0.9),
            ("b", 0.9),
            ("c", 0.9),
            ("d", 0.9),
            ("e", 0.9),
            ("q", 0.9),
        ] {
            s.set(name, qc(v));
        }
        let r = qintegral_identity_check("bailey_qint_8phi7", &s, 1e-8);
        assert!(!r.pass);
        assert!(r.error.as_deref().unwrap().contains("domain"));
    }
}
