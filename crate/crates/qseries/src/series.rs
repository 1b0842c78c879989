//! Structural classification, convergence regions, and summation of
//! unilateral and bilateral basic hypergeometric series.
//!
//! A unilateral series sums, over n >= 0, the term
//!
//! ```text
//!   (a1,...,ar;q)_n / [(q;q)_n (b1,...,bs;q)_n]
//!     * [(-1)^n q^{n(n-1)/2}]^{1+s-r} * z^n,
//! ```
//!
//! and a bilateral series sums over all integers n (without the implicit
//! (q;q)_n factor, and with the balancing exponent s-r). Terms are built
//! incrementally from the term ratio, which is a rational function of q^n.

use crate::diag;
use crate::error::{QError, Result};
use crate::scalar::{QComplex, Scalar, REL_TOL};

/// Hard cap on summed terms before reporting a truncation failure.
pub const TERM_CAP: i64 = 1_000_000;

/// Largest exponent scanned when detecting numerator parameters of the
/// form q^{-m} (termination) and balance offsets q^k.
pub const N_MAX: i64 = 200;

/// Number of consecutive relatively-small terms required to stop a
/// nonterminating sum. q-series terms can dip to zero non-monotonically,
/// so a single small term is not evidence of convergence.
const SMALL_RUN: u32 = 3;

/// Parameters of a basic hypergeometric series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec<F: Scalar = QComplex> {
    pub numerators: Vec<F>,
    pub denominators: Vec<F>,
    pub base: F,
    pub argument: F,
    pub bilateral: bool,
}

impl<F: Scalar> SeriesSpec<F> {
    /// Unilateral series (summation over n >= 0).
    pub fn phi(numerators: Vec<F>, denominators: Vec<F>, base: F, argument: F) -> Self {
        SeriesSpec {
            numerators,
            denominators,
            base,
            argument,
            bilateral: false,
        }
    }

    /// Bilateral series (summation over all integers n).
    pub fn psi(numerators: Vec<F>, denominators: Vec<F>, base: F, argument: F) -> Self {
        SeriesSpec {
            numerators,
            denominators,
            base,
            argument,
            bilateral: true,
        }
    }

    fn r(&self) -> i64 {
        self.numerators.len() as i64
    }

    fn s(&self) -> i64 {
        self.denominators.len() as i64
    }
}

/// Structural flags of a series, all detected up to the structural
/// matching tolerance (exact in rational mode).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesClass {
    /// Smallest m with a numerator parameter equal to q^{-m}; the series
    /// then stops after the n = m term.
    pub terminating: Option<i64>,
    /// k such that the denominator parameters multiply to q^k times the
    /// numerator parameters, with argument q (k = 1 is "balanced").
    pub balanced_k: Option<i64>,
    /// Pairwise products q*a1 = a2*b1 = ... = a_{r+1}*b_r all agree.
    pub well_poised: bool,
    /// Well-poised with the second and third numerator parameters equal to
    /// +/- q*sqrt(a1).
    pub very_well_poised: bool,
    /// The pairwise products agree within each of two blocks, with the
    /// leading block poised on q*a1 and the trailing block on a different
    /// common value.
    pub split_poised: bool,
}

/// Where a series converges absolutely, as a region in |z|.
/// Boundary moduli are treated as outside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConvergenceRegion {
    AllZ,
    Disk { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    EmptyUnlessTerminating,
}

impl ConvergenceRegion {
    pub fn contains(&self, z_modulus: f64) -> bool {
        match *self {
            ConvergenceRegion::AllZ => true,
            ConvergenceRegion::Disk { radius } => z_modulus < radius,
            ConvergenceRegion::Annulus { inner, outer } => {
                inner < z_modulus && z_modulus < outer
            }
            ConvergenceRegion::EmptyUnlessTerminating => false,
        }
    }
}

/// Smallest m in 0..=N_MAX with a * q^m = 1 (i.e. a = q^{-m}) over the
/// given parameters, detected with structural tolerance.
pub fn termination_index<F: Scalar>(params: &[F], q: &F) -> Option<i64> {
    let one = F::one();
    let mut best: Option<i64> = None;
    for a in params {
        let mut p = a.clone();
        for m in 0..=N_MAX {
            if p.is_near(&one) {
                best = Some(best.map_or(m, |b| b.min(m)));
                break;
            }
            if q.is_zero() {
                break;
            }
            p = p.mul(q);
        }
    }
    best
}

/// Detects k in -N_MAX..=N_MAX with target = q^k * base_val.
fn power_offset<F: Scalar>(base_val: &F, target: &F, q: &F) -> Option<i64> {
    if base_val.near_pole() || q.near_pole() {
        return None;
    }
    let mut up = base_val.clone();
    for k in 0..=N_MAX {
        if target.is_near(&up) {
            return Some(k);
        }
        up = up.mul(q);
    }
    let qinv = q.recip().ok()?;
    let mut down = base_val.mul(&qinv);
    for k in 1..=N_MAX {
        if target.is_near(&down) {
            return Some(-k);
        }
        down = down.mul(&qinv);
    }
    None
}

/// Total structural classification; never fails.
pub fn classify<F: Scalar>(spec: &SeriesSpec<F>) -> SeriesClass {
    let q = &spec.base;
    let mut class = SeriesClass {
        terminating: termination_index(&spec.numerators, q),
        ..SeriesClass::default()
    };

    // Balance and poise are structural notions for series with one more
    // numerator parameter than denominator parameters (counting the
    // implicit (q;q)_n factor separately).
    if spec.bilateral || spec.r() != spec.s() + 1 {
        return class;
    }

    if spec.argument.is_near(q) {
        let prod_num = spec
            .numerators
            .iter()
            .fold(F::one(), |acc, a| acc.mul(a));
        let prod_den = spec
            .denominators
            .iter()
            .fold(F::one(), |acc, b| acc.mul(b));
        class.balanced_k = power_offset(&prod_num, &prod_den, q);
    }

    if !spec.denominators.is_empty() {
        let pivot = q.mul(&spec.numerators[0]);
        let pairs: Vec<F> = spec
            .numerators
            .iter()
            .skip(1)
            .zip(&spec.denominators)
            .map(|(a, b)| a.mul(b))
            .collect();
        class.well_poised = pairs.iter().all(|p| p.is_near(&pivot));
        if class.well_poised && spec.numerators.len() >= 3 {
            let a2 = &spec.numerators[1];
            let a3 = &spec.numerators[2];
            // a2 = q sqrt(a1) and a3 = -q sqrt(a1), checked without
            // choosing a square-root branch.
            class.very_well_poised =
                a3.is_near(&a2.neg()) && a2.mul(a2).is_near(&q.mul(q).mul(&spec.numerators[0]));
        }
        if !class.well_poised {
            let lead = pairs.iter().take_while(|p| p.is_near(&pivot)).count();
            if lead >= 1 && lead < pairs.len() {
                let tail_pivot = &pairs[lead];
                class.split_poised = pairs[lead..].iter().all(|p| p.is_near(tail_pivot));
            }
        }
    }
    class
}

fn modulus_product<F: Scalar>(params: &[F]) -> f64 {
    params.iter().map(|p| p.modulus()).product()
}

/// Ratio of denominator-parameter moduli to numerator-parameter moduli,
/// the radius governing |q| > 1 and bilateral convergence.
fn radius_ratio<F: Scalar>(spec: &SeriesSpec<F>) -> f64 {
    let num = modulus_product(&spec.numerators);
    let den = modulus_product(&spec.denominators);
    if num == 0.0 {
        f64::INFINITY
    } else {
        den / num
    }
}

/// Convergence region of the positive-n half of a bilateral series
/// (no implicit (q;q)_n factor, balancing exponent s - r).
fn positive_half_region<F: Scalar>(spec: &SeriesSpec<F>) -> ConvergenceRegion {
    let qm = spec.base.modulus();
    let (r, s) = (spec.r(), spec.s());
    if qm < 1.0 {
        if r < s {
            ConvergenceRegion::AllZ
        } else if r == s {
            ConvergenceRegion::Disk { radius: 1.0 }
        } else {
            ConvergenceRegion::EmptyUnlessTerminating
        }
    } else if qm > 1.0 {
        ConvergenceRegion::Disk {
            radius: radius_ratio(spec),
        }
    } else {
        ConvergenceRegion::EmptyUnlessTerminating
    }
}

/// Region of absolute convergence in |z|, implementing the full
/// unilateral/bilateral taxonomy for |q| < 1 and |q| > 1.
/// |q| = 1 (and q = 0 for bilateral series) is treated as empty.
pub fn convergence_region<F: Scalar>(spec: &SeriesSpec<F>) -> ConvergenceRegion {
    let qm = spec.base.modulus();
    let (r, s) = (spec.r(), spec.s());
    if !spec.bilateral {
        if termination_index(&spec.numerators, &spec.base).is_some() {
            return ConvergenceRegion::AllZ;
        }
        if qm < 1.0 {
            if r <= s {
                ConvergenceRegion::AllZ
            } else if r == s + 1 {
                ConvergenceRegion::Disk { radius: 1.0 }
            } else {
                ConvergenceRegion::EmptyUnlessTerminating
            }
        } else if qm > 1.0 {
            let radius = radius_ratio(spec);
            if radius == 0.0 {
                ConvergenceRegion::EmptyUnlessTerminating
            } else if radius.is_infinite() {
                ConvergenceRegion::AllZ
            } else {
                ConvergenceRegion::Disk { radius }
            }
        } else {
            ConvergenceRegion::EmptyUnlessTerminating
        }
    } else {
        let radius = radius_ratio(spec);
        if qm < 1.0 && qm > 0.0 {
            if r > s {
                ConvergenceRegion::EmptyUnlessTerminating
            } else if r < s {
                ConvergenceRegion::Annulus {
                    inner: radius,
                    outer: f64::INFINITY,
                }
            } else {
                ConvergenceRegion::Annulus {
                    inner: radius,
                    outer: 1.0,
                }
            }
        } else if qm > 1.0 {
            if r > s {
                ConvergenceRegion::Annulus {
                    inner: 0.0,
                    outer: radius,
                }
            } else if r < s {
                ConvergenceRegion::EmptyUnlessTerminating
            } else {
                ConvergenceRegion::Annulus {
                    inner: 1.0,
                    outer: radius,
                }
            }
        } else {
            ConvergenceRegion::EmptyUnlessTerminating
        }
    }
}

/// Core summation loop shared by every series evaluator. Terms are built
/// from the ratio
///
/// ```text
///   t_{n+1}/t_n = prod(1 - a_i q^n) / [opt (1 - q^{n+1}) * prod(1 - b_j q^n)]
///                 * z * (-q^n)^balance_exp,
/// ```
///
/// summing n = 0..=m when `terminate_at = Some(m)`, otherwise until the
/// term has been relatively small for three consecutive steps.
fn sum_hypergeometric<F: Scalar>(
    numer: &[F],
    denom: &[F],
    implicit_q_factorial: bool,
    q: &F,
    z: &F,
    balance_exp: i64,
    terminate_at: Option<i64>,
    tol: f64,
) -> Result<F> {
    let one = F::one();
    let mut term = F::one();
    let mut sum = F::one();
    let mut qn = F::one(); // q^n
    let mut small_run = 0u32;
    let mut n: i64 = 0;
    loop {
        if terminate_at == Some(n) {
            break;
        }
        let mut ratio = z.clone();
        for a in numer {
            ratio = ratio.mul(&one.sub(&a.mul(&qn)));
        }
        let qn1 = qn.mul(q);
        if implicit_q_factorial {
            let f = one.sub(&qn1);
            if f.near_pole() {
                return Err(QError::Pole(format!(
                    "factor 1 - q^{} vanishes (q is a root of unity)",
                    n + 1
                )));
            }
            ratio = ratio.div(&f)?;
        }
        for b in denom {
            let f = one.sub(&b.mul(&qn));
            if f.near_pole() {
                return Err(QError::Pole(format!(
                    "denominator parameter equals q^{{-{n}}}: term denominator vanishes"
                )));
            }
            ratio = ratio.div(&f)?;
        }
        if balance_exp != 0 {
            ratio = ratio.mul(&qn.neg().powi(balance_exp)?);
        }
        term = term.mul(&ratio);
        sum = sum.add(&term);
        qn = qn1;
        n += 1;
        if terminate_at.is_none() {
            if term.modulus() <= tol * sum.modulus() {
                small_run += 1;
                if small_run >= SMALL_RUN {
                    break;
                }
            } else {
                small_run = 0;
            }
            if n >= TERM_CAP {
                diag::add_series_terms(n as u64 + 1);
                return Err(QError::Truncation(format!(
                    "series did not settle within {TERM_CAP} terms"
                )));
            }
        }
    }
    diag::add_series_terms(n as u64 + 1);
    Ok(sum)
}

/// Evaluates a unilateral series. Terminating series are summed exactly
/// (bit-for-bit in rational mode); nonterminating series are truncated
/// once the stopping rule fires. For |q| > 1 the series is transformed to
/// base 1/q first, so a single convergence analysis covers both regimes.
pub fn eval_phi<F: Scalar>(spec: &SeriesSpec<F>, tol: f64) -> Result<F> {
    if spec.bilateral {
        return Err(QError::Domain(
            "eval_phi requires a unilateral series".into(),
        ));
    }
    let balance_exp = 1 + spec.s() - spec.r();
    if let Some(m) = termination_index(&spec.numerators, &spec.base) {
        return sum_hypergeometric(
            &spec.numerators,
            &spec.denominators,
            true,
            &spec.base,
            &spec.argument,
            balance_exp,
            Some(m),
            tol,
        );
    }
    let region = convergence_region(spec);
    if !region.contains(spec.argument.modulus()) {
        return Err(QError::Convergence(format!(
            "argument modulus {} outside the convergence region {region:?}",
            spec.argument.modulus()
        )));
    }
    let qm = spec.base.modulus();
    if qm < 1.0 {
        sum_hypergeometric(
            &spec.numerators,
            &spec.denominators,
            true,
            &spec.base,
            &spec.argument,
            balance_exp,
            None,
            tol,
        )
    } else {
        // |q| > 1: invert the base. Each (a;q)_n becomes
        // (1/a;1/q)_n (-a)^n q^{n(n-1)/2}; the sign and triangular powers
        // cancel against the balancing factor, leaving a plain series in
        // base 1/q with argument (a1...ar) z / (q b1...bs).
        if spec
            .numerators
            .iter()
            .chain(&spec.denominators)
            .any(|p| p.near_pole())
        {
            return Err(QError::Domain(
                "|q| > 1 evaluation requires nonzero parameters (base inversion)".into(),
            ));
        }
        let qinv = spec.base.recip()?;
        let inv_num: Vec<F> = spec
            .numerators
            .iter()
            .map(|a| a.recip())
            .collect::<Result<_>>()?;
        let inv_den: Vec<F> = spec
            .denominators
            .iter()
            .map(|b| b.recip())
            .collect::<Result<_>>()?;
        let mut arg = spec.argument.clone();
        for a in &spec.numerators {
            arg = arg.mul(a);
        }
        arg = arg.div(&spec.base)?;
        for b in &spec.denominators {
            arg = arg.div(b)?;
        }
        sum_hypergeometric(&inv_num, &inv_den, true, &qinv, &arg, 0, None, tol)
    }
}

/// True when every negative-index term of a bilateral series vanishes
/// structurally: some denominator parameter equals q, so its reciprocal
/// shifted factorial is zero for all n < 0.
fn negative_half_vanishes<F: Scalar>(spec: &SeriesSpec<F>) -> bool {
    spec.denominators.iter().any(|b| b.is_near(&spec.base))
}

/// Evaluates a bilateral series as the sum of its two unilateral halves:
/// the non-negative-n part first, then the negative-n part rewritten as a
/// series in the reflected parameters q/b_j over q/a_i with argument
/// (b1...bs)/(a1...ar z).
pub fn eval_psi<F: Scalar>(spec: &SeriesSpec<F>, tol: f64) -> Result<F> {
    if !spec.bilateral {
        return Err(QError::Domain("eval_psi requires a bilateral series".into()));
    }
    let neg_vanishes = negative_half_vanishes(spec);
    if spec.argument.near_pole() && !neg_vanishes {
        return Err(QError::Domain(
            "bilateral series with negative powers requires z != 0".into(),
        ));
    }
    let zm = spec.argument.modulus();
    let in_region = convergence_region(spec).contains(zm)
        || (neg_vanishes && positive_half_region(spec).contains(zm));
    let terminating = termination_index(&spec.numerators, &spec.base);
    if !in_region && terminating.is_none() {
        return Err(QError::Convergence(format!(
            "argument modulus {zm} outside the bilateral convergence region"
        )));
    }

    let balance_exp = spec.s() - spec.r();
    let positive = sum_hypergeometric(
        &spec.numerators,
        &spec.denominators,
        false,
        &spec.base,
        &spec.argument,
        balance_exp,
        terminating,
        tol,
    )?;
    if neg_vanishes {
        return Ok(positive);
    }

    if spec
        .numerators
        .iter()
        .chain(&spec.denominators)
        .any(|p| p.near_pole())
    {
        return Err(QError::Domain(
            "bilateral evaluation requires nonzero parameters to reflect the negative half"
                .into(),
        ));
    }
    let q = &spec.base;
    let refl_num: Vec<F> = spec
        .denominators
        .iter()
        .map(|b| q.div(b))
        .collect::<Result<_>>()?;
    let refl_den: Vec<F> = spec
        .numerators
        .iter()
        .map(|a| q.div(a))
        .collect::<Result<_>>()?;
    let mut arg = spec.argument.recip()?;
    for b in &spec.denominators {
        arg = arg.mul(b);
    }
    for a in &spec.numerators {
        arg = arg.div(a)?;
    }
    // The reflected series starts at n = 1; summing from n = 0 and
    // dropping the leading 1 keeps a single summation kernel.
    let reflected = sum_hypergeometric(&refl_num, &refl_den, false, q, &arg, 0, None, tol)?;
    Ok(positive.add(&reflected.sub(&F::one())))
}

/// Expands the compact very-well-poised notation: given the special
/// parameter a and the free parameters a4..a_{r+1}, builds the full series
/// with numerators a, q*root, -q*root, a4, ..., a_{r+1} and denominators
/// root, -root, qa/a4, ..., qa/a_{r+1}, where root^2 = a.
pub fn make_vwp_with_root<F: Scalar>(
    a: &F,
    root: &F,
    rest: &[F],
    q: &F,
    z: &F,
) -> Result<SeriesSpec<F>> {
    if !root.mul(root).is_near(a) {
        return Err(QError::Domain(
            "make_vwp_with_root: root^2 does not match the special parameter".into(),
        ));
    }
    let qroot = q.mul(root);
    let mut numerators = vec![a.clone(), qroot.clone(), qroot.neg()];
    let mut denominators = vec![root.clone(), root.neg()];
    let qa = q.mul(a);
    for p in rest {
        numerators.push(p.clone());
        denominators.push(qa.div(p)?);
    }
    Ok(SeriesSpec::phi(numerators, denominators, q.clone(), z.clone()))
}

/// [`make_vwp_with_root`] with the principal square root of a.
pub fn make_vwp(a: QComplex, rest: &[QComplex], q: QComplex, z: QComplex) -> Result<SeriesSpec> {
    make_vwp_with_root(&a, &a.sqrt(), rest, &q, &z)
}

/// Evaluates a unilateral series at the default tolerance.
pub fn eval_phi_default(spec: &SeriesSpec) -> Result<QComplex> {
    eval_phi(spec, REL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpoch, qpoch_inf, qpoch_multi, qpoch_recip};
    use crate::scalar::Rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qc(x: f64) -> QComplex {
        QComplex::real(x)
    }

    fn phi(num: &[f64], den: &[f64], q: f64, z: f64) -> SeriesSpec {
        SeriesSpec::phi(
            num.iter().map(|&x| qc(x)).collect(),
            den.iter().map(|&x| qc(x)).collect(),
            qc(q),
            qc(z),
        )
    }

    #[test]
    fn classify_generic_2phi1_has_no_structure() {
        let spec = phi(&[0.3, 0.4], &[0.5], 0.5, 0.2);
        assert_eq!(classify(&spec), SeriesClass::default());
    }

    #[test]
    fn classify_balanced_terminating_3phi2() {
        // numerators a, b, q^{-n}; denominators c, ab q^{1-n}/c; argument q
        let (a, b, c, q) = (0.3f64, 0.7, 0.45, 0.5f64);
        let n = 4;
        let spec = phi(
            &[a, b, q.powi(-n)],
            &[c, a * b * q.powi(1 - n) / c],
            q,
            q,
        );
        let class = classify(&spec);
        assert_eq!(class.terminating, Some(n as i64));
        assert_eq!(class.balanced_k, Some(1));
        assert!(!class.well_poised);
    }

    #[test]
    fn classify_vwp_6phi5() {
        let (a, b, c, q) = (qc(0.2), qc(0.3), qc(0.7), qc(0.5));
        let n = 3;
        let qn = qc(0.5f64.powi(-n));
        let z = q * q.powi(n as i64).unwrap() * a / (b * c);
        let spec = make_vwp(a, &[b, c, qn], q, z).unwrap();
        let class = classify(&spec);
        assert!(class.well_poised && class.very_well_poised);
        assert_eq!(class.terminating, Some(n as i64));
        assert!(!class.split_poised);
    }

    #[test]
    fn classify_split_poised() {
        // Leading pair poised on q*a1, trailing pairs on a distinct value.
        let (a, b, c, d, q) = (0.2, 0.3, 0.4, 0.6, 0.5);
        let x = 0.11; // trailing pivot, != q*a
        let spec = phi(&[a, b, c, d], &[q * a / b, x / c, x / d], q, 0.1);
        let class = classify(&spec);
        assert!(class.split_poised && !class.well_poised);

        // All pairs equal: well-poised, not split.
        let spec = phi(&[a, b, c], &[q * a / b, q * a / c], q, 0.1);
        let class = classify(&spec);
        assert!(class.well_poised && !class.split_poised);
    }

    #[test]
    fn convergence_taxonomy_unilateral() {
        // r <= s: entire plane
        assert_eq!(
            convergence_region(&phi(&[], &[0.5], 0.5, 3.0)),
            ConvergenceRegion::AllZ
        );
        // r = s + 1: unit disk
        assert_eq!(
            convergence_region(&phi(&[0.3, 0.4], &[0.5], 0.5, 0.2)),
            ConvergenceRegion::Disk { radius: 1.0 }
        );
        // r > s + 1, |q| < 1: divergent unless terminating
        assert_eq!(
            convergence_region(&phi(&[0.3, 0.4, 0.6], &[], 0.5, 0.2)),
            ConvergenceRegion::EmptyUnlessTerminating
        );
        // terminating always entire plane (2.0 = q^{-1} at q = 0.5)
        assert_eq!(
            convergence_region(&phi(&[2.0, 0.3, 0.6], &[], 0.5, 5.0)),
            ConvergenceRegion::AllZ
        );
        // |q| > 1: disk of radius |b1...bs|/|a1...ar|
        assert_eq!(
            convergence_region(&phi(&[0.3, 0.4], &[0.6], 2.0, 0.2)),
            ConvergenceRegion::Disk { radius: 5.0 }
        );
    }

    #[test]
    fn convergence_taxonomy_bilateral() {
        let psi = |num: &[f64], den: &[f64], q: f64| {
            SeriesSpec::psi(
                num.iter().map(|&x| qc(x)).collect(),
                den.iter().map(|&x| qc(x)).collect(),
                qc(q),
                qc(0.5),
            )
        };
        let annulus = |region: ConvergenceRegion| match region {
            ConvergenceRegion::Annulus { inner, outer } => (inner, outer),
            other => panic!("expected annulus, got {other:?}"),
        };
        let (inner, outer) = annulus(convergence_region(&psi(&[0.5], &[0.1], 0.4)));
        assert!((inner - 0.2).abs() < 1e-15 && outer == 1.0);
        let (inner, outer) = annulus(convergence_region(&psi(&[0.5], &[0.2, 0.4], 0.5)));
        assert!((inner - 0.16).abs() < 1e-15 && outer.is_infinite());
        assert_eq!(
            convergence_region(&psi(&[0.5, 0.3], &[0.2], 0.5)),
            ConvergenceRegion::EmptyUnlessTerminating
        );
        let (inner, outer) = annulus(convergence_region(&psi(&[0.5], &[2.0], 4.0)));
        assert!(inner == 1.0 && (outer - 4.0).abs() < 1e-15);
    }

    #[test]
    fn eval_1phi0_q_binomial_value() {
        // sum (a;q)_n z^n / (q;q)_n = (az;q)_inf / (z;q)_inf
        let (a, q, z) = (qc(0.3), qc(0.5), qc(0.2));
        let spec = SeriesSpec::phi(vec![a], vec![], q, z);
        let v = eval_phi(&spec, 1e-14).unwrap();
        let w = qpoch_inf(a * z, q).unwrap() / qpoch_inf(z, q).unwrap();
        assert!(v.approx_eq(w, 1e-11), "{v} vs {w}");
    }

    #[test]
    fn eval_0phi0_exponential_product() {
        // sum q^{n(n-1)/2} z^n / (q;q)_n = (-z;q)_inf, via argument -z
        let (q, z) = (qc(0.5), qc(0.7));
        let spec = SeriesSpec::phi(vec![], vec![], q, -z);
        let v = eval_phi(&spec, 1e-14).unwrap();
        let w = qpoch_inf(-z, q).unwrap();
        assert!(v.approx_eq(w, 1e-11), "{v} vs {w}");
    }

    #[test]
    fn eval_terminating_counts_exact_terms() {
        let q = qc(0.5);
        let spec = SeriesSpec::phi(vec![q.powi(-2).unwrap()], vec![], q, qc(0.3));
        diag::reset();
        let v = eval_phi(&spec, 1e-14).unwrap();
        let (terms, _) = diag::snapshot();
        assert_eq!(terms, 3);
        // terminating form of the binomial sum: (z q^{-n};q)_n at n = 2
        let w = qpoch(&(qc(0.3) * q.powi(-2).unwrap()), &q, 2).unwrap();
        assert!(v.approx_eq(w, 1e-13), "{v} vs {w}");
    }

    #[test]
    fn eval_terminating_rational_is_exact() {
        let q = Rat::new(1, 2);
        let z = Rat::new(2, 3);
        let n = 4;
        let a = q.powi(-n).unwrap();
        let spec = SeriesSpec::phi(vec![a.clone()], vec![], q.clone(), z.clone());
        let v = eval_phi(&spec, 0.0).unwrap();
        // manual finite sum of the same terms
        let mut expected = Rat::zero();
        for k in 0..=n {
            let t = qpoch(&a, &q, k)
                .unwrap()
                .mul(&z.powi(k).unwrap())
                .div(&qpoch(&q, &q, k).unwrap())
                .unwrap();
            expected = expected.add(&t);
        }
        assert_eq!(v, expected);
        // and the closed form (z q^{-n};q)_n
        let closed = qpoch(&z.mul(&a), &q, n).unwrap();
        assert_eq!(v, closed);
    }

    #[test]
    fn eval_outside_region_rejected() {
        let spec = phi(&[0.3, 0.4], &[0.5], 0.5, 1.2);
        assert!(matches!(
            eval_phi(&spec, 1e-12),
            Err(QError::Convergence(_))
        ));
    }

    #[test]
    fn eval_base_inversion_matches_direct_terms() {
        // |q| > 1 within |z| < |b|/|ab'|: compare against direct term sums.
        let (a, b, c, q, z) = (qc(0.3), qc(0.4), qc(0.6), qc(2.0), qc(0.15));
        let spec = SeriesSpec::phi(vec![a, b], vec![c], q, z);
        let v = eval_phi(&spec, 1e-14).unwrap();
        let mut direct = QComplex::ZERO;
        // Individual shifted factorials at |q| = 2 overflow complex
        // division past n ~ 16, but the terms are negligible well before.
        for n in 0..16i64 {
            let t = qpoch_multi(&[a, b], &q, n).unwrap()
                / (qpoch(&q, &q, n).unwrap() * qpoch(&c, &q, n).unwrap())
                * z.powi(n).unwrap();
            direct = direct + t;
        }
        assert!(v.approx_eq(direct, 1e-10), "{v} vs {direct}");
    }

    #[test]
    fn functional_equations_of_the_binomial_series() {
        // f(a,z) = sum (a;q)_n z^n/(q;q)_n satisfies
        // (1-z) f(a,z) = (1-az) f(a,qz) and f(a,z) = (1-az) f(aq,z).
        let q = qc(0.45);
        let f = |a: QComplex, z: QComplex| {
            eval_phi(&SeriesSpec::phi(vec![a], vec![], q, z), 1e-14).unwrap()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = QComplex::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.5..0.5));
            let z = QComplex::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.5..0.5));
            let lhs = (QComplex::ONE - z) * f(a, z);
            let rhs = (QComplex::ONE - a * z) * f(a, q * z);
            assert!(lhs.approx_eq(rhs, 1e-10), "{lhs} vs {rhs}");
            let rhs2 = (QComplex::ONE - a * z) * f(a * q, z);
            assert!(f(a, z).approx_eq(rhs2, 1e-10));
        }
    }

    #[test]
    fn bilateral_collapse_to_unilateral() {
        // Denominator parameter q kills every negative-index term.
        let (a, q, z) = (qc(0.5), qc(0.4), qc(0.3));
        let spec = SeriesSpec::psi(vec![a], vec![q], q, z);
        let v = eval_psi(&spec, 1e-14).unwrap();
        let w = eval_phi(&SeriesSpec::phi(vec![a], vec![], q, z), 1e-14).unwrap();
        assert!(v.approx_eq(w, 1e-11), "{v} vs {w}");
    }

    #[test]
    fn bilateral_matches_ramanujan_closed_form() {
        let (a, b, q, z) = (qc(0.5), qc(0.1), qc(0.4), qc(0.5));
        let spec = SeriesSpec::psi(vec![a], vec![b], q, z);
        let v = eval_psi(&spec, 1e-14).unwrap();
        let num = qpoch_inf(q, q).unwrap()
            * qpoch_inf(b / a, q).unwrap()
            * qpoch_inf(a * z, q).unwrap()
            * qpoch_inf(q / (a * z), q).unwrap();
        let den = qpoch_inf(b, q).unwrap()
            * qpoch_inf(q / a, q).unwrap()
            * qpoch_inf(z, q).unwrap()
            * qpoch_inf(b / (a * z), q).unwrap();
        let w = num / den;
        assert!(v.approx_eq(w, 1e-10), "{v} vs {w}");
    }

    #[test]
    fn bilateral_matches_direct_two_sided_sum() {
        let (a, b, q, z) = (qc(0.5), qc(0.1), qc(0.4), qc(0.5));
        let spec = SeriesSpec::psi(vec![a], vec![b], q, z);
        let v = eval_psi(&spec, 1e-14).unwrap();
        let mut direct = QComplex::ZERO;
        for n in -35..=35i64 {
            let t = qpoch(&a, &q, n).unwrap()
                * qpoch_recip(&b, &q, n).unwrap()
                * z.powi(n).unwrap();
            direct = direct + t;
        }
        assert!(v.approx_eq(direct, 1e-10), "{v} vs {direct}");
    }

    #[test]
    fn bilateral_outside_annulus_rejected() {
        let spec = SeriesSpec::psi(vec![qc(0.5)], vec![qc(0.1)], qc(0.4), qc(0.05));
        assert!(matches!(eval_psi(&spec, 1e-12), Err(QError::Convergence(_))));
    }

    #[test]
    fn bilateral_b_recurrence() {
        // As a function of b, the two-sided sum satisfies
        // f(b) = (1 - b/a) / [(1-b)(1 - b/(az))] f(bq).
        let (a, q, z) = (qc(0.5), qc(0.4), qc(0.5));
        let f = |b: QComplex| {
            eval_psi(&SeriesSpec::psi(vec![a], vec![b], q, z), 1e-14).unwrap()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let b = QComplex::new(rng.gen_range(0.01..0.2), rng.gen_range(-0.05..0.05));
            let lhs = f(b);
            let rhs = (QComplex::ONE - b / a)
                / ((QComplex::ONE - b) * (QComplex::ONE - b / (a * z)))
                * f(b * q);
            assert!(lhs.approx_eq(rhs, 1e-9), "b = {b}: {lhs} vs {rhs}");
        }
    }

    /// Solves a small dense complex linear system by Gaussian elimination
    /// with partial pivoting; used only to reconstruct parameters from
    /// term ratios.
    fn solve(mut m: Vec<Vec<QComplex>>, mut rhs: Vec<QComplex>) -> Vec<QComplex> {
        let n = rhs.len();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
                .unwrap();
            m.swap(col, piv);
            rhs.swap(col, piv);
            for row in col + 1..n {
                let f = m[row][col] / m[col][col];
                for k in col..n {
                    m[row][k] = m[row][k] - f * m[col][k];
                }
                rhs[row] = rhs[row] - f * rhs[col];
            }
        }
        let mut x = vec![QComplex::ZERO; n];
        for row in (0..n).rev() {
            let mut acc = rhs[row];
            for k in row + 1..n {
                acc = acc - m[row][k] * x[k];
            }
            x[row] = acc / m[row][row];
        }
        x
    }

    #[test]
    fn term_ratio_reconstructs_parameters() {
        // The term ratio of a series with numerators a, b and denominator c
        // is z (1-ax)(1-bx) / [(1-qx)(1-cx)] at x = q^n. Sampling it at four
        // consecutive n and solving the induced linear system recovers
        // z, c and the pair {a, b}.
        let (a, b, c, q, z) = (qc(0.3), qc(0.7), qc(0.45), qc(0.5), qc(0.4));
        let ratio = |n: i64| {
            let x = q.powi(n).unwrap();
            z * (QComplex::ONE - a * x) * (QComplex::ONE - b * x)
                / ((QComplex::ONE - q * x) * (QComplex::ONE - c * x))
        };
        // F(x) = ratio * (1 - qx) satisfies F(x) - c x F(x) = z - z(a+b) x + z ab x^2.
        // Unknowns: (c, z, z(a+b), z*ab).
        let mut m = Vec::new();
        let mut rhs = Vec::new();
        for n in 0..4i64 {
            let x = q.powi(n).unwrap();
            let fx = ratio(n) * (QComplex::ONE - q * x);
            m.push(vec![x * fx, QComplex::ONE, -x, x * x]);
            rhs.push(fx);
        }
        let sol = solve(m, rhs);
        let (c_rec, z_rec) = (sol[0], sol[1]);
        let sum = sol[2] / z_rec;
        let prod = sol[3] / z_rec;
        assert!(c_rec.approx_eq(c, 1e-9));
        assert!(z_rec.approx_eq(z, 1e-9));
        // a and b are the roots of t^2 - sum t + prod.
        let disc = (sum * sum - 4.0 * prod).sqrt();
        let r1 = (sum + disc) / 2.0;
        let r2 = (sum - disc) / 2.0;
        let ok = (r1.approx_eq(a, 1e-8) && r2.approx_eq(b, 1e-8))
            || (r1.approx_eq(b, 1e-8) && r2.approx_eq(a, 1e-8));
        assert!(ok, "roots {r1}, {r2}");
    }

    #[test]
    fn make_vwp_layout() {
        let (a, q, z) = (qc(0.09), qc(0.5), qc(0.2));
        let spec = make_vwp(a, &[qc(0.3), qc(0.7)], q, z).unwrap();
        assert_eq!(spec.numerators.len(), 5);
        assert_eq!(spec.denominators.len(), 4);
        let root = qc(0.3); // principal sqrt of 0.09
        assert!(spec.numerators[1].approx_eq(q * root, 1e-13));
        assert!(spec.numerators[2].approx_eq(-(q * root), 1e-13));
        assert!(spec.denominators[0].approx_eq(root, 1e-13));
        assert!(spec.denominators[2].approx_eq(q * a / qc(0.3), 1e-13));
        assert!(classify(&spec).very_well_poised);
    }
}
