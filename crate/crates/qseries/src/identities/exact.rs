//! Exact rational verification of the terminating identities.
//!
//! Every quantity in a terminating identity is a rational function of the
//! parameters, so with rational inputs both sides can be computed in
//! exact arithmetic and compared with `==`. Samples draw q from
//! {1/2, 1/3, 2/3} and the remaining parameters as small rationals;
//! draws that hit a pole are simply redrawn.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::IdentityEntry;
use crate::domain::{ParamKind, SampleParams};
use crate::error::{QError, Result};
use crate::qcore::{qbinom, qpoch};
use crate::scalar::{QComplex, Rat, Scalar};
use crate::series::{eval_phi, make_vwp_with_root, termination_index, SeriesSpec};

/// Rational draws can accidentally collide with a power of q (for
/// example b = 3/2 with q = 2/3), which would truncate the series at the
/// wrong index and silently change the identity being tested. Such draws
/// are rejected and redrawn.
fn expect_termination(spec: &SeriesSpec<Rat>, n: i64) -> Result<()> {
    if termination_index(&spec.numerators, &spec.base) != Some(n) {
        return Err(QError::Domain(
            "degenerate rational draw: unexpected termination index".into(),
        ));
    }
    Ok(())
}

/// One rational parameter assignment.
#[derive(Clone, Debug, Default)]
pub struct ExactSample {
    pub values: BTreeMap<String, Rat>,
    pub ints: BTreeMap<String, i64>,
}

impl ExactSample {
    pub fn c(&self, name: &str) -> Rat {
        self.values
            .get(name)
            .unwrap_or_else(|| panic!("parameter {name} missing from exact sample"))
            .clone()
    }

    pub fn int(&self, name: &str) -> i64 {
        *self
            .ints
            .get(name)
            .unwrap_or_else(|| panic!("integer parameter {name} missing from exact sample"))
    }

    pub fn set(&mut self, name: &str, v: Rat) {
        self.values.insert(name.to_string(), v);
    }

    pub fn set_int(&mut self, name: &str, v: i64) {
        self.ints.insert(name.to_string(), v);
    }
}

/// Outcome of one exact comparison; `pass` is exact equality.
#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub sample: ExactSample,
    pub lhs: Rat,
    pub rhs: Rat,
    pub pass: bool,
}

/// Draws rational parameters for an entry: q from {1/2, 1/3, 2/3},
/// integers capped at 5, everything else a small signed rational. The
/// entry's float-domain constraint is applied through a double-precision
/// shadow of the draw.
pub fn sample_exact(entry: &IdentityEntry, rng: &mut ChaCha8Rng) -> Result<ExactSample> {
    const Q_CHOICES: [(i64, i64); 3] = [(1, 2), (1, 3), (2, 3)];
    const MAX_ATTEMPTS: u32 = 10_000;
    for _ in 0..MAX_ATTEMPTS {
        let mut s = ExactSample::default();
        let mut shadow = SampleParams::default();
        for &(name, kind) in &entry.domain.params {
            match kind {
                ParamKind::Integer { lo, hi } => {
                    let v = rng.gen_range(lo..=hi.min(5));
                    s.set_int(name, v);
                    shadow.set_int(name, v);
                }
                _ => {
                    let v = if name == "q" {
                        let (num, den) = Q_CHOICES[rng.gen_range(0..Q_CHOICES.len())];
                        Rat::new(num, den)
                    } else {
                        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                        Rat::new(sign * rng.gen_range(1..=5), rng.gen_range(2..=7))
                    };
                    shadow.set(name, QComplex::real(v.to_f64()));
                    s.set(name, v);
                }
            }
        }
        if entry.domain.constraint.map_or(true, |c| c(&shadow)) {
            return Ok(s);
        }
    }
    Err(QError::Domain(format!(
        "exact rejection sampler failed after {MAX_ATTEMPTS} attempts for {}",
        entry.id
    )))
}

/// Verifies one exactable identity at a freshly drawn rational point,
/// redrawing when a draw hits a pole of either side.
pub fn verify_exact(id: &str, rng: &mut ChaCha8Rng) -> Result<ExactOutcome> {
    let entry = super::lookup(id)?;
    let eval = entry.exact.ok_or_else(|| {
        QError::Domain(format!("{id} has no exact rational form"))
    })?;
    for _ in 0..200 {
        let sample = sample_exact(entry, rng)?;
        match eval(&sample) {
            Ok((lhs, rhs)) => {
                let pass = lhs == rhs;
                return Ok(ExactOutcome {
                    sample,
                    lhs,
                    rhs,
                    pass,
                });
            }
            Err(_) => continue,
        }
    }
    Err(QError::Domain(format!(
        "could not draw an evaluable exact sample for {id}"
    )))
}

/// Quotient of products of (x;q)_n over rational parameter lists.
fn pr(numer: &[Rat], denom: &[Rat], q: &Rat, n: i64) -> Result<Rat> {
    let mut top = Rat::one();
    for x in numer {
        top = top.mul(&qpoch(x, q, n)?);
    }
    let mut bottom = Rat::one();
    for x in denom {
        bottom = bottom.mul(&qpoch(x, q, n)?);
    }
    top.div(&bottom)
}

fn delta(n: i64) -> Rat {
    if n == 0 {
        Rat::one()
    } else {
        Rat::zero()
    }
}

pub(super) fn q_binomial_terminating(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (q, z, m) = (s.c("q"), s.c("z"), s.int("m"));
    let spec = SeriesSpec::phi(vec![q.powi(-m)?], vec![], q.clone(), z.clone());
    expect_termination(&spec, m)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let rhs = qpoch(&z.mul(&q.powi(-m)?), &q, m)?;
    Ok((lhs, rhs))
}

pub(super) fn product_addition(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (a, b, q, n) = (s.c("a"), s.c("b"), s.c("q"), s.int("n"));
    let mut lhs = Rat::zero();
    for k in 0..=n {
        let term = qbinom(n, k, &q)?
            .mul(&qpoch(&a, &q, n - k)?)
            .mul(&qpoch(&b, &q, k)?)
            .mul(&a.powi(k)?);
        lhs = lhs.add(&term);
    }
    let rhs = qpoch(&a.mul(&b), &q, n)?;
    Ok((lhs, rhs))
}

pub(super) fn q_vandermonde_a(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (a, c, q, n) = (s.c("a"), s.c("c"), s.c("q"), s.int("n"));
    let z = c.mul(&q.powi(n)?).div(&a)?;
    let spec = SeriesSpec::phi(vec![a.clone(), q.powi(-n)?], vec![c.clone()], q.clone(), z);
    expect_termination(&spec, n)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let rhs = pr(&[c.div(&a)?], &[c.clone()], &q, n)?;
    Ok((lhs, rhs))
}

pub(super) fn q_vandermonde_b(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (a, c, q, n) = (s.c("a"), s.c("c"), s.c("q"), s.int("n"));
    let spec = SeriesSpec::phi(
        vec![a.clone(), q.powi(-n)?],
        vec![c.clone()],
        q.clone(),
        q.clone(),
    );
    expect_termination(&spec, n)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let rhs = pr(&[c.div(&a)?], &[c.clone()], &q, n)?.mul(&a.powi(n)?);
    Ok((lhs, rhs))
}

pub(super) fn q_saalschutz(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (a, b, c, q, n) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.int("n"));
    let d2 = a.mul(&b).mul(&q.powi(1 - n)?).div(&c)?;
    let spec = SeriesSpec::phi(
        vec![a.clone(), b.clone(), q.powi(-n)?],
        vec![c.clone(), d2],
        q.clone(),
        q.clone(),
    );
    expect_termination(&spec, n)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let rhs = pr(
        &[c.div(&a)?, c.div(&b)?],
        &[c.clone(), c.div(&a.mul(&b))?],
        &q,
        n,
    )?;
    Ok((lhs, rhs))
}

pub(super) fn delta_6phi5(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (r, b, q, n) = (s.c("r"), s.c("b"), s.c("q"), s.int("n"));
    let a = r.mul(&r);
    let rest = [
        b.clone(),
        a.mul(&q.powi(n)?).div(&b)?,
        q.powi(-n)?,
    ];
    let spec = make_vwp_with_root(&a, &r, &rest, &q, &q)?;
    expect_termination(&spec, n)?;
    Ok((eval_phi(&spec, 0.0)?, delta(n)))
}

pub(super) fn delta_4phi3(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (r, q, n) = (s.c("r"), s.c("q"), s.int("n"));
    let a = r.mul(&r);
    let spec = make_vwp_with_root(&a, &r, &[q.powi(-n)?], &q, &q.powi(n)?)?;
    expect_termination(&spec, n)?;
    Ok((eval_phi(&spec, 0.0)?, delta(n)))
}

pub(super) fn vwp_6phi5_terminating(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (r, b, c, q, n) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"), s.int("n"));
    let a = r.mul(&r);
    let z = a.mul(&q.powi(n + 1)?).div(&b.mul(&c))?;
    let spec = make_vwp_with_root(&a, &r, &[b.clone(), c.clone(), q.powi(-n)?], &q, &z)?;
    expect_termination(&spec, n)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let aq = a.mul(&q);
    let rhs = pr(
        &[aq.clone(), aq.div(&b.mul(&c))?],
        &[aq.div(&b)?, aq.div(&c)?],
        &q,
        n,
    )?;
    Ok((lhs, rhs))
}

pub(super) fn jackson_8phi7(s: &ExactSample) -> Result<(Rat, Rat)> {
    let (r, b, c, d, q, n) = (
        s.c("r"),
        s.c("b"),
        s.c("c"),
        s.c("d"),
        s.c("q"),
        s.int("n"),
    );
    let a = r.mul(&r);
    let e = a.mul(&a).mul(&q.powi(n + 1)?).div(&b.mul(&c).mul(&d))?;
    let rest = [b.clone(), c.clone(), d.clone(), e, q.powi(-n)?];
    let spec = make_vwp_with_root(&a, &r, &rest, &q, &q)?;
    expect_termination(&spec, n)?;
    let lhs = eval_phi(&spec, 0.0)?;
    let aq = a.mul(&q);
    let rhs = pr(
        &[
            aq.clone(),
            aq.div(&b.mul(&c))?,
            aq.div(&b.mul(&d))?,
            aq.div(&c.mul(&d))?,
        ],
        &[
            aq.div(&b)?,
            aq.div(&c)?,
            aq.div(&d)?,
            aq.div(&b.mul(&c).mul(&d))?,
        ],
        &q,
        n,
    )?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::substream;
    use crate::identities::registry;

    #[test]
    fn exactable_entries_have_exact_evaluators() {
        for entry in registry() {
            assert_eq!(
                entry.exactable,
                entry.exact.is_some(),
                "{}: exactable flag and exact fn disagree",
                entry.id
            );
        }
    }

    #[test]
    fn all_exactable_identities_hold_with_zero_error() {
        for entry in registry().iter().filter(|e| e.exactable) {
            let mut rng = substream(11, entry.id);
            for i in 0..5 {
                let outcome = verify_exact(entry.id, &mut rng).unwrap();
                assert!(
                    outcome.pass,
                    "{} exact sample {i}: {} != {} at {:?}",
                    entry.id, outcome.lhs, outcome.rhs, outcome.sample
                );
            }
        }
    }

    #[test]
    fn exact_sampling_is_deterministic() {
        let entry = crate::identities::lookup("q_saalschutz").unwrap();
        let a = sample_exact(entry, &mut substream(3, "q_saalschutz")).unwrap();
        let b = sample_exact(entry, &mut substream(3, "q_saalschutz")).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.ints, b.ints);
    }
}
