//! The transformation-rule table: each rule pairs an input-series builder
//! with an output-expression builder over a documented sampling domain.
//!
//! Domains are shrunk inside the theoretical hypotheses (convergence
//! bounds scaled to about 0.8, margins around denominator zeros, caps on
//! derived-parameter magnitudes) so that float verification at 1e-9 --
//! 1e-8 for the heaviest multi-term rule -- is well conditioned.

use super::TransformRule;
use crate::domain::{ParamDomain, ParamKind, SampleParams};
use crate::error::Result;
use crate::expression::{CoeffProduct, Expression, ExprTerm};
use crate::identities::{fin_ok, inf_ok, poch_ratio};
use crate::scalar::{QComplex, Scalar};
use crate::series::{eval_phi, make_vwp, SeriesSpec};

fn md(name: &'static str, min: f64, max: f64) -> (&'static str, ParamKind) {
    (name, ParamKind::Modulus { min, max })
}

fn int(name: &'static str, lo: i64, hi: i64) -> (&'static str, ParamKind) {
    (name, ParamKind::Integer { lo, hi })
}

fn dom(params: Vec<(&'static str, ParamKind)>) -> ParamDomain {
    ParamDomain::new(params)
}

/// Margin check on the denominator chains of a very-well-poised series
/// built from special parameter `a` and free parameters `rest`: the two
/// square-root denominators and every qa/p chain.
pub(crate) fn vwp_denoms_ok(a: QComplex, rest: &[QComplex], q: QComplex, margin: f64) -> bool {
    let root = a.sqrt();
    if !inf_ok(root, q, margin) || !inf_ok(-root, q, margin) {
        return false;
    }
    rest.iter().all(|&p| {
        if p.near_pole() {
            return false;
        }
        inf_ok(q * a / p, q, margin)
    })
}

/// Output expression of the 3-term 8W7 relation, shared with its
/// conditioning guard below.
fn bailey_3term_output(s: &SampleParams) -> Result<Expression> {
    let (a, b, c, d, e, f, q) = (
        s.c("a"),
        s.c("b"),
        s.c("c"),
        s.c("d"),
        s.c("e"),
        s.c("f"),
        s.c("q"),
    );
    let z = a * a * q * q / (b * c * d * e * f);
    let def = d * e * f;
    let t1 = ExprTerm {
        coeff: CoeffProduct::one()
            .num(
                q,
                &[
                    a * q,
                    a * q / (d * e),
                    a * q / (d * f),
                    a * q / (e * f),
                    e * q / c,
                    f * q / c,
                    b / a,
                    b * e * f / a,
                ],
            )
            .den(
                q,
                &[
                    a * q / d,
                    a * q / e,
                    a * q / f,
                    a * q / def,
                    q / c,
                    e * f * q / c,
                    b * e / a,
                    b * f / a,
                ],
            ),
        series: Some(make_vwp(
            e * f / c,
            &[a * q / (b * c), a * q / (c * d), e * f / a, e, f],
            q,
            b * d / a,
        )?),
    };
    let t2 = ExprTerm {
        coeff: CoeffProduct::scalar(b / a)
            .num(
                q,
                &[
                    a * q,
                    b * q / a,
                    b * q / c,
                    b * q / d,
                    b * q / e,
                    b * q / f,
                    d,
                    e,
                    f,
                    a * q / (b * c),
                    b * def / (a * a),
                    a * a * q / (b * def),
                ],
            )
            .den(
                q,
                &[
                    a * q / b,
                    a * q / c,
                    a * q / d,
                    a * q / e,
                    a * q / f,
                    b * d / a,
                    b * e / a,
                    b * f / a,
                    def / a,
                    a * q / def,
                    q / c,
                    b * b * q / a,
                ],
            ),
        series: Some(make_vwp(
            b * b / a,
            &[b, b * c / a, b * d / a, b * e / a, b * f / a],
            q,
            z,
        )?),
    };
    Ok(Expression { terms: vec![t1, t2] })
}

/// Magnitude probe for the 3-term relation: its two output terms
/// cancel, and float noise in each term is amplified by the ratio of
/// term magnitude to result magnitude. Draws where that ratio (or the
/// raw term size) is large are rejected so verification at 1e-9 stays
/// meaningful.
fn bailey_3term_conditioned(s: &SampleParams) -> bool {
    let Ok(expr) = bailey_3term_output(s) else {
        return false;
    };
    let mut scale = 0.0f64;
    let mut sum = QComplex::ZERO;
    for term in &expr.terms {
        let Ok(coeff) = term.coeff.eval() else {
            return false;
        };
        let value = match &term.series {
            Some(spec) => match eval_phi(spec, 1e-8) {
                Ok(v) => coeff * v,
                Err(_) => return false,
            },
            None => coeff,
        };
        scale = scale.max(value.abs());
        sum = sum + value;
    }
    sum.abs() > 1e-3 && scale <= 100.0 * sum.abs() && scale <= 1e3
}

pub(super) fn build() -> Vec<TransformRule> {
    vec![
        // -- the Heine chain ------------------------------------------------
        TransformRule {
            id: "heine_1",
            title: "first Heine transformation of 2phi1 (argument moves to b)",
            param_names: &["a", "b", "c", "q", "z"],
            constraints: "|z| < 1, |b| < 1; denominators away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.1, 1.2),
                md("b", 0.1, 0.85),
                md("c", 0.1, 1.0),
                md("q", 0.05, 0.8),
                md("z", 0.05, 0.85),
            ])
            .with_constraint(|s| {
                let (a, b, c, q, z) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                z.abs() <= 0.9
                    && b.abs() <= 0.9
                    && inf_ok(c, q, 0.05)
                    && inf_ok(z, q, 0.05)
                    && inf_ok(a * z, q, 0.05)
            }),
            input: |s| {
                Ok(SeriesSpec::phi(
                    vec![s.c("a"), s.c("b")],
                    vec![s.c("c")],
                    s.c("q"),
                    s.c("z"),
                ))
            },
            output: |s| {
                let (a, b, c, q, z) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                Ok(Expression::single(
                    CoeffProduct::one().num(q, &[b, a * z]).den(q, &[c, z]),
                    SeriesSpec::phi(vec![c / b, z], vec![a * z], q, b),
                ))
            },
        },
        TransformRule {
            id: "heine_2",
            title: "second Heine transformation of 2phi1 (argument c/b)",
            param_names: &["a", "b", "c", "q", "z"],
            constraints: "|z| < 1, |c/b| < 1; denominators away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.1, 1.2),
                md("b", 0.3, 1.2),
                md("c", 0.1, 0.9),
                md("q", 0.05, 0.8),
                md("z", 0.05, 0.85),
            ])
            .with_constraint(|s| {
                let (b, c, q, z) = (s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                z.abs() <= 0.9
                    && (c / b).abs() <= 0.85
                    && inf_ok(c, q, 0.05)
                    && inf_ok(z, q, 0.05)
                    && inf_ok(b * z, q, 0.05)
            }),
            input: |s| {
                Ok(SeriesSpec::phi(
                    vec![s.c("a"), s.c("b")],
                    vec![s.c("c")],
                    s.c("q"),
                    s.c("z"),
                ))
            },
            output: |s| {
                let (a, b, c, q, z) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                Ok(Expression::single(
                    CoeffProduct::one().num(q, &[c / b, b * z]).den(q, &[c, z]),
                    SeriesSpec::phi(vec![a * b * z / c, b], vec![b * z], q, c / b),
                ))
            },
        },
        TransformRule {
            id: "heine_euler",
            title: "Euler-type Heine transformation of 2phi1 (argument abz/c)",
            param_names: &["a", "b", "c", "q", "z"],
            constraints: "|z| < 1, |abz/c| < 1; denominators away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.1, 1.2),
                md("b", 0.1, 1.2),
                md("c", 0.15, 1.0),
                md("q", 0.05, 0.8),
                md("z", 0.05, 0.85),
            ])
            .with_constraint(|s| {
                let (a, b, c, q, z) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                z.abs() <= 0.9
                    && (a * b * z / c).abs() <= 0.85
                    && inf_ok(c, q, 0.05)
                    && inf_ok(z, q, 0.05)
            }),
            input: |s| {
                Ok(SeriesSpec::phi(
                    vec![s.c("a"), s.c("b")],
                    vec![s.c("c")],
                    s.c("q"),
                    s.c("z"),
                ))
            },
            output: |s| heine_euler_output(s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z")),
        },
        TransformRule {
            id: "jackson_2phi2",
            title: "Jackson's 2phi1-to-2phi2 transformation",
            param_names: &["a", "b", "c", "q", "z"],
            constraints: "|z| < 1; denominators away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.1, 1.2),
                md("b", 0.1, 1.3),
                md("c", 0.15, 1.0),
                md("q", 0.05, 0.8),
                md("z", 0.05, 0.85),
            ])
            .with_constraint(|s| {
                let (a, c, q, z) = (s.c("a"), s.c("c"), s.c("q"), s.c("z"));
                z.abs() <= 0.9
                    && inf_ok(c, q, 0.05)
                    && inf_ok(z, q, 0.05)
                    && inf_ok(a * z, q, 0.05)
            }),
            input: |s| {
                Ok(SeriesSpec::phi(
                    vec![s.c("a"), s.c("b")],
                    vec![s.c("c")],
                    s.c("q"),
                    s.c("z"),
                ))
            },
            output: |s| {
                let (a, b, c, q, z) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                Ok(Expression::single(
                    CoeffProduct::one().num(q, &[a * z]).den(q, &[z]),
                    SeriesSpec::phi(vec![a, c / b], vec![c, a * z], q, b * z),
                ))
            },
        },
        TransformRule {
            id: "sears_2phi1_term",
            title: "Sears' transformation of a terminating 2phi1 into a 3phi2",
            param_names: &["b", "c", "q", "z", "n"],
            constraints: "0 <= n <= 5; z != 0; denominator chains away from zeros",
            terms: 1,
            domain: dom(vec![
                md("b", 0.2, 1.2),
                md("c", 0.3, 1.1),
                md("q", 0.25, 0.7),
                md("z", 0.2, 1.3),
                int("n", 0, 5),
            ])
            .with_constraint(|s| {
                let (b, c, q) = (s.c("b"), s.c("c"), s.c("q"));
                let n = s.int("n");
                let d = match q.powi(1 - n) {
                    Ok(p) => b * p / c,
                    Err(_) => return false,
                };
                fin_ok(c, q, n + 1, 0.03) && fin_ok(d, q, n + 1, 0.03)
            }),
            input: |s| {
                let q = s.c("q");
                Ok(SeriesSpec::phi(
                    vec![q.powi(-s.int("n"))?, s.c("b")],
                    vec![s.c("c")],
                    q,
                    s.c("z"),
                ))
            },
            output: |s| {
                let (b, c, q, z) = (s.c("b"), s.c("c"), s.c("q"), s.c("z"));
                let n = s.int("n");
                let scalar =
                    poch_ratio(&[c / b], &[c], q, n)? * (b * z / q).powi(n)?;
                Ok(Expression::single(
                    CoeffProduct::scalar(scalar),
                    SeriesSpec::phi(
                        vec![q.powi(-n)?, q / z, q.powi(1 - n)? / c],
                        vec![b * q.powi(1 - n)? / c, QComplex::ZERO],
                        q,
                        q,
                    ),
                ))
            },
        },
        // -- Watson and the terminating 10W9 ladder -------------------------
        TransformRule {
            id: "watson_8to4",
            title: "Watson's transformation: terminating 8W7 to a 4phi3",
            param_names: &["a", "b", "c", "d", "e", "q", "n"],
            constraints: "0 <= n <= 5; argument a^2 q^(n+2)/bcde capped; chains away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.1, 0.85),
                md("b", 0.3, 1.1),
                md("c", 0.3, 1.1),
                md("d", 0.3, 1.1),
                md("e", 0.3, 1.1),
                md("q", 0.15, 0.6),
                int("n", 0, 5),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, q) =
                    (s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let n = s.int("n");
                let z = match q.powi(n + 2) {
                    Ok(p) => a * a * p / (b * c * d * e),
                    Err(_) => return false,
                };
                let den_shift = match q.powi(-n) {
                    Ok(p) => d * e * p / a,
                    Err(_) => return false,
                };
                z.abs() <= 2.5
                    && [a * q / b, a * q / c, a * q / d, a * q / e, den_shift]
                        .into_iter()
                        .all(|x| fin_ok(x, q, n + 1, 0.03))
                    && vwp_denoms_ok(a, &[b, c, d, e], q, 0.04)
            }),
            input: |s| {
                let (a, b, c, d, e, q) =
                    (s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let n = s.int("n");
                let z = a * a * q.powi(n + 2)? / (b * c * d * e);
                make_vwp(a, &[b, c, d, e, q.powi(-n)?], q, z)
            },
            output: |s| {
                let (a, b, c, d, e, q) =
                    (s.c("a"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let n = s.int("n");
                let scalar =
                    poch_ratio(&[a * q, a * q / (d * e)], &[a * q / d, a * q / e], q, n)?;
                Ok(Expression::single(
                    CoeffProduct::scalar(scalar),
                    SeriesSpec::phi(
                        vec![q.powi(-n)?, d, e, a * q / (b * c)],
                        vec![a * q / b, a * q / c, d * e * q.powi(-n)? / a],
                        q,
                        q,
                    ),
                ))
            },
        },
        TransformRule {
            id: "bailey_10W9",
            title: "Bailey's transformation between two terminating 10W9 series",
            param_names: &["a", "b", "c", "d", "e", "f", "q", "n"],
            constraints: "0 <= n <= 4; special parameter qa^2/bcd capped; chains away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.15, 0.8),
                md("b", 0.35, 1.1),
                md("c", 0.35, 1.1),
                md("d", 0.35, 1.1),
                md("e", 0.35, 1.1),
                md("f", 0.35, 1.1),
                md("q", 0.15, 0.55),
                int("n", 0, 4),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let l = q * a * a / (b * c * d);
                let g = match q.powi(n + 1) {
                    Ok(p) => l * a * p / (e * f),
                    Err(_) => return false,
                };
                let lm = l.abs();
                (0.05..=2.5).contains(&lm)
                    && g.abs() <= 2.5
                    && [l * b / a, l * c / a, l * d / a].iter().all(|x| x.abs() <= 3.0)
                    && [
                        a * q / b,
                        a * q / c,
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        a * q / g,
                        l * q / e,
                        l * q / f,
                        l * q / g,
                        l * q,
                        l * q / (e * f),
                    ]
                    .into_iter()
                    .all(|x| fin_ok(x, q, n + 1, 0.04))
                    && vwp_denoms_ok(a, &[b], q, 0.04)
                    && vwp_denoms_ok(l, &[l * b / a], q, 0.04)
            }),
            input: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let l = q * a * a / (b * c * d);
                let g = l * a * q.powi(n + 1)? / (e * f);
                make_vwp(a, &[b, c, d, e, f, g, q.powi(-n)?], q, q)
            },
            output: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let l = q * a * a / (b * c * d);
                let g = l * a * q.powi(n + 1)? / (e * f);
                let scalar = poch_ratio(
                    &[a * q, a * q / (e * f), l * q / e, l * q / f],
                    &[a * q / e, a * q / f, l * q / (e * f), l * q],
                    q,
                    n,
                )?;
                Ok(Expression::single(
                    CoeffProduct::scalar(scalar),
                    make_vwp(
                        l,
                        &[l * b / a, l * c / a, l * d / a, e, f, g, q.powi(-n)?],
                        q,
                        q,
                    )?,
                ))
            },
        },
        TransformRule {
            id: "bailey_10W9_iterated",
            title: "iterated Bailey transformation of a terminating 10W9",
            param_names: &["a", "b", "c", "d", "e", "f", "q", "n"],
            constraints: "0 <= n <= 3; seventh parameter a^3 q^(n+2)/bcdef capped; chains away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.2, 0.8),
                md("b", 0.4, 1.1),
                md("c", 0.4, 1.1),
                md("d", 0.4, 1.1),
                md("e", 0.4, 1.1),
                md("f", 0.4, 1.1),
                md("q", 0.2, 0.55),
                int("n", 0, 3),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let (g, qn) = match (q.powi(n + 2), q.powi(-n)) {
                    (Ok(p), Ok(r)) => (a * a * a * p / (b * c * d * e * f), r),
                    _ => return false,
                };
                let def = d * e * f;
                g.abs() <= 2.5
                    && [
                        a * q / b,
                        a * q / c,
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        a * q / g,
                        a * q / def,
                        def / a,
                        b * c * def * qn / (a * a),
                        e * f * qn / a,
                        d * f * qn / a,
                        d * e * qn / a,
                    ]
                    .into_iter()
                    .all(|x| fin_ok(x, q, n + 1, 0.04))
                    && vwp_denoms_ok(a, &[b], q, 0.04)
                    && vwp_denoms_ok(def * qn / (a * q), &[], q, 0.04)
            }),
            input: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let g = a * a * a * q.powi(n + 2)? / (b * c * d * e * f);
                make_vwp(a, &[b, c, d, e, f, g, q.powi(-n)?], q, q)
            },
            output: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let n = s.int("n");
                let def = d * e * f;
                let mu = def * q.powi(-n - 1)? / a;
                let scalar = poch_ratio(
                    &[a * q, a * q / (d * e), a * q / (d * f), a * q / (e * f)],
                    &[a * q / d, a * q / e, a * q / f, a * q / def],
                    q,
                    n,
                )?;
                Ok(Expression::single(
                    CoeffProduct::scalar(scalar),
                    make_vwp(
                        mu,
                        &[
                            a * q / (b * c),
                            d,
                            e,
                            f,
                            b * mu / a,
                            c * mu / a,
                            q.powi(-n)?,
                        ],
                        q,
                        q,
                    )?,
                ))
            },
        },
        // -- nonterminating 8W7 transformations -----------------------------
        TransformRule {
            id: "bailey_8W7_nonterm",
            title: "Bailey's transformation between two nonterminating 8W7 series",
            param_names: &["a", "b", "c", "d", "e", "f", "q"],
            constraints: "|aq/ef| and |(qa^2/bcd) q/ef| < 1 with margin 0.8; chains away from zeros",
            terms: 1,
            domain: dom(vec![
                md("a", 0.15, 0.8),
                md("b", 0.35, 1.1),
                md("c", 0.35, 1.1),
                md("d", 0.35, 1.1),
                md("e", 0.4, 1.2),
                md("f", 0.4, 1.2),
                md("q", 0.1, 0.5),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let l = q * a * a / (b * c * d);
                let lm = l.abs();
                (a * q / (e * f)).abs() <= 0.8
                    && (l * q / (e * f)).abs() <= 0.8
                    && (0.05..=2.0).contains(&lm)
                    && [l * b / a, l * c / a, l * d / a].iter().all(|x| x.abs() <= 3.0)
                    && [
                        a * q / e,
                        a * q / f,
                        l * q,
                        l * q / (e * f),
                        l * q / e,
                        l * q / f,
                    ]
                    .into_iter()
                    .all(|x| inf_ok(x, q, 0.06))
                    && vwp_denoms_ok(a, &[b, c, d, e, f], q, 0.06)
                    && vwp_denoms_ok(l, &[l * b / a, l * c / a, l * d / a, e, f], q, 0.06)
            }),
            input: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let l = q * a * a / (b * c * d);
                make_vwp(a, &[b, c, d, e, f], q, l * q / (e * f))
            },
            output: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let l = q * a * a / (b * c * d);
                Ok(Expression::single(
                    CoeffProduct::one()
                        .num(q, &[a * q, a * q / (e * f), l * q / e, l * q / f])
                        .den(q, &[a * q / e, a * q / f, l * q, l * q / (e * f)]),
                    make_vwp(
                        l,
                        &[l * b / a, l * c / a, l * d / a, e, f],
                        q,
                        a * q / (e * f),
                    )?,
                ))
            },
        },
        TransformRule {
            id: "bailey_8phi7_to_4phi3",
            title: "nonterminating 8W7 as a sum of two balanced 4phi3 series",
            param_names: &["a", "b", "c", "d", "e", "f", "q"],
            constraints: "|a^2 q^2/bcdef| < 1 with margin 0.8; chains away from zeros",
            terms: 2,
            domain: dom(vec![
                md("a", 0.3, 0.85),
                md("b", 0.4, 1.05),
                md("c", 0.4, 1.05),
                md("d", 0.4, 1.05),
                md("e", 0.4, 1.05),
                md("f", 0.4, 1.05),
                md("q", 0.1, 0.45),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let z = a * a * q * q / (b * c * d * e * f);
                let def = d * e * f;
                z.abs() <= 0.8
                    && [a * q / (b * c), def / a].iter().all(|x| x.abs() <= 3.0)
                    && [
                        a * q / b,
                        a * q / c,
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        a * q / def,
                        def / a,
                        def / (a * q),
                        a * a * q * q / (b * def),
                        a * a * q * q / (c * def),
                        a * q * q / def,
                    ]
                    .into_iter()
                    .all(|x| inf_ok(x, q, 0.07))
                    && vwp_denoms_ok(a, &[b, c, d, e, f], q, 0.07)
            }),
            input: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let z = a * a * q * q / (b * c * d * e * f);
                make_vwp(a, &[b, c, d, e, f], q, z)
            },
            output: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let z = a * a * q * q / (b * c * d * e * f);
                let def = d * e * f;
                let t1 = ExprTerm {
                    coeff: CoeffProduct::one()
                        .num(
                            q,
                            &[a * q, a * q / (d * e), a * q / (d * f), a * q / (e * f)],
                        )
                        .den(q, &[a * q / d, a * q / e, a * q / f, a * q / def]),
                    series: Some(SeriesSpec::phi(
                        vec![a * q / (b * c), d, e, f],
                        vec![a * q / b, a * q / c, def / a],
                        q,
                        q,
                    )),
                };
                let t2 = ExprTerm {
                    coeff: CoeffProduct::one()
                        .num(
                            q,
                            &[
                                a * q,
                                a * q / (b * c),
                                d,
                                e,
                                f,
                                a * a * q * q / (b * def),
                                a * a * q * q / (c * def),
                            ],
                        )
                        .den(
                            q,
                            &[
                                a * q / b,
                                a * q / c,
                                a * q / d,
                                a * q / e,
                                a * q / f,
                                z,
                                def / (a * q),
                            ],
                        ),
                    series: Some(SeriesSpec::phi(
                        vec![a * q / (d * e), a * q / (d * f), a * q / (e * f), z],
                        vec![
                            a * a * q * q / (b * def),
                            a * a * q * q / (c * def),
                            a * q * q / def,
                        ],
                        q,
                        q,
                    )),
                };
                Ok(Expression { terms: vec![t1, t2] })
            },
        },
        TransformRule {
            id: "bailey_3term",
            title: "Bailey's 3-term relation between nonterminating 8W7 series",
            param_names: &["a", "b", "c", "d", "e", "f", "q"],
            constraints: "|bd/a| and |a^2 q^2/bcdef| < 1 with margin 0.8; chains away from zeros",
            terms: 2,
            domain: dom(vec![
                md("a", 0.35, 0.85),
                md("b", 0.4, 1.0),
                md("c", 0.4, 1.0),
                md("d", 0.4, 1.0),
                md("e", 0.4, 1.0),
                md("f", 0.4, 1.0),
                md("q", 0.1, 0.4),
            ])
            .with_constraint(|s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let z = a * a * q * q / (b * c * d * e * f);
                let def = d * e * f;
                z.abs() <= 0.8
                    && (b * d / a).abs() <= 0.8
                    && [
                        e * f / c,
                        e * f / a,
                        a * q / (b * c),
                        a * q / (c * d),
                        b * b / a,
                        b * c / a,
                        b * e / a,
                        b * f / a,
                        b * d * e * f / (a * a),
                    ]
                    .iter()
                    .all(|x| x.abs() <= 2.0)
                    && [
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        a * q / def,
                        q / c,
                        e * f * q / c,
                        b * e / a,
                        b * f / a,
                        a * q / b,
                        a * q / c,
                        b * d / a,
                        def / a,
                        b * b * q / a,
                    ]
                    .into_iter()
                    .all(|x| inf_ok(x, q, 0.15))
                    && vwp_denoms_ok(a, &[b, c, d, e, f], q, 0.15)
                    && vwp_denoms_ok(
                        e * f / c,
                        &[a * q / (b * c), a * q / (c * d), e * f / a, e, f],
                        q,
                        0.15,
                    )
                    && vwp_denoms_ok(
                        b * b / a,
                        &[b, b * c / a, b * d / a, b * e / a, b * f / a],
                        q,
                        0.15,
                    )
                    && bailey_3term_conditioned(s)
            }),
            input: |s| {
                let (a, b, c, d, e, f, q) = (
                    s.c("a"),
                    s.c("b"),
                    s.c("c"),
                    s.c("d"),
                    s.c("e"),
                    s.c("f"),
                    s.c("q"),
                );
                let z = a * a * q * q / (b * c * d * e * f);
                make_vwp(a, &[b, c, d, e, f], q, z)
            },
            output: bailey_3term_output,
        },
        TransformRule {
            id: "bailey_4term",
            title: "Bailey's 4-term relation between nonterminating 10W9 series",
            param_names: &["a", "b", "c", "d", "e", "f", "g", "q"],
            constraints: "eighth parameter derived from a^3 q^2 = bcdefgh; chains away from zeros",
            terms: 3,
            domain: dom(vec![
                md("a", 0.45, 0.85),
                md("b", 0.5, 1.0),
                md("c", 0.5, 1.0),
                md("d", 0.5, 1.0),
                md("e", 0.5, 1.0),
                md("f", 0.5, 1.0),
                md("g", 0.5, 1.0),
                md("q", 0.08, 0.35),
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
                let lm = l.abs();
                let hm = h.abs();
                if !(0.3..=2.5).contains(&hm) || !(0.1..=2.5).contains(&lm) {
                    return false;
                }
                let caps = [
                    b / a,
                    a / b,
                    b / l,
                    l / b,
                    l * c / a,
                    l * d / a,
                    l * e / a,
                    b * f / l,
                    b * g / l,
                    b * h / l,
                    a * b * q / (l * c),
                    a * b * q / (l * d),
                    a * b * q / (l * e),
                    b * b / a,
                    b * b / l,
                ];
                if caps.iter().any(|x| x.abs() > 3.0) {
                    return false;
                }
                let chains = [
                    b * b * q / a,
                    a / b,
                    a * q / c,
                    a * q / d,
                    a * q / e,
                    a * q / f,
                    a * q / g,
                    a * q / h,
                    b * c / a,
                    b * d / a,
                    b * e / a,
                    b * f / a,
                    b * g / a,
                    b * h / a,
                    l * q,
                    b / l,
                    l / b,
                    b * b * q / l,
                    b / a,
                ];
                chains.into_iter().all(|x| inf_ok(x, q, 0.08))
                    && vwp_denoms_ok(a, &[b, c, d, e, f, g, h], q, 0.08)
                    && vwp_denoms_ok(l, &[b, l * c / a, l * d / a, l * e / a, f, g, h], q, 0.08)
                    && vwp_denoms_ok(
                        b * b / l,
                        &[b, b * c / a, b * d / a, b * e / a, b * f / l, b * g / l, b * h / l],
                        q,
                        0.08,
                    )
                    && vwp_denoms_ok(
                        b * b / a,
                        &[b, b * c / a, b * d / a, b * e / a, b * f / a, b * g / a, b * h / a],
                        q,
                        0.08,
                    )
            }),
            input: |s| {
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
                make_vwp(a, &[b, c, d, e, f, g, h], q, q)
            },
            output: |s| {
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
                let t1 = ExprTerm {
                    coeff: CoeffProduct::one()
                        .num(
                            q,
                            &[
                                a * q,
                                b / a,
                                l * q / f,
                                l * q / g,
                                l * q / h,
                                b * f / l,
                                b * g / l,
                                b * h / l,
                            ],
                        )
                        .den(
                            q,
                            &[
                                l * q,
                                b / l,
                                a * q / f,
                                a * q / g,
                                a * q / h,
                                b * f / a,
                                b * g / a,
                                b * h / a,
                            ],
                        ),
                    series: Some(make_vwp(
                        l,
                        &[b, l * c / a, l * d / a, l * e / a, f, g, h],
                        q,
                        q,
                    )?),
                };
                let t2 = ExprTerm {
                    coeff: CoeffProduct::one()
                        .num(
                            q,
                            &[
                                a * q,
                                b / a,
                                f,
                                g,
                                h,
                                b * q / f,
                                b * q / g,
                                b * q / h,
                                l * c / a,
                                l * d / a,
                                l * e / a,
                                a * b * q / (l * c),
                                a * b * q / (l * d),
                                a * b * q / (l * e),
                            ],
                        )
                        .den(
                            q,
                            &[
                                b * b * q / l,
                                l / b,
                                a * q / c,
                                a * q / d,
                                a * q / e,
                                a * q / f,
                                a * q / g,
                                a * q / h,
                                b * c / a,
                                b * d / a,
                                b * e / a,
                                b * f / a,
                                b * g / a,
                                b * h / a,
                            ],
                        ),
                    series: Some(make_vwp(
                        b * b / l,
                        &[
                            b,
                            b * c / a,
                            b * d / a,
                            b * e / a,
                            b * f / l,
                            b * g / l,
                            b * h / l,
                        ],
                        q,
                        q,
                    )?),
                };
                // the companion 10W9 moved from the input side, entering
                // with a negative sign
                let t3 = ExprTerm {
                    coeff: CoeffProduct::scalar(-QComplex::ONE)
                        .num(
                            q,
                            &[
                                a * q,
                                b / a,
                                c,
                                d,
                                e,
                                f,
                                g,
                                h,
                                b * q / c,
                                b * q / d,
                                b * q / e,
                                b * q / f,
                                b * q / g,
                                b * q / h,
                            ],
                        )
                        .den(
                            q,
                            &[
                                b * b * q / a,
                                a / b,
                                a * q / c,
                                a * q / d,
                                a * q / e,
                                a * q / f,
                                a * q / g,
                                a * q / h,
                                b * c / a,
                                b * d / a,
                                b * e / a,
                                b * f / a,
                                b * g / a,
                                b * h / a,
                            ],
                        ),
                    series: Some(make_vwp(
                        b * b / a,
                        &[
                            b,
                            b * c / a,
                            b * d / a,
                            b * e / a,
                            b * f / a,
                            b * g / a,
                            b * h / a,
                        ],
                        q,
                        q,
                    )?),
                };
                Ok(Expression {
                    terms: vec![t1, t2, t3],
                })
            },
        },
    ]
}

/// Output of the Euler-type Heine transformation, shared with the chain
/// composition tests.
pub(super) fn heine_euler_output(
    a: QComplex,
    b: QComplex,
    c: QComplex,
    q: QComplex,
    z: QComplex,
) -> Result<Expression> {
    Ok(Expression::single(
        CoeffProduct::one().num(q, &[a * b * z / c]).den(q, &[z]),
        SeriesSpec::phi(vec![c / a, c / b], vec![c], q, a * b * z / c),
    ))
}
