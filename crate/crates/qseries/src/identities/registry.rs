//! The identity table: every entry pairs a series-engine evaluation with
//! an independently coded closed form.
//!
//! Domains are shrunk inside the theoretical hypotheses (convergence
//! bounds scaled by 0.85-0.9, margins around denominator zeros) so that
//! float verification at 1e-9 is well conditioned.

use super::{
    exact, inf_many, inf_ratio, poch_ratio, quintuple_series_sum, rr_product, rr_sum, theta,
    theta_product, theta_series_sum, IdentityEntry,
};
use crate::domain::{ParamDomain, ParamKind};
use crate::qcore::{qbinom, qpoch, qpoch_inf};
use crate::scalar::{QComplex, Scalar};
use crate::series::{eval_phi, eval_psi, make_vwp_with_root, SeriesSpec};

fn md(name: &'static str, min: f64, max: f64) -> (&'static str, ParamKind) {
    (name, ParamKind::Modulus { min, max })
}

fn re(name: &'static str, min: f64, max: f64) -> (&'static str, ParamKind) {
    (name, ParamKind::Real { min, max })
}

fn int(name: &'static str, lo: i64, hi: i64) -> (&'static str, ParamKind) {
    (name, ParamKind::Integer { lo, hi })
}

fn dom(params: Vec<(&'static str, ParamKind)>) -> ParamDomain {
    ParamDomain::new(params)
}

/// True when (1 - x q^j) stays at least `margin` away from zero for
/// 0 <= j < n (finite shifted-factorial denominators).
pub(crate) fn fin_ok(x: QComplex, q: QComplex, n: i64, margin: f64) -> bool {
    let mut xq = x;
    for _ in 0..n {
        if (xq - QComplex::ONE).abs() < margin {
            return false;
        }
        xq = xq * q;
    }
    true
}

/// Same margin test along the infinite chain, stopping once |x q^j| has
/// decayed well below 1 (later factors cannot vanish).
pub(crate) fn inf_ok(x: QComplex, q: QComplex, margin: f64) -> bool {
    let mut xq = x;
    for _ in 0..60 {
        if (xq - QComplex::ONE).abs() < margin {
            return false;
        }
        xq = xq * q;
        if xq.abs() < 0.3 {
            break;
        }
    }
    true
}

/// Bounds the cancellation scale of a terminating series whose largest
/// term grows like |q|^{-n}: floating noise is roughly the largest term
/// times machine epsilon, so capping the growth keeps verification at
/// 1e-9 meaningful.
pub(crate) fn growth_ok(q: QComplex, n: i64, cap: f64) -> bool {
    n <= 0 || q.abs().powi(-(n as i32)) <= cap
}

fn kron(n: i64) -> QComplex {
    if n == 0 {
        QComplex::ONE
    } else {
        QComplex::ZERO
    }
}

macro_rules! theta_entry {
    ($id:expr, $title:expr, $j:expr) => {
        IdentityEntry {
            id: $id,
            title: $title,
            param_names: &["x", "q"],
            constraints: "0 <= x <= pi, 0 < q < 1 (real)",
            exactable: false,
            domain: dom(vec![re("x", 0.0, std::f64::consts::PI), re("q", 0.05, 0.85)]),
            lhs: |s, _| theta($j, s.c("x").re, s.c("q")),
            rhs: |s, _| theta_product($j, s.c("x").re, s.c("q")),
            exact: None,
        }
    };
}

pub(super) fn build() -> Vec<IdentityEntry> {
    vec![
        // -- binomial-theorem family ---------------------------------------
        IdentityEntry {
            id: "q_binomial",
            title: "q-binomial theorem: 1phi0(a;-;q,z) = (az;q)inf/(z;q)inf",
            param_names: &["a", "q", "z"],
            constraints: "|q| < 1, |z| < 1",
            exactable: false,
            domain: dom(vec![
                md("a", 0.05, 1.2),
                md("q", 0.05, 0.85),
                md("z", 0.05, 0.88),
            ]),
            lhs: |s, tol| {
                let spec = SeriesSpec::phi(vec![s.c("a")], vec![], s.c("q"), s.c("z"));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| inf_ratio(&[s.c("a") * s.c("z")], &[s.c("z")], s.c("q")),
            exact: None,
        },
        IdentityEntry {
            id: "q_binomial_terminating",
            title: "terminating q-binomial sum: 1phi0(q^-m;-;q,z) = (zq^-m;q)_m",
            param_names: &["q", "z", "m"],
            constraints: "any z; 0 <= m <= 8",
            exactable: true,
            domain: dom(vec![md("q", 0.3, 0.85), md("z", 0.1, 1.5), int("m", 0, 8)]),
            lhs: |s, tol| {
                let q = s.c("q");
                let spec =
                    SeriesSpec::phi(vec![q.powi(-s.int("m"))?], vec![], q, s.c("z"));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let q = s.c("q");
                let m = s.int("m");
                qpoch(&(s.c("z") * q.powi(-m)?), &q, m)
            },
            exact: Some(exact::q_binomial_terminating),
        },
        IdentityEntry {
            id: "q_binomial_qgt1",
            title: "q-binomial theorem for |q| > 1 via base inversion",
            param_names: &["a", "q", "z"],
            constraints: "|q| > 1, a != 0, |az| < 1",
            exactable: false,
            domain: dom(vec![
                md("a", 0.15, 1.5),
                md("q", 1.15, 2.5),
                md("z", 0.05, 2.0),
            ])
            .with_constraint(|s| (s.c("a") * s.c("z")).abs() <= 0.9),
            lhs: |s, tol| {
                let spec = SeriesSpec::phi(vec![s.c("a")], vec![], s.c("q"), s.c("z"));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, q, z) = (s.c("a"), s.c("q"), s.c("z"));
                inf_ratio(&[z / q], &[a * z / q], q.recip()?)
            },
            exact: None,
        },
        IdentityEntry {
            id: "product_addition",
            title: "(ab;q)_n as a q-binomial convolution of (a;q) and (b;q)",
            param_names: &["a", "b", "q", "n"],
            constraints: "0 <= n <= 8",
            exactable: true,
            domain: dom(vec![
                md("a", 0.1, 1.3),
                md("b", 0.1, 1.3),
                md("q", 0.05, 0.85),
                int("n", 0, 8),
            ]),
            lhs: |s, _| {
                let (a, b, q) = (s.c("a"), s.c("b"), s.c("q"));
                let n = s.int("n");
                let mut sum = QComplex::ZERO;
                for k in 0..=n {
                    sum = sum
                        + qbinom(n, k, &q)?
                            * qpoch(&a, &q, n - k)?
                            * qpoch(&b, &q, k)?
                            * a.powi(k)?;
                }
                Ok(sum)
            },
            rhs: |s, _| qpoch(&(s.c("a") * s.c("b")), &s.c("q"), s.int("n")),
            exact: Some(exact::product_addition),
        },
        // -- q-exponentials -------------------------------------------------
        IdentityEntry {
            id: "e_q",
            title: "q-exponential e_q(z) = 1/(z;q)inf",
            param_names: &["q", "z"],
            constraints: "|q| < 1, |z| < 1",
            exactable: false,
            domain: dom(vec![md("q", 0.05, 0.85), md("z", 0.05, 0.88)]),
            lhs: |s, tol| {
                let spec =
                    SeriesSpec::phi(vec![QComplex::ZERO], vec![], s.c("q"), s.c("z"));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| inf_ratio(&[], &[s.c("z")], s.c("q")),
            exact: None,
        },
        IdentityEntry {
            id: "E_q",
            title: "q-exponential E_q(z) = (-z;q)inf",
            param_names: &["q", "z"],
            constraints: "|q| < 1, any z",
            exactable: false,
            domain: dom(vec![md("q", 0.05, 0.85), md("z", 0.1, 2.5)]),
            lhs: |s, tol| {
                let spec = SeriesSpec::phi(vec![], vec![], s.c("q"), -s.c("z"));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| qpoch_inf(-s.c("z"), s.c("q")),
            exact: None,
        },
        IdentityEntry {
            id: "e_E_reciprocal",
            title: "e_q(z) E_q(-z) = 1",
            param_names: &["q", "z"],
            constraints: "|q| < 1, |z| < 1",
            exactable: false,
            domain: dom(vec![md("q", 0.05, 0.85), md("z", 0.05, 0.85)]),
            lhs: |s, tol| {
                let (q, z) = (s.c("q"), s.c("z"));
                let e = eval_phi(&SeriesSpec::phi(vec![QComplex::ZERO], vec![], q, z), tol)?;
                let cap_e = eval_phi(&SeriesSpec::phi(vec![], vec![], q, z), tol)?;
                Ok(e * cap_e)
            },
            rhs: |_, _| Ok(QComplex::ONE),
            exact: None,
        },
        // -- bilateral and theta-product identities -------------------------
        IdentityEntry {
            id: "ramanujan_1psi1",
            title: "1psi1 bilateral sum (Ramanujan)",
            param_names: &["a", "b", "q", "z"],
            constraints: "|b/a| < |z| < 1 with margin 0.85",
            exactable: false,
            domain: dom(vec![
                md("a", 0.2, 0.95),
                md("b", 0.02, 0.5),
                md("q", 0.05, 0.8),
                md("z", 0.15, 0.88),
            ])
            .with_constraint(|s| {
                (s.c("b") / s.c("a")).abs() <= 0.85 * s.c("z").abs()
            }),
            lhs: |s, tol| {
                let spec =
                    SeriesSpec::psi(vec![s.c("a")], vec![s.c("b")], s.c("q"), s.c("z"));
                eval_psi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, b, q, z) = (s.c("a"), s.c("b"), s.c("q"), s.c("z"));
                inf_ratio(
                    &[q, b / a, a * z, q / (a * z)],
                    &[b, q / a, z, b / (a * z)],
                    q,
                )
            },
            exact: None,
        },
        IdentityEntry {
            id: "jacobi_triple",
            title: "triple product: sum q^(k^2) z^k = (q^2,-qz,-q/z;q^2)inf",
            param_names: &["q", "z"],
            constraints: "|q| < 1, z != 0",
            exactable: false,
            domain: dom(vec![md("q", 0.05, 0.8), md("z", 0.3, 2.0)]),
            lhs: |s, tol| theta_series_sum(s.c("z"), s.c("q"), tol),
            rhs: |s, _| {
                let (q, z) = (s.c("q"), s.c("z"));
                let q2 = q * q;
                inf_many(&[q2, -(q * z), -(q / z)], q2)
            },
            exact: None,
        },
        IdentityEntry {
            id: "quintuple",
            title: "quintuple product identity",
            param_names: &["q", "z"],
            constraints: "|q| < 1, z != 0",
            exactable: false,
            domain: dom(vec![md("q", 0.05, 0.7), md("z", 0.35, 1.8)]),
            lhs: |s, tol| quintuple_series_sum(s.c("z"), s.c("q"), tol),
            rhs: |s, _| {
                let (q, z) = (s.c("q"), s.c("z"));
                let base = inf_many(&[q, -z, -(q / z)], q)?;
                let sq = inf_many(&[q * z * z, q / (z * z)], q * q)?;
                Ok(base * sq)
            },
            exact: None,
        },
        theta_entry!("theta1", "first theta function: series = product", 1),
        theta_entry!("theta2", "second theta function: series = product", 2),
        theta_entry!("theta3", "third theta function: series = product", 3),
        theta_entry!("theta4", "fourth theta function: series = product", 4),
        // -- 2phi1 / 3phi2 summations --------------------------------------
        IdentityEntry {
            id: "heine_gauss_sum",
            title: "Heine's sum: 2phi1(a,b;c;q,c/ab)",
            param_names: &["a", "b", "c", "q"],
            constraints: "|c/ab| < 1 with margin 0.9",
            exactable: false,
            domain: dom(vec![
                md("a", 0.2, 1.3),
                md("b", 0.2, 1.3),
                md("c", 0.05, 0.8),
                md("q", 0.05, 0.8),
            ])
            .with_constraint(|s| {
                (s.c("c") / (s.c("a") * s.c("b"))).abs() <= 0.9
            }),
            lhs: |s, tol| {
                let (a, b, c, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"));
                let spec = SeriesSpec::phi(vec![a, b], vec![c], q, c / (a * b));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, b, c, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"));
                inf_ratio(&[c / a, c / b], &[c, c / (a * b)], q)
            },
            exact: None,
        },
        IdentityEntry {
            id: "q_vandermonde_a",
            title: "q-Chu-Vandermonde, first form (argument cq^n/a)",
            param_names: &["a", "c", "q", "n"],
            constraints: "0 <= n <= 8; c away from q^-j",
            exactable: true,
            domain: dom(vec![
                md("a", 0.15, 1.3),
                md("c", 0.15, 1.3),
                md("q", 0.1, 0.8),
                int("n", 0, 8),
            ])
            .with_constraint(|s| fin_ok(s.c("c"), s.c("q"), s.int("n"), 0.02)),
            lhs: |s, tol| {
                let (a, c, q) = (s.c("a"), s.c("c"), s.c("q"));
                let n = s.int("n");
                let spec =
                    SeriesSpec::phi(vec![a, q.powi(-n)?], vec![c], q, c * q.powi(n)? / a);
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, c, q) = (s.c("a"), s.c("c"), s.c("q"));
                poch_ratio(&[c / a], &[c], q, s.int("n"))
            },
            exact: Some(exact::q_vandermonde_a),
        },
        IdentityEntry {
            id: "q_vandermonde_b",
            title: "q-Chu-Vandermonde, second form (argument q)",
            param_names: &["a", "c", "q", "n"],
            constraints: "0 <= n <= 8; c away from q^-j",
            exactable: true,
            domain: dom(vec![
                md("a", 0.15, 1.3),
                md("c", 0.15, 1.3),
                md("q", 0.1, 0.8),
                int("n", 0, 8),
            ])
            .with_constraint(|s| {
                // with argument q the largest term grows like
                // |q|^{-n(n-1)/2}, so cap that scale to keep float
                // verification meaningful
                let n = s.int("n");
                fin_ok(s.c("c"), s.c("q"), n, 0.02)
                    && growth_ok(s.c("q"), n * (n - 1) / 2, 1e6)
            }),
            lhs: |s, tol| {
                let (a, c, q) = (s.c("a"), s.c("c"), s.c("q"));
                let spec = SeriesSpec::phi(vec![a, q.powi(-s.int("n"))?], vec![c], q, q);
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, c, q) = (s.c("a"), s.c("c"), s.c("q"));
                let n = s.int("n");
                Ok(poch_ratio(&[c / a], &[c], q, n)? * a.powi(n)?)
            },
            exact: Some(exact::q_vandermonde_b),
        },
        IdentityEntry {
            id: "q_saalschutz",
            title: "q-Pfaff-Saalschutz sum for a balanced terminating 3phi2",
            param_names: &["a", "b", "c", "q", "n"],
            constraints: "0 <= n <= 7; denominator parameters away from q^-j",
            exactable: true,
            domain: dom(vec![
                md("a", 0.15, 1.2),
                md("b", 0.15, 1.2),
                md("c", 0.15, 1.2),
                md("q", 0.1, 0.75),
                int("n", 0, 7),
            ])
            .with_constraint(|s| {
                let (a, b, c, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"));
                let n = s.int("n");
                let d2 = a * b * q.powi(1 - n).unwrap_or(QComplex::ONE) / c;
                // the late-term ratio approaches c/(ab), so the largest
                // term is of order |c/(ab)|^n; cap that cancellation scale
                let growth = (c.abs() / (a.abs() * b.abs())).max(1.0);
                fin_ok(c, q, n, 0.03)
                    && fin_ok(d2, q, n, 0.03)
                    && growth.powi(n as i32) <= 1e6
            }),
            lhs: |s, tol| {
                let (a, b, c, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"));
                let n = s.int("n");
                let d2 = a * b * q.powi(1 - n)? / c;
                let spec = SeriesSpec::phi(vec![a, b, q.powi(-n)?], vec![c, d2], q, q);
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, b, c, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("q"));
                poch_ratio(&[c / a, c / b], &[c, c / (a * b)], q, s.int("n"))
            },
            exact: Some(exact::q_saalschutz),
        },
        IdentityEntry {
            id: "bailey_daum",
            title: "Bailey-Daum sum: 2phi1(a,b;aq/b;q,-q/b)",
            param_names: &["a", "b", "q"],
            constraints: "|q/b| < 1 with margin 0.9",
            exactable: false,
            domain: dom(vec![
                md("a", 0.1, 0.9),
                md("b", 0.35, 1.6),
                md("q", 0.05, 0.8),
            ])
            .with_constraint(|s| {
                let (a, b, q) = (s.c("a"), s.c("b"), s.c("q"));
                (q / b).abs() <= 0.9 && inf_ok(a * q / b, q, 0.05)
            }),
            lhs: |s, tol| {
                let (a, b, q) = (s.c("a"), s.c("b"), s.c("q"));
                let spec = SeriesSpec::phi(vec![a, b], vec![a * q / b], q, -(q / b));
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (a, b, q) = (s.c("a"), s.c("b"), s.c("q"));
                let num = qpoch_inf(-q, q)?
                    * inf_many(&[a * q, a * q * q / (b * b)], q * q)?;
                let den = inf_many(&[a * q / b, -(q / b)], q)?;
                if den.near_pole() {
                    return Err(crate::error::QError::Pole(
                        "denominator product vanishes".into(),
                    ));
                }
                Ok(num / den)
            },
            exact: None,
        },
        // -- very-well-poised family ---------------------------------------
        IdentityEntry {
            id: "delta_6phi5",
            title: "very-well-poised 6phi5 telescoping to a Kronecker delta",
            param_names: &["r", "b", "q", "n"],
            constraints: "a = r^2; 0 <= n <= 8",
            exactable: true,
            domain: dom(vec![
                md("r", 0.25, 0.92),
                md("b", 0.2, 1.2),
                md("q", 0.1, 0.8),
                int("n", 0, 8),
            ])
            .with_constraint(|s| {
                let (r, b, q) = (s.c("r"), s.c("b"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                fin_ok(a * q / b, q, n, 0.03)
                    && fin_ok(b * q.powi(1 - n).unwrap_or(QComplex::ONE), q, n, 0.03)
            }),
            lhs: |s, tol| {
                let (r, b, q) = (s.c("r"), s.c("b"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                let rest = [b, a * q.powi(n)? / b, q.powi(-n)?];
                let spec = make_vwp_with_root(&a, &r, &rest, &q, &q)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, _| Ok(kron(s.int("n"))),
            exact: Some(exact::delta_6phi5),
        },
        IdentityEntry {
            id: "delta_4phi3",
            title: "very-well-poised 4phi3 Kronecker-delta sum (argument q^n)",
            param_names: &["r", "q", "n"],
            constraints: "a = r^2; 0 <= n <= 8",
            exactable: true,
            domain: dom(vec![md("r", 0.25, 0.92), md("q", 0.1, 0.8), int("n", 0, 8)]),
            lhs: |s, tol| {
                let (r, q) = (s.c("r"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                let spec =
                    make_vwp_with_root(&a, &r, &[q.powi(-n)?], &q, &q.powi(n)?)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, _| Ok(kron(s.int("n"))),
            exact: Some(exact::delta_4phi3),
        },
        IdentityEntry {
            id: "vwp_6phi5_terminating",
            title: "terminating very-well-poised 6phi5 sum",
            param_names: &["r", "b", "c", "q", "n"],
            constraints: "a = r^2; 0 <= n <= 8; aq/b, aq/c away from q^-j",
            exactable: true,
            domain: dom(vec![
                md("r", 0.25, 0.92),
                md("b", 0.2, 1.2),
                md("c", 0.2, 1.2),
                md("q", 0.1, 0.8),
                int("n", 0, 8),
            ])
            .with_constraint(|s| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                fin_ok(a * q / b, q, n, 0.03) && fin_ok(a * q / c, q, n, 0.03)
            }),
            lhs: |s, tol| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                let z = a * q.powi(n + 1)? / (b * c);
                let spec = make_vwp_with_root(&a, &r, &[b, c, q.powi(-n)?], &q, &z)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                poch_ratio(
                    &[a * q, a * q / (b * c)],
                    &[a * q / b, a * q / c],
                    q,
                    s.int("n"),
                )
            },
            exact: Some(exact::vwp_6phi5_terminating),
        },
        IdentityEntry {
            id: "vwp_6phi5_nonterminating",
            title: "nonterminating very-well-poised 6phi5 sum",
            param_names: &["r", "b", "c", "d", "q"],
            constraints: "a = r^2; |aq/bcd| < 1 with margin 0.85",
            exactable: false,
            domain: dom(vec![
                md("r", 0.3, 0.92),
                md("b", 0.3, 1.3),
                md("c", 0.3, 1.3),
                md("d", 0.3, 1.3),
                md("q", 0.05, 0.75),
            ])
            .with_constraint(|s| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                (a * q / (b * c * d)).abs() <= 0.85
                    && inf_ok(a * q / b, q, 0.04)
                    && inf_ok(a * q / c, q, 0.04)
                    && inf_ok(a * q / d, q, 0.04)
                    && inf_ok(a * q / (b * c * d), q, 0.04)
            }),
            lhs: |s, tol| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                let z = a * q / (b * c * d);
                let spec = make_vwp_with_root(&a, &r, &[b, c, d], &q, &z)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                inf_ratio(
                    &[a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)],
                    &[a * q / b, a * q / c, a * q / d, a * q / (b * c * d)],
                    q,
                )
            },
            exact: None,
        },
        IdentityEntry {
            id: "jackson_8phi7",
            title: "Jackson's terminating very-well-poised 8phi7 sum",
            param_names: &["r", "b", "c", "d", "q", "n"],
            constraints: "a = r^2; fifth parameter derived as a^2 q^(n+1)/bcd; 0 <= n <= 7",
            exactable: true,
            domain: dom(vec![
                md("r", 0.25, 0.92),
                md("b", 0.25, 1.2),
                md("c", 0.25, 1.2),
                md("d", 0.25, 1.2),
                md("q", 0.1, 0.75),
                int("n", 0, 7),
            ])
            .with_constraint(|s| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                let e = match q.powi(n + 1) {
                    Ok(p) => a * a * p / (b * c * d),
                    Err(_) => return false,
                };
                let em = e.abs();
                (0.02..=3.0).contains(&em)
                    && fin_ok(a * q / b, q, n, 0.03)
                    && fin_ok(a * q / c, q, n, 0.03)
                    && fin_ok(a * q / d, q, n, 0.03)
                    && fin_ok(a * q / e, q, n, 0.03)
                    && fin_ok(a * q / (b * c * d), q, n, 0.03)
            }),
            lhs: |s, tol| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                let n = s.int("n");
                let e = a * a * q.powi(n + 1)? / (b * c * d);
                let rest = [b, c, d, e, q.powi(-n)?];
                let spec = make_vwp_with_root(&a, &r, &rest, &q, &q)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (r, b, c, d, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("q"));
                let a = r * r;
                poch_ratio(
                    &[a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)],
                    &[a * q / b, a * q / c, a * q / d, a * q / (b * c * d)],
                    q,
                    s.int("n"),
                )
            },
            exact: Some(exact::jackson_8phi7),
        },
        IdentityEntry {
            id: "q_dixon",
            title: "q-Dixon sum for a well-poised 4phi3",
            param_names: &["r", "b", "c", "q"],
            constraints: "a = r^2; |qr/bc| < 1 with margin 0.85",
            exactable: false,
            domain: dom(vec![
                md("r", 0.25, 0.9),
                md("b", 0.25, 1.2),
                md("c", 0.25, 1.2),
                md("q", 0.05, 0.75),
            ])
            .with_constraint(|s| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                (q * r / (b * c)).abs() <= 0.85
                    && inf_ok(a * q / b, q, 0.04)
                    && inf_ok(a * q / c, q, 0.04)
            }),
            lhs: |s, tol| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                let spec = SeriesSpec::phi(
                    vec![a, -(q * r), b, c],
                    vec![-r, a * q / b, a * q / c],
                    q,
                    q * r / (b * c),
                );
                eval_phi(&spec, tol)
            },
            rhs: |s, _| {
                let (r, b, c, q) = (s.c("r"), s.c("b"), s.c("c"), s.c("q"));
                let a = r * r;
                inf_ratio(
                    &[a * q, a * q / (b * c), q * r / b, q * r / c],
                    &[a * q / b, a * q / c, q * r, q * r / (b * c)],
                    q,
                )
            },
            exact: None,
        },
        // -- Rogers-Ramanujan ----------------------------------------------
        IdentityEntry {
            id: "rogers_ramanujan_1",
            title: "first Rogers-Ramanujan identity",
            param_names: &["q"],
            constraints: "0 < q < 1 (real); sum and product truncated at 1e-15",
            exactable: false,
            domain: dom(vec![re("q", 0.05, 0.6)]),
            lhs: |s, _| rr_sum(s.c("q"), 0, 1e-15),
            rhs: |s, _| rr_product(s.c("q"), true, 1e-15),
            exact: None,
        },
        IdentityEntry {
            id: "rogers_ramanujan_2",
            title: "second Rogers-Ramanujan identity",
            param_names: &["q"],
            constraints: "0 < q < 1 (real); sum and product truncated at 1e-15",
            exactable: false,
            domain: dom(vec![re("q", 0.05, 0.6)]),
            lhs: |s, _| rr_sum(s.c("q"), 1, 1e-15),
            rhs: |s, _| rr_product(s.c("q"), false, 1e-15),
            exact: None,
        },
        // -- nonterminating two-term identities ----------------------------
        IdentityEntry {
            id: "sears_nonterminating_3phi2",
            title: "nonterminating q-Pfaff-Saalschutz (two-term 3phi2 relation)",
            param_names: &["a", "b", "c", "e", "q"],
            constraints: "second lower parameter derived from ef = abcq; denominators kept away from zeros",
            exactable: false,
            domain: dom(vec![
                md("a", 0.15, 1.0),
                md("b", 0.15, 1.0),
                md("c", 0.15, 1.0),
                md("e", 0.25, 1.2),
                md("q", 0.1, 0.7),
            ])
            .with_constraint(|s| {
                let (a, b, c, e, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("e"), s.c("q"));
                let f = a * b * c * q / e;
                [
                    a * q / e,
                    b * q / e,
                    c * q / e,
                    f,
                    e / q,
                    q * f / e,
                    q * q / e,
                    e,
                ]
                .into_iter()
                .all(|x| inf_ok(x, q, 0.08))
            }),
            lhs: |s, tol| {
                let (a, b, c, e, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("e"), s.c("q"));
                let f = a * b * c * q / e;
                let spec = SeriesSpec::phi(vec![a, b, c], vec![e, f], q, q);
                eval_phi(&spec, tol)
            },
            rhs: |s, tol| {
                let (a, b, c, e, q) = (s.c("a"), s.c("b"), s.c("c"), s.c("e"), s.c("q"));
                let f = a * b * c * q / e;
                let t1 = inf_ratio(
                    &[q / e, f / a, f / b, f / c],
                    &[a * q / e, b * q / e, c * q / e, f],
                    q,
                )?;
                let pre = inf_ratio(
                    &[q / e, a, b, c, q * f / e],
                    &[e / q, a * q / e, b * q / e, c * q / e, f],
                    q,
                )?;
                let tail = eval_phi(
                    &SeriesSpec::phi(
                        vec![a * q / e, b * q / e, c * q / e],
                        vec![q * q / e, q * f / e],
                        q,
                        q,
                    ),
                    tol,
                )?;
                Ok(t1 - pre * tail)
            },
            exact: None,
        },
        IdentityEntry {
            id: "bailey_8phi7_sum",
            title: "Bailey's nonterminating 8phi7 sum (two-series form)",
            param_names: &["r", "b", "c", "d", "e", "q"],
            constraints: "a = r^2; sixth parameter derived from qa^2 = bcdef; denominators kept away from zeros",
            exactable: false,
            domain: dom(vec![
                md("r", 0.45, 0.9),
                md("b", 0.4, 1.05),
                md("c", 0.4, 1.05),
                md("d", 0.4, 1.05),
                md("e", 0.4, 1.05),
                md("q", 0.1, 0.45),
            ])
            .with_constraint(|s| {
                let (r, b, c, d, e, q) =
                    (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let a = r * r;
                let f = q * a * a / (b * c * d * e);
                let fm = f.abs();
                if !(0.2..=2.2).contains(&fm) {
                    return false;
                }
                // keep every series parameter O(1) so the cancelling
                // two-term right side stays well conditioned
                if [b * c / a, b * d / a, b * e / a, b * f / a]
                    .iter()
                    .any(|x| x.abs() > 3.0)
                {
                    return false;
                }
                [
                    a * q / b,
                    a * q / c,
                    a * q / d,
                    a * q / e,
                    a * q / f,
                    b * c / a,
                    b * d / a,
                    b * e / a,
                    b * f / a,
                    b * b * q / a,
                    b * q / a,
                    b * q / c,
                    b * q / d,
                    b * q / e,
                    b * q / f,
                ]
                .into_iter()
                .all(|x| inf_ok(x, q, 0.08))
            }),
            lhs: |s, tol| {
                let (r, b, c, d, e, q) =
                    (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let a = r * r;
                let f = q * a * a / (b * c * d * e);
                let spec = make_vwp_with_root(&a, &r, &[b, c, d, e, f], &q, &q)?;
                eval_phi(&spec, tol)
            },
            rhs: |s, tol| {
                let (r, b, c, d, e, q) =
                    (s.c("r"), s.c("b"), s.c("c"), s.c("d"), s.c("e"), s.c("q"));
                let a = r * r;
                let f = q * a * a / (b * c * d * e);
                let closed = inf_ratio(
                    &[
                        a * q,
                        b / a,
                        a * q / (c * d),
                        a * q / (c * e),
                        a * q / (c * f),
                        a * q / (d * e),
                        a * q / (d * f),
                        a * q / (e * f),
                    ],
                    &[
                        a * q / c,
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        b * c / a,
                        b * d / a,
                        b * e / a,
                        b * f / a,
                    ],
                    q,
                )?;
                let coeff = inf_ratio(
                    &[
                        a * q,
                        c,
                        d,
                        e,
                        f,
                        b * q / a,
                        b * q / c,
                        b * q / d,
                        b * q / e,
                        b * q / f,
                    ],
                    &[
                        a * q / b,
                        a * q / c,
                        a * q / d,
                        a * q / e,
                        a * q / f,
                        b * c / a,
                        b * d / a,
                        b * e / a,
                        b * f / a,
                        b * b * q / a,
                    ],
                    q,
                )?;
                let a2 = b * b / a;
                let spec = make_vwp_with_root(
                    &a2,
                    &(b / r),
                    &[b, b * c / a, b * d / a, b * e / a, b * f / a],
                    &q,
                    &q,
                )?;
                let w2 = eval_phi(&spec, tol)?;
                Ok(closed + (b / a) * coeff * w2)
            },
            exact: None,
        },
    ]
}
