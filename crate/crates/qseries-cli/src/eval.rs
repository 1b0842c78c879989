//! Interprets parsed expressions against the engine: arithmetic plus the
//! named special-function calls.

use qseries::identities;
use qseries::qcalculus::{q_beta, q_gamma, q_integral, QIntegralKind, QIntegralSpec};
use qseries::qcore::{qbinom, qpoch, qpoch_complex_index, qpoch_inf};
use qseries::series::{eval_phi, eval_psi, make_vwp, SeriesSpec};
use qseries::{QComplex, QError, Result, Scalar, REL_TOL};

use crate::ast::Ast;

fn located(name: &str, ast: &Ast, e: QError) -> QError {
    if let Ast::Call { loc, .. } = ast {
        QError::Domain(format!(
            "in {name} at line {}, column {}: {e}",
            loc.line, loc.col
        ))
    } else {
        e
    }
}

/// Evaluates an expression to a complex number.
pub fn eval(ast: &Ast) -> Result<QComplex> {
    match ast {
        Ast::Number(v) => Ok(QComplex::real(*v)),
        Ast::Imaginary(v) => Ok(QComplex::new(0.0, *v)),
        Ast::Symbol(s) => Err(QError::Domain(format!(
            "bare identifier '{s}' is only meaningful as an operation argument"
        ))),
        Ast::List(_) => Err(QError::Domain(
            "a list is only meaningful as an operation argument".into(),
        )),
        Ast::Neg(inner) => Ok(-eval(inner)?),
        Ast::Binary { op, lhs, rhs } => {
            let l = eval(lhs)?;
            let r = eval(rhs)?;
            match op {
                '+' => Ok(l + r),
                '-' => Ok(l - r),
                '*' => Ok(l * r),
                '/' => l.div(&r),
                other => Err(QError::Domain(format!("unknown operator '{other}'"))),
            }
        }
        Ast::Call { name, args, .. } => {
            eval_call(name, args).map_err(|e| located(name, ast, e))
        }
    }
}

fn scalar(ast: &Ast) -> Result<QComplex> {
    eval(ast)
}

fn real(ast: &Ast, what: &str) -> Result<f64> {
    let v = eval(ast)?;
    if v.im != 0.0 {
        return Err(QError::Domain(format!("{what} must be real, got {v}")));
    }
    Ok(v.re)
}

fn integer(ast: &Ast, what: &str) -> Result<i64> {
    let v = real(ast, what)?;
    if v.fract() != 0.0 || v.abs() > 1e15 {
        return Err(QError::Domain(format!("{what} must be an integer, got {v}")));
    }
    Ok(v as i64)
}

fn list(ast: &Ast, what: &str) -> Result<Vec<QComplex>> {
    match ast {
        Ast::List(items) => items.iter().map(eval).collect(),
        _ => Err(QError::Domain(format!("{what} must be a list like [0.3,0.4]"))),
    }
}

fn symbol<'a>(ast: &'a Ast, what: &str) -> Result<&'a str> {
    match ast {
        Ast::Symbol(s) => Ok(s),
        _ => Err(QError::Domain(format!(
            "{what} must be a bare identifier"
        ))),
    }
}

fn arity(name: &str, args: &[Ast], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(QError::Domain(format!(
            "{name} takes {n} arguments, got {}",
            args.len()
        )))
    }
}

fn eval_call(name: &str, args: &[Ast]) -> Result<QComplex> {
    match name {
        "qpoch" => {
            arity(name, args, 3)?;
            let a = scalar(&args[0])?;
            let q = scalar(&args[1])?;
            // the index may be an integer, the symbol `inf`, or a
            // complex exponent
            if let Ast::Symbol(s) = &args[2] {
                if s == "inf" {
                    return qpoch_inf(a, q);
                }
                return Err(QError::Domain(format!(
                    "unknown index '{s}': expected an integer, 'inf', or a complex exponent"
                )));
            }
            let idx = scalar(&args[2])?;
            if idx.im == 0.0 && idx.re.fract() == 0.0 && idx.re.abs() < 1e15 {
                qpoch(&a, &q, idx.re as i64)
            } else {
                qpoch_complex_index(a, q, idx)
            }
        }
        "qbinom" => {
            arity(name, args, 3)?;
            let n = integer(&args[0], "the upper index")?;
            let k = integer(&args[1], "the lower index")?;
            let q = scalar(&args[2])?;
            qbinom(n, k, &q)
        }
        "phi" | "psi" => {
            arity(name, args, 4)?;
            let spec = SeriesSpec {
                numerators: list(&args[0], "the numerator parameters")?,
                denominators: list(&args[1], "the denominator parameters")?,
                base: scalar(&args[2])?,
                argument: scalar(&args[3])?,
                bilateral: name == "psi",
            };
            if name == "psi" {
                eval_psi(&spec, REL_TOL)
            } else {
                eval_phi(&spec, REL_TOL)
            }
        }
        "W" => {
            arity(name, args, 4)?;
            let a = scalar(&args[0])?;
            let rest = list(&args[1], "the free parameters")?;
            let q = scalar(&args[2])?;
            let z = scalar(&args[3])?;
            let spec = make_vwp(a, &rest, q, z)?;
            eval_phi(&spec, REL_TOL)
        }
        "qgamma" => {
            arity(name, args, 2)?;
            q_gamma(scalar(&args[0])?, scalar(&args[1])?)
        }
        "qbeta" => {
            arity(name, args, 3)?;
            q_beta(scalar(&args[0])?, scalar(&args[1])?, scalar(&args[2])?)
        }
        "theta" => {
            arity(name, args, 3)?;
            let j = integer(&args[0], "the theta index")?;
            if !(1..=4).contains(&j) {
                return Err(QError::Domain(format!(
                    "the theta index must be 1..4, got {j}"
                )));
            }
            identities::theta(j as u8, real(&args[1], "the theta argument")?, scalar(&args[2])?)
        }
        "qint" => eval_qint(args),
        other => Err(QError::UnknownIdentity(format!(
            "unknown operation '{other}'"
        ))),
    }
}

/// `qint(kind, bounds..., q, integrand, integrand-args...)` over the
/// named integrand set:
///
/// - `monomial, c` for t^c
/// - `poch_ratio, [n...], [d...]` for
///   `prod (n_i t;q)_inf / prod (d_j t;q)_inf`
///
/// Kinds: `zero_to_one`, `zero_to, a`, `between, a, b`, `zero_to_inf`,
/// `bilateral`.
fn eval_qint(args: &[Ast]) -> Result<QComplex> {
    if args.is_empty() {
        return Err(QError::Domain("qint requires an integration kind".into()));
    }
    let kind_name = symbol(&args[0], "the integration kind")?;
    let (kind, rest) = match kind_name {
        "zero_to_one" => (QIntegralKind::ZeroToOne, &args[1..]),
        "zero_to" => {
            if args.len() < 2 {
                return Err(QError::Domain("zero_to requires an upper bound".into()));
            }
            (QIntegralKind::ZeroTo(scalar(&args[1])?), &args[2..])
        }
        "between" => {
            if args.len() < 3 {
                return Err(QError::Domain("between requires two bounds".into()));
            }
            (
                QIntegralKind::Between(scalar(&args[1])?, scalar(&args[2])?),
                &args[3..],
            )
        }
        "zero_to_inf" => (QIntegralKind::ZeroToInfinity, &args[1..]),
        "bilateral" => (QIntegralKind::Bilateral, &args[1..]),
        other => {
            return Err(QError::Domain(format!(
                "unknown integration kind '{other}'"
            )))
        }
    };
    if rest.len() < 2 {
        return Err(QError::Domain(
            "qint requires a base and an integrand id".into(),
        ));
    }
    let q = scalar(&rest[0])?;
    let integrand_id = symbol(&rest[1], "the integrand id")?;
    let iargs = &rest[2..];
    match integrand_id {
        "monomial" => {
            if iargs.len() != 1 {
                return Err(QError::Domain(
                    "the monomial integrand takes one exponent".into(),
                ));
            }
            let c = scalar(&iargs[0])?;
            let f = move |t: QComplex| -> Result<QComplex> { Ok(t.powc(c)) };
            q_integral(
                &QIntegralSpec {
                    kind,
                    base: q,
                    integrand: &f,
                },
                REL_TOL,
            )
        }
        "poch_ratio" => {
            if iargs.len() != 2 {
                return Err(QError::Domain(
                    "the poch_ratio integrand takes two coefficient lists".into(),
                ));
            }
            let numer = list(&iargs[0], "the numerator coefficients")?;
            let denom = list(&iargs[1], "the denominator coefficients")?;
            let f = move |t: QComplex| -> Result<QComplex> {
                let n: Vec<QComplex> = numer.iter().map(|&x| x * t).collect();
                let d: Vec<QComplex> = denom.iter().map(|&x| x * t).collect();
                identities::inf_ratio(&n, &d, q)
            };
            q_integral(
                &QIntegralSpec {
                    kind,
                    base: q,
                    integrand: &f,
                },
                REL_TOL,
            )
        }
        other => Err(QError::Domain(format!(
            "unknown integrand '{other}': expected monomial or poch_ratio"
        ))),
    }
}
