//! Symbolic-lite value expressions: sums of (prefactor, optional series)
//! terms, where prefactors are quotients of infinite shifted factorials
//! times a scalar.
//!
//! Closed forms and transformation right sides are represented as
//! [`Expression`]s so that multi-term formulas evaluate their terms
//! independently and sum in declaration order (reproducible rounding).

use crate::error::{QError, Result};
use crate::qcore::qpoch_inf;
use crate::scalar::QComplex;
use crate::series::{eval_phi, eval_psi, SeriesSpec};

/// scalar * prod (a_i; base_i)_inf / prod (c_j; base_j)_inf.
///
/// Each factor carries its own base so ordinary-base and squared-base
/// factors can be mixed in one prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffProduct {
    pub scalar: QComplex,
    pub numer: Vec<(QComplex, QComplex)>,
    pub denom: Vec<(QComplex, QComplex)>,
}

impl CoeffProduct {
    pub fn one() -> Self {
        CoeffProduct {
            scalar: QComplex::ONE,
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn scalar(c: QComplex) -> Self {
        CoeffProduct {
            scalar: c,
            ..CoeffProduct::one()
        }
    }

    /// Appends (a;q)_inf factors to the numerator.
    pub fn num(mut self, q: QComplex, factors: &[QComplex]) -> Self {
        self.numer.extend(factors.iter().map(|&a| (a, q)));
        self
    }

    /// Appends (a;q)_inf factors to the denominator.
    pub fn den(mut self, q: QComplex, factors: &[QComplex]) -> Self {
        self.denom.extend(factors.iter().map(|&a| (a, q)));
        self
    }

    /// Multiplies two prefactors by concatenating their factor lists and
    /// multiplying the scalars (used when composing transformations).
    pub fn mul(mut self, other: CoeffProduct) -> Self {
        self.scalar = self.scalar * other.scalar;
        self.numer.extend(other.numer);
        self.denom.extend(other.denom);
        self
    }

    pub fn eval(&self) -> Result<QComplex> {
        let mut acc = self.scalar;
        for &(a, q) in &self.numer {
            acc = acc * qpoch_inf(a, q)?;
        }
        for &(a, q) in &self.denom {
            let p = qpoch_inf(a, q)?;
            if p.abs() < crate::scalar::POLE_GUARD {
                return Err(QError::Pole(format!(
                    "prefactor denominator ({a};{q})_infinity vanishes"
                )));
            }
            acc = acc / p;
        }
        Ok(acc)
    }
}

/// One additive term: coefficient times an optional series value.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprTerm {
    pub coeff: CoeffProduct,
    pub series: Option<SeriesSpec>,
}

/// A sum of terms; the value of the whole expression is the sum of the
/// term values, evaluated left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    pub terms: Vec<ExprTerm>,
}

impl Expression {
    /// Single prefactor with no series.
    pub fn closed(coeff: CoeffProduct) -> Self {
        Expression {
            terms: vec![ExprTerm {
                coeff,
                series: None,
            }],
        }
    }

    /// Single prefactor times a series.
    pub fn single(coeff: CoeffProduct, series: SeriesSpec) -> Self {
        Expression {
            terms: vec![ExprTerm {
                coeff,
                series: Some(series),
            }],
        }
    }

    pub fn eval(&self, tol: f64) -> Result<QComplex> {
        let mut sum = QComplex::ZERO;
        for term in &self.terms {
            let mut v = term.coeff.eval()?;
            if let Some(spec) = &term.series {
                let s = if spec.bilateral {
                    eval_psi(spec, tol)?
                } else {
                    eval_phi(spec, tol)?
                };
                v = v * s;
            }
            sum = sum + v;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_product_quotient() {
        let q = QComplex::real(0.5);
        let a = QComplex::real(0.3);
        // (a;q)_inf / (a;q)_inf = 1
        let c = CoeffProduct::one().num(q, &[a]).den(q, &[a]);
        assert!(c.eval().unwrap().approx_eq(QComplex::ONE, 1e-12));
    }

    #[test]
    fn expression_sums_terms_and_series() {
        let q = QComplex::real(0.5);
        let z = QComplex::real(0.2);
        // 2 + 1phi0(0; -; q, z) = 2 + 1/(z;q)_inf
        let series = SeriesSpec::phi(vec![QComplex::ZERO], vec![], q, z);
        let expr = Expression {
            terms: vec![
                ExprTerm {
                    coeff: CoeffProduct::scalar(QComplex::real(2.0)),
                    series: None,
                },
                ExprTerm {
                    coeff: CoeffProduct::one(),
                    series: Some(series),
                },
            ],
        };
        let v = expr.eval(1e-13).unwrap();
        let w = QComplex::real(2.0)
            + QComplex::ONE / crate::qcore::qpoch_inf(z, q).unwrap();
        assert!(v.approx_eq(w, 1e-11));
    }

    #[test]
    fn pole_in_denominator_reported() {
        let q = QComplex::real(0.5);
        let c = CoeffProduct::one().den(q, &[QComplex::ONE]);
        assert!(matches!(c.eval(), Err(QError::Pole(_))));
    }
}
