//! Parameter domains and deterministic sampling for verification runs.
//!
//! Each identity or rule declares a [`ParamDomain`]: a list of named
//! sampling boxes plus an optional rejection predicate for inequality
//! constraints (annulus membership, pole avoidance, and so on).
//! Sampling is driven by a ChaCha8 generator with a per-identity
//! substream derived from (seed, id), so every run is reproducible and
//! identities can be verified independently in any order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QError, Result};
use crate::scalar::QComplex;

/// How a single named parameter is drawn.
#[derive(Clone, Copy, Debug)]
pub enum ParamKind {
    /// Complex value with modulus uniform in [min, max] and argument
    /// uniform in [-pi, pi).
    Modulus { min: f64, max: f64 },
    /// Real value uniform in [min, max].
    Real { min: f64, max: f64 },
    /// Integer uniform in lo..=hi.
    Integer { lo: i64, hi: i64 },
}

/// Declarative sampling domain. The constraint predicate sees the fully
/// drawn sample (complex values and integers) and rejects invalid draws.
#[derive(Clone)]
pub struct ParamDomain {
    pub params: Vec<(&'static str, ParamKind)>,
    pub constraint: Option<fn(&SampleParams) -> bool>,
}

impl ParamDomain {
    pub fn new(params: Vec<(&'static str, ParamKind)>) -> Self {
        ParamDomain {
            params,
            constraint: None,
        }
    }

    pub fn with_constraint(mut self, c: fn(&SampleParams) -> bool) -> Self {
        self.constraint = Some(c);
        self
    }
}

/// One concrete parameter assignment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleParams {
    pub values: BTreeMap<String, QComplex>,
    pub ints: BTreeMap<String, i64>,
}

impl SampleParams {
    /// Complex parameter by name; panics on a name the domain did not
    /// declare (registry-internal invariant, not user input).
    pub fn c(&self, name: &str) -> QComplex {
        *self
            .values
            .get(name)
            .unwrap_or_else(|| panic!("parameter {name} missing from sample"))
    }

    pub fn int(&self, name: &str) -> i64 {
        *self
            .ints
            .get(name)
            .unwrap_or_else(|| panic!("integer parameter {name} missing from sample"))
    }

    pub fn set(&mut self, name: &str, v: QComplex) {
        self.values.insert(name.to_string(), v);
    }

    pub fn set_int(&mut self, name: &str, v: i64) {
        self.ints.insert(name.to_string(), v);
    }
}

/// 64-bit FNV-1a, used only to fold an identity id into an RNG seed.
fn fnv1a64(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic per-identity generator: the 256-bit ChaCha key packs the
/// run seed and a hash of the id, so streams for distinct identities are
/// independent and reproducible.
pub fn substream(seed: u64, id: &str) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a64(id).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Draws one sample, rejecting draws that violate the domain constraint.
pub fn sample(domain: &ParamDomain, rng: &mut ChaCha8Rng) -> Result<SampleParams> {
    const MAX_ATTEMPTS: u32 = 10_000;
    for _ in 0..MAX_ATTEMPTS {
        let mut s = SampleParams::default();
        for &(name, kind) in &domain.params {
            match kind {
                ParamKind::Modulus { min, max } => {
                    let m = rng.gen_range(min..=max);
                    let arg = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                    s.set(name, QComplex::from_polar(m, arg));
                }
                ParamKind::Real { min, max } => {
                    s.set(name, QComplex::real(rng.gen_range(min..=max)));
                }
                ParamKind::Integer { lo, hi } => {
                    s.set_int(name, rng.gen_range(lo..=hi));
                }
            }
        }
        if domain.constraint.map_or(true, |c| c(&s)) {
            return Ok(s);
        }
    }
    Err(QError::Domain(format!(
        "rejection sampler failed after {MAX_ATTEMPTS} attempts"
    )))
}
