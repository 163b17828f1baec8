//! Classical, generalized and CM pairings, plus the scans and law checks
//! built on them.

mod classical;
mod cm;
mod generalized;
mod laws;
mod scan;

pub use classical::ClassicalValue;
pub use laws::{LawConfig, LawReport, LawResult, LAW_NAMES};
pub use scan::ScanReport;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curve::{CmCurve, Curve, CurveError, Point};
use crate::divisor::DivisorError;
use crate::field::PrimeField;
use crate::gm::{Codomain, GmElement, GmError, LogBasis, PairingValue};
use crate::miller::MillerError;
use crate::quad::{QuadError, QuadInt, QuadOrder};

/// Default number of auxiliary points tried before giving up.
pub const DEFAULT_RETRIES: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("{0}")]
    NotInKernel(String),
    #[error("no auxiliary point gave disjoint supports after {0} attempts")]
    RetriesExhausted(u32),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("elements belong to different orders")]
    OrderMismatch,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Gm(#[from] GmError),
    #[error(transparent)]
    Miller(#[from] MillerError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

impl PairingError {
    /// Errors that another auxiliary point may avoid.
    pub fn is_collision(&self) -> bool {
        matches!(
            self,
            PairingError::Miller(MillerError::ZeroEvaluation | MillerError::SupportCollision)
        )
    }
}

/// Everything a pairing computation needs: the curve with its CM structure,
/// discrete logarithms in `F_q^*`, and the seed for auxiliary points.
#[derive(Clone, Debug)]
pub struct PairingContext {
    cm: CmCurve,
    logs: LogBasis,
    seed: u64,
    retries: u32,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds integers into a seed; stable across platforms and releases.
pub(crate) fn mix_seed(seed: u64, words: &[u64]) -> u64 {
    words
        .iter()
        .fold(splitmix(seed), |acc, &w| splitmix(acc ^ w))
}

pub(crate) fn point_words(p: &Point) -> [u64; 2] {
    match p.coords() {
        None => [u64::MAX, u64::MAX],
        Some((x, y)) => [x.value(), y.value()],
    }
}

pub(crate) fn quad_words(b: &QuadInt) -> [u64; 2] {
    [b.x as u64, b.y as u64]
}

impl PairingContext {
    pub fn new(cm: CmCurve, seed: u64) -> Result<Self, PairingError> {
        let logs = LogBasis::new(cm.curve().field())?;
        Ok(Self {
            cm,
            logs,
            seed,
            retries: DEFAULT_RETRIES,
        })
    }

    pub fn with_retries(mut self, retries: u32) -> Self {
        self.retries = retries;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn cm(&self) -> &CmCurve {
        &self.cm
    }

    pub fn curve(&self) -> &Curve {
        self.cm.curve()
    }

    pub fn field(&self) -> PrimeField {
        self.cm.curve().field()
    }

    pub fn order(&self) -> QuadOrder {
        self.cm.order()
    }

    pub fn logs(&self) -> &LogBasis {
        &self.logs
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn retries(&self) -> u32 {
        self.retries
    }

    /// A generator seeded from the context seed, an operation tag and its inputs.
    pub(crate) fn rng_for(&self, tag: u64, words: &[u64]) -> ChaCha8Rng {
        let mut all = Vec::with_capacity(words.len() + 1);
        all.push(tag);
        all.extend_from_slice(words);
        ChaCha8Rng::seed_from_u64(mix_seed(self.seed, &all))
    }

    /// Runs `f` on seeded random auxiliary points until supports are disjoint.
    pub(crate) fn with_aux<T>(
        &self,
        tag: u64,
        words: &[u64],
        mut f: impl FnMut(Point) -> Result<T, PairingError>,
    ) -> Result<T, PairingError> {
        let mut rng = self.rng_for(tag, words);
        for _ in 0..self.retries {
            let s = self.curve().random_point(&mut rng)?;
            match f(s) {
                Err(e) if e.is_collision() => continue,
                other => return other,
            }
        }
        Err(PairingError::RetriesExhausted(self.retries))
    }

    pub fn value(&self, raw: GmElement, codomain: Codomain) -> Result<PairingValue, PairingError> {
        Ok(PairingValue::new(raw, codomain, &self.logs)?)
    }

    /// `v^b` in the same codomain.
    pub fn pow_value(&self, v: &PairingValue, b: QuadInt) -> Result<PairingValue, PairingError> {
        self.value(v.raw.pow(b), v.codomain)
    }

    /// `u v` in the common codomain.
    pub fn mul_values(
        &self,
        u: &PairingValue,
        v: &PairingValue,
    ) -> Result<PairingValue, PairingError> {
        if u.codomain != v.codomain {
            return Err(
                GmError::ModulusMismatch(u.codomain.to_string(), v.codomain.to_string()).into(),
            );
        }
        self.value(u.raw.mul(&v.raw), u.codomain)
    }

    /// Whether `u` and `v` agree modulo `a`-powers, whatever their codomains.
    pub fn equal_mod_powers(
        &self,
        u: &GmElement,
        v: &GmElement,
        a: QuadInt,
    ) -> Result<bool, PairingError> {
        Ok(self.logs.equal_mod_powers(u, v, a)?)
    }

    pub(crate) fn check_order(&self, b: QuadInt) -> Result<(), PairingError> {
        if b.order() != self.order() {
            return Err(PairingError::OrderMismatch);
        }
        Ok(())
    }

    pub(crate) fn require_kernel(
        &self,
        b: QuadInt,
        p: Point,
        what: &str,
    ) -> Result<(), PairingError> {
        self.check_order(b)?;
        if !self.cm.act(b, p).is_infinity() {
            return Err(PairingError::NotInKernel(format!(
                "{what} = {p} is not killed by {b}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_mixing_is_stable() {
        assert_eq!(mix_seed(0, &[]), splitmix(0));
        assert_ne!(mix_seed(1, &[2, 3]), mix_seed(1, &[3, 2]));
        assert_eq!(mix_seed(7, &[1, 2]), mix_seed(7, &[1, 2]));
    }
}
