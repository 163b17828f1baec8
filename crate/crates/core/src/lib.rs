//! Pairings on CM elliptic curves over prime fields, with values in
//! `G_m ⊗ R` for the quadratic order `R` of the complex multiplication.

pub mod curve;
pub mod divisor;
pub mod example;
pub mod field;
pub mod gm;
pub mod miller;
pub mod pairing;
pub mod quad;

pub use curve::{CmCurve, Curve, CurveError, Point};
pub use divisor::{eta, CanonicalPair, RDivisor, ZDivisor};
pub use field::{Fp, PrimeField};
pub use gm::{Codomain, GmElement, LogBasis, PairingValue};
pub use pairing::{LawConfig, LawReport, PairingContext, PairingError, ScanReport, LAW_NAMES};
pub use quad::{QuadInt, QuadOrder, ResidueRing};
