//! The multiplicative `R`-module `G_m ⊗ R` over `F_q` and pairing values in it.
//!
//! An element `(g0, g1)` stands for `g0^{⊗1} · g1^{⊗tau}`. Writing both
//! components as powers of a fixed generator `h` of `F_q^*` identifies the
//! module with `R/(q-1)R`, and the action of `b` becomes multiplication by `b`
//! on exponents. Quotients by `a`-powers are then quotients by the lattice
//! `aR + (q-1)R`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{multiplicative_generator, Bsgs, FieldError, Fp, PrimeField};
use crate::quad::{Lattice2, QuadInt, QuadOrder, ResidueRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GmError {
    #[error("G_m components must be nonzero")]
    ZeroComponent,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("discrete logarithm failed: {0}")]
    DlogFailure(String),
    #[error("{n} does not divide q - 1 = {q_minus_one}")]
    NotRootOfUnity { n: u64, q_minus_one: u64 },
    #[error("values live in different quotients ({0} vs {1})")]
    ModulusMismatch(String, String),
    #[error("value is not an {0}-th root of unity")]
    NotTorsion(u64),
    #[error("reduced forms need a {0} dividing the order")]
    ReductionUnavailable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GmElement {
    pub g0: Fp,
    pub g1: Fp,
}

impl GmElement {
    pub fn new(g0: Fp, g1: Fp) -> Result<Self, GmError> {
        if g0.is_zero() || g1.is_zero() {
            return Err(GmError::ZeroComponent);
        }
        if g0.field() != g1.field() {
            return Err(
                FieldError::FieldMismatch(g0.field().modulus(), g1.field().modulus()).into(),
            );
        }
        Ok(Self { g0, g1 })
    }

    pub fn identity(field: PrimeField) -> Self {
        Self {
            g0: field.one(),
            g1: field.one(),
        }
    }

    /// The simple tensor `g^{⊗1}`.
    pub fn scalar(g: Fp) -> Result<Self, GmError> {
        Self::new(g, g.field().one())
    }

    pub fn field(&self) -> PrimeField {
        self.g0.field()
    }

    pub fn is_identity(&self) -> bool {
        self.g0.is_one() && self.g1.is_one()
    }

    pub fn try_mul(&self, o: &GmElement) -> Result<GmElement, GmError> {
        Ok(Self {
            g0: self.g0.try_mul(o.g0)?,
            g1: self.g1.try_mul(o.g1)?,
        })
    }

    pub fn mul(&self, o: &GmElement) -> GmElement {
        self.try_mul(o).expect("field mismatch")
    }

    pub fn inv(&self) -> GmElement {
        Self {
            g0: self.g0.inv().expect("nonzero"),
            g1: self.g1.inv().expect("nonzero"),
        }
    }

    pub fn div(&self, o: &GmElement) -> GmElement {
        self.mul(&o.inv())
    }

    /// `u^b`, through the action matrix of `b`.
    pub fn pow(&self, b: QuadInt) -> GmElement {
        let m = b.action_matrix();
        let p = |x: Fp, e: i64| x.pow(e).expect("nonzero");
        Self {
            g0: p(self.g0, m.a) * p(self.g1, m.b),
            g1: p(self.g0, m.c) * p(self.g1, m.d),
        }
    }

    /// `(g0 g1^t, g1^-1)`, from `conj(tau) = t - tau`.
    pub fn conj(&self, order: QuadOrder) -> GmElement {
        let g1inv = self.g1.inv().expect("nonzero");
        Self {
            g0: self.g0 * self.g1.pow(order.trace_tau()).expect("nonzero"),
            g1: g1inv,
        }
    }
}

impl fmt::Display for GmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}^(tau)", self.g0, self.g1)
    }
}

/// Discrete logarithms to a fixed generator `h` of `F_q^*`.
#[derive(Clone, Debug)]
pub struct LogBasis {
    field: PrimeField,
    h: Fp,
    table: Bsgs,
}

impl LogBasis {
    /// Uses the smallest generator of `F_q^*`.
    pub fn new(field: PrimeField) -> Result<Self, GmError> {
        let h = multiplicative_generator(field)?;
        Self::with_generator(h)
    }

    pub fn with_generator(h: Fp) -> Result<Self, GmError> {
        let field = h.field();
        for (p, _) in crate::field::factorize(field.unit_order())? {
            if h.pow_u64(field.unit_order() / p).is_one() {
                return Err(GmError::DlogFailure(format!("{h} does not generate F_q^*")));
            }
        }
        let table = Bsgs::new(h, field.unit_order())?;
        Ok(Self { field, h, table })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generator(&self) -> Fp {
        self.h
    }

    pub fn unit_order(&self) -> u64 {
        self.field.unit_order()
    }

    pub fn log(&self, x: Fp) -> Result<u64, GmError> {
        self.table
            .solve(x)
            .map_err(|e| GmError::DlogFailure(e.to_string()))
    }

    /// `(log g0, log g1)` as an element of `R/(q-1)R`.
    pub fn exponent(&self, u: &GmElement, order: QuadOrder) -> Result<QuadInt, GmError> {
        Ok(order.elem(self.log(u.g0)? as i64, self.log(u.g1)? as i64))
    }

    /// `h^e` for an exponent in `R`.
    pub fn element(&self, e: QuadInt) -> GmElement {
        GmElement::identity(self.field).mul(
            &GmElement {
                g0: self.h,
                g1: self.field.one(),
            }
            .pow(e),
        )
    }

    /// `g = h^((q-1)/n)`, a primitive `n`-th root of unity.
    pub fn root_of_unity(&self, n: u64) -> Result<Fp, GmError> {
        let m = self.unit_order();
        if n == 0 || !m.is_multiple_of(n) {
            return Err(GmError::NotRootOfUnity { n, q_minus_one: m });
        }
        Ok(self.h.pow_u64(m / n))
    }

    /// Exponent of `x^((q-1)/n)` to the base `g = h^((q-1)/n)`, in `[0, n)`.
    pub fn reduced_log(&self, x: Fp, n: u64) -> Result<u64, GmError> {
        let g = self.root_of_unity(n)?;
        let y = x.pow_u64(self.unit_order() / n);
        crate::field::discrete_log(g, y, n).map_err(|e| GmError::DlogFailure(e.to_string()))
    }

    /// The lattice of exponents of `a`-powers, `aR + (q-1)R`.
    pub fn power_lattice(&self, alpha: QuadInt) -> Lattice2 {
        let m = alpha.action_matrix();
        let k = self.unit_order() as i64;
        Lattice2::from_generators(&[(m.a, m.c), (m.b, m.d), (k, 0), (0, k)])
            .expect("(q-1)R has full rank")
    }

    /// Whether `u v^-1` is an `a`-power.
    pub fn equal_mod_powers(
        &self,
        u: &GmElement,
        v: &GmElement,
        alpha: QuadInt,
    ) -> Result<bool, GmError> {
        let e = self.exponent(&u.div(v), alpha.order())?;
        Ok(self.power_lattice(alpha).contains(e.coords()))
    }

    /// Raises `u` to `(q-1)/n`, takes logs to `g`, and reduces into `R/aR`.
    pub fn reduced_form(&self, u: &GmElement, n: u64, alpha: QuadInt) -> Result<QuadInt, GmError> {
        let ring = ResidueRing::new(alpha).map_err(|e| GmError::DlogFailure(e.to_string()))?;
        if n == 0 || !n.is_multiple_of(ring.int_modulus() as u64) {
            return Err(GmError::ReductionUnavailable(format!(
                "multiple of {alpha}"
            )));
        }
        let x = self.reduced_log(u.g0, n)? as i64;
        let y = self.reduced_log(u.g1, n)? as i64;
        Ok(ring.reduce(alpha.order().elem(x, y)))
    }
}

/// Which quotient of `G_m ⊗ R` a pairing value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Codomain {
    /// Modulo `a`-powers.
    Coset(QuadInt),
    /// Exact values, annihilated by the given element.
    Torsion(QuadInt),
}

impl Codomain {
    pub fn modulus(&self) -> QuadInt {
        match *self {
            Codomain::Coset(a) | Codomain::Torsion(a) => a,
        }
    }
}

impl fmt::Display for Codomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codomain::Coset(a) => write!(f, "mod ({a})-powers"),
            Codomain::Torsion(a) => write!(f, "exact, killed by {a}"),
        }
    }
}

/// A pairing output with its quotient and canonical exponents.
///
/// `exponent` is the `h`-exponent reduced into the canonical box of the
/// codomain lattice, so two values are equal exactly when their codomains and
/// exponents agree. `reduced` is the `g`-exponent in `R/aR` for cosets and in
/// `R/nR` for torsion values, where `n` generates `aR ∩ Z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingValue {
    pub raw: GmElement,
    pub codomain: Codomain,
    pub raw_exponent: QuadInt,
    pub exponent: QuadInt,
    pub reduced: Option<QuadInt>,
}

impl PartialEq for PairingValue {
    fn eq(&self, other: &Self) -> bool {
        self.codomain == other.codomain && self.exponent == other.exponent
    }
}

impl Eq for PairingValue {}

impl PairingValue {
    pub fn new(raw: GmElement, codomain: Codomain, logs: &LogBasis) -> Result<Self, GmError> {
        let modulus = codomain.modulus();
        let order = modulus.order();
        let raw_exponent = logs.exponent(&raw, order)?;
        let k = logs.unit_order() as i64;
        let lattice = match codomain {
            Codomain::Coset(a) => logs.power_lattice(a),
            Codomain::Torsion(_) => Lattice2 {
                h11: k,
                h12: 0,
                h22: k,
            },
        };
        let (x, y) = lattice.reduce(raw_exponent.coords());
        let exponent = order.elem(x, y);
        let reduced = if modulus.is_zero() {
            None
        } else {
            let ring = ResidueRing::new(modulus).expect("nonzero");
            let n = ring.int_modulus() as u64;
            if !logs.unit_order().is_multiple_of(n) {
                None
            } else {
                Some(match codomain {
                    Codomain::Coset(_) => {
                        let rx = logs.reduced_log(raw.g0, n)? as i64;
                        let ry = logs.reduced_log(raw.g1, n)? as i64;
                        ring.reduce(order.elem(rx, ry))
                    }
                    Codomain::Torsion(_) => {
                        let step = k / n as i64;
                        let (x, y) = raw_exponent.coords();
                        if x % step != 0 || y % step != 0 {
                            return Err(GmError::NotTorsion(n));
                        }
                        order.elem(
                            (x / step).rem_euclid(n as i64),
                            (y / step).rem_euclid(n as i64),
                        )
                    }
                })
            }
        };
        Ok(Self {
            raw,
            codomain,
            raw_exponent,
            exponent,
            reduced,
        })
    }

    pub fn identity(field: PrimeField, codomain: Codomain, logs: &LogBasis) -> Self {
        Self::new(GmElement::identity(field), codomain, logs).expect("log of 1")
    }

    pub fn is_identity(&self) -> bool {
        self.exponent.is_zero()
    }

    /// Equality that refuses to compare values from different quotients.
    pub fn same_class(&self, other: &PairingValue) -> Result<bool, GmError> {
        if self.codomain != other.codomain {
            return Err(GmError::ModulusMismatch(
                self.codomain.to_string(),
                other.codomain.to_string(),
            ));
        }
        Ok(self.exponent == other.exponent)
    }

    /// `h^{x+y*tau}` with the canonical exponent.
    pub fn exponent_form(&self) -> String {
        format!("h^{{{}}}", self.exponent)
    }

    /// `g^{r}` with the reduced exponent, if one exists.
    pub fn reduced_form(&self) -> Option<String> {
        self.reduced.map(|r| format!("g^{{{r}}}"))
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exponent_form())?;
        if let Some(r) = self.reduced_form() {
            write!(f, " = {r}")?;
        }
        Ok(())
    }
}
