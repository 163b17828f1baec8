use serde::{Deserialize, Serialize};

use super::{point_words, PairingContext, PairingError};
use crate::curve::Point;
use crate::divisor::ZDivisor;
use crate::field::{discrete_log, Fp};
use crate::gm::GmError;
use crate::miller::{miller_h, MillerError};

const TATE_TAG: u64 = 0x7461_7465;
const WEIL_TAG: u64 = 0x7765_696c;

/// A classical pairing value in `F_q^*`.
///
/// For the Tate pairing `reduced` is `log_g(raw^{(q-1)/n})`; for the Weil
/// pairing it is `log_g(raw)` with `g` the fixed primitive `n`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalValue {
    pub raw: Fp,
    pub n: u64,
    pub reduced: Option<u64>,
}

impl PairingContext {
    fn require_torsion(&self, p: Point, n: u64, what: &str) -> Result<(), PairingError> {
        if n == 0 || !self.curve().mul(p, n as i64).is_infinity() {
            return Err(PairingError::NotInKernel(format!(
                "{what} = {p} is not killed by {n}"
            )));
        }
        Ok(())
    }

    fn divides_unit_order(&self, n: u64) -> bool {
        self.logs().unit_order().is_multiple_of(n)
    }

    /// The reduced Tate pairing `t_n(P, Q) = h_{P,n}((Q+S) - (S))`.
    pub fn tate_classical(
        &self,
        p: Point,
        q: Point,
        n: u64,
    ) -> Result<ClassicalValue, PairingError> {
        self.require_torsion(p, n, "P")?;
        let pw = point_words(&p);
        let qw = point_words(&q);
        self.with_aux(TATE_TAG, &[pw[0], pw[1], qw[0], qw[1], n], |s| {
            self.tate_classical_with_aux(p, q, n, s)
        })
    }

    /// `t_n(P, Q)` with an explicit auxiliary point `S`.
    pub fn tate_classical_with_aux(
        &self,
        p: Point,
        q: Point,
        n: u64,
        s: Point,
    ) -> Result<ClassicalValue, PairingError> {
        self.require_torsion(p, n, "P")?;
        let e = self.curve();
        let d = ZDivisor::from_terms([(e.add(q, s), 1), (s, -1)]);
        let raw = miller_h(e, p, n as i64, &d)?;
        let reduced = if self.divides_unit_order(n) {
            Some(self.logs().reduced_log(raw, n)?)
        } else {
            None
        };
        Ok(ClassicalValue { raw, n, reduced })
    }

    /// The Weil pairing `e_n(P, Q)`.
    pub fn weil_classical(
        &self,
        p: Point,
        q: Point,
        n: u64,
    ) -> Result<ClassicalValue, PairingError> {
        self.require_torsion(p, n, "P")?;
        self.require_torsion(q, n, "Q")?;
        let pw = point_words(&p);
        let qw = point_words(&q);
        self.with_aux(WEIL_TAG, &[pw[0], pw[1], qw[0], qw[1], n], |t| {
            self.weil_classical_with_aux(p, q, n, t)
        })
    }

    /// `e_n(P, Q) = h_{P,n}((Q-T) - (-T)) / h_{Q,n}((P+T) - (T))`.
    pub fn weil_classical_with_aux(
        &self,
        p: Point,
        q: Point,
        n: u64,
        t: Point,
    ) -> Result<ClassicalValue, PairingError> {
        self.require_torsion(p, n, "P")?;
        self.require_torsion(q, n, "Q")?;
        let e = self.curve();
        let minus_t = e.neg(t);
        if t.is_infinity() || [minus_t, e.neg(p), q, e.sub(q, p)].contains(&t) {
            return Err(MillerError::SupportCollision.into());
        }
        let num = miller_h(
            e,
            p,
            n as i64,
            &ZDivisor::from_terms([(e.add(q, minus_t), 1), (minus_t, -1)]),
        )?;
        let den = miller_h(
            e,
            q,
            n as i64,
            &ZDivisor::from_terms([(e.add(p, t), 1), (t, -1)]),
        )?;
        let raw = num * den.inv().map_err(|_| MillerError::ZeroEvaluation)?;
        let reduced = if self.divides_unit_order(n) {
            let g = self.logs().root_of_unity(n)?;
            Some(discrete_log(g, raw, n).map_err(GmError::from)?)
        } else {
            None
        };
        Ok(ClassicalValue { raw, n, reduced })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CmCurve;
    use crate::field::PrimeField;

    fn ctx() -> PairingContext {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        PairingContext::new(cm, 0).unwrap()
    }

    #[test]
    fn tate_goldens_modulo_five() {
        let c = ctx();
        let e = c.curve();
        let p = e.point(204, 283).unwrap();
        let q = e.point(56, 137).unwrap();
        let two_i_p = c.cm().apply_r(c.order().elem(0, 2), p).unwrap();
        assert_eq!(c.tate_classical(p, q, 5).unwrap().reduced, Some(1));
        assert_eq!(c.tate_classical(two_i_p, q, 5).unwrap().reduced, Some(4));
        assert_eq!(c.tate_classical(p, p, 5).unwrap().reduced, Some(0));
        assert_eq!(c.tate_classical(q, q, 5).unwrap().reduced, Some(0));
    }

    #[test]
    fn tate_does_not_depend_on_aux() {
        let c = ctx();
        let e = c.curve();
        let p = e.point(204, 283).unwrap();
        let q = e.point(56, 137).unwrap();
        let a = c
            .tate_classical_with_aux(p, q, 5, e.point(0, 0).unwrap())
            .unwrap();
        let b = c
            .tate_classical_with_aux(p, q, 5, e.point(1, 0).unwrap())
            .unwrap();
        assert_eq!(a.reduced, b.reduced);
    }

    #[test]
    fn weil_is_alternating_and_nondegenerate() {
        let c = ctx();
        let e = c.curve();
        let p = e.point(204, 283).unwrap();
        let q = e.point(56, 137).unwrap();
        assert_eq!(c.weil_classical(p, p, 5).unwrap().raw, e.field().one());
        let pq = c.weil_classical(p, q, 5).unwrap();
        let qp = c.weil_classical(q, p, 5).unwrap();
        assert_eq!(pq.raw * qp.raw, e.field().one());
        assert_ne!(pq.reduced, Some(0));
    }

    #[test]
    fn rejects_points_outside_the_kernel() {
        let c = ctx();
        let e = c.curve();
        let p = e.point(204, 283).unwrap();
        let big = c
            .curve()
            .points()
            .unwrap()
            .iter()
            .copied()
            .find(|x| !e.mul(*x, 5).is_infinity())
            .unwrap();
        assert!(matches!(
            c.tate_classical(big, p, 5),
            Err(PairingError::NotInKernel(_))
        ));
    }
}
