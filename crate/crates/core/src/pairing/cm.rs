use super::{point_words, quad_words, PairingContext, PairingError};
use crate::curve::Point;
use crate::divisor::{eta, RDivisor, ZDivisor};
use crate::field::Fp;
use crate::gm::{Codomain, GmElement, GmError, PairingValue};
use crate::miller::RFunction;
use crate::quad::QuadInt;

const T_HAT_TAG: u64 = 0x7468_6174;
const W_HAT_TAG: u64 = 0x7768_6174;

impl PairingContext {
    fn hat_words(&self, p: Point, q: Point, alpha: QuadInt) -> [u64; 6] {
        let pw = point_words(&p);
        let qw = point_words(&q);
        let aw = quad_words(&alpha);
        [pw[0], pw[1], qw[0], qw[1], aw[0], aw[1]]
    }

    /// The CM Tate pairing `T^_a(P, Q)` modulo `a`-powers, for `P` in `E[conj(a)]`.
    pub fn t_hat(&self, p: Point, q: Point, alpha: QuadInt) -> Result<PairingValue, PairingError> {
        self.require_kernel(alpha.conj(), p, "P")?;
        self.with_aux(T_HAT_TAG, &self.hat_words(p, q, alpha), |s| {
            self.t_hat_with_aux(p, q, alpha, s)
        })
    }

    /// `T^_a(P, Q)` with the auxiliary point `S` given.
    ///
    /// Evaluates the function with divisor `a eta(P)` at
    /// `([-tau]Q + [-tau]S) - ([-tau]S) + tau((Q + S) - (S))`.
    pub fn t_hat_with_aux(
        &self,
        p: Point,
        q: Point,
        alpha: QuadInt,
        s: Point,
    ) -> Result<PairingValue, PairingError> {
        self.require_kernel(alpha.conj(), p, "P")?;
        let e = self.curve();
        let minus_tau = -self.order().tau();
        let f = RFunction::multiple(self.cm(), self.cm().act(minus_tau, p), p, alpha)?;
        let q0 = self.cm().act(minus_tau, q);
        let s0 = self.cm().act(minus_tau, s);
        let d0 = ZDivisor::from_terms([(e.add(q0, s0), 1), (s0, -1)]);
        let d1 = ZDivisor::from_terms([(e.add(q, s), 1), (s, -1)]);
        let raw = f.eval(e, &RDivisor::from_components(self.order(), &d0, &d1))?;
        self.value(raw, Codomain::Coset(alpha))
    }

    /// The CM Weil pairing `W^_a(P, Q)`, exact and killed by `a`, for `P` in
    /// `E[conj(a)]` and `Q` in `E[a]`.
    pub fn w_hat(&self, p: Point, q: Point, alpha: QuadInt) -> Result<PairingValue, PairingError> {
        self.require_kernel(alpha.conj(), p, "P")?;
        self.require_kernel(alpha, q, "Q")?;
        self.with_aux(W_HAT_TAG, &self.hat_words(p, q, alpha), |t| {
            self.w_hat_with_aux(p, q, alpha, t)
        })
    }

    /// `W^_a(P, Q)` with the translation point `T` given.
    pub fn w_hat_with_aux(
        &self,
        p: Point,
        q: Point,
        alpha: QuadInt,
        t: Point,
    ) -> Result<PairingValue, PairingError> {
        self.require_kernel(alpha.conj(), p, "P")?;
        self.require_kernel(alpha, q, "Q")?;
        self.w_alpha_with_aux(&eta(self.cm(), p), &eta(self.cm(), q), alpha.conj(), t)
    }

    fn hat_from_classical(
        &self,
        p: Point,
        mut pair: impl FnMut(Point) -> Result<Fp, PairingError>,
    ) -> Result<GmElement, PairingError> {
        let order = self.order();
        let tau = order.tau();
        let minus_tau_p = self.cm().act(-tau, p);
        let skew_p = self.cm().act(tau - tau.conj(), p);
        let first = pair(p)?.pow(2 * order.norm_tau()).map_err(GmError::from)?
            * pair(minus_tau_p)?
                .pow(order.trace_tau())
                .map_err(GmError::from)?;
        Ok(GmElement::new(first, pair(skew_p)?)?)
    }

    /// `T^_n(P, Q)` assembled from classical Tate pairings:
    /// `(t_n(P,Q)^{2N(tau)} t_n([-tau]P,Q)^{Tr(tau)}, t_n([tau - conj(tau)]P, Q))`.
    pub fn t_hat_via_tn(&self, p: Point, q: Point, n: u64) -> Result<PairingValue, PairingError> {
        let raw = self.hat_from_classical(p, |x| Ok(self.tate_classical(x, q, n)?.raw))?;
        self.value(raw, Codomain::Coset(self.order().int(n as i64)))
    }

    /// `W^_n(P, Q)` assembled from classical Weil pairings in the same shape.
    pub fn w_hat_via_en(&self, p: Point, q: Point, n: u64) -> Result<PairingValue, PairingError> {
        let raw = self.hat_from_classical(p, |x| Ok(self.weil_classical(x, q, n)?.raw))?;
        self.value(raw, Codomain::Torsion(self.order().int(n as i64)))
    }

    /// Whether `T^_{N(a)}(P, Q)` and `T^_a(P, Q)^{conj(a)}` agree modulo `a`-powers.
    pub fn norm_relation_check(
        &self,
        p: Point,
        q: Point,
        alpha: QuadInt,
    ) -> Result<bool, PairingError> {
        let n = self.order().int(alpha.norm());
        let big = self.t_hat(p, q, n)?;
        let small = self.t_hat(p, q, alpha)?;
        self.equal_mod_powers(&big.raw, &small.raw.pow(alpha.conj()), alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CmCurve;
    use crate::field::PrimeField;

    fn ctx() -> PairingContext {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        PairingContext::new(cm, 11).unwrap()
    }

    fn pq(c: &PairingContext) -> (Point, Point) {
        (
            c.curve().point(204, 283).unwrap(),
            c.curve().point(56, 137).unwrap(),
        )
    }

    #[test]
    fn t_hat_raw_goldens() {
        let c = ctx();
        let (p, q) = pq(&c);
        let alpha = c.order().elem(1, -2);
        let fq = c.field();
        let a = c
            .t_hat_with_aux(p, q, alpha, c.curve().point(0, 0).unwrap())
            .unwrap();
        assert_eq!((a.raw.g0, a.raw.g1), (fq.elem(175), fq.elem(396)));
        assert_eq!(a.raw_exponent.coords(), (158, 248));
        let b = c
            .t_hat_with_aux(p, q, alpha, c.curve().point(1, 0).unwrap())
            .unwrap();
        assert_eq!((b.raw.g0, b.raw.g1), (fq.elem(186), fq.elem(144)));
        assert_eq!(a, b);
        assert_eq!(a.reduced, Some(c.order().elem(2, 0)));
    }

    #[test]
    fn t_hat_five_table() {
        let c = ctx();
        let (p, q) = pq(&c);
        let five = c.order().int(5);
        let g = c.curve().add(p, q);
        let red = |x, y| c.t_hat(x, y, five).unwrap().reduced.unwrap().coords();
        assert_eq!(red(p, q), (2, 4));
        assert_eq!(red(p, p), (0, 0));
        assert_eq!(red(q, q), (0, 0));
        assert_eq!(red(g, g), (4, 0));
        assert_eq!(red(g, p), (2, 1));
        assert_eq!(red(g, q), (2, 4));
    }

    #[test]
    fn t_hat_via_tn_agrees() {
        let c = ctx();
        let (p, q) = pq(&c);
        for (x, y) in [(p, q), (q, p), (p, p), (c.curve().add(p, q), q)] {
            assert_eq!(
                c.t_hat(x, y, c.order().int(5)).unwrap(),
                c.t_hat_via_tn(x, y, 5).unwrap()
            );
        }
    }

    #[test]
    fn w_hat_via_en_agrees() {
        let c = ctx();
        let (p, q) = pq(&c);
        for (x, y) in [(p, q), (q, p), (p, p), (c.curve().add(p, q), q)] {
            assert_eq!(
                c.w_hat(x, y, c.order().int(5)).unwrap(),
                c.w_hat_via_en(x, y, 5).unwrap()
            );
        }
    }

    #[test]
    fn w_hat_reduced_form_is_the_root_of_unity_exponent() {
        let c = ctx();
        let (p, q) = pq(&c);
        let five = c.order().int(5);
        let v = c.w_hat(p, q, five).unwrap();
        assert!(v.raw.pow(five).is_identity());
        let g = c.logs().root_of_unity(5).unwrap();
        let r = v.reduced.unwrap();
        assert_eq!(v.raw.g0, g.pow_u64(r.x as u64));
        assert_eq!(v.raw.g1, g.pow_u64(r.y as u64));
        assert!(!r.is_zero());
    }

    #[test]
    fn norm_relation_holds() {
        let c = ctx();
        let alpha = c.order().elem(1, -2);
        let kernel = c.cm().kernel_of(alpha.conj()).unwrap();
        let q = c.curve().point(56, 137).unwrap();
        for &p in &kernel {
            assert!(c.norm_relation_check(p, q, alpha).unwrap());
        }
    }
}
