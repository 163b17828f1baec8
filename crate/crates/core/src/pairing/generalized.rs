use super::{point_words, quad_words, PairingContext, PairingError};
use crate::curve::Point;
use crate::divisor::{CanonicalPair, RDivisor, ZDivisor};
use crate::gm::{Codomain, GmElement, PairingValue};
use crate::miller::RFunction;
use crate::quad::QuadInt;

const T_TAG: u64 = 0x745f_616c;
const W_TAG: u64 = 0x775f_616c;
const TN_TAG: u64 = 0x745f_6e00;
const WN_TAG: u64 = 0x775f_6e00;

fn pair_words(c: &CanonicalPair) -> [u64; 4] {
    let a = point_words(&c.p0);
    let b = point_words(&c.p1);
    [a[0], a[1], b[0], b[1]]
}

impl PairingContext {
    pub(crate) fn canonical(&self, d: &RDivisor) -> Result<CanonicalPair, PairingError> {
        if d.order() != self.order() {
            return Err(PairingError::OrderMismatch);
        }
        Ok(d.canonical_form(self.cm())?)
    }

    /// Fails unless `b` kills the class of `d`.
    pub(crate) fn require_class_kernel(
        &self,
        b: QuadInt,
        c: &CanonicalPair,
        what: &str,
    ) -> Result<(), PairingError> {
        self.check_order(b)?;
        let killed = c
            .to_divisor(self.order())
            .scale(b)
            .canonical_form(self.cm())?;
        if !killed.is_zero() {
            return Err(PairingError::NotInKernel(format!(
                "{what} = {c} is not killed by {b}"
            )));
        }
        Ok(())
    }

    /// `sum_j tau_j ((Q_j + S) - (S))`, a divisor in the class of `c`.
    pub(crate) fn translated_pair(&self, c: &CanonicalPair, s: Point) -> RDivisor {
        let e = self.curve();
        let d0 = ZDivisor::from_terms([(e.add(c.p0, s), 1), (s, -1)]);
        let d1 = ZDivisor::from_terms([(e.add(c.p1, s), 1), (s, -1)]);
        RDivisor::from_components(self.order(), &d0, &d1)
    }

    /// The generalized Tate pairing `T_a(D_P, D_Q)`, modulo `conj(a)`-powers.
    ///
    /// `D_P` must lie in `Pic^0_R[conj(a)]`. `D_Q` is moved to a translate of
    /// its canonical representative by a seeded auxiliary point.
    pub fn t_alpha(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        alpha: QuadInt,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        let cq = self.canonical(dq)?;
        let ab = alpha.conj();
        self.require_class_kernel(ab, &cp, "D_P")?;
        let f = RFunction::multiple(self.cm(), cp.p0, cp.p1, ab)?;
        let mut words = Vec::with_capacity(10);
        words.extend(pair_words(&cp));
        words.extend(pair_words(&cq));
        words.extend(quad_words(&alpha));
        self.with_aux(T_TAG, &words, |s| {
            let raw = f.eval(self.curve(), &self.translated_pair(&cq, s))?;
            self.value(raw, Codomain::Coset(ab))
        })
    }

    /// `T_a(D_P, D_Q)` evaluated at `D_Q` as given, using the function for the
    /// canonical representative of `D_P` translated by `shift`.
    pub fn t_alpha_at(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        alpha: QuadInt,
        shift: Point,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        if dq.order() != self.order() {
            return Err(PairingError::OrderMismatch);
        }
        let ab = alpha.conj();
        self.require_class_kernel(ab, &cp, "D_P")?;
        let f = RFunction::multiple(self.cm(), cp.p0, cp.p1, ab)?.shifted(self.curve(), shift);
        let raw = f.eval(self.curve(), dq)?;
        self.value(raw, Codomain::Coset(ab))
    }

    /// The generalized Weil pairing `W_a(D_P, D_Q)`, exact and killed by
    /// `conj(a)`. Needs `conj(a) D_P ~ 0` and `a D_Q ~ 0`.
    pub fn w_alpha(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        alpha: QuadInt,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        let cq = self.canonical(dq)?;
        let mut words = Vec::with_capacity(10);
        words.extend(pair_words(&cp));
        words.extend(pair_words(&cq));
        words.extend(quad_words(&alpha));
        self.with_aux(W_TAG, &words, |t| self.w_alpha_with_aux(dp, dq, alpha, t))
    }

    /// `W_a(D_P, D_Q)` with the translation point `T` given.
    pub fn w_alpha_with_aux(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        alpha: QuadInt,
        t: Point,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        let cq = self.canonical(dq)?;
        let ab = alpha.conj();
        self.require_class_kernel(ab, &cp, "D_P")?;
        self.require_class_kernel(alpha, &cq, "D_Q")?;
        let e = self.curve();
        let order = self.order();
        let fp = RFunction::multiple(self.cm(), cp.p0, cp.p1, ab)?.shifted(e, t);
        let fq = RFunction::multiple(self.cm(), cq.p0, cq.p1, alpha)?;
        let dp_moved = cp.to_divisor(order).translate(e, t);
        let at_q = fp.eval(e, &cq.to_divisor(order))?;
        let at_p = fq.eval(e, &dp_moved)?;
        self.value(at_q.div(&at_p.conj(order)), Codomain::Torsion(ab))
    }

    /// `prod_{i,j} t_n(P_i, Q_j)^{conj(tau_j) tau_i}` over the canonical pairs.
    pub fn tate_product_formula(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        n: u64,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        let cq = self.canonical(dq)?;
        let nn = self.order().int(n as i64);
        self.require_class_kernel(nn, &cp, "D_P")?;
        let mut acc = GmElement::identity(self.field());
        for (i, pi) in [cp.p0, cp.p1].into_iter().enumerate() {
            for (j, qj) in [cq.p0, cq.p1].into_iter().enumerate() {
                let pw = point_words(&pi);
                let qw = point_words(&qj);
                let t = self.with_aux(TN_TAG, &[pw[0], pw[1], qw[0], qw[1], n], |s| {
                    self.tate_classical_with_aux(pi, qj, n, s)
                })?;
                acc = acc.mul(
                    &GmElement::scalar(t.raw)?.pow(self.tau_power(i) * self.tau_power(j).conj()),
                );
            }
        }
        self.value(acc, Codomain::Coset(nn))
    }

    /// `prod_{i,j} e_n(P_i, Q_j)^{conj(tau_j) tau_i}` over the canonical pairs.
    pub fn weil_product_formula(
        &self,
        dp: &RDivisor,
        dq: &RDivisor,
        n: u64,
    ) -> Result<PairingValue, PairingError> {
        let cp = self.canonical(dp)?;
        let cq = self.canonical(dq)?;
        let nn = self.order().int(n as i64);
        self.require_class_kernel(nn, &cp, "D_P")?;
        self.require_class_kernel(nn, &cq, "D_Q")?;
        let mut acc = GmElement::identity(self.field());
        for (i, pi) in [cp.p0, cp.p1].into_iter().enumerate() {
            for (j, qj) in [cq.p0, cq.p1].into_iter().enumerate() {
                let pw = point_words(&pi);
                let qw = point_words(&qj);
                let w = self.with_aux(WN_TAG, &[pw[0], pw[1], qw[0], qw[1], n], |t| {
                    self.weil_classical_with_aux(pi, qj, n, t)
                })?;
                acc = acc.mul(
                    &GmElement::scalar(w.raw)?.pow(self.tau_power(i) * self.tau_power(j).conj()),
                );
            }
        }
        self.value(acc, Codomain::Torsion(nn))
    }

    fn tau_power(&self, i: usize) -> QuadInt {
        if i == 0 {
            self.order().one()
        } else {
            self.order().tau()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CmCurve;
    use crate::divisor::eta;
    use crate::field::PrimeField;

    fn ctx() -> PairingContext {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        PairingContext::new(cm, 3).unwrap()
    }

    fn pair(c: &PairingContext, a: (i64, i64), b: (i64, i64)) -> RDivisor {
        let e = c.curve();
        let cp = CanonicalPair {
            p0: e.point(a.0, a.1).unwrap(),
            p1: e.point(b.0, b.1).unwrap(),
        };
        cp.to_divisor(c.order())
    }

    #[test]
    fn tn_matches_product_of_classical_tate() {
        let c = ctx();
        let dp = pair(&c, (204, 283), (56, 137));
        let dq = pair(&c, (56, 137), (197, 46));
        let lhs = c.t_alpha(&dp, &dq, c.order().int(5)).unwrap();
        let rhs = c.tate_product_formula(&dp, &dq, 5).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wn_matches_product_of_classical_weil() {
        let c = ctx();
        let dp = pair(&c, (204, 283), (56, 137));
        let dq = pair(&c, (56, 137), (197, 46));
        let lhs = c.w_alpha(&dp, &dq, c.order().int(5)).unwrap();
        let rhs = c.weil_product_formula(&dp, &dq, 5).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_alpha_ignores_the_representative() {
        let c = ctx();
        let o = c.order();
        let alpha = o.elem(1, -2);
        let p = c.curve().point(204, 283).unwrap();
        let dp = eta(c.cm(), c.cm().apply_r(alpha.conj(), p).unwrap());
        let dq = pair(&c, (56, 137), (204, 283));
        let a = c.t_alpha(&dp, &dq, alpha.conj()).unwrap();
        let s = c.curve().point(0, 0).unwrap();
        let moved = c.translated_pair(&dq.canonical_form(c.cm()).unwrap(), s);
        let b = c
            .t_alpha_at(&dp, &moved, alpha.conj(), Point::Infinity)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn t_alpha_checks_the_kernel() {
        let c = ctx();
        let dp = pair(&c, (204, 283), (0, 0));
        let dq = pair(&c, (56, 137), (204, 283));
        let r = c.t_alpha(&dp, &dq, c.order().elem(1, -2));
        assert!(matches!(r, Err(PairingError::NotInKernel(_))));
    }
}
