//! Divisors with coefficients in `Z` and in `R`, and their classes in `Pic^0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CmCurve, Curve, Point};
use crate::quad::{QuadInt, QuadOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("divisor has nonzero degree {0}")]
    NonzeroDegree(String),
    #[error("divisor coefficients belong to a different order")]
    OrderMismatch,
}

/// A divisor with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZDivisor {
    coeffs: BTreeMap<Point, i64>,
}

impl ZDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Point, i64)>>(terms: I) -> Self {
        let mut d = Self::new();
        for (p, c) in terms {
            d.add_term(p, c);
        }
        d
    }

    pub fn add_term(&mut self, p: Point, c: i64) {
        let e = self.coeffs.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// The point `sum [n_P] P` on the curve.
    pub fn sum(&self, e: &Curve) -> Point {
        self.terms()
            .fold(Point::Infinity, |acc, (p, c)| e.add(acc, e.mul(p, c)))
    }

    pub fn translate(&self, e: &Curve, s: Point) -> Self {
        Self::from_terms(self.terms().map(|(p, c)| (e.add(p, s), c)))
    }
}

/// An element of `Div_R(E)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RDivisor {
    order: QuadOrder,
    coeffs: BTreeMap<Point, QuadInt>,
}

/// The class `(P0) - (O) + tau((P1) - (O))` in `Pic^0_R(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalPair {
    pub p0: Point,
    pub p1: Point,
}

impl CanonicalPair {
    pub fn zero() -> Self {
        Self {
            p0: Point::Infinity,
            p1: Point::Infinity,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_infinity() && self.p1.is_infinity()
    }

    pub fn to_divisor(&self, order: QuadOrder) -> RDivisor {
        let mut d = RDivisor::zero(order);
        d.add_term(self.p0, order.one());
        d.add_term(self.p1, order.tau());
        d.add_term(Point::Infinity, -(order.one() + order.tau()));
        d
    }
}

impl fmt::Display for CanonicalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) - (O) + tau(({}) - (O))", self.p0, self.p1)
    }
}

impl RDivisor {
    pub fn zero(order: QuadOrder) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single term `c (P)`.
    pub fn term(p: Point, c: QuadInt) -> Self {
        let mut d = Self::zero(c.order());
        d.add_term(p, c);
        d
    }

    /// `(P) - (O)`.
    pub fn point_class(order: QuadOrder, p: Point) -> Self {
        let mut d = Self::zero(order);
        d.add_term(p, order.one());
        d.add_term(Point::Infinity, -order.one());
        d
    }

    pub fn from_z(order: QuadOrder, d: &ZDivisor) -> Self {
        let mut out = Self::zero(order);
        for (p, c) in d.terms() {
            out.add_term(p, order.int(c));
        }
        out
    }

    /// `d0 + tau d1`.
    pub fn from_components(order: QuadOrder, d0: &ZDivisor, d1: &ZDivisor) -> Self {
        let mut out = Self::from_z(order, d0);
        for (p, c) in d1.terms() {
            out.add_term(p, order.elem(0, c));
        }
        out
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn add_term(&mut self, p: Point, c: QuadInt) {
        assert_eq!(c.order(), self.order, "order mismatch");
        let e = self.coeffs.entry(p).or_insert(self.order.zero());
        *e = *e + c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Point) -> QuadInt {
        self.coeffs.get(p).copied().unwrap_or(self.order.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Point, QuadInt)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn try_add(&self, other: &RDivisor) -> Result<RDivisor, DivisorError> {
        if self.order != other.order {
            return Err(DivisorError::OrderMismatch);
        }
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RDivisor) -> Result<RDivisor, DivisorError> {
        self.try_add(&other.scale(-other.order.one()))
    }

    /// Multiplies every coefficient by `b` on the left.
    pub fn scale(&self, b: QuadInt) -> RDivisor {
        assert_eq!(b.order(), self.order, "order mismatch");
        let mut out = Self::zero(self.order);
        for (p, c) in self.terms() {
            out.add_term(p, b * c);
        }
        out
    }

    pub fn degree(&self) -> QuadInt {
        self.coeffs.values().fold(self.order.zero(), |a, &c| a + c)
    }

    /// The integer divisors `D0`, `D1` with `D = D0 + tau D1`.
    pub fn components(&self) -> (ZDivisor, ZDivisor) {
        let mut d0 = ZDivisor::new();
        let mut d1 = ZDivisor::new();
        for (p, c) in self.terms() {
            d0.add_term(p, c.x);
            d1.add_term(p, c.y);
        }
        (d0, d1)
    }

    /// Shifts every support point by `+S`.
    pub fn translate(&self, e: &Curve, s: Point) -> RDivisor {
        let mut out = Self::zero(self.order);
        for (p, c) in self.terms() {
            out.add_term(e.add(p, s), c);
        }
        out
    }

    pub fn supports_disjoint(&self, other: &RDivisor) -> bool {
        self.support().all(|p| !other.coeffs.contains_key(&p))
    }

    /// The representative `(P0) - (O) + tau((P1) - (O))` of the class of `D`.
    pub fn canonical_form(&self, cm: &CmCurve) -> Result<CanonicalPair, DivisorError> {
        if self.order != cm.order() {
            return Err(DivisorError::OrderMismatch);
        }
        let deg = self.degree();
        if !deg.is_zero() {
            return Err(DivisorError::NonzeroDegree(deg.to_string()));
        }
        let (d0, d1) = self.components();
        Ok(CanonicalPair {
            p0: d0.sum(cm.curve()),
            p1: d1.sum(cm.curve()),
        })
    }
}

impl fmt::Display for RDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){p}")?;
        }
        Ok(())
    }
}

/// `eta(P) = ([-tau]P) - (O) + tau((P) - (O))`.
pub fn eta(cm: &CmCurve, p: Point) -> RDivisor {
    let order = cm.order();
    let mut d = RDivisor::zero(order);
    d.add_term(cm.act(-order.tau(), p), order.one());
    d.add_term(p, order.tau());
    d.add_term(Point::Infinity, -(order.one() + order.tau()));
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn e401() -> CmCurve {
        CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap()
    }

    #[test]
    fn eta_of_example_point() {
        let cm = e401();
        let o = cm.order();
        let e = cm.curve();
        let p = e.point(204, 283).unwrap();
        let d = eta(&cm, p);
        let mip = e.neg(e.point(197, 46).unwrap());
        assert_eq!(d.coeff(&mip), o.one());
        assert_eq!(d.coeff(&Point::Infinity), o.elem(-1, -1));
        assert_eq!(d.coeff(&p), o.tau());
        assert_eq!(d.support().count(), 3);
        assert!(d.degree().is_zero());
        assert_eq!(
            d.canonical_form(&cm).unwrap(),
            CanonicalPair { p0: mip, p1: p }
        );
        assert!(eta(&cm, Point::Infinity).is_zero());
    }

    #[test]
    fn arithmetic_and_degree() {
        let cm = e401();
        let o = cm.order();
        let p = cm.curve().point(204, 283).unwrap();
        let d = RDivisor::point_class(o, p);
        let t = d.scale(o.tau());
        assert_eq!(t.coeff(&p), o.tau());
        assert_eq!(t.coeff(&Point::Infinity), -o.tau());
        assert!(d.try_add(&d.scale(-o.one())).unwrap().is_zero());
        assert_eq!(RDivisor::term(p, o.one()).degree(), o.one());
        assert_eq!(
            d.scale(o.int(3)).canonical_form(&cm).unwrap(),
            CanonicalPair {
                p0: cm.curve().mul(p, 3),
                p1: Point::Infinity
            }
        );
        assert!(matches!(
            RDivisor::term(p, o.one()).canonical_form(&cm),
            Err(DivisorError::NonzeroDegree(_))
        ));
    }

    #[test]
    fn translation_and_disjointness() {
        let cm = e401();
        let o = cm.order();
        let e = cm.curve();
        let p = e.point(204, 283).unwrap();
        let q = e.point(56, 137).unwrap();
        let s = e.point(0, 0).unwrap();
        let d = RDivisor::point_class(o, q);
        assert_eq!(d.translate(e, Point::Infinity), d);
        let moved = d.translate(e, s);
        assert_eq!(
            moved.canonical_form(&cm).unwrap(),
            CanonicalPair {
                p0: q,
                p1: Point::Infinity
            }
        );
        let ms = cm.act(-o.tau(), s);
        let dq1 = RDivisor::point_class(o, cm.act(-o.tau(), q)).translate(e, ms);
        assert_eq!(dq1.coeff(&e.add(cm.act(-o.tau(), q), ms)), o.one());
        assert_eq!(dq1.coeff(&ms), -o.one());

        let dp = RDivisor::point_class(o, p);
        let mut dqs = RDivisor::term(q, o.one());
        dqs.add_term(s, -o.one());
        assert!(dp.supports_disjoint(&dqs));
        assert!(!dp.supports_disjoint(&RDivisor::point_class(o, q)));
    }

    #[test]
    fn eta_is_injective() {
        let cm = e401();
        let mut seen = std::collections::HashSet::new();
        for &p in cm.curve().points().unwrap() {
            assert!(seen.insert(eta(&cm, p).canonical_form(&cm).unwrap()));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn twisting(i in 0usize..400, a in (-12i64..12, -12i64..12)) {
                let cm = e401();
                let o = cm.order();
                let p = cm.curve().points().unwrap()[i];
                let a = o.elem(a.0, a.1);
                let lhs = eta(&cm, cm.act(a, p)).canonical_form(&cm).unwrap();
                let rhs = eta(&cm, p).scale(a.conj()).canonical_form(&cm).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn principal_lines_vanish(i in 0usize..400, j in 0usize..400, k in 0usize..400, b in (-5i64..5, -5i64..5)) {
                let cm = e401();
                let o = cm.order();
                let e = cm.curve();
                let pts = e.points().unwrap();
                let (t, u) = (pts[i], pts[j]);
                let mut line = ZDivisor::new();
                line.add_term(t, 1);
                line.add_term(u, 1);
                line.add_term(e.neg(e.add(t, u)), 1);
                line.add_term(Point::Infinity, -3);
                let base = eta(&cm, pts[k]);
                let b = o.elem(b.0, b.1);
                let with_line = base.try_add(&RDivisor::from_z(o, &line).scale(b)).unwrap();
                prop_assert_eq!(with_line.canonical_form(&cm).unwrap(), base.canonical_form(&cm).unwrap());
            }

            #[test]
            fn degree_is_linear(i in 0usize..400, j in 0usize..400, c in (-9i64..9, -9i64..9), b in (-9i64..9, -9i64..9)) {
                let cm = e401();
                let o = cm.order();
                let pts = cm.curve().points().unwrap();
                let mut d = RDivisor::term(pts[i], o.elem(c.0, c.1));
                d.add_term(pts[j], o.elem(b.1, b.0));
                let beta = o.elem(b.0, b.1);
                prop_assert_eq!(d.scale(beta).degree(), beta * d.degree());
                let pair = eta(&cm, pts[i]).canonical_form(&cm).unwrap();
                prop_assert_eq!(pair.to_divisor(o).canonical_form(&cm).unwrap(), pair);
            }
        }
    }
}
