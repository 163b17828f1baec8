//! Evaluation of lines, Miller functions and the two-point functions built from
//! them. Functions are never stored symbolically; only their values at
//! divisors are computed.
//!
//! Lines are normalized with `Y`-coefficient one, `Y - y_T - l(X - x_T)`, and
//! verticals as `X - x_T`. With these choices every function below is a fixed
//! rational function, so point values are well defined as well as values at
//! degree-zero divisors.

use thiserror::Error;

use crate::curve::{CmCurve, Curve, Point};
use crate::divisor::{RDivisor, ZDivisor};
use crate::field::Fp;
use crate::gm::GmElement;
use crate::quad::{QuadInt, QuadOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MillerError {
    #[error("function has a zero or pole at an evaluation point")]
    ZeroEvaluation,
    #[error("evaluation divisor contains the point at infinity")]
    SupportCollision,
    #[error("divisor {0} is not principal")]
    NonPrincipalDivisor(String),
    #[error("evaluation divisor has nonzero degree")]
    NonzeroDegree,
}

/// Value of the line through `t` and `u` (tangent if equal, vertical if
/// opposite) at the affine point `at`.
pub fn eval_line(e: &Curve, t: Point, u: Point, at: Point) -> Result<Fp, MillerError> {
    let (x, y) = at.coords().ok_or(MillerError::SupportCollision)?;
    let v = line_value(e, t, u, x, y);
    if v.is_zero() {
        Err(MillerError::ZeroEvaluation)
    } else {
        Ok(v)
    }
}

fn line_value(e: &Curve, t: Point, u: Point, x: Fp, y: Fp) -> Fp {
    let (t, u) = if t.is_infinity() { (u, t) } else { (t, u) };
    let Some((xt, yt)) = t.coords() else {
        return e.field().one();
    };
    match e.slope(t, u) {
        Some(l) => y - yt - l * (x - xt),
        None => x - xt,
    }
}

fn vertical_value(e: &Curve, r: Point, x: Fp) -> Fp {
    match r.x() {
        Some(xr) => x - xr,
        None => e.field().one(),
    }
}

/// Running value `num/den` of a product of lines at a fixed divisor.
struct Accumulator<'a> {
    curve: &'a Curve,
    terms: Vec<(Fp, Fp, i64)>,
    num: Fp,
    den: Fp,
}

impl<'a> Accumulator<'a> {
    fn new(curve: &'a Curve, d: &ZDivisor) -> Result<Self, MillerError> {
        let mut terms = Vec::new();
        for (p, c) in d.terms() {
            let (x, y) = p.coords().ok_or(MillerError::SupportCollision)?;
            terms.push((x, y, c));
        }
        let one = curve.field().one();
        Ok(Self {
            curve,
            terms,
            num: one,
            den: one,
        })
    }

    fn absorb(
        &mut self,
        values: impl Iterator<Item = (Fp, i64)>,
        invert: bool,
    ) -> Result<(), MillerError> {
        for (v, c) in values {
            if v.is_zero() {
                return Err(MillerError::ZeroEvaluation);
            }
            let p = v.pow_u64(c.unsigned_abs());
            if (c > 0) != invert {
                self.num = self.num * p;
            } else {
                self.den = self.den * p;
            }
        }
        Ok(())
    }

    fn line(&mut self, t: Point, u: Point, invert: bool) -> Result<(), MillerError> {
        if t.is_infinity() && u.is_infinity() {
            return Ok(());
        }
        let e = self.curve;
        let vals: Vec<(Fp, i64)> = self
            .terms
            .iter()
            .map(|&(x, y, c)| (line_value(e, t, u, x, y), c))
            .collect();
        self.absorb(vals.into_iter(), invert)
    }

    fn vertical(&mut self, r: Point, invert: bool) -> Result<(), MillerError> {
        if r.is_infinity() {
            return Ok(());
        }
        let e = self.curve;
        let vals: Vec<(Fp, i64)> = self
            .terms
            .iter()
            .map(|&(x, _, c)| (vertical_value(e, r, x), c))
            .collect();
        self.absorb(vals.into_iter(), invert)
    }

    fn square(&mut self) {
        self.num = self.num * self.num;
        self.den = self.den * self.den;
    }

    fn invert(&mut self) {
        std::mem::swap(&mut self.num, &mut self.den);
    }

    fn value(&self) -> Fp {
        self.num * self.den.inv().expect("denominator values are nonzero")
    }
}

/// Multiplies `acc` by `h_{P,n}` with divisor `n(P) - ([n]P) - (n-1)(O)`;
/// returns `[n]P`.
fn miller_into(acc: &mut Accumulator<'_>, p: Point, n: i64) -> Result<Point, MillerError> {
    let e = acc.curve;
    let mut inner = Accumulator {
        curve: e,
        terms: acc.terms.clone(),
        num: e.field().one(),
        den: e.field().one(),
    };
    let np = if n < 0 {
        // h_{P,-n} = (h_{P,n} V_{[n]P})^-1
        let np = miller_loop(&mut inner, p, n.unsigned_abs())?;
        inner.vertical(np, false)?;
        inner.invert();
        e.neg(np)
    } else {
        miller_loop(&mut inner, p, n as u64)?
    };
    acc.num = acc.num * inner.num;
    acc.den = acc.den * inner.den;
    Ok(np)
}

/// Double-and-add on an accumulator that starts at 1.
fn miller_loop(acc: &mut Accumulator<'_>, p: Point, n: u64) -> Result<Point, MillerError> {
    let e = acc.curve;
    if n == 0 || p.is_infinity() {
        return Ok(e.mul(p, n as i64));
    }
    let mut t = p;
    for bit in (0..(63 - n.leading_zeros())).rev() {
        acc.square();
        let t2 = e.double(t);
        acc.line(t, t, false)?;
        acc.vertical(t2, true)?;
        t = t2;
        if (n >> bit) & 1 == 1 {
            let tp = e.add(t, p);
            acc.line(t, p, false)?;
            acc.vertical(tp, true)?;
            t = tp;
        }
    }
    Ok(t)
}

fn check_degree_zero(d: &ZDivisor) -> Result<(), MillerError> {
    if d.degree() != 0 {
        return Err(MillerError::NonzeroDegree);
    }
    Ok(())
}

/// `h_{P,n}(D)` for a degree-zero integer divisor `D`; `n` may be negative.
pub fn miller_h(e: &Curve, p: Point, n: i64, d: &ZDivisor) -> Result<Fp, MillerError> {
    check_degree_zero(d)?;
    let mut acc = Accumulator::new(e, d)?;
    miller_into(&mut acc, p, n)?;
    Ok(acc.value())
}

/// `h_{P,n}` at a single affine point, under the fixed line normalization.
pub fn miller_h_at(e: &Curve, p: Point, n: i64, at: Point) -> Result<Fp, MillerError> {
    let mut acc = Accumulator::new(e, &ZDivisor::from_terms([(at, 1)]))?;
    miller_into(&mut acc, p, n)?;
    Ok(acc.value())
}

/// A function with divisor `a(P0) + b(P1) - (a+b)(O)`, valid when
/// `[a]P0 + [b]P1 = O`. It is evaluated as `h_{P0,a} h_{P1,b} V_{[b]P1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalPlan {
    pub p0: Point,
    pub p1: Point,
    pub a: i64,
    pub b: i64,
}

impl EvalPlan {
    pub fn new(e: &Curve, p0: Point, p1: Point, a: i64, b: i64) -> Result<Self, MillerError> {
        if !e.add(e.mul(p0, a), e.mul(p1, b)).is_infinity() {
            return Err(MillerError::NonPrincipalDivisor(format!(
                "{a}({p0}) + {b}({p1}) - {}(O)",
                a + b
            )));
        }
        Ok(Self { p0, p1, a, b })
    }

    pub fn divisor(&self) -> ZDivisor {
        ZDivisor::from_terms([
            (self.p0, self.a),
            (self.p1, self.b),
            (Point::Infinity, -self.a - self.b),
        ])
    }

    fn eval_into(&self, acc: &mut Accumulator<'_>) -> Result<(), MillerError> {
        miller_into(acc, self.p0, self.a)?;
        let bp = miller_into(acc, self.p1, self.b)?;
        acc.vertical(bp, false)
    }

    /// Value at a degree-zero integer divisor.
    pub fn eval(&self, e: &Curve, d: &ZDivisor) -> Result<Fp, MillerError> {
        check_degree_zero(d)?;
        let mut acc = Accumulator::new(e, d)?;
        self.eval_into(&mut acc)?;
        Ok(acc.value())
    }

    /// Value at a single affine point.
    pub fn eval_point(&self, e: &Curve, at: Point) -> Result<Fp, MillerError> {
        let mut acc = Accumulator::new(e, &ZDivisor::from_terms([(at, 1)]))?;
        self.eval_into(&mut acc)?;
        Ok(acc.value())
    }
}

/// Value of a two-point function at a degree-zero divisor.
pub fn eval_two_point(e: &Curve, plan: &EvalPlan, d: &ZDivisor) -> Result<Fp, MillerError> {
    plan.eval(e, d)
}

/// `f0^{⊗1} f1^{⊗tau}`, optionally composed with translation by `-shift`
/// (which moves its divisor by `+shift`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RFunction {
    pub f0: EvalPlan,
    pub f1: EvalPlan,
    pub shift: Point,
    order: QuadOrder,
}

impl RFunction {
    pub fn new(order: QuadOrder, f0: EvalPlan, f1: EvalPlan) -> Self {
        Self {
            f0,
            f1,
            shift: Point::Infinity,
            order,
        }
    }

    /// The function with divisor `b((P0) - (O) + tau((P1) - (O)))`, read off
    /// the action matrix of `b`.
    pub fn multiple(cm: &CmCurve, p0: Point, p1: Point, b: QuadInt) -> Result<Self, MillerError> {
        let m = b.action_matrix();
        let e = cm.curve();
        Ok(Self::new(
            cm.order(),
            EvalPlan::new(e, p0, p1, m.a, m.b)?,
            EvalPlan::new(e, p0, p1, m.c, m.d)?,
        ))
    }

    pub fn shifted(mut self, e: &Curve, by: Point) -> Self {
        self.shift = e.add(self.shift, by);
        self
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn divisor(&self, e: &Curve) -> RDivisor {
        let d0 = self.f0.divisor().translate(e, self.shift);
        let d1 = self.f1.divisor().translate(e, self.shift);
        RDivisor::from_components(self.order, &d0, &d1)
    }

    /// `f(D0 + tau D1) = f(D0) · f(D1)^{conj(tau)}`.
    pub fn eval(&self, e: &Curve, d: &RDivisor) -> Result<GmElement, MillerError> {
        if d.order() != self.order {
            return Err(MillerError::NonPrincipalDivisor("order mismatch".into()));
        }
        let moved = d.translate(e, e.neg(self.shift));
        let (d0, d1) = moved.components();
        let at0 = GmElement {
            g0: self.f0.eval(e, &d0)?,
            g1: self.f1.eval(e, &d0)?,
        };
        if d1.is_zero() {
            return Ok(at0);
        }
        let at1 = GmElement {
            g0: self.f0.eval(e, &d1)?,
            g1: self.f1.eval(e, &d1)?,
        };
        Ok(at0.mul(&at1.pow(self.order.tau().conj())))
    }
}
