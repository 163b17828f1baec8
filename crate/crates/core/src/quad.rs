//! Imaginary quadratic orders `R = Z[tau]` and their finite quotients `R/aR`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Above this norm, inverses are found algebraically rather than by search.
const EXHAUSTIVE_INVERSE_BOUND: i64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("tau^2 - {trace}*tau + {norm} does not define an imaginary quadratic order")]
    NotImaginary { trace: i64, norm: i64 },
    #[error("elements belong to different orders")]
    OrderMismatch,
    #[error("the zero ideal has no finite residue ring")]
    ZeroModulus,
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
}

/// The order generated by a root `tau` of `X^2 - t X + n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadOrder {
    trace: i64,
    norm: i64,
}

impl QuadOrder {
    pub fn new(trace: i64, norm: i64) -> Result<Self, QuadError> {
        if trace * trace - 4 * norm >= 0 {
            return Err(QuadError::NotImaginary { trace, norm });
        }
        Ok(Self { trace, norm })
    }

    /// `Z[i]`, with `i^2 = -1`.
    pub fn gaussian() -> Self {
        Self { trace: 0, norm: 1 }
    }

    /// `Z[zeta_3]`, with `zeta^2 + zeta + 1 = 0`.
    pub fn eisenstein() -> Self {
        Self { trace: -1, norm: 1 }
    }

    pub fn trace_tau(&self) -> i64 {
        self.trace
    }

    pub fn norm_tau(&self) -> i64 {
        self.norm
    }

    pub fn discriminant(&self) -> i64 {
        self.trace * self.trace - 4 * self.norm
    }

    pub fn elem(&self, x: i64, y: i64) -> QuadInt {
        QuadInt { x, y, order: *self }
    }

    pub fn int(&self, x: i64) -> QuadInt {
        self.elem(x, 0)
    }

    pub fn zero(&self) -> QuadInt {
        self.elem(0, 0)
    }

    pub fn one(&self) -> QuadInt {
        self.elem(1, 0)
    }

    pub fn tau(&self) -> QuadInt {
        self.elem(0, 1)
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[tau], tau^2 = {}*tau - {}", self.trace, self.norm)
    }
}

/// The element `x + y*tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadInt {
    pub x: i64,
    pub y: i64,
    order: QuadOrder,
}

/// Matrix of multiplication by an element on the basis `{1, tau}`:
/// `b*1 = a + c*tau` and `b*tau = b + d*tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ActionMatrix {
    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    /// Image of the coordinate vector `(u, v)`, i.e. of `u + v*tau`.
    pub fn apply(&self, (u, v): (i64, i64)) -> (i64, i64) {
        (self.a * u + self.b * v, self.c * u + self.d * v)
    }
}

impl QuadInt {
    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn coords(&self) -> (i64, i64) {
        (self.x, self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_one(&self) -> bool {
        self.x == 1 && self.y == 0
    }

    /// `Some(x)` when the element is the rational integer `x`.
    pub fn as_int(&self) -> Option<i64> {
        (self.y == 0).then_some(self.x)
    }

    fn check(&self, other: &QuadInt) -> Result<(), QuadError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(QuadError::OrderMismatch)
        }
    }

    pub fn try_add(self, o: QuadInt) -> Result<QuadInt, QuadError> {
        self.check(&o)?;
        Ok(self.order.elem(self.x + o.x, self.y + o.y))
    }

    pub fn try_sub(self, o: QuadInt) -> Result<QuadInt, QuadError> {
        self.check(&o)?;
        Ok(self.order.elem(self.x - o.x, self.y - o.y))
    }

    pub fn try_mul(self, o: QuadInt) -> Result<QuadInt, QuadError> {
        self.check(&o)?;
        let t = self.order.trace;
        let n = self.order.norm;
        // (x + y tau)(u + v tau) with tau^2 = t tau - n
        let yv = self.y * o.y;
        Ok(self
            .order
            .elem(self.x * o.x - n * yv, self.x * o.y + self.y * o.x + t * yv))
    }

    pub fn scale(self, k: i64) -> QuadInt {
        self.order.elem(self.x * k, self.y * k)
    }

    pub fn conj(&self) -> QuadInt {
        self.order.elem(self.x + self.order.trace * self.y, -self.y)
    }

    pub fn norm(&self) -> i64 {
        let (x, y) = (self.x as i128, self.y as i128);
        let (t, n) = (self.order.trace as i128, self.order.norm as i128);
        (x * x + t * x * y + n * y * y) as i64
    }

    pub fn trace(&self) -> i64 {
        2 * self.x + self.order.trace * self.y
    }

    pub fn action_matrix(&self) -> ActionMatrix {
        ActionMatrix {
            a: self.x,
            b: -self.y * self.order.norm,
            c: self.y,
            d: self.x + self.y * self.order.trace,
        }
    }

    pub fn pow(self, mut e: u32) -> QuadInt {
        let mut acc = self.order.one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, 1) => write!(f, "tau"),
            (0, -1) => write!(f, "-tau"),
            (0, y) => write!(f, "{y}*tau"),
            (x, 1) => write!(f, "{x}+tau"),
            (x, -1) => write!(f, "{x}-tau"),
            (x, y) if y < 0 => write!(f, "{x}-{}*tau", -y),
            (x, y) => write!(f, "{x}+{y}*tau"),
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        self.try_add(rhs).expect("order mismatch")
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        self.try_sub(rhs).expect("order mismatch")
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        self.try_mul(rhs).expect("order mismatch")
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.order.elem(-self.x, -self.y)
    }
}

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A full-rank sublattice of `Z^2` in Hermite normal form, with basis
/// `(h11, 0)` and `(h12, h22)`, where `h11, h22 > 0` and `0 <= h12 < h11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice2 {
    pub h11: i64,
    pub h12: i64,
    pub h22: i64,
}

impl Lattice2 {
    /// The lattice spanned by `gens`, or `None` if it has rank below two.
    pub fn from_generators(gens: &[(i64, i64)]) -> Option<Self> {
        let mut pivot: Option<(i128, i128)> = None;
        let mut g: i128 = 0;
        for &(x, y) in gens {
            let (x, y) = (x as i128, y as i128);
            if y == 0 {
                g = ext_gcd(g, x).0;
                continue;
            }
            match pivot {
                None => pivot = Some((x, y)),
                Some((px, py)) => {
                    let (d, s, t) = ext_gcd(py, y);
                    pivot = Some((s * px + t * x, d));
                    let left = (y / d) * px - (py / d) * x;
                    g = ext_gcd(g, left).0;
                }
            }
        }
        let (mut px, mut py) = pivot?;
        if g == 0 {
            return None;
        }
        if py < 0 {
            px = -px;
            py = -py;
        }
        Some(Self {
            h11: g as i64,
            h12: px.rem_euclid(g) as i64,
            h22: py as i64,
        })
    }

    /// Index of the lattice in `Z^2`.
    pub fn index(&self) -> i64 {
        self.h11 * self.h22
    }

    /// The unique representative of `v` in the box `[0, h11) x [0, h22)`.
    pub fn reduce(&self, (x, y): (i64, i64)) -> (i64, i64) {
        let (x, y) = (x as i128, y as i128);
        let k = y.div_euclid(self.h22 as i128);
        let x = x - k * self.h12 as i128;
        let y = y - k * self.h22 as i128;
        ((x.rem_euclid(self.h11 as i128)) as i64, y as i64)
    }

    pub fn contains(&self, v: (i64, i64)) -> bool {
        self.reduce(v) == (0, 0)
    }
}

/// The finite ring `R/aR` for a nonzero `a`, with canonical representatives
/// read off the Hermite normal form of `aR` in the basis `{1, tau}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueRing {
    modulus: QuadInt,
    lattice: Lattice2,
}

impl ResidueRing {
    pub fn new(alpha: QuadInt) -> Result<Self, QuadError> {
        if alpha.is_zero() {
            return Err(QuadError::ZeroModulus);
        }
        let m = alpha.action_matrix();
        let lattice = Lattice2::from_generators(&[(m.a, m.c), (m.b, m.d)])
            .expect("nonzero elements of a domain generate full-rank ideals");
        Ok(Self {
            modulus: alpha,
            lattice,
        })
    }

    pub fn modulus(&self) -> QuadInt {
        self.modulus
    }

    pub fn order(&self) -> QuadOrder {
        self.modulus.order()
    }

    pub fn lattice(&self) -> Lattice2 {
        self.lattice
    }

    /// `N(a)`, the number of residue classes.
    pub fn size(&self) -> i64 {
        self.lattice.index()
    }

    /// The positive generator of `aR ∩ Z`.
    pub fn int_modulus(&self) -> i64 {
        self.lattice.h11
    }

    /// Whether `R/aR` is cyclic as an additive group.
    pub fn is_cyclic(&self) -> bool {
        self.lattice.h22 == 1
    }

    /// Canonical representatives, ordered by `tau`-coordinate then constant.
    pub fn representatives(&self) -> Vec<QuadInt> {
        let o = self.order();
        let mut out = Vec::with_capacity(self.size() as usize);
        for y in 0..self.lattice.h22 {
            for x in 0..self.lattice.h11 {
                out.push(o.elem(x, y));
            }
        }
        out
    }

    pub fn reduce(&self, b: QuadInt) -> QuadInt {
        let (x, y) = self.lattice.reduce(b.coords());
        self.order().elem(x, y)
    }

    pub fn is_zero(&self, b: QuadInt) -> bool {
        self.lattice.contains(b.coords())
    }

    pub fn congruent(&self, b: QuadInt, c: QuadInt) -> bool {
        self.is_zero(b - c)
    }

    /// The canonical `g` with `g*b = 1` in `R/aR`.
    pub fn inverse(&self, b: QuadInt) -> Result<QuadInt, QuadError> {
        if b.order() != self.order() {
            return Err(QuadError::OrderMismatch);
        }
        let fail = || QuadError::NotInvertible {
            value: b.to_string(),
            modulus: self.modulus.to_string(),
        };
        let one = self.order().one();
        if self.size() <= EXHAUSTIVE_INVERSE_BOUND {
            return self
                .representatives()
                .into_iter()
                .find(|&g| self.congruent(g * b, one))
                .ok_or_else(fail);
        }
        let n = self.int_modulus() as i128;
        if self.is_cyclic() {
            // tau = -h12 in the cyclic quotient Z/h11
            let r = (-(self.lattice.h12 as i128)).rem_euclid(n);
            let v = (b.x as i128 + b.y as i128 * r).rem_euclid(n);
            let (g, s, _) = ext_gcd(v, n);
            if g != 1 {
                return Err(fail());
            }
            return Ok(self.reduce(self.order().int(s.rem_euclid(n) as i64)));
        }
        // b^-1 = conj(b) / N(b) when N(b) is a unit
        let (g, s, _) = ext_gcd(b.norm() as i128 % n, n);
        if g != 1 {
            return Err(fail());
        }
        let inv_norm = s.rem_euclid(n) as i64;
        Ok(self.reduce(b.conj().scale(inv_norm)))
    }
}

impl fmt::Display for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R/({})R", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi() -> QuadOrder {
        QuadOrder::gaussian()
    }

    #[test]
    fn basic_arithmetic() {
        let o = zi();
        let a = o.elem(1, -2);
        assert_eq!(a.conj(), o.elem(1, 2));
        assert_eq!(a.norm(), 5);
        assert_eq!(a.trace(), 2);
        assert_eq!(o.tau() - o.tau().conj(), o.elem(0, 2));
        assert_eq!(o.tau() * o.tau(), o.int(-1));
        let e = QuadOrder::eisenstein();
        assert_eq!(e.tau() * e.tau() + e.tau() + e.one(), e.zero());
        assert_eq!(e.elem(3, 1).norm(), 7);
        assert_eq!(e.elem(3, 1).conj(), e.elem(2, -1));
    }

    #[test]
    fn construction_and_mismatch() {
        assert!(QuadOrder::new(2, 1).is_err());
        assert!(QuadOrder::new(0, -2).is_err());
        assert_eq!(QuadOrder::new(1, 2).unwrap().discriminant(), -7);
        let a = zi().one();
        let b = QuadOrder::eisenstein().one();
        assert_eq!(a.try_mul(b), Err(QuadError::OrderMismatch));
    }

    #[test]
    fn action_matrices() {
        let o = zi();
        assert_eq!(
            o.elem(1, -2).action_matrix(),
            ActionMatrix {
                a: 1,
                b: 2,
                c: -2,
                d: 1
            }
        );
        assert_eq!(
            o.one().action_matrix(),
            ActionMatrix {
                a: 1,
                b: 0,
                c: 0,
                d: 1
            }
        );
        assert_eq!(
            o.tau().action_matrix(),
            ActionMatrix {
                a: 0,
                b: -1,
                c: 1,
                d: 0
            }
        );
    }

    #[test]
    fn residue_rings() {
        let o = zi();
        let r = ResidueRing::new(o.elem(1, -2)).unwrap();
        assert_eq!(
            r.representatives(),
            (0..5).map(|k| o.int(k)).collect::<Vec<_>>()
        );
        assert_eq!(
            ResidueRing::new(o.one()).unwrap().representatives(),
            vec![o.zero()]
        );
        let r2 = ResidueRing::new(o.int(2)).unwrap();
        assert_eq!(
            r2.representatives(),
            vec![o.int(0), o.int(1), o.tau(), o.elem(1, 1)]
        );
        assert_eq!(ResidueRing::new(o.zero()), Err(QuadError::ZeroModulus));
    }

    #[test]
    fn reductions() {
        let o = zi();
        let r = ResidueRing::new(o.elem(1, -2)).unwrap();
        assert_eq!(r.reduce(o.elem(158, 248)), o.int(2));
        assert_eq!(r.reduce(o.elem(3, 3)), o.int(2));
        assert_eq!(r.reduce(o.elem(4, 1)), o.int(2));
        assert_eq!(r.reduce(o.elem(134, 106)), o.int(2));
        assert_eq!(r.reduce(o.zero()), o.zero());
        assert_eq!(r.reduce(o.elem(2, -1)), o.int(4));
        assert_eq!(r.reduce(o.elem(6, -3)), o.int(2));
    }

    #[test]
    fn inverses() {
        let o = zi();
        let r = ResidueRing::new(o.elem(1, -2)).unwrap();
        assert_eq!(r.inverse(o.elem(1, 2)).unwrap(), o.int(3));
        assert_eq!(r.inverse(o.one()).unwrap(), o.one());
        assert_eq!(r.inverse(o.int(2)).unwrap(), o.int(3));
        assert!(matches!(
            r.inverse(o.int(5)),
            Err(QuadError::NotInvertible { .. })
        ));
        let r2 = ResidueRing::new(o.int(2)).unwrap();
        assert!(r2.inverse(o.elem(1, 1)).is_err());
        assert_eq!(r2.inverse(o.tau()).unwrap(), o.tau());
    }

    #[test]
    fn large_modulus_inverses_match_search() {
        let o = zi();
        // N(100 + 3i) = 10009
        let cyclic = ResidueRing::new(o.elem(100, 3)).unwrap();
        assert!(cyclic.size() > EXHAUSTIVE_INVERSE_BOUND && cyclic.is_cyclic());
        let b = o.elem(7, -11);
        let g = cyclic.inverse(b).unwrap();
        assert!(cyclic.congruent(g * b, o.one()));
        let noncyclic = ResidueRing::new(o.int(101)).unwrap();
        assert!(!noncyclic.is_cyclic());
        let g = noncyclic.inverse(b).unwrap();
        assert!(noncyclic.congruent(g * b, o.one()));
        assert_eq!(noncyclic.reduce(g), g);
    }

    #[test]
    fn hnf_of_generic_lattices() {
        let l = Lattice2::from_generators(&[(1, -2), (2, 1), (400, 0), (0, 400)]).unwrap();
        assert_eq!(l.index(), 5);
        assert!(l.contains((1, 3)));
        assert!(!l.contains((3, -2)));
        assert!(l.contains((158 - 2, 248)));
        assert!(Lattice2::from_generators(&[(1, 2), (2, 4)]).is_none());
        assert!(Lattice2::from_generators(&[(3, 0), (6, 0)]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn order() -> impl Strategy<Value = QuadOrder> {
            prop_oneof![
                Just(QuadOrder::gaussian()),
                Just(QuadOrder::eisenstein()),
                Just(QuadOrder::new(1, 2).unwrap()),
                Just(QuadOrder::new(0, 5).unwrap()),
            ]
        }

        fn elems(o: QuadOrder, n: usize) -> impl Strategy<Value = Vec<QuadInt>> {
            proptest::collection::vec((-60i64..60, -60i64..60), n)
                .prop_map(move |v| v.into_iter().map(|(x, y)| o.elem(x, y)).collect())
        }

        fn order_and(n: usize) -> impl Strategy<Value = (QuadOrder, Vec<QuadInt>)> {
            order().prop_flat_map(move |o| (Just(o), elems(o, n)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn matrix_realizes_multiplication((_o, v) in order_and(2)) {
                let (b, g) = (v[0], v[1]);
                let m = b.action_matrix();
                prop_assert_eq!(m.apply(g.coords()), (b * g).coords());
                prop_assert_eq!(m.det(), b.norm());
                prop_assert_eq!(m.trace(), b.trace());
            }

            #[test]
            fn conjugation_is_an_involutive_homomorphism((_o, v) in order_and(2)) {
                let (b, g) = (v[0], v[1]);
                prop_assert_eq!((b * g).conj(), b.conj() * g.conj());
                prop_assert_eq!((b + g).conj(), b.conj() + g.conj());
                prop_assert_eq!(b.conj().conj(), b);
                prop_assert_eq!(b * b.conj(), b.order().int(b.norm()));
                prop_assert!(b.norm() >= 0);
                prop_assert_eq!(b.norm() == 0, b.is_zero());
            }

            #[test]
            fn reduction_is_canonical((_o, v) in order_and(3)) {
                let (a, b, g) = (v[0], v[1], v[2]);
                prop_assume!(!a.is_zero());
                let r = ResidueRing::new(a).unwrap();
                let red = r.reduce(b);
                prop_assert_eq!(r.reduce(red), red);
                prop_assert_eq!(r.reduce(b + a * g), red);
                prop_assert!(r.representatives().contains(&red));
                prop_assert_eq!(r.size(), a.norm());
            }

            #[test]
            fn inverses_invert((_o, v) in order_and(2), ax in -25i64..25, ay in -25i64..25) {
                let b = v[0];
                let a = b.order().elem(ax, ay);
                prop_assume!(!a.is_zero());
                let r = ResidueRing::new(a).unwrap();
                if let Ok(g) = r.inverse(b) {
                    prop_assert!(r.congruent(g * b, a.order().one()));
                    prop_assert_eq!(r.reduce(g), g);
                } else {
                    prop_assert!(r.representatives().iter().all(|&g| !r.congruent(g * b, a.order().one())));
                }
            }
        }
    }
}
