//! Short Weierstrass curves over prime fields and their CM endomorphisms.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, Fp, PrimeField};
use crate::quad::{QuadError, QuadInt, QuadOrder};

/// Largest field size for which the rational points are enumerated.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// How many points the endomorphism checks sample.
const ENDO_SPOT_CHECKS: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve y^2 = x^3 + {a}x + {b} is singular")]
    Singular { a: u64, b: u64 },
    #[error("({x}, {y}) is not on the curve")]
    OffCurve { x: u64, y: u64 },
    #[error("enumerating E(F_{0}) is beyond desk scale")]
    ScaleExceeded(u64),
    #[error("endomorphism is defined for a different order")]
    OrderMismatch,
    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// A point of `E(F_q)`; `Infinity` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Infinity,
    Affine { x: Fp, y: Fp },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(Fp, Fp)> {
        match *self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn x(&self) -> Option<Fp> {
        self.coords().map(|c| c.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

/// `y^2 = x^3 + a x + b` over `F_q`.
#[derive(Clone, Debug)]
pub struct Curve {
    field: PrimeField,
    a: Fp,
    b: Fp,
    points: Arc<OnceLock<Vec<Point>>>,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.a == other.a && self.b == other.b
    }
}

impl Eq for Curve {}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + {}x + {} over {}",
            self.a, self.b, self.field
        )
    }
}

impl Curve {
    pub fn new(field: PrimeField, a: i64, b: i64) -> Result<Self, CurveError> {
        let (a, b) = (field.elem(a), field.elem(b));
        let disc = field.elem(4) * a * a * a + field.elem(27) * b * b;
        if disc.is_zero() {
            return Err(CurveError::Singular {
                a: a.value(),
                b: b.value(),
            });
        }
        Ok(Self {
            field,
            a,
            b,
            points: Arc::new(OnceLock::new()),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn a(&self) -> Fp {
        self.a
    }

    pub fn b(&self) -> Fp {
        self.b
    }

    fn rhs(&self, x: Fp) -> Fp {
        x * x * x + self.a * x + self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                x.field() == self.field && y.field() == self.field && y * y == self.rhs(x)
            }
        }
    }

    /// The affine point `(x, y)`, checked against the curve equation.
    pub fn point(&self, x: i64, y: i64) -> Result<Point, CurveError> {
        let p = Point::Affine {
            x: self.field.elem(x),
            y: self.field.elem(y),
        };
        if self.contains(&p) {
            Ok(p)
        } else {
            let (x, y) = p.coords().unwrap();
            Err(CurveError::OffCurve {
                x: x.value(),
                y: y.value(),
            })
        }
    }

    pub fn neg(&self, p: Point) -> Point {
        match p {
            Point::Infinity => p,
            Point::Affine { x, y } => Point::Affine { x, y: -y },
        }
    }

    /// Slope of the chord or tangent through `p` and `q`, `None` if vertical.
    pub fn slope(&self, p: Point, q: Point) -> Option<Fp> {
        let ((x1, y1), (x2, y2)) = (p.coords()?, q.coords()?);
        if x1 != x2 {
            return Some((y2 - y1) * (x2 - x1).inv().ok()?);
        }
        if y1 != y2 || y1.is_zero() {
            return None;
        }
        let f = self.field;
        Some((f.elem(3) * x1 * x1 + self.a) * (f.elem(2) * y1).inv().ok()?)
    }

    pub fn add(&self, p: Point, q: Point) -> Point {
        let ((x1, y1), (x2, _)) = match (p.coords(), q.coords()) {
            (None, _) => return q,
            (_, None) => return p,
            (Some(a), Some(b)) => (a, b),
        };
        match self.slope(p, q) {
            None => Point::Infinity,
            Some(l) => {
                let x3 = l * l - x1 - x2;
                let y3 = l * (x1 - x3) - y1;
                Point::Affine { x: x3, y: y3 }
            }
        }
    }

    pub fn sub(&self, p: Point, q: Point) -> Point {
        self.add(p, self.neg(q))
    }

    pub fn double(&self, p: Point) -> Point {
        self.add(p, p)
    }

    /// `[k]P` for any signed `k`.
    pub fn mul(&self, p: Point, k: i64) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { p };
        let mut k = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.double(base);
            k >>= 1;
        }
        acc
    }

    /// Every rational point, sorted, starting with `O`. Cached per curve.
    pub fn points(&self) -> Result<&[Point], CurveError> {
        let q = self.field.modulus();
        if q > ENUMERATION_LIMIT {
            return Err(CurveError::ScaleExceeded(q));
        }
        Ok(self.points.get_or_init(|| {
            let mut out = vec![Point::Infinity];
            for xv in 0..q {
                let x = self.field.from_u64(xv);
                if let Some(y) = self.rhs(x).sqrt() {
                    out.push(Point::Affine { x, y });
                    if !y.is_zero() {
                        out.push(Point::Affine { x, y: -y });
                    }
                }
            }
            out.sort();
            out
        }))
    }

    pub fn order(&self) -> Result<u64, CurveError> {
        Ok(self.points()?.len() as u64)
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point, CurveError> {
        let pts = self.points()?;
        Ok(pts[rng.gen_range(0..pts.len())])
    }
}

/// The concrete map realizing `[tau]`.
#[derive(Clone, Debug)]
pub enum CmMap {
    /// `y^2 = x^3 + ax`, `(x, y) -> (-x, i y)` with `i^2 = -1`.
    J1728 { i: Fp },
    /// `y^2 = x^3 + b`, `(x, y) -> (zeta x, y)` with `zeta` a primitive cube root of unity.
    J0 { zeta: Fp },
    /// An explicit table on `E(F_q)`.
    Table(Arc<HashMap<Point, Point>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    BuiltinJ1728,
    BuiltinJ0,
    UserSupplied,
}

#[derive(Clone, Debug)]
pub struct CmEndo {
    order: QuadOrder,
    map: CmMap,
}

impl CmEndo {
    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn map(&self) -> &CmMap {
        &self.map
    }

    pub fn provenance(&self) -> Provenance {
        match self.map {
            CmMap::J1728 { .. } => Provenance::BuiltinJ1728,
            CmMap::J0 { .. } => Provenance::BuiltinJ0,
            CmMap::Table(_) => Provenance::UserSupplied,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        match (&self.map, p) {
            (_, Point::Infinity) => Point::Infinity,
            (CmMap::J1728 { i }, Point::Affine { x, y }) => Point::Affine { x: -x, y: *i * y },
            (CmMap::J0 { zeta }, Point::Affine { x, y }) => Point::Affine { x: *zeta * x, y },
            (CmMap::Table(t), p) => *t.get(&p).expect("table covers E(F_q)"),
        }
    }
}

/// A curve together with a fixed embedding `R -> End(E)`.
#[derive(Clone, Debug)]
pub struct CmCurve {
    curve: Curve,
    endo: CmEndo,
}

impl CmCurve {
    /// `y^2 = x^3 + ax` with `[i]` given by the chosen square root of `-1`.
    pub fn j1728(field: PrimeField, a: i64, i: i64) -> Result<Self, CurveError> {
        let curve = Curve::new(field, a, 0)?;
        let i = field.elem(i);
        if i * i != -field.one() {
            return Err(CurveError::InvalidEndomorphism(format!("{i}^2 != -1")));
        }
        Self::new(
            curve,
            CmEndo {
                order: QuadOrder::gaussian(),
                map: CmMap::J1728 { i },
            },
        )
    }

    /// `y^2 = x^3 + b` with `[zeta]` given by the chosen primitive cube root of unity.
    pub fn j0(field: PrimeField, b: i64, zeta: i64) -> Result<Self, CurveError> {
        let curve = Curve::new(field, 0, b)?;
        let z = field.elem(zeta);
        if z.is_one() || !z.pow_u64(3).is_one() {
            return Err(CurveError::InvalidEndomorphism(format!(
                "{z} is not a primitive cube root of unity"
            )));
        }
        Self::new(
            curve,
            CmEndo {
                order: QuadOrder::eisenstein(),
                map: CmMap::J0 { zeta: z },
            },
        )
    }

    /// A user-declared `[tau]` given pointwise on all of `E(F_q)`.
    pub fn from_table(
        curve: Curve,
        order: QuadOrder,
        table: HashMap<Point, Point>,
    ) -> Result<Self, CurveError> {
        for p in curve.points()? {
            match table.get(p) {
                Some(img) if curve.contains(img) => {}
                Some(_) => {
                    return Err(CurveError::InvalidEndomorphism(format!(
                        "image of {p} is off the curve"
                    )))
                }
                None => return Err(CurveError::InvalidEndomorphism(format!("no image for {p}"))),
            }
        }
        Self::new(
            curve,
            CmEndo {
                order,
                map: CmMap::Table(Arc::new(table)),
            },
        )
    }

    fn new(curve: Curve, endo: CmEndo) -> Result<Self, CurveError> {
        let cm = Self { curve, endo };
        cm.validate()?;
        Ok(cm)
    }

    /// Spot-checks that `[tau]` is a homomorphism satisfying its minimal polynomial.
    fn validate(&self) -> Result<(), CurveError> {
        let pts = self.curve.points()?;
        let step = (pts.len() / ENDO_SPOT_CHECKS).max(1);
        let sample: Vec<Point> = pts.iter().step_by(step).copied().collect();
        let t = self.endo.order.trace_tau();
        let n = self.endo.order.norm_tau();
        for (k, &p) in sample.iter().enumerate() {
            let tp = self.tau(p);
            if !self.curve.contains(&tp) {
                return Err(CurveError::InvalidEndomorphism(format!(
                    "[tau]{p} is off the curve"
                )));
            }
            let ttp = self.tau(tp);
            let lhs = self.curve.add(
                self.curve.sub(ttp, self.curve.mul(tp, t)),
                self.curve.mul(p, n),
            );
            if !lhs.is_infinity() {
                return Err(CurveError::InvalidEndomorphism(format!(
                    "minimal polynomial fails at {p}"
                )));
            }
            let q = sample[(k * 7 + 3) % sample.len()];
            let sum = self.tau(self.curve.add(p, q));
            if sum != self.curve.add(tp, self.tau(q)) {
                return Err(CurveError::InvalidEndomorphism(format!(
                    "[tau] is not additive at {p}, {q}"
                )));
            }
        }
        Ok(())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn endo(&self) -> &CmEndo {
        &self.endo
    }

    pub fn order(&self) -> QuadOrder {
        self.endo.order
    }

    pub fn tau(&self, p: Point) -> Point {
        self.endo.apply(p)
    }

    /// `[x]P + [y]([tau]P)` for `b = x + y tau`.
    pub fn apply_r(&self, b: QuadInt, p: Point) -> Result<Point, CurveError> {
        if b.order() != self.endo.order {
            return Err(CurveError::OrderMismatch);
        }
        Ok(self.act(b, p))
    }

    /// Unchecked `[b]P`; the order must match.
    pub(crate) fn act(&self, b: QuadInt, p: Point) -> Point {
        let e = &self.curve;
        let xp = e.mul(p, b.x);
        if b.y == 0 {
            return xp;
        }
        e.add(xp, e.mul(self.tau(p), b.y))
    }

    /// `E[b](F_q)`, sorted.
    pub fn kernel_of(&self, b: QuadInt) -> Result<Vec<Point>, CurveError> {
        if b.order() != self.endo.order {
            return Err(CurveError::OrderMismatch);
        }
        Ok(self
            .curve
            .points()?
            .iter()
            .copied()
            .filter(|&p| self.act(b, p).is_infinity())
            .collect())
    }

    /// `[b]E(F_q)`, sorted.
    pub fn image_of(&self, b: QuadInt) -> Result<Vec<Point>, CurveError> {
        if b.order() != self.endo.order {
            return Err(CurveError::OrderMismatch);
        }
        let set: BTreeSet<Point> = self
            .curve
            .points()?
            .iter()
            .map(|&p| self.act(b, p))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// A transversal of `E(F_q)/[b]E(F_q)`, each the least point of its coset.
    pub fn coset_reps_mod(&self, b: QuadInt) -> Result<Vec<Point>, CurveError> {
        let image = self.image_of(b)?;
        let mut seen: HashSet<Point> = HashSet::new();
        let mut reps = Vec::new();
        for &p in self.curve.points()? {
            if seen.contains(&p) {
                continue;
            }
            reps.push(p);
            seen.extend(image.iter().map(|&h| self.curve.add(p, h)));
        }
        Ok(reps)
    }
}
