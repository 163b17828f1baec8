use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{PairingContext, PairingError};
use crate::curve::Point;
use crate::divisor::{CanonicalPair, RDivisor};
use crate::miller::{MillerError, RFunction};
use crate::quad::QuadInt;

const LAW_TAG: u64 = 0x6c61_7773;

/// Parameters of a property-suite run.
#[derive(Clone, Copy, Debug)]
pub struct LawConfig {
    pub alpha: QuadInt,
    /// Auxiliary element for the coherence laws; its norm should be small and
    /// prime to `N(alpha)`.
    pub beta: QuadInt,
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<String>,
}

impl LawResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub alpha: QuadInt,
    pub beta: QuadInt,
    pub seed: u64,
    pub trials: usize,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::ok)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "laws for alpha = {}, beta = {}, seed = {}",
            self.alpha, self.beta, self.seed
        )?;
        for law in &self.laws {
            let status = if law.ok() { "pass" } else { "FAIL" };
            write!(
                f,
                "\n{status} {:<40} {}/{}",
                law.name, law.passed, law.trials
            )?;
            if let Some(c) = &law.counterexample {
                write!(f, "\n     first counterexample: {c}")?;
            }
        }
        Ok(())
    }
}

type Outcome = Result<Option<String>, PairingError>;
type Law<'a> = fn(&Suite<'a>, &mut ChaCha8Rng) -> Outcome;

/// Names of the laws, in report order.
pub const LAW_NAMES: [&str; 25] = [
    "T-hat sesquilinearity",
    "T-hat bilinearity (left)",
    "T-hat bilinearity (right)",
    "T-hat independence of S",
    "T-hat compatibility",
    "T-hat coherence (left)",
    "T-hat coherence (right)",
    "T-hat norm relation",
    "W-hat sesquilinearity",
    "W-hat bilinearity (left)",
    "W-hat bilinearity (right)",
    "W-hat skew-Hermitian",
    "W-hat torsion",
    "W-hat compatibility",
    "W-hat coherence (left)",
    "W-hat coherence (right)",
    "W-hat norm relation",
    "T_n product formula",
    "W_n product formula",
    "T_alpha twisted sesquilinearity",
    "T_alpha well-defined (right)",
    "T_alpha well-defined (left)",
    "T_N versus T_alpha",
    "T_alpha preimage oracle",
    "generalized Weil reciprocity",
];

fn laws<'a>() -> [Law<'a>; 25] {
    [
        Suite::t_sesquilinear,
        Suite::t_bilinear_left,
        Suite::t_bilinear_right,
        Suite::t_aux_independent,
        Suite::t_compatible,
        Suite::t_coherent_left,
        Suite::t_coherent_right,
        Suite::t_norm_relation,
        Suite::w_sesquilinear,
        Suite::w_bilinear_left,
        Suite::w_bilinear_right,
        Suite::w_skew_hermitian,
        Suite::w_torsion,
        Suite::w_compatible,
        Suite::w_coherent_left,
        Suite::w_coherent_right,
        Suite::w_norm_relation,
        Suite::tn_product,
        Suite::wn_product,
        Suite::t_alpha_twisted,
        Suite::t_alpha_right_class,
        Suite::t_alpha_left_class,
        Suite::tn_versus_t_alpha,
        Suite::t_alpha_preimage,
        Suite::reciprocity,
    ]
}

struct Suite<'a> {
    ctx: &'a PairingContext,
    alpha: QuadInt,
    beta: QuadInt,
    n: u64,
    points: &'a [Point],
    /// `E[conj(a)]`
    left: Vec<Point>,
    /// `E[a]`
    right: Vec<Point>,
    /// `E[N(a)]`
    norm_torsion: Vec<Point>,
    /// `E[conj(a b)]`
    left_ab: Vec<Point>,
    /// `E[a b]`
    right_ab: Vec<Point>,
    /// `E[conj(b)]`
    left_b: Vec<Point>,
}

fn pick(rng: &mut ChaCha8Rng, pts: &[Point]) -> Point {
    pts[rng.gen_range(0..pts.len())]
}

fn mismatch(what: impl fmt::Display) -> Outcome {
    Ok(Some(what.to_string()))
}

impl<'a> Suite<'a> {
    fn scalar(&self, rng: &mut ChaCha8Rng) -> QuadInt {
        self.ctx
            .order()
            .elem(rng.gen_range(-6..=6), rng.gen_range(-6..=6))
    }

    fn nonzero_scalar(&self, rng: &mut ChaCha8Rng) -> QuadInt {
        loop {
            let g = self
                .ctx
                .order()
                .elem(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if !g.is_zero() {
                return g;
            }
        }
    }

    fn act(&self, b: QuadInt, p: Point) -> Point {
        self.ctx.cm().act(b, p)
    }

    fn pair_from(&self, rng: &mut ChaCha8Rng, pts: &[Point]) -> CanonicalPair {
        CanonicalPair {
            p0: pick(rng, pts),
            p1: pick(rng, pts),
        }
    }

    fn class(&self, c: &CanonicalPair) -> RDivisor {
        c.to_divisor(self.ctx.order())
    }

    /// A class killed by `b`, built as `conj(b)` times a random `N(b)`-torsion pair.
    fn class_killed_by(&self, rng: &mut ChaCha8Rng, b: QuadInt) -> Result<RDivisor, PairingError> {
        let pool = if b == self.alpha || b == self.alpha.conj() {
            &self.norm_torsion
        } else {
            return Err(PairingError::HypothesisViolated(format!(
                "no kernel pool for {b}"
            )));
        };
        let c = self.pair_from(rng, pool);
        let killed = self
            .class(&c)
            .scale(b.conj())
            .canonical_form(self.ctx.cm())?;
        Ok(self.class(&killed))
    }

    /// A random linearly equivalent representative of the class of `c`.
    fn rerepresent(&self, rng: &mut ChaCha8Rng, c: &CanonicalPair) -> RDivisor {
        let s = pick(rng, self.points);
        self.ctx.translated_pair(c, s)
    }

    fn t_sesquilinear(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, self.points));
        let (g, d) = (self.scalar(rng), self.scalar(rng));
        let lhs = self.ctx.t_hat(self.act(g, p), self.act(d, q), self.alpha)?;
        let rhs = self
            .ctx
            .pow_value(&self.ctx.t_hat(p, q, self.alpha)?, g.conj() * d)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!(
            "P={p} Q={q} gamma={g} delta={d}: {lhs} vs {rhs}"
        ))
    }

    fn t_bilinear_left(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, p2, q) = (
            pick(rng, &self.left),
            pick(rng, &self.left),
            pick(rng, self.points),
        );
        let c = self.ctx;
        let lhs = c.t_hat(c.curve().add(p, p2), q, self.alpha)?;
        let rhs = c.mul_values(&c.t_hat(p, q, self.alpha)?, &c.t_hat(p2, q, self.alpha)?)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} P'={p2} Q={q}: {lhs} vs {rhs}"))
    }

    fn t_bilinear_right(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q, q2) = (
            pick(rng, &self.left),
            pick(rng, self.points),
            pick(rng, self.points),
        );
        let c = self.ctx;
        let lhs = c.t_hat(p, c.curve().add(q, q2), self.alpha)?;
        let rhs = c.mul_values(&c.t_hat(p, q, self.alpha)?, &c.t_hat(p, q2, self.alpha)?)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q} Q'={q2}: {lhs} vs {rhs}"))
    }

    fn t_aux_independent(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, self.points));
        let mut values = Vec::new();
        for _ in 0..16 {
            let s = pick(rng, self.points);
            match self.ctx.t_hat_with_aux(p, q, self.alpha, s) {
                Ok(v) => values.push((s, v)),
                Err(e) if e.is_collision() => continue,
                Err(e) => return Err(e),
            }
            if values.len() == 2 {
                break;
            }
        }
        match values.as_slice() {
            [(s1, v1), (s2, v2)] if v1 != v2 => {
                mismatch(format_args!("P={p} Q={q} S={s1}, S'={s2}: {v1} vs {v2}"))
            }
            _ => Ok(None),
        }
    }

    fn t_compatible(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, self.points));
        let b = self.nonzero_scalar(rng);
        let c = self.ctx;
        let lhs = c.t_hat(self.act(b, p), self.act(b, q), self.alpha)?;
        let rhs = c.pow_value(&c.t_hat(p, q, self.alpha)?, c.order().int(b.norm()))?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q} phi=[{b}]: {lhs} vs {rhs}"))
    }

    fn t_coherent_left(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left_ab), pick(rng, self.points));
        let c = self.ctx;
        let big = c.t_hat(p, q, self.alpha * self.beta)?;
        let small = c.t_hat(self.act(self.beta.conj(), p), q, self.alpha)?;
        if c.equal_mod_powers(&big.raw, &small.raw, self.alpha)? {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {} vs {}", big.raw, small.raw))
    }

    fn t_coherent_right(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left_b), pick(rng, self.points));
        let c = self.ctx;
        let big = c.t_hat(p, q, self.alpha * self.beta)?;
        let small = c.t_hat(p, self.act(self.alpha, q), self.beta)?;
        if c.equal_mod_powers(&big.raw, &small.raw, self.beta)? {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {} vs {}", big.raw, small.raw))
    }

    fn t_norm_relation(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, self.points));
        if self.ctx.norm_relation_check(p, q, self.alpha)? {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}"))
    }

    fn w_sesquilinear(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, &self.right));
        let (g, d) = (self.scalar(rng), self.scalar(rng));
        let c = self.ctx;
        let lhs = c.w_hat(self.act(g, p), self.act(d, q), self.alpha)?;
        let rhs = c.pow_value(&c.w_hat(p, q, self.alpha)?, d * g.conj())?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!(
            "P={p} Q={q} gamma={g} delta={d}: {lhs} vs {rhs}"
        ))
    }

    fn w_bilinear_left(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, p2, q) = (
            pick(rng, &self.left),
            pick(rng, &self.left),
            pick(rng, &self.right),
        );
        let c = self.ctx;
        let lhs = c.w_hat(c.curve().add(p, p2), q, self.alpha)?;
        let rhs = c.mul_values(&c.w_hat(p, q, self.alpha)?, &c.w_hat(p2, q, self.alpha)?)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} P'={p2} Q={q}: {lhs} vs {rhs}"))
    }

    fn w_bilinear_right(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q, q2) = (
            pick(rng, &self.left),
            pick(rng, &self.right),
            pick(rng, &self.right),
        );
        let c = self.ctx;
        let lhs = c.w_hat(p, c.curve().add(q, q2), self.alpha)?;
        let rhs = c.mul_values(&c.w_hat(p, q, self.alpha)?, &c.w_hat(p, q2, self.alpha)?)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q} Q'={q2}: {lhs} vs {rhs}"))
    }

    fn w_skew_hermitian(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, &self.right));
        let c = self.ctx;
        let lhs = c.w_hat(p, q, self.alpha)?.raw;
        let rhs = c.w_hat(q, p, self.alpha.conj())?.raw.conj(c.order()).inv();
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {lhs} vs {rhs}"))
    }

    fn w_torsion(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, &self.right));
        let w = self.ctx.w_hat(p, q, self.alpha)?;
        if w.raw.pow(self.alpha).is_identity() {
            return Ok(None);
        }
        mismatch(format_args!(
            "P={p} Q={q}: {w} is not killed by {}",
            self.alpha
        ))
    }

    fn w_compatible(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, &self.right));
        let b = self.nonzero_scalar(rng);
        let c = self.ctx;
        let lhs = c.w_hat(self.act(b, p), self.act(b, q), self.alpha)?;
        let rhs = c.pow_value(&c.w_hat(p, q, self.alpha)?, c.order().int(b.norm()))?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q} phi=[{b}]: {lhs} vs {rhs}"))
    }

    fn w_coherent_left(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left_ab), pick(rng, &self.right));
        let c = self.ctx;
        let big = c.w_hat(p, q, self.alpha * self.beta)?.raw;
        let small = c.w_hat(self.act(self.beta.conj(), p), q, self.alpha)?.raw;
        if big == small {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {big} vs {small}"))
    }

    fn w_coherent_right(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left_b), pick(rng, &self.right_ab));
        let c = self.ctx;
        let big = c.w_hat(p, q, self.alpha * self.beta)?.raw;
        let small = c.w_hat(p, self.act(self.alpha, q), self.beta)?.raw;
        if big == small {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {big} vs {small}"))
    }

    fn w_norm_relation(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let (p, q) = (pick(rng, &self.left), pick(rng, &self.right));
        let c = self.ctx;
        let big = c.w_hat(p, q, c.order().int(self.n as i64))?.raw;
        let small = c.w_hat(p, q, self.alpha)?.raw.pow(self.alpha.conj());
        if big == small {
            return Ok(None);
        }
        mismatch(format_args!("P={p} Q={q}: {big} vs {small}"))
    }

    fn tn_product(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let cp = self.pair_from(rng, &self.norm_torsion);
        let cq = self.pair_from(rng, self.points);
        let (dp, dq) = (self.rerepresent(rng, &cp), self.rerepresent(rng, &cq));
        let c = self.ctx;
        let lhs = c.t_alpha(&dp, &dq, c.order().int(self.n as i64))?;
        let rhs = c.tate_product_formula(&dp, &dq, self.n)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("D_P={cp} D_Q={cq}: {lhs} vs {rhs}"))
    }

    fn wn_product(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let cp = self.pair_from(rng, &self.norm_torsion);
        let cq = self.pair_from(rng, &self.norm_torsion);
        let (dp, dq) = (self.rerepresent(rng, &cp), self.rerepresent(rng, &cq));
        let c = self.ctx;
        let lhs = c.w_alpha(&dp, &dq, c.order().int(self.n as i64))?;
        let rhs = c.weil_product_formula(&dp, &dq, self.n)?;
        if lhs == rhs {
            return Ok(None);
        }
        mismatch(format_args!("D_P={cp} D_Q={cq}: {lhs} vs {rhs}"))
    }

    fn t_alpha_twisted(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let ab = self.alpha.conj();
        let dp = self.class_killed_by(rng, ab)?;
        let dq = self.class(&self.pair_from(rng, self.points));
        let (g, d) = (self.scalar(rng), self.scalar(rng));
        let c = self.ctx;
        let lhs = c.t_alpha(&dp.scale(g), &dq.scale(d), self.alpha)?;
        let base = c.t_alpha(&dp, &dq, self.alpha)?;
        let rhs = base.raw.pow(d.conj() * g);
        if c.equal_mod_powers(&lhs.raw, &rhs, ab)? {
            return Ok(None);
        }
        mismatch(format_args!("D_P={dp} D_Q={dq} gamma={g} delta={d}"))
    }

    /// Evaluates `T_a(D_P, .)` at two random representatives of one class.
    fn t_alpha_right_class(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let dp = self.class_killed_by(rng, self.alpha.conj())?;
        let cq = self.pair_from(rng, self.points);
        let c = self.ctx;
        let mut values = Vec::new();
        for _ in 0..16 {
            let dq = self.rerepresent(rng, &cq);
            match c.t_alpha_at(&dp, &dq, self.alpha, Point::Infinity) {
                Ok(v) => values.push(v),
                Err(e) if e.is_collision() => continue,
                Err(e) => return Err(e),
            }
            if values.len() == 2 {
                break;
            }
        }
        match values.as_slice() {
            [v1, v2] if v1 != v2 => mismatch(format_args!("D_P={dp} D_Q={cq}: {v1} vs {v2}")),
            _ => Ok(None),
        }
    }

    /// Uses the function of a translated representative of `D_P`.
    fn t_alpha_left_class(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let dp = self.class_killed_by(rng, self.alpha.conj())?;
        let cq = self.pair_from(rng, self.points);
        let c = self.ctx;
        for _ in 0..16 {
            let dq = self.rerepresent(rng, &cq);
            let shift = pick(rng, self.points);
            let plain = c.t_alpha_at(&dp, &dq, self.alpha, Point::Infinity);
            let moved = c.t_alpha_at(&dp, &dq, self.alpha, shift);
            match (plain, moved) {
                (Ok(u), Ok(v)) if u == v => return Ok(None),
                (Ok(u), Ok(v)) => {
                    return mismatch(format_args!("D_P={dp} D_Q={dq} T={shift}: {u} vs {v}"))
                }
                (Err(e), _) | (_, Err(e)) if e.is_collision() => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        Ok(None)
    }

    fn tn_versus_t_alpha(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let ab = self.alpha.conj();
        let dp = self.class_killed_by(rng, ab)?;
        let dq = self.class(&self.pair_from(rng, self.points));
        let c = self.ctx;
        let big = c.t_alpha(&dp, &dq, c.order().int(self.n as i64))?;
        let small = c.t_alpha(&dp, &dq, self.alpha)?;
        if c.equal_mod_powers(&big.raw, &small.raw.pow(self.alpha), ab)? {
            return Ok(None);
        }
        mismatch(format_args!("D_P={dp} D_Q={dq}"))
    }

    /// `T_a(D_P, conj(a) D_S) = T_{N(a)}(D_P, D_S)` modulo `conj(a)`-powers.
    fn t_alpha_preimage(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let ab = self.alpha.conj();
        let dp = self.class_killed_by(rng, ab)?;
        let ds = self.class(&self.pair_from(rng, self.points));
        let c = self.ctx;
        let lhs = c.t_alpha(&dp, &ds.scale(ab), self.alpha)?;
        let rhs = c.t_alpha(&dp, &ds, c.order().int(self.n as i64))?;
        if c.equal_mod_powers(&lhs.raw, &rhs.raw, ab)? {
            return Ok(None);
        }
        mismatch(format_args!("D_P={dp} D_S={ds}"))
    }

    /// A random shifted R-function with divisor `b D` for a class `D` killed by `b`.
    fn random_function(&self, rng: &mut ChaCha8Rng) -> Result<RFunction, PairingError> {
        let c = self.ctx;
        let minus_tau = -c.order().tau();
        let (b, p0, p1) = match rng.gen_range(0..3) {
            0 => {
                let p = pick(rng, &self.left);
                (self.alpha, self.act(minus_tau, p), p)
            }
            1 => {
                let q = pick(rng, &self.right);
                (self.alpha.conj(), self.act(minus_tau, q), q)
            }
            _ => (
                c.order().int(self.n as i64),
                pick(rng, &self.norm_torsion),
                pick(rng, &self.norm_torsion),
            ),
        };
        let f = RFunction::multiple(c.cm(), p0, p1, b)?;
        Ok(f.shifted(c.curve(), pick(rng, self.points)))
    }

    fn reciprocity(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let c = self.ctx;
        let e = c.curve();
        for _ in 0..16 {
            let f = self.random_function(rng)?;
            let g = self.random_function(rng)?;
            let (df, dg) = (f.divisor(e), g.divisor(e));
            if !df.supports_disjoint(&dg) {
                continue;
            }
            let (u, v) = match (f.eval(e, &dg), g.eval(e, &df)) {
                (Ok(u), Ok(v)) => (u, v),
                (Err(MillerError::ZeroEvaluation | MillerError::SupportCollision), _)
                | (_, Err(MillerError::ZeroEvaluation | MillerError::SupportCollision)) => continue,
                (Err(err), _) | (_, Err(err)) => return Err(err.into()),
            };
            let expected = v.conj(c.order());
            if u == expected {
                return Ok(None);
            }
            return mismatch(format_args!(
                "div f = {df}, div g = {dg}: {u} vs {expected}"
            ));
        }
        Ok(None)
    }
}

impl PairingContext {
    /// Runs every law on `trials` seeded random inputs.
    pub fn property_suite(&self, cfg: &LawConfig) -> Result<LawReport, PairingError> {
        self.check_order(cfg.alpha)?;
        self.check_order(cfg.beta)?;
        let cm = self.cm();
        let n = cfg.alpha.norm();
        if n <= 0 {
            return Err(PairingError::HypothesisViolated(
                "alpha must be nonzero".into(),
            ));
        }
        let ab = cfg.alpha * cfg.beta;
        let suite = Suite {
            ctx: self,
            alpha: cfg.alpha,
            beta: cfg.beta,
            n: n as u64,
            points: self.curve().points()?,
            left: cm.kernel_of(cfg.alpha.conj())?,
            right: cm.kernel_of(cfg.alpha)?,
            norm_torsion: cm.kernel_of(self.order().int(n))?,
            left_ab: cm.kernel_of(ab.conj())?,
            right_ab: cm.kernel_of(ab)?,
            left_b: cm.kernel_of(cfg.beta.conj())?,
        };
        let mut results = Vec::with_capacity(LAW_NAMES.len());
        for (k, (name, law)) in LAW_NAMES.iter().zip(laws()).enumerate() {
            let mut rng = self.rng_for(LAW_TAG, &[k as u64]);
            let mut passed = 0;
            let mut counterexample = None;
            for _ in 0..cfg.trials {
                match law(&suite, &mut rng) {
                    Ok(None) => passed += 1,
                    Ok(Some(c)) => {
                        counterexample.get_or_insert(c);
                    }
                    Err(e) => {
                        counterexample.get_or_insert(format!("error: {e}"));
                    }
                }
            }
            results.push(LawResult {
                name: name.to_string(),
                trials: cfg.trials,
                passed,
                counterexample,
            });
        }
        Ok(LawReport {
            alpha: cfg.alpha,
            beta: cfg.beta,
            seed: self.seed(),
            trials: cfg.trials,
            laws: results,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CmCurve;
    use crate::field::PrimeField;

    #[test]
    fn laws_hold_on_a_small_run() {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        let c = PairingContext::new(cm, 5).unwrap();
        let o = c.order();
        let cfg = LawConfig {
            alpha: o.elem(1, -2),
            beta: o.elem(1, 1),
            trials: 20,
        };
        let r = c.property_suite(&cfg).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.laws.len(), LAW_NAMES.len());
    }

    #[test]
    fn zero_trials_pass_vacuously() {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        let c = PairingContext::new(cm, 5).unwrap();
        let o = c.order();
        let cfg = LawConfig {
            alpha: o.elem(1, -2),
            beta: o.elem(1, 1),
            trials: 0,
        };
        assert!(c.property_suite(&cfg).unwrap().passed());
    }
}
