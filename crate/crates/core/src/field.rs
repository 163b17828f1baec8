//! Prime fields `F_q` with 64-bit moduli.
//!
//! Elements carry their modulus so that mixing two fields is caught at the
//! call site. The operator impls (`+`, `-`, `*`, unary `-`) panic on a field
//! mismatch; the `try_*` methods report it as [`FieldError::FieldMismatch`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Trial division stops here; any cofactor left over must be prime.
const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("operands belong to different fields (F_{0} and F_{1})")]
    FieldMismatch(u64, u64),
    #[error("could not factor {0} within the trial-division bound")]
    FactorizationFailure(u64),
    #[error("element is not in the subgroup of order {order} generated by the base")]
    NotInSubgroup { order: u64 },
}

/// The prime field `F_q` for an odd prime `q < 2^64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q.is_multiple_of(2) || !is_prime(q) {
            return Err(FieldError::NotOddPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Embeds a signed integer, reducing it modulo `q`.
    pub fn elem(&self, v: i64) -> Fp {
        let r = (v as i128).rem_euclid(self.q as i128) as u64;
        Fp {
            value: r,
            q: self.q,
        }
    }

    pub fn from_u64(&self, v: u64) -> Fp {
        Fp {
            value: v % self.q,
            q: self.q,
        }
    }

    pub fn zero(&self) -> Fp {
        Fp {
            value: 0,
            q: self.q,
        }
    }

    pub fn one(&self) -> Fp {
        Fp {
            value: 1,
            q: self.q,
        }
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn unit_order(&self) -> u64 {
        self.q - 1
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// An element of a [`PrimeField`], always reduced into `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp {
    value: u64,
    q: u64,
}

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

#[inline]
fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { q: self.q }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// Representative in `(-q/2, q/2]`, handy for printing small negatives.
    pub fn signed(&self) -> i64 {
        if self.value > self.q / 2 {
            self.value as i64 - self.q as i64
        } else {
            self.value as i64
        }
    }

    fn check(&self, other: &Fp) -> Result<(), FieldError> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.q, other.q))
        }
    }

    pub fn try_add(self, other: Fp) -> Result<Fp, FieldError> {
        self.check(&other)?;
        let s = self.value as u128 + other.value as u128;
        Ok(Fp {
            value: (s % self.q as u128) as u64,
            q: self.q,
        })
    }

    pub fn try_sub(self, other: Fp) -> Result<Fp, FieldError> {
        self.check(&other)?;
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.q - (other.value - self.value)
        };
        Ok(Fp {
            value: v,
            q: self.q,
        })
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp, FieldError> {
        self.check(&other)?;
        Ok(Fp {
            value: mul_mod(self.value, other.value, self.q),
            q: self.q,
        })
    }

    pub fn try_div(self, other: Fp) -> Result<Fp, FieldError> {
        self.check(&other)?;
        self.try_mul(other.inv()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Fp, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero(self.q));
        }
        let (mut r0, mut r1) = (self.q as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp {
            value: s0.rem_euclid(self.q as i128) as u64,
            q: self.q,
        })
    }

    pub fn pow_u64(self, exp: u64) -> Fp {
        Fp {
            value: pow_mod(self.value, exp, self.q),
            q: self.q,
        }
    }

    /// Signed exponent; negative powers go through the inverse.
    pub fn pow(self, exp: i64) -> Result<Fp, FieldError> {
        if exp >= 0 {
            Ok(self.pow_u64(exp as u64))
        } else {
            Ok(self.inv()?.pow_u64(exp.unsigned_abs()))
        }
    }

    /// Legendre symbol test; zero counts as a square.
    pub fn is_square(&self) -> bool {
        self.value == 0 || pow_mod(self.value, (self.q - 1) / 2, self.q) == 1
    }

    /// A square root by Tonelli-Shanks, or `None` for non-residues.
    pub fn sqrt(&self) -> Option<Fp> {
        let q = self.q;
        if self.value == 0 {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        if q % 4 == 3 {
            return Some(self.pow_u64((q + 1) / 4));
        }
        let mut s = 0;
        let mut odd = q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (q - 1) / 2, q) != q - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, odd, q);
        let mut t = pow_mod(self.value, odd, q);
        let mut r = pow_mod(self.value, odd.div_ceil(2), q);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, q);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), q);
            m = i;
            c = mul_mod(b, b, q);
            t = mul_mod(t, c, q);
            r = mul_mod(r, b, q);
        }
        Some(Fp { value: r, q })
    }

    /// Exact multiplicative order, given the factorization of `q - 1`.
    pub fn multiplicative_order(&self, factors: &[(u64, u32)]) -> Option<u64> {
        if self.value == 0 {
            return None;
        }
        let mut order = self.q - 1;
        for &(p, _) in factors {
            while order.is_multiple_of(p) && self.pow_u64(order / p).is_one() {
                order /= p;
            }
        }
        Some(order)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp {
                value: self.q - self.value,
                q: self.q,
            }
        }
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>, FieldError> {
    let original = n;
    let mut out = Vec::new();
    if n == 0 {
        return Err(FieldError::FactorizationFailure(0));
    }
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND && p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if !is_prime(n) {
            return Err(FieldError::FactorizationFailure(original));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// The smallest positive integer generating `F_q^*`.
pub fn multiplicative_generator(field: PrimeField) -> Result<Fp, FieldError> {
    let q = field.modulus();
    let factors = factorize(q - 1)?;
    for g in 1..q {
        let cand = field.from_u64(g);
        if factors
            .iter()
            .all(|&(p, _)| !cand.pow_u64((q - 1) / p).is_one())
        {
            return Ok(cand);
        }
    }
    unreachable!("F_q^* is cyclic")
}

/// Baby-step/giant-step table for logarithms to a fixed base of known order.
///
/// The baby steps are built once, so repeated queries against the same base
/// cost `O(sqrt(n))` multiplications each.
#[derive(Clone, Debug)]
pub struct Bsgs {
    base: Fp,
    order: u64,
    step: u64,
    baby: HashMap<u64, u64>,
    giant: Fp,
}

impl Bsgs {
    pub fn new(base: Fp, order: u64) -> Result<Self, FieldError> {
        if base.is_zero() || order == 0 {
            return Err(FieldError::NotInSubgroup { order });
        }
        let mut step = (order as f64).sqrt().ceil() as u64;
        while step.saturating_mul(step) < order {
            step += 1;
        }
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = base.field().one();
        for j in 0..step {
            baby.entry(cur.value()).or_insert(j);
            cur = cur * base;
        }
        // cur = base^step
        let giant = cur.inv()?;
        Ok(Self {
            base,
            order,
            step,
            baby,
            giant,
        })
    }

    pub fn base(&self) -> Fp {
        self.base
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Returns `e` in `[0, order)` with `base^e = x`.
    pub fn solve(&self, x: Fp) -> Result<u64, FieldError> {
        self.base.check(&x)?;
        let mut gamma = x;
        for i in 0..self.step {
            if let Some(&j) = self.baby.get(&gamma.value()) {
                let e = (i * self.step + j) % self.order;
                if self.base.pow_u64(e) == x {
                    return Ok(e);
                }
            }
            gamma = gamma * self.giant;
        }
        Err(FieldError::NotInSubgroup { order: self.order })
    }
}

/// `e` in `[0, n)` with `g^e = x`, where `g` has exact order `n`.
pub fn discrete_log(g: Fp, x: Fp, n: u64) -> Result<u64, FieldError> {
    Bsgs::new(g, n)?.solve(x)
}
