//! Exact fields: `GF(p)`, `GF(p^2)` with its Frobenius automorphism, and
//! `Q` with arbitrary-precision numerators and denominators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    /// `GF(p)[w] / (w^2 + a w + b)`.
    Quadratic,
    Rationals,
}

/// Field descriptor. Elements are [`Scalar`] values interpreted through
/// the descriptor.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    kind: FieldKind,
    p: u64,
    a: u64,
    b: u64,
    /// `w^p` in the `(1, w)` basis.
    w_pow_p: (u64, u64),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.p == other.p && self.a == other.a && self.b == other.b
    }
}

impl Eq for Field {}

/// Field element. Finite-field elements are `c0 + c1 w` with `c1 = 0`
/// in prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fin(u64, u64),
    Rat(Rational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field {
            kind: FieldKind::Prime,
            p,
            a: 0,
            b: 0,
            w_pow_p: (0, 0),
        })
    }

    /// `GF(p^2)` with the lexicographically smallest irreducible monic
    /// modulus `x^2 + a x + b`.
    pub fn quadratic(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        let (a, b) = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .find(|&(a, b)| (0..p).all(|x| (x * x + a * x + b) % p != 0))
            .expect("an irreducible quadratic exists over every prime field");
        let mut field = Field {
            kind: FieldKind::Quadratic,
            p,
            a,
            b,
            w_pow_p: (0, 1),
        };
        let Scalar::Fin(u, v) = field.pow(&Scalar::Fin(0, 1), p) else {
            unreachable!()
        };
        field.w_pow_p = (u, v);
        Ok(field)
    }

    pub fn rationals() -> Self {
        Field {
            kind: FieldKind::Rationals,
            p: 0,
            a: 0,
            b: 0,
            w_pow_p: (0, 0),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Coefficients `(a, b)` of the modulus `x^2 + a x + b`.
    pub fn modulus(&self) -> Option<(u64, u64)> {
        (self.kind == FieldKind::Quadratic).then_some((self.a, self.b))
    }

    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime => Some(self.p),
            FieldKind::Quadratic => Some(self.p * self.p),
            FieldKind::Rationals => None,
        }
    }

    /// Order of the implemented automorphism group: 2 for `GF(p^2)`
    /// (Frobenius), 1 otherwise.
    pub fn automorphism_order(&self) -> i64 {
        if self.kind == FieldKind::Quadratic {
            2
        } else {
            1
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(Rational::zero()),
            _ => Scalar::Fin(0, 0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(Rational::one()),
            _ => Scalar::Fin(1, 0),
        }
    }

    /// The adjoined root `w`, in `GF(p^2)` only.
    pub fn w(&self) -> Option<Scalar> {
        (self.kind == FieldKind::Quadratic).then_some(Scalar::Fin(0, 1))
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(Rational::from_integer(BigInt::from(n))),
            _ => Scalar::Fin(self.reduce_i64(n), 0),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self.kind, x) {
            (FieldKind::Prime, Scalar::Fin(c0, c1)) => *c0 < self.p && *c1 == 0,
            (FieldKind::Quadratic, Scalar::Fin(c0, c1)) => *c0 < self.p && *c1 < self.p,
            (FieldKind::Rationals, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Fin(c0, c1) => *c0 == 0 && *c1 == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        *x == self.one()
    }

    #[inline]
    fn mulp(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (x, y) {
            (Scalar::Fin(a0, a1), Scalar::Fin(b0, b1)) => {
                Scalar::Fin((a0 + b0) % self.p, (a1 + b1) % self.p)
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("scalar kinds disagree"),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match x {
            Scalar::Fin(a0, a1) => Scalar::Fin((self.p - a0) % self.p, (self.p - a1) % self.p),
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (x, y) {
            (Scalar::Fin(x0, x1), Scalar::Fin(y0, y1)) => {
                if self.kind == FieldKind::Prime {
                    return Scalar::Fin(self.mulp(*x0, *y0), 0);
                }
                let p = self.p;
                // w^2 = -a w - b
                let hi = self.mulp(*x1, *y1);
                let c0 = (self.mulp(*x0, *y0) + p - self.mulp(self.b, hi)) % p;
                let c1 =
                    (self.mulp(*x0, *y1) + self.mulp(*x1, *y0) + p - self.mulp(self.a, hi)) % p;
                Scalar::Fin(c0, c1)
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("scalar kinds disagree"),
        }
    }

    pub fn pow(&self, x: &Scalar, mut e: u64) -> Scalar {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: &Scalar) -> Option<Scalar> {
        if self.is_zero(x) {
            return None;
        }
        Some(match x {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fin(..) => {
                let q = self.order().unwrap();
                self.pow(x, q - 2)
            }
        })
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        self.inv(y).map(|yi| self.mul(x, &yi))
    }

    /// `x ↦ x^(p^k)`; the identity outside `GF(p^2)`.
    pub fn frobenius(&self, x: &Scalar, k: i64) -> Scalar {
        if self.kind != FieldKind::Quadratic || k.rem_euclid(2) == 0 {
            return x.clone();
        }
        let Scalar::Fin(c0, c1) = x else {
            panic!("scalar kinds disagree")
        };
        let (u, v) = self.w_pow_p;
        Scalar::Fin((c0 + self.mulp(*c1, u)) % self.p, self.mulp(*c1, v))
    }

    /// All elements, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.kind {
            FieldKind::Prime => Some((0..self.p).map(|c| Scalar::Fin(c, 0)).collect()),
            FieldKind::Quadratic => Some(
                (0..self.p)
                    .flat_map(|c1| (0..self.p).map(move |c0| Scalar::Fin(c0, c1)))
                    .collect(),
            ),
            FieldKind::Rationals => None,
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind {
            FieldKind::Prime => Scalar::Fin(rng.gen_range(0..self.p), 0),
            FieldKind::Quadratic => Scalar::Fin(rng.gen_range(0..self.p), rng.gen_range(0..self.p)),
            FieldKind::Rationals => Scalar::Rat(rational::ratio(
                rng.gen_range(-9i64..=9),
                rng.gen_range(1i64..=5),
            )),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// `"3"` in `GF(p)`, `"a+b*w"` in `GF(p^2)`, `"p/q"` in `Q`.
    pub fn format(&self, x: &Scalar) -> String {
        match (self.kind, x) {
            (FieldKind::Prime, Scalar::Fin(c0, _)) => c0.to_string(),
            (FieldKind::Quadratic, Scalar::Fin(c0, c1)) => format!("{c0}+{c1}*w"),
            (_, Scalar::Rat(r)) => rational::format(r),
            _ => panic!("scalar kinds disagree"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidScalar(s.to_string());
        match self.kind {
            FieldKind::Rationals => rational::parse(s).map(Scalar::Rat).map_err(|_| bad()),
            FieldKind::Prime => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                let p = BigInt::from(self.p);
                let r = ((n % &p) + &p) % &p;
                Ok(Scalar::Fin(r.to_string().parse().unwrap(), 0))
            }
            FieldKind::Quadratic => {
                let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                if compact.is_empty() {
                    return Err(bad());
                }
                // "x-y" is read as "x+-y"
                let mut normalized = String::with_capacity(compact.len() + 4);
                for (i, ch) in compact.chars().enumerate() {
                    if ch == '-' && i > 0 && !normalized.ends_with('+') {
                        normalized.push('+');
                    }
                    normalized.push(ch);
                }
                let mut acc = self.zero();
                for term in normalized.split('+') {
                    if term.is_empty() {
                        return Err(bad());
                    }
                    let value = if let Some(coef) = term.strip_suffix('w') {
                        let coef = coef.strip_suffix('*').unwrap_or(coef);
                        let c = match coef {
                            "" => 1,
                            "-" => -1,
                            c => c.parse::<i64>().map_err(|_| bad())?,
                        };
                        Scalar::Fin(0, self.reduce_i64(c))
                    } else {
                        Scalar::Fin(self.reduce_i64(term.parse::<i64>().map_err(|_| bad())?), 0)
                    };
                    acc = self.add(&acc, &value);
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "gf{}", self.p),
            FieldKind::Quadratic => write!(f, "gf{}", self.p * self.p),
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `gfN` for `N = p` or `N = p^2`, or `Q`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "q" || t == "rationals" {
            return Ok(Field::rationals());
        }
        let n = t
            .strip_prefix("gf")
            .or_else(|| t.strip_prefix("GF"))
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .and_then(|r| r.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(t.to_string()))?;
        if is_prime(n) {
            return Field::prime(n);
        }
        let root = (n as f64).sqrt().round() as u64;
        if root * root == n && is_prime(root) {
            return Field::quadratic(root);
        }
        Err(Error::InvalidField(format!(
            "{t}: only GF(p) and GF(p^2) are supported"
        )))
    }
}

impl Scalar {
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}
