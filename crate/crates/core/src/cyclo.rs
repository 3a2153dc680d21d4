//! Exact arithmetic in cyclotomic fields `ℚ(ζ_e)`.
//!
//! A value of conductor `e` is stored as the residue of a polynomial in
//! `ζ_e` modulo the cyclotomic polynomial `Φ_e`: a dense vector of
//! `φ(e)` rational coefficients on the power basis `1, ζ, …, ζ^(φ(e)-1)`.
//! Values keep the conductor they were built with; binary operations lift
//! both sides to the lcm of the conductors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"` with the reduced numerator and positive denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let poly = Arc::new(compute_cyclotomic_polynomial(n));
    cache.lock().expect("cache lock").insert(n, poly.clone());
    poly
}

/// `Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}`: multiply the numerator factors,
/// then divide exactly by the denominator factors.
fn compute_cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly: Vec<i128> = vec![1];
    let mut denominators = Vec::new();
    for &d in &divisors {
        match mobius(n / d) {
            1 => {
                let d = d as usize;
                let mut next = vec![0i128; poly.len() + d];
                for (i, &c) in poly.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                poly = next;
            }
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        // poly = q · (x^d - 1)  =>  q_i = q_{i-d} - poly_i
        let len = poly.len() - d;
        let mut q = vec![0i128; len];
        for i in 0..len {
            q[i] = if i >= d { q[i - d] } else { 0 } - poly[i];
        }
        poly = q;
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits i64"))
        .collect()
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
}

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational_int(n))
    }

    /// Zero in `ℚ(ζ_e)` at conductor `e`.
    pub fn zero_at(e: u64) -> Self {
        Self {
            conductor: e,
            coeffs: vec![Rational::zero(); euler_phi(e) as usize],
        }
    }

    /// `ζ_e^k` in canonical form at conductor `e`.
    pub fn zeta(e: u64, k: i64) -> Self {
        assert!(e >= 1, "conductor must be positive");
        let mut poly = vec![Rational::zero(); e as usize];
        poly[k.rem_euclid(e as i64) as usize] = Rational::one();
        Self::from_poly(e, poly)
    }

    /// Reduces `Σ poly[j] ζ_e^j` (any length) to canonical form.
    pub fn from_poly(e: u64, poly: Vec<Rational>) -> Self {
        Self {
            conductor: e,
            coeffs: reduce_mod_cyclotomic(e, poly),
        }
    }

    /// Builds from integer multiplicities `m_j` of `ζ_e^j`.
    pub fn from_int_poly(e: u64, poly: &[i64]) -> Self {
        Self {
            conductor: e,
            coeffs: reduce_int_terms(e, poly.iter().enumerate().map(|(j, &m)| (j as u64, m))),
        }
    }

    /// `Σ m ζ_e^j` over the given `(j, m)` terms.
    pub fn from_int_terms(e: u64, terms: &[(u64, i64)]) -> Self {
        Self {
            conductor: e,
            coeffs: reduce_int_terms(e, terms.iter().copied()),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same value written at conductor `target`, a multiple of the current one.
    pub fn lift(&self, target: u64) -> Self {
        assert_eq!(target % self.conductor, 0, "lift target must be a multiple");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::from_poly(target, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.conductor.lcm(&b.conductor);
        (a.lift(l), b.lift(l))
    }

    /// `ζ_e ↦ ζ_e^r`; `r = -1` is complex conjugation.
    pub fn galois(&self, r: i64) -> Result<Self> {
        let e = self.conductor as i64;
        if r.gcd(&e) != 1 {
            return Err(Error::NotCoprime {
                r,
                conductor: self.conductor,
            });
        }
        if self.conductor <= 2 {
            return Ok(self.clone());
        }
        let mut poly = vec![Rational::zero(); e as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as i64 * r).rem_euclid(e) as usize] += c;
            }
        }
        Ok(Self::from_poly(self.conductor, poly))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Value under the embedding `ζ_e ↦ exp(2πi/e)`. Diagnostic only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * j as f64 / e;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    /// Image under the ring map to `GF(p)` sending `ζ_e` to `root`, a
    /// primitive `e`-th root of unity mod `p`. `None` if a denominator is
    /// divisible by `p`.
    pub fn reduce_mod(&self, p: u64, root: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        let mut power = 1u64;
        for c in &self.coeffs {
            let n = c.numer().mod_floor(&pb).to_u64().expect("residue");
            let d = c.denom().mod_floor(&pb).to_u64().expect("residue");
            if d == 0 {
                return None;
            }
            let term = mul_mod(n, inv_mod(d, p), p);
            acc = (acc + mul_mod(term, power, p)) % p;
            power = mul_mod(power, root, p);
        }
        Some(acc)
    }

    /// Lexicographic comparison of coefficient vectors at a common conductor.
    pub fn cmp_coeffs(&self, other: &Self) -> std::cmp::Ordering {
        if self.conductor == other.conductor {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= 1 << 32 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse mod a prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

type Reductions = Arc<Vec<Vec<i64>>>;

/// `x^j mod Φ_e` for `0 <= j < e`, as integer coefficient vectors.
fn power_reductions(e: u64) -> Reductions {
    static CACHE: OnceLock<Mutex<HashMap<u64, Reductions>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&e) {
        return t.clone();
    }
    let phi = cyclotomic_polynomial(e);
    let deg = phi.len() - 1;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(e as usize);
    let mut current = vec![0i128; deg];
    for j in 0..e as usize {
        if j < deg {
            current = vec![0; deg];
            current[j] = 1;
        } else {
            // multiply the previous row by x and fold x^deg back in
            let top = current[deg - 1];
            for t in (1..deg).rev() {
                current[t] = current[t - 1] - top * phi[t] as i128;
            }
            current[0] = -top * phi[0] as i128;
        }
        rows.push(
            current
                .iter()
                .map(|&c| i64::try_from(c).expect("reduction coefficient fits i64"))
                .collect(),
        );
    }
    let table = Arc::new(rows);
    cache.lock().expect("cache lock").insert(e, table.clone());
    table
}

/// Reduces `Σ poly[j] x^j` modulo `x^e - 1` and `Φ_e`, returning the
/// `φ(e)` power-basis coefficients.
fn reduce_mod_cyclotomic(e: u64, poly: Vec<Rational>) -> Vec<Rational> {
    let table = power_reductions(e);
    let deg = table[0].len();
    let mut out = vec![Rational::zero(); deg];
    for (j, c) in poly.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j % e as usize;
        if j < deg {
            out[j] += c;
            continue;
        }
        for (t, &r) in table[j].iter().enumerate() {
            if r != 0 {
                out[t] += &c * BigInt::from(r);
            }
        }
    }
    out
}

/// Integer version of [`reduce_mod_cyclotomic`] for sparse input.
fn reduce_int_terms(e: u64, terms: impl IntoIterator<Item = (u64, i64)>) -> Vec<Rational> {
    let table = power_reductions(e);
    let deg = table[0].len();
    let mut acc = vec![0i128; deg];
    for (j, m) in terms {
        if m == 0 {
            continue;
        }
        for (t, &r) in table[(j % e) as usize].iter().enumerate() {
            acc[t] += m as i128 * r as i128;
        }
    }
    acc.into_iter()
        .map(|c| Rational::from_integer(BigInt::from(c)))
        .collect()
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style: `2`, `-1/2`, `E(8)+E(8)^3`, `-3*E(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let unit = match j {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{j}", self.conductor),
            };
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => unit,
                (_, false) => format!("{mag}*{unit}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let value = if self.is_rational() {
            Self::from_rational(self.coeffs[0].clone())
        } else {
            self.clone()
        };
        CyclotomicRepr {
            conductor: value.conductor,
            coeffs: value.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.len() as u64 != euler_phi(repr.conductor) {
            return Err(D::Error::custom(
                "coefficient count must equal φ(conductor)",
            ));
        }
        Ok(Self {
            conductor: repr.conductor,
            coeffs,
        })
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            return Cyclotomic {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        &a + &b
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            conductor: a.conductor,
            coeffs: reduce_mod_cyclotomic(a.conductor, poly),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}
