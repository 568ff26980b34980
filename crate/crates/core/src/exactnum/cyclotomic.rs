use super::rational::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("root of unity of order 0 requested")]
    ZeroOrder,
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("order {from} does not divide {to}; cannot embed")]
    BadEmbedding { from: u32, to: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Data for Q(ζ_n): the degree and the reduced form of every power ζ^k with φ(n) ≤ k < n.
struct Field {
    phi: usize,
    high_powers: Vec<Vec<(usize, i64)>>,
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
static CYCLOTOMIC: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

fn divisors_u32(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0);
    let cache = CYCLOTOMIC.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors_u32(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &div);
    }
    let p = Arc::new(num);
    cache.write().unwrap().entry(n).or_insert(p).clone()
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn field(n: u32) -> Arc<Field> {
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut high_powers = Vec::with_capacity(n as usize - phi);
    // x^phi = -(poly - x^phi)
    let mut cur: Vec<i64> = poly[..phi].iter().map(|c| -c).collect();
    for _ in phi..n as usize {
        high_powers.push(cur.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| (j, *c)).collect());
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for j in 0..phi {
                next[j] = next[j]
                    .checked_sub(top.checked_mul(poly[j]).expect("cyclotomic table overflow"))
                    .expect("cyclotomic table overflow");
            }
        }
        cur = next;
    }
    let f = Arc::new(Field { phi, high_powers });
    cache.write().unwrap().entry(n).or_insert(f).clone()
}

/// Euler's totient of n.
pub fn totient(n: u32) -> usize {
    field(n).phi
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// An element of Q(ζ_n): Σ (num_k / den) ζ_n^k over the power basis 0 ≤ k < φ(n).
///
/// Canonical form: den > 0, gcd(den, all num_k) = 1, zero numerators dropped,
/// terms sorted by k. The zero element has no terms.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    den: BigInt,
    terms: Vec<(u32, BigInt)>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { order: 1, den: BigInt::one(), terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let terms = if n.is_zero() { Vec::new() } else { vec![(0, n)] };
        CycNum { order: 1, den: BigInt::one(), terms }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let terms = if r.is_zero() { Vec::new() } else { vec![(0, r.numer().clone())] };
        CycNum { order: 1, den: r.denom().clone(), terms }
    }

    /// ζ_n^k with k taken mod n.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycError> {
        if n == 0 {
            return Err(CycError::ZeroOrder);
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut acc = vec![BigInt::zero(); n as usize];
        acc[e] = BigInt::one();
        Ok(Self::reduce(n, BigInt::one(), acc))
    }

    /// ζ_n^k; panics on n = 0. For building constants with literal orders.
    pub fn zeta(n: u32, k: i64) -> Self {
        Self::root_of_unity(n, k).expect("nonzero order")
    }

    /// e(r) = exp(2πi r) for rational r.
    pub fn e(r: &Rational) -> Self {
        let n = r.denom().to_u32().expect("root of unity order too large");
        let k = (r.numer() % r.denom()).to_i64().unwrap();
        Self::zeta(n, k)
    }

    pub fn i() -> Self {
        Self::zeta(4, 1)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta(8, 1) + &Self::zeta(8, -1)
    }

    pub fn sqrt3() -> Self {
        &Self::zeta(12, 1) + &Self::zeta(12, -1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients on the power basis of Q(ζ_order), zero entries omitted.
    pub fn coeffs(&self) -> Vec<(u32, Rational)> {
        self.terms.iter().map(|(k, c)| (*k, Rational::new(c.clone(), self.den.clone()))).collect()
    }

    /// The value as a rational number when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(Rational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && matches!(self.terms.as_slice(), [(0, c)] if c.is_one())
    }

    fn reduce(n: u32, den: BigInt, acc: Vec<BigInt>) -> Self {
        let f = field(n);
        let mut out: Vec<BigInt> = Vec::with_capacity(f.phi);
        let mut it = acc.into_iter();
        out.extend(it.by_ref().take(f.phi));
        for (c, row) in it.zip(f.high_powers.iter()) {
            if c.is_zero() {
                continue;
            }
            for &(j, p) in row {
                out[j] += &c * p;
            }
        }
        Self::normalize(n, den, out)
    }

    fn normalize(order: u32, mut den: BigInt, dense: Vec<BigInt>) -> Self {
        let mut terms: Vec<(u32, BigInt)> =
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c)).collect();
        if terms.is_empty() {
            return CycNum { order, den: BigInt::one(), terms };
        }
        let mut g = den.clone();
        for (_, c) in &terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            den /= &g;
            for (_, c) in terms.iter_mut() {
                *c /= &g;
            }
        }
        CycNum { order, den, terms }
    }

    /// Numerators laid out by exponent in Z/m (no reduction), scaled so that the
    /// common denominator becomes `den`.
    fn spread_into(&self, m: u32, den: &BigInt, acc: &mut [BigInt], negate: bool) {
        let step = (m / self.order) as usize;
        let scale = den / &self.den;
        for (k, c) in &self.terms {
            let v = if scale.is_one() { c.clone() } else { c * &scale };
            if negate {
                acc[*k as usize * step] -= v;
            } else {
                acc[*k as usize * step] += v;
            }
        }
    }

    pub fn embed(&self, m: u32) -> Result<Self, CycError> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(CycError::BadEmbedding { from: self.order, to: m });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let mut acc = vec![BigInt::zero(); m as usize];
        self.spread_into(m, &self.den, &mut acc, false);
        Ok(Self::reduce(m, self.den.clone(), acc))
    }

    fn add_sub(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let den = self.den.lcm(&other.den);
        if self.order == other.order {
            let phi = field(self.order).phi;
            let mut acc = vec![BigInt::zero(); phi];
            self.spread_into(self.order, &den, &mut acc, false);
            other.spread_into(self.order, &den, &mut acc, negate);
            return Self::normalize(self.order, den, acc);
        }
        let m = lcm_u32(self.order, other.order);
        let mut acc = vec![BigInt::zero(); m as usize];
        self.spread_into(m, &den, &mut acc, false);
        other.spread_into(m, &den, &mut acc, negate);
        Self::reduce(m, den, acc)
    }

    fn scale_int(&self, num: &BigInt, den: &BigInt, order: u32) -> Self {
        let dense_len = field(order).phi;
        let mut dense = vec![BigInt::zero(); dense_len];
        let step = (order / self.order) as usize;
        if step == 1 {
            for (k, c) in &self.terms {
                dense[*k as usize] = c * num;
            }
            return Self::normalize(order, &self.den * den, dense);
        }
        let mut acc = vec![BigInt::zero(); order as usize];
        for (k, c) in &self.terms {
            acc[*k as usize * step] = c * num;
        }
        Self::reduce(order, &self.den * den, acc)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let m = lcm_u32(self.order, other.order);
        if let [(0, c)] = other.terms.as_slice() {
            return self.scale_int(c, &other.den, m);
        }
        if let [(0, c)] = self.terms.as_slice() {
            return other.scale_int(c, &self.den, m);
        }
        let sa = (m / self.order) as usize;
        let sb = (m / other.order) as usize;
        let mu = m as usize;
        let mut acc = vec![BigInt::zero(); mu];
        for (i, a) in &self.terms {
            let ei = *i as usize * sa;
            for (j, b) in &other.terms {
                let mut e = ei + *j as usize * sb;
                if e >= mu {
                    e -= mu;
                }
                acc[e] += a * b;
            }
        }
        Self::reduce(m, &self.den * &other.den, acc)
    }

    /// The automorphism ζ ↦ ζ^t of Q(ζ_order); t must be coprime to the order.
    pub fn galois(&self, t: i64) -> Self {
        let n = self.order as i64;
        let mut acc = vec![BigInt::zero(); n as usize];
        for (k, c) in &self.terms {
            let e = ((*k as i64) * t).rem_euclid(n) as usize;
            acc[e] += c;
        }
        Self::reduce(self.order, self.den.clone(), acc)
    }

    /// Complex conjugation: ζ^k ↦ ζ^{-k}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&r.recip()));
        }
        // a^{-1} = (product of the other conjugates) / norm(a)
        let n = self.order as i64;
        let mut others = Self::one();
        for t in 2..n {
            if t.gcd(&n) == 1 {
                others = &others * &self.galois(t);
            }
        }
        let norm = (self * &others).as_rational().expect("field norm lies in Q");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        self.scale_int(r.numer(), r.denom(), self.order)
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Numeric value in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs() {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n);
            s += w * super::rational::to_f64(&c);
        }
        s
    }

    /// Numeric value; `digits` beyond double precision (about 15) are not honoured.
    pub fn to_complex_prec(&self, digits: u32) -> Complex64 {
        debug_assert!(digits >= 1);
        self.to_complex()
    }
}

pub fn cyc_arith(a: &CycNum, b: &CycNum, op: CycOp) -> Result<CycNum, CycError> {
    Ok(match op {
        CycOp::Add => a + b,
        CycOp::Sub => a - b,
        CycOp::Mul => a * b,
        CycOp::Div => a.checked_div(b)?,
    })
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.terms == other.terms;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let m = lcm_u32(self.order, other.order);
        let a = self.embed(m).unwrap();
        let b = other.embed(m).unwrap();
        a.den == b.den && a.terms == b.terms
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for CycNum {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.add_sub(rhs, false)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.add_sub(rhs, true)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.mul_impl(rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, den: self.den.clone(), terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Prints as a sum of `c*zeta(n,k)` terms, readable back by the expression parser.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.coeffs().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "zeta({},{k})", self.order)?;
            } else {
                write!(f, "{a}*zeta({},{k})", self.order)?;
            }
        }
        Ok(())
    }
}
