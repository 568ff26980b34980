use super::ring::Coeff;
use crate::exactnum::{ceil_i64, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exclusive exponent bound below which a series is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(Rational),
    Infinite,
}

impl Bound {
    pub fn finite(r: Rational) -> Self {
        Bound::Finite(r)
    }

    pub fn shifted(&self, by: &Rational) -> Bound {
        match self {
            Bound::Finite(t) => Bound::Finite(t + by),
            Bound::Infinite => Bound::Infinite,
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(t) => Some(t),
            Bound::Infinite => None,
        }
    }

    /// True when exponent e lies strictly below the bound.
    pub fn admits(&self, e: &Rational) -> bool {
        match self {
            Bound::Finite(t) => e < t,
            Bound::Infinite => true,
        }
    }

    /// Exclusive key limit for numerators over denominator m.
    fn key_limit(&self, m: i64) -> i64 {
        match self {
            Bound::Finite(t) => ceil_i64(&(t * Rational::from_integer(BigInt::from(m)))),
            Bound::Infinite => i64::MAX,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(t) => write!(f, "{t}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("exponent {exponent} is not below the cutoff {cutoff}")]
    BeyondCutoff { exponent: Rational, cutoff: Bound },
    #[error("cannot invert the zero series")]
    InvertZero,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("inverse of a non-monomial exact series needs a finite cutoff")]
    UnboundedInverse,
    #[error("exponent {exponent} is not a multiple of the grid step {step}")]
    OffGrid { exponent: Rational, step: Rational },
    #[error("rescaling factor must be positive")]
    NonPositiveScale,
}

/// Truncated series Σ c_k q^{k/M}, exact for all exponents below `cutoff`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries<C> {
    denom: i64,
    cutoff: Bound,
    terms: BTreeMap<i64, C>,
}

/// Outcome of comparing two series below the smaller cutoff.
#[derive(Clone, Debug)]
pub struct Comparison<C> {
    pub window: Bound,
    pub first_mismatch: Option<(Rational, C, C)>,
    /// Number of exponents with a nonzero coefficient on either side inside the window.
    pub compared: usize,
}

impl<C> Comparison<C> {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

fn rat_key(e: &Rational, m: i64) -> Option<i64> {
    let x = e * Rational::from_integer(BigInt::from(m));
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

impl<C: Coeff> PuiseuxSeries<C> {
    /// The zero series known exactly.
    pub fn zero() -> Self {
        PuiseuxSeries { denom: 1, cutoff: Bound::Infinite, terms: BTreeMap::new() }
    }

    /// Zero below `cutoff`, unknown above.
    pub fn zero_to(cutoff: Bound) -> Self {
        PuiseuxSeries { denom: 1, cutoff, terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, &Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// c·q^e, exact.
    pub fn monomial(c: C, e: &Rational) -> Self {
        Self::from_terms(std::iter::once((e.clone(), c)), Bound::Infinite)
    }

    /// Builds a series from (exponent, coefficient) pairs; terms at or beyond the cutoff are
    /// dropped and repeated exponents are summed.
    pub fn from_terms<I>(terms: I, cutoff: Bound) -> Self
    where
        I: IntoIterator<Item = (Rational, C)>,
    {
        let items: Vec<(Rational, C)> = terms.into_iter().filter(|(e, c)| !c.is_zero() && cutoff.admits(e)).collect();
        let mut m = BigInt::one();
        for (e, _) in &items {
            m = m.lcm(e.denom());
        }
        let m = m.to_i64().expect("exponent denominator too large");
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in items {
            let k = rat_key(&e, m).unwrap();
            match map.get_mut(&k) {
                Some(v) => v.add_assign_ref(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries { denom: m, cutoff, terms: map }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn cutoff(&self) -> &Bound {
        &self.cutoff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No nonzero coefficient below the cutoff.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn exponent(&self, k: i64) -> Rational {
        Rational::new(BigInt::from(k), BigInt::from(self.denom))
    }

    /// Stored terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &C)> + '_ {
        self.terms.iter().map(move |(k, c)| (self.exponent(*k), c))
    }

    /// Numerator/denominator view of the stored terms.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Smallest exponent with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|k| self.exponent(*k))
    }

    pub fn leading(&self) -> Option<(Rational, &C)> {
        self.terms.iter().next().map(|(k, c)| (self.exponent(*k), c))
    }

    /// Exact coefficient of q^e. Asking at or beyond the cutoff is an error.
    pub fn coeff(&self, e: &Rational) -> Result<C, SeriesError> {
        if !self.cutoff.admits(e) {
            return Err(SeriesError::BeyondCutoff { exponent: e.clone(), cutoff: self.cutoff.clone() });
        }
        Ok(match rat_key(e, self.denom) {
            Some(k) => self.terms.get(&k).cloned().unwrap_or_else(C::zero),
            None => C::zero(),
        })
    }

    /// Lowers the cutoff to min(current, t), dropping terms that fall outside.
    pub fn truncate(&self, t: &Bound) -> Self {
        if *t >= self.cutoff {
            return self.clone();
        }
        let lim = t.key_limit(self.denom);
        let terms = self.terms.range(..lim).map(|(k, c)| (*k, c.clone())).collect();
        PuiseuxSeries { denom: self.denom, cutoff: t.clone(), terms }
    }

    fn with_denom(&self, m: i64) -> BTreeMap<i64, C> {
        debug_assert_eq!(m % self.denom, 0);
        let f = m / self.denom;
        if f == 1 {
            return self.terms.clone();
        }
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    /// Smallest denominator that still represents every stored exponent.
    fn normalized(mut self) -> Self {
        let mut g = self.denom;
        for k in self.terms.keys() {
            if g == 1 {
                break;
            }
            g = g.gcd(k);
        }
        if g > 1 {
            self.denom /= g;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
        }
        self
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let m = lcm(self.denom, other.denom);
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let lim = cutoff.key_limit(m);
        let mut terms = self.with_denom(m);
        terms.retain(|k, _| *k < lim);
        let f = m / other.denom;
        for (k, c) in &other.terms {
            let k = k * f;
            if k >= lim {
                break;
            }
            match terms.get_mut(&k) {
                Some(v) => {
                    *v = if negate { v.minus(c) } else { v.plus(c) };
                    if v.is_zero() {
                        terms.remove(&k);
                    }
                }
                None => {
                    terms.insert(k, if negate { c.negated() } else { c.clone() });
                }
            }
        }
        PuiseuxSeries { denom: m, cutoff, terms }.normalized()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_to(self.cutoff.clone());
        }
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let p = v.times(c);
            if !p.is_zero() {
                terms.insert(*k, p);
            }
        }
        PuiseuxSeries { denom: self.denom, cutoff: self.cutoff.clone(), terms }
    }

    /// Lower bound for the true valuation: the first stored exponent, or the cutoff when
    /// nothing is stored (None for the exact zero series).
    fn valuation_bound(&self) -> Option<Rational> {
        self.valuation().or_else(|| self.cutoff.as_finite().cloned())
    }

    /// Product; the cutoff follows min(T_a + v_b, T_b + v_a).
    pub fn mul_series(&self, other: &Self) -> Self {
        let va = self.valuation_bound();
        let vb = other.valuation_bound();
        let ca = match &vb {
            Some(v) => self.cutoff.shifted(v),
            None => Bound::Infinite,
        };
        let cb = match &va {
            Some(v) => other.cutoff.shifted(v),
            None => Bound::Infinite,
        };
        let cutoff = ca.min(cb);
        if self.is_zero() || other.is_zero() {
            return Self::zero_to(cutoff);
        }
        let m = lcm(self.denom, other.denom);
        let lim = cutoff.key_limit(m);
        let a = self.with_denom(m);
        let b = other.with_denom(m);
        let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
        let lmin = *large.keys().next().unwrap();
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (ka, ca) in small {
            if ka.saturating_add(lmin) >= lim {
                break;
            }
            for (kb, cb) in large {
                let k = ka + kb;
                if k >= lim {
                    break;
                }
                let p = ca.times(cb);
                match acc.get_mut(&k) {
                    Some(v) => v.add_assign_ref(&p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PuiseuxSeries { denom: m, cutoff, terms: acc }.normalized()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse. The result is exact below T − 2v, where v is the valuation.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let (&k0, c0) = self.terms.iter().next().ok_or(SeriesError::InvertZero)?;
        let inv0 = c0.inverse().ok_or(SeriesError::NonInvertibleLeading)?;
        if self.terms.len() == 1 && self.cutoff == Bound::Infinite {
            let mut terms = BTreeMap::new();
            terms.insert(-k0, inv0);
            return Ok(PuiseuxSeries { denom: self.denom, cutoff: Bound::Infinite, terms });
        }
        let v = self.exponent(k0);
        let cutoff = match &self.cutoff {
            Bound::Finite(t) => Bound::Finite(t - &v - &v),
            Bound::Infinite => return Err(SeriesError::UnboundedInverse),
        };
        // Work on the lattice k0 + g·Z spanned by the support.
        let mut g = 0i64;
        for k in self.terms.keys() {
            g = g.gcd(&(k - k0));
        }
        if g == 0 {
            g = 1;
        }
        let lim = cutoff.key_limit(self.denom);
        let count = if lim == i64::MAX { 0 } else { ((lim + k0 - 1).div_euclid(g) + 1).max(0) as usize };
        let a: Vec<(usize, &C)> = self.terms.iter().skip(1).map(|(k, c)| (((k - k0) / g) as usize, c)).collect();
        let neg_inv0 = inv0.negated();
        let mut b: Vec<C> = Vec::with_capacity(count);
        for j in 0..count {
            if j == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut s = C::zero();
            for (i, ai) in &a {
                if *i > j {
                    break;
                }
                let bj = &b[j - i];
                if !bj.is_zero() {
                    s.add_assign_ref(&ai.times(bj));
                }
            }
            b.push(if s.is_zero() { s } else { s.times(&neg_inv0) });
        }
        let terms = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (-k0 + g * j as i64, c))
            .filter(|(k, _)| *k < lim)
            .collect();
        Ok(PuiseuxSeries { denom: self.denom, cutoff, terms }.normalized())
    }

    /// Substitutes τ ↦ sτ: every exponent and the cutoff are multiplied by s.
    pub fn rescale(&self, s: &Rational) -> Result<Self, SeriesError> {
        if !s.is_positive() {
            return Err(SeriesError::NonPositiveScale);
        }
        let p = s.numer().to_i64().expect("scale numerator too large");
        let r = s.denom().to_i64().expect("scale denominator too large");
        let cutoff = match &self.cutoff {
            Bound::Finite(t) => Bound::Finite(t * s),
            Bound::Infinite => Bound::Infinite,
        };
        let terms = self.terms.iter().map(|(k, c)| (k * p, c.clone())).collect();
        Ok(PuiseuxSeries { denom: self.denom * r, cutoff, terms }.normalized())
    }

    fn grid_index(&self, k: i64, step: &Rational) -> Result<i64, SeriesError> {
        let e = self.exponent(k);
        let n = &e / step;
        if !n.is_integer() {
            return Err(SeriesError::OffGrid { exponent: e, step: step.clone() });
        }
        Ok(n.to_integer().to_i64().unwrap())
    }

    /// Multiplies the coefficient of q^{N·step} by w(N).
    pub fn twist<F>(&self, step: &Rational, w: F) -> Result<Self, SeriesError>
    where
        F: Fn(i64) -> C,
    {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let n = self.grid_index(*k, step)?;
            let p = c.times(&w(n));
            if !p.is_zero() {
                terms.insert(*k, p);
            }
        }
        Ok(PuiseuxSeries { denom: self.denom, cutoff: self.cutoff.clone(), terms }.normalized())
    }

    /// Keeps the coefficients of q^{N·step} with pred(N), zeroing the rest.
    pub fn restrict<F>(&self, step: &Rational, pred: F) -> Result<Self, SeriesError>
    where
        F: Fn(i64) -> bool,
    {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if pred(self.grid_index(*k, step)?) {
                terms.insert(*k, c.clone());
            }
        }
        Ok(PuiseuxSeries { denom: self.denom, cutoff: self.cutoff.clone(), terms }.normalized())
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> PuiseuxSeries<D> {
        let terms = self.terms.iter().map(|(k, c)| (*k, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxSeries { denom: self.denom, cutoff: self.cutoff.clone(), terms }
    }

    /// Compares coefficients at every exponent below the smaller of the two cutoffs.
    pub fn compare(&self, other: &Self) -> Comparison<C> {
        let window = self.cutoff.clone().min(other.cutoff.clone());
        let m = lcm(self.denom, other.denom);
        let lim = window.key_limit(m);
        let a = self.with_denom(m);
        let b = other.with_denom(m);
        let mut ia = a.range(..lim).peekable();
        let mut ib = b.range(..lim).peekable();
        let mut compared = 0;
        let zero = C::zero();
        loop {
            let ka = ia.peek().map(|(k, _)| **k);
            let kb = ib.peek().map(|(k, _)| **k);
            let (k, ca, cb) = match (ka, kb) {
                (None, None) => break,
                (Some(_), None) => {
                    let (k, c) = ia.next().unwrap();
                    (*k, c, &zero)
                }
                (None, Some(_)) => {
                    let (k, c) = ib.next().unwrap();
                    (*k, &zero, c)
                }
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Less => {
                        let (k, c) = ia.next().unwrap();
                        (*k, c, &zero)
                    }
                    Ordering::Greater => {
                        let (k, c) = ib.next().unwrap();
                        (*k, &zero, c)
                    }
                    Ordering::Equal => {
                        let (k, c) = ia.next().unwrap();
                        let (_, d) = ib.next().unwrap();
                        (*k, c, d)
                    }
                },
            };
            compared += 1;
            if ca != cb {
                let e = Rational::new(BigInt::from(k), BigInt::from(m));
                return Comparison { window, first_mismatch: Some((e, ca.clone(), cb.clone())), compared };
            }
        }
        Comparison { window, first_mismatch: None, compared }
    }
}

impl<'a, C: Coeff> Add<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn add(self, rhs: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        self.combine(rhs, false)
    }
}

impl<'a, C: Coeff> Sub<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn sub(self, rhs: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        self.combine(rhs, true)
    }
}

impl<'a, C: Coeff> Mul<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn mul(self, rhs: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coeff> Neg for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn neg(self) -> PuiseuxSeries<C> {
        PuiseuxSeries {
            denom: self.denom,
            cutoff: self.cutoff.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.negated())).collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*q^({e})")?;
            }
        }
        write!(f, " + O(q^{})", self.cutoff)
    }
}
