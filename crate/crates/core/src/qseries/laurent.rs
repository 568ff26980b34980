use super::ring::Coeff;
use crate::exactnum::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in y with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct YLaurent {
    coeffs: BTreeMap<i64, Rational>,
}

impl YLaurent {
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        YLaurent { coeffs }
    }

    pub fn y_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, k: i64, c: Rational) {
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }
}

impl Coeff for YLaurent {
    fn zero() -> Self {
        YLaurent::default()
    }
    fn one() -> Self {
        Self::y_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert_add(*k, c.clone());
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert_add(*k, -c);
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = YLaurent::default();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.insert_add(a + b, ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        YLaurent { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        match self.coeffs.len() {
            1 => {
                let (k, c) = self.coeffs.iter().next().unwrap();
                Some(Self::monomial(c.recip(), -k))
            }
            _ => None,
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::monomial(r.clone(), 0)
    }
}

impl fmt::Display for YLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let a = c.abs();
            match (*k, a.is_one()) {
                (0, _) => write!(f, "{sep}{a}")?,
                (k, true) => write!(f, "{sep}y^{k}")?,
                (k, false) => write!(f, "{sep}{a}*y^{k}")?,
            }
        }
        Ok(())
    }
}
