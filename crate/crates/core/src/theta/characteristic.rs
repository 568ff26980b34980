use crate::exactnum::{parse_rational, rat, CycNum, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The pair [ε; δ] labelling θ[ε;δ](τ, z).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    pub eps: Rational,
    pub delta: Rational,
}

/// Result of moving a characteristic into the window 0 ≤ ε ≤ 1, 0 ≤ δ < 2:
/// θ[original](τ, z) = multiplier · θ[ch](τ, ±z), with the minus sign when `z_flipped`.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub ch: Characteristic,
    pub multiplier: CycNum,
    pub z_flipped: bool,
}

impl Characteristic {
    pub fn new(eps: Rational, delta: Rational) -> Self {
        Characteristic { eps, delta }
    }

    /// [a/b; c/d] from small integers.
    pub fn from_ratios(a: i64, b: i64, c: i64, d: i64) -> Self {
        Characteristic { eps: rat(a, b), delta: rat(c, d) }
    }

    pub fn parse(eps: &str, delta: &str) -> Option<Self> {
        Some(Characteristic { eps: parse_rational(eps)?, delta: parse_rational(delta)? })
    }

    pub fn in_window(&self) -> bool {
        let two = Rational::from_integer(2.into());
        !self.eps.is_negative() && self.eps <= Rational::one() && !self.delta.is_negative() && self.delta < two
    }

    /// β = −e(−δ/2).
    pub fn beta(&self) -> CycNum {
        -CycNum::e(&(-&self.delta / Rational::from_integer(2.into())))
    }

    /// Shifts both entries into [0, 2) using θ[ε+2a; δ+2b] = e(bε/2)·θ[ε; δ].
    fn reduce_mod2(&self) -> (Characteristic, CycNum) {
        let two = Rational::from_integer(2.into());
        let a = (&self.eps / &two).floor();
        let b = (&self.delta / &two).floor();
        let eps = &self.eps - &a * &two;
        let delta = &self.delta - &b * &two;
        let mult = CycNum::e(&(&b * &eps / &two));
        (Characteristic { eps, delta }, mult)
    }

    pub fn normalize(&self) -> Normalized {
        let (c, m1) = self.reduce_mod2();
        if c.eps <= Rational::one() {
            return Normalized { ch: c, multiplier: m1, z_flipped: false };
        }
        // θ[ε;δ](τ,z) = θ[−ε;−δ](τ,−z), then reduce again.
        let flipped = Characteristic { eps: -&c.eps, delta: -&c.delta };
        let (c2, m2) = flipped.reduce_mod2();
        Normalized { ch: c2, multiplier: &m1 * &m2, z_flipped: true }
    }

    pub fn is_integral(&self) -> bool {
        self.eps.is_integer() && self.delta.is_integer()
    }

    /// Common denominator of ε and δ.
    pub fn level(&self) -> i64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.eps.denom().lcm(self.delta.denom()).to_i64().unwrap()
    }

    pub fn is_zero_char(&self) -> bool {
        self.eps.is_zero() && self.delta.is_zero()
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.eps, self.delta)
    }
}
