use super::characteristic::Characteristic;
use crate::exactnum::to_f64;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error("tau = {0} is not in the upper half-plane")]
    NotUpperHalfPlane(Complex64),
    #[error("characteristic {0} is outside (-1, 1] x (-1, 1]")]
    OutsideZeroWindow(Characteristic),
}

const MAX_TERMS: i64 = 100_000;

fn check_tau(tau: Complex64) -> Result<(), DomainError> {
    if tau.im > 0.0 && tau.im.is_finite() && tau.re.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NotUpperHalfPlane(tau))
    }
}

fn e(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * x).exp()
}

/// Partial sum of Σ_m e(m²τ/2 + m(z + δ/2)) over m ∈ ε/2 + Z, optionally with the
/// factor 2πi·m of the z-derivative.
///
/// The term modulus |q|^{m²/2}·|e(mz)| (times 2π|m|) is log-concave in m, so past the
/// vertex the ratio r of consecutive moduli only shrinks and the remaining tail is at
/// most next/(1 − r). Each direction stops once that bound is below tol/10.
fn theta_sum(eps: f64, delta: f64, tau: Complex64, z: Complex64, deriv: bool, tol: f64) -> Complex64 {
    let y = tau.im;
    let modulus = |m: f64| {
        let g = (-2.0 * PI * (m * m * y / 2.0 + m * z.im)).exp();
        if deriv {
            g * 2.0 * PI * m.abs()
        } else {
            g
        }
    };
    let term = |m: f64| {
        let t = e(tau * (m * m / 2.0) + (z + delta / 2.0) * m);
        if deriv {
            t * Complex64::new(0.0, 2.0 * PI * m)
        } else {
            t
        }
    };
    let vertex = -z.im / y;
    let n0 = (vertex - eps / 2.0).round() as i64;
    let mut sum = term(n0 as f64 + eps / 2.0);
    for dir in [1i64, -1] {
        let mut n = n0 + dir;
        let mut steps = 0;
        loop {
            let m = n as f64 + eps / 2.0;
            sum += term(m);
            let here = modulus(m);
            let next = modulus(m + dir as f64);
            let past_vertex = (m - vertex) * dir as f64 > 0.0;
            if past_vertex && here > 0.0 && next < here {
                let r = next / here;
                if next / (1.0 - r) < tol / 10.0 {
                    break;
                }
            }
            n += dir;
            steps += 1;
            if steps > MAX_TERMS {
                break;
            }
        }
    }
    sum
}

pub fn theta_numeric(ch: &Characteristic, tau: Complex64, z: Complex64, tol: f64) -> Result<Complex64, DomainError> {
    check_tau(tau)?;
    Ok(theta_sum(to_f64(&ch.eps), to_f64(&ch.delta), tau, z, false, tol))
}

/// ∂θ/∂z at (τ, z), not divided by π.
pub fn theta_deriv_numeric(
    ch: &Characteristic,
    tau: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<Complex64, DomainError> {
    check_tau(tau)?;
    Ok(theta_sum(to_f64(&ch.eps), to_f64(&ch.delta), tau, z, true, tol))
}

/// Same as `theta_numeric` with real characteristics, for the real-shift law.
fn theta_real(eps: f64, delta: f64, tau: Complex64, z: Complex64, tol: f64) -> Complex64 {
    theta_sum(eps, delta, tau, z, false, tol)
}

/// Residuals |LHS − RHS| / max(1, |LHS|, |RHS|) of the transformation laws.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformResiduals {
    /// Pseudo-periodicity in z (integral shifts only).
    pub periodicity: Option<f64>,
    /// Shift of the characteristic by even integers (integral shifts only).
    pub char_period: Option<f64>,
    /// Real shift of the characteristic against a shifted argument.
    pub char_shift: f64,
    pub parity: f64,
    pub parity_deriv: f64,
}

impl TransformResiduals {
    pub fn max(&self) -> f64 {
        [self.periodicity, self.char_period, Some(self.char_shift), Some(self.parity), Some(self.parity_deriv)]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Evaluates both sides of the four transformation laws numerically.
pub fn check_transformations(
    ch: &Characteristic,
    tau: Complex64,
    z: Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<TransformResiduals, DomainError> {
    check_tau(tau)?;
    let eps = to_f64(&ch.eps);
    let delta = to_f64(&ch.delta);
    let th = |eps: f64, delta: f64, z: Complex64| theta_real(eps, delta, tau, z, tol);
    let integral = a.fract() == 0.0 && b.fract() == 0.0;

    let (periodicity, char_period) = if integral {
        let lhs = th(eps, delta, z + tau * a + b);
        let rhs = e(Complex64::new((b * eps - a * delta) / 2.0, 0.0))
            * e(z * -a)
            * e(-tau * (a * a / 2.0))
            * th(eps, delta, z);
        let lhs2 = th(eps + 2.0 * a, delta + 2.0 * b, z);
        let rhs2 = e(Complex64::new(b * eps / 2.0, 0.0)) * th(eps, delta, z);
        (Some(rel(lhs, rhs)), Some(rel(lhs2, rhs2)))
    } else {
        (None, None)
    };
    let lhs = th(eps + a, delta + b, z);
    let rhs = e(Complex64::new(a * (b + delta) / 4.0, 0.0))
        * e(z * (a / 2.0))
        * e(tau * (a * a / 8.0))
        * th(eps, delta, z + (tau * a + b) / 2.0);
    let char_shift = rel(lhs, rhs);

    let parity = rel(th(-eps, -delta, z), th(eps, delta, -z));
    let d_lhs = theta_sum(-eps, -delta, tau, z, true, tol);
    let d_rhs = -theta_sum(eps, delta, tau, -z, true, tol);
    let parity_deriv = rel(d_lhs, d_rhs);
    Ok(TransformResiduals { periodicity, char_period, char_shift, parity, parity_deriv })
}

/// |θ[ε;δ](τ, z₀)| at the predicted zero z₀ = (1−ε)τ/2 + (1−δ)/2.
pub fn zero_location_residual(ch: &Characteristic, tau: Complex64, tol: f64) -> Result<f64, DomainError> {
    check_tau(tau)?;
    let eps = to_f64(&ch.eps);
    let delta = to_f64(&ch.delta);
    if !(eps > -1.0 && eps <= 1.0 && delta > -1.0 && delta <= 1.0) {
        return Err(DomainError::OutsideZeroWindow(ch.clone()));
    }
    let z0 = tau * ((1.0 - eps) / 2.0) + (1.0 - delta) / 2.0;
    Ok(theta_real(eps, delta, tau, z0, tol).norm())
}
