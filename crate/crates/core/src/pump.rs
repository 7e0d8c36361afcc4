//! Gaussian Schell-model pump: mutual coherence and the diagonal (sum
//! coordinate) factor of the joint distributions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::params::PumpParams;

pub type Vec2 = [f64; 2];

pub(crate) fn norm_sq(v: Vec2) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

/// Signal/idler coordinates rotated onto the diagonal (`plus`) and
/// anti-diagonal (`minus`) axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedPoint {
    pub plus: Vec2,
    pub minus: Vec2,
}

pub fn rotate_to_pm(v_s: Vec2, v_i: Vec2) -> RotatedPoint {
    let f = |k: usize| ((v_s[k] + v_i[k]) * FRAC_1_SQRT_2, (v_s[k] - v_i[k]) * FRAC_1_SQRT_2);
    let (p0, m0) = f(0);
    let (p1, m1) = f(1);
    RotatedPoint {
        plus: [p0, p1],
        minus: [m0, m1],
    }
}

pub fn rotate_from_pm(r: RotatedPoint) -> (Vec2, Vec2) {
    // The rotation is its own inverse.
    let back = rotate_to_pm(r.plus, r.minus);
    (back.plus, back.minus)
}

/// Γ(ρ₁, ρ₂) normalized to Γ(0, 0) = 1.
pub fn mutual_coherence(p: &PumpParams, rho1: Vec2, rho2: Vec2) -> Complex64 {
    let r1 = norm_sq(rho1);
    let r2 = norm_sq(rho2);
    let d = norm_sq([rho1[0] - rho2[0], rho1[1] - rho2[1]]);
    let re = -(r1 + r2) / (4.0 * p.w * p.w) - d * p.ell_c.inv_sq() / 2.0;
    let im = -(r1 - r2) * p.inv_curvature_sq() / 2.0;
    Complex64::new(re, im).exp()
}

/// Per-component variance of the position diagonal factor, 2w².
pub fn variance_rho_plus(p: &PumpParams) -> f64 {
    2.0 * p.w * p.w
}

/// Per-component variance of the momentum diagonal factor,
/// (1 + 4(w⁴/𝓡⁴ + w²/ℓ_c²)) / (8w²).
pub fn variance_q_plus(p: &PumpParams) -> f64 {
    let w2 = p.w * p.w;
    (1.0 + 4.0 * (p.w4_over_curv4() + w2 * p.ell_c.inv_sq())) / (8.0 * w2)
}

fn gaussian_2d(r2: f64, var: f64) -> f64 {
    (-r2 / (2.0 * var)).exp() / (2.0 * PI * var)
}

pub(crate) fn gaussian_1d(x: f64, var: f64) -> f64 {
    (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

/// Normalized P_Γ(ρ₊) ∝ exp[−ρ₊²/(4w²)]; independent of ℓ_c and R.
pub fn p_gamma_position(p: &PumpParams, rho_plus: Vec2) -> f64 {
    gaussian_2d(norm_sq(rho_plus), variance_rho_plus(p))
}

/// Normalized P̃_Γ(q₊) ∝ exp[−4ℓ_c²w²q₊² / (4w² + ℓ_c²(1 + 4w⁴/𝓡⁴))].
pub fn p_gamma_momentum(p: &PumpParams, q_plus: Vec2) -> f64 {
    gaussian_2d(norm_sq(q_plus), variance_q_plus(p))
}

/// One-component marginal of [`p_gamma_position`].
pub fn p_gamma_position_1d(p: &PumpParams, rho_plus: f64) -> f64 {
    gaussian_1d(rho_plus, variance_rho_plus(p))
}

/// One-component marginal of [`p_gamma_momentum`].
pub fn p_gamma_momentum_1d(p: &PumpParams, q_plus: f64) -> f64 {
    gaussian_1d(q_plus, variance_q_plus(p))
}
