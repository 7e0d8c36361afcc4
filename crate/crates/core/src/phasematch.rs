//! Longitudinal phase matching: χ̃(Δκ) for a uniform crystal, for arbitrary
//! piecewise-constant χ⁽²⁾(z) stacks and in the Gaussian approximation, plus
//! the anti-diagonal (difference coordinate) densities it induces.
//!
//! Conventions: χ̃(Δκ) = ∫ dz e^{iΔκz} χ⁽²⁾(z). A crystal described by
//! [`CrystalParams`] occupies z ∈ [z0 − L, z0], which gives the uniform-crystal
//! form exp[iΔκ(z0 − L/2)] sinc(ΔκL/2) once the overall factor L is dropped.
//! Joint densities use the degenerate mismatch Δκ = q₋²/k_p.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numerics::{bessel_j0_tail, find_root, hankel0_complex, sinc, sici, HankelOptions, RadialGrid};
use crate::params::CrystalParams;
use crate::pump::{gaussian_1d, norm_sq, Vec2};

/// Longitudinal mismatch in the Fresnel approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mismatch {
    pub value: f64,
    /// Set when a transverse wave vector exceeds 0.2·k_p, where the
    /// quadratic approximation is no longer trustworthy.
    pub paraxial_warning: bool,
}

pub const PARAXIAL_LIMIT: f64 = 0.2;

/// Δκ ≅ (β q_s − β⁻¹ q_i)²/(2k_p).
pub fn delta_kappa(q_s: Vec2, q_i: Vec2, c: &CrystalParams) -> Mismatch {
    let b = c.beta;
    let d = [b * q_s[0] - q_i[0] / b, b * q_s[1] - q_i[1] / b];
    let limit = PARAXIAL_LIMIT * c.k_p;
    Mismatch {
        value: norm_sq(d) / (2.0 * c.k_p),
        paraxial_warning: norm_sq(q_s).sqrt() > limit || norm_sq(q_i).sqrt() > limit,
    }
}

/// exp[iΔκ(z0 − L/2)] sinc(ΔκL/2).
pub fn chi_tilde_sinc(dk: f64, c: &CrystalParams) -> Complex64 {
    Complex64::from_polar(sinc(dk * c.length / 2.0), dk * (c.z0 - c.length / 2.0))
}

/// Gaussian approximation exp[i q₋²L/(2k_p)] exp[−α q₋²L/(2k_p)].
pub fn chi_tilde_gauss(q_minus: Vec2, c: &CrystalParams) -> Complex64 {
    gauss_amplitude(norm_sq(q_minus) / c.k_p, c)
}

fn gauss_amplitude(dk: f64, c: &CrystalParams) -> Complex64 {
    let x = dk * c.length / 2.0;
    Complex64::new(-c.alpha * x, x).exp()
}

/// α such that the Gaussian and sinc amplitudes reach 1/e at the same
/// mismatch: α = 1/x* with sinc(x*) = e⁻¹.
pub fn calibrate_alpha() -> f64 {
    let target = (-1.0f64).exp();
    // sinc is monotone on [2, 2.5] and changes sign about the target there.
    let x = find_root(|x| sinc(x) - target, 2.0, 2.5, 1e-15).expect("bracket holds");
    1.0 / x
}

/// χ̃ of any model as a function of the mismatch; the uniform-crystal forms
/// omit the overall factor L, profiles carry their length dimension.
pub fn chi_tilde(dk: f64, c: &CrystalParams, m: &PhaseMatchModel) -> Complex64 {
    match m {
        PhaseMatchModel::ExactSinc => chi_tilde_sinc(dk, c),
        PhaseMatchModel::GaussianApprox => gauss_amplitude(dk, c),
        PhaseMatchModel::Profile { profile } => chi_tilde_profile(dk, profile),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub z_start: f64,
    pub z_end: f64,
    pub chi2: f64,
}

/// Ordered, non-overlapping piecewise-constant χ⁽²⁾(z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonlinearityProfile {
    segments: Vec<Segment>,
}

impl NonlinearityProfile {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidProfile("no segments".into()));
        }
        for (k, s) in segments.iter().enumerate() {
            if !(s.z_start.is_finite() && s.z_end.is_finite() && s.chi2.is_finite()) {
                return Err(Error::InvalidProfile(format!("segment {k} is not finite")));
            }
            if s.z_end <= s.z_start {
                return Err(Error::InvalidProfile(format!("segment {k} has non-positive length")));
            }
            if k > 0 && s.z_start < segments[k - 1].z_end {
                return Err(Error::InvalidProfile(format!(
                    "segment {k} overlaps or precedes segment {}",
                    k - 1
                )));
            }
        }
        if segments.iter().all(|s| s.chi2 == 0.0) {
            return Err(Error::InvalidProfile("all segments have zero nonlinearity".into()));
        }
        Ok(NonlinearityProfile { segments })
    }

    /// The uniform crystal [z0 − L, z0] with unit nonlinearity.
    pub fn boxcar(c: &CrystalParams) -> Self {
        NonlinearityProfile {
            segments: vec![Segment {
                z_start: c.z0 - c.length,
                z_end: c.z0,
                chi2: 1.0,
            }],
        }
    }

    /// `n` segments of length `segment_length`, starting at `z_start` with sign +1
    /// and alternating.
    pub fn periodically_poled(z_start: f64, segment_length: f64, n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|k| Segment {
                    z_start: z_start + k as f64 * segment_length,
                    z_end: z_start + (k + 1) as f64 * segment_length,
                    chi2: if k % 2 == 0 { 1.0 } else { -1.0 },
                })
                .collect(),
        )
    }

    /// Reads `z_start,z_end,chi2` rows. A non-numeric first row is taken as a
    /// header; blank lines and `#` comments are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut segments = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split(',').map(str::trim).collect();
            let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
            match parsed {
                Ok(v) if v.len() == 3 => segments.push(Segment {
                    z_start: v[0],
                    z_end: v[1],
                    chi2: v[2],
                }),
                Ok(v) => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected 3 columns, found {}", v.len()),
                    })
                }
                Err(_) if segments.is_empty() && idx == first_content_line(text) => continue,
                Err(e) => {
                    return Err(Error::Parse {
                        line,
                        message: format!("bad number: {e}"),
                    })
                }
            }
        }
        Self::new(segments).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// ∫ χ⁽²⁾(z)² dz.
    pub fn energy(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.chi2 * s.chi2 * (s.z_end - s.z_start))
            .sum()
    }

    pub fn extent(&self) -> (f64, f64) {
        (self.segments[0].z_start, self.segments[self.segments.len() - 1].z_end)
    }

    fn max_abs_z(&self) -> f64 {
        let (a, b) = self.extent();
        a.abs().max(b.abs())
    }
}

fn first_content_line(text: &str) -> usize {
    text.lines()
        .position(|l| !l.split('#').next().unwrap_or("").trim().is_empty())
        .unwrap_or(0)
}

/// ∫ dz e^{iΔκz} χ⁽²⁾(z), summed segment by segment. Each segment integral
/// (e^{iΔκb} − e^{iΔκa})/(iΔκ) is evaluated as e^{iΔκ(a+b)/2}(b−a)sinc(Δκ(b−a)/2),
/// which has no cancellation near Δκ = 0 or near zeros of the sinc.
pub fn chi_tilde_profile(dk: f64, prof: &NonlinearityProfile) -> Complex64 {
    prof.segments
        .iter()
        .map(|s| {
            let len = s.z_end - s.z_start;
            let mid = 0.5 * (s.z_start + s.z_end);
            Complex64::from_polar(s.chi2 * len * sinc(0.5 * dk * len), dk * mid)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PhaseMatchModel {
    ExactSinc,
    GaussianApprox,
    Profile { profile: NonlinearityProfile },
}

impl PhaseMatchModel {
    pub fn name(&self) -> &'static str {
        match self {
            PhaseMatchModel::ExactSinc => "sinc",
            PhaseMatchModel::GaussianApprox => "gauss",
            PhaseMatchModel::Profile { .. } => "profile",
        }
    }
}

/// Controls the numerical transform to position space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    /// Momentum cutoff in units of √(2k_p/Δz), Δz the stack thickness.
    pub cutoff: f64,
    /// Samples per period of the fastest chirp at the cutoff.
    pub samples_per_period: f64,
    pub max_samples: usize,
    pub hankel: HankelOptions,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            cutoff: 80.0,
            samples_per_period: 10.0,
            max_samples: 2_000_000,
            hankel: HankelOptions::default(),
        }
    }
}

/// A model bound to a crystal, with its normalization constants.
#[derive(Debug, Clone)]
pub struct PhaseMatching {
    crystal: CrystalParams,
    model: PhaseMatchModel,
    /// ∫ |χ̃(q²/k_p)|² d²q.
    momentum_norm: f64,
    transform: Option<(RadialGrid, RadialGrid, HankelOptions)>,
    /// c with χ̃ ~ c/(iΔκ) + (oscillating) at large Δκ, from faces at z = 0.
    face_coefficient: f64,
}

impl PhaseMatching {
    pub fn new(c: CrystalParams, model: PhaseMatchModel) -> Result<Self> {
        Self::with_options(c, model, TransformOptions::default())
    }

    pub fn with_options(c: CrystalParams, model: PhaseMatchModel, opts: TransformOptions) -> Result<Self> {
        let c = c.validate()?;
        // Parseval: ∫|χ̃(q²/k_p)|² d²q = πk_p ∫₀^∞ |χ̃(Δκ)|² dΔκ = π²k_p ∫χ⁽²⁾² dz.
        let momentum_norm = match &model {
            PhaseMatchModel::GaussianApprox => PI * c.k_p / (c.alpha * c.length),
            PhaseMatchModel::ExactSinc => PI * PI * c.k_p / c.length,
            PhaseMatchModel::Profile { profile } => PI * PI * c.k_p * profile.energy(),
        };
        let mut pm = PhaseMatching {
            crystal: c,
            model,
            momentum_norm,
            transform: None,
            face_coefficient: 0.0,
        };
        pm.face_coefficient = pm.origin_face_coefficient();
        if pm.needs_transform() {
            pm.transform = Some(pm.build_transform(&opts)?);
        }
        Ok(pm)
    }

    pub fn crystal(&self) -> &CrystalParams {
        &self.crystal
    }

    pub fn model(&self) -> &PhaseMatchModel {
        &self.model
    }

    fn is_centered(&self) -> bool {
        let c = &self.crystal;
        (c.z0 - c.length / 2.0).abs() <= 1e-12 * c.length
    }

    fn needs_transform(&self) -> bool {
        match self.model {
            PhaseMatchModel::GaussianApprox => false,
            PhaseMatchModel::ExactSinc => !self.is_centered(),
            PhaseMatchModel::Profile { .. } => true,
        }
    }

    /// (thickness, largest |z|) of the nonlinear region.
    fn lengths(&self) -> (f64, f64) {
        let c = &self.crystal;
        match &self.model {
            PhaseMatchModel::Profile { profile } => {
                let (a, b) = profile.extent();
                (b - a, profile.max_abs_z())
            }
            _ => (c.length, (c.z0 - c.length).abs().max(c.z0.abs())),
        }
    }

    fn build_transform(&self, opts: &TransformOptions) -> Result<(RadialGrid, RadialGrid, HankelOptions)> {
        let k_p = self.crystal.k_p;
        let (thick, zmax) = self.lengths();
        let q_max = opts.cutoff * (2.0 * k_p / thick).sqrt();
        // Local chirp period of e^{iq²z/k_p} at the cutoff is πk_p/(q·z).
        let period = PI * k_p / (q_max * zmax.max(thick));
        let n = (opts.samples_per_period * q_max / period).ceil() as usize;
        if n > opts.max_samples {
            return Err(Error::GridTooCoarse {
                what: "position-space transform of the phase-matching function".into(),
                suggested_min: n,
            });
        }
        let n = n.max(RadialGrid::MIN_SAMPLES);
        let h = q_max / n as f64;
        let (re, im): (Vec<f64>, Vec<f64>) = (0..n)
            .map(|k| {
                let q = (k as f64 + 0.5) * h;
                let a = self.amplitude(q * q / k_p);
                (a.re, a.im)
            })
            .unzip();
        Ok((RadialGrid::new(q_max, re)?, RadialGrid::new(q_max, im)?, opts.hankel))
    }

    fn origin_face_coefficient(&self) -> f64 {
        let c = &self.crystal;
        let (profile, scale) = match &self.model {
            PhaseMatchModel::GaussianApprox => return 0.0,
            PhaseMatchModel::ExactSinc => (NonlinearityProfile::boxcar(c), 1.0 / c.length),
            PhaseMatchModel::Profile { profile } => (profile.clone(), 1.0),
        };
        let (thick, _) = self.lengths();
        let at_origin = |z: f64| z.abs() <= 1e-12 * thick;
        profile
            .segments()
            .iter()
            .map(|s| {
                let end = if at_origin(s.z_end) { s.chi2 } else { 0.0 };
                let start = if at_origin(s.z_start) { s.chi2 } else { 0.0 };
                end - start
            })
            .sum::<f64>()
            * scale
    }

    pub fn amplitude(&self, dk: f64) -> Complex64 {
        chi_tilde(dk, &self.crystal, &self.model)
    }

    /// Normalized P̃_χ(q₋) = |χ̃(q₋²/k_p)|² / ∫|χ̃|² d²q₋.
    pub fn p_momentum(&self, q_minus: Vec2) -> f64 {
        self.momentum_radial(norm_sq(q_minus).sqrt())
    }

    fn momentum_radial(&self, q: f64) -> f64 {
        let c = &self.crystal;
        let dk = q * q / c.k_p;
        let v = match &self.model {
            PhaseMatchModel::GaussianApprox => (-c.alpha * dk * c.length).exp(),
            PhaseMatchModel::ExactSinc => sinc(dk * c.length / 2.0).powi(2),
            PhaseMatchModel::Profile { profile } => chi_tilde_profile(dk, profile).norm_sqr(),
        };
        v / self.momentum_norm
    }

    /// Per-component variance of the Gaussian-approximation factors.
    pub fn gauss_variance_q_minus(&self) -> f64 {
        variance_q_minus_gauss(&self.crystal)
    }

    pub fn gauss_variance_rho_minus(&self) -> f64 {
        variance_rho_minus_gauss(&self.crystal)
    }

    /// Position amplitude (1/(2π)²)∫d²q e^{−iq·ρ} χ̃(q²/k_p) by numerical
    /// Hankel transform, for any model with a position transform table.
    pub fn position_amplitude_numerical(&self, rho: f64) -> Result<Complex64> {
        let table;
        let (re, im, opts) = match &self.transform {
            Some((re, im, o)) => (re, im, o),
            None => {
                table = self.build_transform(&TransformOptions::default())?;
                (&table.0, &table.1, &table.2)
            }
        };
        let mut a = hankel0_complex(re, im, rho, opts)?;
        // A face at z = 0 leaves a non-oscillating c·k_p/(iq²) tail whose
        // transform beyond the cutoff is added in closed form. Exactly on
        // axis that tail diverges logarithmically and is left out.
        if self.face_coefficient != 0.0 && rho > 0.0 {
            let t = bessel_j0_tail(re.r_max() * rho)?;
            a += Complex64::new(0.0, -self.face_coefficient * self.crystal.k_p * t / (2.0 * PI));
        }
        Ok(a)
    }

    /// ∫ |A(ρ)|² d²ρ for the amplitude of [`position_amplitude_numerical`].
    pub fn position_norm(&self) -> f64 {
        self.momentum_norm / (4.0 * PI * PI)
    }

    /// Normalized P_χ(ρ₋).
    pub fn p_position(&self, rho_minus: Vec2) -> Result<f64> {
        self.position_radial(norm_sq(rho_minus).sqrt())
    }

    fn position_radial(&self, rho: f64) -> Result<f64> {
        let c = &self.crystal;
        match &self.model {
            PhaseMatchModel::GaussianApprox => {
                let var = variance_rho_minus_gauss(c);
                Ok((-rho * rho / (2.0 * var)).exp() / (2.0 * PI * var))
            }
            PhaseMatchModel::ExactSinc if self.is_centered() => {
                Ok(centered_sinc_position(rho, c))
            }
            _ => Ok(self.position_amplitude_numerical(rho)?.norm_sqr() / self.position_norm()),
        }
    }

    /// ρ at which the normalized |χ̃|² falls to 1/e of its on-axis value:
    /// the momentum width measure used when second moments diverge.
    pub fn momentum_half_width(&self) -> Option<f64> {
        let c = &self.crystal;
        match &self.model {
            PhaseMatchModel::GaussianApprox => Some((c.k_p / (c.alpha * c.length)).sqrt()),
            PhaseMatchModel::ExactSinc => {
                let target = (-0.5f64).exp();
                let x = find_root(|x| sinc(x) - target, 0.1, 2.5, 1e-14).ok()?;
                Some((2.0 * c.k_p * x / c.length).sqrt())
            }
            PhaseMatchModel::Profile { .. } => {
                let peak = self.momentum_radial(0.0);
                if peak <= 0.0 {
                    return None;
                }
                let target = peak * (-1.0f64).exp();
                let (thick, _) = self.lengths();
                let step = 0.01 * (2.0 * c.k_p / thick).sqrt();
                let mut lo = 0.0;
                for k in 1..100_000 {
                    let hi = k as f64 * step;
                    if self.momentum_radial(hi) < target {
                        return find_root(|q| self.momentum_radial(q) - target, lo, hi, 1e-12 * hi).ok();
                    }
                    lo = hi;
                }
                None
            }
        }
    }

    /// One transverse component of P̃_χ at each of `xs`.
    pub fn momentum_marginal(&self, xs: &[f64], exec: Execution) -> Vec<f64> {
        match &self.model {
            PhaseMatchModel::GaussianApprox => {
                let var = self.gauss_variance_q_minus();
                xs.iter().map(|&x| gaussian_1d(x, var)).collect()
            }
            _ => {
                let (thick, zmax) = self.lengths();
                let scale = (2.0 * self.crystal.k_p / thick).sqrt();
                let y_max = 40.0 * scale;
                let period = PI * self.crystal.k_p / (y_max * (zmax + thick));
                let n = ((10.0 * y_max / period).ceil() as usize).clamp(2_000, 400_000);
                exec.map(xs.len(), |i| {
                    radial_marginal(|r| self.momentum_radial(r), xs[i], y_max, n)
                })
            }
        }
    }

    /// One transverse component of P_χ at each of `xs`.
    pub fn position_marginal(&self, xs: &[f64], exec: Execution) -> Result<Vec<f64>> {
        let c = self.crystal;
        match &self.model {
            PhaseMatchModel::GaussianApprox => {
                let var = self.gauss_variance_rho_minus();
                Ok(xs.iter().map(|&x| gaussian_1d(x, var)).collect())
            }
            PhaseMatchModel::ExactSinc if self.is_centered() => {
                let unit = (c.length / (2.0 * c.k_p)).sqrt();
                let y_max = 20.0 * unit;
                Ok(exec.map(xs.len(), |i| {
                    radial_marginal(|r| centered_sinc_position(r, &c), xs[i], y_max, 8_000)
                }))
            }
            _ => {
                let (thick, _) = self.lengths();
                let unit = (thick / (2.0 * c.k_p)).sqrt();
                let y_max = 16.0 * unit;
                let x_max = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let r_max = (x_max * x_max + y_max * y_max).sqrt();
                let n_tab = 1024;
                let dr = r_max / n_tab as f64;
                let table: Vec<f64> = exec
                    .map(n_tab, |k| self.position_radial((k as f64 + 0.5) * dr))
                    .into_iter()
                    .collect::<Result<_>>()?;
                let lookup = |r: f64| {
                    let t = r / dr - 0.5;
                    if t <= 0.0 {
                        return table[0];
                    }
                    let k = t.floor() as usize;
                    if k + 1 >= n_tab {
                        return 0.0;
                    }
                    let f = t - k as f64;
                    table[k] * (1.0 - f) + table[k + 1] * f
                };
                Ok(exec.map(xs.len(), |i| radial_marginal(lookup, xs[i], y_max, 4_000)))
            }
        }
    }
}

/// Normalized (k_p/(π²L))[π/2 − Si(k_pρ²/(2L))]² of the centered crystal.
fn centered_sinc_position(rho: f64, c: &CrystalParams) -> f64 {
    let (si, _) = sici(c.k_p * rho * rho / (2.0 * c.length));
    let a = FRAC_PI_2 - si;
    c.k_p / (PI * PI * c.length) * a * a
}

/// 2∫₀^{y_max} f(√(x² + y²)) dy by the midpoint rule.
fn radial_marginal<F: Fn(f64) -> f64>(f: F, x: f64, y_max: f64, n: usize) -> f64 {
    let h = y_max / n as f64;
    let s: f64 = (0..n)
        .map(|k| {
            let y = (k as f64 + 0.5) * h;
            f((x * x + y * y).sqrt())
        })
        .sum();
    2.0 * s * h
}

/// Δq₋,ⱼ² = k_p/(2αL).
pub fn variance_q_minus_gauss(c: &CrystalParams) -> f64 {
    c.k_p / (2.0 * c.alpha * c.length)
}

/// Δρ₋,ⱼ² = L(α⁻¹ + α)/(2k_p).
pub fn variance_rho_minus_gauss(c: &CrystalParams) -> f64 {
    c.length * (1.0 / c.alpha + c.alpha) / (2.0 * c.k_p)
}

/// Normalized P̃_χ(q₋) for `m` bound to `c`.
pub fn p_chi_momentum(q_minus: Vec2, c: &CrystalParams, m: &PhaseMatchModel) -> Result<f64> {
    Ok(PhaseMatching::new(*c, m.clone())?.p_momentum(q_minus))
}

/// Normalized P_χ(ρ₋) for `m` bound to `c`.
pub fn p_chi_position(rho_minus: Vec2, c: &CrystalParams, m: &PhaseMatchModel) -> Result<f64> {
    PhaseMatching::new(*c, m.clone())?.p_position(rho_minus)
}
