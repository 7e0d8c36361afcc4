use std::f64::consts::PI;

use num_complex::Complex64;

use super::special::bessel_j0;
use crate::error::{Error, Result};

/// Recursive adaptive Simpson quadrature of `f` on [a, b].
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    // Split once up front so integrands that vanish at the three initial
    // nodes are not mistaken for zero.
    let m = 0.5 * (a + b);
    let half = |lo: f64, hi: f64| {
        let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        step(f, lo, hi, flo, fmid, fhi, whole, 0.5 * tol, max_depth)
    };
    half(a, m) + half(m, b)
}

/// Bisection root of `f` on a sign-changing bracket, to bracket width `tol`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Uniform midpoint samples f(r_k), r_k = (k + ½)·r_max/n.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    values: Vec<f64>,
}

impl RadialGrid {
    pub const MIN_SAMPLES: usize = 16;

    pub fn new(r_max: f64, values: Vec<f64>) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidAxis(format!("radial extent {r_max} must be positive")));
        }
        if values.len() < Self::MIN_SAMPLES {
            return Err(Error::GridTooCoarse {
                what: "radial grid".into(),
                suggested_min: Self::MIN_SAMPLES,
            });
        }
        Ok(RadialGrid { r_max, values })
    }

    pub fn sample<F: Fn(f64) -> f64>(r_max: f64, n: usize, f: F) -> Result<Self> {
        let h = r_max / n as f64;
        Self::new(r_max, (0..n).map(|k| f((k as f64 + 0.5) * h)).collect())
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.r_max / self.values.len() as f64
    }

    pub fn radius(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.step()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelOptions {
    /// Minimum samples per J₀ oscillation period at the grid edge.
    pub min_samples_per_period: f64,
}

impl Default for HankelOptions {
    fn default() -> Self {
        HankelOptions {
            min_samples_per_period: 4.0,
        }
    }
}

fn check_resolution(h: f64, r_max: f64, rho: f64, opts: &HankelOptions) -> Result<()> {
    let period = 2.0 * PI / rho.abs();
    if period < opts.min_samples_per_period * h {
        let need = (opts.min_samples_per_period * r_max * rho.abs() / (2.0 * PI)).ceil() as usize;
        return Err(Error::GridTooCoarse {
            what: format!("Hankel transform at rho = {rho}"),
            suggested_min: need.max(RadialGrid::MIN_SAMPLES),
        });
    }
    Ok(())
}

/// Order-zero Hankel transform (1/2π)∫₀^∞ q f(q) J₀(qρ) dq, which is the 2D
/// inverse Fourier transform (with the 1/(2π)² convention) of a radially
/// symmetric function.
///
/// Midpoint sum plus the Euler–Maclaurin h² correction at q = 0, where the
/// integrand has slope f(0). The upper edge is taken as a hard cutoff.
pub fn hankel0(f: &RadialGrid, rho: f64) -> Result<f64> {
    hankel0_with(f, rho, &HankelOptions::default())
}

pub fn hankel0_with(f: &RadialGrid, rho: f64, opts: &HankelOptions) -> Result<f64> {
    let h = f.step();
    check_resolution(h, f.r_max, rho, opts)?;
    let s: f64 = f
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let q = (k as f64 + 0.5) * h;
            q * v * bessel_j0(q * rho)
        })
        .sum();
    Ok((s * h - origin_correction(&f.values, h)) / (2.0 * PI))
}

/// h²/24 · f(0), with f(0) extrapolated from the first two samples of an
/// even function.
fn origin_correction(v: &[f64], h: f64) -> f64 {
    let f0 = (9.0 * v[0] - v[1]) / 8.0;
    h * h / 24.0 * f0
}

/// Transform of a complex integrand given as separate real and imaginary
/// grids on the same support.
pub fn hankel0_complex(re: &RadialGrid, im: &RadialGrid, rho: f64, opts: &HankelOptions) -> Result<Complex64> {
    if re.len() != im.len() || re.r_max != im.r_max {
        return Err(Error::InvalidAxis("real and imaginary grids differ".into()));
    }
    let h = re.step();
    check_resolution(h, re.r_max, rho, opts)?;
    let (mut sr, mut si) = (0.0, 0.0);
    for (k, (a, b)) in re.values.iter().zip(&im.values).enumerate() {
        let q = (k as f64 + 0.5) * h;
        let j = q * bessel_j0(q * rho);
        sr += a * j;
        si += b * j;
    }
    let sr = sr * h - origin_correction(&re.values, h);
    let si = si * h - origin_correction(&im.values, h);
    Ok(Complex64::new(sr, si) / (2.0 * PI))
}
