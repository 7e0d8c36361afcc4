use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::adaptive_simpson;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// sin(x)/x.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Sine integral Si(x) = ∫₀ˣ sin(y)/y dy for x ≥ 0.
pub fn sine_integral(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    Ok(sici(x).0)
}

/// Cosine integral Ci(x) = −∫ₓ^∞ cos(y)/y dy for x > 0.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    Ok(sici(x).1)
}

const SICI_SPLIT: f64 = 4.0;

/// (Si(x), Ci(x)) for x ≥ 0. Ci(0) is −∞.
///
/// Power series up to x = 4; above that the auxiliary functions f and g are
/// evaluated through the continued fraction of E₁(ix), which (unlike the
/// divergent asymptotic series) converges to full precision at the split.
pub fn sici(x: f64) -> (f64, f64) {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if x <= SICI_SPLIT {
        let x2 = x * x;
        let mut si = 0.0;
        let mut t = x;
        let mut k = 0usize;
        loop {
            let term = t / (2 * k + 1) as f64;
            si += term;
            if term.abs() < 1e-18 * si.abs() {
                break;
            }
            k += 1;
            t *= -x2 / ((2 * k) * (2 * k + 1)) as f64;
        }
        let mut ci = 0.0;
        let mut u = 1.0;
        for k in 1.. {
            u *= -x2 / ((2 * k - 1) * (2 * k)) as f64;
            let term = u / (2 * k) as f64;
            ci += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        (si, EULER_GAMMA + x.ln() + ci)
    } else {
        // Modified Lentz evaluation of e^{ix} E₁(ix).
        const TINY: f64 = 1e-300;
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1.0 / TINY, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 2..500 {
            let a = -(((i - 1) * (i - 1)) as f64);
            b += 2.0;
            d = (d * a + b).inv();
            c = b + c.inv() * a;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
                break;
            }
        }
        h *= Complex64::new(x.cos(), -x.sin());
        (FRAC_PI_2 + h.im, -h.re)
    }
}

// J₀ is tabulated as piecewise Chebyshev series on unit intervals below
// J0_SPLIT and evaluated by the Hankel asymptotic expansion above it.
const J0_SPLIT: f64 = 25.0;
const CHEB_DEGREE: usize = 14;

struct ChebTable {
    coeffs: Vec<[f64; CHEB_DEGREE]>,
}

fn j0_by_integral(x: f64) -> f64 {
    // (1/π)∫₀^π cos(x sin θ) dθ; the trapezoid rule over a full period is
    // spectrally accurate for this periodic integrand.
    const M: usize = 96;
    let s: f64 = (0..M)
        .map(|m| (x * (PI * m as f64 / M as f64).sin()).cos())
        .sum();
    s / M as f64
}

fn cheb_table() -> &'static ChebTable {
    static TABLE: OnceLock<ChebTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = CHEB_DEGREE;
        let coeffs = (0..J0_SPLIT as usize)
            .map(|seg| {
                let mid = seg as f64 + 0.5;
                let f: Vec<f64> = (0..n)
                    .map(|m| {
                        let t = (PI * (m as f64 + 0.5) / n as f64).cos();
                        j0_by_integral(mid + 0.5 * t)
                    })
                    .collect();
                let mut c = [0.0; CHEB_DEGREE];
                for (j, cj) in c.iter_mut().enumerate() {
                    let s: f64 = f
                        .iter()
                        .enumerate()
                        .map(|(m, fm)| fm * (PI * j as f64 * (m as f64 + 0.5) / n as f64).cos())
                        .sum();
                    *cj = 2.0 * s / n as f64;
                }
                c
            })
            .collect();
        ChebTable { coeffs }
    })
}

fn clenshaw(c: &[f64; CHEB_DEGREE], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &cj in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + 0.5 * c[0]
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < J0_SPLIT {
        let seg = ax.floor() as usize;
        let t = 2.0 * (ax - seg as f64) - 1.0;
        clenshaw(&cheb_table().coeffs[seg], t)
    } else {
        hankel_asymptotic(0.0, ax)
    }
}

/// Large-argument expansion of J_ν with μ = 4ν², valid for x ≳ 25.
fn hankel_asymptotic(mu: f64, x: f64) -> f64 {
    let eight_x = 8.0 * x;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0f64;
    for m in 1..60 {
        let k = (2 * m - 1) as f64;
        let next = a * (mu - k * k) / (m as f64 * eight_x);
        if next.abs() > a.abs() {
            break;
        }
        a = next;
        match m % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (mu.sqrt() / 4.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// ∫ₓ^∞ J₀(t)/t dt for x > 0.
pub fn bessel_j0_tail(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::NegativeArgument(x));
    }
    if x <= 8.0 {
        // −γ − ln(x/2) + Σ (−1)^{k+1} (x/2)^{2k} / (2k (k!)²)
        let h2 = x * x / 4.0;
        let (mut term, mut sum) = (1.0, 0.0);
        for k in 1..60 {
            term *= -h2 / (k * k) as f64;
            let add = -term / (2 * k) as f64;
            sum += add;
            if add.abs() < 1e-17 {
                break;
            }
        }
        return Ok(-EULER_GAMMA - (x / 2.0).ln() + sum);
    }
    if x < J0_SPLIT {
        let gap = adaptive_simpson(&|t: f64| bessel_j0(t) / t, x, J0_SPLIT, 1e-13, 20);
        return Ok(gap + tail_asymptotic(J0_SPLIT));
    }
    Ok(tail_asymptotic(x))
}

// Repeated integration by parts:
// ∫ₓ^∞ J₀/tⁿ = −J₁x⁻ⁿ + (n+1)J₀x⁻ⁿ⁻¹ − (n+1)² ∫ₓ^∞ J₀/tⁿ⁺².
fn tail_asymptotic(x: f64) -> f64 {
    let (j0, j1) = (hankel_asymptotic(0.0, x), hankel_asymptotic(4.0, x));
    let mut coeff = 1.0;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..40 {
        let n = (2 * k + 1) as f64;
        let term = coeff * (-j1 * x.powf(-n) + (n + 1.0) * j0 * x.powf(-n - 1.0));
        let size = coeff.abs() * x.powf(-n);
        if size > prev {
            break;
        }
        sum += term;
        prev = size;
        if size < 1e-18 {
            break;
        }
        coeff *= -(n + 1.0) * (n + 1.0);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{adaptive_simpson, find_root};
    use proptest::prelude::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15);
        // Series and direct forms meet smoothly at the switch.
        let x = 1e-4;
        assert!((sinc(x * (1.0 - 1e-12)) - x.sin() / x).abs() < 1e-15);
        assert!((sinc(0.9e-4) - (0.9e-4f64).sin() / 0.9e-4).abs() < 1e-15);
    }

    #[test]
    fn sinc_one_over_e_abscissa() {
        let target = (-1.0f64).exp();
        let x = find_root(|x| sinc(x) - target, 2.0, 2.5, 1e-14).unwrap();
        // Frozen from an independent Brent solve: 2.199123071161498.
        assert!((x - 2.199_123_071_161_498).abs() < 1e-12, "{x}");
        assert!((sinc(x) - target).abs() < 1e-14);
    }

    #[test]
    fn sine_integral_reference_points() {
        assert_eq!(sine_integral(0.0).unwrap(), 0.0);
        let oracle = adaptive_simpson(&sinc, 0.0, 1.0, 1e-14, 50);
        assert!((sine_integral(1.0).unwrap() - oracle).abs() < 1e-10);
        assert!((sine_integral(1e4).unwrap() - FRAC_PI_2).abs() < 1e-4);
        assert!(matches!(
            sine_integral(-1.0),
            Err(Error::NegativeArgument(_))
        ));
    }

    #[test]
    fn sici_matches_quadrature_across_split() {
        for &x in &[0.1, 0.5, 2.0, 3.9, 4.0, 4.0001, 4.5, 7.0, 12.0, 30.0] {
            let (si, ci) = sici(x);
            let si_ref = adaptive_simpson(&sinc, 0.0, x, 1e-14, 60);
            // Ci(x) − γ − ln x = ∫₀ˣ (cos t − 1)/t dt
            let ci_ref = EULER_GAMMA
                + x.ln()
                + adaptive_simpson(
                    &|t: f64| if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t },
                    0.0,
                    x,
                    1e-14,
                    60,
                );
            assert!((si - si_ref).abs() < 1e-10, "Si({x}): {si} vs {si_ref}");
            assert!((ci - ci_ref).abs() < 1e-10, "Ci({x}): {ci} vs {ci_ref}");
        }
        let (si_lo, ci_lo) = sici(SICI_SPLIT);
        let (si_hi, ci_hi) = sici(SICI_SPLIT * (1.0 + 1e-15));
        assert!((si_lo - si_hi).abs() < 1e-13 && (ci_lo - ci_hi).abs() < 1e-13);
    }

    #[test]
    fn j0_reference_values() {
        let zeros = [
            2.404_825_557_695_773,
            5.520_078_110_286_311,
            8.653_727_912_911_013,
            11.791_534_439_014_281,
            14.930_917_708_487_787,
            18.071_063_967_910_923,
            21.211_636_629_879_26,
            24.352_471_530_749_302,
            27.493_479_132_040_253,
        ];
        for z in zeros {
            assert!(bessel_j0(z).abs() < 1e-12, "J0({z}) = {}", bessel_j0(z));
        }
        assert!((bessel_j0(0.0) - 1.0).abs() < 1e-14);
        assert!((bessel_j0(1.0) - 0.765_197_686_557_966_6).abs() < 1e-13);
        assert!((bessel_j0(10.0) + 0.245_935_764_451_348_3).abs() < 1e-13);
    }

    #[test]
    fn j0_matches_taylor_series_below_eight() {
        let taylor = |x: f64| {
            let mut s = 0.0;
            let mut t = 1.0;
            for k in 1..60 {
                s += t;
                t *= -(x * x / 4.0) / (k * k) as f64;
            }
            s
        };
        for i in 0..=160 {
            let x = i as f64 * 0.05;
            assert!((bessel_j0(x) - taylor(x)).abs() < 1e-12, "x = {x}");
        }
    }

    proptest! {
        #[test]
        fn j0_matches_simpson_integral(x in 0.0f64..200.0) {
            let oracle = adaptive_simpson(&|t: f64| (x * t.sin()).cos(), 0.0, PI, 1e-13, 60) / PI;
            prop_assert!((bessel_j0(x) - oracle).abs() < 1e-8);
            prop_assert_eq!(bessel_j0(-x), bessel_j0(x));
        }

        #[test]
        fn sinc_is_even(x in -50.0f64..50.0) {
            prop_assert_eq!(sinc(x), sinc(-x));
        }
    }
    #[test]
    fn bessel_tail_integral() {
        // Derivative is −J₀(x)/x.
        for x in [0.3, 2.0, 7.5, 30.0] {
            let h = 1e-4;
            let d = (bessel_j0_tail(x + h).unwrap() - bessel_j0_tail(x - h).unwrap()) / (2.0 * h);
            assert!((d + bessel_j0(x) / x).abs() < 1e-6, "x={x}");
        }
        // Leading asymptotic −√(2/π) x^{−3/2} sin(x − π/4).
        let x = 1500.0f64;
        let lead = -(2.0 / PI).sqrt() * x.powf(-1.5) * (x - PI / 4.0).sin();
        assert!((bessel_j0_tail(x).unwrap() - lead).abs() < 5e-3 * x.powf(-1.5));
        assert!(bessel_j0_tail(0.0).is_err());
    }

    #[test]
    fn bessel_tail_branches_agree_with_quadrature() {
        let f = |t: f64| bessel_j0(t) / t;
        for x in [0.5, 7.99, 8.01, 12.0, 24.9, 25.1, 40.0] {
            let direct = adaptive_simpson(&f, x, 60.0, 1e-14, 50) + bessel_j0_tail(60.0).unwrap();
            assert!((bessel_j0_tail(x).unwrap() - direct).abs() < 1e-11, "x={x}");
        }
    }
}
