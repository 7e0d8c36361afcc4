//! Uncertainty-product entanglement witnesses per transverse component, built
//! from the Gaussian-approximation variances, and the (w/ℓ_c, √(L/(k_p w²)))
//! phase diagram.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::params::{CrystalParams, PumpParams};
use crate::phasematch::{variance_q_minus_gauss, variance_rho_minus_gauss};
use crate::pump::{variance_q_plus, variance_rho_plus};

pub const THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correlation {
    Correlated,
    Anti,
    None,
}

impl Correlation {
    /// Correlated when the difference coordinate is the sharper one.
    pub fn from_widths(plus: f64, minus: f64) -> Self {
        let tol = 1e-12 * plus.max(minus);
        if (plus - minus).abs() <= tol {
            Correlation::None
        } else if minus < plus {
            Correlation::Correlated
        } else {
            Correlation::Anti
        }
    }
}

/// Per-component variances Δρ₊², Δq₊², Δρ₋², Δq₋².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub rho_plus_sq: f64,
    pub q_plus_sq: f64,
    pub rho_minus_sq: f64,
    pub q_minus_sq: f64,
}

pub fn variances(p: &PumpParams, c: &CrystalParams) -> VarianceReport {
    VarianceReport {
        rho_plus_sq: variance_rho_plus(p),
        q_plus_sq: variance_q_plus(p),
        rho_minus_sq: variance_rho_minus_gauss(c),
        q_minus_sq: variance_q_minus_gauss(c),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub product_pm: f64,
    pub product_mp: f64,
    pub type1: bool,
    pub type2: bool,
    pub correlation_position: Correlation,
    pub correlation_momentum: Correlation,
}

/// Δρ₊Δq₋ = √(k_p w²/(αL)).
pub fn product_pm(p: &PumpParams, c: &CrystalParams) -> f64 {
    (p.k_p * p.w * p.w / (c.alpha * c.length)).sqrt()
}

/// Δρ₋Δq₊ = √(((1+α⁻²)/16)(1 + 4w⁴/𝓡⁴ + 4w²/ℓ_c²)·αL/(k_p w²)).
pub fn product_mp(p: &PumpParams, c: &CrystalParams) -> f64 {
    let a = c.alpha;
    let w2 = p.w * p.w;
    let pump = 1.0 + 4.0 * p.w4_over_curv4() + 4.0 * w2 * p.ell_c.inv_sq();
    ((1.0 + 1.0 / (a * a)) / 16.0 * pump * a * c.length / (p.k_p * w2)).sqrt()
}

pub fn classify(p: &PumpParams, c: &CrystalParams) -> WitnessReport {
    let v = variances(p, c);
    let (pm, mp) = (product_pm(p, c), product_mp(p, c));
    WitnessReport {
        product_pm: pm,
        product_mp: mp,
        type1: pm < THRESHOLD,
        type2: mp < THRESHOLD,
        correlation_position: Correlation::from_widths(v.rho_plus_sq.sqrt(), v.rho_minus_sq.sqrt()),
        correlation_momentum: Correlation::from_widths(v.q_plus_sq.sqrt(), v.q_minus_sq.sqrt()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    None,
    /// Δρ₊Δq₋ < 1/2: position anti-correlation with momentum correlation.
    Type1AntiposCorrmom,
    /// Δρ₋Δq₊ < 1/2: position correlation with momentum anti-correlation.
    Type2PosAntimom,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::None => "none",
            Classification::Type1AntiposCorrmom => "type1_antipos_corrmom",
            Classification::Type2PosAntimom => "type2_pos_antimom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagramCell {
    /// w/ℓ_c
    pub x: f64,
    /// √(L/(k_p w²))
    pub y: f64,
    pub classification: Classification,
}

/// Both witnesses in the dimensionless variables with R = ∞:
/// Δρ₊Δq₋ = 1/(y√α) and (Δρ₋Δq₊)² = ((1+α⁻²)/16)(1+4x²)αy².
pub fn dimensionless_products(x: f64, y: f64, alpha: f64) -> (f64, f64) {
    let pm = 1.0 / (y * alpha.sqrt());
    let mp = ((1.0 + 1.0 / (alpha * alpha)) / 16.0 * (1.0 + 4.0 * x * x) * alpha * y * y).sqrt();
    (pm, mp)
}

pub fn classify_cell(x: f64, y: f64, alpha: f64) -> Classification {
    let (pm, mp) = dimensionless_products(x, y, alpha);
    let (t1, t2) = (pm < THRESHOLD, mp < THRESHOLD);
    assert!(!(t1 && t2), "both witnesses satisfied at x={x}, y={y}, alpha={alpha}");
    if t1 {
        Classification::Type1AntiposCorrmom
    } else if t2 {
        Classification::Type2PosAntimom
    } else {
        Classification::None
    }
}

/// Sample positions of the sweep: x is an inclusive linspace (so x = 0 is
/// on the grid), y is cell-centered so that every y is strictly positive.
pub fn sweep_coordinates(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x0, x1) = x_range;
    let (y0, y1) = y_range;
    if !(x0.is_finite() && x1.is_finite() && x0 >= 0.0 && x1 > x0) {
        return Err(Error::InvalidAxis(format!("x range [{x0}, {x1}] must satisfy 0 <= min < max")));
    }
    if !(y0.is_finite() && y1.is_finite() && y0 >= 0.0 && y1 > y0) {
        return Err(Error::InvalidAxis(format!("y range [{y0}, {y1}] must satisfy 0 <= min < max")));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidAxis("sweep counts must be positive".into()));
    }
    let xs = if nx == 1 {
        vec![x0]
    } else {
        (0..nx).map(|i| x0 + (x1 - x0) * i as f64 / (nx - 1) as f64).collect()
    };
    let ys = (0..ny).map(|j| y0 + (y1 - y0) * (j as f64 + 0.5) / ny as f64).collect();
    Ok((xs, ys))
}

pub fn sweep_phase_diagram(
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
    alpha: f64,
) -> Result<Vec<PhaseDiagramCell>> {
    sweep_phase_diagram_with(x_range, y_range, nx, ny, alpha, Execution::default())
}

/// Cells in x-major order.
pub fn sweep_phase_diagram_with(
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
    alpha: f64,
    exec: Execution,
) -> Result<Vec<PhaseDiagramCell>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonPositiveParameter("alpha"));
    }
    let (xs, ys) = sweep_coordinates(x_range, y_range, nx, ny)?;
    Ok(exec.map(nx * ny, |k| {
        let (x, y) = (xs[k / ny], ys[k % ny]);
        PhaseDiagramCell {
            x,
            y,
            classification: classify_cell(x, y, alpha),
        }
    }))
}

pub fn sweep_to_csv(cells: &[PhaseDiagramCell]) -> String {
    let mut out = String::from("x,y,classification\n");
    for c in cells {
        out.push_str(&format!("{:.8e},{:.8e},{}\n", c.x, c.y, c.classification.as_str()));
    }
    out
}

/// Fraction of cells in each class: (none, type1, type2).
pub fn area_fractions(cells: &[PhaseDiagramCell]) -> (f64, f64, f64) {
    let n = cells.len().max(1) as f64;
    let count = |k: Classification| cells.iter().filter(|c| c.classification == k).count() as f64 / n;
    (
        count(Classification::None),
        count(Classification::Type1AntiposCorrmom),
        count(Classification::Type2PosAntimom),
    )
}

/// Type1 boundary y = 2/√α.
pub fn type1_boundary(alpha: f64) -> f64 {
    2.0 / alpha.sqrt()
}

/// Type2 boundary y(x) = 2/√((α+α⁻¹)(1+4x²)).
pub fn type2_boundary(x: f64, alpha: f64) -> f64 {
    2.0 / ((alpha + 1.0 / alpha) * (1.0 + 4.0 * x * x)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Extent;
    use proptest::prelude::*;

    fn crystal(len: f64) -> CrystalParams {
        CrystalParams::new(len, 10.0)
    }

    #[test]
    fn product_pm_examples() {
        let p = PumpParams::coherent(1.0, 1.0);
        let c = CrystalParams::new(1.0, 1.0);
        assert!((product_pm(&p, &c) - (1.0f64 / 0.455).sqrt()).abs() < 1e-14);
        assert!((product_pm(&p, &c) - 1.4825).abs() < 1e-4);
        let v = variances(&p, &c);
        assert!((product_pm(&p, &c) - (v.rho_plus_sq * v.q_minus_sq).sqrt()).abs() < 1e-14);
        let base = product_pm(&p, &c);
        for ell in [Extent::Finite(0.01), Extent::Finite(1.0), Extent::Infinite] {
            assert_eq!(product_pm(&p.with_ell_c(ell).with_radius(3.0), &c), base);
        }
    }

    #[test]
    fn product_mp_examples() {
        let p = PumpParams::coherent(100.0, 10.0);
        let c = crystal(1000.0);
        let a = c.alpha;
        let flat = ((1.0 + 1.0 / (a * a)) / 16.0 * a * c.length / (p.k_p * p.w * p.w)).sqrt();
        assert!((product_mp(&p, &c) - flat).abs() < 1e-15);
        let prod = product_pm(&p, &c) * product_mp(&p, &c);
        assert!((prod - (1.0 + 1.0 / (a * a)).sqrt() / 4.0).abs() < 1e-12);
        let mut last = product_mp(&p, &c);
        for ell in [1e4, 1e3, 100.0, 10.0, 1.0] {
            let v = product_mp(&p.with_ell_c(ell), &c);
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn classification_examples() {
        let c = crystal(1000.0);
        let r = classify(&PumpParams::coherent(100.0, 10.0), &c);
        assert!(r.type2 && !r.type1);
        assert!((r.product_mp - 0.04072).abs() < 1e-5, "{}", r.product_mp);
        assert!((r.product_pm - 14.8).abs() < 0.05);
        assert_eq!(r.correlation_position, Correlation::Correlated);
        assert_eq!(r.correlation_momentum, Correlation::Anti);

        let r1 = classify(&PumpParams::coherent(100.0, 10.0).with_ell_c(1.0), &c);
        assert!(!r1.type2);
        assert!((r1.product_mp / r.product_mp - (1.0f64 + 4e4).sqrt()).abs() < 1e-9);

        let r = classify(&PumpParams::coherent(1.0, 10.0), &crystal(1e4));
        assert!(r.type1 && !r.type2);
        assert!((r.product_pm - 0.047).abs() < 5e-4);
        assert_eq!(r.correlation_position, Correlation::Anti);
        assert_eq!(r.correlation_momentum, Correlation::Correlated);
    }

    #[test]
    fn threshold_is_strict() {
        // y = 2/√α puts Δρ₊Δq₋ within rounding of 1/2.
        let a: f64 = 0.25;
        let (pm, _) = dimensionless_products(0.0, 4.0, a);
        assert_eq!(pm, 0.5);
        assert_eq!(classify_cell(0.0, 4.0, a), Classification::None);
    }

    #[test]
    fn boundaries() {
        let a = 0.455;
        assert!((type1_boundary(a) - 2.965).abs() < 1e-3);
        assert!((type2_boundary(0.0, a) - 1.228).abs() < 1e-3);
        let mut last = f64::INFINITY;
        for k in 0..30 {
            let b = type2_boundary(k as f64 * 0.1, a);
            assert!(b < last);
            last = b;
        }
    }

    #[test]
    fn sweep_and_csv() {
        let cells = sweep_phase_diagram((0.0, 3.0), (0.0, 4.0), 31, 40, 0.455).unwrap();
        assert_eq!(cells.len(), 31 * 40);
        assert!(cells.iter().all(|c| c.x >= 0.0 && c.y > 0.0));
        assert_eq!(cells[0].x, 0.0);
        let (none, t1, t2) = area_fractions(&cells);
        assert!((none + t1 + t2 - 1.0).abs() < 1e-12 && t1 > 0.0 && t2 > 0.0);
        let csv = sweep_to_csv(&cells);
        assert_eq!(csv.lines().count(), 31 * 40 + 1);
        assert!(csv.contains("type2_pos_antimom"));
        let seq = sweep_phase_diagram_with((0.0, 3.0), (0.0, 4.0), 31, 40, 0.455, Execution::Sequential).unwrap();
        assert_eq!(seq, cells);
        assert!(sweep_phase_diagram((1.0, 1.0), (0.0, 4.0), 3, 3, 0.455).is_err());
        assert!(sweep_phase_diagram((0.0, 1.0), (0.0, 4.0), 3, 3, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn witness_identities(
            w in 1.0f64..1e3, ell in 0.1f64..1e4, r in 1e3f64..1e7, len in 10.0f64..1e4, a in 0.05f64..3.0,
        ) {
            let p = PumpParams::new(w, ell, r, 10.0);
            let c = crystal(len).with_alpha(a);
            let v = variances(&p, &c);
            let mp = product_mp(&p, &c);
            prop_assert!((mp / (v.rho_minus_sq * v.q_plus_sq).sqrt() - 1.0).abs() < 1e-12);
            let pm = product_pm(&p, &c);
            let expect = ((1.0 + 1.0 / (a * a)) * (1.0 + 4.0 * p.w4_over_curv4() + 4.0 * w * w / (ell * ell))).sqrt() / 4.0;
            prop_assert!((pm * mp / expect - 1.0).abs() < 1e-12);
            let rep = classify(&p, &c);
            prop_assert!(rep.product_pm > 0.0 && rep.product_mp > 0.0);
            prop_assert_eq!(rep.type1, rep.product_pm < 0.5);
            prop_assert_eq!(rep.type2, rep.product_mp < 0.5);
        }

        #[test]
        fn regions_disjoint(x in 0.0f64..100.0, y in 1e-3f64..100.0, a in 1e-3f64..1e3) {
            let (pm, mp) = dimensionless_products(x, y, a);
            prop_assert!(!(pm < 0.5 && mp < 0.5));
        }

        #[test]
        fn dimensionless_form_matches_physical(w in 1.0f64..1e3, x in 0.0f64..10.0, len in 10.0f64..1e5) {
            let ell = if x == 0.0 { Extent::Infinite } else { Extent::Finite(w / x) };
            let p = PumpParams::new(w, ell, Extent::Infinite, 10.0);
            let c = crystal(len);
            let y = (len / (p.k_p * w * w)).sqrt();
            let (pm, mp) = dimensionless_products(x, y, c.alpha);
            prop_assert!((pm / product_pm(&p, &c) - 1.0).abs() < 1e-12);
            prop_assert!((mp / product_mp(&p, &c) - 1.0).abs() < 1e-12);
        }
    }
}
