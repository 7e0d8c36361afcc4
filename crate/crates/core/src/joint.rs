//! Separable joint densities P(v_s, v_i) = P_Γ(v₊)·P_χ(v₋) for one transverse
//! component, on dense grids in lab (v_s, v_i) or rotated (v₊, v₋) axes.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numerics::{grid_moments, Axis, Grid2D};
use crate::params::{CrystalParams, PumpParams};
use crate::phasematch::{variance_q_minus_gauss, variance_rho_minus_gauss, PhaseMatchModel, PhaseMatching};
use crate::pump::{p_gamma_momentum_1d, p_gamma_position_1d, variance_q_plus, variance_rho_plus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coords {
    Lab,
    Rotated,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        })
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "position" => Ok(Space::Position),
            "momentum" => Ok(Space::Momentum),
            _ => Err(Error::InvalidAxis(format!("unknown space {s:?}"))),
        }
    }
}

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coords::Lab => "lab",
            Coords::Rotated => "rotated",
        })
    }
}

impl FromStr for Coords {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lab" => Ok(Coords::Lab),
            "rotated" => Ok(Coords::Rotated),
            _ => Err(Error::InvalidAxis(format!("unknown coordinates {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledAxis {
    pub label: String,
    #[serde(flatten)]
    pub axis: Axis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub pump: PumpParams,
    pub crystal: CrystalParams,
    pub model: PhaseMatchModel,
    /// ∑ values·cell area of the analytically normalized density before
    /// the grid was rescaled to unit mass.
    pub captured_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointGrid {
    pub space: Space,
    pub coords: Coords,
    pub axes: [LabeledAxis; 2],
    /// Row-major, `values[i * axes[1].count + j]`.
    pub values: Vec<f64>,
    pub metadata: GridMetadata,
}

fn labels(space: Space, coords: Coords) -> [&'static str; 2] {
    match (space, coords) {
        (Space::Momentum, Coords::Lab) => ["q_s", "q_i"],
        (Space::Momentum, Coords::Rotated) => ["q_plus", "q_minus"],
        (Space::Position, Coords::Lab) => ["rho_s", "rho_i"],
        (Space::Position, Coords::Rotated) => ["rho_plus", "rho_minus"],
    }
}

/// The two one-component factor densities of a joint distribution.
struct Factors<'a> {
    pump: &'a PumpParams,
    pm: &'a PhaseMatching,
    space: Space,
    exec: Execution,
}

impl Factors<'_> {
    fn plus(&self, xs: &[f64]) -> Vec<f64> {
        let f = match self.space {
            Space::Position => p_gamma_position_1d,
            Space::Momentum => p_gamma_momentum_1d,
        };
        xs.iter().map(|&x| f(self.pump, x)).collect()
    }

    fn minus(&self, xs: &[f64]) -> Result<Vec<f64>> {
        match self.space {
            Space::Position => self.pm.position_marginal(xs, self.exec),
            Space::Momentum => Ok(self.pm.momentum_marginal(xs, self.exec)),
        }
    }

    /// Standard deviations, or an equivalent 1/e scale where second moments
    /// do not exist, of the (plus, minus) factors.
    fn scales(&self) -> [f64; 2] {
        let c = self.pm.crystal();
        match self.space {
            Space::Position => {
                let minus = match self.pm.model() {
                    PhaseMatchModel::GaussianApprox => self.pm.gauss_variance_rho_minus(),
                    _ => variance_rho_minus_gauss(c),
                };
                [variance_rho_plus(self.pump).sqrt(), minus.sqrt()]
            }
            Space::Momentum => {
                let minus = self
                    .pm
                    .momentum_half_width()
                    .map(|q| q * FRAC_1_SQRT_2)
                    .unwrap_or_else(|| variance_q_minus_gauss(c).sqrt());
                [variance_q_plus(self.pump).sqrt(), minus]
            }
        }
    }
}

/// Evaluates each distinct coordinate once and returns, for every input
/// point, its value.
fn evaluate_distinct<F>(points: &[f64], f: F) -> Result<Vec<f64>>
where
    F: FnOnce(&[f64]) -> Result<Vec<f64>>,
{
    let mut keys = points.to_vec();
    keys.sort_by(f64::total_cmp);
    keys.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let vals = f(&keys)?;
    Ok(points
        .iter()
        .map(|p| vals[keys.binary_search_by(|k| k.total_cmp(p)).expect("key present")])
        .collect())
}

pub const DEFAULT_COUNT: usize = 256;
pub const DEFAULT_SPAN: f64 = 5.0;

/// ±5 standard deviations of each factor (rotated), or of the lab marginal
/// (lab), with `count` cells per axis.
pub fn default_axes(
    p: &PumpParams,
    c: &CrystalParams,
    m: &PhaseMatchModel,
    space: Space,
    coords: Coords,
    count: usize,
) -> Result<[Axis; 2]> {
    let pm = PhaseMatching::new(*c, m.clone())?;
    let s = Factors {
        pump: p,
        pm: &pm,
        space,
        exec: Execution::Sequential,
    }
    .scales();
    match coords {
        Coords::Rotated => Ok([
            Axis::symmetric(DEFAULT_SPAN * s[0], count)?,
            Axis::symmetric(DEFAULT_SPAN * s[1], count)?,
        ]),
        Coords::Lab => {
            let lab = ((s[0] * s[0] + s[1] * s[1]) / 2.0).sqrt();
            let a = Axis::symmetric(DEFAULT_SPAN * lab, count)?;
            Ok([a, a])
        }
    }
}

pub fn evaluate_grid(
    p: &PumpParams,
    c: &CrystalParams,
    m: &PhaseMatchModel,
    space: Space,
    coords: Coords,
    axes: [Axis; 2],
) -> Result<JointGrid> {
    evaluate_grid_with(p, c, m, space, coords, axes, Execution::default())
}

pub fn evaluate_grid_with(
    p: &PumpParams,
    c: &CrystalParams,
    m: &PhaseMatchModel,
    space: Space,
    coords: Coords,
    axes: [Axis; 2],
    exec: Execution,
) -> Result<JointGrid> {
    let p = p.validate()?;
    for a in &axes {
        a.check()?;
    }
    let pm = PhaseMatching::new(*c, m.clone())?;
    let factors = Factors {
        pump: &p,
        pm: &pm,
        space,
        exec,
    };
    check_resolution(&factors, coords, &axes)?;

    let (n0, n1) = (axes[0].count, axes[1].count);
    let x0: Vec<f64> = axes[0].centers().collect();
    let x1: Vec<f64> = axes[1].centers().collect();
    let mut values = vec![0.0; n0 * n1];
    match coords {
        Coords::Rotated => {
            let f = factors.plus(&x0);
            let g = factors.minus(&x1)?;
            exec.fill_rows(&mut values, n1, |i, row| {
                for (v, gj) in row.iter_mut().zip(&g) {
                    *v = f[i] * gj;
                }
            });
        }
        Coords::Lab if axes[0].step().to_bits() == axes[1].step().to_bits() => {
            // Shared spacing: the diagonals depend on i + j and i − j only.
            let h = axes[0].step();
            let (m0, m1) = (axes[0].min, axes[1].min);
            let sums: Vec<f64> = (0..n0 + n1 - 1)
                .map(|k| (m0 + m1 + (k as f64 + 1.0) * h) * FRAC_1_SQRT_2)
                .collect();
            let diffs: Vec<f64> = (0..n0 + n1 - 1)
                .map(|k| (m0 - m1 + (k as f64 - (n1 - 1) as f64) * h) * FRAC_1_SQRT_2)
                .collect();
            let f = factors.plus(&sums);
            let g = factors.minus(&diffs)?;
            exec.fill_rows(&mut values, n1, |i, row| {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = f[i + j] * g[i + n1 - 1 - j];
                }
            });
        }
        Coords::Lab => {
            let plus = |i: usize, j: usize| (x0[i] + x1[j]) * FRAC_1_SQRT_2;
            let minus = |i: usize, j: usize| (x0[i] - x1[j]) * FRAC_1_SQRT_2;
            let all = |h: &dyn Fn(usize, usize) -> f64| -> Vec<f64> {
                (0..n0 * n1).map(|k| h(k / n1, k % n1)).collect()
            };
            let f = evaluate_distinct(&all(&plus), |xs| Ok(factors.plus(xs)))?;
            let g = evaluate_distinct(&all(&minus), |xs| factors.minus(xs))?;
            exec.fill_rows(&mut values, n1, |i, row| {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = f[i * n1 + j] * g[i * n1 + j];
                }
            });
        }
    }

    let area = axes[0].step() * axes[1].step();
    let captured_mass = values.iter().sum::<f64>() * area;
    if captured_mass.is_nan() || captured_mass <= 0.0 {
        return Err(Error::ZeroMass);
    }
    let scale = 1.0 / captured_mass;
    values.iter_mut().for_each(|v| *v *= scale);

    let names = labels(space, coords);
    Ok(JointGrid {
        space,
        coords,
        axes: [
            LabeledAxis {
                label: names[0].into(),
                axis: axes[0],
            },
            LabeledAxis {
                label: names[1].into(),
                axis: axes[1],
            },
        ],
        values,
        metadata: GridMetadata {
            pump: p,
            crystal: *pm.crystal(),
            model: m.clone(),
            captured_mass,
        },
    })
}

/// Each factor's 1/e full width, 2√2σ, must cover at least four cells. In
/// lab axes the diagonals are sampled at h/√2.
fn check_resolution(factors: &Factors<'_>, coords: Coords, axes: &[Axis; 2]) -> Result<()> {
    const MIN_CELLS: f64 = 4.0;
    let s = factors.scales();
    let pairs: Vec<(f64, f64, usize, &str)> = match coords {
        Coords::Rotated => vec![
            (s[0], axes[0].step(), axes[0].count, "diagonal factor"),
            (s[1], axes[1].step(), axes[1].count, "anti-diagonal factor"),
        ],
        Coords::Lab => {
            let (h, n) = if axes[0].step() >= axes[1].step() {
                (axes[0].step(), axes[0].count)
            } else {
                (axes[1].step(), axes[1].count)
            };
            let (sigma, what) = if s[0] <= s[1] {
                (s[0], "diagonal factor")
            } else {
                (s[1], "anti-diagonal factor")
            };
            vec![(sigma, h * FRAC_1_SQRT_2, n, what)]
        }
    };
    for (sigma, h, n, what) in pairs {
        let cells = 2.0 * SQRT_2 * sigma / h;
        if cells < MIN_CELLS {
            return Err(Error::GridTooCoarse {
                what: format!("{what} ({cells:.2} cells across its 1/e width)"),
                suggested_min: (n as f64 * MIN_CELLS / cells).ceil() as usize,
            });
        }
    }
    Ok(())
}

/// P̃_Γ((q_s+q_i)/√2)·P̃_χ((q_s−q_i)/√2) for one transverse component.
pub fn joint_momentum_density(p: &PumpParams, c: &CrystalParams, m: &PhaseMatchModel, q_s: f64, q_i: f64) -> Result<f64> {
    point_density(p, c, m, Space::Momentum, q_s, q_i)
}

/// P_Γ((ρ_s+ρ_i)/√2)·P_χ((ρ_s−ρ_i)/√2) for one transverse component.
pub fn joint_position_density(
    p: &PumpParams,
    c: &CrystalParams,
    m: &PhaseMatchModel,
    rho_s: f64,
    rho_i: f64,
) -> Result<f64> {
    point_density(p, c, m, Space::Position, rho_s, rho_i)
}

fn point_density(p: &PumpParams, c: &CrystalParams, m: &PhaseMatchModel, space: Space, s: f64, i: f64) -> Result<f64> {
    let p = p.validate()?;
    let pm = PhaseMatching::new(*c, m.clone())?;
    let f = Factors {
        pump: &p,
        pm: &pm,
        space,
        exec: Execution::Sequential,
    };
    let plus = f.plus(&[(s + i) * FRAC_1_SQRT_2])[0];
    let minus = f.minus(&[(s - i) * FRAC_1_SQRT_2])?[0];
    Ok(plus * minus)
}

impl JointGrid {
    pub fn grid(&self) -> Result<Grid2D> {
        Grid2D::new([self.axes[0].axis, self.axes[1].axis], self.values.clone())
    }

    pub fn cell_area(&self) -> f64 {
        self.axes[0].axis.step() * self.axes[1].axis.step()
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_area()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axes[1].axis.count + j]
    }

    /// Axis labels in the first row, row coordinates in the first column.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\\{}", self.axes[0].label, self.axes[1].label));
        for y in self.axes[1].axis.centers() {
            out.push_str(&format!(",{y:.8e}"));
        }
        out.push('\n');
        let n1 = self.axes[1].axis.count;
        for (x, row) in self.axes[0].axis.centers().zip(self.values.chunks(n1)) {
            out.push_str(&format!("{x:.8e}"));
            for v in row {
                out.push_str(&format!(",{v:.8e}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Standard deviations along the diagonal and anti-diagonal.
pub fn widths_from_grid(g: &JointGrid) -> Result<(f64, f64)> {
    let m = grid_moments(&g.grid()?)?;
    let (vp, vm) = match g.coords {
        Coords::Rotated => (m.var[0], m.var[1]),
        Coords::Lab => {
            let s = m.var[0] + m.var[1];
            ((s + 2.0 * m.covar) / 2.0, (s - 2.0 * m.covar) / 2.0)
        }
    };
    Ok((vp.max(0.0).sqrt(), vm.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Extent;
    use proptest::prelude::*;

    fn setup() -> (PumpParams, CrystalParams) {
        (PumpParams::coherent(100.0, 10.0), CrystalParams::new(1000.0, 10.0))
    }

    fn grid(p: &PumpParams, c: &CrystalParams, m: &PhaseMatchModel, space: Space, coords: Coords) -> JointGrid {
        let axes = default_axes(p, c, m, space, coords, DEFAULT_COUNT).unwrap();
        evaluate_grid(p, c, m, space, coords, axes).unwrap()
    }

    #[test]
    fn coherent_momentum_widths() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        for coords in [Coords::Rotated, Coords::Lab] {
            let g = grid(&p, &c, &m, Space::Momentum, coords);
            assert!((g.mass() - 1.0).abs() < 1e-12);
            assert!(g.metadata.captured_mass > 0.999, "{coords}: {}", g.metadata.captured_mass);
            let (dp, dm) = widths_from_grid(&g).unwrap();
            let ep = (1.0 / (8.0 * 100.0f64.powi(2))).sqrt();
            let em = (c.k_p / (2.0 * c.alpha * c.length)).sqrt();
            assert!((dp / ep - 1.0).abs() < 0.01, "{coords}: {dp} vs {ep}");
            assert!((dm / em - 1.0).abs() < 0.01, "{coords}: {dm} vs {em}");
        }
    }

    #[test]
    fn rotated_grid_is_uncorrelated_and_lab_grid_anticorrelated() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        let r = grid_moments(&grid(&p, &c, &m, Space::Momentum, Coords::Rotated).grid().unwrap()).unwrap();
        assert!(r.correlation().abs() < 1e-6);
        let g = grid(&p, &c, &m, Space::Momentum, Coords::Lab);
        let l = grid_moments(&g.grid().unwrap()).unwrap();
        assert!(l.covar < 0.0);
        let (dp, dm) = widths_from_grid(&g).unwrap();
        let expect = (dp * dp - dm * dm) / (dp * dp + dm * dm);
        assert!((l.correlation() - expect).abs() < 1e-3);
    }

    #[test]
    fn position_width_and_coherence_independence() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        let g = grid(&p, &c, &m, Space::Position, Coords::Lab);
        let (dp, dm) = widths_from_grid(&g).unwrap();
        assert!((dp / (SQRT_2 * 100.0) - 1.0).abs() < 0.01, "{dp}");
        assert!(dm < dp);
        let pc = p.with_ell_c(1.0).with_radius(Extent::Finite(2e3));
        let h = grid(&pc, &c, &m, Space::Position, Coords::Lab);
        assert_eq!(g.values, h.values);
        for (a, b) in [(0.0, 0.0), (12.0, -3.0), (40.0, 41.0)] {
            let x = joint_position_density(&p, &c, &m, a, b).unwrap();
            let y = joint_position_density(&pc, &c, &m, a, b).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn origin_is_product_of_peaks() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        let v = joint_momentum_density(&p, &c, &m, 0.0, 0.0).unwrap();
        let peak_plus = p_gamma_momentum_1d(&p, 0.0);
        let pm = PhaseMatching::new(c, m.clone()).unwrap();
        let peak_minus = pm.momentum_marginal(&[0.0], Execution::Sequential)[0];
        assert_eq!(v, peak_plus * peak_minus);
    }

    #[test]
    fn sinc_momentum_marginal_is_normalized() {
        let (p, c) = setup();
        let m = PhaseMatchModel::ExactSinc;
        let g = grid(&p, &c, &m, Space::Momentum, Coords::Rotated);
        // Heavy sinc² tails: some mass lies beyond ±5 scale units.
        assert!(g.metadata.captured_mass > 0.95 && g.metadata.captured_mass < 1.0 + 1e-9);
        let pm = PhaseMatching::new(c, m).unwrap();
        let h = 0.02;
        let xs: Vec<f64> = (0..20_000).map(|k| (k as f64 - 10_000.0 + 0.5) * h).collect();
        let total: f64 = pm.momentum_marginal(&xs, Execution::Parallel).iter().sum::<f64>() * h;
        assert!((total - 1.0).abs() < 1e-3, "{total}");
    }

    #[test]
    fn centered_sinc_position_grid() {
        let p = PumpParams::coherent(100.0, 10.0);
        let c = CrystalParams::new(1000.0, 10.0).centered();
        let g = grid(&p, &c, &PhaseMatchModel::ExactSinc, Space::Position, Coords::Rotated);
        assert!(g.metadata.captured_mass > 0.95, "{}", g.metadata.captured_mass);
        let n1 = g.axes[1].axis.count;
        // The anti-diagonal profile peaks on axis.
        let row = &g.values[128 * n1..129 * n1];
        let max = row.iter().cloned().fold(0.0, f64::max);
        assert!(row[127] == max || row[128] == max);
    }

    #[test]
    fn coarse_grid_rejected_with_suggestion() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        let axes = [Axis::symmetric(1.0, 8).unwrap(), Axis::symmetric(1e4, 8).unwrap()];
        match evaluate_grid(&p, &c, &m, Space::Momentum, Coords::Rotated, axes) {
            Err(Error::GridTooCoarse { suggested_min, .. }) => assert!(suggested_min > 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn refinement_keeps_captured_mass() {
        let (p, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        for coords in [Coords::Rotated, Coords::Lab] {
            let a = default_axes(&p, &c, &m, Space::Position, coords, 128).unwrap();
            let b = a.map(|x| Axis { count: 2 * x.count, ..x });
            let ga = evaluate_grid(&p, &c, &m, Space::Position, coords, a).unwrap();
            let gb = evaluate_grid(&p, &c, &m, Space::Position, coords, b).unwrap();
            assert!((ga.metadata.captured_mass - gb.metadata.captured_mass).abs() < 1e-4);
        }
    }

    #[test]
    fn sequential_and_parallel_grids_agree() {
        let (_, c) = setup();
        let p = PumpParams::coherent(10.0, 10.0);
        let m = PhaseMatchModel::ExactSinc;
        let axes = default_axes(&p, &c, &m, Space::Momentum, Coords::Lab, 64).unwrap();
        let a = evaluate_grid_with(&p, &c, &m, Space::Momentum, Coords::Lab, axes, Execution::Sequential).unwrap();
        let b = evaluate_grid_with(&p, &c, &m, Space::Momentum, Coords::Lab, axes, Execution::Parallel).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn csv_layout() {
        let (_, c) = setup();
        let m = PhaseMatchModel::GaussianApprox;
        let p = PumpParams::coherent(10.0, 10.0);
        let axes = default_axes(&p, &c, &m, Space::Momentum, Coords::Lab, 32).unwrap();
        let g = evaluate_grid(&p, &c, &m, Space::Momentum, Coords::Lab, axes).unwrap();
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 33);
        assert!(lines[0].starts_with("q_s\\q_i,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 33));
        let v: f64 = lines[3].split(',').nth(5).unwrap().parse().unwrap();
        assert!((v / g.at(2, 4) - 1.0).abs() < 1e-8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rotated_grids_factorize(w in 10.0f64..500.0, ell in 1.0f64..1e3, len in 100.0f64..1e4) {
            let p = PumpParams::new(w, ell, Extent::Infinite, 10.0);
            let c = CrystalParams::new(len, 10.0);
            let m = PhaseMatchModel::GaussianApprox;
            for space in [Space::Momentum, Space::Position] {
                let axes = default_axes(&p, &c, &m, space, Coords::Rotated, 32).unwrap();
                let g = evaluate_grid(&p, &c, &m, space, Coords::Rotated, axes).unwrap();
                for &(i, j, k, l) in &[(3, 5, 16, 20), (10, 11, 30, 2), (0, 31, 31, 0)] {
                    let a = g.at(i, j) * g.at(k, l);
                    let b = g.at(i, l) * g.at(k, j);
                    prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()));
                }
            }
        }

        #[test]
        fn json_round_trip_is_bit_exact(w in 1.0f64..1e3, ell in 0.1f64..1e3, count in 16usize..32) {
            let p = PumpParams::new(w, ell, 5e4, 10.0);
            let c = CrystalParams::new(1000.0, 10.0);
            let m = PhaseMatchModel::GaussianApprox;
            let axes = default_axes(&p, &c, &m, Space::Momentum, Coords::Rotated, count).unwrap();
            let g = evaluate_grid(&p, &c, &m, Space::Momentum, Coords::Rotated, axes).unwrap();
            let back = JointGrid::from_json(&g.to_json().unwrap()).unwrap();
            prop_assert_eq!(back.values.len(), g.values.len());
            for (a, b) in g.values.iter().zip(&back.values) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
            prop_assert_eq!(back, g);
        }
    }
}
