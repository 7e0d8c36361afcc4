use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spdc_core::entanglement::{classify, product_pm, Correlation};
use spdc_core::joint::{default_axes, evaluate_grid, widths_from_grid, Coords, Space};
use spdc_core::params::{CrystalParams, Extent, PumpParams};
use spdc_core::phasematch::PhaseMatchModel;

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn widths(p: &PumpParams, c: &CrystalParams, space: Space) -> (f64, f64) {
    let m = PhaseMatchModel::GaussianApprox;
    let axes = default_axes(p, c, &m, space, Coords::Rotated, 256).unwrap();
    widths_from_grid(&evaluate_grid(p, c, &m, space, Coords::Rotated, axes).unwrap()).unwrap()
}

#[test]
fn correlation_enums_follow_grid_width_ordering() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let w = log_uniform(&mut rng, 1.0, 1e3);
        let ell = log_uniform(&mut rng, 0.1, 1e4);
        let r = log_uniform(&mut rng, 1e3, 1e8);
        let len = log_uniform(&mut rng, 10.0, 1e5);
        let p = PumpParams::new(w, ell, r, 10.0);
        let c = CrystalParams::new(len, 10.0);
        let rep = classify(&p, &c);
        for (space, enum_) in [
            (Space::Position, rep.correlation_position),
            (Space::Momentum, rep.correlation_momentum),
        ] {
            let (dp, dm) = widths(&p, &c, space);
            let from_grid = Correlation::from_widths(dp, dm);
            assert_eq!(from_grid, enum_, "{space} w={w} ell={ell} R={r} L={len}: {dp} vs {dm}");
        }
        let (rho_plus, _) = widths(&p, &c, Space::Position);
        let (_, q_minus) = widths(&p, &c, Space::Momentum);
        let grid_pm = rho_plus * q_minus;
        assert!((grid_pm / product_pm(&p, &c) - 1.0).abs() < 1e-2);
        assert!((grid_pm / product_pm(&PumpParams::coherent(w, 10.0), &c) - 1.0).abs() < 1e-2);
    }
}

#[test]
fn momentum_grid_in_lab_axes_shows_the_crossover() {
    // Anti-correlated (covariance < 0) for a coherent pump; correlated once
    // l_c drops below 2w/sqrt(4k_p w^2/(alpha L) - 1), about 6.75 µm here.
    let c = CrystalParams::new(1000.0, 10.0);
    let m = PhaseMatchModel::GaussianApprox;
    let covar = |ell: Extent| {
        let p = PumpParams::new(100.0, ell, Extent::Infinite, 10.0);
        let axes = default_axes(&p, &c, &m, Space::Momentum, Coords::Lab, 256).unwrap();
        let g = evaluate_grid(&p, &c, &m, Space::Momentum, Coords::Lab, axes).unwrap();
        spdc_core::numerics::grid_moments(&g.grid().unwrap()).unwrap().covar
    };
    assert!(covar(Extent::Infinite) < 0.0);
    assert!(covar(Extent::Finite(7.0)) < 0.0);
    assert!(covar(Extent::Finite(6.5)) > 0.0);
}

#[test]
fn exit_face_sinc_position_grid_is_normalized_and_anti_diagonal_peaked() {
    let p = PumpParams::coherent(100.0, 10.0);
    let c = CrystalParams::new(1000.0, 10.0);
    let m = PhaseMatchModel::ExactSinc;
    let axes = default_axes(&p, &c, &m, Space::Position, Coords::Rotated, 128).unwrap();
    let g = evaluate_grid(&p, &c, &m, Space::Position, Coords::Rotated, axes).unwrap();
    assert!((g.mass() - 1.0).abs() < 1e-12);
    assert!(g.metadata.captured_mass > 0.9 && g.metadata.captured_mass < 1.01, "{}", g.metadata.captured_mass);
    let row = &g.values[64 * 128..65 * 128];
    let peak = row.iter().cloned().fold(0.0, f64::max);
    assert!(row[63] == peak || row[64] == peak);
}
