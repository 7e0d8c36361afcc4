use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;
use spdc_core::config::Config;
use spdc_core::entanglement::{
    area_fractions, classify, sweep_phase_diagram, sweep_to_csv, variances as variance_report, Correlation,
};
use spdc_core::exec::Execution;
use spdc_core::joint::{default_axes, evaluate_grid, widths_from_grid, Coords, Space};
use spdc_core::numerics::Axis;
use spdc_core::params::{CrystalParams, PumpParams};
use spdc_core::phasematch::{chi_tilde, NonlinearityProfile, PhaseMatchModel};
use spdc_core::validation::run_all;

use crate::manifest::Recorder;
use crate::{Common, CoordsArg, ModelArg, SpaceArg};

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn usage(msg: impl Into<String>) -> Box<dyn std::error::Error> {
    msg.into().into()
}

fn load_config(common: &Common) -> Result<Config, Box<dyn std::error::Error>> {
    match &common.config {
        Some(path) => Config::load(path).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => Ok(Config::new(PumpParams::coherent(100.0, 10.0), CrystalParams::new(1000.0, 10.0))?),
    }
}

fn load_model(model: ModelArg, profile: Option<&Path>) -> Result<PhaseMatchModel, Box<dyn std::error::Error>> {
    match (model, profile) {
        (ModelArg::Profile, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let profile = NonlinearityProfile::from_csv(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(PhaseMatchModel::Profile { profile })
        }
        (ModelArg::Profile, None) => Err(usage("--model profile requires --profile <csv>")),
        (_, Some(_)) => Err(usage("--profile only applies to --model profile")),
        (ModelArg::Sinc, None) => Ok(PhaseMatchModel::ExactSinc),
        (ModelArg::Gauss, None) => Ok(PhaseMatchModel::GaussianApprox),
    }
}

fn correlation_name(c: Correlation) -> &'static str {
    match c {
        Correlation::Correlated => "correlated",
        Correlation::Anti => "anti",
        Correlation::None => "none",
    }
}

#[derive(Serialize)]
struct VarianceOutput {
    rho_plus_sq: f64,
    q_plus_sq: f64,
    rho_minus_sq: f64,
    q_minus_sq: f64,
    product_pm: f64,
    product_mp: f64,
    type1: bool,
    type2: bool,
    correlation_position: Correlation,
    correlation_momentum: Correlation,
    classification: &'static str,
}

pub fn variances(common: &Common) -> CmdResult {
    let cfg = load_config(common)?;
    let mut rec = Recorder::new("variances", Some(cfg), json!({}));
    let v = variance_report(&cfg.pump, &cfg.crystal);
    let r = classify(&cfg.pump, &cfg.crystal);
    let out = VarianceOutput {
        rho_plus_sq: v.rho_plus_sq,
        q_plus_sq: v.q_plus_sq,
        rho_minus_sq: v.rho_minus_sq,
        q_minus_sq: v.q_minus_sq,
        product_pm: r.product_pm,
        product_mp: r.product_mp,
        type1: r.type1,
        type2: r.type2,
        correlation_position: r.correlation_position,
        correlation_momentum: r.correlation_momentum,
        classification: match (r.type1, r.type2) {
            (true, _) => "type1_antipos_corrmom",
            (_, true) => "type2_pos_antimom",
            _ => "none",
        },
    };
    let rows: [(&str, f64); 6] = [
        ("rho_plus_sq", out.rho_plus_sq),
        ("q_plus_sq", out.q_plus_sq),
        ("rho_minus_sq", out.rho_minus_sq),
        ("q_minus_sq", out.q_minus_sq),
        ("product_pm", out.product_pm),
        ("product_mp", out.product_mp),
    ];
    for (name, value) in rows {
        println!("{name:<22}{value}");
    }
    println!("{:<22}{}", "type1", out.type1);
    println!("{:<22}{}", "type2", out.type2);
    println!("{:<22}{}", "correlation_position", correlation_name(out.correlation_position));
    println!("{:<22}{}", "correlation_momentum", correlation_name(out.correlation_momentum));
    println!("{:<22}{}", "classification", out.classification);
    rec.write(&common.out, "variances.json", &(serde_json::to_string_pretty(&out)? + "\n"))?;
    rec.finish(&common.out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn joint(
    common: &Common,
    space: SpaceArg,
    coords: CoordsArg,
    grid: usize,
    model: ModelArg,
    profile: Option<&Path>,
    ranges: [Option<(f64, f64)>; 2],
) -> CmdResult {
    let cfg = load_config(common)?;
    let m = load_model(model, profile)?;
    let space = match space {
        SpaceArg::Position => Space::Position,
        SpaceArg::Momentum => Space::Momentum,
    };
    let coords = match coords {
        CoordsArg::Lab => Coords::Lab,
        CoordsArg::Rotated => Coords::Rotated,
    };
    let mut axes = default_axes(&cfg.pump, &cfg.crystal, &m, space, coords, grid)?;
    for (axis, range) in axes.iter_mut().zip(ranges) {
        if let Some((lo, hi)) = range {
            *axis = Axis::new(lo, hi, grid)?;
        }
    }
    let mut rec = Recorder::new(
        "joint",
        Some(cfg),
        json!({
            "space": space, "coords": coords, "grid": grid, "model": m,
            "axes": axes,
        }),
    );
    let g = evaluate_grid(&cfg.pump, &cfg.crystal, &m, space, coords, axes)?;
    let (dp, dm) = widths_from_grid(&g)?;
    let stem = format!("joint_{space}_{coords}");
    rec.write(&common.out, &format!("{stem}.csv"), &g.to_csv())?;
    rec.write(&common.out, &format!("{stem}.json"), &(g.to_json()? + "\n"))?;
    println!("{stem}: {}x{} cells, captured mass {}", grid, grid, g.metadata.captured_mass);
    println!("delta_plus {dp}  delta_minus {dm}");
    rec.finish(&common.out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn phase_diagram(out: &Path, x_max: f64, y_max: f64, nx: usize, ny: usize, alpha: f64) -> CmdResult {
    let mut rec = Recorder::new(
        "phase-diagram",
        None,
        json!({ "x_max": x_max, "y_max": y_max, "nx": nx, "ny": ny, "alpha": alpha }),
    );
    let cells = sweep_phase_diagram((0.0, x_max), (0.0, y_max), nx, ny, alpha)?;
    rec.write(out, "phase_diagram.csv", &sweep_to_csv(&cells))?;
    let (none, t1, t2) = area_fractions(&cells);
    println!("area fractions: none {none:.6}  type1_antipos_corrmom {t1:.6}  type2_pos_antimom {t2:.6}");
    rec.finish(out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn phasematch(common: &Common, model: ModelArg, profile: Option<&Path>, dk_max: Option<f64>, n: usize) -> CmdResult {
    let cfg = load_config(common)?;
    let m = load_model(model, profile)?;
    let dk_max = dk_max.unwrap_or(12.0 * std::f64::consts::PI / cfg.crystal.length);
    if !(dk_max > 0.0 && dk_max.is_finite()) {
        return Err(usage("--dk-max must be positive"));
    }
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let mut rec = Recorder::new("phasematch", Some(cfg), json!({ "model": m, "dk_max": dk_max, "n": n }));
    let mut csv = String::from("dk,re,im,abs2\n");
    for k in 0..n {
        let dk = dk_max * k as f64 / (n - 1) as f64;
        let a = chi_tilde(dk, &cfg.crystal, &m);
        csv.push_str(&format!("{dk:.8e},{:.8e},{:.8e},{:.8e}\n", a.re, a.im, a.norm_sqr()));
    }
    rec.write(&common.out, &format!("phasematch_{}.csv", m.name()), &csv)?;
    rec.finish(&common.out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn validate(out: &Path) -> CmdResult {
    let mut rec = Recorder::new("validate", None, json!({}));
    let checks = run_all(Execution::Parallel)?;
    for c in &checks {
        println!(
            "{} [{}] {}: observed {:e} (required {})",
            if c.passed { "PASS" } else { "FAIL" },
            c.criterion,
            c.name,
            c.observed,
            c.tolerance
        );
    }
    rec.write(out, "validation.json", &(serde_json::to_string_pretty(&checks)? + "\n"))?;
    rec.finish(out)?;
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", checks.len());
    match checks.iter().find(|c| !c.passed) {
        Some(c) => {
            eprintln!("first failing check: [{}] {}", c.criterion, c.name);
            Ok(ExitCode::from(1))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}
