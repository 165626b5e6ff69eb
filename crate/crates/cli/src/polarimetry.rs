use std::f64::consts::TAU;
use std::path::PathBuf;

use anyhow::Result;
use pancharatnam::polarimetry::sweep_filter;
use pancharatnam::{
    measure_phase_mode, yzy_to_zyz, Error, FilterConfig, NoiseModel, PlateArray, PolarimetricMode, PolarimetricSweep,
    YzyParams,
};

use crate::output::{num, opt, Csv};
use crate::{choice, fail, read_text, warn, Ctx};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `full` (five plates), `zeta-2pi` (QQH) or `xi-minus-pi` (QHQ).
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    /// Mount angles per period.
    #[arg(long)]
    n_phi: Option<usize>,
    /// Standard deviation of additive intensity noise.
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Savitzky-Golay window for noisy sweeps (default: about n-phi/12).
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// Sweep η over [0, 2π) in this many steps and write curve.csv.
    #[arg(long)]
    eta_steps: Option<usize>,
    /// Plate list (mount angle 0) to sweep instead of a parametrized array.
    #[arg(long)]
    plates: Option<PathBuf>,
}

fn expected(p: YzyParams<f64>) -> Option<f64> {
    yzy_to_zyz(p).delta().map(|d| d.cos().powi(2))
}

pub fn run(a: &Args, ctx: &mut Ctx) -> Result<()> {
    let r = &mut ctx.resolver;
    let mode = r.value("mode", a.mode.clone(), "full".to_string())?;
    let mode = match choice("mode", &mode, &["full", "zeta-2pi", "xi-minus-pi"])? {
        "full" => PolarimetricMode::Full,
        "zeta-2pi" => PolarimetricMode::Zeta2Pi,
        _ => PolarimetricMode::XiMinusPi,
    };
    let p = YzyParams::new(r.angle("xi", a.xi, 0.0)?, r.angle("eta", a.eta, 0.0)?, r.angle("zeta", a.zeta, 0.0)?);
    let n = r.value("n-phi", a.n_phi, 4096)?;
    let sigma = r.value("noise", a.noise, 0.0)?;
    let seed = r.value("seed", a.seed, 0)?;
    let auto = sweep_filter(n);
    let window = r.value("window", a.window, auto.window)?;
    let order = r.value("order", a.order, auto.order)?;
    let eta_steps = r.optional("eta-steps", a.eta_steps)?;
    let plates = r.optional("plates", a.plates.as_ref().map(|p| p.display().to_string()))?;
    if n < 64 {
        return Err(Error::InvalidGrid(format!("need at least 64 samples, got {n}")).into());
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(fail("Config", format!("noise must be >= 0, got {sigma}")));
    }
    let filter = FilterConfig::new(window, order)?;
    let noise = (sigma > 0.0).then_some(NoiseModel { sigma, seed });

    let (sweep, truth) = match &plates {
        Some(path) => {
            if eta_steps.is_some() {
                return Err(fail("Config", "eta-steps needs (xi, eta, zeta), not a plate file"));
            }
            let array: PlateArray<f64> = read_text(&PathBuf::from(path))?.parse()?;
            (PolarimetricSweep::simulate_array(&array, n), None)
        }
        None => (PolarimetricSweep::simulate_mode(mode, p, n), expected(mode.params(p))),
    };
    let sweep = match noise {
        Some(nm) => sweep.with_noise(nm),
        None => sweep,
    };
    let mut csv = Csv::new(&["phi", "intensity"]);
    for (phi, i) in sweep.phi_grid.iter().zip(&sweep.intensities) {
        csv.row(&[num(*phi), num(*i)]);
    }
    csv.write(&ctx.path("sweep.csv"))?;

    let analysed = if noise.is_some() { sweep.smoothed(filter)? } else { sweep };
    let (i_min, i_max) = analysed.extrema();
    let cos2 = match analysed.cos2_phase() {
        Ok(v) => Some(v),
        Err(e @ Error::DegenerateDenominator) => {
            warn(e.kind(), &e.to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut summary = Csv::new(&["quantity", "value"]);
    summary.row(&["i_min".to_string(), num(i_min)]);
    summary.row(&["i_max".to_string(), num(i_max)]);
    summary.row(&["cos2_phase".to_string(), opt(cos2)]);
    summary.row(&["expected".to_string(), opt(truth)]);
    summary.write(&ctx.path("summary.csv"))?;
    println!("i_min={}", num(i_min));
    println!("i_max={}", num(i_max));
    println!("cos2_phase={}", opt(cos2));
    if truth.is_some() {
        println!("expected={}", opt(truth));
    }

    if let Some(steps) = eta_steps {
        let mut csv = Csv::new(&["eta", "cos2_phase", "expected"]);
        for j in 0..steps {
            let eta = TAU * j as f64 / steps as f64;
            let q = YzyParams::new(p.xi, eta, p.zeta);
            let nm = noise.map(|nm| NoiseModel { seed: nm.seed.wrapping_add(j as u64), ..nm });
            let value = match measure_phase_mode(mode, q, n, nm, Some(filter)) {
                Ok(v) => Some(v),
                Err(e @ Error::DegenerateDenominator) => {
                    warn(e.kind(), &format!("eta={}", num(eta)));
                    None
                }
                Err(e) => return Err(e.into()),
            };
            csv.row(&[num(eta), opt(value), opt(expected(mode.params(q)))]);
        }
        csv.write(&ctx.path("curve.csv"))?;
        println!("curve_points={steps}");
    }
    Ok(())
}
