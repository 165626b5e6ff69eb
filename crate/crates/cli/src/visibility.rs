use std::f64::consts::{FRAC_PI_2, PI};

use anyhow::Result;
use pancharatnam::fringe::default_visibility_region;
use pancharatnam::interferometer::visibility_of;
use pancharatnam::{compose, generate, measure_visibility, qhq_array, visibility_plates, FilterConfig, FringeParams};

use crate::output::{num, opt, Csv};
use crate::{fail, warn, Ctx};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, allow_negative_numbers = true)]
    theta1: Option<f64>,
    /// Fix θ₂ as well and sweep θ₃ (curve mode).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "theta3")]
    theta2: Option<f64>,
    /// Fix θ₃ as well and sweep θ₂ (curve mode).
    #[arg(long, allow_negative_numbers = true)]
    theta3: Option<f64>,
    /// Grid points over [−π/2, π/2] per swept angle.
    #[arg(long)]
    steps: Option<usize>,
    /// In curve mode, also measure each point on a synthetic interferogram.
    #[arg(long)]
    simulate: bool,
    #[arg(long)]
    k0: Option<f64>,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

fn grid(steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| -FRAC_PI_2 + PI * i as f64 / (n - 1) as f64).collect(),
    }
}

fn matrix_visibility(t1: f64, t2: f64, t3: f64) -> f64 {
    visibility_of(&compose(&qhq_array(t1, t2, t3)))
}

pub fn run(a: &Args, ctx: &mut Ctx) -> Result<()> {
    let r = &mut ctx.resolver;
    let t1 = r.angle("theta1", a.theta1, 0.0)?;
    let t2 = r.optional_angle("theta2", a.theta2)?;
    let t3 = r.optional_angle("theta3", a.theta3)?;
    let steps = r.value("steps", a.steps, 73)?;
    let simulate = r.flag("simulate", a.simulate)?;
    let (k0, sigma, seed) = if simulate {
        (r.value("k0", a.k0, 0.15)?, r.value("noise", a.noise, 0.0)?, r.value("seed", a.seed, 0)?)
    } else {
        (0.15, 0.0, 0)
    };

    let curve = match (t2, t3) {
        (Some(_), Some(_)) => return Err(fail("Config", "fix theta2 or theta3, not both")),
        (Some(t2), None) => Some(("theta3", t2, true)),
        (None, Some(t3)) => Some(("theta2", t3, false)),
        (None, None) => None,
    };
    let Some((swept, fixed, sweep_theta3)) = curve else {
        if simulate {
            return Err(fail("Config", "--simulate needs --theta2 or --theta3 (curve mode)"));
        }
        let mut csv = Csv::new(&["theta2", "theta3", "visibility", "matrix"]);
        for &t2 in &grid(steps) {
            for &t3 in &grid(steps) {
                csv.row(&[num(t2), num(t3), num(visibility_plates(t1, t2, t3)), num(matrix_visibility(t1, t2, t3))]);
            }
        }
        csv.write(&ctx.path("surface.csv"))?;
        println!("surface_points={}", steps * steps);
        return Ok(());
    };

    let mut csv = Csv::new(&[swept, "visibility", "matrix_visibility", "measured"]);
    let mut worst: f64 = 0.0;
    for (j, &x) in grid(steps).iter().enumerate() {
        let (t2, t3) = if sweep_theta3 { (fixed, x) } else { (x, fixed) };
        let v = visibility_plates(t1, t2, t3);
        let m = matrix_visibility(t1, t2, t3);
        let measured = if simulate {
            let mut p = FringeParams::new(0.0, m.clamp(0.0, 1.0).acos(), k0);
            p.height = 240;
            p.noise_sigma = sigma;
            p.seed = seed.wrapping_add(j as u64);
            let img = generate(&p)?;
            match measure_visibility(&img, &default_visibility_region(&img), FilterConfig::default()) {
                Ok(x) => {
                    worst = worst.max((x - m).abs());
                    Some(x)
                }
                Err(e) => {
                    warn(e.kind(), &format!("{swept}={}: {e}", num(x)));
                    None
                }
            }
        } else {
            None
        };
        csv.row(&[num(x), num(v), num(m), opt(measured)]);
    }
    csv.write(&ctx.path("curve.csv"))?;
    println!("curve_points={steps}");
    if simulate {
        println!("max_measured_deviation={}", num(worst));
    }
    Ok(())
}
