use std::f64::consts::TAU;

use anyhow::Result;
use pancharatnam::interferometer::{intensity_sweep, interferometric_cos2_phase, visibility_of};
use pancharatnam::{from_yzy, phase_grid, split_beam_shift, Error, YzyParams};

use crate::output::{num, opt, Csv};
use crate::{warn, Ctx};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    /// Phase samples over one period.
    #[arg(long)]
    n_phi: Option<usize>,
    /// Also write cos²Φ_P over a (ξ, η) grid on [0, 2π]² at the given ζ.
    #[arg(long)]
    surface: bool,
    #[arg(long)]
    xi_steps: Option<usize>,
    #[arg(long)]
    eta_steps: Option<usize>,
}

fn grid(steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| TAU * i as f64 / (n - 1) as f64).collect(),
    }
}

pub fn run(a: &Args, ctx: &mut Ctx) -> Result<()> {
    let r = &mut ctx.resolver;
    let p = YzyParams::new(r.angle("xi", a.xi, 0.0)?, r.angle("eta", a.eta, 0.0)?, r.angle("zeta", a.zeta, 0.0)?);
    let n = r.value("n-phi", a.n_phi, 360)?;
    let surface = r.flag("surface", a.surface)?;
    let (xs, es) =
        if surface { (r.value("xi-steps", a.xi_steps, 41)?, r.value("eta-steps", a.eta_steps, 41)?) } else { (0, 0) };

    let u = from_yzy(p);
    let phis = phase_grid::<f64>(n);
    let mut csv = Csv::new(&["phi", "I_V", "I_H"]);
    for (phi, iv, ih) in intensity_sweep(&u, &phis) {
        csv.row(&[num(phi), num(iv), num(ih)]);
    }
    csv.write(&ctx.path("sweep.csv"))?;

    let shift = match split_beam_shift(&u, &phis) {
        Ok(s) => Some(s),
        Err(Error::ZeroVisibility) => {
            warn("ZeroVisibility", "fringes are flat; shift undefined");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let cos2 = shift.map(|s| (s / 2.0).cos().powi(2));
    let mut summary = Csv::new(&["quantity", "value"]);
    summary.row(&["shift".to_string(), opt(shift)]);
    summary.row(&["cos2_phase".to_string(), opt(cos2)]);
    summary.row(&["visibility".to_string(), num(visibility_of(&u))]);
    summary.write(&ctx.path("summary.csv"))?;
    println!("shift={}", opt(shift));
    println!("cos2_phase={}", opt(cos2));
    println!("visibility={}", num(visibility_of(&u)));

    if surface {
        let mut csv = Csv::new(&["xi", "eta", "cos2_phase"]);
        let mut flat = 0usize;
        for &xi in &grid(xs) {
            for &eta in &grid(es) {
                let value = match interferometric_cos2_phase(YzyParams::new(xi, eta, p.zeta), n) {
                    Ok(v) => Some(v),
                    Err(Error::ZeroVisibility) => {
                        flat += 1;
                        warn("ZeroVisibility", &format!("xi={} eta={}", num(xi), num(eta)));
                        None
                    }
                    Err(e) => return Err(e.into()),
                };
                csv.row(&[num(xi), num(eta), opt(value)]);
            }
        }
        csv.write(&ctx.path("surface.csv"))?;
        println!("surface_points={} undefined={flat}", xs * es);
    }
    Ok(())
}
