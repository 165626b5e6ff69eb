use anyhow::Result;
use pancharatnam::{compose, decompose_qhq, from_yzy, polarimetric_array, PolarizationOperatorF64, YzyParams};

use crate::output::{num, Csv};
use crate::{choice, Ctx};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `qhq` (three plates) or `five` (polarimetric array at `--phi`).
    #[arg(long, value_parser = ["qhq", "five"])]
    mode: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    /// Common rotation angle of the five-plate mount.
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
}

pub fn run(a: &Args, ctx: &mut Ctx) -> Result<()> {
    let r = &mut ctx.resolver;
    let mode = r.value("mode", a.mode.clone(), "qhq".to_string())?;
    let mode = choice("mode", &mode, &["qhq", "five"])?;
    let p = YzyParams::new(r.angle("xi", a.xi, 0.0)?, r.angle("eta", a.eta, 0.0)?, r.angle("zeta", a.zeta, 0.0)?);
    let (plates, target) = if mode == "qhq" {
        (decompose_qhq(p), from_yzy(p))
    } else {
        let phi = r.angle("phi", a.phi, 0.0)?;
        // V = exp(−iφσz/2)·exp(−iπσx/4); target V†UV.
        let v = PolarizationOperatorF64::exp_z(phi / 2.0) * PolarizationOperatorF64::exp_x(std::f64::consts::FRAC_PI_4);
        (polarimetric_array(p, phi), v.dagger() * from_yzy(p) * v)
    };
    let plates = plates.canonical();
    let composed = compose(&plates);
    let residual = composed.max_abs_diff(&target);

    let text = format!("# {mode} array, traversal order, axes in radians\n{plates}");
    std::fs::write(ctx.path("plates.txt"), &text)?;
    let mut csv = Csv::new(&["element", "composed_re", "composed_im", "target_re", "target_im"]);
    let (c, t) = (composed.elements(), target.elements());
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        csv.row(&[format!("m{}{}", i + 1, j + 1), num(c[i][j].re), num(c[i][j].im), num(t[i][j].re), num(t[i][j].im)]);
    }
    csv.write(&ctx.path("matrix.csv"))?;

    print!("{text}");
    for row in c {
        println!("[{:+.12} {:+.12}i, {:+.12} {:+.12}i]", row[0].re, row[0].im, row[1].re, row[1].im);
    }
    println!("residual={}", num(residual));
    Ok(())
}
