use std::path::PathBuf;

use anyhow::Result;
use pancharatnam::fringe::RegionValue;
use pancharatnam::{
    column_average, default_regions, generate, pgm, retrieve_phase, wrap_pi, Envelope, Error, FilterConfig,
    FringeParams, Method, Region,
};

use crate::output::{num, opt, Csv};
use crate::{choice, fail, Ctx};

#[derive(clap::Subcommand, Debug)]
pub enum Command {
    /// Synthesize a dual-half interferogram (PGM plus `.meta` sidecar).
    Generate(GenerateArgs),
    /// Retrieve the split-beam shift from an interferogram.
    Analyze(AnalyzeArgs),
}

#[derive(clap::Args, Debug)]
pub struct GenerateArgs {
    /// Half the phase shift between the two halves.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Spatial carrier, radians per pixel.
    #[arg(long)]
    k0: Option<f64>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// `uniform` or `gaussian`.
    #[arg(long)]
    envelope: Option<String>,
    /// Gaussian envelope standard deviation in pixels.
    #[arg(long)]
    envelope_width: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phase_offset: Option<f64>,
    /// Base file name inside the output directory.
    #[arg(long)]
    name: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct AnalyzeArgs {
    /// Image to analyse [default: <out>/fringes.pgm].
    #[arg(long)]
    image: Option<PathBuf>,
    /// `minima`, `fourier` or `both`.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// `col_start,col_end,row_start,row_end` (half-open); repeatable.
    #[arg(long = "region")]
    regions: Vec<String>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "fringe generate",
            Command::Analyze(_) => "fringe analyze",
        }
    }
}

pub fn run(c: &Command, ctx: &mut Ctx) -> Result<()> {
    match c {
        Command::Generate(a) => generate_cmd(a, ctx),
        Command::Analyze(a) => analyze_cmd(a, ctx),
    }
}

fn generate_cmd(a: &GenerateArgs, ctx: &mut Ctx) -> Result<()> {
    let r = &mut ctx.resolver;
    let delta = r.angle("delta", a.delta, 0.5)?;
    let beta = r.angle("beta", a.beta, 0.0)?;
    let k0 = r.value("k0", a.k0, 0.15)?;
    let mut p = FringeParams::new(delta, beta, k0);
    p.height = r.value("height", a.height, p.height)?;
    p.width = r.value("width", a.width, p.width)?;
    p.noise_sigma = r.value("noise", a.noise, 0.0)?;
    p.seed = r.value("seed", a.seed, 0)?;
    let envelope = r.value("envelope", a.envelope.clone(), "uniform".to_string())?;
    if choice("envelope", &envelope, &["uniform", "gaussian"])? == "gaussian" {
        let width = r.value("envelope-width", a.envelope_width, p.width as f64 / 2.0)?;
        p.envelope = Envelope::Gaussian { width };
    }
    p.phase_offset = r.angle("phase-offset", a.phase_offset, 0.0)?;
    let name = r.value("name", a.name.clone(), "fringes".to_string())?;

    let img = generate(&p)?;
    let path = ctx.path(&format!("{name}.pgm"));
    pgm::write(&path, &img)?;
    println!("image={}", path.display());
    println!("true_shift={}", num(2.0 * delta));
    Ok(())
}

fn parse_region(s: &str) -> Result<Region> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| fail("Config", format!("region {s:?}: {e}")))?;
    match parts[..] {
        [c0, c1, r0, r1] => Ok(Region::new(c0, c1, r0, r1)),
        _ => Err(fail("Config", format!("region {s:?}: expected col_start,col_end,row_start,row_end"))),
    }
}

fn analyze_cmd(a: &AnalyzeArgs, ctx: &mut Ctx) -> Result<()> {
    let default_image = ctx.path("fringes.pgm");
    let r = &mut ctx.resolver;
    let image =
        r.value("image", a.image.as_ref().map(|p| p.display().to_string()), default_image.display().to_string())?;
    let method = r.value("method", a.method.clone(), "both".to_string())?;
    let method = match choice("method", &method, &["minima", "fourier", "both"])? {
        "minima" => Method::Minima,
        "fourier" => Method::Fourier,
        _ => Method::Both,
    };
    let defaults = FilterConfig::default();
    let cfg =
        FilterConfig::new(r.value("window", a.window, defaults.window)?, r.value("order", a.order, defaults.order)?)?;
    let flag_regions = (!a.regions.is_empty()).then(|| a.regions.join(";"));
    let region_spec = r.optional("regions", flag_regions)?;

    let (img, had_sidecar) = pgm::read(&PathBuf::from(&image))?;
    let regions = match &region_spec {
        Some(s) => s.split(';').filter(|t| !t.trim().is_empty()).map(parse_region).collect::<Result<Vec<_>>>()?,
        None => default_regions(&img),
    };

    let mut profiles = Csv::new(&["region", "x", "upper", "lower"]);
    for (i, reg) in regions.iter().enumerate() {
        if let Ok((up, low)) = column_average(&img, reg) {
            for (j, (u, l)) in up.values.iter().zip(&low.values).enumerate() {
                profiles.row(&[i.to_string(), (reg.col_start + j).to_string(), num(*u), num(*l)]);
            }
        }
    }
    profiles.write(&ctx.path("profiles.csv"))?;

    let retrieval = retrieve_phase(&img, &regions, cfg, method);
    let mut table = Csv::new(&[
        "region",
        "col_start",
        "col_end",
        "row_start",
        "row_end",
        "k0",
        "shift",
        "minima",
        "fourier",
        "error",
    ]);
    let rows: Vec<(Region, Option<RegionValue>, &str)> = match &retrieval {
        Ok(ret) => ret
            .regions
            .iter()
            .map(|e| match &e.outcome {
                Ok(v) => (e.region, Some(*v), ""),
                Err(err) => (e.region, None, err.kind()),
            })
            .collect(),
        Err(Error::AllRegionsFailed(errs)) => regions.iter().zip(errs).map(|(r, e)| (*r, None, e.kind())).collect(),
        Err(e) => regions.iter().map(|r| (*r, None, e.kind())).collect(),
    };
    for (i, (reg, value, err)) in rows.iter().enumerate() {
        table.row(&[
            i.to_string(),
            reg.col_start.to_string(),
            reg.col_end.to_string(),
            reg.row_start.to_string(),
            reg.row_end.to_string(),
            opt(value.map(|v| v.k0)),
            opt(value.map(|v| v.shift)),
            opt(value.and_then(|v| v.minima)),
            opt(value.and_then(|v| v.fourier)),
            err.to_string(),
        ]);
    }
    let ret = match retrieval {
        Ok(ret) => ret,
        Err(e) => {
            table.write(&ctx.path("regions.csv"))?;
            return Err(e.into());
        }
    };
    table.write(&ctx.path("regions.csv"))?;

    let truth = img.meta.true_delta.filter(|_| had_sidecar).map(|d| 2.0 * d);
    let abs_error = truth.map(|t| wrap_pi(ret.estimate - t).abs());
    let mut summary = Csv::new(&["quantity", "value"]);
    summary.row(&["estimate".to_string(), num(ret.estimate)]);
    summary.row(&["uncertainty".to_string(), opt(ret.uncertainty)]);
    summary.row(&["discrepancy".to_string(), opt(ret.discrepancy)]);
    summary.row(&["true_shift".to_string(), opt(truth)]);
    summary.row(&["abs_error".to_string(), opt(abs_error)]);
    summary.write(&ctx.path("summary.csv"))?;

    for (i, e) in ret.regions.iter().enumerate() {
        match &e.outcome {
            Ok(v) => println!("region {i}: shift={} k0={}", num(v.shift), num(v.k0)),
            Err(err) => println!("region {i}: failed kind={}", err.kind()),
        }
    }
    println!("estimate={}", num(ret.estimate));
    match ret.uncertainty {
        Some(u) => println!("uncertainty={}", num(u)),
        None => println!("uncertainty=undefined (single region)"),
    }
    if let Some(d) = ret.discrepancy {
        println!("discrepancy={}", num(d));
    }
    if let (Some(t), Some(err)) = (truth, abs_error) {
        println!("true_shift={}", num(t));
        println!("abs_error={}", num(err));
    }
    Ok(())
}
