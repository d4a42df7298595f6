use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use bary_core::barycentric::{self, BoundaryData};
use bary_core::carleson::{carleson_norm, dilatation_measure, vanishing_profile};
use bary_core::circle_maps::{bmo_norm, flow_homeo};
use bary_core::gateaux::{fefferman_stein_density, finite_diff_check, gateaux_direct, gateaux_fourier};
use bary_core::schwarzian::{curly_b_norm, hyp_sup_norm, schwarzian, SupSampling};
use bary_core::{
    CarlesonConfig, CircleHomeo, Complex64, DiskGrid, DiskMobius, PeriodicRule, PolarGrid, RadialGridMeasure,
    TrigPolynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::formats::{self, pair, Header, TrigPolynomialJson};
use crate::{Cli, CliError, Command, Global, MeasureKind, Route};

/// JSON description of a circle homeomorphism fixing 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomeoSpec {
    Identity,
    /// Disk automorphism `z ↦ λ(z − a)/(1 − āz)` with `λ` chosen to fix 1.
    Mobius {
        center: [f64; 2],
    },
    /// Like `mobius`, with the center drawn uniformly from `|a| ≤ radius`
    /// using `--seed`.
    RandomMobius {
        radius: f64,
    },
    /// Flow of `b` at time `t`.
    Flow {
        b: TrigPolynomialJson,
        t: f64,
    },
    /// Lift values `φ(2πk/M)`, `k = 0..=M`.
    Lift {
        phi: Vec<f64>,
    },
}

impl HomeoSpec {
    pub fn build(&self, grid: usize, seed: u64) -> Result<CircleHomeo, CliError> {
        Ok(match self {
            HomeoSpec::Identity => CircleHomeo::identity(grid),
            HomeoSpec::Mobius { center } => mobius(DiskMobius::fixing_one(formats::complex(*center))?, grid)?,
            HomeoSpec::RandomMobius { radius } => {
                if !(*radius >= 0.0 && *radius < 1.0) {
                    return Err(CliError::Usage(format!(
                        "random_mobius radius must lie in [0, 1), got {radius}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r = radius * rng.gen::<f64>().sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                mobius(DiskMobius::fixing_one(Complex64::from_polar(r, theta))?, grid)?
            }
            HomeoSpec::Flow { b, t } => flow_homeo(&b.clone().into(), *t, grid)?,
            HomeoSpec::Lift { phi } => CircleHomeo::from_lift(phi.clone())?,
        })
    }
}

fn mobius(m: DiskMobius, grid: usize) -> Result<CircleHomeo, CliError> {
    Ok(CircleHomeo::from_circle_map(grid, |z| m.apply(z))?)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Loads a homeomorphism and the header value describing it.
fn load_homeo(path: &Path, g: &Global) -> Result<(CircleHomeo, Value), CliError> {
    let text = read(path)?;
    if is_csv(path) {
        let h = formats::read_homeo(&text)?;
        Ok((h, json!({ "csv": path.display().to_string() })))
    } else {
        let spec: HomeoSpec = serde_json::from_str(&text)?;
        let h = spec.build(g.quad_points, g.seed)?;
        Ok((h, serde_json::to_value(&spec)?))
    }
}

fn load_trig(path: &Path) -> Result<(TrigPolynomial, Value), CliError> {
    let b = formats::parse_trig(&read(path)?)?;
    let value = serde_json::to_value(TrigPolynomialJson::from(&b))?;
    Ok((b, value))
}

fn base_header(command: &str, g: &Global) -> Header {
    let mut h = Header::new();
    h.insert("command".into(), command.into());
    h.insert("quad_points".into(), g.quad_points.into());
    h.insert("newton_tol".into(), g.newton_tol.into());
    h.insert("seed".into(), g.seed.into());
    h
}

/// Non-finite values become the strings "inf", "-inf" or "nan".
fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn output(g: &Global) -> Result<Box<dyn Write>, CliError> {
    Ok(match &g.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        })?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn emit_json(g: &Global, header: Header, mut report: serde_json::Map<String, Value>) -> Result<(), CliError> {
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), Value::Object(header));
    doc.append(&mut report);
    let mut out = output(g)?;
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn emit_grid(g: &Global, header: Header, field: &DiskGrid) -> Result<(), CliError> {
    let mut out = output(g)?;
    formats::write_disk_grid(&mut out, header, field)?;
    out.flush()?;
    Ok(())
}

fn solver_for(g: &Global, grid: &PolarGrid) -> bary_core::SolverConfig {
    bary_core::SolverConfig {
        r_max: grid.r_max(),
        ..g.solver()
    }
}

fn report(pairs: Vec<(&str, Value)>) -> serde_json::Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Extend { homeo, grid } => {
            let (h, spec) = load_homeo(homeo, g)?;
            let field = BoundaryData::new(&h, solver_for(g, grid))?.extension_field(grid)?;
            let mut header = base_header("extend", g);
            header.insert("homeo".into(), spec);
            emit_grid(g, header, &field)
        }
        Command::Homeo { homeo } => {
            let (h, spec) = load_homeo(homeo, g)?;
            let mut header = base_header("homeo", g);
            header.insert("homeo".into(), spec);
            let mut out = output(g)?;
            formats::write_homeo(&mut out, header, &h)?;
            out.flush()?;
            Ok(())
        }
        Command::Dilatation { b, t, grid } => {
            let (b, spec) = load_trig(b)?;
            let h = flow_homeo(&b, *t, g.quad_points)?;
            let field = barycentric::dilatation_field(&h, grid, solver_for(g, grid))?;
            let mut header = base_header("dilatation", g);
            header.insert("b".into(), spec);
            header.insert("t".into(), (*t).into());
            emit_grid(g, header, &field)
        }
        Command::Gateaux { b, route, grid } => {
            let (b, spec) = load_trig(b)?;
            let rule = PeriodicRule::new(g.quad_points)?;
            let mut values = Vec::with_capacity(grid.len());
            let mut discrepancy = 0.0f64;
            for z in grid.points() {
                let v = match route {
                    Route::Direct => gateaux_direct(&b, z, &rule)?,
                    Route::Fourier => gateaux_fourier(&b, z)?,
                    Route::Both => {
                        let d = gateaux_direct(&b, z, &rule)?;
                        discrepancy = discrepancy.max((d - gateaux_fourier(&b, z)?).norm());
                        d
                    }
                };
                values.push(v);
            }
            let mut header = base_header("gateaux", g);
            header.insert("b".into(), spec);
            header.insert(
                "route".into(),
                match route {
                    Route::Direct => "direct",
                    Route::Fourier => "fourier",
                    Route::Both => "both",
                }
                .into(),
            );
            if *route == Route::Both {
                header.insert("max_route_discrepancy".into(), number(discrepancy));
            }
            emit_grid(g, header, &DiskGrid::new(*grid, values)?)
        }
        Command::GateauxCheck { b, z, t } => {
            let (b, spec) = load_trig(b)?;
            let r = finite_diff_check(&b, formats::complex(*z), t, g.solver())?;
            let mut header = base_header("gateaux-check", g);
            header.insert("b".into(), spec);
            emit_json(
                g,
                header,
                report(vec![
                    ("z", json!(pair(r.z))),
                    ("t", json!(r.t)),
                    (
                        "mu_over_t",
                        json!(r.mu_over_t.iter().map(|s| pair(*s)).collect::<Vec<_>>()),
                    ),
                    ("extrapolated", json!(pair(r.extrapolated))),
                    ("closed_form", json!(pair(r.closed_form))),
                    ("abs_error", number(r.abs_error)),
                    ("observed_order", r.observed_order.map_or(Value::Null, number)),
                ]),
            )
        }
        Command::Measure { kind, b, t, grid } => {
            let mut header = base_header("measure", g);
            let need_b = || {
                b.as_deref()
                    .ok_or_else(|| CliError::Usage("--b is required for this measure kind".into()))
            };
            let m = match kind {
                MeasureKind::Area => {
                    header.insert("kind".into(), "area".into());
                    RadialGridMeasure::area(*grid)?
                }
                MeasureKind::FeffermanStein => {
                    let (b, spec) = load_trig(need_b()?)?;
                    header.insert("kind".into(), "fefferman_stein".into());
                    header.insert("b".into(), spec);
                    fefferman_stein_density(&b, grid, &PeriodicRule::new(g.quad_points)?)?.measure
                }
                MeasureKind::Dilatation => {
                    let (b, spec) = load_trig(need_b()?)?;
                    let t = t.ok_or_else(|| CliError::Usage("--t is required for --kind dilatation".into()))?;
                    header.insert("kind".into(), "dilatation".into());
                    header.insert("b".into(), spec);
                    header.insert("t".into(), t.into());
                    let h = flow_homeo(&b, t, g.quad_points)?;
                    dilatation_measure(&barycentric::dilatation_field(&h, grid, solver_for(g, grid))?)?
                }
            };
            let mut out = output(g)?;
            formats::write_measure(&mut out, header, &m)?;
            out.flush()?;
            Ok(())
        }
        Command::Carleson {
            measure,
            centers,
            ratio,
            r_min,
        } => {
            if *centers == 0 {
                return Err(CliError::Usage("--centers must be positive".into()));
            }
            if !(*ratio > 1.0) {
                return Err(CliError::Usage(format!("--ratio must exceed 1, got {ratio}")));
            }
            if let Some(r) = r_min {
                if !(*r > 0.0 && *r <= 2.0) {
                    return Err(CliError::Usage(format!("--r-min must lie in (0, 2], got {r}")));
                }
            }
            let (input, m) = formats::read_measure(&read(measure)?)?;
            let cfg = CarlesonConfig {
                centers: *centers,
                ratio: *ratio,
                r_min: *r_min,
            };
            let profile = vanishing_profile(&m, &cfg);
            let mut header = base_header("carleson", g);
            header.insert("measure".into(), measure.display().to_string().into());
            header.insert("measure_header".into(), Value::Object(input));
            header.insert("centers".into(), (*centers).into());
            header.insert("ratio".into(), (*ratio).into());
            header.insert("r_min".into(), r_min.map_or(Value::Null, number));
            emit_json(
                g,
                header,
                report(vec![
                    ("norm", number(carleson_norm(&m, &cfg))),
                    ("total_mass", number(m.total_mass())),
                    ("radii", json!(profile.radii)),
                    ("ratios", json!(profile.ratios)),
                ]),
            )
        }
        Command::Bmo { f } => {
            let samples = formats::read_samples(&read(f)?)?;
            let mut header = base_header("bmo", g);
            header.insert("f".into(), f.display().to_string().into());
            emit_json(
                g,
                header,
                report(vec![
                    ("points", json!(samples.len())),
                    ("bmo", number(bmo_norm(&samples))),
                ]),
            )
        }
        Command::Schwarzian { series, z, norms, grid } => {
            let text = read(series)?;
            let f = formats::parse_series(&text)?;
            let z = formats::complex(*z);
            let s = schwarzian(&f, z)?;
            let mut header = base_header("schwarzian", g);
            header.insert(
                "series".into(),
                serde_json::to_value(formats::LaurentSeriesJson::from(&f))?,
            );
            let mut fields = vec![("z", json!(pair(z))), ("schwarzian", json!(pair(s)))];
            if *norms {
                let sampling = SupSampling::default();
                header.insert("grid".into(), Value::Object(formats::grid_header(grid)));
                header.insert("sup_rings".into(), sampling.rings.into());
                header.insert("sup_angles".into(), sampling.angles.into());
                fields.push(("hyp_sup_norm", number(hyp_sup_norm(&f, sampling))));
                fields.push((
                    "curly_b_norm",
                    number(curly_b_norm(&f, *grid, &CarlesonConfig::default())?),
                ));
            }
            emit_json(g, header, report(fields))
        }
    }
}
