//! File formats: JSON for series and reports, CSV (with a `# {json}` header
//! line) for grids, measures and circle maps.

use std::io::Write;

use bary_core::{
    CircleHomeo, Complex64, DiskGrid, Domain, LaurentSeries, PolarGrid, RadialGridMeasure, TrigPolynomial,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

pub type Header = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomialJson {
    pub b0: f64,
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&TrigPolynomial> for TrigPolynomialJson {
    fn from(b: &TrigPolynomial) -> Self {
        TrigPolynomialJson {
            b0: b.b0(),
            coeffs: b.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl From<TrigPolynomialJson> for TrigPolynomial {
    fn from(j: TrigPolynomialJson) -> Self {
        TrigPolynomial::new(j.b0, j.coeffs.into_iter().map(complex).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainTag {
    Disk,
    Exterior,
}

impl From<Domain> for DomainTag {
    fn from(d: Domain) -> Self {
        match d {
            Domain::Disk => DomainTag::Disk,
            Domain::Exterior => DomainTag::Exterior,
        }
    }
}

impl From<DomainTag> for Domain {
    fn from(d: DomainTag) -> Self {
        match d {
            DomainTag::Disk => Domain::Disk,
            DomainTag::Exterior => Domain::Exterior,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentSeriesJson {
    pub domain: DomainTag,
    pub n_min: i32,
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&LaurentSeries> for LaurentSeriesJson {
    fn from(s: &LaurentSeries) -> Self {
        LaurentSeriesJson {
            domain: s.domain().into(),
            n_min: s.n_min(),
            coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl From<LaurentSeriesJson> for LaurentSeries {
    fn from(j: LaurentSeriesJson) -> Self {
        LaurentSeries::new(j.domain.into(), j.n_min, j.coeffs.into_iter().map(complex).collect())
    }
}

pub fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn parse_trig(text: &str) -> Result<TrigPolynomial, CliError> {
    Ok(serde_json::from_str::<TrigPolynomialJson>(text)?.into())
}

pub fn parse_series(text: &str) -> Result<LaurentSeries, CliError> {
    Ok(serde_json::from_str::<LaurentSeriesJson>(text)?.into())
}

pub fn grid_header(grid: &PolarGrid) -> Header {
    let mut h = Header::new();
    h.insert("r_max".into(), grid.r_max().into());
    h.insert("nr".into(), grid.nr().into());
    h.insert("ntheta".into(), grid.ntheta().into());
    h
}

fn write_header<W: Write>(out: &mut W, header: &Header) -> Result<(), CliError> {
    writeln!(out, "# {}", Value::Object(header.clone()))?;
    Ok(())
}

/// Splits off the `# {json}` first line.
fn split_header(text: &str) -> Result<(Header, &str), CliError> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let json = first
        .strip_prefix('#')
        .ok_or_else(|| CliError::Format("missing '# {json}' header line".into()))?;
    match serde_json::from_str(json.trim())? {
        Value::Object(map) => Ok((map, rest)),
        _ => Err(CliError::Format("header is not a JSON object".into())),
    }
}

fn header_grid(header: &Header) -> Result<PolarGrid, CliError> {
    let float = |key: &str| {
        header
            .get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| CliError::Format(format!("header lacks numeric '{key}'")))
    };
    let count = |key: &str| {
        header
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| CliError::Format(format!("header lacks integer '{key}'")))
    };
    Ok(PolarGrid::new(float("r_max")?, count("nr")?, count("ntheta")?)?)
}

fn rows<T: serde::de::DeserializeOwned>(body: &str) -> Result<Vec<T>, CliError> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes())
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(CliError::from)
}

fn check_node(grid: &PolarGrid, index: usize, r: f64, theta: f64) -> Result<(), CliError> {
    let (j, k) = grid.split(index);
    if (r - grid.radius(j)).abs() > 1e-9 || (theta - grid.angle(k)).abs() > 1e-9 {
        return Err(CliError::Format(format!(
            "row {} at (r, theta) = ({r}, {theta}) is not grid node ({}, {})",
            index + 1,
            grid.radius(j),
            grid.angle(k)
        )));
    }
    Ok(())
}

/// `r, theta, re, im`; the header gains the grid shape.
pub fn write_disk_grid<W: Write>(out: &mut W, mut header: Header, field: &DiskGrid) -> Result<(), CliError> {
    header.extend(grid_header(field.grid()));
    write_header(out, &header)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "theta", "re", "im"])?;
    for (r, theta, v) in field.rows() {
        w.serialize((r, theta, v.re, v.im))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_disk_grid(text: &str) -> Result<(Header, DiskGrid), CliError> {
    let (header, body) = split_header(text)?;
    let grid = header_grid(&header)?;
    let rows: Vec<(f64, f64, f64, f64)> = rows(body)?;
    if rows.len() != grid.len() {
        return Err(CliError::Format(format!(
            "expected {} rows, found {}",
            grid.len(),
            rows.len()
        )));
    }
    let mut values = Vec::with_capacity(rows.len());
    for (i, (r, theta, re, im)) in rows.into_iter().enumerate() {
        check_node(&grid, i, r, theta)?;
        values.push(Complex64::new(re, im));
    }
    Ok((header, DiskGrid::new(grid, values)?))
}

/// `r, theta, density`; the header gains the domain tag and grid shape.
pub fn write_measure<W: Write>(out: &mut W, mut header: Header, m: &RadialGridMeasure) -> Result<(), CliError> {
    header.insert("domain".into(), serde_json::to_value(DomainTag::from(m.domain()))?);
    header.extend(grid_header(m.grid()));
    write_header(out, &header)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "theta", "density"])?;
    for row in m.rows() {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_measure(text: &str) -> Result<(Header, RadialGridMeasure), CliError> {
    let (header, body) = split_header(text)?;
    let grid = header_grid(&header)?;
    let domain: DomainTag = serde_json::from_value(
        header
            .get("domain")
            .cloned()
            .ok_or_else(|| CliError::Format("header lacks 'domain'".into()))?,
    )?;
    let rows: Vec<(f64, f64, f64)> = rows(body)?;
    if rows.len() != grid.len() {
        return Err(CliError::Format(format!(
            "expected {} rows, found {}",
            grid.len(),
            rows.len()
        )));
    }
    let mut density = Vec::with_capacity(rows.len());
    for (i, (r, theta, d)) in rows.into_iter().enumerate() {
        check_node(&grid, i, r, theta)?;
        density.push(d);
    }
    Ok((header, RadialGridMeasure::new(domain.into(), grid, density)?))
}

/// `u, phi` at the `M + 1` lift nodes.
pub fn write_homeo<W: Write>(out: &mut W, mut header: Header, h: &CircleHomeo) -> Result<(), CliError> {
    header.insert("grid_size".into(), h.grid_size().into());
    write_header(out, &header)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "phi"])?;
    for row in h.rows() {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `u, phi` rows; the header line is optional.
pub fn read_homeo(text: &str) -> Result<CircleHomeo, CliError> {
    let rows: Vec<(f64, f64)> = rows(text)?;
    if rows.len() < 5 {
        return Err(CliError::Format("a circle map needs at least 5 rows".into()));
    }
    let m = rows.len() - 1;
    for (k, (u, _)) in rows.iter().enumerate() {
        let node = std::f64::consts::TAU * k as f64 / m as f64;
        if (u - node).abs() > 1e-9 {
            return Err(CliError::Format(format!(
                "row {}: u = {u} is not the uniform node {node}",
                k + 1
            )));
        }
    }
    Ok(CircleHomeo::from_lift(rows.into_iter().map(|(_, phi)| phi).collect())?)
}

/// Reads `u, f` samples at `u_k = 2πk/M`, `k < M`; the header line is optional.
pub fn read_samples(text: &str) -> Result<Vec<f64>, CliError> {
    let rows: Vec<(f64, f64)> = rows(text)?;
    let m = rows.len();
    if m < 2 {
        return Err(CliError::Format("need at least 2 samples".into()));
    }
    for (k, (u, _)) in rows.iter().enumerate() {
        let node = std::f64::consts::TAU * k as f64 / m as f64;
        if (u - node).abs() > 1e-9 {
            return Err(CliError::Format(format!(
                "row {}: u = {u} is not the uniform node {node}",
                k + 1
            )));
        }
    }
    Ok(rows.into_iter().map(|(_, f)| f).collect())
}
