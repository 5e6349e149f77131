use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use knot_slope::apoly::{
    compute_apoly_twobridge, ideal_point_slopes, log_gauss, newton_polygon, side_slopes, BiLaurent, IdealSlopeReport,
    NewtonPolygon, PolyJson, SideSlope,
};
use knot_slope::data;
use knot_slope::presentation::KnotPresentation;
use knot_slope::representation::{boundary_data, riley_family};
use knot_slope::slope::{augment, compute_slope, SlopeConfig, SlopeReading};

use crate::args::{Format, GlobalOpts};
use crate::config::{parse_complex, slope_config, ScanConfig, DEFAULT_REL_TOL, DEFAULT_VERIFY_TOL};
use crate::error::CliError;
use crate::input::{load_polynomial, load_presentation};
use crate::report::{summarize, write_csv, ScanReport, SlopeRecord};
use crate::Outcome;

/// Records for every Riley root at `m`; a failure to solve becomes one
/// record carrying the error.
pub fn records_at(
    pres: &Arc<KnotPresentation>,
    index: usize,
    m: Complex64,
    rel_tol: f64,
    cfg: &SlopeConfig,
) -> Vec<SlopeRecord> {
    match riley_family(pres, m, rel_tol) {
        Ok(family) if family.is_empty() => vec![SlopeRecord::failed(index, m, "no Riley roots".into())],
        Ok(family) => family.iter().enumerate().map(|(k, r)| SlopeRecord::evaluate(index, k, m, r, cfg)).collect(),
        Err(e) => vec![SlopeRecord::failed(index, m, e.to_string())],
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_records_text(out: &mut dyn Write, records: &[SlopeRecord]) -> Result<(), CliError> {
    for r in records {
        let slope = r.slope.map_or_else(|| "-".to_string(), |s| s.to_string());
        let verdict = r.verdict.map_or_else(|| "-".to_string(), |v| v.to_string());
        write!(out, "{} {} M={} slope={} {}", r.index, r.root, r.m, slope, verdict)?;
        match &r.error {
            Some(e) => writeln!(out, " ({e})")?,
            None => writeln!(out)?,
        }
    }
    Ok(())
}

pub fn cmd_slope(file: &str, m: &str, opts: &GlobalOpts, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let pres = load_presentation(file)?;
    let m = parse_complex(m)?;
    let cfg = slope_config(opts)?;
    let rel_tol = opts.tol.unwrap_or(DEFAULT_REL_TOL);
    // shape errors are usage errors here, not per-sample failures
    let family = riley_family(&pres, m, rel_tol)?;
    let records: Vec<SlopeRecord> =
        family.iter().enumerate().map(|(k, r)| SlopeRecord::evaluate(0, k, m, r, &cfg)).collect();
    match opts.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &records)?,
        Format::Csv => write_csv(out, &records)?,
        Format::Text => write_records_text(out, &records)?,
    }
    Ok(Outcome::Pass)
}

pub fn scan(pres: &Arc<KnotPresentation>, cfg: &ScanConfig) -> ScanReport {
    let records: Vec<SlopeRecord> = cfg
        .samples
        .par_iter()
        .enumerate()
        .map(|(i, &m)| records_at(pres, i, m, cfg.rel_tol, &cfg.slope))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let failures = records.iter().filter(|r| r.component.is_none()).count();
    ScanReport { seed: cfg.seed, samples: cfg.samples.len(), summary: summarize(&records), records, failures }
}

pub fn cmd_scan(file: &str, opts: &GlobalOpts, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let pres = load_presentation(file)?;
    let cfg = ScanConfig::from_opts(opts, DEFAULT_REL_TOL)?;
    let report = scan(&pres, &cfg);
    match opts.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_csv(out, &report.records)?,
        Format::Text => write_records_text(out, &report.records)?,
    }
    for s in &report.summary {
        eprintln!(
            "{:?}: {} readings, mean {}, variance {:e}",
            s.component,
            s.finite,
            s.mean.map_or_else(|| "-".into(), |m| m.to_string()),
            s.variance.unwrap_or(0.0)
        );
    }
    Ok(Outcome::Pass)
}

#[derive(Clone, Debug, Serialize)]
pub struct ApolyReport {
    pub polynomial: String,
    pub terms: PolyJson,
    pub repeated: String,
    pub riley_polynomial: String,
    pub reducible_factor_added: bool,
    pub newton_polygon: NewtonPolygon,
    pub side_slopes: Vec<SideSlope>,
    pub ideal_slopes: IdealSlopeReport,
}

pub fn apoly_report(pres: &KnotPresentation, with_reducible: bool) -> Result<ApolyReport, CliError> {
    let result = compute_apoly_twobridge(pres, with_reducible)?;
    let polygon = newton_polygon(&result.polynomial)?;
    Ok(ApolyReport {
        polynomial: result.polynomial.to_string(),
        terms: result.polynomial.to_json(),
        repeated: result.repeated.to_string(),
        riley_polynomial: result.riley_polynomial.to_string(),
        reducible_factor_added: result.reducible_factor_added,
        side_slopes: side_slopes(&polygon)?,
        newton_polygon: polygon,
        ideal_slopes: ideal_point_slopes(&result.polynomial)?,
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn cmd_apoly(file: &str, opts: &GlobalOpts, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let pres = load_presentation(file)?;
    let report = apoly_report(&pres, opts.with_reducible)?;
    match opts.format.unwrap_or(Format::Text) {
        Format::Json => write_json(out, &report)?,
        Format::Text => {
            writeln!(out, "A-polynomial: {}", report.polynomial)?;
            writeln!(out, "repeated factor: {}", report.repeated)?;
            writeln!(out, "Riley polynomial: {}", report.riley_polynomial)?;
            let vertices = report.newton_polygon.vertices.iter().map(|(i, j)| format!("({i},{j})"));
            writeln!(out, "Newton polygon: {}", join(vertices))?;
            writeln!(out, "side slopes: {}", join(&report.side_slopes))?;
            writeln!(out, "ideal slopes: {}", join(report.ideal_slopes.ideal_slopes()))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["from_i", "from_j", "to_i", "to_j", "side_slope", "ideal_slope"])?;
            for s in &report.newton_polygon.sides {
                w.write_record([
                    s.from.0.to_string(),
                    s.from.1.to_string(),
                    s.to.0.to_string(),
                    s.to.1.to_string(),
                    s.slope.to_string(),
                    s.slope.negated().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySample {
    pub index: usize,
    pub root: usize,
    #[serde(rename = "M")]
    pub m: Complex64,
    #[serde(rename = "L")]
    pub l: Option<Complex64>,
    pub fox: Option<SlopeReading>,
    pub gauss: Option<SlopeReading>,
    pub deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Residuals of the curve `2x^2 + y^2 - x^2 y - y - 1 = 0` with `x` the
/// meridian trace and `y` the trace of `uv` or of `uv^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct CurveCheck {
    pub residual_uv: f64,
    pub residual_uv_inv: f64,
    /// The trace word that satisfies the curve, if either does.
    pub trace_word: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub polynomial: String,
    pub polynomial_given: bool,
    pub tolerance: f64,
    pub compared: usize,
    pub skipped: usize,
    pub failed: usize,
    pub max_deviation: f64,
    pub worst: Option<[usize; 2]>,
    pub curve: Option<CurveCheck>,
    pub pass: bool,
    pub samples: Vec<VerifySample>,
}

/// Relative distance of two readings, chordal when either is infinite.
pub fn deviation(a: SlopeReading, b: SlopeReading) -> f64 {
    match (a, b) {
        (SlopeReading::Finite(x), SlopeReading::Finite(y)) => {
            let scale = x.norm().max(y.norm());
            if scale == 0.0 {
                0.0
            } else {
                (x - y).norm() / scale
            }
        }
        _ => a.chordal_distance(b),
    }
}

const CURVE_TOL: f64 = 1e-8;

fn curve_residual(x: Complex64, y: Complex64) -> f64 {
    let f = 2.0 * x * x + y * y - x * x * y - y - 1.0;
    let scale = 2.0 * x.norm_sqr() + y.norm_sqr() + x.norm_sqr() * y.norm() + y.norm() + 1.0;
    f.norm() / scale
}

fn verify_root(
    index: usize,
    root: usize,
    m: Complex64,
    r: &knot_slope::representation::RileyRep,
    a: &BiLaurent,
    cfg: &SlopeConfig,
) -> VerifySample {
    let mut s = VerifySample { index, root, m, l: None, fox: None, gauss: None, deviation: None, note: None };
    if r.reducible {
        s.note = Some("reducible root".into());
        return s;
    }
    let bd = match boundary_data(&r.rep, cfg.eig_tol) {
        Ok(bd) => bd,
        Err(e) => {
            s.note = Some(e.to_string());
            return s;
        }
    };
    s.m = bd.m;
    s.l = Some(bd.l);
    match compute_slope(&r.rep, cfg) {
        Ok(v) => s.fox = Some(v.reading),
        Err(e) => {
            s.note = Some(e.to_string());
            return s;
        }
    }
    match log_gauss(a, bd.l, bd.m) {
        Ok(g) => {
            s.gauss = Some(g);
            s.deviation = s.fox.map(|f| deviation(f, g));
        }
        Err(e) => s.note = Some(format!("logarithmic Gauss map: {e}")),
    }
    s
}

/// Comparisons at one sample and the curve residuals of its roots.
type SampleChecks = (Vec<VerifySample>, Vec<(f64, f64)>);

pub fn verify(
    pres: &Arc<KnotPresentation>,
    given: Option<BiLaurent>,
    cfg: &ScanConfig,
    tolerance: f64,
    with_reducible: bool,
) -> Result<VerifyReport, CliError> {
    let polynomial_given = given.is_some();
    let a = match given {
        Some(a) => a,
        None => compute_apoly_twobridge(pres, with_reducible)?.polynomial,
    };
    let per_sample: Vec<SampleChecks> = cfg
        .samples
        .par_iter()
        .enumerate()
        .map(|(i, &m)| match riley_family(pres, m, cfg.rel_tol) {
            Ok(family) => {
                let samples = family.iter().enumerate().map(|(k, r)| verify_root(i, k, m, r, &a, &cfg.slope)).collect();
                let curve = family
                    .iter()
                    .filter(|r| !r.reducible)
                    .map(|r| {
                        let u = *r.rep.image(0);
                        let v = *r.rep.image(1);
                        let x = u.trace();
                        (curve_residual(x, u.mul(&v).trace()), curve_residual(x, u.mul(&v.inverse()).trace()))
                    })
                    .collect();
                (samples, curve)
            }
            Err(e) => {
                let s = VerifySample {
                    index: i,
                    root: 0,
                    m,
                    l: None,
                    fox: None,
                    gauss: None,
                    deviation: None,
                    note: Some(e.to_string()),
                };
                (vec![s], Vec::new())
            }
        })
        .collect();
    let mut samples = Vec::new();
    let mut curve_residuals = Vec::new();
    for (s, c) in per_sample {
        samples.extend(s);
        curve_residuals.extend(c);
    }
    let compared = samples.iter().filter(|s| s.fox.is_some()).count();
    let failed = samples.iter().filter(|s| s.fox.is_some() && s.deviation.is_none()).count();
    let skipped = samples.len() - compared;
    let (mut max_deviation, mut worst) = (0.0, None);
    for s in &samples {
        if let Some(d) = s.deviation {
            if d >= max_deviation {
                max_deviation = d;
                worst = Some([s.index, s.root]);
            }
        }
    }
    let curve = (**pres == *data::figure_eight()).then(|| {
        let uv = curve_residuals.iter().map(|c| c.0).fold(0.0, f64::max);
        let uv_inv = curve_residuals.iter().map(|c| c.1).fold(0.0, f64::max);
        let trace_word = if uv <= CURVE_TOL {
            Some("u v".to_string())
        } else if uv_inv <= CURVE_TOL {
            Some("u v^-1".to_string())
        } else {
            None
        };
        CurveCheck { residual_uv: uv, residual_uv_inv: uv_inv, pass: trace_word.is_some(), trace_word }
    });
    let pass = compared > 0 && failed == 0 && max_deviation <= tolerance && curve.as_ref().is_none_or(|c| c.pass);
    Ok(VerifyReport {
        polynomial: a.to_string(),
        polynomial_given,
        tolerance,
        compared,
        skipped,
        failed,
        max_deviation,
        worst,
        curve,
        pass,
        samples,
    })
}

pub fn cmd_verify(file: &str, poly: Option<&str>, opts: &GlobalOpts, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let pres = load_presentation(file)?;
    let given = poly.map(load_polynomial).transpose()?;
    let cfg = ScanConfig::from_opts(opts, DEFAULT_VERIFY_TOL)?;
    // the deviation bound comes from --tol; Riley roots keep the default
    let tolerance = cfg.rel_tol;
    let cfg = ScanConfig { rel_tol: DEFAULT_REL_TOL, ..cfg };
    let report = verify(&pres, given, &cfg, tolerance, opts.with_reducible)?;
    match opts.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "index",
                "root",
                "m_re",
                "m_im",
                "fox_re",
                "fox_im",
                "gauss_re",
                "gauss_im",
                "deviation",
                "note",
            ])?;
            let part = |r: Option<SlopeReading>, im: bool| {
                r.map_or_else(String::new, |r| match r.finite() {
                    Some(z) => (if im { z.im } else { z.re }).to_string(),
                    None => "inf".into(),
                })
            };
            for s in &report.samples {
                w.write_record([
                    s.index.to_string(),
                    s.root.to_string(),
                    s.m.re.to_string(),
                    s.m.im.to_string(),
                    part(s.fox, false),
                    part(s.fox, true),
                    part(s.gauss, false),
                    part(s.gauss, true),
                    s.deviation.map_or_else(String::new, |d| d.to_string()),
                    s.note.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "polynomial: {}", report.polynomial)?;
            writeln!(out, "compared {} skipped {} failed {}", report.compared, report.skipped, report.failed)?;
            writeln!(out, "max deviation: {:e}", report.max_deviation)?;
            if let Some(c) = &report.curve {
                writeln!(out, "curve: {}", c.trace_word.as_deref().unwrap_or("no trace word fits"))?;
            }
        }
    }
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    eprintln!("{verdict}: max relative deviation {:e} (tolerance {:e})", report.max_deviation, report.tolerance);
    Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub generators: Vec<String>,
    pub relations: usize,
    pub meridian: String,
    pub longitude: String,
    pub longitude_exponent_sum: i64,
    /// Generators of the augmented presentation used by the slope engine,
    /// when the meridian is a generator.
    pub augmented_generators: Option<Vec<String>>,
    /// Largest `|[rho(m), rho(l)]|` over Riley roots at a test eigenvalue.
    pub longitude_commutator: Option<f64>,
    pub pass: bool,
    pub text: String,
}

const CHECK_M: Complex64 = Complex64::new(1.3, 0.2);

pub fn check_presentation(pres: &Arc<KnotPresentation>) -> Result<PresentationReport, CliError> {
    let augmented = augment(pres).ok().map(|a| a.generator_names().to_vec());
    let commutator = if pres.generator_count() == 2 { Some(data::longitude_commutator(pres, CHECK_M)?) } else { None };
    let names = pres.generators();
    Ok(PresentationReport {
        generators: names.to_vec(),
        relations: pres.relations().len(),
        meridian: pres.word_to_string(pres.meridian()),
        longitude: pres.word_to_string(pres.longitude()),
        longitude_exponent_sum: pres.longitude().total_exponent(),
        augmented_generators: augmented,
        pass: commutator.is_none_or(|c| c <= 1e-8),
        longitude_commutator: commutator,
        text: pres.format(),
    })
}

pub fn cmd_presentation_check(file: &str, opts: &GlobalOpts, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let pres = load_presentation(file)?;
    let report = check_presentation(&pres)?;
    match opts.format.unwrap_or(Format::Text) {
        Format::Json => write_json(out, &report)?,
        Format::Csv => return Err(CliError::Usage("`presentation check` has no CSV output".into())),
        Format::Text => {
            write!(out, "{}", report.text)?;
            if !report.text.ends_with('\n') {
                writeln!(out)?;
            }
            if let Some(c) = report.longitude_commutator {
                writeln!(out, "# longitude commutator at M = {CHECK_M}: {c:e}")?;
            }
        }
    }
    if !report.pass {
        eprintln!("FAIL: longitude does not commute with the meridian");
    }
    Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
}
