//! Report records and their JSON/CSV renderings.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use knot_slope::representation::{boundary_data_on, EigenBranch, RileyRep};
use knot_slope::slope::{admissibility, slope_of_character, Residuals, SlopeConfig, SlopeReading, Verdict};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Irreducible,
    Reducible,
}

/// One Riley representation at one sample of `M`.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeRecord {
    pub index: usize,
    pub root: usize,
    pub component: Option<Component>,
    pub t: Option<Complex64>,
    #[serde(rename = "M")]
    pub m: Complex64,
    #[serde(rename = "L")]
    pub l: Option<Complex64>,
    pub x: Option<Complex64>,
    pub slope: Option<SlopeReading>,
    pub verdict: Option<Verdict>,
    pub residuals: Option<Residuals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SlopeRecord {
    /// A sample at which no representation could be produced.
    pub fn failed(index: usize, m: Complex64, error: String) -> Self {
        SlopeRecord {
            index,
            root: 0,
            component: None,
            t: None,
            m,
            l: None,
            x: None,
            slope: None,
            verdict: None,
            residuals: None,
            error: Some(error),
        }
    }

    /// Evaluates one Riley root. `(M, L)` are read on the eigenvector whose
    /// eigenvalue is closest to the requested `m`.
    pub fn evaluate(index: usize, root: usize, m: Complex64, r: &RileyRep, cfg: &SlopeConfig) -> Self {
        let boundary = [EigenBranch::Preferred, EigenBranch::Other]
            .into_iter()
            .filter_map(|b| boundary_data_on(&r.rep, cfg.eig_tol, b).ok())
            .min_by(|a, b| (a.m - m).norm().total_cmp(&(b.m - m).norm()));
        let report = admissibility(&r.rep, cfg);
        let slope = slope_of_character(&r.rep, cfg);
        SlopeRecord {
            index,
            root,
            component: Some(if r.reducible { Component::Reducible } else { Component::Irreducible }),
            t: Some(r.t),
            m: boundary.map_or(m, |b| b.m),
            l: boundary.map(|b| b.l),
            x: Some(r.rep.meridian_image().trace()),
            slope: slope.as_ref().ok().map(|s| s.reading),
            verdict: Some(report.verdict),
            residuals: Some(report.residuals),
            error: slope.err().map(|e| e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    index: usize,
    root: usize,
    component: Option<Component>,
    t_re: Option<f64>,
    t_im: Option<f64>,
    m_re: f64,
    m_im: f64,
    l_re: Option<f64>,
    l_im: Option<f64>,
    x_re: Option<f64>,
    x_im: Option<f64>,
    slope_re: Option<f64>,
    slope_im: Option<f64>,
    slope_infinite: bool,
    verdict: Option<Verdict>,
    relator_residual: Option<f64>,
    boundary_commutator: Option<f64>,
    invariant_vector_residual: Option<f64>,
    projection_residual: Option<f64>,
    error: Option<String>,
}

impl From<&SlopeRecord> for CsvRow {
    fn from(r: &SlopeRecord) -> Self {
        let finite = r.slope.and_then(|s| s.finite());
        CsvRow {
            index: r.index,
            root: r.root,
            component: r.component,
            t_re: r.t.map(|z| z.re),
            t_im: r.t.map(|z| z.im),
            m_re: r.m.re,
            m_im: r.m.im,
            l_re: r.l.map(|z| z.re),
            l_im: r.l.map(|z| z.im),
            x_re: r.x.map(|z| z.re),
            x_im: r.x.map(|z| z.im),
            slope_re: finite.map(|z| z.re),
            slope_im: finite.map(|z| z.im),
            slope_infinite: r.slope.is_some_and(|s| s.is_infinite()),
            verdict: r.verdict,
            relator_residual: r.residuals.as_ref().map(|x| x.relator),
            boundary_commutator: r.residuals.as_ref().map(|x| x.boundary_commutator),
            invariant_vector_residual: r.residuals.as_ref().and_then(|x| x.invariant_vector),
            projection_residual: r.residuals.as_ref().and_then(|x| x.projection),
            error: r.error.clone(),
        }
    }
}

pub fn write_csv(out: &mut dyn Write, records: &[SlopeRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Statistics of the finite readings on one component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub component: Component,
    pub count: usize,
    pub finite: usize,
    pub infinite: usize,
    pub failed: usize,
    pub mean: Option<Complex64>,
    /// Mean of `|s - mean|^2`.
    pub variance: Option<f64>,
    pub max_deviation: Option<f64>,
    pub re_range: Option<[f64; 2]>,
    pub im_range: Option<[f64; 2]>,
}

pub fn summarize(records: &[SlopeRecord]) -> Vec<ComponentSummary> {
    [Component::Irreducible, Component::Reducible]
        .into_iter()
        .filter_map(|c| {
            let on: Vec<&SlopeRecord> = records.iter().filter(|r| r.component == Some(c)).collect();
            if on.is_empty() {
                return None;
            }
            let values: Vec<Complex64> = on.iter().filter_map(|r| r.slope.and_then(|s| s.finite())).collect();
            let infinite = on.iter().filter(|r| r.slope.is_some_and(|s| s.is_infinite())).count();
            let n = values.len() as f64;
            let mean = (!values.is_empty()).then(|| values.iter().sum::<Complex64>() / n);
            let dev = |m: Complex64| values.iter().map(move |s| (s - m).norm());
            let range = |f: fn(&Complex64) -> f64| {
                (!values.is_empty()).then(|| {
                    let it = values.iter().map(f);
                    [it.clone().fold(f64::INFINITY, f64::min), it.fold(f64::NEG_INFINITY, f64::max)]
                })
            };
            Some(ComponentSummary {
                component: c,
                count: on.len(),
                finite: values.len(),
                infinite,
                failed: on.len() - values.len() - infinite,
                mean,
                variance: mean.map(|m| dev(m).map(|d| d * d).sum::<f64>() / n),
                max_deviation: mean.map(|m| dev(m).fold(0.0, f64::max)),
                re_range: range(|z| z.re),
                im_range: range(|z| z.im),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub seed: u64,
    pub samples: usize,
    pub records: Vec<SlopeRecord>,
    pub summary: Vec<ComponentSummary>,
    /// Samples at which no representation was produced.
    pub failures: usize,
}
