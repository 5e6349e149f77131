use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use knot_slope::slope::SlopeConfig;

use crate::args::GlobalOpts;
use crate::error::CliError;

pub const DEFAULT_REL_TOL: f64 = 1e-8;
pub const DEFAULT_VERIFY_TOL: f64 = 1e-6;

/// Box `[r0, r1] x [t0, t1]` in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleArc {
    pub r0: f64,
    pub r1: f64,
    pub t0: f64,
    pub t1: f64,
}

pub fn parse_arc(s: &str) -> Result<SampleArc, String> {
    let parts: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"))).collect::<Result<_, _>>()?;
    let [r0, r1, t0, t1] = parts[..] else {
        return Err(format!("expected r0,r1,t0,t1, got {} values", parts.len()));
    };
    if !(r0 > 0.0 && r0 <= r1 && t0 <= t1) || parts.iter().any(|x| !x.is_finite()) {
        return Err("need 0 < r0 <= r1 and t0 <= t1".into());
    }
    Ok(SampleArc { r0, r1, t0, t1 })
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `a,b`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse `{s}` as a complex number"));
    let s = s.trim();
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad());
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(num(re)?, num(im)?));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(num(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => num(other)?,
    };
    Ok(Complex64::new(re, im))
}

/// Sampling and tolerance settings shared by `scan` and `verify`.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub samples: Vec<Complex64>,
    pub rel_tol: f64,
    pub slope: SlopeConfig,
    pub seed: u64,
}

fn check_tol(name: &str, t: f64) -> Result<f64, CliError> {
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(CliError::Config(format!("{name} must lie in (0, 1), got {t}")))
    }
}

/// Seeded uniform samples from the arc, in draw order.
pub fn draw_samples(arc: &SampleArc, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = if arc.r0 == arc.r1 { arc.r0 } else { rng.random_range(arc.r0..=arc.r1) };
            let t = if arc.t0 == arc.t1 { arc.t0 } else { rng.random_range(arc.t0..=arc.t1) };
            Complex64::from_polar(r, t)
        })
        .collect()
}

pub fn slope_config(opts: &GlobalOpts) -> Result<SlopeConfig, CliError> {
    let mut cfg = SlopeConfig::default();
    if let Some(t) = opts.rank_tol {
        cfg.rank_tol = check_tol("--rank-tol", t)?;
    }
    Ok(cfg)
}

impl ScanConfig {
    /// Builds the configuration; `default_tol` applies when `--tol` is absent.
    pub fn from_opts(opts: &GlobalOpts, default_tol: f64) -> Result<Self, CliError> {
        if opts.samples == 0 {
            return Err(CliError::Config("--samples must be at least 1".into()));
        }
        Ok(ScanConfig {
            samples: draw_samples(&opts.arc, opts.samples, opts.seed),
            rel_tol: check_tol("--tol", opts.tol.unwrap_or(default_tol))?,
            slope: slope_config(opts)?,
            seed: opts.seed,
        })
    }
}
