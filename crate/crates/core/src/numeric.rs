//! Floating-point evaluation of q-series on the upper half-plane and
//! numerical checks of automorphy and vanishing orders.
//!
//! The derivative of a Hauptmodul transforms as
//! `w'(g tau) = (c tau + d)^2 w'(tau)`, so each `h_j` picks up `(c tau + d)^k`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::basis::{build_basis, Basis};
use crate::error::{Error, Result};
use crate::groups::{moebius_apply, GroupData, GroupElement};
use crate::qseries::QSeries;

/// Guard against division by a vanishing reference value.
pub const NEAR_ZERO: f64 = 1e-30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    /// Exponents `e < terms_used` (units of `1/h`) are summed.
    pub terms_used: i64,
    /// Smallest admissible `Im(tau)`.
    pub min_imag: f64,
    /// Relative-residual threshold used by the verification suites.
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            terms_used: 80,
            min_imag: 0.8,
            tolerance: 1e-8,
        }
    }
}

impl EvalConfig {
    pub fn new(terms_used: i64, min_imag: f64, tolerance: f64) -> Result<Self> {
        if terms_used < 1 {
            return Err(Error::InvalidConfig(format!("terms_used = {terms_used}")));
        }
        if min_imag.is_nan() || min_imag <= 0.0 || tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "min_imag = {min_imag}, tolerance = {tolerance} (both must be positive)"
            )));
        }
        Ok(EvalConfig {
            terms_used,
            min_imag,
            tolerance,
        })
    }

    pub fn with_min_imag(self, min_imag: f64) -> Self {
        EvalConfig { min_imag, ..self }
    }

    fn admit(&self, tau: Complex64) -> Result<()> {
        if tau.im.is_nan() || tau.im < self.min_imag {
            return Err(Error::BelowAdmissibleImag {
                imag: tau.im,
                min_imag: self.min_imag,
            });
        }
        Ok(())
    }
}

/// `sum c_e exp(2 pi i tau e / h)` over stored exponents `e < terms_used`.
pub fn eval_qseries(f: &QSeries, tau: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    cfg.admit(tau)?;
    if f.prec() < cfg.terms_used {
        return Err(Error::WindowShortfall {
            needed: cfg.terms_used,
            available: f.prec(),
        });
    }
    let h = f.base_den() as f64;
    let step = Complex64::new(0.0, 2.0 * PI) * tau / h;
    Ok(f.float_terms()
        .into_iter()
        .take_while(|&(e, _)| e < cfg.terms_used)
        .map(|(e, c)| (step * e as f64).exp() * c)
        .sum())
}

fn relative(diff: Complex64, reference: Complex64) -> f64 {
    diff.norm() / reference.norm().max(NEAR_ZERO)
}

fn form(basis: &Basis, j: usize) -> Result<&QSeries> {
    basis.forms.get(j).ok_or(Error::IndexOutOfRange {
        j: j as i64,
        d: basis.forms.len() as i64,
    })
}

/// `|h_j(g tau) - (c tau + d)^k h_j(tau)| / max(|h_j(tau)|, eps)` for a
/// basis that is already built.
pub fn basis_automorphy_residual(
    basis: &Basis,
    j: usize,
    g: &GroupElement,
    tau: Complex64,
    cfg: &EvalConfig,
) -> Result<f64> {
    let f = form(basis, j)?;
    let image = moebius_apply(g, tau);
    cfg.admit(tau)?;
    cfg.admit(image)?;
    let lhs = eval_qseries(f, image, cfg)?;
    let base = eval_qseries(f, tau, cfg)?;
    let factor = g.cocycle(tau).powi(basis.weight.k as i32);
    Ok(relative(lhs - factor * base, base))
}

/// Automorphy residual of `h_j` for the group's weight-`k` basis, built to
/// `cfg.terms_used` terms.
pub fn automorphy_residual(
    gd: &GroupData,
    k: i64,
    j: usize,
    g: &GroupElement,
    tau: Complex64,
    cfg: &EvalConfig,
) -> Result<f64> {
    let basis = build_basis(gd, k, cfg.terms_used)?;
    basis_automorphy_residual(&basis, j, g, tau, cfg)
}

/// `|w(g tau) - w(tau)| / max(|w(tau)|, eps)`.
pub fn hauptmodul_invariance_residual(
    gd: &GroupData,
    g: &GroupElement,
    tau: Complex64,
    cfg: &EvalConfig,
) -> Result<f64> {
    let image = moebius_apply(g, tau);
    cfg.admit(tau)?;
    cfg.admit(image)?;
    let a = eval_qseries(&gd.hauptmodul, image, cfg)?;
    let b = eval_qseries(&gd.hauptmodul, tau, cfg)?;
    Ok(relative(a - b, b))
}

/// Four radii spaced logarithmically over `[1e-3, 1e-2]`.
pub fn default_radii() -> Vec<f64> {
    (0..4).map(|i| 10f64.powf(-3.0 + i as f64 / 3.0)).collect()
}

const CIRCLE_SAMPLES: usize = 32;

/// Least-squares slope of `log max_{|tau - tau_i| = rho} |h_j(tau)|` against
/// `log rho`: an estimate of the zero order of `h_j` at the vertex.
pub fn basis_vanishing_slope(
    basis: &Basis,
    j: usize,
    vertex: usize,
    radii: &[f64],
    cfg: &EvalConfig,
) -> Result<f64> {
    let f = form(basis, j)?;
    let center = basis
        .group
        .vertices
        .get(vertex)
        .and_then(|v| v.location)
        .ok_or(Error::NoLocation(vertex))?;
    if radii.len() < 2 {
        return Err(Error::InvalidConfig("need at least two radii".into()));
    }
    let mut points = Vec::with_capacity(radii.len());
    for &rho in radii {
        let mut peak: f64 = 0.0;
        for s in 0..CIRCLE_SAMPLES {
            let angle = 2.0 * PI * s as f64 / CIRCLE_SAMPLES as f64;
            let tau = center + Complex64::from_polar(rho, angle);
            peak = peak.max(eval_qseries(f, tau, cfg)?.norm());
        }
        points.push((rho.ln(), peak.max(NEAR_ZERO).ln()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

pub fn vanishing_slope(
    gd: &GroupData,
    k: i64,
    j: usize,
    vertex: usize,
    radii: &[f64],
    cfg: &EvalConfig,
) -> Result<f64> {
    let basis = build_basis(gd, k, cfg.terms_used)?;
    basis_vanishing_slope(&basis, j, vertex, radii, cfg)
}

/// Parses `a+bi`, `a-bi`, `bi` or `a+i`; the imaginary part must be positive.
pub fn parse_tau(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidConfig(format!("malformed tau `{s}` (expected a+bi with b > 0)"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t.strip_suffix('i').ok_or_else(bad)?;
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| {
            i > 0 && (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    if im.is_nan() || im <= 0.0 || !re.is_finite() || !im.is_finite() {
        return Err(Error::NotInUpperHalfPlane(im));
    }
    Ok(Complex64::new(re, im))
}
