//! Decay scans and log-log slope fits.

use alloc::vec::Vec;

use super::cohomo::cohomo_curvature;
use super::profile::{glued_profile, metric_deviation, RadialProfile};
use crate::error::{Error, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 4;

pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Result<Fit> {
    if xs.len() != ys.len() || xs.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit { points: xs.len().min(ys.len()) });
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain(alloc::string::String::from("log-log fit needs positive finite data")));
    }
    let lx: Vec<f64> = xs.iter().map(|x| libm::log(*x)).collect();
    let ly: Vec<f64> = ys.iter().map(|y| libm::log(*y)).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit { points: xs.len() });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = lx.iter().zip(&ly).map(|(x, y)| { let e = y - intercept - slope * x; e * e }).sum();
    Ok(Fit { slope, intercept, residual: libm::sqrt(ss / n), points: xs.len() })
}

/// Fit, or `None` when the data vanish identically.
pub fn optional_fit(xs: &[f64], ys: &[f64]) -> Result<Option<Fit>> {
    if xs.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit { points: xs.len() });
    }
    if ys.iter().all(|y| *y == 0.0) {
        return Ok(None);
    }
    loglog_fit(xs, ys).map(Some)
}

/// `n` points from `lo` to `hi` inclusive with constant ratio.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let ratio = hi / lo;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo * libm::pow(ratio, i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayRow {
    pub r: f64,
    pub deviation: f64,
    pub rm_norm: f64,
    pub ric_norm: f64,
    pub symmetry_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayScan {
    pub rows: Vec<DecayRow>,
    pub deviation_fit: Option<Fit>,
    pub rm_fit: Option<Fit>,
}

pub fn decay_scan<P: RadialProfile + ?Sized>(profile: &P, radii: &[f64]) -> Result<DecayScan> {
    if radii.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit { points: radii.len() });
    }
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let s = cohomo_curvature(profile, r)?;
        rows.push(DecayRow {
            r,
            deviation: metric_deviation(profile, r)?,
            rm_norm: s.rm_norm,
            ric_norm: s.ric_norm,
            symmetry_residual: s.symmetry_residual(),
        });
    }
    let rs: Vec<f64> = rows.iter().map(|x| x.r).collect();
    let dev: Vec<f64> = rows.iter().map(|x| x.deviation).collect();
    // curvature of a flat profile is roundoff; treat it as zero
    let rm: Vec<f64> = rows.iter().map(|x| if x.rm_norm < 1e-14 { 0.0 } else { x.rm_norm }).collect();
    Ok(DecayScan { deviation_fit: optional_fit(&rs, &dev)?, rm_fit: optional_fit(&rs, &rm)?, rows })
}

/// Suprema of curvature norms over a radial grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusSup {
    pub d: f64,
    /// Radius attaining `sup_ric`.
    pub r_sup: f64,
    pub sup_ric: f64,
    pub sup_rm: f64,
    pub symmetry_residual: f64,
}

pub fn sup_over<P: RadialProfile + ?Sized>(profile: &P, radii: &[f64], d: f64) -> Result<AnnulusSup> {
    let mut best = AnnulusSup { d, r_sup: radii[0], sup_ric: -1.0, sup_rm: 0.0, symmetry_residual: 0.0 };
    for &r in radii {
        let s = cohomo_curvature(profile, r)?;
        if s.ric_norm > best.sup_ric {
            best.sup_ric = s.ric_norm;
            best.r_sup = r;
        }
        best.sup_rm = best.sup_rm.max(s.rm_norm);
        best.symmetry_residual = best.symmetry_residual.max(s.symmetry_residual());
    }
    Ok(best)
}

/// `sup |Ric|` of the glued metric over `grid_points` geometric radii in `[d, 2d]`.
pub fn annulus_sup(d: f64, grid_points: usize) -> Result<AnnulusSup> {
    let p = glued_profile(d)?;
    sup_over(&p, &geometric_grid(d, 2.0 * d, grid_points), d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlueScan {
    pub rows: Vec<AnnulusSup>,
    pub ric_fit: Fit,
    pub rm_fit: Fit,
}

impl GlueScan {
    /// Assembles a scan from per-`d` rows computed in any order.
    pub fn from_rows(mut rows: Vec<AnnulusSup>) -> Result<Self> {
        rows.sort_by(|a, b| a.d.total_cmp(&b.d));
        let ds: Vec<f64> = rows.iter().map(|r| r.d).collect();
        let ric: Vec<f64> = rows.iter().map(|r| r.sup_ric).collect();
        let rm: Vec<f64> = rows.iter().map(|r| r.sup_rm).collect();
        Ok(GlueScan { ric_fit: loglog_fit(&ds, &ric)?, rm_fit: loglog_fit(&ds, &rm)?, rows })
    }
}

pub fn glue_ricci_scan(d_values: &[f64], grid_points: usize) -> Result<GlueScan> {
    if d_values.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit { points: d_values.len() });
    }
    let rows = d_values.iter().map(|&d| annulus_sup(d, grid_points)).collect::<Result<Vec<_>>>()?;
    GlueScan::from_rows(rows)
}

/// Cap-diameter constant: `κ = 4/20 + (2/(20d))·d`, the EH throat
/// `[1, 2d]` (length at most `2d + 2`) after rescaling by `1/(20d)`.
pub const KAPPA_FORMULA: &str = "kappa = 4/20 + 2/(20d)*d = 3/10";

pub fn kappa(d: f64) -> f64 {
    4.0 / 20.0 + 2.0 / (20.0 * d) * d
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuRow {
    pub d: f64,
    pub rescaled_sup_ric: f64,
    pub diam_bound: f64,
    pub mu_proxy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MuReport {
    pub rows: Vec<MuRow>,
    pub rescaled_fit: Fit,
    pub mu_fit: Fit,
    /// μ proxy strictly decreasing along increasing `d`.
    pub monotone: bool,
    pub kappa_formula: &'static str,
}

/// Rescales the glued metric by `c = 1/(20d)`: `sup|Ric|` picks up `(20d)²`,
/// the diameter is bounded by `1 + κ/d`, and `μ = rescaled sup|Ric| · diam²`.
pub fn mu_report(scan: &GlueScan) -> Result<MuReport> {
    let rows: Vec<MuRow> = scan
        .rows
        .iter()
        .map(|a| {
            let rescaled = (20.0 * a.d) * (20.0 * a.d) * a.sup_ric;
            let diam = 1.0 + kappa(a.d) / a.d;
            MuRow { d: a.d, rescaled_sup_ric: rescaled, diam_bound: diam, mu_proxy: rescaled * diam * diam }
        })
        .collect();
    let ds: Vec<f64> = rows.iter().map(|r| r.d).collect();
    let resc: Vec<f64> = rows.iter().map(|r| r.rescaled_sup_ric).collect();
    let mu: Vec<f64> = rows.iter().map(|r| r.mu_proxy).collect();
    Ok(MuReport {
        rescaled_fit: loglog_fit(&ds, &resc)?,
        mu_fit: loglog_fit(&ds, &mu)?,
        monotone: mu.windows(2).all(|w| w[1] < w[0]),
        kappa_formula: KAPPA_FORMULA,
        rows,
    })
}
