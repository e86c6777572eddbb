//! Coordinate-chart curvature from a metric given pointwise.
//!
//! Metric derivatives come from fourth-order central differences with one
//! Richardson halving; the derivative of the Christoffel symbols is assembled
//! analytically from `∂g` and `∂²g` rather than by differencing `Γ` again.
//! The Riemann tensor uses
//! `R^l_{ijk} = ∂_iΓ^l_{jk} - ∂_jΓ^l_{ik} + Γ^m_{jk}Γ^l_{im} - Γ^m_{ik}Γ^l_{jm}`,
//! i.e. the components of `R(∂_i, ∂_j)∂_k`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{cholesky, invert, transpose};
use super::profile::{RadialProfile, ProfileJet};
use super::sample::CurvatureSample;
use crate::error::{Error, Result};

type Field = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Four-point first-derivative weights for offsets `-2, -1, 1, 2`.
const D1: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
/// Five-point second-derivative weights.
const D2: [(f64, f64); 5] = [
    (-2.0, -1.0 / 12.0),
    (-1.0, 16.0 / 12.0),
    (0.0, -30.0 / 12.0),
    (1.0, 16.0 / 12.0),
    (2.0, -1.0 / 12.0),
];

pub struct MetricChart {
    dim: usize,
    metric: Field,
    coframe: Option<Field>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    step_fractions: Vec<f64>,
    richardson: bool,
}

/// Default step as a fraction of the local coordinate scale.
pub const DEFAULT_STEP_FRACTION: f64 = 2e-2;

impl core::fmt::Debug for MetricChart {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MetricChart")
            .field("dim", &self.dim)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("step_fractions", &self.step_fractions)
            .field("richardson", &self.richardson)
            .finish()
    }
}

/// Metric quantities at one point; `dg[(m * n + i) * n + j] = ∂_m g_ij`.
struct Derivatives {
    g: Vec<f64>,
    dg: Vec<f64>,
    ddg: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartCurvature {
    /// `coordinate[((l * n + i) * n + j) * n + k] = R^l_{ijk}`.
    pub coordinate: Vec<f64>,
    /// `christoffel[(k * n + i) * n + j] = Γ^k_{ij}`.
    pub christoffel: Vec<f64>,
    pub sample: CurvatureSample,
}

impl MetricChart {
    /// Chart on the open box `(lower, upper)`.
    ///
    /// The differencing step along coordinate `m` is
    /// `step_fractions[m] × (distance from x_m to the nearer finite box
    /// boundary)`, or the bare fraction when both boundaries are infinite.
    pub fn new<F>(lower: Vec<f64>, upper: Vec<f64>, metric: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        let dim = lower.len();
        assert_eq!(upper.len(), dim);
        MetricChart {
            dim,
            metric: Box::new(metric),
            coframe: None,
            lower,
            upper,
            step_fractions: vec![DEFAULT_STEP_FRACTION; dim],
            richardson: true,
        }
    }

    /// Orthonormal coframe `θ^a = F^a_μ dx^μ` (row-major `F`) used for
    /// frame components instead of the Cholesky factor of `g`.
    pub fn with_coframe<F>(mut self, coframe: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        self.coframe = Some(Box::new(coframe));
        self
    }

    pub fn with_step_fractions(mut self, fractions: Vec<f64>) -> Self {
        assert_eq!(fractions.len(), self.dim);
        self.step_fractions = fractions;
        self
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Differencing steps used at `x`.
    pub fn steps_at(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|m| {
                let to_lo = x[m] - self.lower[m];
                let to_hi = self.upper[m] - x[m];
                let scale = match (to_lo.is_finite(), to_hi.is_finite()) {
                    (true, true) => to_lo.min(to_hi),
                    (true, false) => to_lo,
                    (false, true) => to_hi,
                    (false, false) => 1.0,
                };
                self.step_fractions[m] * scale
            })
            .collect()
    }

    fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        let g = (self.metric)(x);
        cholesky(&g, self.dim)?;
        Ok(g)
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        for m in 0..self.dim {
            if !(x[m] > self.lower[m] && x[m] < self.upper[m]) {
                return Err(Error::Domain(format!(
                    "coordinate {m} = {} outside ({}, {})",
                    x[m], self.lower[m], self.upper[m]
                )));
            }
        }
        let steps = self.steps_at(x);
        for m in 0..self.dim {
            let h = steps[m];
            if !(h > 0.0) || x[m] + h * 0.5 == x[m] {
                return Err(Error::StepUnderflow(h));
            }
            if !(x[m] - 2.0 * h > self.lower[m] && x[m] + 2.0 * h < self.upper[m]) {
                return Err(Error::Domain(format!(
                    "coordinate {m} = {} lacks a differencing margin of {} inside ({}, {})",
                    x[m],
                    2.0 * h,
                    self.lower[m],
                    self.upper[m]
                )));
            }
        }
        Ok(())
    }

    fn shifted(&self, x: &[f64], moves: &[(usize, f64)]) -> Result<Vec<f64>> {
        let mut y = x.to_vec();
        for &(m, dx) in moves {
            y[m] += dx;
        }
        self.eval(&y)
    }

    fn derivatives_at_step(&self, x: &[f64], factor: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.dim;
        let nn = n * n;
        let mut dg = vec![0.0; n * nn];
        let mut ddg = vec![0.0; nn * nn];
        // stencil values are taken relative to g(x): the weights sum to zero,
        // so constants cancel exactly and large entries lose less precision
        let g0 = self.eval(x)?;
        let steps = self.steps_at(x);
        let acc = |out: &mut [f64], base: usize, w: f64, g: &[f64]| {
            for ((o, v), c) in out[base..base + nn].iter_mut().zip(g).zip(&g0) {
                *o += w * (v - c);
            }
        };
        for m in 0..n {
            let h = steps[m] * factor;
            for &(p, w) in &D1 {
                let g = self.shifted(x, &[(m, p * h)])?;
                acc(&mut dg, m * nn, w / h, &g);
            }
            for &(p, w) in &D2 {
                let g = self.shifted(x, &[(m, p * h)])?;
                acc(&mut ddg, (m * n + m) * nn, w / (h * h), &g);
            }
            for q in 0..m {
                let k = steps[q] * factor;
                for &(p1, w1) in &D1 {
                    for &(p2, w2) in &D1 {
                        let g = self.shifted(x, &[(m, p1 * h), (q, p2 * k)])?;
                        acc(&mut ddg, (m * n + q) * nn, w1 * w2 / (h * k), &g);
                    }
                }
            }
        }
        // mirror mixed blocks
        for m in 0..n {
            for q in 0..m {
                for e in 0..nn {
                    ddg[(q * n + m) * nn + e] = ddg[(m * n + q) * nn + e];
                }
            }
        }
        Ok((dg, ddg))
    }

    fn derivatives(&self, x: &[f64]) -> Result<Derivatives> {
        self.check_point(x)?;
        let g = self.eval(x)?;
        let (dg, ddg) = if self.richardson {
            let (d1, dd1) = self.derivatives_at_step(x, 1.0)?;
            let (d2, dd2) = self.derivatives_at_step(x, 0.5)?;
            let extrapolate = |coarse: Vec<f64>, fine: Vec<f64>| -> Vec<f64> {
                fine.iter().zip(&coarse).map(|(f, c)| f + (f - c) / 15.0).collect()
            };
            (extrapolate(d1, d2), extrapolate(dd1, dd2))
        } else {
            self.derivatives_at_step(x, 1.0)?
        };
        Ok(Derivatives { g, dg, ddg })
    }

    /// `Γ^k_{ij} = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} - ∂_l g_{ij})`, indexed
    /// `[(k * n + i) * n + j]`.
    pub fn christoffel(&self, x: &[f64]) -> Result<Vec<f64>> {
        let d = self.derivatives(x)?;
        let ginv = invert(&d.g, self.dim)?;
        Ok(christoffel_from(self.dim, &ginv, &d.dg))
    }

    pub fn riemann(&self, x: &[f64]) -> Result<ChartCurvature> {
        let n = self.dim;
        let nn = n * n;
        let d = self.derivatives(x)?;
        let ginv = invert(&d.g, n)?;
        let gamma = christoffel_from(n, &ginv, &d.dg);

        // ∂_m g^{kl} = -g^{ka} ∂_m g_{ab} g^{bl}
        let mut dginv = vec![0.0; n * nn];
        for m in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            s += ginv[k * n + a] * d.dg[m * nn + a * n + b] * ginv[b * n + l];
                        }
                    }
                    dginv[m * nn + k * n + l] = -s;
                }
            }
        }
        // lowered symbols Γ_{lij} = ½(∂_i g_jl + ∂_j g_il - ∂_l g_ij) and their derivatives
        let low = |l: usize, i: usize, j: usize| {
            0.5 * (d.dg[i * nn + j * n + l] + d.dg[j * nn + i * n + l] - d.dg[l * nn + i * n + j])
        };
        let dlow = |m: usize, l: usize, i: usize, j: usize| {
            let dd = |a: usize, b: usize, c: usize| d.ddg[(m * n + a) * nn + b * n + c];
            0.5 * (dd(i, j, l) + dd(j, i, l) - dd(l, i, j))
        };
        // dgamma[((m * n + k) * n + i) * n + j] = ∂_m Γ^k_ij
        let mut dgamma = vec![0.0; nn * nn];
        for m in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let s: f64 = (0..n)
                            .map(|l| dginv[m * nn + k * n + l] * low(l, i, j) + ginv[k * n + l] * dlow(m, l, i, j))
                            .sum();
                        dgamma[((m * n + k) * n + i) * n + j] = s;
                    }
                }
            }
        }
        let gm = |k: usize, i: usize, j: usize| gamma[(k * n + i) * n + j];
        let dgm = |m: usize, k: usize, i: usize, j: usize| dgamma[((m * n + k) * n + i) * n + j];
        let mut coord = vec![0.0; nn * nn];
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut v = dgm(i, l, j, k) - dgm(j, l, i, k);
                        for m in 0..n {
                            v += gm(m, j, k) * gm(l, i, m) - gm(m, i, k) * gm(l, j, m);
                        }
                        coord[((l * n + i) * n + j) * n + k] = v;
                    }
                }
            }
        }

        let coframe = match &self.coframe {
            Some(f) => f(x),
            None => transpose(&cholesky(&d.g, n)?, n),
        };
        let frame = invert(&coframe, n)?; // columns are frame vectors
        let frame_tensor = to_frame(n, &coord, &coframe, &frame);
        Ok(ChartCurvature {
            coordinate: coord,
            christoffel: gamma,
            sample: CurvatureSample::from_frame_tensor(x.to_vec(), n, frame_tensor),
        })
    }
}

fn christoffel_from(n: usize, ginv: &[f64], dg: &[f64]) -> Vec<f64> {
    let nn = n * n;
    let mut gamma = vec![0.0; n * nn];
    for k in 0..n {
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..n)
                    .map(|l| ginv[k * n + l] * (dg[i * nn + j * n + l] + dg[j * nn + i * n + l] - dg[l * nn + i * n + j]))
                    .sum();
                gamma[(k * n + i) * n + j] = 0.5 * s;
                gamma[(k * n + j) * n + i] = 0.5 * s;
            }
        }
    }
    gamma
}

/// `T[a][b][c][d] = F^a_l R^l_{ijk} E^i_b E^j_c E^k_d`.
fn to_frame(n: usize, coord: &[f64], coframe: &[f64], frame: &[f64]) -> Vec<f64> {
    let mut t = coord.to_vec();
    // contract each slot in turn; slot 0 with the coframe, the rest with the frame
    for slot in 0..4 {
        let mut out = vec![0.0; t.len()];
        let stride = [n * n * n, n * n, n, 1][slot];
        for idx in 0..t.len() {
            let pos = idx / stride % n;
            let base = idx - pos * stride;
            let mut s = 0.0;
            for q in 0..n {
                let w = if slot == 0 { coframe[pos * n + q] } else { frame[q * n + pos] };
                s += w * t[base + q * stride];
            }
            out[idx] = s;
        }
        t = out;
    }
    t
}

/// Eguchi–Hanson-type profile metric in Euler-angle coordinates
/// `(r, θ, φ, ψ)` with
/// `σ₁ = ½(sin ψ dθ - sin θ cos ψ dφ)`, `σ₂ = ½(-cos ψ dθ - sin θ sin ψ dφ)`,
/// `σ₃ = ½(dψ + cos θ dφ)`, so that `dσ_i = 2 σ_j ∧ σ_k`.
pub fn euler_chart<P>(profile: P) -> MetricChart
where
    P: RadialProfile + Clone + Send + Sync + 'static,
{
    let (lo, hi) = profile.domain();
    let p1 = profile.clone();
    let coframe_of = move |p: &P, x: &[f64]| -> Vec<f64> {
        let [a, b, c]: [ProfileJet; 3] = p.jets_unchecked(x[0]);
        let (st, ct) = (libm::sin(x[1]), libm::cos(x[1]));
        let (sp, cp) = (libm::sin(x[3]), libm::cos(x[3]));
        let sa = libm::sqrt(a.value());
        let sb = libm::sqrt(b.value());
        let sc = libm::sqrt(c.value());
        // rows: √A dr, √C σ₁, √C σ₂, √B σ₃ in (dr, dθ, dφ, dψ)
        vec![
            sa, 0.0, 0.0, 0.0,
            0.0, 0.5 * sc * sp, -0.5 * sc * st * cp, 0.0,
            0.0, -0.5 * sc * cp, -0.5 * sc * st * sp, 0.0,
            0.0, 0.0, 0.5 * sb * ct, 0.5 * sb,
        ]
    };
    let cf = coframe_of;
    let metric = move |x: &[f64]| {
        let f = cf(&p1, x);
        super::linalg::matmul(&transpose(&f, 4), &f, 4)
    };
    let p2 = profile;
    MetricChart::new(
        vec![lo, 0.0, -f64::INFINITY, -f64::INFINITY],
        vec![hi, core::f64::consts::PI, f64::INFINITY, f64::INFINITY],
        metric,
    )
    .with_coframe(move |x: &[f64]| coframe_of(&p2, x))
}

/// Round 2-sphere of radius `a` in polar coordinates `(θ, φ)`.
pub fn sphere_chart(a: f64) -> MetricChart {
    MetricChart::new(vec![0.0, -f64::INFINITY], vec![core::f64::consts::PI, f64::INFINITY], move |x: &[f64]| {
        let s = libm::sin(x[0]);
        vec![a * a, 0.0, 0.0, a * a * s * s]
    })
}

/// Flat `R^n` in Cartesian coordinates.
pub fn euclidean_chart(n: usize) -> MetricChart {
    MetricChart::new(vec![-f64::INFINITY; n], vec![f64::INFINITY; n], move |_x: &[f64]| {
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            g[i * n + i] = 1.0;
        }
        g
    })
}
