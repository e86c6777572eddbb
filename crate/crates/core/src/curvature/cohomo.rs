//! Curvature of `A dr² + B σ₃² + C (σ₁² + σ₂²)` in the orthonormal frame
//! `e₀ = A^{-1/2} ∂_r`, `e_i = X_i / a_i` with `a₁ = a₂ = √C`, `a₃ = √B` and
//! `X_i` dual to the left-invariant coframe `dσ_i = λ σ_j ∧ σ_k` (cyclic).
//!
//! The brackets are `[e₀, e_i] = -h_i e_i` with `h_i = a_i' / (a_i √A)` and
//! `[e_j, e_k] = -λ a_i / (a_j a_k) e_i`; the Levi-Civita connection follows
//! from the Koszul formula and every coefficient depends on `r` alone, so only
//! `e₀` differentiates them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::jet::Jet;
use super::profile::{eh_profile, Euclidean, RadialProfile};
use super::sample::CurvatureSample;
use crate::error::{Error, Result};

/// Structure constant of the calibrated Euler-angle coframe.
pub const COFRAME_LAMBDA: f64 = 2.0;

/// Candidate normalizations: `2` for ordered summation of `ε_{ijk}`,
/// `4` for full summation.
pub const LAMBDA_CANDIDATES: [f64; 2] = [2.0, 4.0];

const DIM: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct CohomoSample {
    pub curvature: CurvatureSample,
    /// `connection[(a * 4 + b) * 4 + c] = ⟨∇_{e_a} e_b, e_c⟩`.
    pub connection: Vec<f64>,
}

pub fn cohomo_curvature<P: RadialProfile + ?Sized>(profile: &P, r: f64) -> Result<CurvatureSample> {
    Ok(cohomo_sample(profile, r, COFRAME_LAMBDA)?.curvature)
}

pub fn cohomo_sample<P: RadialProfile + ?Sized>(profile: &P, r: f64, lambda: f64) -> Result<CohomoSample> {
    let [a, b, c] = profile.jets(r)?;
    for (name, j) in [("A", a), ("B", b), ("C", c)] {
        if !(j.value() > 0.0) {
            return Err(Error::Domain(format!("{name}({r}) = {} is not positive", j.value())));
        }
    }
    let sqrt_a = a.sqrt();
    let scale: [Jet<3>; 4] = [sqrt_a, c.sqrt(), c.sqrt(), b.sqrt()];

    let idx = |x: usize, y: usize, z: usize| (x * DIM + y) * DIM + z;
    let mut cst = vec![Jet::<3>::constant(0.0); DIM * DIM * DIM];
    for i in 1..DIM {
        let h = scale[i].differentiate() / (scale[i] * sqrt_a);
        cst[idx(0, i, i)] = -h;
        cst[idx(i, 0, i)] = h;
    }
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let v = (scale[i] / (scale[j] * scale[k])).scale(-lambda);
        cst[idx(j, k, i)] = v;
        cst[idx(k, j, i)] = -v;
    }

    let mut gamma = vec![Jet::<3>::constant(0.0); DIM * DIM * DIM];
    for x in 0..DIM {
        for y in 0..DIM {
            for z in 0..DIM {
                gamma[idx(x, y, z)] = (cst[idx(x, y, z)] - cst[idx(y, z, x)] + cst[idx(z, x, y)]).scale(0.5);
            }
        }
    }
    let g: Vec<f64> = gamma.iter().map(Jet::value).collect();
    let inv_sqrt_a = 1.0 / sqrt_a.value();
    let dg: Vec<f64> = gamma.iter().map(|j| j.derivative(1) * inv_sqrt_a).collect();
    let cv: Vec<f64> = cst.iter().map(Jet::value).collect();

    // R(e_p, e_q) e_s, component l
    let mut riemann = vec![0.0; DIM * DIM * DIM * DIM];
    for l in 0..DIM {
        for p in 0..DIM {
            for q in 0..DIM {
                for s in 0..DIM {
                    let mut v = 0.0;
                    if p == 0 {
                        v += dg[idx(q, s, l)];
                    }
                    if q == 0 {
                        v -= dg[idx(p, s, l)];
                    }
                    for m in 0..DIM {
                        v += g[idx(q, s, m)] * g[idx(p, m, l)] - g[idx(p, s, m)] * g[idx(q, m, l)];
                        v -= cv[idx(p, q, m)] * g[idx(m, s, l)];
                    }
                    riemann[((l * DIM + p) * DIM + q) * DIM + s] = v;
                }
            }
        }
    }
    Ok(CohomoSample {
        curvature: CurvatureSample::from_frame_tensor(vec![r], DIM, riemann),
        connection: g,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationCandidate {
    pub lambda: f64,
    /// `sup |Rm|` of the Euclidean profile over the calibration radii.
    pub euclidean_rm: f64,
    /// `sup |Ric|` of the Eguchi–Hanson profile over the calibration radii.
    pub eh_ric: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub lambda: f64,
    pub candidates: Vec<CalibrationCandidate>,
    pub tolerance: f64,
}

/// Picks the coframe normalization making the Euclidean profile flat and the
/// Eguchi–Hanson profile Ricci-flat.
pub fn calibrate_coframe(radii: &[f64], tolerance: f64) -> Result<Calibration> {
    let mut candidates = Vec::new();
    for lambda in LAMBDA_CANDIDATES {
        let mut euclidean_rm: f64 = 0.0;
        let mut eh_ric: f64 = 0.0;
        for &r in radii {
            euclidean_rm = euclidean_rm.max(cohomo_sample(&Euclidean, r, lambda)?.curvature.rm_norm);
            eh_ric = eh_ric.max(cohomo_sample(&eh_profile(), r, lambda)?.curvature.ric_norm);
        }
        candidates.push(CalibrationCandidate { lambda, euclidean_rm, eh_ric });
    }
    let chosen = candidates
        .iter()
        .find(|c| c.euclidean_rm < tolerance && c.eh_ric < tolerance)
        .map(|c| c.lambda)
        .ok_or_else(|| Error::Invalid(String::from("no coframe normalization is both flat and Ricci-flat")))?;
    Ok(Calibration { lambda: chosen, candidates, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_profile_is_flat() {
        for r in [0.5, 3.0, 40.0] {
            let s = cohomo_curvature(&Euclidean, r).unwrap();
            assert!(s.rm_norm < 1e-9, "r = {r}: {}", s.rm_norm);
        }
    }

    #[test]
    fn calibration_picks_ordered_summation() {
        let c = calibrate_coframe(&[1.2, 2.0, 5.0, 20.0], 1e-6).unwrap();
        assert_eq!(c.lambda, COFRAME_LAMBDA);
        assert!(c.candidates[1].euclidean_rm > 1e-3);
    }
}
