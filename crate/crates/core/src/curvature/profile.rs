//! Radial profiles `g = A(r) dr² + B(r) σ₃² + C(r) (σ₁² + σ₂²)`.

use alloc::format;
use alloc::string::String;

use super::cutoff::{make_cutoff, Cutoff};
use super::jet::Jet;
use crate::error::{Error, Result};

/// Jets carry value, first and second derivative.
pub type ProfileJet = Jet<3>;

pub trait RadialProfile {
    fn name(&self) -> String;

    /// Open domain `(r_min, r_max)`.
    fn domain(&self) -> (f64, f64);

    /// `(A, B, C)` as jets in `r`, without a domain check.
    fn jets_unchecked(&self, r: f64) -> [ProfileJet; 3];

    fn jets(&self, r: f64) -> Result<[ProfileJet; 3]> {
        let (lo, hi) = self.domain();
        if !(r > lo && r < hi) {
            return Err(Error::Domain(format!("r = {r} outside ({lo}, {hi}) for {}", self.name())));
        }
        Ok(self.jets_unchecked(r))
    }

    /// `(A, B, C)` values.
    fn values(&self, r: f64) -> Result<[f64; 3]> {
        let j = self.jets(r)?;
        Ok([j[0].value(), j[1].value(), j[2].value()])
    }
}

/// Flat space in polar form: `(1, r², r²)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Euclidean;

impl RadialProfile for Euclidean {
    fn name(&self) -> String {
        String::from("euclidean")
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn jets_unchecked(&self, r: f64) -> [ProfileJet; 3] {
        let x = Jet::variable(r);
        [Jet::constant(1.0), x * x, x * x]
    }
}

/// Eguchi–Hanson: `A = 1/(1 - r⁻⁴)`, `B = r²(1 - r⁻⁴)`, `C = r²` on `r > 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EguchiHanson;

pub fn eh_profile() -> EguchiHanson {
    EguchiHanson
}

impl RadialProfile for EguchiHanson {
    fn name(&self) -> String {
        String::from("eguchi-hanson")
    }

    fn domain(&self) -> (f64, f64) {
        (1.0, f64::INFINITY)
    }

    fn jets_unchecked(&self, r: f64) -> [ProfileJet; 3] {
        let x = Jet::variable(r);
        let f = 1.0 - x.powi(4).recip();
        [f.recip(), x * x * f, x * x]
    }
}

/// `ρ_d g_EH + (1 - ρ_d) g_E`, identical to each piece on its plateau.
#[derive(Clone, Copy, Debug)]
pub struct Glued {
    cutoff: Cutoff,
}

pub fn glued_profile(d: f64) -> Result<Glued> {
    if !(d >= 4.0) {
        return Err(Error::Domain(format!("gluing scale d = {d} must be at least 4")));
    }
    Ok(Glued { cutoff: make_cutoff(d) })
}

impl Glued {
    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }
}

impl RadialProfile for Glued {
    fn name(&self) -> String {
        format!("glued(d={})", self.cutoff.scale())
    }

    fn domain(&self) -> (f64, f64) {
        (1.0, f64::INFINITY)
    }

    fn jets_unchecked(&self, r: f64) -> [ProfileJet; 3] {
        let d = self.cutoff.scale();
        if r <= d {
            return EguchiHanson.jets_unchecked(r);
        }
        if r >= 2.0 * d {
            return Euclidean.jets_unchecked(r);
        }
        let rho = self.cutoff.jet::<3>(r);
        let [ea, eb, ec] = EguchiHanson.jets_unchecked(r);
        let [fa, fb, _] = Euclidean.jets_unchecked(r);
        let blend = |e: ProfileJet, f: ProfileJet| rho * e + (1.0 - rho) * f;
        [blend(ea, fa), blend(eb, fb), ec]
    }
}

/// The profile of `c² g`.
#[derive(Clone, Copy, Debug)]
pub struct Scaled<P> {
    pub inner: P,
    pub factor: f64,
}

impl<P: RadialProfile> RadialProfile for Scaled<P> {
    fn name(&self) -> String {
        format!("{}×{}²", self.inner.name(), self.factor)
    }

    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }

    fn jets_unchecked(&self, r: f64) -> [ProfileJet; 3] {
        let c2 = self.factor * self.factor;
        self.inner.jets_unchecked(r).map(|j| j.scale(c2))
    }
}

/// `max(|A - 1|, |B/r² - 1|, |C/r² - 1|)`: deviation from flat in the
/// orthonormal coframe of the Euclidean comparison metric.
pub fn metric_deviation<P: RadialProfile + ?Sized>(p: &P, r: f64) -> Result<f64> {
    let [a, b, c] = p.values(r)?;
    let r2 = r * r;
    Ok((a - 1.0).abs().max((b / r2 - 1.0).abs()).max((c / r2 - 1.0).abs()))
}
