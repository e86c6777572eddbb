//! The plateau bump `ρ_d(r) = ρ₁(r/d)`.

use alloc::vec::Vec;

use super::jet::Jet;

/// `ρ₁(s) = f(2 - s) / (f(2 - s) + f(s - 1))` with `f(t) = exp(-1/t)` for
/// `t > 0` and `0` otherwise; `ρ₁ = 1` on `s ≤ 1` and `0` on `s ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoff {
    d: f64,
}

/// Highest derivative order tracked by [`Cutoff::jet`].
pub const CUTOFF_ORDER: usize = 4;

pub fn make_cutoff(d: f64) -> Cutoff {
    assert!(d > 0.0, "cutoff scale must be positive");
    Cutoff { d }
}

fn bump<const N: usize>(t: Jet<N>) -> Jet<N> {
    (-t.recip()).exp()
}

impl Cutoff {
    pub fn scale(&self) -> f64 {
        self.d
    }

    pub fn value(&self, r: f64) -> f64 {
        self.jet::<1>(r).value()
    }

    /// Taylor jet in `r`; exactly constant on both plateaus.
    pub fn jet<const N: usize>(&self, r: f64) -> Jet<N> {
        let s = r / self.d;
        if s <= 1.0 {
            return Jet::constant(1.0);
        }
        if s >= 2.0 {
            return Jet::constant(0.0);
        }
        let sj = Jet::<N>::variable(r).scale(1.0 / self.d);
        let a = bump(2.0 - sj);
        let b = bump(sj - 1.0);
        a / (a + b)
    }

    /// `sup_{[d, 2d]} |D^m ρ_d|` on a uniform grid of `samples` points.
    pub fn derivative_sup(&self, m: usize, samples: usize) -> f64 {
        assert!(m <= CUTOFF_ORDER);
        (0..=samples)
            .map(|i| {
                let r = self.d * (1.0 + i as f64 / samples as f64);
                self.jet::<{ CUTOFF_ORDER + 1 }>(r).derivative(m).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Estimates of `c_m = d^m · sup |D^m ρ_d|` for `m = 1..=4`.
    pub fn bound_constants(&self, samples: usize) -> Vec<f64> {
        (1..=CUTOFF_ORDER)
            .map(|m| self.derivative_sup(m, samples) * libm::pow(self.d, m as f64))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_and_midpoint() {
        let c = make_cutoff(10.0);
        assert_eq!(c.value(5.0), 1.0);
        assert_eq!(c.value(10.0), 1.0);
        assert_eq!(c.value(20.0), 0.0);
        assert_eq!(c.value(30.0), 0.0);
        assert!((c.value(15.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jet_matches_difference_quotient() {
        let c = make_cutoff(3.0);
        let r = 4.1;
        let h = 1e-5;
        let fd = (c.value(r + h) - c.value(r - h)) / (2.0 * h);
        assert!((c.jet::<2>(r).derivative(1) - fd).abs() < 1e-8);
    }
}
