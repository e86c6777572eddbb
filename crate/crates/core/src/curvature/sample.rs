use alloc::vec;
use alloc::vec::Vec;

/// Curvature at one point in an orthonormal frame.
///
/// `riemann[((l * n + i) * n + j) * n + k] = ⟨R(e_i, e_j) e_k, e_l⟩`, which is
/// the frame version of `R^l_{ijk}`; `ricci[j * n + k] = Σ_i R^i_{ijk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureSample {
    pub location: Vec<f64>,
    pub dim: usize,
    pub riemann: Vec<f64>,
    pub ricci: Vec<f64>,
    pub rm_norm: f64,
    pub ric_norm: f64,
    pub scalar: f64,
    /// `max |R_{lijk} - R_{jkli}|`.
    pub pair_residual: f64,
    /// `max |R^l_{ijk} + R^l_{jki} + R^l_{kij}|`.
    pub bianchi_residual: f64,
}

impl CurvatureSample {
    pub fn from_frame_tensor(location: Vec<f64>, dim: usize, riemann: Vec<f64>) -> Self {
        let n = dim;
        let at = |l: usize, i: usize, j: usize, k: usize| riemann[((l * n + i) * n + j) * n + k];
        let mut ricci = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..n {
                ricci[j * n + k] = (0..n).map(|i| at(i, i, j, k)).sum();
            }
        }
        let mut pair: f64 = 0.0;
        let mut bianchi: f64 = 0.0;
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        pair = pair.max((at(l, i, j, k) - at(j, k, l, i)).abs());
                        bianchi = bianchi.max((at(l, i, j, k) + at(l, j, k, i) + at(l, k, i, j)).abs());
                    }
                }
            }
        }
        let norm = |v: &[f64]| libm::sqrt(v.iter().map(|x| x * x).sum());
        CurvatureSample {
            location,
            dim,
            rm_norm: norm(&riemann),
            ric_norm: norm(&ricci),
            scalar: (0..n).map(|i| ricci[i * n + i]).sum(),
            riemann,
            ricci,
            pair_residual: pair,
            bianchi_residual: bianchi,
        }
    }

    pub fn component(&self, l: usize, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim;
        self.riemann[((l * n + i) * n + j) * n + k]
    }

    /// Sectional curvature of the plane `e_i ∧ e_j`.
    pub fn sectional(&self, i: usize, j: usize) -> f64 {
        self.component(i, i, j, j)
    }

    /// Largest symmetry residual, to compare against a tolerance.
    pub fn symmetry_residual(&self) -> f64 {
        self.pair_residual.max(self.bianchi_residual)
    }

    /// `max |Δ| / max |R|` over all frame components.
    pub fn relative_difference(&self, other: &CurvatureSample) -> f64 {
        let scale = self.riemann.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let diff = self
            .riemann
            .iter()
            .zip(&other.riemann)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}
