//! Affine maps of `T^n` whose translation part depends linearly on formal
//! circle parameters `θ_1, …, θ_k`, compared exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::intmat::IntMatrix;
use crate::lattice::AffineIsometry;
use crate::rational::{reduce_mod1, Rat};

/// `x ↦ A x + b + Σ_j θ_j c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAffine {
    pub linear: IntMatrix,
    pub constant: Vec<Rat>,
    /// `coefficients[j]` multiplies `θ_j`.
    pub coefficients: Vec<Vec<i64>>,
}

impl FormalAffine {
    pub fn from_isometry(g: &AffineIsometry, params: usize) -> Self {
        FormalAffine {
            linear: g.linear().clone(),
            constant: g.translation().to_vec(),
            coefficients: vec![vec![0; g.dim()]; params],
        }
    }

    /// `x ↦ x + sign · θ_param · e_coord`.
    pub fn circle(n: usize, params: usize, param: usize, coord: usize, sign: i64) -> Self {
        let mut coefficients = vec![vec![0; n]; params];
        coefficients[param][coord] = sign;
        FormalAffine { linear: IntMatrix::identity(n), constant: vec![Rat::zero(); n], coefficients }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FormalAffine) -> FormalAffine {
        let constant: Vec<Rat> = self
            .linear
            .mul_rat(&other.constant)
            .iter()
            .zip(&self.constant)
            .map(|(a, b)| a + b)
            .collect();
        let coefficients = other
            .coefficients
            .iter()
            .zip(&self.coefficients)
            .map(|(c2, c1)| self.linear.mul_vec(c2).iter().zip(c1).map(|(a, b)| a + b).collect())
            .collect();
        FormalAffine { linear: self.linear.mul(&other.linear), constant, coefficients }
    }

    /// Equality as maps of the torus for all parameter values: linear parts
    /// and θ-coefficients agree exactly, constants agree modulo `Z^n`.
    pub fn same_map(&self, other: &FormalAffine) -> bool {
        self.linear == other.linear
            && self.coefficients == other.coefficients
            && reduce_mod1(&self.constant) == reduce_mod1(&other.constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_reverses_circle() {
        let g = AffineIsometry::diagonal(&[-1, 1], vec![Rat::half(), Rat::zero()]).unwrap();
        let gf = FormalAffine::from_isometry(&g, 1);
        let plus = FormalAffine::circle(2, 1, 0, 0, 1);
        let minus = FormalAffine::circle(2, 1, 0, 0, -1);
        assert!(gf.compose(&plus).same_map(&minus.compose(&gf)));
        assert!(!gf.compose(&plus).same_map(&plus.compose(&gf)));
    }
}
