use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::rational::{reduce_mod1, Rat};

/// Affine isometry `x -> A x + b` of the flat torus `R^n / Z^n`.
///
/// `A` is a signed permutation matrix and `b` is kept reduced into `[0, 1)^n`,
/// so structural equality is equality of maps on the torus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineIsometry {
    linear: IntMatrix,
    translation: Vec<Rat>,
}

impl AffineIsometry {
    pub fn new(linear: IntMatrix, translation: Vec<Rat>) -> Result<Self> {
        let n = linear.rows();
        if linear.cols() != n {
            return Err(Error::NotIsometry(format!(
                "linear part is {}x{}, not square",
                n,
                linear.cols()
            )));
        }
        if translation.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: translation.len() });
        }
        check_signed_permutation(&linear)?;
        Ok(AffineIsometry { linear, translation: reduce_mod1(&translation) })
    }

    pub fn identity(n: usize) -> Self {
        AffineIsometry { linear: IntMatrix::identity(n), translation: alloc::vec![Rat::zero(); n] }
    }

    /// Diagonal linear part with the given signs.
    pub fn diagonal(signs: &[i64], translation: Vec<Rat>) -> Result<Self> {
        let n = signs.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &s) in signs.iter().enumerate() {
            m[(i, i)] = s;
        }
        Self::new(m, translation)
    }

    /// Pure translation by `t`.
    pub fn translation_by(t: Vec<Rat>) -> Self {
        let n = t.len();
        AffineIsometry { linear: IntMatrix::identity(n), translation: reduce_mod1(&t) }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Rat] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear == IntMatrix::identity(self.dim()) && self.translation.iter().all(Rat::is_zero)
    }

    /// Where column `j` goes: `A e_j = sign * e_row`.
    pub fn column_image(&self, j: usize) -> (usize, i64) {
        (0..self.dim())
            .find_map(|i| {
                let v = self.linear[(i, j)];
                (v != 0).then_some((i, v))
            })
            .expect("signed permutation has a nonzero in every column")
    }

    /// Diagonal signs when the linear part is diagonal.
    pub fn diagonal_signs(&self) -> Option<Vec<i64>> {
        (0..self.dim())
            .map(|j| match self.column_image(j) {
                (i, s) if i == j => Some(s),
                _ => None,
            })
            .collect()
    }

    /// Image of a point, reduced mod 1.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim());
        let ax = self.linear.mul_rat(x);
        ax.iter().zip(&self.translation).map(|(a, b)| (a + b).frac()).collect()
    }

    /// Image of a point without reducing mod 1.
    pub fn apply_unreduced(&self, x: &[Rat]) -> Vec<Rat> {
        let ax = self.linear.mul_rat(x);
        ax.iter().zip(&self.translation).map(|(a, b)| a + b).collect()
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &AffineIsometry) -> Result<AffineIsometry> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let linear = self.linear.mul(&other.linear);
        let t = self.apply_unreduced(&other.translation);
        Ok(AffineIsometry { linear, translation: reduce_mod1(&t) })
    }

    pub fn inverse(&self) -> AffineIsometry {
        // signed permutations are orthogonal: A^{-1} = A^T
        let linear = self.linear.transpose();
        let t: Vec<Rat> = linear.mul_rat(&self.translation).into_iter().map(|v| -v).collect();
        AffineIsometry { linear, translation: reduce_mod1(&t) }
    }

    /// Order of the map, or `None` if it exceeds `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc).ok()?;
        }
        None
    }
}

impl fmt::Debug for AffineIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> (")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let (src, s) = (0..self.dim())
                .find_map(|j| {
                    let v = self.linear[(i, j)];
                    (v != 0).then_some((j, v))
                })
                .unwrap_or((i, 0));
            let t = &self.translation[i];
            if !t.is_zero() {
                write!(f, "{t}{}", if s < 0 { "-" } else { "+" })?;
            } else if s < 0 {
                write!(f, "-")?;
            }
            write!(f, "x{}", src + 1)?;
        }
        write!(f, ")")
    }
}

/// Exactly one `+-1` per row and column: the integer orthogonal matrices.
pub fn check_signed_permutation(m: &IntMatrix) -> Result<()> {
    let n = m.rows();
    let mut seen = alloc::vec![false; n];
    for i in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&j| m[(i, j)] != 0).collect();
        if nz.len() != 1 {
            return Err(Error::NotIsometry(format!(
                "row {} has {} nonzero entries",
                i + 1,
                nz.len()
            )));
        }
        let j = nz[0];
        if m[(i, j)].abs() != 1 {
            return Err(Error::NotIsometry(format!("entry ({}, {}) is {}", i + 1, j + 1, m[(i, j)])));
        }
        if seen[j] {
            return Err(Error::NotIsometry(format!("column {} used twice", j + 1)));
        }
        seen[j] = true;
    }
    Ok(())
}
