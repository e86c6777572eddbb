//! Clifford monomials and the spin lifting obstruction for diagonal
//! orientation-preserving involutions.
//!
//! Only signed basis monomials `± e_{i1} ⋯ e_{ik}` are modelled; they are
//! closed under multiplication, which is all the obstruction needs.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Sign of `e_i²`. Commutator signs do not depend on it; squares of lifts do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Signature {
    #[default]
    NegativeSquares,
    PositiveSquares,
}

impl Signature {
    fn square(self) -> i8 {
        match self {
            Signature::NegativeSquares => -1,
            Signature::PositiveSquares => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Signature::NegativeSquares => "e_i^2 = -1",
            Signature::PositiveSquares => "e_i^2 = +1",
        }
    }
}

/// `sign · e_{i1} ⋯ e_{ik}` with `i1 < … < ik`, stored as a bit mask over
/// zero-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordMonomial {
    n: u8,
    mask: u32,
    sign: i8,
}

impl CliffordMonomial {
    pub fn scalar(n: usize, sign: i8) -> Self {
        assert!(n <= 32);
        assert!(sign == 1 || sign == -1);
        CliffordMonomial { n: n as u8, mask: 0, sign }
    }

    /// From one-based indices in any order; the sign absorbs the sorting.
    pub fn from_indices(n: usize, indices: &[usize], sig: Signature) -> Self {
        indices.iter().fold(Self::scalar(n, 1), |acc, &i| {
            assert!((1..=n).contains(&i), "index {i} outside 1..={n}");
            acc.mul(&CliffordMonomial { n: n as u8, mask: 1 << (i - 1), sign: 1 }, sig)
        })
    }

    pub fn from_mask(n: usize, mask: u32, sign: i8) -> Self {
        assert!(n <= 32 && (n == 32 || mask >> n == 0));
        CliffordMonomial { n: n as u8, mask, sign }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn grade(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// One-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.n as usize).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn negate(&self) -> Self {
        CliffordMonomial { sign: -self.sign, ..*self }
    }

    pub fn same_basis(&self, other: &Self) -> bool {
        self.mask == other.mask
    }

    /// Normal-form product `self · other`.
    pub fn mul(&self, other: &Self, sig: Signature) -> Self {
        assert_eq!(self.n, other.n, "monomials from different Cl(n)");
        let mut swaps = 0u32;
        let mut b = other.mask;
        while b != 0 {
            let j = b.trailing_zeros();
            // each factor of self with a larger index is passed once
            swaps += (self.mask >> j >> 1).count_ones();
            b &= b - 1;
        }
        let collisions = (self.mask & other.mask).count_ones();
        let mut sign = self.sign * other.sign;
        if swaps % 2 == 1 {
            sign = -sign;
        }
        if sig.square() < 0 && collisions % 2 == 1 {
            sign = -sign;
        }
        CliffordMonomial { n: self.n, mask: self.mask ^ other.mask, sign }
    }

    /// `+1` if the monomials commute, `-1` if they anticommute.
    pub fn commutator_sign(&self, other: &Self, sig: Signature) -> i8 {
        let ab = self.mul(other, sig);
        let ba = other.mul(self, sig);
        debug_assert_eq!(ab.mask, ba.mask);
        ab.sign * ba.sign
    }
}

impl fmt::Debug for CliffordMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CliffordMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign < 0 { "-" } else { "+" })?;
        if self.mask == 0 {
            return f.write_str("1");
        }
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// The two preimages `±∏ e_i` of a diagonal matrix in `SO(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinLiftPair {
    pub base: Vec<i64>,
    pub lifts: [CliffordMonomial; 2],
}

/// Lift of `diag(signs)`; the product runs over the `-1` entries.
pub fn lift_diagonal(signs: &[i64]) -> Result<SpinLiftPair> {
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::NotDiagonal);
    }
    let negatives: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == -1).collect();
    if negatives.len() % 2 == 1 {
        return Err(Error::OddNegativeCount { count: negatives.len() });
    }
    let mask = negatives.iter().fold(0u32, |m, &i| m | 1 << i);
    let plus = CliffordMonomial::from_mask(signs.len(), mask, 1);
    Ok(SpinLiftPair { base: signs.to_vec(), lifts: [plus, plus.negate()] })
}

/// Lift of a matrix that must be diagonal with `±1` entries.
pub fn lift_matrix(m: &IntMatrix) -> Result<SpinLiftPair> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::NotDiagonal);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)] != 0 {
                return Err(Error::NotDiagonal);
            }
        }
    }
    lift_diagonal(&(0..n).map(|i| m[(i, i)]).collect::<Vec<_>>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionWitness {
    /// Lifts of generators `i` and `j` anticommute.
    Anticommuting(usize, usize),
    /// The lift of generator `i` squares to `-1`.
    NegativeSquare(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Liftable,
    Obstructed(ObstructionWitness),
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub lifts: Vec<SpinLiftPair>,
    /// `commutator_signs[i][j]` for every generator pair.
    pub commutator_signs: Vec<Vec<i8>>,
    pub squares: Vec<i8>,
    pub verdict: Verdict,
    pub signature: Signature,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        matches!(self.verdict, Verdict::Obstructed(_))
    }
}

/// Decides whether commuting diagonal involutions in `SO(n)` lift to a
/// homomorphism into `Spin(n)`: liftable iff every pair of lifts commutes and
/// every lift squares to `+1`. Commutator signs are independent of the `±`
/// choice of each lift.
pub fn spin_obstruction(generators: &[IntMatrix], sig: Signature) -> Result<ObstructionReport> {
    for (i, g) in generators.iter().enumerate() {
        if g.mul(g) != IntMatrix::identity(g.rows()) {
            return Err(Error::NotInvolution(i));
        }
    }
    for i in 0..generators.len() {
        for j in 0..i {
            if generators[i].mul(&generators[j]) != generators[j].mul(&generators[i]) {
                return Err(Error::NotCommuting(j, i));
            }
        }
    }
    let lifts: Vec<SpinLiftPair> = generators.iter().map(lift_matrix).collect::<Result<_>>()?;

    let k = lifts.len();
    let mut commutator_signs = alloc::vec![alloc::vec![1i8; k]; k];
    for i in 0..k {
        for j in 0..k {
            commutator_signs[i][j] = lifts[i].lifts[0].commutator_sign(&lifts[j].lifts[0], sig);
        }
    }
    let squares: Vec<i8> = lifts
        .iter()
        .map(|l| l.lifts[0].mul(&l.lifts[0], sig).sign())
        .collect();

    let pair = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .find(|&(i, j)| commutator_signs[i][j] < 0);
    let verdict = if let Some((i, j)) = pair {
        Verdict::Obstructed(ObstructionWitness::Anticommuting(i, j))
    } else if let Some(i) = squares.iter().position(|&s| s < 0) {
        Verdict::Obstructed(ObstructionWitness::NegativeSquare(i))
    } else {
        Verdict::Liftable
    };
    Ok(ObstructionReport { lifts, commutator_signs, squares, verdict, signature: sig })
}
