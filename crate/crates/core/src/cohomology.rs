//! Group action on constant-coefficient forms `Λ^k(R^n)`, invariant
//! subspaces, and Betti numbers of the orbifold and of its resolution.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::intmat::{rref, IntMatrix};
use crate::lattice::{Certificate, GroupTable, SingularCensus};
use crate::rational::Rat;

/// `dx_{i1} ∧ … ∧ dx_{ik}` with increasing indices, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormBasisElement {
    mask: u32,
}

impl FormBasisElement {
    pub fn from_indices(indices: &[usize]) -> Self {
        FormBasisElement { mask: indices.iter().fold(0, |m, &i| m | 1 << (i - 1)) }
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// One-based indices.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }
}

impl fmt::Debug for FormBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FormBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return f.write_str("1");
        }
        for (k, i) in idx.iter().enumerate() {
            if k > 0 {
                f.write_str("∧")?;
            }
            write!(f, "dx{i}")?;
        }
        Ok(())
    }
}

/// The `k`-subsets of `{1..n}` in lexicographic order.
pub fn form_basis(n: usize, k: usize) -> Vec<FormBasisElement> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<FormBasisElement>) {
        if cur.len() == k {
            out.push(FormBasisElement::from_indices(cur));
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Signed permutation of the basis of `Λ^k`: basis element `i` pulls back
/// to `sign[i] · basis[image[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub basis: Vec<FormBasisElement>,
    pub image: Vec<usize>,
    pub sign: Vec<i64>,
}

impl MonomialMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dense form with column `i` holding the image of basis element `i`.
    pub fn to_dense(&self) -> IntMatrix {
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for i in 0..d {
            m[(self.image[i], i)] = self.sign[i];
        }
        m
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).filter(|&i| self.image[i] == i).map(|i| self.sign[i]).sum()
    }
}

/// Pullback action of a signed permutation matrix on `Λ^k`.
///
/// With `A e_j = s_j e_{σ(j)}`, `A^* dx_i = s_{σ⁻¹(i)} dx_{σ⁻¹(i)}`; the sign
/// of a wedge monomial is the product of entry signs times the parity of the
/// sort that restores increasing order.
pub fn induced_action(linear: &IntMatrix, k: usize) -> MonomialMatrix {
    let n = linear.rows();
    // preimage[i] = (j, s) with A[i][j] = s
    let preimage: Vec<(usize, i64)> = (0..n)
        .map(|i| {
            (0..n)
                .find_map(|j| (linear[(i, j)] != 0).then_some((j, linear[(i, j)])))
                .expect("signed permutation")
        })
        .collect();
    let basis = form_basis(n, k);
    let mut image = Vec::with_capacity(basis.len());
    let mut sign = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut s = 1i64;
        let mut targets: Vec<usize> = b
            .indices()
            .iter()
            .map(|&i| {
                let (j, si) = preimage[i - 1];
                s *= si;
                j + 1
            })
            .collect();
        // insertion sort, counting transpositions
        for a in 1..targets.len() {
            let mut c = a;
            while c > 0 && targets[c - 1] > targets[c] {
                targets.swap(c - 1, c);
                s = -s;
                c -= 1;
            }
        }
        let target = FormBasisElement::from_indices(&targets);
        image.push(basis.iter().position(|e| *e == target).expect("same degree"));
        sign.push(s);
    }
    MonomialMatrix { basis, image, sign }
}

/// Integer matrix `Σ_g ρ(g)` on `Λ^k`; the averaging projector is this
/// divided by the group order.
pub fn summed_action(group: &GroupTable, k: usize) -> IntMatrix {
    let d = form_basis(group.dim(), k).len();
    let mut acc = IntMatrix::zeros(d, d);
    for g in group.elements() {
        let m = induced_action(g.linear(), k);
        for i in 0..d {
            acc[(m.image[i], i)] += m.sign[i];
        }
    }
    acc
}

/// Exact averaging projector `(1/|Γ|) Σ_g ρ(g)`.
pub fn averaging_projector(group: &GroupTable, k: usize) -> Vec<Vec<Rat>> {
    let q = summed_action(group, k);
    let order = Rat::from_int(group.order() as i64);
    (0..q.rows())
        .map(|i| q.row(i).iter().map(|&x| &Rat::from_int(x) / &order).collect())
        .collect()
}

/// Burnside-style count `(1/|Γ|) Σ_g tr ρ(g)`.
pub fn burnside_dimension(group: &GroupTable, k: usize) -> Rat {
    let total: i64 = group.elements().iter().map(|g| induced_action(g.linear(), k).trace()).sum();
    &Rat::from_int(total) / &Rat::from_int(group.order() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub degree: usize,
    pub dimension: usize,
    pub coordinates: Vec<FormBasisElement>,
    /// Primitive integer coefficient vectors over `coordinates`.
    pub basis: Vec<Vec<i64>>,
}

impl InvariantSubspace {
    /// Basis vectors written as signed sums such as `dx2∧dx3`.
    pub fn basis_labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|v| {
                let mut s = String::new();
                for (c, e) in v.iter().zip(&self.coordinates) {
                    if *c == 0 {
                        continue;
                    }
                    if !s.is_empty() || *c < 0 {
                        s += if *c < 0 { "-" } else { "+" };
                    }
                    if c.abs() != 1 {
                        s += &format!("{}", c.abs());
                    }
                    s += &format!("{e}");
                }
                s
            })
            .collect()
    }
}

/// Γ-invariant subspace of `Λ^k`: the column space of the summed action.
pub fn invariant_forms(group: &GroupTable, k: usize) -> InvariantSubspace {
    let q = summed_action(group, k);
    let columns: Vec<Vec<Rat>> = (0..q.cols())
        .map(|j| q.col(j).into_iter().map(Rat::from_int).collect())
        .collect();
    let (rows, _) = rref(&columns);
    let basis: Vec<Vec<i64>> = rows.iter().map(|r| primitive(r)).collect();
    InvariantSubspace {
        degree: k,
        dimension: basis.len(),
        coordinates: form_basis(group.dim(), k),
        basis,
    }
}

fn primitive(v: &[Rat]) -> Vec<i64> {
    let l = Rat::lcm_denom(v);
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    let lead_negative = ints.iter().find(|x| !num_traits::Zero::is_zero(*x)).is_some_and(|x| x.is_negative());
    ints.iter()
        .map(|x| {
            let y = (x / &g).to_i64().expect("small coefficients");
            if lead_negative {
                -y
            } else {
                y
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedBetti {
    pub b2: usize,
    pub b3: usize,
    /// `b_0 … b_5` of the resolved 5-manifold.
    pub table: Vec<usize>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// `b_0 … b_n` of the flat orbifold.
    pub orbifold: Vec<usize>,
    pub orbifold_euler: i64,
    pub resolved: Option<ResolvedBetti>,
}

impl BettiTable {
    /// Poincaré duality `b_k = b_{n-k}` of the orbifold table.
    pub fn is_self_dual(&self) -> bool {
        let b = &self.orbifold;
        (0..b.len()).all(|k| b[k] == b[b.len() - 1 - k])
    }
}

fn alternating_sum(b: &[usize]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

pub fn orbifold_betti(group: &GroupTable) -> BettiTable {
    let orbifold: Vec<usize> = (0..=group.dim()).map(|k| invariant_forms(group, k).dimension).collect();
    BettiTable { orbifold_euler: alternating_sum(&orbifold), orbifold, resolved: None }
}

/// Betti numbers of the resolved 5-manifold in which every singular circle
/// orbit is replaced by `S¹ × Y`: `b_1 = 0`, `b_2 = b_2(orbifold) + #orbits`,
/// `b_3 = b_2`.
///
/// Only the numeric conclusion of the Mayer–Vietoris argument is encoded, so
/// the inputs must match its hypotheses: a passing certificate, a
/// circles-only census, and dimension five.
pub fn resolved_betti(
    orbifold: &BettiTable,
    census: &SingularCensus,
    certificate: &Certificate,
) -> Result<BettiTable> {
    if !certificate.passed() {
        return Err(Error::NotCertified(String::from("simply-connectedness certificate failed")));
    }
    if !census.is_circles_only() {
        return Err(Error::NotCertified(String::from("singular set is not a union of circles")));
    }
    if orbifold.orbifold.len() != 6 {
        return Err(Error::NotCertified(format!(
            "resolution pattern needs dimension 5, got {}",
            orbifold.orbifold.len().saturating_sub(1)
        )));
    }
    let b2 = orbifold.orbifold[2] + census.orbit_count();
    let b3 = b2;
    let table = vec![1, 0, b2, b3, 0, 1];
    let euler = alternating_sum(&table);
    Ok(BettiTable {
        orbifold: orbifold.orbifold.clone(),
        orbifold_euler: orbifold.orbifold_euler,
        resolved: Some(ResolvedBetti { b2, b3, table, euler }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn basis_sizes_are_binomials() {
        let sizes: Vec<usize> = (0..=5).map(|k| form_basis(5, k).len()).collect();
        assert_eq!(sizes, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(form_basis(3, 2)[0].to_string(), "dx1∧dx2");
    }

    #[test]
    fn diagonal_action_sign_flips_cancel() {
        let mut a = IntMatrix::identity(5);
        for i in 1..5 {
            a[(i, i)] = -1;
        }
        let m = induced_action(&a, 2);
        let i = m.basis.iter().position(|e| *e == FormBasisElement::from_indices(&[2, 3])).unwrap();
        assert_eq!((m.image[i], m.sign[i]), (i, 1));
        let j = m.basis.iter().position(|e| *e == FormBasisElement::from_indices(&[1, 2])).unwrap();
        assert_eq!((m.image[j], m.sign[j]), (j, -1));
    }

    #[test]
    fn identity_acts_trivially() {
        let m = induced_action(&IntMatrix::identity(4), 2);
        assert_eq!(m.to_dense(), IntMatrix::identity(6));
    }

    #[test]
    fn swap_reorders_with_parity() {
        // x -> (x2, x1): pulls dx1∧dx2 back to dx2∧dx1 = -dx1∧dx2
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let m = induced_action(&a, 2);
        assert_eq!(m.sign, vec![-1]);
    }
}
