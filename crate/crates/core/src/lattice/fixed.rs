use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::affine::AffineIsometry;
use crate::intmat::{rref, IntMatrix};
use crate::rational::{lex_cmp, reduce_mod1, Rat};

/// A connected component `basepoint + span_R(directions)` of a fixed-point
/// set in `T^n`.
///
/// `directions` is the Hermite basis of the saturated lattice
/// `span ∩ Z^n` and `basepoint` the lexicographically smallest point of the
/// component whose pivot coordinates vanish, so two components are equal as
/// subsets of the torus iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    basepoint: Vec<Rat>,
    directions: Vec<Vec<i64>>,
}

impl FixedComponent {
    /// Canonicalizes an arbitrary point and spanning set of integer directions.
    pub fn new(point: &[Rat], directions: &[Vec<i64>]) -> Self {
        let directions = hermite_basis(directions);
        let basepoint = canonical_basepoint(point, &directions);
        FixedComponent { basepoint, directions }
    }

    pub fn basepoint(&self) -> &[Rat] {
        &self.basepoint
    }

    pub fn directions(&self) -> &[Vec<i64>] {
        &self.directions
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    /// Image of the component under `g`.
    pub fn image(&self, g: &AffineIsometry) -> FixedComponent {
        let p = g.apply(&self.basepoint);
        let dirs: Vec<Vec<i64>> = self.directions.iter().map(|d| g.linear().mul_vec(d)).collect();
        FixedComponent::new(&p, &dirs)
    }

    /// Whether `x` lies on the component.
    pub fn contains(&self, x: &[Rat]) -> bool {
        canonical_basepoint(x, &self.directions) == self.basepoint
    }

    /// Largest denominator among basepoint coordinates.
    pub fn denominator(&self) -> BigInt {
        Rat::lcm_denom(&self.basepoint)
    }
}

impl PartialOrd for FixedComponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedComponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.directions
            .len()
            .cmp(&other.directions.len())
            .then_with(|| self.directions.cmp(&other.directions))
            .then_with(|| lex_cmp(&self.basepoint, &other.basepoint))
    }
}

/// All connected components of `{x : f(x) = x}` on the torus, sorted.
///
/// Solves `(A - I) x ≡ -b (mod Z^n)` through the Smith form `U (A - I) V = D`:
/// with `x = V y`, each nonzero `d_i` contributes `|d_i|` choices of `y_i`,
/// each zero `d_i` a free direction (column `i` of `V`) and a solvability
/// condition on `(-U b)_i`.
pub fn fixed_locus(f: &AffineIsometry) -> Vec<FixedComponent> {
    let n = f.dim();
    let m = f.linear().sub_identity();
    let smith = m.smith();
    let rhs: Vec<Rat> = smith.u.mul_rat(f.translation()).into_iter().map(|v| -v).collect();

    for i in smith.rank..n {
        if !rhs[i].is_integer() {
            return Vec::new();
        }
    }
    let free: Vec<Vec<i64>> = (smith.rank..n).map(|i| smith.v.col(i)).collect();

    // mixed radix enumeration over the torsion choices
    let moduli: Vec<i64> = smith.diag[..smith.rank].to_vec();
    let mut counter = vec![0i64; smith.rank];
    let mut out = Vec::new();
    loop {
        let mut y = vec![Rat::zero(); n];
        for i in 0..smith.rank {
            y[i] = &(&rhs[i] + &Rat::from_int(counter[i])) * &Rat::new(1, moduli[i]);
        }
        let x = reduce_mod1(&smith.v.mul_rat(&y));
        out.push(FixedComponent::new(&x, &free));

        let mut k = 0;
        loop {
            if k == smith.rank {
                out.sort();
                out.dedup();
                return out;
            }
            counter[k] += 1;
            if counter[k] < moduli[k] {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`, zero rows
/// dropped. Pivots are positive and entries above a pivot are reduced into
/// `[0, pivot)`.
pub fn hermite_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        // Euclid down column c among rows r..
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            m.swap(r, p);
            if m[r][c] < 0 {
                m[r].iter_mut().for_each(|x| *x = -*x);
            }
            let mut done = true;
            for i in r + 1..m.len() {
                let q = m[i][c].div_euclid(m[r][c]);
                if q != 0 {
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                if m[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        for i in 0..r {
            let q = m[i][c].div_euclid(m[r][c]);
            if q != 0 {
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|&x| x != 0));
    m
}

/// Lexicographically smallest point, mod `Z^n`, of `point + span(directions)`
/// whose pivot coordinates (with respect to the rational echelon form of the
/// directions) are zero.
fn canonical_basepoint(point: &[Rat], directions: &[Vec<i64>]) -> Vec<Rat> {
    if directions.is_empty() {
        return reduce_mod1(point);
    }
    let rows: Vec<Vec<Rat>> = directions
        .iter()
        .map(|d| d.iter().map(|&x| Rat::from_int(x)).collect())
        .collect();
    let (echelon, pivots) = rref(&rows);

    let mut base: Vec<Rat> = point.to_vec();
    for (row, &p) in echelon.iter().zip(&pivots) {
        let k = base[p].clone();
        for (b, e) in base.iter_mut().zip(row) {
            *b = &*b - &(&k * e);
        }
    }
    let base = reduce_mod1(&base);

    // the points with vanishing pivots form base + <echelon rows> mod Z^n
    let periods: Vec<i64> = echelon
        .iter()
        .map(|row| Rat::lcm_denom(row).to_i64().expect("small denominators"))
        .collect();
    let mut best: Option<Vec<Rat>> = None;
    let mut counter = vec![0i64; echelon.len()];
    loop {
        let mut cand = base.clone();
        for (row, &k) in echelon.iter().zip(&counter) {
            if k != 0 {
                for (c, e) in cand.iter_mut().zip(row) {
                    *c = &*c + &e.scale(k);
                }
            }
        }
        let cand = reduce_mod1(&cand);
        if best.as_ref().map_or(true, |b| lex_cmp(&cand, b) == Ordering::Less) {
            best = Some(cand);
        }
        let mut k = 0;
        loop {
            if k == counter.len() {
                return best.expect("at least one candidate");
            }
            counter[k] += 1;
            if counter[k] < periods[k] {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Directions `w` with `A w = w`, as the canonical basis of the fixed lattice.
pub fn fixed_directions(linear: &IntMatrix) -> Vec<Vec<i64>> {
    let s = linear.sub_identity().smith();
    let free: Vec<Vec<i64>> = (s.rank..linear.rows()).map(|i| s.v.col(i)).collect();
    hermite_basis(&free)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_basis(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a, vec![vec![1, 0], vec![0, 1]]);
        let b = hermite_basis(&[vec![-1, 1, 0]]);
        assert_eq!(b, vec![vec![1, -1, 0]]);
        let c = hermite_basis(&[vec![1, 1, 0], vec![0, 0, 0]]);
        assert_eq!(c, vec![vec![1, 1, 0]]);
    }

    #[test]
    fn identity_fixes_everything() {
        let comps = fixed_locus(&AffineIsometry::identity(3));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dimension(), 3);
        assert!(comps[0].basepoint().iter().all(Rat::is_zero));
    }

    #[test]
    fn antipodal_map_on_circle() {
        let f = AffineIsometry::diagonal(&[-1], vec![Rat::zero()]).unwrap();
        let comps = fixed_locus(&f);
        let pts: Vec<Rat> = comps.iter().map(|c| c.basepoint()[0].clone()).collect();
        assert_eq!(pts, vec![Rat::zero(), Rat::half()]);
    }

    #[test]
    fn half_translation_has_no_fixed_points() {
        let f = AffineIsometry::translation_by(vec![Rat::half(), Rat::zero()]);
        assert!(fixed_locus(&f).is_empty());
    }

    #[test]
    fn swap_has_diagonal_circle() {
        // (x, y) -> (y, x): fixed set is the diagonal circle
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let f = AffineIsometry::new(m, vec![Rat::zero(); 2]).unwrap();
        let comps = fixed_locus(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].directions(), &[vec![1, 1]]);
        // (x, y) -> (y + 1/2, x + 1/2): x - y = 1/2 mod 1 is again one circle
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let f = AffineIsometry::new(m, vec![Rat::half(); 2]).unwrap();
        let comps = fixed_locus(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].basepoint(), &[Rat::zero(), Rat::half()]);
    }

    #[test]
    fn containment_and_image() {
        let f = AffineIsometry::diagonal(&[1, -1], vec![Rat::zero(), Rat::new(1, 2)]).unwrap();
        let comps = fixed_locus(&f);
        assert_eq!(comps.len(), 2);
        let c = &comps[0];
        assert!(c.contains(&[Rat::new(3, 7), c.basepoint()[1].clone()]));
        let shift = AffineIsometry::translation_by(vec![Rat::new(1, 3), Rat::half()]);
        assert_eq!(c.image(&shift), comps[1]);
    }
}
