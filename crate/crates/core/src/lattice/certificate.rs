//! Mechanical certificate mirroring the loop-folding argument for a trivial
//! orbifold fundamental group.
//!
//! This is NOT a fundamental-group computation. It checks the two structural
//! ingredients the folding argument consumes:
//!
//! * every coordinate direction `e_i` is reversed (`A e_i = -e_i`) by some
//!   group element, so a loop parallel to `e_i` can be folded back onto itself;
//! * the group is generated by its non-identity elements that have fixed
//!   points, which handles lifts of loops ending at a different preimage.
//!
//! A PASS is a heuristic certificate, never a proof.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::fixed::fixed_locus;
use super::group::GroupTable;

pub const CERTIFICATE_NOTE: &str =
    "heuristic certificate mirroring the loop-folding proof strategy; not a fundamental-group computation";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionWitness {
    /// Zero-based coordinate index.
    pub direction: usize,
    /// Preferred witness: the first reversing element with a fixed point,
    /// else the first reversing element.
    pub witness: Option<usize>,
    /// Every element reversing this direction.
    pub reversers: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub directions: Vec<DirectionWitness>,
    /// Non-identity elements with nonempty fixed locus.
    pub elements_with_fixed_points: Vec<usize>,
    /// Elements outside the subgroup generated by `elements_with_fixed_points`.
    pub generation_gap: Vec<usize>,
    pub note: &'static str,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == CertificateStatus::Pass
    }

    pub fn unreversed_directions(&self) -> Vec<usize> {
        self.directions
            .iter()
            .filter(|d| d.witness.is_none())
            .map(|d| d.direction)
            .collect()
    }
}

pub fn pi1_certificate(group: &GroupTable) -> Certificate {
    let n = group.dim();
    let has_fixed: Vec<bool> = group
        .elements()
        .iter()
        .enumerate()
        .map(|(i, g)| i != 0 && !fixed_locus(g).is_empty())
        .collect();

    let directions: Vec<DirectionWitness> = (0..n)
        .map(|dir| {
            let reversers: Vec<usize> = group
                .elements()
                .iter()
                .enumerate()
                .filter(|(_, g)| g.column_image(dir) == (dir, -1))
                .map(|(i, _)| i)
                .collect();
            let witness = reversers
                .iter()
                .copied()
                .find(|&i| has_fixed[i])
                .or_else(|| reversers.first().copied());
            DirectionWitness { direction: dir, witness, reversers }
        })
        .collect();

    let with_fixed: Vec<usize> = (0..group.order()).filter(|&i| has_fixed[i]).collect();
    let generated: BTreeSet<usize> = group.subgroup_generated(&with_fixed);
    let generation_gap: Vec<usize> = (0..group.order()).filter(|i| !generated.contains(i)).collect();

    let ok = directions.iter().all(|d| d.witness.is_some()) && generation_gap.is_empty();
    Certificate {
        status: if ok { CertificateStatus::Pass } else { CertificateStatus::Fail },
        directions,
        elements_with_fixed_points: with_fixed,
        generation_gap,
        note: CERTIFICATE_NOTE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::affine::AffineIsometry;
    use crate::lattice::group::generate_group;
    use alloc::string::String;

    #[test]
    fn trivial_group_fails() {
        let g = generate_group(&[(String::from("e"), AffineIsometry::identity(5))]).unwrap();
        let c = pi1_certificate(&g);
        assert_eq!(c.status, CertificateStatus::Fail);
        assert_eq!(c.unreversed_directions(), alloc::vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn free_involution_leaves_generation_gap() {
        // x -> -x + 1/2 in the first coordinate and a free half shift in the second
        let f = AffineIsometry::diagonal(
            &[-1, 1],
            alloc::vec![crate::Rat::zero(), crate::Rat::half()],
        )
        .unwrap();
        let g = generate_group(&[(String::from("f"), f)]).unwrap();
        let c = pi1_certificate(&g);
        assert_eq!(c.status, CertificateStatus::Fail);
        assert_eq!(c.generation_gap, alloc::vec![1]);
    }
}
