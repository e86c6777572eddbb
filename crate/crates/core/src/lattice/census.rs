use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::fixed::{fixed_locus, FixedComponent};
use super::group::GroupTable;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Local model of the quotient near a singular circle, assigned from the
/// stabilizer data alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalModel {
    /// `S¹ × (C²/±1)`: no element slides the circle along itself.
    Product,
    /// `(C²/±1 × S¹)/Z₂`: some element translates the circle.
    TwistedProduct,
    /// Component of dimension other than one.
    Other,
}

impl LocalModel {
    pub fn label(self) -> &'static str {
        match self {
            LocalModel::Product => "S¹×(ℂ²/±1)",
            LocalModel::TwistedProduct => "(ℂ²/±1 × S¹)/ℤ₂",
            LocalModel::Other => "other",
        }
    }
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct CensusOrbit {
    pub representative: FixedComponent,
    /// Indices into [`SingularCensus::components`].
    pub members: Vec<usize>,
    /// Group element indices mapping the representative onto itself.
    pub setwise_stabilizer: Vec<usize>,
    /// Group element indices fixing the representative pointwise.
    pub pointwise_stabilizer: Vec<usize>,
    /// Elements sliding the representative along itself by a nonzero
    /// translation, with the shift as a fraction of the circle's period.
    pub translation_elements: Vec<(usize, Rat)>,
    /// Remaining setwise stabilizer elements: they reverse a direction, or
    /// move a component of dimension other than one.
    pub reflection_elements: Vec<usize>,
    pub quotient_length_factor: Rat,
    pub local_model: LocalModel,
}

impl CensusOrbit {
    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }
}

/// Orbit and stabilizer bookkeeping for the union of fixed components of all
/// non-identity elements.
#[derive(Clone, Debug, Default)]
pub struct SingularCensus {
    pub components: Vec<FixedComponent>,
    pub orbits: Vec<CensusOrbit>,
}

impl SingularCensus {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_circles_only(&self) -> bool {
        self.components.iter().all(|c| c.dimension() == 1)
    }
}

/// Builds the census. With `circles_only`, any fixed component of dimension
/// other than one is an error.
pub fn singular_census(group: &GroupTable, circles_only: bool) -> Result<SingularCensus> {
    let mut all = BTreeSet::new();
    for g in group.elements().iter().skip(1) {
        for c in fixed_locus(g) {
            if circles_only && c.dimension() != 1 {
                return Err(Error::NotCircle { dimension: c.dimension() });
            }
            all.insert(c);
        }
    }
    let components: Vec<FixedComponent> = all.into_iter().collect();

    let mut assigned = alloc::vec![false; components.len()];
    let mut orbits = Vec::new();
    for start in 0..components.len() {
        if assigned[start] {
            continue;
        }
        let rep = components[start].clone();
        let mut members = BTreeSet::new();
        let mut setwise = Vec::new();
        let mut pointwise = Vec::new();
        let mut translations = Vec::new();
        let mut reflections = Vec::new();
        for (gi, g) in group.elements().iter().enumerate() {
            let img = rep.image(g);
            let idx = components
                .binary_search(&img)
                .expect("fixed sets are permuted by the group");
            members.insert(idx);
            if idx != start {
                continue;
            }
            setwise.push(gi);
            let dirs_fixed = rep
                .directions()
                .iter()
                .all(|d| &g.linear().mul_vec(d) == d);
            let moved = g.apply(rep.basepoint()) != rep.basepoint();
            if dirs_fixed && !moved {
                pointwise.push(gi);
            } else if dirs_fixed && rep.dimension() == 1 {
                translations.push((gi, slide_amount(&rep, g.apply(rep.basepoint()))));
            } else {
                reflections.push(gi);
            }
        }
        for &m in &members {
            assigned[m] = true;
        }
        let local_model = if rep.dimension() != 1 {
            LocalModel::Other
        } else if translations.is_empty() {
            LocalModel::Product
        } else {
            LocalModel::TwistedProduct
        };
        let factor = Rat::new(pointwise.len() as i64, setwise.len() as i64);
        orbits.push(CensusOrbit {
            representative: rep,
            members: members.into_iter().collect(),
            setwise_stabilizer: setwise,
            pointwise_stabilizer: pointwise,
            translation_elements: translations,
            reflection_elements: reflections,
            quotient_length_factor: factor,
            local_model,
        });
    }
    Ok(SingularCensus { components, orbits })
}

/// Shift `t` in `[0, 1)` with `image ≡ basepoint + t·w` along the circle's
/// primitive direction `w`.
fn slide_amount(c: &FixedComponent, image: Vec<Rat>) -> Rat {
    let w = &c.directions()[0];
    let p = w.iter().position(|&x| x != 0).expect("nonzero direction");
    let delta = &image[p] - &c.basepoint()[p];
    // the pivot entry is +-1 for a primitive vector of a signed permutation
    // fixed lattice; divide in general
    (&delta * &Rat::new(1, w[p])).frac()
}
