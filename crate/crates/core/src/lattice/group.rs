use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::affine::AffineIsometry;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 1024;

/// Finite group of torus isometries with a multiplication table.
///
/// Elements are ordered breadth-first from the identity by right
/// multiplication with the generators, so index 0 is the identity and the
/// generators come next (when distinct).
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<AffineIsometry>,
    words: Vec<Vec<usize>>,
    generator_names: Vec<String>,
    generator_elements: Vec<usize>,
    /// `product[i][j]` is the index of `elements[i] ∘ elements[j]`.
    product: Vec<Vec<usize>>,
    abelian: bool,
    exponent: usize,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[AffineIsometry] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineIsometry {
        &self.elements[i]
    }

    /// Generator indices whose product (left to right) is element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    /// Display name built from the generator word, `id` for the identity.
    pub fn name(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            return String::from("id");
        }
        let parts: Vec<&str> = self.words[i].iter().map(|&g| self.generator_names[g].as_str()).collect();
        parts.join("*")
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        (0..self.order()).find(|&i| self.name(i) == name)
    }

    pub fn index_of(&self, f: &AffineIsometry) -> Option<usize> {
        self.elements.iter().position(|e| e == f)
    }

    /// Index of the element equal to generator `g`.
    pub fn generator_index(&self, g: usize) -> usize {
        self.generator_elements[g]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.product[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.product[i][j] == 0).expect("table is a group")
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != 0 {
            acc = self.product[acc][i];
            k += 1;
        }
        k
    }

    /// Indices of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.product[e][g];
                if seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }
}

/// Closure of `generators` under composition, with the default cap.
pub fn generate_group(generators: &[(String, AffineIsometry)]) -> Result<GroupTable> {
    generate_group_with_cap(generators, DEFAULT_CLOSURE_CAP)
}

pub fn generate_group_with_cap(generators: &[(String, AffineIsometry)], cap: usize) -> Result<GroupTable> {
    let Some((_, first)) = generators.first() else {
        return Err(Error::Invalid(String::from("empty generator list")));
    };
    let n = first.dim();
    for (_, g) in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
    }

    let mut elements = vec![AffineIsometry::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: BTreeMap<AffineIsometry, usize> = BTreeMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for (gi, (_, g)) in generators.iter().enumerate() {
            let p = elements[head].compose(g)?;
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCap { cap });
                }
                index.insert(p.clone(), elements.len());
                let mut w = words[head].clone();
                w.push(gi);
                words.push(w);
                elements.push(p);
            }
        }
        head += 1;
    }

    let order = elements.len();
    let mut product = vec![vec![0; order]; order];
    for i in 0..order {
        for j in 0..order {
            let p = elements[i].compose(&elements[j])?;
            product[i][j] = *index.get(&p).expect("closure is closed");
        }
    }
    let generator_elements = generators
        .iter()
        .map(|(_, g)| index[g])
        .collect();
    let abelian = (0..order).all(|i| (0..i).all(|j| product[i][j] == product[j][i]));
    let mut table = GroupTable {
        elements,
        words,
        generator_names: generators.iter().map(|(s, _)| s.clone()).collect(),
        generator_elements,
        product,
        abelian,
        exponent: 1,
    };
    table.exponent = (0..order).fold(1, |acc, i| acc.lcm(&table.element_order(i)));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;

    #[test]
    fn identity_only() {
        let g = generate_group(&[(String::from("e"), AffineIsometry::identity(5))]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn closure_cap_trips() {
        // translation by 1/7 generates Z/7
        let t = AffineIsometry::translation_by(vec![Rat::new(1, 7)]);
        let err = generate_group_with_cap(&[(String::from("t"), t.clone())], 5).unwrap_err();
        assert_eq!(err, Error::ClosureCap { cap: 5 });
        let g = generate_group_with_cap(&[(String::from("t"), t)], 7).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.exponent(), 7);
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(generate_group(&[]).is_err());
    }
}
