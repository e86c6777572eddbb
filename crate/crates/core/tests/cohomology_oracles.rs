use kummer_core::cohomology::*;
use kummer_core::lattice::examples::{half_length_generators, kummer_generators};
use kummer_core::lattice::{generate_group, pi1_certificate, singular_census, AffineIsometry, GroupTable};
use kummer_core::Rat;

fn primary() -> GroupTable {
    generate_group(&kummer_generators()).unwrap()
}

fn half_length() -> GroupTable {
    generate_group(&half_length_generators()).unwrap()
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Rat::zero(), |s, (x, r)| &s + &(x * &r[j])))
                .collect()
        })
        .collect()
}

/// For diagonal groups `dx_I` is invariant iff every element has an even
/// number of `-1` entries on `I`.
fn diagonal_oracle(g: &GroupTable, k: usize) -> Vec<String> {
    let signs: Vec<Vec<i64>> = g.elements().iter().map(|e| e.diagonal_signs().unwrap()).collect();
    form_basis(g.dim(), k)
        .into_iter()
        .filter(|f| signs.iter().all(|s| f.indices().iter().map(|&i| s[i - 1]).product::<i64>() == 1))
        .map(|f| f.to_string())
        .collect()
}

#[test]
fn projector_is_idempotent_and_trace_is_burnside() {
    for g in [primary(), half_length()] {
        for k in 0..=5 {
            let p = averaging_projector(&g, k);
            assert_eq!(matmul(&p, &p), p, "k = {k}");
            let trace = (0..p.len()).fold(Rat::zero(), |s, i| &s + &p[i][i]);
            let inv = invariant_forms(&g, k);
            assert_eq!(trace, Rat::from_int(inv.dimension as i64));
            assert_eq!(burnside_dimension(&g, k), Rat::from_int(inv.dimension as i64));
        }
    }
}

#[test]
fn invariant_forms_match_the_diagonal_oracle() {
    for g in [primary(), half_length()] {
        for k in 0..=5 {
            let inv = invariant_forms(&g, k);
            let mut labels = inv.basis_labels();
            labels.sort();
            let mut expect = diagonal_oracle(&g, k);
            expect.sort();
            assert_eq!(labels, expect, "k = {k}");
        }
    }
}

#[test]
fn induced_action_is_a_representation() {
    let g = primary();
    for k in 0..=5 {
        for i in 0..g.order() {
            for j in 0..g.order() {
                let lhs = induced_action(g.element(g.mul(i, j)).linear(), k).to_dense();
                let rhs = induced_action(g.element(i).linear(), k)
                    .to_dense()
                    .mul(&induced_action(g.element(j).linear(), k).to_dense());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn primary_betti_numbers() {
    let g = primary();
    let table = orbifold_betti(&g);
    assert_eq!(table.orbifold, vec![1, 0, 1, 1, 0, 1]);
    assert!(table.is_self_dual());
    assert_eq!(table.orbifold_euler, 0);
    assert_eq!(invariant_forms(&g, 2).basis_labels(), vec!["dx2∧dx3"]);

    let census = singular_census(&g, true).unwrap();
    let resolved = resolved_betti(&table, &census, &pi1_certificate(&g)).unwrap().resolved.unwrap();
    assert_eq!(resolved.b2, 13);
    assert_eq!(resolved.table, vec![1, 0, 13, 13, 0, 1]);
    assert_eq!(resolved.euler, 0);
}

#[test]
fn half_length_betti_numbers_follow_the_generator_table() {
    // α and β share the linear part diag(+,-,-,-,-), so every dx_i∧dx_j
    // with i, j in {2,3,4} survives
    let g = half_length();
    let table = orbifold_betti(&g);
    assert_eq!(invariant_forms(&g, 2).basis_labels(), vec!["dx2∧dx3", "dx2∧dx4", "dx3∧dx4"]);
    assert!(table.is_self_dual());
    let census = singular_census(&g, true).unwrap();
    let resolved = resolved_betti(&table, &census, &pi1_certificate(&g)).unwrap().resolved.unwrap();
    assert_eq!(resolved.b2, 19);
    assert_eq!(resolved.euler, 0);
}

#[test]
fn resolved_betti_refuses_uncertified_input() {
    // a single reflection leaves directions 1 unreversed
    let g = generate_group(&[(
        String::from("r"),
        AffineIsometry::diagonal(&[1, -1, -1, -1, -1], vec![Rat::zero(); 5]).unwrap(),
    )])
    .unwrap();
    let table = orbifold_betti(&g);
    let census = singular_census(&g, false).unwrap();
    let err = resolved_betti(&table, &census, &pi1_certificate(&g)).unwrap_err();
    assert!(matches!(err, kummer_core::Error::NotCertified(_)));
}
