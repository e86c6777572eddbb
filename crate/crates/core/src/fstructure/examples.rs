//! Atlases for the two `T^5` examples: three (resp. two) tube charts around
//! the singular circles with circle actions along the circles, and one
//! complement chart carrying a torus action on the cover.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ChartSpec, CovarianceRule, Covering, Region, TorusActionSymbol, TubeSet};
use crate::rational::Rat;

/// Tube radius, inside the disjointness regime `ε < 1/100`.
pub fn default_radius() -> Rat {
    Rat::new(1, 200)
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn tubes(name: &str, plane: (usize, usize), centers: &[(i64, i64)], radius: &Rat) -> TubeSet {
    // centers given in quarters
    TubeSet {
        name: String::from(name),
        plane,
        centers: centers.iter().map(|&(a, b)| (q(a, 4), q(b, 4))).collect(),
        radius: radius.clone(),
    }
}

fn tube_chart(t: TubeSet, coord: usize, signs: &[i64]) -> ChartSpec {
    ChartSpec {
        name: t.name.clone(),
        action: TorusActionSymbol { coords: vec![coord], signs: signs.iter().map(|&s| vec![s]).collect() },
        region: Region::Tubes(t),
        covering: Covering::Trivial,
    }
}

fn complement_chart(removed: Vec<TubeSet>, coords: Vec<usize>) -> ChartSpec {
    let k = coords.len();
    ChartSpec {
        name: String::from("V"),
        region: Region::Complement { removed, shrink: Rat::half() },
        covering: Covering::Group,
        action: TorusActionSymbol::uniform(coords, vec![1; k], 1),
    }
}

fn rule(entries: &[(&str, &[i64])]) -> Vec<CovarianceRule> {
    vec![CovarianceRule {
        chart: String::from("V"),
        generator_signs: entries.iter().map(|(n, s)| (String::from(*n), s.to_vec())).collect(),
    }]
}

/// Atlas for the example with twelve singular circles.
pub fn primary_atlas(radius: &Rat) -> (Vec<ChartSpec>, Vec<CovarianceRule>) {
    let plane = (1, 2);
    let wa = tubes("W^alpha", plane, &[(0, 0), (2, 0), (0, 2), (2, 2)], radius);
    let wb = tubes("W^beta", plane, &[(1, 0), (3, 0), (3, 2), (1, 2)], radius);
    let wg = tubes("W^gamma", plane, &[(0, 1), (0, 3), (2, 3), (2, 1)], radius);
    let signs = [1, -1, -1, 1];
    let atlas = vec![
        tube_chart(wa.clone(), 0, &signs),
        tube_chart(wb.clone(), 3, &signs),
        tube_chart(wg.clone(), 4, &signs),
        complement_chart(vec![wa, wb, wg], vec![0, 3, 4]),
    ];
    let rules = rule(&[("alpha", &[1, -1, -1]), ("beta", &[-1, 1, -1]), ("gamma", &[-1, -1, 1])]);
    (atlas, rules)
}

/// Atlas for the half-length example; the `alpha` and `beta` circles share
/// their tubes.
pub fn half_length_atlas(radius: &Rat) -> (Vec<ChartSpec>, Vec<CovarianceRule>) {
    let plane = (2, 3);
    let wab = tubes("W^alphabeta", plane, &[(0, 0), (2, 0), (0, 2), (2, 2)], radius);
    let wg = tubes("W^gamma", plane, &[(1, 0), (3, 0), (1, 2), (3, 2)], radius);
    let signs = [1, -1, 1, -1];
    let atlas = vec![
        tube_chart(wab.clone(), 0, &signs),
        tube_chart(wg.clone(), 4, &signs),
        complement_chart(vec![wab, wg], vec![0, 4]),
    ];
    let rules = rule(&[("alpha", &[1, -1]), ("beta", &[1, -1]), ("gamma", &[-1, 1])]);
    (atlas, rules)
}
