//! Exact checks of F-structure data given upstairs on `T^n`: chart
//! invariance, covariance of the local torus actions, local freeness,
//! commuting overlaps, the cover, and the polarized/rank verdict.
//!
//! Charts are unions of tubes `‖(x_a, x_b) - c‖ < ε` around finitely many
//! centers in a coordinate plane, complements of shrunken closed tubes, or the
//! whole torus. Local actions are coordinate circle actions
//! `x_i ↦ x_i ± θ`, with the sign allowed to vary between tube components.

pub mod examples;
pub mod formal;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use formal::FormalAffine;

use crate::error::{Error, Result};
use crate::lattice::{fixed_locus, AffineIsometry, GroupTable};
use crate::rational::Rat;

/// Tubes of radius `radius` around `centers` in the `(plane.0, plane.1)`
/// coordinate plane (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeSet {
    pub name: String,
    pub plane: (usize, usize),
    pub centers: Vec<(Rat, Rat)>,
    pub radius: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Tubes(TubeSet),
    /// Torus minus the closures of `removed`, each shrunk to `shrink · radius`.
    Complement { removed: Vec<TubeSet>, shrink: Rat },
    Whole,
}

impl Region {
    pub fn component_count(&self) -> usize {
        match self {
            Region::Tubes(t) => t.centers.len(),
            _ => 1,
        }
    }

    /// Coordinate planes constrained by the region.
    pub fn planes(&self) -> Vec<(usize, usize)> {
        match self {
            Region::Tubes(t) => vec![t.plane],
            Region::Complement { removed, .. } => removed.iter().map(|t| t.plane).collect(),
            Region::Whole => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Covering {
    /// The action is defined on the region itself and must commute with Γ.
    Trivial,
    /// The action lives on the Γ-cover and is covariant through a rule Ψ.
    Group,
}

/// Product of circle actions `x_{coords[j]} ↦ x_{coords[j]} + signs[c][j] θ_j`
/// on component `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusActionSymbol {
    pub coords: Vec<usize>,
    pub signs: Vec<Vec<i64>>,
}

impl TorusActionSymbol {
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Same signs on every one of `components`.
    pub fn uniform(coords: Vec<usize>, signs: Vec<i64>, components: usize) -> Self {
        TorusActionSymbol { coords, signs: vec![signs; components] }
    }

    fn formal(&self, n: usize, component: usize, offset: usize, params: usize, flip: &[i64]) -> FormalAffine {
        let mut f = FormalAffine::circle(n, params, 0, 0, 0);
        for (j, &coord) in self.coords.iter().enumerate() {
            let s = self.signs[component][j] * flip.get(j).copied().unwrap_or(1);
            f = f.compose(&FormalAffine::circle(n, params, offset + j, coord, s));
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub name: String,
    pub region: Region,
    pub covering: Covering,
    pub action: TorusActionSymbol,
}

/// Ψ on generators: `signs[j]` is the sign by which the generator acts on
/// `t_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceRule {
    pub chart: String,
    pub generator_signs: Vec<(String, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: String) -> Self {
        Check { name: String::from(name), passed: true, detail }
    }

    fn fail(name: &str, detail: String) -> Self {
        Check { name: String::from(name), passed: false, detail }
    }

    fn from_failures(name: &str, ok_detail: String, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Check::pass(name, ok_detail)
        } else {
            Check::fail(name, failures.join("; "))
        }
    }
}

fn torus_dist2(p: &(Rat, Rat), q: &(Rat, Rat)) -> Rat {
    let wrap = |d: Rat| {
        let f = d.frac();
        if f > Rat::half() {
            &f - &Rat::one()
        } else {
            f
        }
    };
    let dx = wrap(&p.0 - &q.0);
    let dy = wrap(&p.1 - &q.1);
    &(&dx * &dx) + &(&dy * &dy)
}

fn plane_preserved(g: &AffineIsometry, plane: (usize, usize)) -> bool {
    [plane.0, plane.1].iter().all(|&j| {
        let (row, _) = g.column_image(j);
        row == plane.0 || row == plane.1
    })
}

/// Index of `g(center_c)` among the centers, when the plane is preserved.
fn center_image(g: &AffineIsometry, t: &TubeSet, c: usize) -> Option<usize> {
    let mut x = vec![Rat::zero(); g.dim()];
    x[t.plane.0] = t.centers[c].0.clone();
    x[t.plane.1] = t.centers[c].1.clone();
    let y = g.apply(&x);
    let img = (y[t.plane.0].clone(), y[t.plane.1].clone());
    t.centers
        .iter()
        .position(|q| q.0.frac() == img.0 && q.1.frac() == img.1)
}

fn tubes_invariant(t: &TubeSet, g: &AffineIsometry) -> core::result::Result<Vec<usize>, String> {
    if !plane_preserved(g, t.plane) {
        return Err(format!("{} does not preserve the plane of {}", fmt_map(g), t.name));
    }
    (0..t.centers.len())
        .map(|c| center_image(g, t, c).ok_or_else(|| format!("{} moves center {c} of {} off the center set", fmt_map(g), t.name)))
        .collect()
}

fn fmt_map(g: &AffineIsometry) -> String {
    format!("{g:?}")
}

/// Γ-invariance of a chart under one isometry, and the induced permutation of
/// its components.
pub fn check_invariance(chart: &ChartSpec, g: &AffineIsometry) -> (Check, Vec<usize>) {
    match &chart.region {
        Region::Tubes(t) => match tubes_invariant(t, g) {
            Ok(perm) => (Check::pass("invariance", format!("components permuted as {perm:?}")), perm),
            Err(e) => (Check::fail("invariance", e), Vec::new()),
        },
        Region::Complement { removed, .. } => {
            let failures: Vec<String> = removed.iter().filter_map(|t| tubes_invariant(t, g).err()).collect();
            (Check::from_failures("invariance", String::from("removed set preserved"), failures), vec![0])
        }
        Region::Whole => (Check::pass("invariance", String::from("whole torus")), vec![0]),
    }
}

/// Invariance of a chart under the circle action `x_coord ↦ x_coord + θ`.
pub fn check_translation_invariance(chart: &ChartSpec, coord: usize) -> Check {
    let hit: Vec<(usize, usize)> = chart
        .region
        .planes()
        .into_iter()
        .filter(|p| p.0 == coord || p.1 == coord)
        .collect();
    if hit.is_empty() {
        Check::pass("translation-invariance", format!("x{} is unconstrained", coord + 1))
    } else {
        Check::fail(
            "translation-invariance",
            format!("x{} is a constrained coordinate of {}", coord + 1, chart.name),
        )
    }
}

/// Sign vectors `Ψ(g)` for every group element, built from generator words.
pub fn extend_rule(rule: &CovarianceRule, group: &GroupTable, rank: usize) -> Result<Vec<Vec<i64>>> {
    let mut gen_signs = Vec::new();
    for name in group.generator_names() {
        let signs = rule
            .generator_signs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.clone())
            .ok_or_else(|| Error::NotHomomorphism(format!("rule for {} has no entry for {name}", rule.chart)))?;
        if signs.len() != rank || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::NotHomomorphism(format!(
                "rule for {} at {name} must be {rank} signs ±1",
                rule.chart
            )));
        }
        gen_signs.push(signs);
    }
    let psi: Vec<Vec<i64>> = (0..group.order())
        .map(|i| {
            group.word(i).iter().fold(vec![1; rank], |acc, &g| {
                acc.iter().zip(&gen_signs[g]).map(|(a, b)| a * b).collect()
            })
        })
        .collect();
    for i in 0..group.order() {
        for j in 0..group.order() {
            let prod: Vec<i64> = psi[i].iter().zip(&psi[j]).map(|(a, b)| a * b).collect();
            if psi[group.mul(i, j)] != prod {
                return Err(Error::NotHomomorphism(format!(
                    "Ψ({}) ≠ Ψ({})·Ψ({}) for {}",
                    group.name(group.mul(i, j)),
                    group.name(i),
                    group.name(j),
                    rule.chart
                )));
            }
        }
    }
    Ok(psi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceVerdict {
    pub homomorphism: Check,
    pub identities: Check,
    /// Number of exact map identities verified.
    pub identity_count: usize,
}

/// Verifies `g ∘ T_c(θ) = T_{g(c)}(Ψ(g) θ) ∘ g` as identities of affine
/// maps with formal `θ`, for every group element and component.
pub fn check_covariance(chart: &ChartSpec, rule: Option<&CovarianceRule>, group: &GroupTable) -> CovarianceVerdict {
    let k = chart.action.rank();
    let n = group.dim();
    let psi = match rule {
        Some(r) => extend_rule(r, group, k),
        None => Ok(vec![vec![1; k]; group.order()]),
    };
    let (homomorphism, psi) = match psi {
        Ok(p) => (
            Check::pass(
                "homomorphism",
                String::from(if rule.is_some() { "Ψ respects the group table" } else { "Ψ trivial (equivariant action)" }),
            ),
            p,
        ),
        Err(e) => {
            let c = Check::fail("homomorphism", format!("{e}"));
            return CovarianceVerdict {
                homomorphism: c,
                identities: Check::fail("covariance", String::from("skipped: Ψ is not a homomorphism")),
                identity_count: 0,
            };
        }
    };
    let mut failures = Vec::new();
    let mut count = 0;
    for (gi, g) in group.elements().iter().enumerate() {
        let (inv, perm) = check_invariance(chart, g);
        if !inv.passed {
            failures.push(inv.detail);
            continue;
        }
        let gf = FormalAffine::from_isometry(g, k);
        for c in 0..chart.region.component_count() {
            let lhs = gf.compose(&chart.action.formal(n, c, 0, k, &[]));
            let rhs = chart.action.formal(n, perm[c], 0, k, &psi[gi]).compose(&gf);
            count += 1;
            if !lhs.same_map(&rhs) {
                failures.push(format!("{} on component {c} of {}", group.name(gi), chart.name));
            }
        }
    }
    CovarianceVerdict {
        homomorphism,
        identities: Check::from_failures("covariance", format!("{count} identities hold"), failures),
        identity_count: count,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyFree {
    pub check: Check,
    pub orbit_dimension: usize,
}

/// Coordinate circle actions with nonzero, pairwise distinct directions are
/// free on every orbit, so the orbit dimension is their number.
pub fn check_locally_free(action: &TorusActionSymbol, chart: &ChartSpec) -> Result<LocallyFree> {
    for signs in &action.signs {
        if let Some(j) = signs.iter().position(|&s| s == 0) {
            return Err(Error::ZeroDirection(j));
        }
    }
    if action.signs.len() != chart.region.component_count() || action.signs.iter().any(|s| s.len() != action.rank()) {
        return Err(Error::Invalid(format!("sign table of {} does not match its components", chart.name)));
    }
    let mut dirs = action.coords.clone();
    dirs.sort_unstable();
    dirs.dedup();
    let dim = dirs.len();
    let check = if dim == 0 {
        Check::fail("locally-free", String::from("rank-0 action has no positive-dimensional orbit"))
    } else if dim != action.rank() {
        Check::fail("locally-free", String::from("repeated circle directions"))
    } else {
        Check::pass("locally-free", format!("orbit dimension {dim}"))
    };
    Ok(LocallyFree { check, orbit_dimension: dim })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartVerdict {
    pub name: String,
    pub invariance: Check,
    pub action_invariance: Check,
    pub covariance: CovarianceVerdict,
    pub locally_free: Check,
    pub orbit_dimension: usize,
    /// Acting coordinates avoid every constrained plane, so the resolution
    /// surgery does not interfere with the action.
    pub surgery_compatible: bool,
    /// For charts on the Γ-cover: Γ acts freely on the region.
    pub free_action: Option<Check>,
}

impl ChartVerdict {
    pub fn passed(&self) -> bool {
        self.invariance.passed
            && self.action_invariance.passed
            && self.covariance.homomorphism.passed
            && self.covariance.identities.passed
            && self.locally_free.passed
            && self.free_action.as_ref().map_or(true, |c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FStructureVerdict {
    pub charts: Vec<ChartVerdict>,
    pub radius: Check,
    pub disjointness: Check,
    pub cover: Check,
    pub overlaps: Check,
    pub polarized: bool,
    pub rank: usize,
    pub passed: bool,
    pub min_vol_note: Option<&'static str>,
}

pub const MIN_VOL_NOTE: &str =
    "MinVol = 0 follows from the Cheeger–Gromov collapsing theorem for polarized F-structures (cited, not re-derived)";

/// Γ acts freely on the region: every fixed component of a non-identity
/// element lies inside a removed closed tube.
fn check_free(region: &Region, group: &GroupTable) -> Check {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (gi, g) in group.elements().iter().enumerate().skip(1) {
        for comp in fixed_locus(g) {
            checked += 1;
            let inside = match region {
                Region::Complement { removed, .. } => removed.iter().any(|t| {
                    let (a, b) = t.plane;
                    comp.directions().iter().all(|d| d[a] == 0 && d[b] == 0)
                        && t.centers.iter().any(|c| {
                            c.0.frac() == comp.basepoint()[a] && c.1.frac() == comp.basepoint()[b]
                        })
                }),
                _ => false,
            };
            if !inside {
                failures.push(format!("{} fixes a component meeting the region", group.name(gi)));
            }
        }
    }
    Check::from_failures("free-action", format!("{checked} fixed components all removed"), failures)
}

fn eps_ok(r: &Rat) -> bool {
    !r.is_negative() && !r.is_zero() && *r < Rat::new(1, 100)
}

/// Runs every check on an atlas for the given group.
pub fn verify_f_structure(atlas: &[ChartSpec], rules: &[CovarianceRule], group: &GroupTable) -> Result<FStructureVerdict> {
    if atlas.is_empty() {
        return Err(Error::Invalid(String::from("empty atlas")));
    }
    let n = group.dim();
    let tubes: Vec<&TubeSet> = atlas
        .iter()
        .filter_map(|c| match &c.region {
            Region::Tubes(t) => Some(t),
            _ => None,
        })
        .collect();

    let mut charts = Vec::new();
    for chart in atlas {
        if chart.action.coords.iter().any(|&i| i >= n) {
            return Err(Error::DimensionMismatch { expected: n, found: chart.action.coords.iter().max().unwrap() + 1 });
        }
        let inv: Vec<Check> = group.elements().iter().map(|g| check_invariance(chart, g).0).collect();
        let invariance = Check::from_failures(
            "invariance",
            format!("invariant under all {} elements", group.order()),
            inv.into_iter().filter(|c| !c.passed).map(|c| c.detail).collect(),
        );
        let act: Vec<Check> = chart.action.coords.iter().map(|&i| check_translation_invariance(chart, i)).collect();
        let surgery_compatible = act.iter().all(|c| c.passed);
        let action_invariance = Check::from_failures(
            "action-invariance",
            String::from("acting coordinates avoid the constrained planes"),
            act.into_iter().filter(|c| !c.passed).map(|c| c.detail).collect(),
        );
        let rule = rules.iter().find(|r| r.chart == chart.name);
        let covariance = check_covariance(chart, rule, group);
        let lf = check_locally_free(&chart.action, chart)?;
        let free_action = match chart.covering {
            Covering::Group => Some(check_free(&chart.region, group)),
            Covering::Trivial => None,
        };
        charts.push(ChartVerdict {
            name: chart.name.clone(),
            invariance,
            action_invariance,
            covariance,
            locally_free: lf.check,
            orbit_dimension: lf.orbit_dimension,
            surgery_compatible,
            free_action,
        });
    }

    // radii in the disjointness regime
    let bad_radius: Vec<String> = tubes
        .iter()
        .filter(|t| !eps_ok(&t.radius))
        .map(|t| format!("radius {} of {} not in (0, 1/100)", t.radius, t.name))
        .collect();
    let radius = Check::from_failures("radius", String::from("all radii in (0, 1/100)"), bad_radius);

    // pairwise disjoint tubes
    let mut overlap_failures = Vec::new();
    let mut pairs = 0;
    for (i, s) in tubes.iter().enumerate() {
        for t in &tubes[i..] {
            if s.plane != t.plane {
                overlap_failures.push(format!("{} and {} lie in different planes; disjointness not decided", s.name, t.name));
                continue;
            }
            let reach = &s.radius + &t.radius;
            let reach2 = &reach * &reach;
            for (a, p) in s.centers.iter().enumerate() {
                for (b, q) in t.centers.iter().enumerate() {
                    if core::ptr::eq(*s, *t) && b <= a {
                        continue;
                    }
                    pairs += 1;
                    if torus_dist2(p, q) <= reach2 {
                        overlap_failures.push(format!("centers {a} of {} and {b} of {} are too close", s.name, t.name));
                    }
                }
            }
        }
    }
    let disjointness = Check::from_failures("disjointness", format!("{pairs} center pairs separated by more than the summed radii"), overlap_failures);

    // cover: the complement chart removes exactly shrunken copies of atlas tubes
    let complements: Vec<(&Vec<TubeSet>, &Rat)> = atlas
        .iter()
        .filter_map(|c| match &c.region {
            Region::Complement { removed, shrink } => Some((removed, shrink)),
            _ => None,
        })
        .collect();
    let cover = if atlas.iter().any(|c| c.region == Region::Whole) {
        Check::pass("cover", String::from("a chart is the whole torus"))
    } else if complements.is_empty() {
        Check::fail("cover", String::from("no complement chart; tubes alone do not cover the torus"))
    } else {
        let mut failures = Vec::new();
        for (removed, shrink) in &complements {
            if !(!shrink.is_negative() && !shrink.is_zero() && **shrink < Rat::one()) {
                failures.push(format!("shrink factor {shrink} not in (0, 1)"));
            }
            for r in removed.iter() {
                if !tubes.iter().any(|t| *t == r) {
                    failures.push(format!("removed set {} is not an atlas chart", r.name));
                }
            }
        }
        Check::from_failures(
            "cover",
            String::from("torus minus the complement chart is the closed shrunken tubes, inside the open tubes"),
            failures,
        )
    };

    // (4): actions commute on the common covers of overlapping charts
    let mut comm_failures = Vec::new();
    let mut comm_count = 0;
    for (i, a) in atlas.iter().enumerate() {
        for b in &atlas[i + 1..] {
            let overlap = match (&a.region, &b.region) {
                (Region::Tubes(_), Region::Tubes(_)) => false,
                (Region::Tubes(t), Region::Complement { removed, .. }) | (Region::Complement { removed, .. }, Region::Tubes(t)) => {
                    removed.iter().any(|r| r == t)
                }
                _ => true,
            };
            if !overlap {
                continue;
            }
            let (ka, kb) = (a.action.rank(), b.action.rank());
            for ca in 0..a.region.component_count() {
                for cb in 0..b.region.component_count() {
                    let fa = a.action.formal(n, ca, 0, ka + kb, &[]);
                    let fb = b.action.formal(n, cb, ka, ka + kb, &[]);
                    comm_count += 1;
                    if !fa.compose(&fb).same_map(&fb.compose(&fa)) {
                        comm_failures.push(format!("{}[{ca}] and {}[{cb}] do not commute", a.name, b.name));
                    }
                }
            }
        }
    }
    let overlaps = Check::from_failures("overlaps", format!("{comm_count} overlap pairs commute"), comm_failures);

    let polarized = charts.iter().all(|c| c.locally_free.passed);
    let rank = charts.iter().map(|c| c.orbit_dimension).min().unwrap_or(0);
    let passed = charts.iter().all(ChartVerdict::passed)
        && radius.passed
        && disjointness.passed
        && cover.passed
        && overlaps.passed;
    Ok(FStructureVerdict {
        charts,
        radius,
        disjointness,
        cover,
        overlaps,
        polarized,
        rank,
        passed,
        min_vol_note: (passed && polarized).then_some(MIN_VOL_NOTE),
    })
}
