//! The `.spec` construction format.
//!
//! Line oriented: `key = value` pairs grouped into `[section]` blocks, `#`
//! starts a comment. Rationals are written `p/q` so that no generator ever
//! passes through a float.
//!
//! ```text
//! version = 1
//! dimension = 5
//!
//! [generator alpha]
//! signs = 1 -1 -1 -1 -1
//! translation = 0 0 0 1/2 0
//!
//! [gluing]
//! d = 10 20 40 80 160
//!
//! [tubes W^alpha]
//! plane = 2 3
//! centers = 0,0 1/2,0
//! radius = 1/200
//! acts = 1
//! signs = + -
//!
//! [complement V]
//! removes = W^alpha
//! shrink = 1/2
//! acts = 1 4 5
//! rule.alpha = + - -
//!
//! [expected]
//! orbits = 12
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use kummer_core::fstructure::{ChartSpec, CovarianceRule, Covering, Region, TorusActionSymbol, TubeSet};
use kummer_core::intmat::IntMatrix;
use kummer_core::lattice::AffineIsometry;
use kummer_core::Rat;

use crate::error::KummerError;

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.field, self.reason)
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub name: String,
    pub isometry: AffineIsometry,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluingSpec {
    pub d_values: Vec<f64>,
    pub grid: usize,
    /// Curvature tolerance for Ricci-flatness, symmetry residuals and
    /// cross-engine agreement.
    pub tolerance: f64,
    pub eh_radii: Vec<f64>,
    pub decay_radii: Vec<f64>,
    pub cross_radii: Vec<f64>,
}

impl Default for GluingSpec {
    fn default() -> Self {
        GluingSpec {
            d_values: vec![10.0, 20.0, 40.0, 80.0, 160.0],
            grid: 512,
            tolerance: 1e-6,
            eh_radii: vec![1.2, 2.0, 5.0, 20.0, 50.0],
            decay_radii: vec![10.0, 20.0, 40.0, 80.0, 160.0],
            cross_radii: vec![1.2, 2.0, 3.0, 5.0, 10.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasSpec {
    pub charts: Vec<ChartSpec>,
    pub rules: Vec<CovarianceRule>,
}

/// Values pinned by the spec author; each present field is compared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub fixed_circles: Option<Vec<(String, usize)>>,
    pub components: Option<usize>,
    pub orbits: Option<usize>,
    pub half_length_orbits: Option<usize>,
    pub spin: Option<String>,
    pub invariant_2forms: Option<Vec<String>>,
    pub b2: Option<usize>,
    pub euler: Option<i64>,
    pub polarized: Option<bool>,
    pub rank: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    pub name: String,
    pub version: u32,
    pub dimension: usize,
    pub generators: Vec<GeneratorSpec>,
    pub gluing: Option<GluingSpec>,
    pub atlas: Option<AtlasSpec>,
    pub expected: Option<Expected>,
    pub source: String,
}

impl ConstructionSpec {
    pub fn named_generators(&self) -> Vec<(String, AffineIsometry)> {
        self.generators.iter().map(|g| (g.name.clone(), g.isometry.clone())).collect()
    }
}

pub fn parse_construction(path: &Path) -> Result<ConstructionSpec, KummerError> {
    let text = std::fs::read_to_string(path).map_err(|e| KummerError::Io { path: path.display().to_string(), source: e })?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    parse_str(&text, &name).map_err(KummerError::Parse)
}

struct Entry {
    line: usize,
    key: String,
    value: String,
}

struct Section {
    line: usize,
    kind: String,
    label: String,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn field(&self, key: &str) -> String {
        if self.label.is_empty() {
            format!("{}.{key}", self.kind)
        } else {
            format!("{} {}.{key}", self.kind, self.label)
        }
    }
}

struct Parser {
    errors: Vec<ParseError>,
}

impl Parser {
    fn err(&mut self, line: usize, field: impl Into<String>, reason: impl Into<String>) {
        self.errors.push(ParseError { line, field: field.into(), reason: reason.into() });
    }

    fn require<'a>(&mut self, s: &'a Section, key: &str) -> Option<&'a Entry> {
        let e = s.get(key);
        if e.is_none() {
            self.err(s.line, s.field(key), "missing");
        }
        e
    }

    fn rat(&mut self, line: usize, field: &str, tok: &str) -> Option<Rat> {
        if let Some((_, den)) = tok.split_once('/') {
            if den.trim().starts_with('-') {
                self.err(line, field, format!("denominator of {tok} must be positive"));
                return None;
            }
        }
        match tok.parse::<Rat>() {
            Ok(r) => Some(r),
            Err(e) => {
                self.err(line, field, e.to_string());
                None
            }
        }
    }

    fn rats(&mut self, e: &Entry, field: &str) -> Option<Vec<Rat>> {
        let out: Vec<Option<Rat>> = e.value.split_whitespace().map(|t| self.rat(e.line, field, t)).collect();
        out.into_iter().collect()
    }

    fn parse_num<T: std::str::FromStr>(&mut self, line: usize, field: &str, tok: &str) -> Option<T> {
        let v = tok.parse::<T>().ok();
        if v.is_none() {
            self.err(line, field, format!("cannot parse {tok:?}"));
        }
        v
    }

    fn nums<T: std::str::FromStr>(&mut self, e: &Entry, field: &str) -> Option<Vec<T>> {
        let out: Vec<Option<T>> = e.value.split_whitespace().map(|t| self.parse_num(e.line, field, t)).collect();
        out.into_iter().collect()
    }

    fn signs(&mut self, e: &Entry, field: &str, width: usize) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        for tok in e.value.split_whitespace() {
            let row: Option<Vec<i64>> = tok
                .chars()
                .map(|c| match c {
                    '+' => Some(1),
                    '-' => Some(-1),
                    '0' => Some(0),
                    _ => None,
                })
                .collect();
            match row {
                Some(r) if r.len() == width => out.push(r),
                _ => {
                    self.err(e.line, field, format!("sign token {tok:?} must be {width} of '+', '-'"));
                    return None;
                }
            }
        }
        Some(out)
    }

    /// One-based coordinate list to zero-based indices.
    fn coords(&mut self, e: &Entry, field: &str, n: usize) -> Option<Vec<usize>> {
        let raw: Vec<usize> = self.nums(e, field)?;
        if raw.iter().any(|&i| i == 0 || i > n) {
            self.err(e.line, field, format!("coordinates must lie in 1..={n}"));
            return None;
        }
        Some(raw.into_iter().map(|i| i - 1).collect())
    }
}

fn split_sections(text: &str, p: &mut Parser) -> (Vec<Entry>, Vec<Section>) {
    let mut header = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(inner) = s.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                p.err(line, "section", "unterminated section header");
                continue;
            };
            let mut parts = inner.trim().splitn(2, char::is_whitespace);
            let kind = parts.next().unwrap_or("").to_string();
            let label = parts.next().unwrap_or("").trim().to_string();
            sections.push(Section { line, kind, label, entries: Vec::new() });
            continue;
        }
        let Some((k, v)) = s.split_once('=') else {
            p.err(line, "entry", format!("expected `key = value`, found {s:?}"));
            continue;
        };
        let entry = Entry { line, key: k.trim().to_string(), value: v.trim().to_string() };
        match sections.last_mut() {
            Some(sec) => {
                if sec.get(&entry.key).is_some() {
                    p.err(line, sec.field(&entry.key), "duplicate key");
                } else {
                    sec.entries.push(entry);
                }
            }
            None => header.push(entry),
        }
    }
    (header, sections)
}

/// Parses and validates a spec; all problems found are reported together.
pub fn parse_str(text: &str, name: &str) -> Result<ConstructionSpec, Vec<ParseError>> {
    let mut p = Parser { errors: Vec::new() };
    let (header, sections) = split_sections(text, &mut p);

    let head = |key: &str| header.iter().find(|e| e.key == key);
    let version = match head("version") {
        Some(e) => match e.value.parse::<u32>() {
            Ok(SPEC_VERSION) => SPEC_VERSION,
            _ => {
                p.err(e.line, "version", format!("unknown version {:?}; supported: {SPEC_VERSION}", e.value));
                SPEC_VERSION
            }
        },
        None => {
            p.err(1, "version", "missing");
            SPEC_VERSION
        }
    };
    let dimension = match head("dimension") {
        Some(e) => p.parse_num::<usize>(e.line, "dimension", &e.value).filter(|&n| n > 0 && n <= 16).unwrap_or_else(|| {
            p.err(e.line, "dimension", "must be an integer in 1..=16");
            0
        }),
        None => {
            p.err(1, "dimension", "missing");
            0
        }
    };
    for e in &header {
        if e.key != "version" && e.key != "dimension" {
            p.err(e.line, e.key.clone(), "unknown header key");
        }
    }
    if dimension == 0 {
        return Err(p.errors);
    }

    let mut generators = Vec::new();
    let mut gluing = None;
    let mut expected = None;
    let mut tube_sections = Vec::new();
    let mut other_charts = Vec::new();
    for s in &sections {
        match s.kind.as_str() {
            "generator" => {
                if let Some(g) = parse_generator(&mut p, s, dimension) {
                    if generators.iter().any(|o: &GeneratorSpec| o.name == g.name) {
                        p.err(s.line, "generator", format!("duplicate generator name {}", g.name));
                    }
                    generators.push(g);
                }
            }
            "gluing" => gluing = parse_gluing(&mut p, s),
            "expected" => expected = parse_expected(&mut p, s),
            "tubes" => tube_sections.push(s),
            "complement" | "whole" => other_charts.push(s),
            other => p.err(s.line, "section", format!("unknown section kind {other:?}")),
        }
    }
    if generators.is_empty() && p.errors.is_empty() {
        p.err(1, "generator", "at least one generator is required");
    }

    let atlas = if tube_sections.is_empty() && other_charts.is_empty() {
        None
    } else {
        parse_atlas(&mut p, &tube_sections, &other_charts, dimension, &generators)
    };

    if p.errors.is_empty() {
        Ok(ConstructionSpec {
            name: name.to_string(),
            version,
            dimension,
            generators,
            gluing,
            atlas,
            expected,
            source: text.to_string(),
        })
    } else {
        p.errors.sort_by_key(|e| e.line);
        Err(p.errors)
    }
}

fn parse_generator(p: &mut Parser, s: &Section, n: usize) -> Option<GeneratorSpec> {
    if s.label.is_empty() || s.label.contains(char::is_whitespace) {
        p.err(s.line, "generator", "a generator needs a single-word name");
        return None;
    }
    let mut m = IntMatrix::zeros(n, n);
    match (s.get("signs"), s.entries.iter().any(|e| e.key.starts_with("row"))) {
        (Some(e), false) => {
            let signs: Vec<i64> = p.nums(e, &s.field("signs"))?;
            if signs.len() != n {
                p.err(e.line, s.field("signs"), format!("expected {n} entries, found {}", signs.len()));
                return None;
            }
            for (i, v) in signs.into_iter().enumerate() {
                m[(i, i)] = v;
            }
        }
        (None, true) => {
            for i in 0..n {
                let key = format!("row{}", i + 1);
                let e = p.require(s, &key)?;
                let row: Vec<i64> = p.nums(e, &s.field(&key))?;
                if row.len() != n {
                    p.err(e.line, s.field(&key), format!("expected {n} entries, found {}", row.len()));
                    return None;
                }
                for (j, v) in row.into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
        }
        (Some(e), true) => {
            p.err(e.line, s.field("signs"), "give either `signs` or `row1..rowN`, not both");
            return None;
        }
        (None, false) => {
            p.err(s.line, s.field("signs"), "missing linear part (`signs` or `row1..rowN`)");
            return None;
        }
    }
    let t = match s.get("translation") {
        Some(e) => {
            let t = p.rats(e, &s.field("translation"))?;
            if t.len() != n {
                p.err(e.line, s.field("translation"), format!("expected {n} entries, found {}", t.len()));
                return None;
            }
            t
        }
        None => vec![Rat::zero(); n],
    };
    match AffineIsometry::new(m, t) {
        Ok(isometry) => Some(GeneratorSpec { name: s.label.clone(), isometry, line: s.line }),
        Err(e) => {
            p.err(s.line, format!("generator {}", s.label), e.to_string());
            None
        }
    }
}

fn parse_gluing(p: &mut Parser, s: &Section) -> Option<GluingSpec> {
    let mut g = GluingSpec::default();
    for e in &s.entries {
        let field = s.field(&e.key);
        match e.key.as_str() {
            "d" => g.d_values = p.nums(e, &field)?,
            "grid" => g.grid = p.parse_num(e.line, &field, &e.value)?,
            "tolerance" => g.tolerance = p.parse_num(e.line, &field, &e.value)?,
            "eh_radii" => g.eh_radii = p.nums(e, &field)?,
            "decay_radii" => g.decay_radii = p.nums(e, &field)?,
            "cross_radii" => g.cross_radii = p.nums(e, &field)?,
            _ => p.err(e.line, field, "unknown key"),
        }
    }
    if g.d_values.len() < 4 || g.d_values.iter().any(|&d| !(d >= 4.0)) {
        p.err(s.line, s.field("d"), "need at least 4 gluing scales, each >= 4");
    }
    if g.grid < 8 {
        p.err(s.line, s.field("grid"), "grid density must be at least 8");
    }
    if !(g.tolerance > 0.0) {
        p.err(s.line, s.field("tolerance"), "must be positive");
    }
    if g.decay_radii.len() < 4 {
        p.err(s.line, s.field("decay_radii"), "need at least 4 radii");
    }
    for (key, radii) in [("eh_radii", &g.eh_radii), ("decay_radii", &g.decay_radii), ("cross_radii", &g.cross_radii)] {
        if radii.iter().any(|&r| !(r > 1.0)) {
            p.err(s.line, s.field(key), "radii must exceed 1");
        }
    }
    Some(g)
}

fn parse_expected(p: &mut Parser, s: &Section) -> Option<Expected> {
    let mut x = Expected::default();
    for e in &s.entries {
        let field = s.field(&e.key);
        match e.key.as_str() {
            "fixed_circles" => {
                let mut v = Vec::new();
                for tok in e.value.split_whitespace() {
                    let Some((name, count)) = tok.split_once(':') else {
                        p.err(e.line, &field, format!("expected name:count, found {tok:?}"));
                        continue;
                    };
                    if let Some(c) = p.parse_num(e.line, &field, count) {
                        v.push((name.to_string(), c));
                    }
                }
                x.fixed_circles = Some(v);
            }
            "components" => x.components = p.parse_num(e.line, &field, &e.value),
            "orbits" => x.orbits = p.parse_num(e.line, &field, &e.value),
            "half_length_orbits" => x.half_length_orbits = p.parse_num(e.line, &field, &e.value),
            "b2" => x.b2 = p.parse_num(e.line, &field, &e.value),
            "euler" => x.euler = p.parse_num(e.line, &field, &e.value),
            "rank" => x.rank = p.parse_num(e.line, &field, &e.value),
            "polarized" => x.polarized = p.parse_num(e.line, &field, &e.value),
            "spin" => match e.value.to_ascii_lowercase().as_str() {
                v @ ("obstructed" | "liftable") => x.spin = Some(v.to_string()),
                _ => p.err(e.line, field, "expected `obstructed` or `liftable`"),
            },
            "invariant_2forms" => {
                x.invariant_2forms = Some(e.value.split_whitespace().map(|t| t.replace('^', "∧")).collect())
            }
            _ => p.err(e.line, field, "unknown key"),
        }
    }
    Some(x)
}

fn parse_tubes(p: &mut Parser, s: &Section, n: usize) -> Option<TubeSet> {
    let plane_e = p.require(s, "plane")?;
    let plane = p.coords(plane_e, &s.field("plane"), n)?;
    if plane.len() != 2 || plane[0] == plane[1] {
        p.err(plane_e.line, s.field("plane"), "a plane is two distinct coordinates");
        return None;
    }
    let centers_e = p.require(s, "centers")?;
    let mut centers = Vec::new();
    for tok in centers_e.value.split_whitespace() {
        let Some((a, b)) = tok.split_once(',') else {
            p.err(centers_e.line, s.field("centers"), format!("center {tok:?} must be `a,b`"));
            return None;
        };
        centers.push((p.rat(centers_e.line, &s.field("centers"), a)?, p.rat(centers_e.line, &s.field("centers"), b)?));
    }
    if centers.is_empty() {
        p.err(centers_e.line, s.field("centers"), "no centers");
        return None;
    }
    let radius_e = p.require(s, "radius")?;
    let radius = p.rat(radius_e.line, &s.field("radius"), &radius_e.value)?;
    Some(TubeSet { name: s.label.clone(), plane: (plane[0], plane[1]), centers, radius })
}

fn parse_action(p: &mut Parser, s: &Section, n: usize, components: usize) -> Option<TorusActionSymbol> {
    let acts_e = p.require(s, "acts")?;
    let coords = p.coords(acts_e, &s.field("acts"), n)?;
    let signs = match s.get("signs") {
        Some(e) => {
            let rows = p.signs(e, &s.field("signs"), coords.len())?;
            if rows.len() != components {
                p.err(e.line, s.field("signs"), format!("expected {components} sign tokens, found {}", rows.len()));
                return None;
            }
            rows
        }
        None => vec![vec![1; coords.len()]; components],
    };
    Some(TorusActionSymbol { coords, signs })
}

fn parse_atlas(
    p: &mut Parser,
    tubes: &[&Section],
    others: &[&Section],
    n: usize,
    generators: &[GeneratorSpec],
) -> Option<AtlasSpec> {
    let mut charts = Vec::new();
    let mut rules = Vec::new();
    let mut by_name: BTreeMap<String, TubeSet> = BTreeMap::new();
    let mut ok = true;
    for s in tubes.iter().chain(others) {
        if s.label.is_empty() {
            p.err(s.line, s.kind.clone(), "a chart needs a name");
            ok = false;
            continue;
        }
        if charts.iter().any(|c: &ChartSpec| c.name == s.label) {
            p.err(s.line, s.kind.clone(), format!("duplicate chart name {}", s.label));
        }
        let region = match s.kind.as_str() {
            "tubes" => match parse_tubes(p, s, n) {
                Some(t) => {
                    by_name.insert(s.label.clone(), t.clone());
                    Region::Tubes(t)
                }
                None => {
                    ok = false;
                    continue;
                }
            },
            "complement" => {
                let Some(rem) = p.require(s, "removes") else {
                    ok = false;
                    continue;
                };
                let mut removed = Vec::new();
                for name in rem.value.split_whitespace() {
                    match by_name.get(name) {
                        Some(t) => removed.push(t.clone()),
                        None => {
                            p.err(rem.line, s.field("removes"), format!("no tubes chart named {name:?}"));
                            ok = false;
                        }
                    }
                }
                let shrink = match s.get("shrink") {
                    Some(e) => p.rat(e.line, &s.field("shrink"), &e.value),
                    None => Some(Rat::half()),
                };
                let Some(shrink) = shrink else {
                    ok = false;
                    continue;
                };
                Region::Complement { removed, shrink }
            }
            _ => Region::Whole,
        };
        let Some(action) = parse_action(p, s, n, region.component_count()) else {
            ok = false;
            continue;
        };
        let rule_entries: Vec<&Entry> = s.entries.iter().filter(|e| e.key.starts_with("rule.")).collect();
        let covering = match s.get("covering").map(|e| (e.line, e.value.as_str())) {
            Some((_, "trivial")) => Covering::Trivial,
            Some((_, "group")) => Covering::Group,
            Some((line, v)) => {
                p.err(line, s.field("covering"), format!("expected `trivial` or `group`, found {v:?}"));
                ok = false;
                continue;
            }
            None if !rule_entries.is_empty() || s.kind == "complement" => Covering::Group,
            None => Covering::Trivial,
        };
        if !rule_entries.is_empty() {
            let mut generator_signs = Vec::new();
            for e in rule_entries {
                let gname = &e.key["rule.".len()..];
                if !generators.iter().any(|g| g.name == gname) {
                    p.err(e.line, s.field(&e.key), format!("unknown generator {gname:?}"));
                    ok = false;
                    continue;
                }
                let row = p.signs(e, &s.field(&e.key), 1).map(|r| r.into_iter().map(|v| v[0]).collect::<Vec<_>>());
                match row {
                    Some(r) if r.len() == action.rank() => generator_signs.push((gname.to_string(), r)),
                    Some(r) => {
                        p.err(e.line, s.field(&e.key), format!("expected {} signs, found {}", action.rank(), r.len()));
                        ok = false;
                    }
                    None => ok = false,
                }
            }
            rules.push(CovarianceRule { chart: s.label.clone(), generator_signs });
        }
        for e in &s.entries {
            let known = ["plane", "centers", "radius", "acts", "signs", "removes", "shrink", "covering"];
            if !known.contains(&e.key.as_str()) && !e.key.starts_with("rule.") {
                p.err(e.line, s.field(&e.key), "unknown key");
            }
        }
        charts.push(ChartSpec { name: s.label.clone(), region, covering, action });
    }
    ok.then_some(AtlasSpec { charts, rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_signs_agree() {
        let a = "version = 1\ndimension = 2\n[generator r]\nsigns = -1 -1\ntranslation = 1/2 2/4\n";
        let b = "version = 1\ndimension = 2\n[generator r]\nrow1 = -1 0\nrow2 = 0 -1\ntranslation = 1/2 1/2\n";
        let a = parse_str(a, "a").unwrap();
        let b = parse_str(b, "b").unwrap();
        assert_eq!(a.generators[0].isometry, b.generators[0].isometry);
    }

    #[test]
    fn errors_carry_line_and_field() {
        let text = "version = 1\ndimension = 2\n[generator r]\nsigns = 1 -1\ntranslation = 1/-2 0\n";
        let errs = parse_str(text, "x").unwrap_err();
        assert_eq!(errs[0].line, 5);
        assert_eq!(errs[0].field, "generator r.translation");
        assert!(errs[0].reason.contains("positive"));
    }
}
