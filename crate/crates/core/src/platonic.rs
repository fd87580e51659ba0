//! Midsphere-normalized Platonic solids, the proper rotation groups of the
//! three dual pairs, and the orbits of edge pairs under those groups.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::geom::{line_distance, Rotation, TangentLine, Vec3};
use crate::{Error, Result};

/// Tolerance used when matching points produced by group elements.
pub const MATCH_EPS: f64 = 1e-9;

const GROUP_SIZE_CAP: usize = 200;

pub(crate) fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// One of the three dual pairs of Platonic solids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    /// tetrahedron / tetrahedron
    Tetrahedral,
    /// octahedron / cube
    Octahedral,
    /// icosahedron / dodecahedron
    Icosahedral,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [
        PairKind::Tetrahedral,
        PairKind::Octahedral,
        PairKind::Icosahedral,
    ];

    pub fn edge_count(self) -> usize {
        match self {
            PairKind::Tetrahedral => 6,
            PairKind::Octahedral => 12,
            PairKind::Icosahedral => 30,
        }
    }

    pub fn group_order(self) -> usize {
        match self {
            PairKind::Tetrahedral => 12,
            PairKind::Octahedral => 24,
            PairKind::Icosahedral => 60,
        }
    }

    /// The solid whose edges are the lines at δ = 0.
    pub fn base_solid(self) -> SolidKind {
        match self {
            PairKind::Tetrahedral => SolidKind::Tetrahedron,
            PairKind::Octahedral => SolidKind::Octahedron,
            PairKind::Icosahedral => SolidKind::Icosahedron,
        }
    }

    /// The solid whose edges are the lines at δ = π/2.
    pub fn dual_solid(self) -> SolidKind {
        match self {
            PairKind::Tetrahedral => SolidKind::DualTetrahedron,
            PairKind::Octahedral => SolidKind::Cube,
            PairKind::Icosahedral => SolidKind::Dodecahedron,
        }
    }

    /// Number of pairwise distance classes is 3t - 1 for this t.
    pub fn t(self) -> usize {
        match self {
            PairKind::Tetrahedral => 1,
            PairKind::Octahedral => 2,
            PairKind::Icosahedral => 4,
        }
    }

    pub fn letter(self) -> char {
        match self {
            PairKind::Tetrahedral => 'T',
            PairKind::Octahedral => 'O',
            PairKind::Icosahedral => 'I',
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t" | "tetrahedral" | "tetrahedron" => Ok(PairKind::Tetrahedral),
            "o" | "octahedral" | "octahedron" => Ok(PairKind::Octahedral),
            "i" | "icosahedral" | "icosahedron" => Ok(PairKind::Icosahedral),
            other => Err(Error::Domain(format!(
                "unknown pair '{other}' (expected T, O or I)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolidKind {
    Tetrahedron,
    /// The tetrahedron with negated vertices; dual of [`SolidKind::Tetrahedron`]
    /// with the same midsphere.
    DualTetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl SolidKind {
    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Tetrahedron => "tetrahedron",
            SolidKind::DualTetrahedron => "dual-tetrahedron",
            SolidKind::Octahedron => "octahedron",
            SolidKind::Cube => "cube",
            SolidKind::Icosahedron => "icosahedron",
            SolidKind::Dodecahedron => "dodecahedron",
        }
    }

    pub fn vertex_degree(self) -> usize {
        match self {
            SolidKind::Octahedron => 4,
            SolidKind::Icosahedron => 5,
            _ => 3,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            SolidKind::Tetrahedron | SolidKind::DualTetrahedron => 6,
            SolidKind::Octahedron | SolidKind::Cube => 12,
            SolidKind::Icosahedron | SolidKind::Dodecahedron => 30,
        }
    }
}

impl FromStr for SolidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tetrahedron" => Ok(SolidKind::Tetrahedron),
            "dual-tetrahedron" => Ok(SolidKind::DualTetrahedron),
            "octahedron" => Ok(SolidKind::Octahedron),
            "cube" => Ok(SolidKind::Cube),
            "icosahedron" => Ok(SolidKind::Icosahedron),
            "dodecahedron" => Ok(SolidKind::Dodecahedron),
            other => Err(Error::Domain(format!("unknown solid '{other}'"))),
        }
    }
}

/// A Platonic solid scaled so that its midsphere is the unit sphere.
#[derive(Debug, Clone)]
pub struct Solid {
    pub kind: SolidKind,
    pub vertices: Vec<Vec3>,
    /// Vertex index pairs `(i, j)` with `i < j`, sorted lexicographically.
    pub edges: Vec<(usize, usize)>,
    pub vertex_degree: usize,
    /// Circumradius; distance from the centre to every vertex.
    pub h: f64,
}

fn signed_perms(base: &[[f64; 3]], cyclic: bool) -> Vec<Vec3> {
    let mut out = Vec::new();
    for b in base {
        let rots: Vec<[f64; 3]> = if cyclic {
            vec![[b[0], b[1], b[2]], [b[1], b[2], b[0]], [b[2], b[0], b[1]]]
        } else {
            vec![*b]
        };
        for r in rots {
            for sx in [1.0, -1.0] {
                for sy in [1.0, -1.0] {
                    for sz in [1.0, -1.0] {
                        let v = Vec3::new(r[0] * sx, r[1] * sy, r[2] * sz);
                        if !out.iter().any(|w: &Vec3| w.distance(v) < MATCH_EPS) {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    out
}

fn raw_vertices(kind: SolidKind) -> Vec<Vec3> {
    let tau = golden_ratio();
    match kind {
        SolidKind::Tetrahedron => vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ],
        SolidKind::DualTetrahedron => raw_vertices(SolidKind::Tetrahedron)
            .into_iter()
            .map(|v| -v)
            .collect(),
        SolidKind::Octahedron => signed_perms(&[[1.0, 0.0, 0.0]], true),
        SolidKind::Cube => signed_perms(&[[1.0, 1.0, 1.0]], false),
        SolidKind::Icosahedron => signed_perms(&[[0.0, 1.0, tau]], true),
        // Face centres of the icosahedron above, so that the two are dual in
        // this orientation.
        SolidKind::Dodecahedron => {
            let mut v = signed_perms(&[[1.0, 1.0, 1.0]], false);
            v.extend(signed_perms(&[[0.0, tau, 1.0 / tau]], true));
            v
        }
    }
}

/// Builds the named solid with unit midradius. Vertices are sorted by
/// coordinates, edges lexicographically by vertex index.
pub fn build_solid(kind: SolidKind) -> Solid {
    let mut vertices = raw_vertices(kind);
    vertices.sort_by(|a, b| a.cmp_approx(*b, MATCH_EPS));

    let n = vertices.len();
    let mut min_d = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_d = min_d.min(vertices[i].distance(vertices[j]));
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (vertices[i].distance(vertices[j]) - min_d).abs() < MATCH_EPS * min_d.max(1.0) {
                edges.push((i, j));
            }
        }
    }
    debug_assert_eq!(edges.len(), kind.edge_count());

    let (a, b) = edges[0];
    let midradius = ((vertices[a] + vertices[b]) * 0.5).norm();
    for v in &mut vertices {
        *v = *v / midradius;
    }
    let h = vertices[0].norm();
    Solid {
        kind,
        vertices,
        edges,
        vertex_degree: kind.vertex_degree(),
        h,
    }
}

impl Solid {
    pub fn edge_midpoint(&self, e: usize) -> Vec3 {
        let (a, b) = self.edges[e];
        (self.vertices[a] + self.vertices[b]) * 0.5
    }

    pub fn edge_vector(&self, e: usize) -> Vec3 {
        let (a, b) = self.edges[e];
        self.vertices[b] - self.vertices[a]
    }

    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the edge whose midpoint is `p`, if exactly one matches.
    pub fn edge_at_midpoint(&self, p: Vec3) -> Option<usize> {
        let mut found = None;
        for e in 0..self.edges.len() {
            if self.edge_midpoint(e).distance(p) < MATCH_EPS {
                if found.is_some() {
                    return None;
                }
                found = Some(e);
            }
        }
        found
    }

    /// Where each edge goes under `r`, matched through edge midpoints.
    pub fn edge_permutation(&self, r: &Rotation) -> Result<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.edges.len());
        for e in 0..self.edges.len() {
            let image = r.apply(self.edge_midpoint(e));
            let target = self.edge_at_midpoint(image).ok_or_else(|| {
                Error::Internal(format!(
                    "edge {e} of the {} has no unique image under the rotation",
                    self.kind.name()
                ))
            })?;
            perm.push(target);
        }
        Ok(perm)
    }
}

/// One tangent line per edge, in edge order: it touches the unit sphere at
/// the edge midpoint and runs along the edge.
pub fn edge_tangent_lines(s: &Solid) -> Vec<TangentLine> {
    (0..s.edges.len())
        .map(|e| {
            let m = s.edge_midpoint(e);
            let d = s.edge_vector(e).normalized();
            TangentLine::new_unchecked(m.normalized(), d)
        })
        .collect()
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Pairs of edges at a common vertex that the vertex rotation by 2π/k takes
/// one into the other. Sorted, each pair `(i, j)` with `i < j`.
pub fn neighboring_pairs(s: &Solid) -> Result<Vec<(usize, usize)>> {
    let mut pairs = BTreeSet::new();
    for (v, &p) in s.vertices.iter().enumerate() {
        let r = Rotation::about_unit_axis(p.normalized(), 2.0 * PI / s.vertex_degree as f64);
        let perm = s.edge_permutation(&r)?;
        for e in s.edges_at(v) {
            pairs.insert(ordered(e, perm[e]));
        }
    }
    Ok(pairs.into_iter().collect())
}

/// Finite group of proper rotations.
#[derive(Debug, Clone)]
pub struct RotationGroup {
    pub elements: Vec<Rotation>,
}

impl RotationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, r: &Rotation) -> bool {
        self.elements.iter().any(|g| g.max_abs_diff(r) < MATCH_EPS)
    }

    /// Closure of `generators` under composition.
    pub fn generate(generators: &[Rotation]) -> Result<RotationGroup> {
        let mut elements = vec![Rotation::IDENTITY];
        let mut frontier = vec![Rotation::IDENTITY];
        while let Some(g) = frontier.pop() {
            for h in generators {
                let p = h.compose(&g);
                if !elements.iter().any(|e| e.max_abs_diff(&p) < MATCH_EPS) {
                    if elements.len() >= GROUP_SIZE_CAP {
                        return Err(Error::Internal(format!(
                            "group closure exceeded {GROUP_SIZE_CAP} elements"
                        )));
                    }
                    elements.push(p);
                    frontier.push(p);
                }
            }
        }
        Ok(RotationGroup { elements })
    }
}

/// Proper symmetry group of the pair, generated by the vertex rotation at
/// vertex 0 of the base solid and the half-turn about one of its edges.
pub fn rotation_group(pair: PairKind) -> Result<RotationGroup> {
    let s = build_solid(pair.base_solid());
    let v = s.vertices[0].normalized();
    let vertex_turn = Rotation::about_unit_axis(v, 2.0 * PI / s.vertex_degree as f64);
    let e = s.edges_at(0)[0];
    let edge_turn = Rotation::about_unit_axis(s.edge_midpoint(e).normalized(), PI);
    let group = RotationGroup::generate(&[vertex_turn, edge_turn])?;
    if group.order() != pair.group_order() {
        return Err(Error::Internal(format!(
            "group of pair {pair} closed at order {}, expected {}",
            group.order(),
            pair.group_order()
        )));
    }
    Ok(group)
}

/// Orbit of unordered edge pairs under the rotation group.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub label: usize,
    /// Lexicographically smallest member.
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub pair: PairKind,
    pub orbits: Vec<Orbit>,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn total_pairs(&self) -> usize {
        self.orbits.iter().map(Orbit::size).sum()
    }

    pub fn get(&self, label: usize) -> Result<&Orbit> {
        self.orbits
            .get(label)
            .ok_or_else(|| Error::Domain(format!("pair {} has no orbit {label}", self.pair)))
    }

    /// Label of the orbit containing the given pair of edges.
    pub fn label_of(&self, a: usize, b: usize) -> Option<usize> {
        let key = ordered(a, b);
        self.orbits
            .iter()
            .find(|o| o.members.binary_search(&key).is_ok())
            .map(|o| o.label)
    }

    /// The orbit of pairs of opposite edges (antipodal midpoints).
    pub fn opposite_orbit(&self) -> usize {
        let s = build_solid(self.pair.base_solid());
        self.orbits
            .iter()
            .find(|o| {
                let (a, b) = o.representative;
                (s.edge_midpoint(a) + s.edge_midpoint(b)).norm() < MATCH_EPS
            })
            .map(|o| o.label)
            .expect("every pair kind has opposite edges")
    }

    /// The orbit made of neighboring edge pairs.
    pub fn neighboring_orbit(&self) -> usize {
        let s = build_solid(self.pair.base_solid());
        let pairs = neighboring_pairs(&s).expect("base solid is symmetric");
        let (a, b) = pairs[0];
        self.label_of(a, b).expect("orbits cover every pair")
    }
}

/// Partition of all unordered pairs of distinct edges of the base solid into
/// orbits of the rotation group. Labels are ordered by orbit size, then by
/// the representative's line distance at δ = 0.1 (δ = 0.7 breaks ties).
pub fn edge_pair_orbits(pair: PairKind) -> Result<OrbitTable> {
    let solid = build_solid(pair.base_solid());
    let group = rotation_group(pair)?;
    let perms = group
        .elements
        .iter()
        .map(|r| solid.edge_permutation(r))
        .collect::<Result<Vec<_>>>()?;

    let n = solid.edges.len();
    let mut seen = vec![vec![false; n]; n];
    let mut raw: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if seen[a][b] {
                continue;
            }
            let mut members = BTreeSet::new();
            for p in &perms {
                let (x, y) = ordered(p[a], p[b]);
                seen[x][y] = true;
                members.insert((x, y));
            }
            raw.push(members.into_iter().collect());
        }
    }

    let lines = edge_tangent_lines(&solid);
    let dist_at = |(a, b): (usize, usize), delta: f64| {
        line_distance(&lines[a].rotated(delta), &lines[b].rotated(delta))
    };
    let key = |m: &Vec<(usize, usize)>| (m.len(), dist_at(m[0], 0.1), dist_at(m[0], 0.7), m[0]);
    raw.sort_by(|x, y| {
        let (kx, ky) = (key(x), key(y));
        kx.0.cmp(&ky.0)
            .then(cmp_f64(kx.1, ky.1))
            .then(cmp_f64(kx.2, ky.2))
            .then(kx.3.cmp(&ky.3))
    });

    let orbits = raw
        .into_iter()
        .enumerate()
        .map(|(label, members)| Orbit {
            label,
            representative: members[0],
            members,
        })
        .collect();
    Ok(OrbitTable { pair, orbits })
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    if (a - b).abs() < MATCH_EPS {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL_SOLIDS: [SolidKind; 6] = [
        SolidKind::Tetrahedron,
        SolidKind::DualTetrahedron,
        SolidKind::Octahedron,
        SolidKind::Cube,
        SolidKind::Icosahedron,
        SolidKind::Dodecahedron,
    ];

    #[test]
    fn circumradii_match_closed_forms() {
        let tau = golden_ratio();
        let cases = [
            (SolidKind::Tetrahedron, 3f64.sqrt()),
            (SolidKind::Octahedron, 2f64.sqrt()),
            (SolidKind::Cube, 1.5f64.sqrt()),
            (SolidKind::Icosahedron, 5f64.powf(0.25) / tau.sqrt()),
            (SolidKind::Dodecahedron, 3f64.sqrt() / tau),
        ];
        for (kind, h) in cases {
            let s = build_solid(kind);
            assert!((s.h - h).abs() < 1e-12, "{}: {} vs {}", kind.name(), s.h, h);
        }
    }

    #[test]
    fn solids_are_midsphere_normalized() {
        for kind in ALL_SOLIDS {
            let s = build_solid(kind);
            assert_eq!(s.edges.len(), kind.edge_count());
            for e in 0..s.edges.len() {
                assert!((s.edge_midpoint(e).norm() - 1.0).abs() < 1e-12);
            }
            for v in &s.vertices {
                assert!((v.norm() - s.h).abs() < 1e-12);
            }
            for v in 0..s.vertices.len() {
                assert_eq!(s.edges_at(v).len(), s.vertex_degree);
            }
            let mut sorted = s.edges.clone();
            sorted.sort();
            assert_eq!(sorted, s.edges);
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(rotation_group(PairKind::Tetrahedral).unwrap().order(), 12);
        assert_eq!(rotation_group(PairKind::Octahedral).unwrap().order(), 24);
        assert_eq!(rotation_group(PairKind::Icosahedral).unwrap().order(), 60);
    }

    #[test]
    fn group_closure_cap() {
        // An irrational angle never closes.
        let r = Rotation::about_unit_axis(Vec3::Z, 1.0);
        assert!(matches!(
            RotationGroup::generate(&[r]),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn groups_preserve_both_solids_of_the_pair() {
        for pair in PairKind::ALL {
            let g = rotation_group(pair).unwrap();
            for kind in [pair.base_solid(), pair.dual_solid()] {
                let s = build_solid(kind);
                for r in &g.elements {
                    let perm = s.edge_permutation(r).unwrap();
                    let mut sorted = perm.clone();
                    sorted.sort();
                    assert_eq!(sorted, (0..s.edges.len()).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn tetrahedron_lines_touch_at_octahedron_vertices() {
        let s = build_solid(SolidKind::Tetrahedron);
        let lines = edge_tangent_lines(&s);
        assert_eq!(lines.len(), 6);
        for l in &lines {
            l.validate().unwrap();
            let t = l.tangency();
            let on_axis = [t.x, t.y, t.z]
                .iter()
                .filter(|c| (c.abs() - 1.0).abs() < 1e-12)
                .count();
            assert_eq!(on_axis, 1);
        }
    }

    #[test]
    fn icosahedron_tangency_points_distinct() {
        let lines = edge_tangent_lines(&build_solid(SolidKind::Icosahedron));
        assert_eq!(lines.len(), 30);
        for i in 0..30 {
            lines[i].validate().unwrap();
            for j in i + 1..30 {
                assert!(lines[i].tangency().distance(lines[j].tangency()) > 1e-3);
            }
        }
    }

    /// Oracle: at each vertex, the edge pairs spanning the smallest angle.
    fn neighbors_by_angle(s: &Solid) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for v in 0..s.vertices.len() {
            let star = s.edges_at(v);
            let dir = |e: usize| {
                let (a, b) = s.edges[e];
                let other = if a == v { b } else { a };
                (s.vertices[other] - s.vertices[v]).normalized()
            };
            let mut best = f64::INFINITY;
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    best = best.min(dir(a).dot(dir(b)).acos());
                }
            }
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    if (dir(a).dot(dir(b)).acos() - best).abs() < 1e-9 {
                        out.insert(ordered(a, b));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn neighboring_pairs_match_vertex_star_enumeration() {
        for (kind, count) in [
            (SolidKind::Tetrahedron, 12),
            (SolidKind::Octahedron, 24),
            (SolidKind::Cube, 24),
            (SolidKind::Icosahedron, 60),
            (SolidKind::Dodecahedron, 60),
        ] {
            let s = build_solid(kind);
            let pairs = neighboring_pairs(&s).unwrap();
            assert_eq!(pairs.len(), count, "{}", kind.name());
            let oracle: Vec<_> = neighbors_by_angle(&s).into_iter().collect();
            assert_eq!(pairs, oracle, "{}", kind.name());
        }
    }

    #[test]
    fn neighboring_pairs_survive_duality() {
        for pair in [PairKind::Octahedral, PairKind::Icosahedral] {
            let base = build_solid(pair.base_solid());
            let dual = build_solid(pair.dual_solid());
            let to_base = |e: usize| base.edge_at_midpoint(dual.edge_midpoint(e)).unwrap();
            let mapped: BTreeSet<_> = neighboring_pairs(&dual)
                .unwrap()
                .into_iter()
                .map(|(a, b)| ordered(to_base(a), to_base(b)))
                .collect();
            let expected: BTreeSet<_> = neighboring_pairs(&base).unwrap().into_iter().collect();
            assert_eq!(mapped, expected);
        }
    }

    #[test]
    fn orbit_counts_and_totals() {
        for (pair, count, total) in [
            (PairKind::Tetrahedral, 2, 15),
            (PairKind::Octahedral, 5, 66),
            (PairKind::Icosahedral, 11, 435),
        ] {
            let t = edge_pair_orbits(pair).unwrap();
            assert_eq!(t.len(), count);
            assert_eq!(t.len(), 3 * pair.t() - 1);
            assert_eq!(t.total_pairs(), total);
            for (i, o) in t.orbits.iter().enumerate() {
                assert_eq!(o.label, i);
                assert_eq!(o.representative, o.members[0]);
            }
        }
    }

    #[test]
    fn tetrahedral_orbit_sizes() {
        let t = edge_pair_orbits(PairKind::Tetrahedral).unwrap();
        let sizes: Vec<_> = t.orbits.iter().map(Orbit::size).collect();
        assert_eq!(sizes, vec![3, 12]);
        assert_eq!(t.opposite_orbit(), 0);
        assert_eq!(t.neighboring_orbit(), 1);
    }

    #[test]
    fn neighboring_pairs_form_one_orbit() {
        for pair in PairKind::ALL {
            let t = edge_pair_orbits(pair).unwrap();
            let s = build_solid(pair.base_solid());
            let pairs = neighboring_pairs(&s).unwrap();
            let label = t.neighboring_orbit();
            assert_eq!(t.orbits[label].members, pairs);
        }
    }

    #[test]
    fn orbits_are_distance_classes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for pair in PairKind::ALL {
            let t = edge_pair_orbits(pair).unwrap();
            let lines = edge_tangent_lines(&build_solid(pair.base_solid()));
            for _ in 0..20 {
                let delta: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
                let rot: Vec<_> = lines.iter().map(|l| l.rotated(delta)).collect();
                for o in &t.orbits {
                    let (a, b) = o.representative;
                    let d0 = line_distance(&rot[a], &rot[b]);
                    for &(x, y) in &o.members {
                        assert!((line_distance(&rot[x], &rot[y]) - d0).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn pair_kind_parsing() {
        assert_eq!("O".parse::<PairKind>().unwrap(), PairKind::Octahedral);
        assert_eq!("i".parse::<PairKind>().unwrap(), PairKind::Icosahedral);
        assert!("X".parse::<PairKind>().is_err());
    }
}
