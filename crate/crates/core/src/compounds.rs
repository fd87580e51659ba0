//! Figures formed by the tangent lines at the zeros of the minimum-distance
//! curve, where some lines meet.
//!
//! At each such angle the intersecting lines fall into congruent groups: four
//! or ten triangles, five tetrahedron one-skeletons, or six pentagrams. Every
//! line carries exactly one edge of one figure, running between the two
//! extreme intersection points on it.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use crate::geom::{closest_points, line_distance, TangentLine, Vec3};
use crate::platonic::{rotation_group, PairKind};
use crate::rotation::DeltaConfiguration;
use crate::{Error, Result};

/// Lines closer than this intersect.
pub const INTERSECTION_EPS: f64 = 1e-9;
/// Points closer than this are the same vertex.
pub const VERTEX_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub a: usize,
    pub b: usize,
    /// Midpoint of the shortest segment between the two lines.
    pub point: Vec3,
}

/// All pairs of lines closer than `tol`, with their common point. Parallel
/// pairs never count: they meet at no finite point.
pub fn intersection_graph(lines: &[TangentLine], tol: f64) -> Vec<Intersection> {
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if line_distance(&lines[i], &lines[j]) >= tol {
                continue;
            }
            if let Some((point, _, _)) = closest_points(&lines[i], &lines[j]) {
                out.push(Intersection { a: i, b: j, point });
            }
        }
    }
    out
}

/// Number of intersections each line takes part in.
pub fn intersection_degrees(n_lines: usize, graph: &[Intersection]) -> Vec<usize> {
    let mut deg = vec![0; n_lines];
    for x in graph {
        deg[x.a] += 1;
        deg[x.b] += 1;
    }
    deg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentType {
    Triangle,
    TetrahedronSkeleton,
    PentagonalStar,
}

impl ComponentType {
    pub fn name(self) -> &'static str {
        match self {
            ComponentType::Triangle => "triangle",
            ComponentType::TetrahedronSkeleton => "tetrahedron-skeleton",
            ComponentType::PentagonalStar => "pentagonal-star",
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Edge of a figure: the piece of configuration line `line` between two
/// figure vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub kind: ComponentType,
    /// Configuration lines carrying the edges, sorted.
    pub lines: Vec<usize>,
    pub vertices: Vec<Vec3>,
    pub segments: Vec<Segment>,
    /// Vertex indices in loop order, for triangles and pentagrams.
    pub cycle: Option<Vec<usize>>,
    /// Intersection points strictly inside the edges (the pentagram's inner
    /// pentagon corners).
    pub inner_points: Vec<Vec3>,
}

impl Component {
    pub fn edge_lengths(&self) -> Vec<f64> {
        self.segments
            .iter()
            .map(|s| self.vertices[s.start].distance(self.vertices[s.end]))
            .collect()
    }

    /// The closed loop as points, if the figure is a single loop.
    pub fn loop_points(&self) -> Option<Vec<Vec3>> {
        self.cycle
            .as_ref()
            .map(|c| c.iter().map(|&i| self.vertices[i]).collect())
    }
}

#[derive(Debug, Clone)]
pub struct PolygonalCompound {
    pub pair: PairKind,
    pub delta: f64,
    pub component_type: ComponentType,
    pub components: Vec<Component>,
}

impl PolygonalCompound {
    /// Distinct figure vertices over all components.
    pub fn vertices(&self) -> Vec<Vec3> {
        dedup_points(
            self.components
                .iter()
                .flat_map(|c| c.vertices.iter().copied()),
        )
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.components
            .iter()
            .flat_map(Component::edge_lengths)
            .collect()
    }

    /// How many components use each configuration line.
    pub fn line_usage(&self, n_lines: usize) -> Vec<usize> {
        let mut used = vec![0; n_lines];
        for c in &self.components {
            for s in &c.segments {
                used[s.line] += 1;
            }
        }
        used
    }
}

fn dedup_points(points: impl IntoIterator<Item = Vec3>) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.distance(p) < VERTEX_EPS) {
            out.push(p);
        }
    }
    out
}

fn index_of(points: &[Vec3], p: Vec3) -> Option<usize> {
    points.iter().position(|q| q.distance(p) < VERTEX_EPS)
}

/// Groups the intersecting lines into connected figures and classifies them
/// by line count and vertex structure.
pub fn extract_compound(c: &DeltaConfiguration) -> Result<PolygonalCompound> {
    let graph = intersection_graph(&c.lines, INTERSECTION_EPS);
    if graph.is_empty() {
        return Err(Error::Classification(format!(
            "no intersecting lines at δ = {} for pair {}",
            c.delta, c.pair
        )));
    }

    let n = c.lines.len();
    let mut component_of: Vec<Option<usize>> = vec![None; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component_of[start].is_some() {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        component_of[start] = Some(id);
        let mut i = 0;
        while i < members.len() {
            let l = members[i];
            for x in &graph {
                let other = if x.a == l {
                    x.b
                } else if x.b == l {
                    x.a
                } else {
                    continue;
                };
                if component_of[other].is_none() {
                    component_of[other] = Some(id);
                    members.push(other);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        groups.push(members);
    }

    let mut components = Vec::with_capacity(groups.len());
    for lines in groups {
        let points: Vec<&Intersection> = graph
            .iter()
            .filter(|x| lines.binary_search(&x.a).is_ok())
            .collect();
        components.push(build_component(&c.lines, lines, &points)?);
    }

    let component_type = components[0].kind;
    if let Some(odd) = components.iter().find(|k| k.kind != component_type) {
        return Err(Error::Classification(format!(
            "mixed figures: {} and {}",
            component_type, odd.kind
        )));
    }
    Ok(PolygonalCompound {
        pair: c.pair,
        delta: c.delta,
        component_type,
        components,
    })
}

fn build_component(
    all_lines: &[TangentLine],
    lines: Vec<usize>,
    points: &[&Intersection],
) -> Result<Component> {
    let describe =
        |msg: &str| Error::Classification(format!("component with lines {lines:?}: {msg}"));
    if lines.len() < 2 {
        return Err(describe("isolated line"));
    }

    let mut vertices: Vec<Vec3> = Vec::new();
    let mut segments = Vec::new();
    let mut interior: Vec<Vec3> = Vec::new();
    for &l in &lines {
        let line = &all_lines[l];
        let mut on_line: Vec<(f64, Vec3)> = points
            .iter()
            .filter(|x| x.a == l || x.b == l)
            .map(|x| (line.parameter_of(x.point), x.point))
            .collect();
        on_line.sort_by(|a, b| a.0.total_cmp(&b.0));
        let first = on_line
            .first()
            .ok_or_else(|| describe("line without intersections"))?;
        let last = on_line.last().expect("nonempty");
        if (last.0 - first.0).abs() < VERTEX_EPS {
            return Err(describe("all intersections on a line coincide"));
        }
        let mut id = |p: Vec3| match index_of(&vertices, p) {
            Some(i) => i,
            None => {
                vertices.push(p);
                vertices.len() - 1
            }
        };
        let start = id(first.1);
        let end = id(last.1);
        segments.push(Segment {
            line: l,
            start,
            end,
        });
        for &(t, p) in &on_line {
            if t - first.0 > VERTEX_EPS && last.0 - t > VERTEX_EPS {
                interior.push(p);
            }
        }
    }
    let interior = dedup_points(interior);

    let mut degree = vec![0usize; vertices.len()];
    for s in &segments {
        degree[s.start] += 1;
        degree[s.end] += 1;
    }

    let kind = match (lines.len(), vertices.len()) {
        (3, 3) if degree.iter().all(|&d| d == 2) => ComponentType::Triangle,
        (6, 4) if degree.iter().all(|&d| d == 3) => ComponentType::TetrahedronSkeleton,
        (5, 5) if degree.iter().all(|&d| d == 2) && interior.len() == 5 => {
            ComponentType::PentagonalStar
        }
        (l, v) => {
            return Err(describe(&format!(
                "{l} lines, {v} vertices, degrees {degree:?}, {} inner points",
                interior.len()
            )))
        }
    };

    let cycle = match kind {
        ComponentType::TetrahedronSkeleton => None,
        _ => Some(
            walk_cycle(vertices.len(), &segments).ok_or_else(|| describe("not a single loop"))?,
        ),
    };

    Ok(Component {
        kind,
        lines,
        vertices,
        segments,
        cycle,
        inner_points: interior,
    })
}

/// Vertex order of a single closed loop through all vertices of degree 2.
fn walk_cycle(n: usize, segments: &[Segment]) -> Option<Vec<usize>> {
    let mut cycle = vec![0];
    let mut used = vec![false; segments.len()];
    let mut at = 0;
    for _ in 0..n {
        let (k, s) = segments
            .iter()
            .enumerate()
            .find(|(k, s)| !used[*k] && (s.start == at || s.end == at))?;
        used[k] = true;
        at = if s.start == at { s.end } else { s.start };
        if at == 0 {
            break;
        }
        cycle.push(at);
    }
    (cycle.len() == n && used.iter().all(|&u| u)).then_some(cycle)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexStats {
    pub vertex_count: usize,
    /// Mean distance of the vertices from the origin.
    pub circumradius: f64,
    /// Largest deviation of a vertex norm from `circumradius`.
    pub radius_spread: f64,
    pub min_pairwise_distance: f64,
    /// Neighbors at the minimum distance, per vertex (the same for every
    /// vertex of a vertex-transitive set; otherwise the smallest count).
    pub nearest_neighbor_count: usize,
}

pub fn vertex_stats(pc: &PolygonalCompound) -> VertexStats {
    vertex_stats_of(&pc.vertices())
}

pub fn vertex_stats_of(points: &[Vec3]) -> VertexStats {
    let points = dedup_points(points.iter().copied());
    let n = points.len();
    let norms: Vec<f64> = points.iter().map(|p| p.norm()).collect();
    let circumradius = norms.iter().sum::<f64>() / n.max(1) as f64;
    let radius_spread = norms
        .iter()
        .map(|r| (r - circumradius).abs())
        .fold(0.0, f64::max);
    let mut min_d = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_d = min_d.min(points[i].distance(points[j]));
        }
    }
    let nearest_neighbor_count = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && (points[i].distance(points[j]) - min_d).abs() < VERTEX_EPS)
                .count()
        })
        .min()
        .unwrap_or(0);
    VertexStats {
        vertex_count: n,
        circumradius,
        radius_spread,
        min_pairwise_distance: min_d,
        nearest_neighbor_count,
    }
}

/// Shortest distance between segments `p0p1` and `q0q1`.
pub fn segment_distance(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> f64 {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.norm_sq();
    let e = d2.norm_sq();
    let f = d2.dot(r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return p0.distance(q0);
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    (p0 + d1 * s).distance(q0 + d2 * t)
}

fn unit_or_none(v: Vec3) -> Option<Vec3> {
    let n = v.norm();
    (n > 1e-300).then(|| v / n)
}

/// Signed solid angle subtended between segments `p1p2` and `p3p4`,
/// divided by 4π; summing over all segment pairs gives the linking number.
fn segment_pair_linking(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let (r13, r14, r23, r24) = (p3 - p1, p4 - p1, p3 - p2, p4 - p2);
    let normals = [
        unit_or_none(r13.cross(r14)),
        unit_or_none(r14.cross(r24)),
        unit_or_none(r24.cross(r23)),
        unit_or_none(r23.cross(r13)),
    ];
    let [Some(n1), Some(n2), Some(n3), Some(n4)] = normals else {
        return 0.0;
    };
    let asin = |x: f64| x.clamp(-1.0, 1.0).asin();
    let omega = asin(n1.dot(n2)) + asin(n2.dot(n3)) + asin(n3.dot(n4)) + asin(n4.dot(n1));
    let sign = (p4 - p3).cross(p2 - p1).dot(r13);
    if sign == 0.0 {
        return 0.0;
    }
    omega * sign.signum() / (4.0 * PI)
}

/// Gauss linking number of two closed polygons, before rounding.
pub fn linking_integral(a: &[Vec3], b: &[Vec3]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (p1, p2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (p3, p4) = (b[j], b[(j + 1) % b.len()]);
            total += segment_pair_linking(p1, p2, p3, p4);
        }
    }
    total
}

/// Gauss linking number of two disjoint closed polygons.
pub fn linking_number(a: &[Vec3], b: &[Vec3]) -> Result<i64> {
    if a.len() < 3 || b.len() < 3 {
        return Err(Error::Domain("loops need at least three vertices".into()));
    }
    for i in 0..a.len() {
        for j in 0..b.len() {
            let d = segment_distance(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()]);
            if d < 1e-9 {
                return Err(Error::Domain(format!(
                    "loops touch (segments {i} and {j} at distance {d:e})"
                )));
            }
        }
    }
    let lk = linking_integral(a, b);
    let rounded = lk.round();
    if (lk - rounded).abs() > 1e-6 {
        return Err(Error::Internal(format!(
            "linking integral {lk} is not an integer"
        )));
    }
    Ok(rounded as i64)
}

/// The inner pentagon of every pentagram, corners in convex order.
pub fn star_inner_pentagons(pc: &PolygonalCompound) -> Result<Vec<Vec<Vec3>>> {
    if pc.component_type != ComponentType::PentagonalStar {
        return Err(Error::Domain(format!(
            "inner pentagons need pentagrams, got {}",
            pc.component_type
        )));
    }
    Ok(pc
        .components
        .iter()
        .map(|c| order_around_centroid(&c.inner_points))
        .collect())
}

/// Sorts coplanar points by angle about their centroid.
fn order_around_centroid(points: &[Vec3]) -> Vec<Vec3> {
    let centroid = points.iter().fold(Vec3::ZERO, |acc, p| acc + *p) / points.len() as f64;
    let e1 = (points[0] - centroid).normalized();
    let normal = e1.cross(points[1] - centroid).normalized();
    let e2 = normal.cross(e1);
    let mut out = points.to_vec();
    out.sort_by(|p, q| {
        let ang = |v: Vec3| (v - centroid).dot(e2).atan2((v - centroid).dot(e1));
        ang(*p).total_cmp(&ang(*q))
    });
    out
}

/// Radius of equal balls centred along `directions` (at distance 1 + r from
/// the origin, touching the unit ball) that touch their nearest neighbours:
/// sin(θ_min/2) = r / (1 + r).
pub fn id_ball_radius(directions: &[Vec3]) -> Result<f64> {
    if directions.len() < 2 {
        return Err(Error::Domain("need at least two directions".into()));
    }
    let units: Vec<Vec3> = directions
        .iter()
        .map(|d| {
            if d.norm() == 0.0 || !d.is_finite() {
                Err(Error::Domain("zero or non-finite direction".into()))
            } else {
                Ok(d.normalized())
            }
        })
        .collect::<Result<_>>()?;
    let mut theta_min = f64::INFINITY;
    for i in 0..units.len() {
        for j in i + 1..units.len() {
            // Half-chord form is accurate for both small and large angles.
            let theta = 2.0 * (0.5 * units[i].distance(units[j])).clamp(0.0, 1.0).asin();
            theta_min = theta_min.min(theta);
        }
    }
    if theta_min < 1e-12 {
        return Err(Error::Domain("coincident directions".into()));
    }
    let s = (0.5 * theta_min).sin();
    if s >= 1.0 - 1e-12 {
        return Err(Error::Domain(
            "antipodal directions admit balls of any radius".into(),
        ));
    }
    Ok(s / (1.0 - s))
}

fn same_point_set(a: &[Vec3], b: &[Vec3]) -> bool {
    a.len() == b.len() && a.iter().all(|p| index_of(b, *p).is_some())
}

/// True iff the figure is the orbit, under the pair's rotation group, of one
/// planar component through the origin whose normal is a 3-fold axis
/// (triangles) or a 5-fold axis (pentagrams).
pub fn axial_generation_check(pair: PairKind, pc: &PolygonalCompound) -> Result<bool> {
    let fold = match pc.component_type {
        ComponentType::Triangle => 3,
        ComponentType::PentagonalStar => 5,
        ComponentType::TetrahedronSkeleton => return Ok(false),
    };
    let seed = &pc.components[0];
    let v = &seed.vertices;
    let normal = (v[1] - v[0]).cross(v[2] - v[0]).normalized();
    if v.iter().any(|p| p.dot(normal).abs() > VERTEX_EPS) {
        return Ok(false);
    }
    let group = rotation_group(pair)?;
    let has_axis = group.elements.iter().any(|g| {
        g.order(fold, 1e-9) == Some(fold) && g.axis().is_some_and(|a| a.cross(normal).norm() < 1e-9)
    });
    if !has_axis {
        return Ok(false);
    }
    let mut images: Vec<Vec<Vec3>> = Vec::new();
    for g in &group.elements {
        let img: Vec<Vec3> = v.iter().map(|p| g.apply(*p)).collect();
        if !images.iter().any(|known| same_point_set(known, &img)) {
            images.push(img);
        }
    }
    let matched: BTreeSet<usize> = images
        .iter()
        .filter_map(|img| {
            pc.components
                .iter()
                .position(|c| same_point_set(&c.vertices, img))
        })
        .collect();
    Ok(images.len() == pc.components.len() && matched.len() == pc.components.len())
}
