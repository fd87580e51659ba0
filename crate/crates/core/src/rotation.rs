//! The δ-rotation family of tangent-line configurations.
//!
//! At angle δ every edge line of the pair's base solid is turned by δ about
//! the sphere normal at its tangency point. The rotation group of the pair
//! permutes the turned lines, so the distance between two lines depends only
//! on the orbit of their edge pair; each orbit gives one distance branch.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::geom::{line_distance, signed_line_distance, TangentLine, Vec3};
use crate::platonic::{
    build_solid, edge_pair_orbits, edge_tangent_lines, golden_ratio, OrbitTable, PairKind,
};
use crate::{Error, Result};

/// Branch values closer than this to the minimum count as active.
pub const ACTIVE_EPS: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DeltaConfiguration {
    pub pair: PairKind,
    pub delta: f64,
    pub lines: Vec<TangentLine>,
}

impl DeltaConfiguration {
    pub fn min_distance(&self) -> f64 {
        configuration_min_distance(&self.lines)
    }
}

/// Precomputed data for one pair: base lines and the orbit table.
#[derive(Debug, Clone)]
pub struct DeltaProcess {
    pair: PairKind,
    base_lines: Vec<TangentLine>,
    orbits: OrbitTable,
}

impl DeltaProcess {
    pub fn new(pair: PairKind) -> Result<DeltaProcess> {
        let solid = build_solid(pair.base_solid());
        Ok(DeltaProcess {
            pair,
            base_lines: edge_tangent_lines(&solid),
            orbits: edge_pair_orbits(pair)?,
        })
    }

    pub fn pair(&self) -> PairKind {
        self.pair
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }

    pub fn branch_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn configuration(&self, delta: f64) -> DeltaConfiguration {
        DeltaConfiguration {
            pair: self.pair,
            delta,
            lines: self.base_lines.iter().map(|l| l.rotated(delta)).collect(),
        }
    }

    fn representative_lines(&self, label: usize, delta: f64) -> Result<(TangentLine, TangentLine)> {
        let (a, b) = self.orbits.get(label)?.representative;
        Ok((
            self.base_lines[a].rotated(delta),
            self.base_lines[b].rotated(delta),
        ))
    }

    pub fn branch_distance_sq(&self, label: usize, delta: f64) -> Result<f64> {
        let (a, b) = self.representative_lines(label, delta)?;
        Ok(line_distance(&a, &b).powi(2))
    }

    /// Signed distance of the representative pair, oriented by the common
    /// normal `dir_a × dir_b`. Continuous in δ away from parallel positions,
    /// and crosses zero transversally where the lines meet.
    pub fn branch_signed_distance(&self, label: usize, delta: f64) -> Result<Option<f64>> {
        let (a, b) = self.representative_lines(label, delta)?;
        Ok(signed_line_distance(&a, &b))
    }

    /// Exact derivative of the branch with respect to δ.
    pub fn branch_derivative(&self, label: usize, delta: f64) -> Result<f64> {
        let (a, b) = self.representative_lines(label, delta)?;
        let (ma, ua) = (a.tangency(), a.direction());
        let (mb, ub) = (b.tangency(), b.direction());
        let n = ua.cross(ub);
        let nn = n.norm();
        if nn < 1e-9 {
            // Parallel position: fall back to a central difference.
            let h = 1e-6;
            let f = |d| self.branch_distance_sq(label, d);
            return Ok((f(delta + h)? - f(delta - h)?) / (2.0 * h));
        }
        let dn = ma.cross(ua).cross(ub) + ua.cross(mb.cross(ub));
        let w: Vec3 = mb - ma;
        let s = w.dot(n) / nn;
        let ds = w.dot(dn) / nn - w.dot(n) * n.dot(dn) / (nn * nn * nn);
        Ok(2.0 * s * ds)
    }

    pub fn all_branches(&self, delta: f64) -> Vec<f64> {
        (0..self.branch_count())
            .map(|k| self.branch_distance_sq(k, delta).expect("label in range"))
            .collect()
    }

    /// Minimum over all branches and the labels attaining it.
    pub fn min_distance_sq(&self, delta: f64) -> (f64, Vec<usize>) {
        min_with_active(&self.all_branches(delta))
    }

    /// Conventional names that a closed form or a structural property pins to
    /// an orbit, as `(orbit label, name)`.
    pub fn pinned_labels(&self) -> Vec<(usize, &'static str)> {
        let mut out = Vec::new();
        let (nb, opp) = (
            self.orbits.neighboring_orbit(),
            self.orbits.opposite_orbit(),
        );
        match self.pair {
            PairKind::Tetrahedral => {
                out.push((nb, "adjacent"));
                out.push((opp, "opposite"));
            }
            PairKind::Octahedral => {
                out.push((nb, "red"));
                out.push((opp, "yellow"));
                if let Some(k) = self.match_closed_form(ClosedForm::OctahedralGreen) {
                    out.push((k, "green"));
                }
            }
            PairKind::Icosahedral => {
                out.push((nb, "1"));
                for (form, name) in [
                    (ClosedForm::Icosahedral3, "3"),
                    (ClosedForm::Icosahedral5Corrected, "5"),
                    (ClosedForm::Icosahedral8Corrected, "8"),
                    (ClosedForm::Icosahedral9Corrected, "9"),
                ] {
                    if let Some(k) = self.match_closed_form(form) {
                        out.push((k, name));
                    }
                }
                out.push((opp, "11"));
            }
        }
        out.sort();
        out
    }

    pub fn pinned_label(&self, label: usize) -> Option<&'static str> {
        self.pinned_labels()
            .into_iter()
            .find(|(k, _)| *k == label)
            .map(|(_, name)| name)
    }

    /// Orbits whose branch agrees with `form` within 1e-10 at 100 points of
    /// [0, π/2].
    pub fn orbits_matching(&self, form: ClosedForm) -> Vec<usize> {
        if form.pair() != self.pair {
            return Vec::new();
        }
        let samples: Vec<f64> = (0..100).map(|i| FRAC_PI_2 * i as f64 / 99.0).collect();
        (0..self.branch_count())
            .filter(|&k| {
                samples.iter().all(|&d| {
                    let numeric = self.branch_distance_sq(k, d).expect("label in range");
                    (numeric - form.eval(d)).abs() < 1e-10
                })
            })
            .collect()
    }

    fn match_closed_form(&self, form: ClosedForm) -> Option<usize> {
        match self.orbits_matching(form).as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }
}

pub(crate) fn min_with_active(values: &[f64]) -> (f64, Vec<usize>) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let active = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v - min <= ACTIVE_EPS)
        .map(|(i, _)| i)
        .collect();
    (min, active)
}

pub fn rotated_configuration(pair: PairKind, delta: f64) -> DeltaConfiguration {
    let solid = build_solid(pair.base_solid());
    DeltaConfiguration {
        pair,
        delta,
        lines: edge_tangent_lines(&solid)
            .into_iter()
            .map(|l| l.rotated(delta))
            .collect(),
    }
}

pub fn branch_distance_sq(pair: PairKind, orbit_label: usize, delta: f64) -> Result<f64> {
    DeltaProcess::new(pair)?.branch_distance_sq(orbit_label, delta)
}

pub fn min_distance_sq(pair: PairKind, delta: f64) -> Result<(f64, Vec<usize>)> {
    Ok(DeltaProcess::new(pair)?.min_distance_sq(delta))
}

/// Smallest distance between two of the lines.
pub fn configuration_min_distance(lines: &[TangentLine]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            best = best.min(line_distance(a, b));
        }
    }
    best
}

/// Squared distance between two neighboring lines whose tangency points sit
/// at latitude with sine `s`, separated by the vertex rotation 2α, each turned
/// by δ with `t = tan δ`.
pub fn neighbor_distance_sq_general(s: f64, alpha: f64, t: f64) -> f64 {
    let (sa, ca) = alpha.sin_cos();
    let (s2, t2) = (s * s, t * t);
    let den = (s2 + t2) * (1.0 - sa * sa * s2 + ca * ca * t2);
    if den == 0.0 {
        return 0.0;
    }
    4.0 * sa * sa * (1.0 - s2).powi(2) * t2 / den
}

/// Closed-form branch formulas. The `*Corrected` variants are the forms the
/// numeric branches actually follow; the plain variants are kept exactly as
/// given, even where they disagree with the numeric branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    TetrahedralAdjacent,
    OctahedralNeighbor,
    OctahedralGreen,
    IcosahedralNeighbor,
    Icosahedral5,
    Icosahedral3,
    Icosahedral8,
    Icosahedral9,
    Icosahedral5Corrected,
    Icosahedral8Corrected,
    Icosahedral9Corrected,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 11] = [
        ClosedForm::TetrahedralAdjacent,
        ClosedForm::OctahedralNeighbor,
        ClosedForm::OctahedralGreen,
        ClosedForm::IcosahedralNeighbor,
        ClosedForm::Icosahedral5,
        ClosedForm::Icosahedral3,
        ClosedForm::Icosahedral8,
        ClosedForm::Icosahedral9,
        ClosedForm::Icosahedral5Corrected,
        ClosedForm::Icosahedral8Corrected,
        ClosedForm::Icosahedral9Corrected,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClosedForm::TetrahedralAdjacent => "T-adjacent",
            ClosedForm::OctahedralNeighbor => "O-neighbor",
            ClosedForm::OctahedralGreen => "O-green",
            ClosedForm::IcosahedralNeighbor => "I-neighbor",
            ClosedForm::Icosahedral5 => "I-5",
            ClosedForm::Icosahedral3 => "I-3",
            ClosedForm::Icosahedral8 => "I-8",
            ClosedForm::Icosahedral9 => "I-9",
            ClosedForm::Icosahedral5Corrected => "I-5-corrected",
            ClosedForm::Icosahedral8Corrected => "I-8-corrected",
            ClosedForm::Icosahedral9Corrected => "I-9-corrected",
        }
    }

    pub fn pair(self) -> PairKind {
        match self {
            ClosedForm::TetrahedralAdjacent => PairKind::Tetrahedral,
            ClosedForm::OctahedralNeighbor | ClosedForm::OctahedralGreen => PairKind::Octahedral,
            _ => PairKind::Icosahedral,
        }
    }

    pub fn eval(self, delta: f64) -> f64 {
        let tau = golden_ratio();
        let tau3 = tau.powi(3);
        let r5 = 5f64.sqrt();
        let r2 = 2f64.sqrt();
        let (s1, c1) = delta.sin_cos();
        let (s2, c2) = (2.0 * delta).sin_cos();
        let (s4, c4) = (4.0 * delta).sin_cos();
        match self {
            ClosedForm::TetrahedralAdjacent => {
                let t2 = delta.tan().powi(2);
                16.0 * t2 / ((3.0 * t2 + 1.0) * (t2 + 3.0))
            }
            ClosedForm::OctahedralNeighbor => -4.0 * s2 * s2 / ((c2 - 3.0) * (c2 + 5.0)),
            ClosedForm::OctahedralGreen => {
                (4.0 * c2 + r2 * s2).powi(2)
                    / (6.0 * c1.powi(4) + 8.0 * r2 * c1.powi(3) * s1 + 8.0 * s1.powi(4))
            }
            ClosedForm::IcosahedralNeighbor => {
                -4.0 * s2 * s2 / ((c2 - (4.0 + r5)) * (c2 - (1.0 - 2.0 * r5) * tau3))
            }
            ClosedForm::Icosahedral5 => {
                8.0 * (r5 * s2 - 2.0 * c2).powi(2)
                    / (21.0 + 4.0 * r5 + 4.0 * r5 * c2 - c4 + 8.0 * s2 - 4.0 * r5 * s4)
            }
            ClosedForm::Icosahedral3 => 4.0 * c2 * c2 / (3.0 + c2 * c2),
            ClosedForm::Icosahedral8 => {
                8.0 * (2.0 * c2 + s2).powi(2)
                    / (25.0 + 8.0 * r5 + 4.0 * tau3 * (2.0 * c2 - s2) + 3.0 * c4 + 4.0 * s4)
            }
            ClosedForm::Icosahedral9 => {
                8.0 * tau * (2.0 * c2 + s2).powi(2)
                    / (tau3 * (25.0 - 8.0 * r5)
                        + 4.0 * (2.0 * c2 - s2)
                        + tau3 * (3.0 * c4 + 4.0 * s4))
            }
            ClosedForm::Icosahedral5Corrected => {
                8.0 * (r5 * s2 - 2.0 * c2).powi(2)
                    / (21.0 + 4.0 * r5 * c2 - c4 + 8.0 * s2 - 4.0 * r5 * s4)
            }
            ClosedForm::Icosahedral8Corrected => {
                8.0 * (2.0 * c2 + s2).powi(2)
                    / (25.0 + 8.0 * r5 + 4.0 * tau3 * (2.0 * s2 - c2) + 3.0 * c4 + 4.0 * s4)
            }
            ClosedForm::Icosahedral9Corrected => {
                8.0 * tau3 * (2.0 * c2 + s2).powi(2)
                    / (tau3 * (25.0 - 8.0 * r5)
                        + 4.0 * (2.0 * s2 - c2)
                        + tau3 * (3.0 * c4 + 4.0 * s4))
            }
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown closed form '{s}'")))
    }
}

/// Evaluates a closed form, checking that it belongs to `pair`.
pub fn closed_form_branch(pair: PairKind, form: ClosedForm, delta: f64) -> Result<f64> {
    if form.pair() != pair {
        return Err(Error::Domain(format!(
            "closed form {form} belongs to pair {}, not {pair}",
            form.pair()
        )));
    }
    Ok(form.eval(delta))
}
