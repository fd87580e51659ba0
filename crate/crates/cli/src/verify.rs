//! Table of known constants against freshly computed values.

use std::f64::consts::{FRAC_PI_4, PI};

use cylinder_compounds::compounds::{extract_compound, id_ball_radius, vertex_stats};
use cylinder_compounds::criticality::{
    critical_catalog, exact, icosahedral_max_polynomial, local_maxima, maximize_branch,
    radii_identity_check, real_roots, CriticalKind,
};
use cylinder_compounds::platonic::edge_pair_orbits;
use cylinder_compounds::rotation::{rotated_configuration, DeltaProcess};
use cylinder_compounds::{radius_from_distance, PairKind};

use crate::Result;

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    /// Human-readable expected value.
    pub expected_text: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
}

impl Row {
    fn new(name: &str, text: &str, expected: f64, computed: f64, tolerance: f64) -> Row {
        Row {
            name: name.to_string(),
            expected_text: text.to_string(),
            expected,
            computed,
            tolerance,
        }
    }

    pub fn error(&self) -> f64 {
        (self.computed - self.expected).abs()
    }

    pub fn passes(&self) -> bool {
        self.error() <= self.tolerance
    }
}

pub fn rows() -> Result<Vec<Row>> {
    let mut out = Vec::new();
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r5 = 5f64.sqrt();

    out.push(Row::new(
        "r(d=1)",
        "1",
        1.0,
        radius_from_distance(1.0)?,
        0.0,
    ));

    let t = DeltaProcess::new(PairKind::Tetrahedral)?;
    let tm = maximize_branch(PairKind::Tetrahedral, t.orbits().neighboring_orbit())?;
    out.push(Row::new("δ_T", "π/4", FRAC_PI_4, tm.delta, 1e-7));
    out.push(Row::new("d_T² = r(O₆)", "1", 1.0, tm.d_sq, 1e-12));

    let o = DeltaProcess::new(PairKind::Octahedral)?;
    let om = maximize_branch(PairKind::Octahedral, o.orbits().neighboring_orbit())?;
    let ro = radius_from_distance(om.d_sq.sqrt())?;
    out.push(Row::new(
        "δ_O",
        "arctan(3^(1/4)/√2)",
        exact::delta_octahedral(),
        om.delta,
        1e-10,
    ));
    out.push(Row::new("δ_O/π", "0.23856", 0.23856, om.delta / PI, 5e-6));
    out.push(Row::new("d_O²", "2−√3 ≈ 0.26795", 2.0 - r3, om.d_sq, 1e-12));
    out.push(Row::new(
        "r_O",
        "(√3−1)/(1+2√2−√3)",
        (r3 - 1.0) / (1.0 + 2.0 * r2 - r3),
        ro,
        1e-12,
    ));
    out.push(Row::new("r_O ≈", "0.3492", 0.3492, ro, 5e-5));

    let ocat = critical_catalog(PairKind::Octahedral)?;
    let corner = ocat
        .iter()
        .filter(|p| p.kind == CriticalKind::Corner)
        .min_by(|a, b| {
            (a.delta - 0.8008)
                .abs()
                .total_cmp(&(b.delta - 0.8008).abs())
        });
    let (cd, cv) = corner.map_or((f64::NAN, f64::NAN), |p| (p.delta, p.d_sq));
    out.push(Row::new("O corner δ", "0.800811", 0.800811, cd, 1e-5));
    out.push(Row::new("O corner d²", "0.26534", 0.26534, cv, 1e-4));

    let i = DeltaProcess::new(PairKind::Icosahedral)?;
    let im = maximize_branch(PairKind::Icosahedral, i.orbits().neighboring_orbit())?;
    out.push(Row::new(
        "tan δ_I",
        "(6/(5+√5))^(1/4)",
        (6.0 / (5.0 + r5)).powf(0.25),
        im.delta.tan(),
        1e-12,
    ));
    out.push(Row::new(
        "d_I²",
        "(9−√5−√(6(5+√5)))/4",
        exact::d_sq_icosahedral_neighbor(),
        im.d_sq,
        1e-12,
    ));
    out.push(Row::new("d_I² ≈", "0.0437", 0.0437, im.d_sq, 5e-4));
    out.push(Row::new(
        "r_I",
        "11−5√5+√(3(85−38√5))",
        11.0 - 5.0 * r5 + (3.0 * (85.0 - 38.0 * r5)).sqrt(),
        radius_from_distance(im.d_sq.sqrt())?,
        1e-12,
    ));
    let rep = radii_identity_check();
    out.push(Row::new(
        "r_I via 12x³−62x²+74x−3",
        "r_I",
        rep.radius,
        rep.radius_from_polynomial,
        1e-12,
    ));
    let (true_min, _) = i.min_distance_sq(im.delta);
    out.push(Row::new(
        "min² at δ_I",
        "0.00291762",
        0.00291762,
        true_min,
        1e-7,
    ));
    out.push(Row::new(
        "radius at δ_I",
        "0.0277571",
        0.0277571,
        radius_from_distance(true_min.sqrt())?,
        1e-6,
    ));

    let roots = real_roots(&icosahedral_max_polynomial(), -100.0, 100.0)?;
    out.push(Row::new(
        "real roots of 5t⁶−80t⁵+190t³−4t²−84t+9",
        "6",
        6.0,
        roots.len() as f64,
        0.0,
    ));
    let t0 = roots
        .iter()
        .copied()
        .filter(|r| (0.0..1.0).contains(r))
        .min_by(|a, b| (a - 0.694356).abs().total_cmp(&(b - 0.694356).abs()))
        .unwrap_or(f64::NAN);
    out.push(Row::new("t₀", "0.694356", 0.694356, t0, 1e-5));
    let icat = critical_catalog(PairKind::Icosahedral)?;
    let top = icat
        .iter()
        .filter(|p| p.kind.is_local_max())
        .max_by(|a, b| a.d_sq.total_cmp(&b.d_sq));
    let (td, tv, tr) = top.map_or((f64::NAN, f64::NAN, f64::NAN), |p| {
        (p.delta, p.d_sq, p.radius)
    });
    out.push(Row::new(
        "δ_max",
        "arctan √t₀ ≈ 0.694707",
        t0.sqrt().atan(),
        td,
        1e-8,
    ));
    out.push(Row::new("d² at δ_max", "0.0429216", 0.0429216, tv, 1e-6));
    out.push(Row::new("r_max", "0.115558", 0.115558, tr, 1e-5));

    for (pair, orbits, pairs) in [
        (PairKind::Tetrahedral, 2.0, 15.0),
        (PairKind::Octahedral, 5.0, 66.0),
        (PairKind::Icosahedral, 11.0, 435.0),
    ] {
        let table = edge_pair_orbits(pair)?;
        out.push(Row::new(
            &format!("{pair} orbits"),
            &format!("{orbits}"),
            orbits,
            table.len() as f64,
            0.0,
        ));
        out.push(Row::new(
            &format!("{pair} edge pairs"),
            &format!("{pairs}"),
            pairs,
            table.total_pairs() as f64,
            0.0,
        ));
        let cat = match pair {
            PairKind::Octahedral => ocat.clone(),
            PairKind::Icosahedral => icat.clone(),
            PairKind::Tetrahedral => critical_catalog(pair)?,
        };
        let t = pair.t() as f64;
        out.push(Row::new(
            &format!("{pair} local maxima"),
            &format!("t = {t}"),
            t,
            local_maxima(&cat).len() as f64,
            0.0,
        ));
    }

    let oc = extract_compound(&rotated_configuration(
        PairKind::Octahedral,
        exact::octahedral_zero(),
    ))?;
    let ic = extract_compound(&rotated_configuration(
        PairKind::Icosahedral,
        exact::icosahedral_zeros()[0],
    ))?;
    let tc = extract_compound(&rotated_configuration(
        PairKind::Icosahedral,
        exact::icosahedral_zeros()[1],
    ))?;
    let longest = |v: Vec<f64>| v.into_iter().fold(0.0, f64::max);
    out.push(Row::new(
        "O triangle edge",
        "2√3",
        2.0 * r3,
        longest(oc.edge_lengths()),
        1e-9,
    ));
    out.push(Row::new(
        "O hull edge",
        "2",
        2.0,
        vertex_stats(&oc).min_pairwise_distance,
        1e-9,
    ));
    out.push(Row::new(
        "I triangle edge",
        "2√3",
        2.0 * r3,
        longest(ic.edge_lengths()),
        1e-9,
    ));
    out.push(Row::new(
        "I hull edge",
        "√5−1",
        r5 - 1.0,
        vertex_stats(&ic).min_pairwise_distance,
        1e-9,
    ));
    out.push(Row::new(
        "I tetrahedron edge",
        "2√2",
        2.0 * r2,
        longest(tc.edge_lengths()),
        1e-9,
    ));
    out.push(Row::new(
        "ID ball radius",
        "1/√5",
        1.0 / r5,
        id_ball_radius(&ic.vertices())?,
        1e-12,
    ));
    out.push(Row::new(
        "FCC ball radius",
        "1",
        1.0,
        id_ball_radius(&oc.vertices())?,
        1e-12,
    ));
    Ok(out)
}
