use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use cylinder_compounds::compounds::{
    axial_generation_check, extract_compound, linking_number, star_inner_pentagons, vertex_stats,
    vertex_stats_of, ComponentType, VertexStats,
};
use cylinder_compounds::criticality::{
    critical_catalog, exact, icosahedral_max_polynomial, real_roots, touching_radius,
};
use cylinder_compounds::rotation::{rotated_configuration, DeltaProcess};
use cylinder_compounds::{Error, PairKind, Vec3};

use crate::export::ExportManifest;
use crate::format::{exact as exact_text, sig};
use crate::{Cli, CliError, Command, CompoundArgs, DeltaSpec, RadiusSpec, Result};

/// Runs one command, writing its report to `out`. Returns the process exit
/// code for commands that can fail without an error (only `verify`).
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let angle = |x: f64| {
        if cli.degrees {
            sig(x.to_degrees(), 15)
        } else {
            sig(x, 15)
        }
    };
    match &cli.command {
        Command::Verify => verify(out),
        Command::Curve {
            pair,
            samples,
            out: path,
        } => {
            let text = curve_csv(pair.0, *samples, &angle)?;
            emit(&text, path.as_deref(), out)?;
            Ok(0)
        }
        Command::Critical { pair } => {
            out.write_all(critical_table(pair.0, &angle)?.as_bytes())?;
            Ok(0)
        }
        Command::Orbits { pair } => {
            out.write_all(orbit_table(pair.0)?.as_bytes())?;
            Ok(0)
        }
        Command::Compound(args) => {
            let manifest = compound_manifest(args)?;
            if !(args.length > 0.0 && args.length.is_finite()) {
                return Err(CliError::Usage(format!(
                    "--length must be positive, got {}",
                    args.length
                )));
            }
            let text = manifest.render(args.length, args.sphere)?;
            emit(&text, args.out.as_deref(), out)?;
            Ok(0)
        }
        Command::Minima { pair, which } => {
            out.write_all(minima_report(pair.0, *which, &angle)?.as_bytes())?;
            Ok(0)
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify(out: &mut dyn Write) -> Result<u8> {
    let rows = crate::verify::rows()?;
    writeln!(
        out,
        "{:<42} {:<26} {:>24} {:>10} {:>8} result",
        "name", "expected", "computed", "|Δ|", "tol"
    )?;
    let mut failed = 0;
    for r in &rows {
        let verdict = if r.passes() { "pass" } else { "FAIL" };
        if !r.passes() {
            failed += 1;
        }
        writeln!(
            out,
            "{:<42} {:<26} {:>24} {:>10.2e} {:>8.0e} {verdict}",
            r.name,
            r.expected_text,
            sig(r.computed, 15),
            r.error(),
            r.tolerance
        )?;
    }
    writeln!(out, "{} of {} rows pass", rows.len() - failed, rows.len())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn curve_csv(pair: PairKind, samples: usize, angle: &dyn Fn(f64) -> String) -> Result<String> {
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "--samples must be at least 2, got {samples}"
        )));
    }
    let p = DeltaProcess::new(pair)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["delta".to_string()];
    header.extend((0..p.branch_count()).map(|k| format!("orbit_{k}")));
    header.extend(["min", "active", "radius"].map(String::from));
    w.write_record(&header)?;
    for i in 0..samples {
        let delta = FRAC_PI_2 * i as f64 / (samples - 1) as f64;
        let branches = p.all_branches(delta);
        let (min, active) = p.min_distance_sq(delta);
        let mut rec = vec![angle(delta)];
        rec.extend(branches.iter().map(|&v| exact_text(v)));
        rec.push(exact_text(min));
        rec.push(join(&active, ";"));
        rec.push(exact_text(touching_radius(min)));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

fn join(labels: &[usize], sep: &str) -> String {
    labels
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn critical_table(pair: PairKind, angle: &dyn Fn(f64) -> String) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>18} {:>18} {:>18} {:>18} {:>18} {:<12} active",
        "delta", "tan(delta)", "d^2", "d", "radius", "kind"
    );
    for c in critical_catalog(pair)? {
        let _ = writeln!(
            s,
            "{:>18} {:>18} {:>18} {:>18} {:>18} {:<12} {}",
            angle(c.delta),
            tan_text(c.delta),
            sig(c.d_sq, 15),
            sig(c.d_sq.sqrt(), 15),
            sig(c.radius, 15),
            c.kind.name(),
            join(&c.active_orbits, ",")
        );
    }
    Ok(s)
}

fn tan_text(delta: f64) -> String {
    if (delta - FRAC_PI_2).abs() < 1e-15 {
        "inf".into()
    } else {
        sig(delta.tan(), 15)
    }
}

fn orbit_table(pair: PairKind) -> Result<String> {
    let p = DeltaProcess::new(pair)?;
    let pinned = p.pinned_labels();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5} {:>5} {:>14} {:>18} label",
        "orbit", "size", "representative", "d^2(0.1)"
    );
    for o in &p.orbits().orbits {
        let name = pinned
            .iter()
            .find(|(k, _)| *k == o.label)
            .map_or("-", |(_, n)| n);
        let _ = writeln!(
            s,
            "{:>5} {:>5} {:>14} {:>18} {name}",
            o.label,
            o.size(),
            format!("({}, {})", o.representative.0, o.representative.1),
            sig(p.branch_distance_sq(o.label, 0.1)?, 15)
        );
    }
    let _ = writeln!(
        s,
        "{} orbits, {} edge pairs",
        p.orbits().len(),
        p.orbits().total_pairs()
    );
    Ok(s)
}

/// Interior zeros of the minimum curve in increasing δ.
fn interior_zeros(pair: PairKind) -> Vec<f64> {
    match pair {
        PairKind::Tetrahedral => Vec::new(),
        PairKind::Octahedral => vec![exact::octahedral_zero()],
        PairKind::Icosahedral => exact::icosahedral_zeros().to_vec(),
    }
}

/// Resolves a δ specification to an angle, using the exact algebraic values
/// for the named ones.
pub fn named_delta(pair: PairKind, spec: DeltaSpec) -> Result<f64> {
    match spec {
        DeltaSpec::Value(d) => {
            if !(0.0..=FRAC_PI_2).contains(&d) {
                eprintln!("warning: δ = {d} lies outside [0, π/2]");
            }
            Ok(d)
        }
        DeltaSpec::O6 => match pair {
            PairKind::Tetrahedral => Ok(FRAC_PI_4),
            _ => Err(CliError::Usage("o6 is defined for pair T only".into())),
        },
        DeltaSpec::DeltaMax => match pair {
            PairKind::Tetrahedral => Ok(FRAC_PI_4),
            PairKind::Octahedral => Ok(exact::delta_octahedral()),
            PairKind::Icosahedral => {
                let roots = real_roots(&icosahedral_max_polynomial(), 0.0, 1.0)?;
                let t0 = roots
                    .into_iter()
                    .find(|t| (0.6..0.8).contains(t))
                    .ok_or_else(|| CliError::Core(Error::Internal("t₀ not found".into())))?;
                Ok(t0.sqrt().atan())
            }
        },
        DeltaSpec::Min(k) => {
            let zeros = interior_zeros(pair);
            if zeros.is_empty() {
                return Err(Error::Domain(format!("pair {pair} has no interior zeros")).into());
            }
            zeros.get(k.wrapping_sub(1)).copied().ok_or_else(|| {
                CliError::Usage(format!(
                    "pair {pair} has {} interior zeros, asked for {k}",
                    zeros.len()
                ))
            })
        }
    }
}

pub(crate) fn compound_manifest(args: &CompoundArgs) -> Result<ExportManifest> {
    let pair = args.pair.0;
    let delta = named_delta(pair, args.delta)?;
    let config = rotated_configuration(pair, delta);
    let touching = touching_radius(config.min_distance().powi(2));
    let radius = match args.radius {
        RadiusSpec::Auto => touching,
        RadiusSpec::Value(r) => {
            if r > touching + 1e-12 && !args.force {
                return Err(CliError::Usage(format!(
                    "radius {r} exceeds the touching radius {touching}; cylinders would overlap (use --force)"
                )));
            }
            r
        }
    };
    Ok(ExportManifest {
        pair,
        delta,
        radius,
        lines: config.lines,
        format: args.format,
    })
}

fn hull_signature(st: &VertexStats) -> &'static str {
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let ratio = st.min_pairwise_distance / st.circumradius;
    let close = |x: f64| (ratio - x).abs() < 1e-9;
    if st.radius_spread > 1e-9 {
        return "not on a sphere";
    }
    match (st.vertex_count, st.nearest_neighbor_count) {
        (12, 4) if close(1.0) => "cuboctahedron",
        (30, 4) if close(1.0 / tau) => "icosidodecahedron",
        (20, 3) if close(2.0 / (3f64.sqrt() * tau)) => "dodecahedron",
        _ => "unrecognized",
    }
}

fn describe_stats(s: &mut String, what: &str, st: &VertexStats) {
    let _ = writeln!(
        s,
        "{what}: {} at circumradius {}, min distance {}, {} nearest neighbours each, hull {}",
        st.vertex_count,
        sig(st.circumradius, 15),
        sig(st.min_pairwise_distance, 15),
        st.nearest_neighbor_count,
        hull_signature(st)
    );
}

fn describe_linking(s: &mut String, what: &str, loops: &[Vec<Vec3>]) -> Result<()> {
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..loops.len() {
        for j in i + 1..loops.len() {
            *counts
                .entry(linking_number(&loops[i], &loops[j])?)
                .or_insert(0usize) += 1;
        }
    }
    let summary: Vec<String> = counts
        .iter()
        .map(|(lk, n)| format!("lk = {lk}: {n}"))
        .collect();
    let _ = writeln!(s, "linking of {what}: {}", summary.join(", "));
    Ok(())
}

/// Structure of the compound at the `which`-th interior zero (1-based).
pub fn minima_report(
    pair: PairKind,
    which: usize,
    angle: &dyn Fn(f64) -> String,
) -> Result<String> {
    let delta = named_delta(pair, DeltaSpec::Min(which))?;
    let zeros = interior_zeros(pair).len();
    let pc = extract_compound(&rotated_configuration(pair, delta))?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "pair {pair}, zero {which} of {zeros} at delta = {}",
        angle(delta)
    );
    let lines: usize = pc.components.iter().map(|c| c.lines.len()).sum();
    let _ = writeln!(
        s,
        "figure: {} x {} over {lines} lines",
        pc.components.len(),
        pc.component_type
    );
    let edges = pc.edge_lengths();
    let (lo, hi) = edges.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| {
        (lo.min(e), hi.max(e))
    });
    let _ = writeln!(s, "edge length: {} (spread {:.1e})", sig(hi, 15), hi - lo);
    describe_stats(&mut s, "vertices", &vertex_stats(&pc));
    match pc.component_type {
        ComponentType::Triangle => {
            let loops: Vec<Vec<Vec3>> = pc
                .components
                .iter()
                .filter_map(|c| c.loop_points())
                .collect();
            describe_linking(&mut s, "triangles", &loops)?;
        }
        ComponentType::PentagonalStar => {
            let pentagons = star_inner_pentagons(&pc)?;
            describe_stats(
                &mut s,
                "inner pentagon corners",
                &vertex_stats_of(&pentagons.concat()),
            );
            describe_linking(&mut s, "inner pentagons", &pentagons)?;
        }
        ComponentType::TetrahedronSkeleton => {
            let _ = writeln!(s, "linking: not defined for tetrahedron skeletons");
        }
    }
    let axial = axial_generation_check(pair, &pc)?;
    let _ = writeln!(s, "axial generation: {}", if axial { "yes" } else { "no" });
    Ok(s)
}
