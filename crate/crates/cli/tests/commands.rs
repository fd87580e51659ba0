use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::Command as Process;

use clap::Parser;
use cylcomp::export::{ExportManifest, PRISM_SIDES};
use cylcomp::{run, Cli, CliError};
use cylinder_compounds::compounds::{extract_compound, ComponentType};
use cylinder_compounds::rotation::{configuration_min_distance, DeltaConfiguration};
use cylinder_compounds::PairKind;

fn exec(args: &[&str]) -> Result<(u8, String), CliError> {
    let cli = Cli::try_parse_from(std::iter::once("cylcomp").chain(args.iter().copied()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = Vec::new();
    let code = run(&cli, &mut out)?;
    Ok((code, String::from_utf8(out).unwrap()))
}

fn output(args: &[&str]) -> String {
    let (code, text) = exec(args).unwrap();
    assert_eq!(code, 0);
    text
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn verify_passes_and_shows_known_values() {
    let text = output(&["verify"]);
    let row = |name: &str| {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap()
            .to_string()
    };
    assert!(row("d_O²").contains("0.26795"));
    assert!(row("r_max").contains("0.115558"));
    assert!(text.lines().filter(|l| l.ends_with("FAIL")).count() == 0);
}

#[test]
fn curve_octahedral_three_samples() {
    let (header, rows) = csv_rows(&output(&["curve", "--pair", "O", "--samples", "3"]));
    assert_eq!(header[0], "delta");
    assert_eq!(&header[header.len() - 3..], ["min", "active", "radius"]);
    assert_eq!(header.iter().filter(|h| h.starts_with("orbit_")).count(), 5);
    assert_eq!(rows.len(), 3);
    let deltas: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    for (d, want) in deltas.iter().zip([0.0, FRAC_PI_4, FRAC_PI_2]) {
        assert!((d - want).abs() < 1e-14);
    }
    for r in &rows {
        let orbit: Vec<f64> = r[1..6].iter().map(|x| x.parse().unwrap()).collect();
        let min: f64 = r[6].parse().unwrap();
        assert_eq!(min, orbit.iter().copied().fold(f64::INFINITY, f64::min));
        let radius: f64 = r[8].parse().unwrap();
        let d = min.sqrt();
        assert!((radius - d / (2.0 - d)).abs() < 1e-15);
    }
    assert_eq!(rows[0][6].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn curve_tetrahedral_is_symmetric() {
    let (_, rows) = csv_rows(&output(&["curve", "--pair", "T", "--samples", "5"]));
    let min: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    for i in 0..5 {
        assert!((min[i] - min[4 - i]).abs() < 1e-12);
    }
}

#[test]
fn curve_is_deterministic_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.csv");
    let p = path.to_str().unwrap();
    assert_eq!(
        output(&["curve", "--pair", "I", "--samples", "64", "--out", p]),
        ""
    );
    let first = std::fs::read(&path).unwrap();
    output(&["curve", "--pair", "I", "--samples", "64", "--out", p]);
    assert_eq!(first, std::fs::read(&path).unwrap());
    assert_eq!(
        String::from_utf8(first).unwrap(),
        output(&["curve", "--pair", "I", "--samples", "64"])
    );
}

#[test]
fn curve_errors() {
    let e = exec(&["curve", "--pair", "O", "--samples", "1"]).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let e = exec(&["curve", "--pair", "O", "--out", "/nonexistent/dir/x.csv"]).unwrap_err();
    assert!(matches!(e, CliError::Io(_)));
}

#[test]
fn curve_resolves_icosahedral_fine_structure() {
    let (_, rows) = csv_rows(&output(&["curve", "--pair", "I", "--samples", "4096"]));
    let in_window: Vec<&Vec<String>> = rows
        .iter()
        .filter(|r| (0.874..=0.876).contains(&r[0].parse::<f64>().unwrap()))
        .collect();
    assert!(in_window.len() >= 4);
    // The active orbit changes inside the window.
    let first = &in_window[0][13];
    assert!(in_window.iter().any(|r| &r[13] != first));
}

#[test]
fn critical_tables() {
    let t = output(&["critical", "--pair", "T"]);
    let rows: Vec<&str> = t.lines().skip(1).filter(|l| l.contains("max")).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains("0.785398163397448") && rows[0].contains("smooth-max"));

    let o = output(&["critical", "--pair", "O"]);
    assert!(o.lines().skip(1).any(|l| {
        let cols: Vec<&str> = l.split_whitespace().collect();
        let num = |i: usize| cols[i].parse::<f64>().unwrap();
        cols[5] == "corner" && (num(0) - 0.800811).abs() < 1e-5 && (num(2) - 0.26534).abs() < 1e-4
    }));

    let i = output(&["critical", "--pair", "I"]);
    let zeros: Vec<&str> = i.lines().filter(|l| l.contains(" zero ")).collect();
    assert!(zeros
        .iter()
        .any(|l| l.trim_start().starts_with("0.785398163397448")));
    assert!(zeros
        .iter()
        .any(|l| l.trim_start().starts_with("1.01722196789785")));

    let deg = output(&["critical", "--pair", "T", "--degrees"]);
    assert!(deg
        .lines()
        .any(|l| l.trim_start().starts_with("45.0000000000000")));
}

fn orbit_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect::<Vec<_>>())
        .filter(|cols| cols.len() == 6)
        .collect()
}

#[test]
fn orbit_tables() {
    let t = orbit_rows(&output(&["orbits", "--pair", "T"]));
    let mut sizes: Vec<usize> = t.iter().map(|r| r[1].parse().unwrap()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [3, 12]);

    let o = orbit_rows(&output(&["orbits", "--pair", "O"]));
    assert_eq!(o.len(), 5);
    assert_eq!(
        o.iter()
            .map(|r| r[1].parse::<usize>().unwrap())
            .sum::<usize>(),
        66
    );

    let i = orbit_rows(&output(&["orbits", "--pair", "I"]));
    assert_eq!(i.len(), 11);
    assert_eq!(
        i.iter()
            .map(|r| r[1].parse::<usize>().unwrap())
            .sum::<usize>(),
        435
    );
    assert_eq!(i.iter().filter(|r| r[4] == "4.00000000000000").count(), 1);
}

fn manifest(args: &[&str]) -> ExportManifest {
    let mut all = vec!["compound"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--format", "json"]);
    ExportManifest::from_json(&output(&all)).unwrap()
}

#[test]
fn compound_o6() {
    let m = manifest(&["--pair", "T", "--delta", "o6"]);
    assert_eq!(m.lines.len(), 6);
    assert!((m.radius - 1.0).abs() < 1e-12);
    assert_eq!(m.pair, PairKind::Tetrahedral);
}

#[test]
fn compound_octahedral_touching_radius() {
    let m = manifest(&["--pair", "O", "--delta", "delta-max", "--radius", "auto"]);
    assert_eq!(m.lines.len(), 12);
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    assert!((m.radius - (7.0 - 5.0 * r2 - 4.0 * r3 + 3.0 * r6)).abs() < 1e-12);
}

#[test]
fn compound_tetrahedron_skeletons_survive_export() {
    let m = manifest(&["--pair", "I", "--delta", "min-2", "--radius", "0"]);
    assert_eq!(m.lines.len(), 30);
    assert_eq!(m.radius, 0.0);
    let pc = extract_compound(&DeltaConfiguration {
        pair: m.pair,
        delta: m.delta,
        lines: m.lines.clone(),
    })
    .unwrap();
    assert_eq!(pc.component_type, ComponentType::TetrahedronSkeleton);
    assert_eq!(pc.components.len(), 5);
}

#[test]
fn json_round_trip_preserves_geometry() {
    for args in [
        ["--pair", "T", "--delta", "0.3"],
        ["--pair", "O", "--delta", "delta-max"],
        ["--pair", "I", "--delta", "delta-max"],
    ] {
        let m = manifest(&args);
        let cli = Cli::try_parse_from(["cylcomp", "compound", args[0], args[1], args[2], args[3]])
            .unwrap();
        let cylcomp::Command::Compound(ca) = &cli.command else {
            unreachable!()
        };
        let direct = cylcomp::named_delta(ca.pair.0, ca.delta).unwrap();
        assert_eq!(m.delta, direct);
        let fresh = cylinder_compounds::rotation::rotated_configuration(m.pair, direct);
        assert!((m.min_distance() - configuration_min_distance(&fresh.lines)).abs() < 1e-12);
        for (a, b) in m.lines.iter().zip(&fresh.lines) {
            assert_eq!(a.tangency(), b.tangency());
            assert_eq!(a.direction(), b.direction());
        }
    }
}

#[test]
fn json_has_seventeen_significant_digits() {
    let text = output(&["compound", "--pair", "O", "--delta", "delta-max"]);
    let line = text.lines().find(|l| l.contains("\"delta\"")).unwrap();
    let number = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let mantissa = number.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
}

fn check_obj(text: &str, cylinders: usize, sphere: bool) {
    let vertices = text.lines().filter(|l| l.starts_with("v ")).count();
    let cyl_vertices = cylinders * (2 * PRISM_SIDES + 2);
    if sphere {
        assert!(vertices > cyl_vertices);
    } else {
        assert_eq!(vertices, cyl_vertices);
    }
    for f in text.lines().filter(|l| l.starts_with("f ")) {
        for idx in f.split_whitespace().skip(1) {
            let i: usize = idx.parse().unwrap();
            assert!(i >= 1 && i <= vertices, "{f}");
        }
    }
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("o cylinder_"))
            .count(),
        cylinders
    );
}

#[test]
fn obj_export_is_well_formed() {
    let text = output(&[
        "compound",
        "--pair",
        "O",
        "--delta",
        "delta-max",
        "--format",
        "obj",
    ]);
    check_obj(&text, 12, false);
    let text = output(&[
        "compound", "--pair", "I", "--delta", "0.5", "--format", "obj", "--sphere", "--length", "3",
    ]);
    check_obj(&text, 30, true);
    assert!(text.contains("o unit_sphere"));
}

#[test]
fn csv_export_lists_lines() {
    let (header, rows) = csv_rows(&output(&[
        "compound", "--pair", "T", "--delta", "o6", "--format", "csv",
    ]));
    assert_eq!(
        header,
        ["line", "tx", "ty", "tz", "ux", "uy", "uz", "radius"]
    );
    assert_eq!(rows.len(), 6);
}

#[test]
fn overlapping_radius_needs_force() {
    let e = exec(&[
        "compound",
        "--pair",
        "O",
        "--delta",
        "delta-max",
        "--radius",
        "0.4",
    ])
    .unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let m = ExportManifest::from_json(&output(&[
        "compound",
        "--pair",
        "O",
        "--delta",
        "delta-max",
        "--radius",
        "0.4",
        "--force",
    ]))
    .unwrap();
    assert_eq!(m.radius, 0.4);
    // The touching radius itself is accepted.
    output(&[
        "compound",
        "--pair",
        "O",
        "--delta",
        "delta-max",
        "--radius",
        "0.3491981862085",
    ]);
}

#[test]
fn named_delta_errors() {
    for args in [
        ["compound", "--pair", "O", "--delta", "o6"],
        ["compound", "--pair", "O", "--delta", "min-2"],
        ["compound", "--pair", "T", "--delta", "min-1"],
        ["compound", "--pair", "O", "--delta", "sideways"],
    ] {
        assert_eq!(exec(&args).unwrap_err().exit_code(), 2, "{args:?}");
    }
    assert_eq!(
        exec(&["compound", "--pair", "O", "--length", "0"])
            .unwrap_err()
            .exit_code(),
        2
    );
}

#[test]
fn malformed_json_is_rejected() {
    assert!(ExportManifest::from_json("{}").is_err());
    let bad = r#"{"pair":"O","delta":0.1,"radius":0.1,"lines":[{"tangency":[2,0,0],"direction":[0,1,0]}]}"#;
    assert!(ExportManifest::from_json(bad).is_err());
}

#[test]
fn minima_reports() {
    let o = output(&["minima", "--pair", "O", "--which", "1"]);
    assert!(o.contains("4 x triangle"));
    assert!(o.contains("edge length: 3.46410161513776"));
    assert!(o.contains("hull cuboctahedron"));
    assert!(o.contains("axial generation: yes"));

    let i1 = output(&["minima", "--pair", "I", "--which", "1"]);
    assert!(i1.contains("10 x triangle"));
    assert!(
        i1.contains("edge length: 3.46410161513775")
            || i1.contains("edge length: 3.46410161513776")
    );
    assert!(i1.contains("hull icosidodecahedron"));

    let i3 = output(&["minima", "--pair", "I", "--which", "3"]);
    assert!(i3.contains("6 x pentagonal-star"));
    let link = i3
        .lines()
        .find(|l| l.starts_with("linking of inner pentagons"))
        .unwrap();
    assert!(!link.contains("lk = 0"));

    assert_eq!(exec(&["minima", "--pair", "T"]).unwrap_err().exit_code(), 2);
    assert_eq!(
        exec(&["minima", "--pair", "I", "--which", "4"])
            .unwrap_err()
            .exit_code(),
        2
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cylcomp");
    let ok = Process::new(bin)
        .args(["orbits", "--pair", "T"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Process::new(bin)
        .args(["orbits", "--pair", "X"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let refused = Process::new(bin)
        .args([
            "compound", "--pair", "T", "--delta", "o6", "--radius", "1.5",
        ])
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--force"));
}
