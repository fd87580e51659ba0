//! Serialized cylinder configurations.
//!
//! A cylinder of radius `r` whose tangent ruling touches the unit sphere at
//! `m` with direction `u` has its axis along `u` through `(1 + r) m`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use cylinder_compounds::rotation::configuration_min_distance;
use cylinder_compounds::{PairKind, TangentLine, Vec3};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::{CliError, OutputFormat, Result};

/// Polygon sides used for each cylinder cross-section.
pub const PRISM_SIDES: usize = 48;
const SPHERE_STACKS: usize = 24;

#[derive(Debug, Clone)]
pub struct ExportManifest {
    pub pair: PairKind,
    pub delta: f64,
    pub radius: f64,
    pub lines: Vec<TangentLine>,
    pub format: OutputFormat,
}

impl ExportManifest {
    pub fn min_distance(&self) -> f64 {
        configuration_min_distance(&self.lines)
    }

    pub fn render(&self, length: f64, sphere: bool) -> Result<String> {
        match self.format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Obj => Ok(self.to_obj(length, sphere)),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let lines = self
            .lines
            .iter()
            .map(|l| {
                Ok(JsonLine {
                    tangency: raw_vec(l.tangency())?,
                    direction: raw_vec(l.direction())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let doc = JsonOut {
            pair: self.pair.letter().to_string(),
            delta: raw(self.delta)?,
            radius: raw(self.radius)?,
            lines,
        };
        let mut s =
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Input(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<ExportManifest> {
        let doc: JsonIn = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        let pair = doc.pair.parse::<PairKind>()?;
        let lines = doc
            .lines
            .iter()
            .map(|l| {
                TangentLine::new(Vec3::from_array(l.tangency), Vec3::from_array(l.direction))
                    .map_err(CliError::from)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExportManifest {
            pair,
            delta: doc.delta,
            radius: doc.radius,
            lines,
            format: OutputFormat::Json,
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["line", "tx", "ty", "tz", "ux", "uy", "uz", "radius"])?;
        for (i, l) in self.lines.iter().enumerate() {
            let (m, u) = (l.tangency(), l.direction());
            let mut rec = vec![i.to_string()];
            rec.extend([m.x, m.y, m.z, u.x, u.y, u.z, self.radius].map(|x| format!("{x:.16e}")));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
    }

    /// Wavefront OBJ: every cylinder as a closed 48-gon prism of half-length
    /// `length` (96 rim vertices and 2 cap centres), then optionally the unit
    /// sphere.
    pub fn to_obj(&self, length: f64, sphere: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# cylcomp pair={} delta={:.16e} radius={:.16e} half_length={}",
            self.pair.letter(),
            self.delta,
            self.radius,
            length
        );
        let mut next = 1usize;
        for (k, l) in self.lines.iter().enumerate() {
            let _ = writeln!(s, "o cylinder_{k}");
            let (m, u) = (l.tangency(), l.direction());
            let axis = m * (1.0 + self.radius);
            let e2 = u.cross(m);
            for end in [-length, length] {
                let c = axis + u * end;
                for j in 0..PRISM_SIDES {
                    let a = 2.0 * PI * j as f64 / PRISM_SIDES as f64;
                    write_v(&mut s, c + (m * a.cos() + e2 * a.sin()) * self.radius);
                }
            }
            write_v(&mut s, axis - u * length);
            write_v(&mut s, axis + u * length);
            let bottom = |j: usize| next + j % PRISM_SIDES;
            let top = |j: usize| next + PRISM_SIDES + j % PRISM_SIDES;
            let (cb, ct) = (next + 2 * PRISM_SIDES, next + 2 * PRISM_SIDES + 1);
            for j in 0..PRISM_SIDES {
                let _ = writeln!(
                    s,
                    "f {} {} {} {}",
                    bottom(j),
                    bottom(j + 1),
                    top(j + 1),
                    top(j)
                );
                let _ = writeln!(s, "f {} {} {}", cb, bottom(j + 1), bottom(j));
                let _ = writeln!(s, "f {} {} {}", ct, top(j), top(j + 1));
            }
            next += 2 * PRISM_SIDES + 2;
        }
        if sphere {
            let _ = writeln!(s, "o unit_sphere");
            write_v(&mut s, -Vec3::Z);
            for i in 1..SPHERE_STACKS {
                let theta = PI * i as f64 / SPHERE_STACKS as f64;
                for j in 0..PRISM_SIDES {
                    let phi = 2.0 * PI * j as f64 / PRISM_SIDES as f64;
                    write_v(
                        &mut s,
                        Vec3::new(
                            theta.sin() * phi.cos(),
                            theta.sin() * phi.sin(),
                            -theta.cos(),
                        ),
                    );
                }
            }
            write_v(&mut s, Vec3::Z);
            let south = next;
            let ring = |i: usize, j: usize| next + 1 + (i - 1) * PRISM_SIDES + j % PRISM_SIDES;
            let north = next + 1 + (SPHERE_STACKS - 1) * PRISM_SIDES;
            for j in 0..PRISM_SIDES {
                let _ = writeln!(s, "f {} {} {}", south, ring(1, j + 1), ring(1, j));
                for i in 1..SPHERE_STACKS - 1 {
                    let _ = writeln!(
                        s,
                        "f {} {} {} {}",
                        ring(i, j),
                        ring(i, j + 1),
                        ring(i + 1, j + 1),
                        ring(i + 1, j)
                    );
                }
                let _ = writeln!(
                    s,
                    "f {} {} {}",
                    north,
                    ring(SPHERE_STACKS - 1, j),
                    ring(SPHERE_STACKS - 1, j + 1)
                );
            }
        }
        s
    }
}

fn write_v(s: &mut String, p: Vec3) {
    let _ = writeln!(s, "v {:.9} {:.9} {:.9}", p.x, p.y, p.z);
}

/// A JSON number with 17 significant digits, enough to round-trip any f64.
fn raw(x: f64) -> Result<Box<RawValue>> {
    if !x.is_finite() {
        return Err(CliError::Input(format!("cannot serialize {x}")));
    }
    RawValue::from_string(format!("{x:.16e}")).map_err(|e| CliError::Input(e.to_string()))
}

fn raw_vec(v: Vec3) -> Result<[Box<RawValue>; 3]> {
    Ok([raw(v.x)?, raw(v.y)?, raw(v.z)?])
}

#[derive(Serialize)]
struct JsonLine {
    tangency: [Box<RawValue>; 3],
    direction: [Box<RawValue>; 3],
}

#[derive(Serialize)]
struct JsonOut {
    pair: String,
    delta: Box<RawValue>,
    radius: Box<RawValue>,
    lines: Vec<JsonLine>,
}

#[derive(Deserialize)]
struct JsonLineIn {
    tangency: [f64; 3],
    direction: [f64; 3],
}

#[derive(Deserialize)]
struct JsonIn {
    pair: String,
    delta: f64,
    radius: f64,
    lines: Vec<JsonLineIn>,
}
