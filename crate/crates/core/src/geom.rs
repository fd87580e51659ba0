//! Small fixed-size 3D geometry: vectors, proper rotations and lines tangent
//! to the unit sphere.
//!
//! Everything is measured in units of the sphere radius, so the sphere the
//! lines touch is always the unit sphere centred at the origin.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::{Error, Result};

/// Tolerance for the geometric identities (unit length, orthogonality, ...).
pub const GEOM_EPS: f64 = 1e-12;

/// Cross products shorter than this are treated as parallel directions.
pub const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction. Panics on the zero vector in debug
    /// builds; callers only normalize vectors they know to be nonzero.
    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        debug_assert!(n > 0.0, "normalizing zero vector");
        self / n
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    /// Lexicographic comparison with a tolerance on each coordinate.
    pub fn cmp_approx(self, o: Vec3, tol: f64) -> std::cmp::Ordering {
        for (a, b) in [(self.x, o.x), (self.y, o.y), (self.z, o.z)] {
            if (a - b).abs() > tol {
                return a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal);
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Any unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(self) -> Vec3 {
        let pick = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Vec3::X
        } else if self.y.abs() <= self.z.abs() {
            Vec3::Y
        } else {
            Vec3::Z
        };
        self.cross(pick).normalized()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6}, {:.6})", self.x, self.y, self.z)
    }
}

/// A proper rotation of space, stored as a row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rotation by `angle` about the unit vector `axis`, counterclockwise when
    /// viewed from the tip of `axis` (Rodrigues' formula).
    pub fn about_axis(axis: Vec3, angle: f64) -> Result<Rotation> {
        if !axis.is_finite() || (axis.norm() - 1.0).abs() > GEOM_EPS {
            return Err(Error::Domain(format!(
                "rotation axis must be a unit vector, got |axis| = {}",
                axis.norm()
            )));
        }
        Ok(Self::about_unit_axis(axis, angle))
    }

    pub(crate) fn about_unit_axis(a: Vec3, angle: f64) -> Rotation {
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Rotation {
            m: [
                [
                    c + a.x * a.x * t,
                    a.x * a.y * t - a.z * s,
                    a.x * a.z * t + a.y * s,
                ],
                [
                    a.y * a.x * t + a.z * s,
                    c + a.y * a.y * t,
                    a.y * a.z * t - a.x * s,
                ],
                [
                    a.z * a.x * t - a.y * s,
                    a.z * a.y * t + a.x * s,
                    c + a.z * a.z * t,
                ],
            ],
        }
    }

    pub fn from_rows(m: [[f64; 3]; 3]) -> Rotation {
        Rotation { m }
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Rotation { m: out }
    }

    pub fn transpose(&self) -> Rotation {
        let m = &self.m;
        Rotation {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entrywise difference between two matrices.
    pub fn max_abs_diff(&self, other: &Rotation) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// Rotation angle in [0, π].
    pub fn angle(&self) -> f64 {
        ((self.trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    /// Unit rotation axis (sign unspecified for half-turns), or `None` for the
    /// identity.
    pub fn axis(&self) -> Option<Vec3> {
        let angle = self.angle();
        if angle < 1e-9 {
            return None;
        }
        let m = &self.m;
        let v = Vec3::new(m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]);
        if v.norm() > 1e-6 {
            return Some(v.normalized());
        }
        // Half-turn: R + I = 2 a aᵀ, take the largest column.
        let cols = [
            Vec3::new(m[0][0] + 1.0, m[1][0], m[2][0]),
            Vec3::new(m[0][1], m[1][1] + 1.0, m[2][1]),
            Vec3::new(m[0][2], m[1][2], m[2][2] + 1.0),
        ];
        cols.into_iter()
            .max_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
            .map(Vec3::normalized)
    }

    /// Order of the rotation as a group element, if it is at most `max`.
    pub fn order(&self, max: usize, tol: f64) -> Option<usize> {
        let mut acc = *self;
        for n in 1..=max {
            if acc.max_abs_diff(&Rotation::IDENTITY) < tol {
                return Some(n);
            }
            acc = acc.compose(self);
        }
        None
    }
}

/// A line touching the unit sphere: the point of tangency plus a unit
/// direction orthogonal to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentLine {
    tangency: Vec3,
    direction: Vec3,
}

impl TangentLine {
    pub fn new(tangency: Vec3, direction: Vec3) -> Result<TangentLine> {
        let line = TangentLine {
            tangency,
            direction,
        };
        line.validate()?;
        Ok(line)
    }

    /// Builds the line from an arbitrary nonzero direction, projecting out the
    /// component along the tangency point and normalizing both vectors.
    pub fn from_point_and_direction(tangency: Vec3, direction: Vec3) -> Result<TangentLine> {
        if tangency.norm() == 0.0 || !tangency.is_finite() || !direction.is_finite() {
            return Err(Error::Domain("degenerate tangent line".into()));
        }
        let t = tangency.normalized();
        let d = direction - t * direction.dot(t);
        if d.norm() < GEOM_EPS {
            return Err(Error::Domain("direction is parallel to the normal".into()));
        }
        Ok(TangentLine {
            tangency: t,
            direction: d.normalized(),
        })
    }

    pub(crate) fn new_unchecked(tangency: Vec3, direction: Vec3) -> TangentLine {
        TangentLine {
            tangency,
            direction,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.tangency;
        let d = self.direction;
        if !t.is_finite() || !d.is_finite() {
            return Err(Error::Domain("non-finite tangent line".into()));
        }
        if (t.norm() - 1.0).abs() > GEOM_EPS {
            return Err(Error::Domain(format!("|tangency| = {} is not 1", t.norm())));
        }
        if (d.norm() - 1.0).abs() > GEOM_EPS {
            return Err(Error::Domain(format!(
                "|direction| = {} is not 1",
                d.norm()
            )));
        }
        if t.dot(d).abs() > GEOM_EPS {
            return Err(Error::Domain(format!(
                "direction not orthogonal to tangency (dot = {})",
                t.dot(d)
            )));
        }
        Ok(())
    }

    pub fn tangency(&self) -> Vec3 {
        self.tangency
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn point_at(&self, s: f64) -> Vec3 {
        self.tangency + self.direction * s
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    pub fn parameter_of(&self, p: Vec3) -> f64 {
        (p - self.tangency).dot(self.direction)
    }

    pub fn transformed(&self, r: &Rotation) -> TangentLine {
        TangentLine {
            tangency: r.apply(self.tangency),
            direction: r.apply(self.direction),
        }
    }

    /// Rotates the direction by `delta` about the outward normal at the
    /// tangency point, counterclockwise viewed from outside the sphere.
    pub fn rotated(&self, delta: f64) -> TangentLine {
        let (s, c) = delta.sin_cos();
        let side = self.tangency.cross(self.direction);
        TangentLine {
            tangency: self.tangency,
            direction: self.direction * c + side * s,
        }
    }

    /// True when both describe the same set of points (direction sign ignored).
    pub fn same_line(&self, other: &TangentLine, tol: f64) -> bool {
        self.tangency.distance(other.tangency) < tol
            && self.direction.cross(other.direction).norm() < tol
    }
}

pub fn rotation_about_axis(axis: Vec3, angle: f64) -> Result<Rotation> {
    Rotation::about_axis(axis, angle)
}

pub fn rotate_tangent_line(l: &TangentLine, delta: f64) -> TangentLine {
    l.rotated(delta)
}

/// Signed distance between two non-parallel lines: the projection of the
/// tangency offset on the common normal `a.dir × b.dir`. Returns `None` for
/// parallel lines, where the sign is meaningless.
pub fn signed_line_distance(a: &TangentLine, b: &TangentLine) -> Option<f64> {
    let n = a.direction.cross(b.direction);
    let nn = n.norm();
    if nn < PARALLEL_EPS {
        return None;
    }
    Some((b.tangency - a.tangency).dot(n) / nn)
}

/// Euclidean distance between two infinite lines.
pub fn line_distance(a: &TangentLine, b: &TangentLine) -> f64 {
    match signed_line_distance(a, b) {
        Some(s) => s.abs(),
        None => {
            let w = b.tangency - a.tangency;
            (w - a.direction * w.dot(a.direction)).norm()
        }
    }
}

/// Midpoint of the shortest segment between two lines, together with the
/// line parameters of its endpoints. `None` for parallel lines.
pub fn closest_points(a: &TangentLine, b: &TangentLine) -> Option<(Vec3, f64, f64)> {
    let (u, v) = (a.direction, b.direction);
    let w0 = a.tangency - b.tangency;
    let uv = u.dot(v);
    let denom = 1.0 - uv * uv;
    if denom < PARALLEL_EPS * PARALLEL_EPS {
        return None;
    }
    let d = u.dot(w0);
    let e = v.dot(w0);
    let s = (uv * e - d) / denom;
    let t = (e - uv * d) / denom;
    let mid = (a.point_at(s) + b.point_at(t)) * 0.5;
    Some((mid, s, t))
}

/// Cylinder radius at which cylinders with tangent rulings at distance `d`
/// just touch: r = d / (2 - d).
pub fn radius_from_distance(d: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&d) {
        return Err(Error::Domain(format!(
            "distance {d} outside [0, 2) has no finite touching radius"
        )));
    }
    Ok(d / (2.0 - d))
}

/// Inverse of [`radius_from_distance`]: d = 2r / (1 + r).
pub fn distance_from_radius(r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!("radius {r} must be finite and >= 0")));
    }
    Ok(2.0 * r / (1.0 + r))
}
