//! Critical points of the minimum-distance curve δ ↦ min_k d_k²(δ).
//!
//! The curve is the lower envelope of the orbit branches. Its distinguished
//! points are smooth maxima of a single branch, corners where the active
//! branch changes, and zeros where two lines meet. Corners split into local
//! maxima (an increasing branch hands over to a decreasing one) and corners
//! whose one-sided slopes share a sign.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::geom::radius_from_distance;
use crate::platonic::PairKind;
use crate::rotation::{min_with_active, DeltaProcess};
use crate::{Error, Result};

/// Number of grid intervals on [0, π/2] used to find candidates.
pub const GRID_INTERVALS: usize = 4096;

/// Squared distances below this are zeros of the curve.
pub const ZERO_EPS: f64 = 1e-14;

/// Corners whose one-sided slopes differ by less than this are reported as
/// tangential crossings instead of being classified.
pub const TANGENTIAL_EPS: f64 = 1e-6;

const BISECTION_ITERS: usize = 200;
const SWITCH_DEPTH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    /// Interior maximum of one smooth branch.
    SmoothMax,
    /// Corner that is a local maximum of the curve.
    CornerMax,
    /// Corner whose left and right slopes have the same sign.
    Corner,
    /// Two branches touching with (almost) equal slopes; not classified.
    TangentialCrossing,
    /// Interior minimum of one branch with a positive value.
    SmoothMin,
    /// Some lines intersect.
    Zero,
    /// δ = 0 or δ = π/2.
    Endpoint,
}

impl CriticalKind {
    pub fn is_local_max(self) -> bool {
        matches!(self, CriticalKind::SmoothMax | CriticalKind::CornerMax)
    }

    pub fn is_corner(self) -> bool {
        matches!(self, CriticalKind::CornerMax | CriticalKind::Corner)
    }

    pub fn name(self) -> &'static str {
        match self {
            CriticalKind::SmoothMax => "smooth-max",
            CriticalKind::CornerMax => "corner-max",
            CriticalKind::Corner => "corner",
            CriticalKind::TangentialCrossing => "tangential",
            CriticalKind::SmoothMin => "smooth-min",
            CriticalKind::Zero => "zero",
            CriticalKind::Endpoint => "endpoint",
        }
    }
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub delta: f64,
    pub d_sq: f64,
    pub radius: f64,
    pub kind: CriticalKind,
    pub active_orbits: Vec<usize>,
    /// Left and right derivatives of the curve, for corners.
    pub slopes: Option<(f64, f64)>,
}

impl CriticalPoint {
    fn new(
        p: &DeltaProcess,
        delta: f64,
        kind: CriticalKind,
        slopes: Option<(f64, f64)>,
    ) -> CriticalPoint {
        let (d_sq, active_orbits) = p.min_distance_sq(delta);
        let kind = if kind != CriticalKind::Endpoint && d_sq < ZERO_EPS {
            CriticalKind::Zero
        } else {
            kind
        };
        CriticalPoint {
            delta,
            d_sq,
            radius: touching_radius(d_sq),
            kind,
            active_orbits,
            slopes,
        }
    }
}

/// Radius of touching cylinders for a squared line distance.
pub fn touching_radius(d_sq: f64) -> f64 {
    radius_from_distance(d_sq.max(0.0).sqrt()).unwrap_or(f64::INFINITY)
}

/// Bisection for a sign change of `f` on `[lo, hi]`. Returns the midpoint of
/// the final bracket.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::Internal(format!(
            "no sign change on [{lo:.15}, {hi:.15}]: f = {flo:e}, {fhi:e}"
        )));
    }
    let lo_sign = flo.signum();
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`, to bracket
/// width `tol`.
pub fn golden_section_max<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

struct Scan<'a> {
    p: &'a DeltaProcess,
    out: Vec<CriticalPoint>,
}

impl Scan<'_> {
    fn branch(&self, k: usize, d: f64) -> f64 {
        self.p.branch_distance_sq(k, d).expect("label in range")
    }

    fn slope(&self, k: usize, d: f64) -> f64 {
        self.p.branch_derivative(k, d).expect("label in range")
    }

    fn active(&self, d: f64) -> usize {
        argmin(&self.p.all_branches(d))
    }

    /// Pushes a smooth max, smooth min or zero of branch `k` on `[lo, hi]`,
    /// if the branch has one there and is still the minimum at that point.
    fn branch_extrema(&mut self, k: usize, lo: f64, hi: f64) -> Result<()> {
        let s_lo = self.p.branch_signed_distance(k, lo)?;
        let s_hi = self.p.branch_signed_distance(k, hi)?;
        if let (Some(a), Some(b)) = (s_lo, s_hi) {
            if a * b <= 0.0 && (a != 0.0 || b != 0.0) {
                let z = bisect(
                    |d| {
                        self.p
                            .branch_signed_distance(k, d)
                            .ok()
                            .flatten()
                            .unwrap_or(f64::NAN)
                    },
                    lo,
                    hi,
                )?;
                let point = CriticalPoint::new(self.p, z, CriticalKind::Zero, None);
                self.out.push(point);
                return Ok(());
            }
        }
        let (g_lo, g_hi) = (self.slope(k, lo), self.slope(k, hi));
        let kind = if g_lo > 0.0 && g_hi <= 0.0 {
            CriticalKind::SmoothMax
        } else if g_lo < 0.0 && g_hi >= 0.0 {
            CriticalKind::SmoothMin
        } else {
            return Ok(());
        };
        let x = bisect(|d| self.slope(k, d), lo, hi)?;
        if self.active(x) != k && !self.p.min_distance_sq(x).1.contains(&k) {
            return Ok(());
        }
        self.out.push(CriticalPoint::new(self.p, x, kind, None));
        Ok(())
    }

    /// Resolves every change of the active branch inside `[lo, hi]`.
    fn switches(&mut self, lo: f64, hi: f64, a: usize, b: usize, depth: usize) -> Result<()> {
        if a == b {
            return self.branch_extrema(a, lo, hi);
        }
        if depth == 0 {
            return self.corner(lo, hi, a, b);
        }
        let mid = 0.5 * (lo + hi);
        let m = self.active(mid);
        self.switches(lo, mid, a, m, depth - 1)?;
        self.switches(mid, hi, m, b, depth - 1)
    }

    fn corner(&mut self, lo: f64, hi: f64, a: usize, b: usize) -> Result<()> {
        let x = bisect(|d| self.branch(a, d) - self.branch(b, d), lo, hi).map_err(|e| {
            Error::Internal(format!(
                "corner between orbits {a} and {b} on [{lo:.12}, {hi:.12}] not bracketed: {e}"
            ))
        })?;
        if self.branch(a, x) < ZERO_EPS {
            // Two branches vanishing together; the zero scan reports it.
            return Ok(());
        }
        self.branch_extrema(a, lo, x)?;
        self.branch_extrema(b, x, hi)?;
        let (left, right) = (self.slope(a, x), self.slope(b, x));
        let kind = if (left - right).abs() < TANGENTIAL_EPS {
            CriticalKind::TangentialCrossing
        } else if left > 0.0 && right < 0.0 {
            CriticalKind::CornerMax
        } else {
            CriticalKind::Corner
        };
        self.out
            .push(CriticalPoint::new(self.p, x, kind, Some((left, right))));
        Ok(())
    }
}

/// All distinguished points of the minimum-distance curve on [0, π/2],
/// sorted by δ, endpoints included.
pub fn critical_catalog(pair: PairKind) -> Result<Vec<CriticalPoint>> {
    let p = DeltaProcess::new(pair)?;
    critical_catalog_with(&p, GRID_INTERVALS)
}

pub fn critical_catalog_with(p: &DeltaProcess, intervals: usize) -> Result<Vec<CriticalPoint>> {
    let step = FRAC_PI_2 / intervals as f64;
    let grid: Vec<f64> = (0..=intervals).map(|i| i as f64 * step).collect();
    let rows: Vec<Vec<f64>> = grid.iter().map(|&d| p.all_branches(d)).collect();
    let active: Vec<usize> = rows.iter().map(|r| argmin(r)).collect();
    let mins: Vec<f64> = rows.iter().map(|r| min_with_active(r).0).collect();

    let mut scan = Scan { p, out: Vec::new() };
    scan.out
        .push(CriticalPoint::new(p, 0.0, CriticalKind::Endpoint, None));
    for i in 1..=intervals {
        let (lo, hi) = (grid[i - 1], grid[i]);
        let touches_zero_end =
            (i == 1 && mins[0] < ZERO_EPS) || (i == intervals && mins[intervals] < ZERO_EPS);
        if touches_zero_end {
            // Many branches vanish together at the solids themselves.
            continue;
        }
        scan.switches(lo, hi, active[i - 1], active[i], SWITCH_DEPTH)
            .map_err(|e| {
                Error::Internal(format!(
                    "pair {}: grid interval {i} [{lo:.9}, {hi:.9}], active {} -> {}, min {:e} -> {:e}: {e}",
                    p.pair(),
                    active[i - 1],
                    active[i],
                    mins[i - 1],
                    mins[i]
                ))
            })?;
    }
    scan.out.push(CriticalPoint::new(
        p,
        FRAC_PI_2,
        CriticalKind::Endpoint,
        None,
    ));

    let mut points = scan.out;
    points.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    points.dedup_by(|b, a| (a.delta - b.delta).abs() < 1e-9 && a.kind == b.kind);
    Ok(points)
}

/// Local maxima of the curve (smooth or corner) from a catalog.
pub fn local_maxima(catalog: &[CriticalPoint]) -> Vec<&CriticalPoint> {
    catalog.iter().filter(|c| c.kind.is_local_max()).collect()
}

/// The global maximum of the curve.
pub fn global_maximum(catalog: &[CriticalPoint]) -> Option<&CriticalPoint> {
    catalog
        .iter()
        .filter(|c| c.kind.is_local_max())
        .max_by(|a, b| a.d_sq.total_cmp(&b.d_sq))
}

/// Interior zeros in increasing δ.
pub fn interior_zeros(catalog: &[CriticalPoint]) -> Vec<&CriticalPoint> {
    catalog
        .iter()
        .filter(|c| c.kind == CriticalKind::Zero)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchMaximum {
    pub delta: f64,
    pub d_sq: f64,
    /// False when the branch is monotone and peaks at an end of [0, π/2].
    pub interior: bool,
}

/// Maximum of a single orbit branch on [0, π/2]: golden-section search to
/// bracket it, then bisection on the exact derivative.
pub fn maximize_branch(pair: PairKind, orbit_label: usize) -> Result<BranchMaximum> {
    let p = DeltaProcess::new(pair)?;
    maximize_branch_with(&p, orbit_label)
}

pub fn maximize_branch_with(p: &DeltaProcess, label: usize) -> Result<BranchMaximum> {
    let f = |d: f64| p.branch_distance_sq(label, d).expect("label checked");
    p.orbits().get(label)?;
    let x = golden_section_max(f, 0.0, FRAC_PI_2, 1e-7);
    let endpoint = |d: f64| BranchMaximum {
        delta: d,
        d_sq: f(d),
        interior: false,
    };
    if !(1e-6..=FRAC_PI_2 - 1e-6).contains(&x) {
        let best = if f(0.0) >= f(FRAC_PI_2) {
            0.0
        } else {
            FRAC_PI_2
        };
        return Ok(endpoint(best));
    }
    let g = |d: f64| p.branch_derivative(label, d).expect("label checked");
    let mut h = 1e-6;
    while !(g(x - h) > 0.0 && g(x + h) < 0.0) {
        h *= 2.0;
        if x - h < 0.0 || x + h > FRAC_PI_2 {
            // Flat or monotone near x; keep the golden-section estimate.
            return Ok(BranchMaximum {
                delta: x,
                d_sq: f(x),
                interior: true,
            });
        }
    }
    let delta = bisect(g, x - h, x + h)?;
    Ok(BranchMaximum {
        delta,
        d_sq: f(delta),
        interior: true,
    })
}

/// Real polynomial with coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<f64>) -> Result<Polynomial> {
        while coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            return Err(Error::Domain(
                "zero polynomial has no leading coefficient".into(),
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite polynomial coefficient".into()));
        }
        Ok(Polynomial { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }
}

/// 5t⁶ − 80t⁵ + 190t³ − 4t² − 84t + 9, whose root t₀ ≈ 0.694356 gives
/// tan² of the maximizing angle for the icosahedral pair.
pub fn icosahedral_max_polynomial() -> Polynomial {
    Polynomial::new(vec![9.0, -84.0, -4.0, 190.0, 0.0, -80.0, 5.0]).expect("nonzero")
}

pub const ROOT_GRID_STEP: f64 = 1e-4;
pub const ROOT_TOL: f64 = 1e-13;

/// Real roots of `p` in `[lo, hi]`, found from sign changes on a grid of
/// step 1e-4 and refined by bisection. Roots of even multiplicity that do
/// not change sign between grid points are not found.
pub fn real_roots(p: &Polynomial, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::Domain(format!("bad interval [{lo}, {hi}]")));
    }
    let steps = ((hi - lo) / ROOT_GRID_STEP).ceil().max(1.0) as usize;
    let x_at = |i: usize| {
        if i == steps {
            hi
        } else {
            lo + i as f64 * ROOT_GRID_STEP
        }
    };
    let mut roots: Vec<f64> = Vec::new();
    let mut prev_x = x_at(0);
    let mut prev = p.eval(prev_x);
    if prev == 0.0 {
        roots.push(prev_x);
    }
    let mut sign_changes = 0;
    for i in 1..=steps {
        let x = x_at(i);
        let v = p.eval(x);
        if v == 0.0 {
            roots.push(x);
        } else if prev != 0.0 && prev.signum() != v.signum() {
            sign_changes += 1;
            let mut a = prev_x;
            let mut b = x;
            let sa = prev.signum();
            while b - a > ROOT_TOL {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let fm = p.eval(m);
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == sa {
                    a = m;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev = v;
    }
    let exact = roots.len() - sign_changes;
    debug_assert_eq!(roots.len(), sign_changes + exact);
    Ok(roots)
}

/// Closed forms of the distinguished angles and values.
pub mod exact {
    use crate::platonic::golden_ratio;

    /// tan δ_𝒪 = 3^{1/4}/√2.
    pub fn delta_octahedral() -> f64 {
        (3f64.powf(0.25) / 2f64.sqrt()).atan()
    }

    /// d_𝒪² = 2 − √3.
    pub fn d_sq_octahedral() -> f64 {
        2.0 - 3f64.sqrt()
    }

    /// r_𝒪 = (√3 − 1)/(1 + 2√2 − √3) = 7 − 5√2 − 4√3 + 3√6.
    pub fn radius_octahedral() -> f64 {
        let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
        (r3 - 1.0) / (1.0 + 2.0 * r2 - r3)
    }

    /// tan δ_ℐ = (6/(5+√5))^{1/4}; the maximum of the neighboring branch.
    pub fn delta_icosahedral_neighbor() -> f64 {
        (6.0 / (5.0 + 5f64.sqrt())).powf(0.25).atan()
    }

    /// d_ℐ² = (9 − √5 − √(6(5+√5)))/4.
    pub fn d_sq_icosahedral_neighbor() -> f64 {
        let r5 = 5f64.sqrt();
        (9.0 - r5 - (6.0 * (5.0 + r5)).sqrt()) / 4.0
    }

    /// The first printed form of d_ℐ².
    pub fn d_sq_icosahedral_neighbor_fraction() -> f64 {
        let r5 = 5f64.sqrt();
        let q = (6.0 * (5.0 + r5)).sqrt();
        2.0 * q / (75.0 + 33.0 * r5 + 12.0 * q + 5.0 * (30.0 * (5.0 + r5)).sqrt())
    }

    /// The squared-difference form of d_ℐ².
    pub fn d_sq_icosahedral_neighbor_square() -> f64 {
        let tau = golden_ratio();
        (5f64.powf(0.25) * (3.0 * tau).sqrt() / (2.0 * tau) - tau / 2.0).powi(2)
    }

    /// r_ℐ = 11 − 5√5 + √(3(85 − 38√5)).
    pub fn radius_icosahedral_neighbor() -> f64 {
        let r5 = 5f64.sqrt();
        11.0 - 5.0 * r5 + (3.0 * (85.0 - 38.0 * r5)).sqrt()
    }

    /// The nontrivial zero of the octahedral curve, arctan √2.
    pub fn octahedral_zero() -> f64 {
        2f64.sqrt().atan()
    }

    /// The three nontrivial zeros of the icosahedral curve.
    pub fn icosahedral_zeros() -> [f64; 3] {
        [
            0.5 * (2.0 / 5f64.sqrt()).atan(),
            std::f64::consts::FRAC_PI_4,
            golden_ratio().atan(),
        ]
    }
}

/// Outcome of checking r_ℐ = 12x³ − 62x² + 74x − 3 at x = d_ℐ².
#[derive(Debug, Clone, Copy)]
pub struct RadiiIdentityReport {
    pub d_sq: f64,
    pub radius: f64,
    pub radius_from_polynomial: f64,
    pub radius_from_distance: f64,
    pub residual: f64,
}

impl RadiiIdentityReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.residual < tol && (self.radius - self.radius_from_distance).abs() < tol
    }
}

pub fn radii_identity_check() -> RadiiIdentityReport {
    let x = exact::d_sq_icosahedral_neighbor();
    let r = exact::radius_icosahedral_neighbor();
    let poly = 12.0 * x.powi(3) - 62.0 * x * x + 74.0 * x - 3.0;
    RadiiIdentityReport {
        d_sq: x,
        radius: r,
        radius_from_polynomial: poly,
        radius_from_distance: touching_radius(x),
        residual: (poly - r).abs(),
    }
}
