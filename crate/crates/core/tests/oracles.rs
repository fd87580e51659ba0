//! Cross-checks of the catalog and orbit machinery against plain sampling.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use cylinder_compounds::criticality::{critical_catalog, exact, interior_zeros, CriticalKind};
use cylinder_compounds::line_distance;
use cylinder_compounds::rotation::{rotated_configuration, DeltaProcess};
use cylinder_compounds::PairKind;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn min_curve(p: &DeltaProcess, d: f64) -> f64 {
    p.min_distance_sq(d).0
}

#[test]
fn distance_signatures_separate_orbits() {
    let mut rng = StdRng::seed_from_u64(3);
    let deltas: Vec<f64> = (0..4).map(|_| rng.gen_range(0.05..1.5)).collect();
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        let configs: Vec<_> = deltas
            .iter()
            .map(|&d| rotated_configuration(pair, d).lines)
            .collect();
        let n = configs[0].len();
        let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let sig: Vec<i64> = configs
                    .iter()
                    .map(|lines| (line_distance(&lines[a], &lines[b]) * 1e8).round() as i64)
                    .collect();
                let label = p.orbits().label_of(a, b).unwrap();
                classes.entry(sig).or_default().push(label);
            }
        }
        assert_eq!(classes.len(), p.branch_count(), "{pair}");
        for labels in classes.values() {
            assert!(
                labels.iter().all(|&l| l == labels[0]),
                "{pair}: signature shared by orbits {labels:?}"
            );
        }
    }
}

#[test]
fn catalog_maximum_dominates_dense_samples() {
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        let cat = critical_catalog(pair).unwrap();
        let best = cat.iter().map(|c| c.d_sq).fold(0.0, f64::max);
        let sampled = (0..=20000)
            .map(|i| min_curve(&p, FRAC_PI_2 * i as f64 / 20000.0))
            .fold(0.0, f64::max);
        assert!(best >= sampled - 1e-15, "{pair}: {best} < {sampled}");
        assert!(
            best - sampled < 1e-6,
            "{pair}: sampling misses the maximum by {}",
            best - sampled
        );
    }
}

#[test]
fn maxima_are_local_maxima_of_the_sampled_curve() {
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        for c in critical_catalog(pair)
            .unwrap()
            .iter()
            .filter(|c| c.kind.is_local_max())
        {
            for h in [1e-3, 1e-5, 1e-7] {
                assert!(min_curve(&p, c.delta - h) < c.d_sq, "{pair} at {}", c.delta);
                assert!(min_curve(&p, c.delta + h) < c.d_sq, "{pair} at {}", c.delta);
            }
        }
    }
}

#[test]
fn smooth_maxima_have_zero_slope() {
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        for c in critical_catalog(pair)
            .unwrap()
            .iter()
            .filter(|c| c.kind == CriticalKind::SmoothMax)
        {
            let h = 1e-5;
            let slope = (min_curve(&p, c.delta + h) - min_curve(&p, c.delta - h)) / (2.0 * h);
            assert!(slope.abs() < 1e-8, "{pair} at {}: slope {slope}", c.delta);
            let curvature =
                (min_curve(&p, c.delta + h) - 2.0 * c.d_sq + min_curve(&p, c.delta - h)) / (h * h);
            assert!(curvature < 0.0);
        }
    }
}

#[test]
fn corner_slopes_match_one_sided_differences() {
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        for c in critical_catalog(pair)
            .unwrap()
            .iter()
            .filter(|c| c.kind.is_corner())
        {
            let (left, right) = c.slopes.expect("corners carry slopes");
            let h = 1e-7;
            let fd_left = (c.d_sq - min_curve(&p, c.delta - h)) / h;
            let fd_right = (min_curve(&p, c.delta + h) - c.d_sq) / h;
            let tol = 1e-4 * (1.0 + left.abs().max(right.abs()));
            assert!(
                (fd_left - left).abs() < tol,
                "{pair} at {}: {fd_left} vs {left}",
                c.delta
            );
            assert!(
                (fd_right - right).abs() < tol,
                "{pair} at {}: {fd_right} vs {right}",
                c.delta
            );
            assert!(
                (left - right).abs() > 1e-6,
                "{pair} at {}: no kink",
                c.delta
            );
            if c.kind == CriticalKind::CornerMax {
                assert!(left > 0.0 && right < 0.0);
            }
        }
    }
}

#[test]
fn catalog_zeros_are_the_exact_zeros() {
    let o: Vec<f64> = interior_zeros(&critical_catalog(PairKind::Octahedral).unwrap())
        .iter()
        .map(|c| c.delta)
        .collect();
    assert_eq!(o.len(), 1);
    assert!((o[0] - exact::octahedral_zero()).abs() < 1e-9);

    let i: Vec<f64> = interior_zeros(&critical_catalog(PairKind::Icosahedral).unwrap())
        .iter()
        .map(|c| c.delta)
        .collect();
    assert_eq!(i.len(), 3);
    for (got, want) in i.iter().zip(exact::icosahedral_zeros()) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
    assert!(interior_zeros(&critical_catalog(PairKind::Tetrahedral).unwrap()).is_empty());
}

#[test]
fn icosahedral_neighbor_peak_is_not_active() {
    let p = DeltaProcess::new(PairKind::Icosahedral).unwrap();
    let d = exact::delta_icosahedral_neighbor();
    let nb = p.orbits().neighboring_orbit();
    let (min_sq, active) = p.min_distance_sq(d);
    assert!(!active.contains(&nb));
    assert!(p.branch_distance_sq(nb, d).unwrap() - min_sq > 0.04);
}

#[test]
fn octahedral_neighbor_peak_is_active_alone() {
    let p = DeltaProcess::new(PairKind::Octahedral).unwrap();
    let (_, active) = p.min_distance_sq(exact::delta_octahedral());
    assert_eq!(active, vec![p.orbits().neighboring_orbit()]);
}

#[test]
fn exact_derivative_agrees_with_differences_everywhere() {
    let mut rng = StdRng::seed_from_u64(5);
    for pair in PairKind::ALL {
        let p = DeltaProcess::new(pair).unwrap();
        for _ in 0..40 {
            let d = rng.gen_range(0.01..1.56);
            for k in 0..p.branch_count() {
                let h = 1e-6;
                let fd = (p.branch_distance_sq(k, d + h).unwrap()
                    - p.branch_distance_sq(k, d - h).unwrap())
                    / (2.0 * h);
                let exact = p.branch_derivative(k, d).unwrap();
                assert!(
                    (fd - exact).abs() < 1e-6 * (1.0 + exact.abs()),
                    "{pair} orbit {k} at {d}"
                );
            }
        }
    }
}
