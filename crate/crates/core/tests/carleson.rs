mod common;

use bary_core::carleson::{self, carleson_norm, dilatation_measure, kernel_transform, vanishing_profile};
use bary_core::circle_maps::flow_homeo;
use bary_core::{CarlesonConfig, Domain, PolarGrid, RadialGridMeasure, SolverConfig, TrigPolynomial};
use std::f64::consts::{FRAC_PI_2, PI};

/// Area of `𝔻 ∩ D(ζ, r)` for `|ζ| = 1`, `0 < r ≤ 2`.
fn lens_area(r: f64) -> f64 {
    r * r * (r / 2.0).acos() + (1.0 - r * r / 2.0).acos() - 0.5 * r * (4.0 - r * r).sqrt()
}

fn lens_sup() -> f64 {
    (1..=200_000)
        .map(|k| 2.0 * k as f64 / 200_000.0)
        .map(|r| lens_area(r) / r)
        .fold(0.0, f64::max)
}

#[test]
fn lens_oracle_sanity() {
    assert!((lens_area(2.0) - PI).abs() < 1e-12);
    assert!((lens_area(1e-3) / 1e-6 - FRAC_PI_2).abs() < 1e-3);
    assert!((lens_sup() - 1.6201478).abs() < 1e-6);
}

#[test]
fn area_measure_norm() {
    let m = RadialGridMeasure::area(PolarGrid::unit(200, 256).unwrap()).unwrap();
    let norm = carleson_norm(&m, &CarlesonConfig::default());
    assert!((norm - FRAC_PI_2).abs() < 0.05 * FRAC_PI_2, "{norm}");
    assert!((norm - lens_sup()).abs() < 0.01 * lens_sup(), "{norm}");
    assert!((m.total_mass() - PI).abs() < 1e-12);
}

#[test]
fn area_estimate_improves_under_refinement() {
    let exact = lens_sup();
    let cfg = CarlesonConfig::default();
    let coarse = carleson_norm(
        &RadialGridMeasure::area(PolarGrid::unit(50, 64).unwrap()).unwrap(),
        &cfg,
    );
    let fine = carleson_norm(
        &RadialGridMeasure::area(PolarGrid::unit(200, 256).unwrap()).unwrap(),
        &cfg.refined(),
    );
    assert!((fine - exact).abs() < (coarse - exact).abs(), "{coarse} {fine} {exact}");
}

#[test]
fn profile_tracks_lens_areas() {
    let m = RadialGridMeasure::area(PolarGrid::unit(200, 256).unwrap()).unwrap();
    let profile = vanishing_profile(&m, &CarlesonConfig::default());
    for (r, ratio) in profile.radii.iter().zip(&profile.ratios) {
        if *r >= 0.1 {
            let exact = lens_area(*r) / r;
            assert!((ratio - exact).abs() < 0.05 * exact, "r = {r}: {ratio} vs {exact}");
        }
    }
    // small arcs: ratio ≈ (π/2) r
    let small: Vec<_> = profile
        .radii
        .iter()
        .zip(&profile.ratios)
        .filter(|(r, _)| **r < 0.2 && **r > 0.05)
        .collect();
    assert!(!small.is_empty());
    for (r, ratio) in small {
        assert!(
            (ratio / r - FRAC_PI_2).abs() < 0.15 * FRAC_PI_2,
            "r = {r}: {}",
            ratio / r
        );
    }
}

#[test]
fn norm_is_homogeneous_and_monotone() {
    let grid = PolarGrid::unit(60, 96).unwrap();
    let cfg = CarlesonConfig::default();
    let m = RadialGridMeasure::on_disk(grid, |z| 1.0 + z.re * z.re).unwrap();
    let base = carleson_norm(&m, &cfg);
    assert!((carleson_norm(&m.scale(3.5).unwrap(), &cfg) - 3.5 * base).abs() < 1e-12 * base);
    let bigger = RadialGridMeasure::on_disk(grid, |z| 1.0 + z.re * z.re + (1.0 - z.norm()).max(0.0)).unwrap();
    assert!(carleson_norm(&bigger, &cfg) >= base);
    assert!(m.scale(-1.0).is_err());
}

#[test]
fn non_carleson_density_has_bounded_below_profile() {
    let grid = PolarGrid::unit(200, 128).unwrap();
    let cfg = CarlesonConfig::default();
    let m = RadialGridMeasure::on_disk(grid, |z| 1.0 / (1.0 - z.norm())).unwrap();
    let profile = vanishing_profile(&m, &cfg);
    let smallest = profile.ratios.first().copied().unwrap();
    assert!(smallest > 1.0, "{smallest}");
    let area = vanishing_profile(&RadialGridMeasure::area(grid).unwrap(), &cfg);
    assert!(area.ratios[0] < 0.05);
}

#[test]
fn kernel_transform_of_area_at_origin() {
    let grid = PolarGrid::unit(100, 64).unwrap();
    let m = RadialGridMeasure::area(grid).unwrap();
    let t = kernel_transform(&m, 1.0, 1.0).unwrap();
    // at the innermost ring the kernel is close to its value at 0
    let inner = t.density()[0];
    assert!((inner - FRAC_PI_2).abs() < 0.01, "{inner}");
    assert!(kernel_transform(&m, 0.0, 1.0).is_err());
}

#[test]
fn kernel_transform_is_linear() {
    let grid = PolarGrid::unit(24, 32).unwrap();
    let a = RadialGridMeasure::on_disk(grid, |z| z.re.abs()).unwrap();
    let b = RadialGridMeasure::on_disk(grid, |z| 1.0 + z.im).unwrap();
    let sum = RadialGridMeasure::new(
        Domain::Disk,
        grid,
        a.density().iter().zip(b.density()).map(|(x, y)| 2.0 * x + y).collect(),
    )
    .unwrap();
    let (ta, tb, ts) = (
        kernel_transform(&a, 1.0, 2.0).unwrap(),
        kernel_transform(&b, 1.0, 2.0).unwrap(),
        kernel_transform(&sum, 1.0, 2.0).unwrap(),
    );
    for i in 0..grid.len() {
        let expected = 2.0 * ta.density()[i] + tb.density()[i];
        assert!((ts.density()[i] - expected).abs() < 1e-12 * (1.0 + expected));
    }
}

#[test]
fn kernel_transform_preserves_carleson_bounds() {
    let grid = PolarGrid::unit(60, 64).unwrap();
    let cfg = CarlesonConfig::default();
    let measures = [
        RadialGridMeasure::area(grid).unwrap(),
        RadialGridMeasure::on_disk(grid, |z| (1.0 - z.norm_sqr()).powi(2) * (1.0 + z.re)).unwrap(),
        RadialGridMeasure::on_disk(grid, |z| if z.re > 0.5 { 4.0 } else { 0.0 }).unwrap(),
    ];
    let fitted = measures
        .iter()
        .map(|m| carleson_norm(&kernel_transform(m, 1.0, 1.0).unwrap(), &cfg) / carleson_norm(m, &cfg))
        .fold(0.0, f64::max);
    println!("fitted transform constant K = {fitted:.4}");
    assert!(fitted.is_finite() && fitted > 0.0 && fitted < 10.0);
}

#[test]
fn refined_configuration_is_stable() {
    let m = RadialGridMeasure::on_disk(PolarGrid::unit(120, 192).unwrap(), |z| (1.0 + z.re).powi(2)).unwrap();
    let cfg = CarlesonConfig::default();
    let (a, b) = (carleson_norm(&m, &cfg), carleson_norm(&m, &cfg.refined()));
    assert!((a - b).abs() < 0.02 * a, "{a} {b}");
}

#[test]
fn dilatation_measure_mass() {
    let cfg = SolverConfig {
        quad_points: 1024,
        ..SolverConfig::default()
    };
    let grid = PolarGrid::new(0.9, 6, 12).unwrap();
    let h = flow_homeo(&TrigPolynomial::cosine(2, 1.0), 0.05, 1024).unwrap();
    let field = bary_core::barycentric::dilatation_field(&h, &grid, cfg).unwrap();
    let m = dilatation_measure(&field).unwrap();
    let independent: f64 = field
        .values()
        .iter()
        .enumerate()
        .map(|(i, mu)| {
            let (j, _) = grid.split(i);
            let r = grid.radius(j);
            mu.norm_sqr() / (1.0 - r * r) * grid.cell_area(j)
        })
        .sum();
    assert!((m.total_mass() - independent).abs() < 1e-14 * independent.max(1e-300));
    assert!(m.total_mass() > 0.0);
    assert!(carleson::carleson_norm(&m, &CarlesonConfig::default()) > 0.0);
}
