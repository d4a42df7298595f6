mod common;

use bary_core::schwarzian::{
    ahlfors_weill_mu, curly_b_norm, disk_representative, hyp_sup_norm, schwarzian, schwarzian_from_derivatives,
    SupSampling,
};
use bary_core::{CarlesonConfig, Complex64, Domain, Error, LaurentSeries, PolarGrid};
use common::c;

fn derivs(f: &LaurentSeries, z: Complex64) -> [Complex64; 4] {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    [f.eval(z), d1.eval(z), d2.eval(z), d3.eval(z)]
}

fn sample_map() -> LaurentSeries {
    LaurentSeries::polynomial(vec![c(0.1, 0.0), c(1.0, 0.0), c(0.2, -0.1), c(0.0, 0.05), c(0.01, 0.0)])
}

fn points() -> [Complex64; 4] {
    [c(0.0, 0.0), c(0.3, 0.1), c(-0.4, 0.5), c(0.1, -0.7)]
}

#[test]
fn cocycle_with_polynomial_outer_map() {
    let f = sample_map();
    let g = LaurentSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.2)]);
    for z in points() {
        let [fv, f1, f2, f3] = derivs(&f, z);
        let [_, g1, g2, g3] = derivs(&g, fv);
        let h1 = g1 * f1;
        let h2 = g2 * f1 * f1 + g1 * f2;
        let h3 = g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3;
        let lhs = schwarzian_from_derivatives(h1, h2, h3);
        let rhs = schwarzian(&g, fv).unwrap() * f1 * f1 + schwarzian(&f, z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "{z}");
    }
}

#[test]
fn invariant_under_affine_and_inversion() {
    let f = sample_map();
    let affine = f.scale(c(2.0, -1.5)).add(&LaurentSeries::polynomial(vec![c(3.0, 1.0)]));
    for z in points() {
        let s = schwarzian(&f, z).unwrap();
        assert!((schwarzian(&affine, z).unwrap() - s).norm() < 1e-12 * (1.0 + s.norm()));
        let [fv, f1, f2, f3] = derivs(&f, z);
        let g1 = -f1 / (fv * fv);
        let g2 = -f2 / (fv * fv) + 2.0 * f1 * f1 / (fv * fv * fv);
        let g3 = -f3 / (fv * fv) + 6.0 * f1 * f2 / (fv * fv * fv) - 6.0 * f1 * f1 * f1 / (fv * fv * fv * fv);
        let inv = schwarzian_from_derivatives(g1, g2, g3);
        assert!((inv - s).norm() < 1e-10 * (1.0 + s.norm()), "{z}: {inv} vs {s}");
    }
}

#[test]
fn critical_points_are_reported() {
    let f = LaurentSeries::monomial(Domain::Disk, 2, c(1.0, 0.0));
    assert!(matches!(schwarzian(&f, c(0.0, 0.0)), Err(Error::CriticalPoint { .. })));
}

fn inverse_fourth() -> LaurentSeries {
    LaurentSeries::monomial(Domain::Exterior, -4, c(1.0, 0.0))
}

#[test]
fn inverse_fourth_power_norms() {
    let phi = inverse_fourth();
    assert!((hyp_sup_norm(&phi, SupSampling::default()) - 1.0).abs() < 1e-12);
    let p = disk_representative(&phi);
    assert_eq!(p.terms().collect::<Vec<_>>(), vec![(0, c(1.0, 0.0))]);
    let cfg = CarlesonConfig::default();
    let grid = PolarGrid::unit(100, 128).unwrap();
    let base = curly_b_norm(&phi, grid, &cfg).unwrap();
    let finer_grid = curly_b_norm(&phi, PolarGrid::unit(200, 256).unwrap(), &cfg).unwrap();
    assert!(base.is_finite() && base > 0.0);
    assert!((base - finer_grid).abs() < 0.01 * finer_grid, "{base} {finer_grid}");
    // the finer ladder contains the default one, so the estimate can only grow
    let once = curly_b_norm(&phi, grid, &cfg.refined()).unwrap();
    let twice = curly_b_norm(&phi, grid, &cfg.refined().refined()).unwrap();
    assert!(base <= once && once <= twice * (1.0 + 1e-9), "{base} {once} {twice}");
    assert!((once - twice).abs() < 0.01 * twice, "{once} {twice}");
}

#[test]
fn poles_at_the_origin_give_infinite_norms() {
    let phi = LaurentSeries::monomial(Domain::Exterior, -2, c(1.0, 0.0));
    assert_eq!(hyp_sup_norm(&phi, SupSampling::default()), f64::INFINITY);
    let grid = PolarGrid::unit(20, 32).unwrap();
    assert_eq!(
        curly_b_norm(&phi, grid, &CarlesonConfig::default()).unwrap(),
        f64::INFINITY
    );
    assert!(matches!(
        ahlfors_weill_mu(&phi, c(0.0, 0.0)),
        Err(Error::OriginSingularity)
    ));
    assert!(ahlfors_weill_mu(&phi, c(0.5, 0.0)).unwrap().norm() > 0.0);
}

#[test]
fn norms_are_homogeneous() {
    let phi = LaurentSeries::new(
        Domain::Exterior,
        -7,
        vec![c(0.3, 0.1), c(0.0, 0.0), c(-0.2, 0.5), c(1.0, 0.0)],
    );
    let a = c(-1.2, 0.9);
    let grid = PolarGrid::unit(60, 96).unwrap();
    let cfg = CarlesonConfig::default();
    let sampling = SupSampling {
        rings: 100,
        angles: 128,
    };
    let b = curly_b_norm(&phi, grid, &cfg).unwrap();
    let scaled = curly_b_norm(&phi.scale(a), grid, &cfg).unwrap();
    assert!((scaled - a.norm_sqr() * b).abs() < 1e-12 * scaled);
    let s = hyp_sup_norm(&phi, sampling);
    assert!((hyp_sup_norm(&phi.scale(a), sampling) - a.norm() * s).abs() < 1e-12 * s);
}

#[test]
fn ahlfors_weill_dilatation_is_bounded_by_half_the_norm() {
    let phis = [
        inverse_fourth(),
        LaurentSeries::new(Domain::Exterior, -6, vec![c(0.5, 0.5), c(0.0, -0.3), c(0.2, 0.0)]),
        LaurentSeries::monomial(Domain::Exterior, -9, c(0.0, 2.0)),
    ];
    let sampling = SupSampling::default();
    for phi in &phis {
        let bound = 0.5 * hyp_sup_norm(phi, sampling);
        for r in [0.0, 0.2, 0.5, 0.8, 0.95, 0.999] {
            for k in 0..16 {
                let z = Complex64::from_polar(r, k as f64 * 0.4);
                let mu = ahlfors_weill_mu(phi, z).unwrap();
                assert!(mu.norm() <= bound * (1.0 + 1e-9), "{z}: {} > {bound}", mu.norm());
            }
        }
    }
    let disk = LaurentSeries::monomial(Domain::Disk, 0, c(1.0, 0.0));
    assert!(matches!(
        ahlfors_weill_mu(&disk, c(0.0, 0.0)),
        Err(Error::InvalidInput(_))
    ));
}
