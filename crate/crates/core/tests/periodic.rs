use lattes_core::dynsys::{periodic_counts, periodic_points, roots::relative_residual};
use lattes_core::lattes::EllipticCurve;

#[test]
fn worked_example_map_through_period_three() {
    let phi = EllipticCurve::from_ints(4, 2, 0).unwrap().duplication_map();
    for (n, total) in [(1u32, 5u128), (2, 17), (3, 65)] {
        let c = periodic_counts(&phi, n).unwrap();
        assert_eq!(c.count_with_multiplicity, total);
        assert_eq!(c.count_distinct, total, "n = {n}");
        assert!(c.infinity_fixed);
        assert_eq!(c.infinity_multiplicity, 1);
    }
}

#[test]
fn root_residuals_period_three() {
    let phi = EllipticCurve::from_ints(4, 2, 0).unwrap().duplication_map();
    let t = std::time::Instant::now();
    let report = periodic_points(&phi, 3, 128).unwrap();
    eprintln!("periodic_points n=3: {:?}", t.elapsed());
    assert!(report.converged);
    assert_eq!(report.finite_points.len(), 64);
    let f = periodic_counts(&phi, 3).unwrap().fixed_point_poly.squarefree_part();
    let roots = lattes_core::dynsys::roots::aberth(&f, 128);
    for z in &roots.roots {
        assert!(relative_residual(&f, z) < 1e-9);
    }
}
