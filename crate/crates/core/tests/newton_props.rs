mod common;

use common::{apply, inverse_transpose, random_curve, random_gl2, random_smooth_fan, rng, v};
use rand::Rng;
use toric_bn::classify::{classify, line_witness_scan, Classification};
use toric_bn::fan::{Fan, Preset};
use toric_bn::lattice::{convex_hull, lattice_distance, LatticeVector, PolygonKind};
use toric_bn::newton::{
    anticanonical_degree, boundary_intersections, chart_decomposition, circumscribed_polygon,
    LaurentCurve,
};

fn instances(seed: u64, count: usize) -> Vec<(Fan, LaurentCurve)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let depth = rng.gen_range(0..=5);
            let fan = random_smooth_fan(&mut rng, depth);
            let r = rng.gen_range(1..=3);
            (fan, random_curve(&mut rng, r))
        })
        .collect()
}

/// The rays singled out by a classification, sorted.
fn key_rays(fan: &Fan, c: &Classification) -> Vec<LatticeVector> {
    let mut rays: Vec<LatticeVector> = match c {
        Classification::HighDegree { .. } => vec![],
        Classification::FiberOfProjection { ray_pair, .. } => {
            ray_pair.iter().map(|&i| fan.ray(i)).collect()
        }
        Classification::MapsToFakePlane { ray_triple, .. } => {
            ray_triple.iter().map(|&i| fan.ray(i)).collect()
        }
    };
    rays.sort();
    rays
}

#[test]
fn degrees_are_translation_invariant() {
    let mut rng = rng(100);
    for (fan, curve) in instances(10, 250) {
        let shift = v(rng.gen_range(-7..=7), rng.gen_range(-7..=7));
        let moved = curve.translate(shift);
        assert_eq!(
            boundary_intersections(&fan, &curve).unwrap(),
            boundary_intersections(&fan, &moved).unwrap()
        );
        let (c0, c1) = (classify(&fan, &curve).unwrap(), classify(&fan, &moved).unwrap());
        assert_eq!(c0.tag(), c1.tag());
        assert_eq!(c0.degree(), c1.degree());
        assert_eq!(key_rays(&fan, &c0), key_rays(&fan, &c1));
        assert_eq!(
            line_witness_scan(&fan, &curve).unwrap().len(),
            line_witness_scan(&fan, &moved).unwrap().len()
        );
    }
}

#[test]
fn degrees_are_gl2_equivariant() {
    let mut rng = rng(200);
    for (fan, curve) in instances(20, 250) {
        let a = random_gl2(&mut rng);
        let b = inverse_transpose(&a);
        let fan2 = Fan::new(fan.rays().iter().map(|&n| apply(&a, n))).unwrap();
        let curve2 = curve.map_exponents(|m| apply(&b, m));
        let d1 = boundary_intersections(&fan, &curve).unwrap();
        let d2 = boundary_intersections(&fan2, &curve2).unwrap();
        for (i, &n) in fan.rays().iter().enumerate() {
            let j = fan2.index_of(apply(&a, n)).unwrap();
            assert_eq!(d1[i], d2[j], "ray {n} under {a:?}");
        }
        let (c1, c2) = (classify(&fan, &curve).unwrap(), classify(&fan2, &curve2).unwrap());
        assert_eq!(c1.tag(), c2.tag());
        assert_eq!(c1.degree(), c2.degree());
        let mut mapped: Vec<LatticeVector> =
            key_rays(&fan, &c1).into_iter().map(|n| apply(&a, n)).collect();
        mapped.sort();
        assert_eq!(mapped, key_rays(&fan2, &c2));
        assert_eq!(
            line_witness_scan(&fan, &curve).unwrap().len(),
            line_witness_scan(&fan2, &curve2).unwrap().len()
        );
    }
}

#[test]
fn charts_closure_containment_and_degree_oracle() {
    for (fan, curve) in instances(30, 400) {
        let poly = circumscribed_polygon(&fan, &curve);
        let deltas = boundary_intersections(&fan, &curve).unwrap();
        let degree = anticanonical_degree(&fan, &curve).unwrap();
        assert_eq!(degree, deltas.iter().sum::<u64>());

        // Chart identity on every ray.
        for (i, &delta) in deltas.iter().enumerate() {
            assert_eq!(chart_decomposition(&fan, &curve, i).unwrap().total(), delta);
        }

        // Closure: edge vectors sum to zero, and each lies on its line.
        let mut sum = LatticeVector::ZERO;
        for e in &poly.edges {
            sum = sum + e.vector().unwrap();
            assert_eq!(e.delta, Some(lattice_distance(e.start.to_lattice().unwrap(), e.end.to_lattice().unwrap())));
        }
        assert!(sum.is_zero());

        // Containment and the boundary-point count of the circumscribed polygon.
        let mu: Vec<LatticeVector> = poly.mu.iter().map(|p| p.to_lattice().unwrap()).collect();
        let hull = convex_hull(mu.iter().copied());
        for m in curve.support() {
            assert!(hull.contains(m), "{m} outside");
        }
        let oracle = match hull.kind() {
            PolygonKind::Polygon => hull.boundary_lattice_points(),
            PolygonKind::Segment => {
                let vs = hull.vertices();
                2 * lattice_distance(vs[0], vs[1])
            }
            PolygonKind::Point => unreachable!("two distinct exponents"),
        };
        assert_eq!(degree, oracle);

        let distinct = poly.distinct_vertices().len() as u64;
        assert!(distinct >= 2);
        assert!(degree >= distinct);

        let c = classify(&fan, &curve).unwrap();
        assert_eq!(c.degree(), degree);
        if degree <= 3 {
            assert!(!line_witness_scan(&fan, &curve).unwrap().is_empty());
        }
    }
}

#[test]
fn projective_plane_degree_law() {
    let p2 = Fan::preset(Preset::P2).unwrap();
    for d in 1..=6i64 {
        let support = (0..=d).flat_map(|i| (0..=d - i).map(move |j| v(i, j)));
        let curve = LaurentCurve::from_support(support).unwrap();
        assert_eq!(anticanonical_degree(&p2, &curve).unwrap(), 3 * d as u64);
    }
    // Any support: three times the degree of the homogenized polynomial.
    let mut rng = rng(40);
    for _ in 0..300 {
        let curve = random_curve(&mut rng, 4);
        let s = curve.support();
        let min_x = s.iter().map(|m| m.x).min().unwrap();
        let min_y = s.iter().map(|m| m.y).min().unwrap();
        let max_sum = s.iter().map(|m| m.x + m.y).max().unwrap();
        let d = (max_sum - min_x - min_y) as u64;
        assert_eq!(anticanonical_degree(&p2, &curve).unwrap(), 3 * d);
    }
}

#[test]
fn quadric_degree_law() {
    let q = Fan::preset(Preset::P1xP1).unwrap();
    let mut rng = rng(50);
    for _ in 0..300 {
        let curve = random_curve(&mut rng, 4);
        let s = curve.support();
        let wx = s.iter().map(|m| m.x).max().unwrap() - s.iter().map(|m| m.x).min().unwrap();
        let wy = s.iter().map(|m| m.y).max().unwrap() - s.iter().map(|m| m.y).min().unwrap();
        assert_eq!(anticanonical_degree(&q, &curve).unwrap(), 2 * (wx + wy) as u64);
    }
}
