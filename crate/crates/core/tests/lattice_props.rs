mod common;

use common::{rng, v};
use rand::Rng;
use toric_bn::lattice::{
    convex_hull, det2, lattice_distance, line_intersection, Line, LatticeVector, PolygonKind,
};

/// Lattice points on the closed segment from 0 to d, counted by scanning
/// the bounding box.
fn segment_points(d: LatticeVector) -> u64 {
    let mut count = 0;
    for x in d.x.min(0)..=d.x.max(0) {
        for y in d.y.min(0)..=d.y.max(0) {
            if det2(d, v(x, y)) == 0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn lattice_distance_matches_segment_count_exhaustively() {
    const R: i64 = 20;
    const W: i64 = 4 * R + 1;
    let index = |d: LatticeVector| ((d.x + 2 * R) * W + d.y + 2 * R) as usize;
    let mut table = vec![0u64; (W * W) as usize];
    for dx in -2 * R..=2 * R {
        for dy in -2 * R..=2 * R {
            let d = v(dx, dy);
            table[index(d)] = if d.is_zero() { 0 } else { segment_points(d) - 1 };
        }
    }
    for ax in -R..=R {
        for ay in -R..=R {
            for bx in -R..=R {
                for by in -R..=R {
                    let (a, b) = (v(ax, ay), v(bx, by));
                    assert_eq!(lattice_distance(a, b), table[index(b - a)], "{a} {b}");
                }
            }
        }
    }
}

fn brute_force_counts(vertices: &[LatticeVector]) -> (u64, u64) {
    let n = vertices.len();
    let lo_x = vertices.iter().map(|p| p.x).min().unwrap();
    let hi_x = vertices.iter().map(|p| p.x).max().unwrap();
    let lo_y = vertices.iter().map(|p| p.y).min().unwrap();
    let hi_y = vertices.iter().map(|p| p.y).max().unwrap();
    let (mut interior, mut boundary) = (0, 0);
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            let p = v(x, y);
            let sides: Vec<i128> = (0..n)
                .map(|i| det2(vertices[(i + 1) % n] - vertices[i], p - vertices[i]))
                .collect();
            if sides.iter().all(|&s| s > 0) {
                interior += 1;
            } else if sides.iter().all(|&s| s >= 0) {
                boundary += 1;
            }
        }
    }
    (interior, boundary)
}

#[test]
fn pick_identity_on_random_polygons() {
    let mut rng = rng(7);
    let mut checked = 0;
    while checked < 600 {
        let n = rng.gen_range(3..10);
        let pts: Vec<LatticeVector> = (0..n)
            .map(|_| v(rng.gen_range(-8..=8), rng.gen_range(-8..=8)))
            .collect();
        let hull = convex_hull(pts.iter().copied());
        for p in &pts {
            assert!(hull.contains(*p));
        }
        if hull.kind() != PolygonKind::Polygon {
            continue;
        }
        let verts = hull.vertices();
        for i in 0..verts.len() {
            let (a, b, c) = (verts[i], verts[(i + 1) % verts.len()], verts[(i + 2) % verts.len()]);
            assert!(det2(b - a, c - b) > 0, "hull not strictly convex ccw");
        }
        let (interior, boundary) = brute_force_counts(verts);
        assert_eq!(hull.interior_lattice_points(), interior);
        assert_eq!(hull.boundary_lattice_points(), boundary);
        assert_eq!(hull.twice_area(), 2 * interior as i128 + boundary as i128 - 2);
        checked += 1;
    }
}

#[test]
fn line_intersection_substitutes_back() {
    let mut rng = rng(11);
    let mut checked = 0;
    while checked < 1000 {
        let n1 = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        let n2 = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if !n1.is_primitive() || !n2.is_primitive() {
            continue;
        }
        let l1 = Line::new(n1, rng.gen_range(-50..=50)).unwrap();
        let l2 = Line::new(n2, rng.gen_range(-50..=50)).unwrap();
        match line_intersection(&l1, &l2) {
            Ok(p) => {
                assert_eq!(p.pairing(n1), num_rational::BigRational::from_integer(l1.level().into()));
                assert_eq!(p.pairing(n2), num_rational::BigRational::from_integer(l2.level().into()));
                checked += 1;
            }
            Err(_) => assert_eq!(det2(n1, n2), 0),
        }
    }
}
