use newton_bif_core::{atypical_faces, newton_polyhedron_at_infinity, parse_polynomial, Cone, LatticePolytope, Mode};
use num_bigint::BigInt;

#[test]
fn unit_square() {
    let p = LatticePolytope::convex_hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 0]]).unwrap();
    assert_eq!(p.dim, 2);
    assert_eq!(p.vertices.len(), 4);
    assert_eq!(p.facets.len(), 4);
    assert_eq!(p.normalized_volume().unwrap(), BigInt::from(2));
    let fan = p.dual_fan().unwrap();
    assert_eq!(fan.cones.len(), 9);
    let v = p.supporting_face(&[1, 1]);
    assert_eq!(p.face_vertices(v), vec![vec![0, 0]]);
    assert_eq!(fan.locate(&[1, 1]), vec![v]);
    assert_eq!(fan.cone(p.whole()).dim, 0);
}

#[test]
fn lower_dimensional_hull() {
    let p = LatticePolytope::convex_hull(&[vec![0, 0, 0], vec![2, 2, 0], vec![1, 1, 0]]).unwrap();
    assert_eq!(p.dim, 1);
    assert_eq!(p.vertices.len(), 2);
}

#[test]
fn cones() {
    let q = Cone::orthant(3);
    assert!(q.contains(&[0, 1, 2]));
    assert!(!q.contains_relint(&[0, 1, 2]));
    assert!(q.contains_relint(&[1, 1, 2]));
    assert!(q.is_simplicial().unwrap());
    let r = Cone::from_rays(2, &[vec![1, -1], vec![1, 1]]).unwrap();
    let cap = r.intersect(&Cone::orthant(2)).unwrap();
    assert_eq!(cap.dim, 2);
    assert_eq!(Cone::zero(2).dim, 0);
}

#[test]
fn polyhedron_at_infinity_contains_origin() {
    let f = parse_polynomial("x1^2*x2 + x2^3", 2, Mode::Affine).unwrap();
    let p = newton_polyhedron_at_infinity(&f).unwrap();
    assert!(p.contains_point(&[0, 0]));
    assert_eq!(p.vertices.len(), 3);
    assert_eq!(p.normalized_volume().unwrap(), BigInt::from(6));
}

#[test]
fn atypical_faces_of_the_two_plane_cases() {
    let a = parse_polynomial("x1 + x1*x2 + x1^2*x2^2", 2, Mode::Affine).unwrap();
    let faces = atypical_faces(&a).unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0].vertices, vec![vec![0, 0], vec![2, 2]]);
    let b = parse_polynomial("x1 + x1^2*x2", 2, Mode::Affine).unwrap();
    let faces = atypical_faces(&b).unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0].vertices, vec![vec![0, 0], vec![2, 1]]);
    let convenient = parse_polynomial("x1^3 + x2^2 + x1*x2", 2, Mode::Affine).unwrap();
    assert!(atypical_faces(&convenient).unwrap().is_empty());
}
