use fourfold_core::groebner::groebner_basis;
use fourfold_core::hilbert::{dim_degree, sectional_genus};
use fourfold_core::homalg::{hom_degree_zero, random_linear_change, substitute_all, syzygies};
use fourfold_core::linsys::{ideal_in_degree, multiplicity_basis_oracle};
use fourfold_core::random::seeded;
use fourfold_core::ratmap::*;
use fourfold_core::surfaces::{build_surface, random_cubic_through, SurfaceTag};
use fourfold_core::{Fp, Poly, Ring};

fn field() -> Fp {
    Fp::new(32003).unwrap()
}

#[test]
fn identity_of_p4() {
    let ring = Ring::new(field(), 5).unwrap();
    let id = RationalMap::new(&ring, &[], (0..5).map(|i| Poly::var(&ring, i)).collect()).unwrap();
    let mut rng = seeded(1);
    assert_eq!(id.projective_degrees(&mut rng).unwrap(), vec![1, 1, 1, 1, 1]);
    let image = id.image(2).unwrap();
    assert_eq!((image.dim, image.degree), (4, 1));
    assert!(id.is_birational(1, &image, &mut rng).unwrap().birational);
    let inv = id.inverse_map(&image.basis, 3, &mut rng).unwrap();
    assert_eq!(inv.delta, 1);
}

#[test]
fn standard_cremona_of_p4() {
    let ring = Ring::new(field(), 5).unwrap();
    let forms: Vec<Poly> = (0..5)
        .map(|i| (0..5).filter(|&j| j != i).fold(Poly::one(&ring), |acc, j| acc.mul(&Poly::var(&ring, j))))
        .collect();
    let map = RationalMap::new(&ring, &[], forms).unwrap();
    let mut rng = seeded(2);
    assert_eq!(map.projective_degrees(&mut rng).unwrap(), vec![1, 4, 6, 4, 1]);
    let image = map.image(2).unwrap();
    let inv = map.inverse_map(&image.basis, 5, &mut rng).unwrap();
    assert_eq!(inv.delta, 4);
}

#[test]
fn quadrics_through_del_pezzo() {
    let s = build_surface(SurfaceTag::Dp5, field(), &mut seeded(3)).unwrap();
    let q = ideal_in_degree(&s.ideal, 2).unwrap();
    let syz = syzygies(&s.ring, &q, 3).unwrap();
    assert_eq!(syz.source_degrees.iter().filter(|&&d| d == 3).count(), 5);
    let psi = RationalMap::new(&s.ring, &[], q).unwrap();
    let mut rng = seeded(4);
    let p = psi.random_source_point(&mut rng).unwrap();
    let fiber = psi.fiber_at(&p, &mut rng).unwrap();
    assert!(fiber.polys().iter().all(|g| g.evaluate(&p).unwrap() == 0));
    let cert = certify_congruence_fiber(&fiber, &s.ideal, 1, &mut rng).unwrap();
    assert_eq!(cert.signature(), (1, 1, 0, 2));
    assert!(cert.valid);
    let x = random_cubic_through(&s, &mut rng).unwrap();
    let restricted = psi.restrict_to_hypersurface(&x).unwrap();
    assert_eq!(restricted.projective_degrees(&mut rng).unwrap(), vec![3, 6, 7, 4, 1]);
    let unrestricted_image = psi.image(2).unwrap();
    let top = psi.projective_degrees(&mut rng).unwrap();
    assert_eq!(*top.last().unwrap(), 0);
    assert!(!psi.is_birational(0, &unrestricted_image, &mut rng).unwrap().birational);
}

#[test]
fn quadrics_through_scroll_map_onto_a_quadric() {
    let s = build_surface(SurfaceTag::Scroll4, field(), &mut seeded(5)).unwrap();
    let psi = RationalMap::new(&s.ring, &[], ideal_in_degree(&s.ideal, 2).unwrap()).unwrap();
    let mut rng = seeded(6);
    let x = random_cubic_through(&s, &mut rng).unwrap();
    let map = psi.restrict_to_hypersurface(&x).unwrap();
    assert_eq!(map.projective_degrees(&mut rng).unwrap(), vec![3, 6, 8, 6, 2]);
    let image = map.image(2).unwrap();
    assert_eq!(image.target.nvars(), 6);
    assert_eq!((image.dim, image.degree, image.counts[1]), (4, 2, 1));
}

#[test]
fn quintics_double_along_degree_ten_surface() {
    let s = build_surface(SurfaceTag::S38, field(), &mut seeded(7)).unwrap();
    let q = multiplicity_basis_oracle(&s.ideal, 2, 5).unwrap();
    let psi = RationalMap::new(&s.ring, &[], q).unwrap();
    let mut rng = seeded(8);
    assert_eq!(psi.projective_degrees(&mut rng).unwrap(), vec![1, 5, 19, 13, 2, 0]);
    let p = psi.random_source_point(&mut rng).unwrap();
    let fiber = psi.fiber_at(&p, &mut rng).unwrap();
    assert_eq!(dim_degree(&fiber).unwrap(), (1, 2));
    assert_eq!(sectional_genus(&fiber).unwrap(), 0);
    let cert = certify_congruence_fiber(&fiber, &s.ideal, 2, &mut rng).unwrap();
    assert_eq!(cert.signature(), (1, 2, 0, 5));
    let x = random_cubic_through(&s, &mut rng).unwrap();
    let map = psi.restrict_to_hypersurface(&x).unwrap();
    let degs = map.projective_degrees(&mut rng).unwrap();
    assert_eq!(degs, vec![3, 15, 27, 9, 1]);
    let image = map.image(2).unwrap();
    assert!(map.is_birational(degs[4], &image, &mut rng).unwrap().birational);
}

#[test]
fn restriction_to_a_form_of_the_ideal_is_rejected() {
    let s = build_surface(SurfaceTag::Dp5, field(), &mut seeded(9)).unwrap();
    let q = ideal_in_degree(&s.ideal, 2).unwrap();
    let ring = s.ring.clone();
    let map = RationalMap::new(&ring, &[], q).unwrap();
    let x = random_cubic_through(&s, &mut seeded(10)).unwrap();
    let restricted = map.restrict_to_hypersurface(&x).unwrap();
    assert!(restricted.restrict_to_hypersurface(&x).is_err());
}

#[test]
fn normal_bundle_is_coordinate_free() {
    for (tag, h0) in [(SurfaceTag::Dp5, 35), (SurfaceTag::Scroll4, 29)] {
        let s = build_surface(tag, field(), &mut seeded(11)).unwrap();
        assert_eq!(hom_degree_zero(&s.ideal).unwrap(), h0);
        let (fwd, _) = random_linear_change(&s.ring, &mut seeded(12)).unwrap();
        let moved = groebner_basis(&s.ring, &substitute_all(s.ideal.polys(), &fwd)).unwrap();
        assert_eq!(hom_degree_zero(&moved).unwrap(), h0, "{tag}");
    }
}

#[test]
fn one_line_through_a_point_of_the_del_pezzo_cubic_image() {
    let s = build_surface(SurfaceTag::Dp5, field(), &mut seeded(13)).unwrap();
    let phi = RationalMap::new(&s.ring, &[], s.cubics().unwrap()).unwrap();
    let mut rng = seeded(14);
    let p = phi.random_source_point(&mut rng).unwrap();
    let lines = phi.lines_through_image_point(&p, 3, &mut rng).unwrap();
    assert_eq!((lines.dim, lines.degree), (0, 1));
}
