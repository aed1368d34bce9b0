use fourfold_core::groebner::{groebner_basis, ideal_quotient, singular_locus, QuotientMethod};
use fourfold_core::hilbert::{dim_degree, sectional_genus};
use fourfold_core::linsys::{ideal_in_degree, plane_system, power_saturation_basis};
use fourfold_core::random::{random_combination, random_element, random_vector, seeded};
use fourfold_core::surfaces::*;
use fourfold_core::zerodim::count_points;
use fourfold_core::{Fp, Poly, Ring};

fn field() -> Fp {
    Fp::new(32003).unwrap()
}

#[test]
fn plane_systems_have_expected_dimensions() {
    let f = field();
    let mut rng = seeded(11);
    let plane = Ring::new(f, 3).unwrap();
    let simple = |k: usize, rng: &mut _| general_plane_points(&f, k, rng).into_iter().map(|p| (p, 1)).collect::<Vec<_>>();
    assert_eq!(plane_system(&plane, 3, &simple(4, &mut rng)).unwrap().len(), 6);
    assert_eq!(plane_system(&plane, 4, &simple(8, &mut rng)).unwrap().len(), 7);
    let triple: Vec<_> = general_plane_points(&f, 10, &mut rng).into_iter().map(|p| (p, 3)).collect();
    assert_eq!(plane_system(&plane, 10, &triple).unwrap().len(), 6);
}

#[test]
fn quintic_del_pezzo() {
    let s = build_surface(SurfaceTag::Dp5, field(), &mut seeded(1)).unwrap();
    assert_eq!(dim_degree(&s.ideal).unwrap(), (2, 5));
    assert_eq!(s.h0_ideal(3), 25);
    assert_eq!(ideal_in_degree(&s.ideal, 2).unwrap().len(), 5);
    let sing = singular_locus(&s.ring, s.ideal.polys(), 3, &mut seeded(2)).unwrap();
    assert_eq!(count_points(&sing, &mut seeded(3)).unwrap().distinct, 0);
}

#[test]
fn degree_ten_surface_and_its_linear_systems() {
    let s = build_surface(SurfaceTag::S38, field(), &mut seeded(4)).unwrap();
    assert_eq!(dim_degree(&s.ideal).unwrap(), (2, 10));
    assert_eq!(sectional_genus(&s.ideal).unwrap(), 6);
    assert_eq!(ideal_in_degree(&s.ideal, 3).unwrap().len(), 10);
    assert_eq!(s.h0_ideal(5), 126);
    let quintics = power_saturation_basis(&s.ring, s.ideal.polys(), 2, 5, &mut seeded(5)).unwrap();
    assert_eq!(quintics.len(), 5);
}

#[test]
fn general_projection_keeps_degree() {
    let s = build_surface(SurfaceTag::S14, field(), &mut seeded(6)).unwrap();
    assert_eq!(dim_degree(&s.ideal).unwrap(), (2, 8));
    let model = image_ideal(s.model.as_ref().unwrap(), 3, 5).unwrap();
    assert_eq!(model.ring().nvars(), 7);
    assert_eq!(dim_degree(&model).unwrap(), (2, 8));
    assert_eq!(sectional_genus(&model).unwrap(), 3);
}

#[test]
fn projected_twisted_cubic_is_a_nodal_cubic() {
    let f = field();
    let source = Ring::new(f, 2).unwrap();
    let (s, t) = (Poly::var(&source, 0), Poly::var(&source, 1));
    let forms = vec![s.pow(3), s.pow(2).mul(&t), s.mul(&t.pow(2)), t.pow(3)];
    let center = vec![random_vector(f.p(), 4, &mut seeded(7))];
    let param = Parametrization { source, forms: project_from_center(&forms, &center).unwrap() };
    let curve = image_ideal(&param, 3, 5).unwrap();
    assert_eq!(curve.ring().nvars(), 3);
    assert_eq!(curve.len(), 1);
    assert_eq!(curve.polys()[0].degree(), Some(3));
    let sing = singular_locus(curve.ring(), curve.polys(), 1, &mut seeded(8)).unwrap();
    assert_eq!(count_points(&sing, &mut seeded(9)).unwrap().distinct, 1);
}

#[test]
fn builds_are_reproducible() {
    for tag in [SurfaceTag::Dp5, SurfaceTag::FvScroll7, SurfaceTag::Dp7Proj] {
        let a = build_surface(tag, field(), &mut seeded(10)).unwrap();
        let b = build_surface(tag, field(), &mut seeded(10)).unwrap();
        assert!(a.ideal.same_ideal(&b.ideal), "{tag}");
    }
}

#[test]
fn nodal_surfaces() {
    for (tag, nodes, degree, cubics) in [(SurfaceTag::FvScroll7, 3, 7, 13), (SurfaceTag::Dp7Proj, 1, 7, 14)] {
        let s = build_surface(tag, field(), &mut seeded(12)).unwrap();
        assert_eq!(dim_degree(&s.ideal).unwrap(), (2, degree));
        assert_eq!(s.h0_ideal(3), cubics);
        let sing = singular_locus(&s.ring, s.ideal.polys(), 3, &mut seeded(13)).unwrap();
        assert_eq!(count_points(&sing, &mut seeded(14)).unwrap().distinct, nodes, "{tag}");
    }
}

#[test]
fn linked_octic_and_self_link() {
    let s = build_surface(SurfaceTag::OcticScroll8, field(), &mut seeded(15)).unwrap();
    assert_eq!(dim_degree(&s.ideal).unwrap(), (2, 8));
    assert_eq!(s.h0_ideal(3), 10);
    let link = s.linkage.as_ref().unwrap();
    let mut gens = link.threefold.polys().to_vec();
    gens.push(link.cubic.clone());
    // Linking back from the octic recovers a surface containing S_38.
    let back = ideal_quotient(&s.ring, &gens, s.ideal.polys(), QuotientMethod::Intersection).unwrap();
    assert_eq!(dim_degree(&back).unwrap(), (2, 10));
    let sing = singular_locus(&s.ring, s.ideal.polys(), 3, &mut seeded(16)).unwrap();
    assert_eq!(count_points(&sing, &mut seeded(17)).unwrap().distinct, 6);
}

#[test]
fn complete_intersection_links_to_nothing() {
    let f = field();
    let ring = Ring::new(f, 6).unwrap();
    let mut rng = seeded(18);
    let x = random_element(&ring, 3, &mut rng);
    let q = random_element(&ring, 2, &mut rng);
    let b = groebner_basis(&ring, &[q.clone()]).unwrap();
    let s = groebner_basis(&ring, &[x.clone(), q]).unwrap();
    let t = link_residual(&ring, &x, &b, &s, &mut rng).unwrap();
    assert!(t.is_unit());
}

#[test]
fn cubics_through_the_surface_contain_it() {
    let s = build_surface(SurfaceTag::Scroll4, field(), &mut seeded(19)).unwrap();
    let mut rng = seeded(20);
    let x = random_cubic_through(&s, &mut rng).unwrap();
    assert!(s.ideal.contains(&x).unwrap());
    let p = s.random_point(&mut rng).unwrap();
    assert_eq!(x.evaluate(&p).unwrap(), 0);
    let g = random_combination(&s.ring, &s.cubics().unwrap(), &mut rng);
    assert_eq!(g.degree(), Some(3));
}
