use fourfold_harness::properties::*;

fn check(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn field_axioms_hold() {
    check(field_axioms(512));
}

#[test]
fn polynomial_axioms_hold() {
    check(polynomial_axioms(128));
}

#[test]
fn groebner_basis_is_idempotent() {
    check(groebner_idempotence(48));
}

#[test]
fn saturation_is_stable() {
    check(saturation_stability(32));
}

#[test]
fn quotient_contains_ideal() {
    check(quotient_containment(32));
}

#[test]
fn linear_system_routes_agree() {
    check(linear_system_routes(24));
}

#[test]
fn hilbert_function_routes_agree() {
    check(hilbert_function_routes(64));
}

#[test]
fn seeds_replay() {
    check(seed_replay(8));
}
