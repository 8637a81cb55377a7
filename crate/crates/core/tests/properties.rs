mod common;

use common::CASES;

#[test]
fn field_axioms() {
    common::field_axioms(CASES).unwrap();
}

#[test]
fn twisted_mul_is_associative() {
    common::twisted_associativity(CASES).unwrap();
}

#[test]
fn straightening_is_confluent() {
    common::straightening_confluence(CASES).unwrap();
}

#[test]
fn bracket_is_antisymmetric_and_jacobi() {
    common::bracket_identities(CASES).unwrap();
}

#[test]
fn print_parse_round_trips() {
    common::round_trips(CASES).unwrap();
}

#[test]
fn ring_maps_are_homomorphisms() {
    common::ring_map_homomorphism(CASES).unwrap();
}

#[test]
fn specialization_preserves_generic_rank() {
    common::specialized_rank(CASES).unwrap();
}
