mod common;

#[test]
fn action_homomorphism() {
    common::check(common::automata::action_homomorphism);
}

#[test]
fn inverse_law() {
    common::check(common::automata::inverse_law);
}

#[test]
fn section_product() {
    common::check(common::automata::section_product);
}

#[test]
fn closure_bound() {
    common::check(common::automata::closure_bound);
}

#[test]
fn minimization_soundness() {
    common::check(common::automata::minimization_soundness);
}

#[test]
fn prefix_compatibility() {
    common::check(common::automata::prefix_compatibility);
}
