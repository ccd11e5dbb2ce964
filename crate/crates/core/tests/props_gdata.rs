mod common;

#[test]
fn represent_homomorphism() {
    common::check(common::gdata::represent_homomorphism);
}

#[test]
fn schreier_cocycle() {
    common::check(common::gdata::schreier_cocycle);
}

#[test]
fn finite_state_mirror() {
    common::check(common::gdata::finite_state_mirror);
}

#[test]
fn refine_faithful() {
    common::check(common::gdata::refine_faithful);
}

#[test]
fn degree_formulas() {
    common::check(common::gdata::degree_formulas);
}
