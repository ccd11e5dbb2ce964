mod common;

#[test]
fn round_trip() {
    common::check(common::dsl::round_trip);
}

#[test]
fn diagnostic_repair() {
    common::check(common::dsl::diagnostic_repair);
}
