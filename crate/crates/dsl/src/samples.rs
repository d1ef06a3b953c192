//! Sample files shipped with the crate.

/// `(file name, contents)` of every shipped sample.
pub const SAMPLES: &[(&str, &str)] = &[
    (
        "walking_arrow.cat",
        include_str!("../samples/walking_arrow.cat"),
    ),
    ("semidirect.cat", include_str!("../samples/semidirect.cat")),
    ("delta_one.cat", include_str!("../samples/delta_one.cat")),
    ("delta_b.cat", include_str!("../samples/delta_b.cat")),
    (
        "arrow_example.cat",
        include_str!("../samples/arrow_example.cat"),
    ),
    (
        "identity_opfib.cat",
        include_str!("../samples/identity_opfib.cat"),
    ),
    (
        "projection_opfib.cat",
        include_str!("../samples/projection_opfib.cat"),
    ),
    ("fibred.cat", include_str!("../samples/fibred.cat")),
    (
        "broken_assoc.cat",
        include_str!("../samples/broken_assoc.cat"),
    ),
    (
        "broken_cleavage.cat",
        include_str!("../samples/broken_cleavage.cat"),
    ),
    (
        "non_cleavage_preserving.cat",
        include_str!("../samples/non_cleavage_preserving.cat"),
    ),
    (
        "non_discrete.cat",
        include_str!("../samples/non_discrete.cat"),
    ),
];

pub fn sample(name: &str) -> Option<&'static str> {
    SAMPLES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
