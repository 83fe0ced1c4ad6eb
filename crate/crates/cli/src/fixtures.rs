//! Problem files bundled with the binary.

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "hyperbolic",
        description: "two coordinate rays in rank 2 under the antidiagonal one-parameter subgroup",
        text: include_str!("../fixtures/hyperbolic.json"),
    },
    Fixture {
        name: "nobasechange",
        description: "two simplicial cones in rank 3 sharing a facet, acted on by the third coordinate",
        text: include_str!("../fixtures/nobasechange.json"),
    },
    Fixture {
        name: "two_planes",
        description: "two coordinate planes in rank 4; the quotient map to affine 3-space is not onto",
        text: include_str!("../fixtures/two_planes.json"),
    },
    Fixture {
        name: "glued_cones",
        description: "two cones in rank 4 glued along a plane; no quotient of either kind exists",
        text: include_str!("../fixtures/glued_cones.json"),
    },
    Fixture {
        name: "unglued_orbits",
        description: "two cones in rank 3 whose quotient identifies orbits of unglued charts",
        text: include_str!("../fixtures/unglued_orbits.json"),
    },
    Fixture {
        name: "doubled_halfline",
        description: "the half-line with doubled origin, as a system of two charts",
        text: include_str!("../fixtures/doubled_halfline.json"),
    },
];

/// Finds a bundled fixture by name, ignoring directories and a `.json`
/// extension.
pub fn lookup(name: &str) -> Option<&'static Fixture> {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    let base = base.strip_suffix(".json").unwrap_or(base);
    FIXTURES.iter().find(|f| f.name == base)
}
