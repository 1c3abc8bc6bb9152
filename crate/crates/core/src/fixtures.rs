//! Small decompositions and complexes used by tests, benches and the CLI.

use crate::cellkit::Decomposition;
use crate::lorentz::TilingSpec;

pub const WHITEHEAD_JSON: &str = include_str!("../fixtures/complex/whitehead.json");
pub const FIGURE_EIGHT_JSON: &str = include_str!("../fixtures/complex/figure_eight.json");
pub const UNPAIRED_JSON: &str = include_str!("../fixtures/complex/unpaired.json");

/// Octahedron glued to itself: two cusps, three edge classes of four edges each.
pub fn whitehead() -> Decomposition {
    Decomposition::from_json(WHITEHEAD_JSON).expect("fixture parses")
}

/// Two tetrahedra, one cusp, two edge classes of six edges each.
pub fn figure_eight() -> Decomposition {
    Decomposition::from_json(FIGURE_EIGHT_JSON).expect("fixture parses")
}

pub const TORUS_1X1_JSON: &str = include_str!("../fixtures/squares/torus1x1.json");
pub const TORUS_2X2_JSON: &str = include_str!("../fixtures/squares/torus2x2.json");
pub const KLEIN_JSON: &str = include_str!("../fixtures/squares/klein.json");
pub const BADCORNER_JSON: &str = include_str!("../fixtures/squares/badcorner.json");
pub const SINGLE_SQUARE_JSON: &str = include_str!("../fixtures/squares/single_square.json");

pub const AUG_TETRA_JSON: &str = include_str!("../fixtures/augmented/tetra.json");
pub const AUG_TETRA_ODD_JSON: &str = include_str!("../fixtures/augmented/tetra_odd.json");
pub const AUG_CUBE_JSON: &str = include_str!("../fixtures/augmented/cube.json");
pub const AUG_TETRA_CUBE_JSON: &str = include_str!("../fixtures/augmented/tetra_cube.json");
pub const AUG_PRISM6_LEFT_JSON: &str = include_str!("../fixtures/augmented/prism6_left.json");
pub const AUG_PRISM6_RIGHT_JSON: &str = include_str!("../fixtures/augmented/prism6_right.json");

/// Every augmented-link model shipped with the crate.
pub const AUG_MODELS: [&str; 6] = [
    AUG_TETRA_JSON,
    AUG_TETRA_ODD_JSON,
    AUG_CUBE_JSON,
    AUG_TETRA_CUBE_JSON,
    AUG_PRISM6_LEFT_JSON,
    AUG_PRISM6_RIGHT_JSON,
];

/// Generated canonical tilings T1..T21 over Q(√3), in order.
pub const TILING_JSON: [&str; 21] = [
    include_str!("../fixtures/tiling/t01.json"),
    include_str!("../fixtures/tiling/t02.json"),
    include_str!("../fixtures/tiling/t03.json"),
    include_str!("../fixtures/tiling/t04.json"),
    include_str!("../fixtures/tiling/t05.json"),
    include_str!("../fixtures/tiling/t06.json"),
    include_str!("../fixtures/tiling/t07.json"),
    include_str!("../fixtures/tiling/t08.json"),
    include_str!("../fixtures/tiling/t09.json"),
    include_str!("../fixtures/tiling/t10.json"),
    include_str!("../fixtures/tiling/t11.json"),
    include_str!("../fixtures/tiling/t12.json"),
    include_str!("../fixtures/tiling/t13.json"),
    include_str!("../fixtures/tiling/t14.json"),
    include_str!("../fixtures/tiling/t15.json"),
    include_str!("../fixtures/tiling/t16.json"),
    include_str!("../fixtures/tiling/t17.json"),
    include_str!("../fixtures/tiling/t18.json"),
    include_str!("../fixtures/tiling/t19.json"),
    include_str!("../fixtures/tiling/t20.json"),
    include_str!("../fixtures/tiling/t21.json"),
];

/// Tiling `T_k`, 1-based.
pub fn tiling(k: usize) -> TilingSpec {
    TilingSpec::from_json(TILING_JSON[k - 1]).expect("fixture parses")
}
