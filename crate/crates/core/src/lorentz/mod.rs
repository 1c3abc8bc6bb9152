//! Hyperboloid-model engine: exact Q(√d) arithmetic, light-cone vectors,
//! Lorentz isometries and verification of canonical tilings.

pub mod cusp;
pub mod dn;
pub mod hull;
pub mod linalg;
pub mod parse;
pub mod quadext;
pub mod tiling;

use thiserror::Error;

pub use cusp::cusp_commensurable;
pub use dn::{build_dn_spec, triangle_type, TriangleType};
pub use hull::{klein_hull, FaceLattice};
pub use linalg::{is_lorentz_isometry, lorentz_form, Mat4, Vec4};
pub use parse::parse_field_literal;
pub use quadext::QuadExt;
pub use tiling::{
    breakpoint_check, discover_certificates, orbit_census, verify_generated_tiling, Certificate, TilingSpec,
};

use linalg::{det, dot, independent_rows, inverse, lorentz_unchecked, mat_mul, solve, Solution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LorentzError {
    #[error("mixed quadratic fields Q(√{0}) and Q(√{1})")]
    FieldMismatch(i64, i64),
    #[error("degenerate point set")]
    Degenerate,
    #[error("Gram matrices of source and target triples differ")]
    GramMismatch,
    #[error("certificate {label}: {reason}")]
    BadCertificate { label: String, reason: String },
    #[error("bad tiling spec: {0}")]
    BadSpec(String),
    #[error("tile is not a cuboctahedron")]
    NotCuboctahedral,
    #[error("n must be at least 2, got {0}")]
    BadN(usize),
    #[error("square of the modulus is rational, criterion does not apply")]
    RationalSquare,
    #[error("vertex {0} has no orbit label")]
    UnlabeledVertex(String),
    #[error("cannot parse field literal: {0}")]
    Parse(String),
}

/// Euclidean normal of the plane through a set of light-like vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct CoplanarNormal {
    pub n: Vec4,
    /// The vectors span less than a 3-plane; `n` is the minimal-norm solution.
    pub degenerate_span: bool,
}

/// Solve `n · vᵢ = 1` for all i with the ordinary dot product.
pub fn coplanar_normal(vectors: &[Vec4]) -> Option<CoplanarNormal> {
    let rows: Vec<Vec<QuadExt>> = vectors.iter().map(|v| v.to_vec()).collect();
    let ones = vec![QuadExt::one(); rows.len()];
    match solve(&rows, &ones) {
        Solution::Inconsistent => None,
        Solution::Unique(x) => Some(CoplanarNormal { n: to_vec4(x), degenerate_span: false }),
        Solution::Family { .. } => {
            // minimal norm: n = Bᵀ y with (B Bᵀ) y = 1 over independent rows
            let keep = independent_rows(&rows);
            let b: Vec<&Vec<QuadExt>> = keep.iter().map(|&i| &rows[i]).collect();
            let gram: Vec<Vec<QuadExt>> = b.iter().map(|r| b.iter().map(|s| dot(r, s)).collect()).collect();
            let Solution::Unique(y) = solve(&gram, &vec![QuadExt::one(); b.len()]) else {
                return None;
            };
            let n: Vec<QuadExt> =
                (0..4).map(|c| b.iter().zip(&y).fold(QuadExt::zero(), |s, (r, yy)| &s + &(&r[c] * yy))).collect();
            Some(CoplanarNormal { n: to_vec4(n), degenerate_span: true })
        }
    }
}

fn to_vec4(x: Vec<QuadExt>) -> Vec4 {
    let mut it = x.into_iter();
    std::array::from_fn(|_| it.next().unwrap())
}

/// `n · w − 1`: positive for a convex meeting, zero for a coplanar merge.
pub fn tilt_excess(n: &Vec4, w: &Vec4) -> QuadExt {
    &dot(n, w) - &QuadExt::one()
}

/// The Lorentz isometry taking `src[i]` to `dst[i]` with determinant `orientation`.
///
/// The fourth basis vector is the Lorentz-dual cross product of the triple, whose
/// norm is minus the Gram determinant, so equal Gram data gives equal norms.
pub fn solve_triple_isometry(src: &[Vec4; 3], dst: &[Vec4; 3], orientation: i32) -> Result<Mat4, LorentzError> {
    linalg::common_field(src.iter().chain(dst.iter()).flatten())?;
    for i in 0..3 {
        for j in i..3 {
            if lorentz_unchecked(&src[i], &src[j]) != lorentz_unchecked(&dst[i], &dst[j]) {
                return Err(LorentzError::GramMismatch);
            }
        }
    }
    let cs = dual_cross(src);
    let cd = dual_cross(dst);
    if lorentz_unchecked(&cs, &cs).is_zero() {
        return Err(LorentzError::Degenerate);
    }
    let cd = if orientation < 0 { cd.map(|x| -x) } else { cd };
    let s = columns([&src[0], &src[1], &src[2], &cs]);
    let t = columns([&dst[0], &dst[1], &dst[2], &cd]);
    let s_inv = inverse(&s).ok_or(LorentzError::Degenerate)?;
    Ok(mat_mul(&t, &s_inv))
}

fn columns(cols: [&Vec4; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

/// `c` with ⟨c, x⟩ = det(a, b, c, x) for every x.
fn dual_cross(t: &[Vec4; 3]) -> Vec4 {
    std::array::from_fn(|j| {
        let mut e = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        e[j] = QuadExt::one();
        let m = columns([&t[0], &t[1], &t[2], &e]);
        let v = det(&m);
        if linalg::J[j] < 0 {
            -v
        } else {
            v
        }
    })
}

#[cfg(test)]
mod tests {
    use super::linalg::*;
    use super::*;

    fn q(an: i64, ad: i64, bn: i64, bd: i64) -> QuadExt {
        QuadExt::from_parts(an, ad, bn, bd, 2)
    }

    #[test]
    fn tilt_values_for_cuboctahedron_neighbors() {
        let n = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::frac(1, 2)];
        let w = [q(7, 1, 0, 1), q(1, 1, 0, 1), q(0, 1, -5, 1), q(10, 1, 0, 1)];
        assert_eq!(tilt_excess(&n, &w), QuadExt::int(4));
        let w = [q(2, 1, 2, 1), q(0, 1, 0, 1), q(-2, 1, -2, 1), q(4, 1, 2, 1)];
        assert_eq!(tilt_excess(&n, &w), q(1, 1, 1, 1));
    }

    #[test]
    fn normal_scales_inversely() {
        let vs = vec![vec4([2, 0, 0, 2]), vec4([0, 2, 0, 2]), vec4([0, 0, 2, 2]), vec4([-2, 0, 0, 2])];
        let n = coplanar_normal(&vs).unwrap();
        assert!(!n.degenerate_span);
        assert_eq!(n.n, [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::frac(1, 2)]);
        let lam = QuadExt::int(3);
        let scaled: Vec<Vec4> = vs.iter().map(|v| scale(&lam, v)).collect();
        let m = coplanar_normal(&scaled).unwrap();
        assert_eq!(m.n, scale(&QuadExt::frac(1, 3), &n.n));
    }

    #[test]
    fn underdetermined_normal_is_flagged() {
        let vs = vec![vec4([1, 0, 0, 1]), vec4([0, 1, 0, 1]), vec4([-1, 0, 0, 1])];
        let n = coplanar_normal(&vs).unwrap();
        assert!(n.degenerate_span);
        for v in &vs {
            assert_eq!(dot(&n.n, v), QuadExt::one());
        }
    }

    #[test]
    fn off_plane_vectors_have_no_normal() {
        let vs = vec![
            vec4([1, 0, 0, 1]),
            vec4([0, 1, 0, 1]),
            vec4([-1, 0, 0, 1]),
            vec4([0, 0, 1, 1]),
            vec4([3, 4, 0, 5]),
        ];
        assert!(coplanar_normal(&vs).is_none());
    }

    #[test]
    fn triple_isometry_identity_and_orientation() {
        let t = [vec4([1, 0, 0, 1]), vec4([0, 1, 0, 1]), vec4([0, 0, 1, 1])];
        let m = solve_triple_isometry(&t, &t, 1).unwrap();
        assert_eq!(m, identity());
        let r = solve_triple_isometry(&t, &t, -1).unwrap();
        assert!(is_lorentz_isometry(&r));
        assert_eq!(det(&r), QuadExt::int(-1));
        assert_eq!(mat_mul(&r, &r), identity());
    }

    #[test]
    fn triple_isometry_gram_mismatch() {
        let s = [vec4([1, 0, 0, 1]), vec4([0, 1, 0, 1]), vec4([0, 0, 1, 1])];
        let t = [vec4([2, 0, 0, 2]), vec4([0, 1, 0, 1]), vec4([0, 0, 1, 1])];
        assert_eq!(solve_triple_isometry(&s, &t, 1), Err(LorentzError::GramMismatch));
    }
}
