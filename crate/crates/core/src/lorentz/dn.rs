//! The chain of n right-angled cuboctahedra capped by two octahedra, over Q(√2).
//!
//! Tiles: P1 = h(octahedron), P2 = cuboctahedron, P_i = c^{i-2}(P2),
//! P_{n+2} = c^{n-1} r h(octahedron). All tiles share the vertex m1.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;

use super::hull::klein_hull;
use super::linalg::{mat_mul, mat_vec, Mat4, Vec4};
use super::quadext::QuadExt;
use super::tiling::{Certificate, Exact, FaceColor, TileDef, TilingSpec, VectorDef};
use super::{solve_triple_isometry, LorentzError};

const D: i64 = 2;

fn q(a: i64, b: i64) -> QuadExt {
    QuadExt::from_parts(a, 1, b, 1, D)
}

/// Columns of the cuboctahedron matrix; `(x, y, z√2-coefficient)` with last entry 2.
pub fn cuboctahedron() -> Vec<Vec4> {
    let cols: [(i64, i64, i64); 12] = [
        (2, 0, 0),
        (1, 1, 1),
        (0, 2, 0),
        (1, 1, -1),
        (0, -2, 0),
        (-1, -1, 1),
        (-2, 0, 0),
        (-1, -1, -1),
        (1, -1, -1),
        (-1, 1, -1),
        (-1, 1, 1),
        (1, -1, 1),
    ];
    cols.iter().map(|&(x, y, z)| [q(x, 0), q(y, 0), q(0, z), q(2, 0)]).collect()
}

/// Columns of the octahedron matrix, each entry a multiple of √2.
pub fn octahedron() -> Vec<Vec4> {
    let axes: [(usize, i64); 6] = [(0, 1), (1, 1), (2, 1), (0, -1), (1, -1), (2, -1)];
    axes.iter()
        .map(|&(k, s)| {
            let mut v = [q(0, 0), q(0, 0), q(0, 0), q(0, 1)];
            v[k] = q(0, s);
            v
        })
        .collect()
}

fn exact_matrix(m: &Mat4) -> [[Exact; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| Exact::from_quad(&m[i][j])))
}

fn exact_vec(v: &Vec4) -> [Exact; 4] {
    std::array::from_fn(|i| Exact::from_quad(&v[i]))
}

/// Does `m` permute the given vectors?
fn permutes(m: &Mat4, vs: &[Vec4]) -> bool {
    vs.iter().all(|v| vs.contains(&mat_vec(m, v)))
}

/// Orientation-preserving symmetry of `vs` taking oriented triangle `from` onto `to`.
fn triangle_symmetry(vs: &[Vec4], from: &[usize], to: &[usize]) -> Result<Mat4, LorentzError> {
    let src = [vs[from[0]].clone(), vs[from[1]].clone(), vs[from[2]].clone()];
    for r in 0..3 {
        let dst = [vs[to[r]].clone(), vs[to[(r + 1) % 3]].clone(), vs[to[(r + 2) % 3]].clone()];
        let m = solve_triple_isometry(&src, &dst, 1)?;
        if permutes(&m, vs) {
            return Ok(m);
        }
    }
    Err(LorentzError::BadSpec("no symmetry between triangles".into()))
}

fn reflection_across(vs: &[Vec4], face: &[usize]) -> Result<Mat4, LorentzError> {
    let t = [vs[face[0]].clone(), vs[face[1]].clone(), vs[face[2]].clone()];
    solve_triple_isometry(&t, &t, -1)
}

fn find(vs: &[Vec4], v: &Vec4) -> usize {
    vs.iter().position(|x| x == v).expect("vertex present")
}

/// Triangles of the cuboctahedron colored by the octahedral gluing pattern.
/// Returns, per hull face of P2, `Some(true)` for the class glued to P1's side
/// ("gray" on P2) and `Some(false)` for the other triangles; squares get `None`.
fn p2_triangle_classes(faces: &[Vec<usize>], t: usize, t_prime: usize) -> Vec<Option<bool>> {
    let tris: Vec<usize> = (0..faces.len()).filter(|&f| faces[f].len() == 3).collect();
    let adjacent = |a: usize, b: usize| a != b && faces[a].iter().any(|v| faces[b].contains(v));
    let mut u: Vec<usize> = tris.iter().copied().filter(|&f| f != t_prime && adjacent(f, t)).collect();
    // U1 is the neighbor of T through T's second vertex (m9)
    u.sort_by_key(|&f| !faces[f].contains(&faces[t][1]));
    let x = tris
        .iter()
        .copied()
        .find(|&f| f != t && adjacent(f, u[0]) && adjacent(f, t_prime))
        .expect("cube structure");
    let gray = [t, u[0], u[1], x];
    (0..faces.len()).map(|f| if faces[f].len() == 3 { Some(gray.contains(&f)) } else { None }).collect()
}

fn rotate_to_front(face: &[usize], v: usize) -> Vec<usize> {
    let k = face.iter().position(|&x| x == v).expect("vertex on face");
    (0..face.len()).map(|i| face[(k + i) % face.len()]).collect()
}

fn power(letter: &str, k: usize) -> Vec<String> {
    vec![letter.to_string(); k]
}

/// Tiling spec for the chain of length `n` with neighbor certificates and face colors.
pub fn build_dn_spec(n: usize) -> Result<TilingSpec, LorentzError> {
    if n < 2 {
        return Err(LorentzError::BadN(n));
    }
    let m = cuboctahedron();
    let oct = octahedron();
    let (m1, m4, m9) = (0usize, 3usize, 8usize);
    // (n1,n2,n3) and (m1,m9,m4) both run counterclockwise seen from outside their
    // solids, so the map putting the octahedron on the far side of the face reverses
    // orientation
    let h = solve_triple_isometry(
        &[oct[0].clone(), oct[1].clone(), oct[2].clone()],
        &[m[m1].clone(), m[m9].clone(), m[m4].clone()],
        -1,
    )?;
    let p1: Vec<Vec4> = oct.iter().map(|v| mat_vec(&h, v)).collect();

    let hull2 = klein_hull(&m)?;
    let tri_at = |a: usize, b: usize, c: usize| {
        hull2.faces.iter().position(|f| f.len() == 3 && f.contains(&a) && f.contains(&b) && f.contains(&c))
    };
    let t = tri_at(m1, m9, m4).expect("triangle T");
    let t_face = rotate_to_front(&hull2.faces[t], m1);
    let t_prime = hull2
        .faces
        .iter()
        .position(|f| f.len() == 3 && f.contains(&m1) && !f.contains(&m9) && !f.contains(&m4))
        .expect("triangle T'");
    // r fixes m1 and swaps T with T'
    let tp_face = rotate_to_front(&hull2.faces[t_prime], m1);
    let r = solve_triple_isometry(
        &[m[t_face[0]].clone(), m[t_face[1]].clone(), m[t_face[2]].clone()],
        &[m[tp_face[0]].clone(), m[tp_face[2]].clone(), m[tp_face[1]].clone()],
        -1,
    )?;
    if !permutes(&r, &m) {
        return Err(LorentzError::BadSpec("r is not a symmetry of the cuboctahedron".into()));
    }
    let c = mat_mul(&reflection_across(&m, &tp_face)?, &r);
    let classes = p2_triangle_classes(&hull2.faces, t, t_prime);

    let hull1 = klein_hull(&p1)?;
    let p1_t = hull1
        .faces
        .iter()
        .position(|f| {
            let mut s: Vec<usize> = f.iter().map(|&i| find(&m, &p1[i])).collect();
            s.sort_unstable();
            s == vec![m1, m4, m9]
        })
        .expect("P1 meets P2 in T");
    let p1_t_face = hull1.faces[p1_t].clone();

    let mut matrices: IndexMap<String, [[Exact; 4]; 4]> = IndexMap::new();
    matrices.insert("h".into(), exact_matrix(&h));
    matrices.insert("r".into(), exact_matrix(&r));
    matrices.insert("c".into(), exact_matrix(&c));
    for (k, f) in hull2.faces.iter().enumerate() {
        matrices.insert(format!("rho{k}"), exact_matrix(&reflection_across(&m, f)?));
        if f.len() == 3 {
            let fr = rotate_to_front(f, f[0]);
            matrices.insert(format!("sym{k}"), exact_matrix(&triangle_symmetry(&m, &t_face, &fr)?));
        }
    }
    for (k, f) in hull1.faces.iter().enumerate() {
        matrices.insert(format!("osym{k}"), exact_matrix(&triangle_symmetry(&p1, &p1_t_face, f)?));
    }

    let mut vectors: IndexMap<String, VectorDef> = IndexMap::new();
    let orbit = Some("1".to_string());
    for (k, v) in m.iter().enumerate() {
        vectors.insert(format!("m{}", k + 1), VectorDef::Explicit { coords: exact_vec(v), orbit: orbit.clone() });
    }
    for (k, v) in oct.iter().enumerate() {
        vectors.insert(format!("n{}", k + 1), VectorDef::Explicit { coords: exact_vec(v), orbit: orbit.clone() });
    }
    let mut tile_vertices: Vec<Vec<String>> = Vec::new();
    let mut p1_names = Vec::new();
    for k in 0..6 {
        let name = format!("P1.{}", k + 1);
        vectors.insert(
            name.clone(),
            VectorDef::Derived { word: vec!["h".into()], base: format!("n{}", k + 1), orbit: orbit.clone() },
        );
        p1_names.push(name);
    }
    tile_vertices.push(p1_names);
    tile_vertices.push((0..12).map(|k| format!("m{}", k + 1)).collect());
    for i in 3..=n + 1 {
        let mut names = Vec::new();
        for k in 0..12 {
            let name = format!("P{i}.{}", k + 1);
            vectors.insert(
                name.clone(),
                VectorDef::Derived { word: power("c", i - 2), base: format!("m{}", k + 1), orbit: orbit.clone() },
            );
            names.push(name);
        }
        tile_vertices.push(names);
    }
    let mut last = Vec::new();
    for k in 0..6 {
        let name = format!("P{}.{}", n + 2, k + 1);
        let mut word = power("c", n - 1);
        word.extend(["r".to_string(), "h".to_string()]);
        vectors.insert(name.clone(), VectorDef::Derived { word, base: format!("n{}", k + 1), orbit: orbit.clone() });
        last.push(name);
    }
    tile_vertices.push(last);

    let mut tiles = Vec::new();
    for (idx, names) in tile_vertices.iter().enumerate() {
        let i = idx + 1;
        let mut colors = Vec::new();
        if (2..=n + 1).contains(&i) {
            for (k, f) in hull2.faces.iter().enumerate() {
                let Some(first_class) = classes[k] else { continue };
                let color = match (i, first_class) {
                    (2, true) => "gray",
                    (2, false) => "white",
                    (_, true) if i == n + 1 => "white",
                    (_, false) if i == n + 1 => "gray",
                    (_, true) => "red",
                    (_, false) => "white",
                };
                colors.push(FaceColor { face: f.iter().map(|&v| names[v].clone()).collect(), color: color.into() });
            }
        }
        tiles.push(TileDef { name: format!("P{i}"), vertices: names.clone(), colors });
    }

    let mut spec = TilingSpec {
        d: D,
        name: Some(format!("D{n}")),
        matrices,
        generators: Vec::new(),
        vectors,
        scaled: Vec::new(),
        beta: None,
        tiles,
        certificates: Vec::new(),
        breakpoints: Vec::new(),
    };

    // neighbor rule per face: (tile, face cycle in tile indices, word, neighbor)
    let mut plan: Vec<(usize, Vec<usize>, Vec<String>, usize)> = Vec::new();
    for (k, f) in hull1.faces.iter().enumerate() {
        plan.push((0, f.clone(), vec![format!("osym{k}")], 1));
    }
    for i in 2..=n + 1 {
        let ti = i - 1;
        let conj = |core: Vec<String>| {
            let mut w = power("c", i - 2);
            w.extend(core);
            w.extend(power("c'", i - 2));
            w
        };
        for (k, f) in hull2.faces.iter().enumerate() {
            let plan_entry = match classes[k] {
                Some(true) if i == 2 => (vec![format!("sym{k}")], 0),
                Some(false) if i == n + 1 => (conj(vec![format!("sym{k}"), "r".into()]), n + 1),
                _ => (conj(vec![format!("rho{k}")]), ti),
            };
            plan.push((ti, f.clone(), plan_entry.0, plan_entry.1));
        }
    }
    for (k, f) in hull1.faces.iter().enumerate() {
        let mut w = power("c", n - 1);
        w.extend(["r".to_string(), format!("osym{k}"), "r".to_string()]);
        w.extend(power("c'", n - 1));
        plan.push((n + 1, f.clone(), w, n));
    }

    let real = spec.realize(&QuadExt::one().with_field(D))?;
    for (ti, face, word, nb) in plan {
        let g = real.word(&word)?;
        let moved: Vec<Vec4> = real.tiles[nb].iter().map(|v| mat_vec(&g, v)).collect();
        let index: HashMap<&Vec4, usize> = moved.iter().enumerate().map(|(j, v)| (v, j)).collect();
        let mut matching = Vec::new();
        for &v in &face {
            let j = *index.get(&real.tiles[ti][v]).ok_or_else(|| {
                LorentzError::BadSpec(format!("tile P{} face {:?}: neighbor does not contain the face", ti + 1, face))
            })?;
            matching.push([v, j]);
        }
        let extra = (0..moved.len()).filter(|j| !matching.iter().any(|m| m[1] == *j)).collect();
        let fidx = if ti == 0 || ti == n + 1 { &hull1 } else { &hull2 };
        let k = fidx.faces.iter().position(|f| f == &face).unwrap();
        spec.certificates.push(Certificate {
            label: format!("P{}.F{k}", ti + 1),
            tile: ti,
            word,
            neighbor: nb,
            matching,
            extra,
        });
    }
    Ok(spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleType {
    I,
    II,
}

fn tile_faces(spec: &TilingSpec, tile: usize) -> Result<(Vec<String>, Vec<Vec<usize>>), LorentzError> {
    let real = spec.realize(&QuadExt::one().with_field(spec.d))?;
    let vs = real.tiles.get(tile).ok_or_else(|| LorentzError::BadSpec("tile index out of range".into()))?;
    let hull = klein_hull(vs)?;
    let tris = hull.faces.iter().filter(|f| f.len() == 3).count();
    let squares = hull.faces.iter().filter(|f| f.len() == 4).count();
    if vs.len() != 12 || tris != 8 || squares != 6 {
        return Err(LorentzError::NotCuboctahedral);
    }
    Ok((spec.tiles[tile].vertices.clone(), hull.faces))
}

fn color_map(spec: &TilingSpec, tile: usize) -> BTreeMap<Vec<String>, String> {
    spec.tiles[tile]
        .colors
        .iter()
        .map(|fc| {
            let mut k = fc.face.clone();
            k.sort();
            (k, fc.color.clone())
        })
        .collect()
}

/// Classify a triangular face: type I iff exactly one of its vertices is shared
/// with a triangle of the other color.
pub fn triangle_type(spec: &TilingSpec, tile: usize, face: &[String]) -> Result<TriangleType, LorentzError> {
    let (names, faces) = tile_faces(spec, tile)?;
    let colors = color_map(spec, tile);
    let key = |f: &Vec<usize>| {
        let mut k: Vec<String> = f.iter().map(|&i| names[i].clone()).collect();
        k.sort();
        k
    };
    let mut want = face.to_vec();
    want.sort();
    let me = faces
        .iter()
        .find(|f| f.len() == 3 && key(f) == want)
        .ok_or_else(|| LorentzError::BadSpec("not a triangular face of the tile".into()))?;
    let my_color = colors.get(&want).ok_or_else(|| LorentzError::BadSpec("face has no color".into()))?;
    let mut opposite = 0;
    for &v in me {
        let other = faces.iter().find(|f| f.len() == 3 && *f != me && f.contains(&v)).expect("two triangles per vertex");
        if colors.get(&key(other)).is_some_and(|c| c != my_color) {
            opposite += 1;
        }
    }
    Ok(if opposite == 1 { TriangleType::I } else { TriangleType::II })
}

/// Vertices shared by two type I triangles, with the pair's color.
pub fn type_one_vertices(spec: &TilingSpec, tile: usize) -> Result<Vec<(String, String)>, LorentzError> {
    let (names, faces) = tile_faces(spec, tile)?;
    let colors = color_map(spec, tile);
    let tris: Vec<&Vec<usize>> = faces.iter().filter(|f| f.len() == 3).collect();
    let mut kinds = Vec::new();
    for f in &tris {
        let nm: Vec<String> = f.iter().map(|&i| names[i].clone()).collect();
        kinds.push(triangle_type(spec, tile, &nm)?);
    }
    let mut out = Vec::new();
    for v in 0..names.len() {
        let at: Vec<usize> = (0..tris.len()).filter(|&k| tris[k].contains(&v)).collect();
        if at.len() == 2 && at.iter().all(|&k| kinds[k] == TriangleType::I) {
            let mut k: Vec<String> = tris[at[0]].iter().map(|&i| names[i].clone()).collect();
            k.sort();
            let c0 = colors.get(&k).cloned().unwrap_or_default();
            let mut k1: Vec<String> = tris[at[1]].iter().map(|&i| names[i].clone()).collect();
            k1.sort();
            if colors.get(&k1) == Some(&c0) {
                out.push((names[v].clone(), c0));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::tiling::verify_generated_tiling;

    #[test]
    fn chain_of_two_verifies() {
        let spec = build_dn_spec(2).unwrap();
        assert_eq!(spec.tiles.len(), 4);
        let rep = verify_generated_tiling(&spec, &QuadExt::one().with_field(2)).unwrap();
        assert!(rep.uncovered.is_empty(), "{:?}", rep.uncovered);
        assert!(rep.pass, "{:?}", rep.certificates.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn small_n_rejected() {
        assert_eq!(build_dn_spec(1).unwrap_err(), LorentzError::BadN(1));
    }

    #[test]
    fn octahedra_have_no_triangle_type() {
        let spec = build_dn_spec(2).unwrap();
        let face: Vec<String> = spec.tiles[0].vertices[..3].to_vec();
        assert_eq!(triangle_type(&spec, 0, &face), Err(LorentzError::NotCuboctahedral));
    }
}

