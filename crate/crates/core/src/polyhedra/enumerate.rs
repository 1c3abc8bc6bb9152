//! Small catalogs: right-angled candidates via quadrangulations, crushtaceans via
//! edge insertion from the tetrahedron. Isomorphs are rejected by canonical code.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::canon::{automorphism_group, canonical_code, code_string, Rotation};
use super::crush::faces_from_rotation;
use super::{andreev_validate, face_vector, prismatic_circuits, shapes};
use crate::cellkit::{build_polyhedron, Polyhedron};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    #[serde(skip)]
    pub poly: Polyhedron,
    pub code: String,
    pub vertices: usize,
    pub edges: usize,
    pub face_vector: BTreeMap<usize, usize>,
    pub aut_order: usize,
}

impl CatalogEntry {
    pub fn new(poly: Polyhedron) -> Self {
        CatalogEntry {
            code: code_string(&canonical_code(&poly)),
            vertices: poly.num_vertices(),
            edges: poly.num_edges(),
            face_vector: face_vector(&poly),
            aut_order: automorphism_group(&poly).len(),
            poly,
        }
    }
}

type Rot = BTreeMap<usize, Vec<usize>>;

fn rot_code(r: &Rot) -> Vec<usize> {
    let labels: Vec<usize> = r.keys().copied().collect();
    let idx: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rot = r.values().map(|ns| ns.iter().map(|v| idx[v]).collect()).collect();
    Rotation { labels, rot }.canonical().0
}

fn rotation_from_faces(faces: &[Vec<usize>]) -> Rot {
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for f in faces {
        let n = f.len();
        for k in 0..n {
            succ.insert((f[(k + n - 1) % n], f[k]), f[(k + 1) % n]);
        }
    }
    let mut r = Rot::new();
    for f in faces {
        for &v in f {
            if r.contains_key(&v) {
                continue;
            }
            let start = *succ.keys().find(|(_, b)| *b == v).map(|(a, _)| a).unwrap();
            let mut order = vec![start];
            let mut cur = succ[&(start, v)];
            while cur != start {
                order.push(cur);
                cur = succ[&(cur, v)];
            }
            r.insert(v, order);
        }
    }
    r
}

/// Expand every parent, keeping one representative per canonical code.
fn expand_level<T: Send + Sync, F>(parents: &[T], jobs: usize, expand: F) -> Vec<T>
where
    F: Fn(&T) -> Vec<(Vec<usize>, T)> + Sync,
{
    let jobs = jobs.max(1);
    let chunk = parents.len().div_ceil(jobs).max(1);
    let results: Vec<Vec<(Vec<usize>, T)>> = std::thread::scope(|s| {
        let handles: Vec<_> = parents
            .chunks(chunk)
            .map(|part| {
                let expand = &expand;
                s.spawn(move || part.iter().flat_map(expand).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut seen: BTreeMap<Vec<usize>, T> = BTreeMap::new();
    for (code, item) in results.into_iter().flatten() {
        seen.entry(code).or_insert(item);
    }
    seen.into_values().collect()
}

fn is_quadrangulation(r: &Rot, faces: &[Vec<usize>]) -> bool {
    let v = r.len() as i64;
    let e = r.values().map(|n| n.len()).sum::<usize>() as i64 / 2;
    faces.iter().all(|f| f.len() == 4) && v - e + faces.len() as i64 == 2
}

/// Children of a quadrangulation under face insertion and vertex splitting.
fn quad_children(r: &Rot) -> Vec<(Vec<usize>, Rot)> {
    let mut out = Vec::new();
    let n = r.keys().max().unwrap() + 1;
    let faces = faces_from_rotation(r);
    // a new degree-2 vertex across a diagonal
    for f in &faces {
        for shift in 0..2 {
            let (a, b, c, d) = (f[shift], f[shift + 1], f[(shift + 2) % 4], f[(shift + 3) % 4]);
            let mut nf: Vec<Vec<usize>> = faces.iter().filter(|g| *g != f).cloned().collect();
            nf.push(vec![a, b, c, n]);
            nf.push(vec![a, n, c, d]);
            let nr = rotation_from_faces(&nf);
            out.push((rot_code(&nr), nr));
        }
    }
    // split a vertex along two of its neighbours, opening a new face
    for (&v, ns) in r {
        let d = ns.len();
        for p in 0..d {
            for q in p + 1..d {
                let (a, c) = (ns[p], ns[q]);
                let keep: Vec<usize> = ns[p..=q].to_vec();
                let moved: Vec<usize> = (q..q + d - (q - p) + 1).map(|i| ns[i % d]).collect();
                let mut base = r.clone();
                base.insert(v, keep);
                base.insert(n, moved.clone());
                for &w in &moved[1..moved.len() - 1] {
                    for x in base.get_mut(&w).unwrap().iter_mut() {
                        if *x == v {
                            *x = n;
                        }
                    }
                }
                for (before_a, before_c) in [(true, true), (true, false), (false, true), (false, false)] {
                    let mut nr = base.clone();
                    for (end, before) in [(a, before_a), (c, before_c)] {
                        let list = nr.get_mut(&end).unwrap();
                        let i = list.iter().position(|&x| x == v).unwrap();
                        list.insert(if before { i } else { i + 1 }, n);
                    }
                    let nf = faces_from_rotation(&nr);
                    if is_quadrangulation(&nr, &nf) {
                        out.push((rot_code(&nr), nr));
                        break;
                    }
                }
            }
        }
    }
    out
}

/// Simple quadrangulations of the sphere on 4..=max_vertices vertices, by vertex count.
pub fn quadrangulations(max_vertices: usize, jobs: usize) -> BTreeMap<usize, Vec<Rot>> {
    let c4 = rotation_from_faces(&[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    let mut levels = BTreeMap::new();
    let mut cur = vec![c4];
    let mut nv = 4;
    while nv <= max_vertices {
        levels.insert(nv, cur.clone());
        if nv == max_vertices {
            break;
        }
        cur = expand_level(&cur, jobs, quad_children);
        nv += 1;
    }
    levels
}

fn dual_of_quadrangulation(r: &Rot) -> Option<Polyhedron> {
    if r.values().any(|ns| ns.len() < 3) {
        return None;
    }
    let faces = faces_from_rotation(r);
    let mut dart_face = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..f.len() {
            dart_face.insert((f[k], f[(k + 1) % f.len()]), i);
        }
    }
    let dual: Vec<Vec<usize>> = r.iter().map(|(&v, ns)| ns.iter().map(|&u| dart_face[&(u, v)]).collect()).collect();
    build_polyhedron(dual).ok()
}

/// 4-valent sphere polyhedra on at most `vmax` vertices that pass Andreev's conditions.
pub fn enumerate_rightangled(vmax: usize) -> Vec<CatalogEntry> {
    enumerate_rightangled_jobs(vmax, 1)
}

pub fn enumerate_rightangled_jobs(vmax: usize, jobs: usize) -> Vec<CatalogEntry> {
    if vmax < 6 {
        return vec![];
    }
    let mut out = Vec::new();
    for (_, level) in quadrangulations(vmax + 2, jobs) {
        for q in level {
            if let Some(p) = dual_of_quadrangulation(&q) {
                if andreev_validate(&p).pass {
                    out.push(CatalogEntry::new(p));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.vertices, &a.code).cmp(&(b.vertices, &b.code)));
    out
}

/// Insert an edge across a face, joining midpoints of two of its sides.
fn cubic_children(p: &Polyhedron) -> Vec<(Vec<usize>, Polyhedron)> {
    let mut out = Vec::new();
    let x = p.vertices().iter().max().unwrap() + 1;
    let y = x + 1;
    for f in 0..p.num_faces() {
        let face = p.face(f);
        let k = face.len();
        for i in 0..k {
            for j in i + 1..k {
                let (ni, _) = p.across(f, i);
                let (nj, _) = p.across(f, j);
                let mut faces: Vec<Vec<usize>> = p.faces().to_vec();
                let mut f1 = vec![x];
                f1.extend((i + 1..=j).map(|t| face[t]));
                f1.push(y);
                let mut f2 = vec![y];
                f2.extend((j + 1..=i + k).map(|t| face[t % k]));
                f2.push(x);
                for (nb, (s, t), new) in [(ni, (face[i], face[(i + 1) % k]), x), (nj, (face[j], face[(j + 1) % k]), y)] {
                    let g = &mut faces[nb];
                    let m = g.len();
                    let pos = (0..m).find(|&r| g[r] == t && g[(r + 1) % m] == s).unwrap();
                    g.insert(pos + 1, new);
                }
                faces[f] = f1;
                faces.push(f2);
                if let Ok(q) = build_polyhedron(faces) {
                    out.push((canonical_code(&q), q));
                }
            }
        }
    }
    out
}

/// 3-valent sphere polyhedra on at most `vmax` vertices, optionally only those
/// without prismatic 3-circuits.
pub fn enumerate_crushtaceans(vmax: usize, indecomposable_only: bool) -> Vec<CatalogEntry> {
    enumerate_crushtaceans_jobs(vmax, indecomposable_only, 1)
}

pub fn enumerate_crushtaceans_jobs(vmax: usize, indecomposable_only: bool, jobs: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut cur = vec![shapes::tetrahedron()];
    let mut nv = 4;
    while nv <= vmax {
        for p in &cur {
            if !indecomposable_only || prismatic_circuits(p, 3).is_empty() {
                out.push(CatalogEntry::new(p.clone()));
            }
        }
        if nv + 2 > vmax {
            break;
        }
        cur = expand_level(&cur, jobs, cubic_children);
        nv += 2;
    }
    out.sort_by(|a, b| (a.vertices, &a.code).cmp(&(b.vertices, &b.code)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::isomorphic;

    #[test]
    fn quadrangulation_counts() {
        let levels = quadrangulations(10, 2);
        let counts: Vec<usize> = levels.values().map(|l| l.len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 9, 18, 62]);
    }

    #[test]
    fn cubic_counts() {
        let all = enumerate_crushtaceans_jobs(12, false, 2);
        let mut by_v = BTreeMap::new();
        for e in &all {
            *by_v.entry(e.vertices).or_insert(0) += 1;
        }
        assert_eq!(by_v.values().copied().collect::<Vec<_>>(), [1, 1, 2, 5, 14]);
    }

    #[test]
    fn small_rightangled() {
        assert!(enumerate_rightangled(5).is_empty());
        let six = enumerate_rightangled(6);
        assert_eq!(six.len(), 1);
        assert!(isomorphic(&six[0].poly, &shapes::octahedron()));
    }

    #[test]
    fn nine_vertex_rightangled() {
        // 4-valence only forces e = 2v, so odd vertex counts are possible
        let nine: Vec<CatalogEntry> = enumerate_rightangled(9).into_iter().filter(|e| e.vertices == 9).collect();
        assert_eq!(nine.len(), 1);
        assert_eq!(nine[0].face_vector, BTreeMap::from([(3, 8), (4, 3)]));
        assert!(andreev_validate(&nine[0].poly).pass);
        assert!(enumerate_rightangled(8).iter().all(|e| e.vertices != 7));
    }
}
