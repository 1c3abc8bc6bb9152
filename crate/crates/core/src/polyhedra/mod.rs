//! Andreev validation, prismatic circuits, crushtaceans and their enumeration,
//! Löbell polyhedra, automorphism groups and truncation.

pub mod canon;
pub mod crush;
pub mod enumerate;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::cellkit::{build_polyhedron, CellError, Polyhedron};

pub use canon::{automorphism_group, canonical_code, code_string, isomorphic, Automorphism};
pub use crush::{decompose_crushtacean, full_decomposition, full_decomposition_exhaustive, piece_name};
pub use enumerate::{enumerate_crushtaceans, enumerate_rightangled, CatalogEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("faces do not form a prismatic 3-circuit")]
    NotPrismatic,
    #[error("n must be at least 3, got {0}")]
    BadN(usize),
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// Standard small polyhedra.
pub mod shapes {
    use super::*;

    pub fn tetrahedron() -> Polyhedron {
        build_polyhedron(vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]]).unwrap()
    }

    /// Apex 0, equator 1..4, apex 5.
    pub fn octahedron() -> Polyhedron {
        build_polyhedron(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ])
        .unwrap()
    }

    /// Top k-gon on 0..k, bottom on k..2k, vertical edges i to k+i.
    pub fn prism(k: usize) -> Polyhedron {
        let mut faces = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).rev().collect()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![j, i, k + i, k + j]);
        }
        build_polyhedron(faces).unwrap()
    }

    pub fn cube() -> Polyhedron {
        prism(4)
    }

    pub fn antiprism(k: usize) -> Polyhedron {
        let mut faces = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).rev().collect()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![j, i, k + i]);
            faces.push(vec![j, k + i, k + j]);
        }
        build_polyhedron(faces).unwrap()
    }

    pub fn cuboctahedron() -> Polyhedron {
        super::truncate(&cube()).poly
    }
}

/// Cyclic chain of faces, consecutive ones sharing an edge, no three with a common vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismaticCircuit {
    pub faces: Vec<usize>,
    /// `edges[i]` is shared by `faces[i]` and `faces[i+1]`.
    pub edges: Vec<usize>,
}

fn shared_edge(p: &Polyhedron, f: usize, g: usize) -> Option<usize> {
    let face = p.face(f);
    (0..face.len()).map(|k| (k, p.across(f, k))).find(|(_, (h, _))| *h == g).map(|(k, _)| p.side_edge(f, k))
}

/// All prismatic k-circuits, one per cyclic rotation and reflection class.
pub fn prismatic_circuits(p: &Polyhedron, k: usize) -> Vec<PrismaticCircuit> {
    let sets: Vec<BTreeSet<usize>> = p.faces().iter().map(|f| f.iter().copied().collect()).collect();
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..p.num_faces() {
        path.clear();
        path.push(s);
        extend(p, &sets, k, &mut path, &mut out);
    }
    out
}

fn extend(p: &Polyhedron, sets: &[BTreeSet<usize>], k: usize, path: &mut Vec<usize>, out: &mut Vec<PrismaticCircuit>) {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if k >= 3 && p.neighbors(last).contains(&s) && path[1] < path[k - 1] && no_triple_vertex(sets, path) {
            let edges = (0..k).map(|i| shared_edge(p, path[i], path[(i + 1) % k]).unwrap()).collect();
            out.push(PrismaticCircuit { faces: path.clone(), edges });
        }
        return;
    }
    for &g in p.neighbors(last) {
        if g > s && !path.contains(&g) {
            path.push(g);
            extend(p, sets, k, path, out);
            path.pop();
        }
    }
}

fn no_triple_vertex(sets: &[BTreeSet<usize>], faces: &[usize]) -> bool {
    let k = faces.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let (x, y, z) = (&sets[faces[a]], &sets[faces[b]], &sets[faces[c]]);
                if x.iter().any(|v| y.contains(v) && z.contains(v)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AndreevFailure {
    Valence { vertex: usize, valence: usize },
    Prismatic3(Vec<usize>),
    Prismatic4(Vec<usize>),
    /// `f0` and `f2` both meet `f1` in an edge and share `vertex`, which is not on `f1`.
    SharedVertex { f0: usize, f1: usize, f2: usize, vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AndreevReport {
    pub pass: bool,
    pub failure: Option<AndreevFailure>,
}

/// Combinatorial conditions for a right-angled ideal realization.
pub fn andreev_validate(p: &Polyhedron) -> AndreevReport {
    let fail = |f| AndreevReport { pass: false, failure: Some(f) };
    if let Some((&vertex, &valence)) = p.valences().iter().find(|(_, &d)| d != 4) {
        return fail(AndreevFailure::Valence { vertex, valence });
    }
    if let Some(c) = prismatic_circuits(p, 3).into_iter().next() {
        return fail(AndreevFailure::Prismatic3(c.faces));
    }
    if let Some(c) = prismatic_circuits(p, 4).into_iter().next() {
        return fail(AndreevFailure::Prismatic4(c.faces));
    }
    let sets: Vec<BTreeSet<usize>> = p.faces().iter().map(|f| f.iter().copied().collect()).collect();
    for f1 in 0..p.num_faces() {
        let ns = p.neighbors(f1);
        for (i, &f0) in ns.iter().enumerate() {
            for &f2 in &ns[i + 1..] {
                if let Some(&vertex) = sets[f0].iter().find(|v| sets[f2].contains(v) && !sets[f1].contains(v)) {
                    return fail(AndreevFailure::SharedVertex { f0, f1, f2, vertex });
                }
            }
        }
    }
    AndreevReport { pass: true, failure: None }
}

/// Truncation of a 3-valent polyhedron together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub poly: Polyhedron,
    /// Ideal vertex `i` of `poly` sits at the midpoint of `edges[i]` of the crushtacean.
    pub edges: Vec<(usize, usize)>,
    /// Face of `poly` coming from each crushtacean face.
    pub white: Vec<usize>,
    /// Triangle of `poly` at each crushtacean vertex.
    pub black: BTreeMap<usize, usize>,
}

impl Truncation {
    pub fn is_black(&self, f: usize) -> bool {
        f >= self.white.len()
    }
}

/// One ideal vertex per edge, a white k-gon per k-gon and a black triangle per vertex.
pub fn truncate(c: &Polyhedron) -> Truncation {
    let edges = c.edges().to_vec();
    let id = |u: usize, v: usize| c.edge_id(u, v).unwrap();
    let mut faces: Vec<Vec<usize>> = c
        .faces()
        .iter()
        .map(|f| (0..f.len()).map(|k| id(f[k], f[(k + 1) % f.len()])).collect())
        .collect();
    let white: Vec<usize> = (0..faces.len()).collect();
    let mut black = BTreeMap::new();
    for (v, ns) in c.rotation() {
        black.insert(v, faces.len());
        faces.push(ns.iter().map(|&w| id(v, w)).collect());
    }
    let poly = build_polyhedron(faces).expect("truncation of a 3-valent polyhedron");
    Truncation { poly, edges, white, black }
}

/// The Löbell polyhedron: n-gons as faces 0 and 1, each ringed by n pentagons.
pub fn lobell(n: usize) -> Result<Polyhedron, PolyError> {
    if n < 3 {
        return Err(PolyError::BadN(n));
    }
    let (a, b, bb, aa) = (|i: usize| i % n, |i: usize| n + i % n, |i: usize| 2 * n + i % n, |i: usize| 3 * n + i % n);
    let mut faces = vec![(0..n).map(a).collect::<Vec<_>>(), (0..n).rev().map(aa).collect()];
    for i in 0..n {
        faces.push(vec![a(i + 1), a(i), b(i), bb(i), b(i + 1)]);
        faces.push(vec![aa(i), aa(i + 1), bb(i + 1), b(i + 1), bb(i)]);
    }
    Ok(build_polyhedron(faces)?)
}

/// Dual-graph distance between two faces.
pub fn face_distance(p: &Polyhedron, f: usize, g: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; p.num_faces()];
    dist[f] = 0;
    let mut queue = std::collections::VecDeque::from([f]);
    while let Some(x) = queue.pop_front() {
        for &y in p.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    (dist[g] != usize::MAX).then_some(dist[g])
}

/// Number of faces of each size.
pub fn face_vector(p: &Polyhedron) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for f in p.faces() {
        *m.entry(f.len()).or_insert(0) += 1;
    }
    m
}

/// Generators b, s, a of the symmetry group of L(n) satisfying the defining relations.
#[derive(Clone, Debug)]
pub struct LobellGenerators {
    pub b: Automorphism,
    pub s: Automorphism,
    pub a: Automorphism,
}

impl LobellGenerators {
    /// Check every relation: bⁿ = s² = a² = 1, sbs = b⁻¹, aba = b⁻¹, asa = bs.
    pub fn relations_hold(&self, n: usize) -> bool {
        let (b, s, a) = (&self.b, &self.s, &self.a);
        let mut bn = b.clone();
        for _ in 1..n {
            bn = b.compose(&bn);
        }
        let binv = b.inverse();
        bn.is_identity()
            && s.compose(s).is_identity()
            && a.compose(a).is_identity()
            && s.compose(b).compose(s) == binv
            && a.compose(b).compose(a) == binv
            && a.compose(s).compose(a) == b.compose(s)
    }
}

/// Search the automorphism group of `lobell(n)` for b, s, a.
pub fn lobell_generators(n: usize) -> Result<LobellGenerators, PolyError> {
    let p = lobell(n)?;
    let group = automorphism_group(&p);
    let fixes = |g: &Automorphism, f: usize| g.face_image(&p, f) == f;
    let bs: Vec<&Automorphism> =
        group.iter().filter(|g| g.preserves_orientation && fixes(g, 0) && g.order() == n).collect();
    let ss: Vec<&Automorphism> =
        group.iter().filter(|g| !g.preserves_orientation && fixes(g, 0) && g.order() == 2).collect();
    let as_: Vec<&Automorphism> =
        group.iter().filter(|g| g.preserves_orientation && g.face_image(&p, 0) == 1 && g.order() == 2).collect();
    for b in &bs {
        for s in &ss {
            for a in &as_ {
                let gens = LobellGenerators { b: (*b).clone(), s: (*s).clone(), a: (*a).clone() };
                if gens.relations_hold(n) {
                    return Ok(gens);
                }
            }
        }
    }
    Err(PolyError::BadN(n))
}

/// Size of the subgroup generated by `gens`.
pub fn generated_order(gens: &[Automorphism]) -> usize {
    let mut seen: BTreeSet<Automorphism> = BTreeSet::new();
    let id = Automorphism {
        map: gens[0].map.keys().map(|&k| (k, k)).collect(),
        preserves_orientation: true,
    };
    let mut frontier = vec![id.clone()];
    seen.insert(id);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}
