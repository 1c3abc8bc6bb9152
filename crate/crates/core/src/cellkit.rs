//! Combinatorial polyhedra, face pairings and the quotient cell complex.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("face {0} is not a cycle of at least three distinct vertices")]
    BadFace(usize),
    #[error("edge {{{0},{1}}} lies in {2} faces")]
    EdgeDegree(usize, usize, usize),
    #[error("not a 2-sphere: {0}")]
    NotSphere(String),
    #[error("faces {0} and {1} meet in more than one edge or an extra vertex")]
    DoubleAdjacency(usize, usize),
    #[error("face {face} of polyhedron {poly} is not paired")]
    UnpairedFace { poly: usize, face: usize },
    #[error("bad pairing {index}: {reason}")]
    BadPairing { index: usize, reason: String },
    #[error("pairings identify an edge with its own reverse (edge class of polyhedron {poly}, edge {edge})")]
    InconsistentPairing { poly: usize, edge: usize },
    #[error("malformed input: {0}")]
    Json(String),
}

/// Union-find that also tracks a Z/2 offset between each element and its root.
#[derive(Clone, Debug)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n] }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (r, pp) = self.find(p);
        self.parent[x] = r;
        self.parity[x] ^= pp;
        (r, self.parity[x])
    }

    /// Record `offset(a) ⊕ offset(b) = rel`; returns false on contradiction.
    pub(crate) fn union(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ rel;
        true
    }

    /// Class index for every element, numbered by first appearance.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let mut ids = HashMap::new();
        let mut out = Vec::with_capacity(self.parent.len());
        for x in 0..self.parent.len() {
            let r = self.find(x).0;
            let next = ids.len();
            out.push(*ids.entry(r).or_insert(next));
        }
        (out, ids.len())
    }
}

/// A cell structure on the 2-sphere given by oriented face cycles.
///
/// Face 0 fixes the orientation; every other face is reoriented to agree with it.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    faces: Vec<Vec<usize>>,
    flipped: Vec<bool>,
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    edge_faces: Vec<[(usize, usize); 2]>,
    valence: BTreeMap<usize, usize>,
    dual: Vec<Vec<usize>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Polyhedron {
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.valence.get(&v).copied().unwrap_or(0)
    }

    pub fn valences(&self) -> &BTreeMap<usize, usize> {
        &self.valence
    }

    /// Faces sharing an edge with `f`, sorted.
    pub fn neighbors(&self, f: usize) -> &[usize] {
        &self.dual[f]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&key(u, v)).copied()
    }

    /// The two (face, side) darts along an edge; side k runs from position k to k+1.
    pub fn edge_darts(&self, e: usize) -> [(usize, usize); 2] {
        self.edge_faces[e]
    }

    /// Edge index of side `k` of face `f`.
    pub fn side_edge(&self, f: usize, k: usize) -> usize {
        let face = &self.faces[f];
        self.edge_index[&key(face[k], face[(k + 1) % face.len()])]
    }

    /// The dart across edge `side_edge(f, k)` in the other face.
    pub fn across(&self, f: usize, k: usize) -> (usize, usize) {
        let [a, b] = self.edge_faces[self.side_edge(f, k)];
        if a == (f, k) {
            b
        } else {
            a
        }
    }

    pub fn position(&self, f: usize, v: usize) -> Option<usize> {
        self.faces[f].iter().position(|&x| x == v)
    }

    /// Side of face `f` joining `u` and `v` (either order).
    pub fn side_between(&self, f: usize, u: usize, v: usize) -> Option<usize> {
        let n = self.faces[f].len();
        (0..n).find(|&k| key(self.faces[f][k], self.faces[f][(k + 1) % n]) == key(u, v))
    }

    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].contains(&v)).collect()
    }

    /// Position in the stored face of the input position `p` of face `f`.
    pub fn stored_position(&self, f: usize, p: usize) -> usize {
        let n = self.faces[f].len();
        if self.flipped[f] {
            (n - p % n) % n
        } else {
            p % n
        }
    }

    /// Successor of `u` around `v`: the vertex following `v` in the face where `u` precedes it.
    pub fn rotation(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
        for face in &self.faces {
            let n = face.len();
            for k in 0..n {
                succ.insert((face[(k + n - 1) % n], face[k]), face[(k + 1) % n]);
            }
        }
        let mut rot = BTreeMap::new();
        for &v in &self.vertices {
            let start = self
                .edges
                .iter()
                .find_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                .unwrap();
            let mut order = vec![start];
            let mut cur = succ[&(start, v)];
            while cur != start {
                order.push(cur);
                cur = succ[&(cur, v)];
            }
            rot.insert(v, order);
        }
        rot
    }

    /// Same polyhedron with every face cycle reversed.
    pub fn mirror(&self) -> Polyhedron {
        let faces = self.faces.iter().map(|f| f.iter().rev().copied().collect()).collect();
        build_polyhedron(faces).expect("mirror of a valid polyhedron")
    }

    /// Relabel vertices through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Polyhedron {
        let faces = self.faces.iter().map(|f| f.iter().map(|&v| map(v)).collect()).collect();
        build_polyhedron(faces).expect("relabelling keeps validity")
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyhedronJson { faces: self.faces.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyhedronJson::deserialize(d)?;
        build_polyhedron(raw.faces).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    faces: Vec<Vec<usize>>,
}

/// Validate a face list as a polyhedral 2-sphere and derive its incidence data.
pub fn build_polyhedron(faces: Vec<Vec<usize>>) -> Result<Polyhedron, CellError> {
    if faces.is_empty() {
        return Err(CellError::NotSphere("no faces".into()));
    }
    for (i, f) in faces.iter().enumerate() {
        let distinct: BTreeSet<_> = f.iter().collect();
        if f.len() < 3 || distinct.len() != f.len() {
            return Err(CellError::BadFace(i));
        }
    }
    let mut sides: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..f.len() {
            sides.entry(key(f[k], f[(k + 1) % f.len()])).or_default().push((i, k));
        }
    }
    for (&(u, v), list) in &sides {
        if list.len() != 2 {
            return Err(CellError::EdgeDegree(u, v, list.len()));
        }
    }

    // orient by propagation across edges
    let nf = faces.len();
    let mut flip: Vec<Option<bool>> = vec![None; nf];
    flip[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    let dir = |f: &Vec<usize>, k: usize| f[k] < f[(k + 1) % f.len()];
    while let Some(f) = queue.pop_front() {
        for k in 0..faces[f].len() {
            let e = key(faces[f][k], faces[f][(k + 1) % faces[f].len()]);
            let &(g, j) = sides[&e].iter().find(|&&(g, j)| (g, j) != (f, k)).unwrap();
            // traversal directions must disagree after flips
            let df = dir(&faces[f], k) ^ flip[f].unwrap();
            let want = !df;
            let need = dir(&faces[g], j) != want;
            match flip[g] {
                None => {
                    flip[g] = Some(need);
                    queue.push_back(g);
                }
                Some(x) if x != need => return Err(CellError::NotSphere("non-orientable face cycles".into())),
                _ => {}
            }
        }
    }
    if flip.iter().any(|x| x.is_none()) {
        return Err(CellError::NotSphere("disconnected".into()));
    }
    let flipped: Vec<bool> = flip.into_iter().map(|x| x.unwrap()).collect();
    let oriented: Vec<Vec<usize>> = faces
        .iter()
        .zip(&flipped)
        .map(|(f, &fl)| {
            if fl {
                let n = f.len();
                (0..n).map(|p| f[(n - p) % n]).collect()
            } else {
                f.clone()
            }
        })
        .collect();

    let edges: Vec<(usize, usize)> = sides.keys().copied().collect();
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut edge_faces = vec![[(usize::MAX, 0); 2]; edges.len()];
    let mut fill = vec![0usize; edges.len()];
    for (i, f) in oriented.iter().enumerate() {
        for k in 0..f.len() {
            let e = edge_index[&key(f[k], f[(k + 1) % f.len()])];
            edge_faces[e][fill[e]] = (i, k);
            fill[e] += 1;
        }
    }
    let mut valence = BTreeMap::new();
    for &(u, v) in &edges {
        *valence.entry(u).or_insert(0) += 1;
        *valence.entry(v).or_insert(0) += 1;
    }
    let vertices: Vec<usize> = valence.keys().copied().collect();

    // each vertex link must be a single cycle of corners
    let faces_at: BTreeMap<usize, usize> = {
        let mut m = BTreeMap::new();
        for f in &oriented {
            for &v in f {
                *m.entry(v).or_insert(0) += 1;
            }
        }
        m
    };
    for &v in &vertices {
        if faces_at[&v] != valence[&v] {
            return Err(CellError::NotSphere(format!("vertex {v} is pinched")));
        }
    }
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for face in &oriented {
        let n = face.len();
        for k in 0..n {
            succ.insert((face[(k + n - 1) % n], face[k]), face[(k + 1) % n]);
        }
    }
    for &v in &vertices {
        let start = edges.iter().find_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None });
        let start = start.unwrap();
        let mut count = 1;
        let mut cur = succ[&(start, v)];
        while cur != start {
            count += 1;
            cur = succ[&(cur, v)];
        }
        if count != valence[&v] {
            return Err(CellError::NotSphere(format!("vertex {v} is pinched")));
        }
    }

    let (nv, ne) = (vertices.len() as i64, edges.len() as i64);
    if nv - ne + nf as i64 != 2 {
        return Err(CellError::NotSphere(format!("Euler characteristic {}", nv - ne + nf as i64)));
    }

    let mut dual: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nf];
    for pair in &edge_faces {
        dual[pair[0].0].insert(pair[1].0);
        dual[pair[1].0].insert(pair[0].0);
    }
    // polyhedron condition: faces across an edge share only that edge's endpoints
    for (e, pair) in edge_faces.iter().enumerate() {
        let (f, g) = (pair[0].0, pair[1].0);
        let (a, b) = edges[e];
        let fs: BTreeSet<usize> = oriented[f].iter().copied().collect();
        if f == g || oriented[g].iter().any(|v| *v != a && *v != b && fs.contains(v)) {
            return Err(CellError::DoubleAdjacency(f.min(g), f.max(g)));
        }
    }

    Ok(Polyhedron {
        faces: oriented,
        flipped,
        vertices,
        edges,
        edge_index,
        edge_faces,
        valence,
        dual: dual.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

/// A face of a polyhedron inside a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceRef {
    pub poly: usize,
    pub face: usize,
}

impl FaceRef {
    pub fn new(poly: usize, face: usize) -> Self {
        FaceRef { poly, face }
    }
}

/// `corr[k]` is the position in `dst` of the vertex at position `k` of `src`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePairing {
    pub src: FaceRef,
    pub dst: FaceRef,
    pub corr: Vec<usize>,
}

impl FacePairing {
    /// Build from a vertex map given on the source face.
    pub fn from_vertex_map(
        polys: &[Polyhedron],
        src: FaceRef,
        dst: FaceRef,
        map: impl Fn(usize) -> usize,
    ) -> Option<FacePairing> {
        let sf = polys.get(src.poly)?.faces.get(src.face)?;
        let df = polys.get(dst.poly)?.faces.get(dst.face)?;
        let corr = sf.iter().map(|&v| df.iter().position(|&w| w == map(v))).collect::<Option<Vec<_>>>()?;
        Some(FacePairing { src, dst, corr })
    }
}

/// Is `corr` a dihedral map, and does it reverse the cyclic order?
fn dihedral_kind(corr: &[usize]) -> Option<bool> {
    let n = corr.len();
    let s = corr[0];
    if (0..n).all(|k| corr[k] == (s + n - k % n) % n) {
        Some(true)
    } else if (0..n).all(|k| corr[k] == (s + k) % n) {
        Some(false)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    polyhedra: Vec<Polyhedron>,
    pairings: Vec<FacePairing>,
    partner: HashMap<FaceRef, (usize, bool)>,
    orientation_preserving_ok: bool,
}

impl Decomposition {
    /// `corr` is read against the stored (reoriented) face cycles.
    pub fn new(polyhedra: Vec<Polyhedron>, pairings: Vec<FacePairing>) -> Result<Self, CellError> {
        Self::with_options(polyhedra, pairings, false)
    }

    /// `allow_preserving` admits orientation-preserving correspondences (nonorientable quotients).
    pub fn with_options(
        polyhedra: Vec<Polyhedron>,
        pairings: Vec<FacePairing>,
        allow_preserving: bool,
    ) -> Result<Self, CellError> {
        let mut partner = HashMap::new();
        for (i, p) in pairings.iter().enumerate() {
            let bad = |reason: &str| CellError::BadPairing { index: i, reason: reason.into() };
            for fr in [p.src, p.dst] {
                if polyhedra.get(fr.poly).is_none_or(|poly| fr.face >= poly.num_faces()) {
                    return Err(bad("face out of range"));
                }
            }
            if p.src == p.dst {
                return Err(bad("face paired with itself"));
            }
            let n = polyhedra[p.src.poly].faces[p.src.face].len();
            if polyhedra[p.dst.poly].faces[p.dst.face].len() != n || p.corr.len() != n {
                return Err(bad("length mismatch"));
            }
            match dihedral_kind(&p.corr) {
                None => return Err(bad("correspondence is not dihedral")),
                Some(false) if !allow_preserving => return Err(bad("correspondence preserves cyclic orientation")),
                _ => {}
            }
            if partner.insert(p.src, (i, true)).is_some() || partner.insert(p.dst, (i, false)).is_some() {
                return Err(bad("face appears in two pairings"));
            }
        }
        for (pi, poly) in polyhedra.iter().enumerate() {
            for f in 0..poly.num_faces() {
                if !partner.contains_key(&FaceRef::new(pi, f)) {
                    return Err(CellError::UnpairedFace { poly: pi, face: f });
                }
            }
        }
        Ok(Decomposition { polyhedra, pairings, partner, orientation_preserving_ok: allow_preserving })
    }

    pub fn empty() -> Self {
        Decomposition { polyhedra: vec![], pairings: vec![], partner: HashMap::new(), orientation_preserving_ok: false }
    }

    pub fn polyhedra(&self) -> &[Polyhedron] {
        &self.polyhedra
    }

    pub fn pairings(&self) -> &[FacePairing] {
        &self.pairings
    }

    pub fn allows_orientation_preserving(&self) -> bool {
        self.orientation_preserving_ok
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceRef> + '_ {
        self.polyhedra
            .iter()
            .enumerate()
            .flat_map(|(i, p)| (0..p.num_faces()).map(move |f| FaceRef::new(i, f)))
    }

    pub fn face_cycle(&self, f: FaceRef) -> &[usize] {
        &self.polyhedra[f.poly].faces[f.face]
    }

    /// Index of the pairing containing `f` and whether `f` is its source.
    pub fn pairing_of(&self, f: FaceRef) -> (usize, bool) {
        self.partner[&f]
    }

    /// Target face of `f` and the position map from `f` into it.
    pub fn glue(&self, f: FaceRef) -> (FaceRef, Vec<usize>) {
        let (i, is_src) = self.partner[&f];
        let p = &self.pairings[i];
        if is_src {
            (p.dst, p.corr.clone())
        } else {
            let mut inv = vec![0; p.corr.len()];
            for (k, &c) in p.corr.iter().enumerate() {
                inv[c] = k;
            }
            (p.src, inv)
        }
    }

    /// Image of vertex `v` of face `f` under its gluing.
    pub fn map_vertex(&self, f: FaceRef, v: usize) -> usize {
        let (t, pos) = self.glue(f);
        let k = self.polyhedra[f.poly].position(f.face, v).expect("vertex on face");
        self.polyhedra[t.poly].faces[t.face][pos[k]]
    }

    pub fn from_json(text: &str) -> Result<Self, CellError> {
        let raw: DecompositionJson = serde_json::from_str(text).map_err(|e| CellError::Json(e.to_string()))?;
        raw.into_decomposition()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DecompositionJson::from(self)).unwrap()
    }
}

/// File format; `corr` positions refer to the face lists as written.
#[derive(Serialize, Deserialize)]
pub struct DecompositionJson {
    pub polyhedra: Vec<PolyJsonEntry>,
    pub pairings: Vec<PairingJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub orientation_preserving: bool,
}

#[derive(Serialize, Deserialize)]
pub struct PolyJsonEntry {
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct PairingJson {
    pub src: [usize; 2],
    pub dst: [usize; 2],
    pub corr: Vec<usize>,
}

impl DecompositionJson {
    pub fn into_decomposition(self) -> Result<Decomposition, CellError> {
        let polys = self
            .polyhedra
            .into_iter()
            .map(|p| build_polyhedron(p.faces))
            .collect::<Result<Vec<_>, _>>()?;
        let mut pairings = Vec::new();
        for (i, p) in self.pairings.iter().enumerate() {
            let bad = |reason: &str| CellError::BadPairing { index: i, reason: reason.into() };
            let (s, d) = (FaceRef::new(p.src[0], p.src[1]), FaceRef::new(p.dst[0], p.dst[1]));
            let ok = |f: FaceRef| polys.get(f.poly).is_some_and(|q| f.face < q.num_faces());
            if !ok(s) || !ok(d) {
                return Err(bad("face out of range"));
            }
            let n = polys[s.poly].faces[s.face].len();
            if p.corr.len() != n || p.corr.iter().any(|&c| c >= n) {
                return Err(bad("length mismatch"));
            }
            let mut corr = vec![0; n];
            for (k, &c) in p.corr.iter().enumerate() {
                corr[polys[s.poly].stored_position(s.face, k)] = polys[d.poly].stored_position(d.face, c);
            }
            pairings.push(FacePairing { src: s, dst: d, corr });
        }
        Decomposition::with_options(polys, pairings, self.orientation_preserving)
    }
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson {
            polyhedra: d.polyhedra.iter().map(|p| PolyJsonEntry { faces: p.faces.clone(), colors: None }).collect(),
            pairings: d
                .pairings
                .iter()
                .map(|p| PairingJson { src: [p.src.poly, p.src.face], dst: [p.dst.poly, p.dst.face], corr: p.corr.clone() })
                .collect(),
            orientation_preserving: d.orientation_preserving_ok,
        }
    }
}

/// Orbit classes of vertices, edges and faces under the face pairings.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    decomposition: Decomposition,
    vertex_class: Vec<BTreeMap<usize, usize>>,
    edge_class: Vec<Vec<usize>>,
    edge_flip: Vec<Vec<bool>>,
    face_class: Vec<Vec<usize>>,
    vertex_members: Vec<Vec<(usize, usize)>>,
    edge_members: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub face_classes: usize,
    pub edge_class_sizes: Vec<usize>,
}

impl QuotientComplex {
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn num_vertex_classes(&self) -> usize {
        self.vertex_members.len()
    }

    pub fn num_edge_classes(&self) -> usize {
        self.edge_members.len()
    }

    pub fn num_face_classes(&self) -> usize {
        self.decomposition.pairings.len()
    }

    pub fn vertex_class(&self, poly: usize, v: usize) -> usize {
        self.vertex_class[poly][&v]
    }

    pub fn edge_class(&self, poly: usize, e: usize) -> usize {
        self.edge_class[poly][e]
    }

    /// Whether edge `e` of `poly` runs against its class representative.
    pub fn edge_reversed(&self, poly: usize, e: usize) -> bool {
        self.edge_flip[poly][e]
    }

    pub fn face_class(&self, f: FaceRef) -> usize {
        self.face_class[f.poly][f.face]
    }

    /// Members (polyhedron, edge index) of an edge class.
    pub fn edge_members(&self, class: usize) -> &[(usize, usize)] {
        &self.edge_members[class]
    }

    pub fn vertex_members(&self, class: usize) -> &[(usize, usize)] {
        &self.vertex_members[class]
    }

    /// Representative (source) and partner face of a face class.
    pub fn face_members(&self, class: usize) -> [FaceRef; 2] {
        let p = &self.decomposition.pairings[class];
        [p.src, p.dst]
    }

    pub fn edge_class_size(&self, class: usize) -> usize {
        self.edge_members[class].len()
    }

    /// Vertex classes at the ends of an edge class, read off its first member.
    pub fn edge_class_ends(&self, class: usize) -> (usize, usize) {
        let (p, e) = self.edge_members[class][0];
        let (u, v) = self.decomposition.polyhedra[p].edges[e];
        (self.vertex_class(p, u), self.vertex_class(p, v))
    }

    /// Edge classes along the sides of the representative face.
    pub fn face_class_edges(&self, class: usize) -> Vec<usize> {
        let f = self.decomposition.pairings[class].src;
        let poly = &self.decomposition.polyhedra[f.poly];
        (0..poly.faces[f.face].len()).map(|k| self.edge_class(f.poly, poly.side_edge(f.face, k))).collect()
    }

    pub fn summary(&self) -> QuotientSummary {
        QuotientSummary {
            vertex_classes: self.num_vertex_classes(),
            edge_classes: self.num_edge_classes(),
            face_classes: self.num_face_classes(),
            edge_class_sizes: (0..self.num_edge_classes()).map(|c| self.edge_class_size(c)).collect(),
        }
    }
}

pub fn quotient_complex(d: &Decomposition) -> Result<QuotientComplex, CellError> {
    let polys = &d.polyhedra;
    let mut voff = vec![0];
    let mut eoff = vec![0];
    for p in polys {
        voff.push(voff.last().unwrap() + p.num_vertices());
        eoff.push(eoff.last().unwrap() + p.num_edges());
    }
    let vid = |poly: usize, v: usize| voff[poly] + polys[poly].vertices.binary_search(&v).unwrap();
    let mut vuf = ParityUnionFind::new(*voff.last().unwrap());
    let mut euf = ParityUnionFind::new(*eoff.last().unwrap());
    for p in &d.pairings {
        let sf = &polys[p.src.poly].faces[p.src.face];
        let df = &polys[p.dst.poly].faces[p.dst.face];
        let n = sf.len();
        for k in 0..n {
            vuf.union(vid(p.src.poly, sf[k]), vid(p.dst.poly, df[p.corr[k]]), 0);
            let (a, b) = (sf[k], sf[(k + 1) % n]);
            let (a2, b2) = (df[p.corr[k]], df[p.corr[(k + 1) % n]]);
            let es = polys[p.src.poly].edge_id(a, b).unwrap();
            let ed = polys[p.dst.poly].edge_id(a2, b2).unwrap();
            // orientation relative to the stored (min, max) direction
            let rel = ((a > b) ^ (a2 > b2)) as u8;
            if !euf.union(eoff[p.src.poly] + es, eoff[p.dst.poly] + ed, rel) {
                return Err(CellError::InconsistentPairing { poly: p.src.poly, edge: es });
            }
        }
    }
    let (vcls, nv) = vuf.classes();
    let (ecls, ne) = euf.classes();
    let mut vertex_class = Vec::new();
    let mut vertex_members = vec![Vec::new(); nv];
    let mut edge_class = Vec::new();
    let mut edge_flip = Vec::new();
    let mut edge_members = vec![Vec::new(); ne];
    for (pi, p) in polys.iter().enumerate() {
        let mut m = BTreeMap::new();
        for (k, &v) in p.vertices.iter().enumerate() {
            let c = vcls[voff[pi] + k];
            m.insert(v, c);
            vertex_members[c].push((pi, v));
        }
        vertex_class.push(m);
        let mut ec = Vec::new();
        let mut ef = Vec::new();
        for e in 0..p.num_edges() {
            let g = eoff[pi] + e;
            let c = ecls[g];
            ec.push(c);
            ef.push(euf.find(g).1 == 1);
            edge_members[c].push((pi, e));
        }
        edge_class.push(ec);
        edge_flip.push(ef);
    }
    let mut face_class: Vec<Vec<usize>> = polys.iter().map(|p| vec![0; p.num_faces()]).collect();
    for (i, p) in d.pairings.iter().enumerate() {
        face_class[p.src.poly][p.src.face] = i;
        face_class[p.dst.poly][p.dst.face] = i;
    }
    Ok(QuotientComplex {
        decomposition: d.clone(),
        vertex_class,
        edge_class,
        edge_flip,
        face_class,
        vertex_members,
        edge_members,
    })
}

/// True iff every edge class has exactly four members; otherwise the first offending class.
pub fn edge_cycle_check(qc: &QuotientComplex) -> (bool, Option<usize>) {
    match (0..qc.num_edge_classes()).find(|&c| qc.edge_class_size(c) != 4) {
        Some(c) => (false, Some(c)),
        None => (true, None),
    }
}
