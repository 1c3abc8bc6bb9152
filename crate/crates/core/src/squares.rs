//! Square complexes: the standard complex of a decomposition, links, NPC and bipartite tests.
//!
//! The standard complex has a vertex for every edge class, face class and polyhedron.
//! External edges join an edge class to a face class (one per side of the face class);
//! internal edges join a face class to a polyhedron (one per face of the polyhedron).
//! Each (polyhedron, edge) incidence contributes a square whose boundary reads
//! external, internal, internal, external, so each external side is opposite an internal one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cellkit::{FaceRef, QuotientComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SquareError {
    #[error("edge {0} has an endpoint out of range")]
    EdgeRange(usize),
    #[error("square {0} uses a missing edge")]
    SideRange(usize),
    #[error("square {square}: side {side} does not start where side {prev} ends", prev = (side + 3) % 4)]
    OpenBoundary { square: usize, side: usize },
    #[error("bad square complex json: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Edge,
    Face,
    Polyhedron,
    Plain,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeTag {
    Internal,
    External,
    #[default]
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqVertex {
    pub kind: CellKind,
    pub cell: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqEdge {
    pub ends: [usize; 2],
    #[serde(default)]
    pub tag: EdgeTag,
}

/// An edge traversed forwards (start to end) or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

impl Side {
    pub fn fwd(edge: usize) -> Side {
        Side { edge, forward: true }
    }

    pub fn back(edge: usize) -> Side {
        Side { edge, forward: false }
    }

    /// Half-edge (edge, end index) at which the traversal starts.
    pub fn start_half(&self) -> HalfEdge {
        (self.edge, if self.forward { 0 } else { 1 })
    }

    pub fn end_half(&self) -> HalfEdge {
        (self.edge, if self.forward { 1 } else { 0 })
    }
}

/// An edge together with one of its two ends.
pub type HalfEdge = (usize, usize);

/// Where a square of a standard complex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareOrigin {
    pub poly: usize,
    pub edge: usize,
    /// The two faces of the polyhedron at the edge: side 1 lies on the first, side 2 on the second.
    pub faces: [FaceRef; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub sides: [Side; 4],
    pub origin: Option<SquareOrigin>,
}

#[derive(Clone, Debug, Default)]
pub struct SquareComplex {
    vertices: Vec<SqVertex>,
    edges: Vec<SqEdge>,
    squares: Vec<Square>,
    standard: bool,
}

impl SquareComplex {
    pub fn new(vertices: Vec<SqVertex>, edges: Vec<SqEdge>, squares: Vec<Square>) -> Result<Self, SquareError> {
        for (i, e) in edges.iter().enumerate() {
            if e.ends.iter().any(|&v| v >= vertices.len()) {
                return Err(SquareError::EdgeRange(i));
            }
        }
        let sc = SquareComplex { vertices, edges, squares, standard: false };
        for (i, sq) in sc.squares.iter().enumerate() {
            if sq.sides.iter().any(|s| s.edge >= sc.edges.len()) {
                return Err(SquareError::SideRange(i));
            }
            for k in 0..4 {
                if sc.side_start(sq.sides[k]) != sc.side_end(sq.sides[(k + 3) % 4]) {
                    return Err(SquareError::OpenBoundary { square: i, side: k });
                }
            }
        }
        Ok(sc)
    }

    pub fn vertices(&self) -> &[SqVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SqEdge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    /// Built by [`standard_square_complex`].
    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.squares.len() as i64
    }

    pub fn half_vertex(&self, h: HalfEdge) -> usize {
        self.edges[h.0].ends[h.1]
    }

    pub fn side_start(&self, s: Side) -> usize {
        self.half_vertex(s.start_half())
    }

    pub fn side_end(&self, s: Side) -> usize {
        self.half_vertex(s.end_half())
    }

    /// Vertex at corner k of a square (where side k starts).
    pub fn corner(&self, sq: usize, k: usize) -> usize {
        self.side_start(self.squares[sq].sides[k])
    }

    /// The two half-edges joined by corner k: end of side k-1 and start of side k.
    pub fn corner_halves(&self, sq: usize, k: usize) -> (HalfEdge, HalfEdge) {
        let s = &self.squares[sq].sides;
        (s[(k + 3) % 4].end_half(), s[k].start_half())
    }

    pub fn link(&self, v: usize) -> Link {
        let mut halves = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for end in 0..2 {
                if edge.ends[end] == v {
                    halves.push((e, end));
                }
            }
        }
        let mut arcs = Vec::new();
        for sq in 0..self.squares.len() {
            for k in 0..4 {
                if self.corner(sq, k) == v {
                    let (a, b) = self.corner_halves(sq, k);
                    arcs.push(LinkArc { ends: [a, b], square: sq, corner: k });
                }
            }
        }
        Link { vertex: v, halves, arcs }
    }

    pub fn from_json(text: &str) -> Result<Self, SquareError> {
        let raw: SquareComplexJson = serde_json::from_str(text).map_err(|e| SquareError::Json(e.to_string()))?;
        raw.into_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SquareComplexJson::from(self)).unwrap()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexSpec {
    Count(usize),
    List(Vec<SqVertex>),
}

#[derive(Serialize, Deserialize)]
pub struct SquareJson {
    /// `[edge, +1 | -1]` per side.
    pub sides: [[i64; 2]; 4],
}

/// File format for square complexes.
#[derive(Serialize, Deserialize)]
pub struct SquareComplexJson {
    pub vertices: VertexSpec,
    pub edges: Vec<SqEdge>,
    #[serde(default)]
    pub squares: Vec<SquareJson>,
}

impl SquareComplexJson {
    pub fn into_complex(self) -> Result<SquareComplex, SquareError> {
        let vertices = match self.vertices {
            VertexSpec::Count(n) => (0..n).map(|i| SqVertex { kind: CellKind::Plain, cell: i }).collect(),
            VertexSpec::List(l) => l,
        };
        let mut squares = Vec::new();
        for (i, s) in self.squares.iter().enumerate() {
            let mut sides = [Side::fwd(0); 4];
            for (k, &[e, dir]) in s.sides.iter().enumerate() {
                if e < 0 || (dir != 1 && dir != -1) {
                    return Err(SquareError::SideRange(i));
                }
                sides[k] = Side { edge: e as usize, forward: dir == 1 };
            }
            squares.push(Square { sides, origin: None });
        }
        SquareComplex::new(vertices, self.edges, squares)
    }
}

impl From<&SquareComplex> for SquareComplexJson {
    fn from(sc: &SquareComplex) -> Self {
        SquareComplexJson {
            vertices: VertexSpec::List(sc.vertices.clone()),
            edges: sc.edges.clone(),
            squares: sc
                .squares
                .iter()
                .map(|s| SquareJson { sides: s.sides.map(|x| [x.edge as i64, if x.forward { 1 } else { -1 }]) })
                .collect(),
        }
    }
}

/// One arc of a vertex link, coming from one corner of one square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkArc {
    pub ends: [HalfEdge; 2],
    pub square: usize,
    pub corner: usize,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub vertex: usize,
    pub halves: Vec<HalfEdge>,
    pub arcs: Vec<LinkArc>,
}

impl Link {
    /// Simplicial: no arc is a loop and no two arcs join the same pair.
    pub fn is_simplicial(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.arcs.iter().all(|a| {
            let key = (a.ends[0].min(a.ends[1]), a.ends[0].max(a.ends[1]));
            a.ends[0] != a.ends[1] && seen.insert(key)
        })
    }

    pub fn adjacent(&self, a: HalfEdge, b: HalfEdge) -> bool {
        self.arcs.iter().any(|x| (x.ends == [a, b]) || (x.ends == [b, a]))
    }

    /// Some cycle of one, two or three arcs, as its arcs in order.
    pub fn short_cycle(&self) -> Option<Vec<LinkArc>> {
        if let Some(a) = self.arcs.iter().find(|a| a.ends[0] == a.ends[1]) {
            return Some(vec![*a]);
        }
        let mut by_pair: BTreeMap<(HalfEdge, HalfEdge), Vec<usize>> = BTreeMap::new();
        for (i, a) in self.arcs.iter().enumerate() {
            by_pair.entry((a.ends[0].min(a.ends[1]), a.ends[0].max(a.ends[1]))).or_default().push(i);
        }
        if let Some(ix) = by_pair.values().find(|ix| ix.len() > 1) {
            return Some(vec![self.arcs[ix[0]], self.arcs[ix[1]]]);
        }
        let mut nbrs: BTreeMap<HalfEdge, Vec<(HalfEdge, usize)>> = BTreeMap::new();
        for (i, a) in self.arcs.iter().enumerate() {
            nbrs.entry(a.ends[0]).or_default().push((a.ends[1], i));
            nbrs.entry(a.ends[1]).or_default().push((a.ends[0], i));
        }
        for (&(x, y), ix) in &by_pair {
            for &(z, j) in &nbrs[&y] {
                if z == x {
                    continue;
                }
                if let Some(&(_, k)) = nbrs[&z].iter().find(|(w, _)| *w == x) {
                    return Some(vec![self.arcs[ix[0]], self.arcs[j], self.arcs[k]]);
                }
            }
        }
        None
    }
}

/// Build the standard square complex of a quotient.
pub fn standard_square_complex(qc: &QuotientComplex) -> SquareComplex {
    let d = qc.decomposition();
    let ne = qc.num_edge_classes();
    let nf = qc.num_face_classes();
    let mut vertices: Vec<SqVertex> = (0..ne).map(|c| SqVertex { kind: CellKind::Edge, cell: c }).collect();
    vertices.extend((0..nf).map(|c| SqVertex { kind: CellKind::Face, cell: c }));
    vertices.extend((0..d.polyhedra().len()).map(|i| SqVertex { kind: CellKind::Polyhedron, cell: i }));

    let mut edges = Vec::new();
    let mut ext_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in 0..nf {
        for (k, ec) in qc.face_class_edges(c).into_iter().enumerate() {
            ext_id.insert((c, k), edges.len());
            edges.push(SqEdge { ends: [ec, ne + c], tag: EdgeTag::External });
        }
    }
    let mut int_id: BTreeMap<FaceRef, usize> = BTreeMap::new();
    for (i, p) in d.polyhedra().iter().enumerate() {
        for f in 0..p.num_faces() {
            let fr = FaceRef::new(i, f);
            int_id.insert(fr, edges.len());
            edges.push(SqEdge { ends: [ne + qc.face_class(fr), ne + nf + i], tag: EdgeTag::Internal });
        }
    }

    // external edge carrying side `a` of a member face
    let ext_of = |fr: FaceRef, a: usize| -> usize {
        let c = qc.face_class(fr);
        let [src, _] = qc.face_members(c);
        let k = if fr == src {
            a
        } else {
            let (_, pm) = d.glue(fr);
            let n = pm.len();
            if (pm[a] + 1) % n == pm[(a + 1) % n] {
                pm[a]
            } else {
                pm[(a + 1) % n]
            }
        };
        ext_id[&(c, k)]
    };

    let mut squares = Vec::new();
    for (i, p) in d.polyhedra().iter().enumerate() {
        for e in 0..p.num_edges() {
            let [(f, a), (g, b)] = p.edge_darts(e);
            let (f, g) = (FaceRef::new(i, f), FaceRef::new(i, g));
            squares.push(Square {
                sides: [Side::fwd(ext_of(f, a)), Side::fwd(int_id[&f]), Side::back(int_id[&g]), Side::back(ext_of(g, b))],
                origin: Some(SquareOrigin { poly: i, edge: e, faces: [f, g] }),
            });
        }
    }
    let mut sc = SquareComplex::new(vertices, edges, squares).expect("standard complex is well formed");
    sc.standard = true;
    sc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteVerdict {
    pub bipartite: bool,
    /// Parts by vertex index, when bipartite.
    pub parts: Option<[Vec<usize>; 2]>,
}

pub fn is_bipartite(sc: &SquareComplex) -> BipartiteVerdict {
    let n = sc.num_vertices();
    if sc.is_standard() {
        let (odd, even): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| sc.vertices[v].kind != CellKind::Face);
        return BipartiteVerdict { bipartite: true, parts: Some([odd, even]) };
    }
    let mut adj = vec![Vec::new(); n];
    for e in &sc.edges {
        adj[e.ends[0]].push(e.ends[1]);
        adj[e.ends[1]].push(e.ends[0]);
    }
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    q.push_back(w);
                } else if color[w] == color[u] {
                    return BipartiteVerdict { bipartite: false, parts: None };
                }
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| color[v] == 0);
    BipartiteVerdict { bipartite: true, parts: Some([a, b]) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NpcWitness {
    pub vertex: usize,
    pub cycle: Vec<LinkArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NpcVerdict {
    pub npc: bool,
    pub witness: Option<NpcWitness>,
}

/// Every vertex link has girth at least four.
pub fn is_npc(sc: &SquareComplex) -> NpcVerdict {
    for v in 0..sc.num_vertices() {
        if let Some(cycle) = sc.link(v).short_cycle() {
            return NpcVerdict { npc: false, witness: Some(NpcWitness { vertex: v, cycle }) };
        }
    }
    NpcVerdict { npc: true, witness: None }
}
