//! Hyperplanes of square complexes and their pathologies.
//!
//! Midline `m` of a square crosses sides `m` and `m + 2` and runs parallel to the
//! other two. A hyperplane is a class of edges under "opposite sides of a square";
//! an edge in no square is a hyperplane on its own.
//!
//! Each dual edge of a two-sided hyperplane gets a transverse co-orientation. At a vertex
//! `v`, a half-edge points away from `v` when its co-orientation runs from `v` along it.
//!
//! Pathologies, as decided here:
//! - self-intersection: both midlines of one square lie in the same hyperplane;
//! - one-sided: the co-orientation cannot be chosen consistently;
//! - osculation at `v`: two distinct half-edges at `v` not joined by an arc of the link;
//!   for a two-sided hyperplane meeting itself this way, direct when both point away
//!   from `v` or both towards it, indirect otherwise;
//! - inter-osculation: two distinct hyperplanes that cross in some square and osculate
//!   at some vertex.
//!
//! Every osculation records the tags of the edges at `v` joined to both half-edges in
//! the link ("along" tags), so callers can tell osculation across external edges from
//! osculation across internal ones. A pair with no common link neighbour is remote: in a
//! standard complex these are pairs of far-apart faces seen from a polyhedron vertex.
//! Remote osculations are listed on their own and do not count as pathologies.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::cellkit::ParityUnionFind;
use crate::squares::{is_bipartite, EdgeTag, HalfEdge, SquareComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HyperplaneError {
    #[error("link of vertex {0} is not simplicial")]
    NotSimple(usize),
    #[error("complex is not special")]
    NotSpecial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    /// (square, midline index)
    pub midlines: Vec<(usize, usize)>,
    pub dual_edges: Vec<usize>,
    pub two_sided: bool,
}

/// All hyperplanes of a complex with the edge-to-hyperplane map and co-orientations.
#[derive(Clone, Debug)]
pub struct HyperplaneSystem {
    pub hyperplanes: Vec<Hyperplane>,
    edge_class: Vec<usize>,
    orientation: Vec<u8>,
}

impl HyperplaneSystem {
    pub fn new(sc: &SquareComplex) -> Self {
        let ne = sc.num_edges();
        let mut uf = ParityUnionFind::new(ne);
        let mut conflicts = Vec::new();
        for sq in sc.squares() {
            for m in 0..2 {
                let (a, b) = (sq.sides[m], sq.sides[m + 2]);
                let rel = (!a.forward as u8) ^ (!b.forward as u8) ^ 1;
                if !uf.union(a.edge, b.edge, rel) {
                    conflicts.push(a.edge);
                }
            }
        }
        let (class, n) = uf.classes();
        let orientation = (0..ne).map(|e| uf.find(e).1).collect();
        let mut hyperplanes = vec![Hyperplane { midlines: vec![], dual_edges: vec![], two_sided: true }; n];
        for (e, &c) in class.iter().enumerate() {
            hyperplanes[c].dual_edges.push(e);
        }
        for (s, sq) in sc.squares().iter().enumerate() {
            for m in 0..2 {
                hyperplanes[class[sq.sides[m].edge]].midlines.push((s, m));
            }
        }
        for e in conflicts {
            hyperplanes[class[e]].two_sided = false;
        }
        HyperplaneSystem { hyperplanes, edge_class: class, orientation }
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn of_edge(&self, e: usize) -> usize {
        self.edge_class[e]
    }

    /// Hyperplane of midline `m` of square `s`.
    pub fn of_midline(&self, sc: &SquareComplex, s: usize, m: usize) -> usize {
        self.edge_class[sc.squares()[s].sides[m].edge]
    }

    /// 0 when the half-edge's co-orientation points away from its vertex.
    fn pointing(&self, h: HalfEdge) -> u8 {
        self.orientation[h.0] ^ h.1 as u8
    }

    /// Unordered pairs of distinct hyperplanes sharing a square.
    pub fn crossing_pairs(&self, sc: &SquareComplex) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for s in 0..sc.num_squares() {
            let (a, b) = (self.of_midline(sc, s, 0), self.of_midline(sc, s, 1));
            if a != b {
                out.insert((a.min(b), a.max(b)));
            }
        }
        out
    }
}

pub fn hyperplanes(sc: &SquareComplex) -> Vec<Hyperplane> {
    HyperplaneSystem::new(sc).hyperplanes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryTag {
    Internal,
    External,
    Plain,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCircuit {
    /// Ambient edges covered by the circuit, sorted, with multiplicity.
    pub edges: Vec<usize>,
    pub tag: BoundaryTag,
}

/// The interval bundle over a hyperplane: one bundle square per midline, whose two
/// long sides map to the ambient sides parallel to the midline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularNeighborhood {
    pub hyperplane: usize,
    pub midlines: Vec<(usize, usize)>,
    pub boundary: Vec<BoundaryCircuit>,
    pub two_sided: bool,
}

pub fn regular_neighborhood(sc: &SquareComplex, sys: &HyperplaneSystem, h: usize) -> RegularNeighborhood {
    let hp = &sys.hyperplanes[h];
    let mut node_id: BTreeMap<HalfEdge, usize> = BTreeMap::new();
    for &e in &hp.dual_edges {
        for end in 0..2 {
            let n = node_id.len();
            node_id.insert((e, end), n);
        }
    }
    let mut arcs = Vec::new();
    for &(s, m) in &hp.midlines {
        let sides = &sc.squares()[s].sides;
        let (cross_a, cross_b) = (sides[m], sides[m + 2]);
        arcs.push((node_id[&cross_a.end_half()], node_id[&cross_b.start_half()], sides[m + 1].edge));
        arcs.push((node_id[&cross_b.end_half()], node_id[&cross_a.start_half()], sides[(m + 3) % 4].edge));
    }
    let mut uf = ParityUnionFind::new(node_id.len());
    for &(a, b, _) in &arcs {
        uf.union(a, b, 0);
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, _, e) in &arcs {
        comps.entry(uf.find(a).0).or_default().push(e);
    }
    let mut boundary: Vec<BoundaryCircuit> = comps
        .into_values()
        .map(|mut edges| {
            edges.sort_unstable();
            let tags: BTreeSet<EdgeTag> = edges.iter().map(|&e| sc.edges()[e].tag).collect();
            let tag = match (tags.len(), tags.iter().next()) {
                (1, Some(EdgeTag::Internal)) => BoundaryTag::Internal,
                (1, Some(EdgeTag::External)) => BoundaryTag::External,
                (1, Some(EdgeTag::Plain)) => BoundaryTag::Plain,
                _ => BoundaryTag::Mixed,
            };
            BoundaryCircuit { edges, tag }
        })
        .collect();
    boundary.sort_by(|a, b| a.edges.cmp(&b.edges));
    RegularNeighborhood { hyperplane: h, midlines: hp.midlines.clone(), boundary, two_sided: hp.two_sided }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Osculation {
    pub vertex: usize,
    pub halves: [HalfEdge; 2],
    pub hyperplanes: [usize; 2],
    /// For a two-sided hyperplane meeting itself: direct or indirect.
    pub direct: Option<bool>,
    pub along: BTreeSet<EdgeTag>,
}

impl Osculation {
    pub fn is_external(&self) -> bool {
        self.along.contains(&EdgeTag::External)
    }

    /// The two half-edges have no common neighbour in the link.
    pub fn is_remote(&self) -> bool {
        self.along.is_empty()
    }
}

/// Every osculating pair of half-edges, vertex by vertex.
pub fn osculations(sc: &SquareComplex, sys: &HyperplaneSystem) -> Result<Vec<Osculation>, HyperplaneError> {
    let mut out = Vec::new();
    for v in 0..sc.num_vertices() {
        let link = sc.link(v);
        if !link.is_simplicial() {
            return Err(HyperplaneError::NotSimple(v));
        }
        let mut nbrs: BTreeMap<HalfEdge, BTreeSet<HalfEdge>> = BTreeMap::new();
        for a in &link.arcs {
            nbrs.entry(a.ends[0]).or_default().insert(a.ends[1]);
            nbrs.entry(a.ends[1]).or_default().insert(a.ends[0]);
        }
        let empty = BTreeSet::new();
        for (i, &x) in link.halves.iter().enumerate() {
            for &y in &link.halves[i + 1..] {
                let (nx, ny) = (nbrs.get(&x).unwrap_or(&empty), nbrs.get(&y).unwrap_or(&empty));
                if nx.contains(&y) {
                    continue;
                }
                let (hx, hy) = (sys.of_edge(x.0), sys.of_edge(y.0));
                let direct = (hx == hy && sys.hyperplanes[hx].two_sided).then(|| sys.pointing(x) == sys.pointing(y));
                let along = nx.intersection(ny).map(|h| sc.edges()[h.0].tag).collect();
                out.push(Osculation { vertex: v, halves: [x, y], hyperplanes: [hx, hy], direct, along });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterOsculation {
    pub hyperplanes: [usize; 2],
    pub witnesses: Vec<Osculation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathologyReport {
    /// (hyperplane, square)
    pub self_intersections: Vec<(usize, usize)>,
    pub one_sided: Vec<usize>,
    pub self_osculations: Vec<Osculation>,
    pub inter_osculations: Vec<InterOsculation>,
    /// Crossing pairs that only osculate remotely.
    pub remote_inter_osculations: Vec<InterOsculation>,
    pub remote_self_osculations: Vec<Osculation>,
}

impl PathologyReport {
    pub fn is_empty(&self) -> bool {
        self.self_intersections.is_empty()
            && self.one_sided.is_empty()
            && self.self_osculations.is_empty()
            && self.inter_osculations.is_empty()
    }
}

pub fn pathology_report(sc: &SquareComplex) -> Result<PathologyReport, HyperplaneError> {
    let sys = HyperplaneSystem::new(sc);
    let mut report = PathologyReport::default();
    for s in 0..sc.num_squares() {
        let h = sys.of_midline(sc, s, 0);
        if h == sys.of_midline(sc, s, 1) {
            report.self_intersections.push((h, s));
        }
    }
    report.one_sided = (0..sys.len()).filter(|&h| !sys.hyperplanes[h].two_sided).collect();
    let crossing = sys.crossing_pairs(sc);
    let mut inter: BTreeMap<(usize, usize), Vec<Osculation>> = BTreeMap::new();
    let mut remote: BTreeMap<(usize, usize), Vec<Osculation>> = BTreeMap::new();
    for o in osculations(sc, &sys)? {
        let [a, b] = o.hyperplanes;
        if a == b {
            if o.direct.is_none() {
                continue;
            }
            if o.is_remote() {
                report.remote_self_osculations.push(o);
            } else {
                report.self_osculations.push(o);
            }
        } else if crossing.contains(&(a.min(b), a.max(b))) {
            let bucket = if o.is_remote() { &mut remote } else { &mut inter };
            bucket.entry((a.min(b), a.max(b))).or_default().push(o);
        }
    }
    let pairs = |m: BTreeMap<(usize, usize), Vec<Osculation>>| -> Vec<InterOsculation> {
        m.into_iter().map(|((a, b), witnesses)| InterOsculation { hyperplanes: [a, b], witnesses }).collect()
    };
    report.inter_osculations = pairs(inter);
    report.remote_inter_osculations = pairs(remote);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialVerdict {
    pub special: bool,
    pub bipartite: bool,
    pub simple: bool,
    pub pathologies: Option<PathologyReport>,
}

/// Bipartite one-skeleton, simplicial links and no pathologies.
pub fn is_c_special(sc: &SquareComplex) -> SpecialVerdict {
    let bipartite = is_bipartite(sc).bipartite;
    match pathology_report(sc) {
        Ok(r) => SpecialVerdict { special: bipartite && r.is_empty(), bipartite, simple: true, pathologies: Some(r) },
        Err(_) => SpecialVerdict { special: false, bipartite, simple: false, pathologies: None },
    }
}

/// Crossing graph of the hyperplanes and the right-angled Coxeter presentation it defines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nerve {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub presentation: String,
}

pub fn racg_nerve(sc: &SquareComplex) -> Result<Nerve, HyperplaneError> {
    if !is_c_special(sc).special {
        return Err(HyperplaneError::NotSpecial);
    }
    let sys = HyperplaneSystem::new(sc);
    let edges: Vec<(usize, usize)> = sys.crossing_pairs(sc).into_iter().collect();
    let gens: Vec<String> = (1..=sys.len()).map(|i| format!("h{i}")).collect();
    let mut rels: Vec<String> = gens.iter().map(|g| format!("{g}^2")).collect();
    rels.extend(edges.iter().map(|&(a, b)| format!("[h{},h{}]", a + 1, b + 1)));
    let presentation = format!("< {} | {} >", gens.join(", "), rels.join(", "));
    Ok(Nerve { vertices: sys.len(), edges, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellkit::quotient_complex;
    use crate::fixtures;
    use crate::squares::standard_square_complex;

    fn load(text: &str) -> SquareComplex {
        SquareComplex::from_json(text).unwrap()
    }

    #[test]
    fn single_square() {
        let sc = load(fixtures::SINGLE_SQUARE_JSON);
        let hs = hyperplanes(&sc);
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| h.midlines.len() == 1 && h.dual_edges.len() == 2));
    }

    #[test]
    fn torus_2x2() {
        let sc = load(fixtures::TORUS_2X2_JSON);
        let sys = HyperplaneSystem::new(&sc);
        assert_eq!(sys.len(), 4);
        assert!(sys.hyperplanes.iter().all(|h| h.midlines.len() == 2 && h.two_sided));
        for h in 0..4 {
            let n = regular_neighborhood(&sc, &sys, h);
            assert!(n.two_sided);
            assert_eq!(n.boundary.len(), 2);
            assert!(n.boundary[0].edges.iter().all(|e| !n.boundary[1].edges.contains(e)));
        }
        assert!(pathology_report(&sc).unwrap().is_empty());
        assert!(is_c_special(&sc).special);
        let nerve = racg_nerve(&sc).unwrap();
        assert_eq!(nerve.vertices, 4);
        assert_eq!(nerve.edges.len(), 4);
        // complete bipartite on 2 + 2: no triangles, every vertex of degree 2, and
        // the two classes are the hyperplanes of horizontal and vertical edges
        let horizontal: BTreeSet<usize> = (0..4).map(|e| sys.of_edge(e)).collect();
        assert_eq!(horizontal.len(), 2);
        for &(a, b) in &nerve.edges {
            assert!(horizontal.contains(&a) != horizontal.contains(&b));
        }
        assert_eq!(nerve.presentation, "< h1, h2, h3, h4 | h1^2, h2^2, h3^2, h4^2, [h1,h3], [h1,h4], [h2,h3], [h2,h4] >");
    }

    #[test]
    fn torus_1x1_self_osculates() {
        let sc = load(fixtures::TORUS_1X1_JSON);
        let r = pathology_report(&sc).unwrap();
        assert!(r.one_sided.is_empty() && r.self_intersections.is_empty());
        assert!(!r.self_osculations.is_empty());
        assert!(r.self_osculations.iter().all(|o| o.direct == Some(false)));
        assert!(!is_c_special(&sc).special);
    }

    #[test]
    fn klein_is_one_sided() {
        let sc = load(fixtures::KLEIN_JSON);
        let sys = HyperplaneSystem::new(&sc);
        let r = pathology_report(&sc).unwrap();
        assert_eq!(r.one_sided.len(), 1);
        assert!(!regular_neighborhood(&sc, &sys, r.one_sided[0]).two_sided);
        assert!(!is_c_special(&sc).special);
        assert_eq!(racg_nerve(&sc), Err(HyperplaneError::NotSpecial));
    }

    #[test]
    fn squareless_graph() {
        let sc = load(r#"{"vertices":3,"edges":[{"ends":[0,1]},{"ends":[1,2]}]}"#);
        let nerve = racg_nerve(&sc).unwrap();
        assert_eq!((nerve.vertices, nerve.edges.len()), (2, 0));
    }

    #[test]
    fn badcorner_is_simple_but_not_special() {
        let sc = load(fixtures::BADCORNER_JSON);
        assert!(pathology_report(&sc).is_ok());
    }

    #[test]
    fn whitehead_hyperplanes() {
        let sc = standard_square_complex(&quotient_complex(&fixtures::whitehead()).unwrap());
        let sys = HyperplaneSystem::new(&sc);
        let total: usize = sys.hyperplanes.iter().map(|h| h.midlines.len()).sum();
        assert_eq!(total, 2 * sc.num_squares());
        let dual: usize = sys.hyperplanes.iter().map(|h| h.dual_edges.len()).sum();
        assert_eq!(dual, sc.num_edges());
        // pinned regression value
        assert_eq!(sys.len(), 2);
        for h in 0..sys.len() {
            let n = regular_neighborhood(&sc, &sys, h);
            if n.two_sided {
                assert!(n.boundary.iter().all(|c| c.tag != BoundaryTag::Mixed));
            }
        }
    }

    #[test]
    fn self_intersection_is_symmetric() {
        let sc = load(r#"{"vertices":1,"edges":[{"ends":[0,0]}],"squares":[{"sides":[[0,1],[0,1],[0,-1],[0,-1]]}]}"#);
        let sys = HyperplaneSystem::new(&sc);
        assert_eq!(sys.of_midline(&sc, 0, 0), sys.of_midline(&sc, 0, 1));
    }

    #[test]
    fn nerve_edges_match_square_scan() {
        let sc = load(fixtures::TORUS_2X2_JSON);
        let hs = hyperplanes(&sc);
        let mut pairs = BTreeSet::new();
        for (s, _) in sc.squares().iter().enumerate() {
            let find = |m: usize| hs.iter().position(|h| h.midlines.contains(&(s, m))).unwrap();
            let (a, b) = (find(0), find(1));
            pairs.insert((a.min(b), a.max(b)));
        }
        assert_eq!(racg_nerve(&sc).unwrap().edges.len(), pairs.len());
    }
}
