//! Canonical codes and automorphisms of polyhedral maps.
//!
//! A code is the breadth-first listing of neighbours in rotation order, started
//! from a dart in one of the two rotational senses. The least code over all
//! starts is canonical, and every start attaining it is an automorphism.

use std::collections::BTreeMap;

use crate::cellkit::Polyhedron;

/// Rotation system on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub labels: Vec<usize>,
    pub rot: Vec<Vec<usize>>,
}

impl Rotation {
    pub fn of(p: &Polyhedron) -> Rotation {
        let r = p.rotation();
        let labels: Vec<usize> = r.keys().copied().collect();
        let idx: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rot = r.values().map(|ns| ns.iter().map(|v| idx[v]).collect()).collect();
        Rotation { labels, rot }
    }

    pub fn darts(&self) -> usize {
        self.rot.iter().map(|r| r.len()).sum()
    }

    pub(crate) fn walk(&self, v0: usize, w0: usize, forward: bool) -> (Vec<usize>, Vec<usize>) {
        let n = self.rot.len();
        let mut num = vec![usize::MAX; n];
        let mut first = vec![usize::MAX; n];
        let mut order = vec![v0];
        num[v0] = 0;
        first[v0] = w0;
        let mut code = Vec::with_capacity(self.darts() + n);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            let ns = &self.rot[v];
            let d = ns.len();
            let s = ns.iter().position(|&x| x == first[v]).unwrap();
            for t in 0..d {
                let u = if forward { ns[(s + t) % d] } else { ns[(s + d - t) % d] };
                if num[u] == usize::MAX {
                    num[u] = order.len();
                    first[u] = v;
                    order.push(u);
                }
                code.push(num[u] + 1);
            }
            code.push(0);
            i += 1;
        }
        (code, order)
    }

    /// Least code and the list of starts (v, w, forward) attaining it.
    pub fn canonical(&self) -> (Vec<usize>, Vec<(usize, usize, bool)>) {
        let mut best: Option<Vec<usize>> = None;
        let mut starts = Vec::new();
        for v in 0..self.rot.len() {
            for &w in &self.rot[v] {
                for forward in [true, false] {
                    let (code, _) = self.walk(v, w, forward);
                    match &best {
                        Some(b) if code > *b => {}
                        Some(b) if code == *b => starts.push((v, w, forward)),
                        _ => {
                            best = Some(code);
                            starts = vec![(v, w, forward)];
                        }
                    }
                }
            }
        }
        (best.unwrap_or_default(), starts)
    }
}

/// A combinatorial symmetry as a map on vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorphism {
    pub map: BTreeMap<usize, usize>,
    pub preserves_orientation: bool,
}

impl Automorphism {
    pub fn apply(&self, v: usize) -> usize {
        self.map[&v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|(&k, &v)| (k, self.map[&v])).collect(),
            preserves_orientation: self.preserves_orientation == other.preserves_orientation,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
            preserves_orientation: self.preserves_orientation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = self.compose(&g);
            k += 1;
        }
        k
    }

    /// Image of face `f` of `p`, as a face index.
    pub fn face_image(&self, p: &Polyhedron, f: usize) -> usize {
        let mut img: Vec<usize> = p.face(f).iter().map(|v| self.apply(*v)).collect();
        img.sort_unstable();
        (0..p.num_faces())
            .find(|&g| {
                let mut s = p.face(g).to_vec();
                s.sort_unstable();
                s == img
            })
            .expect("automorphism maps faces to faces")
    }
}

/// Canonical code of a polyhedron, invariant under relabelling and reflection.
pub fn canonical_code(p: &Polyhedron) -> Vec<usize> {
    Rotation::of(p).canonical().0
}

pub fn isomorphic(p: &Polyhedron, q: &Polyhedron) -> bool {
    p.num_vertices() == q.num_vertices() && p.num_edges() == q.num_edges() && canonical_code(p) == canonical_code(q)
}

/// Printable form of a code: neighbour lists separated by commas.
pub fn code_string(code: &[usize]) -> String {
    let mut out = String::new();
    let mut first = true;
    for &c in code {
        if c == 0 {
            out.push(',');
            first = true;
        } else {
            if !first {
                out.push('.');
            }
            out.push_str(&c.to_string());
            first = false;
        }
    }
    out.pop();
    out
}

/// The full automorphism group, each element tagged with its orientation character.
pub fn automorphism_group(p: &Polyhedron) -> Vec<Automorphism> {
    let rot = Rotation::of(p);
    let (_, starts) = rot.canonical();
    let (v0, w0, f0) = starts[0];
    let (_, base) = rot.walk(v0, w0, f0);
    let mut group: Vec<Automorphism> = starts
        .iter()
        .map(|&(v, w, f)| {
            let (_, order) = rot.walk(v, w, f);
            let map = base.iter().zip(&order).map(|(&a, &b)| (rot.labels[a], rot.labels[b])).collect();
            Automorphism { map, preserves_orientation: f == f0 }
        })
        .collect();
    group.sort();
    group
}

/// Is there an involution swapping `u` and `v` with the requested orientation character?
pub fn has_edge_involution(group: &[Automorphism], u: usize, v: usize, preserving: bool) -> bool {
    group.iter().any(|g| g.preserves_orientation == preserving && g.apply(u) == v && g.apply(v) == u && g.order() == 2)
}
