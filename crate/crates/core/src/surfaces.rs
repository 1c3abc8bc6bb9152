//! Totally geodesic surfaces of right-angled decompositions, read off combinatorially.
//!
//! Across an edge of a right-angled decomposition the face meeting `f` at angle π is
//! found by passing to the other face `g` of the same polyhedron at the edge, gluing `g`
//! to its partner, and taking the face across the image edge. Closing a face under this
//! rule gives a surface built from ideal polygons, one per face class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cellkit::{CellError, FaceRef, ParityUnionFind, QuotientComplex};
use crate::hyperplanes::{osculations, HyperplaneError, HyperplaneSystem};
use crate::squares::SquareComplex;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("edge {edge} of polyhedron {poly} lies in a class of {size} edges, not 4")]
    NotRightAngled { poly: usize, edge: usize, size: usize },
    #[error("square complex was not built from this decomposition")]
    NotStandard,
    #[error("hyperplane {0} has no midline")]
    NoMidline(usize),
    #[error(transparent)]
    Hyperplane(#[from] HyperplaneError),
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// Side of the partner face that carries side `a` of `f` under the gluing.
fn glued_side(qc: &QuotientComplex, f: FaceRef, a: usize) -> (FaceRef, usize) {
    let (t, pm) = qc.decomposition().glue(f);
    let n = pm.len();
    let s = if (pm[a] + 1) % n == pm[(a + 1) % n] { pm[a] } else { pm[(a + 1) % n] };
    (t, s)
}

/// The face meeting `f` at angle π across its side `side`, and the matching side of it.
pub fn flat_neighbor(qc: &QuotientComplex, f: FaceRef, side: usize) -> Result<(FaceRef, usize), SurfaceError> {
    let p = &qc.decomposition().polyhedra()[f.poly];
    let e = p.side_edge(f.face, side);
    let size = qc.edge_class_size(qc.edge_class(f.poly, e));
    if size != 4 {
        return Err(SurfaceError::NotRightAngled { poly: f.poly, edge: e, size });
    }
    let (g, b) = p.across(f.face, side);
    let (g2, s2) = glued_side(qc, FaceRef::new(f.poly, g), b);
    let (f1, s1) = qc.decomposition().polyhedra()[g2.poly].across(g2.face, s2);
    Ok((FaceRef::new(g2.poly, f1), s1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatSurface {
    pub face_classes: Vec<usize>,
    /// Faces reached from the representative of the least class; both members of a class
    /// appear exactly when the surface is one-sided.
    pub members: Vec<FaceRef>,
    /// Of the closed surface obtained by filling in the punctures.
    pub euler_characteristic: i64,
    pub punctures: usize,
    pub orientable: bool,
    pub two_sided: bool,
    /// Index of the orientation-preserving subgroup of the surface group.
    pub pi1_index: usize,
}

fn member_closure(qc: &QuotientComplex, seed: FaceRef) -> Result<BTreeSet<FaceRef>, SurfaceError> {
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(f) = queue.pop_front() {
        for k in 0..qc.decomposition().face_cycle(f).len() {
            let (g, _) = flat_neighbor(qc, f, k)?;
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    Ok(seen)
}

/// Position in the class representative of position `pos` of member `f`.
fn rep_position(qc: &QuotientComplex, f: FaceRef, pos: usize) -> usize {
    let [src, _] = qc.face_members(qc.face_class(f));
    if f == src {
        pos
    } else {
        qc.decomposition().glue(f).1[pos]
    }
}

pub fn surface_closure(qc: &QuotientComplex, f: FaceRef) -> Result<FlatSurface, SurfaceError> {
    let d = qc.decomposition();
    let reached = member_closure(qc, f)?;
    let classes: BTreeSet<usize> = reached.iter().map(|&m| qc.face_class(m)).collect();
    let classes: Vec<usize> = classes.into_iter().collect();
    let seed = qc.face_members(classes[0])[0];
    let members: Vec<FaceRef> = member_closure(qc, seed)?.into_iter().collect();
    let two_sided = !classes.iter().all(|&c| qc.face_members(c).iter().all(|m| members.contains(m)));

    let index: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut corner_base = vec![0];
    for &c in &classes {
        corner_base.push(corner_base.last().unwrap() + d.face_cycle(qc.face_members(c)[0]).len());
    }
    let mut corners = ParityUnionFind::new(*corner_base.last().unwrap());
    let mut orient = ParityUnionFind::new(classes.len());
    let mut orientable = true;
    let mut sides = 0;
    for (i, &c) in classes.iter().enumerate() {
        let rep = qc.face_members(c)[0];
        let cycle = d.face_cycle(rep);
        let n = cycle.len();
        sides += n;
        for k in 0..n {
            let (f1, s1) = flat_neighbor(qc, rep, k)?;
            let (g, _) = d.polyhedra()[rep.poly].across(rep.face, k);
            let g = FaceRef::new(rep.poly, g);
            let img = |v: usize| d.map_vertex(g, v);
            let f1_cycle = d.face_cycle(f1);
            let pos = |v: usize| f1_cycle.iter().position(|&w| w == v).expect("image vertex on flat neighbour");
            let (x, y) = (pos(img(cycle[k])), pos(img(cycle[(k + 1) % n])));
            debug_assert!([x, y].contains(&s1));
            let j = index[&qc.face_class(f1)];
            let (rx, ry) = (rep_position(qc, f1, x), rep_position(qc, f1, y));
            corners.union(corner_base[i] + k, corner_base[j] + rx, 0);
            corners.union(corner_base[i] + (k + 1) % n, corner_base[j] + ry, 0);
            let n1 = f1_cycle.len();
            let same_dir = ((rx + 1) % n1 == ry) as u8;
            if !orient.union(i, j, same_dir) {
                orientable = false;
            }
        }
    }
    let punctures = corners.classes().1;
    let euler_characteristic = classes.len() as i64 - (sides / 2) as i64 + punctures as i64;
    Ok(FlatSurface {
        face_classes: classes,
        members,
        euler_characteristic,
        punctures,
        orientable,
        two_sided,
        pi1_index: if orientable { 1 } else { 2 },
    })
}

/// One surface per orbit; together they partition the face classes.
pub fn all_surfaces(qc: &QuotientComplex) -> Result<Vec<FlatSurface>, SurfaceError> {
    let mut out: Vec<FlatSurface> = Vec::new();
    let mut covered = BTreeSet::new();
    for c in 0..qc.num_face_classes() {
        if covered.contains(&c) {
            continue;
        }
        let s = surface_closure(qc, qc.face_members(c)[0])?;
        covered.extend(s.face_classes.iter().copied());
        out.push(s);
    }
    Ok(out)
}

/// Face whose surface a midline follows: the face holding the external side parallel to it.
fn midline_face(sc: &SquareComplex, s: usize, m: usize) -> Result<FaceRef, SurfaceError> {
    let o = sc.squares()[s].origin.ok_or(SurfaceError::NotStandard)?;
    Ok(if m == 1 { o.faces[0] } else { o.faces[1] })
}

pub fn hyperplane_surface(
    sc: &SquareComplex,
    qc: &QuotientComplex,
    sys: &HyperplaneSystem,
    h: usize,
) -> Result<FlatSurface, SurfaceError> {
    let &(s, m) = sys.hyperplanes[h].midlines.first().ok_or(SurfaceError::NoMidline(h))?;
    surface_closure(qc, midline_face(sc, s, m)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub hyperplanes: [usize; 2],
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub crossings_checked: usize,
    pub external_osculations_checked: usize,
    pub violations: Vec<RelationViolation>,
}

/// Check that crossings and external osculations of hyperplanes match their surfaces.
pub fn hyperplane_surface_relations(sc: &SquareComplex, qc: &QuotientComplex) -> Result<RelationReport, SurfaceError> {
    let sys = HyperplaneSystem::new(sc);
    let surfaces = (0..sys.len()).map(|h| hyperplane_surface(sc, qc, &sys, h)).collect::<Result<Vec<_>, _>>()?;
    let mut report = RelationReport::default();
    for (s, sq) in sc.squares().iter().enumerate() {
        let o = sq.origin.ok_or(SurfaceError::NotStandard)?;
        let (h0, h1) = (sys.of_midline(sc, s, 0), sys.of_midline(sc, s, 1));
        if h0 == h1 {
            continue;
        }
        report.crossings_checked += 1;
        let p = &qc.decomposition().polyhedra()[o.poly];
        let meet = p.edge_darts(o.edge).map(|(f, _)| f) == [o.faces[0].face, o.faces[1].face];
        let in0 = surfaces[h0].face_classes.contains(&qc.face_class(o.faces[1]));
        let in1 = surfaces[h1].face_classes.contains(&qc.face_class(o.faces[0]));
        if !(meet && in0 && in1) {
            report.violations.push(RelationViolation {
                hyperplanes: [h0, h1],
                reason: format!("square {s}: crossing surfaces do not contain perpendicular faces"),
            });
        }
    }
    for o in osculations(sc, &sys)? {
        if !o.is_external() {
            continue;
        }
        report.external_osculations_checked += 1;
        let [a, b] = o.hyperplanes;
        let ok = if a == b {
            !surfaces[a].orientable
        } else {
            surfaces[a] == surfaces[b] && surfaces[a].orientable
        };
        if !ok {
            report.violations.push(RelationViolation {
                hyperplanes: [a, b],
                reason: format!("external osculation at vertex {} breaks the surface alternative", o.vertex),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellkit::quotient_complex;
    use crate::fixtures;
    use crate::squares::standard_square_complex;

    #[test]
    fn flat_neighbor_is_an_involution() {
        let qc = quotient_complex(&fixtures::whitehead()).unwrap();
        for f in qc.decomposition().faces() {
            for k in 0..3 {
                let (g, s) = flat_neighbor(&qc, f, k).unwrap();
                assert_ne!((g, s), (f, k));
                assert_eq!(flat_neighbor(&qc, g, s).unwrap(), (f, k));
            }
        }
    }

    #[test]
    fn whitehead_pinned_neighbor() {
        let qc = quotient_complex(&fixtures::whitehead()).unwrap();
        // face 0 = [0,1,2], side 0 = edge 0-1; the other face there is 3 = [0,4,1],
        // glued to face 1 = [0,2,3]; the image edge is 2-3, across which lies face 5
        assert_eq!(flat_neighbor(&qc, FaceRef::new(0, 0), 0).unwrap().0, FaceRef::new(0, 5));
    }

    #[test]
    fn figure_eight_is_not_right_angled() {
        let qc = quotient_complex(&fixtures::figure_eight()).unwrap();
        assert!(matches!(flat_neighbor(&qc, FaceRef::new(0, 0), 0), Err(SurfaceError::NotRightAngled { size: 6, .. })));
    }

    #[test]
    fn closures_partition_and_are_seed_independent() {
        let qc = quotient_complex(&fixtures::whitehead()).unwrap();
        let all = all_surfaces(&qc).unwrap();
        let mut classes: Vec<usize> = all.iter().flat_map(|s| s.face_classes.clone()).collect();
        classes.sort_unstable();
        assert_eq!(classes, (0..qc.num_face_classes()).collect::<Vec<_>>());
        for s in &all {
            for &m in &s.members {
                assert_eq!(&surface_closure(&qc, m).unwrap(), s);
            }
            assert_eq!(s.pi1_index, if s.orientable { 1 } else { 2 });
        }
    }

    #[test]
    fn whitehead_surfaces() {
        let qc = quotient_complex(&fixtures::whitehead()).unwrap();
        let all = all_surfaces(&qc).unwrap();
        // two surfaces of two ideal triangles each, each a twice-punctured projective plane
        assert_eq!(all.len(), 2);
        for s in &all {
            assert_eq!(s.face_classes.len(), 2);
            assert_eq!((s.euler_characteristic, s.punctures), (1, 2));
            assert!(!s.orientable && !s.two_sided);
        }
    }

    #[test]
    fn hyperplanes_follow_surfaces() {
        let qc = quotient_complex(&fixtures::whitehead()).unwrap();
        let sc = standard_square_complex(&qc);
        let sys = HyperplaneSystem::new(&sc);
        let expected: usize = all_surfaces(&qc).unwrap().iter().map(|s| if s.two_sided { 2 } else { 1 }).sum();
        assert_eq!(sys.len(), expected);
        for h in 0..sys.len() {
            let first = hyperplane_surface(&sc, &qc, &sys, h).unwrap();
            for &(s, m) in &sys.hyperplanes[h].midlines {
                assert_eq!(surface_closure(&qc, midline_face(&sc, s, m).unwrap()).unwrap(), first);
            }
        }
        let report = hyperplane_surface_relations(&sc, &qc).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert!(report.crossings_checked > 0);
    }
}
