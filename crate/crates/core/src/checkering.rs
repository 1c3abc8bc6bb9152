//! Face two-colorings of polyhedra and decompositions, the checkered double cover,
//! and the check that every face pairing extends to an isomorphism of polyhedra.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cellkit::{CellError, Decomposition, FacePairing, FaceRef, ParityUnionFind, Polyhedron};
use crate::polyhedra::canon::Rotation;

#[derive(Debug, Error)]
pub enum CheckerError {
    #[error("polyhedron {0} has no checkering")]
    NoCheckering(usize),
    #[error("no mirror data for pairing {0}")]
    MissingMirror(usize),
    #[error(transparent)]
    Cell(#[from] CellError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    fn bit(self) -> u8 {
        (self == Color::Black) as u8
    }

    fn from_bit(b: u8) -> Color {
        if b & 1 == 0 {
            Color::White
        } else {
            Color::Black
        }
    }
}

/// Colors per face, per polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkering {
    pub colors: Vec<Vec<Color>>,
}

impl Checkering {
    pub fn color(&self, f: FaceRef) -> Color {
        self.colors[f.poly][f.face]
    }
}

/// The coloring with face 0 white, if the dual graph is bipartite.
fn base_coloring(p: &Polyhedron) -> Option<Vec<Color>> {
    let n = p.num_faces();
    if n == 0 {
        return Some(vec![]);
    }
    let mut color = vec![None; n];
    color[0] = Some(Color::White);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        let c = color[f].unwrap();
        for &g in p.neighbors(f) {
            match color[g] {
                None => {
                    color[g] = Some(c.flip());
                    queue.push_back(g);
                }
                Some(x) if x == c => return None,
                _ => {}
            }
        }
    }
    color.into_iter().collect()
}

/// All proper face 2-colorings: two when the dual graph is bipartite, none otherwise.
pub fn polyhedron_checkerings(p: &Polyhedron) -> Vec<Vec<Color>> {
    match base_coloring(p) {
        Some(c) => {
            let other = c.iter().map(|x| x.flip()).collect();
            vec![c, other]
        }
        None => vec![],
    }
}

/// Solve for one flip per polyhedron so every pairing joins faces of equal color.
fn flips(d: &Decomposition, base: &[Vec<Color>]) -> Option<Vec<u8>> {
    let mut uf = ParityUnionFind::new(d.polyhedra().len());
    for p in d.pairings() {
        let rel = base[p.src.poly][p.src.face].bit() ^ base[p.dst.poly][p.dst.face].bit();
        if !uf.union(p.src.poly, p.dst.poly, rel) {
            return None;
        }
    }
    Some((0..d.polyhedra().len()).map(|i| uf.find(i).1).collect())
}

fn base_colorings(d: &Decomposition) -> Result<Vec<Vec<Color>>, CheckerError> {
    d.polyhedra().iter().enumerate().map(|(i, p)| base_coloring(p).ok_or(CheckerError::NoCheckering(i))).collect()
}

/// A coloring of every polyhedron preserved by all face pairings, if one exists.
pub fn decomposition_checkering(d: &Decomposition) -> Option<Checkering> {
    let base = base_colorings(d).ok()?;
    let x = flips(d, &base)?;
    let colors = base
        .iter()
        .zip(&x)
        .map(|(cs, &b)| cs.iter().map(|c| Color::from_bit(c.bit() ^ b)).collect())
        .collect();
    Some(Checkering { colors })
}

/// Is `c` a checkering of every polyhedron, preserved by the pairings?
pub fn is_checkering(d: &Decomposition, c: &Checkering) -> bool {
    let proper = d.polyhedra().iter().enumerate().all(|(i, p)| {
        c.colors[i].len() == p.num_faces()
            && (0..p.num_faces()).all(|f| p.neighbors(f).iter().all(|&g| c.colors[i][f] != c.colors[i][g]))
    });
    proper && d.pairings().iter().all(|p| c.color(p.src) == c.color(p.dst))
}

/// Two oppositely colored copies of each polyhedron, glued so colors always match.
/// Copy `j` of polyhedron `p` is polyhedron `2p + j`.
pub fn checkered_double_cover(d: &Decomposition) -> Result<Decomposition, CheckerError> {
    let base = base_colorings(d)?;
    let polys: Vec<Polyhedron> = d.polyhedra().iter().flat_map(|p| [p.clone(), p.clone()]).collect();
    let mut pairings = Vec::new();
    for p in d.pairings() {
        for a in 0..2u8 {
            let b = base[p.src.poly][p.src.face].bit() ^ a ^ base[p.dst.poly][p.dst.face].bit();
            pairings.push(FacePairing {
                src: FaceRef::new(2 * p.src.poly + a as usize, p.src.face),
                dst: FaceRef::new(2 * p.dst.poly + b as usize, p.dst.face),
                corr: p.corr.clone(),
            });
        }
    }
    Ok(Decomposition::with_options(polys, pairings, d.allows_orientation_preserving())?)
}

/// The coloring of a double cover: copy `j` carries the base coloring flipped `j` times.
pub fn double_cover_checkering(d: &Decomposition) -> Result<Checkering, CheckerError> {
    let base = base_colorings(d)?;
    let colors = base
        .iter()
        .flat_map(|cs| [cs.clone(), cs.iter().map(|c| c.flip()).collect()])
        .collect();
    Ok(Checkering { colors })
}

/// Number of connected components of the pairing graph on polyhedra.
pub fn components(d: &Decomposition) -> usize {
    let mut uf = ParityUnionFind::new(d.polyhedra().len());
    for p in d.pairings() {
        uf.union(p.src.poly, p.dst.poly, 0);
    }
    uf.classes().1
}

/// For each pairing, a vertex map from its source polyhedron onto its target polyhedron:
/// the face pairing composed with the mirror in the source face.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorData {
    pub maps: BTreeMap<usize, BTreeMap<usize, usize>>,
}

fn is_isomorphism(p: &Polyhedron, q: &Polyhedron, map: &BTreeMap<usize, usize>) -> bool {
    if p.num_vertices() != q.num_vertices() || p.num_faces() != q.num_faces() {
        return false;
    }
    let image: BTreeSet<usize> = map.values().copied().collect();
    if map.len() != p.num_vertices()
        || image.len() != map.len()
        || !p.vertices().iter().all(|v| map.contains_key(v))
        || !q.vertices().iter().all(|v| image.contains(v))
    {
        return false;
    }
    let key = |f: &[usize]| {
        let mut s = f.to_vec();
        s.sort_unstable();
        s
    };
    let targets: BTreeSet<Vec<usize>> = q.faces().iter().map(|f| key(f)).collect();
    p.faces().iter().all(|f| targets.contains(&key(&f.iter().map(|v| map[v]).collect::<Vec<_>>())))
}

/// True iff every supplied map is an isomorphism of polyhedra agreeing with its pairing.
pub fn reflection_pairing_check(d: &Decomposition, mirror: &MirrorData) -> Result<bool, CheckerError> {
    for (i, p) in d.pairings().iter().enumerate() {
        let map = mirror.maps.get(&i).ok_or(CheckerError::MissingMirror(i))?;
        let (sp, dp) = (&d.polyhedra()[p.src.poly], &d.polyhedra()[p.dst.poly]);
        if !is_isomorphism(sp, dp, map) {
            return Ok(false);
        }
        let (sf, df) = (sp.face(p.src.face), dp.face(p.dst.face));
        if (0..sf.len()).any(|k| map.get(&sf[k]) != Some(&df[p.corr[k]])) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extend a face pairing to a full isomorphism of polyhedra, when one exists.
pub fn extend_pairing(d: &Decomposition, index: usize) -> Option<BTreeMap<usize, usize>> {
    let p = &d.pairings()[index];
    let (sp, dp) = (&d.polyhedra()[p.src.poly], &d.polyhedra()[p.dst.poly]);
    let (rs, rd) = (Rotation::of(sp), Rotation::of(dp));
    let (sf, df) = (sp.face(p.src.face), dp.face(p.dst.face));
    let idx = |r: &Rotation, v: usize| r.labels.iter().position(|&x| x == v).unwrap();
    let (u, w) = (idx(&rs, sf[0]), idx(&rs, sf[1]));
    let (u2, w2) = (idx(&rd, df[p.corr[0]]), idx(&rd, df[p.corr[1]]));
    let (code, order) = rs.walk(u, w, true);
    for forward in [true, false] {
        let (code2, order2) = rd.walk(u2, w2, forward);
        if code2 == code {
            let map: BTreeMap<usize, usize> =
                order.iter().zip(&order2).map(|(&a, &b)| (rs.labels[a], rd.labels[b])).collect();
            if (0..sf.len()).all(|k| map[&sf[k]] == df[p.corr[k]]) {
                return Some(map);
            }
        }
    }
    None
}

/// Mirror data from pairing extensions; pairings without one are left out.
pub fn mirror_data_from_symmetries(d: &Decomposition) -> MirrorData {
    MirrorData { maps: (0..d.pairings().len()).filter_map(|i| extend_pairing(d, i).map(|m| (i, m))).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::polyhedra::shapes;

    #[test]
    fn counts_per_polyhedron() {
        assert_eq!(polyhedron_checkerings(&shapes::octahedron()).len(), 2);
        assert_eq!(polyhedron_checkerings(&shapes::cuboctahedron()).len(), 2);
        assert_eq!(polyhedron_checkerings(&shapes::tetrahedron()).len(), 0);
        for c in polyhedron_checkerings(&shapes::cuboctahedron()) {
            let p = shapes::cuboctahedron();
            for f in 0..p.num_faces() {
                // triangles and squares take opposite colors
                assert_eq!(c[f] == c[0], p.face(f).len() == p.face(0).len());
            }
        }
    }

    #[test]
    fn whitehead_is_checkered() {
        let d = fixtures::whitehead();
        let c = decomposition_checkering(&d).unwrap();
        assert!(is_checkering(&d, &c));
        let cover = checkered_double_cover(&d).unwrap();
        assert_eq!(components(&cover), 2);
        assert!(is_checkering(&cover, &double_cover_checkering(&d).unwrap()));
        let qc = crate::cellkit::quotient_complex(&cover).unwrap();
        assert!((0..qc.num_edge_classes()).all(|c| qc.edge_class_size(c) == 4));
    }

    #[test]
    fn forced_conflict() {
        // faces 0 and 4 of the octahedron have opposite colors; pairing them rules out a checkering
        let o = shapes::octahedron();
        let text = format!(
            r#"{{"polyhedra":[{{"faces":{f:?}}}],"pairings":[{{"src":[0,0],"dst":[0,4],"corr":[0,2,1]}},{{"src":[0,1],"dst":[0,5],"corr":[0,2,1]}},{{"src":[0,2],"dst":[0,6],"corr":[0,2,1]}},{{"src":[0,3],"dst":[0,7],"corr":[0,2,1]}}]}}"#,
            f = o.faces()
        );
        let d = Decomposition::from_json(&text).unwrap();
        assert!(decomposition_checkering(&d).is_none());
        let cover = checkered_double_cover(&d).unwrap();
        assert_eq!(components(&cover), 1);
        assert!(is_checkering(&cover, &double_cover_checkering(&d).unwrap()));
    }

    #[test]
    fn empty_and_tetrahedra() {
        assert_eq!(decomposition_checkering(&Decomposition::empty()), Some(Checkering { colors: vec![] }));
        assert!(matches!(checkered_double_cover(&fixtures::figure_eight()), Err(CheckerError::NoCheckering(0))));
    }

    #[test]
    fn whitehead_pairings_extend() {
        let d = fixtures::whitehead();
        let m = mirror_data_from_symmetries(&d);
        assert_eq!(m.maps.len(), d.pairings().len());
        assert!(reflection_pairing_check(&d, &m).unwrap());
        assert!(matches!(reflection_pairing_check(&d, &MirrorData::default()), Err(CheckerError::MissingMirror(0))));
    }

    #[test]
    fn twisted_pairing_on_asymmetric_polyhedron() {
        let p = crate::polyhedra::enumerate_crushtaceans(12, false)
            .into_iter()
            .find(|e| e.aut_order == 1)
            .expect("some 12-vertex crushtacean has no symmetry")
            .poly;
        let q = p.relabel(|v| v + 100);
        let polys = [p.clone(), q.clone()];
        let straight: Vec<FacePairing> = (0..p.num_faces())
            .map(|f| FacePairing::from_vertex_map(&polys, FaceRef::new(0, f), FaceRef::new(1, f), |v| v + 100).unwrap())
            .collect();
        let mut twisted = straight.clone();
        let n = twisted[0].corr.len();
        twisted[0].corr = (0..n).map(|k| (straight[0].corr[k] + 1) % n).collect();
        let identity: BTreeMap<usize, usize> = p.vertices().iter().map(|&v| (v, v + 100)).collect();
        let mirror = MirrorData { maps: (0..p.num_faces()).map(|i| (i, identity.clone())).collect() };
        let d_straight = Decomposition::with_options(polys.to_vec(), straight, true).unwrap();
        assert!(reflection_pairing_check(&d_straight, &mirror).unwrap());
        assert_eq!(extend_pairing(&d_straight, 0), Some(identity));
        let d_twisted = Decomposition::with_options(polys.to_vec(), twisted, true).unwrap();
        assert!(!reflection_pairing_check(&d_twisted, &mirror).unwrap());
        assert!(extend_pairing(&d_twisted, 0).is_none());
    }
}
