//! Fully augmented link models at the crushtacean level and their right-angled decompositions.
//!
//! A model is a 3-valent polyhedron `C` with a perfect matching of its vertices by edges
//! (one clasp per twist region) and a parity per clasp. Truncating `C` gives a
//! right-angled ideal polyhedron `P` whose ideal vertices are the edges of `C`; the
//! complement is two copies of `P` glued along white faces by the mirror map and along
//! pairs of black triangles at each clasp.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cellkit::{CellError, Decomposition, FacePairing, FaceRef, Polyhedron};
use crate::checkering::{Checkering, Color};
use crate::polyhedra::crush::is_regular;
use crate::polyhedra::canon::has_edge_involution;
use crate::polyhedra::{automorphism_group, full_decomposition, isomorphic, piece_name, truncate};

#[derive(Debug, Error)]
pub enum AugError {
    #[error("clasps are not a perfect matching by edges: {0}")]
    BadMatching(String),
    #[error("pieces outside the classified set: {0:?}")]
    UnknownPiece(Vec<String>),
    #[error("bad model json: {0}")]
    Json(String),
    #[error(transparent)]
    Cell(#[from] CellError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AugmentedLinkModel {
    pub crushtacean: Polyhedron,
    pub clasps: Vec<(usize, usize)>,
    pub parity: Vec<Parity>,
}

impl AugmentedLinkModel {
    pub fn new(crushtacean: Polyhedron, clasps: Vec<(usize, usize)>, parity: Vec<Parity>) -> Result<Self, AugError> {
        let m = AugmentedLinkModel { crushtacean, clasps, parity };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), AugError> {
        let c = &self.crushtacean;
        if self.parity.len() != self.clasps.len() {
            return Err(AugError::BadMatching(format!("{} clasps but {} parities", self.clasps.len(), self.parity.len())));
        }
        if c.valences().values().any(|&d| d != 3) {
            return Err(AugError::BadMatching("crushtacean is not 3-valent".into()));
        }
        let mut covered = BTreeSet::new();
        for &(u, v) in &self.clasps {
            if c.edge_id(u, v).is_none() {
                return Err(AugError::BadMatching(format!("{u}-{v} is not an edge")));
            }
            if !covered.insert(u) || !covered.insert(v) {
                return Err(AugError::BadMatching(format!("vertex of {u}-{v} already clasped")));
            }
        }
        if covered.len() != c.num_vertices() {
            return Err(AugError::BadMatching("some vertex has no clasp".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, AugError> {
        let m: AugmentedLinkModel = serde_json::from_str(text).map_err(|e| AugError::Json(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn twist_regions(&self) -> usize {
        self.clasps.len()
    }
}

/// Pair two triangles so that `a` lands on `b` and the correspondence reverses orientation.
fn triangle_pairing(polys: &[Polyhedron], src: FaceRef, a: usize, dst: FaceRef, b: usize) -> FacePairing {
    let ps = polys[src.poly].position(src.face, a).expect("fixed vertex on source triangle");
    let pd = polys[dst.poly].position(dst.face, b).expect("fixed vertex on target triangle");
    FacePairing { src, dst, corr: (0..3).map(|k| (ps + pd + 3 - k) % 3).collect() }
}

/// Two copies of the truncation: polyhedron 1 is the mirror of polyhedron 0, with every
/// label shifted by the number of edges of `C`.
pub fn build_decomposition(m: &AugmentedLinkModel) -> Result<Decomposition, AugError> {
    m.validate()?;
    let c = &m.crushtacean;
    let t = truncate(c);
    let shift = c.num_edges();
    let p = t.poly.clone();
    let mirror = p.mirror().relabel(|x| x + shift);
    let polys = vec![p, mirror];
    let mut pairings = Vec::new();
    for &f in &t.white {
        let pair = FacePairing::from_vertex_map(&polys, FaceRef::new(0, f), FaceRef::new(1, f), |x| x + shift)
            .expect("white faces match across the copies");
        pairings.push(pair);
    }
    for (&(u, v), parity) in m.clasps.iter().zip(&m.parity) {
        let eps = c.edge_id(u, v).unwrap();
        let (tu, tv) = (t.black[&u], t.black[&v]);
        match parity {
            Parity::Even => {
                pairings.push(triangle_pairing(&polys, FaceRef::new(0, tu), eps, FaceRef::new(0, tv), eps));
                pairings.push(triangle_pairing(&polys, FaceRef::new(1, tu), eps + shift, FaceRef::new(1, tv), eps + shift));
            }
            Parity::Odd => {
                pairings.push(triangle_pairing(&polys, FaceRef::new(0, tu), eps, FaceRef::new(1, tv), eps + shift));
                pairings.push(triangle_pairing(&polys, FaceRef::new(0, tv), eps, FaceRef::new(1, tu), eps + shift));
            }
        }
    }
    Ok(Decomposition::new(polys, pairings)?)
}

/// The checkering with the clasp triangles black.
pub fn model_checkering(m: &AugmentedLinkModel) -> Checkering {
    let t = truncate(&m.crushtacean);
    let colors: Vec<Color> =
        (0..t.poly.num_faces()).map(|f| if t.is_black(f) { Color::Black } else { Color::White }).collect();
    Checkering { colors: vec![colors.clone(), colors] }
}

/// Every even clasp needs an orientation-reversing involution of `C` swapping its ends,
/// every odd clasp an orientation-preserving one.
pub fn symmetric_links_check(m: &AugmentedLinkModel) -> bool {
    let group = automorphism_group(&m.crushtacean);
    m.clasps
        .iter()
        .zip(&m.parity)
        .all(|(&(u, v), p)| has_edge_involution(&group, u, v, *p == Parity::Odd))
}

/// `C` cuts into copies of a single regular polyhedron.
pub fn hidden_symmetries_check(m: &AugmentedLinkModel) -> bool {
    let pieces = full_decomposition(&m.crushtacean);
    is_regular(&pieces[0]) && pieces.iter().all(|q| isomorphic(q, &pieces[0]))
}

/// Right-angled pieces of the complement, counted with multiplicity.
pub fn scissors_class(m: &AugmentedLinkModel) -> Result<BTreeMap<String, usize>, AugError> {
    let names: Vec<String> = full_decomposition(&m.crushtacean).iter().map(piece_name).collect();
    let mut out = BTreeMap::new();
    for n in &names {
        let piece = match n.as_str() {
            "tetrahedron" => "octahedron",
            "cube" => "cuboctahedron",
            "5-prism" => "antiprism-double",
            _ => return Err(AugError::UnknownPiece(names)),
        };
        *out.entry(piece.to_string()).or_insert(0) += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellkit::{edge_cycle_check, quotient_complex};
    use crate::checkering::{decomposition_checkering, is_checkering};
    use crate::fixtures;
    use crate::hyperplanes::pathology_report;
    use crate::polyhedra::shapes;
    use crate::squares::{is_npc, standard_square_complex, CellKind};
    use crate::surfaces::hyperplane_surface_relations;

    fn load(text: &str) -> AugmentedLinkModel {
        AugmentedLinkModel::from_json(text).unwrap()
    }

    #[test]
    fn tetrahedral_model() {
        let m = load(fixtures::AUG_TETRA_JSON);
        let d = build_decomposition(&m).unwrap();
        assert_eq!(d.polyhedra().len(), 2);
        assert!(d.polyhedra().iter().all(|p| isomorphic(p, &shapes::octahedron())));
        let qc = quotient_complex(&d).unwrap();
        assert_eq!(edge_cycle_check(&qc), (true, None));
        assert!(is_checkering(&d, &model_checkering(&m)));
        assert!(decomposition_checkering(&d).is_some());
        let sc = standard_square_complex(&qc);
        assert_eq!(sc.num_squares(), 24);
        // opposite faces of an octahedron osculate at its vertex with no common neighbour
        let report = pathology_report(&sc).unwrap();
        assert!(report.inter_osculations.is_empty());
        assert!(!report.remote_inter_osculations.is_empty());
        assert!(report.remote_inter_osculations.iter().flat_map(|p| &p.witnesses).all(|o| sc.vertices()[o.vertex].kind == CellKind::Polyhedron));
        assert_eq!(scissors_class(&m).unwrap(), BTreeMap::from([("octahedron".to_string(), 2)]));
        assert!(symmetric_links_check(&m));
        assert!(hidden_symmetries_check(&m));
    }

    #[test]
    fn odd_clasp_crosses_copies() {
        let m = load(fixtures::AUG_TETRA_ODD_JSON);
        let d = build_decomposition(&m).unwrap();
        let crossing = d.pairings().iter().filter(|p| p.src.poly != p.dst.poly).count();
        let white = truncate(&m.crushtacean).white.len();
        assert_eq!(crossing, white + 2);
        let qc = quotient_complex(&d).unwrap();
        assert_eq!(edge_cycle_check(&qc), (true, None));
        assert!(is_checkering(&d, &model_checkering(&m)));
        assert!(symmetric_links_check(&m));
    }

    #[test]
    fn all_fixtures_are_right_angled_and_special_looking() {
        for text in fixtures::AUG_MODELS {
            let m = load(text);
            assert_eq!(m.twist_regions() * 2, m.crushtacean.num_vertices());
            let d = build_decomposition(&m).unwrap();
            let qc = quotient_complex(&d).unwrap();
            assert_eq!(edge_cycle_check(&qc), (true, None));
            assert!(is_checkering(&d, &model_checkering(&m)));
            let sc = standard_square_complex(&qc);
            assert!(is_npc(&sc).npc);
            let report = pathology_report(&sc).unwrap();
            assert!(report.one_sided.is_empty());
            assert!(report.inter_osculations.is_empty(), "{} inter-osculations", report.inter_osculations.len());
            let rel = hyperplane_surface_relations(&sc, &qc).unwrap();
            assert!(rel.violations.is_empty(), "{:?}", rel.violations);
        }
    }

    #[test]
    fn copy_swap_is_a_symmetry() {
        for text in fixtures::AUG_MODELS {
            let m = load(text);
            let d = build_decomposition(&m).unwrap();
            let shift = m.crushtacean.num_edges();
            let swap = |x: usize| if x < shift { x + shift } else { x - shift };
            let maps: BTreeSet<(FaceRef, FaceRef, Vec<(usize, usize)>)> = d
                .pairings()
                .iter()
                .flat_map(|p| {
                    let sf = d.face_cycle(p.src);
                    let df = d.face_cycle(p.dst);
                    let fwd: Vec<(usize, usize)> = (0..sf.len()).map(|k| (sf[k], df[p.corr[k]])).collect();
                    let mut fs = fwd.clone();
                    fs.sort_unstable();
                    let mut bs: Vec<(usize, usize)> = fwd.iter().map(|&(a, b)| (b, a)).collect();
                    bs.sort_unstable();
                    [(p.src, p.dst, fs), (p.dst, p.src, bs)]
                })
                .collect();
            for (s, t, pairs) in &maps {
                let mut img: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (swap(a), swap(b))).collect();
                img.sort_unstable();
                let key = (FaceRef::new(1 - s.poly, s.face), FaceRef::new(1 - t.poly, t.face), img);
                assert!(maps.contains(&key));
            }
        }
    }

    #[test]
    fn bad_matchings() {
        let t = shapes::tetrahedron();
        let not_perfect = AugmentedLinkModel::new(t.clone(), vec![(0, 1)], vec![Parity::Even]);
        assert!(matches!(not_perfect, Err(AugError::BadMatching(_))));
        let overlap = AugmentedLinkModel::new(t.clone(), vec![(0, 1), (1, 2)], vec![Parity::Even; 2]);
        assert!(matches!(overlap, Err(AugError::BadMatching(_))));
        let c = shapes::cube();
        let non_edge = AugmentedLinkModel::new(c, vec![(0, 2), (1, 3), (4, 6), (5, 7)], vec![Parity::Even; 4]);
        assert!(matches!(non_edge, Err(AugError::BadMatching(_))));
    }

    #[test]
    fn scissors_classes() {
        let cube = load(fixtures::AUG_CUBE_JSON);
        assert_eq!(scissors_class(&cube).unwrap(), BTreeMap::from([("cuboctahedron".to_string(), 2)]));
        assert!(hidden_symmetries_check(&cube));
        let mixed = load(fixtures::AUG_TETRA_CUBE_JSON);
        assert_eq!(
            scissors_class(&mixed).unwrap(),
            BTreeMap::from([("cuboctahedron".to_string(), 2), ("octahedron".to_string(), 2)])
        );
        assert!(!hidden_symmetries_check(&mixed));
        let prism = load(fixtures::AUG_PRISM6_LEFT_JSON);
        assert!(matches!(scissors_class(&prism), Err(AugError::UnknownPiece(_))));
    }

    #[test]
    fn five_prism_is_not_hidden_symmetric() {
        let p = shapes::prism(5);
        let clasps = vec![(0, 5), (1, 2), (3, 4), (6, 7), (8, 9)];
        let m = AugmentedLinkModel::new(p, clasps, vec![Parity::Even; 5]).unwrap();
        assert!(!hidden_symmetries_check(&m));
        assert_eq!(scissors_class(&m).unwrap(), BTreeMap::from([("antiprism-double".to_string(), 2)]));
    }

    #[test]
    fn six_prism_figures() {
        assert!(symmetric_links_check(&load(fixtures::AUG_PRISM6_LEFT_JSON)));
        assert!(!symmetric_links_check(&load(fixtures::AUG_PRISM6_RIGHT_JSON)));
    }
}
