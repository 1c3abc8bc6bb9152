//! Cutting crushtaceans along prismatic 3-circuits.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::canon::{automorphism_group, canonical_code};
use super::{prismatic_circuits, shapes, PolyError};
use crate::cellkit::{build_polyhedron, Polyhedron};

/// Trace faces of a rotation system: after arriving at `v` from `u`, leave towards the
/// neighbour following `u` in `rot[v]`.
pub fn faces_from_rotation(rot: &BTreeMap<usize, Vec<usize>>) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut faces = Vec::new();
    for (&u, ns) in rot {
        for &v in ns {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                face.push(a);
                let r = &rot[&b];
                let i = r.iter().position(|&x| x == a).unwrap();
                let c = r[(i + 1) % r.len()];
                a = b;
                b = c;
            }
            faces.push(face);
        }
    }
    faces
}

/// Split `c` along the prismatic 3-circuit on faces `circuit`.
pub fn decompose_crushtacean(c: &Polyhedron, circuit: [usize; 3]) -> Result<(Polyhedron, Polyhedron), PolyError> {
    let [f0, f1, f2] = circuit;
    let sets: Vec<BTreeSet<usize>> = circuit.iter().map(|&f| c.face(f).iter().copied().collect()).collect();
    if f0 == f1 || f1 == f2 || f0 == f2 || sets[0].iter().any(|v| sets[1].contains(v) && sets[2].contains(v)) {
        return Err(PolyError::NotPrismatic);
    }
    let mut cut = Vec::new();
    for (a, b) in [(f0, f1), (f1, f2), (f2, f0)] {
        let k = (0..c.face(a).len()).find(|&k| c.across(a, k).0 == b).ok_or(PolyError::NotPrismatic)?;
        cut.push(c.edges()[c.side_edge(a, k)]);
    }
    let is_cut = |u: usize, v: usize| cut.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));

    let rot = c.rotation();
    let mut side: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ncomp = 0;
    for &s in rot.keys() {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, ncomp);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &rot[&u] {
                if !is_cut(u, w) && !side.contains_key(&w) {
                    side.insert(w, ncomp);
                    q.push_back(w);
                }
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return Err(PolyError::NotPrismatic);
    }
    let x = rot.keys().max().unwrap() + 1;
    let mut pieces = Vec::new();
    for comp in 0..2 {
        let mut r: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut ends = Vec::new();
        for (&u, ns) in &rot {
            if side[&u] != comp {
                continue;
            }
            let mapped: Vec<usize> = ns
                .iter()
                .map(|&w| {
                    if is_cut(u, w) {
                        ends.push(u);
                        x
                    } else {
                        w
                    }
                })
                .collect();
            r.insert(u, mapped);
        }
        let mut piece = None;
        for order in [vec![ends[0], ends[1], ends[2]], vec![ends[0], ends[2], ends[1]]] {
            r.insert(x, order);
            if let Ok(p) = build_polyhedron(faces_from_rotation(&r)) {
                piece = Some(p);
                break;
            }
        }
        pieces.push(piece.ok_or(PolyError::NotPrismatic)?);
    }
    let p1 = pieces.pop().unwrap();
    let p0 = pieces.pop().unwrap();
    Ok((p0, p1))
}

/// Repeatedly split along the least prismatic 3-circuit until none remain.
pub fn full_decomposition(c: &Polyhedron) -> Vec<Polyhedron> {
    let mut done = Vec::new();
    let mut todo = vec![c.clone()];
    while let Some(p) = todo.pop() {
        let circuits = prismatic_circuits(&p, 3);
        match circuits.iter().map(|cc| [cc.faces[0], cc.faces[1], cc.faces[2]]).min() {
            None => done.push(p),
            Some(circ) => {
                let (a, b) = decompose_crushtacean(&p, circ).expect("prismatic circuit splits");
                todo.push(b);
                todo.push(a);
            }
        }
    }
    done
}

/// Every distinct multiset of indecomposable pieces reachable by some order of splits,
/// each as sorted piece names.
pub fn full_decomposition_exhaustive(c: &Polyhedron) -> BTreeSet<Vec<String>> {
    fn go(p: &Polyhedron, memo: &mut BTreeMap<Vec<usize>, BTreeSet<Vec<String>>>) -> BTreeSet<Vec<String>> {
        let code = canonical_code(p);
        if let Some(r) = memo.get(&code) {
            return r.clone();
        }
        let circuits = prismatic_circuits(p, 3);
        let mut out = BTreeSet::new();
        if circuits.is_empty() {
            out.insert(vec![piece_name(p)]);
        }
        for cc in circuits {
            let (a, b) = decompose_crushtacean(p, [cc.faces[0], cc.faces[1], cc.faces[2]]).unwrap();
            for x in go(&a, memo) {
                for y in go(&b, memo) {
                    let mut m = [x.clone(), y].concat();
                    m.sort();
                    out.insert(m);
                }
            }
        }
        memo.insert(code, out.clone());
        out
    }
    go(c, &mut BTreeMap::new())
}

/// Name for the indecomposable pieces that matter at small size.
pub fn piece_name(p: &Polyhedron) -> String {
    let code = canonical_code(p);
    let named = [("tetrahedron", shapes::tetrahedron()), ("cube", shapes::cube()), ("5-prism", shapes::prism(5))];
    for (name, q) in named {
        if q.num_vertices() == p.num_vertices() && canonical_code(&q) == code {
            return name.to_string();
        }
    }
    format!("{}-vertex polyhedron", p.num_vertices())
}

/// Flag-transitive: the automorphism group has one element per flag.
pub fn is_regular(p: &Polyhedron) -> bool {
    automorphism_group(p).len() == 4 * p.num_edges()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{isomorphic, lobell};

    fn names(ps: &[Polyhedron]) -> Vec<String> {
        let mut v: Vec<String> = ps.iter().map(piece_name).collect();
        v.sort();
        v
    }

    #[test]
    fn three_prism_splits_into_tetrahedra() {
        let p = shapes::prism(3);
        let circ = &prismatic_circuits(&p, 3)[0];
        let (a, b) = decompose_crushtacean(&p, [circ.faces[0], circ.faces[1], circ.faces[2]]).unwrap();
        assert_eq!(p.num_vertices() + 2, a.num_vertices() + b.num_vertices());
        assert!(isomorphic(&a, &shapes::tetrahedron()));
        assert!(isomorphic(&b, &shapes::tetrahedron()));
    }

    #[test]
    fn lobell_three() {
        let l3 = lobell(3).unwrap();
        assert_eq!(names(&full_decomposition(&l3)), ["cube", "tetrahedron", "tetrahedron"]);
        assert_eq!(full_decomposition_exhaustive(&l3).len(), 1);
    }

    #[test]
    fn tetrahedron_is_not_split() {
        let t = shapes::tetrahedron();
        assert!(matches!(decompose_crushtacean(&t, [0, 1, 2]), Err(PolyError::NotPrismatic)));
        assert_eq!(full_decomposition(&t).len(), 1);
    }

    #[test]
    fn regular_pieces() {
        assert!(is_regular(&shapes::tetrahedron()));
        assert!(is_regular(&shapes::cube()));
        assert!(!is_regular(&shapes::prism(5)));
    }
}
