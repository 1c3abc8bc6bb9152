//! Exact convex hull of a handful of projectivized points in the Klein model.

use std::collections::BTreeSet;

use super::linalg::Vec4;
use super::quadext::QuadExt;
use super::LorentzError;

type P3 = [QuadExt; 3];

/// Face structure of a tile. Indices refer to the input vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Each face is counterclockwise when seen from outside.
    pub faces: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.contains(&e)
    }

    /// Faces containing vertex `v`.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].contains(&v)).collect()
    }
}

fn sub(a: &P3, b: &P3) -> P3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn cross(a: &P3, b: &P3) -> P3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot3(a: &P3, b: &P3) -> QuadExt {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn project(v: &Vec4) -> P3 {
    std::array::from_fn(|i| &v[i] / &v[3])
}

pub fn klein_hull(vectors: &[Vec4]) -> Result<FaceLattice, LorentzError> {
    let n = vectors.len();
    if n < 4 {
        return Err(LorentzError::Degenerate);
    }
    if vectors.iter().any(|v| !v[3].is_positive()) {
        return Err(LorentzError::BadSpec("hull needs positive last coordinates".into()));
    }
    let pts: Vec<P3> = vectors.iter().map(project).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    let mut any_plane = false;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nr = cross(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                if nr.iter().all(QuadExt::is_zero) {
                    continue;
                }
                any_plane = true;
                let s: Vec<i32> = pts.iter().map(|p| dot3(&nr, &sub(p, &pts[i])).signum()).collect();
                let pos = s.iter().any(|&x| x > 0);
                let neg = s.iter().any(|&x| x < 0);
                if pos && neg {
                    continue;
                }
                if !pos && !neg {
                    return Err(LorentzError::Degenerate);
                }
                let on: Vec<usize> = (0..n).filter(|&m| s[m] == 0).collect();
                if !seen.insert(on.clone()) {
                    continue;
                }
                // outward normal points away from the rest of the hull
                let outward = if pos { nr.clone().map(|x| -x) } else { nr };
                faces.push(order_face(&pts, &on, &outward));
            }
        }
    }
    if !any_plane {
        return Err(LorentzError::Degenerate);
    }
    let mut edges = BTreeSet::new();
    let mut verts = BTreeSet::new();
    for f in &faces {
        for t in 0..f.len() {
            let (a, b) = (f[t], f[(t + 1) % f.len()]);
            edges.insert((a.min(b), a.max(b)));
            verts.insert(a);
        }
    }
    Ok(FaceLattice { vertices: verts.into_iter().collect(), edges: edges.into_iter().collect(), faces })
}

/// Boundary cycle of a planar point set, counterclockwise about `normal`.
/// Points in the relative interior of the polygon or its sides are dropped.
fn order_face(pts: &[P3], on: &[usize], normal: &P3) -> Vec<usize> {
    let turn = |p: usize, q: usize, r: usize| {
        dot3(&cross(&sub(&pts[q], &pts[p]), &sub(&pts[r], &pts[p])), normal).signum()
    };
    let between = |p: usize, q: usize, r: usize| {
        // r strictly inside segment pq, assuming collinear
        let d = sub(&pts[q], &pts[p]);
        let t = dot3(&sub(&pts[r], &pts[p]), &d);
        t.is_positive() && (&t - &dot3(&d, &d)).is_negative()
    };
    // a polygon vertex is one not inside any triangle or segment of the others
    let mut corners = Vec::new();
    'outer: for &p in on {
        for &a in on {
            for &b in on {
                if a == p || b == p || a == b {
                    continue;
                }
                if turn(a, b, p) == 0 && between(a, b, p) {
                    continue 'outer;
                }
                for &c in on {
                    if c == p || c == a || c == b {
                        continue;
                    }
                    let (x, y, z) = (turn(a, b, p), turn(b, c, p), turn(c, a, p));
                    let t = turn(a, b, c);
                    if t != 0 && x == t && y == t && z == t {
                        continue 'outer;
                    }
                }
            }
        }
        corners.push(p);
    }
    let start = *corners.iter().min().unwrap();
    let mut cycle = vec![start];
    let mut cur = start;
    loop {
        let next = corners
            .iter()
            .copied()
            .find(|&q| q != cur && corners.iter().all(|&r| r == cur || r == q || turn(cur, q, r) > 0))
            .expect("convex polygon walk");
        if next == start {
            break;
        }
        cycle.push(next);
        cur = next;
    }
    cycle
}
