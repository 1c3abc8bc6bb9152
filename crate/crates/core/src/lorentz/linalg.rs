//! Vectors, matrices and exact linear solves over Q(√d).

use super::quadext::QuadExt;
use super::LorentzError;

pub type Vec4 = [QuadExt; 4];
pub type Mat4 = [[QuadExt; 4]; 4];

/// Signature of the Lorentz form: + + + −.
pub const J: [i64; 4] = [1, 1, 1, -1];

pub fn vec4(xs: [i64; 4]) -> Vec4 {
    xs.map(QuadExt::int)
}

pub fn identity() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadExt::int((i == j) as i64)))
}

pub fn diag(xs: [i64; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadExt::int(if i == j { xs[i] } else { 0 })))
}

/// Common radicand of a collection, or `FieldMismatch`.
pub fn common_field<'a, I: IntoIterator<Item = &'a QuadExt>>(xs: I) -> Result<Option<i64>, LorentzError> {
    let mut d = None;
    for x in xs {
        if let Some(e) = x.field() {
            match d {
                None => d = Some(e),
                Some(f) if f != e => return Err(LorentzError::FieldMismatch(f, e)),
                _ => {}
            }
        }
    }
    Ok(d)
}

pub fn lorentz_form(v: &Vec4, w: &Vec4) -> Result<QuadExt, LorentzError> {
    common_field(v.iter().chain(w.iter()))?;
    Ok(lorentz_unchecked(v, w))
}

pub(crate) fn lorentz_unchecked(v: &Vec4, w: &Vec4) -> QuadExt {
    let mut s = QuadExt::zero();
    for i in 0..4 {
        let t = &v[i] * &w[i];
        s = if J[i] > 0 { &s + &t } else { &s - &t };
    }
    s
}

pub fn dot(v: &[QuadExt], w: &[QuadExt]) -> QuadExt {
    v.iter().zip(w).fold(QuadExt::zero(), |s, (x, y)| &s + &(x * y))
}

pub fn scale(c: &QuadExt, v: &Vec4) -> Vec4 {
    std::array::from_fn(|i| c * &v[i])
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    std::array::from_fn(|i| dot(&m[i], v))
}

pub fn mat_mul(x: &Mat4, y: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(QuadExt::zero(), |s, k| &s + &(&x[i][k] * &y[k][j])))
    })
}

pub fn transpose(m: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Inverse of a Lorentz isometry: J Mᵀ J.
pub fn lorentz_inverse(m: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let x = m[j][i].clone();
            if J[i] * J[j] < 0 {
                -x
            } else {
                x
            }
        })
    })
}

pub fn is_lorentz_isometry(m: &Mat4) -> bool {
    if common_field(m.iter().flatten()).is_err() {
        return false;
    }
    for i in 0..4 {
        for j in 0..4 {
            let s = (0..4).fold(QuadExt::zero(), |s, k| {
                let t = &m[k][i] * &m[k][j];
                if J[k] > 0 {
                    &s + &t
                } else {
                    &s - &t
                }
            });
            let want = if i == j { J[i] } else { 0 };
            if s != QuadExt::int(want) {
                return false;
            }
        }
    }
    // O(3,1) elements with m[3][3] > 0 keep the future cone
    m[3][3].is_positive()
}

pub fn is_light_like(v: &Vec4) -> bool {
    lorentz_unchecked(v, v).is_zero()
}

pub fn is_future(v: &Vec4) -> bool {
    v[3].is_positive()
}

/// Determinant by Gaussian elimination.
pub fn det(m: &Mat4) -> QuadExt {
    let mut a: Vec<Vec<QuadExt>> = m.iter().map(|r| r.to_vec()).collect();
    let mut d = QuadExt::one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else {
            return QuadExt::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d = &d * &piv;
        for r in c + 1..4 {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..4 {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    d
}

pub fn inverse(m: &Mat4) -> Option<Mat4> {
    let rows: Vec<Vec<QuadExt>> = m.iter().map(|r| r.to_vec()).collect();
    let mut out = identity();
    for j in 0..4 {
        let e: Vec<QuadExt> = (0..4).map(|i| QuadExt::int((i == j) as i64)).collect();
        match solve(&rows, &e) {
            Solution::Unique(x) => {
                for i in 0..4 {
                    out[i][j] = x[i].clone();
                }
            }
            _ => return None,
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<QuadExt>),
    /// Consistent but underdetermined; carries the rank.
    Family { particular: Vec<QuadExt>, rank: usize },
    Inconsistent,
}

/// Gauss–Jordan on `rows · x = rhs`.
pub fn solve(rows: &[Vec<QuadExt>], rhs: &[QuadExt]) -> Solution {
    let n = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<QuadExt>> =
        rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in 0..=n {
                    let t = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![QuadExt::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    if r == n {
        Solution::Unique(x)
    } else {
        Solution::Family { particular: x, rank: r }
    }
}

/// Indices of a maximal linearly independent subset of rows, greedy in order.
pub fn independent_rows(rows: &[Vec<QuadExt>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<QuadExt>)> = Vec::new(); // (pivot col, reduced row)
    let mut keep = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = &v[*pc] / &b[*pc];
                for k in 0..v.len() {
                    let t = &f * &b[k];
                    v[k] = &v[k] - &t;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            basis.push((pc, v));
            keep.push(idx);
        }
    }
    keep
}
