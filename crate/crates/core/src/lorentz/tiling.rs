//! Tiling specs, neighbor certificates, and their exact verification.

use std::collections::{BTreeMap, HashMap, HashSet};

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::hull::{klein_hull, FaceLattice};
use super::linalg::{
    identity, is_future, is_light_like, is_lorentz_isometry, lorentz_inverse, mat_mul, mat_vec, scale, Mat4, Vec4,
};
use super::parse::parse_field_literal;
use super::quadext::QuadExt;
use super::{coplanar_normal, tilt_excess, CoplanarNormal, LorentzError};

/// `[a_num, a_den, b_num, b_den]` for `a_num/a_den + (b_num/b_den)√d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub [BigInt; 4]);

impl Exact {
    pub fn from_quad(x: &QuadExt) -> Self {
        Exact([x.a().numer().clone(), x.a().denom().clone(), x.b().numer().clone(), x.b().denom().clone()])
    }

    pub fn to_quad(&self, d: i64) -> Result<QuadExt, LorentzError> {
        let [an, ad, bn, bd] = &self.0;
        if ad == &BigInt::from(0) || bd == &BigInt::from(0) {
            return Err(LorentzError::BadSpec("zero denominator".into()));
        }
        Ok(QuadExt::new(BigRational::new(an.clone(), ad.clone()), BigRational::new(bn.clone(), bd.clone()), d))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(4))?;
        for x in &self.0 {
            match i64::try_from(x) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Num {
            Int(i64),
            Text(String),
        }
        let raw: Vec<Num> = Vec::deserialize(d)?;
        if raw.len() != 4 {
            return Err(de::Error::custom("exact number needs four integers"));
        }
        let mut out = Vec::with_capacity(4);
        for n in raw {
            out.push(match n {
                Num::Int(v) => BigInt::from(v),
                Num::Text(t) => t.parse().map_err(de::Error::custom)?,
            });
        }
        Ok(Exact(out.try_into().unwrap()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorDef {
    Explicit {
        coords: [Exact; 4],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit: Option<String>,
    },
    /// `word · base`, where a scaled base is scaled before the word acts.
    Derived {
        word: Vec<String>,
        base: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit: Option<String>,
    },
}

impl VectorDef {
    pub fn orbit(&self) -> Option<&str> {
        match self {
            VectorDef::Explicit { orbit, .. } | VectorDef::Derived { orbit, .. } => orbit.as_deref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceColor {
    pub face: Vec<String>,
    pub color: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileDef {
    pub name: String,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub colors: Vec<FaceColor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub label: String,
    pub tile: usize,
    /// Product of named matrices, left to right; a trailing `'` inverts.
    pub word: Vec<String>,
    pub neighbor: usize,
    /// `[i, j]`: vertex i of the tile equals word applied to vertex j of the neighbor.
    #[serde(rename = "match")]
    pub matching: Vec<[usize; 2]>,
    /// Neighbor vertices off the shared face.
    pub extra: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub name: String,
    pub beta: String,
    pub certificate: String,
    /// `above` when the tilt is positive for β > β₀.
    pub side: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingSpec {
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrices: IndexMap<String, [[Exact; 4]; 4]>,
    /// Matrices used for word search; all matrices when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    pub vectors: IndexMap<String, VectorDef>,
    /// Base vectors multiplied by β.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scaled: Vec<String>,
    /// A β literal inside the spec's cell, used when none is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub tiles: Vec<TileDef>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakpoints: Vec<Breakpoint>,
}

impl TilingSpec {
    pub fn from_json(text: &str) -> Result<Self, LorentzError> {
        serde_json::from_str(text).map_err(|e| LorentzError::BadSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn parse_beta(&self, text: &str) -> Result<QuadExt, LorentzError> {
        parse_field_literal(text, Some(self.d))
    }

    pub fn default_beta(&self) -> Result<QuadExt, LorentzError> {
        match &self.beta {
            Some(b) => self.parse_beta(b),
            None => Ok(QuadExt::one().with_field(self.d)),
        }
    }

    pub fn certificate(&self, label: &str) -> Option<usize> {
        self.certificates.iter().position(|c| c.label == label)
    }

    pub fn realize(&self, beta: &QuadExt) -> Result<Realized, LorentzError> {
        Realized::new(self, beta)
    }
}

/// A spec evaluated at one β: concrete matrices and vectors.
#[derive(Clone, Debug)]
pub struct Realized {
    pub d: i64,
    pub matrices: HashMap<String, Mat4>,
    pub vectors: IndexMap<String, Vec4>,
    pub tiles: Vec<Vec<Vec4>>,
}

impl Realized {
    fn new(spec: &TilingSpec, beta: &QuadExt) -> Result<Self, LorentzError> {
        if let Some(f) = beta.field() {
            if f != spec.d {
                return Err(LorentzError::FieldMismatch(spec.d, f));
            }
        }
        let mut matrices = HashMap::new();
        for (name, m) in &spec.matrices {
            let mut out = identity();
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] = m[i][j].to_quad(spec.d)?;
                }
            }
            if !is_lorentz_isometry(&out) {
                return Err(LorentzError::BadSpec(format!("matrix {name} is not a Lorentz isometry")));
            }
            matrices.insert(name.clone(), out);
        }
        let mut real = Realized { d: spec.d, matrices, vectors: IndexMap::new(), tiles: Vec::new() };
        for (name, def) in &spec.vectors {
            let v = match def {
                VectorDef::Explicit { coords, .. } => {
                    let mut it = coords.iter().map(|c| c.to_quad(spec.d));
                    let v: Vec4 = [it.next().unwrap()?, it.next().unwrap()?, it.next().unwrap()?, it.next().unwrap()?];
                    if spec.scaled.contains(name) {
                        scale(beta, &v)
                    } else {
                        v
                    }
                }
                VectorDef::Derived { word, base, .. } => {
                    let b = real
                        .vectors
                        .get(base)
                        .ok_or_else(|| LorentzError::BadSpec(format!("vector {name}: unknown base {base}")))?
                        .clone();
                    mat_vec(&real.word(word)?, &b)
                }
            };
            if !is_light_like(&v) || !is_future(&v) {
                return Err(LorentzError::BadSpec(format!("vector {name} is not future light-like")));
            }
            real.vectors.insert(name.clone(), v);
        }
        for t in &spec.tiles {
            let mut vs = Vec::new();
            for n in &t.vertices {
                vs.push(
                    real.vectors
                        .get(n)
                        .ok_or_else(|| LorentzError::BadSpec(format!("tile {}: unknown vector {n}", t.name)))?
                        .clone(),
                );
            }
            real.tiles.push(vs);
        }
        Ok(real)
    }

    pub fn letter(&self, l: &str) -> Result<Mat4, LorentzError> {
        let (name, inv) = match l.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (l, false),
        };
        let m = self.matrices.get(name).ok_or_else(|| LorentzError::BadSpec(format!("unknown matrix {name}")))?;
        Ok(if inv { lorentz_inverse(m) } else { m.clone() })
    }

    pub fn word(&self, w: &[String]) -> Result<Mat4, LorentzError> {
        let mut m = identity();
        for l in w {
            m = mat_mul(&m, &self.letter(l)?);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TileReport {
    pub name: String,
    pub normal: Option<CoplanarNormal>,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport {
    pub label: String,
    pub tilts: Vec<QuadExt>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TilingReport {
    pub tiles: Vec<TileReport>,
    pub certificates: Vec<CertificateReport>,
    /// `(tile, face)` pairs with no certificate.
    pub uncovered: Vec<(usize, Vec<usize>)>,
    pub pass: bool,
}

fn bad(label: &str, reason: impl Into<String>) -> LorentzError {
    LorentzError::BadCertificate { label: label.to_string(), reason: reason.into() }
}

/// Tilts of the neighbor's extra vertices against the tile's plane.
fn certificate_tilts(
    real: &Realized,
    normals: &[Option<CoplanarNormal>],
    hulls: &[FaceLattice],
    c: &Certificate,
) -> Result<Vec<QuadExt>, LorentzError> {
    let label = c.label.as_str();
    let tile = real.tiles.get(c.tile).ok_or_else(|| bad(label, "tile index out of range"))?;
    let nb = real.tiles.get(c.neighbor).ok_or_else(|| bad(label, "neighbor index out of range"))?;
    let g = real.word(&c.word)?;
    let moved: Vec<Vec4> = nb.iter().map(|v| mat_vec(&g, v)).collect();
    let mut face = Vec::new();
    let mut used = HashSet::new();
    for &[i, j] in &c.matching {
        let (Some(a), Some(b)) = (tile.get(i), moved.get(j)) else {
            return Err(bad(label, "match index out of range"));
        };
        if a != b {
            return Err(bad(label, format!("vertex {i} is not the image of neighbor vertex {j}")));
        }
        face.push(i);
        used.insert(j);
    }
    face.sort_unstable();
    let is_face = hulls[c.tile].faces.iter().any(|f| {
        let mut s = f.clone();
        s.sort_unstable();
        s == face
    });
    if !is_face {
        return Err(bad(label, "matched vertices are not a hull face of the tile"));
    }
    let mut extra: Vec<usize> = (0..nb.len()).filter(|j| !used.contains(j)).collect();
    extra.sort_unstable();
    let mut listed = c.extra.clone();
    listed.sort_unstable();
    if extra != listed || extra.is_empty() {
        return Err(bad(label, "extra vertices do not complement the match"));
    }
    let Some(n) = &normals[c.tile] else {
        return Err(bad(label, "tile has no coplanar normal"));
    };
    Ok(extra.iter().map(|&j| tilt_excess(&n.n, &moved[j])).collect())
}

struct Prepared {
    real: Realized,
    normals: Vec<Option<CoplanarNormal>>,
    hulls: Vec<FaceLattice>,
}

fn prepare(spec: &TilingSpec, beta: &QuadExt) -> Result<Prepared, LorentzError> {
    let real = spec.realize(beta)?;
    let normals: Vec<Option<CoplanarNormal>> = real
        .tiles
        .iter()
        .map(|t| coplanar_normal(t).filter(|n| !n.degenerate_span))
        .collect();
    let hulls = real.tiles.iter().map(|t| klein_hull(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Prepared { real, normals, hulls })
}

/// Check every tile is inscribed in a plane and every certificate tilts the right way.
pub fn verify_generated_tiling(spec: &TilingSpec, beta: &QuadExt) -> Result<TilingReport, LorentzError> {
    let p = prepare(spec, beta)?;
    let mut certs = Vec::new();
    let mut covered: HashSet<(usize, Vec<usize>)> = HashSet::new();
    for c in &spec.certificates {
        let tilts = certificate_tilts(&p.real, &p.normals, &p.hulls, c)?;
        let pass = tilts.iter().all(QuadExt::is_positive);
        let mut f: Vec<usize> = c.matching.iter().map(|m| m[0]).collect();
        f.sort_unstable();
        covered.insert((c.tile, f));
        certs.push(CertificateReport { label: c.label.clone(), tilts, pass });
    }
    let mut uncovered = Vec::new();
    for (t, h) in p.hulls.iter().enumerate() {
        for f in &h.faces {
            let mut s = f.clone();
            s.sort_unstable();
            if !covered.contains(&(t, s)) {
                uncovered.push((t, f.clone()));
            }
        }
    }
    let tiles: Vec<TileReport> = spec
        .tiles
        .iter()
        .zip(p.normals.iter().zip(&p.hulls))
        .map(|(t, (n, h))| TileReport { name: t.name.clone(), normal: n.clone(), faces: h.faces.clone() })
        .collect();
    let pass = tiles.iter().all(|t| t.normal.is_some()) && certs.iter().all(|c| c.pass) && uncovered.is_empty();
    Ok(TilingReport { tiles, certificates: certs, uncovered, pass })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointReport {
    pub beta0: QuadExt,
    pub tilt_at: QuadExt,
    pub merged_coplanar: bool,
    pub tilt_above: Option<QuadExt>,
    pub tilt_below: Option<QuadExt>,
    pub pass: bool,
}

fn min_tilt(spec: &TilingSpec, idx: usize, beta: &QuadExt) -> Result<(Option<QuadExt>, Prepared), LorentzError> {
    let p = prepare(spec, beta)?;
    let c = &spec.certificates[idx];
    if p.normals[c.tile].is_none() {
        return Ok((None, p));
    }
    let tilts = certificate_tilts(&p.real, &p.normals, &p.hulls, c)?;
    let m = tilts.into_iter().reduce(|a, b| if b < a { b } else { a });
    Ok((m, p))
}

/// At β₀ the certificate's neighbor is coplanar with its tile; just off β₀ the
/// tilt is strictly positive on `side` and strictly negative on the other.
pub fn breakpoint_check(
    spec: &TilingSpec,
    certificate: &str,
    beta0: &QuadExt,
    side_above: bool,
) -> Result<BreakpointReport, LorentzError> {
    let idx = spec
        .certificate(certificate)
        .ok_or_else(|| LorentzError::BadSpec(format!("no certificate labelled {certificate}")))?;
    let c = &spec.certificates[idx];
    let (at, p) = min_tilt(spec, idx, beta0)?;
    let at = at.ok_or_else(|| bad(certificate, "tile has no coplanar normal at the breakpoint"))?;
    let g = p.real.word(&c.word)?;
    let mut union: Vec<Vec4> = p.real.tiles[c.tile].clone();
    for &e in &c.extra {
        union.push(mat_vec(&g, &p.real.tiles[c.neighbor][e]));
    }
    let merged_coplanar = coplanar_normal(&union).is_some_and(|n| !n.degenerate_span);
    let eps = QuadExt::frac(1, 1000);
    let (above, _) = min_tilt(spec, idx, &(beta0 + &eps))?;
    let (below, _) = min_tilt(spec, idx, &(beta0 - &eps))?;
    let (good, badside) = if side_above { (&above, &below) } else { (&below, &above) };
    let pass = at.is_zero()
        && merged_coplanar
        && good.as_ref().is_some_and(QuadExt::is_positive)
        && badside.as_ref().is_some_and(QuadExt::is_negative);
    Ok(BreakpointReport { beta0: beta0.clone(), tilt_at: at, merged_coplanar, tilt_above: above, tilt_below: below, pass })
}

/// Count tile vertices per orbit label.
pub fn orbit_census(
    vertices: &[String],
    labeling: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, usize>, LorentzError> {
    let mut out = BTreeMap::new();
    for v in vertices {
        let l = labeling.get(v).ok_or_else(|| LorentzError::UnlabeledVertex(v.clone()))?;
        *out.entry(l.clone()).or_insert(0) += 1;
    }
    Ok(out)
}

/// Orbit labels carried by the spec's vector table.
pub fn spec_labeling(spec: &TilingSpec) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (name, def) in &spec.vectors {
        if let Some(o) = def.orbit() {
            out.insert(name.clone(), o.to_string());
        }
    }
    out
}

/// Group elements reachable by words of length ≤ radius, shortest first.
pub fn word_ball(real: &Realized, letters: &[String], radius: usize) -> Vec<(Vec<String>, Mat4)> {
    let mut alphabet: Vec<(String, Mat4)> = Vec::new();
    for l in letters {
        let m = real.matrices[l].clone();
        let inv = lorentz_inverse(&m);
        let self_inverse = inv == m;
        alphabet.push((l.clone(), m));
        if !self_inverse {
            alphabet.push((format!("{l}'"), inv));
        }
    }
    let mut seen: HashSet<Mat4> = HashSet::new();
    seen.insert(identity());
    let mut out = vec![(Vec::new(), identity())];
    let mut frontier = 0;
    for _ in 0..radius {
        let end = out.len();
        for k in frontier..end {
            for (l, g) in &alphabet {
                let m = mat_mul(&out[k].1, g);
                if seen.insert(m.clone()) {
                    let mut w = out[k].0.clone();
                    w.push(l.clone());
                    out.push((w, m));
                }
            }
        }
        frontier = end;
    }
    out
}

/// Search short words for a neighbor across every hull face.
///
/// Among candidates the shortest word with all tilts positive wins; failing
/// that the shortest word at all, so a verifier run reports the failure.
pub fn discover_certificates(spec: &TilingSpec, beta: &QuadExt, radius: usize) -> Result<Vec<Certificate>, LorentzError> {
    let p = prepare(spec, beta)?;
    let letters: Vec<String> = if spec.generators.is_empty() {
        spec.matrices.keys().cloned().collect()
    } else {
        spec.generators.clone()
    };
    let ball = word_ball(&p.real, &letters, radius);
    let tile_keys: Vec<HashMap<Vec4, usize>> =
        p.real.tiles.iter().map(|t| t.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect()).collect();
    let inverses: Vec<Mat4> = ball.iter().map(|(_, g)| lorentz_inverse(g)).collect();
    let mut out = Vec::new();
    for (ti, hull) in p.hulls.iter().enumerate() {
        let tile = &p.real.tiles[ti];
        let own: HashSet<&Vec4> = tile.iter().collect();
        for (fi, face) in hull.faces.iter().enumerate() {
            let mut best: Option<(bool, usize, Certificate)> = None;
            'search: for (gi, (word, g)) in ball.iter().enumerate() {
                let pulled: Vec<Vec4> = face.iter().map(|&v| mat_vec(&inverses[gi], &tile[v])).collect();
                for (nj, keys) in tile_keys.iter().enumerate() {
                    let Some(js): Option<Vec<usize>> = pulled.iter().map(|v| keys.get(v).copied()).collect() else {
                        continue;
                    };
                    let extra: Vec<usize> = (0..p.real.tiles[nj].len()).filter(|j| !js.contains(j)).collect();
                    let moved: Vec<Vec4> = extra.iter().map(|&j| mat_vec(g, &p.real.tiles[nj][j])).collect();
                    if extra.is_empty() || moved.iter().all(|v| own.contains(v)) {
                        continue;
                    }
                    let positive = match &p.normals[ti] {
                        Some(n) => moved.iter().all(|w| tilt_excess(&n.n, w).is_positive()),
                        None => false,
                    };
                    let cert = Certificate {
                        label: format!("{}.F{}", spec.tiles[ti].name, fi),
                        tile: ti,
                        word: word.clone(),
                        neighbor: nj,
                        matching: face.iter().zip(&js).map(|(&i, &j)| [i, j]).collect(),
                        extra,
                    };
                    let better = match &best {
                        None => true,
                        Some((pos, len, _)) => positive && !pos || (positive == *pos && word.len() < *len),
                    };
                    if better {
                        best = Some((positive, word.len(), cert));
                    }
                    if positive {
                        break 'search;
                    }
                }
            }
            if let Some((_, _, c)) = best {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Certificates whose smallest tilt vanishes exactly at `beta0`.
pub fn merging_certificates(spec: &TilingSpec, beta0: &QuadExt) -> Result<Vec<String>, LorentzError> {
    let mut out = Vec::new();
    for idx in 0..spec.certificates.len() {
        if let (Some(t), _) = min_tilt(spec, idx, beta0)? {
            if t.is_zero() {
                out.push(spec.certificates[idx].label.clone());
            }
        }
    }
    Ok(out)
}
