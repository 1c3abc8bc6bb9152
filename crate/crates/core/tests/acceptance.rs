//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specialcheck::augmented::{build_decomposition, model_checkering, scissors_class, symmetric_links_check};
use specialcheck::cellkit::{edge_cycle_check, quotient_complex, FacePairing};
use specialcheck::checkering::{
    checkered_double_cover, components, decomposition_checkering, double_cover_checkering, is_checkering,
};
use specialcheck::fixtures;
use specialcheck::hyperplanes::{is_c_special, pathology_report, racg_nerve, HyperplaneSystem};
use specialcheck::lorentz::hull::klein_hull;
use specialcheck::lorentz::linalg::{dot, is_light_like, is_lorentz_isometry};
use specialcheck::lorentz::tiling::{orbit_census, spec_labeling};
use specialcheck::lorentz::{
    breakpoint_check, cusp_commensurable, dn, parse_field_literal, tilt_excess, verify_generated_tiling, Vec4,
};
use specialcheck::polyhedra::crush::{decompose_crushtacean, full_decomposition, piece_name};
use specialcheck::polyhedra::{
    automorphism_group, enumerate_crushtaceans, enumerate_rightangled, isomorphic, lobell, lobell_generators,
    prismatic_circuits, shapes,
};
use specialcheck::squares::{is_bipartite, is_npc, standard_square_complex};
use specialcheck::{AugmentedLinkModel, Decomposition, FaceRef, Parity, Polyhedron, QuadExt, SquareComplex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q3(text: &str) -> QuadExt {
    parse_field_literal(text, Some(3)).unwrap()
}

fn q2(a: i64, b: i64) -> QuadExt {
    QuadExt::from_parts(a, 1, b, 1, 2)
}

fn light_cone_and_isometries() -> Outcome {
    let spec = fixtures::tiling(16);
    let real = spec.realize(&spec.default_beta().unwrap()).unwrap();
    let columns: Vec<&Vec4> = (1..=7).map(|k| &real.vectors[&format!("v{k}")]).collect();
    ensure(columns.iter().all(|v| is_light_like(v)), "a column of the vector matrix is not light-like")?;
    let names = ["A", "B", "C", "D1", "D2", "D3"];
    for n in names {
        ensure(is_lorentz_isometry(&real.letter(n).unwrap()), format!("{n} fails MᵀJM = J"))?;
    }
    Ok("v1..v7 light-like; A, B, C, D1, D2, D3 are isometries".into())
}

fn tiling_constants() -> Outcome {
    let n: Vec4 = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::frac(1, 2)];
    let cubo = dn::cuboctahedron();
    ensure(cubo.len() == 12 && cubo.iter().all(|m| dot(&n, m) == QuadExt::one()), "n·mᵢ ≠ 1")?;
    let octa = dn::octahedron();
    let root2 = QuadExt::sqrt(2);
    ensure(octa.len() == 6 && octa.iter().all(|v| &root2 * &dot(&n, v) == QuadExt::one()), "√2·n·nᵢ ≠ 1")?;
    let neighbours: [(Vec4, QuadExt); 3] = [
        ([q2(7, 0), q2(1, 0), q2(0, -5), q2(10, 0)], QuadExt::int(5)),
        ([q2(3, 0), q2(5, 0), q2(0, -1), q2(6, 0)], QuadExt::int(3)),
        ([q2(2, 2), q2(0, 0), q2(-2, -2), q2(4, 2)], q2(2, 1)),
    ];
    let mut tilts = Vec::new();
    for (w, want) in &neighbours {
        ensure(is_light_like(w), "neighbour vector is not light-like")?;
        let t = dot(&n, w);
        ensure(&t == want, format!("n·w = {t}, expected {want}"))?;
        ensure(tilt_excess(&n, w).is_positive(), "tilt not positive")?;
        tilts.push(t.to_string());
    }
    // the octahedron vector as printed, with last coordinate 4+4√2, is off the light cone
    ensure(!is_light_like(&[q2(2, 2), q2(0, 0), q2(-2, -2), q2(4, 4)]), "printed octahedron vector is light-like")?;
    Ok(format!("normal (0,0,0,1/2) on 12 + 6 columns; tilts {}", tilts.join(", ")))
}

const ENDPOINTS: [&str; 10] = [
    "(3/11)*(4+3*sqrt3)",
    "(1/22)*(21+13*sqrt3)",
    "(1/11)*(9+4*sqrt3)",
    "(1/121)*(72+43*sqrt3)",
    "1/(13*sqrt3-21)",
    "(1/143)*(48+25*sqrt3)",
    "(1/11)*(6-sqrt3)",
    "(1/33)*(3+5*sqrt3)",
    "(1/143)*(24+7*sqrt3)",
    "(1/33)*(6-sqrt3)",
];

fn tables() -> Outcome {
    let mut checked = 0;
    let mut covered: Vec<QuadExt> = Vec::new();
    for k in 1..=21 {
        let spec = fixtures::tiling(k);
        let beta = spec.default_beta().unwrap();
        let rep = verify_generated_tiling(&spec, &beta).map_err(|e| format!("T{k}: {e}"))?;
        ensure(rep.pass, format!("T{k} fails at β = {beta}"))?;
        for bp in &spec.breakpoints {
            let b0 = spec.parse_beta(&bp.beta).unwrap();
            let r = breakpoint_check(&spec, &bp.certificate, &b0, bp.side == "above").map_err(|e| e.to_string())?;
            ensure(r.pass, format!("T{k} breakpoint {} via {} fails", bp.beta, bp.certificate))?;
            covered.push(b0);
            checked += 1;
        }
    }
    for e in ENDPOINTS {
        ensure(covered.contains(&q3(e)), format!("endpoint {e} not checked"))?;
    }
    Ok(format!("21 tilings verified, {checked} breakpoint checks over 10 endpoints"))
}

fn census() -> Outcome {
    let t2 = fixtures::tiling(2);
    let labels = spec_labeling(&t2);
    let five = t2.tiles.iter().find(|t| t.vertices.len() == 5).ok_or("T2 has no five-vertex tile")?;
    let c = orbit_census(&five.vertices, &labels).map_err(|e| e.to_string())?;
    let triple = (c.get("1").copied(), c.get("7").copied(), c.get("3").copied());
    ensure(triple == (Some(3), Some(1), Some(1)), format!("T2 census {c:?}"))?;
    // T12: the orbit-7 pair is an edge and the orbit-1 pair is not; T14 the other way round
    for (k, tile, joined, apart) in [(12, "P2", "7", "1"), (14, "P1", "1", "7")] {
        let spec = fixtures::tiling(k);
        let labels = spec_labeling(&spec);
        let idx = spec.tiles.iter().position(|t| t.name == tile).unwrap();
        let names = &spec.tiles[idx].vertices;
        let real = spec.realize(&spec.default_beta().unwrap()).unwrap();
        let hull = klein_hull(&real.tiles[idx]).map_err(|e| e.to_string())?;
        let pair = |orbit: &str| -> Vec<usize> { (0..names.len()).filter(|&i| labels[&names[i]] == orbit).collect() };
        let (a, b) = (pair(joined), pair(apart));
        ensure(a.len() == 2 && b.len() == 2, format!("T{k} {tile}: orbit pairs {a:?} {b:?}"))?;
        ensure(hull.has_edge(a[0], a[1]), format!("T{k} {tile}: orbit-{joined} pair not joined"))?;
        ensure(!hull.has_edge(b[0], b[1]), format!("T{k} {tile}: orbit-{apart} pair joined"))?;
    }
    Ok("T2 census (3,1,1); T12 P2 joins its orbit-7 pair only, T14 P1 its orbit-1 pair only".into())
}

fn classification() -> Outcome {
    let mut issues = Vec::new();
    let ra = enumerate_rightangled(9);
    for k in [3, 4] {
        if !ra.iter().any(|e| isomorphic(&e.poly, &shapes::antiprism(k))) {
            issues.push(format!("{k}-antiprism missing"));
        }
    }
    let antiprism = |p: &Polyhedron| (3..=4).any(|k| isomorphic(p, &shapes::antiprism(k)));
    for e in ra.iter().filter(|e| !antiprism(&e.poly)) {
        issues.push(format!("extra right-angled polyhedron with {} vertices, face vector {:?}", e.vertices, e.face_vector));
    }
    let crs = enumerate_crushtaceans(12, true);
    let small: BTreeSet<String> = crs.iter().filter(|e| e.vertices <= 10).map(|e| piece_name(&e.poly)).collect();
    let want: BTreeSet<String> = ["tetrahedron", "cube", "5-prism"].iter().map(|s| s.to_string()).collect();
    if small != want {
        issues.push(format!("indecomposable up to 10: {small:?}"));
    }
    let twelve: Vec<_> = crs.iter().filter(|e| e.vertices == 12).collect();
    let other: Vec<_> = twelve.iter().filter(|e| !isomorphic(&e.poly, &shapes::prism(6))).collect();
    if twelve.len() != 2 || other.len() != 1 {
        issues.push(format!("{} indecomposable with 12 vertices", twelve.len()));
    } else if other[0].face_vector != BTreeMap::from([(4, 4), (5, 4)]) {
        issues.push(format!("12-vertex face vector {:?}", other[0].face_vector));
    }
    if issues.is_empty() {
        Ok("antiprisms 3, 4; {tetrahedron, cube, 5-prism}; two at 12 vertices, the other 4 quads + 4 pentagons".into())
    } else {
        Err(issues.join("; "))
    }
}

fn decompositions() -> Outcome {
    let p3 = shapes::prism(3);
    let circ = prismatic_circuits(&p3, 3).into_iter().next().ok_or("3-prism has no prismatic circuit")?;
    let (a, b) = decompose_crushtacean(&p3, [circ.faces[0], circ.faces[1], circ.faces[2]]).map_err(|e| e.to_string())?;
    let tetra = shapes::tetrahedron();
    ensure(isomorphic(&a, &tetra) && isomorphic(&b, &tetra), "3-prism pieces are not tetrahedra")?;
    ensure(p3.num_vertices() + 2 == a.num_vertices() + b.num_vertices(), "vertex count 6 + 2 ≠ 4 + 4")?;
    let mut l3: Vec<String> = full_decomposition(&lobell(3).unwrap()).iter().map(piece_name).collect();
    l3.sort();
    ensure(l3 == ["cube", "tetrahedron", "tetrahedron"], format!("L(3) pieces {l3:?}"))?;
    for n in 4..=10 {
        ensure(prismatic_circuits(&lobell(n).unwrap(), 3).is_empty(), format!("L({n}) decomposes"))?;
    }
    let mut decomposable = 0;
    for e in enumerate_crushtaceans(10, false) {
        if prismatic_circuits(&e.poly, 3).is_empty() {
            continue;
        }
        decomposable += 1;
        let mut names: Vec<String> = full_decomposition(&e.poly).iter().map(piece_name).collect();
        names.sort();
        let all_tetra = names.len() <= 4 && names.iter().all(|n| n == "tetrahedron");
        ensure(all_tetra || names == ["cube", "tetrahedron"], format!("{} splits into {names:?}", e.code))?;
    }
    Ok(format!("3-prism, L(3), L(4..10) as claimed; {decomposable} decomposable crushtaceans checked"))
}

fn lobell_symmetry() -> Outcome {
    for n in 3..=8 {
        let order = automorphism_group(&lobell(n).unwrap()).len();
        let want = if n == 5 { 120 } else { 4 * n };
        ensure(order == want, format!("|Aut(L({n}))| = {order}, expected {want}"))?;
        let gens = lobell_generators(n).map_err(|e| e.to_string())?;
        ensure(gens.relations_hold(n), format!("relations fail for L({n})"))?;
    }
    Ok("orders 12, 16, 120, 24, 28, 32; relations hold for n = 3..8".into())
}

fn load_squares(text: &str) -> SquareComplex {
    SquareComplex::from_json(text).unwrap()
}

fn square_complexes() -> Outcome {
    let qc = quotient_complex(&fixtures::whitehead()).unwrap();
    let sc = standard_square_complex(&qc);
    ensure(sc.num_squares() == 12, format!("{} squares", sc.num_squares()))?;
    ensure(sc.euler_characteristic() == 0, format!("χ = {}", sc.euler_characteristic()))?;
    ensure(is_bipartite(&sc).bipartite, "Whitehead complex not bipartite")?;
    ensure(is_npc(&sc).npc, "Whitehead complex not NPC")?;
    let bad = is_npc(&load_squares(fixtures::BADCORNER_JSON));
    ensure(!bad.npc, "cube corner passes NPC")?;
    let w = bad.witness.ok_or("no witness")?;
    ensure(w.cycle.len() == 3, format!("witness of length {}", w.cycle.len()))?;
    for text in fixtures::AUG_MODELS {
        let d = build_decomposition(&AugmentedLinkModel::from_json(text).unwrap()).unwrap();
        ensure(edge_cycle_check(&quotient_complex(&d).unwrap()).0, "augmented edge class of size ≠ 4")?;
    }
    Ok("Whitehead 12 squares, χ = 0, bipartite, NPC; corner witness length 3; augmented classes of size 4".into())
}

fn pathologies() -> Outcome {
    let torus = load_squares(fixtures::TORUS_1X1_JSON);
    ensure(!pathology_report(&torus).unwrap().self_osculations.is_empty(), "1×1 torus does not self-osculate")?;
    let klein = load_squares(fixtures::KLEIN_JSON);
    ensure(pathology_report(&klein).unwrap().one_sided.len() == 1, "Klein square not one-sided")?;
    let t2 = load_squares(fixtures::TORUS_2X2_JSON);
    ensure(is_c_special(&t2).special, "2×2 torus not C-special")?;
    let nerve = racg_nerve(&t2).map_err(|e| e.to_string())?;
    let sys = HyperplaneSystem::new(&t2);
    let horizontal: BTreeSet<usize> = (0..4).map(|e| sys.of_edge(e)).collect();
    let k22 = nerve.vertices == 4
        && nerve.edges.len() == 4
        && horizontal.len() == 2
        && nerve.edges.iter().all(|&(a, b)| horizontal.contains(&a) != horizontal.contains(&b));
    ensure(k22, "nerve is not K(2,2)")?;
    let mut remote = 0;
    for text in fixtures::AUG_MODELS {
        let d = build_decomposition(&AugmentedLinkModel::from_json(text).unwrap()).unwrap();
        ensure(decomposition_checkering(&d).is_some(), "augmented fixture not checkered")?;
        let r = pathology_report(&standard_square_complex(&quotient_complex(&d).unwrap())).unwrap();
        ensure(r.inter_osculations.is_empty(), format!("{} inter-osculating pairs", r.inter_osculations.len()))?;
        remote += r.remote_inter_osculations.len();
    }
    Ok(format!(
        "torus self-osculates, Klein one-sided, 2×2 torus C-special with K(2,2) nerve; \
         no inter-osculation along edges ({remote} remote pairs at polyhedron vertices)"
    ))
}

fn augmented_pipeline() -> Outcome {
    let load = |t: &str| AugmentedLinkModel::from_json(t).unwrap();
    let tetra = load(fixtures::AUG_TETRA_JSON);
    let d = build_decomposition(&tetra).unwrap();
    ensure(d.polyhedra().iter().all(|p| isomorphic(p, &shapes::octahedron())), "pieces are not octahedra")?;
    ensure(d.polyhedra().len() == 2, "not two pieces")?;
    ensure(is_checkering(&d, &model_checkering(&tetra)), "tetrahedral model not checkered")?;
    let class = |m: &AugmentedLinkModel| scissors_class(m).map_err(|e| e.to_string());
    let want = |xs: &[(&str, usize)]| -> BTreeMap<String, usize> { xs.iter().map(|&(s, n)| (s.to_string(), n)).collect() };
    ensure(class(&tetra)? == want(&[("octahedron", 2)]), "tetrahedral scissors class")?;
    ensure(class(&load(fixtures::AUG_CUBE_JSON))? == want(&[("cuboctahedron", 2)]), "cube scissors class")?;
    ensure(
        class(&load(fixtures::AUG_TETRA_CUBE_JSON))? == want(&[("octahedron", 2), ("cuboctahedron", 2)]),
        "tetra+cube scissors class",
    )?;
    ensure(symmetric_links_check(&load(fixtures::AUG_PRISM6_LEFT_JSON)), "left 6-prism model not symmetric")?;
    ensure(!symmetric_links_check(&load(fixtures::AUG_PRISM6_RIGHT_JSON)), "right 6-prism model symmetric")?;
    Ok("two octahedra, scissors classes as claimed, 6-prism left true / right false".into())
}

fn cusp_moduli() -> Outcome {
    let c3 = q3("2+sqrt3");
    ensure(cusp_commensurable(&c3, &c3).unwrap(), "2+√3 not commensurable with itself")?;
    ensure(!cusp_commensurable(&q3("1+sqrt3"), &c3).unwrap(), "1+√3 commensurable with 2+√3")?;
    Ok("(2+√3, 2+√3) true; (1+√3, 2+√3) false".into())
}

/// Depth-first gluing search with random choices: faces are paired one at a time by
/// reversing maps, pruning as soon as an edge cycle closes with length other than four
/// or an open chain already has more than four edges.
struct GluingSearch<'a> {
    polys: &'a [Polyhedron],
    glue: HashMap<FaceRef, (FaceRef, usize)>,
    budget: usize,
}

impl GluingSearch<'_> {
    fn glued_side(&self, f: FaceRef, shift: usize, k: usize) -> usize {
        let n = self.polys[f.poly].face(f.face).len();
        (shift + 2 * n - k - 1) % n
    }

    /// Edges met walking around the edge at side `k` of `f`, and whether the walk closed.
    fn walk(&self, start: (FaceRef, usize), forward: bool) -> (usize, bool) {
        let mut cur = start;
        let mut count = 0;
        loop {
            let (f, k) = cur;
            let next = if forward {
                let Some(&(g, s)) = self.glue.get(&f) else { return (count, false) };
                let (h, j) = self.polys[g.poly].across(g.face, self.glued_side(f, s, k));
                (FaceRef::new(g.poly, h), j)
            } else {
                let (h, j) = self.polys[f.poly].across(f.face, k);
                let h = FaceRef::new(f.poly, h);
                let Some(&(g, s)) = self.glue.get(&h) else { return (count, false) };
                (g, self.glued_side(h, s, j))
            };
            count += 1;
            if next == start || count > 4 {
                return (count, next == start);
            }
            cur = next;
        }
    }

    fn consistent_at(&self, f: FaceRef) -> bool {
        (0..self.polys[f.poly].face(f.face).len()).all(|k| match self.walk((f, k), true) {
            (n, true) => n == 4,
            (a, false) => a + self.walk((f, k), false).0 < 4,
        })
    }

    fn extend(&mut self, free: &[FaceRef], rng: &mut ChaCha8Rng) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let Some(&f) = free.first() else { return true };
        let n = self.polys[f.poly].face(f.face).len();
        let mut options: Vec<(FaceRef, usize)> = free[1..]
            .iter()
            .filter(|g| self.polys[g.poly].face(g.face).len() == n)
            .flat_map(|&g| (0..n).map(move |s| (g, s)))
            .collect();
        options.shuffle(rng);
        for (g, s) in options {
            self.glue.insert(f, (g, s));
            self.glue.insert(g, (f, s));
            if self.consistent_at(f) && self.consistent_at(g) {
                let rest: Vec<FaceRef> = free.iter().copied().filter(|&x| x != f && x != g).collect();
                if self.extend(&rest, rng) {
                    return true;
                }
            }
            self.glue.remove(&f);
            self.glue.remove(&g);
        }
        false
    }
}

/// Connected gluings of octahedra and 4-antiprisms with every edge class of size four.
fn random_antiprism_gluing(rng: &mut ChaCha8Rng) -> Decomposition {
    let (oct, anti) = (shapes::octahedron(), shapes::antiprism(4));
    let choices = [vec![oct.clone(), oct.clone()], vec![anti.clone()], vec![anti.clone(), anti.clone()], vec![oct, anti]];
    loop {
        let polys = choices.choose(rng).unwrap().clone();
        let mut free: Vec<FaceRef> =
            polys.iter().enumerate().flat_map(|(i, p)| (0..p.num_faces()).map(move |f| FaceRef::new(i, f))).collect();
        free.shuffle(rng);
        let mut search = GluingSearch { polys: &polys, glue: HashMap::new(), budget: 20_000 };
        if !search.extend(&free, rng) {
            continue;
        }
        let pairings: Vec<FacePairing> = search
            .glue
            .iter()
            .filter(|(f, (g, _))| f < &g)
            .map(|(&f, &(g, s))| {
                let n = polys[f.poly].face(f.face).len();
                FacePairing { src: f, dst: g, corr: (0..n).map(|k| (s + n - k) % n).collect() }
            })
            .collect();
        let d = Decomposition::new(polys, pairings).expect("search builds a valid gluing");
        assert!(edge_cycle_check(&quotient_complex(&d).unwrap()).0);
        if components(&d) == 1 {
            return d;
        }
    }
}

fn random_augmented(rng: &mut ChaCha8Rng) -> Decomposition {
    let text = fixtures::AUG_MODELS.choose(rng).unwrap();
    let mut m = AugmentedLinkModel::from_json(text).unwrap();
    for p in &mut m.parity {
        *p = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
    }
    build_decomposition(&m).unwrap()
}

fn double_cover_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut sample: Vec<Decomposition> = (0..8).map(|_| random_augmented(&mut rng)).collect();
    sample.extend((0..12).map(|_| random_antiprism_gluing(&mut rng)));
    let (mut yes, mut no) = (0, 0);
    for (i, d) in sample.iter().enumerate() {
        let cover = checkered_double_cover(d).map_err(|e| e.to_string())?;
        let checkered = decomposition_checkering(d).is_some();
        let split = components(&cover) > 1;
        ensure(split == checkered, format!("fixture {i}: checkered {checkered}, cover split {split}"))?;
        let c = double_cover_checkering(d).map_err(|e| e.to_string())?;
        ensure(is_checkering(&cover, &c), format!("fixture {i}: cover not checkered"))?;
        if checkered {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, format!("sample lacks variety: {yes} checkered, {no} not"))?;
    Ok(format!("20 fixtures ({yes} checkered, {no} not); covers split exactly when checkered, always checkered"))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("light-cone and isometry suite", 1, light_cone_and_isometries),
        ("tiling constants", 1, tiling_constants),
        ("tables of canonical tilings", 30, tables),
        ("orbit census", 5, census),
        ("classification", 60, classification),
        ("crushtacean decomposition", 30, decompositions),
        ("Löbell symmetry", 30, lobell_symmetry),
        ("square complexes", 5, square_complexes),
        ("pathologies", 5, pathologies),
        ("augmented pipeline", 5, augmented_pipeline),
        ("cusp moduli", 1, cusp_moduli),
        ("double-cover law", 10, double_cover_law),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let slow = took > Duration::from_secs(*budget);
        let (verdict, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {budget} s budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {verdict} [{:.2} s] {name}: {detail}", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
