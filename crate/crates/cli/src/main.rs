mod inputs;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use specialcheck::augmented::{
    build_decomposition, hidden_symmetries_check, model_checkering, scissors_class, symmetric_links_check, AugError,
};
use specialcheck::cellkit::{edge_cycle_check, quotient_complex};
use specialcheck::checkering::{
    checkered_double_cover, components, CheckerError, decomposition_checkering, double_cover_checkering, is_checkering, Color,
};
use specialcheck::hyperplanes::{hyperplanes, is_c_special, pathology_report, racg_nerve, HyperplaneError};
use specialcheck::lorentz::hull::klein_hull;
use specialcheck::lorentz::tiling::{spec_labeling, Certificate};
use specialcheck::lorentz::{
    breakpoint_check, build_dn_spec, discover_certificates, orbit_census, verify_generated_tiling, TilingSpec,
};
use specialcheck::polyhedra::crush::{decompose_crushtacean, full_decomposition, full_decomposition_exhaustive, piece_name};
use specialcheck::polyhedra::enumerate::{enumerate_crushtaceans_jobs, enumerate_rightangled_jobs, CatalogEntry};
use specialcheck::polyhedra::{andreev_validate, automorphism_group, lobell, lobell_generators, Automorphism};
use specialcheck::squares::{is_bipartite, is_npc, standard_square_complex};
use specialcheck::surfaces::{all_surfaces, hyperplane_surface_relations, surface_closure, FlatSurface};
use specialcheck::FaceRef;

use report::{exact, exact_opt, Format, Report};

#[derive(Parser)]
#[command(name = "specialcheck", version, about = "Checks for right-angled decompositions, square complexes and canonical tilings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polyhedral decompositions and their quotients.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Square complexes: the standard complex, link condition, bipartiteness.
    #[command(subcommand)]
    Squares(SquaresCmd),
    /// Hyperplanes, pathologies, specialness and the Coxeter nerve.
    #[command(subcommand)]
    Hyperplanes(HyperplanesCmd),
    /// Flat surfaces built from faces.
    #[command(subcommand)]
    Surfaces(SurfacesCmd),
    /// Face colorings compatible with the gluing.
    #[command(subcommand)]
    Checkering(CheckeringCmd),
    /// Polyhedra: Andreev conditions, catalogs, crushtaceans, Löbell polyhedra.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Augmented link models.
    #[command(subcommand)]
    Aug(AugCmd),
    /// Canonical tilings in the hyperboloid model.
    #[command(subcommand)]
    Tiling(TilingCmd),
}

#[derive(Args)]
struct Input {
    /// JSON input; bare fixture names are looked up in $SPECIALCHECK_FIXTURES.
    input: PathBuf,
}

#[derive(Args)]
struct InputOut {
    input: PathBuf,
    /// Write the built object here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Load and validate a decomposition.
    Build(InputOut),
    /// Cell classes of the quotient; passes when every edge class has four edges.
    Quotient(Input),
}

#[derive(Subcommand)]
enum SquaresCmd {
    /// Standard square complex of a decomposition.
    Build(InputOut),
    /// Link condition: every vertex link has girth at least four.
    Npc(Input),
    /// Bipartite one-skeleton.
    Bipartite(Input),
}

#[derive(Subcommand)]
enum HyperplanesCmd {
    List(Input),
    Pathologies(Input),
    Special(Input),
    Nerve(Input),
}

#[derive(Subcommand)]
enum SurfacesCmd {
    /// Surface closures of faces; all of them unless a face is given.
    Closure {
        input: PathBuf,
        #[arg(long, requires = "face")]
        poly: Option<usize>,
        #[arg(long, requires = "poly")]
        face: Option<usize>,
    },
    /// Crossings and external osculations of hyperplanes against their surfaces.
    Relations(Input),
}

#[derive(Subcommand)]
enum CheckeringCmd {
    Find(Input),
    DoubleCover(InputOut),
}

#[derive(Args)]
struct PolyInput {
    input: Option<PathBuf>,
    /// octahedron, cube, cuboctahedron, tetrahedron, prism:K, antiprism:K, lobell:N
    #[arg(long, conflicts_with = "input")]
    shape: Option<String>,
}

#[derive(Subcommand)]
enum PolyCmd {
    Andreev(PolyInput),
    Enumerate {
        #[arg(long, conflicts_with = "crushtaceans", required_unless_present = "crushtaceans")]
        rightangled: bool,
        #[arg(long)]
        crushtaceans: bool,
        #[arg(long)]
        vmax: usize,
        /// Only crushtaceans without prismatic 3-circuits.
        #[arg(long, requires = "crushtaceans")]
        indecomposable: bool,
    },
    #[command(subcommand)]
    Crush(CrushCmd),
    Lobell {
        #[arg(long)]
        n: usize,
    },
    Aut(PolyInput),
}

#[derive(Subcommand)]
enum CrushCmd {
    /// Split along one prismatic 3-circuit, or fully when none is given.
    Decompose {
        #[command(flatten)]
        poly: PolyInput,
        /// Three face indices, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        circuit: Option<Vec<usize>>,
        /// Try every split order and list the piece multisets reached.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand)]
enum AugCmd {
    Build(InputOut),
    Symmetric(Input),
    Scissors(Input),
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Above,
    Below,
}

#[derive(Subcommand)]
enum TilingCmd {
    /// Coplanarity and positive tilt across every certified face.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Merge at a breakpoint with strict signs on both sides; every tabulated one by default.
    Breakpoint {
        #[arg(long)]
        spec: PathBuf,
        /// Certificate label, such as P4.F3.
        #[arg(long)]
        face: Option<String>,
        #[arg(long, requires = "face")]
        beta: Option<String>,
        #[arg(long, value_enum, requires = "beta")]
        side: Option<Side>,
    },
    /// Orbit census of a tile and which same-orbit pairs are hull edges.
    Census {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        tile: String,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Build and verify the chain of n cuboctahedra between two octahedra.
    Dn {
        #[arg(long)]
        n: usize,
    },
    /// Search short words for neighbor certificates.
    Discover {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("specialcheck".to_string()).chain(std::env::args().skip(1)).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(echo);
    match run(&cli, &mut report) {
        Ok(()) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_out(path: &Option<PathBuf>, text: &str, report: &mut Report) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        report.add("written", p.display().to_string());
    }
    Ok(())
}

fn run(cli: &Cli, r: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Complex(c) => complex(c, r),
        Command::Squares(c) => squares(c, r),
        Command::Hyperplanes(c) => hyperplanes_cmd(c, r),
        Command::Surfaces(c) => surfaces(c, r),
        Command::Checkering(c) => checkering(c, r),
        Command::Poly(c) => poly(c, cli.jobs.max(1), r),
        Command::Aug(c) => aug(c, r),
        Command::Tiling(c) => tiling(c, r),
    }
}

fn complex(cmd: &ComplexCmd, r: &mut Report) -> Result<()> {
    match cmd {
        ComplexCmd::Build(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            r.add("polyhedra", d.polyhedra().len());
            r.add("faces", d.polyhedra().iter().map(|p| p.num_faces()).collect::<Vec<_>>());
            r.add("pairings", d.pairings().len());
            write_out(&a.out, &d.to_json(), r)?;
        }
        ComplexCmd::Quotient(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            let qc = quotient_complex(&d)?;
            let (ok, bad) = edge_cycle_check(&qc);
            r.verdict(ok);
            r.add("summary", qc.summary());
            if let Some(c) = bad {
                r.add("first_bad_edge_class", json!({ "class": c, "size": qc.edge_class_size(c) }));
            }
        }
    }
    Ok(())
}

fn squares(cmd: &SquaresCmd, r: &mut Report) -> Result<()> {
    match cmd {
        SquaresCmd::Build(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            let sc = standard_square_complex(&quotient_complex(&d)?);
            r.add("vertices", sc.num_vertices());
            r.add("edges", sc.num_edges());
            r.add("squares", sc.num_squares());
            r.add("euler_characteristic", sc.euler_characteristic());
            write_out(&a.out, &sc.to_json(), r)?;
        }
        SquaresCmd::Npc(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            let v = is_npc(&sc);
            r.verdict(v.npc);
            if let Some(w) = &v.witness {
                r.add("witness_vertex", w.vertex);
                r.add("witness_length", w.cycle.len());
                let arcs: Vec<String> = w
                    .cycle
                    .iter()
                    .map(|a| {
                        let [x, y] = a.ends;
                        format!("square {} corner {}: ({},{}) - ({},{})", a.square, a.corner, x.0, x.1, y.0, y.1)
                    })
                    .collect();
                r.add("witness_cycle", arcs);
            }
        }
        SquaresCmd::Bipartite(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            let v = is_bipartite(&sc);
            r.verdict(v.bipartite);
            if let Some([p, q]) = &v.parts {
                r.add("part_sizes", [p.len(), q.len()]);
            }
        }
    }
    Ok(())
}

fn hyperplanes_cmd(cmd: &HyperplanesCmd, r: &mut Report) -> Result<()> {
    match cmd {
        HyperplanesCmd::List(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            let hs = hyperplanes(&sc);
            r.add("count", hs.len());
            let lines: Vec<String> = hs
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    let sides = if h.two_sided { "two-sided" } else { "one-sided" };
                    format!("h{}: {} dual edges, {} midlines, {sides}", i + 1, h.dual_edges.len(), h.midlines.len())
                })
                .collect();
            r.add("hyperplanes", lines);
        }
        HyperplanesCmd::Pathologies(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            let p = pathology_report(&sc)?;
            r.verdict(p.is_empty());
            r.add("self_intersections", &p.self_intersections);
            r.add("one_sided", &p.one_sided);
            let selfo: Vec<String> = p
                .self_osculations
                .iter()
                .map(|o| {
                    let kind = if o.direct == Some(true) { "direct" } else { "indirect" };
                    format!("h{} at vertex {}: {kind}", o.hyperplanes[0] + 1, o.vertex)
                })
                .collect();
            r.add("self_osculations", selfo);
            let pairs = |xs: &[specialcheck::hyperplanes::InterOsculation]| -> Vec<String> {
                xs.iter()
                    .map(|io| {
                        let at: Vec<String> = io.witnesses.iter().map(|w| w.vertex.to_string()).collect();
                        format!("h{} h{} at vertices {}", io.hyperplanes[0] + 1, io.hyperplanes[1] + 1, at.join(","))
                    })
                    .collect()
            };
            r.add("inter_osculations", pairs(&p.inter_osculations));
            r.add("remote_self_osculations", p.remote_self_osculations.len());
            r.add("remote_inter_osculations", p.remote_inter_osculations.len());
        }
        HyperplanesCmd::Special(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            let v = is_c_special(&sc);
            r.verdict(v.special);
            r.add("bipartite", v.bipartite);
            r.add("simple", v.simple);
            if let Some(p) = &v.pathologies {
                r.add(
                    "pathology_counts",
                    json!({
                        "self_intersections": p.self_intersections.len(),
                        "one_sided": p.one_sided.len(),
                        "self_osculations": p.self_osculations.len(),
                        "inter_osculations": p.inter_osculations.len(),
                    }),
                );
            }
        }
        HyperplanesCmd::Nerve(a) => {
            let sc = inputs::square_complex(&a.input, r)?;
            match racg_nerve(&sc) {
                Ok(n) => {
                    r.verdict(true);
                    r.add("vertices", n.vertices);
                    r.add("edges", &n.edges);
                    r.add("presentation", &n.presentation);
                }
                Err(HyperplaneError::NotSpecial) => {
                    r.verdict(false);
                    r.add("reason", "complex is not C-special");
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn surface_line(s: &FlatSurface) -> String {
    let classes: Vec<String> = s.face_classes.iter().map(|c| c.to_string()).collect();
    format!(
        "classes [{}]: χ = {}, {} punctures, {}, {}, index {}",
        classes.join(","),
        s.euler_characteristic,
        s.punctures,
        if s.orientable { "orientable" } else { "nonorientable" },
        if s.two_sided { "two-sided" } else { "one-sided" },
        s.pi1_index
    )
}

fn surfaces(cmd: &SurfacesCmd, r: &mut Report) -> Result<()> {
    match cmd {
        SurfacesCmd::Closure { input, poly, face } => {
            let d = inputs::decomposition(input, r)?;
            let qc = quotient_complex(&d)?;
            let list = match (poly, face) {
                (Some(p), Some(f)) => {
                    if *p >= d.polyhedra().len() || *f >= d.polyhedra()[*p].num_faces() {
                        bail!("no face {f} on polyhedron {p}");
                    }
                    vec![surface_closure(&qc, FaceRef::new(*p, *f))?]
                }
                _ => all_surfaces(&qc)?,
            };
            r.add("count", list.len());
            r.add("surfaces", list.iter().map(surface_line).collect::<Vec<_>>());
        }
        SurfacesCmd::Relations(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            let qc = quotient_complex(&d)?;
            let sc = standard_square_complex(&qc);
            let rep = hyperplane_surface_relations(&sc, &qc)?;
            r.verdict(rep.violations.is_empty());
            r.add("crossings_checked", rep.crossings_checked);
            r.add("external_osculations_checked", rep.external_osculations_checked);
            r.add("violations", &rep.violations);
        }
    }
    Ok(())
}

fn color_string(colors: &[Color]) -> String {
    colors.iter().map(|c| if *c == Color::White { 'W' } else { 'B' }).collect()
}

fn checkering(cmd: &CheckeringCmd, r: &mut Report) -> Result<()> {
    match cmd {
        CheckeringCmd::Find(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            let c = decomposition_checkering(&d);
            r.verdict(c.is_some());
            if let Some(c) = c {
                let lines: Vec<String> =
                    c.colors.iter().enumerate().map(|(i, cs)| format!("P{i}: {}", color_string(cs))).collect();
                r.add("colors", lines);
            }
        }
        CheckeringCmd::DoubleCover(a) => {
            let d = inputs::decomposition(&a.input, r)?;
            let cover = match checkered_double_cover(&d) {
                Err(CheckerError::NoCheckering(p)) => {
                    r.verdict(false);
                    r.add("reason", format!("polyhedron {p} admits no face 2-coloring"));
                    return Ok(());
                }
                other => other?,
            };
            let c = double_cover_checkering(&d)?;
            let ok = is_checkering(&cover, &c);
            r.verdict(ok);
            r.add("base_checkered", decomposition_checkering(&d).is_some());
            r.add("base_components", components(&d));
            r.add("cover_polyhedra", cover.polyhedra().len());
            r.add("cover_components", components(&cover));
            write_out(&a.out, &cover.to_json(), r)?;
        }
    }
    Ok(())
}

fn catalog_line(e: &CatalogEntry) -> String {
    let fv: Vec<String> = e.face_vector.iter().map(|(k, n)| format!("{k}^{n}")).collect();
    format!("{} V={} E={} faces={} aut={}", e.code, e.vertices, e.edges, fv.join(","), e.aut_order)
}

fn group_summary(group: &[Automorphism], r: &mut Report) {
    r.add("order", group.len());
    r.add("orientation_preserving", group.iter().filter(|g| g.preserves_orientation).count());
}

fn poly(cmd: &PolyCmd, jobs: usize, r: &mut Report) -> Result<()> {
    match cmd {
        PolyCmd::Andreev(a) => {
            let p = inputs::polyhedron(a.input.as_deref(), a.shape.as_deref(), r)?;
            let rep = andreev_validate(&p);
            r.verdict(rep.pass);
            if let Some(f) = &rep.failure {
                r.add("failure", f);
            }
        }
        PolyCmd::Enumerate { rightangled, vmax, indecomposable, .. } => {
            if *vmax > 16 {
                bail!("--vmax above 16 is out of range");
            }
            let list = if *rightangled {
                enumerate_rightangled_jobs(*vmax, jobs)
            } else {
                enumerate_crushtaceans_jobs(*vmax, *indecomposable, jobs)
            };
            r.add("count", list.len());
            r.add("catalog", list.iter().map(catalog_line).collect::<Vec<_>>());
        }
        PolyCmd::Crush(CrushCmd::Decompose { poly, circuit, exhaustive }) => {
            let p = inputs::polyhedron(poly.input.as_deref(), poly.shape.as_deref(), r)?;
            if p.valences().values().any(|&d| d != 3) {
                bail!("not a crushtacean: some vertex is not 3-valent");
            }
            if let Some(c) = circuit {
                let (a, b) = decompose_crushtacean(&p, [c[0], c[1], c[2]])?;
                r.add("vertices", json!([p.num_vertices(), a.num_vertices(), b.num_vertices()]));
                r.add("pieces", [piece_name(&a), piece_name(&b)]);
            } else {
                let mut names: Vec<String> = full_decomposition(&p).iter().map(piece_name).collect();
                names.sort();
                r.add("pieces", names);
            }
            if *exhaustive {
                let all = full_decomposition_exhaustive(&p);
                r.add("order_independent", all.len() == 1);
                r.add("multisets", all.iter().map(|m| m.join(" + ")).collect::<Vec<_>>());
            }
        }
        PolyCmd::Lobell { n } => {
            let p = lobell(*n)?;
            r.add("vertices", p.num_vertices());
            group_summary(&automorphism_group(&p), r);
            let gens = lobell_generators(*n)?;
            r.verdict(gens.relations_hold(*n));
        }
        PolyCmd::Aut(a) => {
            let p = inputs::polyhedron(a.input.as_deref(), a.shape.as_deref(), r)?;
            let g = automorphism_group(&p);
            group_summary(&g, r);
            r.add("flag_transitive", g.len() == 4 * p.num_edges());
        }
    }
    Ok(())
}

fn aug(cmd: &AugCmd, r: &mut Report) -> Result<()> {
    match cmd {
        AugCmd::Build(a) => {
            let m = inputs::model(&a.input, r)?;
            let d = build_decomposition(&m)?;
            let qc = quotient_complex(&d)?;
            let right = edge_cycle_check(&qc).0;
            let checkered = is_checkering(&d, &model_checkering(&m));
            r.verdict(right && checkered);
            r.add("twist_regions", m.twist_regions());
            r.add("edge_classes_of_four", right);
            r.add("checkered", checkered);
            r.add("summary", qc.summary());
            write_out(&a.out, &d.to_json(), r)?;
        }
        AugCmd::Symmetric(a) => {
            let m = inputs::model(&a.input, r)?;
            r.verdict(symmetric_links_check(&m));
            r.add("hidden_symmetries", hidden_symmetries_check(&m));
        }
        AugCmd::Scissors(a) => {
            let m = inputs::model(&a.input, r)?;
            match scissors_class(&m) {
                Ok(class) => {
                    r.verdict(true);
                    let lines: Vec<String> = class.iter().map(|(k, n)| format!("{k} x{n}")).collect();
                    r.add("class", lines);
                }
                Err(AugError::UnknownPiece(names)) => {
                    r.verdict(false);
                    r.add("pieces", names);
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn beta_of(spec: &TilingSpec, beta: &Option<String>) -> Result<specialcheck::QuadExt> {
    Ok(match beta {
        Some(b) => spec.parse_beta(b).with_context(|| format!("bad β literal {b}"))?,
        None => spec.default_beta()?,
    })
}

fn tiling(cmd: &TilingCmd, r: &mut Report) -> Result<()> {
    match cmd {
        TilingCmd::Verify { spec, beta } => {
            let s = inputs::tiling(spec, r)?;
            let b = beta_of(&s, beta)?;
            let rep = verify_generated_tiling(&s, &b)?;
            r.verdict(rep.pass);
            r.add("beta", exact(&b));
            let tiles: Vec<String> = rep
                .tiles
                .iter()
                .map(|t| match &t.normal {
                    Some(n) => {
                        let coords: Vec<String> = n.n.iter().map(|x| x.to_string()).collect();
                        format!("{}: normal ({}), {} faces", t.name, coords.join(", "), t.faces.len())
                    }
                    None => format!("{}: not coplanar", t.name),
                })
                .collect();
            r.add("tiles", tiles);
            let certs: Vec<String> = rep
                .certificates
                .iter()
                .map(|c| {
                    let min = c.tilts.iter().min_by(|a, b| a.partial_cmp(b).unwrap());
                    let shown = min.map(|m| format!("{m} (≈{:.6})", m.to_f64())).unwrap_or_else(|| "none".into());
                    format!("{}: {} min tilt {shown}", c.label, if c.pass { "pass" } else { "fail" })
                })
                .collect();
            r.add("certificates", certs);
            r.add("uncovered", &rep.uncovered);
        }
        TilingCmd::Breakpoint { spec, face, beta, side } => {
            let s = inputs::tiling(spec, r)?;
            let jobs: Vec<(String, String, bool)> = match (face, beta) {
                (Some(f), Some(b)) => {
                    let above = match side {
                        Some(sd) => matches!(sd, Side::Above),
                        None => {
                            let b0 = s.parse_beta(b)?;
                            let listed = s.breakpoints.iter().find(|bp| {
                                &bp.certificate == f && s.parse_beta(&bp.beta).is_ok_and(|x| x == b0)
                            });
                            listed.is_none_or(|bp| bp.side == "above")
                        }
                    };
                    vec![(f.clone(), b.clone(), above)]
                }
                _ => s
                    .breakpoints
                    .iter()
                    .filter(|bp| face.as_ref().is_none_or(|f| &bp.certificate == f))
                    .map(|bp| (bp.certificate.clone(), bp.beta.clone(), bp.side == "above"))
                    .collect(),
            };
            if jobs.is_empty() {
                bail!("no breakpoint to check; give --face and --beta");
            }
            let mut all = true;
            let mut lines = Vec::new();
            for (label, b, above) in jobs {
                let b0 = s.parse_beta(&b).with_context(|| format!("bad β literal {b}"))?;
                let rep = breakpoint_check(&s, &label, &b0, above)?;
                all &= rep.pass;
                lines.push(json!({
                    "certificate": label,
                    "beta": exact(&b0),
                    "side": if above { "above" } else { "below" },
                    "tilt_at": exact(&rep.tilt_at),
                    "merged_coplanar": rep.merged_coplanar,
                    "tilt_above": exact_opt(&rep.tilt_above),
                    "tilt_below": exact_opt(&rep.tilt_below),
                    "pass": rep.pass,
                }));
            }
            r.verdict(all);
            r.add("checks", lines);
        }
        TilingCmd::Census { spec, tile, beta } => {
            let s = inputs::tiling(spec, r)?;
            let idx = s.tiles.iter().position(|t| &t.name == tile).with_context(|| format!("no tile {tile}"))?;
            let names = &s.tiles[idx].vertices;
            let labels = spec_labeling(&s);
            let census = orbit_census(names, &labels)?;
            r.add("census", &census);
            let real = s.realize(&beta_of(&s, beta)?)?;
            let hull = klein_hull(&real.tiles[idx])?;
            let mut pairs: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    if labels[&names[i]] == labels[&names[j]] {
                        let joined = if hull.has_edge(i, j) { "edge" } else { "no edge" };
                        pairs
                            .entry(format!("orbit {}", labels[&names[i]]))
                            .or_default()
                            .push(format!("{} {}: {joined}", names[i], names[j]));
                    }
                }
            }
            r.add("same_orbit_pairs", pairs);
        }
        TilingCmd::Dn { n } => {
            let s = build_dn_spec(*n)?;
            let rep = verify_generated_tiling(&s, &specialcheck::QuadExt::one().with_field(s.d))?;
            r.verdict(rep.pass);
            r.add("tiles", s.tiles.len());
            r.add("certificates", s.certificates.len());
            r.add("uncovered", rep.uncovered.len());
        }
        TilingCmd::Discover { spec, beta, radius, out } => {
            let mut s = inputs::tiling(spec, r)?;
            let b = beta_of(&s, beta)?;
            let certs: Vec<Certificate> = discover_certificates(&s, &b, *radius)?;
            r.add("beta", exact(&b));
            r.add("found", certs.len());
            r.add("certificates", certs.iter().map(|c| format!("{}: {}", c.label, c.word.join(" "))).collect::<Vec<_>>());
            s.certificates = certs;
            let rep = verify_generated_tiling(&s, &b)?;
            r.verdict(rep.pass);
            write_out(out, &s.to_json(), r)?;
        }
    }
    Ok(())
}
