use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use specialcheck::cellkit::Decomposition;
use specialcheck::fixtures;
use specialcheck::polyhedra::{lobell, shapes};
use specialcheck::squares::{standard_square_complex, SquareComplex};
use specialcheck::{AugmentedLinkModel, Polyhedron, TilingSpec};

use crate::report::Report;

const FIXTURE_DIRS: [&str; 4] = ["complex", "squares", "augmented", "tiling"];

fn bundled(name: &str) -> Option<&'static str> {
    let table = [
        ("whitehead.json", fixtures::WHITEHEAD_JSON),
        ("figure_eight.json", fixtures::FIGURE_EIGHT_JSON),
        ("unpaired.json", fixtures::UNPAIRED_JSON),
        ("torus1x1.json", fixtures::TORUS_1X1_JSON),
        ("torus2x2.json", fixtures::TORUS_2X2_JSON),
        ("klein.json", fixtures::KLEIN_JSON),
        ("badcorner.json", fixtures::BADCORNER_JSON),
        ("single_square.json", fixtures::SINGLE_SQUARE_JSON),
        ("tetra.json", fixtures::AUG_TETRA_JSON),
        ("tetra_odd.json", fixtures::AUG_TETRA_ODD_JSON),
        ("cube.json", fixtures::AUG_CUBE_JSON),
        ("tetra_cube.json", fixtures::AUG_TETRA_CUBE_JSON),
        ("prism6_left.json", fixtures::AUG_PRISM6_LEFT_JSON),
        ("prism6_right.json", fixtures::AUG_PRISM6_RIGHT_JSON),
    ];
    if let Some((_, text)) = table.iter().find(|(n, _)| *n == name) {
        return Some(text);
    }
    // tiling fixtures answer to both t01.json and t1.json
    let k: usize = name.strip_prefix('t')?.strip_suffix(".json")?.parse().ok()?;
    (1..=21).contains(&k).then(|| fixtures::TILING_JSON[k - 1])
}

/// Read `path` as given, else under `$SPECIALCHECK_FIXTURES` (directly or in one of its
/// fixture folders), else from the copies compiled into the library.
pub fn read_input(path: &Path, report: &mut Report) -> Result<String> {
    let text = locate(path)?;
    report.input(text.as_bytes());
    Ok(text)
}

fn locate(path: &Path) -> Result<String> {
    if path.exists() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()));
    }
    if let Some(root) = std::env::var_os("SPECIALCHECK_FIXTURES") {
        let root = PathBuf::from(root);
        let candidates = std::iter::once(root.join(path)).chain(FIXTURE_DIRS.iter().map(|d| root.join(d).join(path)));
        for c in candidates {
            if c.exists() {
                return std::fs::read_to_string(&c).with_context(|| format!("reading {}", c.display()));
            }
        }
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    bundled(name).map(str::to_string).ok_or_else(|| anyhow!("no such input: {}", path.display()))
}

pub fn decomposition(path: &Path, report: &mut Report) -> Result<Decomposition> {
    let text = read_input(path, report)?;
    Decomposition::from_json(&text).with_context(|| format!("{} is not a decomposition", path.display()))
}

/// A square complex file, or the standard complex of a decomposition file.
pub fn square_complex(path: &Path, report: &mut Report) -> Result<SquareComplex> {
    let text = read_input(path, report)?;
    let value: serde_json::Value = serde_json::from_str(&text).context("input is not JSON")?;
    if value.get("polyhedra").is_some() {
        let d = Decomposition::from_json(&text)?;
        let qc = specialcheck::cellkit::quotient_complex(&d)?;
        report.add("source", "standard square complex of the decomposition");
        Ok(standard_square_complex(&qc))
    } else {
        Ok(SquareComplex::from_json(&text)?)
    }
}

pub fn model(path: &Path, report: &mut Report) -> Result<AugmentedLinkModel> {
    let text = read_input(path, report)?;
    Ok(AugmentedLinkModel::from_json(&text)?)
}

pub fn tiling(path: &Path, report: &mut Report) -> Result<TilingSpec> {
    let text = read_input(path, report)?;
    Ok(TilingSpec::from_json(&text)?)
}

/// Named shapes: `octahedron`, `cube`, `cuboctahedron`, `tetrahedron`, `prism:K`,
/// `antiprism:K`, `lobell:N`.
pub fn shape(name: &str) -> Result<Polyhedron> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a.parse::<usize>().with_context(|| format!("bad size in {name}"))?)),
        None => (name, None),
    };
    let need = |a: Option<usize>| a.ok_or_else(|| anyhow!("{base} needs a size, e.g. {base}:5"));
    Ok(match base {
        "tetrahedron" => shapes::tetrahedron(),
        "octahedron" => shapes::octahedron(),
        "cube" => shapes::cube(),
        "cuboctahedron" => shapes::cuboctahedron(),
        "prism" => {
            let k = need(arg)?;
            if k < 3 {
                bail!("prism needs at least 3 sides");
            }
            shapes::prism(k)
        }
        "antiprism" => {
            let k = need(arg)?;
            if k < 3 {
                bail!("antiprism needs at least 3 sides");
            }
            shapes::antiprism(k)
        }
        "lobell" => lobell(need(arg)?)?,
        _ => bail!("unknown shape {name}"),
    })
}

/// A polyhedron from `--shape` or from a JSON file with a `faces` list.
pub fn polyhedron(path: Option<&Path>, shape_name: Option<&str>, report: &mut Report) -> Result<Polyhedron> {
    match (path, shape_name) {
        (_, Some(s)) => {
            report.add("shape", s);
            shape(s)
        }
        (Some(p), None) => {
            let text = read_input(p, report)?;
            let value: serde_json::Value = serde_json::from_str(&text).context("input is not JSON")?;
            // accept a bare polyhedron or an augmented model's crushtacean
            let inner = value.get("crushtacean").cloned().unwrap_or(value);
            Ok(serde_json::from_value(inner)?)
        }
        (None, None) => bail!("give a polyhedron file or --shape"),
    }
}
