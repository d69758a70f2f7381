//! Golden outputs for the built-in fixtures: simulation renders,
//! classification lines, and decomposition documents are byte-stable.
//!
//! Regenerate with `GOLDEN_WRITE=1 cargo test --test golden`.

use std::fs;
use std::path::PathBuf;

use noncoop::decompose::{decompose, to_semilinear, Classification};
use noncoop::io::{
    fixture_hash, render_ascii, serialize_decomposition, ClassificationLine, DecompositionDocument,
    Provenance,
};
use noncoop::model::{grow_to_terminal, Window};
use noncoop::{fixtures, TileAssemblySystem};

fn summary(c: &Classification) -> String {
    match c {
        Classification::Finite { tiles } => format!("FINITE tiles={tiles}"),
        Classification::SimplyPeriodic { v, .. } => {
            format!("SIMPLY_PERIODIC v=({},{})", v.x, v.y)
        }
        Classification::BiPeriodic { u, v, .. } => {
            format!("BI_PERIODIC u=({},{}) v=({},{})", u.x, u.y, v.x, v.y)
        }
        Classification::Aperiodic { .. } => "APERIODIC".to_string(),
    }
}

fn golden_output(
    name: &str,
    text: &str,
    t: &TileAssemblySystem,
    radius: i64,
    margin: i64,
    ascii_radius: i64,
) -> String {
    let w = Window::centered(radius);
    let growth = grow_to_terminal(t, w);
    let (class, ca) = decompose(t, w, margin, 64).unwrap();
    let sd = to_semilinear(&ca, &t.tile_set).unwrap();
    let doc = DecompositionDocument {
        classification: ClassificationLine::of(&class),
        sets: sd,
        provenance: Provenance {
            window: w,
            margin,
            bound: 64,
            fixture_hash: fixture_hash(text),
        },
    };
    let mut out = String::new();
    out.push_str(&format!("# {name}\n"));
    out.push_str(&format!("simulate tiles={}\n", growth.assembly.len()));
    out.push_str(&render_ascii(
        &t.tile_set,
        &growth.assembly,
        Window::centered(ascii_radius),
    ));
    out.push_str(&format!("classify {}\n", summary(&class)));
    out.push_str(&format!("complexity {}\n", ca.complexity()));
    out.push_str(&serialize_decomposition(&doc));
    out
}

fn check(name: &str, produced: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    if std::env::var("GOLDEN_WRITE").is_ok() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, produced).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(produced, expected, "golden mismatch for {name}");
}

#[test]
fn golden_line() {
    let a = golden_output("line", fixtures::LINE, &fixtures::line(), 10, 2, 5);
    let b = golden_output("line", fixtures::LINE, &fixtures::line(), 10, 2, 5);
    assert_eq!(a, b);
    check("line", &a);
}

#[test]
fn golden_grid() {
    let a = golden_output("grid", fixtures::GRID, &fixtures::grid(), 8, 2, 3);
    let b = golden_output("grid", fixtures::GRID, &fixtures::grid(), 8, 2, 3);
    assert_eq!(a, b);
    check("grid", &a);
}

#[test]
fn golden_comb() {
    let a = golden_output("comb", fixtures::COMB, &fixtures::comb(), 12, 3, 5);
    let b = golden_output("comb", fixtures::COMB, &fixtures::comb(), 12, 3, 5);
    assert_eq!(a, b);
    check("comb", &a);
}

#[test]
fn golden_cycle() {
    let a = golden_output("cycle", fixtures::CYCLE, &fixtures::cycle(), 20, 5, 9);
    let b = golden_output("cycle", fixtures::CYCLE, &fixtures::cycle(), 20, 5, 9);
    assert_eq!(a, b);
    check("cycle", &a);
}

#[test]
fn golden_fan() {
    let a = golden_output("fan", fixtures::FAN, &fixtures::fan(), 25, 6, 14);
    let b = golden_output("fan", fixtures::FAN, &fixtures::fan(), 25, 6, 14);
    assert_eq!(a, b);
    check("fan", &a);
}
