//! Tile-set file parsing, decomposition documents, and rendering.
//!
//! Tile-set format, one declaration per line:
//!
//! ```text
//! # comment
//! tile <name> N=<label>:<strength> E=... S=... W=...
//! seed <name> <x> <y>
//! ```
//!
//! The label `-` denotes the inert glue.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::decompose::{Classification, LinearSet, SemilinearDescription};
use crate::model::{
    pos, vec2, Assembly, Glue, Pos, Side, Tile, TileAssemblySystem, TileSet, TileType, Vec2, Window,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: seed references unknown tile `{name}`")]
    UnknownTile { line: usize, name: String },
    #[error("seed positions are not connected or not stably bound")]
    DisconnectedSeed,
    #[error("no tiles declared")]
    NoTiles,
    #[error("no seed declared")]
    NoSeed,
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn parse_glue(line: usize, side: &str, text: &str) -> Result<Glue, ParseError> {
    let rest = text
        .strip_prefix(side)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{side}=<label>:<strength>`")))?;
    let (label, strength) = rest
        .rsplit_once(':')
        .ok_or_else(|| syntax(line, format!("glue `{rest}` missing `:<strength>`")))?;
    let strength: u32 = strength
        .parse()
        .map_err(|_| syntax(line, format!("invalid glue strength `{strength}`")))?;
    if label == "-" {
        if strength != 0 {
            return Err(syntax(line, "the inert glue `-` must have strength 0"));
        }
        return Ok(Glue::inert());
    }
    if label.is_empty() {
        return Err(syntax(
            line,
            "empty glue label (use `-` for the inert glue)",
        ));
    }
    Ok(Glue::new(label, strength))
}

/// Parse the line-based tile-set format into a system with temperature 1.
pub fn parse_tileset(text: &str) -> Result<TileAssemblySystem, ParseError> {
    let mut set = TileSet::new();
    let mut seed_tiles: Vec<Tile> = Vec::new();
    let mut seen_positions: BTreeSet<Pos> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "tile" => {
                if fields.len() != 6 {
                    return Err(syntax(line, "expected `tile <name> N=.. E=.. S=.. W=..`"));
                }
                let ty = TileType {
                    name: fields[1].to_string(),
                    north: parse_glue(line, "N", fields[2])?,
                    east: parse_glue(line, "E", fields[3])?,
                    south: parse_glue(line, "S", fields[4])?,
                    west: parse_glue(line, "W", fields[5])?,
                };
                set.add(ty).map_err(|e| syntax(line, e.to_string()))?;
            }
            "seed" => {
                if fields.len() != 4 {
                    return Err(syntax(line, "expected `seed <name> <x> <y>`"));
                }
                let name = fields[1];
                let ty = set.lookup(name).ok_or_else(|| ParseError::UnknownTile {
                    line,
                    name: name.to_string(),
                })?;
                let x: i64 = fields[2]
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid x `{}`", fields[2])))?;
                let y: i64 = fields[3]
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid y `{}`", fields[3])))?;
                let p = pos(x, y);
                if !seen_positions.insert(p) {
                    return Err(syntax(line, format!("duplicate seed position {p}")));
                }
                seed_tiles.push(Tile { pos: p, ty });
            }
            other => {
                return Err(syntax(line, format!("unknown directive `{other}`")));
            }
        }
    }

    if set.is_empty() {
        return Err(ParseError::NoTiles);
    }
    if seed_tiles.is_empty() {
        return Err(ParseError::NoSeed);
    }
    let seed = Assembly::from_tiles(seed_tiles).map_err(|_| ParseError::DisconnectedSeed)?;
    TileAssemblySystem::new(set, seed).map_err(|_| ParseError::DisconnectedSeed)
}

/// Short content hash used in decomposition provenance.
pub fn fixture_hash(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::new();
    for b in &digest[..8] {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Provenance carried by a decomposition document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub window: Window,
    pub margin: i64,
    pub bound: i64,
    pub fixture_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionDocument {
    pub classification: ClassificationLine,
    pub sets: SemilinearDescription,
    pub provenance: Provenance,
}

/// The classification header, without witness evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationLine {
    Finite,
    SimplyPeriodic(Vec2),
    BiPeriodic(Vec2, Vec2),
    Aperiodic,
}

impl ClassificationLine {
    pub fn of(c: &Classification) -> ClassificationLine {
        match c {
            Classification::Finite { .. } => ClassificationLine::Finite,
            Classification::SimplyPeriodic { v, .. } => ClassificationLine::SimplyPeriodic(*v),
            Classification::BiPeriodic { u, v, .. } => ClassificationLine::BiPeriodic(*u, *v),
            Classification::Aperiodic { .. } => ClassificationLine::Aperiodic,
        }
    }
}

fn fmt_vec(v: Vec2) -> String {
    format!("({},{})", v.x, v.y)
}

fn parse_pair(line: usize, text: &str) -> Result<(i64, i64), ParseError> {
    let inner = text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(line, format!("expected `(x,y)`, got `{text}`")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| syntax(line, format!("expected `(x,y)`, got `{text}`")))?;
    let a = a
        .parse()
        .map_err(|_| syntax(line, format!("invalid integer `{a}`")))?;
    let b = b
        .parse()
        .map_err(|_| syntax(line, format!("invalid integer `{b}`")))?;
    Ok((a, b))
}

pub fn serialize_decomposition(doc: &DecompositionDocument) -> String {
    let mut out = String::new();
    match &doc.classification {
        ClassificationLine::Finite => out.push_str("class=FINITE\n"),
        ClassificationLine::SimplyPeriodic(v) => {
            let _ = writeln!(out, "class=SIMPLY_PERIODIC v={}", fmt_vec(*v));
        }
        ClassificationLine::BiPeriodic(u, v) => {
            let _ = writeln!(out, "class=BI_PERIODIC u={} v={}", fmt_vec(*u), fmt_vec(*v));
        }
        ClassificationLine::Aperiodic => out.push_str("class=APERIODIC\n"),
    }
    let _ = writeln!(
        out,
        "window={} margin={} center=({},{})",
        doc.provenance.window.radius,
        doc.provenance.margin,
        doc.provenance.window.center.x,
        doc.provenance.window.center.y
    );
    let _ = writeln!(out, "bound={}", doc.provenance.bound);
    let _ = writeln!(out, "fixture={}", doc.provenance.fixture_hash);
    for s in &doc.sets.sets {
        let _ = writeln!(
            out,
            "linear p=({},{}) u={} v={} type={}",
            s.base.x,
            s.base.y,
            fmt_vec(s.u),
            fmt_vec(s.v),
            s.tile_type
        );
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<DecompositionDocument, ParseError> {
    let mut classification = None;
    let mut window = None;
    let mut margin = 0i64;
    let mut bound = 0i64;
    let mut hash = String::new();
    let mut sets = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if let Some(rest) = fields[0].strip_prefix("class=") {
            classification = Some(match rest {
                "FINITE" => ClassificationLine::Finite,
                "APERIODIC" => ClassificationLine::Aperiodic,
                "SIMPLY_PERIODIC" => {
                    let v = fields
                        .get(1)
                        .and_then(|f| f.strip_prefix("v="))
                        .ok_or_else(|| syntax(line, "missing v=(x,y)"))?;
                    let (x, y) = parse_pair(line, v)?;
                    ClassificationLine::SimplyPeriodic(vec2(x, y))
                }
                "BI_PERIODIC" => {
                    let u = fields
                        .get(1)
                        .and_then(|f| f.strip_prefix("u="))
                        .ok_or_else(|| syntax(line, "missing u=(x,y)"))?;
                    let v = fields
                        .get(2)
                        .and_then(|f| f.strip_prefix("v="))
                        .ok_or_else(|| syntax(line, "missing v=(x,y)"))?;
                    let (ux, uy) = parse_pair(line, u)?;
                    let (vx, vy) = parse_pair(line, v)?;
                    ClassificationLine::BiPeriodic(vec2(ux, uy), vec2(vx, vy))
                }
                other => return Err(syntax(line, format!("unknown class `{other}`"))),
            });
        } else if let Some(rest) = fields[0].strip_prefix("window=") {
            let radius: i64 = rest
                .parse()
                .map_err(|_| syntax(line, format!("invalid radius `{rest}`")))?;
            let m = fields
                .get(1)
                .and_then(|f| f.strip_prefix("margin="))
                .ok_or_else(|| syntax(line, "missing margin=<m>"))?;
            margin = m
                .parse()
                .map_err(|_| syntax(line, format!("invalid margin `{m}`")))?;
            let c = fields
                .get(2)
                .and_then(|f| f.strip_prefix("center="))
                .ok_or_else(|| syntax(line, "missing center=(x,y)"))?;
            let (cx, cy) = parse_pair(line, c)?;
            window = Some(Window::new(pos(cx, cy), radius));
        } else if let Some(rest) = fields[0].strip_prefix("bound=") {
            bound = rest
                .parse()
                .map_err(|_| syntax(line, format!("invalid bound `{rest}`")))?;
        } else if let Some(rest) = fields[0].strip_prefix("fixture=") {
            hash = rest.to_string();
        } else if fields[0] == "linear" {
            if fields.len() != 5 {
                return Err(syntax(
                    line,
                    "expected `linear p=(..) u=(..) v=(..) type=..`",
                ));
            }
            let p = fields[1]
                .strip_prefix("p=")
                .ok_or_else(|| syntax(line, "missing p=(x,y)"))?;
            let u = fields[2]
                .strip_prefix("u=")
                .ok_or_else(|| syntax(line, "missing u=(x,y)"))?;
            let v = fields[3]
                .strip_prefix("v=")
                .ok_or_else(|| syntax(line, "missing v=(x,y)"))?;
            let ty = fields[4]
                .strip_prefix("type=")
                .ok_or_else(|| syntax(line, "missing type=<name>"))?;
            let (px, py) = parse_pair(line, p)?;
            let (ux, uy) = parse_pair(line, u)?;
            let (vx, vy) = parse_pair(line, v)?;
            sets.push(LinearSet {
                base: pos(px, py),
                u: vec2(ux, uy),
                v: vec2(vx, vy),
                tile_type: ty.to_string(),
            });
        } else {
            return Err(syntax(line, format!("unknown directive `{}`", fields[0])));
        }
    }

    let classification = classification.ok_or_else(|| syntax(0, "missing class line"))?;
    let window = window.ok_or_else(|| syntax(0, "missing window line"))?;
    Ok(DecompositionDocument {
        classification,
        sets: SemilinearDescription { sets },
        provenance: Provenance {
            window,
            margin,
            bound,
            fixture_hash: hash,
        },
    })
}

/// Render an assembly as ASCII art: first letter of the type name per tile,
/// '.' for empty positions.
pub fn render_ascii(set: &TileSet, a: &Assembly, w: Window) -> String {
    let mut out = String::new();
    let c = w.center;
    for y in (c.y - w.radius..=c.y + w.radius).rev() {
        for x in c.x - w.radius..=c.x + w.radius {
            match a.get(pos(x, y)) {
                Some(ty) => {
                    let ch = set.name(ty).chars().next().unwrap_or('?');
                    out.push(ch);
                }
                None => out.push('.'),
            }
        }
        out.push('\n');
    }
    out
}

fn type_color(name: &str) -> String {
    let mut h: u32 = 2166136261;
    for b in name.bytes() {
        h ^= b as u32;
        h = h.wrapping_mul(16777619);
    }
    let hue = h % 360;
    format!("hsl({hue},70%,65%)")
}

/// Render an assembly as SVG: one unit square per tile, colored by a hash of
/// the type name, with tick marks on strength >= 1 sides.
pub fn render_svg(set: &TileSet, a: &Assembly, w: Window) -> String {
    let c = w.center;
    let r = w.radius;
    let cell = 16i64;
    let size = (2 * r + 1) * cell;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
    );
    for t in a.iter() {
        if !w.contains(t.pos) {
            continue;
        }
        let ty = set.get(t.ty);
        let x = (t.pos.x - (c.x - r)) * cell;
        let y = (c.y + r - t.pos.y) * cell;
        let _ = writeln!(
            out,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{cell}\" height=\"{cell}\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.5\"><title>{}</title></rect>",
            type_color(&ty.name),
            ty.name
        );
        let mid = cell / 2;
        let tick = cell / 4;
        for side in [Side::North, Side::East, Side::South, Side::West] {
            if ty.glue(side).strength >= 1 {
                let (x1, y1, x2, y2) = match side {
                    Side::North => (x + mid, y, x + mid, y + tick),
                    Side::South => (x + mid, y + cell, x + mid, y + cell - tick),
                    Side::East => (x + cell, y + mid, x + cell - tick, y + mid),
                    Side::West => (x, y + mid, x + tick, y + mid),
                };
                let _ = writeln!(
                    out,
                    "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"1.5\"/>"
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{grow_to_terminal, Window};

    #[test]
    fn parse_line_fixture() {
        let t = parse_tileset("tile A N=-:0 E=g:1 S=-:0 W=g:1\nseed A 0 0\n").unwrap();
        assert_eq!(t.tile_set.len(), 1);
        assert_eq!(t.seed.len(), 1);
        assert_eq!(t.temperature, 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_tileset("tile A N=-:0 E=g:1 S=-:0 W=g:1\nseed B 0 0\n"),
            Err(ParseError::UnknownTile { .. })
        ));
        assert!(matches!(
            parse_tileset("tile A N=-:0 E=g:1 S=-:0 W=g:1\nseed A 0 0\nseed A 2 0\n"),
            Err(ParseError::DisconnectedSeed)
        ));
        assert!(matches!(
            parse_tileset("tile A N=-:0 E=g S=-:0 W=g:1\nseed A 0 0\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_tileset(""), Err(ParseError::NoTiles)));
    }

    #[test]
    fn parser_is_total_on_junk() {
        for junk in [
            "garbage",
            "tile",
            "tile A",
            "seed",
            "tile A N=:1 E=-:0 S=-:0 W=-:0",
            "tile A N=-:0 E=-:0 S=-:0 W=-:0\nseed A x y",
            "tile A N=-:9999999999999999999999 E=-:0 S=-:0 W=-:0",
        ] {
            assert!(parse_tileset(junk).is_err());
        }
    }

    #[test]
    fn ascii_render() {
        let t = parse_tileset("tile A N=-:0 E=g:1 S=-:0 W=g:1\nseed A 0 0\n").unwrap();
        let one = render_ascii(&t.tile_set, &t.seed, Window::centered(1));
        assert_eq!(one, "...\n.A.\n...\n");
        let g = grow_to_terminal(&t, Window::centered(3)).assembly;
        let row = render_ascii(&t.tile_set, &g, Window::centered(3));
        assert!(row.contains("AAAAAAA"));
    }

    #[test]
    fn decomposition_roundtrip() {
        let doc = DecompositionDocument {
            classification: ClassificationLine::SimplyPeriodic(vec2(1, 0)),
            sets: SemilinearDescription {
                sets: vec![
                    LinearSet {
                        base: pos(0, 0),
                        u: vec2(1, 0),
                        v: vec2(0, 0),
                        tile_type: "A".into(),
                    },
                    LinearSet {
                        base: pos(0, 0),
                        u: vec2(-1, 0),
                        v: vec2(0, 0),
                        tile_type: "A".into(),
                    },
                ],
            },
            provenance: Provenance {
                window: Window::centered(10),
                margin: 2,
                bound: 64,
                fixture_hash: fixture_hash("tile A ...\n"),
            },
        };
        let text = serialize_decomposition(&doc);
        let back = parse_decomposition(&text).unwrap();
        assert_eq!(doc, back);
    }
}
