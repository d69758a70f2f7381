//! Built-in example systems, also shipped as files under `fixtures/`.

use crate::io::parse_tileset;
use crate::model::TileAssemblySystem;

pub const LINE: &str = include_str!("../fixtures/line.tiles");
pub const GRID: &str = include_str!("../fixtures/grid.tiles");
pub const COMB: &str = include_str!("../fixtures/comb.tiles");
pub const CHECKERBOARD: &str = include_str!("../fixtures/checkerboard.tiles");
pub const TWO_ROWS: &str = include_str!("../fixtures/two_rows.tiles");
pub const CYCLE: &str = include_str!("../fixtures/cycle.tiles");
pub const CYCLE_REDUCED: &str = include_str!("../fixtures/cycle_reduced.tiles");
pub const FAN: &str = include_str!("../fixtures/fan.tiles");

fn load(text: &str) -> TileAssemblySystem {
    parse_tileset(text).expect("built-in fixture parses")
}

/// One tile type extending east and west.
pub fn line() -> TileAssemblySystem {
    load(LINE)
}

/// One tile type with the same glue on all four sides.
pub fn grid() -> TileAssemblySystem {
    load(GRID)
}

/// Horizontal backbone with one-way tooth columns.
pub fn comb() -> TileAssemblySystem {
    load(COMB)
}

/// Two tile types alternating east-west, uniform vertically.
pub fn checkerboard() -> TileAssemblySystem {
    load(CHECKERBOARD)
}

/// Two parallel periodic rows joined by a rung at every column.
pub fn two_rows() -> TileAssemblySystem {
    load(TWO_ROWS)
}

/// L-shaped seed, two one-way periodic paths, one link closing a cycle.
pub fn cycle() -> TileAssemblySystem {
    load(CYCLE)
}

/// The cycle system with its seed reduced to the corner tile.
pub fn cycle_reduced() -> TileAssemblySystem {
    load(CYCLE_REDUCED)
}

/// Aperiodic system with nested one-way periodic combs.
pub fn fan() -> TileAssemblySystem {
    load(FAN)
}
