//! Simulation and analysis of directed temperature-1 tile assembly systems:
//! window-bounded growth, directedness checking, pumpable-path search, and
//! finite semilinear descriptions of infinite terminal assemblies.

pub mod decompose;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod model;
pub mod path;
pub mod pumping;

pub use model::{Assembly, Pos, Tile, TileAssemblySystem, TileSet, TileType, Vec2, Window};
