//! Paths of tiles, binding paths, and path/assembly relations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::model::{
    interacts, Assembly, Growth, Pos, Tile, TileAssemblySystem, TileSet, Vec2, Window,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path is empty")]
    Empty,
    #[error("tiles at indices {0} and {1} do not interact")]
    NotInteracting(usize, usize),
    #[error("position {0} repeats")]
    Repeated(Pos),
    #[error("tile is not adjacent to the path head")]
    InvalidStep,
    #[error("path touches the window margin")]
    WindowTooSmall,
    #[error("positions {0} and {1} are in different binding components")]
    NoPath(Pos, Pos),
    #[error("prefix too short")]
    PrefixTooShort,
}

/// A simple sequence of tiles in which consecutive tiles interact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    tiles: Vec<Tile>,
}

impl Path {
    pub fn new(set: &TileSet, tiles: Vec<Tile>) -> Result<Path, PathError> {
        if tiles.is_empty() {
            return Err(PathError::Empty);
        }
        let mut seen = BTreeSet::new();
        for (i, t) in tiles.iter().enumerate() {
            if !seen.insert(t.pos) {
                return Err(PathError::Repeated(t.pos));
            }
            if i + 1 < tiles.len() && !interacts(set, *t, tiles[i + 1]) {
                return Err(PathError::NotInteracting(i, i + 1));
            }
        }
        Ok(Path { tiles })
    }

    /// For callers that already hold a valid tile chain (growth spanning
    /// trees, pumped blocks). Interaction is not re-checked.
    pub fn from_tiles_unchecked(tiles: Vec<Tile>) -> Path {
        assert!(!tiles.is_empty());
        Path { tiles }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> Tile {
        self.tiles[i]
    }

    pub fn first(&self) -> Tile {
        self.tiles[0]
    }

    pub fn last(&self) -> Tile {
        *self.tiles.last().unwrap()
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn iter(&self) -> impl Iterator<Item = Tile> + '_ {
        self.tiles.iter().copied()
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.iter().map(|t| t.pos)
    }

    /// Subpath between indices i and j inclusive.
    pub fn sub(&self, i: usize, j: usize) -> Path {
        assert!(i <= j && j < self.tiles.len());
        Path {
            tiles: self.tiles[i..=j].to_vec(),
        }
    }

    pub fn prefix(&self, j: usize) -> Path {
        self.sub(0, j)
    }

    pub fn suffix(&self, i: usize) -> Path {
        self.sub(i, self.tiles.len() - 1)
    }

    pub fn reverse(&self) -> Path {
        Path {
            tiles: self.tiles.iter().rev().copied().collect(),
        }
    }

    pub fn translate(&self, v: Vec2) -> Path {
        Path {
            tiles: self
                .tiles
                .iter()
                .map(|t| Tile {
                    pos: t.pos.offset(v),
                    ty: t.ty,
                })
                .collect(),
        }
    }

    /// Concatenation; valid iff the last tile of self interacts with the
    /// first of other and position sets are disjoint.
    pub fn concat(&self, set: &TileSet, other: &Path) -> Result<Path, PathError> {
        let mut tiles = self.tiles.clone();
        tiles.extend(other.tiles.iter().copied());
        Path::new(set, tiles)
    }
}

/// The assembly {pos(P_i) -> type(P_i)}.
pub fn path_assembly(p: &Path) -> Assembly {
    Assembly::from_tiles(p.iter()).expect("a valid path is a connected assembly")
}

/// (vertical height, horizontal width) over all index pairs.
pub fn extents(p: &Path) -> (i64, i64) {
    let min_x = p.positions().map(|q| q.x).min().unwrap();
    let max_x = p.positions().map(|q| q.x).max().unwrap();
    let min_y = p.positions().map(|q| q.y).min().unwrap();
    let max_y = p.positions().map(|q| q.y).max().unwrap();
    (max_y - min_y, max_x - min_x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    ProducibleFromSeed,
    PathOfAlpha,
    Neither,
}

/// Classify a path against a window-terminal growth.
///
/// ProducibleFromSeed: avoids the seed, starts interacting with it, and each
/// tile binds its predecessor (so sigma union the path grows in path order).
/// PathOfAlpha: every tile agrees with the window-terminal assembly.
pub fn classify_path(
    t: &TileAssemblySystem,
    p: &Path,
    w: Window,
    margin: i64,
    terminal: &Assembly,
) -> Result<PathClass, PathError> {
    let inner = w.inner(margin);
    if !p.positions().all(|q| inner.contains(q)) {
        return Err(PathError::WindowTooSmall);
    }
    let avoids_seed = p.positions().all(|q| !t.seed.contains(q));
    if avoids_seed {
        let starts_on_seed = t.seed.iter().any(|s| interacts(&t.tile_set, s, p.first()));
        if starts_on_seed {
            // Each subsequent tile interacts with its predecessor by path
            // validity, so sigma ∪ P grows in path order.
            return Ok(PathClass::ProducibleFromSeed);
        }
    }
    let of_alpha = p.iter().all(|tl| terminal.get(tl.pos) == Some(tl.ty));
    if of_alpha {
        return Ok(PathClass::PathOfAlpha);
    }
    Ok(PathClass::Neither)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
    Straight,
}

/// Which way does the step to `next` turn, relative to the step to
/// `reference`, after the end of `prefix`?
///
/// Uses the clockwise rotation rho = [[0,1],[-1,0]] and the ordered triple
/// (rho d, rho^2 d, rho^3 d) where d points from the path head back to its
/// predecessor.
pub fn turn_direction(prefix: &Path, next: Tile, reference: Tile) -> Result<Turn, PathError> {
    if prefix.len() < 2 {
        return Err(PathError::PrefixTooShort);
    }
    let head = prefix.last();
    let back = prefix.get(prefix.len() - 2);
    let d = head.pos.to(back.pos);
    let candidates = [
        d.rot_cw(),
        d.rot_cw().rot_cw(),
        d.rot_cw().rot_cw().rot_cw(),
    ];
    let slot = |v: Vec2| candidates.iter().position(|&c| c == v);
    let a = slot(head.pos.to(next.pos)).ok_or(PathError::InvalidStep)?;
    let b = slot(head.pos.to(reference.pos)).ok_or(PathError::InvalidStep)?;
    Ok(match a.cmp(&b) {
        std::cmp::Ordering::Less => Turn::Left,
        std::cmp::Ordering::Equal => Turn::Straight,
        std::cmp::Ordering::Greater => Turn::Right,
    })
}

/// Lexicographically-least shortest binding path between two positions of a
/// fragment, lifted to tiles.
pub fn find_connecting_path(
    set: &TileSet,
    fragment: &Assembly,
    a: Pos,
    b: Pos,
) -> Result<Path, PathError> {
    assert!(fragment.contains(a) && fragment.contains(b));
    // BFS from a in the binding graph; parents chosen lexicographically.
    let mut dist: BTreeMap<Pos, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(a, 0);
    queue.push_back(a);
    while let Some(p) = queue.pop_front() {
        if p == b {
            break;
        }
        let d = dist[&p];
        let ty = fragment.get(p).unwrap();
        for n in p.neighbors() {
            if dist.contains_key(&n) {
                continue;
            }
            if let Some(nty) = fragment.get(n) {
                if set.interacts(p, ty, n, nty) {
                    dist.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
    }
    if !dist.contains_key(&b) {
        return Err(PathError::NoPath(a, b));
    }
    // Walk back choosing the lexicographically least predecessor.
    let mut rev = vec![b];
    let mut cur = b;
    while cur != a {
        let d = dist[&cur];
        let ty = fragment.get(cur).unwrap();
        let mut preds: Vec<Pos> = cur
            .neighbors()
            .into_iter()
            .filter(|&n| {
                dist.get(&n) == Some(&(d - 1))
                    && fragment
                        .get(n)
                        .is_some_and(|nty| set.interacts(cur, ty, n, nty))
            })
            .collect();
        preds.sort_by_key(|p| p.yx());
        cur = preds[0];
        rev.push(cur);
    }
    rev.reverse();
    let tiles = rev
        .into_iter()
        .map(|p| Tile {
            pos: p,
            ty: fragment.get(p).unwrap(),
        })
        .collect();
    Path::new(set, tiles)
}

/// Some(i) iff q and p intersect exactly once, at pos(q_0) = pos(p_i), with
/// agreeing types.
pub fn grows_on(q: &Path, p: &Path) -> Option<usize> {
    let p_pos: BTreeMap<Pos, usize> = p.positions().enumerate().map(|(i, x)| (x, i)).collect();
    let mut hits: Vec<(usize, usize)> = Vec::new();
    for (k, t) in q.iter().enumerate() {
        if let Some(&i) = p_pos.get(&t.pos) {
            hits.push((k, i));
        }
    }
    match hits.as_slice() {
        [(0, i)] if q.first().ty == p.get(*i).ty => Some(*i),
        _ => None,
    }
}

/// An arc of `p`: a candidate intersecting `p` exactly twice, in agreement,
/// at its two extremities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub arc: Path,
    pub i: usize,
    pub j: usize,
    pub width: usize,
}

pub fn find_arcs(p: &Path, candidates: &[Path]) -> Vec<Arc> {
    let p_pos: BTreeMap<Pos, usize> = p.positions().enumerate().map(|(i, x)| (x, i)).collect();
    let mut out = Vec::new();
    for q in candidates {
        let mut hits: Vec<(usize, usize)> = Vec::new();
        for (k, t) in q.iter().enumerate() {
            if let Some(&i) = p_pos.get(&t.pos) {
                hits.push((k, i));
            }
        }
        if hits.len() != 2 {
            continue;
        }
        let (k0, i) = hits[0];
        let (k1, j) = hits[1];
        if k0 != 0 || k1 != q.len() - 1 {
            continue;
        }
        if q.first().ty != p.get(i).ty || q.last().ty != p.get(j).ty {
            continue;
        }
        if q.len() == 2 && (j == i + 1 || j + 1 == i) {
            continue;
        }
        out.push(Arc {
            arc: q.clone(),
            i,
            j,
            width: i.abs_diff(j),
        });
    }
    out
}

/// The attachment-order path from the seed to `target` in a growth's
/// spanning tree. The first tile binds the seed; every tile binds its
/// predecessor in the tree.
pub fn tree_path_to(growth: &Growth, seed: &Assembly, set: &TileSet, target: Pos) -> Option<Path> {
    if seed.contains(target) || !growth.assembly.contains(target) {
        return None;
    }
    let mut rev = Vec::new();
    let mut cur = target;
    loop {
        rev.push(Tile {
            pos: cur,
            ty: growth.assembly.get(cur)?,
        });
        let parent = *growth.parents.get(&cur)?;
        if seed.contains(parent) {
            break;
        }
        cur = parent;
    }
    rev.reverse();
    Path::new(set, rev).ok()
}
