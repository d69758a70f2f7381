//! Tile types, glues, assemblies and single-tile growth at temperature 1.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// A lattice position in Z^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub x: i64,
    pub y: i64,
}

/// A translation vector in Z^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

pub const fn pos(x: i64, y: i64) -> Pos {
    Pos { x, y }
}

pub const fn vec2(x: i64, y: i64) -> Vec2 {
    Vec2 { x, y }
}

impl Pos {
    pub fn offset(self, v: Vec2) -> Pos {
        pos(self.x + v.x, self.y + v.y)
    }

    /// Vector from `self` to `other`.
    pub fn to(self, other: Pos) -> Vec2 {
        vec2(other.x - self.x, other.y - self.y)
    }

    pub fn neighbors(self) -> [Pos; 4] {
        [
            pos(self.x, self.y + 1),
            pos(self.x + 1, self.y),
            pos(self.x, self.y - 1),
            pos(self.x - 1, self.y),
        ]
    }

    pub fn linf(self, other: Pos) -> i64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    /// Sort key used for canonical attachment order: (y, x).
    pub fn yx(self) -> (i64, i64) {
        (self.y, self.x)
    }
}

impl Vec2 {
    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn scale(self, k: i64) -> Vec2 {
        vec2(self.x * k, self.y * k)
    }

    pub fn cross(self, other: Vec2) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    pub fn collinear(self, other: Vec2) -> bool {
        self.cross(other) == 0
    }

    pub fn linf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    /// Clockwise rotation: (x, y) -> (y, -x).
    pub fn rot_cw(self) -> Vec2 {
        vec2(self.y, -self.x)
    }

    /// Counterclockwise rotation: (x, y) -> (-y, x).
    pub fn rot_ccw(self) -> Vec2 {
        vec2(-self.y, self.x)
    }

    /// Canonical sign: x > 0, or x == 0 and y > 0.
    pub fn canonical_sign(self) -> Vec2 {
        if self.x > 0 || (self.x == 0 && self.y > 0) {
            self
        } else {
            -self
        }
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;

    fn neg(self) -> Vec2 {
        vec2(-self.x, -self.y)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One of the four sides of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::West => Side::East,
        }
    }

    /// Side of `a` that faces `b`, when adjacent.
    pub fn facing(a: Pos, b: Pos) -> Option<Side> {
        match (b.x - a.x, b.y - a.y) {
            (0, 1) => Some(Side::North),
            (1, 0) => Some(Side::East),
            (0, -1) => Some(Side::South),
            (-1, 0) => Some(Side::West),
            _ => None,
        }
    }
}

/// A glue: label plus nonnegative strength. The empty label with strength 0
/// is the inert glue and never interacts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Glue {
    pub label: String,
    pub strength: u32,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Glue {
        Glue {
            label: label.into(),
            strength,
        }
    }

    pub fn inert() -> Glue {
        Glue {
            label: String::new(),
            strength: 0,
        }
    }

    pub fn is_inert(&self) -> bool {
        self.label.is_empty()
    }

    /// Two glues interact when the labels are equal and both strengths >= 1.
    pub fn interacts(&self, other: &Glue) -> bool {
        !self.label.is_empty()
            && self.label == other.label
            && self.strength >= 1
            && other.strength >= 1
    }

    /// Strength of the bond formed by two abutting glues (0 if none).
    pub fn bond(&self, other: &Glue) -> u32 {
        if self.interacts(other) {
            self.strength.min(other.strength)
        } else {
            0
        }
    }
}

/// A unit square tile type with a glue on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileType {
    pub name: String,
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
}

impl TileType {
    pub fn glue(&self, side: Side) -> &Glue {
        match side {
            Side::North => &self.north,
            Side::East => &self.east,
            Side::South => &self.south,
            Side::West => &self.west,
        }
    }
}

/// Index of a tile type within its tile set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(pub u32);

/// A finite set of tile types with unique names.
#[derive(Debug, Clone, Default)]
pub struct TileSet {
    types: Vec<TileType>,
    by_name: BTreeMap<String, TypeId>,
}

impl TileSet {
    pub fn new() -> TileSet {
        TileSet::default()
    }

    pub fn add(&mut self, ty: TileType) -> Result<TypeId, ModelError> {
        if self.by_name.contains_key(&ty.name) {
            return Err(ModelError::DuplicateTileType(ty.name));
        }
        let id = TypeId(self.types.len() as u32);
        self.by_name.insert(ty.name.clone(), id);
        self.types.push(ty);
        Ok(id)
    }

    pub fn get(&self, id: TypeId) -> &TileType {
        &self.types[id.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<TypeId> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = TypeId> + '_ {
        (0..self.types.len()).map(|i| TypeId(i as u32))
    }

    pub fn name(&self, id: TypeId) -> &str {
        &self.get(id).name
    }

    /// Do tiles of types `a` at `pa` and `b` at `pb` interact?
    pub fn interacts(&self, pa: Pos, a: TypeId, pb: Pos, b: TypeId) -> bool {
        match Side::facing(pa, pb) {
            Some(side) => self
                .get(a)
                .glue(side)
                .interacts(self.get(b).glue(side.opposite())),
            None => false,
        }
    }

    /// Bond strength between two placed tiles (0 when not adjacent).
    pub fn bond(&self, pa: Pos, a: TypeId, pb: Pos, b: TypeId) -> u32 {
        match Side::facing(pa, pb) {
            Some(side) => self
                .get(a)
                .glue(side)
                .bond(self.get(b).glue(side.opposite())),
            None => 0,
        }
    }
}

/// A positioned tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub pos: Pos,
    pub ty: TypeId,
}

pub const fn tile(pos: Pos, ty: TypeId) -> Tile {
    Tile { pos, ty }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate tile type name `{0}`")]
    DuplicateTileType(String),
    #[error("assembly domain is not connected")]
    Disconnected,
    #[error("assembly is empty")]
    Empty,
    #[error("assemblies conflict at {0}")]
    Conflict(Pos),
    #[error("assemblies are not attached to each other")]
    NotAttached,
    #[error("exploration exceeded the budget of {0} placements")]
    BudgetExceeded(usize),
    #[error("conflicting attachments at {pos}: {a} vs {b}")]
    ConflictDetected { pos: Pos, a: String, b: String },
}

/// A partial map from Z^2 to tile types with connected domain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assembly {
    tiles: BTreeMap<Pos, TypeId>,
}

impl Assembly {
    pub fn new() -> Assembly {
        Assembly::default()
    }

    pub fn from_tiles(iter: impl IntoIterator<Item = Tile>) -> Result<Assembly, ModelError> {
        let mut a = Assembly::new();
        for t in iter {
            if let Some(&old) = a.tiles.get(&t.pos) {
                if old != t.ty {
                    return Err(ModelError::Conflict(t.pos));
                }
            }
            a.tiles.insert(t.pos, t.ty);
        }
        if a.is_empty() {
            return Err(ModelError::Empty);
        }
        if !a.domain_connected() {
            return Err(ModelError::Disconnected);
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, p: Pos) -> Option<TypeId> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.tiles.contains_key(&p)
    }

    pub fn insert(&mut self, t: Tile) {
        self.tiles.insert(t.pos, t.ty);
    }

    pub fn iter(&self) -> impl Iterator<Item = Tile> + '_ {
        self.tiles.iter().map(|(&pos, &ty)| Tile { pos, ty })
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    /// 4-adjacency connectivity of the domain.
    pub fn domain_connected(&self) -> bool {
        if self.tiles.is_empty() {
            return true;
        }
        let start = *self.tiles.keys().next().unwrap();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for n in p.neighbors() {
                if self.tiles.contains_key(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.tiles.len()
    }

    /// `beta` with `beta(p + v) = self(p)`.
    pub fn translate(&self, v: Vec2) -> Assembly {
        Assembly {
            tiles: self
                .tiles
                .iter()
                .map(|(&p, &ty)| (p.offset(v), ty))
                .collect(),
        }
    }

    /// Is `self` a subassembly of `other`?
    pub fn subassembly_of(&self, other: &Assembly) -> bool {
        self.tiles.iter().all(|(&p, &ty)| other.get(p) == Some(ty))
    }

    /// Restrict to positions satisfying the predicate. May be empty.
    pub fn restrict(&self, mut keep: impl FnMut(Pos) -> bool) -> Assembly {
        Assembly {
            tiles: self
                .tiles
                .iter()
                .filter(|(&p, _)| keep(p))
                .map(|(&p, &ty)| (p, ty))
                .collect(),
        }
    }
}

/// Union of two agreeing, attached assemblies.
pub fn union(set: &TileSet, a: &Assembly, b: &Assembly) -> Result<Assembly, ModelError> {
    let mut shared = false;
    for t in a.iter() {
        if let Some(ty) = b.get(t.pos) {
            shared = true;
            if ty != t.ty {
                return Err(ModelError::Conflict(t.pos));
            }
        }
    }
    let attached = shared
        || a.iter().any(|t| {
            t.pos.neighbors().iter().any(|&n| match b.get(n) {
                Some(other) => set.interacts(t.pos, t.ty, n, other),
                None => false,
            })
        });
    if !attached {
        return Err(ModelError::NotAttached);
    }
    let mut tiles = a.tiles.clone();
    for t in b.iter() {
        tiles.insert(t.pos, t.ty);
    }
    Ok(Assembly { tiles })
}

/// Every cut of the binding graph must weigh at least `tau`.
/// At tau = 1 this is connectivity of the binding graph; for larger tau a
/// global min-cut is computed (Stoer-Wagner).
pub fn is_tau_stable(set: &TileSet, a: &Assembly, tau: u32) -> bool {
    if a.is_empty() {
        return false;
    }
    if a.len() == 1 {
        return true;
    }
    if tau <= 1 {
        return binding_connected(set, a);
    }
    if !binding_connected(set, a) {
        return false;
    }
    min_cut(set, a) >= tau as u64
}

fn binding_connected(set: &TileSet, a: &Assembly) -> bool {
    let start = match a.iter().next() {
        Some(t) => t,
        None => return true,
    };
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.pos);
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for n in t.pos.neighbors() {
            if seen.contains(&n) {
                continue;
            }
            if let Some(ty) = a.get(n) {
                if set.interacts(t.pos, t.ty, n, ty) {
                    seen.insert(n);
                    queue.push_back(tile(n, ty));
                }
            }
        }
    }
    seen.len() == a.len()
}

fn min_cut(set: &TileSet, a: &Assembly) -> u64 {
    let nodes: Vec<Tile> = a.iter().collect();
    let n = nodes.len();
    let mut w = vec![vec![0u64; n]; n];
    for (i, ti) in nodes.iter().enumerate() {
        for (j, tj) in nodes.iter().enumerate().skip(i + 1) {
            let b = set.bond(ti.pos, ti.ty, tj.pos, tj.ty) as u64;
            w[i][j] = b;
            w[j][i] = b;
        }
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let mut order = Vec::with_capacity(active.len());
        let mut weight = vec![0u64; n];
        let mut in_a = vec![false; n];
        for _ in 0..active.len() {
            let &next = active
                .iter()
                .filter(|&&v| !in_a[v])
                .max_by_key(|&&v| weight[v])
                .unwrap();
            in_a[next] = true;
            order.push(next);
            for &v in &active {
                if !in_a[v] {
                    weight[v] += w[next][v];
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        best = best.min(weight[t]);
        // merge t into s
        for &v in &active {
            if v != s && v != t {
                w[s][v] += w[t][v];
                w[v][s] = w[s][v];
            }
        }
        active.retain(|&v| v != t);
    }
    best
}

/// A tile assembly system (T, sigma, tau) with tau fixed to 1.
#[derive(Debug, Clone)]
pub struct TileAssemblySystem {
    pub tile_set: TileSet,
    pub seed: Assembly,
    pub temperature: u32,
}

impl TileAssemblySystem {
    pub fn new(tile_set: TileSet, seed: Assembly) -> Result<TileAssemblySystem, ModelError> {
        if seed.is_empty() {
            return Err(ModelError::Empty);
        }
        if !is_tau_stable(&tile_set, &seed, 1) {
            return Err(ModelError::Disconnected);
        }
        Ok(TileAssemblySystem {
            tile_set,
            seed,
            temperature: 1,
        })
    }
}

/// Do two placed tiles interact?
pub fn interacts(set: &TileSet, a: Tile, b: Tile) -> bool {
    set.interacts(a.pos, a.ty, b.pos, b.ty)
}

/// An L-infinity window centered at `center` with the given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub center: Pos,
    pub radius: i64,
}

impl Window {
    pub fn new(center: Pos, radius: i64) -> Window {
        assert!(radius >= 0);
        Window { center, radius }
    }

    pub fn centered(radius: i64) -> Window {
        Window::new(pos(0, 0), radius)
    }

    pub fn contains(&self, p: Pos) -> bool {
        p.linf(self.center) <= self.radius
    }

    /// The window shrunk by `margin` on every side.
    pub fn inner(&self, margin: i64) -> Window {
        Window::new(self.center, (self.radius - margin).max(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = Pos> + '_ {
        let c = self.center;
        let r = self.radius;
        (c.y - r..=c.y + r).flat_map(move |y| (c.x - r..=c.x + r).map(move |x| pos(x, y)))
    }
}

/// Every (empty position, tile type) pair that can stably attach to `a`.
pub fn attach_sites(t: &TileAssemblySystem, a: &Assembly) -> Vec<Tile> {
    let mut sites = BTreeSet::new();
    for anchor in a.iter() {
        for p in anchor.pos.neighbors() {
            if a.contains(p) {
                continue;
            }
            for ty in t.tile_set.ids() {
                if t.tile_set.interacts(p, ty, anchor.pos, anchor.ty) {
                    sites.insert(tile(p, ty));
                }
            }
        }
    }
    sites.into_iter().collect()
}

/// Outcome of growing inside a window, with the attachment spanning tree.
#[derive(Debug, Clone)]
pub struct Growth {
    pub assembly: Assembly,
    /// Parent (the tile each attachment bound to), for non-seed tiles.
    pub parents: BTreeMap<Pos, Pos>,
    /// Attachment order (generation index) per non-seed position.
    pub order: BTreeMap<Pos, usize>,
    /// True when no attachment site exists anywhere (window-terminal also
    /// terminal in the unbounded sense as far as the window shows).
    pub halted_inside: bool,
}

/// Deterministic window-restricted growth to the terminal assembly.
///
/// Attachment order is breadth-first by (insertion generation, (y, x),
/// tile-type name); for a directed system the result is order-independent.
pub fn grow_to_terminal(t: &TileAssemblySystem, w: Window) -> Growth {
    grow_with(t, w, |frontier, set| {
        frontier
            .iter()
            .min_by_key(|s| (s.site.pos.yx(), set.name(s.site.ty).to_string()))
            .cloned()
    })
}

/// Growth picking frontier sites with a caller-supplied selector. Used for
/// order-independence tests.
pub fn grow_with<F>(t: &TileAssemblySystem, w: Window, mut select: F) -> Growth
where
    F: FnMut(&[Site], &TileSet) -> Option<Site>,
{
    let mut assembly = t.seed.clone();
    let mut parents = BTreeMap::new();
    let mut order = BTreeMap::new();
    let mut frontier: Vec<Site> = Vec::new();
    let mut halted_inside = true;

    let push_sites = |assembly: &Assembly, frontier: &mut Vec<Site>, anchor: Tile| {
        for p in anchor.pos.neighbors() {
            if assembly.contains(p) {
                continue;
            }
            for ty in t.tile_set.ids() {
                if t.tile_set.interacts(p, ty, anchor.pos, anchor.ty) {
                    frontier.push(Site {
                        site: tile(p, ty),
                        anchor: anchor.pos,
                    });
                }
            }
        }
    };

    for s in t.seed.iter() {
        push_sites(&assembly, &mut frontier, s);
    }

    let mut generation = 0usize;
    loop {
        frontier.retain(|s| !assembly.contains(s.site.pos));
        let inside: Vec<Site> = frontier
            .iter()
            .filter(|s| w.contains(s.site.pos))
            .cloned()
            .collect();
        if frontier.iter().any(|s| !w.contains(s.site.pos)) {
            halted_inside = false;
        }
        let Some(choice) = select(&inside, &t.tile_set) else {
            break;
        };
        assembly.insert(choice.site);
        parents.insert(choice.site.pos, choice.anchor);
        order.insert(choice.site.pos, generation);
        generation += 1;
        push_sites(
            &assembly,
            &mut frontier,
            tile(choice.site.pos, choice.site.ty),
        );
    }

    Growth {
        assembly,
        parents,
        order,
        halted_inside,
    }
}

/// A frontier attachment site together with the tile it binds to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub site: Tile,
    pub anchor: Pos,
}

/// Like `grow_to_terminal` but raising on local attachment conflicts
/// (two distinct types attachable at one position at the same time).
pub fn grow_checked(t: &TileAssemblySystem, w: Window) -> Result<Growth, ModelError> {
    let mut conflict = None;
    let growth = grow_with(t, w, |frontier, set| {
        for a in frontier {
            for b in frontier {
                if a.site.pos == b.site.pos && a.site.ty != b.site.ty && conflict.is_none() {
                    conflict = Some(ModelError::ConflictDetected {
                        pos: a.site.pos,
                        a: set.name(a.site.ty).to_string(),
                        b: set.name(b.site.ty).to_string(),
                    });
                }
            }
        }
        frontier
            .iter()
            .min_by_key(|s| (s.site.pos.yx(), set.name(s.site.ty).to_string()))
            .cloned()
    });
    match conflict {
        Some(e) => Err(e),
        None => Ok(growth),
    }
}

/// Verdict of the window-exact directedness oracle.
#[derive(Debug, Clone)]
pub enum DirectednessReport {
    Directed,
    NotDirected {
        position: Pos,
        type_a: TypeId,
        type_b: TypeId,
        /// Two producible assemblies that disagree at `position`.
        witness_a: Assembly,
        witness_b: Assembly,
    },
}

/// Window-exact directedness check.
///
/// First computes the optimistic placement closure (every (position, type)
/// reachable ignoring blocking). If no position admits two types, the system
/// is directed: real reachability is a subset of the closure. Otherwise each
/// closure conflict is checked exactly by searching for self-avoiding
/// producible paths realizing both placements.
pub fn check_directed(
    t: &TileAssemblySystem,
    w: Window,
    max_tiles: usize,
) -> Result<DirectednessReport, ModelError> {
    let seed_positions: BTreeSet<Pos> = t.seed.positions().collect();

    // Optimistic closure over (position, type) states.
    let mut reachable: BTreeSet<Tile> = BTreeSet::new();
    let mut by_pos: BTreeMap<Pos, BTreeSet<TypeId>> = BTreeMap::new();
    let mut queue: VecDeque<Tile> = VecDeque::new();
    let enqueue = |c: Tile,
                   reachable: &mut BTreeSet<Tile>,
                   by_pos: &mut BTreeMap<Pos, BTreeSet<TypeId>>,
                   queue: &mut VecDeque<Tile>| {
        if reachable.insert(c) {
            by_pos.entry(c.pos).or_default().insert(c.ty);
            queue.push_back(c);
        }
    };

    for s in t.seed.iter() {
        for p in s.pos.neighbors() {
            if seed_positions.contains(&p) || !w.contains(p) {
                continue;
            }
            for ty in t.tile_set.ids() {
                if t.tile_set.interacts(p, ty, s.pos, s.ty) {
                    enqueue(tile(p, ty), &mut reachable, &mut by_pos, &mut queue);
                }
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        if reachable.len() > max_tiles {
            return Err(ModelError::BudgetExceeded(max_tiles));
        }
        for p in c.pos.neighbors() {
            if seed_positions.contains(&p) || !w.contains(p) {
                continue;
            }
            for ty in t.tile_set.ids() {
                if t.tile_set.interacts(p, ty, c.pos, c.ty) {
                    enqueue(tile(p, ty), &mut reachable, &mut by_pos, &mut queue);
                }
            }
        }
    }

    for (&p, types) in &by_pos {
        if types.len() < 2 {
            continue;
        }
        let list: Vec<TypeId> = types.iter().copied().collect();
        let mut realized: Vec<(TypeId, Vec<Tile>)> = Vec::new();
        for &ty in &list {
            if let Some(path) = realize_path(t, w, tile(p, ty), max_tiles)? {
                realized.push((ty, path));
                if realized.len() == 2 {
                    break;
                }
            }
        }
        if realized.len() == 2 {
            let (ty_a, path_a) = realized[0].clone();
            let (ty_b, path_b) = realized[1].clone();
            let mut wa = t.seed.clone();
            for tl in path_a {
                wa.insert(tl);
            }
            let mut wb = t.seed.clone();
            for tl in path_b {
                wb.insert(tl);
            }
            return Ok(DirectednessReport::NotDirected {
                position: p,
                type_a: ty_a,
                type_b: ty_b,
                witness_a: wa,
                witness_b: wb,
            });
        }
    }
    Ok(DirectednessReport::Directed)
}

/// Exhaustive search for a self-avoiding producible path from the seed
/// placing `target`. Returns the path when one exists; None when provably
/// none does; BudgetExceeded when the search is cut short.
fn realize_path(
    t: &TileAssemblySystem,
    w: Window,
    target: Tile,
    budget: usize,
) -> Result<Option<Vec<Tile>>, ModelError> {
    let seed_positions: BTreeSet<Pos> = t.seed.positions().collect();
    // DFS over partial paths, most recent tile last.
    struct Frame {
        tile: Tile,
        next_choice: usize,
    }
    let mut starts: Vec<Tile> = Vec::new();
    for s in t.seed.iter() {
        for p in s.pos.neighbors() {
            if seed_positions.contains(&p) || !w.contains(p) {
                continue;
            }
            for ty in t.tile_set.ids() {
                if t.tile_set.interacts(p, ty, s.pos, s.ty) {
                    starts.push(tile(p, ty));
                }
            }
        }
    }
    starts.sort();
    starts.dedup();

    let mut explored = 0usize;
    for start in starts {
        let mut stack = vec![Frame {
            tile: start,
            next_choice: 0,
        }];
        let mut on_path: BTreeSet<Pos> = [start.pos].into_iter().collect();
        while let Some(frame) = stack.last_mut() {
            let cur = frame.tile;
            if cur == target {
                return Ok(Some(stack.iter().map(|f| f.tile).collect()));
            }
            // Enumerate continuations deterministically.
            let mut continuations: Vec<Tile> = Vec::new();
            for p in cur.pos.neighbors() {
                if seed_positions.contains(&p) || on_path.contains(&p) || !w.contains(p) {
                    continue;
                }
                for ty in t.tile_set.ids() {
                    if t.tile_set.interacts(p, ty, cur.pos, cur.ty) {
                        continuations.push(tile(p, ty));
                    }
                }
            }
            continuations.sort();
            if frame.next_choice < continuations.len() {
                let next = continuations[frame.next_choice];
                frame.next_choice += 1;
                explored += 1;
                if explored > budget {
                    return Err(ModelError::BudgetExceeded(budget));
                }
                on_path.insert(next.pos);
                stack.push(Frame {
                    tile: next,
                    next_choice: 0,
                });
            } else {
                on_path.remove(&cur.pos);
                stack.pop();
            }
        }
    }
    Ok(None)
}

/// Window-restricted v-periodicity: inside the inner window (margin
/// excluded), presence and types must agree between p and p + v.
pub fn is_periodic_on_window(a: &Assembly, v: Vec2, w: Window, margin: i64) -> bool {
    assert!(!v.is_zero());
    let inner = w.inner(margin);
    for p in inner.iter() {
        let q = p.offset(v);
        if !inner.contains(q) {
            continue;
        }
        match (a.get(p), a.get(q)) {
            (Some(x), Some(y)) if x == y => {}
            (None, None) => {}
            _ => return false,
        }
    }
    true
}
