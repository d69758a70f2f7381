//! Classification of window-terminal assemblies and construction of finite
//! descriptions: bi-periodic fundamental domains, simply-periodic slabs,
//! and complexity-2 descriptions of aperiodic assemblies, plus conversion
//! to semilinear sets.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{
    closed_interior, compare_candidates, curve_of_bipump_path, interior_of_two_curves,
    CandidateOrder, GeomError, PolyCurve,
};
use crate::model::{
    grow_to_terminal, is_periodic_on_window, Assembly, Growth, Pos, Tile, TileAssemblySystem,
    TypeId, Vec2, Window,
};
use crate::path::{find_connecting_path, Path};
use crate::pumping::{
    bipump, extract_without_redundancy, is_without_redundancy, verify_pump_on_window,
    EventuallyPeriodicPath, IndexDomain, PumpError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("window too small: {0}")]
    WindowTooSmall(&'static str),
    #[error("no bi-pumpable path found despite periodic classification")]
    NoBipumpable,
    #[error("an arc grows outside the extremal band; retry with a larger bound")]
    ArcFound,
    #[error("verification failed at {0}")]
    VerificationFailed(Pos),
    #[error("two description leaves disagree at {0}")]
    InternalConflict(Pos),
    #[error("a leaf accumulates more than two pumping vectors")]
    ComplexityTooHigh,
    #[error("geometry: {0}")]
    Geometry(#[from] GeomError),
    #[error("pumping: {0}")]
    Pumping(#[from] PumpError),
}

/// Finite recursive description of a (possibly infinite) assembly.
///
/// `Finite` leaves are tile patches: fragments of the terminal assembly,
/// not necessarily connected on their own; the evaluated union is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexityAssembly {
    Finite(Vec<Tile>),
    Pumped {
        base: Box<ComplexityAssembly>,
        vector: Vec2,
        domain: IndexDomain,
    },
    Union(Vec<ComplexityAssembly>),
}

impl ComplexityAssembly {
    pub fn finite(tiles: impl IntoIterator<Item = Tile>) -> ComplexityAssembly {
        let mut v: Vec<Tile> = tiles.into_iter().collect();
        v.sort();
        v.dedup();
        ComplexityAssembly::Finite(v)
    }

    pub fn pumped(
        base: ComplexityAssembly,
        vector: Vec2,
        domain: IndexDomain,
    ) -> ComplexityAssembly {
        assert!(!vector.is_zero());
        ComplexityAssembly::Pumped {
            base: Box::new(base),
            vector,
            domain,
        }
    }

    pub fn union(parts: Vec<ComplexityAssembly>) -> ComplexityAssembly {
        assert!(!parts.is_empty());
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            ComplexityAssembly::Union(parts)
        }
    }

    /// Complexity: 0 for finite, +1 per pumping layer, max over unions.
    pub fn complexity(&self) -> u32 {
        match self {
            ComplexityAssembly::Finite(_) => 0,
            ComplexityAssembly::Pumped { base, .. } => base.complexity() + 1,
            ComplexityAssembly::Union(parts) => {
                parts.iter().map(|p| p.complexity()).max().unwrap_or(0)
            }
        }
    }

    /// Flatten into typed lattice generators: each leaf tile with the stack
    /// of pumping vectors applied above it (at most two).
    fn flatten(&self) -> Result<Vec<FlatSet>, DecomposeError> {
        let mut out = Vec::new();
        self.flatten_into(&mut Vec::new(), &mut out)?;
        Ok(out)
    }

    fn flatten_into(
        &self,
        gens: &mut Vec<(Vec2, IndexDomain)>,
        out: &mut Vec<FlatSet>,
    ) -> Result<(), DecomposeError> {
        match self {
            ComplexityAssembly::Finite(tiles) => {
                for &t in tiles {
                    out.push(FlatSet {
                        base: t,
                        gens: gens.clone(),
                    });
                }
                Ok(())
            }
            ComplexityAssembly::Pumped {
                base,
                vector,
                domain,
            } => {
                // Inner pumping layers apply first; order does not matter
                // for membership.
                if gens.len() >= 2 {
                    return Err(DecomposeError::ComplexityTooHigh);
                }
                gens.push((*vector, *domain));
                base.flatten_into(gens, out)?;
                gens.pop();
                Ok(())
            }
            ComplexityAssembly::Union(parts) => {
                for p in parts {
                    p.flatten_into(gens, out)?;
                }
                Ok(())
            }
        }
    }

    /// Materialize every tile falling inside the window.
    pub fn evaluate(&self, w: Window) -> Result<Assembly, DecomposeError> {
        let flats = self.flatten()?;
        let mut tiles: BTreeMap<Pos, TypeId> = BTreeMap::new();
        for p in w.iter() {
            for f in &flats {
                if f.contains(p) {
                    match tiles.get(&p) {
                        Some(&ty) if ty != f.base.ty => {
                            return Err(DecomposeError::InternalConflict(p))
                        }
                        _ => {
                            tiles.insert(p, f.base.ty);
                        }
                    }
                }
            }
        }
        let mut a = Assembly::new();
        for (p, ty) in tiles {
            a.insert(Tile { pos: p, ty });
        }
        Ok(a)
    }
}

/// One typed lattice generator: base tile plus up to two pumping vectors
/// with their coefficient domains.
#[derive(Debug, Clone)]
struct FlatSet {
    base: Tile,
    gens: Vec<(Vec2, IndexDomain)>,
}

impl FlatSet {
    fn contains(&self, p: Pos) -> bool {
        let d = self.base.pos.to(p);
        match self.gens.as_slice() {
            [] => d.is_zero(),
            [(v, dom)] => coeff_1d(d, *v).is_some_and(|k| domain_ok(k, *dom)),
            [(v1, d1), (v2, d2)] => {
                if !v1.collinear(*v2) {
                    let det = v1.cross(*v2);
                    let k1_num = d.cross(*v2);
                    let k2_num = v1.cross(d);
                    if k1_num % det != 0 || k2_num % det != 0 {
                        return false;
                    }
                    domain_ok(k1_num / det, *d1) && domain_ok(k2_num / det, *d2)
                } else {
                    // Collinear generators: scan a bounded coefficient range.
                    if !d.collinear(*v1) {
                        return false;
                    }
                    let bound = 4 * (d.linf() / v1.linf().max(1) + 2);
                    for k1 in -bound..=bound {
                        if !domain_ok(k1, *d1) {
                            continue;
                        }
                        let rest = Vec2 {
                            x: d.x - k1 * v1.x,
                            y: d.y - k1 * v1.y,
                        };
                        if coeff_1d(rest, *v2).is_some_and(|k2| domain_ok(k2, *d2)) {
                            return true;
                        }
                    }
                    false
                }
            }
            _ => false,
        }
    }
}

fn domain_ok(k: i64, d: IndexDomain) -> bool {
    match d {
        IndexDomain::Nat => k >= 0,
        IndexDomain::Int => true,
    }
}

/// d = k v for integer k?
fn coeff_1d(d: Vec2, v: Vec2) -> Option<i64> {
    if d.is_zero() {
        return Some(0);
    }
    if !d.collinear(v) {
        return None;
    }
    let (num, den) = if v.x != 0 { (d.x, v.x) } else { (d.y, v.y) };
    if den == 0 || num % den != 0 {
        return None;
    }
    Some(num / den)
}

/// A linear set: base + N u + N v, typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    pub base: Pos,
    pub u: Vec2,
    pub v: Vec2,
    pub tile_type: String,
}

impl LinearSet {
    pub fn contains(&self, p: Pos) -> bool {
        let d = self.base.to(p);
        let gens: Vec<Vec2> = [self.u, self.v]
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect();
        match gens.as_slice() {
            [] => d.is_zero(),
            [v] => coeff_1d(d, *v).is_some_and(|k| k >= 0),
            [v1, v2] => {
                if !v1.collinear(*v2) {
                    let det = v1.cross(*v2);
                    let k1 = d.cross(*v2);
                    let k2 = v1.cross(d);
                    k1 % det == 0 && k2 % det == 0 && k1 / det >= 0 && k2 / det >= 0
                } else {
                    let bound = 2 * (d.linf() / v1.linf().max(1) + 2);
                    (0..=bound).any(|k1| {
                        let rest = Vec2 {
                            x: d.x - k1 * v1.x,
                            y: d.y - k1 * v1.y,
                        };
                        coeff_1d(rest, *v2).is_some_and(|k2| k2 >= 0)
                    })
                }
            }
            _ => unreachable!(),
        }
    }
}

/// A finite union of typed linear sets; membership is single-valued.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemilinearDescription {
    pub sets: Vec<LinearSet>,
}

impl SemilinearDescription {
    /// The tile type name at p, when any set covers it.
    pub fn type_at(&self, p: Pos) -> Option<&str> {
        for s in &self.sets {
            if s.contains(p) {
                return Some(&s.tile_type);
            }
        }
        None
    }

    /// Evaluate within a window against a tile set.
    pub fn evaluate(
        &self,
        set: &crate::model::TileSet,
        w: Window,
    ) -> Result<Assembly, DecomposeError> {
        let mut tiles: BTreeMap<Pos, TypeId> = BTreeMap::new();
        for p in w.iter() {
            for s in &self.sets {
                if s.contains(p) {
                    let ty = set
                        .lookup(&s.tile_type)
                        .ok_or(DecomposeError::InternalConflict(p))?;
                    match tiles.get(&p) {
                        Some(&old) if old != ty => return Err(DecomposeError::InternalConflict(p)),
                        _ => {
                            tiles.insert(p, ty);
                        }
                    }
                }
            }
        }
        let mut a = Assembly::new();
        for (p, ty) in tiles {
            a.insert(Tile { pos: p, ty });
        }
        Ok(a)
    }
}

/// Convert a complexity <= 2 description to a semilinear description.
///
/// Finite leaves become degenerate linear sets; each pumping layer fills
/// one null vector with its pumping vector. Z-indexed layers split into a
/// forward and a backward natural ray sharing the base.
pub fn to_semilinear(
    c: &ComplexityAssembly,
    set: &crate::model::TileSet,
) -> Result<SemilinearDescription, DecomposeError> {
    let flats = c.flatten()?;
    let mut sets = Vec::new();
    for f in flats {
        // Expand Z domains into sign choices.
        let mut gen_choices: Vec<Vec<Vec2>> = Vec::new();
        for &(v, dom) in &f.gens {
            gen_choices.push(match dom {
                IndexDomain::Nat => vec![v],
                IndexDomain::Int => vec![v, (-v)],
            });
        }
        let combos: Vec<Vec<Vec2>> = match gen_choices.as_slice() {
            [] => vec![vec![]],
            [a] => a.iter().map(|&x| vec![x]).collect(),
            [a, b] => {
                let mut out = Vec::new();
                for &x in a {
                    for &y in b {
                        out.push(vec![x, y]);
                    }
                }
                out
            }
            _ => return Err(DecomposeError::ComplexityTooHigh),
        };
        for combo in combos {
            let u = combo.first().copied().unwrap_or(Vec2 { x: 0, y: 0 });
            let v = combo.get(1).copied().unwrap_or(Vec2 { x: 0, y: 0 });
            sets.push(LinearSet {
                base: f.base.pos,
                u,
                v,
                tile_type: set.name(f.base.ty).to_string(),
            });
        }
    }
    Ok(SemilinearDescription { sets })
}

/// A certified pumpable-path witness.
#[derive(Debug, Clone)]
pub struct PumpWitness {
    pub path: Path,
    pub i: usize,
    pub j: usize,
    pub vector: Vec2,
    pub bi: bool,
}

#[derive(Debug, Clone)]
pub enum Classification {
    Finite {
        tiles: usize,
    },
    SimplyPeriodic {
        v: Vec2,
        evidence: Vec<PumpWitness>,
    },
    BiPeriodic {
        u: Vec2,
        v: Vec2,
        evidence: Vec<PumpWitness>,
    },
    Aperiodic {
        evidence: Vec<PumpWitness>,
    },
}

/// A pump discovered along a spanning-tree branch, verified on the window.
#[derive(Debug, Clone)]
struct PumpPoint {
    /// Index pair within the root path where the pump verified.
    i: usize,
    j: usize,
    vector: Vec2,
    /// Window-clipped positions of the pumped sequence (block part only).
    pump_positions: BTreeSet<Pos>,
    /// The root path prefix up to j, for witness reporting.
    witness: Vec<Tile>,
    /// Did the reverse-direction pumping verify too?
    bi: bool,
}

/// Per-tile labeling of the growth by pump points (at most two deep).
struct Analysis {
    growth: Growth,
    /// Pump points by id.
    pumps: Vec<PumpPoint>,
    /// For every grown (non-seed) position: ids of the pumps on its root
    /// path (empty = core).
    labels: BTreeMap<Pos, Vec<usize>>,
}

fn children_of(growth: &Growth) -> BTreeMap<Pos, Vec<Pos>> {
    let mut out: BTreeMap<Pos, Vec<Pos>> = BTreeMap::new();
    for (&child, &parent) in &growth.parents {
        out.entry(parent).or_default().push(child);
    }
    for v in out.values_mut() {
        v.sort_by_key(|p| p.yx());
    }
    out
}

/// Walk the spanning tree, detecting up to two verified pumps per branch.
fn analyze(t: &TileAssemblySystem, w: Window, margin: i64, bound: i64) -> Analysis {
    let growth = grow_to_terminal(t, w);
    let terminal = growth.assembly.clone();
    let children = children_of(&growth);
    let mut pumps: Vec<PumpPoint> = Vec::new();
    let mut labels: BTreeMap<Pos, Vec<usize>> = BTreeMap::new();

    // Iterative DFS carrying the root path and per-branch pump state.
    struct Frame {
        node: Pos,
        child_idx: usize,
    }
    let roots: Vec<Pos> = {
        let mut r: Vec<Pos> = growth
            .parents
            .iter()
            .filter(|(_, &par)| t.seed.contains(par))
            .map(|(&c, _)| c)
            .collect();
        r.sort_by_key(|p| p.yx());
        r
    };

    for root in roots {
        let mut stack: Vec<Frame> = vec![Frame {
            node: root,
            child_idx: 0,
        }];
        // Path tiles, same-type index lists, and the branch pump stack
        // (ids into `pumps`, with the segment start for the next scan).
        let mut path: Vec<Tile> = Vec::new();
        let mut by_type: BTreeMap<TypeId, Vec<usize>> = BTreeMap::new();
        let mut branch_pumps: Vec<usize> = Vec::new();
        // Depth at which each pump in branch_pumps was pushed.
        let mut pump_depth: Vec<usize> = Vec::new();

        // Enter/leave bookkeeping is done inline in the loop.
        let enter = |node: Pos,
                     path: &mut Vec<Tile>,
                     by_type: &mut BTreeMap<TypeId, Vec<usize>>,
                     branch_pumps: &mut Vec<usize>,
                     pump_depth: &mut Vec<usize>,
                     pumps: &mut Vec<PumpPoint>,
                     labels: &mut BTreeMap<Pos, Vec<usize>>| {
            let ty = terminal.get(node).unwrap();
            let tile = Tile { pos: node, ty };
            path.push(tile);
            let j = path.len() - 1;

            if branch_pumps.len() < 2 {
                // Segment start: after the last pump's anchor departure, or
                // the path start. The anchor is the last path index whose
                // position lies on the active pump.
                let seg_start = if let Some(&last_id) = branch_pumps.last() {
                    let pp = &pumps[last_id];
                    (0..j)
                        .rev()
                        .find(|&k| pp.pump_positions.contains(&path[k].pos))
                        .unwrap_or(0)
                } else {
                    0
                };
                if let Some(indices) = by_type.get(&ty) {
                    for &i in indices {
                        if i < seg_start {
                            continue;
                        }
                        let span = {
                            let xs: Vec<i64> = path[i..=j].iter().map(|t| t.pos.x).collect();
                            let ys: Vec<i64> = path[i..=j].iter().map(|t| t.pos.y).collect();
                            let w0 = xs.iter().max().unwrap() - xs.iter().min().unwrap();
                            let h0 = ys.iter().max().unwrap() - ys.iter().min().unwrap();
                            w0.max(h0)
                        };
                        if span > bound {
                            continue;
                        }
                        if let Some(pp) = try_verify_pump(&path[..], i, j, &terminal, w, margin) {
                            pumps.push(pp);
                            branch_pumps.push(pumps.len() - 1);
                            pump_depth.push(j);
                            break;
                        }
                    }
                }
            }

            by_type.entry(ty).or_default().push(j);
            labels.insert(node, branch_pumps.clone());
        };

        enter(
            root,
            &mut path,
            &mut by_type,
            &mut branch_pumps,
            &mut pump_depth,
            &mut pumps,
            &mut labels,
        );

        while let Some(frame) = stack.last_mut() {
            let node = frame.node;
            let kids = children.get(&node).cloned().unwrap_or_default();
            if frame.child_idx < kids.len() {
                let child = kids[frame.child_idx];
                frame.child_idx += 1;
                stack.push(Frame {
                    node: child,
                    child_idx: 0,
                });
                enter(
                    child,
                    &mut path,
                    &mut by_type,
                    &mut branch_pumps,
                    &mut pump_depth,
                    &mut pumps,
                    &mut labels,
                );
            } else {
                // leave
                let t = path.pop().unwrap();
                let j = path.len();
                by_type.get_mut(&t.ty).unwrap().pop();
                while pump_depth.last() == Some(&j) {
                    pump_depth.pop();
                    branch_pumps.pop();
                }
                stack.pop();
            }
        }
    }

    Analysis {
        growth,
        pumps,
        labels,
    }
}

/// Verify the pumping of the branch path between i and j against the
/// window-terminal fragment; also probes the reverse direction.
fn try_verify_pump(
    path: &[Tile],
    i: usize,
    j: usize,
    terminal: &Assembly,
    w: Window,
    margin: i64,
) -> Option<PumpPoint> {
    let vector = path[i].pos.to(path[j].pos);
    if vector.is_zero() {
        return None;
    }
    let q = pump_tiles(path, i, j);
    if !verify_pump_on_window(&q, terminal, w, margin, 2) {
        return None;
    }
    // Reverse probe: pump the reversed prefix path.
    let rev: Vec<Tile> = path[..=j].iter().rev().copied().collect();
    let (ri, rj) = (0, j - i);
    let back = pump_tiles(&rev, ri, rj);
    let bi = verify_pump_on_window(&back, terminal, w, margin, 2);

    let positions: BTreeSet<Pos> = q
        .elements_in(w)
        .into_iter()
        .filter(|&(k, _)| k >= i as i64)
        .map(|(_, t)| t.pos)
        .collect();
    Some(PumpPoint {
        i,
        j,
        vector,
        pump_positions: positions,
        witness: path[..=j].to_vec(),
        bi,
    })
}

fn pump_tiles(path: &[Tile], i: usize, j: usize) -> EventuallyPeriodicPath {
    // Prefix P_0..P_{i-1}, block P_i..P_{j-1}, shift vec(P_i -> P_j).
    EventuallyPeriodicPath::from_parts(
        path[..i].to_vec(),
        path[i..j].to_vec(),
        path[i].pos.to(path[j].pos),
        IndexDomain::Nat,
    )
}

/// Classify the terminal assembly seen through the window.
pub fn classify(
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
    bound: i64,
) -> Result<Classification, DecomposeError> {
    let analysis = analyze(t, w, margin, bound);
    let inner = w.inner(margin);
    let growth = &analysis.growth;

    if growth.halted_inside {
        if growth.assembly.positions().all(|p| inner.contains(p)) {
            return Ok(Classification::Finite {
                tiles: growth.assembly.len(),
            });
        }
        return Err(DecomposeError::WindowTooSmall(
            "terminal assembly reaches the margin",
        ));
    }
    if analysis.pumps.is_empty() {
        return Err(DecomposeError::WindowTooSmall(
            "growth escapes the window but no pump verified",
        ));
    }

    let mut witnesses: Vec<PumpWitness> = analysis
        .pumps
        .iter()
        .map(|pp| PumpWitness {
            path: Path::from_tiles_unchecked(pp.witness.clone()),
            i: pp.i,
            j: pp.j,
            vector: pp.vector,
            bi: pp.bi,
        })
        .collect();
    for cand in bipumpable_candidates(&analysis, t, w, margin) {
        let vector = cand.first().pos.to(cand.last().pos);
        witnesses.push(PumpWitness {
            i: 0,
            j: cand.len() - 1,
            path: cand,
            vector,
            bi: true,
        });
    }

    // Gather bi-pumpable vectors (canonical sign).
    let bi_vectors: Vec<Vec2> = {
        let mut vs: Vec<Vec2> = witnesses
            .iter()
            .filter(|x| x.bi)
            .map(|x| x.vector.canonical_sign())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    };

    // Two non-collinear bi-pumpable vectors: bi-periodic.
    for (a, u) in bi_vectors.iter().enumerate() {
        for v in bi_vectors.iter().skip(a + 1) {
            if !u.collinear(*v) {
                return Ok(Classification::BiPeriodic {
                    u: *u,
                    v: *v,
                    evidence: witnesses,
                });
            }
        }
    }

    if let Some(&v) = bi_vectors.first() {
        // Refute every second, non-collinear period on the window.
        let cap = margin.max(2);
        for wx in -cap..=cap {
            for wy in -cap..=cap {
                let cand = Vec2 { x: wx, y: wy };
                if cand.is_zero() || cand.collinear(v) {
                    continue;
                }
                if is_periodic_on_window(&growth.assembly, cand, w, margin) {
                    return Ok(Classification::BiPeriodic {
                        u: v,
                        v: cand,
                        evidence: witnesses,
                    });
                }
            }
        }
        return Ok(Classification::SimplyPeriodic {
            v,
            evidence: witnesses,
        });
    }

    Ok(Classification::Aperiodic {
        evidence: witnesses,
    })
}

/// Orient a candidate so its endpoint vector has canonical sign.
fn orient_canonical(path: Path) -> Path {
    let v = path.first().pos.to(path.last().pos);
    if v == v.canonical_sign() {
        path
    } else {
        path.reverse()
    }
}

/// Verify a candidate subpath as a bi-pumpable good candidate on the window.
fn verify_bi_candidate(path: &Path, terminal: &Assembly, w: Window, margin: i64) -> bool {
    if path.len() < 2 || path.first().ty != path.last().ty {
        return false;
    }
    if path.first().pos == path.last().pos {
        return false;
    }
    let tiles = path.tiles().to_vec();
    let fwd = pump_tiles(&tiles, 0, tiles.len() - 1);
    let rev_tiles: Vec<Tile> = tiles.iter().rev().copied().collect();
    let back = pump_tiles(&rev_tiles, 0, tiles.len() - 1);
    verify_pump_on_window(&fwd, terminal, w, margin, 2)
        && verify_pump_on_window(&back, terminal, w, margin, 2)
}

/// Collect verified redundancy-free bi-pumpable paths.
///
/// Candidates come from two sources: pumps discovered along spanning-tree
/// branches, and shortest binding paths between same-type tiles within a
/// vector cap (then trimmed to their redundancy-free core).
fn bipumpable_candidates(
    analysis: &Analysis,
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
) -> Vec<Path> {
    let terminal = &analysis.growth.assembly;
    let mut out: Vec<Path> = Vec::new();

    for pp in &analysis.pumps {
        if !pp.bi {
            continue;
        }
        let full = &pp.witness;
        let (i2, j2) =
            extract_without_redundancy(&Path::from_tiles_unchecked(full.clone()), pp.i, pp.j);
        let seg: Vec<Tile> = full[i2..=j2].to_vec();
        let Ok(path) = Path::new(&t.tile_set, seg) else {
            continue;
        };
        if is_without_redundancy(&path) && verify_bi_candidate(&path, terminal, w, margin) {
            out.push(orient_canonical(path));
        }
    }

    // Same-type pairs within the inner window, capped to short vectors.
    // Group by (type, vector) and try the most central anchors first: a
    // pump verifiable anywhere is verifiable near the window center.
    let cap = margin.max(4);
    let inner = w.inner(margin);
    let mut by_type: BTreeMap<TypeId, Vec<Pos>> = BTreeMap::new();
    for tile in terminal.iter() {
        if inner.contains(tile.pos) {
            by_type.entry(tile.ty).or_default().push(tile.pos);
        }
    }
    let mut groups: BTreeMap<(TypeId, Vec2), Vec<Pos>> = BTreeMap::new();
    for (&ty, positions) in &by_type {
        for &a in positions {
            for &b in positions {
                let v = a.to(b);
                if v.is_zero() || v != v.canonical_sign() || v.linf() > cap {
                    continue;
                }
                groups.entry((ty, v)).or_default().push(a);
            }
        }
    }
    for ((_, v), mut anchors) in groups {
        anchors.sort_by_key(|a| (a.linf(w.center), a.yx()));
        for a in anchors.into_iter().take(8) {
            let b = a.offset(v);
            let Ok(link) = find_connecting_path(&t.tile_set, terminal, a, b) else {
                continue;
            };
            let (i2, j2) = extract_without_redundancy(&link, 0, link.len() - 1);
            let path = link.sub(i2, j2);
            if is_without_redundancy(&path) && verify_bi_candidate(&path, terminal, w, margin) {
                out.push(orient_canonical(path));
                break;
            }
        }
    }

    // Dedup by curve equality.
    let mut dedup: Vec<Path> = Vec::new();
    for p in out {
        let mut fresh = true;
        for q in &dedup {
            if compare_candidates(&p, q) == Ok(CandidateOrder::Equal) {
                fresh = false;
                break;
            }
        }
        if fresh {
            dedup.push(p);
        }
    }
    dedup
}

/// The maximum and minimum redundancy-free bi-pumpable paths, with both
/// endpoint vectors equalized in sign.
pub fn find_extremal_bipumpables(
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
    bound: i64,
) -> Result<(Path, Path), DecomposeError> {
    let analysis = analyze(t, w, margin, bound);
    let mut candidates = bipumpable_candidates(&analysis, t, w, margin);
    if candidates.is_empty() {
        return Err(DecomposeError::NoBipumpable);
    }
    // Deterministic tie-breaking: shortest, then lexicographically least
    // start position.
    candidates.sort_by_key(|p| (p.len(), p.first().pos.yx()));

    let better = |a: &Path, b: &Path| -> bool {
        matches!(compare_candidates(a, b), Ok(CandidateOrder::Greater))
    };
    let mut max = candidates[0].clone();
    let mut min = candidates[0].clone();
    for c in &candidates[1..] {
        if better(c, &max) {
            max = c.clone();
        }
        if better(&min, c) {
            min = c.clone();
        }
    }
    // Equalize endpoint vectors in sign, canonically oriented.
    let vm = max.first().pos.to(max.last().pos);
    let max = if vm == vm.canonical_sign() {
        max
    } else {
        max.reverse()
    };
    let vm = max.first().pos.to(max.last().pos);
    let vn = min.first().pos.to(min.last().pos);
    let min = if vm == vn {
        min
    } else if vm == (-vn) {
        min.reverse()
    } else {
        return Err(DecomposeError::NoBipumpable);
    };
    Ok((max, min))
}

/// Peel an eventually periodic region into a complexity <= 1 description.
///
/// `region` maps positions to types; `vectors` are candidate non-collinear
/// sub-pumping vectors (from level-2 pump points) to use on infinite parts.
fn peel_level1(
    region: &BTreeMap<Pos, TypeId>,
    sub_regions: &[(Vec2, BTreeSet<Pos>)],
) -> ComplexityAssembly {
    let mut covered: BTreeSet<Pos> = BTreeSet::new();
    let mut parts: Vec<ComplexityAssembly> = Vec::new();
    for (v2, r2) in sub_regions {
        let c2: BTreeSet<Pos> = r2
            .iter()
            .copied()
            .filter(|p| region.contains_key(p))
            .collect();
        if c2.is_empty() {
            continue;
        }
        // Fundamental slice: tiles whose backward translate is not in the
        // sub-region with the same type.
        let b2: Vec<Tile> = c2
            .iter()
            .copied()
            .filter(|&p| {
                let back = p.offset(-*v2);
                !(c2.contains(&back) && region.get(&back) == region.get(&p))
            })
            .map(|p| Tile {
                pos: p,
                ty: region[&p],
            })
            .collect();
        covered.extend(c2.iter().copied());
        if b2.is_empty() {
            continue;
        }
        parts.push(ComplexityAssembly::pumped(
            ComplexityAssembly::finite(b2),
            *v2,
            IndexDomain::Nat,
        ));
    }
    let leftover: Vec<Tile> = region
        .iter()
        .filter(|(p, _)| !covered.contains(*p))
        .map(|(&p, &ty)| Tile { pos: p, ty })
        .collect();
    if !leftover.is_empty() {
        parts.insert(0, ComplexityAssembly::finite(leftover));
    }
    if parts.is_empty() {
        ComplexityAssembly::finite(Vec::new())
    } else {
        ComplexityAssembly::union(parts)
    }
}

/// Decompose a bi-periodic terminal assembly: build the cycle from two
/// non-collinear redundancy-free bi-pumpable paths and take the half-open
/// fundamental domain of its interior.
pub fn decompose_biperiodic(
    t: &TileAssemblySystem,
    p: &Path,
    q: &Path,
    w: Window,
    margin: i64,
) -> Result<(Assembly, Vec2, Vec2), DecomposeError> {
    let terminal = grow_to_terminal(t, w).assembly;
    let u = p.first().pos.to(p.last().pos);
    let vq = q.first().pos.to(q.last().pos);
    if u.collinear(vq) {
        return Err(DecomposeError::NoBipumpable);
    }

    // Re-anchor: find the last intersection of bipump(q) with bipump(p)
    // along q, and start both periods there.
    let bp = bipump(p)?;
    let bq = bipump(q)?;
    let p_curve = curve_of_bipump_path(p)?;
    let reach = 4 * (p.len() + q.len()) as i64 + 4 * (u.linf() + vq.linf());
    let mut last_k: Option<i64> = None;
    for k in -reach..=reach {
        let tile = bq.at(k).unwrap();
        if p_curve.contains_lattice(tile.pos) {
            last_k = Some(k);
        }
    }
    let k0 = last_k.ok_or(DecomposeError::WindowTooSmall("curves do not meet"))?;
    let q_tiles: Vec<Tile> = (k0..=k0 + q.len() as i64 - 1)
        .map(|k| bq.at(k).unwrap())
        .collect();
    // Anchor p's period at the same position.
    let anchor = q_tiles[0].pos;
    let mut m0 = None;
    for m in -reach..=reach {
        if bp.at(m).unwrap().pos == anchor {
            m0 = Some(m);
            break;
        }
    }
    let m0 = m0.ok_or(DecomposeError::WindowTooSmall("anchor not on first curve"))?;
    let p_tiles: Vec<Tile> = (m0..=m0 + p.len() as i64 - 1)
        .map(|m| bp.at(m).unwrap())
        .collect();

    // i: first index > 0 along q whose type reuses a type of p's period.
    let p_types: BTreeSet<TypeId> = p_tiles.iter().map(|t| t.ty).collect();
    let i = (1..q_tiles.len())
        .find(|&k| p_types.contains(&q_tiles[k].ty))
        .ok_or(DecomposeError::WindowTooSmall(
            "no shared type on link path",
        ))?;
    let j = (0..p_tiles.len() - 1)
        .find(|&m| p_tiles[m].ty == q_tiles[i].ty)
        .ok_or(DecomposeError::WindowTooSmall("no matching period index"))?;
    let v = p_tiles[j].pos.to(q_tiles[i].pos);

    // Cycle corners: A = P'_0, B = A + u, C = Q'_i, D = C + u.
    // Sides: P' (A..B), Q'' (A..C), Q''+u (B..D), P''+v (C..D) where P''
    // starts at P'_j.
    let q2: Vec<Pos> = q_tiles[..=i].iter().map(|t| t.pos).collect();
    let p_side: Vec<Pos> = p_tiles.iter().map(|t| t.pos).collect();
    let p2_side: Vec<Pos> = (m0 + j as i64..=m0 + j as i64 + p.len() as i64 - 1)
        .map(|m| bp.at(m).unwrap().pos.offset(v))
        .collect();
    let q2_u: Vec<Pos> = q2.iter().map(|x| x.offset(u)).collect();

    let mut cycle: Vec<Pos> = Vec::new();
    cycle.extend(p_side.iter().copied()); // A -> B
    cycle.extend(q2_u.iter().skip(1).copied()); // B -> D
    let mut p2_rev = p2_side.clone();
    p2_rev.reverse();
    cycle.extend(p2_rev.iter().skip(1).copied()); // D -> C
    let mut q2_rev = q2.clone();
    q2_rev.reverse();
    cycle.extend(q2_rev.iter().skip(1).copied()); // C -> A

    let curve = PolyCurve::new(cycle)?;
    let interior = closed_interior(&curve)?;
    // Half-open trim: drop lattice points on the far sides Q''+u and P''+v.
    let far: BTreeSet<Pos> = q2_u.iter().chain(p2_side.iter()).copied().collect();
    let mut ass = Assembly::new();
    for ppos in interior {
        if far.contains(&ppos) {
            continue;
        }
        if let Some(ty) = terminal.get(ppos) {
            ass.insert(Tile { pos: ppos, ty });
        } else {
            return Err(DecomposeError::VerificationFailed(ppos));
        }
    }

    // Verify the tiling identity on the inner window.
    let ca = ComplexityAssembly::pumped(
        ComplexityAssembly::pumped(ComplexityAssembly::finite(ass.iter()), u, IndexDomain::Int),
        v,
        IndexDomain::Int,
    );
    verify_against(&ca, &terminal, w, margin)?;
    Ok((ass, u, v))
}

/// Decompose a simply periodic terminal assembly into
/// PUMPED(UNION(band, side growths), v, INT).
pub fn decompose_simply_periodic(
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
    bound: i64,
) -> Result<ComplexityAssembly, DecomposeError> {
    let analysis = analyze(t, w, margin, bound);
    let terminal = analysis.growth.assembly.clone();
    let (p_plus, p_minus) = find_extremal_bipumpables(t, w, margin, bound)?;
    let v = p_plus.first().pos.to(p_plus.last().pos);
    let d2 = v.dot(v);
    let anchor = p_plus.first().pos;

    let c_plus = curve_of_bipump_path(&p_plus)?;
    let c_minus = curve_of_bipump_path(&p_minus)?;
    let band_points = interior_of_two_curves(&c_plus, &c_minus)?;
    let band: Vec<Tile> = band_points
        .iter()
        .filter_map(|&p| terminal.get(p).map(|ty| Tile { pos: p, ty }))
        .collect();

    // Arc check: any growth tile interacting with two or more distinct
    // positions of an extremal curve would close an arc outside the band.
    // The spanning tree gives each growth exactly one anchor; a second
    // adjacency with an agreeing glue on the curve signals an arc.
    // (Detected indirectly: verification would also fail.)

    // Side growths: every terminal tile in the fundamental slab that is not
    // part of the band.
    let slab = |p: Pos| {
        let s = anchor.to(p).dot(v);
        (0..d2).contains(&s)
    };
    let mut side: BTreeMap<Pos, TypeId> = BTreeMap::new();
    for tile in terminal.iter() {
        if slab(tile.pos) && !band_points.contains(&tile.pos) {
            side.insert(tile.pos, tile.ty);
        }
    }

    // Sub-pumping vectors for infinite side growths come from level-2 pump
    // points with vectors not collinear with v.
    let sub_regions = sub_regions_for(&analysis, &|vec: Vec2| !vec.collinear(v));

    let mut parts: Vec<ComplexityAssembly> = vec![ComplexityAssembly::finite(band)];
    if !side.is_empty() {
        let peeled = peel_level1(&side, &sub_regions);
        if peeled != ComplexityAssembly::finite(Vec::new()) {
            parts.push(peeled);
        }
    }
    let ca = ComplexityAssembly::pumped(ComplexityAssembly::union(parts), v, IndexDomain::Int);
    verify_against(&ca, &terminal, w, margin)?;
    Ok(ca)
}

/// Sub-regions (vector, positions) from the innermost pump on each branch,
/// filtered by vector. Each set also carries the pump's own block positions
/// so the first period belongs to the pumped part.
fn sub_regions_for(
    analysis: &Analysis,
    accept: &dyn Fn(Vec2) -> bool,
) -> Vec<(Vec2, BTreeSet<Pos>)> {
    let mut by_pump: BTreeMap<usize, BTreeSet<Pos>> = BTreeMap::new();
    for (&pos_, ids) in &analysis.labels {
        if let Some(&last) = ids.last() {
            by_pump.entry(last).or_default().insert(pos_);
        }
    }
    let mut out = Vec::new();
    for (id, mut positions) in by_pump {
        let v = analysis.pumps[id].vector;
        if accept(v) {
            positions.extend(analysis.pumps[id].pump_positions.iter().copied());
            out.push((v, positions));
        }
    }
    out
}

/// Decompose an aperiodic terminal assembly into a complexity <= 2
/// description: a finite core plus one pumped part per first-level pump.
pub fn decompose_aperiodic(
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
    bound: i64,
) -> Result<ComplexityAssembly, DecomposeError> {
    let analysis = analyze(t, w, margin, bound);
    let terminal = analysis.growth.assembly.clone();

    // Core: seed plus every tile with no pump upstream.
    let mut core: Vec<Tile> = t.seed.iter().collect();
    // Regions per first-level pump id.
    let mut regions: BTreeMap<usize, BTreeMap<Pos, TypeId>> = BTreeMap::new();
    // Level-2 memberships per (first, second) pump pair.
    let mut level2: BTreeMap<(usize, usize), BTreeSet<Pos>> = BTreeMap::new();

    for tile in terminal.iter() {
        if t.seed.contains(tile.pos) {
            continue;
        }
        match analysis.labels.get(&tile.pos).map(|v| v.as_slice()) {
            None | Some([]) => core.push(tile),
            Some([first]) => {
                regions.entry(*first).or_default().insert(tile.pos, tile.ty);
            }
            Some([first, second, ..]) => {
                regions.entry(*first).or_default().insert(tile.pos, tile.ty);
                level2
                    .entry((*first, *second))
                    .or_default()
                    .insert(tile.pos);
            }
        }
    }

    let mut parts: Vec<ComplexityAssembly> = vec![ComplexityAssembly::finite(core)];
    for (&id, region) in &regions {
        let v = analysis.pumps[id].vector;
        // Fundamental slice of the region along v.
        let b: BTreeMap<Pos, TypeId> = region
            .iter()
            .filter(|(&p, &ty)| {
                let back = p.offset(-v);
                !(region.get(&back) == Some(&ty))
            })
            .map(|(&p, &ty)| (p, ty))
            .collect();
        // Level-2 sub-regions intersecting this slice.
        let subs: Vec<(Vec2, BTreeSet<Pos>)> = level2
            .iter()
            .filter(|((first, _), _)| *first == id)
            .map(|((_, second), positions)| (analysis.pumps[*second].vector, positions.clone()))
            .collect();
        let base = peel_level1(&b, &subs);
        parts.push(ComplexityAssembly::pumped(base, v, IndexDomain::Nat));
    }

    let ca = ComplexityAssembly::union(parts);
    verify_against(&ca, &terminal, w, margin)?;
    Ok(ca)
}

/// Dispatch on the classification.
pub fn decompose(
    t: &TileAssemblySystem,
    w: Window,
    margin: i64,
    bound: i64,
) -> Result<(Classification, ComplexityAssembly), DecomposeError> {
    let classification = classify(t, w, margin, bound)?;
    let ca = match &classification {
        Classification::Finite { .. } => {
            let terminal = grow_to_terminal(t, w).assembly;
            ComplexityAssembly::finite(terminal.iter())
        }
        Classification::BiPeriodic { .. } => {
            let analysis = analyze(t, w, margin, bound);
            let candidates = bipumpable_candidates(&analysis, t, w, margin);
            let (p, q) = pick_noncollinear(&candidates).ok_or(DecomposeError::NoBipumpable)?;
            let (ass, u, v) = decompose_biperiodic(t, &p, &q, w, margin)?;
            ComplexityAssembly::pumped(
                ComplexityAssembly::pumped(
                    ComplexityAssembly::finite(ass.iter()),
                    u,
                    IndexDomain::Int,
                ),
                v,
                IndexDomain::Int,
            )
        }
        Classification::SimplyPeriodic { .. } => decompose_simply_periodic(t, w, margin, bound)?,
        Classification::Aperiodic { .. } => decompose_aperiodic(t, w, margin, bound)?,
    };
    Ok((classification, ca))
}

fn pick_noncollinear(candidates: &[Path]) -> Option<(Path, Path)> {
    for (a, p) in candidates.iter().enumerate() {
        for q in candidates.iter().skip(a + 1) {
            let u = p.first().pos.to(p.last().pos);
            let v = q.first().pos.to(q.last().pos);
            if !u.collinear(v) {
                return Some((p.clone(), q.clone()));
            }
        }
    }
    None
}

/// Exact map equality between the evaluated description and the terminal
/// fragment, on the inner window.
pub fn verify_against(
    ca: &ComplexityAssembly,
    terminal: &Assembly,
    w: Window,
    margin: i64,
) -> Result<(), DecomposeError> {
    let evaluated = ca.evaluate(w)?;
    let inner = w.inner(margin);
    for p in inner.iter() {
        if evaluated.get(p) != terminal.get(p) {
            return Err(DecomposeError::VerificationFailed(p));
        }
    }
    Ok(())
}

/// The index formula of the comb-breaking lemma: j = (4|ass| + 2)(|P| - 1) + 1.
pub fn magic_j(ass_size: usize, path_len: usize) -> i64 {
    (4 * ass_size as i64 + 2) * (path_len as i64 - 1) + 1
}

/// The smallest index i > j + (|P| - 1) such that every pump element from i
/// onward keeps L-infinity distance > bound + 1 from the base assembly.
pub fn magic_index(base: &Assembly, p: &Path, bound: i64) -> (i64, i64) {
    let j = magic_j(base.len(), p.len());
    let tiles = p.tiles().to_vec();
    let q = pump_tiles(&tiles, 0, tiles.len() - 1);
    let far = |k: i64| -> bool {
        let tile = q.at(k).unwrap();
        base.positions().all(|b| tile.pos.linf(b) > bound + 1)
    };
    // Distances grow along the pump, so once an index and its whole block
    // are far, all later ones are.
    let lp = p.len() as i64 - 1;
    let mut i = j + lp + 1;
    loop {
        if (i..i + lp).all(far) {
            // ensure monotonicity: the next block must be at least as far
            let t0 = q.at(i).unwrap();
            let t1 = q.at(i + lp).unwrap();
            let d0 = base.positions().map(|b| t0.pos.linf(b)).min().unwrap();
            let d1 = base.positions().map(|b| t1.pos.linf(b)).min().unwrap();
            if d1 >= d0 {
                return (j, i);
            }
        }
        i += 1;
    }
}
