//! Pump and bi-pump construction, candidate certification, and the
//! window-verified pumpability search.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{Assembly, Pos, Tile, TileAssemblySystem, Vec2, Window};
use crate::path::{extents, Path};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PumpError {
    #[error("endpoint tile types differ")]
    TypeMismatch,
    #[error("endpoints coincide: null pumping vector")]
    NullVector,
    #[error("path too short to pump")]
    TooShort,
    #[error("bad indices ({0}, {1})")]
    BadIndices(usize, usize),
    #[error("window too small to verify the pumping")]
    WindowTooSmall,
    #[error("vectors are collinear")]
    Collinear,
}

/// Index domain of an eventually periodic path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexDomain {
    Nat,
    Int,
}

/// Finite representation of a pumped path: a prefix, one repeating block,
/// and a translation applied once per block repetition.
///
/// Element k (k >= prefix length for Nat, any k for Int with empty prefix)
/// is `block[(k - i) mod L] + floor((k - i) / L) * shift` with i the prefix
/// length and L the block length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicPath {
    prefix: Vec<Tile>,
    block: Vec<Tile>,
    shift: Vec2,
    domain: IndexDomain,
}

impl EventuallyPeriodicPath {
    /// Assemble from raw parts. Int-domain paths must have an empty prefix.
    pub fn from_parts(
        prefix: Vec<Tile>,
        block: Vec<Tile>,
        shift: Vec2,
        domain: IndexDomain,
    ) -> EventuallyPeriodicPath {
        assert!(!block.is_empty());
        assert!(!shift.is_zero());
        assert!(domain == IndexDomain::Nat || prefix.is_empty());
        EventuallyPeriodicPath {
            prefix,
            block,
            shift,
            domain,
        }
    }

    pub fn shift(&self) -> Vec2 {
        self.shift
    }

    pub fn domain(&self) -> IndexDomain {
        self.domain
    }

    pub fn block(&self) -> &[Tile] {
        &self.block
    }

    pub fn prefix(&self) -> &[Tile] {
        &self.prefix
    }

    pub fn block_len(&self) -> i64 {
        self.block.len() as i64
    }

    /// Element at index k; None outside the domain.
    pub fn at(&self, k: i64) -> Option<Tile> {
        let i = self.prefix.len() as i64;
        if k < i {
            if k < 0 || self.domain == IndexDomain::Int {
                if self.domain == IndexDomain::Int {
                    // empty prefix by invariant
                    return Some(self.block_element(k));
                }
                return None;
            }
            return Some(self.prefix[k as usize]);
        }
        Some(self.block_element(k - i))
    }

    fn block_element(&self, m: i64) -> Tile {
        let l = self.block_len();
        let idx = m.rem_euclid(l);
        let reps = m.div_euclid(l);
        let t = self.block[idx as usize];
        Tile {
            pos: t.pos.offset(self.shift.scale(reps)),
            ty: t.ty,
        }
    }

    /// All elements whose positions fall inside the window, paired with
    /// their indices. Finite because the shift is non-null.
    pub fn elements_in(&self, w: Window) -> Vec<(i64, Tile)> {
        let mut out = Vec::new();
        for (k, t) in self.prefix.iter().enumerate() {
            if w.contains(t.pos) {
                out.push((k as i64, *t));
            }
        }
        let i = self.prefix.len() as i64;
        // Conservative repetition range from window size and shift length.
        let span = 2 * w.radius + 2;
        let step = self.shift.linf().max(1);
        let reps = span / step + 2;
        let lo = match self.domain {
            IndexDomain::Nat => 0,
            IndexDomain::Int => -reps,
        };
        for r in lo..=reps {
            for (bi, t) in self.block.iter().enumerate() {
                let q = t.pos.offset(self.shift.scale(r));
                if w.contains(q) {
                    out.push((
                        i + r * self.block_len() + bi as i64,
                        Tile { pos: q, ty: t.ty },
                    ));
                }
            }
        }
        out.sort_by_key(|&(k, _)| k);
        out
    }
}

/// The pumping of P: requires type(P_0) = type(P_last) and distinct
/// endpoint positions. Block is P_0 .. P_{|P|-2}; shift is the endpoint
/// vector.
pub fn pump(p: &Path) -> Result<EventuallyPeriodicPath, PumpError> {
    pump_with_domain(p, IndexDomain::Nat)
}

/// As `pump` but indexed over all of Z.
pub fn bipump(p: &Path) -> Result<EventuallyPeriodicPath, PumpError> {
    pump_with_domain(p, IndexDomain::Int)
}

fn pump_with_domain(p: &Path, domain: IndexDomain) -> Result<EventuallyPeriodicPath, PumpError> {
    if p.len() < 2 {
        return Err(PumpError::TooShort);
    }
    if p.first().ty != p.last().ty {
        return Err(PumpError::TypeMismatch);
    }
    let shift = p.first().pos.to(p.last().pos);
    if shift.is_zero() {
        return Err(PumpError::NullVector);
    }
    Ok(EventuallyPeriodicPath {
        prefix: Vec::new(),
        block: p.tiles()[..p.len() - 1].to_vec(),
        shift,
        domain,
    })
}

/// The pumping of P between i and j: prefix P_0..P_{i-1}, block P_i..P_{j-1},
/// shift = vec(P_i -> P_j).
pub fn pump_between(p: &Path, i: usize, j: usize) -> Result<EventuallyPeriodicPath, PumpError> {
    if i >= j || j > p.len() - 1 {
        return Err(PumpError::BadIndices(i, j));
    }
    if p.get(i).ty != p.get(j).ty {
        return Err(PumpError::TypeMismatch);
    }
    let shift = p.get(i).pos.to(p.get(j).pos);
    if shift.is_zero() {
        return Err(PumpError::NullVector);
    }
    Ok(EventuallyPeriodicPath {
        prefix: p.tiles()[..i].to_vec(),
        block: p.tiles()[i..j].to_vec(),
        shift,
        domain: IndexDomain::Nat,
    })
}

/// A good candidate: the only intersection between P and P + shift is the
/// agreement of P_0 + shift with P_last.
pub fn is_good_candidate(p: &Path) -> Result<bool, PumpError> {
    if p.len() < 2 {
        return Err(PumpError::TooShort);
    }
    if p.first().ty != p.last().ty {
        return Err(PumpError::TypeMismatch);
    }
    let shift = p.first().pos.to(p.last().pos);
    if shift.is_zero() {
        return Err(PumpError::NullVector);
    }
    let translated = p.translate(shift);
    let positions: BTreeSet<Pos> = p.positions().collect();
    let mut hits = 0usize;
    let mut endpoint_agrees = false;
    for t in translated.iter() {
        if positions.contains(&t.pos) {
            hits += 1;
            if t.pos == p.last().pos && t.ty == p.last().ty {
                endpoint_agrees = true;
            }
        }
    }
    Ok(hits == 1 && endpoint_agrees)
}

/// The lemma construction extracting a redundancy-free subpath: the least
/// j' in (i, j] admitting an earlier i' with matching types.
pub fn extract_without_redundancy(p: &Path, i: usize, j: usize) -> (usize, usize) {
    assert!(i < j && j < p.len());
    assert_eq!(p.get(i).ty, p.get(j).ty);
    for jp in (i + 1)..=j {
        for ip in i..jp {
            if p.get(ip).ty == p.get(jp).ty {
                return (ip, jp);
            }
        }
    }
    unreachable!("the endpoint pair always matches");
}

/// No tile type repeats except possibly at the two extremities.
pub fn is_without_redundancy(p: &Path) -> bool {
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            if p.get(a).ty == p.get(b).ty && !(a == 0 && b == p.len() - 1) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PumpabilityVerdict {
    BiPumpable { i: usize, j: usize, vector: Vec2 },
    SimplyPumpable { i: usize, j: usize, vector: Vec2 },
    NotPumpableWithinBound,
}

/// Window-verification of a pumped sequence against the terminal fragment.
///
/// Checks that the sequence is self-avoiding inside the window, that every
/// element inside the inner window is a tile of the terminal fragment, and
/// that at least `min_periods` full blocks of the periodic part fit inside
/// the inner window.
pub fn verify_pump_on_window(
    q: &EventuallyPeriodicPath,
    terminal: &Assembly,
    w: Window,
    margin: i64,
    min_periods: i64,
) -> bool {
    let inner = w.inner(margin);
    let elements = q.elements_in(w);
    let prefix_len = q.prefix().len() as i64;
    let mut seen: BTreeSet<Pos> = BTreeSet::new();
    let mut inner_block_count = 0i64;
    for &(k, t) in &elements {
        if !seen.insert(t.pos) {
            return false;
        }
        if inner.contains(t.pos) {
            if k >= prefix_len {
                inner_block_count += 1;
            }
            if terminal.get(t.pos) != Some(t.ty) {
                return false;
            }
        } else if let Some(existing) = terminal.get(t.pos) {
            if existing != t.ty {
                return false;
            }
        }
    }
    inner_block_count > min_periods * q.block_len()
}

/// Scan pairs i < j with matching types (j ascending, then i ascending) and
/// return the first window-verified pumping. Bi-pumpable requires the
/// reverse-direction pumping to verify as well.
pub fn search_pumpable(
    t: &TileAssemblySystem,
    p: &Path,
    w: Window,
    margin: i64,
    bound: i64,
    terminal: &Assembly,
) -> Result<PumpabilityVerdict, PumpError> {
    let _ = t;
    for j in 1..p.len() {
        for i in 0..j {
            if p.get(i).ty != p.get(j).ty {
                continue;
            }
            let seg = p.sub(i, j);
            let (h, wd) = extents(&seg);
            if h.max(wd) > bound {
                continue;
            }
            let Ok(fwd) = pump_between(p, i, j) else {
                continue;
            };
            if !verify_pump_on_window(&fwd, terminal, w, margin, 2) {
                continue;
            }
            let vector = p.get(i).pos.to(p.get(j).pos);
            // Reverse direction: pump the reversed path between the mirrored
            // indices to probe growth backwards from P_i.
            let rev = p.reverse();
            let (ri, rj) = (p.len() - 1 - j, p.len() - 1 - i);
            let bi = match pump_between(&rev, ri, rj) {
                Ok(bwd) => verify_pump_on_window(&bwd, terminal, w, margin, 2),
                Err(_) => false,
            };
            return Ok(if bi {
                PumpabilityVerdict::BiPumpable { i, j, vector }
            } else {
                PumpabilityVerdict::SimplyPumpable { i, j, vector }
            });
        }
    }
    Ok(PumpabilityVerdict::NotPumpableWithinBound)
}

/// v-self-avoidance of a path, window-checked: no translate by a positive
/// multiple of v intersects the path, and from some L on every translate
/// that fits in the inner window is a path of the terminal fragment.
pub fn is_v_self_avoiding(
    p: &Path,
    v: Vec2,
    terminal: &Assembly,
    w: Window,
    margin: i64,
) -> Result<bool, PumpError> {
    assert!(!v.is_zero());
    let inner = w.inner(margin);
    let positions: BTreeSet<Pos> = p.positions().collect();
    let mut max_ell = 0i64;
    for ell in 1.. {
        let translated = p.translate(v.scale(ell));
        if !translated.positions().any(|q| w.contains(q)) {
            break;
        }
        if translated.positions().any(|q| positions.contains(&q)) {
            return Ok(false);
        }
        if translated.positions().all(|q| inner.contains(q)) {
            max_ell = ell;
        }
    }
    if max_ell < 2 {
        return Err(PumpError::WindowTooSmall);
    }
    // There must be an L past which every fitting translate is a path of
    // the terminal fragment.
    let mut all_good_from = None;
    for start in (1..=max_ell).rev() {
        let translated = p.translate(v.scale(start));
        let good = translated.iter().all(|t| terminal.get(t.pos) == Some(t.ty));
        if good {
            all_good_from = Some(start);
        } else {
            break;
        }
    }
    Ok(all_good_from.is_some())
}

/// (u,v)-self-avoidance, decided exactly by reducing positions modulo the
/// lattice generated by u and v.
pub fn is_uv_self_avoiding(p: &Path, u: Vec2, v: Vec2) -> Result<bool, PumpError> {
    if u.is_zero() || v.is_zero() || u.collinear(v) {
        return Err(PumpError::Collinear);
    }
    let det = u.cross(v);
    let mut seen = BTreeSet::new();
    for q in p.positions() {
        // Solve q = a u + b v over the rationals; the residue is
        // (a mod 1, b mod 1) represented as numerators modulo det.
        let d = Vec2 { x: q.x, y: q.y };
        let a_num = d.cross(v); // a = d x v / det
        let b_num = u.cross(d); // b = u x d / det
        let key = (a_num.rem_euclid(det), b_num.rem_euclid(det));
        if !seen.insert(key) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of lattice points in the closed parallelogram spanned by u and v
/// at the origin. Used as the harness bound for (u,v)-self-avoiding paths.
pub fn parallelogram_lattice_count(u: Vec2, v: Vec2) -> usize {
    let xs = [0, u.x, v.x, u.x + v.x];
    let ys = [0, u.y, v.y, u.y + v.y];
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut count = 0usize;
    for x in x0..=x1 {
        for y in y0..=y1 {
            // p inside the closed parallelogram iff p = a u + b v with
            // 0 <= a, b <= 1.
            let d = Vec2 { x, y };
            let det = u.cross(v);
            let a_num = d.cross(v);
            let b_num = u.cross(d);
            let (a_num, b_num, det) = if det < 0 {
                (-a_num, -b_num, -det)
            } else {
                (a_num, b_num, det)
            };
            if (0..=det).contains(&a_num) && (0..=det).contains(&b_num) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::fixtures;
    use crate::model::{grow_to_terminal, pos, tile, vec2, Tile, TileSet};
    use crate::path::Path;

    fn staircase(set: &mut TileSet) -> Path {
        // A at (0,0), B at (0,1), A at (1,1): endpoint types match.
        use crate::model::{Glue, TileType};
        let a = set
            .add(TileType {
                name: "A".into(),
                north: Glue::new("n", 1),
                east: Glue::inert(),
                south: Glue::inert(),
                west: Glue::new("e", 1),
            })
            .unwrap();
        let b = set
            .add(TileType {
                name: "B".into(),
                north: Glue::inert(),
                east: Glue::new("e", 1),
                south: Glue::new("n", 1),
                west: Glue::inert(),
            })
            .unwrap();
        Path::new(
            set,
            vec![tile(pos(0, 0), a), tile(pos(0, 1), b), tile(pos(1, 1), a)],
        )
        .unwrap()
    }

    #[test]
    fn pump_line() {
        let t = fixtures::line();
        let a = t.tile_set.lookup("A").unwrap();
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), a), tile(pos(1, 0), a)]).unwrap();
        let q = pump(&p).unwrap();
        for k in 0..10 {
            assert_eq!(q.at(k).unwrap(), tile(pos(k, 0), a));
        }
        assert_eq!(q.at(-1), None);
        let b = bipump(&p).unwrap();
        assert_eq!(b.at(-3).unwrap(), tile(pos(-3, 0), a));
        for k in 0..50 {
            assert_eq!(b.at(k), q.at(k));
        }
    }

    #[test]
    fn pump_staircase_hand_evaluated() {
        let mut set = TileSet::new();
        let p = staircase(&mut set);
        let a = set.lookup("A").unwrap();
        let b = set.lookup("B").unwrap();
        let q = pump(&p).unwrap();
        // |P| - 1 = 2, shift = (1,1)
        assert_eq!(q.at(0).unwrap(), tile(pos(0, 0), a));
        assert_eq!(q.at(1).unwrap(), tile(pos(0, 1), b));
        assert_eq!(q.at(2).unwrap(), tile(pos(1, 1), a));
        assert_eq!(q.at(3).unwrap(), tile(pos(1, 2), b));
        assert_eq!(q.at(4).unwrap(), tile(pos(2, 2), a));
    }

    #[test]
    fn pump_periodicity_identity() {
        let mut set = TileSet::new();
        let p = staircase(&mut set);
        let q = pump(&p).unwrap();
        let l = p.len() as i64 - 1;
        let shift = q.shift();
        for k in 0..1000 {
            let a = q.at(k).unwrap();
            let b = q.at(k + l).unwrap();
            assert_eq!(b.pos, a.pos.offset(shift));
            assert_eq!(b.ty, a.ty);
        }
    }

    #[test]
    fn bipump_translation_invariance() {
        let t = fixtures::line();
        let a = t.tile_set.lookup("A").unwrap();
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), a), tile(pos(1, 0), a)]).unwrap();
        let b = bipump(&p).unwrap();
        let set1: BTreeSet<Tile> = (-100..=100).map(|k| b.at(k).unwrap()).collect();
        let shifted: BTreeSet<Tile> = set1
            .iter()
            .map(|t| tile(t.pos.offset(b.shift()), t.ty))
            .collect();
        // interior elements agree
        for t in shifted {
            if t.pos.x.abs() <= 99 {
                assert!(set1.contains(&t));
            }
        }
    }

    #[test]
    fn pump_errors() {
        let t = fixtures::line();
        let a = t.tile_set.lookup("A").unwrap();
        let single = Path::new(&t.tile_set, vec![tile(pos(0, 0), a)]).unwrap();
        assert_eq!(pump(&single).unwrap_err(), PumpError::TooShort);

        let g = fixtures::comb();
        let b = g.tile_set.lookup("B").unwrap();
        let tt = g.tile_set.lookup("T").unwrap();
        let mixed = Path::new(&g.tile_set, vec![tile(pos(0, 0), b), tile(pos(0, 1), tt)]).unwrap();
        assert_eq!(pump(&mixed).unwrap_err(), PumpError::TypeMismatch);
    }

    #[test]
    fn good_candidate_cases() {
        let t = fixtures::line();
        let a = t.tile_set.lookup("A").unwrap();
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), a), tile(pos(1, 0), a)]).unwrap();
        assert!(is_good_candidate(&p).unwrap());

        // U-shaped path whose translate overlaps its interior: grid tiles,
        // endpoints one step apart, the U re-entering its own translate.
        let g = fixtures::grid();
        let a = g.tile_set.lookup("A").unwrap();
        let u = Path::new(
            &g.tile_set,
            vec![
                tile(pos(0, 0), a),
                tile(pos(0, 1), a),
                tile(pos(1, 1), a),
                tile(pos(2, 1), a),
                tile(pos(2, 0), a),
                tile(pos(1, 0), a),
            ],
        )
        .unwrap();
        // shift = (1,0); brute-force overlap count > 1
        let shift = u.first().pos.to(u.last().pos);
        let pos_set: BTreeSet<Pos> = u.positions().collect();
        let overlaps = u
            .translate(shift)
            .positions()
            .filter(|q| pos_set.contains(q))
            .count();
        assert!(overlaps > 1);
        assert!(!is_good_candidate(&u).unwrap());
    }

    #[test]
    fn pump_between_agrees_with_pump_on_full_range() {
        let mut set = TileSet::new();
        let p = staircase(&mut set);
        let q1 = pump(&p).unwrap();
        let q2 = pump_between(&p, 0, p.len() - 1).unwrap();
        for k in 0..200 {
            assert_eq!(q1.at(k), q2.at(k));
        }
    }

    #[test]
    fn pump_between_prefix_and_seam() {
        let t = fixtures::comb();
        let b = t.tile_set.lookup("B").unwrap();
        let p = Path::new(&t.tile_set, (0..4).map(|x| tile(pos(x, 0), b)).collect()).unwrap();
        let q = pump_between(&p, 1, 2).unwrap();
        assert_eq!(q.at(0).unwrap(), tile(pos(0, 0), b));
        assert_eq!(q.at(1).unwrap(), tile(pos(1, 0), b)); // q_i = P_i
        assert_eq!(q.at(2).unwrap(), tile(pos(2, 0), b));
        // torture identity
        for k in 1..500 {
            let x = q.at(k).unwrap();
            let y = q.at(k + 1).unwrap();
            assert_eq!(y.pos, x.pos.offset(vec2(1, 0)));
        }
    }

    #[test]
    fn extract_without_redundancy_cases() {
        // types [a, b, c, a]: only the endpoints repeat -> (0, 3)
        let t = fixtures::checkerboard();
        let a = t.tile_set.lookup("A").unwrap();
        let b = t.tile_set.lookup("B").unwrap();
        let p = Path::new(
            &t.tile_set,
            vec![
                tile(pos(0, 0), a),
                tile(pos(1, 0), b),
                tile(pos(1, 1), b),
                tile(pos(0, 1), a),
            ],
        )
        .unwrap();
        // type pattern [A, B, B, A]: the first repeat found is (1, 2)
        assert_eq!(extract_without_redundancy(&p, 0, 3), (1, 2));
        let q = Path::new(
            &t.tile_set,
            vec![tile(pos(0, 0), a), tile(pos(1, 0), b), tile(pos(2, 0), a)],
        )
        .unwrap();
        // [A, B, A]: only the endpoints repeat
        assert_eq!(extract_without_redundancy(&q, 0, 2), (0, 2));

        let t = fixtures::comb();
        let b = t.tile_set.lookup("B").unwrap();
        let tt = t.tile_set.lookup("T").unwrap();
        // types [T, B, B, T] flattened around a corner: repeat found at (1,2)
        let p = Path::new(
            &t.tile_set,
            vec![
                tile(pos(0, 1), tt),
                tile(pos(0, 0), b),
                tile(pos(1, 0), b),
                tile(pos(1, 1), tt),
            ],
        )
        .unwrap();
        assert_eq!(extract_without_redundancy(&p, 0, 3), (1, 2));
        // types [B, B]
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), b), tile(pos(1, 0), b)]).unwrap();
        assert_eq!(extract_without_redundancy(&p, 0, 1), (0, 1));
        assert!(is_without_redundancy(&p));
    }

    #[test]
    fn search_pumpable_line_is_bipumpable() {
        let t = fixtures::line();
        let w = Window::centered(10);
        let terminal = grow_to_terminal(&t, w).assembly;
        let a = t.tile_set.lookup("A").unwrap();
        let p = Path::new(
            &t.tile_set,
            vec![tile(pos(1, 0), a), tile(pos(2, 0), a), tile(pos(3, 0), a)],
        )
        .unwrap();
        match search_pumpable(&t, &p, w, 2, 64, &terminal).unwrap() {
            PumpabilityVerdict::BiPumpable { vector, .. } => assert_eq!(vector, vec2(1, 0)),
            other => panic!("expected bi-pumpable, got {other:?}"),
        }
    }

    #[test]
    fn search_pumpable_comb_tooth_is_simply_pumpable() {
        let t = fixtures::comb();
        let w = Window::centered(10);
        let terminal = grow_to_terminal(&t, w).assembly;
        let tt = t.tile_set.lookup("T").unwrap();
        let p = Path::new(
            &t.tile_set,
            vec![
                tile(pos(0, 1), tt),
                tile(pos(0, 2), tt),
                tile(pos(0, 3), tt),
            ],
        )
        .unwrap();
        match search_pumpable(&t, &p, w, 2, 64, &terminal).unwrap() {
            PumpabilityVerdict::SimplyPumpable { vector, .. } => {
                assert_eq!(vector, vec2(0, 1))
            }
            other => panic!("expected simply pumpable, got {other:?}"),
        }
    }

    #[test]
    fn search_pumpable_no_repeat() {
        let t = fixtures::comb();
        let w = Window::centered(10);
        let terminal = grow_to_terminal(&t, w).assembly;
        let b = t.tile_set.lookup("B").unwrap();
        let tt = t.tile_set.lookup("T").unwrap();
        let p = Path::new(&t.tile_set, vec![tile(pos(1, 0), b), tile(pos(1, 1), tt)]).unwrap();
        assert_eq!(
            search_pumpable(&t, &p, w, 2, 64, &terminal).unwrap(),
            PumpabilityVerdict::NotPumpableWithinBound
        );
    }

    #[test]
    fn v_self_avoiding_comb_tooth() {
        let t = fixtures::comb();
        let w = Window::centered(12);
        let terminal = grow_to_terminal(&t, w).assembly;
        let tt = t.tile_set.lookup("T").unwrap();
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 1), tt), tile(pos(0, 2), tt)]).unwrap();
        assert!(is_v_self_avoiding(&p, vec2(1, 0), &terminal, w, 2).unwrap());
        // a path wider than |v| crossing its own translate
        let b = t.tile_set.lookup("B").unwrap();
        let wide = Path::new(
            &t.tile_set,
            vec![tile(pos(0, 0), b), tile(pos(1, 0), b), tile(pos(2, 0), b)],
        )
        .unwrap();
        assert!(!is_v_self_avoiding(&wide, vec2(1, 0), &terminal, w, 2).unwrap());
    }

    #[test]
    fn uv_self_avoiding_cases() {
        let t = fixtures::grid();
        let a = t.tile_set.lookup("A").unwrap();
        let single = Path::new(&t.tile_set, vec![tile(pos(0, 0), a)]).unwrap();
        assert!(is_uv_self_avoiding(&single, vec2(1, 0), vec2(0, 1)).unwrap());
        let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), a), tile(pos(1, 0), a)]).unwrap();
        assert!(is_uv_self_avoiding(&p, vec2(2, 0), vec2(0, 2)).unwrap());
        // length beyond the parallelogram count must collide
        let long = Path::new(&t.tile_set, (0..5).map(|x| tile(pos(x, 0), a)).collect()).unwrap();
        assert!(!is_uv_self_avoiding(&long, vec2(2, 0), vec2(0, 2)).unwrap());
        assert_eq!(
            is_uv_self_avoiding(&p, vec2(1, 0), vec2(2, 0)).unwrap_err(),
            PumpError::Collinear
        );
    }
}
