//! Property checks tying the pumping and geometry machinery to the growth
//! oracle on the built-in fixtures.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use noncoop::fixtures;
use noncoop::geometry::{closed_interior, curve_of_bipump_path, PolyCurve};
use noncoop::model::{
    grow_to_terminal, grow_with, is_tau_stable, pos, tile, vec2, Pos, Tile, Window,
};
use noncoop::path::{grows_on, Path};
use noncoop::pumping::{
    bipump, is_good_candidate, is_v_self_avoiding, is_without_redundancy, pump,
};

/// Each attachment adds one tile and keeps the assembly stable at tau = 1.
#[test]
fn growth_is_monotone_and_stable_stepwise() {
    let t = fixtures::comb();
    let w = Window::centered(4);
    let mut sizes = vec![t.seed.len()];
    let mut stable = true;
    let growth = grow_with(&t, w, |frontier, set| {
        frontier
            .iter()
            .min_by_key(|s| (s.site.pos.yx(), set.name(s.site.ty).to_string()))
            .cloned()
    });
    // Replay the recorded order and check stability after every step.
    let mut order: Vec<(usize, Pos)> = growth.order.iter().map(|(&p, &gen)| (gen, p)).collect();
    order.sort();
    let mut partial = t.seed.clone();
    for (_, p) in order {
        partial.insert(tile(p, growth.assembly.get(p).unwrap()));
        sizes.push(partial.len());
        stable &= is_tau_stable(&t.tile_set, &partial, 1);
    }
    assert!(stable);
    assert!(sizes.windows(2).all(|w| w[1] == w[0] + 1));
    assert!(t.seed.subassembly_of(&growth.assembly));
}

/// Either a growth intersects its own translate, or every translate grows
/// on the pump (the growth dichotomy on simply pumpable paths).
#[test]
fn growth_dichotomy_on_comb() {
    let t = fixtures::comb();
    let w = Window::centered(10);
    let terminal = grow_to_terminal(&t, w).assembly;
    let b = t.tile_set.lookup("B").unwrap();
    let tt = t.tile_set.lookup("T").unwrap();

    let backbone = Path::new(&t.tile_set, (0..4).map(|x| tile(pos(x, 0), b)).collect()).unwrap();
    let q = pump(&backbone.sub(0, 1)).unwrap();
    let v = q.shift();

    // A tooth column growing on the pump at index >= |P| - 1.
    for anchor in 1..5 {
        let tooth = Path::new(
            &t.tile_set,
            vec![
                tile(pos(anchor, 0), b),
                tile(pos(anchor, 1), tt),
                tile(pos(anchor, 2), tt),
            ],
        )
        .unwrap();
        let pump_path =
            Path::new(&t.tile_set, (0..8).map(|x| tile(pos(x, 0), b)).collect()).unwrap();
        assert!(grows_on(&tooth, &pump_path).is_some());
        // Dichotomy: the tooth meets none of its own translates, so every
        // translate inside the window must grow on the pump.
        let positions: BTreeSet<Pos> = tooth.positions().collect();
        let self_meets = (1..5).any(|ell| {
            tooth
                .translate(v.scale(ell))
                .positions()
                .any(|p| positions.contains(&p))
        });
        assert!(!self_meets);
        for ell in 1..4 {
            let shifted = tooth.translate(v.scale(ell));
            assert!(
                shifted.iter().all(|x| terminal.get(x.pos) == Some(x.ty)),
                "translate {ell} must be a path of the terminal assembly"
            );
        }
    }
}

/// Growths on a simply pumpable path are v-self-avoiding for the pumping
/// vector.
#[test]
fn growths_on_pump_are_v_self_avoiding() {
    let t = fixtures::comb();
    let w = Window::centered(12);
    let terminal = grow_to_terminal(&t, w).assembly;
    let tt = t.tile_set.lookup("T").unwrap();
    for x in -2..=2 {
        let tooth = Path::new(&t.tile_set, (1..4).map(|y| tile(pos(x, y), tt)).collect()).unwrap();
        assert!(is_v_self_avoiding(&tooth, vec2(1, 0), &terminal, w, 2).unwrap());
    }
}

/// Redundancy-free paths of the terminal assembly whose endpoint-vector
/// translate also lies in the terminal assembly are good candidates.
#[test]
fn redundancy_free_translated_paths_are_good_candidates() {
    let mut rng = StdRng::seed_from_u64(0x900d);
    for t in [fixtures::grid(), fixtures::checkerboard()] {
        let w = Window::centered(8);
        let terminal = grow_to_terminal(&t, w).assembly;
        let tiles: Vec<Tile> = terminal.iter().collect();
        let mut found = 0;
        while found < 50 {
            // Random short path of the terminal assembly.
            let start = tiles[rng.gen_range(0..tiles.len())];
            let mut path_tiles = vec![start];
            let mut seen: BTreeSet<Pos> = [start.pos].into();
            let len = rng.gen_range(2..=5);
            for _ in 1..len {
                let cur = *path_tiles.last().unwrap();
                let opts: Vec<Tile> = cur
                    .pos
                    .neighbors()
                    .into_iter()
                    .filter(|p| !seen.contains(p))
                    .filter_map(|p| terminal.get(p).map(|ty| tile(p, ty)))
                    .filter(|cand| t.tile_set.interacts(cur.pos, cur.ty, cand.pos, cand.ty))
                    .collect();
                if opts.is_empty() {
                    break;
                }
                let nxt = opts[rng.gen_range(0..opts.len())];
                seen.insert(nxt.pos);
                path_tiles.push(nxt);
            }
            if path_tiles.len() < 2 {
                continue;
            }
            let Ok(p) = Path::new(&t.tile_set, path_tiles) else {
                continue;
            };
            if p.first().ty != p.last().ty || p.first().pos == p.last().pos {
                continue;
            }
            if !is_without_redundancy(&p) {
                continue;
            }
            let shift = p.first().pos.to(p.last().pos);
            let translated = p.translate(shift);
            let in_terminal = translated.iter().all(|x| terminal.get(x.pos) == Some(x.ty));
            if !in_terminal {
                continue;
            }
            assert!(
                is_good_candidate(&p).unwrap(),
                "redundancy-free translated path must be a good candidate"
            );
            found += 1;
        }
    }
}

/// On bi-periodic fixtures, a bipump only meets its own translate when the
/// translate is a multiple of the pumping vector.
#[test]
fn bipump_intersection_forces_collinear_translate() {
    let t = fixtures::grid();
    let a = t.tile_set.lookup("A").unwrap();
    let p = Path::new(&t.tile_set, vec![tile(pos(0, 0), a), tile(pos(1, 0), a)]).unwrap();
    assert!(is_without_redundancy(&p));
    let q = bipump(&p).unwrap();
    let positions: BTreeSet<Pos> = (-40..=40).map(|k| q.at(k).unwrap().pos).collect();
    for vx in -4..=4i64 {
        for vy in -4..=4i64 {
            if vx == 0 && vy == 0 {
                continue;
            }
            let intersects = positions
                .iter()
                .any(|&x| positions.contains(&pos(x.x + vx, x.y + vy)));
            if intersects {
                assert_eq!(vy, 0, "({vx},{vy}) meets the bipump but is not collinear");
            }
        }
    }
}

/// On simply periodic fixtures, the tile types of a redundancy-free
/// bi-pumpable path never recur off its bipump.
#[test]
fn bipumpable_types_stay_on_their_bipump() {
    for (t, radius) in [(fixtures::comb(), 10), (fixtures::two_rows(), 10)] {
        let w = Window::centered(radius);
        let margin = 3;
        let terminal = grow_to_terminal(&t, w).assembly;
        let (p_plus, p_minus) =
            noncoop::decompose::find_extremal_bipumpables(&t, w, margin, 64).unwrap();
        for path in [&p_plus, &p_minus] {
            let curve = curve_of_bipump_path(path).unwrap();
            let types: BTreeSet<_> = path.iter().map(|x| x.ty).collect();
            let inner = w.inner(margin);
            for tl in terminal.iter() {
                if !inner.contains(tl.pos) || !types.contains(&tl.ty) {
                    continue;
                }
                assert!(
                    curve.contains_lattice(tl.pos),
                    "type of an extremal path recurs off its bipump at {}",
                    tl.pos
                );
            }
        }
    }
}

/// Independent even-odd oracle with a vertical ray; agrees with the
/// horizontal-ray implementation on random rectilinear simple cycles.
fn interior_oracle_vertical(c: &PolyCurve) -> BTreeSet<Pos> {
    let verts = c.vertices();
    let on: BTreeSet<Pos> = verts.iter().copied().collect();
    let min_x = verts.iter().map(|p| p.x).min().unwrap();
    let max_x = verts.iter().map(|p| p.x).max().unwrap();
    let min_y = verts.iter().map(|p| p.y).min().unwrap();
    let max_y = verts.iter().map(|p| p.y).max().unwrap();
    let mut out = BTreeSet::new();
    for x in min_x..=max_x {
        for y in min_y..=max_y {
            let p = pos(x, y);
            if on.contains(&p) {
                out.insert(p);
                continue;
            }
            let mut crossings = 0u64;
            for w in verts.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a.y != b.y {
                    continue; // vertical segment: tangential to a vertical ray
                }
                if a.y <= y {
                    continue;
                }
                let (xl, xr) = (a.x.min(b.x), a.x.max(b.x));
                if xl <= x && x < xr {
                    crossings += 1;
                }
            }
            if crossings % 2 == 1 {
                out.insert(p);
            }
        }
    }
    out
}

fn random_cycle(rng: &mut StdRng) -> Option<PolyCurve> {
    let mut verts = vec![pos(0, 0)];
    let mut seen: BTreeSet<Pos> = [pos(0, 0)].into();
    for step in 0..40 {
        let cur = *verts.last().unwrap();
        let opts: Vec<Pos> = cur
            .neighbors()
            .into_iter()
            .filter(|p| *p == pos(0, 0) || !seen.contains(p))
            .collect();
        if opts.is_empty() {
            return None;
        }
        let nxt = opts[rng.gen_range(0..opts.len())];
        verts.push(nxt);
        if nxt == pos(0, 0) {
            if step >= 3 {
                return PolyCurve::new(verts).ok();
            }
            return None;
        }
        seen.insert(nxt);
    }
    None
}

#[test]
fn closed_interior_agrees_with_vertical_ray_oracle() {
    let mut rng = StdRng::seed_from_u64(0x0dd);
    let mut done = 0;
    while done < 200 {
        let Some(c) = random_cycle(&mut rng) else {
            continue;
        };
        if !c.is_closed() || !c.is_simple() {
            continue;
        }
        let ours = closed_interior(&c).unwrap();
        let oracle = interior_oracle_vertical(&c);
        assert_eq!(ours, oracle, "cycle {:?}", c.vertices());
        done += 1;
    }
}

/// The window band between translated curves covers each direction orbit
/// exactly once (checked on the comb band).
#[test]
fn comb_band_is_a_fundamental_domain() {
    let t = fixtures::comb();
    let w = Window::centered(12);
    let margin = 3;
    let (p_plus, p_minus) =
        noncoop::decompose::find_extremal_bipumpables(&t, w, margin, 64).unwrap();
    let band = noncoop::geometry::interior_of_two_curves(
        &curve_of_bipump_path(&p_plus).unwrap(),
        &curve_of_bipump_path(&p_minus).unwrap(),
    )
    .unwrap();
    // One backbone tile per period.
    assert_eq!(band.len(), 1);
    let terminal = grow_to_terminal(&t, w).assembly;
    let b = t.tile_set.lookup("B").unwrap();
    let tile0 = band.iter().next().copied().unwrap();
    assert_eq!(terminal.get(tile0), Some(b));
}
