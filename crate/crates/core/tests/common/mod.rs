//! Test-side oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use surfclust::snakegraph::{BandGraph, Glue, Matching, SnakeGraph};
use surfclust::surface::family::Family;
use surfclust::surface::Edge;

pub const FIXTURES: [(&str, Family); 5] = [
    ("square", Family::Polygon(4)),
    ("pentagon", Family::Polygon(5)),
    ("hexagon", Family::Polygon(6)),
    ("annulus11", Family::Annulus(1, 1)),
    ("annulus22", Family::Annulus(2, 2)),
];

/// Calls `f` on every `k`-subset of `0..n` (as a bitmask).
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u128)) {
    fn go(start: usize, n: usize, left: usize, acc: u128, f: &mut dyn FnMut(u128)) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..=n - left {
            go(i + 1, n, left - 1, acc | 1 << i, f);
        }
    }
    if k <= n {
        go(0, n, k, 0, f);
    }
}

fn covers_once(ends: &[[usize; 2]], verts: usize, set: u128) -> bool {
    let mut seen = vec![false; verts];
    for (i, e) in ends.iter().enumerate() {
        if set >> i & 1 == 1 {
            for &v in e {
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Perfect matchings by trying every edge subset of the right size.
pub fn brute_force_matchings(g: &SnakeGraph) -> BTreeSet<Matching> {
    let ends: Vec<[usize; 2]> = g.edges().iter().map(|e| e.ends).collect();
    let verts = g.vertices().len();
    let mut out = BTreeSet::new();
    for_each_subset(ends.len(), verts / 2, &mut |s| {
        if covers_once(&ends, verts, s) {
            out.insert(Matching(s));
        }
    });
    out
}

/// x-weights of the good matchings of a band graph, computed on the graph obtained by
/// identifying `x ~ x'` and `y ~ y'`, then keeping the matchings that are good:
/// either `x` and `y` are matched to each other, or both are matched on the same side of the cut.
pub fn brute_force_good_weights(band: &BandGraph, n_arcs: usize) -> Vec<Vec<i32>> {
    let g = band.snake();
    let [(x, x2), (y, y2)] = band.glued_vertices();
    let (cut, cut2) = band.cut_edges();
    let verts = g.vertices().len();
    let mut rename: Vec<usize> = (0..verts).collect();
    rename[x2] = x;
    rename[y2] = y;
    let mut compact = vec![usize::MAX; verts];
    let mut next = 0;
    for v in 0..verts {
        if rename[v] == v {
            compact[v] = next;
            next += 1;
        }
    }
    let kept: Vec<usize> = (0..g.edges().len()).filter(|&e| e != cut2).collect();
    let ends: Vec<[usize; 2]> = kept.iter().map(|&e| g.edges()[e].ends.map(|v| compact[rename[v]])).collect();
    let mut out = Vec::new();
    for_each_subset(ends.len(), next / 2, &mut |s| {
        if !covers_once(&ends, next, s) {
            return;
        }
        let chosen: Vec<usize> = (0..kept.len()).filter(|&i| s >> i & 1 == 1).map(|i| kept[i]).collect();
        let side = |a: usize, b: usize| {
            let e = chosen.iter().find(|&&e| g.edges()[e].ends.contains(&a) || g.edges()[e].ends.contains(&b)).unwrap();
            g.edges()[*e].ends.contains(&a)
        };
        let good = chosen.contains(&cut) || side(x, x2) == side(y, y2);
        if good {
            let mut w = vec![0; n_arcs];
            for &e in &chosen {
                if let Edge::Arc(a) = g.edges()[e].label {
                    w[a] += 1;
                }
            }
            out.push(w);
        }
    });
    out.sort();
    out
}

/// Every glue sequence for snake graphs with `1..=max` tiles.
pub fn abstract_shapes(max: usize) -> Vec<Vec<Glue>> {
    let mut out = Vec::new();
    for d in 1..=max {
        for bits in 0..1u32 << (d - 1) {
            out.push((0..d - 1).map(|i| if bits >> i & 1 == 1 { Glue::Above } else { Glue::Right }).collect());
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Twist lattice against brute force, heights against order ideals, covers and twist parity.
pub fn check_snake(g: &SnakeGraph, what: &str) -> Result<(), String> {
    let lattice = g.lattice();
    let by_twists: BTreeSet<_> = lattice.matchings.iter().copied().collect();
    ensure(by_twists.len() == lattice.len(), || format!("{what}: duplicate matchings"))?;
    let brute = brute_force_matchings(g);
    ensure(by_twists == brute, || format!("{what}: {} by twists, {} by brute force", by_twists.len(), brute.len()))?;
    ensure(lattice.matchings[0] == g.minimal_matching(), || format!("{what}: lattice does not start at the minimum"))?;
    let poset = g.poset();
    ensure(poset.is_acyclic(), || format!("{what}: cyclic poset"))?;
    let ideals: BTreeSet<Vec<usize>> = poset.order_ideals().into_iter().collect();
    let heights: BTreeSet<Vec<usize>> = lattice.heights.iter().cloned().collect();
    ensure(heights.len() == lattice.len(), || format!("{what}: heights not injective"))?;
    ensure(heights == ideals, || format!("{what}: heights are not the order ideals"))?;
    ensure(g.height(g.maximal_matching()) == (0..g.len()).collect::<Vec<_>>(), || format!("{what}: maximum height"))?;
    for c in &lattice.covers {
        ensure(g.twist(lattice.matchings[c.lower], c.tile) == Some(lattice.matchings[c.upper]), || {
            format!("{what}: cover {c:?} is not a twist")
        })?;
        let mut h = lattice.heights[c.lower].clone();
        h.push(c.tile);
        h.sort();
        ensure(h == lattice.heights[c.upper], || format!("{what}: cover {c:?} changes height wrongly"))?;
    }
    // Hasse diagram of the inclusion order on ideals.
    let mut hasse = 0;
    for a in &heights {
        for b in &heights {
            if b.len() == a.len() + 1 && a.iter().all(|t| b.contains(t)) {
                hasse += 1;
            }
        }
    }
    ensure(lattice.covers.len() == hasse, || format!("{what}: {} covers, {hasse} Hasse edges", lattice.covers.len()))?;
    let parity = g.verify_twist_parity(&lattice);
    ensure(parity.passed(), || format!("{what}: {parity:?}"))
}

/// Good matchings against the quotient-graph oracle and the order ideals of the band poset.
pub fn check_band(band: &BandGraph, n: usize, what: &str) -> Result<(), String> {
    let good = band.good_lattice();
    let poset = band.poset().map_err(|e| format!("{what}: {e}"))?;
    let ideals: BTreeSet<Vec<usize>> = poset.order_ideals().into_iter().collect();
    let heights: BTreeSet<Vec<usize>> = good.heights.iter().cloned().collect();
    ensure(heights == ideals, || format!("{what}: {} good matchings, {} ideals", heights.len(), ideals.len()))?;
    ensure(band.descends(band.snake().minimal_matching()), || format!("{what}: minimal matching does not descend"))?;
    let mut weights: Vec<Vec<i32>> = good.matchings.iter().map(|&m| band.weight(m, n)).collect();
    weights.sort();
    ensure(weights == brute_force_good_weights(band, n), || format!("{what}: weights differ from the quotient graph"))
}
