//! Snake graphs of arcs, band graphs of closed loops, their perfect matchings,
//! twist lattices and the posets whose order ideals index them.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::surface::{CurveWord, Edge, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnakeError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("curve crosses no arcs")]
    Empty,
    #[error("{0} tiles exceed the supported maximum of {MAX_TILES}")]
    TooLarge(usize),
    #[error("shared edge between tiles {0} and {1} carries two labels")]
    LabelClash(usize, usize),
    #[error("expected an open word")]
    NotOpen,
    #[error("expected a closed word of length at least 2")]
    NotClosed,
    #[error("cut edge placement: {0}")]
    Cut(String),
    #[error("poset relations contain a cycle")]
    Cyclic,
}

pub const MAX_TILES: usize = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    N,
    E,
    S,
    W,
}

pub const SIDES: [Side; 4] = [Side::N, Side::E, Side::S, Side::W];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Glue {
    Right,
    Above,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tile {
    /// 1-based position along the curve.
    pub index: usize,
    pub diagonal: Edge,
    /// Labels in the order N, E, S, W.
    pub sides: [Edge; 4],
    pub rel: i8,
    /// Lower-left corner in the plane.
    pub origin: (i32, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub ends: [usize; 2],
    pub label: Edge,
    pub horizontal: bool,
    /// 0-based tiles having this edge as a side.
    pub tiles: Vec<usize>,
}

/// A set of graph edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching(pub u128);

impl Matching {
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Matching {
        Matching(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Matching {
        Matching(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn edges(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&e| self.contains(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeGraph {
    tiles: Vec<Tile>,
    glue: Vec<Glue>,
    glue_labels: Vec<Edge>,
    vertices: Vec<(i32, i32)>,
    edges: Vec<GraphEdge>,
    tile_edges: Vec<[usize; 4]>,
    incidence: Vec<u128>,
    below: Vec<u128>,
}

fn segment(origin: (i32, i32), side: Side) -> ((i32, i32), (i32, i32)) {
    let (x, y) = origin;
    match side {
        Side::N => ((x, y + 1), (x + 1, y + 1)),
        Side::E => ((x + 1, y), (x + 1, y + 1)),
        Side::S => ((x, y), (x + 1, y)),
        Side::W => ((x, y), (x, y + 1)),
    }
}

impl SnakeGraph {
    /// Snake graph of an open word (or of the open word cut from a loop).
    pub fn build(t: &Triangulation, w: &CurveWord) -> Result<SnakeGraph, SnakeError> {
        match w {
            CurveWord::Open { crossings, triangles } => Self::from_triangles(t, crossings, triangles),
            CurveWord::Segment(_) => Err(SnakeError::Empty),
            CurveWord::Closed { .. } => Err(SnakeError::NotOpen),
        }
    }

    /// Tiles for crossings `c_1..c_d`, where `triangles[j]` precedes crossing `j`.
    pub fn from_triangles(
        t: &Triangulation,
        crossings: &[usize],
        triangles: &[usize],
    ) -> Result<SnakeGraph, SnakeError> {
        let d = crossings.len();
        if d == 0 {
            return Err(SnakeError::Empty);
        }
        if triangles.len() != d + 1 {
            return Err(SurfaceError::InvalidWord("triangle list does not match crossings".into()).into());
        }
        let mut tiles = Vec::with_capacity(d);
        let mut glue = Vec::with_capacity(d.saturating_sub(1));
        let mut glue_labels = Vec::new();
        for j in 0..d {
            let tau = Edge::Arc(crossings[j]);
            let (before, after) = (triangles[j], triangles[j + 1]);
            if !t.contains(before, tau) || !t.contains(after, tau) || before == after {
                return Err(
                    SurfaceError::InvalidWord(format!("crossing {} does not separate its triangles", j + 1)).into()
                );
            }
            let [_, a, b] = t.rotated(before, tau);
            let [_, c, e] = t.rotated(after, tau);
            let rel: i8 = if j % 2 == 0 { 1 } else { -1 };
            let sides = if rel == 1 { [c, e, a, b] } else { [e, c, b, a] };
            tiles.push(Tile { index: j + 1, diagonal: tau, sides, rel, origin: (0, 0) });
            if j + 1 < d {
                let next = Edge::Arc(crossings[j + 1]);
                let third = [c, e]
                    .into_iter()
                    .find(|&s| s != next)
                    .ok_or_else(|| SurfaceError::InvalidWord(format!("crossings {} and {} coincide", j + 1, j + 2)))?;
                if c != next && e != next {
                    return Err(SurfaceError::InvalidWord(format!(
                        "crossings {} and {} share no triangle",
                        j + 1,
                        j + 2
                    ))
                    .into());
                }
                glue.push(if sides[1] == third { Glue::Right } else { Glue::Above });
                glue_labels.push(third);
            }
        }
        Self::assemble(tiles, glue, glue_labels)
    }

    /// An unlabeled snake graph of the given shape; tile `j` has diagonal `Arc(j)`.
    pub fn from_shape(glue: &[Glue]) -> Result<SnakeGraph, SnakeError> {
        let d = glue.len() + 1;
        let b = Edge::Boundary(0);
        let tiles = (0..d)
            .map(|j| Tile {
                index: j + 1,
                diagonal: Edge::Arc(j),
                sides: [b; 4],
                rel: if j % 2 == 0 { 1 } else { -1 },
                origin: (0, 0),
            })
            .collect();
        Self::assemble(tiles, glue.to_vec(), vec![b; glue.len()])
    }

    fn assemble(mut tiles: Vec<Tile>, glue: Vec<Glue>, glue_labels: Vec<Edge>) -> Result<SnakeGraph, SnakeError> {
        let d = tiles.len();
        if d > MAX_TILES {
            return Err(SnakeError::TooLarge(d));
        }
        let mut pos = (0, 0);
        for j in 0..d {
            tiles[j].origin = pos;
            if j + 1 < d {
                pos = match glue[j] {
                    Glue::Right => (pos.0 + 1, pos.1),
                    Glue::Above => (pos.0, pos.1 + 1),
                };
            }
        }
        let mut vertices = Vec::new();
        let mut vidx: HashMap<(i32, i32), usize> = HashMap::new();
        let mut eidx: HashMap<((i32, i32), (i32, i32)), usize> = HashMap::new();
        let mut edges: Vec<GraphEdge> = Vec::new();
        let mut tile_edges = Vec::with_capacity(d);
        for (j, tile) in tiles.iter().enumerate() {
            let mut ids = [0; 4];
            for (k, side) in SIDES.into_iter().enumerate() {
                let seg = segment(tile.origin, side);
                let mut vid = |p: (i32, i32)| {
                    *vidx.entry(p).or_insert_with(|| {
                        vertices.push(p);
                        vertices.len() - 1
                    })
                };
                let ends = [vid(seg.0), vid(seg.1)];
                let id = match eidx.get(&seg) {
                    Some(&id) => {
                        if edges[id].label != tile.sides[k] {
                            return Err(SnakeError::LabelClash(edges[id].tiles[0] + 1, j + 1));
                        }
                        edges[id].tiles.push(j);
                        id
                    }
                    None => {
                        edges.push(GraphEdge {
                            ends,
                            label: tile.sides[k],
                            horizontal: matches!(side, Side::N | Side::S),
                            tiles: vec![j],
                        });
                        eidx.insert(seg, edges.len() - 1);
                        edges.len() - 1
                    }
                };
                ids[k] = id;
            }
            tile_edges.push(ids);
        }
        let mut incidence = vec![0u128; vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            for v in e.ends {
                incidence[v] |= 1 << i;
            }
        }
        let below = tiles
            .iter()
            .map(|t| {
                let (x, y) = t.origin;
                edges.iter().enumerate().fold(0u128, |m, (i, e)| {
                    let (p, q) = (vertices[e.ends[0]], vertices[e.ends[1]]);
                    if e.horizontal && p.0.min(q.0) == x && p.1 <= y {
                        m | 1 << i
                    } else {
                        m
                    }
                })
            })
            .collect();
        Ok(SnakeGraph { tiles, glue, glue_labels, vertices, edges, tile_edges, incidence, below })
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn glue(&self) -> &[Glue] {
        &self.glue
    }

    pub fn glue_labels(&self) -> &[Edge] {
        &self.glue_labels
    }

    pub fn vertices(&self) -> &[(i32, i32)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Edge index of a side of a 0-based tile.
    pub fn side_edge(&self, tile: usize, side: Side) -> usize {
        let k = SIDES.iter().position(|&s| s == side).unwrap();
        self.tile_edges[tile][k]
    }

    pub fn vertex_at(&self, p: (i32, i32)) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    pub fn is_perfect(&self, m: Matching) -> bool {
        self.incidence.iter().all(|&inc| (inc & m.0).count_ones() == 1)
    }

    /// The two matchings using only boundary edges, as (minimal, maximal).
    pub fn boundary_matchings(&self) -> (Matching, Matching) {
        let boundary: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].tiles.len() == 1).collect();
        let start = self.side_edge(0, Side::S);
        let mut classes = [Matching::default(), Matching::default()];
        let mut cur = start;
        let mut at = self.edges[start].ends[1];
        let mut parity = 0;
        loop {
            classes[parity] = classes[parity].with(cur);
            let next = boundary
                .iter()
                .copied()
                .find(|&e| e != cur && self.edges[e].ends.contains(&at))
                .expect("boundary is a cycle");
            if next == start {
                break;
            }
            at = if self.edges[next].ends[0] == at { self.edges[next].ends[1] } else { self.edges[next].ends[0] };
            cur = next;
            parity ^= 1;
        }
        debug_assert_eq!(classes[0].len() + classes[1].len(), 2 * self.len() + 2);
        (classes[0], classes[1])
    }

    pub fn minimal_matching(&self) -> Matching {
        self.boundary_matchings().0
    }

    pub fn maximal_matching(&self) -> Matching {
        self.boundary_matchings().1
    }

    /// Tiles (0-based) enclosed by the cycles of `m` symmetric-difference the minimal matching.
    pub fn height(&self, m: Matching) -> Vec<usize> {
        self.height_against(m, self.minimal_matching())
    }

    fn height_against(&self, m: Matching, base: Matching) -> Vec<usize> {
        let diff = m.0 ^ base.0;
        (0..self.len()).filter(|&t| (diff & self.below[t]).count_ones() % 2 == 1).collect()
    }

    /// Apply a twist on a 0-based tile if its four sides allow it.
    pub fn twist(&self, m: Matching, tile: usize) -> Option<Matching> {
        let [n, e, s, w] = self.tile_edges[tile];
        let hv = |a: usize, b: usize| m.contains(a) && m.contains(b);
        if hv(n, s) {
            Some(m.without(n).without(s).with(e).with(w))
        } else if hv(e, w) {
            Some(m.without(e).without(w).with(n).with(s))
        } else {
            None
        }
    }

    /// Perfect matchings by twist closure from the minimal matching.
    pub fn lattice(&self) -> MatchingLattice {
        let pm = self.minimal_matching();
        let mut index: HashMap<Matching, usize> = HashMap::new();
        let mut matchings = vec![pm];
        let mut heights = vec![Vec::new()];
        let mut covers = Vec::new();
        index.insert(pm, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let m = matchings[i];
            for t in 0..self.len() {
                let Some(next) = self.twist(m, t) else {
                    continue;
                };
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        matchings.push(next);
                        heights.push(self.height_against(next, pm));
                        index.insert(next, matchings.len() - 1);
                        queue.push_back(matchings.len() - 1);
                        matchings.len() - 1
                    }
                };
                if heights[j].contains(&t) && !heights[i].contains(&t) {
                    covers.push(Cover { lower: i, upper: j, tile: t });
                }
            }
        }
        covers.sort_by_key(|c| (c.lower, c.upper));
        covers.dedup();
        MatchingLattice { matchings, heights, covers }
    }

    /// Check the twist-parity rule on every cover edge of a lattice.
    pub fn verify_twist_parity(&self, lattice: &MatchingLattice) -> ParityReport {
        let mut failures = Vec::new();
        for c in &lattice.covers {
            let lower = lattice.matchings[c.lower];
            let [n, e, s, w] = self.tile_edges[c.tile];
            let odd = c.tile % 2 == 0;
            let ok = if odd { lower.contains(n) && lower.contains(s) } else { lower.contains(e) && lower.contains(w) };
            if !ok {
                failures.push(*c);
            }
        }
        ParityReport { checked: lattice.covers.len(), failures }
    }

    /// Poset on tiles whose order ideals index the perfect matchings.
    pub fn poset(&self) -> MatchingPoset {
        let d = self.len();
        let mut relations = Vec::new();
        let mut up = false;
        for i in 0..d.saturating_sub(1) {
            up = if i == 0 {
                self.glue[0] == Glue::Right
            } else if self.glue[i - 1] != self.glue[i] {
                up
            } else {
                !up
            };
            relations.push(if up { (i, i + 1) } else { (i + 1, i) });
        }
        MatchingPoset { size: d, relations }
    }

    /// x-exponents of `m` in a context of `n_arcs` arcs (boundary edges have weight 1).
    pub fn weight(&self, m: Matching, n_arcs: usize) -> Vec<i32> {
        let mut e = vec![0; n_arcs];
        for i in m.edges() {
            if let Edge::Arc(a) = self.edges[i].label {
                e[a] += 1;
            }
        }
        e
    }

    /// y-exponents of a height set.
    pub fn height_exponents(&self, tiles: &[usize], n_arcs: usize) -> Vec<i32> {
        let mut e = vec![0; n_arcs];
        for &t in tiles {
            if let Edge::Arc(a) = self.tiles[t].diagonal {
                e[a] += 1;
            }
        }
        e
    }

    pub fn to_dot(&self, name: &dyn Fn(Edge) -> String, highlight: Option<Matching>) -> String {
        let mut s = String::from("graph snake {\n  node [shape=point];\n");
        for (i, &(x, y)) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [pos=\"{x},{y}!\"];");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let bold = if highlight.is_some_and(|m| m.contains(i)) { ", penwidth=3" } else { "" };
            let _ = writeln!(s, "  v{} -- v{} [label=\"{}\"{bold}];", e.ends[0], e.ends[1], name(e.label));
        }
        for t in &self.tiles {
            let (x, y) = t.origin;
            let _ = writeln!(
                s,
                "  d{} [shape=plaintext, label=\"{}\", pos=\"{}.5,{}.5!\"];",
                t.index,
                name(t.diagonal),
                x,
                y
            );
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    /// 0-based tile twisted.
    pub tile: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingLattice {
    /// `matchings[0]` is the minimal matching.
    pub matchings: Vec<Matching>,
    /// Enclosed tiles (0-based, sorted) of each matching.
    pub heights: Vec<Vec<usize>>,
    pub covers: Vec<Cover>,
}

impl MatchingLattice {
    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    /// Keep only the listed matchings (by index) and the covers among them.
    pub fn restrict(&self, keep: &[usize]) -> MatchingLattice {
        let map: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        MatchingLattice {
            matchings: keep.iter().map(|&i| self.matchings[i]).collect(),
            heights: keep.iter().map(|&i| self.heights[i].clone()).collect(),
            covers: self
                .covers
                .iter()
                .filter_map(|c| Some(Cover { lower: *map.get(&c.lower)?, upper: *map.get(&c.upper)?, tile: c.tile }))
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, h) in self.heights.iter().enumerate() {
            let label: Vec<String> = h.iter().map(|t| (t + 1).to_string()).collect();
            let _ = writeln!(s, "  m{i} [label=\"{{{}}}\"];", label.join(","));
        }
        for c in &self.covers {
            let _ = writeln!(s, "  m{} -> m{} [label=\"{}\"];", c.lower, c.upper, c.tile + 1);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub checked: usize,
    pub failures: Vec<Cover>,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A finite poset on `0..size` given by cover relations `(a, b)` meaning `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingPoset {
    pub size: usize,
    pub relations: Vec<(usize, usize)>,
}

impl MatchingPoset {
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0; self.size];
        for &(_, b) in &self.relations {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..self.size).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.relations {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        seen == self.size
    }

    pub fn is_ideal(&self, set: &[usize]) -> bool {
        self.relations.iter().all(|&(a, b)| !set.contains(&b) || set.contains(&a))
    }

    /// All order ideals, each sorted, in lexicographic order of membership bits.
    pub fn order_ideals(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![false; self.size];
        self.ideals_from(0, &mut cur, &mut out);
        out
    }

    fn ideals_from(&self, i: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == self.size {
            out.push((0..self.size).filter(|&k| cur[k]).collect());
            return;
        }
        for choice in [false, true] {
            cur[i] = choice;
            let ok = self.relations.iter().all(|&(a, b)| {
                let decided = a <= i && b <= i;
                !decided || !cur[b] || cur[a]
            });
            if ok {
                self.ideals_from(i + 1, cur, out);
            }
        }
        cur[i] = false;
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for v in 0..self.size {
            let _ = writeln!(s, "  t{} [label=\"{}\"];", v + 1, v + 1);
        }
        for &(a, b) in &self.relations {
            let _ = writeln!(s, "  t{} -> t{};", a + 1, b + 1);
        }
        s.push_str("}\n");
        s
    }
}

/// Which side of the first tile carries the cut edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CutSide {
    South,
    West,
}

/// The snake graph of a loop cut open at a triangle, with the cut recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandGraph {
    snake: SnakeGraph,
    cut_label: Edge,
    first_cut: usize,
    last_cut: usize,
    x: usize,
    y: usize,
    x2: usize,
    y2: usize,
    cut_side: CutSide,
    extra: (usize, usize),
}

impl BandGraph {
    /// Band graph of a closed word, cut at its first triangle.
    pub fn build(t: &Triangulation, w: &CurveWord) -> Result<BandGraph, SnakeError> {
        let CurveWord::Closed { crossings, triangles } = w else {
            return Err(SnakeError::NotClosed);
        };
        let d = crossings.len();
        if d < 2 || crossings[0] == crossings[d - 1] {
            return Err(SnakeError::NotClosed);
        }
        let mut tris = triangles.clone();
        tris.push(triangles[0]);
        let snake = SnakeGraph::from_triangles(t, crossings, &tris)?;
        let (first, last) = (Edge::Arc(crossings[0]), Edge::Arc(crossings[d - 1]));
        let start = t.triangles()[triangles[0]];
        let cut_label = *start
            .iter()
            .find(|&&e| e != first && e != last)
            .ok_or_else(|| SnakeError::Cut("start triangle lacks a third side".into()))?;
        let tile1 = &snake.tiles[0];
        let (first_cut, cut_side) = if tile1.sides[2] == cut_label {
            (snake.side_edge(0, Side::S), CutSide::South)
        } else if tile1.sides[3] == cut_label {
            (snake.side_edge(0, Side::W), CutSide::West)
        } else {
            return Err(SnakeError::Cut("first tile has no cut side".into()));
        };
        let tiled = &snake.tiles[d - 1];
        let last_cut = if tiled.sides[0] == cut_label {
            snake.side_edge(d - 1, Side::N)
        } else if tiled.sides[1] == cut_label {
            snake.side_edge(d - 1, Side::E)
        } else {
            return Err(SnakeError::Cut("last tile has no cut side".into()));
        };
        let x = snake.vertex_at(tile1.origin).unwrap();
        let (ox, oy) = tiled.origin;
        let x2 = snake.vertex_at((ox + 1, oy + 1)).unwrap();
        let other = |e: usize, v: usize| {
            let ends = snake.edges[e].ends;
            if ends[0] == v {
                ends[1]
            } else {
                ends[0]
            }
        };
        let (y, y2) = (other(first_cut, x), other(last_cut, x2));
        let pm = snake.minimal_matching();
        let extra = match (cut_side, pm.contains(last_cut)) {
            (CutSide::South, false) => (d - 1, 0),
            (CutSide::West, true) => (0, d - 1),
            (side, has) => {
                return Err(SnakeError::Cut(format!(
                    "minimal matching with cut on {side:?} side {} the last cut edge",
                    if has { "contains" } else { "omits" }
                )))
            }
        };
        Ok(BandGraph { snake, cut_label, first_cut, last_cut, x, y, x2, y2, cut_side, extra })
    }

    pub fn snake(&self) -> &SnakeGraph {
        &self.snake
    }

    pub fn len(&self) -> usize {
        self.snake.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snake.is_empty()
    }

    pub fn cut_label(&self) -> Edge {
        self.cut_label
    }

    /// Edge indices (in the snake graph) of the cut edge in the first and last tile.
    pub fn cut_edges(&self) -> (usize, usize) {
        (self.first_cut, self.last_cut)
    }

    /// Vertices `x, y` of the first tile and `x', y'` of the last.
    pub fn glued_vertices(&self) -> [(usize, usize); 2] {
        [(self.x, self.x2), (self.y, self.y2)]
    }

    pub fn cut_side(&self) -> CutSide {
        self.cut_side
    }

    /// Whether a perfect matching of the cut snake graph descends to a good matching.
    pub fn descends(&self, m: Matching) -> bool {
        m.contains(self.first_cut) || m.contains(self.last_cut)
    }

    /// Good matchings as a sublattice of the snake lattice.
    pub fn good_lattice(&self) -> MatchingLattice {
        let full = self.snake.lattice();
        let keep: Vec<usize> = (0..full.len()).filter(|&i| self.descends(full.matchings[i])).collect();
        full.restrict(&keep)
    }

    pub fn poset(&self) -> Result<MatchingPoset, SnakeError> {
        let mut p = self.snake.poset();
        if !p.relations.contains(&self.extra) {
            p.relations.push(self.extra);
        }
        if !p.is_acyclic() {
            return Err(SnakeError::Cyclic);
        }
        Ok(p)
    }

    /// x-exponents of the good matching lifted to `m`: the lift has one extra cut edge.
    pub fn weight(&self, m: Matching, n_arcs: usize) -> Vec<i32> {
        let mut e = self.snake.weight(m, n_arcs);
        if let Edge::Arc(a) = self.cut_label {
            e[a] -= 1;
        }
        e
    }

    pub fn to_dot(&self, name: &dyn Fn(Edge) -> String) -> String {
        let mut s = self.snake.to_dot(name, None);
        s.truncate(s.len() - 2);
        let _ = writeln!(s, "  v{} -- v{} [style=dashed, label=\"x\"];", self.x, self.x2);
        let _ = writeln!(s, "  v{} -- v{} [style=dashed, label=\"y\"];", self.y, self.y2);
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_three() {
        let g = SnakeGraph::from_shape(&[Glue::Right, Glue::Right]).unwrap();
        assert_eq!(g.edges().len(), 10);
        let l = g.lattice();
        assert_eq!(l.len(), 5);
        assert!(g.verify_twist_parity(&l).passed());
        assert_eq!(g.poset().relations, vec![(0, 1), (2, 1)]);
        assert_eq!(g.poset().order_ideals().len(), 5);
    }

    #[test]
    fn single_tile() {
        let g = SnakeGraph::from_shape(&[]).unwrap();
        let (lo, hi) = g.boundary_matchings();
        assert_ne!(lo, hi);
        assert!(lo.contains(g.side_edge(0, Side::S)));
        assert_eq!(g.height(lo), Vec::<usize>::new());
        assert_eq!(g.height(hi), vec![0]);
        assert_eq!(g.lattice().len(), 2);
    }
}
