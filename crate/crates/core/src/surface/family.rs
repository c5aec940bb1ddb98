//! Polygons and annuli as chord diagrams.
//!
//! An annulus with `p` outer and `q` inner marked points is unrolled to an
//! infinite strip: outer points `O(i)` on the bottom line, inner points `I(j)`
//! on the top line, and the deck translation shifts `i` by `p` and `j` by `q`.
//! Arcs become translation orbits of chords, and two chords cross exactly when
//! their endpoints interleave along the boundary of the strip.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{CurveWord, Edge, SurfaceError, SurfaceSpec, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Polygon(usize),
    Annulus(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt {
    O(i64),
    I(i64),
}

/// Position along the boundary of the disk (polygon) or strip, increasing counterclockwise.
fn key(p: Pt) -> (u8, i64) {
    match p {
        Pt::O(i) => (0, i),
        Pt::I(j) => (1, -j),
    }
}

/// A chord with endpoints in increasing boundary order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord(pub Pt, pub Pt);

impl Chord {
    pub fn new(a: Pt, b: Pt) -> Chord {
        if key(a) <= key(b) {
            Chord(a, b)
        } else {
            Chord(b, a)
        }
    }

    pub fn crosses(&self, other: &Chord) -> bool {
        let (a, b) = (key(self.0), key(self.1));
        let (c, d) = (key(other.0), key(other.1));
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let inside = |k| a < k && k < b;
        inside(c) != inside(d)
    }

    pub fn is_bridging(&self) -> bool {
        matches!((self.0, self.1), (Pt::O(_), Pt::I(_)) | (Pt::I(_), Pt::O(_)))
    }
}

impl Family {
    pub fn validate(self) -> Result<(), SurfaceError> {
        match self {
            Family::Polygon(n) if n >= 4 => Ok(()),
            Family::Annulus(p, q) if p >= 1 && q >= 1 => Ok(()),
            other => Err(SurfaceError::UnsupportedFamily(format!("{other:?}"))),
        }
    }

    fn translate(self, p: Pt, t: i64) -> Pt {
        match (self, p) {
            (Family::Annulus(a, _), Pt::O(i)) => Pt::O(i + t * a as i64),
            (Family::Annulus(_, b), Pt::I(j)) => Pt::I(j + t * b as i64),
            (Family::Polygon(_), p) => p,
        }
    }

    fn turn(self, p: Pt) -> i64 {
        match (self, p) {
            (Family::Annulus(a, _), Pt::O(i)) => i.div_euclid(a as i64),
            (Family::Annulus(_, b), Pt::I(j)) => j.div_euclid(b as i64),
            (Family::Polygon(_), _) => 0,
        }
    }

    fn shift_chord(self, c: Chord, t: i64) -> Chord {
        Chord::new(self.translate(c.0, t), self.translate(c.1, t))
    }

    /// Representative of the translation orbit: first endpoint in turn 0.
    pub fn normalize(self, c: Chord) -> Chord {
        let t = self.turn(c.0);
        self.shift_chord(c, -t)
    }

    fn normalize_triangle(self, mut v: [Pt; 3]) -> [Pt; 3] {
        v.sort_by_key(|&p| key(p));
        let t = self.turn(v[0]);
        let mut out = v.map(|p| self.translate(p, -t));
        out.sort_by_key(|&p| key(p));
        out
    }

    /// Boundary segment index, if the chord is one.
    pub fn boundary_index(self, c: Chord) -> Option<usize> {
        match self {
            Family::Polygon(n) => match (c.0, c.1) {
                (Pt::O(i), Pt::O(j)) if j == i + 1 => Some(i as usize),
                (Pt::O(0), Pt::O(j)) if j == n as i64 - 1 => Some(n - 1),
                _ => None,
            },
            Family::Annulus(p, q) => match (c.0, c.1) {
                (Pt::O(i), Pt::O(j)) if j == i + 1 => Some(i.rem_euclid(p as i64) as usize),
                (Pt::I(i), Pt::I(j)) if i == j + 1 => Some(p + j.rem_euclid(q as i64) as usize),
                _ => None,
            },
        }
    }

    fn boundary_name(self, b: usize) -> String {
        match self {
            Family::Polygon(_) => format!("b{}", b + 1),
            Family::Annulus(p, _) if b < p => format!("o{}", b + 1),
            Family::Annulus(p, _) => format!("i{}", b - p + 1),
        }
    }

    fn point_name(self, v: Pt) -> String {
        match (self, v) {
            (Family::Polygon(_), Pt::O(i)) => format!("v{i}"),
            (Family::Annulus(p, _), Pt::O(i)) => format!("O{}", i.rem_euclid(p as i64)),
            (Family::Annulus(_, q), Pt::I(j)) => format!("I{}", j.rem_euclid(q as i64)),
            (Family::Polygon(_), Pt::I(_)) => unreachable!("polygons have one boundary"),
        }
    }

    fn num_boundary(self) -> usize {
        match self {
            Family::Polygon(n) => n,
            Family::Annulus(p, q) => p + q,
        }
    }

    /// Arcs of the standard triangulation: a fan at vertex 0 for polygons, a
    /// staircase of bridging arcs for annuli.
    fn standard_chords(self) -> Vec<Chord> {
        match self {
            Family::Polygon(n) => (2..n as i64 - 1).map(|k| Chord::new(Pt::O(0), Pt::O(k))).collect(),
            Family::Annulus(p, q) => {
                let mut v: Vec<Chord> = (0..=p as i64).map(|k| Chord::new(Pt::O(k), Pt::I(0))).collect();
                v.extend((1..q as i64).map(|l| Chord::new(Pt::O(p as i64), Pt::I(l))));
                v.into_iter().map(|c| self.normalize(c)).collect()
            }
        }
    }
}

/// A triangulation of the polygon or strip, one chord orbit per arc slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordSet {
    family: Family,
    chords: Vec<Chord>,
}

struct Lift {
    chords: Vec<(Chord, Edge)>,
    adjacency: HashMap<Pt, BTreeSet<Pt>>,
}

impl Lift {
    fn has_edge(&self, a: Pt, b: Pt) -> bool {
        self.adjacency.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// The third vertices of the triangles on either side of chord `c` (inside, outside).
    fn apexes(&self, c: Chord) -> (Option<Pt>, Option<Pt>) {
        let (a, b) = (key(c.0), key(c.1));
        let mut inside = None;
        let mut outside = None;
        if let Some(ns) = self.adjacency.get(&c.0) {
            for &w in ns {
                if w == c.1 || !self.has_edge(w, c.1) {
                    continue;
                }
                let k = key(w);
                if a < k && k < b {
                    inside = Some(w);
                } else {
                    outside = Some(w);
                }
            }
        }
        (inside, outside)
    }
}

impl ChordSet {
    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn family(&self) -> Family {
        self.family
    }

    fn span(&self) -> i64 {
        self.chords.iter().map(|c| (self.family.turn(c.1) - self.family.turn(c.0)).abs()).max().unwrap_or(0)
    }

    fn lift_around(&self, lo: i64, hi: i64) -> Lift {
        let f = self.family;
        let s = self.span() + 2;
        let (tlo, thi) = match f {
            Family::Polygon(_) => (0, 0),
            Family::Annulus(..) => (lo - s, hi + s),
        };
        let mut chords = Vec::new();
        for t in tlo..=thi {
            for (i, &c) in self.chords.iter().enumerate() {
                chords.push((f.shift_chord(c, t), Edge::Arc(i)));
            }
        }
        let mut adjacency: HashMap<Pt, BTreeSet<Pt>> = HashMap::new();
        let mut link = |a: Pt, b: Pt| {
            adjacency.entry(a).or_default().insert(b);
            adjacency.entry(b).or_default().insert(a);
        };
        for &(c, _) in &chords {
            link(c.0, c.1);
        }
        match f {
            Family::Polygon(n) => {
                for i in 0..n as i64 {
                    link(Pt::O(i), Pt::O((i + 1) % n as i64));
                }
            }
            Family::Annulus(p, q) => {
                let (p, q) = (p as i64, q as i64);
                for i in (tlo - 1) * p..=(thi + 2) * p {
                    link(Pt::O(i), Pt::O(i + 1));
                }
                for j in (tlo - 1) * q..=(thi + 2) * q {
                    link(Pt::I(j), Pt::I(j + 1));
                }
            }
        }
        Lift { chords, adjacency }
    }

    fn lift_for(&self, c: Chord) -> Lift {
        let (a, b) = (self.family.turn(c.0), self.family.turn(c.1));
        self.lift_around(a.min(b), a.max(b))
    }

    pub fn contains(&self, c: Chord) -> Option<usize> {
        let n = self.family.normalize(c);
        self.chords.iter().position(|&x| x == n)
    }

    /// Number of chords of the lifted triangulation crossing a fixed lift of `c`.
    pub fn crossing_count(&self, c: Chord) -> usize {
        self.lift_for(c).chords.iter().filter(|(x, _)| x.crosses(&c)).count()
    }

    /// Flip slot `k`; returns the new set and the quadrilateral sides in boundary order.
    pub fn flip(&self, k: usize) -> Result<(ChordSet, [Chord; 4]), SurfaceError> {
        let c = *self.chords.get(k).ok_or_else(|| SurfaceError::NotAnArc(format!("#{k}")))?;
        let lift = self.lift_for(c);
        let (Some(win), Some(wout)) = lift.apexes(c) else {
            return Err(SurfaceError::InvalidWord(format!("no quadrilateral around {c:?}")));
        };
        let mut out = self.clone();
        out.chords[k] = self.family.normalize(Chord::new(win, wout));
        let sides = [Chord::new(c.0, win), Chord::new(win, c.1), Chord::new(c.1, wout), Chord::new(wout, c.0)];
        Ok((out, sides))
    }

    /// Chords of the lift crossing `c`, ordered from `c.0` to `c.1`.
    fn crossed(&self, lift: &Lift, c: Chord) -> Vec<(Chord, Edge)> {
        let (u, v) = (key(c.0), key(c.1));
        let mut hits: Vec<(Chord, Edge)> = lift.chords.iter().copied().filter(|(x, _)| x.crosses(&c)).collect();
        let sort_key = |x: &Chord| {
            let (k0, k1) = (key(x.0), key(x.1));
            let (ins, out) = if u < k0 && k0 < v { (k0, k1) } else { (k1, k0) };
            let dist = if out < u { (0u8, Reverse(out)) } else { (1u8, Reverse(out)) };
            (ins, dist)
        };
        hits.sort_by_key(|(x, _)| sort_key(x));
        hits
    }
}

fn shared_triangle(a: Chord, b: Chord) -> [Pt; 3] {
    let mut v: Vec<Pt> = vec![a.0, a.1, b.0, b.1];
    v.sort();
    v.dedup();
    assert_eq!(v.len(), 3, "consecutive crossed chords share an endpoint");
    [v[0], v[1], v[2]]
}

/// A family surface with its standard triangulation.
#[derive(Debug, Clone)]
pub struct Model {
    family: Family,
    base: ChordSet,
    triangulation: Triangulation,
    triangle_ids: HashMap<[Pt; 3], usize>,
}

impl Model {
    pub fn new(family: Family) -> Result<Model, SurfaceError> {
        family.validate()?;
        let base = ChordSet { family, chords: family.standard_chords() };
        let mut tris: BTreeSet<[Pt; 3]> = BTreeSet::new();
        for &c in &base.chords {
            let lift = base.lift_for(c);
            let (a, b) = lift.apexes(c);
            for w in [a, b] {
                let w = w.expect("standard triangulation is complete");
                tris.insert(family.normalize_triangle([c.0, c.1, w]));
            }
        }
        let tris: Vec<[Pt; 3]> = tris.into_iter().collect();
        let edge_of = |a: Pt, b: Pt| -> Edge {
            let c = Chord::new(a, b);
            if let Some(i) = family.boundary_index(c) {
                Edge::Boundary(i)
            } else {
                Edge::Arc(base.contains(c).expect("triangle side is an arc"))
            }
        };
        let n = base.chords.len();
        let arc_names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let bd_names: Vec<String> = (0..family.num_boundary()).map(|b| family.boundary_name(b)).collect();
        let name = |e: Edge| match e {
            Edge::Arc(i) => arc_names[i].clone(),
            Edge::Boundary(b) => bd_names[b].clone(),
        };
        let mut endpoints = std::collections::BTreeMap::new();
        let mut triangles = Vec::new();
        for [u, v, w] in &tris {
            // Vertices sorted counterclockwise; clockwise sides are uw, wv, vu.
            let sides = [(*u, *w), (*w, *v), (*v, *u)];
            triangles.push(sides.map(|(a, b)| {
                let e = edge_of(a, b);
                endpoints.insert(name(e), [family.point_name(a), family.point_name(b)]);
                name(e)
            }));
        }
        let spec = SurfaceSpec {
            family: Some(family),
            arcs: arc_names.clone(),
            boundary: bd_names.clone(),
            triangles,
            endpoints: Some(endpoints),
        };
        let triangulation = Triangulation::build(&spec)?;
        let triangle_ids = tris.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        Ok(Model { family, base, triangulation, triangle_ids })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn base(&self) -> &ChordSet {
        &self.base
    }

    fn triangle_id(&self, v: [Pt; 3]) -> usize {
        self.triangle_ids[&self.family.normalize_triangle(v)]
    }

    /// Edge of the standard triangulation represented by a chord, if any.
    pub fn edge_of(&self, c: Chord) -> Option<Edge> {
        if let Some(b) = self.family.boundary_index(c) {
            return Some(Edge::Boundary(b));
        }
        self.base.contains(c).map(Edge::Arc)
    }

    /// The crossing word of a chord relative to the standard triangulation.
    pub fn word_of(&self, c: Chord) -> Result<CurveWord, SurfaceError> {
        if let Some(e) = self.edge_of(c) {
            return Ok(CurveWord::Segment(e));
        }
        let lift = self.base.lift_for(c);
        let hits = self.base.crossed(&lift, c);
        if hits.is_empty() {
            return Err(SurfaceError::InvalidWord(format!("{c:?} crosses nothing but is not an edge")));
        }
        let d = hits.len();
        let mut triangles = Vec::with_capacity(d + 1);
        triangles.push(self.triangle_id(shared_triangle(Chord::new(c.0, hits[0].0 .0), hits[0].0)));
        for j in 0..d - 1 {
            triangles.push(self.triangle_id(shared_triangle(hits[j].0, hits[j + 1].0)));
        }
        triangles.push(self.triangle_id(shared_triangle(hits[d - 1].0, Chord::new(c.1, hits[d - 1].0 .0))));
        let crossings: Vec<usize> = hits.iter().map(|(_, e)| e.arc().expect("crossed edges are arcs")).collect();
        let w = self.triangulation.open_word(&crossings, Some(triangles[0]))?;
        match &w {
            CurveWord::Open { triangles: walked, .. } if *walked == triangles => Ok(w),
            _ => Err(SurfaceError::InvalidWord(format!("triangle walk disagrees for {c:?}"))),
        }
    }

    /// The essential loop of an annulus, crossing every arc of the standard triangulation once.
    pub fn core_loop(&self) -> Result<CurveWord, SurfaceError> {
        let Family::Annulus(..) = self.family else {
            return Err(SurfaceError::UnsupportedFamily("polygons have no essential loop".into()));
        };
        let lift = self.base.lift_around(-1, 1);
        let mut bridging: Vec<(Chord, Edge)> = lift.chords.iter().copied().filter(|(c, _)| c.is_bridging()).collect();
        let coords = |c: &Chord| match (c.0, c.1) {
            (Pt::O(i), Pt::I(j)) | (Pt::I(j), Pt::O(i)) => (i, j),
            _ => unreachable!(),
        };
        bridging.sort_by_key(|(c, _)| coords(c));
        let n = self.base.chords.len();
        let start =
            bridging.iter().position(|(c, _)| coords(c) == (0, 0)).expect("standard triangulation contains O0-I0");
        let seq = &bridging[start - 1..start + n];
        let crossings: Vec<usize> = seq[1..].iter().map(|(_, e)| e.arc().unwrap()).collect();
        let triangles: Vec<usize> = (0..n).map(|j| self.triangle_id(shared_triangle(seq[j].0, seq[j + 1].0))).collect();
        let w = self.triangulation.closed_word(&crossings, Some(triangles[0]))?;
        Ok(w)
    }

    /// All arcs as chords (one per orbit), with crossing words of length at most `bound`.
    pub fn catalog_chords(&self, bound: usize) -> Result<Vec<(Chord, CurveWord)>, SurfaceError> {
        let mut cands: Vec<Chord> = Vec::new();
        match self.family {
            Family::Polygon(n) => {
                let n = n as i64;
                for i in 0..n {
                    for j in i + 2..n {
                        if !(i == 0 && j == n - 1) {
                            cands.push(Chord::new(Pt::O(i), Pt::O(j)));
                        }
                    }
                }
            }
            Family::Annulus(p, q) => {
                let (p, q) = (p as i64, q as i64);
                for i in 0..p {
                    for j in i + 2..=i + p {
                        cands.push(Chord::new(Pt::O(i), Pt::O(j)));
                    }
                }
                for i in 0..q {
                    for j in i + 2..=i + q {
                        cands.push(Chord::new(Pt::I(i), Pt::I(j)));
                    }
                }
                let reach = (bound as i64 + 3) * q;
                for i in 0..p {
                    for j in -reach..=reach {
                        cands.push(Chord::new(Pt::O(i), Pt::I(j)));
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in cands {
            let c = self.family.normalize(c);
            if self.family.boundary_index(c).is_some() || !seen.insert(c) {
                continue;
            }
            let w = self.word_of(c)?;
            if w.len() <= bound {
                out.push((c, w));
            }
        }
        out.sort_by_key(|a| (a.1.len(), a.1.canonical()));
        Ok(out)
    }

    /// Arcs and, for annuli, the essential loop and its powers, all of length at most `bound`.
    pub fn catalog(&self, bound: usize) -> Result<Vec<CurveWord>, SurfaceError> {
        let mut out: Vec<CurveWord> = self.catalog_chords(bound)?.into_iter().map(|(_, w)| w.canonical()).collect();
        if let Family::Annulus(..) = self.family {
            let z = self.core_loop()?;
            let mut k = 1;
            while z.len() * k <= bound {
                out.push(z.repeat(k).canonical());
                k += 1;
            }
        }
        let mut seen = HashSet::new();
        out.retain(|w| seen.insert(w.clone()));
        Ok(out)
    }

    /// Whether two arcs can be drawn without crossing.
    pub fn compatible(&self, a: Chord, b: Chord) -> bool {
        let f = self.family;
        match f {
            Family::Polygon(_) => !a.crosses(&b),
            Family::Annulus(..) => {
                let (a0, a1) = (f.turn(a.0), f.turn(a.1));
                let (b0, b1) = (f.turn(b.0), f.turn(b.1));
                let lo = a0.min(a1) - b0.max(b1) - 2;
                let hi = a0.max(a1) - b0.min(b1) + 2;
                (lo..=hi).all(|t| !a.crosses(&f.shift_chord(b, t)))
            }
        }
    }

    /// Whether an arc avoids the essential loop of an annulus.
    pub fn compatible_with_loop(&self, a: Chord) -> bool {
        !a.is_bridging()
    }

    /// Flip sequence (arc slots) from the standard triangulation to one containing `c`,
    /// with the slot where `c` ends up.
    pub fn realize(&self, c: Chord) -> Result<(Vec<usize>, usize), SurfaceError> {
        let mut cur = self.base.clone();
        let mut path = Vec::new();
        while cur.contains(c).is_none() {
            let now = cur.crossing_count(c);
            let mut best: Option<(usize, usize, ChordSet)> = None;
            for k in 0..cur.chords.len() {
                let (next, _) = cur.flip(k)?;
                let cnt = if next.contains(c).is_some() { 0 } else { next.crossing_count(c) };
                if cnt < now && best.as_ref().is_none_or(|b| cnt < b.0) {
                    best = Some((cnt, k, next));
                }
            }
            match best {
                Some((_, k, next)) => {
                    path.push(k);
                    cur = next;
                }
                None => return self.realize_search(c),
            }
            if path.len() > 64 {
                return self.realize_search(c);
            }
        }
        let slot = cur.contains(c).expect("loop exits once c is present");
        Ok((path, slot))
    }

    fn realize_search(&self, c: Chord) -> Result<(Vec<usize>, usize), SurfaceError> {
        let mut seen: HashSet<Vec<Chord>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.base.chords.clone());
        queue.push_back((self.base.clone(), Vec::new()));
        while let Some((cur, path)) = queue.pop_front() {
            if let Some(slot) = cur.contains(c) {
                return Ok((path, slot));
            }
            if path.len() >= 10 {
                continue;
            }
            for k in 0..cur.chords.len() {
                let (next, _) = cur.flip(k)?;
                if seen.insert(next.chords.clone()) {
                    let mut p = path.clone();
                    p.push(k);
                    queue.push_back((next, p));
                }
            }
        }
        Err(SurfaceError::InvalidWord(format!("no flip sequence reaches {c:?}")))
    }

    /// The arc obtained from arc `i` of the polygon fan by moving both endpoints one
    /// boundary step backwards (decreasing index). Its g-vector is `-e_i`.
    pub fn anti_arc(&self, i: usize) -> Result<Chord, SurfaceError> {
        let Family::Polygon(n) = self.family else {
            return Err(SurfaceError::UnsupportedFamily("anti-arcs are provided for polygons".into()));
        };
        let c = *self.base.chords.get(i).ok_or_else(|| SurfaceError::NotAnArc(format!("#{i}")))?;
        let n = n as i64;
        let step = |p: Pt| match p {
            Pt::O(k) => Pt::O((k - 1).rem_euclid(n)),
            Pt::I(_) => unreachable!(),
        };
        let r = Chord::new(step(c.0), step(c.1));
        if self.family.boundary_index(r).is_some() {
            return Err(SurfaceError::InvalidWord("rotated arc is a boundary segment".into()));
        }
        Ok(r)
    }

    /// Every triangulation reachable by at most `depth` flips, with the flip path used.
    pub fn triangulations_within(&self, depth: usize) -> Result<Vec<(ChordSet, Vec<usize>)>, SurfaceError> {
        let mut seen: HashSet<Vec<Chord>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.base.chords.clone());
        queue.push_back((self.base.clone(), Vec::new()));
        while let Some((cur, path)) = queue.pop_front() {
            if path.len() < depth {
                for k in 0..cur.chords.len() {
                    let (next, _) = cur.flip(k)?;
                    if seen.insert(next.chords.clone()) {
                        let mut p = path.clone();
                        p.push(k);
                        queue.push_back((next, p));
                    }
                }
            }
            out.push((cur, path));
        }
        Ok(out)
    }
}
