//! Triangulated unpunctured marked surfaces, flips and crossing words.

pub mod family;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::matrix::ExchangeMatrix;
pub use family::{Family, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("malformed surface description: {0}")]
    Parse(String),
    #[error("edge identifier `{0}` is declared twice")]
    DuplicateEdge(String),
    #[error("edge identifier `{0}` is not declared")]
    UnknownEdge(String),
    #[error("triangle {0} repeats an edge (self-folded or degenerate)")]
    DegenerateTriangle(usize),
    #[error("edge `{name}` lies in {count} triangle sides, expected {expected}")]
    NonManifold { name: String, count: usize, expected: usize },
    #[error("the triangles do not form a connected complex")]
    Disconnected,
    #[error("marked point {0} is not on the boundary (punctures are unsupported)")]
    Punctured(usize),
    #[error("the triangulation has no arcs")]
    NoArcs,
    #[error("endpoint data for `{0}` disagrees with the gluing")]
    Endpoints(String),
    #[error("`{0}` is not an arc of the triangulation")]
    NotAnArc(String),
    #[error("invalid crossing word: {0}")]
    InvalidWord(String),
    #[error("crossing word is ambiguous; give a start triangle")]
    AmbiguousWord,
    #[error("unsupported surface family: {0}")]
    UnsupportedFamily(String),
}

/// An edge of a triangulation: an arc (mutable) or a boundary segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    Arc(usize),
    Boundary(usize),
}

impl Edge {
    pub fn arc(self) -> Option<usize> {
        match self {
            Edge::Arc(i) => Some(i),
            Edge::Boundary(_) => None,
        }
    }
}

/// JSON surface description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub arcs: Vec<String>,
    pub boundary: Vec<String>,
    pub triangles: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<BTreeMap<String, [String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    arc_names: Vec<String>,
    boundary_names: Vec<String>,
    triangles: Vec<[Edge; 3]>,
    arc_sides: Vec<[(usize, usize); 2]>,
    /// corners[t][k] is the marked point between sides k and k+1 of triangle t.
    corners: Vec<[usize; 3]>,
    point_names: Vec<String>,
    family: Option<Family>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Triangulation {
    pub fn from_json(text: &str) -> Result<Triangulation, SurfaceError> {
        let spec: SurfaceSpec = serde_json::from_str(text).map_err(|e| SurfaceError::Parse(e.to_string()))?;
        Triangulation::build(&spec)
    }

    pub fn build(spec: &SurfaceSpec) -> Result<Triangulation, SurfaceError> {
        let mut ids: HashMap<&str, Edge> = HashMap::new();
        for (i, a) in spec.arcs.iter().enumerate() {
            if ids.insert(a, Edge::Arc(i)).is_some() {
                return Err(SurfaceError::DuplicateEdge(a.clone()));
            }
        }
        for (i, b) in spec.boundary.iter().enumerate() {
            if ids.insert(b, Edge::Boundary(i)).is_some() {
                return Err(SurfaceError::DuplicateEdge(b.clone()));
            }
        }
        let mut triangles = Vec::with_capacity(spec.triangles.len());
        for (t, tri) in spec.triangles.iter().enumerate() {
            let mut edges = [Edge::Arc(0); 3];
            for (k, name) in tri.iter().enumerate() {
                edges[k] = *ids.get(name.as_str()).ok_or_else(|| SurfaceError::UnknownEdge(name.clone()))?;
            }
            if edges[0] == edges[1] || edges[1] == edges[2] || edges[0] == edges[2] {
                return Err(SurfaceError::DegenerateTriangle(t));
            }
            triangles.push(edges);
        }
        let mut t = Triangulation::assemble(spec.arcs.clone(), spec.boundary.clone(), triangles, spec.family)?;
        if let Some(ep) = &spec.endpoints {
            t.name_points(ep)?;
        }
        Ok(t)
    }

    fn assemble(
        arc_names: Vec<String>,
        boundary_names: Vec<String>,
        triangles: Vec<[Edge; 3]>,
        family: Option<Family>,
    ) -> Result<Triangulation, SurfaceError> {
        if arc_names.is_empty() {
            return Err(SurfaceError::NoArcs);
        }
        let n = arc_names.len();
        let mut arc_slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut bd_slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); boundary_names.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for (k, e) in tri.iter().enumerate() {
                match *e {
                    Edge::Arc(i) => arc_slots[i].push((t, k)),
                    Edge::Boundary(i) => bd_slots[i].push((t, k)),
                }
            }
        }
        for (i, s) in arc_slots.iter().enumerate() {
            if s.len() != 2 {
                return Err(SurfaceError::NonManifold { name: arc_names[i].clone(), count: s.len(), expected: 2 });
            }
        }
        for (i, s) in bd_slots.iter().enumerate() {
            if s.len() != 1 {
                return Err(SurfaceError::NonManifold { name: boundary_names[i].clone(), count: s.len(), expected: 1 });
            }
        }
        let nt = triangles.len();
        let mut comp = UnionFind((0..nt).collect());
        for s in &arc_slots {
            comp.union(s[0].0, s[1].0);
        }
        if (0..nt).any(|t| comp.find(t) != comp.find(0)) {
            return Err(SurfaceError::Disconnected);
        }
        // Side k of a triangle runs clockwise from corner k-1 to corner k.
        let corner = |t: usize, k: usize| 3 * t + k;
        let mut pts = UnionFind((0..3 * nt).collect());
        for s in &arc_slots {
            let (t, k) = s[0];
            let (u, l) = s[1];
            pts.union(corner(t, (k + 2) % 3), corner(u, l));
            pts.union(corner(t, k), corner(u, (l + 2) % 3));
        }
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut corners = vec![[0usize; 3]; nt];
        for (t, c) in corners.iter_mut().enumerate() {
            for (k, slot) in c.iter_mut().enumerate() {
                let r = pts.find(corner(t, k));
                let next = relabel.len();
                *slot = *relabel.entry(r).or_insert(next);
            }
        }
        let np = relabel.len();
        let mut on_boundary = vec![false; np];
        for s in &bd_slots {
            let (t, k) = s[0];
            on_boundary[corners[t][k]] = true;
            on_boundary[corners[t][(k + 2) % 3]] = true;
        }
        if let Some(p) = on_boundary.iter().position(|b| !b) {
            return Err(SurfaceError::Punctured(p));
        }
        let arc_sides = arc_slots.into_iter().map(|s| [s[0], s[1]]).collect();
        Ok(Triangulation {
            arc_names,
            boundary_names,
            triangles,
            arc_sides,
            corners,
            point_names: (1..=np).map(|i| format!("m{i}")).collect(),
            family,
        })
    }

    fn name_points(&mut self, ep: &BTreeMap<String, [String; 2]>) -> Result<(), SurfaceError> {
        let mut names: Vec<Option<String>> = vec![None; self.point_names.len()];
        let mut pending: Vec<(String, [usize; 2], [String; 2])> = Vec::new();
        for (name, pair) in ep {
            let e = self.edge_by_name(name).ok_or_else(|| SurfaceError::UnknownEdge(name.clone()))?;
            pending.push((name.clone(), self.endpoints(e), pair.clone()));
        }
        loop {
            let mut progress = false;
            for (name, [p, q], [g, h]) in &pending {
                let (np, nq) = (names[*p].clone(), names[*q].clone());
                match (np, nq) {
                    (Some(a), None) => {
                        let other = if &a == g {
                            h
                        } else if &a == h {
                            g
                        } else {
                            return Err(SurfaceError::Endpoints(name.clone()));
                        };
                        names[*q] = Some(other.clone());
                        progress = true;
                    }
                    (None, Some(b)) => {
                        let other = if &b == g {
                            h
                        } else if &b == h {
                            g
                        } else {
                            return Err(SurfaceError::Endpoints(name.clone()));
                        };
                        names[*p] = Some(other.clone());
                        progress = true;
                    }
                    _ => {}
                }
            }
            if progress {
                continue;
            }
            match pending.iter().find(|(_, [p, q], _)| names[*p].is_none() && names[*q].is_none()) {
                Some((_, [p, q], [g, h])) => {
                    names[*p] = Some(g.clone());
                    names[*q] = Some(h.clone());
                }
                None => break,
            }
        }
        for (name, [p, q], [g, h]) in &pending {
            let (a, b) = (names[*p].as_ref().unwrap(), names[*q].as_ref().unwrap());
            if !((a == g && b == h) || (a == h && b == g)) {
                return Err(SurfaceError::Endpoints(name.clone()));
            }
        }
        for (i, n) in names.into_iter().enumerate() {
            if let Some(n) = n {
                self.point_names[i] = n;
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> SurfaceSpec {
        let mut endpoints = BTreeMap::new();
        for e in self.edges() {
            let [a, b] = self.endpoints(e);
            endpoints.insert(self.edge_name(e).to_string(), [self.point_names[a].clone(), self.point_names[b].clone()]);
        }
        SurfaceSpec {
            family: self.family,
            arcs: self.arc_names.clone(),
            boundary: self.boundary_names.clone(),
            triangles: self.triangles.iter().map(|t| [0, 1, 2].map(|k| self.edge_name(t[k]).to_string())).collect(),
            endpoints: Some(endpoints),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("surface serializes")
    }

    /// Stable 64-bit identifier of the combinatorial data (FNV-1a of the canonical description).
    pub fn fingerprint(&self) -> u64 {
        let mut s = String::new();
        for a in &self.arc_names {
            s.push_str(a);
            s.push(',');
        }
        s.push('|');
        for b in &self.boundary_names {
            s.push_str(b);
            s.push(',');
        }
        s.push('|');
        for t in &self.triangles {
            s.push_str(&format!("{t:?};"));
        }
        let mut h: u64 = 0xcbf29ce484222325;
        for byte in s.bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.arc_names.len()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn arc_names(&self) -> &[String] {
        &self.arc_names
    }

    pub fn boundary_names(&self) -> &[String] {
        &self.boundary_names
    }

    pub fn triangles(&self) -> &[[Edge; 3]] {
        &self.triangles
    }

    pub fn num_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.point_names[p]
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n()).map(Edge::Arc).chain((0..self.boundary_names.len()).map(Edge::Boundary))
    }

    pub fn edge_name(&self, e: Edge) -> &str {
        match e {
            Edge::Arc(i) => &self.arc_names[i],
            Edge::Boundary(i) => &self.boundary_names[i],
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<Edge> {
        if let Some(i) = self.arc_names.iter().position(|a| a == name) {
            return Some(Edge::Arc(i));
        }
        self.boundary_names.iter().position(|b| b == name).map(Edge::Boundary)
    }

    fn side_of(&self, e: Edge) -> (usize, usize) {
        match e {
            Edge::Arc(i) => self.arc_sides[i][0],
            Edge::Boundary(_) => {
                for (t, tri) in self.triangles.iter().enumerate() {
                    if let Some(k) = tri.iter().position(|x| *x == e) {
                        return (t, k);
                    }
                }
                unreachable!("validated boundary segment")
            }
        }
    }

    /// The two marked points joined by an edge.
    pub fn endpoints(&self, e: Edge) -> [usize; 2] {
        let (t, k) = self.side_of(e);
        [self.corners[t][(k + 2) % 3], self.corners[t][k]]
    }

    /// The two triangles containing arc `i`.
    pub fn triangles_of(&self, i: usize) -> [usize; 2] {
        [self.arc_sides[i][0].0, self.arc_sides[i][1].0]
    }

    pub fn contains(&self, t: usize, e: Edge) -> bool {
        self.triangles[t].contains(&e)
    }

    /// Triangle `t` read clockwise starting from side `e`.
    pub fn rotated(&self, t: usize, e: Edge) -> [Edge; 3] {
        let tri = self.triangles[t];
        let k = tri.iter().position(|x| *x == e).expect("edge in triangle");
        [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
    }

    /// The marked point of triangle `t` opposite side `e`.
    pub fn opposite_point(&self, t: usize, e: Edge) -> usize {
        let k = self.triangles[t].iter().position(|x| *x == e).expect("edge in triangle");
        self.corners[t][(k + 1) % 3]
    }

    /// The triangle across arc `i` from triangle `t`.
    pub fn across(&self, t: usize, i: usize) -> usize {
        let [a, b] = self.triangles_of(i);
        if a == t {
            b
        } else {
            a
        }
    }

    /// B_T: sum over triangles of the clockwise-successor relation among arcs.
    pub fn signed_adjacency(&self) -> ExchangeMatrix {
        let n = self.n();
        let mut b = ExchangeMatrix::zeros(n, n);
        for tri in &self.triangles {
            for k in 0..3 {
                if let (Edge::Arc(i), Edge::Arc(j)) = (tri[k], tri[(k + 1) % 3]) {
                    b.set(i, j, b.get(i, j) + 1);
                    b.set(j, i, b.get(j, i) - 1);
                }
            }
        }
        b
    }

    /// Replace arc `i` by the other diagonal of its quadrilateral. Returns the new
    /// triangulation and the quadrilateral sides in clockwise cyclic order.
    pub fn flip(&self, i: usize) -> Result<(Triangulation, [Edge; 4]), SurfaceError> {
        if i >= self.n() {
            return Err(SurfaceError::NotAnArc(format!("#{i}")));
        }
        let tau = Edge::Arc(i);
        let [t1, t2] = self.triangles_of(i);
        let [_, a, b] = self.rotated(t1, tau);
        let [_, c, d] = self.rotated(t2, tau);
        let mut triangles = self.triangles.clone();
        triangles[t1] = [tau, b, c];
        triangles[t2] = [tau, d, a];
        let mut out = Triangulation::assemble(self.arc_names.clone(), self.boundary_names.clone(), triangles, None)?;
        if out.point_names.len() == self.point_names.len() {
            out.point_names = self.point_names.clone();
            out.rename_points_after_flip(self, t1, t2, tau);
        }
        Ok((out, [a, b, c, d]))
    }

    fn rename_points_after_flip(&mut self, old: &Triangulation, t1: usize, t2: usize, tau: Edge) {
        let end_of = |t: usize, e: Edge| {
            let k = old.triangles[t].iter().position(|x| *x == e).expect("edge in triangle");
            old.corners[t][k]
        };
        let [_, a, b] = old.rotated(t1, tau);
        let [_, c, d] = old.rotated(t2, tau);
        let (p, q, r, s) = (end_of(t1, b), end_of(t1, tau), end_of(t1, a), end_of(t2, c));
        let _ = d;
        let mut map: HashMap<usize, usize> = HashMap::new();
        for t in 0..self.triangles.len() {
            if t == t1 || t == t2 {
                continue;
            }
            for k in 0..3 {
                map.insert(self.corners[t][k], old.corners[t][k]);
            }
        }
        for (k, o) in [r, p, s].into_iter().enumerate() {
            map.insert(self.corners[t1][k], o);
        }
        for (k, o) in [s, q, r].into_iter().enumerate() {
            map.insert(self.corners[t2][k], o);
        }
        let mut names = self.point_names.clone();
        for (new, oldp) in map {
            names[new] = old.point_names[oldp].clone();
        }
        self.point_names = names;
    }

    pub fn flip_by_name(&self, name: &str) -> Result<(Triangulation, [Edge; 4]), SurfaceError> {
        match self.edge_by_name(name) {
            Some(Edge::Arc(i)) => self.flip(i),
            _ => Err(SurfaceError::NotAnArc(name.to_string())),
        }
    }

    /// Resolve an open crossing word; `start` optionally fixes the first triangle.
    pub fn open_word(&self, crossings: &[usize], start: Option<usize>) -> Result<CurveWord, SurfaceError> {
        self.resolve(crossings, start, None, false)
    }

    /// Resolve a cyclic crossing word.
    pub fn closed_word(&self, crossings: &[usize], start: Option<usize>) -> Result<CurveWord, SurfaceError> {
        self.resolve(crossings, start, None, true)
    }

    fn walk(&self, crossings: &[usize], start: usize, closed: bool) -> Result<Vec<usize>, String> {
        let mut tris = vec![start];
        let mut cur = start;
        for (j, &c) in crossings.iter().enumerate() {
            if c >= self.n() {
                return Err(format!("arc index {c} out of range"));
            }
            if j > 0 && crossings[j - 1] == c {
                return Err(format!("arc {} crossed twice in a row", self.arc_names[c]));
            }
            if !self.contains(cur, Edge::Arc(c)) {
                return Err(format!("arc {} is not a side of triangle {cur}", self.arc_names[c]));
            }
            cur = self.across(cur, c);
            tris.push(cur);
        }
        if closed {
            if crossings.len() > 1 && crossings[0] == crossings[crossings.len() - 1] {
                return Err("first and last crossings coincide cyclically".into());
            }
            if cur != start {
                return Err("the cyclic word does not close up".into());
            }
            tris.pop();
        }
        Ok(tris)
    }

    fn resolve(
        &self,
        crossings: &[usize],
        start: Option<usize>,
        endpoints: Option<[usize; 2]>,
        closed: bool,
    ) -> Result<CurveWord, SurfaceError> {
        if crossings.is_empty() {
            return Err(SurfaceError::InvalidWord("empty crossing sequence".into()));
        }
        if crossings[0] >= self.n() {
            return Err(SurfaceError::InvalidWord(format!("arc index {} out of range", crossings[0])));
        }
        if closed && crossings.len() == 1 {
            return Err(SurfaceError::InvalidWord("a one-letter cyclic word repeats its arc".into()));
        }
        let candidates: Vec<usize> = match start {
            Some(s) => vec![s],
            None => {
                let mut v = self.triangles_of(crossings[0]).to_vec();
                v.dedup();
                v
            }
        };
        let mut found: Vec<CurveWord> = Vec::new();
        let mut last_err = String::new();
        for s in candidates {
            if s >= self.triangles.len() {
                return Err(SurfaceError::InvalidWord(format!("triangle {s} out of range")));
            }
            match self.walk(crossings, s, closed) {
                Ok(tris) => {
                    let w = if closed {
                        CurveWord::Closed { crossings: crossings.to_vec(), triangles: tris }
                    } else {
                        CurveWord::Open { crossings: crossings.to_vec(), triangles: tris }
                    };
                    if let Some([p, q]) = endpoints {
                        if self.word_endpoints(&w) != Some([p, q]) {
                            last_err = "endpoints do not match".into();
                            continue;
                        }
                    }
                    found.push(w);
                }
                Err(e) => last_err = e,
            }
        }
        match found.len() {
            0 => Err(SurfaceError::InvalidWord(last_err)),
            1 => Ok(found.pop().unwrap()),
            _ => {
                if found.iter().all(|w| w.canonical() == found[0].canonical()) {
                    Ok(found.swap_remove(0))
                } else {
                    Err(SurfaceError::AmbiguousWord)
                }
            }
        }
    }

    /// Start and end marked points of an open word.
    pub fn word_endpoints(&self, w: &CurveWord) -> Option<[usize; 2]> {
        match w {
            CurveWord::Segment(e) => Some(self.endpoints(*e)),
            CurveWord::Open { crossings, triangles } => {
                let d = crossings.len();
                Some([
                    self.opposite_point(triangles[0], Edge::Arc(crossings[0])),
                    self.opposite_point(triangles[d], Edge::Arc(crossings[d - 1])),
                ])
            }
            CurveWord::Closed { .. } => None,
        }
    }

    pub fn parse_curve(&self, text: &str) -> Result<CurveWord, SurfaceError> {
        let spec: CurveSpec = serde_json::from_str(text).map_err(|e| SurfaceError::Parse(e.to_string()))?;
        self.curve_from_spec(&spec)
    }

    pub fn curve_from_spec(&self, spec: &CurveSpec) -> Result<CurveWord, SurfaceError> {
        let closed = match spec.kind.as_str() {
            "open" => false,
            "closed" => true,
            other => return Err(SurfaceError::Parse(format!("unknown curve kind `{other}`"))),
        };
        if !closed && spec.crossings.is_empty() {
            let name = spec
                .edge
                .as_ref()
                .ok_or_else(|| SurfaceError::InvalidWord("an empty open word needs `edge`".into()))?;
            let e = self.edge_by_name(name).ok_or_else(|| SurfaceError::UnknownEdge(name.clone()))?;
            return Ok(CurveWord::Segment(e));
        }
        let mut crossings = Vec::with_capacity(spec.crossings.len());
        for c in &spec.crossings {
            match self.edge_by_name(c) {
                Some(Edge::Arc(i)) => crossings.push(i),
                Some(Edge::Boundary(_)) => return Err(SurfaceError::NotAnArc(c.clone())),
                None => return Err(SurfaceError::UnknownEdge(c.clone())),
            }
        }
        let endpoints = match (&spec.endpoints, closed) {
            (Some([a, b]), false) => {
                let find = |n: &str| {
                    self.point_names
                        .iter()
                        .position(|p| p == n)
                        .ok_or_else(|| SurfaceError::Parse(format!("unknown marked point `{n}`")))
                };
                Some([find(a)?, find(b)?])
            }
            _ => None,
        };
        self.resolve(&crossings, spec.start_triangle, endpoints, closed)
    }

    pub fn curve_to_spec(&self, w: &CurveWord) -> CurveSpec {
        match w {
            CurveWord::Segment(e) => CurveSpec {
                kind: "open".into(),
                crossings: Vec::new(),
                endpoints: self.word_endpoints(w).map(|p| p.map(|x| self.point_names[x].clone())),
                start_triangle: None,
                edge: Some(self.edge_name(*e).to_string()),
            },
            CurveWord::Open { crossings, triangles } => CurveSpec {
                kind: "open".into(),
                crossings: crossings.iter().map(|&c| self.arc_names[c].clone()).collect(),
                endpoints: self.word_endpoints(w).map(|p| p.map(|x| self.point_names[x].clone())),
                start_triangle: Some(triangles[0]),
                edge: None,
            },
            CurveWord::Closed { crossings, triangles } => CurveSpec {
                kind: "closed".into(),
                crossings: crossings.iter().map(|&c| self.arc_names[c].clone()).collect(),
                endpoints: None,
                start_triangle: Some(triangles[0]),
                edge: None,
            },
        }
    }
}

/// JSON curve description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: String,
    #[serde(default)]
    pub crossings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_triangle: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<String>,
}

/// A curve recorded by the arcs it crosses and the triangles it passes through.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveWord {
    /// An edge of the triangulation itself (no crossings).
    Segment(Edge),
    /// `triangles[j]` is entered before crossing `crossings[j]`; one extra final triangle.
    Open { crossings: Vec<usize>, triangles: Vec<usize> },
    /// Cyclic version: crossing `j` leads from `triangles[j]` to `triangles[j+1 mod d]`.
    Closed { crossings: Vec<usize>, triangles: Vec<usize> },
}

impl CurveWord {
    pub fn crossings(&self) -> &[usize] {
        match self {
            CurveWord::Segment(_) => &[],
            CurveWord::Open { crossings, .. } | CurveWord::Closed { crossings, .. } => crossings,
        }
    }

    pub fn len(&self) -> usize {
        self.crossings().len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings().is_empty()
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, CurveWord::Closed { .. })
    }

    pub fn reversed(&self) -> CurveWord {
        match self {
            CurveWord::Segment(e) => CurveWord::Segment(*e),
            CurveWord::Open { crossings, triangles } => CurveWord::Open {
                crossings: crossings.iter().rev().copied().collect(),
                triangles: triangles.iter().rev().copied().collect(),
            },
            CurveWord::Closed { crossings, triangles } => {
                let d = crossings.len();
                CurveWord::Closed {
                    crossings: (0..d).map(|m| crossings[d - 1 - m]).collect(),
                    triangles: (0..d).map(|m| triangles[(d - m) % d]).collect(),
                }
            }
        }
    }

    /// Rotate a closed word to start at position `r`.
    pub fn rotated(&self, r: usize) -> CurveWord {
        match self {
            CurveWord::Closed { crossings, triangles } => {
                let d = crossings.len();
                CurveWord::Closed {
                    crossings: (0..d).map(|m| crossings[(m + r) % d]).collect(),
                    triangles: (0..d).map(|m| triangles[(m + r) % d]).collect(),
                }
            }
            other => other.clone(),
        }
    }

    /// Canonical representative: least rotation over both orientations for
    /// closed words, the lesser orientation for open ones.
    pub fn canonical(&self) -> CurveWord {
        match self {
            CurveWord::Segment(_) => self.clone(),
            CurveWord::Open { .. } => {
                let r = self.reversed();
                if r < *self {
                    r
                } else {
                    self.clone()
                }
            }
            CurveWord::Closed { crossings, .. } => {
                let d = crossings.len();
                let rev = self.reversed();
                (0..d).flat_map(|r| [self.rotated(r), rev.rotated(r)]).min().expect("nonempty closed word")
            }
        }
    }

    /// The k-fold concatenation of a closed word.
    pub fn repeat(&self, k: usize) -> CurveWord {
        match self {
            CurveWord::Closed { crossings, triangles } => {
                CurveWord::Closed { crossings: crossings.repeat(k), triangles: triangles.repeat(k) }
            }
            other => other.clone(),
        }
    }

    /// Number of times arc `i` is crossed.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.crossings().iter().filter(|&&c| c == i).count()
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveWord::Segment(e) => write!(f, "{e:?}"),
            CurveWord::Open { crossings, triangles } => {
                write!(f, "open{crossings:?}@{}", triangles[0])
            }
            CurveWord::Closed { crossings, triangles } => {
                write!(f, "closed{crossings:?}@{}", triangles[0])
            }
        }
    }
}
