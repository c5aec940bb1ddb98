//! The non-suite subcommands.

use std::path::Path;

use serde::Serialize;
use serde_json::json;
use surfclust::bases::{enumerate_basis_elements, BasisBound, Piece, Variant};
use surfclust::cluster::{Seed, SeedJson};
use surfclust::expansion::{expand_arc, expand_loop};
use surfclust::snakegraph::{BandGraph, SnakeGraph};
use surfclust::surface::{CurveSpec, CurveWord, Edge, Triangulation};

use crate::session::{family_model, invalid, CliError, Session};
use crate::{Format, Output};

/// `t1` for an edge, `[t1 t2]` for the crossings of an arc, `(t1 t2)` for a loop.
pub fn word_text(t: &Triangulation, w: &CurveWord) -> String {
    let names = || w.crossings().iter().map(|&c| t.arc_names()[c].as_str()).collect::<Vec<_>>().join(" ");
    match w {
        CurveWord::Segment(e) => t.edge_name(*e).to_string(),
        CurveWord::Open { .. } => format!("[{}]", names()),
        CurveWord::Closed { .. } => format!("({})", names()),
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn expand(s: &Session, format: Format, curve: &Path, kinks: u32, contractible: bool) -> Result<Output, CliError> {
    let t = s.surface()?;
    let w = s.curve(&t, curve)?;
    if format == Format::Dot {
        let name = |e: Edge| t.edge_name(e).to_string();
        let dot = match &w {
            CurveWord::Open { .. } => SnakeGraph::build(&t, &w).map_err(invalid)?.to_dot(&name, None),
            CurveWord::Closed { .. } => BandGraph::build(&t, &w.canonical()).map_err(invalid)?.to_dot(&name),
            CurveWord::Segment(_) => {
                return Err(CliError::Validation("an arc of the triangulation has no snake graph".into()))
            }
        };
        return Ok(Output::pass(dot, json!({ "curve": word_text(&t, &w) })));
    }
    let r =
        if w.is_closed() { expand_loop(&t, &w, kinks, contractible) } else { expand_arc(&t, &w, kinks, contractible) }
            .map_err(invalid)?;
    let mut j = r.to_json();
    j.curve = word_text(&t, &w);
    let text = match format {
        Format::Text => format!(
            "x = {}\nF = {}\ng = {}\n",
            j.factored,
            j.f_polynomial,
            j.g_vector.as_ref().map_or("none".into(), |g| format!("{g:?}"))
        ),
        _ => pretty(&j),
    };
    Ok(Output::pass(text, json!({ "curve": j.curve, "terms": j.terms })))
}

fn parse_path(path: Option<&str>, n: usize) -> Result<Vec<usize>, CliError> {
    let Some(text) = path else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let k: usize = part.parse().map_err(|_| CliError::Validation(format!("bad direction `{part}` in --path")))?;
        if k == 0 || k > n {
            return Err(CliError::Validation(format!("direction {k} is outside 1..={n}")));
        }
        out.push(k - 1);
    }
    Ok(out)
}

#[derive(Serialize)]
struct Step {
    direction: Option<usize>,
    seed: SeedJson,
}

#[derive(Serialize)]
struct CurveCheck {
    curve: String,
    slot: usize,
    by_mutation: String,
    by_matchings: String,
    difference: String,
    equal: bool,
}

pub fn mutate(
    s: &Session,
    format: Format,
    path: Option<&str>,
    curve: Option<&Path>,
    slot: Option<usize>,
) -> Result<Output, CliError> {
    let t = s.surface()?;
    let dirs = parse_path(path, t.n())?;
    let mut seed = Seed::principal(&t.signed_adjacency()).map_err(invalid)?;
    let mut trace = vec![Step { direction: None, seed: seed.to_json() }];
    for &k in &dirs {
        seed = seed.mutate(k).map_err(invalid)?;
        trace.push(Step { direction: Some(k + 1), seed: seed.to_json() });
    }
    let check = match curve {
        None => None,
        Some(p) => {
            let slot = match (slot, dirs.last()) {
                (Some(0), _) => return Err(CliError::Validation("--slot is 1-based".into())),
                (Some(k), _) if k > t.n() => {
                    return Err(CliError::Validation(format!("slot {k} is outside 1..={}", t.n())))
                }
                (Some(k), _) => k - 1,
                (None, Some(&k)) => k,
                (None, None) => {
                    return Err(CliError::Usage("an empty path needs --slot to pick a cluster variable".into()))
                }
            };
            let w = s.curve(&t, p)?;
            let expected = expand_arc(&t, &w, 0, false).map_err(invalid)?.laurent;
            let got = &seed.cluster()[slot];
            Some(CurveCheck {
                curve: word_text(&t, &w),
                slot: slot + 1,
                by_mutation: got.factored_text(),
                by_matchings: expected.factored_text(),
                difference: (got - &expected).to_string(),
                equal: *got == expected,
            })
        }
    };
    let passed = check.as_ref().is_none_or(|c| c.equal);
    let summary = json!({ "steps": dirs.len(), "checked": check.is_some(), "equal": passed });
    let text = match format {
        Format::Dot => return Err(CliError::Usage("mutate has no DOT output".into())),
        Format::Text => {
            let mut out = String::new();
            for (i, x) in seed.cluster().iter().enumerate() {
                out.push_str(&format!("x{} = {}\n", i + 1, x.factored_text()));
            }
            if let Some(c) = &check {
                out.push_str(&format!("check slot {}: {}\n", c.slot, if c.equal { "match" } else { "MISMATCH" }));
            }
            out
        }
        Format::Json => {
            pretty(&json!({ "path": dirs.iter().map(|k| k + 1).collect::<Vec<_>>(), "trace": trace, "check": check }))
        }
    };
    Ok(Output { stdout: text, passed, summary })
}

#[derive(Serialize)]
struct MatchingJson {
    edges: Vec<usize>,
    height: Vec<usize>,
    x_exponents: Vec<i32>,
    y_exponents: Vec<i32>,
}

#[derive(Serialize)]
struct CoverJson {
    lower: usize,
    upper: usize,
    tile: usize,
}

pub fn lattice(s: &Session, format: Format, curve: &Path) -> Result<Output, CliError> {
    let t = s.surface()?;
    let w = s.curve(&t, curve)?;
    let n = t.n();
    let (kind, graph, lat, weights) = match &w {
        CurveWord::Open { .. } => {
            let g = SnakeGraph::build(&t, &w).map_err(invalid)?;
            let l = g.lattice();
            let ws: Vec<Vec<i32>> = l.matchings.iter().map(|&m| g.weight(m, n)).collect();
            ("snake", g, l, ws)
        }
        CurveWord::Closed { .. } => {
            let b = BandGraph::build(&t, &w.canonical()).map_err(invalid)?;
            let l = b.good_lattice();
            let ws: Vec<Vec<i32>> = l.matchings.iter().map(|&m| b.weight(m, n)).collect();
            ("band", b.snake().clone(), l, ws)
        }
        CurveWord::Segment(_) => {
            return Err(CliError::Validation("an arc of the triangulation has no snake graph".into()))
        }
    };
    let summary = json!({ "curve": word_text(&t, &w), "kind": kind, "tiles": graph.len(), "matchings": lat.len() });
    let text = match format {
        Format::Dot => lat.to_dot(),
        Format::Text => {
            format!("{kind} graph with {} tiles, {} matchings, {} covers\n", graph.len(), lat.len(), lat.covers.len())
        }
        Format::Json => {
            let matchings: Vec<MatchingJson> = lat
                .matchings
                .iter()
                .zip(&lat.heights)
                .zip(weights)
                .map(|((m, h), x_exponents)| MatchingJson {
                    edges: m.edges().collect(),
                    height: h.iter().map(|x| x + 1).collect(),
                    x_exponents,
                    y_exponents: graph.height_exponents(h, n),
                })
                .collect();
            let covers: Vec<CoverJson> =
                lat.covers.iter().map(|c| CoverJson { lower: c.lower, upper: c.upper, tile: c.tile + 1 }).collect();
            pretty(&json!({
                "curve": word_text(&t, &w),
                "kind": kind,
                "tiles": graph.len(),
                "matchings": matchings,
                "covers": covers,
            }))
        }
    };
    Ok(Output::pass(text, summary))
}

#[derive(Serialize)]
struct CatalogEntry {
    word: String,
    kind: &'static str,
    crossings: usize,
    curve: CurveSpec,
}

pub fn catalog(s: &Session, format: Format, bound: usize) -> Result<Output, CliError> {
    let t = s.surface()?;
    let m = family_model(&t)?;
    let entries: Vec<CatalogEntry> = m
        .catalog(bound)
        .map_err(invalid)?
        .iter()
        .map(|w| CatalogEntry {
            word: word_text(&t, w),
            kind: if w.is_closed() { "loop" } else { "arc" },
            crossings: w.len(),
            curve: t.curve_to_spec(w),
        })
        .collect();
    let summary = json!({ "curves": entries.len(), "bound": bound });
    let text = match format {
        Format::Dot => return Err(CliError::Usage("catalog has no DOT output".into())),
        Format::Text => entries.iter().map(|e| format!("{} {}\n", e.kind, e.word)).collect(),
        Format::Json => pretty(&entries),
    };
    Ok(Output::pass(text, summary))
}

#[derive(Serialize)]
struct ElementJson {
    pieces: Vec<Piece>,
    g_vector: Vec<i64>,
    laurent: String,
}

pub fn bases(s: &Session, format: Format, bound: BasisBound, variant: Variant) -> Result<Output, CliError> {
    let t = s.surface()?;
    let m = family_model(&t)?;
    let els = enumerate_basis_elements(m.family(), bound, variant).map_err(invalid)?;
    let out: Vec<ElementJson> = els
        .iter()
        .map(|e| ElementJson { pieces: e.pieces.clone(), g_vector: e.g.0.clone(), laurent: e.laurent.factored_text() })
        .collect();
    let summary = json!({ "elements": out.len(), "variant": variant });
    let text = match format {
        Format::Dot => return Err(CliError::Usage("bases has no DOT output".into())),
        Format::Text => out.iter().map(|e| format!("{:?} {}\n", e.g_vector, e.laurent)).collect(),
        Format::Json => pretty(&out),
    };
    Ok(Output::pass(text, summary))
}
