//! The counting engine: per-vertex gross frequencies by upward recursion
//! over the graphlet families, zero filtering from precedent frequencies,
//! and exact linear conversion to net frequencies, with reduced systems
//! that skip the clique computation wherever a zero is already proven.

mod fam3;
mod fam4;
mod fam5;
mod prims;
mod solve;

use rayon::prelude::*;
use thiserror::Error;

use crate::atlas::{Atlas, GraphletId};
use crate::conv::{ConversionSet, OrbitMode};
use crate::freq::{CountKind, FrequencyTable};
use crate::graph::SourceGraph;

pub use prims::Globals;
pub use solve::{FamilySolver, FilterRule, Witness};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("engine supports 2 <= t <= 5, got {0}")]
    BadT(u8),
    #[error("conversion matrices were built for t={built} {mode}, need t={need} orbit")]
    MatrixMismatch { built: u8, mode: String, need: u8 },
    #[error("atlas hash mismatch between matrices ({0}) and atlas ({1})")]
    AtlasMismatch(String, String),
}

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    pub t: u8,
    pub filters: bool,
    pub reduced: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            t: 5,
            filters: true,
            reduced: true,
        }
    }
}

impl EngineOptions {
    pub fn default_t(t: u8) -> Self {
        EngineOptions {
            t,
            ..Default::default()
        }
    }
}

/// How each vertex was handled at one family step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOutcome {
    /// Every graphlet of the family was proven zero before any counting.
    FilteredZero,
    /// A proven zero let the reduced system skip the clique computation.
    Reduced,
    /// Full system was solved and turned up at least one zero frequency.
    ZeroByFull,
    /// Full system, all frequencies positive.
    Full,
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct FamilyStats {
    pub s: u8,
    pub zero_by_filter: u64,
    pub reduced_system: u64,
    pub zero_found_by_full_system: u64,
    pub full_system: u64,
}

impl FamilyStats {
    pub fn total(&self) -> u64 {
        self.zero_by_filter + self.reduced_system + self.zero_found_by_full_system + self.full_system
    }

    pub fn percentages(&self) -> [f64; 4] {
        let t = self.total().max(1) as f64;
        [
            self.zero_by_filter as f64 * 100.0 / t,
            self.reduced_system as f64 * 100.0 / t,
            self.zero_found_by_full_system as f64 * 100.0 / t,
            self.full_system as f64 * 100.0 / t,
        ]
    }
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct RunStats {
    pub families: Vec<FamilyStats>,
}

impl RunStats {
    pub fn to_json(&self) -> String {
        self.to_json_with_meta(&[])
    }

    pub fn to_json_with_meta(&self, meta: &[(&str, String)]) -> String {
        let fams: Vec<serde_json::Value> = self
            .families
            .iter()
            .map(|f| {
                let p = f.percentages();
                serde_json::json!({
                    "family": f.s,
                    "vertices": f.total(),
                    "zero_by_filter": {"count": f.zero_by_filter, "pct": p[0]},
                    "reduced_system": {"count": f.reduced_system, "pct": p[1]},
                    "zero_found_by_full_system": {"count": f.zero_found_by_full_system, "pct": p[2]},
                    "full_system": {"count": f.full_system, "pct": p[3]},
                })
            })
            .collect();
        let meta: serde_json::Map<String, serde_json::Value> = meta
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "meta": meta, "families": fams }))
            .unwrap()
    }
}

/// Per-family masks: which graphlets were proven zero at each vertex, and
/// one witness (rule + precedent + bound) per masked vertex.
#[derive(Debug, Clone)]
pub struct FamilyMask {
    pub s: u8,
    /// Bit g set = family-local graphlet g proven zero at the vertex.
    pub zero_bits: Vec<u64>,
    pub first_witness: Vec<Option<Witness>>,
}

pub struct RunOutput {
    pub net: FrequencyTable,
    pub stats: RunStats,
    pub masks: Vec<FamilyMask>,
}

/// Run the engine over families 1..=t and return net frequency maps.
/// Filter and reduced-system options change cost, never output.
pub fn run(
    g: &SourceGraph,
    atlas: &Atlas,
    conv: &ConversionSet,
    opts: EngineOptions,
) -> Result<RunOutput, EngineError> {
    if opts.t < 2 || opts.t > 5 {
        return Err(EngineError::BadT(opts.t));
    }
    if conv.mode != OrbitMode::Orbit || conv.t < opts.t {
        return Err(EngineError::MatrixMismatch {
            built: conv.t,
            mode: conv.mode.as_str().into(),
            need: opts.t,
        });
    }
    if conv.atlas_hash != atlas.hash() {
        return Err(EngineError::AtlasMismatch(
            conv.atlas_hash.clone(),
            atlas.hash(),
        ));
    }

    let n = g.n();
    let ids: Vec<GraphletId> = atlas.orbit_ids(opts.t);
    let mut net = FrequencyTable::zeros(opts.t, CountKind::Net, ids, n);
    let mut stats = RunStats::default();
    let mut masks = Vec::new();

    // Families 1 and 2: singleton count one, edge count the degree.
    let base2 = atlas.flat_index(GraphletId::new(2, 1, 1));
    for v in 0..n {
        net.set(v, 0, 1);
        if opts.t >= 2 {
            net.set(v, base2, g.degree(v as u32) as i128);
        }
    }

    let tier = if opts.t >= 5 {
        prims::Tier::Penta
    } else {
        prims::Tier::Quad
    };
    let mut globals = Globals::build(g, tier);

    for s in 3..=opts.t {
        if s == 5 {
            // The penta step reads quad-family results at neighbor vertices.
            globals.fill_from_quad(g, atlas, &net);
        }
        let (fam_stats, mask) = run_family(g, atlas, conv, &globals, &mut net, s, opts);
        stats.families.push(fam_stats);
        masks.push(mask);
    }

    Ok(RunOutput { net, stats, masks })
}

fn run_family(
    g: &SourceGraph,
    atlas: &Atlas,
    conv: &ConversionSet,
    globals: &Globals,
    net: &mut FrequencyTable,
    s: u8,
    opts: EngineOptions,
) -> (FamilyStats, FamilyMask) {
    let n = g.n();
    let solver = FamilySolver::new(atlas, conv, s, opts.t);
    let fam_base = atlas.flat_index(GraphletId::new(s, 1, 1));
    let fam_len = atlas.family(s).orbit_total();

    let mut zero_bits = vec![0u64; n];
    let mut witnesses: Vec<Option<Witness>> = vec![None; n];
    let mut outcomes = vec![VertexOutcome::Full; n];

    // Chunked vertex parallelism: workers own disjoint row ranges of the
    // net table; output is independent of the chunking.
    let chunk = 1024usize.max(n / (rayon::current_num_threads() * 8).max(1));
    let rows: Vec<(usize, &mut [i128])> = net.rows_mut().enumerate().collect();

    rows.into_par_iter()
        .zip_eq(zero_bits.par_iter_mut())
        .zip_eq(witnesses.par_iter_mut())
        .zip_eq(outcomes.par_iter_mut())
        .with_min_len(chunk)
        .for_each_init(
            || prims::Scratch::new(n, g.m()),
            |scratch, ((((v, row), zb), wit), outcome)| {
                let vertex = v as u32;
                // Proven zeros from precedent-family frequencies.
                let mut zeros = 0u64;
                if opts.filters {
                    zeros = solver.prop2_mask(row, fam_base, wit);
                }
                let all_mask = if fam_len == 64 {
                    u64::MAX
                } else {
                    (1u64 << fam_len) - 1
                };
                if opts.filters && zeros == all_mask {
                    for gidx in 0..fam_len {
                        row[fam_base + gidx] = 0;
                    }
                    *zb = zeros;
                    *outcome = VertexOutcome::FilteredZero;
                    return;
                }

                // Gross counts for everything but the clique.
                let mut gross = vec![0i128; fam_len];
                match s {
                    3 => fam3::gross(g, globals, vertex, &solver.catalog_map, &mut gross),
                    4 => fam4::gross(g, globals, scratch, vertex, &solver.catalog_map, &mut gross),
                    5 => fam5::gross(g, globals, scratch, vertex, &solver.catalog_map, &mut gross),
                    _ => unreachable!(),
                }

                if opts.filters {
                    zeros |= solver.prop1_mask(&gross, zeros, wit);
                }

                let clique = solver.clique_idx;
                let mut use_reduced = opts.reduced && opts.filters && zeros != 0;
                if use_reduced {
                    if zeros >> clique & 1 == 1 {
                        gross[clique] = 0;
                    } else {
                        let j = solver.pick_reduced_column(zeros);
                        if solver.reduced_is_singular(j) {
                            // Cannot happen for the clique column; guard per
                            // the declared contract and fall back.
                            eprintln!(
                                "reduced system singular at v={vertex} (family {s}, column {j}); using full system"
                            );
                            use_reduced = false;
                        } else {
                            gross[clique] = solver.recover_clique_gross(&gross, j);
                        }
                    }
                }
                if use_reduced {
                    *outcome = VertexOutcome::Reduced;
                } else {
                    gross[clique] = match s {
                        3 => fam3::clique(g, globals, vertex),
                        4 => fam4::clique(g, globals, scratch, vertex),
                        5 => fam5::clique(g, globals, scratch, vertex),
                        _ => unreachable!(),
                    };
                }

                let out = &mut row[fam_base..fam_base + fam_len];
                solver.solve_full(&gross, out);

                if !use_reduced {
                    *outcome = if out.iter().any(|&f| f == 0) {
                        VertexOutcome::ZeroByFull
                    } else {
                        VertexOutcome::Full
                    };
                }
                *zb = zeros;
                debug_assert!(out.iter().all(|&f| f >= 0), "negative net at v={vertex}");
                debug_assert!(
                    (0..fam_len).all(|gi| zeros >> gi & 1 == 0 || out[gi] == 0),
                    "filter flagged a nonzero frequency at v={vertex}"
                );
            },
        );

    let mut fs = FamilyStats {
        s,
        ..Default::default()
    };
    for o in &outcomes {
        match o {
            VertexOutcome::FilteredZero => fs.zero_by_filter += 1,
            VertexOutcome::Reduced => fs.reduced_system += 1,
            VertexOutcome::ZeroByFull => fs.zero_found_by_full_system += 1,
            VertexOutcome::Full => fs.full_system += 1,
        }
    }
    (
        fs,
        FamilyMask {
            s,
            zero_bits,
            first_witness: witnesses,
        },
    )
}

/// Breadth-first sample: the induced subgraph on the first `k` vertices
/// discovered by BFS from the lowest-id vertex, spanning components in id
/// order. Labels are preserved.
pub fn bfs_sample(g: &SourceGraph, k: usize) -> SourceGraph {
    use std::collections::VecDeque;
    let n = g.n();
    let k = k.min(n);
    let mut picked: Vec<u32> = Vec::with_capacity(k);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for start in 0..n as u32 {
        if picked.len() >= k {
            break;
        }
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            picked.push(v);
            if picked.len() >= k {
                break;
            }
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        queue.clear();
    }
    picked.sort_unstable();
    let remap: std::collections::HashMap<u32, u32> = picked
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut edges = Vec::new();
    for &v in &picked {
        for &u in g.neighbors(v) {
            if v < u {
                if let Some(&ru) = remap.get(&u) {
                    edges.push((remap[&v], ru));
                }
            }
        }
    }
    let labels = picked.iter().map(|&v| g.label(v).to_string()).collect();
    SourceGraph::from_id_edges(k, &edges, crate::graph::LoadOptions::default(), labels).unwrap()
}


#[cfg(test)]
mod penta_tests {
    use super::*;
    use crate::graph::LoadOptions;
    use crate::oracle;

    fn graph(n: usize, edges: &[(u32, u32)]) -> SourceGraph {
        SourceGraph::from_id_edges(n, edges, LoadOptions::default(), vec![]).unwrap()
    }

    /// Non-clique penta gross counts against the edge-subset oracle, slot by
    /// slot with the catalog names in failure messages.
    #[test]
    fn penta_gross_formula_validation() {
        let atlas = Atlas::build(5).unwrap();
        let map = fam5::catalog_map(&atlas);
        let conv = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        let base5 = atlas.flat_index(GraphletId::new(5, 1, 1));
        let mut graphs: Vec<(String, SourceGraph)> = Vec::new();
        // Each catalog template as its own host.
        for (name, edges, _) in fam5::CATALOG.iter() {
            let e: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
            graphs.push((format!("host {name}"), graph(5, &e)));
        }
        // Structured shapes.
        graphs.push(("k7".into(), {
            let mut e = Vec::new();
            for a in 0..7u32 { for b in a+1..7 { e.push((a,b)); } }
            graph(7, &e)
        }));
        graphs.push(("k33".into(), graph(6, &[(0,3),(0,4),(0,5),(1,3),(1,4),(1,5),(2,3),(2,4),(2,5)])));
        graphs.push(("hub_pocket".into(), graph(10, &[
            (0,1),(0,2),(0,3),(0,4),(0,5),(0,6),(0,7),(0,8),(0,9),
            (1,2),(2,3),(1,3),(4,5),(5,6),(4,6),(4,7),(7,8),(1,4),
        ])));
        graphs.push(("petersen".into(), graph(10, &[
            (0,1),(1,2),(2,3),(3,4),(4,0),
            (0,5),(1,6),(2,7),(3,8),(4,9),
            (5,7),(6,8),(7,9),(8,5),(9,6),
        ])));
        // Collision-heavy shapes: many overlapping diamonds, shared hubs,
        // bridged cliques, and a dense vertex-transitive core.
        graphs.push(("k28".into(), {
            let mut e = Vec::new();
            for a in 0..2u32 { for b in 2..10 { e.push((a, b)); } }
            graph(10, &e)
        }));
        graphs.push(("barbell".into(), {
            let mut e = Vec::new();
            for a in 0..6u32 { for b in a+1..6 { e.push((a, b)); } }
            for a in 6..12u32 { for b in a+1..12 { e.push((a, b)); } }
            e.push((0, 6));
            graph(12, &e)
        }));
        graphs.push(("windmill".into(), {
            let mut e = Vec::new();
            for k in 0..5u32 {
                let (a, b) = (1 + 2 * k, 2 + 2 * k);
                e.push((0, a));
                e.push((0, b));
                e.push((a, b));
            }
            graph(11, &e)
        }));
        graphs.push(("octahedron".into(), {
            let mut e = Vec::new();
            for a in 0..6u32 {
                for b in a + 1..6 {
                    if b != a + 3 || a >= 3 { if (a, b) != (0,3) && (a,b) != (1,4) && (a,b) != (2,5) { e.push((a, b)); } }
                }
            }
            graph(6, &e)
        }));
        // Pseudo-random sweep.
        let mut x = 0xdeadbeef_u64;
        let mut rnd = move || { x ^= x << 13; x ^= x >> 7; x ^= x << 17; x };
        for trial in 0..14 {
            let n = 7 + (trial % 5);
            let density = 12 + 80 * (trial as u64 % 6) / 5;
            let mut e = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rnd() % 100 < density {
                        e.push((a, b));
                    }
                }
            }
            graphs.push((format!("rand{trial}"), graph(n, &e)));
        }

        for (gname, g) in &graphs {
            let tier = prims::Tier::Penta;
            let mut gl = Globals::build(g, tier);
            // Quad nets feed the penta formulas.
            let opts = EngineOptions { t: 4, filters: false, reduced: false };
            let quad = run(g, &atlas, &conv, opts).unwrap();
            gl.fill_from_quad(g, &atlas, &quad.net);

            let want = oracle::brute_gross(g, &atlas, 5, oracle::DEFAULT_BUDGET).unwrap();
            let mut scratch = prims::Scratch::new(g.n(), g.m());
            let mut got = vec![0i128; 58];
            for v in 0..g.n() as u32 {
                got.iter_mut().for_each(|x| *x = 0);
                fam5::gross(g, &gl, &mut scratch, v, &map, &mut got);
                got[map[57]] = fam5::clique(g, &gl, &mut scratch, v);
                for (slot, (name, _, _)) in fam5::CATALOG.iter().enumerate() {
                    let col = map[slot];
                    assert_eq!(
                        got[col],
                        want.table.get(v as usize, base5 + col),
                        "{gname} v={v} slot {name}"
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod full_run_tests {
    use super::*;
    use crate::graph::LoadOptions;
    use crate::oracle;

    fn graph(n: usize, edges: &[(u32, u32)]) -> SourceGraph {
        SourceGraph::from_id_edges(n, edges, LoadOptions::default(), vec![]).unwrap()
    }

    fn corpus() -> Vec<SourceGraph> {
        let mut out = Vec::new();
        out.push(graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]));
        out.push(graph(6, &[(0,1),(0,2),(0,3),(0,4),(0,5),(1,2),(1,3),(1,4),(1,5),(2,3),(2,4),(2,5),(3,4),(3,5),(4,5)]));
        out.push(graph(10, &[
            (0,1),(1,2),(2,3),(3,4),(4,0),(0,5),(1,6),(2,7),(3,8),(4,9),(5,7),(6,8),(7,9),(8,5),(9,6),
        ]));
        let mut x = 0x1234_5678_u64;
        let mut rnd = move || { x ^= x << 13; x ^= x >> 7; x ^= x << 17; x };
        for trial in 0..10 {
            let n = 8 + (trial % 5);
            let density = 15 + 70 * (trial as u64 % 5) / 4;
            let mut e = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rnd() % 100 < density {
                        e.push((a, b));
                    }
                }
            }
            out.push(graph(n, &e));
        }
        out
    }

    #[test]
    fn penta_engine_matches_oracle() {
        let atlas = Atlas::build(5).unwrap();
        let conv = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        for (gi, g) in corpus().iter().enumerate() {
            let out = run(g, &atlas, &conv, EngineOptions::default()).unwrap();
            let want = oracle::brute_net(g, &atlas, 5, oracle::DEFAULT_BUDGET).unwrap();
            for v in 0..g.n() {
                for idx in 0..out.net.width() {
                    assert_eq!(
                        out.net.get(v, idx),
                        want.table.get(v, idx),
                        "graph {gi} vertex {v} graphlet {}",
                        out.net.ids[idx]
                    );
                }
            }
        }
    }

    #[test]
    fn penta_option_invariance() {
        let atlas = Atlas::build(5).unwrap();
        let conv = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        for g in corpus().iter() {
            let base = run(g, &atlas, &conv, EngineOptions { t: 5, filters: false, reduced: false }).unwrap();
            for (filters, reduced) in [(true, false), (true, true)] {
                let alt = run(g, &atlas, &conv, EngineOptions { t: 5, filters, reduced }).unwrap();
                for v in 0..g.n() {
                    assert_eq!(base.net.row(v), alt.net.row(v));
                }
            }
        }
    }

    #[test]
    fn orbit_sums_match_pattern_counts() {
        let atlas = Atlas::build(5).unwrap();
        let conv = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        let g = corpus().remove(2); // petersen
        let out = run(&g, &atlas, &conv, EngineOptions::default()).unwrap();
        let hat = out.net.aggregate_orbits(&atlas);
        // Petersen: 3-regular, girth 5. Per vertex: 3 wedges centered
        // plus 6 as a leaf, no triangles, and 6 of the twelve 5-cycles.
        let wedge = hat.ids.iter().position(|id| id.s == 3 && id.p == 1).unwrap();
        let tri = hat.ids.iter().position(|id| id.s == 3 && id.p == 2).unwrap();
        let c5 = hat.ids.iter().position(|id| (id.s, id.p) == (5, 8)).unwrap();
        for v in 0..g.n() {
            assert_eq!(hat.get(v, wedge), 9);
            assert_eq!(hat.get(v, tri), 0);
            assert_eq!(hat.get(v, c5), 6);
        }
    }
}


#[cfg(test)]
mod decomposition_tests {
    use super::*;
    use crate::graph::LoadOptions;

    /// Two graphs sharing degree and wedge sequences that split differently
    /// into orbit channels.
    #[test]
    fn orbit_channels_separate_equal_wedge_sequences() {
        let g1 = SourceGraph::from_id_edges(
            8,
            &[(0,3),(0,7),(1,2),(1,6),(2,4),(2,6),(3,5),(3,7),(4,6),(4,7),(5,6),(5,7),(6,7)],
            LoadOptions::default(),
            vec![],
        )
        .unwrap();
        let g2 = SourceGraph::from_id_edges(
            8,
            &[(0,5),(0,7),(1,4),(1,6),(2,3),(2,6),(2,7),(3,6),(3,7),(4,5),(4,6),(5,7),(6,7)],
            LoadOptions::default(),
            vec![],
        )
        .unwrap();
        let atlas = Atlas::build(3).unwrap();
        let conv = ConversionSet::build(&atlas, 3, OrbitMode::Orbit).unwrap();
        let leaf = atlas.flat_index(GraphletId::new(3, 1, 1));
        let center = atlas.flat_index(GraphletId::new(3, 1, 2));
        let degrees = [2i128, 2, 3, 3, 3, 3, 5, 5];
        let wedge_total = [4i128, 4, 4, 4, 7, 7, 9, 9];
        let rows1 = ([4i128, 4, 3, 3, 6, 6, 3, 3], [0i128, 0, 1, 1, 1, 1, 6, 6]);
        let rows2 = ([4i128, 4, 4, 4, 5, 5, 3, 3], [0i128, 0, 0, 0, 2, 2, 6, 6]);
        for (g, (leaf_row, center_row)) in [(&g1, rows1), (&g2, rows2)] {
            let out = run(g, &atlas, &conv, EngineOptions::default_t(3)).unwrap();
            for v in 0..8 {
                assert_eq!(g.degree(v as u32) as i128, degrees[v]);
                assert_eq!(out.net.get(v, leaf), leaf_row[v]);
                assert_eq!(out.net.get(v, center), center_row[v]);
                assert_eq!(
                    out.net.get(v, leaf) + out.net.get(v, center),
                    wedge_total[v]
                );
            }
        }
    }
}

#[cfg(test)]
mod small_input_tests {
    use super::*;
    use crate::graph::LoadOptions;

    #[test]
    fn penta_run_on_tiny_graphs() {
        let atlas = Atlas::build(5).unwrap();
        let conv = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        for (n, edges) in [
            (1usize, vec![]),
            (2, vec![(0u32, 1u32)]),
            (3, vec![(0, 1), (1, 2), (2, 0)]),
            (4, vec![(0, 1), (1, 2), (2, 3)]),
        ] {
            let g = SourceGraph::from_id_edges(n, &edges, LoadOptions::default(), vec![]).unwrap();
            let run = run(&g, &atlas, &conv, EngineOptions::default()).unwrap();
            let want = crate::oracle::brute_net(&g, &atlas, 5, crate::oracle::DEFAULT_BUDGET)
                .unwrap();
            for v in 0..n {
                assert_eq!(run.net.row(v), want.table.row(v), "n={n} v={v}");
            }
        }
    }
}
