//! Brute-force reference counts, straight from the definitions: net counts
//! by enumerating connected vertex subsets and classifying their induced
//! pattern, gross counts by additionally enumerating spanning connected
//! edge subsets. Built for verification, not speed; shares only the atlas
//! and canonical-form lookup with the engine.

use thiserror::Error;

use crate::atlas::{Atlas, GraphletId};
use crate::freq::{CountKind, FrequencyTable};
use crate::graph::SourceGraph;
use crate::small::SmallGraph;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("enumeration budget exceeded ({0} subset visits)")]
    BudgetExceeded(u64),
    #[error("oracle supports t in 1..=atlas range, got {0}")]
    BadT(u8),
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub struct OracleResult {
    pub table: FrequencyTable,
    /// Whole-graph counts per pattern (orbit-free), same family range.
    pub global: Vec<i128>,
    pub global_ids: Vec<GraphletId>,
}

/// Net (induced) counts for every orbit graphlet of families 1..=t.
pub fn brute_net(
    g: &SourceGraph,
    atlas: &Atlas,
    t: u8,
    budget: u64,
) -> Result<OracleResult, OracleError> {
    run(g, atlas, t, budget, CountKind::Net)
}

/// Gross (all-subgraph) counts for every orbit graphlet of families 1..=t.
pub fn brute_gross(
    g: &SourceGraph,
    atlas: &Atlas,
    t: u8,
    budget: u64,
) -> Result<OracleResult, OracleError> {
    run(g, atlas, t, budget, CountKind::Gross)
}

fn run(
    g: &SourceGraph,
    atlas: &Atlas,
    t: u8,
    budget: u64,
    kind: CountKind,
) -> Result<OracleResult, OracleError> {
    if t == 0 || t > atlas.max_s() {
        return Err(OracleError::BadT(t));
    }
    // Upfront guard: sum of binomials, saturating.
    let n = g.n() as u128;
    let mut est: u128 = 0;
    for k in 1..=t as u128 {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c.saturating_mul(n.saturating_sub(i)) / (i + 1);
        }
        est = est.saturating_add(c);
    }
    if est > budget as u128 {
        return Err(OracleError::BudgetExceeded(budget));
    }

    let ids = atlas.orbit_ids(t);
    let mut table = FrequencyTable::zeros(t, kind, ids, g.n());
    let global_ids = atlas.pattern_ids(t);
    let mut global = vec![0i128; global_ids.len()];
    // pat_base[s] = column of pattern (s, 1) among the whole-graph counts.
    let mut pat_base = vec![0usize; t as usize + 1];
    for s in 1..=t {
        pat_base[s as usize] = global_ids.iter().position(|id| id.s == s).unwrap();
    }

    let mut visits = 0u64;
    let mut members: Vec<u32> = Vec::with_capacity(t as usize);
    for root in 0..g.n() as u32 {
        members.push(root);
        process_subset(g, atlas, &members, kind, &mut table, &mut global, &pat_base);
        let ext: Vec<u32> = g.neighbors(root).iter().copied().filter(|&u| u > root).collect();
        extend(
            g, atlas, root, &mut members, ext, t, budget, &mut visits, kind, &mut table,
            &mut global, &pat_base,
        )?;
        members.pop();
    }
    Ok(OracleResult {
        table,
        global,
        global_ids,
    })
}

/// Connected-subset enumeration: each extension candidate set carries only
/// vertices greater than the root that are not yet adjacent to the subset,
/// so every connected subset is visited exactly once.
#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SourceGraph,
    atlas: &Atlas,
    root: u32,
    members: &mut Vec<u32>,
    ext: Vec<u32>,
    t: u8,
    budget: u64,
    visits: &mut u64,
    kind: CountKind,
    table: &mut FrequencyTable,
    global: &mut [i128],
    pat_base: &[usize],
) -> Result<(), OracleError> {
    if members.len() == t as usize {
        return Ok(());
    }
    let mut rest = ext;
    while let Some(w) = rest.pop() {
        *visits += 1;
        if *visits > budget {
            return Err(OracleError::BudgetExceeded(budget));
        }
        members.push(w);
        process_subset(g, atlas, members, kind, table, global, pat_base);
        // Extension set: previous candidates plus exclusive new neighbors.
        let mut ext2 = rest.clone();
        for &u in g.neighbors(w) {
            if u <= root || members.contains(&u) {
                continue;
            }
            // u must not be adjacent to any earlier member (exclusive
            // neighborhood) and not already a candidate.
            let adjacent_earlier = members[..members.len() - 1]
                .iter()
                .any(|&x| g.has_edge(x, u));
            if !adjacent_earlier && !ext2.contains(&u) && !rest.contains(&u) {
                ext2.push(u);
            }
        }
        extend(
            g, atlas, root, members, ext2, t, budget, visits, kind, table, global, pat_base,
        )?;
        members.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn process_subset(
    g: &SourceGraph,
    atlas: &Atlas,
    members: &[u32],
    kind: CountKind,
    table: &mut FrequencyTable,
    global: &mut [i128],
    pat_base: &[usize],
) {
    let k = members.len() as u8;
    let mut sorted: Vec<u32> = members.to_vec();
    sorted.sort_unstable();
    let mut induced = SmallGraph::empty(k);
    for j in 1..k {
        for i in 0..j {
            if g.has_edge(sorted[i as usize], sorted[j as usize]) {
                induced.add_edge(i, j);
            }
        }
    }
    match kind {
        CountKind::Net => {
            record(atlas, &induced, &sorted, table, global, pat_base);
        }
        CountKind::Gross => {
            // Every spanning connected edge subset is one subgraph copy.
            let edges = induced.edges();
            for emask in 0..1u32 << edges.len() {
                let mut sub = SmallGraph::empty(k);
                for (b, &(x, y)) in edges.iter().enumerate() {
                    if emask >> b & 1 == 1 {
                        sub.add_edge(x, y);
                    }
                }
                if sub.is_connected() {
                    record(atlas, &sub, &sorted, table, global, pat_base);
                }
            }
        }
    }
}

fn record(
    atlas: &Atlas,
    sub: &SmallGraph,
    sorted: &[u32],
    table: &mut FrequencyTable,
    global: &mut [i128],
    pat_base: &[usize],
) {
    let k = sub.n();
    let (p, canon) = atlas
        .classify(sub)
        .expect("connected subgraph must classify");
    let pat = atlas.pattern(k, p);
    global[pat_base[k as usize] + p as usize - 1] += 1;
    let base = atlas.flat_index(GraphletId::new(k, p, 1));
    for (rank, &v) in sorted.iter().enumerate() {
        let pos = canon.to_canon[rank];
        let sig0 = pat.orbit_of[pos as usize];
        table.add(v as usize, base + sig0 as usize, 1);
    }
}
