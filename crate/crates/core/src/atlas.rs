//! The graphlet atlas: connected template graphs up to 8 nodes, grouped into
//! per-size families, each pattern carrying its automorphism orbits and a
//! deterministic total order (the SEIRA scheme).
//!
//! Ordering rules: families by node count; patterns within a family by edge
//! count, ties broken by comparing the sorted sequences of induced-subgraph
//! counts against every graphlet already placed (the sequence with the larger
//! entry at the first discrepancy goes first); orbits within a pattern by the
//! per-vertex count vectors at orbit representatives, smaller first. Residual
//! ties fall back to the canonical edge bitset and are flagged.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::small::{canonical, Canon, SmallGraph, MAX_N};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("family size {0} out of supported range 1..=8")]
    SizeOutOfRange(u8),
    #[error("unknown graphlet id {0}")]
    UnknownId(GraphletId),
}

/// Index triplet of a graphlet: family size `s`, pattern index `p` (1-based),
/// orbit `sigma` (1-based; 0 denotes the orbit-free pattern itself).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphletId {
    pub s: u8,
    pub p: u16,
    pub sigma: u8,
}

impl GraphletId {
    pub fn new(s: u8, p: u16, sigma: u8) -> Self {
        GraphletId { s, p, sigma }
    }
}

impl fmt::Display for GraphletId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma == 0 {
            write!(f, "H_{{{},{}}}", self.s, self.p)
        } else {
            write!(f, "H_{{{},{},{}}}", self.s, self.p, self.sigma)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Pattern {
    /// Canonical form of the template.
    pub graph: SmallGraph,
    pub edge_count: u8,
    /// Canonical vertex -> 0-based orbit index (sigma - 1).
    pub orbit_of: Vec<u8>,
    /// Orbit -> representative canonical vertex (smallest).
    pub orbit_reps: Vec<u8>,
    pub orbit_sizes: Vec<u8>,
    pub aut_size: u64,
    /// Pattern order needed the canonical-bitset fallback.
    pub pattern_tie_fallback: bool,
    /// Some orbit pair needed the fallback.
    pub orbit_tie_fallback: bool,
}

impl Pattern {
    pub fn orbit_count(&self) -> u8 {
        self.orbit_reps.len() as u8
    }
}

#[derive(Debug, Clone)]
pub struct Family {
    pub s: u8,
    pub patterns: Vec<Pattern>,
}

impl Family {
    /// Number of orbit-specific graphlets in the family.
    pub fn orbit_total(&self) -> usize {
        self.patterns.iter().map(|p| p.orbit_reps.len()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct Atlas {
    families: Vec<Family>,
    /// (n, canonical bits) -> 0-based pattern index within family n.
    lookup: HashMap<(u8, u32), u16>,
    /// Flat offset of each family's first orbit graphlet, index s-1.
    flat_base: Vec<usize>,
}

impl Atlas {
    /// Enumerate and order all families with up to `max_s` nodes.
    pub fn build(max_s: u8) -> Result<Atlas, AtlasError> {
        if max_s == 0 || max_s as usize > MAX_N {
            return Err(AtlasError::SizeOutOfRange(max_s));
        }
        let mut atlas = Atlas {
            families: Vec::new(),
            lookup: HashMap::new(),
            flat_base: Vec::new(),
        };
        for s in 1..=max_s {
            atlas.push_family(s);
        }
        Ok(atlas)
    }

    pub fn max_s(&self) -> u8 {
        self.families.len() as u8
    }

    pub fn family(&self, s: u8) -> &Family {
        &self.families[s as usize - 1]
    }

    pub fn pattern(&self, s: u8, p: u16) -> &Pattern {
        &self.family(s).patterns[p as usize - 1]
    }

    pub fn graphlet(&self, id: GraphletId) -> Result<(&Pattern, u8), AtlasError> {
        if id.s == 0 || id.s > self.max_s() {
            return Err(AtlasError::UnknownId(id));
        }
        let fam = self.family(id.s);
        if id.p == 0 || id.p as usize > fam.patterns.len() {
            return Err(AtlasError::UnknownId(id));
        }
        let pat = &fam.patterns[id.p as usize - 1];
        if id.sigma as usize > pat.orbit_reps.len() {
            return Err(AtlasError::UnknownId(id));
        }
        Ok((pat, id.sigma))
    }

    /// Pattern index (1-based) of a connected graph, via canonical form.
    pub fn classify(&self, g: &SmallGraph) -> Option<(u16, Canon)> {
        let c = canonical(g);
        self.lookup
            .get(&(g.n(), c.graph.bits()))
            .map(|&p0| (p0 + 1, c))
    }

    /// Pattern index for an already-canonical bitset.
    pub fn lookup_canonical(&self, n: u8, bits: u32) -> Option<u16> {
        self.lookup.get(&(n, bits)).map(|&p0| p0 + 1)
    }

    /// Orbit-specific graphlets of families 1..=t in order.
    pub fn orbit_ids(&self, t: u8) -> Vec<GraphletId> {
        let mut out = Vec::new();
        for s in 1..=t {
            for (pi, pat) in self.family(s).patterns.iter().enumerate() {
                for sig in 1..=pat.orbit_reps.len() as u8 {
                    out.push(GraphletId::new(s, pi as u16 + 1, sig));
                }
            }
        }
        out
    }

    pub fn pattern_ids(&self, t: u8) -> Vec<GraphletId> {
        let mut out = Vec::new();
        for s in 1..=t {
            for pi in 0..self.family(s).patterns.len() {
                out.push(GraphletId::new(s, pi as u16 + 1, 0));
            }
        }
        out
    }

    /// Flat index of an orbit graphlet among `orbit_ids(max_s)`.
    pub fn flat_index(&self, id: GraphletId) -> usize {
        debug_assert!(id.sigma >= 1);
        let fam = self.family(id.s);
        let mut off = self.flat_base[id.s as usize - 1];
        for pat in &fam.patterns[..id.p as usize - 1] {
            off += pat.orbit_reps.len();
        }
        off + id.sigma as usize - 1
    }

    pub fn orbit_flat_len(&self, t: u8) -> usize {
        (1..=t).map(|s| self.family(s).orbit_total()).sum()
    }

    fn push_family(&mut self, s: u8) {
        let canons = self.enumerate_canonical(s);
        // Tie-break profiles against all precedent families. Graphlets from
        // the same family never occur as induced subgraphs of a same-size
        // host, so their profile entries are all zero and can be dropped.
        let profiles: Vec<PerVertexProfile> = canons
            .iter()
            .map(|c| self.precedent_profile(&c.graph))
            .collect();
        let mut keys: Vec<Vec<i64>> = profiles.iter().map(|p| p.global()).collect();
        for k in &mut keys {
            k.sort_unstable();
        }
        let mut order: Vec<usize> = (0..canons.len()).collect();
        order.sort_by(|&a, &b| {
            canons[a]
                .graph
                .edge_count()
                .cmp(&canons[b].graph.edge_count())
                .then_with(|| keys[b].cmp(&keys[a]))
                .then_with(|| canons[a].graph.bits().cmp(&canons[b].graph.bits()))
        });

        let mut patterns = Vec::with_capacity(order.len());
        for &ci in order.iter() {
            let canon = &canons[ci];
            let n = canon.graph.n() as usize;
            let m = canon.graph.edge_count();
            let pattern_tie_fallback = (0..canons.len()).any(|cj| {
                cj != ci && canons[cj].graph.edge_count() == m && keys[cj] == keys[ci]
            });

            // Order raw orbits by the per-vertex profile at a representative.
            let prof = &profiles[ci];
            let raw_count = canon.orbit_count as usize;
            let mut raw_reps = vec![u8::MAX; raw_count];
            for pos in 0..n as u8 {
                let r = canon.orbit_of[pos as usize] as usize;
                if raw_reps[r] == u8::MAX {
                    raw_reps[r] = pos;
                }
            }
            let mut raw_order: Vec<usize> = (0..raw_count).collect();
            raw_order.sort_by(|&a, &b| {
                prof.per_vertex[raw_reps[a] as usize]
                    .cmp(&prof.per_vertex[raw_reps[b] as usize])
                    .then(raw_reps[a].cmp(&raw_reps[b]))
            });
            let orbit_tie_fallback = (0..raw_count).any(|a| {
                (a + 1..raw_count).any(|b| {
                    prof.per_vertex[raw_reps[a] as usize] == prof.per_vertex[raw_reps[b] as usize]
                })
            });
            let mut sigma_of_raw = vec![0u8; raw_count];
            for (sig0, &raw) in raw_order.iter().enumerate() {
                sigma_of_raw[raw] = sig0 as u8;
            }
            let orbit_of: Vec<u8> = (0..n)
                .map(|pos| sigma_of_raw[canon.orbit_of[pos] as usize])
                .collect();
            let mut orbit_reps = vec![u8::MAX; raw_count];
            let mut orbit_sizes = vec![0u8; raw_count];
            for (pos, &sig0) in orbit_of.iter().enumerate() {
                orbit_sizes[sig0 as usize] += 1;
                if pos as u8 <= orbit_reps[sig0 as usize] || orbit_reps[sig0 as usize] == u8::MAX {
                    orbit_reps[sig0 as usize] = orbit_reps[sig0 as usize].min(pos as u8);
                }
            }

            self.lookup
                .insert((s, canon.graph.bits()), patterns.len() as u16);
            patterns.push(Pattern {
                graph: canon.graph,
                edge_count: m,
                orbit_of,
                orbit_reps,
                orbit_sizes,
                aut_size: canon.aut_size,
                pattern_tie_fallback,
                orbit_tie_fallback,
            });
        }
        let base = if s == 1 {
            0
        } else {
            self.flat_base[s as usize - 2] + self.family(s - 1).orbit_total()
        };
        self.flat_base.push(base);
        self.families.push(Family { s, patterns });
    }

    /// All connected non-isomorphic s-node graphs as canonical forms.
    fn enumerate_canonical(&self, s: u8) -> Vec<Canon> {
        let mut seen: HashMap<u32, Canon> = HashMap::new();
        if s <= 6 {
            let nbits = s as u32 * (s as u32 - 1) / 2;
            for bits in 0..1u64 << nbits {
                let g = SmallGraph::from_bits(s, bits as u32);
                if !g.is_connected() {
                    continue;
                }
                let c = canonical(&g);
                seen.entry(c.graph.bits()).or_insert(c);
            }
        } else {
            // Extend each (s-1)-node pattern by one vertex; every connected
            // graph has a non-cut vertex, so all s-node graphs are reached.
            for parent in &self.family(s - 1).patterns {
                for mask in 1u16..1 << (s - 1) {
                    let mut g = SmallGraph::from_bits(s, parent.graph.bits());
                    for v in 0..s - 1 {
                        if mask >> v & 1 == 1 {
                            g.add_edge(v, s - 1);
                        }
                    }
                    let c = canonical(&g);
                    seen.entry(c.graph.bits()).or_insert(c);
                }
            }
        }
        let mut out: Vec<Canon> = seen.into_values().collect();
        out.sort_by_key(|c| c.graph.bits());
        out
    }

    /// Per-vertex induced counts of every already-ordered graphlet (all
    /// families smaller than the host) inside the host.
    pub fn precedent_profile(&self, host: &SmallGraph) -> PerVertexProfile {
        let n = host.n();
        let upto = (n - 1).min(self.families.len() as u8);
        let flat_len = self.orbit_flat_len(upto);
        let mut per_vertex = vec![vec![0i64; flat_len]; n as usize];
        for mask in 1u16..1 << n {
            let k = mask.count_ones() as u8;
            if k >= n || k > upto {
                continue;
            }
            if !host.connected_subset(mask as u8) {
                continue;
            }
            let sub = host.induced(mask as u8);
            let c = canonical(&sub);
            let p0 = self.lookup[&(k, c.graph.bits())];
            let pat = &self.families[k as usize - 1].patterns[p0 as usize];
            let base = self.flat_index(GraphletId::new(k, p0 + 1, 1));
            let mut rank = 0u8;
            for v in 0..n {
                if mask >> v & 1 == 1 {
                    let pos = c.to_canon[rank as usize];
                    let sig0 = pat.orbit_of[pos as usize];
                    per_vertex[v as usize][base + sig0 as usize] += 1;
                    rank += 1;
                }
            }
        }
        PerVertexProfile { per_vertex }
    }

    /// Stable text export: one record per orbit graphlet.
    pub fn export(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "# graphlet atlas, families 1..={}", self.max_s())?;
        writeln!(w, "# s p sigma m edge_bitset_hex orbit_vector automorphism_count")?;
        for s in 1..=self.max_s() {
            for (pi, pat) in self.family(s).patterns.iter().enumerate() {
                let orbit_vec: Vec<String> =
                    pat.orbit_of.iter().map(|o| (o + 1).to_string()).collect();
                for sig in 1..=pat.orbit_reps.len() {
                    writeln!(
                        w,
                        "{} {} {} {} {:x} {} {}{}",
                        s,
                        pi + 1,
                        sig,
                        pat.edge_count,
                        pat.graph.bits(),
                        orbit_vec.join(","),
                        pat.aut_size,
                        if pat.pattern_tie_fallback || pat.orbit_tie_fallback {
                            " tie-fallback"
                        } else {
                            ""
                        }
                    )?;
                }
            }
        }
        Ok(())
    }

    /// Hash of the export text; pins an atlas version in output headers.
    pub fn hash(&self) -> String {
        let mut buf = Vec::new();
        self.export(&mut buf).unwrap();
        let mut h = Sha256::new();
        h.update(&buf);
        let out = h.finalize();
        out.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Per-vertex induced-subgraph counts over a fixed precedent ordering.
pub struct PerVertexProfile {
    pub per_vertex: Vec<Vec<i64>>,
}

impl PerVertexProfile {
    pub fn global(&self) -> Vec<i64> {
        if self.per_vertex.is_empty() {
            return Vec::new();
        }
        let mut g = vec![0i64; self.per_vertex[0].len()];
        for row in &self.per_vertex {
            for (a, b) in g.iter_mut().zip(row) {
                *a += b;
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes_match_up_to_six() {
        let atlas = Atlas::build(6).unwrap();
        let pat: Vec<usize> = (1..=6).map(|s| atlas.family(s).patterns.len()).collect();
        let orb: Vec<usize> = (1..=6).map(|s| atlas.family(s).orbit_total()).collect();
        assert_eq!(pat, vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(orb, vec![1, 1, 3, 11, 58, 407]);
    }

    #[test]
    fn three_node_family_order() {
        let atlas = Atlas::build(3).unwrap();
        let fam = atlas.family(3);
        // Wedge (2 edges) before triangle (3 edges).
        assert_eq!(fam.patterns[0].edge_count, 2);
        assert_eq!(fam.patterns[1].edge_count, 3);
        assert_eq!(fam.patterns[0].orbit_count(), 2);
        assert_eq!(fam.patterns[1].orbit_count(), 1);
        // Wedge orbit 1 is the leaf pair, orbit 2 the center.
        let wedge = &fam.patterns[0];
        let leaf_rep = wedge.orbit_reps[0];
        assert_eq!(wedge.graph.degree(leaf_rep), 1);
        assert_eq!(wedge.orbit_sizes, vec![2, 1]);
    }

    #[test]
    fn quad_family_order_and_orbits() {
        let atlas = Atlas::build(4).unwrap();
        let fam = atlas.family(4);
        let orbit_counts: Vec<u8> = fam.patterns.iter().map(|p| p.orbit_count()).collect();
        assert_eq!(orbit_counts, vec![2, 2, 3, 1, 2, 1]);
        // Degrees of orbit representatives, in (p, sigma) order: these pin
        // claw, path, paw, cycle, diamond, clique with their orbit order.
        let mut rep_degs = Vec::new();
        for pat in &fam.patterns {
            for &r in &pat.orbit_reps {
                rep_degs.push(pat.graph.degree(r));
            }
        }
        assert_eq!(rep_degs, vec![1, 3, 1, 2, 1, 2, 3, 2, 2, 3, 3]);
        let edge_counts: Vec<u8> = fam.patterns.iter().map(|p| p.edge_count).collect();
        assert_eq!(edge_counts, vec![3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn singleton_family() {
        let atlas = Atlas::build(1).unwrap();
        assert_eq!(atlas.family(1).patterns.len(), 1);
        assert_eq!(atlas.family(1).orbit_total(), 1);
    }

    #[test]
    fn lookup_round_trip() {
        let atlas = Atlas::build(5).unwrap();
        for s in 1..=5u8 {
            for (pi, pat) in atlas.family(s).patterns.iter().enumerate() {
                let p = atlas.lookup_canonical(s, pat.graph.bits()).unwrap();
                assert_eq!(p as usize, pi + 1);
            }
        }
        // K_4 is the last quad pattern, K_3 the last triple pattern.
        let (p, _) = atlas.classify(&SmallGraph::complete(4)).unwrap();
        assert_eq!(p, 6);
        let (p, _) = atlas.classify(&SmallGraph::complete(3)).unwrap();
        assert_eq!(p, 2);
    }

    #[test]
    fn seira_deterministic() {
        let a = Atlas::build(5).unwrap();
        let b = Atlas::build(5).unwrap();
        assert_eq!(a.hash(), b.hash());
        for s in 1..=5u8 {
            for (pa, pb) in a.family(s).patterns.iter().zip(&b.family(s).patterns) {
                assert_eq!(pa.graph.bits(), pb.graph.bits());
                assert_eq!(pa.orbit_of, pb.orbit_of);
            }
        }
    }

    #[test]
    fn edge_count_monotone_within_family() {
        let atlas = Atlas::build(6).unwrap();
        for s in 1..=6u8 {
            let fam = atlas.family(s);
            for w in fam.patterns.windows(2) {
                assert!(w[0].edge_count <= w[1].edge_count);
            }
        }
    }

    #[test]
    fn unknown_ids_rejected() {
        let atlas = Atlas::build(4).unwrap();
        assert!(atlas.graphlet(GraphletId::new(4, 6, 1)).is_ok());
        assert!(atlas.graphlet(GraphletId::new(4, 7, 1)).is_err());
        assert!(atlas.graphlet(GraphletId::new(4, 6, 2)).is_err());
        assert!(atlas.graphlet(GraphletId::new(5, 1, 1)).is_err());
    }

    #[test]
    fn flat_indices_consistent() {
        let atlas = Atlas::build(5).unwrap();
        let ids = atlas.orbit_ids(5);
        assert_eq!(ids.len(), 1 + 1 + 3 + 11 + 58);
        for (i, id) in ids.iter().enumerate() {
            assert_eq!(atlas.flat_index(*id), i);
        }
    }
}
