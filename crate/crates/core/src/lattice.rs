//! The graphlet inclusion poset: all graphlets of the first t families plus
//! the null element, ordered by proper subgraph inclusion, with the covering
//! relation (its transitive reduction) and per-element layers. The path
//! length from a graphlet to the null element is its edge count plus one.

use std::io::Write;

use crate::atlas::{Atlas, GraphletId};
use crate::conv::OrbitMode;
use crate::small::SmallGraph;

/// Whether the row graphlet embeds into the column graphlet as a subgraph,
/// mapping designated orbit onto designated orbit when sigma > 0. Proper
/// inclusion additionally requires the two ids to differ.
pub fn is_subgraph(atlas: &Atlas, gi: GraphletId, gj: GraphletId) -> bool {
    if gi.s > gj.s {
        return false;
    }
    let pi = atlas.pattern(gi.s, gi.p);
    let pj = atlas.pattern(gj.s, gj.p);
    if pi.edge_count > pj.edge_count {
        return false;
    }
    if gi.sigma == 0 {
        exists_embedding(&pi.graph, &pj.graph)
    } else {
        let root = pi.orbit_reps[gi.sigma as usize - 1];
        let target = pj.orbit_reps[gj.sigma as usize - 1];
        exists_embedding_rooted(&pi.graph, root, &pj.graph, target)
    }
}

fn exists_embedding(pat: &SmallGraph, host: &SmallGraph) -> bool {
    (0..host.n()).any(|u| exists_embedding_rooted(pat, 0, host, u))
}

fn exists_embedding_rooted(pat: &SmallGraph, root: u8, host: &SmallGraph, target: u8) -> bool {
    let n = pat.n() as usize;
    if n > host.n() as usize {
        return false;
    }
    let mut order = [0u8; 8];
    let mut in_order = 1u8 << root;
    order[0] = root;
    let mut len = 1;
    let mut qi = 0;
    while qi < len {
        let v = order[qi];
        qi += 1;
        let mut nb = pat.nbr_mask(v) & !in_order;
        while nb != 0 {
            let w = nb.trailing_zeros() as u8;
            nb &= nb - 1;
            order[len] = w;
            in_order |= 1 << w;
            len += 1;
        }
    }
    let mut placed_nbrs = [0u8; 8];
    for k in 0..n {
        for e in 0..k {
            if pat.has_edge(order[k], order[e]) {
                placed_nbrs[k] |= 1 << e;
            }
        }
    }
    fn dfs(
        k: usize,
        n: usize,
        host: &SmallGraph,
        placed_nbrs: &[u8; 8],
        images: &mut [u8; 8],
        used: u8,
    ) -> bool {
        if k == n {
            return true;
        }
        for cand in 0..host.n() {
            if used >> cand & 1 == 1 {
                continue;
            }
            let mut req = placed_nbrs[k];
            let mut ok = true;
            while req != 0 {
                let e = req.trailing_zeros() as usize;
                req &= req - 1;
                if !host.has_edge(cand, images[e]) {
                    ok = false;
                    break;
                }
            }
            if ok {
                images[k] = cand;
                if dfs(k + 1, n, host, placed_nbrs, images, used | 1 << cand) {
                    return true;
                }
            }
        }
        false
    }
    let mut images = [0u8; 8];
    images[0] = target;
    dfs(1, n, host, &placed_nbrs, &mut images, 1 << target)
}

pub struct GraphletLattice {
    pub t: u8,
    pub mode: OrbitMode,
    /// Element 0 is the null graph; element k > 0 corresponds to ids[k-1].
    pub ids: Vec<GraphletId>,
    /// Path length to the null element: 0 for null, m(H)+1 for a graphlet.
    pub layer: Vec<u32>,
    n_el: usize,
    precedes_bits: Vec<u64>,
    pub covers: Vec<(usize, usize)>,
}

impl GraphletLattice {
    pub fn build(atlas: &Atlas, t: u8, mode: OrbitMode) -> GraphletLattice {
        assert!(t >= 1 && t <= atlas.max_s(), "t exceeds atlas");
        let ids = match mode {
            OrbitMode::Orbit => atlas.orbit_ids(t),
            OrbitMode::Hatted => atlas.pattern_ids(t),
        };
        let n_el = ids.len() + 1;
        let words = n_el.div_ceil(64);
        let mut precedes_bits = vec![0u64; n_el * words];
        let set = |bits: &mut Vec<u64>, i: usize, j: usize| {
            bits[i * words + j / 64] |= 1 << (j % 64);
        };
        for k in 1..n_el {
            set(&mut precedes_bits, 0, k); // null precedes everything
        }
        for (a, gi) in ids.iter().enumerate() {
            for (b, gj) in ids.iter().enumerate() {
                if a != b && is_subgraph(atlas, *gi, *gj) {
                    set(&mut precedes_bits, a + 1, b + 1);
                }
            }
        }
        let get = |bits: &[u64], i: usize, j: usize| bits[i * words + j / 64] >> (j % 64) & 1 == 1;

        let mut layer = vec![0u32; n_el];
        for (k, id) in ids.iter().enumerate() {
            layer[k + 1] = atlas.pattern(id.s, id.p).edge_count as u32 + 1;
        }

        // Covering pairs: i ≺ j with no k strictly between.
        let mut covers = Vec::new();
        for i in 0..n_el {
            for j in 0..n_el {
                if !get(&precedes_bits, i, j) {
                    continue;
                }
                let mut direct = true;
                for w in 0..words {
                    let between = precedes_bits[i * words + w]
                        & (0..64)
                            .filter(|b| {
                                let k = w * 64 + b;
                                k < n_el && get(&precedes_bits, k, j)
                            })
                            .fold(0u64, |acc, b| acc | 1 << b);
                    if between != 0 {
                        direct = false;
                        break;
                    }
                }
                if direct {
                    covers.push((i, j));
                }
            }
        }
        GraphletLattice {
            t,
            mode,
            ids,
            layer,
            n_el,
            precedes_bits,
            covers,
        }
    }

    pub fn element_count(&self) -> usize {
        self.n_el
    }

    /// Strict order between elements (0 = null).
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        let words = self.n_el.div_ceil(64);
        self.precedes_bits[i * words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn height(&self) -> u32 {
        *self.layer.iter().max().unwrap()
    }

    /// Graphviz rendering: one node per element, covering edges, elements of
    /// equal layer ranked together, cliques drawn with square markers.
    pub fn export_dot(&self, atlas: &Atlas, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "digraph graphlet_lattice {{")?;
        writeln!(w, "  rankdir=LR;")?;
        writeln!(w, "  node [shape=circle, fontsize=10];")?;
        writeln!(w, "  n0 [label=\"\u{2205}\", style=dashed];")?;
        for (k, id) in self.ids.iter().enumerate() {
            let pat = atlas.pattern(id.s, id.p);
            let is_clique =
                pat.edge_count as u32 == id.s as u32 * (id.s as u32 - 1) / 2;
            let shape = if is_clique { "box" } else { "circle" };
            writeln!(w, "  n{} [label=\"{}\", shape={}];", k + 1, id, shape)?;
        }
        let max_layer = self.height();
        for l in 0..=max_layer {
            let members: Vec<String> = (0..self.n_el)
                .filter(|&k| self.layer[k] == l)
                .map(|k| format!("n{k}"))
                .collect();
            if !members.is_empty() {
                writeln!(w, "  {{ rank=same; {}; }}", members.join("; "))?;
            }
        }
        for &(i, j) in &self.covers {
            writeln!(w, "  n{i} -> n{j};")?;
        }
        writeln!(w, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgraph_basics() {
        let atlas = Atlas::build(4).unwrap();
        let wedge = GraphletId::new(3, 1, 0);
        let tri = GraphletId::new(3, 2, 0);
        let c4 = GraphletId::new(4, 4, 0);
        let k4 = GraphletId::new(4, 6, 0);
        assert!(is_subgraph(&atlas, wedge, tri));
        assert!(!is_subgraph(&atlas, tri, c4));
        assert!(is_subgraph(&atlas, c4, k4));
    }

    #[test]
    fn two_family_lattice() {
        let atlas = Atlas::build(2).unwrap();
        let lat = GraphletLattice::build(&atlas, 2, OrbitMode::Orbit);
        assert_eq!(lat.element_count(), 3);
        assert_eq!(lat.covers.len(), 2);
        assert_eq!(lat.layer, vec![0, 1, 2]);
    }

    #[test]
    fn element_counts_match_family_sizes() {
        let atlas = Atlas::build(5).unwrap();
        let orbit = GraphletLattice::build(&atlas, 5, OrbitMode::Orbit);
        assert_eq!(orbit.element_count(), 1 + 1 + 1 + 3 + 11 + 58);
        let hatted = GraphletLattice::build(&atlas, 5, OrbitMode::Hatted);
        assert_eq!(hatted.element_count(), 1 + 1 + 1 + 2 + 6 + 21);
        assert_eq!(hatted.height(), 11); // m(K_5) + 1
    }

    #[test]
    fn covers_regenerate_order() {
        let atlas = Atlas::build(5).unwrap();
        for mode in [OrbitMode::Orbit, OrbitMode::Hatted] {
            let lat = GraphletLattice::build(&atlas, 5, mode);
            let n = lat.element_count();
            // Reachability closure of the covering relation.
            let mut reach = vec![vec![false; n]; n];
            for &(i, j) in &lat.covers {
                reach[i][j] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    if reach[i][k] {
                        for j in 0..n {
                            if reach[k][j] {
                                reach[i][j] = true;
                            }
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(reach[i][j], lat.precedes(i, j), "mode {mode:?} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn comparable_same_family_means_fewer_edges() {
        let atlas = Atlas::build(5).unwrap();
        let lat = GraphletLattice::build(&atlas, 5, OrbitMode::Orbit);
        for (a, gi) in lat.ids.iter().enumerate() {
            for (b, gj) in lat.ids.iter().enumerate() {
                if gi.s == gj.s && lat.precedes(a + 1, b + 1) {
                    assert!(
                        atlas.pattern(gi.s, gi.p).edge_count
                            < atlas.pattern(gj.s, gj.p).edge_count
                    );
                }
            }
        }
    }

    #[test]
    fn lattice_zero_pattern_matches_conversion_matrix() {
        // Dual route: boolean embedding search vs counted spanning subgraphs.
        let atlas = Atlas::build(5).unwrap();
        let u5 = crate::conv::build_family_matrix(&atlas, 5, OrbitMode::Orbit);
        let off = 1 + 1 + 3 + 11; // flat offset of family 5
        let lat = GraphletLattice::build(&atlas, 5, OrbitMode::Orbit);
        for i in 0..58 {
            for j in 0..58 {
                let by_count = u5.get(i, j) != 0;
                let by_order = i == j || lat.precedes(off + i + 1, off + j + 1);
                assert_eq!(by_count, by_order, "({i},{j})");
            }
        }
    }

    #[test]
    fn dot_export_shapes() {
        let atlas = Atlas::build(3).unwrap();
        let lat = GraphletLattice::build(&atlas, 3, OrbitMode::Hatted);
        let mut buf = Vec::new();
        lat.export_dot(&atlas, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("shape=box").count(), 3); // K_1, K_2, K_3
        assert!(text.contains("rank=same"));
        assert_eq!(text.matches("->").count(), lat.covers.len());
    }
}
