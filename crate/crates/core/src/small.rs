//! Small connected template graphs on at most 8 vertices.
//!
//! Edges live in a bitset over unordered vertex pairs, so isomorphism-class
//! identity reduces to comparing canonical bitsets. Canonical labeling is an
//! exact branch-and-bound over vertex placements: positions are filled one at
//! a time, candidates keyed by an isomorphism-invariant class plus the bit
//! column toward already-placed vertices, pruned against the best complete
//! key sequence. All optimal placements are collected, which yields the
//! automorphism group size and the vertex orbits as a byproduct.

pub const MAX_N: usize = 8;

/// Bit index of the unordered pair (i, j), i < j.
#[inline]
pub fn pair_idx(i: u8, j: u8) -> u32 {
    debug_assert!(i < j);
    (j as u32 * (j as u32 - 1)) / 2 + i as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: u8,
    bits: u32,
}

impl SmallGraph {
    pub fn empty(n: u8) -> Self {
        assert!(n as usize <= MAX_N && n >= 1);
        SmallGraph { n, bits: 0 }
    }

    pub fn from_bits(n: u8, bits: u32) -> Self {
        assert!(n as usize <= MAX_N && n >= 1);
        debug_assert_eq!(bits >> (n as u32 * (n as u32 - 1) / 2), 0);
        SmallGraph { n, bits }
    }

    pub fn from_edges(n: u8, edges: &[(u8, u8)]) -> Self {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: u8) -> Self {
        let m = n as u32 * (n as u32 - 1) / 2;
        Self::from_bits(n, if m == 32 { u32::MAX } else { (1u32 << m) - 1 })
    }

    pub fn path(n: u8) -> Self {
        Self::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn cycle(n: u8) -> Self {
        let mut g = Self::path(n);
        g.add_edge(0, n - 1);
        g
    }

    /// Star with center 0 and n-1 leaves.
    pub fn star(n: u8) -> Self {
        Self::from_edges(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>())
    }

    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        debug_assert!(a != b);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.bits >> pair_idx(i, j) & 1 == 1
    }

    pub fn add_edge(&mut self, a: u8, b: u8) {
        assert!(a != b && a < self.n && b < self.n);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.bits |= 1 << pair_idx(i, j);
    }

    pub fn edge_count(&self) -> u8 {
        self.bits.count_ones() as u8
    }

    /// Neighbors of `v` as a bitmask over vertices.
    pub fn nbr_mask(&self, v: u8) -> u8 {
        let mut m = 0u8;
        for u in 0..self.n {
            if u != v && self.has_edge(u, v) {
                m |= 1 << u;
            }
        }
        m
    }

    pub fn degree(&self, v: u8) -> u8 {
        self.nbr_mask(v).count_ones() as u8
    }

    pub fn degrees(&self) -> Vec<u8> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for j in 1..self.n {
            for i in 0..j {
                if self.bits >> pair_idx(i, j) & 1 == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Connectivity of the vertex subset `mask` in the induced subgraph.
    pub fn connected_subset(&self, mask: u8) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as u8;
        let mut seen = 1u8 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u8;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as u8;
                f &= f - 1;
                next |= self.nbr_mask(v) & mask & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.connected_subset(((1u16 << self.n) - 1) as u8)
    }

    /// Induced subgraph on `mask`; vertex k of the result is the k-th set bit.
    pub fn induced(&self, mask: u8) -> SmallGraph {
        let mut verts = [0u8; MAX_N];
        let mut k = 0u8;
        for v in 0..self.n {
            if mask >> v & 1 == 1 {
                verts[k as usize] = v;
                k += 1;
            }
        }
        let mut g = SmallGraph::empty(k);
        for j in 1..k {
            for i in 0..j {
                if self.has_edge(verts[i as usize], verts[j as usize]) {
                    g.bits |= 1 << pair_idx(i, j);
                }
            }
        }
        g
    }

    /// Relabel by `perm` where `perm[orig] = new`.
    pub fn relabel(&self, perm: &[u8]) -> SmallGraph {
        let mut g = SmallGraph::empty(self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a as usize], perm[b as usize]);
        }
        g
    }
}

/// Canonical form with the data the atlas needs alongside it.
#[derive(Debug, Clone)]
pub struct Canon {
    pub graph: SmallGraph,
    /// Original vertex -> canonical position.
    pub to_canon: [u8; MAX_N],
    pub aut_size: u64,
    /// Canonical position -> orbit id; orbits numbered by smallest position.
    pub orbit_of: [u8; MAX_N],
    pub orbit_count: u8,
}

struct Search<'a> {
    g: &'a SmallGraph,
    n: usize,
    class: [u8; MAX_N],
    placed: [u8; MAX_N],
    used: u8,
    cols: [(u8, u32); MAX_N],
    best_cols: Option<[(u8, u32); MAX_N]>,
    best_placed: Vec<[u8; MAX_N]>,
}

impl<'a> Search<'a> {
    fn column(&self, v: u8, depth: usize) -> u32 {
        let mut c = 0u32;
        for i in 0..depth {
            if self.g.has_edge(v, self.placed[i]) {
                c |= 1 << i;
            }
        }
        c
    }

    fn run(&mut self, depth: usize, prefix_equal: bool) {
        if depth == self.n {
            let cols = self.cols;
            match &self.best_cols {
                Some(b) if cols[..self.n] > b[..self.n] => {}
                Some(b) if cols[..self.n] == b[..self.n] => self.best_placed.push(self.placed),
                _ => {
                    self.best_cols = Some(cols);
                    self.best_placed.clear();
                    self.best_placed.push(self.placed);
                }
            }
            return;
        }
        let mut minkey: Option<(u8, u32)> = None;
        let mut cand = [0u8; MAX_N];
        let mut nc = 0usize;
        for v in 0..self.n as u8 {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let key = (self.class[v as usize], self.column(v, depth));
            match minkey {
                None => {
                    minkey = Some(key);
                    cand[0] = v;
                    nc = 1;
                }
                Some(mk) if key < mk => {
                    minkey = Some(key);
                    cand[0] = v;
                    nc = 1;
                }
                Some(mk) if key == mk => {
                    cand[nc] = v;
                    nc += 1;
                }
                _ => {}
            }
        }
        let mk = minkey.unwrap();
        let mut eq = prefix_equal;
        if eq {
            if let Some(b) = &self.best_cols {
                match mk.cmp(&b[depth]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => eq = false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        for k in 0..nc {
            let v = cand[k];
            self.placed[depth] = v;
            self.cols[depth] = mk;
            self.used |= 1 << v;
            self.run(depth + 1, eq);
            self.used &= !(1 << v);
        }
    }
}

/// Exact canonical labeling, automorphism group size, and vertex orbits.
pub fn canonical(g: &SmallGraph) -> Canon {
    let n = g.n() as usize;
    // Invariant classes: (degree, sorted neighbor degrees), ranked.
    let degs = g.degrees();
    let mut keys: Vec<(u8, Vec<u8>)> = (0..n as u8)
        .map(|v| {
            let mut nd: Vec<u8> = (0..g.n())
                .filter(|&u| u != v && g.has_edge(u, v))
                .map(|u| degs[u as usize])
                .collect();
            nd.sort_unstable();
            (degs[v as usize], nd)
        })
        .collect();
    let mut uniq = keys.clone();
    uniq.sort();
    uniq.dedup();
    let mut class = [0u8; MAX_N];
    for v in 0..n {
        class[v] = uniq.iter().position(|k| *k == keys[v]).unwrap() as u8;
    }
    keys.clear();

    let mut s = Search {
        g,
        n,
        class,
        placed: [0; MAX_N],
        used: 0,
        cols: [(0, 0); MAX_N],
        best_cols: None,
        best_placed: Vec::new(),
    };
    s.run(0, true);

    let placed0 = s.best_placed[0];
    let mut to_canon = [0u8; MAX_N];
    for pos in 0..n {
        to_canon[placed0[pos] as usize] = pos as u8;
    }
    let graph = g.relabel(&to_canon[..n]);

    // Orbits: union v with its image under each optimal-placement automorphism.
    let mut parent: [u8; MAX_N] = [0, 1, 2, 3, 4, 5, 6, 7];
    fn find(p: &mut [u8; MAX_N], v: u8) -> u8 {
        let mut v = v;
        while p[v as usize] != v {
            p[v as usize] = p[p[v as usize] as usize];
            v = p[v as usize];
        }
        v
    }
    for placed_i in &s.best_placed {
        for v in 0..n as u8 {
            let img = placed_i[to_canon[v as usize] as usize];
            let (a, b) = (find(&mut parent, v), find(&mut parent, img));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    // Express orbits over canonical positions, numbered by smallest position.
    let mut root_pos = [u8::MAX; MAX_N];
    for pos in 0..n as u8 {
        let orig = placed0[pos as usize];
        let r = find(&mut parent, orig) as usize;
        if root_pos[r] == u8::MAX || pos < root_pos[r] {
            root_pos[r] = pos;
        }
    }
    let mut min_pos_sorted: Vec<u8> = (0..n as u8)
        .map(|v| root_pos[find(&mut parent, v) as usize])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    min_pos_sorted.sort_unstable();
    let mut orbit_of = [0u8; MAX_N];
    for pos in 0..n as u8 {
        let orig = placed0[pos as usize];
        let rp = root_pos[find(&mut parent, orig) as usize];
        orbit_of[pos as usize] = min_pos_sorted.iter().position(|&x| x == rp).unwrap() as u8;
    }

    Canon {
        graph,
        to_canon,
        aut_size: s.best_placed.len() as u64,
        orbit_of,
        orbit_count: min_pos_sorted.len() as u8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_paths_share_canonical_form() {
        let a = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = SmallGraph::from_edges(3, &[(2, 0), (0, 1)]);
        assert_eq!(canonical(&a).graph, canonical(&b).graph);
    }

    #[test]
    fn claw_and_p4_differ() {
        let claw = SmallGraph::star(4);
        let p4 = SmallGraph::path(4);
        assert_ne!(canonical(&claw).graph, canonical(&p4).graph);
    }

    #[test]
    fn complete_graph_orbits() {
        for n in 2..=6u8 {
            let c = canonical(&SmallGraph::complete(n));
            assert_eq!(c.orbit_count, 1);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.aut_size, fact);
        }
    }

    #[test]
    fn wedge_has_two_orbits() {
        let c = canonical(&SmallGraph::from_edges(3, &[(0, 1), (0, 2)]));
        assert_eq!(c.orbit_count, 2);
        assert_eq!(c.aut_size, 2);
    }

    #[test]
    fn paw_has_three_orbits() {
        let paw = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        let c = canonical(&paw);
        assert_eq!(c.orbit_count, 3);
    }

    #[test]
    fn petersen_is_vertex_transitive_on_subset() {
        // 5-cycle: single orbit, aut group of order 10.
        let c = canonical(&SmallGraph::cycle(5));
        assert_eq!(c.orbit_count, 1);
        assert_eq!(c.aut_size, 10);
    }

    #[test]
    fn canonical_invariant_under_random_relabel() {
        // Deterministic pseudo-random relabelings of a fixed graph.
        let g = SmallGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let base = canonical(&g).graph;
        let mut perm: Vec<u8> = (0..6).collect();
        for seed in 0..30u64 {
            let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            for i in (1..6).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (x >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            let h = g.relabel(&perm);
            assert_eq!(canonical(&h).graph, base);
        }
    }

    #[test]
    fn orbit_members_are_automorphic() {
        // In the path P5, ends {0,4}, mids {1,3}, center {2}.
        let c = canonical(&SmallGraph::path(5));
        assert_eq!(c.orbit_count, 3);
        assert_eq!(c.aut_size, 2);
    }
}
