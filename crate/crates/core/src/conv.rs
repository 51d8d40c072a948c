//! Exact-integer pairwise frequency matrices between graphlets.
//!
//! Within a family, entry (i, j) counts the spanning subgraphs of template j
//! isomorphic to template i (incident at the designated orbit in orbit mode).
//! These matrices are upper triangular with unit diagonal in atlas order,
//! unimodular, and their inverse is the sign-conjugate Λ U Λ with
//! λ_i = (-1)^{edge count}. All arithmetic here is exact integer; the
//! involution identity is verified rather than assumed.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::atlas::{Atlas, GraphletId};
use crate::small::SmallGraph;

#[derive(Debug, Error)]
pub enum ConvError {
    #[error("involution check failed for family {s}: (ΛUΛ)U != I at ({i},{j})")]
    InvolutionFailed { s: u8, i: usize, j: usize },
    #[error("matrix not upper triangular with unit diagonal at ({i},{j})")]
    NotTriangular { i: usize, j: usize },
    #[error("negative entry in net matrix at ({i},{j})")]
    NegativeNet { i: usize, j: usize },
    #[error("serialized matrix malformed: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitMode {
    Orbit,
    Hatted,
}

impl OrbitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitMode::Orbit => "orbit",
            OrbitMode::Hatted => "hatted",
        }
    }
}

/// Dense exact-integer matrix over an ordered graphlet list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub ids: Vec<GraphletId>,
    pub a: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(ids: Vec<GraphletId>) -> Self {
        let n = ids.len();
        IntMatrix {
            ids,
            a: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let n = self.n();
        self.a[i * n + j] = v;
    }

    pub fn nnz(&self) -> usize {
        self.a.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn check_unit_upper_triangular(&self) -> Result<(), ConvError> {
        let n = self.n();
        for i in 0..n {
            if self.get(i, i) != 1 {
                return Err(ConvError::NotTriangular { i, j: i });
            }
            for j in 0..i {
                if self.get(i, j) != 0 {
                    return Err(ConvError::NotTriangular { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n();
        assert_eq!(n, rhs.n());
        let mut out = IntMatrix::zeros(self.ids.clone());
        for i in 0..n {
            for k in 0..n {
                let v = self.get(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    let add = v.checked_mul(rhs.get(k, j)).expect("matrix product overflow");
                    out.a[i * n + j] = out.a[i * n + j].checked_add(add).unwrap();
                }
            }
        }
        out
    }

    /// Copy with row `i` and column `j` removed.
    pub fn drop_row_col(&self, i: usize, j: usize) -> IntMatrix {
        let n = self.n();
        let ids = self
            .ids
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, id)| *id)
            .collect();
        let mut out = IntMatrix::zeros(ids);
        let mut r = 0;
        for ri in 0..n {
            if ri == i {
                continue;
            }
            let mut c = 0;
            for cj in 0..n {
                if cj == j {
                    continue;
                }
                out.a[r * (n - 1) + c] = self.get(ri, cj);
                c += 1;
            }
            r += 1;
        }
        out
    }
}

/// Per-graphlet signs λ_i = (-1)^{m(H_i)}.
#[derive(Debug, Clone)]
pub struct SignDiagonal {
    pub signs: Vec<i64>,
}

impl SignDiagonal {
    pub fn for_ids(atlas: &Atlas, ids: &[GraphletId]) -> SignDiagonal {
        let signs = ids
            .iter()
            .map(|id| {
                let m = atlas.pattern(id.s, id.p).edge_count;
                if m % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        SignDiagonal { signs }
    }
}

/// Number of subgraph copies of the row graphlet inside the column graphlet,
/// evaluated at an orbit representative when sigma > 0.
pub fn pairwise_gross(atlas: &Atlas, gi: GraphletId, gj: GraphletId) -> i64 {
    let pi = atlas.pattern(gi.s, gi.p);
    let pj = atlas.pattern(gj.s, gj.p);
    if gi.sigma == 0 {
        debug_assert_eq!(gj.sigma, 0);
        let emb = count_embeddings(&pi.graph, &pj.graph);
        debug_assert_eq!(emb % pi.aut_size, 0);
        (emb / pi.aut_size) as i64
    } else {
        let root = pi.orbit_reps[gi.sigma as usize - 1];
        let target = pj.orbit_reps[gj.sigma as usize - 1];
        let emb = count_embeddings_rooted(&pi.graph, root, &pj.graph, target);
        let scaled = emb * pi.orbit_sizes[gi.sigma as usize - 1] as u64;
        debug_assert_eq!(scaled % pi.aut_size, 0);
        (scaled / pi.aut_size) as i64
    }
}

/// Injective edge-preserving maps of `pat` into `host`.
pub fn count_embeddings(pat: &SmallGraph, host: &SmallGraph) -> u64 {
    (0..host.n())
        .map(|u| count_embeddings_rooted(pat, 0, host, u))
        .sum()
}

/// Injective edge-preserving maps with `root -> target` fixed.
pub fn count_embeddings_rooted(pat: &SmallGraph, root: u8, host: &SmallGraph, target: u8) -> u64 {
    let n = pat.n() as usize;
    if n > host.n() as usize {
        return 0;
    }
    // Visit pattern vertices in BFS order from the root so every new vertex
    // has at least one already-placed neighbor.
    let mut order = [0u8; 8];
    let mut placed_nbrs = [0u8; 8];
    let mut in_order = 0u8;
    order[0] = root;
    in_order |= 1 << root;
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
    debug_assert_eq!(len, n, "pattern must be connected");
    for k in 0..n {
        let mut mask = 0u8;
        for e in 0..k {
            if pat.has_edge(order[k], order[e]) {
                mask |= 1 << e;
            }
        }
        placed_nbrs[k] = mask;
    }

    let mut images = [0u8; 8];
    images[0] = target;
    fn dfs(
        k: usize,
        n: usize,
        host: &SmallGraph,
        placed_nbrs: &[u8; 8],
        images: &mut [u8; 8],
        used: u8,
    ) -> u64 {
        if k == n {
            return 1;
        }
        let mut total = 0;
        for cand in 0..host.n() {
            if used >> cand & 1 == 1 {
                continue;
            }
            let mut ok = true;
            let mut req = placed_nbrs[k];
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
                total += dfs(k + 1, n, host, placed_nbrs, images, used | 1 << cand);
            }
        }
        total
    }
    dfs(1, n, host, &placed_nbrs, &mut images, 1 << target)
}

fn ids_for(atlas: &Atlas, s: u8, mode: OrbitMode) -> Vec<GraphletId> {
    match mode {
        OrbitMode::Orbit => atlas
            .orbit_ids(s)
            .into_iter()
            .filter(|id| id.s == s)
            .collect(),
        OrbitMode::Hatted => atlas
            .pattern_ids(s)
            .into_iter()
            .filter(|id| id.s == s)
            .collect(),
    }
}

/// Intra-family pairwise gross-frequency matrix (pattern-level in hatted mode).
pub fn build_family_matrix(atlas: &Atlas, s: u8, mode: OrbitMode) -> IntMatrix {
    let ids = ids_for(atlas, s, mode);
    let n = ids.len();
    let mut mat = IntMatrix::zeros(ids);
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0i64; n];
            for j in 0..n {
                let (gi, gj) = (mat.ids[i], mat.ids[j]);
                let (mi, mj) = (
                    atlas.pattern(gi.s, gi.p).edge_count,
                    atlas.pattern(gj.s, gj.p).edge_count,
                );
                if mi > mj {
                    continue;
                }
                row[j] = pairwise_gross(atlas, gi, gj);
            }
            row
        })
        .collect();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            mat.set(i, j, v);
        }
    }
    mat
}

/// The sign-conjugate inverse Λ U Λ, verified exactly against U.
pub fn invert_involutory(
    u: &IntMatrix,
    lambda: &SignDiagonal,
    s: u8,
) -> Result<IntMatrix, ConvError> {
    u.check_unit_upper_triangular()?;
    let n = u.n();
    let mut inv = IntMatrix::zeros(u.ids.clone());
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, lambda.signs[i] * u.get(i, j) * lambda.signs[j]);
        }
    }
    let prod = inv.mul(u);
    if !prod.is_identity() {
        for i in 0..n {
            for j in 0..n {
                if prod.get(i, j) != i64::from(i == j) {
                    return Err(ConvError::InvolutionFailed { s, i, j });
                }
            }
        }
    }
    Ok(inv)
}

/// Inter-family pairwise matrices over families 1..=t: the gross matrix
/// assembled blockwise, and the net matrix obtained by applying each
/// family's inverse to its block row.
pub struct InterFamily {
    pub gross: IntMatrix,
    pub net: IntMatrix,
}

pub fn build_inter_family(
    atlas: &Atlas,
    t: u8,
    mode: OrbitMode,
    family_inverse: &[IntMatrix],
) -> Result<InterFamily, ConvError> {
    let ids: Vec<GraphletId> = match mode {
        OrbitMode::Orbit => atlas.orbit_ids(t),
        OrbitMode::Hatted => atlas.pattern_ids(t),
    };
    let n = ids.len();
    let mut gross = IntMatrix::zeros(ids.clone());
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0i64; n];
            for j in 0..n {
                let (gi, gj) = (ids[i], ids[j]);
                if gi.s > gj.s {
                    continue;
                }
                if gi.s == gj.s {
                    let (mi, mj) = (
                        atlas.pattern(gi.s, gi.p).edge_count,
                        atlas.pattern(gj.s, gj.p).edge_count,
                    );
                    if mi > mj {
                        continue;
                    }
                }
                row[j] = pairwise_gross(atlas, gi, gj);
            }
            row
        })
        .collect();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            gross.set(i, j, v);
        }
    }

    // Net = blockdiag(U_1^{-1}, ..., U_t^{-1}) * gross, block row by block row.
    let mut net = IntMatrix::zeros(ids.clone());
    let mut base = 0usize;
    for s in 1..=t {
        let inv = &family_inverse[s as usize - 1];
        let k = inv.n();
        for i in 0..k {
            for j in 0..n {
                let mut acc = 0i64;
                for l in 0..k {
                    let v = inv.get(i, l);
                    if v != 0 {
                        acc = acc
                            .checked_add(v.checked_mul(gross.get(base + l, j)).unwrap())
                            .unwrap();
                    }
                }
                net.set(base + i, j, acc);
            }
        }
        base += k;
    }
    for i in 0..n {
        for j in 0..n {
            if net.get(i, j) < 0 {
                return Err(ConvError::NegativeNet { i, j });
            }
        }
    }
    Ok(InterFamily { gross, net })
}

/// Submatrix with row `i` and column `j` removed, plus the nonsingularity
/// flag: the minor is invertible exactly when U(j, i) is nonzero.
pub fn reduced_matrix(u: &IntMatrix, i: usize, j: usize) -> (IntMatrix, bool) {
    (u.drop_row_col(i, j), u.get(j, i) != 0)
}

/// Every matrix a run needs, built once per (atlas, t, mode).
pub struct ConversionSet {
    pub t: u8,
    pub mode: OrbitMode,
    pub atlas_hash: String,
    /// Index s-1: U_s and its verified inverse.
    pub family_gross: Vec<IntMatrix>,
    pub family_inverse: Vec<IntMatrix>,
    pub inter_gross: IntMatrix,
    pub inter_net: IntMatrix,
}

impl ConversionSet {
    pub fn build(atlas: &Atlas, t: u8, mode: OrbitMode) -> Result<ConversionSet, ConvError> {
        let mut family_gross = Vec::new();
        let mut family_inverse = Vec::new();
        for s in 1..=t {
            let u = build_family_matrix(atlas, s, mode);
            let lambda = SignDiagonal::for_ids(atlas, &u.ids);
            let inv = invert_involutory(&u, &lambda, s)?;
            family_gross.push(u);
            family_inverse.push(inv);
        }
        let inter = build_inter_family(atlas, t, mode, &family_inverse)?;
        Ok(ConversionSet {
            t,
            mode,
            atlas_hash: atlas.hash(),
            family_gross,
            family_inverse,
            inter_gross: inter.gross,
            inter_net: inter.net,
        })
    }

    pub fn write_matrix(
        w: &mut impl Write,
        m: &IntMatrix,
        name: &str,
        atlas_hash: &str,
        t: u8,
        mode: OrbitMode,
    ) -> std::io::Result<()> {
        writeln!(w, "# matrix {name}")?;
        writeln!(w, "# atlas {atlas_hash}")?;
        writeln!(w, "# t {t} mode {}", mode.as_str())?;
        writeln!(w, "# n {} nnz {}", m.n(), m.nnz())?;
        for i in 0..m.n() {
            for j in 0..m.n() {
                let v = m.get(i, j);
                if v != 0 {
                    writeln!(w, "{i} {j} {v}")?;
                }
            }
        }
        Ok(())
    }

    /// Read a matrix written by `write_matrix`; ids are supplied by the
    /// caller from an atlas whose hash must match the returned one.
    pub fn read_matrix(
        r: &mut impl BufRead,
        ids: Vec<GraphletId>,
    ) -> Result<(IntMatrix, String), ConvError> {
        let mut atlas_hash = String::new();
        let mut m = IntMatrix::zeros(ids);
        let mut declared_n = None;
        for line in r.lines() {
            let line = line?;
            let tline = line.trim();
            if tline.is_empty() {
                continue;
            }
            if let Some(rest) = tline.strip_prefix('#') {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                match toks.first() {
                    Some(&"atlas") if toks.len() >= 2 => atlas_hash = toks[1].to_string(),
                    Some(&"n") if toks.len() >= 2 => {
                        declared_n = Some(toks[1].parse::<usize>().map_err(|_| {
                            ConvError::Format("bad n in header".into())
                        })?)
                    }
                    _ => {}
                }
                continue;
            }
            let toks: Vec<&str> = tline.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(ConvError::Format(format!("bad triplet line {tline:?}")));
            }
            let i: usize = toks[0]
                .parse()
                .map_err(|_| ConvError::Format("bad row".into()))?;
            let j: usize = toks[1]
                .parse()
                .map_err(|_| ConvError::Format("bad col".into()))?;
            let v: i64 = toks[2]
                .parse()
                .map_err(|_| ConvError::Format("bad value".into()))?;
            if i >= m.n() || j >= m.n() {
                return Err(ConvError::Format(format!("index ({i},{j}) out of range")));
            }
            m.set(i, j, v);
        }
        if declared_n.is_some_and(|n| n != m.n()) {
            return Err(ConvError::Format(format!(
                "matrix size {} does not match atlas order {}",
                declared_n.unwrap(),
                m.n()
            )));
        }
        Ok((m, atlas_hash))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atlas5() -> Atlas {
        Atlas::build(5).unwrap()
    }

    #[test]
    fn u3_orbit_matrix() {
        let atlas = Atlas::build(3).unwrap();
        let u = build_family_matrix(&atlas, 3, OrbitMode::Orbit);
        // Order: wedge-leaf, wedge-center, triangle.
        assert_eq!(u.a, vec![1, 0, 2, 0, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn hatted_quad_matrix_golden() {
        let atlas = Atlas::build(4).unwrap();
        let u = build_family_matrix(&atlas, 4, OrbitMode::Hatted);
        #[rustfmt::skip]
        let expected = vec![
            1, 0, 1, 0, 2, 4,
            0, 1, 2, 4, 6, 12,
            0, 0, 1, 0, 4, 12,
            0, 0, 0, 1, 1, 3,
            0, 0, 0, 0, 1, 6,
            0, 0, 0, 0, 0, 1,
        ];
        assert_eq!(u.a, expected);
    }

    #[test]
    fn involution_small_families() {
        let atlas = atlas5();
        for mode in [OrbitMode::Orbit, OrbitMode::Hatted] {
            for s in 2..=5u8 {
                let u = build_family_matrix(&atlas, s, mode);
                let lambda = SignDiagonal::for_ids(&atlas, &u.ids);
                let inv = invert_involutory(&u, &lambda, s).unwrap();
                assert_eq!(inv.nnz(), u.nnz());
                assert!(inv.mul(&u).is_identity());
            }
        }
    }

    #[test]
    fn one_by_one_inverse() {
        let atlas = Atlas::build(2).unwrap();
        let u = build_family_matrix(&atlas, 2, OrbitMode::Orbit);
        assert_eq!(u.a, vec![1]);
        let lambda = SignDiagonal::for_ids(&atlas, &u.ids);
        let inv = invert_involutory(&u, &lambda, 2).unwrap();
        assert_eq!(inv.a, vec![1]);
    }

    #[test]
    fn penta_nonzero_counts() {
        let atlas = atlas5();
        let u5 = build_family_matrix(&atlas, 5, OrbitMode::Orbit);
        assert_eq!(u5.n(), 58);
        assert_eq!(u5.nnz(), 744);
        let u5h = build_family_matrix(&atlas, 5, OrbitMode::Hatted);
        assert_eq!(u5h.n(), 21);
        assert_eq!(u5h.nnz(), 164);
    }

    #[test]
    fn orbit_rows_aggregate_to_hatted() {
        let atlas = atlas5();
        for s in 3..=5u8 {
            let uo = build_family_matrix(&atlas, s, OrbitMode::Orbit);
            let uh = build_family_matrix(&atlas, s, OrbitMode::Hatted);
            // Summing rows over the orbits of pattern p reproduces the
            // pattern-level entry in every column, at any column orbit.
            let fam = atlas.family(s);
            let mut col = 0usize;
            for (qi, qpat) in fam.patterns.iter().enumerate() {
                for _tau in 0..qpat.orbit_count() {
                    let mut row = 0usize;
                    for (pi, ppat) in fam.patterns.iter().enumerate() {
                        let mut sum = 0i64;
                        for sig in 0..ppat.orbit_count() as usize {
                            sum += uo.get(row + sig, col);
                        }
                        assert_eq!(sum, uh.get(pi, qi), "s={s} p={pi} q={qi}");
                        row += ppat.orbit_count() as usize;
                    }
                    col += 1;
                }
            }
        }
    }

    #[test]
    fn table_inter_family_block_golden() {
        let atlas = Atlas::build(4).unwrap();
        let set = ConversionSet::build(&atlas, 4, OrbitMode::Orbit).unwrap();
        let w = &set.inter_net;
        // Rows: edge, wedge-leaf, wedge-center, triangle (flat 1..=4).
        // Columns: the eleven quad orbit graphlets (flat 5..=15).
        let rows = [1usize, 2, 3, 4];
        let expected: [[i64; 11]; 4] = [
            [1, 3, 1, 2, 1, 2, 3, 2, 2, 3, 3],
            [2, 0, 1, 1, 2, 1, 0, 2, 2, 0, 0],
            [0, 3, 0, 1, 0, 0, 2, 1, 0, 1, 0],
            [0, 0, 0, 0, 0, 1, 1, 0, 1, 2, 3],
        ];
        for (r, row) in rows.iter().zip(expected.iter()) {
            for (c, want) in row.iter().enumerate() {
                assert_eq!(w.get(*r, 5 + c), *want, "row {r} col {}", 5 + c);
            }
        }
    }

    #[test]
    fn net_diagonal_blocks_are_identity() {
        let atlas = atlas5();
        let set = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        let w = &set.inter_net;
        let mut base = 0usize;
        for s in 1..=5u8 {
            let k = atlas.family(s).orbit_total();
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(w.get(base + i, base + j), i64::from(i == j));
                }
            }
            base += k;
        }
    }

    #[test]
    fn net_matches_direct_induced_counts() {
        // Dual route: net matrix entries versus subset-enumeration counts.
        let atlas = atlas5();
        let set = ConversionSet::build(&atlas, 5, OrbitMode::Orbit).unwrap();
        let ids = atlas.orbit_ids(5);
        for (j, gj) in ids.iter().enumerate() {
            if gj.s < 2 {
                continue;
            }
            let pj = atlas.pattern(gj.s, gj.p);
            let prof = atlas.precedent_profile(&pj.graph);
            let rep = pj.orbit_reps[gj.sigma as usize - 1] as usize;
            for (i, gi) in ids.iter().enumerate() {
                if gi.s >= gj.s {
                    continue;
                }
                let direct = prof.per_vertex[rep][atlas.flat_index(*gi)];
                assert_eq!(set.inter_net.get(i, j), direct, "{gi} in {gj}");
            }
        }
    }

    #[test]
    fn reduced_matrix_flag() {
        let atlas = Atlas::build(3).unwrap();
        let u = build_family_matrix(&atlas, 3, OrbitMode::Orbit);
        // Remove the triangle row and the wedge-leaf column: nonsingular
        // exactly because U(leaf, triangle) = 2 is nonzero.
        let (r, ok) = reduced_matrix(&u, 2, 0);
        assert!(ok);
        assert_eq!(r.n(), 2);
        // Determinant of the minor equals U(0,2) = 2 up to sign.
        assert_eq!(det2(&r).abs(), 2);
        // Principal minor: always nonsingular with unit determinant.
        let (r, ok) = reduced_matrix(&u, 2, 2);
        assert!(ok);
        assert_eq!(det2(&r).abs(), 1);
    }

    fn det2(m: &IntMatrix) -> i64 {
        assert_eq!(m.n(), 2);
        m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
    }

    #[test]
    fn serialization_round_trip() {
        let atlas = Atlas::build(4).unwrap();
        let u = build_family_matrix(&atlas, 4, OrbitMode::Orbit);
        let mut buf = Vec::new();
        ConversionSet::write_matrix(&mut buf, &u, "U_4", &atlas.hash(), 4, OrbitMode::Orbit)
            .unwrap();
        let (back, hash) =
            ConversionSet::read_matrix(&mut std::io::Cursor::new(buf), u.ids.clone()).unwrap();
        assert_eq!(hash, atlas.hash());
        assert_eq!(back.a, u.a);
    }

    #[test]
    fn zero_pattern_matches_inclusion() {
        let atlas = atlas5();
        let u = build_family_matrix(&atlas, 4, OrbitMode::Orbit);
        let n = u.n();
        for i in 0..n {
            for j in 0..n {
                let v = u.get(i, j);
                assert!(v >= 0);
                if i == j {
                    assert_eq!(v, 1);
                }
            }
        }
        // C4 (p=4) contains the path end-to-end but not the paw.
        let idx = |p: u16, sig: u8| {
            u.ids
                .iter()
                .position(|id| id.p == p && id.sigma == sig)
                .unwrap()
        };
        assert!(u.get(idx(2, 1), idx(4, 1)) > 0);
        assert_eq!(u.get(idx(3, 1), idx(4, 1)), 0);
    }
}
