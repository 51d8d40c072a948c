//! Per-family conversion machinery: the zero filters from precedent
//! frequencies, the full triangular solve via the sign-conjugate inverse,
//! and the reduced path that recovers the clique gross count by
//! back-substitution from a proven-zero frequency.

use crate::atlas::{Atlas, GraphletId};
use crate::conv::{ConversionSet, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterRule {
    /// Precedent-family net frequency below the pairwise net bound.
    InterFamily,
    /// Same-family precedent gross frequency below the pairwise gross bound.
    IntraFamily,
}

#[derive(Debug, Clone, Copy)]
pub struct Witness {
    /// Family-local index of the graphlet proven zero.
    pub graphlet: u8,
    pub rule: FilterRule,
    /// Flat index (inter-family) or family-local index (intra) of the
    /// precedent whose bound fired.
    pub precedent: u32,
    pub bound: i64,
}

pub struct FamilySolver {
    pub s: u8,
    pub fam_len: usize,
    pub clique_idx: usize,
    /// Internal catalog slot -> family-local column.
    pub catalog_map: Vec<usize>,
    /// (precedent flat index, local graphlet, bound) with positive bounds.
    prop2: Vec<(u32, u8, i64)>,
    /// (local i, local j, bound) with i < j, i not the clique, bound > 0.
    prop1: Vec<(u8, u8, i64)>,
    /// Sign-conjugate inverse of the family matrix.
    inv: IntMatrix,
    /// Nonzero count per column of the family matrix (reduced-column rule).
    col_nnz: Vec<u32>,
}

impl FamilySolver {
    pub fn new(atlas: &Atlas, conv: &ConversionSet, s: u8, t: u8) -> FamilySolver {
        let fam = atlas.family(s);
        let fam_len = fam.orbit_total();
        assert!(fam_len <= 64, "family mask uses a 64-bit word");
        let clique_idx = fam_len - 1;
        {
            let last = fam.patterns.last().unwrap();
            debug_assert_eq!(
                last.edge_count as u32,
                s as u32 * (s as u32 - 1) / 2,
                "clique must be the last pattern"
            );
        }

        let fam_base = atlas.flat_index(GraphletId::new(s, 1, 1));
        let w = &conv.inter_net;
        let mut prop2 = Vec::new();
        for i in 0..fam_base {
            for j in 0..fam_len {
                let b = w.get(i, fam_base + j);
                if b > 0 {
                    prop2.push((i as u32, j as u8, b));
                }
            }
        }
        let u = &conv.family_gross[s as usize - 1];
        let mut prop1 = Vec::new();
        for i in 0..fam_len {
            if i == clique_idx {
                continue;
            }
            for j in i..fam_len {
                let b = u.get(i, j);
                if b > 0 {
                    prop1.push((i as u8, j as u8, b));
                }
            }
        }
        let col_nnz = (0..fam_len)
            .map(|j| (0..fam_len).filter(|&i| u.get(i, j) != 0).count() as u32)
            .collect();

        let catalog_map = match s {
            3 => super::fam3::catalog_map(atlas),
            4 => super::fam4::catalog_map(atlas),
            5 => super::fam5::catalog_map(atlas),
            _ => unreachable!(),
        };
        let _ = t;
        FamilySolver {
            s,
            fam_len,
            clique_idx,
            catalog_map,
            prop2,
            prop1,
            inv: conv.family_inverse[s as usize - 1].clone(),
            col_nnz,
        }
    }

    /// Inter-family filters against the already-computed net row.
    pub fn prop2_mask(&self, net_row: &[i128], fam_base: usize, wit: &mut Option<Witness>) -> u64 {
        let mut zeros = 0u64;
        for &(i, j, bound) in &self.prop2 {
            if zeros >> j & 1 == 1 {
                continue;
            }
            if net_row[i as usize] < bound as i128 {
                zeros |= 1 << j;
                if wit.is_none() {
                    *wit = Some(Witness {
                        graphlet: j,
                        rule: FilterRule::InterFamily,
                        precedent: i,
                        bound,
                    });
                }
                let _ = fam_base;
            }
        }
        zeros
    }

    /// Intra-family filters against the non-clique gross entries.
    pub fn prop1_mask(&self, gross: &[i128], known: u64, wit: &mut Option<Witness>) -> u64 {
        let mut zeros = 0u64;
        for &(i, j, bound) in &self.prop1 {
            if (known | zeros) >> j & 1 == 1 {
                continue;
            }
            if gross[i as usize] < bound as i128 {
                zeros |= 1 << j;
                if wit.is_none() {
                    *wit = Some(Witness {
                        graphlet: j,
                        rule: FilterRule::IntraFamily,
                        precedent: i as u32,
                        bound,
                    });
                }
            }
        }
        zeros
    }

    /// Among proven-zero graphlets, choose the substitution column with the
    /// fewest nonzeros; ties break toward the smaller index.
    pub fn pick_reduced_column(&self, zeros: u64) -> usize {
        let mut best: Option<(u32, usize)> = None;
        for j in 0..self.fam_len {
            if j == self.clique_idx || zeros >> j & 1 == 0 {
                continue;
            }
            let key = (self.col_nnz[j], j);
            if best.is_none() || key < best.unwrap() {
                best = Some(key);
            }
        }
        best.expect("reduced path requires a proven zero").1
    }

    /// The minor dropping the clique row and column j is singular exactly
    /// when the inverse pivot vanishes; it never does for clique columns.
    pub fn reduced_is_singular(&self, j: usize) -> bool {
        self.inv.get(j, self.clique_idx) == 0
    }

    /// With f_j known zero, the inverse row j yields the clique gross count
    /// without computing it: 0 = Σ_c inv(j,c) g_c solved for the clique term.
    pub fn recover_clique_gross(&self, gross: &[i128], j: usize) -> i128 {
        let nn = self.fam_len;
        let ck = self.clique_idx;
        let mut acc: i128 = 0;
        for c in 0..nn {
            if c != ck {
                let w = self.inv.get(j, c);
                if w != 0 {
                    acc += w as i128 * gross[c];
                }
            }
        }
        let pivot = self.inv.get(j, ck);
        debug_assert!(pivot != 0, "clique column of the inverse has full support");
        let g = -acc / pivot as i128;
        debug_assert_eq!(-acc % pivot as i128, 0, "clique recovery must be exact");
        g
    }

    /// Net = inverse * gross, exact.
    pub fn solve_full(&self, gross: &[i128], out: &mut [i128]) {
        let nn = self.fam_len;
        for i in 0..nn {
            let mut acc: i128 = 0;
            for c in i..nn {
                let w = self.inv.get(i, c);
                if w != 0 {
                    acc += w as i128 * gross[c];
                }
            }
            out[i] = acc;
        }
    }
}

/// Build the internal-catalog -> family-local column map by classifying each
/// catalog template and locating its designated orbit.
pub fn map_catalog(
    atlas: &Atlas,
    s: u8,
    entries: &[(&str, &[(u8, u8)], u8)],
) -> Vec<usize> {
    let fam = atlas.family(s);
    let mut out = Vec::with_capacity(entries.len());
    for (name, edges, rep) in entries {
        let g = crate::small::SmallGraph::from_edges(s, edges);
        let (p, canon) = atlas
            .classify(&g)
            .unwrap_or_else(|| panic!("catalog entry {name} not in atlas"));
        let pat = atlas.pattern(s, p);
        let pos = canon.to_canon[*rep as usize];
        let sig0 = pat.orbit_of[pos as usize] as usize;
        let col: usize = fam.patterns[..p as usize - 1]
            .iter()
            .map(|q| q.orbit_reps.len())
            .sum::<usize>()
            + sig0;
        out.push(col);
    }
    let mut check: Vec<usize> = out.clone();
    check.sort_unstable();
    check.dedup();
    assert_eq!(
        check.len(),
        fam.orbit_total(),
        "catalog must cover the family bijectively"
    );
    out
}
