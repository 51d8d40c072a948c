//! Shared local structure used by the upward recursion: degrees, per-edge
//! common-neighbor counts, triangle-indexed sums, two-hop path counts, and
//! the per-worker scratch for per-vertex scans. Per-edge arrays are aligned
//! with the CSR neighbor slots of the source graph.

use rayon::prelude::*;

use crate::atlas::{Atlas, GraphletId};
use crate::freq::FrequencyTable;
use crate::graph::SourceGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Enough for families up to 4.
    Quad,
    /// Everything the penta step needs.
    Penta,
}

pub struct Globals {
    pub tier: Tier,
    // Per vertex.
    pub d: Vec<i64>,
    pub p2l: Vec<i64>,
    pub sc2: Vec<i64>,
    pub sc3: Vec<i64>,
    pub sd2: Vec<i64>,
    pub tri: Vec<i64>,
    pub trideg: Vec<i64>,
    pub tricn: Vec<i64>,
    pub d3: Vec<i64>,
    pub st: Vec<i64>,
    pub c4: Vec<i64>,
    pub k23b2: Vec<i64>,
    pub p4e: Vec<i64>,
    /// Net clique counts of the quad family, filled after that step.
    pub k4net: Vec<i128>,
    // Per directed CSR slot.
    pub cn: Vec<i64>,
    pub edeg: Vec<i64>,
    pub tca_near: Vec<i64>,
    pub tca_far: Vec<i64>,
    pub c4e: Vec<i64>,
    pub ec: Vec<i64>,
}

/// Offset of the first CSR slot of `v`; slot k pairs with neighbors(v)[k].
#[inline]
pub fn slot_base(g: &SourceGraph, v: u32) -> usize {
    g.slot_offset(v)
}

impl Globals {
    pub fn build(g: &SourceGraph, tier: Tier) -> Globals {
        let n = g.n();
        let slots = 2 * g.m();
        let d: Vec<i64> = (0..n).map(|v| g.degree(v as u32) as i64).collect();

        // Per-edge common neighbor counts by sorted-list merge.
        let mut cn = vec![0i64; slots];
        let cn_rows: Vec<Vec<i64>> = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|&u| merge_count(g.neighbors(v), g.neighbors(u)) as i64)
                    .collect()
            })
            .collect();
        for (v, row) in cn_rows.into_iter().enumerate() {
            let base = slot_base(g, v as u32);
            cn[base..base + row.len()].copy_from_slice(&row);
        }

        let tri: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| {
                let base = slot_base(g, v as u32);
                let s: i64 = (0..g.degree(v as u32)).map(|k| cn[base + k]).sum();
                debug_assert_eq!(s % 2, 0);
                s / 2
            })
            .collect();

        let p2l: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| {
                g.neighbors(v as u32)
                    .iter()
                    .map(|&u| d[u as usize] - 1)
                    .sum()
            })
            .collect();
        let sc2: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| {
                g.neighbors(v as u32)
                    .iter()
                    .map(|&u| choose2(d[u as usize] - 1))
                    .sum()
            })
            .collect();
        let st: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| g.neighbors(v as u32).iter().map(|&u| tri[u as usize]).sum())
            .collect();
        let d3: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| {
                let base = slot_base(g, v as u32);
                (0..g.degree(v as u32)).map(|k| choose2(cn[base + k])).sum()
            })
            .collect();
        let p4e: Vec<i64> = (0..n)
            .into_par_iter()
            .map(|v| {
                let base = slot_base(g, v as u32);
                g.neighbors(v as u32)
                    .iter()
                    .enumerate()
                    .map(|(k, &u)| p2l[u as usize] - (d[v] - 1) - cn[base + k])
                    .sum()
            })
            .collect();

        // Triangle-indexed sums at each vertex.
        let td_tc: Vec<(i64, i64)> = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                let mut td = 0i64;
                let mut tc = 0i64;
                for_triangles(g, v, |_u, w, _su, suw| {
                    // Ordered visits: each triangle contributes both (u,w)
                    // and (w,u), so degree terms land twice and halve below.
                    td += d[w as usize];
                    tc += cn[suw];
                });
                debug_assert_eq!(tc % 2, 0);
                (td, tc / 2)
            })
            .collect();
        let trideg: Vec<i64> = td_tc.iter().map(|x| x.0).collect();
        let tricn: Vec<i64> = td_tc.iter().map(|x| x.1).collect();

        let mut gl = Globals {
            tier,
            d,
            p2l,
            sc2,
            sc3: Vec::new(),
            sd2: Vec::new(),
            tri,
            trideg,
            tricn,
            d3,
            st,
            c4: Vec::new(),
            k23b2: Vec::new(),
            p4e,
            k4net: Vec::new(),
            cn,
            edeg: Vec::new(),
            tca_near: Vec::new(),
            tca_far: Vec::new(),
            c4e: Vec::new(),
            ec: Vec::new(),
        };

        // Two-hop scan pass: 4-cycle counts (and penta extras).
        let penta = tier == Tier::Penta;
        if penta {
            gl.sc3 = (0..n)
                .into_par_iter()
                .map(|v| {
                    g.neighbors(v as u32)
                        .iter()
                        .map(|&u| choose3(gl.d[u as usize] - 1))
                        .sum()
                })
                .collect();
            gl.sd2 = (0..n)
                .into_par_iter()
                .map(|v| {
                    g.neighbors(v as u32)
                        .iter()
                        .map(|&u| {
                            let x = gl.d[u as usize] - 1;
                            x * x
                        })
                        .sum()
                })
                .collect();
        }

        let scan_out: Vec<(i64, i64, Vec<i64>)> = (0..n as u32)
            .into_par_iter()
            .map_init(
                || ScanBuf::new(n),
                |buf, v| {
                    buf.build(g, v);
                    let mut c4v = 0i64;
                    let mut k23 = 0i64;
                    for &w in &buf.touched {
                        let p = buf.p2[w as usize];
                        c4v += choose2(p);
                        if penta {
                            k23 += choose2(p - 1); // distributed to middles below
                        }
                    }
                    let _ = k23;
                    // c4e per slot of v, and the k23 middle distribution,
                    // need a second sweep over the same steps.
                    let mut c4e_row = Vec::new();
                    if penta {
                        c4e_row = vec![0i64; g.degree(v)];
                        for (k, &u) in g.neighbors(v).iter().enumerate() {
                            let mut acc = 0i64;
                            for &x in g.neighbors(u) {
                                if x != v {
                                    acc += buf.p2[x as usize] - 1;
                                }
                            }
                            c4e_row[k] = acc;
                        }
                    }
                    let kk = 0i64;
                    buf.clear();
                    (c4v, kk, c4e_row)
                },
            )
            .collect();
        gl.c4 = scan_out.iter().map(|x| x.0).collect();
        if penta {
            let mut c4e = vec![0i64; slots];
            for (v, out) in scan_out.iter().enumerate() {
                let base = slot_base(g, v as u32);
                c4e[base..base + out.2.len()].copy_from_slice(&out.2);
            }
            gl.c4e = c4e;

            // Middle-distributed counts for the two-degree side of the
            // complete bipartite template: acc[u] += C(p2(v,b)-1, 2) per
            // wedge v-u-b, summed over both endpoints (hence the x2 name).
            let threads = rayon::current_num_threads().max(1);
            let chunk = n.div_ceil(threads);
            let partials: Vec<Vec<i64>> = (0..threads)
                .into_par_iter()
                .map_init(
                    || ScanBuf::new(n),
                    |buf, ti| {
                        let mut acc = vec![0i64; n];
                        let lo = ti * chunk;
                        let hi = ((ti + 1) * chunk).min(n);
                        for v in lo..hi {
                            let v = v as u32;
                            buf.build(g, v);
                            for &u in g.neighbors(v) {
                                for &b in g.neighbors(u) {
                                    if b != v {
                                        let c = buf.p2[b as usize] - 1;
                                        if c >= 2 {
                                            acc[u as usize] += choose2(c);
                                        }
                                    }
                                }
                            }
                            buf.clear();
                        }
                        acc
                    },
                )
                .collect();
            let mut k23b2 = vec![0i64; n];
            for part in partials {
                for (a, b) in k23b2.iter_mut().zip(part) {
                    *a += b;
                }
            }
            gl.k23b2 = k23b2;

            // Per-edge aggregates over the common neighborhood.
            let rows: Vec<(Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> = (0..n as u32)
                .into_par_iter()
                .map(|v| {
                    let deg = g.degree(v);
                    let mut edeg = vec![0i64; deg];
                    let mut near = vec![0i64; deg];
                    let mut far = vec![0i64; deg];
                    let mut ec = vec![0i64; deg];
                    for (k, &u) in g.neighbors(v).iter().enumerate() {
                        let (mut i, mut j) = (0usize, 0usize);
                        let (nv, nu) = (g.neighbors(v), g.neighbors(u));
                        let mut commons: Vec<u32> = Vec::new();
                        while i < nv.len() && j < nu.len() {
                            match nv[i].cmp(&nu[j]) {
                                std::cmp::Ordering::Less => i += 1,
                                std::cmp::Ordering::Greater => j += 1,
                                std::cmp::Ordering::Equal => {
                                    let w = nv[i];
                                    edeg[k] += gl.d[w as usize];
                                    near[k] += gl.cn[slot_base(g, v) + i];
                                    far[k] += gl.cn[slot_base(g, u) + j];
                                    commons.push(w);
                                    i += 1;
                                    j += 1;
                                }
                            }
                        }
                        // Edges inside the common neighborhood.
                        if commons.len() >= 2 {
                            let mut e2 = 0i64;
                            for &w in &commons {
                                let nw = g.neighbors(w);
                                if nw.len() < commons.len() * 4 {
                                    for &x in nw {
                                        if x > w && commons.binary_search(&x).is_ok() {
                                            e2 += 1;
                                        }
                                    }
                                } else {
                                    for &x in &commons {
                                        if x > w && g.has_edge(w, x) {
                                            e2 += 1;
                                        }
                                    }
                                }
                            }
                            ec[k] = e2;
                        }
                    }
                    (edeg, near, far, ec)
                })
                .collect();
            let mut edeg = vec![0i64; slots];
            let mut near = vec![0i64; slots];
            let mut far = vec![0i64; slots];
            let mut ec = vec![0i64; slots];
            for (v, (re, rn, rf, rc)) in rows.into_iter().enumerate() {
                let base = slot_base(g, v as u32);
                edeg[base..base + re.len()].copy_from_slice(&re);
                near[base..base + rn.len()].copy_from_slice(&rn);
                far[base..base + rf.len()].copy_from_slice(&rf);
                ec[base..base + rc.len()].copy_from_slice(&rc);
            }
            gl.edeg = edeg;
            gl.tca_near = near;
            gl.tca_far = far;
            gl.ec = ec;
        }
        gl
    }

    /// Copy the quad-family clique column out of the net table; the penta
    /// step reads it at neighbor vertices.
    pub fn fill_from_quad(&mut self, g: &SourceGraph, atlas: &Atlas, net: &FrequencyTable) {
        let k4col = atlas.flat_index(GraphletId::new(4, 6, 1));
        self.k4net = (0..g.n()).map(|v| net.get(v, k4col)).collect();
    }
}

#[inline]
pub fn choose2(x: i64) -> i64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

#[inline]
pub fn choose3(x: i64) -> i64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

#[inline]
pub fn choose4(x: i64) -> i64 {
    if x < 4 {
        0
    } else {
        x * (x - 1) / 2 * (x - 2) / 3 * (x - 3) / 4
    }
}

fn merge_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Visit every triangle {v,u,w} at `v` as ordered pairs (u,w) and (w,u),
/// passing the CSR slots of (v->u) and (u->w).
pub fn for_triangles(g: &SourceGraph, v: u32, mut f: impl FnMut(u32, u32, usize, usize)) {
    let nv = g.neighbors(v);
    let vbase = slot_base(g, v);
    for (k, &u) in nv.iter().enumerate() {
        let nu = g.neighbors(u);
        let ubase = slot_base(g, u);
        let (mut i, mut j) = (0usize, 0usize);
        while i < nv.len() && j < nu.len() {
            match nv[i].cmp(&nu[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nv[i];
                    if w != v && w != u {
                        f(u, w, vbase + k, ubase + j);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// Reusable two-hop scan state: p2[w] = |N(v) ∩ N(w)| for all touched w,
/// plus companion accumulators filled by the penta pass.
pub struct ScanBuf {
    pub p2: Vec<i64>,
    pub sd: Vec<i64>,
    pub scn: Vec<i64>,
    pub touched: Vec<u32>,
    pub adj: Vec<bool>,
}

impl ScanBuf {
    pub fn new(n: usize) -> ScanBuf {
        ScanBuf {
            p2: vec![0; n],
            sd: vec![0; n],
            scn: vec![0; n],
            touched: Vec::new(),
            adj: vec![false; n],
        }
    }

    /// Basic scan: fills p2 and the N(v) bitmap.
    pub fn build(&mut self, g: &SourceGraph, v: u32) {
        for &u in g.neighbors(v) {
            self.adj[u as usize] = true;
        }
        for &u in g.neighbors(v) {
            for &w in g.neighbors(u) {
                if w != v {
                    if self.p2[w as usize] == 0 {
                        self.touched.push(w);
                    }
                    self.p2[w as usize] += 1;
                }
            }
        }
    }

    /// Scan with the penta accumulators (neighbor degrees and edge-cn sums).
    pub fn build_penta(&mut self, g: &SourceGraph, v: u32, d: &[i64], cn: &[i64]) {
        for &u in g.neighbors(v) {
            self.adj[u as usize] = true;
        }
        for &u in g.neighbors(v) {
            let ubase = slot_base(g, u);
            for (j, &w) in g.neighbors(u).iter().enumerate() {
                if w != v {
                    if self.p2[w as usize] == 0 {
                        self.touched.push(w);
                    }
                    self.p2[w as usize] += 1;
                    self.sd[w as usize] += d[u as usize];
                    self.scn[w as usize] += cn[ubase + j];
                }
            }
        }
    }

    pub fn clear(&mut self) {
        for &w in &self.touched {
            self.p2[w as usize] = 0;
            self.sd[w as usize] = 0;
            self.scn[w as usize] = 0;
        }
        self.touched.clear();
        // adj marks are cleared by the caller's vertex loop.
    }

    pub fn clear_adj(&mut self, g: &SourceGraph, v: u32) {
        for &u in g.neighbors(v) {
            self.adj[u as usize] = false;
        }
    }
}

/// Per-worker scratch for the per-vertex family passes.
pub struct Scratch {
    pub scan: ScanBuf,
    pub mark2: Vec<bool>,
    pub cnt: Vec<i64>,
    pub cnt_touched: Vec<u32>,
    pub ecnt: Vec<i64>,
    pub ecnt_touched: Vec<usize>,
    pub u_common: Vec<u32>,
    pub vt_common: Vec<u32>,
    pub pairs_buf: Vec<u64>,
}

impl Scratch {
    pub fn new(n: usize, m: usize) -> Scratch {
        Scratch {
            scan: ScanBuf::new(n),
            mark2: vec![false; n],
            cnt: vec![0; n],
            cnt_touched: Vec::new(),
            ecnt: vec![0; 2 * m],
            ecnt_touched: Vec::new(),
            u_common: Vec::new(),
            vt_common: Vec::new(),
            pairs_buf: Vec::new(),
        }
    }
}
