//! Penta-node gross counts in closed form.
//!
//! Every template is counted from local structure: degree binomials for the
//! star-like parts, two-hop path multiplicities for the path and cycle
//! parts, triangle-anchored sums with per-edge aggregates for the shapes
//! carrying a triangle, and bounded completion enumeration only where a
//! 4-clique is already present. The one piece the reduced systems skip is
//! the 5-clique completion in `clique`.
//!
//! Each formula counts subgraph copies exactly once; collisions (two roles
//! landing on one vertex) are subtracted explicitly. The whole family is
//! validated entry-by-entry against the brute-force reference in the tests.

use crate::atlas::Atlas;
use crate::graph::SourceGraph;

use super::prims::{choose2, choose3, choose4, slot_base, Globals, ScanBuf, Scratch};

// Internal slot order; the catalog map rewires these to family-local columns.
const S5_LEAF: usize = 0;
const S5_CENTER: usize = 1;
const CH_SHORT: usize = 2;
const CH_LONG: usize = 3;
const CH_CENTER: usize = 4;
const CH_MID: usize = 5;
const P5_END: usize = 6;
const P5_NEAR: usize = 7;
const P5_MID: usize = 8;
const CR_PEND: usize = 9;
const CR_TRI: usize = 10;
const CR_ATT: usize = 11;
const BU_HEAD: usize = 12;
const BU_TRI: usize = 13;
const BU_PEND: usize = 14;
const TA_TRI: usize = 15;
const TA_ROOT: usize = 16;
const TA_MID: usize = 17;
const TA_END: usize = 18;
const BA_PEND: usize = 19;
const BA_ATT: usize = 20;
const BA_MID: usize = 21;
const BA_OPP: usize = 22;
const C5: usize = 23;
const BF_CENTER: usize = 24;
const BF_WING: usize = 25;
const KI_PEND: usize = 26;
const KI_RIM_ATT: usize = 27;
const KI_RIM_FAR: usize = 28;
const KI_CHORD: usize = 29;
const DA_PEND: usize = 30;
const DA_ATT: usize = 31;
const DA_CHORD_FAR: usize = 32;
const DA_RIM: usize = 33;
const HO_ROOF: usize = 34;
const HO_MID: usize = 35;
const HO_BASE: usize = 36;
const K23_A: usize = 37;
const K23_B: usize = 38;
const GE_DOM: usize = 39;
const GE_END: usize = 40;
const GE_MID: usize = 41;
const K4P_PEND: usize = 42;
const K4P_ATT: usize = 43;
const K4P_B: usize = 44;
const B3_SPINE: usize = 45;
const B3_PAGE: usize = 46;
const SK_X: usize = 47;
const SK_A: usize = 48;
const SK_C: usize = 49;
const W4_HUB: usize = 50;
const W4_RIM: usize = 51;
const KP_B: usize = 52;
const KP_A: usize = 53;
const KP_D: usize = 54;
const KE_A: usize = 55;
const KE_C: usize = 56;
const K5: usize = 57;

type Entry = (&'static str, &'static [(u8, u8)], u8);

const STAR5: &[(u8, u8)] = &[(0, 1), (0, 2), (0, 3), (0, 4)];
const CHAIR: &[(u8, u8)] = &[(0, 1), (0, 2), (0, 3), (3, 4)];
const PATH5: &[(u8, u8)] = &[(0, 1), (1, 2), (2, 3), (3, 4)];
const CRICKET: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)];
const BULL: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)];
const TADPOLE: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (0, 3), (3, 4)];
const BANNER: &[(u8, u8)] = &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)];
const CYC5: &[(u8, u8)] = &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
const BUTTERFLY: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];
const KITE: &[(u8, u8)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4)];
const DART: &[(u8, u8)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)];
const HOUSE: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)];
const K23G: &[(u8, u8)] = &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
const GEM: &[(u8, u8)] = &[(1, 2), (2, 3), (3, 4), (0, 1), (0, 2), (0, 3), (0, 4)];
const K4P: &[(u8, u8)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)];
const BOOK3: &[(u8, u8)] = &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)];
const SUBDIV_K4: &[(u8, u8)] = &[(0, 2), (1, 2), (0, 3), (0, 4), (1, 3), (1, 4), (3, 4)];
const WHEEL4: &[(u8, u8)] = &[
    (0, 1),
    (1, 2),
    (2, 3),
    (0, 3),
    (4, 0),
    (4, 1),
    (4, 2),
    (4, 3),
];
const K5_M_P3: &[(u8, u8)] = &[
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];
const K5_M_E: &[(u8, u8)] = &[
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];
const K5G: &[(u8, u8)] = &[
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

pub const CATALOG: [Entry; 58] = [
    ("star5_leaf", STAR5, 1),
    ("star5_center", STAR5, 0),
    ("chair_short", CHAIR, 1),
    ("chair_long", CHAIR, 4),
    ("chair_center", CHAIR, 0),
    ("chair_mid", CHAIR, 3),
    ("path5_end", PATH5, 0),
    ("path5_near", PATH5, 1),
    ("path5_mid", PATH5, 2),
    ("cricket_pendant", CRICKET, 3),
    ("cricket_tri", CRICKET, 1),
    ("cricket_attach", CRICKET, 0),
    ("bull_head", BULL, 0),
    ("bull_tri", BULL, 1),
    ("bull_pendant", BULL, 3),
    ("tadpole_tri", TADPOLE, 1),
    ("tadpole_root", TADPOLE, 0),
    ("tadpole_mid", TADPOLE, 3),
    ("tadpole_end", TADPOLE, 4),
    ("banner_pendant", BANNER, 4),
    ("banner_attach", BANNER, 0),
    ("banner_mid", BANNER, 1),
    ("banner_opp", BANNER, 2),
    ("cycle5", CYC5, 0),
    ("butterfly_center", BUTTERFLY, 0),
    ("butterfly_wing", BUTTERFLY, 1),
    ("kite_pendant", KITE, 4),
    ("kite_rim_attach", KITE, 2),
    ("kite_rim_far", KITE, 3),
    ("kite_chord", KITE, 0),
    ("dart_pendant", DART, 4),
    ("dart_attach", DART, 0),
    ("dart_chord_far", DART, 1),
    ("dart_rim", DART, 2),
    ("house_roof", HOUSE, 0),
    ("house_mid", HOUSE, 1),
    ("house_base", HOUSE, 3),
    ("k23_big", K23G, 0),
    ("k23_small", K23G, 2),
    ("gem_dominator", GEM, 0),
    ("gem_end", GEM, 1),
    ("gem_mid", GEM, 2),
    ("k4_pendant_pendant", K4P, 4),
    ("k4_pendant_attach", K4P, 0),
    ("k4_pendant_base", K4P, 1),
    ("book3_spine", BOOK3, 0),
    ("book3_page", BOOK3, 2),
    ("subdiv_k4_mid", SUBDIV_K4, 2),
    ("subdiv_k4_side", SUBDIV_K4, 0),
    ("subdiv_k4_core", SUBDIV_K4, 3),
    ("wheel4_hub", WHEEL4, 4),
    ("wheel4_rim", WHEEL4, 0),
    ("k5_minus_path_low", K5_M_P3, 1),
    ("k5_minus_path_side", K5_M_P3, 0),
    ("k5_minus_path_high", K5_M_P3, 3),
    ("k5_minus_edge_low", K5_M_E, 0),
    ("k5_minus_edge_high", K5_M_E, 2),
    ("k5", K5G, 0),
];

pub fn catalog_map(atlas: &Atlas) -> Vec<usize> {
    super::solve::map_catalog(atlas, 5, &CATALOG)
}

pub fn gross(
    g: &SourceGraph,
    gl: &Globals,
    sc: &mut Scratch,
    v: u32,
    map: &[usize],
    out: &mut [i128],
) {
    let vu = v as usize;
    let d = gl.d[vu];
    let t = gl.tri[vu];
    let vbase = slot_base(g, v);
    let nv = g.neighbors(v);
    let mut acc = [0i128; 58];

    // Globals-only closed forms.
    acc[S5_LEAF] = gl.sc3[vu] as i128;
    acc[S5_CENTER] = choose4(d) as i128;
    acc[CH_CENTER] = choose2(d - 1) as i128 * (gl.p2l[vu] - 2 * t) as i128
        + choose2(d - 2) as i128 * (2 * t) as i128;
    acc[P5_MID] = (gl.p2l[vu] as i128 * gl.p2l[vu] as i128 - gl.sd2[vu] as i128) / 2
        - (gl.trideg[vu] - 3 * t) as i128
        - gl.c4[vu] as i128;
    acc[CR_ATT] = (t * choose2(d - 2)) as i128;
    acc[DA_ATT] = gl.d3[vu] as i128 * (d - 3) as i128;
    acc[K4P_ATT] = gl.k4net[vu] * (d - 3) as i128;
    acc[BF_CENTER] = choose2(t) as i128 - gl.d3[vu] as i128;
    debug_assert_eq!(gl.k23b2[vu] % 2, 0);
    acc[K23_B] = (gl.k23b2[vu] / 2) as i128;

    let d2v = gl.tricn[vu] - t; // diamonds with v on the rim

    // Neighbor loop over the per-edge aggregates.
    for (k, &u) in nv.iter().enumerate() {
        let e = vbase + k;
        let uu = u as usize;
        let (du, tu) = (gl.d[uu], gl.tri[uu]);
        let cnvu = gl.cn[e];
        acc[CH_MID] += (d - 1 - cnvu) as i128 * choose2(du - 1) as i128
            + cnvu as i128 * choose2(du - 2) as i128;
        acc[CH_SHORT] += (du - 2) as i128 * (gl.p2l[uu] - d + 1 - cnvu) as i128
            + (2 * cnvu - 2 * tu) as i128;
        acc[CR_PEND] += (tu - cnvu) as i128 * (du - 3) as i128;
        acc[BU_PEND] +=
            (gl.trideg[uu] - 4 * tu - gl.tca_far[e] - cnvu * (d - 2) - gl.edeg[e] + 3 * cnvu)
                as i128;
        acc[TA_MID] += ((tu - cnvu) * (d - 1) - gl.tca_far[e] + cnvu) as i128;
        acc[BA_PEND] += (gl.c4[uu] - gl.c4e[e] - choose2(cnvu)) as i128;
        acc[KI_PEND] += ((gl.tricn[uu] - tu) - gl.ec[e] - gl.tca_near[e] + cnvu) as i128;
        acc[KI_CHORD] += (cnvu - 1) as i128 * gl.edeg[e] as i128
            - 4 * choose2(cnvu) as i128
            - 2 * gl.ec[e] as i128;
        acc[DA_PEND] += (gl.d3[uu] - choose2(cnvu) - gl.tca_far[e] + cnvu) as i128;
        acc[DA_CHORD_FAR] += choose2(cnvu) as i128 * (du - 3) as i128;
        acc[K4P_PEND] += gl.k4net[uu] - gl.ec[e] as i128;
        acc[B3_SPINE] += choose3(cnvu) as i128;
    }

    // Two-hop scan and the quantities read off the touched set.
    sc.scan.build_penta(g, v, &gl.d, &gl.cn);
    let mut c4n: i64 = 0;
    for &w in &sc.scan.touched {
        let wu = w as usize;
        let p = sc.scan.p2[wu];
        let adj = i64::from(sc.scan.adj[wu]);
        let c2p = choose2(p);
        acc[K23_A] += choose3(p) as i128;
        acc[BA_OPP] += c2p as i128 * (gl.d[wu] - 2 - adj) as i128;
        acc[BA_ATT] += c2p as i128 * (d - 2 - adj) as i128;
        acc[BA_MID] += (p - 1) as i128 * sc.scan.sd[wu] as i128;
        acc[HO_BASE] += (p - 1) as i128 * sc.scan.scn[wu] as i128;
        if adj == 1 {
            c4n += c2p;
        }
    }
    acc[BA_MID] -= 4 * gl.c4[vu] as i128 + 2 * d2v as i128;
    acc[HO_BASE] -= 2 * c4n as i128 + 2 * d2v as i128;

    // Five-cycles: products over the far edge, minus shared-flank collisions.
    let mut c5prod: i128 = 0;
    for &q in &sc.scan.touched {
        let pq = sc.scan.p2[q as usize];
        let adjq = i64::from(sc.scan.adj[q as usize]);
        for &r in g.neighbors(q) {
            if r == v {
                continue;
            }
            let pr = sc.scan.p2[r as usize];
            if pr == 0 {
                continue;
            }
            let adjr = i64::from(sc.scan.adj[r as usize]);
            c5prod += (pq - adjr) as i128 * (pr - adjq) as i128;
        }
    }
    let c5sub = 2 * (gl.st[vu] - 2 * t) as i128;
    debug_assert_eq!((c5prod - c5sub) % 2, 0);
    acc[C5] = (c5prod - c5sub) / 2;

    // Second sweep over the two-hop steps with completed path counts.
    for &u in nv {
        let uu = u as usize;
        let ubase = slot_base(g, u);
        for (j, &w) in g.neighbors(u).iter().enumerate() {
            if w == v {
                continue;
            }
            let wu = w as usize;
            let (dw, p2w) = (gl.d[wu], sc.scan.p2[wu]);
            let adjw = i64::from(sc.scan.adj[wu]);
            let cnuw = gl.cn[ubase + j];
            acc[CH_LONG] += choose2(dw - 1 - adjw) as i128;
            acc[P5_NEAR] += ((dw - 1 - adjw) * (d - 1 - adjw) - p2w + 1) as i128;
            acc[P5_END] += (gl.p2l[wu] - gl.d[uu] + 2 - cnuw - p2w - adjw * (d - 2)) as i128;
            acc[TA_END] += (gl.tri[wu] - cnuw - adjw * (p2w - 1)) as i128;
        }
    }

    // Triangle loop: ordered visits (u, w) with slot access to all three
    // pairwise counts, common-neighborhood merges where the count warrants,
    // and 4-clique completions for the clique-bearing templates.
    sc.pairs_buf.clear();
    let mut k4cnt: i64 = 0;
    let mut k4dsum: i128 = 0;
    for (k, &u) in nv.iter().enumerate() {
        let s_vu = vbase + k;
        if gl.cn[s_vu] == 0 {
            continue;
        }
        let uu = u as usize;
        let du = gl.d[uu];
        let nu = g.neighbors(u);
        let ubase = slot_base(g, u);
        sc.u_common.clear();
        let (mut i, mut j) = (0usize, 0usize);
        while i < nv.len() && j < nu.len() {
            match nv[i].cmp(&nu[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nv[i];
                    visit_triangle(
                        g,
                        gl,
                        &sc.scan,
                        &mut sc.vt_common,
                        v,
                        d,
                        u,
                        w,
                        s_vu,
                        vbase + i,
                        ubase + j,
                        du,
                        &mut acc,
                        &mut k4cnt,
                        &mut k4dsum,
                    );
                    for &x in sc.u_common.iter() {
                        sc.pairs_buf.push((x as u64) << 32 | w as u64);
                    }
                    sc.u_common.push(w);
                    i += 1;
                    j += 1;
                }
            }
        }

        // Hub epilogue: distribute the common neighborhood one step further
        // for the bridged chord and the wheel rim.
        if !sc.u_common.is_empty() {
            for &x in nu {
                sc.mark2[x as usize] = true;
            }
            for &b in sc.u_common.iter() {
                for &x in g.neighbors(b) {
                    let xu = x as usize;
                    if sc.cnt[xu] == 0 {
                        sc.cnt_touched.push(x);
                    }
                    sc.cnt[xu] += 1;
                }
            }
            for &x in &sc.cnt_touched {
                let xu = x as usize;
                let c = sc.cnt[xu];
                if x != v && x != u {
                    acc[SK_C] += choose2(c) as i128;
                }
                if sc.mark2[xu] && x != v {
                    acc[W4_RIM] += choose2(c) as i128;
                }
                sc.cnt[xu] = 0;
            }
            sc.cnt_touched.clear();
            for &x in nu {
                sc.mark2[x as usize] = false;
            }
        }
    }

    // Wheel hubs: two wedge middles over the same far pair close a rim.
    if !sc.pairs_buf.is_empty() {
        sc.pairs_buf.sort_unstable();
        let mut run = 1i64;
        let mut hub2: i128 = 0;
        for idx in 1..=sc.pairs_buf.len() {
            if idx < sc.pairs_buf.len() && sc.pairs_buf[idx] == sc.pairs_buf[idx - 1] {
                run += 1;
            } else {
                hub2 += choose2(run) as i128;
                run = 1;
            }
        }
        debug_assert_eq!(hub2 % 2, 0);
        acc[W4_HUB] = hub2 / 2;
        sc.pairs_buf.clear();
    }

    // Neighbor-triangle pass: two triangles on one far edge, bridged at v.
    for &a in nv {
        if gl.tri[a as usize] == 0 {
            continue;
        }
        let na = g.neighbors(a);
        let abase = slot_base(g, a);
        for (ka, &c) in na.iter().enumerate() {
            if c == v || gl.cn[abase + ka] == 0 {
                continue;
            }
            let nc = g.neighbors(c);
            let cbase = slot_base(g, c);
            let (mut i, mut j) = (0usize, 0usize);
            while i < na.len() && j < nc.len() {
                match na[i].cmp(&nc[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let dd = na[i];
                        if dd > c && dd != v {
                            let key = cbase + j; // slot (c -> dd), c < dd
                            if sc.ecnt[key] == 0 {
                                sc.ecnt_touched.push(key);
                            }
                            sc.ecnt[key] += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    for &key in &sc.ecnt_touched {
        acc[SK_X] += choose2(sc.ecnt[key]) as i128;
        sc.ecnt[key] = 0;
    }
    sc.ecnt_touched.clear();

    // Accumulators summed over ordered triangle visits fold in pairs (or in
    // the stated larger groups for the clique completions).
    for (idx, den) in [
        (BU_HEAD, 2),
        (TA_ROOT, 2),
        (HO_ROOF, 2),
        (GE_DOM, 2),
        (DA_RIM, 2),
        (B3_PAGE, 2),
        (KI_RIM_ATT, 2),
        (KI_RIM_FAR, 2),
        (SK_A, 2),
        (KP_B, 2),
        (KP_A, 2),
        (KP_D, 2),
        (KE_A, 6),
        (KE_C, 4),
    ] {
        debug_assert_eq!(acc[idx] % den, 0, "slot {idx} not divisible by {den}");
        acc[idx] /= den;
    }
    debug_assert_eq!(k4cnt % 6, 0);
    debug_assert_eq!((k4cnt / 6) as i128, gl.k4net[vu], "clique recount disagrees");
    debug_assert_eq!((k4dsum - 9 * k4cnt as i128) % 6, 0);
    acc[K4P_B] = (k4dsum - 9 * k4cnt as i128) / 6;

    sc.scan.clear();
    sc.scan.clear_adj(g, v);

    for (i, &a) in acc.iter().enumerate() {
        if i != K5 {
            out[map[i]] = a;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn visit_triangle(
    g: &SourceGraph,
    gl: &Globals,
    scan: &ScanBuf,
    common: &mut Vec<u32>,
    v: u32,
    d: i64,
    u: u32,
    w: u32,
    s_vu: usize,
    s_vw: usize,
    s_uw: usize,
    du: i64,
    acc: &mut [i128; 58],
    k4cnt: &mut i64,
    k4dsum: &mut i128,
) {
    let (uu, wu) = (u as usize, w as usize);
    let dw = gl.d[wu];
    let cnvu = gl.cn[s_vu];
    let cnvw = gl.cn[s_vw];
    let cnuw = gl.cn[s_uw];

    acc[CR_TRI] += choose2(du - 2) as i128;
    acc[BU_HEAD] += ((du - 2) * (dw - 2) - cnuw + 1) as i128;
    acc[BU_TRI] += ((d - 2) * (du - 2) - (cnvu - 1)) as i128;
    acc[TA_TRI] += (gl.p2l[uu] - d - dw + 4 - cnvu - cnuw) as i128;
    acc[TA_ROOT] += (gl.p2l[v as usize] - du - dw + 4 - cnvu - cnvw) as i128;
    acc[BF_WING] += (gl.tri[uu] - cnvu - cnuw + 1) as i128;
    acc[DA_RIM] += (cnuw - 1) as i128 * (du + dw - 6) as i128;
    acc[B3_PAGE] += choose2(cnuw - 1) as i128;
    acc[HO_ROOF] += (gl.c4e[s_uw] - 2 * (cnvu - 1)) as i128;
    acc[HO_MID] += (gl.c4e[s_vu] - (cnuw - 1) - (cnvw - 1)) as i128;
    acc[GE_END] += (gl.tca_near[s_uw] - cnvu - cnuw + 1) as i128;
    acc[GE_MID] += (gl.tca_far[s_vu] - cnuw - cnvu + 1) as i128;
    acc[KP_B] += gl.ec[s_uw] as i128;

    if cnuw < 2 {
        // The common neighborhood of (u, w) is exactly {v}: all merge-based
        // terms vanish.
        acc[GE_DOM] += (cnvu - 1) as i128 * (cnvw - 1) as i128;
        acc[KI_RIM_ATT] += (cnuw - 1) as i128 * (d - 2) as i128;
        return;
    }

    // Merge N(u) and N(w) once: membership list, v-adjacent subset, degree
    // and path-count sums.
    let (nu, nw) = (g.neighbors(u), g.neighbors(w));
    common.clear();
    let mut tk: i64 = 0;
    let mut cdeg: i64 = 0;
    let mut cp2: i64 = 0;
    let (mut i, mut j) = (0usize, 0usize);
    while i < nu.len() && j < nw.len() {
        match nu[i].cmp(&nw[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let b = nu[i];
                common.push(b);
                if b != v {
                    cdeg += gl.d[b as usize];
                    cp2 += scan.p2[b as usize];
                    if scan.adj[b as usize] {
                        tk += 1;
                    }
                }
                i += 1;
                j += 1;
            }
        }
    }
    acc[GE_DOM] += ((cnvu - 1) * (cnvw - 1) - tk) as i128;
    acc[GE_END] -= tk as i128;
    acc[GE_MID] -= tk as i128;
    acc[KI_RIM_ATT] += ((cnuw - 1) * (d - 2) - tk) as i128;
    acc[KI_RIM_FAR] += (cdeg - 2 * (cnuw - 1) - tk) as i128;
    acc[SK_A] += (cp2 - 2 * (cnuw - 1)) as i128;
    acc[KP_B] -= tk as i128;
    acc[KE_C] += (tk * (tk - 1)) as i128;

    if tk == 0 {
        return;
    }
    // 4-clique completions {v, u, w, z}.
    for &z in common.iter() {
        let zu = z as usize;
        if z == v || !scan.adj[zu] {
            continue;
        }
        *k4cnt += 1;
        *k4dsum += (du + dw + gl.d[zu]) as i128;
        acc[KP_A] += (cnuw - 2) as i128;
        acc[KP_D] += (cnvu - 2) as i128;
        // |common(u,w) ∩ N(z)| by scanning the shorter side.
        let nz = g.neighbors(z);
        let hits = if common.len() <= nz.len() {
            common
                .iter()
                .filter(|&&b| b != z && nz.binary_search(&b).is_ok())
                .count() as i64
        } else {
            nz.iter()
                .filter(|&&b| b != z && common.binary_search(&b).is_ok())
                .count() as i64
        };
        acc[KE_A] += (hits - 1) as i128;
    }
}

/// Five-clique count at v: for each triangle at v, count adjacent pairs in
/// the marked triple neighborhood; each clique shows up once per triangle.
pub fn clique(g: &SourceGraph, gl: &Globals, sc: &mut Scratch, v: u32) -> i128 {
    // A 5-clique at v contains four 4-cliques at v.
    if gl.k4net[v as usize] < 4 {
        return 0;
    }
    for &u in g.neighbors(v) {
        sc.mark2[u as usize] = true;
    }
    let nv = g.neighbors(v);
    let vbase = slot_base(g, v);
    let mut acc: i128 = 0;
    for (k, &u) in nv.iter().enumerate() {
        if gl.cn[vbase + k] < 2 {
            continue;
        }
        let nu = g.neighbors(u);
        let (mut i, mut j) = (0usize, 0usize);
        while i < nv.len() && j < nu.len() {
            match nv[i].cmp(&nu[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nv[i];
                    i += 1;
                    j += 1;
                    if w <= u {
                        continue;
                    }
                    // tkbuf = common(u, w) ∩ N(v), ascending.
                    sc.vt_common.clear();
                    let (nu2, nw) = (g.neighbors(u), g.neighbors(w));
                    let (mut a, mut b) = (0usize, 0usize);
                    while a < nu2.len() && b < nw.len() {
                        match nu2[a].cmp(&nw[b]) {
                            std::cmp::Ordering::Less => a += 1,
                            std::cmp::Ordering::Greater => b += 1,
                            std::cmp::Ordering::Equal => {
                                let z = nu2[a];
                                if z != v && sc.mark2[z as usize] {
                                    sc.vt_common.push(z);
                                }
                                a += 1;
                                b += 1;
                            }
                        }
                    }
                    for (zi, &z) in sc.vt_common.iter().enumerate() {
                        let nz = g.neighbors(z);
                        for &z2 in &sc.vt_common[zi + 1..] {
                            if nz.binary_search(&z2).is_ok() {
                                acc += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    for &u in g.neighbors(v) {
        sc.mark2[u as usize] = false;
    }
    debug_assert_eq!(acc % 6, 0);
    acc / 6
}
