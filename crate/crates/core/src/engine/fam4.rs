//! Quad-node gross counts in closed form over the shared primitives. The
//! clique term enumerates triangle completions inside the marked
//! neighborhood and is the only part the reduced systems skip.

use crate::atlas::Atlas;
use crate::graph::SourceGraph;

use super::prims::{choose3, for_triangles, Globals, Scratch};

pub const CATALOG: [(&str, &[(u8, u8)], u8); 11] = [
    ("claw_leaf", &[(0, 1), (0, 2), (0, 3)], 1),
    ("claw_center", &[(0, 1), (0, 2), (0, 3)], 0),
    ("p4_end", &[(0, 1), (1, 2), (2, 3)], 0),
    ("p4_mid", &[(0, 1), (1, 2), (2, 3)], 1),
    ("paw_pendant", &[(1, 2), (2, 3), (1, 3), (0, 1)], 0),
    ("paw_mid", &[(1, 2), (2, 3), (1, 3), (0, 1)], 2),
    ("paw_attach", &[(1, 2), (2, 3), (1, 3), (0, 1)], 1),
    ("c4", &[(0, 1), (1, 2), (2, 3), (0, 3)], 0),
    ("diamond_rim", &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 2),
    ("diamond_chord", &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 0),
    ("k4", &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0),
];

pub fn catalog_map(atlas: &Atlas) -> Vec<usize> {
    super::solve::map_catalog(atlas, 4, &CATALOG)
}

pub fn gross(_g: &SourceGraph, gl: &Globals, _scratch: &mut Scratch, v: u32, map: &[usize], out: &mut [i128]) {
    let v = v as usize;
    let d = gl.d[v];
    let t = gl.tri[v];
    out[map[0]] = gl.sc2[v] as i128;
    out[map[1]] = choose3(d) as i128;
    out[map[2]] = gl.p4e[v] as i128;
    out[map[3]] = ((d - 1) as i128) * (gl.p2l[v] as i128) - 2 * t as i128;
    out[map[4]] = (gl.st[v] - 2 * t) as i128;
    out[map[5]] = (gl.trideg[v] - 4 * t) as i128;
    out[map[6]] = (t * (d - 2)) as i128;
    out[map[7]] = gl.c4[v] as i128;
    out[map[8]] = (gl.tricn[v] - t) as i128;
    out[map[9]] = gl.d3[v] as i128;
}

/// Clique count: each 4-clique at v appears once per ordered pair of its
/// triangle mates with a marked completion, six times in total.
pub fn clique(g: &SourceGraph, gl: &Globals, scratch: &mut Scratch, v: u32) -> i128 {
    if gl.tri[v as usize] < 3 {
        return 0;
    }
    for &u in g.neighbors(v) {
        scratch.mark2[u as usize] = true;
    }
    let mut six_count: i64 = 0;
    for_triangles(g, v, |u, w, _svu, suw| {
        if gl.cn[suw] == 0 {
            return;
        }
        // z adjacent to u, w, and v closes a 4-clique.
        let (nu, nw) = (g.neighbors(u), g.neighbors(w));
        let (mut i, mut j) = (0usize, 0usize);
        while i < nu.len() && j < nw.len() {
            match nu[i].cmp(&nw[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let z = nu[i];
                    if z != v && scratch.mark2[z as usize] {
                        six_count += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    });
    for &u in g.neighbors(v) {
        scratch.mark2[u as usize] = false;
    }
    debug_assert_eq!(six_count % 6, 0);
    (six_count / 6) as i128
}
