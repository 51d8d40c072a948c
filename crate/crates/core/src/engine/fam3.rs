//! Triple-node gross counts in closed form: 2-paths from degree sums,
//! triangles from the common-neighbor totals.

use crate::atlas::Atlas;
use crate::graph::SourceGraph;

use super::prims::{choose2, Globals};

pub const CATALOG: [(&str, &[(u8, u8)], u8); 3] = [
    ("wedge_leaf", &[(0, 1), (1, 2)], 0),
    ("wedge_center", &[(0, 1), (1, 2)], 1),
    ("triangle", &[(0, 1), (1, 2), (0, 2)], 0),
];

pub fn catalog_map(atlas: &Atlas) -> Vec<usize> {
    super::solve::map_catalog(atlas, 3, &CATALOG)
}

pub fn gross(_g: &SourceGraph, gl: &Globals, v: u32, map: &[usize], out: &mut [i128]) {
    let v = v as usize;
    out[map[0]] = gl.p2l[v] as i128;
    out[map[1]] = choose2(gl.d[v]) as i128;
}

pub fn clique(_g: &SourceGraph, gl: &Globals, v: u32) -> i128 {
    gl.tri[v as usize] as i128
}
