//! Per-vertex frequency tables over an ordered graphlet list, shared by the
//! counting engine and the brute-force reference. Counts are stored as i128:
//! per-vertex counts are bounded by binomials of the maximum degree, which
//! stay far below 2^127 for any graph that fits in memory.

use std::io::Write;

use crate::atlas::{Atlas, GraphletId};
use crate::graph::SourceGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Net,
    Gross,
}

impl CountKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountKind::Net => "net",
            CountKind::Gross => "gross",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrequencyTable {
    pub t: u8,
    pub kind: CountKind,
    pub ids: Vec<GraphletId>,
    pub n_vertices: usize,
    values: Vec<i128>,
}

impl FrequencyTable {
    pub fn zeros(t: u8, kind: CountKind, ids: Vec<GraphletId>, n_vertices: usize) -> Self {
        let w = ids.len();
        FrequencyTable {
            t,
            kind,
            ids,
            n_vertices,
            values: vec![0; w * n_vertices],
        }
    }

    pub fn width(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn get(&self, v: usize, g: usize) -> i128 {
        self.values[v * self.width() + g]
    }

    #[inline]
    pub fn set(&mut self, v: usize, g: usize, val: i128) {
        let w = self.width();
        self.values[v * w + g] = val;
    }

    #[inline]
    pub fn add(&mut self, v: usize, g: usize, val: i128) {
        let w = self.width();
        self.values[v * w + g] += val;
    }

    pub fn row(&self, v: usize) -> &[i128] {
        let w = self.width();
        &self.values[v * w..(v + 1) * w]
    }

    pub fn row_mut(&mut self, v: usize) -> &mut [i128] {
        let w = self.width();
        &mut self.values[v * w..(v + 1) * w]
    }

    /// Mutable per-vertex rows for vertex-parallel writers.
    pub fn rows_mut(&mut self) -> std::slice::ChunksMut<'_, i128> {
        let w = self.width();
        self.values.chunks_mut(w)
    }

    /// Sum orbit channels back into per-pattern counts.
    pub fn aggregate_orbits(&self, atlas: &Atlas) -> FrequencyTable {
        let pat_ids = atlas.pattern_ids(self.t);
        let mut out =
            FrequencyTable::zeros(self.t, self.kind, pat_ids.clone(), self.n_vertices);
        // Column map: orbit id -> pattern column.
        let col: Vec<usize> = self
            .ids
            .iter()
            .map(|id| {
                pat_ids
                    .iter()
                    .position(|q| q.s == id.s && q.p == id.p)
                    .unwrap()
            })
            .collect();
        for v in 0..self.n_vertices {
            for (g, &c) in col.iter().enumerate() {
                let val = self.get(v, g);
                out.add(v, c, val);
            }
        }
        out
    }

    /// CSV rows `vertex_label,graphlet_s,graphlet_p,graphlet_sigma,count`,
    /// preceded by `#` header lines carrying provenance.
    pub fn write_csv(
        &self,
        g: &SourceGraph,
        header: &[(&str, String)],
        w: &mut impl Write,
    ) -> std::io::Result<()> {
        for (k, v) in header {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "vertex_label,graphlet_s,graphlet_p,graphlet_sigma,{}_count", self.kind.as_str())?;
        for v in 0..self.n_vertices {
            for (gi, id) in self.ids.iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    g.label(v as u32),
                    id.s,
                    id.p,
                    id.sigma,
                    self.get(v, gi)
                )?;
            }
        }
        Ok(())
    }

    /// Columnar JSON: graphlet order once, then one count row per vertex.
    pub fn write_json(
        &self,
        g: &SourceGraph,
        header: &[(&str, String)],
        w: &mut impl Write,
    ) -> std::io::Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = header
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
            .collect();
        let order: Vec<[u64; 3]> = self
            .ids
            .iter()
            .map(|id| [id.s as u64, id.p as u64, id.sigma as u64])
            .collect();
        let labels: Vec<&str> = (0..self.n_vertices).map(|v| g.label(v as u32)).collect();
        let counts: Vec<Vec<String>> = (0..self.n_vertices)
            .map(|v| self.row(v).iter().map(|c| c.to_string()).collect())
            .collect();
        let doc = serde_json::json!({
            "meta": meta,
            "kind": self.kind.as_str(),
            "order": order,
            "vertices": labels,
            "counts": counts,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LoadOptions;

    #[test]
    fn aggregate_sums_orbits() {
        let atlas = Atlas::build(3).unwrap();
        let ids = atlas.orbit_ids(3);
        let mut t = FrequencyTable::zeros(3, CountKind::Net, ids, 2);
        // Orbit layout: K1, K2, wedge-leaf, wedge-center, triangle.
        t.set(0, 2, 3);
        t.set(0, 3, 6);
        let h = t.aggregate_orbits(&atlas);
        // Pattern layout: K1, K2, wedge, triangle.
        assert_eq!(h.get(0, 2), 9);
        assert_eq!(h.get(0, 3), 0);
    }

    #[test]
    fn csv_shape() {
        let atlas = Atlas::build(2).unwrap();
        let g = SourceGraph::from_id_edges(2, &[(0, 1)], LoadOptions::default(), vec![])
            .unwrap();
        let mut t = FrequencyTable::zeros(2, CountKind::Net, atlas.orbit_ids(2), 2);
        t.set(0, 0, 1);
        let mut buf = Vec::new();
        t.write_csv(&g, &[("source", "test".into())], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# source: test\n"));
        assert_eq!(text.lines().count(), 2 + 4); // header + 2 vertices x 2 graphlets
    }
}
