//! Simple undirected source graphs in CSR form.
//!
//! Input graphs are normalized by default: edges are symmetrized and
//! deduplicated, self-loops dropped, and arbitrary vertex labels remapped to
//! dense 0-based ids. Neighbor lists are kept sorted so the counting engine
//! can intersect them by merging.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("matrix market: {0}")]
    MatrixMarket(String),
    #[error("strict mode: {0}")]
    Strict(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Error out on self-loops, duplicate or asymmetric edges instead of
    /// normalizing them away.
    pub strict: bool,
}

/// Immutable simple undirected graph. Safe to share across worker threads.
#[derive(Debug, Clone)]
pub struct SourceGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Vec<String>,
}

impl SourceGraph {
    /// Build from an edge list over labeled vertices, normalizing per `opts`.
    /// `n_hint` forces at least that many vertices (isolated ones allowed)
    /// when labels are numeric 0-based ids; pass 0 otherwise.
    pub fn from_labeled_edges(
        edges: &[(String, String)],
        opts: LoadOptions,
    ) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for (a, b) in edges {
            for t in [a.as_str(), b.as_str()] {
                if seen.insert(t, ()).is_none() {
                    labels.push(t.to_string());
                }
            }
        }
        // All-numeric label sets get numeric order so outputs are stable under
        // edge reordering; otherwise first-appearance order.
        let numeric: Option<Vec<u64>> = labels.iter().map(|l| l.parse::<u64>().ok()).collect();
        if let Some(nums) = numeric {
            let mut pairs: Vec<(u64, String)> = nums.into_iter().zip(labels).collect();
            pairs.sort();
            labels = pairs.into_iter().map(|(_, l)| l).collect();
        }
        let index: HashMap<&str, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();
        let id_edges: Vec<(u32, u32)> = edges
            .iter()
            .map(|(a, b)| (index[a.as_str()], index[b.as_str()]))
            .collect();
        Self::from_id_edges(labels.len(), &id_edges, opts, labels)
    }

    /// Build from dense 0-based id edges. Vertices `0..n` exist even if isolated.
    pub fn from_id_edges(
        n: usize,
        edges: &[(u32, u32)],
        opts: LoadOptions,
        labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        let labels = if labels.is_empty() {
            (0..n).map(|i| i.to_string()).collect()
        } else {
            labels
        };
        assert_eq!(labels.len(), n);
        let mut adj: Vec<(u32, u32)> = Vec::with_capacity(edges.len() * 2);
        for &(a, b) in edges {
            assert!((a as usize) < n && (b as usize) < n);
            if a == b {
                if opts.strict {
                    return Err(GraphError::Strict(format!(
                        "self-loop at vertex {}",
                        labels[a as usize]
                    )));
                }
                continue;
            }
            adj.push((a, b));
            adj.push((b, a));
        }
        adj.sort_unstable();
        let before = adj.len();
        adj.dedup();
        if opts.strict && adj.len() != before {
            return Err(GraphError::Strict("duplicate edge in input".into()));
        }
        let mut offsets = vec![0usize; n + 1];
        for &(a, _) in &adj {
            offsets[a as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = adj.into_iter().map(|(_, b)| b).collect();
        Ok(SourceGraph {
            offsets,
            neighbors,
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    /// Global index of the first CSR neighbor slot of `v`; slot k holds
    /// `neighbors(v)[k]`. Lets callers keep per-directed-edge side arrays.
    #[inline]
    pub fn slot_offset(&self, v: u32) -> usize {
        self.offsets[v as usize]
    }

    pub fn degree_map(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v as u32)).collect()
    }

    /// Number of common neighbors of `u` and `v` by sorted-list merge.
    pub fn common_neighbors(&self, u: u32, v: u32) -> usize {
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut c) = (0usize, 0usize, 0usize);
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

    /// Write one `label_u label_v` line per edge (u < v by internal id).
    pub fn export_edge_list(&self, path: &Path) -> Result<(), GraphError> {
        let mut w = BufWriter::new(File::create(path)?);
        for u in 0..self.n() as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    writeln!(w, "{} {}", self.label(u), self.label(v))?;
                }
            }
        }
        Ok(())
    }
}

/// Load a whitespace-separated edge list. Lines starting with `#` (or `%`)
/// are comments; each data line carries two vertex tokens.
pub fn load_edge_list(path: &Path, opts: LoadOptions) -> Result<SourceGraph, GraphError> {
    let reader = BufReader::new(File::open(path)?);
    let mut edges: Vec<(String, String)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let mut it = t.split_whitespace();
        let a = it.next();
        let b = it.next();
        match (a, b, it.next()) {
            (Some(a), Some(b), None) => edges.push((a.to_string(), b.to_string())),
            _ => {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    msg: format!("expected two vertex tokens, got {t:?}"),
                })
            }
        }
    }
    SourceGraph::from_labeled_edges(&edges, opts)
}

/// Load a Matrix Market coordinate file as an unweighted undirected graph.
/// Pattern/real/integer fields accepted; entries are treated as edges,
/// directed input symmetrized, diagonal entries dropped.
pub fn load_matrix_market(path: &Path) -> Result<SourceGraph, GraphError> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let h: Vec<&str> = header.trim().split_whitespace().collect();
    if h.len() < 5 || !h[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(GraphError::MatrixMarket("missing %%MatrixMarket header".into()));
    }
    if !h[1].eq_ignore_ascii_case("matrix") || !h[2].eq_ignore_ascii_case("coordinate") {
        return Err(GraphError::MatrixMarket(format!(
            "unsupported object/format {} {}",
            h[1], h[2]
        )));
    }
    let field = h[3].to_ascii_lowercase();
    if !matches!(field.as_str(), "pattern" | "real" | "integer") {
        return Err(GraphError::MatrixMarket(format!("unsupported field {field}")));
    }
    let symmetry = h[4].to_ascii_lowercase();
    if !matches!(symmetry.as_str(), "general" | "symmetric" | "skew-symmetric") {
        return Err(GraphError::MatrixMarket(format!(
            "unsupported symmetry {symmetry}"
        )));
    }

    let mut lineno = 1usize;
    let mut dims: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for line in reader.lines() {
        lineno += 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        if dims.is_none() {
            if toks.len() != 3 {
                return Err(GraphError::MatrixMarket(format!(
                    "bad size line at {lineno}: {t:?}"
                )));
            }
            let r: usize = toks[0].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: "bad row count".into(),
            })?;
            let c: usize = toks[1].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: "bad column count".into(),
            })?;
            let nz: usize = toks[2].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: "bad nnz".into(),
            })?;
            if r != c {
                return Err(GraphError::MatrixMarket(format!(
                    "adjacency matrix must be square, got {r}x{c}"
                )));
            }
            dims = Some((r, c, nz));
            edges.reserve(nz);
            continue;
        }
        let want = if field == "pattern" { 2 } else { 3 };
        if toks.len() < want {
            return Err(GraphError::Parse {
                line: lineno,
                msg: format!("expected {want} tokens, got {t:?}"),
            });
        }
        let i: usize = toks[0].parse().map_err(|_| GraphError::Parse {
            line: lineno,
            msg: "bad row index".into(),
        })?;
        let j: usize = toks[1].parse().map_err(|_| GraphError::Parse {
            line: lineno,
            msg: "bad column index".into(),
        })?;
        let (n, _, _) = dims.unwrap();
        if i < 1 || i > n || j < 1 || j > n {
            return Err(GraphError::MatrixMarket(format!(
                "entry ({i},{j}) out of declared bounds {n}x{n} at line {lineno}"
            )));
        }
        edges.push(((i - 1) as u32, (j - 1) as u32));
    }
    let (n, _, _) = dims.ok_or_else(|| GraphError::MatrixMarket("missing size line".into()))?;
    let labels = (1..=n).map(|i| i.to_string()).collect();
    SourceGraph::from_id_edges(n, &edges, LoadOptions::default(), labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn triangle_edge_list() {
        let f = write_tmp("0 1\n1 2\n2 0\n");
        let g = load_edge_list(f.path(), LoadOptions::default()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.degree_map(), vec![2, 2, 2]);
    }

    #[test]
    fn dedup_symmetrize_loop_drop() {
        let f = write_tmp("a b\nb a\na a\n");
        let g = load_edge_list(f.path(), LoadOptions::default()).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn strict_mode_rejects_loop() {
        let f = write_tmp("a a\n");
        assert!(load_edge_list(f.path(), LoadOptions { strict: true }).is_err());
    }

    #[test]
    fn parse_error_reports_line() {
        let f = write_tmp("0 1\nbogus\n");
        match load_edge_list(f.path(), LoadOptions::default()) {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_graph_ok() {
        let f = write_tmp("# nothing here\n");
        let g = load_edge_list(f.path(), LoadOptions::default()).unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn matrix_market_triangle() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 3\n2 1\n3 2\n3 1\n");
        let g = load_matrix_market(f.path()).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
    }

    #[test]
    fn matrix_market_diag_dropped() {
        let f = write_tmp("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 3.5\n");
        let g = load_matrix_market(f.path()).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn matrix_market_out_of_bounds() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n");
        assert!(load_matrix_market(f.path()).is_err());
    }

    #[test]
    fn labels_preserved_and_sorted_numeric() {
        let f = write_tmp("10 2\n2 5\n");
        let g = load_edge_list(f.path(), LoadOptions::default()).unwrap();
        assert_eq!(g.label(0), "2");
        assert_eq!(g.label(1), "5");
        assert_eq!(g.label(2), "10");
    }
}
