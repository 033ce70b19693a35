//! Undirected simple graphs used as cascade substrates.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. Graphs are immutable once built
/// and can be shared freely between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::param(format!("duplicate edge ({u}, {})", w[0])));
            }
            edge_count += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    /// Builds a graph from edges already known to be simple and in range.
    fn from_simple_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut adjacency: Vec<Vec<usize>> =
            degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            adjacency,
            edge_count: edges.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "vertex {v} out of range for graph with {} vertices",
                self.vertex_count()
            )))
        }
    }

    /// Number of neighbors of `v` that belong to `w`.
    pub fn degree_into(&self, v: usize, w: &BTreeSet<usize>) -> Result<usize> {
        self.check_vertex(v)?;
        for &x in w {
            self.check_vertex(x)?;
        }
        Ok(self.adjacency[v].iter().filter(|u| w.contains(u)).count())
    }

    /// Union of the neighbor lists of `s`. May intersect `s`.
    pub fn neighborhood(&self, s: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &v in s {
            self.check_vertex(v)?;
            out.extend(self.adjacency[v].iter().copied());
        }
        Ok(out)
    }

    /// Erdős–Rényi `G(n, p)`: every unordered pair independently with probability `p`.
    pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("graph needs at least one vertex"));
        }
        check_probability("p", p)?;
        let mut rng = rng::seeded(seed);
        let mut edges = Vec::new();
        let pairs = (n as u64) * (n as u64 - 1) / 2;
        let mut row = 1usize;
        let mut row_start = 0u64;
        for_each_success(pairs, p, &mut rng, |k| {
            while k >= row_start + row as u64 {
                row_start += row as u64;
                row += 1;
            }
            edges.push(((k - row_start) as usize, row));
        });
        Ok(Self::from_simple_edges(n, edges))
    }

    /// Stochastic block model with consecutive blocks of the given sizes.
    pub fn generate_sbm(
        block_sizes: &[usize],
        p_intra: f64,
        p_inter: f64,
        seed: u64,
    ) -> Result<Self> {
        if block_sizes.is_empty() {
            return Err(Error::param("stochastic block model needs at least one block"));
        }
        if block_sizes.contains(&0) {
            return Err(Error::param("block sizes must be positive"));
        }
        check_probability("p_intra", p_intra)?;
        check_probability("p_inter", p_inter)?;

        let offsets: Vec<usize> = block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect();
        let n: usize = block_sizes.iter().sum();
        let mut rng = rng::seeded(seed);
        let mut edges = Vec::new();

        for (b, (&size, &offset)) in block_sizes.iter().zip(&offsets).enumerate() {
            let pairs = (size as u64) * (size as u64 - 1) / 2;
            let mut row = 1usize;
            let mut row_start = 0u64;
            for_each_success(pairs, p_intra, &mut rng, |k| {
                while k >= row_start + row as u64 {
                    row_start += row as u64;
                    row += 1;
                }
                edges.push((offset + (k - row_start) as usize, offset + row));
            });
            for (&other_size, &other_offset) in block_sizes.iter().zip(&offsets).skip(b + 1) {
                let cells = (size as u64) * (other_size as u64);
                for_each_success(cells, p_inter, &mut rng, |k| {
                    let u = offset + (k / other_size as u64) as usize;
                    let v = other_offset + (k % other_size as u64) as usize;
                    edges.push((u, v));
                });
            }
        }
        Ok(Self::from_simple_edges(n, edges))
    }

    /// Writes the plain-text edge list format: `n <count>` then one `u v` per line.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_edge_list()).map_err(|e| Error::io(path, e))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count * 12);
        let _ = writeln!(out, "n {}", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text, path)
    }

    /// Parses the edge list format; `origin` is only used in error messages.
    pub fn parse_edge_list(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let origin = origin.as_ref();
        let fail = |line: usize, message: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };

        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (header_line, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| fail(1, "missing `n <vertex_count>` header".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|e| fail(header_line, format!("bad vertex count: {e}")))?,
            _ => return Err(fail(header_line, "expected `n <vertex_count>`".into())),
        };
        if n == 0 {
            return Err(fail(header_line, "vertex count must be positive".into()));
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::new();
        for (line_no, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = fields.as_slice() else {
                return Err(fail(line_no, format!("expected `u v`, got `{line}`")));
            };
            let u: usize = a
                .parse()
                .map_err(|e| fail(line_no, format!("bad vertex `{a}`: {e}")))?;
            let v: usize = b
                .parse()
                .map_err(|e| fail(line_no, format!("bad vertex `{b}`: {e}")))?;
            if u >= n || v >= n {
                return Err(fail(
                    line_no,
                    format!("vertex index out of range: ({u}, {v}) with n = {n}"),
                ));
            }
            if u >= v {
                return Err(fail(line_no, format!("expected u < v, got ({u}, {v})")));
            }
            if !seen.insert((u, v)) {
                return Err(fail(line_no, format!("duplicate edge ({u}, {v})")));
            }
            edges.push((u, v));
        }
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edge_count: edges.len(),
        })
    }
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// Visits, in increasing order, the indices in `0..total` that succeed in
/// independent Bernoulli(`p`) trials, skipping geometrically between successes.
pub(crate) fn for_each_success<R: Rng>(total: u64, p: f64, rng: &mut R, mut visit: impl FnMut(u64)) {
    if p <= 0.0 || total == 0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(visit);
        return;
    }
    let log_q = (-p).ln_1p();
    let mut next: u64 = 0;
    loop {
        let u: f64 = 1.0 - rng.random::<f64>();
        let skip = (u.ln() / log_q).floor();
        if skip >= (total - next) as f64 {
            return;
        }
        next += skip as u64;
        visit(next);
        next += 1;
        if next >= total {
            return;
        }
    }
}
