//! Loop-free multigraphs with a stable edge order.
//!
//! Edges are an ordered list of (first, second) endpoint pairs; parallel
//! edges are distinct entries.  Every derived matrix and orientation is
//! indexed by position in this list, so operations that build new graphs
//! document how they map edge order.

use crate::error::{Error, Result};
use crate::permanent::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u,
                    vertex_count,
                });
            }
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
            if u == v {
                return Err(Error::SelfLoop { edge: i, vertex: u });
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => None,
            Some(&first) if d.iter().all(|&x| x == first) => Some(first),
            _ => None,
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count()
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect()
    }

    /// Component label per vertex, numbered in order of first discovery.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut id = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for start in 0..self.vertex_count {
            if id[start] != usize::MAX {
                continue;
            }
            let mut queue = vec![start];
            id[start] = next;
            while let Some(x) = queue.pop() {
                for &y in &adj[x] {
                    if id[y] == usize::MAX {
                        id[y] = next;
                        queue.push(y);
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.component_ids().iter().all(|&c| c == 0)
    }

    /// Graph with vertex `v` removed; vertices above `v` shift down by
    /// one and surviving edges keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Multigraph> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let map = |x: usize| if x > v { x - 1 } else { x };
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (map(a), map(b)))
            .collect();
        let mut g = Multigraph::new(self.vertex_count - 1, edges)?;
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.remove(v);
            g.labels = Some(l);
        }
        Ok(g)
    }

    /// Graph with vertex i renamed to perm[i]; edge order unchanged.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.vertex_count {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            if p >= self.vertex_count || seen[p] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Multigraph::new(self.vertex_count, edges)
    }
}

/// Per-edge directions over a host graph; `true` points the edge from
/// its first endpoint to its second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(forward: Vec<bool>) -> Self {
        Orientation { forward }
    }

    /// The default orientation: every edge first -> second.
    pub fn forward_all(edge_count: usize) -> Self {
        Orientation {
            forward: vec![true; edge_count],
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_forward(&self, e: usize) -> bool {
        self.forward[e]
    }

    pub fn directions(&self) -> &[bool] {
        &self.forward
    }

    pub fn flipped(&self, e: usize) -> Orientation {
        let mut f = self.forward.clone();
        f[e] = !f[e];
        Orientation { forward: f }
    }

    pub fn tail(&self, g: &Multigraph, e: usize) -> usize {
        let (u, v) = g.edge(e);
        if self.forward[e] {
            u
        } else {
            v
        }
    }

    pub fn head(&self, g: &Multigraph, e: usize) -> usize {
        let (u, v) = g.edge(e);
        if self.forward[e] {
            v
        } else {
            u
        }
    }

    fn check(&self, g: &Multigraph) -> Result<()> {
        if self.forward.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "orientation covers {} edges, graph has {}",
                self.forward.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

/// Orientation along an Eulerian circuit (Hierholzer's algorithm).
///
/// Every vertex ends up with equal in- and out-degree, which is what the
/// stacked-incidence constructions downstream assume of a reference
/// orientation.
pub fn eulerian_reference(g: &Multigraph) -> Result<Orientation> {
    for (v, d) in g.degrees().into_iter().enumerate() {
        if d % 2 != 0 {
            return Err(Error::OddDegree {
                vertex: v,
                degree: d,
            });
        }
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let m = g.edge_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let mut ptr = vec![0usize; g.vertex_count()];
    let mut used = vec![false; m];
    let mut forward = vec![true; m];
    if m > 0 {
        let start = g.edge(0).0;
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            if ptr[v] < adj[v].len() {
                let (e, w) = adj[v][ptr[v]];
                ptr[v] += 1;
                if !used[e] {
                    used[e] = true;
                    forward[e] = g.edge(e).0 == v;
                    stack.push(w);
                }
            } else {
                stack.pop();
            }
        }
    }
    Ok(Orientation { forward })
}

/// Signed incidence matrix: rows are vertices, columns are edges, +1 at
/// the tail and -1 at the head of each edge.
pub fn incidence_matrix(g: &Multigraph, o: &Orientation) -> Result<IntMatrix> {
    o.check(g)?;
    let mut m = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for e in 0..g.edge_count() {
        m.set(o.tail(g, e), e, 1);
        m.set(o.head(g, e), e, -1);
    }
    Ok(m)
}

/// One vertex deletion from an even-regular graph.
#[derive(Debug, Clone)]
pub struct Decompletion {
    pub removed_vertex: usize,
    pub graph: Multigraph,
    pub connected: bool,
}

/// All single-vertex deletions of a 2k-regular graph.
pub fn decompletions(g: &Multigraph) -> Result<Vec<Decompletion>> {
    match g.regular_degree() {
        Some(d) if d % 2 == 0 && d > 0 => {}
        other => {
            return Err(Error::NotRegular {
                msg: match other {
                    Some(d) => format!("regular of degree {d}, need even degree >= 2"),
                    None => "degrees are not all equal".into(),
                },
            })
        }
    }
    (0..g.vertex_count())
        .map(|v| {
            let graph = g.delete_vertex(v)?;
            let connected = graph.is_connected();
            Ok(Decompletion {
                removed_vertex: v,
                graph,
                connected,
            })
        })
        .collect()
}

/// Reattach the chosen side's edges at a 4-vertex cut, swapping the
/// first two cut vertices with each other and the last two with each
/// other.  Edge slots are reused, so the twisted graph's edge order
/// matches the input's.
///
/// Requires the paired cut vertices to have equal edge multiplicity into
/// the chosen side; that is exactly the condition under which the twist
/// preserves 2k-regularity.
pub fn apply_cut_twist(g: &Multigraph, cut: [usize; 4], side: &[usize]) -> Result<Multigraph> {
    let n = g.vertex_count();
    for &v in cut.iter().chain(side.iter()) {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
    }
    let mut role = vec![0u8; n]; // 0 = far side, 1 = cut, 2 = chosen side
    for &v in &cut {
        if role[v] != 0 {
            return Err(Error::invalid("cut vertices must be distinct"));
        }
        role[v] = 1;
    }
    for &v in side {
        if role[v] == 1 {
            return Err(Error::invalid(format!("vertex {v} is both cut and side")));
        }
        if role[v] == 2 {
            return Err(Error::invalid(format!("vertex {v} listed twice in side")));
        }
        role[v] = 2;
    }
    if g.regular_degree().is_none_or(|d| d % 2 != 0) {
        return Err(Error::NotRegular {
            msg: "twist needs a 2k-regular graph".into(),
        });
    }
    for &(u, v) in g.edges() {
        if (role[u], role[v]) == (0, 2) || (role[u], role[v]) == (2, 0) {
            return Err(Error::NotACut {
                msg: format!("edge {u}-{v} joins the chosen side to the far side"),
            });
        }
    }
    let side_mult = |c: usize| {
        g.edges()
            .iter()
            .filter(|&&(u, v)| (u == c && role[v] == 2) || (v == c && role[u] == 2))
            .count()
    };
    for pair in [(cut[0], cut[1]), (cut[2], cut[3])] {
        let (a, b) = (side_mult(pair.0), side_mult(pair.1));
        if a != b {
            return Err(Error::invalid(format!(
                "twist pair {}/{} has unequal multiplicity into the side ({a} vs {b})",
                pair.0, pair.1
            )));
        }
    }
    let swap = |v: usize| -> usize {
        if v == cut[0] {
            cut[1]
        } else if v == cut[1] {
            cut[0]
        } else if v == cut[2] {
            cut[3]
        } else if v == cut[3] {
            cut[2]
        } else {
            v
        }
    };
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if role[u] == 1 && role[v] == 2 {
                (swap(u), v)
            } else if role[v] == 1 && role[u] == 2 {
                (u, swap(v))
            } else {
                (u, v)
            }
        })
        .collect();
    Multigraph::new(n, edges)
}
