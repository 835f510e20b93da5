//! Orientations with modular balance conditions and the certificates
//! that nonzero permanent residues provide for them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Multigraph, Orientation};
use crate::invariant::{canonical_residue, detect_duplication, graph_permanent};
use crate::permanent::{permanent_mod, IntMatrix, MAX_SIDE};

/// Out-degree minus in-degree at every vertex.
pub fn boundary(g: &Multigraph, o: &Orientation) -> Vec<i64> {
    let mut b = vec![0i64; g.vertex_count()];
    for e in 0..g.edge_count() {
        b[o.tail(g, e)] += 1;
        b[o.head(g, e)] -= 1;
    }
    b
}

/// First orientation (in edge order, forward tried before backward)
/// whose boundary vanishes modulo `modulus` at every vertex, or None if
/// none exists.
pub fn find_modulo_orientation(g: &Multigraph, modulus: u64) -> Result<Option<Orientation>> {
    if modulus < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    let m = g.edge_count();
    if m > MAX_SIDE {
        return Err(Error::SearchBound {
            msg: format!("orientation search is bounded to {MAX_SIDE} edges, got {m}"),
        });
    }
    let n = g.vertex_count();
    let modulus = modulus as i64;
    let mut diff = vec![0i64; n]; // out - in so far
    let mut rem: Vec<i64> = g.degrees().iter().map(|&d| d as i64).collect();
    let mut forward = vec![true; m];

    fn feasible(diff: i64, rem: i64, modulus: i64) -> bool {
        let d = diff.rem_euclid(modulus);
        d.min(modulus - d) <= rem
    }

    fn rec(
        g: &Multigraph,
        e: usize,
        diff: &mut [i64],
        rem: &mut [i64],
        forward: &mut [bool],
        modulus: i64,
    ) -> bool {
        if e == g.edge_count() {
            return diff.iter().all(|&d| d.rem_euclid(modulus) == 0);
        }
        let (u, v) = g.edge(e);
        rem[u] -= 1;
        rem[v] -= 1;
        for (tail, head, fwd) in [(u, v, true), (v, u, false)] {
            diff[tail] += 1;
            diff[head] -= 1;
            forward[e] = fwd;
            if feasible(diff[u], rem[u], modulus)
                && feasible(diff[v], rem[v], modulus)
                && rec(g, e + 1, diff, rem, forward, modulus)
            {
                return true;
            }
            diff[tail] -= 1;
            diff[head] += 1;
        }
        rem[u] += 1;
        rem[v] += 1;
        false
    }

    if rec(g, 0, &mut diff, &mut rem, &mut forward, modulus) {
        Ok(Some(Orientation::new(forward)))
    } else {
        Ok(None)
    }
}

/// First orientation in which `source` emits all its edges and every
/// other vertex has in-degree exactly `in_target`.
pub fn find_source_orientation(
    g: &Multigraph,
    source: usize,
    in_target: usize,
) -> Result<Option<Orientation>> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::VertexOutOfRange {
            vertex: source,
            vertex_count: n,
        });
    }
    let m = g.edge_count();
    if m > MAX_SIDE {
        return Err(Error::SearchBound {
            msg: format!("orientation search is bounded to {MAX_SIDE} edges, got {m}"),
        });
    }
    let mut target: Vec<i64> = vec![in_target as i64; n];
    target[source] = 0;
    let mut inn = vec![0i64; n];
    let mut rem: Vec<i64> = g.degrees().iter().map(|&d| d as i64).collect();
    let mut forward = vec![true; m];

    fn rec(
        g: &Multigraph,
        e: usize,
        inn: &mut [i64],
        rem: &mut [i64],
        target: &[i64],
        forward: &mut [bool],
    ) -> bool {
        if e == g.edge_count() {
            return true; // the pruning below keeps in-degrees on target
        }
        let (u, v) = g.edge(e);
        rem[u] -= 1;
        rem[v] -= 1;
        for (head, fwd) in [(v, true), (u, false)] {
            inn[head] += 1;
            let ok = inn[u] <= target[u]
                && inn[v] <= target[v]
                && inn[u] + rem[u] >= target[u]
                && inn[v] + rem[v] >= target[v];
            if ok && rec(g, e + 1, inn, rem, target, forward) {
                forward[e] = fwd;
                return true;
            }
            inn[head] -= 1;
        }
        rem[u] += 1;
        rem[v] += 1;
        false
    }

    if rec(g, 0, &mut inn, &mut rem, &target, &mut forward) {
        Ok(Some(Orientation::new(forward)))
    } else {
        Ok(None)
    }
}

/// A spanning balanced subgraph whose residue does not vanish, plus the
/// source orientation that the nonzero residue guarantees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationCertificate {
    pub modulus: u64,
    /// Edge ids of the certifying subgraph, ascending.
    pub subgraph_edges: Vec<usize>,
    /// Canonical residue of the subgraph's graph permanent.
    pub residue: u64,
    /// Direction per subgraph edge: true points first -> second
    /// endpoint.  Vertex 0 is a full source and every other vertex has
    /// in-degree modulus - 1.
    pub orientation: Option<Vec<bool>>,
}

/// Search spanning connected subgraphs with (modulus-1)(n-1) edges, in
/// lexicographic edge-id order, for one whose graph permanent is nonzero
/// mod `modulus`.  Returns None when exhaustion proves there is none.
pub fn alon_tarsi_certificate(
    g: &Multigraph,
    modulus: u64,
) -> Result<Option<OrientationCertificate>> {
    if modulus < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::invalid(
            "certificate search needs at least 2 vertices",
        ));
    }
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::SearchBound {
            msg: format!("certificate search is bounded to 20 edges, got {m}"),
        });
    }
    let k = (modulus - 1) as usize;
    let size = k * (n - 1);
    if size > m {
        return Ok(None);
    }

    let mut chosen: Vec<usize> = (0..size).collect();
    loop {
        let sub = Multigraph::new(n, chosen.iter().map(|&e| g.edge(e)).collect::<Vec<_>>())?;
        if sub.is_connected() {
            let gp = graph_permanent(&sub)?;
            if gp.raw_residue != 0 {
                let witness = find_source_orientation(&sub, 0, k)?.ok_or_else(|| {
                    Error::internal(
                        "nonzero residue without a source orientation contradicts \
                         the counting identity",
                    )
                })?;
                return Ok(Some(OrientationCertificate {
                    modulus,
                    subgraph_edges: chosen,
                    residue: gp.canonical_residue,
                    orientation: Some(witness.directions().to_vec()),
                }));
            }
        }
        // next lexicographic combination
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if chosen[i] != i + m - size {
                break;
            }
        }
        chosen[i] += 1;
        for j in i + 1..size {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

/// Fundamental cut matrix of a spanning tree: rows are tree edges,
/// columns the remaining edges in id order.  Entry +1 when the column
/// edge crosses the row edge's cut in the same direction, -1 opposite,
/// 0 when it does not cross.
pub fn fundamental_cut_matrix(
    g: &Multigraph,
    tree_edges: &[usize],
    o: &Orientation,
) -> Result<IntMatrix> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if tree_edges.len() != n - 1 {
        return Err(Error::NotSpanningTree {
            msg: format!("{} edges cannot span {n} vertices", tree_edges.len()),
        });
    }
    let mut in_tree = vec![false; m];
    for &e in tree_edges {
        if e >= m {
            return Err(Error::NotSpanningTree {
                msg: format!("edge id {e} out of range"),
            });
        }
        if in_tree[e] {
            return Err(Error::NotSpanningTree {
                msg: format!("edge {e} listed twice"),
            });
        }
        in_tree[e] = true;
    }
    let tree = Multigraph::new(n, tree_edges.iter().map(|&e| g.edge(e)).collect())?;
    if !tree.is_connected() {
        return Err(Error::NotSpanningTree {
            msg: "chosen edges do not form a connected spanning tree".into(),
        });
    }
    let cotree: Vec<usize> = (0..m).filter(|&e| !in_tree[e]).collect();
    let mut a = IntMatrix::zeros(tree_edges.len(), cotree.len());
    for (row, &t) in tree_edges.iter().enumerate() {
        // component of the tree minus t that contains t's tail
        let rest = Multigraph::new(
            n,
            tree_edges
                .iter()
                .filter(|&&e| e != t)
                .map(|&e| g.edge(e))
                .collect::<Vec<_>>(),
        )?;
        let comp = rest.component_ids();
        let tail_side = comp[o.tail(g, t)];
        for (col, &c) in cotree.iter().enumerate() {
            let (ct, ch) = (comp[o.tail(g, c)], comp[o.head(g, c)]);
            if ct == ch {
                continue;
            }
            a.set(row, col, if ct == tail_side { 1 } else { -1 });
        }
    }
    Ok(a)
}

/// Canonical residue computed through a spanning tree's cut matrix:
/// stacking it k-1 times reproduces the graph permanent up to sign.
pub fn residue_from_tree(g: &Multigraph, tree_edges: &[usize]) -> Result<u64> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = detect_duplication(g)?;
    let o = Orientation::forward_all(g.edge_count());
    let a = fundamental_cut_matrix(g, tree_edges, &o)?;
    let modulus = k as u64 + 1;
    let inner = permanent_mod(&a.stacked(k - 1), modulus)?;
    let mut scalar = 1u64;
    for _ in 0..g.vertex_count() - 1 {
        scalar = scalar * (k as u64 % modulus) % modulus;
    }
    Ok(canonical_residue(scalar * inner % modulus, modulus))
}
