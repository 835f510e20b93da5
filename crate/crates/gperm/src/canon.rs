//! Canonical labelings of simple graphs up to 32 vertices.
//!
//! The canonical order maximizes the adjacency code read column by
//! column: vertex i's column is its adjacency bits to vertices 0..i-1,
//! most significant bit first.  A depth-first search places one vertex
//! at a time, branching only on candidates whose column ties the
//! maximum, and skipping candidates that are twins of one already tried
//! (same adjacency to everything else still unplaced), since those reach
//! identical codes.

use crate::error::{Error, Result};
use crate::graphs::Multigraph;
use crate::io::encode_graph6;

struct Search<'a> {
    adj: &'a [u32],
    n: usize,
    order: Vec<usize>,
    placed: u32,
    cols: Vec<u32>,
    best_cols: Option<Vec<u32>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn column_value(&self, v: usize) -> u32 {
        let mut value = 0u32;
        for &p in &self.order {
            value = (value << 1) | ((self.adj[v] >> p) & 1);
        }
        value
    }

    fn dfs(&mut self) {
        if self.order.len() == self.n {
            if self.best_cols.as_ref().is_none_or(|b| self.cols > *b) {
                self.best_cols = Some(self.cols.clone());
                self.best_order = self.order.clone();
            }
            return;
        }
        let mut tied: Vec<usize> = Vec::new();
        let mut best = 0u32;
        for v in 0..self.n {
            if self.placed >> v & 1 == 1 {
                continue;
            }
            let value = self.column_value(v);
            if tied.is_empty() || value > best {
                best = value;
                tied.clear();
                tied.push(v);
            } else if value == best {
                tied.push(v);
            }
        }
        let mut tried: Vec<usize> = Vec::new();
        for &v in &tied {
            let twin_of_tried = tried.iter().any(|&u| {
                let rest = !self.placed & !(1u32 << u) & !(1u32 << v) & mask(self.n);
                self.adj[u] & rest == self.adj[v] & rest
            });
            if twin_of_tried {
                continue;
            }
            tried.push(v);
            self.order.push(v);
            self.placed |= 1 << v;
            self.cols.push(best);
            self.dfs();
            self.cols.pop();
            self.placed &= !(1 << v);
            self.order.pop();
        }
    }
}

fn mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// The canonical relabeling: position of each original vertex in the
/// canonical order.
pub fn canonical_relabeling(g: &Multigraph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > 32 {
        return Err(Error::invalid(format!(
            "canonical labeling supports at most 32 vertices, got {n}"
        )));
    }
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut search = Search {
        adj: &adj,
        n,
        order: Vec::with_capacity(n),
        placed: 0,
        cols: Vec::with_capacity(n),
        best_cols: None,
        best_order: (0..n).collect(),
    };
    search.dfs();
    let mut perm = vec![0usize; n];
    for (position, &old) in search.best_order.iter().enumerate() {
        perm[old] = position;
    }
    Ok(perm)
}

/// graph6 string of the canonically relabeled graph; equal strings mean
/// isomorphic graphs.
pub fn canonical_form(g: &Multigraph) -> Result<String> {
    let perm = canonical_relabeling(g)?;
    encode_graph6(&g.relabeled(&perm)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_edgelist;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    /// Oracle: isomorphism by brute-force permutation search.
    fn isomorphic_brute(a: &Multigraph, b: &Multigraph) -> bool {
        let n = a.vertex_count();
        if n != b.vertex_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let key = |g: &Multigraph| {
            let mut e: Vec<_> = g
                .edges()
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            e.sort();
            e
        };
        let target = key(b);
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if key(&a.relabeled(&perm).unwrap()) == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn relabeling_does_not_change_the_form() {
        let graphs = [
            graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]),
            graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            parse_edgelist("6 12\n0 1\n0 2\n0 3\n0 4\n1 2\n1 4\n1 5\n2 3\n2 5\n3 4\n3 5\n4 5\n")
                .unwrap(), // octahedron
        ];
        for g in &graphs {
            let form = canonical_form(g).unwrap();
            let n = g.vertex_count();
            for shift in 1..n {
                let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
                let relabeled = g.relabeled(&perm).unwrap();
                assert_eq!(canonical_form(&relabeled).unwrap(), form);
            }
        }
    }

    #[test]
    fn forms_agree_with_brute_force_isomorphism() {
        // all graphs here have 5 vertices and 5 edges; some pairs are
        // isomorphic, some are not
        let pool = [
            graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]), // C5
            graph(5, &[(2, 3), (0, 4), (1, 3), (0, 2), (1, 4)]), // C5 relabeled
            graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]), // triangle + tail
            graph(5, &[(0, 1), (1, 2), (2, 0), (3, 4), (3, 1)]), // triangle + tail, again
            graph(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), // C4 + chord, isolated 4
        ];
        for (i, a) in pool.iter().enumerate() {
            for b in &pool[i..] {
                let same_form = canonical_form(a).unwrap() == canonical_form(b).unwrap();
                assert_eq!(same_form, isomorphic_brute(a, b));
            }
        }
    }

    #[test]
    fn canonical_order_puts_dense_vertices_first() {
        // a star's center must land at position 0 or 1 of any lex-max
        // order; concretely K4 stays K4 under its canonical relabeling
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let form = canonical_form(&k4).unwrap();
        assert_eq!(form, encode_graph6(&k4).unwrap());
    }

    #[test]
    fn rejects_multigraphs_and_oversize_inputs() {
        let digon = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(matches!(canonical_form(&digon), Err(Error::NotSimple)));
        let big = Multigraph::new(40, vec![(0, 1)]).unwrap();
        assert!(matches!(
            canonical_form(&big),
            Err(Error::InvalidArgument { .. })
        ));
    }

    fn graph_with_relabeling() -> impl proptest::strategy::Strategy<Value = (Multigraph, Vec<usize>)>
    {
        use proptest::prelude::*;
        (2usize..=7).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (proptest::collection::vec(any::<bool>(), pairs.len()), perm).prop_map(
                move |(mask, perm)| {
                    let edges: Vec<(usize, usize)> = pairs
                        .iter()
                        .zip(&mask)
                        .filter(|&(_, &keep)| keep)
                        .map(|(&e, _)| e)
                        .collect();
                    (Multigraph::new(n, edges).unwrap(), perm)
                },
            )
        })
    }

    proptest::proptest! {
        #[test]
        fn canonical_form_ignores_labels((g, perm) in graph_with_relabeling()) {
            let relabeled = g.relabeled(&perm).unwrap();
            proptest::prop_assert_eq!(
                canonical_form(&g).unwrap(),
                canonical_form(&relabeled).unwrap()
            );
        }
    }
}
