//! The graph permanent invariant.
//!
//! For a connected graph with m = k(n-1) edges, delete one "special"
//! vertex's row from the signed incidence matrix, stack the remaining
//! block k times, and take the permanent of the resulting square matrix
//! modulo k+1.  Changing the special vertex or any edge direction only
//! flips the sign, so the residue folded by r -> min(r, k+1-r) is an
//! invariant of the graph itself.

use crate::error::{Error, Result};
use crate::graphs::{incidence_matrix, Multigraph, Orientation};
use crate::permanent::{block_reduce, permanent_mod, IntMatrix, MAX_SIDE};

/// A k-fold duplicated signed incidence matrix with one vertex removed.
#[derive(Debug, Clone)]
pub struct KdsiMatrix {
    /// The full stacked matrix, k * (n-1) rows by m columns.
    pub matrix: IntMatrix,
    pub k: usize,
    pub special_vertex: usize,
    /// Rows per block: vertex count minus one.
    pub block_rows: usize,
}

impl KdsiMatrix {
    /// The first (and only distinct) row block.
    pub fn block(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.block_rows).collect();
        let cols: Vec<usize> = (0..self.matrix.cols()).collect();
        self.matrix.submatrix(&rows, &cols)
    }

    pub fn modulus(&self) -> u64 {
        self.k as u64 + 1
    }
}

pub fn build_kdsi(g: &Multigraph, o: &Orientation, special: usize, k: usize) -> Result<KdsiMatrix> {
    let n = g.vertex_count();
    if special >= n {
        return Err(Error::VertexOutOfRange {
            vertex: special,
            vertex_count: n,
        });
    }
    if k == 0 {
        return Err(Error::invalid("duplication count k must be at least 1"));
    }
    let full = incidence_matrix(g, o)?;
    let rows: Vec<usize> = (0..n).filter(|&v| v != special).collect();
    let cols: Vec<usize> = (0..g.edge_count()).collect();
    let block = full.submatrix(&rows, &cols);
    Ok(KdsiMatrix {
        matrix: block.stacked(k),
        k,
        special_vertex: special,
        block_rows: n - 1,
    })
}

/// The duplication count a balanced graph must have: edges per spanning
/// tree edge.
pub fn detect_duplication(g: &Multigraph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::invalid("graph permanent needs at least 2 vertices"));
    }
    let m = g.edge_count();
    if m == 0 || !m.is_multiple_of(n - 1) {
        return Err(Error::Unbalanced {
            edges: m,
            vertices_minus_one: n - 1,
        });
    }
    Ok(m / (n - 1))
}

/// Fold a residue into its sign-independent representative.
pub fn canonical_residue(raw: u64, modulus: u64) -> u64 {
    raw.min((modulus - raw) % modulus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GraphPermanent {
    pub k: usize,
    pub modulus: u64,
    /// Residue with the conventions actually used (special vertex,
    /// orientation); flips to modulus - raw under convention changes.
    pub raw_residue: u64,
    /// min(raw, modulus - raw): the invariant.
    pub canonical_residue: u64,
}

/// Graph permanent with the default conventions: special vertex 0 and
/// every edge oriented first -> second endpoint.
pub fn graph_permanent(g: &Multigraph) -> Result<GraphPermanent> {
    graph_permanent_with(g, &Orientation::forward_all(g.edge_count()), 0)
}

/// Graph permanent with explicit conventions, via block reduction: the
/// permanent of the k-stack is sign * k^(n-1) * permanent of the reduced
/// block stacked k-1 times, which shrinks the Ryser side from k(n-1) to
/// (k-1)(n-1).
pub fn graph_permanent_with(
    g: &Multigraph,
    o: &Orientation,
    special: usize,
) -> Result<GraphPermanent> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = detect_duplication(g)?;
    let kdsi = build_kdsi(g, o, special, k)?;
    let reduced = block_reduce(&kdsi)?;
    let raw = reduced.permanent_mod()?;
    let modulus = kdsi.modulus();
    Ok(GraphPermanent {
        k,
        modulus,
        raw_residue: raw,
        canonical_residue: canonical_residue(raw, modulus),
    })
}

/// Same result as [`graph_permanent_with`] but straight from the full
/// stacked matrix, without block reduction.  Exponentially slower; kept
/// as a cross-check.
pub fn graph_permanent_unreduced(
    g: &Multigraph,
    o: &Orientation,
    special: usize,
) -> Result<GraphPermanent> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = detect_duplication(g)?;
    let kdsi = build_kdsi(g, o, special, k)?;
    let modulus = kdsi.modulus();
    let raw = permanent_mod(&kdsi.matrix, modulus)?;
    Ok(GraphPermanent {
        k,
        modulus,
        raw_residue: raw,
        canonical_residue: canonical_residue(raw, modulus),
    })
}

/// Exact permanent of the k-stacked matrix by direct combinatorics.
///
/// Expanding the permanent by columns, each edge picks one non-special
/// endpoint, every non-special vertex must be picked exactly k times,
/// and the k row copies of a vertex can be matched to its k edges in k!
/// orders.  So the permanent equals (k!)^(n-1) times the signed count of
/// such pickings, the sign being the product of incidence entries.
/// Independent of the Ryser kernels; bounded to 16 edges.
pub fn tagging_permanent(
    g: &Multigraph,
    o: &Orientation,
    special: usize,
    k: usize,
) -> Result<i128> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if special >= n {
        return Err(Error::VertexOutOfRange {
            vertex: special,
            vertex_count: n,
        });
    }
    if m > 16 {
        return Err(Error::SearchBound {
            msg: format!("tagging expansion is bounded to 16 edges, got {m}"),
        });
    }
    if o.len() != m {
        return Err(Error::invalid("orientation length mismatch"));
    }
    if m != k * (n - 1) {
        return Err(Error::NotSquare {
            rows: k * (n - 1),
            cols: m,
        });
    }

    let mut capacity = vec![k as i64; n];
    capacity[special] = 0;

    fn rec(g: &Multigraph, o: &Orientation, e: usize, capacity: &mut [i64], sign: i128) -> i128 {
        if e == g.edge_count() {
            return sign;
        }
        let mut acc = 0i128;
        let (tail, head) = (o.tail(g, e), o.head(g, e));
        if capacity[tail] > 0 {
            capacity[tail] -= 1;
            acc += rec(g, o, e + 1, capacity, sign);
            capacity[tail] += 1;
        }
        if capacity[head] > 0 {
            capacity[head] -= 1;
            acc += rec(g, o, e + 1, capacity, sign.wrapping_neg());
            capacity[head] += 1;
        }
        acc
    }

    let signed_count = rec(g, o, 0, &mut capacity, 1);
    let mut factorial = 1i128;
    for i in 2..=k as i128 {
        factorial = factorial.checked_mul(i).ok_or(Error::Overflow)?;
    }
    let mut scale = 1i128;
    for _ in 0..n - 1 {
        scale = scale.checked_mul(factorial).ok_or(Error::Overflow)?;
    }
    scale.checked_mul(signed_count).ok_or(Error::Overflow)
}

/// Orientations split by parity of disagreement with a reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationCensus {
    pub even: u64,
    pub odd: u64,
}

impl OrientationCensus {
    pub fn signed_difference(&self) -> i128 {
        self.even as i128 - self.odd as i128
    }

    pub fn total(&self) -> u64 {
        self.even + self.odd
    }
}

/// Count orientations that turn `s` into a full source, `t` into a full
/// sink, and balance every other vertex (out-degree = in-degree), split
/// by the parity of the number of edges directed opposite to
/// `reference`.
pub fn signed_orientation_count(
    g: &Multigraph,
    reference: &Orientation,
    s: usize,
    t: usize,
) -> Result<OrientationCensus> {
    let n = g.vertex_count();
    let m = g.edge_count();
    for &v in [s, t].iter() {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
    }
    if s == t {
        return Err(Error::invalid("source and sink must differ"));
    }
    if reference.len() != m {
        return Err(Error::invalid("orientation length mismatch"));
    }
    if m > MAX_SIDE {
        return Err(Error::SearchBound {
            msg: format!("orientation census is bounded to {MAX_SIDE} edges, got {m}"),
        });
    }
    let degrees = g.degrees();
    for (v, &d) in degrees.iter().enumerate() {
        if d % 2 != 0 {
            return Err(Error::OddDegree {
                vertex: v,
                degree: d,
            });
        }
    }
    let mut target: Vec<i64> = degrees.iter().map(|&d| d as i64 / 2).collect();
    target[s] = degrees[s] as i64;
    target[t] = 0;

    // out[v] so far, slack[v] = unprocessed edges at v
    let mut out = vec![0i64; n];
    let mut slack = degrees.iter().map(|&d| d as i64).collect::<Vec<_>>();
    let mut census = OrientationCensus { even: 0, odd: 0 };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Multigraph,
        reference: &Orientation,
        e: usize,
        out: &mut [i64],
        slack: &mut [i64],
        target: &[i64],
        flips: u64,
        census: &mut OrientationCensus,
    ) {
        if e == g.edge_count() {
            if flips.is_multiple_of(2) {
                census.even += 1;
            } else {
                census.odd += 1;
            }
            return;
        }
        let (u, v) = g.edge(e);
        slack[u] -= 1;
        slack[v] -= 1;
        for (tail, flip) in [(reference.tail(g, e), 0), (reference.head(g, e), 1)] {
            out[tail] += 1;
            let feasible = out[u] <= target[u]
                && out[v] <= target[v]
                && out[u] + slack[u] >= target[u]
                && out[v] + slack[v] >= target[v];
            if feasible {
                rec(
                    g,
                    reference,
                    e + 1,
                    out,
                    slack,
                    target,
                    flips + flip,
                    census,
                );
            }
            out[tail] -= 1;
        }
        slack[u] += 1;
        slack[v] += 1;
    }

    rec(
        g,
        reference,
        0,
        &mut out,
        &mut slack,
        &target,
        0,
        &mut census,
    );
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_edgelist;
    use crate::permanent::permanent_exact;

    fn k4() -> Multigraph {
        parse_edgelist("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap()
    }

    fn forward(g: &Multigraph) -> Orientation {
        Orientation::forward_all(g.edge_count())
    }

    #[test]
    fn kdsi_of_a_digon_is_explicit() {
        let g = parse_edgelist("2 2\n0 1\n0 1\n").unwrap();
        let kdsi = build_kdsi(&g, &forward(&g), 0, 2).unwrap();
        // remaining vertex 1 is the head of both edges, stacked twice
        let want = IntMatrix::from_rows(&[vec![-1, -1], vec![-1, -1]]).unwrap();
        assert_eq!(kdsi.matrix, want);
        assert_eq!(kdsi.block_rows, 1);
        let gp = graph_permanent(&g).unwrap();
        assert_eq!(gp.k, 2);
        assert_eq!(gp.modulus, 3);
        assert_eq!(gp.raw_residue, 2); // permanent is exactly 2
        assert_eq!(gp.canonical_residue, 1);
    }

    #[test]
    fn detects_duplication_and_rejects_unbalanced() {
        assert_eq!(detect_duplication(&k4()).unwrap(), 2);
        let path = parse_edgelist("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(detect_duplication(&path).unwrap(), 1);
        let bad = parse_edgelist("4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        assert!(matches!(
            graph_permanent(&bad),
            Err(Error::Unbalanced {
                edges: 5,
                vertices_minus_one: 3
            })
        ));
        let split = parse_edgelist("4 2\n0 1\n2 3\n").unwrap();
        assert!(matches!(graph_permanent(&split), Err(Error::NotConnected)));
    }

    #[test]
    fn reduced_path_matches_full_ryser_and_tagging() {
        let doubled_triangle = parse_edgelist("3 6\n0 1\n0 1\n1 2\n1 2\n0 2\n0 2\n").unwrap(); // k = 3
        let square_diag = parse_edgelist("4 6\n0 1\n1 2\n2 3\n0 3\n0 2\n0 2\n").unwrap();
        for g in [k4(), doubled_triangle, square_diag] {
            let k = detect_duplication(&g).unwrap();
            let o = forward(&g);
            for special in 0..g.vertex_count() {
                let kdsi = build_kdsi(&g, &o, special, k).unwrap();
                let exact = permanent_exact(&kdsi.matrix).unwrap();
                let tagged = tagging_permanent(&g, &o, special, k).unwrap();
                assert_eq!(exact, tagged, "special {special}");
                let modulus = kdsi.modulus();
                let fast = graph_permanent_with(&g, &o, special).unwrap();
                let slow = graph_permanent_unreduced(&g, &o, special).unwrap();
                assert_eq!(fast, slow, "special {special}");
                assert_eq!(fast.raw_residue, exact.rem_euclid(modulus as i128) as u64);
            }
        }
    }

    #[test]
    fn conventions_only_flip_the_sign() {
        let g = k4();
        let o = forward(&g);
        let base = graph_permanent(&g).unwrap();
        for special in 1..4 {
            let gp = graph_permanent_with(&g, &o, special).unwrap();
            assert_eq!(gp.canonical_residue, base.canonical_residue);
        }
        for e in 0..g.edge_count() {
            let gp = graph_permanent_with(&g, &o.flipped(e), 0).unwrap();
            assert_eq!(gp.canonical_residue, base.canonical_residue);
            // a single flip negates the permanent mod k+1
            assert_eq!(gp.raw_residue, (3 - base.raw_residue) % 3);
        }
    }

    #[test]
    fn tree_permanent_is_odd() {
        for text in [
            "2 1\n0 1\n",
            "4 3\n0 1\n1 2\n1 3\n",
            "5 4\n0 1\n1 2\n2 3\n3 4\n",
        ] {
            let g = parse_edgelist(text).unwrap();
            let gp = graph_permanent(&g).unwrap();
            assert_eq!(gp.k, 1);
            assert_eq!(gp.modulus, 2);
            assert_eq!(gp.raw_residue, 1);
        }
    }

    #[test]
    fn orientation_census_on_cycles() {
        // a cycle has exactly one source/sink orientation: both arcs run
        // from s to t
        for n in [4usize, 6] {
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            let g = Multigraph::new(n, edges).unwrap();
            let census = signed_orientation_count(&g, &forward(&g), 0, n / 2).unwrap();
            assert_eq!(census.total(), 1);
            assert_eq!(census.signed_difference().abs(), 1);
        }
    }

    #[test]
    fn orientation_census_counts_a_digon() {
        let g = parse_edgelist("2 2\n0 1\n0 1\n").unwrap();
        let census = signed_orientation_count(&g, &forward(&g), 0, 1).unwrap();
        // both edges must leave the source: exactly one orientation, no flips
        assert_eq!(census, OrientationCensus { even: 1, odd: 0 });
        // swapping roles reverses both edges: still one orientation, even
        let census = signed_orientation_count(&g, &forward(&g), 1, 0).unwrap();
        assert_eq!(census, OrientationCensus { even: 1, odd: 0 });
    }

    #[test]
    fn orientation_census_validates_input() {
        let g = k4();
        let o = forward(&g);
        assert!(matches!(
            signed_orientation_count(&g, &o, 0, 0),
            Err(Error::InvalidArgument { .. })
        ));
        assert!(matches!(
            signed_orientation_count(&g, &o, 0, 1),
            Err(Error::OddDegree { .. })
        ));
        let big = Multigraph::new(26, (0..25).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let o_big = Orientation::forward_all(25);
        assert!(matches!(
            signed_orientation_count(&big, &o_big, 0, 1),
            Err(Error::SearchBound { .. })
        ));
    }

    #[test]
    fn tagging_respects_its_bounds() {
        let g = k4();
        assert!(matches!(
            tagging_permanent(&g, &forward(&g), 0, 3),
            Err(Error::NotSquare { .. })
        ));
    }
}
