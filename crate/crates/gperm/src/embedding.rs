//! Rotation systems, face tracing and planar duals.
//!
//! An embedding is given combinatorially: a cyclic order of incident edge
//! ids around every vertex.  Faces are traced with darts (directed edge
//! sides); the embedding is spherical exactly when V - E + F = 2, which is
//! the only planarity test used here.

use crate::error::{Error, Result};
use crate::graphs::Multigraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cyclic edge order around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rot: Vec<Vec<usize>>) -> Self {
        RotationSystem { rot }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    /// Parse lines of the form `v: e1 e2 e3`.  Every vertex from 0 to
    /// n-1 must appear exactly once; an isolated vertex is written `v:`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, tail) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "expected `vertex: edge edge ...`".into(),
            })?;
            let v: usize = head.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: "vertex id is not a number".into(),
            })?;
            let edges = tail
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("edge id {t:?} is not a number"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            entries.push((v, edges, line_no));
        }
        let n = entries.len();
        let mut rot: Vec<Option<Vec<usize>>> = vec![None; n];
        for (v, edges, line_no) in entries {
            if v >= n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("vertex {v} out of range for {n} rotation lines"),
                });
            }
            if rot[v].is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("vertex {v} listed twice"),
                });
            }
            rot[v] = Some(edges);
        }
        Ok(RotationSystem {
            rot: rot.into_iter().map(|r| r.unwrap()).collect(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, edges) in self.rot.iter().enumerate() {
            out.push_str(&format!("{v}:"));
            for e in edges {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
        }
        out
    }

    /// Check that this rotation covers exactly the incidences of `g`.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.rot.len() != g.vertex_count() {
            return Err(Error::invalid(format!(
                "rotation lists {} vertices, graph has {}",
                self.rot.len(),
                g.vertex_count()
            )));
        }
        let mut count = vec![0usize; g.edge_count()];
        for (v, edges) in self.rot.iter().enumerate() {
            for &e in edges {
                if e >= g.edge_count() {
                    return Err(Error::invalid(format!(
                        "rotation of vertex {v} mentions edge {e}, graph has {} edges",
                        g.edge_count()
                    )));
                }
                let (a, b) = g.edge(e);
                if a != v && b != v {
                    return Err(Error::invalid(format!(
                        "edge {e} in the rotation of vertex {v} is not incident to it"
                    )));
                }
                count[e] += 1;
            }
        }
        for (e, &c) in count.iter().enumerate() {
            if c != 2 {
                return Err(Error::invalid(format!(
                    "edge {e} appears {c} times across the rotation, expected 2"
                )));
            }
        }
        Ok(())
    }
}

/// A directed side of an edge; `forward` means first -> second endpoint.
pub type Dart = (usize, bool);

fn dart_index(d: Dart) -> usize {
    d.0 * 2 + usize::from(d.1)
}

/// Faces of the embedding as closed dart walks.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    /// Face id per dart, indexed by `2*edge + forward`.
    pub face_of_dart: Vec<usize>,
    pub walks: Vec<Vec<Dart>>,
}

impl FaceStructure {
    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of_dart[dart_index(d)]
    }
}

/// Trace all faces: after arriving along an edge, leave along its
/// successor in the arrival vertex's rotation.
pub fn trace_faces(g: &Multigraph, rot: &RotationSystem) -> Result<FaceStructure> {
    rot.validate(g)?;
    let m = g.edge_count();
    // position of edge e in the rotation of its first and second endpoint
    let mut pos = vec![(usize::MAX, usize::MAX); m];
    for v in 0..g.vertex_count() {
        for (i, &e) in rot.around(v).iter().enumerate() {
            if g.edge(e).0 == v {
                pos[e].0 = i;
            } else {
                pos[e].1 = i;
            }
        }
    }
    let mut face_of_dart = vec![usize::MAX; 2 * m];
    let mut walks = Vec::new();
    for start_edge in 0..m {
        for start_dir in [false, true] {
            let start: Dart = (start_edge, start_dir);
            if face_of_dart[dart_index(start)] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of_dart[dart_index(d)] = id;
                walk.push(d);
                let (e, dir) = d;
                let head = if dir { g.edge(e).1 } else { g.edge(e).0 };
                let p = if head == g.edge(e).0 {
                    pos[e].0
                } else {
                    pos[e].1
                };
                let ring = rot.around(head);
                let next_edge = ring[(p + 1) % ring.len()];
                let next_dir = g.edge(next_edge).0 == head;
                d = (next_edge, next_dir);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    Ok(FaceStructure {
        face_of_dart,
        walks,
    })
}

/// The planar dual: one vertex per face, edge i crossing primal edge i.
///
/// Errors with `NotSpherical` when V - E + F != 2 and with `DualLoop`
/// when some primal edge is a bridge (both sides on one face).
pub fn planar_dual(g: &Multigraph, rot: &RotationSystem) -> Result<Multigraph> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let faces = trace_faces(g, rot)?;
    let euler = g.vertex_count() as i64 - g.edge_count() as i64 + faces.face_count() as i64;
    if euler != 2 {
        return Err(Error::NotSpherical { euler });
    }
    let mut dual_edges = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let left = faces.face_of((e, true));
        let right = faces.face_of((e, false));
        if left == right {
            return Err(Error::DualLoop { edge: e });
        }
        dual_edges.push((left, right));
    }
    Multigraph::new(faces.face_count(), dual_edges)
}

/// Random connected spherical multigraph with edge count exactly twice
/// (vertex count - 1): grow a digon by repeatedly placing a new degree-2
/// vertex inside a face, joined to two corners of that face.
pub fn sample_balanced_planar(insertions: usize, seed: u64) -> (Multigraph, RotationSystem) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 1)];
    let mut rot: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 1]];
    for _ in 0..insertions {
        let g = Multigraph::new(rot.len(), edges.clone()).expect("sampler invariant");
        let rs = RotationSystem::new(rot.clone());
        let faces = trace_faces(&g, &rs).expect("sampler keeps rotations valid");
        let face = rng.random_range(0..faces.face_count());
        let walk = &faces.walks[face];
        // corner i sits at the arrival vertex of walk[i], between the
        // arrival edge and its successor in that vertex's rotation
        let mut a = rng.random_range(0..walk.len());
        let mut b = rng.random_range(0..walk.len());
        while b == a {
            b = rng.random_range(0..walk.len());
        }
        if corner_position(&g, &rot, walk[b]) > corner_position(&g, &rot, walk[a]) {
            std::mem::swap(&mut a, &mut b);
        }
        let w = rot.len();
        let e_new = edges.len();
        // insert later rotation position first so the earlier index stays valid
        for (dart, new_edge) in [(walk[a], e_new), (walk[b], e_new + 1)] {
            let (e, dir) = dart;
            let x = if dir { g.edge(e).1 } else { g.edge(e).0 };
            let p = corner_position(&g, &rot, dart);
            rot[x].insert(p + 1, new_edge);
            edges.push((x, w));
        }
        rot.push(vec![e_new, e_new + 1]);
    }
    let g = Multigraph::new(rot.len(), edges).expect("sampler invariant");
    (g, RotationSystem::new(rot))
}

fn corner_position(g: &Multigraph, rot: &[Vec<usize>], d: Dart) -> usize {
    let (e, dir) = d;
    let x = if dir { g.edge(e).1 } else { g.edge(e).0 };
    // parallel edges have distinct ids, so e occurs once around x
    rot[x]
        .iter()
        .position(|&f| f == e)
        .expect("incidence present")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_edgelist;

    fn k4() -> Multigraph {
        parse_edgelist("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap()
    }

    fn k4_rotation() -> RotationSystem {
        // vertex 0 in the middle of triangle 1,2,3
        RotationSystem::parse("0: 0 1 2\n1: 3 0 4\n2: 5 1 3\n3: 4 2 5\n").unwrap()
    }

    #[test]
    fn parses_and_validates_rotations() {
        let g = k4();
        let rs = k4_rotation();
        rs.validate(&g).unwrap();
        assert_eq!(rs.to_text(), "0: 0 1 2\n1: 3 0 4\n2: 5 1 3\n3: 4 2 5\n");
        // wrong multiplicity
        let bad = RotationSystem::parse("0: 0 1 2\n1: 3 0 4\n2: 5 1 3\n3: 4 2 2\n").unwrap();
        assert!(bad.validate(&g).is_err());
        // non-incident edge
        let bad = RotationSystem::parse("0: 0 1 5\n1: 3 0 4\n2: 5 1 3\n3: 4 2 2\n").unwrap();
        assert!(bad.validate(&g).is_err());
        assert!(RotationSystem::parse("0 0 1 2\n").is_err());
        assert!(RotationSystem::parse("0: 0\n0: 1\n").is_err());
    }

    #[test]
    fn tetrahedron_is_self_dual() {
        let g = k4();
        let faces = trace_faces(&g, &k4_rotation()).unwrap();
        assert_eq!(faces.face_count(), 4);
        for walk in &faces.walks {
            assert_eq!(walk.len(), 3, "tetrahedron faces are triangles");
        }
        let dual = planar_dual(&g, &k4_rotation()).unwrap();
        assert_eq!(dual.vertex_count(), 4);
        assert_eq!(dual.edge_count(), 6);
        assert!(dual.is_simple());
        assert_eq!(dual.regular_degree(), Some(3));
    }

    #[test]
    fn bridge_gives_a_dual_loop() {
        let g = parse_edgelist("2 1\n0 1\n").unwrap();
        let rs = RotationSystem::parse("0: 0\n1: 0\n").unwrap();
        assert!(matches!(
            planar_dual(&g, &rs),
            Err(Error::DualLoop { edge: 0 })
        ));
    }

    #[test]
    fn non_spherical_rotation_is_rejected() {
        let g = k4();
        // mirror one vertex's rotation: this embeds K4 on the torus
        let rs = RotationSystem::parse("0: 0 1 2\n1: 0 3 4\n2: 5 1 3\n3: 4 2 5\n").unwrap();
        match planar_dual(&g, &rs) {
            Err(Error::NotSpherical { euler }) => assert_ne!(euler, 2),
            other => panic!("expected NotSpherical, got {other:?}"),
        }
    }

    #[test]
    fn digon_dual_is_a_digon() {
        let g = parse_edgelist("2 2\n0 1\n0 1\n").unwrap();
        let rs = RotationSystem::parse("0: 0 1\n1: 0 1\n").unwrap();
        let dual = planar_dual(&g, &rs).unwrap();
        assert_eq!(dual.vertex_count(), 2);
        assert_eq!(dual.edge_count(), 2);
        assert_eq!(dual.multiplicity(0, 1), 2);
    }

    #[test]
    fn sampler_outputs_balanced_spherical_graphs() {
        for seed in 0..6 {
            let (g, rs) = sample_balanced_planar(9, seed);
            assert_eq!(g.vertex_count(), 11);
            assert_eq!(g.edge_count(), 2 * (g.vertex_count() - 1));
            assert!(g.is_connected());
            let dual = planar_dual(&g, &rs).expect("sampled embedding is spherical");
            assert_eq!(dual.edge_count(), g.edge_count());
            assert!(dual.is_connected());
        }
    }
}
