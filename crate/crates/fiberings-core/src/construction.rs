//! Labeled bipartite graphs and the section-sum 4-manifold descriptors
//! built from them.
//!
//! A graph vertex stands for one product piece `Sigma x Sigma` and an edge
//! for a fiberwise connect-sum between two pieces along the graph of a
//! group element; only that combinatorial shadow is stored. Every numeric
//! invariant of the total space (Euler characteristic, fiber genus,
//! fibering count, monodromy on fiber homology) is a function of it.

use crate::error::{Error, GraphViolation, Result};
use crate::group::FiniteGroup;
use crate::surfaces::{ClosedSurface, FreeActionData};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Color {
    Plus,
    Minus,
}

/// An edge joins a `+` vertex to a `-` vertex and carries one group label
/// on each half-edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub plus: usize,
    pub minus: usize,
    pub label_plus: usize,
    pub label_minus: usize,
}

/// Connected bipartite multigraph with half-edge labels that are injective
/// at every vertex. Self-loops are impossible (they would violate the
/// coloring); multiple edges between the same pair are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledGraph {
    colors: Vec<Color>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(colors: Vec<Color>, edges: Vec<Edge>) -> LabeledGraph {
        LabeledGraph { colors, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.plus == v || e.minus == v)
            .count()
    }

    /// First Betti number of a connected graph.
    pub fn betti1(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count()
    }

    /// The label on the half-edge of `e` at vertex `v`.
    pub fn label_at(&self, e: &Edge, v: usize) -> usize {
        if e.plus == v {
            e.label_plus
        } else {
            debug_assert_eq!(e.minus, v);
            e.label_minus
        }
    }

    /// Edge indices incident to `v`.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].plus == v || self.edges[i].minus == v)
            .collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (x, y) in [(e.plus, e.minus), (e.minus, e.plus)] {
                    if x < n && y < n && x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every violation of the graph invariants against a labeling group,
    /// reported as data. An empty list means the graph is valid.
    pub fn validate(&self, group: &FiniteGroup) -> Vec<GraphViolation> {
        let mut out = Vec::new();
        let n = self.vertex_count();
        for (i, e) in self.edges.iter().enumerate() {
            for v in [e.plus, e.minus] {
                if v >= n {
                    out.push(GraphViolation::VertexOutOfRange { edge: i, vertex: v });
                }
            }
        }
        if !out.is_empty() {
            return out; // later checks index by vertex
        }
        for (i, e) in self.edges.iter().enumerate() {
            if self.colors[e.plus] != Color::Plus || self.colors[e.minus] != Color::Minus {
                out.push(GraphViolation::NotBipartite { edge: i });
            }
            for (v, label) in [(e.plus, e.label_plus), (e.minus, e.label_minus)] {
                if label >= group.order() {
                    out.push(GraphViolation::LabelOutOfRange {
                        edge: i,
                        vertex: v,
                        label,
                    });
                }
            }
        }
        if !self.is_connected() {
            out.push(GraphViolation::Disconnected);
        }
        for v in 0..n {
            let valence = self.valence(v);
            if valence > group.order() {
                out.push(GraphViolation::ValenceTooLarge {
                    vertex: v,
                    valence,
                    group_order: group.order(),
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for ei in self.incident(v) {
                let label = self.label_at(&self.edges[ei], v);
                if !seen.insert(label) {
                    out.push(GraphViolation::InjectivityFailure { vertex: v, label });
                }
            }
        }
        out
    }

    pub fn validate_ok(&self, group: &FiniteGroup) -> Result<()> {
        let v = self.validate(group);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::GraphInvalid(v))
        }
    }
}

/// Spanning-tree data for a connected graph: circle classes of the gluing
/// curves in the fiber and the fundamental cycles of the non-tree edges.
///
/// In the closed fiber the boundary circles of each piece sum to zero, so
/// the class of any gluing circle is an integer combination of the circles
/// of the edges outside a spanning tree. `circle_class[e]` records that
/// combination; it vanishes identically for trees.
#[derive(Clone, Debug)]
pub struct GraphCycles {
    /// b1 non-tree edge indices, in edge order.
    pub nontree: Vec<usize>,
    /// For each edge: its circle class in the basis of non-tree circles.
    pub circle_class: Vec<Vec<i64>>,
    /// For each non-tree edge: signed traversal counts of the fundamental
    /// cycle through every edge (+1 for a plus-to-minus crossing).
    pub traversals: Vec<Vec<i64>>,
}

impl GraphCycles {
    pub fn build(graph: &LabeledGraph) -> GraphCycles {
        let n = graph.vertex_count();
        let d = graph.edge_count();

        // BFS spanning tree from vertex 0, scanning edges in index order.
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut in_tree = vec![false; d];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for ei in graph.incident(v) {
                let e = &graph.edges()[ei];
                let w = if e.plus == v { e.minus } else { e.plus };
                if !seen[w] {
                    seen[w] = true;
                    in_tree[ei] = true;
                    parent_edge[w] = Some(ei);
                    order.push(w);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "graph must be connected");

        let nontree: Vec<usize> = (0..d).filter(|&e| !in_tree[e]).collect();
        let b1 = nontree.len();
        let nontree_index: std::collections::BTreeMap<usize, usize> =
            nontree.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        // Circle classes: non-tree edges are basis vectors; vertex relations
        // determine the tree edges, eliminating from the leaves inward.
        let mut circle_class: Vec<Option<Vec<i64>>> = vec![None; d];
        for &e in &nontree {
            let mut v = vec![0i64; b1];
            v[nontree_index[&e]] = 1;
            circle_class[e] = Some(v);
        }
        for &v in order.iter().skip(1).rev() {
            let pe = parent_edge[v].expect("non-root has a parent edge");
            let mut acc = vec![0i64; b1];
            for ei in graph.incident(v) {
                if ei == pe {
                    continue;
                }
                let c = circle_class[ei]
                    .as_ref()
                    .expect("children resolved before parents");
                for (a, b) in acc.iter_mut().zip(c) {
                    *a -= b;
                }
            }
            circle_class[pe] = Some(acc);
        }
        let circle_class: Vec<Vec<i64>> = circle_class
            .into_iter()
            .map(|c| c.expect("all edges resolved"))
            .collect();
        // The root relation follows from the color-signed dependency of the
        // vertex relations; check all of them anyway.
        for v in 0..n {
            let mut acc = vec![0i64; b1];
            for ei in graph.incident(v) {
                for (a, b) in acc.iter_mut().zip(&circle_class[ei]) {
                    *a += b;
                }
            }
            assert!(acc.iter().all(|&x| x == 0), "vertex relation failed at {v}");
        }

        // Fundamental cycles: the non-tree edge plus the tree path back.
        let tree_path_to_root = |mut v: usize| -> Vec<(usize, i64)> {
            // Signed traversals walking v up to the root; +1 per
            // plus-to-minus crossing.
            let mut out = Vec::new();
            while let Some(pe) = parent_edge[v] {
                let e = &graph.edges()[pe];
                let (dir, next) = if e.plus == v {
                    (1, e.minus)
                } else {
                    (-1, e.plus)
                };
                out.push((pe, dir));
                v = next;
            }
            out
        };
        let traversals: Vec<Vec<i64>> = nontree
            .iter()
            .map(|&ei| {
                let e = &graph.edges()[ei];
                let mut t = vec![0i64; d];
                t[ei] += 1; // plus -> minus through the non-tree edge
                            // then from the minus endpoint back to the plus endpoint
                            // through the tree: down to the root from e.minus, then up
                            // from the root to e.plus.
                for (pe, dir) in tree_path_to_root(e.minus) {
                    t[pe] += dir;
                }
                for (pe, dir) in tree_path_to_root(e.plus) {
                    t[pe] -= dir;
                }
                t
            })
            .collect();

        GraphCycles {
            nontree,
            circle_class,
            traversals,
        }
    }
}

/// Descriptor of the section-sum 4-manifold over a labeled graph: every
/// vertex carries a copy of `Sigma x Sigma` and every edge a fiberwise
/// connect-sum prescribed by its labels.
#[derive(Clone, Debug)]
pub struct SectionSumBundle {
    graph: LabeledGraph,
    fiber_piece: FreeActionData,
}

pub fn build_section_sum(
    graph: LabeledGraph,
    fiber_piece: FreeActionData,
) -> Result<SectionSumBundle> {
    if fiber_piece.total_genus() < 2 {
        return Err(Error::GenusTooSmall {
            genus: fiber_piece.total_genus(),
        });
    }
    graph.validate_ok(fiber_piece.group())?;
    let b = SectionSumBundle { graph, fiber_piece };
    b.euler_char_total()?; // cross-checks the two chi routes
    Ok(b)
}

impl SectionSumBundle {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn fiber_piece(&self) -> &FreeActionData {
        &self.fiber_piece
    }

    pub fn piece_surface(&self) -> ClosedSurface {
        self.fiber_piece.surface()
    }

    pub fn piece_genus(&self) -> usize {
        self.fiber_piece.total_genus()
    }

    /// Number of vertices (pieces).
    pub fn c(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of edges (connect-sums).
    pub fn d(&self) -> usize {
        self.graph.edge_count()
    }

    /// Genus of the fiber `Sigma^{#C} # Sigma_{1-C+D}`.
    pub fn fiber_genus(&self) -> usize {
        self.c() * self.piece_genus() + self.graph.betti1()
    }

    pub fn base_genus(&self) -> usize {
        self.piece_genus()
    }

    /// Euler characteristic of the total space, computed two ways: the
    /// closed formula `C chi^2 - 2 D chi` and the per-piece sum
    /// `sum_v (chi^2 - valence(v) chi)`, which must agree with
    /// multiplicativity over the fibering.
    pub fn euler_char_total(&self) -> Result<i64> {
        let chi = self.piece_surface().euler_characteristic();
        let c = self.c() as i64;
        let d = self.d() as i64;
        let closed = c * chi * chi - 2 * d * chi;
        let piece_sum: i64 = (0..self.c())
            .map(|v| chi * chi - self.graph.valence(v) as i64 * chi)
            .sum();
        let fiber_chi = 2 - 2 * self.fiber_genus() as i64;
        let multiplicative = chi * fiber_chi;
        if closed != piece_sum || closed != multiplicative {
            return Err(Error::EulerMismatch {
                lhs: closed,
                rhs: piece_sum.min(multiplicative),
            });
        }
        Ok(closed)
    }
}

/// The line graph on `n` vertices over the genus-3 surface with its free
/// involution: vertex `i` joins vertex `i+1`, and the two half-edges at an
/// inner vertex carry the two elements of Z/2.
pub fn line_graph_family(n: usize) -> Result<SectionSumBundle> {
    assert!(n >= 1);
    let colors = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                Color::Plus
            } else {
                Color::Minus
            }
        })
        .collect();
    let edges = (0..n.saturating_sub(1))
        .map(|i| {
            // The half-edge toward the right neighbor is labeled by the
            // involution; the one toward the left by the identity.
            if i % 2 == 0 {
                Edge {
                    plus: i,
                    minus: i + 1,
                    label_plus: 1,
                    label_minus: 0,
                }
            } else {
                Edge {
                    plus: i + 1,
                    minus: i,
                    label_plus: 0,
                    label_minus: 1,
                }
            }
        })
        .collect();
    let graph = LabeledGraph::new(colors, edges);
    let piece = crate::covers::cyclic_action_data(2, 2)?; // Z/2 on Sigma_3
    build_section_sum(graph, piece)
}

/// Vertex-group descriptor of the graph-of-groups decomposition: the piece
/// over a vertex fibers over the base with fiber `Sigma` minus one disk per
/// incident edge, whose fundamental group is free of rank
/// `2g + valence - 1` (not free when the valence is zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexGroupInfo {
    pub vertex: usize,
    pub base_genus: usize,
    pub punctures: usize,
    pub fiber_free_rank: Option<usize>,
}

/// Edge groups are the unit tangent bundle group of the piece surface:
/// generators `a1, ..., bg, z` with `z` central and
/// `[a1,b1]...[ag,bg] = z^{2g-2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeGroupInfo {
    pub edge: usize,
    pub generators: usize,
    pub euler_exponent: i64,
}

#[derive(Clone, Debug)]
pub struct GraphOfGroupsSkeleton {
    pub graph: LabeledGraph,
    pub vertex_groups: Vec<VertexGroupInfo>,
    pub edge_groups: Vec<EdgeGroupInfo>,
}

pub fn graph_of_groups_skeleton(b: &SectionSumBundle) -> GraphOfGroupsSkeleton {
    let g = b.piece_genus();
    let vertex_groups = (0..b.c())
        .map(|v| {
            let punctures = b.graph().valence(v);
            VertexGroupInfo {
                vertex: v,
                base_genus: g,
                punctures,
                fiber_free_rank: if punctures == 0 {
                    None
                } else {
                    Some(2 * g + punctures - 1)
                },
            }
        })
        .collect();
    let edge_groups = (0..b.d())
        .map(|e| EdgeGroupInfo {
            edge: e,
            generators: 2 * g + 1,
            euler_exponent: 2 * g as i64 - 2,
        })
        .collect();
    GraphOfGroupsSkeleton {
        graph: b.graph().clone(),
        vertex_groups,
        edge_groups,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_vertex_one_edge() -> LabeledGraph {
        LabeledGraph::new(
            vec![Color::Plus, Color::Minus],
            vec![Edge {
                plus: 0,
                minus: 1,
                label_plus: 0,
                label_minus: 0,
            }],
        )
    }

    /// Three vertices over Z/3 with a valence-3 center: a double edge to
    /// one leaf and a single edge to the other, labels distinct per vertex.
    pub(crate) fn z3_star_graph() -> LabeledGraph {
        LabeledGraph::new(
            vec![Color::Minus, Color::Plus, Color::Plus],
            vec![
                Edge {
                    plus: 1,
                    minus: 0,
                    label_plus: 0,
                    label_minus: 0,
                },
                Edge {
                    plus: 1,
                    minus: 0,
                    label_plus: 1,
                    label_minus: 1,
                },
                Edge {
                    plus: 2,
                    minus: 0,
                    label_plus: 0,
                    label_minus: 2,
                },
            ],
        )
    }

    #[test]
    fn validate_graph_examples() {
        let trivial = FiniteGroup::trivial();
        assert!(two_vertex_one_edge().validate(&trivial).is_empty());

        let z3 = FiniteGroup::cyclic(3);
        assert!(z3_star_graph().validate(&z3).is_empty());

        // Two half-edges at one vertex with the same label.
        let bad = LabeledGraph::new(
            vec![Color::Plus, Color::Minus],
            vec![
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 0,
                    label_minus: 0,
                },
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 0,
                    label_minus: 1,
                },
            ],
        );
        let violations = bad.validate(&FiniteGroup::cyclic(2));
        assert!(violations.contains(&GraphViolation::InjectivityFailure {
            vertex: 0,
            label: 0
        }));
    }

    #[test]
    fn validate_catches_color_and_connectivity() {
        let z2 = FiniteGroup::cyclic(2);
        let miscolored = LabeledGraph::new(
            vec![Color::Plus, Color::Plus],
            vec![Edge {
                plus: 0,
                minus: 1,
                label_plus: 0,
                label_minus: 0,
            }],
        );
        assert!(miscolored
            .validate(&z2)
            .contains(&GraphViolation::NotBipartite { edge: 0 }));

        let disconnected = LabeledGraph::new(vec![Color::Plus, Color::Minus], vec![]);
        assert!(disconnected
            .validate(&z2)
            .contains(&GraphViolation::Disconnected));
    }

    #[test]
    fn section_sum_chi_examples() {
        // Two pieces over Sigma_2, one connect-sum: chi = 2*4 + 2*2 = 12,
        // matching chi(Sigma_2) * chi(Sigma_4).
        let b =
            build_section_sum(two_vertex_one_edge(), FreeActionData::trivial(2).unwrap()).unwrap();
        assert_eq!((b.c(), b.d()), (2, 1));
        assert_eq!(b.euler_char_total().unwrap(), 12);
        assert_eq!(b.fiber_genus(), 4);

        // Single vertex: the product Sigma_3 x Sigma_3.
        let single = LabeledGraph::new(vec![Color::Plus], vec![]);
        let p = build_section_sum(single, FreeActionData::trivial(3).unwrap()).unwrap();
        assert_eq!(p.euler_char_total().unwrap(), 16);
        assert_eq!(p.fiber_genus(), 3);
    }

    #[test]
    fn line_graph_examples() {
        for (n, chi, fg) in [
            (1usize, 16i64, 3usize),
            (2, 40, 6),
            (4, 88, 12),
            (5, 112, 15),
        ] {
            let b = line_graph_family(n).unwrap();
            assert_eq!(b.euler_char_total().unwrap(), chi, "chi at n={n}");
            assert_eq!(b.euler_char_total().unwrap(), 24 * n as i64 - 8);
            assert_eq!(b.fiber_genus(), fg, "fiber genus at n={n}");
            assert!(b.graph().validate(b.fiber_piece().group()).is_empty());
        }
    }

    #[test]
    fn tree_fiber_genus_has_no_correction() {
        for n in 1..=5 {
            let b = line_graph_family(n).unwrap();
            assert!(b.graph().is_tree());
            assert_eq!(b.fiber_genus(), b.c() * b.piece_genus());
        }
    }

    #[test]
    fn skeleton_examples() {
        let basic =
            build_section_sum(two_vertex_one_edge(), FreeActionData::trivial(2).unwrap()).unwrap();
        let sk = graph_of_groups_skeleton(&basic);
        assert_eq!(sk.vertex_groups.len(), 2);
        for vg in &sk.vertex_groups {
            assert_eq!(vg.fiber_free_rank, Some(4));
        }
        assert_eq!(sk.edge_groups.len(), 1);
        assert_eq!(sk.edge_groups[0].generators, 5);
        assert_eq!(sk.edge_groups[0].euler_exponent, 2);

        let single = LabeledGraph::new(vec![Color::Plus], vec![]);
        let product = build_section_sum(single, FreeActionData::trivial(2).unwrap()).unwrap();
        let sk = graph_of_groups_skeleton(&product);
        assert_eq!(sk.vertex_groups[0].fiber_free_rank, None);
        assert!(sk.edge_groups.is_empty());

        // Valence-3 vertex over Sigma_4: free rank 2*4 + 3 - 1 = 10.
        let z3 = crate::covers::cyclic_action_data(3, 2).unwrap();
        let star = build_section_sum(z3_star_graph(), z3).unwrap();
        let sk = graph_of_groups_skeleton(&star);
        assert_eq!(sk.vertex_groups[0].fiber_free_rank, Some(10));
    }

    #[test]
    fn graph_cycles_tree_and_cycle() {
        let tree = GraphCycles::build(&two_vertex_one_edge());
        assert!(tree.nontree.is_empty());
        assert_eq!(tree.circle_class, vec![Vec::<i64>::new()]);

        // Two vertices, two parallel edges: one independent cycle.
        let graph = LabeledGraph::new(
            vec![Color::Plus, Color::Minus],
            vec![
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 0,
                    label_minus: 0,
                },
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 1,
                    label_minus: 1,
                },
            ],
        );
        let cy = GraphCycles::build(&graph);
        assert_eq!(cy.nontree, vec![1]);
        assert_eq!(cy.circle_class, vec![vec![-1], vec![1]]);
        // Fundamental cycle: through edge 1 forward, back through edge 0.
        assert_eq!(cy.traversals, vec![vec![-1, 1]]);
    }

    #[test]
    fn fiber_genus_invariant_under_relabeling() {
        // Relabeling vertices of the star graph must not change the genus.
        let z3 = crate::covers::cyclic_action_data(3, 2).unwrap();
        let a = build_section_sum(z3_star_graph(), z3.clone()).unwrap();
        let relabeled = LabeledGraph::new(
            vec![Color::Plus, Color::Minus, Color::Plus],
            vec![
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 0,
                    label_minus: 0,
                },
                Edge {
                    plus: 0,
                    minus: 1,
                    label_plus: 1,
                    label_minus: 1,
                },
                Edge {
                    plus: 2,
                    minus: 1,
                    label_plus: 0,
                    label_minus: 2,
                },
            ],
        );
        let b = build_section_sum(relabeled, z3).unwrap();
        assert_eq!(a.fiber_genus(), b.fiber_genus());
        assert_eq!(a.euler_char_total().unwrap(), b.euler_char_total().unwrap());
    }
}
