//! Enumeration of the distinct fiberings of both construction families and
//! machine-checkable certificates that two fiberings differ.
//!
//! A fibering of a section-sum bundle picks one of the two product
//! projections on every piece; a fibering of a covering construction either
//! projects every piece to the common cover or singles out one vertex. Two
//! fiberings with different choices are separated by exhibiting a fiber
//! class of one with nonzero image in the base homology of the other, which
//! is decided entirely in integer arithmetic.

use crate::construction::{Color, Edge, LabeledGraph, SectionSumBundle};
use crate::covers::{self, CoverHomology, CoveringMap};
use crate::error::{Error, GraphViolation, Result};
use crate::group::FiniteGroup;
use crate::surfaces::{validate_free_action, ClosedSurface, FreeActionData};

/// Guard for the fibering enumeration: `2^C` descriptors.
pub const MAX_ENUM_VERTICES: usize = 20;

/// A choice of projection, one per graph vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberingAssignment {
    choices: Vec<u8>, // entries are 1 or 2
}

impl FiberingAssignment {
    pub fn new(choices: Vec<u8>) -> FiberingAssignment {
        assert!(choices.iter().all(|&c| c == 1 || c == 2));
        FiberingAssignment { choices }
    }

    /// Canonical id: the choices read as a string over the vertex order.
    pub fn id(&self) -> String {
        self.choices.iter().map(|c| char::from(b'0' + c)).collect()
    }

    pub fn from_id(id: &str, vertices: usize) -> Result<FiberingAssignment> {
        let choices: Option<Vec<u8>> = id
            .chars()
            .map(|c| match c {
                '1' => Some(1),
                '2' => Some(2),
                _ => None,
            })
            .collect();
        match choices {
            Some(c) if c.len() == vertices => Ok(FiberingAssignment { choices: c }),
            _ => Err(Error::UnknownFibering(id.to_string())),
        }
    }

    pub fn choice(&self, v: usize) -> u8 {
        self.choices[v]
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// All assignments on `vertices` vertices in lexicographic id order.
    pub fn all(vertices: usize) -> impl Iterator<Item = FiberingAssignment> {
        (0..(1usize << vertices)).map(move |mask| {
            let choices = (0..vertices)
                .map(|v| {
                    if mask >> (vertices - 1 - v) & 1 == 0 {
                        1
                    } else {
                        2
                    }
                })
                .collect();
            FiberingAssignment { choices }
        })
    }

    /// Vertices where two assignments differ, in order.
    pub fn differing(&self, other: &FiberingAssignment) -> Vec<usize> {
        (0..self.choices.len().min(other.choices.len()))
            .filter(|&v| self.choices[v] != other.choices[v])
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FiberingKind {
    /// One product projection chosen per piece.
    SectionSum { assignment: FiberingAssignment },
    /// Projection of every piece of a covering construction to the common
    /// cover.
    CoverTotal,
    /// The projection to the covered surface at one vertex.
    CoverVertex { vertex: usize },
}

/// One fibering of a construction, with enough data to drive monodromy
/// queries. The id doubles as the monodromy handle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberingDescriptor {
    pub id: String,
    pub base_genus: usize,
    pub fiber_genus: usize,
    pub kind: FiberingKind,
}

/// Enumerates the `2^C` fiberings of a section-sum bundle, one per
/// assignment, in lexicographic id order.
pub fn enumerate_fiberings(b: &SectionSumBundle) -> Result<Vec<FiberingDescriptor>> {
    let c = b.c();
    if c > MAX_ENUM_VERTICES {
        return Err(Error::TooManyVertices {
            vertices: c,
            limit: MAX_ENUM_VERTICES,
        });
    }
    let chi_total = b.euler_char_total()?;
    let base_genus = b.base_genus();
    let fiber_genus = b.fiber_genus();
    let chi = |g: usize| 2 - 2 * g as i64;
    if chi(base_genus) * chi(fiber_genus) != chi_total {
        return Err(Error::EulerMismatch {
            lhs: chi(base_genus) * chi(fiber_genus),
            rhs: chi_total,
        });
    }
    Ok(FiberingAssignment::all(c)
        .map(|assignment| FiberingDescriptor {
            id: assignment.id(),
            base_genus,
            fiber_genus,
            kind: FiberingKind::SectionSum { assignment },
        })
        .collect())
}

/// The two-piece doubled construction over a genus-`g` surface: two
/// vertices, one edge, trivial labels. Fiber genus `2g`, four fiberings.
pub fn basic_construction(g: usize) -> Result<SectionSumBundle> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g });
    }
    let graph = LabeledGraph::new(
        vec![Color::Plus, Color::Minus],
        vec![Edge {
            plus: 0,
            minus: 1,
            label_plus: 0,
            label_minus: 0,
        }],
    );
    crate::construction::build_section_sum(graph, FreeActionData::trivial(g)?)
}

// ---------------------------------------------------------------------------
// Covering constructions
// ---------------------------------------------------------------------------

/// Per-vertex data of a covering construction: the covering map from the
/// common surface onto this vertex's surface, and a group acting freely on
/// the covered surface whose elements label the incident half-edges.
#[derive(Clone, Debug)]
pub struct CoverVertexData {
    pub covering: CoveringMap,
    pub group: FiniteGroup,
}

/// Descriptor of the covering-variant 4-manifold: each vertex `v` carries
/// the piece `Sigma x Sigma_v` with the graphs of `g . f^v` removed for the
/// labels `g` at `v`, glued along the graph.
#[derive(Clone, Debug)]
pub struct CoverConstruction {
    graph: LabeledGraph,
    total_surface: ClosedSurface,
    vertices: Vec<CoverVertexData>,
}

impl CoverConstruction {
    pub fn new(
        graph: LabeledGraph,
        total_genus: usize,
        vertices: Vec<CoverVertexData>,
    ) -> Result<CoverConstruction> {
        if total_genus < 2 {
            return Err(Error::GenusTooSmall { genus: total_genus });
        }
        assert_eq!(
            graph.vertex_count(),
            vertices.len(),
            "one covering per vertex"
        );
        let mut violations = Vec::new();
        let n = graph.vertex_count();
        for (i, e) in graph.edges().iter().enumerate() {
            for v in [e.plus, e.minus] {
                if v >= n {
                    violations.push(GraphViolation::VertexOutOfRange { edge: i, vertex: v });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::GraphInvalid(violations));
        }
        for (i, e) in graph.edges().iter().enumerate() {
            if graph.color(e.plus) != Color::Plus || graph.color(e.minus) != Color::Minus {
                violations.push(GraphViolation::NotBipartite { edge: i });
            }
        }
        // Labels are per-vertex elements of that vertex's group.
        for v in 0..n {
            let order = vertices[v].group.order();
            let valence = graph.valence(v);
            if valence > order {
                violations.push(GraphViolation::ValenceTooLarge {
                    vertex: v,
                    valence,
                    group_order: order,
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for ei in graph.incident(v) {
                let label = graph.label_at(&graph.edges()[ei], v);
                if label >= order {
                    violations.push(GraphViolation::LabelOutOfRange {
                        edge: ei,
                        vertex: v,
                        label,
                    });
                } else if !seen.insert(label) {
                    violations.push(GraphViolation::InjectivityFailure { vertex: v, label });
                }
            }
        }
        if graph
            .validate(&FiniteGroup::trivial())
            .iter()
            .any(|v| *v == GraphViolation::Disconnected)
        {
            violations.push(GraphViolation::Disconnected);
        }
        if !violations.is_empty() {
            return Err(Error::GraphInvalid(violations));
        }
        for (v, data) in vertices.iter().enumerate() {
            let total = data.covering.validate()?;
            if total != total_genus {
                return Err(Error::CoverMismatch {
                    vertex: v,
                    expected: total_genus,
                    actual: total,
                });
            }
            // The group must act freely on the covered surface.
            validate_free_action(data.group.order(), data.covering.base_genus())?;
        }
        Ok(CoverConstruction {
            graph,
            total_surface: ClosedSurface::new(total_genus),
            vertices,
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn total_surface(&self) -> ClosedSurface {
        self.total_surface
    }

    pub fn vertex_data(&self) -> &[CoverVertexData] {
        &self.vertices
    }

    pub fn vertex_surface(&self, v: usize) -> ClosedSurface {
        ClosedSurface::new(self.vertices[v].covering.base_genus())
    }

    /// Piece-sum Euler characteristic: each vertex contributes the product
    /// piece minus one disk bundle per incident edge.
    pub fn euler_char_total(&self) -> i64 {
        let chi = self.total_surface.euler_characteristic();
        (0..self.vertices.len())
            .map(|v| {
                let chi_v = self.vertex_surface(v).euler_characteristic();
                chi * chi_v - self.graph.valence(v) as i64 * chi
            })
            .sum()
    }

    fn fiber_genus_over(&self, base_chi: i64) -> Result<usize> {
        let total = self.euler_char_total();
        if total % base_chi != 0 {
            return Err(Error::NonIntegralFiberChi {
                total,
                base: base_chi,
            });
        }
        let fiber_chi = total / base_chi;
        if fiber_chi % 2 != 0 || fiber_chi > 2 {
            return Err(Error::NonIntegralFiberChi {
                total,
                base: base_chi,
            });
        }
        Ok(((2 - fiber_chi) / 2) as usize)
    }
}

/// Enumerates the `|V| + 1` fiberings of a covering construction: the
/// projection to the common cover and one per vertex. Fiber genera come
/// from dividing Euler characteristics, which is exact for valid input.
pub fn enumerate_cover_fiberings(cc: &CoverConstruction) -> Result<Vec<FiberingDescriptor>> {
    let mut out = Vec::with_capacity(cc.vertices.len() + 1);
    let total_chi = cc.total_surface.euler_characteristic();
    out.push(FiberingDescriptor {
        id: "0".to_string(),
        base_genus: cc.total_surface.genus,
        fiber_genus: cc.fiber_genus_over(total_chi)?,
        kind: FiberingKind::CoverTotal,
    });
    for v in 0..cc.vertices.len() {
        let base = cc.vertex_surface(v);
        out.push(FiberingDescriptor {
            id: format!("v{v}"),
            base_genus: base.genus,
            fiber_genus: cc.fiber_genus_over(base.euler_characteristic())?,
            kind: FiberingKind::CoverVertex { vertex: v },
        });
    }
    Ok(out)
}

/// The cyclic tower over the line graph: the common surface of genus
/// `2^n + 1` covers `Sigma^k` of genus `2^{n-k} + 1` cyclically with degree
/// `2^k`, for `k = 1..n`; consecutive vertices are joined with the
/// involution label on the left half-edge.
pub fn tower_family(n: usize) -> Result<CoverConstruction> {
    assert!(n >= 1);
    let total_genus = (1usize << n) + 1;
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
            // Vertex i's half-edge toward i+1 carries its involution; the
            // half-edge of i+1 toward i carries the identity.
            if i % 2 == 0 {
                Edge {
                    plus: i,
                    minus: i + 1,
                    label_plus: involution_index(n, i),
                    label_minus: 0,
                }
            } else {
                Edge {
                    plus: i + 1,
                    minus: i,
                    label_plus: 0,
                    label_minus: involution_index(n, i),
                }
            }
        })
        .collect();
    let graph = LabeledGraph::new(colors, edges);
    let vertices = (0..n)
        .map(|i| {
            let k = i + 1; // covering degree exponent for vertex i
            let degree = 1usize << k;
            let quotient_genus = (1usize << (n - k)) + 1;
            CoverVertexData {
                covering: covers::cyclic_cover(quotient_genus, degree),
                group: FiniteGroup::cyclic(1usize << (n - k)),
            }
        })
        .collect();
    CoverConstruction::new(graph, total_genus, vertices)
}

/// Index of the order-2 element in the cyclic group at tower vertex `i`,
/// which has order `2^{n-1-i}`.
fn involution_index(n: usize, i: usize) -> usize {
    let order = 1usize << (n - 1 - i);
    debug_assert!(order >= 2, "only inner vertices carry an involution label");
    order / 2
}

// ---------------------------------------------------------------------------
// Distinctness certificates
// ---------------------------------------------------------------------------

/// A checkable witness that two fiberings have different fiber subgroups: a
/// standard homology class of a piece surface lying in the fiber of the
/// first fibering whose image under the second projection is nonzero in the
/// base homology.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistinctnessCertificate {
    pub fibering_1: String,
    pub fibering_2: String,
    /// Vertex where the two fiberings make different choices.
    pub witness_vertex: usize,
    /// Index of the standard generator of the piece surface used as witness.
    pub witness_class: usize,
    /// Its image in `H_1` of the second fibering's base. Nonzero.
    pub image_vector: Vec<i64>,
}

/// Either family of constructions, under one interface for enumeration,
/// certification, and reporting.
#[derive(Clone, Debug)]
pub enum Construction {
    SectionSum(SectionSumBundle),
    Cover(CoverConstruction),
}

impl Construction {
    pub fn fiberings(&self) -> Result<Vec<FiberingDescriptor>> {
        match self {
            Construction::SectionSum(b) => enumerate_fiberings(b),
            Construction::Cover(cc) => enumerate_cover_fiberings(cc),
        }
    }

    pub fn euler_char_total(&self) -> Result<i64> {
        match self {
            Construction::SectionSum(b) => b.euler_char_total(),
            Construction::Cover(cc) => Ok(cc.euler_char_total()),
        }
    }

    pub fn find_fibering(&self, id: &str) -> Result<FiberingDescriptor> {
        self.fiberings()?
            .into_iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::UnknownFibering(id.to_string()))
    }

    /// Produces a certificate separating two fiberings.
    pub fn certify_distinct(&self, id1: &str, id2: &str) -> Result<DistinctnessCertificate> {
        if id1 == id2 {
            return Err(Error::NoDifferingVertex(id1.to_string(), id2.to_string()));
        }
        let f1 = self.find_fibering(id1)?;
        let f2 = self.find_fibering(id2)?;
        match self {
            Construction::SectionSum(b) => certify_section(b, &f1, &f2),
            Construction::Cover(cc) => certify_cover(cc, &f1, &f2),
        }
    }

    /// Recomputes a certificate's image vector from its coordinates and
    /// checks it is the recorded nonzero vector.
    pub fn verify_certificate(&self, cert: &DistinctnessCertificate) -> Result<()> {
        if cert.image_vector.iter().all(|&x| x == 0) {
            return Err(Error::WitnessVanishes);
        }
        let recomputed = self.certify_distinct(&cert.fibering_1, &cert.fibering_2)?;
        if &recomputed == cert {
            Ok(())
        } else {
            Err(Error::WitnessVanishes)
        }
    }
}

fn certify_section(
    b: &SectionSumBundle,
    f1: &FiberingDescriptor,
    f2: &FiberingDescriptor,
) -> Result<DistinctnessCertificate> {
    let (FiberingKind::SectionSum { assignment: a1 }, FiberingKind::SectionSum { assignment: a2 }) =
        (&f1.kind, &f2.kind)
    else {
        return Err(Error::UnknownFibering(format!("{}/{}", f1.id, f2.id)));
    };
    let differing = a1.differing(a2);
    let Some(&v) = differing.first() else {
        return Err(Error::NoDifferingVertex(f1.id.clone(), f2.id.clone()));
    };
    // The first standard generator of the piece at v lies in the fiber of
    // f1 and projects under f2 by the identity chart on the piece factor,
    // so its image is the corresponding standard basis vector: nonzero.
    let witness_class = 0;
    let mut image = vec![0i64; 2 * b.base_genus()];
    image[witness_class] = 1;
    Ok(DistinctnessCertificate {
        fibering_1: f1.id.clone(),
        fibering_2: f2.id.clone(),
        witness_vertex: v,
        witness_class,
        image_vector: image,
    })
}

fn certify_cover(
    cc: &CoverConstruction,
    f1: &FiberingDescriptor,
    f2: &FiberingDescriptor,
) -> Result<DistinctnessCertificate> {
    let done = |witness_vertex, witness_class, image_vector: Vec<i64>| {
        Ok(DistinctnessCertificate {
            fibering_1: f1.id.clone(),
            fibering_2: f2.id.clone(),
            witness_vertex,
            witness_class,
            image_vector,
        })
    };
    match (&f1.kind, &f2.kind) {
        (FiberingKind::CoverTotal, FiberingKind::CoverVertex { vertex: v }) => {
            // Witness in the Sigma_v piece of the total-projection fiber;
            // the v-projection restricts to the identity chart on it.
            let mut image = vec![0i64; 2 * cc.vertex_surface(*v).genus];
            image[0] = 1;
            done(*v, 0, image)
        }
        (FiberingKind::CoverVertex { vertex: v }, FiberingKind::CoverTotal) => {
            // Witness in the common-cover piece of the v-fibering's fiber;
            // the total projection restricts to the identity chart.
            let mut image = vec![0i64; 2 * cc.total_surface().genus];
            image[0] = 1;
            done(*v, 0, image)
        }
        (FiberingKind::CoverVertex { vertex: u }, FiberingKind::CoverVertex { vertex: v }) => {
            // Witness in the common-cover piece of the u-fibering's fiber,
            // written in the symplectic coordinates of the covering f^v; the
            // v-projection acts on it by the covering pushforward. Some
            // standard generator must survive since the pushforward is onto
            // rationally.
            let hom = covers::homology(&cc.vertex_data()[*v].covering)?;
            for k in 0..hom.rank() {
                let mut e = vec![0i64; hom.rank()];
                e[k] = 1;
                let image = hom.transfer_to_base(&e);
                if image.iter().any(|&x| x != 0) {
                    return done(*u, k, image);
                }
            }
            Err(Error::WitnessVanishes)
        }
        _ => Err(Error::UnknownFibering(format!("{}/{}", f1.id, f2.id))),
    }
}

/// Homology package of the covering at a vertex. Exposed so monodromy and
/// reporting reuse one computation path.
pub fn vertex_homology(cc: &CoverConstruction, v: usize) -> Result<CoverHomology> {
    covers::homology(&cc.vertex_data()[v].covering)
}
