//! The construction file format: a strict TOML document describing either
//! a section-sum bundle or a covering construction.
//!
//! Unknown keys are rejected everywhere. A file is a section-sum
//! description when it has a `group` section and no `coverings`; it is a
//! covering construction when it has `coverings` and no `group`. The full
//! grammar is documented in the repository README.

use fiberings_core::construction::{build_section_sum, Color, Edge, LabeledGraph};
use fiberings_core::covers::{cyclic_action_data, CoveringMap};
use fiberings_core::fibering::{Construction, CoverConstruction, CoverVertexData};
use fiberings_core::matrix::IntMat;
use fiberings_core::perm::Perm;
use fiberings_core::surfaces::FreeActionData;
use fiberings_core::FiniteGroup;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConstructionFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub surface: SurfaceSpec,
    pub graph: GraphSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverings: Option<Vec<CoveringSpec>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: usize,
    /// Shorthand for derived homology action data; only "cyclic-cover" is
    /// recognized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    /// Explicit homology action matrices, one 2g x 2g matrix per group
    /// element in element order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action_matrices: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    /// One of "+" or "-" per vertex.
    pub colors: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub plus: usize,
    pub minus: usize,
    pub label_plus: usize,
    pub label_minus: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoveringSpec {
    pub vertex: usize,
    pub base_genus: usize,
    pub degree: usize,
    /// Images of the base generators a1, b1, ..., ah, bh as permutations
    /// of {0, .., degree-1} in one-line notation.
    pub perms: Vec<Vec<usize>>,
    pub group: GroupSpec,
}

impl ConstructionFile {
    pub fn parse(text: &str) -> Result<ConstructionFile, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn emit(&self) -> String {
        toml::to_string(self).expect("construction files serialize")
    }

    /// Builds the validated construction this file describes.
    pub fn build(&self) -> Result<Construction, CliError> {
        match (&self.group, &self.coverings) {
            (Some(_), Some(_)) => Err(CliError::Parse(
                "a file describes exactly one construction: remove either `group` or `coverings`".into(),
            )),
            (None, None) => Err(CliError::Parse(
                "missing section: section sums need `group`, covering constructions need `coverings`".into(),
            )),
            (Some(group), None) => self.build_section_sum(group),
            (None, Some(coverings)) => self.build_cover(coverings),
        }
    }

    fn build_section_sum(&self, group: &GroupSpec) -> Result<Construction, CliError> {
        let group = group.build()?;
        let genus = self.surface.genus;
        let piece = match (&self.surface.action, &self.surface.action_matrices) {
            (Some(_), Some(_)) => {
                return Err(CliError::Parse(
                    "give either `action` or `action_matrices`, not both".into(),
                ))
            }
            (Some(shorthand), None) => {
                if shorthand != "cyclic-cover" {
                    return Err(CliError::Parse(format!(
                        "unknown action shorthand {shorthand:?}; only \"cyclic-cover\" is recognized"
                    )));
                }
                let n = group.order();
                if n == 1 {
                    FreeActionData::trivial(genus)?
                } else {
                    if group != FiniteGroup::cyclic(n) {
                        return Err(CliError::Parse(
                            "the cyclic-cover action shorthand needs a cyclic group".into(),
                        ));
                    }
                    if (genus - 1) % n != 0 {
                        return Err(CliError::Domain(
                            fiberings_core::Error::NonIntegralQuotient {
                                order: n,
                                genus_minus_one: genus - 1,
                            },
                        ));
                    }
                    let quotient = (genus - 1) / n + 1;
                    let data = cyclic_action_data(n, quotient)?;
                    debug_assert_eq!(data.total_genus(), genus);
                    data
                }
            }
            (None, Some(matrices)) => {
                let mats: Vec<IntMat> = matrices
                    .iter()
                    .map(|rows| IntMat::from_rows(rows.clone()))
                    .collect();
                FreeActionData::with_action(group, genus, mats)?
            }
            (None, None) => {
                if group.is_trivial() {
                    FreeActionData::trivial(genus)?
                } else {
                    FreeActionData::new(group, genus)?
                }
            }
        };
        let graph = self.graph.build()?;
        Ok(Construction::SectionSum(build_section_sum(graph, piece)?))
    }

    fn build_cover(&self, coverings: &[CoveringSpec]) -> Result<Construction, CliError> {
        if self.surface.action.is_some() || self.surface.action_matrices.is_some() {
            return Err(CliError::Parse(
                "covering constructions carry no surface action section".into(),
            ));
        }
        let graph = self.graph.build()?;
        let n = graph.vertex_count();
        let mut slots: Vec<Option<CoverVertexData>> = vec![None; n];
        for spec in coverings {
            if spec.vertex >= n {
                return Err(CliError::Parse(format!(
                    "covering for vertex {} but the graph has {n} vertices",
                    spec.vertex
                )));
            }
            if slots[spec.vertex].is_some() {
                return Err(CliError::Parse(format!(
                    "vertex {} has two coverings",
                    spec.vertex
                )));
            }
            let perms: Option<Vec<Perm>> = spec
                .perms
                .iter()
                .map(|images| Perm::new(images.clone()))
                .collect();
            let Some(perms) = perms else {
                return Err(CliError::Parse(format!(
                    "covering at vertex {}: a permutation line is not a bijection",
                    spec.vertex
                )));
            };
            if perms.len() != 2 * spec.base_genus || perms.iter().any(|p| p.degree() != spec.degree)
            {
                return Err(CliError::Parse(format!(
                    "covering at vertex {}: need 2*base_genus permutations of {{0..degree-1}}",
                    spec.vertex
                )));
            }
            let covering = CoveringMap::new(spec.base_genus, spec.degree, perms)?;
            slots[spec.vertex] = Some(CoverVertexData {
                covering,
                group: spec.group.build()?,
            });
        }
        let vertices: Option<Vec<CoverVertexData>> = slots.into_iter().collect();
        let Some(vertices) = vertices else {
            return Err(CliError::Parse(
                "every graph vertex needs a covering".into(),
            ));
        };
        Ok(Construction::Cover(CoverConstruction::new(
            graph,
            self.surface.genus,
            vertices,
        )?))
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        match self.kind.as_str() {
            "trivial" => {
                if self.order.is_some() || self.table.is_some() {
                    return Err(CliError::Parse(
                        "trivial groups take no order or table".into(),
                    ));
                }
                Ok(FiniteGroup::trivial())
            }
            "cyclic" => {
                if self.table.is_some() {
                    return Err(CliError::Parse("cyclic groups take no table".into()));
                }
                let order = self
                    .order
                    .ok_or_else(|| CliError::Parse("cyclic groups need `order`".into()))?;
                if order == 0 || order > fiberings_core::group::MAX_GROUP_ORDER {
                    return Err(CliError::Parse(format!(
                        "cyclic order {order} out of range"
                    )));
                }
                Ok(FiniteGroup::cyclic(order))
            }
            "table" => {
                if self.order.is_some() {
                    return Err(CliError::Parse("table groups infer their order".into()));
                }
                let table = self
                    .table
                    .clone()
                    .ok_or_else(|| CliError::Parse("table groups need `table`".into()))?;
                Ok(FiniteGroup::new(table)?)
            }
            other => Err(CliError::Parse(format!(
                "unknown group kind {other:?}; use trivial, cyclic, or table"
            ))),
        }
    }

    pub fn trivial() -> GroupSpec {
        GroupSpec {
            kind: "trivial".into(),
            order: None,
            table: None,
        }
    }

    pub fn cyclic(order: usize) -> GroupSpec {
        GroupSpec {
            kind: "cyclic".into(),
            order: Some(order),
            table: None,
        }
    }
}

impl GraphSpec {
    fn build(&self) -> Result<LabeledGraph, CliError> {
        let colors: Result<Vec<Color>, CliError> = self
            .colors
            .iter()
            .map(|c| match c.as_str() {
                "+" => Ok(Color::Plus),
                "-" => Ok(Color::Minus),
                other => Err(CliError::Parse(format!(
                    "vertex color must be + or -, got {other:?}"
                ))),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                plus: e.plus,
                minus: e.minus,
                label_plus: e.label_plus,
                label_minus: e.label_minus,
            })
            .collect();
        Ok(LabeledGraph::new(colors?, edges))
    }

    pub fn from_graph(graph: &LabeledGraph) -> GraphSpec {
        GraphSpec {
            colors: graph
                .colors()
                .iter()
                .map(|c| {
                    if *c == Color::Plus {
                        "+".to_string()
                    } else {
                        "-".to_string()
                    }
                })
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    plus: e.plus,
                    minus: e.minus,
                    label_plus: e.label_plus,
                    label_minus: e.label_minus,
                })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Family emitters
// ---------------------------------------------------------------------------

/// The doubled construction over a genus-`g` surface.
pub fn basic_family_file(g: usize) -> Result<ConstructionFile, CliError> {
    let bundle = fiberings_core::fibering::basic_construction(g)?;
    Ok(ConstructionFile {
        group: Some(GroupSpec::trivial()),
        surface: SurfaceSpec {
            genus: g,
            action: None,
            action_matrices: None,
        },
        graph: GraphSpec::from_graph(bundle.graph()),
        coverings: None,
    })
}

/// The line-graph family on `n` vertices over the genus-3 surface with its
/// involution.
pub fn line_family_file(n: usize) -> Result<ConstructionFile, CliError> {
    let bundle = fiberings_core::construction::line_graph_family(n)?;
    Ok(ConstructionFile {
        group: Some(GroupSpec::cyclic(2)),
        surface: SurfaceSpec {
            genus: 3,
            action: Some("cyclic-cover".into()),
            action_matrices: None,
        },
        graph: GraphSpec::from_graph(bundle.graph()),
        coverings: None,
    })
}

/// The cyclic tower over the line graph with `n` vertices.
pub fn tower_family_file(n: usize) -> Result<ConstructionFile, CliError> {
    let cc = fiberings_core::fibering::tower_family(n)?;
    let coverings = cc
        .vertex_data()
        .iter()
        .enumerate()
        .map(|(v, data)| CoveringSpec {
            vertex: v,
            base_genus: data.covering.base_genus(),
            degree: data.covering.degree(),
            perms: data
                .covering
                .perm_images()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
            group: GroupSpec::cyclic(data.group.order()),
        })
        .collect();
    Ok(ConstructionFile {
        group: None,
        surface: SurfaceSpec {
            genus: cc.total_surface().genus,
            action: None,
            action_matrices: None,
        },
        graph: GraphSpec::from_graph(cc.graph()),
        coverings: Some(coverings),
    })
}
