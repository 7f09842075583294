//! Report values: one in-memory structure drives both the human tables and
//! the machine-readable JSON, so the two views cannot drift.

use fiberings_core::covers::Letter;
use fiberings_core::fibering::Construction;
use fiberings_core::monodromy::{
    self, base_generator_count, invariant_lagrangian, is_torelli, preserves_lagrangian,
};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::CliError;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fiberings: Vec<FiberingRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monodromy: Vec<MonodromyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<SignatureBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundsRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConstructionSummary {
    pub kind: String,
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub fibering_count: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FiberingRow {
    pub id: String,
    pub base_genus: usize,
    pub fiber_genus: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CertificateRow {
    pub fibering_1: String,
    pub fibering_2: String,
    pub witness_vertex: usize,
    pub witness_class: usize,
    pub image_vector: Vec<i64>,
    pub verified: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MonodromyRow {
    pub fibering: String,
    pub torelli: bool,
    pub lagrangian_invariant: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRow {
    pub generator: usize,
    pub torelli: bool,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SignatureBlock {
    pub value: i64,
    pub provenance: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoundsRow {
    pub d: u64,
    pub lower: String,
    pub upper: String,
    pub divisor_count: u64,
    pub max_generators: u64,
    pub argmax_genus: u64,
    pub argmax_base: u64,
    pub hom_count: String,
    pub sharper: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// Builds the fibering report for a construction.
pub fn fiberings_report(
    c: &Construction,
    certify: bool,
    with_monodromy: bool,
) -> Result<Report, CliError> {
    let fibs = c.fiberings()?;
    let kind = match c {
        Construction::SectionSum(_) => "section-sum",
        Construction::Cover(_) => "cover",
    };
    let (vertices, edges) = match c {
        Construction::SectionSum(b) => (b.c(), b.d()),
        Construction::Cover(cc) => (cc.graph().vertex_count(), cc.graph().edge_count()),
    };
    let mut report = Report {
        construction: Some(ConstructionSummary {
            kind: kind.to_string(),
            vertices,
            edges,
            euler_characteristic: c.euler_char_total()?,
            fibering_count: fibs.len(),
        }),
        fiberings: fibs
            .iter()
            .map(|f| FiberingRow {
                id: f.id.clone(),
                base_genus: f.base_genus,
                fiber_genus: f.fiber_genus,
            })
            .collect(),
        ..Report::default()
    };

    if certify {
        for i in 0..fibs.len() {
            for j in i + 1..fibs.len() {
                let cert = c.certify_distinct(&fibs[i].id, &fibs[j].id)?;
                let verified = c.verify_certificate(&cert).is_ok();
                report.certificates.push(CertificateRow {
                    fibering_1: cert.fibering_1,
                    fibering_2: cert.fibering_2,
                    witness_vertex: cert.witness_vertex,
                    witness_class: cert.witness_class,
                    image_vector: cert.image_vector,
                    verified,
                });
            }
        }
    }

    if with_monodromy {
        for f in &fibs {
            let lagrangian = invariant_lagrangian(c, &f.id)?;
            let mut all_torelli = true;
            let mut all_invariant = true;
            let mut generators = Vec::new();
            for gen in 0..base_generator_count(f) {
                let act = monodromy::monodromy(c, &f.id, &[Letter::new(gen)])?;
                let torelli = is_torelli(&act);
                all_torelli &= torelli;
                all_invariant &= preserves_lagrangian(&act, &lagrangian);
                generators.push(GeneratorRow {
                    generator: gen,
                    torelli,
                    matrix: matrix_rows(act.matrix()),
                });
            }
            report.monodromy.push(MonodromyRow {
                fibering: f.id.clone(),
                torelli: all_torelli,
                lagrangian_invariant: all_invariant,
                generators,
            });
        }
        if let Ok(sig) = monodromy::signature(c) {
            report.signature = Some(SignatureBlock {
                value: sig.value,
                provenance: sig.provenance.to_string(),
            });
        }
    }
    Ok(report)
}

pub fn bounds_report_rows(from: u64, to: u64, sharper: bool) -> Report {
    let bounds = (from..=to)
        .map(|d| {
            let r = fiberings_core::bounds::bounds_report_with(d, sharper);
            BoundsRow {
                d,
                lower: r.lower.to_string(),
                upper: r.upper.to_string(),
                divisor_count: r.genus_pairs.len() as u64,
                max_generators: r.max_generators,
                argmax_genus: r.argmax_pair.0,
                argmax_base: r.argmax_pair.1,
                hom_count: r.hom_count.to_string(),
                sharper,
            }
        })
        .collect();
    Report {
        bounds,
        ..Report::default()
    }
}

fn matrix_rows(m: &fiberings_core::IntMat) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.construction {
            writeln!(f, "construction: {}", c.kind)?;
            writeln!(
                f,
                "  vertices = {}  edges = {}  euler characteristic = {}  fiberings = {}",
                c.vertices, c.edges, c.euler_characteristic, c.fibering_count
            )?;
        }
        if !self.fiberings.is_empty() {
            writeln!(f, "fiberings:")?;
            writeln!(
                f,
                "  {:<10} {:>10} {:>11}",
                "id", "base genus", "fiber genus"
            )?;
            for r in &self.fiberings {
                writeln!(
                    f,
                    "  {:<10} {:>10} {:>11}",
                    r.id, r.base_genus, r.fiber_genus
                )?;
            }
        }
        if !self.certificates.is_empty() {
            writeln!(f, "distinctness certificates:")?;
            writeln!(
                f,
                "  {:<10} {:<10} {:>6} {:>5}  {:<9} image",
                "first", "second", "vertex", "class", "verified"
            )?;
            for c in &self.certificates {
                writeln!(
                    f,
                    "  {:<10} {:<10} {:>6} {:>5}  {:<9} {:?}",
                    c.fibering_1,
                    c.fibering_2,
                    c.witness_vertex,
                    c.witness_class,
                    c.verified,
                    c.image_vector
                )?;
            }
        }
        if !self.monodromy.is_empty() {
            writeln!(f, "monodromy:")?;
            writeln!(
                f,
                "  {:<10} {:<8} {:<20}",
                "fibering", "torelli", "lagrangian-invariant"
            )?;
            for m in &self.monodromy {
                writeln!(
                    f,
                    "  {:<10} {:<8} {:<20}",
                    m.fibering, m.torelli, m.lagrangian_invariant
                )?;
            }
        }
        if let Some(s) = &self.signature {
            writeln!(f, "signature: {} ({})", s.value, s.provenance)?;
        }
        if !self.bounds.is_empty() {
            writeln!(f, "fibering-count bounds:")?;
            writeln!(
                f,
                "  {:>4} {:>12} {:<24} {:>9} {:>7}",
                "d", "lower", "upper", "divisors", "maxgen"
            )?;
            for b in &self.bounds {
                writeln!(
                    f,
                    "  {:>4} {:>12} {:<24} {:>9} {:>7}",
                    b.d, b.lower, b.upper, b.divisor_count, b.max_generators
                )?;
            }
        }
        Ok(())
    }
}
