//! Verdict reports rendered as structured text or JSON.
//!
//! A report carries the query kind, the verdict, an optional shelling
//! certificate, derived ring-theoretic flags, and search statistics. The
//! flags are inferences, never independent verifications:
//!
//! - `clean`: a face ring is clean exactly when the complex is shellable, so
//!   the flag mirrors a shellability verdict in either direction.
//! - `cohen_macaulay`: set only when the complex is pure and shellable; the
//!   converse is not checked, so the flag is either `true` or absent.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::gallai::{GallaiGraph, Graph};
use crate::shelling::{SearchOutcome, SearchReport, ShellingCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Shellable,
    NotShellable,
    ShellingOrder,
    NotAShellingOrder,
    Leaf,
    NotALeaf,
    SimplicialTree,
    NotASimplicialTree,
    NotATree,
    Constructed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Shellable => "shellable",
            Verdict::NotShellable => "not-shellable",
            Verdict::ShellingOrder => "shelling-order",
            Verdict::NotAShellingOrder => "not-a-shelling-order",
            Verdict::Leaf => "leaf",
            Verdict::NotALeaf => "not-a-leaf",
            Verdict::SimplicialTree => "simplicial-tree",
            Verdict::NotASimplicialTree => "not-a-simplicial-tree",
            Verdict::NotATree => "not-a-tree",
            Verdict::Constructed => "constructed",
        }
    }

    pub fn is_affirmative(self) -> bool {
        matches!(
            self,
            Verdict::Shellable
                | Verdict::ShellingOrder
                | Verdict::Leaf
                | Verdict::SimplicialTree
                | Verdict::Constructed
        )
    }

    /// Exit-code contract: 0 affirmative, 1 negative.
    pub fn exit_code(self) -> i32 {
        if self.is_affirmative() {
            0
        } else {
            1
        }
    }
}

/// Derived ring-theoretic flags; see the module docs for their premises.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clean: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohen_macaulay: Option<bool>,
}

/// Flags inferred from purity plus a shellability verdict. `shellable` is
/// `None` when the query did not decide shellability of the whole complex.
pub fn derived_flags(pure: bool, shellable: Option<bool>) -> Flags {
    Flags {
        clean: shellable,
        cohen_macaulay: match shellable {
            Some(true) if pure => Some(true),
            _ => None,
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub n: u32,
    pub facets: Vec<Vec<u32>>,
    pub dim: i32,
    pub pure: bool,
    pub connected: bool,
}

impl ComplexSummary {
    pub fn of(complex: &SimplicialComplex) -> Self {
        let (dim, pure) = complex.dimension_and_purity();
        Self {
            n: complex.n(),
            facets: complex
                .facets()
                .iter()
                .map(|f| f.vertices().collect())
                .collect(),
            dim,
            pure,
            connected: complex.is_connected(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub n: u32,
    pub edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_edges: Option<Vec<(u32, u32)>>,
}

impl GraphSummary {
    pub fn of(graph: &Graph) -> Self {
        Self {
            n: graph.n(),
            edges: graph.edges().to_vec(),
            vertex_edges: None,
        }
    }

    pub fn of_gallai(gallai: &GallaiGraph) -> Self {
        Self {
            n: gallai.graph.n(),
            edges: gallai.graph.edges().to_vec(),
            vertex_edges: Some(gallai.vertex_edges.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealSummary {
    pub ring: u32,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub outcome: &'static str,
    pub nodes_expanded: u64,
    pub prefixes_pruned: u64,
    pub elapsed_ms: f64,
}

impl SearchStats {
    pub fn of(report: &SearchReport) -> Self {
        Self {
            outcome: match report.outcome {
                SearchOutcome::Shelling(_) => "certificate",
                SearchOutcome::Exhausted => "exhausted",
            },
            nodes_expanded: report.nodes_expanded,
            prefixes_pruned: report.prefixes_pruned,
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// One query's full result. The JSON rendering is the serde serialization of
/// this struct; the text rendering carries the same verdict and certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub query: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ShellingCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet: Option<usize>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchStats>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(query: &str, verdict: Verdict) -> Self {
        Self {
            query: query.to_string(),
            input: None,
            verdict,
            complex: None,
            graph: None,
            ideal: None,
            certificate: None,
            failed_step: None,
            facet: None,
            flags: Flags::default(),
            search: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Human-readable rendering; verdict and certificate match the JSON
    /// form field for field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("query: {}\n", self.query));
        if let Some(input) = &self.input {
            out.push_str(&format!("input: {input}\n"));
        }
        if let Some(c) = &self.complex {
            out.push_str(&format!(
                "complex: n={}, {} facets, dim={}, {}, {}\n",
                c.n,
                c.facets.len(),
                c.dim,
                if c.pure { "pure" } else { "not pure" },
                if c.connected {
                    "connected"
                } else {
                    "disconnected"
                },
            ));
        }
        if let Some(g) = &self.graph {
            out.push_str(&format!(
                "graph: {} vertices, {} edges\n",
                g.n,
                g.edges.len()
            ));
        }
        if let Some(facet) = self.facet {
            out.push_str(&format!("facet: {facet}\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.as_str()));
        if let Some(step) = self.failed_step {
            out.push_str(&format!("failed step: {step}\n"));
        }
        if let Some(cert) = &self.certificate {
            let order: Vec<String> = cert.order.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("order: {}\n", order.join(",")));
            if !cert.steps.is_empty() {
                out.push_str("steps:\n");
                for (j, step) in cert.steps.iter().enumerate() {
                    let vs: Vec<String> = step.iter().map(|v| v.to_string()).collect();
                    out.push_str(&format!("  {}: {{{}}}\n", j + 2, vs.join(",")));
                }
            }
        }
        if let Some(stats) = &self.search {
            out.push_str(&format!(
                "search: {} (nodes expanded {}, prefixes pruned {}, {:.2} ms)\n",
                stats.outcome, stats.nodes_expanded, stats.prefixes_pruned, stats.elapsed_ms
            ));
        }
        if self.flags.clean.is_some() || self.flags.cohen_macaulay.is_some() {
            out.push_str("flags:\n");
            if let Some(clean) = self.flags.clean {
                out.push_str(&format!(
                    "  clean: {} (face ring cleanness mirrors shellability)\n",
                    if clean { "yes" } else { "no" }
                ));
            }
            if let Some(cm) = self.flags.cohen_macaulay {
                out.push_str(&format!(
                    "  cohen-macaulay: {} (inferred from purity plus shellability; not verified ring-theoretically)\n",
                    if cm { "yes" } else { "no" }
                ));
            }
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}
