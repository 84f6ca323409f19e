//! Text formats: complex documents, graph edge lists, ideal exports.
//!
//! All formats are ASCII with LF line endings.
//!
//! Complex documents are small key-value files (TOML syntax):
//!
//! ```text
//! # optional comments
//! name = "triangle-cycle"
//! n = 5
//! facets = [[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5]]
//! ```
//!
//! Graphs are edge lists with a `graph n` header, one `u v` pair per line:
//!
//! ```text
//! graph 6
//! 1 2
//! 2 3
//! ```
//!
//! Ideals export with a `ring n` header and one monomial per line, factors
//! ascending, as in `x1*x4*x5`.

use serde::Deserialize;
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::gallai::{GallaiGraph, Graph, GraphError};
use crate::ideal::{monomial_string, Monomial, OrderedIdeal};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Document(#[from] toml::de::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed complex document: the facets as given, the normalized complex,
/// and notices about faces the normalization absorbed.
#[derive(Debug, Clone)]
pub struct ComplexDocument {
    pub name: Option<String>,
    pub n: u32,
    pub facets_as_given: Vec<Vec<u32>>,
    pub complex: SimplicialComplex,
    pub notices: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplexDocument {
    name: Option<String>,
    n: u32,
    facets: Vec<Vec<u32>>,
}

pub fn parse_complex(text: &str) -> Result<ComplexDocument, ParseError> {
    let raw: RawComplexDocument = toml::from_str(text)?;
    let faces = raw
        .facets
        .iter()
        .map(|vs| Face::from_vertices(vs.iter().copied()))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = SimplicialComplex::new(raw.n, faces.iter().copied())?;
    let mut notices = Vec::new();
    for (face, given) in faces.iter().zip(&raw.facets) {
        if !complex.facets().contains(face) {
            notices.push(format!(
                "face [{}] was absorbed into a larger facet during normalization",
                given
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    Ok(ComplexDocument {
        name: raw.name,
        n: raw.n,
        facets_as_given: raw.facets,
        complex,
        notices,
    })
}

/// Canonical serialization of a complex: normalized facets in canonical
/// order. `parse_complex(render_complex(..))` reproduces the complex with no
/// notices.
pub fn render_complex(complex: &SimplicialComplex, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("name = \"{name}\"\n"));
    }
    out.push_str(&format!("n = {}\n", complex.n()));
    let facets = complex
        .facets()
        .iter()
        .map(|f| {
            let vs: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
            format!("[{}]", vs.join(", "))
        })
        .collect::<Vec<_>>()
        .join(", ");
    out.push_str(&format!("facets = [{facets}]\n"));
    out
}

/// Parses the `graph n` edge-list format. Blank lines and `#` comments are
/// allowed; every semantic error carries its line number.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<u32> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "graph" {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("expected header `graph n`, got `{content}`"),
                    });
                }
                let count: u32 = fields[1].parse().map_err(|_| ParseError::Syntax {
                    line,
                    message: format!("invalid vertex count `{}`", fields[1]),
                })?;
                if count == 0 {
                    return Err(ParseError::Syntax {
                        line,
                        message: "vertex count must be at least 1".to_string(),
                    });
                }
                n = Some(count);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("expected an edge `u v`, got `{content}`"),
                    });
                }
                let mut pair = [0u32; 2];
                for (slot, field) in pair.iter_mut().zip(&fields) {
                    *slot = field.parse().map_err(|_| ParseError::Syntax {
                        line,
                        message: format!("invalid vertex label `{field}`"),
                    })?;
                }
                let (u, v) = (pair[0], pair[1]);
                if u == v {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("loop edge at vertex {u}"),
                    });
                }
                if u == 0 || u > n || v == 0 || v > n {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("edge {u} {v} leaves the vertex range 1..={n}"),
                    });
                }
                let normalized = (u.min(v), u.max(v));
                if edges.contains(&normalized) {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("duplicate edge {u} {v}"),
                    });
                }
                edges.push(normalized);
            }
        }
    }
    let Some(n) = n else {
        return Err(ParseError::Syntax {
            line: 1,
            message: "missing `graph n` header".to_string(),
        });
    };
    Ok(Graph::new(n, edges)?)
}

pub fn render_graph(graph: &Graph) -> String {
    let mut out = format!("graph {}\n", graph.n());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Renders a Gallai graph as a graph document, with the vertex-to-edge
/// labeling as comment lines (the result still parses with [`parse_graph`]).
pub fn render_gallai_graph(gallai: &GallaiGraph) -> String {
    let mut out = format!("graph {}\n", gallai.graph.n());
    out.push_str("# vertex i is edge i of the source graph, in canonical edge order:\n");
    for (i, &(u, v)) in gallai.vertex_edges.iter().enumerate() {
        out.push_str(&format!("# {} = {{{u},{v}}}\n", i + 1));
    }
    for &(a, b) in gallai.graph.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Ideal export: `ring n` header, then one monomial per line in generator
/// order.
pub fn render_ideal(ideal: &OrderedIdeal) -> String {
    render_monomials(ideal.n(), ideal.gens())
}

pub fn render_monomials(n: u32, monomials: &[Monomial]) -> String {
    let mut out = format!("ring {n}\n");
    for &m in monomials {
        out.push_str(&monomial_string(m));
        out.push('\n');
    }
    out
}
