//! The germ document: a strict TOML description of one singularity — the
//! weighted dual graph, the boundary curves through the point, and optional
//! numeric data about the divisor being tested.
//!
//! ```toml
//! vertices = [{ id = "1", weight = 2 }, { id = "2", weight = 3 }]
//! edges = [["1", "2"]]
//!
//! [[boundary]]
//! coeff = "1/2"
//! incidence = { "1" = 1 }
//!
//! [d_data]
//! d_squared = "5/2"
//! min_dc = "2"        # optional
//! ```
//!
//! Rationals are written as `"p/q"` or integer strings and parsed exactly;
//! unknown fields anywhere are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use germs::boundary::{BoundaryData, CurveGerm};
use germs::rat::{parse_rat, Rat};
use germs::DualGraph;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDocument {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub boundary: Vec<CurveDoc>,
    #[serde(default)]
    pub d_data: Option<DDataDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub weight: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub coeff: String,
    pub incidence: BTreeMap<String, u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DDataDoc {
    pub d_squared: String,
    #[serde(default)]
    pub min_dc: Option<String>,
    #[serde(default)]
    pub d_components: Vec<CurveDoc>,
}

/// Anything wrong with the input file; always exits with status 2.
#[derive(Debug)]
pub enum InputError {
    Io { path: String, message: String },
    Syntax(String),
    Field { field: String, message: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            InputError::Syntax(m) => write!(f, "parse error: {m}"),
            InputError::Field { field, message } => write!(f, "{field}: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

/// Divisor data converted to library types.
#[derive(Debug, Clone)]
pub struct DData {
    pub d_squared: Rat,
    pub min_dc: Option<Rat>,
    pub components: BoundaryData,
}

/// A fully validated input: the graph exists, every rational parsed, every
/// incidence label refers to a vertex.
#[derive(Debug, Clone)]
pub struct GermInput {
    pub graph: DualGraph,
    pub boundary: BoundaryData,
    pub d_data: Option<DData>,
}

fn field_rat(field: String, text: &str) -> Result<Rat, InputError> {
    parse_rat(text).ok_or_else(|| InputError::Field {
        field,
        message: format!("invalid rational '{text}'"),
    })
}

fn curves(
    section: &str,
    docs: &[CurveDoc],
    graph: &DualGraph,
) -> Result<BoundaryData, InputError> {
    let mut out = Vec::with_capacity(docs.len());
    for (i, c) in docs.iter().enumerate() {
        let coeff = field_rat(format!("{section}[{i}].coeff"), &c.coeff)?;
        for id in c.incidence.keys() {
            if graph.index_of(id).is_none() {
                return Err(InputError::Field {
                    field: format!("{section}[{i}].incidence"),
                    message: format!("unknown vertex '{id}'"),
                });
            }
        }
        out.push(CurveGerm::new(coeff, c.incidence.clone()));
    }
    Ok(BoundaryData::new(out))
}

pub fn convert(doc: &GermDocument) -> Result<GermInput, InputError> {
    let vertices: Vec<(&str, u32)> =
        doc.vertices.iter().map(|v| (v.id.as_str(), v.weight)).collect();
    let edges: Vec<(&str, &str)> =
        doc.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    let graph = DualGraph::new(&vertices, &edges).map_err(|e| InputError::Field {
        field: "vertices/edges".to_string(),
        message: e.to_string(),
    })?;

    let boundary = curves("boundary", &doc.boundary, &graph)?;

    let d_data = match &doc.d_data {
        None => None,
        Some(d) => {
            let d_squared = field_rat("d_data.d_squared".to_string(), &d.d_squared)?;
            let min_dc = d
                .min_dc
                .as_deref()
                .map(|s| field_rat("d_data.min_dc".to_string(), s))
                .transpose()?;
            let components = curves("d_data.d_components", &d.d_components, &graph)?;
            Some(DData { d_squared, min_dc, components })
        }
    };

    Ok(GermInput { graph, boundary, d_data })
}

pub fn load(path: &Path) -> Result<GermInput, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let doc: GermDocument =
        toml::from_str(&text).map_err(|e| InputError::Syntax(e.to_string()))?;
    convert(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use germs::rat::rat;

    fn parse(text: &str) -> Result<GermInput, InputError> {
        let doc: GermDocument =
            toml::from_str(text).map_err(|e| InputError::Syntax(e.to_string()))?;
        convert(&doc)
    }

    #[test]
    fn full_document_round_trips_to_library_types() {
        let input = parse(
            r#"
            vertices = [{ id = "1", weight = 2 }, { id = "2", weight = 3 }]
            edges = [["1", "2"]]

            [[boundary]]
            coeff = "1/2"
            incidence = { "2" = 1 }

            [d_data]
            d_squared = "5/2"
            min_dc = "2"
            "#,
        )
        .unwrap();
        assert_eq!(input.graph.vertex_count(), 2);
        assert_eq!(input.graph.weights(), &[2, 3]);
        assert_eq!(input.boundary.curves.len(), 1);
        assert_eq!(input.boundary.curves[0].coefficient, rat(1, 2));
        let d = input.d_data.unwrap();
        assert_eq!(d.d_squared, rat(5, 2));
        assert_eq!(d.min_dc, Some(rat(2, 1)));
        assert!(d.components.is_empty());
    }

    #[test]
    fn bad_rational_names_the_field() {
        let err = parse(
            r#"
            vertices = [{ id = "1", weight = 2 }]
            [[boundary]]
            coeff = "1/0"
            incidence = { "1" = 1 }
            "#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "boundary[0].coeff: invalid rational '1/0'");
    }

    #[test]
    fn unknown_incidence_vertex_names_the_field() {
        let err = parse(
            r#"
            vertices = [{ id = "1", weight = 2 }]
            [[boundary]]
            coeff = "1/2"
            incidence = { "ghost" = 1 }
            "#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "boundary[0].incidence: unknown vertex 'ghost'");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse(
            r#"
            vertices = [{ id = "1", weight = 2 }]
            surprise = true
            "#,
        )
        .unwrap_err();
        assert!(matches!(err, InputError::Syntax(_)), "{err}");
    }

    #[test]
    fn graph_validation_errors_surface() {
        let err = parse(
            r#"
            vertices = [{ id = "1", weight = 2 }, { id = "2", weight = 2 }]
            "#,
        )
        .unwrap_err();
        // two vertices, no edges: disconnected
        assert!(err.to_string().starts_with("vertices/edges:"), "{err}");
    }

    #[test]
    fn d_components_parse_like_boundary_curves() {
        let input = parse(
            r#"
            vertices = [{ id = "1", weight = 3 }]

            [d_data]
            d_squared = "1"
            d_components = [{ coeff = "2", incidence = { "1" = 1 } }]
            "#,
        )
        .unwrap();
        let d = input.d_data.unwrap();
        assert_eq!(d.components.curves.len(), 1);
        assert_eq!(d.min_dc, None);
    }
}
