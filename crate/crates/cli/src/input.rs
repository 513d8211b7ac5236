use std::fs;
use std::path::Path;

use cordiality::io::parse_graph6_lines;
use cordiality::corpus::SpecError;
use cordiality::{Graph, GraphError, GraphSpec};

use crate::CliError;

/// Graphs named by a generator spec or listed one graph6 string per line.
pub fn load(spec: Option<&str>, file: Option<&Path>) -> Result<Vec<Graph>, CliError> {
    match (spec, file) {
        (Some(s), None) => {
            let spec: GraphSpec = s.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            spec.graphs().map_err(|e| match e {
                SpecError::Graph(GraphError::TooManyVertices(_)) => CliError::Refused(format!("{spec}: {e}")),
                SpecError::Graph(GraphError::EnumerationRange { n, max }) if n > max => {
                    CliError::Refused(format!("{spec}: {e}"))
                }
                _ => CliError::Input(format!("{spec}: {e}")),
            })
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            parse_graph6_lines(&text)
                .map_err(|(line, e)| CliError::Input(format!("{}:{}: {e}", path.display(), line)))
        }
        _ => Err(CliError::Input("give exactly one of --graph or --file".into())),
    }
}
