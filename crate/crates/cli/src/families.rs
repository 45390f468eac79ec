//! Graph arguments: a named family or a path to a graph JSON file.

use homplex_core::cyclic::staircase_graph;
use homplex_core::dissection::{build_independence_graph, DissectionParams};
use homplex_core::graph::{Graph, GraphJson};
use homplex_core::{Error, Result};

/// Parses `K<n>`, `C<n>`, `E<n>`, `P<n>`, `I<k>_<m>`, `S<r>_<s>`, or reads
/// `{"n": .., "edges": [[u, v], ..]}` from a file.
pub fn parse_graph(spec: &str) -> Result<Graph> {
    if let Some(g) = parse_family(spec)? {
        return Ok(g);
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec:?} is neither a graph family nor a readable file: {e}")))?;
    let json: GraphJson = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    Graph::from_json(&json)
}

fn parse_family(spec: &str) -> Result<Option<Graph>> {
    let mut chars = spec.chars();
    let Some(kind) = chars.next() else {
        return Err(Error::Parse("empty graph spec".into()));
    };
    let rest = chars.as_str();
    let numbers: Option<Vec<usize>> = rest.split('_').map(|x| x.parse().ok()).collect();
    let Some(numbers) = numbers else {
        return Ok(None);
    };
    let graph = match (kind, numbers.as_slice()) {
        ('K', &[n]) => Graph::complete(n),
        ('C', &[n]) if n >= 3 => Graph::cycle(n),
        ('C', &[n]) => return Err(Error::Parse(format!("cycle needs at least 3 vertices, got C{n}"))),
        ('E', &[n]) => Graph::empty(n),
        ('P', &[n]) => Graph::path(n),
        ('I', &[k, m]) => build_independence_graph(DissectionParams::new(k, m)?),
        ('S', &[r, s]) if r >= 1 && s >= 1 => staircase_graph(r, s),
        ('S', _) => return Err(Error::Parse(format!("staircase graph needs r, s >= 1: {spec}"))),
        _ => return Ok(None),
    };
    Ok(Some(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(parse_graph("K4").unwrap().edge_count(), 6);
        assert_eq!(parse_graph("C5").unwrap().edge_count(), 5);
        assert_eq!(parse_graph("E3").unwrap().edge_count(), 0);
        assert_eq!(parse_graph("P3").unwrap().edge_count(), 2);
        assert_eq!(parse_graph("I4_3").unwrap().n(), 8);
        assert_eq!(parse_graph("S2_2").unwrap().n(), 4);
        assert!(parse_graph("C2").is_err());
        assert!(parse_graph("no/such/file.json").is_err());
    }
}
