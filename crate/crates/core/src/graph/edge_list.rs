//! Plain-text edge lists: one `src dst [weight]` per line, `#` starts a
//! comment line, weight defaults to 1.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Edge, EdgeSet, GraphError, VertexId, Weight};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses one data line into an edge. Returns `Ok(None)` for blank and comment lines.
pub fn parse_edge_line(text: &str, line: usize) -> Result<Option<Edge>, EdgeListError> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let fields: Vec<&str> = text.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(EdgeListError::Parse {
            line,
            message: format!("expected `src dst [weight]`, found {} fields", fields.len()),
        });
    }
    let vertex = |s: &str| {
        s.parse::<VertexId>().map_err(|e| EdgeListError::Parse {
            line,
            message: format!("bad vertex id `{s}`: {e}"),
        })
    };
    let weight = match fields.get(2) {
        Some(s) => s.parse::<Weight>().map_err(|e| EdgeListError::Parse {
            line,
            message: format!("bad weight `{s}`: {e}"),
        })?,
        None => 1.0,
    };
    Ok(Some(Edge::new(vertex(fields[0])?, vertex(fields[1])?, weight)))
}

/// Reads an edge list. The vertex count is `max id + 1` (0 for an empty list).
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(EdgeSet, usize), EdgeListError> {
    let mut set = EdgeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        if let Some(edge) = parse_edge_line(&line?, line_no)? {
            set.insert(edge).map_err(|source| EdgeListError::Graph { line: line_no, source })?;
        }
    }
    let vertex_count = set.max_vertex().map_or(0, |m| m as usize + 1);
    Ok((set, vertex_count))
}

/// Writes edges in `(src, dst)` order with an explicit weight on every line.
pub fn write_edge_list<W: Write>(mut out: W, edges: &EdgeSet) -> io::Result<()> {
    for e in edges.iter() {
        writeln!(out, "{} {} {}", e.src, e.dst, e.weight)?;
    }
    Ok(())
}
