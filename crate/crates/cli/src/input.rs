use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use comstruct::{parse_graph6, Graph, VertexSet};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(name = "g6", alias = "graph6")]
    Graph6,
    #[value(name = "edges", alias = "edge-list")]
    Edges,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file, or "-" for stdin
    pub path: Option<PathBuf>,
    /// Inline graph6 string instead of a file
    #[arg(long, conflicts_with = "path")]
    pub g6: Option<String>,
    /// Input format; guessed from the extension or content when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl GraphInput {
    pub fn load(&self) -> Result<Graph, CliError> {
        if let Some(s) = &self.g6 {
            return parse_graph6(s).map_err(|e| CliError::Input(format!("--g6: {e}")));
        }
        let path = self.path.as_deref().ok_or_else(|| {
            CliError::Input("no graph given (pass a file, \"-\", or --g6)".into())
        })?;
        let text = read_source(path)?;
        let format = self
            .format
            .or_else(|| by_extension(path))
            .unwrap_or_else(|| sniff(&text));
        let label = path.display();
        match format {
            Format::Edges => {
                Graph::parse_edge_list(&text).map_err(|e| CliError::Input(format!("{label}: {e}")))
            }
            Format::Graph6 => {
                let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
                let first = lines
                    .next()
                    .ok_or_else(|| CliError::Input(format!("{label}: no graph6 line")))?;
                if lines.next().is_some() {
                    return Err(CliError::Input(format!(
                        "{label}: expected one graph, found several lines (use census for files of graphs)"
                    )));
                }
                parse_graph6(first).map_err(|e| CliError::Input(format!("{label}: {e}")))
            }
        }
    }
}

pub fn read_source(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn by_extension(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()? {
        "g6" | "graph6" => Some(Format::Graph6),
        "edges" | "el" | "txt" => Some(Format::Edges),
        _ => None,
    }
}

/// A graph6 line never contains spaces; an edge list almost always does.
fn sniff(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if !l.contains(char::is_whitespace) && l.parse::<usize>().is_err() => {
            Format::Graph6
        }
        _ => Format::Edges,
    }
}

/// Parses a comma-separated vertex list such as `0,1,2`.
pub fn parse_vertex_list(text: &str, n: usize) -> Result<VertexSet, CliError> {
    let mut set = VertexSet::EMPTY;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v: usize = item
            .parse()
            .map_err(|_| CliError::Input(format!("bad vertex {item:?}")))?;
        if v >= n {
            return Err(CliError::Input(format!(
                "vertex {v} out of range for {n} vertices"
            )));
        }
        set.insert(v);
    }
    Ok(set)
}

/// Generator orders: `7`, `3-7`, or `4,5,6`.
pub fn parse_orders(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("bad order list {text:?}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}
