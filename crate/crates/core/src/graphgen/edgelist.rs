//! Whitespace-separated edge-list files.
//!
//! One `u v` pair per line; `#` starts a comment. Ids are arbitrary
//! nonnegative integers and are remapped to dense ranks in sorted order, so a
//! file that already uses `0..n` keeps its ids. The mapping can be persisted
//! as a CSV sidecar with header `external_id,internal_id`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use log::warn;

use super::graph::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    /// `id_map[internal] = external`.
    pub id_map: Vec<u64>,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
}

impl EdgeList {
    pub fn dropped(&self) -> usize {
        self.dropped_self_loops + self.dropped_duplicates
    }
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    let path = path.as_ref();
    let file = File::open(path).map_err(Error::at(path))?;
    parse_edge_list(BufReader::new(file), path)
}

/// Parses edge-list text; `origin` is only used in error messages.
pub fn parse_edge_list(reader: impl BufRead, origin: &Path) -> Result<EdgeList> {
    let parse_err = |line: usize, reason: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        reason,
    };
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut self_loops = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("");
        let mut tokens = body.split_whitespace();
        let Some(first) = tokens.next() else {
            continue;
        };
        let second = tokens.next().ok_or_else(|| {
            parse_err(
                idx + 1,
                format!("expected two vertex ids, got `{}`", body.trim()),
            )
        })?;
        if let Some(extra) = tokens.next() {
            return Err(parse_err(idx + 1, format!("unexpected token `{extra}`")));
        }
        let parse_id = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| parse_err(idx + 1, format!("`{s}` is not a nonnegative integer id")))
        };
        let (u, v) = (parse_id(first)?, parse_id(second)?);
        if u == v {
            self_loops += 1;
            continue;
        }
        raw.push((u.min(v), u.max(v)));
    }

    let before = raw.len();
    raw.sort_unstable();
    raw.dedup();
    let duplicates = before - raw.len();

    let mut id_map: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    id_map.sort_unstable();
    id_map.dedup();
    let internal = |x: u64| id_map.binary_search(&x).unwrap();
    let edges: Vec<(usize, usize)> = raw
        .iter()
        .map(|&(u, v)| (internal(u), internal(v)))
        .collect();

    if self_loops + duplicates > 0 {
        warn!(
            "{}: dropped {} self-loop(s) and {} duplicate edge(s)",
            origin.display(),
            self_loops,
            duplicates
        );
    }
    let graph = Graph::from_edges(id_map.len(), &edges)?;
    Ok(EdgeList {
        graph,
        id_map,
        dropped_self_loops: self_loops,
        dropped_duplicates: duplicates,
    })
}

/// Writes `u v` lines with `u <= v` in sorted order.
pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = BufWriter::new(File::create(path).map_err(Error::at(path))?);
    write_edges(g, &mut out)?;
    out.flush().map_err(Error::at(path))?;
    Ok(())
}

pub fn write_edges(g: &Graph, out: &mut impl Write) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_id_map(id_map: &[u64], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = BufWriter::new(File::create(path).map_err(Error::at(path))?);
    writeln!(out, "external_id,internal_id")?;
    for (internal, external) in id_map.iter().enumerate() {
        writeln!(out, "{external},{internal}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_id_map(path: impl AsRef<Path>) -> Result<Vec<u64>> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path).map_err(Error::at(path))?);
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            reason: format!("expected `external_id,internal_id`, got `{line}`"),
        };
        let (ext, int) = line.split_once(',').ok_or_else(bad)?;
        let ext: u64 = ext.trim().parse().map_err(|_| bad())?;
        let int: usize = int.trim().parse().map_err(|_| bad())?;
        pairs.push((int, ext));
    }
    pairs.sort_unstable();
    if pairs.iter().enumerate().any(|(i, &(int, _))| i != int) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            reason: "internal ids are not a dense range".into(),
        });
    }
    Ok(pairs.into_iter().map(|(_, ext)| ext).collect())
}
