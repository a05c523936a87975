use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::PathBuf;

use clap::Args;
use factorcrit::graph::{parse_graph6, read_graph6_lines, Graph};

#[derive(Debug, Args)]
pub struct Input {
    /// Graph in graph6 format. Without it (and without --file) graphs are
    /// read from stdin, one per line.
    pub graph: Option<String>,
    /// Read graphs from a graph6 file, one per line.
    #[arg(long, conflicts_with = "graph")]
    pub file: Option<PathBuf>,
    /// Skip malformed lines instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

impl Input {
    pub fn graphs(&self) -> Result<Vec<Graph>, String> {
        if let Some(text) = &self.graph {
            return parse_graph6(text.trim().as_bytes())
                .map(|g| vec![g])
                .map_err(|e| format!("cannot parse {text:?}: {e}"));
        }
        let reader: Box<dyn BufRead> = match &self.file {
            Some(path) => Box::new(BufReader::new(
                File::open(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
            )),
            None => Box::new(BufReader::new(io::stdin())),
        };
        let (lines, skipped) = read_graph6_lines(reader, self.lenient).map_err(|e| e.to_string())?;
        for s in &skipped {
            eprintln!("skipped {s}");
        }
        if lines.is_empty() {
            return Err("no graphs in input".into());
        }
        Ok(lines.into_iter().map(|l| l.graph).collect())
    }
}

pub fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected u,v but got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad vertex {t:?}: {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}
