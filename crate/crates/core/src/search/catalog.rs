use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::canonical_code;
use super::SearchError;
use crate::graph::{read_graph6_lines, Combinations, Graph, Graph6Error, VertexSet};

/// Largest order the built-in generator handles.
pub const GENERATE_MAX_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogSource {
    Generated,
    File(PathBuf),
}

impl fmt::Display for CatalogSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSource::Generated => f.write_str("generated"),
            CatalogSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    AsIs,
    Canonical,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub source: CatalogSource,
    pub order: usize,
    pub graphs: Vec<Graph>,
    pub dedup: DedupMode,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

/// Every graph of order `n` up to isomorphism, in canonical labelling and
/// sorted by canonical code.
///
/// Order `m` graphs are grown from the order `m - 1` list by adding a
/// vertex of maximum degree: its neighbourhood `S` must be at least as
/// large as every degree it creates.
pub fn generate(n: usize) -> Result<Catalog, SearchError> {
    if n > GENERATE_MAX_ORDER {
        return Err(SearchError::OrderTooLargeForGenerate {
            order: n,
            max: GENERATE_MAX_ORDER,
        });
    }
    let mut level = vec![Graph::empty(n.min(1)).expect("small order")];
    for m in 2..=n {
        level = extend(&level, m);
    }
    Ok(Catalog {
        source: CatalogSource::Generated,
        order: n,
        graphs: level,
        dedup: DedupMode::Canonical,
    })
}

fn extend(parents: &[Graph], m: usize) -> Vec<Graph> {
    let mut codes: Vec<u64> = parents
        .par_iter()
        .flat_map_iter(|h| {
            let mut local = HashSet::new();
            let delta = h.max_degree();
            let all = h.vertices();
            for size in delta..m {
                for s in Combinations::new(all, size) {
                    let admissible = all.iter().all(|w| {
                        let d = h.degree(w);
                        if s.contains(w) {
                            d < size
                        } else {
                            d <= size
                        }
                    });
                    if admissible {
                        local.insert(pack(&canonical_code(&grow(h, s))));
                    }
                }
            }
            local.into_iter()
        })
        .collect();
    codes.par_sort_unstable();
    codes.dedup();
    codes.into_iter().map(|c| unpack(c, m)).collect()
}

fn grow(h: &Graph, s: VertexSet) -> Graph {
    let n = h.order();
    let mut rows = h.rows().to_vec();
    for w in s {
        rows[w] |= 1 << n;
    }
    rows.push(s.bits());
    Graph::from_rows_unchecked(rows)
}

/// Upper triangle of the rows, row by row; fits in a word up to order 11.
fn pack(rows: &[u64]) -> u64 {
    let n = rows.len();
    debug_assert!(n * n.saturating_sub(1) / 2 <= 64);
    let mut code = 0u64;
    let mut shift = 0;
    for (i, &row) in rows.iter().enumerate() {
        let upper = row >> (i + 1);
        code |= upper << shift;
        shift += n - i - 1;
    }
    code
}

fn unpack(code: u64, n: usize) -> Graph {
    let mut rows = vec![0u64; n];
    let mut shift = 0;
    for i in 0..n {
        let width = n - i - 1;
        let upper = if width == 0 { 0 } else { (code >> shift) & ((1u64 << width) - 1) };
        rows[i] |= upper << (i + 1);
        for j in VertexSet::from_bits(upper << (i + 1)) {
            rows[j] |= 1 << i;
        }
        shift += width;
    }
    Graph::from_rows_unchecked(rows)
}

/// Result of reading a graph6 file.
#[derive(Debug)]
pub struct Ingested {
    pub catalog: Catalog,
    /// Lines skipped in lenient mode.
    pub skipped: Vec<Graph6Error>,
}

/// Reads a graph6 file of graphs of a single order (the order of the first
/// graph). In canonical mode, later isomorphic copies are dropped.
pub fn ingest(path: &Path, dedup: DedupMode, lenient: bool) -> Result<Ingested, SearchError> {
    let file = File::open(path).map_err(|e| SearchError::FileUnreadable {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    let (lines, mut skipped) = read_graph6_lines(BufReader::new(file), lenient)?;
    let order = lines.first().map_or(0, |l| l.graph.order());
    let mut graphs = Vec::with_capacity(lines.len());
    let mut seen = HashSet::new();
    for l in lines {
        if l.graph.order() != order {
            let err = SearchError::MixedOrder {
                line: l.line,
                expected: order,
                found: l.graph.order(),
            };
            if lenient {
                skipped.push(Graph6Error::Line {
                    line: l.line,
                    source: Box::new(Graph6Error::MalformedEncoding(err.to_string())),
                });
                continue;
            }
            return Err(err);
        }
        if dedup == DedupMode::Canonical && !seen.insert(canonical_code(&l.graph)) {
            continue;
        }
        graphs.push(l.graph);
    }
    Ok(Ingested {
        catalog: Catalog {
            source: CatalogSource::File(path.to_path_buf()),
            order,
            graphs,
            dedup,
        },
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::encode_graph6;
    use std::io::Write;

    /// Labelled graphs of order `n` deduplicated by their smallest packed
    /// code over all vertex permutations.
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        // all permutations, by inserting each vertex at every position
        let mut perms = vec![Vec::<usize>::new()];
        for v in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..=p.len()).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, v);
                        q
                    })
                })
                .collect();
        }
        let mut classes = HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let best = perms
                .iter()
                .map(|p| {
                    let mut code = 0u64;
                    for (b, &(i, j)) in pairs.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            let (a, c) = (p[i].min(p[j]), p[i].max(p[j]));
                            let idx = pairs.iter().position(|&e| e == (a, c)).unwrap();
                            code |= 1 << idx;
                        }
                    }
                    code
                })
                .min()
                .unwrap();
            classes.insert(best);
        }
        classes.len()
    }

    #[test]
    fn small_counts_match_brute_force() {
        for n in 1..=5 {
            assert_eq!(generate(n).unwrap().len(), brute_force_count(n), "n = {n}");
        }
    }

    #[test]
    fn small_order_counts() {
        assert_eq!(generate(1).unwrap().len(), 1);
        assert_eq!(generate(3).unwrap().len(), 4);
        assert_eq!(generate(4).unwrap().len(), 11);
        assert_eq!(generate(7).unwrap().len(), 1044);
        assert!(matches!(
            generate(10),
            Err(SearchError::OrderTooLargeForGenerate { order: 10, .. })
        ));
    }

    #[test]
    fn pack_round_trips() {
        for g in generate(6).unwrap().graphs {
            assert_eq!(unpack(pack(g.rows()), 6), g);
        }
    }

    #[test]
    fn ingest_dedups_isomorphs() {
        let dir = std::env::temp_dir().join(format!("factorcrit-ingest-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.g6");
        let c4 = crate::graph::named::cycle(4);
        let other = c4.relabel(&[2, 0, 3, 1]);
        let mut f = File::create(&path).unwrap();
        writeln!(f, "{}", encode_graph6(&c4)).unwrap();
        writeln!(f, "{}", encode_graph6(&other)).unwrap();
        writeln!(f, "C~").unwrap();
        drop(f);
        let as_is = ingest(&path, DedupMode::AsIs, false).unwrap();
        assert_eq!(as_is.catalog.len(), 3);
        let canon = ingest(&path, DedupMode::Canonical, false).unwrap();
        assert_eq!(canon.catalog.len(), 2);
        assert_eq!(canon.catalog.order, 4);
        assert!(matches!(
            ingest(&dir.join("missing.g6"), DedupMode::AsIs, false),
            Err(SearchError::FileUnreadable { .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
