//! On-disk catalog of best graphs found: `index.json` plus one canonical
//! graph file per entry under `graphs/`.
//!
//! The index is rewritten through a temp-file-and-rename so it is valid JSON
//! at every crash point; graph files are written the same way. Entries record
//! the metrics of the stored graph and can be re-verified against the file.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::verify::verify;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub r: usize,
    pub z: usize,
    pub k: usize,
    pub n: usize,
    pub status: u64,
    pub norm1: u64,
    pub radius: u32,
    pub diameter: u32,
    pub central_count: usize,
    /// `exact`, `heuristic`, or `external`.
    pub method: String,
    pub proved_optimal: bool,
    /// Path of the graph file relative to the catalog root.
    pub graph_file: String,
    /// Unix seconds.
    pub timestamp: u64,
}

pub struct Catalog {
    root: PathBuf,
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

impl Catalog {
    /// Opens (creating if needed) a catalog rooted at `root`.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        std::fs::create_dir_all(root.join("graphs"))?;
        Ok(Catalog { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn index_path(&self) -> PathBuf {
        self.root.join("index.json")
    }

    pub fn entries(&self) -> Result<Vec<CatalogEntry>> {
        let path = self.index_path();
        if !path.exists() {
            return Ok(Vec::new());
        }
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("catalog index: {e}")))
    }

    /// Stores the graph file and appends an index entry; both writes go
    /// through temp-then-rename.
    pub fn add(
        &self,
        g: &MixedGraph,
        r: usize,
        z: usize,
        method: &str,
        proved_optimal: bool,
    ) -> Result<CatalogEntry> {
        let report = verify(g, r, z);
        let (Some(status), Some(norm1), Some(radius), Some(diameter)) =
            (report.status, report.norm1, report.radius, report.diameter)
        else {
            return Err(Error::InvalidParams(
                "only graphs with finite metrics and matching order are cataloged".into(),
            ));
        };

        let text = g.to_text(r, z);
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest = hasher.finalize();
        let hash: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
        let graph_file = format!("graphs/rm_{r}_{z}_2_{hash}.mrg");
        write_atomic(&self.root.join(&graph_file), &text)?;

        let entry = CatalogEntry {
            r,
            z,
            k: 2,
            n: g.n(),
            status,
            norm1,
            radius,
            diameter,
            central_count: report.central_count,
            method: method.to_string(),
            proved_optimal,
            graph_file,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default().as_secs(),
        };

        let mut entries = self.entries()?;
        entries.push(entry.clone());
        let json = serde_json::to_string_pretty(&entries)
            .map_err(|e| Error::Parse(format!("catalog serialize: {e}")))?;
        write_atomic(&self.index_path(), &json)?;
        Ok(entry)
    }

    /// Re-reads the entry's graph file and checks it still yields the
    /// recorded metrics.
    pub fn reverify(&self, entry: &CatalogEntry) -> Result<bool> {
        let (g, r, z) = MixedGraph::read_file(&self.root.join(&entry.graph_file))?;
        if (r, z) != (entry.r, entry.z) || g.n() != entry.n {
            return Ok(false);
        }
        let report = verify(&g, entry.r, entry.z);
        Ok(report.status == Some(entry.status)
            && report.norm1 == Some(entry.norm1)
            && report.radius == Some(entry.radius)
            && report.diameter == Some(entry.diameter)
            && report.central_count == entry.central_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_exact, SolveOptions};

    fn best_1_1() -> MixedGraph {
        solve_exact(1, 1, &SolveOptions::default()).unwrap().best_graph.unwrap()
    }

    #[test]
    fn add_and_reverify_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = Catalog::open(dir.path()).unwrap();
        let g = best_1_1();
        let entry = catalog.add(&g, 1, 1, "exact", true).unwrap();
        assert_eq!(entry.status, 50);
        assert_eq!(entry.norm1, 2);
        assert!(catalog.reverify(&entry).unwrap());

        let loaded = catalog.entries().unwrap();
        assert_eq!(loaded, vec![entry]);
    }

    #[test]
    fn index_survives_interrupted_writes() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = Catalog::open(dir.path()).unwrap();
        let g = best_1_1();
        catalog.add(&g, 1, 1, "exact", true).unwrap();

        // A crashed writer leaves a half-written temp file behind; the index
        // itself must stay valid and later writes must still succeed.
        std::fs::write(catalog.index_path().with_extension("tmp"), "{ truncated").unwrap();
        let before = catalog.entries().unwrap();
        assert_eq!(before.len(), 1);

        catalog.add(&g, 1, 1, "exact", true).unwrap();
        let after = catalog.entries().unwrap();
        assert_eq!(after.len(), 2);
        for entry in &after {
            assert!(catalog.reverify(entry).unwrap());
        }
    }

    #[test]
    fn reverify_detects_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = Catalog::open(dir.path()).unwrap();
        let g = best_1_1();
        let entry = catalog.add(&g, 1, 1, "exact", true).unwrap();
        let tree = crate::moore::moore_tree(1, 1).unwrap();
        tree.graph.write_file(&dir.path().join(&entry.graph_file), 1, 1).unwrap();
        assert!(!catalog.reverify(&entry).unwrap());
    }

    #[test]
    fn unverifiable_graphs_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = Catalog::open(dir.path()).unwrap();
        let tree = crate::moore::moore_tree(1, 1).unwrap();
        // The bare tree has unreachable pairs, so it has no finite status.
        assert!(catalog.add(&tree.graph, 1, 1, "external", false).is_err());
    }
}
