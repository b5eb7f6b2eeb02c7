//! On-disk result cache, keyed by a content hash of everything a result depends on.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use hypermaps::permcount::CountTable;
use hypermaps::specrec::{required_lower, OmegaDatum, OmegaTable};
use hypermaps::{Result, VERSION};

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize)]
struct OmegaKey<'a> {
    version: &'a str,
    kind: &'a str,
    a: u32,
    g: u32,
    n: usize,
    route: String,
    orientation: String,
    order: i64,
}

#[derive(Serialize)]
struct CountKey<'a> {
    version: &'a str,
    kind: &'a str,
    a: u32,
    g: u32,
    n: usize,
}

fn digest<T: Serialize>(key: &T) -> String {
    let bytes = serde_json::to_vec(key).expect("cache keys serialize");
    hex::encode(Sha256::digest(&bytes))[..16].to_string()
}

impl Cache {
    /// Opens (creating if needed) a cache directory; None when it is not writable.
    pub fn open(dir: &Path) -> Option<Self> {
        fs::create_dir_all(dir).ok()?;
        let probe = dir.join(".probe");
        fs::write(&probe, b"").ok()?;
        let _ = fs::remove_file(probe);
        Some(Cache { dir: dir.to_path_buf() })
    }

    fn omega_path(&self, table: &OmegaTable, g: u32, n: usize) -> PathBuf {
        let key = OmegaKey {
            version: VERSION,
            kind: "omega",
            a: table.a(),
            g,
            n,
            route: format!("{:?}", table.route()),
            orientation: format!("{:?}", table.orientation()),
            order: table.order_for(g, n),
        };
        self.dir.join(format!("omega-a{}-g{g}-n{n}-{}.json", table.a(), digest(&key)))
    }

    fn counts_path(&self, a: u32, g: u32, n: usize) -> PathBuf {
        let key = CountKey { version: VERSION, kind: "counts", a, g, n };
        self.dir.join(format!("counts-a{a}-g{g}-n{n}-{}.json", digest(&key)))
    }

    /// ω_{g,n} from the cache where present, computing and storing it otherwise.
    /// Lower correlators go through the cache as well.
    pub fn omega(&self, table: &OmegaTable, g: u32, n: usize) -> Result<Arc<OmegaDatum>> {
        if let Some(d) = table.cached(g, n) {
            return Ok(d);
        }
        for (h, k) in required_lower(g, n) {
            self.omega(table, h, k)?;
        }
        let path = self.omega_path(table, g, n);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(d) = OmegaDatum::from_json(&text) {
                if d.check_invariants().is_ok() && (d.a, d.g, d.n) == (table.a(), g, n) {
                    return table.insert(d);
                }
            }
        }
        let d = table.omega(g, n)?;
        write_atomic(&path, &d.to_json()?)?;
        Ok(d)
    }

    pub fn counts(&self, a: u32, g: u32, n: usize) -> CountTable {
        fs::read_to_string(self.counts_path(a, g, n))
            .ok()
            .and_then(|t| CountTable::from_json(&t).ok())
            .unwrap_or_default()
    }

    pub fn store_counts(&self, a: u32, g: u32, n: usize, table: &CountTable) -> Result<()> {
        write_atomic(&self.counts_path(a, g, n), &table.to_json()?)
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)?;
    Ok(())
}
