//! On-disk cache of echelonized ideal slices.
//!
//! A file is keyed by the SHA-256 of the engine version, the canonical
//! presentation JSON and the degree range, so any change to the relations or to
//! the engine invalidates it. Results are recomputed from the slices, which makes
//! a hit byte-identical to a cold run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use taut_core::polyring::{parse_rational, DegreeSlice, Row, SliceSet};
use taut_core::presentation::Presentation;
use taut_core::quotient::GradedQuotient;
use taut_core::ENGINE_VERSION;

use crate::CliError;

#[derive(Serialize, Deserialize)]
struct CachedSlice {
    degree: u32,
    rows: Vec<Vec<(u32, String)>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    engine: String,
    key: String,
    max_degree: u32,
    slices: Vec<CachedSlice>,
}

pub fn cache_key(pres: &Presentation, max_degree: u32) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update(b"\n");
    h.update(pres.to_json_string().as_bytes());
    h.update(format!("\nmax_degree={max_degree}").as_bytes());
    hex::encode(h.finalize())
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

fn load(path: &Path, key: &str, pres: &Presentation, max_degree: u32) -> Option<GradedQuotient> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.engine != ENGINE_VERSION || file.key != key || file.max_degree != max_degree {
        return None;
    }
    let mut slices = Vec::with_capacity(file.slices.len());
    for s in file.slices {
        let rows: Vec<Row> = s
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| parse_rational(&v).map(|q| (c, q))).collect::<Option<Row>>())
            .collect::<Option<_>>()?;
        slices.push(DegreeSlice::from_echelon_rows(pres.ring(), s.degree, rows).ok()?);
    }
    GradedQuotient::from_slices(pres.ring().clone(), SliceSet::from_slices(slices), max_degree).ok()
}

fn store(path: &Path, key: &str, quot: &GradedQuotient) -> Result<(), CliError> {
    let slices = quot
        .slices()
        .iter()
        .map(|s| CachedSlice {
            degree: s.degree(),
            rows: s.echelon().rows().iter().map(|r| r.iter().map(|(c, v)| (*c, v.to_string())).collect()).collect(),
        })
        .collect();
    let file = CacheFile { engine: ENGINE_VERSION.into(), key: key.into(), max_degree: quot.max_degree(), slices };
    let text = serde_json::to_string(&file).map_err(std::io::Error::other)?;
    // Write then rename so a concurrent reader never sees a partial file.
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Slices `0..=max_degree` of `pres`, from the cache when possible.
pub fn quotient(dir: Option<&Path>, pres: &Presentation, max_degree: u32) -> Result<GradedQuotient, CliError> {
    let Some(dir) = dir else {
        return Ok(GradedQuotient::new(pres, max_degree)?);
    };
    let key = cache_key(pres, max_degree);
    let path = path_for(dir, &key);
    if let Some(q) = load(&path, &key, pres, max_degree) {
        return Ok(q);
    }
    let q = GradedQuotient::new(pres, max_degree)?;
    fs::create_dir_all(dir)?;
    store(&path, &key, &q)?;
    Ok(q)
}
