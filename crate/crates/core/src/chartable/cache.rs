//! On-disk character tables, one JSON file per `(n, q)`. Files are fully
//! re-validated on read; anything inconsistent is reported as an error so the
//! caller can rebuild.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CharacterTable, IrreducibleCharacter};
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::GeneralLinearGroup;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Uncached,
    Hit,
    Built,
    Rebuilt,
}

#[derive(Serialize, Deserialize)]
struct CachedClass {
    label: String,
    size: String,
    centralizer_order: String,
}

#[derive(Serialize, Deserialize)]
struct CachedCharacter {
    degree: u64,
    values: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CachedTable {
    format_version: u32,
    n: usize,
    q: u32,
    exponent: u64,
    group_order: String,
    splitting_prime: u64,
    classes: Vec<CachedClass>,
    characters: Vec<CachedCharacter>,
}

pub fn cache_path(dir: &Path, n: usize, q: u32) -> PathBuf {
    dir.join(format!("gl{n}_q{q}.json"))
}

pub fn to_json(table: &CharacterTable) -> Result<String> {
    let doc = CachedTable {
        format_version: FORMAT_VERSION,
        n: table.spec().n,
        q: table.spec().q(),
        exponent: table.exponent(),
        group_order: table.group().order().to_string(),
        splitting_prime: table.splitting_prime(),
        classes: table
            .classes()
            .iter()
            .map(|c| CachedClass {
                label: c.label.to_compact(),
                size: c.size.to_string(),
                centralizer_order: c.centralizer_order.to_string(),
            })
            .collect(),
        characters: table
            .chars()
            .iter()
            .map(|c| CachedCharacter {
                degree: c.degree,
                values: c.values.iter().map(CyclotomicNumber::to_cache_string).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Parses and validates a cached table against the freshly enumerated group.
pub fn from_json(text: &str, group: Arc<GeneralLinearGroup>) -> Result<CharacterTable> {
    let doc: CachedTable = serde_json::from_str(text)?;
    let bad = |what: &str| Error::Cache(format!("cached table has a mismatched {what}"));
    if doc.format_version != FORMAT_VERSION {
        return Err(bad("format version"));
    }
    if doc.n != group.n() || doc.q != group.field().q() {
        return Err(bad("group"));
    }
    if doc.exponent != group.exponent() || doc.group_order != group.order().to_string() {
        return Err(bad("header"));
    }
    if doc.classes.len() != group.num_classes() {
        return Err(bad("class count"));
    }
    for (c, d) in doc.classes.iter().zip(group.classes()) {
        if c.label != d.label.to_compact()
            || c.size != d.size.to_string()
            || c.centralizer_order != d.centralizer_order.to_string()
        {
            return Err(bad("class list"));
        }
    }
    let chars = doc
        .characters
        .into_iter()
        .map(|c| {
            let values = c
                .values
                .iter()
                .map(|s| CyclotomicNumber::parse_cache_string(s).ok_or_else(|| bad("value")))
                .collect::<Result<Vec<_>>>()?;
            Ok(IrreducibleCharacter { values, degree: c.degree })
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterTable::from_parts(group, chars, doc.splitting_prime)
        .map_err(|e| Error::Cache(format!("cached table fails validation: {e}")))
}

/// `Ok(None)` when no file exists; an error when one exists but is unusable.
pub fn load(dir: &Path, group: Arc<GeneralLinearGroup>) -> Result<Option<CharacterTable>> {
    let path = cache_path(dir, group.n(), group.field().q());
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    from_json(&text, group).map(Some)
}

/// Writes atomically via a temporary file in the same directory.
pub fn store(dir: &Path, table: &CharacterTable) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, table.spec().n, table.spec().q());
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    fs::write(&tmp, to_json(table)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}
