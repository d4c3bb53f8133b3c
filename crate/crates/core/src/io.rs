//! Serialization schemas and the on-disk cache.
//!
//! Rationals cross every boundary as decimal strings, never floats. Term
//! order, record order, and JSON field order are all deterministic, so two
//! runs with identical flags produce byte-identical artifact files. Cache
//! files carry a format-version stamp; stale versions are ignored and
//! recomputed, never migrated.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{BcPolynomial, ProfileKey};
use crate::error::{CoreError, Result};
use crate::poly::{LaurentPoly, RationalFn};
use crate::rational::{format_rat, parse_rat};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LaurentJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RationalFnJson {
    pub num: LaurentJson,
    pub den: LaurentJson,
}

/// An Eynard-Orantin density: the Laurent schema plus its key.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct EoFormJson {
    pub g: u32,
    pub v: u32,
    #[serde(flatten)]
    pub poly: LaurentJson,
}

pub fn laurent_to_json(p: &LaurentPoly, var_prefix: &str) -> LaurentJson {
    LaurentJson {
        vars: (1..=p.nvars()).map(|i| format!("{var_prefix}{i}")).collect(),
        terms: p
            .terms()
            .map(|(e, c)| TermJson { exp: e.clone(), coef: format_rat(c) })
            .collect(),
    }
}

pub fn laurent_from_json(json: &LaurentJson) -> Result<LaurentPoly> {
    let nvars = json.vars.len();
    let mut out = LaurentPoly::zero(nvars);
    for term in &json.terms {
        if term.exp.len() != nvars {
            return Err(CoreError::InvalidInput(format!(
                "exponent vector {:?} does not match {} variables",
                term.exp, nvars
            )));
        }
        out.add_term(term.exp.clone(), parse_rat(&term.coef)?);
    }
    Ok(out)
}

pub fn ratfn_to_json(f: &RationalFn, var_prefix: &str) -> RationalFnJson {
    RationalFnJson {
        num: laurent_to_json(f.num(), var_prefix),
        den: laurent_to_json(f.den(), var_prefix),
    }
}

pub fn ratfn_from_json(json: &RationalFnJson) -> Result<RationalFn> {
    RationalFn::new(laurent_from_json(&json.num)?, laurent_from_json(&json.den)?)
}

/// One Catalan-table record: value as a decimal integer string.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CatalanRecordJson {
    pub g: u32,
    pub v: u32,
    pub n: Vec<u32>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BcTermJson {
    pub eb: u32,
    pub ec: u32,
    pub coef: String,
}

/// One Motzkin-table record: the (b, c)-polynomial as term records.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MotzkinRecordJson {
    pub g: u32,
    pub v: u32,
    pub n: Vec<u32>,
    pub value: Vec<BcTermJson>,
}

pub fn catalan_records(entries: &[(ProfileKey, num_bigint::BigInt)]) -> Vec<CatalanRecordJson> {
    let mut records: Vec<CatalanRecordJson> = entries
        .iter()
        .map(|(key, value)| CatalanRecordJson {
            g: key.genus(),
            v: key.vertices() as u32,
            n: key.degrees().to_vec(),
            value: value.to_string(),
        })
        .collect();
    records.sort_by(|a, b| (a.g, a.v, &a.n).cmp(&(b.g, b.v, &b.n)));
    records
}

pub fn motzkin_records(entries: &[(ProfileKey, BcPolynomial)]) -> Vec<MotzkinRecordJson> {
    let mut records: Vec<MotzkinRecordJson> = entries
        .iter()
        .map(|(key, value)| MotzkinRecordJson {
            g: key.genus(),
            v: key.vertices() as u32,
            n: key.degrees().to_vec(),
            value: value
                .terms()
                .map(|(&(eb, ec), coef)| BcTermJson { eb, ec, coef: coef.to_string() })
                .collect(),
        })
        .collect();
    records.sort_by(|a, b| (a.g, a.v, &a.n).cmp(&(b.g, b.v, &b.n)));
    records
}

pub fn motzkin_record_to_poly(record: &MotzkinRecordJson) -> Result<BcPolynomial> {
    let mut out = BcPolynomial::zero();
    for term in &record.value {
        let coef = term
            .coef
            .parse()
            .map_err(|_| CoreError::InvalidInput(format!("bad coefficient {:?}", term.coef)))?;
        out.add_term(term.eb, term.ec, coef);
    }
    Ok(out)
}

/// FNV-1a over the serialized bytes; cheap and deterministic, used only to
/// detect accidental cache corruption.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub kind: String,
    pub g: u32,
    pub v: u32,
    pub file: String,
    pub hash: String,
}

/// One file per (table kind, g, v) plus a manifest. A manifest with the
/// wrong format version invalidates everything beneath it.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    manifest: Manifest,
}

impl DiskCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let manifest_path = dir.join("manifest.json");
        let manifest = match fs::read(&manifest_path) {
            Ok(bytes) => match serde_json::from_slice::<Manifest>(&bytes) {
                Ok(m) if m.version == FORMAT_VERSION => m,
                // Stale or unreadable: ignore, start fresh.
                _ => Manifest { version: FORMAT_VERSION, entries: Vec::new() },
            },
            Err(_) => Manifest { version: FORMAT_VERSION, entries: Vec::new() },
        };
        Ok(Self { dir, manifest })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    fn file_name(kind: &str, g: u32, v: u32) -> String {
        format!("{kind}_g{g}_v{v}.json")
    }

    fn write_manifest(&self) -> Result<()> {
        let bytes = serde_json::to_vec_pretty(&self.manifest)?;
        fs::write(self.dir.join("manifest.json"), bytes)?;
        Ok(())
    }

    pub fn store_laurent(&mut self, kind: &str, g: u32, v: u32, value: &LaurentPoly) -> Result<()> {
        let file = Self::file_name(kind, g, v);
        let bytes = serde_json::to_vec_pretty(&laurent_to_json(value, "t"))?;
        let hash = content_hash(&bytes);
        fs::write(self.dir.join(&file), &bytes)?;
        self.manifest.entries.retain(|e| !(e.kind == kind && e.g == g && e.v == v));
        self.manifest.entries.push(ManifestEntry { kind: kind.into(), g, v, file, hash });
        self.manifest.entries.sort_by(|a, b| (&a.kind, a.g, a.v).cmp(&(&b.kind, b.g, b.v)));
        self.write_manifest()
    }

    /// Stores one (kind, g, v) group of table records.
    pub fn store_records<T: Serialize>(&mut self, kind: &str, g: u32, v: u32, records: &[T]) -> Result<()> {
        let file = Self::file_name(kind, g, v);
        let bytes = serde_json::to_vec_pretty(records)?;
        let hash = content_hash(&bytes);
        fs::write(self.dir.join(&file), &bytes)?;
        self.manifest.entries.retain(|e| !(e.kind == kind && e.g == g && e.v == v));
        self.manifest.entries.push(ManifestEntry { kind: kind.into(), g, v, file, hash });
        self.manifest.entries.sort_by(|a, b| (&a.kind, a.g, a.v).cmp(&(&b.kind, b.g, b.v)));
        self.write_manifest()
    }

    /// Loads every stored record group of the given kind.
    pub fn load_all_records<T: for<'de> Deserialize<'de>>(&self, kind: &str) -> Vec<T> {
        let mut out = Vec::new();
        for entry in self.manifest.entries.iter().filter(|e| e.kind == kind) {
            let Ok(bytes) = fs::read(self.dir.join(&entry.file)) else { continue };
            if content_hash(&bytes) != entry.hash {
                continue;
            }
            if let Ok(records) = serde_json::from_slice::<Vec<T>>(&bytes) {
                out.extend(records);
            }
        }
        out
    }

    /// Returns the cached polynomial if present, version-valid, and
    /// hash-consistent; anything else reads as a miss.
    pub fn load_laurent(&self, kind: &str, g: u32, v: u32) -> Option<LaurentPoly> {
        let entry = self
            .manifest
            .entries
            .iter()
            .find(|e| e.kind == kind && e.g == g && e.v == v)?;
        let bytes = fs::read(self.dir.join(&entry.file)).ok()?;
        if content_hash(&bytes) != entry.hash {
            return None;
        }
        let json: LaurentJson = serde_json::from_slice(&bytes).ok()?;
        laurent_from_json(&json).ok()
    }
}

/// Machine-readable verification report.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub version: u32,
    /// Unix seconds; the only nondeterministic field, confined to the header.
    pub timestamp: u64,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub detail: String,
}

/// Per-coefficient comparison record for the bridge suite report.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CoefficientComparison {
    pub n: Vec<u32>,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

pub fn bridge_coefficient_report(
    coefficients: &BTreeMap<Vec<u32>, crate::rational::Rat>,
    expected: &BTreeMap<Vec<u32>, crate::rational::Rat>,
) -> Vec<CoefficientComparison> {
    let mut keys: Vec<Vec<u32>> = coefficients.keys().chain(expected.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|n| {
            let zero = crate::rational::Rat::from_integer(0.into());
            let want = expected.get(&n).unwrap_or(&zero);
            let got = coefficients.get(&n).unwrap_or(&zero);
            CoefficientComparison {
                n,
                expected: format_rat(want),
                actual: format_rat(got),
                pass: want == got,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::FreeEnergies;
    use crate::rational::rat;

    #[test]
    fn laurent_roundtrip_and_determinism() {
        let mut fe = FreeEnergies::new();
        let f = fe.get_or_compute(0, 3).unwrap();
        let json = laurent_to_json(&f, "t");
        assert_eq!(json.vars, vec!["t1", "t2", "t3"]);
        let back = laurent_from_json(&json).unwrap();
        assert_eq!(back, f);
        let a = serde_json::to_string(&json).unwrap();
        let b = serde_json::to_string(&laurent_to_json(&f, "t")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ratfn_roundtrip() {
        use crate::poly::RationalFn;
        let t1 = LaurentPoly::var(2, 0);
        let t2 = LaurentPoly::var(2, 1);
        let f = RationalFn::new(&t2 + &LaurentPoly::one(2), &(&t1 - &LaurentPoly::one(2)) * &(&t1 + &t2))
            .unwrap();
        let json = ratfn_to_json(&f, "t");
        assert_eq!(ratfn_from_json(&json).unwrap(), f);
    }

    #[test]
    fn coef_strings_are_exact() {
        let mut p = LaurentPoly::zero(1);
        p.add_term(vec![-3], rat(-7, 12));
        let json = laurent_to_json(&p, "t");
        assert_eq!(json.terms[0].coef, "-7/12");
        assert_eq!(laurent_from_json(&json).unwrap(), p);
    }

    #[test]
    fn disk_cache_roundtrip_and_version_stamp() {
        let dir = tempfile::tempdir().unwrap();
        let mut fe = FreeEnergies::new();
        let f = fe.get_or_compute(1, 1).unwrap();
        {
            let mut cache = DiskCache::open(dir.path()).unwrap();
            cache.store_laurent("F", 1, 1, &f).unwrap();
        }
        {
            let cache = DiskCache::open(dir.path()).unwrap();
            assert_eq!(cache.load_laurent("F", 1, 1), Some(f.clone()));
            assert_eq!(cache.load_laurent("F", 0, 3), None);
        }
        // A stale version stamp invalidates the whole cache.
        let manifest_path = dir.path().join("manifest.json");
        let text = std::fs::read_to_string(&manifest_path).unwrap();
        std::fs::write(&manifest_path, text.replace("\"version\": 1", "\"version\": 999")).unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        assert_eq!(cache.load_laurent("F", 1, 1), None);
    }

    #[test]
    fn corrupted_payload_reads_as_miss() {
        let dir = tempfile::tempdir().unwrap();
        let mut fe = FreeEnergies::new();
        let f = fe.get_or_compute(1, 1).unwrap();
        let mut cache = DiskCache::open(dir.path()).unwrap();
        cache.store_laurent("F", 1, 1, &f).unwrap();
        std::fs::write(dir.path().join("F_g1_v1.json"), b"{\"vars\":[],\"terms\":[]}").unwrap();
        let reopened = DiskCache::open(dir.path()).unwrap();
        assert_eq!(reopened.load_laurent("F", 1, 1), None);
    }
}
