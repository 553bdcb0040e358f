//! LMFDB ingestion: a small HTTP client for the abelian-varieties-over-F_q
//! collection with a disk cache and an offline mode backed by committed
//! fixture files. The base URL, query template, and field names live in a
//! config so API drift never breaks the library.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// Field names and query shape of the remote API.
#[derive(Clone, Debug, Deserialize)]
#[serde(default)]
pub struct LmfdbConfig {
    pub base_url: String,
    /// Placeholders: `{base}`, `{g}`, `{q}`, `{limit}`.
    pub query_template: String,
    pub rate_limit_per_sec: f64,
    pub fields: FieldNames,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default)]
pub struct FieldNames {
    pub label: String,
    pub g: String,
    pub q: String,
    pub poly: String,
}

impl Default for FieldNames {
    fn default() -> Self {
        FieldNames {
            label: "label".into(),
            g: "g".into(),
            q: "q".into(),
            poly: "poly".into(),
        }
    }
}

impl Default for LmfdbConfig {
    fn default() -> Self {
        LmfdbConfig {
            base_url: "https://www.lmfdb.org/api/av_fqisog".into(),
            query_template: "{base}/?_format=json&g={g}&q={q}&_fields=label,g,q,poly&_limit={limit}"
                .into(),
            rate_limit_per_sec: 1.0,
            fields: FieldNames::default(),
        }
    }
}

impl LmfdbConfig {
    pub fn from_toml_file(path: &Path) -> Result<LmfdbConfig, LmfdbError> {
        let text = fs::read_to_string(path).map_err(|e| LmfdbError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        toml::from_str(&text).map_err(|e| LmfdbError::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })
    }
}

/// One isogeny-class record: label plus the ascending coefficient list of
/// the Weil polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmfdbRecord {
    pub label: String,
    pub g: usize,
    pub q: BigInt,
    pub poly: Vec<BigInt>,
}

#[derive(Debug, thiserror::Error)]
pub enum LmfdbError {
    #[error("network request failed after {attempts} attempts: {detail}")]
    Network { attempts: u32, detail: String },
    #[error("malformed response at {path}: {detail}")]
    Parse { path: String, detail: String },
    #[error("offline and no fixture or cache entry for g={g}, q={q}")]
    CacheMiss { g: usize, q: BigInt },
    #[error("i/o error on {path}: {detail}")]
    Io { path: String, detail: String },
}

pub struct LmfdbClient {
    pub config: LmfdbConfig,
    pub cache_dir: PathBuf,
    pub fixtures_dir: PathBuf,
    pub offline: bool,
}

/// Fixture files committed with the crate (one per (g, q) pair used in
/// tests).
pub fn default_fixtures_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

pub fn fixture_file_name(g: usize, q: &BigInt) -> String {
    format!("av_g{g}_q{q}.json")
}

impl LmfdbClient {
    pub fn new(
        config: LmfdbConfig,
        cache_dir: PathBuf,
        fixtures_dir: PathBuf,
        offline: bool,
    ) -> LmfdbClient {
        LmfdbClient {
            config,
            cache_dir,
            fixtures_dir,
            offline,
        }
    }

    fn query_url(&self, g: usize, q: &BigInt, limit: usize) -> String {
        self.config
            .query_template
            .replace("{base}", &self.config.base_url)
            .replace("{g}", &g.to_string())
            .replace("{q}", &q.to_string())
            .replace("{limit}", &limit.to_string())
    }

    fn cache_path(&self, url: &str) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(url.as_bytes());
        let digest = hasher.finalize();
        self.cache_dir.join(format!("{}.json", hex_of(&digest)))
    }

    /// Fetches the records for `(g, q)`. Resolution order: offline mode
    /// serves fixtures only; online mode serves the disk cache, then the
    /// network (3 attempts, exponential backoff), writing back to cache.
    pub fn fetch(&self, g: usize, q: &BigInt, limit: usize) -> Result<Vec<LmfdbRecord>, LmfdbError> {
        if self.offline {
            let path = self.fixtures_dir.join(fixture_file_name(g, q));
            if !path.exists() {
                return Err(LmfdbError::CacheMiss { g, q: q.clone() });
            }
            let text = fs::read_to_string(&path).map_err(|e| LmfdbError::Io {
                path: path.display().to_string(),
                detail: e.to_string(),
            })?;
            let mut records = parse_records(&text, &self.config.fields, &path.display().to_string())?;
            records.truncate(limit);
            return Ok(records);
        }
        let url = self.query_url(g, q, limit);
        let cache = self.cache_path(&url);
        if cache.exists() {
            let text = fs::read_to_string(&cache).map_err(|e| LmfdbError::Io {
                path: cache.display().to_string(),
                detail: e.to_string(),
            })?;
            return parse_records(&text, &self.config.fields, &cache.display().to_string());
        }
        let text = self.get_with_retries(&url)?;
        let records = parse_records(&text, &self.config.fields, &url)?;
        if let Some(parent) = cache.parent() {
            let _ = fs::create_dir_all(parent);
        }
        fs::write(&cache, &text).map_err(|e| LmfdbError::Io {
            path: cache.display().to_string(),
            detail: e.to_string(),
        })?;
        Ok(records)
    }

    fn get_with_retries(&self, url: &str) -> Result<String, LmfdbError> {
        let rate = self.config.rate_limit_per_sec.max(0.01);
        let pause = Duration::from_secs_f64(1.0 / rate);
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .user_agent("avfq/0.1")
            .build()
            .map_err(|e| LmfdbError::Network {
                attempts: 0,
                detail: e.to_string(),
            })?;
        let mut last = String::new();
        for attempt in 0..3u32 {
            std::thread::sleep(pause);
            match client.get(url).send().and_then(|r| r.error_for_status()) {
                Ok(resp) => match resp.text() {
                    Ok(t) => return Ok(t),
                    Err(e) => last = e.to_string(),
                },
                Err(e) => last = e.to_string(),
            }
            std::thread::sleep(Duration::from_millis(250 << (2 * attempt)));
        }
        Err(LmfdbError::Network {
            attempts: 3,
            detail: last,
        })
    }
}

fn hex_of(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Accepts `{"data": [...]}` (the LMFDB API shape, also used by fixtures).
pub fn parse_records(
    text: &str,
    fields: &FieldNames,
    source: &str,
) -> Result<Vec<LmfdbRecord>, LmfdbError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| LmfdbError::Parse {
            path: source.to_string(),
            detail: e.to_string(),
        })?;
    let data = value
        .get("data")
        .and_then(|d| d.as_array())
        .ok_or_else(|| LmfdbError::Parse {
            path: format!("{source}#data"),
            detail: "missing 'data' array".into(),
        })?;
    let mut out = Vec::with_capacity(data.len());
    for (i, item) in data.iter().enumerate() {
        let at = |field: &str| format!("{source}#data[{i}].{field}");
        let label = item
            .get(&fields.label)
            .and_then(|v| v.as_str())
            .ok_or_else(|| LmfdbError::Parse {
                path: at(&fields.label),
                detail: "missing label".into(),
            })?
            .to_string();
        let g = item
            .get(&fields.g)
            .and_then(|v| v.as_u64())
            .ok_or_else(|| LmfdbError::Parse {
                path: at(&fields.g),
                detail: "missing g".into(),
            })? as usize;
        let q = parse_bigint(item.get(&fields.q), &at(&fields.q))?;
        let poly_val = item.get(&fields.poly).ok_or_else(|| LmfdbError::Parse {
            path: at(&fields.poly),
            detail: "missing poly".into(),
        })?;
        let arr = poly_val.as_array().ok_or_else(|| LmfdbError::Parse {
            path: at(&fields.poly),
            detail: "poly is not an array".into(),
        })?;
        let mut poly = Vec::with_capacity(arr.len());
        for (j, c) in arr.iter().enumerate() {
            poly.push(parse_bigint(Some(c), &format!("{}[{j}]", at(&fields.poly)))?);
        }
        if poly.len() != 2 * g + 1 {
            return Err(LmfdbError::Parse {
                path: at(&fields.poly),
                detail: format!("expected {} coefficients, got {}", 2 * g + 1, poly.len()),
            });
        }
        out.push(LmfdbRecord { label, g, q, poly });
    }
    Ok(out)
}

fn parse_bigint(v: Option<&serde_json::Value>, path: &str) -> Result<BigInt, LmfdbError> {
    let err = |detail: &str| LmfdbError::Parse {
        path: path.to_string(),
        detail: detail.to_string(),
    };
    let v = v.ok_or_else(|| err("missing value"))?;
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s.parse().map_err(|_| err("not an integer string"));
    }
    Err(err("not an integer"))
}

/// LMFDB-style label `g.q.c1_c2_..._cg` with the coefficients of
/// `x^{2g-1}, ..., x^g` letter-coded in base 26 (`a` = 0; a leading `a`
/// marks a negative value).
pub fn lmfdb_label(g: usize, q: &BigInt, poly: &[BigInt]) -> String {
    let codes: Vec<String> = (1..=g)
        .map(|i| encode_coeff(&poly[2 * g - i]))
        .collect();
    format!("{g}.{q}.{}", codes.join("_"))
}

fn encode_coeff(n: &BigInt) -> String {
    use num_traits::Signed;
    if n.is_negative() {
        format!("a{}", encode_nonneg(&-n))
    } else {
        encode_nonneg(n)
    }
}

fn encode_nonneg(n: &BigInt) -> String {
    use num_traits::Zero;
    let base = BigInt::from(26);
    if n.is_zero() {
        return "a".into();
    }
    let mut digits = Vec::new();
    let mut m = n.clone();
    while !m.is_zero() {
        let d: u32 = (&m % &base).try_into().unwrap();
        digits.push(char::from(b'a' + d as u8));
        m /= &base;
    }
    digits.reverse();
    digits.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_encoding() {
        let q5 = BigInt::from(5);
        // x^4 + 6x^2 + 25: a1 = 0 -> "a", a2 = 6 -> "g".
        let poly: Vec<BigInt> = [25, 0, 6, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(lmfdb_label(2, &q5, &poly), "2.5.a_g");
        // x^4 + 2x^3 + x^2 + 8x + 16 over F_4: "2.4.c_b".
        let poly2: Vec<BigInt> = [16, 8, 1, 2, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(lmfdb_label(2, &BigInt::from(4), &poly2), "2.4.c_b");
        // x^4 - x^3 + 4x^2 - 3x + 9 over F_3: "2.3.ab_e".
        let poly3: Vec<BigInt> = [9, -3, 4, -1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(lmfdb_label(2, &BigInt::from(3), &poly3), "2.3.ab_e");
        // Elliptic: x^2 - 3x + 3 over F_3: "1.3.ad".
        let poly4: Vec<BigInt> = [3, -3, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(lmfdb_label(1, &BigInt::from(3), &poly4), "1.3.ad");
        // Base-26 rollover: 26 -> "ba".
        assert_eq!(encode_nonneg(&BigInt::from(26)), "ba");
    }

    #[test]
    fn parse_fixture_shape() {
        let text = r#"{"data": [
            {"label": "2.5.a_g", "g": 2, "q": 5, "poly": [25, 0, 6, 0, 1]},
            {"label": "2.5.a_a", "g": 2, "q": "5", "poly": ["25", "0", "0", "0", "1"]}
        ]}"#;
        let recs = parse_records(text, &FieldNames::default(), "test").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].label, "2.5.a_g");
        assert_eq!(recs[1].q, BigInt::from(5));
        assert_eq!(recs[1].poly[0], BigInt::from(25));

        let bad = r#"{"data": [{"label": "x", "g": 2, "q": 5, "poly": [1, 2]}]}"#;
        assert!(matches!(
            parse_records(bad, &FieldNames::default(), "test"),
            Err(LmfdbError::Parse { .. })
        ));
    }

    #[test]
    fn offline_missing_fixture_is_cache_miss() {
        let tmp = std::env::temp_dir().join("avfq-test-empty-fixtures");
        let _ = std::fs::create_dir_all(&tmp);
        let client = LmfdbClient::new(
            LmfdbConfig::default(),
            tmp.clone(),
            tmp,
            true,
        );
        assert!(matches!(
            client.fetch(2, &BigInt::from(5), 10),
            Err(LmfdbError::CacheMiss { .. })
        ));
    }
}
