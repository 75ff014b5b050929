//! Gset instance acquisition, parsing and metadata registry.
//!
//! Instances are plain text: a header line `n m` followed by `m` edge lines
//! `u v w` with 1-based vertex indices and integer weights. Files in the
//! wild vary in whitespace, so any run of spaces/tabs/newlines separates
//! tokens; errors are reported with the line they occur on.
//!
//! Remote files are cached as `<cache_dir>/<id>.gset` next to a
//! `<id>.sha256` content checksum. The default cache directory comes from
//! the `CUTBENCH_CACHE_DIR` environment variable; the download base URL
//! can be overridden with `CUTBENCH_GSET_URL`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{Adjacency, Weight};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "CUTBENCH_CACHE_DIR";
/// Environment variable overriding the download base URL.
pub const BASE_URL_ENV: &str = "CUTBENCH_GSET_URL";
/// Canonical host of the Gset collection.
pub const DEFAULT_BASE_URL: &str = "https://web.stanford.edu/~yyye/yyye/Gset/";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected integer, found {token:?}")]
    NonInteger { line: usize, token: String },
    #[error("line {line}: vertex index {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: i64, n: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: i64 },
    #[error("line {line}: duplicate undirected edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: edge weight {w} outside signed 32-bit range")]
    WeightOutOfRange { line: usize, w: i64 },
    #[error("header declares {declared} edges but file has {found} (line {line})")]
    EdgeCountMismatch {
        declared: usize,
        found: usize,
        line: usize,
    },
    #[error("empty input: missing `n m` header")]
    MissingHeader,
    #[error("header declares {n} vertices; at least 1 required")]
    BadVertexCount { n: i64 },
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("instance {0:?} is not in the registry and is not a readable file")]
    UnknownInstance(String),
    #[error("parse failure in {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("cache miss for {id} in offline mode (looked in {dir})")]
    OfflineCacheMiss { id: String, dir: PathBuf },
    #[error("checksum mismatch for {path}: cached copy advertises {expected}, file hashes to {actual}")]
    ChecksumMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },
    #[error("{path}: parsed n={got_n} m={got_m}, registry says n={want_n} m={want_m}")]
    RegistryMismatch {
        path: PathBuf,
        got_n: usize,
        got_m: usize,
        want_n: usize,
        want_m: usize,
    },
    #[error("network failure fetching {url}: {detail}")]
    Network { url: String, detail: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("timed out waiting for a concurrent download of {0} to finish")]
    LockTimeout(String),
}

/// A sparse undirected weighted graph plus identity; the optimization target.
#[derive(Debug)]
pub struct ProblemInstance {
    id: String,
    n: usize,
    m: usize,
    edges: Vec<(u32, u32, Weight)>,
    source_path: String,
    adj: OnceLock<Adjacency>,
}

impl PartialEq for ProblemInstance {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.n == other.n && self.edges == other.edges
    }
}
impl Eq for ProblemInstance {}

impl Clone for ProblemInstance {
    fn clone(&self) -> Self {
        ProblemInstance {
            id: self.id.clone(),
            n: self.n,
            m: self.m,
            edges: self.edges.clone(),
            source_path: self.source_path.clone(),
            adj: OnceLock::new(),
        }
    }
}

impl ProblemInstance {
    /// Build and validate an instance from raw parts.
    pub fn from_parts(
        id: &str,
        n: usize,
        edges: Vec<(u32, u32, Weight)>,
        source_path: &str,
    ) -> Result<Self, ParseError> {
        if n < 1 {
            return Err(ParseError::BadVertexCount { n: n as i64 });
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v, _) in &edges {
            if u < 1 || u as usize > n {
                return Err(ParseError::VertexOutOfRange { line: 0, v: u as i64, n });
            }
            if v < 1 || v as usize > n {
                return Err(ParseError::VertexOutOfRange { line: 0, v: v as i64, n });
            }
            if u == v {
                return Err(ParseError::SelfLoop { line: 0, v: u as i64 });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ParseError::DuplicateEdge { line: 0, u: u.min(v), v: u.max(v) });
            }
        }
        let m = edges.len();
        Ok(ProblemInstance {
            id: id.to_string(),
            n,
            m,
            edges,
            source_path: source_path.to_string(),
            adj: OnceLock::new(),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(u32, u32, Weight)] {
        &self.edges
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    /// Compact adjacency, built on first use and shared afterwards.
    pub fn adjacency(&self) -> &Adjacency {
        self.adj.get_or_init(|| Adjacency::build(self.n, &self.edges))
    }

    /// Canonical Gset text: `n m` header then one `u v w` line per edge,
    /// newline-terminated. `parse_gset(serialize())` round-trips exactly.
    pub fn to_gset_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.m + 1));
        let _ = writeln!(out, "{} {}", self.n, self.m);
        for &(u, v, w) in &self.edges {
            let _ = writeln!(out, "{} {} {}", u, v, w);
        }
        out
    }
}

/// Problem class of a registry instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemType {
    /// 2D Edwards-Anderson spin glass: +-1 weights on a toroidal square grid.
    ToroidalSpinGlass,
    /// Unweighted MaxCut on a sparse random graph.
    SparseRandomUnweighted,
}

/// Registry entry: instance shape, best-known cut value and its source.
#[derive(Debug, Clone, Copy)]
pub struct InstanceMeta {
    pub id: &'static str,
    pub n: usize,
    pub m: usize,
    pub problem_type: ProblemType,
    pub best_known: i64,
    pub best_known_source: &'static str,
    /// Sweeps-per-run setting published alongside the 99.5-99.8% quality
    /// benchmark runs; a reasonable starting point, not a tuned optimum.
    pub default_sweeps_per_run: u64,
}

use ProblemType::{SparseRandomUnweighted, ToroidalSpinGlass};

/// The seven largest Gset instances.
pub const REGISTRY: &[InstanceMeta] = &[
    InstanceMeta {
        id: "G65",
        n: 8000,
        m: 16_000,
        problem_type: ToroidalSpinGlass,
        best_known: 5562,
        best_known_source: "Shylo et al., Cybern. Syst. Anal. 51 (2015)",
        default_sweeps_per_run: 8000,
    },
    InstanceMeta {
        id: "G66",
        n: 9000,
        m: 18_000,
        problem_type: ToroidalSpinGlass,
        best_known: 6364,
        best_known_source: "Shylo et al., Cybern. Syst. Anal. 51 (2015)",
        default_sweeps_per_run: 8000,
    },
    InstanceMeta {
        id: "G67",
        n: 10_000,
        m: 20_000,
        problem_type: ToroidalSpinGlass,
        best_known: 6950,
        best_known_source: "Shylo et al., Cybern. Syst. Anal. 51 (2015)",
        default_sweeps_per_run: 4000,
    },
    InstanceMeta {
        id: "G70",
        n: 10_000,
        m: 9999,
        problem_type: SparseRandomUnweighted,
        best_known: 9595,
        best_known_source: "Chen et al., arXiv:2307.00783 (2023)",
        default_sweeps_per_run: 15_000,
    },
    InstanceMeta {
        id: "G72",
        n: 10_000,
        m: 20_000,
        problem_type: ToroidalSpinGlass,
        best_known: 7008,
        best_known_source: "record solution bundled with this crate (2023)",
        default_sweeps_per_run: 7000,
    },
    InstanceMeta {
        id: "G77",
        n: 14_000,
        m: 28_000,
        problem_type: ToroidalSpinGlass,
        best_known: 9940,
        best_known_source: "record solution bundled with this crate (2023)",
        default_sweeps_per_run: 7000,
    },
    InstanceMeta {
        id: "G81",
        n: 20_000,
        m: 40_000,
        problem_type: ToroidalSpinGlass,
        best_known: 14_056,
        best_known_source: "Shylo & Shylo, Optimization Methods and Applications (2017)",
        default_sweeps_per_run: 3000,
    },
];

pub fn registry_lookup(id: &str) -> Option<&'static InstanceMeta> {
    REGISTRY.iter().find(|meta| meta.id == id)
}

/// Parse Gset text. Vertex indices are 1-based; weights must fit in i32.
pub fn parse_gset(text: &str) -> Result<ProblemInstance, ParseError> {
    parse_gset_named(text, "", "<memory>")
}

/// Parse Gset text, attaching an id and provenance string.
pub fn parse_gset_named(
    text: &str,
    id: &str,
    source_path: &str,
) -> Result<ProblemInstance, ParseError> {
    // Token stream tagged with 1-based line numbers.
    let mut tokens = text.lines().enumerate().flat_map(|(ln, line)| {
        line.split_whitespace().map(move |tok| (ln + 1, tok))
    });

    let next_int = |tokens: &mut dyn Iterator<Item = (usize, &str)>| -> Result<Option<(usize, i64)>, ParseError> {
        match tokens.next() {
            None => Ok(None),
            Some((line, tok)) => match tok.parse::<i64>() {
                Ok(v) => Ok(Some((line, v))),
                Err(_) => Err(ParseError::NonInteger {
                    line,
                    token: tok.to_string(),
                }),
            },
        }
    };

    let (_, n) = next_int(&mut tokens)?.ok_or(ParseError::MissingHeader)?;
    if n < 1 {
        return Err(ParseError::BadVertexCount { n });
    }
    let n = n as usize;
    let (header_line, m) = next_int(&mut tokens)?.ok_or(ParseError::MissingHeader)?;
    if m < 0 {
        return Err(ParseError::EdgeCountMismatch {
            declared: 0,
            found: 0,
            line: header_line,
        });
    }
    let m = m as usize;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = header_line;
    loop {
        let (line, u) = match next_int(&mut tokens)? {
            Some(t) => t,
            None => break,
        };
        last_line = line;
        if edges.len() == m {
            // Trailing tokens beyond the declared edge count.
            return Err(ParseError::EdgeCountMismatch {
                declared: m,
                found: m + 1,
                line,
            });
        }
        let (_, v) = next_int(&mut tokens)?.ok_or(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
            line,
        })?;
        let (wline, w) = next_int(&mut tokens)?.ok_or(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
            line,
        })?;
        for &x in &[u, v] {
            if x < 1 || x > n as i64 {
                return Err(ParseError::VertexOutOfRange { line, v: x, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, v: u });
        }
        if w < i32::MIN as i64 || w > i32::MAX as i64 {
            return Err(ParseError::WeightOutOfRange { line: wline, w });
        }
        let (u, v) = (u as u32, v as u32);
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: u.min(v),
                v: u.max(v),
            });
        }
        edges.push((u, v, w as i32));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
            line: last_line,
        });
    }
    Ok(ProblemInstance {
        id: id.to_string(),
        n,
        m,
        edges,
        source_path: source_path.to_string(),
        adj: OnceLock::new(),
    })
}

/// Default cache directory: `$CUTBENCH_CACHE_DIR`, else
/// `$HOME/.cache/cutbench`, else `.cutbench-cache` in the working directory.
pub fn default_cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Ok(home) = std::env::var("HOME") {
        return Path::new(&home).join(".cache").join("cutbench");
    }
    PathBuf::from(".cutbench-cache")
}

fn base_url() -> String {
    std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string())
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{:02x}", b);
    }
    out
}

/// Load an instance by registry id or by filesystem path.
///
/// Registry ids resolve through the cache; a miss triggers a download
/// unless `offline` is set. Concurrent fetches of the same id are
/// serialized through an exclusively-created lock file so only one
/// download happens.
pub fn load_instance(
    id_or_path: &str,
    cache_dir: &Path,
    offline: bool,
) -> Result<ProblemInstance, LoadError> {
    if let Some(meta) = registry_lookup(id_or_path) {
        return load_registry_instance(meta, cache_dir, offline);
    }
    let path = Path::new(id_or_path);
    if path.is_file() {
        return load_file(path);
    }
    Err(LoadError::UnknownInstance(id_or_path.to_string()))
}

fn load_file(path: &Path) -> Result<ProblemInstance, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_gset_named(&text, &id, &path.to_string_lossy()).map_err(|source| LoadError::Parse {
        path: path.to_string_lossy().into_owned(),
        source,
    })
}

fn load_registry_instance(
    meta: &InstanceMeta,
    cache_dir: &Path,
    offline: bool,
) -> Result<ProblemInstance, LoadError> {
    let gset_path = cache_dir.join(format!("{}.gset", meta.id));
    let sha_path = cache_dir.join(format!("{}.sha256", meta.id));

    if !gset_path.is_file() {
        if offline {
            return Err(LoadError::OfflineCacheMiss {
                id: meta.id.to_string(),
                dir: cache_dir.to_path_buf(),
            });
        }
        fetch_into_cache(meta.id, cache_dir, &gset_path, &sha_path)?;
    }

    let bytes = fs::read(&gset_path).map_err(|source| LoadError::Io {
        path: gset_path.clone(),
        source,
    })?;
    if let Ok(expected) = fs::read_to_string(&sha_path) {
        let expected = expected.trim().to_ascii_lowercase();
        let actual = sha256_hex(&bytes);
        if expected != actual {
            return Err(LoadError::ChecksumMismatch {
                path: gset_path,
                expected,
                actual,
            });
        }
    }
    let text = String::from_utf8_lossy(&bytes);
    let inst = parse_gset_named(&text, meta.id, &gset_path.to_string_lossy()).map_err(
        |source| LoadError::Parse {
            path: gset_path.to_string_lossy().into_owned(),
            source,
        },
    )?;
    if inst.n() != meta.n || inst.m() != meta.m {
        return Err(LoadError::RegistryMismatch {
            path: gset_path,
            got_n: inst.n(),
            got_m: inst.m(),
            want_n: meta.n,
            want_m: meta.m,
        });
    }
    Ok(inst)
}

fn fetch_into_cache(
    id: &str,
    cache_dir: &Path,
    gset_path: &Path,
    sha_path: &Path,
) -> Result<(), LoadError> {
    fs::create_dir_all(cache_dir).map_err(|source| LoadError::Io {
        path: cache_dir.to_path_buf(),
        source,
    })?;
    let lock_path = cache_dir.join(format!("{}.lock", id));
    match fs::OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(&lock_path)
    {
        Ok(_) => {
            // We own the download; always drop the lock afterwards.
            let result = download(id, gset_path, sha_path);
            let _ = fs::remove_file(&lock_path);
            result
        }
        Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
            // Another process is downloading; wait for it to finish.
            let start = Instant::now();
            while lock_path.exists() {
                if start.elapsed() > Duration::from_secs(120) {
                    return Err(LoadError::LockTimeout(id.to_string()));
                }
                std::thread::sleep(Duration::from_millis(50));
            }
            if gset_path.is_file() {
                Ok(())
            } else {
                Err(LoadError::Network {
                    url: format!("{}{}", base_url(), id),
                    detail: "concurrent download did not produce a cached file".into(),
                })
            }
        }
        Err(source) => Err(LoadError::Io {
            path: lock_path,
            source,
        }),
    }
}

fn download(id: &str, gset_path: &Path, sha_path: &Path) -> Result<(), LoadError> {
    let url = format!("{}{}", base_url(), id);
    let net = |detail: String| LoadError::Network {
        url: url.clone(),
        detail,
    };
    let resp = reqwest::blocking::get(&url).map_err(|e| net(e.to_string()))?;
    if !resp.status().is_success() {
        return Err(net(format!("HTTP status {}", resp.status())));
    }
    let bytes = resp.bytes().map_err(|e| net(e.to_string()))?;
    let tmp_path = gset_path.with_extension("gset.part");
    {
        let mut tmp = fs::File::create(&tmp_path).map_err(|source| LoadError::Io {
            path: tmp_path.clone(),
            source,
        })?;
        tmp.write_all(&bytes).map_err(|source| LoadError::Io {
            path: tmp_path.clone(),
            source,
        })?;
    }
    fs::rename(&tmp_path, gset_path).map_err(|source| LoadError::Io {
        path: gset_path.to_path_buf(),
        source,
    })?;
    fs::write(sha_path, format!("{}\n", sha256_hex(&bytes))).map_err(|source| LoadError::Io {
        path: sha_path.to_path_buf(),
        source,
    })?;
    Ok(())
}

/// Summary statistics of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub total_weight: i64,
    /// weight -> number of edges carrying it, sorted by weight
    pub weight_histogram: Vec<(Weight, usize)>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub mean_degree: f64,
}

pub fn instance_stats(inst: &ProblemInstance) -> InstanceStats {
    let mut hist = std::collections::BTreeMap::new();
    let mut deg = vec![0usize; inst.n()];
    let mut total = 0i64;
    for &(u, v, w) in inst.edges() {
        *hist.entry(w).or_insert(0) += 1;
        deg[u as usize - 1] += 1;
        deg[v as usize - 1] += 1;
        total += w as i64;
    }
    InstanceStats {
        n: inst.n(),
        m: inst.m(),
        total_weight: total,
        weight_histogram: hist.into_iter().collect(),
        min_degree: deg.iter().copied().min().unwrap_or(0),
        max_degree: deg.iter().copied().max().unwrap_or(0),
        mean_degree: 2.0 * inst.m() as f64 / inst.n() as f64,
    }
}
