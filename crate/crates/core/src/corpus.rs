//! Member registry, publication records and co-authorship edge derivation.
//!
//! Two CSV inputs feed the pipeline:
//!
//! ```text
//! members.csv   id,name
//! papers.csv    paper_id,year,title,author_ids      (author_ids = "m1;m2;m3")
//! ```
//!
//! Titles containing commas use standard CSV double-quoting. LF and CRLF line
//! endings are both accepted.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

const MEMBERS_HEADER: [&str; 2] = ["id", "name"];
const PAPERS_HEADER: [&str; 4] = ["paper_id", "year", "title", "author_ids"];

/// Errors raised while reading the corpus files.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: file not found")]
    NotFound { path: PathBuf },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{file}:{line}: {reason}")]
    Invalid {
        file: String,
        line: u64,
        reason: String,
    },
}

impl CorpusError {
    fn invalid(file: &str, line: u64, reason: impl Into<String>) -> Self {
        CorpusError::Invalid {
            file: file.to_string(),
            line,
            reason: reason.into(),
        }
    }

    /// Line number of the offending row, when the error points at one.
    pub fn line(&self) -> Option<u64> {
        match self {
            CorpusError::Invalid { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub type Result<T, E = CorpusError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub id: String,
    pub name: String,
}

/// Registered members in file order, with id lookup.
#[derive(Debug, Clone, Default)]
pub struct MemberRegistry {
    members: Vec<Member>,
    by_id: HashMap<String, usize>,
}

impl MemberRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a member. Fails with a human-readable reason when the id is
    /// empty, contains a delimiter, or is already taken.
    pub fn insert(&mut self, member: Member) -> std::result::Result<(), String> {
        validate_member_id(&member.id)?;
        if self.by_id.contains_key(&member.id) {
            return Err(format!("duplicate id `{}`", member.id));
        }
        self.by_id.insert(member.id.clone(), self.members.len());
        self.members.push(member);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&Member> {
        self.by_id.get(id).map(|&i| &self.members[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.by_id.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Member> {
        self.members.iter()
    }

    /// Display name for `id`, falling back to the id itself.
    pub fn label(&self, id: &str) -> String {
        self.get(id).map_or_else(|| id.to_string(), |m| m.name.clone())
    }
}

fn validate_member_id(id: &str) -> std::result::Result<(), String> {
    if id.is_empty() {
        return Err("empty id".to_string());
    }
    if id.contains([',', ';', '\n', '\r']) {
        return Err(format!("id `{id}` contains a delimiter"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Publication {
    pub paper_id: String,
    pub year: i32,
    pub title: String,
    pub author_ids: Vec<String>,
}

/// Non-fatal observations made while parsing publications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// An author id was listed more than once; one copy was kept.
    DuplicateAuthor {
        line: u64,
        paper_id: String,
        author_id: String,
    },
    /// The paper has fewer than two distinct member authors.
    NoEdges { line: u64, paper_id: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DuplicateAuthor {
                line,
                paper_id,
                author_id,
            } => write!(
                f,
                "line {line}: paper `{paper_id}` lists author `{author_id}` more than once; deduplicated"
            ),
            Warning::NoEdges { line, paper_id } => write!(
                f,
                "line {line}: paper `{paper_id}` has fewer than two member authors and contributes no edges"
            ),
        }
    }
}

/// Parsed publications in file order plus the warnings raised on the way.
#[derive(Debug, Clone, Default)]
pub struct PublicationSet {
    pub publications: Vec<Publication>,
    pub warnings: Vec<Warning>,
}

impl PublicationSet {
    pub fn len(&self) -> usize {
        self.publications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.publications.is_empty()
    }

    /// Smallest and largest publication year, if any.
    pub fn year_span(&self) -> Option<(i32, i32)> {
        let min = self.publications.iter().map(|p| p.year).min()?;
        let max = self.publications.iter().map(|p| p.year).max()?;
        Some((min, max))
    }

    pub fn get(&self, paper_id: &str) -> Option<&Publication> {
        self.publications.iter().find(|p| p.paper_id == paper_id)
    }
}

/// Inclusive interval of calendar years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YearRange {
    pub from: i32,
    pub to: i32,
}

impl YearRange {
    /// Returns `None` when `from > to`.
    pub fn new(from: i32, to: i32) -> Option<Self> {
        (from <= to).then_some(Self { from, to })
    }

    pub fn contains(&self, year: i32) -> bool {
        self.from <= year && year <= self.to
    }
}

impl fmt::Display for YearRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// One weighted co-authorship link. `a < b` lexicographically and
/// `weight == paper_ids.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub weight: u32,
    pub paper_ids: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    /// Accepted publication years, inclusive.
    pub year_window: (i32, i32),
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            year_window: (1900, 2100),
        }
    }
}

/// Members and publications, parsed and cross-checked.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub members: MemberRegistry,
    pub publications: PublicationSet,
}

impl Corpus {
    pub fn load(members: &Path, papers: &Path) -> Result<Self> {
        let members = parse_members(members)?;
        let publications = parse_publications(papers, &members)?;
        Ok(Self {
            members,
            publications,
        })
    }

    pub fn edges(&self, range: YearRange) -> Vec<EdgeRecord> {
        derive_edges(&self.publications, range)
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| match source.kind() {
        io::ErrorKind::NotFound => CorpusError::NotFound {
            path: path.to_path_buf(),
        },
        _ => CorpusError::Io {
            path: path.to_path_buf(),
            source,
        },
    })
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

pub fn parse_members(path: &Path) -> Result<MemberRegistry> {
    read_members(open(path)?, &file_label(path))
}

/// Reads a members table from any reader; `file` names the source in errors.
pub fn read_members<R: Read>(reader: R, file: &str) -> Result<MemberRegistry> {
    let mut rdr = csv_reader(reader);
    check_header(&mut rdr, file, &MEMBERS_HEADER)?;

    let mut registry = MemberRegistry::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(file, e))?;
        let line = record_line(&record);
        if record.len() != MEMBERS_HEADER.len() {
            return Err(CorpusError::invalid(
                file,
                line,
                format!("expected 2 columns, found {}", record.len()),
            ));
        }
        let member = Member {
            id: record[0].trim().to_string(),
            name: record[1].trim().to_string(),
        };
        registry
            .insert(member)
            .map_err(|reason| CorpusError::invalid(file, line, reason))?;
    }
    Ok(registry)
}

pub fn parse_publications(path: &Path, registry: &MemberRegistry) -> Result<PublicationSet> {
    read_publications(open(path)?, &file_label(path), registry, ParseOptions::default())
}

pub fn read_publications<R: Read>(
    reader: R,
    file: &str,
    registry: &MemberRegistry,
    options: ParseOptions,
) -> Result<PublicationSet> {
    let mut rdr = csv_reader(reader);
    check_header(&mut rdr, file, &PAPERS_HEADER)?;

    let mut set = PublicationSet::default();
    let mut seen_ids = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(file, e))?;
        let line = record_line(&record);
        if record.len() != PAPERS_HEADER.len() {
            return Err(CorpusError::invalid(
                file,
                line,
                format!("expected 4 columns, found {}", record.len()),
            ));
        }

        let paper_id = record[0].trim().to_string();
        if paper_id.is_empty() {
            return Err(CorpusError::invalid(file, line, "empty paper_id"));
        }
        if !seen_ids.insert(paper_id.clone()) {
            return Err(CorpusError::invalid(
                file,
                line,
                format!("duplicate paper_id `{paper_id}`"),
            ));
        }

        let raw_year = record[1].trim();
        let year: i32 = raw_year.parse().map_err(|_| {
            CorpusError::invalid(file, line, format!("year `{raw_year}` is not an integer"))
        })?;
        let (lo, hi) = options.year_window;
        if year < lo || year > hi {
            return Err(CorpusError::invalid(
                file,
                line,
                format!("year {year} outside the accepted window {lo}-{hi}"),
            ));
        }

        let mut author_ids: Vec<String> = Vec::new();
        for token in record[3].split(';').map(str::trim).filter(|t| !t.is_empty()) {
            if !registry.contains(token) {
                return Err(CorpusError::invalid(
                    file,
                    line,
                    format!("unknown author id `{token}`"),
                ));
            }
            if author_ids.iter().any(|a| a == token) {
                set.warnings.push(Warning::DuplicateAuthor {
                    line,
                    paper_id: paper_id.clone(),
                    author_id: token.to_string(),
                });
                continue;
            }
            author_ids.push(token.to_string());
        }
        if author_ids.is_empty() {
            return Err(CorpusError::invalid(
                file,
                line,
                format!("paper `{paper_id}` has no authors"),
            ));
        }
        if author_ids.len() < 2 {
            set.warnings.push(Warning::NoEdges {
                line,
                paper_id: paper_id.clone(),
            });
        }

        set.publications.push(Publication {
            paper_id,
            year,
            title: record[2].trim().to_string(),
            author_ids,
        });
    }
    Ok(set)
}

/// Accumulates one unit of weight per joint paper for every unordered author
/// pair of every publication dated inside `range`. Output is sorted by `(a, b)`
/// and each edge's paper list is sorted by paper id.
pub fn derive_edges(pubs: &PublicationSet, range: YearRange) -> Vec<EdgeRecord> {
    let mut acc: BTreeMap<(&str, &str), Vec<&str>> = BTreeMap::new();
    for paper in pubs.publications.iter().filter(|p| range.contains(p.year)) {
        let authors = &paper.author_ids;
        for (i, x) in authors.iter().enumerate() {
            for y in &authors[i + 1..] {
                let key = if x < y {
                    (x.as_str(), y.as_str())
                } else {
                    (y.as_str(), x.as_str())
                };
                acc.entry(key).or_default().push(&paper.paper_id);
            }
        }
    }

    acc.into_iter()
        .map(|((a, b), mut papers)| {
            papers.sort_unstable();
            EdgeRecord {
                a: a.to_string(),
                b: b.to_string(),
                weight: papers.len() as u32,
                paper_ids: papers.into_iter().map(String::from).collect(),
            }
        })
        .collect()
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, file: &str, expected: &[&str]) -> Result<()> {
    let mut header = csv::StringRecord::new();
    let found = rdr
        .read_record(&mut header)
        .map_err(|e| csv_error(file, e))?;
    let matches = found
        && header.len() == expected.len()
        && header
            .iter()
            .zip(expected)
            .all(|(h, e)| h.trim().trim_start_matches('\u{feff}') == *e);
    if !matches {
        return Err(CorpusError::invalid(
            file,
            1,
            format!("missing header `{}`", expected.join(",")),
        ));
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn csv_error(file: &str, err: csv::Error) -> CorpusError {
    let line = err.position().map_or(0, |p| p.line());
    CorpusError::invalid(file, line, err.to_string())
}
