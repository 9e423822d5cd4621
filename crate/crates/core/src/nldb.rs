//! Classified flat-file store of NLML documents.
//!
//! One record per line: `key TAB class TAB timestamp TAB nlml`. Canonical
//! NLML never contains tabs or newlines, so lines split unambiguously.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Timelike, Utc};
use thiserror::Error;

use crate::grammar::{Complexity, Mood};
use crate::lexicon::Lexicon;
use crate::nlml::{canonicalize, deserialize, serialize, NlmlDocument, Tag};
use crate::nlom::{build_model, NlomError, SentenceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DbClass {
    Fact,
    Question,
    Relation,
}

impl DbClass {
    pub const ALL: [DbClass; 3] = [DbClass::Fact, DbClass::Question, DbClass::Relation];

    pub fn as_str(self) -> &'static str {
        match self {
            DbClass::Fact => "fact",
            DbClass::Question => "question",
            DbClass::Relation => "relation",
        }
    }

    pub fn parse(s: &str) -> Option<DbClass> {
        DbClass::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for DbClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbRecord {
    pub key: u64,
    pub class: DbClass,
    pub created_at: DateTime<Utc>,
    pub nlml: String,
}

impl DbRecord {
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.key, self.class, self.timestamp(), self.nlml)
    }

    /// Creation time as RFC 3339 in UTC with whole seconds.
    pub fn timestamp(&self) -> String {
        self.created_at.to_rfc3339_opts(SecondsFormat::Secs, true)
    }

    fn from_line(line: &str) -> Option<DbRecord> {
        let mut f = line.splitn(4, '\t');
        let key = f.next()?.parse().ok()?;
        let class = DbClass::parse(f.next()?)?;
        let created_at = DateTime::parse_from_rfc3339(f.next()?).ok()?.with_timezone(&Utc);
        let nlml = f.next()?.to_string();
        Some(DbRecord { key, class, created_at, nlml })
    }
}

#[derive(Debug, Error)]
pub enum DbError {
    #[error("no record with key {0}")]
    KeyNotFound(u64),
    #[error("cannot classify mood `{0}`")]
    Unclassifiable(String),
    #[error("storage failure: {0}")]
    StorageFailure(String),
    #[error("stored record {key} is corrupt: {reason}")]
    Corrupt { key: u64, reason: String },
    #[error(transparent)]
    Model(#[from] NlomError),
}

impl From<std::io::Error> for DbError {
    fn from(e: std::io::Error) -> Self {
        DbError::StorageFailure(e.to_string())
    }
}

/// Class of a sentence document. Questions are questions; other sentences
/// with a subordinate clause are relations; the rest are facts.
pub fn classify(doc: &NlmlDocument) -> Result<DbClass, DbError> {
    let mood_text = doc.mood().unwrap_or_default();
    let mood = Mood::parse(&mood_text).ok_or_else(|| DbError::Unclassifiable(mood_text.clone()))?;
    if mood == Mood::Question {
        return Ok(DbClass::Question);
    }
    if mood == Mood::Subcircum {
        return Ok(DbClass::Relation);
    }
    if !mood.is_sentence() {
        return Err(DbError::Unclassifiable(mood_text));
    }
    let complexity = doc.child(Tag::Complexity).and_then(|c| Complexity::parse(&c.text()));
    let subordinate = doc.child(Tag::Subordinator).is_some();
    Ok(match complexity {
        Some(Complexity::Complex | Complexity::CompoundComplex) if subordinate => DbClass::Relation,
        _ => DbClass::Fact,
    })
}

/// A store backed by one file. Writers take an exclusive lock on the file,
/// readers a shared one.
#[derive(Debug, Clone)]
pub struct Store {
    path: PathBuf,
}

impl Store {
    /// Opens the store, creating an empty file if needed.
    pub fn open(path: impl AsRef<Path>) -> Result<Store, DbError> {
        let path = path.as_ref().to_path_buf();
        OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(Store { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Stores the canonical form of `doc` and returns its key.
    pub fn put(&self, doc: &NlmlDocument) -> Result<u64, DbError> {
        self.put_at(doc, Utc::now())
    }

    pub fn put_at(&self, doc: &NlmlDocument, created_at: DateTime<Utc>) -> Result<u64, DbError> {
        let canonical = canonicalize(doc);
        let class = classify(&canonical)?;
        let mut file = OpenOptions::new().read(true).append(true).open(&self.path)?;
        file.lock()?;
        let last = read_records(&file)?.last().map_or(0, |r| r.key);
        let record = DbRecord {
            key: last + 1,
            class,
            created_at: created_at.with_nanosecond(0).unwrap_or(created_at),
            nlml: serialize(&canonical),
        };
        writeln!(file, "{}", record.to_line())?;
        file.flush()?;
        file.unlock()?;
        Ok(record.key)
    }

    pub fn get(&self, key: u64) -> Result<DbRecord, DbError> {
        self.records()?.into_iter().find(|r| r.key == key).ok_or(DbError::KeyNotFound(key))
    }

    /// Records of one class in key order.
    pub fn query(&self, class: DbClass) -> Result<Vec<DbRecord>, DbError> {
        Ok(self.records()?.into_iter().filter(|r| r.class == class).collect())
    }

    /// Every record in key order.
    pub fn records(&self) -> Result<Vec<DbRecord>, DbError> {
        let file = File::open(&self.path)?;
        file.lock_shared()?;
        let out = read_records(&file);
        file.unlock()?;
        out
    }

    /// Deserializes the records and builds their models.
    pub fn rebuild(&self, keys: &[u64], lex: &Lexicon) -> Result<Vec<SentenceModel>, DbError> {
        let records = self.records()?;
        keys.iter()
            .map(|&key| {
                let r = records.iter().find(|r| r.key == key).ok_or(DbError::KeyNotFound(key))?;
                let doc = deserialize(&r.nlml).map_err(|e| DbError::Corrupt { key, reason: e.to_string() })?;
                Ok(build_model(&doc, lex)?)
            })
            .collect()
    }
}

fn read_records(file: &File) -> Result<Vec<DbRecord>, DbError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let r = DbRecord::from_line(&line).ok_or_else(|| DbError::StorageFailure(format!("malformed line {}", i + 1)))?;
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{classify_expression, TokenStream};

    fn doc(text: &str) -> NlmlDocument {
        let lex = Lexicon::demo();
        classify_expression(&TokenStream::tokenize(text).unwrap(), &lex).unwrap().remove(0).document
    }

    #[test]
    fn classes() {
        assert_eq!(classify(&doc("I come.")).unwrap(), DbClass::Fact);
        assert_eq!(classify(&doc("Which book will you buy?")).unwrap(), DbClass::Question);
        assert_eq!(classify(&doc("If it rains today, you will not go, and I will not come.")).unwrap(), DbClass::Relation);
        assert_eq!(classify(&doc("It snows, but I still go out.")).unwrap(), DbClass::Fact);
        assert!(matches!(classify(&doc("Terrible!")), Err(DbError::Unclassifiable(m)) if m == "adj"));
    }

    #[test]
    fn put_get_query() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path().join("db.tsv")).unwrap();
        let a = store.put(&doc("I come.")).unwrap();
        let b = store.put(&doc("Which book will you buy?")).unwrap();
        let c = store.put(&doc("I will buy a book tomorrow.")).unwrap();
        assert_eq!((a, b, c), (1, 2, 3));
        assert_eq!(store.get(a).unwrap().nlml, serialize(&canonicalize(&doc("I come."))));
        let facts: Vec<u64> = store.query(DbClass::Fact).unwrap().iter().map(|r| r.key).collect();
        assert_eq!(facts, [1, 3]);
        assert!(matches!(store.get(999), Err(DbError::KeyNotFound(999))));
        assert!(store.rebuild(&[], &Lexicon::demo()).unwrap().is_empty());
    }

    #[test]
    fn line_format() {
        let r = DbRecord {
            key: 7,
            class: DbClass::Relation,
            created_at: DateTime::parse_from_rfc3339("2024-05-01T10:00:00Z").unwrap().with_timezone(&Utc),
            nlml: "<mood>statement</mood>".into(),
        };
        assert_eq!(r.to_line(), "7\trelation\t2024-05-01T10:00:00Z\t<mood>statement</mood>");
        assert_eq!(DbRecord::from_line(&r.to_line()), Some(r));
    }
}
