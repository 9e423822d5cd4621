//! Inputs shared by the benchmarks.

/// The example corpus, one expression per line.
pub const CORPUS: &str = include_str!("../../core/tests/fixtures/corpus.txt");

pub fn corpus() -> impl Iterator<Item = &'static str> {
    CORPUS.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}
