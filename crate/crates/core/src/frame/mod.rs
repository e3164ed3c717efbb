//! Chunked columnar storage.
//!
//! A [`DataFrame`] is immutable once built. Every column is split at the same
//! row boundaries, recorded in [`ChunkMeta`], which is computed when the frame
//! is constructed so graph builders can rely on it.

mod bitmask;
mod csv;
mod infer;

pub use self::bitmask::Bitmask;
pub use self::csv::{read_csv, read_csv_reader, read_csv_str, CsvOptions, DEFAULT_CHUNK_ROWS};
pub use self::infer::{infer_dtype, infer_dtype_with_threshold, parse_number, DEFAULT_NUMERIC_THRESHOLD};

use crate::error::{EdaError, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DType {
    Numerical,
    Categorical,
}

impl DType {
    pub fn as_str(self) -> &'static str {
        match self {
            DType::Numerical => "numerical",
            DType::Categorical => "categorical",
        }
    }

    /// One-letter tag used in task signatures (`N` / `C`).
    pub fn letter(self) -> char {
        match self {
            DType::Numerical => 'N',
            DType::Categorical => 'C',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChunkValues {
    Numerical(Vec<f64>),
    /// Codes into the owning column's dictionary.
    Categorical(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chunk {
    values: ChunkValues,
    validity: Bitmask,
}

impl Chunk {
    pub fn numerical(values: Vec<f64>, validity: Bitmask) -> Self {
        assert_eq!(values.len(), validity.len(), "validity length must equal row count");
        Chunk { values: ChunkValues::Numerical(values), validity }
    }

    pub fn categorical(codes: Vec<u32>, validity: Bitmask) -> Self {
        assert_eq!(codes.len(), validity.len(), "validity length must equal row count");
        Chunk { values: ChunkValues::Categorical(codes), validity }
    }

    pub fn row_count(&self) -> usize {
        self.validity.len()
    }

    pub fn validity(&self) -> &Bitmask {
        &self.validity
    }

    pub fn values(&self) -> &ChunkValues {
        &self.values
    }

    #[inline]
    pub fn is_valid(&self, row: usize) -> bool {
        self.validity.get(row)
    }

    /// Numeric payload; missing rows hold `NaN`.
    pub fn as_f64(&self) -> Option<&[f64]> {
        match &self.values {
            ChunkValues::Numerical(v) => Some(v),
            ChunkValues::Categorical(_) => None,
        }
    }

    pub fn as_codes(&self) -> Option<&[u32]> {
        match &self.values {
            ChunkValues::Categorical(c) => Some(c),
            ChunkValues::Numerical(_) => None,
        }
    }

    /// Value at `row` if present and numeric.
    #[inline]
    pub fn f64_at(&self, row: usize) -> Option<f64> {
        match &self.values {
            ChunkValues::Numerical(v) if self.validity.get(row) => Some(v[row]),
            _ => None,
        }
    }

    #[inline]
    pub fn code_at(&self, row: usize) -> Option<u32> {
        match &self.values {
            ChunkValues::Categorical(c) if self.validity.get(row) => Some(c[row]),
            _ => None,
        }
    }

    pub fn missing_count(&self) -> usize {
        self.row_count() - self.validity.count_ones()
    }
}

#[derive(Debug, Clone)]
pub struct Column {
    name: String,
    dtype: DType,
    dictionary: Arc<Vec<String>>,
    chunks: Vec<Arc<Chunk>>,
}

impl Column {
    /// Build a numerical column from optional values, split into chunks of `chunk_rows`.
    pub fn from_f64(name: impl Into<String>, values: &[Option<f64>], chunk_rows: usize) -> Self {
        let chunk_rows = chunk_rows.max(1);
        let chunks = values
            .chunks(chunk_rows)
            .map(|part| {
                let validity = Bitmask::from_iter(part.iter().map(Option::is_some));
                let vals = part.iter().map(|v| v.unwrap_or(f64::NAN)).collect();
                Arc::new(Chunk::numerical(vals, validity))
            })
            .collect();
        Column { name: name.into(), dtype: DType::Numerical, dictionary: Arc::new(Vec::new()), chunks }
    }

    /// Build a categorical column, interning values in first-appearance order.
    pub fn from_strs<S: AsRef<str>>(name: impl Into<String>, values: &[Option<S>], chunk_rows: usize) -> Self {
        let chunk_rows = chunk_rows.max(1);
        let mut interner = Interner::default();
        let codes: Vec<Option<u32>> = values.iter().map(|v| v.as_ref().map(|s| interner.intern(s.as_ref()))).collect();
        Self::from_codes(name, codes, interner.into_dictionary(), chunk_rows)
    }

    pub(crate) fn from_codes(name: impl Into<String>, codes: Vec<Option<u32>>, dictionary: Vec<String>, chunk_rows: usize) -> Self {
        let chunks = codes
            .chunks(chunk_rows.max(1))
            .map(|part| {
                let validity = Bitmask::from_iter(part.iter().map(Option::is_some));
                let vals = part.iter().map(|c| c.unwrap_or(0)).collect();
                Arc::new(Chunk::categorical(vals, validity))
            })
            .collect();
        Column { name: name.into(), dtype: DType::Categorical, dictionary: Arc::new(dictionary), chunks }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dtype(&self) -> DType {
        self.dtype
    }

    pub fn chunks(&self) -> &[Arc<Chunk>] {
        &self.chunks
    }

    pub fn chunk(&self, i: usize) -> &Chunk {
        &self.chunks[i]
    }

    /// Category labels indexed by code. Empty for numerical columns.
    pub fn dictionary(&self) -> &[String] {
        &self.dictionary
    }

    pub fn len(&self) -> usize {
        self.chunks.iter().map(|c| c.row_count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All numeric cells in row order, `None` for missing.
    pub fn to_f64_vec(&self) -> Vec<Option<f64>> {
        let mut out = Vec::with_capacity(self.len());
        for chunk in &self.chunks {
            for row in 0..chunk.row_count() {
                out.push(chunk.f64_at(row));
            }
        }
        out
    }

    /// All categorical cells in row order, `None` for missing.
    pub fn to_code_vec(&self) -> Vec<Option<u32>> {
        let mut out = Vec::with_capacity(self.len());
        for chunk in &self.chunks {
            for row in 0..chunk.row_count() {
                out.push(chunk.code_at(row));
            }
        }
        out
    }

    fn validity_vec(&self) -> Vec<bool> {
        self.chunks.iter().flat_map(|c| c.validity().iter().collect::<Vec<_>>()).collect()
    }

    fn rechunked(&self, target_rows: usize) -> Column {
        let validity = self.validity_vec();
        let chunks = match self.dtype {
            DType::Numerical => {
                let values: Vec<f64> = self
                    .chunks
                    .iter()
                    .flat_map(|c| c.as_f64().expect("numerical chunk").iter().copied())
                    .collect();
                values
                    .chunks(target_rows)
                    .zip(validity.chunks(target_rows))
                    .map(|(v, m)| Arc::new(Chunk::numerical(v.to_vec(), Bitmask::from_iter(m.iter().copied()))))
                    .collect()
            }
            DType::Categorical => {
                let codes: Vec<u32> = self
                    .chunks
                    .iter()
                    .flat_map(|c| c.as_codes().expect("categorical chunk").iter().copied())
                    .collect();
                codes
                    .chunks(target_rows)
                    .zip(validity.chunks(target_rows))
                    .map(|(v, m)| Arc::new(Chunk::categorical(v.to_vec(), Bitmask::from_iter(m.iter().copied()))))
                    .collect()
            }
        };
        Column { name: self.name.clone(), dtype: self.dtype, dictionary: Arc::clone(&self.dictionary), chunks }
    }
}

#[derive(Default)]
pub(crate) struct Interner {
    index: std::collections::HashMap<String, u32>,
    dictionary: Vec<String>,
}

impl Interner {
    pub(crate) fn intern(&mut self, s: &str) -> u32 {
        if let Some(&code) = self.index.get(s) {
            return code;
        }
        let code = self.dictionary.len() as u32;
        self.dictionary.push(s.to_owned());
        self.index.insert(s.to_owned(), code);
        code
    }

    pub(crate) fn into_dictionary(self) -> Vec<String> {
        self.dictionary
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChunkMeta {
    pub chunk_row_counts: Vec<usize>,
    pub total_rows: usize,
}

impl ChunkMeta {
    pub fn from_counts(chunk_row_counts: Vec<usize>) -> Self {
        let total_rows = chunk_row_counts.iter().sum();
        ChunkMeta { chunk_row_counts, total_rows }
    }

    pub fn n_chunks(&self) -> usize {
        self.chunk_row_counts.len()
    }

    /// Row offset of the first row of every chunk.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.chunk_row_counts
            .iter()
            .map(|&n| {
                let start = acc;
                acc += n;
                start
            })
            .collect()
    }
}

/// Immutable chunked dataset.
#[derive(Debug, Clone)]
pub struct DataFrame {
    columns: Vec<Column>,
    meta: ChunkMeta,
    source: String,
}

impl DataFrame {
    /// Assemble a frame from columns that already share chunk boundaries.
    pub fn new(columns: Vec<Column>, source: impl Into<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for c in &columns {
            if c.name.is_empty() {
                return Err(EdaError::ParseError { line: 1, reason: "empty column name".into() });
            }
            if !seen.insert(c.name.as_str()) {
                return Err(EdaError::ParseError { line: 1, reason: format!("duplicate column name `{}`", c.name) });
            }
        }
        let meta = match columns.first() {
            Some(first) => ChunkMeta::from_counts(first.chunks.iter().map(|c| c.row_count()).collect()),
            None => ChunkMeta::from_counts(Vec::new()),
        };
        for c in &columns {
            let counts: Vec<usize> = c.chunks.iter().map(|ch| ch.row_count()).collect();
            if counts != meta.chunk_row_counts {
                return Err(EdaError::ParseError {
                    line: 1,
                    reason: format!("column `{}` has chunk layout {:?}, expected {:?}", c.name, counts, meta.chunk_row_counts),
                });
            }
        }
        Ok(DataFrame { columns, meta, source: source.into() })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Result<&Column> {
        self.columns.iter().find(|c| c.name == name).ok_or_else(|| self.unknown_column(name))
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns.iter().position(|c| c.name == name).ok_or_else(|| self.unknown_column(name))
    }

    pub(crate) fn unknown_column(&self, name: &str) -> EdaError {
        EdaError::UnknownColumn { name: name.to_owned(), available: self.column_names() }
    }

    pub fn column_names(&self) -> Vec<String> {
        self.columns.iter().map(|c| c.name.clone()).collect()
    }

    /// Precomputed chunk layout shared by all columns.
    pub fn chunk_meta(&self) -> &ChunkMeta {
        &self.meta
    }

    pub fn n_rows(&self) -> usize {
        self.meta.total_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn n_chunks(&self) -> usize {
        self.meta.n_chunks()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Same logical content with chunks of `target_rows` (last chunk may be shorter).
    pub fn rechunk(&self, target_rows: usize) -> Result<DataFrame> {
        if target_rows < 1 {
            return Err(EdaError::InvalidChunkSize(target_rows));
        }
        let columns: Vec<Column> = self.columns.iter().map(|c| c.rechunked(target_rows)).collect();
        let meta = match columns.first() {
            Some(first) => ChunkMeta::from_counts(first.chunks.iter().map(|c| c.row_count()).collect()),
            None => ChunkMeta::from_counts(Vec::new()),
        };
        Ok(DataFrame { columns, meta, source: self.source.clone() })
    }
}
