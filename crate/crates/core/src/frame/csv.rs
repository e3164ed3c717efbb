use super::infer::{infer_dtype_with_threshold, parse_number, DEFAULT_NUMERIC_THRESHOLD};
use super::{Column, DType, DataFrame, Interner};
use crate::error::{EdaError, Result};
use std::io::Read;
use std::path::Path;

pub const DEFAULT_CHUNK_ROWS: usize = 65_536;

#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: bool,
    /// Compared case-insensitively against the trimmed cell.
    pub missing_tokens: Vec<String>,
    pub chunk_rows: usize,
    pub numeric_threshold: f64,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            has_header: true,
            missing_tokens: ["", "NA", "N/A", "null", "NaN", "nan"].iter().map(|s| s.to_string()).collect(),
            chunk_rows: DEFAULT_CHUNK_ROWS,
            numeric_threshold: DEFAULT_NUMERIC_THRESHOLD,
        }
    }
}

impl CsvOptions {
    fn is_missing(&self, cell: &str) -> bool {
        let t = cell.trim();
        self.missing_tokens.iter().any(|m| m.eq_ignore_ascii_case(t))
    }
}

pub fn read_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<DataFrame> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => EdaError::FileNotFound(path.display().to_string()),
        _ => EdaError::Io(e),
    })?;
    read_csv_reader(std::io::BufReader::new(file), options, path.display().to_string())
}

pub fn read_csv_str(text: &str, options: &CsvOptions) -> Result<DataFrame> {
    read_csv_reader(text.as_bytes(), options, "inline")
}

pub fn read_csv_reader<R: Read>(mut reader: R, options: &CsvOptions, source: impl Into<String>) -> Result<DataFrame> {
    if options.chunk_rows < 1 {
        return Err(EdaError::InvalidChunkSize(options.chunk_rows));
    }
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    if let Some(line) = unterminated_quote_line(&bytes) {
        return Err(EdaError::ParseError { line, reason: "unterminated quoted field".into() });
    }
    let mut rdr = ::csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(options.has_header)
        .flexible(false)
        .from_reader(bytes.as_slice());

    let mut names: Vec<String> = if options.has_header {
        rdr.headers().map_err(map_csv_error)?.iter().map(|h| h.trim().to_owned()).collect()
    } else {
        Vec::new()
    };

    let mut cells: Vec<Vec<Option<String>>> = vec![Vec::new(); names.len()];
    let mut record = ::csv::StringRecord::new();
    let mut n_rows = 0usize;
    loop {
        let more = rdr.read_record(&mut record).map_err(map_csv_error)?;
        if !more {
            break;
        }
        if record.len() == 1 && record.get(0) == Some("") && names.len() > 1 {
            // blank line
            continue;
        }
        if names.is_empty() && !options.has_header {
            names = (0..record.len()).map(|i| format!("column_{i}")).collect();
            cells = vec![Vec::new(); names.len()];
        }
        for (col, field) in cells.iter_mut().zip(record.iter()) {
            col.push(if options.is_missing(field) { None } else { Some(field.to_owned()) });
        }
        n_rows += 1;
    }
    if n_rows == 0 {
        return Err(EdaError::EmptyInput);
    }
    dedupe_names(&mut names);

    let columns = names
        .into_iter()
        .zip(cells)
        .map(|(name, raw)| build_column(name, raw, options))
        .collect();
    DataFrame::new(columns, source)
}

fn build_column(name: String, raw: Vec<Option<String>>, options: &CsvOptions) -> Column {
    let present: Vec<&str> = raw.iter().flatten().map(String::as_str).collect();
    match infer_dtype_with_threshold(&present, options.numeric_threshold) {
        DType::Numerical => {
            // cells that fail to parse in a numerical column become missing
            let values: Vec<Option<f64>> = raw.iter().map(|c| c.as_deref().and_then(parse_number)).collect();
            Column::from_f64(name, &values, options.chunk_rows)
        }
        DType::Categorical => {
            let mut interner = Interner::default();
            let codes = raw.iter().map(|c| c.as_deref().map(|s| interner.intern(s))).collect();
            Column::from_codes(name, codes, interner.into_dictionary(), options.chunk_rows)
        }
    }
}

/// The csv reader accepts an opening quote that is never closed and swallows the
/// rest of the input into one field. Returns the line of such a quote.
fn unterminated_quote_line(bytes: &[u8]) -> Option<u64> {
    let mut line = 1u64;
    let mut open_at = None;
    for &b in bytes {
        match b {
            b'"' => open_at = if open_at.is_some() { None } else { Some(line) },
            b'\n' => line += 1,
            _ => {}
        }
    }
    open_at
}

fn dedupe_names(names: &mut [String]) {
    let mut seen = std::collections::HashMap::<String, usize>::new();
    for (i, name) in names.iter_mut().enumerate() {
        if name.is_empty() {
            *name = format!("unnamed_{i}");
        }
        let count = seen.entry(name.clone()).or_insert(0);
        if *count > 0 {
            *name = format!("{name}.{count}");
        }
        *count += 1;
    }
}

fn map_csv_error(err: ::csv::Error) -> EdaError {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.into_kind() {
        ::csv::ErrorKind::Io(e) => EdaError::Io(e),
        ::csv::ErrorKind::UnequalLengths { pos, expected_len, len } => EdaError::ParseError {
            line: pos.map(|p| p.line()).unwrap_or(line),
            reason: format!("expected {expected_len} fields, found {len}"),
        },
        ::csv::ErrorKind::Utf8 { pos, err } => EdaError::ParseError {
            line: pos.map(|p| p.line()).unwrap_or(line),
            reason: format!("invalid UTF-8: {err}"),
        },
        other => EdaError::ParseError { line, reason: format!("{other:?}") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_token_is_missing() {
        let df = read_csv_str("x\n1\n2\n\"\"\n", &CsvOptions::default()).unwrap();
        let col = df.column("x").unwrap();
        assert_eq!(col.dtype(), DType::Numerical);
        assert_eq!(col.to_f64_vec(), vec![Some(1.0), Some(2.0), None]);
        assert_eq!(df.n_rows(), 3);
    }

    #[test]
    fn chunking_and_types() {
        let mut text = String::from("a,b\n");
        for i in 0..10 {
            text.push_str(&format!("{i},\"s,{}\"\n", i % 3));
        }
        let opts = CsvOptions { chunk_rows: 4, ..Default::default() };
        let df = read_csv_str(&text, &opts).unwrap();
        assert_eq!(df.chunk_meta().chunk_row_counts, vec![4, 4, 2]);
        assert_eq!(df.column("b").unwrap().dtype(), DType::Categorical);
        assert_eq!(df.column("b").unwrap().dictionary(), &["s,0", "s,1", "s,2"]);
    }

    #[test]
    fn missing_tokens_case_insensitive() {
        let df = read_csv_str("x,y\n1,NA\nnull,b\nNAN,n/a\n4,c\n", &CsvOptions::default()).unwrap();
        assert_eq!(df.column("x").unwrap().to_f64_vec(), vec![Some(1.0), None, None, Some(4.0)]);
        assert_eq!(df.column("y").unwrap().to_code_vec(), vec![None, Some(0), None, Some(1)]);
    }

    #[test]
    fn infinities_parse() {
        let df = read_csv_str("x\ninf\n-inf\n2\n", &CsvOptions::default()).unwrap();
        assert_eq!(df.column("x").unwrap().to_f64_vec(), vec![Some(f64::INFINITY), Some(f64::NEG_INFINITY), Some(2.0)]);
    }

    #[test]
    fn stray_sentinel_in_numeric_column_becomes_missing() {
        let mut text = String::from("x\n");
        for i in 0..99 {
            text.push_str(&format!("{i}\n"));
        }
        text.push_str("oops\n");
        let df = read_csv_str(&text, &CsvOptions::default()).unwrap();
        let col = df.column("x").unwrap();
        assert_eq!(col.dtype(), DType::Numerical);
        assert_eq!(col.to_f64_vec()[99], None);
    }

    #[test]
    fn errors() {
        assert!(matches!(read_csv_str("a,b\n", &CsvOptions::default()), Err(EdaError::EmptyInput)));
        assert!(matches!(read_csv_str("a,b\n1,2\n3\n", &CsvOptions::default()), Err(EdaError::ParseError { line: 3, .. })));
        assert!(matches!(read_csv_str("a,b\n1,\"x\n3,4\n", &CsvOptions::default()), Err(EdaError::ParseError { .. })));
        assert!(matches!(read_csv("/definitely/not/here.csv", &CsvOptions::default()), Err(EdaError::FileNotFound(_))));
    }

    #[test]
    fn embedded_newline_in_quotes() {
        let df = read_csv_str("a,b\n1,\"line1\nline2\"\n2,x\n", &CsvOptions::default()).unwrap();
        assert_eq!(df.n_rows(), 2);
        assert_eq!(df.column("b").unwrap().dictionary()[0], "line1\nline2");
    }

    #[test]
    fn headerless_and_duplicate_names() {
        let opts = CsvOptions { has_header: false, ..Default::default() };
        let df = read_csv_str("1,2\n3,4\n", &opts).unwrap();
        assert_eq!(df.column_names(), vec!["column_0", "column_1"]);
        let df = read_csv_str("a,a,\n1,2,3\n", &CsvOptions::default()).unwrap();
        assert_eq!(df.column_names(), vec!["a", "a.1", "unnamed_2"]);
    }
}
