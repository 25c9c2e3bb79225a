//! Result tables and their CSV form.
//!
//! Layout: `#`-prefixed metadata lines (`# key = value`), one header row,
//! then data rows. Separator is a comma, newline is LF, numbers print in
//! the shortest decimal form that parses back to the identical bits, and
//! complex columns expand into `<name>_re,<name>_im` pairs. Re-running a
//! scenario with the same config and seed reproduces every output file
//! byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub enum Column {
    Real { name: String, data: Vec<f64> },
    Integer { name: String, data: Vec<i64> },
    Complex { name: String, data: Vec<Complex64> },
    Text { name: String, data: Vec<String> },
}

impl Column {
    pub fn real(name: &str, data: Vec<f64>) -> Self {
        Column::Real {
            name: name.to_string(),
            data,
        }
    }

    pub fn integer(name: &str, data: Vec<i64>) -> Self {
        Column::Integer {
            name: name.to_string(),
            data,
        }
    }

    pub fn complex(name: &str, data: Vec<Complex64>) -> Self {
        Column::Complex {
            name: name.to_string(),
            data,
        }
    }

    pub fn text(name: &str, data: Vec<String>) -> Self {
        Column::Text {
            name: name.to_string(),
            data,
        }
    }

    fn len(&self) -> usize {
        match self {
            Column::Real { data, .. } => data.len(),
            Column::Integer { data, .. } => data.len(),
            Column::Complex { data, .. } => data.len(),
            Column::Text { data, .. } => data.len(),
        }
    }

    fn name(&self) -> &str {
        match self {
            Column::Real { name, .. } => name,
            Column::Integer { name, .. } => name,
            Column::Complex { name, .. } => name,
            Column::Text { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResultTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<Column>,
}

impl ResultTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    /// Numeric metadata in the same shortest form as the data cells.
    pub fn meta_num(&mut self, key: &str, value: f64) -> &mut Self {
        self.metadata.push((key.to_string(), format_number(value)));
        self
    }

    pub fn push(&mut self, column: Column) -> &mut Self {
        self.columns.push(column);
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map(|c| c.len()).unwrap_or(0)
    }

    fn check(&self) -> Result<(), String> {
        let rows = self.rows();
        for col in &self.columns {
            if col.len() != rows {
                return Err(format!(
                    "column '{}' has {} rows, expected {rows}",
                    col.name(),
                    col.len()
                ));
            }
            if col.name().contains(',') || col.name().contains('\n') {
                return Err(format!("column name '{}' contains a separator", col.name()));
            }
        }
        for (k, v) in &self.metadata {
            if k.contains('\n') || v.contains('\n') {
                return Err(format!("metadata entry '{k}' contains a newline"));
            }
        }
        for col in &self.columns {
            if let Column::Text { name, data } = col {
                if data.iter().any(|s| s.contains(',') || s.contains('\n')) {
                    return Err(format!("text column '{name}' contains a separator"));
                }
            }
        }
        Ok(())
    }

    /// Renders the CSV content, metadata first, always LF.
    pub fn render(&self) -> Result<String, String> {
        self.check()?;
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .flat_map(|c| match c {
                Column::Complex { name, .. } => vec![format!("{name}_re"), format!("{name}_im")],
                other => vec![other.name().to_string()],
            })
            .collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in 0..self.rows() {
            let mut cells: Vec<String> = Vec::with_capacity(header.len());
            for col in &self.columns {
                match col {
                    Column::Real { data, .. } => cells.push(format_number(data[row])),
                    Column::Integer { data, .. } => cells.push(data[row].to_string()),
                    Column::Complex { data, .. } => {
                        cells.push(format_number(data[row].re));
                        cells.push(format_number(data[row].im));
                    }
                    Column::Text { data, .. } => cells.push(data[row].clone()),
                }
            }
            let _ = writeln!(out, "{}", cells.join(","));
        }
        Ok(out)
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        let content = self
            .render()
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        fs::write(path, content)
    }
}

/// Shortest round-trip decimal: both `{}` and `{:e}` print the minimal
/// digit string that parses back to the identical bits; take whichever
/// rendering is shorter (ties go to the plain form).
pub fn format_number(x: f64) -> String {
    let plain = format!("{x}");
    let exp = format!("{x:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

/// Parsed-back CSV: metadata pairs, header names, and raw cells.
#[derive(Debug, Clone)]
pub struct ParsedCsv {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Reads a table back; the inverse of [`ResultTable::render`] up to typing.
pub fn parse_csv(content: &str) -> Result<ParsedCsv, String> {
    let mut metadata = Vec::new();
    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for line in content.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest
                .split_once(" = ")
                .ok_or_else(|| format!("malformed metadata line '{line}'"))?;
            metadata.push((k.to_string(), v.to_string()));
            continue;
        }
        let cells: Vec<String> = line.split(',').map(|s| s.to_string()).collect();
        match &header {
            None => header = Some(cells),
            Some(h) => {
                if cells.len() != h.len() {
                    return Err(format!(
                        "row has {} cells, header has {}",
                        cells.len(),
                        h.len()
                    ));
                }
                rows.push(cells);
            }
        }
    }
    Ok(ParsedCsv {
        metadata,
        header: header.ok_or("missing header row")?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_parses_back_bit_exactly() {
        let mut table = ResultTable::new();
        table.meta("scenario", "demo").meta("seed", 42);
        table.push(Column::real("x", vec![0.0, 0.5, 1.0 / 3.0, f64::MIN_POSITIVE]));
        table.push(Column::complex(
            "z",
            vec![
                Complex64::new(1.0, -2.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(-0.0, 3e-300),
                Complex64::new(9.9e99, 0.0),
            ],
        ));
        table.push(Column::integer("n", vec![1, 2, 3, -4]));
        let rendered = table.render().unwrap();
        let parsed = parse_csv(&rendered).unwrap();
        assert_eq!(parsed.metadata.len(), 2);
        assert_eq!(parsed.header, vec!["x", "z_re", "z_im", "n"]);
        assert_eq!(parsed.rows.len(), 4);
        for (row, idx) in parsed.rows.iter().zip(0..) {
            let x: f64 = row[0].parse().unwrap();
            let want = match &table.columns[0] {
                Column::Real { data, .. } => data[idx],
                _ => unreachable!(),
            };
            assert_eq!(x.to_bits(), want.to_bits());
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut table = ResultTable::new();
        table.meta("scenario", "demo");
        table.push(Column::real("x", vec![]));
        let rendered = table.render().unwrap();
        assert_eq!(rendered, "# scenario = demo\nx\n");
    }

    #[test]
    fn mismatched_columns_are_rejected() {
        let mut table = ResultTable::new();
        table.push(Column::real("x", vec![1.0]));
        table.push(Column::real("y", vec![]));
        assert!(table.render().is_err());
    }
}
