use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use adaseg::TimeSeries;
use thiserror::Error;

/// Bad input data or flags; the process exits with status 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{0}: no data rows")]
    Empty(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Two columns, x then y; x strictly increasing.
    Xy,
    /// One column of y values; x is the row index.
    Y,
}

/// `start:len` slice of the input applied before segmenting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub len: usize,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("window {s:?} is not of the form start:len"))?;
        let start = a
            .trim()
            .parse()
            .map_err(|e| format!("window start {a:?}: {e}"))?;
        let len = b
            .trim()
            .parse()
            .map_err(|e| format!("window length {b:?}: {e}"))?;
        Ok(Window { start, len })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.len)
    }
}

#[derive(Debug, Clone)]
pub struct SeriesFile {
    pub path: PathBuf,
    pub format: Format,
    pub delimiter: u8,
    pub header: bool,
}

impl SeriesFile {
    pub fn read(&self) -> anyhow::Result<TimeSeries> {
        let file = File::open(&self.path)
            .map_err(|e| InputError::Usage(format!("{}: {e}", self.path.display())))?;
        self.parse(file)
    }

    pub fn parse<R: Read>(&self, reader: R) -> anyhow::Result<TimeSeries> {
        let name = self.path.display().to_string();
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(self.delimiter)
            .has_headers(self.header)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let want = match self.format {
            Format::Xy => 2,
            Format::Y => 1,
        };
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_error(&name, line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != want {
                return Err(parse_error(
                    &name,
                    line,
                    format!(
                        "expected {want} field(s) for {:?} format, found {}",
                        self.format,
                        record.len()
                    ),
                )
                .into());
            }
            let mut values = Vec::with_capacity(want);
            for field in record.iter() {
                let v: f64 = field
                    .parse()
                    .map_err(|_| parse_error(&name, line, format!("{field:?} is not a number")))?;
                if !v.is_finite() {
                    return Err(parse_error(&name, line, format!("{field:?} is not finite")).into());
                }
                values.push(v);
            }
            let (x, y) = match self.format {
                Format::Xy => (values[0], values[1]),
                Format::Y => (xs.len() as f64, values[0]),
            };
            if let Some(&prev) = xs.last() {
                if x <= prev {
                    return Err(parse_error(
                        &name,
                        line,
                        format!("x = {x} does not increase on the previous x = {prev}"),
                    )
                    .into());
                }
            }
            xs.push(x);
            ys.push(y);
        }
        if xs.is_empty() {
            return Err(InputError::Empty(name).into());
        }
        Ok(TimeSeries::new(xs, ys)?)
    }
}

fn parse_error(path: &str, line: u64, message: String) -> InputError {
    InputError::Parse {
        path: path.to_string(),
        line,
        message,
    }
}

/// Every `*.csv` directly inside `dir`, sorted by name.
pub fn csv_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| InputError::Usage(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if path.is_file()
            && path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
        {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(InputError::Usage(format!("{}: no .csv files", dir.display())).into());
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(format: Format, header: bool) -> SeriesFile {
        SeriesFile {
            path: "mem.csv".into(),
            format,
            delimiter: b',',
            header,
        }
    }

    #[test]
    fn y_only_uses_row_index() {
        let s = file(Format::Y, false)
            .parse("3\n1.5\n-2e-3\n".as_bytes())
            .unwrap();
        assert_eq!(s.xs(), &[0.0, 1.0, 2.0]);
        assert_eq!(s.ys(), &[3.0, 1.5, -0.002]);
    }

    #[test]
    fn xy_with_header_and_semicolons() {
        let mut f = file(Format::Xy, true);
        f.delimiter = b';';
        let s = f.parse("t;v\n0.5; 1\n2;3\n".as_bytes()).unwrap();
        assert_eq!(s.xs(), &[0.5, 2.0]);
        assert_eq!(s.ys(), &[1.0, 3.0]);
    }

    #[test]
    fn errors_name_the_line() {
        let err = file(Format::Xy, false)
            .parse("0,1\n1,2\n1,5\n".as_bytes())
            .unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("line 3") && msg.contains("does not increase"),
            "{msg}"
        );
        let err = file(Format::Y, false)
            .parse("1\nabc\n".as_bytes())
            .unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = file(Format::Y, false)
            .parse("1,2\n".as_bytes())
            .unwrap_err();
        assert!(err.to_string().contains("expected 1 field"), "{err}");
    }

    #[test]
    fn empty_input() {
        let err = file(Format::Y, false).parse("".as_bytes()).unwrap_err();
        assert!(matches!(
            err.downcast_ref::<InputError>(),
            Some(InputError::Empty(_))
        ));
    }

    #[test]
    fn window_syntax() {
        assert_eq!(
            "10:300".parse::<Window>(),
            Ok(Window {
                start: 10,
                len: 300
            })
        );
        assert!("10".parse::<Window>().is_err());
        assert!("a:3".parse::<Window>().is_err());
    }
}
