//! Line-oriented input files: one `key: value` per line, `#` starts a comment,
//! blank lines are ignored. Every diagnostic names the file and line.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input, located at a file line (line 0 means the whole file).
    Input { path: String, line: usize, message: String },
    Usage(String),
    Core(galcoh::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { path, line: 0, message } => write!(f, "{path}: {message}"),
            CliError::Input { path, line, message } => write!(f, "{path}:{line}: {message}"),
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<galcoh::Error> for CliError {
    fn from(e: galcoh::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct Line {
    pub no: usize,
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug)]
pub struct InputFile {
    pub path: String,
    pub bytes: Vec<u8>,
    pub lines: Vec<Line>,
}

impl InputFile {
    pub fn read(path: &str) -> CliResult<InputFile> {
        let bytes = std::fs::read(Path::new(path)).map_err(|e| CliError::Input {
            path: path.to_string(),
            line: 0,
            message: e.to_string(),
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input {
            path: path.to_string(),
            line: 0,
            message: "not valid UTF-8".into(),
        })?;
        let mut file = InputFile::parse(path, &text)?;
        file.bytes = bytes;
        Ok(file)
    }

    pub fn parse(path: &str, text: &str) -> CliResult<InputFile> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once(':').ok_or_else(|| CliError::Input {
                path: path.to_string(),
                line: i + 1,
                message: format!("expected `key: value`, found {body:?}"),
            })?;
            lines.push(Line {
                no: i + 1,
                key: key.trim().to_string(),
                value: value.trim().to_string(),
            });
        }
        Ok(InputFile {
            path: path.to_string(),
            bytes: text.as_bytes().to_vec(),
            lines,
        })
    }

    pub fn err(&self, line: usize, message: impl Into<String>) -> CliError {
        CliError::Input {
            path: self.path.clone(),
            line,
            message: message.into(),
        }
    }

    pub fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        match self.lines.iter().find(|l| !allowed.contains(&l.key.as_str())) {
            Some(l) => Err(self.err(l.no, format!("unknown key `{}` (expected one of {})", l.key, allowed.join(", ")))),
            None => Ok(()),
        }
    }

    pub fn all<'a>(&'a self, key: &str) -> impl Iterator<Item = &'a Line> + 'a {
        let key = key.to_string();
        self.lines.iter().filter(move |l| l.key == key)
    }

    pub fn optional(&self, key: &str) -> CliResult<Option<&Line>> {
        let mut it = self.all(key);
        let first = it.next();
        if let Some(dup) = it.next() {
            return Err(self.err(dup.no, format!("`{key}` given more than once")));
        }
        Ok(first)
    }

    pub fn one(&self, key: &str) -> CliResult<&Line> {
        self.optional(key)?.ok_or_else(|| self.err(0, format!("missing `{key}`")))
    }

    pub fn number<T: std::str::FromStr>(&self, line: &Line) -> CliResult<T> {
        line.value
            .parse()
            .map_err(|_| self.err(line.no, format!("`{}` is not a valid number", line.value)))
    }

    /// Wraps a library error with the line it came from.
    pub fn at<T>(&self, line: &Line, r: galcoh::Result<T>) -> CliResult<T> {
        r.map_err(|e| self.err(line.no, e.to_string()))
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(text.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_lines() {
        let f = InputFile::parse("x", "# head\n\na: 1 # tail\n b : (0 1)\n").unwrap();
        assert_eq!(f.lines.len(), 2);
        assert_eq!((f.lines[1].no, f.lines[1].key.as_str(), f.lines[1].value.as_str()), (4, "b", "(0 1)"));
        let e = InputFile::parse("x", "a: 1\nbroken\n").unwrap_err();
        assert_eq!(e.to_string(), "x:2: expected `key: value`, found \"broken\"");
    }

    #[test]
    fn duplicates_and_unknown_keys() {
        let f = InputFile::parse("x", "a: 1\nb: 2\na: 3\n").unwrap();
        assert_eq!(f.optional("a").unwrap_err().to_string(), "x:3: `a` given more than once");
        assert_eq!(f.check_keys(&["a"]).unwrap_err().to_string(), "x:2: unknown key `b` (expected one of a)");
        assert_eq!(f.one("c").unwrap_err().to_string(), "x: missing `c`");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(BigRational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
