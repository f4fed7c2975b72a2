//! Plain-text lattice files.
//!
//! A file holds one lattice: the header `lat 1`, a line `n <count>`, an
//! optional `name <token>` line, the line `covers`, and one `<a> <b>` line
//! per cover pair with `a` covered by `b`. Output is canonical: fields are
//! separated by single spaces, every line is newline-terminated, and cover
//! lines are sorted lexicographically, so printing is byte-deterministic.
//! Lines starting with `#` and blank lines are ignored on input.

use latmed_core::{Lattice, LatticeError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The textual content of a lattice file, before lattice axioms are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub n: usize,
    pub name: Option<String>,
    pub covers: Vec<(usize, usize)>,
}

fn parse_error(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<LatticeFile, FormatError> {
        let mut header_seen = false;
        let mut n: Option<usize> = None;
        let mut name: Option<String> = None;
        let mut in_covers = false;
        let mut covers = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            last_line = lineno;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !header_seen {
                if fields != ["lat", "1"] {
                    return Err(parse_error(lineno, "expected the header line 'lat 1'"));
                }
                header_seen = true;
                continue;
            }
            if in_covers {
                let [a, b] = fields[..] else {
                    return Err(parse_error(lineno, "expected a cover line '<a> <b>'"));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_error(lineno, format!("bad element index '{s}'")))
                };
                let (a, b) = (parse(a)?, parse(b)?);
                let n = n.expect("covers section starts only after n");
                for x in [a, b] {
                    if x >= n {
                        return Err(parse_error(
                            lineno,
                            format!("cover index {x} out of range for n {n}"),
                        ));
                    }
                }
                covers.push((a, b));
                continue;
            }
            match fields[0] {
                "n" => {
                    if n.is_some() {
                        return Err(parse_error(lineno, "duplicate 'n' line"));
                    }
                    let [_, value] = fields[..] else {
                        return Err(parse_error(lineno, "expected 'n <count>'"));
                    };
                    n = Some(
                        value
                            .parse()
                            .map_err(|_| parse_error(lineno, format!("bad count '{value}'")))?,
                    );
                }
                "name" => {
                    if name.is_some() {
                        return Err(parse_error(lineno, "duplicate 'name' line"));
                    }
                    let [_, token] = fields[..] else {
                        return Err(parse_error(lineno, "expected 'name <token>'"));
                    };
                    name = Some(token.to_string());
                }
                "covers" => {
                    if fields.len() != 1 {
                        return Err(parse_error(lineno, "the 'covers' line takes no fields"));
                    }
                    if n.is_none() {
                        return Err(parse_error(lineno, "'n <count>' must come before 'covers'"));
                    }
                    in_covers = true;
                }
                other => {
                    return Err(parse_error(lineno, format!("unknown directive '{other}'")));
                }
            }
        }
        if !in_covers {
            return Err(parse_error(last_line + 1, "missing 'covers' section"));
        }
        Ok(LatticeFile {
            n: n.expect("checked above"),
            name,
            covers,
        })
    }

    pub fn from_lattice(l: &Lattice) -> LatticeFile {
        let name = l
            .name()
            .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
            .map(str::to_string);
        LatticeFile {
            n: l.n(),
            name,
            covers: l.covers().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Lattice, LatticeError> {
        let l = Lattice::build_from_covers(self.n, &self.covers)?;
        Ok(match &self.name {
            Some(name) => l.with_name(name.clone()),
            None => l,
        })
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        writeln!(out, "lat 1").unwrap();
        writeln!(out, "n {}", self.n).unwrap();
        if let Some(name) = &self.name {
            writeln!(out, "name {name}").unwrap();
        }
        writeln!(out, "covers").unwrap();
        let mut covers = self.covers.clone();
        covers.sort_unstable();
        for (a, b) in covers {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }
}
