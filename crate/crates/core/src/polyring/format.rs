//! The `.ideal` text format.
//!
//! ```text
//! char 5
//! vars x y z
//! # comment
//! x*z
//! z^3
//! ```
//!
//! A scenario file prefixes this with a `[scenario]` line followed by
//! `type <name>`.

use std::path::Path;
use std::sync::Arc;

use super::{parse_polynomial_at, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::numeric::{Domain, Field};

/// An `.ideal` file before its generators are parsed into a concrete
/// coefficient type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub scenario: Option<String>,
    pub characteristic: u64,
    pub vars: Vec<String>,
    /// Generator expressions with their 1-based line numbers.
    pub generators: Vec<(usize, String)>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .peekable();
        let mut scenario = None;

        let header =
            |lines: &mut std::iter::Peekable<_>, expected: &str| -> Result<(usize, String)> {
                let next: Option<(usize, &str)> = lines.next();
                match next {
                    Some((n, l)) => match l.split_once(char::is_whitespace) {
                        Some((k, rest)) if k == expected => Ok((n, rest.trim().to_string())),
                        _ => Err(Error::parse(
                            n,
                            1,
                            format!("expected `{expected} ...` header"),
                        )),
                    },
                    None => Err(Error::parse(0, 1, format!("missing `{expected}` header"))),
                }
            };

        if lines.peek().is_some_and(|(_, l)| *l == "[scenario]") {
            lines.next();
            let (_, t) = header(&mut lines, "type")?;
            scenario = Some(t);
        }

        let (n, c) = header(&mut lines, "char")?;
        let characteristic: u64 = c
            .parse()
            .map_err(|_| Error::parse(n, 6, format!("bad characteristic {c:?}")))?;
        let (_, v) = header(&mut lines, "vars")?;
        let vars: Vec<String> = v.split_whitespace().map(str::to_string).collect();

        let generators = lines
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(n, l)| (n, l.to_string()))
            .collect();
        Ok(IdealFile {
            scenario,
            characteristic,
            vars,
            generators,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn ring(&self, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        PolyRing::new(
            self.vars.iter().cloned(),
            Domain::from_characteristic(self.characteristic)?,
            order,
        )
    }

    pub fn polynomials<C: Field>(&self, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial<C>>> {
        self.generators
            .iter()
            .map(|(line, text)| parse_polynomial_at(text, ring, *line))
            .collect()
    }

    /// Renders back to text; generators are written as given.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.scenario {
            out.push_str(&format!("[scenario]\ntype {t}\n"));
        }
        out.push_str(&format!(
            "char {}\nvars {}\n",
            self.characteristic,
            self.vars.join(" ")
        ));
        for (_, g) in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }
}
