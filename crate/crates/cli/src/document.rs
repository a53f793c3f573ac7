//! The line-oriented `.gea` model format.
//!
//! ```text
//! # the four-element boolean algebra
//! elements: 0 a b 1
//! zero: 0
//! sum: a + b = 1
//! relation merge: {a b}
//! ```
//!
//! Sums with zero and mirrored equations are filled in. Elements not listed
//! in a relation form singleton classes.

use std::collections::BTreeMap;

use gea_core::congruence::build_equiv_named;
use gea_core::{EquivRel, GeaTable};

use crate::error::{CliError, Result};

/// An identifier with the position where it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub name: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumLine {
    pub a: Spanned,
    pub b: Spanned,
    pub c: Spanned,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub name: String,
    pub line: usize,
    pub classes: Vec<Vec<Spanned>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeaDocument {
    pub elements: Vec<String>,
    pub zero: String,
    pub sums: Vec<SumLine>,
    pub relations: Vec<RelationDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Punct(char),
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Splits a line into identifiers and single-character punctuation, with
/// 1-based columns.
fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok<'_>, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let col = text[..i].chars().count() + 1;
        if c.is_whitespace() {
            continue;
        }
        if is_ident_char(c) {
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if !is_ident_char(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((Tok::Ident(&text[i..end]), col));
        } else if matches!(c, ':' | '+' | '=' | '{' | '}') {
            out.push((Tok::Punct(c), col));
        } else {
            return Err(parse_err(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn ident(&mut self, what: &str) -> Result<Spanned> {
        match self.toks.get(self.pos) {
            Some(&(Tok::Ident(s), col)) => {
                self.pos += 1;
                Ok(Spanned {
                    name: s.to_string(),
                    line: self.line,
                    col,
                })
            }
            _ => Err(parse_err(self.line, self.col(), format!("expected {what}"))),
        }
    }

    fn punct(&mut self, p: char) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(&(Tok::Punct(q), _)) if q == p => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(parse_err(self.line, self.col(), format!("expected `{p}`"))),
        }
    }

    fn peek_punct(&self, p: char) -> bool {
        matches!(self.toks.get(self.pos), Some(&(Tok::Punct(q), _)) if q == p)
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.done() {
            Ok(())
        } else {
            Err(parse_err(self.line, self.col(), "unexpected trailing input"))
        }
    }
}

/// Parses a document and checks that every referenced element is declared
/// and no two equations disagree. The GEA axioms are checked later, by
/// [`GeaDocument::build`].
pub fn parse_gea_file(text: &str) -> Result<GeaDocument> {
    let mut elements: Option<(Vec<Spanned>, usize)> = None;
    let mut zero: Option<Spanned> = None;
    let mut sums = Vec::new();
    let mut relations: Vec<RelationDecl> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cur = Cursor {
            toks: tokenize(raw, line)?,
            pos: 0,
            line,
            end_col: raw.chars().count() + 1,
        };
        let key = cur.ident("a directive")?;
        match key.name.as_str() {
            "elements" => {
                cur.punct(':')?;
                if elements.is_some() {
                    return Err(parse_err(line, key.col, "`elements:` given twice"));
                }
                let mut list: Vec<Spanned> = Vec::new();
                while !cur.done() {
                    let id = cur.ident("an element name")?;
                    if list.iter().any(|x| x.name == id.name) {
                        return Err(parse_err(line, id.col, format!("element `{}` declared twice", id.name)));
                    }
                    list.push(id);
                }
                if list.is_empty() {
                    return Err(parse_err(line, cur.col(), "expected at least one element"));
                }
                elements = Some((list, line));
            }
            "zero" => {
                cur.punct(':')?;
                if zero.is_some() {
                    return Err(parse_err(line, key.col, "`zero:` given twice"));
                }
                zero = Some(cur.ident("the zero element")?);
                cur.finish()?;
            }
            "sum" => {
                cur.punct(':')?;
                let a = cur.ident("an element name")?;
                cur.punct('+')?;
                let b = cur.ident("an element name")?;
                cur.punct('=')?;
                let c = cur.ident("an element name")?;
                cur.finish()?;
                sums.push(SumLine { a, b, c });
            }
            "relation" => {
                let name = cur.ident("a relation name")?;
                cur.punct(':')?;
                if relations.iter().any(|r| r.name == name.name) {
                    return Err(parse_err(line, name.col, format!("relation `{}` defined twice", name.name)));
                }
                let mut classes: Vec<Vec<Spanned>> = Vec::new();
                while !cur.done() {
                    cur.punct('{')?;
                    let mut class = Vec::new();
                    while !cur.peek_punct('}') {
                        let id = cur.ident("an element name or `}`")?;
                        if classes.iter().flatten().chain(class.iter()).any(|x: &Spanned| x.name == id.name) {
                            return Err(parse_err(line, id.col, format!("element `{}` appears in two classes", id.name)));
                        }
                        class.push(id);
                    }
                    cur.punct('}')?;
                    classes.push(class);
                }
                relations.push(RelationDecl {
                    name: name.name,
                    line,
                    classes,
                });
            }
            other => return Err(parse_err(line, key.col, format!("unknown directive `{other}`"))),
        }
    }

    let eof = last_line + 1;
    let (elements, _) = elements.ok_or_else(|| parse_err(eof, 1, "missing `elements:` line"))?;
    let zero = zero.ok_or_else(|| parse_err(eof, 1, "missing `zero:` line"))?;
    let doc = GeaDocument {
        elements: elements.into_iter().map(|s| s.name).collect(),
        zero: zero.name.clone(),
        sums,
        relations,
    };
    doc.check_names(&zero)?;
    doc.check_equations()?;
    Ok(doc)
}

impl GeaDocument {
    fn check_names(&self, zero: &Spanned) -> Result<()> {
        let known = |s: &Spanned| {
            if self.elements.contains(&s.name) {
                Ok(())
            } else {
                Err(CliError::UnknownElement {
                    line: s.line,
                    col: s.col,
                    name: s.name.clone(),
                })
            }
        };
        known(zero)?;
        for s in &self.sums {
            known(&s.a)?;
            known(&s.b)?;
            known(&s.c)?;
        }
        for r in &self.relations {
            r.classes.iter().flatten().try_for_each(known)?;
        }
        Ok(())
    }

    /// Equations must agree with each other and with `e + 0 = e`.
    fn check_equations(&self) -> Result<()> {
        let mut seen: BTreeMap<(&str, &str), (&str, usize)> = BTreeMap::new();
        for s in &self.sums {
            let (a, b, c) = (s.a.name.as_str(), s.b.name.as_str(), s.c.name.as_str());
            let line = s.a.line;
            let conflict = |first: &str| CliError::ConflictingEquation {
                line,
                a: a.to_string(),
                b: b.to_string(),
                first: first.to_string(),
                second: c.to_string(),
            };
            if a == self.zero && b != c {
                return Err(conflict(b));
            }
            if b == self.zero && a != c {
                return Err(conflict(a));
            }
            let key = if a <= b { (a, b) } else { (b, a) };
            match seen.get(&key) {
                Some(&(old, _)) if old != c => return Err(conflict(old)),
                _ => {
                    seen.insert(key, (c, line));
                }
            }
        }
        Ok(())
    }

    /// Builds the model, checking the GEA axioms.
    pub fn build(&self) -> Result<GeaTable> {
        let eqs: Vec<(&str, &str, &str)> = self
            .sums
            .iter()
            .map(|s| (s.a.name.as_str(), s.b.name.as_str(), s.c.name.as_str()))
            .collect();
        let names: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        Ok(GeaTable::build(&names, &self.zero, &eqs)?)
    }

    pub fn relation_names(&self) -> Vec<&str> {
        self.relations.iter().map(|r| r.name.as_str()).collect()
    }

    /// The named relation on `g`, which must be built from this document.
    pub fn relation(&self, g: &GeaTable, name: &str) -> Result<EquivRel> {
        let decl = self
            .relations
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| CliError::UnknownRelation {
                name: name.to_string(),
                available: self.relation_names().join(", "),
            })?;
        let classes: Vec<Vec<&str>> = decl
            .classes
            .iter()
            .map(|c| c.iter().map(|s| s.name.as_str()).collect())
            .collect();
        Ok(build_equiv_named(g, &classes)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B4: &str = "# boolean algebra\nelements: 0 a b 1\nzero: 0\nsum: a + b = 1\nsum: b + a = 1\nrelation merge: {a b}\nrelation eq:\n";

    #[test]
    fn parses_boolean_algebra_document() {
        let doc = parse_gea_file(B4).unwrap();
        assert_eq!(doc.elements, ["0", "a", "b", "1"]);
        assert_eq!(doc.sums.len(), 2);
        assert_eq!(doc.relation_names(), ["merge", "eq"]);
        let g = doc.build().unwrap();
        assert_eq!(g.sum(g.index_of("b").unwrap(), g.index_of("a").unwrap()), g.index_of("1"));
        let merge = doc.relation(&g, "merge").unwrap();
        assert!(merge.equiv(g.index_of("a").unwrap(), g.index_of("b").unwrap()));
        assert_eq!(merge.classes().len(), 3);
        assert_eq!(doc.relation(&g, "eq").unwrap().classes().len(), 4);
    }

    #[test]
    fn conflicting_equations_are_reported_with_line() {
        let err = parse_gea_file("elements: 0 a b c d\nzero: 0\nsum: a + b = c\nsum: b + a = d\n").unwrap_err();
        assert!(matches!(err, CliError::ConflictingEquation { line: 4, .. }), "{err}");
        let err = parse_gea_file("elements: 0 a b\nzero: 0\nsum: 0 + a = b\n").unwrap_err();
        assert!(matches!(err, CliError::ConflictingEquation { .. }), "{err}");
    }

    #[test]
    fn positions_of_errors() {
        let missing_zero = parse_gea_file("elements: 0 a\n").unwrap_err();
        assert!(matches!(missing_zero, CliError::Parse { line: 2, .. }), "{missing_zero}");
        let unknown = parse_gea_file("elements: 0 a\nzero: 0\nsum: a + a = q\n").unwrap_err();
        assert!(matches!(unknown, CliError::UnknownElement { line: 3, col: 14, .. }), "{unknown}");
        let bad_char = parse_gea_file("elements: 0 a-b\n").unwrap_err();
        assert!(matches!(bad_char, CliError::Parse { line: 1, col: 14, .. }), "{bad_char}");
        let twice = parse_gea_file("elements: 0 a\nzero: 0\nrelation r: {a} {a}\n").unwrap_err();
        assert!(matches!(twice, CliError::Parse { line: 3, col: 18, .. }), "{twice}");
        let directive = parse_gea_file("element: 0\n").unwrap_err();
        assert!(matches!(directive, CliError::Parse { line: 1, col: 1, .. }), "{directive}");
    }

    #[test]
    fn axiom_failures_surface_at_build() {
        let doc = parse_gea_file("elements: 0 a\nzero: 0\nsum: a + a = 0\n").unwrap();
        assert!(doc.build().is_err());
    }

    #[test]
    fn unknown_relation_lists_alternatives() {
        let doc = parse_gea_file(B4).unwrap();
        let g = doc.build().unwrap();
        let err = doc.relation(&g, "nope").unwrap_err();
        assert_eq!(err.to_string(), "no relation named `nope` (available: merge, eq)");
    }
}
