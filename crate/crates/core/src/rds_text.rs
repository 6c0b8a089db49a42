//! The `.rds` text format: one relation per line.
//!
//! ```text
//! Department[_DepNo_, _Name_, Field, Manager-EmpNo(Manages, 1, 1, 1), StartDate]
//! ```
//!
//! `_Attr_` marks an underlined (primary-key) attribute, `Prefix-Attr` a
//! subtype-prefixed FK and `(Rel, v2, v3, v4)` the bracketed FK suffix.
//! Names never contain underscores, so the underline marks are unambiguous.
//! The parser also accepts an en-dash as prefix separator.

use crate::diagnostic::{Diagnostic, RuleId};
use crate::model::{
    FkSuffix, Identifier, MaxCard, MinCard, RdsAttribute, Relation, RelationalSchema,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdsSource {
    pub name: String,
    pub text: String,
}

impl RdsSource {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        RdsSource {
            name: name.into(),
            text: text.into(),
        }
    }
}

pub fn emit_attribute(a: &RdsAttribute) -> String {
    let mut s = String::new();
    if let Some(p) = &a.prefix {
        s.push_str(p.as_str());
        s.push('-');
    }
    if a.underlined {
        s.push('_');
        s.push_str(a.name.as_str());
        s.push('_');
    } else {
        s.push_str(a.name.as_str());
    }
    if let Some(suffix) = &a.suffix {
        s.push_str(&suffix.to_string());
    }
    s
}

pub fn emit_relation(r: &Relation) -> String {
    let attrs: Vec<String> = r.attributes.iter().map(emit_attribute).collect();
    format!("{}[{}]", r.name, attrs.join(", "))
}

pub fn emit_rds(s: &RelationalSchema) -> String {
    s.relations
        .iter()
        .map(|r| emit_relation(r) + "\n")
        .collect()
}

struct LineParser {
    chars: Vec<char>,
    pos: usize,
    line: u32,
}

type PResult<T> = Result<T, Diagnostic>;

impl LineParser {
    fn col(&self) -> u32 {
        self.pos as u32 + 1
    }

    fn error(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::at(RuleId::Syntax, msg, self.line, self.col())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.found())))
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of line".into(),
        }
    }

    fn name(&mut self) -> PResult<Identifier> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected a name, found {}", self.found())));
        }
        Ok(Identifier::new(
            self.chars[start..self.pos].iter().collect::<String>(),
        ))
    }

    fn min(&mut self) -> PResult<MinCard> {
        self.skip_ws();
        let v = match self.peek() {
            Some('0') => MinCard::Zero,
            Some('1') => MinCard::One,
            _ => return Err(self.error(format!("expected 0 or 1, found {}", self.found()))),
        };
        self.pos += 1;
        Ok(v)
    }

    fn max(&mut self) -> PResult<MaxCard> {
        self.skip_ws();
        let v = match self.peek() {
            Some('1') => MaxCard::One,
            Some('n' | 'N') => MaxCard::Many,
            _ => return Err(self.error(format!("expected 1 or n, found {}", self.found()))),
        };
        self.pos += 1;
        Ok(v)
    }

    fn attribute(&mut self) -> PResult<RdsAttribute> {
        self.skip_ws();
        let mut attr = if self.eat('_') {
            let name = self.name()?;
            if self.peek() != Some('_') {
                return Err(self.error(format!(
                    "expected closing `_` after {name}, found {}",
                    self.found()
                )));
            }
            self.pos += 1;
            RdsAttribute::underlined(name.as_str())
        } else {
            let first = self.name()?;
            if matches!(self.peek(), Some('-' | '\u{2013}')) {
                self.pos += 1;
                let name = self.name()?;
                RdsAttribute {
                    prefix: Some(first),
                    ..RdsAttribute::plain(name.as_str())
                }
            } else {
                RdsAttribute::plain(first.as_str())
            }
        };
        if self.eat('(') {
            let relationship = self.name()?;
            self.expect(',')?;
            let near_min = self.min()?;
            self.expect(',')?;
            let far_min = self.min()?;
            self.expect(',')?;
            let far_max = self.max()?;
            self.expect(')')?;
            attr.suffix = Some(FkSuffix {
                relationship,
                near_min,
                far_min,
                far_max,
            });
        }
        Ok(attr)
    }

    fn relation(&mut self) -> PResult<Relation> {
        let name = self.name()?;
        let mut rel = Relation::new(name);
        self.expect('[')?;
        if !self.eat(']') {
            loop {
                rel.attributes.push(self.attribute()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.error(format!("unexpected {} after relation", self.found())));
        }
        Ok(rel)
    }
}

/// Parses `.rds` text and checks the attribute invariants: a prefixed
/// attribute has a suffix, an underlined one has none, qualified names are
/// unique per relation and relation names are unique.
pub fn parse_rds(src: &RdsSource) -> Result<RelationalSchema, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut schema = RelationalSchema::default();
    for (i, raw) in src.text.lines().enumerate() {
        let line = i as u32 + 1;
        let text = raw.split("//").next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let mut p = LineParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
        };
        match p.relation() {
            Ok(rel) => {
                for v in rel.invariant_violations() {
                    diags.push(Diagnostic::at(RuleId::Struct, v, line, 1));
                }
                if schema.contains(&rel.name) {
                    diags.push(Diagnostic::at(
                        RuleId::Struct,
                        format!("duplicate relation {}", rel.name),
                        line,
                        1,
                    ));
                }
                schema.relations.push(rel);
            }
            Err(d) => diags.push(d),
        }
    }
    if diags.is_empty() {
        Ok(schema)
    } else {
        Err(diags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RelationalSchema, Vec<Diagnostic>> {
        parse_rds(&RdsSource::new("t.rds", text))
    }

    #[test]
    fn single_relation() {
        let s = parse("E[_ENo_]").unwrap();
        assert_eq!(emit_rds(&s), "E[_ENo_]\n");
    }

    #[test]
    fn loose_spacing_and_en_dash() {
        let s = parse(
            "Department[_DepNo_, _Name_, Field, Manager\u{2013}EmpNo(Manages, 1, 1 ,1), StartDate]",
        )
        .unwrap();
        assert_eq!(
            emit_rds(&s),
            "Department[_DepNo_, _Name_, Field, Manager-EmpNo(Manages, 1, 1, 1), StartDate]\n"
        );
        let fk = &s.relations[0].attributes[3];
        assert_eq!(fk.prefix.as_ref().unwrap(), "Manager");
        assert_eq!(fk.suffix.as_ref().unwrap().far_max, MaxCard::One);
    }

    #[test]
    fn mva_shape() {
        let s = parse("Location[_DepNo_, _Location_]").unwrap();
        assert_eq!(s.relations[0].underlined_count(), 2);
        assert_eq!(s.relations[0].attributes.len(), 2);
    }

    #[test]
    fn suffixed_underlined_attribute_is_rejected() {
        let d = parse("X[_A_(R,1,1,1)]").unwrap_err();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, RuleId::Struct);
        assert!(d[0].message.contains("carries a suffix"));
    }

    #[test]
    fn prefix_without_suffix_is_rejected() {
        let d = parse("X[_A_, Manager-EmpNo]").unwrap_err();
        assert!(d[0].message.contains("prefix"));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let d = parse("Good[_A_]\nBad[_A_, B(R, 2, 1, 1)]").unwrap_err();
        assert_eq!(d[0].rule, RuleId::Syntax);
        assert_eq!(
            d[0].location,
            crate::diagnostic::Location::Source(crate::diagnostic::Span { line: 2, col: 15 })
        );
    }

    #[test]
    fn duplicates_and_empty_relations() {
        assert!(parse("A[_X_]\nA[_Y_]").is_err());
        assert!(parse("A[_X_, X]").is_err());
        assert!(parse("A[]").is_err());
        assert!(parse("A[X]").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse("// header\n\nE[_ENo_] // trailing\n").unwrap();
        assert_eq!(s.relations.len(), 1);
        assert_eq!(emit_rds(&RelationalSchema::default()), "");
    }
}
