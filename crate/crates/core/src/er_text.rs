//! The `.er` text format: a keyword-led block language standing in for
//! the ER diagram.
//!
//! ```text
//! entity Department {
//!     key DepNo;
//!     key Name;
//!     attr Field;
//!     multi Location;
//! }
//!
//! subtype Manager of Employee { }
//!
//! weak Dependent of Employee via DependentOf {
//!     partial Name;
//!     attr Sex;
//! }
//!
//! rel Controls (Department 1..n, Project 1..1) { }
//! ```
//!
//! The pair after a participant is the one written nearest to it. `//`
//! starts a comment. Identifiers are checked lexically against the
//! letters-only rule; all other notation rules are left to the validator.

use std::fmt::Write as _;

use crate::diagnostic::{Diagnostic, RuleId, SourceMap, Span};
use crate::model::{
    Attribute, AttributeKind, CardinalityPair, ErModel, Identifier, MaxCard, MinCard,
    RegularEntityType, RelationshipEndpoint, RelationshipType, Subtype, WeakEntityType,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErSource {
    /// Display path used in diagnostics.
    pub name: String,
    pub text: String,
}

impl ErSource {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        ErSource {
            name: name.into(),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    DotDot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<(Tok, Span)> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c.is_whitespace() {
            bump!();
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let c = chars[i];
                let word_char = c.is_alphanumeric()
                    || c == '_'
                    || c == '-'
                    || (c == '/' && chars.get(i + 1) != Some(&'/'));
                if !word_char {
                    break;
                }
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            if !word.chars().all(|c| c.is_ascii_alphabetic()) {
                diags.push(Diagnostic::at(
                    RuleId::R2_5_2,
                    format!(
                        "name `{word}` contains characters other than letters (no digits, underscores, dashes, hyphens, slashes or other symbols)"
                    ),
                    span.line,
                    span.col,
                ));
            }
            toks.push((Tok::Word(word), span));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            toks.push((Tok::Number(chars[start..i].iter().collect()), span));
        } else {
            let tok = match c {
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '.' if chars.get(i + 1) == Some(&'.') => {
                    bump!();
                    Some(Tok::DotDot)
                }
                _ => None,
            };
            bump!();
            match tok {
                Some(t) => toks.push((t, span)),
                None => diags.push(Diagnostic::at(
                    RuleId::Syntax,
                    format!("unexpected character `{c}`"),
                    span.line,
                    span.col,
                )),
            }
        }
    }
    toks.push((Tok::Eof, Span { line, col }));
    toks
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    diags: Vec<Diagnostic>,
    spans: SourceMap,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> Diagnostic {
        let span = self.span();
        Diagnostic::at(
            RuleId::Syntax,
            format!("expected {expected}, found {}", self.peek().describe()),
            span.line,
            span.col,
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error_here(&format!("`{kw}`"))),
        }
    }

    fn name(&mut self) -> PResult<(Identifier, Span)> {
        match self.peek().clone() {
            Tok::Word(w) => {
                let (_, span) = self.advance();
                Ok((Identifier::new(w), span))
            }
            _ => Err(self.error_here("a name")),
        }
    }

    /// Skips to just past the next closing brace.
    fn recover(&mut self) {
        loop {
            match self.advance().0 {
                Tok::RBrace | Tok::Eof => return,
                _ => {}
            }
        }
    }

    fn model(&mut self) -> ErModel {
        let mut m = ErModel::default();
        loop {
            let result = match self.peek().clone() {
                Tok::Eof => break,
                Tok::Word(w) if w == "entity" => self.entity().map(|e| m.regular_entities.push(e)),
                Tok::Word(w) if w == "subtype" => self.subtype().map(|s| m.subtypes.push(s)),
                Tok::Word(w) if w == "weak" => self.weak().map(|w| m.weak_entities.push(w)),
                Tok::Word(w) if w == "rel" => self.relationship().map(|r| m.relationships.push(r)),
                _ => Err(self.error_here("`entity`, `subtype`, `weak` or `rel`")),
            };
            if let Err(d) = result {
                self.diags.push(d);
                self.recover();
            }
        }
        m
    }

    /// `{ (kw Name ;)* }` with the keyword restricted to `allowed`.
    fn members(&mut self, path: &str, allowed: &[&str]) -> PResult<Vec<Attribute>> {
        self.expect(Tok::LBrace)?;
        let mut attrs = Vec::new();
        loop {
            let (tok, span) = (self.peek().clone(), self.span());
            match tok {
                Tok::RBrace => {
                    self.advance();
                    return Ok(attrs);
                }
                Tok::Word(kw) => {
                    let kind = match kw.as_str() {
                        "key" => AttributeKind::Key,
                        "attr" => AttributeKind::Simple,
                        "multi" => AttributeKind::Multivalued,
                        "partial" => AttributeKind::PartialKey,
                        _ => return Err(self.error_here(&expected_members(allowed))),
                    };
                    if !allowed.contains(&kw.as_str()) {
                        return Err(Diagnostic::at(
                            RuleId::Syntax,
                            format!(
                                "`{kw}` is not allowed in this block; expected {}",
                                expected_members(allowed)
                            ),
                            span.line,
                            span.col,
                        ));
                    }
                    self.advance();
                    let (name, nspan) = self.name()?;
                    self.expect(Tok::Semi)?;
                    self.spans.insert(format!("{path}.{name}"), nspan);
                    attrs.push(Attribute { name, kind });
                }
                _ => return Err(self.error_here(&expected_members(allowed))),
            }
        }
    }

    fn header(&mut self, kw: &str, path_kw: &str) -> PResult<(Identifier, String)> {
        self.expect_keyword(kw)?;
        let (name, span) = self.name()?;
        let path = format!("{path_kw} {name}");
        self.spans.insert(path.clone(), span);
        Ok((name, path))
    }

    fn entity(&mut self) -> PResult<RegularEntityType> {
        let (name, path) = self.header("entity", "entity")?;
        let attributes = self.members(&path, &["key", "attr", "multi"])?;
        Ok(RegularEntityType { name, attributes })
    }

    fn subtype(&mut self) -> PResult<Subtype> {
        let (name, path) = self.header("subtype", "subtype")?;
        self.expect_keyword("of")?;
        let (supertype, _) = self.name()?;
        let attributes = self.members(&path, &["attr"])?;
        Ok(Subtype {
            name,
            supertype,
            attributes,
        })
    }

    fn weak(&mut self) -> PResult<WeakEntityType> {
        let start = self.span();
        let (name, path) = self.header("weak", "weak")?;
        self.expect_keyword("of")?;
        let (owner, _) = self.name()?;
        self.expect_keyword("via")?;
        let (identifying_relationship, _) = self.name()?;
        let members = self.members(&path, &["partial", "attr"])?;
        let (partials, attributes): (Vec<_>, Vec<_>) = members
            .into_iter()
            .partition(|a| a.kind == AttributeKind::PartialKey);
        let mut partials = partials.into_iter();
        let partial_key = partials.next().ok_or_else(|| {
            Diagnostic::at(
                RuleId::Struct,
                format!("weak entity type {name} needs exactly one `partial` attribute"),
                start.line,
                start.col,
            )
        })?;
        if partials.next().is_some() {
            return Err(Diagnostic::at(
                RuleId::Struct,
                format!("weak entity type {name} declares more than one `partial` attribute"),
                start.line,
                start.col,
            ));
        }
        Ok(WeakEntityType {
            name,
            owner,
            identifying_relationship,
            partial_key,
            attributes,
        })
    }

    fn endpoint(&mut self) -> PResult<RelationshipEndpoint> {
        let (participant, _) = self.name()?;
        let min_span = self.span();
        let min = match self.advance().0 {
            Tok::Number(n) if n == "0" => MinCard::Zero,
            Tok::Number(n) if n == "1" => MinCard::One,
            other => {
                return Err(Diagnostic::at(
                    RuleId::Syntax,
                    format!(
                        "minimum cardinality must be 0 or 1, found {}",
                        other.describe()
                    ),
                    min_span.line,
                    min_span.col,
                ))
            }
        };
        self.expect(Tok::DotDot)?;
        let max_span = self.span();
        let max = match self.advance().0 {
            Tok::Number(n) if n == "1" => MaxCard::One,
            Tok::Word(w) if w == "n" || w == "N" => MaxCard::Many,
            other => {
                return Err(Diagnostic::at(
                    RuleId::Syntax,
                    format!(
                        "maximum cardinality must be 1 or n, found {}",
                        other.describe()
                    ),
                    max_span.line,
                    max_span.col,
                ))
            }
        };
        Ok(RelationshipEndpoint {
            participant,
            nearest: CardinalityPair { min, max },
        })
    }

    fn relationship(&mut self) -> PResult<RelationshipType> {
        let (name, path) = self.header("rel", "rel")?;
        self.expect(Tok::LParen)?;
        let first = self.endpoint()?;
        self.expect(Tok::Comma)?;
        let second = self.endpoint()?;
        if *self.peek() == Tok::Comma {
            let span = self.span();
            return Err(Diagnostic::at(
                RuleId::Subset,
                format!("relationship {name} has more than two participants; only binary relationship types are supported"),
                span.line,
                span.col,
            ));
        }
        self.expect(Tok::RParen)?;
        let attributes = self.members(&path, &["attr"])?;
        Ok(RelationshipType {
            name,
            endpoints: [first, second],
            attributes,
        })
    }
}

fn expected_members(allowed: &[&str]) -> String {
    let mut s: Vec<String> = allowed.iter().map(|k| format!("`{k}`")).collect();
    s.push("`}`".into());
    s.join(", ")
}

/// Parses `.er` text. Succeeds only when the text is syntactically valid,
/// every name is letters-only and the model's structural invariants hold.
pub fn parse_er(src: &ErSource) -> Result<ErModel, Vec<Diagnostic>> {
    parse_er_with_spans(src).map(|(m, _)| m)
}

/// As [`parse_er`], also returning the position of every element and
/// attribute for rendering later diagnostics.
pub fn parse_er_with_spans(src: &ErSource) -> Result<(ErModel, SourceMap), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let toks = lex(&src.text, &mut diags);
    let mut p = Parser {
        toks,
        pos: 0,
        diags,
        spans: SourceMap::default(),
    };
    let model = p.model();
    let mut diags = p.diags;
    if diags.is_empty() {
        diags = model.check_structure();
    }
    if diags.is_empty() {
        Ok((model, p.spans))
    } else {
        Err(diags)
    }
}

fn keyword(kind: AttributeKind) -> &'static str {
    match kind {
        AttributeKind::Simple => "attr",
        AttributeKind::Key => "key",
        AttributeKind::Multivalued => "multi",
        AttributeKind::PartialKey => "partial",
    }
}

fn emit_block(out: &mut String, header: &str, attrs: &mut dyn Iterator<Item = &Attribute>) {
    let mut attrs = attrs.peekable();
    if attrs.peek().is_none() {
        let _ = writeln!(out, "{header} {{ }}");
        return;
    }
    let _ = writeln!(out, "{header} {{");
    for a in attrs {
        let _ = writeln!(out, "    {} {};", keyword(a.kind), a.name);
    }
    out.push_str("}\n");
}

fn endpoint_text(ep: &RelationshipEndpoint) -> String {
    format!("{} {}..{}", ep.participant, ep.nearest.min, ep.nearest.max)
}

/// Canonical text for a model. Declaration order is preserved; blocks are
/// separated by a blank line.
pub fn emit_er(m: &ErModel) -> String {
    let mut blocks = Vec::new();
    for e in &m.regular_entities {
        let mut b = String::new();
        emit_block(
            &mut b,
            &format!("entity {}", e.name),
            &mut e.attributes.iter(),
        );
        blocks.push(b);
    }
    for s in &m.subtypes {
        let mut b = String::new();
        emit_block(
            &mut b,
            &format!("subtype {} of {}", s.name, s.supertype),
            &mut s.attributes.iter(),
        );
        blocks.push(b);
    }
    for w in &m.weak_entities {
        let mut b = String::new();
        emit_block(
            &mut b,
            &format!(
                "weak {} of {} via {}",
                w.name, w.owner, w.identifying_relationship
            ),
            &mut std::iter::once(&w.partial_key).chain(w.attributes.iter()),
        );
        blocks.push(b);
    }
    for r in &m.relationships {
        let mut b = String::new();
        emit_block(
            &mut b,
            &format!(
                "rel {} ({}, {})",
                r.name,
                endpoint_text(&r.endpoints[0]),
                endpoint_text(&r.endpoints[1])
            ),
            &mut r.attributes.iter(),
        );
        blocks.push(b);
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ErModel, Vec<Diagnostic>> {
        parse_er(&ErSource::new("t.er", text))
    }

    #[test]
    fn single_entity_canonical_form() {
        let m = parse("entity Employee { key EmpNo; }").unwrap();
        assert_eq!(emit_er(&m), "entity Employee {\n    key EmpNo;\n}\n");
    }

    #[test]
    fn empty_entity_body_is_rejected() {
        let d = parse("entity Employee { }").unwrap_err();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, RuleId::Struct);
        assert!(d[0].message.contains("no key"));
    }

    #[test]
    fn underscore_name_is_lexical_error() {
        let d = parse("entity Employee { key EmpNo; attr Start_Date; }").unwrap_err();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, RuleId::R2_5_2);
        assert_eq!(
            d[0].location,
            crate::diagnostic::Location::Source(Span { line: 1, col: 35 })
        );
    }

    #[test]
    fn other_symbols_are_lexical_errors() {
        for bad in ["Emp2", "Start-Date", "Start/Date", "_Date"] {
            let d = parse(&format!("entity Employee {{ key EmpNo; attr {bad}; }}")).unwrap_err();
            assert_eq!(d[0].rule, RuleId::R2_5_2, "{bad}");
        }
    }

    #[test]
    fn comments_and_whitespace() {
        let m = parse("// header\nentity Employee // trailing\n{key EmpNo;attr Name;}").unwrap();
        assert_eq!(m.regular_entities[0].attributes.len(), 2);
    }

    #[test]
    fn numeric_max_is_rejected() {
        let d = parse(
            "entity Alpha { key AlpNo; } entity Beta { key BetNo; } rel R (Alpha 1..2, Beta 1..1) { }",
        )
        .unwrap_err();
        assert_eq!(d[0].rule, RuleId::Syntax);
        assert!(d[0].message.contains("maximum cardinality"));
    }

    #[test]
    fn unresolved_reference() {
        let d = parse("entity Employee { key EmpNo; } subtype Engineer of Person { attr Grade; }")
            .unwrap_err();
        assert_eq!(d[0].rule, RuleId::Struct);
    }

    #[test]
    fn member_keyword_must_fit_block() {
        let d = parse("entity Employee { key EmpNo; } subtype Engineer of Employee { key Grade; }")
            .unwrap_err();
        assert_eq!(d[0].rule, RuleId::Syntax);
        assert_eq!(
            d[0].location,
            crate::diagnostic::Location::Source(Span { line: 1, col: 63 })
        );
    }

    #[test]
    fn recovers_after_a_bad_block() {
        let d = parse("entity { key A; } entity Employee { key EmpNo; attr ; }").unwrap_err();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn ternary_relationship_is_subset_error() {
        let d = parse(
            "entity Alpha { key AlpNo; } entity Beta { key BetNo; } entity Gamma { key GamNo; } \
             rel R (Alpha 1..1, Beta 1..n, Gamma 1..n) { }",
        )
        .unwrap_err();
        assert_eq!(d[0].rule, RuleId::Subset);
    }

    #[test]
    fn spans_are_recorded() {
        let (_, spans) =
            parse_er_with_spans(&ErSource::new("t.er", "entity Employee {\n  key EmpNo;\n}"))
                .unwrap();
        assert_eq!(spans.get("entity Employee"), Some(Span { line: 1, col: 8 }));
        assert_eq!(
            spans.get("entity Employee.EmpNo"),
            Some(Span { line: 2, col: 7 })
        );
    }
}
