//! Findings reported by the parsers, the notation validator and the
//! transformers, plus the rule catalog they are drawn from.

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    /// Informational; used for normalizations applied by the reverse transformer.
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

/// Rule identifiers. The `R*` rules restate the notation requirements an ER
/// model must meet before transformation; the rest are this tool's own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// Every regular entity type has a key sharing its first three letters.
    R2_4_2,
    /// Names start with a capital letter and are singular.
    R2_5_1,
    /// Names are purely alphabetic.
    R2_5_2,
    /// A subtype has an intrinsic attribute or takes part in a relationship.
    R2_2_1I,
    /// The construct is outside the six supported transformation steps.
    Subset,
    Syntax,
    Struct,
    Transform,
    Reverse,
    Normalize,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::R2_4_2,
        RuleId::R2_5_1,
        RuleId::R2_5_2,
        RuleId::R2_2_1I,
        RuleId::Subset,
        RuleId::Syntax,
        RuleId::Struct,
        RuleId::Transform,
        RuleId::Reverse,
        RuleId::Normalize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::R2_4_2 => "R2.4.2",
            RuleId::R2_5_1 => "R2.5.1",
            RuleId::R2_5_2 => "R2.5.2",
            RuleId::R2_2_1I => "R2.2.1-I",
            RuleId::Subset => "SUBSET",
            RuleId::Syntax => "SYNTAX",
            RuleId::Struct => "STRUCT",
            RuleId::Transform => "XFORM",
            RuleId::Reverse => "REVERSE",
            RuleId::Normalize => "NORM",
        }
    }

    pub fn from_code(code: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.as_str() == code)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCatalogEntry {
    pub rule: RuleId,
    pub description: &'static str,
    pub severity: Severity,
}

/// The documented catalog. Every diagnostic carries one of these ids.
pub fn rule_catalog() -> Vec<RuleCatalogEntry> {
    use RuleId::*;
    use Severity::*;
    vec![
        RuleCatalogEntry {
            rule: R2_4_2,
            description: "regular entity type needs a key attribute whose first three letters match the entity name (ties warn)",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: R2_5_1,
            description: "names begin with an uppercase letter; entity type names should be singular (warning)",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: R2_5_2,
            description: "names contain only letters: no digits, underscores, dashes, hyphens, slashes or other symbols",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: R2_2_1I,
            description: "a subtype has at least one intrinsic attribute or participates in a relationship type",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Subset,
            description: "only binary 1:N between regular entity types and 1:1 between a subtype and a regular entity type are transformable",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Syntax,
            description: "malformed .er or .rds source text",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Struct,
            description: "structural model invariant violated (unresolved reference, duplicate name, missing key)",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Transform,
            description: "forward transformation step failed",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Reverse,
            description: "relation or foreign key could not be interpreted during reverse transformation",
            severity: Error,
        },
        RuleCatalogEntry {
            rule: Normalize,
            description: "information not carried by the schema was regenerated during reverse transformation",
            severity: Note,
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// A position in a source file.
    Source(Span),
    /// A path to a model element, e.g. `entity Employee` or `entity Employee.EmpNo`.
    Element(String),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: RuleId,
    pub severity: Severity,
    pub message: String,
    pub location: Location,
}

impl Diagnostic {
    pub fn error(rule: RuleId, message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            rule,
            severity: Severity::Error,
            message: message.into(),
            location,
        }
    }

    pub fn warning(rule: RuleId, message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            rule,
            severity: Severity::Warning,
            message: message.into(),
            location,
        }
    }

    pub fn note(rule: RuleId, message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            rule,
            severity: Severity::Note,
            message: message.into(),
            location,
        }
    }

    pub fn at(rule: RuleId, message: impl Into<String>, line: u32, col: u32) -> Self {
        Diagnostic::error(rule, message, Location::Source(Span { line, col }))
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Renders as `path:line:col: severity[ruleId]: message`. Element
    /// locations are resolved through `spans` when the element was parsed
    /// from source; otherwise the element path is appended to the message.
    pub fn render(&self, path: &str, spans: Option<&SourceMap>) -> String {
        let span = match &self.location {
            Location::Source(span) => Some(*span),
            Location::Element(elem) => spans.and_then(|m| m.get(elem)),
            Location::Unknown => None,
        };
        let head = match span {
            Some(Span { line, col }) => format!("{path}:{line}:{col}"),
            None => path.to_string(),
        };
        let mut out = format!("{head}: {}[{}]: {}", self.severity, self.rule, self.message);
        if let (None, Location::Element(elem)) = (span, &self.location) {
            out.push_str(&format!(" (at {elem})"));
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity, self.rule, self.message)?;
        if let Location::Element(elem) = &self.location {
            write!(f, " (at {elem})")?;
        }
        Ok(())
    }
}

/// Element path to source position, produced alongside a parsed model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceMap {
    spans: HashMap<String, Span>,
}

impl SourceMap {
    pub fn insert(&mut self, element: String, span: Span) {
        self.spans.entry(element).or_insert(span);
    }

    pub fn get(&self, element: &str) -> Option<Span> {
        self.spans.get(element).copied()
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
