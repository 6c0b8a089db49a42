//! Forward, reverse, forward again.

use thiserror::Error;

use crate::diagnostic::Diagnostic;
use crate::er_text::{emit_er, parse_er, ErSource};
use crate::forward::{transform_model, TransformConfig, TransformError};
use crate::model::{ErModel, RelationalSchema};
use crate::rds_text::{emit_rds, parse_rds, RdsSource};
use crate::reverse::{model_diff, normalize, reverse_transform, Reversal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundTripError {
    #[error("forward transformation failed: {0}")]
    Forward(TransformError),
    #[error("reverse transformation failed with {} diagnostic(s)", .0.len())]
    Reverse(Vec<Diagnostic>),
    #[error("re-transforming the recovered model failed: {0}")]
    Reforward(TransformError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub schema: RelationalSchema,
    /// `.rds` text of the first forward transformation.
    pub first: String,
    /// `.rds` text after reversing and transforming again.
    pub second: String,
    pub reversal: Reversal,
    /// Differences between the normalized source and the recovered model.
    pub model_diffs: Vec<String>,
    /// Text-format identities that failed, if any.
    pub format_failures: Vec<String>,
}

impl RoundTripReport {
    pub fn is_clean(&self) -> bool {
        self.first == self.second && self.model_diffs.is_empty() && self.format_failures.is_empty()
    }

    /// Line-oriented description of every failed check.
    pub fn describe_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.first != self.second {
            out.push("schema differs after reverse and re-transform:".to_string());
            for (a, b) in self.first.lines().zip(self.second.lines()) {
                if a != b {
                    out.push(format!("  - {a}"));
                    out.push(format!("  + {b}"));
                }
            }
            let (n1, n2) = (self.first.lines().count(), self.second.lines().count());
            if n1 != n2 {
                out.push(format!("  relation count {n1} vs {n2}"));
            }
        }
        out.extend(self.model_diffs.iter().cloned());
        out.extend(self.format_failures.iter().cloned());
        out
    }
}

/// Transforms `m`, reverses the result, checks the recovered model against
/// `normalize(m)`, then transforms the recovered model with the side choices
/// read off the schema and compares the two `.rds` texts. Along the way the
/// `.rds` and `.er` text formats are checked to parse back to what was emitted.
pub fn roundtrip(m: &ErModel, cfg: &TransformConfig) -> Result<RoundTripReport, RoundTripError> {
    let (schema, _) = transform_model(m, cfg).map_err(RoundTripError::Forward)?;
    let first = emit_rds(&schema);
    let mut format_failures = Vec::new();
    match parse_rds(&RdsSource::new("forward.rds", first.as_str())) {
        Ok(reparsed) if reparsed == schema => {}
        _ => {
            format_failures.push("emitted .rds does not parse back to the same schema".to_string())
        }
    }

    let reversal = reverse_transform(&schema).map_err(RoundTripError::Reverse)?;
    let model_diffs = model_diff(m, &reversal.model);
    debug_assert_eq!(
        model_diffs.is_empty(),
        normalize(m) == normalize(&reversal.model)
    );

    let er_text = emit_er(&reversal.model);
    match parse_er(&ErSource::new("reversed.er", er_text)) {
        Ok(reparsed) if reparsed == reversal.model => {}
        _ => format_failures
            .push("emitted .er of the recovered model does not parse back to it".to_string()),
    }

    let (again, _) =
        transform_model(&reversal.model, &reversal.config()).map_err(RoundTripError::Reforward)?;
    let second = emit_rds(&again);
    Ok(RoundTripReport {
        schema,
        first,
        second,
        reversal,
        model_diffs,
        format_failures,
    })
}
