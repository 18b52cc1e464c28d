//! Sequence-definition file format shared by the library and the CLI.
//!
//! UTF-8, line-oriented `key: value` pairs. Blank lines and lines starting
//! with `#` are ignored. Keys:
//!
//! * `kind: gevrey | quotients | zero` — which constructor to use,
//! * `s: <real>` — Gevrey exponent (kind `gevrey`),
//! * `logM0: <real>` — `log M_0`, defaults to `0`,
//! * `logmu: <comma-separated reals>` — the `log μ_p` table (kind `quotients`),
//! * `P: <int>` — truncation depth (defaults to [`DEFAULT_DEPTH`]; for
//!   `quotients` it may truncate or must match the table length).

use std::collections::HashMap;
use std::path::Path;

use crate::sequences::{Tail, WeightSequence, DEFAULT_DEPTH};
use crate::{Error, Result};

/// Parses a sequence definition from text.
pub fn parse_sequence(text: &str) -> Result<WeightSequence> {
    let mut fields: HashMap<String, String> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::Parse(format!(
                "line {}: expected `key: value`, got {line:?}",
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        if fields
            .insert(key.clone(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::Parse(format!("duplicate key {key:?}")));
        }
    }
    let kind = fields
        .get("kind")
        .ok_or_else(|| Error::Parse("missing required key `kind`".into()))?
        .as_str();

    let get_real = |key: &str| -> Result<Option<f64>> {
        match fields.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("key {key:?}: invalid real {v:?}"))),
        }
    };
    let depth = match fields.get("P") {
        None => None,
        Some(v) => Some(
            v.parse::<usize>()
                .map_err(|_| Error::Parse(format!("key \"P\": invalid integer {v:?}")))?,
        ),
    };
    let log_m0 = get_real("logM0")?.unwrap_or(0.0);

    match kind {
        "gevrey" => {
            let s = get_real("s")?
                .ok_or_else(|| Error::Parse("kind gevrey requires key `s`".into()))?;
            let seq = WeightSequence::gevrey(s, depth.unwrap_or(DEFAULT_DEPTH))?;
            if log_m0 == 0.0 {
                Ok(seq)
            } else {
                WeightSequence::from_quotients(log_m0, seq.log_quotients().to_vec(), seq.tail())
            }
        }
        "quotients" => {
            let raw = fields
                .get("logmu")
                .ok_or_else(|| Error::Parse("kind quotients requires key `logmu`".into()))?;
            let mut log_mu = Vec::new();
            for part in raw.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                log_mu.push(
                    part.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("invalid log quotient {part:?}")))?,
                );
            }
            if let Some(p) = depth {
                if p < log_mu.len() {
                    log_mu.truncate(p);
                } else if p > log_mu.len() {
                    return Err(Error::Parse(format!(
                        "P = {p} exceeds logmu table length {}",
                        log_mu.len()
                    )));
                }
            }
            WeightSequence::from_quotients(log_m0, log_mu, Tail::Explicit)
        }
        "zero" => Ok(WeightSequence::zero_degenerate(log_m0)),
        other => Err(Error::Parse(format!(
            "unknown kind {other:?} (expected gevrey, quotients, or zero)"
        ))),
    }
}

/// Reads and parses a sequence-definition file.
pub fn load_sequence(path: &Path) -> Result<WeightSequence> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_sequence(&text)
}

/// Renders a sequence back to the definition format.
///
/// Gevrey closed forms round-trip as `kind: gevrey`; everything else is
/// written as an explicit quotient table.
pub fn to_text(seq: &WeightSequence) -> String {
    if seq.is_zero_degenerate() {
        return format!("kind: zero\nlogM0: {}\n", seq.log_m0());
    }
    if let Some(s) = seq.gevrey_exponent() {
        if let Tail::ClosedForm(_) = seq.tail() {
            return format!(
                "kind: gevrey\ns: {s}\nlogM0: {}\nP: {}\n",
                seq.log_m0(),
                seq.depth()
            );
        }
    }
    let table: Vec<String> = seq.log_quotients().iter().map(|q| format!("{q}")).collect();
    format!(
        "kind: quotients\nlogM0: {}\nP: {}\nlogmu: {}\n",
        seq.log_m0(),
        seq.depth(),
        table.join(",")
    )
}
