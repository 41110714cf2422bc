//! On-disk formats: transfer graphs and shuffle codes, each readable as
//! plain text or JSON. The first non-whitespace byte decides the format —
//! a `{` means JSON, anything else the line-oriented text form.
//!
//! Text graphs list one transfer per line as `u -> v`; text codes list one
//! instruction per line exactly as the synthesizer prints them. `#` starts
//! a comment in both.

use std::fmt;

use serde::{Deserialize, Serialize};
use shuffle_core::greedy::{ShuffleCode, ShuffleOp};
use shuffle_core::rtg::{Edge, RegId, Signature};

/// Why an input document could not be understood.
#[derive(Debug)]
pub enum DocError {
    /// The document looked like JSON but did not parse as the expected
    /// shape; the payload is serde's message, which carries line and
    /// column.
    Json(String),
    /// A text line matched no expected form.
    BadLine { line: usize, content: String },
    /// A token where a register number was expected.
    BadRegister { line: usize, token: String },
    /// An unknown instruction mnemonic.
    UnknownOp { line: usize, op: String },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Json(msg) => write!(f, "invalid JSON document: {msg}"),
            DocError::BadLine { line, content } => {
                write!(f, "line {line}: cannot parse `{content}`")
            }
            DocError::BadRegister { line, token } => {
                write!(f, "line {line}: `{token}` is not a register number")
            }
            DocError::UnknownOp { line, op } => {
                write!(f, "line {line}: unknown instruction `{op}`")
            }
        }
    }
}

impl std::error::Error for DocError {}

#[derive(Deserialize)]
struct EdgesDoc {
    edges: Vec<(RegId, RegId)>,
}

/// Reads a transfer list from either input format.
pub fn parse_edges(input: &str) -> Result<Vec<Edge>, DocError> {
    if input.trim_start().starts_with('{') {
        let doc: EdgesDoc =
            serde_json::from_str(input).map_err(|e| DocError::Json(e.to_string()))?;
        return Ok(doc.edges);
    }
    let mut edges = Vec::new();
    for (number, raw) in input.lines().enumerate() {
        let line = number + 1;
        let text = strip_comment(raw);
        if text.is_empty() {
            continue;
        }
        let (lhs, rhs) = text
            .split_once("->")
            .ok_or_else(|| DocError::BadLine { line, content: text.to_string() })?;
        edges.push((register(line, lhs)?, register(line, rhs)?));
    }
    Ok(edges)
}

/// Reads an instruction sequence from either input format. JSON documents
/// need an `ops` array; any `summary` field is ignored.
pub fn parse_code(input: &str) -> Result<ShuffleCode, DocError> {
    if input.trim_start().starts_with('{') {
        #[derive(Deserialize)]
        struct OpsDoc {
            ops: Vec<OpRecord>,
        }
        let doc: OpsDoc = serde_json::from_str(input).map_err(|e| DocError::Json(e.to_string()))?;
        return Ok(ShuffleCode::new(doc.ops.into_iter().map(ShuffleOp::from).collect()));
    }
    let mut ops = Vec::new();
    for (number, raw) in input.lines().enumerate() {
        let line = number + 1;
        let text = strip_comment(raw);
        if text.is_empty() {
            continue;
        }
        ops.push(parse_op(line, text)?);
    }
    Ok(ShuffleCode::new(ops))
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn register(line: usize, token: &str) -> Result<RegId, DocError> {
    let token = token.trim();
    token.parse().map_err(|_| DocError::BadRegister { line, token: token.to_string() })
}

fn parse_op(line: usize, text: &str) -> Result<ShuffleOp, DocError> {
    let (word, tail) = match text.find(char::is_whitespace) {
        Some(at) => text.split_at(at),
        None => (text, ""),
    };
    match word {
        "copy" => {
            let regs: Vec<&str> = tail.split_whitespace().collect();
            if regs.len() != 2 {
                return Err(DocError::BadLine { line, content: text.to_string() });
            }
            Ok(ShuffleOp::Copy { src: register(line, regs[0])?, dst: register(line, regs[1])? })
        }
        "permi5" => {
            let groups = paren_groups(line, tail)?;
            match groups.as_slice() {
                [cycle] => Ok(ShuffleOp::Permi5 { cycle: cycle.clone() }),
                _ => Err(DocError::BadLine { line, content: text.to_string() }),
            }
        }
        "permi23" => {
            let groups = paren_groups(line, tail)?;
            match groups.as_slice() {
                [pair] if pair.len() == 2 => {
                    Ok(ShuffleOp::Permi23 { pair: [pair[0], pair[1]], cycle: Vec::new() })
                }
                [pair, cycle] if pair.len() == 2 => {
                    Ok(ShuffleOp::Permi23 { pair: [pair[0], pair[1]], cycle: cycle.clone() })
                }
                _ => Err(DocError::BadLine { line, content: text.to_string() }),
            }
        }
        op => Err(DocError::UnknownOp { line, op: op.to_string() }),
    }
}

/// Splits `(1 2 3) (4 5)` into register groups; anything outside the
/// parentheses except whitespace is an error.
fn paren_groups(line: usize, s: &str) -> Result<Vec<Vec<RegId>>, DocError> {
    let mut groups = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(DocError::BadLine { line, content: s.trim().to_string() });
        };
        let Some(end) = stripped.find(')') else {
            return Err(DocError::BadLine { line, content: s.trim().to_string() });
        };
        let inner = &stripped[..end];
        let regs =
            inner.split_whitespace().map(|t| register(line, t)).collect::<Result<Vec<_>, _>>()?;
        groups.push(regs);
        rest = stripped[end + 1..].trim_start();
    }
    Ok(groups)
}

/// One instruction in the JSON code document, tagged by mnemonic.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum OpRecord {
    Copy {
        src: RegId,
        dst: RegId,
    },
    Permi5 {
        cycle: Vec<RegId>,
    },
    Permi23 {
        pair: [RegId; 2],
        #[serde(default)]
        cycle: Vec<RegId>,
    },
}

impl From<&ShuffleOp> for OpRecord {
    fn from(op: &ShuffleOp) -> Self {
        match op {
            ShuffleOp::Copy { src, dst } => OpRecord::Copy { src: *src, dst: *dst },
            ShuffleOp::Permi5 { cycle } => OpRecord::Permi5 { cycle: cycle.clone() },
            ShuffleOp::Permi23 { pair, cycle } => {
                OpRecord::Permi23 { pair: *pair, cycle: cycle.clone() }
            }
        }
    }
}

impl From<OpRecord> for ShuffleOp {
    fn from(record: OpRecord) -> Self {
        match record {
            OpRecord::Copy { src, dst } => ShuffleOp::Copy { src, dst },
            OpRecord::Permi5 { cycle } => ShuffleOp::Permi5 { cycle },
            OpRecord::Permi23 { pair, cycle } => ShuffleOp::Permi23 { pair, cycle },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignatureDoc {
    pub x: u32,
    pub a2: u32,
    pub a3: u32,
}

impl From<&Signature> for SignatureDoc {
    fn from(sig: &Signature) -> Self {
        SignatureDoc { x: sig.x, a2: sig.a2, a3: sig.a3 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SummaryDoc {
    pub length: usize,
    pub copy_count: usize,
    pub residual_signature: SignatureDoc,
}

/// The JSON document `synth --format json` emits.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeDoc {
    pub ops: Vec<OpRecord>,
    pub summary: SummaryDoc,
}

impl CodeDoc {
    pub fn new(code: &ShuffleCode, copy_count: usize, residual: &Signature) -> Self {
        CodeDoc {
            ops: code.ops.iter().map(OpRecord::from).collect(),
            summary: SummaryDoc {
                length: code.len(),
                copy_count,
                residual_signature: residual.into(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_edges_parse_with_comments_and_blanks() {
        let input = "# demand list\n1 -> 2\n\n 4->5   # trailing\n";
        assert_eq!(parse_edges(input).unwrap(), vec![(1, 2), (4, 5)]);
    }

    #[test]
    fn json_edges_parse() {
        let input = r#"{ "edges": [[2, 1], [2, 3]] }"#;
        assert_eq!(parse_edges(input).unwrap(), vec![(2, 1), (2, 3)]);
    }

    #[test]
    fn bad_lines_are_reported_with_numbers() {
        let err = parse_edges("1 -> 2\n3 = 4\n").unwrap_err();
        assert!(matches!(err, DocError::BadLine { line: 2, .. }), "{err}");
        let err = parse_edges("1 -> x\n").unwrap_err();
        assert!(matches!(err, DocError::BadRegister { line: 1, .. }), "{err}");
    }

    #[test]
    fn text_code_round_trips_through_display() {
        let code = ShuffleCode::new(vec![
            ShuffleOp::Permi5 { cycle: vec![2, 3, 4, 5, 6] },
            ShuffleOp::Permi23 { pair: [1, 7], cycle: vec![8, 9] },
            ShuffleOp::Permi23 { pair: [10, 11], cycle: vec![] },
            ShuffleOp::Copy { src: 3, dst: 1 },
        ]);
        let text = code.to_string();
        assert_eq!(parse_code(&text).unwrap(), code);
    }

    #[test]
    fn json_code_round_trips_through_records() {
        let code = ShuffleCode::new(vec![
            ShuffleOp::Permi23 { pair: [1, 2], cycle: vec![4, 5, 6] },
            ShuffleOp::Copy { src: 2, dst: 3 },
        ]);
        let doc = CodeDoc::new(&code, 1, &Signature::new(0, 1, 1));
        let json = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(parse_code(&json).unwrap(), code);
        let back: CodeDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn unknown_mnemonics_are_rejected() {
        let err = parse_code("rotate (1 2)\n").unwrap_err();
        assert!(matches!(err, DocError::UnknownOp { line: 1, .. }), "{err}");
    }

    #[test]
    fn op_records_use_the_documented_json_shape() {
        let json = serde_json::to_value(OpRecord::from(&ShuffleOp::Permi23 {
            pair: [1, 2],
            cycle: vec![4, 5, 6],
        }))
        .unwrap();
        assert_eq!(json, serde_json::json!({"op": "permi23", "pair": [1, 2], "cycle": [4, 5, 6]}));
    }
}
