//! JSON-lines circle records.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::circle::OrientedCircle;
use crate::qint::{Disc, OKElem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: datum fails n·n′·|Δ| = N(w) − 1")]
    Invariant { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleRecord {
    pub circle: OrientedCircle,
    pub packing: Option<String>,
}

impl CircleRecord {
    pub fn new(circle: OrientedCircle, packing: Option<&str>) -> CircleRecord {
        CircleRecord { circle, packing: packing.map(str::to_string) }
    }

    /// One line of JSON with a fixed key order.
    pub fn to_line(&self) -> String {
        let c = &self.circle;
        let mut s =
            format!("{{\"disc\":{},\"n\":{},\"nprime\":{},\"w\":[{},{}]", c.disc.delta(), c.n, c.nprime, c.w.u, c.w.v);
        if let Some(p) = &self.packing {
            s.push_str(&format!(",\"packing\":{}", Value::String(p.clone())));
        }
        s.push('}');
        s
    }

    pub fn from_line(line: &str, lineno: usize) -> Result<CircleRecord, RecordError> {
        let err = |msg: &str| RecordError::Parse { line: lineno, msg: msg.to_string() };
        let v: Value = serde_json::from_str(line).map_err(|e| err(&e.to_string()))?;
        let int = |x: &Value| -> Result<BigInt, RecordError> {
            match x {
                Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| err("expected an integer")),
                _ => Err(err("expected an integer")),
            }
        };
        let disc = int(v.get("disc").ok_or_else(|| err("missing disc"))?)?;
        let disc = i64::try_from(disc).map_err(|_| err("disc out of range"))?;
        let disc = Disc::new(disc).map_err(|e| err(&e.to_string()))?;
        let n = int(v.get("n").ok_or_else(|| err("missing n"))?)?;
        let nprime = int(v.get("nprime").ok_or_else(|| err("missing nprime"))?)?;
        let w = v.get("w").and_then(Value::as_array).ok_or_else(|| err("missing w"))?;
        if w.len() != 2 {
            return Err(err("w must have two coordinates"));
        }
        let w = OKElem::from_big(int(&w[0])?, int(&w[1])?);
        let packing = match v.get("packing") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(err("packing must be a string")),
        };
        let circle = OrientedCircle::new(disc, n, nprime, w).map_err(|_| RecordError::Invariant { line: lineno })?;
        Ok(CircleRecord { circle, packing })
    }
}

/// Records sorted by (|n|, n, u, v, n′), one per line.
pub fn write_jsonl(circles: &[OrientedCircle], packing: Option<&str>) -> String {
    let mut sorted: Vec<&OrientedCircle> = circles.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for c in sorted {
        out.push_str(&CircleRecord::new(c.without_witness(), packing).to_line());
        out.push('\n');
    }
    out
}

/// Parse JSON lines, skipping blank lines. Every datum is checked.
pub fn read_jsonl(text: &str) -> Result<Vec<CircleRecord>, RecordError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| CircleRecord::from_line(l, i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_roundtrip() {
        let k = Disc::new(-7).unwrap();
        let c = OrientedCircle::from_ints(k, 1, 0, (1, 0)).unwrap();
        let r = CircleRecord::new(c, Some("fundamental-strip"));
        let line = r.to_line();
        assert_eq!(line, r#"{"disc":-7,"n":1,"nprime":0,"w":[1,0],"packing":"fundamental-strip"}"#);
        assert_eq!(CircleRecord::from_line(&line, 1).unwrap(), r);
    }

    #[test]
    fn big_values_survive() {
        let line = r#"{"disc":-4,"n":0,"nprime":0,"w":[1,0]}"#;
        assert!(CircleRecord::from_line(line, 1).is_ok());
        let big = "123456789012345678901234567890";
        let ok = format!(r#"{{"disc":-4,"n":{big},"nprime":0,"w":[1,0]}}"#);
        let r = CircleRecord::from_line(&ok, 2).unwrap();
        assert_eq!(r.circle.n.to_string(), big);
        assert_eq!(r.to_line(), ok);
        let bad = format!(r#"{{"disc":-4,"n":{big},"nprime":1,"w":[1,0]}}"#);
        assert_eq!(CircleRecord::from_line(&bad, 3), Err(RecordError::Invariant { line: 3 }));
    }

    #[test]
    fn rejects_bad_datum() {
        let line = r#"{"disc":-8,"n":1,"nprime":0,"w":[0,1]}"#;
        assert!(matches!(read_jsonl(line), Err(RecordError::Invariant { line: 1 })));
        assert!(matches!(read_jsonl("{\"disc\":-3}"), Err(RecordError::Parse { .. })));
    }
}
