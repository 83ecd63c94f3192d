//! JSON lines and CSV output. Big integers are always written as decimal
//! strings so no consumer truncates them to 53 bits.

use std::io::Write;

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::census::{CountResult, Mode};
use crate::construction::{Step, WitnessSet};
use crate::continuant::{continuant, PartialQuotients};
use crate::error::Result;

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub mod option {
        use num_bigint::BigUint;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }
    }
}

#[derive(Serialize)]
struct SequenceRecord<'a> {
    elements: &'a [u64],
    continuant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<&'a [Step]>,
}

pub fn write_json_lines<W: Write, T: Serialize>(mut w: W, items: impl IntoIterator<Item = T>) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut w, &item)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// One line per sequence: `{"elements":[..],"continuant":"..."}`.
pub fn sequences_json<W: Write>(w: W, seqs: &[PartialQuotients]) -> Result<()> {
    write_json_lines(
        w,
        seqs.iter().map(|u| SequenceRecord {
            elements: u.as_slice(),
            continuant: continuant(u).to_string(),
            provenance: None,
        }),
    )
}

/// One line per member, with the construction steps.
pub fn witnesses_json<W: Write>(w: W, set: &WitnessSet) -> Result<()> {
    let target = set.target.to_string();
    write_json_lines(
        w,
        set.members.iter().map(|(u, steps)| SequenceRecord {
            elements: u.as_slice(),
            continuant: target.clone(),
            provenance: Some(steps),
        }),
    )
}

/// Census summary row.
#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub a: u64,
    pub m: u32,
    #[serde(rename = "N")]
    pub bound: u64,
    pub mode: Mode,
    pub count: u64,
    pub nodes: u64,
    pub millis: u64,
}

impl CountRow {
    pub fn new(a: u64, m: u32, bound: u64, mode: Mode, r: &CountResult) -> Self {
        CountRow { a, m, bound, mode, count: r.count, nodes: r.nodes_visited, millis: r.elapsed.as_millis() as u64 }
    }
}

pub fn count_csv<W: Write>(w: W, rows: &[CountRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    theorem_id: String,
    parameters: String,
    direction: String,
    claimed_bound: String,
    chain_value: String,
    oracle_value: String,
    oracle_kind: String,
    verdict: String,
}

pub fn bounds_json<W: Write>(w: W, reports: &[BoundReport]) -> Result<()> {
    write_json_lines(w, reports)
}

/// Flat CSV; parameters are packed as `name=value` pairs joined by `;`.
pub fn bounds_csv<W: Write>(w: W, reports: &[BoundReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in reports {
        out.serialize(BoundRow {
            theorem_id: r.theorem_id.clone(),
            parameters: r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
            direction: format!("{:?}", r.direction).to_lowercase(),
            claimed_bound: r.claimed_bound.to_string(),
            chain_value: r.chain_value.as_ref().map(ToString::to_string).unwrap_or_default(),
            oracle_value: r.oracle.as_ref().map(|o| o.value.to_string()).unwrap_or_default(),
            oracle_kind: r.oracle.as_ref().map(|o| format!("{:?}", o.kind).to_lowercase()).unwrap_or_default(),
            verdict: r.verdict.to_string(),
        })?;
    }
    out.flush()?;
    Ok(())
}

/// One human-readable line per report.
pub fn bound_line(r: &BoundReport) -> String {
    let params = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
    let oracle = match &r.oracle {
        Some(o) => format!("{} ({:?})", o.value, o.kind).to_lowercase(),
        None => "-".into(),
    };
    let rel = match r.direction {
        crate::bounds::Direction::Lower => ">=",
        crate::bounds::Direction::Upper => "<=",
        crate::bounds::Direction::Exact => "==",
    };
    format!("{:<9} {:<28} oracle {oracle} {rel} claimed {}  [{}]", r.theorem_id, params, r.claimed_bound, r.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{dyadic_chain_bound, Oracle};

    #[test]
    fn sequences_as_json_lines() {
        let seqs = vec![PartialQuotients::new(vec![2, 1, 2]).unwrap()];
        let mut buf = Vec::new();
        sequences_json(&mut buf, &seqs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"elements\":[2,1,2],\"continuant\":\"8\"}\n");
    }

    #[test]
    fn bound_report_uses_strings() {
        let r = dyadic_chain_bound(3, Oracle::GTable).unwrap();
        let mut buf = Vec::new();
        bounds_json(&mut buf, std::slice::from_ref(&r)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"claimed_bound\":\"8\""), "{text}");
        let mut buf = Vec::new();
        bounds_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("theorem_id,parameters,direction"));
        assert!(text.contains("theorem5,N=3;a=2;k=3;m=7,lower,8,,8,gtable,holds"), "{text}");
    }
}
