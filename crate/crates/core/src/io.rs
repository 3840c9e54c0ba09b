//! File formats: JSON schedule documents, edge-load CSV and demand matrices
//! with `p/q` entries.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::EdgeFlowReport;
use crate::error::{OrnError, Result};
use crate::model::{ConnectionSchedule, DemandFunction, DemandMatrix, NodeId, ScheduleFamily};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::schedules::{
    doubled_phase_schedule, ebs_schedule, vbs_schedule, EbsParams, VbsParams,
};

/// On-disk schedule: `{family, N, T, params, permutations}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub family: String,
    #[serde(rename = "N")]
    pub node_count: usize,
    #[serde(rename = "T")]
    pub period: usize,
    #[serde(default)]
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<NodeId>>>,
}

impl ScheduleDocument {
    pub fn from_schedule(schedule: &ConnectionSchedule, include_table: bool) -> Self {
        let params = match schedule.family() {
            ScheduleFamily::Explicit => json!({}),
            ScheduleFamily::Ebs {
                params,
                phase_repeat,
            } => json!({"l": params.order, "n": params.base, "phase_repeat": phase_repeat}),
            ScheduleFamily::Vbs {
                params,
                phase_repeat,
            } => json!({
                "h": params.h,
                "n": params.base,
                "delta": format_rational(&params.delta),
                "q": params.q,
                "phase_repeat": phase_repeat,
            }),
            ScheduleFamily::PrimitiveRoot { root } => json!({"root": root}),
            ScheduleFamily::Unrolled { degree } => json!({"d": degree}),
        };
        Self {
            family: schedule.family().name().to_string(),
            node_count: schedule.node_count(),
            period: schedule.period(),
            params,
            permutations: include_table.then(|| schedule.table().to_vec()),
        }
    }

    /// Rebuilds the schedule. EBS and VBS documents are regenerated from their
    /// parameters (and checked against any table present); other families
    /// need the explicit table.
    pub fn to_schedule(&self) -> Result<ConnectionSchedule> {
        let schedule = match self.family.as_str() {
            "ebs" => {
                let params = EbsParams::new(self.param_u64("l")? as u32, self.param_u64("n")? as usize)?;
                self.repeat_phases(ebs_schedule(&params)?)?
            }
            "vbs" => {
                let delta = self.param_rational("delta")?;
                let params = VbsParams::new(self.param_u64("h")? as u32, self.param_u64("n")? as usize, delta)?;
                if let Some(q) = self.params.get("q") {
                    if q.as_u64() != Some(params.q as u64) {
                        return Err(OrnError::Parse(format!(
                            "stored Q = {q} disagrees with derived Q = {}",
                            params.q
                        )));
                    }
                }
                self.repeat_phases(vbs_schedule(&params)?)?
            }
            "proot" => self.tabulated(ScheduleFamily::PrimitiveRoot {
                root: self.param_u64("root")?,
            })?,
            "unrolled" => self.tabulated(ScheduleFamily::Unrolled {
                degree: self.param_u64("d")? as usize,
            })?,
            "explicit" => self.tabulated(ScheduleFamily::Explicit)?,
            other => return Err(OrnError::Parse(format!("unknown schedule family {other:?}"))),
        };
        if schedule.node_count() != self.node_count || schedule.period() != self.period {
            return Err(OrnError::Parse(format!(
                "document declares N = {}, T = {} but parameters give N = {}, T = {}",
                self.node_count,
                self.period,
                schedule.node_count(),
                schedule.period()
            )));
        }
        if let Some(table) = &self.permutations {
            if table.as_slice() != schedule.table() {
                return Err(OrnError::Parse(
                    "permutation table does not match the schedule parameters".into(),
                ));
            }
        }
        Ok(schedule)
    }

    fn repeat_phases(&self, mut schedule: ConnectionSchedule) -> Result<ConnectionSchedule> {
        let repeat = match self.params.get("phase_repeat") {
            Some(v) => v
                .as_u64()
                .filter(|r| r.is_power_of_two())
                .ok_or_else(|| OrnError::Parse(format!("phase_repeat must be a power of two, got {v}")))?,
            None => 1,
        };
        let mut r = 1;
        while r < repeat {
            // any admissible degree yields the same table
            schedule = doubled_phase_schedule(&schedule, 1)?;
            r *= 2;
        }
        Ok(schedule)
    }

    fn tabulated(&self, family: ScheduleFamily) -> Result<ConnectionSchedule> {
        let table = self.permutations.clone().ok_or_else(|| {
            OrnError::Parse(format!("{} schedules need an explicit permutation table", self.family))
        })?;
        ConnectionSchedule::new(self.node_count, table, family)
    }

    fn param_u64(&self, key: &str) -> Result<u64> {
        self.params
            .get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| OrnError::Parse(format!("missing integer parameter {key:?}")))
    }

    fn param_rational(&self, key: &str) -> Result<Rational> {
        match self.params.get(key) {
            Some(Value::String(s)) => parse_rational(s),
            Some(Value::Number(n)) if n.is_u64() => parse_rational(&n.to_string()),
            _ => Err(OrnError::Parse(format!("missing rational parameter {key:?}"))),
        }
    }
}

pub fn write_schedule_json<W: Write>(schedule: &ConnectionSchedule, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, &ScheduleDocument::from_schedule(schedule, true))?;
    Ok(())
}

pub fn read_schedule_json<R: Read>(input: R) -> Result<ConnectionSchedule> {
    let doc: ScheduleDocument = serde_json::from_reader(input)?;
    doc.to_schedule()
}

/// CSV with columns `sender, timeslot, load_num, load_den`.
pub fn write_edge_loads_csv<W: Write>(report: &EdgeFlowReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sender", "timeslot", "load_num", "load_den"])?;
    for (edge, load) in report.iter() {
        w.write_record([
            edge.sender.to_string(),
            edge.slot.to_string(),
            load.numer().to_string(),
            load.denom().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a demand function: one matrix row per line, entries separated by
/// commas or whitespace, matrices of a periodic demand separated by blank
/// lines. Lines starting with `#` are ignored.
pub fn parse_demand(text: &str) -> Result<DemandFunction> {
    let mut matrices = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut flush = |rows: &mut Vec<Vec<Rational>>| -> Result<()> {
        if !rows.is_empty() {
            matrices.push(DemandMatrix::from_rows(std::mem::take(rows))?);
        }
        Ok(())
    };
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut rows)?;
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    flush(&mut rows)?;
    if matrices.is_empty() {
        return Err(OrnError::Parse("demand file contains no matrix".into()));
    }
    DemandFunction::new(matrices)
}

pub fn format_demand(demand: &DemandFunction) -> String {
    demand
        .matrices()
        .iter()
        .map(|m| {
            m.rows()
                .iter()
                .map(|row| row.iter().map(format_rational).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect::<Vec<_>>()
        .join("\n\n")
        + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::schedules::{primitive_root_schedule, PrimitiveRootParams};

    fn round_trip(s: &ConnectionSchedule) -> ConnectionSchedule {
        let mut buf = Vec::new();
        write_schedule_json(s, &mut buf).unwrap();
        read_schedule_json(buf.as_slice()).unwrap()
    }

    #[test]
    fn schedules_round_trip() {
        let ebs = ebs_schedule(&EbsParams::new(2, 3).unwrap()).unwrap();
        assert_eq!(round_trip(&ebs), ebs);
        let vbs = vbs_schedule(&VbsParams::new(1, 5, ratio(1, 18)).unwrap()).unwrap();
        assert_eq!(round_trip(&vbs), vbs);
        let doubled = doubled_phase_schedule(&vbs, 2).unwrap();
        assert_eq!(round_trip(&doubled), doubled);
        let pr = primitive_root_schedule(&PrimitiveRootParams::new(11, 2).unwrap(), None).unwrap();
        assert_eq!(round_trip(&pr), pr);
    }

    #[test]
    fn tampered_table_rejected() {
        let ebs = ebs_schedule(&EbsParams::new(1, 3).unwrap()).unwrap();
        let mut doc = ScheduleDocument::from_schedule(&ebs, true);
        doc.permutations.as_mut().unwrap()[0] = vec![0, 1, 2];
        assert!(doc.to_schedule().is_err());
        let doc = ScheduleDocument {
            family: "proot".into(),
            node_count: 5,
            period: 4,
            params: json!({"root": 2}),
            permutations: None,
        };
        assert!(doc.to_schedule().is_err());
    }

    #[test]
    fn demand_round_trip() {
        let text = "1/2, 0\n0 1/3\n\n0,1/4\n1/4,0\n";
        let d = parse_demand(text).unwrap();
        assert_eq!(d.period(), 2);
        assert_eq!(d.at(0).get(1, 1), ratio(1, 3));
        assert_eq!(parse_demand(&format_demand(&d)).unwrap(), d);
        assert!(parse_demand("1/2, x\n").is_err());
        assert!(parse_demand("").is_err());
    }
}
