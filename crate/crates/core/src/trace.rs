//! Node position traces.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::mobility::NodeId;

pub const TRACE_HEADER: [&str; 4] = ["time_s", "node_id", "x_m", "y_m"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time_s: f64,
    pub node_id: NodeId,
    pub x_m: f64,
    pub y_m: f64,
}

impl TraceRecord {
    pub fn new(time_s: f64, node_id: NodeId, p: Point2) -> Self {
        Self {
            time_s,
            node_id,
            x_m: p.x,
            y_m: p.y,
        }
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x_m, self.y_m)
    }
}

/// Collects positions as they are reported, keeping one sample per node and
/// instant (the latest wins) and yielding them ordered by `(time, node)`.
#[derive(Debug, Default)]
pub struct TraceCollector {
    records: Vec<TraceRecord>,
    last: Vec<Option<usize>>,
}

impl TraceCollector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, time_s: f64, node: NodeId, p: Point2) {
        let slot = node as usize;
        if self.last.len() <= slot {
            self.last.resize(slot + 1, None);
        }
        if let Some(i) = self.last[slot] {
            if self.records[i].time_s >= time_s {
                self.records[i] = TraceRecord::new(self.records[i].time_s, node, p);
                return;
            }
        }
        self.last[slot] = Some(self.records.len());
        self.records.push(TraceRecord::new(time_s, node, p));
    }

    pub fn finish(mut self) -> Vec<TraceRecord> {
        self.records
            .sort_by(|a, b| a.time_s.total_cmp(&b.time_s).then(a.node_id.cmp(&b.node_id)));
        self.records
    }
}

pub fn write_trace_csv<W: Write>(records: &[TraceRecord], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace_csv<R: std::io::Read>(input: R) -> Result<Vec<TraceRecord>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}
