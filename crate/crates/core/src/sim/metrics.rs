use std::io::Write;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::mobility::NodeId;
use crate::scenario::{Direction, FlowKind, FlowSpec};

/// What one flow received during one window.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WindowCredit {
    pub start: f64,
    pub end: f64,
    pub granted_bps: f64,
    pub delivered_bits: f64,
    pub tx_packets: u64,
    pub rx_packets: u64,
}

/// Per-window history of one flow.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowRecord {
    pub flow: FlowSpec,
    pub windows: Vec<WindowCredit>,
}

impl FlowRecord {
    pub fn new(flow: FlowSpec) -> Self {
        Self {
            flow,
            windows: Vec::new(),
        }
    }

    pub fn delivered_bits(&self) -> f64 {
        self.windows.iter().map(|w| w.delivered_bits).sum()
    }

    pub fn tx_packets(&self) -> u64 {
        self.windows.iter().map(|w| w.tx_packets).sum()
    }

    pub fn rx_packets(&self) -> u64 {
        self.windows.iter().map(|w| w.rx_packets).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowSummary {
    pub flow_id: u32,
    pub node_id: NodeId,
    pub direction: Direction,
    pub kind: FlowKind,
    pub offered_bps: f64,
    pub mean_throughput_bps: f64,
    pub delivered_bits: f64,
    pub tx_packets: u64,
    pub rx_packets: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowSample {
    pub start: f64,
    pub end: f64,
    pub aggregate_uplink_bps: f64,
    pub control_tx_packets: u64,
    pub control_rx_packets: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub horizon: f64,
    /// Throughput means are taken over `[measure_start, horizon]`.
    pub measure_start: f64,
    pub flows: Vec<FlowSummary>,
    /// Sum of the uplink per-flow means.
    pub aggregate_uplink_bps: f64,
    /// Received over transmitted control packets; `None` when none were sent.
    pub p_rx_ctrl: Option<f64>,
    pub series: Vec<WindowSample>,
}

/// Reduces per-window flow records to means over `[first flow start, horizon]`.
pub fn sample_metrics(records: &[FlowRecord], horizon: f64) -> Result<MetricsReport, SimError> {
    let grid: Vec<(f64, f64)> = records
        .first()
        .map(|r| r.windows.iter().map(|w| (w.start, w.end)).collect())
        .unwrap_or_default();
    for r in records {
        let same = r.windows.len() == grid.len()
            && r.windows.iter().zip(&grid).all(|(w, g)| (w.start, w.end) == *g);
        if !same {
            return Err(SimError::InconsistentWindows { flow: r.flow.id });
        }
    }
    let measure_start = records
        .iter()
        .map(|r| r.flow.start)
        .fold(f64::INFINITY, f64::min)
        .min(horizon);
    let span = horizon - measure_start;

    let flows: Vec<FlowSummary> = records
        .iter()
        .map(|r| {
            let delivered = r.delivered_bits();
            FlowSummary {
                flow_id: r.flow.id,
                node_id: r.flow.node,
                direction: r.flow.direction,
                kind: r.flow.kind,
                offered_bps: r.flow.offered_rate,
                mean_throughput_bps: if span > 0.0 { delivered / span } else { 0.0 },
                delivered_bits: delivered,
                tx_packets: r.tx_packets(),
                rx_packets: r.rx_packets(),
            }
        })
        .collect();

    let aggregate_uplink_bps = flows
        .iter()
        .filter(|f| f.direction == Direction::Uplink)
        .map(|f| f.mean_throughput_bps)
        .sum();
    let control = || flows.iter().filter(|f| f.kind == FlowKind::Control);
    let tx: u64 = control().map(|f| f.tx_packets).sum();
    let rx: u64 = control().map(|f| f.rx_packets).sum();
    let p_rx_ctrl = (tx > 0).then(|| rx as f64 / tx as f64);

    let series = grid
        .iter()
        .enumerate()
        .map(|(k, &(start, end))| {
            let mut sample = WindowSample {
                start,
                end,
                aggregate_uplink_bps: 0.0,
                control_tx_packets: 0,
                control_rx_packets: 0,
            };
            let mut uplink_bits = 0.0;
            for r in records {
                let w = &r.windows[k];
                if r.flow.direction == Direction::Uplink {
                    uplink_bits += w.delivered_bits;
                }
                if r.flow.kind == FlowKind::Control {
                    sample.control_tx_packets += w.tx_packets;
                    sample.control_rx_packets += w.rx_packets;
                }
            }
            if end > start {
                sample.aggregate_uplink_bps = uplink_bits / (end - start);
            }
            sample
        })
        .collect();

    Ok(MetricsReport {
        horizon,
        measure_start,
        flows,
        aggregate_uplink_bps,
        p_rx_ctrl,
        series,
    })
}

pub const METRICS_HEADER: [&str; 11] = [
    "scope",
    "flow_id",
    "node_id",
    "direction",
    "kind",
    "offered_bps",
    "mean_throughput_bps",
    "delivered_bits",
    "tx_packets",
    "rx_packets",
    "p_rx_ctrl",
];

pub const TIMESERIES_HEADER: [&str; 5] = [
    "window_start_s",
    "window_end_s",
    "aggregate_uplink_bps",
    "control_tx_packets",
    "control_rx_packets",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowScope {
    Flow,
    Aggregate,
}

/// One row of the metrics CSV: a flow, or the uplink aggregate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub scope: RowScope,
    pub flow_id: Option<u32>,
    pub node_id: Option<NodeId>,
    pub direction: Option<Direction>,
    pub kind: Option<FlowKind>,
    pub offered_bps: f64,
    pub mean_throughput_bps: f64,
    pub delivered_bits: f64,
    pub tx_packets: u64,
    pub rx_packets: u64,
    pub p_rx_ctrl: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeseriesRow {
    pub window_start_s: f64,
    pub window_end_s: f64,
    pub aggregate_uplink_bps: f64,
    pub control_tx_packets: u64,
    pub control_rx_packets: u64,
}

impl MetricsReport {
    pub fn rows(&self) -> Vec<MetricsRow> {
        let mut rows: Vec<MetricsRow> = self
            .flows
            .iter()
            .map(|f| MetricsRow {
                scope: RowScope::Flow,
                flow_id: Some(f.flow_id),
                node_id: Some(f.node_id),
                direction: Some(f.direction),
                kind: Some(f.kind),
                offered_bps: f.offered_bps,
                mean_throughput_bps: f.mean_throughput_bps,
                delivered_bits: f.delivered_bits,
                tx_packets: f.tx_packets,
                rx_packets: f.rx_packets,
                p_rx_ctrl: None,
            })
            .collect();
        let uplink = || self.flows.iter().filter(|f| f.direction == Direction::Uplink);
        let control = || self.flows.iter().filter(|f| f.kind == FlowKind::Control);
        rows.push(MetricsRow {
            scope: RowScope::Aggregate,
            flow_id: None,
            node_id: None,
            direction: Some(Direction::Uplink),
            kind: None,
            offered_bps: uplink().map(|f| f.offered_bps).sum(),
            mean_throughput_bps: self.aggregate_uplink_bps,
            delivered_bits: uplink().map(|f| f.delivered_bits).sum(),
            tx_packets: control().map(|f| f.tx_packets).sum(),
            rx_packets: control().map(|f| f.rx_packets).sum(),
            p_rx_ctrl: self.p_rx_ctrl,
        });
        rows
    }

    pub fn timeseries_rows(&self) -> Vec<TimeseriesRow> {
        self.series
            .iter()
            .map(|s| TimeseriesRow {
                window_start_s: s.start,
                window_end_s: s.end,
                aggregate_uplink_bps: s.aggregate_uplink_bps,
                control_tx_packets: s.control_tx_packets,
                control_rx_packets: s.control_rx_packets,
            })
            .collect()
    }

    pub fn write_metrics_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        write_rows(&self.rows(), out)
    }

    pub fn write_timeseries_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        write_rows(&self.timeseries_rows(), out)
    }
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
