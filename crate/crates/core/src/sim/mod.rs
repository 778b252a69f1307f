//! Discrete-event engine: windowed fluid flows over moving nodes.
//!
//! Each window `[t0, t1]` is evaluated at `t1` with the positions held at
//! `t0`: links are assessed, every active flow picks a station, each station
//! pool is shared max-min fairly and the grants are credited for the time the
//! flow was active. Mobility then advances to `t1`. Control flows are
//! packetised; each packet of a window is delivered with probability
//! `min(1, granted / offered)`.

mod metrics;
mod queue;

use std::collections::BTreeMap;

use rand_distr::{Binomial, Distribution};
use thiserror::Error;

use crate::geometry::{Layout, Point2};
use crate::mobility::{Fleet, MobileNode, MobilityError};
use crate::radio::{
    allocate, is_los, link_rate, relay_path_rate, select_link, FlowDemand, LinkAssessment, LinkKind,
    LinkModelParams, RadioError, SelectionPolicy, StationId,
};
use crate::rng::{stream, Stream};
use crate::scenario::{Direction, FlowKind, ScenarioError, ScenarioSpec, StationKind};
use crate::trace::{TraceCollector, TraceRecord};

pub use metrics::{
    sample_metrics, FlowRecord, FlowSummary, MetricsReport, MetricsRow, RowScope, TimeseriesRow, WindowCredit,
    WindowSample, METRICS_HEADER, TIMESERIES_HEADER,
};
pub use queue::EventQueue;

pub const DEFAULT_WINDOW: f64 = 0.1;
pub const DEFAULT_HORIZON: f64 = 10.0;
/// Interval between relay placement checks, seconds.
pub const RELAY_REPOSITION_INTERVAL: f64 = 1.0;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("event at {requested} s is before the current time {now} s")]
    PastEvent { now: f64, requested: f64 },
    #[error("window must be positive and finite, got {0}")]
    InvalidWindow(f64),
    #[error("flow {flow} does not share the window grid of the other flows")]
    InconsistentWindows { flow: u32 },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Mobility(#[from] MobilityError),
    #[error(transparent)]
    Radio(#[from] RadioError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    FlowStart(u32),
    /// Evaluates links and credits flows for the window ending now.
    Window,
    MobilityUpdate,
    RelayReposition,
    End,
}

/// Capacity pool of a station. LTE uplink and downlink are separate carriers;
/// mmWave stations share one time-division carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PoolKey {
    pub station: StationId,
    pub downlink: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoolUsage {
    pub pool: PoolKey,
    pub capacity_bps: f64,
    pub granted_bps: f64,
}

#[derive(Clone, Debug)]
pub struct SimOutput {
    pub report: MetricsReport,
    pub records: Vec<FlowRecord>,
    pub trace: Vec<TraceRecord>,
    /// Per window, the usage of every pool that served a flow.
    pub pool_usage: Vec<Vec<PoolUsage>>,
    /// Station positions at the horizon; relays may have moved.
    pub station_positions: Vec<Point2>,
}

pub fn run(spec: &ScenarioSpec, params: &LinkModelParams, window: f64, seed: u64) -> Result<MetricsReport, SimError> {
    Ok(simulate(spec, params, window, seed)?.report)
}

/// Moves `nodes` through `layout` until `horizon`, sampling every node at
/// least every `step` seconds, and returns the time-ordered trace.
pub fn record_mobility(
    layout: Layout,
    nodes: &[MobileNode],
    horizon: f64,
    step: f64,
    seed: u64,
) -> Result<Vec<TraceRecord>, SimError> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(SimError::InvalidWindow(step));
    }
    let mut rng = stream(seed, Stream::Mobility);
    let mut fleet = Fleet::new(layout, nodes, &mut rng)?;
    let mut trace = TraceCollector::new();
    for (id, p) in fleet.positions().into_iter().enumerate() {
        trace.push(0.0, id as u32, p);
    }
    let mut k = 0u64;
    while fleet.time() < horizon {
        k += 1;
        let t = (k as f64 * step).min(horizon);
        fleet.advance_recording(t, &mut rng, |id, t, p| trace.push(t, id, p))?;
    }
    Ok(trace.finish())
}

struct Engine<'a> {
    spec: &'a ScenarioSpec,
    params: &'a LinkModelParams,
    fleet: Fleet,
    station_pos: Vec<Point2>,
    started: Vec<bool>,
    packet_credit: Vec<f64>,
    records: Vec<FlowRecord>,
    trace: TraceCollector,
    pool_usage: Vec<Vec<PoolUsage>>,
    window_start: f64,
}

pub fn simulate(spec: &ScenarioSpec, params: &LinkModelParams, window: f64, seed: u64) -> Result<SimOutput, SimError> {
    if !(window > 0.0) || !window.is_finite() {
        return Err(SimError::InvalidWindow(window));
    }
    spec.validate()?;
    params.validate()?;
    for s in &spec.stations {
        params.station_capacity(s.kind.link_kind(), s.antennas, spec.antennas_ue)?;
    }

    let mut mobility_rng = stream(seed, Stream::Mobility);
    let mut delivery_rng = stream(seed, Stream::Delivery);
    let fleet = Fleet::new(spec.layout(), &spec.mobile_nodes(), &mut mobility_rng)?;
    let mut trace = TraceCollector::new();
    for (id, p) in fleet.positions().into_iter().enumerate() {
        trace.push(0.0, id as u32, p);
    }
    let mut engine = Engine {
        spec,
        params,
        fleet,
        station_pos: spec.stations.iter().map(|s| s.position).collect(),
        started: vec![false; spec.flows.len()],
        packet_credit: vec![0.0; spec.flows.len()],
        records: spec.flows.iter().cloned().map(FlowRecord::new).collect(),
        trace,
        pool_usage: Vec::new(),
        window_start: 0.0,
    };

    let has_relays = spec.stations.iter().any(|s| s.relay.is_some());
    let mut next_reposition = RELAY_REPOSITION_INTERVAL;
    let mut queue = EventQueue::new();
    for f in &spec.flows {
        if f.start < spec.horizon {
            queue.schedule(f.start, Event::FlowStart(f.id))?;
        }
    }
    queue.schedule(window.min(spec.horizon), Event::Window)?;

    while let Some((now, event)) = queue.pop() {
        match event {
            Event::FlowStart(id) => engine.started[id as usize] = true,
            Event::Window => {
                engine.evaluate_window(now, &mut delivery_rng)?;
                queue.schedule(now, Event::MobilityUpdate)?;
            }
            Event::MobilityUpdate => {
                let trace = &mut engine.trace;
                engine
                    .fleet
                    .advance_recording(now, &mut mobility_rng, |id, t, p| trace.push(t, id, p))?;
                engine.window_start = now;
                if has_relays && now + 1e-9 >= next_reposition {
                    next_reposition += RELAY_REPOSITION_INTERVAL;
                    queue.schedule(now, Event::RelayReposition)?;
                }
                if now < spec.horizon {
                    queue.schedule((now + window).min(spec.horizon), Event::Window)?;
                } else {
                    queue.schedule(now, Event::End)?;
                }
            }
            Event::RelayReposition => engine.reposition_relays(),
            Event::End => break,
        }
    }

    let report = sample_metrics(&engine.records, spec.horizon)?;
    Ok(SimOutput {
        report,
        records: engine.records,
        trace: engine.trace.finish(),
        pool_usage: engine.pool_usage,
        station_positions: engine.station_pos,
    })
}

impl Engine<'_> {
    fn pool(&self, station: StationId, direction: Direction) -> PoolKey {
        let lte = self.spec.stations[station as usize].kind == StationKind::Lte;
        PoolKey {
            station,
            downlink: lte && direction == Direction::Downlink,
        }
    }

    fn pool_capacity(&self, station: StationId) -> Result<f64, RadioError> {
        let s = &self.spec.stations[station as usize];
        let base = self
            .params
            .station_capacity(s.kind.link_kind(), s.antennas, self.spec.antennas_ue)?;
        Ok(match s.kind {
            StationKind::MmwaveRelay => base * self.params.relay_backhaul_share,
            _ => base,
        })
    }

    fn mmwave_rate(&self, a: Point2, b: Point2, antennas_bs: u32) -> Result<f64, RadioError> {
        let los = is_los(a, b, &self.spec.boxes);
        link_rate(LinkKind::Mmwave, self.params, los, antennas_bs, self.spec.antennas_ue, a.distance(b))
    }

    fn assess(&self, node_pos: Point2, policy: SelectionPolicy) -> Result<Vec<LinkAssessment>, RadioError> {
        let mut out = Vec::with_capacity(self.spec.stations.len());
        for s in &self.spec.stations {
            if s.dedicated && policy != SelectionPolicy::PreferLte {
                continue;
            }
            let pos = self.station_pos[s.id as usize];
            let (los, rate) = match (s.kind, &s.relay) {
                (StationKind::Lte, _) => (true, link_rate(LinkKind::Lte, self.params, true, s.antennas, self.spec.antennas_ue, 0.0)?),
                (StationKind::MmwaveRelay, Some(relay)) => {
                    let access = self.mmwave_rate(node_pos, pos, s.antennas)?;
                    let donor = &self.spec.stations[relay.donor as usize];
                    let backhaul = self.mmwave_rate(pos, self.station_pos[donor.id as usize], donor.antennas)?;
                    (is_los(node_pos, pos, &self.spec.boxes), relay_path_rate(access, backhaul, self.params))
                }
                _ => (is_los(node_pos, pos, &self.spec.boxes), self.mmwave_rate(node_pos, pos, s.antennas)?),
            };
            out.push(LinkAssessment {
                station: s.id,
                kind: s.kind.link_kind(),
                los,
                achievable_rate: rate,
            });
        }
        Ok(out)
    }

    fn evaluate_window(&mut self, end: f64, rng: &mut crate::rng::SimRng) -> Result<(), SimError> {
        let start = self.window_start;
        let positions = self.fleet.positions();
        let mut pools: BTreeMap<PoolKey, Vec<FlowDemand>> = BTreeMap::new();
        let mut chosen: BTreeMap<u32, StationId> = BTreeMap::new();
        for f in &self.spec.flows {
            if !self.started[f.id as usize] || f.start >= end {
                continue;
            }
            let assessments = self.assess(positions[f.node as usize], f.policy)?;
            if assessments.is_empty() {
                continue;
            }
            let station = select_link(&assessments, f.policy)?;
            let achievable = assessments
                .iter()
                .find(|a| a.station == station)
                .map_or(0.0, |a| a.achievable_rate);
            chosen.insert(f.id, station);
            pools.entry(self.pool(station, f.direction)).or_default().push(FlowDemand {
                flow: f.id,
                achievable,
                offered: f.offered_rate,
            });
        }

        let mut granted = vec![0.0; self.spec.flows.len()];
        let mut usage = Vec::with_capacity(pools.len());
        for (key, demands) in &pools {
            let capacity = self.pool_capacity(key.station)?;
            let grants = allocate(capacity, demands);
            usage.push(PoolUsage {
                pool: *key,
                capacity_bps: capacity,
                granted_bps: grants.iter().map(|g| g.granted).sum(),
            });
            for g in grants {
                granted[g.flow as usize] = g.granted;
            }
        }
        self.pool_usage.push(usage);

        for f in &self.spec.flows {
            let i = f.id as usize;
            let active = if chosen.contains_key(&f.id) { end - f.start.max(start) } else { 0.0 };
            let mut credit = WindowCredit {
                start,
                end,
                granted_bps: granted[i],
                delivered_bits: granted[i] * active,
                tx_packets: 0,
                rx_packets: 0,
            };
            if f.kind == FlowKind::Control && active > 0.0 {
                let bits = f64::from(f.packet_size.unwrap_or(1)) * 8.0;
                self.packet_credit[i] += f.offered_rate * active / bits;
                let tx = self.packet_credit[i].floor();
                self.packet_credit[i] -= tx;
                credit.tx_packets = tx as u64;
                let p = (granted[i] / f.offered_rate).clamp(0.0, 1.0);
                credit.rx_packets = match p {
                    p if p >= 1.0 => credit.tx_packets,
                    p if p <= 0.0 || credit.tx_packets == 0 => 0,
                    p => Binomial::new(credit.tx_packets, p)
                        .expect("probability lies in (0, 1)")
                        .sample(rng),
                };
            }
            self.records[i].windows.push(credit);
        }
        Ok(())
    }

    fn reposition_relays(&mut self) {
        let boxes = &self.spec.boxes;
        for s in &self.spec.stations {
            let Some(relay) = &s.relay else { continue };
            let here = self.station_pos[s.id as usize];
            let target = self.fleet.position(relay.follows);
            if is_los(here, target, boxes) {
                continue;
            }
            let donor = self.station_pos[relay.donor as usize];
            let best = relay
                .sites
                .iter()
                .filter(|&&site| is_los(site, donor, boxes) && is_los(site, target, boxes))
                .min_by(|a, b| a.distance(target).total_cmp(&b.distance(target)));
            if let Some(&site) = best {
                self.station_pos[s.id as usize] = site;
            }
        }
    }
}
