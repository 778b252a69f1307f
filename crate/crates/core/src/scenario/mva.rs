//! Multi-vehicle accident on a straight road.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    invalid, place_random_obstacle, Direction, FlowKind, FlowSpec, NodeRole, NodeSpec, Orientation,
    ScenarioError, ScenarioKind, ScenarioSpec, StationKind, StationSpec, FLOW_START_WINDOW,
};
use crate::geometry::{sample_outdoor_position, Bounds, Point2, Rect, DEFAULT_OUTDOOR_ATTEMPTS};
use crate::mobility::{MobilitySpec, WalkKind, WalkParams};
use crate::radio::SelectionPolicy;
use crate::rng::{stream, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MvaConfig {
    pub n_responders: usize,
    /// Fraction of responders wearing an AR display fed by a downlink stream.
    pub ar_fraction: f64,
    pub n_cars: usize,
    pub n_trucks: usize,
    pub car_size: (f64, f64),
    pub truck_size: (f64, f64),
    pub orientation: Orientation,
    pub road_width: f64,
    pub incident_length: f64,
    /// Responders roam the street grown by this margin on every side.
    pub roam_margin: f64,
    pub video_rate: f64,
    pub with_mmwave: bool,
    pub rsu_isd: f64,
    /// Distance of the RSUs from the road edge.
    pub rsu_setback: f64,
    pub lte_distance: f64,
    pub antennas_bs: u32,
    pub antennas_ue: u32,
    pub horizon: f64,
}

impl Default for MvaConfig {
    fn default() -> Self {
        Self {
            n_responders: 10,
            ar_fraction: 0.3,
            n_cars: 2,
            n_trucks: 1,
            car_size: (2.0, 5.0),
            truck_size: (2.5, 10.0),
            orientation: Orientation::Aligned,
            road_width: 5.5,
            incident_length: 25.0,
            roam_margin: 10.0,
            video_rate: 10e6,
            with_mmwave: true,
            rsu_isd: 50.0,
            rsu_setback: 1.0,
            lte_distance: 500.0,
            antennas_bs: 64,
            antennas_ue: 16,
            horizon: 10.0,
        }
    }
}

impl MvaConfig {
    fn validate(&self) -> Result<(), ScenarioError> {
        let lengths = [
            self.car_size.0,
            self.car_size.1,
            self.truck_size.0,
            self.truck_size.1,
            self.road_width,
            self.incident_length,
            self.rsu_isd,
            self.lte_distance,
            self.video_rate,
            self.horizon,
        ];
        if lengths.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(invalid("MVA lengths, rates and horizon must be positive"));
        }
        if !(0.0..=1.0).contains(&self.ar_fraction) {
            return Err(invalid("ar_fraction must lie in [0, 1]"));
        }
        if !(self.roam_margin >= 0.0 && self.rsu_setback >= 0.0) {
            return Err(invalid("roam_margin and rsu_setback must be non-negative"));
        }
        Ok(())
    }

    /// Number of AR display wearers, `floor(d * N)`.
    pub fn ar_count(&self) -> usize {
        ((self.ar_fraction * self.n_responders as f64) + 1e-9).floor() as usize
    }
}

pub fn gen_mva(config: &MvaConfig, seed: u64) -> Result<ScenarioSpec, ScenarioError> {
    config.validate()?;
    let mut rng = stream(seed, Stream::Generation);
    let street = Rect::new(0.0, config.incident_length, 0.0, config.road_width)?;
    let bounds = Bounds(street.expanded(config.roam_margin)?);

    let mut boxes = Vec::with_capacity(config.n_trucks + config.n_cars);
    let sizes = std::iter::repeat_n(config.truck_size, config.n_trucks)
        .chain(std::iter::repeat_n(config.car_size, config.n_cars));
    for (width, length) in sizes {
        let b = place_random_obstacle(&street, width, length, config.orientation, &boxes, &mut rng, 1000)?;
        boxes.push(b);
    }

    let params = WalkParams::new(bounds);
    let mut nodes = Vec::with_capacity(config.n_responders);
    for id in 0..config.n_responders {
        let position = sample_outdoor_position(&bounds, &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?;
        nodes.push(NodeSpec {
            id: id as u32,
            role: NodeRole::Responder,
            position,
            mobility: MobilitySpec::Walk {
                kind: WalkKind::BuildingAware,
                params: params.clone(),
            },
        });
    }

    // Drawn even without mmWave so the rest of the world is unchanged.
    let offset = rng.random::<f64>() * config.rsu_isd;
    let mut stations = Vec::new();
    if config.with_mmwave {
        let x = config.incident_length / 2.0 - offset;
        let y = -config.rsu_setback;
        for k in 0..2 {
            stations.push(StationSpec {
                id: stations.len() as u32,
                kind: StationKind::MmwaveBs,
                position: Point2::new(x + k as f64 * config.rsu_isd, y),
                antennas: config.antennas_bs,
                dedicated: false,
                relay: None,
            });
        }
    }
    stations.push(StationSpec {
        id: stations.len() as u32,
        kind: StationKind::Lte,
        position: Point2::new(street.center().x, street.center().y + config.lte_distance),
        antennas: config.antennas_bs,
        dedicated: false,
        relay: None,
    });

    let mut flows = Vec::new();
    let uplink = (0..config.n_responders).map(|n| (n, Direction::Uplink));
    let downlink = (0..config.ar_count()).map(|n| (n, Direction::Downlink));
    for (node, direction) in uplink.chain(downlink) {
        flows.push(FlowSpec {
            id: flows.len() as u32,
            node: node as u32,
            direction,
            kind: FlowKind::Video,
            offered_rate: config.video_rate,
            start: rng.random::<f64>() * FLOW_START_WINDOW,
            packet_size: None,
            policy: SelectionPolicy::BestRate,
        });
    }

    let spec = ScenarioSpec {
        kind: ScenarioKind::Mva,
        seed,
        horizon: config.horizon,
        antennas_ue: config.antennas_ue,
        bounds,
        boxes,
        nodes,
        stations,
        flows,
    };
    spec.validate()?;
    Ok(spec)
}
