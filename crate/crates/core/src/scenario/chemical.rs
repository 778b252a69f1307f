//! Chemical plant: random buildings, roaming responders and a remotely
//! controlled robot confined to the plant centre.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    invalid, place_random_buildings, Direction, FlowKind, FlowSpec, NodeRole, NodeSpec, ScenarioError,
    ScenarioKind, ScenarioSpec, StationKind, StationSpec, CONTROL_PACKET_BYTES, FLOW_START_WINDOW,
};
use crate::geometry::{sample_outdoor_position, Bounds, Rect, DEFAULT_OUTDOOR_ATTEMPTS};
use crate::mobility::{MobilitySpec, SpeedDist, WalkKind, WalkParams};
use crate::radio::SelectionPolicy;
use crate::rng::{stream, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChemConfig {
    pub n_responders: usize,
    pub area_side: f64,
    pub n_buildings: usize,
    pub building_side: (f64, f64),
    /// Minimum clearance between buildings, and between buildings and the robot area.
    pub building_gap: f64,
    pub n_mmwave_bs: usize,
    pub with_lte: bool,
    pub video_rate: f64,
    pub robot_video_rate: f64,
    pub control_rate: f64,
    /// Side of the square robot area centred in the plant.
    pub robot_area_side: f64,
    pub robot_speed: (f64, f64),
    pub antennas_bs: u32,
    pub antennas_ue: u32,
    pub horizon: f64,
}

impl Default for ChemConfig {
    fn default() -> Self {
        Self {
            n_responders: 10,
            area_side: 1000.0,
            n_buildings: 10,
            building_side: (20.0, 80.0),
            building_gap: 5.0,
            n_mmwave_bs: 5,
            with_lte: true,
            video_rate: 10e6,
            robot_video_rate: 10e6,
            control_rate: 500e3,
            robot_area_side: 100.0,
            robot_speed: (0.5, 1.0),
            antennas_bs: 64,
            antennas_ue: 16,
            horizon: 10.0,
        }
    }
}

impl ChemConfig {
    /// Sets the responder and robot video rates together.
    pub fn with_video_rate(mut self, rate: f64) -> Self {
        self.video_rate = rate;
        self.robot_video_rate = rate;
        self
    }

    pub fn area(&self) -> Result<Rect, ScenarioError> {
        Ok(Rect::new(0.0, self.area_side, 0.0, self.area_side)?)
    }

    pub fn robot_area(&self) -> Result<Rect, ScenarioError> {
        let c = self.area_side / 2.0;
        let h = self.robot_area_side / 2.0;
        Ok(Rect::new(c - h, c + h, c - h, c + h)?)
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let positive = [
            self.area_side,
            self.robot_area_side,
            self.video_rate,
            self.robot_video_rate,
            self.control_rate,
            self.horizon,
            self.robot_speed.0,
        ];
        if positive.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(invalid("plant sizes, rates, robot speed and horizon must be positive"));
        }
        if self.robot_speed.1 < self.robot_speed.0 {
            return Err(invalid("robot speed range is inverted"));
        }
        if self.robot_area_side > self.area_side {
            return Err(invalid("robot area must fit inside the plant"));
        }
        Ok(())
    }
}

pub fn gen_chemical_plant(config: &ChemConfig, seed: u64) -> Result<ScenarioSpec, ScenarioError> {
    config.validate()?;
    let mut rng = stream(seed, Stream::Generation);
    let area = config.area()?;
    let robot_area = config.robot_area()?;
    let bounds = Bounds(area);

    let boxes = place_random_buildings(
        &area,
        config.n_buildings,
        config.building_side.0,
        config.building_side.1,
        config.building_gap,
        &[robot_area],
        &mut rng,
        10_000,
    )?;

    let responder_walk = WalkParams::new(bounds);
    let mut nodes = Vec::with_capacity(config.n_responders + 1);
    for id in 0..config.n_responders {
        nodes.push(NodeSpec {
            id: id as u32,
            role: NodeRole::Responder,
            position: sample_outdoor_position(&bounds, &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?,
            mobility: MobilitySpec::Walk {
                kind: WalkKind::BuildingAware,
                params: responder_walk.clone(),
            },
        });
    }
    let robot = config.n_responders as u32;
    let robot_walk = WalkParams::new(Bounds(robot_area)).with_speed(SpeedDist::Uniform {
        min: config.robot_speed.0,
        max: config.robot_speed.1,
    });
    nodes.push(NodeSpec {
        id: robot,
        role: NodeRole::Robot,
        position: sample_outdoor_position(&Bounds(robot_area), &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?,
        mobility: MobilitySpec::Walk {
            kind: WalkKind::BuildingAware,
            params: robot_walk,
        },
    });

    let mut stations = Vec::new();
    for id in 0..config.n_mmwave_bs {
        stations.push(StationSpec {
            id: id as u32,
            kind: StationKind::MmwaveBs,
            position: sample_outdoor_position(&bounds, &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?,
            antennas: config.antennas_bs,
            dedicated: false,
            relay: None,
        });
    }
    // Drawn even without LTE so the rest of the world is unchanged.
    let lte_position = sample_outdoor_position(&bounds, &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?;
    if config.with_lte {
        stations.push(StationSpec {
            id: stations.len() as u32,
            kind: StationKind::Lte,
            position: lte_position,
            antennas: config.antennas_bs,
            dedicated: true,
            relay: None,
        });
    }

    let mut flows = Vec::new();
    for node in 0..=robot {
        let offered_rate = if node == robot { config.robot_video_rate } else { config.video_rate };
        flows.push(FlowSpec {
            id: flows.len() as u32,
            node,
            direction: Direction::Uplink,
            kind: FlowKind::Video,
            offered_rate,
            start: rng.random::<f64>() * FLOW_START_WINDOW,
            packet_size: None,
            policy: SelectionPolicy::BestRate,
        });
    }
    flows.push(FlowSpec {
        id: flows.len() as u32,
        node: robot,
        direction: Direction::Downlink,
        kind: FlowKind::Control,
        offered_rate: config.control_rate,
        start: rng.random::<f64>() * FLOW_START_WINDOW,
        packet_size: Some(CONTROL_PACKET_BYTES),
        policy: SelectionPolicy::PreferLte,
    });

    let spec = ScenarioSpec {
        kind: ScenarioKind::ChemicalPlant,
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_world() {
        let spec = gen_chemical_plant(&ChemConfig::default(), 21).unwrap();
        assert_eq!(spec.boxes.len(), 10);
        assert_eq!(spec.stations.iter().filter(|s| s.kind == StationKind::MmwaveBs).count(), 5);
        assert_eq!(spec.stations.iter().filter(|s| s.kind == StationKind::Lte).count(), 1);
        let video = spec.flows.iter().filter(|f| f.kind == FlowKind::Video && f.direction == Direction::Uplink);
        assert_eq!(video.count(), 11);
        let control: Vec<_> = spec.flows.iter().filter(|f| f.kind == FlowKind::Control).collect();
        assert_eq!(control.len(), 1);
        assert_eq!(control[0].offered_rate, 500e3);
        assert_eq!(control[0].node, 10);
        assert_eq!(spec.nodes[10].role, NodeRole::Robot);
    }

    #[test]
    fn robot_confined_to_centre() {
        let config = ChemConfig::default();
        let spec = gen_chemical_plant(&config, 22).unwrap();
        let robot_area = config.robot_area().unwrap();
        assert_eq!(robot_area, Rect::new(450.0, 550.0, 450.0, 550.0).unwrap());
        let MobilitySpec::Walk { params, .. } = &spec.nodes[10].mobility else {
            panic!("robot should walk");
        };
        assert_eq!(*params.bounds.rect(), robot_area);
        assert!(spec.boxes.iter().all(|b| !b.overlaps(&robot_area)));
    }

    #[test]
    fn lte_toggle_keeps_the_rest_of_the_world() {
        let with = gen_chemical_plant(&ChemConfig::default(), 3).unwrap();
        let without = gen_chemical_plant(&ChemConfig { with_lte: false, ..ChemConfig::default() }, 3).unwrap();
        assert_eq!(with.boxes, without.boxes);
        assert_eq!(with.nodes, without.nodes);
        assert_eq!(with.flows, without.flows);
        assert_eq!(&with.stations[..5], &without.stations[..]);
        assert!(with.stations[5].dedicated);
    }

    #[test]
    fn no_buildings() {
        let spec = gen_chemical_plant(&ChemConfig { n_buildings: 0, ..ChemConfig::default() }, 4).unwrap();
        assert!(spec.boxes.is_empty());
    }

    #[test]
    fn deterministic_under_seed() {
        let c = ChemConfig::default();
        assert_eq!(gen_chemical_plant(&c, 8).unwrap(), gen_chemical_plant(&c, 8).unwrap());
    }
}
