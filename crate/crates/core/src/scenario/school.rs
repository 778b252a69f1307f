//! School building: a square grid of rooms separated by corridors, tactical
//! teams converging on the centre and optional relays following the teams.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    invalid, Direction, FlowKind, FlowSpec, NodeRole, NodeSpec, RelaySpec, ScenarioError, ScenarioKind,
    ScenarioSpec, StationKind, StationSpec, FLOW_START_WINDOW,
};
use crate::geometry::{Bounds, Layout, Point2, Rect};
use crate::mobility::{build_group, DeviationDist, MobilitySpec, Route, SlaveConstraint, DEFAULT_MAX_ITERATIONS};
use crate::radio::SelectionPolicy;
use crate::rng::{stream, Stream};

/// Teams start from the building corners, so at most four.
pub const MAX_TEAMS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SchoolConfig {
    pub rooms_per_side: usize,
    pub room_side: f64,
    pub corridor_width: f64,
    pub n_teams: usize,
    pub team_size: usize,
    pub team_speed: f64,
    pub deviation: DeviationDist,
    pub max_iterations: u32,
    pub with_iab: bool,
    pub antennas_bs: u32,
    pub antennas_ue: u32,
    pub video_rate: f64,
    /// Defaults to the time the teams need to reach the centre.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

impl Default for SchoolConfig {
    fn default() -> Self {
        Self {
            rooms_per_side: 4,
            room_side: 20.0,
            corridor_width: 4.0,
            n_teams: 4,
            team_size: 4,
            team_speed: 1.5,
            deviation: DeviationDist::default(),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            with_iab: true,
            antennas_bs: 64,
            antennas_ue: 16,
            video_rate: 20e6,
            horizon: None,
        }
    }
}

impl SchoolConfig {
    fn validate(&self) -> Result<(), ScenarioError> {
        if self.rooms_per_side == 0 || self.team_size == 0 {
            return Err(invalid("rooms_per_side and team_size must be at least 1"));
        }
        if self.n_teams > MAX_TEAMS {
            return Err(invalid(format!("at most {MAX_TEAMS} teams, one per corner")));
        }
        let positive = [self.room_side, self.corridor_width, self.team_speed, self.video_rate];
        if positive.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(invalid("room side, corridor width, speed and video rate must be positive"));
        }
        if self.horizon.is_some_and(|h| !(h > 0.0)) {
            return Err(invalid("horizon must be positive"));
        }
        Ok(())
    }

    /// Side of the square room footprint.
    pub fn footprint(&self) -> f64 {
        let k = self.rooms_per_side as f64;
        k * self.room_side + (k - 1.0) * self.corridor_width
    }

    /// Footprint ringed by a corridor-wide perimeter walkway.
    pub fn bounds(&self) -> Result<Bounds, ScenarioError> {
        let lo = -self.corridor_width;
        let hi = self.footprint() + self.corridor_width;
        Ok(Bounds::new(lo, hi, lo, hi)?)
    }
}

pub fn gen_school_building(config: &SchoolConfig) -> Result<Vec<Rect>, ScenarioError> {
    config.validate()?;
    let pitch = config.room_side + config.corridor_width;
    let mut rooms = Vec::with_capacity(config.rooms_per_side * config.rooms_per_side);
    for i in 0..config.rooms_per_side {
        for j in 0..config.rooms_per_side {
            let origin = Point2::new(i as f64 * pitch, j as f64 * pitch);
            rooms.push(Rect::from_origin(origin, config.room_side, config.room_side)?);
        }
    }
    Ok(rooms)
}

/// Centre lines of the corridors, perimeter walkway included, in increasing order.
pub fn corridor_centerlines(config: &SchoolConfig) -> Vec<f64> {
    let pitch = config.room_side + config.corridor_width;
    (0..=config.rooms_per_side)
        .map(|i| -config.corridor_width / 2.0 + i as f64 * pitch)
        .collect()
}

/// Corner-to-centre route of team `t`: along the perimeter walkway to the
/// central corridor, then along it to the centre junction.
fn team_route(lines: &[f64], team: usize, speed: f64) -> Route {
    let (lo, hi, mid) = (lines[0], lines[lines.len() - 1], lines[lines.len() / 2]);
    let p = Point2::new;
    let waypoints = match team {
        0 => vec![p(lo, lo), p(mid, lo), p(mid, mid)],
        1 => vec![p(hi, lo), p(hi, mid), p(mid, mid)],
        2 => vec![p(hi, hi), p(mid, hi), p(mid, mid)],
        _ => vec![p(lo, hi), p(lo, mid), p(mid, mid)],
    };
    Route { speed, waypoints }
}

pub fn gen_school_shooting(config: &SchoolConfig, seed: u64) -> Result<ScenarioSpec, ScenarioError> {
    let boxes = gen_school_building(config)?;
    let mut rng = stream(seed, Stream::Generation);
    let bounds = config.bounds()?;
    let layout = Layout::new(bounds, boxes.clone());
    let lines = corridor_centerlines(config);
    let junctions: Vec<Point2> = lines
        .iter()
        .flat_map(|&x| lines.iter().map(move |&y| Point2::new(x, y)))
        .collect();

    let mut nodes = Vec::with_capacity(config.n_teams * config.team_size);
    let mut masters = Vec::with_capacity(config.n_teams);
    let mut route_duration: f64 = 0.0;
    for team in 0..config.n_teams {
        let route = team_route(&lines, team, config.team_speed);
        route_duration = route_duration.max(route.duration());
        let start = route.waypoints[0];
        let first = nodes.len() as u32;
        masters.push(first);
        let group = build_group(
            first,
            MobilitySpec::Route { route },
            start,
            config.team_size - 1,
            config.deviation,
            SlaveConstraint::Outdoor,
            config.max_iterations,
            &layout,
            &mut rng,
        )?;
        for node in group {
            let role = if node.id == first { NodeRole::TeamLeader } else { NodeRole::TeamMember };
            nodes.push(NodeSpec {
                id: node.id,
                role,
                position: node.position,
                mobility: node.mobility,
            });
        }
    }

    let r = bounds.rect();
    let corners = [
        Point2::new(r.x_min(), r.y_min()),
        Point2::new(r.x_max(), r.y_min()),
        Point2::new(r.x_max(), r.y_max()),
        Point2::new(r.x_min(), r.y_max()),
    ];
    let mut stations: Vec<StationSpec> = corners
        .iter()
        .enumerate()
        .map(|(id, &position)| StationSpec {
            id: id as u32,
            kind: StationKind::MmwaveBs,
            position,
            antennas: config.antennas_bs,
            dedicated: false,
            relay: None,
        })
        .collect();
    if config.with_iab {
        for (team, &master) in masters.iter().enumerate() {
            stations.push(StationSpec {
                id: stations.len() as u32,
                kind: StationKind::MmwaveRelay,
                position: nodes[master as usize].position,
                antennas: config.antennas_bs,
                dedicated: false,
                relay: Some(RelaySpec {
                    donor: team as u32,
                    follows: master,
                    sites: junctions.clone(),
                }),
            });
        }
    }

    let flows = (0..nodes.len())
        .map(|node| FlowSpec {
            id: node as u32,
            node: node as u32,
            direction: Direction::Uplink,
            kind: FlowKind::Video,
            offered_rate: config.video_rate,
            start: rng.random::<f64>() * FLOW_START_WINDOW,
            packet_size: None,
            policy: SelectionPolicy::BestRate,
        })
        .collect();

    let spec = ScenarioSpec {
        kind: ScenarioKind::SchoolShooting,
        seed,
        horizon: config.horizon.unwrap_or(route_duration.max(1.0)),
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
    use crate::mobility::Fleet;
    use crate::rng::SimRng;
    use rand::SeedableRng;

    #[test]
    fn default_building() {
        let config = SchoolConfig::default();
        let rooms = gen_school_building(&config).unwrap();
        assert_eq!(rooms.len(), 16);
        assert_eq!(config.footprint(), 92.0);
        let x_max = rooms.iter().map(|r| r.x_max()).fold(f64::MIN, f64::max);
        let y_min = rooms.iter().map(|r| r.y_min()).fold(f64::MAX, f64::min);
        assert_eq!((x_max, y_min), (92.0, 0.0));
    }

    #[test]
    fn single_room() {
        let config = SchoolConfig { rooms_per_side: 1, ..SchoolConfig::default() };
        let rooms = gen_school_building(&config).unwrap();
        assert_eq!(rooms, vec![Rect::new(0.0, 20.0, 0.0, 20.0).unwrap()]);
    }

    #[test]
    fn rooms_are_a_corridor_apart() {
        let rooms = gen_school_building(&SchoolConfig::default()).unwrap();
        for (i, a) in rooms.iter().enumerate() {
            for b in &rooms[i + 1..] {
                assert!(!a.overlaps(b));
                let gap_x = (b.x_min() - a.x_max()).max(a.x_min() - b.x_max());
                let gap_y = (b.y_min() - a.y_max()).max(a.y_min() - b.y_max());
                assert!((gap_x.max(gap_y) - 4.0).abs() < 1e-12 || gap_x.max(gap_y) > 4.0);
            }
        }
    }

    #[test]
    fn centerlines_and_routes() {
        let config = SchoolConfig::default();
        assert_eq!(corridor_centerlines(&config), vec![-2.0, 22.0, 46.0, 70.0, 94.0]);
        let route = team_route(&corridor_centerlines(&config), 1, 1.5);
        assert_eq!(route.waypoints, vec![Point2::new(94.0, -2.0), Point2::new(94.0, 46.0), Point2::new(46.0, 46.0)]);
        assert_eq!(route.duration(), 64.0);
    }

    #[test]
    fn default_world() {
        let spec = gen_school_shooting(&SchoolConfig::default(), 31).unwrap();
        assert_eq!(spec.nodes.len(), 16);
        assert_eq!(spec.nodes.iter().filter(|n| n.role == NodeRole::TeamLeader).count(), 4);
        assert_eq!(spec.flows.len(), 16);
        assert_eq!(spec.stations.iter().filter(|s| s.kind == StationKind::MmwaveBs).count(), 4);
        let relays: Vec<_> = spec.stations.iter().filter(|s| s.kind == StationKind::MmwaveRelay).collect();
        assert_eq!(relays.len(), 4);
        for r in relays {
            let donor = r.relay.as_ref().unwrap().donor;
            assert_eq!(spec.stations[donor as usize].kind, StationKind::MmwaveBs);
        }
        assert_eq!(spec.horizon, 64.0);
    }

    #[test]
    fn without_relays() {
        let config = SchoolConfig { with_iab: false, ..SchoolConfig::default() };
        let spec = gen_school_shooting(&config, 31).unwrap();
        assert_eq!(spec.stations.len(), 4);
    }

    #[test]
    fn officers_stay_in_corridors() {
        for seed in 0..5 {
            let spec = gen_school_shooting(&SchoolConfig::default(), seed).unwrap();
            let layout = spec.layout();
            let mut rng = SimRng::seed_from_u64(seed);
            let mut fleet = Fleet::new(layout.clone(), &spec.mobile_nodes(), &mut rng).unwrap();
            for k in 1..=640 {
                fleet.advance_to(k as f64 * 0.1, &mut rng).unwrap();
                for p in fleet.positions() {
                    assert!(layout.is_outdoor(p), "seed {seed}: {p:?} inside a room");
                }
            }
        }
    }

    #[test]
    fn too_many_teams() {
        let config = SchoolConfig { n_teams: 5, ..SchoolConfig::default() };
        assert!(gen_school_shooting(&config, 1).is_err());
    }
}
