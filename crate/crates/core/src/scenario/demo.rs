//! Mobility-only worlds: random obstacles in a rectangle with free walkers or
//! master/slave groups, used to produce sample trajectories.

use serde::{Deserialize, Serialize};

use super::{place_random_buildings, ScenarioError};
use crate::geometry::{sample_outdoor_position, Bounds, Layout, DEFAULT_OUTDOOR_ATTEMPTS};
use crate::mobility::{
    build_group, DeviationDist, MobileNode, MobilitySpec, SlaveConstraint, WalkKind, WalkParams,
    DEFAULT_MAX_ITERATIONS,
};
use crate::rng::{stream, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoConfig {
    pub bounds: Bounds,
    pub n_boxes: usize,
    pub box_side: (f64, f64),
    /// Minimum clearance between obstacles.
    pub box_gap: f64,
    /// Free walkers, or group masters when `slaves_per_master > 0`.
    pub n_walkers: usize,
    pub slaves_per_master: usize,
    pub deviation: DeviationDist,
    pub horizon: f64,
}

impl DemoConfig {
    pub fn walk(bounds: Bounds, n_boxes: usize) -> Self {
        Self {
            bounds,
            n_boxes,
            box_side: (5.0, 20.0),
            box_gap: 1.0,
            n_walkers: 1,
            slaves_per_master: 0,
            deviation: DeviationDist::default(),
            horizon: 100.0,
        }
    }

    pub fn group(bounds: Bounds, n_boxes: usize, masters: usize, slaves: usize) -> Self {
        Self {
            n_walkers: masters,
            slaves_per_master: slaves,
            ..Self::walk(bounds, n_boxes)
        }
    }
}

/// Obstacles plus the nodes moving among them. Group members are numbered
/// consecutively, master first.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoWorld {
    pub layout: Layout,
    pub nodes: Vec<MobileNode>,
    /// Master of every node, `None` for masters and free walkers.
    pub masters: Vec<Option<u32>>,
}

pub fn gen_demo(config: &DemoConfig, seed: u64) -> Result<DemoWorld, ScenarioError> {
    if !(config.horizon > 0.0) {
        return Err(super::invalid("horizon must be positive"));
    }
    let mut rng = stream(seed, Stream::Generation);
    let boxes = place_random_buildings(
        config.bounds.rect(),
        config.n_boxes,
        config.box_side.0,
        config.box_side.1,
        config.box_gap,
        &[],
        &mut rng,
        10_000,
    )?;
    let layout = Layout::new(config.bounds, boxes);
    let params = WalkParams::new(config.bounds);
    let mut nodes = Vec::new();
    for _ in 0..config.n_walkers {
        let start = sample_outdoor_position(&layout.bounds, &layout.boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS)?;
        let group = build_group(
            nodes.len() as u32,
            MobilitySpec::Walk {
                kind: WalkKind::BuildingAware,
                params: params.clone(),
            },
            start,
            config.slaves_per_master,
            config.deviation,
            SlaveConstraint::Outdoor,
            DEFAULT_MAX_ITERATIONS,
            &layout,
            &mut rng,
        )?;
        nodes.extend(group);
    }
    let masters = nodes.iter().map(|n| n.mobility.master()).collect();
    Ok(DemoWorld { layout, nodes, masters })
}
