//! Abstract link models: line of sight, per-link rates, fair sharing of a
//! station's capacity, link selection and relay paths.
//!
//! LTE is a coverage layer with a fixed effective capacity per direction.
//! mmWave rates follow a per-antenna-configuration distance curve, scaled down
//! without line of sight and zero beyond the maximum range.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{is_line_clear, Point2, Rect};

pub type StationId = u32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadioError {
    #[error("no mmWave rate curve for {antennas_bs}x{antennas_ue} antennas")]
    UnknownAntennaConfig { antennas_bs: u32, antennas_ue: u32 },
    #[error("invalid link model parameters: {0}")]
    InvalidParams(String),
    #[error("link selection needs at least one candidate")]
    NoCandidates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    Lte,
    Mmwave,
}

/// LOS rate against distance for one antenna configuration, as
/// `(distance_m, rate_bps)` breakpoints joined linearly. Rates past the last
/// breakpoint hold its value (up to the model's maximum range).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCurve {
    pub antennas_bs: u32,
    pub antennas_ue: u32,
    pub breakpoints: Vec<(f64, f64)>,
}

impl RateCurve {
    /// Linear from `(0, peak)` to `(range, 0.2 * peak)`.
    pub fn linear_decay(antennas_bs: u32, antennas_ue: u32, peak: f64, range: f64) -> Self {
        Self {
            antennas_bs,
            antennas_ue,
            breakpoints: vec![(0.0, peak), (range, 0.2 * peak)],
        }
    }

    pub fn at(&self, distance: f64) -> f64 {
        let pts = &self.breakpoints;
        if distance <= pts[0].0 {
            return pts[0].1;
        }
        for w in pts.windows(2) {
            let ((d0, r0), (d1, r1)) = (w[0], w[1]);
            if distance <= d1 {
                return if d1 > d0 { r0 + (r1 - r0) * (distance - d0) / (d1 - d0) } else { r1 };
            }
        }
        pts[pts.len() - 1].1
    }

    fn validate(&self) -> Result<(), RadioError> {
        let pts = &self.breakpoints;
        let ok = !pts.is_empty()
            && pts[0].0 == 0.0
            && pts.iter().all(|&(d, r)| d.is_finite() && r.is_finite() && r >= 0.0)
            && pts.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 >= w[1].1);
        if ok {
            Ok(())
        } else {
            Err(RadioError::InvalidParams(format!(
                "curve {}x{} must start at 0 m with increasing distances and non-increasing, non-negative rates",
                self.antennas_bs, self.antennas_ue
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LinkModelParams {
    /// Nominal LTE cell capacity per direction, bit/s.
    pub lte_cell_capacity: f64,
    /// Fraction of the nominal capacity left after scheduling overheads.
    pub lte_efficiency: f64,
    pub mmwave_curves: Vec<RateCurve>,
    pub mmwave_nlos_factor: f64,
    pub mmwave_max_range: f64,
    pub relay_backhaul_share: f64,
}

pub const DEFAULT_MAX_RANGE: f64 = 200.0;

impl Default for LinkModelParams {
    fn default() -> Self {
        Self {
            lte_cell_capacity: 70e6,
            lte_efficiency: 0.95,
            mmwave_curves: vec![
                RateCurve::linear_decay(16, 4, 150e6, DEFAULT_MAX_RANGE),
                RateCurve::linear_decay(64, 4, 400e6, DEFAULT_MAX_RANGE),
                RateCurve::linear_decay(64, 16, 650e6, DEFAULT_MAX_RANGE),
            ],
            mmwave_nlos_factor: 0.05,
            mmwave_max_range: DEFAULT_MAX_RANGE,
            relay_backhaul_share: 0.5,
        }
    }
}

impl LinkModelParams {
    pub fn validate(&self) -> Result<(), RadioError> {
        let bad = |m: &str| Err(RadioError::InvalidParams(m.into()));
        if !(self.lte_cell_capacity >= 0.0) || !self.lte_cell_capacity.is_finite() {
            return bad("lte_cell_capacity must be finite and >= 0");
        }
        if !(0.0..=1.0).contains(&self.lte_efficiency) {
            return bad("lte_efficiency must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mmwave_nlos_factor) {
            return bad("mmwave_nlos_factor must lie in [0, 1]");
        }
        if !(self.mmwave_max_range >= 0.0) {
            return bad("mmwave_max_range must be >= 0");
        }
        if !(self.relay_backhaul_share > 0.0 && self.relay_backhaul_share <= 1.0) {
            return bad("relay_backhaul_share must lie in (0, 1]");
        }
        for (i, c) in self.mmwave_curves.iter().enumerate() {
            c.validate()?;
            for d in &self.mmwave_curves[i + 1..] {
                if (c.antennas_bs, c.antennas_ue) == (d.antennas_bs, d.antennas_ue) {
                    return bad("duplicate antenna configuration");
                }
                let (lo, hi) = if c.antennas_bs <= d.antennas_bs && c.antennas_ue <= d.antennas_ue {
                    (c, d)
                } else if d.antennas_bs <= c.antennas_bs && d.antennas_ue <= c.antennas_ue {
                    (d, c)
                } else {
                    continue;
                };
                // Piecewise-linear curves only need comparing at their breakpoints.
                let dominated = lo
                    .breakpoints
                    .iter()
                    .chain(&hi.breakpoints)
                    .all(|&(x, _)| lo.at(x) <= hi.at(x));
                if !dominated {
                    return bad("mmWave rate must not decrease as antennas are added");
                }
            }
        }
        Ok(())
    }

    /// Parses a TOML table of overrides; absent keys keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self, RadioError> {
        let params: Self = toml::from_str(text).map_err(|e| RadioError::InvalidParams(e.to_string()))?;
        params.validate()?;
        Ok(params)
    }

    pub fn lte_effective_capacity(&self) -> f64 {
        self.lte_cell_capacity * self.lte_efficiency
    }

    pub fn curve(&self, antennas_bs: u32, antennas_ue: u32) -> Result<&RateCurve, RadioError> {
        self.mmwave_curves
            .iter()
            .find(|c| c.antennas_bs == antennas_bs && c.antennas_ue == antennas_ue)
            .ok_or(RadioError::UnknownAntennaConfig {
                antennas_bs,
                antennas_ue,
            })
    }

    /// Capacity of one station's shared pool (per direction for LTE).
    pub fn station_capacity(&self, kind: LinkKind, antennas_bs: u32, antennas_ue: u32) -> Result<f64, RadioError> {
        match kind {
            LinkKind::Lte => Ok(self.lte_effective_capacity()),
            LinkKind::Mmwave => Ok(self.curve(antennas_bs, antennas_ue)?.at(0.0)),
        }
    }
}

pub fn is_los(a: Point2, b: Point2, boxes: &[Rect]) -> bool {
    is_line_clear(a, b, boxes)
}

pub fn link_rate(
    kind: LinkKind,
    params: &LinkModelParams,
    los: bool,
    antennas_bs: u32,
    antennas_ue: u32,
    distance: f64,
) -> Result<f64, RadioError> {
    match kind {
        LinkKind::Lte => Ok(params.lte_effective_capacity()),
        LinkKind::Mmwave => {
            let curve = params.curve(antennas_bs, antennas_ue)?;
            if distance > params.mmwave_max_range {
                return Ok(0.0);
            }
            let rate = curve.at(distance.max(0.0));
            Ok(if los { rate } else { rate * params.mmwave_nlos_factor })
        }
    }
}

/// Two-hop rate through a relay sharing one carrier between access and backhaul.
pub fn relay_path_rate(access_rate: f64, backhaul_rate: f64, params: &LinkModelParams) -> f64 {
    access_rate.min(backhaul_rate) * params.relay_backhaul_share
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowDemand {
    pub flow: u32,
    pub achievable: f64,
    pub offered: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grant {
    pub flow: u32,
    pub granted: f64,
}

/// Max-min fair split of `capacity` where each flow is capped by
/// `min(achievable, offered)`. Grants are returned in input order.
pub fn allocate(capacity: f64, demands: &[FlowDemand]) -> Vec<Grant> {
    let caps: Vec<f64> = demands.iter().map(|d| d.achievable.min(d.offered).max(0.0)).collect();
    let mut order: Vec<usize> = (0..demands.len()).collect();
    order.sort_by(|&i, &j| caps[i].total_cmp(&caps[j]));

    let mut granted = vec![0.0; demands.len()];
    let mut remaining = capacity.max(0.0);
    for (k, &i) in order.iter().enumerate() {
        let share = remaining / (order.len() - k) as f64;
        if caps[i] <= share {
            granted[i] = caps[i];
            remaining -= caps[i];
        } else {
            // Every remaining cap is at least as large: all get the level.
            for &j in &order[k..] {
                granted[j] = share;
            }
            break;
        }
    }
    demands
        .iter()
        .zip(granted)
        .map(|(d, granted)| Grant { flow: d.flow, granted })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkAssessment {
    pub station: StationId,
    pub kind: LinkKind,
    pub los: bool,
    pub achievable_rate: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionPolicy {
    #[default]
    BestRate,
    PreferLte,
}

/// Station to serve a flow. `BestRate` takes the highest achievable rate,
/// ties to the lowest station id; `PreferLte` takes the lowest-id LTE station
/// when one is present and otherwise behaves like `BestRate`.
pub fn select_link(assessments: &[LinkAssessment], policy: SelectionPolicy) -> Result<StationId, RadioError> {
    if policy == SelectionPolicy::PreferLte {
        if let Some(lte) = assessments
            .iter()
            .filter(|a| a.kind == LinkKind::Lte)
            .min_by_key(|a| a.station)
        {
            return Ok(lte.station);
        }
    }
    assessments
        .iter()
        .min_by(|a, b| {
            b.achievable_rate
                .total_cmp(&a.achievable_rate)
                .then(a.station.cmp(&b.station))
        })
        .map(|a| a.station)
        .ok_or(RadioError::NoCandidates)
}
