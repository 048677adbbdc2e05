//! Single-site Glauber dynamics for the hard-core model, trajectory
//! statistics for the bimodality experiments, and exact bottleneck ratios.
//!
//! Mixing time itself is never estimated here: at the sizes the exact
//! engine can check, an exponential mixing time is unobservable. Crossing
//! counts and bottleneck ratios are the measurable proxies.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{class_measures, ClassMeasures, ExactError};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum GlauberError {
    #[error("steps ({0}) must be at least burn_in ({1})")]
    StepsBelowBurnIn(u64, u64),
    #[error("sample stride must be positive")]
    ZeroStride,
    #[error("activity must be positive and finite, got {0}")]
    BadActivity(f64),
    #[error("a side-full start needs a bipartite graph with recorded sides")]
    NoSides,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Starting configuration of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StartState {
    Empty,
    Side1Full,
    Side2Full,
}

impl std::str::FromStr for StartState {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "empty" => Ok(StartState::Empty),
            "side1-full" => Ok(StartState::Side1Full),
            "side2-full" => Ok(StartState::Side2Full),
            other => Err(format!("unknown start state: {other}")),
        }
    }
}

/// Current independent set plus the running counts the statistics need.
#[derive(Debug, Clone)]
pub struct ChainState {
    pub occupied: Vec<bool>,
    pub step_count: u64,
    n_occupied: usize,
    side_counts: [usize; 2],
}

impl ChainState {
    pub fn n_occupied(&self) -> usize {
        self.n_occupied
    }
}

/// Precomputed per-graph data for stepping a chain.
pub struct Dynamics {
    pub lambda: f64,
    adj: Vec<Vec<u32>>,
    sides: Option<Vec<u8>>,
    insert_prob: f64,
}

impl Dynamics {
    pub fn new(g: &Graph, lambda: f64) -> Result<Self, GlauberError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(GlauberError::BadActivity(lambda));
        }
        Ok(Dynamics {
            lambda,
            adj: g.adjacency(),
            sides: g.sides().map(|s| s.to_vec()),
            insert_prob: lambda / (1.0 + lambda),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn initial_state(&self, start: StartState) -> Result<ChainState, GlauberError> {
        let n = self.n_vertices();
        let mut state = ChainState {
            occupied: vec![false; n],
            step_count: 0,
            n_occupied: 0,
            side_counts: [0, 0],
        };
        if start != StartState::Empty {
            let sides = self.sides.as_ref().ok_or(GlauberError::NoSides)?;
            let want = if start == StartState::Side1Full { 0 } else { 1 };
            for v in 0..n {
                if sides[v] == want {
                    state.occupied[v] = true;
                    state.n_occupied += 1;
                    state.side_counts[want as usize] += 1;
                }
            }
        }
        Ok(state)
    }

    /// (|I ∩ V₁| − |I ∩ V₂|) / max(|V₁|, |V₂|), or 0 when no sides exist.
    fn imbalance(&self, state: &ChainState) -> f64 {
        match &self.sides {
            None => 0.0,
            Some(sides) => {
                let n1 = sides.iter().filter(|&&s| s == 0).count();
                let n2 = sides.len() - n1;
                let scale = n1.max(n2).max(1) as f64;
                (state.side_counts[0] as f64 - state.side_counts[1] as f64) / scale
            }
        }
    }
}

/// One step of the dynamics: pick a uniform vertex, propose insertion with
/// probability λ/(1+λ) and deletion otherwise, reject an insertion that
/// breaks independence. Returns whether the proposal was accepted.
pub fn glauber_step<R: Rng>(dynamics: &Dynamics, state: &mut ChainState, rng: &mut R) -> bool {
    let n = dynamics.n_vertices();
    let v = rng.gen_range(0..n);
    let insert = rng.gen_bool(dynamics.insert_prob);
    state.step_count += 1;
    if insert {
        if !state.occupied[v] {
            if dynamics.adj[v].iter().any(|&u| state.occupied[u as usize]) {
                return false;
            }
            state.occupied[v] = true;
            state.n_occupied += 1;
            if let Some(sides) = &dynamics.sides {
                state.side_counts[sides[v] as usize] += 1;
            }
        }
    } else if state.occupied[v] {
        state.occupied[v] = false;
        state.n_occupied -= 1;
        if let Some(sides) = &dynamics.sides {
            state.side_counts[sides[v] as usize] -= 1;
        }
    }
    true
}

/// Sampled summary of one trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryStats {
    pub imbalance_series: Vec<f64>,
    pub occupancy_series: Vec<f64>,
    /// Sign changes of the imbalance through the band [−band, band].
    pub crossings: u64,
    pub band: f64,
    pub acceptance_rate: f64,
}

/// Run a chain for `steps` steps, sampling every `sample_stride` steps after
/// `burn_in`. Deterministic for a fixed seed.
#[allow(clippy::too_many_arguments)]
pub fn run_chain(
    g: &Graph,
    lambda: f64,
    steps: u64,
    burn_in: u64,
    sample_stride: u64,
    seed: u64,
    start: StartState,
    band: f64,
) -> Result<TrajectoryStats, GlauberError> {
    if steps < burn_in {
        return Err(GlauberError::StepsBelowBurnIn(steps, burn_in));
    }
    if sample_stride == 0 {
        return Err(GlauberError::ZeroStride);
    }
    let dynamics = Dynamics::new(g, lambda)?;
    let mut state = dynamics.initial_state(start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n_vertices().max(1) as f64;

    let mut stats = TrajectoryStats {
        imbalance_series: Vec::new(),
        occupancy_series: Vec::new(),
        crossings: 0,
        band,
        acceptance_rate: 0.0,
    };
    let mut accepted = 0u64;
    // last side of the band the imbalance was seen on: -1, 0 (never), +1
    let mut last_side = 0i8;
    for step in 1..=steps {
        if glauber_step(&dynamics, &mut state, &mut rng) {
            accepted += 1;
        }
        if step > burn_in && (step - burn_in) % sample_stride == 0 {
            let imb = dynamics.imbalance(&state);
            stats.imbalance_series.push(imb);
            stats.occupancy_series.push(state.n_occupied as f64 / n);
            let side = if imb > band {
                1
            } else if imb < -band {
                -1
            } else {
                0
            };
            if side != 0 {
                if last_side != 0 && side != last_side {
                    stats.crossings += 1;
                }
                last_side = side;
            }
        }
    }
    stats.acceptance_rate = accepted as f64 / steps.max(1) as f64;
    debug_assert!(g.is_independent(&state.occupied));
    Ok(stats)
}

/// Exact conductance-style witness of the bimodal bottleneck.
#[derive(Debug, Clone, Serialize)]
pub struct BottleneckReport {
    pub ratio: f64,
    pub degenerate: bool,
    pub measures: ClassMeasures,
}

/// μ(I_B^δ) / min(μ(I₁^δ), μ(I₂^δ)) from the exact class measures. A ratio
/// below 1 witnesses that the balanced saddle carries less mass than either
/// mode. Degenerate (infinite) when the lighter mode has zero measure.
pub fn bottleneck_ratio(
    g: &Graph,
    lambda: &BigRational,
    slack: &BigRational,
) -> Result<BottleneckReport, GlauberError> {
    let measures = class_measures(g, lambda, slack)?;
    let min_mode = measures.mu_1.min(measures.mu_2);
    let degenerate = min_mode <= 0.0;
    let ratio = if degenerate {
        f64::INFINITY
    } else {
        measures.mu_b / min_mode
    };
    Ok(BottleneckReport {
        ratio,
        degenerate,
        measures,
    })
}

/// Convenience wrapper taking f64 parameters (converted exactly, since every
/// finite f64 is rational).
pub fn bottleneck_ratio_f64(
    g: &Graph,
    lambda: f64,
    slack: f64,
) -> Result<BottleneckReport, GlauberError> {
    let to_rat = |x: f64| {
        BigRational::from_float(x)
            .filter(|_| x >= 0.0)
            .ok_or(GlauberError::BadActivity(x))
    };
    bottleneck_ratio(g, &to_rat(lambda)?, &to_rat(slack)?)
}
