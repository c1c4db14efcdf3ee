//! Closed form against the explicit amplitude construction, over a phase
//! grid and random gauges.

use std::f64::consts::{PI, TAU};

use qdt_core::amplitude::{build_state, conditional_from_amplitudes, Gauge};
use qdt_core::{conditional_quantum, Choice, Experiment, Phases, QdtError};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Worst {
    pub label: String,
    pub phases: Phases,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSummary {
    pub evaluations: usize,
    /// Points where either path reports a singular denominator.
    pub skipped: usize,
    pub max_deviation: f64,
    pub worst: Option<Worst>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.max_deviation < TOLERANCE
    }
}

/// Every experiment on a `grid x grid` phase grid over `[0, 2π)`, with
/// `gauges` random gauge draws per point.
pub fn run(
    exps: &[Experiment],
    grid: usize,
    gauges: usize,
    seed: u64,
) -> Result<OracleSummary, QdtError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut summary = OracleSummary {
        evaluations: 0,
        skipped: 0,
        max_deviation: 0.0,
        worst: None,
    };
    for exp in exps {
        for i0 in 0..grid {
            for i1 in 0..grid {
                let phases =
                    Phases::new(TAU * i0 as f64 / grid as f64, TAU * i1 as f64 / grid as f64);
                for _ in 0..gauges {
                    let gauge = Gauge {
                        chi0: rng.random_range(-PI..PI),
                        chi1: rng.random_range(-PI..PI),
                        phi0: rng.random_range(-PI..PI),
                        phi1: rng.random_range(-PI..PI),
                    };
                    let state = build_state(exp, &phases, &gauge)?;
                    let amplitude = match conditional_from_amplitudes(&state, &state.event()) {
                        Ok(p) => p,
                        Err(e) if e.is_numerical() => {
                            summary.skipped += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    for j in Choice::ALL {
                        let closed = match conditional_quantum(exp, &phases, j) {
                            Ok(v) => v,
                            Err(e) if e.is_numerical() => {
                                summary.skipped += 1;
                                break;
                            }
                            Err(e) => return Err(e),
                        };
                        let deviation = (closed - amplitude[j.index()]).abs();
                        summary.evaluations += 1;
                        if deviation > summary.max_deviation || summary.worst.is_none() {
                            summary.max_deviation = summary.max_deviation.max(deviation);
                            summary.worst = Some(Worst {
                                label: exp.label.clone(),
                                phases,
                                deviation,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(summary)
}
