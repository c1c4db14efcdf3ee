//! Level sets of `P^K_0` in the phase plane.
//!
//! In the coordinates `(c₀, c₁) = (cos θ₀, cos θ₁)` every level set of the
//! closed form is a straight line, so trajectories, their intersections and
//! the residuals of further experiments are exact linear algebra. Angle-space
//! curves are the principal-branch images `θ = arccos c` plus their mirror
//! copies about `θ = π`.

use std::fmt;

use crate::decision::{classical_bounds, conditional_quantum, interference_amplitude};
use crate::error::{QdtError, Result};
use crate::scalar::Scalar;
use crate::types::{
    check_probability, Choice, PhasePair, ProbabilityInterval, TwoChoiceExperiment,
};

/// Grid resolution that puts `θ = π/2` and `θ = π` on grid points.
pub const DEFAULT_RESOLUTION: usize = 201;

/// Line `α·c₀ + β·c₁ + γ = 0` of phase cosines giving `P^K_0 = target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryLine<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> TrajectoryLine<T> {
    /// Signed value `α·c₀ + β·c₁ + γ`.
    pub fn residual(&self, c0: T, c1: T) -> T {
        self.alpha * c0 + self.beta * c1 + self.gamma
    }

    /// Sub-interval of `[-1, 1]` swept by the free coordinate, or `None`
    /// when the line misses the unit square. The free coordinate is `c₀`
    /// unless the line is vertical.
    fn admissible(&self) -> Option<(T, T)> {
        let tol = T::tolerance();
        let one = T::one();
        if self.beta == T::zero() {
            let c0 = -self.gamma / self.alpha;
            return (c0.abs() <= one + tol).then_some((-one, one));
        }
        if self.alpha == T::zero() {
            let c1 = -self.gamma / self.beta;
            return (c1.abs() <= one + tol).then_some((-one, one));
        }
        // c₀ where the line meets c₁ = ±1.
        let a = -(self.gamma + self.beta) / self.alpha;
        let b = -(self.gamma - self.beta) / self.alpha;
        let lo = a.min(b).max(-one);
        let hi = a.max(b).min(one);
        (lo <= hi + tol).then(|| (lo.min(hi), hi))
    }

    /// Point on the line at parameter `t` of the free coordinate, clamped
    /// to the unit square.
    fn point_at(&self, t: T) -> (T, T) {
        let clamp = |c: T| c.max(-T::one()).min(T::one());
        if self.beta == T::zero() {
            (clamp(-self.gamma / self.alpha), t)
        } else {
            (t, clamp(-(self.alpha * t + self.gamma) / self.beta))
        }
    }
}

/// Level-set line of `P^K_0` through `target`, or through the observed
/// mixed-condition probability when `target` is `None`.
///
/// `α = a₀(1 − P)`, `β = −a₁P`, `γ = P_cl − P` where `a_j` are the
/// interference amplitudes and `P_cl` the classical prediction.
pub fn trajectory<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    target: Option<T>,
) -> Result<TrajectoryLine<T>> {
    exp.validate()?;
    let target = match target.or(exp.observed_pk) {
        Some(t) => t,
        None => {
            return Err(QdtError::MissingObserved {
                label: exp.label.clone(),
            })
        }
    };
    check_probability("target", target)?;
    let tol = T::tolerance();
    let a0 = interference_amplitude(exp, Choice::Zero);
    let a1 = interference_amplitude(exp, Choice::One);
    if a0 <= tol && a1 <= tol {
        return Err(QdtError::DegenerateExperiment {
            label: exp.label.clone(),
        });
    }
    let classical = exp.q(0) * exp.p0 + exp.q(1) * exp.p1;
    Ok(TrajectoryLine {
        alpha: a0 * (T::one() - target),
        beta: -a1 * target,
        gamma: classical - target,
    })
}

/// `count` evenly spaced points of the line inside the unit square, as
/// principal-branch phases in `[0, π]`. Empty when the line misses the
/// square, i.e. the target lies outside the quantum bounds.
pub fn sample_trajectory<T: Scalar>(
    line: &TrajectoryLine<T>,
    count: usize,
) -> Result<Vec<PhasePair<T>>> {
    if count < 2 {
        return Err(QdtError::InvalidCount {
            name: "samples",
            value: count,
            reason: "must be at least 2",
        });
    }
    if line.alpha == T::zero() && line.beta == T::zero() {
        return Ok(Vec::new());
    }
    let Some((lo, hi)) = line.admissible() else {
        return Ok(Vec::new());
    };
    let steps = T::from_usize(count - 1).unwrap();
    Ok((0..count)
        .map(|i| {
            let t = lo + (hi - lo) * T::from_usize(i).unwrap() / steps;
            let (c0, c1) = line.point_at(t);
            PhasePair::from_cosines(c0, c1)
        })
        .collect())
}

/// Common point of two trajectory lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection<T> {
    pub c0: T,
    pub c1: T,
    /// Both coordinates are valid cosines.
    pub in_range: bool,
}

impl<T: Scalar> Intersection<T> {
    /// Principal-branch phases, if the point is in range.
    pub fn phases(&self) -> Option<PhasePair<T>> {
        self.in_range
            .then(|| PhasePair::from_cosines(self.c0, self.c1))
    }
}

/// Solves the 2x2 system formed by two trajectory lines.
pub fn intersect<T: Scalar>(
    a: &TrajectoryLine<T>,
    b: &TrajectoryLine<T>,
) -> Result<Intersection<T>> {
    let det = a.alpha * b.beta - b.alpha * a.beta;
    if !(det.abs() > T::tolerance()) {
        return Err(QdtError::ParallelLines {
            determinant: det.as_f64(),
        });
    }
    let c0 = (a.beta * b.gamma - b.beta * a.gamma) / det;
    let c1 = (b.alpha * a.gamma - a.alpha * b.gamma) / det;
    let one = T::one();
    Ok(Intersection {
        c0,
        c1,
        in_range: c0.abs() <= one && c1.abs() <= one,
    })
}

/// Intersection of two fitted trajectories and every experiment's line
/// residual there.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrencyReport<T> {
    pub point: (T, T),
    pub in_range: bool,
    pub fit_pair: (usize, usize),
    /// Signed `α·c₀ + β·c₁ + γ` per experiment, in input order.
    pub residuals: Vec<T>,
}

/// Fits the phase point on two experiments and measures how far every
/// experiment's trajectory passes from it.
pub fn concurrency<T: Scalar>(
    exps: &[TwoChoiceExperiment<T>],
    fit_pair: (usize, usize),
) -> Result<ConcurrencyReport<T>> {
    if exps.len() < 2 {
        return Err(QdtError::InvalidCount {
            name: "experiments",
            value: exps.len(),
            reason: "need at least 2",
        });
    }
    for &i in &[fit_pair.0, fit_pair.1] {
        if i >= exps.len() {
            return Err(QdtError::IndexOutOfBounds {
                index: i,
                len: exps.len(),
            });
        }
    }
    let lines = exps
        .iter()
        .map(|e| trajectory(e, None))
        .collect::<Result<Vec<_>>>()?;
    let hit = intersect(&lines[fit_pair.0], &lines[fit_pair.1])?;
    Ok(ConcurrencyReport {
        point: (hit.c0, hit.c1),
        in_range: hit.in_range,
        fit_pair,
        residuals: lines.iter().map(|l| l.residual(hit.c0, hit.c1)).collect(),
    })
}

/// Position of `P^K_0` relative to the classical interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Below,
    Classical,
    Above,
    Singular,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::Below,
        Region::Classical,
        Region::Above,
        Region::Singular,
    ];

    pub fn classify<T: Scalar>(value: T, classical: &ProbabilityInterval<T>) -> Region {
        let tol = T::tolerance();
        if value < classical.lo() - tol {
            Region::Below
        } else if value > classical.hi() + tol {
            Region::Above
        } else {
            Region::Classical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Below => "below",
            Region::Classical => "classical",
            Region::Above => "above",
            Region::Singular => "singular",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `P^K_0` sampled on a uniform `(θ₀, θ₁)` grid over `[0, 2π]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid<T> {
    pub resolution: usize,
    /// Axis samples shared by both phases.
    pub thetas: Vec<T>,
    /// Row-major by `θ₀`; `None` marks a singular cell.
    pub values: Vec<Option<T>>,
    pub regions: Vec<Region>,
    pub classical: ProbabilityInterval<T>,
}

impl<T: Scalar> ContourGrid<T> {
    pub fn value(&self, i0: usize, i1: usize) -> Option<T> {
        self.values[i0 * self.resolution + i1]
    }

    pub fn region(&self, i0: usize, i1: usize) -> Region {
        self.regions[i0 * self.resolution + i1]
    }

    pub fn count(&self, region: Region) -> usize {
        self.regions.iter().filter(|&&r| r == region).count()
    }

    /// Share of grid points outside the classical band.
    pub fn fraction_outside_classical(&self) -> f64 {
        let outside = self.count(Region::Below) + self.count(Region::Above);
        outside as f64 / self.regions.len() as f64
    }
}

/// Evaluates `P^K_0` on a `resolution x resolution` grid and classifies
/// each point against the classical interval.
pub fn contour<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    resolution: usize,
) -> Result<ContourGrid<T>> {
    if resolution < 2 {
        return Err(QdtError::InvalidCount {
            name: "resolution",
            value: resolution,
            reason: "must be at least 2",
        });
    }
    let classical = classical_bounds(exp, Choice::Zero)?;
    let steps = T::from_usize(resolution - 1).unwrap();
    let thetas: Vec<T> = (0..resolution)
        .map(|i| T::TAU() * T::from_usize(i).unwrap() / steps)
        .collect();
    let mut values = Vec::with_capacity(resolution * resolution);
    let mut regions = Vec::with_capacity(resolution * resolution);
    for &t0 in &thetas {
        for &t1 in &thetas {
            match conditional_quantum(exp, &PhasePair::new(t0, t1), Choice::Zero) {
                Ok(v) => {
                    values.push(Some(v));
                    regions.push(Region::classify(v, &classical));
                }
                Err(QdtError::Singular { .. }) => {
                    values.push(None);
                    regions.push(Region::Singular);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(ContourGrid {
        resolution,
        thetas,
        values,
        regions,
        classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{conditional_classical, conditional_quantum_at_cosines};
    use std::f64::consts::FRAC_PI_2;

    type Line64 = TrajectoryLine<f64>;

    fn exp(label: &str, p0: f64, p1: f64, pk: f64) -> TwoChoiceExperiment<f64> {
        TwoChoiceExperiment::new(label, p0, p1, 0.5)
            .unwrap()
            .with_observed(pk)
            .unwrap()
    }

    #[test]
    fn classical_target_passes_through_origin() {
        let e = exp("st", 0.97, 0.84, 0.63);
        let cl = conditional_classical(&e, Choice::Zero).unwrap();
        let line = trajectory(&e, Some(cl)).unwrap();
        assert_eq!(line.gamma, 0.0);
        assert_eq!(line.residual(0.0, 0.0), 0.0);
        let p =
            conditional_quantum(&e, &PhasePair::new(FRAC_PI_2, FRAC_PI_2), Choice::Zero).unwrap();
        assert!((p - cl).abs() < 1e-12);
    }

    #[test]
    fn shafir_trajectory_spans_expected_cosines() {
        let line = trajectory(&exp("st", 0.97, 0.84, 0.63), None).unwrap();
        let (lo, hi) = line.admissible().unwrap();
        // c₀ at c₁ = -1 and c₁ = +1, from solving the line equation directly.
        assert!((lo - -0.9540772211533056).abs() < 1e-12);
        assert!((hi - -0.692702291117845).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_missing_target() {
        let pure = TwoChoiceExperiment::new("pure", 0.3, 0.6, 1.0).unwrap();
        assert!(matches!(
            trajectory(&pure, Some(0.4)),
            Err(QdtError::DegenerateExperiment { .. })
        ));
        let blank = TwoChoiceExperiment::new("blank", 0.3, 0.6, 0.5).unwrap();
        assert!(matches!(
            trajectory(&blank, None),
            Err(QdtError::MissingObserved { .. })
        ));
    }

    #[test]
    fn sampling_outside_bounds_is_empty() {
        let e = exp("st", 0.97, 0.84, 0.63);
        let line = trajectory(&e, Some(0.999)).unwrap();
        assert!(sample_trajectory(&line, 64).unwrap().is_empty());
        assert!(sample_trajectory(&line, 1).is_err());
    }

    #[test]
    fn vertical_line_shares_c0() {
        let line: Line64 = TrajectoryLine {
            alpha: 2.0,
            beta: 0.0,
            gamma: 0.5,
        };
        let pts = sample_trajectory(&line, 17).unwrap();
        assert_eq!(pts.len(), 17);
        for p in &pts {
            assert_eq!(p.theta0, pts[0].theta0);
            assert!((p.theta0.cos() - -0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn croson_sweep_hits_target() {
        let e = exp("croson", 0.67, 0.32, 0.30);
        let line = trajectory(&e, None).unwrap();
        let pts = sample_trajectory(&line, 1024).unwrap();
        assert_eq!(pts.len(), 1024);
        for p in pts {
            let v = conditional_quantum(&e, &p, Choice::Zero).unwrap();
            assert!((v - 0.30).abs() < 1e-10);
        }
    }

    #[test]
    fn intersection_examples() {
        let st = trajectory(&exp("st", 0.97, 0.84, 0.63), None).unwrap();
        assert!(matches!(
            intersect(&st, &st),
            Err(QdtError::ParallelLines { .. })
        ));
        let cr = trajectory(&exp("cr", 0.67, 0.32, 0.30), None).unwrap();
        let bu = trajectory(&exp("bu", 0.91, 0.84, 0.66), None).unwrap();
        // Frozen from an independent dense linear solve of the two lines.
        let x = intersect(&st, &cr).unwrap();
        assert!((x.c0 - -0.91755968).abs() < 1e-7 && (x.c1 - -0.72057348).abs() < 1e-7);
        assert!(x.in_range);
        let y = intersect(&st, &bu).unwrap();
        assert!((y.c0 - -0.91978182).abs() < 1e-7 && (y.c1 - -0.73757697).abs() < 1e-7);
        assert!(((x.c0 - y.c0).powi(2) + (x.c1 - y.c1).powi(2)).sqrt() < 0.02);
    }

    #[test]
    fn concurrency_with_two_experiments_has_zero_residuals() {
        let exps = [exp("st", 0.97, 0.84, 0.63), exp("cr", 0.67, 0.32, 0.30)];
        let rep = concurrency(&exps, (0, 1)).unwrap();
        assert!(rep.residuals.iter().all(|r| r.abs() < 1e-12));
        assert!(concurrency(&exps, (0, 2)).is_err());
        assert!(concurrency(&exps[..1], (0, 0)).is_err());
    }

    #[test]
    fn classical_target_residual_at_origin() {
        let e: TwoChoiceExperiment<f64> = TwoChoiceExperiment::new("c", 0.6, 0.2, 0.5)
            .unwrap()
            .with_observed(0.4)
            .unwrap();
        let line = trajectory(&e, None).unwrap();
        assert_eq!(line.residual(0.0, 0.0), line.gamma);
        assert!(line.gamma.abs() < 1e-15);
    }

    #[test]
    fn contour_center_is_classical() {
        let e = exp("st", 0.97, 0.84, 0.63);
        let grid = contour(&e, DEFAULT_RESOLUTION).unwrap();
        let v = grid.value(50, 50).unwrap();
        assert!((v - 0.905).abs() < 1e-12);
        assert_eq!(grid.region(50, 50), Region::Classical);
        assert!(contour(&e, 1).is_err());
    }

    #[test]
    fn contour_marks_singular_cells() {
        let e = TwoChoiceExperiment::new("s", 1.0, 1.0, 0.5).unwrap();
        let grid = contour(&e, 3).unwrap();
        // θ₀ = π is the middle row.
        for i1 in 0..3 {
            assert_eq!(grid.region(1, i1), Region::Singular);
            assert!(grid.value(1, i1).is_none());
        }
        assert_eq!(grid.region(0, 0), Region::Classical);
    }

    #[test]
    fn figure_inputs_show_three_regions() {
        let e = TwoChoiceExperiment::new("fig", 6.0 / 8.0, 1.0 / 8.0, 0.5).unwrap();
        let grid = contour(&e, DEFAULT_RESOLUTION).unwrap();
        assert!(grid.count(Region::Below) > 0);
        assert!(grid.count(Region::Classical) > 0);
        assert!(grid.count(Region::Above) > 0);
        assert_eq!(grid.count(Region::Singular), 0);
    }

    #[test]
    fn cosine_entry_point_agrees_with_line() {
        let e = exp("li", 0.83, 0.66, 0.60);
        let line = trajectory(&e, None).unwrap();
        let c0 = -0.5;
        let c1 = -(line.alpha * c0 + line.gamma) / line.beta;
        let v = conditional_quantum_at_cosines(&e, c0, c1, Choice::Zero).unwrap();
        assert!((v - 0.60).abs() < 1e-12);
    }
}
