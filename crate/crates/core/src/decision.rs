//! Closed-form conditional probabilities and their bounds.
//!
//! All functions are pure. Probabilities are validated on entry and every
//! comparison against zero or one uses [`Scalar::tolerance`].

use crate::error::{QdtError, Result};
use crate::scalar::Scalar;
use crate::types::{
    check_probability, Choice, PhasePair, ProbabilityInterval, TwoChoiceExperiment,
};

/// Result of the two-level interference mix.
///
/// The two-level construction has no renormalization, so the value can leave
/// `[0, 1]`. Values within tolerance of the boundary are clamped; anything
/// further out is returned as computed with `out_of_range` set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedProbability<T> {
    pub value: T,
    pub out_of_range: bool,
}

/// Bounds of the two-level mix over all phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelBounds<T> {
    /// Reporting interval, upper end clamped at 1.
    pub interval: ProbabilityInterval<T>,
    /// Unclamped upper bound `(√(q₀p₀) + √(q₁p₁))²`.
    pub raw_hi: T,
}

/// Quantum bounds for one choice, with the phases that attain them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumBounds<T> {
    pub interval: ProbabilityInterval<T>,
    /// Denominator correction `f_j`.
    pub correction: T,
    pub argmin: PhasePair<T>,
    pub argmax: PhasePair<T>,
}

/// Condition weights at which the quantum bounds reach 1 and 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalWeights<T> {
    /// `q⁽⁰⁾` at which the upper quantum bound touches 1.
    pub q_max: T,
    /// `q⁽⁰⁾` at which the lower quantum bound touches 0.
    pub q_min: T,
    /// `X_j = √(p⁽⁰⁾p⁽¹⁾) − √((1−p⁽⁰⁾)(1−p⁽¹⁾))`, in `[−1, 1]`.
    pub x_j: T,
}

fn snap_unit<T: Scalar>(value: T) -> MixedProbability<T> {
    let tol = T::tolerance();
    if value < T::zero() {
        if value >= -tol {
            MixedProbability {
                value: T::zero(),
                out_of_range: false,
            }
        } else {
            MixedProbability {
                value,
                out_of_range: true,
            }
        }
    } else if value > T::one() {
        if value <= T::one() + tol {
            MixedProbability {
                value: T::one(),
                out_of_range: false,
            }
        } else {
            MixedProbability {
                value,
                out_of_range: true,
            }
        }
    } else {
        MixedProbability {
            value,
            out_of_range: false,
        }
    }
}

/// Probability of finding a two-level state in an intermediate state.
///
/// `(2q₀p₀ + 2q₁p₁)/2 + √((2q₀p₀)(2q₁p₁))·cos θ`: the arithmetic mean of the
/// joint probabilities plus a geometric-mean interference term.
pub fn two_level_mix<T: Scalar>(q0: T, p0: T, p1: T, theta: T) -> Result<MixedProbability<T>> {
    check_probability("q0", q0)?;
    check_probability("p0", p0)?;
    check_probability("p1", p1)?;
    if !theta.is_finite() {
        return Err(QdtError::NotFinite {
            name: "theta",
            value: theta.as_f64(),
        });
    }
    let two = T::two();
    let a = two * q0 * p0;
    let b = two * (T::one() - q0) * p1;
    Ok(snap_unit((a + b) / two + (a * b).sqrt() * theta.cos()))
}

/// `[(√(q₀p₀) − √(q₁p₁))², (√(q₀p₀) + √(q₁p₁))²]`, the range of
/// [`two_level_mix`] as `θ` varies.
pub fn two_level_bounds<T: Scalar>(q0: T, p0: T, p1: T) -> Result<TwoLevelBounds<T>> {
    check_probability("q0", q0)?;
    check_probability("p0", p0)?;
    check_probability("p1", p1)?;
    let a = (q0 * p0).sqrt();
    let b = ((T::one() - q0) * p1).sqrt();
    let lo = (a - b).powi(2);
    let raw_hi = (a + b).powi(2);
    let interval = ProbabilityInterval::from_computed(lo, raw_hi.min(T::one()))?;
    Ok(TwoLevelBounds { interval, raw_hi })
}

/// Interference amplitude `2√(q⁽⁰⁾q⁽¹⁾p⁽⁰⁾_j p⁽¹⁾_j)` multiplying `cos θ_j`.
pub fn interference_amplitude<T: Scalar>(exp: &TwoChoiceExperiment<T>, choice: Choice) -> T {
    T::two() * (exp.q(0) * exp.q(1) * exp.p(0, choice) * exp.p(1, choice)).sqrt()
}

/// Quantum conditional probability `P^K_j` as a function of the phase
/// cosines `c₀ = cos θ₀`, `c₁ = cos θ₁`.
pub fn conditional_quantum_at_cosines<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    c0: T,
    c1: T,
    choice: Choice,
) -> Result<T> {
    exp.validate()?;
    let a0 = interference_amplitude(exp, Choice::Zero);
    let a1 = interference_amplitude(exp, Choice::One);
    let denominator = T::one() + a0 * c0 + a1 * c1;
    if !(denominator > T::tolerance()) {
        return Err(QdtError::Singular {
            what: "renormalizing denominator",
            value: denominator.as_f64(),
        });
    }
    let (amplitude, cosine) = match choice {
        Choice::Zero => (a0, c0),
        Choice::One => (a1, c1),
    };
    let classical = exp.q(0) * exp.p(0, choice) + exp.q(1) * exp.p(1, choice);
    Ok((classical + amplitude * cosine) / denominator)
}

/// Quantum conditional probability `P^K_j` for the given phases.
///
/// The numerator adds the interference term of choice `j` to the classical
/// mixture; the denominator renormalizes with both interference terms so
/// that `P^K_0 + P^K_1 = 1`.
pub fn conditional_quantum<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    phases: &PhasePair<T>,
    choice: Choice,
) -> Result<T> {
    let (c0, c1) = phases.cosines();
    conditional_quantum_at_cosines(exp, c0, c1, choice)
}

/// Classical prediction `q⁽⁰⁾p⁽⁰⁾_j + q⁽¹⁾p⁽¹⁾_j`.
pub fn conditional_classical<T: Scalar>(exp: &TwoChoiceExperiment<T>, choice: Choice) -> Result<T> {
    exp.validate()?;
    Ok(exp.q(0) * exp.p(0, choice) + exp.q(1) * exp.p(1, choice))
}

/// Sure-thing interval `[min(p⁽⁰⁾_j, p⁽¹⁾_j), max(p⁽⁰⁾_j, p⁽¹⁾_j)]`.
pub fn classical_bounds<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    choice: Choice,
) -> Result<ProbabilityInterval<T>> {
    exp.validate()?;
    let (a, b) = (exp.p(0, choice), exp.p(1, choice));
    ProbabilityInterval::new(a.min(b), a.max(b))
}

/// Whether the observed mixed-condition probability leaves the classical
/// interval. `None` when nothing was observed.
pub fn sure_thing_violation<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    choice: Choice,
) -> Result<Option<bool>> {
    let bounds = classical_bounds(exp, choice)?;
    Ok(exp.observed(choice).map(|pk| !bounds.contains(pk)))
}

/// Range of [`conditional_quantum`] over all phases at fixed weights.
///
/// The maximum sits at `θ_j = 0, θ_j̄ = π` and the minimum at
/// `θ_j = π, θ_j̄ = 0`.
pub fn quantum_bounds<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    choice: Choice,
) -> Result<QuantumBounds<T>> {
    exp.validate()?;
    let tol = T::tolerance();
    let other = choice.complement();
    let (q0, q1) = (exp.q(0), exp.q(1));
    let correction = T::two()
        * (q0 * q1).sqrt()
        * ((exp.p(0, choice) * exp.p(1, choice)).sqrt()
            - (exp.p(0, other) * exp.p(1, other)).sqrt());
    let below = T::one() - correction;
    let above = T::one() + correction;
    if below.abs() <= tol {
        return Err(QdtError::Singular {
            what: "lower-bound denominator 1 - f_j",
            value: below.as_f64(),
        });
    }
    if above.abs() <= tol {
        return Err(QdtError::Singular {
            what: "upper-bound denominator 1 + f_j",
            value: above.as_f64(),
        });
    }
    let a = (q0 * exp.p(0, choice)).sqrt();
    let b = (q1 * exp.p(1, choice)).sqrt();
    let lo = (a - b).powi(2) / below;
    let hi = (a + b).powi(2) / above;

    let pi = T::PI();
    let (argmax, argmin) = match choice {
        Choice::Zero => (PhasePair::new(T::zero(), pi), PhasePair::new(pi, T::zero())),
        Choice::One => (PhasePair::new(pi, T::zero()), PhasePair::new(T::zero(), pi)),
    };
    Ok(QuantumBounds {
        interval: ProbabilityInterval::from_computed(lo, hi)?,
        correction,
        argmin,
        argmax,
    })
}

/// Condition weights that stretch the quantum bounds of one choice to
/// `[0, 1]` when `q⁽⁰⁾` itself is unknown.
///
/// `q_max` is the tangency point of the upper bound with 1:
/// `(√p⁽⁰⁾ − √p⁽¹⁾X)² / ((√p⁽⁰⁾ − √p⁽¹⁾X)² + (√p⁽¹⁾ − √p⁽⁰⁾X)²)`.
/// `q_min` zeroes the lower bound's numerator, `q⁽⁰⁾p⁽⁰⁾ = q⁽¹⁾p⁽¹⁾`, giving
/// `p⁽¹⁾ / (p⁽⁰⁾ + p⁽¹⁾)`. The mirror expression obtained by swapping the
/// squares in the `q_max` numerator equals `1 − q_max` and does not zero the
/// lower bound in general.
pub fn extremal_weights<T: Scalar>(p0_j: T, p1_j: T) -> Result<ExtremalWeights<T>> {
    check_probability("p0_j", p0_j)?;
    check_probability("p1_j", p1_j)?;
    let tol = T::tolerance();
    let degenerate = || QdtError::DegenerateWeights {
        p0: p0_j.as_f64(),
        p1: p1_j.as_f64(),
    };

    let (s0, s1) = (p0_j.sqrt(), p1_j.sqrt());
    let x_j = (p0_j * p1_j).sqrt() - ((T::one() - p0_j) * (T::one() - p1_j)).sqrt();
    let upper_num = (s0 - s1 * x_j).powi(2);
    let upper_den = upper_num + (s1 - s0 * x_j).powi(2);
    if upper_den <= tol {
        return Err(degenerate());
    }
    let lower_den = p0_j + p1_j;
    if lower_den <= tol {
        return Err(degenerate());
    }
    Ok(ExtremalWeights {
        q_max: upper_num / upper_den,
        q_min: p1_j / lower_den,
        x_j,
    })
}
