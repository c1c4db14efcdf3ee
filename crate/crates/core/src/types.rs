//! Domain values: experiments, phase pairs, probability intervals.

use std::fmt;

use crate::error::{QdtError, Result};
use crate::scalar::Scalar;

/// Index of the agent's choice, `j ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    Zero,
    One,
}

impl Choice {
    pub const ALL: [Choice; 2] = [Choice::Zero, Choice::One];

    pub fn index(self) -> usize {
        match self {
            Choice::Zero => 0,
            Choice::One => 1,
        }
    }

    /// The other choice, `j̄ = 1 − j`.
    pub fn complement(self) -> Choice {
        match self {
            Choice::Zero => Choice::One,
            Choice::One => Choice::Zero,
        }
    }
}

impl TryFrom<usize> for Choice {
    type Error = QdtError;

    fn try_from(value: usize) -> Result<Self> {
        match value {
            0 => Ok(Choice::Zero),
            1 => Ok(Choice::One),
            _ => Err(QdtError::InvalidCount {
                name: "choice",
                value,
                reason: "must be 0 or 1",
            }),
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

pub(crate) fn check_probability<T: Scalar>(name: &'static str, value: T) -> Result<()> {
    if !value.is_finite() {
        return Err(QdtError::NotFinite {
            name,
            value: value.as_f64(),
        });
    }
    if value < T::zero() || value > T::one() {
        return Err(QdtError::OutOfRange {
            name,
            value: value.as_f64(),
        });
    }
    Ok(())
}

/// Classical observables of a two-condition, two-choice experiment.
///
/// `p0` and `p1` are the probabilities of choice 0 under condition 0 and
/// condition 1; the choice-1 probabilities are their complements. `q0` is
/// the weight of condition 0 in the mixed condition (`q1 = 1 − q0`).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoChoiceExperiment<T> {
    pub label: String,
    pub p0: T,
    pub p1: T,
    pub q0: T,
    /// Measured probability of choice 0 under the mixed condition, if any.
    pub observed_pk: Option<T>,
}

impl<T: Scalar> TwoChoiceExperiment<T> {
    pub fn new(label: impl Into<String>, p0: T, p1: T, q0: T) -> Result<Self> {
        let exp = Self {
            label: label.into(),
            p0,
            p1,
            q0,
            observed_pk: None,
        };
        exp.validate()?;
        Ok(exp)
    }

    pub fn with_observed(mut self, observed_pk: T) -> Result<Self> {
        check_probability("observed_pk", observed_pk)?;
        self.observed_pk = Some(observed_pk);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p0", self.p0)?;
        check_probability("p1", self.p1)?;
        check_probability("q0", self.q0)?;
        if let Some(pk) = self.observed_pk {
            check_probability("observed_pk", pk)?;
        }
        Ok(())
    }

    /// `p⁽ᵏ⁾_j`: probability of `choice` given condition `k ∈ {0, 1}`.
    pub fn p(&self, condition: usize, choice: Choice) -> T {
        let p = if condition == 0 { self.p0 } else { self.p1 };
        match choice {
            Choice::Zero => p,
            Choice::One => T::one() - p,
        }
    }

    /// `q⁽ᵏ⁾` for `k ∈ {0, 1}`.
    pub fn q(&self, condition: usize) -> T {
        if condition == 0 {
            self.q0
        } else {
            T::one() - self.q0
        }
    }

    /// Observed probability of `choice` under the mixed condition.
    pub fn observed(&self, choice: Choice) -> Option<T> {
        self.observed_pk.map(|pk| match choice {
            Choice::Zero => pk,
            Choice::One => T::one() - pk,
        })
    }
}

/// The two interference phases `(θ₀, θ₁)`, in radians.
///
/// Any real value is accepted; only `cos θ_j` enters the formulas.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePair<T> {
    pub theta0: T,
    pub theta1: T,
}

impl<T: Scalar> PhasePair<T> {
    pub fn new(theta0: T, theta1: T) -> Self {
        Self { theta0, theta1 }
    }

    /// Principal-branch phases in `[0, π]` for the given cosines.
    pub fn from_cosines(c0: T, c1: T) -> Self {
        let clamp = |c: T| c.max(-T::one()).min(T::one());
        Self {
            theta0: clamp(c0).acos(),
            theta1: clamp(c1).acos(),
        }
    }

    pub fn theta(&self, choice: Choice) -> T {
        match choice {
            Choice::Zero => self.theta0,
            Choice::One => self.theta1,
        }
    }

    /// Cosines of both phases. Each phase is first folded onto `[0, π]`, so
    /// `θ` and `2π − θ` give bit-identical results.
    pub fn cosines(&self) -> (T, T) {
        let c = self.canonical();
        (fold(c.theta0).cos(), fold(c.theta1).cos())
    }

    /// Both phases reduced to `[0, 2π)`.
    pub fn canonical(&self) -> Self {
        let tau = T::TAU();
        let wrap = |t: T| {
            let r = t % tau;
            if r < T::zero() {
                r + tau
            } else {
                r
            }
        };
        Self {
            theta0: wrap(self.theta0),
            theta1: wrap(self.theta1),
        }
    }
}

/// Closed sub-interval `[lo, hi]` of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityInterval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> ProbabilityInterval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        check_probability("interval lower bound", lo)?;
        check_probability("interval upper bound", hi)?;
        if lo > hi {
            return Err(QdtError::OutOfRange {
                name: "interval lower bound above upper bound",
                value: (lo - hi).as_f64(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Builds an interval from computed endpoints, snapping values that stray
    /// outside `[0, 1]` (or cross each other) by no more than the tolerance.
    pub(crate) fn from_computed(lo: T, hi: T) -> Result<Self> {
        let tol = T::tolerance();
        let snap = |v: T| {
            if v < T::zero() && v >= -tol {
                T::zero()
            } else if v > T::one() && v <= T::one() + tol {
                T::one()
            } else {
                v
            }
        };
        let (lo, hi) = (snap(lo), snap(hi));
        if lo > hi && lo - hi <= tol {
            return Self::new(hi, hi);
        }
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    /// Membership with the absolute comparison tolerance.
    pub fn contains(&self, value: T) -> bool {
        let tol = T::tolerance();
        value >= self.lo - tol && value <= self.hi + tol
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }
}

impl<T: Scalar> fmt::Display for ProbabilityInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

fn fold<T: Scalar>(t: T) -> T {
    if t > T::PI() {
        T::TAU() - t
    } else {
        t
    }
}
