use num_complex::Complex;

use crate::error::{QdtError, Result};
use crate::scalar::Scalar;
use crate::types::{Choice, PhasePair, TwoChoiceExperiment};

/// How the condition register of a [`JointState`] is populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionRegister {
    /// Prepared agent state `Σ_k |k)|ψ⁽ᵏ⁾⟩ / √m`: each condition carries its
    /// own choice state with equal weight.
    Open,
    /// Post-measurement product `|K)|φ⟩`: every row holds the same choice
    /// state `φ` and the register amplitudes are `kappa`.
    Collapsed,
}

/// Complex amplitudes of an agent over `m` conditions and `n` choices,
/// together with the intermediate-event amplitudes `κ⁽ᵏ⁾`.
///
/// Rows of `psi` are normalized (`Σ_j |ψ⁽ᵏ⁾_j|² = 1`) and `Σ_k |κ⁽ᵏ⁾|² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState<T> {
    m: usize,
    n: usize,
    psi: Vec<Complex<T>>,
    kappa: Vec<Complex<T>>,
    register: ConditionRegister,
}

fn norm_sqr<T: Scalar>(values: &[Complex<T>]) -> T {
    values.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

fn check_unit<T: Scalar>(what: impl FnOnce() -> String, values: &[Complex<T>]) -> Result<()> {
    let deviation = (norm_sqr(values) - T::one()).abs();
    if !(deviation <= T::tolerance()) {
        return Err(QdtError::NotNormalized {
            what: what(),
            deviation: deviation.as_f64(),
        });
    }
    Ok(())
}

impl<T: Scalar> JointState<T> {
    /// Builds a state from explicit rows `ψ⁽ᵏ⁾` and event amplitudes.
    pub fn new(psi: Vec<Vec<Complex<T>>>, kappa: Vec<Complex<T>>) -> Result<Self> {
        let m = psi.len();
        if m == 0 {
            return Err(QdtError::InvalidCount {
                name: "conditions",
                value: 0,
                reason: "must be at least 1",
            });
        }
        let n = psi[0].len();
        if n == 0 {
            return Err(QdtError::InvalidCount {
                name: "choices",
                value: 0,
                reason: "must be at least 1",
            });
        }
        if kappa.len() != m {
            return Err(QdtError::DimensionMismatch(format!(
                "{m} conditions but {} event amplitudes",
                kappa.len()
            )));
        }
        for (k, row) in psi.iter().enumerate() {
            if row.len() != n {
                return Err(QdtError::DimensionMismatch(format!(
                    "row {k} has {} choices, expected {n}",
                    row.len()
                )));
            }
            check_unit(|| format!("choice amplitudes of condition {k}"), row)?;
        }
        check_unit(|| "event amplitudes".to_string(), &kappa)?;
        Ok(Self {
            m,
            n,
            psi: psi.into_iter().flatten().collect(),
            kappa,
            register: ConditionRegister::Open,
        })
    }

    pub fn conditions(&self) -> usize {
        self.m
    }

    pub fn choices(&self) -> usize {
        self.n
    }

    pub fn register(&self) -> ConditionRegister {
        self.register
    }

    /// `ψ⁽ᵏ⁾_j`.
    pub fn psi(&self, condition: usize, choice: usize) -> Complex<T> {
        self.psi[condition * self.n + choice]
    }

    pub fn row(&self, condition: usize) -> &[Complex<T>] {
        &self.psi[condition * self.n..(condition + 1) * self.n]
    }

    pub fn kappa(&self) -> &[Complex<T>] {
        &self.kappa
    }

    /// The intermediate event carried by the state.
    pub fn event(&self) -> IntermediateEvent<T> {
        IntermediateEvent {
            kappa: self.kappa.clone(),
        }
    }

    /// Component of the normalized two-body vector on `|k)|j⟩`.
    pub fn two_body(&self, condition: usize, choice: usize) -> Complex<T> {
        let psi = self.psi(condition, choice);
        match self.register {
            ConditionRegister::Open => psi.unscale(T::from_usize(self.m).unwrap().sqrt()),
            ConditionRegister::Collapsed => self.kappa[condition] * psi,
        }
    }
}

/// An intermediate event `|K) = Σ_k κ⁽ᵏ⁾|k)` on the condition register.
#[derive(Debug, Clone, PartialEq)]
pub struct IntermediateEvent<T> {
    kappa: Vec<Complex<T>>,
}

impl<T: Scalar> IntermediateEvent<T> {
    pub fn new(kappa: Vec<Complex<T>>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(QdtError::InvalidCount {
                name: "conditions",
                value: 0,
                reason: "must be at least 1",
            });
        }
        check_unit(|| "event amplitudes".to_string(), &kappa)?;
        Ok(Self { kappa })
    }

    /// Real non-negative amplitudes `√q⁽ᵏ⁾`.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        for &q in weights {
            crate::types::check_probability("condition weight", q)?;
        }
        Self::new(
            weights
                .iter()
                .map(|&q| Complex::new(q.sqrt(), T::zero()))
                .collect(),
        )
    }

    pub fn kappa(&self) -> &[Complex<T>] {
        &self.kappa
    }

    pub fn conditions(&self) -> usize {
        self.kappa.len()
    }

    /// `q⁽ᵏ⁾ = |κ⁽ᵏ⁾|²`.
    pub fn weights(&self) -> Vec<T> {
        self.kappa.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|K̄) = κ⁽¹⁾*|0) − κ⁽⁰⁾*|1)`, orthogonal to `|K)`. Two conditions only.
    pub fn complement(&self) -> Result<Self> {
        match self.kappa.as_slice() {
            [k0, k1] => Ok(Self {
                kappa: vec![k1.conj(), -k0.conj()],
            }),
            other => Err(QdtError::UnsupportedDimension {
                expected: 2,
                found: other.len(),
            }),
        }
    }

    /// `(self|other) = Σ_k κ_self⁽ᵏ⁾* κ_other⁽ᵏ⁾`.
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        self.kappa
            .iter()
            .zip(&other.kappa)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }
}

/// The four redundant phase angles of a 2x2 state. Only the combinations
/// `χ⁽⁰⁾ − χ⁽¹⁾ − φ⁽⁰⁾_j + φ⁽¹⁾_j = θ_j` are physical; the gauge fixes the
/// rest.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Gauge<T> {
    /// Phase of `κ⁽⁰⁾`.
    pub chi0: T,
    /// Phase of `κ⁽¹⁾`.
    pub chi1: T,
    /// Phase of `ψ⁽⁰⁾_0`.
    pub phi0: T,
    /// Phase of `ψ⁽⁰⁾_1`.
    pub phi1: T,
}

/// Constructs amplitudes `ψ⁽ᵏ⁾_j = √p⁽ᵏ⁾_j e^{iφ⁽ᵏ⁾_j}` and
/// `κ⁽ᵏ⁾ = √q⁽ᵏ⁾ e^{iχ⁽ᵏ⁾}` whose relative phases
/// `arg(κ⁽⁰⁾κ⁽¹⁾* ψ⁽⁰⁾_j* ψ⁽¹⁾_j)` equal `θ_j`.
pub fn build_state<T: Scalar>(
    exp: &TwoChoiceExperiment<T>,
    phases: &PhasePair<T>,
    gauge: &Gauge<T>,
) -> Result<JointState<T>> {
    exp.validate()?;
    let polar = |r: T, phase: T| Complex::from_polar(r.sqrt(), phase);
    let row0_phase = [gauge.phi0, gauge.phi1];
    let mut psi = Vec::with_capacity(2);
    for k in 0..2 {
        let row = Choice::ALL
            .iter()
            .map(|&j| {
                let phase0 = row0_phase[j.index()];
                let phase = if k == 0 {
                    phase0
                } else {
                    phases.theta(j) - gauge.chi0 + gauge.chi1 + phase0
                };
                polar(exp.p(k, j), phase)
            })
            .collect::<Vec<_>>();
        psi.push(row);
    }
    let kappa = vec![polar(exp.q(0), gauge.chi0), polar(exp.q(1), gauge.chi1)];
    JointState::new(psi, kappa)
}

/// `⟨j|(K|Ψ⟩` for every choice `j`.
pub fn partial_amplitudes<T: Scalar>(
    state: &JointState<T>,
    event: &IntermediateEvent<T>,
) -> Result<Vec<Complex<T>>> {
    if event.conditions() != state.conditions() {
        return Err(QdtError::DimensionMismatch(format!(
            "event has {} conditions, state has {}",
            event.conditions(),
            state.conditions()
        )));
    }
    Ok((0..state.choices())
        .map(|j| {
            event
                .kappa()
                .iter()
                .enumerate()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (k, kappa)| {
                    acc + kappa.conj() * state.two_body(k, j)
                })
        })
        .collect())
}

fn nonzero_norm<T: Scalar>(amplitudes: &[Complex<T>]) -> Result<T> {
    let norm = norm_sqr(amplitudes).sqrt();
    if !(norm > T::tolerance()) {
        return Err(QdtError::ZeroNorm {
            norm: norm.as_f64(),
        });
    }
    Ok(norm)
}

/// Lüders projection of the condition register onto `|K)`, renormalized.
///
/// The result is the product `|K)|φ⟩` with `φ_j = ⟨j|(K|Ψ⟩ / ‖(K|Ψ⟩‖`.
pub fn project<T: Scalar>(
    state: &JointState<T>,
    event: &IntermediateEvent<T>,
) -> Result<JointState<T>> {
    let amplitudes = partial_amplitudes(state, event)?;
    let norm = nonzero_norm(&amplitudes)?;
    let phi: Vec<Complex<T>> = amplitudes.iter().map(|a| a.unscale(norm)).collect();
    let m = state.conditions();
    Ok(JointState {
        m,
        n: state.choices(),
        psi: (0..m).flat_map(|_| phi.iter().copied()).collect(),
        kappa: event.kappa().to_vec(),
        register: ConditionRegister::Collapsed,
    })
}

/// `P^K_j = |⟨j|(K|Ψ⟩|² / Σ_j' |⟨j'|(K|Ψ⟩|²` for every choice. Works for any
/// number of conditions and choices.
pub fn conditional_from_amplitudes<T: Scalar>(
    state: &JointState<T>,
    event: &IntermediateEvent<T>,
) -> Result<Vec<T>> {
    let amplitudes = partial_amplitudes(state, event)?;
    let norm = nonzero_norm(&amplitudes)?;
    let total = norm * norm;
    Ok(amplitudes.iter().map(|a| a.norm_sqr() / total).collect())
}

/// Partial norms on `|K)` and `|K̄)` and the deviation of their sum from 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Completeness<T> {
    pub on_event: T,
    pub on_complement: T,
    pub residual: T,
}

/// Checks `|K)(K| + |K̄)(K̄| = 1` on the state: the partial norms on the
/// event and on its complement add up to the norm of the two-body vector.
pub fn completeness_check<T: Scalar>(
    state: &JointState<T>,
    event: &IntermediateEvent<T>,
) -> Result<Completeness<T>> {
    if state.conditions() != 2 {
        return Err(QdtError::UnsupportedDimension {
            expected: 2,
            found: state.conditions(),
        });
    }
    let complement = event.complement()?;
    let on_event = norm_sqr(&partial_amplitudes(state, event)?);
    let on_complement = norm_sqr(&partial_amplitudes(state, &complement)?);
    Ok(Completeness {
        on_event,
        on_complement,
        residual: (on_event + on_complement - T::one()).abs(),
    })
}

/// Number of relative phases introduced by the quantum description of `m`
/// conditions with `n` choices each: `m·n(n−1)/2`.
pub fn phase_parameter_count(m: usize, n: usize) -> Result<usize> {
    if m == 0 {
        return Err(QdtError::InvalidCount {
            name: "conditions",
            value: m,
            reason: "must be at least 1",
        });
    }
    if n == 0 {
        return Err(QdtError::InvalidCount {
            name: "choices",
            value: n,
            reason: "must be at least 1",
        });
    }
    Ok(m * n * (n - 1) / 2)
}
