use num_complex::Complex;

use super::state::{IntermediateEvent, JointState};
use crate::error::{QdtError, Result};
use crate::scalar::Scalar;

/// Hermiticity tolerance, kept separate from the probability tolerance.
fn hermitian_tolerance<T: Scalar>() -> T {
    T::tolerance() * T::lit(1e-2)
}

/// Density matrix over the condition register: Hermitian, unit trace,
/// positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionDensity<T> {
    m: usize,
    rho: Vec<Complex<T>>,
}

impl<T: Scalar> ConditionDensity<T> {
    /// Validates and wraps a row-major `m x m` matrix.
    pub fn new(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(QdtError::InvalidDensity("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(QdtError::InvalidDensity(format!("matrix is not {m}x{m}")));
        }
        let density = Self {
            m,
            rho: rows.into_iter().flatten().collect(),
        };
        density.validate()?;
        Ok(density)
    }

    /// `|K)(K|`.
    pub fn pure(event: &IntermediateEvent<T>) -> Self {
        let kappa = event.kappa();
        let m = kappa.len();
        let rho = (0..m)
            .flat_map(|r| (0..m).map(move |c| kappa[r] * kappa[c].conj()))
            .collect();
        Self { m, rho }
    }

    /// Incoherent mixture with the given condition weights.
    pub fn diagonal(weights: &[T]) -> Result<Self> {
        let m = weights.len();
        let mut rows = vec![vec![Complex::new(T::zero(), T::zero()); m]; m];
        for (k, &w) in weights.iter().enumerate() {
            rows[k][k] = Complex::new(w, T::zero());
        }
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.rho[row * self.m + col]
    }

    /// Copy with every off-diagonal element zeroed.
    pub fn dephased(&self) -> Self {
        let m = self.m;
        let rho = (0..m * m)
            .map(|i| {
                if i / m == i % m {
                    self.rho[i]
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect();
        Self { m, rho }
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        let herm_tol = hermitian_tolerance::<T>();
        for r in 0..m {
            for c in r..m {
                let gap = (self.get(r, c) - self.get(c, r).conj()).norm();
                if !(gap <= herm_tol) {
                    return Err(QdtError::InvalidDensity(format!(
                        "not Hermitian at ({r}, {c}): deviation {:e}",
                        gap.as_f64()
                    )));
                }
            }
        }
        let trace = (0..m).fold(T::zero(), |acc, k| acc + self.get(k, k).re);
        if !((trace - T::one()).abs() <= T::tolerance()) {
            return Err(QdtError::InvalidDensity(format!(
                "trace {} is not 1",
                trace.as_f64()
            )));
        }
        if !self.shifted_cholesky_succeeds(T::tolerance()) {
            return Err(QdtError::InvalidDensity(format!(
                "eigenvalue below -{:e}",
                T::tolerance().as_f64()
            )));
        }
        Ok(())
    }

    /// `rho + shift·I` is positive definite exactly when the smallest
    /// eigenvalue of `rho` exceeds `-shift`.
    fn shifted_cholesky_succeeds(&self, shift: T) -> bool {
        let m = self.m;
        let zero = Complex::new(T::zero(), T::zero());
        let mut l = vec![zero; m * m];
        for i in 0..m {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                if i == j {
                    sum = sum + Complex::new(shift, T::zero());
                }
                for k in 0..j {
                    sum = sum - l[i * m + k] * l[j * m + k].conj();
                }
                if i == j {
                    if !(sum.re > T::zero()) {
                        return false;
                    }
                    l[i * m + i] = Complex::new(sum.re.sqrt(), T::zero());
                } else {
                    l[i * m + j] = sum.unscale(l[j * m + j].re);
                }
            }
        }
        true
    }
}

/// Choice probabilities from the two-body state measured against a density
/// matrix on the condition register.
///
/// The weight of choice `j` is `Σ_{k,k'} A*_{k'j} ρ_{k'k} A_{kj}` with `A` the
/// two-body amplitudes; a pure `ρ = |K)(K|` reproduces
/// [`conditional_from_amplitudes`](super::conditional_from_amplitudes). With
/// `dephase` set the off-diagonal coherences are dropped first, which removes
/// every interference term and leaves the classical mixture.
pub fn conditional_from_density<T: Scalar>(
    state: &JointState<T>,
    rho: &ConditionDensity<T>,
    dephase: bool,
) -> Result<Vec<T>> {
    let m = state.conditions();
    if rho.dim() != m {
        return Err(QdtError::DimensionMismatch(format!(
            "density is {}x{}, state has {m} conditions",
            rho.dim(),
            rho.dim()
        )));
    }
    let dephased;
    let rho = if dephase {
        dephased = rho.dephased();
        &dephased
    } else {
        rho
    };
    let weights: Vec<T> = (0..state.choices())
        .map(|j| {
            let mut acc = T::zero();
            for r in 0..m {
                let ar = state.two_body(r, j).conj();
                for c in 0..m {
                    acc = acc + (ar * rho.get(r, c) * state.two_body(c, j)).re;
                }
            }
            acc
        })
        .collect();
    let total = weights.iter().fold(T::zero(), |a, &w| a + w);
    if !(total > T::tolerance()) {
        return Err(QdtError::ZeroNorm {
            norm: total.max(T::zero()).sqrt().as_f64(),
        });
    }
    Ok(weights
        .into_iter()
        .map(|w| (w / total).max(T::zero()))
        .collect())
}
