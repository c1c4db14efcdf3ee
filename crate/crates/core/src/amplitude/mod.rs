//! Hilbert-space route to the conditional probabilities.
//!
//! Everything here works on explicit complex amplitudes and is kept
//! independent of the closed forms in [`crate::decision`], so the two can be
//! checked against each other. States generalize to `m` conditions and `n`
//! choices.

mod density;
mod state;

pub use density::{conditional_from_density, ConditionDensity};
pub use state::{
    build_state, completeness_check, conditional_from_amplitudes, partial_amplitudes,
    phase_parameter_count, project, Completeness, ConditionRegister, Gauge, IntermediateEvent,
    JointState,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::QdtError;
    use crate::types::{PhasePair, TwoChoiceExperiment};
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn shafir() -> TwoChoiceExperiment<f64> {
        TwoChoiceExperiment::new("shafir", 0.97, 0.84, 0.5).unwrap()
    }

    #[test]
    fn uniform_state_with_zero_gauge_is_real() {
        let exp = TwoChoiceExperiment::new("u", 0.5, 0.5, 0.5).unwrap();
        let s = build_state(&exp, &PhasePair::new(0.0, 0.0), &Gauge::default()).unwrap();
        for k in 0..2 {
            for j in 0..2 {
                let z = s.psi(k, j);
                assert!((z.re - FRAC_1_SQRT_2).abs() < 1e-15 && z.im.abs() < 1e-15);
            }
            assert!((s.kappa()[k].re - FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn right_angle_phases_give_classical_value() {
        let s = build_state(
            &shafir(),
            &PhasePair::new(FRAC_PI_2, FRAC_PI_2),
            &Gauge::default(),
        )
        .unwrap();
        let p = conditional_from_amplitudes(&s, &s.event()).unwrap();
        assert!((p[0] - 0.905).abs() < 1e-12);
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relative_phase_matches_definition() {
        let gauge = Gauge {
            chi0: 0.3,
            chi1: -1.1,
            phi0: 2.0,
            phi1: 0.4,
        };
        let phases = PhasePair::new(0.7, 2.9);
        let s = build_state(&shafir(), &phases, &gauge).unwrap();
        let k = s.kappa();
        for j in 0..2 {
            let z = k[0] * k[1].conj() * s.psi(0, j).conj() * s.psi(1, j);
            let expected = [0.7, 2.9][j];
            assert!((z.arg() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_onto_pure_condition_keeps_row() {
        let s = build_state(
            &shafir(),
            &PhasePair::new(0.4, 1.3),
            &Gauge {
                phi0: 0.2,
                ..Gauge::default()
            },
        )
        .unwrap();
        let event =
            IntermediateEvent::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
                .unwrap();
        let post = project(&s, &event).unwrap();
        assert_eq!(post.register(), ConditionRegister::Collapsed);
        // Up to a global phase, the collapsed choice state is ψ⁽⁰⁾.
        let overlap: Complex64 = (0..2).map(|j| s.psi(0, j).conj() * post.psi(0, j)).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn projection_onto_complement_of_collapsed_state_fails() {
        let s = build_state(&shafir(), &PhasePair::new(0.4, 1.3), &Gauge::default()).unwrap();
        let event = s.event();
        let post = project(&s, &event).unwrap();
        let err = project(&post, &event.complement().unwrap()).unwrap_err();
        assert!(matches!(err, QdtError::ZeroNorm { .. }));
    }

    #[test]
    fn projection_is_idempotent() {
        let s = build_state(
            &shafir(),
            &PhasePair::new(2.2, 0.9),
            &Gauge {
                chi1: 0.7,
                ..Gauge::default()
            },
        )
        .unwrap();
        let event = s.event();
        let once = project(&s, &event).unwrap();
        let twice = project(&once, &event).unwrap();
        for k in 0..2 {
            for j in 0..2 {
                assert!((once.psi(k, j) - twice.psi(k, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn uniform_state_gives_uniform_probabilities() {
        let (m, n) = (3, 4);
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let b = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
        let s = JointState::new(vec![vec![a; n]; m], vec![b; m]).unwrap();
        let p = conditional_from_amplitudes(&s, &s.event()).unwrap();
        for v in p {
            assert!((v - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn completeness_with_pure_event_splits_branches() {
        let s = build_state(&shafir(), &PhasePair::new(0.4, 1.3), &Gauge::default()).unwrap();
        let first = IntermediateEvent::from_weights(&[1.0, 0.0]).unwrap();
        let c = completeness_check(&s, &first).unwrap();
        assert!(c.residual < 1e-12);
        // Prepared state: both conditions carry half the norm.
        assert!((c.on_event - 0.5).abs() < 1e-15);
        // Collapsed onto condition 0: all weight on the event, none on its complement.
        let post = project(&s, &first).unwrap();
        let c = completeness_check(&post, &first).unwrap();
        assert_eq!((c.on_event, c.on_complement), (1.0, 0.0));
    }

    #[test]
    fn completeness_requires_two_conditions() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let s = JointState::new(vec![vec![a]; 3], vec![b; 3]).unwrap();
        assert!(matches!(
            completeness_check(&s, &s.event()),
            Err(QdtError::UnsupportedDimension {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn density_paths() {
        let s = build_state(&shafir(), &PhasePair::new(0.4, 1.3), &Gauge::default()).unwrap();
        let pure = ConditionDensity::pure(&s.event());
        let a = conditional_from_amplitudes(&s, &s.event()).unwrap();
        let d = conditional_from_density(&s, &pure, false).unwrap();
        for j in 0..2 {
            assert!((a[j] - d[j]).abs() < 1e-12);
        }
        let mixed = ConditionDensity::diagonal(&[0.5, 0.5]).unwrap();
        let d = conditional_from_density(&s, &mixed, true).unwrap();
        assert!((d[0] - 0.905).abs() < 1e-14 && (d[1] - 0.095).abs() < 1e-14);
        let known = ConditionDensity::diagonal(&[1.0, 0.0]).unwrap();
        let d = conditional_from_density(&s, &known, false).unwrap();
        assert!((d[0] - 0.97).abs() < 1e-14 && (d[1] - 0.03).abs() < 1e-14);
    }

    #[test]
    fn density_validation() {
        let z = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        assert!(
            ConditionDensity::new(vec![vec![re(0.5), re(0.1)], vec![re(0.2), re(0.5)]]).is_err()
        );
        assert!(ConditionDensity::new(vec![vec![re(0.6), z], vec![z, re(0.5)]]).is_err());
        // Unit trace, Hermitian, eigenvalues 1.5 and -0.5.
        assert!(
            ConditionDensity::new(vec![vec![re(0.5), re(1.0)], vec![re(1.0), re(0.5)]]).is_err()
        );
        assert!(
            ConditionDensity::new(vec![vec![re(0.5), re(0.5)], vec![re(0.5), re(0.5)]]).is_ok()
        );
    }

    #[test]
    fn parameter_counts() {
        assert_eq!(phase_parameter_count(2, 2).unwrap(), 2);
        assert_eq!(phase_parameter_count(5, 1).unwrap(), 0);
        assert_eq!(phase_parameter_count(3, 3).unwrap(), 9);
        assert!(phase_parameter_count(0, 2).is_err());
        assert!(phase_parameter_count(2, 0).is_err());
    }

    #[test]
    fn rejects_unnormalized_rows() {
        let a = Complex64::new(0.9, 0.0);
        let b = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(matches!(
            JointState::new(vec![vec![a, a], vec![b, b]], vec![b, b]),
            Err(QdtError::NotNormalized { .. })
        ));
    }
}
