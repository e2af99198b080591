use proptest::prelude::*;

use spin_entropy::qstate::{expectation_local, hermitian_eigenvalues, ExplicitCoefficients, Mat2};
use spin_entropy::schmidt::DEGENERACY_TOL;
use spin_entropy::{
    analyze, binary_entropy_bits, classify_entanglement, entropy_eigen, entropy_from_magnitude,
    haar_random_state, mean_spin_vector, partial_trace, reconstruct, schmidt_decompose,
    schmidt_probs_from_magnitude, spin_magnitude, spin_operator, validate_constraints, Atom, Axis,
    PureTwoQubitState, RngStream, SingleQubitState, C64,
};

fn amps_strategy() -> impl Strategy<Value = [C64; 4]> {
    prop::array::uniform8(-1.0f64..1.0).prop_filter_map("zero vector", |v| {
        let amps = [
            C64::new(v[0], v[1]),
            C64::new(v[2], v[3]),
            C64::new(v[4], v[5]),
            C64::new(v[6], v[7]),
        ];
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        (n > 1e-6).then_some(amps)
    })
}

fn state_strategy() -> impl Strategy<Value = PureTwoQubitState> {
    amps_strategy().prop_map(|a| PureTwoQubitState::new_renormalized(a).unwrap())
}

fn random_single(rng: &RngStream) -> SingleQubitState {
    // First two amplitudes of a Haar 4-vector, renormalized: Haar on one qubit.
    let s = haar_random_state(rng);
    let a = s.amplitudes();
    SingleQubitState::new_renormalized(a[0], a[1]).unwrap()
}

/// Haar-ish unitary `e^{iφ}[[a, −b*], [b, a*]]`.
fn random_unitary(rng: &RngStream) -> Mat2 {
    let s = random_single(rng);
    let (a, b) = (s.up(), s.down());
    let phase = C64::from_polar(1.0, (rng.seed as f64 * 0.37 + rng.stream as f64).sin() * 3.0);
    [[phase * a, -phase * b.conj()], [phase * b, phase * a.conj()]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn magnitudes_agree_between_atoms(psi in state_strategy()) {
        let r1 = spin_magnitude(&mean_spin_vector(&psi, Atom::One).unwrap());
        let r2 = spin_magnitude(&mean_spin_vector(&psi, Atom::Two).unwrap());
        prop_assert!((r1 - r2).abs() <= 1e-12);
        prop_assert!(r1 <= 0.5 + 1e-12);
    }

    #[test]
    fn reduced_spectrum_is_half_plus_minus_r(psi in state_strategy()) {
        for atom in [Atom::One, Atom::Two] {
            let r = spin_magnitude(&mean_spin_vector(&psi, atom).unwrap());
            let (hi, lo) = partial_trace(&psi, atom).eigenvalues();
            prop_assert!((hi - (0.5 + r)).abs() <= 1e-10);
            prop_assert!((lo - (0.5 - r)).abs() <= 1e-10);
        }
    }

    #[test]
    fn trace_route_matches_direct_expectation(psi in state_strategy()) {
        for atom in [Atom::One, Atom::Two] {
            let j = mean_spin_vector(&psi, atom).unwrap();
            for axis in Axis::ALL {
                let direct = expectation_local(&psi, atom, &spin_operator(axis).matrix);
                prop_assert!(direct.im.abs() <= 1e-13);
                prop_assert!((direct.re - j.component(axis)).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn entropy_routes_agree(psi in state_strategy()) {
        for atom in [Atom::One, Atom::Two] {
            let r = spin_magnitude(&mean_spin_vector(&psi, atom).unwrap());
            let a = entropy_eigen(&partial_trace(&psi, atom));
            let b = entropy_from_magnitude(r).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
            prop_assert!((0.0..=1.0).contains(&a));
        }
        let rep = analyze(&psi).unwrap();
        prop_assert!((rep.s_eigen_atom1 - rep.s_eigen_atom2).abs() <= 1e-10);
    }

    #[test]
    fn schmidt_consistency(psi in state_strategy()) {
        let d = schmidt_decompose(&psi);
        prop_assert!(d.validate().is_ok());
        prop_assert!(d.c1 >= d.c2 && d.c2 >= 0.0);
        prop_assert_eq!(d.degenerate, d.c1 - d.c2 <= DEGENERACY_TOL);
        prop_assert!(reconstruct(&d).unwrap().fidelity(&psi) >= 1.0 - 1e-12);
        let (p1, p2) = d.probabilities();
        for atom in [Atom::One, Atom::Two] {
            let r = spin_magnitude(&mean_spin_vector(&psi, atom).unwrap());
            prop_assert!(((p1 - p2) / 2.0 - r).abs() <= 1e-11);
            let (q1, q2) = schmidt_probs_from_magnitude(r).unwrap();
            prop_assert!((q1 - p1).abs() <= 1e-10 && (q2 - p2).abs() <= 1e-10);
            let (l1, l2) = partial_trace(&psi, atom).eigenvalues();
            prop_assert!((l1 - p1).abs() <= 1e-10 && (l2 - p2).abs() <= 1e-10);
        }
    }

    #[test]
    fn magnitude_entropy_is_binary_entropy_of_half_plus_r(r in 0.0f64..=0.5) {
        prop_assert_eq!(entropy_from_magnitude(r).unwrap(), binary_entropy_bits(0.5 + r).unwrap());
    }

    #[test]
    fn classification_stable_under_small_perturbation(
        r in 0.0f64..0.49,
        eps in 1e-6f64..1e-3,
        t in -1.0f64..1.0,
    ) {
        prop_assume!(r < 0.5 - 2.0 * eps);
        let base = classify_entanglement(r, eps);
        prop_assert_eq!(classify_entanglement((r + t * eps / 2.0).max(0.0), eps), base);
    }
}

#[test]
fn local_unitaries_preserve_magnitude() {
    for i in 0..100u64 {
        let psi = haar_random_state(&RngStream::new(900, i));
        let u = random_unitary(&RngStream::new(901, i));
        for atom in [Atom::One, Atom::Two] {
            let moved = psi.apply_local(atom, &u);
            assert!((moved.norm_sqr() - 1.0).abs() < 1e-14);
            for probe in [Atom::One, Atom::Two] {
                let before = spin_magnitude(&mean_spin_vector(&psi, probe).unwrap());
                let after = spin_magnitude(&mean_spin_vector(&moved, probe).unwrap());
                assert!(
                    (before - after).abs() <= 1e-12,
                    "unitary {i}: {before} vs {after}"
                );
            }
        }
    }
}

#[test]
fn local_unitary_rotates_direction() {
    let psi = PureTwoQubitState::from_real([0.75f64.sqrt(), 0.0, 0.0, 0.5]).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = [
        [C64::new(h, 0.0), C64::new(h, 0.0)],
        [C64::new(h, 0.0), C64::new(-h, 0.0)],
    ];
    let j = mean_spin_vector(&psi.apply_local(Atom::One, &hadamard), Atom::One).unwrap();
    assert!((j.jx - 0.25).abs() < 1e-15 && j.jz.abs() < 1e-15);
}

/// Expectation values written out in the explicit coefficients, valid for
/// states built from orthonormal local bases.
fn symbolic_mean_spin(co: &ExplicitCoefficients) -> [f64; 3] {
    let (w1, w2) = (co.c1 * co.c1, co.c2 * co.c2);
    let [c3, c4] = co.u1;
    let [c7, c8] = co.u2;
    let jx = 0.5 * (w1 * (c3 * c4.conj() + c3.conj() * c4) + w2 * (c7 * c8.conj() + c7.conj() * c8));
    let jy = (w1 * (c3.conj() * c4 - c3 * c4.conj()) + w2 * (c7.conj() * c8 - c7 * c8.conj()))
        / C64::new(0.0, 2.0);
    let jz = 0.5 * (w1 * (c3.norm_sqr() - c4.norm_sqr()) + w2 * (c7.norm_sqr() - c8.norm_sqr()));
    assert!(jx.im.abs() < 1e-15 && jy.im.abs() < 1e-15);
    [jx.re, jy.re, jz]
}

fn random_coefficients(i: u64) -> ExplicitCoefficients {
    let u1 = random_single(&RngStream::new(77, 4 * i));
    let v1 = random_single(&RngStream::new(77, 4 * i + 1));
    let ph = |k: u64| C64::from_polar(1.0, k as f64 * 0.731);
    let u2 = u1.orthogonal().components().map(|z| z * ph(i));
    let v2 = v1.orthogonal().components().map(|z| z * ph(i + 5));
    let theta = (i as f64 * 0.0137) % std::f64::consts::FRAC_PI_2;
    ExplicitCoefficients {
        c1: theta.cos(),
        c2: theta.sin(),
        u1: u1.components(),
        v1: v1.components(),
        u2,
        v2,
    }
}

#[test]
fn explicit_form_expectations_match_reduced_state_route() {
    for i in 0..200 {
        let co = random_coefficients(i);
        assert!(
            validate_constraints(&co).all_passed(),
            "{:?}",
            validate_constraints(&co)
        );
        let psi = PureTwoQubitState::new(co.raw_amplitudes()).unwrap();
        let j = mean_spin_vector(&psi, Atom::One).unwrap();
        let sym = symbolic_mean_spin(&co);
        for (k, (got, want)) in j.as_array().iter().zip(sym).enumerate() {
            assert!((got - want).abs() <= 1e-13, "state {i} axis {k}");
        }
        // Simplified z-component and the magnitude closed form.
        let (w1, w2) = (co.c1 * co.c1, co.c2 * co.c2);
        let jz_simplified = 0.5 * (w1 - w2) * (co.u1[0].norm_sqr() - co.u1[1].norm_sqr());
        assert!((j.jz - jz_simplified).abs() <= 1e-13);
        assert!((j.magnitude() - (w1 - w2).abs() / 2.0).abs() <= 1e-12);
        let j2 = mean_spin_vector(&psi, Atom::Two).unwrap();
        assert!((j2.magnitude() - (w1 - w2).abs() / 2.0).abs() <= 1e-12);
    }
}

#[test]
fn entropy_curve_strictly_decreasing() {
    let n = 10_000;
    let mut prev = f64::INFINITY;
    for k in 0..=n {
        let r = 0.5 * k as f64 / n as f64;
        let s = entropy_from_magnitude(r).unwrap();
        assert!(s < prev, "not decreasing at r = {r}");
        prev = s;
    }
}

#[test]
fn entropy_symmetric_in_atom_choice() {
    for i in 0..1000 {
        let psi = haar_random_state(&RngStream::new(31, i));
        let r1 = spin_magnitude(&mean_spin_vector(&psi, Atom::One).unwrap());
        let r2 = spin_magnitude(&mean_spin_vector(&psi, Atom::Two).unwrap());
        let d = (entropy_from_magnitude(r1).unwrap() - entropy_from_magnitude(r2).unwrap()).abs();
        assert!(d <= 1e-11);
    }
}

#[test]
fn mixed_marginal_eigenvalues_clamped() {
    // A reduced state with a −1e-13 eigenvalue still yields a finite entropy.
    let m = [
        [C64::new(1.0 + 1e-13, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(-1e-13, 0.0)],
    ];
    let rho = spin_entropy::DensityMatrix1Q::new(m).unwrap();
    assert_eq!(hermitian_eigenvalues(&m).0, 1.0 + 1e-13);
    assert_eq!(entropy_eigen(&rho), 0.0);
}
