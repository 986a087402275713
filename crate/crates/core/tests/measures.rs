mod common;

use common::{c, conjugate, random_unitary2};
use entmol::measures::{
    concurrence, entanglement_of_formation, fef_oracle, fully_entangled_fraction, is_ppt, min_pair_concurrence,
    teleport_fidelity, PairMeasures,
};
use entmol::qcore::{outer_product, reduced_pair_from_pure, CMatrix, DensityOperator, PureState};
use entmol::rng::SplitMix64;
use entmol::states::{random_density, random_pure, w_state};
use entmol::Limits;
use proptest::prelude::*;

const L: Limits = Limits::DEFAULT;

/// EoF(2/3) to 50 digits from an arbitrary-precision evaluation.
const EOF_TWO_THIRDS: f64 = 0.550_047_759_582_757_441_181_588_728_716_574_084_816_706_455_738_08;

/// EoF via `1 - sum_k s^(2k) / (2k (2k - 1) ln 2)` with `s = sqrt(1 - c^2)`, which avoids
/// the binary-entropy form entirely.
fn eof_series(conc: f64) -> f64 {
    let s2 = 1.0 - conc * conc;
    let mut term = 1.0;
    let mut sum = 0.0;
    // the tail is bounded by the last term times 1 / (1 - s^2)
    for k in 1..200_000 {
        term *= s2;
        let add = term / ((2 * k) as f64 * (2 * k - 1) as f64);
        sum += add;
        if add / (1.0 - s2) < 1e-17 {
            break;
        }
    }
    1.0 - sum / std::f64::consts::LN_2
}

fn x_state(p: [f64; 4], z: C64, w: C64) -> DensityOperator {
    let mut m = CMatrix::from_diagonal(&p);
    m[(0, 3)] = z;
    m[(3, 0)] = z.conj();
    m[(1, 2)] = w;
    m[(2, 1)] = w.conj();
    DensityOperator::new(2, m).unwrap()
}

use entmol::qcore::C64;

fn werner(p: f64) -> DensityOperator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = PureState::new(2, vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]).unwrap();
    let mixed = DensityOperator::maximally_mixed(2);
    DensityOperator::mixture(&[(p, &outer_product(&singlet, &L).unwrap()), (1.0 - p, &mixed)]).unwrap()
}

fn local(rho: &DensityOperator, rng: &mut SplitMix64) -> DensityOperator {
    let u = random_unitary2(rng).kron(&random_unitary2(rng));
    conjugate(rho, &u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn x_states_match_closed_form(
        raw in prop::array::uniform4(0.01f64..1.0),
        fz in 0.0f64..1.0, fw in 0.0f64..1.0, az in 0.0f64..6.3, aw in 0.0f64..6.3,
    ) {
        let total: f64 = raw.iter().sum();
        let p = raw.map(|x| x / total);
        let z = C64::from_polar(fz * (p[0] * p[3]).sqrt(), az);
        let w = C64::from_polar(fw * (p[1] * p[2]).sqrt(), aw);
        let expect = 2.0 * (w.norm() - (p[0] * p[3]).sqrt()).max(z.norm() - (p[1] * p[2]).sqrt()).max(0.0);
        let got = concurrence(&x_state(p, z, w)).unwrap();
        prop_assert!((got - expect).abs() < 1e-12, "got {} expected {}", got, expect);
    }

    #[test]
    fn pure_two_qubit_concurrence_is_twice_determinant(seed: u64) {
        let psi = random_pure(2, seed, &L).unwrap();
        let a = psi.amplitudes();
        let expect = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        let got = concurrence(&outer_product(&psi, &L).unwrap()).unwrap();
        prop_assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn local_unitaries_leave_measures_invariant(seed: u64) {
        let mut rng = SplitMix64::new(seed);
        let rho = random_density(2, seed, &L).unwrap();
        let moved = local(&rho, &mut rng);
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&moved).unwrap()).abs() < 1e-10);
        prop_assert!((fully_entangled_fraction(&rho).unwrap() - fully_entangled_fraction(&moved).unwrap()).abs() < 1e-10);
        let (_, a) = is_ppt(&rho, 1e-9).unwrap();
        let (_, b) = is_ppt(&moved, 1e-9).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn measures_stay_in_range(seed: u64) {
        let rho = random_density(2, seed, &L).unwrap();
        let m = PairMeasures::compute(&rho, 1e-9).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.concurrence));
        prop_assert!((0.0..=1.0).contains(&m.eof));
        prop_assert!((0.25 - 1e-12..=1.0).contains(&m.fef));
        prop_assert!((m.teleport_fidelity - (2.0 * m.fef + 1.0) / 3.0).abs() < 1e-15);
        prop_assert!(m.eof <= m.concurrence + 1e-12);
    }

    #[test]
    fn eof_is_monotone_and_matches_series(x in 0.05f64..1.0, y in 0.0f64..1.0) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(entanglement_of_formation(lo).unwrap() <= entanglement_of_formation(hi).unwrap());
        prop_assert!((entanglement_of_formation(x).unwrap() - eof_series(x)).abs() < 1e-12);
    }

    #[test]
    fn fef_never_below_search_lower_bound(seed: u64) {
        let rho = random_density(2, seed, &L).unwrap();
        let closed = fully_entangled_fraction(&rho).unwrap();
        let search = fef_oracle(&rho, 4, seed).unwrap();
        prop_assert!(search <= closed + 1e-12);
    }

    #[test]
    fn three_qubit_pure_states_are_monogamous(seed: u64) {
        let psi = random_pure(3, seed, &L).unwrap();
        let c12 = concurrence(&reduced_pair_from_pure(&psi, 1, 2).unwrap()).unwrap();
        let c13 = concurrence(&reduced_pair_from_pure(&psi, 1, 3).unwrap()).unwrap();
        prop_assert!(c12 * c12 + c13 * c13 <= 1.0 + 1e-9);
        prop_assert!(min_pair_concurrence(&psi).unwrap() <= 2.0 / 3.0 + 1e-9);
    }
}

#[test]
fn werner_family_closed_forms() {
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let rho = werner(p);
        let c_expect = ((3.0 * p - 1.0) / 2.0).max(0.0);
        assert!((concurrence(&rho).unwrap() - c_expect).abs() < 1e-12, "p = {p}");
        assert!((fully_entangled_fraction(&rho).unwrap() - (1.0 + 3.0 * p) / 4.0).abs() < 1e-12);
        let (ppt, _) = is_ppt(&rho, 1e-9).unwrap();
        assert_eq!(ppt, p <= 1.0 / 3.0 + 1e-12, "p = {p}");
    }
}

#[test]
fn eof_endpoints_are_exact() {
    assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
    assert_eq!(entanglement_of_formation(1.0).unwrap(), 1.0);
}

#[test]
fn eof_two_thirds_matches_high_precision_value() {
    let e = entanglement_of_formation(2.0 / 3.0).unwrap();
    assert!((e - EOF_TWO_THIRDS).abs() < 1e-12);
    assert!((eof_series(2.0 / 3.0) - EOF_TWO_THIRDS).abs() < 1e-14);
}

#[test]
fn eof_rejects_out_of_domain() {
    assert!(entanglement_of_formation(-0.1).is_err());
    assert!(entanglement_of_formation(1.1).is_err());
    assert!(entanglement_of_formation(f64::NAN).is_err());
}

#[test]
fn teleport_fidelity_rejects_out_of_range() {
    assert!(teleport_fidelity(1.5).is_err());
    assert!((teleport_fidelity(1.0).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn ppt_agrees_with_concurrence_on_many_random_states() {
    let mut entangled = 0;
    for seed in 0..10_000u64 {
        let rho = random_density(2, seed, &L).unwrap();
        let (ppt, _) = is_ppt(&rho, 1e-9).unwrap();
        let conc = concurrence(&rho).unwrap();
        assert_eq!(ppt, conc <= 1e-9, "seed {seed}: C = {conc}");
        entangled += usize::from(!ppt);
    }
    assert!(entangled > 1000 && entangled < 9000, "entangled count {entangled}");
}

#[test]
fn w_state_pairs_have_two_over_n() {
    for n in 3..=8 {
        let psi = w_state(n, &L).unwrap();
        let conc = concurrence(&reduced_pair_from_pure(&psi, 1, n).unwrap()).unwrap();
        assert!((conc - 2.0 / n as f64).abs() < 1e-12);
    }
}
