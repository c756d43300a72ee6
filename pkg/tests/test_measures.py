import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelevy import catalog_get
from freelevy.errors import ConfigError
from freelevy.measures import (
    CharTriplet,
    DensityPiece,
    GeneratingPair,
    LevyMeasure,
    SigmaMeasure,
    dilate_triplet,
    eval_classical_cumulant,
    log_moment_check,
    pair_from_triplet,
    phi_from_pair,
    triplet_from_pair,
)
from freelevy.transforms import DistributionSpec, voiculescu


def as_rows(atoms):
    return np.array(atoms, dtype=float).reshape(-1, 2)


def atoms_triplet(atoms, a=0.0, eta=0.0):
    return CharTriplet(a, LevyMeasure(atoms=tuple(atoms)), eta)


@pytest.mark.parametrize(
    "triplet, gamma, zero_mass, sigma_atoms",
    [
        (CharTriplet(1.0, LevyMeasure(), 0.0), 0.0, 1.0, ()),
        (atoms_triplet([(1.0, 1.0)]), -0.5, 0.0, ((1.0, 0.5),)),
        # outside [-1, 1] only the 1/(1+x²) part of the correction survives
        (atoms_triplet([(2.0, 1.0)]), 0.4, 0.0, ((2.0, 0.8),)),
    ],
)
def test_pair_from_triplet_examples(triplet, gamma, zero_mass, sigma_atoms):
    pair = pair_from_triplet(triplet)
    assert pair.gamma == pytest.approx(gamma, abs=1e-14)
    assert pair.sigma.zero_mass == zero_mass
    np.testing.assert_allclose(as_rows(pair.sigma.atoms), as_rows(sigma_atoms), atol=1e-14)


@pytest.mark.parametrize(
    "pair, a, atoms, eta",
    [
        (GeneratingPair(0.0, SigmaMeasure.from_atoms(1.0, ())), 1.0, (), 0.0),
        (GeneratingPair(-0.5, SigmaMeasure.from_atoms(0.0, [(1.0, 0.5)])), 0.0, ((1.0, 1.0),), 0.0),
        (GeneratingPair(2.5, SigmaMeasure.from_atoms(0.0, ())), 0.0, (), 2.5),
    ],
)
def test_triplet_from_pair_examples(pair, a, atoms, eta):
    t = triplet_from_pair(pair)
    assert t.a == a
    assert t.eta == pytest.approx(eta, abs=1e-14)
    np.testing.assert_allclose(as_rows(t.nu.atoms), as_rows(atoms), atol=1e-14)


def _phi_from_triplet(t, u):
    return voiculescu(DistributionSpec.from_triplet(t), u)


@pytest.mark.parametrize("x", [2.0, 0.5, -3.0, 1.0, -1.0])
def test_both_representations_give_the_same_voiculescu_transform(x):
    t = atoms_triplet([(x, 1.3)], a=0.2, eta=-0.7)
    u = np.array([0.3 + 1j, -2 + 0.5j, 4j])
    np.testing.assert_allclose(phi_from_pair(pair_from_triplet(t), u), _phi_from_triplet(t, u), atol=1e-12)


def test_pair_round_trip_with_density_measure():
    t = catalog_get("free_gamma", t=1, c=1).spec.triplet
    back = triplet_from_pair(pair_from_triplet(t))
    assert back.eta == pytest.approx(t.eta, abs=1e-9)
    u = np.array([1 + 1j, -0.5 + 2j])
    np.testing.assert_allclose(phi_from_pair(pair_from_triplet(t), u), _phi_from_triplet(t, u), atol=1e-9)


@given(
    st.lists(st.tuples(st.floats(-5, 5).filter(lambda x: abs(x) > 1e-3), st.floats(0.01, 3)), min_size=1, max_size=4),
    st.floats(0, 2),
    st.floats(-3, 3),
)
def test_round_trip_is_identity_for_atomic_triplets(atoms, a, eta):
    t = atoms_triplet(atoms, a=a, eta=eta)
    back = triplet_from_pair(pair_from_triplet(t))
    assert back.a == pytest.approx(t.a)
    assert back.eta == pytest.approx(t.eta, abs=1e-9)
    np.testing.assert_allclose(back.nu.atoms, t.nu.atoms, rtol=1e-12)


def test_log_moment_compact_support_is_finite():
    nu = catalog_get("free_gamma", t=1, c=1).spec.triplet.nu
    assert log_moment_check(nu).finite


def test_log_moment_inverse_square_tail_is_finite():
    nu = LevyMeasure((DensityPiece.named("power", lo=1.0, hi=np.inf, power=-2.0),))
    verdict = log_moment_check(nu)
    assert verdict.finite
    # ∫₁^∞ log(1+x)/x² dx = 2 log 2
    assert verdict.value == pytest.approx(2 * np.log(2), rel=1e-8)


def test_log_moment_slow_tail_is_infinite_but_valid_levy_measure():
    slow = DensityPiece.from_callable("slow", np.e, np.inf, lambda x, dlo, dhi: 1 / (x * np.log(x) ** 2))
    nu = LevyMeasure((slow,))
    assert nu.x2_mass == pytest.approx(1.0, rel=1e-4)
    verdict = log_moment_check(nu)
    assert not verdict.finite
    assert not verdict.low_confidence


@pytest.mark.parametrize(
    "triplet, theta, want",
    [
        (CharTriplet(1.0, LevyMeasure(), 0.0), 1.0, -0.5),
        (CharTriplet(0.0, LevyMeasure(), 2.0), 0.7, 1.4j),
        (atoms_triplet([(1.0, 1.0)], eta=1.0), np.pi, -2.0),
    ],
)
def test_classical_cumulant_examples(triplet, theta, want):
    assert eval_classical_cumulant(triplet, theta)[0] == pytest.approx(want, abs=1e-14)


@pytest.mark.parametrize(
    "bad",
    [
        lambda: LevyMeasure(atoms=((0.0, 1.0),)),
        lambda: LevyMeasure(atoms=((1.0, -1.0),)),
        lambda: LevyMeasure((DensityPiece.named("power", lo=0.0, hi=1.0, power=-3.0),)),
        lambda: CharTriplet(-1.0, LevyMeasure(), 0.0),
        lambda: DensityPiece.named("no_such_density"),
    ],
)
def test_invalid_measures_are_rejected(bad):
    with pytest.raises(ConfigError):
        bad()


def test_json_round_trip():
    t = catalog_get("mu_pp", p=1.5).spec.triplet
    again = CharTriplet.from_json(t.to_json())
    assert again == t


@pytest.mark.parametrize("c", [2.0, 0.5, -1.5, -0.25])
def test_dilation_of_atomic_triplet_matches_dilated_cumulant(c):
    t = atoms_triplet([(1.0, 1.0), (-0.7, 0.4)], a=0.3, eta=0.2)
    got = eval_classical_cumulant(dilate_triplet(t, c), np.array([0.4, -1.1]))
    want = eval_classical_cumulant(t, c * np.array([0.4, -1.1]))
    np.testing.assert_allclose(got, want, atol=1e-12)
