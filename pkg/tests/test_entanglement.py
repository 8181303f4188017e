import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import bell_state, random_product_state, random_pure
from ghzdyn.channels import Channel, closed_form_state, ghz_ket, ghz_state
from ghzdyn.entanglement import (
    TAU_SCALE,
    analytic_tau,
    cut_terms,
    ppt_min_eigenvalue,
    pure_concurrence,
    so_generators,
    tau_generator_bound,
    tau_lower_bound,
    tau_vanishing_time,
)
from ghzdyn.linalg import permute_qubits

seeds = st.integers(min_value=0, max_value=2**32 - 1)

ROOT_XY = -math.log(math.sqrt(12.0) - 3.0) / 4.0
ROOT_ISO = -math.log((2.0 * math.sqrt(2.0) - 1.0) / 3.0) / 8.0


def test_so_generator_counts_and_structure():
    for dim, count in ((4, 6), (8, 28), (16, 120)):
        gens = so_generators(dim)
        assert len(gens) == count
        pairs = [g.pair for g in gens]
        assert pairs == sorted(pairs)
        for g in gens:
            assert np.array_equal(g.matrix, -g.matrix.T)
            assert g.matrix[g.pair] == 1.0
    with pytest.raises(ValueError):
        so_generators(1)


def test_pure_concurrence_reference_states():
    assert pure_concurrence(ghz_ket(4)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert pure_concurrence(ghz_ket(3)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    zero = np.zeros(16, dtype=complex)
    zero[0] = 1.0
    assert pure_concurrence(zero) == pytest.approx(0.0, abs=1e-12)
    w = np.zeros(16, dtype=complex)
    w[[1, 2, 4, 8]] = 0.5
    assert pure_concurrence(w) == pytest.approx(math.sqrt(3.0 / 8.0), abs=1e-12)
    with pytest.raises(ValueError, match="norm"):
        pure_concurrence(2.0 * zero)


@given(seeds)
def test_pure_concurrence_vanishes_on_product_states(seed):
    rng = np.random.default_rng(seed)
    psi = random_product_state(4, rng)
    assert pure_concurrence(psi) < 1e-6


def test_cut_terms_ghz_is_rank_one():
    for cut in range(4):
        terms = cut_terms(ghz_state(4), cut)
        assert terms.cut == cut
        assert len(terms.terms) == 28
        positive = [t for t in terms.terms if t.value > 1e-10]
        assert len(positive) == 1
        assert positive[0].pair == (0, 7)
        assert positive[0].lambdas[0] == pytest.approx(1.0, abs=1e-10)
        assert terms.aggregate == pytest.approx(1.0, abs=1e-10)
        for term in terms.terms:
            lam = term.lambdas
            assert lam[0] >= lam[1] >= lam[2] >= lam[3] >= 0.0


def test_cut_terms_vanish_on_product_state():
    zero = np.zeros((16, 16), dtype=complex)
    zero[0, 0] = 1.0
    for cut in range(4):
        assert cut_terms(zero, cut).aggregate < 1e-10


def test_cut_terms_validation():
    with pytest.raises(ValueError, match="at least 3"):
        cut_terms(bell_state(), 0)
    with pytest.raises(ValueError, match="out of range"):
        cut_terms(ghz_state(3), 3)


def test_tau_lower_bound_ghz_calibration():
    result = tau_lower_bound(ghz_state(4))
    assert result.value == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert result.convention_scale == TAU_SCALE
    assert len(result.per_cut) == 4
    assert len(set(result.per_cut)) == 1
    rms = math.sqrt(sum(c**2 for c in result.per_cut) / 4)
    assert result.value == pytest.approx(TAU_SCALE * rms, abs=1e-12)


def test_tau_lower_bound_matches_closed_forms():
    for channel in Channel:
        for kt in np.linspace(0.0, 0.5, 20):
            bound = tau_lower_bound(closed_form_state(channel, kt)).value
            assert abs(bound - analytic_tau(channel, kt)) < 1e-8


def test_tau_x_equals_tau_y():
    for kt in np.linspace(0.0, 0.5, 20):
        bx = tau_lower_bound(closed_form_state(Channel.X, kt)).value
        by = tau_lower_bound(closed_form_state(Channel.Y, kt)).value
        assert abs(bx - by) < 1e-10


def test_tau_is_permutation_invariant(rng):
    rho = closed_form_state(Channel.X, 0.07)
    perm = list(rng.permutation(4))
    assert tau_lower_bound(permute_qubits(rho, perm)).value == pytest.approx(
        tau_lower_bound(rho).value, abs=1e-10
    )


def test_tau_vanishes_on_unentangled_states():
    assert tau_lower_bound(np.eye(16, dtype=complex) / 16).value == 0.0
    zero = np.zeros((16, 16), dtype=complex)
    zero[0, 0] = 1.0
    assert tau_lower_bound(zero).value == 0.0


def test_analytic_tau_never_increases():
    grid = np.linspace(0.0, 1.0, 41)
    for channel in Channel:
        values = [analytic_tau(channel, kt) for kt in grid]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


def test_generator_bound_reference_values():
    assert tau_generator_bound(ghz_state(4)).value == pytest.approx(math.sqrt(2.0), abs=1e-9)
    # On GHZ-coherence states the generator route collapses to the flip value.
    for kt in (0.05, 0.2, 0.6):
        rho = closed_form_state(Channel.Z, kt)
        assert tau_generator_bound(rho).value == pytest.approx(
            tau_lower_bound(rho).value, abs=1e-10
        )
    # On the X channel it is strictly tighter.
    rho = closed_form_state(Channel.X, 0.02)
    assert tau_generator_bound(rho).value - tau_lower_bound(rho).value > 0.08


def test_generator_bound_sees_w_state_where_flip_does_not():
    w = np.zeros(16, dtype=complex)
    w[[1, 2, 4, 8]] = 0.5
    rho = np.outer(w, w.conj())
    assert tau_lower_bound(rho).value == pytest.approx(0.0, abs=1e-10)
    assert tau_generator_bound(rho).value == pytest.approx(
        2.0 * math.sqrt(3.0 / 8.0), abs=1e-6
    )


@given(seeds)
def test_bounds_respect_pure_state_cap(seed):
    rng = np.random.default_rng(seed)
    psi = random_pure(4, rng)
    rho = np.outer(psi, psi.conj())
    cap = 2.0 * pure_concurrence(psi)
    assert tau_lower_bound(rho).value <= cap + 1e-9
    # The generator route saturates the cap on pure states.
    assert tau_generator_bound(rho).value == pytest.approx(cap, abs=1e-6)


def test_analytic_tau_reference_values():
    assert analytic_tau(Channel.X, 0.0) == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert analytic_tau(Channel.Z, 0.25) == pytest.approx(
        math.sqrt(2.0) * math.exp(-2.0), abs=1e-15
    )
    assert analytic_tau(Channel.ISO, 0.03) == pytest.approx(0.581386323141, abs=1e-11)
    assert analytic_tau(Channel.X, ROOT_XY + 0.01) == 0.0
    assert analytic_tau(Channel.ISO, ROOT_ISO + 0.01) == 0.0


def test_tau_vanishing_times():
    assert tau_vanishing_time(Channel.X) == pytest.approx(ROOT_XY, abs=1e-9)
    assert tau_vanishing_time(Channel.Y) == pytest.approx(ROOT_XY, abs=1e-9)
    assert tau_vanishing_time(Channel.ISO) == pytest.approx(ROOT_ISO, abs=1e-9)
    assert abs(tau_vanishing_time(Channel.ISO) - 0.0619) < 1e-4
    assert tau_vanishing_time(Channel.Z) is None


def test_ppt_reference_values():
    assert ppt_min_eigenvalue(bell_state(), (0,)) == pytest.approx(-0.5, abs=1e-12)
    frozen = {0.25: -0.15487170, 0.5: -0.05304019, 1.0: -0.00691030}
    for kt, expected in frozen.items():
        got = ppt_min_eigenvalue(closed_form_state(Channel.X, kt), (0,))
        assert got == pytest.approx(expected, abs=1e-7)
        assert got < -1e-6
    for kt in (0.05, 0.2, 0.4):
        got = ppt_min_eigenvalue(closed_form_state(Channel.Z, kt), (0,))
        assert got == pytest.approx(-0.5 * math.exp(-8.0 * kt), abs=1e-12)


def test_ppt_subset_and_complement_agree():
    rho = closed_form_state(Channel.X, 0.3)
    assert ppt_min_eigenvalue(rho, (0,)) == pytest.approx(
        ppt_min_eigenvalue(rho, (1, 2, 3)), abs=1e-12
    )


@given(seeds)
def test_ppt_nonnegative_on_product_mixtures(seed):
    rng = np.random.default_rng(seed)
    rho = np.zeros((16, 16), dtype=complex)
    weights = rng.dirichlet(np.ones(3))
    for w in weights:
        psi = random_product_state(4, rng)
        rho += w * np.outer(psi, psi.conj())
    assert ppt_min_eigenvalue(rho, (0,)) > -1e-10
    assert tau_lower_bound(rho).value < 1e-6
