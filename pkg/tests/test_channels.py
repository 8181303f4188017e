import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_density
from ghzdyn.channels import (
    Channel,
    closed_form_spectrum,
    closed_form_state,
    coefficients,
    evolve_numeric,
    ghz_ket,
    ghz_state,
    lindblad_generator,
)
from ghzdyn.linalg import assert_density_matrix, partial_trace, trace_distance

times = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

WEIGHT = [bin(i).count("1") for i in range(16)]


def test_ghz_ket_and_state_structure():
    psi = ghz_ket(4)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-15
    assert psi[0] == psi[15] == pytest.approx(1 / math.sqrt(2))
    rho = ghz_state(4)
    nonzero = np.argwhere(np.abs(rho) > 1e-15)
    assert {tuple(ij) for ij in nonzero} == {(0, 0), (0, 15), (15, 0), (15, 15)}
    assert np.allclose(rho @ rho, rho, atol=1e-14)
    assert assert_density_matrix(rho) == 4


def test_ghz_register_size_limits():
    with pytest.raises(ValueError):
        ghz_ket(1)
    with pytest.raises(ValueError):
        ghz_ket(11)


def test_coefficients_at_time_zero():
    for channel in Channel:
        co = coefficients(channel, 0.0)
        assert co.alpha == pytest.approx(0.5, abs=1e-15)
        assert co.corner == pytest.approx(0.5, abs=1e-15)
        assert co.beta == pytest.approx(0.0, abs=1e-15)
        assert co.gamma == pytest.approx(0.0, abs=1e-15)


@given(times)
def test_coefficients_trace_identity_and_bounds(kt):
    for channel in Channel:
        co = coefficients(channel, kt)
        assert abs(2 * co.alpha + 8 * co.beta + 6 * co.gamma - 1.0) < 1e-12
        assert co.corner <= co.alpha + 1e-15
        for value in (co.alpha, co.beta, co.gamma, co.corner):
            assert -1e-15 <= value <= 0.5 + 1e-15


def test_coefficients_rejects_negative_time():
    for channel in Channel:
        with pytest.raises(ValueError, match="nonnegative"):
            coefficients(channel, -0.1)


def test_closed_form_starts_at_ghz():
    for channel in Channel:
        assert np.abs(closed_form_state(channel, 0.0) - ghz_state(4)).max() < 1e-14


def test_closed_form_support_masks():
    rho_x = closed_form_state(Channel.X, 0.2)
    rho_y = closed_form_state(Channel.Y, 0.2)
    on_cross = {(i, i) for i in range(16)} | {(i, 15 - i) for i in range(16)}
    for rho in (rho_x, rho_y):
        nonzero = {tuple(ij) for ij in np.argwhere(np.abs(rho) > 1e-15)}
        assert nonzero <= on_cross
    # Y differs from X only by a parity sign on the anti-diagonal.
    for i in range(16):
        assert rho_y[i, i] == pytest.approx(rho_x[i, i], abs=1e-15)
        sign = (-1.0) ** WEIGHT[i]
        assert rho_y[i, 15 - i] == pytest.approx(sign * rho_x[i, 15 - i], abs=1e-15)

    rho_z = closed_form_state(Channel.Z, 0.2)
    nonzero = {tuple(ij) for ij in np.argwhere(np.abs(rho_z) > 1e-15)}
    assert nonzero == {(0, 0), (15, 15), (0, 15), (15, 0)}

    rho_iso = closed_form_state(Channel.ISO, 0.2)
    nonzero = {tuple(ij) for ij in np.argwhere(np.abs(rho_iso) > 1e-15)}
    assert nonzero == {(i, i) for i in range(16)} | {(0, 15), (15, 0)}


def test_closed_form_states_are_physical():
    for channel in Channel:
        for kt in np.linspace(0.0, 1.0, 7):
            assert_density_matrix(closed_form_state(channel, kt))


def test_single_qubit_marginals_stay_maximally_mixed():
    for channel in Channel:
        rho = closed_form_state(channel, 0.13)
        for qubit in range(4):
            marginal = partial_trace(rho, (qubit,))
            assert np.abs(marginal - np.eye(2) / 2).max() < 1e-12


def test_x_and_y_spectra_match():
    for kt in np.linspace(0.0, 0.8, 9):
        lam_x = np.linalg.eigvalsh(closed_form_state(Channel.X, kt))
        lam_y = np.linalg.eigvalsh(closed_form_state(Channel.Y, kt))
        assert np.abs(lam_x - lam_y).max() < 1e-14


def test_closed_form_spectrum_matches_eigensolver():
    for channel in Channel:
        for kt in (0.0, 0.07, 0.31, 0.9):
            analytic = closed_form_spectrum(channel, kt)
            numeric = np.linalg.eigvalsh(closed_form_state(channel, kt))[::-1]
            assert np.abs(analytic - numeric).max() < 1e-12
            assert abs(analytic.sum() - 1.0) < 1e-12
            assert np.all(np.diff(analytic) <= 1e-15)


def test_z_spectrum_is_two_level():
    for kt in (0.05, 0.2, 0.6):
        x = math.exp(-8.0 * kt)
        lam = closed_form_spectrum(Channel.Z, kt)
        assert lam[0] == pytest.approx((1 + x) / 2, abs=1e-15)
        assert lam[1] == pytest.approx((1 - x) / 2, abs=1e-15)
        assert np.abs(lam[2:]).max() < 1e-15


@given(seeds)
def test_generator_preserves_hermiticity_and_trace(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(2, rng)
    for channel in Channel:
        out = lindblad_generator(rho, channel)
        assert np.abs(out - out.conj().T).max() < 1e-12
        assert abs(np.trace(out)) < 1e-12


def test_generator_fixes_maximally_mixed_state():
    mixed = np.eye(16, dtype=complex) / 16
    for channel in Channel:
        assert np.abs(lindblad_generator(mixed, channel)).max() < 1e-14


def test_generator_ghz_coherence_rate():
    # Each of the four sites maps the corner coherence to minus itself,
    # so the rate is -8 * rho[0, 15], matching the exp(-8 kt) decay law.
    out = lindblad_generator(ghz_state(4), Channel.Z)
    assert out[0, 15] == pytest.approx(-8.0 * 0.5, abs=1e-13)
    scaled = lindblad_generator(ghz_state(4), Channel.Z, kappa=2.0)
    assert np.abs(scaled - 2.0 * out).max() < 1e-14


def test_generator_matches_closed_form_derivative():
    h = 1e-5
    for channel in Channel:
        ahead = closed_form_state(channel, 0.1 + h)
        behind = closed_form_state(channel, 0.1 - h)
        derivative = (ahead - behind) / (2 * h)
        generator = lindblad_generator(closed_form_state(channel, 0.1), channel)
        assert np.abs(derivative - generator).max() < 1e-6


def test_evolve_numeric_validation():
    rho = ghz_state(4)
    with pytest.raises(ValueError, match="nonnegative"):
        evolve_numeric(rho, Channel.X, -0.1)
    with pytest.raises(ValueError, match="positive"):
        evolve_numeric(rho, Channel.X, 0.1, step_tolerance=0.0)
    with pytest.raises(ValueError, match="hermitian"):
        evolve_numeric(np.ones((16, 16)) * 1j, Channel.X, 0.1)
    frozen = evolve_numeric(rho, Channel.X, 0.0)
    assert np.array_equal(frozen, rho)
    frozen[0, 0] = 0.0
    assert rho[0, 0] == pytest.approx(0.5)  # t = 0 returns an independent copy


def test_evolve_numeric_tracks_closed_forms():
    ghz = ghz_state(4)
    for channel in (Channel.X, Channel.ISO):
        gap = trace_distance(evolve_numeric(ghz, channel, 0.2), closed_form_state(channel, 0.2))
        assert gap < 1e-9


def test_evolve_numeric_output_is_physical():
    out = evolve_numeric(ghz_state(4), Channel.Y, 0.35)
    assert_density_matrix(out)


def test_evolve_numeric_beyond_superoperator_cutoff():
    # 6 qubits exercises the direct matrix-product path; |0...0> is a
    # fixed point of the Z channel so the check stays cheap.
    ket = np.zeros(64, dtype=complex)
    ket[0] = 1.0
    rho = np.outer(ket, ket)
    out = evolve_numeric(rho, Channel.Z, 0.01)
    assert np.abs(out - rho).max() < 1e-12


def test_isotropic_channel_forgets_everything():
    mixed = np.eye(16, dtype=complex) / 16
    assert trace_distance(closed_form_state(Channel.ISO, 3.0), mixed) < 1e-9
    gap = trace_distance(evolve_numeric(ghz_state(4), Channel.ISO, 1.0),
                         closed_form_state(Channel.ISO, 1.0))
    assert gap < 1e-8
