"""Quantum discord of noisy GHZ registers.

Global discord of an N-qubit state is minimised over products of local
projective measurements.  A frame assigns each qubit a Bloch direction
``(theta, phi)``; measuring in that frame pinches the state to

    Phi(rho) = sum_k |b_k><b_k| rho |b_k><b_k| / (projector sum),

and the objective is

    S(Phi(rho)) - S(rho) - sum_j [ S(Phi_j(rho_j)) - S(rho_j) ].

:func:`global_discord` minimises this over frames with a deterministic
three-stage search: the named z/x/y frames, a uniform-frame grid, then
coordinate descent with golden-section line searches from the best
starting points.  :func:`analytic_gqd` gives the closed-form values for
the 4-qubit channel states so the optimiser can be cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, closed_form_spectrum, coefficients
from .linalg import (
    assert_density_matrix,
    partial_trace,
    shannon_entropy,
    von_neumann_entropy,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SCAN_POINTS = 9
_ANGLE_TOL = 1e-7
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    """Search controls for the measurement-frame minimisation.

    ``theta_grid`` points span [0, pi] inclusive and ``phi_grid`` points
    span [0, 2*pi) in the uniform-frame scan; ``refine_sweeps`` bounds the
    coordinate-descent passes, each stopping early once a full sweep
    improves the objective by less than ``tolerance``.
    """

    theta_grid: int = 21
    phi_grid: int = 16
    refine_sweeps: int = 3
    tolerance: float = 1e-7

    def __post_init__(self) -> None:
        if self.theta_grid < 2:
            raise ValueError(f"theta_grid must be >= 2, got {self.theta_grid}")
        if self.phi_grid < 1:
            raise ValueError(f"phi_grid must be >= 1, got {self.phi_grid}")
        if self.refine_sweeps < 0:
            raise ValueError(f"refine_sweeps must be >= 0, got {self.refine_sweeps}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


@dataclass(frozen=True, eq=False)
class DiscordResult:
    """Minimised discord value with the frame that achieved it.

    ``branch_values`` records the objective at the named z, x and y
    frames; ``optimizer_evals`` counts every objective evaluation spent.
    """

    value: float
    frame: np.ndarray = field(repr=False)
    branch_values: dict[str, float]
    optimizer_evals: int


def measurement_basis(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal measurement pair along the Bloch direction (theta, phi)."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    e = np.exp(-1j * phi)
    v1 = np.array([c, e * s], dtype=complex)
    v2 = np.array([-s, e * c], dtype=complex)
    return v1, v2


def projector(theta: float, phi: float, outcome: int) -> np.ndarray:
    """Rank-one projector onto the selected measurement-basis vector."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome}")
    v = measurement_basis(theta, phi)[outcome]
    return np.outer(v, v.conj())


def uniform_frame(n: int, theta: float, phi: float) -> np.ndarray:
    """Frame assigning the same (theta, phi) to every qubit."""
    if n < 1:
        raise ValueError(f"frame needs at least 1 qubit, got {n}")
    return np.tile(np.array([theta, phi], dtype=float), (n, 1))


def z_frame(n: int) -> np.ndarray:
    """Computational-basis measurement on every qubit."""
    return uniform_frame(n, 0.0, 0.0)


def x_frame(n: int) -> np.ndarray:
    """sigma_x-eigenbasis measurement on every qubit."""
    return uniform_frame(n, math.pi / 2.0, 0.0)


def y_frame(n: int) -> np.ndarray:
    """sigma_y-eigenbasis measurement on every qubit."""
    return uniform_frame(n, math.pi / 2.0, math.pi / 2.0)


def _check_frame(frame: np.ndarray, n: int) -> np.ndarray:
    frame = np.asarray(frame, dtype=float)
    if frame.shape != (n, 2):
        raise ValueError(f"frame shape {frame.shape} does not match ({n}, 2)")
    return frame


def _basis_matrix(frame: np.ndarray) -> np.ndarray:
    """Unitary whose rows are the product measurement basis vectors."""
    mat = np.array([[1.0 + 0j]])
    for theta, phi in frame:
        v1, v2 = measurement_basis(theta, phi)
        mat = np.kron(mat, np.vstack((v1, v2)))
    return mat


def dephase(rho: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Projector-sum pinching of ``rho`` in the product frame."""
    n = assert_density_matrix(rho)
    u = _basis_matrix(_check_frame(frame, n))
    probs = np.einsum("kl,lm,mk->k", u, rho, u.conj().T).real
    return u.conj().T @ np.diag(probs.astype(complex)) @ u


class _GlobalObjective:
    """Discord objective with the frame-independent pieces precomputed."""

    def __init__(self, rho: np.ndarray, n: int) -> None:
        self.rho = rho
        self.n = n
        self.state_entropy = von_neumann_entropy(rho)
        self.marginals = [partial_trace(rho, (j,)) for j in range(n)]
        self.marginal_entropies = [von_neumann_entropy(m) for m in self.marginals]
        self.evals = 0

    def __call__(self, frame: np.ndarray) -> float:
        self.evals += 1
        u = _basis_matrix(frame)
        probs = ((u @ self.rho) * u.conj()).sum(axis=1).real
        total = shannon_entropy(probs) - self.state_entropy
        for j in range(self.n):
            v1, v2 = measurement_basis(frame[j, 0], frame[j, 1])
            m = self.marginals[j]
            p1 = float((v1.conj() @ m @ v1).real)
            local = shannon_entropy([p1, 1.0 - p1])
            total -= local - self.marginal_entropies[j]
        return total


def gqd_objective(rho: np.ndarray, frame: np.ndarray) -> float:
    """Discord objective of a single frame (no optimisation)."""
    n = assert_density_matrix(rho)
    return _GlobalObjective(rho, n)(_check_frame(frame, n))


def _golden_min(g, lo: float, hi: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = g(c), g(d)
    while b - a > _ANGLE_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = g(d)
    return (c, fc) if fc < fd else (d, fd)


def _descend(objective, frame0: np.ndarray, config: OptimizerConfig) -> tuple[np.ndarray, float]:
    """Cyclic coordinate descent over all angles with golden refinement."""
    frame = frame0.copy()
    best = objective(frame)
    for _ in range(config.refine_sweeps):
        sweep_start = best
        for j in range(frame.shape[0]):
            for coord in range(2):
                hi = math.pi if coord == 0 else 2.0 * math.pi
                current = frame[j, coord]

                def g(v: float) -> float:
                    frame[j, coord] = v
                    return objective(frame)

                scan = np.linspace(0.0, hi, _SCAN_POINTS)
                values = [g(v) for v in scan]
                k = int(np.argmin(values))
                step = hi / (_SCAN_POINTS - 1)
                lo_b = max(0.0, scan[k] - step)
                hi_b = min(hi, scan[k] + step)
                x, fx = _golden_min(g, lo_b, hi_b)
                if min(fx, values[k]) < best - 1e-15:
                    if fx <= values[k]:
                        frame[j, coord] = x
                        best = fx
                    else:
                        frame[j, coord] = scan[k]
                        best = values[k]
                else:
                    frame[j, coord] = current
        if sweep_start - best < config.tolerance:
            break
    return frame, best


def global_discord(rho: np.ndarray, config: OptimizerConfig | None = None) -> DiscordResult:
    """Minimise the discord objective over product measurement frames.

    Deterministic by construction: named frames and the uniform grid are
    evaluated in a fixed order, descent starts are deduplicated, and ties
    within 1e-12 resolve to the lexicographically smallest angle vector.
    """
    n = assert_density_matrix(rho)
    config = config or OptimizerConfig()
    objective = _GlobalObjective(rho, n)

    named = (("z", z_frame(n)), ("x", x_frame(n)), ("y", y_frame(n)))
    branch_values = {name: objective(f) for name, f in named}

    thetas = np.linspace(0.0, math.pi, config.theta_grid)
    phis = np.linspace(0.0, 2.0 * math.pi, config.phi_grid, endpoint=False)
    grid_best: tuple[float, np.ndarray] | None = None
    for theta in thetas:
        for phi in phis:
            f = uniform_frame(n, theta, phi)
            v = objective(f)
            if grid_best is None or v < grid_best[0] - _TIE_TOL:
                grid_best = (v, f)

    candidates: list[tuple[float, np.ndarray]] = [grid_best, *(
        (branch_values[name], f) for name, f in named
    )]
    seen: set[tuple[float, ...]] = set()
    starts = []
    for value, frame in candidates:
        key = tuple(np.round(frame.reshape(-1), 9))
        if key not in seen:
            seen.add(key)
            starts.append((value, frame))

    for _, frame in list(starts):
        refined_frame, refined_value = _descend(objective, frame, config)
        candidates.append((refined_value, refined_frame))

    floor = min(v for v, _ in candidates)
    eligible = [(tuple(f.reshape(-1)), v, f) for v, f in candidates if v <= floor + _TIE_TOL]
    eligible.sort(key=lambda item: item[0])
    _, value, frame = eligible[0]

    if value < -1e-9:
        raise RuntimeError(f"discord objective minimised to {value:.3e} < 0")
    frame = frame.copy()
    frame.setflags(write=False)
    return DiscordResult(max(0.0, value), frame, branch_values, objective.evals)


def bipartite_discord(rho: np.ndarray, config: OptimizerConfig | None = None) -> float:
    """Measurement-based discord of a 2-qubit state, measuring qubit 1.

    D = I(rho) - max over (theta, phi) of J, with mutual information
    I = S(rho_0) + S(rho_1) - S(rho) and classical correlations
    J = S(rho_0) - sum_k p_k S(rho given outcome k).
    """
    n = assert_density_matrix(rho)
    if n != 2:
        raise ValueError(f"bipartite discord needs exactly 2 qubits, got {n}")
    config = config or OptimizerConfig()

    s_a = von_neumann_entropy(partial_trace(rho, (0,)))
    s_b = von_neumann_entropy(partial_trace(rho, (1,)))
    mutual = s_a + s_b - von_neumann_entropy(rho)
    t = rho.reshape(2, 2, 2, 2)

    class _Negative:
        def __init__(self) -> None:
            self.evals = 0

        def __call__(self, frame: np.ndarray) -> float:
            self.evals += 1
            conditional = 0.0
            for v in measurement_basis(frame[0, 0], frame[0, 1]):
                m = np.einsum("b,abcd,d->ac", v.conj(), t, v)
                p = float(np.trace(m).real)
                if p > 1e-14:
                    conditional += p * von_neumann_entropy(m / p)
            return conditional - s_a

    objective = _Negative()
    named = (z_frame(1), x_frame(1), y_frame(1))
    best = min(objective(f) for f in named)
    thetas = np.linspace(0.0, math.pi, config.theta_grid)
    phis = np.linspace(0.0, 2.0 * math.pi, config.phi_grid, endpoint=False)
    best_frame = named[0]
    for theta in thetas:
        for phi in phis:
            f = uniform_frame(1, theta, phi)
            v = objective(f)
            if v < best - _TIE_TOL:
                best, best_frame = v, f
    for start in (best_frame, *named):
        _, v = _descend(objective, start, config)
        best = min(best, v)

    value = mutual + best  # best == -max J
    if value < -1e-9:
        raise RuntimeError(f"bipartite discord evaluated to {value:.3e} < 0")
    return max(0.0, value)


def _xlg(v: float) -> float:
    """v * log2(v) extended by continuity to 0 at v = 0."""
    return 0.0 if v <= 1e-14 else v * math.log2(v)


def analytic_gqd(channel: Channel, kt: float) -> float:
    """Closed-form global discord of the evolved 4-qubit GHZ state."""
    channel = Channel(channel)
    if kt < 0:
        raise ValueError(f"kappa*t must be nonnegative, got {kt}")
    if channel in (Channel.X, Channel.Y):
        entropy = shannon_entropy(closed_form_spectrum(channel, kt))
        return min(1.0, 3.0 - entropy)
    if channel is Channel.Z:
        x = 2.0 * coefficients(channel, kt).corner
        return 0.5 * (_xlg(1.0 - x) + _xlg(1.0 + x))
    y = math.exp(-8.0 * kt)
    a = 1.0 + 6.0 * y + y * y
    b = 1.0 + 6.0 * y - 7.0 * y * y
    c = 1.0 + 6.0 * y + 9.0 * y * y
    return -_xlg(a) / 8.0 + _xlg(b) / 16.0 + _xlg(c) / 16.0


def sudden_change_point(channel: Channel) -> float:
    """kappa*t where the X/Y discord leaves its unit plateau.

    Bisection on 2 - S(rho), the gap between the plateau branch and the
    transverse branch; only the X and Y channels exhibit the crossing.
    """
    channel = Channel(channel)
    if channel not in (Channel.X, Channel.Y):
        raise ValueError(f"discord branches never cross for channel {channel.value!r}")

    def gap(kt: float) -> float:
        return 2.0 - shannon_entropy(closed_form_spectrum(channel, kt))

    lo, hi = 0.0, 1.0
    if gap(lo) <= 0 or gap(hi) >= 0:
        raise RuntimeError("branch gap does not change sign on [0, 1]")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
