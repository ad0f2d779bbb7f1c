"""Initial-state symmetry classes, expectation tables, reflection identities.

One dimension.  A qubit ``(d1, d2)`` is *balanced-orthogonal* when
``|d1| = |d2|`` and ``d1 conj(d2) + conj(d1) d2 = 0``; such states are
exactly the phase families ``e^{i g} (1, +-i)/sqrt(2)`` and give distributions
symmetric under ``x -> -x`` at every time.  The mechanism is the exchange
identity: with ``J = [[0, -1], [1, 0]]`` the reflected field of a balanced
state satisfies  ``zeta_x = (-1)^t (+-i) J zeta_{-x}``  (sign matching the
state's ``+-i`` pattern).  The walk engine here evolves with component 1
moving in +x; the convention with component 1 moving in -x is its spatial
reflection, so all identities are evaluated on the reflected field
``zeta_x := field(-x)`` (the residual is the same either way because
``J^2 = -I`` makes the identity form-invariant under reflection).

Two dimensions.  The analogous four-component pattern is
``e^{i g} (1, +-i, +-i, -1)/2``; the exchange constant that these dynamics
actually satisfy is the block matrix ``EXCHANGE_2D = blockdiag(J, J)``
pairing the (+x, -x) movers and the (+y, -y) movers, giving

    Omega_{x, y} = (-1)^t (+-i) EXCHANGE_2D Omega_{-x, -y}

and hence inversion symmetry ``P(x, y) = P(-x, -y)`` at every time.  The
tensor square ``EXCHANGE_2D_TENSOR = kron(J, J)`` (an anti-diagonal sign
matrix) is exposed for reference: it is symmetric and squares to +I, so it
cannot intertwine the inversion for this walk in any component ordering; it
is the exchange constant of a *pair of independent line walks* instead.
Because no constant matrix intertwines the single-axis mirror
``x -> -x`` here (the coin's diagonal blocks obstruct it), the operative
notion of a symmetric 2D distribution is inversion symmetry; the stricter
four-way axis-mirror equality is available behind ``four_way=True`` and
genuinely fails for these dynamics.

The expectation table extractor reproduces, at p = 1/2, the classical
coefficient sequences ``a_t`` (from state (1, 0)) and ``b_t`` (from state
(1, 1)/sqrt(2)) under this engine's orientation, where
``E(X_t) = +a_t (|d1|^2 - |d2|^2) + b_t (d1 conj(d2) + conj(d1) d2)``, and
``kns_check`` tests the first-difference relation ``b_{t+1} - a_t = 1``
(exact at p = 1/2, empirically false for p != 1/2 from t = 1 on).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coin import CoinParameter
from .errors import InvalidParameterError, PreconditionError
from .walk1d import (
    QubitState,
    as_qubit,
    distribution_1d,
    evolve_1d,
    init_1d,
    step_1d,
)
from .walk2d import QuditState, as_qudit, evolve_2d, init_2d, step_2d

__all__ = [
    "EXCHANGE_1D",
    "EXCHANGE_2D",
    "EXCHANGE_2D_TENSOR",
    "SymmetryVerdict1D",
    "ABTable",
    "in_phi_perp",
    "empirical_symmetric_1d",
    "zero_mean_1d",
    "classify_1d",
    "expectation_series",
    "extract_ab",
    "kns_check",
    "reflection_identity_1d",
    "in_phi_perp_2d",
    "empirical_symmetric_2d",
    "reflection_identity_2d",
]

_CLASS_TOL = 1e-12
_SYM_TOL = 1e-12
_PATTERN_TOL = 1e-9

EXCHANGE_1D = np.array([[0.0, -1.0], [1.0, 0.0]])

# operative 2D exchange: one J block per lattice axis
EXCHANGE_2D = np.block(
    [[EXCHANGE_1D, np.zeros((2, 2))], [np.zeros((2, 2)), EXCHANGE_1D]]
)

# anti-diagonal sign matrix kron(J, J); reference only, see module docstring
EXCHANGE_2D_TENSOR = np.kron(EXCHANGE_1D, EXCHANGE_1D)


@dataclass(frozen=True)
class SymmetryVerdict1D:
    """Deterministic classification of one initial qubit at one horizon."""

    in_phi_perp: bool
    empirically_symmetric: bool
    zero_mean: bool
    horizon: int


@dataclass(frozen=True)
class ABTable:
    """Expectation coefficients ``a_t``, ``b_t`` for ``t = 1..T``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        if a.shape != b.shape or a.ndim != 1:
            raise InvalidParameterError("a and b must be 1D arrays of equal length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __len__(self) -> int:
        return self.a.size

    def kns_residuals(self) -> np.ndarray:
        """``b_{t+1} - a_t - 1`` for ``t = 1..T-1``."""
        return self.b[1:] - self.a[:-1] - 1.0


def in_phi_perp(theta) -> bool:
    """Balanced-orthogonal test: ``|d1| = |d2|`` and vanishing cross term."""
    th = as_qubit(theta)
    cross = th.d1 * th.d2.conjugate() + th.d1.conjugate() * th.d2
    return abs(abs(th.d1) - abs(th.d2)) <= _CLASS_TOL and abs(cross) <= _CLASS_TOL


def empirical_symmetric_1d(theta, p: CoinParameter | float, horizon: int) -> bool:
    """True iff ``P(x, t) = P(-x, t)`` within 1e-12 for every ``t <= horizon``."""
    if horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {horizon}")
    field = init_1d(theta)
    for _ in range(horizon):
        field = step_1d(field, p)
        masses = distribution_1d(field).masses
        if np.max(np.abs(masses - masses[::-1])) > _SYM_TOL:
            return False
    return True


def expectation_series(theta, p: CoinParameter | float, horizon: int) -> np.ndarray:
    """``E(X_t)`` for ``t = 1..horizon`` from the position-space oracle."""
    if horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {horizon}")
    field = init_1d(theta)
    out = np.empty(horizon)
    for t in range(horizon):
        field = step_1d(field, p)
        out[t] = distribution_1d(field).mean_position()
    return out


def zero_mean_1d(theta, p: CoinParameter | float, horizon: int) -> bool:
    """True iff ``|E(X_t)| <= 1e-12`` for every ``t <= horizon``."""
    return bool(np.max(np.abs(expectation_series(theta, p, horizon))) <= _SYM_TOL)


def classify_1d(theta, p: CoinParameter | float, horizon: int) -> SymmetryVerdict1D:
    """All three class predicates for one state, reproducibly."""
    return SymmetryVerdict1D(
        in_phi_perp=in_phi_perp(theta),
        empirically_symmetric=empirical_symmetric_1d(theta, p, horizon),
        zero_mean=zero_mean_1d(theta, p, horizon),
        horizon=int(horizon),
    )


def extract_ab(p: CoinParameter | float, horizon: int) -> ABTable:
    """Expectation table: ``a_t`` from state (1, 0), ``b_t`` from (1, 1)/sqrt(2)."""
    a = expectation_series(QubitState(1.0, 0.0), p, horizon)
    r = 1.0 / np.sqrt(2.0)
    b = expectation_series(QubitState(r, r), p, horizon)
    return ABTable(a=a, b=b)


def kns_check(table: ABTable, tol: float = 1e-10) -> bool:
    """First-difference relation ``b_{t+1} = a_t + 1`` over the whole table."""
    if len(table) < 2:
        raise InvalidParameterError("table must cover at least t = 1, 2")
    return bool(np.max(np.abs(table.kns_residuals())) <= tol)


def _pattern_branch_1d(th: QubitState) -> int:
    """+1 / -1 for states proportional to (1, +i) / (1, -i); error otherwise."""
    if abs(th.d1) < _PATTERN_TOL:
        raise PreconditionError(
            "reflection identity needs a state proportional to (1, +-i)"
        )
    r = th.d2 / th.d1
    if abs(r - 1j) <= _PATTERN_TOL:
        return 1
    if abs(r + 1j) <= _PATTERN_TOL:
        return -1
    raise PreconditionError(
        f"reflection identity needs a state proportional to (1, +-i); "
        f"component ratio is {r!r}"
    )


def reflection_identity_1d(theta, p: CoinParameter | float, t: int) -> float:
    """Max amplitude residual of the 1D exchange identity at time ``t``.

    The identity is evaluated on the reflected field (the mirrored walk
    orientation); the caller asserts the returned residual against its
    tolerance.
    """
    th = as_qubit(theta)
    branch = _pattern_branch_1d(th)
    if t < 1:
        raise InvalidParameterError(f"time must be >= 1, got {t}")
    field = evolve_1d(th, p, t)
    c = (-1) ** t * (1j * branch)
    r1 = field.phi1[::-1] + c * field.phi2
    r2 = field.phi2[::-1] - c * field.phi1
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


def in_phi_perp_2d(theta) -> bool:
    """Equal component moduli and vanishing off-diagonal cross-term sum."""
    th = as_qudit(theta).as_array()
    mods = np.abs(th)
    cross = abs(np.sum(th)) ** 2 - float(np.sum(mods**2))
    return bool(np.max(mods) - np.min(mods) <= _CLASS_TOL and abs(cross) <= _CLASS_TOL)


def empirical_symmetric_2d(
    theta,
    p: CoinParameter | float,
    horizon: int,
    four_way: bool = False,
) -> bool:
    """Distribution symmetry test for every ``t <= horizon`` within 1e-12.

    Default: inversion symmetry ``P(x, y) = P(-x, -y)``, the notion these
    dynamics realize for the balanced states.  ``four_way=True`` demands the
    full axis-mirror equality ``P(-x, y) = P(x, -y) = P(-x, -y) = P(x, y)``,
    which no nontrivial state family satisfies here (see module docstring).
    """
    if horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {horizon}")
    field = init_2d(theta)
    for _ in range(horizon):
        field = step_2d(field, p)
        grid = np.sum(np.abs(field.amps) ** 2, axis=0)
        inverted = grid[::-1, ::-1]
        if np.max(np.abs(grid - inverted)) > _SYM_TOL:
            return False
        if four_way and np.max(np.abs(grid - inverted.T)) > _SYM_TOL:
            return False
    return True


def _pattern_branch_2d(th: QuditState) -> int:
    """+1 / -1 for states proportional to (1, +-i, +-i, -1); error otherwise."""
    arr = th.as_array()
    if abs(arr[0]) < _PATTERN_TOL:
        raise PreconditionError(
            "reflection identity needs a state proportional to (1, +-i, +-i, -1)"
        )
    r = arr / arr[0]
    for branch in (1, -1):
        target = np.array([1.0, 1j * branch, 1j * branch, -1.0])
        if np.max(np.abs(r - target)) <= _PATTERN_TOL:
            return branch
    raise PreconditionError(
        "reflection identity needs a state proportional to (1, +-i, +-i, -1)"
    )


def reflection_identity_2d(theta, p: CoinParameter | float, t: int) -> float:
    """Max amplitude residual of the 2D exchange identity at time ``t``.

    Uses the operative constant ``EXCHANGE_2D``; evaluated on the reflected
    field, pairing each site with its inversion image.
    """
    th = as_qudit(theta)
    branch = _pattern_branch_2d(th)
    if t < 1:
        raise InvalidParameterError(f"time must be >= 1, got {t}")
    field = evolve_2d(th, p, t)
    c = (-1) ** t * (1j * branch)
    a1, a2, a3, a4 = field.amps
    res = (
        np.max(np.abs(a1[::-1, ::-1] + c * a2)),
        np.max(np.abs(a2[::-1, ::-1] - c * a1)),
        np.max(np.abs(a3[::-1, ::-1] + c * a4)),
        np.max(np.abs(a4[::-1, ::-1] - c * a3)),
    )
    return float(max(res))
