"""Closed-form amplitudes on the line via a Chebyshev-type recurrence.

The one-step kernel ``S(x')`` has trace ``2 c(x')`` with
``2 c = sqrt(p) (e^{-i x'} - e^{i x'})`` and determinant -1, so
Cayley-Hamilton gives ``S^2 = 2 c S + I`` and hence

    S^t = alpha_t S + alpha_{t-1} I,
    alpha_1 = 1,  alpha_2 = 2 c,  alpha_{t+1} = 2 c alpha_t + alpha_{t-1}.

Note the plus sign: the three-term recurrence differs from the Chebyshev
``U_n = 2 y U_{n-1} - U_{n-2}`` exactly because ``det S = -1`` rather than
+1.  Each ``alpha_t`` is a Laurent polynomial in ``e^{i x'}`` supported on
frequencies ``n = -(t-1), -(t-1)+2, ..., t-1``; the recurrence is run
directly on the coefficient arrays, which stays exact in index bookkeeping
and keeps every intermediate bounded (``|alpha_t(x')| <= 1/sqrt(q)``
pointwise on the unit circle).

Position-space amplitudes follow by reading off Fourier coefficients of
``e^{i t k} (alpha_t S + alpha_{t-1} I) Theta``:

    phi1(x, t) = e^{itk} [ (sp d1 + sq d2) a_t[x-1] + d1 a_{t-1}[x] ]
    phi2(x, t) = e^{itk} [ (sq d1 - sp d2) a_t[x+1] + d2 a_{t-1}[x] ]

with ``sp = sqrt(p)``, ``sq = sqrt(q)`` and ``a_t[n]`` the coefficient of
``e^{-i n x'}`` in ``alpha_t``.  The result must agree amplitude-by-amplitude
with the step-by-step oracle in :mod:`qwalk.walk1d`; that equivalence is a
tested invariant, not an assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .coin import CoinParameter, as_coin
from .errors import InvalidParameterError
from .walk1d import PhaseParameter, QubitState, WaveField1D, as_qubit, init_1d

__all__ = [
    "chebyshev_u",
    "ChebyshevTable",
    "chebyshev_table",
    "LaurentCoefficients",
    "alpha_coefficients",
    "double_sum_coefficient",
    "closed_form_field",
]


def chebyshev_u(n: int, y: complex) -> complex:
    """Second-kind Chebyshev value ``U_n(y)`` by the three-term recurrence.

    Valid for complex ``y``; ``U_0 = 1``, ``U_1 = 2 y``,
    ``U_n = 2 y U_{n-1} - U_{n-2}``.
    """
    if n < 0:
        raise InvalidParameterError(f"degree must be >= 0, got {n}")
    if n == 0:
        return 1 + 0j
    prev, cur = 1 + 0j, 2 * complex(y)
    for _ in range(n - 1):
        prev, cur = cur, 2 * complex(y) * cur - prev
    return cur


@dataclass(frozen=True)
class ChebyshevTable:
    """Exact integer coefficient rows for ``U_0 .. U_n``.

    ``rows[k]`` lists the coefficients of ``U_k`` in ascending powers of the
    argument.  Built and stored in exact integer arithmetic so the recurrence
    can be checked without rounding.
    """

    rows: tuple[tuple[int, ...], ...]

    def degree(self) -> int:
        return len(self.rows) - 1

    def evaluate(self, n: int, y: complex) -> complex:
        coeffs = self.rows[n]
        acc = 0j
        power = 1 + 0j
        for c in coeffs:
            acc += c * power
            power *= y
        return acc


def chebyshev_table(n: int) -> ChebyshevTable:
    """Build the exact coefficient table for degrees 0..n."""
    if n < 0:
        raise InvalidParameterError(f"degree must be >= 0, got {n}")
    rows: list[list[int]] = [[1]]
    if n >= 1:
        rows.append([0, 2])
    for k in range(2, n + 1):
        doubled = [0] + [2 * c for c in rows[k - 1]]
        prev = rows[k - 2] + [0] * (len(doubled) - len(rows[k - 2]))
        rows.append([a - b for a, b in zip(doubled, prev)])
    return ChebyshevTable(tuple(tuple(r) for r in rows))


class LaurentCoefficients:
    """Coefficients ``c_n`` of a Laurent polynomial ``sum_n c_n e^{-i n x'}``.

    ``order`` is the recurrence index ``t``; the support is contained in
    ``{-(t-1), -(t-1)+2, ..., t-1}`` and is stored densely over that set
    (index ``i`` holds frequency ``n = 2 i - (t - 1)``).
    """

    __slots__ = ("order", "values")

    def __init__(self, order: int, values: np.ndarray) -> None:
        if values.shape != (order,):
            raise InvalidParameterError(
                f"coefficient array for order {order} must have length {order}"
            )
        self.order = int(order)
        self.values = np.ascontiguousarray(values, dtype=np.complex128)
        self.values.flags.writeable = False

    def indices(self) -> np.ndarray:
        """Frequencies carrying (potentially) nonzero coefficients, ascending."""
        return 2 * np.arange(self.order) - (self.order - 1)

    def __getitem__(self, n: int) -> complex:
        if (n + self.order - 1) % 2 != 0 or abs(n) > self.order - 1:
            return 0j
        return complex(self.values[(n + self.order - 1) // 2])

    def items(self) -> Iterator[tuple[int, complex]]:
        for n, c in zip(self.indices(), self.values):
            if c != 0:
                yield int(n), complex(c)

    def evaluate(self, wavenumber: float) -> complex:
        """Value of the polynomial at a given wavenumber."""
        return complex(np.sum(self.values * np.exp(-1j * wavenumber * self.indices())))


def _alpha_pair(p: CoinParameter, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Packed coefficient arrays of ``alpha_t`` and ``alpha_{t-1}``.

    ``alpha_0`` is the empty array.  Cost O(t^2) in time, O(t) in memory.
    """
    sp = math.sqrt(p.p)
    prev = np.zeros(0, dtype=np.complex128)          # alpha_0
    cur = np.ones(1, dtype=np.complex128)            # alpha_1
    for m in range(1, t):
        new = np.zeros(m + 1, dtype=np.complex128)
        new[1:] += sp * cur
        new[:-1] -= sp * cur
        if m >= 2:
            new[1:-1] += prev
        prev, cur = cur, new
    return cur, prev


def alpha_coefficients(p: CoinParameter | float, t: int) -> LaurentCoefficients:
    """Laurent coefficients of ``alpha_t`` for ``t >= 1``.

    Equivalently the power series
    ``sum_m C(t-1-m, m) (2 c)^{t-1-2m}`` expanded in ``e^{-i x'}``; see
    :func:`double_sum_coefficient` for the fully expanded double sum.
    """
    if t < 1:
        raise InvalidParameterError(f"recurrence index must be >= 1, got {t}")
    cur, _ = _alpha_pair(as_coin(p), int(t))
    return LaurentCoefficients(int(t), cur)


def double_sum_coefficient(p: CoinParameter | float, t: int, j: int) -> float:
    """Coefficient of ``e^{-i x' (t - 2j)}`` in the degree-t expansion.

    Explicit double-sum form: expanding ``(2 c)^{t-2m} = p^{(t-2m)/2}
    (e^{-ix'} - e^{ix'})^{t-2m}`` binomially inside the recurrence series
    gives

        sum_m  C(t-m, m) p^{(t-2m)/2} (-1)^{j-m} C(t-2m, j-m)

    which must agree with ``alpha_coefficients(p, t+1)[t - 2j]``; that
    identity is a tested invariant.

    The alternating terms reach ~2^t while the result stays O(1), so the sum
    is evaluated in exact rational arithmetic (every float ``p`` is an exact
    rational; one factor of ``sqrt(p)`` remains for odd ``t``) and rounded
    once at the end.
    """
    c = as_coin(p)
    if not 0 <= j <= t:
        raise InvalidParameterError(f"index j must lie in [0, {t}], got {j}")
    p_exact = Fraction(c.p)
    parity = t % 2
    half = (t - parity) // 2
    total = Fraction(0)
    for m in range(0, t // 2 + 1):
        r = j - m
        if r < 0 or r > t - 2 * m:
            continue
        coeff = math.comb(t - m, m) * math.comb(t - 2 * m, r)
        if r % 2:
            coeff = -coeff
        total += coeff * p_exact ** (half - m)
    value = float(total)
    if parity:
        value *= math.sqrt(c.p)
    return value


def closed_form_field(
    theta: QubitState | tuple | list | np.ndarray,
    p: CoinParameter | float,
    t: int,
    k: PhaseParameter | float = 0.0,
) -> WaveField1D:
    """Amplitude field at time ``t`` computed without stepping.

    Must equal ``evolve_1d(theta, p, t, k)`` amplitude-by-amplitude.
    """
    if t < 0:
        raise InvalidParameterError(f"time must be nonnegative, got {t}")
    th = as_qubit(theta)
    if t == 0:
        return init_1d(th)
    c = as_coin(p)
    kk = k.k if isinstance(k, PhaseParameter) else float(k)
    sp, sq = math.sqrt(c.p), math.sqrt(c.q)
    a_t, a_tm1 = _alpha_pair(c, int(t))

    phi1 = np.zeros(t + 1, dtype=np.complex128)
    phi2 = np.zeros(t + 1, dtype=np.complex128)
    # site x = 2 m - t;  a_t[.] packed with frequency n = 2 i - (t - 1)
    phi1[1:] += (sp * th.d1 + sq * th.d2) * a_t        # needs a_t at x - 1
    phi2[:-1] += (sq * th.d1 - sp * th.d2) * a_t       # needs a_t at x + 1
    if t >= 2:
        phi1[1:-1] += th.d1 * a_tm1                    # a_{t-1} at x
        phi2[1:-1] += th.d2 * a_tm1
    phase = np.exp(1j * kk * t)
    return WaveField1D(int(t), phase * phi1, phase * phi2)
