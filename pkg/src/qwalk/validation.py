"""Acceptance checks runnable as a suite (CLI ``validate``) or via pytest.

Each check pins one acceptance criterion at its stated scale and tolerance
and returns a :class:`CheckResult`; nothing is rescaled at run time except
through the documented ``quick`` mode, which shrinks horizons and sample
counts for a sub-ten-second smoke run.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .closedform import alpha_coefficients, closed_form_field, double_sum_coefficient
from .coin import CoinParameter
from .errors import InvalidParameterError
from .localization import (
    localization_verdict,
    time_averaged_probability_1d,
    time_averaged_probability_2d,
)
from .spectral import (
    QuadratureGrid,
    _batch_eigensystem,
    limit_moment_1d,
)
from .symmetry import (
    empirical_symmetric_1d,
    empirical_symmetric_2d,
    extract_ab,
    in_phi_perp,
    in_phi_perp_2d,
    kns_check,
    reflection_identity_1d,
    reflection_identity_2d,
)
from .walk1d import (
    QubitState,
    distribution_1d,
    evolve_1d,
    init_1d,
    moment_1d,
    step_1d,
)
from .walk2d import (
    QuditState,
    distribution_2d,
    evolve_2d,
    joint_moment_2d,
)

__all__ = ["CheckResult", "ALL_CHECKS", "run_checks", "worker_count"]

_SEED = 20240811
_P_GRID = (0.25, 0.5, 0.75)

A_TABLE_HALF = (0.0, 0.0, 1 / 2, 1.0, 9 / 8, 5 / 4, 27 / 16, 17 / 8, 293 / 128, 157 / 64)
B_TABLE_HALF = (1.0, 1.0, 1.0, 3 / 2, 2.0, 17 / 8, 9 / 4, 43 / 16, 25 / 8, 421 / 128)


@dataclass(frozen=True)
class CheckResult:
    number: int
    section: str
    description: str
    passed: bool
    details: str
    seconds: float


def worker_count() -> int:
    """Worker cap: QWALK_THREADS if set, else machine parallelism."""
    env = os.environ.get("QWALK_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise InvalidParameterError(f"QWALK_THREADS must be an integer: {env!r}") from exc
        if n < 1:
            raise InvalidParameterError("QWALK_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _random_qubits(n: int, rng: np.random.Generator) -> list[QubitState]:
    return [QubitState.random(rng) for _ in range(n)]


def _random_qudits(n: int, rng: np.random.Generator) -> list[QuditState]:
    return [QuditState.random(rng) for _ in range(n)]


def check_unitarity(quick: bool = False) -> tuple[bool, str]:
    """1: total probability conserved at full horizon in both dimensions."""
    rng = np.random.default_rng(_SEED)
    t1, t2, nstate = (100, 40, 3) if quick else (1000, 300, 10)
    worst = 0.0
    for p in _P_GRID:
        for th in _random_qubits(nstate, rng):
            dev = abs(evolve_1d(th, p, t1).total_probability() - 1.0)
            worst = max(worst, dev)
        for th in _random_qudits(nstate, rng):
            dev = abs(evolve_2d(th, p, t2).total_probability() - 1.0)
            worst = max(worst, dev)
    return worst <= 1e-12, f"max |sum P - 1| = {worst:.3e} (tol 1e-12, t1={t1}, t2={t2})"


def check_hand_distributions(quick: bool = False) -> tuple[bool, str]:
    """2: hand-derived small-time distributions, exact within 1e-14."""
    tol = 1e-14
    worst = 0.0
    expected_1d = {
        1: {1: 0.5, -1: 0.5},
        2: {2: 0.25, 0: 0.5, -2: 0.25},
        3: {3: 1 / 8, 1: 5 / 8, -1: 1 / 8, -3: 1 / 8},
    }
    for t, table in expected_1d.items():
        d = distribution_1d(evolve_1d(QubitState(1.0, 0.0), 0.5, t))
        for x, m in table.items():
            worst = max(worst, abs(d.mass(x) - m))
    for p in _P_GRID:
        q = 1 - p
        d = distribution_2d(evolve_2d(QuditState(1, 0, 0, 0), p, 1))
        table2 = {(1, 0): p * p, (-1, 0): p * q, (0, 1): p * q, (0, -1): q * q}
        for (x, y), m in table2.items():
            worst = max(worst, abs(d.mass(x, y) - m))
    return worst <= tol, f"max deviation from hand values = {worst:.3e} (tol 1e-14)"


def check_closed_form(quick: bool = False) -> tuple[bool, str]:
    """3: closed-form amplitudes equal the stepped oracle within 1e-10."""
    rng = np.random.default_rng(_SEED + 3)
    tmax, nstate = (50, 5) if quick else (200, 20)
    ps = (0.25, 0.5) if quick else (0.1, 0.25, 0.5, 0.75, 0.9)
    dense = range(1, min(tmax, 50) + 1)
    sparse = [t for t in (60, 80, 100, 125, 150, 175, 200) if t <= tmax]
    times = sorted(set(dense) | set(sparse))
    worst = 0.0
    for p in ps:
        for th in _random_qubits(nstate, rng):
            field = init_1d(th)
            t = 0
            for target in times:
                while t < target:
                    field = step_1d(field, p)
                    t += 1
                cf = closed_form_field(th, p, t)
                dev = max(
                    np.max(np.abs(cf.phi1 - field.phi1)),
                    np.max(np.abs(cf.phi2 - field.phi2)),
                )
                worst = max(worst, float(dev))
    return worst <= 1e-10, (
        f"max amplitude deviation = {worst:.3e} over t<= {tmax} (tol 1e-10)"
    )


def check_coefficients(quick: bool = False) -> tuple[bool, str]:
    """4: explicit double sum equals the recurrence coefficients within 1e-12."""
    tmax = 15 if quick else 30
    worst = 0.0
    for p in _P_GRID:
        for t in range(0, tmax + 1):
            coeffs = alpha_coefficients(p, t + 1)
            for j in range(t + 1):
                dev = abs(double_sum_coefficient(p, t, j) - coeffs[t - 2 * j])
                worst = max(worst, dev)
    return worst <= 1e-12, f"max |double sum - recurrence| = {worst:.3e} (tol 1e-12)"


def check_limit_1d(quick: bool = False) -> tuple[bool, str]:
    """5: simulated pseudo-velocity moments approach the 1D quadrature limit."""
    rng = np.random.default_rng(_SEED + 5)
    if quick:
        ladder, gridn, nstate, tol = (50, 100, 200), 1024, 2, 2e-2
    else:
        ladder, gridn, nstate, tol = (125, 250, 500, 1000), 4096, 5, 5e-3
    grid = QuadratureGrid(gridn)
    worst_gap = 0.0
    nondec = 0
    for p in _P_GRID:
        for th in _random_qubits(nstate, rng):
            sims = {1: [], 2: []}
            field = init_1d(th)
            want = set(ladder)
            for t in range(1, ladder[-1] + 1):
                field = step_1d(field, p)
                if t in want:
                    d = distribution_1d(field)
                    sims[1].append(moment_1d(d, 1))
                    sims[2].append(moment_1d(d, 2))
            for alpha in (1, 2):
                quad = limit_moment_1d(th, p, alpha, grid)
                gaps = [abs(s - quad) for s in sims[alpha]]
                worst_gap = max(worst_gap, gaps[-1])
                if gaps[-1] > max(gaps[0], 1e-12):
                    nondec += 1
    ok = worst_gap <= tol and nondec == 0
    return ok, (
        f"max final gap = {worst_gap:.3e} (tol {tol:g}); "
        f"{nondec} ladders failed to converge"
    )


def check_limit_2d(quick: bool = False) -> tuple[bool, str]:
    """6: simulated joint moments approach the 2D quadrature limit."""
    rng = np.random.default_rng(_SEED + 6)
    if quick:
        tmax, gridn, tol = 100, 128, 2e-2
        states = [QuditState(1, 0, 0, 0), QuditState(0.5, 0.5j, 0.5j, -0.5)]
    else:
        tmax, gridn, tol = 300, 512, 2e-2
        states = [
            QuditState(1, 0, 0, 0),
            QuditState(0.5, 0.5j, 0.5j, -0.5),
            QuditState.random(rng),
        ]
    p = 0.5
    orders = ((1, 0), (0, 1), (1, 1), (2, 0))
    sims = {}
    for si, th in enumerate(states):
        d = distribution_2d(evolve_2d(th, p, tmax))
        for ab in orders:
            sims[si, ab] = joint_moment_2d(d, *ab)
    # one eigensolve sweep over the tensor grid covers every state and order
    grid = QuadratureGrid(gridn)
    nodes = grid.nodes()
    mm, nn = np.meshgrid(nodes, nodes, indexing="ij")
    ms, ns = mm.ravel(), nn.ravel()
    thetas = np.stack([th.as_array() for th in states])
    quads = {key: [] for key in ((si, ab) for si in range(len(states)) for ab in orders)}
    chunk = 16384
    for s in range(0, ms.size, chunk):
        lam, Q, vx, vy = _batch_eigensystem(
            CoinParameter(p), ms[s : s + chunk], ns[s : s + chunk]
        )
        proj = np.einsum("bik,si->sbk", Q.conj(), thetas)
        wgt = np.abs(proj) ** 2
        for si in range(len(states)):
            for ab in orders:
                a, b = ab
                quads[si, ab].append(float(np.sum(wgt[si] * vx**a * vy**b)))
    worst = 0.0
    for key, partials in quads.items():
        quad = float(np.sum(np.asarray(partials)) / gridn**2)
        worst = max(worst, abs(quad - sims[key]))
    return worst <= tol, (
        f"max |sim(t={tmax}) - quad(N={gridn})| = {worst:.3e} (tol {tol:g})"
    )


def check_ab_table(quick: bool = False) -> tuple[bool, str]:
    """7: the unbiased-coin expectation table and its first-difference law."""
    table = extract_ab(0.5, 10)
    dev = max(
        float(np.max(np.abs(table.a - np.asarray(A_TABLE_HALF)))),
        float(np.max(np.abs(table.b - np.asarray(B_TABLE_HALF)))),
    )
    kns = kns_check(table)
    ok = dev <= 1e-12 and kns
    return ok, f"max table deviation = {dev:.3e} (tol 1e-12); first-difference law: {kns}"


def _phi_perp_states_1d(n: int) -> list[QubitState]:
    out = []
    r = 1 / math.sqrt(2)
    gammas = np.linspace(0.0, 2 * np.pi, (n + 1) // 2, endpoint=False)
    for g in gammas:
        ph = complex(np.exp(1j * g))
        out.append(QubitState(ph * r, ph * r * 1j))
        out.append(QubitState(ph * r, ph * r * -1j))
    return out[:n]


def _phi_perp_states_2d(n: int) -> list[QuditState]:
    out = []
    gammas = np.linspace(0.0, 2 * np.pi, (n + 3) // 4, endpoint=False)
    for g in gammas:
        ph = complex(np.exp(1j * g)) / 2
        out.append(QuditState(ph, ph * 1j, ph * 1j, -ph))
        out.append(QuditState(ph, ph * -1j, ph * -1j, -ph))
        out.append(QuditState(ph, ph * 1j, ph * -1j, ph))
        out.append(QuditState(ph, ph * -1j, ph * 1j, ph))
    return out[:n]


def check_symmetry(quick: bool = False) -> tuple[bool, str]:
    """8: balanced states stay symmetric; unbalanced ones break by t = 3."""
    if quick:
        n1, t1, n2, t2 = 10, 20, 8, 10
    else:
        n1, t1, n2, t2 = 50, 50, 20, 20
    states1 = _phi_perp_states_1d(n1)
    states2 = _phi_perp_states_2d(n2)
    bad = []
    for p in _P_GRID:
        for th in states1:
            if not in_phi_perp(th):
                bad.append(f"1D state not in class at p={p}")
            if not empirical_symmetric_1d(th, p, t1):
                bad.append(f"1D symmetric failed p={p}")
        for th in states2:
            if not in_phi_perp_2d(th):
                bad.append(f"2D state not in class at p={p}")
            if not empirical_symmetric_2d(th, p, t2):
                bad.append(f"2D symmetric failed p={p}")
        if empirical_symmetric_1d(QubitState(1.0, 0.0), p, 3):
            bad.append(f"1D (1,0) unexpectedly symmetric to t=3 at p={p}")
        if empirical_symmetric_2d(QuditState(1, 0, 0, 0), p, 3):
            bad.append(f"2D (1,0,0,0) unexpectedly symmetric to t=3 at p={p}")
    ok = not bad
    detail = (
        f"{len(states1)} line states to t={t1}, {len(states2)} lattice states "
        f"to t={t2}, all p"
    )
    return ok, detail if ok else detail + "; failures: " + "; ".join(bad[:4])


def check_reflection(quick: bool = False) -> tuple[bool, str]:
    """9: exchange-identity residuals stay at rounding level."""
    t1max, t2max = (10, 5) if quick else (20, 10)
    r = 1 / math.sqrt(2)
    worst = 0.0
    for p in _P_GRID:
        for sgn in (1, -1):
            th1 = QubitState(r, r * 1j * sgn)
            for t in range(1, t1max + 1):
                worst = max(worst, reflection_identity_1d(th1, p, t))
            th2 = QuditState(0.5, 0.5j * sgn, 0.5j * sgn, -0.5)
            for t in range(1, t2max + 1):
                worst = max(worst, reflection_identity_2d(th2, p, t))
    return worst <= 1e-12, f"max residual = {worst:.3e} (tol 1e-12)"


def check_localization(quick: bool = False) -> tuple[bool, str]:
    """10: origin averages decay with halving ratio in [0.3, 0.8]; no verdicts."""
    rng = np.random.default_rng(_SEED + 10)
    if quick:
        lad1, lad2 = (32, 64, 128), (16, 32, 64)
    else:
        lad1, lad2 = (64, 128, 256), (32, 64, 128)
    r = 1 / math.sqrt(2)
    states1 = [QubitState(1.0, 0.0), QubitState(r, r * 1j), QubitState.random(rng)]
    states2 = [
        QuditState(1, 0, 0, 0),
        QuditState(0.5, 0.5j, 0.5j, -0.5),
        QuditState.random(rng),
    ]
    bad = []
    for p in _P_GRID:
        for th in states1:
            est = time_averaged_probability_1d(th, p, 0, lad1)
            _judge_estimate(est, bad, f"1D p={p}")
        for th in states2:
            est = time_averaged_probability_2d(th, p, (0, 0), lad2)
            _judge_estimate(est, bad, f"2D p={p}")
    ok = not bad
    return ok, "all ladders decay in ratio band" if ok else "; ".join(bad[:4])


def _judge_estimate(est, bad: list, label: str) -> None:
    if not est.decaying:
        bad.append(f"{label}: not strictly decreasing {est.averages}")
        return
    if not all(0.0 <= v <= 1.0 for v in est.averages):
        bad.append(f"{label}: average outside [0,1]")
    for a, b in zip(est.averages, est.averages[1:]):
        ratio = b / a
        if not 0.3 <= ratio <= 0.8:
            bad.append(f"{label}: halving ratio {ratio:.3f} outside [0.3, 0.8]")
    if localization_verdict(est):
        bad.append(f"{label}: spurious localization verdict")


def check_quadrature_stability(quick: bool = False) -> tuple[bool, str]:
    """11: 1D limit values are grid-size independent to 1e-10."""
    rng = np.random.default_rng(_SEED + 11)
    states = [QubitState(1.0, 0.0), QubitState.random(rng)]
    coarse, fine = (512, 2048) if quick else (1024, 4096)
    worst = 0.0
    for p in _P_GRID:
        for th in states:
            for alpha in (1, 2):
                d = abs(
                    limit_moment_1d(th, p, alpha, QuadratureGrid(coarse))
                    - limit_moment_1d(th, p, alpha, QuadratureGrid(fine))
                )
                worst = max(worst, d)
    return worst <= 1e-10, (
        f"max |N={coarse} - N={fine}| = {worst:.3e} (tol 1e-10)"
    )


ALL_CHECKS: tuple[tuple[int, str, str, Callable], ...] = (
    (1, "unitarity", "norm conservation at full horizon", check_unitarity),
    (2, "hand", "hand-derived small-time distributions", check_hand_distributions),
    (3, "closedform", "closed form equals stepped oracle", check_closed_form),
    (4, "coefficients", "double sum equals recurrence coefficients", check_coefficients),
    (5, "limit1d", "1D weak-limit moments vs simulation", check_limit_1d),
    (6, "limit2d", "2D weak-limit moments vs simulation", check_limit_2d),
    (7, "table", "unbiased expectation table and difference law", check_ab_table),
    (8, "symmetry", "balanced states symmetric, others not", check_symmetry),
    (9, "reflection", "exchange identity residuals", check_reflection),
    (10, "localization", "origin averages decay, no localization", check_localization),
    (11, "quadrature", "grid-size stability of 1D limits", check_quadrature_stability),
)


def run_checks(
    quick: bool = False,
    only: str | None = None,
    max_workers: int | None = None,
) -> list[CheckResult]:
    """Run the acceptance checks, optionally filtered by section substring.

    Independent checks run concurrently up to the worker cap; results come
    back ordered by criterion number regardless of completion order.
    """
    selected = [
        entry
        for entry in ALL_CHECKS
        if only is None or only.lower() in entry[1].lower()
    ]
    if not selected:
        raise InvalidParameterError(f"no acceptance section matches {only!r}")
    workers = max_workers if max_workers is not None else worker_count()

    def run_one(entry) -> CheckResult:
        number, section, desc, fn = entry
        start = time.perf_counter()
        passed, details = fn(quick=quick)
        return CheckResult(
            number=number,
            section=section,
            description=desc,
            passed=passed,
            details=details,
            seconds=time.perf_counter() - start,
        )

    if workers <= 1 or len(selected) == 1:
        results = [run_one(e) for e in selected]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(selected))) as pool:
            results = list(pool.map(run_one, selected))
    return sorted(results, key=lambda r: r.number)
