"""Property-based invariants over randomized parameters and states."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

from qwalk.closedform import alpha_coefficients, closed_form_field
from qwalk.coin import coin_1d, coin_2d, kernel_1d, kernel_2d
from qwalk.spectral import eigensystem_1d, group_velocity
from qwalk.symmetry import in_phi_perp
from qwalk.walk1d import QubitState, distribution_1d, evolve_1d, moment_1d
from qwalk.walk2d import QuditState, distribution_2d, evolve_2d

p_strategy = st.floats(min_value=0.05, max_value=0.95)
wavenumber_strategy = st.floats(min_value=-math.pi, max_value=math.pi, exclude_max=True)
phase_strategy = st.floats(min_value=0.0, max_value=2 * math.pi)


def qubit_from(parts):
    v = np.array([complex(parts[0], parts[1]), complex(parts[2], parts[3])])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.array([1.0, 0.0], dtype=complex)
        n = 1.0
    v = v / n
    return QubitState(v[0], v[1])


def qudit_from(parts):
    v = np.array(
        [complex(parts[2 * i], parts[2 * i + 1]) for i in range(4)], dtype=complex
    )
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.array([1, 0, 0, 0], dtype=complex)
        n = 1.0
    return QuditState(*(v / n))


component = st.floats(min_value=-1.0, max_value=1.0)
qubit_strategy = st.tuples(*([component] * 4)).map(qubit_from)
qudit_strategy = st.tuples(*([component] * 8)).map(qudit_from)


@settings(max_examples=50, deadline=None)
@given(p=p_strategy, x=wavenumber_strategy)
def test_kernel_1d_unitary_with_unit_determinant(p, x):
    s = kernel_1d(p, x)
    assert np.max(np.abs(s.conj().T @ s - np.eye(2))) <= 1e-14
    assert abs(np.linalg.det(s) + 1.0) <= 1e-14


@settings(max_examples=25, deadline=None)
@given(p=p_strategy, m=wavenumber_strategy, n=wavenumber_strategy)
def test_kernel_2d_unitary(p, m, n):
    s = kernel_2d(p, m, n)
    assert np.max(np.abs(s.conj().T @ s - np.eye(4))) <= 1e-14


@settings(max_examples=25, deadline=None)
@given(p=p_strategy)
def test_lattice_coin_is_kronecker_square(p):
    h = coin_1d(p)
    assert np.max(np.abs(coin_2d(p) - np.kron(h, h))) <= 1e-15


@settings(max_examples=30, deadline=None)
@given(theta=qubit_strategy, p=p_strategy, t=st.integers(min_value=0, max_value=30))
def test_line_norm_parity_and_support(theta, p, t):
    f = evolve_1d(theta, p, t)
    assert abs(f.total_probability() - 1.0) <= 1e-12
    for x, _ in f.items():
        assert abs(x) <= t and (x - t) % 2 == 0


@settings(max_examples=15, deadline=None)
@given(theta=qudit_strategy, p=p_strategy, t=st.integers(min_value=0, max_value=12))
def test_lattice_norm_and_light_cone(theta, p, t):
    f = evolve_2d(theta, p, t)
    assert abs(f.total_probability() - 1.0) <= 1e-12
    for (x, y), _ in f.items():
        assert abs(x) + abs(y) <= t and (x + y - t) % 2 == 0


@settings(max_examples=25, deadline=None)
@given(
    theta=qubit_strategy,
    p=p_strategy,
    k=st.floats(min_value=-3.0, max_value=3.0),
    t=st.integers(min_value=1, max_value=15),
)
def test_global_phase_leaves_distribution_unchanged(theta, p, k, t):
    d0 = distribution_1d(evolve_1d(theta, p, t, k=0.0))
    d1 = distribution_1d(evolve_1d(theta, p, t, k=k))
    assert np.max(np.abs(d0.masses - d1.masses)) <= 1e-14


@settings(max_examples=25, deadline=None)
@given(theta=qubit_strategy, p=p_strategy, t=st.integers(min_value=0, max_value=40))
def test_closed_form_equals_stepped_oracle(theta, p, t):
    oracle = evolve_1d(theta, p, t)
    cf = closed_form_field(theta, p, t)
    assert np.max(np.abs(cf.phi1 - oracle.phi1)) <= 1e-12
    assert np.max(np.abs(cf.phi2 - oracle.phi2)) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(p=p_strategy, t=st.integers(min_value=1, max_value=40))
def test_alpha_coefficients_parity(p, t):
    for n, _ in alpha_coefficients(p, t).items():
        assert (n - (t - 1)) % 2 == 0


@settings(max_examples=25, deadline=None)
@given(theta=qubit_strategy, p=p_strategy, t=st.integers(min_value=1, max_value=20))
def test_zeroth_moment_normalization(theta, p, t):
    d = distribution_1d(evolve_1d(theta, p, t))
    assert moment_1d(d, 0) == 1.0
    assert abs(d.total() - 1.0) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(gamma=phase_strategy, sign=st.sampled_from([1, -1]))
def test_balanced_phase_family_in_class(gamma, sign):
    r = 1 / math.sqrt(2)
    ph = complex(math.cos(gamma), math.sin(gamma))
    assert in_phi_perp(QubitState(ph * r, ph * r * 1j * sign))


@settings(max_examples=30, deadline=None)
@given(theta=qubit_strategy, p=p_strategy, x=wavenumber_strategy)
def test_branch_weights_and_velocities(theta, p, x):
    b1, b2 = eigensystem_1d(p, x, theta)
    assert abs(b1.weight + b2.weight - 1.0) <= 1e-10
    assert abs(b1.velocity[0] + b2.velocity[0]) <= 1e-10
    assert abs(b1.velocity[0]) <= 1.0 + 1e-12
    assert abs(b1.velocity[0] - group_velocity(p, x)) <= 1e-10


@settings(max_examples=15, deadline=None)
@given(theta=qudit_strategy, p=p_strategy, t=st.integers(min_value=1, max_value=10))
def test_lattice_distribution_sums_to_one(theta, p, t):
    d = distribution_2d(evolve_2d(theta, p, t))
    assert abs(d.total() - 1.0) <= 1e-12
