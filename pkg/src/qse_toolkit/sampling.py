"""Random states and channels for property checks.

Every sampler takes a ``numpy.random.Generator`` so callers control seeding.
"""

import numpy as np
from scipy.stats import unitary_group

from .channels import QubitChannel
from .pauli import TwoQubitState, density_from_bloch, hermitize, projector


def random_density(rng, dim=4, rank=None):
    """Normalized ``G G^dag`` with complex Gaussian ``G`` (full rank unless ``rank`` is given)."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    return hermitize(rho / np.trace(rho).real)


def random_state(rng, rank=None):
    return TwoQubitState(random_density(rng, 4, rank))


def random_bloch(rng, pure=False):
    """Uniform point in the Bloch ball (or on the sphere when ``pure``)."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if pure:
        return v
    return v * rng.uniform() ** (1.0 / 3.0)


def random_unitary(rng, dim=2):
    return unitary_group.rvs(dim, random_state=rng)


def random_channel(rng, env_dim=None):
    """Random CPTP qubit channel from a Haar-random Stinespring isometry.

    ``env_dim`` defaults to a random choice of 2 or 4.
    """
    if env_dim is None:
        env_dim = int(rng.choice([2, 4]))
    u = random_unitary(rng, 2 * env_dim)
    # first two columns give an isometry C^2 -> C^env (x) C^2
    v = u[:, :2].reshape(env_dim, 2, 2)
    return QubitChannel(list(v))


def random_qubit_states(rng, n=2):
    return [density_from_bloch(random_bloch(rng)) for _ in range(n)]


def random_quantum_classical(rng):
    """``p0 rhoA0 (x) |phi0><phi0| + p1 rhoA1 (x) |phi1><phi1|`` with a random orthonormal B basis."""
    p0 = rng.uniform(0.05, 0.95)
    rho_a0, rho_a1 = random_qubit_states(rng)
    u = random_unitary(rng)
    phi0, phi1 = projector(u[:, 0]), projector(u[:, 1])
    return TwoQubitState(p0 * np.kron(rho_a0, phi0) + (1 - p0) * np.kron(rho_a1, phi1))


def random_needle_state(rng, max_tries=100):
    """Random ``p0 rhoA0 (x) rhoB0 + p1 rhoA1 (x) rhoB1`` with rank-2 Pauli matrix."""
    from .decomposition import theta_rank

    for _ in range(max_tries):
        p0 = rng.uniform(0.05, 0.95)
        rho_a0, rho_a1, rho_b0, rho_b1 = random_qubit_states(rng, 4)
        state = TwoQubitState(p0 * np.kron(rho_a0, rho_b0) + (1 - p0) * np.kron(rho_a1, rho_b1))
        if theta_rank(state) == 2:
            return state
    raise RuntimeError("failed to sample a rank-2 state")


def random_bell_diagonal(rng):
    """Uniform ``c`` in the tetrahedron of valid Bell-diagonal states."""
    w = rng.dirichlet(np.ones(4))
    # invert the closed-form spectrum: c = (vertex coordinates) . weights
    vertices = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], dtype=float)
    return w @ vertices


def random_x_state(rng):
    """Random X-state: positive diagonal plus two admissible coherences."""
    d = rng.dirichlet(np.ones(4))
    rho = np.diag(d).astype(complex)
    for i, j in ((0, 3), (1, 2)):
        mag = np.sqrt(d[i] * d[j]) * rng.uniform()
        z = mag * np.exp(1j * rng.uniform(0, 2 * np.pi))
        rho[i, j], rho[j, i] = z, np.conj(z)
    return TwoQubitState(rho)
