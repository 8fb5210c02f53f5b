"""One- and two-qubit states in density-matrix and Pauli-coefficient form.

Conventions: Pauli index order (I, X, Y, Z) and computational-basis
ordering |00>, |01>, |10>, |11> with qubit A as the left tensor factor.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidState, NotAState

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
ROUNDTRIP_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.array([I2, SX, SY, SZ])

# PAULI_PRODUCTS[mu, nu] = sigma_mu (x) sigma_nu
PAULI_PRODUCTS = np.einsum("mab,ncd->mnacbd", PAULIS, PAULIS).reshape(4, 4, 4, 4)

SIDES = ("A", "B")


def _check_side(side):
    if side not in SIDES:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return side


def _frozen(arr):
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


def hermitize(m):
    return 0.5 * (m + m.conj().T)


def project_psd(rho):
    """Clip small negative eigenvalues to zero and renormalize the trace."""
    rho = hermitize(np.asarray(rho, dtype=complex))
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    out = (v * w) @ v.conj().T
    return hermitize(out / np.trace(out).real)


def bloch_vector(rho2):
    """Bloch vector (x, y, z) of a 2x2 operator."""
    rho2 = np.asarray(rho2)
    return np.real(np.einsum("kab,ba->k", PAULIS[1:], rho2))


def density_from_bloch(r):
    r = np.asarray(r, dtype=float)
    return 0.5 * (I2 + np.einsum("k,kab->ab", r, PAULIS[1:]))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_state`; ``passed`` is the overall verdict."""

    shape_ok: bool
    hermiticity_defect: float = float("nan")
    trace_defect: float = float("nan")
    min_eigenvalue: float = float("nan")
    failures: tuple = field(default=())

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed


def validate_state(rho, *, dim=4):
    """Check a candidate density matrix without raising.

    A matrix passes when it is ``dim x dim``, Hermitian to 1e-12, has unit
    trace to 1e-12 and no eigenvalue below -1e-10.
    """
    rho = np.asarray(rho)
    if rho.shape != (dim, dim):
        return ValidationReport(shape_ok=False, failures=("shape",))
    if not np.all(np.isfinite(rho)):
        return ValidationReport(shape_ok=True, failures=("finite",))
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    tr = float(abs(np.trace(rho) - 1.0))
    min_eig = float(np.linalg.eigvalsh(hermitize(rho)).min())
    failures = []
    if herm > HERMITIAN_TOL:
        failures.append("hermiticity")
    if tr > TRACE_TOL:
        failures.append("trace")
    if min_eig < -PSD_TOL:
        failures.append("positivity")
    return ValidationReport(True, herm, tr, min_eig, tuple(failures))


class PauliTheta:
    """4x4 real Pauli coefficient matrix ``{1, b^T; a, T}`` of a two-qubit state.

    ``theta[mu, nu] = tr(rho sigma_mu (x) sigma_nu)``, so the first column
    (below the corner) is the Bloch vector of A, the first row that of B and
    the lower-right block is the correlation matrix.
    """

    __slots__ = ("_theta",)

    def __init__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (4, 4):
            raise InvalidState(f"theta must be 4x4, got shape {theta.shape}")
        self._theta = _frozen(theta)

    @property
    def theta(self):
        return self._theta

    @property
    def a(self):
        return self._theta[1:, 0]

    @property
    def b(self):
        return self._theta[0, 1:]

    @property
    def T(self):
        return self._theta[1:, 1:]

    def __array__(self, dtype=None, copy=None):
        return self._theta if dtype is None else self._theta.astype(dtype)

    def __repr__(self):
        return f"PauliTheta({self._theta.tolist()!r})"


class SingleQubitState:
    """A validated 2x2 density matrix with its Bloch-vector view."""

    __slots__ = ("_rho",)

    def __init__(self, rho):
        rho = np.asarray(rho, dtype=complex)
        report = validate_state(rho, dim=2)
        if not report:
            raise InvalidState(f"not a qubit state: {', '.join(report.failures)}")
        self._rho = _frozen(hermitize(rho))

    @classmethod
    def from_bloch(cls, r):
        r = np.asarray(r, dtype=float)
        if np.linalg.norm(r) > 1 + PSD_TOL:
            raise InvalidState(f"Bloch vector outside the unit ball: |r|={np.linalg.norm(r)}")
        return cls(density_from_bloch(r))

    @property
    def rho(self):
        return self._rho

    @property
    def bloch(self):
        return bloch_vector(self._rho)

    @property
    def purity(self):
        return float(np.real(np.trace(self._rho @ self._rho)))

    def is_pure(self, tol=1e-10):
        return abs(np.linalg.norm(self.bloch) - 1.0) <= tol

    def __repr__(self):
        return f"SingleQubitState(bloch={np.round(self.bloch, 12).tolist()})"


class TwoQubitState:
    """A validated, immutable two-qubit density matrix.

    The Pauli coefficient view is computed lazily and cached.
    """

    __slots__ = ("_rho", "_theta")

    def __init__(self, rho):
        rho = np.asarray(rho, dtype=complex)
        report = validate_state(rho)
        if not report:
            raise InvalidState(f"not a two-qubit state: {', '.join(report.failures)}")
        self._rho = _frozen(hermitize(rho))
        self._theta = None

    @classmethod
    def from_theta(cls, theta):
        return density_from_theta(theta)

    @classmethod
    def product(cls, rho_a, rho_b):
        return cls(np.kron(np.asarray(rho_a), np.asarray(rho_b)))

    @property
    def rho(self):
        return self._rho

    @property
    def theta(self):
        if self._theta is None:
            self._theta = theta_from_density(self)
        return self._theta

    @property
    def a(self):
        return self.theta.a

    @property
    def b(self):
        return self.theta.b

    @property
    def T(self):
        return self.theta.T

    def reduced(self, side):
        return reduced_state(self, side)

    def __repr__(self):
        return f"TwoQubitState(theta={np.round(self.theta.theta, 12).tolist()})"


def _as_density(state):
    if isinstance(state, TwoQubitState):
        return state.rho
    rho = np.asarray(state)
    if rho.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise InvalidState("density matrix is not Hermitian")
    return rho


def theta_from_density(state):
    """Pauli coefficient matrix of a two-qubit state (or raw 4x4 Hermitian array)."""
    rho = _as_density(state)
    theta = np.real(np.einsum("mnab,ba->mn", PAULI_PRODUCTS, rho))
    if isinstance(state, TwoQubitState):
        # trace already validated to 1e-12; pin the corner exactly
        theta[0, 0] = 1.0
    return PauliTheta(theta)


def density_from_theta(theta):
    """Rebuild the density matrix ``1/4 sum theta_mn sigma_m (x) sigma_n``.

    Raises:
        InvalidState: the corner entry is not 1.
        NotAState: the reconstructed operator has a negative eigenvalue.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (4, 4):
        raise InvalidState(f"theta must be 4x4, got shape {theta.shape}")
    if abs(theta[0, 0] - 1.0) > TRACE_TOL:
        raise InvalidState(f"theta[0][0] must be 1, got {theta[0, 0]}")
    rho = 0.25 * np.einsum("mn,mnab->ab", theta, PAULI_PRODUCTS)
    min_eig = np.linalg.eigvalsh(rho).min()
    if min_eig < -PSD_TOL:
        raise NotAState(f"theta does not describe a state (min eigenvalue {min_eig:.3e})")
    return TwoQubitState(rho)


def partial_trace(rho, keep):
    """Reduce a 4x4 operator to qubit ``keep`` ('A' or 'B')."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if _check_side(keep) == "A":
        return np.einsum("ijkj->ik", r)
    return np.einsum("ijik->jk", r)


def reduced_state(state, side):
    return SingleQubitState(partial_trace(state.rho, side))


def bell_diagonal(c):
    """Bell-diagonal state ``1/4 (I + sum c_i sigma_i (x) sigma_i)``."""
    c = np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise InvalidState(f"c must have three entries, got {c.shape}")
    return density_from_theta(np.diag([1.0, *c]))


def bell_diagonal_eigenvalues(c):
    """Closed-form spectrum of :func:`bell_diagonal` (unsorted)."""
    c1, c2, c3 = c
    return 0.25 * np.array(
        [1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3]
    )


def is_valid_bell_diagonal(c, tol=PSD_TOL):
    return bool(np.all(bell_diagonal_eigenvalues(c) >= -tol))


def ket(*amplitudes):
    v = np.asarray(amplitudes, dtype=complex)
    return v / np.linalg.norm(v)


def projector(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())
