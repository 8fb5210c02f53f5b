"""Single-qubit CPTP channels acting on qubit B.

A channel is stored by its Kraus operators; the affine Bloch-ball action
``r -> M r + t`` and the Choi matrix are derived from them.
"""

import enum

import numpy as np

from .exceptions import DomainError, NotCompletelyPositive, NotTracePreserving
from .pauli import PAULIS, TwoQubitState, _frozen, density_from_theta, hermitize

TP_TOL = 1e-10
CHOI_TOL = 1e-10
KRAUS_DISCARD = 1e-12
SINGULAR_REL_TOL = 1e-9
UNITAL_TOL = 1e-10
PARALLEL_TOL = 1e-10


class ChannelClass(enum.Enum):
    UNITAL = "Unital"
    COMPLETELY_DECOHERING = "CompletelyDecohering"
    DISCORD_CREATING = "DiscordCreating"


def _apply_kraus(kraus, rho):
    return sum(k @ rho @ k.conj().T for k in kraus)


def _transfer_matrix(kraus):
    """Real 4x4 Pauli transfer matrix R[mu, nu] = 1/2 tr(sigma_mu L(sigma_nu))."""
    images = np.array([_apply_kraus(kraus, s) for s in PAULIS])
    return 0.5 * np.real(np.einsum("mab,nba->mn", PAULIS, images))


def _choi(kraus):
    """Choi matrix sum_ij |i><j| (x) L(|i><j|), input factor first."""
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[i, j] = 1.0
            choi[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = _apply_kraus(kraus, e)
    return choi


def _kraus_from_choi(choi):
    w, v = np.linalg.eigh(hermitize(choi))
    kraus = []
    for lam, vec in zip(w[::-1], v.T[::-1]):
        if lam <= KRAUS_DISCARD:
            continue
        # vec is indexed (input i, output a); K[a, i] = sqrt(lam) vec[2 i + a]
        kraus.append(np.sqrt(lam) * vec.reshape(2, 2).T)
    return kraus


class QubitChannel:
    """Validated single-qubit CPTP map.

    Attributes:
        kraus: tuple of 2x2 complex Kraus operators.
        M: 3x3 real matrix of the affine Bloch action.
        t: translation vector of the affine Bloch action.
    """

    __slots__ = ("kraus", "_ptm")

    def __init__(self, kraus):
        ops = [np.asarray(k, dtype=complex) for k in kraus]
        if not 1 <= len(ops) <= 4:
            raise ValueError(f"expected 1 to 4 Kraus operators, got {len(ops)}")
        if any(k.shape != (2, 2) for k in ops):
            raise ValueError("Kraus operators must be 2x2")
        defect = np.max(np.abs(sum(k.conj().T @ k for k in ops) - np.eye(2)))
        if defect > TP_TOL:
            raise NotTracePreserving(f"sum K^dag K deviates from I by {defect:.3e}")
        # Kraus form is CP by construction; keep the Choi check for rounding
        min_eig = np.linalg.eigvalsh(hermitize(_choi(ops))).min()
        if min_eig < -CHOI_TOL:
            raise NotCompletelyPositive(f"Choi matrix has eigenvalue {min_eig:.3e}")
        self.kraus = tuple(_frozen(k) for k in ops)
        self._ptm = _frozen(_transfer_matrix(ops))

    @property
    def ptm(self):
        return self._ptm

    @property
    def M(self):
        return self._ptm[1:, 1:]

    @property
    def t(self):
        return self._ptm[1:, 0]

    @property
    def choi(self):
        return _choi(self.kraus)

    def __call__(self, rho):
        """Apply the channel to a 2x2 operator."""
        return _apply_kraus(self.kraus, np.asarray(rho, dtype=complex))

    def apply_bloch(self, r):
        return self.M @ np.asarray(r, dtype=float) + self.t

    def __repr__(self):
        return f"QubitChannel(M={np.round(self.M, 10).tolist()}, t={np.round(self.t, 10).tolist()})"


def channel_from_kraus(kraus):
    return QubitChannel(kraus)


def identity_channel():
    return QubitChannel([np.eye(2)])


def unitary_channel(u):
    return QubitChannel([u])


def amplitude_damping(p):
    """Amplitude damping toward |0>: ``M = diag(sqrt(1-p), sqrt(1-p), 1-p)``, ``t = (0, 0, p)``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"damping probability must lie in [0, 1], got {p}")
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]])
    e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    return QubitChannel([e0, e1])


def damping_probability(gamma, t):
    """Map a decay rate and time onto ``p = 1 - exp(-gamma t)``."""
    return -np.expm1(-gamma * np.asarray(t, dtype=float))


def phase_damping(p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"dephasing probability must lie in [0, 1], got {p}")
    return affine_channel(np.diag([1 - p, 1 - p, 1.0]), np.zeros(3))


def depolarizing(p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"depolarizing probability must lie in [0, 1], got {p}")
    return affine_channel((1 - p) * np.eye(3), np.zeros(3))


def affine_channel(M, t):
    """Build the channel with Bloch action ``r -> M r + t``.

    Kraus operators are read off the Choi eigendecomposition.

    Raises:
        NotCompletelyPositive: the pair (M, t) is not a physical channel, for
            instance a bare translation that pushes states out of the ball.
    """
    M = np.asarray(M, dtype=float)
    t = np.asarray(t, dtype=float)
    if M.shape != (3, 3) or t.shape != (3,):
        raise ValueError("M must be 3x3 and t a 3-vector")
    ptm = np.zeros((4, 4))
    ptm[0, 0] = 1.0
    ptm[1:, 0] = t
    ptm[1:, 1:] = M
    # L(X) = 1/2 sum_mn R_mn tr(sigma_n X) sigma_m, evaluated on |i><j|
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            coeffs = ptm @ PAULIS[:, j, i]  # tr(sigma_n |i><j|) = sigma_n[j, i]
            choi[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = 0.5 * np.einsum("m,mab->ab", coeffs, PAULIS)
    min_eig = np.linalg.eigvalsh(hermitize(choi)).min()
    if min_eig < -CHOI_TOL:
        raise NotCompletelyPositive(
            f"affine map is not completely positive (Choi eigenvalue {min_eig:.3e})"
        )
    return QubitChannel(_kraus_from_choi(choi))


def compose(first, second):
    """Channel that applies ``first`` and then ``second``."""
    kraus = [k2 @ k1 for k1 in first.kraus for k2 in second.kraus]
    if len(kraus) > 4:
        # re-extract a minimal Kraus set from the Choi matrix
        kraus = _kraus_from_choi(_choi(kraus))
    return QubitChannel(kraus)


def apply_local_B(state, channel):
    """``(I (x) L)(rho)`` computed by Kraus conjugation on the B factor."""
    rho = state.rho if isinstance(state, TwoQubitState) else np.asarray(state)
    out = np.zeros((4, 4), dtype=complex)
    for k in channel.kraus:
        big = np.kron(np.eye(2), k)
        out += big @ rho @ big.conj().T
    return TwoQubitState(hermitize(out))


def apply_local_B_affine(state, channel):
    """Same map as :func:`apply_local_B`, via ``b' = M b + t`` and ``T' = T M^T + a t^T``."""
    theta = np.asarray(state.theta)
    return density_from_theta(theta @ channel.ptm.T)


def classify(channel):
    """Place a channel in the unital / completely-decohering / discord-creating taxonomy.

    The test is on singular values of ``M`` so it is blind to pre- and
    post-composed unitaries.
    """
    M, t = channel.M, channel.t
    if np.linalg.norm(t) <= UNITAL_TOL:
        return ChannelClass.UNITAL
    u, s, _ = np.linalg.svd(M)
    smax = s[0]
    nonzero = int(np.sum(s > SINGULAR_REL_TOL * smax)) if smax > SINGULAR_REL_TOL else 0
    if nonzero == 0:
        return ChannelClass.COMPLETELY_DECOHERING
    if nonzero == 1 and np.linalg.norm(np.cross(t, u[:, 0])) <= PARALLEL_TOL:
        return ChannelClass.COMPLETELY_DECOHERING
    return ChannelClass.DISCORD_CREATING
