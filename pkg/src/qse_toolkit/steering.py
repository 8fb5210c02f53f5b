"""Quantum steering ellipsoids of two-qubit states."""

from dataclasses import dataclass

import numpy as np

from .exceptions import NotANeedle, ProductStateDegenerate, ZeroProbabilityOutcome
from .pauli import (
    I2,
    TwoQubitState,
    _check_side,
    _frozen,
    density_from_bloch,
    hermitize,
    project_psd,
)

UNIT_TOL = 1e-10
ZERO_PROB = 1e-12
PURITY_TOL = 1e-12
SEMIAXIS_REL_TOL = 1e-9


@dataclass(frozen=True)
class SteeredOutcome:
    probability: float
    bloch: np.ndarray


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """Ellipsoid ``{center + axes @ diag(semiaxes) @ x : |x| <= 1}``.

    ``axes`` holds unit axis directions as columns, ordered by descending
    semiaxis; ``dim`` counts the non-degenerate semiaxes.
    """

    center: np.ndarray
    semiaxes: np.ndarray
    axes: np.ndarray
    dim: int

    @property
    def shape_matrix(self):
        """``axes diag(s^2) axes^T``; independent of axis sign and ordering ambiguity."""
        return self.axes @ np.diag(self.semiaxes**2) @ self.axes.T

    def endpoints(self):
        """The two ends of the major axis."""
        half = self.semiaxes[0] * self.axes[:, 0]
        return self.center + half, self.center - half

    def point(self, x):
        """Image of a vector ``x`` from the unit ball."""
        return self.center + self.axes @ (self.semiaxes * np.asarray(x, dtype=float))

    def contains(self, r, tol=1e-9):
        r = np.asarray(r, dtype=float)
        return bool(_inside(self, r - self.center, tol))

    def to_dict(self):
        return {
            "center": self.center.tolist(),
            "semiaxes": self.semiaxes.tolist(),
            "axes": self.axes.tolist(),
            "dim": int(self.dim),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            _frozen(np.asarray(d["center"], dtype=float)),
            _frozen(np.asarray(d["semiaxes"], dtype=float)),
            _frozen(np.asarray(d["axes"], dtype=float)),
            int(d["dim"]),
        )

    def allclose(self, other, atol=1e-8):
        return np.allclose(self.center, other.center, atol=atol) and np.allclose(
            self.shape_matrix, other.shape_matrix, atol=atol
        )


def _canonical_axes(u):
    u = np.array(u, dtype=float)
    for k in range(u.shape[1]):
        col = u[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size and col[nz[0]] < 0:
            u[:, k] = -col
    return u


def _make_ellipsoid(center, matrix):
    u, s, _ = np.linalg.svd(matrix)
    scale = max(s[0], 1.0)
    dim = int(np.sum(s > SEMIAXIS_REL_TOL * scale))
    s = np.where(s > SEMIAXIS_REL_TOL * scale, s, 0.0)
    return Ellipsoid(
        _frozen(np.asarray(center, dtype=float)),
        _frozen(s),
        _frozen(_canonical_axes(u)),
        dim,
    )


def point_ellipsoid(center):
    return Ellipsoid(
        _frozen(np.asarray(center, dtype=float)), _frozen(np.zeros(3)), _frozen(np.eye(3)), 0
    )


def _inside(e, r, tol):
    """Is the offset ``r`` from the center inside ``e`` (span test first)."""
    k = e.dim
    coords = e.axes.T @ r
    off_span = np.linalg.norm(coords[k:])
    if off_span > tol:
        return False
    if k == 0:
        return True
    q = coords[:k] / e.semiaxes[:k]
    # tolerance scaled back to a distance along the axes
    return float(np.linalg.norm(q)) <= 1.0 + tol / e.semiaxes[k - 1]


def _check_direction(x):
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
        raise ValueError(f"measurement direction must be a unit vector, |x|={np.linalg.norm(x)}")
    return x


def _oriented(state, steered_side):
    """(own Bloch, other Bloch, correlation matrix) seen from ``steered_side``."""
    if _check_side(steered_side) == "A":
        return state.a, state.b, state.T
    return state.b, state.a, state.T.T


def steered_state(state, x, steered_side="A"):
    """Outcome of projecting the *other* qubit onto the pure state with Bloch vector ``x``.

    Returns the Born probability ``(1 + other . x) / 2`` and the steered
    Bloch vector ``(own + T x) / (1 + other . x)``.
    """
    x = _check_direction(x)
    own, other, T = _oriented(state, steered_side)
    norm = 1.0 + float(other @ x)
    if norm / 2 < ZERO_PROB:
        raise ZeroProbabilityOutcome(f"outcome probability {norm / 2:.3e} is zero")
    return SteeredOutcome(norm / 2, (own + T @ x) / norm)


def _inverse_sqrt(rho2):
    w, v = np.linalg.eigh(hermitize(rho2))
    return (v / np.sqrt(w)) @ v.conj().T


def slocc_operator(state, side):
    """The filter ``(2 rho_side)^(-1/2)``.

    Raises:
        ProductStateDegenerate: the reduced state on ``side`` is pure.
    """
    own = state.b if _check_side(side) == "B" else state.a
    if 1.0 - float(own @ own) <= PURITY_TOL:
        raise ProductStateDegenerate(f"reduced state of {side} is pure; no SLOCC filter exists")
    return _inverse_sqrt(2.0 * density_from_bloch(own))


def slocc_normalize(state, side):
    """Filter ``side`` so its marginal becomes I/2.

    The steering ellipsoid of the opposite qubit is unchanged.
    """
    S = slocc_operator(state, side)
    op = np.kron(I2, S) if side == "B" else np.kron(S, I2)
    return TwoQubitState(project_psd(op @ state.rho @ op.conj().T))


def steering_ellipsoid(state, side="A"):
    """Steering ellipsoid of qubit ``side`` under all measurements on the other qubit."""
    other = "B" if _check_side(side) == "A" else "A"
    try:
        normed = slocc_normalize(state, other)
    except ProductStateDegenerate:
        return point_ellipsoid(state.a if side == "A" else state.b)
    own, _, T = _oriented(normed, side)
    return _make_ellipsoid(own, T)


def is_radial_segment(e, tol=1e-8):
    """True iff ``e`` is a point or a segment whose line passes through the origin."""
    if e.dim == 0:
        return True
    if e.dim > 1:
        return False
    p, q = e.endpoints()
    return float(np.linalg.norm(np.cross(p, q))) <= tol


def needle_length(e):
    if e.dim > 1:
        raise NotANeedle(f"ellipsoid has dimension {e.dim}, not a needle")
    return 2.0 * float(e.semiaxes[0])


def contains_origin(e, tol=1e-9):
    """Origin membership: it must lie in the affine span of ``e`` and inside the body."""
    return bool(_inside(e, -np.asarray(e.center, dtype=float), tol))


def ellipsoid_size(e):
    """(length, area, volume) with length ``2 s1``, area ``4 pi s1 s2`` and volume ``4/3 pi s1 s2 s3``."""
    s1, s2, s3 = (float(v) for v in e.semiaxes)
    return 2.0 * s1, 4.0 * np.pi * s1 * s2, 4.0 / 3.0 * np.pi * s1 * s2 * s3
