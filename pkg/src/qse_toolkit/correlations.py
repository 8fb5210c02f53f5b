"""Entropic and entanglement measures, including B-side quantum discord.

All entropies are in bits. Discord is optimized over rank-1 projective
measurements on qubit B.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .exceptions import NotXState
from .pauli import SY, partial_trace

X_STATE_TOL = 1e-10
# indices of a 4x4 density matrix that vanish for an X-state
_OFF_X = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)]
_SPIN_FLIP = np.kron(SY, SY)


class DiscordMethod(enum.Enum):
    NUMERIC_PROJECTIVE = "NumericProjective"
    ANALYTIC_X_STATE = "AnalyticXState"


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    minimizing_direction: np.ndarray
    conditional_entropy: float
    method: DiscordMethod
    evaluations: int = 0


def _entropy_of_eigenvalues(w):
    w = np.asarray(w, dtype=float)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def von_neumann_entropy(rho):
    rho = rho.rho if hasattr(rho, "rho") else np.asarray(rho)
    return _entropy_of_eigenvalues(np.clip(np.linalg.eigvalsh(rho), 0.0, None))


def binary_entropy(q):
    q = np.clip(np.asarray(q, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -q * np.log2(q) - (1 - q) * np.log2(1 - q)
    return np.nan_to_num(h, nan=0.0)


def _bloch_entropy(r):
    """Entropy of a qubit with Bloch-vector length ``r`` (array-friendly)."""
    return binary_entropy(0.5 * (1.0 + np.clip(r, 0.0, 1.0)))


def mutual_information(state):
    rho = state.rho
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def trace_distance(r1, r2):
    """Half the trace norm of ``r1 - r2``."""
    r1 = r1.rho if hasattr(r1, "rho") else np.asarray(r1)
    r2 = r2.rho if hasattr(r2, "rho") else np.asarray(r2)
    if r1.shape != r2.shape:
        raise ValueError(f"shape mismatch: {r1.shape} vs {r2.shape}")
    d = r1 - r2
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (d + d.conj().T)))))


def concurrence(state):
    """Wootters concurrence from the spectrum of ``rho (sy x sy) rho* (sy x sy)``."""
    rho = state.rho
    flipped = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    ev = np.linalg.eigvals(rho @ flipped)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def conditional_entropy_B(state, n):
    """Average entropy of A after measuring B along the unit directions ``n`` (shape (..., 3)).

    Outcome ``+/-`` occurs with probability ``(1 +/- b.n)/2`` and leaves A with
    Bloch vector ``(a +/- T n) / (1 +/- b.n)``.
    """
    a, b, T = state.a, state.b, state.T
    n = np.asarray(n, dtype=float)
    bn = n @ b
    Tn = n @ T.T
    total = 0.0
    for sign in (1.0, -1.0):
        w = 1.0 + sign * bn
        v = a + sign * Tn
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(w > 1e-15, np.linalg.norm(v, axis=-1) / np.where(w > 1e-15, w, 1.0), 0.0)
        total = total + 0.5 * w * _bloch_entropy(r)
    return total


def _h_bloch(r):
    if r >= 1.0:
        return 0.0
    q, w = 0.5 * (1.0 + r), 0.5 * (1.0 - r)
    return -q * math.log2(q) - w * math.log2(w)


def _scalar_objective(state):
    """Fast conditional entropy as a function of polar/azimuthal angles."""
    a1, a2, a3 = (float(v) for v in state.a)
    b1, b2, b3 = (float(v) for v in state.b)
    (t11, t12, t13), (t21, t22, t23), (t31, t32, t33) = np.asarray(state.T).tolist()

    def f(angles):
        th, ph = angles
        st = math.sin(th)
        n1, n2, n3 = st * math.cos(ph), st * math.sin(ph), math.cos(th)
        bn = b1 * n1 + b2 * n2 + b3 * n3
        v1 = t11 * n1 + t12 * n2 + t13 * n3
        v2 = t21 * n1 + t22 * n2 + t23 * n3
        v3 = t31 * n1 + t32 * n2 + t33 * n3
        total = 0.0
        for sign in (1.0, -1.0):
            w = 1.0 + sign * bn
            if w <= 1e-15:
                continue
            r = math.sqrt((a1 + sign * v1) ** 2 + (a2 + sign * v2) ** 2 + (a3 + sign * v3) ** 2) / w
            total += 0.5 * w * _h_bloch(r)
        return total

    return f


def _direction(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta) * np.ones_like(phi)], axis=-1)


def _entropy_gap(state):
    """``S(rho_B) - S(rho_AB)``; discord is this plus the minimal conditional entropy."""
    return von_neumann_entropy(partial_trace(state.rho, "B")) - von_neumann_entropy(state.rho)


def discord_B_numeric(state, grid=(64, 128), refine_tol=1e-8, restarts=5, seed=0):
    """B-side discord by grid search over the measurement hemisphere plus simplex refinement.

    Args:
        state: two-qubit state.
        grid: (n_theta, n_phi) resolution of the coarse grid over
            ``theta in [0, pi/2]``, ``phi in [0, 2 pi)``.
        refine_tol: Nelder-Mead tolerance in function value and in angle.
        restarts: extra simplex runs from random starting directions.
        seed: seed for the restart directions.
    """
    n_theta, n_phi = grid
    thetas = np.linspace(0.0, np.pi / 2, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = conditional_entropy_B(state, _direction(tt, pp))
    i, j = np.unravel_index(np.argmin(values), values.shape)

    objective = _scalar_objective(state)
    rng = np.random.default_rng(seed)
    starts = [np.array([thetas[i], phis[j]])]
    for _ in range(restarts):
        z = rng.uniform(-1.0, 1.0)
        starts.append(np.array([np.arccos(z), rng.uniform(0.0, 2 * np.pi)]))

    best_val, best_x = float(values[i, j]), starts[0]
    evaluations = values.size
    for x0 in starts:
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"xatol": refine_tol, "fatol": refine_tol, "maxiter": 2000},
        )
        evaluations += res.nfev
        if res.fun < best_val:
            best_val, best_x = float(res.fun), res.x

    direction = _direction(best_x[0], np.asarray(best_x[1]))
    discord = _entropy_gap(state) + best_val
    return DiscordResult(
        max(discord, 0.0), direction, best_val, DiscordMethod.NUMERIC_PROJECTIVE, evaluations
    )


def is_x_state(state, tol=X_STATE_TOL):
    rho = state.rho
    return max(abs(rho[i, j]) for i, j in _OFF_X) < tol


def discord_x_state(state):
    """B-side discord of an X-state.

    For X-states ``a`` and ``b`` lie on z and T is block diagonal (xy block
    plus T_zz), so the conditional entropy depends on the measurement only
    through its polar angle once the azimuth is aligned with the largest
    singular value of the xy block. The sigma_z and sigma_x candidates are
    evaluated in closed form and the interior of the polar range is searched
    with a bounded scalar minimizer.

    Raises:
        NotXState: some off-X density-matrix entry exceeds 1e-10.
    """
    if not is_x_state(state):
        raise NotXState("state has nonzero coherences outside the X pattern")
    a3, b3, T = state.a[2], state.b[2], state.T
    u, s, vt = np.linalg.svd(T[:2, :2])
    t_perp = s[0]
    t_zz = T[2, 2]

    def cond(theta):
        c, sn = np.cos(theta), np.sin(theta)
        total = 0.0
        for sign in (1.0, -1.0):
            w = 1.0 + sign * b3 * c
            if w <= 1e-15:
                continue
            r = np.hypot(a3 + sign * t_zz * c, t_perp * sn) / w
            total += 0.5 * w * float(_bloch_entropy(r))
        return total

    candidates = {0.0: cond(0.0), np.pi / 2: cond(np.pi / 2)}
    res = minimize_scalar(cond, bounds=(0.0, np.pi / 2), method="bounded", options={"xatol": 1e-10})
    candidates[float(res.x)] = float(res.fun)
    theta = min(candidates, key=candidates.get)
    best = candidates[theta]

    # azimuth of the right singular vector carrying t_perp
    phi = np.arctan2(vt[0, 1], vt[0, 0])
    direction = _direction(theta, np.asarray(phi))
    discord = _entropy_gap(state) + best
    return DiscordResult(max(discord, 0.0), direction, best, DiscordMethod.ANALYTIC_X_STATE, 3 + res.nfev)


def discord_B(state, method="auto", **kwargs):
    """Dispatch to the X-state path when applicable (``method='auto'``)."""
    if method == "xstate" or (method == "auto" and is_x_state(state)):
        return discord_x_state(state)
    if method not in ("auto", "numeric"):
        raise ValueError(f"unknown discord method {method!r}")
    return discord_B_numeric(state, **kwargs)
