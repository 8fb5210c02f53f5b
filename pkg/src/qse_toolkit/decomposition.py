"""Needle states: split into two product terms and rebuild from a classical state.

A state whose Pauli matrix has rank 2 can be written as
``p0 rhoA0 (x) rhoB0 + p1 rhoA1 (x) rhoB1``. Taking ``rhoB0, rhoB1`` at the
two ends of B's steering needle makes every A-component positive, and the
state is then the image of a quantum-classical state under a four-Kraus
channel on B.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .channels import QubitChannel, apply_local_B
from .correlations import discord_B_numeric
from .exceptions import DecompositionInfeasible, NotANeedleState
from .pauli import (
    PSD_TOL,
    SingleQubitState,
    TwoQubitState,
    density_from_bloch,
    hermitize,
    project_psd,
)
from .steering import is_radial_segment, steering_ellipsoid

RANK_REL_TOL = 1e-9
RESIDUAL_TOL = 1e-9
PROB_FLOOR = 1e-10
DISCORD_ZERO = 1e-6


def theta_rank(state, rel_tol=RANK_REL_TOL):
    s = np.linalg.svd(np.asarray(state.theta), compute_uv=False)
    return int(np.sum(s > rel_tol * s[0]))


@dataclass(frozen=True)
class NeedleDecomposition:
    p0: float
    p1: float
    rhoA0: SingleQubitState
    rhoA1: SingleQubitState
    rhoB0: SingleQubitState
    rhoB1: SingleQubitState
    residual: float = 0.0

    def reconstruct(self):
        return self.p0 * np.kron(self.rhoA0.rho, self.rhoB0.rho) + self.p1 * np.kron(
            self.rhoA1.rho, self.rhoB1.rho
        )


@dataclass(frozen=True)
class PreparationRecipe:
    """Quantum-classical input and B-channel that together reproduce a needle state."""

    classical_state: TwoQubitState
    channel: QubitChannel
    eigenvalues: tuple
    psi: tuple
    psi_perp: tuple

    def prepare(self):
        return apply_local_B(self.classical_state, self.channel)


def needle_decompose(state):
    """Write a rank-2 state as two product terms using the endpoints of its B needle.

    Raises:
        NotANeedleState: rank of the Pauli matrix is not 2.
        DecompositionInfeasible: the solved components are not valid states
            (``diagnostics`` on the exception holds the intermediate data).
    """
    rank = theta_rank(state)
    if rank != 2:
        raise NotANeedleState(f"Pauli matrix has rank {rank}, need 2")
    e_b = steering_ellipsoid(state, "B")
    beta0, beta1 = e_b.endpoints()
    B = np.column_stack([np.r_[1.0, beta0], np.r_[1.0, beta1]])
    theta = np.asarray(state.theta)
    # theta = X B^T  ->  B X^T = theta^T
    Xt, *_ = np.linalg.lstsq(B, theta.T, rcond=None)
    X = Xt.T
    residual = float(np.max(np.abs(X @ B.T - theta)))
    p = X[0, :]
    diagnostics = {
        "theta": theta.tolist(),
        "endpoints": [beta0.tolist(), beta1.tolist()],
        "X": X.tolist(),
        "residual": residual,
    }
    if residual > RESIDUAL_TOL:
        raise DecompositionInfeasible(f"least-squares residual {residual:.3e}", diagnostics)
    if np.any(p < PROB_FLOOR):
        raise DecompositionInfeasible(f"component weight below floor: {p.tolist()}", diagnostics)
    alphas = [X[1:, k] / p[k] for k in range(2)]
    norms = [float(np.linalg.norm(v)) for v in alphas]
    if max(norms) > 1.0 + PSD_TOL:
        raise DecompositionInfeasible(f"A-component Bloch norms {norms} exceed 1", diagnostics)
    alphas = [v / max(1.0, n) for v, n in zip(alphas, norms)]
    betas = [v / max(1.0, float(np.linalg.norm(v))) for v in (beta0, beta1)]
    return NeedleDecomposition(
        float(p[0]),
        float(p[1]),
        SingleQubitState(density_from_bloch(alphas[0])),
        SingleQubitState(density_from_bloch(alphas[1])),
        SingleQubitState(density_from_bloch(betas[0])),
        SingleQubitState(density_from_bloch(betas[1])),
        residual,
    )


def build_preparation(dec):
    """Classical state on the computational basis plus the four-Kraus channel mapping ``|i><i|`` to ``rhoB_i``."""
    basis = np.eye(2, dtype=complex)
    kraus, lams, psis, perps = [], [], [], []
    for i, rho_b in enumerate((dec.rhoB0, dec.rhoB1)):
        w, v = np.linalg.eigh(rho_b.rho)
        lam = float(np.clip(w[1], 0.0, 1.0))
        psi, perp = v[:, 1], v[:, 0]
        phi = basis[:, i]
        kraus.append(np.sqrt(lam) * np.outer(psi, phi.conj()))
        kraus.append(np.sqrt(1.0 - lam) * np.outer(perp, phi.conj()))
        lams.append(lam)
        psis.append(psi)
        perps.append(perp)
    rho_qc = dec.p0 * np.kron(dec.rhoA0.rho, np.diag([1.0, 0.0])) + dec.p1 * np.kron(
        dec.rhoA1.rho, np.diag([0.0, 1.0])
    )
    classical = TwoQubitState(project_psd(hermitize(rho_qc)))
    return PreparationRecipe(classical, QubitChannel(kraus), tuple(lams), tuple(psis), tuple(perps))


@dataclass(frozen=True)
class TheoremReport:
    """Consistency of the needle/discord/preparability trichotomy for one state."""

    dim_B: int
    radial_B: bool
    discord: float
    applicable: bool
    decomposed: bool
    residual: float
    consistent: bool
    note: str = ""

    def to_dict(self):
        return asdict(self)


def verify_theorem(state, discord_kwargs=None):
    """Check that a discordant state is locally preparable iff its B ellipsoid is a non-radial needle."""
    e_b = steering_ellipsoid(state, "B")
    radial = is_radial_segment(e_b, 1e-8)
    discord = discord_B_numeric(state, **(discord_kwargs or {})).discord
    discordant = discord > DISCORD_ZERO
    if e_b.dim >= 2:
        return TheoremReport(
            e_b.dim, radial, discord, False, False, float("nan"), True,
            "ellipsoid dimension above 1; statement not applicable",
        )
    if e_b.dim == 0:
        return TheoremReport(
            0, True, discord, True, True, 0.0, not discordant, "product state"
        )
    try:
        dec = needle_decompose(state)
        recipe = build_preparation(dec)
        residual = float(np.max(np.abs(recipe.prepare().rho - state.rho)))
        decomposed = residual <= RESIDUAL_TOL
        note = ""
    except DecompositionInfeasible as exc:
        decomposed, residual, note = False, float("nan"), str(exc)
    consistent = decomposed and (discordant == (not radial))
    return TheoremReport(1, radial, discord, True, decomposed, residual, consistent, note)
