"""Quantum steering ellipsoids of two-qubit states under local qubit channels."""

__version__ = "0.1.0"

from .channels import (
    ChannelClass,
    QubitChannel,
    affine_channel,
    amplitude_damping,
    apply_local_B,
    apply_local_B_affine,
    channel_from_kraus,
    classify,
    compose,
    identity_channel,
)
from .correlations import (
    DiscordResult,
    concurrence,
    discord_B,
    discord_B_numeric,
    discord_x_state,
    mutual_information,
    trace_distance,
    von_neumann_entropy,
)
from .decomposition import (
    NeedleDecomposition,
    PreparationRecipe,
    TheoremReport,
    build_preparation,
    needle_decompose,
    verify_theorem,
)
from .exceptions import *  # noqa: F401,F403
from .pauli import (
    PauliTheta,
    SingleQubitState,
    TwoQubitState,
    bell_diagonal,
    density_from_theta,
    reduced_state,
    theta_from_density,
    validate_state,
)
from .steering import (
    Ellipsoid,
    contains_origin,
    ellipsoid_size,
    is_radial_segment,
    needle_length,
    slocc_normalize,
    steered_state,
    steering_ellipsoid,
)
