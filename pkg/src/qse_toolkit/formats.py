"""JSON interchange for states, channels and ellipsoids.

State files carry a ``format`` discriminator::

    {"format": "bell_diag", "c": [c1, c2, c3]}
    {"format": "theta", "theta": [[...4x4...]]}
    {"format": "density", "re": [[...4x4...]], "im": [[...4x4...]]}

Channel files likewise::

    {"format": "ad", "p": 0.3}
    {"format": "kraus", "ops": [{"re": [[2x2]], "im": [[2x2]]}, ...]}
    {"format": "affine", "M": [[3x3]], "t": [3]}
"""

import json
from pathlib import Path

import numpy as np

from .channels import affine_channel, amplitude_damping, channel_from_kraus
from .exceptions import InvalidChannel, InvalidState, QSEError
from .pauli import (
    HERMITIAN_TOL,
    PSD_TOL,
    TwoQubitState,
    bell_diagonal,
    density_from_theta,
    project_psd,
)


def read_json(path):
    path = Path(path)
    try:
        with path.open() as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidState(f"{path}: malformed JSON ({exc})") from exc


def write_json(obj, path):
    path = Path(path)
    with path.open("w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _matrix(obj, shape, what):
    try:
        m = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidState(f"{what}: not a numeric array") from exc
    if m.shape != shape:
        raise InvalidState(f"{what}: expected shape {shape}, got {m.shape}")
    return m


def state_from_dict(d):
    """Build a validated, normalized :class:`TwoQubitState` from a state record."""
    if not isinstance(d, dict) or "format" not in d:
        raise InvalidState("state record needs a 'format' field")
    fmt = d["format"]
    if fmt == "bell_diag":
        c = _matrix(d.get("c"), (3,), "c")
        return bell_diagonal(c)
    if fmt == "theta":
        return density_from_theta(_matrix(d.get("theta"), (4, 4), "theta"))
    if fmt == "density":
        re = _matrix(d.get("re"), (4, 4), "re")
        im = _matrix(d.get("im", np.zeros((4, 4))), (4, 4), "im")
        rho = re + 1j * im
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if tr <= 0:
            raise InvalidState(f"density matrix has non-positive trace {tr}")
        min_eig = np.linalg.eigvalsh(rho / tr).min()
        if min_eig < -PSD_TOL:
            raise InvalidState(f"density matrix is not positive (min eigenvalue {min_eig:.3e})")
        return TwoQubitState(project_psd(rho))
    raise InvalidState(f"unknown state format {fmt!r}")


def state_to_dict(state, fmt="density"):
    if fmt == "density":
        return {"format": "density", "re": state.rho.real.tolist(), "im": state.rho.imag.tolist()}
    if fmt == "theta":
        return {"format": "theta", "theta": np.asarray(state.theta).tolist()}
    raise ValueError(f"unknown state format {fmt!r}")


def load_state(path):
    path = Path(path)
    try:
        return state_from_dict(read_json(path))
    except InvalidState as exc:
        raise InvalidState(f"{path}: {exc}") from exc


def channel_from_dict(d):
    if not isinstance(d, dict) or "format" not in d:
        raise InvalidChannel("channel record needs a 'format' field")
    fmt = d["format"]
    try:
        if fmt == "ad":
            return amplitude_damping(float(d["p"]))
        if fmt == "kraus":
            ops = [
                np.asarray(op["re"], dtype=float)
                + 1j * np.asarray(op.get("im", np.zeros((2, 2))), dtype=float)
                for op in d["ops"]
            ]
            return channel_from_kraus(ops)
        if fmt == "affine":
            return affine_channel(np.asarray(d["M"], dtype=float), np.asarray(d["t"], dtype=float))
    except KeyError as exc:
        raise InvalidChannel(f"channel record is missing {exc}") from exc
    except QSEError:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidChannel(f"malformed channel record: {exc}") from exc
    raise InvalidChannel(f"unknown channel format {fmt!r}")


def channel_to_dict(channel, fmt="kraus"):
    if fmt == "kraus":
        return {
            "format": "kraus",
            "ops": [{"re": k.real.tolist(), "im": k.imag.tolist()} for k in channel.kraus],
        }
    if fmt == "affine":
        return {"format": "affine", "M": channel.M.tolist(), "t": channel.t.tolist()}
    raise ValueError(f"unknown channel format {fmt!r}")


def load_channel(path):
    return channel_from_dict(read_json(path))
