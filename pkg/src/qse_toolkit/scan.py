"""Parameter sweeps over local channels, CSV output and small demonstrations."""

import csv
import io
import logging
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .channels import (
    QubitChannel,
    amplitude_damping,
    apply_local_B,
    damping_probability,
    depolarizing,
    identity_channel,
    phase_damping,
)
from .correlations import concurrence, discord_B, mutual_information
from .formats import channel_from_dict, state_from_dict, write_json
from .pauli import TwoQubitState, bell_diagonal, is_valid_bell_diagonal, ket, partial_trace, projector
from .steering import contains_origin, ellipsoid_size, needle_length, steering_ellipsoid

log = logging.getLogger(__name__)

CSV_SCHEMA = "qse-toolkit v1"
P_ONE_SUBSTITUTE = 1.0 - 1e-9
RISE_TOL = 1e-5

CHANNEL_FAMILIES = {
    "ad": amplitude_damping,
    "dephasing": phase_damping,
    "depolarizing": depolarizing,
    "identity": lambda p: identity_channel(),
}


@dataclass
class ScanConfig:
    """Inputs for a sweep of a channel family applied to qubit B.

    ``state`` is a state record (see :mod:`qse_toolkit.formats`). ``channel``
    is a family name from ``CHANNEL_FAMILIES`` or a fixed channel record.
    When ``gamma`` and ``t_grid`` are both set the grid is
    ``p = 1 - exp(-gamma t)`` over ``t_grid = (t_start, t_end, steps)``.
    """

    state: dict = field(default_factory=lambda: {"format": "bell_diag", "c": [0.7, 0.0, 0.0]})
    channel: object = "ad"
    p_start: float = 0.0
    p_end: float = 1.0
    steps: int = 201
    gamma: float = None
    t_grid: tuple = None
    discord_method: str = "auto"
    seed: int = 0
    output: str = None

    def __post_init__(self):
        if not 0.0 <= self.p_start <= self.p_end <= 1.0:
            raise ValueError(f"need 0 <= p_start <= p_end <= 1, got {self.p_start}, {self.p_end}")
        if self.steps < 2 and self.p_start != self.p_end:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if isinstance(self.channel, str) and self.channel not in CHANNEL_FAMILIES:
            raise ValueError(f"unknown channel family {self.channel!r}")
        if (self.gamma is None) != (self.t_grid is None):
            raise ValueError("gamma and t_grid must be given together")

    def p_values(self):
        if self.gamma is not None:
            t0, t1, n = self.t_grid
            return damping_probability(self.gamma, np.linspace(t0, t1, int(n)))
        if self.p_start == self.p_end:
            return np.array([self.p_start])
        return np.linspace(self.p_start, self.p_end, self.steps)

    def initial_state(self):
        return state_from_dict(self.state)

    def channel_at(self, p):
        if isinstance(self.channel, QubitChannel):
            return self.channel
        if isinstance(self.channel, dict):
            return channel_from_dict(self.channel)
        return CHANNEL_FAMILIES[self.channel](float(p))


@dataclass(frozen=True)
class ScanRow:
    p: float
    discord: float
    concurrence: float
    mutual_info: float
    lA: float
    lB: float
    volA: float
    volB: float
    originB: bool


COLUMNS = tuple(f.name for f in fields(ScanRow))


def evolved_state(cfg, initial, p):
    return apply_local_B(initial, cfg.channel_at(p))


def discord_state(cfg, initial, p):
    """State whose discord is reported at grid point ``p``; p = 1 is nudged off the product state."""
    p_eff = P_ONE_SUBSTITUTE if (p >= 1.0 and isinstance(cfg.channel, str)) else p
    return evolved_state(cfg, initial, p_eff)


def _discord(cfg, state):
    kwargs = {"seed": cfg.seed} if cfg.discord_method == "numeric" else {}
    return discord_B(state, cfg.discord_method, **kwargs).discord


def scan_point(cfg, initial, p):
    state = evolved_state(cfg, initial, p)
    e_a = steering_ellipsoid(state, "A")
    e_b = steering_ellipsoid(state, "B")
    l_a, _, vol_a = ellipsoid_size(e_a)
    l_b, _, vol_b = ellipsoid_size(e_b)
    return ScanRow(
        p=float(p),
        discord=float(_discord(cfg, discord_state(cfg, initial, p))),
        concurrence=concurrence(state),
        mutual_info=mutual_information(state),
        lA=l_a,
        lB=l_b,
        volA=vol_a,
        volB=vol_b,
        originB=contains_origin(e_b),
    )


def run_p_scan(cfg):
    """One :class:`ScanRow` per grid point, in grid order; writes CSV when ``cfg.output`` is set."""
    initial = cfg.initial_state()
    rows = [scan_point(cfg, initial, p) for p in cfg.p_values()]
    if cfg.output:
        write_csv(rows, cfg.output)
    return rows


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def rows_to_csv(rows, columns=COLUMNS):
    buf = io.StringIO()
    buf.write(f"# {CSV_SCHEMA}, columns: {','.join(columns)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        d = asdict(row)
        writer.writerow([_fmt(d[c]) for c in columns])
    return buf.getvalue()


def write_csv(rows, path, columns=None):
    if columns is None:
        columns = tuple(f.name for f in fields(rows[0])) if rows else COLUMNS
    try:
        with open(path, "w", newline="") as fh:
            fh.write(rows_to_csv(rows, columns))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


@dataclass(frozen=True)
class C3Row:
    c3: float
    D0: float
    Dm: float
    dD: float
    p_rise: float
    p_peak: float
    valid: bool


C3_COLUMNS = tuple(f.name for f in fields(C3Row))


def discord_profile(ps, discords):
    """Summarize a discord-vs-p curve.

    Returns (D0, Dm, dD, p_rise, p_peak): the initial value, the largest
    value before p = 1, the largest rise from a valley to a later peak, the
    first p where the curve exceeds its running minimum by ``RISE_TOL`` and
    the location of the maximum.
    """
    ps = np.asarray(ps, dtype=float)
    d = np.asarray(discords, dtype=float)
    interior = ps < 1.0 if np.any(ps < 1.0) else np.ones_like(ps, dtype=bool)
    d_in, p_in = d[interior], ps[interior]
    rise = d_in - np.minimum.accumulate(d_in)
    risen = np.flatnonzero(rise > RISE_TOL)
    k = int(np.argmax(d_in))
    return (
        float(d[0]),
        float(d_in[k]),
        float(rise.max()),
        float(p_in[risen[0]]) if risen.size else math.nan,
        float(p_in[k]),
    )


def run_c3_scan(c1, c2, c3_values, p_start=0.0, p_end=1.0, steps=201, output=None):
    """Amplitude-damping discord profile for each Bell-diagonal ``(c1, c2, c3)``.

    Non-physical triples produce a row with ``valid=False`` and NaN entries.
    """
    cfg = ScanConfig(p_start=p_start, p_end=p_end, steps=steps)
    ps = cfg.p_values()
    rows = []
    for c3 in c3_values:
        c = [c1, c2, float(c3)]
        if not is_valid_bell_diagonal(c):
            log.warning("skipping non-physical Bell-diagonal triple %s", c)
            rows.append(C3Row(float(c3), *([math.nan] * 5), False))
            continue
        initial = bell_diagonal(c)
        ds = [_discord(cfg, discord_state(cfg, initial, p)) for p in ps]
        rows.append(C3Row(float(c3), *discord_profile(ps, ds), True))
    if output:
        write_csv(rows, output, C3_COLUMNS)
    return rows


def argmax_delta_d(rows):
    valid = [r for r in rows if r.valid]
    return max(valid, key=lambda r: r.dD).c3


def ellipsoid_record(state, side):
    return steering_ellipsoid(state, side).to_dict()


def export_ellipsoid(state, side, out=None):
    """Ellipsoid JSON for ``state`` (a state or a state record); written to ``out`` if given."""
    if isinstance(state, dict):
        state = state_from_dict(state)
    record = ellipsoid_record(state, side)
    if out is not None:
        write_json(record, out)
    return record


def needle_pair(delta):
    """The two needle states compared in the length demonstration.

    ``rho1`` mixes the |+>|1>, |0>|0> needle with white noise on B and
    ``rho2`` swaps |1> for ``delta|0> + sqrt(1-delta^2)|1>``.
    """
    plus, zero, one = projector(ket(1, 1)), projector(ket(1, 0)), projector(ket(0, 1))
    base = 0.5 * np.kron(plus, one) + 0.5 * np.kron(zero, zero)
    rho_a = partial_trace(base, "A")
    rho1 = (1 - delta) * base + delta * np.kron(rho_a, np.eye(2) / 2)
    phi = projector(ket(delta, np.sqrt(1 - delta**2)))
    rho2 = 0.5 * np.kron(plus, phi) + 0.5 * np.kron(zero, zero)
    return TwoQubitState(rho1), TwoQubitState(rho2)


def demo_needle(delta=0.1):
    """Compare A-needle lengths of the pair from :func:`needle_pair`.

    A local channel on B cannot lengthen A's ellipsoid, so ``rho1 -> rho2``
    is ruled out whenever ``l(E_A^1) < l(E_A^2)``.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    rho1, rho2 = needle_pair(delta)
    l1 = needle_length(steering_ellipsoid(rho1, "A"))
    l2 = needle_length(steering_ellipsoid(rho2, "A"))
    return {
        "delta": delta,
        "lA1": l1,
        "lA2": l2,
        "lA1_expected": math.sqrt(2) * (1 - delta),
        "lA2_expected": math.sqrt(2),
        "mutual_info1": mutual_information(rho1),
        "mutual_info2": mutual_information(rho2),
        "rho1_to_rho2_possible": bool(l2 <= l1 + 1e-9),
    }

