"""Randomized property suites over the whole toolkit.

Each suite gets its own generator spawned from the master seed, so results
do not depend on which suites run or in what order.
"""

from dataclasses import dataclass, field

import numpy as np

from .channels import (
    ChannelClass,
    QubitChannel,
    amplitude_damping,
    apply_local_B,
    apply_local_B_affine,
    classify,
    unitary_channel,
)
from .correlations import (
    concurrence,
    discord_B_numeric,
    discord_x_state,
    mutual_information,
    trace_distance,
)
from .decomposition import build_preparation, needle_decompose, theta_rank
from .pauli import (
    TwoQubitState,
    bell_diagonal,
    density_from_theta,
    hermitize,
    partial_trace,
    theta_from_density,
)
from .sampling import (
    random_bell_diagonal,
    random_bloch,
    random_channel,
    random_density,
    random_needle_state,
    random_quantum_classical,
    random_state,
    random_unitary,
    random_x_state,
)
from .steering import (
    ellipsoid_size,
    is_radial_segment,
    steered_state,
    steering_ellipsoid,
)


@dataclass
class SuiteResult:
    """Pass/fail counts for one suite; ``worst`` is the largest ``observed - bound``."""

    name: str
    checked: int = 0
    failed: int = 0
    worst: float = -np.inf
    notes: list = field(default_factory=list)

    def check(self, observed, bound, what=""):
        excess = float(observed) - float(bound)
        self.checked += 1
        self.worst = max(self.worst, excess)
        if excess > 0:
            self.failed += 1
            if len(self.notes) < 5:
                self.notes.append(f"{what}: {observed!r} > {bound!r}")

    def require(self, ok, what=""):
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.notes) < 5:
                self.notes.append(what)

    @property
    def passed(self):
        return self.checked > 0 and self.failed == 0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        worst = "n/a" if self.worst == -np.inf else f"{self.worst:.3e}"
        return f"{status} {self.name}: {self.checked - self.failed}/{self.checked} ok, worst excess {worst}"


@dataclass
class VerifyReport:
    seed: int
    trials: int
    suites: list

    @property
    def ok(self):
        return all(s.passed for s in self.suites)

    def lines(self):
        out = [s.line() for s in self.suites]
        for s in self.suites:
            out.extend(f"  {s.name}: {n}" for n in s.notes)
        out.append(f"{'ALL PASS' if self.ok else 'FAILURES'} (seed={self.seed}, trials={self.trials})")
        return out


def _mixed_state(rng, k):
    kinds = (
        lambda: random_state(rng),
        lambda: random_state(rng, rank=int(rng.integers(1, 4))),
        lambda: random_needle_state(rng),
        lambda: random_quantum_classical(rng),
        lambda: random_x_state(rng),
        lambda: bell_diagonal(random_bell_diagonal(rng)),
    )
    return kinds[k % len(kinds)]()


def _channel_pool(rng, k):
    """Random CPTP channels with every fourth one unitary (a length-preserving boundary case)."""
    if k % 4 == 0:
        return unitary_channel(random_unitary(rng))
    return random_channel(rng)


def suite_pauli_roundtrip(rng, n, **_):
    res = SuiteResult("pauli_roundtrip")
    for k in range(n):
        s = _mixed_state(rng, k)
        th = np.asarray(s.theta)
        back = np.asarray(theta_from_density(density_from_theta(th)))
        res.check(np.max(np.abs(back - th)), 1e-12, "round trip")
        res.require(th[0, 0] == 1.0, "theta[0][0]")
        res.check(np.max(np.abs(th)), 1.0 + 1e-12, "coefficient range")
        ra = s.reduced("A").bloch
        rb = s.reduced("B").bloch
        res.check(max(np.max(np.abs(ra - s.a)), np.max(np.abs(rb - s.b))), 1e-12, "marginals")
    return res


def suite_channel_routes(rng, n, **_):
    res = SuiteResult("kraus_vs_affine")
    for k in range(n):
        s = _mixed_state(rng, k)
        ch = _channel_pool(rng, k)
        d = np.max(np.abs(apply_local_B(s, ch).rho - apply_local_B_affine(s, ch).rho))
        res.check(d, 1e-10, "application routes")
        tp = np.max(np.abs(sum(kk.conj().T @ kk for kk in ch.kraus) - np.eye(2)))
        res.check(tp, 1e-10, "trace preservation")
        res.check(-np.linalg.eigvalsh(hermitize(ch.choi)).min(), 1e-10, "Choi positivity")
    for p in np.r_[0.0, 1.0, rng.uniform(size=n)]:
        choi = amplitude_damping(float(p)).choi
        res.check(-np.linalg.eigvalsh(hermitize(choi)).min(), 1e-10, f"AD Choi p={p}")
    return res


def suite_data_processing(rng, n, **_):
    res = SuiteResult("data_processing")
    for k in range(n):
        ch = _channel_pool(rng, k)
        r1, r2 = random_density(rng, 2), random_density(rng, 2)
        res.check(trace_distance(ch(r1), ch(r2)), trace_distance(r1, r2) + 1e-10, "trace distance")
        s = _mixed_state(rng, k)
        res.check(
            mutual_information(apply_local_B(s, ch)), mutual_information(s) + 1e-9, "mutual information"
        )
    return res


def _completely_decohering(rng):
    """Measure in a random basis and prepare states diagonal in a second random basis."""
    u, v = random_unitary(rng), random_unitary(rng)
    kraus = []
    for k in range(2):
        w = rng.dirichlet([1.0, 1.0])
        for j in range(2):
            kraus.append(np.sqrt(w[j]) * np.outer(v[:, j], u[:, k].conj()))
    return QubitChannel(kraus)


def _mixed_unitary(rng):
    q = rng.dirichlet(np.ones(3))
    us = [random_unitary(rng) for _ in range(3)]
    return QubitChannel([np.sqrt(w) * u for w, u in zip(q, us)])


def suite_classify(rng, n, qc_samples=None, **_):
    res = SuiteResult("classify_discord")
    qc_samples = qc_samples or max(10, n)
    n_channels = max(1, n // 50)
    makers = [
        (ChannelClass.UNITAL, lambda: unitary_channel(random_unitary(rng))),
        (ChannelClass.UNITAL, lambda: _mixed_unitary(rng)),
        (ChannelClass.COMPLETELY_DECOHERING, lambda: _completely_decohering(rng)),
        (ChannelClass.DISCORD_CREATING, lambda: random_channel(rng)),
        (ChannelClass.DISCORD_CREATING, lambda: amplitude_damping(float(rng.uniform(0.1, 0.9)))),
    ]
    for expected, make in makers:
        for _ in range(n_channels):
            ch = make()
            cls = classify(ch)
            res.require(cls == expected, f"class {cls} != {expected}")
            discords = []
            for _ in range(qc_samples):
                d = discord_B_numeric(apply_local_B(random_quantum_classical(rng), ch)).discord
                discords.append(d)
                if cls == ChannelClass.DISCORD_CREATING and d > 1e-4:
                    break
            if cls == ChannelClass.DISCORD_CREATING:
                res.check(1e-4, max(discords), "no discord created")
            else:
                res.check(max(discords), 1e-6, "discord from a non-creating channel")
    return res


def suite_slocc_invariance(rng, n, **_):
    res = SuiteResult("slocc_invariance")
    for _ in range(n):
        s = random_state(rng)
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        op = np.kron(np.eye(2), g)
        out = op @ s.rho @ op.conj().T
        filtered = TwoQubitState(hermitize(out / np.trace(out).real))
        e0, e1 = steering_ellipsoid(s, "A"), steering_ellipsoid(filtered, "A")
        res.check(np.max(np.abs(e0.center - e1.center)), 1e-8, "center")
        res.check(np.max(np.abs(e0.shape_matrix - e1.shape_matrix)), 1e-8, "shape")
    return res


def suite_dimension(rng, n, **_):
    res = SuiteResult("dimension_rank")
    for k in range(n):
        s = _mixed_state(rng, k)
        r = theta_rank(s)
        da, db = steering_ellipsoid(s, "A").dim, steering_ellipsoid(s, "B").dim
        res.require(da == db == r - 1, f"dims {da}, {db} vs rank {r}")
    return res


def suite_membership(rng, n, **_):
    res = SuiteResult("steering_membership")
    for k in range(n):
        s = _mixed_state(rng, k)
        e_a, e_b = steering_ellipsoid(s, "A"), steering_ellipsoid(s, "B")
        res.require(e_a.contains(s.a, 1e-9), "marginal a inside E_A")
        res.require(e_b.contains(s.b, 1e-9), "marginal b inside E_B")
        x = random_bloch(rng, pure=True)
        for side, e in (("A", e_a), ("B", e_b)):
            out = steered_state(s, x, side)
            if out.probability > 1e-9:
                res.require(e.contains(out.bloch, 1e-9), f"steered vector inside E_{side}")
    return res


def suite_monotonicity(rng, n, inflate_length=0.0, **_):
    res = SuiteResult("length_monotonicity")
    for k in range(n):
        s = random_needle_state(rng) if k % 2 == 0 else bell_diagonal(random_bell_diagonal(rng))
        ch = _channel_pool(rng, k // 2)
        out = apply_local_B(s, ch)
        for side in ("A", "B"):
            before = ellipsoid_size(steering_ellipsoid(s, side))[0]
            after = ellipsoid_size(steering_ellipsoid(out, side))[0] + inflate_length
            res.check(after, before + 1e-9, f"length of E_{side}")
    return res


def suite_needle_discord(rng, n, **_):
    res = SuiteResult("zero_discord_iff_radial")
    for k in range(n):
        s = random_needle_state(rng) if k % 2 == 0 else random_quantum_classical(rng)
        radial = is_radial_segment(steering_ellipsoid(s, "B"), 1e-8)
        d = discord_B_numeric(s).discord
        res.require((d < 1e-6) == radial, f"discord {d:.3e} vs radial={radial}")
        if d > 1e-4:
            res.require(not radial, "discordant needle is radial")
    return res


def suite_x_state(rng, n, **_):
    res = SuiteResult("x_state_agreement")
    for _ in range(n):
        s = random_x_state(rng)
        res.check(abs(discord_x_state(s).discord - discord_B_numeric(s).discord), 1e-4, "x-state discord")
    return res


def suite_discord_unitary_invariance(rng, n, **_):
    res = SuiteResult("discord_local_unitary_invariance")
    for _ in range(max(1, n // 2)):
        s = random_state(rng)
        u = np.kron(random_unitary(rng), random_unitary(rng))
        s2 = TwoQubitState(hermitize(u @ s.rho @ u.conj().T))
        d1 = discord_B_numeric(s, refine_tol=1e-12).discord
        d2 = discord_B_numeric(s2, refine_tol=1e-12).discord
        res.check(abs(d1 - d2), 1e-8, "local unitary")
    return res


def suite_concurrence_monotone(rng, n, **_):
    res = SuiteResult("concurrence_monotone_in_p")
    ps = np.linspace(0.0, 1.0, 100)
    for _ in range(max(1, n // 10)):
        s = bell_diagonal(random_bell_diagonal(rng))
        cs = np.array([concurrence(apply_local_B(s, amplitude_damping(float(p)))) for p in ps])
        res.check(np.max(np.diff(cs)), 1e-10, "concurrence increase")
    return res


def suite_decomposition(rng, n, **_):
    res = SuiteResult("needle_preparation")
    for _ in range(n):
        s = random_needle_state(rng)
        recipe = build_preparation(needle_decompose(s))
        res.check(np.max(np.abs(recipe.prepare().rho - s.rho)), 1e-9, "round trip")
        tp = np.max(np.abs(sum(k.conj().T @ k for k in recipe.channel.kraus) - np.eye(2)))
        res.check(tp, 1e-10, "trace preservation")
        cl = recipe.classical_state.rho
        res.check(np.max(np.abs(partial_trace(cl, "B") - np.diag(np.diag(partial_trace(cl, "B"))))), 1e-12,
                  "classical B marginal")
        dims = (steering_ellipsoid(s, "A").dim, steering_ellipsoid(s, "B").dim)
        res.require(dims == (1, 1), f"needle dims {dims}")
    return res


SUITES = {
    "pauli_roundtrip": suite_pauli_roundtrip,
    "kraus_vs_affine": suite_channel_routes,
    "data_processing": suite_data_processing,
    "classify_discord": suite_classify,
    "slocc_invariance": suite_slocc_invariance,
    "dimension_rank": suite_dimension,
    "steering_membership": suite_membership,
    "length_monotonicity": suite_monotonicity,
    "zero_discord_iff_radial": suite_needle_discord,
    "x_state_agreement": suite_x_state,
    "discord_local_unitary_invariance": suite_discord_unitary_invariance,
    "concurrence_monotone_in_p": suite_concurrence_monotone,
    "needle_preparation": suite_decomposition,
}


def run_verify(trials, seed=42, suites=None, inflate_length=0.0, progress=None):
    """Run the property suites.

    Args:
        trials: random cases per suite (some heavy suites use a fraction).
        seed: master seed; each suite draws from its own spawned stream.
        suites: optional subset of suite names.
        inflate_length: added to every post-channel ellipsoid length; a
            positive value must make the monotonicity suite fail.
        progress: optional callable receiving each finished SuiteResult.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    names = list(SUITES)
    selected = names if suites is None else [s for s in names if s in set(suites)]
    unknown = set(suites or ()) - set(names)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    streams = np.random.SeedSequence(seed).spawn(len(names))
    results = []
    for name, ss in zip(names, streams):
        if name not in selected:
            continue
        rng = np.random.default_rng(ss)
        r = SUITES[name](rng, trials, inflate_length=inflate_length)
        results.append(r)
        if progress:
            progress(r)
    return VerifyReport(seed, trials, results)
