"""Executable verification suites.

Each scope bundles the runtime invariants of one subsystem; the acceptance
scope is the release checklist with pinned tolerances.  The CLI ``verify``
command prints one line per check and fails on any red entry; the test suite
drives the same functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional

import numpy as np

from . import linalg, metrics, protocols, states
from .errors import SeparabilityRangeError, SpinChanError
from .measurement import (
    BELL_SIGNS,
    bell_projectors,
    dichotomic_projectors,
    direction_projectors,
    four_party_contract,
    measure,
    sample_outcome,
)
from .sphere import SphereGrid
from .spin import (
    HalfInteger,
    scs_resolution_residual,
    spin_coherent_state,
    spin_operators,
    wigner_rotation,
)
from .states import (
    BlochVector,
    DensityMatrix,
    equivalent_qudit,
    equivalent_werner,
    maximally_mixed,
    q_function,
    qubit_state,
    s_min,
    separable_decomposition,
)


@dataclass(frozen=True)
class CheckResult:
    scope: str
    name: str
    passed: bool
    detail: str = ""


def _check(scope: str, name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(scope, name, bool(passed), detail)


def _random_bloch(rng, surface: bool = False) -> BlochVector:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if not surface:
        v *= rng.uniform(0.0, 1.0) ** (1 / 3)
    return BlochVector.from_sequence(v)


def _spins(max_twice: int, min_twice: int = 1):
    return [HalfInteger(t) for t in range(min_twice, max_twice + 1)]


# ---------------------------------------------------------------------------
# module scopes


def matrix_kernel_checks() -> list[CheckResult]:
    rng = np.random.default_rng(11)
    out = []
    scope = "matrix-kernel"

    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    prod = linalg.tensor_product(a, b)
    out.append(
        _check(
            scope,
            "tensor product trace is multiplicative",
            abs(np.trace(prod) - np.trace(a) * np.trace(b)) < 1e-10 * abs(np.trace(prod) or 1),
        )
    )

    dims = (2, 3, 2)
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    first = linalg.partial_trace(m, dims, keep=(1,))
    total = linalg.partial_trace(first, (3,), keep=())
    out.append(
        _check(
            scope,
            "composed partial traces equal the full trace",
            abs(complex(total[0, 0]) - np.trace(m)) < 1e-10,
        )
    )

    h = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = h + h.conj().T
    w, v = linalg.hermitian_eig(h)
    recon = (v * w) @ v.conj().T
    out.append(
        _check(
            scope,
            "eigendecomposition reconstructs to 1e-10",
            float(np.max(np.abs(recon - h))) < 1e-10
            and float(np.max(np.abs(v.conj().T @ v - np.eye(8)))) < 1e-10,
        )
    )

    p = h @ h.conj().T / 100.0
    r = linalg.psd_sqrt(p)
    out.append(
        _check(scope, "psd sqrt squares back to 1e-8", float(np.max(np.abs(r @ r - p))) < 1e-8)
    )

    g = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    g = g + g.conj().T
    ua = linalg.unitary_from_generator(g, 0.37)
    ub = linalg.unitary_from_generator(g, 0.21)
    uab = linalg.unitary_from_generator(g, 0.58)
    out.append(
        _check(
            scope,
            "generated unitaries compose additively to 1e-9",
            float(np.max(np.abs(ua @ ub - uab))) < 1e-9,
        )
    )
    return out


def spin_algebra_checks(max_twice: int = 50) -> list[CheckResult]:
    rng = np.random.default_rng(13)
    scope = "spin-algebra"
    worst_comm = 0.0
    worst_trace = 0.0
    worst_overlap = 0.0
    worst_rot = 0.0
    for s in _spins(max_twice):
        ops = spin_operators(s)
        sx, sy, sz = ops.vector()
        comm = max(
            float(np.max(np.abs(sx @ sy - sy @ sx - 1j * sz))),
            float(np.max(np.abs(sy @ sz - sz @ sy - 1j * sx))),
            float(np.max(np.abs(sz @ sx - sx @ sz - 1j * sy))),
        )
        worst_comm = max(worst_comm, comm)

        unit = ops.unit_vector()
        norm = (s.value + 1) * (2 * s.value + 1) / (3 * s.value)
        for i in range(3):
            for j in range(3):
                want = norm if i == j else 0.0
                got = float(np.trace(unit[i] @ unit[j]).real)
                worst_trace = max(worst_trace, abs(got - want))

        for _ in range(2):
            t1, p1 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            t2, p2 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            s1 = spin_coherent_state(s, t1, p1)
            s2 = spin_coherent_state(s, t2, p2)
            got = abs(np.vdot(s1.amplitudes, s2.amplitudes)) ** 2
            want = ((1 + float(s1.direction @ s2.direction)) / 2) ** s.twice
            worst_overlap = max(worst_overlap, abs(got - want))

    for s in (HalfInteger(1), HalfInteger(4), HalfInteger(9)):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0, 2 * np.pi)
        u = wigner_rotation(s, axis, angle)
        ops = spin_operators(s)
        rot = _axis_angle_matrix(axis, angle)
        for i in range(3):
            transformed = u.conj().T @ ops.vector()[i] @ u
            want = sum(rot[i, j] * ops.vector()[j] for j in range(3))
            worst_rot = max(worst_rot, float(np.max(np.abs(transformed - want))))

    return [
        _check(scope, "commutators close to 1e-12", worst_comm < 1e-12, f"worst {worst_comm:.2e}"),
        _check(
            scope,
            "unit-spin trace orthogonality to 1e-10",
            worst_trace < 1e-10,
            f"worst {worst_trace:.2e}",
        ),
        _check(
            scope,
            "coherent-state overlap law to 1e-10",
            worst_overlap < 1e-10,
            f"worst {worst_overlap:.2e}",
        ),
        _check(
            scope,
            "rotations conjugate the spin vector as SO(3) to 1e-10",
            worst_rot < 1e-10,
            f"worst {worst_rot:.2e}",
        ),
    ]


def _axis_angle_matrix(axis, angle: float) -> np.ndarray:
    """SO(3) matrix for U^dag S_i U with U = exp(-i angle S.axis)."""
    n = np.asarray(axis, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    cross = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return c * np.eye(3) + s * cross + (1 - c) * np.outer(n, n)


def state_factory_checks() -> list[CheckResult]:
    rng = np.random.default_rng(17)
    scope = "state-factory"
    out = []

    p = _random_bloch(rng)
    qd = equivalent_qudit(HalfInteger(1), p)
    qb = qubit_state(p)
    out.append(
        _check(
            scope,
            "spin-1/2 twin is the qubit itself",
            qd.dim == 2 and float(np.max(np.abs(qd.matrix - qb.matrix))) < 1e-14,
        )
    )

    worst = 0.0
    for s in _spins(20):
        p = _random_bloch(rng)
        if p.norm < 1e-6:
            continue
        direction = p.vec / p.norm
        obs = states.retrieval_observable(s, direction)
        got = equivalent_qudit(s, p).expectation(obs)
        worst = max(worst, abs(got - p.norm))
    out.append(
        _check(
            scope,
            "retrieval observable reads |P| on every twin to 1e-10",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )

    worst = 0.0
    for s in (HalfInteger(1), HalfInteger(3), HalfInteger(8)):
        for alpha in (-0.3, 0.2, 0.7, 1.0):
            ch = equivalent_werner(alpha, s)
            eigs = np.sort(np.linalg.eigvalsh(ch.matrix))
            lo = (1 - alpha) / (2 * s.dim)
            hi = (1 + alpha * (s.value + 1) / s.value) / (2 * s.dim)
            want = np.sort(np.concatenate([np.full(s.twice + 2, lo), np.full(s.twice, hi)]))
            worst = max(worst, float(np.max(np.abs(eigs - want))))
    out.append(
        _check(
            scope,
            "channel twin spectrum matches the two-level closed form",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )

    ok = True
    for alpha, s in ((0.5, HalfInteger(2)), (0.8, HalfInteger(8))):
        ens = separable_decomposition(alpha, s, SphereGrid.for_spin(s))
        target = equivalent_werner(alpha, s)
        resid = float(np.max(np.abs(ens.reconstruct().matrix - target.matrix)))
        ok = ok and resid < 1e-8 and float(ens.weights.min()) >= 0.0
    out.append(_check(scope, "product ensemble reconstructs the channel twin", ok))

    grid_alphas = np.arange(0.0, 0.96, 0.05)
    mins = [s_min(a).twice for a in grid_alphas]
    out.append(
        _check(
            scope,
            "minimal separable spin is monotone in |alpha|",
            all(b >= a for a, b in zip(mins, mins[1:])),
        )
    )
    return out


def measurement_checks() -> list[CheckResult]:
    rng = np.random.default_rng(19)
    scope = "measurement-engine"
    out = []

    # constructors self-validate completeness, idempotence and orthogonality
    for name, build in (
        ("Bell", bell_projectors),
        ("exchange", lambda: dichotomic_projectors(HalfInteger(3))),
        ("direction", lambda: direction_projectors((0.0, 1.0, 0.0))),
    ):
        try:
            build()
            out.append(_check(scope, f"{name} projector family satisfies its contracts", True))
        except SpinChanError as exc:
            out.append(
                _check(scope, f"{name} projector family satisfies its contracts", False, str(exc))
            )

    worst = 0.0
    for s in _spins(6):
        for alpha in (-0.3, 0.5, 0.9):
            if alpha < -s.value / (s.value + 1):
                continue
            p = _random_bloch(rng)
            joint = DensityMatrix(
                linalg.tensor_product(qubit_state(p).matrix, equivalent_werner(alpha, s).matrix),
                (2, 2, s.dim),
            )
            records = measure(joint, bell_projectors().on(0, 1), keep=(2,))
            total = sum(r.probability for r in records)
            worst = max(worst, abs(total - 1.0))
            worst = max(worst, max(abs(r.probability - 0.25) for r in records))
    out.append(
        _check(
            scope,
            "Bell outcomes on the channel are uniform at 1/4 to 1e-12",
            worst < 1e-12,
            f"worst {worst:.2e}",
        )
    )

    worst = 0.0
    for s in (HalfInteger(1), HalfInteger(2), HalfInteger(4), HalfInteger(6)):
        ab = equivalent_werner(0.6, s)
        cd = DensityMatrix(
            linalg.permute_subsystems(equivalent_werner(0.45, s).matrix, (2, s.dim), (1, 0)),
            (s.dim, 2),
        )
        for _, proj in bell_projectors().items():
            p_f, post_f = four_party_contract(ab, cd, proj, method="factored")
            p_d, post_d = four_party_contract(ab, cd, proj, method="dense")
            worst = max(worst, abs(p_f - p_d))
            worst = max(worst, float(np.max(np.abs(post_f.matrix - post_d.matrix))))
    out.append(
        _check(
            scope,
            "factored four-party contraction equals the dense path",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )

    records = measure(
        equivalent_werner(0.5, HalfInteger(2)),
        direction_projectors((0.0, 0.0, 1.0)),
        keep=(1,),
    )
    draws = [sample_outcome(records, seed) for seed in range(2000)]
    frac = draws.count("plus") / len(draws)
    out.append(
        _check(
            scope,
            "seeded sampling tracks the outcome distribution",
            abs(frac - 0.5) < 0.05,
            f"plus fraction {frac:.3f}",
        )
    )
    return out


def protocol_checks(
    bell_corrections: Optional[Mapping] = None, max_twice: int = 6
) -> list[CheckResult]:
    rng = np.random.default_rng(23)
    scope = "protocol-suite"
    out = []

    worst_resid = 0.0
    worst_prob = 0.0
    for s in _spins(max_twice):
        for alpha in (-0.3, 0.5, 0.8):
            if alpha < -s.value / (s.value + 1):
                continue
            p = _random_bloch(rng)
            tr = protocols.protocol_unknown_qubit(
                p, alpha, s, seed=7, corrections=bell_corrections
            )
            worst_resid = max(worst_resid, tr.max_branch_residual)
            worst_prob = max(worst_prob, max(abs(b.probability - 0.25) for b in tr.branches))
    out.append(
        _check(
            scope,
            "protocol A corrected branches all reach the closed form",
            worst_resid < 1e-10,
            f"worst residual {worst_resid:.2e}",
        )
    )
    out.append(
        _check(
            scope,
            "protocol A outcome probabilities are 1/4 to 1e-12",
            worst_prob < 1e-12,
            f"worst {worst_prob:.2e}",
        )
    )

    worst = 0.0
    for _ in range(4):
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        tr = protocols.protocol_known_qubit(m, 0.7, HalfInteger(3), seed=5)
        worst = max(worst, tr.max_branch_residual)
        worst = max(worst, max(abs(b.probability - 0.5) for b in tr.branches))
    out.append(
        _check(
            scope,
            "protocol B branches agree after the perpendicular flip",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )

    worst = 0.0
    recover = 0.0
    for s in _spins(max_twice):
        p = _random_bloch(rng)
        tr = protocols.protocol_unknown_qudit(p, 0.6, s, seed=3)
        worst = max(worst, tr.max_branch_residual)
        plus_prob = next(b.probability for b in tr.branches if b.outcome == "plus")
        worst = max(worst, abs(plus_prob - (s.value + 1) / (2 * s.value + 1)))
        got = np.asarray(tr.retrieval["recovered"])
        recover = max(recover, float(np.max(np.abs(got - 0.6 * p.vec))))
    out.append(
        _check(
            scope,
            "protocol C branches, probabilities and retrieval verify",
            worst < 1e-10 and recover < 1e-10,
            f"worst residual {worst:.2e}, retrieval {recover:.2e}",
        )
    )

    worst = 0.0
    for s in _spins(4):
        tr = protocols.protocol_discord_swap(0.8, 0.5, s, seed=11, corrections=bell_corrections)
        worst = max(worst, tr.max_branch_residual)
        worst = max(worst, max(abs(b.probability - 0.25) for b in tr.branches))
    out.append(
        _check(
            scope,
            "protocol D corrected branches reach the swapped closed form",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )
    return out


def metrics_checks() -> list[CheckResult]:
    scope = "metrics"
    out = []
    z = BlochVector(0.0, 0.0, 1.0)

    worst = 0.0
    for s in _spins(20):
        scale = metrics.channel_distance_scale(s)
        for alpha in (-0.3, 0.2, 0.5, 0.9):
            ref = equivalent_qudit(s, z)
            got = metrics.hs_distance(ref, equivalent_qudit(s, z.scaled(alpha)))
            worst = max(worst, abs(got - abs(1 - alpha) * scale))
        worst = max(worst, abs(metrics.hs_distance(ref, maximally_mixed(s.dim)) - scale))
    out.append(
        _check(
            scope,
            "distance closed forms hold across the grid to 1e-10",
            worst < 1e-10,
            f"worst {worst:.2e}",
        )
    )

    values = [metrics.relative_distance(0.9, s) for s in _spins(50)]
    out.append(
        _check(
            scope,
            "relative distance strictly decreases with spin",
            all(b < a for a, b in zip(values, values[1:])),
        )
    )

    wit, _ = metrics.disturbance_witness(equivalent_werner(0.8, HalfInteger(8)))
    want = 0.8 * metrics.channel_distance_scale(HalfInteger(8))
    out.append(
        _check(
            scope,
            "disturbance witness matches its closed form on the channel",
            abs(wit - want) < 1e-6,
            f"got {wit:.8f}, want {want:.8f}",
        )
    )

    ordering = True
    for alpha in np.arange(0.05, 0.91, 0.05):
        s = s_min(alpha)
        f = metrics.fidelity(
            equivalent_qudit(s, z), equivalent_qudit(s, z.scaled(alpha))
        )
        ordering = ordering and f >= (1 + alpha) / 2 - 1e-12
    out.append(
        _check(scope, "twin transfer fidelity dominates the qubit benchmark", ordering)
    )
    return out


# ---------------------------------------------------------------------------
# acceptance checklist


def _criterion_mixed_state_fidelity() -> CheckResult:
    s = HalfInteger(40)
    f = metrics.fidelity(
        equivalent_qudit(s, BlochVector(0.0, 0.0, 1.0)), maximally_mixed(s.dim)
    )
    return _check(
        "acceptance",
        "criterion-01 spin-20 twin of a pure qubit has fidelity 0.876(1) with the mixed state",
        abs(f - 0.876) <= 0.001,
        f"fidelity {f:.6f}",
    )


def _criterion_protocol_a() -> CheckResult:
    rng = np.random.default_rng(101)
    blochs = [
        BlochVector(0.0, 0.0, 1.0),
        BlochVector(1.0, 0.0, 0.0),
        BlochVector(0.6, 0.0, 0.8),
    ] + [_random_bloch(rng) for _ in range(5)]
    worst_prob = 0.0
    worst_pre = 0.0
    worst_post = 0.0
    for s in _spins(10):
        ops = spin_operators(s)
        unit = ops.unit_vector()
        for alpha in (-0.3, 0.2, 0.5, 0.8):
            for p in blochs:
                joint = DensityMatrix(
                    linalg.tensor_product(
                        qubit_state(p).matrix, equivalent_werner(alpha, s).matrix
                    ),
                    (2, 2, s.dim),
                )
                records = measure(joint, bell_projectors().on(0, 1), keep=(2,))
                for rec in records:
                    worst_prob = max(worst_prob, abs(rec.probability - 0.25))
                    signs = [-c for c in BELL_SIGNS[rec.label]]
                    want = np.eye(s.dim, dtype=complex)
                    for sg, comp, a in zip(signs, unit, p.vec):
                        want = want + alpha * sg * a * comp
                    want /= s.dim
                    worst_pre = max(
                        worst_pre, float(np.max(np.abs(rec.post_state.matrix - want)))
                    )
                tr = protocols.protocol_unknown_qubit(p, alpha, s, seed=1)
                worst_post = max(worst_post, tr.max_branch_residual)
    passed = worst_prob < 1e-12 and worst_pre < 1e-10 and worst_post < 1e-10
    return _check(
        "acceptance",
        "criterion-02 protocol A probabilities, collapsed states and corrections",
        passed,
        f"prob {worst_prob:.2e}, pre {worst_pre:.2e}, post {worst_post:.2e}",
    )


def _criterion_protocol_b() -> CheckResult:
    rng = np.random.default_rng(103)
    worst_prob = 0.0
    worst = 0.0
    for k in range(10):
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        tr = protocols.protocol_known_qubit(m, 0.6, HalfInteger(4), seed=k)
        worst = max(worst, tr.max_branch_residual)
        worst_prob = max(worst_prob, max(abs(b.probability - 0.5) for b in tr.branches))
    return _check(
        "acceptance",
        "criterion-03 protocol B halves and perpendicular-flip convergence",
        worst < 1e-10 and worst_prob < 1e-12,
        f"residual {worst:.2e}, prob {worst_prob:.2e}",
    )


def _criterion_protocol_c() -> CheckResult:
    rng = np.random.default_rng(107)
    worst_prob = 0.0
    worst_state = 0.0
    worst_retr = 0.0
    for s in _spins(10):
        p = _random_bloch(rng)
        alpha = 0.7
        for seed in (0, 1):
            tr = protocols.protocol_unknown_qudit(p, alpha, s, seed=seed)
            plus = next(b for b in tr.branches if b.outcome == "plus")
            minus = next(b for b in tr.branches if b.outcome == "minus")
            worst_prob = max(
                worst_prob,
                abs(plus.probability - (s.value + 1) / (2 * s.value + 1)),
                abs(minus.probability - s.value / (2 * s.value + 1)),
            )
            worst_state = max(worst_state, tr.max_branch_residual)
            got = np.asarray(tr.retrieval["recovered"])
            worst_retr = max(worst_retr, float(np.max(np.abs(got - alpha * p.vec))))
    return _check(
        "acceptance",
        "criterion-04 protocol C probabilities, branch states and retrieval",
        worst_prob < 1e-12 and worst_state < 1e-10 and worst_retr < 1e-10,
        f"prob {worst_prob:.2e}, state {worst_state:.2e}, retrieval {worst_retr:.2e}",
    )


def _criterion_protocol_d() -> CheckResult:
    worst = 0.0
    worst_dense = 0.0
    for s in _spins(6):
        tr = protocols.protocol_discord_swap(0.8, 0.6, s, seed=2)
        worst = max(worst, tr.max_branch_residual)
        ab = equivalent_werner(0.8, s)
        cd = DensityMatrix(
            linalg.permute_subsystems(equivalent_werner(0.6, s).matrix, (2, s.dim), (1, 0)),
            (s.dim, 2),
        )
        for _, proj in bell_projectors().items():
            p_f, post_f = four_party_contract(ab, cd, proj, method="factored")
            p_d, post_d = four_party_contract(ab, cd, proj, method="dense")
            worst_dense = max(
                worst_dense,
                abs(p_f - p_d),
                float(np.max(np.abs(post_f.matrix - post_d.matrix))),
            )
    return _check(
        "acceptance",
        "criterion-05 protocol D corrected outcomes and dense-path agreement",
        worst < 1e-10 and worst_dense < 1e-10,
        f"residual {worst:.2e}, dense {worst_dense:.2e}",
    )


def _criterion_distances() -> CheckResult:
    z = BlochVector(0.0, 0.0, 1.0)
    worst = 0.0
    for s in _spins(20):
        scale = metrics.channel_distance_scale(s)
        ref = equivalent_qudit(s, z)
        for alpha in (-0.3, 0.2, 0.5, 0.8, 0.9):
            d = metrics.hs_distance(ref, equivalent_qudit(s, z.scaled(alpha)))
            worst = max(worst, abs(d - abs(1 - alpha) * scale))
            worst = max(
                worst, abs(metrics.relative_distance(alpha, s) - alpha * scale)
            )
        worst = max(worst, abs(metrics.hs_distance(ref, maximally_mixed(s.dim)) - scale))
    series = [metrics.relative_distance(0.9, s) for s in _spins(50)]
    decreasing = all(b < a for a, b in zip(series, series[1:]))
    rep = metrics.asymptotics_check(0.9, HalfInteger(100))
    return _check(
        "acceptance",
        "criterion-06 distance closed forms, monotonicity and the large-spin limit",
        worst < 1e-10 and decreasing and rep.limit_gap < 0.02,
        f"worst {worst:.2e}, limit gap {rep.limit_gap:.4f}",
    )


def _criterion_separability() -> CheckResult:
    ok = s_min(0.9).twice == 18
    worst = 0.0
    for alpha, s in ((0.5, HalfInteger(2)), (2 / 3, HalfInteger(4)), (0.9, HalfInteger(18))):
        ens = separable_decomposition(alpha, s, SphereGrid.for_spin(s))
        target = equivalent_werner(alpha, s)
        worst = max(worst, float(np.max(np.abs(ens.reconstruct().matrix - target.matrix))))
        ok = ok and float(ens.weights.min()) >= 0.0
    rejected = False
    try:
        separable_decomposition(0.9, HalfInteger(16), SphereGrid.for_spin(HalfInteger(16)))
    except SeparabilityRangeError:
        rejected = True
    return _check(
        "acceptance",
        "criterion-07 minimal spin, ensemble reconstruction and range rejection",
        ok and worst < 1e-8 and rejected,
        f"worst {worst:.2e}, rejected {rejected}",
    )


def _criterion_spin_identities() -> CheckResult:
    rng = np.random.default_rng(109)
    worst = 0.0
    for s in _spins(50):
        ops = spin_operators(s)
        sx, sy, sz = ops.vector()
        worst = max(worst, float(np.max(np.abs(sx @ sy - sy @ sx - 1j * sz))))
        casimir = sx @ sx + sy @ sy + sz @ sz
        worst = max(
            worst,
            float(np.max(np.abs(casimir - s.value * (s.value + 1) * np.eye(s.dim)))),
        )
        unit = ops.unit_vector()
        norm = (s.value + 1) * (2 * s.value + 1) / (3 * s.value)
        for i in range(3):
            for j in range(3):
                want = norm if i == j else 0.0
                worst = max(worst, abs(float(np.trace(unit[i] @ unit[j]).real) - want))
        t1, p1 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        t2, p2 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        c1 = spin_coherent_state(s, t1, p1)
        c2 = spin_coherent_state(s, t2, p2)
        got = abs(np.vdot(c1.amplitudes, c2.amplitudes)) ** 2
        want = ((1 + float(c1.direction @ c2.direction)) / 2) ** s.twice
        worst = max(worst, abs(got - want))
        worst = max(worst, scs_resolution_residual(s, SphereGrid.for_spin(s)))
    return _check(
        "acceptance",
        "criterion-08 spin identities, overlap law and resolution of identity",
        worst < 1e-10,
        f"worst {worst:.2e}",
    )


def _criterion_q_equivalence() -> CheckResult:
    rng = np.random.default_rng(113)
    grid = SphereGrid.gauss_legendre(10, 20)
    worst = 0.0
    worst_norm = 0.0
    for twice in (2, 10, 40):
        s = HalfInteger(twice)
        p = _random_bloch(rng)
        qb = q_function(qubit_state(p), grid)
        qd = q_function(equivalent_qudit(s, p), grid)
        worst = max(worst, float(np.max(np.abs(qb.values - qd.values))))
        exact = q_function(equivalent_qudit(s, p), SphereGrid.for_spin(s))
        worst_norm = max(worst_norm, abs(exact.quadrature_total - 1.0))
    worst_norm = max(worst_norm, abs(qb.quadrature_total - 1.0))
    return _check(
        "acceptance",
        "criterion-09 coherent-state samples match across dimensions and normalise",
        worst < 1e-10 and worst_norm < 1e-8,
        f"match {worst:.2e}, norm {worst_norm:.2e}",
    )


def _criterion_fidelity_ordering() -> CheckResult:
    z = BlochVector(0.0, 0.0, 1.0)
    ok = True
    margin = np.inf
    for alpha in np.arange(0.05, 0.901, 0.05):
        s = s_min(alpha)
        f = metrics.fidelity(equivalent_qudit(s, z), equivalent_qudit(s, z.scaled(alpha)))
        margin = min(margin, f - (1 + alpha) / 2)
        ok = ok and f >= (1 + alpha) / 2 - 1e-12
    return _check(
        "acceptance",
        "criterion-10 twin transfer fidelity beats the qubit benchmark at minimal spin",
        ok,
        f"min margin {margin:.4f}",
    )


def _criterion_witness() -> CheckResult:
    rng = np.random.default_rng(127)
    worst_closed = 0.0
    worst_iso = 0.0
    positive = True
    for alpha, s in ((0.3, HalfInteger(2)), (0.8, HalfInteger(8)), (0.5, HalfInteger(4))):
        ch = equivalent_werner(alpha, s)
        want = alpha * metrics.channel_distance_scale(s)
        wit, _ = metrics.disturbance_witness(ch)
        worst_closed = max(worst_closed, abs(wit - want))
        positive = positive and wit > 1e-6
        samples = []
        for _ in range(6):
            m = rng.normal(size=3)
            m /= np.linalg.norm(m)
            samples.append(
                float(np.linalg.norm(ch.matrix - metrics.qubit_dephased(ch, m)))
            )
        worst_iso = max(worst_iso, max(samples) - min(samples))
    prod = DensityMatrix(
        linalg.tensor_product(
            qubit_state(_random_bloch(rng)).matrix,
            equivalent_qudit(HalfInteger(4), _random_bloch(rng)).matrix,
        ),
        (2, 5),
    )
    wit0, _ = metrics.disturbance_witness(prod)
    return _check(
        "acceptance",
        "criterion-11 disturbance witness closed form, isotropy and product null",
        worst_closed < 1e-6 and worst_iso < 1e-8 and positive and wit0 < 1e-8,
        f"closed {worst_closed:.2e}, iso {worst_iso:.2e}, product {wit0:.2e}",
    )


ACCEPTANCE_CRITERIA = (
    _criterion_mixed_state_fidelity,
    _criterion_protocol_a,
    _criterion_protocol_b,
    _criterion_protocol_c,
    _criterion_protocol_d,
    _criterion_distances,
    _criterion_separability,
    _criterion_spin_identities,
    _criterion_q_equivalence,
    _criterion_fidelity_ordering,
    _criterion_witness,
)


def acceptance_checks() -> list[CheckResult]:
    return [fn() for fn in ACCEPTANCE_CRITERIA]


SCOPES: Mapping[str, Callable[[], list[CheckResult]]] = {
    "matrix-kernel": matrix_kernel_checks,
    "spin-algebra": spin_algebra_checks,
    "state-factory": state_factory_checks,
    "measurement-engine": measurement_checks,
    "protocol-suite": protocol_checks,
    "metrics": metrics_checks,
    "acceptance": acceptance_checks,
}


def run(scope: str = "all") -> list[CheckResult]:
    if scope == "all":
        results = []
        for fn in SCOPES.values():
            results.extend(fn())
        return results
    if scope not in SCOPES:
        raise SpinChanError(f"unknown verification scope {scope!r}")
    return SCOPES[scope]()
