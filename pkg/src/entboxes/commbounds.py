"""Signaling analysis and communication cost/value bounds for redistribution boxes.

Lower bounds on the communication value come from explicit sender protocols
with perfectly distinguishable (or Holevo-quantified) receiver outputs; upper
bounds come from the twirled boxes, whose outputs live in small commuting
families. Cost bounds follow from the entropy of Charlie's outcome
distribution via the ensemble information/entropy inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .boxes import (
    Box,
    BoxTask,
    canonical_box,
    canonical_input,
    outcome_distribution,
)
from .infotheory import (
    Ensemble,
    delta_lemma,
    eaccqc_value,
    holevo,
    shannon_entropy,
)
from .linalg import (
    dagger,
    partial_trace,
    permute_subsystems,
    random_density,
    tensor,
    trace_distance,
)
from .qstate import (
    DensityMatrix,
    KrausChannel,
    KrausSuperoperator,
    Superoperator,
    depolarizing_kraus,
    embed_kraus,
    epr,
    pauli,
)

PROTOCOL_TOL = 1e-9


@dataclass(frozen=True)
class AlphabetMap:
    """A labeled channel acting on the sender's subsystems, identity elsewhere."""

    label: int | str
    superoperator: Superoperator
    sender: tuple[int, ...]


def unitary_alphabet_map(
    label: int | str, u: np.ndarray, dims: Sequence[int], targets: Sequence[int]
) -> AlphabetMap:
    ops = embed_kraus([u], dims, targets)
    chan = KrausChannel(ops, tuple(dims), tuple(dims))
    return AlphabetMap(label, KrausSuperoperator(chan), tuple(int(t) for t in targets))


def kraus_alphabet_map(
    label: int | str,
    local_ops: Sequence[np.ndarray],
    dims: Sequence[int],
    targets: Sequence[int],
) -> AlphabetMap:
    ops = embed_kraus(local_ops, dims, targets)
    chan = KrausChannel(ops, tuple(dims), tuple(dims))
    return AlphabetMap(label, KrausSuperoperator(chan), tuple(int(t) for t in targets))


@dataclass(frozen=True)
class SignalingReport:
    sender: tuple[int, ...]
    receiver: tuple[int, ...]
    outputs: tuple[DensityMatrix, ...]
    distances: np.ndarray  # pairwise trace distances, symbol x symbol
    holevo_of_outputs: float
    tol: float
    signaling: bool

    def to_dict(self) -> dict:
        return {
            "sender": list(self.sender),
            "receiver": list(self.receiver),
            "pairwise_distances": self.distances.tolist(),
            "holevo_of_outputs": self.holevo_of_outputs,
            "tol": self.tol,
            "signaling": self.signaling,
        }


def signaling_test(
    channel: Superoperator,
    state: DensityMatrix,
    maps: Sequence[AlphabetMap],
    receiver: Sequence[int],
    tol: float = PROTOCOL_TOL,
) -> SignalingReport:
    """Compare the receiver's reduced outputs across the sender's alphabet maps."""
    receiver = tuple(sorted(set(int(r) for r in receiver)))
    if len(maps) < 2:
        raise ValueError("need at least two alphabet maps")
    for m in maps:
        if set(receiver) & set(m.sender):
            raise ValueError(f"receiver {receiver} overlaps sender {m.sender}")
        if m.superoperator.input_dims != state.dims:
            raise ValueError("alphabet map dims do not match the input state")
    outputs = tuple(
        channel.apply(m.superoperator.apply(state)).reduced(receiver) for m in maps
    )
    n = len(outputs)
    distances = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            distances[i, j] = distances[j, i] = trace_distance(
                outputs[i].matrix, outputs[j].matrix
            )
    ens = Ensemble(tuple((1.0 / n, out) for out in outputs))
    return SignalingReport(
        sender=maps[0].sender,
        receiver=receiver,
        outputs=outputs,
        distances=distances,
        holevo_of_outputs=holevo(ens),
        tol=tol,
        signaling=bool(np.max(distances) > tol),
    )


# ---------------------------------------------------------------------------
# CV lower bounds


def _resolve_channel(box: Box | Superoperator, task: BoxTask | None) -> tuple[Superoperator, BoxTask]:
    if isinstance(box, Box):
        return box.task_superoperator(), box.task
    if task is None:
        if box.input_dims == (2, 2, 2):
            task = BoxTask.GHZ_TO_EPR
        elif box.input_dims == (2, 2, 2, 2):
            task = BoxTask.ES
        else:
            raise ValueError("cannot infer task from channel dims; pass task explicitly")
    return box, task


@dataclass(frozen=True)
class ZFlipResult:
    bits: float
    overlap: float
    distance: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "bits": self.bits,
            "overlap_with_target": self.overlap,
            "output_distance": self.distance,
            "tol": self.tol,
        }


def cv_lower_zflip(
    box: Box | Superoperator, task: BoxTask | None = None, tol: float = PROTOCOL_TOL
) -> ZFlipResult:
    """One certified bit from Charlie's {identity, Z} pre-rotation.

    Charlie flips the phase of his qubit of the first EPR pair (swap tasks)
    or of the GHZ state (split task); the flipped output is orthogonal to
    the target EPR pair, so the two outputs have trace distance one.
    """
    channel, task = _resolve_channel(box, task)
    if task is BoxTask.TWO_EPR_TO_GHZ:
        raise ValueError("the Z-flip protocol applies to es and ghz-epr boxes only")
    rho_in = canonical_input(task)
    z_map = unitary_alphabet_map("z", pauli(3), rho_in.dims, targets=(2,))
    out_id = channel.apply(rho_in)
    out_z = channel.apply(z_map.superoperator.apply(rho_in))
    overlap = out_z.overlap(epr())
    distance = trace_distance(out_id.matrix, out_z.matrix)
    certified = overlap <= tol and abs(distance - 1.0) <= tol
    return ZFlipResult(
        bits=1.0 if certified else 0.0, overlap=overlap, distance=distance, tol=tol
    )


@dataclass(frozen=True)
class DenseCodingResult:
    bits: float
    gram: np.ndarray
    outputs: tuple[np.ndarray, ...]
    tol: float

    def to_dict(self) -> dict:
        return {
            "bits": self.bits,
            "gram": self.gram.tolist(),
            "tol": self.tol,
        }


def dense_coding_demo(box: Box, tol: float = PROTOCOL_TOL) -> DenseCodingResult:
    """Two bits through a Charlie-to-Alice teleportation box.

    Alice holds an extra ancilla maximally entangled with Charlie's second
    input qubit; Charlie rotates that pair through the four Paulis before
    the box runs, leaving one of four orthogonal Bell states entirely in
    Alice's hands. Requires a box whose corrections act on Alice's side
    (all B factors proportional to the identity).
    """
    if box.task is not BoxTask.ES:
        raise ValueError("dense coding demo needs an es box")
    for br in box.branches:
        gb = dagger(br.b_factor) @ br.b_factor
        off = br.b_factor - (np.trace(br.b_factor) / 2.0) * np.eye(2)
        if np.max(np.abs(off)) > 1e-8 or np.max(np.abs(gb - np.eye(2))) > 1e-8:
            raise ValueError(
                "box is not a Charlie-to-Alice teleportation box: "
                "corrections do not stay on Alice's side"
            )
    # system order (A, B, C1, C2, A'); the box acts on the first four qubits
    dims = (2, 2, 2, 2, 2)
    perm = (0, 2, 1, 4, 3)  # from build order (A, C1, B, A', C2)
    ket0 = np.array([1.0, 0.0], dtype=complex)
    outputs = []
    for mu in range(4):
        rotated = tensor(pauli(0), pauli(mu)) @ epr().vector  # Charlie rotates C2
        vec = tensor(epr().vector, ket0, rotated)
        vec = permute_subsystems(vec, dims, perm)
        rho = np.outer(vec, vec.conj())
        c_out = box.charlie_output_dim
        out = sum(
            (k := tensor(op, np.eye(2, dtype=complex))) @ rho @ dagger(k)
            for op in box.operators()
        )
        alice = partial_trace(out, (2, 2, c_out, 2), keep=(0, 3))
        outputs.append(alice)
    gram = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            gram[i, j] = float(np.real(np.trace(outputs[i] @ outputs[j])))
    certified = np.max(np.abs(gram - np.eye(4))) <= tol
    return DenseCodingResult(
        bits=2.0 if certified else 0.0,
        gram=gram,
        outputs=tuple(outputs),
        tol=tol,
    )


@dataclass(frozen=True)
class DepolarizeResult:
    chi_max: float
    p_star: float
    curve_p: np.ndarray
    curve_chi: np.ndarray
    depolarized_residual: float
    correlated_residual: float

    def to_dict(self) -> dict:
        return {
            "chi_max": self.chi_max,
            "p_star": self.p_star,
            "depolarized_residual": self.depolarized_residual,
            "correlated_residual": self.correlated_residual,
        }


def _even_odd_states() -> tuple[DensityMatrix, DensityMatrix]:
    even = np.zeros((4, 4), dtype=complex)
    even[0, 0] = even[3, 3] = 0.5
    odd = np.zeros((4, 4), dtype=complex)
    odd[1, 1] = odd[2, 2] = 0.5
    return DensityMatrix(even, (2, 2)), DensityMatrix(odd, (2, 2))


def cv_lower_depolarize(box: Box, grid: int = 101) -> DepolarizeResult:
    """Holevo-certified bits from Charlie's {identity, full depolarization} pair.

    The identity symbol leaves the maximally classically correlated AB output;
    full depolarization of Charlie's qubits forces the AB output to I/4 by
    Kraus completeness. The Holevo quantity of the two-symbol ensemble is
    maximized over the symbol probability p.
    """
    if box.task is not BoxTask.TWO_EPR_TO_GHZ:
        raise ValueError("the depolarizing protocol applies to 2epr-ghz boxes only")
    rho_in = canonical_input(box.task)
    dep = kraus_alphabet_map("depolarize", depolarizing_kraus(2), rho_in.dims, targets=(2, 3))
    channel = box.task_superoperator()
    out_id = channel.apply(rho_in).reduced((0, 1))
    out_dep = channel.apply(dep.superoperator.apply(rho_in)).reduced((0, 1))
    even, _ = _even_odd_states()
    correlated_residual = trace_distance(out_id.matrix, even.matrix)
    depolarized_residual = float(np.max(np.abs(out_dep.matrix - np.eye(4) / 4.0)))
    if depolarized_residual > PROTOCOL_TOL or correlated_residual > PROTOCOL_TOL:
        raise ArithmeticError(
            "box outputs do not match the protocol branches: "
            f"depolarized residual {depolarized_residual}, "
            f"correlated residual {correlated_residual}"
        )

    def chi(p: float) -> float:
        if p <= 0.0 or p >= 1.0:
            return 0.0
        return holevo(Ensemble(((p, out_id), (1.0 - p, out_dep))))

    p_star, chi_max = optimize_1d(chi, 0.0, 1.0, tol=1e-9)
    ps = np.linspace(0.0, 1.0, grid)
    return DepolarizeResult(
        chi_max=chi_max,
        p_star=p_star,
        curve_p=ps,
        curve_chi=np.array([chi(p) for p in ps]),
        depolarized_residual=depolarized_residual,
        correlated_residual=correlated_residual,
    )


# ---------------------------------------------------------------------------
# CV upper bounds


def twirled_merge_chi(p: float) -> float:
    """Holevo quantity of {(p, rho_even), (1-p, rho at the lower isotropic edge)}."""
    even, odd = _even_odd_states()
    third = DensityMatrix(even.matrix / 3.0 + 2.0 * odd.matrix / 3.0, (2, 2))
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 0.0
    return holevo(Ensemble(((p, even), (1.0 - p, third))))


def isotropic_weight_combination(a: float, b: float, c: float, d: float) -> float:
    """The even-parity output weight A + (B + C)/3 + 5 D / 9 of a twirled input."""
    return a + (b + c) / 3.0 + 5.0 * d / 9.0


def cv_upper_twirled(task: BoxTask, seed: int = 0) -> float:
    """Upper bound on CV certified by the appropriate twirled box.

    Swap and split tasks: the twirled output is isotropic, so the
    entanglement-assisted value is at most H(F) <= 1. Merge task: the
    double-twirled output parameter spans [1/3, 1] (verified on 500 random
    weight simplex points) and the two-symbol Holevo maximum over that
    interval's extremes is the bound.
    """
    if task in (BoxTask.ES, BoxTask.GHZ_TO_EPR):
        return 1.0
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(4), size=500)
    fprimes = np.array([isotropic_weight_combination(*w) for w in weights])
    if fprimes.min() < 1.0 / 3.0 - 1e-12 or fprimes.max() > 1.0 + 1e-12:
        raise ArithmeticError("isotropic weight combination left [1/3, 1]")
    _, chi_max = optimize_1d(twirled_merge_chi, 0.0, 1.0, tol=1e-9)
    return chi_max


# ---------------------------------------------------------------------------
# CC bounds


@dataclass(frozen=True)
class CcBound:
    task: BoxTask
    lower: float
    achieving_box: str
    outcome_entropy: float
    delta_i: float
    delta_s: float

    def to_dict(self) -> dict:
        return {
            "task": self.task.value,
            "lower_bits": self.lower,
            "achieving_box": self.achieving_box,
            "outcome_entropy": self.outcome_entropy,
            "delta_i": self.delta_i,
            "delta_s": self.delta_s,
        }


_ACHIEVER = {
    BoxTask.ES: "teleportation",
    BoxTask.TWO_EPR_TO_GHZ: "parity",
    BoxTask.GHZ_TO_EPR: "xbasis",
}


def measurement_ensemble(box: Box) -> tuple[np.ndarray, Ensemble]:
    """Charlie's outcome probabilities and conditional AB states on the canonical input.

    Conditionals are taken after Charlie's measurement alone (no A/B
    corrections), so the ensemble averages to the pre-measurement AB marginal.
    """
    rho_in = canonical_input(box.task)
    probs = []
    states = []
    for br in box.branches:
        k = tensor(np.eye(4, dtype=complex), br.c_factor)
        out = k @ rho_in.matrix @ dagger(k)
        sub = partial_trace(out, (2, 2, box.charlie_output_dim), keep=(0, 1))
        p = float(np.real(np.trace(sub)))
        if p > 1e-12:
            probs.append(p)
            states.append(DensityMatrix(sub / p, (2, 2)))
    probs_arr = np.array(probs)
    ens = Ensemble(tuple(zip(probs_arr, states)))
    return probs_arr, ens


def cc_lower(task: BoxTask) -> CcBound:
    """Bits any box of the task must communicate, from the ensemble inequality.

    For the canonical box: H(outcomes) = S(avg) - sum p S(rho_i) >=
    sum p I(rho_i) - I(avg); the right-hand side is fixed by the task's
    defining input and output, so it lower-bounds every realization.
    """
    box = canonical_box(task)
    probs, ens = measurement_ensemble(box)
    entropy_h = shannon_entropy(probs)
    report = delta_lemma(ens, cut=(0,))
    avg = ens.average()
    marginal = canonical_input(task).reduced((0, 1))
    if trace_distance(avg.matrix, marginal.matrix) > 1e-9:
        raise ArithmeticError("measurement ensemble does not average to the AB marginal")
    if entropy_h + 1e-9 < report.delta_s or report.slack < -1e-9:
        raise ArithmeticError("ensemble inequality chain violated")
    return CcBound(
        task=task,
        lower=report.delta_i,
        achieving_box=_ACHIEVER[task],
        outcome_entropy=entropy_h,
        delta_i=report.delta_i,
        delta_s=report.delta_s,
    )


def cc_of_box(box: Box) -> float:
    """Bits the standard-form implementation sends: H of Charlie's outcomes."""
    probs = outcome_distribution(box, canonical_input(box.task))
    return shannon_entropy(probs)


# ---------------------------------------------------------------------------
# One-dimensional optimization and task summaries


def optimize_1d(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi], endpoints always compared."""
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid interval [{lo}, {hi}]")

    def ev(x: float) -> float:
        y = float(f(x))
        if not np.isfinite(y):
            raise ValueError(f"objective returned non-finite value {y} at x={x}")
        return y

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = ev(c), ev(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = ev(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = ev(d)
    mid = 0.5 * (a + b)
    candidates = [(lo, ev(lo)), (hi, ev(hi)), (mid, ev(mid))]
    x_star, f_star = max(candidates, key=lambda t: t[1])
    return x_star, f_star


@dataclass(frozen=True)
class CvBounds:
    task: BoxTask
    lower: float
    upper: float | None  # None: unbounded by this artifact
    witnesses: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "task": self.task.value,
            "lower_bits": self.lower,
            "upper_bits": "unbounded-by-this-artifact" if self.upper is None else self.upper,
            "witnesses": list(self.witnesses),
        }


def task_summary(task: BoxTask) -> tuple[CcBound, CvBounds]:
    """CC and CV bounds for a task, every number produced by its computing protocol."""
    cc = cc_lower(task)
    if task is BoxTask.TWO_EPR_TO_GHZ:
        lower = cv_lower_depolarize(canonical_box(task)).chi_max
        upper = cv_upper_twirled(task)
        witnesses = ("depolarize", "double-twirl-holevo")
    else:
        lower = cv_lower_zflip(canonical_box(task)).bits
        upper = cv_upper_twirled(task)
        witnesses = ("zflip", "uu-twirl-eaccqc")
    cv = CvBounds(task=task, lower=lower, upper=upper, witnesses=witnesses)
    if cv.upper is not None and cv.lower > cv.upper + 1e-9:
        raise ArithmeticError(f"CV lower bound {cv.lower} exceeds upper bound {cv.upper}")
    if cc.lower < cv.lower - 1e-9:
        raise ArithmeticError("causality violated: CC bound below CV bound")
    return cc, cv


def eaccqc_estimate(
    channel: Superoperator, n_samples: int = 200, seed: int = 0
) -> float:
    """Lower estimate of the entanglement-assisted value over random mixed inputs.

    A random-restart search, reported as an estimate only; the analytic
    twirled bounds are the certified values.
    """
    dims = channel.input_dims
    dim = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(n_samples):
        rho = DensityMatrix(random_density(dim, rng), dims)
        best = max(best, eaccqc_value(channel, rho))
    return best
