"""Entanglement-redistribution boxes: construction, validation and structure analysis.

A box is an LOCC channel in separable form, a list of branches A_i x B_i x C_i,
that realizes one of three redistribution tasks on its canonical input:

* ``es``        swap: Psi+(A,C1) x Psi+(B,C2)  ->  Psi+(A,B), Charlie's output traced
* ``2epr-ghz``  merge: Psi+(A,C1) x Psi+(B,C2) ->  GHZ(A,B,C)
* ``ghz-epr``   split: GHZ(A,B,C)              ->  Psi+(A,B), Charlie's output traced

Channel inputs are ordered (A, B, C1, C2) for the four-qubit tasks and
(A, B, C) for the GHZ input. Charlie's factors map his input space onto a
fresh output register (one-dimensional where the output is discarded).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .linalg import (
    dagger,
    partial_trace,
    permute_subsystems,
    random_unitary,
    schmidt_coefficients,
    tensor,
    trace_distance,
)
from .qstate import (
    DensityMatrix,
    KrausChannel,
    KrausSuperoperator,
    PureState,
    Superoperator,
    compose,
    double_twirl_superoperator,
    epr,
    ghz,
    bell_basis,
    pauli,
    trace_out_superoperator,
    uu_twirl_superoperator,
)

STRUCTURE_TOL = 1e-8
RANK_TOL = 1e-8
VALIDATE_TOL = 1e-9


class BoxTask(Enum):
    ES = "es"
    TWO_EPR_TO_GHZ = "2epr-ghz"
    GHZ_TO_EPR = "ghz-epr"


@dataclass(frozen=True)
class SeparableBranch:
    a_factor: np.ndarray
    b_factor: np.ndarray
    c_factor: np.ndarray
    label: int

    def __post_init__(self):
        for name in ("a_factor", "b_factor", "c_factor"):
            m = np.asarray(getattr(self, name), dtype=complex)
            if m.ndim != 2:
                raise ValueError(f"{name} must be a matrix")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    def operator(self) -> np.ndarray:
        return tensor(self.a_factor, self.b_factor, self.c_factor)


_CHARLIE_INPUT_DIM = {BoxTask.ES: 4, BoxTask.TWO_EPR_TO_GHZ: 4, BoxTask.GHZ_TO_EPR: 2}


@dataclass(frozen=True)
class Box:
    task: BoxTask
    branches: tuple[SeparableBranch, ...]

    def __post_init__(self):
        branches = tuple(self.branches)
        if not branches:
            raise ValueError("a box needs at least one branch")
        c_in = _CHARLIE_INPUT_DIM[self.task]
        c_out = branches[0].c_factor.shape[0]
        for br in branches:
            if br.a_factor.shape != (2, 2) or br.b_factor.shape != (2, 2):
                raise ValueError("A and B factors must be 2x2 (qubit boxes only)")
            if br.c_factor.shape[1] != c_in:
                raise ValueError(
                    f"Charlie factor must act on a {c_in}-dimensional input for "
                    f"task {self.task.value}, got shape {br.c_factor.shape}"
                )
            if br.c_factor.shape[0] != c_out:
                raise ValueError("all branches must share one Charlie output dimension")
        if self.task is BoxTask.TWO_EPR_TO_GHZ and c_out != 2:
            raise ValueError("2epr-ghz boxes must output a qubit register for Charlie")
        object.__setattr__(self, "branches", branches)

    @property
    def charlie_input_dim(self) -> int:
        return _CHARLIE_INPUT_DIM[self.task]

    @property
    def charlie_output_dim(self) -> int:
        return self.branches[0].c_factor.shape[0]

    @property
    def input_dims(self) -> tuple[int, ...]:
        return (2, 2, 2, 2) if self.charlie_input_dim == 4 else (2, 2, 2)

    @property
    def output_dims(self) -> tuple[int, ...]:
        return (2, 2, self.charlie_output_dim)

    def operators(self) -> list[np.ndarray]:
        return [br.operator() for br in self.branches]

    def completeness_residual(self) -> float:
        din = int(np.prod(self.input_dims))
        return KrausChannel.completeness_residual_of(self.operators(), din)

    def kraus(self, check: bool = True) -> KrausChannel:
        return KrausChannel(tuple(self.operators()), self.input_dims, self.output_dims, check=check)

    def superoperator(self) -> KrausSuperoperator:
        return KrausSuperoperator(self.kraus())

    def task_superoperator(self) -> Superoperator:
        """The channel compared against the task's target (Charlie traced where discarded)."""
        full = self.superoperator()
        if self.task is BoxTask.TWO_EPR_TO_GHZ:
            return full
        return compose(trace_out_superoperator(self.output_dims, 2), full)


def canonical_input(task: BoxTask) -> DensityMatrix:
    """The defining input state, ordered to match the box's input subsystems."""
    if task is BoxTask.GHZ_TO_EPR:
        return ghz().density()
    pair = tensor(epr().vector, epr().vector)  # order (A, C1, B, C2)
    vec = permute_subsystems(pair, (2, 2, 2, 2), (0, 2, 1, 3))
    return PureState(vec, (2, 2, 2, 2)).density()


def target_output(task: BoxTask) -> PureState:
    return ghz() if task is BoxTask.TWO_EPR_TO_GHZ else epr()


# ---------------------------------------------------------------------------
# Canonical boxes


def teleportation_es_box(correct_on: str = "a") -> Box:
    """Entanglement swapping via standard teleportation from Charlie to Alice.

    Charlie Bell-measures C1C2; the matching Pauli correction is applied by
    Alice (``correct_on="a"``, teleporting the C2 content to her) or, for the
    mirrored Charlie-to-Bob protocol, by Bob (``correct_on="b"``).
    """
    if correct_on not in ("a", "b"):
        raise ValueError("correct_on must be 'a' or 'b'")
    eye = pauli(0)
    branches = []
    for mu, bell in enumerate(bell_basis()):
        bra = bell.vector.conj().reshape(1, 4)
        if correct_on == "a":
            a, b = pauli(mu).T, eye
        else:
            a, b = eye, pauli(mu)
        branches.append(SeparableBranch(a, b, bra, label=mu))
    return Box(BoxTask.ES, tuple(branches))


def parity_2eprghz_box() -> Box:
    """GHZ creation from two EPR pairs via Charlie's parity measurement.

    Charlie projects C1C2 onto the even/odd-parity subspaces and maps them
    onto a fresh qubit; Bob applies {I, X} conditioned on the outcome.
    """
    even = np.array([[1, 0, 0, 0], [0, 0, 0, 1]], dtype=complex)  # |0><00| + |1><11|
    odd = np.array([[0, 1, 0, 0], [0, 0, 1, 0]], dtype=complex)  # |0><01| + |1><10|
    eye = pauli(0)
    return Box(
        BoxTask.TWO_EPR_TO_GHZ,
        (
            SeparableBranch(eye, eye, even, label=0),
            SeparableBranch(eye, pauli(1), odd, label=1),
        ),
    )


def xbasis_ghzepr_box() -> Box:
    """EPR extraction from GHZ via Charlie's X-basis measurement and Bob's {I, Z}."""
    plus = np.array([[1, 1]], dtype=complex) / np.sqrt(2)
    minus = np.array([[1, -1]], dtype=complex) / np.sqrt(2)
    eye = pauli(0)
    return Box(
        BoxTask.GHZ_TO_EPR,
        (
            SeparableBranch(eye, eye, plus, label=0),
            SeparableBranch(eye, pauli(3), minus, label=1),
        ),
    )


def canonical_box(task: BoxTask) -> Box:
    if task is BoxTask.ES:
        return teleportation_es_box()
    if task is BoxTask.TWO_EPR_TO_GHZ:
        return parity_2eprghz_box()
    return xbasis_ghzepr_box()


def random_box(task: BoxTask, seed: int) -> Box:
    """A valid box of the requested task from a seeded random measurement basis.

    ES: Charlie measures in the rotated maximally entangled basis (V x I)|bell_mu>
    with Haar-random V and Bob applies the matching correction V sigma_mu.
    GHZ-EPR: Charlie measures (|0> +- e^{i phi}|1>)/sqrt(2) with seeded phi.
    2EPR-GHZ: parity-type measurement in seeded local bases of C1 and C2.
    """
    rng = np.random.default_rng(seed)
    if task is BoxTask.ES:
        v = random_unitary(2, rng)
        eye = pauli(0)
        branches = []
        for mu, bell in enumerate(bell_basis()):
            m_vec = tensor(v, eye) @ bell.vector
            correction = v @ pauli(mu)
            branches.append(
                SeparableBranch(eye, correction, m_vec.conj().reshape(1, 4), label=mu)
            )
        return Box(task, tuple(branches))

    if task is BoxTask.GHZ_TO_EPR:
        phi = rng.uniform(0.0, 2.0 * np.pi)
        phase = np.exp(1j * phi)
        psi0 = np.array([1.0, phase]) / np.sqrt(2)
        psi1 = np.array([1.0, -phase]) / np.sqrt(2)
        eye = pauli(0)
        return Box(
            task,
            (
                SeparableBranch(eye, np.diag([1.0, phase]), psi0.conj().reshape(1, 2), 0),
                SeparableBranch(eye, np.diag([1.0, -phase]), psi1.conj().reshape(1, 2), 1),
            ),
        )

    va = random_unitary(2, rng)
    vb = random_unitary(2, rng)
    ua, ub = va.T, vb.T
    a0, a1 = va[:, 0], va[:, 1]
    b0, b1 = vb[:, 0], vb[:, 1]

    def charlie(first: np.ndarray, second: np.ndarray) -> np.ndarray:
        return np.vstack([first.conj(), second.conj()])

    even = charlie(tensor(a0.reshape(2, 1), b0.reshape(2, 1)).reshape(4),
                   tensor(a1.reshape(2, 1), b1.reshape(2, 1)).reshape(4))
    odd = charlie(tensor(a0.reshape(2, 1), b1.reshape(2, 1)).reshape(4),
                  tensor(a1.reshape(2, 1), b0.reshape(2, 1)).reshape(4))
    return Box(
        task,
        (
            SeparableBranch(ua, ub, even, label=0),
            SeparableBranch(ua, pauli(1) @ ub, odd, label=1),
        ),
    )


def twirled_box(box: Box) -> Superoperator:
    """Wrap a box so its communication value collapses to the twirled bound.

    ES and GHZ-EPR boxes get the UU*-twirl on the AB output; 2EPR-GHZ boxes
    get the independent pair twirl on the (A,C1) and (B,C2) inputs.
    """
    if box.task is BoxTask.TWO_EPR_TO_GHZ:
        twirl = double_twirl_superoperator(pairs=((0, 2), (1, 3)))
        return compose(box.task_superoperator(), twirl)
    return compose(uu_twirl_superoperator(), box.task_superoperator())


# ---------------------------------------------------------------------------
# Validation and structure analysis


@dataclass(frozen=True)
class ValidationReport:
    task: BoxTask
    output_fidelity: float
    trace_distance_to_target: float
    completeness_residual: float
    tol: float
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "task": self.task.value,
            "output_fidelity": self.output_fidelity,
            "trace_distance_to_target": self.trace_distance_to_target,
            "completeness_residual": self.completeness_residual,
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
        }


def _raw_task_output(ops: Sequence[np.ndarray], task: BoxTask, rho_in: np.ndarray) -> np.ndarray:
    dims_out = (2, 2, ops[0].shape[0] // 4)
    out = sum(k @ rho_in @ dagger(k) for k in ops)
    if task is BoxTask.TWO_EPR_TO_GHZ:
        return out
    return partial_trace(out, dims_out, keep=(0, 1))


def validate(box: Box, tol: float = VALIDATE_TOL) -> ValidationReport:
    """Apply the box to its canonical input and compare with the task target."""
    rho_in = canonical_input(box.task)
    target = target_output(box.task)
    out = _raw_task_output(box.operators(), box.task, rho_in.matrix)
    fid = float(np.real(target.vector.conj() @ out @ target.vector))
    dist = trace_distance(out, target.projector())
    residual = box.completeness_residual()
    return ValidationReport(
        task=box.task,
        output_fidelity=fid,
        trace_distance_to_target=dist,
        completeness_residual=residual,
        tol=tol,
        verdict=bool(dist <= tol and residual <= tol),
    )


def validate_superoperator(op: Superoperator, task: BoxTask, tol: float = VALIDATE_TOL) -> ValidationReport:
    """Task validation for an already-assembled channel (e.g. a twirled box)."""
    out = op.apply(canonical_input(task))
    target = target_output(task)
    dist = trace_distance(out.matrix, target.projector())
    return ValidationReport(
        task=task,
        output_fidelity=out.overlap(target),
        trace_distance_to_target=dist,
        completeness_residual=0.0,
        tol=tol,
        verdict=bool(dist <= tol),
    )


@dataclass(frozen=True)
class BranchReport:
    label: int
    weight: float
    charlie_rank: int
    schmidt_coefficients: tuple[tuple[float, ...], ...]
    ab_unitary: bool
    ab_deviation: float
    branch_identity_residual: float
    proportionality: float
    structure_residual: float
    phase: float | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "weight": self.weight,
            "charlie_rank": self.charlie_rank,
            "schmidt_coefficients": [list(s) for s in self.schmidt_coefficients],
            "ab_unitary": self.ab_unitary,
            "ab_deviation": self.ab_deviation,
            "branch_identity_residual": self.branch_identity_residual,
            "proportionality": self.proportionality,
            "structure_residual": self.structure_residual,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class StructureReport:
    task: BoxTask
    branches: tuple[BranchReport, ...]
    completeness_residual: float
    charlie_completeness_residual: float
    tol: float
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "task": self.task.value,
            "branches": [b.to_dict() for b in self.branches],
            "completeness_residual": self.completeness_residual,
            "charlie_completeness_residual": self.charlie_completeness_residual,
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
        }


def _unitary_proportionality(f: np.ndarray) -> tuple[float, float]:
    """(scale alpha, deviation of F^dag F from alpha * I)."""
    g = dagger(f) @ f
    alpha = float(np.real(np.trace(g))) / g.shape[0]
    if alpha <= 1e-12:
        return alpha, 1.0
    return alpha, float(np.max(np.abs(g / alpha - np.eye(g.shape[0]))))


def _product_pair(v1: np.ndarray, v2: np.ndarray) -> list[np.ndarray] | None:
    """Two distinct unit product vectors in span{v1, v2} of a 2x2 system, if any.

    A vector alpha v1 + beta v2 is product iff the determinant of its
    reshaped 2x2 amplitude matrix vanishes; that determinant is a quadratic
    form in (alpha, beta).
    """
    m1, m2 = v1.reshape(2, 2), v2.reshape(2, 2)
    qa = np.linalg.det(m1)
    qc = np.linalg.det(m2)
    qb = np.linalg.det(m1 + m2) - qa - qc
    eps = 1e-12
    if max(abs(qa), abs(qb), abs(qc)) <= eps:
        return None  # every vector is product: local factors cannot be orthonormal
    directions: list[np.ndarray] = []
    if abs(qa) <= eps:
        directions.append(v1)
        if abs(qb) > eps:
            directions.append((-qc / qb) * v1 + v2)
    else:
        for t in np.roots([qa, qb, qc]):
            directions.append(t * v1 + v2)
    unit = []
    for d in directions:
        n = np.linalg.norm(d)
        if n > 1e-9:
            unit.append(d / n)
    distinct: list[np.ndarray] = []
    for d in unit:
        if all(abs(abs(np.vdot(d, e)) - 1.0) > 1e-8 for e in distinct):
            distinct.append(d)
    return distinct if len(distinct) == 2 else None


def _rank_one_factors(v: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Local factors (a, b) of a two-qubit product vector plus its rank-one residual."""
    u, s, vh = np.linalg.svd(v.reshape(2, 2))
    return u[:, 0], vh[0].conj(), float(s[1])


def _analyze_charlie_es_like(
    c: np.ndarray, task: BoxTask
) -> tuple[int, tuple, float, float, float | None]:
    """Rank, Schmidt data, weight and structural residual for rank-one tasks."""
    u, s, vh = np.linalg.svd(c)
    rank = int(np.sum(s > RANK_TOL))
    if rank != 1:
        return rank, (tuple(float(x) for x in s),), 0.0, 1.0, None
    weight = float(s[0] ** 2)
    psi = vh[0].conj()
    if task is BoxTask.ES:
        sch = schmidt_coefficients(psi, (2, 2), cut=(0,))
        residual = float(np.max(np.abs(sch - 1 / np.sqrt(2))))
        return rank, (tuple(float(x) for x in sch),), weight, residual, None
    amps = np.abs(psi)
    residual = float(np.max(np.abs(amps - 1 / np.sqrt(2))))
    phase = float(np.angle(psi[1] / psi[0])) if min(amps) > 1e-12 else None
    sch = tuple(sorted((float(a) for a in amps), reverse=True))
    return rank, (sch,), weight, residual, phase


def _analyze_charlie_parity(c: np.ndarray) -> tuple[int, tuple, float, float]:
    """Rank, Schmidt data, weight and residual for the rank-two 2EPR-GHZ form."""
    u, s, vh = np.linalg.svd(c)
    rank = int(np.sum(s > RANK_TOL))
    raw = (tuple(float(x) for x in s),)
    if rank != 2:
        return rank, raw, 0.0, 1.0
    residual = float(abs(s[0] - s[1]))
    weight = float(s[0] * s[1])
    pair = _product_pair(vh[0].conj(), vh[1].conj())
    if pair is None:
        return rank, raw, weight, 1.0
    psi0, psi1 = pair
    a0, b0, r0 = _rank_one_factors(psi0)
    a1, b1, r1 = _rank_one_factors(psi1)
    residual = max(residual, r0, r1)
    residual = max(residual, float(abs(np.vdot(psi0, psi1))))
    residual = max(residual, float(abs(np.vdot(a0, a1))), float(abs(np.vdot(b0, b1))))
    c0, c1 = c @ psi0, c @ psi1
    residual = max(residual, float(abs(np.vdot(c0, c1))))
    residual = max(residual, float(abs(np.linalg.norm(c0) - np.linalg.norm(c1))))
    sch = (
        tuple(float(x) for x in np.linalg.svd(psi0.reshape(2, 2), compute_uv=False)),
        tuple(float(x) for x in np.linalg.svd(psi1.reshape(2, 2), compute_uv=False)),
    )
    return rank, sch, weight, residual


def analyze_structure(box: Box, tol: float = STRUCTURE_TOL) -> StructureReport:
    """Check every branch against the structural form its task demands.

    ES: rank-one Charlie operators onto maximally entangled C1C2 vectors.
    2EPR-GHZ: balanced rank-two operators onto orthonormal product pairs.
    GHZ-EPR: rank-one operators onto balanced single-qubit vectors.
    In every case A and B factors must be proportional to unitaries and each
    branch must map the canonical input onto the target ray.
    """
    rho_in = canonical_input(box.task)
    in_vec_proj = rho_in.matrix
    target = target_output(box.task)
    c_in = box.charlie_input_dim

    reports = []
    charlie_acc = np.zeros((c_in, c_in), dtype=complex)
    for br in box.branches:
        alpha_a, dev_a = _unitary_proportionality(br.a_factor)
        alpha_b, dev_b = _unitary_proportionality(br.b_factor)
        ab_dev = max(dev_a, dev_b)
        phase = None
        if box.task is BoxTask.TWO_EPR_TO_GHZ:
            rank, sch, weight, structural = _analyze_charlie_parity(br.c_factor)
        else:
            rank, sch, weight, structural, phase = _analyze_charlie_es_like(
                br.c_factor, box.task
            )
        weight *= alpha_a * alpha_b
        charlie_acc += alpha_a * alpha_b * (dagger(br.c_factor) @ br.c_factor)

        k = br.operator()
        out = _raw_task_output([k], box.task, in_vec_proj)
        p = float(np.real(np.trace(out)))
        if p > 1e-12:
            identity_residual = trace_distance(out / p, target.projector())
        else:
            identity_residual = 0.0
        reports.append(
            BranchReport(
                label=br.label,
                weight=weight,
                charlie_rank=rank,
                schmidt_coefficients=sch,
                ab_unitary=bool(ab_dev <= tol),
                ab_deviation=ab_dev,
                branch_identity_residual=identity_residual,
                proportionality=p,
                structure_residual=structural,
                phase=phase,
            )
        )

    completeness = box.completeness_residual()
    charlie_completeness = float(np.max(np.abs(charlie_acc - np.eye(c_in))))
    expected_rank = 2 if box.task is BoxTask.TWO_EPR_TO_GHZ else 1
    verdict = (
        completeness <= tol
        and charlie_completeness <= tol
        and all(
            r.charlie_rank == expected_rank
            and r.ab_deviation <= tol
            and r.structure_residual <= tol
            and r.branch_identity_residual <= tol
            for r in reports
        )
    )
    return StructureReport(
        task=box.task,
        branches=tuple(reports),
        completeness_residual=completeness,
        charlie_completeness_residual=charlie_completeness,
        tol=tol,
        verdict=bool(verdict),
    )


def outcome_distribution(box: Box, state: DensityMatrix) -> np.ndarray:
    """Probabilities p_i = Tr(K_i rho K_i^dag) of Charlie's branches."""
    if state.dims != box.input_dims:
        raise ValueError(f"state dims {state.dims} != box input dims {box.input_dims}")
    probs = np.array(
        [float(np.real(np.trace(k @ state.matrix @ dagger(k)))) for k in box.operators()]
    )
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"branch probabilities sum to {total}, box is not trace preserving")
    return probs


# ---------------------------------------------------------------------------
# JSON interchange


class BoxSchemaError(ValueError):
    """Raised on malformed box files; ``pointer`` locates the offending field."""

    def __init__(self, message: str, pointer: str):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(obj, pointer: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise BoxSchemaError("matrix must be a non-empty array of rows", pointer)
    rows = []
    width = None
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise BoxSchemaError("matrix row must be a non-empty array", f"{pointer}/{i}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise BoxSchemaError("ragged matrix rows", f"{pointer}/{i}")
        entries = []
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise BoxSchemaError("entry must be a [re, im] pair", f"{pointer}/{i}/{j}")
            entries.append(complex(entry[0], entry[1]))
        rows.append(entries)
    return np.array(rows, dtype=complex)


def box_to_json(box: Box) -> dict:
    return {
        "task": box.task.value,
        "branches": [
            {
                "a": matrix_to_json(br.a_factor),
                "b": matrix_to_json(br.b_factor),
                "c": matrix_to_json(br.c_factor),
            }
            for br in box.branches
        ],
    }


def box_from_json(obj) -> Box:
    if not isinstance(obj, dict):
        raise BoxSchemaError("box document must be an object", "")
    task_name = obj.get("task")
    try:
        task = BoxTask(task_name)
    except ValueError:
        raise BoxSchemaError(f"unknown task {task_name!r}", "/task") from None
    branches_obj = obj.get("branches")
    if not isinstance(branches_obj, list) or not branches_obj:
        raise BoxSchemaError("branches must be a non-empty array", "/branches")
    branches = []
    for i, br in enumerate(branches_obj):
        if not isinstance(br, dict):
            raise BoxSchemaError("branch must be an object", f"/branches/{i}")
        factors = {}
        for key in ("a", "b", "c"):
            if key not in br:
                raise BoxSchemaError(f"branch missing factor {key!r}", f"/branches/{i}")
            factors[key] = matrix_from_json(br[key], f"/branches/{i}/{key}")
        branches.append(SeparableBranch(factors["a"], factors["b"], factors["c"], label=i))
    try:
        return Box(task, tuple(branches))
    except ValueError as exc:
        raise BoxSchemaError(str(exc), "/branches") from None


def save_box(box: Box, path: str | Path) -> None:
    Path(path).write_text(json.dumps(box_to_json(box), indent=1, sort_keys=True) + "\n")


def load_box(path: str | Path) -> Box:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read box file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BoxSchemaError(f"invalid JSON: {exc}", "") from None
    return box_from_json(obj)
