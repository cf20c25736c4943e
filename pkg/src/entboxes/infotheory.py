"""Entropic quantities in bits: von Neumann entropy, mutual information,
Holevo quantity, the average information/entropy trade-off of an ensemble,
and the entanglement-assisted capacity functional of a channel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import tensor
from .qstate import DensityMatrix, PureState, Superoperator

EIG_CLIP = 1e-12
EIG_FLOOR = -1e-10


def shannon_entropy(probs: Iterable[float]) -> float:
    """H({p_i}) in bits, with 0 log 0 = 0."""
    h = 0.0
    for p in probs:
        if p < -1e-12 or p > 1 + 1e-12:
            raise ValueError(f"probability {p} outside [0, 1]")
        if p > EIG_CLIP:
            h -= p * np.log2(p)
    return h


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x) for x in [0, 1]."""
    if x < 0.0 or x > 1.0:
        raise ValueError(f"binary_entropy argument {x} outside [0, 1]")
    return shannon_entropy((x, 1.0 - x))


def von_neumann_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """S(rho) = -Tr rho log2 rho, eigenvalues below 1e-12 treated as zero."""
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    w = np.linalg.eigvalsh(mat)
    if np.min(w) < EIG_FLOOR:
        raise ValueError(f"negative eigenvalue {np.min(w)} beyond tolerance")
    w = w[w > EIG_CLIP]
    return float(-np.sum(w * np.log2(w)))


def mutual_information(rho: DensityMatrix, cut: Sequence[int]) -> float:
    """I(A:B) = S(A) + S(B) - S(AB) across the bipartition given by ``cut``."""
    n = len(rho.dims)
    left = sorted(set(int(c) for c in cut))
    if not left or len(left) == n or left[0] < 0 or left[-1] >= n:
        raise ValueError(f"cut {cut} is not a proper bipartition of {n} subsystems")
    right = [q for q in range(n) if q not in left]
    return (
        von_neumann_entropy(rho.reduced(left))
        + von_neumann_entropy(rho.reduced(right))
        - von_neumann_entropy(rho)
    )


def conditional_mutual_information(
    rho: DensityMatrix, parts: tuple[Sequence[int], Sequence[int], Sequence[int]]
) -> float:
    """I(A:B|R) = S(AR) + S(BR) - S(R) - S(ABR) for a tripartition (A, B, R)."""
    a, b, r = (sorted(set(int(q) for q in part)) for part in parts)
    n = len(rho.dims)
    if sorted(a + b + r) != list(range(n)):
        raise ValueError(f"parts {parts} do not partition {n} subsystems")
    s_ar = von_neumann_entropy(rho.reduced(a + r))
    s_br = von_neumann_entropy(rho.reduced(b + r))
    s_r = von_neumann_entropy(rho.reduced(r)) if r else 0.0
    s_abr = von_neumann_entropy(rho)
    return s_ar + s_br - s_r - s_abr


@dataclass(frozen=True)
class Ensemble:
    entries: tuple[tuple[float, DensityMatrix], ...]

    def __post_init__(self):
        entries = tuple((float(p), rho) for p, rho in self.entries)
        if not entries:
            raise ValueError("ensemble must be non-empty")
        dims = entries[0][1].dims
        for p, rho in entries:
            if p < -1e-12:
                raise ValueError(f"negative probability {p}")
            if rho.dims != dims:
                raise ValueError("ensemble members must share one shape")
        total = sum(p for p, _ in entries)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, expected 1")
        object.__setattr__(self, "entries", entries)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.entries])

    @property
    def states(self) -> list[DensityMatrix]:
        return [rho for _, rho in self.entries]

    @property
    def dims(self) -> tuple[int, ...]:
        return self.entries[0][1].dims

    def average(self) -> DensityMatrix:
        acc = sum(p * rho.matrix for p, rho in self.entries)
        return DensityMatrix(acc, self.dims)

    def cq_state(self) -> DensityMatrix:
        """Embed the ensemble as sum_i p_i rho_i x |i><i| on a classical register."""
        n = len(self.entries)
        acc = np.zeros((self.entries[0][1].dim * n,) * 2, dtype=complex)
        for i, (p, rho) in enumerate(self.entries):
            reg = np.zeros((n, n), dtype=complex)
            reg[i, i] = 1.0
            acc += p * tensor(rho.matrix, reg)
        return DensityMatrix(acc, self.dims + (n,))


def holevo(ens: Ensemble) -> float:
    """chi = S(sum p_i rho_i) - sum p_i S(rho_i)."""
    avg = von_neumann_entropy(ens.average())
    return avg - float(
        sum(p * von_neumann_entropy(rho) for p, rho in ens.entries if p > EIG_CLIP)
    )


@dataclass(frozen=True)
class DeltaReport:
    delta_i: float
    delta_s: float

    @property
    def slack(self) -> float:
        return self.delta_s - self.delta_i


def delta_lemma(ens: Ensemble, cut: Sequence[int]) -> DeltaReport:
    """Average mutual-information gain vs entropy drop when the index is revealed.

    delta_i = sum_i p_i I(rho_i) - I(rho_avg) and delta_s = S(rho_avg) -
    sum_i p_i S(rho_i); the direct values are cross-checked against the
    classical-register identities delta_i = I(A:B|R) - I(A:B) and
    delta_s = I(AB:R) before returning.
    """
    avg = ens.average()
    avg_i = mutual_information(avg, cut)
    members_i = sum(p * mutual_information(rho, cut) for p, rho in ens.entries if p > EIG_CLIP)
    delta_i = float(members_i - avg_i)
    delta_s = von_neumann_entropy(avg) - float(
        sum(p * von_neumann_entropy(rho) for p, rho in ens.entries if p > EIG_CLIP)
    )

    cq = ens.cq_state()
    n = len(cq.dims)
    left = sorted(set(int(c) for c in cut))
    right = [q for q in range(n - 1) if q not in left]
    cmi = conditional_mutual_information(cq, (left, right, [n - 1]))
    delta_i_embedded = cmi - avg_i
    delta_s_embedded = mutual_information(cq, cut=list(range(n - 1)))
    if abs(delta_i_embedded - delta_i) > 1e-9 or abs(delta_s_embedded - delta_s) > 1e-9:
        raise ArithmeticError(
            "classical-register embedding disagrees with direct ensemble values: "
            f"dI {delta_i} vs {delta_i_embedded}, dS {delta_s} vs {delta_s_embedded}"
        )
    return DeltaReport(delta_i=delta_i, delta_s=delta_s)


def purify(rho: DensityMatrix) -> PureState:
    """Purification with a reference of dimension equal to rank(rho)."""
    w, v = np.linalg.eigh(rho.matrix)
    keep = w > EIG_CLIP
    w, v = w[keep], v[:, keep]
    rank = int(w.size)
    vec = np.zeros(rho.dim * rank, dtype=complex)
    for k in range(rank):
        ref = np.zeros(rank, dtype=complex)
        ref[k] = 1.0
        vec += np.sqrt(w[k]) * tensor(v[:, k], ref)
    vec /= np.linalg.norm(vec)
    return PureState(vec, rho.dims + (rank,))


def _purify_sqrt(rho: DensityMatrix) -> PureState:
    """Alternative full-dimension purification sum_k (sqrt(rho)|k>) x |k>."""
    w, v = np.linalg.eigh(rho.matrix)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    d = rho.dim
    vec = np.zeros(d * d, dtype=complex)
    for k in range(d):
        ref = np.zeros(d, dtype=complex)
        ref[k] = 1.0
        vec += tensor(root[:, k], ref)
    vec /= np.linalg.norm(vec)
    return PureState(vec, rho.dims + (d,))


def _eaccqc_with(channel: Superoperator, rho: DensityMatrix, phi: PureState) -> float:
    env_dim = phi.dims[-1]
    joint = channel.extend(env_dim).apply(phi.density())
    return (
        von_neumann_entropy(rho)
        + von_neumann_entropy(channel.apply(rho))
        - von_neumann_entropy(joint)
    )


def eaccqc_value(channel: Superoperator, rho: DensityMatrix) -> float:
    """S(rho) + S(L(rho)) - S((L x id)(Phi)) for a purification Phi of rho.

    Checked against an alternative purification; the value is
    purification independent.
    """
    if rho.dims != channel.input_dims:
        raise ValueError(f"input dims {rho.dims} != channel input dims {channel.input_dims}")
    value = _eaccqc_with(channel, rho, purify(rho))
    alt = _eaccqc_with(channel, rho, _purify_sqrt(rho))
    if abs(value - alt) > 1e-9:
        raise ArithmeticError(f"purification dependence detected: {value} vs {alt}")
    return value


def quantum_relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D(rho || sigma) in bits; sigma eigenvalues floored well below any support."""
    wr, vr = np.linalg.eigh(rho)
    ws, vs = np.linalg.eigh(sigma)
    wr = np.clip(wr, 0.0, None)
    ws = np.clip(ws, 1e-300, None)
    overlap = np.abs(vr.conj().T @ vs) ** 2
    term = float(np.sum(wr[wr > EIG_CLIP] * np.log2(wr[wr > EIG_CLIP])))
    cross = float(wr @ overlap @ np.log2(ws))
    return term - cross


def holevo_capacity_cq(
    states: Sequence[DensityMatrix], tol: float = 1e-9, max_iter: int = 20000
) -> tuple[float, np.ndarray]:
    """Maximal Holevo quantity over input distributions on a fixed state set.

    Blahut-Arimoto iteration: q_k is reweighted by 2^{D(rho_k || rho_avg)}
    until the duality gap max_k D_k - chi falls below ``tol``. Returns the
    capacity and the maximizing distribution.
    """
    mats = [s.matrix for s in states]
    q = np.full(len(mats), 1.0 / len(mats))
    chi = 0.0
    for _ in range(max_iter):
        avg = sum(qk * m for qk, m in zip(q, mats))
        d = np.array([quantum_relative_entropy(m, avg) for m in mats])
        chi = float(q @ d)
        if float(np.max(d)) - chi <= tol:
            return chi, q
        q = q * np.exp2(d)
        q /= q.sum()
    raise ArithmeticError(f"Holevo capacity iteration did not converge below {tol}")
