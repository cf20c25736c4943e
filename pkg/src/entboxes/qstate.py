"""Canonical states, Kraus channels and the exact twirl superoperators.

States carry their tensor factorization as a ``dims`` tuple. Channels are
either explicit Kraus lists or superoperators built from them; the two
twirls are realized by their exact projection formulas (measure-and-prepare
Kraus sets onto the isotropic subspaces), never by Haar sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    dagger,
    is_hermitian,
    partial_trace,
    permutation_matrix,
    permute_subsystems,
    tensor,
)

EIG_FLOOR = -1e-10
TRACE_TOL = 1e-9
COMPLETENESS_TOL = 1e-9

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli(mu: int) -> np.ndarray:
    """Pauli matrix sigma_mu for mu in 0..3 (identity, X, Y, Z)."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"pauli index must be 0..3, got {mu}")
    return _PAULI[mu].copy()


@dataclass(frozen=True)
class PureState:
    vector: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=complex).reshape(-1)
        dims = tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != vec.size:
            raise ValueError(f"dims {dims} do not match vector size {vec.size}")
        if abs(np.linalg.norm(vec) - 1.0) > TRACE_TOL:
            raise ValueError("state vector is not normalized")
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.vector.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.vector, self.vector.conj()), self.dims)

    def projector(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        if int(np.prod(dims)) != mat.shape[0]:
            raise ValueError(f"dims {dims} do not match matrix dimension {mat.shape[0]}")
        if not is_hermitian(mat):
            raise ValueError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(mat).real - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {np.trace(mat).real}, expected 1")
        if np.min(np.linalg.eigvalsh(mat)) < EIG_FLOOR:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def mat(self) -> np.ndarray:
        return self.matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def reduced(self, keep: Sequence[int]) -> "DensityMatrix":
        keep = sorted(set(keep))
        sub = partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(sub, tuple(self.dims[q] for q in keep))

    def permuted(self, perm: Sequence[int]) -> "DensityMatrix":
        return DensityMatrix(
            permute_subsystems(self.matrix, self.dims, perm),
            tuple(self.dims[p] for p in perm),
        )

    def overlap(self, state: PureState | np.ndarray) -> float:
        vec = state.vector if isinstance(state, PureState) else np.asarray(state).reshape(-1)
        return float(np.real(vec.conj() @ self.matrix @ vec))


def epr() -> PureState:
    """Two-qubit maximally entangled state (|00> + |11>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return PureState(v, (2, 2))


def ghz() -> PureState:
    """Three-qubit GHZ state (|000> + |111>)/sqrt(2)."""
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1 / np.sqrt(2)
    return PureState(v, (2, 2, 2))


def bell_basis() -> list[PureState]:
    """The four Bell states (sigma_mu x I)|Psi+>, mu = 0..3."""
    base = epr().vector
    return [PureState(tensor(pauli(mu), pauli(0)) @ base, (2, 2)) for mu in range(4)]


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple[np.ndarray, ...]
    input_dims: tuple[int, ...]
    output_dims: tuple[int, ...]
    check: bool = True

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        din = int(np.prod(self.input_dims))
        dout = int(np.prod(self.output_dims))
        for k in ops:
            if k.shape != (dout, din):
                raise ValueError(f"Kraus operator shape {k.shape} != ({dout}, {din})")
        if self.check and self.completeness_residual_of(ops, din) > COMPLETENESS_TOL:
            raise ValueError("Kraus operators violate completeness (sum K^dag K != I)")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "input_dims", tuple(int(d) for d in self.input_dims))
        object.__setattr__(self, "output_dims", tuple(int(d) for d in self.output_dims))

    @staticmethod
    def completeness_residual_of(ops: Sequence[np.ndarray], din: int) -> float:
        acc = np.zeros((din, din), dtype=complex)
        for k in ops:
            acc += dagger(k) @ k
        return float(np.max(np.abs(acc - np.eye(din))))

    def completeness_residual(self) -> float:
        return self.completeness_residual_of(self.operators, int(np.prod(self.input_dims)))


class Superoperator:
    """An applicable map on density matrices, tagged by how it is realized."""

    tag: str
    input_dims: tuple[int, ...]
    output_dims: tuple[int, ...]

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        raise NotImplementedError

    def extend(self, env_dim: int) -> "Superoperator":
        """The map acting jointly with the identity on a trailing ancilla."""
        raise NotImplementedError

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        return self.apply(rho)


class KrausSuperoperator(Superoperator):
    def __init__(self, channel: KrausChannel, tag: str = "kraus"):
        self.channel = channel
        self.tag = tag
        self.input_dims = channel.input_dims
        self.output_dims = channel.output_dims

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        if rho.dims != self.input_dims:
            raise ValueError(f"state dims {rho.dims} != channel input dims {self.input_dims}")
        out = np.zeros((int(np.prod(self.output_dims)),) * 2, dtype=complex)
        for k in self.channel.operators:
            out += k @ rho.matrix @ dagger(k)
        return DensityMatrix(out, self.output_dims)

    def extend(self, env_dim: int) -> "KrausSuperoperator":
        eye = np.eye(env_dim, dtype=complex)
        ext = KrausChannel(
            tuple(tensor(k, eye) for k in self.channel.operators),
            self.input_dims + (env_dim,),
            self.output_dims + (env_dim,),
            check=False,
        )
        return KrausSuperoperator(ext, tag=self.tag)


class ComposedSuperoperator(Superoperator):
    def __init__(self, outer: Superoperator, inner: Superoperator):
        if inner.output_dims != outer.input_dims:
            raise ValueError(
                f"cannot compose: inner output dims {inner.output_dims} != "
                f"outer input dims {outer.input_dims}"
            )
        self.outer = outer
        self.inner = inner
        self.tag = "composition"
        self.input_dims = inner.input_dims
        self.output_dims = outer.output_dims

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        return self.outer.apply(self.inner.apply(rho))

    def extend(self, env_dim: int) -> "ComposedSuperoperator":
        return ComposedSuperoperator(self.outer.extend(env_dim), self.inner.extend(env_dim))


def compose(outer: Superoperator, inner: Superoperator) -> ComposedSuperoperator:
    """Superoperator composition: apply(compose(f, g), rho) = f(g(rho))."""
    return ComposedSuperoperator(outer, inner)


def identity_superoperator(dims: Sequence[int]) -> KrausSuperoperator:
    dims = tuple(int(d) for d in dims)
    eye = np.eye(int(np.prod(dims)), dtype=complex)
    return KrausSuperoperator(KrausChannel((eye,), dims, dims))


def trace_out_superoperator(dims: Sequence[int], subsystem: int) -> KrausSuperoperator:
    """Partial trace over one subsystem, as an explicit Kraus channel."""
    dims = tuple(int(d) for d in dims)
    d = dims[subsystem]
    before = int(np.prod(dims[:subsystem])) if subsystem else 1
    after = int(np.prod(dims[subsystem + 1 :])) if subsystem + 1 < len(dims) else 1
    ops = []
    for c in range(d):
        bra = np.zeros((1, d), dtype=complex)
        bra[0, c] = 1.0
        ops.append(tensor(np.eye(before, dtype=complex), bra, np.eye(after, dtype=complex)))
    out_dims = dims[:subsystem] + dims[subsystem + 1 :]
    return KrausSuperoperator(KrausChannel(tuple(ops), dims, out_dims))


def embed_kraus(
    local_ops: Sequence[np.ndarray], dims: Sequence[int], targets: Sequence[int]
) -> tuple[np.ndarray, ...]:
    """Lift square Kraus operators on ``targets`` to the full space in ``dims``."""
    dims = tuple(int(d) for d in dims)
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise ValueError("duplicate target subsystems")
    rest = [q for q in range(len(dims)) if q not in targets]
    d_loc = int(np.prod([dims[t] for t in targets]))
    d_rest = int(np.prod([dims[q] for q in rest])) if rest else 1
    perm = targets + rest  # old labels, new order: targets first
    p = permutation_matrix(dims, perm)
    eye = np.eye(d_rest, dtype=complex)
    out = []
    for k in local_ops:
        k = np.asarray(k, dtype=complex)
        if k.shape != (d_loc, d_loc):
            raise ValueError(f"local operator shape {k.shape} != ({d_loc}, {d_loc})")
        out.append(dagger(p) @ tensor(k, eye) @ p)
    return tuple(out)


def local_unitary_superoperator(
    u: np.ndarray, dims: Sequence[int], targets: Sequence[int]
) -> KrausSuperoperator:
    dims = tuple(int(d) for d in dims)
    ops = embed_kraus([u], dims, targets)
    return KrausSuperoperator(KrausChannel(ops, dims, dims))


def depolarizing_kraus(n_qubits: int) -> tuple[np.ndarray, ...]:
    """Exact Kraus set of the fully depolarizing map on n qubits: X -> Tr(X) I / 2^n.

    The operators are all n-fold Pauli tensor products scaled by 2^-n.
    """
    ops = [np.eye(1, dtype=complex)]
    for _ in range(n_qubits):
        ops = [tensor(k, pauli(mu)) for k in ops for mu in range(4)]
    return tuple(k / (2**n_qubits) for k in ops)


def apply(channel: Superoperator | KrausChannel, state: DensityMatrix) -> DensityMatrix:
    """Apply a channel to a state; raises on shape mismatch or a bad Kraus set."""
    if isinstance(channel, KrausChannel):
        if channel.completeness_residual() > COMPLETENESS_TOL:
            raise ValueError("channel violates Kraus completeness")
        channel = KrausSuperoperator(channel)
    return channel.apply(state)


# ---------------------------------------------------------------------------
# Twirls


def _epr_projectors() -> tuple[np.ndarray, np.ndarray]:
    p = epr().projector()
    return p, np.eye(4, dtype=complex) - p


def _measure_prepare_kraus(
    effects_outputs: Sequence[tuple[np.ndarray, np.ndarray]]
) -> list[np.ndarray]:
    """Kraus set of X -> sum_k M_k Tr(N_k X) for PSD effects N_k and states M_k."""
    ops: list[np.ndarray] = []
    for effect, output in effects_outputs:
        wn, vn = np.linalg.eigh(effect)
        wm, vm = np.linalg.eigh(output)
        for j in range(len(wn)):
            if wn[j] < 1e-12:
                continue
            for i in range(len(wm)):
                if wm[i] < 1e-12:
                    continue
                ops.append(np.sqrt(wm[i] * wn[j]) * np.outer(vm[:, i], vn[:, j].conj()))
    return ops


def uu_twirl_superoperator() -> KrausSuperoperator:
    """Projection onto the isotropic family: rho -> F Psi+ + (1-F)/3 (I - Psi+)."""
    p, q = _epr_projectors()
    ops = _measure_prepare_kraus([(p, p), (q, q / 3.0)])
    chan = KrausChannel(tuple(ops), (2, 2), (2, 2))
    return KrausSuperoperator(chan, tag="closed-form-twirl")


def uu_star_twirl(rho: DensityMatrix) -> DensityMatrix:
    """Exact UU*-twirl of a two-qubit state."""
    if rho.dim != 4:
        raise ValueError("uu_star_twirl expects a two-qubit (4-dimensional) state")
    p, q = _epr_projectors()
    f = float(np.real(np.trace(p @ rho.matrix)))
    return DensityMatrix(f * p + (1.0 - f) / 3.0 * q, rho.dims)


def epr_fidelity(rho: DensityMatrix) -> float:
    """F = <Psi+| rho |Psi+> for a two-qubit state."""
    return rho.overlap(epr())


def double_twirl_projectors(
    pairs: tuple[tuple[int, int], tuple[int, int]] = ((0, 1), (2, 3))
) -> list[np.ndarray]:
    """The four projectors Psi x Psi, Psi x Q, Q x Psi, Q x Q (Q = I - Psi).

    ``pairs`` names the two qubit pairs inside a four-qubit system; the
    projectors are returned in the system's natural subsystem order.
    """
    p, q = _epr_projectors()
    (a0, a1), (b0, b1) = pairs
    order = [a0, a1, b0, b1]
    if sorted(order) != [0, 1, 2, 3]:
        raise ValueError(f"pairs {pairs} must cover subsystems 0..3")
    inverse = [order.index(k) for k in range(4)]
    return [
        permute_subsystems(tensor(x, y), (2, 2, 2, 2), inverse)
        for x in (p, q)
        for y in (p, q)
    ]


def double_twirl_superoperator(
    pairs: tuple[tuple[int, int], tuple[int, int]] = ((0, 1), (2, 3))
) -> KrausSuperoperator:
    """Independent UU*-twirl of two qubit pairs inside a four-qubit state."""
    projs = double_twirl_projectors(pairs)
    ranks = [1, 3, 3, 9]
    ops = _measure_prepare_kraus([(n, n / r) for n, r in zip(projs, ranks)])
    chan = KrausChannel(tuple(ops), (2, 2, 2, 2), (2, 2, 2, 2))
    return KrausSuperoperator(chan, tag="closed-form-twirl")


def double_twirl(
    rho: DensityMatrix,
) -> tuple[DensityMatrix, tuple[float, float, float, float]]:
    """Twirl a [2,2,2,2] state pairing subsystems (0,1) and (2,3).

    Returns the twirled state and its weights (A, B, C, D) on the four
    isotropic projectors; the weights sum to one.
    """
    if rho.dims != (2, 2, 2, 2):
        raise ValueError(f"double_twirl expects dims (2, 2, 2, 2), got {rho.dims}")
    projs = double_twirl_projectors()
    ranks = [1, 3, 3, 9]
    weights = tuple(float(np.real(np.trace(n @ rho.matrix))) for n in projs)
    out = sum(w * n / r for w, n, r in zip(weights, projs, ranks))
    return DensityMatrix(out, rho.dims), weights
