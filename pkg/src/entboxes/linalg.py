"""Dense complex linear algebra for small multi-qubit Hilbert spaces (dim <= 64).

All operators are plain ``numpy`` arrays of ``complex128`` in row-major
convention: subsystem 0 is the leftmost tensor factor and the most
significant index.
"""

from __future__ import annotations

import string
from typing import Iterable, NamedTuple, Sequence

import numpy as np

HERMITICITY_TOL = 1e-9
NORM_TOL = 1e-9


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices/vectors, left to right."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - dagger(m))) <= tol


def _check_dims(size: int, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
    if int(np.prod(dims)) != size:
        raise ValueError(f"dims {dims} do not factor dimension {size}")
    return dims


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduce ``m`` to the subsystems in ``keep`` (kept in their original order).

    ``dims`` lists the local dimensions of the tensor factorization of ``m``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("partial_trace expects a square matrix")
    dims = _check_dims(m.shape[0], dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be non-empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")

    row = list(string.ascii_lowercase[:n])
    col = list(string.ascii_lowercase[n : 2 * n])
    for q in range(n):
        if q not in keep:
            col[q] = row[q]
    subscripts = (
        "".join(row) + "".join(col) + "->"
        + "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    )
    kept_dim = int(np.prod([dims[q] for q in keep]))
    reduced = np.einsum(subscripts, m.reshape(dims + dims))
    return reduced.reshape(kept_dim, kept_dim)


def trace_all(m: np.ndarray) -> np.ndarray:
    """Full trace, returned as a 1x1 matrix."""
    return np.array([[np.trace(np.asarray(m))]], dtype=complex)


def permute_subsystems(m: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors of a vector or square matrix.

    ``perm[k]`` is the old index of the subsystem placed at new position k.
    """
    m = np.asarray(m, dtype=complex)
    dims = tuple(int(d) for d in dims)
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"perm {perm} is not a permutation of {len(dims)} subsystems")
    size = int(np.prod(dims))
    if m.ndim == 1 or (m.ndim == 2 and 1 in m.shape):
        vec = m.reshape(size)
        return vec.reshape(dims).transpose(perm).reshape(m.shape)
    if m.shape != (size, size):
        raise ValueError(f"matrix shape {m.shape} incompatible with dims {dims}")
    axes = perm + tuple(p + len(dims) for p in perm)
    return m.reshape(dims + dims).transpose(axes).reshape(size, size)


def permutation_matrix(dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Matrix P with P @ v = permute_subsystems(v, dims, perm)."""
    dims = tuple(int(d) for d in dims)
    size = int(np.prod(dims))
    source = np.arange(size).reshape(dims).transpose(perm).reshape(size)
    p = np.zeros((size, size), dtype=complex)
    p[np.arange(size), source] = 1.0
    return p


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, matching eigenvalue order


def eig_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("eig_hermitian expects a square matrix")
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the trace norm of (a - b) for Hermitian a, b."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    w = np.linalg.eigvalsh(a - b)
    return float(0.5 * np.sum(np.abs(w)))


def schmidt_coefficients(
    v: np.ndarray, dims: Sequence[int], cut: Iterable[int]
) -> np.ndarray:
    """Schmidt coefficients of a normalized pure state across a bipartition.

    ``cut`` lists the subsystems forming one side. Returns the descending
    singular values; their squares sum to one.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    dims = _check_dims(v.size, dims)
    n = len(dims)
    left = sorted(set(int(c) for c in cut))
    if not left or len(left) == n:
        raise ValueError("cut must be a proper non-empty subset of subsystems")
    if left[0] < 0 or left[-1] >= n:
        raise ValueError(f"cut indices {left} out of range")
    if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
        raise ValueError("state vector is not normalized")
    right = [q for q in range(n) if q not in left]
    dl = int(np.prod([dims[q] for q in left]))
    dr = int(np.prod([dims[q] for q in right]))
    amp = v.reshape(dims).transpose(left + right).reshape(dl, dr)
    return np.linalg.svd(amp, compute_uv=False)


def random_unitary(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-random unitary from a Ginibre matrix and phase-fixed QR."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density(dim: int, seed: int | np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random mixed state from a Ginibre factor G: G G^dag normalized to trace 1."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real
