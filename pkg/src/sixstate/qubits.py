"""Small dense linear-algebra layer for few-qubit states.

Everything works on plain numpy arrays in the computational basis with
big-endian ordering: the leftmost ket symbol is the most significant bit
of the flat index, so ``|10>`` sits at index 2 of a two-qubit vector.
Systems are capped at four qubits, which is all the protocol needs.
"""

from enum import Enum

import numpy as np

MAX_QUBITS = 4

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class Basis(Enum):
    """The three measurement bases of the six-state protocol."""

    B1 = 1
    B2 = 2
    B3 = 3


# columns are the basis kets expressed in the computational basis
_BASIS_MATRICES = {
    Basis.B1: np.eye(2, dtype=complex),
    Basis.B2: np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _INV_SQRT2,
    Basis.B3: np.array([[1.0, 1.0], [1.0j, -1.0j]], dtype=complex) * _INV_SQRT2,
}


def n_qubits(dim: int) -> int:
    """Number of qubits for a state-space dimension, validating the 1..4 range."""
    n = int(dim).bit_length() - 1
    if dim != 2**n or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"dimension {dim} is not 2**n for n in 1..{MAX_QUBITS}")
    return n


def ket(*bits: int) -> np.ndarray:
    """Computational-basis ket for the given bit string, e.g. ket(1, 0) -> |10>."""
    if not 1 <= len(bits) <= MAX_QUBITS:
        raise ValueError("ket takes 1..4 bits")
    idx = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        idx = 2 * idx + b
    out = np.zeros(2 ** len(bits), dtype=complex)
    out[idx] = 1.0
    return out


def tensor(*states: np.ndarray) -> np.ndarray:
    """Tensor product of state vectors (or operators) in big-endian order."""
    if not states:
        raise ValueError("tensor needs at least one factor")
    out = np.asarray(states[0], dtype=complex)
    for s in states[1:]:
        out = np.kron(out, np.asarray(s, dtype=complex))
    if out.ndim == 1:
        n_qubits(out.shape[0])  # enforce the size cap
    return out


def outer(state: np.ndarray) -> np.ndarray:
    """Density matrix |state><state| of a pure state vector."""
    v = np.asarray(state, dtype=complex)
    return np.outer(v, v.conj())


def partial_trace(rho: np.ndarray, keep: tuple[int, ...] | list[int]) -> np.ndarray:
    """Trace out all qubits not listed in ``keep``.

    Parameters
    ----------
    rho : (2**n, 2**n) density matrix.
    keep : strictly increasing 0-based qubit indices to retain; the output
        keeps them in that order.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho.shape[0])
    if rho.shape != (2**n, 2**n):
        raise ValueError("rho must be square with power-of-two size")
    keep = tuple(keep)
    if not keep or any(not 0 <= q < n for q in keep):
        raise ValueError("keep indices out of range")
    if list(keep) != sorted(set(keep)):
        raise ValueError("keep must be strictly increasing")
    work = rho.reshape((2,) * (2 * n))
    # trace highest qubits first so lower axis numbers stay valid
    removed = 0
    for q in range(n - 1, -1, -1):
        if q in keep:
            continue
        m = n - removed  # qubits still present
        work = np.trace(work, axis1=q, axis2=q + m)
        removed += 1
    dim = 2 ** len(keep)
    return work.reshape((dim, dim))


def single_qubit_basis_change(basis: Basis) -> np.ndarray:
    """2x2 unitary whose columns are the kets of ``basis``.

    B1 is the identity, B2 the Hadamard, B3 maps |0>, |1> to the two
    circular states (|0> +- i|1>)/sqrt(2).
    """
    return _BASIS_MATRICES[basis].copy()


def basis_kets(basis: Basis) -> tuple[np.ndarray, np.ndarray]:
    """The two signal kets of a basis as column vectors."""
    m = _BASIS_MATRICES[basis]
    return m[:, 0].copy(), m[:, 1].copy()


def complete_to_unitary(
    columns: list[np.ndarray] | tuple[np.ndarray, ...],
    dim: int,
    positions: tuple[int, ...] | None = None,
) -> np.ndarray:
    """Extend orthonormal columns to a full unitary.

    The given vectors are placed at ``positions`` (default: 0, 1, ...).
    Remaining columns come from modified Gram-Schmidt over the canonical
    basis vectors taken in index order, keeping the first candidate whose
    residual survives projection; the completion is fully deterministic.
    """
    cols = [np.asarray(c, dtype=complex) for c in columns]
    if not cols or len(cols) > dim:
        raise ValueError("need between 1 and dim columns")
    if positions is None:
        positions = tuple(range(len(cols)))
    if len(positions) != len(cols) or len(set(positions)) != len(cols):
        raise ValueError("positions must be distinct and match columns")
    for c in cols:
        if c.shape != (dim,):
            raise ValueError("column length mismatch")
    for i, a in enumerate(cols):
        if abs(np.linalg.norm(a) - 1.0) > 1e-10:
            raise ValueError("input columns must be normalized")
        for b in cols[i + 1 :]:
            if abs(np.vdot(a, b)) > 1e-10:
                raise ValueError("input columns must be mutually orthogonal")

    u = np.zeros((dim, dim), dtype=complex)
    accepted = list(cols)
    for p, c in zip(positions, cols):
        u[:, p] = c
    free = [p for p in range(dim) if p not in positions]
    fill = 0
    for k in range(dim):
        if fill == len(free):
            break
        v = np.zeros(dim, dtype=complex)
        v[k] = 1.0
        # two projection passes keep orthogonality near machine precision
        for _ in range(2):
            for a in accepted:
                v -= np.vdot(a, v) * a
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            v /= norm
            u[:, free[fill]] = v
            accepted.append(v)
            fill += 1
    if fill != len(free):
        raise ValueError("completion failed; input columns span too much")
    return u


def unitarity_defect(u: np.ndarray) -> float:
    """max |U+ U - I|, zero for an exact unitary."""
    u = np.asarray(u, dtype=complex)
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def check_state(state: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Validate a pure-state vector (size 2..16, unit norm) and return it."""
    v = np.asarray(state, dtype=complex)
    if v.ndim != 1:
        raise ValueError("state must be a vector")
    n_qubits(v.shape[0])
    if abs(np.vdot(v, v).real - 1.0) > tol:
        raise ValueError("state is not normalized")
    return v


def check_density_matrix(rho: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Validate hermiticity, unit trace and nonnegative diagonal of rho."""
    rho = np.asarray(rho, dtype=complex)
    n_qubits(rho.shape[0])
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix trace is not 1")
    if np.diag(rho).real.min() < -tol:
        raise ValueError("density matrix has a negative diagonal entry")
    return rho
