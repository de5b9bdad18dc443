"""Core linear algebra for multipartite density operators.

Everything in this module works on explicit numpy matrices in the
computational product basis with row-major subsystem ordering: the
leftmost subsystem is the most significant index, so a basis label
``|i_0 i_1 ... i_{n-1}>`` maps to the flat index
``i_0 * d_1 * ... * d_{n-1} + ... + i_{n-1}``.

All entropies are in bits (log base 2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

# Validation tolerances for density operators.
HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

# Eigenvalues below this cutoff are treated as zero in entropies and ranks.
EIG_CUTOFF = 1e-10

_LETTERS = "ABCDEFGH"


def _as_array(m) -> np.ndarray:
    """Unwrap DensityMatrix-like objects to their raw matrix."""
    if isinstance(m, np.ndarray):
        return m
    return np.asarray(m.data if hasattr(m, "data") else m, dtype=complex)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density operator on a tensor product of subsystems.

    Parameters
    ----------
    data : array_like
        Square complex matrix of side ``prod(dims)``.
    dims : tuple of int
        Subsystem dimensions, leftmost most significant.

    Construction rejects anything that is not Hermitian (elementwise to
    1e-10), unit trace (to 1e-10) and positive semidefinite (smallest
    eigenvalue >= -1e-9).  Rejected input is reported with its maximal
    deviation rather than silently projected back to the valid set.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        mat = np.array(self.data, dtype=complex, order="C")
        side = int(np.prod(dims))
        if mat.ndim != 2 or mat.shape != (side, side):
            raise ValueError(
                f"density matrix shape {mat.shape} does not match dims {dims}"
            )
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 2, got {dims}")
        herm_dev = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_dev > HERM_TOL:
            raise ValueError(
                f"not Hermitian: max |rho - rho^dag| = {herm_dev:.3e} > {HERM_TOL}"
            )
        trace_dev = abs(complex(np.trace(mat)) - 1.0)
        if trace_dev > TRACE_TOL:
            raise ValueError(
                f"trace deviates from 1 by {trace_dev:.3e} > {TRACE_TOL}"
            )
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -PSD_TOL:
            raise ValueError(
                f"not positive semidefinite: min eigenvalue = {min_eig:.3e} < -{PSD_TOL}"
            )
        mat.flags.writeable = False
        object.__setattr__(self, "data", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def side(self) -> int:
        return self.data.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class PureState:
    """A normalized state vector on a tensor product of subsystems."""

    amp: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        vec = np.array(self.amp, dtype=complex).reshape(-1)
        if vec.size != int(np.prod(dims)):
            raise ValueError(
                f"amplitude length {vec.size} does not match dims {dims}"
            )
        norm_dev = abs(float(np.linalg.norm(vec)) - 1.0)
        if norm_dev > 1e-12:
            raise ValueError(f"norm deviates from 1 by {norm_dev:.3e} > 1e-12")
        vec.flags.writeable = False
        object.__setattr__(self, "amp", vec)
        object.__setattr__(self, "dims", dims)

    def projector(self) -> DensityMatrix:
        """Rank-one density operator |psi><psi|."""
        return DensityMatrix(np.outer(self.amp, self.amp.conj()), self.dims)


@dataclass(frozen=True)
class Bipartition:
    """A two-block split of subsystem indices, written left|right.

    The right block is the one transposed by :func:`partial_transpose`,
    so ``Bipartition((0, 1), (2,))`` names the AB|C cut and its witness
    spectrum comes from transposing subsystem C.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(int(i) for i in self.left)
        right = tuple(int(i) for i in self.right)
        if not left or not right:
            raise ValueError("both blocks of a bipartition must be nonempty")
        if set(left) & set(right):
            raise ValueError(f"blocks overlap: {left} | {right}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def label(self) -> str:
        lo = "".join(_LETTERS[i] for i in sorted(self.left))
        hi = "".join(_LETTERS[i] for i in sorted(self.right))
        return f"{lo}|{hi}"

    def check_covers(self, n: int):
        if sorted(self.left + self.right) != list(range(n)):
            raise ValueError(
                f"bipartition {self.label()} does not cover subsystems 0..{n - 1} exactly once"
            )

    def block_dims(self, dims) -> tuple[int, int]:
        d_left = int(np.prod([dims[i] for i in self.left]))
        d_right = int(np.prod([dims[i] for i in self.right]))
        return d_left, d_right


def as_density(state) -> DensityMatrix:
    """Coerce a PureState to its projector; pass DensityMatrix through."""
    if isinstance(state, PureState):
        return state.projector()
    if isinstance(state, DensityMatrix):
        return state
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def tripartite_cuts() -> tuple[Bipartition, Bipartition, Bipartition]:
    """The three bipartitions AB|C, BC|A, AC|B of a tripartite system."""
    return (
        Bipartition((0, 1), (2,)),
        Bipartition((1, 2), (0,)),
        Bipartition((0, 2), (1,)),
    )


def kron(a, b) -> np.ndarray:
    """Tensor product of two matrices in row-major subsystem order."""
    return np.kron(_as_array(a), _as_array(b))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix
    keep : sequence of int
        Strictly increasing subsystem indices to retain.

    Returns
    -------
    DensityMatrix
        Reduced state on the kept subsystems, in their original order.
    """
    keep = tuple(int(i) for i in keep)
    n = rho.n_subsystems
    if not keep:
        raise ValueError("cannot trace out everything")
    if list(keep) != sorted(set(keep)) or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep must be strictly increasing indices in 0..{n - 1}, got {keep}")
    reduced = _partial_trace_array(rho.data, rho.dims, keep)
    return DensityMatrix(reduced, tuple(rho.dims[i] for i in keep))


def _partial_trace_array(mat: np.ndarray, dims, keep) -> np.ndarray:
    """Partial trace on a raw matrix; no validation of the result."""
    dims = tuple(dims)
    n = len(dims)
    keep = tuple(keep)
    t = mat.reshape(dims + dims)
    # Row axis i carries label i; traced column axes reuse it so einsum
    # contracts them, kept column axes get the shifted label n + i.
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, row + col, out)
    side = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(side, side)


def partial_transpose(rho: DensityMatrix, part: Bipartition) -> np.ndarray:
    """Transpose the right block of ``part``; the result is generally not PSD.

    Returns a plain Hermitian matrix, since a negative partial-transpose
    spectrum is exactly what the entanglement witnesses look for.
    """
    part.check_covers(rho.n_subsystems)
    return _partial_transpose_array(rho.data, rho.dims, part.right)


def _partial_transpose_array(mat: np.ndarray, dims, right) -> np.ndarray:
    dims = tuple(dims)
    n = len(dims)
    t = mat.reshape(dims + dims)
    axes = list(range(2 * n))
    for i in right:
        axes[i], axes[n + i] = axes[n + i], axes[i]
    side = mat.shape[0]
    return t.transpose(axes).reshape(side, side).copy()


def herm_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Hermitian matrix; deviations up to 1e-8 elementwise are accepted.

    Returns
    -------
    (w, V)
        Eigenvalues ``w`` in ascending order and eigenvector columns ``V``.
    """
    mat = np.asarray(_as_array(h), dtype=complex)
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > 1e-8:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dag| = {dev:.3e} > 1e-8")
    return np.linalg.eigh(mat)


def _entropy_bits(w: np.ndarray, cutoff: float = EIG_CUTOFF) -> float:
    """Shannon entropy in bits of an eigenvalue vector, zeros cut off."""
    w = w[w > cutoff]
    if w.size == 0:
        return 0.0
    return float(-np.sum(w * np.log2(w)))


def von_neumann_entropy(rho, cutoff: float = EIG_CUTOFF) -> float:
    """Von Neumann entropy in bits, S = -tr(rho log2 rho).

    Eigenvalues at or below ``cutoff`` are discarded, so the pure-state
    entropy is exactly zero despite rounding in the eigensolver.
    """
    w = np.linalg.eigvalsh(_as_array(rho))
    return _entropy_bits(w, cutoff)


def numeric_rank(rho, tol: float = EIG_CUTOFF) -> int:
    """Number of eigenvalues above ``tol``."""
    w = np.linalg.eigvalsh(_as_array(rho))
    return int(np.count_nonzero(w > tol))


# ---------------------------------------------------------------------------
# Matrix serialization.
#
# JSON: array of rows, each entry a [re, im] pair.  CSV: one line per row,
# entries "re+imi" with repr-exact floats.  Both round-trip bit for bit.
# ---------------------------------------------------------------------------


def matrix_to_jsonable(m) -> list:
    mat = _as_array(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def matrix_from_jsonable(obj) -> np.ndarray:
    rows = [[complex(re, im) for re, im in row] for row in obj]
    return np.array(rows, dtype=complex)


def save_matrix_json(m, path):
    with open(path, "w") as fh:
        json.dump(matrix_to_jsonable(m), fh)


def load_matrix_json(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_jsonable(json.load(fh))


def _entry_to_csv(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    # repr of a Python float round-trips exactly
    return f"{float(z.real)!r}{sign}{abs(float(z.imag))!r}i"


def matrix_to_csv(m) -> str:
    mat = _as_array(m)
    return "\n".join(",".join(_entry_to_csv(z) for z in row) for row in mat) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    for line in text.strip().splitlines():
        rows.append([complex(cell.strip().replace("i", "j")) for cell in line.split(",")])
    return np.array(rows, dtype=complex)


def save_matrix_csv(m, path):
    with open(path, "w") as fh:
        fh.write(matrix_to_csv(m))


def load_matrix_csv(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_csv(fh.read())
