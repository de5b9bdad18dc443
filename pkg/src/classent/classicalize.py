"""Measuring away subsystem C and the entanglement change it causes.

The channel studied here measures C destructively with a two-outcome
projective measurement {|v><v|, 1 - |v><v|} and re-encodes each outcome
i into a fresh classical flag state |i><i|:

    rho  ->  sum_i p_i sigma_i (x) |i><i|,
    p_i = tr(rho m_i),  sigma_i = tr_C(rho m_i) / p_i.

The entanglement change of a tripartite state is the drop from the
initial measure value to the best classicalized value,

    delta = E[rho] - max_M sum_i p_i E[sigma_i (x) |0><0|],

maximized over measurement directions |v> on a fixed angular grid.  For
a qubit C the ket is parameterized by (x, t) as the conjugate of
<v| = (cos x, e^{it} sin x); for a qutrit C two real angles give
|v> = (cos x1, sin x1 cos x2, sin x1 sin x2).  Restricting the search
to dichotomic projective measurements and perfect encodings loses no
generality for measures that are convex, monotonic under local
operations and flag-condition additive.

Everything on the grid is evaluated with stacked numpy eigensolves, so
the default 301 x 51 grid stays fast even at total dimension 256.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import EIG_CUTOFF, DensityMatrix, as_density, partial_trace
from .measures import (
    MeasureKind,
    NEG_EIG_THRESHOLD,
    as_measure,
    post_value,
    squashed_pure_tripartite,
    tripartite_negativity,
)

DEFAULT_GRID = (300, 50)

# Outcomes with smaller probability carry no normalizable post state;
# they are flagged and skipped in every aggregate.
ZERO_PROB = 1e-12

# Grid values this close to the maximum count as tied; ties resolve to
# the lowest grid index so plateaus still give a reproducible direction.
TIE_TOL = 1e-12


def grid_tolerance(grid) -> float:
    """Heuristic angular resolution of a grid, pi/n_x + pi/n_t."""
    nx, nt = grid
    return np.pi / nx + np.pi / nt


@dataclass(frozen=True)
class MeasurementDirection:
    """One grid direction on C, identified by its angles and grid index."""

    angles: tuple[float, ...]
    index: tuple[int, int]
    dim: int

    def ket(self) -> np.ndarray:
        if self.dim == 2:
            x, t = self.angles
            return np.array([np.cos(x), np.exp(-1j * t) * np.sin(x)])
        x1, x2 = self.angles
        return np.array(
            [np.cos(x1), np.sin(x1) * np.cos(x2), np.sin(x1) * np.sin(x2)],
            dtype=complex,
        )

    def angle_dict(self) -> dict[str, float]:
        keys = ("x", "t") if self.dim == 2 else ("x1", "x2")
        return {k: float(a) for k, a in zip(keys, self.angles)}


@dataclass(frozen=True)
class MeasurementOutcome:
    """One branch of a classicalized state.

    ``post`` is None exactly when the outcome probability is below the
    zero-probability threshold and ``negligible`` is set.
    """

    label: int
    prob: float
    post: DensityMatrix | None
    negligible: bool = False


@dataclass(frozen=True)
class DeltaResult:
    """Grid optimum of the entanglement change for one state and measure."""

    measure: MeasureKind
    delta: float
    global_value: float
    ensemble_value: float
    best_direction: MeasurementDirection
    ensemble: tuple[MeasurementOutcome, ...]
    grid: tuple[int, int]

    def to_jsonable(self) -> dict:
        return {
            "measure": self.measure.value,
            "delta": self.delta,
            "global_value": self.global_value,
            "ensemble_value": self.ensemble_value,
            "best_direction": self.best_direction.angle_dict(),
            "grid": list(self.grid),
        }


def _check_grid(grid) -> tuple[int, int]:
    nx, nt = grid
    nx, nt = int(nx), int(nt)
    if nx < 1 or nt < 1:
        raise ValueError(f"grid resolution must be positive, got {(nx, nt)}")
    return nx, nt


def direction_kets(dim_c: int, grid=DEFAULT_GRID) -> np.ndarray:
    """Stacked kets for every grid direction, shape (N, dim_c).

    Row order is the flat grid index k * (n_t + 1) + j for angle steps
    (pi k / n_x, pi j / n_t), both endpoints included.
    """
    nx, nt = _check_grid(grid)
    first = np.pi * np.arange(nx + 1) / nx
    second = np.pi * np.arange(nt + 1) / nt
    a, b = np.meshgrid(first, second, indexing="ij")
    if dim_c == 2:
        kets = np.stack([np.cos(a), np.exp(-1j * b) * np.sin(a)], axis=-1)
    elif dim_c == 3:
        kets = np.stack(
            [np.cos(a), np.sin(a) * np.cos(b), np.sin(a) * np.sin(b)], axis=-1
        ).astype(complex)
    else:
        raise ValueError(f"measurement grids cover C of dimension 2 or 3, got {dim_c}")
    return kets.reshape(-1, dim_c)


def direction_grid(dim_c: int, grid=DEFAULT_GRID) -> list[MeasurementDirection]:
    """All grid directions in flat index order."""
    nx, nt = _check_grid(grid)
    if dim_c not in (2, 3):
        raise ValueError(f"measurement grids cover C of dimension 2 or 3, got {dim_c}")
    out = []
    for k in range(nx + 1):
        for j in range(nt + 1):
            out.append(
                MeasurementDirection(
                    (np.pi * k / nx, np.pi * j / nt), (k, j), dim_c
                )
            )
    return out


def _direction_at(dim_c: int, grid, flat: int) -> MeasurementDirection:
    nx, nt = _check_grid(grid)
    k, j = divmod(int(flat), nt + 1)
    return MeasurementDirection((np.pi * k / nx, np.pi * j / nt), (k, j), dim_c)


def _check_tripartite(rho: DensityMatrix) -> DensityMatrix:
    if rho.n_subsystems != 3:
        raise ValueError(f"classicalization acts on tripartite states, got dims {rho.dims}")
    return rho


def c_blocks(rho: DensityMatrix) -> np.ndarray:
    """Operator blocks M[i, j] = <i|_C rho |j>_C, shape (dC, dC, dAB, dAB)."""
    da, db, dc = rho.dims
    t = rho.data.reshape(da * db, dc, da * db, dc)
    return t.transpose(1, 3, 0, 2)


def classicalize(state, direction: MeasurementDirection) -> list[MeasurementOutcome]:
    """Measure C along ``direction`` and collect the outcome ensemble.

    Outcome 0 projects onto |v><v|, outcome 1 onto its complement.
    Each non-negligible branch carries a validated normalized post state
    on A (x) B.
    """
    rho = _check_tripartite(as_density(state))
    da, db, dc = rho.dims
    if direction.dim != dc:
        raise ValueError(
            f"direction is for a {direction.dim}-level C, state has dim C = {dc}"
        )
    blocks = c_blocks(rho)
    v = direction.ket()
    k0 = np.einsum("c,cdab,d->ab", v.conj(), blocks, v)
    k1 = np.einsum("ccab->ab", blocks) - k0
    outcomes = []
    for label, k in ((0, k0), (1, k1)):
        p = float(np.trace(k).real)
        if p < ZERO_PROB:
            outcomes.append(MeasurementOutcome(label, max(p, 0.0), None, True))
        else:
            outcomes.append(MeasurementOutcome(label, p, DensityMatrix(k / p, (da, db))))
    return outcomes


# ---------------------------------------------------------------------------
# Stacked kernels over all grid directions at once
# ---------------------------------------------------------------------------


def _stacked_outcome_blocks(rho: DensityMatrix, kets: np.ndarray):
    """Unnormalized first-outcome blocks <v|rho|v> for every grid ket,
    together with the complement blocks; each has shape (N, dAB, dAB)."""
    blocks = c_blocks(rho)
    k0 = np.einsum("nc,cdab,nd->nab", kets.conj(), blocks, kets, optimize=True)
    rho_ab = np.einsum("ccab->ab", blocks)
    return k0, rho_ab[None, :, :] - k0


def _stacked_pt_negsum(k: np.ndarray, dims_ab) -> np.ndarray:
    """Negative partial-transpose weight of each stacked block."""
    da, db = dims_ab
    n = k.shape[0]
    kt = k.reshape(n, da, db, da, db).transpose(0, 3, 2, 1, 4).reshape(n, da * db, da * db)
    w = np.linalg.eigvalsh(kt)
    return -np.where(w < -NEG_EIG_THRESHOLD, w, 0.0).sum(axis=1)


def _stacked_marginal_entropy(k: np.ndarray, probs: np.ndarray, dims_ab) -> np.ndarray:
    """(S(A) + S(B)) / 2 of each normalized block; zero where negligible."""
    da, db = dims_ab
    n = k.shape[0]
    t = k.reshape(n, da, db, da, db)
    safe = np.where(probs > ZERO_PROB, probs, 1.0)
    out = np.zeros(n)
    for marg in (np.einsum("nabcb->nac", t), np.einsum("nabad->nbd", t)):
        w = np.linalg.eigvalsh(marg) / safe[:, None]
        logs = np.log2(w, out=np.zeros_like(w), where=w > EIG_CUTOFF)
        out += -(np.where(w > EIG_CUTOFF, w, 0.0) * logs).sum(axis=1)
    return np.where(probs > ZERO_PROB, out / 2.0, 0.0)


def _stacked_weighted_post(k: np.ndarray, measure: MeasureKind, dims_ab) -> np.ndarray:
    """p * post_value(sigma) for each stacked unnormalized block."""
    if measure is MeasureKind.NEGATIVITY:
        # Negativity scales linearly, so the weight p never needs to be
        # divided out: p * 2 N(sigma) = 2 N(<v|rho|v>).
        return 2.0 * _stacked_pt_negsum(k, dims_ab)
    probs = np.trace(k, axis1=1, axis2=2).real
    return probs * _stacked_marginal_entropy(k, probs, dims_ab)


def _stacked_single_post(k: np.ndarray, measure: MeasureKind, dims_ab) -> np.ndarray:
    """post_value of each normalized block; -inf where negligible."""
    probs = np.trace(k, axis1=1, axis2=2).real
    mask = probs > ZERO_PROB
    if measure is MeasureKind.NEGATIVITY:
        vals = 2.0 * _stacked_pt_negsum(k, dims_ab) / np.where(mask, probs, 1.0)
    else:
        vals = _stacked_marginal_entropy(k, probs, dims_ab)
    return np.where(mask, vals, -np.inf)


def global_value(state, measure) -> float:
    """Measure value of the intact tripartite state."""
    measure = as_measure(measure)
    rho = _check_tripartite(as_density(state))
    if measure is MeasureKind.NEGATIVITY:
        return tripartite_negativity(rho)
    return squashed_pure_tripartite(rho)


def ensemble_values(state, measure=MeasureKind.NEGATIVITY, grid=DEFAULT_GRID) -> np.ndarray:
    """Ensemble entanglement left by each grid direction on C.

    Returns the flat array of sum_i p_i E[sigma_i (x) |i><i|] in grid
    order; ``delta`` subtracts its maximum from the global value.
    """
    measure = as_measure(measure)
    rho = _check_tripartite(as_density(state))
    grid = _check_grid(grid)
    dims_ab = rho.dims[:2]
    kets = direction_kets(rho.dims[2], grid)
    k0, k1 = _stacked_outcome_blocks(rho, kets)
    return _stacked_weighted_post(k0, measure, dims_ab) + _stacked_weighted_post(
        k1, measure, dims_ab
    )


def delta(state, measure=MeasureKind.NEGATIVITY, grid=DEFAULT_GRID) -> DeltaResult:
    """Entanglement change under the best grid measurement on C.

    Parameters
    ----------
    state : DensityMatrix or PureState
        Tripartite state; C must be a qubit or qutrit.  The squashed
        measure additionally needs a pure state for the global term.
    measure : MeasureKind or str
    grid : (n_x, n_t)
        Angular resolution; both endpoints are included, so the search
        covers (n_x + 1)(n_t + 1) directions.

    Returns
    -------
    DeltaResult
        delta together with the winning direction and its outcome
        ensemble.  On plateaus the lowest flat grid index wins.
    """
    measure = as_measure(measure)
    rho = _check_tripartite(as_density(state))
    grid = _check_grid(grid)
    gval = global_value(rho, measure)
    values = ensemble_values(rho, measure, grid)
    best = int(np.argmax(values >= values.max() - TIE_TOL))
    best_dir = _direction_at(rho.dims[2], grid, best)
    ensemble = tuple(classicalize(rho, best_dir))
    ensemble_value = float(values[best])
    return DeltaResult(
        measure=measure,
        delta=gval - ensemble_value,
        global_value=gval,
        ensemble_value=ensemble_value,
        best_direction=best_dir,
        ensemble=ensemble,
        grid=grid,
    )


def lower_bound(state, measure=MeasureKind.NEGATIVITY, grid=DEFAULT_GRID) -> float:
    """Certified floor on the entanglement change.

    Scans single rank-one outcomes sigma_|x> over the grid:

        delta >= E[rho] - max_x E[sigma_|x> (x) |0><0|].

    The complement outcome of a dichotomic qubit measurement is itself
    a direction, so for even grids this is never above ``delta``.
    """
    measure = as_measure(measure)
    rho = _check_tripartite(as_density(state))
    grid = _check_grid(grid)
    gval = global_value(rho, measure)
    kets = direction_kets(rho.dims[2], grid)
    k0, _ = _stacked_outcome_blocks(rho, kets)
    vals = _stacked_single_post(k0, measure, rho.dims[:2])
    return gval - float(vals.max())


def upper_bound(state, measure=MeasureKind.NEGATIVITY) -> float:
    """Ceiling on the entanglement change: discard the outcome label.

    Encoding every outcome into the same flag |0> keeps at most
    E[rho_AB (x) |0><0|], so delta <= E[rho] - that value.
    """
    measure = as_measure(measure)
    rho = _check_tripartite(as_density(state))
    gval = global_value(rho, measure)
    return gval - post_value(measure, partial_trace(rho, (0, 1)))
