"""Certification checks around complete entanglement loss.

Three independent certificates are implemented:

* a grid scan certifying that every measurement direction on C leaves a
  separable two-qubit state behind, which forces the entanglement
  change to be complete;
* a zero-discord test deciding whether the state is already classical
  on C, i.e. a fixed point of the classicalization channel;
* a rank and PPT report that cross-checks the structural consequences
  of complete loss (a reduced state of rank more than 2, and rank more
  than 2 globally when additionally AB|C is separable).

Verdicts are conservative: "separable" is only ever claimed where the
PPT criterion is decisive, and the discord test answers "undecided"
rather than guessing when a degenerate marginal defeats its basis
search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classicalize import (
    DEFAULT_GRID,
    ZERO_PROB,
    MeasurementDirection,
    _direction_at,
    c_blocks,
    direction_kets,
)
from .matcore import (
    DensityMatrix,
    as_density,
    matrix_to_jsonable,
    numeric_rank,
    partial_trace,
    tripartite_cuts,
)
from .measures import SeparabilityVerdict, ppt_verdict

# Off-diagonal C-blocks below this size count as vanished.
BLOCK_TOL = 1e-10

# Marginal eigenvalues closer than this leave the diagonalizing basis
# ambiguous, so the discord test falls back to a search.
DEGENERACY_GAP = 1e-8


@dataclass(frozen=True)
class Condition1Report:
    """Outcome of the all-directions separability scan.

    On "pass", witness is the worst normalized partial-transpose
    eigenvalue encountered and direction is None.  On "fail", witness
    and direction identify the first grid direction (lowest flat index)
    whose post state is NPT.
    """

    status: str
    directions_checked: int
    skipped: int
    witness: float
    direction: MeasurementDirection | None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_jsonable(self) -> dict:
        out = {
            "status": self.status,
            "directions_checked": self.directions_checked,
            "skipped": self.skipped,
            "witness": self.witness,
        }
        if self.direction is not None:
            out["direction"] = self.direction.angle_dict()
        return out


def condition1_check(state, grid=DEFAULT_GRID, tol: float = 1e-10) -> Condition1Report:
    """Scan every grid direction |x> on C for a separable post state.

    The normalized post state sigma_|x> = <x|rho|x> / p_x must be PPT
    for every direction; with qubit A and B the PPT criterion is
    decisive, so a full pass certifies complete entanglement loss.
    Directions with p_x below the zero-probability threshold are
    skipped.
    """
    rho = as_density(state)
    if rho.n_subsystems != 3 or rho.dims[0] != 2 or rho.dims[1] != 2:
        raise ValueError(
            f"PPT not decisive for dims {rho.dims}; the scan needs qubit A and B"
        )
    kets = direction_kets(rho.dims[2], grid)
    blocks = c_blocks(rho)
    k0 = np.einsum("nc,cdab,nd->nab", kets.conj(), blocks, kets, optimize=True)
    probs = np.trace(k0, axis1=1, axis2=2).real
    mask = probs > ZERO_PROB
    kt = k0.reshape(-1, 2, 2, 2, 2).transpose(0, 3, 2, 1, 4).reshape(-1, 4, 4)
    min_eigs = np.linalg.eigvalsh(kt)[:, 0]
    witnesses = np.where(mask, min_eigs / np.where(mask, probs, 1.0), np.inf)
    skipped = int((~mask).sum())
    checked = int(mask.sum())
    failing = np.nonzero(witnesses < -tol)[0]
    if failing.size:
        first = int(failing[0])
        return Condition1Report(
            "fail", checked, skipped, float(witnesses[first]),
            _direction_at(rho.dims[2], grid, first),
        )
    worst = float(witnesses[mask].min()) if checked else np.inf
    return Condition1Report("pass", checked, skipped, worst, None)


@dataclass(frozen=True)
class DiscordReport:
    """Whether the state is classical on C: yes, no or undecided.

    On "yes", basis holds the C basis (as columns) whose dephasing
    leaves the state invariant.
    """

    status: str
    basis: np.ndarray | None

    def to_jsonable(self) -> dict:
        out = {"status": self.status}
        if self.basis is not None:
            out["basis"] = matrix_to_jsonable(self.basis)
        return out


def _blocks_in_basis(blocks: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return np.einsum("ci,cdab,dj->ijab", basis.conj(), blocks, basis, optimize=True)


def zero_discord_check(state, grid=DEFAULT_GRID) -> DiscordReport:
    """Decide whether rho = sum_i p_i sigma_i (x) |b_i><b_i| for some basis.

    The candidate basis must diagonalize the C marginal, so its
    eigenbasis is checked first; that certificate is valid even for a
    degenerate marginal.  If it fails, a nondegenerate marginal makes
    "no" exact, and so does a globally pure state.  Only a mixed state
    with a degenerate marginal falls back to a grid search over qubit
    bases, which returns yes or undecided, never a false no.
    """
    rho = as_density(state)
    if rho.n_subsystems != 3:
        raise ValueError(f"the discord check acts on tripartite states, got dims {rho.dims}")
    dc = rho.dims[2]
    blocks = c_blocks(rho)
    rho_c = partial_trace(rho, (2,)).data
    w, basis = np.linalg.eigh(rho_c)
    in_eigenbasis = _blocks_in_basis(blocks, basis)
    off = in_eigenbasis.copy()
    off[np.arange(dc), np.arange(dc)] = 0.0
    if float(np.max(np.abs(off))) <= BLOCK_TOL:
        return DiscordReport("yes", basis)
    purity = float(np.trace(rho.data @ rho.data).real)
    if purity >= 1.0 - 1e-10:
        # A pure state is classical on C only if it is a product across
        # AB|C, and then the marginal eigenbasis above already passed.
        return DiscordReport("no", None)
    if float(np.min(np.diff(w))) > DEGENERACY_GAP:
        return DiscordReport("no", None)
    if dc != 2:
        return DiscordReport("undecided", None)
    kets = direction_kets(2, grid)
    perps = np.stack([-kets[:, 1].conj(), kets[:, 0].conj()], axis=-1)
    cross = np.einsum("nc,cdab,nd->nab", kets.conj(), blocks, perps, optimize=True)
    flat = np.abs(cross).reshape(cross.shape[0], -1).max(axis=1)
    hits = np.nonzero(flat <= BLOCK_TOL)[0]
    if hits.size:
        n = int(hits[0])
        found = np.stack([kets[n], perps[n]], axis=-1)
        return DiscordReport("yes", found)
    return DiscordReport("undecided", None)


def fixed_point_check(state, basis: np.ndarray | None = None) -> float:
    """Residual of the state under dephasing C in the given basis.

    Applies rho -> sum_k (1 (x) P_k) rho (1 (x) P_k) with projectors
    onto the basis columns (computational basis by default) and returns
    the largest entrywise deviation; zero means the classicalization
    channel fixes the state.
    """
    rho = as_density(state)
    if rho.n_subsystems != 3:
        raise ValueError(f"the fixed-point check acts on tripartite states, got dims {rho.dims}")
    dc = rho.dims[2]
    if basis is None:
        basis = np.eye(dc, dtype=complex)
    basis = np.asarray(basis, dtype=complex)
    unitary_dev = float(np.max(np.abs(basis.conj().T @ basis - np.eye(dc))))
    if basis.shape != (dc, dc) or unitary_dev > 1e-10:
        raise ValueError(f"basis must be a {dc}x{dc} unitary; deviation {unitary_dev:.3e}")
    blocks = c_blocks(rho)
    diag = np.einsum("ck,cdab,dk->kab", basis.conj(), blocks, basis, optimize=True)
    dephased = np.einsum("kxy,ck,dk->xcyd", diag, basis, basis.conj(), optimize=True)
    side = rho.side
    return float(np.max(np.abs(dephased.reshape(side, side) - rho.data)))


@dataclass(frozen=True)
class RankReport:
    """Numeric ranks, per-bipartition PPT verdicts and consistency flags."""

    rank: int
    rank_ab: int
    ppt: dict[str, SeparabilityVerdict]
    flags: tuple[str, ...]

    def to_jsonable(self) -> dict:
        return {
            "rank": self.rank,
            "rank_ab": self.rank_ab,
            "ppt": {
                label: {"status": v.status, "witness": v.witness}
                for label, v in self.ppt.items()
            },
            "flags": list(self.flags),
        }


def rank_report(
    state,
    tol: float = 1e-8,
    condition1_pass: bool | None = None,
) -> RankReport:
    """Ranks and PPT verdicts, with a consistency audit on complete loss.

    A state with every measurement direction leaving a separable pair
    behind cannot be NPT for both A|BC and B|AC with a reduced state of
    rank at most 2; if additionally AB|C is PPT, its global rank must
    exceed 2 as well.  When ``condition1_pass`` is True the audit flags
    any violation; with None the hypotheses are unestablished and no
    flag can fire.
    """
    rho = as_density(state)
    if rho.n_subsystems != 3:
        raise ValueError(f"the rank report covers tripartite states, got dims {rho.dims}")
    ppt = {cut.label(): ppt_verdict(rho, cut) for cut in tripartite_cuts()}
    rank = numeric_rank(rho, tol)
    rank_ab = numeric_rank(partial_trace(rho, (0, 1)), tol)
    flags = []
    if condition1_pass:
        npt_both = ppt["BC|A"].is_entangled and ppt["AC|B"].is_entangled
        if npt_both and rank_ab <= 2:
            flags.append(
                "complete loss with NPT A|BC and B|AC requires rank(rho_AB) > 2, "
                f"found {rank_ab}"
            )
        if npt_both and not ppt["AB|C"].is_entangled and rank <= 2:
            flags.append(
                "complete loss with NPT A|BC and B|AC and PPT AB|C requires "
                f"rank(rho) > 2, found {rank}"
            )
    return RankReport(rank, rank_ab, ppt, tuple(flags))


@dataclass(frozen=True)
class CertReport:
    """Bundle of all certification checks for one state."""

    condition1: Condition1Report | None
    condition1_skipped: str | None
    zero_discord: DiscordReport
    fixed_point_residual: float
    ranks: RankReport

    def to_jsonable(self) -> dict:
        return {
            "condition1": (
                self.condition1.to_jsonable()
                if self.condition1 is not None
                else {"status": "skipped", "reason": self.condition1_skipped}
            ),
            "zero_discord": self.zero_discord.to_jsonable(),
            "fixed_point_residual": self.fixed_point_residual,
            "ranks": self.ranks.to_jsonable(),
        }


def certify_state(state, grid=DEFAULT_GRID, tol: float = 1e-10) -> CertReport:
    """Run every certification check that applies to the state.

    The separability scan is skipped (with a reason) when A or B is not
    a qubit; the discord basis, when one is found, feeds the
    fixed-point residual.
    """
    rho = as_density(state)
    condition1 = None
    skipped = None
    try:
        condition1 = condition1_check(rho, grid=grid, tol=tol)
    except ValueError as exc:
        skipped = str(exc)
    discord = zero_discord_check(rho, grid=grid)
    basis = discord.basis if discord.status == "yes" else None
    residual = fixed_point_check(rho, basis)
    ranks = rank_report(
        rho,
        condition1_pass=None if condition1 is None else condition1.passed,
    )
    return CertReport(condition1, skipped, discord, residual, ranks)
