"""Self-consistent minimization of the shell energies.

The solver is a damped Roothaan fixed point.  State consists of the
accepted shell orbitals plus a mean field (a density vector for the
direct potential and per-channel density matrices for exchange).  Each
iteration diagonalizes the channel Fock matrices built from the mean
field, occupies the lowest eigenfunctions, and evaluates the exact
energy functional at the proposed orbitals:

* if the energy does not increase, the proposal is accepted and the mean
  field relaxes toward it: ``mf <- (1 - a) mf + a mf(proposal)``;
* if it increases, the proposal is rejected, the damping ``a`` is
  halved, the mean field is pulled back toward the accepted state, and —
  if rejections persist — a level shift pushes virtual states up until
  the iteration descends again.

The energy trace therefore only ever records accepted (non-increasing)
values.  Convergence requires both a relative energy change below
``tol_energy`` and every occupied orbital to satisfy its own Fock
equation (built from the accepted orbitals, undamped) to ``tol_residual``.
A final undamped pass polishes the converged orbitals into genuine
eigenfunctions of their self-consistent Fock matrices.

Constraint handling follows the relaxed feasible set: orbital norms may
be 0 or 1, never fractional.  Within each ``(spin, l)`` channel the
``k`` lowest eigenfunctions are assigned to the ``k`` shells in input
order; an eigenfunction whose eigenvalue is above ``+tol_zero`` is
replaced by the zero orbital (dropping the shell lowers the energy), and
one within ``tol_zero`` of zero is kept but flagged marginal, since at
exactly zero the theory does not decide the norm.  Shells never migrate
between channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .angular import build_coefficient_table
from .configuration import Configuration
from .energy import EnergyBreakdown, second_order_coefficient, total_energy
from .grid import RadialFunction, RadialGrid, make_grid
from .kernels import KernelTable, apply_direct_kernel, build_kernel_table
from .operators import (
    FockMatrix,
    hydrogenic_matrix,
    lowest_eigenpairs,
)

__all__ = [
    "ScfOptions",
    "Occupation",
    "ScfState",
    "BumpProfile",
    "ProbeResult",
    "ShellVerdict",
    "TheoremReport",
    "CorollaryReport",
    "make_default_grid",
    "occupy",
    "solve",
    "make_bump",
    "probe_shell",
    "theorem_report",
    "corollary_inequalities",
]

ChannelKey = tuple[str | None, int]


@dataclass(frozen=True)
class ScfOptions:
    """Solver knobs; the defaults suit well-posed atomic configurations.

    ``tol_energy`` is relative (scaled by ``1 + |E|``); ``tol_residual``
    bounds ``|H f - e f|`` per occupied orbital.  ``tol_zero`` is the
    band around zero inside which an eigenvalue is treated as marginal.
    """

    tol_energy: float = 1e-9
    tol_residual: float = 1e-6
    damping: float = 0.3
    max_iter: int = 500
    tol_zero: float = 1e-8
    level_shift: float = 0.0
    dense_cutoff: int = 2500


@dataclass(frozen=True)
class Occupation:
    """Result of assigning channel eigenfunctions to shells."""

    orbitals: tuple[RadialFunction, ...]
    eigenvalues: np.ndarray
    norms: np.ndarray
    marginal: tuple[bool, ...]


@dataclass(eq=False)
class ScfState:
    """Converged (or final) state of the self-consistent iteration."""

    config: Configuration
    grid: RadialGrid
    orbitals: tuple[RadialFunction, ...]
    eigenvalues: np.ndarray
    norms: np.ndarray
    residuals: np.ndarray
    marginal: tuple[bool, ...]
    breakdown: EnergyBreakdown
    energy_trace: tuple[float, ...]
    iterations: int
    converged: bool
    message: str
    damping_final: float
    rejections: int

    @property
    def energy(self) -> float:
        return self.breakdown.total


def make_default_grid(config: Configuration, n: int = 2000) -> RadialGrid:
    """Default uniform grid for a configuration.

    The box extent shrinks with the nuclear charge (tighter atoms) but
    never below 12 so diffuse valence shells keep room to decay.
    """
    r_max = max(12.0, 30.0 / max(config.Z, 1.0))
    return make_grid("uniform", n, r_max)


def _zero_function(grid: RadialGrid) -> RadialFunction:
    return RadialFunction(grid, np.zeros(grid.n))


def occupy(
    config: Configuration,
    channel_pairs: Mapping[ChannelKey, tuple[np.ndarray, Sequence[RadialFunction]]],
    tol_zero: float = 1e-8,
) -> Occupation:
    """Assign channel eigenfunctions to shells under the relaxed constraints.

    ``channel_pairs`` maps ``(spin, l)`` to ascending eigenvalues and
    matching eigenfunctions.  The ``k`` shells of a channel take the
    ``k`` lowest pairs in order; a pair with eigenvalue above
    ``+tol_zero`` yields the zero orbital instead (norm 0), and one
    within ``tol_zero`` of zero is occupied but flagged marginal.
    """
    n_shells = config.n_shells
    orbitals: list[RadialFunction | None] = [None] * n_shells
    eigenvalues = np.zeros(n_shells)
    norms = np.zeros(n_shells)
    marginal = [False] * n_shells
    for key, shell_idx in config.channels().items():
        if key not in channel_pairs:
            raise ValueError(f"missing eigenpairs for channel {key}")
        eps, funcs = channel_pairs[key]
        if len(eps) < len(shell_idx):
            raise ValueError(
                f"channel {key}: need {len(shell_idx)} eigenpairs, got {len(eps)}"
            )
        for rank, i in enumerate(shell_idx):
            e = float(eps[rank])
            eigenvalues[i] = e
            if e > tol_zero:
                orbitals[i] = _zero_function(funcs[rank].grid)
                norms[i] = 0.0
            else:
                orbitals[i] = funcs[rank]
                norms[i] = funcs[rank].norm()
                if abs(e) <= tol_zero:
                    marginal[i] = True
    return Occupation(
        orbitals=tuple(orbitals),  # type: ignore[arg-type]
        eigenvalues=eigenvalues,
        norms=norms,
        marginal=tuple(marginal),
    )


def _mean_field(
    config: Configuration, orbitals: Sequence[RadialFunction]
) -> tuple[np.ndarray, dict[ChannelKey, np.ndarray]]:
    """Density vector and per-channel density matrices of the orbitals."""
    grid = orbitals[0].grid
    rho = np.zeros(grid.n)
    gammas: dict[ChannelKey, np.ndarray] = {}
    for key, shell_idx in config.channels().items():
        gamma = np.zeros((grid.n, grid.n))
        for i in shell_idx:
            vals = np.real(orbitals[i].values)
            c = config.shell_weight(i)
            rho += c * vals**2
            gamma += c * np.outer(vals, vals)
        gammas[key] = gamma
    return rho, gammas


class _FockBuilder:
    """Per-channel Fock assembly with cached one-electron parts."""

    def __init__(self, config, grid, table):
        self.config = config
        self.grid = grid
        self.table = table
        self.factor = 2.0 if config.model == "rhf" else 1.0
        self.base = {
            l: hydrogenic_matrix(grid, l, config.Z).matrix
            for l in {sh.l for sh in config.shells}
        }
        sq = np.sqrt(grid.weights)
        self.weight_outer = np.outer(sq, sq)

    def build(
        self,
        key: ChannelKey,
        rho: np.ndarray,
        gammas: Mapping[ChannelKey, np.ndarray],
    ) -> FockMatrix:
        spin, l = key
        mat = self.base[l].copy()
        idx = np.arange(self.grid.n)
        mat[idx, idx] += self.factor * apply_direct_kernel(self.grid, rho)
        khat = np.zeros_like(mat)
        for (spin_j, l_j), gamma in gammas.items():
            if spin is None or spin_j == spin:
                khat += gamma * self.table.exchange(l, l_j)
        mat -= khat * self.weight_outer
        return FockMatrix(
            grid=self.grid,
            l=l,
            Z=self.config.Z,
            matrix=mat,
            label="rhf" if spin is None else spin,
        )


def _diagonalize_all(
    builder: _FockBuilder,
    channels: Mapping[ChannelKey, list[int]],
    rho: np.ndarray,
    gammas: Mapping[ChannelKey, np.ndarray],
    occupied_u: Mapping[ChannelKey, np.ndarray] | None,
    level_shift: float,
    dense_cutoff: int,
) -> dict[ChannelKey, tuple[np.ndarray, list[RadialFunction]]]:
    out = {}
    for key, shell_idx in channels.items():
        fock = builder.build(key, rho, gammas)
        mat = fock.matrix
        if level_shift > 0.0 and occupied_u is not None:
            u = occupied_u.get(key)
            if u is not None and u.size:
                mat = mat + level_shift * (np.eye(mat.shape[0]) - u @ u.T)
                fock = replace(fock, matrix=mat)
        out[key] = lowest_eigenpairs(fock, len(shell_idx), dense_cutoff)
    return out


def _occupied_vectors(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    grid: RadialGrid,
) -> dict[ChannelKey, np.ndarray]:
    """Occupied eigenvectors per channel in the symmetrized coordinates."""
    sq = np.sqrt(grid.weights)
    out: dict[ChannelKey, np.ndarray] = {}
    for key, shell_idx in config.channels().items():
        cols = [
            sq * np.real(orbitals[i].values)
            for i in shell_idx
            if orbitals[i].norm() > 0.5
        ]
        out[key] = np.column_stack(cols) if cols else np.empty((grid.n, 0))
    return out


def _residuals(
    config: Configuration,
    builder: _FockBuilder,
    orbitals: Sequence[RadialFunction],
    eigenvalues: np.ndarray,
    grid: RadialGrid,
) -> np.ndarray:
    """Per-shell ``|H f - e f|`` against the orbitals' own mean field."""
    rho, gammas = _mean_field(config, orbitals)
    sq = np.sqrt(grid.weights)
    res = np.zeros(config.n_shells)
    for key, shell_idx in config.channels().items():
        mat = builder.build(key, rho, gammas).matrix
        for i in shell_idx:
            if orbitals[i].norm() <= 0.5:
                continue
            u = sq * np.real(orbitals[i].values)
            res[i] = float(np.linalg.norm(mat @ u - eigenvalues[i] * u))
    return res


def solve(
    config: Configuration,
    grid: RadialGrid | None = None,
    table: KernelTable | None = None,
    options: ScfOptions | None = None,
) -> ScfState:
    """Run the damped self-consistent iteration for a configuration.

    Returns the final state whether or not it converged; ``converged``
    and ``message`` report the outcome, never an exception, so callers
    can inspect a stalled state.
    """
    options = options or ScfOptions()
    if grid is None:
        grid = make_default_grid(config)
    if table is None:
        table = build_kernel_table(grid, build_coefficient_table(config.max_l))
    if not table.grid.matches(grid):
        raise ValueError("kernel table was built for a different grid")
    channels = config.channels()
    builder = _FockBuilder(config, grid, table)

    # Hydrogenic start: exact in the one-electron limit, deterministic.
    init_pairs = {
        key: lowest_eigenpairs(
            hydrogenic_matrix(grid, key[1], config.Z),
            len(shell_idx),
            options.dense_cutoff,
        )
        for key, shell_idx in channels.items()
    }
    occ = occupy(config, init_pairs, options.tol_zero)
    orbitals = occ.orbitals
    eigenvalues = occ.eigenvalues
    marginal = occ.marginal
    breakdown = total_energy(config, orbitals, table)
    energy = breakdown.total
    trace = [energy]

    rho_mf, gamma_mf = _mean_field(config, orbitals)
    alpha = options.damping
    beta = options.level_shift
    rejections = 0
    clean_streak = 0
    converged = False
    message = ""
    iterations = 0

    for iterations in range(1, options.max_iter + 1):
        occupied_u = _occupied_vectors(config, orbitals, grid) if beta > 0 else None
        pairs = _diagonalize_all(
            builder, channels, rho_mf, gamma_mf, occupied_u, beta, options.dense_cutoff
        )
        occ_new = occupy(config, pairs, options.tol_zero)
        bd_new = total_energy(config, occ_new.orbitals, table)
        e_new = bd_new.total
        tol_up = 1e-10 * (1.0 + abs(energy))
        delta = energy - e_new

        if e_new <= energy + tol_up:
            orbitals = occ_new.orbitals
            eigenvalues = occ_new.eigenvalues
            marginal = occ_new.marginal
            breakdown = bd_new
            energy = e_new
            trace.append(energy)
            rho_new, gamma_new = _mean_field(config, orbitals)
            rho_mf = (1.0 - alpha) * rho_mf + alpha * rho_new
            gamma_mf = {
                key: (1.0 - alpha) * gamma_mf[key] + alpha * gamma_new[key]
                for key in gamma_mf
            }
            clean_streak += 1
            if beta > 0 and clean_streak >= 3:
                beta *= 0.5
                if beta < 1e-3:
                    beta = 0.0
            if clean_streak >= 4:
                alpha = min(0.9, 1.5 * alpha)
            if abs(delta) <= options.tol_energy * (1.0 + abs(energy)):
                res = _residuals(config, builder, orbitals, eigenvalues, grid)
                if float(res.max(initial=0.0)) <= options.tol_residual:
                    converged = True
                    break
        else:
            rejections += 1
            clean_streak = 0
            alpha *= 0.5
            if abs(delta) <= options.tol_energy * (1.0 + abs(energy)):
                res = _residuals(config, builder, orbitals, eigenvalues, grid)
                if float(res.max(initial=0.0)) <= options.tol_residual:
                    converged = True
                    message = "converged at an energy plateau"
                    break
            if alpha < 1e-5:
                message = "stalled: damping floor reached without energy decrease"
                break
            # Mix a small (and shrinking) amount of the rejected proposal
            # into the mean field: re-proposing from an unchanged field
            # would just reproduce the rejection, whereas bisecting the
            # segment between the accepted field and the proposal finds a
            # step size whose energy does descend.
            rho_prop, gamma_prop = _mean_field(config, occ_new.orbitals)
            rho_mf = (1.0 - alpha) * rho_mf + alpha * rho_prop
            gamma_mf = {
                key: (1.0 - alpha) * gamma_mf[key] + alpha * gamma_prop[key]
                for key in gamma_mf
            }
            if rejections % 3 == 0:
                beta = max(1.0, 2.0 * beta)
    else:
        message = f"did not converge in {options.max_iter} iterations"

    if converged:
        # Undamped polish: make the occupied orbitals eigenfunctions of
        # the Fock matrices built from the converged state itself.
        rho_fin, gamma_fin = _mean_field(config, orbitals)
        pairs = _diagonalize_all(
            builder, channels, rho_fin, gamma_fin, None, 0.0, options.dense_cutoff
        )
        occ_fin = occupy(config, pairs, options.tol_zero)
        orbitals = occ_fin.orbitals
        eigenvalues = occ_fin.eigenvalues
        marginal = occ_fin.marginal
        breakdown = total_energy(config, orbitals, table)
        energy = breakdown.total
        trace.append(energy)
        if not message:
            message = "converged"

    residuals = _residuals(config, builder, orbitals, eigenvalues, grid)
    norms = np.array([f.norm() for f in orbitals])
    return ScfState(
        config=config,
        grid=grid,
        orbitals=tuple(orbitals),
        eigenvalues=eigenvalues,
        norms=norms,
        residuals=residuals,
        marginal=marginal,
        breakdown=breakdown,
        energy_trace=tuple(trace),
        iterations=iterations,
        converged=converged,
        message=message,
        damping_final=alpha,
        rejections=rejections,
    )


# ---------------------------------------------------------------------------
# Far-field probes


@dataclass(frozen=True)
class BumpProfile:
    """A smooth unit-norm bump supported in ``[R, 2R]``.

    The reference shape is ``exp(-1/((x-1)(2-x)))`` on ``(1, 2)``; the
    scaled profile is ``J_R(r) = J(r/R)/sqrt(R)``, renormalized on the
    grid so the discrete norm is exactly 1.
    """

    R: float
    profile: RadialFunction


def _bump_shape(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    mask = (x > 1.0) & (x < 2.0)
    xm = x[mask]
    out[mask] = np.exp(-1.0 / ((xm - 1.0) * (2.0 - xm)))
    return out


def make_bump(grid: RadialGrid, R: float) -> BumpProfile:
    """Sample the scaled far-field bump on a grid.

    Raises
    ------
    ValueError
        If the support ``[R, 2R]`` does not fit inside the grid, naming
        the required ``r_max``, or if the grid is too coarse to resolve
        the bump.
    """
    if not R > 0:
        raise ValueError(f"R must be > 0, got {R}")
    if 2.0 * R > grid.r_max:
        raise ValueError(
            f"bump support [{R}, {2 * R}] exceeds the grid extent "
            f"r_max = {grid.r_max}; need r_max >= {2 * R}"
        )
    vals = _bump_shape(grid.points / R) / math.sqrt(R)
    nrm = float(np.sqrt(np.sum(grid.weights * vals**2)))
    if nrm < 1e-12:
        raise ValueError(
            f"grid too coarse to resolve a bump on [{R}, {2 * R}] "
            f"(no interior samples)"
        )
    return BumpProfile(R=float(R), profile=RadialFunction(grid, vals / nrm))


@dataclass(frozen=True)
class ProbeResult:
    R: float
    coefficient: float


def probe_shell(
    state: ScfState,
    i: int,
    R_values: Sequence[float],
    lam: float = 1.0,
    table: KernelTable | None = None,
) -> list[ProbeResult]:
    """Second-order response of the energy to a far-field bump on shell ``i``.

    For each scale ``R`` the bump is orthogonalized against the occupied
    orbitals of shell ``i``'s channel, renormalized, and the coefficient
    of ``d^2`` in ``E(.., (f_i + d h)/sqrt(1 + lam d^2), ..)`` is
    evaluated.  With ``lam = 1`` this is the curvature along a
    norm-preserving path — non-negative at a converged minimizer.  With
    ``lam = 0`` the path grows the shell's norm, and a negative
    coefficient certifies that a depleted shell (norm < 1) can lower the
    energy by binding amplitude far out — the mechanism behind the
    guarantee that shells of a not-too-negative ion fill up completely.

    Restricted states only.
    """
    config = state.config
    if config.model != "rhf":
        raise ValueError("probe_shell applies to restricted states")
    if not 0 <= i < config.n_shells:
        raise ValueError(f"shell index {i} out of range")
    if table is None:
        table = build_kernel_table(
            state.grid, build_coefficient_table(config.max_l)
        )
    key = (config.shells[i].spin, config.shells[i].l)
    channel_orbitals = [
        state.orbitals[j]
        for j in config.channels()[key]
        if state.orbitals[j].norm() > 1e-12
    ]
    results = []
    for R in R_values:
        h_vals = make_bump(state.grid, R).profile.values.copy()
        for f in channel_orbitals:
            overlap = np.sum(state.grid.weights * np.conj(f.values) * h_vals) / (
                f.norm() ** 2
            )
            h_vals = h_vals - overlap * f.values
        nrm = float(np.sqrt(np.sum(state.grid.weights * h_vals**2)))
        if nrm < 1e-8:
            raise ValueError(
                f"probe bump at R = {R} lies in the span of the occupied "
                "channel orbitals"
            )
        h = RadialFunction(state.grid, h_vals / nrm)
        coeff = second_order_coefficient(
            config, list(state.orbitals), table, i, h, lam
        )
        results.append(ProbeResult(R=float(R), coefficient=coeff))
    return results


# ---------------------------------------------------------------------------
# Structural reports


@dataclass(frozen=True)
class ShellVerdict:
    index: int
    l: int
    spin: str | None
    eigenvalue: float
    norm: float
    marginal: bool
    nonzero_guaranteed: bool
    full_norm_guaranteed: bool


@dataclass(frozen=True)
class TheoremReport:
    """How a converged state sits against the structural guarantees.

    For each shell the guarantees say: (i) an occupied shell has a
    non-positive eigenvalue, and a strictly negative eigenvalue forces a
    full norm; (ii) a shell is non-empty whenever the nucleus dominates
    the other electrons' charge (restricted: ``Z > N - 2(2l+1)``;
    unrestricted: ``Z > N - (2l+1)``), and for ``Z >= N - 1`` norms are
    full (unrestricted: guaranteed for ``l != 0`` shells); (iii) for
    ``Z > N - 1`` every eigenvalue is strictly negative and every norm
    full.  Clauses whose hypotheses are vacuous report ``None``.
    """

    model: str
    Z: float
    N: int
    regime: str
    shells: tuple[ShellVerdict, ...]
    clause_i: bool
    clause_ii: bool | None
    clause_iii: bool | None
    notes: tuple[str, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(c is not False for c in (self.clause_i, self.clause_ii, self.clause_iii))


_NORM_TOL = 1e-6


def theorem_report(state: ScfState, tol_zero: float = 1e-8) -> TheoremReport:
    """Check the structural guarantees on a state (reports, never raises)."""
    config = state.config
    N = config.electron_count
    Z = config.Z
    if Z - (N - 1) > 1e-9:
        regime = "Z > N-1"
    elif abs(Z - (N - 1)) <= 1e-9:
        regime = "Z = N-1"
    else:
        regime = "Z < N-1"

    shells = []
    notes: list[str] = []
    clause_i = True
    ii_applicable = []
    per_shell_electrons = 2 if config.model == "rhf" else 1
    for i, sh in enumerate(config.shells):
        eps = float(state.eigenvalues[i])
        nrm = float(state.norms[i])
        occupied = nrm > _NORM_TOL
        hypothesis = Z > N - per_shell_electrons * (2 * sh.l + 1)
        full_norm_hyp = Z >= N - 1 - 1e-9 and (config.model == "rhf" or sh.l != 0)
        shells.append(
            ShellVerdict(
                index=i,
                l=sh.l,
                spin=sh.spin,
                eigenvalue=eps,
                norm=nrm,
                marginal=state.marginal[i],
                nonzero_guaranteed=hypothesis,
                full_norm_guaranteed=full_norm_hyp,
            )
        )
        # (i): occupied => eps <= 0 (within tol); eps < 0 => full norm.
        if occupied and eps > tol_zero:
            clause_i = False
            notes.append(f"shell {i}: occupied with positive eigenvalue {eps:.3e}")
        if eps < -tol_zero and occupied and abs(nrm - 1.0) > _NORM_TOL:
            clause_i = False
            notes.append(f"shell {i}: negative eigenvalue but norm {nrm:.8f}")
        if hypothesis:
            ok = occupied
            ii_applicable.append(ok)
            if not ok:
                notes.append(f"shell {i}: guaranteed non-empty but norm {nrm:.3e}")
        if full_norm_hyp:
            ok = abs(nrm - 1.0) <= _NORM_TOL
            ii_applicable.append(ok)
            if not ok:
                notes.append(f"shell {i}: guaranteed full norm but norm {nrm:.8f}")

    clause_ii = all(ii_applicable) if ii_applicable else None
    if regime == "Z > N-1":
        ok3 = all(
            float(state.eigenvalues[i]) < 0 and abs(float(state.norms[i]) - 1.0) <= _NORM_TOL
            for i in range(config.n_shells)
        )
        clause_iii = ok3
        if not ok3:
            notes.append("positive-ion regime but not all shells bound and full")
    else:
        clause_iii = None
    return TheoremReport(
        model=config.model,
        Z=Z,
        N=N,
        regime=regime,
        shells=tuple(shells),
        clause_i=clause_i,
        clause_ii=clause_ii,
        clause_iii=clause_iii,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class CorollaryReport:
    """Energy inequalities for the one-spin negative ion with an s shell.

    For a spin-polarized configuration ``(s, l_2.., l_s)`` with
    ``l_1 = 0``, nuclear charge matching the non-s electrons and one
    extra electron, the converged energy must fall below the bare
    one-electron ground energy ``-Z^2/4``, while removing the s shell
    must cost enough to stay above ``-(Z^2/4) sum (2l_i+1)/(l_i+1)^2`` —
    which exceeds ``-Z^2/4`` exactly when the shell condition
    ``s < 2 + sum (l_i/(l_i+1))^2`` holds.  Together these force the s
    shell of the minimizer to be fully occupied.
    """

    full_energy: float
    energy_without_s: float
    single_orbital_bound: float
    remainder_bound: float
    shell_condition_holds: bool
    charge_matches: bool
    full_below_single: bool
    remainder_above_bound: bool
    bounds_separate: bool

    @property
    def all_satisfied(self) -> bool:
        return self.full_below_single and self.remainder_above_bound and self.bounds_separate


def corollary_inequalities(
    state: ScfState,
    table: KernelTable | None = None,
    tol: float = 1e-9,
) -> CorollaryReport:
    """Evaluate the negative-ion energy inequalities on a converged state."""
    config = state.config
    if config.model != "uhf":
        raise ValueError("the corollary applies to unrestricted states")
    spins = {sh.spin for sh in config.shells}
    if len(spins) != 1:
        raise ValueError("the corollary applies to spin-polarized (one-spin) states")
    if config.shells[0].l != 0 or any(sh.l == 0 for sh in config.shells[1:]):
        raise ValueError(
            "the corollary needs shells (l=0, l_2.., l_s) with l_i >= 1 beyond the first"
        )
    if table is None:
        table = build_kernel_table(
            state.grid, build_coefficient_table(config.max_l)
        )
    Z = config.Z
    s0 = config.n_shells
    tail = config.shells[1:]
    charge_matches = abs(Z - sum(2 * sh.l + 1 for sh in tail)) <= 1e-9
    condition = s0 < 2 + sum((sh.l / (sh.l + 1)) ** 2 for sh in tail)

    full = total_energy(config, state.orbitals, table).total
    gutted = list(state.orbitals)
    gutted[0] = _zero_function(state.grid)
    without = total_energy(config, gutted, table).total

    single_bound = -0.25 * Z * Z
    remainder_bound = -0.25 * Z * Z * sum(
        (2 * sh.l + 1) / (sh.l + 1) ** 2 for sh in tail
    )
    return CorollaryReport(
        full_energy=full,
        energy_without_s=without,
        single_orbital_bound=single_bound,
        remainder_bound=remainder_bound,
        shell_condition_holds=condition,
        charge_matches=charge_matches,
        full_below_single=full <= single_bound + tol,
        remainder_above_bound=without >= remainder_bound - tol,
        bounds_separate=remainder_bound > single_bound,
    )
