"""Discrete Fock operators on the radial grid.

Matrices here are the *symmetrized* representations: for a grid with
quadrature weights ``w`` the operator matrix is ``B = W^{-1/2} A W^{-1/2}``
where ``A`` is the (Euclidean-symmetric) bilinear-form matrix and
``W = diag(w)``.  Eigenvectors ``u`` of ``B`` with Euclidean norm 1 map
to grid functions ``f = u / sqrt(w)`` with quadrature norm 1, and

    ``(sqrt(w) f)^T B (sqrt(w) g)  ==  <f| H |g>``

matches the energy module's forms exactly because both sides are built
from the same jump stencil and trapezoidal weights.  On a uniform grid
``B`` is literally the familiar second-difference matrix plus diagonal
potentials (minus the dense exchange part).

Channel structure: the restricted Fock operator for angular momentum
``l`` is ``-d^2 + l(l+1)/r^2 - Z/r + 2U - K_l`` (doubled electrostatic
potential; exchange over all shells); the unrestricted operator for one
spin is ``... + U - K_l^spin`` where ``U`` still carries the full
both-spin density but enters once, and exchange runs over same-spin
shells only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg as sla
from scipy.sparse.linalg import LinearOperator, eigsh

from .configuration import Configuration
from .grid import RadialFunction, RadialGrid
from .kernels import KernelTable, apply_direct_kernel

__all__ = [
    "EigensolverError",
    "FockMatrix",
    "hydrogenic_matrix",
    "direct_potential",
    "exchange_matrix",
    "exchange_matrix_from_density",
    "assemble_fock",
    "lowest_eigenpairs",
    "DENSE_CUTOFF",
]

# Above this size, dense eigendecomposition gives way to shift-invert
# Lanczos with a Cholesky factorization.
DENSE_CUTOFF = 2500

_RESIDUAL_FACTOR = 1e-10


class EigensolverError(RuntimeError):
    """Eigensolver failed to meet its residual contract."""


@dataclass(frozen=True, eq=False)
class FockMatrix:
    """A symmetric one-channel operator matrix with its context.

    ``matrix`` is ``n x n`` real symmetric in the weighted representation
    described in the module docstring.  ``Z`` is kept because it yields a
    rigorous spectral lower bound ``-Z^2/4`` (up to discretization) used
    to place the shift of the iterative eigensolver.
    """

    grid: RadialGrid
    l: int
    Z: float
    matrix: np.ndarray
    label: str = "fock"

    def quadratic_form(self, f: RadialFunction) -> float:
        """``<f| H |f>`` for a grid function."""
        if not f.grid.matches(self.grid):
            raise ValueError("function lives on a different grid")
        u = np.sqrt(self.grid.weights) * f.values
        return float(np.real(np.conj(u) @ self.matrix @ u))


def _check_positive_charge(Z: float) -> float:
    if not Z > 0:
        raise ValueError(f"Z must be > 0, got {Z}")
    return float(Z)


def hydrogenic_matrix(grid: RadialGrid, l: int, Z: float) -> FockMatrix:
    """Bare one-electron matrix ``-d^2/dr^2 + l(l+1)/r^2 - Z/r``.

    Eigenvalues approximate ``-Z^2/(4 n^2)`` for ``n >= l + 1`` to
    second order in the spacing.
    """
    Z = _check_positive_charge(Z)
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    n = grid.n
    w = grid.weights
    gaps = grid.spacings
    inv = 1.0 / gaps
    diag = (inv[:-1] + inv[1:]) / w
    off = -inv[1:-1] / np.sqrt(w[:-1] * w[1:])
    mat = np.zeros((n, n))
    idx = np.arange(n)
    mat[idx, idx] = diag + l * (l + 1) / grid.points**2 - Z / grid.points
    mat[idx[:-1], idx[:-1] + 1] = off
    mat[idx[:-1] + 1, idx[:-1]] = off
    return FockMatrix(grid=grid, l=l, Z=Z, matrix=mat, label="hydrogenic")


def direct_potential(
    grid: RadialGrid,
    sources: Sequence[tuple[np.ndarray, float]],
) -> np.ndarray:
    """Weighted electrostatic potential ``U(r) = sum_j c_j Int |f_j|^2/max(r,s)``.

    ``sources`` are ``(values, weight)`` pairs.  Evaluated with prefix
    sums; the result equals the dense kernel product with the trapezoidal
    rule.
    """
    rho = np.zeros(grid.n)
    for values, weight in sources:
        rho += weight * np.abs(np.asarray(values)) ** 2
    return apply_direct_kernel(grid, rho)


def exchange_matrix(
    grid: RadialGrid,
    table: KernelTable,
    l: int,
    sources: Sequence[tuple[np.ndarray, int, float]],
) -> np.ndarray:
    """Exchange operator kernel ``K(r,s) = sum_j c_j f_j(r) U_{l l_j}(r,s) f_j(s)``.

    ``sources`` are ``(values, l_j, weight)`` triples.  The returned
    matrix is the *kernel* sampled on the grid (apply with quadrature
    weights); it is symmetric and positive semi-definite.
    """
    acc = np.zeros((grid.n, grid.n))
    for values, l_j, weight in sources:
        f = np.asarray(values, dtype=float)
        acc += weight * np.outer(f, f) * table.exchange(l, l_j)
    return acc


def exchange_matrix_from_density(
    table: KernelTable,
    l: int,
    gammas: dict[int, np.ndarray],
) -> np.ndarray:
    """Exchange kernel from per-``l`` density matrices.

    ``gammas[l_j]`` is ``sum_j c_j f_j(r) f_j(s)`` for the shells of that
    angular momentum; exchange is their entrywise product with the
    corresponding kernel matrices, summed.
    """
    n = table.grid.n
    acc = np.zeros((n, n))
    for l_j, gamma in gammas.items():
        acc += gamma * table.exchange(l, l_j)
    return acc


def _weighted_exchange(grid: RadialGrid, khat: np.ndarray) -> np.ndarray:
    """Convert an exchange kernel into the symmetrized matrix representation."""
    sq = np.sqrt(grid.weights)
    return khat * np.outer(sq, sq)


def assemble_fock(
    grid: RadialGrid,
    table: KernelTable,
    Z: float,
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    l: int,
    channel: str = "rhf",
    drop_shell: int | None = None,
) -> FockMatrix:
    """Full Fock matrix for one angular channel.

    Parameters
    ----------
    channel : str
        ``"rhf"`` for the restricted operator (doubled direct term,
        exchange over all shells) or ``"alpha"``/``"beta"`` for one
        unrestricted spin channel (single direct term with the both-spin
        density, same-spin exchange).
    drop_shell : int, optional
        Omit this shell from the mean field entirely (both direct and
        exchange) — the one-shell-removed operator.
    """
    if channel not in ("rhf", "alpha", "beta"):
        raise ValueError(f"channel must be 'rhf', 'alpha' or 'beta', got {channel!r}")
    if (channel == "rhf") != (config.model == "rhf"):
        raise ValueError(f"channel {channel!r} does not match model {config.model!r}")
    if len(orbitals) != config.n_shells:
        raise ValueError(f"expected {config.n_shells} orbitals, got {len(orbitals)}")

    base = hydrogenic_matrix(grid, l, Z)
    dir_sources = [
        (f.values, float(config.shell_weight(j)))
        for j, f in enumerate(orbitals)
        if j != drop_shell
    ]
    exch_sources = [
        (f.values, config.shells[j].l, float(config.shell_weight(j)))
        for j, f in enumerate(orbitals)
        if j != drop_shell and (channel == "rhf" or config.shells[j].spin == channel)
    ]
    factor = 2.0 if channel == "rhf" else 1.0
    mat = base.matrix.copy()
    idx = np.arange(grid.n)
    mat[idx, idx] += factor * direct_potential(grid, dir_sources)
    if exch_sources:
        mat -= _weighted_exchange(grid, exchange_matrix(grid, table, l, exch_sources))
    return FockMatrix(grid=grid, l=l, Z=float(Z), matrix=mat, label=channel)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Deterministic sign convention: largest-magnitude entry positive."""
    for col in range(vectors.shape[1]):
        j = int(np.argmax(np.abs(vectors[:, col])))
        if vectors[j, col] < 0:
            vectors[:, col] = -vectors[:, col]
    return vectors


def lowest_eigenpairs(
    fock: FockMatrix,
    count: int,
    dense_cutoff: int = DENSE_CUTOFF,
) -> tuple[np.ndarray, list[RadialFunction]]:
    """The ``count`` lowest eigenvalues and eigenfunctions of a Fock matrix.

    Eigenfunctions are returned as grid functions, orthonormal in the
    quadrature inner product; eigenvalues ascend, with degenerate pairs
    ordered by position and their eigenvectors orthonormalized (no
    simplicity assumption).  Below ``dense_cutoff`` a dense symmetric
    solver computes the subset directly; above it, shift-invert Lanczos
    with a Cholesky factorization, shifted safely below the spectrum by
    the ``-Z^2/4`` bound.

    Raises
    ------
    EigensolverError
        If a residual ``|B u - e u|`` exceeds ``1e-10 |B|_inf``.
    """
    n = fock.grid.n
    if not 1 <= count <= n - 2:
        raise ValueError(f"count must be in [1, {n - 2}], got {count}")
    B = fock.matrix
    if n <= dense_cutoff:
        eps, vecs = sla.eigh(B, subset_by_index=(0, count - 1), driver="evr")
    else:
        sigma = -0.25 * fock.Z**2 - 1.0
        shifted = B - sigma * np.eye(n)
        try:
            chol = sla.cho_factor(shifted, lower=True, check_finite=False)
        except sla.LinAlgError as exc:
            raise EigensolverError(
                f"shift {sigma} is not below the spectrum: {exc}"
            ) from exc
        op = LinearOperator(
            (n, n), matvec=lambda x: sla.cho_solve(chol, x, check_finite=False)
        )
        mu, vecs = eigsh(op, k=count, which="LM", v0=np.ones(n))
        eps = sigma + 1.0 / mu
        order = np.argsort(eps)
        eps = eps[order]
        vecs = vecs[:, order]
        # Lanczos orthonormality is only approximate for tight clusters.
        vecs, _ = np.linalg.qr(vecs)

    bound = _RESIDUAL_FACTOR * float(np.linalg.norm(B, np.inf))
    resid = B @ vecs - vecs * eps[np.newaxis, :]
    worst = float(np.max(np.linalg.norm(resid, axis=0)))
    if worst > bound:
        raise EigensolverError(
            f"eigenpair residual {worst:.3e} exceeds {bound:.3e} "
            f"(n = {n}, count = {count})"
        )
    vecs = _fix_signs(np.array(vecs))
    inv_sqrt_w = 1.0 / np.sqrt(fock.grid.weights)
    funcs = [
        RadialFunction(fock.grid, vecs[:, j] * inv_sqrt_w) for j in range(count)
    ]
    return eps, funcs
