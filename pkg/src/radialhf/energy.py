"""Energy functionals for radial restricted and unrestricted Hartree-Fock.

All expressions live in the reduced-radial convention: orbitals are
functions on ``(0, inf)`` vanishing at 0, the kinetic term is ``|f'|^2``
without a 1/2, and hydrogenic levels sit at ``-Z^2/(4n^2)``.  Multiply
energies by 2 for Hartree.

Restricted model, shells ``f_1..f_s`` with weights ``c_j = 2 l_j + 1``::

    E = 2 sum_j c_j [ |f_j'|^2 + l_j(l_j+1) <f_j, r^-2 f_j> - Z <f_j, r^-1 f_j> ]
        + 2 sum_{j,k} c_j c_k Int |f_j(r)|^2 |f_k(s)|^2 / max(r,s)
        -   sum_{j,k} c_j c_k Int conj(f_j)(r) conj(f_k)(s)
                               U_{l_j l_k}(r,s) f_k(r) f_j(s)

Unrestricted model: each spin's shells carry weight ``c_j`` once, the
direct term couples the full (both-spin) density with itself with a 1/2,
and exchange acts within each spin only.  Occupying identical shells and
orbitals in both spin channels reproduces the restricted energy exactly
— an identity the tests pin down.

The one-shell decomposition and the second-order expansion below are the
workhorses of the variational analysis: the energy splits exactly into
(everything without shell i) + (shell i in the field of the others) +
(shell i's self-repulsion through the kernel ``P_i = c_i (2/max(r,s) -
U_{l_i l_i})``), and perturbing ``f_i -> (f_i + d*h)/sqrt(1 + lam*d^2)``
expands in ``d`` with coefficients assembled from the same pieces.  Both
identities hold exactly in the discrete quadrature, not just in the
continuum limit, because every term shares one trapezoidal rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .configuration import ALPHA, BETA, Configuration, ShellSpec
from .grid import (
    RadialFunction,
    coulomb_expectation,
    kinetic_bilinear,
    kinetic_quadratic_form,
)
from .kernels import KernelTable, apply_direct_kernel

__all__ = [
    "ShellSpec",
    "Configuration",
    "EnergyBreakdown",
    "ShellDecomposition",
    "rhf_energy",
    "uhf_energy",
    "total_energy",
    "decompose_shell",
    "first_order_coefficient",
    "second_order_coefficient",
    "lower_bound",
]


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy split into physical parts.

    ``exchange`` is stored as the non-negative magnitude of the exchange
    integral; it enters the total with a minus sign:

        ``total = kinetic + attraction + direct - exchange``

    so that the tested invariants ``0 <= exchange <= direct`` read off
    directly.
    """

    kinetic: float
    attraction: float
    direct: float
    exchange: float

    @property
    def total(self) -> float:
        return self.kinetic + self.attraction + self.direct - self.exchange


class ShellDecomposition(NamedTuple):
    """Exact split of the restricted energy around one shell."""

    without: float
    single_particle: float
    self_pair: float

    @property
    def total(self) -> float:
        return self.without + self.single_particle + self.self_pair


def _check_inputs(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
) -> None:
    if len(orbitals) != config.n_shells:
        raise ValueError(
            f"expected {config.n_shells} orbitals, got {len(orbitals)}"
        )
    for i, f in enumerate(orbitals):
        if not f.grid.matches(table.grid):
            raise ValueError(f"orbital {i} does not live on the kernel table's grid")
    if config.max_l > table.max_l:
        raise ValueError(
            f"kernel table covers l <= {table.max_l}, configuration needs "
            f"{config.max_l}"
        )


def _pair_direct(grid, dens_a: np.ndarray, dens_b: np.ndarray) -> float:
    """``Int a(r) b(s) / max(r,s) dr ds`` for two sampled densities."""
    return float(np.sum(grid.weights * dens_a * apply_direct_kernel(grid, dens_b)))


def _pair_exchange(grid, f: RadialFunction, g: RadialFunction, u_matrix) -> float:
    """``Int conj(f)(r) conj(g)(s) U(r,s) g(r) f(s) dr ds`` (real, >= 0)."""
    a = grid.weights * np.conj(f.values) * g.values
    return float(np.real(a @ u_matrix @ np.conj(a)))


def rhf_energy(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
) -> EnergyBreakdown:
    """Restricted energy of the given shell orbitals.

    Orbitals need not be normalized or orthogonal; the functional is
    evaluated verbatim.  Complex values are supported.
    """
    if config.model != "rhf":
        raise ValueError("rhf_energy needs a restricted configuration")
    _check_inputs(config, orbitals, table)
    grid = table.grid
    weights = [config.shell_weight(j) for j in range(config.n_shells)]

    kinetic = 0.0
    coulomb = 0.0
    for c, sh, f in zip(weights, config.shells, orbitals):
        kinetic += 2.0 * c * kinetic_quadratic_form(f, sh.l)
        coulomb += 2.0 * c * coulomb_expectation(f)
    attraction = -config.Z * coulomb

    rho = np.zeros(grid.n)
    for c, f in zip(weights, orbitals):
        rho += c * np.abs(f.values) ** 2
    direct = 2.0 * _pair_direct(grid, rho, rho)

    exchange = 0.0
    for j, (cj, shj, fj) in enumerate(zip(weights, config.shells, orbitals)):
        for k, (ck, shk, fk) in enumerate(zip(weights, config.shells, orbitals)):
            if k < j:
                continue
            x = cj * ck * _pair_exchange(grid, fj, fk, table.exchange(shj.l, shk.l))
            exchange += x if k == j else 2.0 * x
    return EnergyBreakdown(
        kinetic=kinetic, attraction=attraction, direct=direct, exchange=exchange
    )


def uhf_energy(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
) -> EnergyBreakdown:
    """Unrestricted energy of the given shell orbitals."""
    if config.model != "uhf":
        raise ValueError("uhf_energy needs an unrestricted configuration")
    _check_inputs(config, orbitals, table)
    grid = table.grid
    weights = [config.shell_weight(j) for j in range(config.n_shells)]

    kinetic = 0.0
    coulomb = 0.0
    for c, sh, f in zip(weights, config.shells, orbitals):
        kinetic += c * kinetic_quadratic_form(f, sh.l)
        coulomb += c * coulomb_expectation(f)
    attraction = -config.Z * coulomb

    rho = np.zeros(grid.n)
    for c, f in zip(weights, orbitals):
        rho += c * np.abs(f.values) ** 2
    direct = 0.5 * _pair_direct(grid, rho, rho)

    exchange = 0.0
    for spin in (ALPHA, BETA):
        idx = [j for j, sh in enumerate(config.shells) if sh.spin == spin]
        for a, j in enumerate(idx):
            for k in idx[a:]:
                x = (
                    weights[j]
                    * weights[k]
                    * _pair_exchange(
                        grid,
                        orbitals[j],
                        orbitals[k],
                        table.exchange(config.shells[j].l, config.shells[k].l),
                    )
                )
                exchange += 0.5 * x if k == j else x
    return EnergyBreakdown(
        kinetic=kinetic, attraction=attraction, direct=direct, exchange=exchange
    )


def total_energy(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
) -> EnergyBreakdown:
    """Energy breakdown for either model."""
    fn = rhf_energy if config.model == "rhf" else uhf_energy
    return fn(config, orbitals, table)


def _fock_bilinear(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
    p: RadialFunction,
    q: RadialFunction,
    l: int,
    exclude: int | None = None,
):
    """``<p| H_l |q>`` for the restricted Fock operator built from ``orbitals``.

    ``H_l = -d^2/dr^2 + l(l+1)/r^2 - Z/r + 2U - K_l`` where ``U`` is the
    weighted electrostatic potential of all shell densities and ``K_l``
    the weighted exchange operator.  ``exclude`` drops one shell from the
    mean field (the one-shell-removed operator of the decomposition).
    """
    grid = table.grid
    val = kinetic_bilinear(p, q, l)
    pq = grid.weights * np.conj(p.values) * q.values
    val = val - config.Z * np.sum(pq / grid.points)

    rho = np.zeros(grid.n)
    for j, f in enumerate(orbitals):
        if j == exclude:
            continue
        rho += config.shell_weight(j) * np.abs(f.values) ** 2
    val = val + 2.0 * np.sum(pq * apply_direct_kernel(grid, rho))

    for j, (sh, f) in enumerate(zip(config.shells, orbitals)):
        if j == exclude:
            continue
        u = table.exchange(l, sh.l)
        a = grid.weights * np.conj(p.values) * f.values
        b = grid.weights * np.conj(f.values) * q.values
        val = val - config.shell_weight(j) * (a @ u @ b)
    return complex(val) if np.iscomplexobj(val) else float(val)


def _self_pair_matrix(table: KernelTable, l: int) -> np.ndarray:
    """Kernel ``P = (2l+1) (2/max(r,s) - U_{ll})`` sampled on the grid."""
    return (2 * l + 1) * (2.0 * table.direct - table.exchange(l, l))


def decompose_shell(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
    i: int,
) -> ShellDecomposition:
    """Exact split of the restricted energy around shell ``i``.

    Returns ``(without, single_particle, self_pair)`` with

    * ``without``: the energy of the configuration with shell ``i``
      deleted;
    * ``single_particle``: ``2 c_i <f_i| H^(i) |f_i>`` where ``H^(i)`` is
      the Fock operator without shell ``i``'s own mean field;
    * ``self_pair``: ``c_i <f_i x f_i| P_i |f_i x f_i>``, the shell's
      repulsion against itself through ``P_i = c_i (2/max - U_{l_i l_i})``.

    The three parts sum to the full energy exactly on the grid (same
    quadrature everywhere), which the tests verify to near machine
    precision.
    """
    if config.model != "rhf":
        raise ValueError("decompose_shell applies to the restricted model")
    _check_inputs(config, orbitals, table)
    if not 0 <= i < config.n_shells:
        raise ValueError(f"shell index {i} out of range")
    grid = table.grid
    c_i = config.shell_weight(i)
    f_i = orbitals[i]
    reduced = config.drop_shell(i)
    rest = [f for j, f in enumerate(orbitals) if j != i]
    without = rhf_energy(reduced, rest, table).total

    single = 2.0 * c_i * np.real(
        _fock_bilinear(config, orbitals, table, f_i, f_i, config.shells[i].l, exclude=i)
    )

    dens = np.abs(f_i.values) ** 2
    direct_ii = _pair_direct(grid, dens, dens)
    exch_ii = _pair_exchange(
        grid, f_i, f_i, table.exchange(config.shells[i].l, config.shells[i].l)
    )
    self_pair = c_i * c_i * (2.0 * direct_ii - exch_ii)
    return ShellDecomposition(
        without=float(without), single_particle=float(single), self_pair=float(self_pair)
    )


def first_order_coefficient(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
    i: int,
    h: RadialFunction,
) -> float:
    """Coefficient of ``d`` in ``E(.., (f_i + d h)/sqrt(1 + lam d^2), ..)``.

    Equals ``4 c_i Re <h| H_{l_i} |f_i>`` with the full Fock operator; it
    vanishes when ``f_i`` is a Fock eigenfunction and ``h`` is orthogonal
    to it.  (The normalization factor contributes nothing at first
    order.)
    """
    if config.model != "rhf":
        raise ValueError("the expansion applies to the restricted model")
    _check_inputs(config, orbitals, table)
    c_i = config.shell_weight(i)
    val = _fock_bilinear(
        config, orbitals, table, h, orbitals[i], config.shells[i].l, exclude=None
    )
    return 4.0 * c_i * float(np.real(val))


def second_order_coefficient(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    table: KernelTable,
    i: int,
    h: RadialFunction,
    lam: float = 0.0,
) -> float:
    """Coefficient of ``d^2`` in ``E(.., (f_i + d h)/sqrt(1 + lam d^2), ..)``.

    The value is ``2 c_i`` times

        ``<h| H^(i) |h>  -  lam <f_i| H_{l_i} |f_i>
          + Re <h x h| P_i |f_i x f_i>
          + <f_i x h| P_i |f_i x h>  +  <h x f_i| P_i |f_i x h>``

    where ``<p x q| P |u x v> = Int conj(p)(r) conj(q)(s) P(r,s) u(r) v(s)``.
    With ``lam = 1``, ``|h| = 1`` and ``h`` orthogonal to ``f_i``, the
    perturbation preserves the norm through second order, so this is the
    curvature of a feasible path: non-negative at a minimizer.  With
    ``lam = 0`` the path grows the norm, which is only feasible for
    shells with ``|f_i| < 1`` — the mechanism that detects depleted
    shells far from the nucleus.
    """
    if config.model != "rhf":
        raise ValueError("the expansion applies to the restricted model")
    _check_inputs(config, orbitals, table)
    if not h.grid.matches(table.grid):
        raise ValueError("perturbation h does not live on the kernel table's grid")
    grid = table.grid
    c_i = config.shell_weight(i)
    l_i = config.shells[i].l
    f_i = orbitals[i]
    w = grid.weights

    h_hi_h = np.real(_fock_bilinear(config, orbitals, table, h, h, l_i, exclude=i))
    f_h_f = np.real(_fock_bilinear(config, orbitals, table, f_i, f_i, l_i, exclude=None))

    pmat = _self_pair_matrix(table, l_i)
    v = w * np.conj(h.values) * f_i.values
    hh_ff = np.real(v @ pmat @ v)
    fh_fh = np.real((w * np.abs(f_i.values) ** 2) @ pmat @ (w * np.abs(h.values) ** 2))
    hf_fh = np.real(v @ pmat @ np.conj(v))

    return 2.0 * c_i * float(h_hi_h - lam * f_h_f + hh_ff + fh_fh + hf_fh)


def lower_bound(
    config: Configuration,
    orbitals: Sequence[RadialFunction],
    eps: float,
) -> float:
    """Kinetic-controlled lower bound on the restricted energy.

    For any ``eps > 0``,

        ``E >= 2 sum_j c_j [ (1 - Z eps) |f_j'|^2 - (Z/eps) |f_j|^2 ]``

    because the repulsion terms are non-negative and the attraction obeys
    ``<f, r^-1 f> <= eps |f'|^2 + (1/eps) |f|^2``.
    """
    if config.model != "rhf":
        raise ValueError("lower_bound applies to the restricted model")
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if len(orbitals) != config.n_shells:
        raise ValueError(f"expected {config.n_shells} orbitals, got {len(orbitals)}")
    total = 0.0
    for j, (sh, f) in enumerate(zip(config.shells, orbitals)):
        c = config.shell_weight(j)
        deriv = kinetic_quadratic_form(f, 0)
        total += 2.0 * c * (
            (1.0 - config.Z * eps) * deriv - (config.Z / eps) * f.norm() ** 2
        )
    return float(total)
