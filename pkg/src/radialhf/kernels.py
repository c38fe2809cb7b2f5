"""Electron-electron interaction kernels on the radial grid.

Two kernels drive everything:

* the direct kernel ``1/max(r, s)``, the monopole electrostatic
  interaction of two shell densities;
* the exchange kernel for angular momenta ``(l, l')``,

  ``U_{l l'}(r, s) = sum_k w2(l, l', k) * min(r,s)^k / max(r,s)^{k+1}``,

  where ``w2`` are the squared 3j coefficients of :mod:`radialhf.angular`
  and ``k`` runs over ``|l-l'| .. l+l'`` in steps of 2.

Key properties (all tested): symmetry in ``(r, s)`` and in ``(l, l')``;
the bounds ``0 <= U_{l l'} <= 1/max(r,s)`` and ``U_{l l} >=
1/((2l+1) max(r,s))``; and positive semi-definiteness of the sampled
kernel matrices.

The independent oracle evaluates the same kernel as the sphere average

    ``U_{l l'}(r, s) = (1/2) Int_{-1}^{1} P_l(t) P_{l'}(t)
                        (r^2 + s^2 - 2 r s t)^{-1/2} dt``

by Gauss-Legendre quadrature.  The substitution ``t = 1 - u^2`` removes
the inverse-square-root endpoint singularity that appears at ``r = s``,
and the panel layout refines around the near-singular scale
``|r - s| / sqrt(2 r s)``.

A :class:`KernelTable` holds the kernels sampled on a grid as dense
matrices.  Applying the direct kernel to a density never needs the dense
matrix: prefix sums give the same trapezoidal sum in O(n).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .angular import CoefficientTable, legendre_p
from .grid import RadialGrid

__all__ = [
    "QuadratureAccuracyError",
    "u_kernel",
    "oracle_u_kernel",
    "p_kernel",
    "KernelTable",
    "build_kernel_table",
    "apply_direct_kernel",
    "save_kernel_table",
    "load_kernel_table",
]


class QuadratureAccuracyError(RuntimeError):
    """Oracle quadrature failed to reach the requested tolerance."""


def _check_radii(*vals: float) -> None:
    for v in vals:
        if not v > 0:
            raise ValueError(f"radii must be > 0, got {v}")


def u_kernel(l: int, lp: int, r: float, s: float, table: CoefficientTable) -> float:
    """Exchange kernel ``U_{l l'}(r, s)`` from the coefficient table.

    Parameters
    ----------
    l, lp : int
        Angular momenta of the two orbitals being exchanged.
    r, s : float
        Radii, both ``> 0``.
    table : CoefficientTable
        Must cover ``max(l, lp)``.

    Returns
    -------
    float
        Kernel value in ``(0, 1/max(r, s)]``.
    """
    _check_radii(r, s)
    lo, hi = (r, s) if r <= s else (s, r)
    ratio = lo / hi
    acc = 0.0
    power = ratio ** abs(l - lp)
    ratio2 = ratio * ratio
    for k in range(abs(l - lp), l + lp + 1, 2):
        acc += table.coeff(l, lp, k) * power
        power *= ratio2
    return acc / hi


def p_kernel(l: int, r: float, s: float, table: CoefficientTable) -> float:
    """Same-shell repulsion kernel ``(2l+1) (2/max(r,s) - U_{l l}(r, s))``.

    Bounded between ``(2l+1)/max(r,s)`` and ``(4l+1)/max(r,s)``.
    """
    _check_radii(r, s)
    return (2 * l + 1) * (2.0 / max(r, s) - u_kernel(l, l, r, s, table))


def _panel_gauss(fn, a: float, b: float, nodes: np.ndarray, wts: np.ndarray) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(wts @ fn(mid + half * nodes))


def oracle_u_kernel(
    l: int,
    lp: int,
    r: float,
    s: float,
    order: int = 96,
    tol: float | None = None,
) -> float:
    """Quadrature oracle for the exchange kernel (independent route).

    Integrates the sphere-averaged Coulomb interaction directly, without
    any 3j input.  The error estimate is the difference between the rule
    with ``order`` nodes per panel and the doubled rule; the doubled-rule
    value is returned.

    Parameters
    ----------
    l, lp : int
        Angular momenta.
    r, s : float
        Radii, ``> 0``.
    order : int, optional
        Gauss-Legendre nodes per panel.
    tol : float, optional
        When given, raise :class:`QuadratureAccuracyError` if the error
        estimate exceeds it.

    Raises
    ------
    QuadratureAccuracyError
        Error estimate above ``tol``.
    ValueError
        Non-positive radii or order.
    """
    _check_radii(r, s)
    if order < 4:
        raise ValueError(f"order must be >= 4, got {order}")
    gap2 = (r - s) ** 2
    two_rs = 2.0 * r * s

    def integrand(u: np.ndarray) -> np.ndarray:
        t = 1.0 - u * u
        return (
            u
            * legendre_p(l, t)
            * legendre_p(lp, t)
            / np.sqrt(gap2 + two_rs * u * u)
        )

    top = np.sqrt(2.0)
    c = abs(r - s) / np.sqrt(two_rs)
    breaks = [0.0]
    b = c
    while 0.0 < b < top:
        breaks.append(b)
        b *= 4.0
    breaks.append(top)

    def run(m: int) -> float:
        nodes, wts = np.polynomial.legendre.leggauss(m)
        return sum(
            _panel_gauss(integrand, a, b, nodes, wts)
            for a, b in zip(breaks[:-1], breaks[1:])
        )

    coarse = run(order)
    fine = run(2 * order)
    est = abs(fine - coarse)
    if tol is not None and est > tol:
        raise QuadratureAccuracyError(
            f"oracle_u_kernel(l={l}, lp={lp}, r={r}, s={s}): estimated "
            f"quadrature error {est:.3e} exceeds tolerance {tol:.3e}"
        )
    return fine


@dataclass(frozen=True, eq=False)
class KernelTable:
    """Interaction kernels sampled on a grid as dense symmetric matrices.

    ``direct[i, j] = 1/max(r_i, r_j)`` and ``exchange(l, lp)[i, j] =
    U_{l lp}(r_i, r_j)``.  Matrices are stored once per unordered pair
    ``(l, lp)``; access canonicalizes the order.  Immutable.
    """

    grid: RadialGrid
    max_l: int
    direct: np.ndarray
    _exchange: dict[tuple[int, int], np.ndarray] = field(repr=False)

    def exchange(self, l: int, lp: int) -> np.ndarray:
        """Sampled exchange kernel matrix ``U_{l lp}``."""
        key = (l, lp) if l <= lp else (lp, l)
        try:
            return self._exchange[key]
        except KeyError:
            raise ValueError(
                f"kernel table built for l <= {self.max_l}, requested "
                f"(l={l}, lp={lp})"
            ) from None


def build_kernel_table(
    grid: RadialGrid,
    coeffs: CoefficientTable,
    max_l: int | None = None,
    max_bytes: int = 4 << 30,
) -> KernelTable:
    """Sample the direct and exchange kernels on a grid.

    Parameters
    ----------
    grid : RadialGrid
    coeffs : CoefficientTable
        Angular coefficients; must cover ``max_l``.
    max_l : int, optional
        Largest angular momentum needed (default: ``coeffs.max_l``).
    max_bytes : int, optional
        Memory budget for the dense matrices.

    Raises
    ------
    MemoryError
        If the table would exceed ``max_bytes``; the message states the
        required size.
    ValueError
        If ``max_l`` exceeds the coefficient table's range.
    """
    if max_l is None:
        max_l = coeffs.max_l
    if max_l > coeffs.max_l:
        raise ValueError(
            f"coefficient table covers l <= {coeffs.max_l}, requested {max_l}"
        )
    n = grid.n
    n_pairs = (max_l + 1) * (max_l + 2) // 2
    required = (n_pairs + 1) * n * n * 8
    if required > max_bytes:
        raise MemoryError(
            f"kernel table for n = {n}, max_l = {max_l} requires "
            f"{required} bytes ({required / 2**30:.2f} GiB), over the "
            f"budget of {max_bytes} bytes"
        )
    r = grid.points
    r_lo = np.minimum.outer(r, r)
    r_hi = np.maximum.outer(r, r)
    direct = 1.0 / r_hi
    ratio = r_lo / r_hi
    ratio2 = ratio * ratio
    exchange: dict[tuple[int, int], np.ndarray] = {}
    for l in range(max_l + 1):
        for lp in range(l, max_l + 1):
            acc = np.zeros_like(direct)
            power = ratio ** (lp - l)
            for k in range(lp - l, l + lp + 1, 2):
                acc += coeffs.coeff(l, lp, k) * power
                power = power * ratio2
            exchange[(l, lp)] = acc * direct
    return KernelTable(grid=grid, max_l=max_l, direct=direct, _exchange=exchange)


def apply_direct_kernel(grid: RadialGrid, density: np.ndarray) -> np.ndarray:
    """Electrostatic potential of a radial density in O(n).

    Computes ``V(r_i) = sum_j w_j rho(r_j) / max(r_i, r_j)`` — the same
    trapezoidal sum as a dense ``direct`` matrix-vector product — via two
    cumulative sums: the charge enclosed below ``r_i`` divided by ``r_i``
    plus the ``1/s``-weighted charge above.
    """
    density = np.asarray(density, dtype=float)
    if density.shape != (grid.n,):
        raise ValueError(
            f"density shape {density.shape} does not match grid n = {grid.n}"
        )
    charge = grid.weights * density
    inside = np.cumsum(charge)
    outer_terms = charge / grid.points
    tail = np.cumsum(outer_terms[::-1])[::-1]
    outside = np.empty_like(tail)
    outside[:-1] = tail[1:]
    outside[-1] = 0.0
    return inside / grid.points + outside


_CACHE_MAGIC = b"RHFKTBL1"
_CACHE_VERSION = 1


def save_kernel_table(table: KernelTable, path: str | Path) -> None:
    """Write a kernel table to a little-endian binary cache file.

    Layout: magic (8 bytes), version (u32), n (u64), max_l (u32),
    grid SHA-256 (32 bytes), then float64 arrays in order: points,
    weights, direct matrix, exchange matrices for ``l <= lp`` in
    lexicographic order.  All multi-byte values little-endian.
    """
    path = Path(path)
    grid = table.grid
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<IQI", _CACHE_VERSION, grid.n, table.max_l))
        fh.write(bytes.fromhex(grid.content_hash()))
        fh.write(np.ascontiguousarray(grid.points, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(grid.weights, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(table.direct, dtype="<f8").tobytes())
        for l in range(table.max_l + 1):
            for lp in range(l, table.max_l + 1):
                fh.write(
                    np.ascontiguousarray(table.exchange(l, lp), dtype="<f8").tobytes()
                )


def load_kernel_table(path: str | Path, grid: RadialGrid) -> KernelTable:
    """Load a kernel table cache written by :func:`save_kernel_table`.

    The cache is keyed to the grid: a mismatched grid hash is rejected.

    Raises
    ------
    ValueError
        On a bad magic/version or on a grid mismatch.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"{path}: not a kernel table cache (magic {magic!r})")
        version, n, max_l = struct.unpack("<IQI", fh.read(16))
        if version != _CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        stored_hash = fh.read(32).hex()
        if n != grid.n or stored_hash != grid.content_hash():
            raise ValueError(
                f"{path}: cache was built for a different grid "
                f"(cached n = {n}, requested n = {grid.n})"
            )

        def read_array(count: int) -> np.ndarray:
            buf = fh.read(count * 8)
            if len(buf) != count * 8:
                raise ValueError(f"{path}: truncated cache file")
            return np.frombuffer(buf, dtype="<f8").astype(np.float64)

        read_array(n)  # points (already verified through the hash)
        read_array(n)  # weights
        direct = read_array(n * n).reshape(n, n)
        exchange: dict[tuple[int, int], np.ndarray] = {}
        for l in range(max_l + 1):
            for lp in range(l, max_l + 1):
                exchange[(l, lp)] = read_array(n * n).reshape(n, n)
    return KernelTable(grid=grid, max_l=max_l, direct=direct, _exchange=exchange)
