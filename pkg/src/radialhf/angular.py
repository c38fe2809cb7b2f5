"""Angular coupling coefficients for radial atomic structure.

Everything here is exact mathematics on integers ``(l1, l2, l3)``: squared
Wigner 3j symbols with all magnetic quantum numbers zero, Legendre
polynomials, and a quadrature identity that ties the two together.  The
squared symbols are the only angular input the exchange kernels need, so
they are precomputed once into a :class:`CoefficientTable` and reused.

Conventions
-----------
* ``w2(l1, l2, l3)`` denotes the squared 3j symbol with zero projections.
  It vanishes unless ``l1 + l2 + l3`` is even and the triangle inequality
  ``|l1 - l2| <= l3 <= l1 + l2`` holds.
* For allowed triples the closed form is

  ``w2 = [g! / ((g-l1)! (g-l2)! (g-l3)!)]^2
         * (2g-2l1)! (2g-2l2)! (2g-2l3)! / (2g+1)!``

  with ``g = (l1+l2+l3)/2``, evaluated in log-factorial space so that
  large ``l`` never overflows intermediate factorials.
* The independent check: ``w2(l1, l2, l3) = (1/2) * Int_{-1}^{1}
  P_{l1}(t) P_{l2}(t) P_{l3}(t) dt``, computed by Gauss-Legendre
  quadrature that is exact for the polynomial integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "wigner3j_zero_squared",
    "legendre_p",
    "legendre_triple_product",
    "CoefficientTable",
    "build_coefficient_table",
]

# Largest magnitude of a log-factorial combination we are willing to
# exponentiate.  Beyond this, float64 would silently overflow.
_LOG_OVERFLOW = 700.0


def _validate_l(*ls: int) -> tuple[int, ...]:
    out = []
    for l in ls:
        if not isinstance(l, (int, np.integer)):
            raise ValueError(f"angular momentum must be an integer, got {l!r}")
        if l < 0:
            raise ValueError(f"angular momentum must be >= 0, got {l}")
        out.append(int(l))
    return tuple(out)


def wigner3j_zero_squared(l1: int, l2: int, l3: int) -> float:
    """Squared Wigner 3j symbol with all projections zero.

    Parameters
    ----------
    l1, l2, l3 : int
        Non-negative angular momenta.

    Returns
    -------
    float
        The squared symbol.  Exactly ``0.0`` when ``l1 + l2 + l3`` is odd
        or the triangle inequality fails; otherwise a value in ``(0, 1]``.

    Raises
    ------
    ValueError
        If any argument is negative or not an integer.
    OverflowError
        If the log-space evaluation would overflow float64.  Unreachable
        for any realistic ``l`` (the result only shrinks with ``l``); the
        guard exists so a precision failure is loud rather than silent.
    """
    l1, l2, l3 = _validate_l(l1, l2, l3)
    J = l1 + l2 + l3
    if J % 2 != 0:
        return 0.0
    if l3 < abs(l1 - l2) or l3 > l1 + l2:
        return 0.0
    g = J // 2
    lg = math.lgamma
    # log of:  [g! / ((g-l1)!(g-l2)!(g-l3)!)]^2 * prod (J-2li)! / (J+1)!
    log_val = (
        2.0 * (lg(g + 1) - lg(g - l1 + 1) - lg(g - l2 + 1) - lg(g - l3 + 1))
        + lg(J - 2 * l1 + 1)
        + lg(J - 2 * l2 + 1)
        + lg(J - 2 * l3 + 1)
        - lg(J + 2)
    )
    if log_val > _LOG_OVERFLOW:
        raise OverflowError(
            f"wigner3j_zero_squared({l1},{l2},{l3}): log value {log_val:.1f} "
            "exceeds float64 range"
        )
    return math.exp(log_val)


def legendre_p(n: int, t):
    """Legendre polynomial ``P_n(t)`` by the three-term recurrence.

    ``(k+1) P_{k+1}(t) = (2k+1) t P_k(t) - k P_{k-1}(t)``, which is stable
    for ``|t| <= 1``.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    t : float or array_like
        Evaluation points with ``|t| <= 1`` (a tolerance of ``1e-12`` is
        allowed for floating-point noise and clamped).

    Returns
    -------
    float or numpy.ndarray
        ``P_n(t)``, scalar for scalar input.

    Raises
    ------
    ValueError
        If ``n`` is negative or any ``|t| > 1 + 1e-12``.
    """
    (n,) = _validate_l(n)
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-12):
        bad = np.max(np.abs(arr))
        raise ValueError(f"legendre_p: |t| must be <= 1, got max |t| = {bad}")
    arr = np.clip(arr, -1.0, 1.0)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)

    p_prev = np.ones_like(arr)
    if n == 0:
        return float(p_prev[0]) if scalar else p_prev
    p = arr.copy()
    for k in range(1, n):
        p, p_prev = ((2 * k + 1) * arr * p - k * p_prev) / (k + 1), p
    return float(p[0]) if scalar else p


def legendre_triple_product(l1: int, l2: int, l3: int, order: int = 64) -> float:
    """Quadrature oracle: ``(1/2) Int_{-1}^{1} P_{l1} P_{l2} P_{l3} dt``.

    A Gauss-Legendre rule with ``order`` nodes integrates polynomials up
    to degree ``2*order - 1`` exactly, so for ``l1+l2+l3 < 2*order`` the
    result is exact up to rounding.  This is the independent route used to
    validate :func:`wigner3j_zero_squared`.

    Raises
    ------
    ValueError
        If the rule is too short for the polynomial degree, or on bad
        arguments.
    """
    l1, l2, l3 = _validate_l(l1, l2, l3)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if l1 + l2 + l3 >= 2 * order:
        raise ValueError(
            f"order {order} cannot integrate degree {l1 + l2 + l3} exactly; "
            f"need order > {(l1 + l2 + l3) // 2}"
        )
    nodes, weights = np.polynomial.legendre.leggauss(order)
    vals = legendre_p(l1, nodes) * legendre_p(l2, nodes) * legendre_p(l3, nodes)
    return 0.5 * float(weights @ vals)


@dataclass(frozen=True)
class CoefficientTable:
    """Cache of squared 3j coefficients for ``l, l' <= max_l``.

    ``coeff(l, lp, k)`` returns ``w2(l, lp, k)`` for any ``k``; entries
    with odd parity or outside the triangle range are exact zeros.  The
    table is immutable and safe to share between threads.
    """

    max_l: int
    _data: dict[tuple[int, int, int], float] = field(repr=False)

    def coeff(self, l: int, lp: int, k: int) -> float:
        """Squared 3j coefficient ``w2(l, lp, k)``.

        Raises
        ------
        ValueError
            If ``l`` or ``lp`` exceeds ``max_l`` (``k`` is unrestricted:
            out-of-range ``k`` is a legitimate zero).
        """
        l, lp, k = _validate_l(l, lp, k)
        if l > self.max_l or lp > self.max_l:
            raise ValueError(
                f"coefficient table built for l <= {self.max_l}, "
                f"requested (l={l}, lp={lp})"
            )
        return self._data.get((l, lp, k), 0.0)

    def k_range(self, l: int, lp: int) -> range:
        """Multipole orders with (possibly) nonzero coefficients.

        The selection rules confine ``k`` to ``|l - lp| .. l + lp`` in
        steps of 2; every coefficient in this range is strictly positive.
        """
        l, lp, k0 = _validate_l(l, lp, abs(l - lp))
        return range(k0, l + lp + 1, 2)


def build_coefficient_table(max_l: int) -> CoefficientTable:
    """Precompute all squared 3j coefficients with ``l, l' <= max_l``.

    Only the allowed (even-parity, in-triangle) entries are stored; they
    are all strictly positive.
    """
    (max_l,) = _validate_l(max_l)
    data: dict[tuple[int, int, int], float] = {}
    for l in range(max_l + 1):
        # Evaluate once per unordered pair so both orders share the exact
        # same float: the kernel symmetry U_{l l'} = U_{l' l} must hold
        # bit-for-bit, not merely to rounding.
        for lp in range(l, max_l + 1):
            for k in range(lp - l, l + lp + 1, 2):
                value = wigner3j_zero_squared(l, lp, k)
                data[(l, lp, k)] = value
                data[(lp, l, k)] = value
    return CoefficientTable(max_l=max_l, _data=data)
