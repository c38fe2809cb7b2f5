"""Shared helpers for the test suite: random smooth orbitals and bumps."""

from __future__ import annotations

import numpy as np

from radialhf import Configuration, RadialFunction, RadialGrid, ShellSpec


def smooth_bump(grid: RadialGrid, center: float, width: float) -> np.ndarray:
    """C^inf bump supported on (center - width, center + width), zero at walls."""
    x = (grid.points - center) / width
    vals = np.zeros_like(grid.points)
    mask = np.abs(x) < 1.0
    vals[mask] = np.exp(-1.0 / (1.0 - x[mask] ** 2))
    return vals


def random_orbital(
    rng: np.random.Generator,
    grid: RadialGrid,
    l: int,
    norm_value: float | None = None,
) -> RadialFunction:
    """Smooth random radial function ~ r^(l+1) e^{-a r} with a wobble."""
    a = rng.uniform(0.5, 2.5)
    wobble = 1.0 + 0.3 * rng.standard_normal() * np.tanh(grid.points)
    vals = grid.points ** (l + 1) * np.exp(-a * grid.points) * wobble
    f = RadialFunction(grid, vals)
    if norm_value is None:
        norm_value = rng.uniform(0.3, 1.0)
    return RadialFunction(grid, vals * (norm_value / f.norm()))


def random_config(
    rng: np.random.Generator,
    max_shells: int = 4,
    max_l: int = 2,
    model: str = "rhf",
    Z: float | None = None,
) -> Configuration:
    n_shells = int(rng.integers(1, max_shells + 1))
    shells = tuple(ShellSpec(int(rng.integers(0, max_l + 1))) for _ in range(n_shells))
    if Z is None:
        Z = float(rng.uniform(1.0, 10.0))
    return Configuration(Z=Z, model=model, shells=shells)


def random_orbital_set(
    rng: np.random.Generator,
    grid: RadialGrid,
    config: Configuration,
    norm_value: float | None = None,
) -> list[RadialFunction]:
    return [
        random_orbital(rng, grid, sh.l, norm_value=norm_value)
        for sh in config.shells
    ]
