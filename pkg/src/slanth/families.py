"""Closed-form entry generators for the operator families.

Each family admits an O(1) per-entry formula in the symbol coefficients:

    toeplitz            a_{i-j}
    hankel              a_{i+j+1}
    slant-toeplitz      a_{2i-j}
    slant-hankel        a_{2i+j+1}
    h-toeplitz          a_{i-n}   (j = 2n),   a_{i+n+1}   (j = 2n+1)
    slant-h-toeplitz    a_{2i-n}  (j = 2n),   a_{2i+n+1}  (j = 2n+1)
    slant-h-adjoint     conj of the slant-h form with (i, j) swapped
    extension(m)        the slant-h form continued to rows i >= -m

The closed form is primary; `build_compositional` assembles the same
operators from elementary sections with exact window propagation and serves
as the independent oracle the closed forms are tested against.
"""

from dataclasses import dataclass

import numpy as np

from .symbol import LaurentSymbol, conj_reflect
from .windowed import (
    J,
    K,
    KSTAR,
    P,
    W,
    WSTAR,
    Elementary,
    IndexWindow,
    WindowedMatrix,
    WindowError,
    build_elementary,
    compose,
    mult,
)

__all__ = [
    "Family",
    "TOEPLITZ",
    "HANKEL",
    "SLANT_TOEPLITZ",
    "SLANT_HANKEL",
    "H_TOEPLITZ",
    "SLANT_H_TOEPLITZ",
    "SLANT_H_ADJOINT",
    "COMPOSITIONAL_KINDS",
    "extension",
    "entry",
    "build_family",
    "build_compositional",
    "build_extension_natural",
    "compose_chain",
    "natural_rows",
    "oracle_deviation",
]


@dataclass(frozen=True)
class Family:
    """An operator family; `depth` is how far rows extend below zero."""

    name: str
    depth: int = 0


TOEPLITZ = Family("toeplitz")
HANKEL = Family("hankel")
SLANT_TOEPLITZ = Family("slant-toeplitz")
SLANT_HANKEL = Family("slant-hankel")
H_TOEPLITZ = Family("h-toeplitz")
SLANT_H_TOEPLITZ = Family("slant-h-toeplitz")
SLANT_H_ADJOINT = Family("slant-h-adjoint")

COMPOSITIONAL_KINDS = (
    TOEPLITZ,
    HANKEL,
    SLANT_TOEPLITZ,
    SLANT_HANKEL,
    H_TOEPLITZ,
    SLANT_H_TOEPLITZ,
    SLANT_H_ADJOINT,
)


def extension(depth: int) -> Family:
    """Slant-h family continued to rows >= -depth; depth 0 is the base family."""
    if depth < 0:
        raise ValueError("extension depth must be >= 0")
    if depth == 0:
        return SLANT_H_TOEPLITZ
    return Family("extension", depth)


def entry(kind: Family, phi: LaurentSymbol, i: int, j: int) -> complex:
    """Closed-form entry at absolute row i, column j."""
    if j < 0:
        raise WindowError(f"{kind.name} has no column {j}")
    if i < -kind.depth:
        raise WindowError(f"{kind.name} has no row {i}")
    c = phi.coeff
    name = kind.name
    if name == "toeplitz":
        return c(i - j)
    if name == "hankel":
        return c(i + j + 1)
    if name == "slant-toeplitz":
        return c(2 * i - j)
    if name == "slant-hankel":
        return c(2 * i + j + 1)
    if name == "h-toeplitz":
        n, odd = divmod(j, 2)
        return c(i + n + 1) if odd else c(i - n)
    if name in ("slant-h-toeplitz", "extension"):
        n, odd = divmod(j, 2)
        return c(2 * i + n + 1) if odd else c(2 * i - n)
    if name == "slant-h-adjoint":
        # true conjugate transpose of the slant-h form
        p, odd = divmod(i, 2)
        value = c(2 * j + p + 1) if odd else c(2 * j - p)
        return value.conjugate()
    raise ValueError(f"unknown family kind {name!r}")


def build_family(kind: Family, phi: LaurentSymbol, rows: IndexWindow, cols: IndexWindow) -> WindowedMatrix:
    """Section of the closed form on caller-chosen row/column windows."""
    if not cols.is_empty and cols.lo < 0:
        raise WindowError(f"{kind.name} has no columns below 0, got {cols}")
    if not rows.is_empty and rows.lo < -kind.depth:
        raise WindowError(f"{kind.name} has no rows below {-kind.depth}, got {rows}")
    data = np.zeros((rows.size, cols.size), dtype=complex)
    for i in rows.indices():
        for j in cols.indices():
            data[i - rows.lo, j - cols.lo] = entry(kind, phi, i, j)
    return WindowedMatrix(rows, cols, data)


def compose_chain(kinds: list[Elementary], domain: IndexWindow) -> WindowedMatrix:
    """Compose elementary sections listed leftmost-first, starting from `domain`."""
    result = None
    for kind in reversed(kinds):
        section = build_elementary(kind, domain)
        result = section if result is None else compose(section, result)
        domain = section.rows
    if result is None:
        raise ValueError("empty chain")
    return result


def _chain_for(kind: Family, phi: LaurentSymbol) -> list[Elementary]:
    name = kind.name
    if name == "toeplitz":
        return [P, mult(phi)]
    if name == "hankel":
        return [P, mult(phi), J]
    if name == "slant-toeplitz":
        return [P, W, mult(phi)]
    if name == "slant-hankel":
        return [W, P, mult(phi), J]
    if name == "h-toeplitz":
        return [P, mult(phi), K]
    if name == "slant-h-toeplitz":
        return [W, P, mult(phi), K]
    if name == "slant-h-adjoint":
        return [KSTAR, mult(conj_reflect(phi)), WSTAR]
    raise ValueError(f"{name} has no compositional formula")


def build_compositional(kind: Family, phi: LaurentSymbol, cols: IndexWindow) -> WindowedMatrix:
    """Brute-force oracle: the same operator built purely from elementary sections.

    The row window is whatever exact propagation produces, and it contains
    every nonzero row of the true operator restricted to `cols`; it may be
    empty, in which case the operator vanishes on those columns.
    """
    if kind.depth > 0:
        raise ValueError("extension families have no single compositional formula")
    if not cols.is_empty and cols.lo < 0:
        raise WindowError(f"{kind.name} has no columns below 0, got {cols}")
    return compose_chain(_chain_for(kind, phi), cols)


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


def natural_rows(kind: Family, phi: LaurentSymbol, cols: IndexWindow) -> IndexWindow:
    """Hull of the nonzero rows of the closed-form section on `cols`."""
    sup = phi.support
    if sup is None or cols.is_empty:
        return IndexWindow.empty()
    n_min, n_max = sup
    floor = -kind.depth
    hull = IndexWindow.empty()
    for j in cols.indices():
        name = kind.name
        if name == "toeplitz":
            lo, hi = j + n_min, j + n_max
        elif name == "hankel":
            lo, hi = n_min - j - 1, n_max - j - 1
        elif name == "slant-toeplitz":
            lo, hi = _ceil_half(j + n_min), (j + n_max) // 2
        elif name == "slant-hankel":
            lo, hi = _ceil_half(n_min - j - 1), (n_max - j - 1) // 2
        elif name == "h-toeplitz":
            n, odd = divmod(j, 2)
            lo, hi = (n_min - n - 1, n_max - n - 1) if odd else (n + n_min, n + n_max)
        elif name in ("slant-h-toeplitz", "extension"):
            n, odd = divmod(j, 2)
            if odd:
                lo, hi = _ceil_half(n_min - n - 1), (n_max - n - 1) // 2
            else:
                lo, hi = _ceil_half(n + n_min), (n + n_max) // 2
        elif name == "slant-h-adjoint":
            even_lo, even_hi = 2 * (2 * j - n_max), 2 * (2 * j - n_min)
            odd_lo, odd_hi = 2 * (n_min - 2 * j) - 1, 2 * (n_max - 2 * j) - 1
            hull = hull.hull(IndexWindow(max(even_lo, floor), even_hi))
            hull = hull.hull(IndexWindow(max(odd_lo, floor), odd_hi))
            continue
        else:
            raise ValueError(f"unknown family kind {name!r}")
        hull = hull.hull(IndexWindow(max(lo, floor), hi))
    return hull


def build_extension_natural(depth: int, phi: LaurentSymbol, cols: IndexWindow) -> WindowedMatrix:
    """Extension section on its full natural row window for the given columns."""
    kind = extension(depth)
    rows = natural_rows(kind, phi, cols)
    return build_family(kind, phi, rows, cols)


def oracle_deviation(primary: WindowedMatrix, oracle: WindowedMatrix) -> float:
    """Max deviation of a closed-form section from the compositional oracle.

    Compares entries on the window intersection, and additionally requires the
    closed-form entries outside the oracle's row window to vanish (the oracle
    rows contain every nonzero row for its columns).
    """
    if primary.cols != oracle.cols:
        raise WindowError(f"column windows differ: {primary.cols} vs {oracle.cols}")
    shared = primary.rows.intersect(oracle.rows)
    worst = 0.0
    if not (shared.is_empty or primary.cols.is_empty):
        a = primary.restrict(shared, primary.cols).data
        b = oracle.restrict(shared, oracle.cols).data
        worst = float(np.max(np.abs(a - b)))
    for i in primary.rows.indices():
        if i in oracle.rows:
            continue
        stray = float(np.max(np.abs(primary.data[i - primary.rows.lo, :]))) if primary.cols.size else 0.0
        worst = max(worst, stray)
    return worst
