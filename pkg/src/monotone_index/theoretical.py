"""Exact index of increase from derivative sign structure and jump sizes.

The index over a window (a, b] is

    (sum of positive jumps + increasing part of the derivative integral)
    -----------------------------------------------------------------
    (sum of |jumps|        + total variation of the continuous part)

computed either directly in the input domain or, as a cross-check, in
the quantile domain of an input distribution. The two agree exactly in
theory; the quantile route exists to demonstrate that the index does not
depend on the input distribution at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Window
from .errors import DegenerateFunctionError
from .numerics import QuadratureConfig, sign_partition, signed_variation
from .transfer import HFunction

__all__ = [
    "EDGE_MARGIN",
    "IndexBreakdown",
    "emit_h_profile",
    "theoretical_index",
    "theoretical_index_via_H",
]

# open-edge truncation: the integrands used here vanish superexponentially
# toward the support edge, so the omitted mass sits far below quadrature
# tolerance
EDGE_MARGIN = 1e-12


@dataclass(frozen=True)
class IndexBreakdown:
    """Jump and integral components of the index, plus the index itself.

    value = (jump_pos + int_pos) / (jump_abs + int_abs), clamped to [0, 1]
    against terminal rounding.
    """

    jump_pos: float
    jump_abs: float
    int_pos: float
    int_abs: float
    value: float


def _finish(jump_pos: float, jump_abs: float, int_pos: float, int_abs: float) -> IndexBreakdown:
    den = jump_abs + int_abs
    if den < 1e-14:
        raise DegenerateFunctionError(
            "total variation over the window is numerically zero; the index is 0/0"
        )
    value = min(max((jump_pos + int_pos) / den, 0.0), 1.0)
    return IndexBreakdown(
        float(jump_pos), float(jump_abs), float(int_pos), float(int_abs), float(value)
    )


def _inner_jumps(fn, a: float, b: float) -> list[tuple[float, float]]:
    # jumps only count strictly inside: the window is open at a, and a jump
    # exactly at b adds no variation within (a, b]
    return [(x, s) for x, s in fn.jumps if a < x < b]


def theoretical_index(
    fn,
    window: Window,
    config: QuadratureConfig | None = None,
    grid_n: int = 100_000,
) -> IndexBreakdown:
    """Index of increase of ``fn`` over ``window`` from its derivative.

    ``fn`` is anything exposing ``deriv(x)``, a declared ``jumps`` list
    and a ``support`` interval; TransferFunction and PiecewiseFunction
    both qualify. Jump points partition the integration range before any
    root scan, so quadrature never evaluates across a discontinuity.
    """
    a, b = float(window.a), float(window.b)
    s_lo, s_hi = fn.support
    if a < s_lo or b > s_hi:
        raise ValueError(f"window ({a}, {b}] outside the domain ({s_lo}, {s_hi}]")
    lo = max(a, s_lo + EDGE_MARGIN)
    inner = _inner_jumps(fn, a, b)
    part = sign_partition(fn.deriv, lo, b, [x for x, _ in inner], grid_n)
    int_pos, int_abs = signed_variation(fn.deriv, part, config)
    jump_pos = float(sum(max(s, 0.0) for _, s in inner))
    jump_abs = float(sum(abs(s) for _, s in inner))
    return _finish(jump_pos, jump_abs, int_pos, int_abs)


def theoretical_index_via_H(
    hf: HFunction,
    config: QuadratureConfig | None = None,
    grid_n: int = 100_000,
) -> IndexBreakdown:
    """The same index computed by integrating H over the unit interval.

    The substitution x = Q(u) maps window integrals of h' one-to-one onto
    integrals of H, jumps map to the images tau_k = cdf(x_k) with their
    sizes unchanged, and the distribution cancels from the ratio. Must
    agree with :func:`theoretical_index` for any windowed distribution.
    """
    a, b = hf.dist.window.a, hf.dist.window.b
    inner = _inner_jumps(hf.tf, a, b)
    part = sign_partition(hf, 0.0, 1.0, hf.singular_points, grid_n)
    int_pos, int_abs = signed_variation(hf, part, config)
    jump_pos = float(sum(max(s, 0.0) for _, s in inner))
    jump_abs = float(sum(abs(s) for _, s in inner))
    return _finish(jump_pos, jump_abs, int_pos, int_abs)


def emit_h_profile(hf: HFunction, grid_n: int) -> np.ndarray:
    """Table of (u, H(u)) rows on the grid u_j = j/grid_n, j = 1..grid_n.

    The grid starts one step above the open edge u = 0 and ends exactly
    at u = 1. A row landing float-exactly on a jump image is nudged half
    a step toward 0 rather than erroring out.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    us = np.arange(1, grid_n + 1, dtype=float) / grid_n
    if hf.tf.rho != 0.0:
        hit = hf.dist.quantile(us) == hf.tf.x0
        us[hit] -= 0.5 / grid_n
    return np.column_stack([us, hf(us)])
