"""Closed-form bounds for odd cycles and their edge-coloured variants.

All formulas are exact trigonometric expressions; see-saw optimizers elsewhere
in the package are validated against them.
"""
from __future__ import annotations

import math

from .errors import InvalidArgumentError


def _require_odd_cycle(n: int):
    if n % 2 == 0 or n < 5:
        raise InvalidArgumentError(f"need an odd integer >= 5, got {n}")


def theta_closed_form_cycle(n: int) -> float:
    """Lovász number of the odd cycle C_n: n cos(pi/n) / (1 + cos(pi/n))."""
    _require_odd_cycle(n)
    c = math.cos(math.pi / n)
    return n * c / (1.0 + c)


def mb_cycle(n: int) -> float:
    """Largest quantum value of the C_n exclusivity sum over Bell colourings.

    Equals 1/2 + ((n-1)/4) (1 + cos(pi/(n-1))), attained by the colouring
    with a single monochromatic path of size two.
    """
    _require_odd_cycle(n)
    return 0.5 + (n - 1) / 4.0 * (1.0 + math.cos(math.pi / (n - 1)))


def ctheta_tpath(n: int, t: int) -> float:
    """Factor-constrained Lovász number of the C_n colouring whose first
    colour forms t disjoint paths of size two: t/2 + ((n-t)/4)(1 + cos(pi/(n-t))).
    """
    if n % 2 == 0 or t % 2 == 0:
        raise InvalidArgumentError(f"n and t must both be odd, got n={n}, t={t}")
    if not (1 <= t < n):
        raise InvalidArgumentError(f"need 1 <= t < n, got n={n}, t={t}")
    if n - t < 4:
        raise InvalidArgumentError(f"need n - t >= 4, got n={n}, t={t}")
    return t / 2.0 + (n - t) / 4.0 * (1.0 + math.cos(math.pi / (n - t)))


def p_n(n: int) -> float:
    """Common vertex probability of the optimal C_n umbrella:
    cos(pi/n) / (1 + cos(pi/n)), always below 1/2.
    """
    _require_odd_cycle(n)
    c = math.cos(math.pi / n)
    return c / (1.0 + c)


def theta_antihole7() -> float:
    """Lovász number of the complement of C_7: 1 + 1/cos(pi/7)."""
    return 1.0 + 1.0 / math.cos(math.pi / 7)
