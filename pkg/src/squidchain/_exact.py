"""Trig helpers that are exact at multiples of a quarter turn.

``math.cos(math.pi / 2)`` is ~6e-17, not 0, which would leave residual
couplings at biases that are supposed to switch a SQUID off completely.
These helpers take arguments in half-turn units (x means an angle of
pi*x) and return table values whenever 2*x is an integer.
"""

from __future__ import annotations

import math


def cos_half_turns(x: float) -> float:
    """cos(pi*x), exactly 0/±1 when x is a multiple of 1/2."""
    x2 = 2.0 * x
    n = round(x2)
    if x2 == n:
        return (1.0, 0.0, -1.0, 0.0)[n % 4]
    return math.cos(math.pi * x)


def sin_half_turns(x: float) -> float:
    """sin(pi*x), exactly 0/±1 when x is a multiple of 1/2."""
    x2 = 2.0 * x
    n = round(x2)
    if x2 == n:
        return (0.0, 1.0, 0.0, -1.0)[n % 4]
    return math.sin(math.pi * x)


def phase_half_turns(x: float) -> complex:
    """exp(i*pi*x) with exact real/imaginary parts at quarter-turn multiples."""
    return complex(cos_half_turns(x), sin_half_turns(x))
