"""Gauss, Kloosterman, and Salie sums by direct summation over F_q^*.

These are the ground truth for everything downstream: each sum is an
explicit O(q) loop over the nonzero residues, so the classical magnitude
bounds (|G_a| = sqrt(q), |K(a,b)| <= 2 sqrt(q) for ab != 0, |S(a,b)| <=
2 sqrt(q)) can be checked against first principles rather than against a
closed-form shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroParameter
from .field import FieldCtx


@dataclass(frozen=True)
class SumValue:
    """One computed exponential sum: value, family, and its parameters."""

    value: complex
    kind: str  # "Gauss" | "Kloosterman" | "Salie"
    params: tuple[int, ...]

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def gauss(ctx: FieldCtx, a: int) -> SumValue:
    """Quadratic Gauss sum: sum over s != 0 of eta(s) chi(a s).

    Rejects a = 0: the sum would collapse to sum of eta(s) = 0 and none of
    the magnitude statements apply.
    """
    q = ctx.q
    a = a % q
    if a == 0:
        raise ZeroParameter("Gauss sum requires a != 0")
    s = np.arange(1, q)
    value = (ctx.chars.eta_values[s] * ctx.chars.chi_values[(a * s) % q]).sum()
    return SumValue(complex(value), "Gauss", (a,))


def kloosterman(ctx: FieldCtx, a: int, b: int) -> SumValue:
    """Kloosterman sum: sum over s != 0 of chi(a s + b s^{-1}).

    Always real for this character choice (s -> -s pairs each term with its
    conjugate); the imaginary part is float noise.
    """
    q = ctx.q
    a, b = a % q, b % q
    s = np.arange(1, q)
    sinv = ctx.inv_table[1:]
    value = ctx.chars.chi_values[(a * s + b * sinv) % q].sum()
    return SumValue(complex(value), "Kloosterman", (a, b))


def salie(ctx: FieldCtx, a: int, b: int) -> SumValue:
    """Salie sum: the eta-twisted Kloosterman sum over s != 0."""
    q = ctx.q
    a, b = a % q, b % q
    s = np.arange(1, q)
    sinv = ctx.inv_table[1:]
    value = (
        ctx.chars.eta_values[s] * ctx.chars.chi_values[(a * s + b * sinv) % q]
    ).sum()
    return SumValue(complex(value), "Salie", (a, b))
