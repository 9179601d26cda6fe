"""Spheres in F_q^d and their Fourier transforms, two independent ways.

``sphere_ft_naive`` sums characters over an explicitly enumerated point
set.  ``sphere_ft_closed`` evaluates the exponential-sum expression

    q^{d-1} delta_0(x) + q^{-1} G^d * K(-j, -||x||/4)   (d even)
    q^{d-1} delta_0(x) + q^{-1} G^d * S(-j, -||x||/4)   (d odd)

with G the Gauss sum at parameter 1, K the Kloosterman sum and S the
Salie sum.  ``verify_closed_form`` compares the two routes exhaustively;
agreement over all (j, x) is the correctness certificate for the closed
route, which the restriction machinery then relies on for speed.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from . import expsums
from .errors import DimensionMismatch, RoundingMismatch
from .field import FieldCtx, inv, norm_form

# x-chunk size for the brute-force transform; bounds peak memory at
# roughly CHUNK * |sphere| int64 entries.
_CHUNK = 1 << 14


class Sphere:
    """The solution set of m_1^2 + ... + m_d^2 = j, fully enumerated.

    ``points`` is an (n, d) int array in lexicographic order; ``flat``
    holds the matching lex flat indices (sorted ascending).
    """

    def __init__(self, ctx: FieldCtx, j: int, flat: np.ndarray):
        self.ctx = ctx
        self.j = j % ctx.q
        self.flat = flat
        self.cardinality = int(flat.size)

    @property
    def points(self) -> np.ndarray:
        return self.ctx.grid_points()[self.flat]

    def is_zero_vector(self, x: Sequence[int]) -> bool:
        """Predicate for the x = (0, ..., 0) point of the dual grid."""
        return all(int(c) % self.ctx.q == 0 for c in x)

    def __repr__(self) -> str:
        return f"Sphere(q={self.ctx.q}, d={self.ctx.d}, j={self.j}, n={self.cardinality})"


def enumerate_sphere(ctx: FieldCtx, j: int) -> Sphere:
    """Enumerate the radius-j sphere by a full scan of the grid."""
    norms = ctx.grid_norms()
    flat = np.nonzero(norms == (j % ctx.q))[0]
    return Sphere(ctx, j, flat)


def sphere_sizes(ctx: FieldCtx) -> np.ndarray:
    """Cardinalities (|S_j|)_{j in F_q} from one pass over the grid."""
    return np.bincount(ctx.grid_norms(), minlength=ctx.q)


def sphere_ft_naive(sphere: Sphere, x: Sequence[int]) -> complex:
    """Fourier transform of the sphere indicator at one dual point.

    Direct definition: sum over sphere points m of chi(-m . x).
    """
    ctx = sphere.ctx
    if len(x) != ctx.d:
        raise DimensionMismatch(f"expected {ctx.d} coordinates, got {len(x)}")
    xv = np.asarray([int(c) % ctx.q for c in x], dtype=np.int64)
    dots = (sphere.points @ xv) % ctx.q
    return complex(ctx.chars.chi_values[(-dots) % ctx.q].sum())


def sphere_ft_naive_grid(sphere: Sphere) -> np.ndarray:
    """Brute-force transform at every dual point, lex order, chunked."""
    ctx = sphere.ctx
    pts = ctx.grid_points()
    sph = sphere.points
    chi = ctx.chars.chi_values
    out = np.empty(ctx.size, dtype=np.complex128)
    for lo in range(0, ctx.size, _CHUNK):
        hi = min(lo + _CHUNK, ctx.size)
        dots = (pts[lo:hi] @ sph.T) % ctx.q
        out[lo:hi] = chi[(-dots) % ctx.q].sum(axis=1)
    return out


def _closed_tail(ctx: FieldCtx, j: int, t: int) -> complex:
    """The non-delta part of the closed form, as a function of t = ||x||."""
    q = ctx.q
    G = expsums.gauss(ctx, 1).value
    a = (-j) % q
    b = (-inv(ctx, 4 % q) * t) % q
    if ctx.d % 2 == 0:
        tw = expsums.kloosterman(ctx, a, b).value
    else:
        tw = expsums.salie(ctx, a, b).value
    return (G**ctx.d) * tw / q


def sphere_ft_closed(ctx: FieldCtx, j: int, x: Sequence[int]) -> complex:
    """Closed-form transform of the radius-j sphere indicator at x."""
    if len(x) != ctx.d:
        raise DimensionMismatch(f"expected {ctx.d} coordinates, got {len(x)}")
    j = j % ctx.q
    t = norm_form(ctx, x)
    value = _closed_tail(ctx, j, t)
    if all(int(c) % ctx.q == 0 for c in x):
        value += ctx.q ** (ctx.d - 1)
    return value


def sphere_ft_closed_by_norm(ctx: FieldCtx, j: int) -> np.ndarray:
    """Non-delta closed-form values as a length-q table indexed by ||x||.

    Away from the origin the closed form depends on x only through its
    quadratic norm, which is what makes grid-wide evaluation O(q^2).
    """
    return np.array([_closed_tail(ctx, j % ctx.q, t) for t in range(ctx.q)])


def sphere_ft_closed_grid(ctx: FieldCtx, j: int) -> np.ndarray:
    """Closed-form transform at every dual point, lex order."""
    out = sphere_ft_closed_by_norm(ctx, j)[ctx.grid_norms()]
    out[0] += ctx.q ** (ctx.d - 1)  # flat index 0 is the origin
    return out


def sphere_count_closed(ctx: FieldCtx, j: int, tol: float = 1e-6) -> int:
    """Sphere cardinality recovered from the closed form at x = 0."""
    value = sphere_ft_closed(ctx, j, [0] * ctx.d)
    nearest = round(value.real)
    if abs(value - nearest) > tol:
        raise RoundingMismatch(
            f"closed-form count {value} is not within {tol} of an integer"
        )
    return int(nearest)


def verify_closed_form(
    ctx: FieldCtx, tol: float = 1e-6
) -> tuple[float, tuple[int, tuple[int, ...]] | None]:
    """Exhaustive naive-vs-closed comparison over all j and all x.

    Returns the maximum absolute discrepancy and the first (j, x) whose
    error exceeds ``tol`` (None when every point agrees).
    """
    max_err = 0.0
    first_bad = None
    for j in range(ctx.q):
        naive = sphere_ft_naive_grid(enumerate_sphere(ctx, j))
        closed = sphere_ft_closed_grid(ctx, j)
        err = np.abs(naive - closed)
        jmax = float(err.max())
        if jmax > max_err:
            max_err = jmax
        if first_bad is None and jmax > tol:
            flat = int(np.argmax(err > tol))
            x = tuple(int(c) for c in ctx.grid_points()[flat])
            first_bad = (j, x)
    return max_err, first_bad
