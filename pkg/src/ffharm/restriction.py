"""Radial profiles, restriction norms, exponent regions, and diagnostics.

A radial function on F_q^d is determined by one coefficient per sphere
radius.  Its transform restricted to a variety V is a linear map of the
coefficient vector, so the p -> r restriction ratio over radial inputs is
a small, explicitly computable optimization problem:

    maximize  || A M ||_{L^r(V, dsigma)}  /  (sum_j |M_j|^p |S_j|)^{1/p}

with A[x, j] the transform of the radius-j sphere indicator at x in V.
``rnorm_exact_22`` solves the Euclidean case p = r = 2 exactly (top
singular value, by power iteration); ``rnorm_search`` lower-bounds the
general case by multi-start projected gradient ascent; and
``witness_lower_bound`` evaluates the cheap closed-form witnesses.

Exponent pairs are exact fractions throughout, so region membership and
the rational exponent gates never see floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import EmptyVariety, NoConvergence, UnsupportedDimension
from .field import FieldCtx
from .fourier import GridFunction, Side
from .spheres import sphere_ft_closed_by_norm, sphere_sizes
from .varieties import Variety

Exponent = Union[Fraction, float]  # a Fraction >= 1, or math.inf


def _check_exponent(x: Exponent, name: str) -> Exponent:
    if isinstance(x, float):
        if x != math.inf:
            raise ValueError(f"{name} must be an exact Fraction or math.inf, got {x}")
        return x
    x = Fraction(x)
    if x < 1:
        raise ValueError(f"{name} must be >= 1, got {x}")
    return x


def parse_exponent(text: str) -> Exponent:
    """Parse 'a/b' or an integer; 'inf' for infinity.  Decimals rejected."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    if "." in text:
        raise ValueError(f"decimal exponents rejected, use a/b fractions: {text!r}")
    return _check_exponent(Fraction(text), "exponent")


@dataclass(frozen=True)
class ExponentPair:
    """An exponent pair (p, r), each an exact Fraction in [1, oo]."""

    p: Exponent
    r: Exponent

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p, "p"))
        object.__setattr__(self, "r", _check_exponent(self.r, "r"))

    @classmethod
    def parse(cls, p_text: str, r_text: str) -> "ExponentPair":
        return cls(parse_exponent(p_text), parse_exponent(r_text))

    @property
    def is_finite(self) -> bool:
        return self.p != math.inf and self.r != math.inf

    @property
    def p_conjugate(self) -> Exponent:
        """Holder conjugate p' = p/(p-1)."""
        if self.p == math.inf:
            return Fraction(1)
        if self.p == 1:
            return math.inf
        return self.p / (self.p - 1)

    def inverse_point(self) -> tuple[Fraction, Fraction]:
        """The point (1/p, 1/r) used by the region tests (exact)."""
        ip = Fraction(0) if self.p == math.inf else Fraction(1) / self.p
        ir = Fraction(0) if self.r == math.inf else Fraction(1) / self.r
        return (ip, ir)

    def __str__(self) -> str:
        fmt = lambda x: "inf" if x == math.inf else str(x)
        return f"({fmt(self.p)}, {fmt(self.r)})"


@dataclass
class RadialProfile:
    """Coefficient vector (M_j)_{j in F_q} of a radial function."""

    ctx: FieldCtx
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.ctx.q,):
            raise ValueError(f"profile needs {self.ctx.q} coefficients")
        self.coeffs = coeffs

    @classmethod
    def delta(cls, ctx: FieldCtx, j: int) -> "RadialProfile":
        c = np.zeros(ctx.q, dtype=np.complex128)
        c[j % ctx.q] = 1.0
        return cls(ctx, c)

    @classmethod
    def constant(cls, ctx: FieldCtx, value: complex = 1.0) -> "RadialProfile":
        return cls(ctx, np.full(ctx.q, value, dtype=np.complex128))


@dataclass
class RestrictionReport:
    """Outcome of one norm computation or search."""

    variety: str
    q: int
    d: int
    pair: ExponentPair
    method: str  # "Exact22" | "MultiStart" | "Witness"
    estimate: float
    iterations: int
    seed: int
    sign_mode: str = "-"
    profile: Optional[np.ndarray] = None


# ---------------------------------------------------------------------------
# Norms and lifting


def lift_radial(profile: RadialProfile) -> GridFunction:
    """The grid function taking value M_j on every point of radius j."""
    ctx = profile.ctx
    return GridFunction(ctx, profile.coeffs[ctx.grid_norms()], Side.PrimalCounting)


def lp_norm_counting(f: GridFunction, p: Exponent) -> float:
    """L^p norm under counting measure; max norm at p = inf."""
    a = np.abs(f.values)
    if p == math.inf:
        return float(a.max()) if a.size else 0.0
    pf = float(p)
    if pf < 1:
        raise ValueError("p must be >= 1")
    return float((a**pf).sum() ** (1.0 / pf))


def lr_norm_sigma(g: np.ndarray, v: Variety, r: Exponent) -> float:
    """L^r norm of values on V under the normalized surface measure."""
    if v.cardinality == 0:
        raise EmptyVariety(f"variety {v.label} has no points")
    g = np.asarray(g)
    if g.shape != (v.cardinality,):
        raise ValueError(f"need one value per variety point ({v.cardinality})")
    a = np.abs(g)
    if r == math.inf:
        return float(a.max())
    rf = float(r)
    if rf < 1:
        raise ValueError("r must be >= 1")
    return float(((a**rf).sum() / v.cardinality) ** (1.0 / rf))


def _weighted_pnorm(M: np.ndarray, sizes: np.ndarray, p: Exponent) -> float:
    """Counting-measure L^p norm of the lift, via sphere sizes."""
    a = np.abs(M)
    if p == math.inf:
        return float(a[sizes > 0].max()) if M.size else 0.0
    pf = float(p)
    return float(((a**pf) * sizes).sum() ** (1.0 / pf))


def profile_lp_norm(profile: RadialProfile, p: Exponent) -> float:
    """Same as lp_norm_counting(lift_radial(profile), p), without the lift."""
    return _weighted_pnorm(profile.coeffs, sphere_sizes(profile.ctx), p)


def radial_matrix(v: Variety) -> np.ndarray:
    """The |V| x q matrix A with A[x, j] the radius-j sphere transform at x.

    Restricting the transform of a radial function with profile M to V is
    exactly the product A @ M.
    """
    ctx = v.ctx
    norms_v = ctx.grid_norms()[v.flat]
    A = np.empty((v.cardinality, ctx.q), dtype=np.complex128)
    for j in range(ctx.q):
        A[:, j] = sphere_ft_closed_by_norm(ctx, j)[norms_v]
    if v.contains_zero:
        # flat indices are sorted, so the origin is always row 0
        A[0, :] += ctx.q ** (ctx.d - 1)
    return A


# ---------------------------------------------------------------------------
# Exact p = r = 2 norm


def _exact22_iterations(
    v: Variety, tol: float = 1e-10, max_iter: int = 100_000
) -> tuple[float, int]:
    if v.cardinality == 0:
        raise EmptyVariety(f"variety {v.label} has no points")
    ctx = v.ctx
    A = radial_matrix(v)
    sizes = sphere_sizes(ctx).astype(np.float64)
    B = A / math.sqrt(v.cardinality) / np.sqrt(sizes)[None, :]
    H = B.conj().T @ B
    rng = np.random.default_rng(0)  # fixed generic start vector
    x = rng.standard_normal(ctx.q) + 1j * rng.standard_normal(ctx.q)
    x /= np.linalg.norm(x)
    sigma_prev = -1.0
    stable = 0
    for it in range(1, max_iter + 1):
        y = H @ x
        lam = float(np.real(np.vdot(x, y)))
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0, it
        x = y / ny
        sigma = math.sqrt(max(lam, 0.0))
        if sigma_prev >= 0 and abs(sigma - sigma_prev) <= tol * max(sigma, 1e-300):
            stable += 1
            if stable >= 3:
                return sigma, it
        else:
            stable = 0
        sigma_prev = sigma
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps")


def rnorm_exact_22(v: Variety, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """The exact p = r = 2 restriction ratio over radial profiles.

    This is the largest singular value of the measure-weighted radial
    matrix, computed by power iteration with a fixed seeded start vector
    (deterministic, and independent of the dense-factorization route used
    to cross-check it in the test suite).
    """
    sigma, _ = _exact22_iterations(v, tol=tol, max_iter=max_iter)
    return sigma


# ---------------------------------------------------------------------------
# Multi-start projected gradient search


@dataclass
class SearchConfig:
    """Knobs for rnorm_search.  Defaults are the settings the scans use.

    ``starts=None`` means the q+2 structured starts (all deltas, the
    constant profile, the zero-radius delta again) plus 4 random ones.
    """

    starts: Optional[int] = None
    steps: int = 10_000
    step_size: float = 0.1
    seed: int = 0
    sign_mode: str = "signed"  # "signed" (complex) | "nonneg" (real >= 0)


def _ratio_objective(A: np.ndarray, vcard: int, rf: float):
    def objective(M: np.ndarray) -> float:
        g = A @ M
        return float(((np.abs(g) ** rf).sum() / vcard) ** (1.0 / rf))

    return objective


def _ascend(
    A: np.ndarray,
    sizes: np.ndarray,
    vcard: int,
    pf: float,
    rf: float,
    M0: np.ndarray,
    config: SearchConfig,
    nonneg: bool,
) -> tuple[float, np.ndarray, int]:
    """One projected-gradient ascent run.  Returns (value, profile, steps)."""

    def project(M: np.ndarray) -> Optional[np.ndarray]:
        if nonneg:
            M = np.clip(M.real, 0.0, None)
        n = ((np.abs(M) ** pf) * sizes).sum() ** (1.0 / pf)
        if n == 0 or not np.isfinite(n):
            return None
        return M / n

    objective = _ratio_objective(A, vcard, rf)
    M = project(np.asarray(M0, dtype=np.float64 if nonneg else np.complex128))
    if M is None:
        return 0.0, np.zeros(A.shape[1]), 0
    value = objective(M)
    step = config.step_size
    steps_done = 0
    last_gain_step = 0
    for k in range(config.steps):
        steps_done = k + 1
        if value == 0.0:
            break  # profile is in the kernel of A; nothing to ascend
        g = A @ M
        if rf == 2.0:
            w = g
        else:
            absg = np.abs(g)
            w = np.zeros_like(g)
            nz = absg > 0
            w[nz] = absg[nz] ** (rf - 2.0) * g[nz]
        # gradient of the ratio on the unit weighted-p ball: the numerator
        # part minus value * (gradient of the ball constraint); without the
        # second term the fixed points are unweighted eigenvectors
        grad_num = (A.conj().T @ w) * (value ** (1.0 - rf) / vcard)
        if pf == 2.0:
            grad_den = sizes * M
        else:
            absm = np.abs(M)
            grad_den = np.zeros_like(M)
            nz = absm > 0
            grad_den[nz] = sizes[nz] * absm[nz] ** (pf - 2.0) * M[nz]
        grad = grad_num - value * grad_den
        if nonneg:
            grad = grad.real
        gn = np.linalg.norm(grad)
        if gn == 0:
            break
        direction = grad / gn
        improved = False
        while step >= 1e-14:
            cand = project(M + step * direction)
            if cand is not None:
                cand_value = objective(cand)
                if cand_value > value:
                    gain = (cand_value - value) / max(value, 1e-300)
                    M, value = cand, cand_value
                    if gain >= 1e-10:
                        last_gain_step = k
                    improved = True
                    break
            step *= 0.5
        if not improved:
            break
        if k - last_gain_step >= 50:
            break
    return value, M, steps_done


def rnorm_search(
    v: Variety, pair: ExponentPair, config: Optional[SearchConfig] = None
) -> RestrictionReport:
    """Maximize the radial restriction ratio by multi-start ascent.

    Every value returned is certified: it is the ratio achieved by an
    explicit profile, hence a true lower bound of the norm.  Starts run
    sequentially in a fixed order (deltas, constant, zero-radius delta,
    then seeded random profiles) and ties keep the earliest start, so the
    result is deterministic given the seed.
    """
    if config is None:
        config = SearchConfig()
    if not pair.is_finite:
        raise ValueError("rnorm_search needs finite exponents")
    if v.cardinality == 0:
        raise EmptyVariety(f"variety {v.label} has no points")
    if config.sign_mode not in ("signed", "nonneg"):
        raise ValueError(f"unknown sign_mode {config.sign_mode!r}")
    if config.starts is not None and config.starts < 1:
        raise ValueError("starts must be >= 1")

    ctx = v.ctx
    q = ctx.q
    A = radial_matrix(v)
    sizes = sphere_sizes(ctx).astype(np.float64)
    pf, rf = float(pair.p), float(pair.r)
    nonneg = config.sign_mode == "nonneg"

    n_structured = q + 2
    n_starts = config.starts if config.starts is not None else n_structured + 4
    rng = np.random.default_rng(config.seed)

    profiles: list[np.ndarray] = []
    for j in range(q):
        e = np.zeros(q)
        e[j] = 1.0
        profiles.append(e)
    profiles.append(np.ones(q))
    e0 = np.zeros(q)
    e0[0] = 1.0
    profiles.append(e0)
    for _ in range(max(0, n_starts - n_structured)):
        if nonneg:
            profiles.append(rng.random(q))
        else:
            profiles.append(rng.standard_normal(q) + 1j * rng.standard_normal(q))
    if n_starts < len(profiles):
        profiles = profiles[:n_starts]

    best_value = -1.0
    best_profile = profiles[0]
    total_steps = 0
    for M0 in profiles:
        value, M, steps = _ascend(A, sizes, v.cardinality, pf, rf, M0, config, nonneg)
        total_steps += steps
        if value > best_value:
            best_value, best_profile = value, M

    return RestrictionReport(
        variety=v.label,
        q=q,
        d=ctx.d,
        pair=pair,
        method="MultiStart",
        estimate=float(best_value),
        iterations=total_steps,
        seed=config.seed,
        sign_mode=config.sign_mode,
        profile=np.asarray(best_profile),
    )


def compare_sign_modes(
    v: Variety, pair: ExponentPair, config: Optional[SearchConfig] = None, tol: float = 1e-6
) -> tuple[RestrictionReport, RestrictionReport, bool]:
    """Run both sign modes; flag when the signed search strictly wins.

    The nonnegativity reduction is a proof device for upper bounds; whether
    the supremum itself is attained on nonnegative profiles is open, so the
    flag is worth watching in scans.
    """
    base = config if config is not None else SearchConfig()
    signed = rnorm_search(
        v,
        pair,
        SearchConfig(base.starts, base.steps, base.step_size, base.seed, "signed"),
    )
    nonneg = rnorm_search(
        v,
        pair,
        SearchConfig(base.starts, base.steps, base.step_size, base.seed, "nonneg"),
    )
    return signed, nonneg, signed.estimate > nonneg.estimate + tol


def witness_lower_bound(v: Variety, pair: ExponentPair) -> float:
    """Best ratio among the closed-form witnesses (certified lower bound).

    Witnesses: each single-sphere indicator, and the constant function
    (whose transform is a point mass at the origin, so it detects varieties
    containing 0: the ratio is q^{d - d/p} |V|^{-1/r} there).
    """
    if v.cardinality == 0:
        raise EmptyVariety(f"variety {v.label} has no points")
    ctx = v.ctx
    A = radial_matrix(v)
    sizes = sphere_sizes(ctx).astype(np.float64)
    best = 0.0
    for j in range(ctx.q):
        num = lr_norm_sigma(A[:, j], v, pair.r)
        den = 1.0 if pair.p == math.inf else float(sizes[j]) ** (1.0 / float(pair.p))
        best = max(best, num / den)
    num = lr_norm_sigma(A @ np.ones(ctx.q), v, pair.r)
    den = 1.0 if pair.p == math.inf else float(ctx.size) ** (1.0 / float(pair.p))
    return max(best, num / den)


# ---------------------------------------------------------------------------
# Exponent-region membership (exact rational geometry)

Point = tuple[Fraction, Fraction]


def _as_point(point) -> Point:
    x, y = point
    return (Fraction(x), Fraction(y))


def _hull_contains(vertices: list[Point], point: Point) -> bool:
    """Membership in a convex polygon given in counterclockwise order."""
    x, y = point
    n = len(vertices)
    for i in range(n):
        px, py = vertices[i]
        qx, qy = vertices[(i + 1) % n]
        cross = (qx - px) * (y - py) - (qy - py) * (x - px)
        if cross < 0:
            return False
    return True


def region_conjecture(d: int, point) -> bool:
    """Necessary-condition region in the (1/p, 1/r) square.

    Convex hull of (1,0), (1,1), ((d+1)/2d, 1), ((d+1)/2d, 1/2); boundary
    points count as members.
    """
    if d < 2:
        raise UnsupportedDimension("need d >= 2")
    pt = _as_point(point)
    if not (0 <= pt[0] <= 1 and 0 <= pt[1] <= 1):
        raise ValueError("point must lie in [0,1]^2")
    u = Fraction(d + 1, 2 * d)
    vertices = [
        (Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(1)),
        (u, Fraction(1)),
        (u, Fraction(1, 2)),
    ]
    return _hull_contains(vertices, pt)


def region_lewko(d: int, point) -> bool:
    """Best-known sufficient region for paraboloid restriction estimates.

    d = 3 has its own endpoint (3/4, 3/8); higher dimensions use
    ((d^2+2d-2)/2d^2, *) and (3/4, (d+2)/4d).
    """
    if d < 3:
        raise UnsupportedDimension("region is stated for d >= 3")
    pt = _as_point(point)
    u = Fraction(d * d + 2 * d - 2, 2 * d * d)
    endpoint = (Fraction(3, 4), Fraction(3, 8) if d == 3 else Fraction(d + 2, 4 * d))
    vertices = [
        (Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(1)),
        (u, Fraction(1)),
        (u, Fraction(1, 2)),
        endpoint,
    ]
    return _hull_contains(vertices, pt)


def suf2_check(d: int, pair: ExponentPair) -> tuple[Fraction, bool]:
    """Exact value and sign of the exponent gate r d (1 - 1/p) - d + 1."""
    if pair.p == math.inf or pair.r == math.inf:
        raise ValueError("suf2_check needs finite exponents")
    value = pair.r * d * (1 - Fraction(1) / pair.p) - d + 1
    return value, value <= 0


# ---------------------------------------------------------------------------
# Off-origin diagnostic split


def suf1_diagnostic(
    v: Variety,
    profile: RadialProfile,
    r: Exponent,
    normalize_p: Optional[Exponent] = None,
) -> tuple[float, float, float]:
    """Split the off-origin r-th power sum into zero-radius and rest parts.

    Returns (L, R, Mterm) where, summing over x in V minus the origin and
    scaling by q^{1-d}:

        L     uses the full profile,
        R     only the zero-radius coefficient,
        Mterm only the nonzero-radius coefficients.

    With ``normalize_p`` set, the profile is first scaled to unit L^p norm
    of its lift (the normalization under which the diagnostic is read).
    """
    if v.cardinality == 0:
        raise EmptyVariety(f"variety {v.label} has no points")
    if r == math.inf:
        raise ValueError("diagnostic needs finite r")
    ctx = v.ctx
    M = profile.coeffs.copy()
    if normalize_p is not None:
        n = _weighted_pnorm(M, sphere_sizes(ctx), normalize_p)
        if n > 0:
            M = M / n
    A = radial_matrix(v)
    if v.contains_zero:
        A = A[1:]
    rf = float(r)
    scale = float(ctx.q ** (ctx.d - 1))
    L = float((np.abs(A @ M) ** rf).sum() / scale)
    R = float((np.abs(A[:, 0] * M[0]) ** rf).sum() / scale)
    M_rest = M.copy()
    M_rest[0] = 0
    Mterm = float((np.abs(A @ M_rest) ** rf).sum() / scale)
    return L, R, Mterm
