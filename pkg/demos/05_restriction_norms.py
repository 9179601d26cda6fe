#!/usr/bin/env python3
"""Restriction norms over radial functions: exact values, searches, trends.

A radial function is one coefficient per sphere radius, so restricting
its transform to a variety V is a small matrix pencil.  This demo walks
the three estimation routes and the two regimes:

  * on the critical exponent pair the estimates are flat in q (the
    uniform-boundedness regime),
  * outside the necessary region the constant-function witness forces
    growth like a power of q.
"""

from fractions import Fraction as F

from ffharm import (
    ExponentPair,
    FieldCtx,
    SearchConfig,
    build_variety,
    compare_sign_modes,
    region_conjecture,
    region_lewko,
    rnorm_exact_22,
    rnorm_search,
    suf2_check,
    witness_lower_bound,
)
from ffharm.cli import fit_loglog_slope

print("=" * 72)
print("Three routes at p = r = 2 (paraboloid, d = 3)")
print("=" * 72)
for q in (3, 5, 7):
    v = build_variety(FieldCtx(q, 3), "paraboloid")
    exact = rnorm_exact_22(v)
    rep = rnorm_search(v, ExponentPair(F(2), F(2)), SearchConfig(seed=0))
    wit = witness_lower_bound(v, ExponentPair(F(2), F(2)))
    print(f"q={q}: exact={exact:.8f}  search={rep.estimate:.8f}  witness={wit:.8f}"
          f"  (sqrt(q) = {q ** 0.5:.8f})")

print()
print("=" * 72)
print("Signed vs nonnegative search space")
print("=" * 72)
v = build_variety(FieldCtx(7, 3), "paraboloid")
signed, nonneg, flag = compare_sign_modes(v, ExponentPair(F(2), F(2)))
print(f"signed={signed.estimate:.10f}  nonneg={nonneg.estimate:.10f}  "
      f"signed strictly larger: {flag}")

print()
print("=" * 72)
print("Flat regime: pair (3/2, 2) on the d = 3 paraboloid")
print("=" * 72)
pair = ExponentPair(F(3, 2), F(2))
qs = [3, 5, 7, 11, 13]
ests = []
for q in qs:
    v = build_variety(FieldCtx(q, 3), "paraboloid")
    ests.append(rnorm_search(v, pair, SearchConfig(seed=0)).estimate)
    print(f"q={q:>2}: estimate {ests[-1]:.8f}")
print(f"fitted log-log slope: {fit_loglog_slope(qs, ests):+.4f}  (flat)")
value, ok = suf2_check(3, pair)
print(f"exponent gate r*d*(1-1/p)-d+1 = {value} ({'holds' if ok else 'fails'})")

print()
print("=" * 72)
print("Growth regime: pair (2, 2) violates d/p + (d-1)/r >= d")
print("=" * 72)
pair = ExponentPair(F(2), F(2))
wit = []
for q in qs:
    v = build_variety(FieldCtx(q, 3), "paraboloid")
    wit.append(witness_lower_bound(v, pair))
    print(f"q={q:>2}: witness {wit[-1]:.8f}   (sqrt(q) = {q ** 0.5:.8f})")
print(f"fitted log-log slope: {fit_loglog_slope(qs, wit):+.4f}  (sqrt growth)")

print()
print("=" * 72)
print("Exponent-region membership in the (1/p, 1/r) square, d = 3")
print("=" * 72)
for p_txt, r_txt in [("3/2", "2"), ("2", "2"), ("18/13", "1"), ("4/3", "8/3"), ("1", "1")]:
    pair = ExponentPair.parse(p_txt, r_txt)
    pt = pair.inverse_point()
    print(f"pair ({p_txt:>5}, {r_txt:>3}) -> point ({str(pt[0]):>5}, {str(pt[1]):>4})"
          f"   necessary={region_conjecture(3, pt)!s:>5}   endpoint={region_lewko(3, pt)}")
