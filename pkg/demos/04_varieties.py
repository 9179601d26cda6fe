#!/usr/bin/env python3
"""Varieties in the dual grid and their intersection with the null cone.

Varieties are zero sets of one polynomial in x1..xd, either built in
(paraboloid, plane, sphere of a radius) or parsed from source text.  The
quantity that decides whether the even-dimensional restriction machinery
gets the strong conclusion is how much of the variety lies on the zero
sphere: the working check is  |V meet S_0|  <=  q^((d^2-d-1)/d).
"""

from ffharm import FieldCtx, build_variety, parse_poly, pretty_print, zero_sphere_intersection
from ffharm.field import is_odd_prime

print("=" * 72)
print("The polynomial front end")
print("=" * 72)
expr = parse_poly("x1^2 + x2^2 - x3", 3)
print("parsed :", expr)
print("printed:", pretty_print(expr))
v = build_variety(FieldCtx(7, 3), "poly:x1^2+x2^2-x3")
named = build_variety(FieldCtx(7, 3), "paraboloid")
print("custom source reproduces the built-in paraboloid:",
      v.cardinality == named.cardinality == 49)

print()
print("=" * 72)
print("Hypersurface sizes")
print("=" * 72)
for q, d in [(5, 3), (7, 4), (11, 3)]:
    for name in ("paraboloid", "plane", "sphere:1"):
        v = build_variety(FieldCtx(q, d), name)
        print(f"q={q} d={d} {name:10s} |V| = {v.cardinality:6d}"
              f"  (q^(d-1) = {q ** (d - 1):6d})  size_ok={v.size_ok}")

print()
print("=" * 72)
print("Null-cone intersections across q (d = 4)")
print("=" * 72)
print("A sparse intersection is what upgrades the even-dimension result to")
print("the odd-dimension strength; the zero sphere itself is the canonical")
print("violator.  Watch the paraboloid at q = 3: the count 21 lands just")
print("above the threshold 3^(11/4) = 20.52, the one desk-scale point where")
print("the asymptotic inequality has not kicked in yet.")
print(f"{'q':>4} {'paraboloid':>22} {'plane':>22} {'sphere:0':>22}")
for q in [p for p in range(3, 18) if is_odd_prime(p)]:
    cells = []
    for name in ("paraboloid", "plane", "sphere:0"):
        rep = zero_sphere_intersection(build_variety(FieldCtx(q, 4), name))
        mark = "ok" if rep.passes else "FAILS"
        cells.append(f"{rep.count:6d}/{rep.threshold:8.1f} {mark:>5}")
    print(f"{q:>4} " + " ".join(cells))

print()
print("Ratios count / q^(d-2) stay bounded (the structural fact); the")
print("threshold comparison is the per-q proxy a scan can track.")
