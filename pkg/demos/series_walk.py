#!/usr/bin/env python3
"""Grow infinite series of manifolds out of a single starting complex."""

from diffcyc import (
    SeriesSpec,
    dense_extendable,
    enumerate_dense_series,
    extend_dense,
    homology,
    minimal_start,
    parse_complex,
    reduce_by_unit,
)
from diffcyc.classify import Registry, classify

base = parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}")
report = dense_extendable(base)
print(f"base {base}")
print(f"passes: {report.passes}, margins {list(report.margins)}")

for k in (1, 2, 6):
    M = extend_dense(base, k)
    print(f"  k={k}: n={M.n}  H_1 = {homology(M).group(1)}  {M}")

# Walking backwards finds the first member of the series; it always has
# an odd number of vertices.
M10 = extend_dense(base, 1)
k_min, first = minimal_start(M10)
print(f"\nminimal start of the n=10 member: k_min={k_min}, {first}")

# A step-2 series whose order is a unit mod n collapses into a dense one
# after finitely many members.
spec = SeriesSpec(
    base=base,
    order=2,
    increments=((0, 0, 1, 1), (0, 0, 1, 1), (0, 1, 0, 1)),
)
red = reduce_by_unit(spec)
print(f"\norder-2 spec reduces: k0={red.k0}")
print(f"  dense base {red.dense.base}")

# Series census over a stored classification.
reg = Registry("registry")
for n in range(5, 11):
    if not reg.has(n):
        classify(n, registry=reg)
count, starts = enumerate_dense_series(reg, 10)
print(f"\nminimal dense series with base n <= 10: {count}")
for M in starts:
    print(f"  n={M.n}: {M}")
