#!/usr/bin/env python3
"""Classify cyclic 3-manifolds for small n and poke at the results."""

from diffcyc import Registry, classify, homology, is_orientable

print("n  #complexes  #classes")
results = {}
for n in range(5, 11):
    r = classify(n)
    results[n] = r
    print(f"{n:<2} {r.connected:>10}  {len(r.iso_classes):>8}")

# The n=10 census sorted into homology types.
print("\nhomology types on 10 vertices:")
by_type = {}
for C in results[10].all_complexes:
    H = homology(C)
    key = str(H)
    by_type.setdefault(key, []).append(C)
for key, batch in sorted(by_type.items()):
    print(f"  {key}: {len(batch)} complexes")
    for C in batch[:2]:
        flag = "orientable" if is_orientable(C) else "non-orientable"
        print(f"    {C}  ({flag})")

# Persist a run and read one complex back by address.
reg = Registry("registry")
classify(9, registry=reg)
C = reg.complex(9, 0)
print(f"\nstored 9:0 -> {C}")
print(f"rows for n=9: {len(reg.load(9))}")
