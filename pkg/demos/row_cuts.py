"""
Cutting rows off both coordinates
=================================

When the first r rows of alpha can be cut against the first r rows of
lam (and s rows of beta against p*mu), the product of the two top-piece
plain multiplicities and the bottom-piece signed multiplicity is a
lower bound for the full signed p-Kostka number, and it is exact
whenever |beta| = p|mu|.
"""

from skostka.combinat import (
    admits_horizontal_cut,
    bottom_cut,
    enumerate_p2,
    enumerate_p2p,
    scale,
    size,
    top_cut,
)
from skostka.modrep import DirectEngine
from skostka.reduction import product_formula, rowcut_lower_bound, signed_kostka

p = 3
engine = DirectEngine(p)

# a split example at degree 5: |beta| = p|mu|, so every admissible cut
# computes the exact value
ab = ((1, 1), (3,))
x = ((1, 1), (1,))
k = signed_kostka(ab, x, engine)
print(f"k for M{ab} and label {x}: {k}")
for r in range(3):
    for s in range(3):
        if not admits_horizontal_cut(ab[0], x[0], r):
            continue
        if not admits_horizontal_cut(ab[1], scale(p, x[1]), s):
            continue
        lb = rowcut_lower_bound(ab, x, r, s, engine)
        exact = product_formula(ab, x, r, s, engine)
        print(f"  cut (r={r}, s={s}): bound {lb}, four-factor product {exact}")
        assert lb == exact == k

# the bound can be strict when |beta| != p|mu|: the cut pieces are
print("\ncut pieces for (r=1, s=0):")
r = 1
print("  alpha ->", top_cut(ab[0], r), "+", bottom_cut(ab[0], r))
print("  lam   ->", top_cut(x[0], r), "+", bottom_cut(x[0], r))

# sweep a whole degree and count how often the bound is attained
n = 4
attained = strict = 0
for ab in enumerate_p2(n):
    for x in enumerate_p2p(n, p):
        k = signed_kostka(ab, x, engine)
        for r in range(n + 1):
            if not admits_horizontal_cut(ab[0], x[0], r):
                continue
            for s in range(n + 1):
                if not admits_horizontal_cut(ab[1], scale(p, x[1]), s):
                    continue
                lb = rowcut_lower_bound(ab, x, r, s, engine)
                assert lb <= k
                if size(ab[1]) == p * size(x[1]):
                    assert lb == k
                if lb == k:
                    attained += 1
                else:
                    strict += 1
print(f"\ndegree {n}: the bound is exact on {attained} admissible cuts "
      f"and strict on {strict}")
