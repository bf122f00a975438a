"""
Signed tableaux and ordinary characters
=======================================

The ordinary character of M(alpha|beta) is a sum of Specht characters
whose multiplicities count signed semistandard tableaux: fill the shape
with r "unprimed" colours weighted by alpha (rows weakly increase,
columns strictly) and s "primed" colours weighted by beta (rows strict,
columns weak).  Two independent computations of those multiplicities
are compared here, and both classical Kostka specializations drop out.
"""

from skostka.combinat import conjugate, enumerate_partitions, size
from skostka.tabx import (
    char_vector,
    count_signed_ssyt,
    kostka_number,
    pieri_expand,
    signed_tableaux,
)

ab = ((2, 1), (2,))

# list the actual fillings for one shape: 1,2 unprimed and 1' primed
shape = (3, 2)
r = len(ab[0])
print(f"signed tableaux of shape {shape} and type {ab}:")
for grid in signed_tableaux(shape, ab):
    rows = [
        " ".join(str(x + 1) if x < r else f"{x - r + 1}'" for x in row)
        for row in grid
    ]
    print("   " + " / ".join(rows))

# the full character: tableau counts vs iterated Pieri expansion
counts = char_vector(ab)
pieri = pieri_expand(ab)
print(f"\ncharacter of M{ab}:")
for lam in sorted(counts, reverse=True):
    print(f"  shape {lam}: {counts[lam]}")
assert counts == pieri
print("tableau counts equal the h*e Pieri expansion")

# specializations: no primed colours gives plain Kostka numbers, no
# unprimed colours gives the conjugate ones
n = 5
for lam in enumerate_partitions(n):
    for alpha in enumerate_partitions(n):
        assert count_signed_ssyt(lam, (alpha, ())) == kostka_number(lam, alpha)
        assert count_signed_ssyt(lam, ((), alpha)) == kostka_number(conjugate(lam), alpha)
print(f"both Kostka specializations hold for every pair at degree {n}")

# one-column completion: the shape alpha plus a column of |beta| boxes
# always has exactly one filling
for ab in [((2, 1), (2,)), ((3,), (1, 1)), ((), (2, 2))]:
    shape = tuple(ab[0]) + (1,) * size(ab[1])
    assert count_signed_ssyt(shape, ab) == 1
print("the column-completed shape has a unique signed tableau")
