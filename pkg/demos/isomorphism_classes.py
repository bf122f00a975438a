"""
When are two signed permutation modules isomorphic?
===================================================

M(alpha|beta) and M(gamma|delta) are isomorphic exactly when alpha and
gamma agree after deleting trailing 1-parts, and likewise beta and
delta.  The combinatorial predicate is checked here against honest
module arithmetic over GF(3): build both modules and search Hom for an
invertible intertwiner.
"""

from skostka.combinat import enumerate_p2
from skostka.modrep import build_module, modules_isomorphic
from skostka.tabx import canonical_label, iso_equivalent

p, n = 3, 4

# group the degree-4 pairs into predicted classes
classes = {}
for ab in enumerate_p2(n):
    classes.setdefault(canonical_label(ab), []).append(ab)
print(f"{len(list(enumerate_p2(n)))} pairs at degree {n} fall into "
      f"{len(classes)} classes:")
for key in sorted(classes):
    members = ", ".join(f"({a}|{b})" for a, b in classes[key])
    print(f"  {members}")

# certify the predictions on the modules themselves
pairs = enumerate_p2(n)
mods = {ab: build_module(ab, p) for ab in pairs}
agree = 0
for i, x in enumerate(pairs):
    for y in pairs[i:]:
        predicted = iso_equivalent(x, y)
        actual = modules_isomorphic(mods[x], mods[y])
        assert predicted == actual, (x, y)
        agree += 1
print(f"\nmodule arithmetic confirms all {agree} pairwise verdicts")

# a positive and a negative example in detail
a, b = ((2, 1), (1,)), ((2, 1, 1), ())
print(f"\nM{a} ~ M{b}: {modules_isomorphic(mods[a], mods[b])} "
      "(the single primed letter moves across)")
c, d = ((4,), ()), ((), (4,))
mc, md = build_module(c, p), build_module(d, p)
print(f"M{c} ~ M{d}: {modules_isomorphic(mc, md)} "
      "(trivial against sign: both dimension 1, never isomorphic)")
