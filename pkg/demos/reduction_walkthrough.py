"""
The reduction formula, one level tuple at a time
================================================

Signed p-Kostka numbers reduce to small projective base cases: expand
the row pair digit by digit in base p, and each admissible expansion
contributes a product of one signed base multiplicity (level 0) and
plain ones (higher levels).  This script walks the worked entry

    k for M(1,1,1 | 6,3,3) and label (2,2,1,1 | 3*(2,1))

whose support has exactly three level tuples and whose value is 9.
"""

from skostka.combinat import p_adic_expansion, rho_of, wp
from skostka.modrep import DirectEngine
from skostka.reduction import enumerate_lambda_supp, signed_kostka

p = 3
ab = ((1, 1, 1), (6, 3, 3))
lam, mu = (2, 2, 1, 1), (2, 1)

# the label's digits drive the expansion: lam = lam(0) + p*lam(1) + ...
print("lam digits:", p_adic_expansion(lam, p))
print("mu digits: ", p_adic_expansion(mu, p))
print("level sizes rho:", rho_of(lam, mu, p))

# the supported level tuples: pairs (gamma, delta) of digit sequences
# with sum_i p^i gamma(i) = alpha and sum_i p^i delta(i) = beta
support = enumerate_lambda_supp(ab, (lam, mu), p)
print(f"\n{len(support)} supported level tuples:")
for gam, dlt in support:
    print("  gamma =", gam, " delta =", dlt)

# each tuple contributes a product of base multiplicities; the engine
# below only ever sees small p-restricted projective questions
engine = DirectEngine(p)
lam_digits = p_adic_expansion(lam, p)
mu_digits = p_adic_expansion(mu, p)
total = 0
for gam, dlt in support:
    term = engine.projective_signed((wp(gam[0]), wp(dlt[0])), lam_digits[0])
    factors = [term]
    for i in range(1, len(gam)):
        li = lam_digits[i] if i < len(lam_digits) else ()
        mi = mu_digits[i - 1] if i - 1 < len(mu_digits) else ()
        a = engine.projective_signed((wp(gam[i]), ()), li)
        b = engine.projective_signed((wp(dlt[i]), ()), mi)
        factors += [a, b]
        term *= a * b
    total += term
    print("factors", factors, "-> term", term)

print("\nsum of terms:", total)
assert total == signed_kostka(ab, (lam, mu), engine) == 9
print("matches signed_kostka and the published value 9")
