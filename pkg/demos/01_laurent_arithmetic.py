"""Exact Laurent polynomial arithmetic over Q, Z, and prime fields.

Walks through the basic ring operations the rest of the package is
built on: parsing, exact division with remainder (by span), units, and
cyclotomic factorization.
"""

from artinfib import (GF, QQ, cyclotomic_poly, factor_cyclotomic,
                      format_poly, parse_poly, q_bracket)

a = parse_poly("q^2 - q^-1 + 3", QQ)
b = parse_poly("1 - q", QQ)
print("a       =", format_poly(a))
print("b       =", format_poly(b))
print("a * b   =", format_poly(a * b))
print("a - b   =", format_poly(a - b))

# divrem works by span: the remainder has strictly smaller span than
# the divisor, which is what makes k[q, q^-1] Euclidean
quo, rem = a.divrem(b)
print("a = b * (", format_poly(quo), ") + (", format_poly(rem), ")")
assert a == b * quo + rem

# units are c * q^k; normalized() splits off the unit part
unit, monic = (a * b).normalized()
print("unit part:", format_poly(unit), " monic part:", format_poly(monic))

# q-brackets [n] = 1 + q + ... + q^(n-1) are the building blocks of the
# Poincare polynomials used everywhere downstream
print("[4] =", format_poly(q_bracket(4, QQ)))
print("[4] at q = -1:", q_bracket(4, QQ).evaluate(-1))

# q^n - 1 factors into cyclotomic polynomials
p = parse_poly("q^12 - 1", QQ)
unit, factors, rest = factor_cyclotomic(p)
print("q^12 - 1 factors:", factors, " leftover:", format_poly(rest))
for n, mult in factors:
    assert mult == 1
    print(f"  Phi_{n} =", format_poly(cyclotomic_poly(n, QQ)))

# the same expressions survive reduction mod p
f2 = GF(2)
print("over Z/2:", format_poly(parse_poly("q^2 - q - 1", f2)))
