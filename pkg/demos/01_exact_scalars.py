"""Exact scalar arithmetic: the coefficient field everything else lives in.

Every coefficient in this package is an exact rational function over Q (or
Q(i)) in declared parameter symbols.  Square roots enter by declaring the
root itself: the matrix families below always use `sbc` with bc = sbc**2.
"""

from oqa import (
    SymbolTable,
    laurent_homogeneous_degree,
    laurent_view,
    perfect_sqrt,
    substitute,
)

table = SymbolTable(["a", "sbc", "b"])
a, sbc, b = table.syms("a", "sbc", "b")
bc = sbc * sbc

print("== canonical forms ==")
x = (a**2 - bc) / (a - sbc)
print("(a^2 - bc)/(a - sbc)      =", x.text())
print("equal to a + sbc:          ", x == a + sbc)

y = a - bc / a
print("a - bc/a                  =", y.text())

print("\n== substitution ==")
print("at a=2, sbc=1:             ", substitute(y, {"a": 2, "sbc": 1}).text())
q = a / sbc
print("q - 1/q at a=2, sbc=1:     ", substitute(q - q.inv(), {"a": 2, "sbc": 1}).text())

print("\n== Laurent structure ==")
f = a / sbc + sbc / a
print("a/sbc + sbc/a terms:       ", sorted(laurent_view(f, ["a", "sbc"]).terms))
print("homogeneous degree:        ", laurent_homogeneous_degree(f, ["a", "sbc"]))
print("degree of a - bc/a:        ", laurent_homogeneous_degree(y, ["a", "sbc"]))
print("degree of a + a^2 (mixed): ", laurent_homogeneous_degree(a + a**2, ["a"]))

print("\n== exact square roots ==")
r = a**2 / bc
print("sqrt(a^2/bc)              =", perfect_sqrt(r).text())
print("sqrt(a*sbc)               =", perfect_sqrt(a * sbc))

gaussian = SymbolTable(["t"], gaussian=True)
print("sqrt(-1) over Q(i)        =", perfect_sqrt(gaussian.scalar(-1)).text())
