"""Closed knot and link invariants: traces against the twist.

With a twist G and the matrix trace, each closed component contributes
tr(G^d w), d its Whitney degree.  The value is independent of basepoints
and unchanged by every regular-isotopy move.
"""

from oqa import (
    SymbolTable,
    build_balanced_example2,
    builtin,
    evaluate_link,
    stats,
)
from oqa.diagram import MOVES, apply_move, insertion_sites, move_sites, upward_points

table = SymbolTable(["a", "sbc", "b"])
a, sbc, b = table.syms("a", "sbc", "b")
S = build_balanced_example2(table, 2, a, sbc * sbc, {(1, 2): b}, table.one)

print("== values on the builtin diagrams, n = 2 symbolic ==")
for name, m in [
    ("unknot_ccw", None), ("unknot_cw", None), ("hopf", None),
    ("trefoil_knot", None), ("figure8_knot", None), ("c_r_plus", 2),
]:
    d = builtin(name, m)
    st = stats(d)
    label = name if m is None else f"{name}({m})"
    print(f"{label:>16}  writhe {st.writhe:+d}  value {evaluate_link(S, d).text()}")

print("\n== basepoint independence on the two-component diagram ==")
hopf = builtin("hopf")
base = evaluate_link(S, hopf)
agree = all(
    evaluate_link(S, hopf, preferred_starts=[pt]) == base
    for pt in upward_points(hopf)
)
print(f"all {len(upward_points(hopf))} admissible basepoints agree:", agree)

print("\n== move invariance ==")
checked = 0
for move in MOVES:
    for site in move_sites(hopf, move):
        try:
            d2 = apply_move(hopf, move, site)
        except Exception:
            continue
        assert evaluate_link(S, d2) == base
        checked += 1
    if any(not rhs for _, rhs in MOVES[move]):
        for site in insertion_sites(hopf, move)[:2]:
            d2 = apply_move(hopf, move, site)
            assert evaluate_link(S, d2) == base
            checked += 1
print(f"{checked} rewrites of the two-component diagram leave the value fixed")
