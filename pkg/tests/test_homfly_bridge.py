import pytest

from oqa import (
    CROSS_POS_IS_SKEIN_POSITIVE,
    DiagramError,
    SkeinPolynomial,
    StructureError,
    SymbolTable,
    attach_twist,
    builtin,
    conway,
    curl_family_values,
    evaluate_link,
    evaluate_tangle,
    homfly,
    identify_F,
    laurent_homogeneous_degree,
    mirror,
    section6_context,
    single_block_params,
    skein_triple_check,
    stats,
)
from oqa.diagram import MOVES, apply_move, insertion_sites, move_sites, word


def _mono(ea, ez, c=1):
    return SkeinPolynomial({(ea, ez): c})


# -- skein engine ----------------------------------------------------------------


def test_unknot_normalizations():
    assert homfly(builtin("unknot_ccw")) == SkeinPolynomial.one()
    assert conway(builtin("unknot_cw")) == SkeinPolynomial.one()


def test_conway_goldens():
    assert conway(builtin("trefoil_knot")).text() == "z^2 + 1"
    assert conway(builtin("figure8_knot")).text() == "-z^2 + 1"
    assert conway(builtin("hopf")).text() == "z"


def test_conway_split_links_vanish():
    unlink = word(("cup_ccw", 0), ("cup_ccw", 0), ("cap_ccw", 0), ("cap_ccw", 0))
    assert conway(unlink).is_zero
    nested = word(("cup_ccw", 0), ("cup_ccw", 1), ("cap_ccw", 1), ("cap_ccw", 0))
    assert conway(nested).is_zero


def test_homfly_goldens():
    """Frozen from the engine; independently certified by the trace formula."""
    assert homfly(builtin("hopf")) == SkeinPolynomial(
        {(1, 1): 1, (1, -1): 1, (-1, -1): -1}
    )
    assert homfly(builtin("trefoil_knot")) == SkeinPolynomial(
        {(1, 2): 1, (1, 0): 2, (-1, 0): -1}
    )
    assert homfly(builtin("figure8_knot")) == SkeinPolynomial(
        {(2, 0): 1, (0, 2): -1, (0, 0): -1, (-2, 0): 1}
    )


def test_homfly_curl_axiom():
    for m in range(4):
        assert homfly(builtin("c_r_plus", m)) == _mono(m, 0)
        assert homfly(builtin("c_l_plus", m)) == _mono(m, 0)
        assert homfly(builtin("c_r_minus", m)) == _mono(-m, 0)
        assert homfly(builtin("c_l_minus", m)) == _mono(-m, 0)


def test_homfly_disjoint_union_factor():
    unlink = word(("cup_ccw", 0), ("cup_ccw", 0), ("cap_ccw", 0), ("cap_ccw", 0))
    delta = SkeinPolynomial({(1, -1): 1, (-1, -1): -1})
    assert homfly(unlink) == delta


def test_mirror_symmetry():
    # switching every crossing inverts alpha and negates z in the engine's
    # conventions: check on the trefoil via direct recomputation
    d = mirror(builtin("trefoil_knot"))
    got = homfly(d)
    want = SkeinPolynomial({(-1, 2): 1, (-1, 0): 2, (1, 0): -1})
    assert got == want


def test_skein_recursion_consistency():
    # H(L+) - H(L-) = z H(L0) holds for the engine itself at a chosen site
    lp = builtin("hopf")
    lm = lp.with_slices(
        lp.slices[:3] + (lp.slices[3].__class__(lp.slices[3].kind, 1),) + lp.slices[4:]
    )
    from oqa.diagram import Slice, SliceKind

    lm = lp.with_slices(lp.slices[:2] + (Slice(SliceKind.X_NEG, 1),) + lp.slices[3:])
    l0 = lp.with_slices(lp.slices[:2] + lp.slices[3:])
    z = _mono(0, 1)
    assert homfly(lp) - homfly(lm) == z * homfly(l0)
    assert conway(lp) - conway(lm) == z * conway(l0)


def test_polynomial_moves_invariance(table2):
    diagrams = [
        builtin("hopf"), builtin("trefoil_knot"), builtin("figure8_knot"),
        builtin("c_r_plus", 2), builtin("unknot_cw"),
    ]
    checked = 0
    for d in diagrams:
        h, c = homfly(d), conway(d)
        for move in MOVES:
            for site in move_sites(d, move):
                try:
                    d2 = apply_move(d, move, site)
                except Exception:
                    continue
                assert homfly(d2) == h and conway(d2) == c, (move, site)
                checked += 1
            if any(not rhs for _, rhs in MOVES[move]):
                for site in insertion_sites(d, move)[:3]:
                    d2 = apply_move(d, move, site)
                    assert homfly(d2) == h and conway(d2) == c
                    checked += 1
    assert checked >= 70


def test_polynomial_text_and_eval():
    p = SkeinPolynomial({(1, 1): 1, (-1, -1): -1, (0, 0): 2})
    assert p.text() == "a*z + 2 - a^-1*z^-1"
    t = SymbolTable(["a", "sbc"])
    a, sbc = t.syms("a", "sbc")
    v = p.eval_at(t, a, sbc)
    assert v == a * sbc + 2 - (a * sbc).inv()


# -- single-block closed forms ------------------------------------------------


@pytest.fixture(scope="module")
def ctx2(table2):
    a, sbc, b = table2.syms("a", "sbc", "b")
    params = single_block_params(
        table2, 2, [a, a], sbc * sbc, {(1, 2): b}, table2.one
    )
    return section6_context(params)


@pytest.fixture(scope="module")
def ctx2_alex():
    t = SymbolTable(["a", "sbc", "b"], gaussian=True)
    a, sbc, b = t.syms("a", "sbc", "b")
    bc = sbc * sbc
    params = single_block_params(t, 2, [a, -bc / a], bc, {(1, 2): b}, t.one)
    return section6_context(params)


def test_context_constants(ctx2):
    t = ctx2.table
    a, sbc = t.syms("a", "sbc")
    r = a * a / (sbc * sbc)
    assert ctx2.q == a / sbc and ctx2.r == r
    assert ctx2.e == 2
    assert ctx2.trace_g == 1 + r
    assert ctx2.trace_g_inv == 1 + r.inv()
    assert ctx2.hbar == r
    assert ctx2.trace_g / ctx2.trace_g_inv == ctx2.hbar
    assert ctx2.kappa == ctx2.rho_norm * ctx2.trace_g
    assert ctx2.kappa == ctx2.rho_norm.inv() * ctx2.trace_g_inv


def test_alexander_context_constants(ctx2_alex):
    assert ctx2_alex.e == 0
    assert ctx2_alex.trace_g.is_zero and ctx2_alex.trace_g_inv.is_zero
    assert ctx2_alex.rho_norm is None and ctx2_alex.kappa is None


def _mixed_ctx4():
    t = SymbolTable(["a", "sbc", "x"], gaussian=True)
    a, sbc = t.syms("a", "sbc")
    bc = sbc * sbc
    pattern = [a, a, -bc / a, a]
    B = {(i, j): t.one for i in range(1, 5) for j in range(i + 1, 5)}
    params = single_block_params(t, 4, pattern, bc, B, t.one)
    return section6_context(params)


def test_omega_family_inverse_identity():
    """omega_i(x^-1)^2 = omega_i(x)^-2 for i <= 4, symbolically in x."""
    ctx = _mixed_ctx4()
    x = ctx.table.sym("x")
    fam = ctx.omega_sq_family(x)
    fam_inv = ctx.omega_sq_family(x.inv())
    for i in range(4):
        assert fam_inv[i] == fam[i].inv()


def test_omega_family_partial_sums():
    """Tail sums telescope through the prefix exponent, for every split."""
    ctx = _mixed_ctx4()
    t = ctx.table
    x = t.sym("x")
    fam = ctx.omega_sq_family(x)
    n = ctx.n
    for split in range(0, n + 1):
        tail = t.zero
        for j in range(split + 1, n + 1):
            tail = tail + fam[j - 1]
        ep = ctx.eta_plus(0, split) - ctx.eta_minus(0, split)
        et = ctx.eta_plus(split, n) - ctx.eta_minus(split, n)
        expected = x**ep * (t.one - x**et) / (t.one - x)
        assert tail == expected, split


def test_telescoping_identity():
    """(prod_{i<=j<m} z_j) - z_i = sum_{i<l<m} (prod_{i<=j<l} z_j)(z_l - 1)."""
    t = SymbolTable(["z1", "z2", "z3", "z4", "z5"])
    zs = [t.sym(f"z{k}") for k in range(1, 6)]
    for i in range(1, 5):
        for m in range(i + 1, 6):
            prod = t.one
            for j in range(i, m):
                prod = prod * zs[j - 1]
            lhs = prod - zs[i - 1]
            rhs = t.zero
            for l in range(i + 1, m):
                partial = t.one
                for j in range(i, l):
                    partial = partial * zs[j - 1]
                rhs = rhs + partial * (zs[l - 1] - 1)
            assert lhs == rhs, (i, m)


def test_kink_tangle_closed_forms(ctx2, ctx2_alex):
    """w of the four one-kink tangles matches the diagonal closed forms."""
    for ctx in (ctx2, ctx2_alex):
        t = ctx.table
        S = ctx.structure
        A = S.algebra
        n, a, r = ctx.n, ctx.a, ctx.r

        def diag(entry_fn):
            return A.element(
                {(i - 1) * n + (i - 1): entry_fn(i) for i in range(1, n + 1)}
            )

        def delta(i):
            return 1 if ctx.a_values[i - 1] == a else 0

        def eta(i, hi=None):
            return ctx.eta_plus(i, n if hi is None else hi) - ctx.eta_minus(
                i, n if hi is None else hi
            )

        w_r_plus = diag(lambda i: a * (-r) ** (delta(i) - 1) * r ** eta(i))
        assert evaluate_tangle(S, builtin("curl")) == w_r_plus
        w_l_minus = diag(
            lambda i: a.inv() * (-r.inv()) ** (delta(i) - 1) * r ** (-eta(i))
        )
        assert evaluate_tangle(S, mirror(builtin("curl_op"))) == w_l_minus
        w_l_plus = diag(
            lambda i: a * r.inv() * (-r.inv()) ** (delta(i) - 1) * r ** eta(0, i)
        )
        assert evaluate_tangle(S, builtin("curl_op")) == w_l_plus
        w_r_minus = diag(
            lambda i: a.inv() * r * (-r) ** (delta(i) - 1) * r ** (-eta(0, i))
        )
        assert evaluate_tangle(S, mirror(builtin("curl"))) == w_r_minus


@pytest.mark.parametrize("family,name", [
    ("r+", "c_r_plus"), ("r-", "c_r_minus"), ("l+", "c_l_plus"), ("l-", "c_l_minus"),
])
def test_curl_family_values_n2(ctx2, family, name):
    for m in range(4):
        got = evaluate_link(ctx2.structure, builtin(name, m))
        assert got == curl_family_values(ctx2, family, m), (family, m)


def test_curl_family_unknown(ctx2):
    with pytest.raises(DiagramError):
        curl_family_values(ctx2, "up", 1)


def test_curl_closed_form_consistency(ctx2):
    """F(C) = kappa (a rho_norm^-1)^writhe rho_norm^-Wd on the curl closures."""
    for name in ("c_r_plus", "c_r_minus", "c_l_plus", "c_l_minus"):
        for m in range(3):
            d = builtin(name, m)
            st = stats(d)
            want = (
                ctx2.kappa
                * (ctx2.a * ctx2.rho_norm.inv()) ** st.writhe
                * ctx2.rho_norm ** (-st.total_whitney)
            )
            assert evaluate_link(ctx2.structure, d) == want, (name, m)


def test_identify_generic_branch(ctx2):
    for name in ("unknot_ccw", "hopf", "trefoil_knot", "figure8_knot"):
        report = identify_F(ctx2, builtin(name))
        assert report.branch == "homfly" and report.passed, name


def test_identify_report_json(ctx2):
    report = identify_F(ctx2, builtin("hopf"))
    blob = report.to_json()
    assert blob["passed"] is True and blob["branch"] == "homfly"
    assert "lhs" in blob and "polynomial" in blob


def test_scaled_twist_rescales_by_whitney(ctx2, table2):
    """Replacing G by zG multiplies the invariant by z^(total Whitney)."""
    z = table2.sym("b") ** 2 + 1  # any invertible scalar
    S = ctx2.structure
    S_scaled = attach_twist(S, S.twist.g.scale(z))
    for name in ("hopf", "trefoil_knot"):
        d = builtin(name)
        wd = stats(d).total_whitney
        assert evaluate_link(S_scaled, d) == z**wd * evaluate_link(S, d), name


def test_skein_triples(ctx2):
    from oqa.diagram import Slice, SliceKind

    def triple(d, index):
        s = d.slices[index]
        lp = d.with_slices(
            d.slices[:index] + (Slice(SliceKind.X_POS, s.pos),) + d.slices[index + 1 :]
        )
        lm = d.with_slices(
            d.slices[:index] + (Slice(SliceKind.X_NEG, s.pos),) + d.slices[index + 1 :]
        )
        l0 = d.with_slices(d.slices[:index] + d.slices[index + 1 :])
        return lp, lm, l0

    assert CROSS_POS_IS_SKEIN_POSITIVE
    for name, index in (("hopf", 2), ("trefoil_knot", 3), (("c_r_plus", 1), 2)):
        d = builtin(*name) if isinstance(name, tuple) else builtin(name)
        assert skein_triple_check(ctx2, *triple(d, index)), name


def test_skein_triple_rejects_mismatch(ctx2):
    hopf = builtin("hopf")
    tre = builtin("trefoil_knot")
    with pytest.raises(DiagramError):
        skein_triple_check(ctx2, hopf, mirror(tre), hopf)
    with pytest.raises(DiagramError):
        skein_triple_check(ctx2, hopf, hopf, hopf)


def test_homogeneity_degree_equals_writhe(ctx2):
    items = [
        ("unknot_ccw", None), ("unknot_cw", None), ("hopf", None),
        ("trefoil_knot", None), ("figure8_knot", None),
        ("c_r_plus", 0), ("c_r_plus", 2), ("c_r_minus", 1),
        ("c_l_plus", 2), ("c_l_minus", 3),
    ]
    for name, m in items:
        d = builtin(name, m)
        value = evaluate_link(ctx2.structure, d)
        assert laurent_homogeneous_degree(value, ("a", "sbc")) == stats(d).writhe, name


def test_alexander_branch_reality(ctx2_alex):
    """Tr G = 0 collapses the closed invariant; the stated identification
    with the Alexander polynomial cannot hold on closed diagrams (its right
    side is 1 on the unknot).  The skein oracle still produces the Alexander
    polynomial, and identify_F reports the literal comparison honestly."""
    assert conway(builtin("trefoil_knot")).text() == "z^2 + 1"
    report = identify_F(ctx2_alex, builtin("unknot_ccw"))
    assert report.branch == "alexander"
    assert report.lhs.is_zero and report.rhs.is_one
    assert not report.passed


def test_context_rejects_bad_shapes(table2):
    a, sbc, b = table2.syms("a", "sbc", "b")
    params = single_block_params(table2, 2, [a, a], sbc * sbc, {(1, 2): b}, table2.one)
    bad = single_block_params(table2, 2, [a, a], sbc * sbc, {(1, 2): b}, table2.scalar(4))
    with pytest.raises(StructureError, match="omega_1"):
        section6_context(bad)
    # multi-block rejected
    from oqa import MnStructureParams

    two_blocks = MnStructureParams(
        table=params.table, n=2, blocks=((1,), (2,)), bc={},
        diag=params.diag, off_diag=params.off_diag,
        omega_sq={1: table2.one, 2: table2.one},
    )
    with pytest.raises(StructureError, match="single block"):
        section6_context(two_blocks)


def test_identify_generic_branch_n3(table3):
    a, sbc = table3.syms("a", "sbc")
    B = {
        (1, 2): table3.sym("b12"),
        (1, 3): table3.sym("b13"),
        (2, 3): table3.sym("b23"),
    }
    ctx = section6_context(
        single_block_params(table3, 3, [a] * 3, sbc * sbc, B, table3.one)
    )
    for name in ("hopf", "trefoil_knot", "figure8_knot"):
        report = identify_F(ctx, builtin(name))
        assert report.passed and report.branch == "homfly", name


def test_identify_mixed_pattern_generic_branch():
    """A mixed diagonal pattern with unequal sign counts stays generic.

    Pattern (a, -bc/a, a) gives e = 1 and Tr G = 1, so the two-variable
    identification applies even though the automorphism needs the Gaussian
    square-root branch.
    """
    t = SymbolTable(["a", "sbc", "b12", "b13", "b23"], gaussian=True)
    a, sbc = t.syms("a", "sbc")
    bc = sbc * sbc
    B = {(1, 2): t.sym("b12"), (1, 3): t.sym("b13"), (2, 3): t.sym("b23")}
    ctx = section6_context(
        single_block_params(t, 3, [a, -bc / a, a], bc, B, t.one)
    )
    assert ctx.e == 1 and ctx.trace_g.is_one
    for name in ("unknot_ccw", "hopf", "trefoil_knot"):
        report = identify_F(ctx, builtin(name))
        assert report.passed and report.branch == "homfly", name


def test_random_move_walk_preserves_both_routes(table2):
    import random

    from oqa import build_balanced_example2, evaluate_link

    a, sbc, b = table2.syms("a", "sbc", "b")
    S = build_balanced_example2(table2, 2, a, sbc * sbc, {(1, 2): b}, table2.one)
    rng = random.Random(11)
    d = builtin("hopf")
    base_v, base_h, base_c = evaluate_link(S, d), homfly(d), conway(d)
    for _ in range(6):
        moves = list(MOVES)
        rng.shuffle(moves)
        for mv in moves:
            sites = move_sites(d, mv)
            if rng.random() < 0.5 and any(not rhs for _, rhs in MOVES[mv]):
                sites = sites + insertion_sites(d, mv)[:2]
            if not sites:
                continue
            try:
                d = apply_move(d, mv, rng.choice(sites))
                break
            except Exception:
                continue
        assert evaluate_link(S, d) == base_v
        assert homfly(d) == base_h and conway(d) == base_c
