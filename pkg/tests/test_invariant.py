import random

import pytest

from oqa import (
    InvariantError,
    SymbolTable,
    builtin,
    compose_tangles,
    evaluate_knot,
    evaluate_link,
    evaluate_tangle,
    formal_word,
    mirror,
    opposite,
    orientation_reverse,
    standardize,
    sweedler_oqa,
)
from oqa.diagram import word
from oqa.diagram import upward_points

from oracles import oracle_evaluate


def _direct_rho_sum(S, expr):
    """sum over rho entries of expr(first factor, second factor), scaled."""
    total = S.algebra.zero()
    for (i, j), c in S.rho.coeffs.items():
        total = total + expr(
            S.algebra.basis_element(i), S.algebra.basis_element(j)
        ).scale(c)
    return total


def test_formal_word_shapes(ex2_n2):
    fw = formal_word(builtin("trefoil_tangle"))
    assert len(fw.components) == 1
    assert [f[1] for f in fw.components[0]] == [1, 0, 1, 0, 1, 0]
    fw_curl = formal_word(builtin("curl"))
    assert [f[1:] for f in fw_curl.components[0]] == [(0, -1, -1), (1, 0, 0)]
    empty = formal_word(word(boundary="open"))
    assert empty.components == ((),)
    assert "td" in fw_curl.component_text(0)


def test_identity_strand(ex2_n2):
    assert evaluate_tangle(ex2_n2, word(boundary="open")) == ex2_n2.algebra.one()


def test_curl_formula(ex2_n2):
    T = ex2_n2.d_then_u()
    got = evaluate_tangle(ex2_n2, builtin("curl"))
    assert got == _direct_rho_sum(ex2_n2, lambda x, y: x * T.apply(y))


def test_curl_op_formula(ex2_n2):
    T = ex2_n2.d_then_u()
    got = evaluate_tangle(ex2_n2, builtin("curl_op"))
    assert got == _direct_rho_sum(ex2_n2, lambda x, y: T.apply(y) * x)


def test_trefoil_tangle_formula(ex2_n2):
    """w equals the six-factor reformulated word, summed over three copies."""
    S = ex2_n2
    T = S.d_then_u()
    A = S.algebra
    total = A.zero()
    for (i1, j1), c1 in S.rho.coeffs.items():
        for (i2, j2), c2 in S.rho.coeffs.items():
            for (i3, j3), c3 in S.rho.coeffs.items():
                el = (
                    T.apply(A.basis_element(j1))
                    * T.apply(A.basis_element(i2))
                    * T.apply(A.basis_element(j3))
                    * A.basis_element(i1)
                    * A.basis_element(j2)
                    * A.basis_element(i3)
                )
                total = total + el.scale(c1 * c2 * c3)
    assert evaluate_tangle(S, builtin("trefoil_tangle")) == total


def test_hopf_closed_form_n2(ex2_n2):
    S = ex2_n2
    A, g, gi, tr = S.algebra, S.twist.g, S.twist.g_inv, S.trace
    total = S.table.zero
    for (i1, j1), c1 in S.rho.coeffs.items():
        for (i2, j2), c2 in S.rho.coeffs.items():
            t1 = (gi * A.basis_element(i1) * A.basis_element(j2)).pairing(tr)
            t2 = (g * A.basis_element(j1) * A.basis_element(i2)).pairing(tr)
            total = total + c1 * c2 * t1 * t2
    assert evaluate_link(S, builtin("hopf")) == total


def test_hopf_closed_form_n3(ex2_n3):
    S = ex2_n3
    A, g, gi, tr = S.algebra, S.twist.g, S.twist.g_inv, S.trace
    total = S.table.zero
    for (i1, j1), c1 in S.rho.coeffs.items():
        for (i2, j2), c2 in S.rho.coeffs.items():
            t1 = (gi * A.basis_element(i1) * A.basis_element(j2)).pairing(tr)
            t2 = (g * A.basis_element(j1) * A.basis_element(i2)).pairing(tr)
            total = total + c1 * c2 * t1 * t2
    assert evaluate_link(S, builtin("hopf")) == total


def test_unknot_values(ex2_n2):
    S = ex2_n2
    assert evaluate_link(S, builtin("unknot_ccw")) == S.twist.g_inv.pairing(S.trace)
    assert evaluate_link(S, builtin("unknot_cw")) == S.twist.g.pairing(S.trace)


def test_knot_wrapper(ex2_n2):
    d = builtin("trefoil_knot")
    assert evaluate_knot(ex2_n2, d) == evaluate_link(ex2_n2, d)
    with pytest.raises(InvariantError, match="one component"):
        evaluate_knot(ex2_n2, builtin("hopf"))


def test_missing_twist_and_trace_errors(ex2_n2):
    t = SymbolTable(["alpha"])
    S = sweedler_oqa(t, t.sym("alpha"))
    with pytest.raises(InvariantError, match="twist"):
        evaluate_link(S, builtin("unknot_ccw"))
    bad_trace = {0: ex2_n2.table.one, 1: ex2_n2.table.one}
    with pytest.raises(InvariantError, match="tracelike"):
        evaluate_link(ex2_n2, builtin("hopf"), trace=bad_trace)


def test_non_tracelike_functional_rejected(ex2_n2):
    # an unevenly weighted diagonal functional is not tracelike on M_2:
    # it separates E12 E21 from E21 E12
    t = ex2_n2.table
    weighted = {0: t.one, 3: t.sym("b")}
    with pytest.raises(InvariantError, match="tracelike"):
        evaluate_link(ex2_n2, builtin("hopf"), trace=weighted)


def test_basepoint_independence(ex2_n2):
    for name in ("hopf", "trefoil_knot"):
        d = builtin(name)
        base = evaluate_link(ex2_n2, d)
        for pt in upward_points(d):
            assert evaluate_link(ex2_n2, d, preferred_starts=[pt]) == base


def test_multiplicativity_random_compositions(ex2_n2):
    rng = random.Random(7)
    pieces = [
        builtin("curl"),
        builtin("curl_op"),
        builtin("trefoil_tangle"),
        mirror(builtin("curl")),
        word(boundary="open"),
    ]
    for _ in range(8):
        t1, t2 = rng.choice(pieces), rng.choice(pieces)
        left = evaluate_tangle(ex2_n2, compose_tangles(t1, t2))
        right = evaluate_tangle(ex2_n2, t1) * evaluate_tangle(ex2_n2, t2)
        assert left == right


def test_standardization_agreement(ex2_n2):
    Sstd = standardize(ex2_n2)
    for name, m in [
        ("hopf", None), ("trefoil_knot", None), ("figure8_knot", None),
        ("unknot_ccw", None), ("unknot_cw", None),
        ("c_r_plus", 2), ("c_l_plus", 2), ("c_r_minus", 1), ("c_l_minus", 1),
    ]:
        d = builtin(name, m)
        assert evaluate_link(ex2_n2, d) == evaluate_link(Sstd, d), name
    for name in ("curl", "curl_op", "trefoil_tangle"):
        d = builtin(name)
        assert evaluate_tangle(ex2_n2, d) == evaluate_tangle(Sstd, d), name


def test_opposite_orientation_tangles(ex2_n2):
    Sop = opposite(ex2_n2)
    for name in ("curl", "trefoil_tangle"):
        d = builtin(name)
        left = evaluate_tangle(ex2_n2, orientation_reverse(d))
        right = evaluate_tangle(Sop, d)
        # elements of A and A^op share coefficients on the same basis
        assert left.coeffs == right.coeffs, name


def test_opposite_orientation_knot(ex2_n2):
    Sop = opposite(ex2_n2)
    d = builtin("trefoil_knot")
    assert evaluate_link(ex2_n2, orientation_reverse(d)) == evaluate_link(Sop, d)


def test_oracle_agreement_symbolic(ex2_n2):
    for name, m in [
        ("unknot_cw", None), ("hopf", None), ("trefoil_knot", None),
        ("c_r_plus", 2), ("c_l_minus", 1),
    ]:
        d = builtin(name, m)
        assert oracle_evaluate(ex2_n2, d) == evaluate_link(ex2_n2, d), name
    for name in ("curl", "curl_op", "trefoil_tangle"):
        d = builtin(name)
        assert oracle_evaluate(ex2_n2, d) == evaluate_tangle(ex2_n2, d), name


def test_alexander_branch_values_vanish(alexander_n2):
    """With Tr G = 0 every closed diagram evaluates to zero.

    The skein relation plus vanishing curled unknots forces this; it is the
    reason the degenerate branch cannot follow the Alexander polynomial on
    closed diagrams.
    """
    for name, m in [
        ("unknot_ccw", None), ("hopf", None), ("trefoil_knot", None),
        ("figure8_knot", None), ("c_r_plus", 2),
    ]:
        assert evaluate_link(alexander_n2, builtin(name, m)).is_zero, name
    # open tangles remain informative
    w = evaluate_tangle(alexander_n2, builtin("trefoil_tangle"))
    assert not w.is_zero


def test_sweedler_tangle_invariants():
    t = SymbolTable(["alpha"])
    S = sweedler_oqa(t, t.sym("alpha"))
    w = evaluate_tangle(S, builtin("curl"))
    # invariance under a cancelling kink pair appended
    composite = compose_tangles(builtin("curl"), mirror(builtin("curl_op")))
    assert evaluate_tangle(S, composite) == S.algebra.one()
    assert not w.is_zero


def test_thread_env_parallel_evaluation(ex2_n2, monkeypatch):
    d = builtin("trefoil_knot")
    base = evaluate_link(ex2_n2, d)
    monkeypatch.setenv("OQA_THREADS", "4")
    assert evaluate_link(ex2_n2, d) == base
    monkeypatch.setenv("OQA_THREADS", "zzz")
    with pytest.raises(InvariantError, match="OQA_THREADS"):
        evaluate_link(ex2_n2, d)


def test_thread_env_tangle(ex2_n2, monkeypatch):
    d = builtin("trefoil_tangle")
    base = evaluate_tangle(ex2_n2, d)
    monkeypatch.setenv("OQA_THREADS", "3")
    assert evaluate_tangle(ex2_n2, d) == base
