import pytest

from oqa import (
    SymbolTable,
    build_balanced_example2,
    single_block_params,
    build_thm5,
)


@pytest.fixture(scope="session")
def table2():
    return SymbolTable(["a", "sbc", "b"])


@pytest.fixture(scope="session")
def ex2_n2(table2):
    """Balanced structure on M_2, generic symbolic parameters, omega_1^2 = 1."""
    a, sbc, b = table2.syms("a", "sbc", "b")
    return build_balanced_example2(table2, 2, a, sbc * sbc, {(1, 2): b}, table2.one)


@pytest.fixture(scope="session")
def table3():
    return SymbolTable(["a", "sbc", "b12", "b13", "b23"])


@pytest.fixture(scope="session")
def ex2_n3(table3):
    a, sbc = table3.syms("a", "sbc")
    B = {
        (1, 2): table3.sym("b12"),
        (1, 3): table3.sym("b13"),
        (2, 3): table3.sym("b23"),
    }
    return build_balanced_example2(table3, 3, a, sbc * sbc, B, table3.one)


@pytest.fixture(scope="session")
def alexander_n2():
    """Single block on M_2 with a_2 = -bc/a: Tr G = 0."""
    table = SymbolTable(["a", "sbc", "b"], gaussian=True)
    a, sbc, b = table.syms("a", "sbc", "b")
    bc = sbc * sbc
    params = single_block_params(table, 2, [a, -bc / a], bc, {(1, 2): b}, table.one)
    return build_thm5(params, name="alexander_n2")
