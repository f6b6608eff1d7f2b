"""Finite-dimensional unital algebras given by structure constants.

An :class:`AlgebraSpec` fixes a basis e_0..e_{dim-1} and a sparse table
c[i][j][k] with e_i e_j = sum_k c[i][j][k] e_k.  Elements, tensor squares
(elements of A (x) A) and linear/algebra maps are thin sparse wrappers over
Scalars.  Everything is immutable and exact.

The two concrete algebras used by the builders are the matrix algebra M_n(k)
with basis E_ij (row-major) and the four-dimensional algebra generated by
``g, x`` with g^2 = 1, x^2 = 0, xg = -gx (basis 1, g, x, gx).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .scalar import Scalar, SymbolTable

__all__ = [
    "AlgebraError",
    "SingularError",
    "AlgebraSpec",
    "AlgebraElement",
    "TensorSquareElement",
    "TripleTensor",
    "AlgebraMap",
    "matrix_algebra",
    "sweedler_algebra",
    "tensor_mul",
    "tensor_invert",
    "qybe_check",
    "apply_map_tensor",
    "echelon_basis",
]


class AlgebraError(ValueError):
    pass


class SingularError(AlgebraError):
    """A linear problem (tensor inverse, map inverse) has no solution."""


Coeffs = Dict[int, Scalar]


@dataclass(frozen=True)
class AlgebraSpec:
    """A finite-dimensional unital associative algebra over a SymbolTable."""

    table: SymbolTable
    dim: int
    basis_labels: Tuple[str, ...]
    structure: Mapping[Tuple[int, int], Tuple[Tuple[int, Scalar], ...]]
    unit: Tuple[Tuple[int, Scalar], ...]
    name: str = "algebra"

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.name}, dim={self.dim})"

    def label_index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis label {label!r} in {self!r}") from None

    # -- element constructors ------------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {k: c for k, c in self.unit})

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.table.one})

    def element(self, coeffs: Mapping[int, Scalar]) -> "AlgebraElement":
        return AlgebraElement(self, {k: c for k, c in coeffs.items() if not c.is_zero})

    def basis_product(self, i: int, j: int) -> Coeffs:
        return {k: c for k, c in self.structure.get((i, j), ())}

    def opposite(self) -> "AlgebraSpec":
        structure = {
            (j, i): terms for (i, j), terms in self.structure.items()
        }
        return AlgebraSpec(
            table=self.table,
            dim=self.dim,
            basis_labels=self.basis_labels,
            structure=structure,
            unit=self.unit,
            name=self.name + "^op",
        )

    # -- sanity ---------------------------------------------------------------

    def check_unital(self) -> None:
        one = self.one()
        for i in range(self.dim):
            e = self.basis_element(i)
            if one * e != e or e * one != e:
                raise AlgebraError(f"unit fails on basis element {self.basis_labels[i]}")

    def check_associative(self) -> None:
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            ei, ej, ek = map(self.basis_element, (i, j, k))
            if (ei * ej) * ek != ei * (ej * ek):
                raise AlgebraError(
                    "associativity fails on "
                    f"({self.basis_labels[i]}, {self.basis_labels[j]}, {self.basis_labels[k]})"
                )


def _clean(coeffs: Mapping) -> dict:
    return {k: c for k, c in coeffs.items() if not c.is_zero}


@dataclass(frozen=True)
class AlgebraElement:
    algebra: AlgebraSpec
    coeffs: Mapping[int, Scalar]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", dict(_clean(self.coeffs)))

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra.basis_labels != self.algebra.basis_labels:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def scale(self, s: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: c * s for k, c in self.coeffs.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out: dict = {}
        structure = self.algebra.structure
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                terms = structure.get((i, j))
                if not terms:
                    continue
                cij = ci * cj
                for k, c in terms:
                    s = out.get(k)
                    contrib = cij * c
                    out[k] = contrib if s is None else s + contrib
        return AlgebraElement(self.algebra, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.algebra.basis_labels == other.algebra.basis_labels
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def pairing(self, functional: Mapping[int, Scalar]) -> Scalar:
        """Apply a linear functional given by its values on basis elements."""
        total = self.algebra.table.zero
        for k, c in self.coeffs.items():
            f = functional.get(k)
            if f is not None:
                total = total + c * f
        return total

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        labels = self.algebra.basis_labels
        parts = [f"({self.coeffs[k].text()})*{labels[k]}" for k in sorted(self.coeffs)]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.text()})"


@dataclass(frozen=True)
class TensorSquareElement:
    """Element of A (x) A as a sparse table over basis pairs."""

    algebra: AlgebraSpec
    coeffs: Mapping[Tuple[int, int], Scalar]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", dict(_clean(self.coeffs)))

    def __add__(self, other: "TensorSquareElement") -> "TensorSquareElement":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return TensorSquareElement(self.algebra, out)

    def __sub__(self, other: "TensorSquareElement") -> "TensorSquareElement":
        return self + other.scale(-self.algebra.table.one)

    def scale(self, s: Scalar) -> "TensorSquareElement":
        return TensorSquareElement(
            self.algebra, {k: c * s for k, c in self.coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return (
            self.algebra.basis_labels == other.algebra.basis_labels
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def flip(self) -> "TensorSquareElement":
        """The opposite tensor: sum b_i (x) a_i."""
        return TensorSquareElement(
            self.algebra, {(j, i): c for (i, j), c in self.coeffs.items()}
        )

    def first_tensorand_span(self) -> List[AlgebraElement]:
        by_second: Dict[int, dict] = {}
        for (i, j), c in self.coeffs.items():
            by_second.setdefault(j, {})[i] = c
        return [AlgebraElement(self.algebra, v) for v in by_second.values()]

    def second_tensorand_span(self) -> List[AlgebraElement]:
        by_first: Dict[int, dict] = {}
        for (i, j), c in self.coeffs.items():
            by_first.setdefault(i, {})[j] = c
        return [AlgebraElement(self.algebra, v) for v in by_first.values()]

    def to_json(self) -> list:
        labels = self.algebra.basis_labels
        return [
            {"i": labels[i], "j": labels[j], "c": c.text()}
            for (i, j), c in sorted(self.coeffs.items())
        ]

    @staticmethod
    def from_json(algebra: AlgebraSpec, data: Iterable[Mapping]) -> "TensorSquareElement":
        coeffs = {}
        for row in data:
            key = (algebra.label_index(row["i"]), algebra.label_index(row["j"]))
            if key in coeffs:
                raise AlgebraError(f"duplicate tensor slot {row['i']},{row['j']}")
            coeffs[key] = algebra.table.parse(row["c"])
        return TensorSquareElement(algebra, coeffs)


def tensor_unit(algebra: AlgebraSpec) -> TensorSquareElement:
    coeffs: dict = {}
    for i, ci in algebra.unit:
        for j, cj in algebra.unit:
            coeffs[(i, j)] = ci * cj
    return TensorSquareElement(algebra, coeffs)


def tensor_mul(
    algebra: AlgebraSpec,
    u: TensorSquareElement,
    v: TensorSquareElement,
    second_factor_opposite: bool = False,
) -> TensorSquareElement:
    """Product of u and v in A (x) A, or in A (x) A^op when flagged.

    With the flag set, second tensorands multiply in reverse order.
    """
    out: dict = {}
    structure = algebra.structure
    for (i, j), cu in u.coeffs.items():
        for (p, q), cv in v.coeffs.items():
            first = structure.get((i, p))
            if not first:
                continue
            second = structure.get((q, j) if second_factor_opposite else (j, q))
            if not second:
                continue
            c = cu * cv
            for k1, c1 in first:
                for k2, c2 in second:
                    key = (k1, k2)
                    contrib = c * c1 * c2
                    s = out.get(key)
                    out[key] = contrib if s is None else s + contrib
    return TensorSquareElement(algebra, out)


# -- sparse linear algebra ---------------------------------------------------


def solve_sparse(
    table: SymbolTable,
    rows: List[Dict[int, Scalar]],
    rhs: List[Scalar],
    nunknowns: int,
) -> Optional[List[Scalar]]:
    """Solve a sparse exact linear system; None when inconsistent/singular.

    Gaussian elimination with a sparsity-biased pivot; fine at the sizes the
    tensor-square inverses need (dim^2 <= a few hundred).
    """
    rows = [{c: v for c, v in r.items() if not v.is_zero} for r in rows]
    rhs = list(rhs)
    assignments: Dict[int, Tuple[Dict[int, Scalar], Scalar]] = {}
    active = [k for k, r in enumerate(rows) if r or not rhs[k].is_zero]
    solved_order: List[int] = []
    while True:
        best = None
        for k in active:
            row = rows[k]
            if not row:
                if not rhs[k].is_zero:
                    return None
                continue
            score = len(row)
            if best is None or score < best[0]:
                best = (score, k)
        if best is None:
            break
        _, k = best
        row, b = rows[k], rhs[k]
        col = min(row)
        pivot = row[col]
        inv = pivot.inv()
        norm_row = {c: v * inv for c, v in row.items() if c != col}
        norm_b = b * inv
        assignments[col] = (norm_row, norm_b)
        solved_order.append(col)
        active = [m for m in active if m != k]
        for m in active:
            r = rows[m]
            factor = r.pop(col, None)
            if factor is None or factor.is_zero:
                continue
            for c, v in norm_row.items():
                s = r.get(c)
                nv = (s - factor * v) if s is not None else -factor * v
                if nv.is_zero:
                    r.pop(c, None)
                else:
                    r[c] = nv
            rhs[m] = rhs[m] - factor * norm_b
        active = [m for m in active if rows[m] or not rhs[m].is_zero]

    solution = [table.zero] * nunknowns
    known: Dict[int, Scalar] = {}
    for col in reversed(solved_order):
        row, b = assignments[col]
        val = b
        for c, v in row.items():
            if c in known:
                val = val - v * known[c]
            # unsolved columns are free; set to zero
        known[col] = val
        solution[col] = val
    return solution


def tensor_invert(algebra: AlgebraSpec, u: TensorSquareElement) -> TensorSquareElement:
    """Two-sided inverse of u in A (x) A via a linear solve; raises if singular."""
    dim = algebra.dim
    index = {
        (i, j): i * dim + j for i in range(dim) for j in range(dim)
    }
    rows: List[Dict[int, Scalar]] = [dict() for _ in range(dim * dim)]
    structure = algebra.structure
    for (i, j), cu in u.coeffs.items():
        for r in range(dim):
            first = structure.get((i, r))
            if not first:
                continue
            for s in range(dim):
                second = structure.get((j, s))
                if not second:
                    continue
                col = index[(r, s)]
                for k1, c1 in first:
                    for k2, c2 in second:
                        row = rows[k1 * dim + k2]
                        contrib = cu * c1 * c2
                        prev = row.get(col)
                        row[col] = contrib if prev is None else prev + contrib
    rhs = [algebra.table.zero] * (dim * dim)
    for (i, j), c in tensor_unit(algebra).coeffs.items():
        rhs[i * dim + j] = c
    sol = solve_sparse(algebra.table, rows, rhs, dim * dim)
    if sol is None:
        raise SingularError("tensor-square element is not invertible")
    coeffs = {
        (i, j): sol[index[(i, j)]]
        for i in range(dim)
        for j in range(dim)
        if not sol[index[(i, j)]].is_zero
    }
    v = TensorSquareElement(algebra, coeffs)
    one = tensor_unit(algebra)
    if tensor_mul(algebra, u, v) != one or tensor_mul(algebra, v, u) != one:
        raise SingularError("tensor-square element is not two-sided invertible")
    return v


# -- triple tensors and the quantum Yang-Baxter equation ---------------------


@dataclass(frozen=True)
class TripleTensor:
    algebra: AlgebraSpec
    coeffs: Mapping[Tuple[int, int, int], Scalar]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", dict(_clean(self.coeffs)))

    def __mul__(self, other: "TripleTensor") -> "TripleTensor":
        out: dict = {}
        structure = self.algebra.structure
        for (i, j, k), cu in self.coeffs.items():
            for (p, q, r), cv in other.coeffs.items():
                t1 = structure.get((i, p))
                if not t1:
                    continue
                t2 = structure.get((j, q))
                if not t2:
                    continue
                t3 = structure.get((k, r))
                if not t3:
                    continue
                c = cu * cv
                for a1, c1 in t1:
                    for a2, c2 in t2:
                        for a3, c3 in t3:
                            key = (a1, a2, a3)
                            contrib = c * c1 * c2 * c3
                            s = out.get(key)
                            out[key] = contrib if s is None else s + contrib
        return TripleTensor(self.algebra, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleTensor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))


def _embed(u: TensorSquareElement, slots: Tuple[int, int]) -> TripleTensor:
    algebra = u.algebra
    unit_slot = ({0, 1, 2} - set(slots)).pop()
    out: dict = {}
    for (i, j), c in u.coeffs.items():
        for k, ck in algebra.unit:
            key = [0, 0, 0]
            key[slots[0]] = i
            key[slots[1]] = j
            key[unit_slot] = k
            out[tuple(key)] = c * ck
    return TripleTensor(algebra, out)


def qybe_check(algebra: AlgebraSpec, rho: TensorSquareElement) -> bool:
    """Whether rho_12 rho_13 rho_23 = rho_23 rho_13 rho_12 holds exactly."""
    r12 = _embed(rho, (0, 1))
    r13 = _embed(rho, (0, 2))
    r23 = _embed(rho, (1, 2))
    return (r12 * r13) * r23 == (r23 * r13) * r12


def qybe_defect(algebra: AlgebraSpec, rho: TensorSquareElement) -> dict:
    """Nonzero slots of rho_12 rho_13 rho_23 - rho_23 rho_13 rho_12 (witnesses)."""
    r12 = _embed(rho, (0, 1))
    r13 = _embed(rho, (0, 2))
    r23 = _embed(rho, (1, 2))
    lhs = (r12 * r13) * r23
    rhs = (r23 * r13) * r12
    out = dict(lhs.coeffs)
    for k, c in rhs.coeffs.items():
        s = out.get(k, algebra.table.zero) - c
        if s.is_zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


# -- linear and algebra maps -------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """A linear endomap; column j holds the image of basis element j."""

    algebra: AlgebraSpec
    columns: Mapping[int, Mapping[int, Scalar]]

    def __post_init__(self):
        cols = {
            j: dict(_clean(col)) for j, col in self.columns.items() if _clean(col)
        }
        object.__setattr__(self, "columns", cols)

    @staticmethod
    def identity(algebra: AlgebraSpec) -> "AlgebraMap":
        one = algebra.table.one
        return AlgebraMap(algebra, {j: {j: one} for j in range(algebra.dim)})

    @staticmethod
    def diagonal(algebra: AlgebraSpec, entries: Mapping[int, Scalar]) -> "AlgebraMap":
        return AlgebraMap(algebra, {j: {j: c} for j, c in entries.items()})

    def is_identity(self) -> bool:
        one = self.algebra.table.one
        return all(
            self.columns.get(j, {}) == {j: one} for j in range(self.algebra.dim)
        )

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for j, cj in x.coeffs.items():
            col = self.columns.get(j)
            if not col:
                continue
            for i, c in col.items():
                contrib = cj * c
                s = out.get(i)
                out[i] = contrib if s is None else s + contrib
        return AlgebraElement(self.algebra, out)

    def apply_basis(self, j: int) -> AlgebraElement:
        return AlgebraElement(self.algebra, dict(self.columns.get(j, {})))

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        cols = {
            j: self.apply(other.apply_basis(j)).coeffs
            for j in range(self.algebra.dim)
        }
        return AlgebraMap(self.algebra, cols)

    def power(self, n: int) -> "AlgebraMap":
        if n < 0:
            return self.inverse().power(-n)
        out = AlgebraMap.identity(self.algebra)
        for _ in range(n):
            out = self.compose(out)
        return out

    def inverse(self) -> "AlgebraMap":
        dim = self.algebra.dim
        table = self.algebra.table
        cols = {}
        rows: List[Dict[int, Scalar]] = [dict() for _ in range(dim)]
        for j, col in self.columns.items():
            for i, c in col.items():
                rows[i][j] = c
        for target in range(dim):
            rhs = [table.one if i == target else table.zero for i in range(dim)]
            sol = solve_sparse(table, rows, rhs, dim)
            if sol is None:
                raise SingularError("map is not invertible")
            cols[target] = {i: c for i, c in enumerate(sol) if not c.is_zero}
        return AlgebraMap(self.algebra, cols)

    def is_multiplicative(self) -> bool:
        algebra = self.algebra
        for i in range(algebra.dim):
            fi = self.apply_basis(i)
            for j in range(algebra.dim):
                fj = self.apply_basis(j)
                prod = algebra.basis_element(i) * algebra.basis_element(j)
                if self.apply(prod) != fi * fj:
                    return False
        return self.apply(algebra.one()) == algebra.one()

    def commutes_with(self, other: "AlgebraMap") -> bool:
        return self.compose(other) == other.compose(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraMap):
            return NotImplemented
        return self.columns == other.columns

    def __hash__(self) -> int:
        return hash(
            frozenset(
                (j, frozenset(col.items())) for j, col in self.columns.items()
            )
        )

    def to_json(self) -> dict:
        labels = self.algebra.basis_labels
        return {
            labels[j]: {labels[i]: c.text() for i, c in sorted(col.items())}
            for j, col in sorted(self.columns.items())
        }

    @staticmethod
    def from_json(algebra: AlgebraSpec, data: Mapping) -> "AlgebraMap":
        cols = {}
        for jlabel, col in data.items():
            j = algebra.label_index(jlabel)
            cols[j] = {
                algebra.label_index(ilabel): algebra.table.parse(text)
                for ilabel, text in col.items()
            }
        return AlgebraMap(algebra, cols)


def apply_map_tensor(
    f: AlgebraMap, g: AlgebraMap, u: TensorSquareElement
) -> TensorSquareElement:
    """(f (x) g)(u)."""
    out: dict = {}
    for (i, j), c in u.coeffs.items():
        fi = f.columns.get(i)
        gj = g.columns.get(j)
        if not fi or not gj:
            continue
        for p, cp in fi.items():
            for q, cq in gj.items():
                key = (p, q)
                contrib = c * cp * cq
                s = out.get(key)
                out[key] = contrib if s is None else s + contrib
    return TensorSquareElement(u.algebra, out)


def echelon_basis(vectors: Iterable[AlgebraElement]) -> List[AlgebraElement]:
    """Reduced spanning set of a list of elements (exact row echelon)."""
    basis: Dict[int, AlgebraElement] = {}
    for v in vectors:
        v = AlgebraElement(v.algebra, dict(v.coeffs))
        while not v.is_zero:
            lead = min(v.coeffs)
            if lead in basis:
                v = v - basis[lead].scale(v.coeffs[lead])
            else:
                basis[lead] = v.scale(v.coeffs[lead].inv())
                break
    return [basis[k] for k in sorted(basis)]


# -- concrete algebras -------------------------------------------------------


def matrix_algebra(table: SymbolTable, n: int) -> AlgebraSpec:
    """M_n(k) with the standard basis E_ij (row-major), E_ij E_lm = delta_jl E_im."""
    if n < 1:
        raise AlgebraError("matrix algebra needs n >= 1")
    one = table.one
    idx = lambda i, j: i * n + j
    labels = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    structure = {}
    for i, j, l, m in itertools.product(range(n), repeat=4):
        if j == l:
            structure[(idx(i, j), idx(l, m))] = ((idx(i, m), one),)
    unit = tuple((idx(i, i), one) for i in range(n))
    return AlgebraSpec(table, n * n, labels, structure, unit, name=f"M{n}")


def sweedler_algebra(table: SymbolTable) -> AlgebraSpec:
    """The 4-dimensional algebra <g, x | g^2 = 1, x^2 = 0, xg = -gx>.

    Basis order: 1, g, x, gx.  Characteristic zero is automatic here.
    """
    one = table.one
    E, G, X, GX = 0, 1, 2, 3
    products = {
        (E, E): (E, 1), (E, G): (G, 1), (E, X): (X, 1), (E, GX): (GX, 1),
        (G, E): (G, 1), (G, G): (E, 1), (G, X): (GX, 1), (G, GX): (X, 1),
        (X, E): (X, 1), (X, G): (GX, -1), (X, X): None, (X, GX): None,
        (GX, E): (GX, 1), (GX, G): (X, -1), (GX, X): None, (GX, GX): None,
    }
    structure = {}
    for (i, j), res in products.items():
        if res is None:
            continue
        k, sign = res
        structure[(i, j)] = ((k, one if sign == 1 else -one),)
    labels = ("1", "g", "x", "gx")
    return AlgebraSpec(table, 4, labels, structure, tuple([(E, one)]), name="H4")
