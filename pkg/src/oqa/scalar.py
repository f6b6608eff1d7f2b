"""Exact scalar arithmetic: rational functions over Q (or Q(i)) in declared symbols.

Every coefficient in this package is a :class:`Scalar`: an exact fraction of
multivariate integer-coefficient polynomials in the parameter symbols of one
:class:`SymbolTable`.  Square roots that the matrix constructions need are
handled by declaring the root itself as a symbol (e.g. ``sbc`` with
``bc = sbc**2``) or, for square roots of -1, by building the table over the
Gaussian rationals.

Canonical form is maintained eagerly (content/GCD reduction with a normalized
denominator), so ``==`` is exact mathematical equality and Scalars are
hashable.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

import sympy
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.fields import FracField
from sympy.printing.str import StrPrinter

__all__ = [
    "ScalarError",
    "UndeclaredSymbolError",
    "ZeroDenominatorError",
    "NotLaurentError",
    "SymbolTable",
    "Scalar",
    "LaurentView",
    "substitute",
    "laurent_view",
    "laurent_homogeneous_degree",
    "perfect_sqrt",
]


class ScalarError(ValueError):
    """Base class for scalar-arithmetic errors."""


class UndeclaredSymbolError(ScalarError):
    """An expression mentions a symbol the table does not declare."""


class ZeroDenominatorError(ScalarError):
    """A division or substitution produced an identically zero denominator."""


class NotLaurentError(ScalarError):
    """The scalar is not a Laurent polynomial in the requested symbols."""


_PRINTER = StrPrinter({"order": "lex"})

ScalarLike = Union["Scalar", int]


class SymbolTable:
    """An ordered set of parameter symbols fixing the ground field k.

    All Scalars reference exactly one table; mixing tables raises.  With
    ``gaussian=True`` the coefficient domain is Q(i), which is needed for
    automorphism square-root branches on mixed diagonal blocks.
    """

    def __init__(self, symbols: Sequence[str] = (), gaussian: bool = False):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise ScalarError(f"duplicate symbols in {symbols!r}")
        for name in symbols:
            if not name.isidentifier():
                raise ScalarError(f"symbol name {name!r} is not an identifier")
            if name == "I":
                raise ScalarError("'I' is reserved for the imaginary unit")
        self.symbols = symbols
        self.gaussian = bool(gaussian)
        self._domain = QQ_I if gaussian else QQ
        self._field = FracField(symbols, self._domain)
        self._sympy_syms = {name: sympy.Symbol(name) for name in symbols}

    def __repr__(self) -> str:
        dom = "QQ_I" if self.gaussian else "QQ"
        return f"SymbolTable({list(self.symbols)!r}, domain={dom})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolTable)
            and self.symbols == other.symbols
            and self.gaussian == other.gaussian
        )

    def __hash__(self) -> int:
        return hash((self.symbols, self.gaussian))

    # -- constructors ------------------------------------------------------

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self._field.zero)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self._field.one)

    def sym(self, name: str) -> "Scalar":
        if name not in self._sympy_syms:
            raise UndeclaredSymbolError(f"symbol {name!r} not declared in {self!r}")
        return Scalar(self, self._field(self._sympy_syms[name]))

    def syms(self, *names: str) -> tuple:
        return tuple(self.sym(n) for n in names)

    @property
    def i(self) -> "Scalar":
        """The imaginary unit (Gaussian tables only)."""
        if not self.gaussian:
            raise ScalarError("table was not built over the Gaussian rationals")
        return Scalar(self, self._field.ground_new(QQ_I(0, 1)))

    def scalar(self, value: ScalarLike) -> "Scalar":
        """Coerce an int, Fraction-like or Scalar into this table's field."""
        if isinstance(value, Scalar):
            if value.table != self:
                raise ScalarError("scalar belongs to a different symbol table")
            return value
        try:
            return Scalar(self, self._field.ground_new(self._domain.convert(value)))
        except Exception as exc:
            raise ScalarError(f"cannot coerce {value!r} into {self!r}") from exc

    def rational(self, p: int, q: int = 1) -> "Scalar":
        if q == 0:
            raise ZeroDenominatorError("rational with zero denominator")
        return self.scalar(p) / self.scalar(q)

    def parse(self, text: str) -> "Scalar":
        """Parse canonical scalar text (the serialization format) back to a Scalar."""
        local = dict(self._sympy_syms)
        try:
            expr = sympy.parse_expr(text, local_dict=local, evaluate=True)
        except Exception as exc:
            raise ScalarError(f"cannot parse scalar text {text!r}: {exc}") from exc
        return self.from_expr(expr)

    def from_expr(self, expr: sympy.Expr) -> "Scalar":
        """Convert a sympy expression built from +,-,*,/,** over ints and symbols."""
        free = expr.free_symbols - set(self._sympy_syms.values()) - {sympy.I}
        if free:
            raise UndeclaredSymbolError(
                f"undeclared symbols {sorted(map(str, free))} in expression {expr}"
            )
        if expr.has(sympy.I) and not self.gaussian:
            raise ScalarError("imaginary unit requires a Gaussian symbol table")
        try:
            elem = self._field.from_expr(expr)
        except ZeroDivisionError:
            raise ZeroDenominatorError(f"division by zero in {expr}") from None
        except Exception as exc:
            raise ScalarError(f"expression {expr} is not a rational function: {exc}") from exc
        return Scalar(self, elem)


def make_scalar(table: SymbolTable, expr) -> "Scalar":
    """Build a canonical Scalar from an expression tree.

    Accepts Scalars (identity), ints, strings in the serialization grammar,
    and sympy expressions over declared symbols.
    """
    if isinstance(expr, Scalar):
        return table.scalar(expr)
    if isinstance(expr, int):
        return table.scalar(expr)
    if isinstance(expr, str):
        return table.parse(expr)
    if isinstance(expr, sympy.Expr):
        return table.from_expr(expr)
    raise ScalarError(f"cannot build a scalar from {expr!r}")


@dataclass(frozen=True)
class Scalar:
    """An exact rational function; immutable, canonical, hashable."""

    table: SymbolTable
    elem: object  # sympy FracElement

    # -- basic protocol ----------------------------------------------------

    def __post_init__(self):
        if self.elem.field is not self.table._field:
            raise ScalarError("element does not belong to the table's field")
        # sympy reduces the fraction but (over the Gaussian rationals) does
        # not fix the denominator's unit; canonical form here is a monic
        # denominator
        den = self.elem.denom
        lc = den.LC
        if lc != self.table._domain.one:
            field = self.table._field
            num = self.elem.numer.quo_ground(lc)
            object.__setattr__(self, "elem", field.raw_new(num, den.quo_ground(lc)))

    def _coerce(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            if other.table != self.table:
                raise ScalarError("scalars from different symbol tables")
            return other
        return self.table.scalar(other)

    def __add__(self, other: ScalarLike) -> "Scalar":
        return Scalar(self.table, self.elem + self._coerce(other).elem)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return Scalar(self.table, self.elem - self._coerce(other).elem)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar(self.table, self._coerce(other).elem - self.elem)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        return Scalar(self.table, self.elem * self._coerce(other).elem)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if not other.elem:
            raise ZeroDenominatorError("division by the zero scalar")
        return Scalar(self.table, self.elem / other.elem)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            raise ScalarError("only integer powers are supported")
        if exponent < 0 and not self.elem:
            raise ZeroDenominatorError("negative power of the zero scalar")
        return Scalar(self.table, self.elem ** exponent)

    def __neg__(self) -> "Scalar":
        return Scalar(self.table, -self.elem)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.table.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.table == other.table and self.elem == other.elem

    def __hash__(self) -> int:
        return hash(self.elem)

    def __bool__(self) -> bool:
        return bool(self.elem)

    def __repr__(self) -> str:
        return f"Scalar({self.text()})"

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.elem

    @property
    def is_one(self) -> bool:
        return self.elem == self.table._field.one

    def inv(self) -> "Scalar":
        if not self.elem:
            raise ZeroDenominatorError("inverse of the zero scalar")
        return Scalar(self.table, self.elem ** -1)

    def as_expr(self) -> sympy.Expr:
        return self.elem.as_expr()

    def text(self) -> str:
        """Canonical `num / den` text with a fixed (lex) monomial order."""
        return _PRINTER.doprint(self.elem.as_expr())

    def as_rational(self):
        """The value as a sympy Rational, if the scalar is constant (else None)."""
        num, den = self.elem.numer, self.elem.denom
        if num.is_ground and den.is_ground:
            nc = num.coeff(1)
            dc = den.coeff(1)
            if self.table.gaussian:
                if getattr(nc, "y", 0) != 0 or getattr(dc, "y", 0) != 0:
                    return None
                return sympy.Rational(nc.x) / sympy.Rational(dc.x)
            return sympy.Rational(nc) / sympy.Rational(dc)
        return None


# -- substitution ----------------------------------------------------------


def _eval_poly(table: SymbolTable, poly, values: Sequence[Scalar]) -> Scalar:
    """Evaluate a PolyElement at Scalar values for every generator."""
    total = table.zero
    for monom, coeff in poly.terms():
        term = Scalar(table, table._field.ground_new(coeff))
        for v, e in zip(values, monom):
            if e:
                term = term * v**e
        total = total + term
    return total


def substitute(s: Scalar, bindings: Mapping[str, ScalarLike]) -> Scalar:
    """Replace symbols by Scalars and re-canonicalize.

    Bindings may be partial; unbound symbols stay symbolic.  Raises
    ZeroDenominatorError when the substitution kills the denominator.
    """
    table = s.table
    for name in bindings:
        if name not in table._sympy_syms:
            raise UndeclaredSymbolError(f"binding for undeclared symbol {name!r}")
    values = []
    for name in table.symbols:
        if name in bindings:
            values.append(table.scalar(bindings[name]))
        else:
            values.append(table.sym(name))
    num = _eval_poly(table, s.elem.numer, values)
    den = _eval_poly(table, s.elem.denom, values)
    if den.is_zero:
        raise ZeroDenominatorError(
            f"substitution {dict(bindings)!r} makes the denominator of {s.text()} vanish"
        )
    return num / den


# -- Laurent structure -----------------------------------------------------


@dataclass(frozen=True)
class LaurentView:
    """A scalar written as a finite Laurent sum over a subset of symbols.

    ``terms`` maps exponent vectors (over `symbols`, entries possibly
    negative) to nonzero Scalar coefficients free of those symbols.
    """

    symbols: tuple
    terms: Mapping[tuple, Scalar]

    def total_degrees(self) -> set:
        return {sum(e) for e in self.terms}


def _split_monomial(monom: tuple, idx: Sequence[int]) -> tuple:
    return tuple(monom[k] for k in idx)


def laurent_view(s: Scalar, symbols: Optional[Iterable[str]] = None) -> LaurentView:
    """View ``s`` as a Laurent polynomial in ``symbols`` (default: all).

    Requires the denominator to be a monomial in the chosen symbols (times a
    factor free of them); otherwise raises NotLaurentError.
    """
    table = s.table
    names = tuple(symbols) if symbols is not None else table.symbols
    for name in names:
        if name not in table._sympy_syms:
            raise UndeclaredSymbolError(f"unknown symbol {name!r}")
    idx = [table.symbols.index(name) for name in names]
    others = [k for k in range(len(table.symbols)) if k not in idx]

    den = s.elem.denom
    den_exps = {_split_monomial(m, idx) for m in den.monoms()}
    if len(den_exps) > 1:
        raise NotLaurentError(
            f"{s.text()} is not Laurent in {names}: denominator mixes their exponents"
        )
    den_exp = den_exps.pop() if den_exps else tuple(0 for _ in idx)

    field = table._field
    ring = s.elem.numer.ring
    groups: dict = {}
    for monom, coeff in s.elem.numer.terms():
        key = tuple(a - b for a, b in zip(_split_monomial(monom, idx), den_exp))
        rest = [0] * len(table.symbols)
        for k in others:
            rest[k] = monom[k]
        part = field(ring.from_dict({tuple(rest): coeff}))
        groups[key] = groups.get(key, field.zero) + part

    den_rest = {
        tuple(0 if k in idx else m[k] for k in range(len(table.symbols))): c
        for m, c in den.terms()
    }
    den_other = field(ring.from_dict(den_rest))

    terms = {}
    for key, num_part in groups.items():
        coeff = Scalar(table, num_part / den_other)
        if not coeff.is_zero:
            terms[key] = coeff
    return LaurentView(names, terms)


def laurent_homogeneous_degree(
    s: Scalar, symbols: Optional[Iterable[str]] = None
) -> Optional[int]:
    """Common total degree of all Laurent terms in ``symbols``, or None if mixed.

    Raises NotLaurentError when ``s`` is not Laurent in the symbols.  The zero
    scalar has no distinguished degree and returns None.
    """
    view = laurent_view(s, symbols)
    degrees = view.total_degrees()
    if len(degrees) == 1:
        return degrees.pop()
    return None


# -- exact square roots ----------------------------------------------------


def perfect_sqrt(s: Scalar) -> Optional[Scalar]:
    """An exact square root of ``s`` inside the scalar field, or None.

    Used by the matrix-algebra builders, whose automorphism entries are square
    roots of ratios of the stored squared parameters.
    """
    if s.is_zero:
        return s

    def half(expr: sympy.Expr) -> Optional[sympy.Expr]:
        const, factors = sympy.factor_list(expr)
        pieces = [sympy.sqrt(const)]
        for f, e in factors:
            if e % 2:
                return None
            pieces.append(f ** (e // 2))
        return sympy.Mul(*pieces)

    num_root = half(sympy.together(s.as_expr()).as_numer_denom()[0])
    den_root = half(sympy.together(s.as_expr()).as_numer_denom()[1])
    if num_root is None or den_root is None:
        return None
    try:
        root = s.table.from_expr(num_root / den_root)
    except ScalarError:
        return None
    if root * root == s:
        return root
    return None
