"""Independent skein-recursion polynomials and the trace-formula bridge.

This module computes the two-variable regular-isotopy polynomial H_L(alpha, z)
(skein H(L+) - H(L-) = z H(L0), positive/negative kinks scale by alpha^{+-1},
unknot value 1, distant unions scale by (alpha - alpha^-1)/z) and the
one-variable Alexander polynomial nabla_L(z) (same skein, unknot 1, split
links 0) directly on Morse diagrams, by switching crossings toward descending
diagrams.  Nothing here touches the state-sum evaluator, so the two provide
independent routes to the same invariants.

For a single-block diagonal structure on M_n with parameters a (= rho_1111)
and bc = sbc^2, writing q = a/sbc and r = q^2, the closed-link trace formula
F = prod_c tr(G^{d_c} w(L_c)) is identified with these polynomials:

  * generic branch (Tr G != 0):
      F(L) = a^writhe * kappa * q^-writhe * rho_norm^-Wd
             * H_L(q^e, q - q^-1),
    where e counts indices with a_i = a minus the rest, rho_norm = q^{1-e},
    kappa = rho_norm Tr(G) = rho_norm^-1 Tr(G^-1), Wd = total Whitney degree;
  * degenerate branch (Tr G = 0):
      the classical identification F(L) = a^writhe q^-writhe
      nabla_L(q - q^-1) is checked literally.  (The trace formula itself
      collapses on this branch; see identify_F's report.)

The positive Morse crossing is calibrated as the skein-positive crossing L+;
``CROSS_POS_IS_SKEIN_POSITIVE`` freezes that convention and the triple check
certifies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .diagram import (
    DiagramError,
    MorseDiagram,
    Slice,
    SliceKind,
    stats,
    traverse,
)
from .invariant import evaluate_link
from .scalar import Scalar, SymbolTable
from .structures import (
    MnStructureParams,
    OrientedQuantumAlgebraStructure,
    StructureError,
    build_thm5,
    classify_thm5,
)

__all__ = [
    "SkeinPolynomial",
    "homfly",
    "conway",
    "SectionSixContext",
    "section6_context",
    "curl_family_values",
    "IdentifyReport",
    "identify_F",
    "skein_triple_check",
    "CROSS_POS_IS_SKEIN_POSITIVE",
]

# the xp slice plays L+ in every skein relation of this package; certified by
# the skein_triple_check tests
CROSS_POS_IS_SKEIN_POSITIVE = True


@dataclass(frozen=True)
class SkeinPolynomial:
    """Laurent polynomial in (alpha, z) with integer coefficients."""

    terms: Mapping[Tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {k: c for k, c in self.terms.items() if c}
        )

    @staticmethod
    def zero() -> "SkeinPolynomial":
        return SkeinPolynomial({})

    @staticmethod
    def one() -> "SkeinPolynomial":
        return SkeinPolynomial({(0, 0): 1})

    @staticmethod
    def monomial(ea: int, ez: int, c: int = 1) -> "SkeinPolynomial":
        return SkeinPolynomial({(ea, ez): c})

    def __add__(self, other: "SkeinPolynomial") -> "SkeinPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SkeinPolynomial(out)

    def __sub__(self, other: "SkeinPolynomial") -> "SkeinPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return SkeinPolynomial(out)

    def __mul__(self, other: "SkeinPolynomial") -> "SkeinPolynomial":
        out: Dict[Tuple[int, int], int] = {}
        for (a1, z1), c1 in self.terms.items():
            for (a2, z2), c2 in other.terms.items():
                k = (a1 + a2, z1 + z2)
                out[k] = out.get(k, 0) + c1 * c2
        return SkeinPolynomial(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeinPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def alpha_free(self) -> bool:
        return all(ea == 0 for ea, _ in self.terms)

    def text(self) -> str:
        """Canonical text, e.g. ``z^2 + 1`` or ``a^2 - a*z^-1``."""
        if not self.terms:
            return "0"

        def mono(ea: int, ez: int) -> str:
            parts = []
            if ea:
                parts.append("a" if ea == 1 else f"a^{ea}")
            if ez:
                parts.append("z" if ez == 1 else f"z^{ez}")
            return "*".join(parts)

        pieces = []
        for (ea, ez) in sorted(self.terms, reverse=True):
            c = self.terms[(ea, ez)]
            m = mono(ea, ez)
            body = f"{abs(c)}" if not m else (m if abs(c) == 1 else f"{abs(c)}*{m}")
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def eval_at(self, table: SymbolTable, alpha: Scalar, z: Scalar) -> Scalar:
        total = table.zero
        for (ea, ez), c in self.terms.items():
            total = total + table.scalar(c) * alpha**ea * z**ez
        return total


_DELTA = SkeinPolynomial({(1, -1): 1, (-1, -1): -1})  # (alpha - alpha^-1)/z


def _first_bad_crossing(d: MorseDiagram) -> Optional[int]:
    """First crossing met on its under line, scanning components in order.

    The first tensor factor rides the over strand, so a line label with
    tensorand 1 is an under-line encounter.  Which line is met first depends
    only on connectivity, never on crossing signs.
    """
    seen: set = set()
    for comp in traverse(d).components:
        for label in comp.labels:
            if label.crossing in seen:
                continue
            seen.add(label.crossing)
            if label.tensorand == 1:
                return label.crossing
    return None


def _descending_value(d: MorseDiagram, conway_mode: bool) -> SkeinPolynomial:
    """Value of a descending diagram: layered curled unlinks."""
    record = traverse(d)
    r = len(record.components)
    if r == 0:
        return SkeinPolynomial.one()
    if conway_mode:
        return SkeinPolynomial.one() if r == 1 else SkeinPolynomial.zero()
    # self-writhe per component; inter-component crossings pull apart
    self_writhe = 0
    for comp in record.components:
        counts: Dict[int, int] = {}
        for label in comp.labels:
            counts[label.crossing] = counts.get(label.crossing, 0) + 1
        for crossing, k in counts.items():
            if k == 2:
                sign = 1 if d.slices[crossing].kind is SliceKind.X_POS else -1
                self_writhe += sign
    value = SkeinPolynomial.monomial(self_writhe, 0)
    for _ in range(r - 1):
        value = value * _DELTA
    return value


def _skein(d: MorseDiagram, conway_mode: bool, memo: Dict) -> SkeinPolynomial:
    key = d.key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    bad = _first_bad_crossing(d)
    if bad is None:
        value = _descending_value(d, conway_mode)
    else:
        s = d.slices[bad]
        flipped = (
            SliceKind.X_NEG if s.kind is SliceKind.X_POS else SliceKind.X_POS
        )
        switched = d.with_slices(
            d.slices[:bad] + (Slice(flipped, s.pos),) + d.slices[bad + 1 :]
        )
        smoothed = d.with_slices(d.slices[:bad] + d.slices[bad + 1 :])
        z = SkeinPolynomial.monomial(0, 1)
        if s.kind is SliceKind.X_POS:
            # this diagram is L+: H(L+) = H(L-) + z H(L0)
            value = _skein(switched, conway_mode, memo) + z * _skein(
                smoothed, conway_mode, memo
            )
        else:
            value = _skein(switched, conway_mode, memo) - z * _skein(
                smoothed, conway_mode, memo
            )
    memo[key] = value
    return value


def homfly(d: MorseDiagram) -> SkeinPolynomial:
    """Regular-isotopy two-variable polynomial of a closed diagram."""
    if d.boundary != "closed":
        raise DiagramError("homfly needs a closed diagram")
    return _skein(d, conway_mode=False, memo={})


def conway(d: MorseDiagram) -> SkeinPolynomial:
    """Alexander polynomial in z of a closed diagram (unknot 1, splits 0)."""
    if d.boundary != "closed":
        raise DiagramError("conway needs a closed diagram")
    value = _skein(d, conway_mode=True, memo={})
    assert value.alpha_free()
    return value


# -- the single-block context -------------------------------------------------


@dataclass(frozen=True)
class SectionSixContext:
    """Closed-form data of a single-block structure, normalized to omega_1^2 = 1.

    ``e`` is eta_plus(0:n) - eta_minus(0:n); the generic-branch constants
    rho_norm = q^(1-e) and kappa exist only when Tr G != 0.
    """

    table: SymbolTable
    n: int
    a: Scalar
    sbc: Scalar
    a_values: Tuple[Scalar, ...]
    q: Scalar
    r: Scalar
    e: int
    trace_g: Scalar
    trace_g_inv: Scalar
    hbar: Scalar
    structure: OrientedQuantumAlgebraStructure
    rho_norm: Optional[Scalar]
    kappa: Optional[Scalar]

    def eta_plus(self, lo: int, hi: int) -> int:
        return sum(1 for i in range(lo + 1, hi + 1) if self.a_values[i - 1] == self.a)

    def eta_minus(self, lo: int, hi: int) -> int:
        return (hi - lo) - self.eta_plus(lo, hi)

    def omega_sq_family(self, x: Scalar) -> List[Scalar]:
        """omega_i(x)^2 = -(-x)^(-[a_i = a]) x^(eta+(0:i) - eta-(0:i))."""
        out = []
        for i in range(1, self.n + 1):
            delta = 1 if self.a_values[i - 1] == self.a else 0
            val = -((-x) ** (-delta)) * x ** (self.eta_plus(0, i) - self.eta_minus(0, i))
            out.append(val)
        return out


def section6_context(params: MnStructureParams) -> SectionSixContext:
    """Closed forms for a one-block structure with a_i in {a, -bc/a}.

    Asserts the coherence identities tying the omega squares, Tr G and hbar
    together; raises StructureError when the parameter shape does not fit.
    """
    if len(params.blocks) != 1:
        raise StructureError("the closed forms need a single block")
    report = classify_thm5(params)
    if not report.ok:
        raise StructureError(f"parameters fail clauses {report.failing()}")
    table = params.table
    n = params.n
    block = params.blocks[0]
    a = table.scalar(params.diag[block[0]])
    bc = table.scalar(params.bc[0])
    sbc = _require_sqrt(table, bc)
    a_values = tuple(table.scalar(params.diag[i]) for i in block)
    for i, ai in enumerate(a_values, start=1):
        if not (ai == a or ai == -bc / a):
            raise StructureError(f"a_{i} must be a or -bc/a")
    if table.scalar(params.omega_sq[block[0]]) != table.one:
        raise StructureError("the closed forms assume omega_1^2 = 1")

    q = a / sbc
    r = q * q
    structure = build_thm5(params, name=f"single_block(n={n})")

    eta_plus = [0]
    for i in range(1, n + 1):
        eta_plus.append(eta_plus[-1] + (1 if a_values[i - 1] == a else 0))
    e = eta_plus[n] - (n - eta_plus[n])

    trace_g = structure.twist.g.pairing(structure.trace)
    trace_g_inv = structure.twist.g_inv.pairing(structure.trace)
    hbar = r ** (e - 1)

    ctx_rho = kappa = None
    if not trace_g.is_zero:
        ctx_rho = q ** (1 - e)
        kappa = ctx_rho * trace_g
        if kappa != ctx_rho.inv() * trace_g_inv:
            raise StructureError("kappa's two expressions disagree")
        if trace_g / trace_g_inv != hbar:
            raise StructureError("Tr(G)/Tr(G^-1) != hbar")

    ctx = SectionSixContext(
        table, n, a, sbc, a_values, q, r, e,
        trace_g, trace_g_inv, hbar, structure, ctx_rho, kappa,
    )

    # coherence of the stored squares with the closed-form family
    family = ctx.omega_sq_family(r)
    for i in range(1, n + 1):
        if table.scalar(params.omega_sq[block[i - 1]]) != family[i - 1]:
            raise StructureError(f"omega_{i}^2 differs from the closed form")
    # geometric-sum identity (1 - r^e) = Tr(G)(1 - r)
    if trace_g * (table.one - r) != table.one - r**e:
        raise StructureError("Tr(G) geometric-sum identity fails")
    return ctx


def _require_sqrt(table: SymbolTable, bc: Scalar) -> Scalar:
    from .scalar import perfect_sqrt

    root = perfect_sqrt(bc)
    if root is None:
        raise StructureError(
            "bc needs a square root in the scalar field (declare sbc, set bc = sbc^2)"
        )
    return root


_CURL_FORMS = {"r+", "l-", "l+", "r-"}


def curl_family_values(ctx: SectionSixContext, family: str, m: int) -> Scalar:
    """Closed-form invariant of the m-fold kink closures.

    r+ : (a hbar)^m Tr(G^-1)     l- : (a hbar)^-m Tr(G)
    l+ : a^m Tr(G)               r- : a^-m Tr(G^-1)
    """
    if family not in _CURL_FORMS:
        raise DiagramError(f"unknown curl family {family!r}; use one of {_CURL_FORMS}")
    if m < 0:
        raise DiagramError("kink count must be >= 0")
    a, hbar = ctx.a, ctx.hbar
    if family == "r+":
        return (a * hbar) ** m * ctx.trace_g_inv
    if family == "l-":
        return (a * hbar) ** (-m) * ctx.trace_g
    if family == "l+":
        return a**m * ctx.trace_g
    return a ** (-m) * ctx.trace_g_inv


@dataclass(frozen=True)
class IdentifyReport:
    passed: bool
    branch: str  # "homfly" | "alexander"
    lhs: Scalar
    rhs: Scalar
    writhe: int
    total_whitney: int
    polynomial: SkeinPolynomial

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "branch": self.branch,
            "lhs": self.lhs.text(),
            "rhs": self.rhs.text(),
            "writhe": self.writhe,
            "total_whitney": self.total_whitney,
            "polynomial": self.polynomial.text(),
        }


def identify_F(
    ctx: SectionSixContext,
    d: MorseDiagram,
    F_value: Optional[Scalar] = None,
) -> IdentifyReport:
    """Check the trace formula against the skein polynomial of ``d``.

    Generic branch:  F = a^w kappa q^-w rho_norm^-Wd H_L(q^e, q - q^-1).
    Tr G = 0 branch: F = a^w q^-w nabla_L(q - q^-1), checked as stated.
    """
    if F_value is None:
        F_value = evaluate_link(ctx.structure, d)
    st = stats(d)
    w = st.writhe
    wd = st.total_whitney
    table = ctx.table
    z0 = ctx.q - ctx.q.inv()
    if ctx.trace_g.is_zero:
        poly = conway(d)
        rhs = ctx.a**w * ctx.q ** (-w) * poly.eval_at(table, table.one, z0)
        branch = "alexander"
    else:
        poly = homfly(d)
        rhs = (
            ctx.a**w
            * ctx.kappa
            * ctx.q ** (-w)
            * ctx.rho_norm ** (-wd)
            * poly.eval_at(table, ctx.q**ctx.e, z0)
        )
        branch = "homfly"
    return IdentifyReport(F_value == rhs, branch, F_value, rhs, w, wd, poly)


def skein_triple_check(
    ctx: SectionSixContext,
    l_plus: MorseDiagram,
    l_minus: MorseDiagram,
    l_zero: MorseDiagram,
) -> bool:
    """G(L+) - G(L-) = (q - q^-1) G(L0) with G(L) = sbc^-writhe F(L).

    The three diagrams must agree except at one site: xp versus xn versus the
    crossing removed.
    """
    if len(l_plus.slices) != len(l_minus.slices):
        raise DiagramError("L+ and L- differ in length")
    diff = [
        k
        for k, (sp, sm) in enumerate(zip(l_plus.slices, l_minus.slices))
        if sp != sm
    ]
    if len(diff) != 1:
        raise DiagramError("L+ and L- must differ at exactly one slice")
    k = diff[0]
    sp, sm = l_plus.slices[k], l_minus.slices[k]
    if not (
        sp.kind is SliceKind.X_POS
        and sm.kind is SliceKind.X_NEG
        and sp.pos == sm.pos
    ):
        raise DiagramError("the differing slice must be xp in L+ and xn in L-")
    if l_zero.slices != l_plus.slices[:k] + l_plus.slices[k + 1 :]:
        raise DiagramError("L0 must be L+ with the crossing slice removed")

    def g_of(diag: MorseDiagram) -> Scalar:
        f = evaluate_link(ctx.structure, diag)
        return ctx.sbc ** (-stats(diag).writhe) * f

    lhs = g_of(l_plus) - g_of(l_minus)
    rhs = (ctx.q - ctx.q.inv()) * g_of(l_zero)
    return lhs == rhs
