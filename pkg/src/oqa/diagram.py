"""Oriented tangle, knot and link diagrams as validated Morse words.

A diagram is a bottom-to-top sequence of elementary slices acting on a row of
strands:

  cup_ccw p   create strands (down, up) at positions p, p+1   (type u+)
  cup_cw  p   create strands (up, down)                       (type d-)
  cap_ccw p   consume strands (down, up)                      (type d+)
  cap_cw  p   consume strands (up, down)                      (type u-)
  xp      p   positive crossing of two upward strands
  xn      p   negative crossing of two upward strands

Only upward-pointing crossings are representable; every other crossing
orientation is reachable by composing with cups and caps (the twist
equivalences), which pushes all automorphism bookkeeping into the extremum
counters u_d / u_u.  Clockwise extrema are cap_cw and cup_cw; the Whitney
degree of a closed component is (clockwise - counterclockwise) / 2.

For a positive crossing the strand entering on the left passes over; for a
negative crossing the strand entering on the right passes over.  Decoration
sides (which tensor factor of the crossing's tensor-square element rides
which line) follow the same rule: the first factor rides the over strand.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "DiagramError",
    "DiagramSyntaxError",
    "DiagramValidationError",
    "MoveError",
    "SliceKind",
    "Slice",
    "MorseDiagram",
    "parse_diagram",
    "validate",
    "serialize",
    "traverse",
    "TraversalRecord",
    "ComponentRecord",
    "LineLabel",
    "stats",
    "DiagramStats",
    "compose_tangles",
    "orientation_reverse",
    "mirror",
    "builtin",
    "builtin_names",
    "MOVES",
    "apply_move",
    "move_sites",
    "insertion_sites",
]


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    pass


class DiagramValidationError(DiagramError):
    pass


class MoveError(DiagramError):
    pass


class SliceKind(enum.Enum):
    CUP_CCW = "cup_ccw"
    CUP_CW = "cup_cw"
    CAP_CCW = "cap_ccw"
    CAP_CW = "cap_cw"
    X_POS = "xp"
    X_NEG = "xn"

    @property
    def is_cup(self) -> bool:
        return self in (SliceKind.CUP_CCW, SliceKind.CUP_CW)

    @property
    def is_cap(self) -> bool:
        return self in (SliceKind.CAP_CCW, SliceKind.CAP_CW)

    @property
    def is_crossing(self) -> bool:
        return self in (SliceKind.X_POS, SliceKind.X_NEG)


# extremum types keyed by slice kind: u+/u- twist t_u, d+/d- twist t_d;
# cw extrema are {u-, d-}
EXTREMUM_TYPE = {
    SliceKind.CUP_CCW: "u+",
    SliceKind.CUP_CW: "d-",
    SliceKind.CAP_CCW: "d+",
    SliceKind.CAP_CW: "u-",
}

_CLOCKWISE = {"u-", "d-"}

# directions created by cups / required by caps, as (left, right)
_CUP_DIRS = {SliceKind.CUP_CCW: ("d", "u"), SliceKind.CUP_CW: ("u", "d")}
_CAP_DIRS = {SliceKind.CAP_CCW: ("d", "u"), SliceKind.CAP_CW: ("u", "d")}


@dataclass(frozen=True)
class Slice:
    kind: SliceKind
    pos: int

    def __repr__(self) -> str:
        return f"{self.kind.value} {self.pos}"


@dataclass(frozen=True)
class MorseDiagram:
    slices: Tuple[Slice, ...]
    boundary: str = "closed"  # "closed" | "open"

    def __post_init__(self):
        if self.boundary not in ("closed", "open"):
            raise DiagramError(f"unknown boundary {self.boundary!r}")
        object.__setattr__(self, "slices", tuple(self.slices))

    def __repr__(self) -> str:
        return f"MorseDiagram({serialize(self, sep=' / ')})"

    @property
    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if s.kind.is_crossing)

    def with_slices(self, slices: Iterable[Slice]) -> "MorseDiagram":
        return MorseDiagram(tuple(slices), self.boundary)

    def key(self) -> Tuple:
        return (self.boundary, self.slices)


def word(*tokens: Tuple[str, int] | Slice, boundary: str = "closed") -> MorseDiagram:
    slices = [
        t if isinstance(t, Slice) else Slice(SliceKind(t[0]), t[1]) for t in tokens
    ]
    return MorseDiagram(tuple(slices), boundary)


# -- parsing / serialization --------------------------------------------------


def parse_diagram(text: str, boundary: Optional[str] = None) -> MorseDiagram:
    """Parse the slice-token grammar; `/` and newlines both separate slices.

    An optional header line ``boundary: closed|open`` overrides the argument;
    the default is closed.  The result is validated.
    """
    tokens: List[Slice] = []
    declared = None
    for lineno, raw_line in enumerate(text.splitlines() or [""], start=1):
        for chunk in raw_line.split("/"):
            chunk = chunk.strip()
            if not chunk or chunk.startswith("#"):
                continue
            if chunk.startswith("boundary:"):
                declared = chunk.split(":", 1)[1].strip()
                continue
            parts = chunk.split()
            if len(parts) != 2:
                raise DiagramSyntaxError(
                    f"line {lineno}: expected '<kind> <position>', got {chunk!r}"
                )
            kind_token, pos_token = parts
            try:
                kind = SliceKind(kind_token)
            except ValueError:
                raise DiagramSyntaxError(
                    f"line {lineno}: unknown slice kind {kind_token!r}"
                ) from None
            try:
                pos = int(pos_token)
            except ValueError:
                raise DiagramSyntaxError(
                    f"line {lineno}: bad position {pos_token!r}"
                ) from None
            if pos < 0:
                raise DiagramSyntaxError(f"line {lineno}: negative position {pos}")
            tokens.append(Slice(kind, pos))
    d = MorseDiagram(tuple(tokens), declared or boundary or "closed")
    validate(d)
    return d


def serialize(d: MorseDiagram, sep: str = "\n", header: bool = True) -> str:
    body = sep.join(f"{s.kind.value} {s.pos}" for s in d.slices)
    if not header:
        return body
    head = f"boundary: {d.boundary}"
    return head + (sep + body if body else "")


# -- validation ---------------------------------------------------------------


def _initial_dirs(d: MorseDiagram) -> List[str]:
    return ["u"] if d.boundary == "open" else []


def strand_dirs(d: MorseDiagram) -> List[List[str]]:
    """Strand directions at every gap 0..len(slices); raises on inconsistency."""
    dirs = _initial_dirs(d)
    out = [list(dirs)]
    for idx, s in enumerate(d.slices):
        p = s.pos
        if s.kind.is_cup:
            if p > len(dirs):
                raise DiagramValidationError(
                    f"slice {idx} ({s}): position beyond {len(dirs)} strands"
                )
            dirs[p:p] = list(_CUP_DIRS[s.kind])
        elif s.kind.is_cap:
            if p + 1 > len(dirs) - 1:
                raise DiagramValidationError(
                    f"slice {idx} ({s}): needs strands {p},{p + 1}, have {len(dirs)}"
                )
            want = _CAP_DIRS[s.kind]
            got = tuple(dirs[p : p + 2])
            if got != want:
                raise DiagramValidationError(
                    f"slice {idx} ({s}): needs directions {want}, found {got}"
                )
            del dirs[p : p + 2]
        else:
            if p + 1 > len(dirs) - 1:
                raise DiagramValidationError(
                    f"slice {idx} ({s}): needs strands {p},{p + 1}, have {len(dirs)}"
                )
            if dirs[p] != "u" or dirs[p + 1] != "u":
                raise DiagramValidationError(
                    f"slice {idx} ({s}): crossings need two upward strands, "
                    f"found {(dirs[p], dirs[p + 1])}"
                )
        out.append(list(dirs))
    final = ["u"] if d.boundary == "open" else []
    if dirs != final:
        raise DiagramValidationError(
            f"diagram ends with strands {dirs}, boundary {d.boundary} needs {final}"
        )
    return out


def validate(d: MorseDiagram) -> None:
    """Raise DiagramValidationError unless direction bookkeeping is consistent."""
    strand_dirs(d)


# -- traversal ----------------------------------------------------------------


@dataclass(frozen=True)
class LineLabel:
    """One crossing line met during traversal.

    ``crossing`` is the slice index of the crossing, ``tensorand`` 0 or 1 (the
    factor of the crossing's tensor-square element riding this line), and
    u_d / u_u the extremum counters from this line to the end of the
    traversal (back to the basepoint for closed components).
    """

    crossing: int
    tensorand: int
    u_d: int
    u_u: int


@dataclass(frozen=True)
class ComponentRecord:
    is_open: bool
    start: Tuple[int, int]
    labels: Tuple[LineLabel, ...]
    extrema: Tuple[str, ...]
    whitney: int
    events: Tuple[Tuple, ...] = ()


@dataclass(frozen=True)
class TraversalRecord:
    components: Tuple[ComponentRecord, ...]

    @property
    def whitney_degrees(self) -> Tuple[int, ...]:
        return tuple(c.whitney for c in self.components)


def _step_up(d: MorseDiagram, g: int, p: int):
    """Advance an upward walker across slice g.  Returns (event, g, p, dir)."""
    s = d.slices[g]
    q = s.pos
    if s.kind.is_cup:
        return None, g + 1, p + 2 if p >= q else p, "u"
    if s.kind.is_cap:
        if p == q:
            return ("ext", EXTREMUM_TYPE[s.kind]), g, q + 1, "d"
        if p == q + 1:
            return ("ext", EXTREMUM_TYPE[s.kind]), g, q, "d"
        return None, g + 1, p - 2 if p > q + 1 else p, "u"
    if p == q:
        return ("line", g, "L"), g + 1, q + 1, "u"
    if p == q + 1:
        return ("line", g, "R"), g + 1, q, "u"
    return None, g + 1, p, "u"


def _step_down(d: MorseDiagram, g: int, p: int):
    """Advance a downward walker across slice g-1."""
    s = d.slices[g - 1]
    q = s.pos
    if s.kind.is_cup:
        if p == q:
            return ("ext", EXTREMUM_TYPE[s.kind]), g, q + 1, "u"
        if p == q + 1:
            return ("ext", EXTREMUM_TYPE[s.kind]), g, q, "u"
        return None, g - 1, p - 2 if p > q + 1 else p, "d"
    if s.kind.is_cap:
        return None, g - 1, p + 2 if p >= q else p, "d"
    if p in (q, q + 1):
        raise DiagramValidationError(
            f"slice {g - 1}: downward strand inside a crossing"
        )
    return None, g - 1, p, "d"


def _tensorand(kind: SliceKind, side: str) -> int:
    if kind is SliceKind.X_POS:
        return 0 if side == "L" else 1
    return 1 if side == "L" else 0


def traverse(
    d: MorseDiagram, preferred_starts: Sequence[Tuple[int, int]] = ()
) -> TraversalRecord:
    """Walk every component, labelling crossing lines and counting extrema.

    Components are discovered at their first upward point in scan order
    (gaps bottom-to-top, positions left-to-right); ``preferred_starts`` seeds
    the scan with explicit upward points (basepoint overrides).  For the open
    strand of a tangle the walk runs bottom boundary to top boundary; closed
    components cycle back to their basepoint.
    """
    all_dirs = strand_dirs(d)
    ngaps = len(d.slices) + 1
    visited = [[False] * len(all_dirs[g]) for g in range(ngaps)]

    def walk(g0: int, p0: int, is_open: bool):
        events: List[Tuple] = []
        g, p, direction = g0, p0, "u"
        while True:
            visited[g][p] = True
            if direction == "u":
                if g == len(d.slices):
                    if not is_open:
                        raise DiagramValidationError("closed strand reached the top")
                    break
                event, g, p, direction = _step_up(d, g, p)
            else:
                if g == 0:
                    raise DiagramValidationError("downward strand reached the bottom")
                event, g, p, direction = _step_down(d, g, p)
            if event is not None:
                events.append(event)
            if not is_open and (g, p, direction) == (g0, p0, "u"):
                break
        return events

    def component_from(events: List[Tuple], is_open: bool, start) -> ComponentRecord:
        extrema = tuple(e[1] for e in events if e[0] == "ext")
        cw = sum(1 for e in extrema if e in _CLOCKWISE)
        whitney2 = cw - (len(extrema) - cw)
        if whitney2 % 2:
            raise DiagramValidationError("odd extremum imbalance on a component")
        labels = []
        for k, ev in enumerate(events):
            if ev[0] != "line":
                continue
            _, crossing, side = ev
            ud = uu = 0
            for later in events[k + 1 :]:
                if later[0] == "ext":
                    t = later[1]
                    if t == "d+":
                        ud += 1
                    elif t == "d-":
                        ud -= 1
                    elif t == "u+":
                        uu += 1
                    else:
                        uu -= 1
            labels.append(
                LineLabel(crossing, _tensorand(d.slices[crossing].kind, side), ud, uu)
            )
        return ComponentRecord(
            is_open, start, tuple(labels), extrema, whitney2 // 2, tuple(events)
        )

    components: List[ComponentRecord] = []

    def start_component(g: int, p: int) -> None:
        is_open = d.boundary == "open" and (g, p) == (0, 0) and all_dirs[0]
        events = walk(g, p, bool(is_open))
        components.append(component_from(events, bool(is_open), (g, p)))

    if d.boundary == "open":
        start_component(0, 0)
    for g, p in preferred_starts:
        if not (0 <= g < ngaps and 0 <= p < len(all_dirs[g])):
            raise DiagramError(f"basepoint {(g, p)} outside the diagram")
        if all_dirs[g][p] != "u":
            raise DiagramError(f"basepoint {(g, p)} is not on an upward strand")
        if not visited[g][p]:
            start_component(g, p)
    for g in range(ngaps):
        for p in range(len(all_dirs[g])):
            if not visited[g][p] and all_dirs[g][p] == "u":
                start_component(g, p)
    # sanity: everything visited (downward points are covered by the walks)
    for g in range(ngaps):
        for p in range(len(all_dirs[g])):
            if not visited[g][p]:
                raise DiagramValidationError(f"point {(g, p)} not on any component")
    return TraversalRecord(tuple(components))


def upward_points(d: MorseDiagram) -> List[Tuple[int, int]]:
    """All admissible basepoints: upward points in scan order."""
    all_dirs = strand_dirs(d)
    return [
        (g, p)
        for g in range(len(all_dirs))
        for p in range(len(all_dirs[g]))
        if all_dirs[g][p] == "u"
    ]


# -- statistics ---------------------------------------------------------------


@dataclass(frozen=True)
class DiagramStats:
    writhe: int
    whitney: Tuple[int, ...]

    @property
    def total_whitney(self) -> int:
        return sum(self.whitney)


def stats(d: MorseDiagram) -> DiagramStats:
    """Writhe (sum of crossing signs) and per-component Whitney degrees."""
    writhe = 0
    for s in d.slices:
        if s.kind is SliceKind.X_POS:
            writhe += 1
        elif s.kind is SliceKind.X_NEG:
            writhe -= 1
    record = traverse(d)
    return DiagramStats(writhe, record.whitney_degrees)


# -- composition and reversal ---------------------------------------------------


def compose_tangles(t1: MorseDiagram, t2: MorseDiagram) -> MorseDiagram:
    """Vertical concatenation of open tangles, t1 below t2."""
    if t1.boundary != "open" or t2.boundary != "open":
        raise DiagramError("compose_tangles needs two open tangles")
    return MorseDiagram(t1.slices + t2.slices, "open")


_REVERSE_KIND = {
    SliceKind.CUP_CCW: SliceKind.CAP_CW,
    SliceKind.CUP_CW: SliceKind.CAP_CCW,
    SliceKind.CAP_CCW: SliceKind.CUP_CW,
    SliceKind.CAP_CW: SliceKind.CUP_CCW,
    SliceKind.X_POS: SliceKind.X_POS,
    SliceKind.X_NEG: SliceKind.X_NEG,
}


def orientation_reverse(d: MorseDiagram) -> MorseDiagram:
    """The diagram with all orientations reversed, re-normalized upward.

    Reversing every arrow turns all crossings downward; rotating the plane by
    a half turn restores them.  Net effect on the Morse word: reverse the
    slice order, swap cups and caps (a clockwise cap becomes a
    counterclockwise cup and so on), mirror positions, keep crossing signs.
    """
    all_dirs = strand_dirs(d)
    out: List[Slice] = []
    for idx in range(len(d.slices) - 1, -1, -1):
        s = d.slices[idx]
        kind = _REVERSE_KIND[s.kind]
        if s.kind.is_cup:
            width = len(all_dirs[idx + 1])  # legs live above the cup
        else:
            width = len(all_dirs[idx])
        out.append(Slice(kind, width - 2 - s.pos))
    rev = MorseDiagram(tuple(out), d.boundary)
    validate(rev)
    return rev


def mirror(d: MorseDiagram) -> MorseDiagram:
    """Switch every crossing (xp <-> xn)."""
    flip = {SliceKind.X_POS: SliceKind.X_NEG, SliceKind.X_NEG: SliceKind.X_POS}
    return d.with_slices(
        Slice(flip.get(s.kind, s.kind), s.pos) for s in d.slices
    )


# -- builtin catalogue ----------------------------------------------------------


def _curl_word(loop_right: bool, positive: bool) -> List[Tuple[str, int]]:
    x = "xp" if positive else "xn"
    if loop_right:
        return [("cup_cw", 1), (x, 0), ("cap_cw", 1)]
    return [("cup_ccw", 0), (x, 1), ("cap_ccw", 0)]


def _closed_curl_family(loop_right: bool, positive: bool, m: int) -> MorseDiagram:
    if m < 0:
        raise DiagramError("curl count must be >= 0")
    toks: List[Tuple[str, int]] = []
    if loop_right:
        toks.append(("cup_ccw", 0))
        toks += m * [("cup_cw", 2), ("xp" if positive else "xn", 1), ("cap_cw", 2)]
        toks.append(("cap_ccw", 0))
    else:
        toks.append(("cup_cw", 0))
        toks += m * [("cup_ccw", 0), ("xp" if positive else "xn", 1), ("cap_ccw", 0)]
        toks.append(("cap_cw", 0))
    return word(*toks)


_FIXED_BUILTINS: Dict[str, MorseDiagram] = {
    "curl": word(*_curl_word(True, True), boundary="open"),
    "trefoil_tangle": word(
        ("cup_ccw", 0), ("xp", 1), ("xp", 1), ("xp", 1), ("cap_ccw", 0),
        boundary="open",
    ),
    "trefoil_knot": word(
        ("cup_ccw", 0), ("cup_cw", 2),
        ("xp", 1), ("xp", 1), ("xp", 1),
        ("cap_cw", 2), ("cap_ccw", 0),
    ),
    "hopf": word(
        ("cup_ccw", 0), ("cup_cw", 2),
        ("xp", 1), ("xp", 1),
        ("cap_cw", 2), ("cap_ccw", 0),
    ),
    "figure8_knot": word(
        ("cup_ccw", 0), ("cup_ccw", 1), ("cup_ccw", 2),
        ("xp", 3), ("xn", 4), ("xp", 3), ("xn", 4),
        ("cap_ccw", 2), ("cap_ccw", 1), ("cap_ccw", 0),
    ),
    "unknot_ccw": word(("cup_ccw", 0), ("cap_ccw", 0)),
    "unknot_cw": word(("cup_cw", 0), ("cap_cw", 0)),
}

_CURL_FAMILIES = {
    "c_r_plus": (True, True),
    "c_r_minus": (True, False),
    "c_l_plus": (False, True),
    "c_l_minus": (False, False),
}


def builtin(name: str, m: Optional[int] = None) -> MorseDiagram:
    """Catalogue diagrams; curl families take the kink count m."""
    if name == "curl_op":
        return orientation_reverse(builtin("curl"))
    if name in _FIXED_BUILTINS:
        d = _FIXED_BUILTINS[name]
        validate(d)
        return d
    if name in _CURL_FAMILIES:
        if m is None:
            raise DiagramError(f"builtin {name!r} needs a kink count m")
        loop_right, positive = _CURL_FAMILIES[name]
        d = _closed_curl_family(loop_right, positive, m)
        validate(d)
        return d
    raise DiagramError(f"unknown builtin diagram {name!r}")


def builtin_names() -> List[str]:
    return sorted(list(_FIXED_BUILTINS) + ["curl_op"] + list(_CURL_FAMILIES))


# -- regular-isotopy moves -------------------------------------------------------

_K = SliceKind
# each move: list of (lhs, rhs) pattern pairs; a pattern is a tuple of
# (kind, offset) instantiated at a base position p
MOVES: Dict[str, List[Tuple[Tuple, Tuple]]] = {
    # cancelling zig-zags (four chiralities grouped by shape)
    "M1a": [
        (((_K.CUP_CCW, 1), (_K.CAP_CW, 0)), ()),
        (((_K.CUP_CCW, 0), (_K.CAP_CW, 1)), ()),
    ],
    "M1b": [
        (((_K.CUP_CW, 0), (_K.CAP_CCW, 1)), ()),
        (((_K.CUP_CW, 1), (_K.CAP_CCW, 0)), ()),
    ],
    # cancelling opposite crossings
    "M2": [(((_K.X_POS, 0), (_K.X_NEG, 0)), ())],
    "M2rev": [(((_K.X_NEG, 0), (_K.X_POS, 0)), ())],
    # braid relation
    "M3": [
        (
            ((_K.X_POS, 0), (_K.X_POS, 1), (_K.X_POS, 0)),
            ((_K.X_POS, 1), (_K.X_POS, 0), (_K.X_POS, 1)),
        )
    ],
    "M3rev": [
        (
            ((_K.X_NEG, 0), (_K.X_NEG, 1), (_K.X_NEG, 0)),
            ((_K.X_NEG, 1), (_K.X_NEG, 0), (_K.X_NEG, 1)),
        )
    ],
    # sliding a strand under the far leg of a cap / cup (rotation moves)
    "M4a": [
        (
            ((_K.X_POS, 0), (_K.CAP_CW, 1)),
            ((_K.CUP_CCW, 1), (_K.X_POS, 2), (_K.CAP_CW, 3), (_K.CAP_CW, 0)),
        )
    ],
    "M4rev_a": [
        (
            ((_K.X_NEG, 0), (_K.CAP_CW, 1)),
            ((_K.CUP_CCW, 1), (_K.X_NEG, 2), (_K.CAP_CW, 3), (_K.CAP_CW, 0)),
        )
    ],
    "M4b": [
        (
            ((_K.CUP_CCW, 0), (_K.X_POS, 1)),
            ((_K.CUP_CCW, 1), (_K.CUP_CCW, 0), (_K.X_POS, 1), (_K.CAP_CW, 2)),
        )
    ],
    "M4rev_b": [
        (
            ((_K.CUP_CCW, 0), (_K.X_NEG, 1)),
            ((_K.CUP_CCW, 1), (_K.CUP_CCW, 0), (_K.X_NEG, 1), (_K.CAP_CW, 2)),
        )
    ],
    # cancelling opposite kinks on opposite loop sides (Whitney pairs)
    "TwistR": [
        (
            (
                (_K.CUP_CW, 1), (_K.X_POS, 0), (_K.CAP_CW, 1),
                (_K.CUP_CCW, 0), (_K.X_NEG, 1), (_K.CAP_CCW, 0),
            ),
            (),
        )
    ],
    "TwistL": [
        (
            (
                (_K.CUP_CCW, 0), (_K.X_POS, 1), (_K.CAP_CCW, 0),
                (_K.CUP_CW, 1), (_K.X_NEG, 0), (_K.CAP_CW, 1),
            ),
            (),
        )
    ],
}


def _instantiate(pattern: Tuple, p: int) -> Tuple[Slice, ...]:
    return tuple(Slice(kind, p + off) for kind, off in pattern)


def _matches(d: MorseDiagram, index: int, window: Tuple[Slice, ...]) -> bool:
    return d.slices[index : index + len(window)] == window


def apply_move(
    d: MorseDiagram, move: str, site: Tuple[int, int]
) -> MorseDiagram:
    """Rewrite the slice window at ``site`` = (slice index, base position).

    Whichever side of the move matches the window is replaced by the other
    side; for cancellation moves an empty side means insertion at the site.
    The rewritten diagram is validated before being returned.
    """
    if move not in MOVES:
        raise MoveError(f"unknown move {move!r}")
    index, p = site
    candidates: List[Tuple[Tuple[Slice, ...], Tuple[Slice, ...]]] = []
    for lhs, rhs in MOVES[move]:
        lhs_w = _instantiate(lhs, p)
        rhs_w = _instantiate(rhs, p)
        if lhs_w and _matches(d, index, lhs_w):
            candidates.append((lhs_w, rhs_w))
        elif rhs_w and _matches(d, index, rhs_w):
            candidates.append((rhs_w, lhs_w))
        elif not rhs_w:
            candidates.append(((), lhs_w))  # insertion
    last_error: Optional[Exception] = None
    for old, new in candidates:
        slices = d.slices[:index] + new + d.slices[index + len(old) :]
        candidate = d.with_slices(slices)
        try:
            validate(candidate)
            return candidate
        except DiagramValidationError as exc:
            last_error = exc
    raise MoveError(
        f"move {move} does not apply at slice {index}, position {p}"
        + (f": {last_error}" if last_error else "")
    )


def move_sites(d: MorseDiagram, move: str) -> List[Tuple[int, int]]:
    """All (index, position) sites where a non-empty side of ``move`` matches."""
    out = []
    for index in range(len(d.slices) + 1):
        max_p = max((s.pos for s in d.slices), default=0) + 3
        for p in range(max_p):
            for lhs, rhs in MOVES[move]:
                for side in (lhs, rhs):
                    if not side:
                        continue
                    w = _instantiate(side, p)
                    if index + len(w) <= len(d.slices) and _matches(d, index, w):
                        out.append((index, p))
                        break
                else:
                    continue
                break
    return sorted(set(out))


def insertion_sites(d: MorseDiagram, move: str) -> List[Tuple[int, int]]:
    """Sites where the empty side of a cancellation move can be expanded."""
    dirs = strand_dirs(d)
    out = []
    for index in range(len(d.slices) + 1):
        for p in range(len(dirs[index]) + 1):
            try:
                apply_move(d, move, (index, p))
            except MoveError:
                continue
            out.append((index, p))
    return out
