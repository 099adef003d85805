"""Deterministic SVG drawings of region diagrams.

Non-displaceable pieces are dark, probe-displaceable pieces light, and the
rest of the moment polytope is left unshaded.  Removed (strict) facets are
dashed.  All coordinates are exact until the final fixed-precision print.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .errors import UnsupportedDimension
from .linalg import fmt
from .polyhedra import EQ, GE, Constraint, Polyhedron, canonical, minimize_linear
from .regions import RegionSet, polygon_vertices
from .toric import ToricModel

SIZE = 480
MARGIN = 60
ND_FILL = "#1f2d5c"
D_FILL = "#bcd7ee"
OUTLINE = "#000000"


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _box_constraints(box) -> tuple[Constraint, ...]:
    out = []
    for j, (lo, hi) in enumerate(box):
        e = [0] * len(box)
        e[j] = 1
        out.append(Constraint(tuple(e), lo, GE))
        out.append(Constraint(tuple(-x for x in e), -hi, GE))
    return tuple(out)


class _Frame:
    """Maps a rational box onto the canvas with equal scales (y up)."""

    def __init__(self, box):
        self.box = box
        spans = [hi - lo for lo, hi in box]
        self.scale = Fraction(SIZE - 2 * MARGIN) / max(max(spans), Fraction(1))
        self.height = SIZE if len(box) == 2 else 2 * MARGIN + 40

    def x(self, v) -> str:
        return _num(float(MARGIN + (v - self.box[0][0]) * self.scale))

    def y(self, v) -> str:
        return _num(float(SIZE - MARGIN - (v - self.box[1][0]) * self.scale))


def _clip(P: Polyhedron, box) -> Polyhedron:
    return canonical(Polyhedron(P.dim, P.closure().constraints + _box_constraints(box)))


def _labels(pts, frame: _Frame, dy: int) -> list[str]:
    return [f'<text x="{frame.x(a)}" y="{frame.y(b)}" dx="4" dy="{dy}" font-size="11">'
            f'{escape(f"({fmt(a)}, {fmt(b)})")}</text>' for a, b in pts]


def _shape(P: Polyhedron, frame: _Frame, fill: str, label: bool = False) -> list[str]:
    C = _clip(P, frame.box)
    if C.empty:
        return []
    pts = polygon_vertices(C)
    if not pts:
        return []
    coords = [(frame.x(a), frame.y(b)) for a, b in pts]
    extra = _labels(pts, frame, 14) if label else []
    if len(coords) == 1:
        (a, b), = coords
        return [f'<circle cx="{a}" cy="{b}" r="4" fill="{fill}"/>'] + extra
    if any(c.rel == EQ for c in C.constraints) or len(coords) == 2:
        (a1, b1), (a2, b2) = coords[0], coords[-1]
        return [f'<line x1="{a1}" y1="{b1}" x2="{a2}" y2="{b2}" stroke="{fill}" '
                f'stroke-width="5" stroke-linecap="round"/>'] + extra
    path = " ".join(f"{a},{b}" for a, b in coords)
    return [f'<polygon points="{path}" fill="{fill}" stroke="{fill}" stroke-width="1"/>'] + extra


def _outline(model: ToricModel, frame: _Frame) -> list[str]:
    out = []
    closure = _clip(model.closure, frame.box)
    for c in model.constraints:
        edge = canonical(Polyhedron(2, closure.constraints + (Constraint(c.coeffs, c.const, EQ),)))
        if edge.empty or edge.affine_dimension() != 1:
            continue
        pts = polygon_vertices(edge)
        if len(pts) < 2:
            continue
        (a1, b1), (a2, b2) = pts[0], pts[-1]
        dash = ' stroke-dasharray="6,4"' if c.strict else ""
        out.append(f'<line x1="{frame.x(a1)}" y1="{frame.y(b1)}" x2="{frame.x(a2)}" '
                   f'y2="{frame.y(b2)}" stroke="{OUTLINE}" stroke-width="1.5"{dash}/>')
    corners = polygon_vertices(closure)
    out += [f'<circle cx="{frame.x(a)}" cy="{frame.y(b)}" r="2" fill="{OUTLINE}"/>' for a, b in corners]
    return out + _labels(corners, frame, -4)


def _interval(P: Polyhedron, box) -> Optional[tuple]:
    """Closure endpoints of a 1-dimensional piece and whether each end is included."""
    C = canonical(Polyhedron(1, P.constraints + _box_constraints(box)))
    if C.empty:
        return None
    lo = minimize_linear((1,), C.closure().constraints, 1).value
    hi = -minimize_linear((-1,), C.closure().constraints, 1).value
    return lo, hi, C.contains((lo,)), C.contains((hi,))


def _bar(model: ToricModel, regions, frame: _Frame) -> list[str]:
    y = MARGIN + 10
    out = []
    lo, hi = _interval(model.phi, frame.box)[:2]
    out.append(f'<rect x="{frame.x(lo)}" y="{y}" width="{_num(float((hi - lo) * frame.scale))}" '
               f'height="20" fill="none" stroke="{OUTLINE}"/>')
    for R, fill in regions:
        for P in R.polyhedra:
            iv = _interval(P, frame.box)
            if iv is None:
                continue
            a, b, a_in, b_in = iv
            if a == b:
                out.append(f'<circle cx="{frame.x(a)}" cy="{y + 10}" r="5" fill="{fill}"/>')
                continue
            out.append(f'<rect x="{frame.x(a)}" y="{y}" width="{_num(float((b - a) * frame.scale))}" '
                       f'height="20" fill="{fill}"/>')
            for end, inside in ((a, a_in), (b, b_in)):
                face = fill if inside else "#ffffff"
                out.append(f'<circle cx="{frame.x(end)}" cy="{y + 10}" r="4" fill="{face}" '
                           f'stroke="{OUTLINE}"/>')
    for v in sorted({lo, hi} | {e for R, _ in regions for P in R.polyhedra
                                for e in (_interval(P, frame.box) or ())[:2]}):
        out.append(f'<text x="{frame.x(v)}" y="{y + 40}" font-size="11" text-anchor="middle">'
                   f'{escape(fmt(v))}</text>')
    return out


def render_svg(model: ToricModel, nd: RegionSet, d: RegionSet,
               box: Sequence[tuple[Fraction, Fraction]], title: str = "") -> str:
    """SVG text for the region diagram; identical inputs give identical bytes."""
    if model.dim not in (1, 2):
        raise UnsupportedDimension(f"cannot draw a {model.dim}-dimensional region; use JSON output")
    box = tuple((Fraction(a), Fraction(b)) for a, b in box)
    frame = _Frame(box)
    body: list[str] = []
    if model.dim == 1:
        body += _bar(model, [(d, D_FILL), (nd, ND_FILL)], frame)
    else:
        for P in d.polyhedra:
            body += _shape(P, frame, D_FILL)
        for P in nd.polyhedra:
            body += _shape(P, frame, ND_FILL, label=True)
        body += _outline(model, frame)
    h = frame.height
    legend = [
        f'<rect x="{MARGIN}" y="{h - 24}" width="12" height="12" fill="{ND_FILL}"/>',
        f'<text x="{MARGIN + 16}" y="{h - 14}" font-size="12">non-displaceable (certified)</text>',
        f'<rect x="{MARGIN + 210}" y="{h - 24}" width="12" height="12" fill="{D_FILL}"/>',
        f'<text x="{MARGIN + 226}" y="{h - 14}" font-size="12">displaceable (probe)</text>',
    ]
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" '
            f'viewBox="0 0 {SIZE} {h}" font-family="sans-serif">')
    lines = [head, f'<rect width="{SIZE}" height="{h}" fill="#ffffff"/>',
             f'<text x="{MARGIN}" y="24" font-size="14">{escape(title)}</text>']
    lines += body + legend + ["</svg>"]
    return "\n".join(lines) + "\n"

