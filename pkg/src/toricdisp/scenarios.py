"""Built-in scenarios: the worked examples as toric data with default candidates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InputError
from .polyhedra import EQ, GE, GT, Constraint, Polyhedron, canonical
from .regions import RegionSet, canonical_region
from .toric import (SpuriousCandidate, ToricData, ToricModel, bounding_box, candidates_for,
                    load_scenario_file, validate)

F = Fraction


def _region(dim, *pieces) -> RegionSet:
    polys = tuple(canonical(Polyhedron(dim, tuple(Constraint(c, k, r) for c, k, r in piece)))
                  for piece in pieces)
    return canonical_region(RegionSet(dim, polys))


@dataclass(frozen=True)
class Scenario:
    name: str
    data: ToricData
    candidates: tuple[tuple[int, ...], ...] = ()
    description: str = ""
    window: Optional[tuple[tuple[Fraction, Fraction], ...]] = None
    expected_nd: Optional[RegionSet] = None
    expected_d: Optional[RegionSet] = None

    @property
    def dim(self) -> int:
        return self.data.dim

    @property
    def model(self) -> ToricModel:
        return _model(self.data)

    def spurious(self, directions: Optional[Sequence[Sequence[int]]] = None) -> list[SpuriousCandidate]:
        dirs = self.candidates if directions is None else directions
        return candidates_for(self.model, dirs)

    def view_box(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Bounding box used for sweeps and drawings."""
        if self.window is not None:
            return self.window
        box = bounding_box(self.model)
        if any(x is None for side in box for x in side):
            raise InputError(f"{self.name} is unbounded; a window is required")
        return box

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description,
                "data": self.data.to_json(),
                "candidates": [list(c) for c in self.candidates]}


@lru_cache(maxsize=None)
def _model(data: ToricData) -> ToricModel:
    return validate(data)


def _build() -> dict[str, Scenario]:
    lib = {}

    def add(s: Scenario):
        lib[s.name] = s

    add(Scenario(
        "disk", ToricData.build("disk", [((1,), 0), ((-1,), -1, True)]), ((-1,),),
        "open disk of area 1: moment image [0, 1)",
        expected_nd=_region(1, [((1,), F(1, 2), GE), ((-1,), -1, GT)]),
        expected_d=_region(1, [((1,), 0, GT), ((-1,), F(-1, 2), GT)])))
    add(Scenario(
        "p1", ToricData.build("p1", [((1,), -1), ((-1,), -1)]), (),
        "projective line, moment image [-1, 1]",
        expected_nd=_region(1, [((1,), 0, EQ)]),
        expected_d=_region(1, [((1,), 0, GT), ((-1,), -1, GT)],
                           [((1,), -1, GT), ((-1,), 0, GT)])))
    add(Scenario(
        "c2z2", ToricData.build("c2z2", [((1, 1), 0), ((-1, 1), 0)]), ((0, 1),),
        "quotient C^2/Z_2 with the spurious direction (0, 1)",
        window=((F(-2), F(2)), (F(0), F(3))),
        expected_nd=_region(2, [((1, 0), 0, EQ), ((0, 1), 0, GT)])))
    add(Scenario(
        "c2z2hat", ToricData.build("c2z2hat", [((1, 1), 0), ((-1, 1), 0), ((0, 1), 0)]), (),
        "C^2/Z_2 presented with the redundant inequality lambda_2 >= 0",
        window=((F(-2), F(2)), (F(0), F(3))),
        expected_nd=_region(2, [((1, 0), 0, EQ), ((0, 1), 0, GT)])))
    add(Scenario(
        "ball2", ToricData.build("ball2", [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1, True)]),
        ((-1, -1),), "open 4-ball: triangle with the hypotenuse removed",
        expected_nd=_region(2, [((1, -1), 0, EQ), ((1, 0), F(1, 3), GE), ((-1, 0), F(-1, 2), GT)])))
    add(Scenario(
        "p112", ToricData.build("p112", [((1, 0), 0), ((0, 1), 0), ((-2, -1), -2)]), ((-1, 0),),
        "weighted projective plane P(1,1,2)",
        expected_nd=_region(2, [((1, 1), 1, EQ), ((0, 1), 0, GT), ((0, -1), F(-1, 2), GE)])))
    add(Scenario(
        "ellipsoid12", ToricData.build("ellipsoid12", [((1, 0), 0), ((0, 1), 0),
                                                       ((-2, -1), -2, True), ((-1, 0), -1, True)]),
        ((-2, -1), (-1, 0)), "ellipsoid E(1,2) with its open boundary and the cut lambda_1 < 1",
        expected_nd=_region(2, [((1, 1), 1, GE), ((1, 0), F(1, 2), GE), ((-2, -1), -2, GT)])))
    add(Scenario(
        "p135", ToricData.build("p135", [((1, 0), 0), ((0, 1), 0), ((-5, -3), -15)]),
        ((-1, 0), (-2, -1)), "weighted projective plane P(1,3,5)"))
    add(Scenario(
        "quadrant", ToricData.build("quadrant", [((1, 0), 0), ((0, 1), 0)]), (),
        "C^2 with the standard action", window=((F(0), F(3)), (F(0), F(3)))))
    add(Scenario(
        "p1xp1", ToricData.build("p1xp1", [((1, 0), -1), ((-1, 0), -1), ((0, 1), -1), ((0, -1), -1)]),
        (), "product of two projective lines"))
    return lib


SCENARIOS: dict[str, Scenario] = _build()


def get(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise InputError(f"unknown scenario {name!r}; known: {', '.join(sorted(SCENARIOS))}") from None


def from_file(path) -> Scenario:
    """A scenario from JSON: ``{"name", "dimension", "facets", "candidates"?, "window"?}``."""
    raw = load_scenario_file(path)
    data = ToricData.from_json(raw)
    cands = tuple(tuple(int(x) for x in c) for c in raw.get("candidates", ()))
    window = raw.get("window")
    if window is not None:
        window = tuple((F(lo), F(hi)) for lo, hi in window)
    return Scenario(data.name, data, cands, raw.get("description", ""), window)


def resolve(name_or_path: str) -> Scenario:
    if name_or_path in SCENARIOS:
        return SCENARIOS[name_or_path]
    if name_or_path.endswith(".json"):
        try:
            return from_file(name_or_path)
        except OSError as exc:
            raise InputError(f"cannot read {name_or_path}: {exc}") from exc
    return get(name_or_path)
