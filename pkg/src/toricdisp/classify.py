"""Verdicts: the certifier and the probes combined."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .certifier import DEFAULT_SEED, DEFAULT_SUPPORT_CAP, NonDispCertificate, Unknown, certify_point, certify_region
from .errors import ConsistencyViolation, InputError
from .linalg import fmt, vec
from .probes import DEFAULT_SEARCH_BOUND, ProbeCertificate, probe_displaces, probe_region
from .regions import RegionSet, grid_points
from .scenarios import Scenario
from .toric import SpuriousCandidate, enumerate_spurious

NON_DISPLACEABLE = "NonDisplaceable"
DISPLACEABLE = "Displaceable"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Settings:
    """Search bounds shared by every query; ``norm_bound`` replaces the default candidates."""

    support_cap: int = DEFAULT_SUPPORT_CAP
    seed: int = DEFAULT_SEED
    search_bound: int = DEFAULT_SEARCH_BOUND
    norm_bound: Optional[int] = None
    candidates: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        for name in ("support_cap", "search_bound"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be non-negative")
        if self.norm_bound is not None and self.norm_bound < 1:
            raise InputError("norm bound must be at least 1")

    def spurious(self, scenario: Scenario) -> list[SpuriousCandidate]:
        if self.candidates is not None:
            return scenario.spurious(self.candidates)
        if self.norm_bound is not None:
            return enumerate_spurious(scenario.model, self.norm_bound)
        return scenario.spurious()

    def to_json(self) -> dict:
        return {"support_cap": self.support_cap, "seed": self.seed,
                "search_bound": self.search_bound, "norm_bound": self.norm_bound,
                "candidates": None if self.candidates is None else [list(c) for c in self.candidates]}


Evidence = Union[NonDispCertificate, ProbeCertificate, Unknown]


@dataclass(frozen=True)
class Verdict:
    kind: str
    point: tuple[Fraction, ...]
    evidence: Evidence

    @property
    def certificate(self):
        return None if self.kind == UNKNOWN else self.evidence

    def to_json(self) -> dict:
        return {"verdict": self.kind, "point": [fmt(x) for x in self.point],
                "evidence": self.evidence.to_json()}


def classify(scenario: Scenario, point: Sequence, settings: Settings = Settings(),
             cross_check: bool = False) -> Verdict:
    """Certifier first, probes second.  ``cross_check`` runs both and fails on a clash."""
    point = vec(point)
    model = scenario.model
    nd = certify_point(model, settings.spurious(scenario), point, settings.support_cap, settings.seed)
    certified = isinstance(nd, NonDispCertificate)
    if certified and not cross_check:
        return Verdict(NON_DISPLACEABLE, point, nd)
    probe = probe_displaces(model, point, settings.search_bound)
    if certified and probe:
        raise ConsistencyViolation(f"{scenario.name}: both verdicts at {[fmt(x) for x in point]}", point)
    if certified:
        return Verdict(NON_DISPLACEABLE, point, nd)
    if probe:
        return Verdict(DISPLACEABLE, point, probe)
    return Verdict(UNKNOWN, point, replace(nd, reason="no certificate and no probe within the bounds",
                                           norm_bound=settings.norm_bound,
                                           search_bound=settings.search_bound))


@dataclass(frozen=True)
class Regions:
    nd: RegionSet
    d: RegionSet

    def to_json(self) -> dict:
        return {"nd": self.nd.to_json(), "d": self.d.to_json()}


def region(scenario: Scenario, settings: Settings = Settings()) -> Regions:
    """Exact certified and probe-displaceable sets, checked to be disjoint."""
    model = scenario.model
    nd = certify_region(model, settings.spurious(scenario), settings.support_cap, settings.seed)
    d = probe_region(model, settings.search_bound)
    for P in nd.polyhedra:
        for Q in d.polyhedra:
            common = P.intersect(Q)
            if not common.is_empty():
                x = common.relative_interior_point()
                raise ConsistencyViolation(f"{scenario.name}: regions overlap at {[fmt(t) for t in x]}", x)
    return Regions(nd, d)


def sweep(scenario: Scenario, step, settings: Settings = Settings(),
          regions: Optional[Regions] = None) -> dict:
    """Classify every interior grid point and compare with the exact regions."""
    step = Fraction(step)
    if step <= 0:
        raise InputError("step must be positive")
    model = scenario.model
    regions = regions or region(scenario, settings)
    counts: Counter = Counter()
    points = {NON_DISPLACEABLE: [], DISPLACEABLE: [], UNKNOWN: []}
    for x in grid_points(scenario.view_box(), step):
        if not model.is_interior(x):
            continue
        v = classify(scenario, x, settings, cross_check=True)
        in_nd, in_d = regions.nd.contains(x), regions.d.contains(x)
        if (v.kind == NON_DISPLACEABLE) != in_nd or (v.kind == DISPLACEABLE) != in_d:
            raise ConsistencyViolation(
                f"{scenario.name}: point verdict {v.kind} disagrees with the regions at "
                f"{[fmt(t) for t in x]} (nd={in_nd}, d={in_d})", x)
        counts[v.kind] += 1
        points[v.kind].append([fmt(t) for t in x])
    return {"scenario": scenario.name, "step": fmt(step), "settings": settings.to_json(),
            "counts": {k: counts[k] for k in (NON_DISPLACEABLE, DISPLACEABLE, UNKNOWN)},
            "non_displaceable_points": points[NON_DISPLACEABLE],
            "unknown_points": points[UNKNOWN]}
