"""Exact classification of toric moment fibers.

Fibers are certified non-displaceable by the valuation-kernel criterion and
displaceable by probes; everything else is reported as unknown.
"""
from .certifier import (NonDispCertificate, Unknown, ValuationProblem, certify_point,
                        certify_region, criterion, recheck, synthesize_witness)
from .classify import Regions, Settings, Verdict, classify, region, sweep
from .errors import (ConsistencyViolation, ExteriorPoint, InputError, NotEmbedded,
                     SynthesisFailed, ToricError, UnsupportedDimension)
from .mirror import (EmbeddingWitness, MirrorDescriptor, QuotientMap, check_functoriality,
                     product, pushforward_delta, pushforward_eps, quotient, restrict)
from .novikov import NovikovPoly
from .probes import NotFound, ProbeCertificate, probe_displaces, probe_region
from .regions import RegionSet
from .scenarios import SCENARIOS, Scenario, get as get_scenario
from .svg import render_svg
from .toric import (FacetSpec, SpuriousCandidate, ToricData, ToricModel, candidates_for,
                    enumerate_spurious, epsilon_max, validate)

__all__ = [
    "ConsistencyViolation", "EmbeddingWitness", "ExteriorPoint", "FacetSpec", "InputError",
    "MirrorDescriptor", "NonDispCertificate", "NotEmbedded", "NotFound", "NovikovPoly",
    "ProbeCertificate", "QuotientMap", "RegionSet", "Regions", "SCENARIOS", "Scenario", "Settings",
    "SpuriousCandidate", "SynthesisFailed", "ToricData", "ToricError", "ToricModel", "Unknown",
    "UnsupportedDimension", "ValuationProblem", "Verdict", "candidates_for", "certify_point",
    "certify_region", "check_functoriality", "classify", "criterion", "enumerate_spurious",
    "epsilon_max", "get_scenario", "probe_displaces", "probe_region", "product",
    "pushforward_delta", "pushforward_eps", "quotient", "recheck", "region", "render_svg",
    "restrict", "sweep", "synthesize_witness", "validate",
]
