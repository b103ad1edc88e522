"""Enumeration of knot shadows and knot diagrams, with HOMFLY-PT classification.

Submodules
----------
pdcode       PD codes, faces, components and genus
isomorphism  canonical keys, explicit isomorphisms and the Pdstor class store
shadows      connect sums, prime decomposition and brute-force generation
planarcode   planar_code files and the quadrangulation duality
expansion    enumeration by expanding simple planar graphs
homfly       HOMFLY-PT polynomials by skein trees
diagrams     diagrams over shadows, orbit counting and knot tables
census       per-shadow census, statistics and reference checks
pipelines    method selection and bundled prime shadows
chunked      restartable chunked census runs
cli          command line interface
"""
from .pdcode import PdCode, parse, serialize, validate, faces, components, genus
from .isomorphism import Pdstor, canonical_key, map_automorphisms, build_isomorphisms
from .shadows import connect_sum, prime_decompose, is_prime, summand_count, twist, hopf
from .homfly import HomflyPoly, homfly
from .diagrams import Diagram, build_knot_table, classify, orbit_representatives
from .census import CensusRecord, stats_shadows, treelike_stats, unknot_report
from .pipelines import enumerate_shadows

__all__ = [
    "PdCode", "parse", "serialize", "validate", "faces", "components", "genus",
    "Pdstor", "canonical_key", "map_automorphisms", "build_isomorphisms",
    "connect_sum", "prime_decompose", "is_prime", "summand_count", "twist", "hopf",
    "HomflyPoly", "homfly",
    "Diagram", "build_knot_table", "classify", "orbit_representatives",
    "CensusRecord", "stats_shadows", "treelike_stats", "unknot_report",
    "enumerate_shadows",
]

__version__ = "0.1.0"
