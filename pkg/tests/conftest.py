import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from multiehrhart.polytope import GluedPolytope, chamber_samples, glued_chamber_samples
from multiehrhart.quasipoly import fit_facets, fit_pair
from multiehrhart.suite import generate_corpus

CORPUS = generate_corpus()
CORPUS_BY_NAME = {d.name: d for d in CORPUS}

SQUARE = [[1, 0], [-1, 0], [0, 1], [0, -1]]
TRIANGLE = [[-1, 0], [0, -1], [1, 1]]
HALFSLOPE = [[-1, 0], [0, -1], [1, 2]]
INTERVAL = [[1], [-1]]


@lru_cache(maxsize=None)
def built(name):
    return CORPUS_BY_NAME[name].build()


@lru_cache(maxsize=None)
def pair(name):
    return fit_pair(built(name), seed=0)


@lru_cache(maxsize=None)
def facets(name):
    P = built(name)
    return fit_facets(P, range(P.m), seed=0)


@lru_cache(maxsize=None)
def chamber_points(name, count=100, seed=1):
    P = built(name)
    sampler = glued_chamber_samples if isinstance(P, GluedPolytope) else chamber_samples
    return tuple(sampler(P, count, 8, seed, spread=3))


@pytest.fixture(params=[d.name for d in CORPUS])
def corpus_name(request):
    return request.param


@pytest.fixture(params=[d.name for d in CORPUS if d.glue is None])
def convex_name(request):
    return request.param
