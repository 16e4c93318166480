import pytest

from fewplanes.census import plane_census
from fewplanes.dual import build_gamma, classify_edges
from fewplanes.generators import ExtremalSpec, make_extremal
from fewplanes.projective import ProjPoint
from fewplanes.generators import PointSet


@pytest.fixture(scope="session")
def extremal_cache():
    """Shared census + gamma builders so expensive instances build once."""
    sets = {}
    censuses = {}
    gammas = {}

    class Cache:
        def pointset(self, kind, m, apex=(0, 0), removed=None):
            key = (kind, m, apex, removed)
            if key not in sets:
                sets[key] = make_extremal(ExtremalSpec(kind, m, apex, removed))
            return sets[key]

        def census(self, kind, m, apex=(0, 0), removed=None):
            key = (kind, m, apex, removed)
            if key not in censuses:
                censuses[key] = plane_census(self.pointset(kind, m, apex, removed))
            return censuses[key]

        def gamma(self, kind, m, apex=(0, 0)):
            key = (kind, m, apex)
            if key not in gammas:
                gammas[key] = classify_edges(
                    build_gamma(self.pointset(kind, m, apex)))
            return gammas[key]

    return Cache()


@pytest.fixture(scope="session")
def generic_five():
    """The smallest non-coplanar no-3-collinear set beyond a simplex face."""
    return PointSet([ProjPoint(1, 0, 0, 0), ProjPoint(0, 1, 0, 0),
                     ProjPoint(0, 0, 1, 0), ProjPoint(0, 0, 0, 1),
                     ProjPoint(1, 1, 1, 1)])
