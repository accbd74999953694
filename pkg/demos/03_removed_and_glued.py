"""
Removing facets and gluing pieces
=================================
"""

from multiehrhart import (
    HRep,
    chamber_samples,
    check_removed_reciprocity,
    count_glued,
    count_removed,
    fit_facets,
    fit_pair,
    glued_chamber_samples,
    check_reciprocity,
)
from multiehrhart.suite import lshape_document

square = HRep([[1, 0], [-1, 0], [0, 1], [0, -1]], (1, 1, 1, 1), "square")

# drop the side x = 1: 6 points remain; the interior gains that side's middle point
print(count_removed(square, {0}, square.b))

fp = fit_pair(square)
fits = {"interior": fp.interior, "closed": fp.closed, "facets": fit_facets(square, [0])}
pts = chamber_samples(square, 50, 6, seed=3)
print(check_removed_reciprocity(square, [0], fits, pts))

# an L made of two boxes sharing the segment [0,1] x {1}
L = lshape_document().build()
print(count_glued(L, L.b))
print(count_glued(L, tuple(2 * x for x in L.b)))

# glued coordinates are tied: moving the shared wall moves both copies
print(L.dependent_coordinates())

gp = fit_pair(L)
print(check_reciprocity(gp.interior, gp.closed, 2, glued_chamber_samples(L, 50, 6, seed=1, spread=2)))
