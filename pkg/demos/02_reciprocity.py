"""
Fitting quasipolynomials and checking reciprocity
=================================================

The interior and closed counts are quasipolynomials in t.  Evaluated at -t
the interior count returns the closed count up to the sign (-1)^n.
"""

from multiehrhart import HRep, chamber_samples, check_reciprocity, fit_pair, infer_period, specialize

# triangle with a slope-1/2 hypotenuse: vertices (0,0), (t3,0), (0,t3/2)
halfslope = HRep([[-1, 0], [0, -1], [1, 2]], (0, 0, 1), "halfslope")
print(infer_period(halfslope))  # (2, 2, 2)

fp = fit_pair(halfslope, seed=0)
print(fp.closed_report)
print(len(fp.closed.classes), "residue classes")

# the closed count in the class t = (0, 0, 0) mod 2
for e, c in sorted(fp.closed.polynomial((0, 0, 0)).items()):
    print(e, c)

pts = chamber_samples(halfslope, 100, 8, seed=1, spread=3)
print(check_reciprocity(fp.interior, fp.closed, 2, pts))

t = pts[0]
print(t, fp.interior(tuple(-x for x in t)), fp.closed(t))

# back along the ray t = s*b: a period-2 quasipolynomial in s
S = specialize(fp.closed, halfslope.b)
print([int(S((s,))) for s in range(1, 9)])
