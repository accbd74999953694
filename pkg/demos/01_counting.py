"""
Counting lattice points under vector dilation
=============================================

Each row of A moves on its own when the right-hand side b is replaced by t.
"""

import numpy as np

from multiehrhart import HRep, count_brute, count_recursive, enumerate_vertices, is_chamber_point

# the square [-1, 1]^2, one row per side
A = [[1, 0], [-1, 0], [0, 1], [0, -1]]
square = HRep(A, (1, 1, 1, 1), "square")

# push the right wall out and the left wall in: [0, 2] x [-1, 1]
t = (2, 0, 1, 1)
print(sorted(tuple(map(int, v.point)) for v in enumerate_vertices(square, t)))
print(is_chamber_point(square, t))  # same corners, same incidences

# two independent counters; they must agree
print(count_brute(square, t))
print(count_recursive(square, t))

# collapsing the square to a segment leaves the chamber
print(is_chamber_point(square, (0, 0, 1, 1)))

# closed counts over a grid of (t1, t3), other walls fixed at 1
grid = np.array([[count_recursive(square, (a, 1, c, 1)).closed for c in range(0, 5)] for a in range(0, 5)])
print(grid)
# each entry is (t1 + 2) * (t3 + 2)
print(np.array_equal(grid, np.outer(np.arange(2, 7), np.arange(2, 7))))
