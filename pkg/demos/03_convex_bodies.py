"""Bodies other than balls.

A smooth body is as good as the largest ball rolling inside it, so the
threshold scales with the rolling radius.  Corners have rolling radius zero
and kill the criterion; an inner body with rounded corners can rescue part
of it when the corners are blunt enough.
"""

import math
import warnings

import numpy as np

from aodepletion import (
    Ball,
    ConvexPolygon,
    CuspWarning,
    Ellipsoid,
    RoundedPolygon,
    largest_qualifying_delta,
    rolling_radius,
    theorem1_check,
)

bodies = [Ball([0, 0], 1), Ellipsoid([4, 0], [2, 1]), RoundedPolygon([[0, 3], [2, 3], [2, 5], [0, 5]], 0.4)]
for b in bodies:
    print(f"{type(b).__name__:15s} rolling radius {rolling_radius(b):.3f}")
rep = theorem1_check(bodies, 0.05)
print(f"threshold {rep.threshold:.4f}, set by body {rep.limiting_body_index}, delta 0.05 ok: {rep.strict}")

square = ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always", CuspWarning)
    rep = theorem1_check([square, Ball([3, 0], 1), Ball([0, 3], 1)], 0.01)
print(f"with a square: threshold {rep.threshold} ({caught[0].message})")

print("square with a rounded square inside:",
      largest_qualifying_delta(square, RoundedPolygon([[0, 0], [1, 0], [1, 1], [0, 1]], 0.45)))

for n in (8, 16, 64, 256):
    t = 2 * np.pi * np.arange(n) / n
    poly = ConvexPolygon(np.column_stack([np.cos(t), np.sin(t)]))
    d = largest_qualifying_delta(poly, Ball([0, 0], math.cos(math.pi / n)))
    print(f"regular {n}-gon with its inscribed disk: largest usable delta {d}")
