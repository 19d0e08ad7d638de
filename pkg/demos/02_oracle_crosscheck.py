"""The closed-form answer against brute force.

delta_max is, by definition, min over x of max_i dist(x, B_i).  That is a
convex problem a derivative-free search can solve without knowing anything
about tangent circles, so it makes an independent check.
"""

import numpy as np

from aodepletion import delta_max, minimax_delta, triple_empty
from aodepletion.sampling import random_config

worst = 0.0
for i in range(200):
    cfg = random_config(np.random.default_rng([1, i]), (0.1, 10.0), (0.0, 3.0), dimension=3)
    closed = delta_max(cfg).delta_max
    brute = minimax_delta(list(cfg)).value
    worst = max(worst, abs(closed - brute))
print(f"200 random 3D triplets: largest |closed form - minimax| = {worst:.2e}")

cfg = random_config(np.random.default_rng(7), (0.5, 2.0), (0.0, 1.0))
d = delta_max(cfg).delta_max
print(f"one triplet with delta_max = {d:.6f}:")
for f in (0.99, 0.999999, 1.000001, 1.01):
    print(f"  delta = {f} x delta_max -> triple intersection empty: {triple_empty(list(cfg), f * d)}")
