"""How large can the depletant be before three colloids share a shell point?

Three equal balls in mutual contact are the worst case.  Their shells first
meet at the centroid when delta = (2/sqrt(3) - 1) R.  Unequal radii push the
value up, and a flat wall pushes it up to R/4.
"""

from aodepletion import Ball, HalfSpace, delta_max, delta_max_wall, descartes_contact_radius
from aodepletion.sampling import contact_config, equal_contact_config

res = delta_max(equal_contact_config(1.0))
print(f"equal unit balls at contact: delta_max = {res.delta_max:.16f} ({res.case_tag})")
print(f"  shells meet at {res.witness_point}")

for radii in [(1, 1, 1), (1, 2, 3), (1, 1, 10), (1, 1, 1e6)]:
    cfg = contact_config(radii)
    print(f"radii {radii}: delta_max {delta_max(cfg).delta_max:.6f}, "
          f"closed form {descartes_contact_radius(*radii):.6f}")

wall = HalfSpace([0, 1], 0)
print("two unit balls touching a wall:", delta_max_wall(Ball([-1, 1], 1), Ball([1, 1], 1), wall))

# pulling the balls apart only makes room
for gap in [0.0, 0.5, 1.0, 2.0]:
    side = 2 + gap
    cfg = [Ball([0, 0], 1), Ball([side, 0], 1), Ball([side / 2, side * 3**0.5 / 2], 1)]
    r = delta_max(cfg)
    print(f"equilateral side {side}: delta_max {r.delta_max:.6f} ({r.case_tag})")
