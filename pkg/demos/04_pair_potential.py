"""When is the pair potential the whole story?

The depletion free energy is -P_p times the volume of the union of the
shells.  Singles minus pair overlaps gives it exactly as long as no three
shells overlap, and that is what the pair potential encodes.
"""

from aodepletion import AOParameters, CRITICAL_RATIO, exactness_guard, potential_table
from aodepletion.oracle import truncated_inclusion_exclusion, union_volume_mc
from aodepletion.sampling import equal_contact_config

for ratio in (0.1, CRITICAL_RATIO, 0.2):
    rep = exactness_guard(AOParameters(R=1.0, delta=ratio))
    print(f"delta/R = {ratio:.4f}: empty triple overlap {rep.strict}, zero volume {rep.satisfied}")

print(potential_table(AOParameters(R=1.0, delta=0.1), 1.9, 2.3, 9).to_csv())

cfg = list(equal_contact_config(1.0))
for delta in (0.15, 0.3):
    est = union_volume_mc(cfg, delta, 10**6, seed=0)
    ie = truncated_inclusion_exclusion(cfg, delta)
    print(f"delta {delta}: MC union {est.volume:.4f} +- {est.std_error:.4f}, singles - pairs {ie:.4f}")
