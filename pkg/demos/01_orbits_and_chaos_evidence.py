"""
Orbit norms and Li-Yorke-style chaos evidence
=============================================

Iterate a perturbed weighted backward shift, record the orbit norms
||T^n x||, and classify the orbit: evidence of chaos needs the orbit
to dip arbitrarily low (tail minimum) while also rising high
(full-record maximum).
"""

import numpy as np

from chaoskit.diagnostics import criterion_search, li_yorke_evidence, orbit_norms
from chaoskit.operators import WeightedShiftSpec, make_weighted_backward_shift
from chaoskit.rng import SplitMix64

# the backward shift with constant weight 2: its finite truncation is
# nilpotent, so every orbit eventually vanishes, but the weight pushes
# the transient far above the starting norm -- exactly the dip-and-rise
# pattern the evidence classifier looks for
dim = 64
spec = WeightedShiftSpec(dim=dim, weights=tuple(2.0 for _ in range(dim - 1)))
op = make_weighted_backward_shift(spec)

rng = SplitMix64(7)
x = rng.complex_normal_vector(dim)

record = orbit_norms(op, x, horizon=400)
verdict = li_yorke_evidence(record)
print("orbit start  :", record.norms[0])
print("tail minimum :", verdict.liminf_est)
print("orbit maximum:", verdict.limsup_est)
print("verdict      :", verdict.kind)

# the criterion search automates the hunt for a witness: it looks for
# starting vectors whose orbits vanish, then climbs a ladder of
# powers of 10 checking that some orbit exceeds each rung
candidates = []
for _ in range(8):
    v = rng.complex_normal_vector(dim)
    candidates.append(v / np.linalg.norm(v))
evidence = criterion_search(op, candidates, horizon=400)
print("criterion witnessed:", evidence.witnessed(len(candidates)))
