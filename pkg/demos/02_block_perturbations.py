"""
Block-diagonal perturbations of the identity
============================================

Build the block operator whose j-th block is (1 - eps_j) I + S_j with
S_j a superdiagonal of height 2 eps_j and eps_j = 1/sqrt(j).  Forward
orbits of the block unit vectors first grow, then decay; orbits of the
inverse (restricted to the invertible blocks) diverge.
"""

import numpy as np

from chaoskit.diagnostics import inverse_orbit_floor, orbit_norms
from chaoskit.operators import BlockDiagonalOperator, BlockPerturbationSpec, star_number
from chaoskit.rng import SplitMix64

op = BlockDiagonalOperator.from_spec(
    BlockPerturbationSpec(lam=1.0, block_count=36, eps_rule=lambda j: j**-0.5)
)
print("total dimension:", op.dim)

# forward orbits: transient growth followed by decay below any threshold
for j in (9, 16, 25, 36):
    record = orbit_norms(op, op.unit_block_vector(j), horizon=800)
    print(f"block {j:2d}: peak {record.full_max():10.2f}  "
          f"final {record.last_finite():.2e}")

# block 1 is the 1x1 zero matrix (eps_1 = 1), so the inverse lives on
# blocks 2..36: rebuild the family with every index shifted by one
inv_spec = BlockPerturbationSpec(
    lam=1.0, block_count=35,
    eps_rule=lambda j: (j + 1) ** -0.5,
    size_rule=lambda j: j + 1,
)
inv_op = BlockDiagonalOperator.from_spec(inv_spec)
rng = SplitMix64(11)
x = rng.complex_normal_vector(inv_op.dim)
(stat,) = inverse_orbit_floor(inv_op, [x], horizon=800)
print("inverse orbit: floor", f"{stat.floor:.3f}", "at step", stat.argmin,
      "final", f"{stat.final:.2e}")

# the closed-form inverse entries involve the iterated prefix sums
# star(j, m); they are exact integers
print("star numbers star(5, m):", [star_number(5, m) for m in range(5)])
