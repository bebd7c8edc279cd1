"""
Truncated multiplication operators and parameter maps
=====================================================

A polynomial symbol phi acts on analytic-coefficient space as a
lower-triangular Toeplitz matrix.  Whether the (adjoint) operator is
chaotic is decided by the range of |phi| on the unit circle: chaotic
exactly when the range straddles 1.  Sweeping lambda over a grid and
classifying conj(lambda) + phi yields a parameter map.
"""

from chaoskit.hardy import (
    AnalyticPolynomial,
    chaos_parameter_map,
    classify_multiplier,
    is_cowen_douglas,
    kernel_dimension,
)
from chaoskit.operators import make_multiplication_truncation

phi = AnalyticPolynomial((0.5, 0.0, 1.0))  # 0.5 + z^2
print("Toeplitz truncation at N=5:")
print(make_multiplication_truncation(phi.coefficients, 5).real)

verdict = classify_multiplier(phi)
print("modulus range on |z|=1:", (verdict.inf_mod, verdict.sup_mod))
print("chaotic in all senses :", verdict.chaotic_all_senses)

# eigenvector geometry: dim ker(M_phi* - phi(lam)) inside the disk
print("kernel dim of z^2 at lam=0.25:",
      kernel_dimension(AnalyticPolynomial((0.0, 0.0, 1.0)), 0.25))
print("folder rank of z^2:", is_cowen_douglas(AnalyticPolynomial((0.0, 0.0, 1.0))))

# coarse parameter map for the affine symbol lam + z: chaotic on an
# annulus, uncertain in a one-step band around its boundary circles
cmap = chaos_parameter_map("multiplication", AnalyticPolynomial((0.0, 1.0)),
                           grid=(-2.5, 2.5, 0.5))
for i, re in enumerate(cmap.re_values):
    row = "".join({"chaotic": "#", "decay": ".", "bounded_below": "o",
                   "boundary_uncertain": "?"}[v] for v in cmap.verdicts[i])
    print(f"{re:+5.1f} {row}")
