"""
Polar decomposition and singular-value reciprocity
==================================================

Every invertible matrix factors as T = U P with U unitary and P
positive definite, and the singular values of T**-1 are exactly the
reversed reciprocals of those of T.  Both facts are checked here on a
random complex matrix.
"""

import numpy as np

from chaoskit.numerics import operator_norm
from chaoskit.rng import SplitMix64
from chaoskit.spectral import check_singular_reciprocity, polar_decompose

rng = SplitMix64(2024)
t = rng.complex_normal_matrix(32, 32)

pol = polar_decompose(t)
print("reconstruction defect:", operator_norm(pol.U @ pol.P - t))
print("unitarity defect     :", operator_norm(pol.U.conj().T @ pol.U - np.eye(32)))
print("smallest eig of P    :", float(np.min(np.linalg.eigvalsh(pol.P))))

report = check_singular_reciprocity(t)
print("reciprocity holds    :", report.passed,
      " max relative defect:", report.max_rel_defect)
print("largest singular value of T     :", report.forward[0])
print("smallest singular value of T^-1 :", report.inverse[-1])
