"""The exotic preserver, computed two independent ways.

Route 1 (polar): write a semisimple M = S N S^{-1} with S Hermitian
positive definite and N normal (via the left polar decomposition of the
eigenvector matrix), then map M to S^{-1} N S.

Route 2 (eversion): keep the spectrum, evert the eigenframe.

The two routes agree to machine precision, the map is an involution,
fixes exactly the normal matrices, and preserves both spectra and
commutativity -- which is what makes it a third, "exotic" member of the
preserver family alongside conjugation and transpose conjugation.
"""

import numpy as np

from cslab import (
    SemisimpleOp,
    commutator_norm,
    exotic_evert,
    exotic_polar,
    from_matrix,
    to_matrix,
)
from cslab.harness import random_frame, random_semisimple, spectrum_drift
from cslab.domains import SpectralDomain

rng = np.random.default_rng(1)
X = SpectralDomain.circle()

M = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)
print("Input:")
print(M)
print("Exotic image (polar route):")
print(np.round(exotic_polar(M), 10))
print("Exotic image (eversion route):")
print(np.round(to_matrix(exotic_evert(from_matrix(M))), 10))

print("\nRoute agreement over 500 random semisimple matrices:")
worst = 0.0
for _ in range(500):
    n = int(rng.integers(2, 6))
    A = random_semisimple(X, n, rng)
    d = np.linalg.norm(exotic_polar(A) - to_matrix(exotic_evert(from_matrix(A))))
    worst = max(worst, d)
print(f"  worst Frobenius distance: {worst:.3e}")

print("\nInvolution and normal fixed points:")
A = random_semisimple(X, 3, rng)
print(f"  || phi(phi(A)) - A || = {np.linalg.norm(exotic_polar(exotic_polar(A)) - A):.3e}")
Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
N = (Q * np.exp(1j * rng.uniform(0, 2 * np.pi, 3))) @ Q.conj().T
print(f"  || phi(N) - N || for normal N = {np.linalg.norm(exotic_polar(N) - N):.3e}")

print("\nSpectrum and commutativity preservation on a commuting pair:")
F = random_frame(3, rng)
lam = np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
mu = np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
A = to_matrix(SemisimpleOp(F, lam))
B = to_matrix(SemisimpleOp(F, mu))
Ap, Bp = exotic_polar(A), exotic_polar(B)
print(f"  spectrum drift: {max(spectrum_drift(A, Ap), spectrum_drift(B, Bp)):.3e}")
print(f"  commutator of images: {commutator_norm(Ap, Bp):.3e}")
