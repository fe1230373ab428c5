"""Why the shape of the spectrum matters: divided differences of conj.

Whether the exotic preserver extends continuously past eigenvalue
collisions is governed by the regularity of complex conjugation on the
spectral domain, measured through iterated divided differences near
diagonal tuples.  The second iterate of conj is:

  * identically zero on a real interval (conj is the identity there),
  * bounded with a limit on a circle (closed form (-1)^k / prod z_i),
  * unbounded like 1/r on a disk (witness family -r, ir, r).

The verdicts printed at the end are heuristic: probes gather evidence,
they do not prove class membership.
"""

import numpy as np

from cslab import (
    SpectralDomain,
    boundedness_probe,
    circle_conj_oracle,
    conj,
    iterated_delta,
    limit_probe,
    regularity_verdict,
)

print("Closed form on the unit circle: Delta^2 conj at (1, i, -1)")
print(f"  newton table: {iterated_delta(conj, (1.0, 1j, -1.0)):.12f}")
print(f"  oracle:       {circle_conj_oracle((1.0, 1j, -1.0), 2):.12f}")

print("\nDisk witness family (-r, ir, r): Delta^2 conj = i/r exactly")
for r in (1e-1, 1e-2, 1e-3):
    print(f"  r = {r:6g}: {iterated_delta(conj, (-r, 1j * r, r)):.6g}")

print("\nSup of |Delta^2 conj| near the diagonal, per radius:")
for name, X, z in (
    ("interval", SpectralDomain.interval(-1, 1), 0j),
    ("circle  ", SpectralDomain.circle(), 1 + 0j),
    ("disk    ", SpectralDomain.disk(), 0j),
):
    rep = boundedness_probe(conj, X, z, k=2, seed=0)
    sups = ", ".join(f"{s:.3e}" for s in rep.sup_values)
    print(f"  {name} radii {rep.radii}: [{sups}]")

print("\nFirst iterate on the disk: bounded (modulus 1) but no limit")
rep = limit_probe(conj, SpectralDomain.disk(), 0j, k=1, seed=0)
print(f"  sup values:         {[round(s, 6) for s in rep.sup_values]}")
print(f"  oscillation values: {[round(o, 3) for o in rep.oscillation_values]}")
print(f"  limit plausible:    {rep.limit_plausible}")

print("\nAggregated (heuristic) verdicts for n = 3:")
for name, X in (
    ("circle", SpectralDomain.circle()),
    ("interval", SpectralDomain.interval(-1, 1)),
    ("disk", SpectralDomain.disk()),
):
    print(f"  {name:8s}: {regularity_verdict(X, 3).verdict}")
