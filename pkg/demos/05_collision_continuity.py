"""What happens to the exotic preserver when eigenvalues collide.

The map is only defined on semisimple matrices; matrix paths whose
eigenvalues merge probe whether it extends continuously to the boundary.
Three behaviors show up, matching the regularity trichotomy:

  * jordan2 along the real ray: the images converge (to [[0,0],[1,0]]),
  * jordan2 along two different rays: bounded but ray-dependent limits
    (the closed-form image [[0,0],[t/conj(t), t]] remembers the angle),
  * jordan3-disk: image norms blow up like 1/|t| -- no extension at all.
"""

import numpy as np

from cslab.harness import collision_path_probe

real = collision_path_probe("jordan2", rays=(0.0,))
print("jordan2, real ray:")
print(f"  norms head/tail: {real.norms[0][0]:.4f} ... {real.norms[-1][0]:.4f}")
print(f"  diagnosis: {real.diagnosis}")
print(f"  limit:\n{np.round(real.limit, 8)}")

two = collision_path_probe("jordan2", rays=(0.0, np.pi / 2))
print("\njordan2, rays 0 and pi/2:")
print(f"  diagnosis: {two.diagnosis}")
for key in sorted(two.images):
    print(f"  image at {key}:\n{np.round(two.images[key], 8)}")

disk = collision_path_probe("jordan3-disk")
print("\njordan3-disk (eigenvalues t * cube roots of unity):")
peaks = [max(row) for row in disk.norms]
for t, p in list(zip(disk.t_values, peaks))[::4]:
    print(f"  |t| = {t:8.2g}   image norm = {p:10.2f}")
print(f"  diagnosis: {disk.diagnosis}")
