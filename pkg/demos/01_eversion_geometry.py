"""Eversion of an eigenframe.

Eversion replaces each line of a spanning frame by the orthocomplement
of the span of all the others.  Numerically this is just the
conjugate-transposed inverse of the frame's column matrix, taken column
by column.  Two facts drive everything downstream: eversion is an
involution, and it fixes exactly the orthogonal frames.
"""

import numpy as np

from cslab import Frame, OrthoFrame, Line, evert, frame_distance

rng = np.random.default_rng(0)

print("A deliberately oblique frame in C^3:")
V = np.array(
    [
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0],
    ]
)
F = Frame.from_matrix(V)
E = evert(F)
for i, line in enumerate(E.lines):
    print(f"  everted line {i}: {np.round(line.direction, 4)}")

print("\nBiorthogonality (everted line i is orthogonal to original lines j != i):")
G = np.abs(E.matrix.conj().T @ F.matrix)
print(np.round(G, 12))

print("\nInvolution: distance between evert(evert(F)) and F over 1000 random frames")
worst = 0.0
for _ in range(1000):
    n = int(rng.integers(2, 6))
    while True:
        M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(M) < 50:
            break
    F = Frame.from_matrix(M)
    worst = max(worst, frame_distance(evert(evert(F)), F))
print(f"  worst distance: {worst:.3e}")

print("\nFixed points: orthogonal frames do not move")
Q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
OF = OrthoFrame(tuple(Line(Q[:, i]) for i in range(4)))
print(f"  distance evert(Q) to Q: {frame_distance(evert(OF), OF):.3e}")
